//! Job descriptions: the command plus its ring, ideal and options.
//!
//! The text form is one directive per line. A bare word names the command,
//! `--flag value` sets an option, `#` starts a comment. [`JobSpec::print`]
//! writes the canonical form and [`JobSpec::parse`] reads it back.

use clap::ValueEnum;
use filtdef::{Bounds, Error, Result};
use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Command {
    TangentCone,
    Gr,
    Rees,
    Blowup,
    SmoothCheck,
    Derham,
    HcBicomplex,
    Hodge,
    Michler,
    HpSixTerm,
    MainTheorem,
    Ktilde,
}

impl Command {
    pub fn name(self) -> String {
        self.to_possible_value().expect("no skipped variants").get_name().to_string()
    }
}

impl fmt::Display for Command {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name())
    }
}

impl FromStr for Command {
    type Err = Error;
    fn from_str(s: &str) -> Result<Command> {
        <Command as ValueEnum>::from_str(s, false).map_err(|_| parse_err(format!("unknown command `{s}`")))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, ValueEnum)]
pub enum Format {
    #[default]
    Text,
    Machine,
}

impl fmt::Display for Format {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Format::Text => "text",
            Format::Machine => "machine",
        })
    }
}

impl FromStr for Format {
    type Err = Error;
    fn from_str(s: &str) -> Result<Format> {
        <Format as ValueEnum>::from_str(s, false).map_err(|_| parse_err(format!("unknown format `{s}`")))
    }
}

/// An inclusive integer range written `a..b`, or a single `a`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Range(pub i64, pub i64);

impl fmt::Display for Range {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0 == self.1 {
            write!(f, "{}", self.0)
        } else {
            write!(f, "{}..{}", self.0, self.1)
        }
    }
}

impl FromStr for Range {
    type Err = Error;
    fn from_str(s: &str) -> Result<Range> {
        let num = |t: &str| t.trim().parse::<i64>().map_err(|_| parse_err(format!("bad integer `{t}` in range `{s}`")));
        let r = match s.split_once("..") {
            Some((a, b)) => Range(num(a)?, num(b)?),
            None => {
                let a = num(s)?;
                Range(a, a)
            }
        };
        if r.0 > r.1 {
            return Err(parse_err(format!("empty range `{s}`")));
        }
        Ok(r)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct JobSpec {
    pub command: Command,
    pub vars: Vec<String>,
    pub ideal: Vec<String>,
    /// Generators of the blowup center; the origin when absent.
    pub center: Option<Vec<String>>,
    pub i: Option<Range>,
    pub n: Option<Range>,
    pub degree_bound: Option<u32>,
    pub truncation: Option<usize>,
    pub format: Format,
    pub out: Option<PathBuf>,
}

fn parse_err(msg: String) -> Error {
    Error::Parse { pos: 0, msg }
}

fn split_list(s: &str) -> Vec<String> {
    s.split(',').map(str::trim).filter(|t| !t.is_empty()).map(String::from).collect()
}

fn unquote(s: &str) -> &str {
    let s = s.trim();
    if s.len() >= 2 && ((s.starts_with('"') && s.ends_with('"')) || (s.starts_with('\'') && s.ends_with('\''))) {
        &s[1..s.len() - 1]
    } else {
        s
    }
}

impl JobSpec {
    pub fn new(command: Command) -> JobSpec {
        JobSpec {
            command,
            vars: Vec::new(),
            ideal: Vec::new(),
            center: None,
            i: None,
            n: None,
            degree_bound: None,
            truncation: None,
            format: Format::Text,
            out: None,
        }
    }

    pub fn bounds(&self) -> Bounds {
        let mut b = Bounds::default();
        if let Some(d) = self.degree_bound {
            b.degree_bound = d;
        }
        if let Some(t) = self.truncation {
            b.truncation = t;
        }
        b
    }

    /// Canonical text form, one directive per line.
    pub fn print(&self) -> String {
        let mut out = format!("{}\n", self.command);
        out.push_str(&format!("--vars {}\n", self.vars.join(",")));
        for g in &self.ideal {
            out.push_str(&format!("--ideal {g}\n"));
        }
        if let Some(c) = &self.center {
            out.push_str(&format!("--center {}\n", c.join(",")));
        }
        if let Some(i) = self.i {
            out.push_str(&format!("--i {i}\n"));
        }
        if let Some(n) = self.n {
            out.push_str(&format!("--n {n}\n"));
        }
        if let Some(d) = self.degree_bound {
            out.push_str(&format!("--degree-bound {d}\n"));
        }
        if let Some(t) = self.truncation {
            out.push_str(&format!("--truncation {t}\n"));
        }
        out.push_str(&format!("--format {}\n", self.format));
        if let Some(p) = &self.out {
            out.push_str(&format!("--out {}\n", p.display()));
        }
        out
    }

    pub fn parse(text: &str) -> Result<JobSpec> {
        let mut command = None;
        let mut spec = JobSpec::new(Command::TangentCone);
        for raw in text.lines() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let Some(rest) = line.strip_prefix("--") else {
                if command.is_some() {
                    return Err(parse_err(format!("second command `{line}`")));
                }
                command = Some(line.parse::<Command>()?);
                continue;
            };
            let (flag, value) = match rest.split_once(|c: char| c.is_whitespace() || c == '=') {
                Some((f, v)) => (f, unquote(v)),
                None => (rest, ""),
            };
            spec.set(flag, value)?;
        }
        spec.command = command.ok_or_else(|| parse_err("no command given".into()))?;
        Ok(spec)
    }

    /// Apply one `--flag value` directive.
    pub fn set(&mut self, flag: &str, value: &str) -> Result<()> {
        let int = |v: &str| v.parse::<u64>().map_err(|_| parse_err(format!("--{flag} expects a non-negative integer, got `{v}`")));
        match flag {
            "vars" => self.vars = split_list(value),
            "ideal" => {
                if value.is_empty() {
                    return Err(parse_err("--ideal needs a polynomial".into()));
                }
                self.ideal.push(value.to_string())
            }
            "center" => self.center = Some(split_list(value)),
            "i" => self.i = Some(value.parse()?),
            "n" => self.n = Some(value.parse()?),
            "degree-bound" => self.degree_bound = Some(int(value)? as u32),
            "truncation" => self.truncation = Some(int(value)? as usize),
            "format" => self.format = value.parse()?,
            "out" => self.out = Some(PathBuf::from(value)),
            _ => return Err(parse_err(format!("unknown flag --{flag}"))),
        }
        Ok(())
    }
}
