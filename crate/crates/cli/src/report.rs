//! Reports rendered either for people or as `key=value` lines.

use crate::job::Format;
use filtdef::{DimensionValue, WindowedDim};

#[derive(Debug, Clone, PartialEq, Eq)]
enum Entry {
    Section(String),
    Kv(String, String),
    Table { name: String, columns: Vec<String>, rows: Vec<Vec<String>> },
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Report {
    entries: Vec<Entry>,
}

/// A windowed value with its stabilization status and window history.
pub fn windowed(w: &WindowedDim) -> String {
    let h: Vec<String> = w.history.iter().map(|x| x.to_string()).collect();
    format!("{} [{}; windows {}]", w.value, w.status, h.join(","))
}

pub fn dim(v: &DimensionValue) -> String {
    v.to_string()
}

impl Report {
    pub fn new() -> Report {
        Report::default()
    }

    pub fn section(&mut self, name: impl Into<String>) {
        self.entries.push(Entry::Section(name.into()));
    }

    pub fn kv(&mut self, key: impl Into<String>, value: impl ToString) {
        self.entries.push(Entry::Kv(key.into(), value.to_string()));
    }

    /// Add `key=value` lines, each key prefixed.
    pub fn kv_lines(&mut self, prefix: &str, text: &str) {
        for line in text.lines() {
            if let Some((k, v)) = line.split_once('=') {
                self.kv(format!("{prefix}{k}"), v);
            }
        }
    }

    pub fn table(&mut self, name: impl Into<String>, columns: &[&str], rows: Vec<Vec<String>>) {
        self.entries.push(Entry::Table { name: name.into(), columns: columns.iter().map(|c| c.to_string()).collect(), rows });
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Machine => self.machine(),
            Format::Text => self.text(),
        }
    }

    fn machine(&self) -> String {
        let mut out = String::new();
        for e in &self.entries {
            match e {
                Entry::Section(s) => out.push_str(&format!("[{s}]\n")),
                Entry::Kv(k, v) => out.push_str(&format!("{k}={v}\n")),
                Entry::Table { name, columns, rows } => {
                    out.push_str(&format!("table.{name}.columns={}\n", columns.join("\t")));
                    for (r, row) in rows.iter().enumerate() {
                        out.push_str(&format!("table.{name}.{r}={}\n", row.join("\t")));
                    }
                }
            }
        }
        out
    }

    fn text(&self) -> String {
        let mut out = String::new();
        for e in &self.entries {
            match e {
                Entry::Section(s) => {
                    if !out.is_empty() {
                        out.push('\n');
                    }
                    out.push_str(&format!("== {s} ==\n"));
                }
                Entry::Kv(k, v) => out.push_str(&format!("{k}: {v}\n")),
                Entry::Table { name, columns, rows } => {
                    out.push_str(&format!("{name}:\n"));
                    let mut width: Vec<usize> = columns.iter().map(|c| c.chars().count()).collect();
                    for row in rows {
                        for (w, c) in width.iter_mut().zip(row) {
                            *w = (*w).max(c.chars().count());
                        }
                    }
                    let line = |cells: &[String]| {
                        let padded: Vec<String> = cells
                            .iter()
                            .zip(&width)
                            .map(|(c, w)| format!("{c}{}", " ".repeat(w - c.chars().count())))
                            .collect();
                        format!("  {}\n", padded.join("  ").trim_end())
                    };
                    out.push_str(&line(columns));
                    for row in rows {
                        out.push_str(&line(row));
                    }
                }
            }
        }
        out
    }
}
