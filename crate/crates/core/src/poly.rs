//! Multivariate polynomials over Q.
//!
//! A [`Ring`] is an ordered list of variable names. Polynomials carry an
//! `Arc<Ring>` and refuse to mix with polynomials from another ring.

use crate::error::{Error, Result};
use crate::rational::Q;
use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

/// A polynomial ring Q[x_1, ..., x_n], identified by its variable names.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Ring {
    vars: Vec<String>,
}

/// Shared handle to a ring.
pub type RingRef = Arc<Ring>;

fn valid_ident(s: &str) -> bool {
    let mut ch = s.chars();
    match ch.next() {
        Some(c) if c.is_ascii_alphabetic() || c == '_' => {}
        _ => return false,
    }
    ch.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

impl Ring {
    pub fn new<S: AsRef<str>>(vars: &[S]) -> Result<RingRef> {
        let vars: Vec<String> = vars.iter().map(|v| v.as_ref().trim().to_string()).collect();
        for (i, v) in vars.iter().enumerate() {
            if !valid_ident(v) {
                return Err(Error::InvalidInput(format!("bad variable name `{v}`")));
            }
            if vars[..i].contains(v) {
                return Err(Error::InvalidInput(format!("duplicate variable `{v}`")));
            }
        }
        Ok(Arc::new(Ring { vars }))
    }

    /// Parse a comma separated variable list such as `"x,y,z"`.
    pub fn from_list(list: &str) -> Result<RingRef> {
        let vs: Vec<&str> = list.split(',').map(str::trim).filter(|s| !s.is_empty()).collect();
        Ring::new(&vs)
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.vars.iter().position(|v| v == name)
    }

    /// A ring with `extra` appended, renaming on clashes by adding `_`.
    pub fn extend(&self, extra: &[&str]) -> RingRef {
        let mut vars = self.vars.clone();
        for e in extra {
            let mut name = e.to_string();
            while vars.contains(&name) {
                name.push('_');
            }
            vars.push(name);
        }
        Arc::new(Ring { vars })
    }

    pub fn zero(self: &RingRef) -> Polynomial {
        Polynomial::zero(self)
    }

    pub fn one(self: &RingRef) -> Polynomial {
        Polynomial::constant(self, Q::one())
    }

    pub fn var(self: &RingRef, i: usize) -> Polynomial {
        Polynomial::var(self, i)
    }

    pub fn parse(self: &RingRef, s: &str) -> Result<Polynomial> {
        Polynomial::parse(self, s)
    }
}

/// An exponent vector.
///
/// `Ord` is degree reverse lexicographic; this is the order used for
/// storage and printing.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Monomial(pub Vec<u32>);

impl Monomial {
    pub fn one(n: usize) -> Monomial {
        Monomial(vec![0; n])
    }

    pub fn var(n: usize, i: usize) -> Monomial {
        let mut e = vec![0; n];
        e[i] = 1;
        Monomial(e)
    }

    pub fn nvars(&self) -> usize {
        self.0.len()
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn weighted_degree(&self, w: &[i64]) -> i64 {
        self.0.iter().zip(w).map(|(&e, &w)| e as i64 * w).sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    /// `self / other`, assuming `other` divides `self`.
    pub fn div(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| *a.max(b)).collect())
    }

    pub fn gcd_is_one(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| *a == 0 || *b == 0)
    }
}

fn degrevlex(a: &[u32], b: &[u32]) -> Ordering {
    let da: u32 = a.iter().sum();
    let db: u32 = b.iter().sum();
    da.cmp(&db).then_with(|| revlex(a, b))
}

/// Reverse lexicographic tie break: the smaller last exponent wins.
fn revlex(a: &[u32], b: &[u32]) -> Ordering {
    for (x, y) in a.iter().zip(b).rev() {
        if x != y {
            return y.cmp(x);
        }
    }
    Ordering::Equal
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        degrevlex(&self.0, &other.0)
    }
}

/// A monomial order.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum MonomialOrder {
    DegRevLex,
    Lex,
    /// Product order: the listed variables first (degrevlex), then the rest
    /// (degrevlex). Eliminates the block.
    Elimination { block: Vec<usize> },
    /// Weighted degree (non-negative weights) with degrevlex tie break.
    WeightedDegree { weights: Vec<u64> },
    /// Total degree, then the exponent of `aux` (higher is larger), then
    /// degrevlex. Used to pick lowest-degree forms after homogenizing.
    AuxDegree { aux: usize },
}

impl MonomialOrder {
    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        self.cmp_exps(&a.0, &b.0)
    }

    pub(crate) fn cmp_exps(&self, a: &[u32], b: &[u32]) -> Ordering {
        match self {
            MonomialOrder::DegRevLex => degrevlex(a, b),
            MonomialOrder::Lex => a.cmp(b),
            MonomialOrder::Elimination { block } => {
                let ab: u32 = block.iter().map(|&i| a[i]).sum();
                let bb: u32 = block.iter().map(|&i| b[i]).sum();
                ab.cmp(&bb)
                    .then_with(|| {
                        for &i in block.iter().rev() {
                            if a[i] != b[i] {
                                return b[i].cmp(&a[i]);
                            }
                        }
                        Ordering::Equal
                    })
                    .then_with(|| {
                        let rest = |e: &[u32]| -> u32 {
                            e.iter()
                                .enumerate()
                                .filter(|(i, _)| !block.contains(i))
                                .map(|(_, &x)| x)
                                .sum()
                        };
                        rest(a).cmp(&rest(b))
                    })
                    .then_with(|| {
                        for i in (0..a.len()).rev() {
                            if block.contains(&i) {
                                continue;
                            }
                            if a[i] != b[i] {
                                return b[i].cmp(&a[i]);
                            }
                        }
                        Ordering::Equal
                    })
            }
            MonomialOrder::WeightedDegree { weights } => {
                let wa: u64 = a.iter().zip(weights).map(|(&e, &w)| e as u64 * w).sum();
                let wb: u64 = b.iter().zip(weights).map(|(&e, &w)| e as u64 * w).sum();
                wa.cmp(&wb).then_with(|| degrevlex(a, b))
            }
            MonomialOrder::AuxDegree { aux } => {
                let da: u32 = a.iter().sum();
                let db: u32 = b.iter().sum();
                da.cmp(&db)
                    .then_with(|| a[*aux].cmp(&b[*aux]))
                    .then_with(|| revlex(a, b))
            }
        }
    }

    /// Reject orders that do not fit a ring with `n` variables.
    pub fn check(&self, n: usize) -> Result<()> {
        match self {
            MonomialOrder::Elimination { block } if block.iter().any(|&i| i >= n) => {
                Err(Error::InvalidInput("elimination block out of range".into()))
            }
            MonomialOrder::WeightedDegree { weights } if weights.len() != n => {
                Err(Error::InvalidInput("weight vector length mismatch".into()))
            }
            MonomialOrder::WeightedDegree { weights } if weights.contains(&0) => {
                // zero weights are fine thanks to the degrevlex tie break
                Ok(())
            }
            MonomialOrder::AuxDegree { aux } if *aux >= n => {
                Err(Error::InvalidInput("aux variable out of range".into()))
            }
            _ => Ok(()),
        }
    }
}

/// A polynomial with rational coefficients.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Polynomial {
    ring: RingRef,
    terms: BTreeMap<Monomial, Q>,
}

impl Polynomial {
    pub fn zero(ring: &RingRef) -> Polynomial {
        Polynomial { ring: ring.clone(), terms: BTreeMap::new() }
    }

    pub fn constant(ring: &RingRef, c: Q) -> Polynomial {
        Polynomial::monomial(ring, c, Monomial::one(ring.nvars()))
    }

    pub fn monomial(ring: &RingRef, c: Q, m: Monomial) -> Polynomial {
        assert_eq!(m.nvars(), ring.nvars(), "monomial arity does not match ring");
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Polynomial { ring: ring.clone(), terms }
    }

    pub fn var(ring: &RingRef, i: usize) -> Polynomial {
        Polynomial::monomial(ring, Q::one(), Monomial::var(ring.nvars(), i))
    }

    pub fn from_terms<I: IntoIterator<Item = (Monomial, Q)>>(ring: &RingRef, it: I) -> Polynomial {
        let mut p = Polynomial::zero(ring);
        for (m, c) in it {
            p.add_term(m, &c);
        }
        p
    }

    pub fn ring(&self) -> &RingRef {
        &self.ring
    }

    /// Terms in ascending degrevlex order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Q)> {
        self.terms.iter()
    }

    pub fn nterms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, m: &Monomial) -> Q {
        self.terms.get(m).cloned().unwrap_or_else(Q::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(Monomial::is_one)
    }

    pub fn add_term(&mut self, m: Monomial, c: &Q) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c.clone());
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let s = o.get() + c;
                if s.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    fn same_ring(&self, other: &Polynomial) -> Result<()> {
        if Arc::ptr_eq(&self.ring, &other.ring) || self.ring == other.ring {
            Ok(())
        } else {
            Err(Error::RingMismatch(format!(
                "[{}] vs [{}]",
                self.ring.vars.join(","),
                other.ring.vars.join(",")
            )))
        }
    }

    pub fn checked_add(&self, other: &Polynomial) -> Result<Polynomial> {
        self.same_ring(other)?;
        let mut r = self.clone();
        for (m, c) in &other.terms {
            r.add_term(m.clone(), c);
        }
        Ok(r)
    }

    pub fn checked_sub(&self, other: &Polynomial) -> Result<Polynomial> {
        self.same_ring(other)?;
        let mut r = self.clone();
        for (m, c) in &other.terms {
            r.add_term(m.clone(), &-c);
        }
        Ok(r)
    }

    pub fn checked_mul(&self, other: &Polynomial) -> Result<Polynomial> {
        self.same_ring(other)?;
        let mut acc: std::collections::HashMap<Monomial, Q> = std::collections::HashMap::new();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                let e = acc.entry(m1.mul(m2)).or_insert_with(Q::zero);
                *e += &(c1 * c2);
            }
        }
        let terms = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        Ok(Polynomial { ring: self.ring.clone(), terms })
    }

    pub fn scale(&self, c: &Q) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(&self.ring);
        }
        let terms = self.terms.iter().map(|(m, d)| (m.clone(), d * c)).collect();
        Polynomial { ring: self.ring.clone(), terms }
    }

    pub fn mul_monomial(&self, m: &Monomial) -> Polynomial {
        let terms = self.terms.iter().map(|(n, c)| (n.mul(m), c.clone())).collect();
        Polynomial { ring: self.ring.clone(), terms }
    }

    pub fn pow(&self, e: u32) -> Polynomial {
        let mut acc = Polynomial::constant(&self.ring, Q::one());
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Total degree, `None` for the zero polynomial.
    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).max()
    }

    /// Lowest total degree among the terms, `None` for zero.
    pub fn order(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).min()
    }

    /// Leading monomial and coefficient under `order`.
    pub fn leading_term(&self, order: &MonomialOrder) -> Option<(&Monomial, &Q)> {
        self.terms.iter().max_by(|a, b| order.cmp(a.0, b.0))
    }

    /// The degree `d` homogeneous component.
    pub fn homogeneous_part(&self, d: u32) -> Polynomial {
        let terms = self
            .terms
            .iter()
            .filter(|(m, _)| m.degree() == d)
            .map(|(m, c)| (m.clone(), c.clone()))
            .collect();
        Polynomial { ring: self.ring.clone(), terms }
    }

    /// The lowest degree nonzero homogeneous component (the initial form
    /// at the origin); zero for zero.
    pub fn min_form(&self) -> Polynomial {
        match self.order() {
            Some(d) => self.homogeneous_part(d),
            None => self.clone(),
        }
    }

    /// `Some(Some(d))` if homogeneous of degree `d`, `Some(None)` for zero,
    /// `None` if not homogeneous.
    pub fn homogeneous_degree(&self) -> Option<Option<u32>> {
        let mut it = self.terms.keys().map(Monomial::degree);
        match it.next() {
            None => Some(None),
            Some(d) => it.all(|e| e == d).then_some(Some(d)),
        }
    }

    /// Homogenize with a fresh variable named `aux`, appended to the ring.
    pub fn homogenize_with(&self, aux: &str) -> Result<Polynomial> {
        if self.ring.var_index(aux).is_some() {
            return Err(Error::InvalidInput(format!("variable `{aux}` already in the ring")));
        }
        let big = Ring::new(&[self.ring.vars.clone(), vec![aux.to_string()]].concat())?;
        Ok(self.homogenize(&big, self.ring.nvars()))
    }

    pub fn is_homogeneous(&self) -> bool {
        self.is_weighted_homogeneous(&vec![1; self.ring.nvars()])
    }

    pub fn is_weighted_homogeneous(&self, w: &[i64]) -> bool {
        let mut it = self.terms.keys().map(|m| m.weighted_degree(w));
        match it.next() {
            None => true,
            Some(d) => it.all(|e| e == d),
        }
    }

    /// Homogenize with respect to total degree using variable `h` of the
    /// target ring, which must contain this ring's variables as a prefix.
    pub fn homogenize(&self, target: &RingRef, h: usize) -> Polynomial {
        let n = self.ring.nvars();
        assert!(target.nvars() > n && h >= n, "homogenizing variable must be new");
        let d = self.total_degree().unwrap_or(0);
        let mut p = Polynomial::zero(target);
        for (m, c) in &self.terms {
            let mut e = m.0.clone();
            e.resize(target.nvars(), 0);
            e[h] = d - m.degree();
            p.add_term(Monomial(e), c);
        }
        p
    }

    pub fn derivative(&self, i: usize) -> Polynomial {
        let mut p = Polynomial::zero(&self.ring);
        for (m, c) in &self.terms {
            let e = m.0[i];
            if e > 0 {
                let mut n = m.clone();
                n.0[i] -= 1;
                p.add_term(n, &(c * &Q::from_int(e as i64)));
            }
        }
        p
    }

    /// Substitute `images[j]` for variable `j`; the images live in a common
    /// target ring.
    pub fn substitute(&self, target: &RingRef, images: &[Polynomial]) -> Polynomial {
        assert_eq!(images.len(), self.ring.nvars());
        let mut acc = Polynomial::zero(target);
        // cache powers of each image
        let mut pows: Vec<Vec<Polynomial>> =
            images.iter().map(|p| vec![Polynomial::constant(target, Q::one()), p.clone()]).collect();
        for (m, c) in &self.terms {
            let mut t = Polynomial::constant(target, c.clone());
            for (j, &e) in m.0.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                while pows[j].len() <= e as usize {
                    let next = pows[j].last().unwrap() * &images[j];
                    pows[j].push(next);
                }
                t = &t * &pows[j][e as usize];
            }
            acc = &acc + &t;
        }
        acc
    }

    /// Evaluate at a rational point.
    pub fn eval(&self, point: &[Q]) -> Q {
        let mut acc = Q::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (x, &e) in point.iter().zip(&m.0) {
                t = &t * &x.pow(e);
            }
            acc += &t;
        }
        acc
    }

    /// Move to another ring by matching variable names.
    pub fn map_to(&self, target: &RingRef) -> Result<Polynomial> {
        let idx: Vec<usize> = self
            .ring
            .vars
            .iter()
            .map(|v| target.var_index(v).ok_or_else(|| Error::UnknownVariable(v.clone())))
            .collect::<Result<_>>()?;
        let mut p = Polynomial::zero(target);
        for (m, c) in &self.terms {
            let mut e = vec![0; target.nvars()];
            for (j, &x) in m.0.iter().enumerate() {
                if x > 0 {
                    e[idx[j]] = x;
                }
            }
            p.add_term(Monomial(e), c);
        }
        Ok(p)
    }

    /// Whether variable `i` occurs.
    pub fn involves(&self, i: usize) -> bool {
        self.terms.keys().any(|m| m.0[i] > 0)
    }

    /// Divide by the leading coefficient (degrevlex); zero stays zero.
    pub fn monic(&self) -> Polynomial {
        match self.terms.iter().next_back() {
            Some((_, c)) => self.scale(&c.inv()),
            None => self.clone(),
        }
    }

    /// Parse `s` in `ring`.
    pub fn parse(ring: &RingRef, s: &str) -> Result<Polynomial> {
        let mut p = Parser { ring, src: s.as_bytes(), pos: 0 };
        let r = p.expr()?;
        p.skip_ws();
        if p.pos != p.src.len() {
            return Err(p.err("unexpected trailing input"));
        }
        Ok(r)
    }
}

macro_rules! poly_op {
    ($tr:ident, $m:ident, $checked:ident) => {
        /// Panics if the operands live in different rings; use the
        /// `checked_*` methods to get an error instead.
        impl<'a> std::ops::$tr<&'a Polynomial> for &'a Polynomial {
            type Output = Polynomial;
            fn $m(self, rhs: &Polynomial) -> Polynomial {
                self.$checked(rhs).unwrap_or_else(|e| panic!("{e}"))
            }
        }
        impl std::ops::$tr<Polynomial> for Polynomial {
            type Output = Polynomial;
            fn $m(self, rhs: Polynomial) -> Polynomial {
                (&self).$m(&rhs)
            }
        }
    };
}
poly_op!(Add, add, checked_add);
poly_op!(Sub, sub, checked_sub);
poly_op!(Mul, mul, checked_mul);

impl std::ops::Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        self.scale(&-Q::one())
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            let a = c.abs();
            if k == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            let mut parts = Vec::new();
            for (v, &e) in self.ring.vars.iter().zip(&m.0) {
                match e {
                    0 => {}
                    1 => parts.push(v.clone()),
                    _ => parts.push(format!("{v}^{e}")),
                }
            }
            if parts.is_empty() {
                write!(f, "{a}")?;
            } else if a.is_one() {
                write!(f, "{}", parts.join("*"))?;
            } else {
                write!(f, "{a}*{}", parts.join("*"))?;
            }
        }
        Ok(())
    }
}

struct Parser<'a> {
    ring: &'a RingRef,
    src: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn err(&self, msg: &str) -> Error {
        Error::Parse { pos: self.pos, msg: msg.to_string() }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn expr(&mut self) -> Result<Polynomial> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    acc = &acc + &self.term()?;
                }
                Some(b'-') => {
                    self.pos += 1;
                    acc = &acc - &self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Polynomial> {
        let mut acc = self.unary()?;
        loop {
            match self.peek() {
                Some(b'*') => {
                    self.pos += 1;
                    acc = &acc * &self.unary()?;
                }
                Some(b'/') => {
                    self.pos += 1;
                    let at = self.pos;
                    let d = self.unary()?;
                    if !d.is_constant() || d.is_zero() {
                        self.pos = at;
                        return Err(self.err("can only divide by a nonzero constant"));
                    }
                    acc = acc.scale(&d.coeff(&Monomial::one(self.ring.nvars())).inv());
                }
                // juxtaposition: `2x`, `3(x+y)`, `x y`
                Some(c) if c.is_ascii_alphanumeric() || c == b'_' || c == b'(' => {
                    acc = &acc * &self.unary()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn unary(&mut self) -> Result<Polynomial> {
        match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                Ok(-&self.unary()?)
            }
            Some(b'+') => {
                self.pos += 1;
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<Polynomial> {
        let base = self.atom()?;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            self.skip_ws();
            let start = self.pos;
            while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
                self.pos += 1;
            }
            if start == self.pos {
                return Err(self.err("expected a non-negative integer exponent"));
            }
            let e: u32 = std::str::from_utf8(&self.src[start..self.pos])
                .unwrap()
                .parse()
                .map_err(|_| self.err("exponent too large"))?;
            if e > 10_000 {
                return Err(self.err("exponent too large"));
            }
            return Ok(base.pow(e));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Polynomial> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let e = self.expr()?;
                if self.peek() != Some(b')') {
                    return Err(self.err("expected `)`"));
                }
                self.pos += 1;
                Ok(e)
            }
            Some(c) if c.is_ascii_digit() => {
                let start = self.pos;
                while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
                    self.pos += 1;
                }
                let s = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
                let q: Q = s.parse().map_err(|_| self.err("bad number"))?;
                Ok(Polynomial::constant(self.ring, q))
            }
            Some(c) if c.is_ascii_alphabetic() || c == b'_' => {
                let start = self.pos;
                while self.pos < self.src.len()
                    && (self.src[self.pos].is_ascii_alphanumeric() || self.src[self.pos] == b'_')
                {
                    self.pos += 1;
                }
                let name = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
                match self.ring.var_index(name) {
                    Some(i) => Ok(Polynomial::var(self.ring, i)),
                    None => {
                        self.pos = start;
                        Err(Error::UnknownVariable(name.to_string()))
                    }
                }
            }
            Some(_) => Err(self.err("unexpected character")),
            None => Err(self.err("unexpected end of input")),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r() -> RingRef {
        Ring::new(&["x", "y", "z"]).unwrap()
    }

    #[test]
    fn parse_and_print() {
        let r = r();
        let p = r.parse("(x+y)^2 - 2x*y + 1/2*z - 3").unwrap();
        assert_eq!(p.to_string(), "x^2 + y^2 + 1/2*z - 3");
        assert_eq!(r.parse(&p.to_string()).unwrap(), p);
        assert!(matches!(r.parse("x + w"), Err(Error::UnknownVariable(_))));
        assert!(matches!(r.parse("x +"), Err(Error::Parse { .. })));
        assert!(matches!(r.parse("x / y"), Err(Error::Parse { .. })));
        assert_eq!(r.parse("x/2").unwrap(), r.parse("1/2 x").unwrap());
    }

    #[test]
    fn ring_mismatch_is_an_error() {
        let a = r();
        let b = Ring::new(&["x", "y"]).unwrap();
        let p = a.parse("x").unwrap();
        let q = b.parse("x").unwrap();
        assert!(matches!(p.checked_add(&q), Err(Error::RingMismatch(_))));
        assert_eq!(q.map_to(&a).unwrap(), p);
    }

    #[test]
    fn orders() {
        let o = MonomialOrder::DegRevLex;
        let m = |v: &[u32]| Monomial(v.to_vec());
        // x*z < y^2 in degrevlex
        assert_eq!(o.cmp(&m(&[1, 0, 1]), &m(&[0, 2, 0])), Ordering::Less);
        assert_eq!(MonomialOrder::Lex.cmp(&m(&[1, 0, 1]), &m(&[0, 2, 0])), Ordering::Greater);
        let e = MonomialOrder::Elimination { block: vec![2] };
        assert_eq!(e.cmp(&m(&[0, 0, 1]), &m(&[5, 5, 0])), Ordering::Greater);
        let a = MonomialOrder::AuxDegree { aux: 2 };
        assert_eq!(a.cmp(&m(&[1, 0, 1]), &m(&[0, 2, 0])), Ordering::Greater);
    }

    #[test]
    fn min_form_and_homogenize() {
        let r = r();
        let p = r.parse("y^2 - x^2 - x^3").unwrap();
        assert_eq!(p.min_form(), r.parse("y^2 - x^2").unwrap());
        let rh = r.extend(&["h"]);
        let ph = p.homogenize(&rh, 3);
        assert!(ph.is_homogeneous());
        assert_eq!(ph, rh.parse("y^2*h - x^2*h - x^3").unwrap());
        assert!(p.homogenize_with("x").is_err());
        let q = r.parse("x + y^2").unwrap().homogenize_with("h").unwrap();
        assert_eq!(q.to_string(), "y^2 + x*h");
        assert_eq!(r.parse("x^2-y^2").unwrap().homogeneous_degree(), Some(Some(2)));
        assert_eq!(r.zero().homogeneous_degree(), Some(None));
        assert_eq!(r.parse("x+y^2").unwrap().homogeneous_degree(), None);
    }

    #[test]
    fn substitution_and_derivative() {
        let r = r();
        let p = r.parse("x^2*y + z").unwrap();
        assert_eq!(p.derivative(0), r.parse("2*x*y").unwrap());
        let imgs = vec![r.parse("y").unwrap(), r.parse("x").unwrap(), r.parse("1").unwrap()];
        assert_eq!(p.substitute(&r, &imgs), r.parse("y^2*x + 1").unwrap());
        assert_eq!(p.eval(&[Q::from_int(2), Q::from_int(3), Q::one()]), Q::from_int(13));
    }
}
