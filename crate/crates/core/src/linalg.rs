//! Sparse exact linear algebra over Q.

use crate::rational::Q;
use std::collections::BTreeMap;

/// Sparse vector: `(index, value)` pairs, indices strictly increasing,
/// values nonzero.
pub type SVec = Vec<(usize, Q)>;

/// Build an [`SVec`] from unsorted entries, summing duplicates.
pub fn svec_from<I: IntoIterator<Item = (usize, Q)>>(it: I) -> SVec {
    let mut m: BTreeMap<usize, Q> = BTreeMap::new();
    for (i, c) in it {
        *m.entry(i).or_insert_with(Q::zero) += &c;
    }
    m.into_iter().filter(|(_, c)| !c.is_zero()).collect()
}

pub fn svec_add_scaled(a: &SVec, c: &Q, b: &SVec) -> SVec {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        if j == b.len() || (i < a.len() && a[i].0 < b[j].0) {
            out.push(a[i].clone());
            i += 1;
        } else if i == a.len() || b[j].0 < a[i].0 {
            out.push((b[j].0, &b[j].1 * c));
            j += 1;
        } else {
            let s = &a[i].1 + &(&b[j].1 * c);
            if !s.is_zero() {
                out.push((a[i].0, s));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

pub fn svec_scale(a: &SVec, c: &Q) -> SVec {
    if c.is_zero() {
        return Vec::new();
    }
    a.iter().map(|(i, x)| (*i, x * c)).collect()
}

/// A subspace kept in row echelon form, keyed by pivot column.
#[derive(Debug, Clone, Default)]
pub struct Echelon {
    rows: BTreeMap<usize, SVec>,
}

impl Echelon {
    pub fn new() -> Echelon {
        Echelon::default()
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Reduce `v` against the pivots; the result has no pivot-column entries.
    pub fn reduce(&self, v: &SVec) -> SVec {
        let mut w: BTreeMap<usize, Q> = v.iter().cloned().collect();
        let mut cursor = 0;
        loop {
            let next = w.range(cursor..).find(|(k, _)| self.rows.contains_key(k)).map(|(k, c)| (*k, c.clone()));
            let Some((k, c)) = next else { break };
            for (j, x) in &self.rows[&k] {
                let e = w.entry(*j).or_insert_with(Q::zero);
                *e -= &(x * &c);
                if e.is_zero() {
                    w.remove(j);
                }
            }
            cursor = k + 1;
        }
        w.into_iter().collect()
    }

    /// Add `v`; returns whether it was independent.
    pub fn insert(&mut self, v: &SVec) -> bool {
        let r = self.reduce(v);
        match r.first() {
            None => false,
            Some((k, c)) => {
                let k = *k;
                let inv = c.inv();
                self.rows.insert(k, svec_scale(&r, &inv));
                true
            }
        }
    }

    pub fn contains(&self, v: &SVec) -> bool {
        self.reduce(v).is_empty()
    }
}

/// Rank of a list of rows.
pub fn rank(rows: &[SVec]) -> usize {
    let mut e = Echelon::new();
    for r in rows {
        e.insert(r);
    }
    e.rank()
}

/// Kernel of the map sending basis vector `i` to `images[i]`, as sparse
/// vectors over the source basis.
pub fn kernel(images: &[SVec]) -> Vec<SVec> {
    let off = images.iter().flat_map(|v| v.iter().map(|(i, _)| i + 1)).max().unwrap_or(0);
    let mut e = Echelon::new();
    let mut out = Vec::new();
    for (i, v) in images.iter().enumerate() {
        let mut aug = v.clone();
        aug.push((off + i, Q::one()));
        let r = e.reduce(&aug);
        if r.first().map(|(k, _)| *k >= off).unwrap_or(true) {
            out.push(r.into_iter().map(|(k, c)| (k - off, c)).collect());
        } else {
            let (k, c) = r[0].clone();
            let inv = c.inv();
            e.rows.insert(k, svec_scale(&r, &inv));
        }
    }
    out
}

/// Apply a linear map given by column images to a vector.
pub fn apply(images: &[SVec], v: &SVec) -> SVec {
    let mut acc: BTreeMap<usize, Q> = BTreeMap::new();
    for (i, c) in v {
        for (j, x) in &images[*i] {
            *acc.entry(*j).or_insert_with(Q::zero) += &(x * c);
        }
    }
    acc.into_iter().filter(|(_, c)| !c.is_zero()).collect()
}

/// Dimension of `(span(z) + span(b)) / span(b)`.
pub fn quotient_rank(z: &[SVec], b: &[SVec]) -> usize {
    let mut e = Echelon::new();
    for v in b {
        e.insert(v);
    }
    let rb = e.rank();
    for v in z {
        e.insert(v);
    }
    e.rank() - rb
}
