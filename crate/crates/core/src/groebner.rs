//! Gröbner bases for ideals and submodules of free modules.
//!
//! The engine works on sparse module vectors; ideals are the rank one case.
//! Pair selection uses the normal strategy together with the chain
//! criterion (and the coprime criterion for ideals).

use crate::error::{Error, Result};
use crate::poly::{Monomial, MonomialOrder, Polynomial, Ring, RingRef};
use crate::rational::Q;
use std::cmp::Ordering;
use std::collections::HashMap;
use std::sync::OnceLock;

/// A module monomial `x^a e_comp`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Term {
    pub mono: Monomial,
    pub comp: usize,
}

impl Term {
    pub fn new(mono: Monomial, comp: usize) -> Term {
        Term { mono, comp }
    }

    fn divides(&self, other: &Term) -> bool {
        self.comp == other.comp && self.mono.divides(&other.mono)
    }
}

/// A term order on a free module: a monomial order plus integer degree
/// shifts per component. Compares shifted degree, then component (lower
/// index larger), then the monomials.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ModuleOrder {
    pub order: MonomialOrder,
    pub shifts: Vec<i64>,
}

impl ModuleOrder {
    pub fn new(order: MonomialOrder, rank: usize) -> ModuleOrder {
        ModuleOrder { order, shifts: vec![0; rank] }
    }

    pub fn with_shifts(order: MonomialOrder, shifts: Vec<i64>) -> ModuleOrder {
        ModuleOrder { order, shifts }
    }

    fn degree(&self, m: &Monomial) -> i64 {
        match &self.order {
            MonomialOrder::WeightedDegree { weights } => {
                m.0.iter().zip(weights).map(|(&e, &w)| e as i64 * w as i64).sum()
            }
            _ => m.degree() as i64,
        }
    }

    pub fn cmp(&self, a: &Term, b: &Term) -> Ordering {
        match &self.order {
            MonomialOrder::Lex => {
                self.order.cmp(&a.mono, &b.mono).then_with(|| b.comp.cmp(&a.comp))
            }
            MonomialOrder::Elimination { block } => {
                let bd = |m: &Monomial| -> u32 { block.iter().map(|&i| m.0[i]).sum() };
                bd(&a.mono)
                    .cmp(&bd(&b.mono))
                    .then_with(|| {
                        let da = a.mono.degree() as i64 - bd(&a.mono) as i64 + self.shifts[a.comp];
                        let db = b.mono.degree() as i64 - bd(&b.mono) as i64 + self.shifts[b.comp];
                        da.cmp(&db)
                    })
                    .then_with(|| b.comp.cmp(&a.comp))
                    .then_with(|| self.order.cmp(&a.mono, &b.mono))
            }
            _ => {
                let da = self.degree(&a.mono) + self.shifts[a.comp];
                let db = self.degree(&b.mono) + self.shifts[b.comp];
                da.cmp(&db)
                    .then_with(|| b.comp.cmp(&a.comp))
                    .then_with(|| self.order.cmp(&a.mono, &b.mono))
            }
        }
    }
}

/// Sparse module vector, sorted ascending so the leading term is last.
pub(crate) type TVec = Vec<(Term, Q)>;

pub(crate) fn sort_tvec(ord: &ModuleOrder, mut v: TVec) -> TVec {
    v.sort_by(|a, b| ord.cmp(&a.0, &b.0));
    let mut out: TVec = Vec::with_capacity(v.len());
    for (t, c) in v {
        match out.last_mut() {
            Some((u, d)) if *u == t => *d += &c,
            _ => out.push((t, c)),
        }
    }
    out.retain(|(_, c)| !c.is_zero());
    out
}

/// `a - c * m * b` where both inputs are sorted.
fn sub_mul(ord: &ModuleOrder, a: &[(Term, Q)], c: &Q, m: &Monomial, b: &[(Term, Q)]) -> TVec {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let mut i = 0;
    let mut j = 0;
    let shifted = |k: usize| -> Term {
        let (t, _) = &b[k];
        Term { mono: t.mono.mul(m), comp: t.comp }
    };
    let mut bj = if b.is_empty() { None } else { Some(shifted(0)) };
    while i < a.len() || bj.is_some() {
        let take_a = match &bj {
            None => true,
            Some(t) => i < a.len() && ord.cmp(&a[i].0, t) == Ordering::Less,
        };
        if take_a {
            out.push(a[i].clone());
            i += 1;
            continue;
        }
        let t = bj.take().unwrap();
        let val = &b[j].1 * c;
        if i < a.len() && a[i].0 == t {
            let s = &a[i].1 - &val;
            if !s.is_zero() {
                out.push((t, s));
            }
            i += 1;
        } else {
            out.push((t, -val));
        }
        j += 1;
        if j < b.len() {
            bj = Some(shifted(j));
        }
    }
    out
}

fn make_monic(v: &mut TVec) {
    if let Some((_, c)) = v.last() {
        if !c.is_one() {
            let inv = c.inv();
            for (_, d) in v.iter_mut() {
                *d = &*d * &inv;
            }
        }
    }
}

/// A reduced Gröbner basis of a submodule of `R^rank`.
#[derive(Debug, Clone)]
pub struct ModuleGb {
    ring: RingRef,
    rank: usize,
    ord: ModuleOrder,
    elems: Vec<TVec>,
}

struct Pair {
    i: usize,
    j: usize,
    lcm: Term,
}

impl ModuleGb {
    /// Gröbner basis of the submodule generated by `gens` (sparse vectors).
    pub(crate) fn from_tvecs(ring: &RingRef, rank: usize, ord: ModuleOrder, gens: Vec<TVec>) -> ModuleGb {
        assert_eq!(ord.shifts.len(), rank, "one shift per component");
        let ideal_case = rank == 1;
        let mut basis: Vec<TVec> = Vec::new();
        let mut pairs: Vec<Pair> = Vec::new();
        let mut gb = ModuleGb { ring: ring.clone(), rank, ord, elems: Vec::new() };
        let mut gens: Vec<TVec> = gens.into_iter().map(|g| sort_tvec(&gb.ord, g)).filter(|g| !g.is_empty()).collect();
        gens.sort_by(|a, b| gb.ord.cmp(&a.last().unwrap().0, &b.last().unwrap().0));
        let mut queue: Vec<TVec> = gens;
        queue.reverse();
        loop {
            let h = if let Some(g) = queue.pop() {
                g
            } else if !pairs.is_empty() {
                // normal strategy: smallest lcm first, ties by index
                let mut best = 0;
                for k in 1..pairs.len() {
                    let c = gb.ord.cmp(&pairs[k].lcm, &pairs[best].lcm);
                    if c == Ordering::Less
                        || (c == Ordering::Equal && (pairs[k].j, pairs[k].i) < (pairs[best].j, pairs[best].i))
                    {
                        best = k;
                    }
                }
                let p = pairs.swap_remove(best);
                spoly(&gb.ord, &basis[p.i], &basis[p.j], &p.lcm)
            } else {
                break;
            };
            let mut h = reduce_with(&gb.ord, h, &basis, false);
            if h.is_empty() {
                continue;
            }
            make_monic(&mut h);
            let hi = basis.len();
            let ht = h.last().unwrap().0.clone();
            // B criterion on old pairs
            pairs.retain(|p| {
                if !ht.divides(&p.lcm) {
                    return true;
                }
                let li = basis[p.i].last().unwrap().0.mono.lcm(&ht.mono);
                let lj = basis[p.j].last().unwrap().0.mono.lcm(&ht.mono);
                li == p.lcm.mono || lj == p.lcm.mono
            });
            // new pairs with chain and coprime criteria
            let mut cand: Vec<(usize, Term, bool)> = Vec::new();
            for (i, g) in basis.iter().enumerate() {
                let gt = &g.last().unwrap().0;
                if gt.comp != ht.comp {
                    continue;
                }
                let l = Term::new(gt.mono.lcm(&ht.mono), ht.comp);
                let coprime = ideal_case && gt.mono.gcd_is_one(&ht.mono);
                cand.push((i, l, coprime));
            }
            let mut keep: Vec<(usize, Term, bool)> = Vec::new();
            for (k, (i, l, cp)) in cand.iter().enumerate() {
                // M: drop if another candidate lcm properly divides this one
                let dominated = cand.iter().any(|(_, l2, _)| l2.divides(l) && l2 != l);
                if dominated {
                    continue;
                }
                // F: among equal lcms keep one, preferring a coprime one
                let dup = cand.iter().enumerate().any(|(k2, (_, l2, cp2))| {
                    l2 == l && ((*cp2 && !*cp) || (*cp2 == *cp && k2 < k))
                });
                if dup {
                    continue;
                }
                keep.push((*i, l.clone(), *cp));
            }
            for (i, l, cp) in keep {
                if !cp {
                    pairs.push(Pair { i, j: hi, lcm: l });
                }
            }
            basis.push(h);
        }
        gb.elems = interreduce(&gb.ord, basis);
        gb
    }

    /// Gröbner basis of the submodule generated by dense vectors.
    pub fn new(ring: &RingRef, rank: usize, ord: ModuleOrder, gens: &[Vec<Polynomial>]) -> ModuleGb {
        let tv = gens.iter().map(|g| dense_to_tvec(g)).collect();
        ModuleGb::from_tvecs(ring, rank, ord, tv)
    }

    pub fn ring(&self) -> &RingRef {
        &self.ring
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn order(&self) -> &ModuleOrder {
        &self.ord
    }

    pub fn len(&self) -> usize {
        self.elems.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elems.is_empty()
    }

    /// Leading terms of the basis elements.
    pub fn leading_terms(&self) -> Vec<Term> {
        self.elems.iter().map(|e| e.last().unwrap().0.clone()).collect()
    }

    /// Whether `t` is a standard term (not divisible by a leading term).
    pub fn is_standard(&self, t: &Term) -> bool {
        !self.elems.iter().any(|e| e.last().unwrap().0.divides(t))
    }

    /// Basis elements as dense vectors.
    pub fn elements(&self) -> Vec<Vec<Polynomial>> {
        self.elems.iter().map(|e| tvec_to_dense(&self.ring, self.rank, e)).collect()
    }

    pub(crate) fn tvecs(&self) -> &[TVec] {
        &self.elems
    }

    /// Normal form of an unsorted sparse vector.
    pub(crate) fn reduce_tvec(&self, v: TVec) -> TVec {
        let v = sort_tvec(&self.ord, v);
        reduce_with(&self.ord, v, &self.elems, true)
    }

    /// Normal form of a dense vector.
    pub fn reduce(&self, v: &[Polynomial]) -> Vec<Polynomial> {
        let r = self.reduce_tvec(dense_to_tvec(v));
        tvec_to_dense(&self.ring, self.rank, &r)
    }

    pub fn contains(&self, v: &[Polynomial]) -> bool {
        self.reduce_tvec(dense_to_tvec(v)).is_empty()
    }

    /// Whether every S-vector reduces to zero (Buchberger's criterion).
    pub fn buchberger_criterion_holds(&self) -> bool {
        for j in 0..self.elems.len() {
            for i in 0..j {
                let (a, b) = (&self.elems[i], &self.elems[j]);
                let (ta, tb) = (&a.last().unwrap().0, &b.last().unwrap().0);
                if ta.comp != tb.comp {
                    continue;
                }
                let l = Term::new(ta.mono.lcm(&tb.mono), ta.comp);
                let s = spoly(&self.ord, a, b, &l);
                if !reduce_with(&self.ord, s, &self.elems, true).is_empty() {
                    return false;
                }
            }
        }
        true
    }
}

pub(crate) fn dense_to_tvec(v: &[Polynomial]) -> TVec {
    let mut out = Vec::new();
    for (c, p) in v.iter().enumerate() {
        for (m, q) in p.terms() {
            out.push((Term::new(m.clone(), c), q.clone()));
        }
    }
    out
}

pub(crate) fn tvec_to_dense(ring: &RingRef, rank: usize, v: &[(Term, Q)]) -> Vec<Polynomial> {
    let mut out = vec![Polynomial::zero(ring); rank];
    for (t, c) in v {
        out[t.comp].add_term(t.mono.clone(), c);
    }
    out
}

fn spoly(ord: &ModuleOrder, a: &TVec, b: &TVec, l: &Term) -> TVec {
    let (ta, ca) = a.last().unwrap();
    let (tb, cb) = b.last().unwrap();
    let ma = l.mono.div(&ta.mono);
    let mb = l.mono.div(&tb.mono);
    let sa = sub_mul(ord, &[], &(-&ca.inv()), &ma, a);
    sub_mul(ord, &sa, &cb.inv(), &mb, b)
}

/// Reduce `v` (sorted) by `basis`. With `full`, also reduce lower terms.
fn reduce_with(ord: &ModuleOrder, mut v: TVec, basis: &[TVec], full: bool) -> TVec {
    let mut rem: TVec = Vec::new();
    while let Some((t, c)) = v.last() {
        let div = basis.iter().find(|g| g.last().unwrap().0.divides(t));
        match div {
            Some(g) => {
                let (gt, gc) = g.last().unwrap();
                let m = t.mono.div(&gt.mono);
                let coef = c / gc;
                v = sub_mul(ord, &v, &coef, &m, g);
            }
            None => {
                if !full {
                    v.extend(rem.into_iter().rev());
                    return v;
                }
                let x = v.pop().unwrap();
                rem.push(x);
            }
        }
    }
    rem.reverse();
    rem
}

fn interreduce(ord: &ModuleOrder, mut basis: Vec<TVec>) -> Vec<TVec> {
    basis.sort_by(|a, b| ord.cmp(&a.last().unwrap().0, &b.last().unwrap().0));
    let mut min: Vec<TVec> = Vec::new();
    for g in basis {
        let t = &g.last().unwrap().0;
        if !min.iter().any(|h| h.last().unwrap().0.divides(t)) {
            min.push(g);
        }
    }
    let n = min.len();
    for k in 0..n {
        let g = std::mem::take(&mut min[k]);
        let (lead, tail) = g.split_last().unwrap();
        let others: Vec<TVec> = min.iter().enumerate().filter(|(i, _)| *i != k).map(|(_, h)| h.clone()).collect();
        let mut red = reduce_with(ord, tail.to_vec(), &others, true);
        red.push(lead.clone());
        make_monic(&mut red);
        min[k] = red;
    }
    min
}

/// Which colon operation to perform.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ColonMode {
    Quotient,
    Saturation,
}

/// An ideal, stored by its generators.
#[derive(Debug, Clone)]
pub struct Ideal {
    ring: RingRef,
    gens: Vec<Polynomial>,
    gb: OnceLock<GroebnerBasis>,
}

/// A reduced Gröbner basis of an ideal.
#[derive(Debug, Clone)]
pub struct GroebnerBasis {
    order: MonomialOrder,
    inner: ModuleGb,
}

impl GroebnerBasis {
    pub fn order(&self) -> &MonomialOrder {
        &self.order
    }

    /// Basis elements, monic, sorted by leading term.
    pub fn elements(&self) -> Vec<Polynomial> {
        self.inner.elements().into_iter().map(|mut v| v.remove(0)).collect()
    }

    pub fn leading_monomials(&self) -> Vec<Monomial> {
        self.inner.leading_terms().into_iter().map(|t| t.mono).collect()
    }

    /// Remainder of `f` on division by the basis.
    pub fn normal_form(&self, f: &Polynomial) -> Result<Polynomial> {
        if f.ring() != self.inner.ring() {
            return Err(Error::RingMismatch("polynomial outside the basis ring".into()));
        }
        Ok(self.inner.reduce(std::slice::from_ref(f)).remove(0))
    }

    pub fn reduces_to_zero(&self, f: &Polynomial) -> bool {
        self.inner.contains(std::slice::from_ref(f))
    }

    pub fn is_standard(&self, m: &Monomial) -> bool {
        self.inner.is_standard(&Term::new(m.clone(), 0))
    }

    pub fn buchberger_criterion_holds(&self) -> bool {
        self.inner.buchberger_criterion_holds()
    }

    pub fn is_unit(&self) -> bool {
        self.inner.leading_terms().iter().any(|t| t.mono.is_one())
    }
}

impl PartialEq for Ideal {
    /// Equality of ideals (not of generator lists).
    fn eq(&self, other: &Ideal) -> bool {
        self.ring == other.ring && self.contains_ideal(other) && other.contains_ideal(self)
    }
}

impl Ideal {
    pub fn new(ring: &RingRef, gens: Vec<Polynomial>) -> Result<Ideal> {
        for g in &gens {
            if g.ring() != ring {
                return Err(Error::RingMismatch("generator outside the ideal's ring".into()));
            }
        }
        let gens = gens.into_iter().filter(|g| !g.is_zero()).collect();
        Ok(Ideal { ring: ring.clone(), gens, gb: OnceLock::new() })
    }

    pub fn parse<S: AsRef<str>>(ring: &RingRef, gens: &[S]) -> Result<Ideal> {
        let g = gens.iter().map(|s| Polynomial::parse(ring, s.as_ref())).collect::<Result<Vec<_>>>()?;
        Ideal::new(ring, g)
    }

    pub fn zero(ring: &RingRef) -> Ideal {
        Ideal { ring: ring.clone(), gens: Vec::new(), gb: OnceLock::new() }
    }

    pub fn unit(ring: &RingRef) -> Ideal {
        Ideal::new(ring, vec![ring.one()]).unwrap()
    }

    pub fn ring(&self) -> &RingRef {
        &self.ring
    }

    pub fn gens(&self) -> &[Polynomial] {
        &self.gens
    }

    pub fn groebner(&self, order: &MonomialOrder) -> GroebnerBasis {
        let n = self.ring.nvars();
        order.check(n).expect("monomial order does not fit ring");
        let ord = ModuleOrder::new(order.clone(), 1);
        let tv = self.gens.iter().map(|g| dense_to_tvec(std::slice::from_ref(g))).collect();
        GroebnerBasis { order: order.clone(), inner: ModuleGb::from_tvecs(&self.ring, 1, ord, tv) }
    }

    /// Cached degrevlex basis.
    pub fn gb(&self) -> &GroebnerBasis {
        self.gb.get_or_init(|| self.groebner(&MonomialOrder::DegRevLex))
    }

    /// The same ideal with its reduced degrevlex basis as generators.
    pub fn reduced(&self) -> Ideal {
        Ideal::new(&self.ring, self.gb().elements()).unwrap()
    }

    pub fn contains(&self, f: &Polynomial) -> bool {
        self.gb().reduces_to_zero(f)
    }

    pub fn contains_ideal(&self, other: &Ideal) -> bool {
        other.gens.iter().all(|g| self.contains(g))
    }

    pub fn is_unit(&self) -> bool {
        self.gb().is_unit()
    }

    pub fn is_zero(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn add(&self, other: &Ideal) -> Ideal {
        let mut g = self.gens.clone();
        g.extend(other.gens.iter().cloned());
        Ideal::new(&self.ring, g).unwrap()
    }

    pub fn product(&self, other: &Ideal) -> Ideal {
        let mut g = Vec::new();
        for a in &self.gens {
            for b in &other.gens {
                g.push(a * b);
            }
        }
        Ideal::new(&self.ring, g).unwrap()
    }

    /// Move to another ring with a superset of the variable names.
    pub fn map_to(&self, target: &RingRef) -> Result<Ideal> {
        let g = self.gens.iter().map(|p| p.map_to(target)).collect::<Result<Vec<_>>>()?;
        Ideal::new(target, g)
    }

    /// `I ∩ k[remaining variables]`, still expressed in this ring.
    pub fn eliminate(&self, vars: &[usize]) -> Ideal {
        let gb = self.groebner(&MonomialOrder::Elimination { block: vars.to_vec() });
        let g = gb.elements().into_iter().filter(|p| !vars.iter().any(|&v| p.involves(v))).collect();
        Ideal::new(&self.ring, g).unwrap()
    }

    /// Eliminate the listed variables and return the result in the ring
    /// of the remaining variables.
    pub fn eliminate_to(&self, vars: &[usize]) -> Ideal {
        let e = self.eliminate(vars);
        let keep: Vec<&str> = self
            .ring
            .vars()
            .iter()
            .enumerate()
            .filter(|(i, _)| !vars.contains(i))
            .map(|(_, v)| v.as_str())
            .collect();
        let sub = Ring::new(&keep).unwrap();
        e.restrict(&sub).expect("eliminated generators live in the subring")
    }

    /// Move generators to a subring, failing if one uses a dropped variable.
    pub fn restrict(&self, sub: &RingRef) -> Result<Ideal> {
        let mut out = Vec::new();
        for g in &self.gens {
            let mut p = Polynomial::zero(sub);
            for (m, c) in g.terms() {
                let mut e = vec![0; sub.nvars()];
                for (i, &x) in m.0.iter().enumerate() {
                    if x == 0 {
                        continue;
                    }
                    let name = &self.ring.vars()[i];
                    let j = sub.var_index(name).ok_or_else(|| Error::UnknownVariable(name.clone()))?;
                    e[j] = x;
                }
                p.add_term(Monomial(e), c);
            }
            out.push(p);
        }
        Ideal::new(sub, out)
    }

    pub fn intersect(&self, other: &Ideal) -> Ideal {
        let big = self.ring.extend(&["t"]);
        let t = big.var(self.ring.nvars());
        let one_minus_t = &big.one() - &t;
        let mut g = Vec::new();
        for a in &self.gens {
            g.push(&a.map_to(&big).unwrap() * &t);
        }
        for b in &other.gens {
            g.push(&b.map_to(&big).unwrap() * &one_minus_t);
        }
        let j = Ideal::new(&big, g).unwrap();
        let e = j.eliminate(&[self.ring.nvars()]);
        e.restrict(&self.ring).unwrap()
    }

    /// `I : f`.
    pub fn quotient_elem(&self, f: &Polynomial) -> Ideal {
        if f.is_zero() {
            return Ideal::unit(&self.ring);
        }
        let inter = self.intersect(&Ideal::new(&self.ring, vec![f.clone()]).unwrap());
        let g = inter.gens.iter().map(|p| divide_exact(p, f)).collect();
        Ideal::new(&self.ring, g).unwrap()
    }

    /// `I : J`.
    pub fn quotient(&self, other: &Ideal) -> Ideal {
        let mut acc: Option<Ideal> = None;
        for g in &other.gens {
            let q = self.quotient_elem(g);
            acc = Some(match acc {
                None => q,
                Some(a) => a.intersect(&q),
            });
        }
        acc.unwrap_or_else(|| Ideal::unit(&self.ring))
    }

    /// `I : J^∞` by iterated quotients, stopping when the chain is stable.
    pub fn saturate(&self, other: &Ideal) -> Result<Ideal> {
        self.saturate_capped(other, 64)
    }

    pub fn saturate_capped(&self, other: &Ideal, cap: usize) -> Result<Ideal> {
        let mut cur = self.clone();
        for _ in 0..cap {
            let next = cur.quotient(other);
            if cur.contains_ideal(&next) {
                return Ok(cur.reduced());
            }
            cur = next;
        }
        Err(Error::IterationCap { what: "saturation".into(), cap })
    }

    /// `I : f^∞` through an auxiliary variable y and `1 - y f`.
    pub fn saturate_elem(&self, f: &Polynomial) -> Ideal {
        let n = self.ring.nvars();
        let big = self.ring.extend(&["y"]);
        let y = big.var(n);
        let mut g: Vec<Polynomial> = self.gens.iter().map(|p| p.map_to(&big).unwrap()).collect();
        g.push(&big.one() - &(&y * &f.map_to(&big).unwrap()));
        let j = Ideal::new(&big, g).unwrap();
        j.eliminate(&[n]).restrict(&self.ring).unwrap().reduced()
    }

    /// Whether `f` lies in the radical of `I`.
    pub fn radical_contains(&self, f: &Polynomial) -> bool {
        let n = self.ring.nvars();
        let big = self.ring.extend(&["y"]);
        let y = big.var(n);
        let mut g: Vec<Polynomial> = self.gens.iter().map(|p| p.map_to(&big).unwrap()).collect();
        g.push(&big.one() - &(&y * &f.map_to(&big).unwrap()));
        Ideal::new(&big, g).unwrap().is_unit()
    }

    /// Krull dimension of `R/I`; an error for the unit ideal.
    pub fn krull_dimension(&self) -> Result<usize> {
        let gb = self.gb();
        if gb.is_unit() {
            return Err(Error::InvalidInput("the unit ideal has no dimension".into()));
        }
        let lts = gb.leading_monomials();
        let n = self.ring.nvars();
        let mut best = 0;
        for mask in 0u64..(1u64 << n) {
            let size = mask.count_ones() as usize;
            if size <= best {
                continue;
            }
            let independent = lts.iter().all(|m| m.0.iter().enumerate().any(|(i, &e)| e > 0 && mask & (1 << i) == 0));
            if independent {
                best = size;
            }
        }
        Ok(best)
    }

    /// Whether the generators are homogeneous for the weights.
    pub fn is_weighted_homogeneous(&self, w: &[i64]) -> bool {
        self.gens.iter().all(|g| g.is_weighted_homogeneous(w))
    }

    /// `dim_k (R/I)_d` for `d = 0..=upto` under positive weights; the
    /// ideal must be homogeneous for them.
    pub fn hilbert_function(&self, weights: &[u64], upto: u32) -> Result<Vec<u64>> {
        if weights.len() != self.ring.nvars() || weights.contains(&0) {
            return Err(Error::InvalidInput("weights must be positive, one per variable".into()));
        }
        let wi: Vec<i64> = weights.iter().map(|&w| w as i64).collect();
        if !self.is_weighted_homogeneous(&wi) {
            return Err(Error::NotHomogeneous("ideal is not homogeneous for the weights".into()));
        }
        let gb = self.groebner(&MonomialOrder::WeightedDegree { weights: weights.to_vec() });
        let lts = gb.leading_monomials();
        let mut out = Vec::new();
        for d in 0..=upto {
            let mut count = 0u64;
            for_each_monomial_of_weight(weights, d as u64, &mut |e| {
                if !lts.iter().any(|m| m.0.iter().zip(e).all(|(a, b)| a <= b)) {
                    count += 1;
                }
            });
            out.push(count);
        }
        Ok(out)
    }

    /// The ideal of lowest-degree forms (tangent cone at the origin).
    ///
    /// Homogenize the generators with a new variable `h`, compute a basis
    /// for an order preferring high powers of `h` within a degree, then
    /// dehomogenize and keep the lowest forms.
    pub fn ideal_min(&self) -> Result<Ideal> {
        self.check_origin()?;
        let n = self.ring.nvars();
        let big = self.ring.extend(&["h"]);
        let gh: Vec<Polynomial> = self.gens.iter().map(|g| g.homogenize(&big, n)).collect();
        let gb = Ideal::new(&big, gh).unwrap().groebner(&MonomialOrder::AuxDegree { aux: n });
        let mut imgs: Vec<Polynomial> = (0..n).map(|i| self.ring.var(i)).collect();
        imgs.push(self.ring.one());
        let forms: Vec<Polynomial> = gb
            .elements()
            .iter()
            .map(|p| p.substitute(&self.ring, &imgs).min_form())
            .filter(|p| !p.is_zero())
            .collect();
        Ok(Ideal::new(&self.ring, forms).unwrap().reduced())
    }

    /// Error unless every generator vanishes at the origin.
    pub fn check_origin(&self) -> Result<()> {
        let zero = Monomial::one(self.ring.nvars());
        match self.gens.iter().find(|g| !g.coeff(&zero).is_zero()) {
            Some(g) => Err(Error::InvalidInput(format!("generator `{g}` has a nonzero constant term"))),
            None => Ok(()),
        }
    }

    /// `I : J` or `I : J^∞`.
    pub fn colon_and_saturate(&self, other: &Ideal, mode: ColonMode) -> Result<Ideal> {
        if self.ring != other.ring {
            return Err(Error::RingMismatch("colon of ideals in different rings".into()));
        }
        match mode {
            ColonMode::Quotient => Ok(self.quotient(other)),
            ColonMode::Saturation => self.saturate(other),
        }
    }
}

/// Call `f` on every exponent vector of weighted degree `d`.
pub fn for_each_monomial_of_weight(w: &[u64], d: u64, f: &mut dyn FnMut(&[u32])) {
    fn rec(w: &[u64], i: usize, left: u64, e: &mut Vec<u32>, f: &mut dyn FnMut(&[u32])) {
        if i == w.len() {
            if left == 0 {
                f(e);
            }
            return;
        }
        let mut k = 0u32;
        loop {
            let used = k as u64 * w[i];
            if used > left {
                break;
            }
            e[i] = k;
            rec(w, i + 1, left - used, e, f);
            if w[i] == 0 {
                break;
            }
            k += 1;
        }
        e[i] = 0;
    }
    let mut e = vec![0; w.len()];
    rec(w, 0, d, &mut e, f);
}

/// Exact division `p / f`; panics if `f` does not divide `p`.
pub fn divide_exact(p: &Polynomial, f: &Polynomial) -> Polynomial {
    let ord = MonomialOrder::DegRevLex;
    let (fm, fc) = {
        let (m, c) = f.leading_term(&ord).expect("division by zero");
        (m.clone(), c.clone())
    };
    let ring = p.ring().clone();
    let mut rem = p.clone();
    let mut quot = Polynomial::zero(&ring);
    while let Some((m, c)) = rem.leading_term(&ord) {
        assert!(fm.divides(m), "inexact division");
        let t = Polynomial::monomial(&ring, c / &fc, m.div(&fm));
        rem = &rem - &(&t * f);
        quot = &quot + &t;
    }
    quot
}

/// Count `(monomial -> coefficient)` terms; small helper for tests.
pub fn term_map(p: &Polynomial) -> HashMap<Vec<u32>, Q> {
    p.terms().map(|(m, c)| (m.0.clone(), c.clone())).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cyclic3_groebner() {
        let r = Ring::new(&["x", "y", "z"]).unwrap();
        let i = Ideal::parse(&r, &["x+y+z", "x*y+y*z+z*x", "x*y*z-1"]).unwrap();
        let gb = i.gb();
        assert!(gb.buchberger_criterion_holds());
        assert!(i.contains(&r.parse("z^3 - 1").unwrap()));
        assert_eq!(i.krull_dimension().unwrap(), 0);
        let lex = i.groebner(&MonomialOrder::Lex);
        assert!(lex.buchberger_criterion_holds());
        assert_eq!(lex.elements().len(), 3);
    }

    #[test]
    fn elimination_and_saturation() {
        let r = Ring::new(&["x", "y", "t"]).unwrap();
        let i = Ideal::parse(&r, &["x - t^2", "y - t^3"]).unwrap();
        let e = i.eliminate_to(&[2]);
        let r2 = e.ring().clone();
        assert_eq!(e, Ideal::parse(&r2, &["x^3 - y^2"]).unwrap());
        let s = Ring::new(&["x", "y"]).unwrap();
        let j = Ideal::parse(&s, &["x^2*y", "x*y^2"]).unwrap();
        let x = s.var(0);
        assert_eq!(j.saturate_elem(&x), Ideal::parse(&s, &["y"]).unwrap());
        let sat = j.saturate(&Ideal::new(&s, vec![x.clone()]).unwrap()).unwrap();
        assert_eq!(sat, Ideal::parse(&s, &["y"]).unwrap());
        assert_eq!(j.quotient_elem(&x), Ideal::parse(&s, &["x*y", "y^2"]).unwrap());
        let r3 = Ring::new(&["x", "y", "z"]).unwrap();
        let a = Ideal::parse(&r3, &["x*y", "x*z"]).unwrap();
        let m = Ideal::parse(&r3, &["x"]).unwrap();
        let sat = a.colon_and_saturate(&m, ColonMode::Saturation).unwrap();
        assert_eq!(sat, Ideal::parse(&r3, &["y", "z"]).unwrap());
        let x2 = Ideal::parse(&r3, &["x^2"]).unwrap();
        assert!(x2.colon_and_saturate(&m, ColonMode::Saturation).unwrap().is_unit());
        assert_eq!(x2.colon_and_saturate(&m, ColonMode::Quotient).unwrap(), m);
    }

    #[test]
    fn elimination_examples() {
        let r = Ring::new(&["t", "x", "y"]).unwrap();
        let i = Ideal::parse(&r, &["t - x", "y - t^2"]).unwrap();
        let e = i.eliminate(&[0]);
        assert_eq!(e, Ideal::parse(&r, &["y - x^2"]).unwrap());
        let h = Ring::new(&["x", "y"]).unwrap();
        let hyp = Ideal::parse(&h, &["x*y - 1"]).unwrap();
        assert!(hyp.eliminate(&[1]).is_zero());
        assert!(hyp.krull_dimension().is_ok());
        assert!(Ideal::unit(&h).krull_dimension().is_err());
        let bad = Ideal::parse(&h, &["x + 1"]).unwrap();
        assert!(bad.ideal_min().is_err());
    }

    #[test]
    fn tangent_cones() {
        let r = Ring::new(&["x", "y"]).unwrap();
        let nodal = Ideal::parse(&r, &["y^2 - x^2 - x^3"]).unwrap();
        assert_eq!(nodal.ideal_min().unwrap(), Ideal::parse(&r, &["y^2 - x^2"]).unwrap());
        let r3 = Ring::new(&["x", "y", "z"]).unwrap();
        let i = Ideal::parse(&r3, &["x + y^2", "x + z^3"]).unwrap();
        assert_eq!(i.ideal_min().unwrap(), Ideal::parse(&r3, &["x", "y^2"]).unwrap());
    }

    #[test]
    fn hilbert_functions() {
        let r = Ring::new(&["x", "y", "z"]).unwrap();
        let i = Ideal::parse(&r, &["x^2 + y^2 - z^2"]).unwrap();
        let h = i.hilbert_function(&[1, 1, 1], 5).unwrap();
        assert_eq!(h, vec![1, 3, 5, 7, 9, 11]);
    }

    #[test]
    fn module_basis() {
        let r = Ring::new(&["x", "y"]).unwrap();
        let p = |s: &str| r.parse(s).unwrap();
        // syzygy-like submodule of R^2
        let gens = vec![vec![p("x"), p("y")], vec![p("y"), p("0")], vec![p("0"), p("x")]];
        let gb = ModuleGb::new(&r, 2, ModuleOrder::new(MonomialOrder::DegRevLex, 2), &gens);
        assert!(gb.buchberger_criterion_holds());
        assert!(gb.contains(&[p("x*y"), p("y^2")]));
        assert!(!gb.contains(&[p("1"), p("0")]));
    }
}
