//! Filtered Čech–de Rham complexes.
//!
//! Works on a graded presentation `S = P/J` whose variables are either
//! projective (weight one) or affine (weight zero). The cover is by the
//! charts `D+(v)` for projective `v`; with no projective variables there
//! is a single affine chart.
//!
//! On chart `I` a form of degree `p` is stored as `g / v_I^N` with `g` in
//! `Ω^p_S` modulo `v_I`-torsion. Forms on the affine chart ring itself are
//! the ones killed by contraction with the Euler field. Everything is cut
//! down to finite pieces by the pole order `N` and by the degree in the
//! affine variables (with `dx` counting one), and cohomology is read off
//! as the image of a small level in a larger one.

use crate::dims::WindowedDim;
use crate::error::{Error, Result};
use crate::groebner::{sort_tvec, ModuleGb, ModuleOrder, TVec, Term};
use crate::linalg::{apply, kernel, quotient_rank, svec_from, SVec};
use crate::poly::{Monomial, MonomialOrder, Polynomial, RingRef};
use crate::rational::Q;
use std::collections::HashMap;
use std::rc::Rc;

/// Sorted `p`-subsets of `0..n`, with a lookup table.
#[derive(Debug, Clone)]
pub(crate) struct FormBasis {
    pub subsets: Vec<Vec<usize>>,
    pub index: HashMap<Vec<usize>, usize>,
}

pub(crate) fn form_basis(n: usize, p: usize) -> FormBasis {
    let mut subsets = Vec::new();
    let mut cur = Vec::new();
    fn rec(start: usize, n: usize, p: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == p {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, p, cur, out);
            cur.pop();
        }
    }
    if p <= n {
        rec(0, n, p, &mut cur, &mut subsets);
    }
    let index = subsets.iter().enumerate().map(|(i, s)| (s.clone(), i)).collect();
    FormBasis { subsets, index }
}

/// `e_i ∧ e_K` as a sign and a sorted subset.
pub(crate) fn wedge_one(i: usize, k: &[usize]) -> Option<(bool, Vec<usize>)> {
    if k.contains(&i) {
        return None;
    }
    let pos = k.iter().filter(|&&j| j < i).count();
    let mut out = k.to_vec();
    out.insert(pos, i);
    Some((pos % 2 == 1, out))
}

/// Relations of `Λ^p Ω^1_{P/J}` inside `P^{C(n,p)}`.
pub(crate) fn form_relations(jgens: &[Polynomial], n: usize, p: usize) -> Vec<TVec> {
    let bp = form_basis(n, p);
    let mut out = Vec::new();
    for f in jgens {
        for k in 0..bp.subsets.len() {
            out.push(f.terms().map(|(m, c)| (Term::new(m.clone(), k), c.clone())).collect());
        }
        if p == 0 {
            continue;
        }
        let grad: Vec<Polynomial> = (0..n).map(|i| f.derivative(i)).collect();
        for kset in form_basis(n, p - 1).subsets {
            let mut v: TVec = Vec::new();
            for (i, g) in grad.iter().enumerate() {
                if let Some((neg, s)) = wedge_one(i, &kset) {
                    let comp = bp.index[&s];
                    for (m, c) in g.terms() {
                        v.push((Term::new(m.clone(), comp), if neg { -c } else { c.clone() }));
                    }
                }
            }
            if !v.is_empty() {
                out.push(v);
            }
        }
    }
    out
}

/// Chart levels: bound on affine weight and pole order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub(crate) struct Level {
    pub d: u32,
    pub pole: u32,
}

impl Level {
    pub fn of(l: u32) -> Level {
        Level { d: l, pole: l }
    }
}

#[derive(Debug)]
pub(crate) struct Piece {
    pub terms: Vec<Term>,
    pub index: HashMap<Term, usize>,
    /// Basis of the Euler-horizontal subspace, in `terms` coordinates.
    pub h: Vec<SVec>,
}

/// What to take cohomology of.
#[derive(Debug, Clone, Copy)]
pub(crate) struct Query {
    pub p_lo: usize,
    pub p_hi: usize,
    pub t: i64,
    pub twist: i64,
}

pub(crate) struct Engine {
    ring: RingRef,
    n: usize,
    proj: Vec<bool>,
    cover: Vec<usize>,
    euler: Vec<Vec<i64>>,
    jgens: Vec<Polynomial>,
    bases: Vec<FormBasis>,
    gbs: HashMap<(usize, Vec<usize>), Rc<ModuleGb>>,
    pieces: HashMap<(usize, Vec<usize>, Level, i64), Rc<Piece>>,
}

impl Engine {
    /// `proj[i]` marks projective variables; the cover uses all of them in
    /// the given order.
    pub fn new(relations: &crate::groebner::Ideal, proj: Vec<bool>, cover: Vec<usize>) -> Engine {
        let ring = relations.ring().clone();
        let n = ring.nvars();
        let jgens = relations.gb().elements();
        let bases = (0..=n).map(|p| form_basis(n, p)).collect();
        Engine { ring, n, proj, cover, euler: Vec::new(), jgens, bases, gbs: HashMap::new(), pieces: HashMap::new() }
    }

    /// Keep only forms of weight zero for each of the given weight vectors.
    pub fn with_euler_weights(mut self, w: Vec<Vec<i64>>) -> Engine {
        self.euler = w;
        self
    }

    pub fn is_affine(&self) -> bool {
        self.cover.is_empty()
    }

    fn ncharts(&self) -> usize {
        self.cover.len().max(1)
    }

    /// Chart subsets of size `q + 1` (positions in the cover).
    fn chart_sets(&self, q: usize) -> Vec<Vec<usize>> {
        if self.is_affine() {
            return if q == 0 { vec![vec![]] } else { vec![] };
        }
        form_basis(self.cover.len(), q + 1).subsets
    }

    fn v_monomial(&self, set: &[usize], power: u32) -> Monomial {
        let mut e = vec![0; self.n];
        for &j in set {
            e[self.cover[j]] += power;
        }
        Monomial(e)
    }

    fn order(&self, p: usize) -> ModuleOrder {
        ModuleOrder::new(MonomialOrder::DegRevLex, self.bases[p].subsets.len())
    }

    /// Gröbner basis of `Ω^p_S` modulo `v_I`-torsion.
    fn gb(&mut self, p: usize, set: &[usize]) -> Rc<ModuleGb> {
        let key = (p, set.to_vec());
        if let Some(g) = self.gbs.get(&key) {
            return g.clone();
        }
        let rank = self.bases[p].subsets.len();
        let rels = form_relations(&self.jgens, self.n, p);
        let gb = if set.is_empty() {
            ModuleGb::from_tvecs(&self.ring, rank, self.order(p), rels)
        } else {
            saturate_module(&self.ring, rank, rels, &Polynomial::monomial(&self.ring, Q::one(), self.v_monomial(set, 1)))
        };
        let gb = Rc::new(gb);
        self.gbs.insert(key, gb.clone());
        gb
    }

    fn pole(&self, q: &Query, p: usize, level: Level) -> u32 {
        if self.is_affine() {
            0
        } else {
            level.pole + (p - q.p_lo) as u32
        }
    }

    /// Basis of the chart piece.
    fn piece(&mut self, p: usize, set: &[usize], level: Level, pole: u32, twist: i64) -> Result<Rc<Piece>> {
        let key = (p, set.to_vec(), Level { d: level.d, pole }, twist);
        if let Some(pc) = self.pieces.get(&key) {
            return Ok(pc.clone());
        }
        let gb = self.gb(p, set);
        let mut terms = Vec::new();
        let projv: Vec<usize> = (0..self.n).filter(|&i| self.proj[i]).collect();
        let affv: Vec<usize> = (0..self.n).filter(|&i| !self.proj[i]).collect();
        for (comp, kset) in self.bases[p].subsets.iter().enumerate() {
            let kp = kset.iter().filter(|&&i| self.proj[i]).count() as i64;
            let kx = kset.len() as i64 - kp;
            let e = pole as i64 * set.len() as i64 + twist - kp;
            let bx = level.d as i64 - kx;
            if e < 0 || bx < 0 {
                continue;
            }
            let ew = &self.euler;
            let kw: Vec<i64> = ew.iter().map(|w| kset.iter().map(|&i| w[i]).sum()).collect();
            for_each_split(self.n, &projv, e as u32, &affv, bx as u32, &mut |exps| {
                for (w, k) in ew.iter().zip(&kw) {
                    let wt: i64 = exps.iter().zip(w).map(|(&a, &b)| a as i64 * b).sum::<i64>() + k;
                    if wt != 0 {
                        return;
                    }
                }
                let t = Term::new(Monomial(exps.to_vec()), comp);
                if gb.is_standard(&t) {
                    terms.push(t);
                }
            });
        }
        let index: HashMap<Term, usize> = terms.iter().cloned().enumerate().map(|(i, t)| (t, i)).collect();
        let h = if p == 0 || set.is_empty() {
            (0..terms.len()).map(|i| vec![(i, Q::one())]).collect()
        } else {
            let low = self.gb(p - 1, set);
            let mut dict: HashMap<Term, usize> = HashMap::new();
            let mut imgs = Vec::with_capacity(terms.len());
            for t in &terms {
                let v = self.contract_euler(p, t);
                let r = low.reduce_tvec(v);
                let sv = svec_from(r.into_iter().map(|(t, c)| {
                    let n = dict.len();
                    (*dict.entry(t).or_insert(n), c)
                }));
                imgs.push(sv);
            }
            kernel(&imgs)
        };
        let pc = Rc::new(Piece { terms, index, h });
        self.pieces.insert(key, pc.clone());
        Ok(pc)
    }

    fn contract_euler(&self, p: usize, t: &Term) -> TVec {
        let kset = &self.bases[p].subsets[t.comp];
        let mut out = Vec::new();
        for (s, &i) in kset.iter().enumerate() {
            if !self.proj[i] {
                continue;
            }
            let mut rest = kset.clone();
            rest.remove(s);
            let comp = self.bases[p - 1].index[&rest];
            let mut m = t.mono.clone();
            m.0[i] += 1;
            out.push((Term::new(m, comp), if s % 2 == 0 { Q::one() } else { -Q::one() }));
        }
        out
    }

    /// Normal form of `v` in the chart module, as coordinates of `target`.
    fn coords(&mut self, p: usize, set: &[usize], v: TVec, target: &Piece) -> Result<SVec> {
        let gb = self.gb(p, set);
        let r = gb.reduce_tvec(v);
        let mut out = Vec::with_capacity(r.len());
        for (t, c) in r {
            match target.index.get(&t) {
                Some(&i) => out.push((i, c)),
                None => return Err(Error::InvalidInput(format!("term outside the filtered piece: {:?}", t))),
            }
        }
        Ok(svec_from(out))
    }

    /// `d(x^a e_K / v^pole)` as a numerator over `v^(pole+1)`.
    fn d_term(&self, p: usize, set: &[usize], pole: u32, t: &Term) -> TVec {
        let kset = &self.bases[p].subsets[t.comp];
        let v = self.v_monomial(set, 1);
        let mut out = Vec::new();
        for i in 0..self.n {
            let a = t.mono.0[i];
            if a == 0 {
                continue;
            }
            if let Some((neg, s)) = wedge_one(i, kset) {
                let mut m = t.mono.clone();
                m.0[i] -= 1;
                let m = m.mul(&v);
                let c = Q::from_int(a as i64);
                out.push((Term::new(m, self.bases[p + 1].index[&s]), if neg { -c } else { c }));
            }
        }
        if !set.is_empty() && pole > 0 {
            for &j in set {
                let vj = self.cover[j];
                if let Some((neg, s)) = wedge_one(vj, kset) {
                    let mut m = t.mono.mul(&v);
                    m.0[vj] -= 1;
                    let c = -Q::from_int(pole as i64);
                    out.push((Term::new(m, self.bases[p + 1].index[&s]), if neg { -c } else { c }));
                }
            }
        }
        out
    }

    /// Blocks `(p, chart set)` in total degree `t`.
    fn blocks(&self, q: &Query, t: i64) -> Vec<(usize, Vec<usize>)> {
        let mut out = Vec::new();
        for p in q.p_lo..=q.p_hi.min(self.n) {
            let qq = t - p as i64;
            if qq < 0 || qq as usize >= self.ncharts() {
                continue;
            }
            for s in self.chart_sets(qq as usize) {
                out.push((p, s));
            }
        }
        out
    }

    fn total(&mut self, q: &Query, t: i64, level: Level) -> Result<Vec<(usize, Vec<usize>, Rc<Piece>, usize)>> {
        let mut out = Vec::new();
        let mut off = 0;
        for (p, s) in self.blocks(q, t) {
            let pole = self.pole(q, p, level);
            let pc = self.piece(p, &s, level, pole, q.twist)?;
            let len = pc.terms.len();
            out.push((p, s, pc, off));
            off += len;
        }
        Ok(out)
    }

    /// Images under the total differential of a basis of `C^t`, in the
    /// ambient coordinates of `C^{t+1}`. The basis is the horizontal one,
    /// or every ambient term when `ambient` is set.
    fn differential(&mut self, q: &Query, t: i64, level: Level, ambient: bool) -> Result<Vec<SVec>> {
        let src = self.total(q, t, level)?;
        let dst = self.total(q, t + 1, level)?;
        let find = |p: usize, s: &[usize]| {
            dst.iter().find(|(pp, ss, _, _)| *pp == p && ss == s).map(|(_, _, pc, off)| (pc.clone(), *off))
        };
        let mut out = Vec::new();
        for (p, s, pc, _) in &src {
            let p = *p;
            let qdeg = s.len().saturating_sub(1);
            let pole = self.pole(q, p, level);
            let mut term_imgs: Vec<SVec> = Vec::with_capacity(pc.terms.len());
            for t0 in &pc.terms {
                let mut acc: Vec<(usize, Q)> = Vec::new();
                if !self.is_affine() {
                    for j in 0..self.cover.len() {
                        if s.contains(&j) {
                            continue;
                        }
                        let pos = s.iter().filter(|&&x| x < j).count();
                        let mut big = s.clone();
                        big.insert(pos, j);
                        let Some((tpc, toff)) = find(p, &big) else { continue };
                        let m = t0.mono.mul(&self.v_monomial(&[j], pole));
                        let sign = if pos % 2 == 0 { Q::one() } else { -Q::one() };
                        let c = self.coords(p, &big, vec![(Term::new(m, t0.comp), sign)], &tpc)?;
                        acc.extend(c.into_iter().map(|(i, x)| (i + toff, x)));
                    }
                }
                if p < q.p_hi && p < self.n {
                    if let Some((tpc, toff)) = find(p + 1, s) {
                        let mut v = self.d_term(p, s, pole, t0);
                        if qdeg % 2 == 1 {
                            for (_, c) in v.iter_mut() {
                                *c = -&*c;
                            }
                        }
                        let c = self.coords(p + 1, s, v, &tpc)?;
                        acc.extend(c.into_iter().map(|(i, x)| (i + toff, x)));
                    }
                }
                term_imgs.push(svec_from(acc));
            }
            if ambient {
                out.extend(term_imgs);
            } else {
                for h in &pc.h {
                    out.push(apply(&term_imgs, h));
                }
            }
        }
        Ok(out)
    }

    /// Horizontal basis of `C^t` in ambient coordinates.
    fn horizontal(&mut self, q: &Query, t: i64, level: Level) -> Result<Vec<SVec>> {
        let src = self.total(q, t, level)?;
        let mut out = Vec::new();
        for (_, _, pc, off) in &src {
            for h in &pc.h {
                out.push(h.iter().map(|(i, c)| (i + off, c.clone())).collect());
            }
        }
        Ok(out)
    }

    /// Map ambient coordinates of `C^t` at `small` into `big`.
    fn include(&mut self, q: &Query, t: i64, small: Level, big: Level, v: &SVec) -> Result<SVec> {
        let src = self.total(q, t, small)?;
        let dst = self.total(q, t, big)?;
        let mut acc = Vec::new();
        for ((p, s, pc, off), (_, _, tpc, toff)) in src.iter().zip(dst.iter()) {
            let extra = self.pole(q, *p, big) - self.pole(q, *p, small);
            let vm = self.v_monomial(s, extra);
            let tv: TVec = v
                .iter()
                .filter(|(i, _)| *i >= *off && *i < off + pc.terms.len())
                .map(|(i, c)| {
                    let t0 = &pc.terms[i - off];
                    (Term::new(t0.mono.mul(&vm), t0.comp), c.clone())
                })
                .collect();
            if tv.is_empty() {
                continue;
            }
            let c = self.coords(*p, s, tv, tpc)?;
            acc.extend(c.into_iter().map(|(i, x)| (i + toff, x)));
        }
        Ok(svec_from(acc))
    }

    /// Dimension of `H^t` read as the image of level `l` in level `top`,
    /// for `l = 1..top`.
    pub fn cohomology(&mut self, q: Query, top: u32, run: usize) -> Result<WindowedDim> {
        let big = Level::of(top);
        let b = self.differential(&q, q.t - 1, big, false)?;
        let mut hist = Vec::new();
        for l in 1..top {
            let small = Level::of(l);
            let hb = self.horizontal(&q, q.t, small)?;
            let dz = self.differential(&q, q.t, small, false)?;
            let mut z = Vec::new();
            for k in kernel(&dz) {
                let amb = apply(&hb, &k);
                z.push(self.include(&q, q.t, small, big, &amb)?);
            }
            hist.push(quotient_rank(&z, &b) as u64);
        }
        Ok(WindowedDim::from_history(hist, run))
    }

    /// Rank of the differential out of `C^t` on the horizontal part.
    pub fn rank_of_d(&mut self, q: Query, t: i64, level: Level) -> Result<usize> {
        Ok(crate::linalg::rank(&self.differential(&q, t, level, false)?))
    }

    /// The ambient complex at one level, for total degrees in `window`.
    pub fn complex(&mut self, q: Query, level: Level, window: (i64, i64)) -> Result<crate::differentials::TruncatedComplex> {
        let mut dims = Vec::new();
        let mut differentials = Vec::new();
        for t in window.0..=window.1 {
            let src = self.total(&q, t, level)?;
            dims.push(src.iter().map(|(_, _, pc, _)| pc.terms.len()).sum());
            differentials.push(self.differential(&q, t, level, true)?);
        }
        Ok(crate::differentials::TruncatedComplex { dims, differentials, degree_window: window, truncation_bound: level.d })
    }

    /// Dimensions of the horizontal parts of `C^{t-1}, C^t, C^{t+1}`.
    pub fn sizes(&mut self, q: Query, level: Level) -> Result<[usize; 3]> {
        let mut out = [0; 3];
        for (k, t) in (q.t - 1..=q.t + 1).enumerate() {
            out[k] = self.horizontal(&q, t, level)?.len();
        }
        Ok(out)
    }
}

/// Enumerate exponent vectors with degree exactly `e` in `projv` and at
/// most `bx` in `affv`.
fn for_each_split(n: usize, projv: &[usize], e: u32, affv: &[usize], bx: u32, f: &mut dyn FnMut(&[u32])) {
    fn exact(vars: &[usize], k: usize, left: u32, exps: &mut Vec<u32>, then: &mut dyn FnMut(&mut Vec<u32>)) {
        if k == vars.len() {
            if left == 0 {
                then(exps);
            }
            return;
        }
        if k + 1 == vars.len() {
            exps[vars[k]] = left;
            then(exps);
            exps[vars[k]] = 0;
            return;
        }
        for a in 0..=left {
            exps[vars[k]] = a;
            exact(vars, k + 1, left - a, exps, then);
        }
        exps[vars[k]] = 0;
    }
    fn upto(vars: &[usize], k: usize, left: u32, exps: &mut Vec<u32>, f: &mut dyn FnMut(&[u32])) {
        if k == vars.len() {
            f(exps);
            return;
        }
        for a in 0..=left {
            exps[vars[k]] = a;
            upto(vars, k + 1, left - a, exps, f);
        }
        exps[vars[k]] = 0;
    }
    let mut exps = vec![0u32; n];
    exact(projv, 0, e, &mut exps, &mut |ex: &mut Vec<u32>| {
        let mut local = ex.clone();
        upto(affv, 0, bx, &mut local, f);
    });
}

/// `N : f^∞` for a submodule of `P^rank`, via an auxiliary variable.
pub(crate) fn saturate_module(ring: &RingRef, rank: usize, rels: Vec<TVec>, f: &Polynomial) -> ModuleGb {
    let n = ring.nvars();
    let big = ring.extend(&["y_sat"]);
    let lift = |m: &Monomial| -> Monomial {
        let mut e = m.0.clone();
        e.push(0);
        Monomial(e)
    };
    let mut gens: Vec<TVec> =
        rels.iter().map(|r| r.iter().map(|(t, c)| (Term::new(lift(&t.mono), t.comp), c.clone())).collect()).collect();
    for comp in 0..rank {
        let mut g: TVec = vec![(Term::new(Monomial::one(n + 1), comp), Q::one())];
        for (m, c) in f.terms() {
            let mut e = lift(m);
            e.0[n] = 1;
            g.push((Term::new(e, comp), -c));
        }
        gens.push(g);
    }
    let ord = ModuleOrder::new(MonomialOrder::Elimination { block: vec![n] }, rank);
    let gens = gens.into_iter().map(|g| sort_tvec(&ord, g)).collect();
    let gb = ModuleGb::from_tvecs(&big, rank, ord, gens);
    let ord = ModuleOrder::new(MonomialOrder::DegRevLex, rank);
    let kept: Vec<TVec> = gb
        .tvecs()
        .iter()
        .filter(|g| g.iter().all(|(t, _)| t.mono.0[n] == 0))
        .map(|g| {
            let v = g.iter().map(|(t, c)| (Term::new(Monomial(t.mono.0[..n].to_vec()), t.comp), c.clone())).collect();
            sort_tvec(&ord, v)
        })
        .collect();
    ModuleGb::from_tvecs(ring, rank, ord, kept)
}
