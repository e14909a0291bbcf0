//! Cyclic homology of finite-dimensional algebras from the (b, B)
//! bicomplexes, and Hodge components from de Rham data.

mod hodge;

pub use hodge::{hp_six_term, michler_hc, projective_hc_hodge, smooth_hodge, HodgeTable};

use crate::error::{Error, Result};
use crate::groebner::Ideal;
use crate::poly::{Monomial, MonomialOrder, Polynomial};
use crate::linalg::{apply, kernel, quotient_rank, rank, svec_from, SVec};
use crate::rational::Q;
use rand::Rng;
use std::collections::BTreeMap;
use std::fmt;

/// Which of the three theories.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Theory {
    HC,
    HN,
    HP,
}

impl fmt::Display for Theory {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self)
    }
}

impl std::str::FromStr for Theory {
    type Err = Error;
    fn from_str(s: &str) -> Result<Theory> {
        match s.to_ascii_uppercase().as_str() {
            "HC" => Ok(Theory::HC),
            "HN" => Ok(Theory::HN),
            "HP" => Ok(Theory::HP),
            _ => Err(Error::Parse { pos: 0, msg: format!("unknown theory {s}") }),
        }
    }
}

/// A finite-dimensional unital associative Q-algebra given by structure
/// constants: `e_i e_j = Σ_k c[i][j][k] e_k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FDAlgebra {
    pub basis_labels: Vec<String>,
    pub structure: Vec<Vec<Vec<Q>>>,
    pub unit: Vec<Q>,
}

impl FDAlgebra {
    /// Checks associativity and the unit laws on all basis elements.
    pub fn new(basis_labels: Vec<String>, structure: Vec<Vec<Vec<Q>>>, unit: Vec<Q>) -> Result<FDAlgebra> {
        let d = basis_labels.len();
        let shape_ok = structure.len() == d
            && structure.iter().all(|r| r.len() == d && r.iter().all(|v| v.len() == d))
            && unit.len() == d;
        if !shape_ok {
            return Err(Error::InvalidInput("structure constants do not match the basis".into()));
        }
        let a = FDAlgebra { basis_labels, structure, unit };
        if !a.is_associative() {
            return Err(Error::InvalidInput("multiplication is not associative".into()));
        }
        if !a.unit_laws_hold() {
            return Err(Error::InvalidInput("the unit vector is not a two-sided unit".into()));
        }
        Ok(a)
    }

    pub fn dim(&self) -> usize {
        self.basis_labels.len()
    }

    pub fn ground_field() -> FDAlgebra {
        FDAlgebra::new(vec!["1".into()], vec![vec![vec![Q::one()]]], vec![Q::one()]).unwrap()
    }

    /// `k[e]/(e² - α - βe)`.
    pub fn quadratic(alpha: Q, beta: Q) -> FDAlgebra {
        let z = Q::zero;
        let o = Q::one;
        let structure = vec![vec![vec![o(), z()], vec![z(), o()]], vec![vec![z(), o()], vec![alpha, beta]]];
        FDAlgebra::new(vec!["1".into(), "e".into()], structure, vec![o(), z()]).unwrap()
    }

    /// `k[x]/(x²)`.
    pub fn dual_numbers() -> FDAlgebra {
        FDAlgebra::quadratic(Q::zero(), Q::zero())
    }

    /// `k[x]/(x^d)` with basis `1, x, ..., x^{d-1}`.
    pub fn truncated_polynomial(d: usize) -> FDAlgebra {
        let mut c = vec![vec![vec![Q::zero(); d]; d]; d];
        for i in 0..d {
            for j in 0..d {
                if i + j < d {
                    c[i][j][i + j] = Q::one();
                }
            }
        }
        let mut unit = vec![Q::zero(); d];
        unit[0] = Q::one();
        let labels = (0..d).map(|i| if i == 0 { "1".into() } else { format!("x^{i}") }).collect();
        FDAlgebra::new(labels, c, unit).unwrap()
    }

    /// `k[x]/I` for a zero-dimensional proper ideal, on its standard
    /// monomial basis (degrevlex), `1` first.
    pub fn from_quotient(i: &Ideal) -> Result<FDAlgebra> {
        if i.is_unit() {
            return Err(Error::InvalidInput("the quotient is zero".into()));
        }
        if i.krull_dimension()? != 0 {
            return Err(Error::InvalidInput("the quotient is not finite-dimensional".into()));
        }
        let ring = i.ring().clone();
        let n = ring.nvars();
        let gb = i.gb();
        let mut basis = vec![Monomial::one(n)];
        let mut frontier = basis.clone();
        while !frontier.is_empty() {
            let mut next = Vec::new();
            for m in &frontier {
                for v in 0..n {
                    let c = m.mul(&Monomial::var(n, v));
                    if gb.is_standard(&c) && !next.contains(&c) {
                        next.push(c);
                    }
                }
            }
            next.sort_by(|a, b| MonomialOrder::DegRevLex.cmp(a, b).reverse());
            basis.extend(next.iter().cloned());
            frontier = next;
        }
        let d = basis.len();
        if d > MAX_CHAIN_DIM {
            return Err(Error::InvalidInput(format!("quotient of dimension {d} is too large")));
        }
        let index: BTreeMap<&Monomial, usize> = basis.iter().enumerate().map(|(k, m)| (m, k)).collect();
        let mut c = vec![vec![vec![Q::zero(); d]; d]; d];
        for a in 0..d {
            for b in 0..d {
                let nf = gb.normal_form(&Polynomial::monomial(&ring, Q::one(), basis[a].mul(&basis[b])))?;
                for (m, q) in nf.terms() {
                    c[a][b][index[m]] = q.clone();
                }
            }
        }
        let mut unit = vec![Q::zero(); d];
        unit[0] = Q::one();
        let labels = basis.iter().map(|m| Polynomial::monomial(&ring, Q::one(), m.clone()).to_string()).collect();
        FDAlgebra::new(labels, c, unit)
    }

    /// A random 2-dimensional commutative algebra `k[e]/(e² - α - βe)`,
    /// presented in a random basis so the unit is not a basis vector.
    pub fn random_two_dimensional<R: Rng>(rng: &mut R) -> FDAlgebra {
        let a = FDAlgebra::quadratic(Q::from_int(rng.gen_range(-3..=3)), Q::from_int(rng.gen_range(-3..=3)));
        loop {
            let m: Vec<Vec<Q>> = (0..2).map(|_| (0..2).map(|_| Q::from_int(rng.gen_range(-2..=2))).collect()).collect();
            let det = &(&m[0][0] * &m[1][1]) - &(&m[0][1] * &m[1][0]);
            if !det.is_zero() {
                return a.change_basis(&[m[0].clone(), m[1].clone()]).unwrap();
            }
        }
    }

    /// Multiply coordinate vectors.
    pub fn mul(&self, x: &[Q], y: &[Q]) -> Vec<Q> {
        let d = self.dim();
        let mut out = vec![Q::zero(); d];
        for i in 0..d {
            if x[i].is_zero() {
                continue;
            }
            for j in 0..d {
                if y[j].is_zero() {
                    continue;
                }
                let c = &x[i] * &y[j];
                for (k, s) in self.structure[i][j].iter().enumerate() {
                    if !s.is_zero() {
                        out[k] += &(&c * s);
                    }
                }
            }
        }
        out
    }

    fn basis_vec(&self, i: usize) -> Vec<Q> {
        let mut v = vec![Q::zero(); self.dim()];
        v[i] = Q::one();
        v
    }

    pub fn is_associative(&self) -> bool {
        let d = self.dim();
        for i in 0..d {
            for j in 0..d {
                let ij = self.mul(&self.basis_vec(i), &self.basis_vec(j));
                for k in 0..d {
                    let jk = self.mul(&self.basis_vec(j), &self.basis_vec(k));
                    if self.mul(&ij, &self.basis_vec(k)) != self.mul(&self.basis_vec(i), &jk) {
                        return false;
                    }
                }
            }
        }
        true
    }

    pub fn unit_laws_hold(&self) -> bool {
        (0..self.dim()).all(|i| {
            let e = self.basis_vec(i);
            self.mul(&self.unit, &e) == e && self.mul(&e, &self.unit) == e
        })
    }

    pub fn is_commutative(&self) -> bool {
        let d = self.dim();
        (0..d).all(|i| (0..d).all(|j| self.structure[i][j] == self.structure[j][i]))
    }

    /// Re-express in the basis whose vectors have old coordinates `new[i]`.
    pub fn change_basis(&self, new: &[Vec<Q>]) -> Result<FDAlgebra> {
        let d = self.dim();
        let inv = invert(new).ok_or_else(|| Error::InvalidInput("basis change is singular".into()))?;
        // old coordinates v  ->  new coordinates v·inv
        let to_new = |v: &[Q]| -> Vec<Q> {
            (0..d).map(|j| (0..d).fold(Q::zero(), |acc, i| &acc + &(&v[i] * &inv[i][j]))).collect()
        };
        let structure = (0..d).map(|a| (0..d).map(|b| to_new(&self.mul(&new[a], &new[b]))).collect()).collect();
        let labels = (0..d).map(|i| format!("f{i}")).collect();
        FDAlgebra::new(labels, structure, to_new(&self.unit))
    }

    /// The same algebra in a basis whose first vector is the unit.
    pub fn unit_first(&self) -> FDAlgebra {
        let d = self.dim();
        if self.unit == self.basis_vec(0) {
            return self.clone();
        }
        let p = self.unit.iter().position(|c| !c.is_zero()).expect("unit is nonzero");
        let mut new = vec![self.unit.clone()];
        new.extend((0..d).filter(|&i| i != p).map(|i| self.basis_vec(i)));
        self.change_basis(&new).expect("unit completes to a basis")
    }
}

fn invert(m: &[Vec<Q>]) -> Option<Vec<Vec<Q>>> {
    let d = m.len();
    let mut a: Vec<Vec<Q>> = m
        .iter()
        .enumerate()
        .map(|(i, r)| {
            let mut row = r.clone();
            row.extend((0..d).map(|j| if i == j { Q::one() } else { Q::zero() }));
            row
        })
        .collect();
    for c in 0..d {
        let p = (c..d).find(|&r| !a[r][c].is_zero())?;
        a.swap(c, p);
        let inv = a[c][c].inv();
        for x in a[c].iter_mut() {
            *x = &*x * &inv;
        }
        for r in 0..d {
            if r != c && !a[r][c].is_zero() {
                let f = a[r][c].clone();
                let pr = a[c].clone();
                for (x, y) in a[r].iter_mut().zip(&pr) {
                    *x -= &(y * &f);
                }
            }
        }
    }
    Some(a.into_iter().map(|r| r[d..].to_vec()).collect())
}

/// Largest chain group the bicomplex code will materialize.
pub const MAX_CHAIN_DIM: usize = 60_000;

/// The mixed complex `(C, b, B)` of an algebra, normalized
/// (`A ⊗ Ā^{⊗m}`) or not (`A^{⊗(m+1)}`).
#[derive(Debug, Clone)]
pub struct MixedComplex {
    alg: FDAlgebra,
    normalized: bool,
    /// `b_m : C_m → C_{m-1}` as column images.
    b: Vec<Vec<SVec>>,
    /// `B_m : C_m → C_{m+1}`.
    big_b: Vec<Vec<SVec>>,
}

impl MixedComplex {
    /// Materialize `C_0..=C_{top}` and check `b² = B² = bB + Bb = 0`.
    pub fn new(alg: &FDAlgebra, normalized: bool, top: usize) -> Result<MixedComplex> {
        let alg = alg.unit_first();
        let mut mc = MixedComplex { alg, normalized, b: Vec::new(), big_b: Vec::new() };
        for m in 0..=top + 1 {
            if mc.dim(m as i64) > MAX_CHAIN_DIM {
                return Err(Error::Unsupported(format!("chain group C_{m} has dimension {}", mc.dim(m as i64))));
            }
        }
        for m in 0..=top + 1 {
            let b = (0..mc.dim(m as i64)).map(|i| mc.b_image(m, i)).collect();
            mc.b.push(b);
        }
        for m in 0..=top {
            let bb = (0..mc.dim(m as i64)).map(|i| mc.big_b_image(m, i)).collect();
            mc.big_b.push(bb);
        }
        mc.check_identities()?;
        Ok(mc)
    }

    pub fn top(&self) -> usize {
        self.big_b.len() - 1
    }

    pub fn algebra(&self) -> &FDAlgebra {
        &self.alg
    }

    fn width(&self) -> usize {
        let d = self.alg.dim();
        if self.normalized {
            d - 1
        } else {
            d
        }
    }

    fn off(&self) -> usize {
        usize::from(self.normalized)
    }

    pub fn dim(&self, m: i64) -> usize {
        if m < 0 {
            return 0;
        }
        self.alg.dim() * self.width().pow(m as u32)
    }

    fn decode(&self, m: usize, mut idx: usize) -> Vec<usize> {
        let d = self.alg.dim();
        let w = self.width();
        let mut t = vec![idx % d];
        idx /= d;
        for _ in 0..m {
            t.push(idx % w + self.off());
            idx /= w;
        }
        t
    }

    fn encode(&self, t: &[usize]) -> Option<usize> {
        let d = self.alg.dim();
        let w = self.width();
        let mut idx = 0;
        for &x in t[1..].iter().rev() {
            if x < self.off() {
                return None;
            }
            idx = idx * w + (x - self.off());
        }
        Some(idx * d + t[0])
    }

    fn prod(&self, i: usize, j: usize) -> &[Q] {
        &self.alg.structure[i][j]
    }

    fn b_image(&self, m: usize, idx: usize) -> SVec {
        if m == 0 {
            return Vec::new();
        }
        let t = self.decode(m, idx);
        let mut out = Vec::new();
        for i in 0..m {
            let sign = if i % 2 == 0 { Q::one() } else { -Q::one() };
            for (k, c) in self.prod(t[i], t[i + 1]).iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                let mut u = t[..i].to_vec();
                u.push(k);
                u.extend_from_slice(&t[i + 2..]);
                if let Some(j) = self.encode(&u) {
                    out.push((j, &sign * c));
                }
            }
        }
        let sign = if m.is_multiple_of(2) { Q::one() } else { -Q::one() };
        for (k, c) in self.prod(t[m], t[0]).iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mut u = vec![k];
            u.extend_from_slice(&t[1..m]);
            if let Some(j) = self.encode(&u) {
                out.push((j, &sign * c));
            }
        }
        svec_from(out)
    }

    fn big_b_image(&self, m: usize, idx: usize) -> SVec {
        let t = self.decode(m, idx);
        if self.normalized {
            // Σ_i (-1)^{mi} (1, a_i, ..., a_m, a_0, ..., a_{i-1})
            let mut out = Vec::new();
            for i in 0..=m {
                let mut u = vec![0];
                u.extend_from_slice(&t[i..]);
                u.extend_from_slice(&t[..i]);
                if let Some(j) = self.encode(&u) {
                    let s = if (m * i).is_multiple_of(2) { Q::one() } else { -Q::one() };
                    out.push((j, s));
                }
            }
            return svec_from(out);
        }
        // (1 - t) s N
        let rot = |u: &[usize]| -> (Vec<usize>, bool) {
            let n = u.len() - 1;
            let mut v = vec![u[n]];
            v.extend_from_slice(&u[..n]);
            (v, n % 2 == 1)
        };
        let mut out = Vec::new();
        let mut cur = t.clone();
        let mut neg = false;
        for _ in 0..=m {
            let mut s = vec![0];
            s.extend_from_slice(&cur);
            let c = if neg { -Q::one() } else { Q::one() };
            let (ts, tneg) = rot(&s);
            out.push((self.encode(&s).unwrap(), c.clone()));
            out.push((self.encode(&ts).unwrap(), if tneg { c } else { -c }));
            let (next, rneg) = rot(&cur);
            cur = next;
            neg ^= rneg;
        }
        svec_from(out)
    }

    fn check_identities(&self) -> Result<()> {
        let top = self.top();
        for m in 0..=top {
            for i in 0..self.dim(m as i64) {
                let e = vec![(i, Q::one())];
                if m >= 1 && !apply(&self.b[m - 1], &self.b[m][i]).is_empty() {
                    return Err(Error::InvalidInput(format!("b² ≠ 0 on C_{m}")));
                }
                if m < top && !apply(&self.big_b[m + 1], &self.big_b[m][i]).is_empty() {
                    return Err(Error::InvalidInput(format!("B² ≠ 0 on C_{m}")));
                }
                let bb = apply(&self.b[m + 1], &apply(&self.big_b[m], &e));
                let bb2 = if m >= 1 { apply(&self.big_b[m - 1], &self.b[m][i]) } else { Vec::new() };
                if !crate::linalg::svec_add_scaled(&bb, &Q::one(), &bb2).is_empty() {
                    return Err(Error::InvalidInput(format!("bB + Bb ≠ 0 on C_{m}")));
                }
            }
        }
        Ok(())
    }

    pub fn b(&self, m: usize) -> &[SVec] {
        &self.b[m]
    }

    pub fn big_b(&self, m: usize) -> &[SVec] {
        &self.big_b[m]
    }
}

/// The total complex of a band of columns of the (b, B) bicomplex. Column
/// `p` in total degree `n` holds `C_{n-2p}`; `B` moves from column `p` to
/// column `p - 1`.
#[derive(Debug, Clone, Copy)]
struct Band {
    lo: Option<i64>,
    hi: Option<i64>,
}

impl Band {
    fn of(theory: Theory, truncation: usize) -> Band {
        let t = truncation as i64;
        match theory {
            Theory::HC => Band { lo: Some(0), hi: None },
            Theory::HN => Band { lo: Some(-t), hi: Some(0) },
            Theory::HP => Band { lo: Some(-t), hi: None },
        }
    }

    /// `(column, m, offset)` for each nonzero block of degree `n`.
    fn blocks(&self, mc: &MixedComplex, n: i64) -> Vec<(i64, usize, usize)> {
        let lo = self.lo.unwrap_or(i64::MIN / 4);
        let hi = self.hi.unwrap_or(i64::MAX / 4).min(n.div_euclid(2));
        let mut out = Vec::new();
        let mut off = 0;
        let mut p = lo.max(-(1 << 20));
        while p <= hi {
            let m = n - 2 * p;
            if m >= 0 {
                out.push((p, m as usize, off));
                off += mc.dim(m);
            }
            p += 1;
        }
        out
    }

    fn dim(&self, mc: &MixedComplex, n: i64) -> usize {
        self.blocks(mc, n).iter().map(|(_, m, _)| mc.dim(*m as i64)).sum()
    }

    fn max_m(&self, n: i64) -> i64 {
        match self.lo {
            Some(lo) => n - 2 * lo,
            None => n,
        }
    }

    /// `D_n : Tot_n → Tot_{n-1}` as column images.
    fn d(&self, mc: &MixedComplex, n: i64) -> Vec<SVec> {
        let target: BTreeMap<i64, (usize, usize)> = self.blocks(mc, n - 1).into_iter().map(|(p, m, o)| (p, (m, o))).collect();
        let mut cols = Vec::new();
        for (p, m, _) in self.blocks(mc, n) {
            for i in 0..mc.dim(m as i64) {
                let mut v = Vec::new();
                if let Some((tm, o)) = target.get(&p) {
                    debug_assert_eq!(*tm + 1, m);
                    v.extend(mc.b(m)[i].iter().map(|(j, c)| (j + o, c.clone())));
                }
                if let Some((tm, o)) = target.get(&(p - 1)) {
                    debug_assert_eq!(*tm, m + 1);
                    v.extend(mc.big_b(m)[i].iter().map(|(j, c)| (j + o, c.clone())));
                }
                cols.push(svec_from(v));
            }
        }
        cols
    }
}

/// `H_n` of a band, from cycles and boundaries.
fn band_homology(band: Band, mc: &MixedComplex, n: i64) -> u64 {
    let dim = band.dim(mc, n);
    let r_out = rank(&band.d(mc, n));
    let r_in = rank(&band.d(mc, n + 1));
    (dim - r_out - r_in) as u64
}

fn mixed_for(alg: &FDAlgebra, band: Band, range: (i64, i64)) -> Result<MixedComplex> {
    let top = band.max_m(range.1 + 1).max(0) as usize;
    MixedComplex::new(alg, true, top)
}

/// `dim HC_n`, `HN_n` or `HP_n` for `n` in `range`. Truncated theories are
/// recomputed with two more columns and must agree.
pub fn bicomplex_homology(alg: &FDAlgebra, theory: Theory, range: (i64, i64), truncation: usize) -> Result<BTreeMap<i64, u64>> {
    let band = Band::of(theory, truncation);
    let mc = mixed_for(alg, Band::of(theory, truncation + 2), range)?;
    let mut out = BTreeMap::new();
    for n in range.0..=range.1 {
        let h = band_homology(band, &mc, n);
        if theory != Theory::HC {
            let h2 = band_homology(Band::of(theory, truncation + 2), &mc, n);
            if h != h2 {
                return Err(Error::NotStabilized(format!(
                    "{theory}_{n}: truncation {truncation} gives {h}, truncation {} gives {h2}",
                    truncation + 2
                )));
            }
        }
        out.insert(n, h);
    }
    Ok(out)
}

/// `HC` from the unnormalized complex; used to cross-check the normalized
/// one.
pub fn unnormalized_hc(alg: &FDAlgebra, range: (i64, i64)) -> Result<BTreeMap<i64, u64>> {
    let band = Band::of(Theory::HC, 0);
    let mc = MixedComplex::new(alg, false, (range.1 + 1).max(0) as usize)?;
    Ok((range.0..=range.1).map(|n| (n, band_homology(band, &mc, n))).collect())
}

/// Map between two bands on `Tot` in one degree, as column images.
fn band_map(mc: &MixedComplex, src: Band, n: i64, dst: Band, dn: i64, f: impl Fn(i64, usize, usize) -> Option<(i64, SVec)>) -> Vec<SVec> {
    let target: BTreeMap<i64, usize> = dst.blocks(mc, dn).into_iter().map(|(p, _, o)| (p, o)).collect();
    let mut cols = Vec::new();
    for (p, m, _) in src.blocks(mc, n) {
        for i in 0..mc.dim(m as i64) {
            let v = match f(p, m, i) {
                Some((q, v)) => match target.get(&q) {
                    Some(o) => v.into_iter().map(|(j, c)| (j + o, c)).collect(),
                    None => Vec::new(),
                },
                None => Vec::new(),
            };
            cols.push(v);
        }
    }
    cols
}

struct Node {
    cycles: Vec<SVec>,
    boundaries: Vec<SVec>,
}

impl Node {
    fn of(band: Band, mc: &MixedComplex, n: i64) -> Node {
        let dn = band.d(mc, n);
        let cycles = kernel(&dn);
        let boundaries = band.d(mc, n + 1);
        Node { cycles, boundaries }
    }

    fn dim(&self) -> usize {
        quotient_rank(&self.cycles, &self.boundaries)
    }
}

/// Rank of the map induced on homology.
fn induced_rank(map: &[SVec], src: &Node, dst: &Node) -> usize {
    let imgs: Vec<SVec> = src.cycles.iter().map(|z| apply(map, z)).collect();
    quotient_rank(&imgs, &dst.boundaries)
}

/// Exactness of `A → B → C` on homology: `g∘f = 0` and
/// `rank f + rank g = dim H(B)`.
fn exact_at(f: &[SVec], g: &[SVec], a: &Node, b: &Node, c: &Node) -> bool {
    let gf: Vec<SVec> = a.cycles.iter().map(|z| apply(g, &apply(f, z))).collect();
    quotient_rank(&gf, &c.boundaries) == 0 && induced_rank(f, a, b) + induced_rank(g, b, c) == b.dim()
}

/// Check the SBI sequence `HN_n → HP_n → HC_{n-2} → HN_{n-1}` on actual
/// maps of total complexes for every `n` in `window`, and the alternating
/// sums of its dimensions.
pub fn sbi_dimension_check(alg: &FDAlgebra, window: (i64, i64), truncation: usize) -> Result<bool> {
    let (nb, pb, cb) = (Band::of(Theory::HN, truncation), Band::of(Theory::HP, truncation), Band::of(Theory::HC, 0));
    let mc = MixedComplex::new(alg, true, pb.max_m(window.1 + 2).max(0) as usize)?;
    // I: inclusion; S: drop columns <= 0 and shift; ∂: B on column 0
    let i_map = |n: i64| band_map(&mc, nb, n, pb, n, |p, _, i| Some((p, vec![(i, Q::one())])));
    let s_map = |n: i64| band_map(&mc, pb, n, cb, n - 2, |p, _, i| if p >= 1 { Some((p - 1, vec![(i, Q::one())])) } else { None });
    let d_map = |n: i64| band_map(&mc, cb, n - 2, nb, n - 1, |p, m, i| if p == 0 { Some((0, mc.big_b(m)[i].clone())) } else { None });
    let mut dims = Vec::new();
    for n in (window.0..=window.1).rev() {
        let hn = Node::of(nb, &mc, n);
        let hp = Node::of(pb, &mc, n);
        let hc = Node::of(cb, &mc, n - 2);
        let hn1 = Node::of(nb, &mc, n - 1);
        let hp1 = Node::of(pb, &mc, n - 1);
        let hc_prev = Node::of(cb, &mc, n - 1);
        let (i0, s0, d0, i1) = (i_map(n), s_map(n), d_map(n), i_map(n - 1));
        let d_prev = d_map(n + 1);
        // exact at HN_n (from HC_{n-1}), HP_n, HC_{n-2}, HN_{n-1}
        if !exact_at(&d_prev, &i0, &hc_prev, &hn, &hp)
            || !exact_at(&i0, &s0, &hn, &hp, &hc)
            || !exact_at(&s0, &d0, &hp, &hc, &hn1)
            || !exact_at(&d0, &i1, &hc, &hn1, &hp1)
        {
            return Ok(false);
        }
        dims.push(hn.dim() as u64);
        dims.push(hp.dim() as u64);
        dims.push(hc.dim() as u64);
    }
    Ok(alternating_sums_vanish(&dims))
}

/// Every maximal zero-flanked stretch has alternating sum zero.
fn alternating_sums_vanish(dims: &[u64]) -> bool {
    let zeros: Vec<usize> = (0..dims.len()).filter(|&k| dims[k] == 0).collect();
    zeros.windows(2).all(|w| {
        let s: i64 = dims[w[0] + 1..w[1]].iter().enumerate().map(|(j, &d)| if j % 2 == 0 { d as i64 } else { -(d as i64) }).sum();
        s == 0
    })
}

#[cfg(test)]
mod tests;
