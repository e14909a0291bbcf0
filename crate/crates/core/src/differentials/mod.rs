//! Kähler differentials, torsion, and windowed de Rham and Čech cohomology.

pub(crate) mod engine;

use crate::algebra::GradedAlgebraPresentation;
use crate::dims::{Bounds, WindowedDim};
use crate::error::{Error, Result};
use crate::geometry::{is_smooth, proj_charts, singular_locus};
use crate::groebner::{ModuleGb, ModuleOrder, TVec, Term};
use crate::linalg::{kernel, rank, SVec};
use crate::poly::{MonomialOrder, Polynomial};
use crate::rational::Q;
use crate::Ideal;
use engine::{form_basis, saturate_module, Engine, Level, Query};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// A finitely presented module over `A = P/ring_relations`: the cokernel of
/// `A^m → A^r` whose columns are `relations`.
#[derive(Debug, Clone)]
pub struct FPModule {
    pub ring_relations: Ideal,
    /// Columns of the presentation matrix, each of length `rank`.
    pub relations: Vec<Vec<Polynomial>>,
    pub generator_labels: Vec<String>,
}

impl FPModule {
    pub fn free(ring_relations: &Ideal, labels: Vec<String>) -> FPModule {
        FPModule { ring_relations: ring_relations.clone(), relations: Vec::new(), generator_labels: labels }
    }

    pub fn rank(&self) -> usize {
        self.generator_labels.len()
    }

    /// The submodule of `P^rank` whose quotient is this module.
    fn lifted_relations(&self) -> Vec<TVec> {
        let r = self.rank();
        let mut out: Vec<TVec> = Vec::new();
        for col in &self.relations {
            let v: TVec = col
                .iter()
                .enumerate()
                .flat_map(|(k, p)| p.terms().map(move |(m, c)| (Term::new(m.clone(), k), c.clone())))
                .collect();
            if !v.is_empty() {
                out.push(v);
            }
        }
        for f in self.ring_relations.gens() {
            for k in 0..r {
                out.push(f.terms().map(|(m, c)| (Term::new(m.clone(), k), c.clone())).collect());
            }
        }
        out
    }

    pub fn groebner(&self) -> ModuleGb {
        let ring = self.ring_relations.ring();
        ModuleGb::from_tvecs(ring, self.rank(), ModuleOrder::new(MonomialOrder::DegRevLex, self.rank()), self.lifted_relations())
    }

    /// `k`-dimension of the part of total degree exactly `d` in the
    /// degree filtration (generators in degree zero).
    pub fn filtered_piece_dims(&self, upto: u32) -> Vec<u64> {
        standard_counts(&self.groebner(), upto)
    }
}

fn standard_counts(gb: &ModuleGb, upto: u32) -> Vec<u64> {
    let n = gb.ring().nvars();
    let ones = vec![1u64; n];
    let mut out = Vec::with_capacity(upto as usize + 1);
    for d in 0..=upto {
        let mut c = 0u64;
        crate::groebner::for_each_monomial_of_weight(&ones, d as u64, &mut |e| {
            for k in 0..gb.rank() {
                if gb.is_standard(&Term::new(crate::poly::Monomial(e.to_vec()), k)) {
                    c += 1;
                }
            }
        });
        out.push(c);
    }
    out
}

/// `Ω¹_{A/k}` as the cokernel of the transposed Jacobian.
pub fn kaehler(relations: &Ideal) -> FPModule {
    let ring = relations.ring();
    let n = ring.nvars();
    let cols = relations.gens().iter().map(|f| (0..n).map(|i| f.derivative(i)).collect()).collect();
    FPModule {
        ring_relations: relations.clone(),
        relations: cols,
        generator_labels: ring.vars().iter().map(|v| format!("d{v}")).collect(),
    }
}

/// `Λ^p M` with generators `e_K` for increasing `p`-subsets `K`.
pub fn exterior_power(m: &FPModule, p: usize) -> FPModule {
    let ring = m.ring_relations.ring();
    let r = m.rank();
    let bp = form_basis(r, p);
    let labels = if p == 0 {
        vec!["1".to_string()]
    } else {
        bp.subsets.iter().map(|k| k.iter().map(|&i| m.generator_labels[i].as_str()).collect::<Vec<_>>().join("^")).collect()
    };
    let mut cols = Vec::new();
    if p > 0 {
        for col in &m.relations {
            for kset in form_basis(r, p - 1).subsets {
                let mut v = vec![Polynomial::zero(ring); bp.subsets.len()];
                let mut any = false;
                for (i, c) in col.iter().enumerate() {
                    if c.is_zero() {
                        continue;
                    }
                    if let Some((neg, s)) = engine::wedge_one(i, &kset) {
                        let k = bp.index[&s];
                        v[k] = if neg { &v[k] - c } else { &v[k] + c };
                        any = true;
                    }
                }
                if any {
                    cols.push(v);
                }
            }
        }
    }
    FPModule { ring_relations: m.ring_relations.clone(), relations: cols, generator_labels: labels }
}

/// `Ω^p_{A/k}`.
pub fn forms(relations: &Ideal, p: usize) -> FPModule {
    exterior_power(&kaehler(relations), p)
}

const TORSION_SEED: u64 = 0x5eed_70c5;
const TORSION_DEGREE_CAP: u32 = 60;

/// `k`-dimension of the torsion of `M`, computed as `ker(M → M_f)`.
///
/// `f` is a random combination of generators of `Sing(A) · Fitt_r(M)`,
/// `r` the generic rank, re-drawn until it is a nonzerodivisor. Assumes
/// `A` reduced and `M` locally free wherever that ideal is the unit ideal.
pub fn torsion_dimension(m: &FPModule) -> Result<u64> {
    let locus = singular_locus(&m.ring_relations)?;
    let fit = generic_fitting_ideal(m)?;
    let bad = locus.product(&fit);
    if bad.is_unit() {
        return Ok(0);
    }
    let f = random_nonzerodivisor(&m.ring_relations, &bad)
        .ok_or_else(|| Error::Hypothesis("no nonzerodivisor found in the non-free locus".into()))?;
    torsion_dimension_wrt(m, &f)
}

/// A random combination of the generators of `j` that is a nonzerodivisor
/// modulo `relations`, in up to eight draws.
fn random_nonzerodivisor(relations: &Ideal, j: &Ideal) -> Option<Polynomial> {
    let ring = relations.ring().clone();
    let gens: Vec<&Polynomial> = j.gens().iter().filter(|g| !relations.contains(g)).collect();
    if gens.is_empty() {
        return None;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(TORSION_SEED);
    for _ in 0..8 {
        let mut c = Polynomial::zero(&ring);
        for g in &gens {
            let a = Q::from_int(rng.gen_range(1..=9) * if rng.gen_bool(0.5) { 1 } else { -1 });
            c = &c + &g.scale(&a);
        }
        if !relations.contains(&c) && relations.quotient_elem(&c) == *relations {
            return Some(c);
        }
    }
    None
}

/// `Fitt_r(M)` for the least `r` whose Fitting ideal contains a
/// nonzerodivisor.
fn generic_fitting_ideal(m: &FPModule) -> Result<Ideal> {
    let ring = m.ring_relations.ring().clone();
    let r = m.rank();
    let cols = &m.relations;
    for j in 0..r {
        let size = r - j;
        if size > cols.len() {
            continue;
        }
        let mut gens = m.ring_relations.gens().to_vec();
        for rows in form_basis(r, size).subsets {
            for cs in form_basis(cols.len(), size).subsets {
                let mat: Vec<Vec<Polynomial>> = rows.iter().map(|&i| cs.iter().map(|&c| cols[c][i].clone()).collect()).collect();
                let d = det(&mat);
                if !d.is_zero() {
                    gens.push(d);
                }
            }
        }
        let id = Ideal::new(&ring, gens)?;
        if id.is_unit() || random_nonzerodivisor(&m.ring_relations, &id).is_some() {
            return Ok(id);
        }
    }
    Ok(Ideal::unit(&ring))
}

fn det(m: &[Vec<Polynomial>]) -> Polynomial {
    if m.len() == 1 {
        return m[0][0].clone();
    }
    let ring = m[0][0].ring().clone();
    let mut acc = Polynomial::zero(&ring);
    for c in 0..m.len() {
        if m[0][c].is_zero() {
            continue;
        }
        let minor: Vec<Vec<Polynomial>> =
            m[1..].iter().map(|row| row.iter().enumerate().filter(|(j, _)| *j != c).map(|(_, p)| p.clone()).collect()).collect();
        let t = &m[0][c] * &det(&minor);
        acc = if c % 2 == 0 { &acc + &t } else { &acc - &t };
    }
    acc
}

/// `k`-dimension of the `f`-power torsion of `M`.
pub fn torsion_dimension_wrt(m: &FPModule, f: &Polynomial) -> Result<u64> {
    let ring = m.ring_relations.ring().clone();
    let gb = m.groebner();
    let sat = saturate_module(&ring, m.rank(), m.lifted_relations(), f);
    let a = standard_counts(&gb, TORSION_DEGREE_CAP);
    let b = standard_counts(&sat, TORSION_DEGREE_CAP);
    let top = gb.tvecs().iter().chain(sat.tvecs()).map(|v| v.last().map(|(t, _)| t.mono.degree()).unwrap_or(0)).max().unwrap_or(0);
    let mut total = 0u64;
    let mut zeros = 0;
    for d in 0..=TORSION_DEGREE_CAP as usize {
        let diff = a[d] - b[d];
        total += diff;
        zeros = if diff == 0 { zeros + 1 } else { 0 };
        if zeros >= 3 && d as u32 > top {
            return Ok(total);
        }
    }
    Err(Error::NotStabilized(format!("torsion still growing at degree {TORSION_DEGREE_CAP}")))
}

/// A finite piece of a complex of vector spaces with explicit maps.
#[derive(Debug, Clone)]
pub struct TruncatedComplex {
    /// Dimension of each term, indexed from `degree_window.0`.
    pub dims: Vec<usize>,
    /// `differentials[k]` maps term `k` to term `k+1`, as column images.
    pub differentials: Vec<Vec<SVec>>,
    pub degree_window: (i64, i64),
    pub truncation_bound: u32,
}

impl TruncatedComplex {
    pub fn is_complex(&self) -> bool {
        self.differentials.windows(2).all(|w| w[0].iter().all(|v| crate::linalg::apply(&w[1], v).is_empty()))
    }

    /// Homology at cohomological degree `t`.
    pub fn homology(&self, t: i64) -> usize {
        if t < self.degree_window.0 || t > self.degree_window.1 {
            return 0;
        }
        let k = (t - self.degree_window.0) as usize;
        let z = kernel(&self.differentials[k]).len();
        let b = if k == 0 { 0 } else { rank(&self.differentials[k - 1]) };
        z - b
    }
}

/// Weight vectors making every generator homogeneous; empty if only zero.
pub fn homogeneity_weights(relations: &Ideal) -> Vec<Vec<i64>> {
    let n = relations.ring().nvars();
    let mut rows: Vec<SVec> = Vec::new();
    for g in relations.gens() {
        let ts: Vec<_> = g.terms().map(|(m, _)| m.clone()).collect();
        for t in ts.iter().skip(1) {
            let d: SVec = crate::linalg::svec_from((0..n).map(|i| (i, Q::from_int(t.0[i] as i64 - ts[0].0[i] as i64))));
            if !d.is_empty() {
                rows.push(d);
            }
        }
    }
    // kernel of the constraint matrix: columns are variables
    let mut cols: Vec<SVec> = vec![Vec::new(); n];
    for (r, row) in rows.iter().enumerate() {
        for (i, c) in row {
            cols[*i].push((r, c.clone()));
        }
    }
    kernel(&cols)
        .into_iter()
        .map(|v| {
            let den = v.iter().fold(num_bigint::BigInt::from(1), |acc, (_, c)| num_integer::Integer::lcm(&acc, &c.denom()));
            let mut w = vec![0i64; n];
            for (i, c) in v {
                let x = c.to_big() * num_rational::BigRational::from_integer(den.clone());
                w[i] = num_traits::ToPrimitive::to_i64(x.numer()).unwrap_or(0);
            }
            w
        })
        .collect()
}

fn affine_engine(relations: &Ideal, euler: bool) -> Engine {
    let n = relations.ring().nvars();
    let mut e = Engine::new(relations, vec![false; n], Vec::new());
    if euler {
        let ws = homogeneity_weights(relations);
        if !ws.is_empty() {
            e = e.with_euler_weights(ws);
        }
    }
    e
}

/// `H^p_DR(Spec A)` for smooth `A`, from the subcomplexes of forms of
/// bounded total degree. Uses the Euler-derivation shortcut whenever the
/// relations admit a nonzero grading.
pub fn de_rham_cohomology(relations: &Ideal, p: usize, degree_bound: u32) -> Result<WindowedDim> {
    let b = Bounds { degree_bound, ..Bounds::default() };
    de_rham_cohomology_with(relations, p, &b, true)
}

pub fn de_rham_cohomology_with(relations: &Ideal, p: usize, bounds: &Bounds, euler: bool) -> Result<WindowedDim> {
    if !is_smooth(relations)? {
        return Err(Error::Hypothesis("de Rham cohomology needs a smooth affine scheme".into()));
    }
    naive_de_rham_cohomology(relations, p, bounds, euler)
}

/// Cohomology of the de Rham complex of the coordinate ring itself, with
/// no smoothness check.
pub fn naive_de_rham_cohomology(relations: &Ideal, p: usize, bounds: &Bounds, euler: bool) -> Result<WindowedDim> {
    let n = relations.ring().nvars();
    if p > n {
        return Ok(WindowedDim::exact(0));
    }
    let mut e = affine_engine(relations, euler);
    let q = Query { p_lo: 0, p_hi: n, t: p as i64, twist: 0 };
    e.cohomology(q, bounds.degree_bound, bounds.stable_run)
}

/// The affine de Rham complex in forms of total weight at most `bound`.
pub fn de_rham_complex(relations: &Ideal, bound: u32) -> Result<TruncatedComplex> {
    let n = relations.ring().nvars();
    let mut e = affine_engine(relations, false);
    let q = Query { p_lo: 0, p_hi: n, t: 0, twist: 0 };
    e.complex(q, Level::of(bound), (0, n as i64))
}

/// Window dimensions of `Ω^n / dΩ^{n-1}` for `n ≥ 0`.
pub fn forms_mod_exact(relations: &Ideal, n: usize, bounds: &Bounds) -> Result<WindowedDim> {
    let mut e = affine_engine(relations, false);
    let q = Query { p_lo: n.saturating_sub(1), p_hi: n, t: n as i64, twist: 0 };
    let mut hist = Vec::new();
    for l in 1..=bounds.degree_bound {
        let [_, c, _] = e.sizes(q, Level::of(l))?;
        let r = e.rank_of_d(q, n as i64 - 1, Level::of(l))?;
        hist.push((c - if n == 0 { 0 } else { r }) as u64);
    }
    Ok(WindowedDim::from_history(hist, bounds.stable_run))
}

/// Window dimensions of the closed `n`-forms `Z^n`.
pub fn closed_forms(relations: &Ideal, n: usize, bounds: &Bounds) -> Result<WindowedDim> {
    let mut e = affine_engine(relations, false);
    let q = Query { p_lo: n, p_hi: n + 1, t: n as i64, twist: 0 };
    let mut hist = Vec::new();
    for l in 1..=bounds.degree_bound {
        let [_, c, _] = e.sizes(q, Level::of(l))?;
        let r = e.rank_of_d(q, n as i64, Level::of(l))?;
        hist.push((c - r) as u64);
    }
    Ok(WindowedDim::from_history(hist, bounds.stable_run))
}

/// Which coherent sheaf a Čech computation is about.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SheafSpec {
    /// `Ω^p`; `Ω^0` is the structure sheaf.
    Forms(usize),
}

impl SheafSpec {
    pub fn structure() -> SheafSpec {
        SheafSpec::Forms(0)
    }
}

/// Projective variables (weight one) of a presentation whose weights are
/// all zero or one.
fn projective_flags(s: &GradedAlgebraPresentation) -> Result<Vec<bool>> {
    if s.weights.iter().any(|&w| w != 0 && w != 1) {
        return Err(Error::Unsupported("Čech computations need weights in {0, 1}".into()));
    }
    Ok(s.weights.iter().map(|&w| w == 1).collect())
}

fn proj_engine(s: &GradedAlgebraPresentation) -> Result<Engine> {
    let proj = projective_flags(s)?;
    let cover: Vec<usize> = (0..proj.len()).filter(|&i| proj[i]).collect();
    Ok(Engine::new(&s.relations, proj, cover))
}

/// `H^q(Proj S, M(twist))` on the standard chart cover.
pub fn cech_sheaf_cohomology(
    s: &GradedAlgebraPresentation,
    sheaf: SheafSpec,
    q: usize,
    twist: i64,
    bounds: &Bounds,
) -> Result<WindowedDim> {
    if twist < bounds.cech_window.0 || twist > bounds.cech_window.1 {
        return Err(Error::InvalidInput(format!("twist {twist} outside the window {:?}", bounds.cech_window)));
    }
    let SheafSpec::Forms(p) = sheaf;
    let mut e = proj_engine(s)?;
    if e.is_affine() {
        return Err(Error::InvalidInput("no positive-weight variables".into()));
    }
    let query = Query { p_lo: p, p_hi: p, t: (p + q) as i64, twist };
    e.cohomology(query, bounds.proj_levels, bounds.stable_run)
}

fn check_charts_smooth(s: &GradedAlgebraPresentation) -> Result<()> {
    let charts = if s.positive_vars().is_empty() { vec![s.relations.clone()] } else { proj_charts(s).into_iter().map(|c| c.relations).collect() };
    for c in charts {
        if !is_smooth(&c)? {
            return Err(Error::Hypothesis("a chart of the cover is not smooth".into()));
        }
    }
    Ok(())
}

/// `ℍ^m(Proj S, Ω^{≤i})` from the Čech–de Rham double complex. With all
/// weights zero this is the affine scheme `Spec S`.
pub fn truncated_derham_hyper(s: &GradedAlgebraPresentation, i: usize, m: i64, bounds: &Bounds) -> Result<WindowedDim> {
    check_charts_smooth(s)?;
    if m < 0 {
        return Ok(WindowedDim::exact(0));
    }
    let mut e = proj_engine(s)?;
    let n = s.ring().nvars();
    let query = Query { p_lo: 0, p_hi: i.min(n), t: m, twist: 0 };
    let top = if e.is_affine() { bounds.degree_bound } else { bounds.proj_levels };
    e.cohomology(query, top, bounds.stable_run)
}

/// `D ∘ D = 0` for the Čech–de Rham complex of `Proj S` at one level.
pub fn cech_de_rham_complex(s: &GradedAlgebraPresentation, i: usize, level: u32) -> Result<TruncatedComplex> {
    let mut e = proj_engine(s)?;
    let n = s.ring().nvars();
    let width = if e.is_affine() { 0 } else { s.positive_vars().len() as i64 - 1 };
    let query = Query { p_lo: 0, p_hi: i.min(n), t: 0, twist: 0 };
    e.complex(query, Level::of(level), (0, i.min(n) as i64 + width))
}
