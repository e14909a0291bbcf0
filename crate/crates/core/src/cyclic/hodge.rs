use super::Theory;
use crate::algebra::GradedAlgebraPresentation;
use crate::differentials::{
    cech_sheaf_cohomology, closed_forms, de_rham_cohomology_with, forms, forms_mod_exact, naive_de_rham_cohomology,
    torsion_dimension, truncated_derham_hyper, SheafSpec,
};
use crate::dims::{Bounds, DimensionValue};
use crate::error::{Error, Result};
use crate::exactseq::{LESInstance, Slot};
use crate::geometry::{is_smooth, proj_charts, simplify_presentation, BlowupSquare};
use crate::groebner::Ideal;
use std::collections::BTreeMap;
use std::fmt;

/// Dimensions of Hodge components `(theory, n, i)`.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct HodgeTable {
    pub entries: BTreeMap<(Theory, i64, i64), DimensionValue>,
}

impl HodgeTable {
    pub fn new() -> HodgeTable {
        HodgeTable::default()
    }

    pub fn insert(&mut self, theory: Theory, n: i64, i: i64, v: DimensionValue) {
        self.entries.insert((theory, n, i), v);
    }

    pub fn get(&self, theory: Theory, n: i64, i: i64) -> Option<&DimensionValue> {
        self.entries.get(&(theory, n, i))
    }

    /// `HP^{(i)}_n = HP^{(i+1)}_{n+2}` wherever both sides are known.
    pub fn hp_period_two_holds(&self) -> bool {
        self.entries.iter().all(|((t, n, i), v)| {
            if *t != Theory::HP {
                return true;
            }
            match (v.as_known(), self.get(Theory::HP, n + 2, i + 1).and_then(|w| w.as_known())) {
                (Some(a), Some(b)) => a == b,
                _ => true,
            }
        })
    }
}

impl fmt::Display for HodgeTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for ((t, n, i), v) in &self.entries {
            writeln!(f, "{t}_{n}^({i}) = {v}")?;
        }
        Ok(())
    }
}

pub(crate) fn add_dims(a: &DimensionValue, b: &DimensionValue) -> DimensionValue {
    match (a, b) {
        (DimensionValue::Symbolic(s), _) | (_, DimensionValue::Symbolic(s)) => DimensionValue::Symbolic(s.clone()),
        _ => match (a.as_known(), b.as_known()) {
            (Some(x), Some(y)) => DimensionValue::known(x + y),
            _ => DimensionValue::Unknown,
        },
    }
}

fn sum_dims(vals: impl IntoIterator<Item = DimensionValue>) -> DimensionValue {
    vals.into_iter().fold(DimensionValue::Zero, |acc, v| add_dims(&acc, &v))
}

/// Hodge components of `HC`, `HN`, `HP` of a smooth affine algebra from
/// de Rham data.
pub fn smooth_hodge(relations: &Ideal, theory: Theory, n: i64, i: i64, bounds: &Bounds) -> Result<DimensionValue> {
    if !is_smooth(relations)? {
        return Err(Error::Hypothesis("the algebra is not smooth".into()));
    }
    let nv = relations.ring().nvars() as i64;
    let h = |j: i64| -> Result<DimensionValue> {
        if j < 0 || j > nv {
            return Ok(DimensionValue::Zero);
        }
        Ok(de_rham_cohomology_with(relations, j as usize, bounds, true)?.to_dimension())
    };
    if i < 0 {
        return Ok(DimensionValue::Zero);
    }
    match theory {
        Theory::HC => {
            if n < 0 {
                Ok(DimensionValue::Zero)
            } else if i == n {
                if n > nv {
                    return Ok(DimensionValue::Zero);
                }
                Ok(forms_mod_exact(relations, n as usize, bounds)?.to_dimension())
            } else if 2 * i >= n && i < n {
                h(2 * i - n)
            } else {
                Ok(DimensionValue::Zero)
            }
        }
        Theory::HN => {
            if i == n {
                if n < 0 || n > nv {
                    return Ok(DimensionValue::Zero);
                }
                Ok(closed_forms(relations, n as usize, bounds)?.to_dimension())
            } else if i > n {
                h(2 * i - n)
            } else {
                Ok(DimensionValue::Zero)
            }
        }
        Theory::HP => h(2 * i - n),
    }
}

fn check_charts_smooth(s: &GradedAlgebraPresentation) -> Result<()> {
    for c in proj_charts(s) {
        if !is_smooth(&c.relations)? {
            return Err(Error::Hypothesis(format!("chart {} is not smooth", c.description)));
        }
    }
    Ok(())
}

/// `HC^{(i)}_n` of a smooth projective scheme as the Hodge-filtered piece
/// `Σ_{p+q=2i-n, p≤i} H^q(Ω^p)`.
pub fn projective_hc_hodge(e: &GradedAlgebraPresentation, n: i64, i: i64, bounds: &Bounds) -> Result<DimensionValue> {
    if e.positive_vars().is_empty() {
        return Err(Error::InvalidInput("not a projective presentation".into()));
    }
    check_charts_smooth(e)?;
    let m = 2 * i - n;
    if i < 0 || m < 0 {
        return Ok(DimensionValue::Zero);
    }
    let nv = e.ring().nvars() as i64;
    let mut parts = Vec::new();
    for p in 0..=i.min(m).min(nv) {
        let q = (m - p) as usize;
        parts.push(cech_sheaf_cohomology(e, SheafSpec::Forms(p as usize), q, 0, bounds)?.to_dimension());
    }
    Ok(sum_dims(parts))
}

/// Principal, and singular at finitely many points at most. Finite
/// singular locus also rules out repeated factors.
fn check_isolated_hypersurface(hyp: &Ideal) -> Result<()> {
    let gens: Vec<_> = hyp.gens().iter().filter(|g| !g.is_zero()).cloned().collect();
    if gens.len() != 1 {
        return Err(Error::Hypothesis("not a principal ideal".into()));
    }
    let f = &gens[0];
    let ring = hyp.ring().clone();
    if f.is_zero() || Ideal::new(&ring, vec![f.clone()])?.is_unit() {
        return Err(Error::Hypothesis("not a proper hypersurface".into()));
    }
    let mut jac = vec![f.clone()];
    jac.extend((0..ring.nvars()).map(|v| f.derivative(v)));
    let j = Ideal::new(&ring, jac)?;
    if !j.is_unit() && j.krull_dimension()? > 0 {
        return Err(Error::Hypothesis("singularities are not isolated (or the hypersurface is not reduced)".into()));
    }
    Ok(())
}

/// Hodge components of `HC` of a reduced hypersurface in `N` variables
/// with isolated singularities. De Rham groups of the singular ring are
/// those of its naive de Rham complex.
pub fn michler_hc(hyp: &Ideal, n: i64, i: i64, bounds: &Bounds) -> Result<DimensionValue> {
    check_isolated_hypersurface(hyp)?;
    let big_n = hyp.ring().nvars() as i64;
    let h = |j: i64| -> Result<DimensionValue> {
        if j < 0 || j > big_n {
            return Ok(DimensionValue::Zero);
        }
        Ok(naive_de_rham_cohomology(hyp, j as usize, bounds, true)?.to_dimension())
    };
    if n < 0 || i < 0 {
        return Ok(DimensionValue::Zero);
    }
    if n > big_n {
        if 2 * i - n == big_n - 1 {
            let t = torsion_dimension(&forms(hyp, (big_n - 1) as usize))?;
            return Ok(add_dims(&DimensionValue::known(t), &h(big_n - 1)?));
        }
        return h(2 * i - n);
    }
    if i == n {
        Ok(forms_mod_exact(hyp, n as usize, bounds)?.to_dimension())
    } else if 2 * i >= n && i < n {
        h(2 * i - n)
    } else {
        Ok(DimensionValue::Zero)
    }
}

fn describe(parts: &[(i64, DimensionValue)], name: &str) -> String {
    parts.iter().map(|(j, v)| format!("H^{j}({name})={v}")).collect::<Vec<_>>().join(" ")
}

/// The six-term sequence
/// `HP_0(X) → H^ev(Y)⊕H^ev(Z) → H^ev(E) → HP_1(X) → H^odd(Y)⊕H^odd(Z) → H^odd(E) → HP_0(X)`
/// with de Rham slots filled in and `HP_*(X)` unknown.
///
/// When `Y` and `Z` are connected and `E` is nonempty, the degree-zero
/// part of `H(Y)⊕H(Z) → H(E)` has rank one; that rank is recorded when
/// all higher-degree parts of the map have a zero source or target.
pub fn hp_six_term(square: &BlowupSquare, bounds: &Bounds) -> Result<LESInstance> {
    let d = square.x.krull_dimension()? as i64;
    if d == 0 {
        return Err(Error::InvalidInput("X has dimension zero".into()));
    }
    for c in &square.y_charts {
        if !is_smooth(&c.relations)? {
            return Err(Error::Hypothesis(format!("blowup chart {} is not smooth", c.description)));
        }
    }
    check_charts_smooth(&square.e)?;
    let z = simplify_presentation(&square.x.add(&square.center.map_to(square.x.ring())?));
    if !is_smooth(&z)? {
        return Err(Error::Hypothesis("the center is not smooth".into()));
    }
    let top = 2 * d;
    let mut hy = Vec::new();
    let mut he = Vec::new();
    let mut hz = Vec::new();
    for j in 0..=top {
        hy.push((j, truncated_derham_hyper(&square.rees, d as usize, j, bounds)?.to_dimension()));
        let ev = if j <= 2 * (d - 1) { truncated_derham_hyper(&square.e, (d - 1) as usize, j, bounds)?.to_dimension() } else { DimensionValue::Zero };
        he.push((j, ev));
        let zv = if j <= z.ring().nvars() as i64 { de_rham_cohomology_with(&z, j as usize, bounds, true)?.to_dimension() } else { DimensionValue::Zero };
        hz.push((j, zv));
    }
    let pick = |v: &[(i64, DimensionValue)], parity: i64| sum_dims(v.iter().filter(|(j, _)| j % 2 == parity).map(|(_, x)| x.clone()));
    let yz = |parity: i64| add_dims(&pick(&hy, parity), &pick(&hz, parity));
    let note = format!("{} | {} | {}", describe(&hy, "Y"), describe(&hz, "Z"), describe(&he, "E"));
    let slots = vec![
        Slot::unknown("HP_0(X)"),
        Slot::new("H^ev(Y)+H^ev(Z)", yz(0)).with_note(note.clone()),
        Slot::new("H^ev(E)", pick(&he, 0)).with_note(note.clone()),
        Slot::unknown("HP_1(X)"),
        Slot::new("H^odd(Y)+H^odd(Z)", yz(1)).with_note(note.clone()),
        Slot::new("H^odd(E)", pick(&he, 1)).with_note(note),
    ];
    let mut les = LESInstance::new(slots, true);
    // rank of the restriction map, where it is forced
    let one = |v: &DimensionValue| v.as_known() == Some(1);
    let connected = one(&hy[0].1) && one(&hz[0].1) && he[0].1.as_known().is_some_and(|e| e >= 1);
    let degenerate = |j: usize| {
        let src = add_dims(&hy[j].1, &hz[j].1);
        src.is_zero() || he[j].1.is_zero()
    };
    let higher_even = (1..=top as usize).filter(|j| j % 2 == 0).all(degenerate);
    let all_odd = (0..=top as usize).filter(|j| j % 2 == 1).all(degenerate);
    if connected && higher_even {
        les.map_ranks.insert(1, 1);
    }
    if all_odd {
        les.map_ranks.insert(4, 0);
    }
    Ok(les)
}
