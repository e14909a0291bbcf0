//! Blowup squares, affine charts and Jacobian smoothness.

use crate::algebra::{assoc_graded, rees_presentation, GradedAlgebraPresentation};
use crate::error::{Error, Result};
use crate::groebner::Ideal;
use crate::poly::{Monomial, Polynomial, Ring, RingRef};
use crate::rational::Q;

/// One affine chart of a blowup or of a projective scheme.
#[derive(Debug, Clone)]
pub struct AffineChart {
    /// Presentation of the chart's coordinate ring (after substituting away
    /// variables that appear linearly).
    pub relations: Ideal,
    /// Which Rees variable was set to one, e.g. `a1=1`.
    pub description: String,
}

/// The square `E → Y`, `Z → X` for the blowup of `X` along `Z`.
#[derive(Debug, Clone)]
pub struct BlowupSquare {
    pub x: Ideal,
    pub center: Ideal,
    pub rees: GradedAlgebraPresentation,
    pub y_charts: Vec<AffineChart>,
    pub e: GradedAlgebraPresentation,
    pub e_charts: Vec<AffineChart>,
}

/// Substitute away variables occurring in a relation as `c·v + h` with `h`
/// free of `v`. Returns an ideal in a smaller ring presenting the same
/// algebra.
pub fn simplify_presentation(i: &Ideal) -> Ideal {
    let mut cur = i.reduced();
    loop {
        let ring = cur.ring().clone();
        let n = ring.nvars();
        let mut found: Option<(usize, usize)> = None;
        'outer: for (gi, g) in cur.gens().iter().enumerate() {
            for v in 0..n {
                if linear_in(g, v).is_some() {
                    found = Some((gi, v));
                    break 'outer;
                }
            }
        }
        let Some((gi, v)) = found else { return cur };
        let g = &cur.gens()[gi];
        let (c, h) = linear_in(g, v).unwrap();
        // v = -h/c
        let keep: Vec<&str> = ring.vars().iter().enumerate().filter(|(k, _)| *k != v).map(|(_, s)| s.as_str()).collect();
        let sub = Ring::new(&keep).unwrap();
        let mut imgs: Vec<Polynomial> = Vec::new();
        let mut k = 0;
        for j in 0..n {
            if j == v {
                imgs.push(h.scale(&(-&c.inv())).map_to_sub(&sub));
            } else {
                imgs.push(sub.var(k));
                k += 1;
            }
        }
        let gens: Vec<Polynomial> = cur
            .gens()
            .iter()
            .enumerate()
            .filter(|(k, _)| *k != gi)
            .map(|(_, p)| p.substitute(&sub, &imgs))
            .collect();
        cur = Ideal::new(&sub, gens).unwrap().reduced();
    }
}

/// If `g = c·x_v + h` with `c` constant and `h` free of `x_v`, return `(c, h)`.
fn linear_in(g: &Polynomial, v: usize) -> Option<(Q, Polynomial)> {
    let mut c = None;
    let mut h = Polynomial::zero(g.ring());
    for (m, q) in g.terms() {
        match m.0[v] {
            0 => h.add_term(m.clone(), q),
            1 if m.degree() == 1 => c = Some(q.clone()),
            _ => return None,
        }
    }
    c.map(|c| (c, h))
}

impl Polynomial {
    /// Move to a subring by variable names; panics if a dropped variable
    /// occurs.
    pub(crate) fn map_to_sub(&self, sub: &RingRef) -> Polynomial {
        let ring = self.ring().clone();
        let mut p = Polynomial::zero(sub);
        for (m, c) in self.terms() {
            let mut e = vec![0; sub.nvars()];
            for (i, &x) in m.0.iter().enumerate() {
                if x > 0 {
                    let j = sub.var_index(&ring.vars()[i]).expect("variable missing from subring");
                    e[j] = x;
                }
            }
            p.add_term(Monomial(e), c);
        }
        p
    }
}

/// Set variable `v` to one and drop it from the ring.
fn set_to_one(i: &Ideal, v: usize) -> Ideal {
    let ring = i.ring();
    let keep: Vec<&str> = ring.vars().iter().enumerate().filter(|(k, _)| *k != v).map(|(_, s)| s.as_str()).collect();
    let sub = Ring::new(&keep).unwrap();
    let mut imgs = Vec::new();
    let mut k = 0;
    for j in 0..ring.nvars() {
        if j == v {
            imgs.push(sub.one());
        } else {
            imgs.push(sub.var(k));
            k += 1;
        }
    }
    let g = i.gens().iter().map(|p| p.substitute(&sub, &imgs)).collect();
    Ideal::new(&sub, g).unwrap()
}

/// Standard affine charts `D+(v)` of `Proj` of a presentation generated in
/// degree one by its positive-weight variables.
pub fn proj_charts(s: &GradedAlgebraPresentation) -> Vec<AffineChart> {
    s.positive_vars()
        .into_iter()
        .map(|v| AffineChart {
            relations: simplify_presentation(&set_to_one(&s.relations, v)),
            description: format!("{}=1", s.ring().vars()[v]),
        })
        .collect()
}

/// Build the blowup square of `X = Spec k[x]/x_relations` along `center`.
pub fn blowup_square(x_relations: &Ideal, center: &Ideal) -> Result<BlowupSquare> {
    if center.gens().is_empty() {
        return Err(Error::InvalidInput("empty center".into()));
    }
    let rees = rees_presentation(x_relations, center)?;
    let e = assoc_graded(x_relations, center)?;
    let big = rees.ring().clone();
    let n = x_relations.ring().nvars();
    let mut y_charts = Vec::new();
    for (k, f) in center.gens().iter().enumerate() {
        let v = n + k;
        let chart = set_to_one(&rees.relations, v);
        let f = f.map_to(&big)?.map_to_sub(chart.ring());
        let sat = chart.saturate_elem(&f);
        y_charts.push(AffineChart {
            relations: simplify_presentation(&sat),
            description: format!("{}=1", big.vars()[v]),
        });
    }
    let e_charts = proj_charts(&e);
    Ok(BlowupSquare { x: x_relations.clone(), center: center.clone(), rees, y_charts, e, e_charts })
}

fn determinant(m: &[Vec<Polynomial>]) -> Polynomial {
    let n = m.len();
    if n == 1 {
        return m[0][0].clone();
    }
    let ring = m[0][0].ring().clone();
    let mut acc = Polynomial::zero(&ring);
    for c in 0..n {
        if m[0][c].is_zero() {
            continue;
        }
        let minor: Vec<Vec<Polynomial>> =
            m[1..].iter().map(|row| row.iter().enumerate().filter(|(j, _)| *j != c).map(|(_, p)| p.clone()).collect()).collect();
        let t = &m[0][c] * &determinant(&minor);
        acc = if c % 2 == 0 { &acc + &t } else { &acc - &t };
    }
    acc
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    rec(0, n, k, &mut cur, &mut out);
    out
}

/// `relations + (c×c minors of the Jacobian)` where `c` is the codimension.
/// Assumes the scheme is reduced and equidimensional.
pub fn singular_locus(relations: &Ideal) -> Result<Ideal> {
    let red = relations.reduced();
    let ring = red.ring().clone();
    if red.is_unit() {
        return Ok(red);
    }
    let n = ring.nvars();
    let dim = red.krull_dimension()?;
    let c = n - dim;
    if c == 0 {
        return Ok(Ideal::unit(&ring));
    }
    let gens = red.gens();
    let jac: Vec<Vec<Polynomial>> = gens.iter().map(|g| (0..n).map(|v| g.derivative(v)).collect()).collect();
    let mut all = gens.to_vec();
    for rows in subsets(gens.len(), c) {
        for cols in subsets(n, c) {
            let m: Vec<Vec<Polynomial>> = rows.iter().map(|&r| cols.iter().map(|&k| jac[r][k].clone()).collect()).collect();
            let d = determinant(&m);
            if !d.is_zero() {
                all.push(d);
            }
        }
    }
    Ok(Ideal::new(&ring, all)?.reduced())
}

pub fn is_smooth(relations: &Ideal) -> Result<bool> {
    Ok(singular_locus(relations)?.is_unit())
}

/// Three-valued answer of [`isolated_singularity_at_origin`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SingularityVerdict {
    Smooth,
    IsolatedAtOrigin,
    Other,
}

impl std::fmt::Display for SingularityVerdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            SingularityVerdict::Smooth => "smooth",
            SingularityVerdict::IsolatedAtOrigin => "isolated-at-origin",
            SingularityVerdict::Other => "other",
        })
    }
}

pub fn isolated_singularity_at_origin(relations: &Ideal) -> Result<SingularityVerdict> {
    relations.check_origin()?;
    let locus = singular_locus(relations)?;
    if locus.is_unit() {
        return Ok(SingularityVerdict::Smooth);
    }
    let ring = locus.ring().clone();
    let all = (0..ring.nvars()).all(|i| locus.radical_contains(&ring.var(i)));
    Ok(if all { SingularityVerdict::IsolatedAtOrigin } else { SingularityVerdict::Other })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::origin_ideal;

    #[test]
    fn nodal_blowup_charts_are_smooth() {
        let r = Ring::new(&["x", "y"]).unwrap();
        let x = Ideal::parse(&r, &["y^2 - x^2 - x^3"]).unwrap();
        let sq = blowup_square(&x, &origin_ideal(&r)).unwrap();
        assert_eq!(sq.y_charts.len(), 2);
        for c in &sq.y_charts {
            assert!(is_smooth(&c.relations).unwrap(), "{:?}", c.relations.gens());
        }
        for c in &sq.e_charts {
            assert!(is_smooth(&c.relations).unwrap());
        }
        assert_eq!(isolated_singularity_at_origin(&x).unwrap(), SingularityVerdict::IsolatedAtOrigin);
    }

    #[test]
    fn singular_loci() {
        let r = Ring::new(&["x", "y"]).unwrap();
        let nodal = Ideal::parse(&r, &["y^2 - x^2 - x^3"]).unwrap();
        assert_eq!(singular_locus(&nodal).unwrap(), Ideal::parse(&r, &["x", "y"]).unwrap());
        assert!(is_smooth(&Ideal::parse(&r, &["y - x^2"]).unwrap()).unwrap());
        assert!(is_smooth(&Ideal::zero(&r)).unwrap());
        let r3 = Ring::new(&["x", "y", "z"]).unwrap();
        let cone = Ideal::parse(&r3, &["x^2 + y^2 - z^2"]).unwrap();
        assert_eq!(singular_locus(&cone).unwrap(), Ideal::parse(&r3, &["x", "y", "z"]).unwrap());
        let xy = Ideal::parse(&r3, &["x*y"]).unwrap();
        assert_eq!(isolated_singularity_at_origin(&xy).unwrap(), SingularityVerdict::Other);
        let smooth = Ideal::parse(&r, &["y - x^2"]).unwrap();
        assert_eq!(isolated_singularity_at_origin(&smooth).unwrap(), SingularityVerdict::Smooth);
    }

    #[test]
    fn plane_blowup_charts() {
        let r = Ring::new(&["x", "y"]).unwrap();
        let sq = blowup_square(&Ideal::zero(&r), &origin_ideal(&r)).unwrap();
        for c in &sq.y_charts {
            assert!(c.relations.is_zero());
            assert_eq!(c.relations.ring().nvars(), 2);
        }
    }
}
