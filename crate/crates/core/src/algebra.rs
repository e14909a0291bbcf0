//! Rees algebras, associated graded rings and tangent cones.

use crate::error::{Error, Result};
use crate::groebner::Ideal;
use crate::poly::{Polynomial, RingRef};

/// A quotient `k[vars]/relations` graded by integer weights on the
/// variables.
#[derive(Debug, Clone)]
pub struct GradedAlgebraPresentation {
    pub relations: Ideal,
    pub weights: Vec<i64>,
}

impl GradedAlgebraPresentation {
    pub fn new(relations: Ideal, weights: Vec<i64>) -> Result<GradedAlgebraPresentation> {
        if weights.len() != relations.ring().nvars() {
            return Err(Error::InvalidInput("one weight per variable".into()));
        }
        let g = GradedAlgebraPresentation { relations, weights };
        if !g.is_homogeneous() {
            return Err(Error::NotHomogeneous("relations are not weighted-homogeneous".into()));
        }
        Ok(g)
    }

    /// Standard grading, every variable of weight one.
    pub fn standard(relations: Ideal) -> Result<GradedAlgebraPresentation> {
        let n = relations.ring().nvars();
        GradedAlgebraPresentation::new(relations, vec![1; n])
    }

    pub fn ring(&self) -> &RingRef {
        self.relations.ring()
    }

    pub fn is_homogeneous(&self) -> bool {
        self.relations.is_weighted_homogeneous(&self.weights)
    }

    /// Indices of positive-weight variables.
    pub fn positive_vars(&self) -> Vec<usize> {
        (0..self.weights.len()).filter(|&i| self.weights[i] > 0).collect()
    }

    /// Hilbert function of the degree-0-free part: eliminates weight-zero
    /// variables first, so it only makes sense when the degree 0 part is k.
    pub fn hilbert_function(&self, upto: u32) -> Result<Vec<u64>> {
        let zero: Vec<usize> = (0..self.weights.len()).filter(|&i| self.weights[i] == 0).collect();
        let e = self.relations.eliminate_to(&zero);
        let w: Vec<u64> = self.positive_vars().iter().map(|&i| self.weights[i] as u64).collect();
        e.hilbert_function(&w, upto)
    }
}

fn center_gens(i: &Ideal) -> Result<Vec<Polynomial>> {
    let g: Vec<Polynomial> = i.gens().to_vec();
    if g.is_empty() {
        return Err(Error::InvalidInput("empty generator list for the blowup ideal".into()));
    }
    Ok(g)
}

/// `R[It]` as `k[x, a_1..a_r]/K`, where `a_i ↦ f_i t`.
pub fn rees_presentation(r_relations: &Ideal, i: &Ideal) -> Result<GradedAlgebraPresentation> {
    if r_relations.ring() != i.ring() {
        return Err(Error::RingMismatch("relations and blowup ideal".into()));
    }
    let f = center_gens(i)?;
    let base = r_relations.ring();
    let n = base.nvars();
    let r = f.len();
    let names: Vec<String> = (1..=r).map(|k| format!("a{k}")).collect();
    let mut extra: Vec<&str> = names.iter().map(String::as_str).collect();
    extra.push("t");
    let big = base.extend(&extra);
    let t = big.var(n + r);
    let mut gens: Vec<Polynomial> = r_relations.gens().iter().map(|g| g.map_to(&big).unwrap()).collect();
    for (k, fk) in f.iter().enumerate() {
        gens.push(&big.var(n + k) - &(&t * &fk.map_to(&big).unwrap()));
    }
    let k = Ideal::new(&big, gens)?.eliminate_to(&[n + r]).reduced();
    let mut weights = vec![0; n];
    weights.extend(std::iter::repeat_n(1, r));
    GradedAlgebraPresentation::new(k, weights)
}

/// `gr_I(R) = R[It]/I R[It]`.
pub fn assoc_graded(r_relations: &Ideal, i: &Ideal) -> Result<GradedAlgebraPresentation> {
    let rees = rees_presentation(r_relations, i)?;
    let ring = rees.ring().clone();
    let mut gens = rees.relations.gens().to_vec();
    for f in i.gens() {
        gens.push(f.map_to(&ring)?);
    }
    let rel = Ideal::new(&ring, gens)?.reduced();
    GradedAlgebraPresentation::new(rel, rees.weights)
}

/// The maximal ideal of the origin in `ring`.
pub fn origin_ideal(ring: &RingRef) -> Ideal {
    Ideal::new(ring, (0..ring.nvars()).map(|i| ring.var(i)).collect()).unwrap()
}

/// Tangent cone ideal at the origin, which is `I_min`.
pub fn tangent_cone_at_origin(i: &Ideal) -> Result<Ideal> {
    i.ideal_min()
}

/// Outcome of comparing `gr_m(k[x]/I)` with `k[X]/I_min`.
#[derive(Debug, Clone)]
pub struct IsomorphismCheck {
    pub hilbert_gr: Vec<u64>,
    pub hilbert_min: Vec<u64>,
    /// The substitution `X_i ↦ a_i` identifies the two ideals.
    pub map_ok: bool,
}

impl IsomorphismCheck {
    pub fn holds(&self) -> bool {
        self.map_ok && self.hilbert_gr == self.hilbert_min
    }
}

/// Filtered-deformation certificate for `R = k[x]/I` along the origin.
#[derive(Debug, Clone)]
pub struct FilteredDeformationReport {
    pub imin: Ideal,
    pub is_proper: bool,
    pub gr: GradedAlgebraPresentation,
    pub check: IsomorphismCheck,
}

/// Compare `gr` (graded by `a_1..a_n` over the origin filtration) with
/// `k[X]/imin` up to degree `bound`.
pub fn compare_gr_with_imin(gr: &GradedAlgebraPresentation, imin: &Ideal, bound: u32) -> Result<IsomorphismCheck> {
    let zero: Vec<usize> = (0..gr.weights.len()).filter(|&i| gr.weights[i] == 0).collect();
    let in_a = gr.relations.eliminate_to(&zero);
    let a_ring = in_a.ring().clone();
    let n = imin.ring().nvars();
    if a_ring.nvars() != n {
        return Err(Error::InvalidInput("gr must have one Rees variable per coordinate".into()));
    }
    let imgs: Vec<Polynomial> = (0..n).map(|k| a_ring.var(k)).collect();
    let mapped: Vec<Polynomial> = imin.gens().iter().map(|g| g.substitute(&a_ring, &imgs)).collect();
    let mapped = Ideal::new(&a_ring, mapped)?;
    let map_ok = mapped == in_a;
    let ones = vec![1u64; n];
    Ok(IsomorphismCheck {
        hilbert_gr: in_a.hilbert_function(&ones, bound)?,
        hilbert_min: imin.hilbert_function(&ones, bound)?,
        map_ok,
    })
}

pub fn filtered_deformation_report(i: &Ideal) -> Result<FilteredDeformationReport> {
    filtered_deformation_report_with_bound(i, 12)
}

pub fn filtered_deformation_report_with_bound(i: &Ideal, bound: u32) -> Result<FilteredDeformationReport> {
    let imin = i.ideal_min()?;
    let m = origin_ideal(i.ring());
    let gr = assoc_graded(i, &m)?;
    let check = compare_gr_with_imin(&gr, &imin, bound)?;
    Ok(FilteredDeformationReport { is_proper: !imin.is_unit(), imin, gr, check })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::Ring;

    #[test]
    fn rees_of_the_plane() {
        let r = Ring::new(&["x", "y"]).unwrap();
        let rees = rees_presentation(&Ideal::zero(&r), &origin_ideal(&r)).unwrap();
        let big = rees.ring().clone();
        assert_eq!(rees.relations, Ideal::parse(&big, &["x*a2 - y*a1"]).unwrap());
        assert_eq!(rees.weights, vec![0, 0, 1, 1]);
        let line = Ring::new(&["x"]).unwrap();
        let rees = rees_presentation(&Ideal::zero(&line), &origin_ideal(&line)).unwrap();
        assert!(rees.relations.is_zero());
    }

    #[test]
    fn nodal_gr() {
        let r = Ring::new(&["x", "y"]).unwrap();
        let i = Ideal::parse(&r, &["y^2 - x^2 - x^3"]).unwrap();
        let rep = filtered_deformation_report(&i).unwrap();
        assert!(rep.is_proper);
        assert!(rep.check.holds());
        assert_eq!(rep.imin, Ideal::parse(&r, &["y^2 - x^2"]).unwrap());
        assert_eq!(&rep.check.hilbert_gr[..4], &[1, 2, 2, 2]);
        assert!(rep.gr.is_homogeneous());
    }

    #[test]
    fn empty_center_is_an_error() {
        let r = Ring::new(&["x"]).unwrap();
        assert!(rees_presentation(&Ideal::zero(&r), &Ideal::zero(&r)).is_err());
    }
}
