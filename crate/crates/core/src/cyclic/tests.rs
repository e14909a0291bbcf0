use super::*;
use crate::algebra::{origin_ideal, GradedAlgebraPresentation};
use crate::differentials::{naive_de_rham_cohomology, torsion_dimension, forms, truncated_derham_hyper};
use crate::dims::{Bounds, DimensionValue};
use crate::exactseq::solve;
use crate::geometry::blowup_square;
use crate::groebner::Ideal;
use crate::poly::Ring;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn upper_triangular() -> FDAlgebra {
    // basis e11, e12, e22 of 2x2 upper triangular matrices
    let z = Q::zero;
    let o = Q::one;
    let c = vec![
        vec![vec![o(), z(), z()], vec![z(), o(), z()], vec![z(), z(), z()]],
        vec![vec![z(), z(), z()], vec![z(), z(), z()], vec![z(), o(), z()]],
        vec![vec![z(), z(), z()], vec![z(), z(), z()], vec![z(), z(), o()]],
    ];
    FDAlgebra::new(vec!["e11".into(), "e12".into(), "e22".into()], c, vec![o(), z(), o()]).unwrap()
}

/// `dim A/[A, A]` straight from the structure constants.
fn hc0_oracle(a: &FDAlgebra) -> u64 {
    let d = a.dim();
    let mut rows = Vec::new();
    for i in 0..d {
        for j in 0..d {
            let v: Vec<(usize, Q)> =
                (0..d).map(|k| (k, &a.structure[i][j][k] - &a.structure[j][i][k])).collect();
            rows.push(svec_from(v));
        }
    }
    (d - rank(&rows)) as u64
}

#[test]
fn ground_field_tables() {
    let k = FDAlgebra::ground_field();
    let hc = bicomplex_homology(&k, Theory::HC, (-4, 6), 8).unwrap();
    let hn = bicomplex_homology(&k, Theory::HN, (-4, 6), 8).unwrap();
    let hp = bicomplex_homology(&k, Theory::HP, (-4, 6), 8).unwrap();
    for n in -4..=6i64 {
        let even = n.rem_euclid(2) == 0;
        assert_eq!(hc[&n], u64::from(even && n >= 0), "HC_{n}");
        assert_eq!(hn[&n], u64::from(even && n <= 0), "HN_{n}");
        assert_eq!(hp[&n], u64::from(even), "HP_{n}");
    }
}

#[test]
fn identities_hold_on_several_algebras() {
    for a in [FDAlgebra::dual_numbers(), FDAlgebra::truncated_polynomial(3), upper_triangular()] {
        MixedComplex::new(&a, true, 3).unwrap();
        MixedComplex::new(&a, false, 3).unwrap();
    }
}

#[test]
fn hc0_is_the_commutator_quotient() {
    for a in [FDAlgebra::dual_numbers(), FDAlgebra::truncated_polynomial(3), upper_triangular()] {
        let hc = bicomplex_homology(&a, Theory::HC, (0, 0), 0).unwrap();
        assert_eq!(hc[&0], hc0_oracle(&a));
    }
    assert_eq!(hc0_oracle(&FDAlgebra::dual_numbers()), 2);
}

#[test]
fn normalized_matches_unnormalized() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let mut algs = vec![FDAlgebra::dual_numbers(), upper_triangular()];
    algs.extend((0..3).map(|_| FDAlgebra::random_two_dimensional(&mut rng)));
    for a in algs {
        let top = if a.dim() == 3 { 3 } else { 4 };
        assert_eq!(bicomplex_homology(&a, Theory::HC, (-1, top), 0).unwrap(), unnormalized_hc(&a, (-1, top)).unwrap());
    }
}

#[test]
fn basis_change_keeps_structure() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for _ in 0..5 {
        let a = FDAlgebra::random_two_dimensional(&mut rng);
        assert!(a.is_associative() && a.unit_laws_hold() && a.is_commutative());
        let u = a.unit_first();
        assert_eq!(u.unit, vec![Q::one(), Q::zero()]);
    }
}

#[test]
fn sbi_exactness() {
    assert!(sbi_dimension_check(&FDAlgebra::ground_field(), (-4, 6), 8).unwrap());
    assert!(sbi_dimension_check(&FDAlgebra::dual_numbers(), (0, 4), 6).unwrap());
    assert!(sbi_dimension_check(&upper_triangular(), (0, 2), 3).unwrap());
}

#[test]
fn hp_is_two_periodic() {
    let hp = bicomplex_homology(&FDAlgebra::dual_numbers(), Theory::HP, (-2, 3), 6).unwrap();
    for n in -2..=1 {
        assert_eq!(hp[&n], hp[&(n + 2)]);
    }
}

#[test]
fn smooth_hodge_examples() {
    let b = Bounds::default();
    let point = Ring::new::<&str>(&[]).unwrap();
    let k = Ideal::zero(&point);
    assert_eq!(smooth_hodge(&k, Theory::HC, 2, 1, &b).unwrap(), DimensionValue::Known(1));
    assert_eq!(smooth_hodge(&k, Theory::HC, 0, 0, &b).unwrap(), DimensionValue::Known(1));
    let r = Ring::new(&["x", "y"]).unwrap();
    let gm = Ideal::parse(&r, &["x*y - 1"]).unwrap();
    assert_eq!(smooth_hodge(&gm, Theory::HP, 1, 1, &b).unwrap(), DimensionValue::Known(1));
    for n in 0..3 {
        for i in n + 1..n + 3 {
            assert_eq!(smooth_hodge(&gm, Theory::HC, n, i, &b).unwrap(), DimensionValue::Zero);
        }
    }
    let nodal = Ideal::parse(&r, &["y^2 - x^2 - x^3"]).unwrap();
    assert!(matches!(smooth_hodge(&nodal, Theory::HC, 0, 0, &b), Err(Error::Hypothesis(_))));
}

#[test]
fn projective_hodge_against_hypercohomology() {
    let b = Bounds::default();
    let r = Ring::new(&["s", "t"]).unwrap();
    let p1 = GradedAlgebraPresentation::standard(Ideal::zero(&r)).unwrap();
    assert_eq!(projective_hc_hodge(&p1, 0, 1, &b).unwrap(), DimensionValue::Known(1));
    assert_eq!(projective_hc_hodge(&p1, 0, 0, &b).unwrap(), DimensionValue::Known(1));
    let r3 = Ring::new(&["x", "y", "z"]).unwrap();
    let conic = GradedAlgebraPresentation::standard(Ideal::parse(&r3, &["x^2 + y^2 - z^2"]).unwrap()).unwrap();
    assert_eq!(projective_hc_hodge(&conic, 0, 0, &b).unwrap(), DimensionValue::Known(1));
    for (n, i) in [(0, 0), (0, 1), (-1, 0), (1, 1), (-2, 0)] {
        let direct = truncated_derham_hyper(&conic, i as usize, 2 * i - n, &b).unwrap().to_dimension();
        assert_eq!(projective_hc_hodge(&conic, n, i, &b).unwrap(), direct, "n={n} i={i}");
    }
}

#[test]
fn michler_on_the_cusp() {
    let b = Bounds::default();
    let r = Ring::new(&["x", "y"]).unwrap();
    let cusp = Ideal::parse(&r, &["y^2 - x^3"]).unwrap();
    // n = 3 > N = 2, 2i - n = 1
    let t = torsion_dimension(&forms(&cusp, 1)).unwrap();
    let h1 = naive_de_rham_cohomology(&cusp, 1, &b, true).unwrap().to_dimension();
    let expect = hodge::add_dims(&DimensionValue::known(t), &h1);
    assert_eq!(michler_hc(&cusp, 3, 2, &b).unwrap(), expect);
    assert_eq!(michler_hc(&cusp, 2, 0, &b).unwrap(), DimensionValue::Zero);
    let xy = Ring::new(&["x", "y", "z"]).unwrap();
    let line = Ideal::parse(&xy, &["x*y"]).unwrap();
    assert!(matches!(michler_hc(&line, 1, 1, &b), Err(Error::Hypothesis(_))));
}

#[test]
fn michler_matches_smooth_formulas() {
    let b = Bounds::default();
    let r = Ring::new(&["x", "y"]).unwrap();
    let gm = Ideal::parse(&r, &["x*y - 1"]).unwrap();
    for n in 0..5 {
        for i in 0..5 {
            assert_eq!(michler_hc(&gm, n, i, &b).unwrap(), smooth_hodge(&gm, Theory::HC, n, i, &b).unwrap(), "n={n} i={i}");
        }
    }
}

#[test]
fn six_term_for_the_nodal_cubic() {
    let r = Ring::new(&["x", "y"]).unwrap();
    let x = Ideal::parse(&r, &["y^2 - x^2 - x^3"]).unwrap();
    let sq = blowup_square(&x, &origin_ideal(&r)).unwrap();
    let les = hp_six_term(&sq, &Bounds::default()).unwrap();
    let s = solve(&les).unwrap();
    let st = s.instance.states();
    assert_eq!(st[1], DimensionValue::Known(2));
    assert_eq!(st[2], DimensionValue::Known(2));
    assert_eq!(st[0], DimensionValue::Known(1));
    assert_eq!(st[3], DimensionValue::Known(1));
}

#[test]
fn exactness_check_rejects_a_wrong_map() {
    let k = FDAlgebra::ground_field();
    let (nb, pb, cb) = (Band::of(Theory::HN, 4), Band::of(Theory::HP, 4), Band::of(Theory::HC, 0));
    let mc = MixedComplex::new(&k, true, 12).unwrap();
    let hn = Node::of(nb, &mc, 0);
    let hp = Node::of(pb, &mc, 0);
    let hc = Node::of(cb, &mc, -2);
    let s = band_map(&mc, pb, 0, cb, -2, |p, _, i| if p >= 1 { Some((p - 1, vec![(i, Q::one())])) } else { None });
    let inc = band_map(&mc, nb, 0, pb, 0, |p, _, i| Some((p, vec![(i, Q::one())])));
    let zero: Vec<SVec> = vec![Vec::new(); nb.dim(&mc, 0)];
    assert!(exact_at(&inc, &s, &hn, &hp, &hc));
    assert!(!exact_at(&zero, &s, &hn, &hp, &hc));
}

#[test]
fn quotient_algebras() {
    let r = Ring::new(&["x"]).unwrap();
    let dual = FDAlgebra::from_quotient(&Ideal::parse(&r, &["x^2"]).unwrap()).unwrap();
    assert_eq!(dual.structure, FDAlgebra::dual_numbers().structure);
    assert_eq!(dual.basis_labels, vec!["1", "x"]);
    let split = FDAlgebra::from_quotient(&Ideal::parse(&r, &["x^2 - 1"]).unwrap()).unwrap();
    let hc = bicomplex_homology(&split, Theory::HC, (0, 4), 6).unwrap();
    assert_eq!(hc.values().copied().collect::<Vec<_>>(), vec![2, 0, 2, 0, 2]);
    let r2 = Ring::new(&["x", "y"]).unwrap();
    let a = FDAlgebra::from_quotient(&Ideal::parse(&r2, &["x^2", "y^2"]).unwrap()).unwrap();
    assert_eq!(a.dim(), 4);
    assert!(a.is_commutative());
    assert!(FDAlgebra::from_quotient(&Ideal::parse(&r2, &["x*y"]).unwrap()).is_err());
}
