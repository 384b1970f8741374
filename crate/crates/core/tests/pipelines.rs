//! Cross-module pipelines: direct determinants on rank-8 modules, closed
//! forms checked against direct computation, and randomized trace laws.

use std::sync::Arc;

use ncdisc_core::action::{AlgebraMap, MonoidAction};
use ncdisc_core::ambient::{Ambient, AmbientElement};
use ncdisc_core::disc::{
    discriminant_direct, formula_ore, formula_skgrp, left_mult_matrix, trace,
};
use ncdisc_core::freemod::{CentralSubalgebra, FreeModuleStructure};
use ncdisc_core::parse::parse_poly;
use ncdisc_core::pbw::{PbwPresentation, RelationInput};
use ncdisc_core::twist::TwistedAlgebra;
use ncdisc_core::{Poly, Scalar, VarSet};

use proptest::prelude::*;

fn sign_commuting() -> Arc<PbwPresentation> {
    let vars = VarSet::unweighted(&["x", "y"]).unwrap();
    PbwPresentation::new(
        vars.clone(),
        1,
        vec![RelationInput {
            upper: "y".into(),
            lower: "x".into(),
            q: Scalar::from_int(1, -1),
            tail: Poly::zero(&vars),
        }],
    )
    .unwrap()
}

fn weyl_like() -> Arc<PbwPresentation> {
    let vars = VarSet::unweighted(&["x", "y"]).unwrap();
    PbwPresentation::new(
        vars.clone(),
        1,
        vec![RelationInput {
            upper: "y".into(),
            lower: "x".into(),
            q: Scalar::from_int(1, -1),
            tail: Poly::one(&vars),
        }],
    )
    .unwrap()
}

fn rank_eight(amb: &Ambient) -> FreeModuleStructure {
    let csub = CentralSubalgebra::new(
        amb.clone(),
        vec!["X".into(), "Y".into()],
        vec![amb.parse("x^2+y^2").unwrap(), amb.parse("x^2*y^2").unwrap()],
    )
    .unwrap();
    let basis = ["1", "x", "y", "x*y", "x^2", "x^3", "x^2*y", "x^3*y"]
        .iter()
        .map(|s| amb.parse(s).unwrap())
        .collect();
    FreeModuleStructure::new(csub, basis, None, None).unwrap()
}

#[test]
fn weyl_like_over_symmetric_invariants() {
    let amb = Ambient::pbw(weyl_like());
    let f = rank_eight(&amb);
    let d = discriminant_direct(&f).unwrap();
    let fvars = f.subalgebra().fvars().clone();
    let expected = parse_poly(&fvars, 1, "(4*Y-1)^4*(X^2-4*Y)^4").unwrap();
    assert!(d.normalized.unwrap().eq_up_to_scalar(&expected).is_some());
}

#[test]
fn sign_commuting_over_symmetric_invariants() {
    let amb = Ambient::pbw(sign_commuting());
    let f = rank_eight(&amb);
    let d = discriminant_direct(&f).unwrap();
    let fvars = f.subalgebra().fvars().clone();
    let expected = parse_poly(&fvars, 1, "Y^4*(X^2-4*Y)^4").unwrap();
    assert!(d.normalized.unwrap().eq_up_to_scalar(&expected).is_some());
}

#[test]
fn skew_extension_direct_matches_closed_form() {
    // Commutative plane, then a degree-one twist swapping the variables.
    let pres = PbwPresentation::commutative(VarSet::unweighted(&["x", "y"]).unwrap(), 1);
    let vars = pres.vars().clone();
    let swap = AlgebraMap::new(
        pres.clone(),
        vec![Poly::var(&vars, 1), Poly::var(&vars, 0)],
    )
    .unwrap();

    // Downstairs: the plane over the symmetric pair.
    let base_amb = Ambient::pbw(pres.clone());
    let base_csub = CentralSubalgebra::new(
        base_amb.clone(),
        vec!["e1".into(), "e2".into()],
        vec![base_amb.parse("x+y").unwrap(), base_amb.parse("x*y").unwrap()],
    )
    .unwrap();
    let base_mod = FreeModuleStructure::new(
        base_csub,
        vec![base_amb.parse("1").unwrap(), base_amb.parse("x").unwrap()],
        None,
        None,
    )
    .unwrap();
    let d_base = discriminant_direct(&base_mod).unwrap();

    // Upstairs: adjoin t with the swap, rank four over invariants plus t^2.
    let action = MonoidAction::ore(swap, 4).unwrap();
    let alg = Arc::new(TwistedAlgebra::new(action));
    let amb = Ambient::twisted(alg, "t").unwrap();
    let csub = CentralSubalgebra::new(
        amb.clone(),
        vec!["e1".into(), "e2".into(), "T".into()],
        vec![
            amb.parse("x+y").unwrap(),
            amb.parse("x*y").unwrap(),
            amb.parse("t^2").unwrap(),
        ],
    )
    .unwrap();
    let f = FreeModuleStructure::new(
        csub,
        ["1", "x", "t", "x*t"].iter().map(|s| amb.parse(s).unwrap()).collect(),
        None,
        None,
    )
    .unwrap();
    let direct = discriminant_direct(&f).unwrap();
    let assembled = formula_ore(&d_base, 2, 2, "t").unwrap();
    assert!(direct.ambient.eq_up_to_scalar(&assembled.ambient).is_some());
}

#[test]
fn crossed_product_square_matches_direct() {
    // Group of order two crossed with the plane, over the invariants.
    let pres = PbwPresentation::commutative(VarSet::unweighted(&["x", "y"]).unwrap(), 1);
    let action = MonoidAction::permutations(pres.clone(), 2).unwrap();
    let alg = Arc::new(TwistedAlgebra::new(action));
    let amb = Ambient::twisted(alg, "g").unwrap();
    let csub = CentralSubalgebra::new(
        amb.clone(),
        vec!["e1".into(), "e2".into()],
        vec![amb.parse("x+y").unwrap(), amb.parse("x*y").unwrap()],
    )
    .unwrap();
    let f = FreeModuleStructure::new(
        csub,
        ["1#e", "x#e", "1#g21", "x#g21"]
            .iter()
            .map(|s| amb.parse(s).unwrap())
            .collect(),
        None,
        None,
    )
    .unwrap();
    let direct = discriminant_direct(&f).unwrap();

    let base_amb = Ambient::pbw(pres);
    let base_csub = CentralSubalgebra::new(
        base_amb.clone(),
        vec!["e1".into(), "e2".into()],
        vec![base_amb.parse("x+y").unwrap(), base_amb.parse("x*y").unwrap()],
    )
    .unwrap();
    let base_mod = FreeModuleStructure::new(
        base_csub,
        vec![base_amb.parse("1").unwrap(), base_amb.parse("x").unwrap()],
        None,
        None,
    )
    .unwrap();
    let d_base = discriminant_direct(&base_mod).unwrap();
    let assembled = formula_skgrp(&d_base, 2).unwrap();
    assert!(direct
        .normalized
        .unwrap()
        .eq_up_to_scalar(assembled.normalized.as_ref().unwrap())
        .is_some());
}

#[test]
fn alternative_basis_same_discriminant() {
    let amb = Ambient::pbw(sign_commuting());
    let csub = || {
        CentralSubalgebra::new(
            amb.clone(),
            vec!["f1".into(), "f2".into()],
            vec![amb.parse("x^2").unwrap(), amb.parse("y^2").unwrap()],
        )
        .unwrap()
    };
    let pick = |names: &[&str]| {
        FreeModuleStructure::new(
            csub(),
            names.iter().map(|s| amb.parse(s).unwrap()).collect(),
            None,
            None,
        )
        .unwrap()
    };
    let d1 = discriminant_direct(&pick(&["1", "x", "y", "x*y"])).unwrap();
    let d2 = discriminant_direct(&pick(&["1", "x", "y", "x+y+x*y"])).unwrap();
    assert!(d1
        .normalized
        .unwrap()
        .eq_up_to_scalar(d2.normalized.as_ref().unwrap())
        .is_some());
}

fn small_poly() -> impl Strategy<Value = Vec<(u32, u32, i64)>> {
    proptest::collection::vec(((0u32..3), (0u32..3), (-4i64..5)), 1..4)
}

fn build(amb: &Ambient, spec: &[(u32, u32, i64)]) -> AmbientElement {
    let vars = amb.base_pres().vars().clone();
    let mut p = Poly::zero(&vars);
    for &(a, b, c) in spec {
        let m = Poly::var(&vars, 0).pow(a).mul(&Poly::var(&vars, 1).pow(b));
        p = p.add(&m.scale(&Scalar::from_int(1, c)));
    }
    amb.from_ambient_poly(&p).unwrap()
}

fn rank_four(pres: Arc<PbwPresentation>) -> (Ambient, FreeModuleStructure) {
    let amb = Ambient::pbw(pres);
    let csub = CentralSubalgebra::new(
        amb.clone(),
        vec!["f1".into(), "f2".into()],
        vec![amb.parse("x^2").unwrap(), amb.parse("y^2").unwrap()],
    )
    .unwrap();
    let f = FreeModuleStructure::new(
        csub,
        ["1", "x", "y", "x*y"].iter().map(|s| amb.parse(s).unwrap()).collect(),
        None,
        None,
    )
    .unwrap();
    (amb, f)
}

// The structures cache row-reduced solvers, so share them across cases.
fn sign_fixture() -> &'static (Ambient, FreeModuleStructure) {
    static F: std::sync::OnceLock<(Ambient, FreeModuleStructure)> = std::sync::OnceLock::new();
    F.get_or_init(|| rank_four(sign_commuting()))
}

fn weyl_fixture() -> &'static (Ambient, FreeModuleStructure) {
    static F: std::sync::OnceLock<(Ambient, FreeModuleStructure)> = std::sync::OnceLock::new();
    F.get_or_init(|| rank_four(weyl_like()))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn trace_is_linear(sa in small_poly(), sb in small_poly()) {
        let (amb, f) = sign_fixture();
        let a = build(amb, &sa);
        let b = build(amb, &sb);
        let lhs = trace(f, &amb.add(&a, &b)).unwrap();
        let rhs = trace(f, &a).unwrap().add(&trace(f, &b).unwrap());
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn trace_of_products_commutes(sa in small_poly(), sb in small_poly()) {
        let (amb, f) = weyl_fixture();
        let a = build(amb, &sa);
        let b = build(amb, &sb);
        let ab = trace(f, &amb.mul(&a, &b)).unwrap();
        let ba = trace(f, &amb.mul(&b, &a)).unwrap();
        prop_assert_eq!(ab, ba);
    }

    #[test]
    fn multiplication_matrices_compose(sa in small_poly(), sb in small_poly()) {
        let (amb, f) = sign_fixture();
        let a = build(amb, &sa);
        let b = build(amb, &sb);
        let la = left_mult_matrix(f, &a).unwrap();
        let lb = left_mult_matrix(f, &b).unwrap();
        let lab = left_mult_matrix(f, &amb.mul(&a, &b)).unwrap();
        let n = f.rank();
        for i in 0..n {
            for j in 0..n {
                let mut acc = Poly::zero(f.subalgebra().fvars());
                for k in 0..n {
                    acc = acc.add(&la[i][k].mul(&lb[k][j]));
                }
                prop_assert_eq!(&acc, &lab[i][j]);
            }
        }
    }
}
