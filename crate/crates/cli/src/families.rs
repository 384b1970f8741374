//! Parameterized families of candidate maps on the bundled extensions,
//! with the expected verdict for each sample. These exercise the map
//! checker on both honest automorphisms and designed failures.

use std::sync::Arc;

use ncdisc_core::action::AlgebraMap;
use ncdisc_core::ambient::Ambient;
use ncdisc_core::autcheck::{self, CandidateMap, FamilyReport};
use ncdisc_core::parse::parse_poly;
use ncdisc_core::pbw::{PbwPresentation, RelationInput};
use ncdisc_core::twist::TwistedAlgebra;
use ncdisc_core::{Poly, Result, Scalar, VarSet};

pub struct Family {
    pub name: &'static str,
    pub about: &'static str,
    pub ambient: Ambient,
    /// Discriminant of the bundled extension, over the ambient variables.
    pub disc: Vec<(Poly, u32)>,
    /// (label, candidate, expected to pass all checks)
    pub samples: Vec<(String, CandidateMap, bool)>,
}

impl Family {
    pub fn verify(&self) -> FamilyReport {
        autcheck::family_verify(self.name, &self.samples, Some(&self.disc))
    }
}

fn ore_sample(
    ambient: &Ambient,
    label: String,
    x: &str,
    y: &str,
    t: &str,
    ok: bool,
) -> Result<(String, CandidateMap, bool)> {
    let c = CandidateMap::ore(
        ambient.clone(),
        vec![ambient.parse(x)?, ambient.parse(y)?],
        ambient.parse(t)?,
    )?;
    Ok((label, c, ok))
}

fn swap_ambient(pres: Arc<PbwPresentation>) -> Result<Ambient> {
    let vars = pres.vars().clone();
    let sigma = AlgebraMap::new(
        pres,
        vec![Poly::var(&vars, 1), Poly::var(&vars, 0)],
    )?;
    let alg = TwistedAlgebra::skew_polynomial(sigma, 8)?;
    Ambient::twisted(Arc::new(alg), "t")
}

/// Discriminant as a power product of small factors; substitution into
/// candidates stays cheap this way.
fn factored(
    avars: &std::sync::Arc<VarSet>,
    parts: &[(&str, u32)],
) -> Result<Vec<(Poly, u32)>> {
    parts
        .iter()
        .map(|(s, e)| Ok((parse_poly(avars, 1, s)?, *e)))
        .collect()
}

/// Affine maps of the commutative plane extended by a swapping variable.
/// One branch fixes each plane axis direction, the other exchanges the
/// roles of the plane difference and the adjoined variable.
pub fn affine_swap_plane() -> Result<Family> {
    let vars = VarSet::unweighted(&["x", "y"])?;
    let pres = PbwPresentation::commutative(vars, 1);
    let ambient = swap_ambient(pres)?;
    let avars = ambient.ambient_vars()?;
    let disc = factored(&avars, &[("x-y", 4), ("t", 4)])?;
    let mut samples = Vec::new();
    // symmetric affine images: invertible exactly when a^2 != b^2 and c != 0
    for (a, b, c, d, ok) in [
        (2i64, 1i64, 1i64, 0i64, true),
        (1, 0, 2, 3, true),
        (3, 2, -1, 1, true),
        (0, 1, 1, 5, true),
        (5, 3, 2, -2, true),
        (1, 1, 1, 0, false),
        (2, 1, 0, 0, false),
    ] {
        samples.push(ore_sample(
            &ambient,
            format!("symmetric a={a} b={b} c={c} d={d}"),
            &format!("({a})*x + ({b})*y + ({d})"),
            &format!("({b})*x + ({a})*y + ({d})"),
            &format!("({c})*t"),
            ok,
        )?);
    }
    // antisymmetric images trading the plane difference for the adjoined
    // variable: invertible exactly when a*b*c != 0
    for (a, b, c, d, ok) in [
        (1i64, 1i64, 1i64, 0i64, true),
        (2, 1, 3, 0, true),
        (1, 2, -1, 4, true),
        (-1, 1, 2, 1, true),
        (3, -2, 1, -1, true),
        (0, 1, 1, 0, false),
        (1, 0, 1, 0, false),
        (1, 1, 0, 0, false),
    ] {
        samples.push(ore_sample(
            &ambient,
            format!("antisymmetric a={a} b={b} c={c} d={d}"),
            &format!("({a})*x + ({a})*y - ({b})*t + ({d})"),
            &format!("({a})*x + ({a})*y + ({b})*t + ({d})"),
            &format!("({c})*y - ({c})*x"),
            ok,
        )?);
    }
    Ok(Family {
        name: "affine-swap-plane",
        about: "affine candidates on the commutative plane with a swapping adjoined variable",
        ambient,
        disc,
        samples,
    })
}

fn sign_plane(tail_one: bool) -> Result<Arc<PbwPresentation>> {
    let vars = VarSet::unweighted(&["x", "y"])?;
    let tail = if tail_one {
        Poly::one(&vars)
    } else {
        Poly::zero(&vars)
    };
    PbwPresentation::new(
        vars,
        1,
        vec![RelationInput {
            upper: "y".into(),
            lower: "x".into(),
            q: Scalar::from_int(1, -1),
            tail,
        }],
    )
}

/// Scalings of the sign-commuting plane extended by a swapping variable.
/// The twisting relation forces the same scale on both generators.
pub fn scaled_sign_swap() -> Result<Family> {
    let ambient = swap_ambient(sign_plane(false)?)?;
    let avars = ambient.ambient_vars()?;
    let disc = factored(&avars, &[("x", 16), ("y", 16), ("x^2-y^2", 16), ("t", 16)])?;
    let mut samples = Vec::new();
    for (a, b) in [(1i64, 1i64), (2, 3), (-1, 2), (5, 1), (3, -2)] {
        samples.push(ore_sample(
            &ambient,
            format!("scale a={a} b={b}"),
            &format!("({a})*x"),
            &format!("({a})*y"),
            &format!("({b})*t"),
            true,
        )?);
    }
    for (a, b) in [(1i64, 1i64), (2, 1), (-1, 3), (4, -1), (3, 2)] {
        samples.push(ore_sample(
            &ambient,
            format!("swap-scale a={a} b={b}"),
            &format!("({a})*y"),
            &format!("({a})*x"),
            &format!("({b})*t"),
            true,
        )?);
    }
    for (label, x, y, t) in [
        ("mixed images", "x + y", "x - y", "t"),
        ("adjoined to a generator", "x", "y", "x"),
        ("unequal scales", "2*x", "y", "t"),
    ] {
        samples.push(ore_sample(&ambient, label.to_string(), x, y, t, false)?);
    }
    Ok(Family {
        name: "scaled-sign-swap",
        about: "scalings of the sign-commuting plane with a swapping adjoined variable",
        ambient,
        disc,
        samples,
    })
}

/// Scalings of the tail-one plane extended by a swapping variable. The
/// tail pins the product of the two scales, the twist pins their ratio.
pub fn scaled_weyl_swap() -> Result<Family> {
    let ambient = swap_ambient(sign_plane(true)?)?;
    let avars = ambient.ambient_vars()?;
    let disc = factored(
        &avars,
        &[("4*x^2*y^2-1", 8), ("x^2-y^2", 16), ("t", 16)],
    )?;
    let mut samples = Vec::new();
    for (a, b) in [(1i64, 1i64), (1, 5), (-1, 1), (-1, 3), (1, -2)] {
        samples.push(ore_sample(
            &ambient,
            format!("scale a={a} b={b}"),
            &format!("({a})*x"),
            &format!("({a})*y"),
            &format!("({b})*t"),
            true,
        )?);
    }
    for (a, b) in [(1i64, 1i64), (1, 2), (-1, 1), (-1, -2), (1, 7)] {
        samples.push(ore_sample(
            &ambient,
            format!("swap-scale a={a} b={b}"),
            &format!("({a})*y"),
            &format!("({a})*x"),
            &format!("({b})*t"),
            true,
        )?);
    }
    for (label, x, y, t) in [
        ("scale off the unit circle", "2*x", "y", "t"),
        ("swapped scale off the unit circle", "3*y", "x", "t"),
        ("adjoined to a generator", "x", "y", "x"),
    ] {
        samples.push(ore_sample(&ambient, label.to_string(), x, y, t, false)?);
    }
    Ok(Family {
        name: "scaled-weyl-swap",
        about: "scalings of the tail-one plane with a swapping adjoined variable",
        ambient,
        disc,
        samples,
    })
}

/// Scalings of the graded tail-t^2 algebra with central t. The tail ties
/// the adjoined scale to the two generator scales.
pub fn graded_weyl_scalings() -> Result<Family> {
    let vars = VarSet::unweighted(&["x", "y", "t"])?;
    let tail = parse_poly(&vars, 1, "t^2")?;
    let pres = PbwPresentation::new(
        vars,
        1,
        vec![RelationInput {
            upper: "y".into(),
            lower: "x".into(),
            q: Scalar::from_int(1, -1),
            tail,
        }],
    )?;
    let ambient = Ambient::pbw(pres);
    let avars = ambient.ambient_vars()?;
    let disc = factored(&avars, &[("4*x^2*y^2-t^4", 2)])?;
    let mk = |label: String, x: &str, y: &str, t: &str, ok: bool| -> Result<(String, CandidateMap, bool)> {
        let c = CandidateMap::pbw(
            ambient.clone(),
            vec![ambient.parse(x)?, ambient.parse(y)?, ambient.parse(t)?],
        )?;
        Ok((label, c, ok))
    };
    let mut samples = Vec::new();
    for (a, b, c, ok) in [
        (1i64, 1i64, 1i64, true),
        (1, 4, 2, true),
        (4, 1, 2, true),
        (2, 2, 2, true),
        (9, 1, 3, true),
        (1, 1, -1, true),
        (1, 1, 2, false),
        (2, 1, 1, false),
    ] {
        samples.push(mk(
            format!("scale a={a} b={b} c={c}"),
            &format!("({a})*x"),
            &format!("({b})*y"),
            &format!("({c})*t"),
            ok,
        )?);
    }
    for (a, b, c, ok) in [
        (1i64, 1i64, 1i64, true),
        (1, 4, 2, true),
        (2, 2, 2, true),
        (4, 4, 4, true),
        (9, 1, -3, true),
        (3, 3, 2, false),
    ] {
        samples.push(mk(
            format!("swap-scale a={a} b={b} c={c}"),
            &format!("({a})*y"),
            &format!("({b})*x"),
            &format!("({c})*t"),
            ok,
        )?);
    }
    Ok(Family {
        name: "graded-weyl-scalings",
        about: "generator scalings of the graded tail algebra with central adjoined variable",
        ambient,
        disc,
        samples,
    })
}

/// Candidates on the sign-commuting plane crossed with the order-two
/// permutation group. A candidate sends each generator to a two-part
/// element and the swap to a signed copy of itself; it is a homomorphism
/// exactly when 2ab + c^2 + d^2 = 0 and (a+b)(c+d) = 0.
pub fn crossed_plane_candidates() -> Result<Family> {
    let pres = sign_plane(false)?;
    let alg = TwistedAlgebra::skew_group_symmetric(pres, 2)?;
    let ambient = Ambient::twisted(Arc::new(alg), "t")?;
    let avars = ambient.ambient_vars()?;
    let disc = factored(&avars, &[("x", 16), ("y", 16), ("x^2-y^2", 16)])?;
    let mk = |label: String, a: i64, b: i64, c: i64, d: i64, s: i64, ok: bool| -> Result<(String, CandidateMap, bool)> {
        let x = format!("(({a})*x + ({b})*y)#e + (({c})*x + ({d})*y)#g21");
        let y = format!("(({b})*x + ({a})*y)#e + (({d})*x + ({c})*y)#g21");
        let cand = CandidateMap::group(
            ambient.clone(),
            vec![ambient.parse(&x)?, ambient.parse(&y)?],
            vec![ambient.one(), ambient.parse(&format!("({s})#g21"))?],
        )?;
        Ok((label, cand, ok))
    };
    let mut samples = Vec::new();
    // plain scalings (b = c = d = 0), either sign on the group part
    for (a, s) in [(1i64, 1i64), (2, 1), (-1, -1), (3, -1), (5, 1)] {
        samples.push(mk(format!("scaling a={a} s={s}"), a, 0, 0, 0, s, true)?);
    }
    // one-part-mixing branch: c = -d, a = -d^2/b
    for (b, d) in [(1i64, 2i64), (4, 2), (1, 0), (9, 3), (1, 3)] {
        let a = -(d * d) / b;
        samples.push(mk(
            format!("mixing b={b} d={d}"),
            a,
            b,
            -d,
            d,
            1,
            true,
        )?);
    }
    // antisymmetric branch: b = -a, 2a^2 = c^2 + d^2
    for (c, d, a, s) in [
        (1i64, 1i64, 1i64, 1i64),
        (7, 1, 5, 1),
        (1, 7, 5, -1),
        (2, 14, 10, 1),
        (7, 17, 13, 1),
    ] {
        samples.push(mk(
            format!("antisymmetric c={c} d={d} a={a} s={s}"),
            a,
            -a,
            c,
            d,
            s,
            true,
        )?);
    }
    samples.push(mk("unbalanced parts".into(), 1, 1, 1, 1, 1, false)?);
    samples.push(mk("wrong antisymmetric scale".into(), 2, -2, 1, 1, 1, false)?);
    samples.push(mk("degenerate mixing".into(), -1, 1, -1, 1, 1, false)?);
    // a legal pair of generator images with an unscaled group part of the
    // wrong size
    let x = "(2)*x#e".to_string();
    let y = "(2)*y#e".to_string();
    let bad_group = CandidateMap::group(
        ambient.clone(),
        vec![ambient.parse(&x)?, ambient.parse(&y)?],
        vec![ambient.one(), ambient.parse("(2)#g21")?],
    )?;
    samples.push(("doubled group part".into(), bad_group, false));
    Ok(Family {
        name: "crossed-plane-candidates",
        about: "two-part candidates on the sign-commuting plane crossed with its swap",
        ambient,
        disc,
        samples,
    })
}

pub fn all() -> Result<Vec<Family>> {
    Ok(vec![
        affine_swap_plane()?,
        scaled_sign_swap()?,
        scaled_weyl_swap()?,
        graded_weyl_scalings()?,
        crossed_plane_candidates()?,
    ])
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_family_sample_matches_its_expectation() {
        for family in all().unwrap() {
            let report = family.verify();
            for o in &report.outcomes {
                assert!(
                    o.as_expected,
                    "{}: sample `{}` expected pass={} but endo={:?} auto={:?} disc={:?}",
                    family.name,
                    o.label,
                    o.expected_pass,
                    o.endomorphism,
                    o.automorphism,
                    o.disc_preserved
                );
            }
            assert!(report.all_as_expected);
        }
    }

    #[test]
    fn group_parts_of_passing_crossed_samples_are_signs() {
        let family = crossed_plane_candidates().unwrap();
        for (label, cand, ok) in &family.samples {
            if !ok {
                continue;
            }
            let s = ncdisc_core::autcheck::group_part_sign(cand, 1).unwrap();
            assert!(
                s == Scalar::one(1) || s == Scalar::from_int(1, -1),
                "{label}: group part scale {s} is not a sign"
            );
        }
    }
}
