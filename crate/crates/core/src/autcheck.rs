//! Candidate algebra maps and their verification: does a proposed
//! assignment of generator images define an endomorphism, is it invertible
//! with an explicit verified inverse, and does it preserve the ideal
//! generated by a discriminant.
//!
//! Candidates are concrete (all parameters already instantiated) and
//! affine; invertibility is decided by the induced matrix on the span of
//! standard monomials of degree at most one.

use crate::ambient::{Ambient, AmbientElement, AmbientKey};
use crate::error::{Error, Result};
use crate::linalg::rref;
use crate::poly::{Poly, VarSet};
use crate::scalar::Scalar;
use std::sync::Arc;

/// Images of the adjoined monoid generators, matching the ambient shape.
#[derive(Debug, Clone, PartialEq)]
pub enum MonoidImages {
    /// Plain PBW ambient: nothing beyond the base generators.
    None,
    /// Skew polynomial ambient: the image of the adjoined variable.
    Ore(AmbientElement),
    /// Group ambient: image of `1#g` for every element, indexed like the
    /// group.
    Group(Vec<AmbientElement>),
}

/// A candidate map given by generator images over a fixed ambient algebra.
#[derive(Clone)]
pub struct CandidateMap {
    ambient: Ambient,
    base_images: Vec<AmbientElement>,
    monoid_images: MonoidImages,
}

impl std::fmt::Debug for CandidateMap {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("CandidateMap")
            .field("base_images", &self.base_images)
            .field("monoid_images", &self.monoid_images)
            .finish_non_exhaustive()
    }
}

fn lift(p: &Poly, target: &Arc<VarSet>) -> Result<Poly> {
    let images: Vec<Poly> = p
        .vars()
        .names()
        .map(|n| Poly::var_named(target, n))
        .collect::<Result<_>>()?;
    p.substitute(target, &images)
}

fn embed_base(amb: &Ambient, p: &Poly) -> Result<AmbientElement> {
    let av = amb.ambient_vars()?;
    amb.from_ambient_poly(&lift(p, &av)?)
}

impl CandidateMap {
    /// Candidate on a plain PBW algebra.
    pub fn pbw(ambient: Ambient, base_images: Vec<AmbientElement>) -> Result<CandidateMap> {
        if ambient.twisted_alg().is_some() {
            return Err(Error::Invalid(
                "twisted ambient needs monoid images".into(),
            ));
        }
        CandidateMap::check_arity(&ambient, &base_images)?;
        Ok(CandidateMap { ambient, base_images, monoid_images: MonoidImages::None })
    }

    /// Candidate on a skew polynomial extension: base images plus the
    /// image of the adjoined variable.
    pub fn ore(
        ambient: Ambient,
        base_images: Vec<AmbientElement>,
        t_image: AmbientElement,
    ) -> Result<CandidateMap> {
        let Some(alg) = ambient.twisted_alg() else {
            return Err(Error::Invalid("ambient has no adjoined variable".into()));
        };
        match alg.monoid().as_ref() {
            crate::action::MonoidPresentation::Numerical(nm) if nm.gens() == [1u64].as_slice() => {}
            _ => {
                return Err(Error::Invalid(
                    "adjoined-variable candidates need the free monoid on one generator"
                        .into(),
                ))
            }
        }
        CandidateMap::check_arity(&ambient, &base_images)?;
        Ok(CandidateMap { ambient, base_images, monoid_images: MonoidImages::Ore(t_image) })
    }

    /// Candidate on a group crossed product: base images plus the image of
    /// each group component.
    pub fn group(
        ambient: Ambient,
        base_images: Vec<AmbientElement>,
        group_images: Vec<AmbientElement>,
    ) -> Result<CandidateMap> {
        let Some(alg) = ambient.twisted_alg() else {
            return Err(Error::Invalid("ambient has no group part".into()));
        };
        let crate::action::MonoidPresentation::Group(g) = alg.monoid().as_ref() else {
            return Err(Error::Invalid("ambient is not a group crossed product".into()));
        };
        if group_images.len() != g.size() {
            return Err(Error::Invalid(format!(
                "{} group images for a group of size {}",
                group_images.len(),
                g.size()
            )));
        }
        CandidateMap::check_arity(&ambient, &base_images)?;
        Ok(CandidateMap {
            ambient,
            base_images,
            monoid_images: MonoidImages::Group(group_images),
        })
    }

    fn check_arity(ambient: &Ambient, base_images: &[AmbientElement]) -> Result<()> {
        let n = ambient.base_pres().num_gens();
        if base_images.len() != n {
            return Err(Error::Invalid(format!(
                "{} base images for {} generators",
                base_images.len(),
                n
            )));
        }
        Ok(())
    }

    pub fn ambient(&self) -> &Ambient {
        &self.ambient
    }

    pub fn base_images(&self) -> &[AmbientElement] {
        &self.base_images
    }

    pub fn monoid_images(&self) -> &MonoidImages {
        &self.monoid_images
    }

    fn monoid_image_of(&self, part: u64) -> Result<AmbientElement> {
        match &self.monoid_images {
            MonoidImages::None => {
                debug_assert_eq!(part, 0);
                Ok(self.ambient.one())
            }
            MonoidImages::Ore(t) => {
                let e = u32::try_from(part)
                    .map_err(|_| Error::CapExceeded("adjoined exponent overflow".into()))?;
                Ok(self.ambient.pow(t, e))
            }
            MonoidImages::Group(imgs) => {
                let i = usize::try_from(part)
                    .map_err(|_| Error::Invalid("group part out of range".into()))?;
                imgs.get(i)
                    .cloned()
                    .ok_or_else(|| Error::Invalid("group part out of range".into()))
            }
        }
    }

    fn apply_base_poly(&self, p: &Poly) -> AmbientElement {
        let amb = &self.ambient;
        let n = self.base_images.len();
        // monomials of one poly share generator powers; build each ladder
        // once, incrementally, instead of a fresh pow per term
        let mut maxes = vec![0u32; n];
        for (mon, _) in p.terms() {
            for (i, &e) in mon.exps().iter().enumerate() {
                maxes[i] = maxes[i].max(e);
            }
        }
        let powers: Vec<Vec<AmbientElement>> = maxes
            .iter()
            .enumerate()
            .map(|(i, &m)| {
                let mut ladder = Vec::with_capacity(m as usize + 1);
                ladder.push(amb.one());
                for _ in 1..=m {
                    ladder.push(amb.mul(ladder.last().expect("nonempty"), &self.base_images[i]));
                }
                ladder
            })
            .collect();
        let mut out = amb.zero();
        for (mon, c) in p.terms() {
            let mut term = amb.one();
            for (i, &e) in mon.exps().iter().enumerate() {
                if e > 0 {
                    term = amb.mul(&term, &powers[i][e as usize]);
                }
            }
            out = amb.add(&out, &amb.scale(&term, c));
        }
        out
    }

    /// Image of an arbitrary element under the multiplicative extension of
    /// the generator images.
    pub fn apply(&self, a: &AmbientElement) -> Result<AmbientElement> {
        let amb = &self.ambient;
        match a {
            AmbientElement::P(p) => Ok(self.apply_base_poly(p)),
            AmbientElement::T(e) => {
                let mut out = amb.zero();
                for (m, p) in e.parts() {
                    let base = self.apply_base_poly(p);
                    let tw = self.monoid_image_of(m)?;
                    out = amb.add(&out, &amb.mul(&base, &tw));
                }
                Ok(out)
            }
        }
    }

    /// Composition `self . other` (apply `other` first).
    pub fn compose(&self, other: &CandidateMap) -> Result<CandidateMap> {
        let base_images = other
            .base_images
            .iter()
            .map(|img| self.apply(img))
            .collect::<Result<Vec<_>>>()?;
        let monoid_images = match &other.monoid_images {
            MonoidImages::None => MonoidImages::None,
            MonoidImages::Ore(t) => MonoidImages::Ore(self.apply(t)?),
            MonoidImages::Group(imgs) => MonoidImages::Group(
                imgs.iter().map(|g| self.apply(g)).collect::<Result<Vec<_>>>()?,
            ),
        };
        Ok(CandidateMap {
            ambient: self.ambient.clone(),
            base_images,
            monoid_images,
        })
    }

    /// Do two candidates have identical images?
    pub fn same_images(&self, other: &CandidateMap) -> bool {
        self.base_images == other.base_images && self.monoid_images == other.monoid_images
    }
}

fn check_residual(amb: &Ambient, relation: String, res: &AmbientElement) -> Result<()> {
    if res.is_zero() {
        Ok(())
    } else {
        Err(Error::NotHomomorphism {
            relation,
            residual: amb.render(res),
        })
    }
}

/// Every defining relation of the ambient algebra must map to zero:
/// the base rewriting relations, and for twisted algebras also the
/// skew-commutation relations with the monoid part and the monoid's own
/// multiplication table.
pub fn is_endomorphism(c: &CandidateMap) -> Result<()> {
    let amb = c.ambient();
    let pres = amb.base_pres().clone();
    let vars = pres.vars().clone();
    for j in 1..pres.num_gens() {
        for i in 0..j {
            let lhs = amb.mul(&c.base_images[j], &c.base_images[i]);
            let q_part = amb.scale(
                &amb.mul(&c.base_images[i], &c.base_images[j]),
                pres.q_coeff(j, i),
            );
            let tail = c.apply(&embed_base(amb, pres.tail(j, i))?)?;
            let res = amb.sub(&lhs, &amb.add(&q_part, &tail));
            check_residual(
                amb,
                format!("{}*{}", vars.name(j), vars.name(i)),
                &res,
            )?;
        }
    }
    let Some(alg) = amb.twisted_alg() else { return Ok(()) };
    let action = alg.action();
    match &c.monoid_images {
        MonoidImages::None => unreachable!("twisted candidates carry monoid images"),
        MonoidImages::Ore(t_img) => {
            let sigma = action.map_of(1);
            for i in 0..pres.num_gens() {
                let lhs = amb.mul(t_img, &c.base_images[i]);
                let rhs = amb.mul(
                    &c.apply(&embed_base(amb, &sigma.apply(&pres.gen(i)))?)?,
                    t_img,
                );
                let res = amb.sub(&lhs, &rhs);
                check_residual(amb, format!("t*{}", vars.name(i)), &res)?;
            }
        }
        MonoidImages::Group(imgs) => {
            let crate::action::MonoidPresentation::Group(g) = alg.monoid().as_ref() else {
                unreachable!("group images over a group monoid")
            };
            let e = g.identity();
            let one = amb.one();
            let res = amb.sub(&imgs[e], &one);
            check_residual(amb, g.label(e).to_string(), &res)?;
            for gi in 0..g.size() {
                if gi == e {
                    continue;
                }
                let sigma = action.map_of(gi as u64);
                for i in 0..pres.num_gens() {
                    let lhs = amb.mul(&imgs[gi], &c.base_images[i]);
                    let rhs = amb.mul(
                        &c.apply(&embed_base(amb, &sigma.apply(&pres.gen(i)))?)?,
                        &imgs[gi],
                    );
                    let res = amb.sub(&lhs, &rhs);
                    check_residual(
                        amb,
                        format!("{}*{}", g.label(gi), vars.name(i)),
                        &res,
                    )?;
                }
            }
            for a in 0..g.size() {
                for b in 0..g.size() {
                    let lhs = amb.mul(&imgs[a], &imgs[b]);
                    let res = amb.sub(&lhs, &imgs[g.product(a, b)]);
                    check_residual(
                        amb,
                        format!("{}*{}", g.label(a), g.label(b)),
                        &res,
                    )?;
                }
            }
        }
    }
    Ok(())
}

fn coords_in_window(
    amb: &Ambient,
    atoms: &[AmbientKey],
    a: &AmbientElement,
    what: &str,
) -> Result<Vec<Scalar>> {
    let order = amb.field_order();
    let mut v = vec![Scalar::zero(order); atoms.len()];
    for (key, c) in amb.coeffs(a) {
        match atoms.binary_search(&key) {
            Ok(i) => v[i] = c,
            Err(_) => {
                return Err(Error::Invalid(format!(
                    "{what} is not affine: {} reaches {:?}",
                    amb.render(a),
                    key
                )))
            }
        }
    }
    Ok(v)
}

/// Invertibility through the induced matrix on standard monomials of
/// degree at most one. Returns the verified inverse candidate.
pub fn is_automorphism(c: &CandidateMap) -> Result<CandidateMap> {
    is_endomorphism(c)?;
    let amb = c.ambient();
    let order = amb.field_order();
    let mut atoms = amb.keys_up_to(1);
    atoms.sort();
    let n = atoms.len();
    let mut aug: Vec<Vec<Scalar>> = Vec::with_capacity(n);
    let mut cols = Vec::with_capacity(n);
    for key in &atoms {
        let img = c.apply(&amb.atom(key))?;
        cols.push(coords_in_window(amb, &atoms, &img, "an image")?);
    }
    for i in 0..n {
        let mut row: Vec<Scalar> = (0..n).map(|j| cols[j][i].clone()).collect();
        for j in 0..n {
            row.push(if i == j { Scalar::one(order) } else { Scalar::zero(order) });
        }
        aug.push(row);
    }
    let pivots = rref(&mut aug);
    if pivots.len() < n || pivots.iter().enumerate().any(|(i, &p)| p != i) {
        return Err(Error::NotInvertible(
            "induced matrix on the degree-one window is singular".into(),
        ));
    }
    let inv_col = |j: usize| -> AmbientElement {
        let mut acc = amb.zero();
        for (k, key) in atoms.iter().enumerate() {
            if !aug[k][n + j].is_zero() {
                acc = amb.add(&acc, &amb.scale(&amb.atom(key), &aug[k][n + j]));
            }
        }
        acc
    };
    let locate = |key: &AmbientKey| -> Result<usize> {
        atoms
            .binary_search(key)
            .map_err(|_| Error::Invalid("a generator falls outside the degree-one window".into()))
    };
    let pres = amb.base_pres();
    let mut base_images = Vec::with_capacity(pres.num_gens());
    for i in 0..pres.num_gens() {
        let key = amb
            .coeffs(&embed_base(amb, &pres.gen(i))?)
            .into_iter()
            .next()
            .expect("a generator is one standard monomial")
            .0;
        base_images.push(inv_col(locate(&key)?));
    }
    let monoid_images = match &c.monoid_images {
        MonoidImages::None => MonoidImages::None,
        MonoidImages::Ore(_) => {
            let key = AmbientKey { part: 1, mon: crate::poly::Mon::one(pres.vars()) };
            MonoidImages::Ore(inv_col(locate(&key)?))
        }
        MonoidImages::Group(imgs) => {
            let mut out = Vec::with_capacity(imgs.len());
            for g in 0..imgs.len() {
                let key = AmbientKey {
                    part: g as u64,
                    mon: crate::poly::Mon::one(pres.vars()),
                };
                out.push(inv_col(locate(&key)?));
            }
            MonoidImages::Group(out)
        }
    };
    let inv = CandidateMap {
        ambient: amb.clone(),
        base_images,
        monoid_images,
    };
    is_endomorphism(&inv)?;
    for i in 0..pres.num_gens() {
        let x = embed_base(amb, &pres.gen(i))?;
        let back = inv.apply(&c.apply(&x)?)?;
        let res = amb.sub(&back, &x);
        check_residual(amb, format!("inverse on {}", pres.vars().name(i)), &res)?;
        let forth = c.apply(&inv.apply(&x)?)?;
        let res = amb.sub(&forth, &x);
        check_residual(amb, format!("inverse on {}", pres.vars().name(i)), &res)?;
    }
    Ok(inv)
}

/// Substitutes the candidate into a discriminant given over the ambient
/// variables; the image must be a nonzero scalar multiple, returned as the
/// witness.
pub fn preserves_disc_ideal(c: &CandidateMap, d: &Poly) -> Result<Scalar> {
    preserves_disc_ideal_factored(c, &[(d.clone(), 1)])
}

/// Same check with the discriminant supplied as a power product. The
/// candidate is multiplicative, so substituting into small factors and
/// multiplying the powers is far cheaper than expanding first.
pub fn preserves_disc_ideal_factored(
    c: &CandidateMap,
    factors: &[(Poly, u32)],
) -> Result<Scalar> {
    let amb = c.ambient();
    let av = amb.ambient_vars()?;
    let mut elem = amb.one();
    let mut img = amb.one();
    for (f, e) in factors {
        let fe = amb.from_ambient_poly(&lift(f, &av)?)?;
        let fi = c.apply(&fe)?;
        elem = amb.mul(&elem, &amb.pow(&fe, *e));
        img = amb.mul(&img, &amb.pow(&fi, *e));
    }
    amb.eq_up_to_scalar(&img, &elem).ok_or_else(|| {
        Error::Invalid(format!(
            "image of the discriminant is not a scalar multiple: {}",
            amb.render(&img)
        ))
    })
}

/// Checks that the candidate maps each given central element back into
/// the subalgebra they generate.
pub fn restricts_to(
    c: &CandidateMap,
    csub: &crate::freemod::CentralSubalgebra,
    degree_cap: u64,
) -> Result<()> {
    for (i, g) in csub.gens().iter().enumerate() {
        let img = c.apply(g)?;
        csub.express_in_generators(&img, degree_cap).map_err(|e| {
            Error::Invalid(format!(
                "image of {} leaves the subalgebra: {e}",
                csub.fvars().name(i)
            ))
        })?;
    }
    Ok(())
}

/// For a group crossed product: the image of `1#g` must be a scalar times
/// `1#g`; returns that scalar.
pub fn group_part_sign(c: &CandidateMap, g: u64) -> Result<Scalar> {
    let amb = c.ambient();
    let img = c.monoid_image_of(g)?;
    let atom = amb.atom(&AmbientKey {
        part: g,
        mon: crate::poly::Mon::one(amb.base_pres().vars()),
    });
    amb.eq_up_to_scalar(&img, &atom).ok_or_else(|| {
        Error::Invalid(format!(
            "group component maps to {}, not a scalar multiple of itself",
            amb.render(&img)
        ))
    })
}

/// One verified sample in a family report.
#[derive(Debug, Clone)]
pub struct SampleOutcome {
    pub label: String,
    pub expected_pass: bool,
    /// `None` when the stage passed, otherwise the failure rendered.
    pub endomorphism: Option<String>,
    pub automorphism: Option<String>,
    pub disc_preserved: Option<String>,
    /// Did the observed outcome match the expectation?
    pub as_expected: bool,
}

#[derive(Debug, Clone)]
pub struct FamilyReport {
    pub family: String,
    pub outcomes: Vec<SampleOutcome>,
    pub all_as_expected: bool,
}

/// Runs every sample through the endomorphism, automorphism, and (when a
/// discriminant is supplied) ideal-preservation checks. Report-valued:
/// a sample tagged as violating is expected to fail at least one stage.
pub fn family_verify(
    family: &str,
    samples: &[(String, CandidateMap, bool)],
    disc: Option<&[(Poly, u32)]>,
) -> FamilyReport {
    let mut outcomes = Vec::with_capacity(samples.len());
    for (label, c, expected_pass) in samples {
        let endomorphism = is_endomorphism(c).err().map(|e| e.to_string());
        let automorphism = if endomorphism.is_none() {
            is_automorphism(c).err().map(|e| e.to_string())
        } else {
            Some("skipped: not an endomorphism".into())
        };
        let disc_preserved = match (&automorphism, disc) {
            (None, Some(d)) => preserves_disc_ideal_factored(c, d)
                .err()
                .map(|e| e.to_string()),
            _ => None,
        };
        let passed =
            endomorphism.is_none() && automorphism.is_none() && disc_preserved.is_none();
        outcomes.push(SampleOutcome {
            label: label.clone(),
            expected_pass: *expected_pass,
            endomorphism,
            automorphism,
            disc_preserved,
            as_expected: passed == *expected_pass,
        });
    }
    let all_as_expected = outcomes.iter().all(|o| o.as_expected);
    FamilyReport {
        family: family.to_string(),
        outcomes,
        all_as_expected,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::action::MonoidAction;
    use crate::pbw::{PbwPresentation, RelationInput};
    use crate::twist::TwistedAlgebra;

    fn v2() -> Arc<PbwPresentation> {
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

    fn plane() -> Arc<PbwPresentation> {
        PbwPresentation::commutative(VarSet::unweighted(&["x", "y"]).unwrap(), 1)
    }

    fn swap_ore_ambient() -> Ambient {
        let pres = plane();
        let vars = pres.vars().clone();
        let swap = crate::action::AlgebraMap::new(
            pres,
            vec![Poly::var(&vars, 1), Poly::var(&vars, 0)],
        )
        .unwrap();
        let action = MonoidAction::ore(swap, 4).unwrap();
        Ambient::twisted(Arc::new(TwistedAlgebra::new(action)), "t").unwrap()
    }

    fn cand(amb: &Ambient, images: &[&str]) -> CandidateMap {
        let parsed: Vec<_> = images.iter().map(|s| amb.parse(s).unwrap()).collect();
        match amb.twisted_alg() {
            None => CandidateMap::pbw(amb.clone(), parsed).unwrap(),
            Some(_) => {
                let n = amb.base_pres().num_gens();
                let (base, rest) = parsed.split_at(n);
                CandidateMap::ore(amb.clone(), base.to_vec(), rest[0].clone()).unwrap()
            }
        }
    }

    #[test]
    fn swap_is_a_self_inverse_automorphism() {
        let amb = Ambient::pbw(v2());
        let c = cand(&amb, &["y", "x"]);
        is_endomorphism(&c).unwrap();
        let inv = is_automorphism(&c).unwrap();
        assert!(inv.same_images(&c));
    }

    #[test]
    fn collapsing_map_fails_the_relation() {
        let amb = Ambient::pbw(v2());
        let c = cand(&amb, &["x", "x"]);
        match is_endomorphism(&c) {
            Err(Error::NotHomomorphism { relation, residual }) => {
                assert_eq!(relation, "y*x");
                assert_eq!(residual, "2*x^2");
            }
            other => panic!("expected a relation failure, got {other:?}"),
        }
    }

    #[test]
    fn affine_family_on_the_swapped_extension() {
        let amb = swap_ore_ambient();
        // Symmetric linear part plus a shared constant; fixes x+y, x*y up
        // to the twist.
        let c = cand(&amb, &["2*x+y+1", "x+2*y+1", "t"]);
        is_endomorphism(&c).unwrap();
        let inv = is_automorphism(&c).unwrap();
        let x = amb.parse("x").unwrap();
        let roundtrip = inv.apply(&c.apply(&x).unwrap()).unwrap();
        assert_eq!(amb.render(&roundtrip), "x");

        // Degenerate linear part: still an endomorphism, not invertible.
        let d = cand(&amb, &["x+y", "x+y", "t"]);
        is_endomorphism(&d).unwrap();
        assert!(matches!(is_automorphism(&d), Err(Error::NotInvertible(_))));
    }

    #[test]
    fn adjoined_variable_may_land_in_the_base() {
        let amb = swap_ore_ambient();
        // x -> x+y-t, y -> x+y+t, t -> y-x: sends the adjoined variable
        // into the base and stays consistent with the swap.
        let c = cand(&amb, &["x+y-t", "x+y+t", "-x+y"]);
        is_endomorphism(&c).unwrap();
        is_automorphism(&c).unwrap();
    }

    #[test]
    fn twisting_relation_catches_bad_adjoined_image() {
        let amb = swap_ore_ambient();
        let c = cand(&amb, &["x", "y", "x"]);
        match is_endomorphism(&c) {
            Err(Error::NotHomomorphism { relation, .. }) => {
                assert_eq!(relation, "t*x");
            }
            other => panic!("expected a twist failure, got {other:?}"),
        }
    }

    #[test]
    fn disc_ideal_witnesses() {
        let amb = Ambient::pbw(v2());
        let d = {
            let vars = amb.base_pres().vars().clone();
            crate::parse::parse_poly(&vars, 1, "x^4*y^4").unwrap()
        };
        let id = cand(&amb, &["x", "y"]);
        assert!(preserves_disc_ideal(&id, &d).unwrap().is_one());
        let scalemap = cand(&amb, &["2*x", "y"]);
        let w = preserves_disc_ideal(&scalemap, &d).unwrap();
        assert_eq!(w, Scalar::from_int(1, 16));

        let plane_amb = Ambient::pbw(plane());
        let dsym = {
            let vars = plane_amb.base_pres().vars().clone();
            crate::parse::parse_poly(&vars, 1, "(x-y)^2").unwrap()
        };
        let skew = cand(&plane_amb, &["2*x", "y"]);
        assert!(preserves_disc_ideal(&skew, &dsym).is_err());
        // Translations preserve the difference.
        let shift = cand(&plane_amb, &["x+1", "y+1"]);
        assert!(preserves_disc_ideal(&shift, &dsym).unwrap().is_one());
    }

    #[test]
    fn restriction_to_a_subalgebra() {
        let amb = Ambient::pbw(v2());
        let csub = crate::freemod::CentralSubalgebra::new(
            amb.clone(),
            vec!["f1".into(), "f2".into()],
            vec![amb.parse("x^2").unwrap(), amb.parse("y^2").unwrap()],
        )
        .unwrap();
        let swap = cand(&amb, &["y", "x"]);
        restricts_to(&swap, &csub, 8).unwrap();
        let shear = cand(&amb, &["x", "2*y"]);
        restricts_to(&shear, &csub, 8).unwrap();
    }

    fn crossed_ambient() -> Ambient {
        let alg = Arc::new(TwistedAlgebra::skew_group_symmetric(v2(), 2).unwrap());
        Ambient::twisted(alg, "t").unwrap()
    }

    #[test]
    fn crossed_product_scaling_family() {
        let amb = crossed_ambient();
        let base = vec![amb.parse("2*x#e").unwrap(), amb.parse("2*y#e").unwrap()];
        let gimgs = vec![amb.parse("1#e").unwrap(), amb.parse("1#g21").unwrap()];
        let c = CandidateMap::group(amb.clone(), base, gimgs).unwrap();
        is_endomorphism(&c).unwrap();
        is_automorphism(&c).unwrap();
        assert!(group_part_sign(&c, 1).unwrap().is_one());

        // Scaling the group component breaks the table.
        let base = vec![amb.parse("x#e").unwrap(), amb.parse("y#e").unwrap()];
        let gimgs = vec![amb.parse("1#e").unwrap(), amb.parse("2#g21").unwrap()];
        let bad = CandidateMap::group(amb.clone(), base, gimgs).unwrap();
        match is_endomorphism(&bad) {
            Err(Error::NotHomomorphism { relation, .. }) => {
                assert_eq!(relation, "g21*g21");
            }
            other => panic!("expected a table failure, got {other:?}"),
        }
    }

    #[test]
    fn composition_stays_in_the_family() {
        let amb = swap_ore_ambient();
        let a = cand(&amb, &["2*x+y", "x+2*y", "3*t"]);
        let b = cand(&amb, &["x+y+1", "x+y+1", "t"]); // not invertible, fine for compose
        let ab = a.compose(&b).unwrap();
        is_endomorphism(&ab).unwrap();
        let c = cand(&amb, &["3*x+y", "x+3*y", "t"]);
        let ac = a.compose(&c).unwrap();
        is_endomorphism(&ac).unwrap();
        is_automorphism(&ac).unwrap();
    }

    #[test]
    fn family_report_separates_expectations() {
        let amb = Ambient::pbw(v2());
        let samples = vec![
            ("swap".to_string(), cand(&amb, &["y", "x"]), true),
            ("scale".to_string(), cand(&amb, &["2*x", "3*y"]), true),
            ("collapse".to_string(), cand(&amb, &["x", "x"]), false),
            ("shift".to_string(), cand(&amb, &["x+1", "y"]), false),
        ];
        let d = vec![(
            crate::parse::parse_poly(amb.base_pres().vars(), 1, "x^4*y^4").unwrap(),
            1,
        )];
        let report = family_verify("sign-commuting plane", &samples, Some(&d));
        assert!(report.all_as_expected, "{:?}", report.outcomes);
    }
}
