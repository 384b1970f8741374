//! A uniform handle on the two algebra shapes the module layer works over:
//! plain PBW algebras, and twisted products of a PBW algebra with a monoid.
//!
//! Everything downstream (free-module bases, trace forms, discriminants)
//! manipulates `AmbientElement`s through an `Ambient`, so the same solver
//! code serves `V_2` over its center and `V_2 # S_2` over the invariants
//! without duplication.

use std::sync::Arc;

use crate::action::MonoidPresentation;
use crate::error::{Error, Result};
use crate::parse::parse_poly;
use crate::pbw::PbwPresentation;
use crate::poly::{Mon, Poly, VarSet};
use crate::scalar::Scalar;
use crate::twist::{TwistedAlgebra, TwistedElement};

/// An algebra elements can live in: a PBW presentation on its own, or a
/// twisted product with a monoid. The twisted variant carries the display
/// name used for the adjoined monoid variable in the numerical case.
#[derive(Clone)]
pub enum Ambient {
    Pbw(Arc<PbwPresentation>),
    Twisted { alg: Arc<TwistedAlgebra>, t_name: String },
}

/// Element of an `Ambient`. Which variant applies is determined by the
/// ambient; mixing them is a caller bug and the operations panic on it.
#[derive(Debug, Clone, PartialEq)]
pub enum AmbientElement {
    P(Poly),
    T(TwistedElement),
}

/// Index of a standard monomial: the monoid part (0 / identity for plain
/// PBW algebras) and the commutative exponent monomial of the base.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct AmbientKey {
    pub part: u64,
    pub mon: Mon,
}

impl AmbientElement {
    pub fn is_zero(&self) -> bool {
        match self {
            AmbientElement::P(p) => p.is_zero(),
            AmbientElement::T(t) => t.is_zero(),
        }
    }
}

impl Ambient {
    pub fn pbw(pres: Arc<PbwPresentation>) -> Ambient {
        Ambient::Pbw(pres)
    }

    /// Wrap a twisted algebra, naming the adjoined variable `t_name` when the
    /// monoid is numerical. The name must not collide with a base variable.
    pub fn twisted(alg: Arc<TwistedAlgebra>, t_name: &str) -> Result<Ambient> {
        if matches!(alg.monoid().as_ref(), MonoidPresentation::Numerical(_)) {
            // Checks both the identifier shape and the collision.
            alg.base().vars().extended(t_name, 1)?;
        }
        Ok(Ambient::Twisted { alg, t_name: t_name.to_string() })
    }

    pub fn base_pres(&self) -> &Arc<PbwPresentation> {
        match self {
            Ambient::Pbw(p) => p,
            Ambient::Twisted { alg, .. } => alg.base(),
        }
    }

    pub fn twisted_alg(&self) -> Option<&Arc<TwistedAlgebra>> {
        match self {
            Ambient::Pbw(_) => None,
            Ambient::Twisted { alg, .. } => Some(alg),
        }
    }

    pub fn field_order(&self) -> u32 {
        self.base_pres().field_order()
    }

    fn is_numerical(&self) -> bool {
        matches!(
            self,
            Ambient::Twisted { alg, .. }
                if matches!(alg.monoid().as_ref(), MonoidPresentation::Numerical(_))
        )
    }

    /// Variable set of rendered/normal forms: the base variables, plus the
    /// monoid variable when a numerical monoid is adjoined.
    pub fn ambient_vars(&self) -> Result<Arc<VarSet>> {
        match self {
            Ambient::Pbw(p) => Ok(p.vars().clone()),
            Ambient::Twisted { alg, t_name } => {
                if self.is_numerical() {
                    alg.base().vars().extended(t_name, 1)
                } else {
                    Ok(alg.base().vars().clone())
                }
            }
        }
    }

    pub fn zero(&self) -> AmbientElement {
        match self {
            Ambient::Pbw(p) => AmbientElement::P(p.zero()),
            Ambient::Twisted { .. } => AmbientElement::T(TwistedElement::zero()),
        }
    }

    pub fn one(&self) -> AmbientElement {
        match self {
            Ambient::Pbw(p) => AmbientElement::P(p.one()),
            Ambient::Twisted { alg, .. } => AmbientElement::T(alg.one()),
        }
    }

    pub fn constant(&self, c: Scalar) -> AmbientElement {
        match self {
            Ambient::Pbw(p) => AmbientElement::P(Poly::constant(p.vars(), c)),
            Ambient::Twisted { alg, .. } => {
                AmbientElement::T(alg.embed(&Poly::constant(alg.base().vars(), c)))
            }
        }
    }

    pub fn add(&self, a: &AmbientElement, b: &AmbientElement) -> AmbientElement {
        match (a, b) {
            (AmbientElement::P(x), AmbientElement::P(y)) => AmbientElement::P(x.add(y)),
            (AmbientElement::T(x), AmbientElement::T(y)) => AmbientElement::T(x.add(y)),
            _ => panic!("mixed ambient element shapes"),
        }
    }

    pub fn sub(&self, a: &AmbientElement, b: &AmbientElement) -> AmbientElement {
        match (a, b) {
            (AmbientElement::P(x), AmbientElement::P(y)) => AmbientElement::P(x.sub(y)),
            (AmbientElement::T(x), AmbientElement::T(y)) => AmbientElement::T(x.sub(y)),
            _ => panic!("mixed ambient element shapes"),
        }
    }

    pub fn scale(&self, a: &AmbientElement, c: &Scalar) -> AmbientElement {
        match a {
            AmbientElement::P(x) => AmbientElement::P(x.scale(c)),
            AmbientElement::T(x) => AmbientElement::T(x.scale(c)),
        }
    }

    pub fn mul(&self, a: &AmbientElement, b: &AmbientElement) -> AmbientElement {
        match (self, a, b) {
            (Ambient::Pbw(p), AmbientElement::P(x), AmbientElement::P(y)) => {
                AmbientElement::P(p.nc_mul(x, y))
            }
            (Ambient::Twisted { alg, .. }, AmbientElement::T(x), AmbientElement::T(y)) => {
                AmbientElement::T(alg.tt_mul(x, y))
            }
            _ => panic!("mixed ambient element shapes"),
        }
    }

    pub fn pow(&self, a: &AmbientElement, e: u32) -> AmbientElement {
        let mut acc = self.one();
        for _ in 0..e {
            acc = self.mul(&acc, a);
        }
        acc
    }

    /// Degree of a normal form; `None` for zero. Numerical monoid parts count
    /// with weight one per unit, group parts with weight zero.
    pub fn degree(&self, a: &AmbientElement) -> Option<u64> {
        match a {
            AmbientElement::P(p) => p.degree(),
            AmbientElement::T(t) => {
                let numerical = self.is_numerical();
                t.parts()
                    .filter_map(|(m, p)| p.degree().map(|d| if numerical { d + m } else { d }))
                    .max()
            }
        }
    }

    pub fn key_degree(&self, k: &AmbientKey) -> u64 {
        if self.is_numerical() {
            k.mon.wdeg() + k.part
        } else {
            k.mon.wdeg()
        }
    }

    /// All standard-monomial keys of degree at most `bound`, sorted by
    /// (degree, monoid part, monomial). This is the row space of the linear
    /// systems downstream.
    pub fn keys_up_to(&self, bound: u64) -> Vec<AmbientKey> {
        let mut keys = Vec::new();
        match self {
            Ambient::Pbw(p) => {
                for mon in p.vars().monomials_up_to(bound) {
                    keys.push(AmbientKey { part: 0, mon });
                }
            }
            Ambient::Twisted { alg, .. } => match alg.monoid().as_ref() {
                MonoidPresentation::Numerical(nm) => {
                    for m in nm.elements_up_to(bound) {
                        for mon in alg.base().vars().monomials_up_to(bound - m) {
                            keys.push(AmbientKey { part: m, mon });
                        }
                    }
                }
                MonoidPresentation::Group(g) => {
                    for i in 0..g.size() {
                        for mon in alg.base().vars().monomials_up_to(bound) {
                            keys.push(AmbientKey { part: i as u64, mon });
                        }
                    }
                }
            },
        }
        keys.sort_by(|a, b| {
            self.key_degree(a)
                .cmp(&self.key_degree(b))
                .then(a.part.cmp(&b.part))
                .then(a.mon.cmp(&b.mon))
        });
        keys
    }

    pub fn atom(&self, key: &AmbientKey) -> AmbientElement {
        match self {
            Ambient::Pbw(p) => {
                AmbientElement::P(Poly::monomial(p.vars(), key.mon.clone(), Scalar::one(p.field_order())))
            }
            Ambient::Twisted { alg, .. } => {
                let base = Poly::monomial(
                    alg.base().vars(),
                    key.mon.clone(),
                    Scalar::one(alg.base().field_order()),
                );
                AmbientElement::T(alg.part(&base, key.part))
            }
        }
    }

    pub fn coeffs(&self, a: &AmbientElement) -> Vec<(AmbientKey, Scalar)> {
        match a {
            AmbientElement::P(p) => p
                .terms()
                .map(|(m, c)| (AmbientKey { part: 0, mon: m.clone() }, c.clone()))
                .collect(),
            AmbientElement::T(t) => {
                let mut out = Vec::new();
                for (part, poly) in t.parts() {
                    for (m, c) in poly.terms() {
                        out.push((AmbientKey { part, mon: m.clone() }, c.clone()));
                    }
                }
                out
            }
        }
    }

    /// Check that `a` commutes with the whole algebra (generators, and every
    /// monoid element in the twisted case).
    pub fn check_central(&self, a: &AmbientElement) -> Result<()> {
        match (self, a) {
            (Ambient::Pbw(p), AmbientElement::P(x)) => {
                for i in 0..p.num_gens() {
                    let g = p.gen(i);
                    let c = p.nc_mul(x, &g).sub(&p.nc_mul(&g, x));
                    if !c.is_zero() {
                        return Err(Error::NotCentral {
                            generator: p.vars().name(i).to_string(),
                            witness: c.to_string(),
                        });
                    }
                }
                Ok(())
            }
            (Ambient::Twisted { alg, .. }, AmbientElement::T(x)) => {
                alg.verify_central(std::slice::from_ref(x))
            }
            _ => panic!("mixed ambient element shapes"),
        }
    }

    /// Whether degrees are honest gradings: the base relations are graded and
    /// every monoid generator acts by a degree-preserving map.
    pub fn grading_respected(&self) -> bool {
        let pres = self.base_pres();
        if !pres.is_graded() {
            return false;
        }
        let alg = match self {
            Ambient::Pbw(_) => return true,
            Ambient::Twisted { alg, .. } => alg,
        };
        let reps: Vec<u64> = match alg.monoid().as_ref() {
            MonoidPresentation::Numerical(nm) => nm.gens().to_vec(),
            MonoidPresentation::Group(g) => (0..g.size() as u64).collect(),
        };
        for m in reps {
            let map = alg.action().map_of(m);
            for i in 0..pres.num_gens() {
                let img = map.image(i);
                let w = pres.vars().weight(i) as u64;
                if !(img.is_homogeneous() && img.degree() == Some(w)) {
                    return false;
                }
            }
        }
        true
    }

    /// Rewrite a commutative polynomial over `ambient_vars` as an element:
    /// the exponent of the monoid variable becomes the monoid part. Exponents
    /// outside the numerical monoid, or any monoid-variable use in the group
    /// case, are rejected.
    pub fn from_ambient_poly(&self, p: &Poly) -> Result<AmbientElement> {
        match self {
            Ambient::Pbw(pres) => {
                let lifted = p.with_vars(pres.vars())?;
                Ok(AmbientElement::P(lifted))
            }
            Ambient::Twisted { alg, t_name } => {
                if !self.is_numerical() {
                    let lifted = p.with_vars(alg.base().vars())?;
                    return Ok(AmbientElement::T(alg.embed(&lifted)));
                }
                let av = self.ambient_vars()?;
                let p = p.with_vars(&av)?;
                let t_idx = av.index_of(t_name).expect("monoid variable present");
                let base_vars = alg.base().vars();
                let nm = match alg.monoid().as_ref() {
                    MonoidPresentation::Numerical(nm) => nm,
                    MonoidPresentation::Group(_) => unreachable!(),
                };
                let mut out = TwistedElement::zero();
                for (mon, c) in p.terms() {
                    let k = mon.exps()[t_idx] as u64;
                    if !nm.contains(k) {
                        return Err(Error::Invalid(format!(
                            "exponent {k} of {t_name} is outside the monoid"
                        )));
                    }
                    let mut exps = mon.exps().to_vec();
                    exps.remove(t_idx);
                    let base_mon = Mon::new(base_vars, exps);
                    let term = AmbientElement::T(
                        alg.part(&Poly::monomial(base_vars, base_mon, c.clone()), k),
                    );
                    out = match self.add(&AmbientElement::T(out), &term) {
                        AmbientElement::T(t) => t,
                        _ => unreachable!(),
                    };
                }
                Ok(AmbientElement::T(out))
            }
        }
    }

    /// Inverse of `from_ambient_poly`. Group-twisted elements must be
    /// supported on the identity.
    pub fn to_ambient_poly(&self, a: &AmbientElement) -> Result<Poly> {
        match (self, a) {
            (Ambient::Pbw(_), AmbientElement::P(p)) => Ok(p.clone()),
            (Ambient::Twisted { alg, .. }, AmbientElement::T(t)) => {
                if !self.is_numerical() {
                    let e = alg.monoid().identity();
                    for (m, p) in t.parts() {
                        if m != e && !p.is_zero() {
                            return Err(Error::Invalid(format!(
                                "element has support at {}, not a base-algebra value",
                                alg.monoid().render_elt(m)
                            )));
                        }
                    }
                    let av = self.ambient_vars()?;
                    return match t.component(e) {
                        Some(p) => p.with_vars(&av),
                        None => Ok(Poly::zero(&av)),
                    };
                }
                let av = self.ambient_vars()?;
                let t_idx = av.len() - 1;
                let mut out = Poly::zero(&av);
                for (m, p) in t.parts() {
                    for (mon, c) in p.terms() {
                        let mut exps = mon.exps().to_vec();
                        exps.insert(t_idx, u32::try_from(m).map_err(|_| {
                            Error::CapExceeded("monoid exponent too large to render".into())
                        })?);
                        out = out.add(&Poly::monomial(&av, Mon::new(&av, exps), c.clone()));
                    }
                }
                Ok(out)
            }
            _ => panic!("mixed ambient element shapes"),
        }
    }

    /// Parse an element. Strings containing `#` use the twisted
    /// `poly#monoid + ...` syntax; anything else is read as a commutative
    /// polynomial over the ambient variables.
    pub fn parse(&self, s: &str) -> Result<AmbientElement> {
        if s.contains('#') {
            match self {
                Ambient::Twisted { alg, .. } => Ok(AmbientElement::T(alg.parse_elem(s)?)),
                Ambient::Pbw(_) => Err(Error::Parse {
                    pos: s.find('#').unwrap_or(0),
                    msg: "monoid part in a plain algebra".into(),
                }),
            }
        } else {
            let av = self.ambient_vars()?;
            let p = parse_poly(&av, self.field_order(), s)?;
            self.from_ambient_poly(&p)
        }
    }

    pub fn render(&self, a: &AmbientElement) -> String {
        match self.to_ambient_poly(a) {
            Ok(p) => p.to_string(),
            Err(_) => match (self, a) {
                (Ambient::Twisted { alg, .. }, AmbientElement::T(t)) => alg.render_elem(t),
                _ => unreachable!("only group-part elements fail ambient rendering"),
            },
        }
    }

    /// `Some(c)` when `a = c * b` with `c` a nonzero scalar.
    pub fn eq_up_to_scalar(&self, a: &AmbientElement, b: &AmbientElement) -> Option<Scalar> {
        match (a, b) {
            (AmbientElement::P(x), AmbientElement::P(y)) => x.eq_up_to_scalar(y),
            (AmbientElement::T(x), AmbientElement::T(y)) => {
                if x.support() != y.support() {
                    return None;
                }
                let m0 = *x.support().first()?;
                let c = x.component(m0)?.eq_up_to_scalar(y.component(m0)?)?;
                for (m, p) in x.parts() {
                    let q = y.component(m)?;
                    if !p.sub(&q.scale(&c)).is_zero() {
                        return None;
                    }
                }
                Some(c)
            }
            _ => None,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::action::{AlgebraMap, MonoidAction, NumericalMonoid};
    use crate::pbw::RelationInput;

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

    fn ore_swap_kxy() -> Arc<TwistedAlgebra> {
        let vars = VarSet::unweighted(&["x", "y"]).unwrap();
        let pres = PbwPresentation::commutative(vars.clone(), 1);
        let swap = AlgebraMap::new(
            pres.clone(),
            vec![Poly::var(&vars, 1), Poly::var(&vars, 0)],
        )
        .unwrap();
        Arc::new(TwistedAlgebra::skew_polynomial(swap, 8).unwrap())
    }

    #[test]
    fn pbw_keys_and_atoms() {
        let amb = Ambient::pbw(v2());
        let keys = amb.keys_up_to(2);
        // 1; x, y; x^2, xy, y^2
        assert_eq!(keys.len(), 6);
        assert_eq!(amb.key_degree(&keys[0]), 0);
        assert_eq!(amb.key_degree(&keys[5]), 2);
        let a = amb.atom(&keys[3]);
        assert_eq!(amb.degree(&a), Some(2));
        assert_eq!(amb.coeffs(&a).len(), 1);
    }

    #[test]
    fn pbw_mul_is_noncommutative() {
        let amb = Ambient::pbw(v2());
        let x = amb.parse("x").unwrap();
        let y = amb.parse("y").unwrap();
        let xy = amb.mul(&x, &y);
        let yx = amb.mul(&y, &x);
        assert_eq!(amb.sub(&xy, &yx), amb.scale(&xy, &Scalar::from_int(1, 2)));
    }

    #[test]
    fn ore_keys_respect_monoid_membership() {
        let vars = VarSet::empty();
        let pres = PbwPresentation::commutative(vars, 1);
        let id = AlgebraMap::identity(pres);
        let m = NumericalMonoid::new(vec![2, 3]).unwrap();
        let action = MonoidAction::powers(m, id, 4).unwrap();
        let alg = Arc::new(TwistedAlgebra::new(action));
        let amb = Ambient::twisted(alg, "t").unwrap();
        let keys = amb.keys_up_to(5);
        let parts: Vec<u64> = keys.iter().map(|k| k.part).collect();
        // 0, 2, 3, 4, 5 are in <2,3>; 1 is not.
        assert_eq!(parts, vec![0, 2, 3, 4, 5]);
    }

    #[test]
    fn ambient_poly_round_trip_ore() {
        let amb = Ambient::twisted(ore_swap_kxy(), "t").unwrap();
        let e = amb.parse("x^2*t^3 - 2*y*t").unwrap();
        assert_eq!(amb.degree(&e), Some(5));
        let back = amb.render(&e);
        let again = amb.parse(&back).unwrap();
        assert_eq!(e, again);
        // The twisted syntax parses to the same element.
        let hash = amb.parse("x^2#t^3 - 2*y#t").unwrap();
        assert_eq!(e, hash);
    }

    #[test]
    fn ore_t_name_collision_rejected() {
        assert!(Ambient::twisted(ore_swap_kxy(), "x").is_err());
    }

    #[test]
    fn group_keys_count_both_parts() {
        let pres = v2();
        let alg = Arc::new(TwistedAlgebra::skew_group_symmetric(pres, 2).unwrap());
        let amb = Ambient::twisted(alg, "t").unwrap();
        let keys = amb.keys_up_to(1);
        // {1, x, y} in each of the two group components.
        assert_eq!(keys.len(), 6);
        assert!(amb.to_ambient_poly(&amb.atom(&keys[1])).is_err() || keys[1].part == 0);
    }

    #[test]
    fn centrality_dispatch() {
        let amb = Ambient::pbw(v2());
        let c = amb.parse("x^2").unwrap();
        assert!(amb.check_central(&c).is_ok());
        let bad = amb.parse("x").unwrap();
        assert!(matches!(
            amb.check_central(&bad),
            Err(Error::NotCentral { .. })
        ));

        let tw = Ambient::twisted(ore_swap_kxy(), "t").unwrap();
        assert!(tw.check_central(&tw.parse("x+y").unwrap()).is_ok());
        assert!(tw.check_central(&tw.parse("t^2").unwrap()).is_ok());
        assert!(tw.check_central(&tw.parse("t").unwrap()).is_err());
    }

    #[test]
    fn grading_detection() {
        let amb = Ambient::pbw(v2());
        assert!(amb.grading_respected());
        let tw = Ambient::twisted(ore_swap_kxy(), "t").unwrap();
        assert!(tw.grading_respected());
    }

    #[test]
    fn scalar_comparison_across_parts() {
        let amb = Ambient::twisted(ore_swap_kxy(), "t").unwrap();
        let a = amb.parse("2*x*t^2 + 4*y").unwrap();
        let b = amb.parse("x*t^2 + 2*y").unwrap();
        let c = amb.eq_up_to_scalar(&a, &b).unwrap();
        assert_eq!(c, Scalar::from_int(1, 2));
        let d = amb.parse("x*t^2 + y").unwrap();
        assert!(amb.eq_up_to_scalar(&a, &d).is_none());
    }
}
