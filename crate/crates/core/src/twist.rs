//! Monoid-graded twisted products: the base algebra tensored with a
//! monoid algebra, multiplication twisted through the action,
//! (a # g)(b # h) = a (g.b) # gh. Skew polynomial rings are the
//! natural-numbers case; skew group algebras are the finite-group case.

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::action::{
    fixed_point_rows, kernel_polys, skew_commute_rows, AlgebraMap, MonoidAction,
    MonoidPresentation, SubMonoid,
};
use crate::error::{Error, Result};
use crate::linalg;
use crate::pbw::PbwPresentation;
use crate::poly::Poly;

#[derive(Debug, Clone)]
pub struct TwistedAlgebra {
    action: MonoidAction,
    kernel: Option<SubMonoid>,
}

/// Element sum a_m # m with nonzero normal-form components.
#[derive(Debug, Clone, PartialEq)]
pub struct TwistedElement {
    parts: BTreeMap<u64, Poly>,
}

impl TwistedElement {
    pub fn zero() -> TwistedElement {
        TwistedElement {
            parts: BTreeMap::new(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn parts(&self) -> impl Iterator<Item = (u64, &Poly)> {
        self.parts.iter().map(|(m, a)| (*m, a))
    }

    pub fn component(&self, m: u64) -> Option<&Poly> {
        self.parts.get(&m)
    }

    pub fn support(&self) -> Vec<u64> {
        self.parts.keys().copied().collect()
    }

    pub(crate) fn insert(&mut self, m: u64, a: Poly) {
        if a.is_zero() {
            return;
        }
        match self.parts.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(a);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let s = e.get().add(&a);
                if s.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = s;
                }
            }
        }
    }

    pub fn add(&self, rhs: &TwistedElement) -> TwistedElement {
        let mut out = self.clone();
        for (m, a) in rhs.parts() {
            out.insert(m, a.clone());
        }
        out
    }

    pub fn sub(&self, rhs: &TwistedElement) -> TwistedElement {
        let mut out = self.clone();
        for (m, a) in rhs.parts() {
            out.insert(m, a.neg());
        }
        out
    }

    pub fn neg(&self) -> TwistedElement {
        TwistedElement {
            parts: self.parts.iter().map(|(m, a)| (*m, a.neg())).collect(),
        }
    }

    pub fn scale(&self, c: &crate::scalar::Scalar) -> TwistedElement {
        if c.is_zero() {
            return TwistedElement::zero();
        }
        TwistedElement {
            parts: self.parts.iter().map(|(m, a)| (*m, a.scale(c))).collect(),
        }
    }
}

/// Components of the center of a skew polynomial ring up to the caps:
/// `components[i]` spans the coefficients a with a t^i central.
#[derive(Debug, Clone)]
pub struct OreCenter {
    pub components: Vec<(u64, Vec<Poly>)>,
    pub degree_cap: u64,
    pub power_cap: u64,
}

impl TwistedAlgebra {
    pub fn new(action: MonoidAction) -> TwistedAlgebra {
        let kernel = action.kernel().ok();
        TwistedAlgebra { action, kernel }
    }

    /// Skew polynomial ring over the base of `sigma`.
    pub fn skew_polynomial(sigma: AlgebraMap, order_cap: u32) -> Result<TwistedAlgebra> {
        Ok(TwistedAlgebra::new(MonoidAction::ore(sigma, order_cap)?))
    }

    /// Skew group algebra for the symmetric group permuting the first n
    /// generators.
    pub fn skew_group_symmetric(
        pres: Arc<PbwPresentation>,
        n: usize,
    ) -> Result<TwistedAlgebra> {
        Ok(TwistedAlgebra::new(MonoidAction::permutations(pres, n)?))
    }

    pub fn action(&self) -> &MonoidAction {
        &self.action
    }

    pub fn base(&self) -> &Arc<PbwPresentation> {
        self.action.algebra()
    }

    pub fn monoid(&self) -> &Arc<MonoidPresentation> {
        self.action.monoid()
    }

    /// Elements of the monoid acting trivially, when resolvable.
    pub fn kernel(&self) -> Result<&SubMonoid> {
        self.kernel.as_ref().ok_or_else(|| {
            Error::CapExceeded("kernel of the action was not resolved".into())
        })
    }

    pub fn zero(&self) -> TwistedElement {
        TwistedElement::zero()
    }

    pub fn one(&self) -> TwistedElement {
        self.embed(&self.base().one())
    }

    /// a # e
    pub fn embed(&self, a: &Poly) -> TwistedElement {
        let mut out = TwistedElement::zero();
        out.insert(self.monoid().identity(), a.clone());
        out
    }

    /// 1 # m
    pub fn monoid_elem(&self, m: u64) -> TwistedElement {
        let mut out = TwistedElement::zero();
        out.insert(m, self.base().one());
        out
    }

    pub fn part(&self, a: &Poly, m: u64) -> TwistedElement {
        let mut out = TwistedElement::zero();
        out.insert(m, a.clone());
        out
    }

    pub fn tt_mul(&self, u: &TwistedElement, v: &TwistedElement) -> TwistedElement {
        let pres = self.base();
        let mut out = TwistedElement::zero();
        for (m, a) in u.parts() {
            for (n, b) in v.parts() {
                let moved = self.action.act(m, b);
                out.insert(self.monoid().product(m, n), pres.nc_mul(a, &moved));
            }
        }
        out
    }

    pub fn tt_pow(&self, u: &TwistedElement, e: u32) -> TwistedElement {
        let mut acc = self.one();
        for _ in 0..e {
            acc = self.tt_mul(&acc, u);
        }
        acc
    }

    fn commutator(&self, u: &TwistedElement, v: &TwistedElement) -> TwistedElement {
        self.tt_mul(u, v).sub(&self.tt_mul(v, u))
    }

    /// Checks each candidate commutes with every algebra generator # e
    /// and with 1 # m for the monoid generators; the first nonzero
    /// commutator is reported.
    pub fn verify_central(&self, candidates: &[TwistedElement]) -> Result<()> {
        let pres = self.base().clone();
        let mut probes: Vec<(String, TwistedElement)> = (0..pres.num_gens())
            .map(|i| (pres.vars().name(i).to_string(), self.embed(&pres.gen(i))))
            .collect();
        match self.monoid().as_ref() {
            MonoidPresentation::Numerical(m) => {
                for &g in m.gens() {
                    probes.push((self.monoid().render_elt(g), self.monoid_elem(g)));
                }
            }
            MonoidPresentation::Group(g) => {
                for i in 0..g.size() {
                    probes.push((g.label(i).to_string(), self.monoid_elem(i as u64)));
                }
            }
        }
        for z in candidates {
            for (name, probe) in &probes {
                let c = self.commutator(z, probe);
                if !c.is_zero() {
                    return Err(Error::NotCentral {
                        generator: name.clone(),
                        witness: self.render_elem(&c),
                    });
                }
            }
        }
        Ok(())
    }

    /// Degreewise description of the center of a skew polynomial ring:
    /// for each power i up to the cap, a basis of
    /// { a : x a = a sigma^i(x) for all generators, sigma(a) = a }
    /// up to the degree cap. The output never claims completeness beyond
    /// the caps.
    pub fn ore_center_decompose(&self, degree_cap: u64, power_cap: u64) -> Result<OreCenter> {
        match self.monoid().as_ref() {
            MonoidPresentation::Numerical(m) if m.gens() == [1] => {}
            _ => {
                return Err(Error::BadMonoid(
                    "center decomposition needs the natural numbers as monoid".into(),
                ))
            }
        }
        let sigma = self.action.map_of(1);
        let vars = self.base().vars().clone();
        let mons = vars.monomials_up_to(degree_cap);
        let fix_rows = fixed_point_rows(&sigma, &mons);
        let mut components = Vec::new();
        for i in 0..=power_cap {
            let power = self.action.map_of(i);
            let mut rows = skew_commute_rows(&power, &mons);
            rows.extend(fix_rows.iter().cloned());
            let kernel = linalg::nullspace(&rows, mons.len());
            components.push((i, kernel_polys(&vars, &mons, kernel)));
        }
        Ok(OreCenter {
            components,
            degree_cap,
            power_cap,
        })
    }

    pub fn render_elem(&self, e: &TwistedElement) -> String {
        if e.is_zero() {
            return "0".to_string();
        }
        let mut parts = Vec::new();
        for (m, a) in e.parts() {
            let poly = if a.num_terms() > 1 {
                format!("({a})")
            } else {
                a.to_string()
            };
            parts.push(format!("{}#{}", poly, self.monoid().render_elt(m)));
        }
        parts.join(" + ")
    }

    /// Parses sums of `poly#melt` chunks; the monoid element is `e`,
    /// `t^k` (numerical) or a group label. A polynomial with more than
    /// one term must be parenthesized.
    pub fn parse_elem(&self, s: &str) -> Result<TwistedElement> {
        let mut out = TwistedElement::zero();
        for (chunk, negated) in split_top_level(s) {
            let chunk = chunk.trim();
            if chunk.is_empty() {
                return Err(Error::Parse {
                    pos: 0,
                    msg: "empty summand".into(),
                });
            }
            let (poly_src, melt_src) = match chunk.rfind('#') {
                Some(i) => (&chunk[..i], chunk[i + 1..].trim()),
                None => (chunk, "e"),
            };
            let mut a = crate::parse::parse_poly(
                self.base().vars(),
                self.base().field_order(),
                poly_src,
            )?;
            if negated {
                a = a.neg();
            }
            let m = self.parse_melt(melt_src)?;
            out.insert(m, a);
        }
        Ok(out)
    }

    fn parse_melt(&self, s: &str) -> Result<u64> {
        match self.monoid().as_ref() {
            MonoidPresentation::Numerical(_) => {
                if s == "e" {
                    Ok(0)
                } else if s == "t" {
                    Ok(1)
                } else if let Some(k) = s.strip_prefix("t^") {
                    k.parse().map_err(|_| Error::Parse {
                        pos: 0,
                        msg: format!("bad monoid exponent `{s}`"),
                    })
                } else {
                    Err(Error::Parse {
                        pos: 0,
                        msg: format!("bad monoid element `{s}`"),
                    })
                }
            }
            MonoidPresentation::Group(g) => {
                g.index_of(s).map(|i| i as u64).ok_or_else(|| Error::Parse {
                    pos: 0,
                    msg: format!("unknown group element `{s}`"),
                })
            }
        }
    }
}

/// Splits on top-level + and -, yielding (chunk, negated). A minus
/// inside parentheses or after ^ stays with its chunk.
fn split_top_level(s: &str) -> Vec<(String, bool)> {
    let mut out = Vec::new();
    let mut depth = 0usize;
    let mut cur = String::new();
    let mut neg = false;
    for (i, c) in s.char_indices() {
        match c {
            '(' => {
                depth += 1;
                cur.push(c);
            }
            ')' => {
                depth = depth.saturating_sub(1);
                cur.push(c);
            }
            '+' | '-' if depth == 0 => {
                if cur.trim().is_empty() && c == '-' && i == 0 {
                    neg = true;
                    continue;
                }
                if !cur.trim().is_empty() {
                    out.push((std::mem::take(&mut cur), neg));
                }
                neg = c == '-';
            }
            _ => cur.push(c),
        }
    }
    if !cur.trim().is_empty() {
        out.push((cur, neg));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_poly;
    use crate::pbw::RelationInput;
    use crate::poly::VarSet;
    use crate::scalar::Scalar;
    use proptest::prelude::*;

    fn sign_pres(names: &[&str]) -> Arc<PbwPresentation> {
        let vars = VarSet::unweighted(names).unwrap();
        let mut rels = Vec::new();
        for j in 1..names.len() {
            for i in 0..j {
                rels.push(RelationInput {
                    upper: names[j].to_string(),
                    lower: names[i].to_string(),
                    q: Scalar::from_int(1, -1),
                    tail: Poly::zero(&vars),
                });
            }
        }
        PbwPresentation::new(vars, 1, rels).unwrap()
    }

    fn commutative(names: &[&str]) -> Arc<PbwPresentation> {
        PbwPresentation::commutative(VarSet::unweighted(names).unwrap(), 1)
    }

    fn p(pr: &PbwPresentation, s: &str) -> Poly {
        parse_poly(pr.vars(), pr.field_order(), s).unwrap()
    }

    fn swap(pr: &Arc<PbwPresentation>) -> AlgebraMap {
        AlgebraMap::new(pr.clone(), vec![pr.gen(1), pr.gen(0)]).unwrap()
    }

    fn v2_s2() -> TwistedAlgebra {
        TwistedAlgebra::skew_group_symmetric(sign_pres(&["x", "y"]), 2).unwrap()
    }

    fn kxy_ore_swap() -> TwistedAlgebra {
        let a = commutative(&["x", "y"]);
        TwistedAlgebra::skew_polynomial(swap(&a), 8).unwrap()
    }

    #[test]
    fn defining_products() {
        // group case: (1#g)(x#e) = y#g
        let t = v2_s2();
        let g = match t.monoid().as_ref() {
            MonoidPresentation::Group(g) => g.index_of("g21").unwrap() as u64,
            _ => unreachable!(),
        };
        let lhs = t.tt_mul(&t.monoid_elem(g), &t.embed(&p(t.base(), "x")));
        assert_eq!(lhs, t.part(&p(t.base(), "y"), g));
        // skew polynomial case: t x = y t
        let s = kxy_ore_swap();
        let tx = s.tt_mul(&s.monoid_elem(1), &s.embed(&p(s.base(), "x")));
        assert_eq!(tx, s.part(&p(s.base(), "y"), 1));
        // embedding is multiplicative
        let a = p(s.base(), "x+2*y");
        let b = p(s.base(), "x*y-1");
        assert_eq!(
            s.tt_mul(&s.embed(&a), &s.embed(&b)),
            s.embed(&s.base().nc_mul(&a, &b))
        );
    }

    #[test]
    fn unit_is_two_sided() {
        let t = v2_s2();
        let e = t.parse_elem("(x^2+y^2)#e + 2#g21").unwrap();
        assert_eq!(t.tt_mul(&t.one(), &e), e);
        assert_eq!(t.tt_mul(&e, &t.one()), e);
    }

    #[test]
    fn group_component_collisions_cancel() {
        let t = v2_s2();
        let g = match t.monoid().as_ref() {
            MonoidPresentation::Group(g) => g.index_of("g21").unwrap() as u64,
            _ => unreachable!(),
        };
        // (1#g)(1#g) = 1#e
        let gg = t.tt_mul(&t.monoid_elem(g), &t.monoid_elem(g));
        assert_eq!(gg, t.one());
        let u = t.monoid_elem(g).add(&t.one());
        let v = t.monoid_elem(g).sub(&t.one());
        // (g+1)(g-1) = g^2 - 1 = 0
        assert!(t.tt_mul(&u, &v).is_zero());
    }

    #[test]
    fn centrality_checks() {
        let s = kxy_ore_swap();
        let good = [
            s.parse_elem("(x+y)#e").unwrap(),
            s.parse_elem("(x*y)#e").unwrap(),
            s.parse_elem("1#t^2").unwrap(),
        ];
        s.verify_central(&good).unwrap();
        let bad = [s.parse_elem("x#e").unwrap()];
        match s.verify_central(&bad) {
            Err(Error::NotCentral { .. }) => {}
            other => panic!("expected a violation, got {other:?}"),
        }
        // group case: symmetric center passes, asymmetric fails
        let t = v2_s2();
        t.verify_central(&[t.parse_elem("(x^2+y^2)#e").unwrap()])
            .unwrap();
        assert!(t
            .verify_central(&[t.parse_elem("(x^2-y^2)#e").unwrap()])
            .is_err());
    }

    #[test]
    fn ore_center_components() {
        // identity twist of one commutative variable: everything central
        let kx = commutative(&["x"]);
        let s = TwistedAlgebra::skew_polynomial(AlgebraMap::identity(kx.clone()), 4).unwrap();
        let oc = s.ore_center_decompose(2, 2).unwrap();
        for (_, basis) in &oc.components {
            assert_eq!(basis.len(), 3); // 1, x, x^2
        }
        // sign twist: even coefficients at every power
        let flip = AlgebraMap::new(kx.clone(), vec![p(&kx, "-x")]).unwrap();
        let s = TwistedAlgebra::skew_polynomial(flip, 4).unwrap();
        let oc = s.ore_center_decompose(2, 4).unwrap();
        for (i, basis) in &oc.components {
            let mons: Vec<String> = basis.iter().map(|b| b.to_string()).collect();
            if i % 2 == 0 {
                assert_eq!(mons, vec!["1", "x^2"], "power {i}");
            } else {
                assert!(mons.is_empty(), "power {i}");
            }
        }
    }

    #[test]
    fn ore_center_sign_commuting_swap() {
        // sign-commuting base, swap twist: components only at even powers,
        // spanned by symmetric central elements
        let v2 = sign_pres(&["x", "y"]);
        let s = TwistedAlgebra::skew_polynomial(swap(&v2), 8).unwrap();
        let oc = s.ore_center_decompose(4, 3).unwrap();
        let by_power: BTreeMap<u64, usize> = oc
            .components
            .iter()
            .map(|(i, b)| (*i, b.len()))
            .collect();
        assert_eq!(by_power[&1], 0);
        assert_eq!(by_power[&3], 0);
        assert!(by_power[&0] > 0 && by_power[&2] > 0);
        // brute-force cross-check at power 2, degree <= 4: a t^2 central
        for (i, basis) in &oc.components {
            for a in basis {
                let z = s.part(a, *i);
                s.verify_central(&[z]).unwrap();
            }
        }
        // x^2+y^2 and x^2y^2 appear in the power-0 component span
        let comp0 = &oc.components[0].1;
        let sym = p(&v2, "x^2+y^2");
        let found = comp0.iter().any(|b| b.eq_up_to_scalar(&sym).is_some());
        let prod = p(&v2, "x^2*y^2");
        let found2 = comp0.iter().any(|b| b.eq_up_to_scalar(&prod).is_some());
        assert!(found && found2);
        // x^2 alone is not sigma-invariant, so it is not a component elt
        assert!(comp0
            .iter()
            .all(|b| b.eq_up_to_scalar(&p(&v2, "x^2")).is_none()));
    }

    #[test]
    fn element_round_trip() {
        let t = v2_s2();
        for s in ["(x^2+y^2)#e + 2#g21", "x#e", "1#g21", "-3*x*y#e + (x-y)#g21"] {
            let e = t.parse_elem(s).unwrap();
            let rendered = t.render_elem(&e);
            let back = t.parse_elem(&rendered).unwrap();
            assert_eq!(e, back, "round trip through `{rendered}`");
        }
        let s = kxy_ore_swap();
        let e = s.parse_elem("(x*y)#t^3 + 1#e").unwrap();
        assert_eq!(e.support(), vec![0, 3]);
        assert!(s.parse_elem("x#q").is_err());
    }

    fn arb_elem(max_m: u64) -> impl Strategy<Value = TwistedElement> {
        // both test algebras share the two-variable unweighted shape
        proptest::collection::vec((0..=max_m, 0u32..3, 0u32..3, -3i64..=3), 1..4).prop_map(
            |parts| {
                let vars = VarSet::unweighted(&["x", "y"]).unwrap();
                let mut e = TwistedElement::zero();
                for (m, i, j, c) in parts {
                    let mon = crate::poly::Mon::new(&vars, vec![i, j]);
                    e.insert(m, Poly::monomial(&vars, mon, Scalar::from_int(1, c)));
                }
                e
            },
        )
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(24))]

        #[test]
        fn tt_mul_associative_group(
            u in arb_elem(1),
            v in arb_elem(1),
            w in arb_elem(1),
        ) {
            let t = v2_s2();
            let uv_w = t.tt_mul(&t.tt_mul(&u, &v), &w);
            let u_vw = t.tt_mul(&u, &t.tt_mul(&v, &w));
            prop_assert_eq!(uv_w, u_vw);
        }

        #[test]
        fn tt_mul_associative_ore(
            u in arb_elem(3),
            v in arb_elem(3),
            w in arb_elem(3),
        ) {
            let t = kxy_ore_swap();
            let uv_w = t.tt_mul(&t.tt_mul(&u, &v), &w);
            let u_vw = t.tt_mul(&u, &t.tt_mul(&v, &w));
            prop_assert_eq!(uv_w, u_vw);
        }
    }
}
