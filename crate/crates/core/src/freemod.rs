//! Free-module structure of an algebra over a central subalgebra: declaring
//! the central generators, expressing elements over an ordered module basis
//! by exact linear algebra, and certifying that a candidate basis really is
//! one up to a degree bound.
//!
//! The solver is filtration-aware: an element is matched degree window by
//! degree window, with coefficient monomials allowed `slack` extra degree to
//! absorb non-graded relation tails.

use std::collections::BTreeMap;
use std::sync::{Arc, Mutex};

use crate::ambient::{Ambient, AmbientElement, AmbientKey};
use crate::error::{Error, Result};
use crate::linalg::rref_within;
use crate::poly::{Mon, Poly, VarSet};
use crate::scalar::Scalar;

/// A polynomial central subalgebra `R = k[f_1, ..., f_k]` of an ambient
/// algebra, with one display variable per generator. Variable weights are
/// the ambient degrees of the generators.
pub struct CentralSubalgebra {
    ambient: Ambient,
    gens: Vec<AmbientElement>,
    fvars: Arc<VarSet>,
    pow_cache: Mutex<Vec<Vec<AmbientElement>>>,
}

impl Clone for CentralSubalgebra {
    fn clone(&self) -> Self {
        CentralSubalgebra {
            ambient: self.ambient.clone(),
            gens: self.gens.clone(),
            fvars: self.fvars.clone(),
            pow_cache: Mutex::new(self.gens.iter().map(|g| vec![self.ambient.one(), g.clone()]).collect()),
        }
    }
}

impl CentralSubalgebra {
    /// Validates that every generator is central and nonconstant, and binds
    /// generator `i` to the display name `names[i]` with weight equal to its
    /// ambient degree.
    pub fn new(
        ambient: Ambient,
        names: Vec<String>,
        gens: Vec<AmbientElement>,
    ) -> Result<CentralSubalgebra> {
        if names.len() != gens.len() {
            return Err(Error::Invalid(format!(
                "{} names for {} generators",
                names.len(),
                gens.len()
            )));
        }
        let mut weighted = Vec::new();
        for (name, g) in names.iter().zip(&gens) {
            ambient.check_central(g)?;
            let d = ambient.degree(g).ok_or_else(|| {
                Error::Invalid(format!("generator {name} is zero"))
            })?;
            if d == 0 {
                return Err(Error::Invalid(format!("generator {name} is a constant")));
            }
            let w = u32::try_from(d)
                .map_err(|_| Error::CapExceeded(format!("degree of {name} too large")))?;
            weighted.push((name.clone(), w));
        }
        let fvars = if weighted.is_empty() {
            VarSet::empty()
        } else {
            VarSet::new(weighted)?
        };
        let pow_cache = Mutex::new(gens.iter().map(|g| vec![ambient.one(), g.clone()]).collect());
        Ok(CentralSubalgebra { ambient, gens, fvars, pow_cache })
    }

    pub fn ambient(&self) -> &Ambient {
        &self.ambient
    }

    pub fn fvars(&self) -> &Arc<VarSet> {
        &self.fvars
    }

    pub fn gens(&self) -> &[AmbientElement] {
        &self.gens
    }

    fn gen_pow(&self, i: usize, e: u32) -> AmbientElement {
        let mut cache = self.pow_cache.lock().unwrap();
        while cache[i].len() <= e as usize {
            let next = self.ambient.mul(cache[i].last().unwrap(), &self.gens[i]);
            cache[i].push(next);
        }
        cache[i][e as usize].clone()
    }

    /// Evaluate a polynomial in the subalgebra variables to the ambient
    /// element it names.
    pub fn eval(&self, r: &Poly) -> AmbientElement {
        assert_eq!(
            r.vars().as_ref(),
            self.fvars.as_ref(),
            "polynomial is not over the subalgebra variables"
        );
        let mut acc = self.ambient.zero();
        for (mon, c) in r.terms() {
            let mut term = self.ambient.constant(c.clone());
            for (i, &e) in mon.exps().iter().enumerate() {
                if e > 0 {
                    term = self.ambient.mul(&term, &self.gen_pow(i, e));
                }
            }
            acc = self.ambient.add(&acc, &term);
        }
        acc
    }

    /// Express `b` as a polynomial in the generators alone, i.e. decide
    /// membership in the subalgebra constructively.
    pub fn express_in_generators(&self, b: &AmbientElement, degree_cap: u64) -> Result<Poly> {
        let f = FreeModuleStructure::new(
            self.clone(),
            vec![self.ambient.one()],
            None,
            Some(degree_cap),
        )?;
        Ok(f.express_in_basis(b)?.remove(0))
    }
}

/// Row-reduced linear system for one degree window: every standard monomial
/// of degree at most the window bound as a row, every pair
/// (basis element, coefficient monomial) as a column.
struct DegreeSolver {
    key_index: BTreeMap<AmbientKey, usize>,
    unknowns: Vec<(usize, Mon)>,
    /// `[R | E]` with `R = E * A` in reduced row echelon form.
    mat: Vec<Vec<Scalar>>,
    pivots: Vec<usize>,
}

/// Per-degree dimension table produced by `verify_basis`; dimensions are
/// cumulative (filtration) counts.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BasisReport {
    pub verified_to: u64,
    pub dims: Vec<(u64, usize)>,
}

/// An ambient algebra presented as a free module over a central subalgebra,
/// with an ordered basis.
pub struct FreeModuleStructure {
    csub: CentralSubalgebra,
    basis: Vec<AmbientElement>,
    basis_degrees: Vec<u64>,
    slack: u64,
    degree_cap: u64,
    solvers: Mutex<BTreeMap<u64, Arc<DegreeSolver>>>,
}

/// Degree slack that absorbs every relation tail: twice the largest drop
/// from a junction monomial to its rewritten tail.
pub fn default_slack(ambient: &Ambient) -> u64 {
    let pres = ambient.base_pres();
    let mut worst = 0;
    for j in 0..pres.num_gens() {
        for i in 0..j {
            let tail = pres.tail(j, i);
            if tail.is_zero() {
                continue;
            }
            let junction =
                (pres.vars().weight(i) + pres.vars().weight(j)) as u64;
            worst = worst.max(junction - tail.degree().unwrap_or(junction));
        }
    }
    2 * worst
}

const DEFAULT_DEGREE_CAP: u64 = 24;

impl FreeModuleStructure {
    /// Wraps a basis candidate; no verification happens here (see
    /// `verify_basis`). `slack` and `degree_cap` default to the tail-derived
    /// slack and 24.
    pub fn new(
        csub: CentralSubalgebra,
        basis: Vec<AmbientElement>,
        slack: Option<u64>,
        degree_cap: Option<u64>,
    ) -> Result<FreeModuleStructure> {
        if basis.is_empty() {
            return Err(Error::Invalid("empty basis".into()));
        }
        let mut basis_degrees = Vec::new();
        for (i, z) in basis.iter().enumerate() {
            basis_degrees.push(csub.ambient().degree(z).ok_or_else(|| {
                Error::Invalid(format!("basis element {i} is zero"))
            })?);
        }
        let slack = slack.unwrap_or_else(|| default_slack(csub.ambient()));
        Ok(FreeModuleStructure {
            csub,
            basis,
            basis_degrees,
            slack,
            degree_cap: degree_cap.unwrap_or(DEFAULT_DEGREE_CAP),
            solvers: Mutex::new(BTreeMap::new()),
        })
    }

    pub fn subalgebra(&self) -> &CentralSubalgebra {
        &self.csub
    }

    pub fn ambient(&self) -> &Ambient {
        self.csub.ambient()
    }

    pub fn basis(&self) -> &[AmbientElement] {
        &self.basis
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    pub fn slack(&self) -> u64 {
        self.slack
    }

    fn solver_for(&self, bound: u64) -> Result<Arc<DegreeSolver>> {
        // A solver for a wider degree window answers narrower requests too,
        // so reuse the first one at or above the bound.
        if let Some((_, s)) = self.solvers.lock().unwrap().range(bound..).next() {
            return Ok(s.clone());
        }
        let s = Arc::new(self.build_solver(bound)?);
        self.solvers
            .lock()
            .unwrap()
            .entry(bound)
            .or_insert_with(|| s.clone());
        Ok(s)
    }

    fn build_solver(&self, bound: u64) -> Result<DegreeSolver> {
        let amb = self.csub.ambient();
        let order = amb.field_order();
        let keys = amb.keys_up_to(bound);
        let key_index: BTreeMap<AmbientKey, usize> = keys
            .iter()
            .enumerate()
            .map(|(i, k)| (k.clone(), i))
            .collect();
        let rows = keys.len();
        let mut unknowns = Vec::new();
        for (i, &zd) in self.basis_degrees.iter().enumerate() {
            if zd > bound {
                continue;
            }
            for mon in self.csub.fvars().monomials_up_to(bound - zd) {
                unknowns.push((i, mon));
            }
        }
        let ncols = unknowns.len();
        let mut mat = vec![vec![Scalar::zero(order); ncols + rows]; rows];
        for (r, row) in mat.iter_mut().enumerate() {
            row[ncols + r] = Scalar::one(order);
        }
        for (c, (i, mon)) in unknowns.iter().enumerate() {
            let f = self.csub.eval(&Poly::monomial(
                self.csub.fvars(),
                mon.clone(),
                Scalar::one(order),
            ));
            let col = amb.mul(&f, &self.basis[*i]);
            for (k, s) in amb.coeffs(&col) {
                let ri = *key_index
                    .get(&k)
                    .expect("central multiple stays inside the degree window");
                mat[ri][c] = s;
            }
        }
        let pivots = rref_within(&mut mat, ncols);
        Ok(DegreeSolver { key_index, unknowns, mat, pivots })
    }

    /// Write `b = sum_i r_i z_i` with each `r_i` a polynomial in the
    /// subalgebra variables, or explain why that is impossible or not
    /// unique. The result is back-substituted before it is returned.
    pub fn express_in_basis(&self, b: &AmbientElement) -> Result<Vec<Poly>> {
        let amb = self.csub.ambient();
        let fvars = self.csub.fvars();
        if b.is_zero() {
            return Ok(vec![Poly::zero(fvars); self.basis.len()]);
        }
        let deg_b = amb.degree(b).expect("nonzero element has a degree");
        let bound = deg_b + self.slack;
        if bound > self.degree_cap {
            return Err(Error::CapExceeded(format!(
                "degree window {bound} exceeds the cap {}",
                self.degree_cap
            )));
        }
        let s = self.solver_for(bound)?;
        let rows = s.mat.len();
        let ncols = s.unknowns.len();
        let mut v = vec![Scalar::zero(amb.field_order()); rows];
        for (k, c) in amb.coeffs(b) {
            let ri = *s
                .key_index
                .get(&k)
                .expect("element support lies inside its degree window");
            v[ri] = c;
        }
        // w = E v, the reduced right-hand side.
        let w: Vec<Scalar> = (0..rows)
            .map(|r| {
                let mut acc = Scalar::zero(amb.field_order());
                for (j, vj) in v.iter().enumerate() {
                    if !vj.is_zero() {
                        acc = acc.add(&s.mat[r][ncols + j].mul(vj));
                    }
                }
                acc
            })
            .collect();
        for r in s.pivots.len()..rows {
            if !w[r].is_zero() {
                return Err(Error::NoSolution(format!(
                    "{} has no representation over the basis with coefficient degree <= {}",
                    amb.render(b),
                    bound
                )));
            }
        }
        if s.pivots.len() < ncols {
            return Err(Error::AmbiguousSolution(self.syzygy_witness(&s)));
        }
        let mut rs = vec![Poly::zero(fvars); self.basis.len()];
        for (r, &col) in s.pivots.iter().enumerate() {
            if w[r].is_zero() {
                continue;
            }
            let (i, mon) = &s.unknowns[col];
            rs[*i] = rs[*i].add(&Poly::monomial(fvars, mon.clone(), w[r].clone()));
        }
        let mut acc = amb.zero();
        for (i, r) in rs.iter().enumerate() {
            acc = amb.add(&acc, &amb.mul(&self.csub.eval(r), &self.basis[i]));
        }
        assert!(
            amb.sub(&acc, b).is_zero(),
            "back-substitution must reproduce the input"
        );
        Ok(rs)
    }

    /// A nonzero relation `sum_i r_i z_i = 0` read off a free column.
    fn syzygy_witness(&self, s: &DegreeSolver) -> String {
        let amb = self.csub.ambient();
        let fvars = self.csub.fvars();
        let ncols = s.unknowns.len();
        let pivot_set: BTreeMap<usize, usize> = s
            .pivots
            .iter()
            .enumerate()
            .map(|(r, &c)| (c, r))
            .collect();
        let free = (0..ncols)
            .find(|c| !pivot_set.contains_key(c))
            .expect("a free column exists");
        let mut rs = vec![Poly::zero(fvars); self.basis.len()];
        let (fi, fmon) = &s.unknowns[free];
        rs[*fi] = Poly::monomial(fvars, fmon.clone(), Scalar::one(amb.field_order()));
        for (&c, &r) in &pivot_set {
            let coeff = s.mat[r][free].clone();
            if coeff.is_zero() {
                continue;
            }
            let (i, mon) = &s.unknowns[c];
            rs[*i] = rs[*i].add(&Poly::monomial(fvars, mon.clone(), coeff.neg()));
        }
        let parts: Vec<String> = rs
            .iter()
            .zip(&self.basis)
            .filter(|(r, _)| !r.is_zero())
            .map(|(r, z)| format!("({})*({})", r, amb.render(z)))
            .collect();
        format!("dependent basis: {} = 0", parts.join(" + "))
    }

    /// Certify the basis up to degree `d`: every standard monomial of the
    /// ambient algebra with degree at most `d` must express uniquely, and the
    /// filtration dimensions on both sides must agree.
    pub fn verify_basis(&self, d: u64) -> Result<BasisReport> {
        let amb = self.csub.ambient();
        let keys = amb.keys_up_to(d);
        for key in &keys {
            let atom = amb.atom(key);
            self.express_in_basis(&atom).map_err(|e| match e {
                Error::NoSolution(msg) | Error::AmbiguousSolution(msg) => {
                    Error::NoSolution(format!(
                        "standard monomial {}: {msg}",
                        amb.render(&atom)
                    ))
                }
                other => other,
            })?;
        }
        let mut dims = Vec::new();
        for t in 0..=d {
            let ambient_dim = keys.iter().filter(|k| amb.key_degree(k) <= t).count();
            let module_dim: usize = self
                .basis_degrees
                .iter()
                .filter(|&&zd| zd <= t)
                .map(|&zd| self.csub.fvars().monomials_up_to(t - zd).len())
                .sum();
            if ambient_dim != module_dim {
                return Err(Error::DimensionMismatch {
                    degree: t,
                    ambient: ambient_dim,
                    module: module_dim,
                });
            }
            dims.push((t, ambient_dim));
        }
        Ok(BasisReport { verified_to: d, dims })
    }
}

/// Greedy module-basis candidate for a commutative base over invariant
/// generators: walk the standard monomials in degree order and keep each one
/// that is not an `R`-combination of those already kept, until `target` are
/// found.
pub fn invariant_basis_suggest(
    csub: &CentralSubalgebra,
    target: usize,
    degree_cap: u64,
) -> Result<Vec<AmbientElement>> {
    let amb = csub.ambient();
    let pres = amb.base_pres();
    if amb.twisted_alg().is_some() {
        return Err(Error::Invalid("basis search needs a plain algebra".into()));
    }
    for j in 0..pres.num_gens() {
        for i in 0..j {
            if !pres.q_coeff(j, i).is_one() || !pres.tail(j, i).is_zero() {
                return Err(Error::Invalid("basis search needs a commutative algebra".into()));
            }
        }
    }
    let mut chosen: Vec<AmbientElement> = Vec::new();
    for key in amb.keys_up_to(degree_cap) {
        if chosen.len() == target {
            break;
        }
        let m = amb.atom(&key);
        if chosen.is_empty() {
            // Nothing spans yet; 1 (the first standard monomial) starts it.
            chosen.push(m);
            continue;
        }
        let trial = FreeModuleStructure::new(
            csub.clone(),
            chosen.clone(),
            Some(0),
            Some(degree_cap + 1),
        )?;
        match trial.express_in_basis(&m) {
            Ok(_) => {}
            Err(Error::NoSolution(_)) => chosen.push(m),
            Err(Error::AmbiguousSolution(w)) => {
                return Err(Error::AmbiguousSolution(w));
            }
            Err(e) => return Err(e),
        }
    }
    if chosen.len() < target {
        return Err(Error::NoSolution(format!(
            "only {} independent monomials up to degree {degree_cap}, wanted {target}",
            chosen.len()
        )));
    }
    Ok(chosen)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::action::{AlgebraMap, MonoidAction};
    use crate::pbw::{PbwPresentation, RelationInput};
    use crate::twist::TwistedAlgebra;

    fn rel(upper: &str, lower: &str, q: i64, tail: Poly) -> RelationInput {
        RelationInput {
            upper: upper.into(),
            lower: lower.into(),
            q: Scalar::from_int(1, q),
            tail,
        }
    }

    fn v2() -> Arc<PbwPresentation> {
        let vars = VarSet::unweighted(&["x", "y"]).unwrap();
        PbwPresentation::new(vars.clone(), 1, vec![rel("y", "x", -1, Poly::zero(&vars))])
            .unwrap()
    }

    fn w2() -> Arc<PbwPresentation> {
        let vars = VarSet::unweighted(&["x", "y"]).unwrap();
        PbwPresentation::new(vars.clone(), 1, vec![rel("y", "x", -1, Poly::one(&vars))])
            .unwrap()
    }

    fn subalg(amb: &Ambient, names: &[&str], gens: &[&str]) -> CentralSubalgebra {
        CentralSubalgebra::new(
            amb.clone(),
            names.iter().map(|s| s.to_string()).collect(),
            gens.iter().map(|s| amb.parse(s).unwrap()).collect(),
        )
        .unwrap()
    }

    fn module(amb: &Ambient, names: &[&str], gens: &[&str], basis: &[&str]) -> FreeModuleStructure {
        FreeModuleStructure::new(
            subalg(amb, names, gens),
            basis.iter().map(|s| amb.parse(s).unwrap()).collect(),
            None,
            None,
        )
        .unwrap()
    }

    #[test]
    fn sign_commuting_over_center() {
        let amb = Ambient::pbw(v2());
        let f = module(&amb, &["f1", "f2"], &["x^2", "y^2"], &["1", "x", "y", "x*y"]);
        let rs = f.express_in_basis(&amb.parse("x^3*y").unwrap()).unwrap();
        assert!(rs[0].is_zero() && rs[1].is_zero() && rs[2].is_zero());
        assert_eq!(rs[3].to_string(), "f1");
        f.verify_basis(6).unwrap();
    }

    #[test]
    fn symmetric_functions_express() {
        let vars = VarSet::unweighted(&["x", "y"]).unwrap();
        let amb = Ambient::pbw(PbwPresentation::commutative(vars, 1));
        let f = module(&amb, &["f1", "f2"], &["x+y", "x*y"], &["1", "x"]);
        let rs = f.express_in_basis(&amb.parse("x^2").unwrap()).unwrap();
        // x^2 = -xy * 1 + (x+y) * x
        assert_eq!(rs[0].to_string(), "-f2");
        assert_eq!(rs[1].to_string(), "f1");
        let report = f.verify_basis(5).unwrap();
        assert_eq!(report.dims.last().unwrap().1, 21);
    }

    #[test]
    fn dependent_basis_is_ambiguous() {
        let vars = VarSet::unweighted(&["x", "y"]).unwrap();
        let amb = Ambient::pbw(PbwPresentation::commutative(vars, 1));
        let f = module(&amb, &["f1", "f2"], &["x+y", "x*y"], &["1", "x", "y", "x+y"]);
        match f.express_in_basis(&amb.parse("x").unwrap()) {
            Err(Error::AmbiguousSolution(w)) => assert!(w.contains("= 0")),
            other => panic!("expected ambiguity, got {other:?}"),
        }
        assert!(f.verify_basis(3).is_err());
    }

    #[test]
    fn missing_representation_is_no_solution() {
        let amb = Ambient::pbw(v2());
        // {1, x} cannot reach y over k[x^2, y^2].
        let f = module(&amb, &["f1", "f2"], &["x^2", "y^2"], &["1", "x"]);
        assert!(matches!(
            f.express_in_basis(&amb.parse("y").unwrap()),
            Err(Error::NoSolution(_))
        ));
    }

    #[test]
    fn filtered_weyl_like_expression() {
        let amb = Ambient::pbw(w2());
        let f = module(&amb, &["f1", "f2"], &["x^2", "y^2"], &["1", "x", "y", "x*y"]);
        assert_eq!(f.slack(), 4);
        // (xy)^2 normalizes to -x^2y^2 + xy.
        let sq = amb.pow(&amb.parse("x*y").unwrap(), 2);
        let rs = f.express_in_basis(&sq).unwrap();
        assert_eq!(rs[0].to_string(), "-f1*f2");
        assert_eq!(rs[3].to_string(), "1");
        f.verify_basis(6).unwrap();
    }

    #[test]
    fn rank_eight_basis_over_invariants() {
        let amb = Ambient::pbw(v2());
        let f = module(
            &amb,
            &["X", "Y"],
            &["x^2+y^2", "x^2*y^2"],
            &["1", "x", "y", "x*y", "x^2", "x^3", "x^2*y", "x^3*y"],
        );
        let report = f.verify_basis(6).unwrap();
        // Filtration dimensions of the free module match the algebra.
        assert_eq!(report.dims[6], (6, 28));
    }

    #[test]
    fn ore_extension_module() {
        let vars = VarSet::unweighted(&["x", "y"]).unwrap();
        let pres = PbwPresentation::commutative(vars.clone(), 1);
        let swap =
            AlgebraMap::new(pres.clone(), vec![Poly::var(&vars, 1), Poly::var(&vars, 0)])
                .unwrap();
        let alg = Arc::new(TwistedAlgebra::skew_polynomial(swap, 4).unwrap());
        let amb = Ambient::twisted(alg, "t").unwrap();
        let f = module(
            &amb,
            &["X", "Y", "T"],
            &["x+y", "x*y", "t^2"],
            &["1", "x", "t", "x*t"],
        );
        let rs = f.express_in_basis(&amb.parse("t^3").unwrap()).unwrap();
        assert_eq!(rs[2].to_string(), "T");
        // t*x normalizes to y t = (X - x) t.
        let tx = amb.mul(&amb.parse("t").unwrap(), &amb.parse("x").unwrap());
        let rs = f.express_in_basis(&tx).unwrap();
        assert_eq!(rs[2].to_string(), "X");
        assert_eq!(rs[3].to_string(), "-1");
        f.verify_basis(5).unwrap();
    }

    #[test]
    fn skew_group_module() {
        let alg = Arc::new(TwistedAlgebra::skew_group_symmetric(v2(), 2).unwrap());
        let amb = Ambient::twisted(alg, "t").unwrap();
        let zs: Vec<String> = ["1", "x", "y", "x*y", "x^2", "x^3", "x^2*y", "x^3*y"]
            .iter()
            .flat_map(|m| [format!("{m}#e"), format!("{m}#g21")])
            .collect();
        let f = FreeModuleStructure::new(
            subalg(&amb, &["X", "Y"], &["(x^2+y^2)#e", "x^2*y^2#e"]),
            zs.iter().map(|s| amb.parse(s).unwrap()).collect(),
            None,
            None,
        )
        .unwrap();
        let b = amb.parse("(x^2+y^2)#g21").unwrap();
        let rs = f.express_in_basis(&b).unwrap();
        // X * (1#g).
        assert_eq!(rs[1].to_string(), "X");
        assert!(rs.iter().enumerate().all(|(i, r)| i == 1 || r.is_zero()));
        f.verify_basis(4).unwrap();
    }

    #[test]
    fn membership_in_subalgebra() {
        let amb = Ambient::pbw(v2());
        let r = subalg(&amb, &["X", "Y"], &["x^2+y^2", "x^2*y^2"]);
        let p = r
            .express_in_generators(&amb.parse("x^4+y^4").unwrap(), 10)
            .unwrap();
        assert_eq!(p.to_string(), "X^2-2*Y");
        assert!(r
            .express_in_generators(&amb.parse("x^2").unwrap(), 10)
            .is_err());
    }

    #[test]
    fn greedy_invariant_basis() {
        let vars = VarSet::unweighted(&["x", "y"]).unwrap();
        let amb = Ambient::pbw(PbwPresentation::commutative(vars, 1));
        let csub = subalg(&amb, &["e1", "e2"], &["x+y", "x*y"]);
        let z = invariant_basis_suggest(&csub, 2, 6).unwrap();
        let f = FreeModuleStructure::new(csub, z, None, None).unwrap();
        f.verify_basis(5).unwrap();
    }

    #[test]
    fn greedy_basis_symmetric_three() {
        let vars = VarSet::unweighted(&["x1", "x2", "x3"]).unwrap();
        let amb = Ambient::pbw(PbwPresentation::commutative(vars, 1));
        let csub = subalg(
            &amb,
            &["e1", "e2", "e3"],
            &["x1+x2+x3", "x1*x2+x1*x3+x2*x3", "x1*x2*x3"],
        );
        let z = invariant_basis_suggest(&csub, 6, 8).unwrap();
        assert_eq!(z.len(), 6);
        let f = FreeModuleStructure::new(csub, z, None, None).unwrap();
        f.verify_basis(5).unwrap();
    }

    #[test]
    fn noncentral_generator_rejected() {
        let amb = Ambient::pbw(v2());
        assert!(matches!(
            CentralSubalgebra::new(
                amb.clone(),
                vec!["f".into()],
                vec![amb.parse("x").unwrap()]
            ),
            Err(Error::NotCentral { .. })
        ));
    }

    #[test]
    fn monoid_algebra_module() {
        use crate::action::NumericalMonoid;
        let pres = PbwPresentation::commutative(VarSet::empty(), 1);
        let id = AlgebraMap::identity(pres);
        let m = NumericalMonoid::new(vec![2, 3]).unwrap();
        let action = MonoidAction::powers(m, id, 4).unwrap();
        let amb = Ambient::twisted(Arc::new(TwistedAlgebra::new(action)), "t").unwrap();
        let f = module(
            &amb,
            &["T"],
            &["t^6"],
            &["1", "t^2", "t^3", "t^4", "t^5", "t^7"],
        );
        let rs = f.express_in_basis(&amb.parse("t^8").unwrap()).unwrap();
        assert_eq!(rs[1].to_string(), "T");
        f.verify_basis(9).unwrap();
    }
}
