//! Sparse multivariate polynomials over `Scalar`, ordered by weighted
//! degree-lexicographic comparison (higher weighted degree first, ties by
//! exponent vector with earlier variables dominating). Commutative; the
//! same monomial keys double as normal-form words for the PBW layer.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Ordered list of variable names with positive integer weights.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VarSet {
    vars: Vec<(String, u32)>,
}

impl VarSet {
    pub fn new(vars: Vec<(String, u32)>) -> Result<Arc<VarSet>> {
        for (name, w) in &vars {
            if !is_identifier(name) {
                return Err(Error::Invalid(format!("bad variable name `{name}`")));
            }
            if *w == 0 {
                return Err(Error::Invalid(format!("variable `{name}` has weight 0")));
            }
        }
        for i in 0..vars.len() {
            for j in i + 1..vars.len() {
                if vars[i].0 == vars[j].0 {
                    return Err(Error::Invalid(format!("duplicate variable `{}`", vars[i].0)));
                }
            }
        }
        Ok(Arc::new(VarSet { vars }))
    }

    pub fn unweighted(names: &[&str]) -> Result<Arc<VarSet>> {
        VarSet::new(names.iter().map(|n| (n.to_string(), 1)).collect())
    }

    pub fn empty() -> Arc<VarSet> {
        Arc::new(VarSet { vars: vec![] })
    }

    pub fn len(&self) -> usize {
        self.vars.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vars.is_empty()
    }

    pub fn name(&self, i: usize) -> &str {
        &self.vars[i].0
    }

    pub fn weight(&self, i: usize) -> u32 {
        self.vars[i].1
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.vars.iter().position(|(n, _)| n == name)
    }

    pub fn names(&self) -> impl Iterator<Item = &str> {
        self.vars.iter().map(|(n, _)| n.as_str())
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, u32)> {
        self.vars.iter().map(|(n, w)| (n.as_str(), *w))
    }

    /// Extends with a fresh variable, erroring on a name clash.
    pub fn extended(&self, name: &str, weight: u32) -> Result<Arc<VarSet>> {
        let mut vars = self.vars.clone();
        vars.push((name.to_string(), weight));
        VarSet::new(vars)
    }

    pub fn wdeg(&self, exps: &[u32]) -> u64 {
        exps.iter()
            .zip(&self.vars)
            .map(|(e, (_, w))| *e as u64 * *w as u64)
            .sum()
    }

    /// All exponent vectors of exact weighted degree `d`, ascending.
    pub fn monomials_of_degree(self: &Arc<Self>, d: u64) -> Vec<Mon> {
        let mut out = Vec::new();
        let mut exps = vec![0u32; self.len()];
        enumerate(self, 0, d, &mut exps, &mut out, true);
        out.sort();
        out
    }

    /// All exponent vectors of weighted degree at most `d`, ascending.
    pub fn monomials_up_to(self: &Arc<Self>, d: u64) -> Vec<Mon> {
        let mut out = Vec::new();
        let mut exps = vec![0u32; self.len()];
        enumerate(self, 0, d, &mut exps, &mut out, false);
        out.sort();
        out
    }
}

fn enumerate(
    vs: &Arc<VarSet>,
    i: usize,
    budget: u64,
    exps: &mut Vec<u32>,
    out: &mut Vec<Mon>,
    exact: bool,
) {
    if i == vs.len() {
        if !exact || budget == 0 {
            out.push(Mon::new(vs, exps.clone()));
        }
        return;
    }
    let w = vs.weight(i) as u64;
    let max = budget / w;
    for e in 0..=max {
        exps[i] = e as u32;
        enumerate(vs, i + 1, budget - e * w, exps, out, exact);
    }
    exps[i] = 0;
}

fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

/// Monomial key: cached weighted degree first so the derived order is
/// weighted deglex (ties broken by exponent vector, earlier variables
/// dominating).
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct Mon {
    wdeg: u64,
    exps: Vec<u32>,
}

impl Mon {
    pub fn new(vs: &Arc<VarSet>, exps: Vec<u32>) -> Mon {
        debug_assert_eq!(exps.len(), vs.len());
        Mon {
            wdeg: vs.wdeg(&exps),
            exps,
        }
    }

    pub fn one(vs: &Arc<VarSet>) -> Mon {
        Mon {
            wdeg: 0,
            exps: vec![0; vs.len()],
        }
    }

    pub fn wdeg(&self) -> u64 {
        self.wdeg
    }

    pub fn exps(&self) -> &[u32] {
        &self.exps
    }

    pub fn is_one(&self) -> bool {
        self.exps.iter().all(|&e| e == 0)
    }

    pub fn mul(&self, rhs: &Mon) -> Mon {
        Mon {
            wdeg: self.wdeg + rhs.wdeg,
            exps: self
                .exps
                .iter()
                .zip(&rhs.exps)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    /// Exponentwise quotient if `rhs` divides `self`.
    pub fn div(&self, rhs: &Mon) -> Option<Mon> {
        let mut exps = Vec::with_capacity(self.exps.len());
        for (a, b) in self.exps.iter().zip(&rhs.exps) {
            if a < b {
                return None;
            }
            exps.push(a - b);
        }
        Some(Mon {
            wdeg: self.wdeg - rhs.wdeg,
            exps,
        })
    }

    pub fn render(&self, vs: &VarSet) -> String {
        let mut parts = Vec::new();
        for (i, &e) in self.exps.iter().enumerate() {
            if e == 1 {
                parts.push(vs.name(i).to_string());
            } else if e > 1 {
                parts.push(format!("{}^{}", vs.name(i), e));
            }
        }
        if parts.is_empty() {
            "1".to_string()
        } else {
            parts.join("*")
        }
    }
}

/// Sparse polynomial. Invariant: no stored zero coefficients, every key
/// has exponent length matching the variable set.
#[derive(Clone, PartialEq)]
pub struct Poly {
    vars: Arc<VarSet>,
    terms: BTreeMap<Mon, Scalar>,
}

impl Poly {
    pub fn zero(vars: &Arc<VarSet>) -> Poly {
        Poly {
            vars: vars.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(vars: &Arc<VarSet>, c: Scalar) -> Poly {
        let mut p = Poly::zero(vars);
        if !c.is_zero() {
            p.terms.insert(Mon::one(vars), c);
        }
        p
    }

    pub fn one(vars: &Arc<VarSet>) -> Poly {
        Poly::constant(vars, Scalar::one(1))
    }

    pub fn int(vars: &Arc<VarSet>, n: i64) -> Poly {
        Poly::constant(vars, Scalar::from_int(1, n))
    }

    pub fn var(vars: &Arc<VarSet>, i: usize) -> Poly {
        let mut exps = vec![0u32; vars.len()];
        exps[i] = 1;
        Poly::from_terms(vars, vec![(exps, Scalar::one(1))])
    }

    pub fn var_named(vars: &Arc<VarSet>, name: &str) -> Result<Poly> {
        let i = vars
            .index_of(name)
            .ok_or_else(|| Error::UnknownVariable(name.to_string()))?;
        Ok(Poly::var(vars, i))
    }

    pub fn monomial(vars: &Arc<VarSet>, mon: Mon, c: Scalar) -> Poly {
        let mut p = Poly::zero(vars);
        if !c.is_zero() {
            p.terms.insert(mon, c);
        }
        p
    }

    pub fn from_terms(vars: &Arc<VarSet>, terms: Vec<(Vec<u32>, Scalar)>) -> Poly {
        let mut p = Poly::zero(vars);
        for (exps, c) in terms {
            p.add_term(Mon::new(vars, exps), c);
        }
        p
    }

    pub fn vars(&self) -> &Arc<VarSet> {
        &self.vars
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Mon, &Scalar)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, mon: &Mon) -> Scalar {
        self.terms.get(mon).cloned().unwrap_or_else(|| Scalar::zero(1))
    }

    /// Leading term in weighted deglex (the maximal key).
    pub fn leading(&self) -> Option<(&Mon, &Scalar)> {
        self.terms.iter().next_back()
    }

    /// Weighted degree of the leading term; None for the zero polynomial.
    pub fn degree(&self) -> Option<u64> {
        self.leading().map(|(m, _)| m.wdeg())
    }

    pub(crate) fn add_term(&mut self, mon: Mon, c: Scalar) {
        if c.is_zero() {
            return;
        }
        debug_assert_eq!(mon.exps().len(), self.vars.len());
        match self.terms.entry(mon) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let s = e.get().add(&c);
                if s.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = s;
                }
            }
        }
    }

    fn assert_same_vars(&self, rhs: &Poly) {
        assert!(
            self.vars == rhs.vars,
            "polynomial variable sets differ: [{}] vs [{}]",
            self.vars.names().collect::<Vec<_>>().join(","),
            rhs.vars.names().collect::<Vec<_>>().join(","),
        );
    }

    pub fn add(&self, rhs: &Poly) -> Poly {
        self.assert_same_vars(rhs);
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, rhs: &Poly) -> Poly {
        self.assert_same_vars(rhs);
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), c.neg());
        }
        out
    }

    pub fn neg(&self) -> Poly {
        let mut out = self.clone();
        for c in out.terms.values_mut() {
            *c = c.neg();
        }
        out
    }

    pub fn scale(&self, c: &Scalar) -> Poly {
        if c.is_zero() {
            return Poly::zero(&self.vars);
        }
        let mut out = Poly::zero(&self.vars);
        for (m, a) in &self.terms {
            out.terms.insert(m.clone(), a.mul(c));
        }
        out
    }

    pub fn mul(&self, rhs: &Poly) -> Poly {
        self.assert_same_vars(rhs);
        let mut out = Poly::zero(&self.vars);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                out.add_term(ma.mul(mb), ca.mul(cb));
            }
        }
        out
    }

    /// Fallible product for caller-supplied operands.
    pub fn checked_mul(&self, rhs: &Poly) -> Result<Poly> {
        if self.vars != rhs.vars {
            return Err(Error::VarMismatch(format!(
                "[{}] vs [{}]",
                self.vars.names().collect::<Vec<_>>().join(","),
                rhs.vars.names().collect::<Vec<_>>().join(",")
            )));
        }
        Ok(self.mul(rhs))
    }

    pub fn pow(&self, e: u32) -> Poly {
        let mut acc = Poly::one(&self.vars);
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// Exact division; errors if `rhs` does not divide `self`.
    pub fn exact_div(&self, rhs: &Poly) -> Result<Poly> {
        self.assert_same_vars(rhs);
        let (lm, lc) = rhs
            .leading()
            .ok_or_else(|| Error::NonExactDivision("division by zero".into()))?;
        let lc_inv = lc.inv();
        let mut rem = self.clone();
        let mut quo = Poly::zero(&self.vars);
        while let Some((rm, rc)) = rem.leading() {
            let qm = rm.div(lm).ok_or_else(|| {
                Error::NonExactDivision(format!(
                    "leading term {} not divisible by {}",
                    rm.render(&self.vars),
                    lm.render(&self.vars)
                ))
            })?;
            let qc = rc.mul(&lc_inv);
            quo.add_term(qm.clone(), qc.clone());
            // rem -= (qc * qm) * rhs
            for (m, c) in &rhs.terms {
                rem.add_term(qm.mul(m), qc.mul(c).neg());
            }
        }
        Ok(quo)
    }

    /// Scalar-multiple test: Some(c) iff self == c * rhs with c a unit.
    pub fn eq_up_to_scalar(&self, rhs: &Poly) -> Option<Scalar> {
        if self.is_zero() && rhs.is_zero() {
            return Some(Scalar::one(1));
        }
        if self.is_zero() || rhs.is_zero() {
            return None;
        }
        if self.terms.len() != rhs.terms.len() {
            return None;
        }
        let (lm_a, lc_a) = self.leading().unwrap();
        let (lm_b, lc_b) = rhs.leading().unwrap();
        if lm_a != lm_b {
            return None;
        }
        let c = lc_a.mul(&lc_b.inv());
        if *self == rhs.scale(&c) {
            Some(c)
        } else {
            None
        }
    }

    /// Divides by the leading coefficient so the deglex-leading term is
    /// monic. Zero stays zero.
    pub fn normalized(&self) -> Poly {
        match self.leading() {
            None => self.clone(),
            Some((_, lc)) => self.scale(&lc.inv()),
        }
    }

    /// Splits into weighted-homogeneous components keyed by degree.
    pub fn homogeneous_components(&self) -> BTreeMap<u64, Poly> {
        let mut out: BTreeMap<u64, Poly> = BTreeMap::new();
        for (m, c) in &self.terms {
            out.entry(m.wdeg())
                .or_insert_with(|| Poly::zero(&self.vars))
                .add_term(m.clone(), c.clone());
        }
        out
    }

    /// True if every term has the same weighted degree (or zero).
    pub fn is_homogeneous(&self) -> bool {
        self.homogeneous_components().len() <= 1
    }

    /// Evaluates the polynomial with `images[i]` substituted for variable
    /// i. All images must share `target`.
    pub fn substitute(&self, target: &Arc<VarSet>, images: &[Poly]) -> Result<Poly> {
        if images.len() != self.vars.len() {
            return Err(Error::BadSubstitution(format!(
                "{} images for {} variables",
                images.len(),
                self.vars.len()
            )));
        }
        for img in images {
            if img.vars() != target {
                return Err(Error::BadSubstitution(
                    "image over a different variable set".into(),
                ));
            }
        }
        // lazily extended power tables, powers[i][k] = images[i]^k
        let mut powers: Vec<Vec<Poly>> = images
            .iter()
            .map(|img| vec![Poly::one(target), img.clone()])
            .collect();
        let mut out = Poly::zero(target);
        for (m, c) in &self.terms {
            let mut term = Poly::constant(target, c.clone());
            for (i, &e) in m.exps().iter().enumerate() {
                if e == 0 {
                    continue;
                }
                while powers[i].len() <= e as usize {
                    let next = powers[i].last().unwrap().mul(&images[i]);
                    powers[i].push(next);
                }
                term = term.mul(&powers[i][e as usize]);
            }
            out = out.add(&term);
        }
        Ok(out)
    }

    /// Reinterprets the polynomial over a variable set that carries the
    /// same names in the same order (weights may differ).
    pub fn with_vars(&self, target: &Arc<VarSet>) -> Result<Poly> {
        if target.len() != self.vars.len()
            || !self
                .vars
                .names()
                .zip(target.names())
                .all(|(a, b)| a == b)
        {
            return Err(Error::VarMismatch(
                "variable names differ between source and target".into(),
            ));
        }
        let mut out = Poly::zero(target);
        for (m, c) in &self.terms {
            out.add_term(Mon::new(target, m.exps().to_vec()), c.clone());
        }
        Ok(out)
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (m, c) in self.terms.iter().rev() {
            let (neg, body, parens) = c.render();
            let mon = m.render(&self.vars);
            if first {
                if neg {
                    write!(f, "-")?;
                }
                first = false;
            } else {
                write!(f, "{}", if neg { "-" } else { "+" })?;
            }
            if m.is_one() {
                // bare coefficient
                if parens {
                    write!(f, "({body})")?;
                } else {
                    write!(f, "{body}")?;
                }
            } else if body == "1" && !parens {
                write!(f, "{mon}")?;
            } else if parens {
                write!(f, "({body})*{mon}")?;
            } else {
                write!(f, "{body}*{mon}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly({self})")
    }
}

/// Fraction-free determinant (Bareiss). Pivots are chosen among the
/// rows with a nonzero entry in the working column by minimal term
/// count; row swaps flip the sign. Intermediate divisions are exact.
pub fn bareiss_det(mat: &[Vec<Poly>]) -> Result<Poly> {
    let n = mat.len();
    for row in mat {
        if row.len() != n {
            return Err(Error::NonSquareMatrix {
                rows: n,
                cols: row.len(),
            });
        }
    }
    if n == 0 {
        return Err(Error::Invalid("determinant of empty matrix".into()));
    }
    let vars = mat[0][0].vars().clone();
    let mut m: Vec<Vec<Poly>> = mat.to_vec();
    for row in &m {
        for p in row {
            if *p.vars() != vars {
                return Err(Error::VarMismatch("matrix entries".into()));
            }
        }
    }
    let mut sign = false;
    let mut prev = Poly::one(&vars);
    for k in 0..n {
        // pivot: nonzero entry in column k at row >= k, fewest terms
        let pivot = (k..n)
            .filter(|&r| !m[r][k].is_zero())
            .min_by_key(|&r| m[r][k].num_terms());
        let pivot = match pivot {
            Some(p) => p,
            None => return Ok(Poly::zero(&vars)),
        };
        if pivot != k {
            m.swap(pivot, k);
            sign = !sign;
        }
        if k == n - 1 {
            break;
        }
        let (pk, rest) = {
            let (head, tail) = m.split_at_mut(k + 1);
            (&head[k], tail)
        };
        for row in rest.iter_mut() {
            for j in (k + 1..n).rev() {
                let num = pk[k].mul(&row[j]).sub(&row[k].mul(&pk[j]));
                row[j] = num.exact_div(&prev).expect("Bareiss division is exact");
            }
            row[k] = Poly::zero(&vars);
        }
        prev = pk[k].clone();
    }
    let det = m[n - 1][n - 1].clone();
    Ok(if sign { det.neg() } else { det })
}

/// Cofactor-expansion determinant; exponential, used as an oracle in
/// tests and for tiny matrices.
pub fn cofactor_det(mat: &[Vec<Poly>]) -> Result<Poly> {
    let n = mat.len();
    if n == 0 {
        return Err(Error::Invalid("determinant of empty matrix".into()));
    }
    let vars = mat[0][0].vars().clone();
    if n == 1 {
        return Ok(mat[0][0].clone());
    }
    let mut det = Poly::zero(&vars);
    for j in 0..n {
        if mat[0][j].is_zero() {
            continue;
        }
        let minor: Vec<Vec<Poly>> = (1..n)
            .map(|i| {
                (0..n)
                    .filter(|&c| c != j)
                    .map(|c| mat[i][c].clone())
                    .collect()
            })
            .collect();
        let sub = cofactor_det(&minor)?;
        let term = mat[0][j].mul(&sub);
        det = if j % 2 == 0 { det.add(&term) } else { det.sub(&term) };
    }
    Ok(det)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn vs2() -> Arc<VarSet> {
        VarSet::unweighted(&["x", "y"]).unwrap()
    }

    fn p(vs: &Arc<VarSet>, s: &str) -> Poly {
        crate::parse::parse_poly(vs, 1, s).unwrap()
    }

    #[test]
    fn deglex_order() {
        let vs = vs2();
        let x2 = Mon::new(&vs, vec![2, 0]);
        let xy = Mon::new(&vs, vec![1, 1]);
        let y2 = Mon::new(&vs, vec![0, 2]);
        let x = Mon::new(&vs, vec![1, 0]);
        assert!(x2 > xy && xy > y2 && y2 > x);
    }

    #[test]
    fn weighted_degree_respects_weights() {
        let vs = VarSet::new(vec![("X".into(), 2), ("Y".into(), 4)]).unwrap();
        let m = Mon::new(&vs, vec![1, 2]);
        assert_eq!(m.wdeg(), 10);
    }

    #[test]
    fn arithmetic_and_display() {
        let vs = vs2();
        let f = p(&vs, "x+y").mul(&p(&vs, "x-y"));
        assert_eq!(f.to_string(), "x^2-y^2");
        let g = p(&vs, "x+y").pow(2);
        assert_eq!(g.to_string(), "x^2+2*x*y+y^2");
        assert!(g.sub(&g).is_zero());
    }

    #[test]
    fn exact_division() {
        let vs = vs2();
        let f = p(&vs, "x^2-y^2");
        let q = f.exact_div(&p(&vs, "x-y")).unwrap();
        assert_eq!(q, p(&vs, "x+y"));
        assert!(f.exact_div(&p(&vs, "x+2*y")).is_err());
        // divisor with several terms, quotient with fractions
        let g = p(&vs, "2*x+2*y").mul(&p(&vs, "x^2+1/3"));
        assert_eq!(g.exact_div(&p(&vs, "2*x+2*y")).unwrap(), p(&vs, "x^2+1/3"));
    }

    #[test]
    fn eq_up_to_scalar_witness() {
        let vs = vs2();
        let f = p(&vs, "x^2-4*y^2");
        let g = p(&vs, "-3*x^2+12*y^2");
        let c = f.eq_up_to_scalar(&g).unwrap();
        assert_eq!(f, g.scale(&c));
        assert!(f.eq_up_to_scalar(&p(&vs, "x^2+4*y^2")).is_none());
        assert!(f.eq_up_to_scalar(&p(&vs, "x^2")).is_none());
    }

    #[test]
    fn substitution() {
        let vs = vs2();
        let target = VarSet::unweighted(&["u", "v"]).unwrap();
        let f = p(&vs, "x^2+y");
        let images = vec![p(&target, "u+v"), p(&target, "u*v")];
        let g = f.substitute(&target, &images).unwrap();
        assert_eq!(g, p(&target, "u^2+2*u*v+v^2+u*v").clone());
    }

    #[test]
    fn bareiss_matches_cofactor_small() {
        let vs = vs2();
        let rows = vec![
            vec![p(&vs, "x"), p(&vs, "y"), p(&vs, "1")],
            vec![p(&vs, "y"), p(&vs, "x+1"), p(&vs, "0")],
            vec![p(&vs, "1"), p(&vs, "0"), p(&vs, "x*y")],
        ];
        let a = bareiss_det(&rows).unwrap();
        let b = cofactor_det(&rows).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn bareiss_zero_pivot_swaps() {
        let vs = vs2();
        let rows = vec![
            vec![p(&vs, "0"), p(&vs, "1")],
            vec![p(&vs, "1"), p(&vs, "0")],
        ];
        assert_eq!(bareiss_det(&rows).unwrap(), p(&vs, "-1"));
        let rows = vec![
            vec![p(&vs, "0"), p(&vs, "x")],
            vec![p(&vs, "0"), p(&vs, "y")],
        ];
        assert!(bareiss_det(&rows).unwrap().is_zero());
    }

    #[test]
    fn monomial_enumeration_weighted() {
        let vs = VarSet::new(vec![("X".into(), 2), ("Y".into(), 4)]).unwrap();
        let up = vs.monomials_up_to(8);
        // X^aY^b with 2a+4b <= 8: (a,b) in {(0..4,0),(0..2,1),(0,2)}
        assert_eq!(up.len(), 5 + 3 + 1);
        let exact = vs.monomials_of_degree(8);
        assert_eq!(exact.len(), 3); // X^4, X^2Y, Y^2
    }

    #[test]
    fn homogeneous_components_split() {
        let vs = vs2();
        let f = p(&vs, "x^2+x*y+x+3");
        let comps = f.homogeneous_components();
        assert_eq!(comps.len(), 3);
        assert_eq!(comps[&2], p(&vs, "x^2+x*y"));
        assert_eq!(comps[&1], p(&vs, "x"));
        assert_eq!(comps[&0], p(&vs, "3"));
    }
}
