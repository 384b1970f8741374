//! Algebras presented by quadratic rewriting rules with a basis of
//! ordered monomials.
//!
//! Generators x_0 < x_1 < ... carry positive weights. For every pair
//! j > i there is a rule x_j x_i -> q * x_i x_j + tail where q is a
//! nonzero scalar and every tail monomial is strictly smaller than
//! x_i x_j in weighted deglex; unspecified pairs commute. Under these
//! conditions rewriting terminates (the pair (commutative monomial,
//! inversion count) drops lexicographically at each step), and the
//! constructor rejects any presentation whose overlaps x_k x_j x_i do
//! not resolve consistently, so elements of a constructed presentation
//! always have a well-defined normal form: a commutative polynomial
//! over the generator variables, with the noncommutative product
//! supplied by [`PbwPresentation::nc_mul`].

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::poly::{Mon, Poly, VarSet};
use crate::scalar::Scalar;

/// One quadratic rule, input form. `upper` and `lower` name generators
/// with `upper` later in the generator order.
#[derive(Debug, Clone)]
pub struct RelationInput {
    pub upper: String,
    pub lower: String,
    pub q: Scalar,
    pub tail: Poly,
}

#[derive(Debug)]
pub struct PbwPresentation {
    vars: Arc<VarSet>,
    order: u32,
    /// q[j][i], defined for i < j.
    q: Vec<Vec<Scalar>>,
    /// tails[j][i], defined for i < j.
    tails: Vec<Vec<Poly>>,
}

impl PbwPresentation {
    /// Builds and validates a presentation. Rules for pairs not listed
    /// default to plain commutation. Fails if a tail is not deglex-smaller
    /// than its ordered word, if a coefficient lives in the wrong field,
    /// or if some overlap resolves two different ways.
    pub fn new(
        vars: Arc<VarSet>,
        order: u32,
        relations: Vec<RelationInput>,
    ) -> Result<Arc<PbwPresentation>> {
        let n = vars.len();
        let mut q: Vec<Vec<Scalar>> = (0..n).map(|j| vec![Scalar::one(1); j]).collect();
        let mut tails: Vec<Vec<Poly>> = (0..n).map(|j| vec![Poly::zero(&vars); j]).collect();
        let mut seen: Vec<Vec<bool>> = (0..n).map(|j| vec![false; j]).collect();
        for rel in relations {
            let ju = vars.index_of(&rel.upper).ok_or_else(|| Error::BadRelation {
                upper: rel.upper.clone(),
                lower: rel.lower.clone(),
                msg: "unknown generator".into(),
            })?;
            let il = vars.index_of(&rel.lower).ok_or_else(|| Error::BadRelation {
                upper: rel.upper.clone(),
                lower: rel.lower.clone(),
                msg: "unknown generator".into(),
            })?;
            let bad = |msg: &str| Error::BadRelation {
                upper: rel.upper.clone(),
                lower: rel.lower.clone(),
                msg: msg.into(),
            };
            if ju <= il {
                return Err(bad("left side must be a descending pair"));
            }
            if seen[ju][il] {
                return Err(bad("duplicate rule for this pair"));
            }
            seen[ju][il] = true;
            if rel.q.is_zero() {
                return Err(bad("coefficient of the ordered word must be nonzero"));
            }
            check_order(order, &rel.q).map_err(|m| bad(&m))?;
            if rel.tail.vars() != &vars {
                return Err(bad("tail is over a different variable set"));
            }
            let mut junction = vec![0u32; n];
            junction[il] += 1;
            junction[ju] += 1;
            let junction = Mon::new(&vars, junction);
            for (m, c) in rel.tail.terms() {
                if *m >= junction {
                    return Err(bad(&format!(
                        "tail term {} is not smaller than {}",
                        m.render(&vars),
                        junction.render(&vars)
                    )));
                }
                check_order(order, c).map_err(|m| bad(&m))?;
            }
            q[ju][il] = rel.q;
            tails[ju][il] = rel.tail;
        }
        let pres = PbwPresentation {
            vars,
            order,
            q,
            tails,
        };
        pres.check_confluence()?;
        Ok(Arc::new(pres))
    }

    /// Commutative polynomial ring on the same variables.
    pub fn commutative(vars: Arc<VarSet>, order: u32) -> Arc<PbwPresentation> {
        PbwPresentation::new(vars, order, vec![]).expect("commuting rules are confluent")
    }

    pub fn vars(&self) -> &Arc<VarSet> {
        &self.vars
    }

    pub fn num_gens(&self) -> usize {
        self.vars.len()
    }

    pub fn field_order(&self) -> u32 {
        self.order
    }

    pub fn q_coeff(&self, upper: usize, lower: usize) -> &Scalar {
        &self.q[upper][lower]
    }

    pub fn tail(&self, upper: usize, lower: usize) -> &Poly {
        &self.tails[upper][lower]
    }

    pub fn zero(&self) -> Poly {
        Poly::zero(&self.vars)
    }

    pub fn one(&self) -> Poly {
        Poly::one(&self.vars)
    }

    pub fn gen(&self, i: usize) -> Poly {
        Poly::var(&self.vars, i)
    }

    /// Normal form of a linear combination of words, each word a list of
    /// generator indices read left to right.
    ///
    /// Pending words are coalesced in a map keyed by (weighted degree,
    /// word) and processed top degree first, so every reachable word is
    /// rewritten once with its accumulated coefficient. Rewriting paths
    /// through a word grow combinatorially, the set of words does not.
    pub fn reduce_words(&self, work: Vec<(Vec<usize>, Scalar)>) -> Poly {
        fn stash(
            vars: &Arc<VarSet>,
            out: &mut Poly,
            active: &mut BTreeMap<(u64, Vec<usize>), Scalar>,
            word: Vec<usize>,
            c: Scalar,
        ) {
            if c.is_zero() {
                return;
            }
            if word.windows(2).all(|p| p[0] <= p[1]) {
                out.add_term(mon_of_word(vars, &word), c);
                return;
            }
            let d: u64 = word.iter().map(|&i| vars.weight(i) as u64).sum();
            match active.entry((d, word)) {
                std::collections::btree_map::Entry::Occupied(mut e) => {
                    let s = e.get().add(&c);
                    if s.is_zero() {
                        e.remove();
                    } else {
                        *e.get_mut() = s;
                    }
                }
                std::collections::btree_map::Entry::Vacant(v) => {
                    v.insert(c);
                }
            }
        }

        let mut out = Poly::zero(&self.vars);
        let mut active: BTreeMap<(u64, Vec<usize>), Scalar> = BTreeMap::new();
        for (word, c) in work {
            stash(&self.vars, &mut out, &mut active, word, c);
        }
        let mut steps: u64 = 0;
        while let Some(((_, word), c)) = active.pop_last() {
            steps += 1;
            assert!(steps < 50_000_000, "rewriting runaway");
            let k = (0..word.len() - 1)
                .find(|&k| word[k] > word[k + 1])
                .expect("sorted words never enter the active set");
            let (j, i) = (word[k], word[k + 1]);
            let mut swapped = word.clone();
            swapped.swap(k, k + 1);
            stash(&self.vars, &mut out, &mut active, swapped, c.mul(&self.q[j][i]));
            for (m, tc) in self.tails[j][i].terms() {
                let mut w = Vec::with_capacity(word.len() + 2);
                w.extend_from_slice(&word[..k]);
                push_word_of_mon(&mut w, m);
                w.extend_from_slice(&word[k + 2..]);
                stash(&self.vars, &mut out, &mut active, w, c.mul(tc));
            }
        }
        out
    }

    /// Noncommutative product of two normal forms.
    pub fn nc_mul(&self, a: &Poly, b: &Poly) -> Poly {
        assert!(a.vars() == &self.vars && b.vars() == &self.vars, "foreign element");
        let mut work = Vec::new();
        for (ma, ca) in a.terms() {
            for (mb, cb) in b.terms() {
                let mut w = Vec::new();
                push_word_of_mon(&mut w, ma);
                push_word_of_mon(&mut w, mb);
                work.push((w, ca.mul(cb)));
            }
        }
        self.reduce_words(work)
    }

    pub fn nc_pow(&self, a: &Poly, e: u32) -> Poly {
        let mut acc = self.one();
        for _ in 0..e {
            acc = self.nc_mul(&acc, a);
        }
        acc
    }

    /// Product of generator powers taken in the listed order:
    /// images[0]^e0 * images[1]^e1 * ... under this presentation's product.
    pub fn nc_eval_monomial(&self, exps: &[u32], images: &[Poly]) -> Poly {
        let mut acc = self.one();
        for (i, &e) in exps.iter().enumerate() {
            for _ in 0..e {
                acc = self.nc_mul(&acc, &images[i]);
            }
        }
        acc
    }

    /// Applies a generator substitution to a normal form, multiplying the
    /// images noncommutatively.
    pub fn nc_substitute(&self, a: &Poly, images: &[Poly]) -> Poly {
        assert_eq!(images.len(), self.vars.len());
        let mut out = self.zero();
        for (m, c) in a.terms() {
            let val = self.nc_eval_monomial(m.exps(), images);
            out = out.add(&val.scale(c));
        }
        out
    }

    /// Verifies that every overlap x_k x_j x_i (k > j > i) reduces to the
    /// same normal form whether the left or the right pair rewrites first.
    pub fn check_confluence(&self) -> Result<()> {
        let n = self.vars.len();
        for k in 0..n {
            for j in 0..k {
                for i in 0..j {
                    let left = self.reduce_words(vec![(vec![k, j, i], Scalar::one(1))]);
                    // force the right pair (j, i) first
                    let mut work = vec![(vec![k, i, j], self.q[j][i].clone())];
                    for (m, tc) in self.tails[j][i].terms() {
                        let mut w = vec![k];
                        push_word_of_mon(&mut w, m);
                        work.push((w, tc.clone()));
                    }
                    let right = self.reduce_words(work);
                    if left != right {
                        let overlap = format!(
                            "{}*{}*{}",
                            self.vars.name(k),
                            self.vars.name(j),
                            self.vars.name(i)
                        );
                        return Err(Error::NotConfluent {
                            overlap,
                            nf1: left.to_string(),
                            nf2: right.to_string(),
                        });
                    }
                }
            }
        }
        Ok(())
    }

    /// True when every rule is weighted-homogeneous, i.e. each tail term
    /// has the full degree of its junction word.
    pub fn is_graded(&self) -> bool {
        for j in 0..self.vars.len() {
            for i in 0..j {
                let d = self.vars.weight(i) as u64 + self.vars.weight(j) as u64;
                if self.tails[j][i].terms().any(|(m, _)| m.wdeg() != d) {
                    return false;
                }
            }
        }
        true
    }

    /// Adjoins a final weight-1 central generator and pads every tail
    /// term up to the degree of its junction word with powers of it.
    pub fn homogenized(&self, t_name: &str) -> Result<Arc<PbwPresentation>> {
        let new_vars = self.vars.extended(t_name, 1)?;
        let n = self.vars.len();
        let mut rels = Vec::new();
        for j in 0..n {
            for i in 0..j {
                let d = self.vars.weight(i) as u64 + self.vars.weight(j) as u64;
                let mut tail = Poly::zero(&new_vars);
                for (m, c) in self.tails[j][i].terms() {
                    let pad = d - m.wdeg();
                    let mut exps = m.exps().to_vec();
                    exps.push(u32::try_from(pad).expect("degree fits"));
                    tail.add_term(Mon::new(&new_vars, exps), c.clone());
                }
                rels.push(RelationInput {
                    upper: self.vars.name(j).to_string(),
                    lower: self.vars.name(i).to_string(),
                    q: self.q[j][i].clone(),
                    tail,
                });
            }
        }
        // the new generator commutes with everything; those rules are the
        // defaults, so nothing to add
        PbwPresentation::new(new_vars, self.order, rels)
    }

    /// Candidate module rank over a graded central subalgebra with the
    /// given generator weights, read off the ratio of growth series.
    pub fn hilbert_rank(&self, central_weights: &[u32]) -> Result<Rank> {
        if !self.is_graded() {
            return Err(Error::NotGraded(
                "growth-series rank needs homogeneous rules".into(),
            ));
        }
        if central_weights.iter().any(|&w| w == 0) {
            return Err(Error::Invalid("central generator of weight 0".into()));
        }
        let gen_weights: Vec<u32> = (0..self.vars.len())
            .map(|i| self.vars.weight(i))
            .collect();
        Ok(series_ratio(&gen_weights, central_weights))
    }
}

fn check_order(order: u32, c: &Scalar) -> std::result::Result<(), String> {
    if c.order() == 1 || c.order() == order {
        Ok(())
    } else {
        Err(format!(
            "coefficient in field of order {}, presentation declares {}",
            c.order(),
            order
        ))
    }
}

pub(crate) fn push_word_of_mon(w: &mut Vec<usize>, m: &Mon) {
    for (i, &e) in m.exps().iter().enumerate() {
        for _ in 0..e {
            w.push(i);
        }
    }
}

pub(crate) fn mon_of_word(vs: &Arc<VarSet>, word: &[usize]) -> Mon {
    let mut exps = vec![0u32; vs.len()];
    for &i in word {
        exps[i] += 1;
    }
    Mon::new(vs, exps)
}

/// Rank read off a quotient of growth series.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Rank {
    /// `by_degree[d]` counts module generators of weighted degree d.
    Finite { total: u64, by_degree: Vec<u64> },
    Infinite,
}

/// Expands prod_j (1 - t^{d_j}) / prod_i (1 - t^{w_i}) and reports the
/// coefficients if the ratio is a polynomial with nonnegative integer
/// coefficients, i.e. the degreewise size of a finite free module basis.
fn series_ratio(gen_weights: &[u32], central_weights: &[u32]) -> Rank {
    let num = poly_product(central_weights);
    let den = poly_product(gen_weights);
    let deg_num = num.len() as i64 - 1;
    let deg_den = den.len() as i64 - 1;
    if deg_num < deg_den {
        return Rank::Infinite;
    }
    let deg_q = (deg_num - deg_den) as usize;
    // ascending-power division; both constant terms are 1
    let mut quo = vec![0i128; deg_q + 1];
    for k in 0..=deg_q {
        let mut acc = *num.get(k).unwrap_or(&0);
        for l in 0..k {
            let d = k - l;
            if d < den.len() {
                acc -= quo[l] * den[d];
            }
        }
        quo[k] = acc; // den[0] == 1
    }
    // verify quo * den == num exactly
    let mut prod = vec![0i128; deg_q + den.len()];
    for (l, &ql) in quo.iter().enumerate() {
        for (d, &dd) in den.iter().enumerate() {
            prod[l + d] += ql * dd;
        }
    }
    let mut numfull = num.clone();
    numfull.resize(prod.len(), 0);
    if prod != numfull || quo.iter().any(|&c| c < 0) {
        return Rank::Infinite;
    }
    let by_degree: Vec<u64> = quo.iter().map(|&c| c as u64).collect();
    let total = by_degree.iter().sum();
    Rank::Finite { total, by_degree }
}

/// Coefficients of prod (1 - t^w), dense ascending.
fn poly_product(weights: &[u32]) -> Vec<i128> {
    let mut p = vec![1i128];
    for &w in weights {
        let mut q = vec![0i128; p.len() + w as usize];
        for (i, &c) in p.iter().enumerate() {
            q[i] += c;
            q[i + w as usize] -= c;
        }
        p = q;
    }
    p
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_poly;

    fn pres(
        names: &[&str],
        order: u32,
        rels: &[(&str, &str, &str, &str)],
    ) -> Result<Arc<PbwPresentation>> {
        let vars = VarSet::unweighted(names).unwrap();
        let relations = rels
            .iter()
            .map(|(u, l, q, t)| RelationInput {
                upper: u.to_string(),
                lower: l.to_string(),
                q: crate::parse::parse_scalar(order, q).unwrap(),
                tail: parse_poly(&vars, order, t).unwrap(),
            })
            .collect();
        PbwPresentation::new(vars, order, relations)
    }

    fn p(pr: &PbwPresentation, s: &str) -> Poly {
        parse_poly(pr.vars(), pr.field_order(), s).unwrap()
    }

    #[test]
    fn sign_commuting_square() {
        let a = pres(&["x", "y"], 1, &[("y", "x", "-1", "0")]).unwrap();
        assert_eq!(a.nc_mul(&p(&a, "y"), &p(&a, "x")), p(&a, "-x*y"));
        let s = p(&a, "x+y");
        assert_eq!(a.nc_pow(&s, 2), p(&a, "x^2+y^2"));
        // y^2 commutes past x^2 (four sign flips)
        assert_eq!(a.nc_pow(&s, 4), p(&a, "x^4+2*x^2*y^2+y^4"));
    }

    #[test]
    fn weyl_like_products() {
        let a = pres(&["x", "y"], 1, &[("y", "x", "-1", "1")]).unwrap();
        assert_eq!(a.nc_mul(&p(&a, "y"), &p(&a, "x")), p(&a, "-x*y+1"));
        assert_eq!(a.nc_mul(&p(&a, "y"), &p(&a, "x*y")), p(&a, "-x*y^2+y"));
        // associativity at a junction that rewrites twice
        let yx = a.nc_mul(&p(&a, "y"), &p(&a, "x"));
        let left = a.nc_mul(&yx, &p(&a, "y"));
        let right = a.nc_mul(&p(&a, "y"), &a.nc_mul(&p(&a, "x"), &p(&a, "y")));
        assert_eq!(left, right);
    }

    #[test]
    fn jordan_like_tail_of_full_degree() {
        let a = pres(&["x", "y"], 1, &[("y", "x", "1", "y^2")]).unwrap();
        assert!(a.is_graded());
        assert_eq!(a.nc_mul(&p(&a, "y^2"), &p(&a, "x")), p(&a, "x*y^2+2*y^3"));
    }

    #[test]
    fn three_generators_confluent() {
        let rels = [
            ("y", "x", "-1", "1"),
            ("z", "x", "-1", "1"),
            ("z", "y", "-1", "1"),
        ];
        let a = pres(&["x", "y", "z"], 1, &rels).unwrap();
        let zyx = a.nc_mul(&p(&a, "z"), &a.nc_mul(&p(&a, "y"), &p(&a, "x")));
        assert_eq!(zyx, p(&a, "-x*y*z+x-y+z"));
    }

    #[test]
    fn rejects_inconsistent_overlap() {
        let rels = [
            ("y", "x", "1", "x"),
            ("z", "y", "1", "y"),
            ("z", "x", "1", "1"),
        ];
        let err = pres(&["x", "y", "z"], 1, &rels).unwrap_err();
        match err {
            Error::NotConfluent { overlap, .. } => assert_eq!(overlap, "z*y*x"),
            other => panic!("expected confluence failure, got {other}"),
        }
    }

    #[test]
    fn rejects_bad_tails() {
        assert!(pres(&["x", "y"], 1, &[("y", "x", "1", "x^2")]).is_err());
        assert!(pres(&["x", "y"], 1, &[("y", "x", "0", "0")]).is_err());
        assert!(pres(&["x", "y"], 1, &[("x", "y", "1", "0")]).is_err());
        assert!(pres(&["x", "y"], 1, &[("y", "x", "1", "x*y")]).is_err());
    }

    #[test]
    fn homogenization_pads_tails() {
        let a = pres(&["x", "y"], 1, &[("y", "x", "-1", "1")]).unwrap();
        assert!(!a.is_graded());
        let h = a.homogenized("t").unwrap();
        assert!(h.is_graded());
        assert_eq!(h.num_gens(), 3);
        let yx = h.nc_mul(&Poly::var(h.vars(), 1), &Poly::var(h.vars(), 0));
        assert_eq!(yx, parse_poly(h.vars(), 1, "-x*y+t^2").unwrap());
        // the new generator is central
        let t = Poly::var(h.vars(), 2);
        let x = Poly::var(h.vars(), 0);
        assert_eq!(h.nc_mul(&t, &x), h.nc_mul(&x, &t));
    }

    #[test]
    fn series_ratio_counts() {
        // two weight-1 generators over central elements of weights 2 and 4
        match series_ratio(&[1, 1], &[2, 4]) {
            Rank::Finite { total, by_degree } => {
                assert_eq!(total, 8);
                assert_eq!(by_degree, vec![1, 2, 2, 2, 1]);
            }
            Rank::Infinite => panic!("expected finite"),
        }
        assert_eq!(series_ratio(&[1, 1], &[2]), Rank::Infinite);
        match series_ratio(&[1, 1], &[3, 3]) {
            Rank::Finite { total, .. } => assert_eq!(total, 9),
            Rank::Infinite => panic!("expected finite"),
        }
        match series_ratio(&[1, 1], &[1, 1]) {
            Rank::Finite { total, by_degree } => {
                assert_eq!(total, 1);
                assert_eq!(by_degree, vec![1]);
            }
            Rank::Infinite => panic!("expected finite"),
        }
    }

    #[test]
    fn hilbert_rank_requires_grading() {
        let a = pres(&["x", "y"], 1, &[("y", "x", "-1", "1")]).unwrap();
        assert!(matches!(a.hilbert_rank(&[2, 2]), Err(Error::NotGraded(_))));
        let b = pres(&["x", "y"], 1, &[("y", "x", "-1", "0")]).unwrap();
        match b.hilbert_rank(&[2, 2]).unwrap() {
            Rank::Finite { total, .. } => assert_eq!(total, 4),
            Rank::Infinite => panic!("expected finite"),
        }
    }

    #[test]
    fn substitution_multiplies_images_in_order() {
        let a = pres(&["x", "y"], 1, &[("y", "x", "-1", "0")]).unwrap();
        // swap x <-> y: the image of xy is y*x = -xy
        let images = vec![p(&a, "y"), p(&a, "x")];
        let out = a.nc_substitute(&p(&a, "x*y"), &images);
        assert_eq!(out, p(&a, "-x*y"));
    }
}
