//! Maps of presented algebras, the monoids and finite groups that act on
//! them, and the bounded-degree solver for spaces of normal elements
//! { a : x a = a sigma(x) for all generators x }.

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::linalg;
use crate::pbw::PbwPresentation;
use crate::poly::{Mon, Poly};
use crate::scalar::Scalar;

/// Algebra endomorphism given by generator images in normal form.
/// Construction verifies every defining rule maps to zero, so values can
/// be applied freely afterwards.
#[derive(Debug, Clone)]
pub struct AlgebraMap {
    pres: Arc<PbwPresentation>,
    images: Vec<Poly>,
}

impl PartialEq for AlgebraMap {
    fn eq(&self, other: &Self) -> bool {
        (Arc::ptr_eq(&self.pres, &other.pres) || self.pres.vars() == other.pres.vars())
            && self.images == other.images
    }
}

impl AlgebraMap {
    pub fn new(pres: Arc<PbwPresentation>, images: Vec<Poly>) -> Result<AlgebraMap> {
        let n = pres.num_gens();
        if images.len() != n {
            return Err(Error::PresentationMismatch(format!(
                "{} images for {} generators",
                images.len(),
                n
            )));
        }
        for img in &images {
            if img.vars() != pres.vars() {
                return Err(Error::PresentationMismatch(
                    "image over a different variable set".into(),
                ));
            }
        }
        for j in 0..n {
            for i in 0..j {
                // residual of  x_j x_i - q x_i x_j - tail  under the map
                let ji = pres.nc_mul(&images[j], &images[i]);
                let ij = pres.nc_mul(&images[i], &images[j]);
                let tail_image = pres.nc_substitute(pres.tail(j, i), &images);
                let residual = ji.sub(&ij.scale(pres.q_coeff(j, i))).sub(&tail_image);
                if !residual.is_zero() {
                    return Err(Error::NotHomomorphism {
                        relation: format!("{}*{}", pres.vars().name(j), pres.vars().name(i)),
                        residual: residual.to_string(),
                    });
                }
            }
        }
        Ok(AlgebraMap { pres, images })
    }

    pub fn identity(pres: Arc<PbwPresentation>) -> AlgebraMap {
        let images = (0..pres.num_gens()).map(|i| pres.gen(i)).collect();
        AlgebraMap { pres, images }
    }

    /// Map sending generator i to `scales[i] * x_i`; all diagonal maps
    /// respect the rules automatically when scales are nonzero... they do
    /// not in general, so this still validates.
    pub fn diagonal(pres: Arc<PbwPresentation>, scales: Vec<Scalar>) -> Result<AlgebraMap> {
        let images = scales
            .iter()
            .enumerate()
            .map(|(i, c)| pres.gen(i).scale(c))
            .collect();
        AlgebraMap::new(pres, images)
    }

    pub fn pres(&self) -> &Arc<PbwPresentation> {
        &self.pres
    }

    pub fn image(&self, i: usize) -> &Poly {
        &self.images[i]
    }

    pub fn images(&self) -> &[Poly] {
        &self.images
    }

    pub fn apply(&self, a: &Poly) -> Poly {
        self.pres.nc_substitute(a, &self.images)
    }

    /// self after inner: (self.compose(inner)).apply(a) =
    /// self.apply(inner.apply(a)).
    pub fn compose(&self, inner: &AlgebraMap) -> Result<AlgebraMap> {
        if !Arc::ptr_eq(&self.pres, &inner.pres) && self.pres.vars() != inner.pres.vars() {
            return Err(Error::PresentationMismatch("composing across algebras".into()));
        }
        let images = inner.images.iter().map(|im| self.apply(im)).collect();
        // composition of verified maps is a map; no recheck
        Ok(AlgebraMap {
            pres: self.pres.clone(),
            images,
        })
    }

    pub fn is_identity(&self) -> bool {
        (0..self.pres.num_gens()).all(|i| self.images[i] == self.pres.gen(i))
    }

    /// Least m >= 1 with the m-fold composite equal to the identity, if
    /// it is at most `cap`.
    pub fn order_of(&self, cap: u32) -> Option<u32> {
        let mut acc = self.clone();
        for m in 1..=cap {
            if acc.is_identity() {
                return Some(m);
            }
            acc = self.compose(&acc).expect("same presentation");
        }
        None
    }

    pub fn pow(&self, e: u64) -> AlgebraMap {
        let mut acc = AlgebraMap::identity(self.pres.clone());
        for _ in 0..e {
            acc = self.compose(&acc).expect("same presentation");
        }
        acc
    }

    /// Searches for a two-sided inverse whose generator images have
    /// weighted degree at most `degree_cap`, by linear algebra on
    /// monomial images. Both composites are verified.
    pub fn try_inverse(&self, degree_cap: u64) -> Result<AlgebraMap> {
        let vars = self.pres.vars().clone();
        let mons = vars.monomials_up_to(degree_cap);
        // images of the candidate monomials under self
        let cols: Vec<Poly> = mons
            .iter()
            .map(|m| self.apply(&Poly::monomial(&vars, m.clone(), Scalar::one(1))))
            .collect();
        // row space: all monomials appearing anywhere
        let mut row_index: BTreeMap<Mon, usize> = BTreeMap::new();
        for c in &cols {
            for (m, _) in c.terms() {
                let next = row_index.len();
                row_index.entry(m.clone()).or_insert(next);
            }
        }
        for i in 0..self.pres.num_gens() {
            let next = row_index.len();
            row_index
                .entry(Mon::new(&vars, {
                    let mut e = vec![0u32; vars.len()];
                    e[i] = 1;
                    e
                }))
                .or_insert(next);
        }
        let rows = row_index.len();
        let mut a = vec![vec![Scalar::zero(1); mons.len()]; rows];
        for (j, c) in cols.iter().enumerate() {
            for (m, s) in c.terms() {
                a[row_index[m]][j] = s.clone();
            }
        }
        let mut images = Vec::new();
        for i in 0..self.pres.num_gens() {
            let target = self.pres.gen(i);
            let mut b = vec![Scalar::zero(1); rows];
            for (m, s) in target.terms() {
                b[row_index[m]] = s.clone();
            }
            match linalg::solve(&a, &b) {
                linalg::Solve::Inconsistent => {
                    return Err(Error::NotInvertible(format!(
                        "no preimage of {} below degree {}",
                        vars.name(i),
                        degree_cap
                    )))
                }
                sol => {
                    let x = sol.particular().expect("solvable").clone();
                    let mut img = Poly::zero(&vars);
                    for (k, coeff) in x.into_iter().enumerate() {
                        img.add_term(mons[k].clone(), coeff);
                    }
                    images.push(img);
                }
            }
        }
        let inv = AlgebraMap::new(self.pres.clone(), images)
            .map_err(|_| Error::NotInvertible("preimages do not form a map".into()))?;
        let fwd = self.compose(&inv)?;
        let bwd = inv.compose(self)?;
        if fwd.is_identity() && bwd.is_identity() {
            Ok(inv)
        } else {
            Err(Error::NotInvertible("one-sided preimage only".into()))
        }
    }
}

/// Constraint rows over the unknown coefficients of a = sum c_m m picked
/// from `mons`; a satisfies `x_g a = a sigma(x_g)` for all generators
/// exactly when every row pairs to zero.
pub(crate) fn skew_commute_rows(sigma: &AlgebraMap, mons: &[Mon]) -> Vec<Vec<Scalar>> {
    let pres = sigma.pres();
    let vars = pres.vars().clone();
    let mut row_index: BTreeMap<(usize, Mon), usize> = BTreeMap::new();
    let mut cols: Vec<Vec<(usize, Scalar)>> = vec![Vec::new(); mons.len()];
    for g in 0..pres.num_gens() {
        let xg = pres.gen(g);
        let sg = sigma.image(g).clone();
        for (j, m) in mons.iter().enumerate() {
            let mp = Poly::monomial(&vars, m.clone(), Scalar::one(1));
            let diff = pres.nc_mul(&xg, &mp).sub(&pres.nc_mul(&mp, &sg));
            for (mm, c) in diff.terms() {
                let next = row_index.len();
                let idx = *row_index.entry((g, mm.clone())).or_insert(next);
                cols[j].push((idx, c.clone()));
            }
        }
    }
    sparse_to_rows(row_index.len(), mons.len(), &cols)
}

/// Constraint rows for sigma(a) = a over the same unknowns.
pub(crate) fn fixed_point_rows(sigma: &AlgebraMap, mons: &[Mon]) -> Vec<Vec<Scalar>> {
    let vars = sigma.pres().vars().clone();
    let mut row_index: BTreeMap<Mon, usize> = BTreeMap::new();
    let mut cols: Vec<Vec<(usize, Scalar)>> = vec![Vec::new(); mons.len()];
    for (j, m) in mons.iter().enumerate() {
        let mp = Poly::monomial(&vars, m.clone(), Scalar::one(1));
        let diff = sigma.apply(&mp).sub(&mp);
        for (mm, c) in diff.terms() {
            let next = row_index.len();
            let idx = *row_index.entry(mm.clone()).or_insert(next);
            cols[j].push((idx, c.clone()));
        }
    }
    sparse_to_rows(row_index.len(), mons.len(), &cols)
}

fn sparse_to_rows(
    rows: usize,
    cols: usize,
    entries: &[Vec<(usize, Scalar)>],
) -> Vec<Vec<Scalar>> {
    let mut a = vec![vec![Scalar::zero(1); cols]; rows];
    for (j, col) in entries.iter().enumerate() {
        for (i, c) in col {
            a[*i][j] = a[*i][j].add(c);
        }
    }
    a
}

/// Converts nullspace vectors over `mons` into monic polynomials sorted
/// by leading monomial.
pub(crate) fn kernel_polys(
    vars: &Arc<crate::poly::VarSet>,
    mons: &[Mon],
    kernel: Vec<Vec<Scalar>>,
) -> Vec<Poly> {
    let mut out: Vec<Poly> = kernel
        .into_iter()
        .map(|v| {
            let mut p = Poly::zero(vars);
            for (k, c) in v.into_iter().enumerate() {
                p.add_term(mons[k].clone(), c);
            }
            p.normalized()
        })
        .collect();
    out.sort_by(|x, y| {
        let lx = x.leading().map(|(m, _)| m.clone());
        let ly = y.leading().map(|(m, _)| m.clone());
        lx.cmp(&ly)
    });
    out
}

/// Basis of { a : x_i a = a sigma(x_i) for every generator }, restricted
/// to weighted degree at most `degree_cap`. Solving on generators
/// suffices because sigma is multiplicative. Output elements are monic
/// in deglex and sorted by leading monomial.
pub fn normal_space(sigma: &AlgebraMap, degree_cap: u64) -> Vec<Poly> {
    let vars = sigma.pres().vars().clone();
    let mons = vars.monomials_up_to(degree_cap);
    let a = skew_commute_rows(sigma, &mons);
    let kernel = linalg::nullspace(&a, mons.len());
    kernel_polys(&vars, &mons, kernel)
}

/// Semi-decision for normality witnesses: Some(nonzero a) iff the
/// normal space below the cap is nonzero.
pub fn is_inner_up_to_degree(sigma: &AlgebraMap, degree_cap: u64) -> Option<Poly> {
    normal_space(sigma, degree_cap).into_iter().next()
}

/// Additive submonoid of the nonnegative integers with the given
/// positive generators.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NumericalMonoid {
    gens: Vec<u64>,
}

impl NumericalMonoid {
    pub fn new(mut gens: Vec<u64>) -> Result<NumericalMonoid> {
        gens.sort_unstable();
        gens.dedup();
        if gens.is_empty() || gens[0] == 0 {
            return Err(Error::BadMonoid("generators must be positive".into()));
        }
        if *gens.last().unwrap() > 10_000 {
            return Err(Error::BadMonoid("generator too large".into()));
        }
        Ok(NumericalMonoid { gens })
    }

    pub fn naturals() -> NumericalMonoid {
        NumericalMonoid { gens: vec![1] }
    }

    pub fn gens(&self) -> &[u64] {
        &self.gens
    }

    pub fn gcd(&self) -> u64 {
        self.gens.iter().fold(0u64, |a, &b| num_integer::gcd(a, b))
    }

    /// Membership table for 0..=bound.
    pub fn sieve(&self, bound: u64) -> Vec<bool> {
        let n = bound as usize;
        let mut s = vec![false; n + 1];
        s[0] = true;
        for i in 1..=n {
            s[i] = self
                .gens
                .iter()
                .any(|&g| g as usize <= i && s[i - g as usize]);
        }
        s
    }

    pub fn contains(&self, m: u64) -> bool {
        *self.sieve(m).last().unwrap()
    }

    pub fn elements_up_to(&self, bound: u64) -> Vec<u64> {
        self.sieve(bound)
            .iter()
            .enumerate()
            .filter_map(|(i, &b)| b.then_some(i as u64))
            .collect()
    }

    /// Smallest n (in units of gcd) such that every multiple of the gcd
    /// at or beyond n*gcd lies in the monoid.
    fn scaled_conductor(&self) -> u64 {
        let g = self.gcd();
        let scaled: Vec<u64> = self.gens.iter().map(|&x| x / g).collect();
        let a1 = scaled[0] as usize;
        let bound = (scaled.last().unwrap() * scaled.last().unwrap() + 2) as usize;
        let mono = NumericalMonoid { gens: scaled };
        let s = mono.sieve(bound as u64);
        // a run of a1 consecutive members closes under adding a1
        let mut run = 0usize;
        for (i, &b) in s.iter().enumerate() {
            run = if b { run + 1 } else { 0 };
            if run == a1 {
                return (i + 1 - a1) as u64;
            }
        }
        unreachable!("run of min-generator length always exists below the bound")
    }
}

/// Finite group as an explicit multiplication table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteGroup {
    labels: Vec<String>,
    table: Vec<Vec<usize>>,
    identity: usize,
    inverses: Vec<usize>,
}

impl FiniteGroup {
    pub fn new(labels: Vec<String>, table: Vec<Vec<usize>>, identity: &str) -> Result<FiniteGroup> {
        let n = labels.len();
        if n == 0 || n > 64 {
            return Err(Error::BadMonoid(format!("group of size {n} not supported")));
        }
        for i in 0..n {
            for j in i + 1..n {
                if labels[i] == labels[j] {
                    return Err(Error::BadMonoid(format!("duplicate label `{}`", labels[i])));
                }
            }
        }
        let identity = labels
            .iter()
            .position(|l| l == identity)
            .ok_or_else(|| Error::BadMonoid(format!("identity label `{identity}` not listed")))?;
        if table.len() != n || table.iter().any(|r| r.len() != n) {
            return Err(Error::BadMonoid("table is not square".into()));
        }
        for row in &table {
            for &e in row {
                if e >= n {
                    return Err(Error::BadMonoid("table entry out of range".into()));
                }
            }
        }
        for i in 0..n {
            if table[identity][i] != i || table[i][identity] != i {
                return Err(Error::BadMonoid("identity row/column mismatch".into()));
            }
        }
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    if table[table[i][j]][k] != table[i][table[j][k]] {
                        return Err(Error::BadMonoid(format!(
                            "associativity fails at ({}, {}, {})",
                            labels[i], labels[j], labels[k]
                        )));
                    }
                }
            }
        }
        let mut inverses = vec![usize::MAX; n];
        for i in 0..n {
            match (0..n).find(|&j| table[i][j] == identity && table[j][i] == identity) {
                Some(j) => inverses[i] = j,
                None => {
                    return Err(Error::BadMonoid(format!("`{}` has no inverse", labels[i])))
                }
            }
        }
        Ok(FiniteGroup {
            labels,
            table,
            identity,
            inverses,
        })
    }

    /// Symmetric group on n letters together with its permutations in
    /// one-line form (perm[i] = image of position i). Element 0 is the
    /// identity, labeled "e"; others are labeled by one-line notation,
    /// e.g. "g213" for the transposition of the first two letters.
    pub fn symmetric(n: usize) -> Result<(FiniteGroup, Vec<Vec<usize>>)> {
        if n == 0 || n > 5 {
            return Err(Error::BadMonoid(format!("symmetric group on {n} letters")));
        }
        let mut perms: Vec<Vec<usize>> = Vec::new();
        permute(&mut (0..n).collect::<Vec<_>>(), 0, &mut perms);
        perms.sort();
        let labels: Vec<String> = perms
            .iter()
            .map(|p| {
                if p.iter().enumerate().all(|(i, &v)| i == v) {
                    "e".to_string()
                } else {
                    let digits: String = p.iter().map(|&v| (v + 1).to_string()).collect();
                    format!("g{digits}")
                }
            })
            .collect();
        let index: BTreeMap<&[usize], usize> =
            perms.iter().enumerate().map(|(i, p)| (p.as_slice(), i)).collect();
        let m = perms.len();
        let mut table = vec![vec![0usize; m]; m];
        for i in 0..m {
            for j in 0..m {
                let comp: Vec<usize> = (0..n).map(|k| perms[i][perms[j][k]]).collect();
                table[i][j] = index[comp.as_slice()];
            }
        }
        let g = FiniteGroup::new(labels, table, "e")?;
        Ok((g, perms))
    }

    pub fn size(&self) -> usize {
        self.labels.len()
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn product(&self, i: usize, j: usize) -> usize {
        self.table[i][j]
    }

    pub fn inverse(&self, i: usize) -> usize {
        self.inverses[i]
    }

    /// Verifies the subset is a subgroup and returns it sorted with
    /// the identity first.
    pub fn subgroup(&self, elements: &[usize]) -> Result<Vec<usize>> {
        let mut h: Vec<usize> = elements.to_vec();
        h.sort_unstable();
        h.dedup();
        if !h.contains(&self.identity) {
            return Err(Error::BadMonoid("subgroup must contain the identity".into()));
        }
        for &a in &h {
            if a >= self.size() {
                return Err(Error::BadMonoid("subgroup element out of range".into()));
            }
            if !h.contains(&self.inverses[a]) {
                return Err(Error::BadMonoid("subgroup not closed under inverse".into()));
            }
            for &b in &h {
                if !h.contains(&self.table[a][b]) {
                    return Err(Error::BadMonoid("subgroup not closed under product".into()));
                }
            }
        }
        Ok(h)
    }
}

fn permute(v: &mut Vec<usize>, k: usize, out: &mut Vec<Vec<usize>>) {
    if k == v.len() {
        out.push(v.clone());
        return;
    }
    for i in k..v.len() {
        v.swap(k, i);
        permute(v, k + 1, out);
        v.swap(k, i);
    }
}

/// The two monoid shapes that grade twisted products here.
#[derive(Debug, Clone, PartialEq)]
pub enum MonoidPresentation {
    Numerical(NumericalMonoid),
    Group(FiniteGroup),
}

/// Designation of the central sub-monoid an algebra of monomials is
/// measured against.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SubMonoid {
    /// Numerical case: H = { m in M : modulus divides m }.
    Modulus(u64),
    /// Group case: subgroup by element indices.
    Subgroup(Vec<u64>),
}

/// Ordered module basis of kM over kH, first element the identity.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CosetBasis {
    pub reps: Vec<u64>,
    pub sub: SubMonoid,
}

impl MonoidPresentation {
    pub fn identity(&self) -> u64 {
        match self {
            MonoidPresentation::Numerical(_) => 0,
            MonoidPresentation::Group(g) => g.identity() as u64,
        }
    }

    pub fn product(&self, a: u64, b: u64) -> u64 {
        match self {
            MonoidPresentation::Numerical(_) => a + b,
            MonoidPresentation::Group(g) => g.product(a as usize, b as usize) as u64,
        }
    }

    pub fn render_elt(&self, m: u64) -> String {
        match self {
            MonoidPresentation::Numerical(_) => {
                if m == 0 {
                    "e".to_string()
                } else if m == 1 {
                    "t".to_string()
                } else {
                    format!("t^{m}")
                }
            }
            MonoidPresentation::Group(g) => g.label(m as usize).to_string(),
        }
    }

    /// Module basis per the unique-factorization requirement: every
    /// m in M must factor uniquely as rep * h with h in the designated
    /// sub-monoid. Numerical bases are minimal representatives per
    /// residue class; group bases are right-coset representatives.
    pub fn coset_basis(&self, sub: &SubMonoid) -> Result<CosetBasis> {
        match (self, sub) {
            (MonoidPresentation::Numerical(m), SubMonoid::Modulus(d)) => {
                let reps = numerical_coset_basis(m, *d)?;
                Ok(CosetBasis {
                    reps,
                    sub: sub.clone(),
                })
            }
            (MonoidPresentation::Group(g), SubMonoid::Subgroup(h)) => {
                let h_idx: Vec<usize> = h.iter().map(|&x| x as usize).collect();
                let h = g.subgroup(&h_idx)?;
                let mut reps = Vec::new();
                let mut covered = vec![false; g.size()];
                for x in 0..g.size() {
                    if covered[x] {
                        continue;
                    }
                    // right coset H x
                    let rep = if h.iter().any(|&a| g.product(a, x) == g.identity()) {
                        g.identity()
                    } else {
                        x
                    };
                    for &a in &h {
                        covered[g.product(a, rep)] = true;
                    }
                    reps.push(rep as u64);
                }
                // identity's coset first
                reps.sort_unstable();
                if let Some(p) = reps.iter().position(|&r| {
                    h.iter().any(|&a| g.product(a, r as usize) == g.identity())
                }) {
                    let e = reps.remove(p);
                    reps.insert(0, e);
                }
                Ok(CosetBasis {
                    reps,
                    sub: SubMonoid::Subgroup(h.into_iter().map(|x| x as u64).collect()),
                })
            }
            _ => Err(Error::BadMonoid("sub-monoid shape does not match".into())),
        }
    }
}

fn numerical_coset_basis(m: &NumericalMonoid, d: u64) -> Result<Vec<u64>> {
    if d == 0 {
        return Err(Error::BadMonoid("modulus must be positive".into()));
    }
    let g = m.gcd();
    let cond = m.scaled_conductor() * g; // every multiple of g >= cond is in M
    let scan = cond + g * d + 1;
    let coverage_bound = scan + cond + d;
    let sieve = m.sieve(coverage_bound);
    let mut rep_of_class: BTreeMap<u64, u64> = BTreeMap::new();
    for n in 0..=scan {
        if sieve[n as usize] {
            rep_of_class.entry(n % d).or_insert(n);
        }
    }
    // coverage: each member m = rep + h with h in M and d | h; beyond
    // rep + cond this is automatic, so the scan below is exhaustive
    for n in 0..=coverage_bound {
        if !sieve[n as usize] {
            continue;
        }
        let rep = rep_of_class[&(n % d)]; // n's own class is inhabited
        let h = n - rep;
        if h % d != 0 || !sieve[h as usize] {
            return Err(Error::NoCosetBasis(format!(
                "{n} = {rep} + {h} but {h} is not a sub-monoid member"
            )));
        }
    }
    let mut reps: Vec<u64> = rep_of_class.into_values().collect();
    reps.sort_unstable();
    // pairing support: each rep must have exactly one partner rep whose
    // sum lands in the sub-monoid
    for &b in &reps {
        let partners = reps
            .iter()
            .filter(|&&a| (a + b) % d == 0)
            .count();
        if partners != 1 {
            return Err(Error::NoCosetBasis(format!(
                "representative {b} pairs with {partners} others"
            )));
        }
    }
    Ok(reps)
}

/// A monoid acting on a presented algebra: a single map powered along a
/// numerical monoid, or a verified table-compatible family of maps for
/// a finite group.
#[derive(Debug, Clone)]
pub struct MonoidAction {
    monoid: Arc<MonoidPresentation>,
    pres: Arc<PbwPresentation>,
    kind: ActionKind,
}

#[derive(Debug, Clone)]
enum ActionKind {
    /// rho(m) = sigma^m; powers cached through one period when the
    /// order is finite.
    Power {
        sigma: AlgebraMap,
        period: Option<Vec<AlgebraMap>>,
    },
    /// rho per group element, indexed like the group.
    Table(Vec<AlgebraMap>),
}

impl MonoidAction {
    /// Numerical monoid acting through powers of one map.
    pub fn powers(
        monoid: NumericalMonoid,
        sigma: AlgebraMap,
        order_cap: u32,
    ) -> Result<MonoidAction> {
        let pres = sigma.pres().clone();
        let period = sigma.order_of(order_cap).map(|d| {
            let mut pows = Vec::with_capacity(d as usize);
            let mut acc = AlgebraMap::identity(pres.clone());
            for _ in 0..d {
                pows.push(acc.clone());
                acc = sigma.compose(&acc).expect("same presentation");
            }
            pows
        });
        Ok(MonoidAction {
            monoid: Arc::new(MonoidPresentation::Numerical(monoid)),
            pres,
            kind: ActionKind::Power { sigma, period },
        })
    }

    /// The natural numbers acting through powers of one map (the
    /// skew-polynomial situation).
    pub fn ore(sigma: AlgebraMap, order_cap: u32) -> Result<MonoidAction> {
        MonoidAction::powers(NumericalMonoid::naturals(), sigma, order_cap)
    }

    /// Finite group acting through one verified map per element.
    pub fn group(group: FiniteGroup, maps: Vec<AlgebraMap>) -> Result<MonoidAction> {
        if maps.len() != group.size() {
            return Err(Error::PresentationMismatch(format!(
                "{} maps for a group of size {}",
                maps.len(),
                group.size()
            )));
        }
        let pres = maps[0].pres().clone();
        if !maps[group.identity()].is_identity() {
            return Err(Error::NotHomomorphism {
                relation: group.label(group.identity()).to_string(),
                residual: "identity element must act trivially".into(),
            });
        }
        for i in 0..group.size() {
            for j in 0..group.size() {
                let lhs = maps[i].compose(&maps[j])?;
                if lhs != maps[group.product(i, j)] {
                    return Err(Error::NotHomomorphism {
                        relation: format!("{}*{}", group.label(i), group.label(j)),
                        residual: "action is not table-compatible".into(),
                    });
                }
            }
        }
        Ok(MonoidAction {
            monoid: Arc::new(MonoidPresentation::Group(group)),
            pres,
            kind: ActionKind::Table(maps),
        })
    }

    /// Symmetric group permuting the first n generators.
    pub fn permutations(
        pres: Arc<PbwPresentation>,
        n: usize,
    ) -> Result<MonoidAction> {
        let (group, perms) = FiniteGroup::symmetric(n)?;
        if pres.num_gens() < n {
            return Err(Error::PresentationMismatch(format!(
                "permuting {n} generators of {}",
                pres.num_gens()
            )));
        }
        let maps = perms
            .iter()
            .map(|p| {
                let images: Vec<Poly> = (0..pres.num_gens())
                    .map(|i| {
                        let target = if i < n { p[i] } else { i };
                        pres.gen(target)
                    })
                    .collect();
                AlgebraMap::new(pres.clone(), images)
            })
            .collect::<Result<Vec<_>>>()?;
        MonoidAction::group(group, maps)
    }

    pub fn monoid(&self) -> &Arc<MonoidPresentation> {
        &self.monoid
    }

    pub fn algebra(&self) -> &Arc<PbwPresentation> {
        &self.pres
    }

    pub fn map_of(&self, m: u64) -> AlgebraMap {
        match &self.kind {
            ActionKind::Power { sigma, period } => match period {
                Some(pows) => pows[(m % pows.len() as u64) as usize].clone(),
                None => sigma.pow(m),
            },
            ActionKind::Table(maps) => maps[m as usize].clone(),
        }
    }

    pub fn act(&self, m: u64, a: &Poly) -> Poly {
        match &self.kind {
            ActionKind::Power { sigma, period } => match period {
                Some(pows) => pows[(m % pows.len() as u64) as usize].apply(a),
                None => {
                    let mut out = a.clone();
                    for _ in 0..m {
                        out = sigma.apply(&out);
                    }
                    out
                }
            },
            ActionKind::Table(maps) => maps[m as usize].apply(a),
        }
    }

    /// Elements acting trivially: a modulus in the numerical case (the
    /// order of the acting map), a subgroup in the group case.
    pub fn kernel(&self) -> Result<SubMonoid> {
        match &self.kind {
            ActionKind::Power { period, .. } => match period {
                Some(pows) => Ok(SubMonoid::Modulus(pows.len() as u64)),
                None => Err(Error::CapExceeded(
                    "acting map has unresolved order".into(),
                )),
            },
            ActionKind::Table(maps) => Ok(SubMonoid::Subgroup(
                maps.iter()
                    .enumerate()
                    .filter_map(|(i, m)| m.is_identity().then_some(i as u64))
                    .collect(),
            )),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::{parse_poly, parse_scalar};
    use crate::pbw::RelationInput;
    use crate::poly::VarSet;

    fn sign_pres(names: &[&str], order: u32) -> Arc<PbwPresentation> {
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
        PbwPresentation::new(vars, order, rels).unwrap()
    }

    fn commutative(names: &[&str], order: u32) -> Arc<PbwPresentation> {
        PbwPresentation::commutative(VarSet::unweighted(names).unwrap(), order)
    }

    fn p(pr: &PbwPresentation, s: &str) -> Poly {
        parse_poly(pr.vars(), pr.field_order(), s).unwrap()
    }

    fn swap_map(pr: &Arc<PbwPresentation>) -> AlgebraMap {
        AlgebraMap::new(pr.clone(), vec![pr.gen(1), pr.gen(0)]).unwrap()
    }

    #[test]
    fn apply_is_the_product_of_images() {
        let v2 = sign_pres(&["x", "y"], 1);
        let swap = swap_map(&v2);
        // oracle: the image of xy is the direct product y*x
        let oracle = v2.nc_mul(&v2.gen(1), &v2.gen(0));
        assert_eq!(swap.apply(&p(&v2, "x*y")), oracle);
        assert_eq!(oracle, p(&v2, "-x*y"));
        let id = AlgebraMap::identity(v2.clone());
        let e = p(&v2, "x^2*y - 3*x + 1");
        assert_eq!(id.apply(&e), e);
    }

    #[test]
    fn sixth_root_scaling_fixes_sixth_powers() {
        let a = commutative(&["x1"], 6);
        let z6 = parse_scalar(6, "z6").unwrap();
        let sigma = AlgebraMap::diagonal(a.clone(), vec![z6]).unwrap();
        assert_eq!(sigma.apply(&p(&a, "x1^6")), p(&a, "x1^6"));
        assert_ne!(sigma.apply(&p(&a, "x1^3")), p(&a, "x1^3"));
        assert_eq!(sigma.order_of(10), Some(6));
    }

    #[test]
    fn rejects_non_maps() {
        let v2 = sign_pres(&["x", "y"], 1);
        let bad = AlgebraMap::new(v2.clone(), vec![v2.gen(0), v2.gen(0)]);
        match bad {
            Err(Error::NotHomomorphism { relation, .. }) => assert_eq!(relation, "y*x"),
            other => panic!("expected rejection, got {other:?}"),
        }
    }

    #[test]
    fn order_and_composition() {
        let v2 = sign_pres(&["x", "y"], 1);
        let swap = swap_map(&v2);
        assert_eq!(swap.order_of(5), Some(2));
        assert_eq!(AlgebraMap::identity(v2.clone()).order_of(5), Some(1));
        assert!(swap.compose(&swap).unwrap().is_identity());
        let z4 = parse_scalar(4, "z4").unwrap();
        let a = commutative(&["x"], 4);
        let quarter = AlgebraMap::diagonal(a, vec![z4]).unwrap();
        assert_eq!(quarter.order_of(3), None);
        assert_eq!(quarter.order_of(4), Some(4));
    }

    #[test]
    fn inverse_search() {
        let a = commutative(&["x"], 1);
        let double = AlgebraMap::new(a.clone(), vec![p(&a, "2*x")]).unwrap();
        let half = double.try_inverse(1).unwrap();
        assert_eq!(half.image(0), &p(&a, "1/2*x"));
        let square = AlgebraMap::new(a.clone(), vec![p(&a, "x^2")]).unwrap();
        assert!(square.try_inverse(4).is_err());
        let v2 = sign_pres(&["x", "y"], 1);
        let swap = swap_map(&v2);
        assert_eq!(swap.try_inverse(1).unwrap(), swap);
    }

    #[test]
    fn normal_space_of_identity_is_the_center() {
        // sign-commuting on two generators: center is squares
        let v2 = sign_pres(&["x", "y"], 1);
        let id = AlgebraMap::identity(v2.clone());
        let basis = normal_space(&id, 4);
        assert_eq!(basis.len(), 6); // 1, x^2, y^2, x^4, x^2y^2, y^4
        for b in &basis {
            for g in 0..2 {
                let xg = v2.gen(g);
                assert_eq!(v2.nc_mul(&xg, b), v2.nc_mul(b, &xg));
            }
        }
        // odd generator count: the full product monomial is central too
        let v3 = sign_pres(&["x1", "x2", "x3"], 1);
        let id3 = AlgebraMap::identity(v3.clone());
        let basis3 = normal_space(&id3, 3);
        let mons: Vec<String> = basis3.iter().map(|b| b.to_string()).collect();
        assert_eq!(basis3.len(), 5); // 1, x1^2, x2^2, x3^2, x1x2x3
        assert!(mons.contains(&"x1*x2*x3".to_string()));
    }

    #[test]
    fn normal_space_nontrivial_map_commutative_domain_is_zero() {
        // x a = a sigma(x) in a commutative domain forces a (x - sigma(x)) = 0
        let a = commutative(&["x", "y"], 1);
        let swap = swap_map(&a);
        assert!(normal_space(&swap, 2).is_empty());
        let id = AlgebraMap::identity(a.clone());
        assert_eq!(normal_space(&id, 2).len(), 6);
    }

    #[test]
    fn normal_space_swap_on_sign_commuting_degree_one() {
        let v2 = sign_pres(&["x", "y"], 1);
        let swap = swap_map(&v2);
        let basis = normal_space(&swap, 1);
        assert!(basis.is_empty());
    }

    #[test]
    fn innerness_witnesses() {
        let v2 = sign_pres(&["x", "y"], 1);
        let id = AlgebraMap::identity(v2.clone());
        assert_eq!(is_inner_up_to_degree(&id, 0).unwrap(), p(&v2, "1"));
        let swap = swap_map(&v2);
        assert!(is_inner_up_to_degree(&swap, 6).is_none());
        let kx = commutative(&["x"], 1);
        let flip = AlgebraMap::new(kx.clone(), vec![p(&kx, "-x")]).unwrap();
        assert!(is_inner_up_to_degree(&flip, 6).is_none());
    }

    #[test]
    fn numerical_monoid_membership() {
        let m = NumericalMonoid::new(vec![2, 3]).unwrap();
        assert!(m.contains(0) && m.contains(2) && m.contains(3) && m.contains(7));
        assert!(!m.contains(1));
        assert_eq!(m.elements_up_to(7), vec![0, 2, 3, 4, 5, 6, 7]);
        assert!(NumericalMonoid::new(vec![0, 2]).is_err());
    }

    #[test]
    fn coset_bases_numerical() {
        let m23 = MonoidPresentation::Numerical(NumericalMonoid::new(vec![2, 3]).unwrap());
        let b = m23.coset_basis(&SubMonoid::Modulus(6)).unwrap();
        assert_eq!(b.reps, vec![0, 2, 3, 4, 5, 7]);
        let nat = MonoidPresentation::Numerical(NumericalMonoid::naturals());
        let b = nat.coset_basis(&SubMonoid::Modulus(4)).unwrap();
        assert_eq!(b.reps, vec![0, 1, 2, 3]);
        let evens = MonoidPresentation::Numerical(NumericalMonoid::new(vec![2]).unwrap());
        let b = evens.coset_basis(&SubMonoid::Modulus(4)).unwrap();
        assert_eq!(b.reps, vec![0, 2]);
        // 5 - 3 = 2 is not a member: no monomial basis over the
        // designated sub-monoid
        let m35 = MonoidPresentation::Numerical(NumericalMonoid::new(vec![3, 5]).unwrap());
        assert!(m35.coset_basis(&SubMonoid::Modulus(2)).is_err());
    }

    #[test]
    fn symmetric_group_tables() {
        let (s3, perms) = FiniteGroup::symmetric(3).unwrap();
        assert_eq!(s3.size(), 6);
        assert_eq!(perms.len(), 6);
        assert_eq!(s3.label(s3.identity()), "e");
        let g = s3.index_of("g213").unwrap();
        assert_eq!(s3.product(g, g), s3.identity());
        let mp = MonoidPresentation::Group(s3.clone());
        let all = mp
            .coset_basis(&SubMonoid::Subgroup(vec![s3.identity() as u64]))
            .unwrap();
        assert_eq!(all.reps.len(), 6);
        assert_eq!(all.reps[0], s3.identity() as u64);
        let sub = mp
            .coset_basis(&SubMonoid::Subgroup(vec![s3.identity() as u64, g as u64]))
            .unwrap();
        assert_eq!(sub.reps.len(), 3);
    }

    #[test]
    fn bad_group_tables_are_rejected() {
        // break associativity in a 3-element table
        let labels = vec!["e".into(), "a".into(), "b".into()];
        let table = vec![vec![0, 1, 2], vec![1, 0, 0], vec![2, 0, 1]];
        assert!(FiniteGroup::new(labels, table, "e").is_err());
    }

    #[test]
    fn permutation_actions_verify() {
        let v2 = sign_pres(&["x", "y"], 1);
        let act = MonoidAction::permutations(v2.clone(), 2).unwrap();
        let g = match act.monoid().as_ref() {
            MonoidPresentation::Group(g) => g.index_of("g21").unwrap() as u64,
            _ => unreachable!(),
        };
        assert_eq!(act.act(g, &p(&v2, "x")), p(&v2, "y"));
        match act.kernel().unwrap() {
            SubMonoid::Subgroup(h) => assert_eq!(h.len(), 1),
            _ => unreachable!(),
        }
    }

    #[test]
    fn power_actions_and_kernels() {
        let kx = commutative(&["x"], 1);
        let flip = AlgebraMap::new(kx.clone(), vec![p(&kx, "-x")]).unwrap();
        let act = MonoidAction::ore(flip, 16).unwrap();
        assert_eq!(act.act(3, &p(&kx, "x")), p(&kx, "-x"));
        assert_eq!(act.act(4, &p(&kx, "x")), p(&kx, "x"));
        assert_eq!(act.kernel().unwrap(), SubMonoid::Modulus(2));
    }

    #[test]
    fn incompatible_group_action_rejected() {
        // Z/2 acting by a map of order 4 cannot be table-compatible
        let labels = vec!["e".to_string(), "s".to_string()];
        let table = vec![vec![0, 1], vec![1, 0]];
        let z2 = FiniteGroup::new(labels, table, "e").unwrap();
        let a = commutative(&["x"], 4);
        let z4 = parse_scalar(4, "z4").unwrap();
        let quarter = AlgebraMap::diagonal(a.clone(), vec![z4]).unwrap();
        let maps = vec![AlgebraMap::identity(a), quarter];
        assert!(MonoidAction::group(z2, maps).is_err());
    }
}
