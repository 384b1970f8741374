//! Discriminants of an algebra over a central subalgebra: regular traces
//! through left-multiplication matrices, the trace form and its twisted
//! variant, direct determinant evaluation, and the closed-form assembly
//! rules for skew polynomial extensions, twisted monoid products, skew
//! group algebras, reflections, and homogenization.
//!
//! Trace entries use that left multiplication is a ring homomorphism into
//! matrices over the subalgebra, so `tr(a b)` is computed from the two
//! matrices instead of expressing degree-three products.

use std::sync::Arc;

use crate::action::{AlgebraMap, MonoidAction, MonoidPresentation, SubMonoid};
use crate::ambient::{Ambient, AmbientElement};
use crate::error::{Error, Result};
use crate::freemod::{default_slack, CentralSubalgebra, FreeModuleStructure};
use crate::linalg::nullspace;
use crate::pbw::PbwPresentation;
use crate::poly::{bareiss_det, Mon, Poly, VarSet};
use crate::scalar::Scalar;
use crate::twist::TwistedAlgebra;

/// How a discriminant value was obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    Direct,
    OreFormula,
    TwistFormula,
    SkewGroupFormula,
    Reflection,
    ReflectionTrick,
    Homogenized,
}

impl std::fmt::Display for Method {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            Method::Direct => "direct",
            Method::OreFormula => "ore-formula",
            Method::TwistFormula => "twist-formula",
            Method::SkewGroupFormula => "skew-group-formula",
            Method::Reflection => "reflection",
            Method::ReflectionTrick => "reflection-trick",
            Method::Homogenized => "homogenized",
        };
        f.write_str(s)
    }
}

/// The matrix `(tr(z_i sigma(z_j)))` over the subalgebra variables.
#[derive(Debug, Clone)]
pub struct TraceForm {
    pub entries: Vec<Vec<Poly>>,
    /// `true` when a twisting map was applied on the right arguments.
    pub twisted: bool,
}

/// A discriminant up to scalars. `raw` and `normalized` are over the
/// subalgebra variables when the value came from an actual determinant;
/// `ambient` is always present, monic, and over the ambient variables
/// (base generators plus the adjoined monoid variable where one exists).
#[derive(Debug, Clone)]
pub struct Discriminant {
    pub raw: Option<Poly>,
    pub normalized: Option<Poly>,
    pub ambient: Poly,
    pub method: Method,
    pub certificates: Vec<String>,
}

/// Matrix of left multiplication by `b` on the module basis: column `j`
/// holds the coefficients of `b * z_j`.
pub fn left_mult_matrix(
    f: &FreeModuleStructure,
    b: &AmbientElement,
) -> Result<Vec<Vec<Poly>>> {
    let amb = f.ambient();
    let n = f.rank();
    let mut cols = Vec::with_capacity(n);
    for z in f.basis() {
        cols.push(f.express_in_basis(&amb.mul(b, z))?);
    }
    let mut m = vec![vec![Poly::zero(f.subalgebra().fvars()); n]; n];
    for (j, col) in cols.iter().enumerate() {
        for (i, r) in col.iter().enumerate() {
            m[i][j] = r.clone();
        }
    }
    Ok(m)
}

/// Regular trace of `b`, a polynomial in the subalgebra variables.
pub fn trace(f: &FreeModuleStructure, b: &AmbientElement) -> Result<Poly> {
    let m = left_mult_matrix(f, b)?;
    let mut t = Poly::zero(f.subalgebra().fvars());
    for (i, row) in m.iter().enumerate() {
        t = t.add(&row[i]);
    }
    Ok(t)
}

fn trace_of_product(a: &[Vec<Poly>], b: &[Vec<Poly>]) -> Poly {
    let n = a.len();
    let mut t = Poly::zero(a[0][0].vars());
    for k in 0..n {
        for l in 0..n {
            if a[k][l].is_zero() || b[l][k].is_zero() {
                continue;
            }
            t = t.add(&a[k][l].mul(&b[l][k]));
        }
    }
    t
}

/// The trace form, optionally twisted by an algebra map on the right:
/// entry `(i, j)` is `tr(z_i sigma(z_j))`. A twisting map must fix every
/// subalgebra generator.
pub fn trace_form(f: &FreeModuleStructure, sigma: Option<&AlgebraMap>) -> Result<TraceForm> {
    let amb = f.ambient();
    if let Some(s) = sigma {
        if amb.twisted_alg().is_some() {
            return Err(Error::Invalid(
                "twisted trace forms of monoid products are not supported".into(),
            ));
        }
        for (i, g) in f.subalgebra().gens().iter().enumerate() {
            let AmbientElement::P(p) = g else { unreachable!() };
            if &s.apply(p) != p {
                return Err(Error::DoesNotFixBase(
                    f.subalgebra().fvars().name(i).to_string(),
                ));
            }
        }
    }
    let n = f.rank();
    let mut lm_left = Vec::with_capacity(n);
    for z in f.basis() {
        lm_left.push(left_mult_matrix(f, z)?);
    }
    let lm_right = match sigma {
        None => lm_left.clone(),
        Some(s) => {
            let mut v = Vec::with_capacity(n);
            for z in f.basis() {
                let AmbientElement::P(p) = z else { unreachable!() };
                v.push(left_mult_matrix(f, &AmbientElement::P(s.apply(p)))?);
            }
            v
        }
    };
    let mut entries = vec![vec![Poly::zero(f.subalgebra().fvars()); n]; n];
    for i in 0..n {
        for j in 0..n {
            entries[i][j] = trace_of_product(&lm_left[i], &lm_right[j]);
        }
    }
    if sigma.is_none() {
        for i in 0..n {
            for j in 0..i {
                assert_eq!(
                    entries[i][j], entries[j][i],
                    "trace form must be symmetric"
                );
            }
        }
    }
    Ok(TraceForm { entries, twisted: sigma.is_some() })
}

/// Matrix of a subalgebra-fixing map as a module endomorphism: column `j`
/// expresses `sigma(z_j)` over the basis. Its determinant must be a nonzero
/// scalar, returned alongside.
pub fn sigma_matrix(
    f: &FreeModuleStructure,
    sigma: &AlgebraMap,
) -> Result<(Vec<Vec<Poly>>, Scalar)> {
    for (i, g) in f.subalgebra().gens().iter().enumerate() {
        let AmbientElement::P(p) = g else {
            return Err(Error::Invalid(
                "module maps over monoid products are not supported".into(),
            ));
        };
        if &sigma.apply(p) != p {
            return Err(Error::DoesNotFixBase(
                f.subalgebra().fvars().name(i).to_string(),
            ));
        }
    }
    let n = f.rank();
    let mut m = vec![vec![Poly::zero(f.subalgebra().fvars()); n]; n];
    for (j, z) in f.basis().iter().enumerate() {
        let AmbientElement::P(p) = z else { unreachable!() };
        let col = f.express_in_basis(&AmbientElement::P(sigma.apply(p)))?;
        for (i, r) in col.into_iter().enumerate() {
            m[i][j] = r;
        }
    }
    let det = bareiss_det(&m)?;
    match det.degree() {
        Some(0) => {
            let c = det
                .terms()
                .next()
                .map(|(_, c)| c.clone())
                .expect("degree zero implies a constant term");
            Ok((m, c))
        }
        _ => Err(Error::NotAUnit(det.to_string())),
    }
}

fn ambient_poly_of(f: &FreeModuleStructure, p: &Poly) -> Result<Poly> {
    let amb = f.ambient();
    amb.to_ambient_poly(&f.subalgebra().eval(p))
}

/// Discriminant as the determinant of the trace form.
pub fn discriminant_direct(f: &FreeModuleStructure) -> Result<Discriminant> {
    let w = trace_form(f, None)?;
    let raw = bareiss_det(&w.entries)?;
    if raw.is_zero() {
        return Err(Error::Invalid("trace form is singular".into()));
    }
    let ambient = ambient_poly_of(f, &raw)?.normalized();
    let certificates = vec![
        format!("module basis of rank {}", f.rank()),
        format!("coefficient degree slack {}", f.slack()),
    ];
    Ok(Discriminant {
        normalized: Some(raw.normalized()),
        raw: Some(raw),
        ambient,
        method: Method::Direct,
        certificates,
    })
}

fn union_vars(a: &Arc<VarSet>, b: &Arc<VarSet>) -> Result<Arc<VarSet>> {
    let mut out = a.clone();
    for (name, w) in b.iter() {
        match out.index_of(name) {
            Some(i) => {
                if out.weight(i) != w {
                    return Err(Error::VarMismatch(format!(
                        "{name} carries two different weights"
                    )));
                }
            }
            None => out = out.extended(name, w)?,
        }
    }
    Ok(out)
}

fn lift(p: &Poly, target: &Arc<VarSet>) -> Result<Poly> {
    let images: Vec<Poly> = p
        .vars()
        .names()
        .map(|n| Poly::var_named(target, n))
        .collect::<Result<_>>()?;
    p.substitute(target, &images)
}

/// Closed form for a skew polynomial extension `A[t; sigma]` free of rank
/// `m` (the order of `sigma`) over `t^m`-scalars: with `n` the rank of `A`
/// over the fixed subalgebra and `d_ab` the discriminant downstairs, the
/// result is `d_ab^m * t^{(m-1) m n}`.
pub fn formula_ore(
    d_ab: &Discriminant,
    m: u32,
    n: u32,
    t_name: &str,
) -> Result<Discriminant> {
    if m == 0 || n == 0 {
        return Err(Error::Invalid("ranks must be positive".into()));
    }
    let vars = if d_ab.ambient.vars().index_of(t_name).is_some() {
        return Err(Error::VarMismatch(format!(
            "{t_name} already names a base variable"
        )));
    } else {
        d_ab.ambient.vars().extended(t_name, 1)?
    };
    let texp = (m - 1)
        .checked_mul(m)
        .and_then(|v| v.checked_mul(n))
        .ok_or_else(|| Error::CapExceeded("exponent overflow".into()))?;
    let t = Poly::var_named(&vars, t_name)?;
    let out = lift(&d_ab.ambient, &vars)?.pow(m).mul(&t.pow(texp));
    let mut certificates = vec![format!(
        "assembled from a rank-{n} base discriminant and a twist of order {m}"
    )];
    certificates.extend(d_ab.certificates.iter().cloned());
    Ok(Discriminant {
        raw: None,
        normalized: None,
        ambient: out.normalized(),
        method: Method::OreFormula,
        certificates,
    })
}

/// Closed form for a twisted monoid product: `d_a^l * d_m^n` where `l` is
/// the module rank of the monoid algebra over its central part and `n` the
/// rank of the base algebra over its invariants.
pub fn formula_twist(
    d_a: &Discriminant,
    d_m: &Discriminant,
    n: u32,
    l: u32,
) -> Result<Discriminant> {
    let vars = union_vars(d_a.ambient.vars(), d_m.ambient.vars())?;
    let out = lift(&d_a.ambient, &vars)?
        .pow(l)
        .mul(&lift(&d_m.ambient, &vars)?.pow(n));
    let mut certificates = vec![format!(
        "assembled from algebra rank {n} and monoid rank {l}"
    )];
    certificates.extend(d_a.certificates.iter().cloned());
    certificates.extend(d_m.certificates.iter().cloned());
    Ok(Discriminant {
        raw: None,
        normalized: None,
        ambient: out.normalized(),
        method: Method::TwistFormula,
        certificates,
    })
}

/// Closed form for a skew group algebra over a central invariant subalgebra:
/// the base discriminant to the power of the group order.
pub fn formula_skgrp(d_ar: &Discriminant, group_order: u32) -> Result<Discriminant> {
    if group_order == 0 {
        return Err(Error::Invalid("group order must be positive".into()));
    }
    let mut certificates = vec![format!("base discriminant raised to {group_order}")];
    certificates.extend(d_ar.certificates.iter().cloned());
    Ok(Discriminant {
        raw: d_ar.raw.as_ref().map(|p| p.pow(group_order)),
        normalized: d_ar.normalized.as_ref().map(|p| p.pow(group_order).normalized()),
        ambient: d_ar.ambient.pow(group_order).normalized(),
        method: Method::SkewGroupFormula,
        certificates,
    })
}

fn linear_matrix(sigma: &AlgebraMap) -> Result<Vec<Vec<Scalar>>> {
    let pres = sigma.pres();
    let n = pres.num_gens();
    let order = pres.field_order();
    let mut m = vec![vec![Scalar::zero(order); n]; n];
    for j in 0..n {
        let img = sigma.image(j);
        for (mon, c) in img.terms() {
            if mon.wdeg() != 1 {
                return Err(Error::NotReflection(format!(
                    "image of {} is not linear",
                    pres.vars().name(j)
                )));
            }
            let i = mon
                .exps()
                .iter()
                .position(|&e| e == 1)
                .expect("degree one monomial");
            m[i][j] = c.clone();
        }
    }
    Ok(m)
}

fn scalar_det(mut m: Vec<Vec<Scalar>>, order: u32) -> Scalar {
    let n = m.len();
    let mut det = Scalar::one(order);
    for c in 0..n {
        let Some(p) = (c..n).find(|&r| !m[r][c].is_zero()) else {
            return Scalar::zero(order);
        };
        if p != c {
            m.swap(p, c);
            det = det.neg();
        }
        det = det.mul(&m[c][c]);
        let inv = m[c][c].inv();
        for r in c + 1..n {
            if m[r][c].is_zero() {
                continue;
            }
            let f = m[r][c].mul(&inv);
            for k in c..n {
                let t = m[r][k].sub(&f.mul(&m[c][k]));
                m[r][k] = t;
            }
        }
    }
    det
}

/// Discriminant of a commutative polynomial algebra over the invariants of
/// a single reflection: `f^{(m-1) m}` where `f` spans the non-fixed
/// eigenline and `m` is the order of the reflection.
pub fn reflection_disc(sigma: &AlgebraMap, order_cap: u32) -> Result<Discriminant> {
    let pres = sigma.pres();
    let vars = pres.vars();
    let order = pres.field_order();
    let n = pres.num_gens();
    let s = linear_matrix(sigma)?;
    let m = sigma
        .order_of(order_cap)
        .ok_or_else(|| Error::CapExceeded(format!("order not found below {order_cap}")))?;
    if m < 2 {
        return Err(Error::NotReflection("the identity fixes everything".into()));
    }
    let mut s_minus_id = s.clone();
    for (i, row) in s_minus_id.iter_mut().enumerate() {
        row[i] = row[i].sub(&Scalar::one(order));
    }
    let fixed = nullspace(&s_minus_id, n);
    if fixed.len() != n - 1 {
        return Err(Error::NotReflection(format!(
            "fixed space has dimension {}, expected {}",
            fixed.len(),
            n - 1
        )));
    }
    let lambda = scalar_det(s.clone(), order);
    for k in 1..m {
        if lambda.pow(k as i64).is_one() {
            return Err(Error::NotReflection(
                "moving eigenvalue is not primitive".into(),
            ));
        }
    }
    assert!(lambda.pow(m as i64).is_one(), "eigenvalue order divides the map order");
    let mut s_minus_lambda = s;
    for (i, row) in s_minus_lambda.iter_mut().enumerate() {
        row[i] = row[i].sub(&lambda);
    }
    let eig = nullspace(&s_minus_lambda, n);
    assert_eq!(eig.len(), 1, "moving eigenspace of a reflection is a line");
    let mut f = Poly::zero(vars);
    for (i, c) in eig[0].iter().enumerate() {
        if !c.is_zero() {
            f = f.add(&Poly::var(vars, i).scale(c));
        }
    }
    let exp = (m - 1)
        .checked_mul(m)
        .ok_or_else(|| Error::CapExceeded("exponent overflow".into()))?;
    Ok(Discriminant {
        raw: None,
        normalized: None,
        ambient: f.pow(exp).normalized(),
        method: Method::Reflection,
        certificates: vec![format!(
            "linear map of order {m} fixing a hyperplane; moving eigenvalue {lambda}"
        )],
    })
}

/// Group-matrix route for a commutative algebra over group invariants: the
/// matrix `M = (sigma_i(z_j))` satisfies `M^T M = trace form`, which is
/// checked entrywise, and the discriminant is `det(M)^2`.
pub fn reflection_trick(
    f: &FreeModuleStructure,
    action: &MonoidAction,
) -> Result<(Vec<Vec<Poly>>, Discriminant)> {
    let amb = f.ambient();
    let pres = amb.base_pres();
    if amb.twisted_alg().is_some() {
        return Err(Error::Invalid("group matrix needs a plain algebra".into()));
    }
    for j in 0..pres.num_gens() {
        for i in 0..j {
            if !pres.q_coeff(j, i).is_one() || !pres.tail(j, i).is_zero() {
                return Err(Error::Invalid(
                    "group matrix needs a commutative algebra".into(),
                ));
            }
        }
    }
    let MonoidPresentation::Group(group) = action.monoid().as_ref() else {
        return Err(Error::Invalid("group matrix needs a finite group".into()));
    };
    let n = f.rank();
    if group.size() != n {
        return Err(Error::DimensionMismatch {
            degree: 0,
            ambient: group.size(),
            module: n,
        });
    }
    let mut m = vec![vec![Poly::zero(pres.vars()); n]; n];
    for (i, row) in m.iter_mut().enumerate() {
        for (j, z) in f.basis().iter().enumerate() {
            let AmbientElement::P(p) = z else { unreachable!() };
            row[j] = action.act(i as u64, p);
        }
    }
    let w = trace_form(f, None)?;
    for j in 0..n {
        for k in 0..n {
            let mut prod = Poly::zero(pres.vars());
            for row in &m {
                prod = prod.add(&row[j].mul(&row[k]));
            }
            let expected = ambient_poly_of(f, &w.entries[j][k])?;
            if prod != expected {
                return Err(Error::Invalid(format!(
                    "group matrix disagrees with the trace form at ({j},{k}): {prod} vs {expected}"
                )));
            }
        }
    }
    let det = bareiss_det(&m)?;
    if det.is_zero() {
        return Err(Error::Invalid("group matrix is singular".into()));
    }
    let d = det.mul(&det);
    let raw = f
        .subalgebra()
        .express_in_generators(&AmbientElement::P(d.clone()), d.degree().unwrap_or(0) + default_slack(amb))?;
    Ok((
        m,
        Discriminant {
            normalized: Some(raw.normalized()),
            raw: Some(raw),
            ambient: d.normalized(),
            method: Method::ReflectionTrick,
            certificates: vec![format!(
                "square of a {n} x {n} group-image determinant; product matrix matches the trace form"
            )],
        },
    ))
}

/// Homogenize a discriminant with a fresh degree-one variable: each term is
/// padded to the top weighted degree.
pub fn homogenize_disc(d: &Discriminant, t_name: &str) -> Result<Discriminant> {
    let vars = d.ambient.vars().extended(t_name, 1)?;
    let p = lift(&d.ambient, &vars)?;
    let top = p.degree().unwrap_or(0);
    let t = Poly::var_named(&vars, t_name)?;
    let mut out = Poly::zero(&vars);
    for (deg, comp) in p.homogeneous_components() {
        let pad = u32::try_from(top - deg)
            .map_err(|_| Error::CapExceeded("homogenization exponent overflow".into()))?;
        out = out.add(&comp.mul(&t.pow(pad)));
    }
    let mut certificates = vec![format!("homogenized to degree {top}")];
    certificates.extend(d.certificates.iter().cloned());
    Ok(Discriminant {
        raw: None,
        normalized: None,
        ambient: out.normalized(),
        method: Method::Homogenized,
        certificates,
    })
}

/// Discriminant of a monoid algebra over the monoid algebra of a central
/// submonoid, computed honestly from the trace form of the coset basis.
/// Numerical monoids take `H = M (mod d)`; finite groups only support the
/// trivial submonoid.
pub fn monoid_algebra_disc(
    monoid: &MonoidPresentation,
    sub: &SubMonoid,
    t_name: &str,
) -> Result<Discriminant> {
    let basis = monoid.coset_basis(sub)?;
    let pres = PbwPresentation::commutative(VarSet::empty(), 1);
    let id = AlgebraMap::identity(pres);
    let action = match (monoid, sub) {
        (MonoidPresentation::Numerical(nm), SubMonoid::Modulus(_)) => {
            MonoidAction::powers(nm.clone(), id, 2)?
        }
        (MonoidPresentation::Group(g), SubMonoid::Subgroup(h)) => {
            if h.len() != 1 {
                return Err(Error::Invalid(
                    "only the trivial subgroup yields a polynomial subalgebra".into(),
                ));
            }
            let maps = vec![id; g.size()];
            MonoidAction::group(g.clone(), maps)?
        }
        _ => return Err(Error::BadMonoid("submonoid shape mismatch".into())),
    };
    let amb = Ambient::twisted(Arc::new(TwistedAlgebra::new(action)), t_name)?;
    let (names, gens) = match sub {
        SubMonoid::Modulus(d) => {
            let fname = if t_name == "T" { "U" } else { "T" };
            let gen = amb.atom(&crate::ambient::AmbientKey {
                part: *d,
                mon: Mon::one(&VarSet::empty()),
            });
            (vec![fname.to_string()], vec![gen])
        }
        SubMonoid::Subgroup(_) => (Vec::new(), Vec::new()),
    };
    let zs = basis
        .reps
        .iter()
        .map(|&r| {
            amb.atom(&crate::ambient::AmbientKey { part: r, mon: Mon::one(&VarSet::empty()) })
        })
        .collect();
    let csub = CentralSubalgebra::new(amb, names, gens)?;
    let cap = 2 * basis.reps.iter().max().copied().unwrap_or(0) + 1;
    let f = FreeModuleStructure::new(csub, zs, None, Some(cap.max(24)))?;
    let mut d = discriminant_direct(&f)?;
    d.certificates.push(format!(
        "coset basis {:?}",
        basis.reps
    ));
    Ok(d)
}
