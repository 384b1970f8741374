//! JSON problem descriptions and their translation into algebra objects.
//!
//! A problem file names the generators, the rewriting rules, an optional
//! twist (adjoined skew variable or symmetric group of permutations), the
//! central subalgebra, and the claimed module basis. Formula-style
//! computations carry their side inputs in the same file.

use std::sync::Arc;

use ncdisc_core::action::AlgebraMap;
use ncdisc_core::ambient::{Ambient, AmbientElement};
use ncdisc_core::freemod::{CentralSubalgebra, FreeModuleStructure};
use ncdisc_core::parse::parse_poly;
use ncdisc_core::pbw::{PbwPresentation, RelationInput};
use ncdisc_core::twist::TwistedAlgebra;
use ncdisc_core::{Error, Poly, Result, Scalar, VarSet};
use serde::Deserialize;

fn default_order() -> u32 {
    1
}

fn default_order_cap() -> u32 {
    64
}

/// A generator, either a bare name (weight one) or a weighted name.
#[derive(Debug, Clone, Deserialize)]
#[serde(untagged)]
pub enum VarSpec {
    Plain(String),
    Weighted { name: String, weight: u32 },
}

impl VarSpec {
    fn pair(&self) -> (String, u32) {
        match self {
            VarSpec::Plain(name) => (name.clone(), 1),
            VarSpec::Weighted { name, weight } => (name.clone(), *weight),
        }
    }
}

/// One rewriting rule `upper*lower = q*lower*upper + tail`.
#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RelationSpec {
    pub upper: String,
    pub lower: String,
    pub q: String,
    #[serde(default)]
    pub tail: Option<String>,
}

/// How the base ring is extended before taking the discriminant.
#[derive(Debug, Clone, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case", deny_unknown_fields)]
pub enum TwistSpec {
    /// Adjoin a variable `t` with `t*f = sigma(f)*t`, where `sigma` is given
    /// by its images on the generators.
    Ore {
        images: Vec<String>,
        t: String,
        #[serde(default = "default_order_cap")]
        order_cap: u32,
    },
    /// Crossed product with the full symmetric group permuting the
    /// generators.
    SymmetricGroup { n: usize },
}

/// Named central elements generating the base ring.
#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SubalgebraSpec {
    pub names: Vec<String>,
    pub gens: Vec<String>,
}

/// Side inputs for closed-form assembly.
#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FormulaSpec {
    /// Period of the twisting map (adjoined-variable form).
    #[serde(default)]
    pub m: Option<u32>,
    /// Module rank of the inner extension, or the exponent applied to the
    /// monoid-side value.
    #[serde(default)]
    pub n: Option<u32>,
    /// Exponent applied to the algebra-side value.
    #[serde(default)]
    pub l: Option<u32>,
    /// Generators of a numerical monoid.
    #[serde(default)]
    pub monoid_gens: Option<Vec<u64>>,
    /// Congruence modulus cutting out the central submonoid.
    #[serde(default)]
    pub modulus: Option<u64>,
}

/// A full problem description as read from a JSON file.
#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProblemSpec {
    /// Order of the coefficient field's root of unity (1 means rationals).
    #[serde(default = "default_order")]
    pub order: u32,
    pub vars: Vec<VarSpec>,
    #[serde(default)]
    pub relations: Vec<RelationSpec>,
    #[serde(default)]
    pub twist: Option<TwistSpec>,
    #[serde(default)]
    pub subalgebra: Option<SubalgebraSpec>,
    #[serde(default)]
    pub basis: Vec<String>,
    /// Extra degree headroom when expressing products in the basis.
    #[serde(default)]
    pub slack: Option<u64>,
    /// Hard ceiling on solver degree.
    #[serde(default)]
    pub degree_cap: Option<u64>,
    /// Optional note on what the file is for; not interpreted.
    #[serde(default)]
    pub compute: Option<String>,
    /// Inner extension for closed-form methods: subalgebra of the base ring.
    #[serde(default)]
    pub base_subalgebra: Option<SubalgebraSpec>,
    /// Inner extension basis over `base_subalgebra`.
    #[serde(default)]
    pub base_basis: Option<Vec<String>>,
    /// Images of a base automorphism, for the fixed-ring closed form.
    #[serde(default)]
    pub sigma: Option<Vec<String>>,
    #[serde(default)]
    pub formula: Option<FormulaSpec>,
}

/// Parses a string that must denote a field constant.
pub fn parse_scalar(order: u32, s: &str) -> Result<Scalar> {
    let vars = VarSet::empty();
    let p = parse_poly(&vars, order, s)?;
    let mut terms = p.terms();
    match terms.next() {
        None => Ok(Scalar::zero(order)),
        Some((m, c)) if m.is_one() && terms.next().is_none() => Ok(c.clone()),
        _ => Err(Error::Parse {
            pos: 0,
            msg: format!("expected a constant, found {}", p),
        }),
    }
}

/// A problem translated into live objects. The subalgebra and module are
/// rebuilt on demand since they are tied to the parsed description anyway.
pub struct Built {
    pub spec: ProblemSpec,
    pub pres: Arc<PbwPresentation>,
    pub ambient: Ambient,
}

impl Built {
    pub fn parse(&self, s: &str) -> Result<AmbientElement> {
        self.ambient.parse(s)
    }

    pub fn subalgebra(&self) -> Result<CentralSubalgebra> {
        let sub = self.spec.subalgebra.as_ref().ok_or_else(|| {
            Error::Invalid("this computation needs a \"subalgebra\" field".into())
        })?;
        build_subalgebra(&self.ambient, sub)
    }

    pub fn module(&self) -> Result<FreeModuleStructure> {
        let csub = self.subalgebra()?;
        if self.spec.basis.is_empty() {
            return Err(Error::Invalid(
                "this computation needs a nonempty \"basis\" field".into(),
            ));
        }
        let basis = self
            .spec
            .basis
            .iter()
            .map(|s| self.ambient.parse(s))
            .collect::<Result<Vec<_>>>()?;
        FreeModuleStructure::new(csub, basis, self.spec.slack, self.spec.degree_cap)
    }
}

fn build_subalgebra(ambient: &Ambient, sub: &SubalgebraSpec) -> Result<CentralSubalgebra> {
    let gens = sub
        .gens
        .iter()
        .map(|s| ambient.parse(s))
        .collect::<Result<Vec<_>>>()?;
    CentralSubalgebra::new(ambient.clone(), sub.names.clone(), gens)
}

/// Translates a parsed description into a presentation and ambient algebra.
/// Confluence of the rewriting rules is checked as part of construction.
pub fn build(spec: &ProblemSpec) -> Result<Built> {
    let vars = VarSet::new(spec.vars.iter().map(|v| v.pair()).collect())?;
    let relations = spec
        .relations
        .iter()
        .map(|r| {
            let tail = match &r.tail {
                Some(t) => parse_poly(&vars, spec.order, t)?,
                None => Poly::zero(&vars),
            };
            Ok(RelationInput {
                upper: r.upper.clone(),
                lower: r.lower.clone(),
                q: parse_scalar(spec.order, &r.q)?,
                tail,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let pres = PbwPresentation::new(vars, spec.order, relations)?;
    let ambient = match &spec.twist {
        None => Ambient::pbw(pres.clone()),
        Some(TwistSpec::Ore {
            images,
            t,
            order_cap,
        }) => {
            let imgs = images
                .iter()
                .map(|s| parse_poly(pres.vars(), spec.order, s))
                .collect::<Result<Vec<_>>>()?;
            let sigma = AlgebraMap::new(pres.clone(), imgs)?;
            let alg = TwistedAlgebra::skew_polynomial(sigma, *order_cap)?;
            Ambient::twisted(Arc::new(alg), t)?
        }
        Some(TwistSpec::SymmetricGroup { n }) => {
            let alg = TwistedAlgebra::skew_group_symmetric(pres.clone(), *n)?;
            Ambient::twisted(Arc::new(alg), "t")?
        }
    };
    Ok(Built {
        spec: spec.clone(),
        pres,
        ambient,
    })
}

/// Builds the inner extension named by `base_subalgebra`/`base_basis` as a
/// module over the base ring of the (untwisted) presentation.
pub fn build_base_module(built: &Built) -> Result<FreeModuleStructure> {
    let sub = built.spec.base_subalgebra.as_ref().ok_or_else(|| {
        Error::Invalid("this method needs a \"base_subalgebra\" field".into())
    })?;
    let basis_strs = built.spec.base_basis.as_ref().ok_or_else(|| {
        Error::Invalid("this method needs a \"base_basis\" field".into())
    })?;
    let base_amb = Ambient::pbw(built.pres.clone());
    let csub = build_subalgebra(&base_amb, sub)?;
    let basis = basis_strs
        .iter()
        .map(|s| base_amb.parse(s))
        .collect::<Result<Vec<_>>>()?;
    FreeModuleStructure::new(csub, basis, built.spec.slack, built.spec.degree_cap)
}

/// Reads and parses a problem file.
pub fn load(path: &std::path::Path) -> std::result::Result<ProblemSpec, String> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| format!("cannot read {}: {}", path.display(), e))?;
    serde_json::from_str(&text).map_err(|e| format!("{}: {}", path.display(), e))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn minimal_commutative_spec_builds() {
        let spec: ProblemSpec = serde_json::from_str(
            r#"{
                "vars": ["x", "y"],
                "subalgebra": {"names": ["f1", "f2"], "gens": ["x^2", "y^2"]},
                "basis": ["1", "x", "y", "x*y"]
            }"#,
        )
        .unwrap();
        let built = build(&spec).unwrap();
        assert_eq!(built.pres.num_gens(), 2);
        let module = built.module().unwrap();
        assert_eq!(module.rank(), 4);
    }

    #[test]
    fn unknown_fields_are_rejected() {
        let r: std::result::Result<ProblemSpec, _> =
            serde_json::from_str(r#"{"vars": ["x"], "bogus": 1}"#);
        assert!(r.is_err());
    }

    #[test]
    fn weighted_vars_and_relations_parse() {
        let spec: ProblemSpec = serde_json::from_str(
            r#"{
                "vars": ["x", "y"],
                "relations": [{"upper": "y", "lower": "x", "q": "-1", "tail": "1"}],
                "subalgebra": {"names": ["f1", "f2"], "gens": ["x^2", "y^2"]},
                "basis": ["1", "x", "y", "x*y"]
            }"#,
        )
        .unwrap();
        let built = build(&spec).unwrap();
        let q = built.pres.q_coeff(1, 0);
        assert_eq!(q.clone(), Scalar::from_int(1, -1));
    }

    #[test]
    fn ore_twist_builds_and_parses_t() {
        let spec: ProblemSpec = serde_json::from_str(
            r#"{
                "vars": ["x", "y"],
                "twist": {"kind": "ore", "images": ["y", "x"], "t": "t"},
                "subalgebra": {"names": ["e1", "e2", "T"], "gens": ["x+y", "x*y", "t^2"]},
                "basis": ["1", "x", "t", "x*t"]
            }"#,
        )
        .unwrap();
        let built = build(&spec).unwrap();
        assert!(built.parse("x*t + t^2").is_ok());
        assert_eq!(built.module().unwrap().rank(), 4);
    }

    #[test]
    fn bad_relation_coefficient_is_a_parse_error() {
        assert!(parse_scalar(1, "x").is_err());
        assert!(parse_scalar(1, "2").is_ok());
        assert!(parse_scalar(6, "z6^2").is_ok());
    }
}
