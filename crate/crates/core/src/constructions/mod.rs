//! The five families of permutation triples, the (A_n) verifier, the
//! agreement-set analysis, parameter enumeration and custom search.

mod params;
mod search;
mod verify;

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::{FieldCtx, FieldElement};
use crate::linpoly::{involution_quadrinomial, LinearizedPoly, PolyJson};

pub use params::{enumerate_params, MAX_ENUMERATION_DEGREE};
pub use search::{search_custom_triples, SearchOutcome, SearchShape, SearchStatus};
pub use verify::{e_union, e_union_by_rank, e_union_exhaustive, verify_an, AnReport, EUnionReport};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FamilyTag {
    Fam1,
    Fam2,
    Fam3i,
    Fam3ii,
    Fam4,
    Fam5,
    Custom,
}

impl FamilyTag {
    pub const FAMILIES: [FamilyTag; 6] = [
        FamilyTag::Fam1,
        FamilyTag::Fam2,
        FamilyTag::Fam3i,
        FamilyTag::Fam3ii,
        FamilyTag::Fam4,
        FamilyTag::Fam5,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            FamilyTag::Fam1 => "fam1",
            FamilyTag::Fam2 => "fam2",
            FamilyTag::Fam3i => "fam3i",
            FamilyTag::Fam3ii => "fam3ii",
            FamilyTag::Fam4 => "fam4",
            FamilyTag::Fam5 => "fam5",
            FamilyTag::Custom => "custom",
        }
    }

    /// Field degree the family lives on for a given `m`.
    pub fn field_degree(self, m: u32) -> Option<u32> {
        match self {
            FamilyTag::Fam3i | FamilyTag::Fam3ii => Some(6 * m),
            FamilyTag::Custom => None,
            _ => Some(4 * m),
        }
    }

    /// Names of the scalar parameters, in `--param` order.
    pub fn param_names(self) -> &'static [&'static str] {
        match self {
            FamilyTag::Fam1 => &["lambda"],
            FamilyTag::Fam2 | FamilyTag::Fam3i | FamilyTag::Fam3ii => &["alpha"],
            FamilyTag::Fam4 => &["alpha", "beta"],
            FamilyTag::Fam5 => &["c", "d", "lambda"],
            FamilyTag::Custom => &[],
        }
    }
}

impl fmt::Display for FamilyTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for FamilyTag {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "fam1" => FamilyTag::Fam1,
            "fam2" => FamilyTag::Fam2,
            "fam3i" => FamilyTag::Fam3i,
            "fam3ii" => FamilyTag::Fam3ii,
            "fam4" => FamilyTag::Fam4,
            "fam5" => FamilyTag::Fam5,
            "custom" => FamilyTag::Custom,
            other => return Err(Error::Parse(format!("unknown family {other:?}"))),
        })
    }
}

/// Defining scalars of a triple.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FamilyParams {
    Fam1 {
        m: u32,
        lambda: FieldElement,
    },
    Fam2 {
        m: u32,
        alpha: FieldElement,
    },
    /// Variant (i) when `variant_ii` is false.
    Fam3 {
        m: u32,
        variant_ii: bool,
        alpha: FieldElement,
    },
    Fam4 {
        m: u32,
        alpha: FieldElement,
        beta: FieldElement,
    },
    Fam5 {
        m: u32,
        c: FieldElement,
        d: FieldElement,
        lambda: FieldElement,
    },
    Custom,
}

impl FamilyParams {
    pub fn tag(&self) -> FamilyTag {
        match self {
            FamilyParams::Fam1 { .. } => FamilyTag::Fam1,
            FamilyParams::Fam2 { .. } => FamilyTag::Fam2,
            FamilyParams::Fam3 {
                variant_ii: false, ..
            } => FamilyTag::Fam3i,
            FamilyParams::Fam3 {
                variant_ii: true, ..
            } => FamilyTag::Fam3ii,
            FamilyParams::Fam4 { .. } => FamilyTag::Fam4,
            FamilyParams::Fam5 { .. } => FamilyTag::Fam5,
            FamilyParams::Custom => FamilyTag::Custom,
        }
    }

    pub fn m(&self) -> Option<u32> {
        match *self {
            FamilyParams::Fam1 { m, .. }
            | FamilyParams::Fam2 { m, .. }
            | FamilyParams::Fam3 { m, .. }
            | FamilyParams::Fam4 { m, .. }
            | FamilyParams::Fam5 { m, .. } => Some(m),
            FamilyParams::Custom => None,
        }
    }

    /// Scalars in `param_names` order.
    pub fn values(&self) -> Vec<FieldElement> {
        match *self {
            FamilyParams::Fam1 { lambda, .. } => vec![lambda],
            FamilyParams::Fam2 { alpha, .. } | FamilyParams::Fam3 { alpha, .. } => vec![alpha],
            FamilyParams::Fam4 { alpha, beta, .. } => vec![alpha, beta],
            FamilyParams::Fam5 { c, d, lambda, .. } => vec![c, d, lambda],
            FamilyParams::Custom => vec![],
        }
    }

    /// Assembles parameters from a tag and scalars in `param_names` order.
    pub fn from_values(tag: FamilyTag, m: u32, values: &[FieldElement]) -> Result<Self> {
        let names = tag.param_names();
        if values.len() != names.len() {
            return Err(Error::Parse(format!(
                "{tag} takes {} parameter(s) ({}), got {}",
                names.len(),
                names.join(", "),
                values.len()
            )));
        }
        Ok(match tag {
            FamilyTag::Fam1 => FamilyParams::Fam1 {
                m,
                lambda: values[0],
            },
            FamilyTag::Fam2 => FamilyParams::Fam2 {
                m,
                alpha: values[0],
            },
            FamilyTag::Fam3i | FamilyTag::Fam3ii => FamilyParams::Fam3 {
                m,
                variant_ii: tag == FamilyTag::Fam3ii,
                alpha: values[0],
            },
            FamilyTag::Fam4 => FamilyParams::Fam4 {
                m,
                alpha: values[0],
                beta: values[1],
            },
            FamilyTag::Fam5 => FamilyParams::Fam5 {
                m,
                c: values[0],
                d: values[1],
                lambda: values[2],
            },
            FamilyTag::Custom => FamilyParams::Custom,
        })
    }

    /// Builds the triple these parameters describe, validating them.
    pub fn build(&self, ctx: &FieldCtx) -> Result<PermutationTriple> {
        match *self {
            FamilyParams::Fam1 { m, lambda } => family1(ctx, m, lambda),
            FamilyParams::Fam2 { m, alpha } => family2(ctx, m, alpha),
            FamilyParams::Fam3 {
                m,
                variant_ii,
                alpha,
            } => family3(ctx, m, variant_ii, alpha),
            FamilyParams::Fam4 { m, alpha, beta } => family4(ctx, m, alpha, beta),
            FamilyParams::Fam5 { m, c, d, lambda } => family5(ctx, m, c, d, lambda),
            FamilyParams::Custom => Err(Error::Parse("custom triples carry no parameters".into())),
        }
    }
}

/// Three linearized polynomials over one field plus their provenance.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PermutationTriple {
    ctx: FieldCtx,
    phi: [LinearizedPoly; 3],
    params: FamilyParams,
}

impl PermutationTriple {
    pub fn custom(phi1: LinearizedPoly, phi2: LinearizedPoly, phi3: LinearizedPoly) -> Result<Self> {
        let ctx = *phi1.ctx();
        for p in [&phi2, &phi3] {
            if *p.ctx() != ctx {
                return Err(Error::ContextMismatch {
                    left: ctx.modulus(),
                    right: p.ctx().modulus(),
                });
            }
        }
        Ok(PermutationTriple {
            ctx,
            phi: [phi1, phi2, phi3],
            params: FamilyParams::Custom,
        })
    }

    fn tagged(ctx: &FieldCtx, phi: [LinearizedPoly; 3], params: FamilyParams) -> Self {
        PermutationTriple {
            ctx: *ctx,
            phi,
            params,
        }
    }

    pub fn ctx(&self) -> &FieldCtx {
        &self.ctx
    }

    pub fn phis(&self) -> &[LinearizedPoly; 3] {
        &self.phi
    }

    pub fn phi1(&self) -> &LinearizedPoly {
        &self.phi[0]
    }

    pub fn phi2(&self) -> &LinearizedPoly {
        &self.phi[1]
    }

    pub fn phi3(&self) -> &LinearizedPoly {
        &self.phi[2]
    }

    pub fn params(&self) -> &FamilyParams {
        &self.params
    }

    pub fn family_tag(&self) -> FamilyTag {
        self.params.tag()
    }

    /// `phi1 + phi2 + phi3`.
    pub fn sum(&self) -> LinearizedPoly {
        &(&self.phi[0] + &self.phi[1]) + &self.phi[2]
    }

    /// Same polynomials sorted by coefficient vector, tagged custom.
    pub fn canonical(&self) -> PermutationTriple {
        let mut phi = self.phi.clone();
        phi.sort_by_key(|p| p.sort_key());
        PermutationTriple {
            ctx: self.ctx,
            phi,
            params: FamilyParams::Custom,
        }
    }

    /// Copy with one polynomial replaced; the result is a custom triple.
    pub fn with_phi(&self, index: usize, poly: LinearizedPoly) -> Result<PermutationTriple> {
        let mut phi = self.phi.clone();
        phi[index] = poly;
        let [a, b, c] = phi;
        PermutationTriple::custom(a, b, c)
    }

    pub fn to_json(&self) -> TripleJson {
        let names = self.family_tag().param_names();
        TripleJson {
            field: self.ctx.spec_string(),
            family: self.family_tag().as_str().to_string(),
            m: self.params.m(),
            params: names
                .iter()
                .zip(self.params.values())
                .map(|(name, v)| (name.to_string(), self.ctx.format_elem(v)))
                .collect(),
            phi1: self.phi[0].to_json(),
            phi2: self.phi[1].to_json(),
            phi3: self.phi[2].to_json(),
        }
    }

    /// Reads a triple back. Tagged triples are rebuilt from their
    /// parameters and must match the stored polynomials.
    pub fn from_json(json: &TripleJson) -> Result<Self> {
        let ctx: FieldCtx = json.field.parse()?;
        let phi = [
            LinearizedPoly::from_json(&ctx, &json.phi1)?,
            LinearizedPoly::from_json(&ctx, &json.phi2)?,
            LinearizedPoly::from_json(&ctx, &json.phi3)?,
        ];
        let tag: FamilyTag = json.family.parse()?;
        if tag == FamilyTag::Custom {
            let [a, b, c] = phi;
            return PermutationTriple::custom(a, b, c);
        }
        let m = json
            .m
            .ok_or_else(|| Error::Parse(format!("{tag} triple lacks m")))?;
        let values = tag
            .param_names()
            .iter()
            .map(|name| {
                let hex = json
                    .params
                    .get(*name)
                    .ok_or_else(|| Error::Parse(format!("{tag} triple lacks parameter {name}")))?;
                ctx.parse_elem(hex)
            })
            .collect::<Result<Vec<_>>>()?;
        let rebuilt = FamilyParams::from_values(tag, m, &values)?.build(&ctx)?;
        if rebuilt.phi != phi {
            return Err(Error::Parse(format!(
                "stored polynomials do not match the {tag} parameters"
            )));
        }
        Ok(rebuilt)
    }
}

/// Serialized triple.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TripleJson {
    pub field: String,
    pub family: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub m: Option<u32>,
    #[serde(default)]
    pub params: BTreeMap<String, String>,
    pub phi1: PolyJson,
    pub phi2: PolyJson,
    pub phi3: PolyJson,
}

fn require_degree(ctx: &FieldCtx, tag: FamilyTag, m: u32) -> Result<()> {
    let expected = tag.field_degree(m).unwrap_or(0);
    if m == 0 || ctx.degree() != expected {
        return Err(Error::DegreeShape {
            degree: ctx.degree(),
            shape: format!(
                "{tag} with m = {m} needs n = {}",
                if matches!(tag, FamilyTag::Fam3i | FamilyTag::Fam3ii) {
                    "6m"
                } else {
                    "4m"
                }
            ),
        });
    }
    Ok(())
}

fn violated(family: FamilyTag, condition: String) -> Error {
    Error::ConditionViolated {
        family: family.as_str(),
        condition,
    }
}

fn require_subfield(
    ctx: &FieldCtx,
    family: FamilyTag,
    name: &str,
    value: FieldElement,
    d: u32,
) -> Result<()> {
    if !ctx.in_subfield(value, d)? {
        return Err(violated(
            family,
            format!("{name} = {} must lie in GF(2^{d})", ctx.format_elem(value)),
        ));
    }
    Ok(())
}

fn terms(ctx: &FieldCtx, terms: &[(u32, FieldElement)]) -> LinearizedPoly {
    LinearizedPoly::from_terms(ctx, terms).expect("coefficients checked against ctx")
}

/// Monomial triple `(x^(2^2m), lambda x^(2^m), lambda x^(2^3m))` over
/// GF(2^(4m)), requiring `lambda^(2^m+1) = 1`.
pub fn family1(ctx: &FieldCtx, m: u32, lambda: FieldElement) -> Result<PermutationTriple> {
    require_degree(ctx, FamilyTag::Fam1, m)?;
    let lambda = ctx.check(lambda)?;
    if !lambda.pow((1u64 << m) + 1).is_one() {
        return Err(violated(
            FamilyTag::Fam1,
            format!("lambda^(2^m+1) = 1 fails for lambda = {}", ctx.format_elem(lambda)),
        ));
    }
    let phi = [
        LinearizedPoly::monomial(ctx, ctx.one(), 2 * m),
        LinearizedPoly::monomial(ctx, lambda, m),
        LinearizedPoly::monomial(ctx, lambda, 3 * m),
    ];
    Ok(PermutationTriple::tagged(
        ctx,
        phi,
        FamilyParams::Fam1 { m, lambda },
    ))
}

/// `(x^(2^2m), a x^(2^m) + (a+1) x^(2^3m), (a+1) x^(2^m) + a x^(2^3m))`
/// over GF(2^(4m)) with `a` in GF(2^m).
pub fn family2(ctx: &FieldCtx, m: u32, alpha: FieldElement) -> Result<PermutationTriple> {
    require_degree(ctx, FamilyTag::Fam2, m)?;
    require_subfield(ctx, FamilyTag::Fam2, "alpha", alpha, m)?;
    let alpha1 = alpha + ctx.one();
    let phi = [
        LinearizedPoly::monomial(ctx, ctx.one(), 2 * m),
        terms(ctx, &[(m, alpha), (3 * m, alpha1)]),
        terms(ctx, &[(m, alpha1), (3 * m, alpha)]),
    ];
    Ok(PermutationTriple::tagged(
        ctx,
        phi,
        FamilyParams::Fam2 { m, alpha },
    ))
}

/// Monomial and trinomials over GF(2^(6m)):
/// `(x^(2^m), a x^(2^m) + b x^(2^3m) + (a+1) x^(2^5m), (a+1) x^(2^m) + b x^(2^3m) + a x^(2^5m))`
/// with `a` in GF(2^(2m)) and either
/// (i) `b = a`, `a^(2^m) + a^(2^m - 1) + 1 = 0`, or
/// (ii) `b = a + 1`, `a^(2^m+1) = 1`, `a != 1`.
pub fn family3(
    ctx: &FieldCtx,
    m: u32,
    variant_ii: bool,
    alpha: FieldElement,
) -> Result<PermutationTriple> {
    let tag = if variant_ii {
        FamilyTag::Fam3ii
    } else {
        FamilyTag::Fam3i
    };
    require_degree(ctx, tag, m)?;
    require_subfield(ctx, tag, "alpha", alpha, 2 * m)?;
    let one = ctx.one();
    let q = 1u64 << m;
    let beta = if variant_ii {
        if !alpha.pow(q + 1).is_one() || alpha.is_one() {
            return Err(violated(
                tag,
                format!(
                    "alpha^(2^m+1) = 1 with alpha != 1 fails for alpha = {}",
                    ctx.format_elem(alpha)
                ),
            ));
        }
        alpha + one
    } else {
        if alpha.is_zero() || !(alpha.pow(q) + alpha.pow(q - 1) + one).is_zero() {
            return Err(violated(
                tag,
                format!(
                    "alpha^(2^m) + alpha^(2^m-1) + 1 = 0 fails for alpha = {}",
                    ctx.format_elem(alpha)
                ),
            ));
        }
        alpha
    };
    let alpha1 = alpha + one;
    let phi = [
        LinearizedPoly::monomial(ctx, one, m),
        terms(ctx, &[(m, alpha), (3 * m, beta), (5 * m, alpha1)]),
        terms(ctx, &[(m, alpha1), (3 * m, beta), (5 * m, alpha)]),
    ];
    Ok(PermutationTriple::tagged(
        ctx,
        phi,
        FamilyParams::Fam3 {
            m,
            variant_ii,
            alpha,
        },
    ))
}

/// Binomial and its second and third compositional powers over GF(2^(4m)):
/// `(a x + b x^(2^m), a^2 x + b^(2^m+1) x^(2^2m),
///   a^3 x + a^2 b x^(2^m) + a b^(2^m+1) x^(2^2m) + b^(2^m+2) x^(2^3m))`
/// with `a` in GF(2^m), `b` in GF(2^(2m)) and `b^(2^m+1) = a^2 + 1`.
///
/// `(a, b) = (1, 0)` meets that condition but turns all three maps into the
/// identity, so it is rejected.
pub fn family4(
    ctx: &FieldCtx,
    m: u32,
    alpha: FieldElement,
    beta: FieldElement,
) -> Result<PermutationTriple> {
    require_degree(ctx, FamilyTag::Fam4, m)?;
    require_subfield(ctx, FamilyTag::Fam4, "alpha", alpha, m)?;
    require_subfield(ctx, FamilyTag::Fam4, "beta", beta, 2 * m)?;
    let q = 1u64 << m;
    let norm = beta.pow(q + 1);
    if norm != alpha * alpha + ctx.one() {
        return Err(violated(
            FamilyTag::Fam4,
            format!(
                "beta^(2^m+1) = alpha^2 + 1 fails for (alpha, beta) = ({}, {})",
                ctx.format_elem(alpha),
                ctx.format_elem(beta)
            ),
        ));
    }
    if alpha.is_one() && beta.is_zero() {
        return Err(Error::Degenerate {
            family: FamilyTag::Fam4.as_str(),
            reason: "(alpha, beta) = (1, 0) collapses every map to x, so E^U is the whole field"
                .into(),
        });
    }
    let a2 = alpha * alpha;
    let phi = [
        terms(ctx, &[(0, alpha), (m, beta)]),
        terms(ctx, &[(0, a2), (2 * m, norm)]),
        terms(
            ctx,
            &[
                (0, a2 * alpha),
                (m, a2 * beta),
                (2 * m, alpha * norm),
                (3 * m, beta.pow(q + 2)),
            ],
        ),
    ];
    Ok(PermutationTriple::tagged(
        ctx,
        phi,
        FamilyParams::Fam4 { m, alpha, beta },
    ))
}

/// `(l x^(2^m), l x^(2^3m), C x + D x^(2^m) + (C+1) x^(2^2m) + D x^(2^3m))`
/// over GF(2^(4m)) with `C` in GF(2^m), `D` in GF(2^(2m)) and
/// `l^(2^m+1) = 1`.
pub fn family5(
    ctx: &FieldCtx,
    m: u32,
    c: FieldElement,
    d: FieldElement,
    lambda: FieldElement,
) -> Result<PermutationTriple> {
    require_degree(ctx, FamilyTag::Fam5, m)?;
    require_subfield(ctx, FamilyTag::Fam5, "C", c, m)?;
    require_subfield(ctx, FamilyTag::Fam5, "D", d, 2 * m)?;
    let lambda = ctx.check(lambda)?;
    if !lambda.pow((1u64 << m) + 1).is_one() {
        return Err(violated(
            FamilyTag::Fam5,
            format!("lambda^(2^m+1) = 1 fails for lambda = {}", ctx.format_elem(lambda)),
        ));
    }
    let phi = [
        LinearizedPoly::monomial(ctx, lambda, m),
        LinearizedPoly::monomial(ctx, lambda, 3 * m),
        involution_quadrinomial(ctx, c, d, m)?,
    ];
    Ok(PermutationTriple::tagged(
        ctx,
        phi,
        FamilyParams::Fam5 { m, c, d, lambda },
    ))
}
