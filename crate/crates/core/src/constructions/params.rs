use super::{FamilyParams, FamilyTag};
use crate::error::{Error, Result};
use crate::field::FieldCtx;

/// Largest field degree for which parameters are enumerated exhaustively.
pub const MAX_ENUMERATION_DEGREE: u32 = 16;

/// Every valid parameter tuple of a family over `ctx`, in increasing
/// integer order of the scalars. An empty list is a valid outcome.
///
/// Family 4 omits the degenerate pair `(1, 0)`, which its constructor
/// rejects.
pub fn enumerate_params(ctx: &FieldCtx, tag: FamilyTag, m: u32) -> Result<Vec<FamilyParams>> {
    if tag == FamilyTag::Custom {
        return Err(Error::Parse("custom triples have no parameter space".into()));
    }
    super::require_degree(ctx, tag, m)?;
    if ctx.degree() > MAX_ENUMERATION_DEGREE {
        return Err(Error::ResourceLimit(format!(
            "parameter enumeration is limited to degree {MAX_ENUMERATION_DEGREE}, got {}",
            ctx.degree()
        )));
    }
    let q = 1u64 << m;
    let unit_norm = |ctx: &FieldCtx| -> Vec<_> {
        ctx.elements().filter(|l| l.pow(q + 1).is_one()).collect()
    };
    let one = ctx.one();
    let params = match tag {
        FamilyTag::Fam1 => unit_norm(ctx)
            .into_iter()
            .map(|lambda| FamilyParams::Fam1 { m, lambda })
            .collect(),
        FamilyTag::Fam2 => ctx
            .subfield_elements(m)?
            .into_iter()
            .map(|alpha| FamilyParams::Fam2 { m, alpha })
            .collect(),
        FamilyTag::Fam3i => ctx
            .subfield_elements(2 * m)?
            .into_iter()
            .filter(|&a| !a.is_zero() && (a.pow(q) + a.pow(q - 1) + one).is_zero())
            .map(|alpha| FamilyParams::Fam3 {
                m,
                variant_ii: false,
                alpha,
            })
            .collect(),
        FamilyTag::Fam3ii => ctx
            .subfield_elements(2 * m)?
            .into_iter()
            .filter(|&a| a.pow(q + 1).is_one() && !a.is_one())
            .map(|alpha| FamilyParams::Fam3 {
                m,
                variant_ii: true,
                alpha,
            })
            .collect(),
        FamilyTag::Fam4 => {
            let betas = ctx.subfield_elements(2 * m)?;
            let mut out = Vec::new();
            for alpha in ctx.subfield_elements(m)? {
                let target = alpha * alpha + one;
                for &beta in &betas {
                    if beta.pow(q + 1) == target && !(alpha.is_one() && beta.is_zero()) {
                        out.push(FamilyParams::Fam4 { m, alpha, beta });
                    }
                }
            }
            out
        }
        FamilyTag::Fam5 => {
            let ds = ctx.subfield_elements(2 * m)?;
            let lambdas = unit_norm(ctx);
            let mut out = Vec::new();
            for c in ctx.subfield_elements(m)? {
                for &d in &ds {
                    for &lambda in &lambdas {
                        out.push(FamilyParams::Fam5 { m, c, d, lambda });
                    }
                }
            }
            out
        }
        FamilyTag::Custom => unreachable!(),
    };
    Ok(params)
}
