use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::verify::{e_union, verify_an, EUnionReport};
use super::PermutationTriple;
use crate::error::{Error, Result};
use crate::field::FieldCtx;
use crate::linpoly::LinearizedPoly;

/// Largest field degree accepted by the search.
pub const MAX_SEARCH_DEGREE: u32 = 8;

/// Coefficient shape of the candidate polynomials.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SearchShape {
    /// `c x^(2^k)` with `c != 0`.
    Monomials,
    /// Permutation binomials `a x^(2^i) + b x^(2^j)`, `i < j`, `a, b != 0`.
    Binomials,
    /// `(x^(2^2m), l x^(2^m), l x^(2^3m))` over GF(2^(4m)) with `l != 0`:
    /// the monomial family's pattern with its shared coefficient free.
    Fam1Pattern,
    /// `(x^(2^2m), l x^(2^m), u x^(2^3m))` with independent `l, u != 0`.
    Fam1Free,
    /// Arbitrary linearized permutations.
    Linear,
}

impl SearchShape {
    pub fn as_str(self) -> &'static str {
        match self {
            SearchShape::Monomials => "monomials",
            SearchShape::Binomials => "binomials",
            SearchShape::Fam1Pattern => "fam1",
            SearchShape::Fam1Free => "fam1-free",
            SearchShape::Linear => "linear",
        }
    }
}

impl fmt::Display for SearchShape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for SearchShape {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "monomials" => SearchShape::Monomials,
            "binomials" => SearchShape::Binomials,
            "fam1" => SearchShape::Fam1Pattern,
            "fam1-free" => SearchShape::Fam1Free,
            "linear" => SearchShape::Linear,
            other => return Err(Error::Parse(format!("unknown search shape {other:?}"))),
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SearchStatus {
    /// The whole candidate space was examined.
    Complete,
    /// The budget ran out before the space was covered.
    BudgetExhausted,
}

#[derive(Clone, Debug)]
pub struct SearchOutcome {
    /// Canonical (A_n) triples, sorted by coefficient vectors.
    pub found: Vec<(PermutationTriple, EUnionReport)>,
    pub examined: u64,
    pub status: SearchStatus,
}

fn key(t: &PermutationTriple) -> Vec<u32> {
    t.phis().iter().flat_map(|p| p.sort_key()).collect()
}

fn members(ctx: &FieldCtx, shape: SearchShape) -> Option<Vec<LinearizedPoly>> {
    let n = ctx.degree();
    let nonzero = || ctx.elements().skip(1);
    let mut out: Vec<LinearizedPoly> = match shape {
        SearchShape::Monomials => (0..n)
            .flat_map(|k| nonzero().map(move |c| LinearizedPoly::monomial(ctx, c, k)))
            .collect(),
        SearchShape::Binomials => {
            let mut v = Vec::new();
            for i in 0..n {
                for j in i + 1..n {
                    for a in nonzero() {
                        for b in nonzero() {
                            let p = LinearizedPoly::from_terms(ctx, &[(i, a), (j, b)])
                                .expect("same field");
                            if p.is_permutation() {
                                v.push(p);
                            }
                        }
                    }
                }
            }
            v
        }
        SearchShape::Linear if n <= 3 => {
            let total = 1u64 << (n * n);
            (0..total)
                .map(|code| {
                    let coeffs = (0..n)
                        .map(|i| ctx.wrap(((code >> (i * n)) as u32) & ((1 << n) - 1)))
                        .collect();
                    LinearizedPoly::from_coeffs(ctx, coeffs).expect("n coefficients")
                })
                .filter(|p| p.is_permutation())
                .collect()
        }
        SearchShape::Linear | SearchShape::Fam1Pattern | SearchShape::Fam1Free => return None,
    };
    out.sort_by_key(|p| p.sort_key());
    Some(out)
}

fn random_permutation(ctx: &FieldCtx, rng: &mut ChaCha8Rng) -> LinearizedPoly {
    loop {
        let coeffs = (0..ctx.degree())
            .map(|_| ctx.wrap(rng.gen_range(0..ctx.order() as u32)))
            .collect();
        let p = LinearizedPoly::from_coeffs(ctx, coeffs).expect("n coefficients");
        if p.is_permutation() {
            return p;
        }
    }
}

/// Looks for triples of linearized permutations with property (A_n).
///
/// When the candidate space (unordered triples, repetition allowed) fits in
/// `budget`, it is enumerated completely; otherwise `budget` random
/// candidates drawn from a generator seeded with `seed` are examined.
/// Found triples are canonicalized and annotated with their agreement sets.
pub fn search_custom_triples(
    ctx: &FieldCtx,
    shape: SearchShape,
    budget: u64,
    seed: u64,
) -> Result<SearchOutcome> {
    let n = ctx.degree();
    if n > MAX_SEARCH_DEGREE {
        return Err(Error::ResourceLimit(format!(
            "search is limited to degree {MAX_SEARCH_DEGREE}, got {n}"
        )));
    }
    let fam1_m = if matches!(shape, SearchShape::Fam1Pattern | SearchShape::Fam1Free) {
        if n % 4 != 0 {
            return Err(Error::DegreeShape {
                degree: n,
                shape: "fam1 pattern needs n = 4m".into(),
            });
        }
        Some(n / 4)
    } else {
        None
    };

    let mut found: BTreeMap<Vec<u32>, PermutationTriple> = BTreeMap::new();
    let mut examined = 0u64;
    let mut consider = |t: PermutationTriple, found: &mut BTreeMap<Vec<u32>, PermutationTriple>| {
        examined += 1;
        if verify_an(&t).satisfied {
            let c = t.canonical();
            found.entry(key(&c)).or_insert(c);
        }
    };
    let mut rng = ChaCha8Rng::seed_from_u64(seed);

    let status = if let Some(m) = fam1_m {
        let shared = shape == SearchShape::Fam1Pattern;
        let nonzero = ctx.order() as u32 - 1;
        let space = if shared {
            nonzero as u64
        } else {
            nonzero as u64 * nonzero as u64
        };
        let build = |l: u32, u: u32| {
            PermutationTriple::custom(
                LinearizedPoly::monomial(ctx, ctx.one(), 2 * m),
                LinearizedPoly::monomial(ctx, ctx.wrap(l), m),
                LinearizedPoly::monomial(ctx, ctx.wrap(u), 3 * m),
            )
            .expect("same field")
        };
        if space <= budget {
            for l in 1..=nonzero {
                if shared {
                    consider(build(l, l), &mut found);
                } else {
                    for u in 1..=nonzero {
                        consider(build(l, u), &mut found);
                    }
                }
            }
            SearchStatus::Complete
        } else {
            for _ in 0..budget {
                let l = rng.gen_range(1..=nonzero);
                let u = if shared { l } else { rng.gen_range(1..=nonzero) };
                consider(build(l, u), &mut found);
            }
            SearchStatus::BudgetExhausted
        }
    } else {
        let pool = members(ctx, shape);
        let space = pool.as_ref().map(|p| {
            let k = p.len() as u128;
            (k + 2) * (k + 1) * k / 6
        });
        match (pool, space) {
            (Some(pool), Some(space)) if space <= budget as u128 => {
                for a in 0..pool.len() {
                    for b in a..pool.len() {
                        for c in b..pool.len() {
                            let t = PermutationTriple::custom(
                                pool[a].clone(),
                                pool[b].clone(),
                                pool[c].clone(),
                            )
                            .expect("same field");
                            consider(t, &mut found);
                        }
                    }
                }
                SearchStatus::Complete
            }
            (pool, _) => {
                for _ in 0..budget {
                    let mut draw = || match &pool {
                        Some(p) if !p.is_empty() => p[rng.gen_range(0..p.len())].clone(),
                        _ => random_permutation(ctx, &mut rng),
                    };
                    let (a, b, c) = (draw(), draw(), draw());
                    consider(PermutationTriple::custom(a, b, c).expect("same field"), &mut found);
                }
                SearchStatus::BudgetExhausted
            }
        }
    };

    let found = found
        .into_values()
        .map(|t| {
            let e = e_union(&t)?;
            Ok((t, e))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(SearchOutcome {
        found,
        examined,
        status,
    })
}
