//! Brute-force reference implementations used as ground truth.
//!
//! Nothing here calls the fast paths it checks: evaluation, trace,
//! composition and the transform are recomputed from their definitions on
//! top of plain field multiplication.

use crate::bentlab::{BooleanFunction, WalshSpectrum};
use crate::constructions::{AnReport, EUnionReport, PermutationTriple};
use crate::error::{Error, Result};
use crate::field::{FieldCtx, FieldElement};
use crate::linpoly::LinearizedPoly;

/// Largest field degree for table-based oracles.
pub const MAX_ORACLE_DEGREE: u32 = 12;
/// Largest number of variables for the quadratic-time spectrum.
pub const MAX_NAIVE_WALSH_VARS: u32 = 16;

fn limit(ctx: &FieldCtx, max: u32) -> Result<()> {
    if ctx.degree() > max {
        return Err(Error::ResourceLimit(format!(
            "oracle limited to degree {max}, got {}",
            ctx.degree()
        )));
    }
    Ok(())
}

/// `sum_k a^(2^k)` by repeated squaring.
fn trace_by_definition(a: FieldElement) -> u8 {
    let mut acc = a;
    let mut power = a;
    for _ in 1..a.degree() {
        power = power * power;
        acc = acc + power;
    }
    acc.value() as u8
}

fn trace_table(ctx: &FieldCtx) -> Vec<u8> {
    ctx.elements().map(trace_by_definition).collect()
}

/// Values of `L` at every element, evaluated term by term.
pub fn eval_table(l: &LinearizedPoly) -> Vec<u32> {
    let ctx = l.ctx();
    ctx.elements()
        .map(|x| {
            let mut acc = ctx.zero();
            for (i, &c) in l.coeffs().iter().enumerate() {
                let mut power = x;
                for _ in 0..i {
                    power = power * power;
                }
                acc = acc + c * power;
            }
            acc.value()
        })
        .collect()
}

fn invert_table(table: &[u32]) -> Option<Vec<u32>> {
    let mut inverse = vec![u32::MAX; table.len()];
    for (x, &y) in table.iter().enumerate() {
        if inverse[y as usize] != u32::MAX {
            return None;
        }
        inverse[y as usize] = x as u32;
    }
    Some(inverse)
}

/// Bijectivity via an occupancy bitmap of all values.
pub fn is_bijective(l: &LinearizedPoly) -> Result<bool> {
    limit(l.ctx(), MAX_ORACLE_DEGREE)?;
    Ok(invert_table(&eval_table(l)).is_some())
}

/// Full inverse lookup table, `inverse[L(x)] = x`.
pub fn exhaustive_inverse(l: &LinearizedPoly) -> Result<Vec<u32>> {
    limit(l.ctx(), MAX_ORACLE_DEGREE)?;
    invert_table(&eval_table(l)).ok_or(Error::NotPermutation)
}

/// `L(L(x)) = x` for every `x`.
pub fn involution_scan(l: &LinearizedPoly) -> Result<bool> {
    limit(l.ctx(), MAX_ORACLE_DEGREE)?;
    let table = eval_table(l);
    Ok(table
        .iter()
        .enumerate()
        .all(|(x, &y)| table[y as usize] == x as u32))
}

/// Property (A_n) checked point by point with lookup tables.
pub fn pointwise_an_check(t: &PermutationTriple) -> Result<AnReport> {
    limit(t.ctx(), MAX_ORACLE_DEGREE)?;
    let tables: Vec<Vec<u32>> = t.phis().iter().map(eval_table).collect();
    let inverses: Vec<Option<Vec<u32>>> = tables.iter().map(|tb| invert_table(tb)).collect();
    let psi: Vec<u32> = (0..t.ctx().order())
        .map(|x| tables[0][x] ^ tables[1][x] ^ tables[2][x])
        .collect();
    let psi_inverse = invert_table(&psi);
    let inverse_sum_identity = match (&psi_inverse, &inverses[0], &inverses[1], &inverses[2]) {
        (Some(pi), Some(a), Some(b), Some(c)) => {
            (0..pi.len()).all(|x| pi[x] == a[x] ^ b[x] ^ c[x])
        }
        _ => false,
    };
    Ok(AnReport::new(
        [
            inverses[0].is_some(),
            inverses[1].is_some(),
            inverses[2].is_some(),
        ],
        psi_inverse.is_some(),
        inverse_sum_identity,
    ))
}

/// Agreement sets by direct comparison of value tables.
pub fn pointwise_e_union(t: &PermutationTriple) -> Result<EUnionReport> {
    limit(t.ctx(), MAX_ORACLE_DEGREE)?;
    let tables: Vec<Vec<u32>> = t.phis().iter().map(eval_table).collect();
    let mut sizes = [0u64; 3];
    let mut union = 0u64;
    for x in 0..t.ctx().order() {
        let eq = [
            tables[0][x] == tables[1][x],
            tables[0][x] == tables[2][x],
            tables[1][x] == tables[2][x],
        ];
        for (s, e) in sizes.iter_mut().zip(eq) {
            *s += e as u64;
        }
        union += eq.iter().any(|&e| e) as u64;
    }
    let total = t.ctx().order() as u64;
    Ok(EUnionReport {
        e12: sizes[0],
        e13: sizes[1],
        e23: sizes[2],
        union,
        covers_field: union == total,
        mm_sufficient: union == total,
    })
}

fn product_table(ctx: &FieldCtx) -> Vec<Vec<u32>> {
    ctx.elements()
        .map(|a| ctx.elements().map(|x| (a * x).value()).collect())
        .collect()
}

fn check_naive_size(f: &BooleanFunction) -> Result<()> {
    let vars = 2 * f.ctx().degree();
    if vars > MAX_NAIVE_WALSH_VARS {
        return Err(Error::ResourceLimit(format!(
            "naive spectrum limited to {MAX_NAIVE_WALSH_VARS} variables, got {vars}"
        )));
    }
    Ok(())
}

/// `W(a, b) = sum_{x,y} (-1)^(f(x,y) + Tr(a x + b y))`, literally.
pub fn naive_walsh(f: &BooleanFunction) -> Result<WalshSpectrum> {
    check_naive_size(f)?;
    let ctx = f.ctx();
    let n = ctx.degree();
    let size = ctx.order();
    let tr = trace_table(ctx);
    let mul = product_table(ctx);
    let mut values = vec![0i32; size * size];
    for a in 0..size {
        for b in 0..size {
            let mut sum = 0i32;
            for x in 0..size {
                let ax = mul[a][x];
                for y in 0..size {
                    let bit = f.get_index((x << n) | y) as u8 ^ tr[(ax ^ mul[b][y]) as usize];
                    sum += 1 - 2 * bit as i32;
                }
            }
            values[(a << n) | b] = sum;
        }
    }
    Ok(WalshSpectrum::from_values(n, values))
}

/// The same character sums as [`naive_walsh`], separated:
/// `S(x, b) = sum_y (-1)^(f(x,y) + Tr(b y))`, then
/// `W(a, b) = sum_x (-1)^Tr(a x) S(x, b)`. Cubic rather than quartic in
/// `2^n`, so it reaches 2n = 16 in well under a second.
pub fn separable_walsh(f: &BooleanFunction) -> Result<WalshSpectrum> {
    check_naive_size(f)?;
    let ctx = f.ctx();
    let n = ctx.degree();
    let size = ctx.order();
    let tr = trace_table(ctx);
    let mul = product_table(ctx);
    let mut partial = vec![0i32; size * size];
    for x in 0..size {
        for b in 0..size {
            let mut sum = 0i32;
            for y in 0..size {
                let bit = f.get_index((x << n) | y) as u8 ^ tr[mul[b][y] as usize];
                sum += 1 - 2 * bit as i32;
            }
            partial[x * size + b] = sum;
        }
    }
    let mut values = vec![0i32; size * size];
    for a in 0..size {
        for x in 0..size {
            let sign = 1 - 2 * tr[mul[a][x] as usize] as i32;
            let row = &partial[x * size..(x + 1) * size];
            for (b, &v) in row.iter().enumerate() {
                values[(a << n) | b] += sign * v;
            }
        }
    }
    Ok(WalshSpectrum::from_values(n, values))
}

/// Minimum Hamming distance from `f` to every affine function
/// `Tr(a x + b y) + c`, by direct comparison.
pub fn affine_distance_nonlinearity(f: &BooleanFunction) -> Result<u64> {
    check_naive_size(f)?;
    let ctx = f.ctx();
    let n = ctx.degree();
    let size = ctx.order();
    let tr = trace_table(ctx);
    let mul = product_table(ctx);
    let total = (size * size) as u64;
    let mut best = total;
    for a in 0..size {
        for b in 0..size {
            let mut distance = 0u64;
            for x in 0..size {
                for y in 0..size {
                    let linear = tr[(mul[a][x] ^ mul[b][y]) as usize] == 1;
                    distance += (f.get_index((x << n) | y) != linear) as u64;
                }
            }
            best = best.min(distance).min(total - distance);
        }
    }
    Ok(best)
}
