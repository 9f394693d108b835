use serde::{Deserialize, Serialize};

use super::PermutationTriple;
use crate::error::{Error, Result};
use crate::linalg::BitMatrix;
use crate::linpoly::LinearizedPoly;

/// Outcome of checking property (A_n) on a triple.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AnReport {
    pub each_permutation: [bool; 3],
    pub sum_is_permutation: bool,
    pub inverse_sum_identity: bool,
    pub satisfied: bool,
}

impl AnReport {
    pub fn new(each_permutation: [bool; 3], sum_is_permutation: bool, inverse_sum_identity: bool) -> Self {
        AnReport {
            each_permutation,
            sum_is_permutation,
            inverse_sum_identity,
            satisfied: each_permutation.iter().all(|&b| b)
                && sum_is_permutation
                && inverse_sum_identity,
        }
    }
}

/// Checks (A_n): each member and the sum `psi` are permutations, and
/// `psi ∘ (phi1^-1 + phi2^-1 + phi3^-1)` is the identity polynomial.
pub fn verify_an(t: &PermutationTriple) -> AnReport {
    let inverses: Vec<Option<LinearizedPoly>> = t.phis().iter().map(|p| p.inverse().ok()).collect();
    let each_permutation = [
        inverses[0].is_some(),
        inverses[1].is_some(),
        inverses[2].is_some(),
    ];
    let psi = t.sum();
    let sum_is_permutation = psi.is_permutation();
    let inverse_sum_identity = match (&inverses[0], &inverses[1], &inverses[2]) {
        (Some(a), Some(b), Some(c)) if sum_is_permutation => {
            let inverse_sum = &(a + b) + c;
            psi.compose(&inverse_sum)
                .map(|p| p.is_identity())
                .unwrap_or(false)
        }
        _ => false,
    };
    AnReport::new(each_permutation, sum_is_permutation, inverse_sum_identity)
}

/// Sizes of the agreement sets `E_ij = {x : phi_i(x) = phi_j(x)}` and of
/// their union.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EUnionReport {
    pub e12: u64,
    pub e13: u64,
    pub e23: u64,
    pub union: u64,
    pub covers_field: bool,
    /// The union covering the field suffices for a Maiorana-McFarland
    /// function; this mirrors `covers_field`.
    pub mm_sufficient: bool,
}

impl EUnionReport {
    fn new(sizes: [u64; 3], union: u64, field_size: u64) -> Self {
        EUnionReport {
            e12: sizes[0],
            e13: sizes[1],
            e23: sizes[2],
            union,
            covers_field: union == field_size,
            mm_sufficient: union == field_size,
        }
    }

    pub fn sizes(&self) -> [u64; 3] {
        [self.e12, self.e13, self.e23]
    }
}

/// Fields up to this degree are scanned point by point; above it the sizes
/// come from kernel dimensions.
pub const EXHAUSTIVE_E_DEGREE: u32 = 16;

/// Agreement-set sizes for a triple over a field of degree at most 24.
pub fn e_union(t: &PermutationTriple) -> Result<EUnionReport> {
    if t.ctx().degree() <= EXHAUSTIVE_E_DEGREE {
        e_union_exhaustive(t)
    } else {
        Ok(e_union_by_rank(t))
    }
}

/// Counts agreements by evaluating all three maps on every field element.
pub fn e_union_exhaustive(t: &PermutationTriple) -> Result<EUnionReport> {
    let n = t.ctx().degree();
    if n > crate::field::MAX_DEGREE {
        return Err(Error::ResourceLimit(format!("agreement scan over degree {n}")));
    }
    let maps: Vec<BitMatrix> = t.phis().iter().map(|p| p.to_bit_matrix()).collect();
    // Gray-code walk: one XOR per map per element.
    let mut images = [0u64; 3];
    let mut counts = [0u64; 3];
    let mut union = 0u64;
    let mut tally = |img: &[u64; 3]| {
        let eq = [img[0] == img[1], img[0] == img[2], img[1] == img[2]];
        for (c, &e) in counts.iter_mut().zip(&eq) {
            *c += e as u64;
        }
        union += eq.iter().any(|&e| e) as u64;
    };
    tally(&images);
    for step in 1..(1u64 << n) {
        let bit = step.trailing_zeros() as usize;
        for (img, map) in images.iter_mut().zip(&maps) {
            *img ^= map.columns()[bit];
        }
        tally(&images);
    }
    Ok(EUnionReport::new(counts, union, 1u64 << n))
}

/// Agreement-set sizes from ranks: `|E_ij| = 2^dim ker(phi_i + phi_j)`, and
/// every pairwise intersection equals the common kernel `T` of
/// `phi1 + phi2` and `phi1 + phi3`, so `|E^U| = sum |E_ij| - 2|T|`.
pub fn e_union_by_rank(t: &PermutationTriple) -> EUnionReport {
    let n = t.ctx().degree();
    let [a, b, c] = t.phis();
    let d12 = (a + b).to_bit_matrix();
    let d13 = (a + c).to_bit_matrix();
    let d23 = (b + c).to_bit_matrix();
    let sizes = [
        1u64 << d12.kernel_dim(),
        1u64 << d13.kernel_dim(),
        1u64 << d23.kernel_dim(),
    ];
    let stacked = BitMatrix::from_columns(
        2 * n,
        d12.columns()
            .iter()
            .zip(d13.columns())
            .map(|(&x, &y)| x | (y << n))
            .collect(),
    );
    let common = 1u64 << stacked.kernel_dim();
    let union = sizes.iter().sum::<u64>() - 2 * common;
    EUnionReport::new(sizes, union, 1u64 << n)
}
