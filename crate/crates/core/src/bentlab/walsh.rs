//! Fast Walsh-Hadamard transform and the field-indexed spectrum.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::BooleanFunction;
use crate::error::{Error, Result};
use crate::field::FieldCtx;
use crate::linalg::BitMatrix;

/// Largest transform, in variables, that `walsh_spectrum` accepts.
pub const MAX_SPECTRUM_VARS: u32 = 24;

const BLOCK: usize = 1 << 12;

fn fwht_serial(data: &mut [i32]) {
    let len = data.len();
    let mut half = 1;
    while half < len {
        for chunk in data.chunks_exact_mut(2 * half) {
            let (lo, hi) = chunk.split_at_mut(half);
            butterfly(lo, hi);
        }
        half *= 2;
    }
}

#[inline]
fn butterfly(lo: &mut [i32], hi: &mut [i32]) {
    for (a, b) in lo.iter_mut().zip(hi.iter_mut()) {
        let (u, v) = (*a, *b);
        *a = u + v;
        *b = u - v;
    }
}

/// In-place unnormalized Walsh-Hadamard transform,
/// `out[u] = sum_x (-1)^(u·x) data[x]` with `u·x` the GF(2) dot product of
/// the index bits. The length must be a power of two.
///
/// Blocks of 4096 entries are transformed in cache; the remaining stages
/// run as parallel butterflies across blocks.
pub fn fwht_in_place(data: &mut [i32]) {
    let len = data.len();
    assert!(len.is_power_of_two(), "transform length must be a power of two");
    if len <= BLOCK {
        fwht_serial(data);
        return;
    }
    data.par_chunks_mut(BLOCK).for_each(fwht_serial);
    let mut half = BLOCK;
    while half < len {
        data.par_chunks_mut(2 * half).for_each(|chunk| {
            let (lo, hi) = chunk.split_at_mut(half);
            lo.par_chunks_mut(BLOCK)
                .zip(hi.par_chunks_mut(BLOCK))
                .for_each(|(a, b)| butterfly(a, b));
        });
        half *= 2;
    }
}

/// Walsh spectrum of a function on GF(2^n) x GF(2^n).
///
/// `values[(a << n) | b]` is `sum_{x,y} (-1)^(f(x,y) + Tr(a x + b y))`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WalshSpectrum {
    n: u32,
    values: Vec<i32>,
    max_abs: u32,
}

impl WalshSpectrum {
    pub fn from_values(n: u32, values: Vec<i32>) -> Self {
        assert_eq!(values.len(), 1usize << (2 * n));
        let max_abs = values.iter().map(|v| v.unsigned_abs()).max().unwrap_or(0);
        WalshSpectrum { n, values, max_abs }
    }

    pub fn degree(&self) -> u32 {
        self.n
    }

    pub fn values(&self) -> &[i32] {
        &self.values
    }

    pub fn value(&self, a: u32, b: u32) -> i32 {
        self.values[((a as usize) << self.n) | b as usize]
    }

    pub fn max_abs(&self) -> u32 {
        self.max_abs
    }

    pub fn min_abs(&self) -> u32 {
        self.values.iter().map(|v| v.unsigned_abs()).min().unwrap_or(0)
    }

    /// `sum W^2`; equals `2^(4n)` for every Boolean function.
    pub fn parseval_sum(&self) -> u64 {
        self.values.iter().map(|&v| (v as i64 * v as i64) as u64).sum()
    }

    /// Every value has absolute value `2^n`.
    pub fn is_bent(&self) -> bool {
        let target = 1u32 << self.n;
        self.max_abs == target && self.min_abs() == target
    }

    /// `2^(2n-1) - max|W| / 2`.
    pub fn nonlinearity(&self) -> u64 {
        (1u64 << (2 * self.n - 1)) - (self.max_abs as u64) / 2
    }

    /// `index,value` lines under a header.
    pub fn to_csv(&self) -> String {
        let mut out = String::with_capacity(self.values.len() * 8 + 12);
        out.push_str("index,value\n");
        for (i, v) in self.values.iter().enumerate() {
            out.push_str(&format!("{i},{v}\n"));
        }
        out
    }

    pub fn summary(&self, weight: u64) -> SpectrumSummary {
        SpectrumSummary {
            max_abs: self.max_abs,
            is_bent: self.is_bent(),
            nonlinearity: self.nonlinearity(),
            weight,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpectrumSummary {
    pub max_abs: u32,
    pub is_bent: bool,
    pub nonlinearity: u64,
    pub weight: u64,
}

/// The map `a -> w` with `Tr(a x) = w·x` for all `x`: the Gram matrix of
/// the trace form in the polynomial basis, `G[s][t] = Tr(g^s g^t)`.
pub(crate) fn trace_gram(ctx: &FieldCtx) -> BitMatrix {
    let n = ctx.degree();
    let cols = (0..n)
        .map(|s| ctx.trace_dual(ctx.wrap(1 << s)) as u64)
        .collect();
    BitMatrix::from_columns(n, cols)
}

/// Exact spectrum via a plain fast transform of the sign vector.
///
/// The transform yields `H[u, v] = sum (-1)^(f + u·x + v·y)`; the trace
/// character satisfies `Tr(a x) = (G a)·x`, so `W[a, b] = H[G a, G b]`.
pub fn walsh_spectrum(f: &BooleanFunction) -> Result<WalshSpectrum> {
    let n = f.ctx().degree();
    if 2 * n > MAX_SPECTRUM_VARS {
        return Err(Error::ResourceLimit(format!(
            "spectrum on {} variables exceeds {MAX_SPECTRUM_VARS}",
            2 * n
        )));
    }
    let len = 1usize << (2 * n);
    let mut hat: Vec<i32> = (0..len)
        .into_par_iter()
        .map(|i| 1 - 2 * f.get_index(i) as i32)
        .collect();
    fwht_in_place(&mut hat);
    let dual: Vec<usize> = trace_gram(f.ctx())
        .image_table()
        .into_iter()
        .map(|w| w as usize)
        .collect();
    let low = (1usize << n) - 1;
    let values: Vec<i32> = (0..len)
        .into_par_iter()
        .map(|i| hat[(dual[i >> n] << n) | dual[i & low]])
        .collect();
    Ok(WalshSpectrum::from_values(n, values))
}

pub fn is_bent(f: &BooleanFunction) -> Result<bool> {
    Ok(walsh_spectrum(f)?.is_bent())
}

pub fn nonlinearity(f: &BooleanFunction) -> Result<u64> {
    Ok(walsh_spectrum(f)?.nonlinearity())
}
