//! Boolean functions on GF(2^n) x GF(2^n): the majority-of-traces
//! synthesis from a permutation triple, the Maiorana-McFarland generator,
//! and exact Walsh spectra.
//!
//! Truth tables index the point `(x, y)` at `(int(x) << n) | int(y)`.

mod walsh;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::constructions::{PermutationTriple, TripleJson};
use crate::error::{Error, Result};
use crate::field::FieldCtx;
use crate::linpoly::LinearizedPoly;

pub use walsh::{
    fwht_in_place, is_bent, nonlinearity, walsh_spectrum, SpectrumSummary, WalshSpectrum,
    MAX_SPECTRUM_VARS,
};

/// Largest field degree for in-memory truth tables (2n <= 24 variables).
pub const MAX_TABLE_DEGREE: u32 = 12;

#[derive(Clone, PartialEq, Eq)]
pub struct BooleanFunction {
    ctx: FieldCtx,
    words: Vec<u64>,
}

fn check_table_degree(ctx: &FieldCtx) -> Result<()> {
    if ctx.degree() > MAX_TABLE_DEGREE {
        return Err(Error::ResourceLimit(format!(
            "truth tables on GF(2^{0}) x GF(2^{0}) exceed {1} variables",
            ctx.degree(),
            2 * MAX_TABLE_DEGREE
        )));
    }
    Ok(())
}

impl BooleanFunction {
    pub fn zero(ctx: &FieldCtx) -> Result<Self> {
        check_table_degree(ctx)?;
        let bits = 1usize << (2 * ctx.degree());
        Ok(BooleanFunction {
            ctx: *ctx,
            words: vec![0; bits.div_ceil(64)],
        })
    }

    /// Table with bit `i` equal to `bit(i)`, evaluated in parallel.
    pub fn from_index_fn(ctx: &FieldCtx, bit: impl Fn(usize) -> bool + Sync) -> Result<Self> {
        let mut f = Self::zero(ctx)?;
        let len = f.len();
        f.words.par_iter_mut().enumerate().for_each(|(w, word)| {
            let base = w * 64;
            let mut acc = 0u64;
            for j in 0..64.min(len - base) {
                acc |= (bit(base + j) as u64) << j;
            }
            *word = acc;
        });
        Ok(f)
    }

    /// Table of `f(x, y)` over integer encodings.
    pub fn from_fn(ctx: &FieldCtx, f: impl Fn(u32, u32) -> bool + Sync) -> Result<Self> {
        let n = ctx.degree();
        let low = (1usize << n) - 1;
        Self::from_index_fn(ctx, |i| f((i >> n) as u32, (i & low) as u32))
    }

    pub fn ctx(&self) -> &FieldCtx {
        &self.ctx
    }

    /// Number of table entries, `2^(2n)`.
    pub fn len(&self) -> usize {
        1usize << (2 * self.ctx.degree())
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    #[inline]
    pub fn get_index(&self, i: usize) -> bool {
        (self.words[i / 64] >> (i % 64)) & 1 == 1
    }

    pub fn get(&self, x: u32, y: u32) -> bool {
        self.get_index(((x as usize) << self.ctx.degree()) | y as usize)
    }

    pub fn set_index(&mut self, i: usize, value: bool) {
        let mask = 1u64 << (i % 64);
        if value {
            self.words[i / 64] |= mask;
        } else {
            self.words[i / 64] &= !mask;
        }
    }

    pub fn weight(&self) -> u64 {
        self.words.iter().map(|w| w.count_ones() as u64).sum()
    }

    /// Lowercase hex; digit `k` holds entries `4k..4k+3` with entry `4k`
    /// in its least significant bit.
    pub fn to_hex(&self) -> String {
        let digits = self.len() / 4;
        let mut s = String::with_capacity(digits);
        for k in 0..digits {
            let nibble = (self.words[k / 16] >> ((k % 16) * 4)) & 0xf;
            s.push(char::from_digit(nibble as u32, 16).expect("nibble"));
        }
        s
    }

    pub fn from_hex(ctx: &FieldCtx, hex: &str) -> Result<Self> {
        let mut f = Self::zero(ctx)?;
        let hex = hex.trim();
        if hex.len() != f.len() / 4 {
            return Err(Error::Parse(format!(
                "truth table needs {} hex digits, got {}",
                f.len() / 4,
                hex.len()
            )));
        }
        for (k, ch) in hex.chars().enumerate() {
            let nibble = ch
                .to_digit(16)
                .filter(|_| !ch.is_ascii_uppercase())
                .ok_or_else(|| Error::Parse(format!("invalid hex digit {ch:?}")))?;
            f.words[k / 16] |= (nibble as u64) << ((k % 16) * 4);
        }
        Ok(f)
    }

    pub fn to_json(&self, origin: Option<&PermutationTriple>) -> FunctionJson {
        FunctionJson {
            n: self.ctx.degree(),
            field: self.ctx.spec_string(),
            origin: origin.map(|t| t.to_json()),
            table: self.to_hex(),
        }
    }

    pub fn from_json(json: &FunctionJson) -> Result<Self> {
        let ctx: FieldCtx = json.field.parse()?;
        if ctx.degree() != json.n {
            return Err(Error::Parse(format!(
                "header degree {} disagrees with field {}",
                json.n, json.field
            )));
        }
        Self::from_hex(&ctx, &json.table)
    }
}

impl std::fmt::Debug for BooleanFunction {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "BooleanFunction[{}; weight {}]",
            self.ctx.spec_string(),
            self.weight()
        )
    }
}

/// Serialized truth table with its header.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FunctionJson {
    pub n: u32,
    pub field: String,
    #[serde(default)]
    pub origin: Option<TripleJson>,
    pub table: String,
}

/// For each `y`, the vector `w` with `Tr(x * phi(y)) = w·x`.
fn trace_duals(phi: &LinearizedPoly) -> Vec<u32> {
    walsh::trace_gram(phi.ctx())
        .compose(&phi.to_bit_matrix())
        .image_table()
        .into_iter()
        .map(|w| w as u32)
        .collect()
}

#[inline]
fn parity(v: u32) -> u32 {
    v.count_ones() & 1
}

/// `g(x, y) = t1 t2 + t2 t3 + t1 t3` with `t_i = Tr(x * phi_i(y))`, the
/// majority of the three trace bits.
pub fn synthesize(t: &PermutationTriple) -> Result<BooleanFunction> {
    let ctx = t.ctx();
    check_table_degree(ctx)?;
    let duals: Vec<Vec<u32>> = t.phis().iter().map(trace_duals).collect();
    let n = ctx.degree();
    let low = (1usize << n) - 1;
    BooleanFunction::from_index_fn(ctx, |i| {
        let (x, y) = ((i >> n) as u32, i & low);
        let a = parity(x & duals[0][y]);
        let b = parity(x & duals[1][y]);
        let c = parity(x & duals[2][y]);
        (a & b) ^ (b & c) ^ (a & c) == 1
    })
}

/// Maiorana-McFarland function `Tr(x * phi(y)) + g(y)`; `g_table[y]` is
/// indexed by the integer encoding of `y`.
pub fn mm_synthesize(phi: &LinearizedPoly, g_table: &[bool]) -> Result<BooleanFunction> {
    let ctx = phi.ctx();
    check_table_degree(ctx)?;
    if g_table.len() != ctx.order() {
        return Err(Error::Parse(format!(
            "g table needs {} entries, got {}",
            ctx.order(),
            g_table.len()
        )));
    }
    if !phi.is_permutation() {
        return Err(Error::NotPermutation);
    }
    let duals = trace_duals(phi);
    let n = ctx.degree();
    let low = (1usize << n) - 1;
    BooleanFunction::from_index_fn(ctx, |i| {
        let (x, y) = ((i >> n) as u32, i & low);
        (parity(x & duals[y]) == 1) ^ g_table[y]
    })
}
