//! Linear algebra over GF(2) (bit matrices) and small dense systems over
//! GF(2^n).

use crate::field::FieldElement;

/// A GF(2)-linear map from `ncols()` bits to `nrows` bits, stored as the
/// images of the unit vectors (column `t` is the image of bit `t`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BitMatrix {
    nrows: u32,
    cols: Vec<u64>,
}

impl BitMatrix {
    pub fn from_columns(nrows: u32, cols: Vec<u64>) -> Self {
        assert!(nrows <= 64);
        debug_assert!(cols.iter().all(|&c| nrows == 64 || c >> nrows == 0));
        BitMatrix { nrows, cols }
    }

    pub fn identity(n: u32) -> Self {
        Self::from_columns(n, (0..n).map(|t| 1u64 << t).collect())
    }

    pub fn nrows(&self) -> u32 {
        self.nrows
    }

    pub fn ncols(&self) -> u32 {
        self.cols.len() as u32
    }

    pub fn columns(&self) -> &[u64] {
        &self.cols
    }

    #[inline]
    pub fn apply(&self, x: u64) -> u64 {
        let mut acc = 0;
        let mut rest = x;
        while rest != 0 {
            let t = rest.trailing_zeros();
            acc ^= self.cols[t as usize];
            rest &= rest - 1;
        }
        acc
    }

    /// Images of every input `0..2^ncols`, in order; walks a Gray code so
    /// each step costs a single XOR.
    pub fn image_table(&self) -> Vec<u64> {
        let size = 1usize << self.ncols();
        let mut table = vec![0u64; size];
        let mut gray = 0usize;
        let mut acc = 0u64;
        for step in 1..size {
            let bit = step.trailing_zeros();
            gray ^= 1 << bit;
            acc ^= self.cols[bit as usize];
            table[gray] = acc;
        }
        table
    }

    pub fn rank(&self) -> u32 {
        // xor basis indexed by leading bit
        let mut basis = [0u64; 64];
        let mut rank = 0;
        for &col in &self.cols {
            let mut v = col;
            while v != 0 {
                let lead = 63 - v.leading_zeros() as usize;
                if basis[lead] == 0 {
                    basis[lead] = v;
                    rank += 1;
                    break;
                }
                v ^= basis[lead];
            }
        }
        rank
    }

    pub fn kernel_dim(&self) -> u32 {
        self.ncols() - self.rank()
    }

    /// Inverse of a square matrix, `None` when singular.
    pub fn inverse(&self) -> Option<BitMatrix> {
        let n = self.nrows;
        if self.ncols() != n {
            return None;
        }
        // Row-reduce pairs (image, preimage) until image p is the unit
        // vector e_p; its preimage is then column p of the inverse.
        let mut pairs: Vec<(u64, u64)> = self
            .cols
            .iter()
            .enumerate()
            .map(|(t, &c)| (c, 1u64 << t))
            .collect();
        for p in 0..n as usize {
            let pivot = (p..pairs.len()).find(|&r| (pairs[r].0 >> p) & 1 == 1)?;
            pairs.swap(p, pivot);
            let (img, pre) = pairs[p];
            for (r, pair) in pairs.iter_mut().enumerate() {
                if r != p && (pair.0 >> p) & 1 == 1 {
                    pair.0 ^= img;
                    pair.1 ^= pre;
                }
            }
        }
        Some(BitMatrix::from_columns(
            n,
            pairs.into_iter().map(|(_, pre)| pre).collect(),
        ))
    }

    /// Matrix of the composite map `self ∘ other`.
    pub fn compose(&self, other: &BitMatrix) -> BitMatrix {
        assert_eq!(other.nrows, self.ncols());
        BitMatrix::from_columns(
            self.nrows,
            other.cols.iter().map(|&c| self.apply(c)).collect(),
        )
    }
}

/// Gaussian elimination over GF(2^n) with first-nonzero pivoting.
///
/// Returns the solution of `matrix * x = rhs` together with the
/// determinant, or `None` for the solution when the matrix is singular (the
/// determinant is then zero).
pub fn solve_dense(
    matrix: &[Vec<FieldElement>],
    rhs: &[FieldElement],
) -> (Option<Vec<FieldElement>>, FieldElement) {
    let size = matrix.len();
    assert_eq!(rhs.len(), size);
    assert!(size > 0);
    let zero = rhs[0] + rhs[0];
    let one = zero.pow(0);
    let mut a: Vec<Vec<FieldElement>> = matrix
        .iter()
        .zip(rhs)
        .map(|(row, &b)| {
            assert_eq!(row.len(), size);
            let mut r = row.clone();
            r.push(b);
            r
        })
        .collect();
    let mut det = one;
    for col in 0..size {
        let Some(pivot) = (col..size).find(|&r| !a[r][col].is_zero()) else {
            return (None, zero);
        };
        a.swap(col, pivot);
        let p = a[col][col];
        det *= p;
        let p_inv = p.inv().expect("pivot is nonzero");
        for v in a[col].iter_mut() {
            *v *= p_inv;
        }
        for r in 0..size {
            if r != col && !a[r][col].is_zero() {
                let factor = a[r][col];
                for c in col..=size {
                    let delta = factor * a[col][c];
                    a[r][c] += delta;
                }
            }
        }
    }
    (Some(a.into_iter().map(|row| row[size]).collect()), det)
}
