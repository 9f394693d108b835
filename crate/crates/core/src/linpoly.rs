//! Linearized 2-polynomials `sum_i c_i x^(2^i)` over GF(2^n), reduced
//! modulo `x^(2^n) - x`.

use std::fmt;
use std::ops::Add;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::{FieldCtx, FieldElement};
use crate::linalg::{solve_dense, BitMatrix};

/// `coeffs[i]` is the coefficient of `x^(2^i)`; there are exactly `n` slots.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct LinearizedPoly {
    ctx: FieldCtx,
    coeffs: Vec<FieldElement>,
}

impl LinearizedPoly {
    pub fn zero(ctx: &FieldCtx) -> Self {
        LinearizedPoly {
            ctx: *ctx,
            coeffs: vec![ctx.zero(); ctx.degree() as usize],
        }
    }

    pub fn identity(ctx: &FieldCtx) -> Self {
        Self::monomial(ctx, ctx.one(), 0)
    }

    /// `coeff * x^(2^k)`, with `k` reduced modulo `n`.
    pub fn monomial(ctx: &FieldCtx, coeff: FieldElement, k: u32) -> Self {
        let mut p = Self::zero(ctx);
        p.coeffs[(k % ctx.degree()) as usize] = coeff;
        p
    }

    pub fn from_coeffs(ctx: &FieldCtx, coeffs: Vec<FieldElement>) -> Result<Self> {
        if coeffs.len() != ctx.degree() as usize {
            return Err(Error::CoefficientCount {
                expected: ctx.degree() as usize,
                found: coeffs.len(),
            });
        }
        for &c in &coeffs {
            ctx.check(c)?;
        }
        Ok(LinearizedPoly { ctx: *ctx, coeffs })
    }

    /// Sum of terms `c * x^(2^k)`; exponents are reduced modulo `n` and
    /// repeated exponents accumulate.
    pub fn from_terms(ctx: &FieldCtx, terms: &[(u32, FieldElement)]) -> Result<Self> {
        let mut p = Self::zero(ctx);
        for &(k, c) in terms {
            let slot = &mut p.coeffs[(k % ctx.degree()) as usize];
            *slot = slot.try_add(ctx.check(c)?)?;
        }
        Ok(p)
    }

    pub fn ctx(&self) -> &FieldCtx {
        &self.ctx
    }

    pub fn coeffs(&self) -> &[FieldElement] {
        &self.coeffs
    }

    /// Coefficient of `x^(2^k)`, `k` reduced modulo `n`.
    pub fn coeff(&self, k: u32) -> FieldElement {
        self.coeffs[(k % self.ctx.degree()) as usize]
    }

    /// Indices `i` with a nonzero coefficient of `x^(2^i)`.
    pub fn support(&self) -> Vec<u32> {
        (0..self.ctx.degree())
            .filter(|&i| !self.coeffs[i as usize].is_zero())
            .collect()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    pub fn is_identity(&self) -> bool {
        self.coeffs[0].is_one() && self.coeffs[1..].iter().all(|c| c.is_zero())
    }

    /// Integer encodings of the coefficients; a total order for
    /// canonicalizing collections of polynomials.
    pub fn sort_key(&self) -> Vec<u32> {
        self.coeffs.iter().map(|c| c.value()).collect()
    }

    /// `sum_i coeffs[i] * x^(2^i)`. Panics if `x` is from another field.
    pub fn eval(&self, x: FieldElement) -> FieldElement {
        let mut acc = self.ctx.zero();
        let mut power = x;
        for (i, &c) in self.coeffs.iter().enumerate() {
            if i > 0 {
                power = power.square();
            }
            if !c.is_zero() {
                acc += c * power;
            }
        }
        acc
    }

    pub fn try_eval(&self, x: FieldElement) -> Result<FieldElement> {
        self.ctx.check(x)?;
        Ok(self.eval(x))
    }

    fn check_same(&self, other: &Self) -> Result<()> {
        if self.ctx != other.ctx {
            return Err(Error::ContextMismatch {
                left: self.ctx.modulus(),
                right: other.ctx.modulus(),
            });
        }
        Ok(())
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        Ok(LinearizedPoly {
            ctx: self.ctx,
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(&a, &b)| a + b)
                .collect(),
        })
    }

    /// `self ∘ other`: coefficient of `x^(2^k)` is
    /// `sum_{i+j = k mod n} self[i] * other[j]^(2^i)`.
    pub fn compose(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        let n = self.ctx.degree() as usize;
        let mut out = Self::zero(&self.ctx);
        for (i, &c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for (j, &d) in other.coeffs.iter().enumerate() {
                if !d.is_zero() {
                    out.coeffs[(i + j) % n] += c * d.pow2k(i as u32);
                }
            }
        }
        Ok(out)
    }

    /// The GF(2)-linear map `x -> self(x)` in the polynomial basis; column
    /// `t` is the image of `g^t`.
    pub fn to_bit_matrix(&self) -> BitMatrix {
        let n = self.ctx.degree();
        let cols = (0..n)
            .map(|t| self.eval(self.ctx.wrap(1 << t)).value() as u64)
            .collect();
        BitMatrix::from_columns(n, cols)
    }

    /// True iff the induced linear map has trivial kernel.
    pub fn is_permutation(&self) -> bool {
        self.to_bit_matrix().rank() == self.ctx.degree()
    }

    /// Compositional inverse.
    ///
    /// Inverts the bit matrix, then recovers coefficients from the inverse's
    /// values on the basis `g^t` by solving the Moore system
    /// `sum_i c_i (g^t)^(2^i) = inverse(g^t)`.
    pub fn inverse(&self) -> Result<Self> {
        let inv = self
            .to_bit_matrix()
            .inverse()
            .ok_or(Error::NotPermutation)?;
        let n = self.ctx.degree();
        let moore: Vec<Vec<FieldElement>> = (0..n)
            .map(|t| {
                let basis = self.ctx.wrap(1 << t);
                let mut row = Vec::with_capacity(n as usize);
                let mut power = basis;
                for i in 0..n {
                    if i > 0 {
                        power = power.square();
                    }
                    row.push(power);
                }
                row
            })
            .collect();
        let values: Vec<FieldElement> = inv
            .columns()
            .iter()
            .map(|&c| self.ctx.wrap(c as u32))
            .collect();
        let (solution, _) = solve_dense(&moore, &values);
        let coeffs = solution
            .ok_or_else(|| Error::Internal("Moore matrix of a basis is singular".into()))?;
        Ok(LinearizedPoly {
            ctx: self.ctx,
            coeffs,
        })
    }

    pub fn to_json(&self) -> PolyJson {
        PolyJson {
            n: self.ctx.degree(),
            coeffs: self
                .coeffs
                .iter()
                .map(|&c| self.ctx.format_elem(c))
                .collect(),
        }
    }

    pub fn from_json(ctx: &FieldCtx, json: &PolyJson) -> Result<Self> {
        if json.n != ctx.degree() {
            return Err(Error::Parse(format!(
                "polynomial over degree {} in a field of degree {}",
                json.n,
                ctx.degree()
            )));
        }
        let coeffs = json
            .coeffs
            .iter()
            .map(|s| ctx.parse_elem(s))
            .collect::<Result<Vec<_>>>()?;
        Self::from_coeffs(ctx, coeffs)
    }

    /// Parses the text form written by `Display`, e.g. `01*X + 0a*X^4`.
    pub fn parse(ctx: &FieldCtx, s: &str) -> Result<Self> {
        let s = s.trim();
        if s == "0" {
            return Ok(Self::zero(ctx));
        }
        let mut terms = Vec::new();
        for term in s.split('+') {
            let term = term.trim();
            let (coeff, power) = term
                .split_once('*')
                .ok_or_else(|| Error::Parse(format!("term {term:?} lacks '*X'")))?;
            let c = ctx.parse_elem(coeff)?;
            let power = power.trim();
            let exponent: u64 = if power == "X" {
                1
            } else if let Some(e) = power.strip_prefix("X^") {
                e.parse()
                    .map_err(|e| Error::Parse(format!("term {term:?}: {e}")))?
            } else {
                return Err(Error::Parse(format!("term {term:?} is not c*X^e")));
            };
            if !exponent.is_power_of_two() {
                return Err(Error::Parse(format!(
                    "exponent {exponent} is not a power of two"
                )));
            }
            terms.push((exponent.trailing_zeros(), c));
        }
        Self::from_terms(ctx, &terms)
    }
}

impl Add for &LinearizedPoly {
    type Output = LinearizedPoly;

    /// Panics on polynomials over different fields; see `try_add`.
    fn add(self, rhs: Self) -> LinearizedPoly {
        self.try_add(rhs).expect("polynomials over different fields")
    }
}

impl fmt::Display for LinearizedPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, &c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            write!(f, "{}*X", self.ctx.format_elem(c))?;
            if i > 0 {
                write!(f, "^{}", 1u64 << i)?;
            }
        }
        if first {
            f.write_str("0")?;
        }
        Ok(())
    }
}

impl fmt::Debug for LinearizedPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LinearizedPoly[{}]({})", self.ctx.spec_string(), self)
    }
}

/// Serialized polynomial: `{"n": n, "coeffs": [hex, ...]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolyJson {
    pub n: u32,
    pub coeffs: Vec<String>,
}

fn require_degree(ctx: &FieldCtx, expected: u32, shape: &str) -> Result<()> {
    if ctx.degree() != expected {
        return Err(Error::DegreeShape {
            degree: ctx.degree(),
            shape: shape.to_string(),
        });
    }
    Ok(())
}

/// `alpha x^(2^i) + beta x^(2^(m+i))`.
pub fn binomial(
    ctx: &FieldCtx,
    alpha: FieldElement,
    beta: FieldElement,
    i: u32,
    m: u32,
) -> Result<LinearizedPoly> {
    LinearizedPoly::from_terms(ctx, &[(i, alpha), (m + i, beta)])
}

/// Closed-form inverse of `alpha x^(2^i) + beta x^(2^(m+i))` over
/// GF(2^(2m)): `gamma x^(2^(m-i)) + delta x^(2^(2m-i))` with
/// `gamma = (beta^(2^m) / N)^(2^(m-i))`, `delta = (alpha / N)^(2^(m-i))`
/// and `N = alpha^(2^m+1) + beta^(2^m+1)`, which must be nonzero.
pub fn binomial_inverse(
    ctx: &FieldCtx,
    alpha: FieldElement,
    beta: FieldElement,
    i: u32,
    m: u32,
) -> Result<LinearizedPoly> {
    require_degree(ctx, 2 * m, "n = 2m")?;
    if i >= m {
        return Err(Error::DegreeShape {
            degree: ctx.degree(),
            shape: format!("binomial shift i = {i} must be below m = {m}"),
        });
    }
    let alpha = ctx.check(alpha)?;
    let beta = ctx.check(beta)?;
    let q_plus_one = (1u64 << m) + 1;
    let norm_sum = alpha.pow(q_plus_one) + beta.pow(q_plus_one);
    if norm_sum.is_zero() {
        return Err(Error::BinomialNotInvertible);
    }
    let scale = norm_sum.inv()?;
    let gamma = (beta.pow2k(m) * scale).pow2k(m - i);
    let delta = (alpha * scale).pow2k(m - i);
    LinearizedPoly::from_terms(ctx, &[(m - i, gamma), (2 * m - i, delta)])
}

/// `alpha x^(2^m) + beta x^(2^(3m)) + gamma x^(2^(5m))` over GF(2^(6m)).
pub fn trinomial(
    ctx: &FieldCtx,
    alpha: FieldElement,
    beta: FieldElement,
    gamma: FieldElement,
    m: u32,
) -> Result<LinearizedPoly> {
    LinearizedPoly::from_terms(ctx, &[(m, alpha), (3 * m, beta), (5 * m, gamma)])
}

/// Coefficients of the trinomial inverse
/// `abar x^(2^m) + bbar x^(2^(3m)) + gbar x^(2^(5m))`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TrinomialInverseSolution {
    pub abar: FieldElement,
    pub bbar: FieldElement,
    pub gbar: FieldElement,
    pub determinant: FieldElement,
}

impl TrinomialInverseSolution {
    pub fn to_poly(&self, ctx: &FieldCtx, m: u32) -> Result<LinearizedPoly> {
        trinomial(ctx, self.abar, self.bbar, self.gbar, m)
    }
}

/// Solves for the trinomial inverse of
/// `alpha x^(2^m) + beta x^(2^(3m)) + gamma x^(2^(5m))` over GF(2^(6m)).
///
/// The unknowns `(abar, bbar, gbar)` satisfy the 3x3 system whose rows are
/// `[gamma^(2^m), beta^(2^3m), alpha^(2^5m)] = 1`,
/// `[alpha^(2^m), gamma^(2^3m), beta^(2^5m)] = 0` and
/// `[beta^(2^m), alpha^(2^3m), gamma^(2^5m)] = 0`.
pub fn trinomial_inverse(
    ctx: &FieldCtx,
    alpha: FieldElement,
    beta: FieldElement,
    gamma: FieldElement,
    m: u32,
) -> Result<TrinomialInverseSolution> {
    require_degree(ctx, 6 * m, "n = 6m")?;
    let (a, b, c) = (ctx.check(alpha)?, ctx.check(beta)?, ctx.check(gamma)?);
    let matrix = vec![
        vec![c.pow2k(m), b.pow2k(3 * m), a.pow2k(5 * m)],
        vec![a.pow2k(m), c.pow2k(3 * m), b.pow2k(5 * m)],
        vec![b.pow2k(m), a.pow2k(3 * m), c.pow2k(5 * m)],
    ];
    let rhs = [ctx.one(), ctx.zero(), ctx.zero()];
    let (solution, determinant) = solve_dense(&matrix, &rhs);
    let x = solution.ok_or(Error::TrinomialSingular)?;
    Ok(TrinomialInverseSolution {
        abar: x[0],
        bbar: x[1],
        gbar: x[2],
        determinant,
    })
}

/// `C x + D x^q + (C+1) x^(q^2) + D x^(q^3)` with `q = 2^m` over
/// GF(2^(4m)); an involution when `C` is in GF(2^m) and `D` in GF(2^(2m)).
pub fn involution_quadrinomial(
    ctx: &FieldCtx,
    c: FieldElement,
    d: FieldElement,
    m: u32,
) -> Result<LinearizedPoly> {
    require_degree(ctx, 4 * m, "n = 4m")?;
    if !ctx.in_subfield(c, m)? {
        return Err(Error::ConditionViolated {
            family: "quadrinomial",
            condition: format!("C = {} is not in GF(2^{m})", ctx.format_elem(c)),
        });
    }
    if !ctx.in_subfield(d, 2 * m)? {
        return Err(Error::ConditionViolated {
            family: "quadrinomial",
            condition: format!("D = {} is not in GF(2^{})", ctx.format_elem(d), 2 * m),
        });
    }
    LinearizedPoly::from_terms(
        ctx,
        &[(0, c), (m, d), (2 * m, c + ctx.one()), (3 * m, d)],
    )
}
