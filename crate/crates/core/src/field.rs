//! Arithmetic in GF(2^n), 1 <= n <= 24, in a polynomial basis.
//!
//! An element is stored as its coefficient vector with bit `i` holding the
//! coefficient of `g^i`, where `g` is the class of `x` modulo the field's
//! irreducible polynomial. Every element also carries that modulus, so two
//! elements of different fields can never be combined silently: the checked
//! methods on [`FieldCtx`] return [`Error::ContextMismatch`], and the
//! operator impls panic.

use std::fmt;
use std::ops::{Add, AddAssign, Mul, MulAssign};
use std::str::FromStr;

use crate::error::{Error, Result};

pub const MAX_DEGREE: u32 = 24;

const MISMATCH_PANIC_MSG: &str = "field elements from different fields combined";

/// Degree of a GF(2) polynomial stored as bits, `None` for zero.
fn poly_degree(p: u64) -> Option<u32> {
    if p == 0 {
        None
    } else {
        Some(63 - p.leading_zeros())
    }
}

fn poly_rem(mut a: u64, b: u64) -> u64 {
    let db = poly_degree(b).expect("division by the zero polynomial");
    while let Some(da) = poly_degree(a) {
        if da < db {
            break;
        }
        a ^= b << (da - db);
    }
    a
}

/// Irreducibility over GF(2) by trial division with every polynomial of
/// degree 1..=deg/2.
pub fn is_irreducible(p: u64) -> bool {
    let Some(deg) = poly_degree(p) else {
        return false;
    };
    if deg == 0 {
        return false;
    }
    for d in 1..=deg / 2 {
        for divisor in (1u64 << d)..(1u64 << (d + 1)) {
            if poly_rem(p, divisor) == 0 {
                return false;
            }
        }
    }
    true
}

/// Lexicographically smallest irreducible polynomial of degree `n` with a
/// nonzero constant term.
pub fn default_modulus(n: u32) -> Result<u32> {
    if n == 0 || n > MAX_DEGREE {
        return Err(Error::DegreeOutOfRange(n));
    }
    ((1u32 << n) + 1..(1u32 << (n + 1)))
        .step_by(2)
        .find(|&p| is_irreducible(p as u64))
        .ok_or_else(|| Error::Internal(format!("no irreducible polynomial of degree {n}")))
}

#[inline]
fn mul_raw(mut a: u32, mut b: u32, modulus: u32, degree: u32) -> u32 {
    let top = 1u32 << degree;
    let mut acc = 0;
    while b != 0 {
        if b & 1 != 0 {
            acc ^= a;
        }
        b >>= 1;
        a <<= 1;
        if a & top != 0 {
            a ^= modulus;
        }
    }
    acc
}

/// An element of GF(2^n), tagged with the modulus of its field.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FieldElement {
    modulus: u32,
    value: u32,
}

impl FieldElement {
    /// Integer encoding `sum bit_i * 2^i`.
    #[inline]
    pub fn value(self) -> u32 {
        self.value
    }

    #[inline]
    pub fn modulus(self) -> u32 {
        self.modulus
    }

    #[inline]
    pub fn degree(self) -> u32 {
        31 - self.modulus.leading_zeros()
    }

    #[inline]
    pub fn is_zero(self) -> bool {
        self.value == 0
    }

    #[inline]
    pub fn is_one(self) -> bool {
        self.value == 1
    }

    #[inline]
    fn with_value(self, value: u32) -> Self {
        FieldElement {
            modulus: self.modulus,
            value,
        }
    }

    #[inline]
    pub fn square(self) -> Self {
        self * self
    }

    /// Square-and-multiply; `0^0 = 1`.
    pub fn pow(self, mut e: u64) -> Self {
        let mut base = self;
        let mut acc = self.with_value(1);
        while e != 0 {
            if e & 1 != 0 {
                acc *= base;
            }
            base = base.square();
            e >>= 1;
        }
        acc
    }

    /// `self^(2^k)` for any `k`; the exponent is taken modulo the degree.
    pub fn pow2k(self, k: u32) -> Self {
        let mut acc = self;
        for _ in 0..k % self.degree() {
            acc = acc.square();
        }
        acc
    }

    /// Inverse as `a^(2^n - 2)`.
    pub fn inv(self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::ZeroInverse);
        }
        Ok(self.pow((1u64 << self.degree()) - 2))
    }

    /// Checked addition.
    pub fn try_add(self, rhs: Self) -> Result<Self> {
        check_same(self, rhs)?;
        Ok(self.with_value(self.value ^ rhs.value))
    }

    /// Checked multiplication.
    pub fn try_mul(self, rhs: Self) -> Result<Self> {
        check_same(self, rhs)?;
        Ok(self.with_value(mul_raw(
            self.value,
            rhs.value,
            self.modulus,
            self.degree(),
        )))
    }
}

#[inline]
fn check_same(a: FieldElement, b: FieldElement) -> Result<()> {
    if a.modulus != b.modulus {
        Err(Error::ContextMismatch {
            left: a.modulus,
            right: b.modulus,
        })
    } else {
        Ok(())
    }
}

impl Add for FieldElement {
    type Output = FieldElement;

    #[inline]
    fn add(self, rhs: Self) -> Self {
        assert_eq!(self.modulus, rhs.modulus, "{}", MISMATCH_PANIC_MSG);
        self.with_value(self.value ^ rhs.value)
    }
}

impl AddAssign for FieldElement {
    #[inline]
    fn add_assign(&mut self, rhs: Self) {
        *self = *self + rhs;
    }
}

impl Mul for FieldElement {
    type Output = FieldElement;

    #[inline]
    fn mul(self, rhs: Self) -> Self {
        assert_eq!(self.modulus, rhs.modulus, "{}", MISMATCH_PANIC_MSG);
        self.with_value(mul_raw(
            self.value,
            rhs.value,
            self.modulus,
            self.degree(),
        ))
    }
}

impl MulAssign for FieldElement {
    #[inline]
    fn mul_assign(&mut self, rhs: Self) {
        *self = *self * rhs;
    }
}

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", hex_value(self.value, self.degree()))
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&hex_value(self.value, self.degree()))
    }
}

/// Number of hex digits used to print an element of GF(2^n): whole bytes.
pub fn hex_width(degree: u32) -> usize {
    2 * degree.div_ceil(8) as usize
}

fn hex_value(value: u32, degree: u32) -> String {
    format!("{:0width$x}", value, width = hex_width(degree))
}

/// The field GF(2^n) with a fixed irreducible modulus.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct FieldCtx {
    degree: u32,
    modulus: u32,
    /// Bit t is Tr(g^t); Tr(a) is the parity of `a & trace_mask`.
    trace_mask: u32,
}

impl FieldCtx {
    /// Builds GF(2^n) with the given modulus, or the default one.
    pub fn new(n: u32, modulus: Option<u32>) -> Result<Self> {
        if n == 0 || n > MAX_DEGREE {
            return Err(Error::DegreeOutOfRange(n));
        }
        let modulus = match modulus {
            None => default_modulus(n)?,
            Some(p) => {
                let found = poly_degree(p as u64);
                if found != Some(n) {
                    return Err(Error::WrongModulusDegree {
                        modulus: p as u64,
                        expected: n,
                        found,
                    });
                }
                if p & 1 == 0 {
                    return Err(Error::ModulusNotCoprimeToX(p as u64));
                }
                if !is_irreducible(p as u64) {
                    return Err(Error::ReducibleModulus(p as u64));
                }
                p
            }
        };
        let mut ctx = FieldCtx {
            degree: n,
            modulus,
            trace_mask: 0,
        };
        let mut mask = 0;
        for t in 0..n {
            let basis = ctx.wrap(1 << t);
            if ctx.trace_by_frobenius(basis) == 1 {
                mask |= 1 << t;
            }
        }
        ctx.trace_mask = mask;
        Ok(ctx)
    }

    pub fn with_default_modulus(n: u32) -> Result<Self> {
        Self::new(n, None)
    }

    #[inline]
    pub fn degree(&self) -> u32 {
        self.degree
    }

    #[inline]
    pub fn modulus(&self) -> u32 {
        self.modulus
    }

    /// Number of elements, `2^n`.
    #[inline]
    pub fn order(&self) -> usize {
        1usize << self.degree
    }

    #[inline]
    pub(crate) fn wrap(&self, value: u32) -> FieldElement {
        debug_assert!(value >> self.degree == 0);
        FieldElement {
            modulus: self.modulus,
            value,
        }
    }

    /// The element with integer encoding `value`.
    pub fn elem(&self, value: u32) -> Result<FieldElement> {
        if (value as u64) >> self.degree != 0 {
            return Err(Error::ValueOutOfRange {
                value: value as u64,
                degree: self.degree,
            });
        }
        Ok(self.wrap(value))
    }

    #[inline]
    pub fn zero(&self) -> FieldElement {
        self.wrap(0)
    }

    #[inline]
    pub fn one(&self) -> FieldElement {
        self.wrap(1)
    }

    /// The class `g` of `x`. Equals 1 in GF(2) under the modulus `x + 1`.
    pub fn generator(&self) -> FieldElement {
        if self.degree == 1 {
            self.one()
        } else {
            self.wrap(2)
        }
    }

    /// All elements in integer order.
    pub fn elements(&self) -> impl Iterator<Item = FieldElement> + '_ {
        (0..self.order() as u32).map(move |v| self.wrap(v))
    }

    pub fn contains(&self, a: FieldElement) -> bool {
        a.modulus == self.modulus
    }

    pub fn check(&self, a: FieldElement) -> Result<FieldElement> {
        if self.contains(a) {
            Ok(a)
        } else {
            Err(Error::ContextMismatch {
                left: self.modulus,
                right: a.modulus,
            })
        }
    }

    pub fn add(&self, a: FieldElement, b: FieldElement) -> Result<FieldElement> {
        self.check(a)?.try_add(self.check(b)?)
    }

    pub fn mul(&self, a: FieldElement, b: FieldElement) -> Result<FieldElement> {
        self.check(a)?.try_mul(self.check(b)?)
    }

    pub fn inv(&self, a: FieldElement) -> Result<FieldElement> {
        self.check(a)?.inv()
    }

    pub fn pow(&self, a: FieldElement, e: u64) -> Result<FieldElement> {
        Ok(self.check(a)?.pow(e))
    }

    /// The Frobenius power `a^(2^k)` for `0 <= k < n`.
    pub fn frob(&self, a: FieldElement, k: u32) -> Result<FieldElement> {
        if k >= self.degree {
            return Err(Error::FrobeniusOutOfRange {
                k,
                degree: self.degree,
            });
        }
        Ok(self.check(a)?.pow2k(k))
    }

    /// Absolute trace `sum_k a^(2^k)`, as 0 or 1.
    #[inline]
    pub fn abs_trace(&self, a: FieldElement) -> u8 {
        debug_assert!(self.contains(a));
        self.trace_bits(a.value)
    }

    /// Trace of a raw integer encoding.
    #[inline]
    pub fn trace_bits(&self, value: u32) -> u8 {
        ((value & self.trace_mask).count_ones() & 1) as u8
    }

    pub fn trace_mask(&self) -> u32 {
        self.trace_mask
    }

    fn trace_by_frobenius(&self, a: FieldElement) -> u8 {
        let mut acc = a;
        let mut power = a;
        for _ in 1..self.degree {
            power = power.square();
            acc += power;
        }
        debug_assert!(acc.value <= 1);
        acc.value as u8
    }

    /// Bit vector `w` with `Tr(v * x) = parity(w & x)` for every `x`;
    /// bit t of `w` is `Tr(v * g^t)`.
    pub fn trace_dual(&self, v: FieldElement) -> u32 {
        let mut w = 0;
        let mut basis = v;
        let g = self.generator();
        for t in 0..self.degree {
            w |= (self.abs_trace(basis) as u32) << t;
            basis *= g;
        }
        w
    }

    /// True iff `a` lies in the subfield GF(2^d).
    pub fn in_subfield(&self, a: FieldElement, d: u32) -> Result<bool> {
        if d == 0 || self.degree % d != 0 {
            return Err(Error::NotADivisor {
                d,
                degree: self.degree,
            });
        }
        let a = self.check(a)?;
        Ok(d == self.degree || a.pow2k(d) == a)
    }

    /// Elements of the subfield GF(2^d) in integer order.
    pub fn subfield_elements(&self, d: u32) -> Result<Vec<FieldElement>> {
        if d == 0 || self.degree % d != 0 {
            return Err(Error::NotADivisor {
                d,
                degree: self.degree,
            });
        }
        Ok(self.elements().filter(|a| a.pow2k(d) == *a).collect())
    }

    /// Zero-padded lowercase hex of an element.
    pub fn format_elem(&self, a: FieldElement) -> String {
        hex_value(a.value, self.degree)
    }

    /// Parses a hex element (optional `0x` prefix, any padding).
    pub fn parse_elem(&self, s: &str) -> Result<FieldElement> {
        let digits = s.trim();
        let digits = digits
            .strip_prefix("0x")
            .or_else(|| digits.strip_prefix("0X"))
            .unwrap_or(digits);
        let value = u64::from_str_radix(digits, 16)
            .map_err(|e| Error::Parse(format!("field element {s:?}: {e}")))?;
        if value >> self.degree != 0 {
            return Err(Error::ValueOutOfRange {
                value,
                degree: self.degree,
            });
        }
        Ok(self.wrap(value as u32))
    }

    /// Field spec string `gf2:<n>:<modulus-hex>`.
    pub fn spec_string(&self) -> String {
        format!("gf2:{}:{:x}", self.degree, self.modulus)
    }
}

impl fmt::Debug for FieldCtx {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FieldCtx({})", self.spec_string())
    }
}

impl fmt::Display for FieldCtx {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.spec_string())
    }
}

impl FromStr for FieldCtx {
    type Err = Error;

    /// Accepts `gf2:<n>` or `gf2:<n>:<modulus-hex>`.
    fn from_str(s: &str) -> Result<Self> {
        let mut parts = s.trim().split(':');
        if parts.next() != Some("gf2") {
            return Err(Error::Parse(format!("field spec {s:?} must start with gf2:")));
        }
        let n: u32 = parts
            .next()
            .ok_or_else(|| Error::Parse(format!("field spec {s:?} lacks a degree")))?
            .parse()
            .map_err(|e| Error::Parse(format!("field spec {s:?}: {e}")))?;
        let modulus = match parts.next() {
            None => None,
            Some(hex) => {
                let hex = hex.strip_prefix("0x").unwrap_or(hex);
                let p = u64::from_str_radix(hex, 16)
                    .map_err(|e| Error::Parse(format!("field spec {s:?}: {e}")))?;
                let p = u32::try_from(p).map_err(|_| Error::WrongModulusDegree {
                    modulus: p,
                    expected: n,
                    found: poly_degree(p),
                })?;
                Some(p)
            }
        };
        if parts.next().is_some() {
            return Err(Error::Parse(format!("field spec {s:?} has trailing parts")));
        }
        FieldCtx::new(n, modulus)
    }
}
