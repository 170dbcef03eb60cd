//! Scalar abstraction shared by every numerical routine in the crate.
//!
//! Algorithms are written once against [`Real`] and instantiated either with
//! `f64` or with [`BigFloat`], an MPFR-backed float whose precision is chosen
//! at run time. A [`Precision`] travels alongside generic code so constants
//! can be materialised at the working precision; `f64` ignores it.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, AddAssign, Div, DivAssign, Mul, MulAssign, Neg, Sub, SubAssign};

use num_traits::{One, ToPrimitive, Zero};
use rug::float::Round;
use rug::ops::Pow;

use crate::error::{Error, Result};

/// Working precision in mantissa bits.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Precision(u32);

impl Precision {
    pub const DEFAULT_BITS: u32 = 192;
    pub const MIN_BITS: u32 = 53;

    pub fn new(mantissa_bits: u32) -> Result<Self> {
        if mantissa_bits < Self::MIN_BITS {
            return Err(Error::InvalidPrecision(mantissa_bits));
        }
        Ok(Precision(mantissa_bits))
    }

    pub const fn bits(self) -> u32 {
        self.0
    }

    /// The same precision widened by `extra` guard bits.
    pub const fn widened(self, extra: u32) -> Self {
        Precision(self.0 + extra)
    }
}

impl Default for Precision {
    fn default() -> Self {
        Precision(Self::DEFAULT_BITS)
    }
}

impl fmt::Display for Precision {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} bits", self.0)
    }
}

/// Decimal digits of a value: `±0.d₁d₂d₃… × 10^exp10`, with `d₁ ≠ 0` unless
/// the value is zero (then `digits` is empty).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DecimalDigits {
    pub negative: bool,
    pub digits: Vec<u8>,
    pub exp10: i32,
}

/// Real scalar used throughout the crate.
///
/// Arithmetic is round-to-nearest and deterministic for a fixed precision.
pub trait Real:
    Clone
    + fmt::Debug
    + fmt::Display
    + PartialOrd
    + PartialEq
    + Send
    + Sync
    + Zero
    + One
    + ToPrimitive
    + Neg<Output = Self>
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + for<'a> Add<&'a Self, Output = Self>
    + for<'a> Sub<&'a Self, Output = Self>
    + for<'a> Mul<&'a Self, Output = Self>
    + for<'a> Div<&'a Self, Output = Self>
    + AddAssign
    + SubAssign
    + MulAssign
    + DivAssign
    + for<'a> AddAssign<&'a Self>
    + for<'a> SubAssign<&'a Self>
    + for<'a> MulAssign<&'a Self>
    + for<'a> DivAssign<&'a Self>
{
    /// Mantissa bits this type actually carries at the requested precision.
    fn effective_bits(prec: Precision) -> u32;

    fn from_f64(x: f64, prec: Precision) -> Self;

    fn from_i64(n: i64, prec: Precision) -> Self;

    /// Parses a decimal literal such as `10`, `0.1` or `2.5e-3`.
    fn parse_decimal(text: &str, prec: Precision) -> Option<Self>;

    /// Re-rounds to `prec` (a no-op for fixed-width types).
    fn with_precision(&self, prec: Precision) -> Self;

    fn sqrt(&self) -> Self;

    fn abs(&self) -> Self;

    fn powi(&self, n: i32) -> Self;

    /// Natural logarithm, used for diagnostics only.
    fn ln(&self) -> Self;

    fn is_finite(&self) -> bool;

    /// Spacing between this value and its neighbour of larger magnitude.
    fn ulp(&self) -> Self;

    /// Decimal expansion carrying `sig` significant digits (correctly rounded
    /// by the backend).
    fn decimal_digits(&self, sig: usize) -> DecimalDigits;

    fn is_zero_value(&self) -> bool {
        self.is_zero()
    }

    fn signum_i(&self) -> Ordering {
        self.partial_cmp(&Self::zero()).unwrap_or(Ordering::Equal)
    }

    /// `2^(-bits)` at the given precision.
    fn exp2_neg(bits: u32, prec: Precision) -> Self {
        Self::from_i64(2, prec).powi(-(bits as i32))
    }

    fn max_of(a: Self, b: Self) -> Self {
        if a >= b {
            a
        } else {
            b
        }
    }

    fn min_of(a: Self, b: Self) -> Self {
        if a <= b {
            a
        } else {
            b
        }
    }

    /// Positive integer factorial, exact while it fits in the mantissa.
    fn factorial(n: u32, prec: Precision) -> Self {
        let mut acc = Self::from_i64(1, prec);
        for k in 2..=n {
            acc *= Self::from_i64(k as i64, prec);
        }
        acc
    }
}

fn parse_sci_string(s: &str) -> DecimalDigits {
    let (negative, body) = match s.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, s.strip_prefix('+').unwrap_or(s)),
    };
    let (mantissa, exp) = match body.find(['e', 'E', '@']) {
        Some(i) => (&body[..i], body[i + 1..].parse::<i32>().unwrap_or(0)),
        None => (body, 0),
    };
    let point = mantissa.find('.').unwrap_or(mantissa.len());
    let mut digits: Vec<u8> = mantissa
        .bytes()
        .filter(u8::is_ascii_digit)
        .map(|b| b - b'0')
        .collect();
    // value = 0.digits × 10^(point + exp), then normalise leading zeros away
    let mut exp10 = point as i32 + exp;
    let lead = digits.iter().take_while(|&&d| d == 0).count();
    if lead == digits.len() {
        return DecimalDigits {
            negative: false,
            digits: Vec::new(),
            exp10: 0,
        };
    }
    digits.drain(..lead);
    exp10 -= lead as i32;
    while digits.last() == Some(&0) {
        digits.pop();
    }
    DecimalDigits {
        negative,
        digits,
        exp10,
    }
}

impl Real for f64 {
    fn effective_bits(_prec: Precision) -> u32 {
        53
    }

    fn from_f64(x: f64, _prec: Precision) -> Self {
        x
    }

    fn from_i64(n: i64, _prec: Precision) -> Self {
        n as f64
    }

    fn parse_decimal(text: &str, _prec: Precision) -> Option<Self> {
        text.parse::<f64>().ok().filter(|v| v.is_finite())
    }

    fn with_precision(&self, _prec: Precision) -> Self {
        *self
    }

    fn sqrt(&self) -> Self {
        f64::sqrt(*self)
    }

    fn abs(&self) -> Self {
        f64::abs(*self)
    }

    fn powi(&self, n: i32) -> Self {
        f64::powi(*self, n)
    }

    fn ln(&self) -> Self {
        f64::ln(*self)
    }

    fn is_finite(&self) -> bool {
        f64::is_finite(*self)
    }

    fn ulp(&self) -> Self {
        let a = f64::abs(*self);
        if a == 0.0 {
            return f64::from_bits(1);
        }
        f64::from_bits(a.to_bits() + 1) - a
    }

    fn decimal_digits(&self, sig: usize) -> DecimalDigits {
        let sig = sig.max(1);
        parse_sci_string(&format!("{:.*e}", sig - 1, self))
    }
}

/// Multiprecision float with per-value precision.
///
/// Binary operations round to the larger of the two operand precisions, so
/// `BigFloat::zero()` and `BigFloat::one()` (created at the minimum
/// precision) combine with working-precision values without loss.
#[derive(Clone, PartialEq, PartialOrd)]
pub struct BigFloat(rug::Float);

impl BigFloat {
    pub fn new(prec: Precision, value: f64) -> Self {
        BigFloat(rug::Float::with_val(prec.bits(), value))
    }

    pub fn precision(&self) -> u32 {
        self.0.prec()
    }

    pub fn inner(&self) -> &rug::Float {
        &self.0
    }

    fn exact(value: i32) -> Self {
        BigFloat(rug::Float::with_val(32, value))
    }
}

impl fmt::Debug for BigFloat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BigFloat({})", self)
    }
}

impl fmt::Display for BigFloat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        // shortest digit count that still identifies the binary value
        let digits = (self.0.prec() as f64 * std::f64::consts::LOG10_2).ceil() as usize + 1;
        write!(f, "{}", self.0.to_string_radix(10, Some(digits)))
    }
}

macro_rules! big_binop {
    ($trait:ident, $method:ident, $assign_trait:ident, $assign_method:ident, $op:tt) => {
        impl $trait for BigFloat {
            type Output = BigFloat;
            fn $method(self, rhs: BigFloat) -> BigFloat {
                let p = self.0.prec().max(rhs.0.prec());
                BigFloat(rug::Float::with_val(p, &self.0 $op &rhs.0))
            }
        }
        impl<'a> $trait<&'a BigFloat> for BigFloat {
            type Output = BigFloat;
            fn $method(self, rhs: &'a BigFloat) -> BigFloat {
                let p = self.0.prec().max(rhs.0.prec());
                BigFloat(rug::Float::with_val(p, &self.0 $op &rhs.0))
            }
        }
        impl<'a, 'b> $trait<&'b BigFloat> for &'a BigFloat {
            type Output = BigFloat;
            fn $method(self, rhs: &'b BigFloat) -> BigFloat {
                let p = self.0.prec().max(rhs.0.prec());
                BigFloat(rug::Float::with_val(p, &self.0 $op &rhs.0))
            }
        }
        impl $assign_trait for BigFloat {
            fn $assign_method(&mut self, rhs: BigFloat) {
                let p = self.0.prec().max(rhs.0.prec());
                self.0 = rug::Float::with_val(p, &self.0 $op &rhs.0);
            }
        }
        impl<'a> $assign_trait<&'a BigFloat> for BigFloat {
            fn $assign_method(&mut self, rhs: &'a BigFloat) {
                let p = self.0.prec().max(rhs.0.prec());
                self.0 = rug::Float::with_val(p, &self.0 $op &rhs.0);
            }
        }
    };
}

big_binop!(Add, add, AddAssign, add_assign, +);
big_binop!(Sub, sub, SubAssign, sub_assign, -);
big_binop!(Mul, mul, MulAssign, mul_assign, *);
big_binop!(Div, div, DivAssign, div_assign, /);

impl Neg for BigFloat {
    type Output = BigFloat;
    fn neg(self) -> BigFloat {
        BigFloat(-self.0)
    }
}

impl Zero for BigFloat {
    fn zero() -> Self {
        BigFloat::exact(0)
    }
    fn is_zero(&self) -> bool {
        self.0.is_zero()
    }
}

impl One for BigFloat {
    fn one() -> Self {
        BigFloat::exact(1)
    }
}

impl ToPrimitive for BigFloat {
    fn to_i64(&self) -> Option<i64> {
        self.0.to_i32_saturating().map(i64::from)
    }
    fn to_u64(&self) -> Option<u64> {
        self.0
            .to_i32_saturating()
            .and_then(|v| u64::try_from(v).ok())
    }
    fn to_f64(&self) -> Option<f64> {
        Some(self.0.to_f64())
    }
}

impl Real for BigFloat {
    fn effective_bits(prec: Precision) -> u32 {
        prec.bits()
    }

    fn from_f64(x: f64, prec: Precision) -> Self {
        BigFloat(rug::Float::with_val(prec.bits(), x))
    }

    fn from_i64(n: i64, prec: Precision) -> Self {
        BigFloat(rug::Float::with_val(prec.bits(), n))
    }

    fn parse_decimal(text: &str, prec: Precision) -> Option<Self> {
        let parsed = rug::Float::parse(text).ok()?;
        let v = rug::Float::with_val(prec.bits(), parsed);
        v.is_finite().then_some(BigFloat(v))
    }

    fn with_precision(&self, prec: Precision) -> Self {
        let mut v = self.0.clone();
        v.set_prec_round(prec.bits(), Round::Nearest);
        BigFloat(v)
    }

    fn sqrt(&self) -> Self {
        BigFloat(rug::Float::with_val(self.0.prec(), self.0.sqrt_ref()))
    }

    fn abs(&self) -> Self {
        BigFloat(self.0.clone().abs())
    }

    fn powi(&self, n: i32) -> Self {
        BigFloat(rug::Float::with_val(self.0.prec(), (&self.0).pow(n)))
    }

    fn ln(&self) -> Self {
        BigFloat(rug::Float::with_val(self.0.prec(), self.0.ln_ref()))
    }

    fn is_finite(&self) -> bool {
        self.0.is_finite()
    }

    fn ulp(&self) -> Self {
        let prec = self.0.prec() as i32;
        let exp = self.0.get_exp().unwrap_or(-(prec + 1));
        let two = rug::Float::with_val(32, 2);
        BigFloat(rug::Float::with_val(32, two.pow(exp - prec)))
    }

    fn decimal_digits(&self, sig: usize) -> DecimalDigits {
        parse_sci_string(&self.0.to_string_radix(10, Some(sig.max(1))))
    }
}

/// Rounds decimal digits to `sig` significant digits, half away from zero.
pub fn round_significant(d: &DecimalDigits, sig: usize) -> DecimalDigits {
    let sig = sig.max(1);
    if d.digits.len() <= sig {
        return d.clone();
    }
    let mut kept: Vec<u8> = d.digits[..sig].to_vec();
    let mut exp10 = d.exp10;
    if d.digits[sig] >= 5 {
        let mut i = sig;
        loop {
            if i == 0 {
                kept.insert(0, 1);
                kept.pop();
                exp10 += 1;
                break;
            }
            i -= 1;
            if kept[i] == 9 {
                kept[i] = 0;
            } else {
                kept[i] += 1;
                break;
            }
        }
    }
    while kept.last() == Some(&0) {
        kept.pop();
    }
    DecimalDigits {
        negative: d.negative && !kept.is_empty(),
        digits: kept,
        exp10,
    }
}

/// Rounds to `places` digits after the decimal point, half away from zero.
pub fn round_places(d: &DecimalDigits, places: i32) -> DecimalDigits {
    let sig = d.exp10 + places;
    if d.digits.is_empty() {
        return d.clone();
    }
    if sig < 0 {
        return DecimalDigits {
            negative: false,
            digits: Vec::new(),
            exp10: 0,
        };
    }
    if sig == 0 {
        // only the rounding digit remains
        return if d.digits[0] >= 5 {
            DecimalDigits {
                negative: d.negative,
                digits: vec![1],
                exp10: d.exp10 + 1,
            }
        } else {
            DecimalDigits {
                negative: false,
                digits: Vec::new(),
                exp10: 0,
            }
        };
    }
    round_significant(d, sig as usize)
}

/// Plain positional rendering with exactly `places` fractional digits.
pub fn format_places(d: &DecimalDigits, places: usize) -> String {
    let r = round_places(d, places as i32);
    // digit multiplying 10^k
    let digit_at = |k: i32| -> char {
        let i = r.exp10 - 1 - k;
        let v = if i >= 0 { r.digits.get(i as usize).copied().unwrap_or(0) } else { 0 };
        (b'0' + v) as char
    };
    let top = (r.exp10 - 1).max(0);
    let int_part: String = (0..=top).rev().map(digit_at).collect();
    let frac_part: String = (1..=places as i32).map(|k| digit_at(-k)).collect();
    let sign = if r.negative { "-" } else { "" };
    if places == 0 {
        format!("{sign}{int_part}")
    } else {
        format!("{sign}{int_part}.{frac_part}")
    }
}

/// Scientific rendering `±d.ddd…e±x` with `sig` significant digits.
pub fn format_significant(d: &DecimalDigits, sig: usize) -> String {
    let r = round_significant(d, sig);
    if r.digits.is_empty() {
        return "0".to_string();
    }
    let mut mant = String::new();
    for i in 0..sig.max(1) {
        if i == 1 {
            mant.push('.');
        }
        mant.push((b'0' + r.digits.get(i).copied().unwrap_or(0)) as char);
    }
    let sign = if r.negative { "-" } else { "" };
    format!("{sign}{mant}e{}", r.exp10 - 1)
}

/// Convenience: value rendered with `sig` significant digits.
pub fn to_sig_string<T: Real>(x: &T, sig: usize) -> String {
    format_significant(&x.decimal_digits(sig + 12), sig)
}

/// Convenience: value rendered with `places` fractional digits.
pub fn to_places_string<T: Real>(x: &T, places: usize) -> String {
    let d = x.decimal_digits(40);
    format_places(&d, places)
}
