//! Extended-precision binary floating point.
//!
//! `ExtendedFloat` is a thin value type over `astro_float::BigFloat` that
//! carries its own working precision. Precision is requested in decimal
//! digits and converted to mantissa bits with a fixed block of guard bits, so
//! a number built for `d` digits carries a unit roundoff well below
//! `10^-d`. Binary operations run at the larger precision of the two
//! operands.

use std::cell::RefCell;
use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use astro_float::{BigFloat, Consts, Radix, RoundingMode, Sign, Word};
use num_bigint::{BigInt, BigUint, Sign as IntSign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Pow, Signed, ToPrimitive, Zero};

use super::ScalarError;

/// Default working precision in decimal digits.
pub const DEFAULT_DIGITS: u32 = 30;

const GUARD_BITS: usize = 32;
const RM: RoundingMode = RoundingMode::ToEven;

thread_local! {
    static CONSTS: RefCell<Consts> = RefCell::new(Consts::new().expect("astro-float constant cache"));
}

fn with_consts<T>(f: impl FnOnce(&mut Consts) -> T) -> T {
    CONSTS.with(|cc| f(&mut cc.borrow_mut()))
}

/// Mantissa bits needed to carry `digits` significant decimal digits plus guard bits.
pub fn bits_for_digits(digits: u32) -> usize {
    ((f64::from(digits) * std::f64::consts::LOG2_10).ceil() as usize + GUARD_BITS).max(64)
}

#[derive(Clone)]
pub struct ExtendedFloat {
    value: BigFloat,
    bits: usize,
}

impl ExtendedFloat {
    fn wrap(value: BigFloat, bits: usize) -> Self {
        Self { value, bits }
    }

    pub fn zero(digits: u32) -> Self {
        Self::from_i64(0, digits)
    }

    pub fn one(digits: u32) -> Self {
        Self::from_i64(1, digits)
    }

    pub fn from_i64(v: i64, digits: u32) -> Self {
        let bits = bits_for_digits(digits);
        Self::wrap(BigFloat::from_i64(v, bits), bits)
    }

    pub fn from_f64(v: f64, digits: u32) -> Self {
        let bits = bits_for_digits(digits);
        Self::wrap(BigFloat::from_f64(v, bits), bits)
    }

    pub fn from_bigint(v: &BigInt, digits: u32) -> Self {
        let bits = bits_for_digits(digits);
        Self::wrap(bigint_to_float(v, bits), bits)
    }

    /// Nearest representable value of an exact rational.
    pub fn from_rational(r: &BigRational, digits: u32) -> Self {
        let bits = bits_for_digits(digits);
        let num = bigint_to_float(r.numer(), bits + 64);
        let den = bigint_to_float(r.denom(), bits + 64);
        Self::wrap(num.div(&den, bits, RM), bits)
    }

    /// Parses a decimal literal such as `-1.25e-3`.
    pub fn parse(text: &str, digits: u32) -> Result<Self, ScalarError> {
        let r = super::parse::parse_decimal(text.trim())
            .ok_or_else(|| ScalarError::InvalidLiteral(text.to_string()))?;
        Ok(Self::from_rational(&r, digits))
    }

    /// Working precision in mantissa bits.
    pub fn bits(&self) -> usize {
        self.bits
    }

    /// Working precision in decimal digits (guard bits excluded).
    pub fn digits(&self) -> u32 {
        (self.bits.saturating_sub(GUARD_BITS) as f64 / std::f64::consts::LOG2_10).floor() as u32
    }

    /// Same value rounded to a new working precision.
    pub fn with_digits(&self, digits: u32) -> Self {
        let bits = bits_for_digits(digits);
        let mut v = self.value.clone();
        // Only fails for an out-of-range precision, which bits_for_digits cannot produce.
        let _ = v.set_precision(bits, RM);
        Self::wrap(v, bits)
    }

    pub fn is_zero(&self) -> bool {
        self.value.is_zero()
    }

    pub fn is_negative(&self) -> bool {
        !self.is_zero() && self.value.is_negative()
    }

    pub fn is_finite(&self) -> bool {
        !self.value.is_nan() && !self.value.is_inf()
    }

    pub fn abs(&self) -> Self {
        Self::wrap(self.value.abs(), self.bits)
    }

    pub fn recip(&self) -> Self {
        Self::wrap(self.value.reciprocal(self.bits, RM), self.bits)
    }

    pub fn sqrt(&self) -> Self {
        Self::wrap(self.value.sqrt(self.bits, RM), self.bits)
    }

    pub fn exp(&self) -> Self {
        let v = with_consts(|cc| self.value.exp(self.bits, RM, cc));
        Self::wrap(v, self.bits)
    }

    pub fn ln(&self) -> Self {
        let v = with_consts(|cc| self.value.ln(self.bits, RM, cc));
        Self::wrap(v, self.bits)
    }

    pub fn tanh(&self) -> Self {
        let v = with_consts(|cc| self.value.tanh(self.bits, RM, cc));
        Self::wrap(v, self.bits)
    }

    /// Integer power; negative exponents go through the reciprocal.
    pub fn powi(&self, n: i64) -> Self {
        let p = self.value.powi(n.unsigned_abs() as usize, self.bits + 16, RM);
        let p = Self::wrap(p, self.bits + 16);
        let p = if n < 0 { p.recip() } else { p };
        let mut v = p.value;
        let _ = v.set_precision(self.bits, RM);
        Self::wrap(v, self.bits)
    }

    /// Real `n`-th root of a nonnegative value.
    pub fn nth_root(&self, n: u32) -> Result<Self, ScalarError> {
        if self.is_negative() {
            return Err(ScalarError::Domain("fractional root of a negative number".into()));
        }
        if n == 0 {
            return Err(ScalarError::Domain("zeroth root".into()));
        }
        if self.is_zero() || n == 1 {
            return Ok(self.clone());
        }
        let inv = Self::wrap(BigFloat::from_i64(i64::from(n), self.bits), self.bits).recip();
        Ok((&self.ln() * &inv).exp())
    }

    pub fn max(self, other: Self) -> Self {
        if other > self {
            other
        } else {
            self
        }
    }

    /// Exact rational value of the binary float. `None` for NaN or infinities.
    pub fn to_rational(&self) -> Option<BigRational> {
        if self.value.is_zero() {
            return Some(BigRational::zero());
        }
        let (words, _, sign, exponent, _) = self.value.as_raw_parts()?;
        let mut digits: Vec<u32> = Vec::with_capacity(words.len() * 2);
        for w in words {
            let w = *w;
            digits.push(w as u32);
            digits.push((w >> 32) as u32);
        }
        let mantissa = BigInt::from_biguint(IntSign::Plus, BigUint::new(digits));
        let shift = i64::from(exponent) - (words.len() * Word::BITS as usize) as i64;
        let mut r = if shift >= 0 {
            BigRational::from_integer(mantissa << shift as usize)
        } else {
            BigRational::new(mantissa, BigInt::one() << (-shift) as usize)
        };
        if sign == Sign::Neg {
            r = -r;
        }
        Some(r)
    }

    pub fn to_f64(&self) -> f64 {
        match self.to_rational() {
            Some(r) => r.to_f64().unwrap_or(f64::NAN),
            None if self.value.is_inf_pos() => f64::INFINITY,
            None if self.value.is_inf_neg() => f64::NEG_INFINITY,
            None => f64::NAN,
        }
    }

    /// Scientific notation with `sig` significant digits in the style of
    /// Rust's `{:e}` (`1.693168743e-2`), correctly rounded from the exact
    /// binary value (ties away from zero).
    pub fn to_sci_string(&self, sig: usize) -> String {
        let sig = sig.max(1);
        let r = match self.to_rational() {
            Some(r) => r,
            None => return format!("{}", self.to_f64()),
        };
        if r.is_zero() {
            let frac = if sig > 1 { format!(".{}", "0".repeat(sig - 1)) } else { String::new() };
            return format!("0{frac}e0");
        }
        let neg = r.is_negative();
        let r = r.abs();
        let ten = BigInt::from(10);
        let lower = ten.clone().pow((sig - 1) as u32);
        let upper = ten.clone().pow(sig as u32);
        let nb = r.numer().bits() as f64;
        let db = r.denom().bits() as f64;
        let mut exp10 = ((nb - db) * std::f64::consts::LOG10_2).floor() as i64;
        let digits = loop {
            // q = round(r * 10^(sig - 1 - exp10))
            let shift = sig as i64 - 1 - exp10;
            let scaled = if shift >= 0 {
                &r * BigRational::from_integer(ten.clone().pow(shift as u32))
            } else {
                &r / BigRational::from_integer(ten.clone().pow((-shift) as u32))
            };
            let q = round_half_away(&scaled);
            if q >= upper {
                exp10 += 1;
            } else if q < lower {
                exp10 -= 1;
            } else {
                break q;
            }
        };
        let s = digits.to_string();
        let (head, tail) = s.split_at(1);
        let mut out = String::new();
        if neg {
            out.push('-');
        }
        out.push_str(head);
        if !tail.is_empty() {
            out.push('.');
            out.push_str(tail);
        }
        out.push_str(&format!("e{exp10}"));
        out
    }
}

fn round_half_away(r: &BigRational) -> BigInt {
    let (q, rem) = r.numer().div_rem(r.denom());
    let twice = rem.abs() * 2u32;
    if &twice >= r.denom() {
        q + 1
    } else {
        q
    }
}

fn bigint_to_float(v: &BigInt, bits: usize) -> BigFloat {
    if let Some(small) = v.to_i64() {
        return BigFloat::from_i64(small, bits.max(64));
    }
    let (sign, mag) = v.to_u64_digits();
    let words: Vec<Word> = mag.iter().map(|w| *w as Word).collect();
    let s = if sign == IntSign::Minus { Sign::Neg } else { Sign::Pos };
    let e = (words.len() * Word::BITS as usize) as i32;
    let mut f = BigFloat::from_words(&words, s, e);
    let _ = f.set_precision(bits, RM);
    f
}

impl fmt::Debug for ExtendedFloat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ExtendedFloat({})", self)
    }
}

impl fmt::Display for ExtendedFloat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let digits = f.precision().unwrap_or(self.digits() as usize);
        if self.is_finite() {
            f.write_str(&self.to_sci_string(digits))
        } else {
            let s = with_consts(|cc| self.value.format(Radix::Dec, RM, cc)).unwrap_or_else(|_| "NaN".into());
            f.write_str(&s)
        }
    }
}

impl PartialEq for ExtendedFloat {
    fn eq(&self, other: &Self) -> bool {
        self.value.cmp(&other.value) == Some(0)
    }
}

impl PartialOrd for ExtendedFloat {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        self.value.cmp(&other.value).map(|c| c.cmp(&0))
    }
}

macro_rules! forward_binop {
    ($tr:ident, $method:ident, $inner:ident) => {
        impl $tr<&ExtendedFloat> for &ExtendedFloat {
            type Output = ExtendedFloat;
            fn $method(self, rhs: &ExtendedFloat) -> ExtendedFloat {
                let bits = self.bits.max(rhs.bits);
                ExtendedFloat::wrap(self.value.$inner(&rhs.value, bits, RM), bits)
            }
        }
        impl $tr<ExtendedFloat> for ExtendedFloat {
            type Output = ExtendedFloat;
            fn $method(self, rhs: ExtendedFloat) -> ExtendedFloat {
                (&self).$method(&rhs)
            }
        }
        impl $tr<&ExtendedFloat> for ExtendedFloat {
            type Output = ExtendedFloat;
            fn $method(self, rhs: &ExtendedFloat) -> ExtendedFloat {
                (&self).$method(rhs)
            }
        }
        impl $tr<ExtendedFloat> for &ExtendedFloat {
            type Output = ExtendedFloat;
            fn $method(self, rhs: ExtendedFloat) -> ExtendedFloat {
                self.$method(&rhs)
            }
        }
    };
}

forward_binop!(Add, add, add);
forward_binop!(Sub, sub, sub);
forward_binop!(Mul, mul, mul);
forward_binop!(Div, div, div);

impl Neg for ExtendedFloat {
    type Output = ExtendedFloat;
    fn neg(self) -> ExtendedFloat {
        ExtendedFloat::wrap(BigFloat::neg(&self.value), self.bits)
    }
}

impl Neg for &ExtendedFloat {
    type Output = ExtendedFloat;
    fn neg(self) -> ExtendedFloat {
        ExtendedFloat::wrap(BigFloat::neg(&self.value), self.bits)
    }
}

/// `|a - b| / max(|a|, |b|)`, zero when both are zero.
pub fn relative_deviation(a: &ExtendedFloat, b: &ExtendedFloat) -> ExtendedFloat {
    let scale = a.abs().max(b.abs());
    if scale.is_zero() {
        return scale;
    }
    (a - b).abs() / scale
}
