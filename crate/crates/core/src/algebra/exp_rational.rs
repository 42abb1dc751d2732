use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::laurent::LaurentPoly;
use super::poly;
use super::AlgebraError;
use crate::scalar::{ExtendedFloat, QuadraticNumber, ScalarError};

/// Rational function of `E = e^{κx}` with coefficients in Q(√d).
///
/// Always held in canonical form: the denominator is a monic polynomial in
/// `E` with a nonzero constant term, and shares no factor with the numerator.
/// Zero is `0/1`. Two values with the same rate are equal as functions iff
/// they are structurally equal.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ExpRational {
    num: LaurentPoly,
    den: LaurentPoly,
    rate: QuadraticNumber,
}

impl ExpRational {
    /// Builds `num/den` and reduces it to canonical form.
    pub fn new(num: LaurentPoly, den: LaurentPoly, rate: QuadraticNumber) -> Result<Self, AlgebraError> {
        if den.is_zero() {
            return Err(AlgebraError::ZeroDenominator);
        }
        let mut radicand = rate.radicand();
        for d in [num.radicand()?, den.radicand()?] {
            if d != 1 && radicand != 1 && d != radicand {
                return Err(ScalarError::RadicandMismatch { left: radicand, right: d }.into());
            }
            radicand = radicand.max(d);
        }
        Ok(Self::reduce(num, den, rate))
    }

    pub fn zero(rate: QuadraticNumber) -> Self {
        Self { num: LaurentPoly::zero(), den: LaurentPoly::one(), rate }
    }

    pub fn one(rate: QuadraticNumber) -> Self {
        Self::constant(QuadraticNumber::one(), rate)
    }

    pub fn constant(c: QuadraticNumber, rate: QuadraticNumber) -> Self {
        Self { num: LaurentPoly::constant(c), den: LaurentPoly::one(), rate }
    }

    /// `E^m`.
    pub fn exp_power(m: i64, rate: QuadraticNumber) -> Self {
        Self { num: LaurentPoly::monomial(QuadraticNumber::one(), m), den: LaurentPoly::one(), rate }
    }

    pub fn from_laurent(p: LaurentPoly, rate: QuadraticNumber) -> Result<Self, AlgebraError> {
        Self::new(p, LaurentPoly::one(), rate)
    }

    pub fn numerator(&self) -> &LaurentPoly {
        &self.num
    }

    pub fn denominator(&self) -> &LaurentPoly {
        &self.den
    }

    pub fn rate(&self) -> &QuadraticNumber {
        &self.rate
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// The value if this is a constant function.
    pub fn as_constant(&self) -> Option<QuadraticNumber> {
        if self.num.is_constant() && self.den.is_constant() {
            Some(self.num.coefficient(0))
        } else {
            None
        }
    }

    /// Canonical form of `num/den`. `den` must be nonzero and radicands consistent.
    fn reduce(num: LaurentPoly, den: LaurentPoly, rate: QuadraticNumber) -> Self {
        if num.is_zero() {
            return Self::zero(rate);
        }
        let shift = -den.min_exponent().expect("nonzero denominator");
        let num = num.shift(shift);
        let den = den.shift(shift);
        let low = num.min_exponent().expect("nonzero numerator");
        let mut p = num.shift(-low).to_dense();
        let mut d = den.to_dense();
        if d.len() > 1 && p.len() > 1 {
            let g = poly::gcd(&p, &d);
            if g.len() > 1 {
                p = poly::exact_div(&p, &g);
                d = poly::exact_div(&d, &g);
            }
        }
        let lead = d.last().cloned().expect("nonzero denominator");
        if !lead.is_one() {
            let inv = lead.inverse().expect("nonzero leading coefficient");
            for c in p.iter_mut().chain(d.iter_mut()) {
                *c = &*c * &inv;
            }
        }
        Self { num: LaurentPoly::from_dense(p).shift(low), den: LaurentPoly::from_dense(d), rate }
    }

    /// Re-runs canonicalization. Values are always canonical, so this is the identity;
    /// exposed so callers and tests can state that explicitly.
    pub fn gcd_reduce(&self) -> Self {
        Self::reduce(self.num.clone(), self.den.clone(), self.rate.clone())
    }

    fn check_rate(&self, other: &Self) -> Result<(), AlgebraError> {
        if self.rate != other.rate {
            return Err(AlgebraError::RateMismatch { left: self.rate.to_string(), right: other.rate.to_string() });
        }
        Ok(())
    }

    pub fn try_add(&self, other: &Self) -> Result<Self, AlgebraError> {
        self.check_rate(other)?;
        if other.is_zero() {
            return Ok(self.clone());
        }
        if self.is_zero() {
            return Ok(other.clone());
        }
        if self.den == other.den {
            let num = self.num.checked_add(&other.num)?;
            return Ok(Self::reduce(num, self.den.clone(), self.rate.clone()));
        }
        // a/b + c/d over lcm(b, d).
        let b = self.den.to_dense();
        let d = other.den.to_dense();
        let g = poly::gcd(&b, &d);
        let (b_rest, d_rest) = if g.len() > 1 {
            (LaurentPoly::from_dense(poly::exact_div(&b, &g)), LaurentPoly::from_dense(poly::exact_div(&d, &g)))
        } else {
            (self.den.clone(), other.den.clone())
        };
        let num = self.num.checked_mul(&d_rest)?.checked_add(&other.num.checked_mul(&b_rest)?)?;
        let den = self.den.checked_mul(&d_rest)?;
        Ok(Self::reduce(num, den, self.rate.clone()))
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self, AlgebraError> {
        self.try_add(&-other)
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self, AlgebraError> {
        self.check_rate(other)?;
        if self.is_zero() || other.is_zero() {
            return Ok(Self::zero(self.rate.clone()));
        }
        let num = self.num.checked_mul(&other.num)?;
        let den = self.den.checked_mul(&other.den)?;
        Ok(Self::reduce(num, den, self.rate.clone()))
    }

    pub fn try_div(&self, other: &Self) -> Result<Self, AlgebraError> {
        self.try_mul(&other.recip()?)
    }

    pub fn recip(&self) -> Result<Self, AlgebraError> {
        if self.is_zero() {
            return Err(AlgebraError::DivisionByZero);
        }
        Ok(Self::reduce(self.den.clone(), self.num.clone(), self.rate.clone()))
    }

    pub fn scale(&self, c: &QuadraticNumber) -> Result<Self, AlgebraError> {
        if c.is_zero() {
            return Ok(Self::zero(self.rate.clone()));
        }
        // Scaling by a nonzero constant cannot introduce a common factor.
        Ok(Self { num: self.num.checked_scale(c)?, den: self.den.clone(), rate: self.rate.clone() })
    }

    pub fn powi(&self, n: i32) -> Result<Self, AlgebraError> {
        let base = if n < 0 { self.recip()? } else { self.clone() };
        // Powers of coprime parts stay coprime, so no reduction is needed.
        let k = n.unsigned_abs();
        Ok(Self { num: base.num.pow(k), den: base.den.pow(k), rate: base.rate })
    }

    /// `d/dx` by the quotient rule, with `dE^m/dx = mκE^m`.
    pub fn diff_x(&self) -> Self {
        let dn = self.num.diff_x(&self.rate).expect("rate radicand checked at construction");
        if self.den.is_constant() {
            return Self::reduce(dn, self.den.clone(), self.rate.clone());
        }
        let dd = self.den.diff_x(&self.rate).expect("rate radicand checked at construction");
        let num = &(&dn * &self.den) - &(&self.num * &dd);
        Self::reduce(num, self.den.pow(2), self.rate.clone())
    }

    /// Value at `x`, with relative error below `10^-(digits-4)` for well-conditioned inputs.
    pub fn eval(&self, x: &ExtendedFloat, digits: u32) -> Result<ExtendedFloat, AlgebraError> {
        let work = digits + 10;
        let e = (&self.rate.to_float(work) * &x.with_digits(work)).exp();
        Ok(self.eval_at_e(&e)?.with_digits(digits))
    }

    /// Value at a given `E`, at the precision of `e`.
    pub fn eval_at_e(&self, e: &ExtendedFloat) -> Result<ExtendedFloat, AlgebraError> {
        let den = self.den.eval(e);
        if den.is_zero() || !den.is_finite() {
            return Err(AlgebraError::Evaluation(format!("denominator {} vanishes", self.den)));
        }
        Ok(&self.num.eval(e) / &den)
    }
}

macro_rules! forward_op {
    ($tr:ident, $method:ident, $checked:ident) => {
        impl $tr<&ExpRational> for &ExpRational {
            type Output = ExpRational;
            fn $method(self, rhs: &ExpRational) -> ExpRational {
                match self.$checked(rhs) {
                    Ok(v) => v,
                    Err(e) => panic!("{e}"),
                }
            }
        }
        impl $tr<ExpRational> for ExpRational {
            type Output = ExpRational;
            fn $method(self, rhs: ExpRational) -> ExpRational {
                (&self).$method(&rhs)
            }
        }
    };
}

forward_op!(Add, add, try_add);
forward_op!(Sub, sub, try_sub);
forward_op!(Mul, mul, try_mul);

impl Neg for &ExpRational {
    type Output = ExpRational;
    fn neg(self) -> ExpRational {
        ExpRational { num: -&self.num, den: self.den.clone(), rate: self.rate.clone() }
    }
}

impl Neg for ExpRational {
    type Output = ExpRational;
    fn neg(self) -> ExpRational {
        -&self
    }
}

impl fmt::Display for ExpRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_constant() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}

impl fmt::Debug for ExpRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ExpRational[κ={}]({self})", self.rate)
    }
}
