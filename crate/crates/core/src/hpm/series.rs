use std::fmt;

use crate::algebra::{AlgebraError, ExpRational};
use crate::scalar::{ExtendedFloat, QuadraticNumber};

/// `Σ a_j(x) t^j` with `ExpRational` coefficients sharing one rate.
///
/// Trailing zero coefficients are trimmed, so zero has no coefficients.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct TimePolynomial {
    coeffs: Vec<ExpRational>,
    rate: QuadraticNumber,
}

impl TimePolynomial {
    pub fn zero(rate: QuadraticNumber) -> Self {
        Self { coeffs: Vec::new(), rate }
    }

    /// A function of x alone.
    pub fn constant(a: ExpRational) -> Self {
        Self::monomial(a, 0)
    }

    /// `a(x) t^j`.
    pub fn monomial(a: ExpRational, j: usize) -> Self {
        let rate = a.rate().clone();
        let mut coeffs = vec![ExpRational::zero(rate.clone()); j];
        coeffs.push(a);
        Self::from_coefficients(coeffs, rate).expect("single rate")
    }

    pub fn from_coefficients(coeffs: Vec<ExpRational>, rate: QuadraticNumber) -> Result<Self, AlgebraError> {
        if let Some(bad) = coeffs.iter().find(|c| c.rate() != &rate) {
            return Err(AlgebraError::RateMismatch { left: rate.to_string(), right: bad.rate().to_string() });
        }
        let mut out = Self { coeffs, rate };
        out.trim();
        Ok(out)
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(ExpRational::is_zero) {
            self.coeffs.pop();
        }
    }

    pub fn rate(&self) -> &QuadraticNumber {
        &self.rate
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coefficients(&self) -> &[ExpRational] {
        &self.coeffs
    }

    pub fn coefficient(&self, j: usize) -> ExpRational {
        self.coeffs.get(j).cloned().unwrap_or_else(|| ExpRational::zero(self.rate.clone()))
    }

    /// True when only the `t^j` coefficient is nonzero.
    pub fn is_monomial_of_degree(&self, j: usize) -> bool {
        self.degree() == Some(j) && self.coeffs[..j].iter().all(ExpRational::is_zero)
    }

    fn check_rate(&self, other: &Self) -> Result<(), AlgebraError> {
        if self.rate != other.rate {
            return Err(AlgebraError::RateMismatch { left: self.rate.to_string(), right: other.rate.to_string() });
        }
        Ok(())
    }

    pub fn try_add(&self, other: &Self) -> Result<Self, AlgebraError> {
        self.check_rate(other)?;
        let len = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..len)
            .map(|j| match (self.coeffs.get(j), other.coeffs.get(j)) {
                (Some(a), Some(b)) => a.try_add(b),
                (Some(a), None) | (None, Some(a)) => Ok(a.clone()),
                (None, None) => unreachable!(),
            })
            .collect::<Result<_, _>>()?;
        Self::from_coefficients(coeffs, self.rate.clone())
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self, AlgebraError> {
        self.try_add(&other.neg())
    }

    /// Cauchy product in t.
    pub fn try_mul(&self, other: &Self) -> Result<Self, AlgebraError> {
        self.check_rate(other)?;
        if self.is_zero() || other.is_zero() {
            return Ok(Self::zero(self.rate.clone()));
        }
        let mut coeffs = vec![ExpRational::zero(self.rate.clone()); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    coeffs[i + j] = coeffs[i + j].try_add(&a.try_mul(b)?)?;
                }
            }
        }
        Self::from_coefficients(coeffs, self.rate.clone())
    }

    pub fn neg(&self) -> Self {
        Self { coeffs: self.coeffs.iter().map(|c| -c).collect(), rate: self.rate.clone() }
    }

    pub fn scale(&self, c: &QuadraticNumber) -> Result<Self, AlgebraError> {
        let coeffs = self.coeffs.iter().map(|a| a.scale(c)).collect::<Result<_, _>>()?;
        Self::from_coefficients(coeffs, self.rate.clone())
    }

    pub fn diff_x(&self) -> Self {
        let coeffs = self.coeffs.iter().map(ExpRational::diff_x).collect();
        Self::from_coefficients(coeffs, self.rate.clone()).expect("rate preserved")
    }

    /// `∫₀ᵗ`: `a_j t^j ↦ a_j t^{j+1}/(j+1)`. The result vanishes at `t = 0`.
    pub fn integrate_t(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let mut coeffs = Vec::with_capacity(self.coeffs.len() + 1);
        coeffs.push(ExpRational::zero(self.rate.clone()));
        for (j, a) in self.coeffs.iter().enumerate() {
            let inv = QuadraticNumber::from_fraction(1, j as i64 + 1);
            coeffs.push(a.scale(&inv).expect("rational scale"));
        }
        Self::from_coefficients(coeffs, self.rate.clone()).expect("rate preserved")
    }

    /// Value at `(x, t)` computed at `digits` significant digits.
    pub fn eval(&self, x: &ExtendedFloat, t: &ExtendedFloat, digits: u32) -> Result<ExtendedFloat, AlgebraError> {
        let work = digits + 10;
        let e = (&self.rate.to_float(work) * &x.with_digits(work)).exp();
        Ok(self.eval_at_e(&e, &t.with_digits(work))?.with_digits(digits))
    }

    /// Horner evaluation in t with `E` already computed.
    pub fn eval_at_e(&self, e: &ExtendedFloat, t: &ExtendedFloat) -> Result<ExtendedFloat, AlgebraError> {
        let mut acc = ExtendedFloat::zero(e.digits());
        for a in self.coeffs.iter().rev() {
            acc = &acc * t;
            if !a.is_zero() {
                acc = &acc + &a.eval_at_e(e)?;
            }
        }
        Ok(acc)
    }
}

impl fmt::Display for TimePolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (j, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            match j {
                0 => write!(f, "[{a}]")?,
                1 => write!(f, "[{a}]*t")?,
                _ => write!(f, "[{a}]*t^{j}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for TimePolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "TimePolynomial[κ={}]({self})", self.rate)
    }
}
