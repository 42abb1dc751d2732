use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::scalar::{ExtendedFloat, QuadraticNumber, ScalarError};

/// Sparse Laurent polynomial `Σ c_m E^m` with coefficients in Q(√d).
///
/// Zero coefficients are never stored.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct LaurentPoly {
    terms: BTreeMap<i64, QuadraticNumber>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(QuadraticNumber::one())
    }

    pub fn constant(c: QuadraticNumber) -> Self {
        Self::monomial(c, 0)
    }

    pub fn monomial(c: QuadraticNumber, exponent: i64) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(exponent, c);
        }
        Self { terms }
    }

    /// Builds from `(exponent, coefficient)` pairs; repeated exponents are summed.
    pub fn from_terms<I>(terms: I) -> Result<Self, ScalarError>
    where
        I: IntoIterator<Item = (i64, QuadraticNumber)>,
    {
        let mut out = Self::zero();
        for (m, c) in terms {
            out.add_term(m, &c)?;
        }
        Ok(out)
    }

    fn add_term(&mut self, m: i64, c: &QuadraticNumber) -> Result<(), ScalarError> {
        if c.is_zero() {
            return Ok(());
        }
        match self.terms.get_mut(&m) {
            Some(existing) => {
                let s = existing.checked_add(c)?;
                if s.is_zero() {
                    self.terms.remove(&m);
                } else {
                    *existing = s;
                }
            }
            None => {
                self.terms.insert(m, c.clone());
            }
        }
        Ok(())
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|&m| m == 0)
    }

    pub fn coefficient(&self, exponent: i64) -> QuadraticNumber {
        self.terms.get(&exponent).cloned().unwrap_or_else(QuadraticNumber::zero)
    }

    /// Terms in increasing exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (i64, &QuadraticNumber)> + '_ {
        self.terms.iter().map(|(m, c)| (*m, c))
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn min_exponent(&self) -> Option<i64> {
        self.terms.keys().next().copied()
    }

    pub fn max_exponent(&self) -> Option<i64> {
        self.terms.keys().next_back().copied()
    }

    /// Coefficient of the highest power of E.
    pub fn leading_coefficient(&self) -> Option<&QuadraticNumber> {
        self.terms.values().next_back()
    }

    /// Radicand shared by all coefficients (1 if all are rational).
    pub fn radicand(&self) -> Result<u64, ScalarError> {
        let mut d = QuadraticNumber::one();
        for c in self.terms.values() {
            if !c.is_rational() {
                d.common_radicand(c)?;
                d = c.clone();
            }
        }
        Ok(d.radicand())
    }

    /// Multiplies by `E^j`.
    pub fn shift(&self, j: i64) -> Self {
        Self { terms: self.terms.iter().map(|(m, c)| (m + j, c.clone())).collect() }
    }

    pub fn checked_scale(&self, c: &QuadraticNumber) -> Result<Self, ScalarError> {
        if c.is_zero() {
            return Ok(Self::zero());
        }
        let mut terms = BTreeMap::new();
        for (m, a) in &self.terms {
            terms.insert(*m, a.checked_mul(c)?);
        }
        Ok(Self { terms })
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self, ScalarError> {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(*m, c)?;
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self, ScalarError> {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(*m, &-c)?;
        }
        Ok(out)
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self, ScalarError> {
        let mut out = Self::zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                out.add_term(ma + mb, &ca.checked_mul(cb)?)?;
            }
        }
        Ok(out)
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    /// `d/dx` where `E = e^{κx}`: each `c E^m` becomes `mκc E^m`.
    pub fn diff_x(&self, rate: &QuadraticNumber) -> Result<Self, ScalarError> {
        let mut out = Self::zero();
        for (m, c) in &self.terms {
            if *m != 0 {
                let k = rate.checked_mul(&QuadraticNumber::from_integer(*m))?;
                out.add_term(*m, &c.checked_mul(&k)?)?;
            }
        }
        Ok(out)
    }

    /// Value at `E = e`, evaluated as `e^min · P(e)` with Horner's rule.
    pub fn eval(&self, e: &ExtendedFloat) -> ExtendedFloat {
        let digits = e.digits();
        let (Some(lo), Some(hi)) = (self.min_exponent(), self.max_exponent()) else {
            return ExtendedFloat::zero(digits);
        };
        let mut acc = ExtendedFloat::zero(digits);
        for m in (lo..=hi).rev() {
            acc = &acc * e;
            if let Some(c) = self.terms.get(&m) {
                acc = &acc + &c.to_float(digits);
            }
        }
        if lo != 0 {
            acc = &acc * &e.powi(lo);
        }
        acc
    }

    /// Coefficients of `E^0..=E^deg`. Requires no negative exponents.
    pub(crate) fn to_dense(&self) -> Vec<QuadraticNumber> {
        debug_assert!(self.min_exponent().map_or(true, |m| m >= 0));
        let deg = self.max_exponent().unwrap_or(-1);
        let mut v = vec![QuadraticNumber::zero(); (deg + 1) as usize];
        for (m, c) in &self.terms {
            v[*m as usize] = c.clone();
        }
        v
    }

    pub(crate) fn from_dense(coeffs: Vec<QuadraticNumber>) -> Self {
        let terms = coeffs
            .into_iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(m, c)| (m as i64, c))
            .collect();
        Self { terms }
    }
}

macro_rules! forward_op {
    ($tr:ident, $method:ident, $checked:ident) => {
        impl $tr<&LaurentPoly> for &LaurentPoly {
            type Output = LaurentPoly;
            fn $method(self, rhs: &LaurentPoly) -> LaurentPoly {
                match self.$checked(rhs) {
                    Ok(v) => v,
                    Err(e) => panic!("{e}"),
                }
            }
        }
        impl $tr<LaurentPoly> for LaurentPoly {
            type Output = LaurentPoly;
            fn $method(self, rhs: LaurentPoly) -> LaurentPoly {
                (&self).$method(&rhs)
            }
        }
    };
}

forward_op!(Add, add, checked_add);
forward_op!(Sub, sub, checked_sub);
forward_op!(Mul, mul, checked_mul);

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly { terms: self.terms.iter().map(|(m, c)| (*m, -c)).collect() }
    }
}

impl Neg for LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        -&self
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (i, (m, c)) in self.terms.iter().rev().enumerate() {
            let (neg, mag) = if c.is_negative() { (true, -c) } else { (false, c.clone()) };
            match (i, neg) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let coeff = if mag.is_rational() { mag.to_string() } else { format!("({mag})") };
            match (*m, mag.is_one()) {
                (0, _) => f.write_str(&coeff)?,
                (_, true) => write!(f, "E^{m}")?,
                (_, false) => write!(f, "{coeff}*E^{m}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LaurentPoly({self})")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64) -> QuadraticNumber {
        QuadraticNumber::from_integer(n)
    }

    fn cosh_kernel() -> LaurentPoly {
        LaurentPoly::from_terms([(1, q(1)), (-1, q(1))]).unwrap()
    }

    #[test]
    fn no_zero_coefficients_are_stored() {
        let p = cosh_kernel();
        let diff = &p - &p;
        assert!(diff.is_zero());
        assert_eq!(LaurentPoly::monomial(q(0), 3).len(), 0);
    }

    #[test]
    fn square_of_kernel() {
        let p = cosh_kernel();
        let sq = &p * &p;
        assert_eq!(sq, LaurentPoly::from_terms([(2, q(1)), (0, q(2)), (-2, q(1))]).unwrap());
        assert_eq!(sq.to_string(), "E^2 + 2 + E^-2");
    }

    #[test]
    fn derivative_scales_by_exponent_and_rate() {
        let rate = QuadraticNumber::from_fraction(1, 4);
        let d = cosh_kernel().diff_x(&rate).unwrap();
        assert_eq!(d, LaurentPoly::from_terms([(1, QuadraticNumber::from_fraction(1, 4)), (-1, QuadraticNumber::from_fraction(-1, 4))]).unwrap());
        assert!(LaurentPoly::constant(q(5)).diff_x(&rate).unwrap().is_zero());
    }

    #[test]
    fn evaluation_handles_negative_exponents() {
        let p = cosh_kernel();
        let e = ExtendedFloat::from_i64(2, 30);
        assert_eq!(p.eval(&e).to_f64(), 2.5);
        assert_eq!(LaurentPoly::zero().eval(&e).to_f64(), 0.0);
    }

    #[test]
    fn mixed_radicands_are_errors() {
        let a = LaurentPoly::constant(QuadraticNumber::sqrt_of(2));
        let b = LaurentPoly::constant(QuadraticNumber::sqrt_of(3));
        assert!(a.checked_mul(&b).is_err());
        assert!(a.checked_add(&b).is_err());
        assert_eq!(a.radicand().unwrap(), 2);
    }
}
