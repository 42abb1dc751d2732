use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Roots;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::{ExtendedFloat, ScalarError};

/// An element `rational + radical·√radicand` of the field Q(√d).
///
/// `radicand` is square-free. Purely rational values are stored with
/// `radicand = 1` and a zero radical part, so structural equality is value
/// equality. A rational operand combines with any radicand; two irrational
/// operands must agree on it.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct QuadraticNumber {
    rational: BigRational,
    radical: BigRational,
    radicand: u64,
}

/// Splits `n` into `(s, d)` with `n = s²·d` and `d` square-free.
///
/// Trial division runs up to the cube root; the cofactor left after that has
/// at most two prime factors, so it is square-free unless it is a perfect square.
pub fn square_free_decomposition(n: u64) -> (u64, u64) {
    if n == 0 {
        return (0, 0);
    }
    let mut rest = n;
    let mut square = 1u64;
    let mut free = 1u64;
    let mut p = 2u64;
    while p.saturating_mul(p).saturating_mul(p) <= n && rest > 1 {
        let mut count = 0;
        while rest % p == 0 {
            rest /= p;
            count += 1;
        }
        for _ in 0..count / 2 {
            square *= p;
        }
        if count % 2 == 1 {
            free *= p;
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if rest > 1 {
        let r = rest.sqrt();
        if r * r == rest {
            square *= r;
        } else {
            free *= rest;
        }
    }
    (square, free)
}

impl QuadraticNumber {
    /// Builds `a + b·√d`, pulling square factors out of `d`.
    pub fn new(rational: BigRational, radical: BigRational, radicand: u64) -> Self {
        let (s, d) = square_free_decomposition(radicand);
        let radical = radical * BigRational::from_integer(BigInt::from(s));
        match d {
            0 => Self::from_rational(rational),
            1 => Self::from_rational(rational + radical),
            _ if radical.is_zero() => Self::from_rational(rational),
            _ => Self { rational, radical, radicand: d },
        }
    }

    pub fn from_rational(r: BigRational) -> Self {
        Self { rational: r, radical: BigRational::zero(), radicand: 1 }
    }

    pub fn from_integer(i: i64) -> Self {
        Self::from_rational(BigRational::from_integer(i.into()))
    }

    pub fn from_fraction(n: i64, d: i64) -> Self {
        Self::from_rational(BigRational::new(n.into(), d.into()))
    }

    pub fn zero() -> Self {
        Self::from_integer(0)
    }

    pub fn one() -> Self {
        Self::from_integer(1)
    }

    /// `√n` for a positive integer `n`.
    pub fn sqrt_of(n: u64) -> Self {
        Self::new(BigRational::zero(), BigRational::one(), n)
    }

    /// Exact square root of a nonnegative rational, `√(p/q) = √(pq)/q`.
    pub fn sqrt_rational(r: &BigRational) -> Result<Self, ScalarError> {
        if r.is_negative() {
            return Err(ScalarError::Domain(format!("square root of negative rational {r}")));
        }
        let pq = r.numer() * r.denom();
        let pq = pq
            .to_u64()
            .ok_or_else(|| ScalarError::Domain(format!("radicand {pq} exceeds the supported range")))?;
        let q = BigRational::from_integer(r.denom().clone());
        Ok(Self::new(BigRational::zero(), q.recip(), pq))
    }

    pub fn rational_part(&self) -> &BigRational {
        &self.rational
    }

    pub fn radical_part(&self) -> &BigRational {
        &self.radical
    }

    /// Square-free radicand; 1 for rational values.
    pub fn radicand(&self) -> u64 {
        self.radicand
    }

    pub fn is_rational(&self) -> bool {
        self.radical.is_zero()
    }

    pub fn is_zero(&self) -> bool {
        self.rational.is_zero() && self.radical.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.radical.is_zero() && self.rational.is_one()
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        self.is_rational().then_some(&self.rational)
    }

    pub fn conjugate(&self) -> Self {
        Self { rational: self.rational.clone(), radical: -&self.radical, radicand: self.radicand }
    }

    /// Field norm `a² − b²d`.
    pub fn norm(&self) -> BigRational {
        &self.rational * &self.rational
            - &self.radical * &self.radical * BigRational::from_integer(self.radicand.into())
    }

    /// Radicand shared by two operands, if they are compatible.
    pub fn common_radicand(&self, other: &Self) -> Result<u64, ScalarError> {
        match (self.is_rational(), other.is_rational()) {
            (true, _) => Ok(other.radicand),
            (_, true) => Ok(self.radicand),
            _ if self.radicand == other.radicand => Ok(self.radicand),
            _ => Err(ScalarError::RadicandMismatch { left: self.radicand, right: other.radicand }),
        }
    }

    fn assemble(rational: BigRational, radical: BigRational, radicand: u64) -> Self {
        if radical.is_zero() || radicand == 1 {
            Self::from_rational(rational + radical)
        } else {
            Self { rational, radical, radicand }
        }
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self, ScalarError> {
        let d = self.common_radicand(other)?;
        Ok(Self::assemble(&self.rational + &other.rational, &self.radical + &other.radical, d))
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self, ScalarError> {
        let d = self.common_radicand(other)?;
        Ok(Self::assemble(&self.rational - &other.rational, &self.radical - &other.radical, d))
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self, ScalarError> {
        let d = self.common_radicand(other)?;
        let dr = BigRational::from_integer(d.into());
        let rational = &self.rational * &other.rational + &self.radical * &other.radical * dr;
        let radical = &self.rational * &other.radical + &self.radical * &other.rational;
        Ok(Self::assemble(rational, radical, d))
    }

    pub fn inverse(&self) -> Result<Self, ScalarError> {
        if self.is_zero() {
            return Err(ScalarError::DivisionByZero);
        }
        let n = self.norm();
        Ok(Self::assemble(&self.rational / &n, -&self.radical / &n, self.radicand))
    }

    pub fn checked_div(&self, other: &Self) -> Result<Self, ScalarError> {
        self.common_radicand(other)?;
        self.checked_mul(&other.inverse()?)
    }

    pub fn scale(&self, r: &BigRational) -> Self {
        Self::assemble(&self.rational * r, &self.radical * r, self.radicand)
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    /// Exact sign: -1, 0 or 1.
    pub fn signum(&self) -> i8 {
        let sa = sign_of(&self.rational);
        let sb = sign_of(&self.radical);
        if sb == 0 || sa == sb {
            return if sa != 0 { sa } else { sb };
        }
        if sa == 0 {
            return sb;
        }
        // Opposite signs: compare a² against b²d.
        let a2 = &self.rational * &self.rational;
        let b2d = &self.radical * &self.radical * BigRational::from_integer(self.radicand.into());
        match a2.cmp(&b2d) {
            Ordering::Greater => sa,
            Ordering::Less => sb,
            Ordering::Equal => 0,
        }
    }

    pub fn is_negative(&self) -> bool {
        self.signum() < 0
    }

    pub fn is_positive(&self) -> bool {
        self.signum() > 0
    }

    /// Numeric value to `digits` significant digits.
    ///
    /// When the two parts have opposite signs the value is computed as
    /// `norm / (a − b√d)`, whose terms share a sign, so no cancellation occurs.
    pub fn to_float(&self, digits: u32) -> ExtendedFloat {
        let work = digits + 4;
        let a = ExtendedFloat::from_rational(&self.rational, work);
        if self.is_rational() {
            return a.with_digits(digits);
        }
        let root = ExtendedFloat::from_i64(self.radicand as i64, work).sqrt();
        let b_root = &ExtendedFloat::from_rational(&self.radical, work) * &root;
        let same_sign = sign_of(&self.rational) * sign_of(&self.radical) >= 0;
        let v = if same_sign {
            &a + &b_root
        } else {
            let n = ExtendedFloat::from_rational(&self.norm(), work);
            &n / &(&a - &b_root)
        };
        v.with_digits(digits)
    }
}

fn sign_of(r: &BigRational) -> i8 {
    if r.is_zero() {
        0
    } else if r.is_negative() {
        -1
    } else {
        1
    }
}

impl PartialOrd for QuadraticNumber {
    /// `None` when the operands live in different fields.
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        let diff = self.checked_sub(other).ok()?;
        Some(diff.signum().cmp(&0))
    }
}

impl From<BigRational> for QuadraticNumber {
    fn from(r: BigRational) -> Self {
        Self::from_rational(r)
    }
}

impl From<i64> for QuadraticNumber {
    fn from(i: i64) -> Self {
        Self::from_integer(i)
    }
}

impl Zero for QuadraticNumber {
    fn zero() -> Self {
        QuadraticNumber::zero()
    }
    fn is_zero(&self) -> bool {
        QuadraticNumber::is_zero(self)
    }
}

impl One for QuadraticNumber {
    fn one() -> Self {
        QuadraticNumber::one()
    }
}

// The operator impls panic on mismatched radicands or division by zero; use
// the `checked_*` methods where that is a recoverable condition.
macro_rules! forward_op {
    ($tr:ident, $method:ident, $checked:ident) => {
        impl $tr<&QuadraticNumber> for &QuadraticNumber {
            type Output = QuadraticNumber;
            fn $method(self, rhs: &QuadraticNumber) -> QuadraticNumber {
                match self.$checked(rhs) {
                    Ok(v) => v,
                    Err(e) => panic!("{e}"),
                }
            }
        }
        impl $tr<QuadraticNumber> for QuadraticNumber {
            type Output = QuadraticNumber;
            fn $method(self, rhs: QuadraticNumber) -> QuadraticNumber {
                (&self).$method(&rhs)
            }
        }
        impl $tr<&QuadraticNumber> for QuadraticNumber {
            type Output = QuadraticNumber;
            fn $method(self, rhs: &QuadraticNumber) -> QuadraticNumber {
                (&self).$method(rhs)
            }
        }
        impl $tr<QuadraticNumber> for &QuadraticNumber {
            type Output = QuadraticNumber;
            fn $method(self, rhs: QuadraticNumber) -> QuadraticNumber {
                self.$method(&rhs)
            }
        }
    };
}

forward_op!(Add, add, checked_add);
forward_op!(Sub, sub, checked_sub);
forward_op!(Mul, mul, checked_mul);
forward_op!(Div, div, checked_div);

impl Neg for QuadraticNumber {
    type Output = QuadraticNumber;
    fn neg(self) -> QuadraticNumber {
        QuadraticNumber { rational: -self.rational, radical: -self.radical, radicand: self.radicand }
    }
}

impl Neg for &QuadraticNumber {
    type Output = QuadraticNumber;
    fn neg(self) -> QuadraticNumber {
        -(self.clone())
    }
}

fn write_rational(f: &mut fmt::Formatter<'_>, r: &BigRational) -> fmt::Result {
    if r.is_integer() {
        write!(f, "{}", r.numer())
    } else {
        write!(f, "{}/{}", r.numer(), r.denom())
    }
}

/// Renders as a literal accepted by `FromStr`, e.g. `-4+3*sqrt(3)` or `1/4*sqrt(2)`.
impl fmt::Display for QuadraticNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_rational() {
            return write_rational(f, &self.rational);
        }
        if !self.rational.is_zero() {
            write_rational(f, &self.rational)?;
            if self.radical.is_positive() {
                f.write_str("+")?;
            }
        }
        let b = &self.radical;
        if b.is_one() {
        } else if (-b).is_one() {
            f.write_str("-")?;
        } else {
            write_rational(f, b)?;
            f.write_str("*")?;
        }
        write!(f, "sqrt({})", self.radicand)
    }
}

impl fmt::Debug for QuadraticNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Q({self})")
    }
}
