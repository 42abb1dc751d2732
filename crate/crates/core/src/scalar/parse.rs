//! Number literals: decimals, fractions and `a+b*sqrt(d)` surds.
//!
//! ```text
//! literal := term (('+' | '-') term)*
//! term    := ['+' | '-'] (number ['*' surd] | surd) ['/' integer]
//! number  := decimal ['/' integer]
//! surd    := 'sqrt' '(' integer ')'
//! decimal := digits ['.' digits] [('e' | 'E') ['+' | '-'] digits]
//! ```
//! Whitespace is ignored.

use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Pow, ToPrimitive, Zero};

use super::{QuadraticNumber, ScalarError};

/// Parses an unsigned or signed decimal (`-12.5e-3`) into an exact rational.
pub fn parse_decimal(text: &str) -> Option<BigRational> {
    let mut p = Cursor::new(text);
    let neg = p.sign();
    let v = p.decimal()?;
    p.at_end().then(|| if neg { -v } else { v })
}

struct Cursor {
    chars: Vec<char>,
    pos: usize,
}

impl Cursor {
    fn new(src: &str) -> Self {
        Self { chars: src.chars().filter(|c| !c.is_whitespace()).collect(), pos: 0 }
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn eat_word(&mut self, w: &str) -> bool {
        let n = w.chars().count();
        if self.chars.len() >= self.pos + n && self.chars[self.pos..self.pos + n].iter().copied().eq(w.chars()) {
            self.pos += n;
            true
        } else {
            false
        }
    }

    fn at_end(&self) -> bool {
        self.pos == self.chars.len()
    }

    /// Consumes an optional sign; returns true for '-'.
    fn sign(&mut self) -> bool {
        if self.eat('-') {
            true
        } else {
            self.eat('+');
            false
        }
    }

    fn digits(&mut self) -> Option<String> {
        let start = self.pos;
        while matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
            self.pos += 1;
        }
        (self.pos > start).then(|| self.chars[start..self.pos].iter().collect())
    }

    fn integer(&mut self) -> Option<BigInt> {
        self.digits().and_then(|d| d.parse().ok())
    }

    fn decimal(&mut self) -> Option<BigRational> {
        let int_part = self.digits();
        let frac_part = if self.eat('.') { Some(self.digits().unwrap_or_default()) } else { None };
        if int_part.is_none() && frac_part.as_deref().map_or(true, str::is_empty) {
            return None;
        }
        let frac = frac_part.unwrap_or_default();
        let mantissa: BigInt = format!("{}{}", int_part.unwrap_or_default(), frac).parse().ok()?;
        let mut exp10 = -(frac.len() as i64);
        if self.eat('e') || self.eat('E') {
            let neg = self.sign();
            let e: i64 = self.digits()?.parse().ok()?;
            exp10 += if neg { -e } else { e };
        }
        let ten = BigInt::from(10);
        let scale = ten.pow(exp10.unsigned_abs().to_u32()?);
        Some(if exp10 >= 0 {
            BigRational::from_integer(mantissa * scale)
        } else {
            BigRational::new(mantissa, scale)
        })
    }

    fn divisor(&mut self) -> Option<Option<BigInt>> {
        if self.eat('/') {
            let d = self.integer()?;
            if d.is_zero() {
                return None;
            }
            Some(Some(d))
        } else {
            Some(None)
        }
    }

    fn surd(&mut self) -> Option<QuadraticNumber> {
        if !self.eat_word("sqrt") || !self.eat('(') {
            return None;
        }
        let n = self.integer()?.to_u64()?;
        if !self.eat(')') {
            return None;
        }
        Some(QuadraticNumber::sqrt_of(n))
    }

    fn term(&mut self) -> Option<QuadraticNumber> {
        let neg = self.sign();
        let mut value = if self.peek() == Some('s') {
            self.surd()?
        } else {
            let mut r = self.decimal()?;
            if let Some(d) = self.divisor()? {
                r /= BigRational::from_integer(d);
            }
            let mut v = QuadraticNumber::from_rational(r);
            if self.eat('*') {
                v = v.checked_mul(&self.surd()?).ok()?;
            }
            v
        };
        if let Some(d) = self.divisor()? {
            value = value.scale(&BigRational::new(1.into(), d));
        }
        Some(if neg { -value } else { value })
    }

    fn literal(&mut self) -> Option<QuadraticNumber> {
        let mut acc = self.term()?;
        while matches!(self.peek(), Some('+') | Some('-')) {
            let t = self.term()?;
            acc = acc.checked_add(&t).ok()?;
        }
        self.at_end().then_some(acc)
    }
}

impl FromStr for QuadraticNumber {
    type Err = ScalarError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Cursor::new(s).literal().ok_or_else(|| ScalarError::InvalidLiteral(s.to_string()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn qn(s: &str) -> QuadraticNumber {
        s.parse().unwrap()
    }

    #[test]
    fn decimals() {
        assert_eq!(parse_decimal("0.1").unwrap(), BigRational::new(1.into(), 10.into()));
        assert_eq!(parse_decimal("-2").unwrap(), BigRational::from_integer((-2).into()));
        assert_eq!(parse_decimal("1.5e-2").unwrap(), BigRational::new(3.into(), 200.into()));
        assert_eq!(parse_decimal(".5").unwrap(), BigRational::new(1.into(), 2.into()));
        assert_eq!(parse_decimal("3E2").unwrap(), BigRational::from_integer(300.into()));
        assert!(parse_decimal("1.2.3").is_none());
        assert!(parse_decimal("").is_none());
        assert!(parse_decimal("abc").is_none());
    }

    #[test]
    fn surd_literals() {
        assert_eq!(qn("3/4"), QuadraticNumber::from_fraction(3, 4));
        assert_eq!(qn("-4 + 3*sqrt(3)").to_string(), "-4+3*sqrt(3)");
        assert_eq!(qn("sqrt(2)/4"), qn("1/4*sqrt(2)"));
        assert_eq!(qn("-sqrt(12)"), qn("-2*sqrt(3)"));
        assert_eq!(qn("3*sqrt(3)/4 - 3/4"), qn("-3/4+3/4*sqrt(3)"));
        assert_eq!(qn("sqrt(9)"), QuadraticNumber::from_integer(3));
    }

    #[test]
    fn rejects_malformed() {
        for bad in ["1/0", "", "sqrt(2", "sqrt(-2)", "1+", "sqrt(2)+sqrt(3)", "2x", "1/2/0", "--1"] {
            assert!(bad.parse::<QuadraticNumber>().is_err(), "{bad:?} should fail");
        }
    }

    #[test]
    fn display_round_trips() {
        for s in ["0", "-7/3", "sqrt(2)", "-sqrt(5)", "1/4*sqrt(2)", "-3/4+3/4*sqrt(3)", "389-225*sqrt(3)"] {
            let v = qn(s);
            assert_eq!(qn(&v.to_string()), v, "{s}");
        }
    }
}
