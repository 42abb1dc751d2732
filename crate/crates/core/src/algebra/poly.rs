//! Dense univariate polynomials over Q(√d), lowest degree first.
//!
//! Only what the rational-function reduction needs: division with remainder
//! and a monic Euclidean GCD. Inputs are assumed to share a radicand; the
//! caller checks that once up front.

use crate::scalar::QuadraticNumber;

pub(crate) type Dense = Vec<QuadraticNumber>;

pub(crate) fn trim(p: &mut Dense) {
    while p.last().is_some_and(QuadraticNumber::is_zero) {
        p.pop();
    }
}

fn is_zero(p: &[QuadraticNumber]) -> bool {
    p.is_empty()
}

/// Scales so the leading coefficient is 1. Zero stays zero.
pub(crate) fn monic(mut p: Dense) -> Dense {
    trim(&mut p);
    if let Some(lead) = p.last() {
        if !lead.is_one() {
            let inv = lead.inverse().expect("leading coefficient is nonzero");
            for c in &mut p {
                *c = &*c * &inv;
            }
        }
    }
    p
}

/// Returns `(q, r)` with `a = q·b + r` and `deg r < deg b`. `b` must be trimmed and nonzero.
pub(crate) fn divrem(a: &[QuadraticNumber], b: &[QuadraticNumber]) -> (Dense, Dense) {
    assert!(!is_zero(b), "polynomial division by zero");
    let mut r: Dense = a.to_vec();
    trim(&mut r);
    if r.len() < b.len() {
        return (Vec::new(), r);
    }
    let db = b.len() - 1;
    let lead = b[db].clone();
    let lead_inv = if lead.is_one() { None } else { Some(lead.inverse().expect("nonzero lead")) };
    let mut q = vec![QuadraticNumber::zero(); r.len() - db];
    while r.len() > db && !r.is_empty() {
        let shift = r.len() - 1 - db;
        let top = r.last().cloned().expect("non-empty");
        let factor = match &lead_inv {
            Some(inv) => &top * inv,
            None => top,
        };
        for (i, bc) in b.iter().enumerate() {
            if !bc.is_zero() {
                r[shift + i] = &r[shift + i] - &(&factor * bc);
            }
        }
        q[shift] = factor;
        // The top coefficient cancels exactly; drop it before trimming the rest.
        r.pop();
        trim(&mut r);
    }
    trim(&mut q);
    (q, r)
}

/// Monic GCD by the Euclidean algorithm. `gcd(0, 0) = 0`.
pub(crate) fn gcd(a: &[QuadraticNumber], b: &[QuadraticNumber]) -> Dense {
    let mut x = monic(a.to_vec());
    let mut y = monic(b.to_vec());
    if x.len() < y.len() {
        std::mem::swap(&mut x, &mut y);
    }
    while !y.is_empty() {
        if y.len() == 1 {
            return vec![QuadraticNumber::one()];
        }
        let (_, r) = divrem(&x, &y);
        x = y;
        y = monic(r);
    }
    x
}

/// Quotient of an exact division.
pub(crate) fn exact_div(a: &[QuadraticNumber], b: &[QuadraticNumber]) -> Dense {
    let (q, r) = divrem(a, b);
    debug_assert!(r.is_empty(), "inexact polynomial division");
    q
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(cs: &[i64]) -> Dense {
        cs.iter().map(|&c| QuadraticNumber::from_integer(c)).collect()
    }

    #[test]
    fn division_with_remainder() {
        // x^3 + 2x + 5 = (x^2 - x + 3)(x + 1) + 2
        let (q, r) = divrem(&p(&[5, 2, 0, 1]), &p(&[1, 1]));
        assert_eq!(q, p(&[3, -1, 1]));
        assert_eq!(r, p(&[2]));
    }

    #[test]
    fn gcd_difference_of_squares() {
        assert_eq!(gcd(&p(&[-1, 0, 1]), &p(&[1, 1])), p(&[1, 1]));
        assert_eq!(gcd(&p(&[1, 0, 1]), &p(&[1, 1])), p(&[1]));
        assert_eq!(gcd(&p(&[0, 0, 3]), &[]), p(&[0, 0, 1]));
    }

    #[test]
    fn gcd_over_quadratic_field() {
        // (x - √2)(x + 1) and (x - √2)(x - 3) share x - √2.
        let s = QuadraticNumber::sqrt_of(2);
        let root = vec![-&s, QuadraticNumber::one()];
        let a = vec![-&s, &QuadraticNumber::one() - &s, QuadraticNumber::one()];
        let b = vec![&s * &QuadraticNumber::from_integer(3), &QuadraticNumber::from_integer(-3) - &s, QuadraticNumber::one()];
        assert_eq!(gcd(&a, &b), root);
        assert_eq!(exact_div(&a, &root), p(&[1, 1]));
    }
}
