//! Exact traveling-wave solutions, their time-Taylor coefficients, and a
//! finite-difference residual for the PDE.

use crate::hpm::{BhProblem, Branch};
use crate::scalar::{ExtendedFloat, QuadraticNumber, ScalarError};

/// Step used by [`pde_residual`] callers unless they have a reason to change it.
pub const DEFAULT_RESIDUAL_STEP: &str = "1e-8";

/// Working precision for residual checks. The 5-point second difference
/// divides by `12h²`, so with `h = 1e-8` the function values need roughly
/// 16 digits more than the residual bound being tested.
pub const RESIDUAL_DIGITS: u32 = 45;

/// `u(x,t) = [γ/2 + s(γ/2) tanh(a(x - ct + x0))]^{1/n}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct TravelingWave {
    pub amplitude: QuadraticNumber,
    pub sign: i64,
    pub wavenumber: QuadraticNumber,
    pub speed: QuadraticNumber,
    pub x0: QuadraticNumber,
    pub n: u32,
}

/// Wave parameters for the problem's branch. Upper takes the top sign of
/// every ± and ∓ at once, lower takes all the bottom ones.
pub fn deng_wave(problem: &BhProblem) -> TravelingWave {
    TravelingWave {
        amplitude: problem.gamma().scale(&num_rational::BigRational::new(1.into(), 2.into())),
        sign: match problem.branch() {
            Branch::Upper => 1,
            Branch::Lower => -1,
        },
        wavenumber: problem.rate(),
        speed: problem.speed(),
        x0: problem.x0().clone(),
        n: problem.n(),
    }
}

impl TravelingWave {
    fn phase(&self, x: &ExtendedFloat, t: &ExtendedFloat, work: u32) -> ExtendedFloat {
        let a = self.wavenumber.to_float(work);
        let c = self.speed.to_float(work);
        let x0 = self.x0.to_float(work);
        &a * &(&(&x.with_digits(work) - &(&c * &t.with_digits(work))) + &x0)
    }

    /// Value at `(x, t)`.
    ///
    /// `γ/2 (1 ± tanh θ)` is computed as `γ/(1 + e^{∓2θ})`, which has no cancellation.
    pub fn eval(&self, x: &ExtendedFloat, t: &ExtendedFloat, digits: u32) -> Result<ExtendedFloat, ScalarError> {
        let work = digits + 10;
        let theta = self.phase(x, t, work);
        let gamma = (&self.amplitude + &self.amplitude).to_float(work);
        let two_s = ExtendedFloat::from_i64(-2 * self.sign, work);
        let base = &gamma / &(&ExtendedFloat::one(work) + &(&two_s * &theta).exp());
        let value = if self.n == 1 {
            base
        } else if base.is_negative() {
            return Err(ScalarError::Domain(format!("{}-th root of negative wave base {}", self.n, base)));
        } else {
            base.nth_root(self.n)?
        };
        Ok(value.with_digits(digits))
    }

    /// Coefficients of `t⁰..t^order` of `u(x, ·)` about `t = 0`.
    ///
    /// With `w(t) = tanh(θ₀ + θ₁t)` and `θ₁ = -ac`, `w' = θ₁(1 - w²)` gives
    /// `(j+1) w_{j+1} = θ₁(δ_{j0} - Σ_{i≤j} w_i w_{j-i})`.
    pub fn taylor_time_coefficients(&self, x: &ExtendedFloat, order: usize, digits: u32) -> Result<Vec<ExtendedFloat>, ScalarError> {
        if self.n != 1 {
            return Err(ScalarError::Domain(format!("time-Taylor coefficients need n = 1, got n = {}", self.n)));
        }
        let work = digits + 20;
        let theta0 = self.phase(x, &ExtendedFloat::zero(work), work);
        let theta1 = (&-&self.wavenumber * &self.speed).to_float(work);
        let ep = theta0.exp();
        let em = ep.recip();
        let w0 = &(&ep - &em) / &(&ep + &em);
        // 1 - w0² as sech², avoiding cancellation when |θ₀| is large.
        let sech2 = &ExtendedFloat::from_i64(4, work) / &(&(&ep + &em) * &(&ep + &em));

        let mut w = vec![w0];
        for j in 0..order {
            let mut conv = ExtendedFloat::zero(work);
            for i in 0..=j {
                conv = &conv + &(&w[i] * &w[j - i]);
            }
            let inner = if j == 0 { sech2.clone() } else { -conv };
            w.push(&(&theta1 * &inner) / &ExtendedFloat::from_i64(j as i64 + 1, work));
        }
        let half_gamma = self.amplitude.to_float(work);
        let s = ExtendedFloat::from_i64(self.sign, work);
        let scale = &s * &half_gamma;
        Ok(w.iter()
            .enumerate()
            .map(|(j, wj)| {
                let v = &scale * wj;
                let v = if j == 0 { &half_gamma + &v } else { v };
                v.with_digits(digits)
            })
            .collect())
    }
}

/// `|u_t - u_xx + α uⁿ u_x - β u(1-uⁿ)(uⁿ-γ)|` at `(x, t)` with 5-point
/// central differences of width `step` in both variables.
///
/// Arithmetic runs at the precision of `step`.
pub fn pde_residual<F>(u: F, problem: &BhProblem, x: &ExtendedFloat, t: &ExtendedFloat, step: &ExtendedFloat) -> ExtendedFloat
where
    F: Fn(&ExtendedFloat, &ExtendedFloat) -> ExtendedFloat,
{
    let digits = step.digits();
    let int = |v: i64| ExtendedFloat::from_i64(v, digits);
    let x = x.with_digits(digits);
    let t = t.with_digits(digits);
    let h = step;
    let h2 = &int(2) * h;
    let at = |dx: &ExtendedFloat, dt: &ExtendedFloat| u(&(&x + dx), &(&t + dt)).with_digits(digits);
    let zero = int(0);

    let f0 = at(&zero, &zero);
    let (xp1, xm1, xp2, xm2) = (at(h, &zero), at(&-h, &zero), at(&h2, &zero), at(&-&h2, &zero));
    let (tp1, tm1, tp2, tm2) = (at(&zero, h), at(&zero, &-h), at(&zero, &h2), at(&zero, &-&h2));

    let first = |p1: &ExtendedFloat, m1: &ExtendedFloat, p2: &ExtendedFloat, m2: &ExtendedFloat| {
        &(&(&(&int(8) * &(p1 - m1)) - p2) + m2) / &(&int(12) * h)
    };
    let u_t = first(&tp1, &tm1, &tp2, &tm2);
    let u_x = first(&xp1, &xm1, &xp2, &xm2);
    let u_xx = &(&(&(&int(16) * &(&xp1 + &xm1)) - &(&xp2 + &xm2)) - &(&int(30) * &f0)) / &(&int(12) * &(h * h));

    let un = f0.powi(i64::from(problem.n()));
    let alpha = problem.alpha().to_float(digits);
    let beta = problem.beta().to_float(digits);
    let gamma = problem.gamma().to_float(digits);
    let reaction = &(&beta * &f0) * &(&(&int(1) - &un) * &(&un - &gamma));
    let convection = &(&alpha * &un) * &u_x;
    (&(&(&u_t - &u_xx) + &convection) - &reaction).abs()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hpm::{initial_guess, Case};
    use crate::scalar::relative_deviation;

    fn q(s: &str) -> QuadraticNumber {
        s.parse().unwrap()
    }

    fn f(v: &str, digits: u32) -> ExtendedFloat {
        ExtendedFloat::parse(v, digits).unwrap()
    }

    #[test]
    fn preset_wave_parameters() {
        let expect = [
            (Case::I, "1/2", 1, "sqrt(2)/4", "sqrt(2)/2"),
            (Case::II, "1/2", -1, "1/4", "-3/2"),
            (Case::III, "3/2", -1, "3*sqrt(3)/4 - 3/4", "-5/2 + sqrt(3)/2"),
        ];
        for (case, amp, sign, a, c) in expect {
            let w = deng_wave(&case.problem());
            assert_eq!(w.amplitude, q(amp));
            assert_eq!(w.sign, sign);
            assert_eq!(w.wavenumber, q(a));
            assert_eq!(w.speed, q(c));
            assert_eq!(w.n, 1);
        }
        // 1/(2√2) and 1/√2 written the other way round.
        let w = deng_wave(&Case::I.problem());
        assert_eq!(w.wavenumber, q("sqrt(8)").inverse().unwrap());
        assert_eq!(&w.wavenumber * &w.speed, q("1/4"));
    }

    #[test]
    fn values_at_origin_and_limits() {
        let z = ExtendedFloat::zero(30);
        for case in [Case::I, Case::II] {
            assert_eq!(deng_wave(&case.problem()).eval(&z, &z, 30).unwrap().to_f64(), 0.5);
        }
        let far = deng_wave(&Case::II.problem()).eval(&z, &f("200", 30), 30).unwrap();
        assert!(far.to_f64() < 1e-40);
    }

    #[test]
    fn tanh_and_exponential_forms_agree() {
        for case in Case::ALL {
            let p = case.problem();
            let w = deng_wave(&p);
            let u0 = initial_guess(&p).unwrap();
            for xv in ["-2", "-0.5", "0", "0.3", "1", "2.5", "3", "4", "7", "-6"] {
                let x = f(xv, 40);
                let wave = w.eval(&x, &ExtendedFloat::zero(40), 30).unwrap();
                let er = u0.eval(&x, 30).unwrap();
                assert!(relative_deviation(&wave, &er).to_f64() < 1e-25, "{case:?} x={xv}");
                let theta = &w.wavenumber.to_float(40) * &x;
                let s = ExtendedFloat::from_i64(w.sign, 40);
                let g2 = w.amplitude.to_float(40);
                let tanh_form = &g2 + &(&(&s * &g2) * &theta.tanh());
                assert!(relative_deviation(&wave, &tanh_form).to_f64() < 1e-25, "{case:?} x={xv}");
            }
        }
    }

    #[test]
    fn taylor_coefficients_at_origin() {
        let w = deng_wave(&Case::I.problem());
        let c = w.taylor_time_coefficients(&ExtendedFloat::zero(30), 3, 30).unwrap();
        assert_eq!(c[0].to_f64(), 0.5);
        assert!((c[1].to_f64() + 0.125).abs() < 1e-28);
        assert!(c[2].is_zero());
    }

    #[test]
    fn taylor_coefficients_sum_to_the_wave() {
        let w = deng_wave(&Case::III.problem());
        let x = f("1.3", 40);
        let t = f("0.01", 40);
        let coeffs = w.taylor_time_coefficients(&x, 30, 40).unwrap();
        let mut sum = ExtendedFloat::zero(40);
        for c in coeffs.iter().rev() {
            sum = &(&sum * &t) + c;
        }
        let exact = w.eval(&x, &t, 40).unwrap();
        assert!(relative_deviation(&sum, &exact).to_f64() < 1e-35);
    }

    #[test]
    fn residual_of_exact_waves_is_tiny() {
        let d = RESIDUAL_DIGITS;
        let step = f(DEFAULT_RESIDUAL_STEP, d);
        for case in Case::ALL {
            let p = case.problem();
            let w = deng_wave(&p);
            for (x, t) in [("1", "0.3"), ("2", "0.4"), ("3", "0.1")] {
                let r = pde_residual(|x, t| w.eval(x, t, d).unwrap(), &p, &f(x, d), &f(t, d), &step);
                assert!(r.to_f64() < 1e-15, "{case:?} ({x},{t}) residual {r}");
            }
        }
    }

    #[test]
    fn residual_of_zero_is_zero() {
        let p = Case::III.problem();
        let d = 30;
        let r = pde_residual(|_, _| ExtendedFloat::zero(d), &p, &f("1", d), &f("1", d), &f("1e-8", d));
        assert!(r.is_zero());
    }

    #[test]
    fn higher_power_waves_solve_the_equation() {
        let z = QuadraticNumber::zero;
        let d = RESIDUAL_DIGITS;
        let step = f(DEFAULT_RESIDUAL_STEP, d);
        for (alpha, branch) in [("0", Branch::Upper), ("1", Branch::Lower), ("-2", Branch::Upper)] {
            // α² + 12 must be a rational square times a square-free radicand; β = 1, n = 2.
            let p = BhProblem::new(q(alpha), q("1"), q("1/2"), 2, branch, z()).unwrap();
            let w = deng_wave(&p);
            for (x, t) in [("0.5", "0.2"), ("-1", "0.4")] {
                let r = pde_residual(|x, t| w.eval(x, t, d).unwrap(), &p, &f(x, d), &f(t, d), &step);
                assert!(r.to_f64() < 1e-15, "alpha={alpha} {branch} residual {r}");
            }
        }
    }

    #[test]
    fn negative_base_with_root_is_a_domain_error() {
        let z = QuadraticNumber::zero;
        let p = BhProblem::new(z(), q("1"), q("-1"), 2, Branch::Upper, z()).unwrap();
        let w = deng_wave(&p);
        let zero = ExtendedFloat::zero(20);
        assert!(matches!(w.eval(&zero, &zero, 20), Err(ScalarError::Domain(_))));
        assert!(w.taylor_time_coefficients(&zero, 2, 20).is_err());
    }
}
