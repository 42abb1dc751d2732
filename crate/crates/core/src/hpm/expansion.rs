use super::{BhProblem, HpmError, TimePolynomial};
use crate::algebra::{ExpRational, LaurentPoly};
use crate::scalar::{ExtendedFloat, QuadraticNumber};

/// `u(x, 0)` of the problem's wave branch as a function of `E = e^{κx}`:
/// `γE/(E + E⁻¹)` on the upper branch, `γE⁻¹/(E + E⁻¹)` on the lower one.
pub fn initial_guess(problem: &BhProblem) -> Result<ExpRational, HpmError> {
    if problem.n() != 1 {
        return Err(HpmError::Unsupported(format!(
            "symbolic expansion needs n = 1; n = {} puts a {}-th root in the initial condition",
            problem.n(),
            problem.n()
        )));
    }
    if !problem.x0().is_zero() {
        return Err(HpmError::Unsupported(format!(
            "symbolic expansion needs x0 = 0; e^(kappa*x0) with x0 = {} is not in the coefficient field",
            problem.x0()
        )));
    }
    let one = QuadraticNumber::one;
    let kernel = LaurentPoly::from_terms([(1, one()), (-1, one())])?;
    let num = LaurentPoly::monomial(problem.gamma().clone(), problem.branch().sign());
    Ok(ExpRational::new(num, kernel, problem.rate())?)
}

/// Truncated product of two p-series: entries `0..len`.
fn series_mul(a: &[TimePolynomial], b: &[TimePolynomial], len: usize) -> Result<Vec<TimePolynomial>, HpmError> {
    let rate = a[0].rate().clone();
    let mut out = Vec::with_capacity(len);
    for i in 0..len {
        let mut acc = TimePolynomial::zero(rate.clone());
        for j in 0..=i {
            if let (Some(x), Some(y)) = (a.get(j), b.get(i - j)) {
                if !x.is_zero() && !y.is_zero() {
                    acc = acc.try_add(&x.try_mul(y)?)?;
                }
            }
        }
        out.push(acc);
    }
    Ok(out)
}

/// The homotopy series `v = Σ pᵏ v_k` built order by order.
///
/// With a time-independent `v₀`, the order-k equation is
/// `∂v_k/∂t = [p^{k-1}] N(v)` with `v_k(x, 0) = 0`, where
/// `N(v) = v_xx - α vⁿ v_x + β v(1-vⁿ)(vⁿ-γ)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HpmExpansion {
    problem: BhProblem,
    terms: Vec<TimePolynomial>,
}

impl HpmExpansion {
    /// Starts from the wave's initial profile.
    pub fn new(problem: BhProblem) -> Result<Self, HpmError> {
        let v0 = initial_guess(&problem)?;
        Ok(Self::from_initial(problem, v0))
    }

    /// Starts from an arbitrary time-independent profile. Any positive `n` is accepted.
    pub fn from_initial(problem: BhProblem, v0: ExpRational) -> Self {
        Self { problem, terms: vec![TimePolynomial::constant(v0)] }
    }

    pub fn problem(&self) -> &BhProblem {
        &self.problem
    }

    pub fn terms(&self) -> &[TimePolynomial] {
        &self.terms
    }

    pub fn term(&self, k: usize) -> Option<&TimePolynomial> {
        self.terms.get(k)
    }

    /// Highest computed order K (terms are `v₀..v_K`).
    pub fn order(&self) -> usize {
        self.terms.len() - 1
    }

    /// Right-hand side of the order-k equation, `[p^{k-1}] N(v₀ + p v₁ + ...)`.
    pub fn rhs_order(&self, k: usize) -> Result<TimePolynomial, HpmError> {
        if k == 0 {
            return Err(HpmError::Contract("order 0 is the initial guess and has no right-hand side".into()));
        }
        if k > self.terms.len() {
            return Err(HpmError::Contract(format!(
                "order {k} needs v_0..v_{}, only v_0..v_{} are available",
                k - 1,
                self.order()
            )));
        }
        let m = k - 1;
        let len = k;
        let v = &self.terms[..len];
        let p = &self.problem;
        let n = p.n() as usize;

        let mut rhs = v[m].diff_x().diff_x();

        // powers[j] = v^(j+1) as a truncated p-series
        let mut powers = vec![v.to_vec()];
        for _ in 1..(2 * n + 1) {
            let next = series_mul(powers.last().expect("non-empty"), v, len)?;
            powers.push(next);
        }
        let pow_m = |e: usize| powers[e - 1][m].clone();

        if !p.alpha().is_zero() {
            let vx: Vec<TimePolynomial> = v.iter().map(TimePolynomial::diff_x).collect();
            let conv = series_mul(&powers[n - 1], &vx, len)?;
            rhs = rhs.try_sub(&conv[m].scale(p.alpha())?)?;
        }
        if !p.beta().is_zero() {
            let one_plus_gamma = &QuadraticNumber::one() + p.gamma();
            let mut reaction = pow_m(2 * n + 1).neg();
            reaction = reaction.try_add(&pow_m(n + 1).scale(&one_plus_gamma)?)?;
            reaction = reaction.try_sub(&v[m].scale(p.gamma())?)?;
            rhs = rhs.try_add(&reaction.scale(p.beta())?)?;
        }
        Ok(rhs)
    }

    /// Solves for the next term by integrating its right-hand side in t from 0.
    pub fn advance_order(&mut self) -> Result<&TimePolynomial, HpmError> {
        let k = self.terms.len();
        let next = self.rhs_order(k)?.integrate_t();
        self.terms.push(next);
        Ok(self.terms.last().expect("just pushed"))
    }

    /// `S_m = v₀ + ... + v_{m-1}` as a polynomial in t.
    pub fn partial_sum(&self, m: usize) -> Result<TimePolynomial, HpmError> {
        self.check_m(m)?;
        let mut acc = self.terms[0].clone();
        for term in &self.terms[1..m] {
            acc = acc.try_add(term)?;
        }
        Ok(acc)
    }

    fn check_m(&self, m: usize) -> Result<(), HpmError> {
        if m == 0 || m > self.terms.len() {
            return Err(HpmError::Contract(format!("partial sum S_{m} needs 1 <= m <= {}", self.terms.len())));
        }
        Ok(())
    }

    /// Value of `S_m` at `(x, t)`.
    pub fn partial_sum_eval(&self, m: usize, x: &ExtendedFloat, t: &ExtendedFloat, digits: u32) -> Result<ExtendedFloat, HpmError> {
        self.check_m(m)?;
        Ok(self.partial_sums_eval(x, t, digits)?.swap_remove(m - 1))
    }

    /// Values of `S_1..S_{K+1}` at `(x, t)`, sharing one evaluation of `E`.
    pub fn partial_sums_eval(&self, x: &ExtendedFloat, t: &ExtendedFloat, digits: u32) -> Result<Vec<ExtendedFloat>, HpmError> {
        let work = digits + 10;
        let rate = self.terms[0].rate().to_float(work);
        let e = (&rate * &x.with_digits(work)).exp();
        let t = t.with_digits(work);
        let mut acc = ExtendedFloat::zero(work);
        let mut out = Vec::with_capacity(self.terms.len());
        for term in &self.terms {
            acc = &acc + &term.eval_at_e(&e, &t)?;
            out.push(acc.with_digits(digits));
        }
        Ok(out)
    }
}

/// Builds `v₀..v_K` for the problem's wave initial condition.
pub fn run_hpm(problem: &BhProblem, order: usize) -> Result<HpmExpansion, HpmError> {
    if order == 0 {
        return Err(HpmError::Contract("expansion order must be at least 1".into()));
    }
    let mut expansion = HpmExpansion::new(problem.clone())?;
    for _ in 0..order {
        expansion.advance_order()?;
    }
    Ok(expansion)
}
