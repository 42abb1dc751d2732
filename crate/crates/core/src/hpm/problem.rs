use std::fmt;
use std::str::FromStr;

use num_rational::BigRational;
use num_traits::Signed;

use super::HpmError;
use crate::scalar::QuadraticNumber;

/// Which sign of the wave family is taken: `+` in every ± (and `-` in ∓) or the opposite.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Branch {
    Upper,
    Lower,
}

impl Branch {
    pub fn sign(self) -> i64 {
        match self {
            Branch::Upper => 1,
            Branch::Lower => -1,
        }
    }
}

impl fmt::Display for Branch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Branch::Upper => "upper",
            Branch::Lower => "lower",
        })
    }
}

impl FromStr for Branch {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s.trim().to_ascii_lowercase().as_str() {
            "upper" | "+" => Ok(Branch::Upper),
            "lower" | "-" => Ok(Branch::Lower),
            other => Err(format!("unknown branch {other:?} (expected upper or lower)")),
        }
    }
}

/// The three worked parameter sets.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Case {
    I,
    II,
    III,
}

impl Case {
    pub const ALL: [Case; 3] = [Case::I, Case::II, Case::III];

    pub fn problem(self) -> BhProblem {
        let q = QuadraticNumber::from_integer;
        let (alpha, gamma, branch) = match self {
            Case::I => (0, 1, Branch::Upper),
            Case::II => (-1, 1, Branch::Lower),
            Case::III => (-2, 3, Branch::Lower),
        };
        BhProblem::new(q(alpha), q(1), q(gamma), 1, branch, QuadraticNumber::zero()).expect("preset parameters are valid")
    }

    pub fn number(self) -> u8 {
        match self {
            Case::I => 1,
            Case::II => 2,
            Case::III => 3,
        }
    }

    pub fn from_number(n: u8) -> Option<Self> {
        match n {
            1 => Some(Case::I),
            2 => Some(Case::II),
            3 => Some(Case::III),
            _ => None,
        }
    }
}

impl fmt::Display for Case {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.number())
    }
}

impl FromStr for Case {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s.trim().to_ascii_lowercase().as_str() {
            "1" | "i" => Ok(Case::I),
            "2" | "ii" => Ok(Case::II),
            "3" | "iii" => Ok(Case::III),
            other => Err(format!("unknown case {other:?} (expected 1, 2 or 3)")),
        }
    }
}

/// `u_t = u_xx - α uⁿ u_x + β u(1-uⁿ)(uⁿ-γ)` together with the wave branch
/// used for the initial condition.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BhProblem {
    alpha: QuadraticNumber,
    beta: QuadraticNumber,
    gamma: QuadraticNumber,
    n: u32,
    branch: Branch,
    x0: QuadraticNumber,
    rho: QuadraticNumber,
}

impl BhProblem {
    pub fn new(
        alpha: QuadraticNumber,
        beta: QuadraticNumber,
        gamma: QuadraticNumber,
        n: u32,
        branch: Branch,
        x0: QuadraticNumber,
    ) -> Result<Self, HpmError> {
        if n == 0 {
            return Err(HpmError::InvalidProblem("n must be a positive integer".into()));
        }
        if beta.is_negative() {
            return Err(HpmError::InvalidProblem(format!("beta must be non-negative, got {beta}")));
        }
        let np1 = QuadraticNumber::from_integer(i64::from(n) + 1);
        let disc = &(&alpha * &alpha) + &(&(&beta * &np1) * &QuadraticNumber::from_integer(4));
        let disc: BigRational = disc.as_rational().cloned().ok_or_else(|| {
            HpmError::InvalidProblem(format!("alpha^2 + 4 beta (n+1) = {disc} is not rational"))
        })?;
        if disc.is_negative() {
            return Err(HpmError::InvalidProblem(format!("alpha^2 + 4 beta (n+1) = {disc} is negative")));
        }
        let rho = QuadraticNumber::sqrt_rational(&disc)?;
        let mut radicand = 1;
        for (name, v) in [("alpha", &alpha), ("beta", &beta), ("gamma", &gamma), ("x0", &x0), ("rho", &rho)] {
            let d = v.radicand();
            if d == 1 {
                continue;
            }
            if radicand != 1 && d != radicand {
                return Err(HpmError::InvalidProblem(format!(
                    "{name} lies in Q(sqrt({d})) but other parameters lie in Q(sqrt({radicand}))"
                )));
            }
            radicand = d;
        }
        Ok(Self { alpha, beta, gamma, n, branch, x0, rho })
    }

    pub fn alpha(&self) -> &QuadraticNumber {
        &self.alpha
    }

    pub fn beta(&self) -> &QuadraticNumber {
        &self.beta
    }

    pub fn gamma(&self) -> &QuadraticNumber {
        &self.gamma
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn branch(&self) -> Branch {
        self.branch
    }

    pub fn x0(&self) -> &QuadraticNumber {
        &self.x0
    }

    /// `ρ = sqrt(α² + 4β(n+1))`.
    pub fn rho(&self) -> &QuadraticNumber {
        &self.rho
    }

    /// Square-free radicand shared by all parameters (1 when everything is rational).
    pub fn radicand(&self) -> u64 {
        [&self.alpha, &self.beta, &self.gamma, &self.x0, &self.rho]
            .iter()
            .map(|v| v.radicand())
            .max()
            .unwrap_or(1)
    }

    fn sign(&self) -> QuadraticNumber {
        QuadraticNumber::from_integer(self.branch.sign())
    }

    /// Wavenumber `a = nγ(ρ ∓ α)/(4(n+1))`; also the rate κ of `E = e^{κx}`.
    pub fn rate(&self) -> QuadraticNumber {
        let n = QuadraticNumber::from_integer(i64::from(self.n));
        let np1 = QuadraticNumber::from_integer(i64::from(self.n) + 1);
        let diff = &self.rho - &(&self.sign() * &self.alpha);
        &(&(&n * &self.gamma) * &diff) / &(&np1 * &QuadraticNumber::from_integer(4))
    }

    /// Speed `c = ((α ∓ ρ)γ + (α ± ρ)(n+1))/(2(n+1))`.
    pub fn speed(&self) -> QuadraticNumber {
        let np1 = QuadraticNumber::from_integer(i64::from(self.n) + 1);
        let s_rho = &self.sign() * &self.rho;
        let first = &(&self.alpha - &s_rho) * &self.gamma;
        let second = &(&self.alpha + &s_rho) * &np1;
        &(&first + &second) / &(&np1 * &QuadraticNumber::from_integer(2))
    }
}

impl fmt::Display for BhProblem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "alpha={} beta={} gamma={} n={} branch={} x0={}",
            self.alpha, self.beta, self.gamma, self.n, self.branch, self.x0
        )
    }
}
