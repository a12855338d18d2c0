//! Exact Lagrange interpolation of point counts.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// A polynomial in `q` with rational coefficients, lowest degree first, no
/// trailing zeros.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RationalPoly {
    coeffs: Vec<BigRational>,
}

impl RationalPoly {
    pub fn new(mut coeffs: Vec<BigRational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        RationalPoly { coeffs }
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Zero for the zero polynomial.
    pub fn leading(&self) -> BigRational {
        self.coeffs.last().cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn eval(&self, q: &BigRational) -> BigRational {
        self.coeffs.iter().rev().fold(BigRational::zero(), |acc, c| acc * q + c)
    }

    /// Whether every coefficient is an integer.
    pub fn is_integral(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_integer())
    }

    /// Coefficients as strings, lowest degree first.
    pub fn coeff_strings(&self) -> Vec<String> {
        self.coeffs.iter().map(ToString::to_string).collect()
    }

    fn mul_linear(&self, root: &BigRational) -> RationalPoly {
        // (sum c_i q^i) (q - root)
        let mut out = vec![BigRational::zero(); self.coeffs.len() + 1];
        for (i, c) in self.coeffs.iter().enumerate() {
            out[i + 1] += c;
            out[i] -= c * root;
        }
        RationalPoly::new(out)
    }
}

impl fmt::Display for RationalPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let sign = if c.is_negative() { "-" } else { "+" };
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            let a = c.abs();
            let show_coeff = i == 0 || !a.is_one();
            if show_coeff {
                if a.is_integer() || i == 0 {
                    write!(f, "{a}")?;
                } else {
                    write!(f, "({a})")?;
                }
            }
            match i {
                0 => {}
                1 => write!(f, "q")?,
                _ => write!(f, "q^{i}")?,
            }
        }
        Ok(())
    }
}

/// The unique polynomial of degree `< samples.len()` through the samples.
pub fn interpolate(samples: &[(u64, u128)]) -> Result<RationalPoly> {
    if samples.len() < 2 {
        return Err(Error::Interpolation(format!(
            "need at least 2 samples, got {}",
            samples.len()
        )));
    }
    for (i, (q, _)) in samples.iter().enumerate() {
        if samples[..i].iter().any(|(p, _)| p == q) {
            return Err(Error::Interpolation(format!("duplicate sample point q = {q}")));
        }
    }
    let xs: Vec<BigRational> =
        samples.iter().map(|&(q, _)| BigRational::from_integer(BigInt::from(q))).collect();
    let mut acc = vec![BigRational::zero(); samples.len()];
    for (i, &(_, y)) in samples.iter().enumerate() {
        let mut basis = RationalPoly::new(vec![BigRational::one()]);
        let mut denom = BigRational::one();
        for (j, xj) in xs.iter().enumerate() {
            if i != j {
                basis = basis.mul_linear(xj);
                denom *= &xs[i] - xj;
            }
        }
        let scale = BigRational::from_integer(BigInt::from(y)) / denom;
        for (a, c) in acc.iter_mut().zip(basis.coeffs()) {
            *a += c * &scale;
        }
    }
    Ok(RationalPoly::new(acc))
}
