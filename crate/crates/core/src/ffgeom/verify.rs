//! Checking that point counts are polynomials of a predicted degree and
//! leading coefficient.

use num_bigint::BigInt;
use num_rational::BigRational;
use serde_json::{json, Value};

use crate::error::Result;
use crate::ffgeom::field::is_prime;
use crate::ffgeom::interp::{interpolate, RationalPoly};

/// `base` extended by the next primes until there are at least
/// `predicted_degree + 2` samples: enough to fit a polynomial of that degree
/// with one point left over to confirm it.
pub fn sample_primes(base: &[u64], predicted_degree: usize) -> Vec<u64> {
    let mut primes = base.to_vec();
    let mut next = base.iter().copied().max().unwrap_or(1) + 1;
    while primes.len() < predicted_degree + 2 {
        if is_prime(next) {
            primes.push(next);
        }
        next += 1;
    }
    primes
}

/// Counts at several primes, their interpolant, and the comparison with a
/// predicted dimension and leading coefficient.
#[derive(Debug, Clone)]
pub struct PolynomialCheck {
    pub label: String,
    pub samples: Vec<(u64, u128)>,
    pub poly: RationalPoly,
    pub predicted_degree: i64,
    pub predicted_leading: u128,
    pub pass: bool,
}

impl PolynomialCheck {
    /// Counts at `primes` (extended as needed via [`sample_primes`]) and compares.
    ///
    /// A zero predicted leading coefficient means the variety should be empty:
    /// every count must be 0.
    pub fn run(
        label: impl Into<String>,
        base_primes: &[u64],
        predicted_degree: i64,
        predicted_leading: u128,
        count: impl Fn(u32) -> Result<u128>,
    ) -> Result<Self> {
        let primes = sample_primes(base_primes, predicted_degree.max(0) as usize);
        let samples = primes
            .iter()
            .map(|&q| Ok((q, count(q as u32)?)))
            .collect::<Result<Vec<_>>>()?;
        Self::from_samples(label, samples, predicted_degree, predicted_leading)
    }

    pub fn from_samples(
        label: impl Into<String>,
        samples: Vec<(u64, u128)>,
        predicted_degree: i64,
        predicted_leading: u128,
    ) -> Result<Self> {
        let poly = interpolate(&samples)?;
        let pass = if predicted_leading == 0 {
            poly.is_zero()
        } else {
            poly.degree().map(|d| d as i64) == Some(predicted_degree)
                && poly.leading() == BigRational::from_integer(BigInt::from(predicted_leading))
        };
        Ok(PolynomialCheck { label: label.into(), samples, poly, predicted_degree, predicted_leading, pass })
    }

    pub fn to_json(&self) -> Value {
        json!({
            "check": self.label,
            "counts": self.samples.iter().map(|(q, c)| json!({"q": q, "count": c.to_string()})).collect::<Vec<_>>(),
            "interpolant": self.poly.to_string(),
            "coefficients": self.poly.coeff_strings(),
            "degree": self.poly.degree(),
            "predicted_degree": self.predicted_degree,
            "predicted_leading": self.predicted_leading.to_string(),
            "pass": self.pass,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primes_are_extended() {
        assert_eq!(sample_primes(&[2, 3, 5], 1), vec![2, 3, 5]);
        assert_eq!(sample_primes(&[2, 3, 5], 3), vec![2, 3, 5, 7, 11]);
        assert_eq!(sample_primes(&[2, 3, 5, 7, 11], 6), vec![2, 3, 5, 7, 11, 13, 17, 19]);
    }

    #[test]
    fn checks_pass_and_fail() {
        let good = PolynomialCheck::run("q+1", &[2, 3], 1, 1, |q| Ok(q as u128 + 1)).unwrap();
        assert!(good.pass);
        assert_eq!(good.samples.len(), 3);
        let wrong_degree = PolynomialCheck::run("q^2", &[2, 3], 1, 1, |q| Ok((q * q) as u128)).unwrap();
        assert!(!wrong_degree.pass);
        let empty = PolynomialCheck::run("0", &[2, 3], 2, 0, |_| Ok(0)).unwrap();
        assert!(empty.pass);
        let json = good.to_json();
        assert_eq!(json["pass"], true);
        assert_eq!(json["interpolant"], "q + 1");
    }
}
