//! Schur polynomials from the Jacobi–Trudi determinant, with exact integer
//! coefficients. Nothing here enumerates tableaux, so these results serve as an
//! independent reference for the crystal computations.

use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::weights::{enumerate_weights, Partition, Weight};

/// Polynomial in `nvars` variables keyed by exponent vectors; zero terms are never stored.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExactPolynomial {
    nvars: usize,
    terms: BTreeMap<Vec<u32>, BigInt>,
}

impl ExactPolynomial {
    pub fn zero(nvars: usize) -> Self {
        ExactPolynomial { nvars, terms: BTreeMap::new() }
    }

    pub fn one(nvars: usize) -> Self {
        Self::monomial(vec![0; nvars], BigInt::one())
    }

    pub fn monomial(exponents: Vec<u32>, coeff: BigInt) -> Self {
        let mut p = ExactPolynomial::zero(exponents.len());
        if !coeff.is_zero() {
            p.terms.insert(exponents, coeff);
        }
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u32>, &BigInt)> {
        self.terms.iter()
    }

    pub fn coeff(&self, exponents: &[u32]) -> BigInt {
        self.terms.get(exponents).cloned().unwrap_or_default()
    }

    fn add_term(&mut self, exponents: Vec<u32>, c: BigInt) {
        match self.terms.entry(exponents) {
            Entry::Vacant(slot) => {
                if !c.is_zero() {
                    slot.insert(c);
                }
            }
            Entry::Occupied(mut slot) => {
                *slot.get_mut() += c;
                if slot.get().is_zero() {
                    slot.remove();
                }
            }
        }
    }

    /// Lexicographically largest exponent vector.
    pub fn leading_term(&self) -> Option<(&Vec<u32>, &BigInt)> {
        self.terms.iter().next_back()
    }

    /// Invariance under every transposition of adjacent variables.
    pub fn is_symmetric(&self) -> bool {
        (0..self.nvars.saturating_sub(1)).all(|i| {
            self.terms.iter().all(|(e, c)| {
                let mut s = e.clone();
                s.swap(i, i + 1);
                self.terms.get(&s) == Some(c)
            })
        })
    }

    /// Value with every variable set to 1.
    pub fn eval_ones(&self) -> BigInt {
        self.terms.values().sum()
    }

    /// Monomial expansion keyed by weight, coefficients as `i64`.
    pub fn monomials(&self) -> BTreeMap<Weight, i64> {
        self.terms
            .iter()
            .map(|(e, c)| {
                let c = i64::try_from(c).expect("coefficient fits in i64");
                (Weight::new(e.clone()).expect("nonempty exponent vector"), c)
            })
            .collect()
    }
}

impl Add for &ExactPolynomial {
    type Output = ExactPolynomial;

    fn add(self, rhs: &ExactPolynomial) -> ExactPolynomial {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }
}

impl Neg for &ExactPolynomial {
    type Output = ExactPolynomial;

    fn neg(self) -> ExactPolynomial {
        ExactPolynomial {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect(),
        }
    }
}

impl Sub for &ExactPolynomial {
    type Output = ExactPolynomial;

    fn sub(self, rhs: &ExactPolynomial) -> ExactPolynomial {
        self + &(-rhs)
    }
}

impl Mul for &ExactPolynomial {
    type Output = ExactPolynomial;

    fn mul(self, rhs: &ExactPolynomial) -> ExactPolynomial {
        let mut acc: BTreeMap<Vec<u32>, BigInt> = BTreeMap::new();
        for (ea, ca) in &self.terms {
            for (eb, cb) in &rhs.terms {
                let e: Vec<u32> = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
                *acc.entry(e).or_default() += ca * cb;
            }
        }
        acc.retain(|_, c| !c.is_zero());
        ExactPolynomial { nvars: self.nvars.max(rhs.nvars), terms: acc }
    }
}

impl fmt::Display for ExactPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (e, c) in self.terms.iter().rev() {
            let sign = if c.is_negative() { "-" } else { "+" };
            if first {
                if c.is_negative() {
                    f.write_str("-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            let mag = c.abs();
            let vars: Vec<String> = e
                .iter()
                .enumerate()
                .filter(|(_, &x)| x > 0)
                .map(|(i, &x)| if x == 1 { format!("x{}", i + 1) } else { format!("x{}^{x}", i + 1) })
                .collect();
            match (mag.is_one(), vars.is_empty()) {
                (true, true) => f.write_str("1")?,
                (true, false) => f.write_str(&vars.join("*"))?,
                (false, true) => write!(f, "{mag}")?,
                (false, false) => write!(f, "{mag}*{}", vars.join("*"))?,
            }
        }
        Ok(())
    }
}

/// Complete homogeneous symmetric polynomial `h_d` in `n` variables.
pub fn complete_homogeneous(d: i64, n: usize) -> ExactPolynomial {
    if d < 0 {
        return ExactPolynomial::zero(n);
    }
    let mut p = ExactPolynomial::zero(n);
    for e in enumerate_weights(n, d as u32) {
        p.add_term(e.into_vec(), BigInt::one());
    }
    p
}

/// Determinant by expansion along the first row.
fn determinant(m: &[Vec<ExactPolynomial>], n: usize) -> ExactPolynomial {
    match m.len() {
        0 => ExactPolynomial::one(n),
        1 => m[0][0].clone(),
        len => {
            let mut acc = ExactPolynomial::zero(n);
            for col in 0..len {
                if m[0][col].is_zero() {
                    continue;
                }
                let minor: Vec<Vec<ExactPolynomial>> = m[1..]
                    .iter()
                    .map(|row| {
                        row.iter()
                            .enumerate()
                            .filter(|&(j, _)| j != col)
                            .map(|(_, x)| x.clone())
                            .collect()
                    })
                    .collect();
                let term = &m[0][col] * &determinant(&minor, n);
                acc = if col % 2 == 0 { &acc + &term } else { &acc - &term };
            }
            acc
        }
    }
}

/// `s_lambda(x_1, ..., x_n) = det(h_{lambda_i - i + j})`.
pub fn schur(lambda: &Partition, n: usize) -> Result<ExactPolynomial> {
    let shape = lambda.with_len(n)?;
    let parts = shape.trimmed();
    let l = parts.len();
    let m: Vec<Vec<ExactPolynomial>> = (0..l)
        .map(|i| {
            (0..l)
                .map(|j| complete_homogeneous(parts[i] as i64 - i as i64 + j as i64, n))
                .collect()
        })
        .collect();
    Ok(determinant(&m, n))
}

/// Expansion of a symmetric polynomial in the Schur basis.
pub fn decompose_into_schur(p: &ExactPolynomial) -> Result<BTreeMap<Partition, i64>> {
    if !p.is_symmetric() {
        return Err(Error::NotSymmetric);
    }
    let n = p.nvars();
    let mut rest = p.clone();
    let mut out = BTreeMap::new();
    while let Some((e, c)) = rest.leading_term() {
        let lambda = Partition::new(e.clone())
            .map_err(|_| Error::Axiom(format!("leading exponent {e:?} is not a partition")))?;
        let c = c.clone();
        if c.is_negative() {
            return Err(Error::NegativeCoefficient(lambda.to_string()));
        }
        let s = schur(&lambda, n)?;
        let scaled = &s * &ExactPolynomial::monomial(vec![0; n], c.clone());
        rest = &rest - &scaled;
        out.insert(lambda, i64::try_from(&c).expect("coefficient fits in i64"));
    }
    Ok(out)
}

/// `s_lambda(1, ..., 1)`, the dimension of the irreducible representation.
pub fn dim_of(lambda: &Partition, n: usize) -> Result<BigInt> {
    Ok(schur(lambda, n)?.eval_ones())
}

/// Structure constant of `s_mu1 * s_mu2` at `s_lambda` in `n` variables.
pub fn lr_oracle(mu1: &Partition, mu2: &Partition, lambda: &Partition, n: usize) -> Result<i64> {
    let prod = &schur(mu1, n)? * &schur(mu2, n)?;
    let dec = decompose_into_schur(&prod)?;
    let key = lambda.with_len(n)?;
    Ok(dec.get(&key).copied().unwrap_or(0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::weights::enumerate_partitions;

    fn p(s: &str) -> Partition {
        s.parse().unwrap()
    }

    fn big(x: i64) -> BigInt {
        BigInt::from(x)
    }

    #[test]
    fn small_schur_polynomials() {
        let s = schur(&p("1,0"), 2).unwrap();
        assert_eq!(s.to_string(), "x1 + x2");
        let s = schur(&p("1,1"), 2).unwrap();
        assert_eq!(s.to_string(), "x1*x2");
        let s = schur(&p("2,1"), 2).unwrap();
        assert_eq!(s.coeff(&[2, 1]), big(1));
        assert_eq!(s.coeff(&[1, 2]), big(1));
        assert_eq!(s.terms().count(), 2);
        assert!(schur(&p("1,1,1"), 2).is_err());
    }

    #[test]
    fn decompositions() {
        let x = schur(&p("1,0"), 2).unwrap();
        let d = decompose_into_schur(&(&x * &x)).unwrap();
        assert_eq!(d, BTreeMap::from([(p("1,1"), 1), (p("2,0"), 1)]));

        let s = schur(&p("3,1,0"), 3).unwrap();
        assert_eq!(decompose_into_schur(&s).unwrap(), BTreeMap::from([(p("3,1,0"), 1)]));

        let e2 = schur(&p("1,1,0"), 3).unwrap();
        let d = decompose_into_schur(&(&e2 * &e2)).unwrap();
        assert_eq!(d, BTreeMap::from([(p("2,1,1"), 1), (p("2,2,0"), 1)]));

        let bad = ExactPolynomial::monomial(vec![1, 0], big(1));
        assert_eq!(decompose_into_schur(&bad), Err(Error::NotSymmetric));
        let neg = -&schur(&p("1,0"), 2).unwrap();
        assert!(matches!(decompose_into_schur(&neg), Err(Error::NegativeCoefficient(_))));
    }

    #[test]
    fn dimensions() {
        for n in 1..=5 {
            assert_eq!(dim_of(&Partition::row(1, n), n).unwrap(), big(n as i64));
        }
        for w in 0..=6 {
            assert_eq!(dim_of(&Partition::row(w, 2), 2).unwrap(), big(w as i64 + 1));
        }
        for n in 2..=5 {
            let lam = p("1,1").with_len(n).unwrap();
            assert_eq!(dim_of(&lam, n).unwrap(), big((n * (n - 1) / 2) as i64));
        }
        assert_eq!(dim_of(&p("2,1,0"), 3).unwrap(), big(8));
    }

    #[test]
    fn symmetric_and_pieri() {
        for n in 1..=4 {
            let box1 = schur(&Partition::row(1, n), n).unwrap();
            for k in 0..=6 {
                for lam in enumerate_partitions(n, k) {
                    let s = schur(&lam, n).unwrap();
                    assert!(s.is_symmetric());
                    assert_eq!(s.leading_term().unwrap().0, &lam.parts().to_vec());
                    let d = decompose_into_schur(&(&box1 * &s)).unwrap();
                    assert!(d.values().all(|&m| m == 1));
                }
            }
        }
    }

    #[test]
    fn lr_small() {
        assert_eq!(lr_oracle(&p("2,1,0"), &p("2,1,0"), &p("3,2,1"), 3).unwrap(), 2);
        assert_eq!(lr_oracle(&p("1,0"), &p("1,0"), &p("2,0"), 2).unwrap(), 1);
    }
}
