//! Weights, partitions and the closed-form dimension formulas.
//!
//! A weight of `gl_N` is an `N`-tuple of non-negative integers. Partitions are
//! weights with weakly decreasing entries and are always stored at a fixed
//! length, trailing zeros included. Jordan types of nilpotent operators use the
//! same representation: part `i` counts the Jordan blocks of size at least `i`.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// An element of `Q_m`: a fixed-length tuple of non-negative integers.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Weight(Vec<u32>);

impl Weight {
    pub fn new(entries: Vec<u32>) -> Result<Self> {
        if entries.is_empty() {
            return Err(Error::InvalidWeight("empty tuple".into()));
        }
        Ok(Weight(entries))
    }

    pub fn zero(len: usize) -> Self {
        Weight(vec![0; len.max(1)])
    }

    /// The `i`-th coordinate vector `e_i` (0-based).
    pub fn unit(len: usize, i: usize) -> Self {
        let mut v = vec![0; len];
        v[i] = 1;
        Weight(v)
    }

    pub fn entries(&self) -> &[u32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// `|w|`, the sum of the entries.
    pub fn size(&self) -> u64 {
        self.0.iter().map(|&x| x as u64).sum()
    }

    pub fn get(&self, i: usize) -> u32 {
        self.0.get(i).copied().unwrap_or(0)
    }

    pub fn checked_add(&self, other: &Weight) -> Result<Weight> {
        if self.len() != other.len() {
            return Err(Error::LengthMismatch {
                expected: self.len(),
                actual: other.len(),
            });
        }
        Ok(Weight(
            self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect(),
        ))
    }

    /// `wt + alpha_k` (`k` is 1-based), or `None` if an entry would go negative.
    pub fn add_simple_root(&self, k: usize) -> Option<Weight> {
        let mut v = self.0.clone();
        v[k] = v[k].checked_sub(1)?;
        v[k - 1] += 1;
        Some(Weight(v))
    }

    /// `wt - alpha_k` (`k` is 1-based).
    pub fn sub_simple_root(&self, k: usize) -> Option<Weight> {
        let mut v = self.0.clone();
        v[k - 1] = v[k - 1].checked_sub(1)?;
        v[k] += 1;
        Some(Weight(v))
    }

    /// Pairing with the simple coroot: `wt_k - wt_{k+1}`.
    pub fn coroot_pairing(&self, k: usize) -> i64 {
        self.0[k - 1] as i64 - self.0[k] as i64
    }

    pub fn into_vec(self) -> Vec<u32> {
        self.0
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|x| x.to_string()).collect();
        f.write_str(&parts.join(","))
    }
}

impl FromStr for Weight {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let entries = s
            .split(',')
            .map(|p| {
                p.trim()
                    .parse::<u32>()
                    .map_err(|_| Error::Parse(format!("bad weight entry {p:?} in {s:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Weight::new(entries)
    }
}

impl Serialize for Weight {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Weight {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

pub fn is_partition(w: &Weight) -> bool {
    w.0.windows(2).all(|p| p[0] >= p[1])
}

/// An element of `Q_m^+`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Partition(Weight);

impl Partition {
    pub fn new(entries: Vec<u32>) -> Result<Self> {
        Partition::try_from(Weight::new(entries)?)
    }

    pub fn zero(len: usize) -> Self {
        Partition(Weight::zero(len))
    }

    /// The one-row partition `(size, 0, ..., 0)` of length `len`.
    pub fn row(size: u32, len: usize) -> Self {
        let mut v = vec![0; len.max(1)];
        v[0] = size;
        Partition(Weight(v))
    }

    pub fn as_weight(&self) -> &Weight {
        &self.0
    }

    pub fn parts(&self) -> &[u32] {
        &self.0 .0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn size(&self) -> u64 {
        self.0.size()
    }

    pub fn get(&self, i: usize) -> u32 {
        self.0.get(i)
    }

    /// Number of nonzero parts.
    pub fn num_parts(&self) -> usize {
        self.parts().iter().take_while(|&&p| p > 0).count()
    }

    /// Nonzero parts only.
    pub fn trimmed(&self) -> &[u32] {
        &self.parts()[..self.num_parts()]
    }

    /// Equality up to trailing zeros.
    pub fn same_shape(&self, other: &Partition) -> bool {
        self.trimmed() == other.trimmed()
    }

    /// Pads with zeros or drops trailing zeros to reach `len`.
    pub fn with_len(&self, len: usize) -> Result<Partition> {
        if self.num_parts() > len {
            return Err(Error::TooManyParts(self.to_string(), len));
        }
        let mut v = self.trimmed().to_vec();
        v.resize(len.max(1), 0);
        Ok(Partition(Weight(v)))
    }

    /// Conjugate partition at its natural length `max(lambda_1, 1)`.
    pub fn conjugate(&self) -> Partition {
        self.conjugate_padded(self.get(0).max(1) as usize)
    }

    /// `result_j = #{i : lambda_i >= j}`, padded or truncated to `len`.
    pub fn conjugate_padded(&self, len: usize) -> Partition {
        let v = (1..=len.max(1) as u32)
            .map(|j| self.parts().iter().filter(|&&p| p >= j).count() as u32)
            .collect();
        Partition(Weight(v))
    }

    pub fn checked_add(&self, other: &Partition) -> Result<Partition> {
        Ok(Partition(self.0.checked_add(&other.0)?))
    }

    pub fn into_weight(self) -> Weight {
        self.0
    }
}

impl TryFrom<Weight> for Partition {
    type Error = Error;

    fn try_from(w: Weight) -> Result<Self> {
        if is_partition(&w) {
            Ok(Partition(w))
        } else {
            Err(Error::NotAPartition(w.to_string()))
        }
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

impl FromStr for Partition {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Partition::try_from(s.parse::<Weight>()?)
    }
}

impl Serialize for Partition {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.0.serialize(s)
    }
}

impl<'de> Deserialize<'de> for Partition {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let w = Weight::deserialize(d)?;
        Partition::try_from(w).map_err(serde::de::Error::custom)
    }
}

fn halve(twice: i64) -> Result<i64> {
    if twice % 2 != 0 {
        return Err(Error::HalfInteger { numerator: twice });
    }
    Ok(twice / 2)
}

/// `sum_{i != j} a_i a_j = |a|^2 - sum a_i^2`.
fn off_diagonal_products(a: &[u64]) -> i64 {
    let total: u64 = a.iter().sum();
    (total * total - a.iter().map(|x| x * x).sum::<u64>()) as i64
}

/// Dimension of the nilpotent orbit with Jordan type `lambda`: `|lambda|^2 - sum lambda_i^2`.
pub fn orbit_dim(lambda: &Partition) -> i64 {
    let parts: Vec<u64> = lambda.parts().iter().map(|&p| p as u64).collect();
    off_diagonal_products(&parts)
}

/// Merges coordinates `k` and `k+1` (`k` is 1-based).
pub fn rho(n: usize, k: usize, v: &Weight) -> Result<Weight> {
    if n < 2 || k == 0 || k >= n {
        return Err(Error::ColorOutOfRange { k, max: n.saturating_sub(1) });
    }
    if v.len() != n {
        return Err(Error::LengthMismatch { expected: n, actual: v.len() });
    }
    let e = v.entries();
    let mut out = Vec::with_capacity(n - 1);
    out.extend_from_slice(&e[..k - 1]);
    out.push(e[k - 1] + e[k]);
    out.extend_from_slice(&e[k + 1..]);
    Weight::new(out)
}

/// Dimension of the `l`-step Spaltenstein variety `S_l(Lambda, mu)`.
pub fn spaltenstein_dim(lambdas: &[Partition], mu: &Partition) -> Result<i64> {
    let sizes: Vec<u64> = lambdas.iter().map(Partition::size).collect();
    let total: u64 = sizes.iter().sum();
    if total != mu.size() {
        return Err(Error::SizeMismatch { expected: mu.size(), actual: total });
    }
    let twice = off_diagonal_products(&sizes) - orbit_dim(mu)
        + lambdas.iter().map(orbit_dim).sum::<i64>();
    halve(twice)
}

/// The same dimension via `|mu|(|mu|-1) - sum |lambda^i|(|lambda^i|-1)`.
pub fn spaltenstein_dim_alt(lambdas: &[Partition], mu: &Partition) -> Result<i64> {
    let total: u64 = lambdas.iter().map(Partition::size).sum();
    if total != mu.size() {
        return Err(Error::SizeMismatch { expected: mu.size(), actual: total });
    }
    let pair = |x: u64| (x * x) as i64 - x as i64;
    let twice = pair(mu.size()) - lambdas.iter().map(|l| pair(l.size())).sum::<i64>()
        - orbit_dim(mu)
        + lambdas.iter().map(orbit_dim).sum::<i64>();
    halve(twice)
}

/// Dimension of the variety of `N`-step flags of dimension `v` killed stepwise by a
/// nilpotent of Jordan type `lambda`.
pub fn m_dim(v: &Weight, lambda: &Partition) -> Result<i64> {
    if v.size() != lambda.size() {
        return Err(Error::SizeMismatch { expected: lambda.size(), actual: v.size() });
    }
    let parts: Vec<u64> = v.entries().iter().map(|&x| x as u64).collect();
    halve(off_diagonal_products(&parts) - orbit_dim(lambda))
}

/// Dimension of the tensor product variety with flag dimension `v`.
pub fn t_dim(v: &Weight, mu1: &Partition, mu2: &Partition) -> Result<i64> {
    let expected = mu1.size() + mu2.size();
    if v.size() != expected {
        return Err(Error::SizeMismatch { expected, actual: v.size() });
    }
    let parts: Vec<u64> = v.entries().iter().map(|&x| x as u64).collect();
    let half = halve(off_diagonal_products(&parts) + orbit_dim(mu1) + orbit_dim(mu2))?;
    Ok((mu1.size() * mu2.size()) as i64 + half)
}

/// All of `Q_n(k)` in lexicographic order.
pub fn enumerate_weights(n: usize, k: u32) -> Vec<Weight> {
    fn rec(n: usize, left: u32, prefix: &mut Vec<u32>, out: &mut Vec<Weight>) {
        if prefix.len() + 1 == n {
            prefix.push(left);
            out.push(Weight(prefix.clone()));
            prefix.pop();
            return;
        }
        for x in 0..=left {
            prefix.push(x);
            rec(n, left - x, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    if n > 0 {
        rec(n, k, &mut Vec::with_capacity(n), &mut out);
    }
    out
}

/// All of `Q_n^+(k)` in lexicographic order.
pub fn enumerate_partitions(n: usize, k: u32) -> Vec<Partition> {
    enumerate_weights(n, k)
        .into_iter()
        .filter(is_partition)
        .map(Partition)
        .collect()
}
