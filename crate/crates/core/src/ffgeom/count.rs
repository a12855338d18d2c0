//! Point counts of Spaltenstein varieties, flag varieties killed stepwise by a
//! nilpotent, and tensor product varieties.
//!
//! All three reduce to one engine: count the flags `0 = F_0 ⊂ F_1 ⊂ … ⊂ F_l = V`
//! of `t`-invariant subspaces on whose subquotients `t` has prescribed Jordan
//! types. The first subspace is enumerated directly, checked for invariance and
//! for the type of the restriction, and the rest of the flag is counted on the
//! quotient. The remaining count depends only on the conjugacy class of the
//! quotient operator, so it is memoized by its Jordan type.

use std::collections::HashMap;
use std::sync::Mutex;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::ffgeom::field::{check_prime, FieldMatrix};
use crate::ffgeom::nilpotent::{
    count_nilpotent_orbit, exhaustive_cost, is_nilpotent, jordan_matrix, jordan_type,
    sum_over_matrices, OrbitMethod,
};
use crate::ffgeom::subspace::{echelon_patterns, for_each_in_pattern, gaussian_binomial, Subspace};
use crate::ffgeom::Budget;
use crate::weights::{enumerate_partitions, Partition, Weight};

/// Largest `|mu|` for two-step Spaltenstein counts.
pub const MAX_SPALTENSTEIN_TWO_STEP: u64 = 5;
/// Largest `|mu|` for Spaltenstein counts with three or more steps.
pub const MAX_SPALTENSTEIN_MULTI_STEP: u64 = 4;
/// Largest `|v|` for flag counts.
pub const MAX_FLAG_SIZE: u64 = 5;
/// Largest number of flag steps.
pub const MAX_FLAG_STEPS: usize = 4;
/// Largest `|mu^1| + |mu^2|` for exhaustive tensor-variety counts (4 only at `q = 2`).
pub const MAX_TENSOR_SIZE: u64 = 4;

type Memo = Mutex<HashMap<(usize, Vec<u32>), u128>>;

/// Estimated work of a flag count, ignoring the savings from memoization
/// across quotient types at each level.
fn flag_cost(n: usize, steps: &[Partition], q: u32) -> u128 {
    let mut remaining = n;
    let mut cost = 0u128;
    let cube = (n.max(1) as u128).pow(3);
    for step in &steps[..steps.len().saturating_sub(1)] {
        let d = step.size() as usize;
        cost += gaussian_binomial(remaining, d, q as u64) * cube;
        remaining -= d;
    }
    cost.max(1)
}

/// Whether `x` is invariant and `t|_X` has type `first`; if so, the quotient operator.
fn admissible_quotient(x: &Subspace, t: &FieldMatrix, first: &Partition) -> Option<FieldMatrix> {
    if !x.is_invariant(t) {
        return None;
    }
    let blocks = x.adapted_blocks(t)?;
    let restricted = jordan_type(&blocks.restriction).expect("restriction of a nilpotent");
    restricted.same_shape(first).then_some(blocks.quotient)
}

fn count_rest(t: &FieldMatrix, steps: &[Partition], memo: &Memo) -> u128 {
    let ty = jordan_type(t).expect("quotient of a nilpotent");
    if steps.len() == 1 {
        return u128::from(ty.same_shape(&steps[0]));
    }
    let key = (steps.len(), ty.trimmed().to_vec());
    if let Some(&c) = memo.lock().expect("memo lock").get(&key) {
        return c;
    }
    let (n, q) = (t.size(), t.modulus());
    let d = steps[0].size() as usize;
    let mut total = 0u128;
    for (pivots, free) in echelon_patterns(n, d) {
        for_each_in_pattern(n, q, &pivots, &free, |x| {
            if let Some(quot) = admissible_quotient(&x, t, &steps[0]) {
                total += count_rest(&quot, &steps[1..], memo);
            }
        });
    }
    memo.lock().expect("memo lock").insert(key, total);
    total
}

/// Number of flags `0 = F_0 ⊂ … ⊂ F_l = V` of `t`-invariant subspaces with
/// `J(t on F_i / F_{i-1}) = steps[i-1]`.
///
/// The outermost subspace enumeration runs in parallel; the sum is exact.
pub fn count_flags(t: &FieldMatrix, steps: &[Partition]) -> Result<u128> {
    let n = t.size();
    let total: u64 = steps.iter().map(Partition::size).sum();
    if total != n as u64 {
        return Err(Error::SizeMismatch { expected: n as u64, actual: total });
    }
    if !is_nilpotent(t) {
        return Err(Error::NotNilpotent);
    }
    if steps.is_empty() {
        return Ok(u128::from(n == 0));
    }
    if steps.len() == 1 {
        return Ok(u128::from(jordan_type(t)?.same_shape(&steps[0])));
    }
    let memo: Memo = Mutex::new(HashMap::new());
    let q = t.modulus();
    let d = steps[0].size() as usize;
    let patterns = echelon_patterns(n, d);
    Ok(patterns
        .par_iter()
        .map(|(pivots, free)| {
            let mut acc = 0u128;
            for_each_in_pattern(n, q, pivots, free, |x| {
                if let Some(quot) = admissible_quotient(&x, t, &steps[0]) {
                    acc += count_rest(&quot, &steps[1..], &memo);
                }
            });
            acc
        })
        .sum())
}

/// Zero-type steps: `t` acts by zero on each subquotient of dimension `v_i`.
fn zero_steps(v: &Weight) -> Vec<Partition> {
    v.entries().iter().map(|&vi| Partition::row(vi, 1)).collect()
}

/// `#S_l(Lambda, mu)(F_q)`: flags of `t = jordan_matrix(mu)`-invariant subspaces
/// whose subquotients have Jordan types `lambdas`.
pub fn count_spaltenstein(
    lambdas: &[Partition],
    mu: &Partition,
    q: u32,
    budget: Budget,
) -> Result<u128> {
    check_prime(q as u64)?;
    let total: u64 = lambdas.iter().map(Partition::size).sum();
    if total != mu.size() {
        return Err(Error::SizeMismatch { expected: mu.size(), actual: total });
    }
    let cap = if lambdas.len() <= 2 { MAX_SPALTENSTEIN_TWO_STEP } else { MAX_SPALTENSTEIN_MULTI_STEP };
    if mu.size() > cap {
        return Err(Error::SizeCap(format!(
            "Spaltenstein count with {} steps needs |mu| <= {cap}, got {}",
            lambdas.len(),
            mu.size()
        )));
    }
    let t = jordan_matrix(mu, q)?;
    budget.check(flag_cost(t.size(), lambdas, q))?;
    count_flags(&t, lambdas)
}

/// Number of `N`-step flags of dimension `v` with `t F_i ⊂ F_{i-1}`, for `t` of type `lambda`.
pub fn count_mflags(v: &Weight, lambda: &Partition, q: u32, budget: Budget) -> Result<u128> {
    check_prime(q as u64)?;
    if v.size() != lambda.size() {
        return Err(Error::SizeMismatch { expected: lambda.size(), actual: v.size() });
    }
    if v.size() > MAX_FLAG_SIZE || v.len() > MAX_FLAG_STEPS {
        return Err(Error::SizeCap(format!(
            "flag counts need |v| <= {MAX_FLAG_SIZE} and N <= {MAX_FLAG_STEPS}, got v = {v}"
        )));
    }
    let t = jordan_matrix(lambda, q)?;
    let steps = zero_steps(v);
    budget.check(flag_cost(t.size(), &steps, q))?;
    count_flags(&t, &steps)
}

fn check_tensor_args(v: &Weight, mu1: &Partition, mu2: &Partition) -> Result<Option<usize>> {
    let n = mu1.size() + mu2.size();
    if v.size() != n {
        return Ok(None);
    }
    if n > MAX_TENSOR_SIZE || v.len() > MAX_FLAG_STEPS {
        return Err(Error::SizeCap(format!(
            "tensor-variety counts need |mu1|+|mu2| <= {MAX_TENSOR_SIZE} and N <= {MAX_FLAG_STEPS}"
        )));
    }
    Ok(Some(n as usize))
}

/// Exhaustive tensor-variety counter for one ambient dimension and field.
///
/// Enumerates every `n x n` matrix once, keeps the nilpotent ones, and caches
/// the two fibre counts per individual matrix, so many `(v, mu1, mu2)` can be
/// counted over the same `(n, q)` without repeating work. Each nilpotent's
/// fibres are computed from that matrix itself.
pub struct TensorCounter {
    n: usize,
    q: u32,
    budget: Budget,
    nilpotents: Vec<FieldMatrix>,
    fibres: HashMap<Vec<Vec<u32>>, Vec<u128>>,
}

impl TensorCounter {
    pub fn new(n: usize, q: u32, budget: Budget) -> Result<Self> {
        check_prime(q as u64)?;
        if n as u64 > MAX_TENSOR_SIZE {
            return Err(Error::SizeCap(format!(
                "tensor-variety counts need |mu1|+|mu2| <= {MAX_TENSOR_SIZE}, got {n}"
            )));
        }
        if n == 4 && q != 2 {
            return Err(Error::SizeCap(format!(
                "exhaustive tensor-variety counts in dimension 4 only over F_2, got q = {q}"
            )));
        }
        budget.check(exhaustive_cost(n, q))?;
        let nilpotents = Mutex::new(Vec::new());
        sum_over_matrices(n, q, |t| {
            if is_nilpotent(t) {
                nilpotents.lock().expect("nilpotent list").push(t.clone());
            }
            0
        });
        let mut nilpotents = nilpotents.into_inner().expect("nilpotent list");
        nilpotents.sort_by(|a, b| a.rows().cmp(&b.rows()));
        Ok(TensorCounter { n, q, budget, nilpotents, fibres: HashMap::new() })
    }

    pub fn nilpotent_count(&self) -> usize {
        self.nilpotents.len()
    }

    /// `#{flags with these steps}` for every nilpotent, in enumeration order.
    fn fibre(&mut self, steps: &[Partition]) -> Result<&[u128]> {
        let key: Vec<Vec<u32>> = steps.iter().map(|s| s.trimmed().to_vec()).collect();
        if !self.fibres.contains_key(&key) {
            let cost = self.nilpotents.len() as u128 * flag_cost(self.n, steps, self.q);
            self.budget.check(cost)?;
            let counts = self
                .nilpotents
                .par_iter()
                .map(|t| count_flags(t, steps))
                .collect::<Result<Vec<_>>>()?;
            self.fibres.insert(key.clone(), counts);
        }
        Ok(&self.fibres[&key])
    }

    /// `#T_N(F_q)`; 0 when `|v| != |mu1| + |mu2|`.
    pub fn count(&mut self, v: &Weight, mu1: &Partition, mu2: &Partition) -> Result<u128> {
        let Some(n) = check_tensor_args(v, mu1, mu2)? else {
            return Ok(0);
        };
        if n != self.n {
            return Err(Error::SizeMismatch { expected: self.n as u64, actual: n as u64 });
        }
        let subspaces = self.fibre(&[mu1.clone(), mu2.clone()])?.to_vec();
        let flags = self.fibre(&zero_steps(v))?;
        Ok(subspaces.iter().zip(flags).map(|(x, f)| x * f).sum())
    }
}

/// `#T_N(F_q)`: triples `(t, X, F)` with `t` nilpotent on `F_q^n`, `X` a
/// `t`-invariant subspace with `J(t|_X) = mu1` and `J(t on V/X) = mu2`, and `F` an
/// `N`-step flag of dimension `v` with `t F_i ⊂ F_{i-1}`.
///
/// Visits every matrix and counts both fibres over each nilpotent directly.
/// Returns 0 when `|v| != |mu1| + |mu2|`.
pub fn count_tensor_variety(
    v: &Weight,
    mu1: &Partition,
    mu2: &Partition,
    q: u32,
    budget: Budget,
) -> Result<u128> {
    check_prime(q as u64)?;
    let Some(n) = check_tensor_args(v, mu1, mu2)? else {
        return Ok(0);
    };
    TensorCounter::new(n, q, budget)?.count(v, mu1, mu2)
}

/// `#T_N(F_q)` via the stratification by the Jordan type `lambda` of `t`:
/// `sum_lambda #O_lambda · #S_2((mu1, mu2), lambda) · #M_N(v, lambda)`.
pub fn count_tensor_variety_stratified(
    v: &Weight,
    mu1: &Partition,
    mu2: &Partition,
    q: u32,
    budget: Budget,
) -> Result<u128> {
    check_prime(q as u64)?;
    let Some(n) = check_tensor_args(v, mu1, mu2)? else {
        return Ok(0);
    };
    let pair = [mu1.clone(), mu2.clone()];
    let mut total = 0u128;
    for lambda in enumerate_partitions(n.max(1), n as u32) {
        if lambda.num_parts() > v.len() {
            // t^N = 0 is forced by the flag, so longer types contribute nothing.
            continue;
        }
        let s = count_spaltenstein(&pair, &lambda, q, budget)?;
        if s == 0 {
            continue;
        }
        let m = count_mflags(v, &lambda, q, budget)?;
        if m == 0 {
            continue;
        }
        total += count_nilpotent_orbit(&lambda, q, OrbitMethod::Auto, budget)? * s * m;
    }
    Ok(total)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Partition {
        s.parse().unwrap()
    }

    fn w(s: &str) -> Weight {
        s.parse().unwrap()
    }

    #[test]
    fn spaltenstein_two_lines() {
        let b = Budget::default();
        let lines = [p("1"), p("1")];
        for q in [2u32, 3, 5, 7] {
            // t = 0: every line works.
            assert_eq!(count_spaltenstein(&lines, &p("2,0"), q, b).unwrap(), q as u128 + 1);
            // t a single 2-block: only ker t.
            assert_eq!(count_spaltenstein(&lines, &p("1,1"), q, b).unwrap(), 1);
        }
    }

    #[test]
    fn one_step_is_trivial() {
        let b = Budget::default();
        for mu in [p("2,1"), p("1,1,1"), p("3")] {
            assert_eq!(count_spaltenstein(&[mu.clone()], &mu, 3, b).unwrap(), 1);
        }
        assert_eq!(count_spaltenstein(&[p("2,1")], &p("1,1,1"), 3, b).unwrap(), 0);
    }

    #[test]
    fn spaltenstein_caps_and_sizes() {
        let b = Budget::default();
        assert!(matches!(
            count_spaltenstein(&[p("1"), p("1")], &p("3"), 2, b),
            Err(Error::SizeMismatch { .. })
        ));
        assert!(matches!(
            count_spaltenstein(&[p("3"), p("3")], &p("6"), 2, b),
            Err(Error::SizeCap(_))
        ));
        assert!(matches!(
            count_spaltenstein(&[p("1"), p("1")], &p("2"), 4, b),
            Err(Error::NotPrime(4))
        ));
    }

    #[test]
    fn mflag_examples() {
        let b = Budget::default();
        for q in [2u32, 3, 5] {
            assert_eq!(count_mflags(&w("1,1"), &p("2,0"), q, b).unwrap(), q as u128 + 1);
            assert_eq!(count_mflags(&w("1,1"), &p("1,1"), q, b).unwrap(), 1);
            for lam in ["2,1,0", "1,1,1", "3,0,0", "2,2,0", "3,1,0"] {
                let lam = p(lam);
                assert_eq!(count_mflags(lam.as_weight(), &lam, q, b).unwrap(), 1);
            }
        }
    }

    #[test]
    fn mflags_with_zero_operator_are_partial_flags() {
        // t = 0: all flags of dimension (1,1,1) in F_q^3, i.e. (q+1)(q^2+q+1).
        for q in [2u128, 3] {
            let c = count_mflags(&w("1,1,1"), &p("3,0,0"), q as u32, Budget::default()).unwrap();
            assert_eq!(c, (q + 1) * (q * q + q + 1));
        }
    }

    #[test]
    fn grassmannian_count() {
        // Zero operator, two zero-type steps: Gr(2, 4).
        let c = count_spaltenstein(&[p("2"), p("2")], &p("4"), 2, Budget::default()).unwrap();
        assert_eq!(c, 35);
    }

    #[test]
    fn tensor_variety_methods_agree() {
        let b = Budget::default();
        let cases = [("1,1", "1,0", "1,0"), ("2,0", "1,0", "1,0"), ("0,2", "1,0", "1,0"), ("1,1,1", "1,0,0", "1,1,0"), ("2,1,0", "2,0,0", "1,0,0")];
        for q in [2u32, 3] {
            for (v, m1, m2) in cases {
                let (v, m1, m2) = (w(v), p(m1), p(m2));
                assert_eq!(
                    count_tensor_variety(&v, &m1, &m2, q, b).unwrap(),
                    count_tensor_variety_stratified(&v, &m1, &m2, q, b).unwrap(),
                    "v={v} mu1={m1} mu2={m2} q={q}"
                );
            }
        }
    }

    #[test]
    fn counter_reuses_fibres() {
        let b = Budget::default();
        let mut counter = TensorCounter::new(2, 3, b).unwrap();
        assert_eq!(counter.nilpotent_count(), 9);
        for v in ["2,0", "1,1", "0,2"] {
            assert_eq!(
                counter.count(&w(v), &p("1,0"), &p("1,0")).unwrap(),
                count_tensor_variety_stratified(&w(v), &p("1,0"), &p("1,0"), 3, b).unwrap()
            );
        }
        assert!(counter.count(&w("1,1,1"), &p("2,0,0"), &p("1,0,0")).is_err());
    }

    #[test]
    fn tensor_variety_size_mismatch_is_empty() {
        let b = Budget::default();
        assert_eq!(count_tensor_variety(&w("1,0"), &p("1,0"), &p("1,0"), 3, b).unwrap(), 0);
        assert_eq!(
            count_tensor_variety_stratified(&w("3,0"), &p("1,0"), &p("1,0"), 3, b).unwrap(),
            0
        );
    }

    #[test]
    fn budget_is_enforced() {
        let err = count_spaltenstein(&[p("2"), p("3")], &p("5"), 7, Budget::new(100));
        assert!(matches!(err, Err(Error::BudgetExceeded { .. })));
    }
}
