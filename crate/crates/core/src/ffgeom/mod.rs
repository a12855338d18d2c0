//! Brute-force geometry over prime fields `F_q`.
//!
//! Every count here enumerates explicit objects (matrices, subspaces, flags)
//! and checks the defining conditions directly. Enumeration sizes are bounded
//! by a [`Budget`] of estimated elementary field operations.

pub mod count;
pub mod field;
pub mod interp;
pub mod lemma;
pub mod nilpotent;
pub mod subspace;
pub mod verify;

pub use count::{
    count_mflags, count_spaltenstein, count_tensor_variety, count_tensor_variety_stratified,
    TensorCounter,
};
pub use field::{is_prime, FieldMatrix};
pub use interp::{interpolate, RationalPoly};
pub use lemma::lemma_sum_witness;
pub use nilpotent::{count_nilpotent_orbit, jordan_matrix, jordan_type, OrbitMethod};
pub use subspace::{enumerate_subspaces, gaussian_binomial, Subspace};
pub use verify::{sample_primes, PolynomialCheck};

use crate::error::{Error, Result};

/// Default cap on estimated elementary field operations per count.
pub const DEFAULT_BUDGET: u64 = 100_000_000;

/// Environment variable that overrides [`DEFAULT_BUDGET`].
pub const BUDGET_ENV: &str = "CRYSTALBENCH_BUDGET";

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Budget(u64);

impl Budget {
    pub fn new(ops: u64) -> Self {
        Budget(ops)
    }

    /// Reads [`BUDGET_ENV`], falling back to the default.
    pub fn from_env() -> Result<Self> {
        match std::env::var(BUDGET_ENV) {
            Ok(s) => s
                .trim()
                .parse()
                .map(Budget)
                .map_err(|_| Error::Parse(format!("{BUDGET_ENV}={s:?} is not an integer"))),
            Err(_) => Ok(Budget::default()),
        }
    }

    pub fn ops(&self) -> u64 {
        self.0
    }

    pub fn allows(&self, needed: u128) -> bool {
        needed <= self.0 as u128
    }

    pub fn check(&self, needed: u128) -> Result<()> {
        if self.allows(needed) {
            Ok(())
        } else {
            Err(Error::BudgetExceeded { needed, budget: self.0 })
        }
    }
}

impl Default for Budget {
    fn default() -> Self {
        Budget(DEFAULT_BUDGET)
    }
}
