//! Exact construction and classification of Hadamard star configurations.
//!
//! Everything is computed over the rationals: projective points and linear
//! forms ([`projective`]), Hadamard products of points, hyperplanes and
//! linear spans ([`hadamard`]), star configurations ([`starconfig`]) and the
//! strong-Hadamard classification with witnesses ([`classify`]).

pub mod arith;
pub mod classify;
pub mod error;
pub mod hadamard;
pub mod projective;
pub mod starconfig;

pub use error::{Error, Result};

/// Caps on the subset enumerations done by the combinatorial checks.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Budget {
    /// Coordinate subsets tried by `LinearVariety::meets_delta`.
    pub delta_subsets: u64,
    /// `(n+1)`-subsets tried by the generally-linear check.
    pub generally_linear_subsets: u64,
}

impl Default for Budget {
    fn default() -> Self {
        Self {
            delta_subsets: 100_000,
            generally_linear_subsets: 1_000_000,
        }
    }
}

impl Budget {
    /// The same cap for every enumeration.
    pub fn uniform(cap: u64) -> Self {
        Self {
            delta_subsets: cap,
            generally_linear_subsets: cap,
        }
    }

    pub(crate) fn check_delta(&self, needed: u128) -> Result<()> {
        check(needed, self.delta_subsets)
    }

    pub(crate) fn check_generally_linear(&self, needed: u128) -> Result<()> {
        check(needed, self.generally_linear_subsets)
    }
}

fn check(needed: u128, cap: u64) -> Result<()> {
    if needed > u128::from(cap) {
        Err(Error::CombinatorialBudget { needed, cap })
    } else {
        Ok(())
    }
}

/// `C(n, k)`, saturating at `u128::MAX`.
pub fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = match acc.checked_mul((n - i) as u128) {
            Some(v) => v / (i as u128 + 1),
            None => return u128::MAX,
        };
    }
    acc
}
