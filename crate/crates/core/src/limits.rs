use crate::{Error, Result};

/// Resource limits and the seed for every randomized search.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    /// Maximum number of points of a representation space (or endomorphism
    /// algebra) scanned exhaustively.
    pub enumeration: u64,
    /// Maximum number of candidate graded subspaces examined per submodule
    /// enumeration.
    pub subspaces: u64,
    /// Cap on random trials before a search reports "undecided".
    pub trials: usize,
    pub seed: u64,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            enumeration: 1_000_000,
            subspaces: 10_000_000,
            trials: 200,
            seed: 0x5eed,
        }
    }
}

impl Limits {
    pub fn with_enumeration(mut self, budget: u64) -> Self {
        self.enumeration = budget;
        self
    }

    pub(crate) fn check_points(&self, what: &'static str, needed: u128) -> Result<()> {
        if needed > self.enumeration as u128 {
            return Err(Error::BudgetExceeded {
                what,
                needed,
                budget: self.enumeration,
            });
        }
        Ok(())
    }

    pub(crate) fn check_subspaces(&self, needed: u128) -> Result<()> {
        if needed > self.subspaces as u128 {
            return Err(Error::BudgetExceeded {
                what: "submodule enumeration",
                needed,
                budget: self.subspaces,
            });
        }
        Ok(())
    }
}

/// `base^exp` saturating into `u128`.
pub(crate) fn pow_u128(base: u64, exp: usize) -> u128 {
    let mut acc: u128 = 1;
    for _ in 0..exp {
        acc = acc.saturating_mul(base as u128);
    }
    acc
}
