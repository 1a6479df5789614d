use serde::{Deserialize, Serialize};

/// Field requested for a computation. Results are always computed over the
/// rationals; a prime field adds a mod-p rank comparison to `hhcyc check`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Field {
    Rationals,
    Prime(u64),
}

impl std::fmt::Display for Field {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Field::Rationals => f.write_str("q"),
            Field::Prime(p) => write!(f, "fp:{p}"),
        }
    }
}

/// Truncation bounds shared by every homology computation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComputationParams {
    /// Maximal number of tail entries in a Hochschild word.
    pub max_bar_length: usize,
    /// Number of `u`-powers kept in cyclic complexes.
    pub max_u_power: usize,
    /// Homological degrees reported, inclusive.
    pub window: (i64, i64),
    pub field: Field,
}

impl Default for ComputationParams {
    fn default() -> Self {
        Self { max_bar_length: 6, max_u_power: 4, window: (-4, 6), field: Field::Rationals }
    }
}

impl ComputationParams {
    pub fn with_bar_length(self, max_bar_length: usize) -> Self {
        Self { max_bar_length, ..self }
    }

    pub fn with_u_power(self, max_u_power: usize) -> Self {
        Self { max_u_power, ..self }
    }

    pub fn with_window(self, lo: i64, hi: i64) -> Self {
        Self { window: (lo, hi), ..self }
    }

    /// Both bounds raised by one, for stability comparisons.
    pub fn bumped(self) -> Self {
        Self { max_bar_length: self.max_bar_length + 1, max_u_power: self.max_u_power + 1, ..self }
    }

    pub fn degrees(&self) -> impl Iterator<Item = i64> {
        self.window.0..=self.window.1
    }
}
