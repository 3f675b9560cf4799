//! Numerical tolerances shared by every module.

/// Algebraic identities: normalisation, orthogonality, probability sums.
pub const ALGEBRAIC: f64 = 1e-12;

/// Results of numerical optimisation (simplex optima, CHSH maximisation).
pub const OPTIMIZATION: f64 = 1e-9;

/// Default Born-reproduction tolerance of an ontological model.
pub const BORN_DEFAULT: f64 = 1e-6;

/// Mass at or below this value is treated as measure zero.
pub const SUPPORT_EPSILON: f64 = 1e-12;

/// Normalisation of epistemic states and rows of response functions.
pub const DISTRIBUTION: f64 = 1e-9;

/// Quantum overlaps below this value are refused as near-orthogonal.
pub const NEAR_ORTHOGONAL: f64 = 1e-9;

/// Pivot threshold of the simplex tableau.
pub const PIVOT: f64 = 1e-10;

/// Tolerance set threaded through operations that accept an override.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerances {
    pub algebraic: f64,
    pub optimization: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances {
            algebraic: ALGEBRAIC,
            optimization: OPTIMIZATION,
        }
    }
}
