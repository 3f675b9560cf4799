// inherent float methods are only there when std is linked
#[allow(unused_imports)]
use num_traits::Float;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::quantum::{joint_outcome_distribution, ChshSetting, QuantumState};
use crate::{Error, Result};

/// Fewest samples accepted by [`chsh_monte_carlo`].
pub const MIN_SAMPLES: u64 = 1_000;

#[derive(Debug, Clone, PartialEq)]
pub struct ChshEstimate {
    pub estimate: f64,
    pub standard_error: f64,
    pub samples: u64,
    /// Rounds per setting pair `(x, y)`.
    pub counts: [[u64; 2]; 2],
    /// Sample mean of `a b` per setting pair.
    pub correlations: [[f64; 2]; 2],
}

/// Simulated CHSH experiment: each round draws both settings uniformly and
/// the outcome pair from the Born joint distribution.
///
/// The standard error combines the four per-setting binomial errors,
/// `sum (1 - E_xy^2) / n_xy`.
pub fn chsh_monte_carlo(
    state: &QuantumState,
    setting: &ChshSetting,
    samples: u64,
    seed: u64,
) -> Result<ChshEstimate> {
    if samples < MIN_SAMPLES {
        return Err(Error::OutOfRange {
            what: "samples",
            value: samples as f64,
        });
    }
    let mut cumulative = [[[0.0f64; 4]; 2]; 2];
    for x in 0..2 {
        for y in 0..2 {
            let p = joint_outcome_distribution(state, &setting.alice[x], &setting.bob[y])?;
            let flat = [p[0][0], p[0][1], p[1][0], p[1][1]];
            let total: f64 = flat.iter().sum();
            let mut acc = 0.0;
            for (k, v) in flat.iter().enumerate() {
                acc += v / total;
                cumulative[x][y][k] = acc;
            }
            cumulative[x][y][3] = 1.0;
        }
    }

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut counts = [[0u64; 2]; 2];
    let mut sums = [[0i64; 2]; 2];
    for _ in 0..samples {
        let x = rng.gen_range(0..2usize);
        let y = rng.gen_range(0..2usize);
        let u: f64 = rng.gen();
        let k = cumulative[x][y].iter().position(|&c| u < c).unwrap_or(3);
        // k = 2a + b with 0 meaning +1; the product is +1 when a == b
        let product = if k == 0 || k == 3 { 1 } else { -1 };
        counts[x][y] += 1;
        sums[x][y] += product;
    }

    let mut correlations = [[0.0; 2]; 2];
    let mut estimate = 0.0;
    let mut variance = 0.0;
    for x in 0..2 {
        for y in 0..2 {
            let n = counts[x][y];
            if n == 0 {
                continue;
            }
            let e = sums[x][y] as f64 / n as f64;
            correlations[x][y] = e;
            estimate += ChshSetting::sign(x, y) * e;
            variance += (1.0 - e * e) / n as f64;
        }
    }
    Ok(ChshEstimate {
        estimate,
        standard_error: variance.sqrt(),
        samples,
        counts,
        correlations,
    })
}
