use alloc::format;
use alloc::vec::Vec;
use core::f64::consts::PI;

// inherent float methods are only there when std is linked
#[allow(unused_imports)]
use num_traits::Float;

use super::matrix::{add2, add4, expectation4, identity2, kron, pauli, pauli_dot, scale2, Mat4};
use super::QuantumState;
use crate::tolerance;
use crate::{Error, Result};

/// A unit vector on the Bloch sphere; as an observable it is `n . sigma`
/// with eigenvalues +1 and -1.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BlochVector([f64; 3]);

impl BlochVector {
    pub fn new(components: [f64; 3]) -> Result<Self> {
        let norm = norm3(components);
        if (norm - 1.0).abs() > tolerance::ALGEBRAIC {
            return Err(Error::NotUnitVector(norm));
        }
        Ok(BlochVector(components))
    }

    pub fn normalized(components: [f64; 3]) -> Result<Self> {
        let norm = norm3(components);
        if norm == 0.0 || !norm.is_finite() {
            return Err(Error::NotUnitVector(norm));
        }
        Ok(BlochVector(components.map(|v| v / norm)))
    }

    pub fn from_angles(theta: f64, phi: f64) -> Self {
        let (st, ct) = theta.sin_cos();
        let (sp, cp) = phi.sin_cos();
        BlochVector([st * cp, st * sp, ct])
    }

    pub const X: BlochVector = BlochVector([1.0, 0.0, 0.0]);
    pub const Y: BlochVector = BlochVector([0.0, 1.0, 0.0]);
    pub const Z: BlochVector = BlochVector([0.0, 0.0, 1.0]);

    pub fn components(&self) -> [f64; 3] {
        self.0
    }

    pub fn negated(&self) -> Self {
        BlochVector(self.0.map(|v| -v))
    }

    pub fn dot(&self, other: &BlochVector) -> f64 {
        dot3(self.0, other.0)
    }
}

fn dot3(a: [f64; 3], b: [f64; 3]) -> f64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

fn norm3(a: [f64; 3]) -> f64 {
    dot3(a, a).sqrt()
}

/// Two +/-1 observables per party.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChshSetting {
    pub alice: [BlochVector; 2],
    pub bob: [BlochVector; 2],
}

impl ChshSetting {
    pub fn new(alice: [BlochVector; 2], bob: [BlochVector; 2]) -> Self {
        ChshSetting { alice, bob }
    }

    /// `A in {Z, X}`, `B in {(Z+X)/sqrt 2, (Z-X)/sqrt 2}`.
    pub fn standard() -> Self {
        let s = core::f64::consts::FRAC_1_SQRT_2;
        ChshSetting {
            alice: [BlochVector::Z, BlochVector::X],
            bob: [BlochVector([s, 0.0, s]), BlochVector([-s, 0.0, s])],
        }
    }

    /// Sign of the correlator `<A_x B_y>` in `A0(B0+B1) + A1(B0-B1)`.
    pub fn sign(x: usize, y: usize) -> f64 {
        if x == 1 && y == 1 {
            -1.0
        } else {
            1.0
        }
    }
}

/// `A0 (x) (B0 + B1) + A1 (x) (B0 - B1)`.
pub fn chsh_operator(setting: &ChshSetting) -> Mat4 {
    let a0 = pauli_dot(setting.alice[0].0);
    let a1 = pauli_dot(setting.alice[1].0);
    let b0 = pauli_dot(setting.bob[0].0);
    let b1 = pauli_dot(setting.bob[1].0);
    add4(
        &kron(&a0, &add2(&b0, &b1, 1.0)),
        &kron(&a1, &add2(&b0, &b1, -1.0)),
    )
}

fn require_two_qubits(state: &QuantumState) -> Result<()> {
    if state.dim() != 4 {
        return Err(Error::DimensionMismatch {
            expected: 4,
            found: state.dim(),
        });
    }
    Ok(())
}

/// `<psi| CHSH |psi>`.
pub fn chsh_expectation(state: &QuantumState, setting: &ChshSetting) -> Result<f64> {
    require_two_qubits(state)?;
    Ok(expectation4(state, &chsh_operator(setting)).re)
}

/// `T[i][j] = <psi| sigma_i (x) sigma_j |psi>`.
pub fn correlation_matrix(state: &QuantumState) -> Result<[[f64; 3]; 3]> {
    require_two_qubits(state)?;
    let mut t = [[0.0; 3]; 3];
    for (i, row) in t.iter_mut().enumerate() {
        for (j, v) in row.iter_mut().enumerate() {
            *v = expectation4(state, &kron(&pauli(i), &pauli(j))).re;
        }
    }
    Ok(t)
}

/// Joint outcome probabilities `p[a][b]` for observables `a.sigma (x) b.sigma`;
/// index 0 is outcome +1 and index 1 is outcome -1.
pub fn joint_outcome_distribution(
    state: &QuantumState,
    alice: &BlochVector,
    bob: &BlochVector,
) -> Result<[[f64; 2]; 2]> {
    require_two_qubits(state)?;
    let projector = |n: &BlochVector, sign: f64| scale2(&add2(&identity2(), &pauli_dot(n.0), sign), 0.5);
    let mut p = [[0.0; 2]; 2];
    for (ia, sa) in [1.0, -1.0].into_iter().enumerate() {
        for (ib, sb) in [1.0, -1.0].into_iter().enumerate() {
            let m = kron(&projector(alice, sa), &projector(bob, sb));
            p[ia][ib] = expectation4(state, &m).re.max(0.0);
        }
    }
    Ok(p)
}

/// Maximal CHSH value of `a|00> + b|11>` with `|a|^2 = alpha_sq`:
/// `2 sqrt(1 + 4 |a|^2 |b|^2)`.
pub fn chsh_closed_form(alpha_sq: f64) -> f64 {
    2.0 * (1.0 + 4.0 * alpha_sq * (1.0 - alpha_sq)).sqrt()
}

/// The closed-form maximum together with a setting that attains it.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChshOptimum {
    pub alpha_sq: f64,
    pub value: f64,
    pub numeric_value: f64,
    pub setting: ChshSetting,
}

/// Closed-form maximum for a Schmidt-form state, cross-checked against a
/// numeric maximisation over measurement settings.
pub fn chsh_optimal_value(state: &QuantumState) -> Result<ChshOptimum> {
    require_two_qubits(state)?;
    let amps = state.amplitudes();
    if amps[1].norm() > tolerance::ALGEBRAIC || amps[2].norm() > tolerance::ALGEBRAIC {
        return Err(Error::NotSchmidtForm);
    }
    let alpha_sq = amps[0].norm_sqr();
    let value = chsh_closed_form(alpha_sq);
    let (numeric_value, setting) = numeric_chsh_maximum(state)?;
    if (numeric_value - value).abs() > tolerance::OPTIMIZATION {
        return Err(Error::Inconsistent(format!(
            "closed-form CHSH maximum {value} disagrees with numeric maximum {numeric_value}"
        )));
    }
    Ok(ChshOptimum {
        alpha_sq,
        value,
        numeric_value,
        setting,
    })
}

/// Maximises the CHSH value of an arbitrary two-qubit state over settings.
///
/// Bob's two directions are searched over Bloch angles (coarse grid, then a
/// compass search); for fixed Bob directions Alice's best choice is
/// `T(b0 +/- b1)` normalised. The returned value is recomputed from the full
/// 4x4 operator with the final setting.
pub fn numeric_chsh_maximum(state: &QuantumState) -> Result<(f64, ChshSetting)> {
    let t = correlation_matrix(state)?;
    let apply = |v: [f64; 3]| -> [f64; 3] { [dot3(t[0], v), dot3(t[1], v), dot3(t[2], v)] };
    let objective = |p: &[f64; 4]| -> f64 {
        let b0 = BlochVector::from_angles(p[0], p[1]).0;
        let b1 = BlochVector::from_angles(p[2], p[3]).0;
        let plus = [b0[0] + b1[0], b0[1] + b1[1], b0[2] + b1[2]];
        let minus = [b0[0] - b1[0], b0[1] - b1[1], b0[2] - b1[2]];
        norm3(apply(plus)) + norm3(apply(minus))
    };

    let thetas: Vec<f64> = (0..=8).map(|k| k as f64 * PI / 8.0).collect();
    let phis: Vec<f64> = (0..8).map(|k| k as f64 * PI / 4.0).collect();
    let mut candidates: Vec<([f64; 4], f64)> = Vec::new();
    for &t0 in &thetas {
        for &p0 in &phis {
            for &t1 in &thetas {
                for &p1 in &phis {
                    let p = [t0, p0, t1, p1];
                    candidates.push((p, objective(&p)));
                }
            }
        }
    }
    // stable sort keeps grid order among ties
    candidates.sort_by(|a, b| b.1.partial_cmp(&a.1).unwrap_or(core::cmp::Ordering::Equal));

    let mut best = candidates[0];
    for &(start, _) in candidates.iter().take(4) {
        let refined = compass_search(&objective, start);
        if refined.1 > best.1 {
            best = refined;
        }
    }

    let p = best.0;
    let b0 = BlochVector::from_angles(p[0], p[1]);
    let b1 = BlochVector::from_angles(p[2], p[3]);
    let pick = |v: [f64; 3]| BlochVector::normalized(apply(v)).unwrap_or(BlochVector::Z);
    let a0 = pick([b0.0[0] + b1.0[0], b0.0[1] + b1.0[1], b0.0[2] + b1.0[2]]);
    let a1 = pick([b0.0[0] - b1.0[0], b0.0[1] - b1.0[1], b0.0[2] - b1.0[2]]);
    let setting = ChshSetting::new([a0, a1], [b0, b1]);
    Ok((chsh_expectation(state, &setting)?, setting))
}

fn compass_search(f: &impl Fn(&[f64; 4]) -> f64, start: [f64; 4]) -> ([f64; 4], f64) {
    let mut x = start;
    let mut fx = f(&x);
    let mut step = 0.2;
    while step > 1e-10 {
        let mut improved = false;
        for i in 0..4 {
            for dir in [1.0, -1.0] {
                let mut y = x;
                y[i] += dir * step;
                let fy = f(&y);
                if fy > fx {
                    x = y;
                    fx = fy;
                    improved = true;
                }
            }
        }
        if !improved {
            step *= 0.5;
        }
    }
    (x, fx)
}
