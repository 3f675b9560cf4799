//! Small-dimension complex linear algebra: pure states of one or two qubits,
//! rank-1 projective measurements, Born probabilities and the CHSH operator.

mod chsh;
mod matrix;

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::f64::consts::FRAC_1_SQRT_2;

use num_complex::Complex;

// inherent float methods are only there when std is linked
#[allow(unused_imports)]
use num_traits::Float;

use crate::tolerance;
use crate::{Error, Result};

pub use self::chsh::{
    chsh_closed_form, chsh_expectation, chsh_operator, chsh_optimal_value, correlation_matrix,
    joint_outcome_distribution, numeric_chsh_maximum, BlochVector, ChshOptimum, ChshSetting,
};
pub use self::matrix::{Mat2, Mat4};

pub type C64 = Complex<f64>;

pub(crate) fn c(re: f64, im: f64) -> C64 {
    Complex::new(re, im)
}

/// A normalised pure state of dimension 2 (qubit) or 4 (two qubits).
#[derive(Debug, Clone, PartialEq)]
pub struct QuantumState {
    amplitudes: Vec<C64>,
}

impl QuantumState {
    /// Builds a state from amplitudes that must already be normalised.
    pub fn new(amplitudes: Vec<C64>) -> Result<Self> {
        check_dimension(amplitudes.len())?;
        let norm_sq: f64 = amplitudes.iter().map(|a| a.norm_sqr()).sum();
        if (norm_sq - 1.0).abs() > tolerance::ALGEBRAIC {
            return Err(Error::NotNormalized(norm_sq));
        }
        Ok(QuantumState { amplitudes })
    }

    /// Builds a state after rescaling the amplitudes to unit norm.
    pub fn normalized(amplitudes: Vec<C64>) -> Result<Self> {
        check_dimension(amplitudes.len())?;
        let norm = amplitudes.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
        if norm == 0.0 || !norm.is_finite() {
            return Err(Error::NotNormalized(norm * norm));
        }
        Ok(QuantumState {
            amplitudes: amplitudes.into_iter().map(|a| a / norm).collect(),
        })
    }

    pub fn from_real(amplitudes: &[f64]) -> Result<Self> {
        Self::normalized(amplitudes.iter().map(|&a| c(a, 0.0)).collect())
    }

    pub fn zero() -> Self {
        QuantumState {
            amplitudes: vec![c(1.0, 0.0), c(0.0, 0.0)],
        }
    }

    pub fn one() -> Self {
        QuantumState {
            amplitudes: vec![c(0.0, 0.0), c(1.0, 0.0)],
        }
    }

    pub fn plus() -> Self {
        QuantumState {
            amplitudes: vec![c(FRAC_1_SQRT_2, 0.0), c(FRAC_1_SQRT_2, 0.0)],
        }
    }

    pub fn minus() -> Self {
        QuantumState {
            amplitudes: vec![c(FRAC_1_SQRT_2, 0.0), c(-FRAC_1_SQRT_2, 0.0)],
        }
    }

    pub fn plus_i() -> Self {
        QuantumState {
            amplitudes: vec![c(FRAC_1_SQRT_2, 0.0), c(0.0, FRAC_1_SQRT_2)],
        }
    }

    pub fn minus_i() -> Self {
        QuantumState {
            amplitudes: vec![c(FRAC_1_SQRT_2, 0.0), c(0.0, -FRAC_1_SQRT_2)],
        }
    }

    /// `cos(theta/2)|0> + e^{i phi} sin(theta/2)|1>`.
    pub fn from_bloch_angles(theta: f64, phi: f64) -> Self {
        let (s, co) = (theta / 2.0).sin_cos();
        QuantumState {
            amplitudes: vec![c(co, 0.0), Complex::from_polar(s, phi)],
        }
    }

    /// Qubit state whose Bloch vector is `n`.
    pub fn from_bloch(n: &BlochVector) -> Self {
        let [x, y, z] = n.components();
        let theta = z.clamp(-1.0, 1.0).acos();
        let phi = y.atan2(x);
        Self::from_bloch_angles(theta, phi)
    }

    /// `a|00> + b|11>` with `|a|^2 + |b|^2 = 1`.
    pub fn schmidt(a: C64, b: C64) -> Result<Self> {
        Self::new(vec![a, c(0.0, 0.0), c(0.0, 0.0), b])
    }

    /// Real Schmidt state with `|a|^2 = alpha_sq`.
    pub fn schmidt_real(alpha_sq: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&alpha_sq) {
            return Err(Error::OutOfRange {
                what: "alpha_sq",
                value: alpha_sq,
            });
        }
        Self::normalized(vec![
            c(alpha_sq.sqrt(), 0.0),
            c(0.0, 0.0),
            c(0.0, 0.0),
            c((1.0 - alpha_sq).sqrt(), 0.0),
        ])
    }

    /// `(|00> + |11>)/sqrt(2)`.
    pub fn phi_plus() -> Self {
        QuantumState {
            amplitudes: vec![
                c(FRAC_1_SQRT_2, 0.0),
                c(0.0, 0.0),
                c(0.0, 0.0),
                c(FRAC_1_SQRT_2, 0.0),
            ],
        }
    }

    pub fn dim(&self) -> usize {
        self.amplitudes.len()
    }

    pub fn amplitudes(&self) -> &[C64] {
        &self.amplitudes
    }

    /// `<self|other>`.
    pub fn inner(&self, other: &QuantumState) -> Result<C64> {
        if self.dim() != other.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                found: other.dim(),
            });
        }
        Ok(self
            .amplitudes
            .iter()
            .zip(&other.amplitudes)
            .map(|(a, b)| a.conj() * b)
            .sum())
    }

    /// `|<self|other>|^2`.
    pub fn overlap(&self, other: &QuantumState) -> Result<f64> {
        Ok(self.inner(other)?.norm_sqr())
    }

    /// True when the two kets describe the same ray.
    pub fn same_ray(&self, other: &QuantumState) -> bool {
        self.overlap(other)
            .map(|o| o >= 1.0 - tolerance::ALGEBRAIC)
            .unwrap_or(false)
    }

    pub fn tensor(&self, other: &QuantumState) -> Result<QuantumState> {
        if self.dim() != 2 || other.dim() != 2 {
            return Err(Error::DimensionMismatch {
                expected: 2,
                found: if self.dim() != 2 { self.dim() } else { other.dim() },
            });
        }
        let mut amplitudes = Vec::with_capacity(4);
        for a in &self.amplitudes {
            for b in &other.amplitudes {
                amplitudes.push(a * b);
            }
        }
        Ok(QuantumState { amplitudes })
    }

    pub fn with_global_phase(&self, phase: f64) -> QuantumState {
        let factor = Complex::from_polar(1.0, phase);
        QuantumState {
            amplitudes: self.amplitudes.iter().map(|a| a * factor).collect(),
        }
    }

    /// Bloch vector of a qubit state.
    pub fn bloch_vector(&self) -> Result<BlochVector> {
        if self.dim() != 2 {
            return Err(Error::DimensionMismatch {
                expected: 2,
                found: self.dim(),
            });
        }
        let (a, b) = (self.amplitudes[0], self.amplitudes[1]);
        let cross = a.conj() * b;
        BlochVector::normalized([2.0 * cross.re, 2.0 * cross.im, a.norm_sqr() - b.norm_sqr()])
    }
}

fn check_dimension(dim: usize) -> Result<()> {
    match dim {
        2 | 4 => Ok(()),
        d => Err(Error::UnsupportedDimension(d)),
    }
}

/// A rank-1 projective measurement given by an orthonormal basis.
#[derive(Debug, Clone, PartialEq)]
pub struct ProjectiveMeasurement {
    basis: Vec<QuantumState>,
    labels: Vec<String>,
}

impl ProjectiveMeasurement {
    pub fn new(basis: Vec<QuantumState>, labels: Vec<String>) -> Result<Self> {
        let dim = basis
            .first()
            .map(QuantumState::dim)
            .ok_or(Error::Empty("basis"))?;
        if basis.len() != dim {
            return Err(Error::NotOrthonormal(format!(
                "{} vectors for dimension {}",
                basis.len(),
                dim
            )));
        }
        if labels.len() != basis.len() {
            return Err(Error::DimensionMismatch {
                expected: basis.len(),
                found: labels.len(),
            });
        }
        for (i, u) in basis.iter().enumerate() {
            for (j, v) in basis.iter().enumerate().skip(i + 1) {
                let ip = u.inner(v)?.norm();
                if ip > tolerance::ALGEBRAIC {
                    return Err(Error::NotOrthonormal(format!(
                        "|<{}|{}>| = {:e}",
                        labels[i], labels[j], ip
                    )));
                }
            }
        }
        for (i, l) in labels.iter().enumerate() {
            if labels[..i].contains(l) {
                return Err(Error::DuplicateId(l.clone()));
            }
        }
        Ok(ProjectiveMeasurement { basis, labels })
    }

    /// Basis with default labels `"0"`, `"1"`, ...
    pub fn from_basis(basis: Vec<QuantumState>) -> Result<Self> {
        let labels = (0..basis.len()).map(|i| i.to_string()).collect();
        Self::new(basis, labels)
    }

    /// Qubit measurement `{|n>, |-n>}` with outcomes labelled `"+"`, `"-"`.
    pub fn along(n: &BlochVector) -> Self {
        let up = QuantumState::from_bloch(n);
        let down = QuantumState::from_bloch(&n.negated());
        ProjectiveMeasurement {
            basis: vec![up, down],
            labels: vec!["+".to_string(), "-".to_string()],
        }
    }

    /// Qubit measurement on `{|phi>, |phi_perp>}`.
    pub fn qubit_basis(phi: &QuantumState) -> Result<Self> {
        let perp = orthogonal_complement(phi)?;
        Self::from_basis(vec![phi.clone(), perp])
    }

    pub fn pauli_z() -> Self {
        ProjectiveMeasurement {
            basis: vec![QuantumState::zero(), QuantumState::one()],
            labels: vec!["0".to_string(), "1".to_string()],
        }
    }

    pub fn pauli_x() -> Self {
        ProjectiveMeasurement {
            basis: vec![QuantumState::plus(), QuantumState::minus()],
            labels: vec!["+".to_string(), "-".to_string()],
        }
    }

    pub fn pauli_y() -> Self {
        ProjectiveMeasurement {
            basis: vec![QuantumState::plus_i(), QuantumState::minus_i()],
            labels: vec!["+i".to_string(), "-i".to_string()],
        }
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[QuantumState] {
        &self.basis
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn outcome_index(&self, label: &str) -> Result<usize> {
        self.labels
            .iter()
            .position(|l| l == label)
            .ok_or_else(|| Error::UnknownOutcome(label.to_string()))
    }

    /// Index of the basis vector on the same ray as `state`, if any.
    pub fn matching_outcome(&self, state: &QuantumState) -> Option<usize> {
        self.basis.iter().position(|b| b.same_ray(state))
    }

    /// Born probabilities of every outcome, in basis order.
    pub fn distribution(&self, state: &QuantumState) -> Result<Vec<f64>> {
        if state.dim() != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                found: state.dim(),
            });
        }
        self.basis.iter().map(|b| b.overlap(state)).collect()
    }
}

/// `|<phi_k|psi>|^2` for the outcome labelled `outcome`.
pub fn born_probability(state: &QuantumState, meas: &ProjectiveMeasurement, outcome: &str) -> Result<f64> {
    if state.dim() != meas.dim() {
        return Err(Error::DimensionMismatch {
            expected: meas.dim(),
            found: state.dim(),
        });
    }
    let k = meas.outcome_index(outcome)?;
    meas.basis[k].overlap(state)
}

/// The qubit state orthogonal to `phi` (up to phase), `-b*|0> + a*|1>`.
pub fn orthogonal_complement(phi: &QuantumState) -> Result<QuantumState> {
    if phi.dim() != 2 {
        return Err(Error::DimensionMismatch {
            expected: 2,
            found: phi.dim(),
        });
    }
    let (a, b) = (phi.amplitudes[0], phi.amplitudes[1]);
    QuantumState::new(vec![-b.conj(), a.conj()])
}

/// Output of the cloning unitary `U|i>|r> = |i>|i>` for the orthonormal basis
/// `{phi, phi_perp}` on an arbitrary qubit input: `a|phi phi> + b|phi_perp phi_perp>`
/// with `a = <phi|input>`, `b = <phi_perp|input>`.
pub fn clone_output(
    phi: &QuantumState,
    phi_perp: &QuantumState,
    input: &QuantumState,
) -> Result<QuantumState> {
    ProjectiveMeasurement::from_basis(vec![phi.clone(), phi_perp.clone()])?;
    if input.dim() != 2 {
        return Err(Error::DimensionMismatch {
            expected: 2,
            found: input.dim(),
        });
    }
    let a = phi.inner(input)?;
    let b = phi_perp.inner(input)?;
    let pp = phi.tensor(phi)?;
    let qq = phi_perp.tensor(phi_perp)?;
    let amplitudes = pp
        .amplitudes
        .iter()
        .zip(&qq.amplitudes)
        .map(|(x, y)| a * x + b * y)
        .collect();
    QuantumState::new(amplitudes)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn born_examples() {
        let z = ProjectiveMeasurement::pauli_z();
        assert!((born_probability(&QuantumState::plus(), &z, "0").unwrap() - 0.5).abs() < 1e-15);
        assert_eq!(born_probability(&QuantumState::zero(), &z, "0").unwrap(), 1.0);
        let psi = QuantumState::from_real(&[0.8f64.sqrt(), 0.2f64.sqrt()]).unwrap();
        assert!((born_probability(&psi, &z, "0").unwrap() - 0.8).abs() < 1e-12);
    }

    #[test]
    fn born_dimension_mismatch() {
        let z = ProjectiveMeasurement::pauli_z();
        let err = born_probability(&QuantumState::phi_plus(), &z, "0").unwrap_err();
        assert!(matches!(err, Error::DimensionMismatch { .. }));
        assert!(matches!(
            born_probability(&QuantumState::zero(), &z, "7"),
            Err(Error::UnknownOutcome(_))
        ));
    }

    #[test]
    fn rejects_bad_states_and_bases() {
        assert!(matches!(
            QuantumState::new(vec![c(1.0, 0.0), c(1.0, 0.0)]),
            Err(Error::NotNormalized(_))
        ));
        assert!(matches!(
            QuantumState::new(vec![c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0)]),
            Err(Error::UnsupportedDimension(3))
        ));
        assert!(matches!(
            ProjectiveMeasurement::from_basis(vec![QuantumState::zero(), QuantumState::plus()]),
            Err(Error::NotOrthonormal(_))
        ));
    }

    #[test]
    fn clone_examples() {
        let (zero, one) = (QuantumState::zero(), QuantumState::one());
        let out = clone_output(&zero, &one, &QuantumState::plus()).unwrap();
        assert!(out.same_ray(&QuantumState::phi_plus()));
        let out = clone_output(&zero, &one, &zero).unwrap();
        assert!(out.same_ray(&zero.tensor(&zero).unwrap()));

        // {|+>,|->} machine on |0> = (|+> + |->)/sqrt 2
        let (p, m) = (QuantumState::plus(), QuantumState::minus());
        let out = clone_output(&p, &m, &zero).unwrap();
        let pp = p.tensor(&p).unwrap();
        let mm = m.tensor(&m).unwrap();
        let expected: Vec<C64> = pp
            .amplitudes()
            .iter()
            .zip(mm.amplitudes())
            .map(|(x, y)| (x + y) * FRAC_1_SQRT_2)
            .collect();
        for (a, b) in out.amplitudes().iter().zip(&expected) {
            assert!((a - b).norm() < 1e-12);
        }
        // the expansion above is (|00> + |11>)/sqrt 2 as well
        assert!(out.same_ray(&QuantumState::phi_plus()));
    }

    #[test]
    fn clone_rejects_non_orthogonal_machine() {
        assert!(clone_output(
            &QuantumState::zero(),
            &QuantumState::plus(),
            &QuantumState::zero()
        )
        .is_err());
    }

    #[test]
    fn orthogonal_complement_is_orthogonal() {
        let phi = QuantumState::from_bloch_angles(0.7, 1.9);
        let perp = orthogonal_complement(&phi).unwrap();
        assert!(phi.inner(&perp).unwrap().norm() < 1e-15);
    }

    #[test]
    fn bloch_round_trip() {
        let phi = QuantumState::from_bloch_angles(1.1, -0.4);
        let n = phi.bloch_vector().unwrap();
        assert!(QuantumState::from_bloch(&n).same_ray(&phi));
    }
}
