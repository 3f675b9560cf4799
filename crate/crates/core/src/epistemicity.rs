//! Ontic overlaps, the degree of epistemicity `Omega(phi, psi)` and the
//! CHSH-derived upper bounds on it.
//!
//! `Omega` is the fraction of the quantum overlap `|<phi|psi>|^2` accounted
//! for by the ontic overlap `sum over Lambda_phi of mu(lambda|psi)`: 0 for a
//! maximally psi-ontic model, 1 for a maximally psi-epistemic one.

use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::f64::consts::SQRT_2;

// inherent float methods are only there when std is linked
#[allow(unused_imports)]
use num_traits::Float;

use crate::ontic::OntologicalModel;
use crate::tolerance;
use crate::{Error, Result};

/// `sum_{lambda in Lambda_phi} mu(lambda | psi)`. Not symmetric in general.
pub fn ontic_overlap(model: &OntologicalModel, phi: &str, psi: &str) -> Result<f64> {
    let support = model.support(phi)?;
    let mu = &model.preparation(psi)?.mu;
    Ok(support.iter().map(|&l| mu.weight(l)).sum())
}

/// `|<phi|psi>|^2` of the two preparations' kets.
pub fn quantum_overlap(model: &OntologicalModel, phi: &str, psi: &str) -> Result<f64> {
    let a = &model.preparation(phi)?.state;
    let b = &model.preparation(psi)?.state;
    a.overlap(b)
}

#[derive(Debug, Clone, PartialEq)]
pub struct OmegaValue {
    pub ontic_overlap: f64,
    pub quantum_overlap: f64,
    pub omega: f64,
    /// Set when `omega` exceeds 1 by more than the model's Born tolerance,
    /// which means the model violates the Born rule upstream.
    pub exceeds_one: bool,
}

/// Degree of epistemicity of a non-orthogonal pair.
pub fn omega(model: &OntologicalModel, phi: &str, psi: &str) -> Result<OmegaValue> {
    let q = quantum_overlap(model, phi, psi)?;
    if q <= tolerance::ALGEBRAIC {
        return Err(Error::OrthogonalPair {
            phi: phi.to_string(),
            psi: psi.to_string(),
        });
    }
    if q < tolerance::NEAR_ORTHOGONAL {
        return Err(Error::NearOrthogonalPair {
            phi: phi.to_string(),
            psi: psi.to_string(),
            overlap: q,
        });
    }
    let o = ontic_overlap(model, phi, psi)?;
    let omega = o / q;
    Ok(OmegaValue {
        ontic_overlap: o,
        quantum_overlap: q,
        omega,
        exceeds_one: omega > 1.0 + model.born_tolerance() / q,
    })
}

/// Right-hand side of the general bound, `2 - sqrt(1 + 4 a (1 - a))`.
pub fn general_bound_rhs(alpha_sq: f64) -> f64 {
    2.0 - (1.0 + 4.0 * alpha_sq * (1.0 - alpha_sq)).sqrt()
}

/// `2 - sqrt 2`, the bound on a symmetric `Omega(+,0) = Omega(+,1)`.
pub fn symmetric_bound() -> f64 {
    2.0 - SQRT_2
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoundVerdict {
    pub alpha_sq: f64,
    pub lhs: f64,
    pub rhs: f64,
    /// `rhs - lhs`; negative when the bound is violated.
    pub margin: f64,
    pub satisfied: bool,
}

/// Checks `a Omega_phi + (1 - a) Omega_phi_perp <= 2 - sqrt(1 + 4 a (1 - a))`.
pub fn check_general_bound(alpha_sq: f64, omega_phi: f64, omega_phi_perp: f64) -> Result<BoundVerdict> {
    if !(alpha_sq > 0.0 && alpha_sq < 1.0) {
        return Err(Error::DegenerateAlpha(alpha_sq));
    }
    let lhs = alpha_sq * omega_phi + (1.0 - alpha_sq) * omega_phi_perp;
    let rhs = general_bound_rhs(alpha_sq);
    let margin = rhs - lhs;
    Ok(BoundVerdict {
        alpha_sq,
        lhs,
        rhs,
        margin,
        satisfied: margin >= -tolerance::ALGEBRAIC,
    })
}

/// Checks `Omega <= 2 - sqrt 2` for `Omega(+,0) = Omega(+,1) = Omega`; unequal
/// values go through [`check_general_bound`] at `|alpha|^2 = 1/2`.
pub fn check_symmetric_bound(omega_plus_0: f64, omega_plus_1: f64) -> BoundVerdict {
    if (omega_plus_0 - omega_plus_1).abs() <= tolerance::ALGEBRAIC {
        let rhs = symmetric_bound();
        let margin = rhs - omega_plus_0;
        BoundVerdict {
            alpha_sq: 0.5,
            lhs: omega_plus_0,
            rhs,
            margin,
            satisfied: margin >= -tolerance::ALGEBRAIC,
        }
    } else {
        check_general_bound(0.5, omega_plus_0, omega_plus_1).expect("1/2 is not degenerate")
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct PairOverlap {
    pub phi: String,
    pub psi: String,
    pub quantum_overlap: f64,
    pub ontic_overlap: f64,
    /// `None` for orthogonal or near-orthogonal pairs.
    pub omega: Option<f64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct BoundCheck {
    pub phi: String,
    pub phi_perp: String,
    pub psi: String,
    pub verdict: BoundVerdict,
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct EpistemicityReport {
    pub pairs: Vec<PairOverlap>,
    pub bound_checks: Vec<BoundCheck>,
}

impl EpistemicityReport {
    pub fn all_bounds_satisfied(&self) -> bool {
        self.bound_checks.iter().all(|b| b.verdict.satisfied)
    }
}

/// Overlaps for the requested ordered pairs (every ordered pair of distinct
/// preparations when `pairs` is empty) and the general bound for each
/// `(phi, phi_perp, psi)` triple.
pub fn report(
    model: &OntologicalModel,
    pairs: &[(String, String)],
    bound_triples: &[(String, String, String)],
) -> Result<EpistemicityReport> {
    let all: Vec<(String, String)>;
    let pairs = if pairs.is_empty() {
        all = model
            .preparations()
            .iter()
            .flat_map(|a| {
                model
                    .preparations()
                    .iter()
                    .filter(move |b| b.id != a.id)
                    .map(move |b| (a.id.clone(), b.id.clone()))
            })
            .collect();
        &all
    } else {
        pairs
    };

    let mut out = EpistemicityReport::default();
    for (phi, psi) in pairs {
        let q = quantum_overlap(model, phi, psi)?;
        let o = ontic_overlap(model, phi, psi)?;
        let omega = match omega(model, phi, psi) {
            Ok(v) => Some(v.omega),
            Err(Error::OrthogonalPair { .. } | Error::NearOrthogonalPair { .. }) => None,
            Err(e) => return Err(e),
        };
        out.pairs.push(PairOverlap {
            phi: phi.clone(),
            psi: psi.clone(),
            quantum_overlap: q,
            ontic_overlap: o,
            omega,
        });
    }
    for (phi, phi_perp, psi) in bound_triples {
        let alpha_sq = quantum_overlap(model, phi, psi)?;
        let o_phi = omega(model, phi, psi)?.omega;
        let o_perp = omega(model, phi_perp, psi)?.omega;
        out.bound_checks.push(BoundCheck {
            phi: phi.clone(),
            phi_perp: phi_perp.clone(),
            psi: psi.clone(),
            verdict: check_general_bound(alpha_sq, o_phi, o_perp)?,
        });
    }
    Ok(out)
}
