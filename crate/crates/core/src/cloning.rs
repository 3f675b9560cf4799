//! The cloning-machine argument at the level of ontic supports.
//!
//! A machine that clones the orthogonal pair `{|phi>, |phi_perp>}` maps
//! `|psi> = a|phi> + b|phi_perp>` to the entangled `a|phi phi> + b|phi_perp
//! phi_perp>`, whose CHSH value is `2 sqrt(1 + 4|a|^2|b|^2)`. Ontic states of
//! `psi` that also lie in the support of `phi` or `phi_perp` are routed to
//! product (local) joint states, which reach at most 2; only the remaining
//! mass may produce nonlocal correlations, up to the algebraic maximum 4.

use alloc::string::ToString;
use core::f64::consts::SQRT_2;

// inherent float methods are only there when std is linked
#[allow(unused_imports)]
use num_traits::Float;

use crate::composite::OnticType;
use crate::epistemicity::{self, check_general_bound, general_bound_rhs};
use crate::ontic::OntologicalModel;
use crate::quantum::chsh_closed_form;
use crate::tolerance;
use crate::{Error, Result};

/// CHSH value reachable from product joint states.
pub const LOCAL_CAP: f64 = 2.0;
/// Algebraic maximum of the CHSH expression.
pub const ALGEBRAIC_CAP: f64 = 4.0;
/// Quantum maximum of the CHSH expression.
pub const TSIRELSON_CAP: f64 = 2.0 * SQRT_2;

/// Per-region mass split of `mu(.|psi)` and the CHSH value it must reproduce.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChshBudget {
    alpha_sq: f64,
    mass_phi: f64,
    mass_phi_perp: f64,
    mass_rest: f64,
    chsh_target: f64,
    overlap_cap: f64,
    rest_cap: f64,
}

impl ChshBudget {
    /// Budget with `mass_rest = 1 - mass_phi - mass_phi_perp`, checked at
    /// [`tolerance::DISTRIBUTION`].
    pub fn new(alpha_sq: f64, mass_phi: f64, mass_phi_perp: f64) -> Result<Self> {
        Self::from_masses(
            alpha_sq,
            mass_phi,
            mass_phi_perp,
            1.0 - mass_phi - mass_phi_perp,
            tolerance::DISTRIBUTION,
        )
    }

    /// Budget from three region masses, each checked at `tol`.
    pub fn from_masses(
        alpha_sq: f64,
        mass_phi: f64,
        mass_phi_perp: f64,
        mass_rest: f64,
        tol: f64,
    ) -> Result<Self> {
        if !(alpha_sq > 0.0 && alpha_sq < 1.0) {
            return Err(Error::DegenerateAlpha(alpha_sq));
        }
        for (what, m) in [
            ("mass_phi", mass_phi),
            ("mass_phi_perp", mass_phi_perp),
            ("mass_rest", mass_rest),
        ] {
            if !(m >= -tol) {
                return Err(Error::OutOfRange { what, value: m });
            }
        }
        let total = mass_phi + mass_phi_perp + mass_rest;
        if (total - 1.0).abs() > tol {
            return Err(Error::NotNormalized(total));
        }
        if mass_phi > alpha_sq + tol {
            return Err(Error::OutOfRange {
                what: "mass_phi above the quantum overlap",
                value: mass_phi,
            });
        }
        if mass_phi_perp > 1.0 - alpha_sq + tol {
            return Err(Error::OutOfRange {
                what: "mass_phi_perp above the quantum overlap",
                value: mass_phi_perp,
            });
        }
        Ok(ChshBudget {
            alpha_sq,
            mass_phi: mass_phi.max(0.0),
            mass_phi_perp: mass_phi_perp.max(0.0),
            mass_rest: mass_rest.max(0.0),
            chsh_target: chsh_closed_form(alpha_sq),
            overlap_cap: LOCAL_CAP,
            rest_cap: ALGEBRAIC_CAP,
        })
    }

    /// Budget whose overlap masses are `alpha_sq * omega_phi` and
    /// `(1 - alpha_sq) * omega_phi_perp`.
    pub fn from_omegas(alpha_sq: f64, omega_phi: f64, omega_phi_perp: f64) -> Result<Self> {
        Self::new(alpha_sq, alpha_sq * omega_phi, (1.0 - alpha_sq) * omega_phi_perp)
    }

    /// Caps the rest region at the Tsirelson bound instead of 4. This is a
    /// stricter variant than the argument needs and is off by default.
    pub fn with_tsirelson_rest_cap(mut self) -> Self {
        self.rest_cap = TSIRELSON_CAP;
        self
    }

    pub fn alpha_sq(&self) -> f64 {
        self.alpha_sq
    }

    pub fn mass_phi(&self) -> f64 {
        self.mass_phi
    }

    pub fn mass_phi_perp(&self) -> f64 {
        self.mass_phi_perp
    }

    pub fn mass_rest(&self) -> f64 {
        self.mass_rest
    }

    pub fn chsh_target(&self) -> f64 {
        self.chsh_target
    }

    pub fn overlap_cap(&self) -> f64 {
        self.overlap_cap
    }

    pub fn rest_cap(&self) -> f64 {
        self.rest_cap
    }

    /// `(Omega(phi, psi), Omega(phi_perp, psi))` recovered from the masses.
    pub fn omegas(&self) -> (f64, f64) {
        let recover = |m: f64, q: f64| {
            if q < tolerance::NEAR_ORTHOGONAL {
                0.0
            } else {
                m / q
            }
        };
        (
            recover(self.mass_phi, self.alpha_sq),
            recover(self.mass_phi_perp, 1.0 - self.alpha_sq),
        )
    }

    /// Largest CHSH value the budget can produce.
    pub fn max_chsh(&self) -> f64 {
        self.overlap_cap * (self.mass_phi + self.mass_phi_perp) + self.rest_cap * self.mass_rest
    }

    /// Whether the budget reaches the target. With the default caps the
    /// verdict is cross-checked against the general epistemicity bound.
    pub fn feasible(&self) -> Result<Feasibility> {
        let max_chsh = self.max_chsh();
        let margin = max_chsh - self.chsh_target;
        let feasible = margin >= -2.0 * tolerance::ALGEBRAIC;
        if self.rest_cap == ALGEBRAIC_CAP && self.overlap_cap == LOCAL_CAP {
            let (o_phi, o_perp) = self.omegas();
            let bound = check_general_bound(self.alpha_sq, o_phi, o_perp)?;
            if bound.satisfied != feasible && margin.abs() > tolerance::OPTIMIZATION {
                return Err(Error::Inconsistent(alloc::format!(
                    "budget margin {margin} disagrees with bound margin {}",
                    bound.margin
                )));
            }
        }
        Ok(Feasibility {
            max_chsh,
            chsh_target: self.chsh_target,
            margin,
            feasible,
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Feasibility {
    pub max_chsh: f64,
    pub chsh_target: f64,
    /// `max_chsh - chsh_target`.
    pub margin: f64,
    pub feasible: bool,
}

/// Region masses of `mu(.|psi)` for the machine basis `(phi, phi_perp)`.
pub fn budget_from_model(
    model: &OntologicalModel,
    phi: &str,
    phi_perp: &str,
    psi: &str,
) -> Result<ChshBudget> {
    let basis_overlap = epistemicity::quantum_overlap(model, phi, phi_perp)?;
    if basis_overlap > tolerance::NEAR_ORTHOGONAL {
        return Err(Error::NotOrthonormal(alloc::format!(
            "machine basis {phi}, {phi_perp} has overlap {basis_overlap}"
        )));
    }
    let alpha_sq = epistemicity::quantum_overlap(model, phi, psi)?;
    if !(alpha_sq > tolerance::NEAR_ORTHOGONAL && alpha_sq < 1.0 - tolerance::NEAR_ORTHOGONAL) {
        return Err(Error::DegenerateAlpha(alpha_sq));
    }
    let in_phi = model.support(phi)?;
    let in_perp = model.support(phi_perp)?;
    if let Some(&l) = in_phi.intersection(&in_perp).next() {
        return Err(Error::Inconsistent(alloc::format!(
            "ontic state {} is in the support of both {phi} and {phi_perp}",
            model.space().labels()[l]
        )));
    }
    let mu = &model.preparation(psi)?.mu;
    let (mut m_phi, mut m_perp, mut m_rest) = (0.0, 0.0, 0.0);
    for (l, &w) in mu.weights().iter().enumerate() {
        match region_of(&in_phi, &in_perp, l) {
            Region::InPhiOverlap => m_phi += w,
            Region::InPhiPerpOverlap => m_perp += w,
            Region::Outside => m_rest += w,
        }
    }
    ChshBudget::from_masses(
        alpha_sq,
        m_phi,
        m_perp,
        m_rest,
        model.born_tolerance().max(tolerance::DISTRIBUTION),
    )
}

/// Smallest mass outside both overlaps that still reaches the quantum CHSH
/// value: `sqrt(1 + 4 a (1 - a)) - 1`.
pub fn min_nonlocal_mass(alpha_sq: f64) -> Result<f64> {
    if !(alpha_sq > 0.0 && alpha_sq < 1.0) {
        return Err(Error::DegenerateAlpha(alpha_sq));
    }
    Ok(chsh_closed_form(alpha_sq) / 2.0 - 1.0)
}

/// Largest total overlap mass compatible with the quantum CHSH value:
/// `2 - sqrt(1 + 4 a (1 - a))`.
pub fn max_overlap_mass(alpha_sq: f64) -> Result<f64> {
    if !(alpha_sq > 0.0 && alpha_sq < 1.0) {
        return Err(Error::DegenerateAlpha(alpha_sq));
    }
    Ok(general_bound_rhs(alpha_sq))
}

/// Where an ontic state of the input lies relative to the machine basis.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Region {
    InPhiOverlap,
    InPhiPerpOverlap,
    Outside,
}

impl Region {
    pub fn as_str(&self) -> &'static str {
        match self {
            Region::InPhiOverlap => "IN_PHI_OVERLAP",
            Region::InPhiPerpOverlap => "IN_PHI_PERP_OVERLAP",
            Region::Outside => "OUTSIDE",
        }
    }

    pub fn parse(s: &str) -> Result<Region> {
        match s {
            "IN_PHI_OVERLAP" => Ok(Region::InPhiOverlap),
            "IN_PHI_PERP_OVERLAP" => Ok(Region::InPhiPerpOverlap),
            "OUTSIDE" => Ok(Region::Outside),
            other => Err(Error::Malformed(alloc::format!("unknown region `{other}`"))),
        }
    }
}

fn region_of(in_phi: &crate::ontic::LabelSet, in_perp: &crate::ontic::LabelSet, label: usize) -> Region {
    if in_phi.contains(&label) {
        Region::InPhiOverlap
    } else if in_perp.contains(&label) {
        Region::InPhiPerpOverlap
    } else {
        Region::Outside
    }
}

/// Region of ontic state `label` of `model` for the machine basis.
pub fn classify_label(model: &OntologicalModel, phi: &str, phi_perp: &str, label: &str) -> Result<Region> {
    let index = model
        .space()
        .index_of(label)
        .ok_or_else(|| Error::Malformed(alloc::format!("unknown ontic state `{label}`")))?;
    Ok(region_of(&model.support(phi)?, &model.support(phi_perp)?, index))
}

/// Joint ontic region the machine sends an input region to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CloneImage {
    /// Inside the support of `|phi phi>`.
    Lambda00,
    /// Inside the support of `|phi_perp phi_perp>`.
    Lambda11,
    /// Not constrained by the support assumptions; may be nonlocal.
    Unconstrained,
}

impl CloneImage {
    pub fn as_str(&self) -> &'static str {
        match self {
            CloneImage::Lambda00 => "LAMBDA_00",
            CloneImage::Lambda11 => "LAMBDA_11",
            CloneImage::Unconstrained => "UNCONSTRAINED",
        }
    }

    /// Product preparations carry only local joint states, so the two
    /// overlap images are of type 1.
    pub fn ontic_type(&self) -> Option<OnticType> {
        match self {
            CloneImage::Lambda00 | CloneImage::Lambda11 => Some(OnticType::Type1),
            CloneImage::Unconstrained => None,
        }
    }

    /// CHSH cap for joint states in this image.
    pub fn chsh_cap(&self) -> f64 {
        match self {
            CloneImage::Lambda00 | CloneImage::Lambda11 => LOCAL_CAP,
            CloneImage::Unconstrained => ALGEBRAIC_CAP,
        }
    }
}

/// Routing rule of the support-inclusion assumptions.
pub fn ontic_clone_map(region: Region) -> CloneImage {
    match region {
        Region::InPhiOverlap => CloneImage::Lambda00,
        Region::InPhiPerpOverlap => CloneImage::Lambda11,
        Region::Outside => CloneImage::Unconstrained,
    }
}

/// One row of the bound sweep.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepRow {
    pub alpha_sq: f64,
    pub chsh_target: f64,
    /// Optimum of the budget LP at `chsh_target`.
    pub max_overlap_mass: f64,
    pub min_nonlocal_mass: f64,
    /// Closed form `2 - sqrt(1 + 4 a (1 - a))`.
    pub bound_rhs: f64,
}

pub fn bound_sweep_row(alpha_sq: f64) -> Result<SweepRow> {
    let chsh_target = chsh_closed_form(alpha_sq);
    Ok(SweepRow {
        alpha_sq,
        chsh_target,
        max_overlap_mass: crate::search::max_overlap_with_chsh(alpha_sq, chsh_target)?,
        min_nonlocal_mass: min_nonlocal_mass(alpha_sq)?,
        bound_rhs: general_bound_rhs(alpha_sq),
    })
}

/// Points `start, start + step, ...` up to `end` inclusive (within half a
/// step of rounding). Points are rounded to 12 decimals so that decimal
/// grids print as typed.
pub fn alpha_grid(start: f64, end: f64, step: f64) -> Result<alloc::vec::Vec<f64>> {
    if !(step > 0.0) || !(end >= start) {
        return Err(Error::Malformed(
            "alpha grid needs start <= end and step > 0".to_string(),
        ));
    }
    let count = ((end - start) / step + 0.5).floor() as usize + 1;
    Ok((0..count)
        .map(|i| ((start + i as f64 * step) * 1e12).round() / 1e12)
        .collect())
}
