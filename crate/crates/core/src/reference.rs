//! Reference ontological models for a qubit.
//!
//! - [`psi_complete`]: one ontic state per preparation, response functions
//!   equal to the Born probabilities.
//! - [`bell_model`]: Bell's 1966 model, ontic state `(psi, s)` with `s`
//!   uniform on the sphere and outcome `+n` iff `(p + s).n > 0`.
//! - [`kochen_specker`]: the Kochen-Specker qubit model, `mu(lambda|psi)
//!   = (p.lambda) H(p.lambda) / pi` on the sphere and outcome `+n` iff
//!   `lambda.n > 0`.
//!
//! The two continuous models are discretised on an equal-area partition of
//! the sphere; weights and responses are evaluated at cell centres.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::f64::consts::PI;

// inherent float methods are only there when std is linked
#[allow(unused_imports)]
use num_traits::Float;

use crate::ontic::{EpistemicState, OnticSpace, OntologicalModel, ResponseFunction};
use crate::quantum::{BlochVector, ProjectiveMeasurement, QuantumState};
use crate::tolerance;
use crate::Result;

/// Equal-area partition of the unit sphere into `bands` latitude bands of
/// equal height in `z` (hence equal area), each cut into `sectors` equal
/// longitude sectors.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SpherePartition {
    bands: usize,
    sectors: usize,
}

impl SpherePartition {
    pub fn new(bands: usize, sectors: usize) -> Self {
        assert!(bands > 0 && sectors > 0);
        SpherePartition { bands, sectors }
    }

    /// Smallest partition with at least `cells` cells, using an even band
    /// count and `2 * bands` sectors. Cell centres then never fall on the
    /// great circles orthogonal to the x, y or z axes, and those circles run
    /// along cell boundaries.
    pub fn with_at_least(cells: usize) -> Self {
        let mut bands = ((cells as f64 / 2.0).sqrt().ceil() as usize).max(2);
        if bands % 2 == 1 {
            bands += 1;
        }
        SpherePartition::new(bands, 2 * bands)
    }

    pub fn len(&self) -> usize {
        self.bands * self.sectors
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn cell_area(&self) -> f64 {
        4.0 * PI / self.len() as f64
    }

    /// Cell centres in band-major order.
    pub fn centers(&self) -> Vec<[f64; 3]> {
        let mut out = Vec::with_capacity(self.len());
        for b in 0..self.bands {
            let z = -1.0 + (2.0 * b as f64 + 1.0) / self.bands as f64;
            let r = (1.0 - z * z).max(0.0).sqrt();
            for s in 0..self.sectors {
                let phi = 2.0 * PI * (s as f64 + 0.5) / self.sectors as f64;
                let (sp, cp) = phi.sin_cos();
                out.push([r * cp, r * sp, z]);
            }
        }
        out
    }
}

fn dot(a: [f64; 3], b: [f64; 3]) -> f64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

/// Born tolerance declared for a discretisation with `cells` cells.
pub fn discretized_tolerance(cells: usize) -> f64 {
    1.0 / (cells as f64).sqrt()
}

/// The six Pauli eigenstates `0, 1, +, -, +i, -i`.
pub fn standard_preparations() -> Vec<(String, QuantumState)> {
    vec![
        ("0".to_string(), QuantumState::zero()),
        ("1".to_string(), QuantumState::one()),
        ("+".to_string(), QuantumState::plus()),
        ("-".to_string(), QuantumState::minus()),
        ("+i".to_string(), QuantumState::plus_i()),
        ("-i".to_string(), QuantumState::minus_i()),
    ]
}

/// Pauli `Z`, `X`, `Y` measurements.
pub fn standard_measurements() -> Vec<(String, ProjectiveMeasurement)> {
    vec![
        ("Z".to_string(), ProjectiveMeasurement::pauli_z()),
        ("X".to_string(), ProjectiveMeasurement::pauli_x()),
        ("Y".to_string(), ProjectiveMeasurement::pauli_y()),
    ]
}

/// Psi-complete model over the standard preparations and measurements.
pub fn psi_complete() -> OntologicalModel {
    psi_complete_for(&standard_preparations(), &standard_measurements())
        .expect("standard states are well formed")
}

pub fn psi_complete_for(
    preparations: &[(String, QuantumState)],
    measurements: &[(String, ProjectiveMeasurement)],
) -> Result<OntologicalModel> {
    let labels = preparations.iter().map(|(id, _)| format!("psi:{id}")).collect();
    let space = OnticSpace::new(labels)?;
    let n = preparations.len();
    let mut model = OntologicalModel::new(2, space);
    for (i, (id, state)) in preparations.iter().enumerate() {
        let mut w = vec![0.0; n];
        w[i] = 1.0;
        model.add_preparation(id, state.clone(), EpistemicState::new(w)?)?;
    }
    for (id, m) in measurements {
        let table = preparations
            .iter()
            .map(|(_, s)| m.distribution(s))
            .collect::<Result<Vec<_>>>()?;
        model.add_measurement(id, m.clone(), ResponseFunction::unchecked(table))?;
    }
    Ok(model)
}

/// Deterministic qubit response: outcome 0 (the basis vector with Bloch
/// vector `n`) iff `v.n >= 0`.
fn sign_response(measurement: &ProjectiveMeasurement, directions: &[[f64; 3]]) -> Result<ResponseFunction> {
    let n = measurement.basis()[0].bloch_vector()?.components();
    let outcomes: Vec<usize> = directions
        .iter()
        .map(|&v| if dot(v, n) >= 0.0 { 0 } else { 1 })
        .collect();
    Ok(ResponseFunction::deterministic(&outcomes, 2))
}

/// Discretised Kochen-Specker model over the standard preparations and
/// measurements with at least `cells` cells.
pub fn kochen_specker(cells: usize) -> OntologicalModel {
    kochen_specker_for(
        SpherePartition::with_at_least(cells),
        &standard_preparations(),
        &standard_measurements(),
    )
    .expect("standard states are well formed")
}

pub fn kochen_specker_for(
    partition: SpherePartition,
    preparations: &[(String, QuantumState)],
    measurements: &[(String, ProjectiveMeasurement)],
) -> Result<OntologicalModel> {
    let centers = partition.centers();
    let labels = (0..centers.len()).map(|i| format!("c{i}")).collect();
    let space = OnticSpace::new(labels)?;
    let mut model = OntologicalModel::new(2, space).with_born_tolerance(discretized_tolerance(centers.len()));
    for (id, state) in preparations {
        let p = state.bloch_vector()?.components();
        let raw: Vec<f64> = centers.iter().map(|&c| dot(c, p).max(0.0)).collect();
        let total: f64 = raw.iter().sum();
        let w = raw.into_iter().map(|v| v / total).collect();
        model.add_preparation(id, state.clone(), EpistemicState::new(w)?)?;
    }
    for (id, m) in measurements {
        model.add_measurement(id, m.clone(), sign_response(m, &centers)?)?;
    }
    Ok(model)
}

/// Discretised Bell model over the standard preparations and measurements
/// with at least `cells` cells per preparation.
pub fn bell_model(cells: usize) -> OntologicalModel {
    bell_model_for(
        SpherePartition::with_at_least(cells),
        &standard_preparations(),
        &standard_measurements(),
    )
    .expect("standard states are well formed")
}

pub fn bell_model_for(
    partition: SpherePartition,
    preparations: &[(String, QuantumState)],
    measurements: &[(String, ProjectiveMeasurement)],
) -> Result<OntologicalModel> {
    let centers = partition.centers();
    let cells = centers.len();
    let blochs = preparations
        .iter()
        .map(|(_, s)| s.bloch_vector().map(|b| b.components()))
        .collect::<Result<Vec<_>>>()?;

    let mut labels = Vec::with_capacity(cells * preparations.len());
    let mut shifted = Vec::with_capacity(cells * preparations.len());
    for ((id, _), p) in preparations.iter().zip(&blochs) {
        for (i, c) in centers.iter().enumerate() {
            labels.push(format!("{id}:c{i}"));
            shifted.push([p[0] + c[0], p[1] + c[1], p[2] + c[2]]);
        }
    }
    let space = OnticSpace::new(labels)?;
    let total = space.len();
    let mut model = OntologicalModel::new(2, space).with_born_tolerance(discretized_tolerance(cells));
    for (k, (id, state)) in preparations.iter().enumerate() {
        let mut w = vec![0.0; total];
        for v in &mut w[k * cells..(k + 1) * cells] {
            *v = 1.0 / cells as f64;
        }
        model.add_preparation(id, state.clone(), EpistemicState::unchecked(w))?;
    }
    for (id, m) in measurements {
        model.add_measurement(id, m.clone(), sign_response(m, &shifted)?)?;
    }
    Ok(model)
}

/// Kochen-Specker Born probability computed by midpoint quadrature on a
/// partition, without building a model; used to size discretisation error.
pub fn kochen_specker_quadrature(partition: SpherePartition, p: &BlochVector, n: &BlochVector) -> f64 {
    let (p, n) = (p.components(), n.components());
    let centers = partition.centers();
    let total: f64 = centers.iter().map(|&c| dot(c, p).max(0.0)).sum();
    let hit: f64 = centers
        .iter()
        .filter(|&&c| dot(c, n) >= 0.0)
        .map(|&c| dot(c, p).max(0.0))
        .sum();
    if total <= tolerance::ALGEBRAIC {
        0.0
    } else {
        hit / total
    }
}
