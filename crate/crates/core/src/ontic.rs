//! Finite ontological models: ontic labels, epistemic states, response
//! functions, Born-rule validation and the structural properties that
//! characterise maximal psi-epistemicity (outcome determinism and
//! reciprocity).

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use crate::epistemicity;
use crate::quantum::{ProjectiveMeasurement, QuantumState};
use crate::tolerance;
use crate::{Error, Result};

/// Sector of a joint ontic space a label belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Sector {
    LocalA,
    LocalB,
    Product,
    Global,
    NonLocal,
}

impl Sector {
    pub fn as_str(&self) -> &'static str {
        match self {
            Sector::LocalA => "LOCAL_A",
            Sector::LocalB => "LOCAL_B",
            Sector::Product => "PRODUCT",
            Sector::Global => "GLOBAL",
            Sector::NonLocal => "NONLOCAL",
        }
    }

    pub fn parse(s: &str) -> Option<Sector> {
        Some(match s {
            "LOCAL_A" => Sector::LocalA,
            "LOCAL_B" => Sector::LocalB,
            "PRODUCT" => Sector::Product,
            "GLOBAL" => Sector::Global,
            "NONLOCAL" => Sector::NonLocal,
            _ => return None,
        })
    }
}

/// Set of ontic labels, by index into the [`OnticSpace`].
pub type LabelSet = BTreeSet<usize>;

/// Finite, ordered set of ontic-state identifiers.
#[derive(Debug, Clone, PartialEq)]
pub struct OnticSpace {
    labels: Vec<String>,
    sectors: Vec<Option<Sector>>,
    index: BTreeMap<String, usize>,
}

impl OnticSpace {
    pub fn new(labels: Vec<String>) -> Result<Self> {
        let sectors = alloc::vec![None; labels.len()];
        Self::with_sectors(labels, sectors)
    }

    pub fn with_sectors(labels: Vec<String>, sectors: Vec<Option<Sector>>) -> Result<Self> {
        if labels.is_empty() {
            return Err(Error::Empty("ontic space"));
        }
        if sectors.len() != labels.len() {
            return Err(Error::DimensionMismatch {
                expected: labels.len(),
                found: sectors.len(),
            });
        }
        let mut index = BTreeMap::new();
        for (i, l) in labels.iter().enumerate() {
            if index.insert(l.clone(), i).is_some() {
                return Err(Error::DuplicateId(l.clone()));
            }
        }
        Ok(OnticSpace {
            labels,
            sectors,
            index,
        })
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn sectors(&self) -> &[Option<Sector>] {
        &self.sectors
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.index.get(label).copied()
    }

    pub fn names(&self, set: &LabelSet) -> Vec<&str> {
        set.iter().map(|&i| self.labels[i].as_str()).collect()
    }
}

/// `mu(lambda | psi)` as a weight per ontic label.
#[derive(Debug, Clone, PartialEq)]
pub struct EpistemicState {
    weights: Vec<f64>,
}

impl EpistemicState {
    /// Checked constructor: non-negative weights summing to one.
    pub fn new(weights: Vec<f64>) -> Result<Self> {
        if let Some(w) = weights.iter().find(|w| !(**w >= 0.0)) {
            return Err(Error::OutOfRange {
                what: "epistemic weight",
                value: *w,
            });
        }
        let total: f64 = weights.iter().sum();
        if (total - 1.0).abs() > tolerance::DISTRIBUTION {
            return Err(Error::OutOfRange {
                what: "epistemic total mass",
                value: total,
            });
        }
        Ok(EpistemicState { weights })
    }

    /// Unchecked constructor for loaders; [`validate`] reports any defects.
    pub fn unchecked(weights: Vec<f64>) -> Self {
        EpistemicState { weights }
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn weight(&self, label: usize) -> f64 {
        self.weights.get(label).copied().unwrap_or(0.0)
    }
}

/// `xi(k | lambda, M)`: one row of outcome probabilities per ontic label.
#[derive(Debug, Clone, PartialEq)]
pub struct ResponseFunction {
    table: Vec<Vec<f64>>,
}

impl ResponseFunction {
    pub fn new(table: Vec<Vec<f64>>) -> Result<Self> {
        for row in &table {
            if let Some(v) = row.iter().find(|v| !(0.0..=1.0).contains(*v)) {
                return Err(Error::OutOfRange {
                    what: "response probability",
                    value: *v,
                });
            }
            let total: f64 = row.iter().sum();
            if (total - 1.0).abs() > tolerance::DISTRIBUTION {
                return Err(Error::OutOfRange {
                    what: "response row total",
                    value: total,
                });
            }
        }
        Ok(ResponseFunction { table })
    }

    pub fn unchecked(table: Vec<Vec<f64>>) -> Self {
        ResponseFunction { table }
    }

    /// Deterministic response: label `i` yields outcome `outcomes[i]`.
    pub fn deterministic(outcomes: &[usize], outcome_count: usize) -> Self {
        let table = outcomes
            .iter()
            .map(|&k| {
                let mut row = alloc::vec![0.0; outcome_count];
                row[k] = 1.0;
                row
            })
            .collect();
        ResponseFunction { table }
    }

    pub fn table(&self) -> &[Vec<f64>] {
        &self.table
    }

    pub fn probability(&self, label: usize, outcome: usize) -> f64 {
        self.table
            .get(label)
            .and_then(|row| row.get(outcome))
            .copied()
            .unwrap_or(0.0)
    }
}

/// Row-stochastic transition matrix between ontic labels.
#[derive(Debug, Clone, PartialEq)]
pub struct TransitionMatrix {
    rows: Vec<Vec<f64>>,
}

impl TransitionMatrix {
    pub fn new(rows: Vec<Vec<f64>>) -> Result<Self> {
        let n = rows.len();
        for row in &rows {
            if row.len() != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    found: row.len(),
                });
            }
            if let Some(v) = row.iter().find(|v| !(**v >= 0.0)) {
                return Err(Error::OutOfRange {
                    what: "transition probability",
                    value: *v,
                });
            }
            let total: f64 = row.iter().sum();
            if (total - 1.0).abs() > tolerance::DISTRIBUTION {
                return Err(Error::OutOfRange {
                    what: "transition row total",
                    value: total,
                });
            }
        }
        Ok(TransitionMatrix { rows })
    }

    pub fn identity(n: usize) -> Self {
        let rows = (0..n)
            .map(|i| (0..n).map(|j| if i == j { 1.0 } else { 0.0 }).collect())
            .collect();
        TransitionMatrix { rows }
    }

    pub fn rows(&self) -> &[Vec<f64>] {
        &self.rows
    }

    pub fn get(&self, from: usize, to: usize) -> f64 {
        self.rows[from][to]
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Preparation {
    pub id: String,
    pub state: QuantumState,
    pub mu: EpistemicState,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Measurement {
    pub id: String,
    pub measurement: ProjectiveMeasurement,
    pub xi: ResponseFunction,
}

/// A finite ontological model over a fixed set of preparations and
/// measurements.
#[derive(Debug, Clone, PartialEq)]
pub struct OntologicalModel {
    dimension: usize,
    space: OnticSpace,
    preparations: Vec<Preparation>,
    measurements: Vec<Measurement>,
    born_tolerance: f64,
    support_epsilon: f64,
}

impl OntologicalModel {
    pub fn new(dimension: usize, space: OnticSpace) -> Self {
        OntologicalModel {
            dimension,
            space,
            preparations: Vec::new(),
            measurements: Vec::new(),
            born_tolerance: tolerance::BORN_DEFAULT,
            support_epsilon: tolerance::SUPPORT_EPSILON,
        }
    }

    pub fn with_born_tolerance(mut self, tol: f64) -> Self {
        self.born_tolerance = tol;
        self
    }

    pub fn with_support_epsilon(mut self, eps: f64) -> Self {
        self.support_epsilon = eps;
        self
    }

    pub fn add_preparation(&mut self, id: &str, state: QuantumState, mu: EpistemicState) -> Result<()> {
        if self.preparations.iter().any(|p| p.id == id) {
            return Err(Error::DuplicateId(id.to_string()));
        }
        self.preparations.push(Preparation {
            id: id.to_string(),
            state,
            mu,
        });
        Ok(())
    }

    pub fn add_measurement(
        &mut self,
        id: &str,
        measurement: ProjectiveMeasurement,
        xi: ResponseFunction,
    ) -> Result<()> {
        if self.measurements.iter().any(|m| m.id == id) {
            return Err(Error::DuplicateId(id.to_string()));
        }
        self.measurements.push(Measurement {
            id: id.to_string(),
            measurement,
            xi,
        });
        Ok(())
    }

    pub fn dimension(&self) -> usize {
        self.dimension
    }

    pub fn space(&self) -> &OnticSpace {
        &self.space
    }

    pub fn preparations(&self) -> &[Preparation] {
        &self.preparations
    }

    pub fn measurements(&self) -> &[Measurement] {
        &self.measurements
    }

    pub fn born_tolerance(&self) -> f64 {
        self.born_tolerance
    }

    pub fn support_epsilon(&self) -> f64 {
        self.support_epsilon
    }

    pub fn preparation(&self, id: &str) -> Result<&Preparation> {
        self.preparations
            .iter()
            .find(|p| p.id == id)
            .ok_or_else(|| Error::UnknownPreparation(id.to_string()))
    }

    pub fn measurement(&self, id: &str) -> Result<&Measurement> {
        self.measurements
            .iter()
            .find(|m| m.id == id)
            .ok_or_else(|| Error::UnknownMeasurement(id.to_string()))
    }

    /// `Lambda_psi`: labels carrying more than `support_epsilon` mass.
    pub fn support(&self, prep_id: &str) -> Result<LabelSet> {
        let prep = self.preparation(prep_id)?;
        Ok(self.support_of(&prep.mu))
    }

    pub(crate) fn support_of(&self, mu: &EpistemicState) -> LabelSet {
        mu.weights()
            .iter()
            .enumerate()
            .filter(|(_, &w)| w > self.support_epsilon)
            .map(|(i, _)| i)
            .collect()
    }

    /// `Core[xi(k|lambda)]`: labels answering `outcome` with certainty.
    pub fn xi_core(&self, meas_id: &str, outcome: &str) -> Result<LabelSet> {
        let m = self.measurement(meas_id)?;
        let k = m.measurement.outcome_index(outcome)?;
        Ok(self.core_of(m, k))
    }

    /// `Supp[xi(k|lambda)]`: labels answering `outcome` with non-zero probability.
    pub fn xi_support(&self, meas_id: &str, outcome: &str) -> Result<LabelSet> {
        let m = self.measurement(meas_id)?;
        let k = m.measurement.outcome_index(outcome)?;
        Ok((0..self.space.len())
            .filter(|&l| m.xi.probability(l, k) > self.support_epsilon)
            .collect())
    }

    fn core_of(&self, m: &Measurement, k: usize) -> LabelSet {
        (0..self.space.len())
            .filter(|&l| m.xi.probability(l, k) >= 1.0 - self.support_epsilon)
            .collect()
    }

    /// Every response value is 0 or 1 up to `support_epsilon`.
    pub fn is_outcome_deterministic(&self) -> bool {
        let eps = self.support_epsilon;
        self.measurements
            .iter()
            .all(|m| m.xi.table().iter().flatten().all(|&v| v <= eps || v >= 1.0 - eps))
    }

    /// Compares `Lambda_psi` with `Core[xi(psi|lambda)]` for every preparation
    /// whose ket is a basis vector of some measurement.
    pub fn is_reciprocal(&self) -> Result<ReciprocityReport> {
        let mut checked = Vec::new();
        let mut skipped = Vec::new();
        for prep in &self.preparations {
            let support = self.support_of(&prep.mu);
            let mut matched = false;
            for m in &self.measurements {
                if m.measurement.dim() != prep.state.dim() {
                    continue;
                }
                if let Some(k) = m.measurement.matching_outcome(&prep.state) {
                    matched = true;
                    let core = self.core_of(m, k);
                    checked.push(ReciprocityCheck {
                        preparation: prep.id.clone(),
                        measurement: m.id.clone(),
                        outcome: m.measurement.labels()[k].clone(),
                        support_size: support.len(),
                        core_size: core.len(),
                        support_in_core: support.is_subset(&core),
                        equal: support == core,
                    });
                }
            }
            if !matched {
                skipped.push(prep.id.clone());
            }
        }
        if checked.is_empty() {
            return Err(Error::ReciprocityUndecidable);
        }
        let reciprocal = checked.iter().all(|c| c.equal);
        Ok(ReciprocityReport {
            reciprocal,
            checked,
            skipped,
        })
    }

    /// Maximal psi-epistemicity decided twice: structurally as outcome
    /// determinism plus reciprocity, and by requiring `Omega = 1` for every
    /// non-orthogonal pair of preparations. The overlap route uses the model's
    /// Born tolerance.
    pub fn is_maximally_epistemic(&self) -> Result<MaximalityVerdict> {
        self.is_maximally_epistemic_within(self.born_tolerance.max(tolerance::OPTIMIZATION))
    }

    pub fn is_maximally_epistemic_within(&self, omega_tolerance: f64) -> Result<MaximalityVerdict> {
        let outcome_deterministic = self.is_outcome_deterministic();
        let reciprocal = match self.is_reciprocal() {
            Ok(r) => Some(r.reciprocal),
            Err(Error::ReciprocityUndecidable) if !outcome_deterministic => None,
            Err(e) => return Err(e),
        };
        let structural = outcome_deterministic && reciprocal == Some(true);

        let mut pairs_checked = 0;
        let mut worst_deviation: f64 = 0.0;
        let mut overlap_route = true;
        for phi in &self.preparations {
            for psi in &self.preparations {
                if phi.id == psi.id {
                    continue;
                }
                let q = phi.state.overlap(&psi.state)?;
                if q < tolerance::NEAR_ORTHOGONAL {
                    continue;
                }
                let omega = epistemicity::omega(self, &phi.id, &psi.id)?.omega;
                pairs_checked += 1;
                let dev = (omega - 1.0).abs();
                worst_deviation = worst_deviation.max(dev);
                if dev > omega_tolerance {
                    overlap_route = false;
                }
            }
        }
        // with no non-orthogonal pair the overlap route has nothing to say
        if pairs_checked > 0 && structural != overlap_route {
            return Err(Error::Inconsistent(format!(
                "structural test (OD={outcome_deterministic}, reciprocal={reciprocal:?}) says {structural}, \
                 overlap test over {pairs_checked} pairs says {overlap_route} (worst |Omega-1| = {worst_deviation:e})"
            )));
        }
        Ok(MaximalityVerdict {
            outcome_deterministic,
            reciprocal,
            maximal: structural,
            pairs_checked,
            worst_omega_deviation: worst_deviation,
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ReciprocityCheck {
    pub preparation: String,
    pub measurement: String,
    pub outcome: String,
    pub support_size: usize,
    pub core_size: usize,
    pub support_in_core: bool,
    pub equal: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ReciprocityReport {
    pub reciprocal: bool,
    pub checked: Vec<ReciprocityCheck>,
    /// Preparations that match no measurement basis vector.
    pub skipped: Vec<String>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct MaximalityVerdict {
    pub outcome_deterministic: bool,
    /// `None` when undecidable and irrelevant (the model is not OD).
    pub reciprocal: Option<bool>,
    pub maximal: bool,
    pub pairs_checked: usize,
    pub worst_omega_deviation: f64,
}

/// A defect in the shape of the model, as opposed to a Born residual.
#[derive(Debug, Clone, PartialEq)]
pub struct StructuralIssue {
    pub location: String,
    pub message: String,
}

/// Born residual of one preparation/measurement pair (worst outcome).
#[derive(Debug, Clone, PartialEq)]
pub struct PairResidual {
    pub preparation: String,
    pub measurement: String,
    pub outcome: String,
    pub predicted: f64,
    pub born: f64,
    pub residual: f64,
    pub passed: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ValidationReport {
    pub tolerance: f64,
    pub structural: Vec<StructuralIssue>,
    pub pairs: Vec<PairResidual>,
    pub passed: bool,
}

impl ValidationReport {
    pub fn worst(&self) -> Option<&PairResidual> {
        self.pairs
            .iter()
            .fold(None, |acc: Option<&PairResidual>, p| match acc {
                Some(a) if a.residual >= p.residual => Some(a),
                _ => Some(p),
            })
    }

    pub fn max_residual(&self) -> f64 {
        self.worst().map(|p| p.residual).unwrap_or(0.0)
    }
}

/// Checks the model's shape and that every preparation/measurement pair
/// reproduces the Born rule within the declared tolerance.
pub fn validate(model: &OntologicalModel) -> ValidationReport {
    validate_with_tolerance(model, model.born_tolerance)
}

pub fn validate_with_tolerance(model: &OntologicalModel, tol: f64) -> ValidationReport {
    let n = model.space.len();
    let mut structural = Vec::new();
    let mut issue =
        |location: String, message: String| structural.push(StructuralIssue { location, message });

    let mut prep_ok = Vec::with_capacity(model.preparations.len());
    for p in &model.preparations {
        let loc = format!("preparations.{}", p.id);
        let mut ok = true;
        if p.state.dim() != model.dimension {
            issue(
                loc.clone(),
                format!(
                    "ket dimension {} != model dimension {}",
                    p.state.dim(),
                    model.dimension
                ),
            );
            ok = false;
        }
        let w = p.mu.weights();
        if w.len() != n {
            issue(
                loc.clone(),
                format!("mu has {} weights for {} ontic states", w.len(), n),
            );
            ok = false;
        }
        if let Some((i, v)) = w.iter().enumerate().find(|(_, v)| !(**v >= 0.0)) {
            issue(
                loc.clone(),
                format!("mu weight {v} at index {i} is negative or not a number"),
            );
            ok = false;
        }
        let total: f64 = w.iter().sum();
        if (total - 1.0).abs() > tolerance::DISTRIBUTION {
            issue(loc, format!("mu sums to {total}"));
            ok = false;
        }
        prep_ok.push(ok);
    }

    let mut meas_ok = Vec::with_capacity(model.measurements.len());
    for m in &model.measurements {
        let loc = format!("measurements.{}", m.id);
        let mut ok = true;
        let d = m.measurement.dim();
        if d != model.dimension {
            issue(
                loc.clone(),
                format!("basis dimension {} != model dimension {}", d, model.dimension),
            );
            ok = false;
        }
        let table = m.xi.table();
        if table.len() != n {
            issue(
                loc.clone(),
                format!("xi has {} rows for {} ontic states", table.len(), n),
            );
            ok = false;
        }
        for (l, row) in table.iter().enumerate() {
            let label = model.space.labels().get(l).map(String::as_str).unwrap_or("?");
            if row.len() != d {
                issue(
                    loc.clone(),
                    format!("xi row `{label}` has {} outcomes, expected {d}", row.len()),
                );
                ok = false;
                continue;
            }
            if row
                .iter()
                .any(|v| !(*v >= -tolerance::DISTRIBUTION && *v <= 1.0 + tolerance::DISTRIBUTION))
            {
                issue(
                    loc.clone(),
                    format!("xi row `{label}` has a value outside [0, 1]"),
                );
                ok = false;
            }
            let total: f64 = row.iter().sum();
            if (total - 1.0).abs() > tolerance::DISTRIBUTION {
                issue(loc.clone(), format!("xi row `{label}` sums to {total}"));
                ok = false;
            }
        }
        meas_ok.push(ok);
    }

    let mut pairs = Vec::new();
    for (p, &pok) in model.preparations.iter().zip(&prep_ok) {
        for (m, &mok) in model.measurements.iter().zip(&meas_ok) {
            if !(pok && mok) {
                continue;
            }
            let born = match m.measurement.distribution(&p.state) {
                Ok(b) => b,
                Err(_) => continue,
            };
            let mut worst: Option<PairResidual> = None;
            for (k, &b) in born.iter().enumerate() {
                let predicted: f64 = (0..n).map(|l| m.xi.probability(l, k) * p.mu.weight(l)).sum();
                let residual = (predicted - b).abs();
                if worst.as_ref().is_none_or(|w| residual > w.residual) {
                    worst = Some(PairResidual {
                        preparation: p.id.clone(),
                        measurement: m.id.clone(),
                        outcome: m.measurement.labels()[k].clone(),
                        predicted,
                        born: b,
                        residual,
                        passed: residual <= tol,
                    });
                }
            }
            pairs.extend(worst);
        }
    }

    let passed = structural.is_empty() && pairs.iter().all(|p| p.passed);
    ValidationReport {
        tolerance: tol,
        structural,
        pairs,
        passed,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::reference;
    use alloc::vec;

    fn one_label_model() -> OntologicalModel {
        let space = OnticSpace::new(vec!["a".into(), "b".into()]).unwrap();
        let mut m = OntologicalModel::new(2, space);
        m.add_preparation(
            "0",
            QuantumState::zero(),
            EpistemicState::new(vec![1.0, 0.0]).unwrap(),
        )
        .unwrap();
        m.add_preparation(
            "1",
            QuantumState::one(),
            EpistemicState::new(vec![0.0, 1.0]).unwrap(),
        )
        .unwrap();
        m.add_measurement(
            "Z",
            ProjectiveMeasurement::pauli_z(),
            ResponseFunction::new(vec![vec![1.0, 0.0], vec![0.0, 1.0]]).unwrap(),
        )
        .unwrap();
        m
    }

    #[test]
    fn psi_complete_validates_and_singleton_supports() {
        let m = reference::psi_complete();
        let r = validate(&m);
        assert!(r.passed, "{r:?}");
        assert!(r.max_residual() <= 1e-12);
        let s = m.support("0").unwrap();
        assert_eq!(m.space().names(&s), vec!["psi:0"]);
    }

    #[test]
    fn perturbed_entry_fails_with_residual() {
        let mut m = reference::psi_complete();
        let xi = &mut m.measurements[0].xi.table;
        xi[0][0] -= 1e-3;
        xi[0][1] += 1e-3;
        let r = validate(&m);
        assert!(!r.passed);
        assert!(r.structural.is_empty());
        let worst = r.worst().unwrap();
        assert!((worst.residual - 1e-3).abs() < 1e-12, "{worst:?}");
    }

    #[test]
    fn structural_failures_are_separate() {
        let mut m = one_label_model();
        m.preparations[0].mu = EpistemicState::unchecked(vec![1.0]);
        m.measurements[0].xi = ResponseFunction::unchecked(vec![vec![1.0, 0.0], vec![0.5]]);
        let r = validate(&m);
        assert!(!r.passed);
        assert_eq!(r.structural.len(), 2, "{:?}", r.structural);
        // only the untouched pair is numerically checked, and it's fine
        assert!(r.pairs.is_empty());
    }

    #[test]
    fn uniform_mu_supports_everything() {
        let space = OnticSpace::new(vec!["a".into(), "b".into(), "c".into()]).unwrap();
        let mut m = OntologicalModel::new(2, space);
        m.add_preparation(
            "u",
            QuantumState::plus(),
            EpistemicState::new(vec![1.0 / 3.0; 3]).unwrap(),
        )
        .unwrap();
        assert_eq!(m.support("u").unwrap().len(), 3);
        assert!(matches!(m.support("nope"), Err(Error::UnknownPreparation(_))));
    }

    #[test]
    fn core_and_support_of_response() {
        let m = reference::psi_complete();
        // |+> label answers Z with probability 1/2: in the support, not the core
        let core = m.xi_core("Z", "0").unwrap();
        let supp = m.xi_support("Z", "0").unwrap();
        let plus = m.space().index_of("psi:+").unwrap();
        assert!(supp.contains(&plus) && !core.contains(&plus));
        assert!(core.is_subset(&supp));
        assert!(!m.is_outcome_deterministic());
        assert!(matches!(m.xi_core("W", "0"), Err(Error::UnknownMeasurement(_))));
        assert!(matches!(m.xi_core("Z", "q"), Err(Error::UnknownOutcome(_))));
    }

    #[test]
    fn deterministic_model_has_equal_core_and_support() {
        let m = one_label_model();
        assert!(m.is_outcome_deterministic());
        for o in ["0", "1"] {
            assert_eq!(m.xi_core("Z", o).unwrap(), m.xi_support("Z", o).unwrap());
        }
        let r = m.is_reciprocal().unwrap();
        assert!(r.reciprocal);
    }

    #[test]
    fn reciprocity_undecidable_without_matching_basis() {
        let space = OnticSpace::new(vec!["a".into()]).unwrap();
        let mut m = OntologicalModel::new(2, space);
        m.add_preparation("+", QuantumState::plus(), EpistemicState::new(vec![1.0]).unwrap())
            .unwrap();
        m.add_measurement(
            "Z",
            ProjectiveMeasurement::pauli_z(),
            ResponseFunction::new(vec![vec![0.5, 0.5]]).unwrap(),
        )
        .unwrap();
        assert_eq!(m.is_reciprocal().unwrap_err(), Error::ReciprocityUndecidable);
        // not OD, so maximality is decided without reciprocity
        let v = m.is_maximally_epistemic().unwrap();
        assert!(!v.maximal);
        assert_eq!(v.reciprocal, None);
    }

    #[test]
    fn transition_matrix_rejects_non_stochastic_rows() {
        assert!(TransitionMatrix::new(vec![vec![0.5, 0.5], vec![1.0, 0.0]]).is_ok());
        assert!(TransitionMatrix::new(vec![vec![0.5, 0.4], vec![1.0, 0.0]]).is_err());
        assert!(TransitionMatrix::new(vec![vec![1.0], vec![1.0, 0.0]]).is_err());
        assert_eq!(TransitionMatrix::identity(3).get(2, 2), 1.0);
    }

    #[test]
    fn checked_constructors() {
        assert!(EpistemicState::new(vec![0.5, 0.6]).is_err());
        assert!(EpistemicState::new(vec![-0.1, 1.1]).is_err());
        assert!(ResponseFunction::new(vec![vec![0.3, 0.3]]).is_err());
        assert!(OnticSpace::new(vec![]).is_err());
        assert!(matches!(
            OnticSpace::new(vec!["a".into(), "a".into()]),
            Err(Error::DuplicateId(_))
        ));
    }
}
