//! Serialisable reports emitted by the command-line front end, as JSON or
//! CSV.

use serde::Serialize;
use serde_json::{Map, Value};

use ontolab_core::cloning::{ChshBudget, Feasibility, SweepRow};
use ontolab_core::composite::{
    Classification, Dependence, OnticType, Outcome, Party, PostMeasurementConstraint, Proposition1Tally,
    SettingGrid, Witness,
};
use ontolab_core::epistemicity::EpistemicityReport;
use ontolab_core::ontic::{MaximalityVerdict, PairResidual, ValidationReport};
use ontolab_core::search::{ChshEstimate, OverlapOptimum};

use crate::format::{model_to_value, table_to_value};

/// Pretty JSON with a trailing newline.
pub fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("reports always serialise");
    s.push('\n');
    s
}

/// CSV with a header row taken from the field names.
pub fn to_csv<T: Serialize>(rows: &[T]) -> Result<String, csv::Error> {
    let mut w = csv::Writer::from_writer(Vec::new());
    for row in rows {
        w.serialize(row)?;
    }
    let bytes = w.into_inner().map_err(|e| e.into_error())?;
    Ok(String::from_utf8(bytes).expect("CSV of UTF-8 fields is UTF-8"))
}

#[derive(Debug, Clone, Serialize)]
pub struct ResidualRow {
    pub preparation: String,
    pub measurement: String,
    pub outcome: String,
    pub predicted: f64,
    pub born: f64,
    pub residual: f64,
}

impl From<&PairResidual> for ResidualRow {
    fn from(p: &PairResidual) -> Self {
        ResidualRow {
            preparation: p.preparation.clone(),
            measurement: p.measurement.clone(),
            outcome: p.outcome.clone(),
            predicted: p.predicted,
            born: p.born,
            residual: p.residual,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct IssueRow {
    pub location: String,
    pub message: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct PropertiesRow {
    pub outcome_deterministic: bool,
    /// `null` when no preparation matches a measurement basis vector.
    pub reciprocal: Option<bool>,
    pub maximally_epistemic: bool,
    pub omega_tolerance: f64,
    pub pairs_checked: usize,
    pub worst_omega_deviation: f64,
}

impl PropertiesRow {
    pub fn new(v: &MaximalityVerdict, omega_tolerance: f64) -> Self {
        PropertiesRow {
            outcome_deterministic: v.outcome_deterministic,
            reciprocal: v.reciprocal,
            maximally_epistemic: v.maximal,
            omega_tolerance,
            pairs_checked: v.pairs_checked,
            worst_omega_deviation: v.worst_omega_deviation,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct ValidateReport {
    pub passed: bool,
    pub tolerance: f64,
    pub ontic_states: usize,
    pub preparations: usize,
    pub measurements: usize,
    pub max_residual: f64,
    pub worst: Option<ResidualRow>,
    pub structural_issues: Vec<IssueRow>,
    pub failures: Vec<ResidualRow>,
    /// Present when validation passed.
    pub properties: Option<PropertiesRow>,
}

impl ValidateReport {
    pub fn new(
        report: &ValidationReport,
        counts: (usize, usize, usize),
        properties: Option<PropertiesRow>,
    ) -> Self {
        ValidateReport {
            passed: report.passed,
            tolerance: report.tolerance,
            ontic_states: counts.0,
            preparations: counts.1,
            measurements: counts.2,
            max_residual: report.max_residual(),
            worst: report.worst().map(ResidualRow::from),
            structural_issues: report
                .structural
                .iter()
                .map(|i| IssueRow {
                    location: i.location.clone(),
                    message: i.message.clone(),
                })
                .collect(),
            failures: report
                .pairs
                .iter()
                .filter(|p| !p.passed)
                .map(ResidualRow::from)
                .collect(),
            properties,
        }
    }
}

/// One row of the epistemicity CSV.
#[derive(Debug, Clone, Serialize)]
pub struct PairRow {
    pub phi: String,
    pub psi: String,
    pub q_overlap: f64,
    pub o_overlap: f64,
    /// Empty for orthogonal pairs.
    pub omega: Option<f64>,
}

#[derive(Debug, Clone, Serialize)]
pub struct BoundRow {
    pub phi: String,
    pub phi_perp: String,
    pub psi: String,
    pub alpha_sq: f64,
    pub bound_value: f64,
    pub lhs: f64,
    pub margin: f64,
    pub satisfied: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct EpistemicityRows {
    pub pairs: Vec<PairRow>,
    pub bound_checks: Vec<BoundRow>,
}

impl From<&EpistemicityReport> for EpistemicityRows {
    fn from(r: &EpistemicityReport) -> Self {
        EpistemicityRows {
            pairs: r
                .pairs
                .iter()
                .map(|p| PairRow {
                    phi: p.phi.clone(),
                    psi: p.psi.clone(),
                    q_overlap: p.quantum_overlap,
                    o_overlap: p.ontic_overlap,
                    omega: p.omega,
                })
                .collect(),
            bound_checks: r
                .bound_checks
                .iter()
                .map(|b| BoundRow {
                    phi: b.phi.clone(),
                    phi_perp: b.phi_perp.clone(),
                    psi: b.psi.clone(),
                    alpha_sq: b.verdict.alpha_sq,
                    bound_value: b.verdict.rhs,
                    lhs: b.verdict.lhs,
                    margin: b.verdict.margin,
                    satisfied: b.verdict.satisfied,
                })
                .collect(),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct WitnessRow {
    pub party: &'static str,
    pub setting: String,
    pub remote_settings: [String; 2],
}

impl From<&Witness> for WitnessRow {
    fn from(w: &Witness) -> Self {
        WitnessRow {
            party: w.party.name(),
            setting: w.setting.clone(),
            remote_settings: [w.remote.0.clone(), w.remote.1.clone()],
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct ClassifyReport {
    #[serde(rename = "type")]
    pub ontic_type: &'static str,
    pub witnesses: Vec<WitnessRow>,
}

impl From<&Classification> for ClassifyReport {
    fn from(c: &Classification) -> Self {
        ClassifyReport {
            ontic_type: c.tag.as_str(),
            witnesses: c.witnesses.iter().map(WitnessRow::from).collect(),
        }
    }
}

fn dependence_str(d: Dependence) -> &'static str {
    match d {
        Dependence::Excluded => "EXCLUDED",
        Dependence::Possible => "POSSIBLE",
        Dependence::Forced => "FORCED",
    }
}

/// `setting -> outcome` of a local party; `null` outcomes are unconstrained.
fn locals(c: &PostMeasurementConstraint, party: Party) -> Option<Map<String, Value>> {
    c.locals(party).map(|l| {
        l.into_iter()
            .map(|(s, o)| (s, o.map_or(Value::Null, |o: Outcome| o.value().into())))
            .collect()
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct EvolveReport {
    /// Measurements applied so far, as `party:setting`.
    pub measured: Vec<String>,
    #[serde(rename = "type")]
    pub ontic_type: &'static str,
    pub possible_types: Vec<&'static str>,
    pub alice_dependence: &'static str,
    pub bob_dependence: &'static str,
    pub alice_local: Option<Map<String, Value>>,
    pub bob_local: Option<Map<String, Value>>,
    pub sample: Option<Value>,
}

impl EvolveReport {
    pub fn new(c: &PostMeasurementConstraint, sample: Option<Value>) -> Self {
        EvolveReport {
            measured: c
                .history()
                .iter()
                .map(|(p, s)| format!("{}:{s}", p.name()))
                .collect(),
            ontic_type: c.ontic_type().as_str(),
            possible_types: c.possible_types().iter().map(OnticType::as_str).collect(),
            alice_dependence: dependence_str(c.dependence(Party::Alice)),
            bob_dependence: dependence_str(c.dependence(Party::Bob)),
            alice_local: locals(c, Party::Alice),
            bob_local: locals(c, Party::Bob),
            sample,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct CloneReport {
    pub alpha_sq: f64,
    pub mass_phi: f64,
    pub mass_phi_perp: f64,
    pub mass_rest: f64,
    pub omega_phi: f64,
    pub omega_phi_perp: f64,
    pub rest_cap: f64,
    pub max_chsh: f64,
    pub chsh_target: f64,
    pub margin: f64,
    pub feasible: bool,
}

impl CloneReport {
    pub fn new(b: &ChshBudget, f: &Feasibility) -> Self {
        let (omega_phi, omega_phi_perp) = b.omegas();
        CloneReport {
            alpha_sq: b.alpha_sq(),
            mass_phi: b.mass_phi(),
            mass_phi_perp: b.mass_phi_perp(),
            mass_rest: b.mass_rest(),
            omega_phi,
            omega_phi_perp,
            rest_cap: b.rest_cap(),
            max_chsh: f.max_chsh,
            chsh_target: f.chsh_target,
            margin: f.margin,
            feasible: f.feasible,
        }
    }
}

/// One row of the bound sweep CSV.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct SweepCsvRow {
    pub alpha_sq: f64,
    pub chsh_target: f64,
    pub max_overlap_mass: f64,
    pub min_nonlocal_mass: f64,
    pub bound_rhs: f64,
}

impl From<&SweepRow> for SweepCsvRow {
    fn from(r: &SweepRow) -> Self {
        SweepCsvRow {
            alpha_sq: r.alpha_sq,
            chsh_target: r.chsh_target,
            max_overlap_mass: r.max_overlap_mass,
            min_nonlocal_mass: r.min_nonlocal_mass,
            bound_rhs: r.bound_rhs,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct SearchReport {
    pub objective: (String, String),
    pub value: f64,
    pub quantum_overlap: f64,
    pub omega: Option<f64>,
    pub patterns: usize,
    pub reachable_patterns: usize,
    pub brute_force: Option<f64>,
    pub witness: Value,
}

impl SearchReport {
    pub fn new(objective: (String, String), opt: &OverlapOptimum, brute_force: Option<f64>) -> Self {
        SearchReport {
            objective,
            value: opt.value,
            quantum_overlap: opt.quantum_overlap,
            omega: (opt.quantum_overlap > ontolab_core::tolerance::NEAR_ORTHOGONAL)
                .then(|| opt.value / opt.quantum_overlap),
            patterns: opt.patterns.len(),
            reachable_patterns: opt.reachable.len(),
            brute_force,
            witness: model_to_value(&opt.witness),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct TypeHistogram {
    #[serde(rename = "TYPE_1")]
    pub type_1: u64,
    #[serde(rename = "TYPE_2I")]
    pub type_2i: u64,
    #[serde(rename = "TYPE_2II")]
    pub type_2ii: u64,
    #[serde(rename = "TYPE_2III")]
    pub type_2iii: u64,
}

impl From<[u64; 4]> for TypeHistogram {
    fn from(h: [u64; 4]) -> Self {
        TypeHistogram {
            type_1: h[0],
            type_2i: h[1],
            type_2ii: h[2],
            type_2iii: h[3],
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct CounterexampleRow {
    pub index: u64,
    pub final_type: &'static str,
    pub table: Value,
}

#[derive(Debug, Clone, Serialize)]
pub struct Prop1Report {
    pub alice_settings: Vec<String>,
    pub bob_settings: Vec<String>,
    pub enumerated: u64,
    pub consistent: u64,
    pub initial_types: TypeHistogram,
    pub after_alice_types: TypeHistogram,
    pub counterexamples: Vec<CounterexampleRow>,
    pub all_local: bool,
}

impl Prop1Report {
    pub fn new(grid: &SettingGrid, t: &Proposition1Tally) -> Self {
        Prop1Report {
            alice_settings: grid.alice().to_vec(),
            bob_settings: grid.bob().to_vec(),
            enumerated: t.enumerated,
            consistent: t.consistent,
            initial_types: t.initial_types.into(),
            after_alice_types: t.intermediate_types.into(),
            counterexamples: t
                .counterexamples
                .iter()
                .map(|c| CounterexampleRow {
                    index: c.index,
                    final_type: c.final_type.as_str(),
                    table: table_to_value(&c.table),
                })
                .collect(),
            all_local: t.all_local(),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct MonteCarloReport {
    pub alpha_sq: f64,
    pub samples: u64,
    pub seed: u64,
    pub estimate: f64,
    pub standard_error: f64,
    pub target: f64,
    /// `(estimate - target) / standard_error`.
    pub z_score: Option<f64>,
    pub counts: [[u64; 2]; 2],
    pub correlations: [[f64; 2]; 2],
}

impl MonteCarloReport {
    pub fn new(alpha_sq: f64, seed: u64, target: f64, e: &ChshEstimate) -> Self {
        MonteCarloReport {
            alpha_sq,
            samples: e.samples,
            seed,
            estimate: e.estimate,
            standard_error: e.standard_error,
            target,
            z_score: (e.standard_error > 0.0).then(|| (e.estimate - target) / e.standard_error),
            counts: e.counts,
            correlations: e.correlations,
        }
    }
}
