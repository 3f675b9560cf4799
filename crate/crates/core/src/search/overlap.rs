//! Largest ontic overlap `sum over Lambda_phi of mu(lambda|psi)` over all
//! outcome-deterministic models that reproduce the Born rule on a given set
//! of states and measurements.
//!
//! Each ontic state is a response pattern: one fixed outcome per
//! measurement. A stochastic response function is a mixture of such
//! patterns with the same Born statistics, so restricting to patterns does
//! not lower the optimum.
//!
//! The objective depends on the support of `mu(.|phi)`, which is not a
//! linear quantity. The problem splits instead: a pattern can lie in
//! `Lambda_phi` iff some feasible `mu(.|phi)` puts mass on it, which is one
//! LP per pattern; with that set fixed, maximising the mass `psi` puts on it
//! is a single LP. Averaging the per-pattern maximisers gives a feasible
//! `mu(.|phi)` whose support is the whole set.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

// inherent float methods are only there when std is linked
#[allow(unused_imports)]
use num_traits::Float;

use crate::ontic::{validate_with_tolerance, EpistemicState, OnticSpace, OntologicalModel, ResponseFunction};
use crate::quantum::{ProjectiveMeasurement, QuantumState};
use crate::search::simplex::{LinearProgram, Relation};
use crate::tolerance;
use crate::{Error, Result};

/// Most response patterns the LP will enumerate.
pub const MAX_PATTERNS: usize = 4096;
/// Mass above which a pattern counts as reachable.
const REACHABLE: f64 = tolerance::OPTIMIZATION;
/// Enumeration nodes the grid oracle may visit before giving up.
const BRUTE_FORCE_NODES: u64 = 50_000_000;

/// Every assignment of one outcome index per measurement, in lexicographic
/// order with the first measurement most significant.
pub fn response_patterns(measurements: &[(String, ProjectiveMeasurement)]) -> Result<Vec<Vec<usize>>> {
    let mut count: usize = 1;
    for (_, m) in measurements {
        count = count
            .checked_mul(m.dim())
            .filter(|&c| c <= MAX_PATTERNS)
            .ok_or_else(|| Error::InstanceTooLarge(format!("more than {MAX_PATTERNS} response patterns")))?;
    }
    let mut out = Vec::with_capacity(count);
    let mut pattern = vec![0usize; measurements.len()];
    for _ in 0..count {
        out.push(pattern.clone());
        for i in (0..pattern.len()).rev() {
            pattern[i] += 1;
            if pattern[i] < measurements[i].1.dim() {
                break;
            }
            pattern[i] = 0;
        }
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq)]
pub struct OverlapOptimum {
    /// Largest ontic overlap.
    pub value: f64,
    /// `|<phi|psi>|^2`.
    pub quantum_overlap: f64,
    /// Patterns that can carry mass under `phi`, as indices into `patterns`.
    pub reachable: Vec<usize>,
    pub patterns: Vec<Vec<usize>>,
    /// Outcome-deterministic model attaining `value`.
    pub witness: OntologicalModel,
}

struct Instance<'a> {
    states: &'a [(String, QuantumState)],
    measurements: &'a [(String, ProjectiveMeasurement)],
    patterns: Vec<Vec<usize>>,
}

impl<'a> Instance<'a> {
    fn new(
        states: &'a [(String, QuantumState)],
        measurements: &'a [(String, ProjectiveMeasurement)],
    ) -> Result<Self> {
        let dim = states
            .first()
            .map(|(_, s)| s.dim())
            .ok_or(Error::Empty("states"))?;
        for (i, (id, s)) in states.iter().enumerate() {
            if s.dim() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    found: s.dim(),
                });
            }
            if states[..i].iter().any(|(other, _)| other == id) {
                return Err(Error::DuplicateId(id.clone()));
            }
        }
        for (i, (id, m)) in measurements.iter().enumerate() {
            if m.dim() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    found: m.dim(),
                });
            }
            if measurements[..i].iter().any(|(other, _)| other == id) {
                return Err(Error::DuplicateId(id.clone()));
            }
        }
        Ok(Instance {
            states,
            measurements,
            patterns: response_patterns(measurements)?,
        })
    }

    fn state_index(&self, id: &str) -> Result<usize> {
        self.states
            .iter()
            .position(|(s, _)| s == id)
            .ok_or_else(|| Error::UnknownPreparation(id.into()))
    }

    /// Born constraints for one state; variables are pattern masses.
    fn feasible_set(&self, state: usize, objective: Vec<f64>) -> Result<LinearProgram> {
        let (id, psi) = &self.states[state];
        let n = self.patterns.len();
        let mut lp = LinearProgram::maximize(objective);
        lp.constrain(format!("normalization of {id}"), vec![1.0; n], Relation::Eq, 1.0);
        for (mi, (mid, m)) in self.measurements.iter().enumerate() {
            let born = m.distribution(psi)?;
            for (k, p) in born.into_iter().enumerate() {
                let coeffs = self
                    .patterns
                    .iter()
                    .map(|pat| if pat[mi] == k { 1.0 } else { 0.0 })
                    .collect();
                lp.constrain(
                    format!("Born rule for {id} under {mid}={}", m.labels()[k]),
                    coeffs,
                    Relation::Eq,
                    p,
                );
            }
        }
        Ok(lp)
    }

    fn label(&self, pattern: &[usize]) -> String {
        if pattern.is_empty() {
            return String::from("trivial");
        }
        let parts: Vec<String> = self
            .measurements
            .iter()
            .zip(pattern)
            .map(|((id, m), &k)| format!("{id}:{}", m.labels()[k]))
            .collect();
        parts.join("|")
    }
}

/// Maximises the ontic overlap of `objective = (phi, psi)` over
/// outcome-deterministic models on `ontic_count` ontic states.
///
/// Models with more ontic states than patterns are padded with states no
/// preparation uses.
pub fn max_overlap_lp(
    states: &[(String, QuantumState)],
    measurements: &[(String, ProjectiveMeasurement)],
    ontic_count: usize,
    objective: (&str, &str),
) -> Result<OverlapOptimum> {
    let inst = Instance::new(states, measurements)?;
    let n = inst.patterns.len();
    if ontic_count < n {
        return Err(Error::TooFewOnticStates {
            needed: n,
            given: ontic_count,
        });
    }
    let phi = inst.state_index(objective.0)?;
    let psi = inst.state_index(objective.1)?;

    let mut reachable = Vec::new();
    let mut phi_mass = vec![0.0; n];
    for j in 0..n {
        let mut unit = vec![0.0; n];
        unit[j] = 1.0;
        let sol = inst.feasible_set(phi, unit)?.solve()?;
        if sol.x[j] > REACHABLE {
            reachable.push(j);
            for (acc, v) in phi_mass.iter_mut().zip(&sol.x) {
                *acc += v;
            }
        }
    }
    let total: f64 = phi_mass.iter().sum();
    for v in phi_mass.iter_mut() {
        *v /= total;
    }

    let mut in_support = vec![0.0; n];
    for &j in &reachable {
        in_support[j] = 1.0;
    }
    let mut masses = Vec::with_capacity(states.len());
    let mut value = 0.0;
    for s in 0..states.len() {
        if s == phi {
            masses.push(phi_mass.clone());
            continue;
        }
        let objective = if s == psi {
            in_support.clone()
        } else {
            vec![0.0; n]
        };
        let sol = inst.feasible_set(s, objective)?.solve_lexicographic()?;
        if s == psi {
            value = sol.value;
        }
        masses.push(sol.x);
    }
    if phi == psi {
        value = 1.0;
    }

    let mut labels: Vec<String> = inst.patterns.iter().map(|p| inst.label(p)).collect();
    labels.extend((0..ontic_count - n).map(|k| format!("pad{k}")));
    let mut witness = OntologicalModel::new(states[0].1.dim(), OnticSpace::new(labels)?);
    for ((id, state), mut mu) in states.iter().zip(masses) {
        let norm: f64 = mu.iter().sum();
        for v in mu.iter_mut() {
            *v /= norm;
        }
        mu.resize(ontic_count, 0.0);
        witness.add_preparation(id, state.clone(), EpistemicState::new(mu)?)?;
    }
    for (mi, (id, m)) in measurements.iter().enumerate() {
        let outcomes: Vec<usize> = (0..ontic_count)
            .map(|l| inst.patterns.get(l).map_or(0, |p| p[mi]))
            .collect();
        witness.add_measurement(id, m.clone(), ResponseFunction::deterministic(&outcomes, m.dim()))?;
    }
    let report = validate_with_tolerance(&witness, tolerance::BORN_DEFAULT);
    if !report.passed {
        return Err(Error::Inconsistent(format!(
            "witness model misses the Born rule by {:e}",
            report.max_residual()
        )));
    }

    Ok(OverlapOptimum {
        value,
        quantum_overlap: states[phi].1.overlap(&states[psi].1)?,
        reachable,
        patterns: inst.patterns,
        witness,
    })
}

/// Grid oracle for [`max_overlap_lp`]: enumerates every mass vector on a
/// grid of spacing `resolution` that meets each Born probability within one
/// grid step (exactly for zero probabilities).
///
/// Limited to at most three states and three measurements.
pub fn brute_force_overlap(
    states: &[(String, QuantumState)],
    measurements: &[(String, ProjectiveMeasurement)],
    objective: (&str, &str),
    resolution: f64,
) -> Result<f64> {
    if states.len() > 3 || measurements.len() > 3 {
        return Err(Error::InstanceTooLarge(format!(
            "{} states and {} measurements; the cap is 3 each",
            states.len(),
            measurements.len()
        )));
    }
    if !(1e-3..=1.0).contains(&resolution) {
        return Err(Error::InstanceTooLarge(format!(
            "resolution {resolution} outside [1e-3, 1]"
        )));
    }
    let inst = Instance::new(states, measurements)?;
    let phi = inst.state_index(objective.0)?;
    let psi = inst.state_index(objective.1)?;
    let units = (1.0 / resolution).round() as u32;
    let mut budget = BRUTE_FORCE_NODES;

    let mut reachable = vec![false; inst.patterns.len()];
    let mut any = false;
    GridWalk::new(&inst, phi, units)?.run(&mut budget, &mut |point| {
        any = true;
        for (r, &c) in reachable.iter_mut().zip(point) {
            *r |= c > 0;
        }
        true
    })?;
    if !any {
        return Err(Error::Infeasible(states[phi].0.clone()));
    }

    for s in 0..states.len() {
        if s == phi || s == psi {
            continue;
        }
        let mut found = false;
        GridWalk::new(&inst, s, units)?.run(&mut budget, &mut |_| {
            found = true;
            false
        })?;
        if !found {
            return Err(Error::Infeasible(states[s].0.clone()));
        }
    }

    let mut best: Option<u32> = None;
    GridWalk::new(&inst, psi, units)?.run(&mut budget, &mut |point| {
        let v: u32 = point
            .iter()
            .zip(&reachable)
            .filter(|(_, &r)| r)
            .map(|(&c, _)| c)
            .sum();
        best = Some(best.map_or(v, |b| b.max(v)));
        true
    })?;
    best.map(|b| b as f64 / units as f64)
        .ok_or_else(|| Error::Infeasible(states[psi].0.clone()))
}

/// Depth-first enumeration of grid mass vectors for one state.
struct GridWalk {
    units: u32,
    /// Groups (measurement outcome events) each pattern belongs to.
    groups_of: Vec<Vec<usize>>,
    /// Last pattern index in each group; the group sum is final there.
    last: Vec<usize>,
    target: Vec<f64>,
    slack: Vec<f64>,
}

impl GridWalk {
    fn new(inst: &Instance<'_>, state: usize, units: u32) -> Result<Self> {
        let psi = &inst.states[state].1;
        let step = 1.0 / units as f64;
        let mut target = Vec::new();
        let mut slack = Vec::new();
        let mut group_index = Vec::new();
        for (_, m) in inst.measurements {
            let base = target.len();
            for p in m.distribution(psi)? {
                target.push(p);
                slack.push(if p <= tolerance::ALGEBRAIC {
                    0.0
                } else {
                    step + tolerance::ALGEBRAIC
                });
            }
            group_index.push(base);
        }
        let groups_of: Vec<Vec<usize>> = inst
            .patterns
            .iter()
            .map(|pat| {
                pat.iter()
                    .enumerate()
                    .map(|(mi, &k)| group_index[mi] + k)
                    .collect()
            })
            .collect();
        let mut last = vec![0; target.len()];
        for (j, gs) in groups_of.iter().enumerate() {
            for &g in gs {
                last[g] = j;
            }
        }
        Ok(GridWalk {
            units,
            groups_of,
            last,
            target,
            slack,
        })
    }

    /// Calls `visit` on every admissible point until it returns `false`.
    fn run(&self, budget: &mut u64, visit: &mut dyn FnMut(&[u32]) -> bool) -> Result<()> {
        let mut point = vec![0u32; self.groups_of.len()];
        let mut sums = vec![0u32; self.target.len()];
        self.descend(0, self.units, &mut point, &mut sums, budget, visit)?;
        Ok(())
    }

    fn descend(
        &self,
        j: usize,
        remaining: u32,
        point: &mut [u32],
        sums: &mut [u32],
        budget: &mut u64,
        visit: &mut dyn FnMut(&[u32]) -> bool,
    ) -> Result<bool> {
        if *budget == 0 {
            return Err(Error::InstanceTooLarge(
                "grid enumeration exceeded its node budget".into(),
            ));
        }
        *budget -= 1;
        let step = 1.0 / self.units as f64;
        let last_pattern = j + 1 == point.len();
        let values = if last_pattern {
            remaining..=remaining
        } else {
            0..=remaining
        };
        for c in values {
            let mut ok = true;
            for &g in &self.groups_of[j] {
                let s = (sums[g] + c) as f64 * step;
                if s > self.target[g] + self.slack[g] {
                    ok = false;
                }
                if self.last[g] == j && s < self.target[g] - self.slack[g] {
                    ok = false;
                }
            }
            if !ok {
                // larger values only overshoot further once an upper bound fails
                if self.groups_of[j]
                    .iter()
                    .any(|&g| (sums[g] + c) as f64 * step > self.target[g] + self.slack[g])
                {
                    break;
                }
                continue;
            }
            point[j] = c;
            for &g in &self.groups_of[j] {
                sums[g] += c;
            }
            let keep_going = if last_pattern {
                visit(point)
            } else {
                self.descend(j + 1, remaining - c, point, sums, budget, visit)?
            };
            for &g in &self.groups_of[j] {
                sums[g] -= c;
            }
            point[j] = 0;
            if !keep_going {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::epistemicity::ontic_overlap;
    use alloc::string::ToString;

    fn states(ids: &[&str]) -> Vec<(String, QuantumState)> {
        ids.iter()
            .map(|&id| {
                let s = match id {
                    "0" => QuantumState::zero(),
                    "1" => QuantumState::one(),
                    "+" => QuantumState::plus(),
                    "-" => QuantumState::minus(),
                    "+i" => QuantumState::plus_i(),
                    _ => unreachable!(),
                };
                (id.to_string(), s)
            })
            .collect()
    }

    fn zx() -> Vec<(String, ProjectiveMeasurement)> {
        vec![
            ("Z".to_string(), ProjectiveMeasurement::pauli_z()),
            ("X".to_string(), ProjectiveMeasurement::pauli_x()),
        ]
    }

    #[test]
    fn patterns_enumerate_in_order() {
        let p = response_patterns(&zx()).unwrap();
        assert_eq!(p, vec![vec![0, 0], vec![0, 1], vec![1, 0], vec![1, 1]]);
        assert_eq!(response_patterns(&[]).unwrap(), vec![Vec::<usize>::new()]);
    }

    #[test]
    fn zero_plus_overlap_is_half() {
        let st = states(&["0", "1", "+"]);
        let r = max_overlap_lp(&st, &zx(), 4, ("0", "+")).unwrap();
        assert!((r.value - 0.5).abs() < 1e-9);
        assert!((ontic_overlap(&r.witness, "0", "+").unwrap() - r.value).abs() < 1e-9);
        let brute = brute_force_overlap(&st, &zx(), ("0", "+"), 1e-3).unwrap();
        assert!((brute - r.value).abs() <= 2e-3);
    }

    #[test]
    fn self_overlap_is_one() {
        let st = states(&["0"]);
        let z = &zx()[..1];
        let r = max_overlap_lp(&st, z, 2, ("0", "0")).unwrap();
        assert_eq!(r.value, 1.0);
    }

    #[test]
    fn orthogonal_pair_has_no_overlap() {
        let st = states(&["0", "1", "+"]);
        let r = max_overlap_lp(&st, &zx(), 4, ("0", "1")).unwrap();
        assert!(r.value.abs() < 1e-9);
    }

    #[test]
    fn padding_and_too_few_states() {
        let st = states(&["0", "+"]);
        let r = max_overlap_lp(&st, &zx(), 6, ("0", "+")).unwrap();
        assert_eq!(r.witness.space().len(), 6);
        assert_eq!(
            max_overlap_lp(&st, &zx(), 3, ("0", "+")).unwrap_err(),
            Error::TooFewOnticStates { needed: 4, given: 3 }
        );
    }

    #[test]
    fn brute_force_without_measurements() {
        let st = states(&["0", "+"]);
        assert_eq!(brute_force_overlap(&st, &[], ("0", "+"), 0.01).unwrap(), 1.0);
    }

    #[test]
    fn brute_force_caps() {
        let st = states(&["0", "1", "+", "-"]);
        assert!(matches!(
            brute_force_overlap(&st, &zx(), ("0", "+"), 0.1),
            Err(Error::InstanceTooLarge(_))
        ));
        let st = states(&["0", "+"]);
        assert!(brute_force_overlap(&st, &zx(), ("0", "+"), 1e-4).is_err());
    }
}
