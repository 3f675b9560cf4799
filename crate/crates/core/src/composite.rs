//! Joint ontic states of two qubits as deterministic assignment tables over
//! a grid of local settings.
//!
//! A table assigns an outcome pair `(a, b)` to every setting pair `(x, y)`.
//! Parameter independence toward Alice holds when `a` depends on `x` only,
//! toward Bob when `b` depends on `y` only. The four ontic types follow from
//! which directions fail:
//!
//! | type        | Alice depends on Bob's setting | Bob depends on Alice's setting |
//! |-------------|--------------------------------|--------------------------------|
//! | `Type1`     | no                             | no                             |
//! | `Type2I`    | yes                            | no                             |
//! | `Type2II`   | no                             | yes                            |
//! | `Type2III`  | yes                            | yes                            |
//!
//! Local measurements turn a table into a [`PostMeasurementConstraint`]: the
//! post-measurement joint state is not determined, only the set of tables it
//! may be.

use alloc::collections::BTreeSet;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::ops::Range;

use rand::Rng;

use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Party {
    Alice,
    Bob,
}

impl Party {
    pub fn name(&self) -> &'static str {
        match self {
            Party::Alice => "A",
            Party::Bob => "B",
        }
    }

    pub fn other(&self) -> Party {
        match self {
            Party::Alice => Party::Bob,
            Party::Bob => Party::Alice,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum TemporalOrder {
    AliceFirst,
    BobFirst,
}

impl TemporalOrder {
    pub fn first(&self) -> Party {
        match self {
            TemporalOrder::AliceFirst => Party::Alice,
            TemporalOrder::BobFirst => Party::Bob,
        }
    }

    pub fn as_str(&self) -> &'static str {
        match self {
            TemporalOrder::AliceFirst => "ALICE_FIRST",
            TemporalOrder::BobFirst => "BOB_FIRST",
        }
    }
}

/// A +/-1 measurement outcome.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Outcome {
    Plus,
    Minus,
}

impl Outcome {
    pub fn value(&self) -> i8 {
        match self {
            Outcome::Plus => 1,
            Outcome::Minus => -1,
        }
    }

    pub fn from_value(v: i64) -> Option<Outcome> {
        match v {
            1 => Some(Outcome::Plus),
            -1 => Some(Outcome::Minus),
            _ => None,
        }
    }

    fn from_bit(bit: u64) -> Outcome {
        if bit == 0 {
            Outcome::Plus
        } else {
            Outcome::Minus
        }
    }

    pub fn flipped(&self) -> Outcome {
        match self {
            Outcome::Plus => Outcome::Minus,
            Outcome::Minus => Outcome::Plus,
        }
    }
}

impl fmt::Display for Outcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:+}", self.value())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SettingGrid {
    alice: Vec<String>,
    bob: Vec<String>,
}

impl SettingGrid {
    pub fn new(alice: Vec<String>, bob: Vec<String>) -> Result<Self> {
        for side in [&alice, &bob] {
            if side.is_empty() {
                return Err(Error::Empty("setting list"));
            }
            for (i, s) in side.iter().enumerate() {
                if side[..i].contains(s) {
                    return Err(Error::DuplicateId(s.clone()));
                }
            }
        }
        Ok(SettingGrid { alice, bob })
    }

    /// The same settings on both sides.
    pub fn square(settings: &[&str]) -> Result<Self> {
        let s: Vec<String> = settings.iter().map(|s| s.to_string()).collect();
        Self::new(s.clone(), s)
    }

    pub fn alice(&self) -> &[String] {
        &self.alice
    }

    pub fn bob(&self) -> &[String] {
        &self.bob
    }

    pub fn settings(&self, party: Party) -> &[String] {
        match party {
            Party::Alice => &self.alice,
            Party::Bob => &self.bob,
        }
    }

    pub fn cells(&self) -> usize {
        self.alice.len() * self.bob.len()
    }

    pub fn index(&self, party: Party, setting: &str) -> Result<usize> {
        self.settings(party)
            .iter()
            .position(|s| s == setting)
            .ok_or_else(|| Error::SettingAbsent(setting.to_string()))
    }

    fn cell(&self, x: usize, y: usize) -> usize {
        x * self.bob.len() + y
    }
}

/// A deterministic joint assignment `(x, y) -> (a, b)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct AssignmentTable {
    grid: SettingGrid,
    entries: Vec<(Outcome, Outcome)>,
    order: TemporalOrder,
}

impl AssignmentTable {
    /// `entries` in row-major order: Alice's setting outer, Bob's inner.
    pub fn new(grid: SettingGrid, entries: Vec<(Outcome, Outcome)>, order: TemporalOrder) -> Result<Self> {
        if entries.len() != grid.cells() {
            return Err(Error::DimensionMismatch {
                expected: grid.cells(),
                found: entries.len(),
            });
        }
        Ok(AssignmentTable { grid, entries, order })
    }

    /// Builds a table from `(x, y, a, b)` rows; every cell must appear once.
    pub fn from_rows(grid: SettingGrid, rows: &[(&str, &str, i8, i8)], order: TemporalOrder) -> Result<Self> {
        let mut entries: Vec<Option<(Outcome, Outcome)>> = vec![None; grid.cells()];
        for &(x, y, a, b) in rows {
            let cell = grid.cell(grid.index(Party::Alice, x)?, grid.index(Party::Bob, y)?);
            let pair = (
                Outcome::from_value(a.into()).ok_or(Error::OutOfRange {
                    what: "outcome",
                    value: a.into(),
                })?,
                Outcome::from_value(b.into()).ok_or(Error::OutOfRange {
                    what: "outcome",
                    value: b.into(),
                })?,
            );
            if entries[cell].replace(pair).is_some() {
                return Err(Error::DuplicateId(alloc::format!("{x},{y}")));
            }
        }
        let entries = entries
            .into_iter()
            .collect::<Option<Vec<_>>>()
            .ok_or(Error::Malformed(
                "assignment table has unfilled cells".to_string(),
            ))?;
        Self::new(grid, entries, order)
    }

    /// Table number `index` in the enumeration of all `4^cells` tables: bit
    /// `2c` is Alice's outcome in cell `c`, bit `2c+1` Bob's (0 means +1).
    pub fn from_index(grid: SettingGrid, index: u64, order: TemporalOrder) -> Self {
        let entries = (0..grid.cells())
            .map(|c| {
                (
                    Outcome::from_bit((index >> (2 * c)) & 1),
                    Outcome::from_bit((index >> (2 * c + 1)) & 1),
                )
            })
            .collect();
        AssignmentTable { grid, entries, order }
    }

    pub fn grid(&self) -> &SettingGrid {
        &self.grid
    }

    pub fn order(&self) -> TemporalOrder {
        self.order
    }

    pub fn entries(&self) -> &[(Outcome, Outcome)] {
        &self.entries
    }

    pub fn get(&self, x: usize, y: usize) -> (Outcome, Outcome) {
        self.entries[self.grid.cell(x, y)]
    }

    pub fn lookup(&self, x: &str, y: &str) -> Result<(Outcome, Outcome)> {
        let xi = self.grid.index(Party::Alice, x)?;
        let yi = self.grid.index(Party::Bob, y)?;
        Ok(self.get(xi, yi))
    }

    fn outcome(&self, party: Party, own: usize, remote: usize) -> Outcome {
        match party {
            Party::Alice => self.get(own, remote).0,
            Party::Bob => self.get(remote, own).1,
        }
    }
}

/// Evidence that `party`'s outcome for `setting` changes with the remote
/// setting: it differs between `remote.0` and `remote.1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Witness {
    pub party: Party,
    pub setting: String,
    pub remote: (String, String),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParameterIndependence {
    /// Alice's outcomes do not depend on Bob's setting.
    pub pi_a_given_b: bool,
    /// Bob's outcomes do not depend on Alice's setting.
    pub pi_b_given_a: bool,
    pub witnesses: Vec<Witness>,
}

fn party_witnesses(table: &AssignmentTable, party: Party) -> Vec<Witness> {
    let grid = &table.grid;
    let own = grid.settings(party);
    let remote = grid.settings(party.other());
    let mut out = Vec::new();
    for (i, s) in own.iter().enumerate() {
        let first = table.outcome(party, i, 0);
        if let Some(j) = (1..remote.len()).find(|&j| table.outcome(party, i, j) != first) {
            out.push(Witness {
                party,
                setting: s.clone(),
                remote: (remote[0].clone(), remote[j].clone()),
            });
        }
    }
    out
}

/// Parameter independence in both directions, with the first violating
/// remote-setting pair (in grid order) for every dependent setting.
pub fn check_parameter_independence(table: &AssignmentTable) -> ParameterIndependence {
    let mut witnesses = party_witnesses(table, Party::Alice);
    let pi_a_given_b = witnesses.is_empty();
    let bob = party_witnesses(table, Party::Bob);
    let pi_b_given_a = bob.is_empty();
    witnesses.extend(bob);
    ParameterIndependence {
        pi_a_given_b,
        pi_b_given_a,
        witnesses,
    }
}

/// Outcome independence: `p(a | b, x, y) = p(a | x, y)` and symmetrically.
///
/// Every cell of a deterministic table is a point distribution, for which
/// conditioning on the remote outcome changes nothing, so this holds for
/// every table; it is evaluated cell by cell on the joint distribution so
/// that stochastic tables can reuse it.
pub fn check_outcome_independence(table: &AssignmentTable) -> bool {
    table.entries.iter().all(|&(a, b)| {
        let mut joint = [[0.0f64; 2]; 2];
        joint[(a == Outcome::Minus) as usize][(b == Outcome::Minus) as usize] = 1.0;
        (0..2).all(|i| {
            (0..2).all(|j| {
                let pa: f64 = joint[i].iter().sum();
                let pb: f64 = joint[0][j] + joint[1][j];
                pb == 0.0 || joint[i][j] / pb == pa
            })
        })
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum OnticType {
    Type1,
    Type2I,
    Type2II,
    Type2III,
}

impl OnticType {
    /// Type from the two dependence directions.
    pub fn from_dependence(alice_depends_on_bob: bool, bob_depends_on_alice: bool) -> OnticType {
        match (alice_depends_on_bob, bob_depends_on_alice) {
            (false, false) => OnticType::Type1,
            (true, false) => OnticType::Type2I,
            (false, true) => OnticType::Type2II,
            (true, true) => OnticType::Type2III,
        }
    }

    pub fn as_str(&self) -> &'static str {
        match self {
            OnticType::Type1 => "TYPE_1",
            OnticType::Type2I => "TYPE_2I",
            OnticType::Type2II => "TYPE_2II",
            OnticType::Type2III => "TYPE_2III",
        }
    }

    pub fn is_local(&self) -> bool {
        *self == OnticType::Type1
    }
}

impl fmt::Display for OnticType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Classification {
    pub tag: OnticType,
    pub witnesses: Vec<Witness>,
}

pub fn classify(table: &AssignmentTable) -> Classification {
    let pi = check_parameter_independence(table);
    Classification {
        tag: OnticType::from_dependence(!pi.pi_a_given_b, !pi.pi_b_given_a),
        witnesses: pi.witnesses,
    }
}

/// The party's local assignment `setting -> outcome`; fails when that
/// party's outcomes depend on the remote setting.
pub fn marginal_table(table: &AssignmentTable, party: Party) -> Result<Vec<(String, Outcome)>> {
    if !party_witnesses(table, party).is_empty() {
        return Err(Error::NoLocalReality(party.name()));
    }
    Ok(table
        .grid
        .settings(party)
        .iter()
        .enumerate()
        .map(|(i, s)| (s.clone(), table.outcome(party, i, 0)))
        .collect())
}

/// Whether a party's outcomes can depend on the remote setting across the
/// admissible tables of a constraint.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Dependence {
    Excluded,
    Possible,
    Forced,
}

/// Set of admissible joint assignments after one or more local measurements.
///
/// Cells hold a fixed outcome or `None` (unconstrained). A party marked local
/// must answer each of its settings the same way for every remote setting.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PostMeasurementConstraint {
    grid: SettingGrid,
    order: TemporalOrder,
    alice: Vec<Option<Outcome>>,
    bob: Vec<Option<Outcome>>,
    alice_local: bool,
    bob_local: bool,
    history: Vec<(Party, String)>,
}

impl PostMeasurementConstraint {
    /// The single-table constraint: every cell fixed, locality flags set from
    /// the table's parameter independence.
    pub fn from_table(table: &AssignmentTable) -> Self {
        let pi = check_parameter_independence(table);
        PostMeasurementConstraint {
            grid: table.grid.clone(),
            order: table.order,
            alice: table.entries.iter().map(|e| Some(e.0)).collect(),
            bob: table.entries.iter().map(|e| Some(e.1)).collect(),
            alice_local: pi.pi_a_given_b,
            bob_local: pi.pi_b_given_a,
            history: Vec::new(),
        }
    }

    pub fn grid(&self) -> &SettingGrid {
        &self.grid
    }

    pub fn history(&self) -> &[(Party, String)] {
        &self.history
    }

    fn cells(&self, party: Party) -> &[Option<Outcome>] {
        match party {
            Party::Alice => &self.alice,
            Party::Bob => &self.bob,
        }
    }

    fn is_local(&self, party: Party) -> bool {
        match party {
            Party::Alice => self.alice_local,
            Party::Bob => self.bob_local,
        }
    }

    /// Cell index of `party`'s entry for its setting `own` and the remote `remote`.
    fn cell(&self, party: Party, own: usize, remote: usize) -> usize {
        match party {
            Party::Alice => self.grid.cell(own, remote),
            Party::Bob => self.grid.cell(remote, own),
        }
    }

    fn row(&self, party: Party, own: usize) -> impl Iterator<Item = Option<Outcome>> + '_ {
        let cells = self.cells(party);
        (0..self.grid.settings(party.other()).len()).map(move |r| cells[self.cell(party, own, r)])
    }

    /// Fixed entries that disagree with a locality requirement leave no
    /// admissible table.
    pub fn is_consistent(&self) -> bool {
        [Party::Alice, Party::Bob].into_iter().all(|p| {
            !self.is_local(p)
                || (0..self.grid.settings(p).len()).all(|i| {
                    let fixed: BTreeSet<Outcome> = self.row(p, i).flatten().collect();
                    fixed.len() <= 1
                })
        })
    }

    /// How `party`'s outcomes may depend on the remote setting.
    pub fn dependence(&self, party: Party) -> Dependence {
        if self.is_local(party) {
            return Dependence::Excluded;
        }
        let remote = self.grid.settings(party.other()).len();
        let mut possible = false;
        for i in 0..self.grid.settings(party).len() {
            let row: Vec<Option<Outcome>> = self.row(party, i).collect();
            let fixed: BTreeSet<Outcome> = row.iter().flatten().copied().collect();
            if fixed.len() > 1 {
                return Dependence::Forced;
            }
            if remote >= 2 && row.iter().any(Option::is_none) {
                possible = true;
            }
        }
        if possible {
            Dependence::Possible
        } else {
            Dependence::Excluded
        }
    }

    /// Every ontic type some admissible table has.
    pub fn possible_types(&self) -> BTreeSet<OnticType> {
        let options = |d: Dependence| match d {
            Dependence::Excluded => vec![false],
            Dependence::Possible => vec![false, true],
            Dependence::Forced => vec![true],
        };
        let mut out = BTreeSet::new();
        if !self.is_consistent() {
            return out;
        }
        for a in options(self.dependence(Party::Alice)) {
            for b in options(self.dependence(Party::Bob)) {
                out.insert(OnticType::from_dependence(a, b));
            }
        }
        out
    }

    /// The least local type the constraints admit: a direction counts as
    /// parameter-dependent unless the constraints exclude it.
    pub fn ontic_type(&self) -> OnticType {
        OnticType::from_dependence(
            self.dependence(Party::Alice) != Dependence::Excluded,
            self.dependence(Party::Bob) != Dependence::Excluded,
        )
    }

    /// The party's local assignment when it is local; `None` entries are
    /// settings whose value is not pinned down.
    pub fn locals(&self, party: Party) -> Option<Vec<(String, Option<Outcome>)>> {
        if !self.is_local(party) {
            return None;
        }
        Some(
            self.grid
                .settings(party)
                .iter()
                .enumerate()
                .map(|(i, s)| (s.clone(), self.row(party, i).flatten().next()))
                .collect(),
        )
    }

    /// Whether `table` is one of the admissible post-measurement tables.
    pub fn admits(&self, table: &AssignmentTable) -> bool {
        if table.grid != self.grid {
            return false;
        }
        let matches = |fixed: &[Option<Outcome>], pick: fn(&(Outcome, Outcome)) -> Outcome| {
            fixed
                .iter()
                .zip(&table.entries)
                .all(|(f, e)| f.is_none_or(|v| v == pick(e)))
        };
        if !matches(&self.alice, |e| e.0) || !matches(&self.bob, |e| e.1) {
            return false;
        }
        let pi = check_parameter_independence(table);
        (!self.alice_local || pi.pi_a_given_b) && (!self.bob_local || pi.pi_b_given_a)
    }

    /// Draws one admissible table; free values are uniform.
    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> Option<AssignmentTable> {
        if !self.is_consistent() {
            return None;
        }
        let mut fill = |party: Party| -> Vec<Outcome> {
            let mut out = vec![Outcome::Plus; self.grid.cells()];
            let n_own = self.grid.settings(party).len();
            let n_remote = self.grid.settings(party.other()).len();
            for i in 0..n_own {
                let shared = self
                    .row(party, i)
                    .flatten()
                    .next()
                    .unwrap_or(if rng.gen::<bool>() {
                        Outcome::Plus
                    } else {
                        Outcome::Minus
                    });
                for r in 0..n_remote {
                    let c = self.cell(party, i, r);
                    out[c] = match self.cells(party)[c] {
                        Some(v) => v,
                        None if self.is_local(party) => shared,
                        None => {
                            if rng.gen::<bool>() {
                                Outcome::Plus
                            } else {
                                Outcome::Minus
                            }
                        }
                    };
                }
            }
            out
        };
        let a = fill(Party::Alice);
        let b = fill(Party::Bob);
        Some(AssignmentTable {
            grid: self.grid.clone(),
            entries: a.into_iter().zip(b).collect(),
            order: self.order,
        })
    }

    /// Applies a local measurement of `setting` by `party`.
    ///
    /// - The measuring party keeps its recorded outcomes for `setting`; its
    ///   other entries become unconstrained.
    /// - The remote party's observables take, for every setting of the
    ///   measuring party, the values they had alongside `setting`: the remote
    ///   party becomes local.
    /// - A dependence direction excluded before the measurement stays
    ///   excluded; in particular local states remain local.
    pub fn evolve(&self, party: Party, setting: &str) -> Result<PostMeasurementConstraint> {
        let chosen = self.grid.index(party, setting)?;
        let remote = party.other();
        let n_own = self.grid.settings(party).len();
        let n_remote = self.grid.settings(remote).len();

        let mut own_cells = vec![None; self.grid.cells()];
        let mut remote_cells = vec![None; self.grid.cells()];
        for r in 0..n_remote {
            let c = self.cell(party, chosen, r);
            own_cells[c] = self.cells(party)[c];
        }
        for r in 0..n_remote {
            let value = self.cells(remote)[self.cell(party, chosen, r)];
            for i in 0..n_own {
                remote_cells[self.cell(party, i, r)] = value;
            }
        }
        let own_local = self.dependence(party) == Dependence::Excluded;

        let mut history = self.history.clone();
        history.push((party, setting.to_string()));
        let (alice, bob, alice_local, bob_local) = match party {
            Party::Alice => (own_cells, remote_cells, own_local, true),
            Party::Bob => (remote_cells, own_cells, true, own_local),
        };
        Ok(PostMeasurementConstraint {
            grid: self.grid.clone(),
            order: self.order,
            alice,
            bob,
            alice_local,
            bob_local,
            history,
        })
    }

    /// Every admissible table, by brute force over `4^cells` candidates.
    pub fn enumerate_admissible(&self) -> Result<Vec<AssignmentTable>> {
        check_enumeration_size(&self.grid)?;
        let total = 1u64 << (2 * self.grid.cells());
        Ok((0..total)
            .map(|i| AssignmentTable::from_index(self.grid.clone(), i, self.order))
            .filter(|t| self.admits(t))
            .collect())
    }
}

/// Evolves a single table under a local measurement by the party that
/// measures first in the table's temporal order.
pub fn evolve_local_measurement(
    table: &AssignmentTable,
    party: Party,
    setting: &str,
) -> Result<PostMeasurementConstraint> {
    if table.order.first() != party {
        return Err(Error::OutOfTemporalOrder(party.name()));
    }
    PostMeasurementConstraint::from_table(table).evolve(party, setting)
}

/// Most cells (setting pairs) accepted for exhaustive enumeration.
pub const MAX_ENUMERATION_CELLS: usize = 9;

fn check_enumeration_size(grid: &SettingGrid) -> Result<()> {
    if grid.cells() > MAX_ENUMERATION_CELLS {
        return Err(Error::GridTooLarge {
            cells: grid.cells(),
            cap: MAX_ENUMERATION_CELLS,
        });
    }
    Ok(())
}

/// The product-state row the enumeration is anchored to.
pub const ANCHOR_SETTING: &str = "sz";

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Counterexample {
    pub index: u64,
    pub table: AssignmentTable,
    pub final_type: OnticType,
}

/// Outcome of the exhaustive check over a slice of the table enumeration.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Proposition1Tally {
    /// Tables enumerated (all `4^cells`, or the slice's share).
    pub enumerated: u64,
    /// Tables with `(+1, +1)` at `(sz, sz)`.
    pub consistent: u64,
    /// Initial-type histogram of the consistent tables, indexed like
    /// `[Type1, Type2I, Type2II, Type2III]`.
    pub initial_types: [u64; 4],
    /// Type histogram after Alice's `sz`.
    pub intermediate_types: [u64; 4],
    pub counterexamples: Vec<Counterexample>,
}

impl Proposition1Tally {
    pub fn merge(mut self, other: Proposition1Tally) -> Proposition1Tally {
        self.enumerated += other.enumerated;
        self.consistent += other.consistent;
        for i in 0..4 {
            self.initial_types[i] += other.initial_types[i];
            self.intermediate_types[i] += other.intermediate_types[i];
        }
        self.counterexamples.extend(other.counterexamples);
        self.counterexamples.sort_by_key(|c| c.index);
        self
    }

    pub fn all_local(&self) -> bool {
        self.counterexamples.is_empty()
    }
}

fn type_slot(t: OnticType) -> usize {
    match t {
        OnticType::Type1 => 0,
        OnticType::Type2I => 1,
        OnticType::Type2II => 2,
        OnticType::Type2III => 3,
    }
}

/// Total tables in the enumeration for `grid`, after checking the cap.
pub fn proposition1_table_count(grid: &SettingGrid) -> Result<u64> {
    check_enumeration_size(grid)?;
    grid.index(Party::Alice, ANCHOR_SETTING)?;
    grid.index(Party::Bob, ANCHOR_SETTING)?;
    Ok(1u64 << (2 * grid.cells()))
}

/// Runs the check on tables `range` of the enumeration. Slices can be
/// processed independently and combined with [`Proposition1Tally::merge`].
pub fn proposition1_range(grid: &SettingGrid, range: Range<u64>) -> Result<Proposition1Tally> {
    let total = proposition1_table_count(grid)?;
    let range = range.start.min(total)..range.end.min(total);
    let zx = grid.index(Party::Alice, ANCHOR_SETTING)?;
    let zy = grid.index(Party::Bob, ANCHOR_SETTING)?;
    let mut tally = Proposition1Tally::default();
    for index in range {
        tally.enumerated += 1;
        let table = AssignmentTable::from_index(grid.clone(), index, TemporalOrder::AliceFirst);
        if table.get(zx, zy) != (Outcome::Plus, Outcome::Plus) {
            continue;
        }
        tally.consistent += 1;
        tally.initial_types[type_slot(classify(&table).tag)] += 1;
        let after_alice = evolve_local_measurement(&table, Party::Alice, ANCHOR_SETTING)?;
        tally.intermediate_types[type_slot(after_alice.ontic_type())] += 1;
        let after_bob = after_alice.evolve(Party::Bob, ANCHOR_SETTING)?;
        let final_type = after_bob.ontic_type();
        if final_type != OnticType::Type1 {
            tally.counterexamples.push(Counterexample {
                index,
                table,
                final_type,
            });
        }
    }
    Ok(tally)
}

/// Exhaustive check that every deterministic joint assignment compatible
/// with the product preparation `|0>|0>` ends up local after Alice and then
/// Bob measure `sz`.
pub fn proposition1_check(grid: &SettingGrid) -> Result<Proposition1Tally> {
    let total = proposition1_table_count(grid)?;
    proposition1_range(grid, 0..total)
}
