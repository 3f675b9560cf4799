use alloc::string::String;

pub type Result<T> = core::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("unsupported dimension {0} (only 2 and 4 are supported)")]
    UnsupportedDimension(usize),
    #[error("state is not normalised (squared norm {0})")]
    NotNormalized(f64),
    #[error("measurement basis is not orthonormal: {0}")]
    NotOrthonormal(String),
    #[error("Bloch vector is not a unit vector (norm {0})")]
    NotUnitVector(f64),
    #[error("state is not of the form a|00> + b|11>")]
    NotSchmidtForm,
    #[error("unknown preparation `{0}`")]
    UnknownPreparation(String),
    #[error("unknown measurement `{0}`")]
    UnknownMeasurement(String),
    #[error("unknown outcome `{0}`")]
    UnknownOutcome(String),
    #[error("duplicate identifier `{0}`")]
    DuplicateId(String),
    #[error("empty {0}")]
    Empty(&'static str),
    #[error("orthogonal pair ({phi}, {psi}): degree of epistemicity is undefined")]
    OrthogonalPair { phi: String, psi: String },
    #[error(
        "near-orthogonal pair ({phi}, {psi}): quantum overlap {overlap:e} is below the refusal threshold"
    )]
    NearOrthogonalPair { phi: String, psi: String, overlap: f64 },
    #[error("reciprocity undecidable: no preparation matches a measurement basis vector")]
    ReciprocityUndecidable,
    #[error("consistency check failed: {0}")]
    Inconsistent(String),
    #[error("degenerate |alpha|^2 = {0}: must lie strictly inside (0, 1)")]
    DegenerateAlpha(f64),
    #[error("{what} = {value} is out of range")]
    OutOfRange { what: &'static str, value: f64 },
    #[error("setting `{0}` is not in the grid")]
    SettingAbsent(String),
    #[error("{0} does not measure first in the table's temporal order")]
    OutOfTemporalOrder(&'static str),
    #[error("grid too large for exhaustive enumeration: {cells} setting pairs exceeds the cap of {cap}")]
    GridTooLarge { cells: usize, cap: usize },
    #[error("no local reality for party {0}: parameter independence is violated toward it")]
    NoLocalReality(&'static str),
    #[error("infeasible constraint set: {0}")]
    Infeasible(String),
    #[error("linear program is unbounded")]
    Unbounded,
    #[error("instance too large for brute force: {0}")]
    InstanceTooLarge(String),
    #[error("ontic_count {given} is below the {needed} deterministic response patterns")]
    TooFewOnticStates { needed: usize, given: usize },
    #[error("malformed model: {0}")]
    Malformed(String),
}
