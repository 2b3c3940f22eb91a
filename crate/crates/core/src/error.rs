use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid norm: {0}")]
    InvalidNorm(String),

    #[error("cannot parse norm `{input}` at byte {pos}: {msg}")]
    NormSyntax {
        input: String,
        pos: usize,
        msg: String,
    },

    #[error("degenerate chord: endpoints {0} and {1} coincide modulo 2π")]
    DegenerateChord(f64, f64),

    #[error("invalid arc: {0}")]
    InvalidArc(String),

    #[error("child angle {alpha} outside (0, {half_width}) for parent width {width}")]
    AngleOutOfRange {
        alpha: f64,
        width: f64,
        half_width: f64,
    },

    #[error("no sign change of h on the bracket for parent width {width} (h(lo) = {h_lo}, h(hi) = {h_hi})")]
    BracketFailure { width: f64, h_lo: f64, h_hi: f64 },

    #[error("bisection converged with |h| = {residual} above tolerance {tol}")]
    ToleranceNotMet { residual: f64, tol: f64 },

    #[error("norm is not strictly convex (worst midpoint margin {0:e})")]
    NotStrictlyConvex(f64),

    #[error("invalid construction config: {0}")]
    InvalidConfig(String),

    #[error("strict mode violated at node {path}: h = {h}")]
    StrictModeViolated { path: String, h: f64 },

    #[error("level {level} out of range for depth {depth}")]
    LevelOutOfRange { level: usize, depth: usize },

    #[error("zero-width gap at node {0}")]
    DegenerateGap(String),

    #[error("invalid matching: {0}")]
    InvalidMatching(String),

    #[error("region labels conflict on face {face}: adjacent to both datum arcs and gaps")]
    LabelConflict { face: usize },

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("malformed construction dump: {0}")]
    Dump(String),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}
