use thiserror::Error;

#[derive(Debug, Error)]
pub enum SwError {
    #[error("undersampled: {nodes} nodes cannot resolve band N={band} (need at least {needed})")]
    Undersampled { nodes: usize, band: usize, needed: usize },

    #[error("band mismatch: {left} vs {right}")]
    BandMismatch { left: usize, right: usize },

    #[error("mode sum does not converge: tail magnitude {tail:.3e}")]
    NonConvergentTrace { tail: f64 },

    #[error("band N={band} too small for |j|={j} (need N >= {needed})")]
    BandTooSmall { band: usize, j: f64, needed: usize },

    #[error("invalid kernel parameters: {0}")]
    InvalidParams(String),

    #[error("kernel refused: {0}")]
    KernelRefused(String),

    #[error("grid mismatch: {left} vs {right}")]
    GridMismatch { left: String, right: String },

    #[error("grid too coarse: {0}")]
    GridTooCoarse(String),

    #[error("point ({q}, {p}) outside grid extent {extent}")]
    OutOfExtent { q: f64, p: f64, extent: f64 },

    #[error("symbol mass {mass:.3e} on the grid boundary exceeds {limit:.0e}")]
    BoundaryMass { mass: f64, limit: f64 },

    #[error("translation {shift} leaves the grid margin")]
    MarginViolation { shift: f64 },

    #[error("not a cylinder point: {0}")]
    NotCylinder(String),

    #[error("orbit radius must be positive, got {0}")]
    BadRadius(f64),

    #[error("numerical rank ambiguous: singular value {value:.3e} near cut {cut:.1e}")]
    RankAmbiguous { value: f64, cut: f64 },

    #[error("config: line {line}: {msg}")]
    Config { line: usize, msg: String },

    #[error("schema: {0}")]
    Schema(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, SwError>;
