//! Exact enumeration of knot mosaics, period knot mosaics and toroidal knot
//! mosaics.
//!
//! A mosaic is a rectangular grid filled with the eleven unit tiles carrying
//! arcs, lines and crossings. This crate counts three families of them with
//! exact big-integer arithmetic:
//!
//! * **knot mosaics** — suitably connected grids with a blank boundary,
//! * **period knot mosaics** — suitably connected grids whose opposite
//!   boundaries match (fundamental patches of doubly periodic patterns),
//! * **toroidal knot mosaics** — equivalence classes of period mosaics under
//!   cyclic row/column rotations (mosaics drawn on a torus).
//!
//! The fast paths run on recursively built state matrices ([`matrix`]) and
//! trace formulas ([`count`]); composite torus sizes go through an orbit
//! counting engine. Everything is cross-checked against a fully independent
//! brute-force enumerator ([`oracle`]).

pub mod cache;
pub mod count;
pub mod matrix;
pub mod mosaic;
pub mod oracle;
pub mod tile;
pub mod word;

pub use count::{CountResult, FPeriodCensus, FPeriodKey, GrowthMetric, Method, Quantity};
pub use matrix::{BigMatrix, StateMatrixQuad};
pub use mosaic::{Mosaic, Shift};
pub use tile::{Side, Tile};
pub use word::BoundaryWord;

/// Resource guards for the matrix builders and the brute-force search.
///
/// The defaults keep every operation in the "finishes in minutes" range;
/// callers may raise them explicitly.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    /// Largest state-matrix dimension (`2^m`) that may be allocated.
    pub max_dim: usize,
    /// Largest row count for which the orbit-counting engine will enumerate
    /// columns.
    pub max_fix_rows: usize,
    /// Cell cap `m*n` for brute-force enumeration.
    pub max_cells: usize,
    /// Cell cap for brute-force enumeration under the knot boundary
    /// constraint, which prunes hard enough to allow larger grids.
    pub max_knot_cells: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_dim: 1 << 13,
            max_fix_rows: 10,
            max_cells: 9,
            max_knot_cells: 12,
        }
    }
}

impl Limits {
    /// Checks that a `2^m`-dimensional matrix is allowed.
    pub fn check_dim(&self, m: usize) -> Result<()> {
        if m >= usize::BITS as usize || (1usize << m) > self.max_dim {
            Err(Error::DimensionCap { m, cap: self.max_dim })
        } else {
            Ok(())
        }
    }
}

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("state matrix of dimension 2^{m} exceeds the cap of {cap}")]
    DimensionCap { m: usize, cap: usize },
    #[error("matrix dimensions differ: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },
    #[error("matrix dimension {dim} is not a power of two")]
    NotPowerOfTwo { dim: usize },
    #[error("rotation amount {k} out of range for word length {p}")]
    ShiftOutOfRange { k: usize, p: usize },
    #[error("mosaic dimensions must be positive")]
    ZeroDimension,
    #[error("{m} and {n} are not co-prime")]
    NotCoprime { m: usize, n: usize },
    #[error("{p} is not a prime")]
    NotPrime { p: usize },
    #[error("knot counting requires m, n >= 2 (got {m}x{n})")]
    KnotTooSmall { m: usize, n: usize },
    #[error("brute-force enumeration of {m}x{n} mosaics exceeds the configured cap")]
    EnumerationCap { m: usize, n: usize },
    #[error("column enumeration for {m} rows exceeds the configured cap of {cap}")]
    ColumnCap { m: usize, cap: usize },
    #[error("internal inconsistency: {0}")]
    Inconsistency(String),
    #[error("invalid mosaic text: {0}")]
    Parse(String),
    #[error("cache i/o: {0}")]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    /// True for errors raised by a resource guard rather than bad input.
    pub fn is_cap(&self) -> bool {
        matches!(
            self,
            Error::DimensionCap { .. } | Error::EnumerationCap { .. } | Error::ColumnCap { .. }
        )
    }
}

pub(crate) fn is_prime(n: usize) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}
