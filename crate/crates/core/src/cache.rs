//! Disk cache for built state matrices.
//!
//! Files use the dump format of [`crate::matrix::BigMatrix`] and are keyed
//! by a kind string and the height `m`, e.g. `period-sum_m4.mat`.

use std::fs;
use std::io::{BufReader, BufWriter};
use std::path::{Path, PathBuf};

use crate::matrix::{build_knot_pair, build_quad, BigMatrix};
use crate::{Error, Limits, Result};

pub const KIND_PERIOD_SUM: &str = "period-sum";
pub const KIND_KNOT_SUM: &str = "knot-sum";

/// Loads and stores matrices under a cache directory.
#[derive(Debug, Clone)]
pub struct MatrixCache {
    dir: PathBuf,
}

impl MatrixCache {
    pub fn new(dir: impl Into<PathBuf>) -> MatrixCache {
        MatrixCache { dir: dir.into() }
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    pub fn path(&self, kind: &str, m: usize) -> PathBuf {
        self.dir.join(format!("{kind}_m{m}.mat"))
    }

    /// Reads a cached matrix, if present. A file of the wrong dimension is
    /// reported as an inconsistency rather than silently rebuilt.
    pub fn load(&self, kind: &str, m: usize) -> Result<Option<BigMatrix>> {
        let path = self.path(kind, m);
        if !path.exists() {
            return Ok(None);
        }
        let file = fs::File::open(&path)?;
        let matrix = BigMatrix::read_text(&mut BufReader::new(file))?;
        if matrix.dim() != 1 << m {
            return Err(Error::Inconsistency(format!(
                "cached matrix {} has dimension {}, expected {}",
                path.display(),
                matrix.dim(),
                1 << m
            )));
        }
        Ok(Some(matrix))
    }

    pub fn store(&self, kind: &str, m: usize, matrix: &BigMatrix) -> Result<()> {
        fs::create_dir_all(&self.dir)?;
        let path = self.path(kind, m);
        let mut out = BufWriter::new(fs::File::create(path)?);
        matrix.write_text(&mut out)?;
        Ok(())
    }

    /// `X_m^+ + O_m^+` from cache, building and storing it on a miss.
    pub fn period_sum(&self, m: usize, limits: &Limits) -> Result<BigMatrix> {
        if let Some(found) = self.load(KIND_PERIOD_SUM, m)? {
            return Ok(found);
        }
        let sum = build_quad(m, limits)?.period_sum();
        self.store(KIND_PERIOD_SUM, m, &sum)?;
        Ok(sum)
    }

    /// `X_k + O_k` of the knot recursion from cache, building on a miss.
    pub fn knot_sum(&self, k: usize, limits: &Limits) -> Result<BigMatrix> {
        if let Some(found) = self.load(KIND_KNOT_SUM, k)? {
            return Ok(found);
        }
        let (x, o) = build_knot_pair(k, limits)?;
        let sum = x.add(&o).expect("same dimension");
        self.store(KIND_KNOT_SUM, k, &sum)?;
        Ok(sum)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip_through_cache_dir() {
        let dir = std::env::temp_dir().join(format!("mosaic-cache-test-{}", std::process::id()));
        let _ = fs::remove_dir_all(&dir);
        let cache = MatrixCache::new(&dir);
        let limits = Limits::default();

        assert!(cache.load(KIND_PERIOD_SUM, 3).unwrap().is_none());
        let built = cache.period_sum(3, &limits).unwrap();
        assert!(cache.path(KIND_PERIOD_SUM, 3).exists());
        let reloaded = cache.period_sum(3, &limits).unwrap();
        assert_eq!(built, reloaded);

        let knot = cache.knot_sum(2, &limits).unwrap();
        assert_eq!(knot.dim(), 4);

        // a corrupted dimension header is rejected loudly
        fs::write(cache.path(KIND_PERIOD_SUM, 3), "2\n1 2\n3 4\n").unwrap();
        assert!(matches!(
            cache.load(KIND_PERIOD_SUM, 3),
            Err(Error::Inconsistency(_))
        ));

        fs::remove_dir_all(&dir).unwrap();
    }
}
