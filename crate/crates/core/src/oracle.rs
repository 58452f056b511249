//! Brute-force ground truth: depth-first enumeration of mosaics by direct
//! tile placement.
//!
//! Everything here is deliberately independent of the state-matrix
//! machinery; the only shared code is the tile table and the mosaic
//! predicates. The counting formulas are validated against these
//! enumerations at small sizes.

use std::collections::{BTreeMap, BTreeSet, HashSet};

use num_bigint::BigUint;

use crate::mosaic::{Mosaic, Shift};
use crate::tile::Tile;
use crate::{is_prime, Error, Limits, Result};

/// Which family of mosaics to enumerate.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Predicate {
    /// Suitably connected, blank boundary.
    Knot,
    /// Suitably connected, opposite boundaries matching.
    Period,
    /// Suitably connected only.
    SuitablyConnected,
}

fn check_cap(rows: usize, cols: usize, predicate: Predicate, limits: &Limits) -> Result<()> {
    if rows == 0 || cols == 0 {
        return Err(Error::ZeroDimension);
    }
    let cells = rows * cols;
    let allowed = match predicate {
        Predicate::Knot => cells <= limits.max_knot_cells,
        // the wrap constraints prune two-row searches hard enough for a
        // couple of sizes past the cell cap
        Predicate::Period => {
            cells <= limits.max_cells || (rows.min(cols) == 2 && rows.max(cols) <= 5)
        }
        Predicate::SuitablyConnected => cells <= limits.max_cells,
    };
    if allowed {
        Ok(())
    } else {
        Err(Error::EnumerationCap { m: rows, n: cols })
    }
}

/// Streams every qualifying mosaic exactly once, in row-major
/// lexicographic order of tile ids.
pub fn enumerate(
    rows: usize,
    cols: usize,
    predicate: Predicate,
    limits: &Limits,
) -> Result<Enumerator> {
    check_cap(rows, cols, predicate, limits)?;
    Ok(Enumerator::new(rows, cols, predicate, TRIAL_ORDER_ID))
}

const TRIAL_ORDER_ID: [u8; 11] = [0, 1, 2, 3, 4, 5, 6, 7, 8, 9, 10];

/// Depth-first search over tile placements in row-major order.
///
/// A tile is rejected the moment it disagrees with its left or upper
/// neighbor, violates the blank-boundary constraint (knot search), or
/// mismatches the opposite end of a completed row or column (period
/// search).
pub struct Enumerator {
    rows: usize,
    cols: usize,
    predicate: Predicate,
    order: [u8; 11],
    grid: Vec<Tile>,
    /// Position in `order` of the next candidate to try at each depth.
    cursor: Vec<u8>,
    depth: usize,
    exhausted: bool,
}

impl Enumerator {
    fn new(rows: usize, cols: usize, predicate: Predicate, order: [u8; 11]) -> Enumerator {
        let cells = rows * cols;
        Enumerator {
            rows,
            cols,
            predicate,
            order,
            grid: vec![Tile::BLANK; cells],
            cursor: vec![0; cells],
            depth: 0,
            exhausted: false,
        }
    }

    /// Same search with a different tile trial order; the set of emitted
    /// mosaics is identical, which the tests use as an exhaustiveness check.
    #[cfg(test)]
    pub(crate) fn with_order(
        rows: usize,
        cols: usize,
        predicate: Predicate,
        order: [u8; 11],
    ) -> Enumerator {
        Enumerator::new(rows, cols, predicate, order)
    }

    fn admissible(&self, i: usize, j: usize, t: Tile) -> bool {
        let at = |i: usize, j: usize| self.grid[i * self.cols + j];
        if j > 0 && at(i, j - 1).cp_right() != t.cp_left() {
            return false;
        }
        if i > 0 && at(i - 1, j).cp_bottom() != t.cp_top() {
            return false;
        }
        match self.predicate {
            Predicate::SuitablyConnected => true,
            Predicate::Knot => {
                !(i == 0 && t.cp_top())
                    && !(i == self.rows - 1 && t.cp_bottom())
                    && !(j == 0 && t.cp_left())
                    && !(j == self.cols - 1 && t.cp_right())
            }
            Predicate::Period => {
                if j == self.cols - 1 {
                    let first = if self.cols == 1 { t } else { at(i, 0) };
                    if first.cp_left() != t.cp_right() {
                        return false;
                    }
                }
                if i == self.rows - 1 {
                    let first = if self.rows == 1 { t } else { at(0, j) };
                    if first.cp_top() != t.cp_bottom() {
                        return false;
                    }
                }
                true
            }
        }
    }
}

impl Iterator for Enumerator {
    type Item = Mosaic;

    fn next(&mut self) -> Option<Mosaic> {
        if self.exhausted {
            return None;
        }
        let cells = self.rows * self.cols;
        loop {
            if self.depth == cells {
                let found = Mosaic::new(self.rows, self.cols, self.grid.clone())
                    .expect("grid is complete");
                // resume at the last cell on the next call
                self.depth -= 1;
                return Some(found);
            }
            let i = self.depth / self.cols;
            let j = self.depth % self.cols;
            let mut descended = false;
            while (self.cursor[self.depth] as usize) < self.order.len() {
                let t = Tile::new(self.order[self.cursor[self.depth] as usize]).expect("valid id");
                self.cursor[self.depth] += 1;
                if self.admissible(i, j, t) {
                    self.grid[self.depth] = t;
                    self.depth += 1;
                    if self.depth < cells {
                        self.cursor[self.depth] = 0;
                    }
                    descended = true;
                    break;
                }
            }
            if !descended {
                if self.depth == 0 {
                    self.exhausted = true;
                    return None;
                }
                self.depth -= 1;
            }
        }
    }
}

/// Per-class counts of the prime-square subdivision: period `(p,p)`-mosaics
/// that are not constant and not of row period 1, grouped by the smallest
/// `k` with `rotate(M, (k, 1)) = M` when one exists.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ShiftClassCensus {
    /// Index `k`: mosaics whose smallest such shift is `(k, 1)`.
    pub row_shift: Vec<BigUint>,
    /// Mosaics fixed by no `(k, 1)` rotation.
    pub free: BigUint,
}

/// Everything the brute-force search can say about one grid size.
#[derive(Debug, Clone)]
pub struct EnumerationReport {
    pub rows: usize,
    pub cols: usize,
    pub knot: BigUint,
    pub period: BigUint,
    /// Number of toroidal classes, by canonical-form deduplication.
    pub toroidal: BigUint,
    /// Period mosaics grouped by fundamental period.
    pub fperiod: BTreeMap<(usize, usize), BigUint>,
    /// Period mosaics fixed by each rotation.
    pub fixed: BTreeMap<Shift, BigUint>,
    /// Present when the grid is `(p, p)` for a prime `p`.
    pub shift_classes: Option<ShiftClassCensus>,
}

/// Runs the full brute-force census for one grid size.
pub fn report(rows: usize, cols: usize, limits: &Limits) -> Result<EnumerationReport> {
    let mut period = 0u64;
    let mut canon: HashSet<Mosaic> = HashSet::new();
    let mut fperiod: BTreeMap<(usize, usize), u64> = BTreeMap::new();
    let mut fixed: BTreeMap<Shift, u64> = BTreeMap::new();
    for x in 0..rows {
        for y in 0..cols {
            fixed.insert(Shift::new(x, y), 0);
        }
    }
    let prime_square = rows == cols && is_prime(rows);
    let mut row_shift = vec![0u64; rows];
    let mut free = 0u64;

    for m in enumerate(rows, cols, Predicate::Period, limits)? {
        period += 1;
        let fp = m.fundamental_period();
        *fperiod.entry(fp).or_default() += 1;
        for (shift, count) in fixed.iter_mut() {
            if m.is_fixed_by(*shift) {
                *count += 1;
            }
        }
        canon.insert(m.canonical_form());
        if prime_square && fp != (1, 1) && !(fp.0 == 1 && fp.1 == rows) {
            match (0..rows).find(|&k| m.is_fixed_by(Shift::new(k, 1))) {
                Some(k) => row_shift[k] += 1,
                None => free += 1,
            }
        }
    }

    let knot = if rows * cols <= limits.max_knot_cells {
        enumerate(rows, cols, Predicate::Knot, limits)?.count() as u64
    } else {
        0
    };

    let toroidal = canon.len() as u64;
    let fixed_total: u64 = fixed.values().sum();
    if fixed_total != (rows * cols) as u64 * toroidal {
        return Err(Error::Inconsistency(format!(
            "orbit count identity violated at {rows}x{cols}: {fixed_total} fixed points for {toroidal} classes"
        )));
    }

    Ok(EnumerationReport {
        rows,
        cols,
        knot: knot.into(),
        period: period.into(),
        toroidal: toroidal.into(),
        fperiod: fperiod.into_iter().map(|(k, v)| (k, v.into())).collect(),
        fixed: fixed.into_iter().map(|(k, v)| (k, v.into())).collect(),
        shift_classes: prime_square.then(|| ShiftClassCensus {
            row_shift: row_shift.into_iter().map(BigUint::from).collect(),
            free: free.into(),
        }),
    })
}

/// Number of toroidal classes among all period mosaics of the given size,
/// by canonical-form deduplication.
pub fn count_toroidal_by_canonicalization(
    rows: usize,
    cols: usize,
    limits: &Limits,
) -> Result<BigUint> {
    let mut canon: HashSet<Mosaic> = HashSet::new();
    for m in enumerate(rows, cols, Predicate::Period, limits)? {
        canon.insert(m.canonical_form());
    }
    Ok(canon.len().into())
}

/// Period mosaic counts grouped by fundamental period.
pub fn fperiod_histogram(
    rows: usize,
    cols: usize,
    limits: &Limits,
) -> Result<BTreeMap<(usize, usize), BigUint>> {
    let mut fperiod: BTreeMap<(usize, usize), u64> = BTreeMap::new();
    for m in enumerate(rows, cols, Predicate::Period, limits)? {
        *fperiod.entry(m.fundamental_period()).or_default() += 1;
    }
    Ok(fperiod.into_iter().map(|(k, v)| (k, v.into())).collect())
}

/// The canonical representatives of all toroidal 2x2 mosaics, in
/// deterministic (lexicographic) order.
pub fn catalog_toroidal_2_2() -> Vec<Mosaic> {
    let canon: BTreeSet<Mosaic> =
        enumerate(2, 2, Predicate::Period, &Limits::default())
            .expect("2x2 is within the default caps")
            .map(|m| m.canonical_form())
            .collect();
    canon.into_iter().collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn limits() -> Limits {
        Limits::default()
    }

    #[test]
    fn the_seven_period_1x1_mosaics() {
        let found: Vec<u8> = enumerate(1, 1, Predicate::Period, &limits())
            .unwrap()
            .map(|m| m.get(0, 0).id())
            .collect();
        assert_eq!(found, [0, 5, 6, 7, 8, 9, 10]);
    }

    #[test]
    fn period_2x2_count() {
        let n = enumerate(2, 2, Predicate::Period, &limits()).unwrap().count();
        assert_eq!(n, 359);
    }

    #[test]
    fn no_duplicates_and_order_independence() {
        let forward: BTreeSet<Mosaic> =
            enumerate(2, 2, Predicate::Period, &limits()).unwrap().collect();
        assert_eq!(forward.len(), 359);
        let reversed: BTreeSet<Mosaic> =
            Enumerator::with_order(2, 2, Predicate::Period, [10, 9, 8, 7, 6, 5, 4, 3, 2, 1, 0])
                .collect();
        assert_eq!(forward, reversed);
    }

    #[test]
    fn every_emitted_mosaic_satisfies_its_predicate() {
        for m in enumerate(2, 3, Predicate::Period, &limits()).unwrap() {
            assert!(m.is_period_mosaic());
        }
        for m in enumerate(3, 3, Predicate::Knot, &limits()).unwrap() {
            assert!(m.is_knot_mosaic());
        }
        for m in enumerate(2, 2, Predicate::SuitablyConnected, &limits()).unwrap() {
            assert!(m.is_suitably_connected());
        }
    }

    #[test]
    fn knot_3x3_count() {
        let n = enumerate(3, 3, Predicate::Knot, &limits()).unwrap().count();
        assert_eq!(n, 22);
    }

    #[test]
    fn caps_are_enforced() {
        assert!(matches!(
            enumerate(4, 3, Predicate::Period, &limits()),
            Err(Error::EnumerationCap { .. })
        ));
        assert!(enumerate(2, 5, Predicate::Period, &limits()).is_ok());
        assert!(matches!(
            enumerate(4, 4, Predicate::Knot, &limits()),
            Err(Error::EnumerationCap { .. })
        ));
        assert!(matches!(
            enumerate(0, 3, Predicate::Period, &limits()),
            Err(Error::ZeroDimension)
        ));
    }

    #[test]
    fn toroidal_2x2_has_110_classes() {
        assert_eq!(
            count_toroidal_by_canonicalization(2, 2, &limits()).unwrap(),
            BigUint::from(110u32)
        );
    }

    #[test]
    fn toroidal_1x3_has_49_classes() {
        assert_eq!(
            count_toroidal_by_canonicalization(1, 3, &limits()).unwrap(),
            BigUint::from(49u32)
        );
    }

    #[test]
    fn fperiod_histogram_1x1() {
        let h = fperiod_histogram(1, 1, &limits()).unwrap();
        assert_eq!(h.len(), 1);
        assert_eq!(h[&(1, 1)], BigUint::from(7u32));
    }

    #[test]
    fn report_2x2_census() {
        let r = report(2, 2, &limits()).unwrap();
        assert_eq!(r.period, BigUint::from(359u32));
        assert_eq!(r.toroidal, BigUint::from(110u32));
        assert_eq!(r.knot, BigUint::from(2u32));
        assert_eq!(r.fperiod[&(1, 1)], BigUint::from(7u32));
        assert_eq!(r.fperiod[&(1, 2)], BigUint::from(22u32));
        assert_eq!(r.fperiod[&(2, 1)], BigUint::from(22u32));
        assert_eq!(r.fperiod[&(2, 2)], BigUint::from(308u32));
        let classes = r.shift_classes.unwrap();
        assert_eq!(classes.row_shift, [BigUint::from(22u32), BigUint::from(16u32)]);
        assert_eq!(classes.free, BigUint::from(292u32));
        // fixed-point counts feeding the orbit identity
        assert_eq!(r.fixed[&Shift::new(0, 0)], BigUint::from(359u32));
        assert_eq!(r.fixed[&Shift::new(0, 1)], BigUint::from(29u32));
        assert_eq!(r.fixed[&Shift::new(1, 0)], BigUint::from(29u32));
        assert_eq!(r.fixed[&Shift::new(1, 1)], BigUint::from(23u32));
    }

    #[test]
    fn catalog_has_110_distinct_period_representatives() {
        let catalog = catalog_toroidal_2_2();
        assert_eq!(catalog.len(), 110);
        let distinct: BTreeSet<&Mosaic> = catalog.iter().collect();
        assert_eq!(distinct.len(), 110);
        for m in &catalog {
            assert!(m.is_period_mosaic());
            assert_eq!(&m.canonical_form(), m);
        }
    }
}
