//! Mosaics: rectangular tile grids, connectivity predicates, cyclic
//! rotations and canonical forms for toroidal equivalence.
//!
//! Indices are 1-based in all documentation (matching the usual matrix
//! convention); the implementation stores a 0-based row-major grid.
//!
//! Text format: a header line `m n`, then `m` lines of `n` tile ids
//! separated by spaces.

use std::fmt;

use crate::tile::{Side, Tile};
use crate::word::BoundaryWord;
use crate::{Error, Result};

/// Cyclic rotation by `x` rows and `y` columns.
///
/// Values are taken modulo the mosaic dimensions when applied, so any pair
/// of nonnegative amounts is a valid shift.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Shift {
    pub x: usize,
    pub y: usize,
}

impl Shift {
    pub fn new(x: usize, y: usize) -> Shift {
        Shift { x, y }
    }

    /// Reduces the shift modulo the grid dimensions.
    pub fn normalized(self, rows: usize, cols: usize) -> Shift {
        Shift { x: self.x % rows, y: self.y % cols }
    }
}

/// An `m x n` grid of mosaic tiles.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Mosaic {
    rows: usize,
    cols: usize,
    tiles: Vec<Tile>,
}

impl Mosaic {
    pub fn new(rows: usize, cols: usize, tiles: Vec<Tile>) -> Result<Mosaic> {
        if rows == 0 || cols == 0 {
            return Err(Error::ZeroDimension);
        }
        if tiles.len() != rows * cols {
            return Err(Error::Parse(format!(
                "expected {} tiles for a {rows}x{cols} mosaic, got {}",
                rows * cols,
                tiles.len()
            )));
        }
        Ok(Mosaic { rows, cols, tiles })
    }

    /// Builds a mosaic from rows of tile ids.
    pub fn from_ids(rows: &[&[u8]]) -> Result<Mosaic> {
        if rows.is_empty() || rows[0].is_empty() {
            return Err(Error::ZeroDimension);
        }
        let cols = rows[0].len();
        let mut tiles = Vec::with_capacity(rows.len() * cols);
        for row in rows {
            if row.len() != cols {
                return Err(Error::Parse("ragged rows".into()));
            }
            for &id in *row {
                tiles.push(Tile::new(id)?);
            }
        }
        Mosaic::new(rows.len(), cols, tiles)
    }

    pub fn filled(rows: usize, cols: usize, tile: Tile) -> Result<Mosaic> {
        Mosaic::new(rows, cols, vec![tile; rows * cols])
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn tiles(&self) -> &[Tile] {
        &self.tiles
    }

    /// Tile at 0-based position `(i, j)`.
    pub fn get(&self, i: usize, j: usize) -> Tile {
        self.tiles[i * self.cols + j]
    }

    /// The word of connection-point flags along one boundary, read top to
    /// bottom for the vertical sides and left to right for the horizontal
    /// ones.
    pub fn boundary_word(&self, side: Side) -> BoundaryWord {
        let letters = match side {
            Side::Left => (0..self.rows).map(|i| self.get(i, 0).cp_left()).collect(),
            Side::Right => (0..self.rows)
                .map(|i| self.get(i, self.cols - 1).cp_right())
                .collect(),
            Side::Top => (0..self.cols).map(|j| self.get(0, j).cp_top()).collect(),
            Side::Bottom => (0..self.cols)
                .map(|j| self.get(self.rows - 1, j).cp_bottom())
                .collect(),
        };
        BoundaryWord::new(letters)
    }

    /// True when every pair of contiguous tiles agrees on the presence of a
    /// connection point at their shared edge.
    pub fn is_suitably_connected(&self) -> bool {
        for i in 0..self.rows {
            for j in 0..self.cols {
                let t = self.get(i, j);
                if j + 1 < self.cols && t.cp_right() != self.get(i, j + 1).cp_left() {
                    return false;
                }
                if i + 1 < self.rows && t.cp_bottom() != self.get(i + 1, j).cp_top() {
                    return false;
                }
            }
        }
        true
    }

    /// True when the tiles at opposite ends of every row and column agree on
    /// connection points at the mosaic boundary; equivalently the left word
    /// equals the right word and the top word equals the bottom word.
    pub fn is_suitably_boundary_connected(&self) -> bool {
        self.boundary_word(Side::Left) == self.boundary_word(Side::Right)
            && self.boundary_word(Side::Top) == self.boundary_word(Side::Bottom)
    }

    /// Suitably connected with a blank boundary.
    pub fn is_knot_mosaic(&self) -> bool {
        self.is_suitably_connected()
            && [Side::Left, Side::Right, Side::Top, Side::Bottom]
                .iter()
                .all(|&s| self.boundary_word(s).is_blank())
    }

    /// Suitably connected and suitably boundary-connected: a fundamental
    /// patch of a doubly periodic pattern.
    pub fn is_period_mosaic(&self) -> bool {
        self.is_suitably_connected() && self.is_suitably_boundary_connected()
    }

    /// Cyclic rotation: entry `(i, j)` of the result is entry
    /// `(i - x, j - y)` of `self`, indices wrapping around.
    pub fn rotate(&self, shift: Shift) -> Mosaic {
        let Shift { x, y } = shift.normalized(self.rows, self.cols);
        let mut tiles = Vec::with_capacity(self.tiles.len());
        for i in 0..self.rows {
            let si = (i + self.rows - x) % self.rows;
            for j in 0..self.cols {
                let sj = (j + self.cols - y) % self.cols;
                tiles.push(self.get(si, sj));
            }
        }
        Mosaic { rows: self.rows, cols: self.cols, tiles }
    }

    /// True when `rotate(shift)` returns `self` again, without materializing
    /// the rotation.
    pub fn is_fixed_by(&self, shift: Shift) -> bool {
        let Shift { x, y } = shift.normalized(self.rows, self.cols);
        for i in 0..self.rows {
            let si = (i + x) % self.rows;
            for j in 0..self.cols {
                if self.get(i, j) != self.get(si, (j + y) % self.cols) {
                    return false;
                }
            }
        }
        true
    }

    /// Tile at `(i, j)` of the rotation by `shift`, assuming a normalized
    /// shift.
    fn rotated_tile(&self, shift: Shift, i: usize, j: usize) -> Tile {
        self.get(
            (i + self.rows - shift.x) % self.rows,
            (j + self.cols - shift.y) % self.cols,
        )
    }

    /// Representative of the toroidal equivalence class: the row-major
    /// lexicographic minimum (by tile id) over all `m*n` cyclic rotations.
    /// Two mosaics are toroidally equivalent iff their canonical forms are
    /// identical.
    pub fn canonical_form(&self) -> Mosaic {
        let mut best = Shift::new(0, 0);
        for x in 0..self.rows {
            for y in 0..self.cols {
                let candidate = Shift::new(x, y);
                let less = (0..self.rows).flat_map(|i| (0..self.cols).map(move |j| (i, j))).find_map(
                    |(i, j)| {
                        let a = self.rotated_tile(candidate, i, j).id();
                        let b = self.rotated_tile(best, i, j).id();
                        (a != b).then_some(a < b)
                    },
                );
                if less == Some(true) {
                    best = candidate;
                }
            }
        }
        self.rotate(best)
    }

    /// Smallest positive `p` and `q` such that rotating by `p` rows or by
    /// `q` columns leaves the mosaic unchanged. Both divide the respective
    /// dimension. Meaningful for period mosaics.
    pub fn fundamental_period(&self) -> (usize, usize) {
        let p = (1..=self.rows)
            .find(|&x| self.is_fixed_by(Shift::new(x, 0)))
            .expect("full rotation is the identity");
        let q = (1..=self.cols)
            .find(|&y| self.is_fixed_by(Shift::new(0, y)))
            .expect("full rotation is the identity");
        (p, q)
    }

    /// Parses the text format.
    pub fn parse(text: &str) -> Result<Mosaic> {
        let mut lines = text.lines().filter(|l| !l.trim().is_empty());
        let header = lines.next().ok_or_else(|| Error::Parse("empty input".into()))?;
        let mut dims = header.split_whitespace();
        let rows: usize = dims
            .next()
            .and_then(|s| s.parse().ok())
            .ok_or_else(|| Error::Parse("bad header".into()))?;
        let cols: usize = dims
            .next()
            .and_then(|s| s.parse().ok())
            .ok_or_else(|| Error::Parse("bad header".into()))?;
        if dims.next().is_some() {
            return Err(Error::Parse("trailing tokens in header".into()));
        }
        if rows == 0 || cols == 0 {
            return Err(Error::ZeroDimension);
        }
        let mut tiles = Vec::with_capacity(rows * cols);
        for _ in 0..rows {
            let line = lines.next().ok_or_else(|| Error::Parse("missing row".into()))?;
            let ids: Vec<&str> = line.split_whitespace().collect();
            if ids.len() != cols {
                return Err(Error::Parse(format!(
                    "expected {cols} tile ids per row, got {}",
                    ids.len()
                )));
            }
            for id in ids {
                let id: u8 = id
                    .parse()
                    .map_err(|_| Error::Parse(format!("bad tile id {id:?}")))?;
                tiles.push(Tile::new(id)?);
            }
        }
        if lines.next().is_some() {
            return Err(Error::Parse("trailing lines".into()));
        }
        Mosaic::new(rows, cols, tiles)
    }

    /// One glyph per tile, one line per row.
    pub fn render_ascii(&self) -> String {
        let mut out = String::new();
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.push(self.get(i, j).glyph());
            }
            out.push('\n');
        }
        out
    }
}

impl fmt::Display for Mosaic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{} {}", self.rows, self.cols)?;
        for i in 0..self.rows {
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{}", self.get(i, j))?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

impl fmt::Debug for Mosaic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Mosaic({}x{}, {:?})", self.rows, self.cols, self.tiles)
    }
}
