//! The eleven mosaic tiles and their connection points.
//!
//! A connection point is the midpoint of a tile edge where a drawn strand
//! ends. Tile ids follow a fixed convention:
//!
//! | id | connection points | glyph | drawn content              |
//! |----|-------------------|-------|----------------------------|
//! | 0  | none              | `.`   | blank                      |
//! | 1  | left, bottom      | `╮`   | arc                        |
//! | 2  | right, bottom     | `╭`   | arc                        |
//! | 3  | right, top        | `╰`   | arc                        |
//! | 4  | left, top         | `╯`   | arc                        |
//! | 5  | left, right       | `─`   | horizontal line            |
//! | 6  | top, bottom       | `│`   | vertical line              |
//! | 7  | all four          | `(`   | double arc (left↔top, right↔bottom) |
//! | 8  | all four          | `)`   | double arc (right↔top, left↔bottom) |
//! | 9  | all four          | `┼`   | crossing, vertical strand over      |
//! | 10 | all four          | `╳`   | crossing, horizontal strand over    |
//!
//! Every count in this crate is independent of how ids 7..=10 are assigned
//! to the two double arcs and two crossings (and of the 3/4 arc labels);
//! only rendered catalogs depend on the table above.

use std::fmt;

use crate::{Error, Result};

/// Edge of a tile or of a mosaic.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Side {
    Left,
    Right,
    Top,
    Bottom,
}

/// Connection-point flags per tile id, packed as (left, right, top, bottom).
const CP: [(bool, bool, bool, bool); 11] = [
    (false, false, false, false), // 0
    (true, false, false, true),   // 1
    (false, true, false, true),   // 2
    (false, true, true, false),   // 3
    (true, false, true, false),   // 4
    (true, true, false, false),   // 5
    (false, false, true, true),   // 6
    (true, true, true, true),     // 7
    (true, true, true, true),     // 8
    (true, true, true, true),     // 9
    (true, true, true, true),     // 10
];

const GLYPHS: [char; 11] = ['.', '╮', '╭', '╰', '╯', '─', '│', '(', ')', '┼', '╳'];

/// One of the eleven mosaic tiles.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Tile(u8);

impl Tile {
    pub const COUNT: u8 = 11;

    pub const BLANK: Tile = Tile(0);

    pub fn new(id: u8) -> Result<Tile> {
        if id < Self::COUNT {
            Ok(Tile(id))
        } else {
            Err(Error::Parse(format!("tile id {id} out of range 0..=10")))
        }
    }

    pub fn id(self) -> u8 {
        self.0
    }

    /// All eleven tiles in id order.
    pub fn all() -> impl Iterator<Item = Tile> {
        (0..Self::COUNT).map(Tile)
    }

    pub fn cp_left(self) -> bool {
        CP[self.0 as usize].0
    }

    pub fn cp_right(self) -> bool {
        CP[self.0 as usize].1
    }

    pub fn cp_top(self) -> bool {
        CP[self.0 as usize].2
    }

    pub fn cp_bottom(self) -> bool {
        CP[self.0 as usize].3
    }

    /// Connection-point flag on the given edge.
    pub fn cp(self, side: Side) -> bool {
        match side {
            Side::Left => self.cp_left(),
            Side::Right => self.cp_right(),
            Side::Top => self.cp_top(),
            Side::Bottom => self.cp_bottom(),
        }
    }

    pub fn connection_count(self) -> u32 {
        let (l, r, t, b) = CP[self.0 as usize];
        l as u32 + r as u32 + t as u32 + b as u32
    }

    /// Single printable glyph used by the catalog renderer.
    pub fn glyph(self) -> char {
        GLYPHS[self.0 as usize]
    }
}

impl fmt::Debug for Tile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "T{}", self.0)
    }
}

impl fmt::Display for Tile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::BTreeSet;

    #[test]
    fn connection_counts_are_even_and_partition() {
        let by_count = |c: u32| Tile::all().filter(|t| t.connection_count() == c).count();
        assert_eq!(by_count(0), 1);
        assert_eq!(by_count(2), 6);
        assert_eq!(by_count(4), 4);
        assert!(Tile::all().all(|t| t.connection_count() % 2 == 0));
    }

    #[test]
    fn two_point_tiles_realize_each_edge_pair_once() {
        let pairs: BTreeSet<(bool, bool, bool, bool)> = Tile::all()
            .filter(|t| t.connection_count() == 2)
            .map(|t| (t.cp_left(), t.cp_right(), t.cp_top(), t.cp_bottom()))
            .collect();
        // six distinct flag patterns among the six 2-point tiles
        assert_eq!(pairs.len(), 6);
    }

    #[test]
    fn four_point_tiles_share_flags() {
        for t in Tile::all().filter(|t| t.connection_count() == 4) {
            assert!(t.cp_left() && t.cp_right() && t.cp_top() && t.cp_bottom());
        }
    }

    #[test]
    fn glyphs_are_distinct() {
        let set: BTreeSet<char> = Tile::all().map(Tile::glyph).collect();
        assert_eq!(set.len(), 11);
    }

    #[test]
    fn id_range_enforced() {
        assert!(Tile::new(10).is_ok());
        assert!(Tile::new(11).is_err());
    }
}
