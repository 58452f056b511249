//! Boundary state words and their integer indices.
//!
//! A boundary word records the connection-point flags along one side of a
//! mosaic as letters `x` (absent) and `o` (present). Words of length `k` are
//! indexed in reverse lexicographic order: letter `j` (1-based, topmost or
//! leftmost first) contributes `2^(j-1)` when it is `o`, so for `k = 3` the
//! order is `xxx, oxx, xox, oox, xxo, oxo, xoo, ooo`.

use std::fmt;

use crate::{Error, Result};

/// A word over {x, o} together with its index encoding.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BoundaryWord {
    /// `letters[j]` is true when letter `j+1` is `o`.
    letters: Vec<bool>,
}

impl BoundaryWord {
    pub fn new(letters: Vec<bool>) -> BoundaryWord {
        assert!(!letters.is_empty(), "boundary words have positive length");
        BoundaryWord { letters }
    }

    /// Word of the given length with the given reverse-lexicographic index.
    pub fn from_index(len: usize, index: u64) -> BoundaryWord {
        assert!(len < 64 && index < (1u64 << len));
        BoundaryWord::new((0..len).map(|j| index >> j & 1 == 1).collect())
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn letters(&self) -> &[bool] {
        &self.letters
    }

    pub fn index(&self) -> u64 {
        self.letters
            .iter()
            .enumerate()
            .filter(|&(_, &o)| o)
            .map(|(j, _)| 1u64 << j)
            .sum()
    }

    /// True when no letter is `o`.
    pub fn is_blank(&self) -> bool {
        self.letters.iter().all(|&o| !o)
    }

    /// Cyclic shift to the right by `k` letters: letter `j` moves to `j + k`.
    pub fn rotated_right(&self, k: usize) -> BoundaryWord {
        let p = self.len();
        let k = k % p;
        let mut letters = vec![false; p];
        for (j, &o) in self.letters.iter().enumerate() {
            letters[(j + k) % p] = o;
        }
        BoundaryWord::new(letters)
    }

    pub fn parse(text: &str) -> Result<BoundaryWord> {
        let letters: Result<Vec<bool>> = text
            .chars()
            .map(|c| match c {
                'x' => Ok(false),
                'o' => Ok(true),
                other => Err(Error::Parse(format!("bad state letter {other:?}"))),
            })
            .collect();
        let letters = letters?;
        if letters.is_empty() {
            return Err(Error::Parse("empty boundary word".into()));
        }
        Ok(BoundaryWord::new(letters))
    }
}

impl fmt::Display for BoundaryWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &o in &self.letters {
            f.write_str(if o { "o" } else { "x" })?;
        }
        Ok(())
    }
}

/// Index permutation induced by [`BoundaryWord::rotated_right`]: the image of
/// index `i` under the right rotation by `k` of `p`-letter words.
///
/// Equals `2^k * i mod (2^p - 1)` for `0 < i < 2^p - 1`; the two constant
/// words (indices `0` and `2^p - 1`) are fixed by every rotation.
pub fn rotation_index(i: u64, k: usize, p: usize) -> u64 {
    debug_assert!(p > 0 && p < 64 && i < (1u64 << p));
    let k = k % p;
    if k == 0 {
        return i;
    }
    let mask = (1u64 << p) - 1;
    (i << k | i >> (p - k)) & mask
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn reverse_lexicographic_order_at_len_3() {
        let words: Vec<String> = (0..8)
            .map(|i| BoundaryWord::from_index(3, i).to_string())
            .collect();
        assert_eq!(
            words,
            ["xxx", "oxx", "xox", "oox", "xxo", "oxo", "xoo", "ooo"]
        );
    }

    #[test]
    fn rotation_shifts_letters_to_the_right() {
        // the analogue of g_2(abcde) = deabc on an x/o word
        let w = BoundaryWord::parse("oxxox").unwrap();
        assert_eq!(w.rotated_right(2).to_string(), "oxoxx");
        // p=3, k=1: index 1 ("oxx") -> index 2 ("xox")
        assert_eq!(rotation_index(1, 1, 3), 2);
        assert_eq!(
            BoundaryWord::from_index(3, 1).rotated_right(1),
            BoundaryWord::from_index(3, 2)
        );
    }

    #[test]
    fn constant_words_are_fixed() {
        for p in 1..10 {
            for k in 0..p {
                assert_eq!(rotation_index(0, k, p), 0);
                let full = (1u64 << p) - 1;
                assert_eq!(rotation_index(full, k, p), full);
            }
        }
    }

    #[test]
    fn rotation_index_matches_modular_formula_on_interior_indices() {
        for p in 1..=12usize {
            let modulus = (1u64 << p) - 1;
            for k in 0..p {
                for i in 1..modulus {
                    assert_eq!(rotation_index(i, k, p), (i << k) % modulus);
                }
            }
        }
    }

    #[test]
    fn rotation_index_is_a_permutation_composing_additively() {
        for p in 1..=12usize {
            for k in 0..p {
                let mut seen = vec![false; 1 << p];
                for i in 0..(1u64 << p) {
                    let j = rotation_index(i, k, p) as usize;
                    assert!(!seen[j]);
                    seen[j] = true;
                }
            }
            for k1 in 0..p {
                for k2 in 0..p {
                    for i in 0..(1u64 << p) {
                        assert_eq!(
                            rotation_index(rotation_index(i, k2, p), k1, p),
                            rotation_index(i, (k1 + k2) % p, p)
                        );
                    }
                }
            }
        }
    }

    proptest! {
        #[test]
        fn index_round_trips(p in 1usize..16, raw in 0u64..u64::MAX) {
            let i = raw & ((1u64 << p) - 1);
            prop_assert_eq!(BoundaryWord::from_index(p, i).index(), i);
        }

        #[test]
        fn rotation_agrees_with_index_permutation(p in 1usize..12, raw in 0u64..u64::MAX, k in 0usize..12) {
            let i = raw & ((1u64 << p) - 1);
            let w = BoundaryWord::from_index(p, i);
            prop_assert_eq!(w.rotated_right(k).index(), rotation_index(i, k, p));
        }
    }
}
