//! Dense state matrices over arbitrary-precision integers.
//!
//! A state matrix at height `m` is `2^m x 2^m`; entry `(i, j)` counts
//! suitably connected single-column mosaics with left word index `i` and
//! right word index `j` (plus a vertical boundary condition depending on the
//! matrix kind). The matrices are built by a quadrant recursion on the
//! bottom tile of the column and combined by exact multiplication, powering
//! and trace sums.
//!
//! Dump format (for caching and debugging): first line `dim`, then `dim`
//! lines of `dim` decimal integers.

use std::fmt::Write as _;
use std::io::{self, BufRead, Write};
use std::str::FromStr;

use num_bigint::BigUint;
use num_traits::{One, Zero};

#[cfg(feature = "parallel")]
use rayon::prelude::*;

use crate::word::rotation_index;
use crate::{Error, Limits, Result};

/// A square matrix of nonnegative big integers.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BigMatrix {
    dim: usize,
    data: Vec<BigUint>,
}

impl BigMatrix {
    pub fn zero(dim: usize) -> BigMatrix {
        BigMatrix { dim, data: vec![BigUint::zero(); dim * dim] }
    }

    pub fn identity(dim: usize) -> BigMatrix {
        let mut m = BigMatrix::zero(dim);
        for i in 0..dim {
            m.data[i * dim + i] = BigUint::one();
        }
        m
    }

    /// Builds a matrix from rows of `u64` entries (test and seed helper).
    pub fn from_rows(rows: &[&[u64]]) -> BigMatrix {
        let dim = rows.len();
        assert!(rows.iter().all(|r| r.len() == dim), "square matrices only");
        let data = rows
            .iter()
            .flat_map(|r| r.iter().map(|&v| BigUint::from(v)))
            .collect();
        BigMatrix { dim, data }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, i: usize, j: usize) -> &BigUint {
        &self.data[i * self.dim + j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: BigUint) {
        self.data[i * self.dim + j] = value;
    }

    pub fn add(&self, rhs: &BigMatrix) -> Result<BigMatrix> {
        if self.dim != rhs.dim {
            return Err(Error::DimensionMismatch { left: self.dim, right: rhs.dim });
        }
        let data = self
            .data
            .iter()
            .zip(&rhs.data)
            .map(|(a, b)| a + b)
            .collect();
        Ok(BigMatrix { dim: self.dim, data })
    }

    /// Entrywise multiple by a small factor.
    pub fn scaled(&self, factor: u32) -> BigMatrix {
        let data = self.data.iter().map(|a| a * factor).collect();
        BigMatrix { dim: self.dim, data }
    }

    /// Assembles `[[a, b], [c, d]]` from four blocks of equal dimension.
    pub fn from_blocks(a: &BigMatrix, b: &BigMatrix, c: &BigMatrix, d: &BigMatrix) -> BigMatrix {
        let k = a.dim;
        assert!(b.dim == k && c.dim == k && d.dim == k);
        let dim = 2 * k;
        let mut out = BigMatrix::zero(dim);
        for i in 0..k {
            for j in 0..k {
                out.data[i * dim + j] = a.data[i * k + j].clone();
                out.data[i * dim + k + j] = b.data[i * k + j].clone();
                out.data[(k + i) * dim + j] = c.data[i * k + j].clone();
                out.data[(k + i) * dim + k + j] = d.data[i * k + j].clone();
            }
        }
        out
    }

    /// Exact matrix product. Output rows are computed independently, so the
    /// result is bit-identical regardless of the parallelism degree.
    pub fn mul(&self, rhs: &BigMatrix) -> Result<BigMatrix> {
        if self.dim != rhs.dim {
            return Err(Error::DimensionMismatch { left: self.dim, right: rhs.dim });
        }
        let dim = self.dim;
        let mut data = vec![BigUint::zero(); dim * dim];

        let row = |out: &mut [BigUint], i: usize| {
            for k in 0..dim {
                let a = &self.data[i * dim + k];
                if a.is_zero() {
                    continue;
                }
                let rhs_row = &rhs.data[k * dim..(k + 1) * dim];
                for (acc, b) in out.iter_mut().zip(rhs_row) {
                    if !b.is_zero() {
                        *acc += a * b;
                    }
                }
            }
        };

        #[cfg(feature = "parallel")]
        data.par_chunks_mut(dim).enumerate().for_each(|(i, out)| row(out, i));
        #[cfg(not(feature = "parallel"))]
        data.chunks_mut(dim).enumerate().for_each(|(i, out)| row(out, i));

        Ok(BigMatrix { dim, data })
    }

    /// Exact power by binary exponentiation; the zeroth power is the
    /// identity.
    pub fn pow(&self, mut e: u64) -> BigMatrix {
        let mut result = BigMatrix::identity(self.dim);
        if e == 0 {
            return result;
        }
        let mut base = self.clone();
        loop {
            if e & 1 == 1 {
                result = result.mul(&base).expect("same dimension");
            }
            e >>= 1;
            if e == 0 {
                return result;
            }
            base = base.mul(&base).expect("same dimension");
        }
    }

    /// Iterator over successive powers `A, A^2, A^3, ...` by repeated
    /// multiplication, for callers that need every intermediate power.
    pub fn powers(&self) -> Powers<'_> {
        Powers { base: self, current: None }
    }

    /// Sum of all entries.
    pub fn entry_sum(&self) -> BigUint {
        self.data.iter().sum()
    }

    /// Matrix-vector product `self * v`.
    pub fn apply(&self, v: &[BigUint]) -> Result<Vec<BigUint>> {
        if v.len() != self.dim {
            return Err(Error::DimensionMismatch { left: self.dim, right: v.len() });
        }
        Ok((0..self.dim)
            .map(|i| {
                let row = &self.data[i * self.dim..(i + 1) * self.dim];
                row.iter()
                    .zip(v)
                    .filter(|(a, b)| !a.is_zero() && !b.is_zero())
                    .map(|(a, b)| a * b)
                    .sum()
            })
            .collect())
    }

    /// Entry sum of the `e`-th power, via repeated matrix-vector products
    /// against the all-ones vector instead of full matrix powers.
    pub fn power_entry_sum(&self, e: u64) -> BigUint {
        let mut v = vec![BigUint::one(); self.dim];
        for _ in 0..e {
            v = self.apply(&v).expect("same dimension");
        }
        v.into_iter().sum()
    }

    /// Sum of the diagonal entries.
    pub fn trace(&self) -> BigUint {
        (0..self.dim).map(|i| self.get(i, i)).sum()
    }

    /// Trace of the `e`-th power, skipping the final full multiplication:
    /// `tr(A^(2j)) = sum_(i,k) A^j[i,k] A^j[k,i]` and
    /// `tr(A^(2j+1)) = sum_(i,k) (A^j A^j)[i,k] A[k,i]`.
    pub fn power_trace(&self, e: u64) -> BigUint {
        match e {
            0 => BigUint::from(self.dim),
            1 => self.trace(),
            _ => {
                let half = self.pow(e / 2);
                if e.is_multiple_of(2) {
                    dot_transposed(&half, &half)
                } else {
                    let square = half.mul(&half).expect("same dimension");
                    dot_transposed(&square, self)
                }
            }
        }
    }

    /// Trace along the boundary-word rotation: the sum over all word indices
    /// `i` of the entry at `(i, rho_k(i))`, where `rho_k` rotates `p`-letter
    /// words right by `k` positions and `2^p` is the matrix dimension.
    ///
    /// With `k = 0` this is the ordinary trace.
    pub fn shifted_trace(&self, k: usize) -> Result<BigUint> {
        let p = self.word_length()?;
        if k >= p {
            return Err(Error::ShiftOutOfRange { k, p });
        }
        Ok(self.permuted_trace(|i| rotation_index(i, k, p)))
    }

    /// Sum of the entries `(i, perm(i))`.
    pub(crate) fn permuted_trace(&self, perm: impl Fn(u64) -> u64) -> BigUint {
        (0..self.dim)
            .map(|i| self.get(i, perm(i as u64) as usize))
            .sum()
    }

    /// The word length `p` with `dim = 2^p`.
    pub fn word_length(&self) -> Result<usize> {
        if self.dim.is_power_of_two() {
            Ok(self.dim.trailing_zeros() as usize)
        } else {
            Err(Error::NotPowerOfTwo { dim: self.dim })
        }
    }

    pub fn is_symmetric(&self) -> bool {
        (0..self.dim).all(|i| (0..i).all(|j| self.get(i, j) == self.get(j, i)))
    }

    /// Writes the dump format.
    pub fn write_text(&self, w: &mut impl Write) -> io::Result<()> {
        writeln!(w, "{}", self.dim)?;
        let mut line = String::new();
        for i in 0..self.dim {
            line.clear();
            for j in 0..self.dim {
                if j > 0 {
                    line.push(' ');
                }
                write!(line, "{}", self.get(i, j)).expect("string write");
            }
            writeln!(w, "{line}")?;
        }
        Ok(())
    }

    /// Reads the dump format.
    pub fn read_text(r: &mut impl BufRead) -> Result<BigMatrix> {
        let mut lines = r.lines();
        let header = lines
            .next()
            .ok_or_else(|| Error::Parse("empty matrix dump".into()))??;
        let dim: usize = header
            .trim()
            .parse()
            .map_err(|_| Error::Parse(format!("bad matrix dimension {header:?}")))?;
        let mut data = Vec::with_capacity(dim * dim);
        for _ in 0..dim {
            let line = lines
                .next()
                .ok_or_else(|| Error::Parse("truncated matrix dump".into()))??;
            let mut count = 0;
            for token in line.split_whitespace() {
                let v = BigUint::from_str(token)
                    .map_err(|_| Error::Parse(format!("bad matrix entry {token:?}")))?;
                data.push(v);
                count += 1;
            }
            if count != dim {
                return Err(Error::Parse(format!("expected {dim} entries per row, got {count}")));
            }
        }
        Ok(BigMatrix { dim, data })
    }
}

/// `sum_(i,k) a[i,k] * b[k,i]`, the trace of `a * b`.
fn dot_transposed(a: &BigMatrix, b: &BigMatrix) -> BigUint {
    debug_assert_eq!(a.dim, b.dim);
    let mut total = BigUint::zero();
    for i in 0..a.dim {
        for k in 0..a.dim {
            let x = a.get(i, k);
            let y = b.get(k, i);
            if !x.is_zero() && !y.is_zero() {
                total += x * y;
            }
        }
    }
    total
}

pub struct Powers<'a> {
    base: &'a BigMatrix,
    current: Option<BigMatrix>,
}

impl Iterator for Powers<'_> {
    type Item = BigMatrix;

    fn next(&mut self) -> Option<BigMatrix> {
        let next = match &self.current {
            None => self.base.clone(),
            Some(c) => c.mul(self.base).expect("same dimension"),
        };
        self.current = Some(next.clone());
        Some(next)
    }
}

/// The four companion single-column state matrices at height `m`.
///
/// The sign records whether the bottom and top words agree (`+`) or differ
/// (`-`); the letter records the bottom word (`X` blank, `O` connected).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StateMatrixQuad {
    pub m: usize,
    pub x_plus: BigMatrix,
    pub x_minus: BigMatrix,
    pub o_plus: BigMatrix,
    pub o_minus: BigMatrix,
}

impl StateMatrixQuad {
    /// `X_m^+ + O_m^+`: the transfer matrix for columns whose top and bottom
    /// words agree, whose `n`-th power traces to the period mosaic count.
    pub fn period_sum(&self) -> BigMatrix {
        self.x_plus.add(&self.o_plus).expect("same dimension")
    }

    /// All four matrices summed: the full single-column state matrix.
    pub fn full_sum(&self) -> BigMatrix {
        self.period_sum()
            .add(&self.x_minus)
            .and_then(|s| s.add(&self.o_minus))
            .expect("same dimension")
    }
}

/// Builds the state-matrix quadruple at height `m` by the quadrant
/// recursion, starting from the 1x1 seeds `X+ = O+ = [1]`, `X- = O- = [0]`.
///
/// Each step adjoins one tile at the bottom of the column; the four
/// quadrants of the doubled matrix classify the new tile's left/right
/// connection flags, and the factor 4 accounts for the four tiles that
/// realize a fully connected cell.
pub fn build_quad(m: usize, limits: &Limits) -> Result<StateMatrixQuad> {
    limits.check_dim(m)?;
    let one = BigMatrix::from_rows(&[&[1]]);
    let zero = BigMatrix::from_rows(&[&[0]]);
    let (mut xp, mut xm, mut op, mut om) = (one.clone(), zero.clone(), one, zero);
    for _ in 0..m {
        let xp_next = BigMatrix::from_blocks(&xp, &om, &om, &xp);
        let xm_next = BigMatrix::from_blocks(&xm, &op, &op, &xm);
        let op_next = BigMatrix::from_blocks(&op, &xm, &xm, &op.scaled(4));
        let om_next = BigMatrix::from_blocks(&om, &xp, &xp, &om.scaled(4));
        xp = xp_next;
        xm = xm_next;
        op = op_next;
        om = om_next;
    }
    Ok(StateMatrixQuad { m, x_plus: xp, x_minus: xm, o_plus: op, o_minus: om })
}

/// Builds the pair `(X_k, O_k)` of the knot-mosaic recursion from the seeds
/// `X_0 = O_0 = [1]`.
pub fn build_knot_pair(k: usize, limits: &Limits) -> Result<(BigMatrix, BigMatrix)> {
    limits.check_dim(k)?;
    let mut x = BigMatrix::from_rows(&[&[1]]);
    let mut o = x.clone();
    for _ in 0..k {
        let x_next = BigMatrix::from_blocks(&x, &o, &o, &x);
        let o_next = BigMatrix::from_blocks(&o, &x, &x, &o.scaled(4));
        x = x_next;
        o = o_next;
    }
    Ok((x, o))
}
