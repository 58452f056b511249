//! Exact counts of knot, period and toroidal mosaics.
//!
//! Period counts come from traces of state-matrix powers; toroidal counts
//! divide the period mosaics into rotation classes, either through the
//! fundamental-period recursion (co-prime sizes), through shifted traces
//! (prime squares), or through full orbit counting over the rotation group
//! (everything else). Every division performed here is exact; a nonzero
//! remainder means an internal inconsistency and aborts the computation.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{CheckedSub, Zero};

use crate::matrix::{build_knot_pair, build_quad, BigMatrix};
use crate::mosaic::Shift;
use crate::tile::Tile;
use crate::word::rotation_index;
use crate::{is_prime, Error, Limits, Result};

/// Which cardinality a [`CountResult`] reports.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Quantity {
    Knot,
    Period,
    Toroidal,
}

/// How a [`CountResult`] was obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Method {
    TheoremKnot,
    TheoremPeriod,
    TheoremCoprime,
    TheoremPrimeSquare,
    BurnsideGeneral,
    Oracle,
}

impl Quantity {
    pub fn as_str(self) -> &'static str {
        match self {
            Quantity::Knot => "knot",
            Quantity::Period => "period",
            Quantity::Toroidal => "toroidal",
        }
    }
}

impl Method {
    pub fn as_str(self) -> &'static str {
        match self {
            Method::TheoremKnot => "theorem-knot",
            Method::TheoremPeriod => "theorem-period",
            Method::TheoremCoprime => "theorem-coprime",
            Method::TheoremPrimeSquare => "theorem-prime-square",
            Method::BurnsideGeneral => "burnside-general",
            Method::Oracle => "oracle",
        }
    }
}

impl fmt::Display for Quantity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Quantity {
    type Err = Error;

    fn from_str(s: &str) -> Result<Quantity> {
        match s {
            "knot" => Ok(Quantity::Knot),
            "period" => Ok(Quantity::Period),
            "toroidal" => Ok(Quantity::Toroidal),
            other => Err(Error::Parse(format!("unknown quantity {other:?}"))),
        }
    }
}

impl FromStr for Method {
    type Err = Error;

    fn from_str(s: &str) -> Result<Method> {
        match s {
            "theorem-knot" => Ok(Method::TheoremKnot),
            "theorem-period" => Ok(Method::TheoremPeriod),
            "theorem-coprime" => Ok(Method::TheoremCoprime),
            "theorem-prime-square" => Ok(Method::TheoremPrimeSquare),
            "burnside-general" => Ok(Method::BurnsideGeneral),
            "oracle" => Ok(Method::Oracle),
            other => Err(Error::Parse(format!("unknown method {other:?}"))),
        }
    }
}

/// An exact count together with its provenance.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CountResult {
    pub m: usize,
    pub n: usize,
    pub quantity: Quantity,
    pub method: Method,
    pub value: BigUint,
}

/// Key of one class in a fundamental-period census.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum FPeriodKey {
    /// Mosaics with fundamental period `(p, q)`.
    Fundamental(usize, usize),
    /// Prime-square subdivision: mosaics fixed by a `(k, 1)` rotation (and
    /// by no smaller one), excluding the constant and row-period-1 classes.
    RowShift(usize),
    /// Prime-square subdivision: mosaics fixed by no `(k, 1)` rotation.
    Free,
}

impl fmt::Display for FPeriodKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FPeriodKey::Fundamental(p, q) => write!(f, "d({p},{q})"),
            FPeriodKey::RowShift(k) => write!(f, "d-shift({k},1)"),
            FPeriodKey::Free => write!(f, "d-free"),
        }
    }
}

/// Census of period mosaics by fundamental-period class.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FPeriodCensus {
    pub m: usize,
    pub n: usize,
    pub table: BTreeMap<FPeriodKey, BigUint>,
}

impl FPeriodCensus {
    pub fn get(&self, key: FPeriodKey) -> BigUint {
        self.table.get(&key).cloned().unwrap_or_default()
    }

    /// Total count across the census classes.
    pub fn total(&self) -> BigUint {
        // a prime-square census lists d(1,p) and the shift classes instead
        // of the aggregate d(p,1)/d(p,p) buckets, so summing the table is
        // correct for both shapes
        self.table.values().sum()
    }
}

fn check_dims(m: usize, n: usize) -> Result<()> {
    if m == 0 || n == 0 {
        Err(Error::ZeroDimension)
    } else {
        Ok(())
    }
}

fn exact_div(value: &BigUint, divisor: usize, what: &str) -> Result<BigUint> {
    let (q, r) = value.div_rem(&BigUint::from(divisor));
    if r.is_zero() {
        Ok(q)
    } else {
        Err(Error::Inconsistency(format!(
            "{what}: {divisor} does not divide {value}"
        )))
    }
}

fn checked_sub(value: &BigUint, sub: &BigUint, what: &str) -> Result<BigUint> {
    value.checked_sub(sub).ok_or_else(|| {
        Error::Inconsistency(format!("{what}: {sub} exceeds {value}"))
    })
}

fn divisors(n: usize) -> Vec<usize> {
    (1..=n).filter(|d| n.is_multiple_of(*d)).collect()
}

/// Exact number of knot `(m, n)`-mosaics: twice the entry sum of the
/// `(n-2)`-th power of the height-`(m-2)` knot state matrix sum.
pub fn count_knot(m: usize, n: usize, limits: &Limits) -> Result<CountResult> {
    if m < 2 || n < 2 {
        return Err(Error::KnotTooSmall { m, n });
    }
    let (x, o) = build_knot_pair(m - 2, limits)?;
    let sum = x.add(&o).expect("same dimension");
    Ok(count_knot_with(&sum, m, n))
}

/// Knot count from an already built `X_{m-2} + O_{m-2}` matrix.
pub fn count_knot_with(sum: &BigMatrix, m: usize, n: usize) -> CountResult {
    assert!(m >= 2 && n >= 2, "knot counting requires m, n >= 2");
    let value = sum.power_entry_sum(n as u64 - 2) * 2u32;
    CountResult { m, n, quantity: Quantity::Knot, method: Method::TheoremKnot, value }
}

/// Exact number of period `(m, n)`-mosaics: the trace of the `n`-th power
/// of `X_m^+ + O_m^+`.
pub fn count_period(m: usize, n: usize, limits: &Limits) -> Result<CountResult> {
    check_dims(m, n)?;
    let sum = build_quad(m, limits)?.period_sum();
    Ok(count_period_with(&sum, m, n))
}

/// Period count from an already built `X_m^+ + O_m^+` matrix.
pub fn count_period_with(sum: &BigMatrix, m: usize, n: usize) -> CountResult {
    let value = sum.power_trace(n as u64);
    CountResult { m, n, quantity: Quantity::Period, method: Method::TheoremPeriod, value }
}

/// Fundamental-period census by the divisor recursion: the number of
/// `(p, q)`-fundamental-period mosaics is the period count at `(p, q)`
/// minus every strictly coarser class. Valid for any `(m, n)`; the co-prime
/// entry point below additionally checks its theorem precondition.
fn census_by_divisors(m: usize, n: usize, limits: &Limits) -> Result<BTreeMap<(usize, usize), BigUint>> {
    check_dims(m, n)?;
    let mut table: BTreeMap<(usize, usize), BigUint> = BTreeMap::new();
    for &p in &divisors(m) {
        for &q in &divisors(n) {
            let mut value = count_period(p, q, limits)?.value;
            for (&(r, s), prior) in table.iter() {
                if p % r == 0 && q % s == 0 && (r, s) != (p, q) {
                    value = checked_sub(&value, prior, "fundamental-period recursion")?;
                }
            }
            table.insert((p, q), value);
        }
    }
    Ok(table)
}

/// Fundamental-period census for co-prime `(m, n)`.
pub fn fperiod_census_coprime(m: usize, n: usize, limits: &Limits) -> Result<FPeriodCensus> {
    check_dims(m, n)?;
    if m.gcd(&n) != 1 {
        return Err(Error::NotCoprime { m, n });
    }
    let table = census_by_divisors(m, n, limits)?
        .into_iter()
        .map(|((p, q), v)| (FPeriodKey::Fundamental(p, q), v))
        .collect();
    Ok(FPeriodCensus { m, n, table })
}

/// Fundamental-period census for any `(m, n)` (divisor recursion without
/// the co-prime restriction).
pub fn fperiod_census_general(m: usize, n: usize, limits: &Limits) -> Result<FPeriodCensus> {
    let table = census_by_divisors(m, n, limits)?
        .into_iter()
        .map(|((p, q), v)| (FPeriodKey::Fundamental(p, q), v))
        .collect();
    Ok(FPeriodCensus { m, n, table })
}

/// Exact toroidal count for co-prime `(m, n)`: every fundamental-period
/// class of `(p, q)`-mosaics splits into orbits of exactly `p * q` distinct
/// rotations.
pub fn count_toroidal_coprime(m: usize, n: usize, limits: &Limits) -> Result<CountResult> {
    let census = fperiod_census_coprime(m, n, limits)?;
    let mut value = BigUint::zero();
    for (key, count) in &census.table {
        let FPeriodKey::Fundamental(p, q) = key else { unreachable!() };
        value += exact_div(count, p * q, "co-prime orbit split")?;
    }
    Ok(CountResult { m, n, quantity: Quantity::Toroidal, method: Method::TheoremCoprime, value })
}

/// Fundamental-period census for a prime square `(p, p)`, subdivided into
/// the constant class, the row-period-1 class, the `(k, 1)`-shift classes
/// and the free remainder.
///
/// The shift-class counts are shifted traces of the single-column state
/// matrix: a mosaic fixed by `(k, 1)` is determined by one column whose
/// right word is the `k`-rotation of its left word.
pub fn fperiod_census_prime_square(p: usize, limits: &Limits) -> Result<FPeriodCensus> {
    if !is_prime(p) {
        return Err(Error::NotPrime { p });
    }
    let sum = build_quad(p, limits)?.period_sum();
    let total = sum.pow(p as u64).trace();
    let seven = BigUint::from(7u32);

    let mut shift = Vec::with_capacity(p);
    for k in 0..p {
        let fixed = sum.shifted_trace(k)?;
        shift.push(checked_sub(&fixed, &seven, "shift class")?);
    }
    for k in 1..p {
        if shift[k] != shift[p - k] {
            return Err(Error::Inconsistency(format!(
                "torus symmetry violated: shift classes {k} and {} differ",
                p - k
            )));
        }
    }

    let mut table = BTreeMap::new();
    table.insert(FPeriodKey::Fundamental(1, 1), seven.clone());
    table.insert(FPeriodKey::Fundamental(1, p), shift[0].clone());
    let mut free = checked_sub(&total, &seven, "free class")?;
    free = checked_sub(&free, &shift[0], "free class")?;
    for (k, count) in shift.into_iter().enumerate() {
        free = checked_sub(&free, &count, "free class")?;
        table.insert(FPeriodKey::RowShift(k), count);
    }
    table.insert(FPeriodKey::Free, free);
    Ok(FPeriodCensus { m: p, n: p, table })
}

/// Exact toroidal count for a prime square `(p, p)`: the constant mosaics
/// are rotation-fixed, the shift and row-period-1 classes fall into orbits
/// of size `p`, and the free remainder into orbits of size `p^2`.
pub fn count_toroidal_prime_square(p: usize, limits: &Limits) -> Result<CountResult> {
    let census = fperiod_census_prime_square(p, limits)?;
    let mut size_p = census.get(FPeriodKey::Fundamental(1, p));
    for k in 0..p {
        size_p += census.get(FPeriodKey::RowShift(k));
    }
    let mut value = BigUint::from(7u32);
    value += exact_div(&size_p, p, "prime-square orbit split")?;
    value += exact_div(&census.get(FPeriodKey::Free), p * p, "prime-square free split")?;
    Ok(CountResult {
        m: p,
        n: p,
        quantity: Quantity::Toroidal,
        method: Method::TheoremPrimeSquare,
        value,
    })
}

/// One cyclic column: a suitably connected single-column mosaic whose
/// bottom edge wraps onto its top edge, recorded with its left and right
/// word indices.
struct CyclicColumn {
    tiles: Vec<Tile>,
    left: u64,
    right: u64,
}

/// Depth-first enumeration of all cyclic columns of the given height.
fn cyclic_columns(height: usize) -> Vec<CyclicColumn> {
    let mut out = Vec::new();
    let mut stack: Vec<Tile> = Vec::with_capacity(height);
    let mut cursor = vec![0u8; height];
    loop {
        let depth = stack.len();
        if depth == height {
            let left = stack
                .iter()
                .enumerate()
                .filter(|(_, t)| t.cp_left())
                .map(|(i, _)| 1u64 << i)
                .sum();
            let right = stack
                .iter()
                .enumerate()
                .filter(|(_, t)| t.cp_right())
                .map(|(i, _)| 1u64 << i)
                .sum();
            out.push(CyclicColumn { tiles: stack.clone(), left, right });
            stack.pop();
            continue;
        }
        if cursor[depth] as usize >= Tile::COUNT as usize {
            if depth == 0 {
                return out;
            }
            cursor[depth] = 0;
            stack.pop();
            continue;
        }
        let t = Tile::new(cursor[depth]).expect("valid id");
        cursor[depth] += 1;
        let ok = {
            let above = if depth == 0 { None } else { Some(stack[depth - 1]) };
            let vertical = above.is_none_or(|a| a.cp_bottom() == t.cp_top());
            let wrap = if depth == height - 1 {
                let top = if height == 1 { t } else { stack[0] };
                t.cp_bottom() == top.cp_top()
            } else {
                true
            };
            vertical && wrap
        };
        if ok {
            stack.push(t);
        }
    }
}

/// Transfer matrix over full boundary words for columns of height `rows`
/// that are invariant under the row rotation by `e`: such a column is a
/// vertical repetition of a cyclic column of height `gcd(e, rows)`.
fn invariant_column_matrix(rows: usize, e: usize, limits: &Limits) -> Result<BigMatrix> {
    limits.check_dim(rows)?;
    if rows > limits.max_fix_rows {
        return Err(Error::ColumnCap { m: rows, cap: limits.max_fix_rows });
    }
    let d = e.gcd(&rows);
    let reps = rows / d;
    let mut matrix = BigMatrix::zero(1 << rows);
    for col in cyclic_columns(d) {
        let mut left = 0u64;
        let mut right = 0u64;
        for r in 0..reps {
            left |= col.left << (d * r);
            right |= col.right << (d * r);
        }
        let current = matrix.get(left as usize, right as usize).clone();
        matrix.set(left as usize, right as usize, current + 1u32);
    }
    Ok(matrix)
}

/// Solves `b * y = g (mod n)` for the column-orbit twist, where
/// `g = gcd(y, n)`.
fn orbit_twist(y: usize, n: usize) -> usize {
    let egcd = (y as i64).extended_gcd(&(n as i64));
    egcd.x.rem_euclid(n as i64) as usize
}

/// Number of period `(m, n)`-mosaics fixed by the given rotation.
///
/// The identity rotation fixes every period mosaic. Any other rotation
/// splits the columns into `g = gcd(y, n)` orbits of length `n/g`; each
/// orbit is generated by one column that must be invariant under the row
/// rotation by `e = x*n/g mod m`, and closing the cycle twists the boundary
/// words by `b*x` where `b*y = g (mod n)`. The count is therefore a
/// shifted trace of the `g`-th power of the invariant-column transfer
/// matrix.
pub fn fix_count(m: usize, n: usize, shift: Shift, limits: &Limits) -> Result<BigUint> {
    check_dims(m, n)?;
    let Shift { x, y } = shift.normalized(m, n);
    if (x, y) == (0, 0) {
        return Ok(count_period(m, n, limits)?.value);
    }
    let g = y.gcd(&n);
    let e = (x * (n / g)) % m;
    let rot = (orbit_twist(y, n) * x) % m;
    let transfer = invariant_column_matrix(m, e, limits)?;
    let power = transfer.pow(g as u64);
    Ok(power.permuted_trace(|i| rotation_index(i, rot, m)))
}

/// Definitional recount of [`fix_count`]: assemble one candidate column per
/// orbit, materialize the full mosaic and test the fixed-point property
/// directly. Exponentially slower; used to validate the transfer-matrix
/// path.
pub fn fix_count_reference(m: usize, n: usize, shift: Shift, limits: &Limits) -> Result<BigUint> {
    check_dims(m, n)?;
    if m > limits.max_fix_rows {
        return Err(Error::ColumnCap { m, cap: limits.max_fix_rows });
    }
    let Shift { x, y } = shift.normalized(m, n);
    let g = y.gcd(&n);
    let e = (x * (n / g)) % m;
    let b = orbit_twist(y, n);

    let columns: Vec<CyclicColumn> = cyclic_columns(m)
        .into_iter()
        .filter(|c| (0..m).all(|i| c.tiles[i] == c.tiles[(i + e) % m]))
        .collect();

    // chains[j] holds the chosen column index per orbit representative
    let mut chains: Vec<usize> = Vec::with_capacity(g);
    let mut count = BigUint::zero();
    let mut cursor = vec![0usize; g];
    loop {
        let depth = chains.len();
        if depth == g {
            if fixed_mosaic_from_columns(m, n, x, b, &columns, &chains, shift) {
                count += 1u32;
            }
            chains.pop();
            continue;
        }
        if cursor[depth] >= columns.len() {
            if depth == 0 {
                return Ok(count);
            }
            cursor[depth] = 0;
            chains.pop();
            continue;
        }
        let idx = cursor[depth];
        cursor[depth] += 1;
        // adjacency pruning between consecutive representatives
        if depth > 0 && columns[chains[depth - 1]].right != columns[idx].left {
            continue;
        }
        chains.push(idx);
    }
}

/// Materializes the mosaic determined by the orbit representatives and
/// checks the defining property.
fn fixed_mosaic_from_columns(
    m: usize,
    n: usize,
    x: usize,
    b: usize,
    columns: &[CyclicColumn],
    chains: &[usize],
    shift: Shift,
) -> bool {
    let g = chains.len();
    let mut tiles = vec![Tile::BLANK; m * n];
    for col_index in 0..n {
        let rep = col_index % g;
        let steps = col_index / g; // column (rep + g*s) is the rep rotated s times
        let down = (b * x % m) * steps % m;
        let column = &columns[chains[rep]].tiles;
        for i in 0..m {
            tiles[i * n + col_index] = column[(i + m - down % m) % m];
        }
    }
    let mosaic = crate::mosaic::Mosaic::new(m, n, tiles).expect("complete grid");
    mosaic.is_period_mosaic() && mosaic.is_fixed_by(shift)
}

/// Exact toroidal count for arbitrary `(m, n)` by orbit counting over the
/// full rotation group: the class count is the average number of fixed
/// points.
pub fn count_toroidal_general(m: usize, n: usize, limits: &Limits) -> Result<CountResult> {
    check_dims(m, n)?;
    let mut total = BigUint::zero();
    for x in 0..m {
        for y in 0..n {
            total += fix_count(m, n, Shift::new(x, y), limits)?;
        }
    }
    let value = exact_div(&total, m * n, "orbit average")?;
    Ok(CountResult {
        m,
        n,
        quantity: Quantity::Toroidal,
        method: Method::BurnsideGeneral,
        value,
    })
}

/// Exact toroidal count, routed to the fastest applicable method.
pub fn count_toroidal(m: usize, n: usize, limits: &Limits) -> Result<CountResult> {
    check_dims(m, n)?;
    if m.gcd(&n) == 1 {
        count_toroidal_coprime(m, n, limits)
    } else if m == n && is_prime(m) {
        count_toroidal_prime_square(m, limits)
    } else {
        count_toroidal_general(m, n, limits)
    }
}

/// The period count of the `(n, n)` square together with its `n^2`-th root
/// to six decimal places, computed from the exact integer.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GrowthMetric {
    pub n: usize,
    pub period_count: BigUint,
    root_micro: u64,
}

impl GrowthMetric {
    /// The root scaled by `10^6`, rounded half-up.
    pub fn root_micro(&self) -> u64 {
        self.root_micro
    }

    /// The root formatted with six decimals.
    pub fn root_string(&self) -> String {
        format!("{}.{:06}", self.root_micro / 1_000_000, self.root_micro % 1_000_000)
    }
}

/// Computes `D = count_period(n, n)` and the integer-exact six-decimal
/// approximation of `D^(1/n^2)`.
pub fn growth_metric(n: usize, limits: &Limits) -> Result<GrowthMetric> {
    let period_count = count_period(n, n, limits)?.value;
    Ok(growth_metric_from_count(n, period_count))
}

/// Growth metric from an already computed period count.
pub fn growth_metric_from_count(n: usize, period_count: BigUint) -> GrowthMetric {
    let e = (n * n) as u32;
    // two guard digits behind the six reported decimals
    let scaled = &period_count * BigUint::from(10u32).pow(8 * e);
    let root8 = scaled.nth_root(e);
    let micro = (root8 + 50u32) / 100u32;
    let root_micro = u64::try_from(&micro).expect("root fits in u64");
    GrowthMetric { n, period_count, root_micro }
}
