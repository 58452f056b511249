//! Cross-route consistency between the state-matrix pipeline and the
//! brute-force enumerator.

use std::collections::BTreeMap;

use num_bigint::BigUint;

use mosaic_core::word::rotation_index;
use mosaic_core::{count, matrix, oracle, Limits, Side};

fn limits() -> Limits {
    Limits::default()
}

#[test]
fn state_matrix_entries_count_boundary_word_buckets() {
    // entry (i, j) of (X_m^+ + O_m^+)^n counts the suitably connected
    // (m,n)-mosaics with equal top and bottom words, left word i, right
    // word j
    let limits = limits();
    for (m, n) in [(1, 1), (1, 2), (2, 1), (2, 2), (2, 3), (3, 2)] {
        let power = matrix::build_quad(m, &limits).unwrap().period_sum().pow(n as u64);
        let mut buckets: BTreeMap<(u64, u64), u64> = BTreeMap::new();
        for mosaic in oracle::enumerate(m, n, oracle::Predicate::SuitablyConnected, &limits).unwrap()
        {
            if mosaic.boundary_word(Side::Top) == mosaic.boundary_word(Side::Bottom) {
                let i = mosaic.boundary_word(Side::Left).index();
                let j = mosaic.boundary_word(Side::Right).index();
                *buckets.entry((i, j)).or_default() += 1;
            }
        }
        for i in 0..(1usize << m) {
            for j in 0..(1usize << m) {
                let expected = buckets.get(&(i as u64, j as u64)).copied().unwrap_or(0);
                assert_eq!(
                    power.get(i, j),
                    &BigUint::from(expected),
                    "bucket ({i},{j}) at ({m},{n})"
                );
            }
        }
    }
}

#[test]
fn full_state_matrix_counts_all_columns() {
    let limits = limits();
    for m in 1..=4 {
        let total = matrix::build_quad(m, &limits).unwrap().full_sum().entry_sum();
        let direct = oracle::enumerate(m, 1, oracle::Predicate::SuitablyConnected, &limits)
            .unwrap()
            .count();
        assert_eq!(total, BigUint::from(direct), "column count at height {m}");
    }
}

#[test]
fn quad_matrices_partition_columns_by_vertical_words() {
    // entry (i, j) of each companion matrix counts the single columns with
    // left word i, right word j and the matching (bottom, top) word pattern
    let limits = limits();
    for m in 1..=3usize {
        let quad = matrix::build_quad(m, &limits).unwrap();
        let mut buckets: BTreeMap<(bool, bool, u64, u64), u64> = BTreeMap::new();
        for col in oracle::enumerate(m, 1, oracle::Predicate::SuitablyConnected, &limits).unwrap() {
            let bottom = col.boundary_word(Side::Bottom).letters()[0];
            let top = col.boundary_word(Side::Top).letters()[0];
            let i = col.boundary_word(Side::Left).index();
            let j = col.boundary_word(Side::Right).index();
            *buckets.entry((bottom, bottom == top, i, j)).or_default() += 1;
        }
        for (name, matrix, bottom, same) in [
            ("X+", &quad.x_plus, false, true),
            ("X-", &quad.x_minus, false, false),
            ("O+", &quad.o_plus, true, true),
            ("O-", &quad.o_minus, true, false),
        ] {
            for i in 0..(1usize << m) {
                for j in 0..(1usize << m) {
                    let expected =
                        buckets.get(&(bottom, same, i as u64, j as u64)).copied().unwrap_or(0);
                    assert_eq!(
                        matrix.get(i, j),
                        &BigUint::from(expected),
                        "{name} entry ({i},{j}) at height {m}"
                    );
                }
            }
        }
    }
}

#[test]
fn general_engine_agrees_with_both_fast_paths() {
    let limits = limits();
    for m in 1..=5usize {
        for n in 1..=5usize {
            if gcd(m, n) != 1 {
                continue;
            }
            assert_eq!(
                count::count_toroidal_general(m, n, &limits).unwrap().value,
                count::count_toroidal_coprime(m, n, &limits).unwrap().value,
                "general vs co-prime at ({m},{n})"
            );
        }
    }
    for p in [2usize, 3] {
        assert_eq!(
            count::count_toroidal_general(p, p, &limits).unwrap().value,
            count::count_toroidal_prime_square(p, &limits).unwrap().value,
            "general vs prime-square at ({p},{p})"
        );
    }
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

#[test]
fn suitably_connected_2x2_count_matches_matrix_norm() {
    let limits = limits();
    let norm = matrix::build_quad(2, &limits).unwrap().full_sum().pow(2).entry_sum();
    let direct = oracle::enumerate(2, 2, oracle::Predicate::SuitablyConnected, &limits)
        .unwrap()
        .count();
    assert_eq!(norm, BigUint::from(direct));
}

#[test]
fn period_counts_are_transpose_symmetric() {
    let limits = limits();
    for m in 1..=6 {
        for n in m..=6 {
            assert_eq!(
                count::count_period(m, n, &limits).unwrap().value,
                count::count_period(n, m, &limits).unwrap().value,
                "transpose symmetry at ({m},{n})"
            );
        }
    }
}

#[test]
fn shifted_trace_counts_rotated_word_columns() {
    // tr along the 1-rotation of the height-2 column matrix counts the
    // suitably connected (2,1)-mosaics with equal top/bottom words whose
    // right word is the rotation of the left word
    let limits = limits();
    let direct = oracle::enumerate(2, 1, oracle::Predicate::SuitablyConnected, &limits)
        .unwrap()
        .filter(|m| {
            m.boundary_word(Side::Top) == m.boundary_word(Side::Bottom)
                && m.boundary_word(Side::Right).index()
                    == rotation_index(m.boundary_word(Side::Left).index(), 1, 2)
        })
        .count();
    let trace = matrix::build_quad(2, &limits)
        .unwrap()
        .period_sum()
        .shifted_trace(1)
        .unwrap();
    assert_eq!(trace, BigUint::from(direct));
    assert_eq!(trace, BigUint::from(23u32));
}

#[test]
fn knot_mosaics_are_period_mosaics() {
    let limits = limits();
    for m in oracle::enumerate(3, 3, oracle::Predicate::Knot, &limits).unwrap() {
        assert!(m.is_period_mosaic());
    }
}

#[test]
fn toroidal_canonicalization_matches_theorem_at_2x3() {
    let limits = limits();
    assert_eq!(
        oracle::count_toroidal_by_canonicalization(2, 3, &limits).unwrap(),
        count::count_toroidal_coprime(2, 3, &limits).unwrap().value
    );
}
