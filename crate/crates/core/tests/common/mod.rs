//! Helpers shared by the integration suites: seeded random inputs and the
//! two-sided obstruction-formulation checker.
#![allow(dead_code)] // each test binary uses a different subset

use std::collections::BTreeSet;

use rand::rngs::StdRng;
use rand::Rng;

use ech_core::capacity::capacity_sequence;
use ech_core::ellipsoid::filtered_count;
use ech_core::exact::{Rational, Tilt};

/// A random rational in `[lo, hi]` with denominator at most `max_den`.
pub fn random_rational(rng: &mut StdRng, lo: i64, hi: i64, max_den: i64) -> Rational {
    let den = rng.random_range(1..=max_den);
    let num = rng.random_range(lo * den..=hi * den);
    Rational::new(num, den)
}

pub fn random_tilt(rng: &mut StdRng) -> Tilt {
    if rng.random_bool(0.5) {
        Tilt::Plus
    } else {
        Tilt::Minus
    }
}

/// Evaluates both formulations of the embedding obstruction over a matched
/// finite window and returns them as a pair, for bidirectional comparison.
///
/// Let `V = (a,b)_K`. The capacity side quantifies over `k ≤ K' + 1` where
/// `K' = #{a·m + b·n < V}` (note `K' < K`, so everything needed is within the
/// computed window). The counting side quantifies over all real `L ≤ V`,
/// which reduces to finitely many tests: both counts are step functions that
/// only jump past a value of one of the two multisets, so checking at every
/// such value in `(0, V]`, plus at `V` itself, covers every level.
pub fn obstruction_formulations(
    a: &Rational,
    b: &Rational,
    c: &Rational,
    d: &Rational,
    window: u64,
) -> (bool, bool) {
    let source = capacity_sequence(a.clone(), b.clone(), window);
    let target = capacity_sequence(c.clone(), d.clone(), window);
    let top = source.value(window).clone();

    let index_bound = filtered_count(a, b, &top) + 1;
    assert!(
        index_bound <= window,
        "fewer than K values lie strictly below (a,b)_K"
    );
    let capacity_side = (1..=index_bound).all(|k| source.value(k) <= target.value(k));

    let mut levels: BTreeSet<Rational> = BTreeSet::new();
    levels.insert(top.clone());
    for (wa, wb) in [(a, b), (c, d)] {
        let mut m = 0u64;
        loop {
            let base = wa * m;
            if base > top {
                break;
            }
            let mut n = 0u64;
            loop {
                let v = &base + &(wb * n);
                if v > top {
                    break;
                }
                if v.is_positive() {
                    levels.insert(v);
                }
                n += 1;
            }
            m += 1;
        }
    }
    let count_side = levels
        .iter()
        .all(|level| filtered_count(c, d, level) <= filtered_count(a, b, level));

    (capacity_side, count_side)
}
