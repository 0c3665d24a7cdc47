//! Brute-force reference computations.
//!
//! Each function here recomputes something the main modules compute, by the
//! most naive route available: enumerate, sort, double-loop. They share no
//! code with the implementations they check, so agreement between the two
//! routes is meaningful. The CLI exposes them under the `oracle` subcommand;
//! the test suites lean on them heavily.

use num_bigint::BigInt;
use num_traits::Zero;

use crate::ellipsoid::{Ellipsoid, EllipsoidGenerator};
use crate::exact::{Rational, Tilt};

/// The first `count` capacities of `E(a,b)` by enumerate-and-sort: grow a
/// bound `B` until the multiset `{m·a + n·b ≤ B}` has at least `count`
/// entries, sort it ascending, truncate.
pub fn capacities_by_sorting(a: &Rational, b: &Rational, count: u64) -> Vec<Rational> {
    assert!(a.is_positive() && b.is_positive(), "axes must be positive");
    assert!(count >= 1, "need at least one capacity");
    let mut bound = if a > b { a.clone() } else { b.clone() };
    loop {
        let mut values = Vec::new();
        let mut m = 0u64;
        while (a * m) <= bound {
            let base = a * m;
            let mut n = 0u64;
            loop {
                let v = &base + &(b * n);
                if v > bound {
                    break;
                }
                values.push(v);
                n += 1;
            }
            m += 1;
        }
        if values.len() as u64 >= count {
            values.sort();
            values.truncate(count as usize);
            return values;
        }
        bound = &bound * 2u64;
    }
}

/// `#{(m,n) ∈ ℕ² : a·m + b·n < limit}` by a plain double loop.
pub fn count_by_double_loop(a: &Rational, b: &Rational, limit: &Rational) -> u64 {
    assert!(a.is_positive() && b.is_positive(), "weights must be positive");
    let mut count = 0u64;
    let mut m = 0u64;
    while &(a * m) < limit {
        let base = a * m;
        let mut n = 0u64;
        while &(&base + &(b * n)) < limit {
            count += 1;
            n += 1;
        }
        m += 1;
    }
    count
}

/// The grading of a generator by double-loop lattice counting: walk every
/// candidate point of the triangle, compare actions exactly, break boundary
/// ties by the tilt, and return twice (count minus one).
pub fn grading_by_double_loop(e: &Ellipsoid, g: EllipsoidGenerator) -> BigInt {
    let corner_action = e.action(g);
    let mut count = BigInt::zero();
    let mut x = 0u64;
    while (e.a() * x) <= corner_action {
        let mut y = 0u64;
        loop {
            let action = e.action(EllipsoidGenerator::new(x, y));
            if action > corner_action {
                break;
            }
            if action < corner_action {
                count += 1;
            } else {
                // On the boundary line: inside iff tilt·x <= tilt·m1.
                let inside = match e.tilt() {
                    Tilt::Plus => x <= g.m1,
                    Tilt::Minus => x >= g.m1,
                    Tilt::Zero => unreachable!("ellipsoids reject tilt 0"),
                };
                if inside {
                    count += 1;
                }
            }
            y += 1;
        }
        x += 1;
    }
    2 * (count - 1)
}
