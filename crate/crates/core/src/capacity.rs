//! ECH capacity sequences and the embedding obstructions they carry.
//!
//! The capacity `(a,b)_k` is the `k`-th smallest entry, counted with
//! repetition, of the array `(m·a + n·b)` over nonnegative integers `m, n`.
//! For a ball this gives `(0, a, a, 2a, 2a, 2a, 3a, …)`. A symplectic
//! embedding `E(a,b) ↪ E(c,d)` forces `(a,b)_k ≤ (c,d)_k` for every `k`, so a
//! single index where the inequality fails is a certificate that no embedding
//! exists. The failure of the converse direction is never claimed: checking
//! finitely many `k` certifies nothing about embeddability.
//!
//! ```
//! use ech_core::capacity::{capacity_sequence, check_embedding, ObstructionVerdict};
//! use ech_core::exact::Rational;
//!
//! let ball = capacity_sequence(Rational::one(), Rational::one(), 7);
//! let printed: Vec<String> = ball.values().iter().map(|v| v.to_string()).collect();
//! assert_eq!(printed, ["0", "1", "1", "2", "2", "2", "3"]);
//!
//! // A volume-violating embedding is obstructed at k = 2.
//! let verdict = check_embedding(
//!     &Rational::from(2i64), &Rational::from(2i64),
//!     &Rational::one(), &Rational::one(),
//!     10,
//! );
//! assert!(matches!(verdict, ObstructionVerdict::Obstructed { k: 2, .. }));
//! ```

use std::cmp::Reverse;
use std::collections::BinaryHeap;

use serde::Serialize;

use crate::ellipsoid::filtered_count;
use crate::exact::Rational;

/// The first `K` ECH capacities of `E(a,b)`: nondecreasing, starting at 0,
/// every entry of the form `m·a + n·b`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CapacitySequence {
    a: Rational,
    b: Rational,
    values: Vec<Rational>,
}

impl CapacitySequence {
    pub fn a(&self) -> &Rational {
        &self.a
    }

    pub fn b(&self) -> &Rational {
        &self.b
    }

    pub fn values(&self) -> &[Rational] {
        &self.values
    }

    pub fn len(&self) -> u64 {
        self.values.len() as u64
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// The capacity `(a,b)_k`, 1-based. Panics if `k` is 0 or past the end.
    pub fn value(&self, k: u64) -> &Rational {
        assert!(k >= 1 && k <= self.len(), "k must be in 1..=len");
        &self.values[(k - 1) as usize]
    }
}

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord)]
struct RowHead {
    value: Rational,
    n: u64,
    m: u64,
}

/// Lazy merge of the rows `{m·a + n·b : m ≥ 0}` indexed by `n`, yielding the
/// sorted multiset `{m·a + n·b}` one entry at a time.
///
/// Value ties break by `n`; row `n+1` enters the heap when row `n` is first
/// consumed, so no enumeration bound has to be guessed and the heap never
/// holds more than one head per opened row.
pub struct CapacityStream {
    a: Rational,
    b: Rational,
    heap: BinaryHeap<Reverse<RowHead>>,
}

impl CapacityStream {
    pub fn new(a: Rational, b: Rational) -> Self {
        assert!(a.is_positive() && b.is_positive(), "axes must be positive");
        let mut heap = BinaryHeap::new();
        heap.push(Reverse(RowHead {
            value: Rational::zero(),
            n: 0,
            m: 0,
        }));
        CapacityStream { a, b, heap }
    }
}

impl Iterator for CapacityStream {
    type Item = Rational;

    fn next(&mut self) -> Option<Rational> {
        let Reverse(head) = self.heap.pop().expect("heap holds one head per open row");
        self.heap.push(Reverse(RowHead {
            value: &head.value + &self.a,
            n: head.n,
            m: head.m + 1,
        }));
        if head.m == 0 {
            self.heap.push(Reverse(RowHead {
                value: &head.value + &self.b,
                n: head.n + 1,
                m: 0,
            }));
        }
        Some(head.value)
    }
}

/// The first `count` entries of the sorted multiset `{m·a + n·b}`.
pub fn capacity_sequence(a: Rational, b: Rational, count: u64) -> CapacitySequence {
    assert!(count >= 1, "need at least one capacity");
    let values: Vec<Rational> = CapacityStream::new(a.clone(), b.clone())
        .take(count as usize)
        .collect();
    debug_assert!(values.windows(2).all(|w| w[0] <= w[1]));
    CapacitySequence { a, b, values }
}

/// Outcome of comparing two capacity sequences up to an index bound.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ObstructionVerdict {
    /// `(a,b)_k > (c,d)_k` at the stated (least such) `k`: `E(a,b)` does not
    /// symplectically embed in `E(c,d)`.
    Obstructed { k: u64, lhs: Rational, rhs: Rational },
    /// No violation among `k ≤ K`. Not a certificate: the monotonicity
    /// condition quantifies over all positive `k`.
    NoObstructionUpTo(u64),
}

/// Tests `(a,b)_k ≤ (c,d)_k` for `k = 1..=K`, reporting the first failure.
/// Streams both sequences, so nothing of size `K` is ever materialized.
pub fn check_embedding(
    a: &Rational,
    b: &Rational,
    c: &Rational,
    d: &Rational,
    count: u64,
) -> ObstructionVerdict {
    let source = CapacityStream::new(a.clone(), b.clone());
    let target = CapacityStream::new(c.clone(), d.clone());
    for (k, (lhs, rhs)) in source.zip(target).take(count as usize).enumerate() {
        if lhs > rhs {
            return ObstructionVerdict::Obstructed {
                k: k as u64 + 1,
                lhs,
                rhs,
            };
        }
    }
    ObstructionVerdict::NoObstructionUpTo(count)
}

/// The action-filtered counting form of the obstruction at level `limit`:
/// true iff the target count `#{c·m + d·n < limit}` does not exceed the
/// source count `#{a·m + b·n < limit}`.
pub fn counts_dominate(
    a: &Rational,
    b: &Rational,
    c: &Rational,
    d: &Rational,
    limit: &Rational,
) -> bool {
    filtered_count(c, d, limit) <= filtered_count(a, b, limit)
}

/// The volume consequence of capacity monotonicity: `a·b ≤ c·d`.
pub fn volume_consistent(a: &Rational, b: &Rational, c: &Rational, d: &Rational) -> bool {
    a * b <= c * d
}

/// A lower bound for the ball-embedding function at `a`, with the index that
/// attains it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FLowerBound {
    pub bound: Rational,
    pub witness_k: u64,
}

/// `max_{2 ≤ k ≤ K} (a,1)_k / (1,1)_k`, an exact lower bound for the
/// smallest ball `E(c,c)` admitting a symplectic embedding of `E(a,1)`.
///
/// Requires `a ≥ 1` and `K ≥ 2`. The witness is the smallest maximizing `k`.
/// The bound never exceeds `a` (the trivial inclusion `E(a,1) ⊆ E(a,a)`) and
/// is nondecreasing in `K`.
pub fn f_lower_bound(a: &Rational, k_max: u64) -> FLowerBound {
    assert!(a >= &Rational::one(), "a must be at least 1");
    assert!(k_max >= 2, "need at least k = 2");
    let stretched = capacity_sequence(a.clone(), Rational::one(), k_max);
    let round = capacity_sequence(Rational::one(), Rational::one(), k_max);
    let mut best: Option<FLowerBound> = None;
    for k in 2..=k_max {
        // (1,1)_k >= 1 for k >= 2, so the ratio is well defined.
        let ratio = stretched.value(k) / round.value(k);
        match &best {
            Some(b) if b.bound >= ratio => {}
            _ => best = Some(FLowerBound {
                bound: ratio,
                witness_k: k,
            }),
        }
    }
    best.expect("k_max >= 2 yields at least one ratio")
}

/// One sample of the lower-bound staircase.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StaircasePoint {
    pub a: Rational,
    pub bound: Rational,
}

/// Tabulates [`f_lower_bound`] at `samples` evenly spaced points of
/// `[a_min, a_max]`, endpoints included.
///
/// Requires `1 ≤ a_min < a_max`, `samples ≥ 2`, `K ≥ 2`.
pub fn staircase_data(
    a_min: &Rational,
    a_max: &Rational,
    samples: u64,
    k_max: u64,
) -> Vec<StaircasePoint> {
    assert!(a_min >= &Rational::one(), "a_min must be at least 1");
    assert!(a_min < a_max, "need a_min < a_max");
    assert!(samples >= 2, "need at least two samples");
    let step = (a_max - a_min) / Rational::from(samples - 1);
    (0..samples)
        .map(|i| {
            let a = a_min + &(&step * i);
            let bound = f_lower_bound(&a, k_max).bound;
            StaircasePoint { a, bound }
        })
        .collect()
}
