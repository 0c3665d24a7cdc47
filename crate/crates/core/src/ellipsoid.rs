//! ECH generator data of an ellipsoid boundary.
//!
//! The boundary of the ellipsoid `E(a,b)` (with `a/b` irrational) carries
//! exactly two embedded Reeb orbits: one of action `a` whose linearized flow
//! rotates by angle `2π·a/b`, and one of action `b` rotating by `2π·b/a`.
//! Both are elliptic, so the generators of the chain complex are simply the
//! pairs `γ₁^{m₁}γ₂^{m₂}` with nonnegative multiplicities, every generator is
//! admissible, and every grading is even — the differential vanishes and the
//! homology can be read off by counting generators per grading.
//!
//! Gradings are computed two independent ways: by the closed formula
//!
//! ```text
//! I = 2( m₁ + m₂ + m₁m₂ + Σ_{k≤m₁} ⌊k·a/b⌋ + Σ_{k≤m₂} ⌊k·b/a⌋ )
//! ```
//!
//! and by counting lattice points in the triangle cut out by the axes and the
//! line of slope `-a/b` through `(m₁, m₂)`, as `I = 2(|T ∩ ℤ²| - 1)`. Since
//! `a/b` is rational here, ties on the boundary line are broken by the
//! ellipsoid's tilt; the tilt also makes the action-ordered sweep of all
//! generators a strict total order.
//!
//! ```
//! use ech_core::ellipsoid::{Ellipsoid, EllipsoidGenerator};
//! use ech_core::exact::{Rational, Tilt};
//!
//! let e = Ellipsoid::new(Rational::one(), Rational::one(), Tilt::Minus).unwrap();
//! let g = EllipsoidGenerator::new(1, 1);
//! let breakdown = e.grading(g);
//! assert_eq!(breakdown.total, 8.into());
//! assert_eq!(e.grading_by_lattice(g), 8.into());
//! ```

use std::cmp::Reverse;
use std::collections::{BinaryHeap, BTreeMap};
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer as _;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::exact::{PerturbedRational, Rational, Tilt};
use crate::orbit::{OrbitSet, ReebOrbit};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EllipsoidError {
    #[error("ellipsoid semi-axes must be positive")]
    NonpositiveAxis,
    #[error("ellipsoid tilt must be + or -; it stands in for an irrational axis ratio")]
    ZeroTilt,
    /// The generator count in some grading came out different from 1. The
    /// sweep argument proves this impossible, so seeing it means a bug.
    #[error("homology mismatch: grading {grading} has {count} generators instead of 1")]
    HomologyMismatch { grading: u64, count: u64 },
}

/// The ellipsoid `E(a,b) = {π|z₁|²/a + π|z₂|²/b ≤ 1}` with a tilt fixing on
/// which side of the rational ratio `a/b` the simulated irrational sits.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Ellipsoid {
    a: Rational,
    b: Rational,
    tilt: Tilt,
}

impl Ellipsoid {
    pub fn new(a: Rational, b: Rational, tilt: Tilt) -> Result<Self, EllipsoidError> {
        if !a.is_positive() || !b.is_positive() {
            return Err(EllipsoidError::NonpositiveAxis);
        }
        if tilt == Tilt::Zero {
            return Err(EllipsoidError::ZeroTilt);
        }
        Ok(Ellipsoid { a, b, tilt })
    }

    pub fn a(&self) -> &Rational {
        &self.a
    }

    pub fn b(&self) -> &Rational {
        &self.b
    }

    pub fn tilt(&self) -> Tilt {
        self.tilt
    }

    /// The perturbed ratio `a/b`: rotation number of the short orbit.
    pub fn slope(&self) -> PerturbedRational {
        PerturbedRational::new(&self.a / &self.b, self.tilt)
    }

    /// The perturbed ratio `b/a = 1/slope`, with the tilt flipped.
    pub fn co_slope(&self) -> PerturbedRational {
        self.slope()
            .reciprocal()
            .expect("axis ratio is positive, so never zero")
    }

    /// The embedded orbit of action `a` (the circle `z₂ = 0`), elliptic with
    /// rotation number `a/b`.
    pub fn orbit_a(&self) -> ReebOrbit {
        ReebOrbit::elliptic("gamma1", self.slope(), self.a.clone())
            .expect("positive action and nonzero tilt by construction")
    }

    /// The embedded orbit of action `b` (the circle `z₁ = 0`), elliptic with
    /// rotation number `b/a`.
    pub fn orbit_b(&self) -> ReebOrbit {
        ReebOrbit::elliptic("gamma2", self.co_slope(), self.b.clone())
            .expect("positive action and nonzero tilt by construction")
    }

    /// The generator `γ₁^{m₁}γ₂^{m₂}` as an orbit set.
    pub fn orbit_set(&self, g: EllipsoidGenerator) -> OrbitSet {
        let mut entries = Vec::new();
        if g.m1 > 0 {
            entries.push((self.orbit_a(), g.m1));
        }
        if g.m2 > 0 {
            entries.push((self.orbit_b(), g.m2));
        }
        OrbitSet::new(entries).expect("distinct labels and positive multiplicities")
    }

    /// Symplectic action `a·m₁ + b·m₂` of a generator.
    pub fn action(&self, g: EllipsoidGenerator) -> Rational {
        &self.a * g.m1 + &self.b * g.m2
    }

    fn sweep_key(&self, g: EllipsoidGenerator) -> SweepKey {
        SweepKey {
            action: self.action(g),
            tiebreak: signed_by_tilt(self.tilt, g.m1),
        }
    }

    /// The grading `I(α) = c₁ + Q + CZ` of `α = γ₁^{m₁}γ₂^{m₂}`, term by term.
    ///
    /// With the disk-induced trivialization, `c₁ = m₁ + m₂`, `Q = 2m₁m₂`, and
    /// the Conley-Zehnder term sums `2⌊k·a/b⌋+1` over `k ≤ m₁` and
    /// `2⌊k·b/a⌋+1` over `k ≤ m₂`. The total is always even and nonnegative;
    /// the empty generator `(0,0)` has grading 0.
    pub fn grading(&self, g: EllipsoidGenerator) -> GradingBreakdown {
        let c1 = BigInt::from(g.m1) + BigInt::from(g.m2);
        let q = 2 * BigInt::from(g.m1) * BigInt::from(g.m2);
        let mut cz = BigInt::zero();
        let slope = self.slope();
        for k in 1..=g.m1 {
            cz += 2 * slope
                .floor_multiple(k)
                .expect("ellipsoid tilt is nonzero")
                + 1;
        }
        let co_slope = self.co_slope();
        for k in 1..=g.m2 {
            cz += 2 * co_slope
                .floor_multiple(k)
                .expect("ellipsoid tilt is nonzero")
                + 1;
        }
        let total: BigInt = &c1 + &q + &cz;
        debug_assert!(!total.is_negative() && total.is_even());
        GradingBreakdown { c1, q, cz, total }
    }

    /// The grading as twice (lattice points in the triangle minus one),
    /// computed by per-row counting. Always equals `grading(g).total`.
    pub fn grading_by_lattice(&self, g: EllipsoidGenerator) -> BigInt {
        let triangle = LatticeTriangle::new(g, self.slope());
        2 * (triangle.lattice_point_count() - 1)
    }

    /// The first `count` generators in the action-ordered sweep, together
    /// with their gradings and actions.
    ///
    /// Generators are ordered by the key `(a·m₁ + b·m₂, tilt·m₁)`: action
    /// first, ties broken the way the infinitesimally perturbed ratio would
    /// break them. The `k`-th entry (1-based) has grading `2(k-1)`.
    pub fn sorted_generators(&self, count: u64) -> Vec<GeneratorRecord> {
        let mut heap: BinaryHeap<Reverse<SweepItem>> = BinaryHeap::new();
        let origin = EllipsoidGenerator::new(0, 0);
        heap.push(Reverse(SweepItem {
            key: self.sweep_key(origin),
            generator: origin,
        }));
        let mut out = Vec::with_capacity(count.min(1 << 20) as usize);
        while (out.len() as u64) < count {
            let Reverse(item) = heap.pop().expect("frontier is never empty");
            let g = item.generator;
            out.push(GeneratorRecord {
                generator: g,
                grading: self.grading(g).total,
                action: item.key.action,
            });
            let right = EllipsoidGenerator::new(g.m1 + 1, g.m2);
            heap.push(Reverse(SweepItem {
                key: self.sweep_key(right),
                generator: right,
            }));
            if g.m1 == 0 {
                let up = EllipsoidGenerator::new(0, g.m2 + 1);
                heap.push(Reverse(SweepItem {
                    key: self.sweep_key(up),
                    generator: up,
                }));
            }
        }
        out
    }

    /// Every generator of action strictly below `limit`, in row order
    /// (`m₁` outer, `m₂` inner). Exact: `m₁` runs to `⌊limit/a⌋` and `m₂` to
    /// `⌊(limit - a·m₁)/b⌋`.
    pub fn generators_with_action_below(&self, limit: &Rational) -> Vec<EllipsoidGenerator> {
        let mut out = Vec::new();
        if !limit.is_positive() {
            return out;
        }
        let mut m1 = 0u64;
        loop {
            let remainder = limit - &(&self.a * m1);
            if !remainder.is_positive() {
                break;
            }
            let mut m2 = 0u64;
            loop {
                if (&self.b * m2) < remainder {
                    out.push(EllipsoidGenerator::new(m1, m2));
                    m2 += 1;
                } else {
                    break;
                }
            }
            m1 += 1;
        }
        out
    }

    /// Generator counts per grading, for all gradings `≤ 2n`.
    ///
    /// Enumerates every generator with `m₁ + m₂ ≤ n` (complete, because the
    /// grading is at least `2(m₁ + m₂)`), computes each grading by the closed
    /// formula, and checks the expected answer: exactly one generator in each
    /// even grading `0, 2, …, 2n` and none in odd gradings. Any other count
    /// is reported as [`EllipsoidError::HomologyMismatch`].
    pub fn homology_table(&self, n: u64) -> Result<BTreeMap<u64, u64>, EllipsoidError> {
        let limit = 2 * n;
        let mut counts: BTreeMap<u64, u64> = BTreeMap::new();
        for m1 in 0..=n {
            for m2 in 0..=(n - m1) {
                let total = self.grading(EllipsoidGenerator::new(m1, m2)).total;
                if let Some(grading) = total.to_u64() {
                    if grading <= limit {
                        *counts.entry(grading).or_insert(0) += 1;
                    }
                }
            }
        }
        for (&grading, &count) in &counts {
            if grading % 2 == 1 || count != 1 {
                return Err(EllipsoidError::HomologyMismatch { grading, count });
            }
        }
        let mut grading = 0;
        while grading <= limit {
            if !counts.contains_key(&grading) {
                return Err(EllipsoidError::HomologyMismatch { grading, count: 0 });
            }
            grading += 2;
        }
        Ok(counts)
    }
}

fn signed_by_tilt(tilt: Tilt, m1: u64) -> i128 {
    match tilt {
        Tilt::Plus => m1 as i128,
        Tilt::Minus => -(m1 as i128),
        Tilt::Zero => unreachable!("ellipsoids reject tilt 0"),
    }
}

/// A generator `γ₁^{m₁}γ₂^{m₂}` of the ellipsoid chain complex. Both orbits
/// are elliptic, so every pair of multiplicities is admissible.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct EllipsoidGenerator {
    pub m1: u64,
    pub m2: u64,
}

impl EllipsoidGenerator {
    pub fn new(m1: u64, m2: u64) -> Self {
        EllipsoidGenerator { m1, m2 }
    }
}

impl fmt::Display for EllipsoidGenerator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.m1, self.m2)
    }
}

/// The three summands of the grading of a generator, plus their total.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradingBreakdown {
    /// Relative first Chern class term, `m₁ + m₂`.
    pub c1: BigInt,
    /// Relative intersection pairing term, `2m₁m₂`.
    pub q: BigInt,
    /// Total Conley-Zehnder term over all iterates.
    pub cz: BigInt,
    /// The grading `c1 + q + cz`; always even and nonnegative.
    pub total: BigInt,
}

/// A generator together with its grading and action, as produced by the sweep.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeneratorRecord {
    pub generator: EllipsoidGenerator,
    pub grading: BigInt,
    pub action: Rational,
}

impl Serialize for GeneratorRecord {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut s = serializer.serialize_struct("GeneratorRecord", 4)?;
        s.serialize_field("m1", &self.generator.m1)?;
        s.serialize_field("m2", &self.generator.m2)?;
        match self.grading.to_i64() {
            Some(g) => s.serialize_field("grading", &g)?,
            None => s.serialize_field("grading", &self.grading.to_string())?,
        }
        s.serialize_field("action", &self.action)?;
        s.end()
    }
}

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord)]
struct SweepKey {
    action: Rational,
    tiebreak: i128,
}

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord)]
struct SweepItem {
    key: SweepKey,
    generator: EllipsoidGenerator,
}

/// The triangle bounded by the coordinate axes and the line of (perturbed)
/// slope `-a/b` through the corner `(m₁, m₂)`.
///
/// Only the ratio `a/b` matters for which lattice points lie inside, so the
/// triangle is stored as corner plus perturbed slope. A point `(x, y)` is
/// inside iff its key `(slope·x + y, tilt·x)` is lexicographically at most
/// the corner's key — the exact limiting behavior of `a/b ± ε`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LatticeTriangle {
    corner: EllipsoidGenerator,
    slope: PerturbedRational,
}

impl LatticeTriangle {
    /// Panics on a nonpositive or untilted slope; ellipsoids always supply a
    /// positive tilted one.
    pub fn new(corner: EllipsoidGenerator, slope: PerturbedRational) -> Self {
        assert!(slope.value().is_positive(), "slope must be positive");
        assert!(slope.tilt() != Tilt::Zero, "slope must carry a tilt");
        LatticeTriangle { corner, slope }
    }

    pub fn corner(&self) -> EllipsoidGenerator {
        self.corner
    }

    pub fn slope(&self) -> &PerturbedRational {
        &self.slope
    }

    /// Number of lattice points in the triangle, by closed-form counting of
    /// each horizontal row (no inner loop over `x`).
    ///
    /// Scaling the slope `p/q` clears denominators: the row `y` contributes
    /// the points `0 ≤ x < (A' - qy)/p` with `A' = p·m₁ + q·m₂`, plus the
    /// boundary point `x = (A' - qy)/p` when that is an integer and the tilt
    /// puts it inside (`x ≤ m₁` for tilt `+`, `x ≥ m₁` for tilt `-`).
    pub fn lattice_point_count(&self) -> BigInt {
        let p = self.slope.value().numer();
        let q = self.slope.value().denom();
        let m1 = BigInt::from(self.corner.m1);
        let total_scaled = p * &m1 + q * BigInt::from(self.corner.m2);

        let mut count = BigInt::zero();
        let y_max = &total_scaled / q;
        let mut y = BigInt::zero();
        while y <= y_max {
            let row_budget = &total_scaled - q * &y;
            let (whole, rem) = num_integer::div_rem(row_budget, p.clone());
            if rem.is_zero() {
                // x = whole sits exactly on the line; the tilt decides.
                let on_boundary = match self.slope.tilt() {
                    Tilt::Plus => whole <= m1,
                    Tilt::Minus => whole >= m1,
                    Tilt::Zero => unreachable!("checked at construction"),
                };
                count += whole + if on_boundary { 1 } else { 0 };
            } else {
                count += whole + 1;
            }
            y += 1;
        }
        count
    }
}

/// Number of pairs `(m, n)` of nonnegative integers with `a·m + b·n < limit`
/// (strict), counted row by row in closed form.
pub fn filtered_count(a: &Rational, b: &Rational, limit: &Rational) -> u64 {
    assert!(a.is_positive() && b.is_positive(), "weights must be positive");
    if !limit.is_positive() {
        return 0;
    }
    let mut count = BigInt::zero();
    let mut n = 0u64;
    loop {
        let budget = limit - &(b * n);
        if !budget.is_positive() {
            break;
        }
        // #{m >= 0 : a*m < budget} = ceil(budget/a).
        count += (&budget / a).ceil_int();
        n += 1;
    }
    count.to_u64().expect("count fits in 64 bits")
}
