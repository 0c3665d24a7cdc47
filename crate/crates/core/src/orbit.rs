//! Reeb orbits, orbit sets, Conley-Zehnder indices, and end partitions.
//!
//! An orbit is elliptic (linearized return map rotates by angle `2πθ`) or
//! hyperbolic (real eigenvalues). Orbit sets pair embedded orbits with
//! positive multiplicities; a set is admissible when every hyperbolic orbit
//! carries multiplicity 1. The Conley-Zehnder index of the `k`-th iterate of
//! an elliptic orbit is `2⌊kθ⌋ + 1`, computed here with the tilt machinery of
//! [`crate::exact`] so that degenerate rotations are impossible by
//! construction.

use num_bigint::BigInt;
use serde::ser::SerializeSeq;
use serde::{Serialize, Serializer};
use std::collections::BTreeSet;
use std::fmt;
use thiserror::Error;

use crate::exact::{PerturbedRational, Rational, Tilt};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OrbitError {
    /// The iterate formula `2⌊kθ⌋+1` only applies to elliptic orbits.
    #[error("orbit `{label}` is hyperbolic; the Conley-Zehnder iterate formula needs an elliptic orbit")]
    NotElliptic { label: String },
    /// An elliptic rotation with tilt 0 would make the return map have 1 as
    /// an eigenvalue at some iterate.
    #[error("elliptic rotation must carry a nonzero tilt; tilt 0 means a degenerate orbit")]
    DegenerateRotation,
    #[error("orbit action must be positive")]
    NonpositiveAction,
    #[error("orbit labels must be distinct, `{0}` repeats")]
    DuplicateLabel(String),
    #[error("orbit multiplicities must be at least 1")]
    ZeroMultiplicity,
    /// Elliptic end partitions beyond the `m <= 2` cases have no rule here;
    /// refusing beats guessing.
    #[error("no elliptic partition rule for multiplicity {m} with this rotation; only m = 1, and m = 2 with rotation in (0, 1/2), are covered")]
    Unspecified { m: u64 },
}

/// Sign of the (real) eigenvalues of a hyperbolic return map.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum EigenvalueSign {
    Positive,
    Negative,
}

impl fmt::Display for EigenvalueSign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            EigenvalueSign::Positive => "+",
            EigenvalueSign::Negative => "-",
        })
    }
}

/// Linearized return map type of an embedded Reeb orbit.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum OrbitKind {
    /// Eigenvalues on the unit circle; rotation by angle `2πθ` with `θ` the
    /// full (not mod 1) rotation number.
    Elliptic { rotation: PerturbedRational },
    /// Real eigenvalues of the given sign.
    Hyperbolic { eigenvalue_sign: EigenvalueSign },
}

/// An embedded Reeb orbit with its symplectic action `∫γ λ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReebOrbit {
    label: String,
    kind: OrbitKind,
    action: Rational,
}

impl ReebOrbit {
    /// An elliptic orbit. The rotation must carry a nonzero tilt and the
    /// action must be positive.
    pub fn elliptic(
        label: impl Into<String>,
        rotation: PerturbedRational,
        action: Rational,
    ) -> Result<Self, OrbitError> {
        if rotation.tilt() == Tilt::Zero {
            return Err(OrbitError::DegenerateRotation);
        }
        if !action.is_positive() {
            return Err(OrbitError::NonpositiveAction);
        }
        Ok(ReebOrbit {
            label: label.into(),
            kind: OrbitKind::Elliptic { rotation },
            action,
        })
    }

    /// A hyperbolic orbit with eigenvalues of the given sign.
    pub fn hyperbolic(
        label: impl Into<String>,
        eigenvalue_sign: EigenvalueSign,
        action: Rational,
    ) -> Result<Self, OrbitError> {
        if !action.is_positive() {
            return Err(OrbitError::NonpositiveAction);
        }
        Ok(ReebOrbit {
            label: label.into(),
            kind: OrbitKind::Hyperbolic { eigenvalue_sign },
            action,
        })
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn kind(&self) -> &OrbitKind {
        &self.kind
    }

    pub fn action(&self) -> &Rational {
        &self.action
    }

    pub fn is_hyperbolic(&self) -> bool {
        matches!(self.kind, OrbitKind::Hyperbolic { .. })
    }

    /// Conley-Zehnder index `2⌊kθ⌋ + 1` of the `k`-th iterate (`k >= 1`).
    ///
    /// Always odd. Hyperbolic orbits are rejected: no single formula covers
    /// them and nothing in this crate needs one.
    pub fn conley_zehnder(&self, k: u64) -> Result<BigInt, OrbitError> {
        match &self.kind {
            OrbitKind::Elliptic { rotation } => {
                let floor = rotation
                    .floor_multiple(k)
                    .expect("elliptic rotations carry a nonzero tilt");
                Ok(2 * floor + 1)
            }
            OrbitKind::Hyperbolic { .. } => Err(OrbitError::NotElliptic {
                label: self.label.clone(),
            }),
        }
    }
}

/// A finite set of embedded Reeb orbits with positive multiplicities.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct OrbitSet {
    entries: Vec<(ReebOrbit, u64)>,
}

impl OrbitSet {
    /// The empty orbit set: a legitimate generator of action 0.
    pub fn empty() -> Self {
        OrbitSet::default()
    }

    /// Validates that multiplicities are positive and labels distinct.
    pub fn new(entries: Vec<(ReebOrbit, u64)>) -> Result<Self, OrbitError> {
        let mut seen = BTreeSet::new();
        for (orbit, multiplicity) in &entries {
            if *multiplicity == 0 {
                return Err(OrbitError::ZeroMultiplicity);
            }
            if !seen.insert(orbit.label().to_string()) {
                return Err(OrbitError::DuplicateLabel(orbit.label().to_string()));
            }
        }
        Ok(OrbitSet { entries })
    }

    pub fn entries(&self) -> &[(ReebOrbit, u64)] {
        &self.entries
    }

    /// True iff every hyperbolic orbit carries multiplicity 1; elliptic
    /// multiplicities are unconstrained. The empty set is admissible.
    pub fn is_admissible(&self) -> bool {
        self.entries
            .iter()
            .all(|(orbit, multiplicity)| !orbit.is_hyperbolic() || *multiplicity == 1)
    }

    /// Symplectic action `Σ mᵢ ∫ λ`; zero for the empty set.
    pub fn total_action(&self) -> Rational {
        self.entries
            .iter()
            .fold(Rational::zero(), |acc, (orbit, multiplicity)| {
                acc + orbit.action() * *multiplicity
            })
    }

    /// Total Conley-Zehnder term `Σᵢ Σ_{k=1}^{mᵢ} CZ(γᵢᵏ)`.
    ///
    /// Fails with [`OrbitError::NotElliptic`] if any orbit is hyperbolic.
    pub fn total_conley_zehnder(&self) -> Result<BigInt, OrbitError> {
        let mut sum = BigInt::from(0);
        for (orbit, multiplicity) in &self.entries {
            for k in 1..=*multiplicity {
                sum += orbit.conley_zehnder(k)?;
            }
        }
        Ok(sum)
    }
}

#[derive(Serialize)]
struct OrbitEntryRepr<'a> {
    label: &'a str,
    kind: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    rotation: Option<&'a PerturbedRational>,
    #[serde(skip_serializing_if = "Option::is_none")]
    eigenvalue_sign: Option<String>,
    action: &'a Rational,
    multiplicity: u64,
}

impl Serialize for OrbitSet {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut seq = serializer.serialize_seq(Some(self.entries.len()))?;
        for (orbit, multiplicity) in &self.entries {
            let (kind, rotation, eigenvalue_sign) = match orbit.kind() {
                OrbitKind::Elliptic { rotation } => ("elliptic", Some(rotation), None),
                OrbitKind::Hyperbolic { eigenvalue_sign } => {
                    ("hyperbolic", None, Some(eigenvalue_sign.to_string()))
                }
            };
            seq.serialize_element(&OrbitEntryRepr {
                label: orbit.label(),
                kind,
                rotation,
                eigenvalue_sign,
                action: orbit.action(),
                multiplicity: *multiplicity,
            })?;
        }
        seq.end()
    }
}

/// An unordered partition of a positive integer, stored with parts descending.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Partition {
    parts: Vec<u64>,
}

impl Partition {
    /// Panics on zero parts; partitions have positive parts by definition.
    pub fn new(mut parts: Vec<u64>) -> Self {
        assert!(parts.iter().all(|&p| p > 0), "partition parts must be positive");
        parts.sort_unstable_by(|x, y| y.cmp(x));
        Partition { parts }
    }

    pub fn parts(&self) -> &[u64] {
        &self.parts
    }

    pub fn total(&self) -> u64 {
        self.parts.iter().sum()
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, p) in self.parts.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, ")")
    }
}

/// Whether an end partition constrains positive (outgoing) or negative
/// (incoming) ends of a curve.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PartitionDirection {
    Incoming,
    Outgoing,
}

/// End partitions of a hyperbolic orbit; incoming and outgoing coincide.
///
/// Positive eigenvalues give `(1,…,1)`. Negative eigenvalues give `(2,…,2)`
/// for even multiplicity and `(2,…,2,1)` for odd.
pub fn hyperbolic_partition(sign: EigenvalueSign, m: u64) -> Partition {
    assert!(m >= 1, "multiplicity must be positive");
    match sign {
        EigenvalueSign::Positive => Partition::new(vec![1; m as usize]),
        EigenvalueSign::Negative => {
            let mut parts = vec![2; (m / 2) as usize];
            if m % 2 == 1 {
                parts.push(1);
            }
            Partition::new(parts)
        }
    }
}

/// The elliptic end partitions in the only cases with a stated rule:
/// multiplicity 1 (trivially `(1)`), and multiplicity 2 with rotation in
/// `(0, 1/2)`, where the outgoing partition is `(1,1)` and the incoming is
/// `(2)`. Everything else returns [`OrbitError::Unspecified`].
pub fn elliptic_partition_small(
    direction: PartitionDirection,
    m: u64,
    rotation: &PerturbedRational,
) -> Result<Partition, OrbitError> {
    assert!(m >= 1, "multiplicity must be positive");
    match m {
        1 => Ok(Partition::new(vec![1])),
        2 => {
            let above_zero = rotation.cmp_value(&Rational::zero()).is_gt();
            let below_half = rotation.cmp_value(&Rational::new(1, 2)).is_lt();
            if !(above_zero && below_half) {
                return Err(OrbitError::Unspecified { m });
            }
            Ok(match direction {
                PartitionDirection::Outgoing => Partition::new(vec![1, 1]),
                PartitionDirection::Incoming => Partition::new(vec![2]),
            })
        }
        _ => Err(OrbitError::Unspecified { m }),
    }
}
