//! Integer triples and the order-6 equivalence group acting on them.
//!
//! The group is generated by the *shift* `(a, b, c) -> (b, c, a)` and the
//! *involution* `(a, b, c) -> (-b, -a, -c)`. Together they satisfy
//! `s^3 = e`, `i^2 = e` and `i s i = s^2`, so the group is isomorphic to S3.
//! Every element can be written uniquely as `i^f s^k` with `f in {0, 1}` and
//! `k in {0, 1, 2}`, which is the representation used by [`GroupElement`].

use std::collections::BTreeSet;
use std::fmt;

use serde::Serialize;
use thiserror::Error;

/// Largest absolute value accepted in a triple component.
pub const COMPONENT_BOUND: i64 = 1_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("triple component {value} outside [-{bound}, {bound}]", bound = COMPONENT_BOUND)]
pub struct RangeError {
    pub value: i64,
}

/// Ordered integer triple `(a, b, c)`.
///
/// Ordering is lexicographic, which is what the canonical representative
/// of an orbit is defined against.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(into = "[i64; 3]")]
pub struct Triple {
    a: i64,
    b: i64,
    c: i64,
}

impl Triple {
    pub fn new(a: i64, b: i64, c: i64) -> Result<Self, RangeError> {
        for value in [a, b, c] {
            if !(-COMPONENT_BOUND..=COMPONENT_BOUND).contains(&value) {
                return Err(RangeError { value });
            }
        }
        Ok(Triple { a, b, c })
    }

    /// Construct from literals already known to be in range.
    pub(crate) const fn small(a: i64, b: i64, c: i64) -> Self {
        Triple { a, b, c }
    }

    pub fn a(&self) -> i64 {
        self.a
    }

    pub fn b(&self) -> i64 {
        self.b
    }

    pub fn c(&self) -> i64 {
        self.c
    }

    pub fn to_array(self) -> [i64; 3] {
        [self.a, self.b, self.c]
    }

    pub fn shift(self) -> Self {
        shift(self)
    }

    pub fn involution(self) -> Self {
        involution(self)
    }

    pub fn orbit(self) -> OrbitRecord {
        orbit(self)
    }

    pub fn canonical(self) -> Self {
        canonical(self)
    }
}

impl TryFrom<[i64; 3]> for Triple {
    type Error = RangeError;

    fn try_from([a, b, c]: [i64; 3]) -> Result<Self, Self::Error> {
        Triple::new(a, b, c)
    }
}

impl From<Triple> for [i64; 3] {
    fn from(t: Triple) -> Self {
        t.to_array()
    }
}

impl fmt::Display for Triple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{})", self.a, self.b, self.c)
    }
}

/// Left cyclic rotation.
pub fn shift(t: Triple) -> Triple {
    Triple { a: t.b, b: t.c, c: t.a }
}

/// Swap the first two components and negate all three.
///
/// Negation keeps a component inside `[-COMPONENT_BOUND, COMPONENT_BOUND]`,
/// so this never leaves the valid range.
pub fn involution(t: Triple) -> Triple {
    Triple { a: -t.b, b: -t.a, c: -t.c }
}

/// One of the six elements `i^flip ∘ s^rotation`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum GroupElement {
    /// `e`
    Identity,
    /// `s`
    Shift,
    /// `s2`
    Shift2,
    /// `i`
    Involution,
    /// `is`: shift first, then involution.
    InvShift,
    /// `is2`
    InvShift2,
}

impl GroupElement {
    pub const ALL: [GroupElement; 6] = [
        GroupElement::Identity,
        GroupElement::Shift,
        GroupElement::Shift2,
        GroupElement::Involution,
        GroupElement::InvShift,
        GroupElement::InvShift2,
    ];

    fn from_parts(flip: bool, rotation: u8) -> Self {
        match (flip, rotation % 3) {
            (false, 0) => GroupElement::Identity,
            (false, 1) => GroupElement::Shift,
            (false, _) => GroupElement::Shift2,
            (true, 0) => GroupElement::Involution,
            (true, 1) => GroupElement::InvShift,
            (true, _) => GroupElement::InvShift2,
        }
    }

    fn parts(self) -> (bool, u8) {
        match self {
            GroupElement::Identity => (false, 0),
            GroupElement::Shift => (false, 1),
            GroupElement::Shift2 => (false, 2),
            GroupElement::Involution => (true, 0),
            GroupElement::InvShift => (true, 1),
            GroupElement::InvShift2 => (true, 2),
        }
    }

    /// `self ∘ other`, i.e. apply `other` first.
    pub fn compose(self, other: GroupElement) -> GroupElement {
        let (f1, k1) = self.parts();
        let (f2, k2) = other.parts();
        // s^k1 i^f2 = i^f2 s^(±k1) because i s i = s^-1.
        let k1 = if f2 { (3 - k1) % 3 } else { k1 };
        GroupElement::from_parts(f1 ^ f2, k1 + k2)
    }

    pub fn inverse(self) -> GroupElement {
        GroupElement::ALL
            .into_iter()
            .find(|g| g.compose(self) == GroupElement::Identity)
            .expect("every group element has an inverse")
    }

    pub fn apply(self, t: Triple) -> Triple {
        apply(self, t)
    }

    pub fn name(self) -> &'static str {
        match self {
            GroupElement::Identity => "e",
            GroupElement::Shift => "s",
            GroupElement::Shift2 => "s2",
            GroupElement::Involution => "i",
            GroupElement::InvShift => "is",
            GroupElement::InvShift2 => "is2",
        }
    }
}

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

pub fn apply(g: GroupElement, t: Triple) -> Triple {
    let (flip, rotation) = g.parts();
    let mut out = t;
    for _ in 0..rotation {
        out = shift(out);
    }
    if flip {
        out = involution(out);
    }
    out
}

/// Orbit of a triple together with its stabilizer order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OrbitRecord {
    pub representative: Triple,
    pub members: BTreeSet<Triple>,
    pub stabilizer_order: usize,
}

impl OrbitRecord {
    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, t: &Triple) -> bool {
        self.members.contains(t)
    }
}

pub fn orbit(t: Triple) -> OrbitRecord {
    let members: BTreeSet<Triple> = GroupElement::ALL.iter().map(|g| apply(*g, t)).collect();
    let stabilizer_order = GroupElement::ALL
        .iter()
        .filter(|g| apply(**g, t) == t)
        .count();
    let representative = *members.first().expect("orbit contains t");
    OrbitRecord {
        representative,
        members,
        stabilizer_order,
    }
}

/// Lexicographically smallest member of the orbit.
pub fn canonical(t: Triple) -> Triple {
    GroupElement::ALL
        .iter()
        .map(|g| apply(*g, t))
        .min()
        .expect("group is non-empty")
}

/// Element `g` with `apply(g, from) == to`, if the two triples are equivalent.
pub fn equivalence(from: Triple, to: Triple) -> Option<GroupElement> {
    GroupElement::ALL
        .into_iter()
        .find(|g| apply(*g, from) == to)
}
