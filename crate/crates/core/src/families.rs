//! Explicit triple families of the regular type-P models.
//!
//! Families are emitted in a fixed order (non-degenerate, one degenerate,
//! then the nine two-degenerate subfamilies), with triples sorted
//! lexicographically inside each family.

use std::collections::HashMap;
use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::triple::{canonical, Triple};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum FamilyId {
    Nondeg,
    OneDeg,
    K,
    M0,
    MNeg1,
    MNeg2,
    NNeg2,
    NNeg1,
    N0,
    N1,
    N2,
}

impl FamilyId {
    pub const ALL: [FamilyId; 11] = [
        FamilyId::Nondeg,
        FamilyId::OneDeg,
        FamilyId::K,
        FamilyId::M0,
        FamilyId::MNeg1,
        FamilyId::MNeg2,
        FamilyId::NNeg2,
        FamilyId::NNeg1,
        FamilyId::N0,
        FamilyId::N1,
        FamilyId::N2,
    ];

    /// Subfamilies making up the two-degenerate family, in emission order.
    pub const TWO_DEGENERATE: [FamilyId; 9] = [
        FamilyId::K,
        FamilyId::M0,
        FamilyId::MNeg1,
        FamilyId::MNeg2,
        FamilyId::NNeg2,
        FamilyId::NNeg1,
        FamilyId::N0,
        FamilyId::N1,
        FamilyId::N2,
    ];

    pub fn tag(self) -> &'static str {
        match self {
            FamilyId::Nondeg => "NONDEG",
            FamilyId::OneDeg => "ONE_DEG",
            FamilyId::K => "K",
            FamilyId::M0 => "M0",
            FamilyId::MNeg1 => "M_NEG1",
            FamilyId::MNeg2 => "M_NEG2",
            FamilyId::NNeg2 => "N_NEG2",
            FamilyId::NNeg1 => "N_NEG1",
            FamilyId::N0 => "N0",
            FamilyId::N1 => "N1",
            FamilyId::N2 => "N2",
        }
    }

    /// Number of degenerate curve structures among the three components.
    pub fn degenerate_components(self) -> usize {
        match self {
            FamilyId::Nondeg => 0,
            FamilyId::OneDeg => 1,
            _ => 2,
        }
    }
}

impl fmt::Display for FamilyId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct RegularModel {
    pub triple: Triple,
    pub family: FamilyId,
    pub canonical_key: Triple,
}

impl RegularModel {
    pub fn new(triple: Triple, family: FamilyId) -> Self {
        RegularModel {
            triple,
            family,
            canonical_key: canonical(triple),
        }
    }
}

/// Two generated triples fell into the same equivalence class.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{first} ({first_family}) and {second} ({second_family}) share canonical key {key}")]
pub struct DuplicateClassError {
    pub first: Triple,
    pub first_family: FamilyId,
    pub second: Triple,
    pub second_family: FamilyId,
    pub key: Triple,
}

const NONDEG_LISTED: [(i64, i64, i64); 12] = [
    (0, 1, -1),
    (0, 1, 2),
    (0, 1, -2),
    (0, 2, 1),
    (0, 2, -2),
    (0, -1, 2),
    (0, -1, 1),
    (0, -2, 2),
    (1, 2, -1),
    (1, 2, -2),
    (1, -1, 2),
    (1, -2, 2),
];

fn models(family: FamilyId, mut triples: Vec<Triple>) -> Vec<RegularModel> {
    triples.sort();
    triples
        .into_iter()
        .map(|t| RegularModel::new(t, family))
        .collect()
}

pub fn family_nondegenerate() -> Vec<RegularModel> {
    let mut triples: Vec<Triple> = NONDEG_LISTED
        .iter()
        .map(|&(a, b, c)| Triple::small(a, b, c))
        .collect();
    for x in 1..=2 {
        for y in (-2..=2).filter(|&y| y != x) {
            triples.push(Triple::small(x, y, y));
        }
    }
    triples.push(Triple::small(0, 1, 1));
    triples.push(Triple::small(0, 2, 2));
    for x in 0..=2 {
        triples.push(Triple::small(x, x, x));
    }
    models(FamilyId::Nondeg, triples)
}

pub fn family_one_degenerate() -> Vec<RegularModel> {
    let mut triples: Vec<Triple> = (0..=2).map(|y| Triple::small(3, y, -3)).collect();
    for x in -2..=2 {
        for y in -2..=2 {
            for z in (x - 6)..=-3 {
                triples.push(Triple::small(x, y, z));
            }
        }
    }
    models(FamilyId::OneDeg, triples)
}

/// Triples of a single two-degenerate subfamily.
pub fn subfamily(id: FamilyId) -> Vec<RegularModel> {
    let triples: Vec<Triple> = match id {
        FamilyId::Nondeg => return family_nondegenerate(),
        FamilyId::OneDeg => return family_one_degenerate(),
        FamilyId::K => (3..=9).map(|x| Triple::small(x, -3, 3)).collect(),
        FamilyId::M0 => {
            let mut v = Vec::new();
            for x in -6..=-3i64 {
                for z in 3..=6i64 {
                    if z.abs() <= x.abs() {
                        v.push(Triple::small(x, 0, z));
                    }
                }
            }
            v
        }
        FamilyId::MNeg1 => grid(-7..=-3, 3..=5, |x, z| (x, -1, z)),
        FamilyId::MNeg2 => grid(-8..=-3, 3..=4, |x, z| (x, -2, z)),
        FamilyId::NNeg2 => n_family(-2, -8),
        FamilyId::NNeg1 => n_family(-1, -7),
        FamilyId::N0 => n_family(0, -6),
        FamilyId::N1 => n_family(1, -5),
        FamilyId::N2 => n_family(2, -4),
    };
    models(id, triples)
}

fn grid(
    xs: std::ops::RangeInclusive<i64>,
    zs: std::ops::RangeInclusive<i64>,
    f: impl Fn(i64, i64) -> (i64, i64, i64),
) -> Vec<Triple> {
    let mut v = Vec::new();
    for x in xs {
        for z in zs.clone() {
            let (a, b, c) = f(x, z);
            v.push(Triple::small(a, b, c));
        }
    }
    v
}

/// `N(z) = {(x, y, z) | y_min <= y <= -3, y - 6 <= x <= -3}`.
fn n_family(z: i64, y_min: i64) -> Vec<Triple> {
    let mut v = Vec::new();
    for y in y_min..=-3 {
        for x in (y - 6)..=-3 {
            v.push(Triple::small(x, y, z));
        }
    }
    v
}

pub fn family_two_degenerate() -> Vec<RegularModel> {
    FamilyId::TWO_DEGENERATE
        .iter()
        .flat_map(|id| subfamily(*id))
        .collect()
}

/// All regular models, checked for pairwise inequivalence.
pub fn regular_models() -> Result<Vec<RegularModel>, DuplicateClassError> {
    let all: Vec<RegularModel> = family_nondegenerate()
        .into_iter()
        .chain(family_one_degenerate())
        .chain(family_two_degenerate())
        .collect();
    check_distinct(&all)?;
    Ok(all)
}

/// Fails on the first pair of models sharing a canonical key.
pub fn check_distinct(models: &[RegularModel]) -> Result<(), DuplicateClassError> {
    let mut seen: HashMap<Triple, &RegularModel> = HashMap::with_capacity(models.len());
    for m in models {
        if let Some(prev) = seen.insert(m.canonical_key, m) {
            return Err(DuplicateClassError {
                first: prev.triple,
                first_family: prev.family,
                second: m.triple,
                second_family: m.family,
                key: m.canonical_key,
            });
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::BTreeSet;

    fn t(a: i64, b: i64, c: i64) -> Triple {
        Triple::new(a, b, c).unwrap()
    }

    fn contains(models: &[RegularModel], x: Triple) -> bool {
        models.iter().any(|m| m.triple == x)
    }

    #[test]
    fn nondegenerate() {
        let f = family_nondegenerate();
        assert_eq!(f.len(), 25);
        assert!(contains(&f, t(0, 1, -1)));
        assert!(contains(&f, t(1, 1, 1)));
        assert!(!contains(&f, t(-1, -1, -1)));
        assert!(!contains(&f, t(-2, -2, -2)));
    }

    #[test]
    fn one_degenerate() {
        let f = family_one_degenerate();
        assert_eq!(f.len(), 103);
        assert!(contains(&f, t(3, 0, -3)));
        let slice = f
            .iter()
            .filter(|m| m.triple.a() == -2 && m.triple.b() == 0)
            .count();
        assert_eq!(slice, 6);
        // corrected range is keyed on x, not y
        assert!(contains(&f, t(-2, 2, -8)));
        assert!(!contains(&f, t(2, -2, -8)));
    }

    #[test]
    fn two_degenerate_subfamilies() {
        let sizes: Vec<usize> = FamilyId::TWO_DEGENERATE
            .iter()
            .map(|id| subfamily(*id).len())
            .collect();
        assert_eq!(sizes, vec![7, 10, 15, 12, 57, 45, 34, 24, 15]);
        assert_eq!(family_two_degenerate().len(), 219);

        let m0 = subfamily(FamilyId::M0);
        assert!(contains(&m0, t(-3, 0, 3)));
        assert!(!contains(&m0, t(-3, 0, 6)));
        assert!(contains(&subfamily(FamilyId::K), t(9, -3, 3)));
    }

    #[test]
    fn regular_models_distinct() {
        let all = regular_models().unwrap();
        assert_eq!(all.len(), 347);
        let keys: BTreeSet<Triple> = all.iter().map(|m| m.canonical_key).collect();
        assert_eq!(keys.len(), 347);
    }

    #[test]
    fn duplicate_is_reported_with_both_triples() {
        let models = vec![
            RegularModel::new(t(-6, 0, 3), FamilyId::M0),
            RegularModel::new(t(-3, 0, 6), FamilyId::M0),
        ];
        let err = check_distinct(&models).unwrap_err();
        assert_eq!(err.first, t(-6, 0, 3));
        assert_eq!(err.second, t(-3, 0, 6));
        assert_eq!(err.key, t(-6, 0, 3));
    }

    #[test]
    fn uncorrected_m0_would_collide() {
        let m0: Vec<RegularModel> = grid(-6..=-3, 3..=6, |x, z| (x, 0, z))
            .into_iter()
            .map(|x| RegularModel::new(x, FamilyId::M0))
            .collect();
        assert_eq!(m0.len(), 16);
        let classes: BTreeSet<Triple> = m0.iter().map(|m| m.canonical_key).collect();
        assert_eq!(classes.len(), 10);
        assert!(check_distinct(&m0).is_err());
    }

    #[test]
    fn deterministic_and_sorted() {
        assert_eq!(regular_models().unwrap(), regular_models().unwrap());
        for id in FamilyId::ALL {
            let f = subfamily(id);
            assert!(f.windows(2).all(|w| w[0].triple < w[1].triple), "{id}");
            assert!(f.iter().all(|m| m.family == id));
        }
    }

    #[test]
    fn symmetric_members() {
        let sym: BTreeSet<Triple> = regular_models()
            .unwrap()
            .iter()
            .filter(|m| m.triple.orbit().stabilizer_order > 1)
            .map(|m| m.triple)
            .collect();
        let expected: BTreeSet<Triple> = [
            t(0, 0, 0),
            t(1, 1, 1),
            t(2, 2, 2),
            t(0, 1, -1),
            t(0, -1, 1),
            t(0, 2, -2),
            t(0, -2, 2),
            t(3, 0, -3),
            t(-3, 0, 3),
            t(-4, 0, 4),
            t(-5, 0, 5),
            t(-6, 0, 6),
        ]
        .into();
        assert_eq!(sym, expected);
    }
}
