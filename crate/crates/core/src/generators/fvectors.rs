use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

/// Face numbers of a 3-polytope.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct FVector3 {
    pub f0: u64,
    pub f1: u64,
    pub f2: u64,
}

impl FVector3 {
    /// Completes `(f0, f2)` by Euler's relation.
    pub fn from_euler(f0: u64, f2: u64) -> Self {
        FVector3 { f0, f1: f0 + f2 - 2, f2 }
    }

    pub fn satisfies_euler(&self) -> bool {
        self.f1 + 2 == self.f0 + self.f2
    }
}

/// The three families of stacked wedges over an `n`-gon.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Family {
    Left,
    Middle,
    Right,
}

impl Family {
    pub const ALL: [Family; 3] = [Family::Left, Family::Middle, Family::Right];

    /// f-vector of the wedge over an `n`-gon stacked `k` times.
    pub fn fvector(self, n: u64, k: u64) -> FVector3 {
        match self {
            Family::Left => FVector3 { f0: 2 * n - 2 + k, f1: 3 * n - 3 + 3 * k, f2: n + 1 + 2 * k },
            Family::Middle => FVector3 { f0: 2 * n - 1 + k, f1: 3 * n - 1 + 3 * k, f2: n + 2 + 2 * k },
            Family::Right => FVector3 { f0: 2 * n + k, f1: 3 * n + 1 + 3 * k, f2: n + 3 + 2 * k },
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Family::Left => "left",
            Family::Middle => "middle",
            Family::Right => "right",
        }
    }
}

/// An f-vector with every family producing it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FamilyVector {
    pub f: FVector3,
    pub families: BTreeSet<Family>,
}

/// All family members with `f0 <= f0_max` (`n >= 3`, `k >= 0`), sorted by
/// f-vector.
pub fn fvector_families(f0_max: u64) -> Vec<FamilyVector> {
    let mut found: BTreeMap<FVector3, BTreeSet<Family>> = BTreeMap::new();
    for fam in Family::ALL {
        for n in 3.. {
            if fam.fvector(n, 0).f0 > f0_max {
                break;
            }
            for k in 0.. {
                let f = fam.fvector(n, k);
                if f.f0 > f0_max {
                    break;
                }
                found.entry(f).or_default().insert(fam);
            }
        }
    }
    found.into_iter().map(|(f, families)| FamilyVector { f, families }).collect()
}

/// `(f0, f2)` is the pair of a 3-polytope iff `f2 <= 2 f0 - 4` and
/// `f0 <= 2 f2 - 4`.
pub fn steinitz_member(f0: u64, f2: u64) -> bool {
    f0 >= 4 && f2 >= 4 && f2 + 4 <= 2 * f0 && f0 + 4 <= 2 * f2
}

/// Every 3-polytope f-vector with `f0 <= f0_max`.
pub fn steinitz_set(f0_max: u64) -> BTreeSet<FVector3> {
    (4..=f0_max)
        .flat_map(|f0| {
            (4..=2 * f0).filter(move |&f2| steinitz_member(f0, f2)).map(move |f2| FVector3::from_euler(f0, f2))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn family_values() {
        assert_eq!(Family::Left.fvector(3, 0), FVector3 { f0: 4, f1: 6, f2: 4 });
        assert_eq!(Family::Middle.fvector(3, 0), FVector3 { f0: 5, f1: 8, f2: 5 });
        assert!(steinitz_member(4, 4));
        assert!(!steinitz_member(4, 5));
        assert!(steinitz_member(8, 12));
        assert_eq!(FVector3::from_euler(8, 12).f1, 18);
    }

    #[test]
    fn families_cover_steinitz() {
        let fam: BTreeSet<FVector3> = fvector_families(60).into_iter().map(|v| v.f).collect();
        assert_eq!(fam, steinitz_set(60));
        assert!(fam.iter().all(FVector3::satisfies_euler));
    }
}
