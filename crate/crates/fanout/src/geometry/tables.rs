//! Representative-solution tables for the canonical frames: all residue
//! tuples `(a, c, t, u) mod 8` (or `(a, t)` for the three-point case)
//! solving the adequacy congruence systems, computed by filtering the unit
//! residues rather than hard-coding table entries.

use serde::Serialize;

use super::GeometryError;
use crate::geometry::standard::ThickPattern;

/// Which congruence system a table column belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum TableCase {
    /// Four points with a thick 3-cycle (`e² ≈ 0 (mod 16)`; contains all
    /// planar solutions).
    PlanarThreeCycle,
    /// Four points, every edge thin (`e² ≈ 8 (mod 16)`).
    AllThin,
    /// Four points with a thick 4-cycle (`e² ≈ 8 (mod 16)`).
    FourCycle,
    /// Three points in the plane.
    U3,
}

impl TableCase {
    pub fn from_pattern(p: ThickPattern) -> TableCase {
        match p {
            ThickPattern::AllThin => TableCase::AllThin,
            ThickPattern::ThreeCycle => TableCase::PlanarThreeCycle,
            ThickPattern::FourCycle => TableCase::FourCycle,
        }
    }
}

/// Residue tuple of one column.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(untagged)]
pub enum ColumnResidues {
    U4 { a: u8, c: u8, t: u8, u: u8 },
    U3 { a: u8, t: u8 },
}

/// One column of a classification table: a set of mod-8 residues (together
/// with `n mod 16`) identifying a configuration class up to similarity.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RepresentativeColumn {
    pub case: TableCase,
    pub n_mod_16: u8,
    pub label: String,
    pub residues: ColumnResidues,
}

impl RepresentativeColumn {
    /// Label of the reflection-equivalent pair this column belongs to
    /// (columns pair up under `t, u ↦ -t, -u`): `"A"`/`"B"` → `"AB"`, etc.
    pub fn pair_label(&self) -> String {
        let ch = self.label.chars().next().expect("single-letter label");
        let idx = ch as u8 - b'A';
        let first = (b'A' + (idx & !1)) as char;
        let second = (b'A' + (idx | 1)) as char;
        format!("{first}{second}")
    }
}

fn column_letters(n_mod_16: u8, case: TableCase) -> &'static [char] {
    match (case, n_mod_16) {
        (TableCase::U3, 3) => &['A', 'B', 'C', 'D'],
        (TableCase::U3, 11) => &['E', 'F', 'G', 'H'],
        (_, 3) => &['A', 'B', 'C', 'D', 'E', 'F', 'G', 'H'],
        (_, 11) => &['I', 'J', 'K', 'L', 'M', 'N', 'O', 'P'],
        _ => unreachable!("validated by enumerate_representatives"),
    }
}

const UNITS_MOD_8: [u8; 4] = [1, 3, 5, 7];

/// Enumerate the representative solutions for a case and a residue of `n`
/// modulo 16 (which must be 3 or 11).
///
/// Solutions are found by brute force over the unit residues mod 8 under the
/// case's congruence system. Column order follows the presentation
/// convention: lexicographic in `(a, c, t, u)`, except for the 4-cycle case
/// which is ordered in `(a, c, u, t)` — that table is the image of the
/// all-thin table under the swap of the two off-axis points, which exchanges
/// `(a, t)` with `(c, u)`.
pub fn enumerate_representatives(
    case: TableCase,
    n_mod_16: u8,
) -> Result<Vec<RepresentativeColumn>, GeometryError> {
    if n_mod_16 != 3 && n_mod_16 != 11 {
        return Err(GeometryError::InvariantViolation(format!(
            "n mod 16 must be 3 or 11, got {n_mod_16}"
        )));
    }
    let nbar = n_mod_16 as u32;
    let mut tuples: Vec<ColumnResidues> = Vec::new();
    match case {
        TableCase::U3 => {
            for a in UNITS_MOD_8 {
                for t in UNITS_MOD_8 {
                    let (a32, t32) = (a as u32, t as u32);
                    if a % 4 == 1 && (a32 * a32 + t32 * t32 * nbar) % 16 == 4 {
                        tuples.push(ColumnResidues::U3 { a, t });
                    }
                }
            }
            tuples.sort_by_key(|r| match *r {
                ColumnResidues::U3 { a, t } => (a, t),
                _ => unreachable!(),
            });
        }
        _ => {
            // (ℓ1, ℓ2) and the e² residue characterizing each case.
            let (l1, l2, e2): (u32, u8, u32) = match case {
                TableCase::PlanarThreeCycle => (1, 3, 0),
                TableCase::AllThin => (1, 1, 8),
                TableCase::FourCycle => (3, 1, 8),
                TableCase::U3 => unreachable!(),
            };
            let cross_target = (2 * (2 - l2 as i32)).rem_euclid(8) as u32;
            for a in UNITS_MOD_8 {
                for c in UNITS_MOD_8 {
                    for t in UNITS_MOD_8 {
                        for u in UNITS_MOD_8 {
                            let (a32, c32, t32, u32_) =
                                (a as u32, c as u32, t as u32, u as u32);
                            let ok = a % 4 == l2
                                && c % 4 == l2
                                && (a32 * a32 + t32 * t32 * nbar) % 16 == (4 * l1) % 16
                                && (c32 * c32 + u32_ * u32_ * nbar + e2) % 16
                                    == (4 * l1) % 16
                                && (a32 * c32 + t32 * u32_ * nbar) % 8 == cross_target;
                            if ok {
                                tuples.push(ColumnResidues::U4 { a, c, t, u });
                            }
                        }
                    }
                }
            }
            tuples.sort_by_key(|r| match *r {
                ColumnResidues::U4 { a, c, t, u } => {
                    if case == TableCase::FourCycle {
                        (a, c, u, t)
                    } else {
                        (a, c, t, u)
                    }
                }
                _ => unreachable!(),
            });
        }
    }
    let letters = column_letters(n_mod_16, case);
    debug_assert_eq!(tuples.len(), letters.len());
    Ok(tuples
        .into_iter()
        .zip(letters)
        .map(|(residues, &ch)| RepresentativeColumn {
            case,
            n_mod_16,
            label: ch.to_string(),
            residues,
        })
        .collect())
}

/// Find the column matching a residue tuple, if any.
pub fn find_column(
    case: TableCase,
    n_mod_16: u8,
    residues: ColumnResidues,
) -> Result<Option<RepresentativeColumn>, GeometryError> {
    Ok(enumerate_representatives(case, n_mod_16)?
        .into_iter()
        .find(|col| col.residues == residues))
}
