//! Named exhibit configurations: the planar four-point arrangements, the
//! equilateral triangle, both tetrahedra, and the coupling-only square /
//! cube / octahedron examples (those point arrangements contain right
//! angles, so under an inverse-square law only their idealized couplings
//! are of interest).

use std::collections::BTreeMap;

use serde::Serialize;

use super::{GeometryError, PointConfig, QuadraticReal};
use crate::adequacy::CouplingSet;
use crate::rational::{int, rat, Rational};

/// A named exhibit: either literal coordinates or a bare coupling set.
#[derive(Debug, Clone, Serialize)]
#[serde(untagged)]
pub enum BuiltinConfig {
    Points(PointConfig),
    Couplings(CouplingSet),
}

fn q(r: Rational) -> QuadraticReal {
    QuadraticReal::rational(r)
}

fn root(t: Rational, n: u64) -> QuadraticReal {
    QuadraticReal::root_multiple(t, n).expect("valid radicand")
}

fn points(dim: usize, pts: Vec<Vec<QuadraticReal>>) -> BuiltinConfig {
    BuiltinConfig::Points(PointConfig::new(dim, pts).expect("exhibit is valid"))
}

fn fig2_left() -> BuiltinConfig {
    // Equilateral triangle of side 2 with its center: center-vertex edges
    // carry ratio 9, the triangle edges ratio 3.
    points(
        2,
        vec![
            vec![q(int(0)), q(int(0))],
            vec![q(int(1)), root(rat(1, 3), 3)],
            vec![q(int(2)), q(int(0))],
            vec![q(int(1)), root(int(1), 3)],
        ],
    )
}

fn fig2_right() -> BuiltinConfig {
    points(
        2,
        vec![
            vec![q(int(0)), q(int(0))],
            vec![q(int(1)), q(int(0))],
            vec![q(rat(-5, 2)), root(rat(1, 2), 3)],
            vec![q(rat(-5, 2)), root(rat(-1, 2), 3)],
        ],
    )
}

fn equilateral_3() -> BuiltinConfig {
    points(
        2,
        vec![
            vec![q(int(0)), q(int(0))],
            vec![q(int(1)), q(int(0))],
            vec![q(rat(1, 2)), root(rat(1, 2), 3)],
        ],
    )
}

fn regular_tetrahedron() -> BuiltinConfig {
    points(
        3,
        vec![
            vec![q(int(0)), q(int(0)), q(int(0))],
            vec![q(int(1)), q(int(0)), q(int(0))],
            vec![q(rat(1, 2)), root(rat(1, 2), 3), q(int(0))],
            vec![q(rat(1, 2)), root(rat(1, 6), 3), root(rat(1, 3), 6)],
        ],
    )
}

fn elongated_tetrahedron() -> BuiltinConfig {
    points(
        3,
        vec![
            vec![q(int(0)), q(int(0)), q(int(0))],
            vec![q(int(1)), q(int(0)), q(int(0))],
            vec![q(rat(1, 2)), root(rat(1, 2), 11), q(int(0))],
            vec![q(rat(1, 2)), root(rat(9, 22), 11), root(rat(1, 11), 110)],
        ],
    )
}

fn square_couplings() -> BuiltinConfig {
    // Ring 1-2-3-4: neighbors 3J, diagonals J.
    let entries = [
        (1, 2, 3),
        (2, 3, 3),
        (3, 4, 3),
        (1, 4, 3),
        (1, 3, 1),
        (2, 4, 1),
    ]
    .map(|(i, j, v)| (i, j, int(v)));
    BuiltinConfig::Couplings(CouplingSet::new(4, entries).expect("valid"))
}

fn cube_couplings() -> BuiltinConfig {
    // Vertex v = 1 + (coordinate bits): neighbors 7J, face diagonals 3J,
    // antipodal J.
    let mut entries = Vec::new();
    for i in 0..8usize {
        for j in (i + 1)..8 {
            let v = match (i ^ j).count_ones() {
                1 => 7,
                2 => 3,
                3 => 1,
                _ => unreachable!(),
            };
            entries.push((i + 1, j + 1, int(v)));
        }
    }
    BuiltinConfig::Couplings(CouplingSet::new(8, entries).expect("valid"))
}

fn octahedron_couplings() -> BuiltinConfig {
    // Antipodal pairs (1,2), (3,4), (5,6) carry J; the twelve neighbor
    // edges carry 3J.
    let antipodal = [(1usize, 2usize), (3, 4), (5, 6)];
    let mut entries = Vec::new();
    for i in 1..=6usize {
        for j in (i + 1)..=6 {
            let v = if antipodal.contains(&(i, j)) { 1 } else { 3 };
            entries.push((i, j, int(v)));
        }
    }
    BuiltinConfig::Couplings(CouplingSet::new(6, entries).expect("valid"))
}

/// All built-in exhibits by name.
pub fn builtin_configs() -> BTreeMap<&'static str, BuiltinConfig> {
    BTreeMap::from([
        ("fig2-left", fig2_left()),
        ("fig2-right", fig2_right()),
        ("equilateral-3", equilateral_3()),
        ("regular-tetrahedron", regular_tetrahedron()),
        ("elongated-tetrahedron", elongated_tetrahedron()),
        ("square-4", square_couplings()),
        ("cube-8", cube_couplings()),
        ("octahedron-6", octahedron_couplings()),
    ])
}

/// Convenience: the exhibit's coupling set, deriving inverse-square
/// couplings for point exhibits.
pub fn builtin_couplings(cfg: &BuiltinConfig) -> Result<CouplingSet, GeometryError> {
    match cfg {
        BuiltinConfig::Points(p) => super::couplings_from_points(p),
        BuiltinConfig::Couplings(c) => Ok(c.clone()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::adequacy::check_adequacy;
    use crate::geometry::check_isq_adequacy;

    #[test]
    fn all_exhibits_have_expected_verdicts() {
        for (name, cfg) in builtin_configs() {
            let report = check_adequacy(&builtin_couplings(&cfg).unwrap());
            assert!(report.adequate, "{name} should be adequate");
        }
    }

    #[test]
    fn fig2_right_coordinates() {
        let BuiltinConfig::Points(cfg) = &builtin_configs()["fig2-right"] else {
            panic!("points expected");
        };
        // q₃ = (-5/2, √3/2)
        let p3 = cfg.point(3);
        assert_eq!(p3[0].rational_part(), &rat(-5, 2));
        assert_eq!(p3[1].coeff(), &rat(1, 2));
        assert_eq!(p3[1].radicand(), 3);
        // Ratios {273, 39, 39, 21, 21, 91} under the gcd base.
        let report = check_isq_adequacy(cfg).unwrap();
        let base = report.base_coupling.unwrap();
        let c = super::super::couplings_from_points(cfg).unwrap();
        let ratios: Vec<String> =
            c.iter().map(|(_, v)| (v / &base).to_string()).collect();
        assert_eq!(ratios, ["273", "39", "39", "21", "21", "91"]);
    }

    #[test]
    fn thick_patterns_of_point_exhibits() {
        use std::collections::BTreeSet;
        let expect: &[(&str, &[(usize, usize)])] = &[
            ("fig2-left", &[(1, 3), (1, 4), (3, 4)]),
            ("fig2-right", &[(1, 3), (1, 4), (3, 4)]),
            ("equilateral-3", &[]),
            ("regular-tetrahedron", &[]),
            ("elongated-tetrahedron", &[(1, 3), (1, 4), (2, 3), (2, 4)]),
        ];
        for (name, thick) in expect {
            let BuiltinConfig::Points(cfg) = &builtin_configs()[name] else {
                panic!("points expected for {name}");
            };
            let report = check_isq_adequacy(cfg).unwrap();
            assert!(report.adequate, "{name}");
            let expected: BTreeSet<(usize, usize)> = thick.iter().copied().collect();
            assert_eq!(report.thickness.unwrap().thick_edges, expected, "{name}");
        }
    }

    #[test]
    fn elongated_tetrahedron_base_is_one_ninth() {
        let BuiltinConfig::Points(cfg) = &builtin_configs()["elongated-tetrahedron"] else {
            panic!("points expected");
        };
        let report = check_isq_adequacy(cfg).unwrap();
        assert_eq!(report.base_coupling.unwrap(), rat(1, 9));
    }

    #[test]
    fn coupling_exhibit_shapes() {
        let BuiltinConfig::Couplings(square) = &builtin_configs()["square-4"] else {
            panic!("couplings expected");
        };
        let report = check_adequacy(square);
        // Thick edges form the 4-cycle of neighbors.
        assert_eq!(report.thickness.unwrap().thick_edges.len(), 4);

        let BuiltinConfig::Couplings(cube) = &builtin_configs()["cube-8"] else {
            panic!("couplings expected");
        };
        assert_eq!(check_adequacy(cube).thickness.unwrap().thick_edges.len(), 24);

        let BuiltinConfig::Couplings(oct) = &builtin_configs()["octahedron-6"] else {
            panic!("couplings expected");
        };
        assert_eq!(check_adequacy(oct).thickness.unwrap().thick_edges.len(), 12);
    }
}
