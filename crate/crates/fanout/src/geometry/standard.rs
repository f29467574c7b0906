//! Canonical frames for three- and four-point configurations: scaling one
//! edge to unit length and placing the points as
//! `{(0,0,0), (1,0,0), (a/2, b/2, 0), (c/2, d/2, e/2)}` reduces adequacy to
//! a finite system of congruences on `a, c` and on `t, u` where `b = t√n`,
//! `d = u√n`.

use num_traits::{Signed, Zero};
use serde::Serialize;

use super::tables::{find_column, ColumnResidues, RepresentativeColumn, TableCase};
use super::{check_isq_adequacy, GeometryError, PointConfig, QuadraticReal};
use crate::rational::{
    int, is_odd_rational, rat, residue_u64, scong_int, squarefree_decompose, PrimePower,
    Rational,
};

/// Which edges are thick in an adequate four-point configuration, up to
/// renaming: none, a 3-cycle avoiding the base edge's first endpoint, or the
/// 4-cycle avoiding the base edge.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum ThickPattern {
    AllThin,
    ThreeCycle,
    FourCycle,
}

/// Recovered frame data for four points: coordinates
/// `(0,0,0), (1,0,0), (a/2, t√n/2, 0), (c/2, u√n/2, e/2)` with every
/// adequacy congruence verified.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StandardPosition4 {
    #[serde(with = "crate::rational::ratstr")]
    pub a: Rational,
    #[serde(with = "crate::rational::ratstr")]
    pub c: Rational,
    #[serde(with = "crate::rational::ratstr")]
    pub t: Rational,
    #[serde(with = "crate::rational::ratstr")]
    pub u: Rational,
    /// Common square-free radicand of the two off-axis coordinates;
    /// always `≡ 3 (mod 8)`.
    pub n: u64,
    #[serde(with = "crate::rational::ratstr")]
    pub e_squared: Rational,
    pub thick_pattern: ThickPattern,
    pub l1: u8,
    pub l2: u8,
}

impl StandardPosition4 {
    pub fn b_squared(&self) -> Rational {
        &self.t * &self.t * int(self.n as i64)
    }

    /// Re-verify every invariant of the frame.
    pub fn validate(&self) -> Result<(), GeometryError> {
        let (l1, l2, pattern) = derive_and_check(
            &self.a,
            &self.c,
            &self.t,
            &self.u,
            self.n,
            &self.e_squared,
        )?;
        if (l1, l2, pattern) != (self.l1, self.l2, self.thick_pattern) {
            return Err(GeometryError::InvariantViolation(
                "stored class labels disagree with the congruences".into(),
            ));
        }
        Ok(())
    }

    /// Realize the frame as literal coordinates (3-dimensional; the third
    /// point stays in the plane).
    pub fn to_point_config(&self) -> Result<PointConfig, GeometryError> {
        let half = rat(1, 2);
        let e = if self.e_squared.is_zero() {
            QuadraticReal::rational(Rational::zero())
        } else {
            let d = squarefree_decompose(&self.e_squared)?;
            let m: u64 = (&d.n).try_into().map_err(|_| GeometryError::RadicandTooLarge)?;
            QuadraticReal::new(Rational::zero(), d.t * &half, m)?
        };
        let zero = || QuadraticReal::rational(Rational::zero());
        let points = vec![
            vec![zero(), zero(), zero()],
            vec![QuadraticReal::from_int(1), zero(), zero()],
            vec![
                QuadraticReal::rational(&self.a * &half),
                QuadraticReal::new(Rational::zero(), &self.t * &half, self.n)?,
                zero(),
            ],
            vec![
                QuadraticReal::rational(&self.c * &half),
                QuadraticReal::new(Rational::zero(), &self.u * &half, self.n)?,
                e,
            ],
        ];
        PointConfig::new(3, points)
    }

    fn residues(&self) -> Result<ColumnResidues, GeometryError> {
        let q8 = PrimePower::two_to(3);
        Ok(ColumnResidues::U4 {
            a: residue_u64(&self.a, &q8)? as u8,
            c: residue_u64(&self.c, &q8)? as u8,
            t: residue_u64(&self.t, &q8)? as u8,
            u: residue_u64(&self.u, &q8)? as u8,
        })
    }
}

fn violation(msg: &str) -> GeometryError {
    GeometryError::InvariantViolation(msg.into())
}

/// Check the full congruence system on recovered frame values and derive
/// `(ℓ1, ℓ2)` and the thick pattern.
fn derive_and_check(
    a: &Rational,
    c: &Rational,
    t: &Rational,
    u: &Rational,
    n: u64,
    e_squared: &Rational,
) -> Result<(u8, u8, ThickPattern), GeometryError> {
    for (x, name) in [(a, "a"), (c, "c"), (t, "t"), (u, "u")] {
        if !is_odd_rational(x) {
            return Err(violation(&format!("{name} is not an odd rational")));
        }
    }
    if n % 8 != 3 {
        return Err(violation("radicand is not 3 mod 8"));
    }
    if e_squared.is_negative() {
        return Err(violation("negative squared height"));
    }
    let q4 = PrimePower::two_to(2);
    let q8 = PrimePower::two_to(3);
    let q16 = PrimePower::two_to(4);
    let nr = int(n as i64);
    let b2 = t * t * &nr;
    let lhs1 = a * a + &b2;
    let lhs2 = c * c + u * u * &nr + e_squared;
    let l1 = if scong_int(&lhs1, 4, &q16) {
        1u8
    } else if scong_int(&lhs1, 12, &q16) {
        3
    } else {
        return Err(violation("a² + b² is not 4ℓ₁ mod 16"));
    };
    let l2 = residue_u64(a, &q4)? as u8;
    if (l1, l2) == (3, 3) {
        return Err(violation("ℓ₁ = ℓ₂ = 3 is not an admissible class"));
    }
    if !scong_int(&lhs2, 4 * l1 as i64, &q16) {
        return Err(violation("c² + d² + e² is not 4ℓ₁ mod 16"));
    }
    if !scong_int(c, l2 as i64, &q4) {
        return Err(violation("c does not match ℓ₂ mod 4"));
    }
    let cross = a * c + t * u * &nr;
    if !scong_int(&cross, (2 * (2 - l2 as i64)).rem_euclid(8), &q8) {
        return Err(violation("ac + bd is not 2(2-ℓ₂) mod 8"));
    }
    if !scong_int(e_squared, (4 * (3 - l2 as i64)).rem_euclid(16), &q16) {
        return Err(violation("e² is not 4(3-ℓ₂) mod 16"));
    }
    let pattern = match (l1, l2) {
        (1, 1) => ThickPattern::AllThin,
        (1, 3) => ThickPattern::ThreeCycle,
        (3, 1) => ThickPattern::FourCycle,
        _ => unreachable!("ruled out above"),
    };
    Ok((l1, l2, pattern))
}

/// Recover the standard position with points ordered `[p1, p2, p3, p4]`
/// (1-indexed into the configuration): `p1 ↦ (0,0,0)`, `p2 ↦ (1,0,0)`, `p3`
/// into the plane, `p4` free.
fn canonicalize_frame(
    cfg: &PointConfig,
    order: [usize; 4],
) -> Result<StandardPosition4, GeometryError> {
    let [p1, p2, p3, p4] = order;
    let scale = cfg.dist_sq(p1, p2);
    let r = |i: usize, j: usize| cfg.dist_sq(i, j) / scale;
    let r13 = r(p1, p3);
    let r23 = r(p2, p3);
    let r14 = r(p1, p4);
    let r24 = r(p2, p4);
    let r34 = r(p3, p4);

    // With d₁₂ scaled to 1: d₁₃² = (a² + b²)/4 and d₂₃² = d₁₃² - a + 1, so a
    // and b² fall out of the two distances; likewise for c and d² + e², and
    // the cross term bd comes from expanding d₃₄².
    let a = int(1) + &r13 - &r23;
    let b2 = int(4) * &r13 - &a * &a;
    let c = int(1) + &r14 - &r24;
    let d2e2 = int(4) * &r14 - &c * &c;
    if !b2.is_positive() {
        return Err(violation("third point is collinear with the base edge"));
    }
    let bd = (&a * &a + &b2 + &c * &c + &d2e2 - int(4) * &r34 - int(2) * &a * &c) / int(2);

    let dec = squarefree_decompose(&b2)?;
    let n: u64 = (&dec.n).try_into().map_err(|_| GeometryError::RadicandTooLarge)?;
    let t = dec.t;
    if t.is_zero() {
        return Err(violation("degenerate in-plane coordinate"));
    }
    let u = &bd / (&t * int(n as i64));
    let e_squared = &d2e2 - &u * &u * int(n as i64);
    let (l1, l2, thick_pattern) = derive_and_check(&a, &c, &t, &u, n, &e_squared)?;
    Ok(StandardPosition4 { a, c, t, u, n, e_squared, thick_pattern, l1, l2 })
}

/// Canonicalize a four-point configuration on an ordered base edge
/// `(i, j)`: `i` goes to the origin and `j` to `(1,0,0)`. The two
/// assignments of the remaining points to the in-plane and free slots are
/// tried in ascending order first.
///
/// Fails with `InvariantViolation` when the recovered values break the
/// congruence system, which signals that this frame does not witness
/// isq-adequacy (other frames of the same configuration may).
pub fn canonicalize_4pt(
    cfg: &PointConfig,
    base: (usize, usize),
) -> Result<StandardPosition4, GeometryError> {
    if cfg.len() != 4 {
        return Err(GeometryError::WrongPointCount { expected: 4, got: cfg.len() });
    }
    let (i, j) = base;
    if i == j || !(1..=4).contains(&i) || !(1..=4).contains(&j) {
        return Err(violation("base edge must join two distinct points"));
    }
    let rest: Vec<usize> = (1..=4).filter(|&p| p != i && p != j).collect();
    let mut last = None;
    for (k, l) in [(rest[0], rest[1]), (rest[1], rest[0])] {
        match canonicalize_frame(cfg, [i, j, k, l]) {
            Ok(sp) => return Ok(sp),
            Err(e) => last = Some(e),
        }
    }
    Err(last.expect("two frames attempted"))
}

/// Four-point classification result: the witnessing frame plus its table
/// column (labeled by the reflection-equivalent pair, e.g. `"GH"`).
#[derive(Debug, Clone, Serialize)]
pub struct ClassifiedU4 {
    pub standard: StandardPosition4,
    pub column: RepresentativeColumn,
}

/// Classify an isq-adequate four-point configuration against the
/// representative tables.
///
/// Frames are searched over base edges in lexicographic order, both
/// orientations each; the first frame satisfying the congruences is used
/// (deterministic tie-break).
pub fn classify_u4(cfg: &PointConfig) -> Result<ClassifiedU4, GeometryError> {
    if cfg.len() != 4 {
        return Err(GeometryError::WrongPointCount { expected: 4, got: cfg.len() });
    }
    let report = check_isq_adequacy(cfg)?;
    if !report.adequate {
        return Err(GeometryError::NotAdequate);
    }
    let mut sp = None;
    'outer: for i in 1..=4usize {
        for j in (i + 1)..=4 {
            for base in [(i, j), (j, i)] {
                if let Ok(found) = canonicalize_4pt(cfg, base) {
                    sp = Some(found);
                    break 'outer;
                }
            }
        }
    }
    let sp = sp.ok_or(GeometryError::NoColumn)?;
    let case = TableCase::from_pattern(sp.thick_pattern);
    let n_mod_16 = (sp.n % 16) as u8;
    let matched = find_column(case, n_mod_16, sp.residues()?)?.ok_or(GeometryError::NoColumn)?;
    let column = RepresentativeColumn {
        label: matched.pair_label(),
        ..matched
    };
    Ok(ClassifiedU4 { standard: sp, column })
}

/// Three-point classification: adequacy for `U_3` plus the recovered frame
/// parameters and table column.
#[derive(Debug, Clone, Serialize)]
pub struct U3Classification {
    pub adequate: bool,
    pub column: Option<RepresentativeColumn>,
    #[serde(with = "crate::rational::ratstr_opt")]
    pub a: Option<Rational>,
    #[serde(with = "crate::rational::ratstr_opt")]
    pub t: Option<Rational>,
    pub n: Option<u64>,
}

/// Decide isq-adequacy of three points through the canonical frame
/// `{(0,0), (1,0), (a/2, b/2)}`: the configuration is adequate iff some
/// ordered base edge yields `a, b² ` odd with `a² + b² ≈ 4 (mod 16)` and
/// `a ≈ 1 (mod 4)`. All edges are thin relative to the frame's base
/// coupling.
pub fn check_u3(cfg: &PointConfig) -> Result<U3Classification, GeometryError> {
    if cfg.len() != 3 {
        return Err(GeometryError::WrongPointCount { expected: 3, got: cfg.len() });
    }
    let q4 = PrimePower::two_to(2);
    let q8 = PrimePower::two_to(3);
    let q16 = PrimePower::two_to(4);
    for (i, j, k) in [(1, 2, 3), (2, 1, 3), (1, 3, 2), (3, 1, 2), (2, 3, 1), (3, 2, 1)] {
        let scale = cfg.dist_sq(i, j);
        let r13 = cfg.dist_sq(i, k) / scale;
        let r23 = cfg.dist_sq(j, k) / scale;
        let a = int(1) + &r13 - &r23;
        let b2 = int(4) * &r13 - &a * &a;
        if !b2.is_positive() || !is_odd_rational(&a) || !is_odd_rational(&b2) {
            continue;
        }
        if !scong_int(&(&a * &a + &b2), 4, &q16) || !scong_int(&a, 1, &q4) {
            continue;
        }
        let dec = squarefree_decompose(&b2)?;
        let n: u64 = (&dec.n).try_into().map_err(|_| GeometryError::RadicandTooLarge)?;
        debug_assert_eq!(n % 8, 3);
        let t = dec.t;
        let residues = ColumnResidues::U3 {
            a: residue_u64(&a, &q8)? as u8,
            t: residue_u64(&t, &q8)? as u8,
        };
        let matched = find_column(TableCase::U3, (n % 16) as u8, residues)?
            .ok_or(GeometryError::NoColumn)?;
        let column = RepresentativeColumn {
            label: matched.pair_label(),
            ..matched
        };
        return Ok(U3Classification {
            adequate: true,
            column: Some(column),
            a: Some(a),
            t: Some(t),
            n: Some(n),
        });
    }
    Ok(U3Classification { adequate: false, column: None, a: None, t: None, n: None })
}

/// The rotation-plus-dilation that maps the in-plane point onto `(1,0,0)`:
/// with `γ = 4/(a² + b²)`,
/// `a' = γa`, `c' = γ(ac + tun)/2`, `t' = -γt`, `u' = γ(au - ct)/2`. The
/// image is again a valid standard position with the same radicand (checked
/// by square-free re-derivation) and the same squared height.
pub fn rotate_dilate_map(sp: &StandardPosition4) -> Result<StandardPosition4, GeometryError> {
    let nr = int(sp.n as i64);
    let gamma = int(4) / (&sp.a * &sp.a + sp.b_squared());
    let a = &gamma * &sp.a;
    let c = &gamma * (&sp.a * &sp.c + &sp.t * &sp.u * &nr) / int(2);
    let t = -(&gamma * &sp.t);
    let u = &gamma * (&sp.a * &sp.u - &sp.c * &sp.t) / int(2);

    // Re-derive the radicand from the new in-plane coordinate; the map is
    // built so it cannot change, so a mismatch is an internal error.
    let dec = squarefree_decompose(&(&t * &t * &nr))?;
    let n: u64 = (&dec.n).try_into().map_err(|_| GeometryError::RadicandTooLarge)?;
    if n != sp.n {
        return Err(violation("rotation changed the radicand"));
    }
    let e_squared = sp.e_squared.clone();
    let (l1, l2, thick_pattern) = derive_and_check(&a, &c, &t, &u, n, &e_squared)?;
    Ok(StandardPosition4 { a, c, t, u, n, e_squared, thick_pattern, l1, l2 })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::builtin_configs;
    use crate::geometry::BuiltinConfig;

    fn builtin_points(name: &str) -> PointConfig {
        match builtin_configs().remove(name) {
            Some(BuiltinConfig::Points(cfg)) => cfg,
            _ => panic!("no point builtin {name}"),
        }
    }

    #[test]
    fn regular_tetrahedron_frame() {
        let cfg = builtin_points("regular-tetrahedron");
        let sp = canonicalize_4pt(&cfg, (1, 2)).unwrap();
        assert_eq!(sp.a, int(1));
        assert_eq!(sp.b_squared(), int(3));
        assert_eq!(sp.c, int(1));
        assert_eq!(sp.u, rat(1, 3));
        assert_eq!(&sp.u * &sp.u * int(sp.n as i64), rat(1, 3));
        assert_eq!(sp.e_squared, rat(8, 3));
        assert_eq!(sp.thick_pattern, ThickPattern::AllThin);
        assert_eq!((sp.l1, sp.l2), (1, 1));
        sp.validate().unwrap();
    }

    #[test]
    fn fig2_left_frame_is_three_cycle() {
        let cfg = builtin_points("fig2-left");
        // The center-to-vertex edge {1,2} works with point 2 at the origin.
        let sp = canonicalize_4pt(&cfg, (2, 1)).unwrap();
        assert_eq!(sp.thick_pattern, ThickPattern::ThreeCycle);
        assert_eq!((sp.l1, sp.l2), (1, 3));
        assert!(sp.e_squared.is_zero());
        // The same edge in the other orientation is not a valid frame.
        assert!(canonicalize_4pt(&cfg, (1, 2)).is_err());
    }

    #[test]
    fn elongated_tetrahedron_frame_is_four_cycle() {
        let cfg = builtin_points("elongated-tetrahedron");
        let sp = canonicalize_4pt(&cfg, (1, 2)).unwrap();
        assert_eq!(sp.n, 11);
        assert_eq!(sp.thick_pattern, ThickPattern::FourCycle);
        assert_eq!((sp.l1, sp.l2), (3, 1));
        assert_eq!(sp.e_squared, rat(40, 11));
        sp.validate().unwrap();
    }

    #[test]
    fn classify_paper_exhibits() {
        let classified = classify_u4(&builtin_points("fig2-left")).unwrap();
        assert_eq!(classified.column.label, "GH");
        assert_eq!(classified.column.n_mod_16, 3);

        let classified = classify_u4(&builtin_points("fig2-right")).unwrap();
        assert_eq!(classified.column.label, "GH");

        let classified = classify_u4(&builtin_points("regular-tetrahedron")).unwrap();
        assert_eq!(classified.column.label, "AB");
        assert_eq!(classified.standard.thick_pattern, ThickPattern::AllThin);

        let classified = classify_u4(&builtin_points("elongated-tetrahedron")).unwrap();
        assert_eq!(classified.column.label, "IJ");
        assert_eq!(classified.column.n_mod_16, 11);
        assert_eq!(classified.standard.thick_pattern, ThickPattern::FourCycle);
    }

    #[test]
    fn classify_rejects_inadequate() {
        let unit_square = PointConfig::new(
            2,
            vec![
                vec![QuadraticReal::from_int(0), QuadraticReal::from_int(0)],
                vec![QuadraticReal::from_int(1), QuadraticReal::from_int(0)],
                vec![QuadraticReal::from_int(1), QuadraticReal::from_int(1)],
                vec![QuadraticReal::from_int(0), QuadraticReal::from_int(1)],
            ],
        )
        .unwrap();
        assert!(matches!(classify_u4(&unit_square), Err(GeometryError::NotAdequate)));
    }

    #[test]
    fn u3_examples() {
        let tri = builtin_points("equilateral-3");
        let result = check_u3(&tri).unwrap();
        assert!(result.adequate);
        assert_eq!(result.a, Some(int(1)));
        assert_eq!(result.t, Some(int(1)));
        assert_eq!(result.n, Some(3));
        assert_eq!(result.column.unwrap().label, "AB");

        // Right triangle: excluded.
        let right = PointConfig::new(
            2,
            vec![
                vec![QuadraticReal::from_int(0), QuadraticReal::from_int(0)],
                vec![QuadraticReal::from_int(1), QuadraticReal::from_int(0)],
                vec![QuadraticReal::from_int(0), QuadraticReal::from_int(1)],
            ],
        )
        .unwrap();
        let result = check_u3(&right).unwrap();
        assert!(!result.adequate);
        assert!(result.column.is_none());
    }

    #[test]
    fn u3_with_radicand_11() {
        // {(0,0), (1,0), (5/2, √11/2)}: a = 5, t = 1, n = 11, column GH.
        let cfg = PointConfig::new(
            2,
            vec![
                vec![QuadraticReal::from_int(0), QuadraticReal::from_int(0)],
                vec![QuadraticReal::from_int(1), QuadraticReal::from_int(0)],
                vec![
                    QuadraticReal::rational(rat(5, 2)),
                    QuadraticReal::new(int(0), rat(1, 2), 11).unwrap(),
                ],
            ],
        )
        .unwrap();
        let result = check_u3(&cfg).unwrap();
        assert!(result.adequate);
        assert_eq!(result.a, Some(int(5)));
        assert_eq!(result.t, Some(int(1)));
        assert_eq!(result.n, Some(11));
        assert_eq!(result.column.unwrap().label, "GH");
        assert!(check_isq_adequacy(&cfg).unwrap().adequate);
    }

    #[test]
    fn rotate_dilate_regular_tetrahedron() {
        let sp = canonicalize_4pt(&builtin_points("regular-tetrahedron"), (1, 2)).unwrap();
        let image = rotate_dilate_map(&sp).unwrap();
        image.validate().unwrap();
        // γ = 4/(1+3) = 1 here.
        assert_eq!(image.a, int(1));
        assert_eq!(image.t, int(-1));
        assert_eq!(image.thick_pattern, ThickPattern::AllThin);
    }

    #[test]
    fn rotate_dilate_maps_type_a_into_partner_set() {
        // A planar type-A witness: a=3, c=3, t=3, u=5, n=3, e=0.
        let sp = StandardPosition4 {
            a: int(3),
            c: int(3),
            t: int(3),
            u: int(5),
            n: 3,
            e_squared: int(0),
            thick_pattern: ThickPattern::ThreeCycle,
            l1: 1,
            l2: 3,
        };
        sp.validate().unwrap();
        let image = rotate_dilate_map(&sp).unwrap();
        image.validate().unwrap();
        let q8 = PrimePower::two_to(3);
        let res = (
            residue_u64(&image.a, &q8).unwrap(),
            residue_u64(&image.c, &q8).unwrap(),
            residue_u64(&image.t, &q8).unwrap(),
            residue_u64(&image.u, &q8).unwrap(),
        );
        // Image lands on column B = (3,3,5,3), inside the partner set
        // {B, D, E, G} of A.
        assert_eq!(res, (3, 3, 5, 3));
    }

    #[test]
    fn standard_position_round_trips_through_points() {
        let sp = canonicalize_4pt(&builtin_points("elongated-tetrahedron"), (1, 2)).unwrap();
        let cfg = sp.to_point_config().unwrap();
        let report = check_isq_adequacy(&cfg).unwrap();
        assert!(report.adequate);
        let back = canonicalize_4pt(&cfg, (1, 2)).unwrap();
        assert_eq!(back, sp);
    }
}
