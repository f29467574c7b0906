//! Exact geometry over quadratic irrationals: spatial qubit arrangements
//! whose couplings follow an inverse-square law, their adequacy for `U_n`,
//! canonical frames, classification tables, and the five-point refutation
//! search.
//!
//! Coordinates have the form `r + t·√n` with rational `r`, `t` and a
//! square-free radicand, and configurations are only accepted when every
//! pairwise squared distance is rational, so all downstream arithmetic stays
//! in `Q`. Points are numbered from 1 in every public API, matching the
//! vertex numbering of adequacy reports.

mod builtins;
mod search;
mod standard;
mod tables;

pub use builtins::{builtin_configs, builtin_couplings, BuiltinConfig};
pub use search::{check_5point_candidate, search_5point};
pub use standard::{
    canonicalize_4pt, check_u3, classify_u4, rotate_dilate_map, ClassifiedU4,
    StandardPosition4, ThickPattern, U3Classification,
};
pub use tables::{
    enumerate_representatives, ColumnResidues, RepresentativeColumn, TableCase,
};

use std::collections::BTreeMap;

use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::adequacy::{base_coupling, check_adequacy, AdequacyError, AdequacyReport, CouplingSet};
use crate::rational::{int, parse_rational, squarefree_part, NumError, Rational};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GeometryError {
    #[error("configuration dimension must be 2 or 3")]
    BadDimension,
    #[error("point {0} has the wrong number of coordinates")]
    BadCoordinateCount(usize),
    #[error("points {0} and {1} coincide")]
    DegeneratePoints(usize, usize),
    #[error("squared distance between points {0} and {1} is irrational")]
    IrrationalDistance(usize, usize),
    #[error("radicand does not fit the supported range")]
    RadicandTooLarge,
    #[error("configuration must have exactly {expected} points, got {got}")]
    WrongPointCount { expected: usize, got: usize },
    #[error("recovered frame violates a standard-position invariant: {0}")]
    InvariantViolation(String),
    #[error("configuration is not isq-adequate")]
    NotAdequate,
    #[error("no classification column matches the recovered residues")]
    NoColumn,
    #[error(transparent)]
    Num(#[from] NumError),
    #[error(transparent)]
    Adequacy(#[from] AdequacyError),
}

/// A real number `r + t·√n` with rational `r`, `t` and square-free `n`.
///
/// Canonical form: a rational value has `t = 0`, `n = 0`; otherwise `n` is
/// square-free and at least 2.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuadraticReal {
    rational_part: Rational,
    coeff: Rational,
    radicand: u64,
}

impl QuadraticReal {
    /// Build `r + t·√n`, normalizing the radicand (square parts move into
    /// the coefficient).
    pub fn new(r: Rational, t: Rational, n: u64) -> Result<Self, GeometryError> {
        if t.is_zero() || n == 0 {
            return Ok(QuadraticReal { rational_part: r, coeff: Rational::zero(), radicand: 0 });
        }
        let (s, sf) = squarefree_part(&n.into(), crate::rational::DEFAULT_FACTOR_BOUND)?;
        let s: u64 = (&s).try_into().map_err(|_| GeometryError::RadicandTooLarge)?;
        let sf: u64 = (&sf).try_into().map_err(|_| GeometryError::RadicandTooLarge)?;
        let coeff = t * int(s as i64);
        if sf == 1 {
            Ok(QuadraticReal {
                rational_part: r + coeff,
                coeff: Rational::zero(),
                radicand: 0,
            })
        } else {
            Ok(QuadraticReal { rational_part: r, coeff, radicand: sf })
        }
    }

    pub fn rational(r: Rational) -> Self {
        QuadraticReal { rational_part: r, coeff: Rational::zero(), radicand: 0 }
    }

    pub fn from_int(v: i64) -> Self {
        Self::rational(int(v))
    }

    /// `t·√n` with no rational part.
    pub fn root_multiple(t: Rational, n: u64) -> Result<Self, GeometryError> {
        Self::new(Rational::zero(), t, n)
    }

    pub fn rational_part(&self) -> &Rational {
        &self.rational_part
    }

    pub fn coeff(&self) -> &Rational {
        &self.coeff
    }

    pub fn radicand(&self) -> u64 {
        self.radicand
    }

    pub fn is_rational(&self) -> bool {
        self.coeff.is_zero()
    }

    fn to_radical_sum(&self) -> RadicalSum {
        let mut irr = BTreeMap::new();
        if !self.coeff.is_zero() {
            irr.insert(self.radicand, self.coeff.clone());
        }
        RadicalSum { rational: self.rational_part.clone(), irr }
    }

    /// Floating-point value, for display only.
    pub fn to_f64(&self) -> f64 {
        use num_traits::ToPrimitive;
        let r = self.rational_part.to_f64().unwrap_or(f64::NAN);
        let c = self.coeff.to_f64().unwrap_or(f64::NAN);
        r + c * (self.radicand as f64).sqrt()
    }
}

#[derive(Serialize, Deserialize)]
struct QuadraticRealJson {
    r: String,
    #[serde(default)]
    t: Option<String>,
    #[serde(default)]
    n: Option<u64>,
}

impl Serialize for QuadraticReal {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        QuadraticRealJson {
            r: self.rational_part.to_string(),
            t: Some(self.coeff.to_string()),
            n: Some(self.radicand),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for QuadraticReal {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        use serde::de::Error;
        let raw = QuadraticRealJson::deserialize(d)?;
        let r = parse_rational(&raw.r).map_err(D::Error::custom)?;
        let t = raw
            .t
            .map(|t| parse_rational(&t))
            .transpose()
            .map_err(D::Error::custom)?
            .unwrap_or_else(Rational::zero);
        QuadraticReal::new(r, t, raw.n.unwrap_or(0)).map_err(D::Error::custom)
    }
}

/// Internal exact form `rational + Σ coeff·√radicand` used while expanding
/// squared distances; radicands are square-free and ≥ 2, coefficients
/// nonzero.
#[derive(Debug, Clone, PartialEq, Eq)]
struct RadicalSum {
    rational: Rational,
    irr: BTreeMap<u64, Rational>,
}

impl RadicalSum {
    fn zero() -> Self {
        RadicalSum { rational: Rational::zero(), irr: BTreeMap::new() }
    }

    fn add_term(&mut self, radicand: u64, coeff: Rational) {
        if coeff.is_zero() {
            return;
        }
        debug_assert!(radicand >= 2);
        let entry = self.irr.entry(radicand).or_insert_with(Rational::zero);
        *entry += coeff;
        if entry.is_zero() {
            self.irr.remove(&radicand);
        }
    }

    fn sub(&self, other: &RadicalSum) -> RadicalSum {
        let mut out = self.clone();
        out.rational -= &other.rational;
        for (&m, c) in &other.irr {
            out.add_term(m, -c.clone());
        }
        out
    }

    /// Product, combining radicals: `√m·√m' = g·√(uv)` with `g = gcd(m, m')`
    /// and `uv` automatically square-free because `u`, `v` are coprime and
    /// square-free.
    fn mul(&self, other: &RadicalSum) -> Result<RadicalSum, GeometryError> {
        let mut out = RadicalSum::zero();
        out.rational = &self.rational * &other.rational;
        for (&m, c) in &self.irr {
            out.add_term(m, c * &other.rational);
        }
        for (&m, c) in &other.irr {
            out.add_term(m, c * &self.rational);
        }
        for (&m1, c1) in &self.irr {
            for (&m2, c2) in &other.irr {
                let g = gcd_u64(m1, m2);
                let (u, v) = (m1 / g, m2 / g);
                let prod = (u as u128) * (v as u128);
                let coeff = c1 * c2 * int(g as i64);
                if prod == 1 {
                    out.rational += coeff;
                } else {
                    let rad: u64 =
                        prod.try_into().map_err(|_| GeometryError::RadicandTooLarge)?;
                    out.add_term(rad, coeff);
                }
            }
        }
        Ok(out)
    }

    fn as_rational(&self) -> Option<&Rational> {
        self.irr.is_empty().then_some(&self.rational)
    }
}

fn gcd_u64(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd_u64(b, a % b)
    }
}

/// Exact squared Euclidean distance between two coordinate tuples; fails if
/// the irrational cross-terms do not cancel.
pub fn squared_distance(
    p: &[QuadraticReal],
    q: &[QuadraticReal],
) -> Result<Rational, GeometryError> {
    debug_assert_eq!(p.len(), q.len());
    let mut total = RadicalSum::zero();
    for (a, b) in p.iter().zip(q) {
        let delta = a.to_radical_sum().sub(&b.to_radical_sum());
        let sq = delta.mul(&delta)?;
        total.rational += &sq.rational;
        for (m, c) in sq.irr {
            total.add_term(m, c);
        }
    }
    total
        .as_rational()
        .cloned()
        .ok_or(GeometryError::IrrationalDistance(0, 0))
}

/// A validated arrangement of pairwise distinct points with rational squared
/// distances.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PointConfig {
    dim: usize,
    points: Vec<Vec<QuadraticReal>>,
    /// Cached pairwise squared distances, keyed by 1-indexed `(i, j)`,
    /// `i < j`.
    d2: BTreeMap<(usize, usize), Rational>,
}

impl PointConfig {
    pub fn new(dim: usize, points: Vec<Vec<QuadraticReal>>) -> Result<Self, GeometryError> {
        if dim != 2 && dim != 3 {
            return Err(GeometryError::BadDimension);
        }
        for (idx, p) in points.iter().enumerate() {
            if p.len() != dim {
                return Err(GeometryError::BadCoordinateCount(idx + 1));
            }
        }
        let mut d2 = BTreeMap::new();
        for i in 0..points.len() {
            for j in (i + 1)..points.len() {
                let dist = squared_distance(&points[i], &points[j])
                    .map_err(|_| GeometryError::IrrationalDistance(i + 1, j + 1))?;
                if dist.is_zero() {
                    return Err(GeometryError::DegeneratePoints(i + 1, j + 1));
                }
                d2.insert((i + 1, j + 1), dist);
            }
        }
        Ok(PointConfig { dim, points, d2 })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// Coordinates of the 1-indexed point `i`.
    pub fn point(&self, i: usize) -> &[QuadraticReal] {
        &self.points[i - 1]
    }

    pub fn points(&self) -> &[Vec<QuadraticReal>] {
        &self.points
    }

    /// Cached squared distance between 1-indexed points.
    pub fn dist_sq(&self, i: usize, j: usize) -> &Rational {
        let key = (i.min(j), i.max(j));
        &self.d2[&key]
    }
}

#[derive(Serialize, Deserialize)]
struct PointConfigJson {
    dim: usize,
    points: Vec<Vec<QuadraticReal>>,
}

impl Serialize for PointConfig {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        PointConfigJson { dim: self.dim, points: self.points.clone() }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for PointConfig {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let raw = PointConfigJson::deserialize(d)?;
        PointConfig::new(raw.dim, raw.points).map_err(serde::de::Error::custom)
    }
}

/// Inverse-square couplings `J_{i,j} = 1/d²_{i,j}` of a configuration.
pub fn couplings_from_points(cfg: &PointConfig) -> Result<CouplingSet, GeometryError> {
    let n = cfg.len();
    let entries = cfg
        .d2
        .iter()
        .map(|(&(i, j), d)| (i, j, d.recip()))
        .collect::<Vec<_>>();
    Ok(CouplingSet::new(n, entries)?)
}

/// Full adequacy decision on the inverse-square couplings.
pub fn check_isq_adequacy(cfg: &PointConfig) -> Result<AdequacyReport, GeometryError> {
    Ok(check_adequacy(&couplings_from_points(cfg)?))
}

/// Weak variant: only requires all couplings to be odd integer multiples of
/// a common base, dropping the even-degree condition.
pub fn is_weakly_isq_adequate(cfg: &PointConfig) -> Result<bool, GeometryError> {
    if cfg.len() < 2 {
        return Ok(true);
    }
    Ok(base_coupling(&couplings_from_points(cfg)?).is_some())
}

/// Verdict of the collinearity / right-angle exclusion test on a triple.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum TripleKind {
    Collinear,
    RightTriangle,
    Neither,
}

/// Classify three points with rational squared distances.
///
/// Collinearity (`d₁₃ = d₁₂ + d₂₃` in some order) is decided without
/// square roots through the equivalent polynomial identity
/// `(z - x - y)² = 4xy` with `z ≥ x + y`, on squared distances `x, y, z`; a
/// right angle is `z = x + y` for some assignment.
pub fn triple_exclusion(
    p: &[QuadraticReal],
    q: &[QuadraticReal],
    r: &[QuadraticReal],
) -> Result<TripleKind, GeometryError> {
    let x = squared_distance(p, q)?;
    let y = squared_distance(q, r)?;
    let z = squared_distance(p, r)?;
    let collinear = |x: &Rational, y: &Rational, z: &Rational| {
        let lhs = z - x - y;
        !lhs.is_negative() && &lhs * &lhs == int(4) * x * y
    };
    for (x, y, z) in [(&x, &y, &z), (&x, &z, &y), (&y, &z, &x)] {
        if collinear(x, y, z) {
            return Ok(TripleKind::Collinear);
        }
    }
    for (x, y, z) in [(&x, &y, &z), (&x, &z, &y), (&y, &z, &x)] {
        if *z == x + y {
            return Ok(TripleKind::RightTriangle);
        }
    }
    Ok(TripleKind::Neither)
}

/// [`triple_exclusion`] over every triple of a configuration: true iff no
/// triple is collinear or right-angled.
pub fn all_triples_unexcluded(cfg: &PointConfig) -> Result<bool, GeometryError> {
    let n = cfg.len();
    for i in 1..=n {
        for j in (i + 1)..=n {
            for k in (j + 1)..=n {
                let kind = triple_exclusion(cfg.point(i), cfg.point(j), cfg.point(k))?;
                if kind != TripleKind::Neither {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;

    fn qr(r: (i64, i64), t: (i64, i64), n: u64) -> QuadraticReal {
        QuadraticReal::new(rat(r.0, r.1), rat(t.0, t.1), n).unwrap()
    }

    fn rational_pt(coords: &[(i64, i64)]) -> Vec<QuadraticReal> {
        coords.iter().map(|&(a, b)| QuadraticReal::rational(rat(a, b))).collect()
    }

    #[test]
    fn quadratic_real_canonicalizes() {
        // √12 = 2√3
        let x = qr((0, 1), (1, 1), 12);
        assert_eq!(x.coeff(), &rat(2, 1));
        assert_eq!(x.radicand(), 3);
        // √9 = 3 folds into the rational part
        let x = qr((1, 2), (1, 1), 9);
        assert!(x.is_rational());
        assert_eq!(x.rational_part(), &rat(7, 2));
        // zero coefficient clears the radicand
        let x = qr((1, 1), (0, 1), 7);
        assert_eq!(x.radicand(), 0);
    }

    #[test]
    fn squared_distance_examples() {
        let a = rational_pt(&[(0, 1), (0, 1)]);
        let b = rational_pt(&[(1, 1), (0, 1)]);
        assert_eq!(squared_distance(&a, &b).unwrap(), int(1));

        // (0,0) to (1/2, √3/2): unit distance
        let c = vec![qr((1, 2), (0, 1), 0), qr((0, 1), (1, 2), 3)];
        assert_eq!(squared_distance(&a, &c).unwrap(), int(1));

        // (1,0,0) to (1/2, 9√11/22, √110/11): squared distance 3
        let p = vec![
            QuadraticReal::from_int(1),
            QuadraticReal::from_int(0),
            QuadraticReal::from_int(0),
        ];
        let q = vec![
            qr((1, 2), (0, 1), 0),
            qr((0, 1), (9, 22), 11),
            qr((0, 1), (1, 11), 110),
        ];
        assert_eq!(squared_distance(&p, &q).unwrap(), int(3));
    }

    #[test]
    fn irrational_distance_rejected() {
        // (0,0) and (1 + √2, 0): squared distance 3 + 2√2
        let a = rational_pt(&[(0, 1), (0, 1)]);
        let b = vec![qr((1, 1), (1, 1), 2), qr((0, 1), (0, 1), 0)];
        assert!(squared_distance(&a, &b).is_err());
        assert!(matches!(
            PointConfig::new(2, vec![a.clone(), b]),
            Err(GeometryError::IrrationalDistance(1, 2))
        ));

        // Distinct radicands in one coordinate difference survive squaring:
        // (0,0) vs (√2, √3) is fine (2 + 3), but (√2, 0) vs (√3, 0) is not.
        let c = vec![qr((0, 1), (1, 1), 2), qr((0, 1), (0, 1), 0)];
        let d = vec![qr((0, 1), (1, 1), 3), qr((0, 1), (0, 1), 0)];
        assert!(squared_distance(&c, &d).is_err());
        assert_eq!(squared_distance(&a, &vec![c[0].clone(), d[0].clone()]).unwrap(), int(5));
    }

    #[test]
    fn distinctness_enforced() {
        let a = rational_pt(&[(1, 2), (0, 1)]);
        assert!(matches!(
            PointConfig::new(2, vec![a.clone(), a]),
            Err(GeometryError::DegeneratePoints(1, 2))
        ));
    }

    #[test]
    fn mixed_radicand_distances_can_cancel() {
        // Same irrational y-offset on both points cancels in the difference.
        let a = vec![qr((0, 1), (1, 1), 5), qr((0, 1), (2, 1), 7)];
        let b = vec![qr((1, 1), (1, 1), 5), qr((0, 1), (2, 1), 7)];
        assert_eq!(squared_distance(&a, &b).unwrap(), int(1));
    }

    #[test]
    fn triple_exclusion_examples() {
        let p = rational_pt(&[(0, 1), (0, 1)]);
        let q = rational_pt(&[(1, 1), (0, 1)]);
        let r = rational_pt(&[(2, 1), (0, 1)]);
        assert_eq!(triple_exclusion(&p, &q, &r).unwrap(), TripleKind::Collinear);

        let r = rational_pt(&[(0, 1), (1, 1)]);
        assert_eq!(triple_exclusion(&p, &q, &r).unwrap(), TripleKind::RightTriangle);

        let r = vec![qr((1, 2), (0, 1), 0), qr((0, 1), (1, 2), 3)];
        assert_eq!(triple_exclusion(&p, &q, &r).unwrap(), TripleKind::Neither);
    }

    #[test]
    fn collinear_triples_with_odd_positions_detected() {
        // Points at x = 0, 1/3, 4/3 on a line: collinear with rational d².
        let p = rational_pt(&[(0, 1), (0, 1)]);
        let q = rational_pt(&[(1, 3), (0, 1)]);
        let r = rational_pt(&[(4, 3), (0, 1)]);
        assert_eq!(triple_exclusion(&p, &q, &r).unwrap(), TripleKind::Collinear);
        // Order of arguments does not matter.
        assert_eq!(triple_exclusion(&q, &r, &p).unwrap(), TripleKind::Collinear);
    }

    #[test]
    fn couplings_of_unit_triangle() {
        let cfg = PointConfig::new(
            2,
            vec![
                rational_pt(&[(0, 1), (0, 1)]),
                rational_pt(&[(1, 1), (0, 1)]),
                vec![qr((1, 2), (0, 1), 0), qr((0, 1), (1, 2), 3)],
            ],
        )
        .unwrap();
        let c = couplings_from_points(&cfg).unwrap();
        assert!(c.iter().all(|(_, v)| *v == int(1)));
        assert!(check_isq_adequacy(&cfg).unwrap().adequate);
        assert!(is_weakly_isq_adequate(&cfg).unwrap());
        assert!(all_triples_unexcluded(&cfg).unwrap());
    }

    #[test]
    fn unit_square_not_adequate() {
        let cfg = PointConfig::new(
            2,
            vec![
                rational_pt(&[(0, 1), (0, 1)]),
                rational_pt(&[(1, 1), (0, 1)]),
                rational_pt(&[(1, 1), (1, 1)]),
                rational_pt(&[(0, 1), (1, 1)]),
            ],
        )
        .unwrap();
        let report = check_isq_adequacy(&cfg).unwrap();
        assert!(!report.adequate);
        assert!(!is_weakly_isq_adequate(&cfg).unwrap());
    }

    #[test]
    fn point_config_json_round_trip() {
        let cfg = PointConfig::new(
            2,
            vec![
                rational_pt(&[(0, 1), (0, 1)]),
                rational_pt(&[(1, 1), (0, 1)]),
                vec![qr((-5, 2), (0, 1), 0), qr((0, 1), (1, 2), 3)],
                vec![qr((-5, 2), (0, 1), 0), qr((0, 1), (-1, 2), 3)],
            ],
        )
        .unwrap();
        let json = serde_json::to_string(&cfg).unwrap();
        let back: PointConfig = serde_json::from_str(&json).unwrap();
        assert_eq!(cfg, back);
    }
}
