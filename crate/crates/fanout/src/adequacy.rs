//! Decides whether a set of pairwise couplings `J_{i,j}` admits a time `t`
//! with `U_n ∝ e^{-iH_n t}`: all couplings must be odd integer multiples of a
//! common base `J`, and the edges whose ratio is `≡ 3 (mod 4)` must form a
//! graph in which every vertex has even degree.
//!
//! Vertices are 1-indexed and edges are unordered pairs `{i, j}` with
//! `i < j`, matching the JSON wire format.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::rational::{int, rat, ratstr, ratstr_opt, Rational};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AdequacyError {
    #[error("qubit count must be at least 1")]
    InvalidQubitCount,
    #[error("edge {{{0}, {1}}} is not a valid pair of distinct vertices")]
    BadEdge(usize, usize),
    #[error("coupling for edge {{{0}, {1}}} given more than once")]
    DuplicateCoupling(usize, usize),
    #[error("coupling for edge {{{0}, {1}}} missing")]
    MissingCoupling(usize, usize),
    #[error("coupling for edge {{{0}, {1}}} must be strictly positive")]
    NonPositiveCoupling(usize, usize),
    #[error("coupling ratio for edge {{{0}, {1}}} is not an odd integer")]
    NotOddMultiple(usize, usize),
    #[error("expected a vector of {expected} pair entries, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("qubit count {n} exceeds the exhaustive-check cap {max}")]
    TooLarge { n: usize, max: usize },
}

/// Symmetric positive coupling matrix for `n` qubits, stored as the strict
/// upper triangle.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CouplingSet {
    n: usize,
    values: BTreeMap<(usize, usize), Rational>,
}

impl CouplingSet {
    /// Build from explicit `(i, j, value)` entries; exactly one entry per
    /// unordered pair of distinct vertices in `1..=n` is required, each
    /// strictly positive. `n = 1` is the degenerate single-qubit set with no
    /// couplings.
    pub fn new(
        n: usize,
        entries: impl IntoIterator<Item = (usize, usize, Rational)>,
    ) -> Result<Self, AdequacyError> {
        if n == 0 {
            return Err(AdequacyError::InvalidQubitCount);
        }
        let mut values = BTreeMap::new();
        for (i, j, value) in entries {
            let (i, j) = (i.min(j), i.max(j));
            if i == j || i == 0 || j > n {
                return Err(AdequacyError::BadEdge(i, j));
            }
            if !value.is_positive() {
                return Err(AdequacyError::NonPositiveCoupling(i, j));
            }
            if values.insert((i, j), value).is_some() {
                return Err(AdequacyError::DuplicateCoupling(i, j));
            }
        }
        for i in 1..=n {
            for j in (i + 1)..=n {
                if !values.contains_key(&(i, j)) {
                    return Err(AdequacyError::MissingCoupling(i, j));
                }
            }
        }
        Ok(CouplingSet { n, values })
    }

    /// Build from the strict upper triangle listed in lexicographic order
    /// `(1,2), (1,3), …, (1,n), (2,3), …`.
    pub fn from_upper(n: usize, upper: &[Rational]) -> Result<Self, AdequacyError> {
        let mut it = upper.iter().cloned();
        let mut entries = Vec::new();
        for i in 1..=n {
            for j in (i + 1)..=n {
                let v = it.next().ok_or(AdequacyError::MissingCoupling(i, j))?;
                entries.push((i, j, v));
            }
        }
        if it.next().is_some() {
            return Err(AdequacyError::DimensionMismatch {
                expected: n * (n - 1) / 2,
                got: upper.len(),
            });
        }
        Self::new(n, entries)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Symmetric lookup: `get(i, j) == get(j, i)`.
    pub fn get(&self, i: usize, j: usize) -> &Rational {
        let key = (i.min(j), i.max(j));
        &self.values[&key]
    }

    /// Upper-triangle iteration in lexicographic edge order.
    pub fn iter(&self) -> impl Iterator<Item = ((usize, usize), &Rational)> {
        self.values.iter().map(|(&e, v)| (e, v))
    }

    /// All couplings multiplied by a positive rational.
    pub fn scale(&self, factor: &Rational) -> CouplingSet {
        CouplingSet {
            n: self.n,
            values: self
                .values
                .iter()
                .map(|(&e, v)| (e, v * factor))
                .collect(),
        }
    }
}

#[derive(Serialize, Deserialize)]
struct CouplingEntryJson {
    i: usize,
    j: usize,
    #[serde(with = "ratstr")]
    value: Rational,
}

#[derive(Serialize, Deserialize)]
struct CouplingSetJson {
    n: usize,
    couplings: Vec<CouplingEntryJson>,
}

impl Serialize for CouplingSet {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        CouplingSetJson {
            n: self.n,
            couplings: self
                .values
                .iter()
                .map(|(&(i, j), v)| CouplingEntryJson { i, j, value: v.clone() })
                .collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for CouplingSet {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let raw = CouplingSetJson::deserialize(d)?;
        CouplingSet::new(raw.n, raw.couplings.into_iter().map(|e| (e.i, e.j, e.value)))
            .map_err(serde::de::Error::custom)
    }
}

/// The graph of thick edges (coupling ratio `≡ 3 mod 4`) on vertices `1..=n`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ThicknessGraph {
    pub n: usize,
    /// Unordered pairs `(i, j)` with `i < j`, kept sorted lexicographically.
    pub thick_edges: BTreeSet<(usize, usize)>,
}

impl ThicknessGraph {
    pub fn degree(&self, v: usize) -> usize {
        self.thick_edges
            .iter()
            .filter(|&&(i, j)| i == v || j == v)
            .count()
    }

    /// Vertices of odd degree, ascending.
    pub fn odd_vertices(&self) -> Vec<usize> {
        (1..=self.n).filter(|&v| self.degree(v) % 2 == 1).collect()
    }

    /// Complement within the complete graph: the thick set obtained by
    /// replacing `J` with `J/3`, which multiplies every ratio by 3 and flips
    /// every edge's thickness.
    pub fn complement(&self) -> ThicknessGraph {
        let mut thick_edges = BTreeSet::new();
        for i in 1..=self.n {
            for j in (i + 1)..=self.n {
                if !self.thick_edges.contains(&(i, j)) {
                    thick_edges.insert((i, j));
                }
            }
        }
        ThicknessGraph { n: self.n, thick_edges }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum FailureReason {
    /// No base coupling exists: the ratios to the collective gcd are not all
    /// odd integers.
    NonOddRatios,
    /// Both candidate thickness graphs have vertices of odd degree; the
    /// listed vertices are the odd ones under the gcd base coupling.
    OddDegreeVertex(Vec<usize>),
}

/// Outcome of the adequacy decision, packaging the witness when it exists.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AdequacyReport {
    pub adequate: bool,
    /// The base coupling `J` whose thickness graph has all-even degrees.
    #[serde(with = "ratstr_opt")]
    pub base_coupling: Option<Rational>,
    /// `t·J` in units of π: always `1/4` on success (`t = π/(4J)`).
    #[serde(with = "ratstr_opt")]
    pub time_t_in_units: Option<Rational>,
    pub thickness: Option<ThicknessGraph>,
    pub failure_reason: Option<FailureReason>,
}

impl AdequacyReport {
    fn failure(reason: FailureReason) -> Self {
        AdequacyReport {
            adequate: false,
            base_coupling: None,
            time_t_in_units: None,
            thickness: None,
            failure_reason: Some(reason),
        }
    }

    fn success(base: Rational, thickness: ThicknessGraph) -> Self {
        AdequacyReport {
            adequate: true,
            base_coupling: Some(base),
            time_t_in_units: Some(rat(1, 4)),
            thickness: Some(thickness),
            failure_reason: None,
        }
    }
}

fn big_gcd(a: &BigInt, b: &BigInt) -> BigInt {
    a.gcd(b)
}

fn big_lcm(a: &BigInt, b: &BigInt) -> BigInt {
    a.lcm(b)
}

/// The rational gcd of all couplings (gcd of numerators over lcm of
/// denominators), provided every ratio to it is an odd integer; `None`
/// otherwise.
///
/// The ratios to the rational gcd are always integers with collective gcd 1,
/// so they cannot all be even; if their parities are mixed then the 2-adic
/// valuations of the couplings differ and no base coupling exists at all
/// (any valid base makes all ratios odd, forcing equal valuations).
pub fn base_coupling(c: &CouplingSet) -> Option<Rational> {
    let mut values = c.iter().map(|(_, v)| v);
    let first = values.next()?;
    let mut num = first.numer().clone();
    let mut den = first.denom().clone();
    for v in values {
        num = big_gcd(&num, v.numer());
        den = big_lcm(&den, v.denom());
    }
    let g = Rational::new(num, den);
    for (_, v) in c.iter() {
        let ratio = v / &g;
        if !ratio.is_integer() || ratio.numer().is_even() {
            return None;
        }
    }
    Some(g)
}

/// The graph of edges with `J_{i,j}/J ≡ 3 (mod 4)`. Every ratio must be an
/// odd integer.
pub fn thickness_graph(c: &CouplingSet, base: &Rational) -> Result<ThicknessGraph, AdequacyError> {
    let four = BigInt::from(4);
    let three = BigInt::from(3);
    let mut thick_edges = BTreeSet::new();
    for ((i, j), v) in c.iter() {
        let ratio = v / base;
        if !ratio.is_integer() || ratio.numer().is_even() || !ratio.is_positive() {
            return Err(AdequacyError::NotOddMultiple(i, j));
        }
        if ratio.numer().mod_floor(&four) == three {
            thick_edges.insert((i, j));
        }
    }
    Ok(ThicknessGraph { n: c.n(), thick_edges })
}

/// Full adequacy decision.
///
/// Candidate base couplings are the rational gcd `g` and `g/3`: every valid
/// base has the form `g/m` for odd `m`, and the thickness graph only depends
/// on `m mod 4`, so those two candidates exhaust the possibilities. (`g/3`
/// is genuinely needed: a coupling set whose gcd-ratios put odd degrees on
/// the thick graph can still be adequate after the flip.)
pub fn check_adequacy(c: &CouplingSet) -> AdequacyReport {
    if c.n() == 1 {
        // Single qubit: U₁ is the identity and the conditions are vacuous.
        return AdequacyReport::success(
            int(1),
            ThicknessGraph { n: 1, thick_edges: BTreeSet::new() },
        );
    }
    let Some(g) = base_coupling(c) else {
        return AdequacyReport::failure(FailureReason::NonOddRatios);
    };
    let thickness = thickness_graph(c, &g).expect("gcd ratios are odd integers");
    let odd = thickness.odd_vertices();
    if odd.is_empty() {
        return AdequacyReport::success(g, thickness);
    }
    let flipped = thickness.complement();
    if flipped.odd_vertices().is_empty() {
        return AdequacyReport::success(g / int(3), flipped);
    }
    AdequacyReport::failure(FailureReason::OddDegreeVertex(odd))
}

/// Graph-free restatement of the adequacy condition: a base coupling exists
/// and for every vertex `i` the product of ratios over `j ≠ i` is
/// `≡ 1 (mod 4)`. Must agree with [`check_adequacy`] on every input.
pub fn check_adequacy_product_form(c: &CouplingSet) -> bool {
    if c.n() == 1 {
        return true;
    }
    let Some(g) = base_coupling(c) else {
        return false;
    };
    let products_ok = |base: &Rational| {
        let four = BigInt::from(4);
        (1..=c.n()).all(|i| {
            let mut prod = BigInt::one();
            for j in 1..=c.n() {
                if j != i {
                    let ratio = c.get(i, j) / base;
                    prod = (prod * ratio.numer()).mod_floor(&four);
                }
            }
            prod.is_one()
        })
    };
    products_ok(&g) || products_ok(&(g / int(3)))
}

/// Number of strict-upper-triangle pairs for `n` vertices.
pub fn pair_count(n: usize) -> usize {
    n * (n - 1) / 2
}

fn pair_index(i: usize, j: usize, n: usize) -> usize {
    // (i, j) with 1 <= i < j <= n, lexicographic.
    (i - 1) * n - (i - 1) * i / 2 + (j - i - 1)
}

/// Kernel test for the parity matrix whose rows are indexed by bit vectors
/// `x` and whose `(x, {i,j})` entry is `x_i ⊕ x_j`: true iff `M_n·g ≡ 0
/// (mod 2)`.
///
/// The matrix has rank `n - 1` and its rows are spanned by the rows of
/// Hamming weight 1, so only those `n` rows are checked. The full `2^n`-row
/// version is available as [`mn_kernel_check_exhaustive`].
pub fn mn_kernel_check(n: usize, g: &[i64]) -> Result<bool, AdequacyError> {
    if g.len() != pair_count(n) {
        return Err(AdequacyError::DimensionMismatch {
            expected: pair_count(n),
            got: g.len(),
        });
    }
    // Weight-1 row for vertex r sums g over all pairs containing r.
    Ok((1..=n).all(|r| {
        let mut sum = 0i64;
        for other in 1..=n {
            if other != r {
                let (i, j) = (r.min(other), r.max(other));
                sum += g[pair_index(i, j, n)];
            }
        }
        sum % 2 == 0
    }))
}

/// Exhaustive kernel test over all `2^n` rows; the independent oracle for
/// [`mn_kernel_check`]. Capped at `n <= 16`.
pub fn mn_kernel_check_exhaustive(n: usize, g: &[i64]) -> Result<bool, AdequacyError> {
    const MAX_N: usize = 16;
    if n > MAX_N {
        return Err(AdequacyError::TooLarge { n, max: MAX_N });
    }
    if g.len() != pair_count(n) {
        return Err(AdequacyError::DimensionMismatch {
            expected: pair_count(n),
            got: g.len(),
        });
    }
    for x in 0u32..(1 << n) {
        let mut sum = 0i64;
        let mut idx = 0;
        for i in 1..=n {
            for j in (i + 1)..=n {
                if (x >> (i - 1)) & 1 != (x >> (j - 1)) & 1 {
                    sum += g[idx];
                }
                idx += 1;
            }
        }
        if sum % 2 != 0 {
            return Ok(false);
        }
    }
    Ok(true)
}
