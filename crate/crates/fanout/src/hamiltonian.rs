//! Brute-force phase engine: evaluates the diagonal action of the coupling
//! Hamiltonian evolution and of `U_n` on every basis state, with all phases
//! kept as exact rationals in units of π, and decides equality up to a
//! global phase.
//!
//! Basis-state indices encode bit `x_i` at position `i - 1` (qubit 1 is the
//! least significant bit).

use std::collections::BTreeMap;

use num_traits::{Signed, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::adequacy::{base_coupling, CouplingSet};
use crate::rational::{int, rat, ratstr_opt, Rational};

/// Cap on exhaustive loops over `2^n` basis states.
pub const DEFAULT_MAX_QUBITS: usize = 20;

/// Hard cap for phase-vector allocation (`2^n` rationals).
pub const MAX_PHASE_QUBITS: usize = 24;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum HamiltonianError {
    #[error("qubit count {n} exceeds the exhaustive-loop cap {max}")]
    TooLarge { n: usize, max: usize },
    #[error("coupling map does not cover exactly the pairs of {n} qubits")]
    DimensionMismatch { n: usize },
}

/// Exact phase function over all `2^n` basis states, in units of π and
/// reduced into `[0, 2)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PhaseVector {
    n: usize,
    phases: Vec<Rational>,
}

fn mod_two(r: &Rational) -> Rational {
    let two = int(2);
    let m = r - (r / &two).floor() * &two;
    debug_assert!(!m.is_negative() && m < two);
    m
}

impl PhaseVector {
    fn from_raw(n: usize, phases: Vec<Rational>) -> Self {
        debug_assert_eq!(phases.len(), 1 << n);
        PhaseVector {
            n,
            phases: phases.iter().map(mod_two).collect(),
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Phase of basis state `x` (in π-units, within `[0, 2)`).
    pub fn phase(&self, x: usize) -> &Rational {
        &self.phases[x]
    }

    pub fn iter(&self) -> impl Iterator<Item = &Rational> {
        self.phases.iter()
    }

    /// All phases shifted by a constant (still reduced mod 2). A global
    /// phase shift never changes whether two vectors differ by a constant.
    pub fn shifted(&self, delta: &Rational) -> PhaseVector {
        PhaseVector::from_raw(
            self.n,
            self.phases.iter().map(|p| p + delta).collect(),
        )
    }

    /// If `self - other` is a constant vector mod 2, returns that constant.
    pub fn constant_difference(&self, other: &PhaseVector) -> Option<Rational> {
        if self.n != other.n {
            return None;
        }
        let delta = mod_two(&(&self.phases[0] - &other.phases[0]));
        for (a, b) in self.phases.iter().zip(other.phases.iter()).skip(1) {
            if mod_two(&(a - b)) != delta {
                return None;
            }
        }
        Some(delta)
    }
}

/// Phase vector of `U_n`: basis state of Hamming weight `w` carries phase
/// `w(n-w)/2` in π-units.
pub fn un_phase_vector(n: usize) -> Result<PhaseVector, HamiltonianError> {
    if n == 0 || n > MAX_PHASE_QUBITS {
        return Err(HamiltonianError::TooLarge { n, max: MAX_PHASE_QUBITS });
    }
    let phases: Vec<Rational> = (0usize..1 << n)
        .into_par_iter()
        .map(|x| {
            let w = (x as u64).count_ones() as i64;
            rat(w * (n as i64 - w), 2)
        })
        .collect();
    Ok(PhaseVector::from_raw(n, phases))
}

/// Phase vector of the evolution `e^{-iH_n t}` for exact products
/// `k_{i,j} = J_{i,j}·t/π`: basis state `x` carries phase
/// `-Σ k_{i,j}·(-1)^{x_i + x_j}` (the evolution phase is minus the
/// eigenvalue sum).
pub fn evolved_phase_vector(
    n: usize,
    tj_units: &BTreeMap<(usize, usize), Rational>,
) -> Result<PhaseVector, HamiltonianError> {
    if n == 0 || n > MAX_PHASE_QUBITS {
        return Err(HamiltonianError::TooLarge { n, max: MAX_PHASE_QUBITS });
    }
    let mut pairs = Vec::with_capacity(tj_units.len());
    for (&(i, j), k) in tj_units {
        if i == 0 || j == 0 || i >= j || j > n {
            return Err(HamiltonianError::DimensionMismatch { n });
        }
        pairs.push((i - 1, j - 1, k.clone()));
    }
    if pairs.len() != n * (n - 1) / 2 {
        return Err(HamiltonianError::DimensionMismatch { n });
    }
    let phases: Vec<Rational> = (0usize..1 << n)
        .into_par_iter()
        .map(|x| {
            let mut sum = Rational::zero();
            for (bi, bj, k) in &pairs {
                if (x >> bi) & 1 == (x >> bj) & 1 {
                    sum += k;
                } else {
                    sum -= k;
                }
            }
            -sum
        })
        .collect();
    Ok(PhaseVector::from_raw(n, phases))
}

/// Whether `U_n ∝ e^{-iH_n t}` holds at the canonical times, with the
/// witnessing global phase.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RealizationWitness {
    pub realizable: bool,
    /// `t·J/π`, always `1/4` on success.
    #[serde(with = "ratstr_opt")]
    pub t_times_j_over_pi: Option<Rational>,
    /// Global phase `θ/π` (mod 2): the constant by which the evolved phases
    /// must be shifted to reach the `U_n` phases.
    #[serde(with = "ratstr_opt")]
    pub theta_over_pi: Option<Rational>,
}

impl RealizationWitness {
    fn no() -> Self {
        RealizationWitness {
            realizable: false,
            t_times_j_over_pi: None,
            theta_over_pi: None,
        }
    }
}

/// Exhaustive ground-truth check that the coupling evolution realizes `U_n`
/// up to global phase, using the default qubit cap.
pub fn verify_un_realization(c: &CouplingSet) -> Result<RealizationWitness, HamiltonianError> {
    verify_un_realization_capped(c, DEFAULT_MAX_QUBITS)
}

/// As [`verify_un_realization`] with an explicit cap on `n`.
///
/// The candidate times are `t = π/(4J)` for `J` the rational gcd of the
/// couplings and for `J/3` (flipping edge thickness); when either matches,
/// the realization holds with that `t`. Couplings without a common odd-ratio
/// base admit no realization at all, because a matching evolution forces
/// every `J_{i,j}·t - π/4` onto the lattice `(π/2)·Z`.
pub fn verify_un_realization_capped(
    c: &CouplingSet,
    max_n: usize,
) -> Result<RealizationWitness, HamiltonianError> {
    let n = c.n();
    if n > max_n {
        return Err(HamiltonianError::TooLarge { n, max: max_n });
    }
    if n == 1 {
        return Ok(RealizationWitness {
            realizable: true,
            t_times_j_over_pi: Some(rat(1, 4)),
            theta_over_pi: Some(int(0)),
        });
    }
    let Some(g) = base_coupling(c) else {
        return Ok(RealizationWitness::no());
    };
    let un = un_phase_vector(n)?;
    for base in [g.clone(), g / int(3)] {
        let quarter = rat(1, 4);
        let tj_units: BTreeMap<(usize, usize), Rational> = c
            .iter()
            .map(|(e, v)| (e, v / &base * &quarter))
            .collect();
        let evolved = evolved_phase_vector(n, &tj_units)?;
        if let Some(theta) = un.constant_difference(&evolved) {
            return Ok(RealizationWitness {
                realizable: true,
                t_times_j_over_pi: Some(quarter),
                theta_over_pi: Some(theta),
            });
        }
    }
    Ok(RealizationWitness::no())
}

/// Global phase `(n² - n)/8` (in π-units, not reduced mod 2) that makes the
/// all-equal-coupling evolution match `U_n` exactly.
pub fn equal_coupling_theta(n: usize) -> Rational {
    let n = n as i64;
    rat(n * n - n, 8)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::adequacy::pair_count;
    use crate::rational::{int, rat};

    fn equal_couplings(n: usize, value: Rational) -> CouplingSet {
        let upper: Vec<Rational> = vec![value; pair_count(n)];
        CouplingSet::from_upper(n, &upper).unwrap()
    }

    fn equal_k_map(n: usize, k: Rational) -> BTreeMap<(usize, usize), Rational> {
        let mut m = BTreeMap::new();
        for i in 1..=n {
            for j in (i + 1)..=n {
                m.insert((i, j), k.clone());
            }
        }
        m
    }

    #[test]
    fn un_phase_examples() {
        let v = un_phase_vector(2).unwrap();
        assert_eq!(v.phase(0b01), &rat(1, 2)); // w = 1: phase i
        assert_eq!(v.phase(0b00), &int(0));
        let v = un_phase_vector(3).unwrap();
        assert_eq!(v.phase(0), &int(0));
        let v = un_phase_vector(4).unwrap();
        assert_eq!(v.phase(0b0011), &int(0)); // w(n-w) = 4, i⁴ = 1
    }

    #[test]
    fn evolved_phase_examples() {
        let v = evolved_phase_vector(2, &equal_k_map(2, rat(1, 4))).unwrap();
        assert_eq!(v.phase(0b00), &rat(7, 4));
        assert_eq!(v.phase(0b01), &rat(1, 4));
        assert_eq!(v.phase(0b10), &rat(1, 4));
        assert_eq!(v.phase(0b11), &rat(7, 4));

        let v = evolved_phase_vector(3, &equal_k_map(3, int(0))).unwrap();
        assert!(v.iter().all(|p| p.is_zero()));
    }

    #[test]
    fn equal_couplings_shift_by_theta() {
        // Evolved at k = 1/4 matches U₃ after adding the constant 3/4.
        let un = un_phase_vector(3).unwrap();
        let evolved = evolved_phase_vector(3, &equal_k_map(3, rat(1, 4))).unwrap();
        let theta = un.constant_difference(&evolved).unwrap();
        assert_eq!(theta, rat(3, 4));
        assert_eq!(evolved.shifted(&theta), un);
    }

    #[test]
    fn dimension_mismatch_is_rejected() {
        let mut m = equal_k_map(3, rat(1, 4));
        m.remove(&(1, 2));
        assert!(matches!(
            evolved_phase_vector(3, &m),
            Err(HamiltonianError::DimensionMismatch { n: 3 })
        ));
    }

    #[test]
    fn witness_examples() {
        let w = verify_un_realization(&equal_couplings(2, int(1))).unwrap();
        assert!(w.realizable);
        assert_eq!(w.theta_over_pi, Some(rat(1, 4)));
        assert_eq!(w.t_times_j_over_pi, Some(rat(1, 4)));

        let fig2_right = CouplingSet::from_upper(
            4,
            &[int(273), int(39), int(39), int(21), int(21), int(91)],
        )
        .unwrap();
        assert!(verify_un_realization(&fig2_right).unwrap().realizable);

        let bad = CouplingSet::from_upper(3, &[int(1), int(1), int(2)]).unwrap();
        assert!(!verify_un_realization(&bad).unwrap().realizable);
    }

    #[test]
    fn witness_uses_flipped_base_when_gcd_fails() {
        // Fig. 2 left: realizable only at t = π/(4J) with J = gcd/3.
        let fig2_left =
            CouplingSet::from_upper(4, &[int(9), int(3), int(3), int(9), int(9), int(3)])
                .unwrap();
        let w = verify_un_realization(&fig2_left).unwrap();
        assert!(w.realizable);
    }

    #[test]
    fn equal_coupling_theta_examples() {
        assert_eq!(equal_coupling_theta(2), rat(1, 4));
        assert_eq!(equal_coupling_theta(1), int(0));
        assert_eq!(equal_coupling_theta(6), rat(15, 4));
        // Witness reports the same value reduced mod 2.
        let w = verify_un_realization(&equal_couplings(6, int(1))).unwrap();
        assert_eq!(w.theta_over_pi, Some(rat(7, 4)));
    }

    #[test]
    fn hockey_stick_identity() {
        // Σ_{i<j} (-1)^{x_i+x_j} = (n²-n)/2 - 2w(n-w) for every basis state.
        for n in 1usize..=12 {
            for x in 0usize..1 << n {
                let w = x.count_ones() as i64;
                let mut sum = 0i64;
                for i in 0..n {
                    for j in (i + 1)..n {
                        if (x >> i) & 1 == (x >> j) & 1 {
                            sum += 1;
                        } else {
                            sum -= 1;
                        }
                    }
                }
                let n = n as i64;
                assert_eq!(sum, (n * n - n) / 2 - 2 * w * (n - w));
            }
        }
    }

    #[test]
    fn successful_witness_has_half_integer_offsets() {
        // On success every tJ-unit entry minus 1/4 is a multiple of 1/2.
        let fig2_right = CouplingSet::from_upper(
            4,
            &[int(273), int(39), int(39), int(21), int(21), int(91)],
        )
        .unwrap();
        let w = verify_un_realization(&fig2_right).unwrap();
        assert!(w.realizable);
        let base = base_coupling(&fig2_right).unwrap();
        for (_, v) in fig2_right.iter() {
            let k = v / &base * rat(1, 4);
            let f = &k - rat(1, 4);
            assert!((f * int(2)).is_integer());
        }
    }

    #[test]
    fn realization_matches_adequacy_on_small_random_sets() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for _ in 0..200 {
            let n = rng.random_range(2usize..=6);
            let upper: Vec<Rational> = (0..pair_count(n))
                .map(|_| rat(rng.random_range(1i64..40), rng.random_range(1i64..6)))
                .collect();
            let c = CouplingSet::from_upper(n, &upper).unwrap();
            let adequate = crate::adequacy::check_adequacy(&c).adequate;
            let realizable = verify_un_realization(&c).unwrap().realizable;
            assert_eq!(adequate, realizable);
        }
    }
}
