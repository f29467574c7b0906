//! Bit-exact statevector simulation of the constant-depth parity circuit and
//! the gate identities around `U_n`.
//!
//! Qubits are 0-indexed; basis-state index bit `q` holds the value of qubit
//! `q`, and bit strings list qubit 0 first. The gate set is closed over
//! [`Amplitude`](crate::amplitude::Amplitude) arithmetic, so "implements the
//! parity gate" is decided by exact ring equality, not tolerances.

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::amplitude::Amplitude;

/// Default cap for exhaustive parity verification (`2^{n+1}` simulations of
/// `2^{n+1}`-dimensional states).
pub const DEFAULT_MAX_PARITY_N: usize = 12;
/// Default cap for fanout verification.
pub const DEFAULT_MAX_FANOUT_N: usize = 10;
/// Default cap for the gate-identity report.
pub const DEFAULT_MAX_IDENTITY_N: usize = 10;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CircuitError {
    #[error("qubit index {0} out of range for {1}-qubit circuit")]
    BadQubit(usize, usize),
    #[error("gate qubit lists must be non-empty and free of repeats")]
    BadGateShape,
    #[error("basis input does not match the circuit width")]
    BadInput,
    #[error("qubit count {n} exceeds the exhaustive-check cap {max}")]
    TooLarge { n: usize, max: usize },
}

/// A gate from the closed set used by the parity construction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Gate {
    H(usize),
    S(usize),
    Sdg(usize),
    Z(usize),
    /// The corrective phase gate of the parity circuit: `S^{1-n}` on one
    /// qubit (`S`, `I`, `S†` or `Z` as `n ≡ 0, 1, 2, 3 (mod 4)`).
    Gn { qubit: usize, n: usize },
    GnDg { qubit: usize, n: usize },
    Cnot { control: usize, target: usize },
    /// Diagonal phase `i^{w(m-w)}` over the listed `m` qubits, where `w`
    /// counts set bits among them.
    Un(Vec<usize>),
    UnDg(Vec<usize>),
    /// Parity gate: XORs the parity of the input qubits into the target.
    Pn { inputs: Vec<usize>, target: usize },
    /// Scalar `ω^k`; lets a phase-shifted variant of `Un` stay in the gate
    /// set.
    GlobalPhase(i64),
}

impl std::fmt::Display for Gate {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Gate::H(q) => write!(f, "H({q})"),
            Gate::S(q) => write!(f, "S({q})"),
            Gate::Sdg(q) => write!(f, "S†({q})"),
            Gate::Z(q) => write!(f, "Z({q})"),
            Gate::Gn { qubit, n } => write!(f, "G_{n}({qubit})"),
            Gate::GnDg { qubit, n } => write!(f, "G_{n}†({qubit})"),
            Gate::Cnot { control, target } => write!(f, "CNOT({control}→{target})"),
            Gate::Un(qs) => write!(f, "U_{}({qs:?})", qs.len()),
            Gate::UnDg(qs) => write!(f, "U_{}†({qs:?})", qs.len()),
            Gate::Pn { inputs, target } => write!(f, "P_{}({inputs:?}→{target})", inputs.len()),
            Gate::GlobalPhase(k) => write!(f, "ω^{k}"),
        }
    }
}

/// An ordered gate list on a fixed register width, validated at
/// construction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Circuit {
    n_qubits: usize,
    gates: Vec<Gate>,
}

fn distinct(qs: &[usize]) -> bool {
    let mut seen = std::collections::BTreeSet::new();
    qs.iter().all(|q| seen.insert(*q))
}

impl Circuit {
    pub fn new(n_qubits: usize, gates: Vec<Gate>) -> Result<Self, CircuitError> {
        let check = |q: usize| {
            if q < n_qubits {
                Ok(())
            } else {
                Err(CircuitError::BadQubit(q, n_qubits))
            }
        };
        for g in &gates {
            match g {
                Gate::H(q) | Gate::S(q) | Gate::Sdg(q) | Gate::Z(q) => check(*q)?,
                Gate::Gn { qubit, .. } | Gate::GnDg { qubit, .. } => check(*qubit)?,
                Gate::Cnot { control, target } => {
                    check(*control)?;
                    check(*target)?;
                    if control == target {
                        return Err(CircuitError::BadGateShape);
                    }
                }
                Gate::Un(qs) | Gate::UnDg(qs) => {
                    if qs.is_empty() || !distinct(qs) {
                        return Err(CircuitError::BadGateShape);
                    }
                    for q in qs {
                        check(*q)?;
                    }
                }
                Gate::Pn { inputs, target } => {
                    if inputs.is_empty() || !distinct(inputs) || inputs.contains(target) {
                        return Err(CircuitError::BadGateShape);
                    }
                    for q in inputs {
                        check(*q)?;
                    }
                    check(*target)?;
                }
                Gate::GlobalPhase(_) => {}
            }
        }
        Ok(Circuit { n_qubits, gates })
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn gates(&self) -> &[Gate] {
        &self.gates
    }
}

/// Exact state over `2^n` amplitudes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StateVector {
    n_qubits: usize,
    amps: Vec<Amplitude>,
}

impl StateVector {
    pub fn basis(n_qubits: usize, index: usize) -> Self {
        let mut amps = vec![Amplitude::zero(); 1 << n_qubits];
        amps[index] = Amplitude::one();
        StateVector { n_qubits, amps }
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn amp(&self, index: usize) -> &Amplitude {
        &self.amps[index]
    }

    pub fn amps(&self) -> &[Amplitude] {
        &self.amps
    }

    /// True iff the state is exactly the given basis vector with amplitude
    /// exactly 1 (global phase included).
    pub fn is_exact_basis(&self, index: usize) -> bool {
        self.amps
            .iter()
            .enumerate()
            .all(|(i, a)| if i == index { a.is_one() } else { a.is_zero() })
    }

    /// True iff the state is the given basis vector up to a unit ring
    /// phase.
    pub fn is_basis_up_to_phase(&self, index: usize) -> bool {
        self.amps.iter().enumerate().all(|(i, a)| {
            if i == index {
                a.norm_sq().is_one()
            } else {
                a.is_zero()
            }
        })
    }

    /// Exact squared norm; 1 for every state reachable from a basis state.
    pub fn norm_sq(&self) -> Amplitude {
        let mut acc = Amplitude::zero();
        for a in &self.amps {
            acc = &acc + &a.norm_sq();
        }
        acc
    }
}

fn weight_on(index: usize, qubits: &[usize]) -> usize {
    qubits.iter().filter(|&&q| (index >> q) & 1 == 1).count()
}

/// Apply one gate, returning the new state. Exact and linear.
pub fn apply_gate(state: &StateVector, gate: &Gate) -> Result<StateVector, CircuitError> {
    let n = state.n_qubits;
    let check = |q: usize| {
        if q < n {
            Ok(())
        } else {
            Err(CircuitError::BadQubit(q, n))
        }
    };
    let mut amps = state.amps.clone();
    match gate {
        Gate::H(q) => {
            check(*q)?;
            let bit = 1usize << q;
            for idx in 0..amps.len() {
                if idx & bit == 0 {
                    let lo = amps[idx].clone();
                    let hi = amps[idx | bit].clone();
                    amps[idx] = (&lo + &hi).times_inv_sqrt2();
                    amps[idx | bit] = (&lo - &hi).times_inv_sqrt2();
                }
            }
        }
        Gate::S(_) | Gate::Sdg(_) | Gate::Z(_) => {
            let (q, phase) = match gate {
                Gate::S(q) => (*q, Amplitude::i_pow(1)),
                Gate::Sdg(q) => (*q, Amplitude::i_pow(-1)),
                Gate::Z(q) => (*q, Amplitude::i_pow(2)),
                _ => unreachable!(),
            };
            check(q)?;
            let bit = 1usize << q;
            for (idx, a) in amps.iter_mut().enumerate() {
                if idx & bit != 0 {
                    *a = &*a * &phase;
                }
            }
        }
        Gate::Gn { qubit, n: gn } | Gate::GnDg { qubit, n: gn } => {
            check(*qubit)?;
            let power = match gate {
                Gate::Gn { .. } => 1 - *gn as i64,
                _ => *gn as i64 - 1,
            };
            let phase = Amplitude::i_pow(power);
            let bit = 1usize << qubit;
            for (idx, a) in amps.iter_mut().enumerate() {
                if idx & bit != 0 {
                    *a = &*a * &phase;
                }
            }
        }
        Gate::Cnot { control, target } => {
            check(*control)?;
            check(*target)?;
            if control == target {
                return Err(CircuitError::BadGateShape);
            }
            let (c, t) = (1usize << control, 1usize << target);
            for idx in 0..amps.len() {
                if idx & c != 0 && idx & t == 0 {
                    amps.swap(idx, idx | t);
                }
            }
        }
        Gate::Un(qs) | Gate::UnDg(qs) => {
            for q in qs {
                check(*q)?;
            }
            let m = qs.len() as i64;
            let sign = if matches!(gate, Gate::Un(_)) { 1 } else { -1 };
            for (idx, a) in amps.iter_mut().enumerate() {
                let w = weight_on(idx, qs) as i64;
                let phase = Amplitude::i_pow(sign * w * (m - w));
                *a = &*a * &phase;
            }
        }
        Gate::Pn { inputs, target } => {
            for q in inputs {
                check(*q)?;
            }
            check(*target)?;
            let t = 1usize << target;
            for idx in 0..amps.len() {
                if weight_on(idx, inputs) % 2 == 1 && idx & t == 0 {
                    amps.swap(idx, idx | t);
                }
            }
        }
        Gate::GlobalPhase(k) => {
            let phase = Amplitude::omega_pow(*k);
            for a in amps.iter_mut() {
                *a = &*a * &phase;
            }
        }
    }
    Ok(StateVector { n_qubits: n, amps })
}

/// Run a circuit on a basis input given by index.
pub fn simulate(circuit: &Circuit, input: usize) -> Result<StateVector, CircuitError> {
    if input >> circuit.n_qubits != 0 {
        return Err(CircuitError::BadInput);
    }
    let mut state = StateVector::basis(circuit.n_qubits, input);
    for g in &circuit.gates {
        state = apply_gate(&state, g)?;
    }
    Ok(state)
}

/// Run a circuit on a basis input written as a bit string (qubit 0 first).
pub fn simulate_bits(circuit: &Circuit, bits: &str) -> Result<StateVector, CircuitError> {
    simulate(circuit, parse_bits(bits, circuit.n_qubits)?)
}

/// All intermediate states: the initial basis state followed by the state
/// after each gate.
pub fn simulate_trace(circuit: &Circuit, input: usize) -> Result<Vec<StateVector>, CircuitError> {
    if input >> circuit.n_qubits != 0 {
        return Err(CircuitError::BadInput);
    }
    let mut states = vec![StateVector::basis(circuit.n_qubits, input)];
    for g in &circuit.gates {
        let next = apply_gate(states.last().expect("non-empty"), g)?;
        states.push(next);
    }
    Ok(states)
}

/// Parse a bit string with qubit 0 as the leftmost character.
pub fn parse_bits(bits: &str, n_qubits: usize) -> Result<usize, CircuitError> {
    if bits.len() != n_qubits {
        return Err(CircuitError::BadInput);
    }
    let mut idx = 0usize;
    for (q, ch) in bits.chars().enumerate() {
        match ch {
            '0' => {}
            '1' => idx |= 1 << q,
            _ => return Err(CircuitError::BadInput),
        }
    }
    Ok(idx)
}

/// The constant-depth parity circuit on `n + 1` qubits: qubits `0..n` carry
/// the inputs (the single-qubit gates ride on qubit `n - 1`), qubit `n` is
/// the target.
pub fn build_cn(n: usize) -> Circuit {
    build_cn_phased(n, 0)
}

/// As [`build_cn`] but substituting `ω^k·U_n` for `U_n` (and its adjoint for
/// the adjoint); the parity action is unchanged because the two phases
/// cancel.
pub fn build_cn_phased(n: usize, omega_power: i64) -> Circuit {
    assert!(n >= 1);
    let xs: Vec<usize> = (0..n).collect();
    let h = n - 1; // the input qubit carrying the single-qubit gates
    let target = n;
    let mut gates = vec![Gate::H(h)];
    if omega_power != 0 {
        gates.push(Gate::GlobalPhase(omega_power));
    }
    gates.push(Gate::Un(xs.clone()));
    gates.extend([
        Gate::Gn { qubit: h, n },
        Gate::H(h),
        Gate::Cnot { control: h, target },
        Gate::H(h),
        Gate::GnDg { qubit: h, n },
    ]);
    if omega_power != 0 {
        gates.push(Gate::GlobalPhase(-omega_power));
    }
    gates.push(Gate::UnDg(xs));
    gates.push(Gate::H(h));
    Circuit::new(n + 1, gates).expect("construction is well-formed")
}

fn check_cap(n: usize, max: usize) -> Result<(), CircuitError> {
    if n == 0 || n > max {
        Err(CircuitError::TooLarge { n, max })
    } else {
        Ok(())
    }
}

/// Exhaustively verify that the parity circuit maps every basis state
/// `|x, t⟩` to `|x, t ⊕ parity(x)⟩` with amplitude exactly 1.
pub fn verify_parity(n: usize) -> Result<bool, CircuitError> {
    verify_parity_capped(n, DEFAULT_MAX_PARITY_N, true)
}

/// As [`verify_parity`] with an explicit cap and an optional relaxation that
/// accepts a unit-phase mismatch.
pub fn verify_parity_capped(
    n: usize,
    max_n: usize,
    require_exact_phase: bool,
) -> Result<bool, CircuitError> {
    check_cap(n, max_n)?;
    let circuit = build_cn(n);
    verify_parity_of(&circuit, n, require_exact_phase)
}

fn verify_parity_of(
    circuit: &Circuit,
    n: usize,
    require_exact_phase: bool,
) -> Result<bool, CircuitError> {
    let inputs: Vec<usize> = (0..1usize << (n + 1)).collect();
    let ok = inputs
        .par_iter()
        .map(|&input| {
            let out = simulate(circuit, input)?;
            let parity = (input & ((1 << n) - 1)).count_ones() as usize % 2;
            let expected = input ^ (parity << n);
            Ok(if require_exact_phase {
                out.is_exact_basis(expected)
            } else {
                out.is_basis_up_to_phase(expected)
            })
        })
        .try_reduce(|| true, |a, b| Ok(a && b))?;
    Ok(ok)
}

/// Exhaustively verify the fanout action: conjugating the parity circuit by
/// Hadamard banks maps `|x, c⟩` to `|x ⊕ c⋯c, c⟩` exactly.
pub fn verify_fanout(n: usize) -> Result<bool, CircuitError> {
    verify_fanout_capped(n, DEFAULT_MAX_FANOUT_N)
}

pub fn verify_fanout_capped(n: usize, max_n: usize) -> Result<bool, CircuitError> {
    check_cap(n, max_n)?;
    let mut gates: Vec<Gate> = (0..=n).map(Gate::H).collect();
    gates.extend(build_cn(n).gates().to_vec());
    gates.extend((0..=n).map(Gate::H));
    let circuit = Circuit::new(n + 1, gates).expect("well-formed");
    let inputs: Vec<usize> = (0..1usize << (n + 1)).collect();
    let mask = (1usize << n) - 1;
    let ok = inputs
        .par_iter()
        .map(|&input| {
            let out = simulate(&circuit, input)?;
            let c = (input >> n) & 1;
            let expected = if c == 1 { input ^ mask } else { input };
            Ok(out.is_exact_basis(expected))
        })
        .try_reduce(|| true, |a, b| Ok(a && b))?;
    Ok(ok)
}

/// Outcome of the gate-identity checks around `U_n`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct UnIdentityReport {
    /// `U_n⁴ = I` for every `n`.
    pub u4_identity: bool,
    /// `U_n² = I` when `n` is odd (vacuously reported true for even `n`).
    pub u2_odd_identity: bool,
    /// Controlled-Z equals `(S†⊗S†)U₂` in both orders.
    pub cz_identity: bool,
    /// `U_n ⊗ I` on `|x⟩|0⟩` equals two parity gates around one layer of
    /// phase gates.
    pub un_from_two_parity: bool,
}

pub fn verify_un_identities(n: usize) -> Result<UnIdentityReport, CircuitError> {
    verify_un_identities_capped(n, DEFAULT_MAX_IDENTITY_N)
}

pub fn verify_un_identities_capped(
    n: usize,
    max_n: usize,
) -> Result<UnIdentityReport, CircuitError> {
    check_cap(n, max_n)?;
    let xs: Vec<usize> = (0..n).collect();

    let powers_give_identity = |reps: usize| -> Result<bool, CircuitError> {
        let gates = vec![Gate::Un(xs.clone()); reps];
        let circuit = Circuit::new(n, gates).expect("well-formed");
        for x in 0..1usize << n {
            if !simulate(&circuit, x)?.is_exact_basis(x) {
                return Ok(false);
            }
        }
        Ok(true)
    };

    let u4_identity = powers_give_identity(4)?;
    let u2_odd_identity = if n % 2 == 1 { powers_give_identity(2)? } else { true };

    let mut cz_identity = true;
    for order in 0..2 {
        let gates = if order == 0 {
            vec![Gate::Un(vec![0, 1]), Gate::Sdg(0), Gate::Sdg(1)]
        } else {
            vec![Gate::Sdg(0), Gate::Sdg(1), Gate::Un(vec![0, 1])]
        };
        let circuit = Circuit::new(2, gates).expect("well-formed");
        for x in 0..4usize {
            let out = simulate(&circuit, x)?;
            let cz_phase = if x == 3 { Amplitude::from_int(-1) } else { Amplitude::one() };
            let mut ok = true;
            for (i, a) in out.amps().iter().enumerate() {
                let expect = if i == x { cz_phase.clone() } else { Amplitude::zero() };
                ok &= *a == expect;
            }
            cz_identity &= ok;
        }
    }

    // Two parity gates with a phase layer between them reproduce U_n on
    // |x⟩|0⟩. The per-qubit layer is S^{n-2}: its phase i^{(n-2)w} plus the
    // ancilla's i^{parity(x)} matches i^{w(n-w)} modulo 4 for every weight.
    let mut gates = vec![Gate::Pn { inputs: xs.clone(), target: n }];
    let s_power = (n as i64 - 2).rem_euclid(4) as usize;
    for q in 0..n {
        gates.extend(std::iter::repeat(Gate::S(q)).take(s_power));
    }
    gates.push(Gate::S(n));
    gates.push(Gate::Pn { inputs: xs.clone(), target: n });
    let two_parity = Circuit::new(n + 1, gates).expect("well-formed");
    let un_only = Circuit::new(n + 1, vec![Gate::Un(xs)]).expect("well-formed");
    let mut un_from_two_parity = true;
    for x in 0..1usize << n {
        let lhs = simulate(&two_parity, x)?;
        let rhs = simulate(&un_only, x)?;
        un_from_two_parity &= lhs == rhs;
    }

    Ok(UnIdentityReport {
        u4_identity,
        u2_odd_identity,
        cz_identity,
        un_from_two_parity,
    })
}
