//! Exact-arithmetic library for deciding when pairwise qubit couplings (or
//! spatial arrangements of qubits under an inverse-square law) implement the
//! fanout-equivalent diagonal gate `U_n`, together with a bit-exact
//! simulator proving that the constant-depth circuit built on `U_n` realizes
//! the parity gate.
//!
//! Everything is computed over arbitrary-precision rationals (phases in
//! units of π) or over the ring `Z[ω]` with `ω = e^{iπ/4}` (circuit
//! amplitudes); no floating point enters any verdict.
//!
//! The `examples/` directory of this crate demonstrates each capability;
//! the `fanout` binary exposes them on files and flags.

pub mod adequacy;
pub mod amplitude;
pub mod circuit;
pub mod geometry;
pub mod hamiltonian;
pub mod rational;
pub mod report;

pub use adequacy::{
    base_coupling, check_adequacy, check_adequacy_product_form, mn_kernel_check,
    mn_kernel_check_exhaustive, thickness_graph, AdequacyReport, CouplingSet, FailureReason,
    ThicknessGraph,
};
pub use amplitude::Amplitude;
pub use circuit::{
    apply_gate, build_cn, simulate, verify_fanout, verify_parity, verify_un_identities, Circuit,
    Gate, StateVector, UnIdentityReport,
};
pub use hamiltonian::{
    equal_coupling_theta, evolved_phase_vector, un_phase_vector, verify_un_realization,
    PhaseVector, RealizationWitness,
};
pub use rational::{
    p_adic_valuation, residue, scong, scong_oracle, squarefree_decompose, PrimePower, Rational,
    SquareFreeDecomposition, Valuation,
};
