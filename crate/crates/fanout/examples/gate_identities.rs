//! Exact gate identities around the diagonal gate: fourth powers, squares at
//! odd widths, the controlled-Z decomposition, and building the gate from
//! two parity gates plus single-qubit phases.
//!
//! Run with: cargo run --example gate_identities

use fanout::circuit::verify_un_identities;

fn main() {
    println!("  n   U⁴=I   U²=I (odd n)   ctrl-Z   two-parity build");
    for n in 1..=8 {
        let r = verify_un_identities(n).unwrap();
        println!(
            "  {n}   {:5}  {:13}  {:7}  {}",
            r.u4_identity, r.u2_odd_identity, r.cz_identity, r.un_from_two_parity
        );
    }
}
