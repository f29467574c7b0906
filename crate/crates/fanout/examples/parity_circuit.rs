//! Bit-exact simulation of the constant-depth parity circuit: print the
//! gate sequence, trace one input through it, and verify parity and fanout
//! exhaustively for small widths.
//!
//! Run with: cargo run --release --example parity_circuit

use fanout::circuit::{build_cn, parse_bits, simulate, verify_fanout, verify_parity};

fn main() {
    let n = 4;
    let circuit = build_cn(n);
    println!("C_{n} acts on {} qubits:", circuit.n_qubits());
    for gate in circuit.gates() {
        println!("  {gate}");
    }

    let bits = "10110"; // x = 1011 (parity 1), target 0
    let input = parse_bits(bits, n + 1).unwrap();
    let out = simulate(&circuit, input).unwrap();
    // Render indices as bit strings with qubit 0 first, like the input.
    let to_bits = |i: usize| -> String {
        (0..=n).map(|q| if (i >> q) & 1 == 1 { '1' } else { '0' }).collect()
    };
    let nonzero: Vec<String> = out
        .amps()
        .iter()
        .enumerate()
        .filter(|(_, a)| !a.is_zero())
        .map(|(i, a)| format!("|{}⟩ × ({a})", to_bits(i)))
        .collect();
    println!("\nC_{n} |{bits}⟩ = {}", nonzero.join(" + "));

    println!();
    for n in 1..=8 {
        println!("parity  n = {n}: {}", verify_parity(n).unwrap());
    }
    for n in 1..=6 {
        println!("fanout  n = {n}: {}", verify_fanout(n).unwrap());
    }
}
