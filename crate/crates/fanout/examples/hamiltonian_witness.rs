//! Brute-force phase verification: evolve the coupling Hamiltonian over
//! every basis state (phases as exact rationals in π-units) and compare with
//! the diagonal gate, recovering the global-phase witness.
//!
//! Run with: cargo run --example hamiltonian_witness

use fanout::adequacy::CouplingSet;
use fanout::hamiltonian::{equal_coupling_theta, verify_un_realization};
use fanout::rational::int;

fn main() {
    println!("equal couplings: the witness phase follows (n² - n)/8");
    for n in 1..=8 {
        let c = CouplingSet::from_upper(n, &vec![int(1); n * (n - 1) / 2]).unwrap();
        let witness = verify_un_realization(&c).unwrap();
        assert!(witness.realizable);
        println!(
            "  n = {n}: θ/π = {} (formula gives {})",
            witness.theta_over_pi.unwrap(),
            equal_coupling_theta(n)
        );
    }

    // The four-point arrangement with ratios {273, 39, 39, 21, 21, 91}.
    let c = CouplingSet::from_upper(
        4,
        &[int(273), int(39), int(39), int(21), int(21), int(91)],
    )
    .unwrap();
    let witness = verify_un_realization(&c).unwrap();
    println!(
        "\nratios {{273, 39, 39, 21, 21, 91}}: realizable = {}, θ/π = {}",
        witness.realizable,
        witness.theta_over_pi.unwrap()
    );

    let bad = CouplingSet::from_upper(3, &[int(1), int(1), int(2)]).unwrap();
    let witness = verify_un_realization(&bad).unwrap();
    println!("ratios {{1, 1, 2}}: realizable = {}", witness.realizable);
}
