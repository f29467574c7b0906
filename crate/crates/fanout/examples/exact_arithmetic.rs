//! The numeric substrate: 2-adic valuations, the multiplier congruence on
//! rationals, residues of odd rationals, and square-free decomposition.
//!
//! Run with: cargo run --example exact_arithmetic

use fanout::rational::{
    p_adic_valuation, rat, residue_u64, scong, scong_oracle, squarefree_decompose, PrimePower,
};

fn main() {
    println!("2-adic valuations:");
    for (x, label) in [(rat(12, 1), "12"), (rat(3, 8), "3/8"), (rat(0, 1), "0")] {
        println!("  v₂({label}) = {:?}", p_adic_valuation(&x, 2).unwrap());
    }

    println!("\nmultiplier congruence x ≈_q y (k·x ≡ k·y mod q for some odd k):");
    let q4 = PrimePower::two_to(2);
    let q8 = PrimePower::two_to(3);
    for (x, y, q, label) in [
        (rat(1, 3), rat(3, 1), &q4, "1/3 ≈₄ 3"),
        (rat(3, 5), rat(7, 1), &q8, "3/5 ≈₈ 7"),
        (rat(1, 3), rat(1, 1), &q4, "1/3 ≈₄ 1"),
    ] {
        let fast = scong(&x, &y, q);
        let oracle = scong_oracle(&x, &y, q);
        assert_eq!(fast, oracle);
        println!("  {label}: {fast} (valuation test and multiplier search agree)");
    }

    println!("\nresidues of odd rationals:");
    for (x, q, label) in [(rat(1, 3), &q4, "1/3 mod 4"), (rat(5, 7), &q8, "5/7 mod 8")] {
        println!("  {label} → {}", residue_u64(&x, q).unwrap());
    }

    println!("\nsquare-free decompositions x = t²·n:");
    for (x, label) in [(rat(12, 1), "12"), (rat(99, 1), "99"), (rat(8, 3), "8/3")] {
        let d = squarefree_decompose(&x).unwrap();
        println!("  {label} = ({})² · {}", d.t, d.n);
    }
}
