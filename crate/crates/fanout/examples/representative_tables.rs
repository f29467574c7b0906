//! Print every classification table, computed from the congruence systems.
//!
//! Run with: cargo run --example representative_tables

use fanout::geometry::{enumerate_representatives, ColumnResidues, TableCase};

fn print_table(case: TableCase) {
    println!("{case:?}:");
    for n_mod_16 in [3u8, 11] {
        let cols = enumerate_representatives(case, n_mod_16).unwrap();
        print!("  n ≡ {n_mod_16:>2} (mod 16):");
        for col in &cols {
            match col.residues {
                ColumnResidues::U4 { a, c, t, u } => {
                    print!("  {}=({a},{c},{t},{u})", col.label)
                }
                ColumnResidues::U3 { a, t } => print!("  {}=({a},{t})", col.label),
            }
        }
        println!();
    }
}

fn main() {
    for case in [
        TableCase::PlanarThreeCycle,
        TableCase::AllThin,
        TableCase::FourCycle,
        TableCase::U3,
    ] {
        print_table(case);
    }
}
