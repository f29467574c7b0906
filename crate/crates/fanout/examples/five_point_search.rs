//! Refutation search: extend four-point standard positions by a random fifth
//! point and look for a weakly adequate five-point arrangement. None should
//! be found.
//!
//! Run with: cargo run --release --example five_point_search

use fanout::geometry::search_5point;

fn main() {
    let trials = 20_000;
    let seed = 42;
    let found = search_5point(trials, seed);
    println!(
        "{} candidates passed the weak adequacy check out of {trials} trials (seed {seed})",
        found.len()
    );
    for cfg in &found {
        println!("counterexample?! {}", serde_json::to_string(cfg).unwrap());
    }
    if found.is_empty() {
        println!("(as predicted: no five-point arrangement survives)");
    }
}
