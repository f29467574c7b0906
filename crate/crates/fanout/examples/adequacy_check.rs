//! Decide whether coupling sets admit an evolution implementing the
//! diagonal gate: the cube arrangement, an all-equal set, and a failing set.
//!
//! Run with: cargo run --example adequacy_check

use fanout::adequacy::{check_adequacy, check_adequacy_product_form, CouplingSet};
use fanout::rational::int;

fn describe(name: &str, c: &CouplingSet) {
    let report = check_adequacy(c);
    println!("{name} (n = {}):", c.n());
    if report.adequate {
        let thickness = report.thickness.unwrap();
        println!("  adequate with J = {}", report.base_coupling.unwrap());
        println!("  evolve for t = π/(4J)  (t·J/π = {})", report.time_t_in_units.unwrap());
        println!("  thick edges: {:?}", thickness.thick_edges);
    } else {
        println!("  not adequate: {:?}", report.failure_reason.unwrap());
    }
    println!("  product-form cross-check: {}", check_adequacy_product_form(c));
}

fn main() {
    // Cube corners: neighbors 7J, face diagonals 3J, antipodal J.
    let mut cube = Vec::new();
    for i in 0..8usize {
        for j in (i + 1)..8 {
            let v = match (i ^ j).count_ones() {
                1 => 7,
                2 => 3,
                _ => 1,
            };
            cube.push((i + 1, j + 1, int(v)));
        }
    }
    let cube = CouplingSet::new(8, cube).expect("complete coupling set");
    describe("cube-8", &cube);

    let equal = CouplingSet::from_upper(5, &vec![int(5); 10]).unwrap();
    describe("all-equal couplings", &equal);

    // Triangle with one doubled coupling: the ratios 1,1,2 cannot all be
    // odd multiples of any base.
    let bad = CouplingSet::from_upper(3, &[int(1), int(1), int(2)]).unwrap();
    describe("triangle {1,1,2}", &bad);

    // Odd ratios whose thick edges leave odd degrees everywhere: {3,1,1}.
    let odd_deg = CouplingSet::from_upper(3, &[int(3), int(1), int(1)]).unwrap();
    describe("triangle {3,1,1}", &odd_deg);
}
