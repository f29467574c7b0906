//! Classify spatial arrangements: run the built-in exhibits through the
//! inverse-square adequacy check and the canonical-frame classifier.
//!
//! Run with: cargo run --example classify_points

use fanout::geometry::{
    builtin_configs, check_isq_adequacy, check_u3, classify_u4, BuiltinConfig,
};

fn main() {
    for (name, cfg) in builtin_configs() {
        let BuiltinConfig::Points(points) = cfg else {
            continue; // coupling-only exhibits have no coordinates
        };
        let report = check_isq_adequacy(&points).unwrap();
        print!("{name:>22}: adequate = {}", report.adequate);
        match points.len() {
            3 => {
                let u3 = check_u3(&points).unwrap();
                if let Some(col) = u3.column {
                    print!(
                        ", type {} (a = {}, t = {}, n = {})",
                        col.label,
                        u3.a.unwrap(),
                        u3.t.unwrap(),
                        u3.n.unwrap()
                    );
                }
            }
            4 => {
                let classified = classify_u4(&points).unwrap();
                print!(
                    ", type {} ({:?}, n ≡ {} mod 16)",
                    classified.column.label,
                    classified.standard.thick_pattern,
                    classified.column.n_mod_16
                );
            }
            _ => {}
        }
        println!();
    }
}
