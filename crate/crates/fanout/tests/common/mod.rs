//! Shared helpers for the integration suites: randomized coupling-set
//! construction (adequate by design, or violating exactly one condition)
//! and the plain-text rendering used for golden-table comparison.

use fanout::adequacy::{pair_count, CouplingSet};
use fanout::geometry::{ColumnResidues, RepresentativeColumn};
use fanout::rational::{int, rat, Rational};
use rand::Rng;

/// Strictly positive random rational with small terms.
pub fn random_positive_rational(rng: &mut impl Rng) -> Rational {
    rat(rng.random_range(1i64..50), rng.random_range(1i64..8))
}

/// A random edge set on `1..=n` in which every vertex has even degree:
/// start from any random set, then pair up the odd-degree vertices and
/// toggle the edge between each pair (each toggle flips exactly two vertex
/// parities).
pub fn random_even_degree_edges(rng: &mut impl Rng, n: usize) -> Vec<(usize, usize)> {
    let mut present = vec![false; pair_count(n)];
    for slot in present.iter_mut() {
        *slot = rng.random_bool(0.5);
    }
    let index = |i: usize, j: usize| (i - 1) * n - (i - 1) * i / 2 + (j - i - 1);
    let mut degree = vec![0usize; n + 1];
    for i in 1..=n {
        for j in (i + 1)..=n {
            if present[index(i, j)] {
                degree[i] += 1;
                degree[j] += 1;
            }
        }
    }
    let odd: Vec<usize> = (1..=n).filter(|&v| degree[v] % 2 == 1).collect();
    for pair in odd.chunks(2) {
        let (i, j) = (pair[0], pair[1]);
        present[index(i, j)] = !present[index(i, j)];
    }
    let mut edges = Vec::new();
    for i in 1..=n {
        for j in (i + 1)..=n {
            if present[index(i, j)] {
                edges.push((i, j));
            }
        }
    }
    edges
}

/// Couplings that satisfy both adequacy conditions by construction: odd
/// ratio multiples of a random base, with the `≡ 3 (mod 4)` edges forming
/// an even-degree graph.
pub fn random_adequate_set(rng: &mut impl Rng, n: usize) -> CouplingSet {
    let thick = random_even_degree_edges(rng, n);
    let base = random_positive_rational(rng);
    let mut upper = Vec::with_capacity(pair_count(n));
    for i in 1..=n {
        for j in (i + 1)..=n {
            let ratio = if thick.contains(&(i, j)) {
                4 * rng.random_range(0i64..10) + 3
            } else {
                4 * rng.random_range(0i64..10) + 1
            };
            upper.push(int(ratio) * &base);
        }
    }
    CouplingSet::from_upper(n, &upper).expect("complete set")
}

/// Perturb an adequate set to violate exactly one adequacy condition:
/// either double one coupling (its ratio is no longer odd) or shift one
/// ratio by 2 (flipping that edge's thickness, which leaves odd degrees at
/// its endpoints). Requires `n >= 3`; two-qubit sets are always adequate.
pub fn random_inadequate_set(rng: &mut impl Rng, n: usize) -> CouplingSet {
    assert!(n >= 3);
    loop {
        let base = random_adequate_set(rng, n);
        let edges: Vec<(usize, usize)> = base.iter().map(|(e, _)| e).collect();
        let &(i, j) = &edges[rng.random_range(0..edges.len())];
        let entries: Vec<(usize, usize, Rational)> = base
            .iter()
            .map(|((a, b), v)| {
                if (a, b) == (i, j) {
                    if rng.random_bool(0.5) {
                        (a, b, v * int(2))
                    } else {
                        // ratio += 2 in units of the underlying base
                        (a, b, v + gcd_of(&base) * int(2))
                    }
                } else {
                    (a, b, v.clone())
                }
            })
            .collect();
        let candidate = CouplingSet::new(n, entries).expect("complete set");
        // The thickness flip can collapse onto a rescaled adequate set in
        // rare draws; keep only genuine violations.
        if !fanout::check_adequacy(&candidate).adequate {
            return candidate;
        }
    }
}

fn gcd_of(c: &CouplingSet) -> Rational {
    fanout::base_coupling(c).expect("adequate sets have a base")
}

/// Render table columns the way the golden transcriptions are laid out:
/// a label row per `n`-residue half followed by one row per residue name.
pub fn render_tables(halves: &[(u8, Vec<RepresentativeColumn>)]) -> String {
    let mut out = String::new();
    for (n_mod_16, cols) in halves {
        let labels: Vec<&str> = cols.iter().map(|c| c.label.as_str()).collect();
        out.push_str(&format!("{:<5}{}\n", format!("n={n_mod_16}"), labels.join(" ")));
        let is_u3 = matches!(cols[0].residues, ColumnResidues::U3 { .. });
        let rows: &[&str] = if is_u3 { &["a", "t"] } else { &["a", "c", "t", "u"] };
        for row in rows {
            let vals: Vec<String> = cols
                .iter()
                .map(|c| {
                    let v = match (c.residues, *row) {
                        (ColumnResidues::U4 { a, .. }, "a") => a,
                        (ColumnResidues::U4 { c, .. }, "c") => c,
                        (ColumnResidues::U4 { t, .. }, "t") => t,
                        (ColumnResidues::U4 { u, .. }, "u") => u,
                        (ColumnResidues::U3 { a, .. }, "a") => a,
                        (ColumnResidues::U3 { t, .. }, "t") => t,
                        _ => unreachable!(),
                    };
                    v.to_string()
                })
                .collect();
            out.push_str(&format!("{row:<5}{}\n", vals.join(" ")));
        }
    }
    out
}
