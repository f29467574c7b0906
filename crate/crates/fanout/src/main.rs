//! Thin command-line front end: parses arguments and files, dispatches into
//! the library, and prints a JSON report on stdout plus a human summary on
//! stderr.
//!
//! Exit codes: 0 = check passed / adequate; 1 = check failed / not adequate
//! (a normal negative answer); 2 = usage or input error.

use std::io::Read;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use fanout::adequacy::CouplingSet;
use fanout::amplitude::AmplitudeJson;
use fanout::circuit::{
    build_cn, simulate_trace, verify_fanout_capped, verify_parity_capped,
    verify_un_identities_capped, DEFAULT_MAX_FANOUT_N, DEFAULT_MAX_IDENTITY_N,
    DEFAULT_MAX_PARITY_N,
};
use fanout::geometry::{
    builtin_configs, check_isq_adequacy, check_u3, classify_u4, enumerate_representatives,
    is_weakly_isq_adequate, search_5point, BuiltinConfig, GeometryError, PointConfig, TableCase,
};
use fanout::hamiltonian::{verify_un_realization_capped, DEFAULT_MAX_QUBITS};
use fanout::report::{report_schema, Report};

#[derive(Parser)]
#[command(name = "fanout", version, about = "Exact verification of coupling sets, qubit arrangements and the constant-depth parity circuit")]
struct Cli {
    /// Suppress the human-readable summary on stderr.
    #[arg(long, global = true)]
    quiet: bool,

    /// Print the JSON schema of the report envelope and exit.
    #[arg(long)]
    json_schema: bool,

    #[command(subcommand)]
    command: Option<Command>,
}

#[derive(Subcommand)]
enum Command {
    /// Decide adequacy of a coupling set (or of a point arrangement's
    /// inverse-square couplings).
    CheckAdequacy {
        /// Input JSON file; "-" reads stdin. Accepts either a coupling-set
        /// object or a point-configuration object.
        input: String,
        /// Only test the odd-multiple condition, ignoring edge parities.
        #[arg(long)]
        weak: bool,
    },
    /// Brute-force check that the coupling evolution realizes the diagonal
    /// gate, over all basis states.
    VerifyHamiltonian {
        #[arg(long)]
        couplings: String,
    },
    /// Exhaustively verify the parity circuit (and optionally fanout and the
    /// gate identities) by exact simulation.
    VerifyCircuit {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        fanout: bool,
        #[arg(long)]
        identities: bool,
        /// Dump per-gate statevectors for one basis input.
        #[arg(long)]
        trace: bool,
        /// Basis input for --trace as a bit string, qubit 0 first
        /// (default: all zeros).
        #[arg(long)]
        input: Option<String>,
    },
    /// Canonicalize an adequate 4-point arrangement and name its table
    /// column.
    Classify {
        #[arg(long)]
        points: String,
    },
    /// Decide 3-point adequacy and name the table column.
    CheckU3 {
        #[arg(long)]
        points: String,
    },
    /// List the representative residue columns of a classification table.
    Enumerate {
        #[arg(long, value_enum)]
        case: CaseArg,
        #[arg(long)]
        nmod16: u8,
    },
    /// Seeded search for a weakly adequate 5-point arrangement (expected to
    /// find none).
    Search5 {
        #[arg(long, default_value_t = 10_000)]
        trials: u64,
        #[arg(long, default_value_t = 42)]
        seed: u64,
    },
    /// Print a named built-in exhibit, or list all names.
    Builtin {
        #[arg(long)]
        name: Option<String>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum CaseArg {
    Planar3cycle,
    Allthin,
    Fourcycle,
    U3,
}

impl From<CaseArg> for TableCase {
    fn from(c: CaseArg) -> TableCase {
        match c {
            CaseArg::Planar3cycle => TableCase::PlanarThreeCycle,
            CaseArg::Allthin => TableCase::AllThin,
            CaseArg::Fourcycle => TableCase::FourCycle,
            CaseArg::U3 => TableCase::U3,
        }
    }
}

/// Failures that map to exit code 2.
struct UsageError(String);

macro_rules! usage_from {
    ($($ty:ty),*) => {$(
        impl From<$ty> for UsageError {
            fn from(e: $ty) -> Self {
                UsageError(e.to_string())
            }
        }
    )*};
}

usage_from!(
    serde_json::Error,
    fanout::adequacy::AdequacyError,
    fanout::circuit::CircuitError,
    fanout::hamiltonian::HamiltonianError,
    GeometryError
);

fn read_input(path: &str) -> Result<String, UsageError> {
    if path == "-" {
        let mut buf = String::new();
        std::io::stdin().read_to_string(&mut buf).map_err(|e| {
            UsageError(format!("failed to read stdin: {e}"))
        })?;
        Ok(buf)
    } else {
        std::fs::read_to_string(path)
            .map_err(|e| UsageError(format!("failed to read {path}: {e}")))
    }
}

/// Deserialize with field-path context so malformed inputs name the
/// offending field.
fn parse_json<T: serde::de::DeserializeOwned>(text: &str, what: &str) -> Result<T, UsageError> {
    let de = &mut serde_json::Deserializer::from_str(text);
    serde_path_to_error::deserialize(de)
        .map_err(|e| UsageError(format!("invalid {what}: field `{}`: {}", e.path(), e.inner())))
}

enum CouplingsOrPoints {
    Couplings(CouplingSet),
    Points(PointConfig),
}

fn parse_couplings_or_points(text: &str) -> Result<CouplingsOrPoints, UsageError> {
    let probe: Value = parse_json(text, "JSON input")?;
    if probe.get("couplings").is_some() {
        Ok(CouplingsOrPoints::Couplings(parse_json(text, "coupling set")?))
    } else if probe.get("points").is_some() {
        Ok(CouplingsOrPoints::Points(parse_json(text, "point configuration")?))
    } else {
        Err(UsageError(
            "input must contain either a `couplings` or a `points` field".into(),
        ))
    }
}

fn max_n_override() -> Option<usize> {
    std::env::var("FANOUT_MAX_N").ok().and_then(|v| v.parse().ok())
}

/// Verdict payload, human summary, exit code.
type Outcome = (Value, String, u8);

fn geometry_negative(e: &GeometryError) -> Option<Outcome> {
    // "Not adequate" is a normal negative answer, not a usage error.
    if matches!(e, GeometryError::NotAdequate) {
        Some((
            json!({"adequate": false}),
            "not adequate; nothing to classify".into(),
            1,
        ))
    } else {
        None
    }
}

fn run(command: &Command) -> Result<Outcome, UsageError> {
    match command {
        Command::CheckAdequacy { input, weak } => {
            let parsed = parse_couplings_or_points(&read_input(input)?)?;
            if *weak {
                let ok = match &parsed {
                    CouplingsOrPoints::Couplings(c) => fanout::base_coupling(c).is_some(),
                    CouplingsOrPoints::Points(p) => is_weakly_isq_adequate(p)?,
                };
                return Ok((
                    json!({ "weakly_adequate": ok }),
                    format!("weak adequacy: {}", if ok { "yes" } else { "no" }),
                    u8::from(!ok),
                ));
            }
            let report = match &parsed {
                CouplingsOrPoints::Couplings(c) => fanout::check_adequacy(c),
                CouplingsOrPoints::Points(p) => check_isq_adequacy(p)?,
            };
            let summary = if report.adequate {
                let thick: Vec<_> = report
                    .thickness
                    .as_ref()
                    .map(|t| t.thick_edges.iter().cloned().collect())
                    .unwrap_or_default();
                format!(
                    "adequate: J = {}, t·J/π = {}, thick edges {:?}",
                    report.base_coupling.as_ref().expect("present on success"),
                    report.time_t_in_units.as_ref().expect("present on success"),
                    thick
                )
            } else {
                match &report.failure_reason {
                    Some(fanout::FailureReason::NonOddRatios) => {
                        "not adequate: couplings are not odd multiples of a common base".into()
                    }
                    Some(fanout::FailureReason::OddDegreeVertex(vs)) => {
                        format!("not adequate: odd thick-degree at vertices {vs:?}")
                    }
                    None => "not adequate".into(),
                }
            };
            let code = u8::from(!report.adequate);
            Ok((serde_json::to_value(&report)?, summary, code))
        }

        Command::VerifyHamiltonian { couplings } => {
            let c: CouplingSet = parse_json(&read_input(couplings)?, "coupling set")?;
            let cap = max_n_override().unwrap_or(DEFAULT_MAX_QUBITS);
            let witness = verify_un_realization_capped(&c, cap)?;
            let summary = if witness.realizable {
                format!(
                    "realizable: t·J/π = {}, θ/π = {}",
                    witness.t_times_j_over_pi.as_ref().expect("present"),
                    witness.theta_over_pi.as_ref().expect("present"),
                )
            } else {
                "not realizable at the canonical times".into()
            };
            let code = u8::from(!witness.realizable);
            Ok((serde_json::to_value(&witness)?, summary, code))
        }

        Command::VerifyCircuit { n, fanout: do_fanout, identities, trace, input } => {
            let n = *n;
            let over = max_n_override();
            let parity = verify_parity_capped(n, over.unwrap_or(DEFAULT_MAX_PARITY_N), true)?;
            let mut verdict = json!({ "n": n, "parity": parity });
            let mut ok = parity;
            let mut summary = format!("parity circuit on {n} inputs: {}", pass(parity));
            if *do_fanout {
                let f = verify_fanout_capped(n, over.unwrap_or(DEFAULT_MAX_FANOUT_N))?;
                verdict["fanout"] = json!(f);
                ok &= f;
                summary += &format!("; fanout: {}", pass(f));
            }
            if *identities {
                let report = verify_un_identities_capped(n, over.unwrap_or(DEFAULT_MAX_IDENTITY_N))?;
                ok &= report.u4_identity
                    && report.u2_odd_identity
                    && report.cz_identity
                    && report.un_from_two_parity;
                summary += &format!(
                    "; identities: U⁴ {}, U² (odd) {}, ctrl-Z {}, two-parity {}",
                    pass(report.u4_identity),
                    pass(report.u2_odd_identity),
                    pass(report.cz_identity),
                    pass(report.un_from_two_parity)
                );
                verdict["identities"] = serde_json::to_value(&report)?;
            }
            if *trace {
                let circuit = build_cn(n);
                let idx = match input {
                    Some(bits) => fanout::circuit::parse_bits(bits, n + 1)
                        .map_err(|e| UsageError(format!("bad --input: {e}")))?,
                    None => 0,
                };
                let states = simulate_trace(&circuit, idx)?;
                let gates: Vec<String> =
                    circuit.gates().iter().map(|g| g.to_string()).collect();
                let dump: Vec<Value> = states
                    .iter()
                    .map(|s| {
                        let amps: Vec<AmplitudeJson> =
                            s.amps().iter().map(AmplitudeJson::from).collect();
                        serde_json::to_value(amps).expect("serializable")
                    })
                    .collect();
                verdict["trace"] = json!({ "gates": gates, "states": dump });
            }
            Ok((verdict, summary, u8::from(!ok)))
        }

        Command::Classify { points } => {
            let cfg: PointConfig = parse_json(&read_input(points)?, "point configuration")?;
            match classify_u4(&cfg) {
                Ok(classified) => {
                    let summary = format!(
                        "type {} (n ≡ {} mod 16), pattern {:?}",
                        classified.column.label,
                        classified.column.n_mod_16,
                        classified.standard.thick_pattern
                    );
                    Ok((serde_json::to_value(&classified)?, summary, 0))
                }
                Err(e) => geometry_negative(&e).ok_or_else(|| UsageError::from(e)),
            }
        }

        Command::CheckU3 { points } => {
            let cfg: PointConfig = parse_json(&read_input(points)?, "point configuration")?;
            let result = check_u3(&cfg)?;
            let summary = match (&result.adequate, &result.column) {
                (true, Some(col)) => format!("adequate, type {}", col.label),
                _ => "not adequate".into(),
            };
            let code = u8::from(!result.adequate);
            Ok((serde_json::to_value(&result)?, summary, code))
        }

        Command::Enumerate { case, nmod16 } => {
            let case = TableCase::from(*case);
            let columns = enumerate_representatives(case, *nmod16)
                .map_err(|e| UsageError(format!("{e}")))?;
            let labels: Vec<&str> = columns.iter().map(|c| c.label.as_str()).collect();
            let summary = format!("{} columns: {}", columns.len(), labels.join(" "));
            Ok((
                json!({ "case": case, "n_mod_16": nmod16, "columns": columns }),
                summary,
                0,
            ))
        }

        Command::Search5 { trials, seed } => {
            let found = search_5point(*trials, *seed);
            let summary = if found.is_empty() {
                format!("no weakly adequate 5-point arrangement in {trials} trials (seed {seed})")
            } else {
                format!("FOUND {} candidate arrangements", found.len())
            };
            let code = u8::from(!found.is_empty());
            Ok((
                json!({ "trials": trials, "seed": seed, "found": found }),
                summary,
                code,
            ))
        }

        Command::Builtin { name } => {
            let configs = builtin_configs();
            match name {
                None => {
                    let names: Vec<&str> = configs.keys().copied().collect();
                    Ok((json!({ "names": names }), names.join(" "), 0))
                }
                Some(name) => {
                    let cfg = configs
                        .get(name.as_str())
                        .ok_or_else(|| UsageError(format!("unknown builtin {name:?}")))?;
                    let summary = match cfg {
                        BuiltinConfig::Points(p) => format!("{name}: {} points", p.len()),
                        BuiltinConfig::Couplings(c) => format!("{name}: {} qubits", c.n()),
                    };
                    Ok((serde_json::to_value(cfg)?, summary, 0))
                }
            }
        }
    }
}

fn pass(ok: bool) -> &'static str {
    if ok {
        "ok"
    } else {
        "FAILED"
    }
}

fn subcommand_name(c: &Command) -> &'static str {
    match c {
        Command::CheckAdequacy { .. } => "check-adequacy",
        Command::VerifyHamiltonian { .. } => "verify-hamiltonian",
        Command::VerifyCircuit { .. } => "verify-circuit",
        Command::Classify { .. } => "classify",
        Command::CheckU3 { .. } => "check-u3",
        Command::Enumerate { .. } => "enumerate",
        Command::Search5 { .. } => "search5",
        Command::Builtin { .. } => "builtin",
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if cli.json_schema {
        println!("{}", serde_json::to_string_pretty(&report_schema()).expect("static schema"));
        return ExitCode::SUCCESS;
    }
    let Some(command) = &cli.command else {
        eprintln!("error: a subcommand is required (try --help)");
        return ExitCode::from(2);
    };
    let start = Instant::now();
    match run(command) {
        Ok((verdict, summary, code)) => {
            let report = Report::new(
                subcommand_name(command),
                verdict,
                start.elapsed().as_millis() as u64,
            );
            println!("{}", serde_json::to_string(&report).expect("report is serializable"));
            if !cli.quiet {
                eprintln!("{summary}");
            }
            ExitCode::from(code)
        }
        Err(UsageError(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
