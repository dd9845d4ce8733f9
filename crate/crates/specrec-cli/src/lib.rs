//! Command-line front end. `run` is pure over its arguments and input files
//! so it can be driven from tests without spawning a process.

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::json;
use specrec::catalog::Catalog;
use specrec::modlinalg;
use specrec::permgroup::{load_group, order_census, spectrum_sample, DEFAULT_CAP};
use specrec::prime_graph::PrimeGraph;
use specrec::recognizer::{self, Format, Options, TargetSpec};
use specrec::spectrum::{parse_list, MuSet};
use specrec::{verify, Error};
use std::fmt::Write;
use std::path::PathBuf;

pub const EXIT_OK: i32 = 0;
pub const EXIT_INVALID: i32 = 1;
pub const EXIT_CAP: i32 = 2;
pub const EXIT_MISMATCH: i32 = 3;
pub const EXIT_USAGE: i32 = 4;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CommandOutcome {
    pub exit_code: i32,
    pub stdout: String,
    pub stderr: String,
}

#[derive(Parser)]
#[command(
    name = "specrec",
    version,
    about = "Element-order spectra and recognition-by-spectrum replays"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum OutFormat {
    Text,
    Json,
}

impl From<OutFormat> for Format {
    fn from(f: OutFormat) -> Self {
        match f {
            OutFormat::Text => Format::Text,
            OutFormat::Json => Format::Json,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum Method {
    Exhaustive,
    Sample,
}

#[derive(Args)]
struct FormatArg {
    #[arg(long, value_enum, default_value = "text")]
    format: OutFormat,
}

#[derive(Subcommand)]
enum Command {
    /// Spectrum of a permutation group given by a generator file.
    Spectrum {
        #[arg(long)]
        generators: PathBuf,
        #[arg(long, value_enum, default_value = "exhaustive")]
        method: Method,
        #[arg(long, default_value_t = DEFAULT_CAP)]
        cap: u64,
        #[arg(long)]
        samples: Option<u64>,
        #[arg(long)]
        seed: Option<u64>,
        #[command(flatten)]
        fmt: FormatArg,
    },
    /// Prime graph of a spectrum given by its maximal elements.
    Gk {
        #[arg(long)]
        mu: String,
        #[command(flatten)]
        fmt: FormatArg,
    },
    /// Coset-order criterion for a matrix acting on GF(p)^dim.
    CosetOrder {
        #[arg(long)]
        matrix: PathBuf,
        #[arg(long)]
        m: u64,
        #[command(flatten)]
        fmt: FormatArg,
    },
    /// Catalog queries and data cross-checks.
    Catalog {
        #[command(subcommand)]
        action: CatalogAction,
        /// Catalog file; defaults to the bundled data.
        #[arg(long, global = true)]
        catalog: Option<PathBuf>,
        #[command(flatten)]
        fmt: FormatArg,
    },
    /// Replays the elimination argument for a target spectrum.
    Recognize {
        #[arg(long, conflicts_with = "mu", required_unless_present = "mu")]
        target: Option<String>,
        #[arg(long)]
        mu: Option<String>,
        #[arg(long)]
        all_rules: bool,
        /// Report the Frobenius-preimage clause for survivors.
        #[arg(long)]
        frobenius_preimage: bool,
        /// Comma-separated survivor names; exit 3 unless they match exactly.
        #[arg(long)]
        expect: Option<String>,
        #[arg(long)]
        catalog: Option<PathBuf>,
        #[command(flatten)]
        fmt: FormatArg,
    },
}

#[derive(Subcommand)]
enum CatalogAction {
    /// One line per record.
    List,
    /// Full record.
    Show { name: String },
    /// Records whose primes are at most MAX_PRIME.
    Sub {
        max_prime: u64,
        #[arg(long)]
        require: Option<u64>,
    },
    /// Target spectra.
    Targets,
    /// Validate generator files and module matrices against the catalog.
    Check {
        #[arg(long, default_value_t = DEFAULT_CAP)]
        cap: u64,
    },
}

enum Failure {
    Engine(Error),
    Usage(String),
    Mismatch(String, String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Usage(m) => Failure::Usage(m),
            e => Failure::Engine(e),
        }
    }
}

type Outcome = Result<String, Failure>;

fn to_json<T: Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serialisable");
    s.push('\n');
    s
}

fn parse_mu(text: &str) -> Result<MuSet, Error> {
    MuSet::new(parse_list(text)?)
}

fn fmt_set(xs: &[u64]) -> String {
    let s: Vec<String> = xs.iter().map(u64::to_string).collect();
    format!("{{{}}}", s.join(","))
}

fn load_catalog(path: &Option<PathBuf>) -> Result<Catalog, Error> {
    match path {
        Some(p) => Catalog::load(p),
        None => Ok(Catalog::bundled()),
    }
}

fn cmd_spectrum(
    generators: PathBuf,
    method: Method,
    cap: u64,
    samples: Option<u64>,
    seed: Option<u64>,
    format: OutFormat,
) -> Outcome {
    let g = load_group(&generators)?;
    let order = g.order().clone();
    let (mu, census) = match method {
        Method::Exhaustive => {
            let census = order_census(&g, cap)?;
            let mu =
                specrec::spectrum::maximal_elements(&census.keys().copied().collect::<Vec<_>>())?;
            (mu, Some(census))
        }
        Method::Sample => {
            let seed = seed
                .ok_or_else(|| Failure::Usage("--seed is required with --method sample".into()))?;
            let samples = samples.ok_or_else(|| {
                Failure::Usage("--samples is required with --method sample".into())
            })?;
            (spectrum_sample(&g, samples, seed)?.mu(), None)
        }
    };
    Ok(match format {
        OutFormat::Json => to_json(&json!({
            "degree": g.degree(),
            "order": order,
            "method": match method { Method::Exhaustive => "exhaustive", Method::Sample => "sample" },
            "mu": mu,
            "census": census,
        })),
        OutFormat::Text => {
            let mut out = String::new();
            let _ = writeln!(out, "DEGREE {}", g.degree());
            let _ = writeln!(out, "ORDER {order}");
            let _ = writeln!(out, "MU {mu}");
            if let Some(census) = census {
                for (o, n) in census {
                    let _ = writeln!(out, "CLASS ORDER {o}: {n}");
                }
            }
            out
        }
    })
}

fn cmd_gk(mu: &str, format: OutFormat) -> Outcome {
    let mu = parse_mu(mu)?;
    let g = PrimeGraph::build(&mu);
    let comps = g.components();
    Ok(match format {
        OutFormat::Json => to_json(&json!({
            "mu": mu,
            "vertices": g.vertices(),
            "edges": g.edges(),
            "components": comps,
            "nonadjacent_triples": g.nonadjacent_triples(),
        })),
        OutFormat::Text => {
            let mut out = String::new();
            let vs: Vec<String> = g.vertices().iter().map(u64::to_string).collect();
            let es: Vec<String> = g.edges().iter().map(|(p, q)| format!("{p}-{q}")).collect();
            let _ = writeln!(out, "VERTICES {}", vs.join(" "));
            let _ = writeln!(
                out,
                "EDGES {}",
                if es.is_empty() {
                    "none".into()
                } else {
                    es.join(" ")
                }
            );
            let _ = writeln!(out, "COMPONENTS {}", comps.len());
            for (i, c) in comps.iter().enumerate() {
                let _ = writeln!(out, "PI{} {}", i + 1, fmt_set(c));
            }
            out
        }
    })
}

fn cmd_coset(matrix: PathBuf, m: u64, format: OutFormat) -> Outcome {
    let t = modlinalg::read_matrix(&matrix)?;
    let uniform = modlinalg::coset_uniform_order(&t, m)?;
    let rank = modlinalg::power_sum(&t, m)?.rank();
    let fixed = modlinalg::fixed_space_dim(&t);
    let orders = match modlinalg::coset_orders_bruteforce(&t, m) {
        Ok(o) => Some(o),
        Err(Error::CapExceeded { .. }) => None,
        Err(e) => return Err(e.into()),
    };
    Ok(match format {
        OutFormat::Json => to_json(&json!({
            "p": t.p(),
            "dim": t.dim(),
            "m": m,
            "uniform": uniform,
            "power_sum_rank": rank,
            "fixed_space_dim": fixed,
            "bruteforce_orders": orders,
        })),
        OutFormat::Text => {
            let mut out = String::new();
            let _ = writeln!(out, "FIELD GF({}) DIM {}", t.p(), t.dim());
            let _ = writeln!(out, "UNIFORM {uniform}");
            let _ = writeln!(out, "POWER SUM RANK {rank}");
            let _ = writeln!(out, "FIXED SPACE DIM {fixed}");
            match orders {
                Some(o) => {
                    for (k, n) in o {
                        let _ = writeln!(out, "COSET ORDER {k}: {n}");
                    }
                }
                None => {
                    let _ = writeln!(
                        out,
                        "COSET ORDERS skipped: p^dim exceeds {}",
                        modlinalg::BRUTE_FORCE_CAP
                    );
                }
            }
            out
        }
    })
}

fn record_line(r: &specrec::catalog::SimpleGroupRecord) -> String {
    let mu = r.mu.as_ref().map_or("-".to_string(), |m| m.to_string());
    format!(
        "{} order {} out {} mu {}",
        r.name,
        r.order(),
        r.out_order,
        mu
    )
}

fn cmd_catalog(action: CatalogAction, catalog: Option<PathBuf>, format: OutFormat) -> Outcome {
    let c = load_catalog(&catalog)?;
    let json = matches!(format, OutFormat::Json);
    match action {
        CatalogAction::List => Ok(if json {
            to_json(&c.records)
        } else {
            c.records.iter().map(|r| record_line(r) + "\n").collect()
        }),
        CatalogAction::Show { name } => {
            let r = c
                .record(&name)
                .ok_or_else(|| Error::Validation(format!("no record named {name}")))?;
            Ok(if json {
                to_json(r)
            } else {
                let mut out = record_line(r) + "\n";
                let _ = writeln!(out, "out structure {}", r.out_structure);
                for e in &r.extensions {
                    let _ = writeln!(out, "extension {} out {} mu {}", e.name, e.out_order, e.mu);
                }
                for w in &r.frobenius_witnesses {
                    let _ = writeln!(out, "frobenius ({},{})", w.kernel_order, w.complement_order);
                }
                for f in &r.module_facts {
                    let _ = writeln!(
                        out,
                        "module {} char {}: {}",
                        f.group,
                        f.characteristic,
                        serde_json::to_string(&f.statement).unwrap()
                    );
                }
                out
            })
        }
        CatalogAction::Sub { max_prime, require } => {
            let rs = c.subcatalog(max_prime, require);
            Ok(if json {
                to_json(&rs.iter().map(|r| &r.name).collect::<Vec<_>>())
            } else {
                let names: Vec<&str> = rs.iter().map(|r| r.name.as_str()).collect();
                format!("COUNT {}\n{}\n", names.len(), names.join(", "))
            })
        }
        CatalogAction::Targets => Ok(if json {
            to_json(&c.targets)
        } else {
            c.targets
                .values()
                .map(|t| format!("{} {} mu {}\n", t.key, t.label, t.mu))
                .collect()
        }),
        CatalogAction::Check { cap } => {
            let spectra = verify::check_generator_spectra(&c, cap)?;
            let matrices = verify::check_module_matrices(&c)?;
            let ok = spectra.iter().all(|s| s.ok) && matrices.iter().all(|m| m.ok);
            let out = if json {
                to_json(&json!({ "spectra": spectra, "matrices": matrices, "ok": ok }))
            } else {
                let mut out = String::new();
                for s in &spectra {
                    let mu = s
                        .computed_mu
                        .as_ref()
                        .map_or("not enumerated".into(), |m| m.to_string());
                    let _ = writeln!(
                        out,
                        "{} {}: order {} mu {}",
                        if s.ok { "OK" } else { "BAD" },
                        s.name,
                        s.order,
                        mu
                    );
                }
                for m in &matrices {
                    let _ = writeln!(
                        out,
                        "{} {} {}: order {} rank f(T) {}",
                        if m.ok { "OK" } else { "BAD" },
                        m.group,
                        m.file,
                        m.matrix_order,
                        m.power_sum_rank
                    );
                }
                out
            };
            if ok {
                Ok(out)
            } else {
                Err(Failure::Engine(Error::Validation(format!(
                    "catalog check failed\n{out}"
                ))))
            }
        }
    }
}

fn cmd_recognize(
    target: Option<String>,
    mu: Option<String>,
    options: Options,
    expect: Option<String>,
    catalog: Option<PathBuf>,
    format: OutFormat,
) -> Outcome {
    let c = load_catalog(&catalog)?;
    let spec = match (target, mu) {
        (Some(t), _) => TargetSpec::Named(t),
        (None, Some(m)) => TargetSpec::Mu(parse_mu(&m)?),
        (None, None) => return Err(Failure::Usage("--target or --mu is required".into())),
    };
    let rep = recognizer::recognize(&spec, &c, options)?;
    let out = recognizer::render_report(&rep, format.into());
    if let Some(expect) = expect {
        let mut want: Vec<String> = expect
            .split(',')
            .map(|s| s.trim().to_string())
            .filter(|s| !s.is_empty())
            .collect();
        want.sort();
        let mut got = rep.survivors.clone();
        got.sort();
        if want != got {
            return Err(Failure::Mismatch(
                out,
                format!(
                    "expected survivors {}, got {}",
                    want.join(","),
                    got.join(",")
                ),
            ));
        }
    }
    Ok(out)
}

fn exit_code(e: &Error) -> i32 {
    match e {
        Error::CapExceeded { .. } => EXIT_CAP,
        Error::Usage(_) => EXIT_USAGE,
        _ => EXIT_INVALID,
    }
}

pub fn run<I, T>(argv: I) -> CommandOutcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let text = e.render().to_string();
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            return if code == EXIT_OK {
                CommandOutcome {
                    exit_code: code,
                    stdout: text,
                    stderr: String::new(),
                }
            } else {
                CommandOutcome {
                    exit_code: code,
                    stdout: String::new(),
                    stderr: text,
                }
            };
        }
    };
    let result = match cli.command {
        Command::Spectrum {
            generators,
            method,
            cap,
            samples,
            seed,
            fmt,
        } => cmd_spectrum(generators, method, cap, samples, seed, fmt.format),
        Command::Gk { mu, fmt } => cmd_gk(&mu, fmt.format),
        Command::CosetOrder { matrix, m, fmt } => cmd_coset(matrix, m, fmt.format),
        Command::Catalog {
            action,
            catalog,
            fmt,
        } => cmd_catalog(action, catalog, fmt.format),
        Command::Recognize {
            target,
            mu,
            all_rules,
            frobenius_preimage,
            expect,
            catalog,
            fmt,
        } => cmd_recognize(
            target,
            mu,
            Options {
                all_rules,
                frobenius_preimage,
            },
            expect,
            catalog,
            fmt.format,
        ),
    };
    match result {
        Ok(stdout) => CommandOutcome {
            exit_code: EXIT_OK,
            stdout,
            stderr: String::new(),
        },
        Err(Failure::Engine(e)) => CommandOutcome {
            exit_code: exit_code(&e),
            stdout: String::new(),
            stderr: format!("error: {e}\n"),
        },
        Err(Failure::Usage(m)) => CommandOutcome {
            exit_code: EXIT_USAGE,
            stdout: String::new(),
            stderr: format!("usage error: {m}\n"),
        },
        Err(Failure::Mismatch(stdout, m)) => CommandOutcome {
            exit_code: EXIT_MISMATCH,
            stdout,
            stderr: format!("{m}\n"),
        },
    }
}
