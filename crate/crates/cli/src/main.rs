//! `gsp4` — conjugacy classes, induced characters and the irreducible
//! character table of `GSp(4, F_q)`, with built-in verification suites.
//!
//! Exit codes: `0` success, `1` verification failure, `2` usage error,
//! `3` resource guard exceeded.

use clap::{Parser, Subcommand, ValueEnum};
use gsp4_cli::cache::Cache;
use gsp4_cli::context::{Pipeline, PipelineError};
use gsp4_cli::verify::{render_report, run_core_suite, run_extended_suite};
use gsp4_core::classfn::{decompose, export_class_function, induce_subgroup_sum};
use gsp4_core::conjugacy::export_class_table;
use gsp4_core::dimensions;
use gsp4_core::group::enumerate_subgroup;
use gsp4_core::irreducibles::{export_table, export_table_csv};
use gsp4_core::parabolic::{closed_form_character, InducedSpec};
use gsp4_core::whittaker::WhittakerDatum;
use std::process::ExitCode;

const EXIT_VERIFY_FAIL: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_RESOURCE: u8 = 3;

/// Writes to stdout, treating a broken pipe as a clean exit.
fn emit(text: &str) -> Result<(), std::io::Error> {
    use std::io::Write;
    let mut out = std::io::stdout().lock();
    match out.write_all(text.as_bytes()).and_then(|_| out.flush()) {
        Err(e) if e.kind() == std::io::ErrorKind::BrokenPipe => std::process::exit(0),
        other => other,
    }
}

#[derive(Parser)]
#[command(name = "gsp4", version, about = "Character theory of GSp(4, F_q)")]
struct Args {
    /// Disable the on-disk cache and recompute everything.
    #[arg(long, global = true)]
    no_cache: bool,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Clone, Copy, ValueEnum)]
enum Suite {
    Core,
    Extended,
}

#[derive(Clone, Copy, ValueEnum)]
enum Parabolic {
    B,
    P,
    Q,
}

#[derive(Subcommand)]
enum Cmd {
    /// The labeled conjugacy class table.
    Classes {
        #[arg(long)]
        q: u64,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// A parabolically induced character, computed by brute-force induction.
    Induce {
        #[arg(long)]
        q: u64,
        /// Spec as JSON, e.g. '{"Borel":{"m1":1,"m2":0,"ms":0}}' or
        /// '{"Klingen":{"mchi":1,"pi":{"Cuspidal":{"n":1}}}}'.
        #[arg(long, conflicts_with = "parabolic")]
        spec: Option<String>,
        /// Which parabolic to induce from (alternative to --spec).
        #[arg(long, value_enum)]
        parabolic: Option<Parabolic>,
        /// χ₁ exponent (Borel).
        #[arg(long)]
        m1: Option<i64>,
        /// χ₂ exponent (Borel).
        #[arg(long)]
        m2: Option<i64>,
        /// σ exponent (Borel/Siegel).
        #[arg(long)]
        ms: Option<i64>,
        /// χ exponent (Klingen).
        #[arg(long)]
        mchi: Option<i64>,
        /// GL(2) datum as JSON, e.g. '{"Cuspidal":{"n":1}}' (Siegel/Klingen).
        #[arg(long)]
        pi: Option<String>,
    },
    /// The Gelfand–Graev character.
    Whittaker {
        #[arg(long)]
        q: u64,
    },
    /// The full irreducible character table.
    Table {
        #[arg(long)]
        q: u64,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Decompose an induced character into irreducibles.
    Decompose {
        #[arg(long)]
        q: u64,
        #[arg(long)]
        spec: String,
    },
    /// The dimension table of congruence-fixed vectors at a given q.
    Dims {
        #[arg(long)]
        q: u64,
        #[arg(long, value_enum, default_value = "csv")]
        format: Format,
    },
    /// Run a verification suite (core: q = 3, extended: q = 5).
    Verify {
        #[arg(long)]
        q: u64,
        #[arg(long, value_enum, default_value = "core")]
        suite: Suite,
    },
}

fn exit_code_for(err: &PipelineError) -> u8 {
    match err {
        PipelineError::Group(gsp4_core::group::GroupError::ResourceGuard { .. }) => EXIT_RESOURCE,
        _ => EXIT_USAGE,
    }
}

fn main() -> ExitCode {
    let args = Args::parse();
    match run(args) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(match e.downcast_ref::<PipelineError>() {
                Some(pe) => exit_code_for(pe),
                None => EXIT_USAGE,
            })
        }
    }
}

fn run(args: Args) -> Result<u8, Box<dyn std::error::Error>> {
    let cache = Cache::from_env(!args.no_cache)?;
    match args.cmd {
        Cmd::Classes { q, format } => {
            let pl = Pipeline::build(q, &cache, None)?;
            let export = export_class_table(&pl.partition);
            let mut rendered = String::new();
            match format {
                Format::Json => {
                    rendered = serde_json::to_string_pretty(&export)?;
                    rendered.push('\n');
                }
                Format::Csv => {
                    rendered.push_str("index,label,size,centralizer_order,multiplier_dlog,provisional\n");
                    for c in &export.classes {
                        rendered.push_str(&format!(
                            "{},{},{},{},{},{}\n",
                            c.index, c.label, c.size, c.centralizer_order, c.multiplier_dlog,
                            c.provisional
                        ));
                    }
                }
            }
            emit(&rendered)?;
            Ok(0)
        }
        Cmd::Induce { q, spec, parabolic, m1, m2, ms, mchi, pi } => {
            let spec: InducedSpec = match (spec, parabolic) {
                (Some(json), None) => serde_json::from_str(&json)?,
                (None, Some(par)) => {
                    let pi_of = |s: Option<String>| -> Result<_, Box<dyn std::error::Error>> {
                        let s = s.ok_or("--pi is required for this parabolic")?;
                        Ok(serde_json::from_str(&s)?)
                    };
                    match par {
                        Parabolic::B => InducedSpec::Borel {
                            m1: m1.ok_or("--m1 is required for --parabolic b")?,
                            m2: m2.ok_or("--m2 is required for --parabolic b")?,
                            ms: ms.ok_or("--ms is required for --parabolic b")?,
                        },
                        Parabolic::P => InducedSpec::Siegel {
                            pi: pi_of(pi)?,
                            ms: ms.ok_or("--ms is required for --parabolic p")?,
                        },
                        Parabolic::Q => InducedSpec::Klingen {
                            mchi: mchi.ok_or("--mchi is required for --parabolic q")?,
                            pi: pi_of(pi)?,
                        },
                    }
                }
                _ => {
                    eprintln!("error: pass exactly one of --spec or --parabolic");
                    return Ok(EXIT_USAGE);
                }
            };
            let pl = Pipeline::build(q, &cache, None)?;
            let members = enumerate_subgroup(&pl.ctx, &pl.enumeration, spec.subgroup());
            let eval = spec.subgroup_evaluator(&pl.ctx, &pl.field);
            let induced =
                induce_subgroup_sum(&pl.ctx, &pl.enumeration, &pl.partition, &members, &|m| {
                    eval(m).expect("total on members")
                });
            // cross-check against the closed form before emitting
            let closed = closed_form_character(&spec, &pl.field, &pl.partition);
            let diff = closed.max_abs_diff(&induced);
            if diff > 1e-6 {
                eprintln!("closed form deviates from the induction oracle by {diff:e}");
                return Ok(EXIT_VERIFY_FAIL);
            }
            let mut rendered =
                serde_json::to_string_pretty(&export_class_function(&pl.partition, &induced))?;
            rendered.push('\n');
            emit(&rendered)?;
            Ok(0)
        }
        Cmd::Whittaker { q } => {
            let pl = Pipeline::build(q, &cache, None)?;
            let gg = gsp4_core::whittaker::gelfand_graev(
                &pl.ctx,
                &pl.field,
                &pl.enumeration,
                &pl.partition,
                WhittakerDatum::default(),
            );
            let mut rendered =
                serde_json::to_string_pretty(&export_class_function(&pl.partition, &gg))?;
            rendered.push('\n');
            emit(&rendered)?;
            Ok(0)
        }
        Cmd::Table { q, format } => {
            let kind = match format {
                Format::Json => "table-json",
                Format::Csv => "table-csv",
            };
            if let Some(bytes) = cache.load(q, kind)? {
                // warm path: the rendered table is emitted verbatim
                emit(&String::from_utf8(bytes)?)?;
                return Ok(0);
            }
            let pl = Pipeline::build(q, &cache, None)?;
            let table = pl.irreducible_table_default()?;
            let rendered = match format {
                Format::Json => {
                    let mut s =
                        serde_json::to_string_pretty(&export_table(&table, &pl.partition))?;
                    s.push('\n');
                    s
                }
                Format::Csv => export_table_csv(&table, &pl.partition),
            };
            cache.save(q, kind, rendered.as_bytes())?;
            emit(&rendered)?;
            Ok(0)
        }
        Cmd::Decompose { q, spec } => {
            let spec: InducedSpec = serde_json::from_str(&spec)?;
            let pl = Pipeline::build(q, &cache, None)?;
            let table = pl.irreducible_table_default()?;
            let cf = closed_form_character(&spec, &pl.field, &pl.partition);
            let dec = decompose(&pl.partition, &cf, &table.chars)?;
            #[derive(serde::Serialize)]
            struct Out {
                spec: InducedSpec,
                constituents: Vec<Constituent>,
                norm_sq: u64,
            }
            #[derive(serde::Serialize)]
            struct Constituent {
                index: usize,
                degree: u64,
                generic: bool,
                annotation: Option<String>,
                multiplicity: u64,
            }
            let out = Out {
                spec,
                constituents: dec
                    .constituents
                    .iter()
                    .map(|&(i, m)| Constituent {
                        index: i,
                        degree: table.degrees[i],
                        generic: table.generic[i],
                        annotation: table.annotations[i].clone(),
                        multiplicity: m,
                    })
                    .collect(),
                norm_sq: dec.norm_sq(),
            };
            let mut rendered = serde_json::to_string_pretty(&out)?;
            rendered.push('\n');
            emit(&rendered)?;
            Ok(0)
        }
        Cmd::Dims { q, format } => {
            if q < 3 || q % 2 == 0 {
                eprintln!("error: q must be an odd prime power ≥ 3");
                return Ok(EXIT_USAGE);
            }
            let rendered = match format {
                Format::Csv => dimensions::export_csv(q),
                Format::Json => {
                    let mut s = serde_json::to_string_pretty(&dimensions::export_rows(q))?;
                    s.push('\n');
                    s
                }
            };
            emit(&rendered)?;
            Ok(0)
        }
        Cmd::Verify { q, suite } => {
            let (expected_q, name) = match suite {
                Suite::Core => (3u64, "core"),
                Suite::Extended => (5u64, "extended"),
            };
            if q != expected_q {
                eprintln!("error: the {name} suite runs at q = {expected_q}");
                return Ok(EXIT_USAGE);
            }
            let results = match suite {
                Suite::Core => run_core_suite(&cache),
                Suite::Extended => run_extended_suite(&cache),
            };
            match results {
                Ok(results) => {
                    let (report, all_pass) = render_report(name, q, &results);
                    emit(&report)?;
                    Ok(if all_pass { 0 } else { EXIT_VERIFY_FAIL })
                }
                Err(e) => {
                    eprintln!("error: {e}");
                    Ok(exit_code_for(&e))
                }
            }
        }
    }
}
