use std::io::{Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};
use thiserror::Error;

use strlink::check::{run_checks, CheckConfig};
use strlink::foxcalc::{torsion_via_fox, wirtinger};
use strlink::homology::{format_index, homology_table};
use strlink::planar::{FaceComplex, QUADRANT_NAMES};
use strlink::torsion::{state_sum, torsion_polynomial, verify_skein};
use strlink::{parse_mld, Diagram, LaurentPoly};

#[derive(Parser)]
#[command(
    name = "strlink",
    version,
    about = "Torsion polynomials, Kauffman states and homology tables of string links"
)]
struct Cli {
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Torsion polynomial from the state sum.
    Torsion { file: PathBuf },
    /// Kauffman states with their filtration indices and gradings.
    States {
        file: PathBuf,
        /// Print the faces of the projection instead.
        #[arg(long)]
        dump_faces: bool,
    },
    /// Homology table, or chain ranks where the homology is not determined.
    Homology { file: PathBuf },
    /// det(A B) from the Wirtinger presentation, compared with the state sum.
    Fox { file: PathBuf },
    /// Skein relation at one crossing.
    Skein {
        file: PathBuf,
        /// Crossing number, counted from 1 in event order.
        #[arg(long)]
        crossing: usize,
        /// Allow a crossing between two different strands.
        #[arg(long)]
        mixed: bool,
    },
    /// Build a new diagram from existing ones and print it.
    Ops(OpsArgs),
    /// Run the seeded invariant suite.
    Check {
        #[arg(long, default_value_t = 8)]
        max_crossings: usize,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long, default_value_t = 4)]
        max_strands: usize,
        #[arg(long, default_value_t = 100)]
        diagrams: usize,
        #[arg(long, default_value_t = 200)]
        braids: usize,
        #[arg(long, default_value_t = 50)]
        pairs: usize,
    },
}

#[derive(Args)]
struct OpsArgs {
    #[command(flatten)]
    op: OpChoice,
    /// Strand to cable, counted from 1.
    #[arg(long)]
    strand: Option<usize>,
    #[arg(long, default_value_t = 2)]
    copies: usize,
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct OpChoice {
    /// Place B to the right of A.
    #[arg(long, num_args = 2, value_names = ["A", "B"])]
    amalgamate: Option<Vec<PathBuf>>,
    /// Stack B below A.
    #[arg(long, num_args = 2, value_names = ["A", "B"])]
    compose: Option<Vec<PathBuf>>,
    /// Replace one strand by parallel copies.
    #[arg(long, value_name = "FILE", requires = "strand")]
    satellite: Option<PathBuf>,
    /// Reflect every crossing.
    #[arg(long, value_name = "FILE")]
    mirror: Option<PathBuf>,
}

#[derive(Debug, Error)]
enum CliError {
    #[error("{path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("{path}: {msg}")]
    Input { path: String, msg: String },
    #[error("{0}")]
    Computation(String),
    #[error("{0} check(s) failed")]
    Failed(usize),
}

fn computation(e: impl std::fmt::Display) -> CliError {
    CliError::Computation(e.to_string())
}

fn read_diagram(path: &Path) -> Result<Diagram, CliError> {
    let name = path.display().to_string();
    let text = if name == "-" {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s).map_err(|source| CliError::Io { path: name.clone(), source })?;
        s
    } else {
        std::fs::read_to_string(path).map_err(|source| CliError::Io { path: name.clone(), source })?
    };
    parse_mld(&text).map_err(|e| CliError::Input { path: name, msg: e.to_string() })
}

fn poly_json(p: &LaurentPoly) -> Value {
    json!({ "text": p.to_string(), "terms": p.to_json() })
}

fn faces_text(fc: &FaceComplex) -> String {
    let mut out = String::new();
    for (f, c) in fc.colors.iter().enumerate() {
        let tag = if f == fc.u { " (U)" } else { "" };
        let color = format!("{c:?}").to_lowercase();
        out += &format!("face {f}: {color}{tag}\n");
    }
    for (c, q) in fc.quadrants.iter().enumerate() {
        let parts: Vec<String> = q.iter().zip(QUADRANT_NAMES).map(|(f, n)| format!("{n}={f}")).collect();
        out += &format!("crossing {}: {}\n", c + 1, parts.join(" "));
    }
    let bottom: Vec<String> = fc.bottom.iter().map(|f| f.to_string()).collect();
    out += &format!("bottom: {}\n", bottom.join(" "));
    out
}

fn run(cli: Cli) -> Result<String, CliError> {
    let json_out = cli.format == Format::Json;
    let out = match cli.command {
        Command::Torsion { file } => {
            let d = read_diagram(&file)?;
            let p = torsion_polynomial(&d).map_err(computation)?;
            if json_out {
                json!({ "strands": d.strands(), "torsion": poly_json(&p) }).to_string()
            } else {
                p.to_string()
            }
        }
        Command::States { file, dump_faces } => {
            let d = read_diagram(&file)?;
            if dump_faces {
                let fc = FaceComplex::build(&d);
                if json_out {
                    serde_json::to_string(&fc).expect("faces serialize")
                } else {
                    faces_text(&fc).trim_end().to_string()
                }
            } else {
                let sum = state_sum(&d).map_err(computation)?;
                if json_out {
                    let states: Vec<Value> = sum
                        .records
                        .iter()
                        .map(|r| {
                            let markers: Vec<&str> =
                                r.state.markers.iter().map(|&q| QUADRANT_NAMES[q as usize]).collect();
                            json!({ "markers": markers, "meridians": r.state.meridians, "F2": r.f2, "G": r.g })
                        })
                        .collect();
                    json!({ "count": states.len(), "states": states }).to_string()
                } else {
                    let mut lines = vec![format!("{} states", sum.records.len())];
                    for r in &sum.records {
                        let markers: String = r.state.markers.iter().map(|&q| QUADRANT_NAMES[q as usize]).collect();
                        lines.push(format!("{markers}  F={}  G={}", format_index(&r.f2), r.g));
                    }
                    lines.join("\n")
                }
            }
        }
        Command::Homology { file } => {
            let d = read_diagram(&file)?;
            let t = homology_table(&d).map_err(computation)?;
            if json_out {
                t.to_json().to_string()
            } else {
                t.to_string().trim_end().to_string()
            }
        }
        Command::Fox { file } => {
            let d = read_diagram(&file)?;
            let p = wirtinger(&d).map_err(computation)?;
            let fox = torsion_via_fox(&d).map_err(computation)?;
            let sum = torsion_polynomial(&d).map_err(computation)?;
            let unit = fox.equal_up_to_unit(&sum);
            if json_out {
                let unit = unit.map(|(s, sh)| json!({ "sign": s, "shift2": sh }));
                json!({
                    "det": poly_json(&fox),
                    "state_sum": poly_json(&sum),
                    "unit": unit,
                    "generators": p.arc_strand.len(),
                    "kinked": p.kinked,
                    "relations": p.relations,
                })
                .to_string()
            } else {
                let relation = match unit {
                    Some((s, sh)) => {
                        let mono = LaurentPoly::monomial(d.strands(), sh, s);
                        format!("det(A B) = ({mono}) * state sum")
                    }
                    None => "det(A B) and the state sum differ by more than a unit".into(),
                };
                format!("det(A B) = {fox}\nstate sum = {sum}\n{relation}")
            }
        }
        Command::Skein { file, crossing, mixed } => {
            let d = read_diagram(&file)?;
            if crossing == 0 {
                return Err(computation("crossings are counted from 1"));
            }
            let r = verify_skein(&d, crossing - 1, mixed).map_err(computation)?;
            if json_out {
                json!({
                    "crossing": crossing,
                    "strand": r.strand + 1,
                    "plus": poly_json(&r.plus),
                    "minus": poly_json(&r.minus),
                    "zero": poly_json(&r.zero),
                    "factor": r.factor,
                    "holds": r.holds,
                })
                .to_string()
            } else {
                let holds = if r.holds { "holds" } else { "fails" };
                format!(
                    "plus  = {}\nminus = {}\nzero  = {}\nplus - minus = (h{s}^1/2 - h{s}^-1/2) * zero {holds}",
                    r.plus,
                    r.minus,
                    r.zero,
                    s = r.strand + 1
                )
            }
        }
        Command::Ops(OpsArgs { op, strand, copies }) => {
            let d = if let Some(files) = op.amalgamate {
                read_diagram(&files[0])?.amalgamate(&read_diagram(&files[1])?)
            } else if let Some(files) = op.compose {
                read_diagram(&files[0])?.compose(&read_diagram(&files[1])?).map_err(computation)?
            } else if let Some(file) = op.satellite {
                let strand = strand.expect("clap enforces --strand");
                if strand == 0 {
                    return Err(computation("strands are counted from 1"));
                }
                read_diagram(&file)?.satellite(strand - 1, copies).map_err(computation)?
            } else {
                read_diagram(&op.mirror.expect("clap enforces one operation"))?.mirror()
            };
            if json_out {
                let p = torsion_polynomial(&d).map_err(computation)?;
                json!({ "mld": d.to_mld(), "torsion": poly_json(&p) }).to_string()
            } else {
                d.to_mld().trim_end().to_string()
            }
        }
        Command::Check { max_crossings, seed, max_strands, diagrams, braids, pairs } => {
            let cfg = CheckConfig { seed, max_crossings, max_strands: max_strands.max(1), diagrams, braids, pairs };
            let summary = run_checks(&cfg);
            let failed: usize = summary.items.iter().map(|i| i.failures.len()).sum();
            let text = if json_out {
                serde_json::to_string(&summary).expect("summary serializes")
            } else {
                let mut lines = vec![format!("seed {seed}, at most {max_crossings} crossings")];
                for item in &summary.items {
                    lines.push(format!(
                        "{:<20} {:>4} passed {:>4} failed",
                        item.name,
                        item.passed,
                        item.failures.len()
                    ));
                    lines.extend(item.failures.iter().map(|f| format!("  {f}")));
                }
                lines.join("\n")
            };
            emit(&text);
            if failed > 0 {
                return Err(CliError::Failed(failed));
            }
            return Ok(String::new());
        }
    };
    Ok(out)
}

/// Writes to stdout, ignoring a closed pipe.
fn emit(text: &str) {
    let _ = writeln!(std::io::stdout().lock(), "{text}");
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match run(cli) {
        Ok(out) => {
            if !out.is_empty() {
                emit(&out);
            }
            ExitCode::SUCCESS
        }
        Err(CliError::Failed(n)) => {
            eprintln!("{n} check(s) failed");
            ExitCode::from(3)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}
