mod diagram;

use std::fs;
use std::io::{self, Read, Write};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use klein4::classify::census::census;
use klein4::classify::{decompose, iso_with, IsoConfig};
use klein4::conformance::{self, Config};
use klein4::gf::{Field, Poly};
use klein4::quiver::to_quiver;
use klein4::syzygy::{ar_sequence, omega};
use klein4::{Error, KModule, Label};
use serde_json::{json, Value};

/// Modules for the Klein four group over GF(2^m): construction,
/// decomposition, classification and diagrams.
#[derive(Parser)]
#[command(name = "klein4", version)]
struct Cli {
    /// Seed for every randomized step.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check the module relations and print the normalized document.
    Validate { file: Option<String> },
    /// Dimension, free rank, socle and radical, and the pencil of the
    /// projective-free part.
    Info { file: Option<String> },
    /// Split into indecomposable summands.
    Decompose {
        file: Option<String>,
        /// Include the change-of-basis matrix.
        #[arg(long)]
        witness: bool,
    },
    /// Heller shift: syzygy for n > 0, cosyzygy for n < 0.
    Omega {
        file: Option<String>,
        #[arg(short, allow_negative_numbers = true)]
        n: i64,
    },
    /// Dual module (transposed actions).
    Dual { file: Option<String> },
    /// Decide isomorphism and print an intertwiner when one exists.
    Iso { file1: String, file2: String },
    /// Build a canonical indecomposable.
    Make {
        #[command(subcommand)]
        spec: LabelSpec,
        /// Field degree m, selecting GF(2^m).
        #[arg(long, global = true, default_value_t = 1)]
        field: u32,
        /// Output file instead of stdout.
        #[arg(short, global = true)]
        o: Option<String>,
    },
    /// Count isomorphism classes of indecomposables by brute force, for
    /// every dimension up to `--dim`.
    Enumerate {
        #[arg(long)]
        dim: usize,
        #[arg(long, default_value_t = 1)]
        field: u32,
    },
    /// Draw a module given in a zig-zag basis.
    Diagram {
        file: Option<String>,
        #[arg(long, value_enum, default_value_t = Format::Ascii)]
        format: Format,
    },
    /// Almost-split sequence ending in the l-th syzygy of the trivial module.
    Ar {
        #[arg(short, allow_negative_numbers = true)]
        l: i64,
    },
    /// Run the conformance suite.
    Check {
        #[arg(long, default_value_t = 13)]
        max_dim: usize,
    },
}

#[derive(Subcommand)]
enum LabelSpec {
    Free,
    Trivial,
    Band {
        #[arg(long)]
        poly: String,
        #[arg(long, default_value_t = 1)]
        power: usize,
    },
    Zeroband {
        #[arg(short)]
        n: usize,
    },
    Syzygy {
        #[arg(short)]
        n: usize,
    },
    Cosyzygy {
        #[arg(short)]
        n: usize,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Ascii,
    Dot,
}

enum Failure {
    Lib(Error),
    Io(String),
    Check,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Failure {
        Failure::Lib(e)
    }
}

fn read_input(path: Option<&str>) -> Result<String, Failure> {
    match path {
        None | Some("-") => {
            let mut text = String::new();
            io::stdin().read_to_string(&mut text).map_err(|e| Failure::Io(format!("stdin: {e}")))?;
            Ok(text)
        }
        Some(p) => fs::read_to_string(p).map_err(|e| Failure::Io(format!("{p}: {e}"))),
    }
}

fn read_module(path: Option<&str>) -> Result<KModule, Failure> {
    Ok(KModule::from_json(&read_input(path)?)?)
}

fn field_of_degree(m: u32) -> Result<Field, Failure> {
    Ok(Field::gf2m(m)?)
}

fn label_of_spec(spec: &LabelSpec, field: &Field) -> Result<Label, Failure> {
    Ok(match spec {
        LabelSpec::Free => Label::Free,
        LabelSpec::Trivial => Label::Trivial,
        LabelSpec::Band { poly, power } => Label::band(Poly::parse(field, poly)?, *power),
        LabelSpec::Zeroband { n } => Label::ZeroBand(*n),
        LabelSpec::Syzygy { n } => Label::SyzygyPos(*n),
        LabelSpec::Cosyzygy { n } => Label::SyzygyNeg(*n),
    })
}

fn info(m: &KModule) -> Result<Value, Failure> {
    let mut doc = json!({
        "dim": m.dim(),
        "free_rank": m.free_rank(),
        "socle": m.socle().dim(),
        "radical": m.radical().dim(),
        "radical_quotient_dim": m.radical_quotient_dim(),
    });
    let core = omega(m, 0)?;
    let (rep, _) = to_quiver(&core)?;
    let mut pencil = json!({ "d1": rep.d1(), "d2": rep.d2() });
    if rep.d1() == rep.d2() {
        pencil["determinant"] = json!(rep.pencil_determinant()?.to_string());
    }
    doc["pencil"] = pencil;
    Ok(doc)
}

fn enumerate(field: &Field, max_dim: usize) -> Result<Value, Failure> {
    let mut dims = Vec::new();
    for dim in 1..=max_dim {
        let c = census(field, dim)?;
        let mut labels: Vec<&Label> = c.classes.iter().filter_map(|cl| cl.label.as_ref()).collect();
        labels.sort();
        let unlabeled = c.classes.iter().filter(|cl| cl.label.is_none()).count();
        dims.push(json!({
            "dim": dim,
            "valid_pairs": c.valid_pairs,
            "indecomposable_pairs": c.indecomposable_pairs,
            "classes": c.classes.len(),
            "labels": labels.iter().map(|l| l.to_string()).collect::<Vec<_>>(),
            "unlabeled": unlabeled,
        }));
    }
    Ok(json!({ "field": field.degree(), "dims": dims }))
}

fn write_output(path: Option<&str>, text: &str) -> Result<(), Failure> {
    match path {
        None | Some("-") => {
            let mut out = io::stdout().lock();
            out.write_all(text.as_bytes()).map_err(|e| Failure::Io(format!("stdout: {e}")))
        }
        Some(p) => fs::write(p, text).map_err(|e| Failure::Io(format!("{p}: {e}"))),
    }
}

fn run(cli: Cli) -> Result<(), Failure> {
    let line = |text: String| write_output(None, &format!("{text}\n"));
    match cli.command {
        Command::Validate { file } => line(read_module(file.as_deref())?.to_json()),
        Command::Info { file } => line(info(&read_module(file.as_deref())?)?.to_string()),
        Command::Decompose { file, witness } => {
            let d = decompose(&read_module(file.as_deref())?)?;
            let mut doc: Value = serde_json::from_str(&d.to_json()).expect("decomposition document is JSON");
            if !witness {
                doc.as_object_mut().expect("document is an object").remove("witness");
            }
            line(doc.to_string())
        }
        Command::Omega { file, n } => line(omega(&read_module(file.as_deref())?, n)?.to_json()),
        Command::Dual { file } => line(read_module(file.as_deref())?.dual().to_json()),
        Command::Iso { file1, file2 } => {
            let m = read_module(Some(&file1))?;
            let n = read_module(Some(&file2))?;
            let cfg = IsoConfig { seed: cli.seed, ..IsoConfig::default() };
            let doc = match iso_with(&m, &n, &cfg)? {
                Some(x) => json!({ "isomorphic": true, "witness": x.to_bits() }),
                None => json!({ "isomorphic": false }),
            };
            line(doc.to_string())
        }
        Command::Make { spec, field, o } => {
            let field = field_of_degree(field)?;
            let m = label_of_spec(&spec, &field)?.canonical(&field)?;
            write_output(o.as_deref(), &format!("{}\n", m.to_json()))
        }
        Command::Enumerate { dim, field } => line(enumerate(&field_of_degree(field)?, dim)?.to_string()),
        Command::Diagram { file, format } => {
            let layout = diagram::layout_zigzag(&read_module(file.as_deref())?)?;
            write_output(
                None,
                &match format {
                    Format::Ascii => layout.to_ascii(),
                    Format::Dot => layout.to_dot(),
                },
            )
        }
        Command::Ar { l } => line(ar_sequence(l)?.to_json()),
        Command::Check { max_dim } => {
            let cfg = Config { max_dim, seed: cli.seed, ..Config::default() };
            let reports = conformance::run_all(&cfg);
            for r in &reports {
                line(r.to_string())?;
            }
            if reports.iter().all(|r| r.passed) {
                Ok(())
            } else {
                Err(Failure::Check)
            }
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Check) => ExitCode::from(2),
        Err(Failure::Io(msg)) => {
            eprintln!("{}", json!({ "error": "Io", "message": msg }));
            ExitCode::from(1)
        }
        Err(Failure::Lib(e)) => {
            eprintln!("{}", json!({ "error": e.name(), "message": e.to_string() }));
            ExitCode::from(if e.is_internal() { 2 } else { 1 })
        }
    }
}
