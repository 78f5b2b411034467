//! Command-line front end over the text file format.
//!
//! Exit codes: 0 on success, 1 on a parse or validation error, 2 when a
//! check ran to completion and failed. `--format` switches between the
//! human and the structured rendering without touching exit codes.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use reebmod::ccmod::{cc, quotient};
use reebmod::exactlin::CoefficientRing;
use reebmod::format::{parse, serialize_with_comments, to_dot, ParsedFile};
use reebmod::product::{cf, cf_unconnected, generator_set};
use reebmod::reeb::{Target, ReebGraph};
use reebmod::report::{self, Format, Rendering};
use reebmod::verify::{
    check_thm1, check_thm2, induced_hom, random_reeb_graph, RandomGraphParams,
};
use reebmod::{Error, Result};

#[derive(Parser)]
#[command(
    name = "reebmod",
    about = "Exact module calculators for labeled Reeb graphs",
    version
)]
struct Cli {
    /// Output rendering: text or json-like.
    #[arg(long, global = true, default_value = "text")]
    format: String,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Parse a graph file and report every validation finding.
    Validate { file: PathBuf },
    /// Fiber labels, effective generators and the outer part.
    Cc {
        file: PathBuf,
        /// Coefficient ring: Z, Q, or Z<p> such as Z2.
        #[arg(long, default_value = "Z")]
        coeff: String,
        /// Restrict the outer part to oriented classes.
        #[arg(long)]
        oriented: bool,
    },
    /// Quotient of the fiber-class module by the compatible submodule.
    Quotient {
        file: PathBuf,
        #[arg(long, default_value = "Z")]
        coeff: String,
    },
    /// Product graph of two maps, written to a file.
    Product {
        f1: PathBuf,
        f2: PathBuf,
        /// Output file.
        #[arg(short, long)]
        out: PathBuf,
        /// Skip the final surgery; gadget components stay separate.
        #[arg(long)]
        no_connect: bool,
    },
    /// Check the product structure of a pair (labels, spans, shape).
    VerifyThm2 {
        f1: PathBuf,
        f2: PathBuf,
        /// Product graph to check; constructed fresh when omitted.
        result: Option<PathBuf>,
    },
    /// Induced pairing on the quotient modules.
    Hom {
        f1: PathBuf,
        f2: PathBuf,
        /// Product graph providing the target; constructed when omitted.
        result: Option<PathBuf>,
        #[arg(long, default_value = "Z")]
        coeff: String,
    },
    /// First homology of the graph.
    Homology {
        file: PathBuf,
        #[arg(long, default_value = "Z")]
        coeff: String,
    },
    /// Surviving fiber classes force first homology; check the bound.
    CheckThm1 {
        file: PathBuf,
        #[arg(long, default_value = "Z")]
        coeff: String,
    },
    /// Seeded random graph, written to a file.
    Random {
        #[arg(long)]
        seed: u64,
        #[arg(long)]
        vertices: usize,
        #[arg(long)]
        labels: usize,
        /// line or circle.
        #[arg(long, default_value = "line")]
        target: String,
        #[arg(long, default_value_t = 3)]
        max_degree: usize,
        /// Only ordinary Morse vertices (degree-3 junctions and extrema).
        #[arg(long)]
        morse: bool,
        #[arg(short, long)]
        out: PathBuf,
    },
    /// Graphviz rendering of a graph file.
    ExportDot {
        file: PathBuf,
        #[arg(short, long)]
        out: PathBuf,
    },
}

fn read_graph(path: &Path) -> Result<ParsedFile> {
    let text = std::fs::read_to_string(path)?;
    parse(&text)
}

/// Like [`read_graph`] but also insists the graph is usable.
fn read_valid(path: &Path) -> Result<ParsedFile> {
    let f = read_graph(path)?;
    f.graph.require_valid()?;
    Ok(f)
}

fn target_of(text: &str) -> Result<Target> {
    match text {
        "line" => Ok(Target::Line),
        "circle" => Ok(Target::Circle),
        other => Err(Error::Parse {
            line: 0,
            msg: format!("unknown target `{other}`; use line or circle"),
        }),
    }
}

/// Writes to stdout, ignoring a closed pipe: the verdict still decides
/// the exit code even when the reader has gone away.
fn emit(text: &str) {
    use std::io::Write;
    let mut out = std::io::stdout();
    let _ = out.write_all(text.as_bytes());
    let _ = out.flush();
}

/// Prints the rendering and converts a verdict into the exit code.
fn finish(r: &Rendering, format: Format, ok: bool) -> u8 {
    emit(&r.emit(format));
    if matches!(format, Format::JsonLike) {
        emit("\n");
    }
    if ok {
        0
    } else {
        2
    }
}

fn run(cli: Cli) -> Result<u8> {
    let format = Format::parse(&cli.format)?;
    match cli.cmd {
        Cmd::Validate { file } => {
            let parsed = read_graph(&file)?;
            let diags = parsed.graph.validate();
            let ok = diags.is_empty();
            let code = finish(
                &report::validation(&file.display().to_string(), &diags),
                format,
                true,
            );
            // An invalid file is an input error, not a failed check.
            Ok(if ok { code } else { 1 })
        }
        Cmd::Cc {
            file,
            coeff,
            oriented,
        } => {
            let ring = CoefficientRing::parse(&coeff)?;
            let parsed = read_graph(&file)?;
            let data = cc(&parsed.graph, parsed.universe.as_deref(), oriented)?;
            Ok(finish(&report::cc_data(&data, ring), format, true))
        }
        Cmd::Quotient { file, coeff } => {
            let ring = CoefficientRing::parse(&coeff)?;
            let parsed = read_graph(&file)?;
            let p = quotient(&parsed.graph, ring)?;
            Ok(finish(&report::presentation("quotient", &p), format, true))
        }
        Cmd::Product {
            f1,
            f2,
            out,
            no_connect,
        } => {
            let a = read_valid(&f1)?;
            let b = read_valid(&f2)?;
            let product = if no_connect {
                cf_unconnected(&a.graph, &b.graph)?
            } else {
                cf(&a.graph, &b.graph)?
            };
            let mut comments = vec![format!(
                "product of {} and {}",
                f1.display(),
                f2.display()
            )];
            for (n, spec) in generator_set(&a.graph, &b.graph)?
                .generators
                .iter()
                .enumerate()
            {
                comments.push(format!("gadget g{}: {}", n + 1, spec.describe()));
            }
            std::fs::write(&out, serialize_with_comments(&product, None, &comments))?;
            emit(&format!("wrote {}\n", out.display()));
            Ok(0)
        }
        Cmd::VerifyThm2 { f1, f2, result } => {
            let a = read_valid(&f1)?;
            let b = read_valid(&f2)?;
            let product = match result {
                Some(path) => read_graph(&path)?.graph,
                None => cf(&a.graph, &b.graph)?,
            };
            let rep = check_thm2(&a.graph, &b.graph, &product)?;
            Ok(finish(&report::thm2(&rep), format, rep.pass()))
        }
        Cmd::Hom {
            f1,
            f2,
            result,
            coeff,
        } => {
            let ring = CoefficientRing::parse(&coeff)?;
            let a = read_valid(&f1)?;
            let b = read_valid(&f2)?;
            let product = match result {
                Some(path) => read_graph(&path)?.graph,
                None => cf(&a.graph, &b.graph)?,
            };
            let rep = induced_hom(&a.graph, &b.graph, &product, ring)?;
            Ok(finish(&report::hom(&rep), format, rep.pass()))
        }
        Cmd::Homology { file, coeff } => {
            let ring = CoefficientRing::parse(&coeff)?;
            let parsed = read_graph(&file)?;
            let h = parsed.graph.h1(ring)?;
            Ok(finish(&report::presentation("h1", &h), format, true))
        }
        Cmd::CheckThm1 { file, coeff } => {
            let ring = CoefficientRing::parse(&coeff)?;
            let parsed = read_graph(&file)?;
            let rep = check_thm1(&parsed.graph, ring)?;
            Ok(finish(&report::thm1(&rep), format, rep.ok))
        }
        Cmd::Random {
            seed,
            vertices,
            labels,
            target,
            max_degree,
            morse,
            out,
        } => {
            let params = RandomGraphParams {
                target: target_of(&target)?,
                vertices,
                labels,
                max_degree,
                morse_only: morse,
            };
            let g: ReebGraph = random_reeb_graph(seed, &params)?;
            let comments = vec![format!(
                "random graph: seed={seed} vertices={vertices} labels={labels} target={target}"
            )];
            std::fs::write(&out, serialize_with_comments(&g, None, &comments))?;
            emit(&format!("wrote {}\n", out.display()));
            Ok(0)
        }
        Cmd::ExportDot { file, out } => {
            let parsed = read_graph(&file)?;
            std::fs::write(&out, to_dot(&parsed.graph))?;
            emit(&format!("wrote {}\n", out.display()));
            Ok(0)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}
