//! Command-line front end: evaluate invariants of diagram files, reduce in
//! the annulus, cross-check the 2-cable, build periodic closures, and run
//! the p-periodicity obstruction tests.
//!
//! Exit codes: 0 success / no obstruction, 1 obstruction found (the diagram
//! cannot be p-periodic), 2 input error, 3 internal assertion (convention
//! violation).

use graphskein::codec;

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use num_traits::Signed;
use serde::Serialize;
use skein_core::annulus::{lemma33_check, ThetaReading};
use skein_core::cabling;
use skein_core::diagram::{
    abstract_screen, close_periodic, close_quotient, strand_multigraph, Ambient, Diagram,
};
use skein_core::kauffman;
use skein_core::periodicity::{full_report_opts, PeriodReport, TestOutcome, Verdict};
use skein_core::ring::Laurent;
use skein_core::yamada;
use skein_core::Error as CoreError;

const EXIT_OBSTRUCTION: u8 = 1;
const EXIT_INPUT: u8 = 2;
const EXIT_INTERNAL: u8 = 3;

#[derive(Parser)]
#[command(
    name = "graphskein",
    version,
    about = "Yamada and Kauffman bracket invariants of spatial graph diagrams, \
             annular reduction, and p-periodicity obstructions"
)]
struct Cli {
    #[command(subcommand)]
    command: Cmd,
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Worker threads for multi-file commands (results identical to serial).
    #[arg(long, global = true, default_value_t = 1, value_name = "N")]
    jobs: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    /// Plain text, one result per line.
    Text,
    /// One JSON object per result line.
    Json,
}

#[derive(Subcommand)]
enum Cmd {
    /// Yamada polynomial of each sphere diagram file.
    EvalYamada {
        /// Diagram JSON files.
        #[arg(required = true)]
        files: Vec<PathBuf>,
    },
    /// Kauffman bracket of each link diagram file (annular files reduce in
    /// the solid-torus skein module).
    EvalBracket {
        /// Diagram JSON files.
        #[arg(required = true)]
        files: Vec<PathBuf>,
    },
    /// Yamada polynomial in the original one-variable form R(x), defined
    /// for flat diagrams by (-d)^(-chi) * Y with x = A^4.
    #[command(name = "to-R")]
    ToR {
        /// Diagram JSON files.
        #[arg(required = true)]
        files: Vec<PathBuf>,
    },
    /// Reduce each annular diagram file in the skein algebra R[z].
    AnnulusReduce {
        /// Annular diagram JSON files.
        #[arg(required = true)]
        files: Vec<PathBuf>,
    },
    /// Audit the theta/S/bouquet recursion identities up to subscript n.
    Lemma33Check {
        /// Largest subscript to audit.
        #[arg(short = 'n', value_name = "N")]
        n: u32,
        /// Which convention names theta_n (default: audit both).
        #[arg(long = "theta-edges", value_enum, value_name = "n|n+1")]
        theta_edges: Option<ThetaEdges>,
    },
    /// Cross-check the invariant of each file against its 2-cable bracket.
    CableCheck {
        /// Diagram JSON files (sphere or annulus).
        #[arg(required = true)]
        files: Vec<PathBuf>,
    },
    /// Close a sector tangle into its p-periodic diagram (JSON on stdout).
    BuildPeriodic {
        /// Sector tangle JSON file.
        tangle: PathBuf,
        /// Period.
        #[arg(short = 'p', value_name = "P")]
        p: u32,
        /// Build the quotient closure (one sector, seam to itself) instead.
        #[arg(long)]
        quotient: bool,
    },
    /// Run the p-periodicity obstruction tests against a diagram.
    TestPeriod {
        /// Diagram JSON file.
        file: PathBuf,
        /// Candidate period (prime).
        #[arg(short = 'p', value_name = "P")]
        p: u32,
        /// Diagram JSON file holding the candidate quotient.
        #[arg(long, value_name = "QFILE")]
        quotient: Option<PathBuf>,
        /// Also test membership in the image of the Frobenius p-th power.
        #[arg(long = "pth-power")]
        pth_power: bool,
    },
    /// Abstract symmetry screen of the strand multigraph only.
    Screen {
        /// Diagram JSON file.
        file: PathBuf,
        /// Candidate period.
        #[arg(short = 'p', value_name = "P")]
        p: u32,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ThetaEdges {
    /// theta_n has n edges.
    #[value(name = "n")]
    N,
    /// theta_n has n+1 edges.
    #[value(name = "n+1")]
    NPlusOne,
}

impl ThetaEdges {
    fn reading(self) -> ThetaReading {
        match self {
            ThetaEdges::N => ThetaReading::EdgesN,
            ThetaEdges::NPlusOne => ThetaReading::EdgesNPlusOne,
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    ExitCode::from(run(&cli))
}

fn exit_code_of(e: &CoreError) -> u8 {
    match e {
        CoreError::Malformed(_) | CoreError::WindingCorruption(_) | CoreError::EssentialInSphere => {
            EXIT_INPUT
        }
        CoreError::NotInvertible | CoreError::Internal(_) => EXIT_INTERNAL,
    }
}

/// Per-file failure: exit code plus message.
type Failure = (u8, String);

fn fail_core(e: CoreError) -> Failure {
    (exit_code_of(&e), e.to_string())
}

fn read_to_string(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| (EXIT_INPUT, format!("{e}")))
}

fn load_diagram(path: &Path) -> Result<Diagram, Failure> {
    let text = read_to_string(path)?;
    codec::parse_diagram(&text).map_err(|e| (EXIT_INPUT, format!("{e:#}")))
}

/// Run one closure per file, possibly in parallel, print results in input
/// order, and fold the exit code as the maximum over files.
fn run_batch<F>(files: &[PathBuf], jobs: usize, format: Format, f: F) -> u8
where
    F: Fn(&Path, Format, bool) -> Result<String, Failure> + Sync,
{
    let single = files.len() == 1;
    let results: Vec<Result<String, Failure>> = if jobs > 1 {
        use rayon::prelude::*;
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(jobs)
            .build()
            .expect("thread pool");
        pool.install(|| files.par_iter().map(|p| f(p, format, single)).collect())
    } else {
        files.iter().map(|p| f(p, format, single)).collect()
    };
    let mut code = 0u8;
    for (path, res) in files.iter().zip(results) {
        match res {
            Ok(out) => println!("{out}"),
            Err((c, msg)) => {
                eprintln!("graphskein: {}: {msg}", path.display());
                code = code.max(c);
            }
        }
    }
    code
}

/// Label multi-file text output with the file name; single files stay bare.
fn labelled(path: &Path, single: bool, value: &str) -> String {
    if single {
        value.to_string()
    } else {
        format!("{}: {value}", path.display())
    }
}

fn json_line<T: Serialize>(value: &T) -> String {
    serde_json::to_string(value).expect("serializable")
}

/// Render a Laurent polynomial in x (descending exponents, unit
/// coefficients dropped): `x^2 + x + 4 + x^-1 + x^-2`.
fn format_x_poly(l: &Laurent) -> String {
    if l.is_zero() {
        return "0".to_string();
    }
    let mut out = String::new();
    for (i, (e, c)) in l.iter().rev().enumerate() {
        let neg = c.is_negative();
        if i == 0 {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        let mag = c.abs();
        let one = mag == 1.into();
        match (*e, one) {
            (0, _) => out.push_str(&mag.to_string()),
            (1, true) => out.push('x'),
            (1, false) => out.push_str(&format!("{mag}*x")),
            (_, true) => out.push_str(&format!("x^{e}")),
            (_, false) => out.push_str(&format!("{mag}*x^{e}")),
        }
    }
    out
}

fn run(cli: &Cli) -> u8 {
    let format = cli.format;
    match &cli.command {
        Cmd::EvalYamada { files } => run_batch(files, cli.jobs, format, |path, fmt, single| {
            let d = load_diagram(path)?;
            let y = yamada::yamada(&d).map_err(fail_core)?;
            Ok(match fmt {
                Format::Text => labelled(path, single, &y.to_string()),
                Format::Json => json_line(&serde_json::json!({
                    "file": path.display().to_string(),
                    "yamada": y.to_string(),
                })),
            })
        }),
        Cmd::EvalBracket { files } => run_batch(files, cli.jobs, format, |path, fmt, single| {
            let d = load_diagram(path)?;
            let text = match d.ambient {
                Ambient::Sphere => kauffman::bracket(&d).map_err(fail_core)?.to_string(),
                Ambient::Annulus => {
                    kauffman::bracket_annular(&d).map_err(fail_core)?.to_string()
                }
            };
            Ok(match fmt {
                Format::Text => labelled(path, single, &text),
                Format::Json => json_line(&serde_json::json!({
                    "file": path.display().to_string(),
                    "bracket": text,
                })),
            })
        }),
        Cmd::ToR { files } => run_batch(files, cli.jobs, format, |path, fmt, single| {
            let d = load_diagram(path)?;
            let r = yamada::to_original_r(&d).map_err(fail_core)?;
            let text = format_x_poly(&r);
            Ok(match fmt {
                Format::Text => labelled(path, single, &text),
                Format::Json => json_line(&serde_json::json!({
                    "file": path.display().to_string(),
                    "R": text,
                })),
            })
        }),
        Cmd::AnnulusReduce { files } => {
            run_batch(files, cli.jobs, format, |path, fmt, single| {
                let d = load_diagram(path)?;
                let v = yamada::reduce_annular(&d).map_err(fail_core)?;
                Ok(match fmt {
                    Format::Text => labelled(path, single, &v.to_string()),
                    Format::Json => json_line(&serde_json::json!({
                        "file": path.display().to_string(),
                        "reduced": v.to_string(),
                    })),
                })
            })
        }
        Cmd::Lemma33Check { n, theta_edges } => run_lemma33(*n, *theta_edges, format),
        Cmd::CableCheck { files } => {
            let code = run_batch(files, cli.jobs, format, |path, fmt, single| {
                let d = load_diagram(path)?;
                let ok = cabling::phi_check(&d).map_err(fail_core)?;
                if !ok {
                    return Err((
                        EXIT_INTERNAL,
                        "cable check DISAGREES: invariant vs 2-cable bracket".to_string(),
                    ));
                }
                Ok(match fmt {
                    Format::Text => labelled(path, single, "agree"),
                    Format::Json => json_line(&serde_json::json!({
                        "file": path.display().to_string(),
                        "agree": true,
                    })),
                })
            });
            code
        }
        Cmd::BuildPeriodic { tangle, p, quotient } => run_build_periodic(tangle, *p, *quotient),
        Cmd::TestPeriod { file, p, quotient, pth_power } => {
            run_test_period(file, *p, quotient.as_deref(), *pth_power, format)
        }
        Cmd::Screen { file, p } => run_screen(file, *p, format),
    }
}

fn run_lemma33(n: u32, theta_edges: Option<ThetaEdges>, format: Format) -> u8 {
    let readings: Vec<ThetaReading> = match theta_edges {
        Some(t) => vec![t.reading()],
        None => vec![ThetaReading::EdgesN, ThetaReading::EdgesNPlusOne],
    };
    for reading in readings {
        let report = match lemma33_check(n, reading) {
            Ok(r) => r,
            Err(e) => {
                eprintln!("graphskein: {e}");
                return exit_code_of(&e);
            }
        };
        match format {
            Format::Text => print!("{}", report.to_text()),
            Format::Json => {
                let reading_name = match report.reading {
                    ThetaReading::EdgesN => "n",
                    ThetaReading::EdgesNPlusOne => "n+1",
                };
                let lines: Vec<serde_json::Value> = report
                    .lines
                    .iter()
                    .map(|l| {
                        serde_json::json!({
                            "relation": l.relation,
                            "n": l.n,
                            "pass": l.passed(),
                            "residual": l.residual.to_string(),
                        })
                    })
                    .collect();
                let strs = |v: &[skein_core::annulus::AnnularElement]| -> Vec<String> {
                    v.iter().map(|x| x.to_string()).collect()
                };
                println!(
                    "{}",
                    serde_json::json!({
                        "nmax": report.nmax,
                        "reading": reading_name,
                        "b": strs(&report.b),
                        "theta": strs(&report.theta),
                        "s": strs(&report.s),
                        "lines": lines,
                    })
                );
            }
        }
    }
    0
}

fn run_build_periodic(tangle: &Path, p: u32, quotient: bool) -> u8 {
    let text = match fs::read_to_string(tangle) {
        Ok(t) => t,
        Err(e) => {
            eprintln!("graphskein: {}: {e}", tangle.display());
            return EXIT_INPUT;
        }
    };
    let t = match codec::parse_tangle(&text) {
        Ok(t) => t,
        Err(e) => {
            eprintln!("graphskein: {}: {e:#}", tangle.display());
            return EXIT_INPUT;
        }
    };
    let closed = if quotient { close_quotient(&t) } else { close_periodic(&t, p) };
    match closed {
        Ok(d) => {
            println!("{}", json_line(&codec::encode_diagram(&d)));
            0
        }
        Err(e) => {
            eprintln!("graphskein: {e}");
            exit_code_of(&e)
        }
    }
}

/// JSON report document; field names are part of the interface.
#[derive(Serialize)]
struct ReportDoc {
    p: u32,
    cond2: String,
    cond1: String,
    #[serde(rename = "pth-power")]
    pth_power: String,
    screen: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    residue: Option<String>,
    verdict: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    reasons: Option<Vec<String>>,
}

fn report_doc(r: &PeriodReport) -> ReportDoc {
    let (verdict, reasons) = match &r.verdict {
        Verdict::NotPeriodic(why) => (
            "not-periodic".to_string(),
            Some(why.iter().map(|s| s.to_string()).collect()),
        ),
        Verdict::NoObstruction => ("no-obstruction".to_string(), None),
    };
    ReportDoc {
        p: r.p,
        cond2: r.cond2.to_string(),
        cond1: r.cond1.to_string(),
        pth_power: r.pth_power.to_string(),
        screen: r.screen.to_string(),
        residue: r.residue.as_ref().map(|x| x.to_string()),
        verdict,
        reasons,
    }
}

fn print_report_text(r: &PeriodReport) {
    println!("p = {}", r.p);
    println!("cond2: {}", r.cond2);
    println!("cond1: {}", r.cond1);
    println!("pth-power: {}", r.pth_power);
    println!("screen: {}", r.screen);
    if let Some(res) = &r.residue {
        println!("residue: {res}");
    }
    match &r.verdict {
        Verdict::NotPeriodic(why) => println!("verdict: not-periodic ({})", why.join(", ")),
        Verdict::NoObstruction => println!("verdict: no-obstruction"),
    }
}

fn run_test_period(
    file: &Path,
    p: u32,
    quotient: Option<&Path>,
    pth_power: bool,
    format: Format,
) -> u8 {
    let d = match load_diagram(file) {
        Ok(d) => d,
        Err((c, msg)) => {
            eprintln!("graphskein: {}: {msg}", file.display());
            return c;
        }
    };
    let q = match quotient {
        Some(qp) => match load_diagram(qp) {
            Ok(q) => Some(q),
            Err((c, msg)) => {
                eprintln!("graphskein: {}: {msg}", qp.display());
                return c;
            }
        },
        None => None,
    };
    let report = match full_report_opts(&d, p, q.as_ref(), pth_power) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("graphskein: {e}");
            return exit_code_of(&e);
        }
    };
    match format {
        Format::Text => print_report_text(&report),
        Format::Json => println!("{}", json_line(&report_doc(&report))),
    }
    match report.verdict {
        Verdict::NotPeriodic(_) => EXIT_OBSTRUCTION,
        Verdict::NoObstruction => 0,
    }
}

/// Complete-search budget for the standalone screen, matching the report.
const SCREEN_NV_BUDGET: usize = 40;

fn run_screen(file: &Path, p: u32, format: Format) -> u8 {
    let d = match load_diagram(file) {
        Ok(d) => d,
        Err((c, msg)) => {
            eprintln!("graphskein: {}: {msg}", file.display());
            return c;
        }
    };
    let g = match strand_multigraph(&d.forget_annulus()) {
        Ok(g) => g,
        Err(e) => {
            eprintln!("graphskein: {e}");
            return exit_code_of(&e);
        }
    };
    let outcome = if g.nv > SCREEN_NV_BUDGET {
        TestOutcome::Inconclusive
    } else if abstract_screen(&g, p) {
        TestOutcome::Pass
    } else {
        TestOutcome::Fail
    };
    match format {
        Format::Text => println!("screen: {outcome}"),
        Format::Json => println!(
            "{}",
            serde_json::json!({
                "file": file.display().to_string(),
                "p": p,
                "screen": outcome.to_string(),
            })
        ),
    }
    if outcome == TestOutcome::Fail {
        EXIT_OBSTRUCTION
    } else {
        0
    }
}
