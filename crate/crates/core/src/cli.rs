//! `nfc` command line.
//!
//! Exit codes: 0 when the property holds or the command succeeded, 1 when
//! the property fails, 2 on usage or input errors.

use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};

use crate::criticality::{
    check, tutte_witness_with_limit, CriticalityVerdict, Property, Route, VerdictReport, Witness,
    TUTTE_DEFAULT_LIMIT,
};
use crate::generate::{generate, random_graph, GraphKind};
use crate::graph::{read_graph, Graph};
use crate::harness::{append_csv, to_csv, verify_theorems, Mode, VerifyOptions};
use crate::matching::max_matching;
use crate::oracle::{
    count_matchings, has_near_factor_brute, has_perfect_brute, max_matching_size_brute,
};

pub const EXIT_HOLDS: i32 = 0;
pub const EXIT_FAILS: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Parser, Debug)]
#[command(
    name = "nfc",
    version,
    about = "Matching, factor-critical and near-factor-critical graph tools"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Decide a property of the graph in FILE ('-' for stdin).
    Check {
        property: PropertyArg,
        file: PathBuf,
        #[arg(long, value_enum)]
        route: Option<RouteArg>,
        /// Print the full certificate.
        #[arg(long)]
        witness: bool,
        /// Print the verdict as JSON.
        #[arg(long)]
        json: bool,
    },
    /// Print a maximum matching.
    Match { file: PathBuf },
    /// Search for a set S with more than |S| odd components in G \ S.
    Tutte {
        file: PathBuf,
        #[arg(long, default_value_t = TUTTE_DEFAULT_LIMIT)]
        max_n: usize,
    },
    /// Generate a graph: path, cycle, complete, star, empty or random.
    Gen {
        kind: String,
        n: usize,
        #[arg(long, default_value_t = 0.5)]
        p: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Cross-check the recognizers on every graph up to the given order.
    Verify {
        #[arg(long)]
        max_n: usize,
        #[arg(long, value_enum, default_value_t = ModeArg::Exhaustive)]
        mode: ModeArg,
        #[arg(long, default_value_t = 100)]
        count: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 1)]
        jobs: usize,
        /// Allow exhaustive enumeration at order 8.
        #[arg(long)]
        allow_large: bool,
        /// Append the CSV rows to this file as well.
        #[arg(long)]
        csv_out: Option<PathBuf>,
    },
    /// Brute-force matching statistics.
    Oracle { file: PathBuf },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum PropertyArg {
    Nfc,
    FactorCritical,
    Perfect,
    NearFactor,
}

impl From<PropertyArg> for Property {
    fn from(p: PropertyArg) -> Self {
        match p {
            PropertyArg::Nfc => Property::Nfc,
            PropertyArg::FactorCritical => Property::FactorCritical,
            PropertyArg::Perfect => Property::PerfectMatching,
            PropertyArg::NearFactor => Property::NearFactor,
        }
    }
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum RouteArg {
    Definition,
    Theorem,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum ModeArg {
    Exhaustive,
    Random,
}

/// Runs the CLI on `args` (including the program name).
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => EXIT_HOLDS,
                _ => EXIT_USAGE,
            };
            let text = e.render().to_string();
            let sink: &mut dyn Write = if code == EXIT_HOLDS { out } else { err };
            let _ = sink.write_all(text.as_bytes());
            return code;
        }
    };
    match dispatch(cli.command, out, err) {
        Ok(code) => code,
        Err(msg) => {
            let _ = writeln!(err, "error: {msg}");
            EXIT_USAGE
        }
    }
}

fn load(path: &Path) -> Result<Graph, String> {
    let parsed = if path == Path::new("-") {
        let mut buf = Vec::new();
        io::stdin()
            .read_to_end(&mut buf)
            .map_err(|e| format!("stdin: {e}"))?;
        read_graph(&buf[..])
    } else {
        let f = std::fs::File::open(path).map_err(|e| format!("{}: {e}", path.display()))?;
        read_graph(f)
    };
    parsed.map_err(|e| format!("{}: {e}", path.display()))
}

fn set_text(set: &[usize]) -> String {
    let items: Vec<String> = set.iter().map(|v| v.to_string()).collect();
    format!("{{{}}}", items.join(","))
}

fn describe(w: &Witness) -> String {
    match w {
        Witness::FailingVertex { vertex } => format!("failing vertex {vertex}"),
        Witness::TutteSet(t) => format!(
            "Tutte set S={} with {} odd components",
            set_text(&t.set),
            t.odd_count
        ),
        Witness::ParityFailure { n } => format!("parity failure at order {n}"),
        Witness::Structural { case } => format!("case {}", case.name()),
        Witness::PerfectMatching { matching } => {
            format!("perfect matching of size {}", matching.len())
        }
        Witness::NearFactor(nf) => format!("near-factor leaving {} unsaturated", nf.unsaturated),
        Witness::Deletions { .. } => "every vertex deletion has a 1-factor".to_string(),
    }
}

fn certificate(w: &Witness, out: &mut dyn Write) -> io::Result<()> {
    match w {
        Witness::FailingVertex { vertex } => writeln!(out, "vertex: {vertex}"),
        Witness::TutteSet(t) => {
            writeln!(out, "S={}", set_text(&t.set))?;
            writeln!(out, "odd_count: {}", t.odd_count)
        }
        Witness::ParityFailure { n } => writeln!(out, "order: {n}"),
        Witness::Structural { case } => writeln!(out, "case: {}", case.name()),
        Witness::PerfectMatching { matching } => write!(out, "{matching}"),
        Witness::NearFactor(nf) => write!(out, "{nf}"),
        Witness::Deletions { matchings } => {
            for (v, m) in matchings.iter().enumerate() {
                writeln!(out, "G - {v}:")?;
                write!(out, "{m}")?;
            }
            Ok(())
        }
    }
}

fn verdict_code(v: &CriticalityVerdict) -> i32 {
    if v.holds {
        EXIT_HOLDS
    } else {
        EXIT_FAILS
    }
}

fn dispatch(command: Command, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32, String> {
    let io = |e: io::Error| e.to_string();
    match command {
        Command::Check {
            property,
            file,
            route,
            witness,
            json,
        } => {
            let property = Property::from(property);
            let route = match (route, property) {
                (Some(RouteArg::Definition), _) => Route::Definition,
                (Some(RouteArg::Theorem), _) => Route::Theorem,
                (None, Property::Nfc) => Route::Theorem,
                (None, _) => Route::Definition,
            };
            let g = load(&file)?;
            let verdict = check(&g, property, route).map_err(|e| e.to_string())?;
            let code = verdict_code(&verdict);
            if json {
                let report = VerdictReport::new(&g, property, route, verdict);
                writeln!(out, "{}", report.to_json()).map_err(io)?;
            } else {
                writeln!(
                    out,
                    "{}: {} (route {}; {})",
                    property.name(),
                    if verdict.holds { "holds" } else { "fails" },
                    route.name(),
                    describe(&verdict.witness)
                )
                .map_err(io)?;
                if witness {
                    certificate(&verdict.witness, out).map_err(io)?;
                }
            }
            Ok(code)
        }
        Command::Match { file } => {
            let g = load(&file)?;
            write!(out, "{}", max_matching(&g)).map_err(io)?;
            Ok(EXIT_HOLDS)
        }
        Command::Tutte { file, max_n } => {
            let g = load(&file)?;
            match tutte_witness_with_limit(&g, max_n).map_err(|e| e.to_string())? {
                Some(w) => {
                    writeln!(out, "S={} odd_count={}", set_text(&w.set), w.odd_count)
                        .map_err(io)?;
                    Ok(EXIT_FAILS)
                }
                None => {
                    writeln!(out, "Tutte condition holds").map_err(io)?;
                    Ok(EXIT_HOLDS)
                }
            }
        }
        Command::Gen { kind, n, p, seed } => {
            let g = if kind == "random" {
                if !(0.0..=1.0).contains(&p) {
                    return Err(format!("edge probability {p} outside [0, 1]"));
                }
                random_graph(n, p, seed)
            } else {
                generate(kind.parse::<GraphKind>()?, n)
            };
            write!(out, "{g}").map_err(io)?;
            Ok(EXIT_HOLDS)
        }
        Command::Verify {
            max_n,
            mode,
            count,
            seed,
            jobs,
            allow_large,
            csv_out,
        } => {
            let mode = match mode {
                ModeArg::Exhaustive => Mode::Exhaustive,
                ModeArg::Random => Mode::Random { count, seed },
            };
            let options = VerifyOptions {
                mode,
                allow_large,
                jobs,
            };
            let reports = verify_theorems(max_n, options).map_err(|e| e.to_string())?;
            write!(out, "{}", to_csv(&reports)).map_err(io)?;
            if let Some(path) = csv_out {
                append_csv(&path, &reports).map_err(|e| format!("{}: {e}", path.display()))?;
            }
            let mut bad = 0;
            for m in reports.iter().flat_map(|r| &r.mismatches) {
                bad += 1;
                let graph = m.graph.replace('\n', " ");
                writeln!(
                    err,
                    "mismatch {:?}: {} [{}]",
                    m.kind,
                    m.detail,
                    graph.trim_end()
                )
                .map_err(io)?;
            }
            Ok(if bad == 0 { EXIT_HOLDS } else { EXIT_FAILS })
        }
        Command::Oracle { file } => {
            let g = load(&file)?;
            let e = |e: crate::oracle::OracleGuard| e.to_string();
            writeln!(out, "matchings: {}", count_matchings(&g).map_err(e)?).map_err(io)?;
            writeln!(
                out,
                "max_matching_size: {}",
                max_matching_size_brute(&g).map_err(e)?
            )
            .map_err(io)?;
            writeln!(out, "perfect: {}", has_perfect_brute(&g).map_err(e)?).map_err(io)?;
            writeln!(
                out,
                "near_factor: {}",
                has_near_factor_brute(&g).map_err(e)?
            )
            .map_err(io)?;
            Ok(EXIT_HOLDS)
        }
    }
}
