//! Command-line front end for the `windmill` library.
//!
//! [`run`] executes a parsed [`Cli`] against any writer and returns the
//! process exit code: 0 on success, 1 when a sweep finds an invariant
//! violation, 2 on a usage or precondition error.

pub mod report;
pub mod verify;

use std::fmt::Write as _;
use std::io::{self, Write};
use std::path::PathBuf;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Map, Value};

use windmill::decomp::{
    enumerate_fast, irreducible_count, irreducible_enumerate, two_squares_fixed_point,
    two_squares_grace, vierergruppe_orbits, IRREDUCIBLE_ENUM_LIMIT,
};
use windmill::lattice2d::{gauss_reduce, lambda_mu, minimal_vector, voronoi_cell};
use windmill::numtheory::MAX_MODULUS;
use windmill::render::{lattice_svg, tiling_svg};
use windmill::windmill::{all_windmill_bases, standard_black_basis};
use windmill::{Color, SlopeClass, Solution};

use report::{DecomposeResults, Report};
use verify::Mode;

pub const EXIT_OK: i32 = 0;
pub const EXIT_VIOLATION: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

/// Default `extent` of written SVG files.
const TILING_EXTENT: u32 = 4;
const LATTICE_EXTENT: u32 = 8;

#[derive(Debug, Parser)]
#[command(
    name = "windmill",
    version,
    about = "Decompositions p = ab + cd of odd primes"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Method {
    Grace,
    FixedPoint,
    Both,
}

impl Method {
    fn name(self) -> &'static str {
        match self {
            Method::Grace => "grace",
            Method::FixedPoint => "fixed-point",
            Method::Both => "both",
        }
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// List all solutions of p = ab + cd with min(a,b) > max(c,d).
    Decompose {
        #[arg(value_parser = parse_u62)]
        p: u64,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        /// Also print the Klein four-group orbits with their sizes.
        #[arg(long)]
        orbits: bool,
    },
    /// Write a prime p = 1 mod 4 as a sum of two squares.
    TwoSquares {
        #[arg(value_parser = parse_u62)]
        p: u64,
        #[arg(long, value_enum, default_value_t = Method::Grace)]
        method: Method,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Describe the index-p sublattice of slope mu (use "inf" for infinity).
    Lattice {
        #[arg(value_parser = parse_u62)]
        p: u64,
        mu: String,
        /// Write a picture of the lattice to this path.
        #[arg(long)]
        svg: Option<PathBuf>,
    },
    /// Sweep an invariant over all odd primes (or all n) up to a bound.
    Verify {
        #[arg(long, value_parser = parse_u62)]
        max_p: u64,
        #[arg(long, value_enum, default_value_t = Mode::Count)]
        mode: Mode,
        #[arg(long, env = "WINDMILL_JOBS", default_value_t = 1)]
        jobs: usize,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Count irreducible 2x2 matrices of determinant n.
    Irreducible {
        #[arg(value_parser = parse_u62)]
        n: u64,
        /// Also list the matrices.
        #[arg(long)]
        list: bool,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Draw the tiling of a solution as SVG.
    Tiling {
        #[arg(value_parser = parse_u62)]
        p: u64,
        #[arg(value_parser = parse_u62)]
        a: u64,
        #[arg(value_parser = parse_u62)]
        b: u64,
        #[arg(value_parser = parse_u62)]
        c: u64,
        #[arg(value_parser = parse_u62)]
        d: u64,
        /// Output path; standard output when absent.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

/// Unsigned decimal below 2^62.
pub fn parse_u62(s: &str) -> Result<u64, String> {
    if s.is_empty() || !s.bytes().all(|c| c.is_ascii_digit()) {
        return Err(format!("expected a decimal integer, got {s:?}"));
    }
    match s.parse::<u64>() {
        Ok(n) if n <= MAX_MODULUS => Ok(n),
        _ => Err(format!("{s} exceeds the bound 2^62 - 1")),
    }
}

/// A slope: a decimal residue or `inf`.
pub fn parse_slope(p: u64, mu: &str) -> Result<SlopeClass, String> {
    let s = match mu {
        "inf" | "infinity" | "∞" => SlopeClass::infinity(p),
        _ => SlopeClass::finite(p, parse_u62(mu)?),
    };
    s.map_err(|e| e.to_string())
}

enum Failure {
    Usage(String),
    Violation(String),
}

impl From<windmill::Error> for Failure {
    fn from(e: windmill::Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

type Outcome = Result<String, Failure>;

fn ms_since(t: Instant) -> f64 {
    t.elapsed().as_secs_f64() * 1e3
}

fn inputs(pairs: &[(&str, Value)]) -> Map<String, Value> {
    pairs
        .iter()
        .map(|(k, v)| ((*k).to_owned(), v.clone()))
        .collect()
}

/// Runs `cli`, writing its output to `out` and diagnostics to `err`.
pub fn run(cli: Cli, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let outcome = match cli.command {
        Command::Decompose { p, format, orbits } => decompose(p, format, orbits),
        Command::TwoSquares { p, method, format } => two_squares(p, method, format),
        Command::Lattice { p, mu, svg } => lattice(p, &mu, svg),
        Command::Verify {
            max_p,
            mode,
            jobs,
            format,
        } => verify(max_p, mode, jobs, format),
        Command::Irreducible { n, list, format } => irreducible(n, list, format),
        Command::Tiling { p, a, b, c, d, out } => tiling(p, [a, b, c, d], out),
    };
    // Output on a violation is the sweep summary, written before the exit.
    let (text, code) = match outcome {
        Ok(text) => (text, EXIT_OK),
        Err(Failure::Violation(text)) => (text, EXIT_VIOLATION),
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            return EXIT_USAGE;
        }
    };
    if out
        .write_all(text.as_bytes())
        .and_then(|_| out.flush())
        .is_err()
    {
        return EXIT_USAGE;
    }
    code
}

fn decompose(p: u64, format: Format, with_orbits: bool) -> Outcome {
    let t = Instant::now();
    let sols = enumerate_fast(p)?;
    let orbits = if with_orbits {
        Some(vierergruppe_orbits(&sols)?)
    } else {
        None
    };
    let elapsed = ms_since(t);
    if format == Format::Json {
        let results = DecomposeResults::new(p, &sols, orbits.as_deref());
        let report = Report::new(
            "decompose",
            inputs(&[("p", json!(p)), ("orbits", json!(with_orbits))]),
            serde_json::to_value(results).expect("serializable"),
            elapsed,
        );
        return Ok(report.to_json() + "\n");
    }
    let mut s = String::new();
    writeln!(s, "p = {p}: {} solutions (a, b, c, d)", sols.len()).unwrap();
    for sol in &sols {
        writeln!(s, "{sol}").unwrap();
    }
    if let Some(orbits) = orbits {
        writeln!(s).unwrap();
        writeln!(s, "orbit representative   size").unwrap();
        for o in &orbits {
            writeln!(s, "{:<22} {}", o.rep.to_string(), o.size).unwrap();
        }
        let total: u64 = orbits.iter().map(|o| o.size as u64).sum();
        writeln!(s, "total {total}").unwrap();
    }
    Ok(s)
}

fn two_squares(p: u64, method: Method, format: Format) -> Outcome {
    let t = Instant::now();
    let (pair, agree) = match method {
        Method::Grace => (two_squares_grace(p)?, None),
        Method::FixedPoint => (two_squares_fixed_point(p)?, None),
        Method::Both => {
            let g = two_squares_grace(p)?;
            let f = two_squares_fixed_point(p)?;
            if g != f {
                return Err(Failure::Violation(format!(
                    "methods disagree: grace {} {}, fixed point {} {}\n",
                    g.0, g.1, f.0, f.1
                )));
            }
            (g, Some(true))
        }
    };
    let elapsed = ms_since(t);
    let (a, b) = pair;
    if format == Format::Json {
        let mut results = json!({ "p": p, "method": method.name(), "a": a, "b": b });
        if let Some(agree) = agree {
            results["agree"] = json!(agree);
        }
        let report = Report::new(
            "two-squares",
            inputs(&[("p", json!(p)), ("method", json!(method.name()))]),
            results,
            elapsed,
        );
        return Ok(report.to_json() + "\n");
    }
    let mut s = format!("{a} {b}\n");
    if agree.is_some() {
        s.push_str("grace and fixed-point methods agree\n");
    }
    Ok(s)
}

fn lattice(p: u64, mu: &str, svg: Option<PathBuf>) -> Outcome {
    let slope = parse_slope(p, mu).map_err(Failure::Usage)?;
    let basis = lambda_mu(&slope);
    let reduced = gauss_reduce(&basis);
    let cell = voronoi_cell(&basis);
    let mut s = String::new();
    writeln!(s, "lattice {slope}").unwrap();
    writeln!(s, "basis: {}, {}", basis.u(), basis.v()).unwrap();
    writeln!(s, "reduced basis: {}, {}", reduced.u(), reduced.v()).unwrap();
    writeln!(s, "minimal vector: {}", minimal_vector(&basis)).unwrap();
    let vs: Vec<String> = cell.vectors.iter().map(|v| format!("±{v}")).collect();
    writeln!(s, "voronoi vectors: {}", vs.join(", ")).unwrap();
    let vertices: Vec<String> = cell
        .cell_vertices
        .iter()
        .map(|(x, y)| format!("({x},{y})"))
        .collect();
    writeln!(s, "voronoi cell: {}", vertices.join(" ")).unwrap();
    match all_windmill_bases(&basis) {
        None => writeln!(s, "no windmill basis").unwrap(),
        Some(set) => {
            writeln!(s, "color: {}", set.color).unwrap();
            let bases: Vec<String> = set
                .bases()
                .iter()
                .map(|b| format!("{{{}, {}}}", b.u(), b.v()))
                .collect();
            writeln!(s, "windmill bases: {}", bases.join(" ")).unwrap();
            match set.color {
                Color::Black => {
                    if let Some(sol) = standard_black_basis(&slope)? {
                        writeln!(s, "standard solution: {sol}").unwrap();
                    }
                }
                Color::White => {
                    let mirror = slope.reflect_vertical();
                    writeln!(s, "standard black basis lives on the mirror slope {mirror}").unwrap();
                }
            }
        }
    }
    if let Some(path) = svg {
        let doc = lattice_svg(&slope, LATTICE_EXTENT)?;
        std::fs::write(&path, doc.to_string())?;
        writeln!(s, "wrote {}", path.display()).unwrap();
    }
    Ok(s)
}

fn verify(max: u64, mode: Mode, jobs: usize, format: Format) -> Outcome {
    if max > mode.guard() {
        return Err(Failure::Usage(format!(
            "--max-p {max} exceeds the bound {} for mode {}",
            mode.guard(),
            mode.name()
        )));
    }
    let t = Instant::now();
    let summary = verify::run(mode, max, jobs.max(1));
    let elapsed = ms_since(t);
    let text = if format == Format::Json {
        let results = json!({
            "mode": mode.name(),
            "max": max,
            "cases": summary.cases,
            "failures": summary.failures,
        });
        let report = Report::new(
            "verify",
            inputs(&[
                ("max_p", json!(max)),
                ("mode", json!(mode.name())),
                ("jobs", json!(jobs)),
            ]),
            results,
            elapsed,
        );
        report.to_json() + "\n"
    } else {
        let mut s = String::new();
        for f in &summary.failures {
            writeln!(s, "FAIL {f}").unwrap();
        }
        let verdict = if summary.failures.is_empty() {
            "all pass"
        } else {
            "FAILED"
        };
        writeln!(
            s,
            "mode {}: {} cases up to {max}, {} failures, {verdict} ({elapsed:.1} ms)",
            mode.name(),
            summary.cases,
            summary.failures.len()
        )
        .unwrap();
        s
    };
    if summary.failures.is_empty() {
        Ok(text)
    } else {
        Err(Failure::Violation(text))
    }
}

fn irreducible(n: u64, list: bool, format: Format) -> Outcome {
    let t = Instant::now();
    let count = irreducible_count(n)?;
    let matrices = if list {
        if n > IRREDUCIBLE_ENUM_LIMIT {
            return Err(Failure::Usage(format!(
                "--list supports n <= {IRREDUCIBLE_ENUM_LIMIT}"
            )));
        }
        Some(irreducible_enumerate(n)?)
    } else {
        None
    };
    let elapsed = ms_since(t);
    if format == Format::Json {
        let mut results = json!({ "n": n, "count": count });
        if let Some(ms) = &matrices {
            results["matrices"] = ms.iter().map(|m| json!([m.a, m.b, m.c, m.d])).collect();
        }
        let report = Report::new(
            "irreducible",
            inputs(&[("n", json!(n)), ("list", json!(list))]),
            results,
            elapsed,
        );
        return Ok(report.to_json() + "\n");
    }
    let mut s = format!("{count}\n");
    for m in matrices.iter().flatten() {
        writeln!(s, "[[{}, {}], [{}, {}]]", m.a, m.b, m.c, m.d).unwrap();
    }
    Ok(s)
}

fn tiling(p: u64, [a, b, c, d]: [u64; 4], out: Option<PathBuf>) -> Outcome {
    let sol = Solution::new(p, a, b, c, d)?;
    let doc = tiling_svg(&sol, TILING_EXTENT)?.to_string();
    match out {
        Some(path) => {
            std::fs::write(&path, doc)?;
            Ok(format!("wrote {}\n", path.display()))
        }
        None => Ok(doc),
    }
}
