//! Command-line front end. Results go to stdout (or `--out`) as JSON, summaries to stderr.
//! Exit codes: 0 success, 1 verification failure, 2 usage or input error.

use std::ffi::OsString;
use std::fs::File;
use std::io::{self, BufWriter, Read, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use serde::de::DeserializeOwned;
use serde_json::{json, Value};

use crate::algebra::transcendental::PRECISION_ENV;
use crate::algebra::{fmt_rational, identity, parse_rational, parse_real, AlgebraicReal, RatMatrix, Rational};
use crate::audit::{self, check, AuditStep, Verdict};
use crate::error::Error;
use crate::fiedler::{nonneg_rowspace_certificate, realizability_check, reconstruct_simplex, CosMatrix};
use crate::hill::{grow_space_tiling, hill_simplex, hill_vertices, subdivide, verify_reptile, HillSpec, Subdivision};
use crate::simplex::{Coordinates, ObjWriter, Simplex};
use crate::trig::{catalog, match_rational_angle, AngleRecord};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Parser, Debug)]
#[command(name = "reptile-forge", version, about = "Exact tools for reptile simplices and dihedral-angle realizability")]
pub struct Cli {
    /// Starting interval width for certified comparisons, a positive rational such as 1/1000000
    #[arg(long, global = true, env = PRECISION_ENV)]
    precision: Option<String>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Dihedral cosine matrices
    #[command(subcommand)]
    Fiedler(FiedlerCmd),
    /// Hill simplices and their subdivisions
    #[command(subcommand)]
    Hill(HillCmd),
    /// Cosines of rational angles
    #[command(subcommand)]
    Angles(AnglesCmd),
    /// Certified case analysis for k-reptile tetrahedra
    #[command(subcommand)]
    Audit(AuditCmd),
    /// Write a simplex or subdivision as Wavefront OBJ
    Export {
        /// Simplex or subdivision JSON, "-" for stdin
        input: String,
        /// OBJ path, "-" for stdout
        #[arg(long, default_value = "-")]
        out: String,
    },
}

#[derive(Subcommand, Debug)]
enum FiedlerCmd {
    /// Decide whether a cosine matrix is the dihedral matrix of a simplex
    Check {
        /// Matrix JSON {"dim": d, "cos": [[...]]}, "-" for stdin
        input: String,
        #[arg(long, default_value = "-")]
        out: String,
    },
    /// Build a simplex with the given dihedral angles
    Reconstruct {
        input: String,
        #[arg(long, default_value = "-")]
        out: String,
    },
}

#[derive(Args, Debug, Clone)]
struct SpecArgs {
    /// Dimension, 2 to 4
    #[arg(long, default_value_t = 3)]
    dim: usize,
    /// Common cosine of the basis vectors: rational for exact mode, decimal for float mode
    #[arg(long, conflicts_with = "basis")]
    cos: Option<String>,
    /// Basis vectors as a JSON matrix of rationals, one vector per row
    #[arg(long)]
    basis: Option<String>,
    /// Hill simplex JSON to take the basis from
    #[arg(long, conflicts_with_all = ["cos", "basis"])]
    input: Option<String>,
}

#[derive(Subcommand, Debug)]
enum HillCmd {
    /// Emit the Hill simplex
    Generate {
        #[command(flatten)]
        spec: SpecArgs,
        #[arg(long, default_value = "-")]
        out: String,
    },
    /// Split the Hill simplex into m^d similar pieces
    Subdivide {
        #[command(flatten)]
        spec: SpecArgs,
        #[arg(long, default_value_t = 2)]
        m: u32,
        #[arg(long, default_value = "-")]
        out: String,
        /// Also write the pieces as OBJ (d = 3 only)
        #[arg(long)]
        obj: Option<String>,
    },
    /// Check a subdivision: volume, similarity, congruence, disjointness, containment
    Verify {
        /// Subdivision JSON, "-" for stdin
        input: String,
        #[arg(long, default_value = "-")]
        out: String,
    },
    /// Stream a space tiling by copies of the Hill simplex
    Grow {
        #[command(flatten)]
        spec: SpecArgs,
        #[arg(long, default_value_t = 2)]
        m: u32,
        #[arg(long, default_value_t = 1)]
        generations: u32,
        /// Maximum number of cells to emit
        #[arg(long, default_value_t = 1_000_000)]
        budget: u64,
        /// Random pairs checked for interior-disjointness
        #[arg(long, default_value_t = 100)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// OBJ output for the cells (d = 3 only)
        #[arg(long)]
        obj: Option<String>,
        #[arg(long, default_value = "-")]
        out: String,
    },
}

#[derive(Subcommand, Debug)]
enum AnglesCmd {
    /// Find the rational angle with a given cosine
    Classify {
        /// "1/2", "sqrt(2)/2", "(1+sqrt(5))/4" or a minimal-polynomial JSON object
        cos: String,
        #[arg(long, default_value = "-")]
        out: String,
    },
    /// All rational-angle cosines of one algebraic degree
    Catalog {
        degree: usize,
        #[arg(long, default_value = "-")]
        out: String,
    },
}

#[derive(Subcommand, Debug)]
enum AuditCmd {
    /// Run every step for each k up to kmax
    Run {
        #[arg(long, default_value_t = 7)]
        kmax: u64,
        /// Report path, "-" for stdout
        #[arg(long, visible_alias = "out", default_value = "-")]
        json: String,
    },
    /// Run a single step
    Step {
        /// Step id, one of rho-degree, two-lengths, tripod-determinant, multiples,
        /// path-complement, beta-constraints, path-determinant, bound-chain,
        /// exclude-pi-over-5, final-cases
        id: String,
        #[arg(long, default_value_t = 2)]
        k: u64,
        #[arg(long, default_value = "-")]
        out: String,
    },
    /// Re-verify a saved report or step with the independent checker
    Check {
        input: String,
    },
}

/// Failure of a command, mapped to an exit code.
#[derive(Debug)]
enum Failure {
    Usage(String),
    Verification(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

type Outcome = std::result::Result<(), Failure>;

/// Parses `args` (program name first) and runs the command.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let _ = e.print();
            return code;
        }
    };
    if let Some(p) = &cli.precision {
        std::env::set_var(PRECISION_ENV, p);
    }
    match dispatch(cli.command) {
        Ok(()) => EXIT_OK,
        Err(Failure::Verification(msg)) => {
            eprintln!("verification failed: {msg}");
            EXIT_FAILED
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            EXIT_USAGE
        }
    }
}

fn dispatch(cmd: Command) -> Outcome {
    match cmd {
        Command::Fiedler(c) => fiedler(c),
        Command::Hill(c) => hill(c),
        Command::Angles(c) => angles(c),
        Command::Audit(c) => audit_cmd(c),
        Command::Export { input, out } => export(&input, &out),
    }
}

fn read_input(path: &str) -> std::result::Result<String, Failure> {
    let mut text = String::new();
    if path == "-" {
        io::stdin().read_to_string(&mut text)?;
    } else {
        File::open(path).map_err(|e| Failure::Usage(format!("{path}: {e}")))?.read_to_string(&mut text)?;
    }
    Ok(text)
}

fn parse_json<T: DeserializeOwned>(text: &str, what: &str) -> std::result::Result<T, Failure> {
    serde_json::from_str(text).map_err(|e| Failure::Usage(format!("malformed {what} JSON: {e}")))
}

fn open_output(path: &str) -> std::result::Result<Box<dyn Write>, Failure> {
    Ok(if path == "-" {
        Box::new(BufWriter::new(io::stdout()))
    } else {
        Box::new(BufWriter::new(File::create(PathBuf::from(path)).map_err(|e| Failure::Usage(format!("{path}: {e}")))?))
    })
}

fn write_json(path: &str, v: &Value) -> Outcome {
    let mut w = open_output(path)?;
    serde_json::to_writer_pretty(&mut w, v).map_err(|e| Failure::Usage(e.to_string()))?;
    writeln!(w)?;
    w.flush()?;
    Ok(())
}

fn to_value<T: serde::Serialize>(x: &T) -> std::result::Result<Value, Failure> {
    serde_json::to_value(x).map_err(|e| Failure::Usage(e.to_string()))
}

fn fiedler(cmd: FiedlerCmd) -> Outcome {
    match cmd {
        FiedlerCmd::Check { input, out } => {
            let m: CosMatrix = parse_json(&read_input(&input)?, "matrix")?;
            let verdict = realizability_check(&m)?;
            let mut doc = verdict.to_json();
            if !verdict.valid {
                if let Some(c) = nonneg_rowspace_certificate(&m)? {
                    doc["rowspace_certificate"] = c.to_json();
                }
            }
            write_json(&out, &doc)?;
            if verdict.valid {
                eprintln!("realizable {}-simplex", m.dim());
                Ok(())
            } else {
                let why = verdict.witness.as_ref().map(ToString::to_string).unwrap_or_default();
                Err(Failure::Verification(format!("not realizable: {why}")))
            }
        }
        FiedlerCmd::Reconstruct { input, out } => {
            let m: CosMatrix = parse_json(&read_input(&input)?, "matrix")?;
            match reconstruct_simplex(&m) {
                Ok(s) => {
                    write_json(&out, &to_value(&s)?)?;
                    eprintln!("reconstructed {}-simplex", s.dim());
                    Ok(())
                }
                Err(Error::NotRealizable(w)) => Err(Failure::Verification(format!("not realizable: {w}"))),
                Err(e) => Err(e.into()),
            }
        }
    }
}

fn rational_matrix(v: &Value) -> std::result::Result<RatMatrix, Failure> {
    let rows = v.as_array().ok_or_else(|| Failure::Usage("basis must be a JSON matrix".into()))?;
    rows.iter()
        .map(|r| {
            r.as_array()
                .ok_or_else(|| Failure::Usage("basis rows must be arrays".into()))?
                .iter()
                .map(|x| match x {
                    Value::String(s) => Ok(parse_rational(s)?),
                    Value::Number(n) => Ok(parse_rational(&n.to_string())?),
                    other => Err(Failure::Usage(format!("basis entry {other} is not a rational"))),
                })
                .collect()
        })
        .collect()
}

/// Recovers the spec from an exact Hill simplex: Cartesian prefix sums of a basis, or
/// lattice vertices with a Gram matrix of unit diagonal and constant off-diagonal.
pub fn spec_from_simplex(s: &Simplex) -> crate::Result<HillSpec> {
    let Coordinates::Exact { vertices, gram } = s.coords() else {
        return Err(Error::InvalidHill("only exact Hill simplices can be read back".into()));
    };
    let d = s.dim();
    if *gram == identity(d) && *vertices != hill_vertices(d) {
        let basis: RatMatrix =
            (0..d).map(|i| vertices[i + 1].iter().zip(&vertices[i]).map(|(a, b)| a - b).collect()).collect();
        let spec = HillSpec::from_basis(basis)?;
        if hill_simplex(&spec)? != *s {
            return Err(Error::InvalidHill("vertices are not prefix sums of a Hill basis from the origin".into()));
        }
        return Ok(spec);
    }
    if *vertices != hill_vertices(d) {
        return Err(Error::InvalidHill("vertices are not 0, b1, b1 + b2, ... in basis coordinates".into()));
    }
    let c = if d > 1 { &gram[0][1] / &gram[0][0] } else { Rational::from_integer(0.into()) };
    let spec = HillSpec::with_cos(d, c)?;
    if spec.gram().as_ref() != Some(gram) {
        return Err(Error::InvalidHill("Gram matrix does not have equal lengths and angles".into()));
    }
    Ok(spec)
}

fn build_spec(a: &SpecArgs) -> std::result::Result<HillSpec, Failure> {
    if let Some(path) = &a.input {
        let s: Simplex = parse_json(&read_input(path)?, "simplex")?;
        return Ok(spec_from_simplex(&s)?);
    }
    if let Some(b) = &a.basis {
        let v: Value = parse_json(b, "basis")?;
        return Ok(HillSpec::from_basis(rational_matrix(&v)?)?);
    }
    Ok(match &a.cos {
        None => HillSpec::orthonormal(a.dim)?,
        Some(c) => match parse_rational(c) {
            Ok(r) if !c.contains(['e', 'E']) && (c.contains('/') || !c.contains('.')) => HillSpec::with_cos(a.dim, r)?,
            _ => {
                let x: f64 = c.parse().map_err(|_| Failure::Usage(format!("cannot read cosine {c}")))?;
                HillSpec::with_cos_f64(a.dim, x)?
            }
        },
    })
}

fn obj_writer(path: &str) -> std::result::Result<ObjWriter<Box<dyn Write>>, Failure> {
    Ok(ObjWriter::new(open_output(path)?)?)
}

fn hill(cmd: HillCmd) -> Outcome {
    match cmd {
        HillCmd::Generate { spec, out } => {
            let spec = build_spec(&spec)?;
            let s = hill_simplex(&spec)?;
            write_json(&out, &to_value(&s)?)?;
            eprintln!("Hill simplex, d = {}, pair cosine {}", spec.dim(), spec.pair_cos().approx());
            Ok(())
        }
        HillCmd::Subdivide { spec, m, out, obj } => {
            let spec = build_spec(&spec)?;
            let sub = subdivide(&spec, m)?;
            write_json(&out, &to_value(&sub)?)?;
            if let Some(path) = obj {
                let mut w = obj_writer(&path)?;
                for p in &sub.pieces {
                    w.add(p)?;
                }
                w.finish()?.flush()?;
            }
            eprintln!("{} pieces at ratio {}", sub.pieces.len(), fmt_rational(&sub.ratio));
            Ok(())
        }
        HillCmd::Verify { input, out } => {
            let sub: Subdivision = parse_json(&read_input(&input)?, "subdivision")?;
            let report = verify_reptile(&sub)?;
            write_json(&out, &report.to_json())?;
            if report.all_ok() {
                eprintln!("{} pieces: all checks pass ({})", report.pieces, if report.exact { "exact" } else { "float" });
                Ok(())
            } else {
                Err(Failure::Verification(format!("{} pieces: a reptile check failed", report.pieces)))
            }
        }
        HillCmd::Grow { spec, m, generations, budget, samples, seed, obj, out } => {
            let spec = build_spec(&spec)?;
            let mut writer = match &obj {
                Some(p) => Some(obj_writer(p)?),
                None => None,
            };
            let report = grow_space_tiling(&spec, m, generations, budget, samples, seed, &mut |s| match writer.as_mut() {
                Some(w) => w.add(s),
                None => Ok(()),
            })?;
            if let Some(w) = writer {
                w.finish()?.flush()?;
            }
            write_json(&out, &report.to_json())?;
            eprintln!(
                "{} of {} cells{}; sampled disjointness {}",
                report.cells,
                report.expected_cells,
                if report.truncated { " (truncated by budget)" } else { "" },
                if report.sampled_disjoint { "ok" } else { "FAILED" }
            );
            if report.sampled_disjoint {
                Ok(())
            } else {
                Err(Failure::Verification("sampled cells overlap".into()))
            }
        }
    }
}

fn parse_cosine(text: &str) -> std::result::Result<AlgebraicReal, Failure> {
    let t = text.trim();
    if t.starts_with('{') {
        return parse_json(t, "cosine");
    }
    Ok(parse_real(t)?)
}

fn angles(cmd: AnglesCmd) -> Outcome {
    match cmd {
        AnglesCmd::Classify { cos, out } => {
            let x = parse_cosine(&cos)?;
            let angle = match_rational_angle(&x)?;
            let record = AngleRecord::new(angle.as_ref(), &x);
            write_json(&out, &json!([to_value(&record)?]))?;
            match angle {
                Some(a) => eprintln!("cos({a}) = {x}"),
                None => eprintln!("{x} is not the cosine of a rational angle"),
            }
            Ok(())
        }
        AnglesCmd::Catalog { degree, out } => {
            let c = catalog(degree)?;
            let records: Vec<AngleRecord> = c.entries.iter().map(|(a, v)| AngleRecord::new(Some(a), v)).collect();
            write_json(&out, &to_value(&records)?)?;
            eprintln!("{} cosines of degree {degree}", records.len());
            Ok(())
        }
    }
}

fn audit_cmd(cmd: AuditCmd) -> Outcome {
    match cmd {
        AuditCmd::Run { kmax, json } => {
            let reports = audit::run_full_audit(kmax)?;
            write_json(&json, &audit::reports_to_json(&reports))?;
            let mut ok = true;
            for r in &reports {
                let verified = r.annotation.as_ref().map(|a| a["verified"] == json!(true));
                eprintln!(
                    "k = {:>3}: {}{}",
                    r.k,
                    r.conclusion,
                    match verified {
                        Some(true) => format!(" ({}, verified)", audit::HILL_EXISTS),
                        Some(false) => format!(" ({}, NOT verified)", audit::HILL_EXISTS),
                        None => String::new(),
                    }
                );
                ok &= r.excluded() || verified == Some(true);
            }
            if ok {
                Ok(())
            } else {
                Err(Failure::Verification("some k was not excluded".into()))
            }
        }
        AuditCmd::Step { id, k, out } => {
            let step = audit::run_step(&id, k)?;
            let rechecked = check::check_step(&step.to_json())?;
            let mut doc = step.to_json();
            doc["rechecked"] = json!(rechecked);
            write_json(&out, &doc)?;
            eprintln!("{}: {} (checker {})", step.id, step.verdict.as_str(), if rechecked { "agrees" } else { "disagrees" });
            if step.verdict != Verdict::Fail && rechecked {
                Ok(())
            } else {
                Err(Failure::Verification(format!("step {} did not pass", step.id)))
            }
        }
        AuditCmd::Check { input } => {
            let doc: Value = parse_json(&read_input(&input)?, "report")?;
            let ok = if let Some(reports) = doc.get("reports").and_then(Value::as_array) {
                let mut all = true;
                for r in reports {
                    let good = check::check_report(r)?;
                    eprintln!("k = {}: {}", r["k"], if good { "certificates verified" } else { "REJECTED" });
                    all &= good;
                }
                all
            } else {
                let step = AuditStep::from_json(&doc)?;
                check::check_step(&step.to_json())?
            };
            if ok {
                Ok(())
            } else {
                Err(Failure::Verification("a certificate was rejected".into()))
            }
        }
    }
}

fn export(input: &str, out: &str) -> Outcome {
    let v: Value = parse_json(&read_input(input)?, "input")?;
    let pieces: Vec<Simplex> = if v.get("pieces").is_some() {
        let sub: Subdivision = serde_json::from_value(v).map_err(|e| Failure::Usage(format!("subdivision: {e}")))?;
        sub.pieces
    } else {
        vec![serde_json::from_value(v).map_err(|e| Failure::Usage(format!("simplex: {e}")))?]
    };
    let mut w = obj_writer(out)?;
    for p in &pieces {
        w.add(p)?;
    }
    let (count, verts) = (w.count(), w.vertex_count());
    w.finish()?.flush()?;
    eprintln!("{count} tetrahedra, {verts} vertices, {} faces", 4 * count);
    Ok(())
}
