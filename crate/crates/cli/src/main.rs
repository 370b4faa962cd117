use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use cocycle_core::codec::{read_file, write_file, Document};
use cocycle_core::gallery::{dim32_suite, dim81_suite, q_identities_suite, qlp_demo, Family, Suite};
use cocycle_core::hopfcore::validation_report;
use cocycle_core::prebialgebra::{
    associativity_trichotomy, extract_prebialgebra, omega_roundtrip, validate_prebialgebra, validate_splitting, SplittingDatum,
};
use cocycle_core::twist::{is_two_cocycle, twist_bialgebra, HopfSub};
use cocycle_core::{AlgebraPresentation, Check, Cyc, Error, Level, Report, RunReport};

#[derive(Parser)]
#[command(name = "cocycle", version, about = "Verify cocycles, twists and smash products of finite-dimensional Hopf algebras")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
    /// Report format.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    report: Format,
    /// Worker threads for the verification kernels (default: all cores).
    #[arg(long, global = true)]
    jobs: Option<usize>,
    /// Seed for randomized property runs.
    #[arg(long, default_value_t = 0, global = true)]
    seed: u64,
    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Cmd {
    /// Check the axioms of an algebra or pre-bialgebra file.
    Validate {
        file: PathBuf,
        #[arg(long, default_value = "hopf")]
        level: String,
    },
    /// Certify a 2-cocycle on an algebra.
    VerifyCocycle {
        algebra: PathBuf,
        cocycle: PathBuf,
        /// Projection file whose σ embeds H; enables the H-bilinear and H-balanced checks.
        #[arg(long)]
        hopf_sub: Option<PathBuf>,
    },
    /// Twist an algebra by a certified cocycle.
    Twist {
        algebra: PathBuf,
        cocycle: PathBuf,
        #[arg(short = 'o', long = "output")]
        output: PathBuf,
    },
    /// Extract the pre-bialgebra with cocycle of a splitting datum.
    Extract {
        algebra: PathBuf,
        /// Projection file carrying σ and π.
        #[arg(long)]
        pi: PathBuf,
        #[arg(short = 'o', long = "output")]
        output: PathBuf,
    },
    /// Associativity trichotomy of a pre-bialgebra.
    Trichotomy { file: PathBuf },
    /// Run a gallery suite.
    Suite {
        #[arg(value_enum)]
        name: SuiteName,
        #[arg(long)]
        a1: Option<String>,
        #[arg(long)]
        a2: Option<String>,
        #[arg(long)]
        a: Option<String>,
        /// Directory receiving the objects the suite was computed from.
        #[arg(long)]
        dump: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum SuiteName {
    QIdentities,
    Dim81,
    #[value(name = "dim32-f1")]
    Dim32F1,
    #[value(name = "dim32-f2")]
    Dim32F2,
    #[value(name = "dim32-f3")]
    Dim32F3,
    QlpDemo,
}

/// Malformed input (exit 2) vs a computation that ended in an error (exit 1).
enum Failure {
    Input(String),
    Check(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Check(e.to_string())
    }
}

fn load(path: &Path) -> Result<Document, Failure> {
    read_file(path).map_err(|e| Failure::Input(e.to_string()))
}

fn load_algebra(path: &Path) -> Result<AlgebraPresentation, Failure> {
    match load(path)? {
        Document::Algebra(a) => Ok(a),
        d => Err(Failure::Input(format!("{}: expected an algebra, found {}", path.display(), d.kind()))),
    }
}

fn load_cocycle(path: &Path, a: &AlgebraPresentation) -> Result<cocycle_core::BilForm, Failure> {
    match load(path)? {
        Document::Cocycle { basis, field_order, form } => {
            if basis != a.basis || field_order != a.field_order {
                return Err(Failure::Input(format!("{}: basis or field order differs from the algebra", path.display())));
            }
            Ok(form)
        }
        d => Err(Failure::Input(format!("{}: expected a cocycle, found {}", path.display(), d.kind()))),
    }
}

fn load_projection(path: &Path, a: &AlgebraPresentation) -> Result<(AlgebraPresentation, cocycle_core::LinMap, Option<cocycle_core::LinMap>), Failure> {
    match load(path)? {
        Document::Projection { hopf, basis, sigma, pi } => {
            if basis != a.basis {
                return Err(Failure::Input(format!("{}: basis differs from the algebra", path.display())));
            }
            Ok((hopf, sigma, pi))
        }
        d => Err(Failure::Input(format!("{}: expected a projection, found {}", path.display(), d.kind()))),
    }
}

fn scalar(n: u32, s: &Option<String>, default: i64) -> Result<Cyc, Failure> {
    match s {
        None => Ok(Cyc::from_int(n, default)),
        Some(s) => Cyc::parse(n, s).map_err(|e| Failure::Input(format!("scalar {s:?}: {e}"))),
    }
}

/// A failed cocycle check becomes a failing line; anything else propagates.
fn checked<T>(rep: &mut Report, name: &str, r: cocycle_core::Result<T>) -> Result<Option<T>, Failure> {
    match r {
        Ok(v) => Ok(Some(v)),
        Err(Error::CheckFailed { check, witness }) => {
            rep.push(Check::fail(name, format!("{check} at {witness}")));
            Ok(None)
        }
        Err(e) => Err(e.into()),
    }
}

fn run(cmd: &Cmd, seed: u64) -> Result<Report, Failure> {
    let mut rep = Report::new();
    match cmd {
        Cmd::Validate { file, level } => {
            let level: Level = level.parse().map_err(|e: Error| Failure::Input(e.to_string()))?;
            match load(file)? {
                Document::Algebra(a) => rep.extend(validation_report(&a, level)?),
                Document::PreBialgebra(p) => rep.extend(validate_prebialgebra(&p)?),
                Document::Projection { hopf, .. } => rep.extend_prefixed("H: ", validation_report(&hopf, Level::Hopf)?),
                d => return Err(Failure::Input(format!("cannot validate a {} document", d.kind()))),
            }
        }
        Cmd::VerifyCocycle { algebra, cocycle, hopf_sub } => {
            let a = load_algebra(algebra)?;
            let g = load_cocycle(cocycle, &a)?;
            let hs = match hopf_sub {
                Some(p) => {
                    let (h, sigma, _) = load_projection(p, &a)?;
                    Some(HopfSub { h: std::sync::Arc::new(h), sigma })
                }
                None => None,
            };
            if let Some(cert) = checked(&mut rep, "2-cocycle", is_two_cocycle(&g, &a, hs.as_ref()))? {
                rep.push(Check::pass("normalized"));
                rep.push(Check::pass("cocycle condition"));
                rep.push(Check::pass("convolution invertible"));
                for (name, v) in [("H-bilinear", cert.h_bilinear), ("H-balanced", cert.h_balanced)] {
                    if let Some(v) = v {
                        rep.push(if v { Check::pass(name) } else { Check::fail(name, "see H-sub-Hopf algebra checks") });
                    }
                }
            }
        }
        Cmd::Twist { algebra, cocycle, output } => {
            let a = load_algebra(algebra)?;
            let g = load_cocycle(cocycle, &a)?;
            if let Some(cert) = checked(&mut rep, "2-cocycle", is_two_cocycle(&g, &a, None))? {
                rep.push(Check::pass("2-cocycle"));
                let t = twist_bialgebra(&a, &cert)?;
                rep.extend_prefixed("twisted: ", validation_report(&t, Level::Hopf)?);
                write_file(output, &Document::Algebra(t)).map_err(|e| Failure::Input(e.to_string()))?;
            }
        }
        Cmd::Extract { algebra, pi, output } => {
            let a = load_algebra(algebra)?;
            let (h, sigma, p) = load_projection(pi, &a)?;
            let p = p.ok_or_else(|| Failure::Input(format!("{}: projection has no pi block", pi.display())))?;
            let dt = SplittingDatum { a, h: std::sync::Arc::new(h), pi: p, sigma };
            let split = validate_splitting(&dt)?;
            let ok = split.all_pass();
            rep.extend_prefixed("splitting: ", split);
            if ok {
                let ex = extract_prebialgebra(&dt)?;
                rep.extend_prefixed("R: ", validate_prebialgebra(&ex.pre)?);
                rep.extend(omega_roundtrip(&dt, &ex)?);
                write_file(output, &Document::PreBialgebra(ex.pre)).map_err(|e| Failure::Input(e.to_string()))?;
            }
        }
        Cmd::Trichotomy { file } => match load(file)? {
            Document::PreBialgebra(p) => rep.extend(associativity_trichotomy(&p)?),
            d => return Err(Failure::Input(format!("expected a prebialgebra, found {}", d.kind()))),
        },
        Cmd::Suite { name, a1, a2, a, dump } => {
            let suite = match name {
                SuiteName::QIdentities => Suite { report: q_identities_suite(), dumps: Vec::new() },
                SuiteName::Dim81 => dim81_suite(scalar(3, a1, 1)?, scalar(3, a2, 1)?, scalar(3, a, 1)?, seed)?,
                SuiteName::Dim32F1 | SuiteName::Dim32F2 => {
                    let f = if matches!(name, SuiteName::Dim32F1) { Family::F1 } else { Family::F2 };
                    dim32_suite(f, scalar(8, a1, 1)?, scalar(8, a2, 1)?, scalar(8, a, 1)?, seed)?
                }
                SuiteName::Dim32F3 => dim32_suite(Family::F3, scalar(4, a1, 1)?, scalar(4, a2, 1)?, scalar(4, a, 1)?, seed)?,
                SuiteName::QlpDemo => qlp_demo(scalar(3, a, 1)?)?,
            };
            if let Some(dir) = dump {
                std::fs::create_dir_all(dir).map_err(|e| Failure::Input(format!("{}: {e}", dir.display())))?;
                for (stem, doc) in &suite.dumps {
                    write_file(&dir.join(format!("{stem}.json")), doc).map_err(|e| Failure::Input(e.to_string()))?;
                }
            }
            rep.extend(suite.report);
        }
    }
    Ok(rep)
}

fn main() -> ExitCode {
    let argv: Vec<String> = std::env::args().collect();
    let cli = Cli::parse();
    if let Some(j) = cli.jobs {
        // only fails if a pool already exists
        let _ = rayon::ThreadPoolBuilder::new().num_threads(j.max(1)).build_global();
    }
    let (code, report) = match run(&cli.cmd, cli.seed) {
        Ok(rep) => (if rep.all_pass() { 0 } else { 1 }, rep),
        Err(Failure::Check(msg)) => {
            let mut rep = Report::new();
            rep.push(Check::fail("run", msg));
            (1, rep)
        }
        Err(Failure::Input(msg)) => {
            let mut rep = Report::new();
            rep.push(Check::fail("input", msg));
            (2, rep)
        }
    };
    let rr = RunReport::new(argv.into_iter().skip(1).collect(), cli.seed, report);
    let text = match cli.report {
        Format::Text => rr.to_text(),
        Format::Json => rr.to_json() + "\n",
    };
    match &cli.out {
        Some(p) => {
            if let Err(e) = std::fs::write(p, &text) {
                eprintln!("cannot write {}: {e}", p.display());
                return ExitCode::from(2);
            }
        }
        None => print!("{text}"),
    }
    ExitCode::from(code)
}
