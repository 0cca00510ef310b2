//! Command-line interface: argument parsing and the five commands.

use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use num::Zero;
use serde::Serialize;

use chow_core::components::{sample_many, write_archive, Family};
use chow_core::exact::{format_rat, Rat};
use chow_core::grassmann::{
    c_vars, catanese_generators, catanese_normalize, coisotropy_check, fig1_rank, GrassmannError, QuadricCoeffs,
};
use chow_core::ideals::{points_mod, reconstruct_stable, GeneratorArchive, GeneratorSet, PieceExport, Provenance};
use chow_core::integrability::{membership_report, AlphaConvention, Census, IntegrabilityError};
use chow_core::poly::RatPoly;

use crate::input::QuadricFile;
use crate::suites::run_target;
use crate::{CliError, RunConfig, Session, SuiteReport};

#[derive(Debug, Parser)]
#[command(name = "chow", about = "Quadrics in the Grassmannian of lines: checks and verification suites")]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalArgs,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct GlobalArgs {
    /// Seed for witnesses, prime selection and randomized probes.
    #[arg(long, global = true, default_value_t = 1)]
    pub seed: u64,
    /// Witnesses per interpolation (default: monomial count plus 10%).
    #[arg(long, global = true)]
    pub samples: Option<usize>,
    /// Degree cap for graded pieces.
    #[arg(long, global = true, default_value_t = 4)]
    pub degree: u32,
    /// `auto` or a comma-separated list of primes in (2^30, 2^31).
    #[arg(long, global = true, default_value = "auto")]
    pub primes: String,
    /// Worker threads (default: CHOW_THREADS or the available cores).
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    /// Output file.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Lift interpolated pieces to rational generators.
    #[arg(long, global = true)]
    pub rational_reconstruct: bool,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Report on one quadric given as a JSON file.
    Check {
        file: PathBuf,
        /// Generator archives to evaluate at the quadric.
        #[arg(long)]
        archive: Vec<PathBuf>,
    },
    /// Run a verification bundle.
    Verify { target: Target },
    /// Write a witness archive (one JSON object per line).
    Sample {
        #[arg(long)]
        family: String,
    },
    /// Write a generator archive.
    Gens { set: GenSet },
    /// Interpolate the vanishing piece of a union of families.
    Interp {
        /// Comma-separated family names.
        families: String,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Target {
    Fig1,
    Counts,
    Prop1,
    Prop2,
    Prop3,
    Catanese,
    Dimensions,
    All,
}

impl Target {
    pub fn name(self) -> &'static str {
        match self {
            Target::Fig1 => "fig1",
            Target::Counts => "counts",
            Target::Prop1 => "prop1",
            Target::Prop2 => "prop2",
            Target::Prop3 => "prop3",
            Target::Catanese => "catanese",
            Target::Dimensions => "dimensions",
            Target::All => "all",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum GenSet {
    Coisotropic,
    Catanese,
    J,
}

impl GlobalArgs {
    pub fn config(&self) -> Result<RunConfig, CliError> {
        let mut cfg = RunConfig::new(self.seed);
        cfg.samples = self.samples;
        if !(1..=5).contains(&self.degree) {
            return Err(CliError::Input(format!("degree {} outside 1..=5", self.degree)));
        }
        cfg.degree = self.degree;
        cfg.primes = RunConfig::parse_primes(self.seed, &self.primes)?;
        if let Some(t) = self.threads {
            cfg.threads = t.max(1);
        }
        cfg.out = self.out.clone();
        cfg.rational_reconstruct = self.rational_reconstruct;
        Ok(cfg)
    }
}

/// Runs a command; returns the exit status for a completed run.
pub fn run(cli: Cli) -> Result<i32, CliError> {
    let cfg = cli.global.config()?;
    match cli.command {
        Command::Check { file, archive } => {
            let report = check(&QuadricFile::load(&file)?, &archive)?;
            for line in report.summary() {
                println!("{line}");
            }
            emit(cfg.out.as_deref(), &report)?;
            Ok(0)
        }
        Command::Verify { target } => {
            let session = Session::new(cfg);
            let reports = run_target(&session, target.name())?;
            for r in &reports {
                for line in r.summary() {
                    println!("{line}");
                }
            }
            emit(session.cfg.out.as_deref(), &reports)?;
            Ok(if reports.iter().all(SuiteReport::passed) { 0 } else { 1 })
        }
        Command::Sample { family } => {
            let family = parse_family(&family)?;
            let session = Session::new(cfg);
            let n = session.cfg.samples.unwrap_or(100);
            let ws = sample_many(family, session.interpolation_seed(), n)?;
            let path = require_out(&session.cfg)?;
            let mut w = BufWriter::new(File::create(path)?);
            write_archive(&mut w, &ws)?;
            w.flush()?;
            println!("wrote {n} {family} witnesses to {}", path.display());
            Ok(0)
        }
        Command::Gens { set } => {
            let session = Session::new(cfg);
            let (archive, census) = generator_archive(&session, set)?;
            println!("{}: {} generators, degrees {:?}", archive.label, archive.generators.len(), degree_census(&archive.degrees));
            for c in &census {
                println!("  {} ({:?}): {:?}", c.chart, c.convention, c.degree_histogram);
            }
            write_json(require_out(&session.cfg)?, &archive)?;
            Ok(0)
        }
        Command::Interp { families } => {
            let fams: Vec<Family> = families.split(',').map(parse_family).collect::<Result<_, _>>()?;
            let session = Session::new(cfg);
            let out = interpolate(&session, &fams)?;
            println!("degree {} vanishing piece on {families}: dimension {}", session.cfg.degree, out.pieces[0].dimension);
            write_json(require_out(&session.cfg)?, &out)?;
            Ok(0)
        }
    }
}

fn parse_family(s: &str) -> Result<Family, CliError> {
    Family::parse(s.trim()).ok_or_else(|| CliError::Input(format!("unknown family {s:?}")))
}

fn require_out(cfg: &RunConfig) -> Result<&Path, CliError> {
    cfg.out.as_deref().ok_or_else(|| CliError::Input("--out is required".into()))
}

fn write_json<T: Serialize>(path: &Path, value: &T) -> Result<(), CliError> {
    let mut w = BufWriter::new(File::create(path)?);
    serde_json::to_writer_pretty(&mut w, value)?;
    writeln!(w)?;
    w.flush()?;
    Ok(())
}

/// Writes JSON to the output file, or to standard output when none is set.
fn emit<T: Serialize>(out: Option<&Path>, value: &T) -> Result<(), CliError> {
    match out {
        Some(p) => write_json(p, value),
        None => {
            println!("{}", serde_json::to_string_pretty(value)?);
            Ok(())
        }
    }
}

fn degree_census(degrees: &[u32]) -> std::collections::BTreeMap<u32, usize> {
    let mut m = std::collections::BTreeMap::new();
    for &d in degrees {
        *m.entry(d).or_insert(0) += 1;
    }
    m
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Certificate {
    pub s: String,
    pub t: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Normalization {
    pub lambda: String,
    pub t: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Evaluation {
    pub label: String,
    pub generators: usize,
    pub nonzero: usize,
}

/// Everything `check` reports about one quadric.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CheckReport {
    pub invariant: Vec<String>,
    pub coisotropic: bool,
    pub certificate: Option<Certificate>,
    pub fig1_rank: usize,
    pub catanese: Option<Normalization>,
    /// Divisibility per chart; empty when the quadric is not coisotropic.
    pub charts: Vec<(String, bool)>,
    pub chow_divisible: Option<bool>,
    pub evaluations: Vec<Evaluation>,
}

impl CheckReport {
    pub fn summary(&self) -> Vec<String> {
        let mut out = Vec::new();
        match &self.certificate {
            Some(c) => out.push(format!("coisotropic: bracket = ({}) Q + ({}) P", c.s, c.t)),
            None => out.push("not coisotropic".to_string()),
        }
        out.push(format!("coisotropy matrix rank {}", self.fig1_rank));
        if let Some(n) = &self.catanese {
            out.push(format!("normalization: lambda = {}, t = {}", n.lambda, n.t));
        }
        for (chart, ok) in &self.charts {
            out.push(format!("chart {chart}: {}", if *ok { "divisible" } else { "not divisible" }));
        }
        if let Some(d) = self.chow_divisible {
            out.push(format!("chart divisibility in all charts: {d}"));
        }
        for e in &self.evaluations {
            out.push(format!("{}: {} of {} generators nonzero", e.label, e.nonzero, e.generators));
        }
        out
    }
}

fn count_nonzero(polys: &[RatPoly], point: &[Rat]) -> Result<usize, CliError> {
    let mut n = 0;
    for p in polys {
        n += usize::from(!p.eval(point)?.is_zero());
    }
    Ok(n)
}

/// The report of `check` for the canonical representative of the input.
pub fn check(input: &QuadricFile, archives: &[PathBuf]) -> Result<CheckReport, CliError> {
    let q: QuadricCoeffs = input.canonical()?;
    let cert = coisotropy_check(&q).map_err(|e| match e {
        GrassmannError::PlueckerMultiple => CliError::Input(e.to_string()),
        other => other.into(),
    })?;
    let catanese = match catanese_normalize(&q) {
        Ok(n) => Some(Normalization { lambda: format_rat(&n.lambda), t: format_rat(&n.t) }),
        Err(GrassmannError::NotCoisotropic | GrassmannError::NoUniqueLambda) => None,
        Err(e) => return Err(e.into()),
    };
    let (charts, chow_divisible) = match membership_report(&q, AlphaConvention::Columns) {
        Ok(r) => (r.per_chart.iter().map(|(c, ok)| (c.label(), *ok)).collect(), Some(r.holds())),
        Err(IntegrabilityError::NotCoisotropic) => (Vec::new(), None),
        Err(e) => return Err(e.into()),
    };
    let v = q.invariant();
    let cis = crate::session::coisotropic_set()?;
    let mut evaluations = vec![
        Evaluation { label: cis.label.clone(), generators: cis.polys.len(), nonzero: count_nonzero(&cis.polys, &v.0)? },
        {
            let cat = catanese_generators();
            Evaluation { label: "catanese".into(), generators: cat.len(), nonzero: count_nonzero(&cat, &q.0)? }
        },
    ];
    for path in archives {
        let a: GeneratorArchive = serde_json::from_reader(std::io::BufReader::new(File::open(path)?))
            .map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
        let polys = archive_polys(&a)?;
        let point: &[Rat] = if a.variables.len() == 21 { &q.0 } else { &v.0 };
        evaluations.push(Evaluation { label: a.label.clone(), generators: polys.len(), nonzero: count_nonzero(&polys, point)? });
    }
    Ok(CheckReport {
        invariant: v.to_strings(),
        coisotropic: cert.is_some(),
        certificate: cert.map(|c| Certificate { s: format_rat(&c.s), t: format_rat(&c.t) }),
        fig1_rank: fig1_rank(&q),
        catanese,
        charts,
        chow_divisible,
        evaluations,
    })
}

/// Polynomials of an archive in either the 20 invariant or the 21
/// coefficient variables.
pub fn archive_polys(a: &GeneratorArchive) -> Result<Vec<RatPoly>, CliError> {
    match a.variables.len() {
        20 => Ok(GeneratorSet::from_archive(a)?.polys),
        21 => a
            .generators
            .iter()
            .map(|t| Ok(RatPoly::parse(chow_core::exact::RationalField, c_vars(), t)?))
            .collect(),
        n => Err(CliError::Input(format!("archive {} has {n} variables", a.label))),
    }
}

/// The archive for a generator set and, for J, the per-chart censuses.
pub fn generator_archive(s: &Session, set: GenSet) -> Result<(GeneratorArchive, Vec<Census>), CliError> {
    Ok(match set {
        GenSet::Coisotropic => (s.i_generators()?.to_archive(), Vec::new()),
        GenSet::J => {
            let j = s.j_data()?;
            (j.set.to_archive(), j.censuses.clone())
        }
        GenSet::Catanese => {
            let polys = catanese_generators();
            let archive = GeneratorArchive {
                label: "catanese".into(),
                provenance: Provenance::Constructed,
                variables: c_vars().names().to_vec(),
                degrees: polys.iter().map(|p| p.total_degree().unwrap_or(0)).collect(),
                generators: polys.iter().map(RatPoly::to_text).collect(),
            };
            (archive, Vec::new())
        }
    })
}

/// Output of `interp`: the piece at both agreeing primes, and optionally
/// its rational basis.
#[derive(Debug, Clone, Serialize)]
pub struct InterpOutput {
    pub families: Vec<String>,
    pub pieces: Vec<PieceExport>,
    pub rational: Option<GeneratorArchive>,
}

pub fn interpolate(s: &Session, fams: &[Family]) -> Result<InterpOutput, CliError> {
    let d = s.cfg.degree;
    let (_, primes) = s.agreed(|f| Ok(s.vanishing(f, fams, d)?.class_dimensions()))?;
    let mut pieces = Vec::new();
    for p in primes {
        let f = chow_core::exact::PrimeField::new(p)?;
        pieces.push(s.vanishing(f, fams, d)?.export());
    }
    let rational = if s.cfg.rational_reconstruct {
        let n = s.cfg.witness_count(d)?;
        let pts = s.mixed(fams, n)?;
        let margin = RunConfig::margin(chow_core::ideals::monomial_count(20, d as u64) as usize);
        let polys = reconstruct_stable(s.cfg.seed, |f| s.lab.vanishing_piece(f, &points_mod(&pts, &f)?, d, margin))?;
        let label = fams.iter().map(|f| f.name()).collect::<Vec<_>>().join("+");
        Some(GeneratorSet::new(label, Provenance::Interpolated, polys)?.to_archive())
    } else {
        None
    };
    Ok(InterpOutput { families: fams.iter().map(|f| f.name().to_string()).collect(), pieces, rational })
}
