//! Command-line front end. The binary only forwards `std::env::args` here.
//!
//! Exit codes: 0 success, 2 usage or invalid parameters, 3 malformed or
//! non-Hermitian input, 4 dimension mismatch.

use std::collections::BTreeMap;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;
use serde_json::{json, Value};

use crate::classifier::{self, OptimOptions, CERT_TOL};
use crate::error::{Error, Result};
use crate::io::{tiles_upb, MatrixFile, MatrixKind};
use crate::states;
use crate::tensor::{hermitian_operator_schmidt, BipartiteOperator, PureState};
use crate::witnesses::{self, EdgeMode, Family, RobertsonKind, Witness};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_MALFORMED: i32 = 3;
pub const EXIT_DIMENSION: i32 = 4;

#[derive(Debug, Parser)]
#[command(name = "ewt", version, about = "Entanglement witness toolkit")]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalOpts,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct GlobalOpts {
    /// Seed of the optimizer's random restarts.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Number of restarts (default 50 · max(d_A, d_B)).
    #[arg(long, global = true)]
    pub restarts: Option<usize>,
    /// Certification tolerance for negative values.
    #[arg(long, global = true, default_value_t = CERT_TOL)]
    pub tol: f64,
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    pub json: bool,
}

impl GlobalOpts {
    fn optim(&self) -> OptimOptions {
        OptimOptions {
            seed: self.seed,
            restarts: self.restarts,
            cert_tol: self.tol,
            ..OptimOptions::default()
        }
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Build a catalog witness or state and write it as a matrix file.
    Make {
        #[arg(long)]
        family: String,
        /// Comma-separated `key=value` list.
        #[arg(long, default_value = "")]
        params: String,
        /// Output path; stdout when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Classify a witness file.
    Classify { witness: PathBuf },
    /// Evaluate tr(Wρ).
    Detect { witness: PathBuf, state: PathBuf },
    /// Tabulate tr(Wρ_p) along a one-parameter state family.
    Sweep {
        /// `werner` or `isotropic`.
        #[arg(long)]
        family: String,
        #[arg(long)]
        witness: PathBuf,
        #[arg(long, default_value_t = 0.0)]
        from: f64,
        #[arg(long, default_value_t = 1.0)]
        to: f64,
        #[arg(long, default_value_t = 11)]
        steps: usize,
    },
    /// Structural physical approximation of a witness.
    Spa { witness: PathBuf },
    /// Operator Schmidt coefficients (and pure-state Schmidt data for rank-one states).
    Schmidt { file: PathBuf },
}

fn exit_code(err: &Error) -> i32 {
    match err {
        Error::InvalidParameter(_) | Error::Precondition(_) | Error::ZeroVector | Error::Nonlinear(_) => {
            EXIT_USAGE
        }
        Error::NotHermitian(_) | Error::Malformed(_) | Error::Io(_) | Error::Json(_) => EXIT_MALFORMED,
        Error::DimensionMismatch(_) => EXIT_DIMENSION,
    }
}

/// Parses `args` (including the program name), runs the command, and
/// returns the exit code. Results go to `out`, diagnostics to `err`.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if code == EXIT_OK { write!(out, "{text}") } else { write!(err, "{text}") };
            return code;
        }
    };
    match execute(&cli, out) {
        Ok(()) => EXIT_OK,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            exit_code(&e)
        }
    }
}

fn execute(cli: &Cli, out: &mut dyn Write) -> Result<()> {
    let g = &cli.global;
    match &cli.command {
        Command::Make { family, params, out: path } => {
            let params = parse_params(params)?;
            let file = make(family, &params)?;
            match path {
                Some(p) => file.save(p)?,
                None => writeln!(out, "{}", file.to_json()?)?,
            }
        }
        Command::Classify { witness } => {
            let file = MatrixFile::load(witness)?;
            let op = file.to_operator()?;
            op.require_hermitian()?;
            let (family, family_verified) = tagged_family(&file, &op);
            let report = classifier::classify(&Witness::new(op, family), &g.optim())?;
            let payload = ClassifyOutput { report: &report, family_verified };
            if g.json {
                writeln!(out, "{}", serde_json::to_string_pretty(&payload)?)?;
            } else {
                write_report_text(out, &payload)?;
            }
        }
        Command::Detect { witness, state } => {
            let w = load_hermitian(witness)?;
            let rho = load_hermitian(state)?;
            let value = classifier::detect(&w, &rho)?;
            let detected = value < -g.tol;
            let verdict = if detected { "detected" } else { "not detected" };
            if g.json {
                let v = json!({ "trace": value, "detected": detected, "verdict": verdict });
                writeln!(out, "{}", serde_json::to_string_pretty(&v)?)?;
            } else {
                writeln!(out, "tr(W rho) = {value:.12e}")?;
                writeln!(out, "{verdict}")?;
            }
        }
        Command::Sweep { family, witness, from, to, steps } => {
            let w = load_hermitian(witness)?;
            let rows = sweep(family, &w, *from, *to, *steps)?;
            let crossings = zero_crossings(&rows);
            if g.json {
                let v = json!({ "family": family, "rows": rows, "zero_crossings": crossings });
                writeln!(out, "{}", serde_json::to_string_pretty(&v)?)?;
            } else {
                writeln!(out, "# p\ttrace")?;
                for (p, t) in &rows {
                    writeln!(out, "{p}\t{t}")?;
                }
                for z in crossings {
                    writeln!(out, "# zero crossing near p = {z}")?;
                }
            }
        }
        Command::Spa { witness } => {
            let w = load_hermitian(witness)?;
            let s = classifier::spa(&w)?;
            if g.json {
                writeln!(out, "{}", serde_json::to_string_pretty(&s)?)?;
            } else {
                writeln!(out, "p* = {}", s.p_star)?;
                writeln!(out, "min eigenvalue of W(p*) = {:e}", s.min_eigenvalue)?;
                writeln!(out, "PPT: {} (min PT eigenvalue {:e})", s.ppt.is_ppt, s.ppt.min_pt_eigenvalue)?;
                writeln!(out, "CCNR sum: {} (flags entangled: {})", s.ccnr.sum, s.ccnr.flags_entangled)?;
                if let Some(note) = &s.note {
                    writeln!(out, "note: {note}")?;
                }
            }
        }
        Command::Schmidt { file } => {
            let f = MatrixFile::load(file)?;
            let op = f.to_operator()?;
            let v = schmidt_summary(&op, f.kind)?;
            if g.json {
                writeln!(out, "{}", serde_json::to_string_pretty(&v)?)?;
            } else {
                writeln!(out, "operator Schmidt coefficients: {}", v["operator_schmidt"])?;
                if let Some(s) = v.get("pure_state_schmidt") {
                    writeln!(out, "pure-state Schmidt coefficients: {s}")?;
                }
            }
        }
    }
    Ok(())
}

#[derive(Serialize)]
struct ClassifyOutput<'a> {
    #[serde(flatten)]
    report: &'a classifier::WitnessReport,
    /// The family tag in the file rebuilt to the same matrix (`false` if it
    /// was discarded or cannot be rebuilt from the tag alone).
    family_verified: bool,
}

fn write_report_text(out: &mut dyn Write, p: &ClassifyOutput<'_>) -> Result<()> {
    let r = p.report;
    writeln!(out, "family: {} (verified: {})", r.family, p.family_verified)?;
    writeln!(out, "dims: {} x {}", r.d_a, r.d_b)?;
    writeln!(out, "min eigenvalue: {:e}", r.min_eigenvalue)?;
    writeln!(out, "positive operator: {}", r.is_positive_operator)?;
    for v in r.block_positive_k.values() {
        let analytic = match v.analytic {
            Some(a) => format!(", analytic {a}"),
            None => String::new(),
        };
        writeln!(out, "{}-block-positive: {:?} (min {:e}{analytic})", v.k, v.numeric, v.min_value)?;
    }
    writeln!(out, "entanglement witness: {}", r.is_ew)?;
    if let Some(s) = &r.spanning {
        writeln!(out, "spanning dimension: {} of {} (W^Γ: {})", s.dimension, s.full_dimension, s.pt_dimension)?;
    }
    if let Some(s) = &r.spa {
        writeln!(out, "SPA p*: {}", s.p_star)?;
    }
    writeln!(out, "decomposable: {:?}", r.decomposable)?;
    writeln!(out, "seed: {}", r.seed)?;
    Ok(())
}

fn load_hermitian(path: &PathBuf) -> Result<BipartiteOperator> {
    let op = MatrixFile::load(path)?.to_operator()?;
    op.require_hermitian()?;
    Ok(op)
}

/// Family tag from the file's metadata, kept only if it is consistent with
/// the stored matrix.
fn tagged_family(file: &MatrixFile, op: &BipartiteOperator) -> (Family, bool) {
    let Some(tag) = file.meta.get("family_tag") else {
        return (Family::Unknown, false);
    };
    let Ok(family) = serde_json::from_value::<Family>(tag.clone()) else {
        return (Family::Unknown, false);
    };
    match witnesses::rebuild(&family) {
        Some(_) if classifier::family_matches(op, &family) => (family, true),
        Some(_) => (Family::Unknown, false),
        None => (family, false),
    }
}

pub fn parse_params(s: &str) -> Result<BTreeMap<String, String>> {
    let mut map = BTreeMap::new();
    for item in s.split(',').map(str::trim).filter(|x| !x.is_empty()) {
        let (k, v) = item
            .split_once('=')
            .ok_or_else(|| Error::InvalidParameter(format!("expected key=value, got '{item}'")))?;
        map.insert(k.trim().to_string(), v.trim().to_string());
    }
    Ok(map)
}

struct Params<'a>(&'a BTreeMap<String, String>);

impl Params<'_> {
    fn raw(&self, key: &str) -> Result<&str> {
        self.0
            .get(key)
            .map(String::as_str)
            .ok_or_else(|| Error::InvalidParameter(format!("missing parameter '{key}'")))
    }

    fn f64(&self, key: &str) -> Result<f64> {
        let v = self.raw(key)?;
        v.parse()
            .map_err(|_| Error::InvalidParameter(format!("parameter '{key}' = '{v}' is not a number")))
    }

    fn usize(&self, key: &str) -> Result<usize> {
        let v = self.raw(key)?;
        v.parse()
            .map_err(|_| Error::InvalidParameter(format!("parameter '{key}' = '{v}' is not an integer")))
    }

    fn usize_or(&self, key: &str, default: usize) -> Result<usize> {
        if self.0.contains_key(key) {
            self.usize(key)
        } else {
            Ok(default)
        }
    }
}

pub const FAMILIES: &[&str] = &[
    "flip", "reduction", "phi_p", "w_ab", "w_abc", "w_dk", "kossakowski", "breuer_hall", "block_2xn",
    "mub", "chsh", "three_qubit", "tiles_witness", "isotropic", "werner", "max_entangled",
    "maximally_mixed", "tiles", "ghz", "w_state",
];

/// Builds a catalog object and wraps it as a matrix file with provenance.
pub fn make(family: &str, params: &BTreeMap<String, String>) -> Result<MatrixFile> {
    let p = Params(params);
    let witness = |w: Witness| (w.op, MatrixKind::Witness, Some(w.family));
    let state = |op: BipartiteOperator| (op, MatrixKind::State, None);
    let pure = |s: PureState| (BipartiteOperator::projector(&s), MatrixKind::State, None);
    let (op, kind, tag) = match family {
        "flip" => witness(witnesses::flip_witness(p.usize("d")?)?),
        "reduction" => witness(witnesses::reduction_witness(p.usize("d")?)?),
        "phi_p" => witness(witnesses::phi_p_witness(p.usize("d")?, p.f64("p")?)?),
        "w_ab" => witness(witnesses::w_ab(p.f64("a")?, p.f64("b")?)?),
        "w_abc" => witness(witnesses::w_abc(p.f64("a")?, p.f64("b")?, p.f64("c")?)?),
        "w_dk" => witness(witnesses::w_dk(p.usize("d")?, p.usize("k")?)?),
        "kossakowski" => witness(witnesses::kossakowski_rotation(p.f64("angle")?)?),
        "breuer_hall" | "block_2xn" => {
            let n = p.usize("n")?;
            let kind = if family == "breuer_hall" { RobertsonKind::BreuerHall } else { RobertsonKind::Block2xN };
            let u = witnesses::antisymmetric_unitary_u0(n);
            witness(witnesses::robertson_breuer_hall(n, &u, kind)?.witness)
        }
        "mub" => {
            let d = p.usize("d")?;
            let bases = witnesses::prime_mubs(d)?;
            let m = p.usize_or("m", d + 1)?;
            witness(witnesses::mub_witness(&bases, &bases.conjugate(), m)?)
        }
        "chsh" => {
            let h = std::f64::consts::FRAC_1_SQRT_2;
            witness(witnesses::chsh_witness([0., 0., 1.], [1., 0., 0.], [h, 0., h], [h, 0., -h])?)
        }
        "three_qubit" => {
            let all = witnesses::three_qubit_witnesses();
            let w = match p.raw("kind")? {
                "w" => all.w,
                "w_prime" => all.w_prime,
                "w_double_prime" => all.w_double_prime,
                other => return Err(Error::InvalidParameter(format!("unknown three_qubit kind '{other}'"))),
            };
            witness(w)
        }
        "tiles_witness" => {
            let pi = states::family_projector(&tiles_upb())?;
            let opts = OptimOptions::with_seed(p.usize_or("seed", 0)? as u64);
            witness(witnesses::edge_steered_witness(Some(&pi), None, EdgeMode::MaxEntangled, &opts)?.witness)
        }
        "isotropic" => state(states::isotropic(p.usize("d")?, p.f64("p")?)?),
        "werner" => state(states::werner(p.usize("d")?, p.f64("p")?)?),
        "max_entangled" => pure(states::max_entangled(p.usize("d")?)?),
        "maximally_mixed" => {
            let (da, db) = (p.usize("d_a")?, p.usize("d_b")?);
            if da == 0 || db == 0 {
                return Err(Error::InvalidParameter("dimensions must be positive".into()));
            }
            state(BipartiteOperator::identity(da, db).scale(1.0 / (da * db) as f64))
        }
        "tiles" => {
            let x = states::upb_state(&tiles_upb())?;
            let tr = x.trace().re;
            state(x.scale(1.0 / tr))
        }
        "ghz" => pure(states::three_qubit_states().0),
        "w_state" => pure(states::three_qubit_states().1),
        other => {
            return Err(Error::InvalidParameter(format!(
                "unknown family '{other}'; known: {}",
                FAMILIES.join(", ")
            )))
        }
    };
    let mut meta = BTreeMap::new();
    meta.insert("family".to_string(), Value::from(family));
    meta.insert("params".to_string(), json!(params));
    meta.insert("version".to_string(), Value::from(env!("CARGO_PKG_VERSION")));
    if let Some(tag) = tag {
        meta.insert("family_tag".to_string(), serde_json::to_value(tag)?);
    }
    Ok(MatrixFile::from_operator(&op, kind, meta))
}

/// `(p, tr(W ρ_p))` on an evenly spaced grid.
pub fn sweep(family: &str, w: &BipartiteOperator, from: f64, to: f64, steps: usize) -> Result<Vec<(f64, f64)>> {
    if steps < 2 {
        return Err(Error::InvalidParameter("steps must be at least 2".into()));
    }
    let (da, db) = w.dims();
    if da != db {
        return Err(Error::DimensionMismatch(format!("{family} states need d_A = d_B, witness is {da}x{db}")));
    }
    (0..steps)
        .map(|i| {
            let p = from + (to - from) * i as f64 / (steps - 1) as f64;
            let rho = match family {
                "werner" => states::werner(da, p)?,
                "isotropic" => states::isotropic(da, p)?,
                other => return Err(Error::InvalidParameter(format!("unknown sweep family '{other}'"))),
            };
            Ok((p, classifier::detect(w, &rho)?))
        })
        .collect()
}

/// Linear interpolation of sign changes (exact zeros included once).
pub fn zero_crossings(rows: &[(f64, f64)]) -> Vec<f64> {
    let mut out = Vec::new();
    for (i, pair) in rows.windows(2).enumerate() {
        let ((p0, t0), (p1, t1)) = (pair[0], pair[1]);
        if t0 == 0.0 {
            if i == 0 || rows[i - 1].1 != 0.0 {
                out.push(p0);
            }
        } else if t0 * t1 < 0.0 {
            out.push(p0 - t0 * (p1 - p0) / (t1 - t0));
        }
    }
    if let Some(&(p, t)) = rows.last() {
        if t == 0.0 && rows.len() > 1 && rows[rows.len() - 2].1 != 0.0 {
            out.push(p);
        }
    }
    out
}

fn schmidt_summary(op: &BipartiteOperator, kind: MatrixKind) -> Result<Value> {
    op.require_hermitian()?;
    let coeffs: Vec<f64> = hermitian_operator_schmidt(op)?.iter().map(|t| t.coefficient).collect();
    let mut v = json!({ "d_a": op.d_a(), "d_b": op.d_b(), "operator_schmidt": coeffs });
    if kind == MatrixKind::State {
        let spec = op.spectrum()?;
        if spec.eigenvalues.iter().filter(|&&e| e > 1e-10).count() == 1 {
            let top = spec.eigenvectors.column(0).into_owned();
            let psi = PureState::new(top, op.d_a(), op.d_b())?;
            let s = psi.schmidt()?;
            v["pure_state_schmidt"] = json!(s.coefficients);
            v["schmidt_rank"] = json!(s.rank);
        }
    }
    Ok(v)
}
