//! `quivinv`: Kac polynomials, DT-invariants and Hall-pairing polynomials from the command line.
//!
//! Exit status is 0 on success, 1 on domain errors (bad input files or arguments) and 2 when a
//! computed result fails certification.

use std::fmt;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use quivinv::exactalg::LaurentPolyQ;
use quivinv::invariants::{
    dt_table_via_symfunc, dt_via_qseries, row_multipartition, InvariantsError, LegProfile, MasterSeries,
    SymmetricQuiverProblem,
};
use quivinv::oracle::{oracle_check, OracleError};
use quivinv::partitions::MultiPartition;
use quivinv::plethlog::Truncation;
use quivinv::quiver::{columns_multipartition, DimVector, Quiver, QuiverError};
use quivinv::selftest::{self, Level};
use quivinv::{cache, symfunc};

#[derive(Parser, Debug)]
#[command(name = "quivinv", version, about = "Kac polynomials, DT-invariants and Hall-pairing polynomials of quivers")]
struct Cli {
    /// Render polynomials as (exponent,coefficient) lists.
    #[arg(long, global = true)]
    machine: bool,
    /// Worker threads (default: all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Kac polynomial A_v(q), or A_μ(q) for a multipartition with one part per vertex.
    Kac(Query),
    /// DT-invariants. With --sym the quiver is the symmetric quiver itself.
    Dt(DtArgs),
    /// Hall-pairing polynomial H^s_μ(q).
    Hsm(Query),
    /// Coefficients of the master series in the power-sum basis.
    Series(Query),
    /// Classify dimension vectors as real roots, imaginary roots or non-roots.
    Roots(Query),
    /// Compare a finite-field count with the Kac polynomial.
    Oracle(OracleArgs),
    /// Run the built-in verification suites.
    Selftest(SelftestArgs),
}

#[derive(Args, Debug)]
struct Query {
    /// Quiver file (`vertices r`, then `arrow i j` lines, 1-based).
    #[arg(long)]
    quiver: PathBuf,
    /// Dimension vector, e.g. `2` or `1,1`.
    #[arg(long)]
    dim: Option<String>,
    /// Multipartition, one partition per slot, e.g. `[2,1];[1]`.
    #[arg(long)]
    mu: Option<String>,
    /// Legs per vertex (default all 1).
    #[arg(long)]
    legs: Option<String>,
    /// Truncation: a per-vertex list, or a scalar bound on the total degree.
    #[arg(long)]
    max: Option<String>,
}

#[derive(Args, Debug)]
struct DtArgs {
    #[command(flatten)]
    query: Query,
    /// Treat the quiver as a symmetric quiver and match it to a quiver with legs.
    #[arg(long)]
    sym: bool,
    /// Which computation to run (default: qseries with --sym, symfunc without).
    #[arg(long, value_enum)]
    route: Option<Route>,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum Route {
    /// q-series Log of the symmetric quiver (needs --sym).
    Qseries,
    /// Hall pairing with the master series.
    Symfunc,
}

#[derive(Args, Debug)]
struct OracleArgs {
    #[arg(long)]
    quiver: PathBuf,
    #[arg(long)]
    dim: String,
    /// Field orders, e.g. `2,3` (supported: 2, 3, 4, 5).
    #[arg(long, default_value = "2")]
    q: String,
}

#[derive(Args, Debug)]
struct SelftestArgs {
    #[arg(value_enum, default_value_t = LevelArg::Fast)]
    level: LevelArg,
    /// Seed for the randomized suites.
    #[arg(long, default_value_t = selftest::DEFAULT_SEED)]
    seed: u64,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum LevelArg {
    Fast,
    Full,
}

#[derive(Debug)]
enum CliError {
    Domain(String),
    Certification(String),
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Domain(_) => 1,
            CliError::Certification(_) => 2,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Domain(m) => write!(f, "error: {m}"),
            CliError::Certification(m) => write!(f, "certification failure: {m}"),
        }
    }
}

impl From<InvariantsError> for CliError {
    fn from(e: InvariantsError) -> Self {
        match e {
            InvariantsError::NonPolynomial { .. } | InvariantsError::IdentityFailure(_) => {
                CliError::Certification(e.to_string())
            }
            _ => CliError::Domain(e.to_string()),
        }
    }
}

impl From<QuiverError> for CliError {
    fn from(e: QuiverError) -> Self {
        CliError::Domain(e.to_string())
    }
}

impl From<OracleError> for CliError {
    fn from(e: OracleError) -> Self {
        match e {
            OracleError::NotIntegral { .. } => CliError::Certification(e.to_string()),
            OracleError::Invariants(inner) => inner.into(),
            _ => CliError::Domain(e.to_string()),
        }
    }
}

fn domain(msg: impl Into<String>) -> CliError {
    CliError::Domain(msg.into())
}

fn parse_list(flag: &str, s: &str) -> Result<Vec<usize>, CliError> {
    s.split(',')
        .map(|x| {
            x.trim()
                .parse::<usize>()
                .map_err(|_| domain(format!("--{flag}: `{s}` is not a comma-separated list of non-negative integers")))
        })
        .collect()
}

fn read_quiver(path: &PathBuf) -> Result<Quiver, CliError> {
    let text = std::fs::read_to_string(path).map_err(|e| domain(format!("{}: {e}", path.display())))?;
    Quiver::parse(&text).map_err(|e| domain(format!("{}: {e}", path.display())))
}

fn check_len(flag: &str, v: &[usize], r: usize) -> Result<(), CliError> {
    if v.len() != r {
        return Err(domain(format!("--{flag} has {} entries, quiver has {r} vertices", v.len())));
    }
    Ok(())
}

/// Validated arguments shared by the quiver subcommands.
struct Input {
    quiver: Quiver,
    dim: Option<DimVector>,
    mu: Option<MultiPartition>,
    legs: Option<Vec<usize>>,
    max: Option<Truncation>,
}

impl Input {
    fn from_query(q: &Query) -> Result<Self, CliError> {
        let quiver = read_quiver(&q.quiver)?;
        let r = quiver.num_vertices();
        let dim = q.dim.as_deref().map(|s| parse_list("dim", s)).transpose()?;
        if let Some(v) = &dim {
            check_len("dim", v, r)?;
        }
        let legs_list = q.legs.as_deref().map(|s| parse_list("legs", s)).transpose()?;
        if let Some(k) = &legs_list {
            check_len("legs", k, r)?;
        }
        let mu = q
            .mu
            .as_deref()
            .map(|s| {
                s.parse::<MultiPartition>()
                    .map_err(|e| domain(format!("--mu: `{s}`: {e}")))
            })
            .transpose()?;
        let max = q
            .max
            .as_deref()
            .map(|s| {
                let b = parse_list("max", s)?;
                match b.as_slice() {
                    [n] if r != 1 => Ok::<_, CliError>(Truncation::new(vec![*n; r], Some(*n))),
                    _ => {
                        check_len("max", &b, r)?;
                        Ok(Truncation::boxed(b))
                    }
                }
            })
            .transpose()?;
        Ok(Self {
            quiver,
            dim,
            mu,
            legs: legs_list,
            max,
        })
    }

    fn leg_profile(&self) -> Result<LegProfile, CliError> {
        match &self.legs {
            Some(k) => Ok(LegProfile::new(k.clone())?),
            None => Ok(LegProfile::ones(self.quiver.num_vertices())),
        }
    }

    fn single_mode(&self, what: &str, allow_mu: bool) -> Result<(), CliError> {
        let given = [self.dim.is_some(), self.mu.is_some(), self.max.is_some()]
            .iter()
            .filter(|&&x| x)
            .count();
        if given != 1 {
            let opts = if allow_mu { "--dim, --mu or --max" } else { "--dim or --max" };
            return Err(domain(format!("{what} needs exactly one of {opts}")));
        }
        if !allow_mu && self.mu.is_some() {
            return Err(domain(format!("{what} does not take --mu")));
        }
        Ok(())
    }

    fn nonzero(v: &[usize]) -> Result<(), CliError> {
        if v.iter().all(|&x| x == 0) {
            return Err(domain("dimension vector must be non-zero"));
        }
        Ok(())
    }
}

struct Out {
    machine: bool,
    lines: Vec<String>,
}

impl Out {
    fn poly(&self, p: &LaurentPolyQ) -> String {
        if self.machine {
            p.to_machine_string()
        } else {
            p.to_string()
        }
    }

    fn push(&mut self, line: String) {
        self.lines.push(line);
    }

    fn value(&mut self, name: &str, p: &LaurentPolyQ) {
        let s = format!("{name}={}", self.poly(p));
        self.push(s);
    }

    fn row(&mut self, v: &[usize], name: &str, p: &LaurentPolyQ) {
        let s = format!("v={} {name}={}", join(v), self.poly(p));
        self.push(s);
    }
}

fn join(v: &[usize]) -> String {
    v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")
}

fn nonzero_keys(t: &Truncation) -> Vec<DimVector> {
    t.keys().into_iter().filter(|v| v.iter().any(|&x| x > 0)).collect()
}

/// The smallest box containing `v`.
fn box_of(v: &[usize]) -> Truncation {
    Truncation::boxed(v.to_vec())
}

fn run_kac(q: &Query, out: &mut Out) -> Result<(), CliError> {
    let input = Input::from_query(q)?;
    input.single_mode("kac", true)?;
    if input.legs.as_ref().is_some_and(|k| k.iter().any(|&k| k != 1)) {
        return Err(domain("kac uses one leg per vertex; drop --legs"));
    }
    let r = input.quiver.num_vertices();
    let legs = LegProfile::ones(r);
    if let Some(v) = &input.dim {
        Input::nonzero(v)?;
        let ms = MasterSeries::new(&input.quiver, &legs, &box_of(v))?;
        out.value("A", &ms.kac_poly(&row_multipartition(v))?);
    } else if let Some(mu) = &input.mu {
        if mu.num_slots() != r {
            return Err(domain(format!("--mu has {} slots, quiver has {r} vertices", mu.num_slots())));
        }
        let v = mu.sizes();
        Input::nonzero(&v)?;
        let ms = MasterSeries::new(&input.quiver, &legs, &box_of(&v))?;
        out.value("A", &ms.kac_poly(mu)?);
    } else if let Some(t) = &input.max {
        let ms = MasterSeries::new(&input.quiver, &legs, t)?;
        for v in nonzero_keys(t) {
            out.row(&v, "A", &ms.kac_poly(&row_multipartition(&v))?);
        }
    }
    Ok(())
}

fn run_dt(a: &DtArgs, out: &mut Out) -> Result<(), CliError> {
    let input = Input::from_query(&a.query)?;
    input.single_mode("dt", false)?;
    let t = match (&input.dim, &input.max) {
        (Some(v), _) => {
            Input::nonzero(v)?;
            box_of(v)
        }
        (None, Some(t)) => t.clone(),
        _ => unreachable!("checked by single_mode"),
    };
    let table = if a.sym {
        let p = if let Some(k) = &input.legs {
            SymmetricQuiverProblem::new(input.quiver.clone(), k.clone())?
        } else {
            SymmetricQuiverProblem::with_default_weights(input.quiver.clone())?
        };
        match a.route.unwrap_or(Route::Qseries) {
            Route::Qseries => dt_via_qseries(&p, &t)?,
            Route::Symfunc => dt_table_via_symfunc(&p, &t)?,
        }
    } else {
        if a.route == Some(Route::Qseries) {
            return Err(domain("--route qseries needs --sym"));
        }
        let ms = MasterSeries::new(&input.quiver, &input.leg_profile()?, &t)?;
        let mut table = std::collections::BTreeMap::new();
        for v in nonzero_keys(&t) {
            table.insert(v.clone(), ms.hs_columns(&v)?);
        }
        table
    };
    match &input.dim {
        Some(v) => out.value("DT", &table[v]),
        None => {
            for v in nonzero_keys(&t) {
                out.row(&v, "DT", &table[&v]);
            }
        }
    }
    Ok(())
}

fn run_hsm(q: &Query, out: &mut Out) -> Result<(), CliError> {
    let input = Input::from_query(q)?;
    input.single_mode("hsm", true)?;
    let legs = input.leg_profile()?;
    let k = legs.k().to_vec();
    if let Some(mu) = &input.mu {
        if mu.num_slots() != legs.num_slots() {
            return Err(domain(format!(
                "--mu has {} slots, the leg profile has {}",
                mu.num_slots(),
                legs.num_slots()
            )));
        }
        let h = quivinv::invariants::hs_mu(&input.quiver, &legs, mu)?;
        out.value("H", &h);
    } else if let Some(v) = &input.dim {
        Input::nonzero(v)?;
        let ms = MasterSeries::new(&input.quiver, &legs, &box_of(v))?;
        out.value("H", &ms.hs_mu(&columns_multipartition(&k, v))?);
    } else if let Some(t) = &input.max {
        let ms = MasterSeries::new(&input.quiver, &legs, t)?;
        for v in nonzero_keys(t) {
            out.row(&v, "H", &ms.hs_mu(&columns_multipartition(&k, &v))?);
        }
    }
    Ok(())
}

fn run_series(q: &Query, out: &mut Out) -> Result<(), CliError> {
    let input = Input::from_query(q)?;
    if input.dim.is_some() || input.mu.is_some() {
        return Err(domain("series takes --max only"));
    }
    let t = input.max.clone().ok_or_else(|| domain("series needs --max"))?;
    let ms = MasterSeries::new(&input.quiver, &input.leg_profile()?, &t)?;
    for v in nonzero_keys(&t) {
        let c: symfunc::HomogSymFunc = ms.series().coeff_or_zero(&v);
        if c.is_zero() {
            continue;
        }
        if out.machine {
            for (key, coeff) in c.terms() {
                out.push(format!("v={} p={key} c={coeff}", join(&v)));
            }
        } else {
            out.push(format!("v={} H={c}", join(&v)));
        }
    }
    Ok(())
}

fn run_roots(q: &Query, out: &mut Out) -> Result<(), CliError> {
    let input = Input::from_query(q)?;
    input.single_mode("roots", false)?;
    if let Some(v) = &input.dim {
        out.push(input.quiver.classify_root(v)?.to_string());
    } else if let Some(t) = &input.max {
        for v in nonzero_keys(t) {
            let class = input.quiver.classify_root(&v)?;
            out.push(format!("v={} root={class}", join(&v)));
        }
    }
    Ok(())
}

fn run_oracle(a: &OracleArgs, out: &mut Out) -> Result<bool, CliError> {
    let quiver = read_quiver(&a.quiver)?;
    let v = parse_list("dim", &a.dim)?;
    check_len("dim", &v, quiver.num_vertices())?;
    Input::nonzero(&v)?;
    let qs = parse_list("q", &a.q)?;
    let mut fields = Vec::new();
    for q in qs {
        match u8::try_from(q) {
            Ok(q @ (2 | 3 | 4 | 5)) => fields.push(q),
            _ => return Err(domain(format!("--q: unsupported field order {q} (supported: 2, 3, 4, 5)"))),
        }
    }
    let mut all = true;
    for q in fields {
        let r = oracle_check(&quiver, &v, q)?;
        all &= r.matches();
        out.push(r.to_string());
    }
    Ok(all)
}

fn run(cli: &Cli, out: &mut Out) -> Result<(), CliError> {
    match &cli.command {
        Command::Kac(q) => run_kac(q, out),
        Command::Dt(a) => run_dt(a, out),
        Command::Hsm(q) => run_hsm(q, out),
        Command::Series(q) => run_series(q, out),
        Command::Roots(q) => run_roots(q, out),
        Command::Oracle(a) => {
            if run_oracle(a, out)? {
                Ok(())
            } else {
                Err(CliError::Certification("finite-field count differs from the Kac polynomial".into()))
            }
        }
        Command::Selftest(a) => {
            let level = match a.level {
                LevelArg::Fast => Level::Fast,
                LevelArg::Full => Level::Full,
            };
            let report = selftest::run(level, a.seed);
            out.push(report.to_string());
            if report.passed() {
                Ok(())
            } else {
                Err(CliError::Certification("selftest failed".into()))
            }
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    if let Some(n) = cli.threads {
        if n == 0 {
            eprintln!("error: --threads must be at least 1");
            return ExitCode::from(1);
        }
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n).build_global() {
            eprintln!("warning: could not configure thread pool: {e}");
        }
    }
    if let Err(e) = cache::load_from_env() {
        eprintln!("warning: ignoring cache: {e}");
    }
    let mut out = Out {
        machine: cli.machine,
        lines: Vec::new(),
    };
    let result = run(&cli, &mut out);
    // A closed pipe (e.g. `| head`) just ends the output.
    let mut stdout = io::stdout().lock();
    for line in &out.lines {
        if writeln!(stdout, "{line}").is_err() {
            break;
        }
    }
    drop(stdout);
    if let Err(e) = cache::save_to_env() {
        eprintln!("warning: could not save cache: {e}");
    }
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("{e}");
            ExitCode::from(e.exit_code())
        }
    }
}
