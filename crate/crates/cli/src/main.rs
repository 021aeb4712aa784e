use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use wickenum::census::{census, GraphFilter};
use wickenum::integrands::{integrate_spec, IntegrandKind, IntegrandSpec};
use wickenum::verify::{self, Identity, Report, SOfN, VerifyConfig};
use wickenum::{Error, ExactPoly};

mod output;

use output::{census_csv, integrate_csv, planar_csv, report_csv};

const EXIT_CONFIG: u8 = 1;
const EXIT_SCALE: u8 = 2;
const EXIT_MISMATCH: u8 = 3;

#[derive(Parser)]
#[command(name = "wickenum", version, about = "Exact Gaussian matrix integrals and graph censuses")]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Worker threads (defaults to all cores). Output does not depend on it.
    #[arg(long, global = true)]
    jobs: Option<usize>,
    /// Write to this file instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Subcommand)]
enum Command {
    /// Integrate one of the five integrands exactly.
    Integrate(IntegrateArgs),
    /// Check a named identity by independent computations.
    Verify(VerifyArgs),
    /// Dump graph classes as JSON lines.
    Census(CensusArgs),
    /// Tabulate p(n, r) against the coefficients extracted from ⟨η⟩.
    PlanarCount(PlanarArgs),
    /// Map counts against log⟨ψ⟩ (same as `verify bipz`).
    Maps(MapsArgs),
}

/// A matrix dimension, `None` for symbolic `N`.
#[derive(Clone, Copy)]
struct Dim(Option<u16>);

/// `--n` takes a dimension or `symbolic`.
fn parse_n(s: &str) -> Result<Dim, String> {
    if s == "symbolic" || s == "N" {
        return Ok(Dim(None));
    }
    s.parse::<u16>()
        .map(|n| Dim(Some(n)))
        .map_err(|_| format!("expected a dimension or `symbolic`, got `{s}`"))
}

/// A comma-separated list given as one argument.
#[derive(Clone)]
struct List<T>(Vec<T>);

fn parse_list<T: std::str::FromStr>(s: &str) -> Result<List<T>, String> {
    s.split(',')
        .filter(|t| !t.is_empty())
        .map(|t| t.trim().parse().map_err(|_| format!("bad list entry `{t}`")))
        .collect::<Result<_, _>>()
        .map(List)
}

fn parse_u32_list(s: &str) -> Result<List<u32>, String> {
    parse_list(s)
}

fn parse_u16_list(s: &str) -> Result<List<u16>, String> {
    parse_list(s)
}

/// `a..b` (inclusive) or a single size.
fn parse_range(s: &str) -> Result<(usize, usize), String> {
    let bad = || format!("expected `lo..hi` or a number, got `{s}`");
    match s.split_once("..") {
        Some((a, b)) => {
            let b = b.strip_prefix('=').unwrap_or(b);
            Ok((a.parse().map_err(|_| bad())?, b.parse().map_err(|_| bad())?))
        }
        None => {
            let k = s.parse().map_err(|_| bad())?;
            Ok((k, k))
        }
    }
}

fn parse_s_of_n(s: &str) -> Result<SOfN, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

#[derive(Clone, Copy, ValueEnum)]
enum Kind {
    Psi,
    Omega,
    Zeta,
    Eta,
    Xi,
}

impl From<Kind> for IntegrandKind {
    fn from(k: Kind) -> Self {
        match k {
            Kind::Psi => IntegrandKind::Psi,
            Kind::Omega => IntegrandKind::Omega,
            Kind::Zeta => IntegrandKind::Zeta,
            Kind::Eta => IntegrandKind::Eta,
            Kind::Xi => IntegrandKind::Xi,
        }
    }
}

#[derive(Args)]
struct IntegrateArgs {
    #[arg(long, value_enum)]
    kind: Kind,
    /// Matrix dimension, or `symbolic`.
    #[arg(long, value_parser = parse_n, default_value = "symbolic")]
    n: Dim,
    #[arg(long, default_value_t = 0)]
    r: usize,
    #[arg(long, default_value_t = 0)]
    max_edges: usize,
    #[arg(long, default_value_t = 0)]
    max_z_order: usize,
    /// Vertex degrees for ψ, comma separated.
    #[arg(long, value_parser = parse_u32_list)]
    degrees: Option<List<u32>>,
    /// Vertex bound for symbolic ξ.
    #[arg(long)]
    n_max: Option<u16>,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(value_parser = |s: &str| s.parse::<Identity>().map_err(|e| e.to_string()))]
    identity: Identity,
    #[arg(long, value_parser = parse_n, default_value = "symbolic")]
    n: Dim,
    #[arg(long)]
    n_max: Option<u16>,
    #[arg(long)]
    r: Option<usize>,
    #[arg(long)]
    max_edges: Option<usize>,
    #[arg(long)]
    max_m_degree: Option<usize>,
    #[arg(long)]
    max_z_order: Option<usize>,
    #[arg(long, value_parser = parse_u32_list)]
    degrees: Option<List<u32>>,
    /// Coin multiset sizes, e.g. `2..7`.
    #[arg(long, value_parser = parse_range)]
    total: Option<(usize, usize)>,
    /// Number of Witt variables.
    #[arg(long)]
    k: Option<usize>,
    /// Total degree of the Witt product.
    #[arg(long)]
    max_degree: Option<usize>,
    /// Matrix dimensions for the convergence sweep, comma separated.
    #[arg(long, value_parser = parse_u16_list)]
    sweep: Option<List<u16>>,
    #[arg(long, value_parser = parse_s_of_n, default_value = "sqrt")]
    s_of_n: SOfN,
}

impl VerifyArgs {
    fn config(&self) -> VerifyConfig {
        VerifyConfig {
            n: self.n.0,
            n_max: self.n_max,
            r: self.r,
            max_edges: self.max_edges,
            max_m_degree: self.max_m_degree,
            max_z_order: self.max_z_order,
            degrees: self.degrees.clone().map(|l| l.0).unwrap_or_default(),
            totals: self.total,
            k: self.k,
            max_degree: self.max_degree,
            sweep: self.sweep.clone().map(|l| l.0).unwrap_or_default(),
            s_of_n: self.s_of_n,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum Filter {
    All,
    Connected,
    Nimple,
}

#[derive(Args)]
struct CensusArgs {
    #[arg(long, default_value_t = 4)]
    n_max: usize,
    #[arg(long, value_enum, default_value_t = Filter::Connected)]
    filter: Filter,
    /// Attach TDC profiles and DCDC classes.
    #[arg(long)]
    dcdc: bool,
}

#[derive(Args)]
struct PlanarArgs {
    #[arg(long, default_value_t = 4)]
    n_max: usize,
    #[arg(long, value_parser = parse_u16_list, default_value = "4,6,8")]
    sweep: List<u16>,
    #[arg(long, value_parser = parse_s_of_n, default_value = "sqrt")]
    s_of_n: SOfN,
}

#[derive(Args)]
struct MapsArgs {
    #[arg(long, value_parser = parse_u32_list)]
    degrees: Option<List<u32>>,
    #[arg(long)]
    max_z_order: Option<usize>,
}

#[derive(Serialize)]
struct IntegrateOutput<'a> {
    spec: &'a IntegrandSpec,
    value: String,
    terms: &'a ExactPoly,
}

enum Failure {
    Engine(Error),
    Io(std::io::Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Engine(e)
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Io(e)
    }
}

impl From<csv::Error> for Failure {
    fn from(e: csv::Error) -> Self {
        Failure::Io(e.into())
    }
}

fn json_line<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("report types serialize");
    s.push('\n');
    s
}

fn emit_report(report: &Report, format: Format) -> Result<String, Failure> {
    Ok(match format {
        Format::Json => json_line(report),
        Format::Csv => report_csv(report)?,
    })
}

fn run(cli: &Cli) -> Result<(String, bool), Failure> {
    let format = cli.format;
    match &cli.command {
        Command::Integrate(a) => {
            let spec = IntegrandSpec {
                kind: a.kind.into(),
                n: a.n.0,
                r: a.r,
                max_edges: a.max_edges,
                max_z_order: a.max_z_order,
                degrees: a.degrees.clone().map(|l| l.0).unwrap_or_default(),
                n_max: a.n_max,
            };
            let value = integrate_spec(&spec)?;
            let text = match format {
                Format::Json => json_line(&IntegrateOutput {
                    spec: &spec,
                    value: value.to_string(),
                    terms: &value,
                }),
                Format::Csv => integrate_csv(&value)?,
            };
            Ok((text, true))
        }
        Command::Verify(a) => {
            let report = verify::run(a.identity, &a.config())?;
            Ok((emit_report(&report, format)?, report.passed()))
        }
        Command::Maps(a) => {
            let cfg = VerifyConfig {
                degrees: a.degrees.clone().map(|l| l.0).unwrap_or_default(),
                max_z_order: a.max_z_order,
                ..VerifyConfig::default()
            };
            let report = verify::run(Identity::Bipz, &cfg)?;
            Ok((emit_report(&report, format)?, report.passed()))
        }
        Command::Census(a) => {
            let filter = match a.filter {
                Filter::All => GraphFilter::All,
                Filter::Connected => GraphFilter::Connected,
                Filter::Nimple => GraphFilter::Nimple,
            };
            let entries = census(a.n_max, filter, a.dcdc)?;
            let text = match format {
                Format::Json => entries
                    .iter()
                    .map(|e| serde_json::to_string(e).expect("census entries serialize") + "\n")
                    .collect(),
                Format::Csv => census_csv(&entries)?,
            };
            Ok((text, true))
        }
        Command::PlanarCount(a) => {
            let table = verify::planar_table(a.n_max, &a.sweep.0, a.s_of_n)?;
            let text = match format {
                Format::Json => json_line(&table),
                Format::Csv => planar_csv(&table)?,
            };
            Ok((text, true))
        }
    }
}

/// What a run prints and how it exits.
struct Outcome {
    code: u8,
    stdout: String,
    stderr: String,
}

fn execute<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let fail = |code: u8, msg: String| Outcome {
        code,
        stdout: String::new(),
        stderr: msg,
    };
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) if e.use_stderr() => return fail(EXIT_CONFIG, e.render().to_string()),
        Err(e) => {
            return Outcome {
                code: 0,
                stdout: e.render().to_string(),
                stderr: String::new(),
            }
        }
    };
    let pool = match cli.jobs {
        Some(0) => return fail(EXIT_CONFIG, "error: --jobs must be at least 1\n".into()),
        Some(jobs) => match rayon::ThreadPoolBuilder::new().num_threads(jobs).build() {
            Ok(pool) => Some(pool),
            Err(e) => return fail(EXIT_CONFIG, format!("error: {e}\n")),
        },
        None => None,
    };
    let result = match &pool {
        Some(pool) => pool.install(|| run(&cli)),
        None => run(&cli),
    };
    let (text, passed) = match result {
        Ok(r) => r,
        Err(Failure::Engine(e)) => {
            let code = match e {
                Error::ScaleExceeded { .. } => EXIT_SCALE,
                _ => EXIT_CONFIG,
            };
            return fail(code, format!("error: {e}\n"));
        }
        Err(Failure::Io(e)) => return fail(EXIT_CONFIG, format!("error: {e}\n")),
    };
    let code = if passed { 0 } else { EXIT_MISMATCH };
    match &cli.out {
        Some(path) => match std::fs::write(path, &text) {
            Ok(()) => Outcome {
                code,
                stdout: String::new(),
                stderr: String::new(),
            },
            Err(e) => fail(EXIT_CONFIG, format!("error: {}: {e}\n", path.display())),
        },
        None => Outcome {
            code,
            stdout: text,
            stderr: String::new(),
        },
    }
}

fn main() -> ExitCode {
    let outcome = execute(std::env::args_os());
    print!("{}", outcome.stdout);
    eprint!("{}", outcome.stderr);
    let _ = std::io::stdout().flush();
    ExitCode::from(outcome.code)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn wk(args: &str) -> Outcome {
        execute(std::iter::once("wickenum").chain(args.split_whitespace()))
    }

    fn json(args: &str) -> serde_json::Value {
        let out = wk(args);
        assert_eq!(out.code, 0, "{}", out.stderr);
        serde_json::from_str(&out.stdout).unwrap()
    }

    #[test]
    fn exit_codes() {
        assert_eq!(wk("verify coin").code, 0);
        assert_eq!(wk("verify nonsense").code, EXIT_CONFIG);
        assert_eq!(wk("integrate --kind omega --n banana").code, EXIT_CONFIG);
        assert_eq!(wk("--jobs 0 verify coin").code, EXIT_CONFIG);
        assert_eq!(wk("verify coin --total 1..3").code, EXIT_CONFIG);
        assert_eq!(wk("integrate --kind omega --max-edges 40").code, EXIT_SCALE);
        assert_eq!(wk("verify planar-convergence").code, EXIT_MISMATCH);
        let help = wk("--help");
        assert_eq!(help.code, 0);
        assert!(help.stdout.contains("planar-count"));
    }

    #[test]
    fn integrate_values() {
        let v = json("integrate --kind omega --r 1 --max-edges 2");
        assert_eq!(v["value"], "-1/2*y + 1/2*N*y");
        let v = json("integrate --kind xi --n 3");
        assert_eq!(v["value"], "28/27");
        let out = wk("--format csv integrate --kind zeta --n 2 --max-edges 2");
        assert_eq!(out.stdout, "monomial,coefficient\n1,1\ny*x,1/2\n");
    }

    #[test]
    fn census_lines() {
        let lines = |args| wk(args).stdout.lines().count();
        assert_eq!(lines("census --n-max 3"), 4);
        assert_eq!(lines("census --n-max 2 --filter nimple"), 1);
        let dcdc = wk("census --n-max 4 --dcdc");
        let k4 = dcdc
            .stdout
            .lines()
            .map(|l| serde_json::from_str::<serde_json::Value>(l).unwrap())
            .find(|e| e["graph"]["edges"].as_array().unwrap().len() == 6)
            .expect("K4 is listed");
        assert_eq!(k4["aut_order"], 24);
        assert!(k4.get("dcdc_orbits").is_some());
    }

    #[test]
    fn planar_counts() {
        let t = json("planar-count --n-max 4");
        let p = |n: u64, r: u64| {
            t["rows"]
                .as_array()
                .unwrap()
                .iter()
                .find(|row| row["n"] == n && row["r"] == r)
                .map(|row| row["p"].as_u64().unwrap())
        };
        assert_eq!(p(3, 1), Some(3));
        assert_eq!(p(3, 2), Some(1));
        assert_eq!(p(4, 1), Some(16));
        let totals = t["p_totals"].as_array().unwrap();
        assert_eq!(totals.last().unwrap(), &serde_json::json!([4, 38]));
        let csv = wk("--format csv planar-count --n-max 3 --sweep 4,8").stdout;
        assert!(csv.starts_with("n,r,p,value_N4,value_N8,residual_N4,residual_N8\n"));
        assert!(csv.contains("\n3,total,4,,,,\n"));
    }

    #[test]
    fn report_csv_and_out_file() {
        let out = wk("--format csv verify witt --k 2 --max-degree 3");
        assert_eq!(
            out.stdout,
            "identity,n,degree_bound,status,case,monomial,lhs,rhs\nwitt,symbolic,3,PASS,,,,\n"
        );
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("r.json");
        let out = wk(&format!("verify coin --total 2..4 --out {}", path.display()));
        assert_eq!(out.code, 0);
        assert!(out.stdout.is_empty());
        let v: serde_json::Value =
            serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
        assert_eq!(v["status"], "PASS");
        assert_eq!(v["identity"], "coin");
    }

    #[test]
    fn jobs_do_not_change_output() {
        let one = wk("--jobs 1 verify main7 --max-edges 4").stdout;
        let four = wk("--jobs 4 verify main7 --max-edges 4").stdout;
        assert_eq!(one, four);
    }
}
