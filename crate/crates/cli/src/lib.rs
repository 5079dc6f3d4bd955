//! Command implementations for the `kmcheck` binary.
//!
//! Every command renders into a [`Output`] (stdout text plus exit code) so
//! the commands can be tested without spawning a process.

pub mod bench;

use std::fmt::Write as _;
use std::sync::atomic::{AtomicU64, Ordering};
use std::time::Instant;

use brieskorn_core::invariants::{km_verify, KmRecord};
use brieskorn_core::lattice::{interval_census, IntervalCount};
use brieskorn_core::sums::{rademacher_sum, rademacher_sum_fast};
use brieskorn_core::sweep::{verify_range, SweepSummary};
use brieskorn_core::{derive, Error, RademacherParams, Rational, Verdict};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

pub const EXIT_OK: u8 = 0;
pub const EXIT_FAILED: u8 = 1;
pub const EXIT_INVALID: u8 = 2;

const CSV_HELP: &str = "\
CSV columns (fixed order):
  info     a,A,b,beta,q,kappa,rho,m,gamma,C,F,F_seifert_form,sigma,lambda,chi_sw,lhs,rhs,epsilon,div8_F,div8_sigma,div16_sum,verdict
           (list fields are space-separated)
  verify   n,max_product,checked,passed,failed,first_failure
  sums     h,k,x,y,value
  lattice  lo,hi,count   (one row per open interval of q)
  bench    k,direct_time,fast_time,values_equal   (times in seconds)";

/// Exact invariants of Brieskorn homology spheres.
#[derive(Debug, Parser)]
#[command(name = "kmcheck", version, after_help = CSV_HELP)]
pub struct RunConfig {
    #[command(subcommand)]
    pub command: Command,

    /// Output format; each command has its own default.
    #[arg(long, value_enum, global = true)]
    pub format: Option<Format>,

    /// Worker threads for range scans [default: available parallelism].
    #[arg(long, global = true, value_parser = clap::value_parser!(u64).range(1..))]
    pub workers: Option<u64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Full invariant report for one tuple (n = 3 or 4).
    Info(TupleArgs),
    /// Check every sorted pairwise-coprime tuple with product <= --max-product.
    Verify(VerifyArgs),
    /// Evaluate s(h,k) or s(h,k;x,y) exactly.
    Sums(SumsArgs),
    /// Lattice census of the parallelepiped and simplex (n = 3 or 4).
    Lattice(TupleArgs),
    /// Time direct summation against the reciprocity descent.
    Bench(BenchArgs),
}

#[derive(Debug, Args)]
pub struct TupleArgs {
    /// Fiber orders a_1 ... a_n.
    #[arg(required = true)]
    pub tuple: Vec<u64>,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[arg(long)]
    pub n: usize,
    #[arg(long)]
    pub max_product: u64,
}

#[derive(Debug, Args)]
pub struct SumsArgs {
    #[arg(allow_negative_numbers = true)]
    pub h: i64,
    pub k: u64,
    /// Shift x as "p/q".
    #[arg(long, allow_negative_numbers = true)]
    pub x: Option<String>,
    /// Shift y as "p/q".
    #[arg(long, allow_negative_numbers = true)]
    pub y: Option<String>,
    /// Use the reciprocity descent (requires gcd(h,k) = 1).
    #[arg(long)]
    pub fast: bool,
    /// With --fast, skip the cross-check against direct summation.
    #[arg(long)]
    pub no_check: bool,
}

#[derive(Debug, Args)]
pub struct BenchArgs {
    #[arg(long)]
    pub max_k: u64,
    #[arg(long, default_value_t = 20)]
    pub trials: u64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

/// Rendered result of a command.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Output {
    pub stdout: String,
    pub stderr: String,
    pub code: u8,
}

impl Output {
    fn ok(stdout: String) -> Self {
        Output {
            stdout,
            stderr: String::new(),
            code: EXIT_OK,
        }
    }

    fn invalid(message: impl std::fmt::Display) -> Self {
        Output {
            stdout: String::new(),
            stderr: format!("error: {message}\n"),
            code: EXIT_INVALID,
        }
    }

    fn with_code(mut self, code: u8) -> Self {
        self.code = code;
        self
    }
}

pub fn run(config: &RunConfig) -> Output {
    match &config.command {
        Command::Info(args) => cmd_info(&args.tuple, config.format.unwrap_or(Format::Json)),
        Command::Verify(args) => cmd_verify(
            args.n,
            args.max_product,
            config.workers.map(|w| w as usize),
            config.format.unwrap_or(Format::Json),
        ),
        Command::Sums(args) => cmd_sums(args, config.format.unwrap_or(Format::Text)),
        Command::Lattice(args) => cmd_lattice(&args.tuple, config.format.unwrap_or(Format::Json)),
        Command::Bench(args) => bench::cmd_bench(args, config.format.unwrap_or(Format::Csv)),
    }
}

fn join(values: &[u64], sep: &str) -> String {
    values
        .iter()
        .map(u64::to_string)
        .collect::<Vec<_>>()
        .join(sep)
}

fn dimension_error(n: usize) -> Output {
    Output::invalid(format!("theorem verified only for n=3,4 (got n={n})"))
}

pub fn cmd_info(tuple: &[u64], format: Format) -> Output {
    let data = match derive(tuple) {
        Ok(d) => d,
        Err(e) => return Output::invalid(e),
    };
    let report = match km_verify(&data) {
        Ok(r) => r,
        Err(Error::UnsupportedDimension(n)) => return dimension_error(n),
        Err(e) => return Output::invalid(e),
    };
    let record = report.to_record();
    let stdout = match format {
        Format::Json => serde_json::to_string(&record).expect("record serializes") + "\n",
        Format::Csv => info_csv(&record),
        Format::Text => {
            let mut s = String::new();
            let _ = writeln!(s, "Σ({})", join(&record.a, ","));
            let _ = writeln!(s, "A = {}  κ = {}  ρ = {}  m = {}", record.product, record.kappa, record.rho, record.m);
            let _ = writeln!(s, "b = [{}]  β = [{}]  q = [{}]  γ = [{}]",
                join(&record.b, ", "), join(&record.beta, ", "), join(&record.q, ", "), join(&record.gamma, ", "));
            let _ = writeln!(s, "C = {}  χ_SW = {}", record.c, record.chi_sw);
            let _ = writeln!(s, "F = {} (Seifert form {})  σ = {}  λ = {}", record.ff, record.ff_seifert_form, record.sigma, record.lambda);
            let _ = writeln!(s, "-16C = {}  F+σ = {}  ε = {}", record.lhs, record.rhs, record.epsilon);
            let _ = writeln!(s, "8 | F: {}  8 | σ: {}  16 | F+σ: {}", record.div8_f, record.div8_sigma, record.div16_sum);
            for problem in report.failures() {
                let _ = writeln!(s, "  ! {problem}");
            }
            let _ = writeln!(s, "verdict: {}", verdict_str(record.verdict));
            s
        }
    };
    let code = if record.verdict == Verdict::Pass { EXIT_OK } else { EXIT_FAILED };
    Output::ok(stdout).with_code(code)
}

fn verdict_str(v: Verdict) -> &'static str {
    match v {
        Verdict::Pass => "pass",
        Verdict::Fail => "fail",
    }
}

fn info_csv(r: &KmRecord) -> String {
    let header = "a,A,b,beta,q,kappa,rho,m,gamma,C,F,F_seifert_form,sigma,lambda,chi_sw,lhs,rhs,epsilon,div8_F,div8_sigma,div16_sum,verdict";
    let row = [
        join(&r.a, " "),
        r.product.to_string(),
        join(&r.b, " "),
        join(&r.beta, " "),
        join(&r.q, " "),
        r.kappa.to_string(),
        r.rho.to_string(),
        r.m.to_string(),
        join(&r.gamma, " "),
        r.c.to_string(),
        r.ff.to_string(),
        r.ff_seifert_form.to_string(),
        r.sigma.to_string(),
        r.lambda.to_string(),
        r.chi_sw.to_string(),
        r.lhs.to_string(),
        r.rhs.to_string(),
        r.epsilon.to_string(),
        r.div8_f.to_string(),
        r.div8_sigma.to_string(),
        r.div16_sum.to_string(),
        verdict_str(r.verdict).to_string(),
    ]
    .join(",");
    format!("{header}\n{row}\n")
}

#[derive(Serialize)]
struct VerifyRecord<'a> {
    n: usize,
    max_product: u64,
    checked: u64,
    passed: u64,
    failed: u64,
    first_failure: Option<&'a [u64]>,
    failures: &'a [brieskorn_core::sweep::TupleOutcome],
}

pub fn cmd_verify(n: usize, max_product: u64, workers: Option<usize>, format: Format) -> Output {
    if n != 3 && n != 4 {
        return dimension_error(n);
    }
    let workers = workers.unwrap_or_else(|| {
        std::thread::available_parallelism().map_or(1, |p| p.get())
    });
    let pool = match rayon::ThreadPoolBuilder::new().num_threads(workers).build() {
        Ok(p) => p,
        Err(e) => return Output::invalid(e),
    };
    let started = Instant::now();
    let done = AtomicU64::new(0);
    let progress = || {
        let count = done.fetch_add(1, Ordering::Relaxed) + 1;
        if count % 50_000 == 0 {
            let rate = count as f64 / started.elapsed().as_secs_f64().max(1e-9);
            eprintln!("verify: {count} tuples checked ({rate:.0} tuples/s)");
        }
    };
    let summary = match pool.install(|| verify_range(n, max_product, &Default::default(), &progress)) {
        Ok(s) => s,
        Err(e) => return Output::invalid(e),
    };
    let code = if summary.all_passed() { EXIT_OK } else { EXIT_FAILED };
    Output::ok(render_summary(&summary, format)).with_code(code)
}

fn render_summary(s: &SweepSummary, format: Format) -> String {
    let first = s.first_failure().map(|f| f.a.as_slice());
    match format {
        Format::Json => {
            let record = VerifyRecord {
                n: s.n,
                max_product: s.max_product,
                checked: s.checked,
                passed: s.passed,
                failed: s.checked - s.passed,
                first_failure: first,
                failures: &s.failures,
            };
            serde_json::to_string(&record).expect("summary serializes") + "\n"
        }
        Format::Csv => format!(
            "n,max_product,checked,passed,failed,first_failure\n{},{},{},{},{},{}\n",
            s.n,
            s.max_product,
            s.checked,
            s.passed,
            s.checked - s.passed,
            first.map(|a| join(a, " ")).unwrap_or_default()
        ),
        Format::Text => {
            let mut out = format!(
                "n = {}, A <= {}: {} checked, {} passed\n",
                s.n, s.max_product, s.checked, s.passed
            );
            for f in &s.failures {
                let _ = writeln!(out, "FAIL Σ({}): {}", join(&f.a, ","), f.problems().cloned().collect::<Vec<_>>().join("; "));
            }
            out
        }
    }
}

fn parse_shift(raw: &Option<String>) -> Result<Rational, Error> {
    raw.as_deref().map_or(Ok(Rational::zero()), str::parse)
}

#[derive(Serialize)]
struct SumRecord {
    h: i64,
    k: u64,
    x: Rational,
    y: Rational,
    value: Rational,
}

pub fn cmd_sums(args: &SumsArgs, format: Format) -> Output {
    let (x, y) = match (parse_shift(&args.x), parse_shift(&args.y)) {
        (Ok(x), Ok(y)) => (x, y),
        (Err(e), _) | (_, Err(e)) => return Output::invalid(e),
    };
    if args.k == 0 {
        return Output::invalid(Error::ZeroModulus);
    }
    let params = RademacherParams::new(args.h, args.k, x, y);
    let mut stderr = String::new();
    let mut code = EXIT_OK;
    let value = if args.fast {
        match rademacher_sum_fast(&params) {
            Ok(fast) => {
                if !args.no_check {
                    let direct = rademacher_sum(&params).expect("k >= 1");
                    if direct != fast {
                        let _ = writeln!(stderr, "error: fast path gave {fast}, direct summation {direct}");
                        code = EXIT_FAILED;
                    }
                }
                fast
            }
            Err(e @ Error::NotCoprime { .. }) => {
                let _ = writeln!(stderr, "note: {e}; using direct summation");
                rademacher_sum(&params).expect("k >= 1")
            }
            Err(e) => return Output::invalid(e),
        }
    } else {
        rademacher_sum(&params).expect("k >= 1")
    };
    let stdout = match format {
        Format::Text => format!("{value}\n"),
        Format::Json => {
            let record = SumRecord {
                h: params.h,
                k: params.k,
                x: params.x,
                y: params.y,
                value,
            };
            serde_json::to_string(&record).expect("serializes") + "\n"
        }
        Format::Csv => format!("h,k,x,y,value\n{},{},{},{},{}\n", params.h, params.k, params.x, params.y, value),
    };
    Output { stdout, stderr, code }
}

#[derive(Serialize)]
struct LatticeRecord<'a> {
    a: &'a [u64],
    #[serde(flatten)]
    census: &'a brieskorn_core::LatticeCensus,
}

pub fn cmd_lattice(tuple: &[u64], format: Format) -> Output {
    let data = match derive(tuple) {
        Ok(d) => d,
        Err(e) => return Output::invalid(e),
    };
    let census = match interval_census(&data) {
        Ok(c) => c,
        Err(Error::UnsupportedDimension(n)) => return dimension_error(n),
        Err(e) => return Output::invalid(e),
    };
    let problems = census.violations(&data);
    if census.mordell_value != 4 * census.c as i64 {
        return Output {
            stdout: String::new(),
            stderr: format!("error: {}\n", problems.join("; ")),
            code: EXIT_FAILED,
        };
    }
    let stdout = match format {
        Format::Json => {
            let record = LatticeRecord { a: tuple, census: &census };
            serde_json::to_string(&record).expect("serializes") + "\n"
        }
        Format::Csv => {
            let mut s = String::from("lo,hi,count\n");
            for IntervalCount { lo, hi, count } in &census.census {
                let _ = writeln!(s, "{lo},{hi},{count}");
            }
            s
        }
        Format::Text => {
            let mut s = format!(
                "Σ({}): C = {}, Mordell sum = {}\n",
                join(tuple, ","),
                census.c,
                census.mordell_value
            );
            for iv in &census.census {
                let _ = writeln!(s, "  N({}, {}) = {}", iv.lo, iv.hi, iv.count);
            }
            for p in &census.half_integer_hits {
                let _ = writeln!(s, "  half-integer q at ({})", join(p, ","));
            }
            s
        }
    };
    let code = if problems.is_empty() { EXIT_OK } else { EXIT_FAILED };
    Output {
        stdout,
        stderr: problems.iter().map(|p| format!("warning: {p}\n")).collect(),
        code,
    }
}
