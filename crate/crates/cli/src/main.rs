//! `cube-cover`: exact verification of covering-degree bounds on the cube.
//!
//! Exit codes: 0 when every check passes, 1 when a check fails, 2 for usage
//! or parameter errors.

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use cube_cover::lattice::SubsetMask;
use cube_cover::oracle::{self, CoverInstance};
use cube_cover::poly::{alpha_of, check_double_star_relation, check_star, construct_extremal};
use cube_cover::selftest::{self, criterion_name, Fault, SelftestConfig};
use cube_cover::sums::{self, SumShape};
use cube_cover::{case, matrix, Detail, FieldKind, MultilinearPoly, Report, Status};

#[derive(Debug, Parser)]
#[command(name = "cube-cover", version, about = "Exact verification of covering-degree bounds on the Boolean cube")]
struct Cli {
    /// Print the report as JSON.
    #[arg(long, global = true)]
    json: bool,

    /// Write the report to this file instead of standard output.
    #[arg(long, global = true, value_name = "PATH")]
    out: Option<PathBuf>,

    /// Record wall-clock time in the report. Off by default so that output
    /// is byte-identical across runs.
    #[arg(long, global = true)]
    timing: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct NR {
    #[arg(long)]
    n: usize,
    #[arg(long)]
    r: usize,
}

#[derive(Debug, Args)]
struct FieldArgs {
    /// Work over F_p.
    #[arg(long, default_value_t = selftest::DEFAULT_PRIME, conflicts_with = "rational")]
    prime: u64,
    /// Work over the rationals.
    #[arg(long)]
    rational: bool,
}

impl FieldArgs {
    fn field(&self) -> cube_cover::Result<FieldKind> {
        if self.rational {
            Ok(FieldKind::Rational)
        } else {
            FieldKind::prime(self.prime)
        }
    }
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum FaultArg {
    EntrySign,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Check M*M = I for r < n/2.
    VerifyInvolution {
        #[command(flatten)]
        nr: NR,
        /// Also print the matrix (text mode only).
        #[arg(long)]
        dump: bool,
    },
    /// Check the block structure and nonsingularity for r >= n/2.
    VerifyHighRegime {
        #[command(flatten)]
        nr: NR,
    },
    /// Check S1 = 1 and S2 = 0 on every valid tuple with n <= n-max.
    VerifySums {
        #[arg(long)]
        n_max: usize,
    },
    /// Check the recurrence residuals and replay the induction, either over
    /// all shapes with n <= n-max or for one shape given by n, a (and b, w
    /// for S2) up to r-max.
    VerifyRecurrences {
        #[arg(long, conflicts_with_all = ["n", "a"])]
        n_max: Option<usize>,
        #[arg(long, requires_all = ["a", "r_max"])]
        n: Option<usize>,
        #[arg(long)]
        a: Option<usize>,
        #[arg(long, requires = "w")]
        b: Option<usize>,
        #[arg(long, requires = "b")]
        w: Option<usize>,
        #[arg(long)]
        r_max: Option<usize>,
    },
    /// Compare the alternating binomial sum with its closed form for all
    /// 0 <= t <= r* <= s <= s-max.
    VerifyAltSum {
        #[arg(long, default_value_t = 20)]
        s_max: usize,
    },
    /// Compute the minimal covering degree with certificates, for one (n, r)
    /// or for every instance with n <= n-max.
    MinDegree {
        #[arg(long, requires = "r", conflicts_with = "n_max")]
        n: Option<usize>,
        #[arg(long)]
        r: Option<usize>,
        #[arg(long)]
        n_max: Option<usize>,
        #[command(flatten)]
        field: FieldArgs,
        /// Write the witness polynomial to this file.
        #[arg(long, value_name = "PATH")]
        witness: Option<PathBuf>,
    },
    /// Evaluate the extremal product on each weight and check its pattern.
    Extremal {
        #[command(flatten)]
        nr: NR,
        #[command(flatten)]
        field: FieldArgs,
        /// Write the interpolated polynomial to this file.
        #[arg(long, value_name = "PATH")]
        poly_out: Option<PathBuf>,
    },
    /// List the coefficient sums alpha_J of a polynomial file, and with
    /// --r check the vanishing conditions and the coefficient relation.
    Alpha {
        #[arg(long, value_name = "PATH")]
        poly: PathBuf,
        #[arg(long)]
        r: Option<usize>,
    },
    /// Run the acceptance criteria.
    Selftest {
        /// Smaller ranges, for a fast smoke test.
        #[arg(long)]
        quick: bool,
        #[arg(long, hide = true, value_enum)]
        inject_fault: Option<FaultArg>,
    },
}

enum Failure {
    Usage(String),
}

impl<E: std::fmt::Display> From<E> for Failure {
    fn from(e: E) -> Self {
        Failure::Usage(e.to_string())
    }
}

struct Output {
    report: Report,
    // Printed before the report in text mode.
    preamble: Vec<String>,
    // Replaces the generic report rendering in text mode.
    text: Option<String>,
}

impl From<Report> for Output {
    fn from(report: Report) -> Self {
        Output {
            report,
            preamble: Vec::new(),
            text: None,
        }
    }
}

fn configure_threads() -> Result<(), Failure> {
    let Ok(value) = std::env::var("CUBE_COVER_THREADS") else {
        return Ok(());
    };
    let threads: usize = value
        .trim()
        .parse()
        .map_err(|_| Failure::Usage(format!("CUBE_COVER_THREADS must be a nonnegative integer, got {value:?}")))?;
    if threads > 0 {
        rayon::ThreadPoolBuilder::new().num_threads(threads).build_global()?;
    }
    Ok(())
}

fn run(cli: &Cli) -> Result<Output, Failure> {
    Ok(match &cli.command {
        Command::VerifyInvolution { nr, dump } => {
            let report = matrix::verify_involution(nr.n, nr.r)?;
            let mut out = Output::from(report);
            if *dump {
                out.preamble.push(matrix::build(nr.n, nr.r)?.dump());
            }
            out
        }
        Command::VerifyHighRegime { nr } => matrix::verify_high_regime(nr.n, nr.r)?.into(),
        Command::VerifySums { n_max } => sums::verify_sums(*n_max)?.into(),
        Command::VerifyRecurrences { n_max, n, a, b, w, r_max } => match (n_max, n) {
            (Some(n_max), _) => sums::verify_recurrences(*n_max)?.into(),
            (None, Some(n)) => {
                let a = a.expect("clap requires --a");
                let shape = match (b, w) {
                    (Some(b), Some(w)) => SumShape::s2(*n, a, *b, *w)?,
                    _ => SumShape::s1(*n, a)?,
                };
                sums::replay_induction(&shape, r_max.expect("clap requires --r-max"))?.into()
            }
            (None, None) => return Err(Failure::Usage("give either --n-max or --n, --a, --r-max".into())),
        },
        Command::VerifyAltSum { s_max } => sums::verify_alt_sum(*s_max)?.into(),
        Command::MinDegree { n, r, n_max, field, witness } => {
            let field = field.field()?;
            match (n, n_max) {
                (Some(n), _) => {
                    let inst = CoverInstance::new(*n, r.expect("clap requires --r"), field)?;
                    let (report, cert) = oracle::min_degree_report(&inst)?;
                    if let Some(path) = witness {
                        fs::write(path, cert.witness.to_string())?;
                    }
                    let mut out = Output::from(report);
                    out.preamble.push(format!("d_min = {}", cert.d_min));
                    out
                }
                (None, Some(n_max)) => oracle::verify_theorem(*n_max, field)?.into(),
                (None, None) => return Err(Failure::Usage("give either --n and --r, or --n-max".into())),
            }
        }
        Command::Extremal { nr, field, poly_out } => {
            let field = field.field()?;
            let profile = construct_extremal(nr.n, nr.r, field)?;
            let mut report = Report::new("extremal")
                .param("n", nr.n)
                .param("r", nr.r)
                .param("field", field);
            for w in 0..=nr.n {
                let value = profile.at_weight(w);
                let expect_zero = w > nr.r;
                let status = if value.is_zero() == expect_zero { Status::Pass } else { Status::Fail };
                report.push(Detail::new(
                    case! {"weight" => w},
                    status,
                    if expect_zero { "zero" } else { "nonzero" },
                    value,
                ));
            }
            if let Some(path) = poly_out {
                let table = cube_cover::LatticeTable::from_fn(nr.n, field, |v| profile.evaluate(v).clone())?;
                fs::write(path, MultilinearPoly::interpolate(&table).to_string())?;
            }
            report.into()
        }
        Command::Alpha { poly, r } => {
            let text = fs::read_to_string(poly)?;
            let f: MultilinearPoly = text.parse()?;
            let alpha = alpha_of(&f);
            let mut report = Report::new("alpha")
                .param("n", f.n())
                .param("field", f.field())
                .param("degree", f.degree());
            for (j, value) in alpha.table().iter() {
                if !value.is_zero() {
                    report.push(Detail::new(case! {"J" => j}, Status::Pass, value, value));
                }
            }
            if let Some(r) = r {
                report = report.param("r", r);
                let heavy_zero = (0..1u32 << f.n())
                    .map(SubsetMask::from_bits)
                    .filter(|v| v.weight() > *r)
                    .all(|v| cube_cover::poly::evaluate(&f, v).map(|x| x.is_zero()).unwrap_or(false));
                report.absorb(check_star(&f, *r)?);
                if heavy_zero {
                    report.absorb(check_double_star_relation(&f, *r)?);
                } else {
                    report.push(
                        Detail::new(case! {"check" => "coefficient relation"}, Status::Exploratory, "-", "-")
                            .note("skipped: the polynomial does not vanish on every vertex of weight > r"),
                    );
                }
            }
            report.into()
        }
        Command::Selftest { quick, inject_fault } => {
            let config = SelftestConfig {
                quick: *quick,
                fault: inject_fault.map(|FaultArg::EntrySign| Fault::EntrySign),
            };
            let report = selftest::run(config);
            let mut text = String::new();
            for (k, d) in report.details.iter().enumerate() {
                text.push_str(&format!(
                    "criterion {} ({}): {} ({})\n",
                    k + 1,
                    criterion_name(k + 1),
                    d.status,
                    d.note.as_deref().unwrap_or("")
                ));
            }
            let passed = report.details.iter().filter(|d| d.status == Status::Pass).count();
            text.push_str(&format!("summary: {passed}/{} criteria passed\n", report.details.len()));
            Output {
                report,
                preamble: Vec::new(),
                text: Some(text),
            }
        }
    })
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    if let Err(Failure::Usage(message)) = configure_threads() {
        eprintln!("error: {message}");
        return ExitCode::from(2);
    }
    let start = Instant::now();
    let output = match run(&cli) {
        Ok(o) => o,
        Err(Failure::Usage(message)) => {
            eprintln!("error: {message}");
            return ExitCode::from(2);
        }
    };
    let mut report = output.report;
    if cli.timing {
        report = report.with_timing(start.elapsed().as_millis() as u64);
    }
    let rendered = if cli.json {
        let mut s = report.to_json();
        s.push('\n');
        s
    } else {
        let mut s = String::new();
        for line in &output.preamble {
            s.push_str(line);
            if !line.ends_with('\n') {
                s.push('\n');
            }
        }
        s.push_str(&output.text.unwrap_or_else(|| report.render_text()));
        if cli.timing {
            s.push_str(&format!("timing_ms: {}\n", report.timing_ms));
        }
        s
    };
    match &cli.out {
        Some(path) => {
            if let Err(e) = fs::write(path, rendered) {
                eprintln!("error: cannot write {}: {e}", path.display());
                return ExitCode::from(2);
            }
        }
        None => print!("{rendered}"),
    }
    if report.passed() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}
