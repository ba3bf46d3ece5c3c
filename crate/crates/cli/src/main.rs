mod plot;

use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;
use std::str::FromStr;

use clap::{Parser, Subcommand, ValueEnum};
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rug::{Integer, Rational};

use ctrees::asymptotics::{
    check_inequality, extrapolate_gamma, min_extrapolation_prec, ratio_csv, ratio_diagnostics,
    u_sequence, v_csv, v_sequence, BoundFamily, BoundFamilyParams,
};
use ctrees::automata::{bounds_csv, bounds_from, brute_count_minimal, BRUTE_FORCE_CAP};
use ctrees::exact::csv::{
    cutoff_csv, diagonal_csv, paired_diagonal_csv, rational_csv, triangle_csv,
};
use ctrees::exact::{
    check_compacted_suffix_monotone, check_ehat_between, check_sandwich, check_suffix_monotone,
    compacted_suffix_weight_table, cutoff_losses, ehat_table, meander_table, suffix_weight_table,
    truncated_meander_table, CountTable, StorageMode,
};
use ctrees::sampling::{unrank_relaxed, SamplerContext};
use ctrees::trees::{tree_to_dot, RelaxedTree};
use ctrees::{Error, TreeKind};

use plot::{emit_figure, read_series, Figure, Panel};

const R9: u64 = 142190703;
const C9: u64 = 97608831;

/// Exact enumeration and asymptotics for relaxed and compacted binary trees.
#[derive(Parser)]
#[command(name = "ctrees", disable_version_flag = true)]
struct Cli {
    /// Print the version and the r_9 / c_9 self-test, then exit.
    #[arg(short = 'V', long)]
    version: bool,

    /// Worker threads for grid evaluation (default: all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,

    /// Write the result here instead of standard output.
    #[arg(short, long, global = true)]
    output: Option<PathBuf>,

    /// Working precision in bits. Defaults: 192 for `verify`, 96 + 32k for
    /// `extrapolate`, 128 for `ratios`.
    #[arg(long, global = true, env = "CTREES_PRECISION")]
    precision_bits: Option<u32>,

    #[command(subcommand)]
    command: Option<Command>,
}

#[derive(Clone, Copy, ValueEnum)]
enum CountKind {
    Relaxed,
    Compacted,
    Both,
}

#[derive(Clone, Copy, ValueEnum)]
enum Kind {
    Relaxed,
    Compacted,
}

impl From<Kind> for TreeKind {
    fn from(k: Kind) -> TreeKind {
        match k {
            Kind::Relaxed => TreeKind::Relaxed,
            Kind::Compacted => TreeKind::Compacted,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum TableKind {
    Relaxed,
    Compacted,
    MeanderD,
    MeanderE,
    SuffixP,
    SuffixQ,
    Ehat,
    Dtilde,
    Etilde,
}

#[derive(Clone, Copy, ValueEnum)]
enum Lemma {
    LowerRelaxed,
    UpperRelaxed,
    LowerCompacted,
    UpperCompacted,
    SuffixMonotone,
    CompactedSuffixMonotone,
    Sandwich,
    Cutoff,
}

#[derive(Clone, Copy, ValueEnum)]
enum TreeFormat {
    Path,
    Dot,
}

#[derive(Subcommand)]
enum Command {
    /// Diagonal counts r_n and/or c_n as CSV.
    Count {
        #[arg(long, value_enum, default_value = "both")]
        kind: CountKind,
        #[arg(long, default_value_t = 9)]
        max_n: usize,
    },
    /// A full triangle (integer counts or exact rational weights) as CSV.
    Table {
        #[arg(long, value_enum)]
        kind: TableKind,
        /// Largest row; for suffix tables the target is 2 * max_n.
        #[arg(long, default_value_t = 10)]
        max_n: usize,
        /// Cutoff N for the truncated tables.
        #[arg(long, default_value_t = 50)]
        cutoff: usize,
    },
    /// Uniform random relaxed or compacted trees.
    Sample {
        #[arg(long, value_enum, default_value = "relaxed")]
        kind: Kind,
        #[arg(short, long)]
        n: usize,
        #[arg(long, default_value_t = 1)]
        count: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, value_enum, default_value = "path")]
        format: TreeFormat,
    },
    /// The decorated path of a given rank.
    Unrank {
        #[arg(short, long)]
        n: usize,
        #[arg(long)]
        index: String,
        #[arg(long, value_enum, default_value = "path")]
        format: TreeFormat,
    },
    /// Certify a bound family or run an exact lemma check.
    Verify {
        #[arg(long, value_enum)]
        lemma: Lemma,
        #[arg(long, default_value_t = 4)]
        n_min: usize,
        #[arg(long, default_value_t = 2000)]
        n_max: usize,
        /// Exponent margin, as a decimal or `p/q` (default 1/12).
        #[arg(long)]
        eps: Option<String>,
        /// Quartic coefficient of the upper families (default 1/4).
        #[arg(long)]
        eta: Option<String>,
        /// Flip the sign of the n^(-7/6) ratio term.
        #[arg(long)]
        negative_control: bool,
        /// Largest 2n for the suffix checks.
        #[arg(long, default_value_t = 60)]
        max_two_n: usize,
        /// Smallest n for the compacted suffix check.
        #[arg(long, default_value_t = 10)]
        min_n: usize,
        /// Largest meander index for the sandwich check.
        #[arg(long, default_value_t = 60)]
        max_n: usize,
        #[arg(long, default_value_t = 50)]
        cutoff: usize,
        /// Largest n for the cutoff check.
        #[arg(long, default_value_t = 300)]
        cutoff_max_n: usize,
        /// Largest acceptable lost share in the cutoff check.
        #[arg(long, default_value_t = 0.01)]
        tolerance: f64,
    },
    /// Estimate the stretched-exponential constant by order-k extrapolation.
    Extrapolate {
        #[arg(long, value_enum, default_value = "relaxed")]
        kind: Kind,
        #[arg(long, default_value_t = 1000)]
        max_n: usize,
        #[arg(short, long, default_value_t = 18)]
        k: usize,
        /// Window start (default: the last window ending at max_n).
        #[arg(long)]
        n: Option<usize>,
        /// Also write u_n as CSV here.
        #[arg(long)]
        u_csv: Option<PathBuf>,
        /// Also write v_n for window starts v_from..=n as CSV here.
        #[arg(long)]
        v_csv: Option<PathBuf>,
        #[arg(long)]
        v_from: Option<usize>,
    },
    /// Consecutive ratios and their remainder against 4n + 4 a1 n^(1/3) + beta.
    Ratios {
        #[arg(long, value_enum, default_value = "relaxed")]
        kind: Kind,
        #[arg(long, default_value_t = 1000)]
        max_n: usize,
    },
    /// Bounds on the number of minimal acyclic DFAs.
    Dfa {
        #[command(subcommand)]
        command: DfaCommand,
    },
    /// SVG scatter plot of a u or v CSV.
    Plot {
        #[arg(long)]
        input: PathBuf,
        #[arg(long, value_enum, default_value = "u")]
        panel: Panel,
        /// Subtracted from v in the v panel.
        #[arg(long, default_value_t = 166.95208957)]
        offset: f64,
        #[arg(long)]
        n_from: Option<usize>,
        #[arg(long)]
        n_to: Option<usize>,
        #[arg(long, default_value = "")]
        title: String,
    },
}

#[derive(Subcommand)]
enum DfaCommand {
    /// Lower and upper bounds for n = 1..=max_n.
    Bounds {
        #[arg(long, default_value_t = 10)]
        max_n: usize,
    },
    /// Bounds plus brute-force counts where feasible.
    Brute {
        #[arg(long, default_value_t = 4)]
        max_n: usize,
    },
}

/// Failure with its exit code.
struct Failure {
    code: u8,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Capacity { .. } | Error::Precision(_) => 3,
            _ => 2,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

fn usage(message: impl Into<String>) -> Failure {
    Failure {
        code: 2,
        message: message.into(),
    }
}

/// Output text plus whether the run counts as a pass.
struct Outcome {
    text: String,
    pass: bool,
}

fn ok(text: String) -> Result<Outcome, Failure> {
    Ok(Outcome { text, pass: true })
}

fn parse_rational(s: &str) -> Result<Rational, Failure> {
    let s = s.trim();
    if let Ok(q) = Rational::from_str(s) {
        return Ok(q);
    }
    let (neg, body) = s.strip_prefix('-').map_or((false, s), |b| (true, b));
    let (int, frac) = body.split_once('.').unwrap_or((body, ""));
    let digits = format!("{int}{frac}");
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return Err(usage(format!("cannot parse {s:?} as a number")));
    }
    let num = Integer::from_str(&digits).unwrap();
    let den = Integer::from(Integer::u_pow_u(10, frac.len() as u32));
    let q = Rational::from((num, den));
    Ok(if neg { -q } else { q })
}

fn family_of(lemma: Lemma) -> Option<BoundFamily> {
    match lemma {
        Lemma::LowerRelaxed => Some(BoundFamily::LowerRelaxed),
        Lemma::UpperRelaxed => Some(BoundFamily::UpperRelaxed),
        Lemma::LowerCompacted => Some(BoundFamily::LowerCompacted),
        Lemma::UpperCompacted => Some(BoundFamily::UpperCompacted),
        _ => None,
    }
}

fn render_tree(path: &ctrees::trees::DecoratedPath, format: TreeFormat) -> Result<String, Failure> {
    Ok(match format {
        TreeFormat::Path => format!("{path}\n"),
        TreeFormat::Dot => tree_to_dot(&RelaxedTree::from_path(path)?),
    })
}

fn version_line() -> (String, bool) {
    let r = CountTable::relaxed(9, StorageMode::RollingRow).expect("small table");
    let c = CountTable::compacted(9, StorageMode::RollingRow).expect("small table");
    let (r9, c9) = (&r.diagonal()[9], &c.diagonal()[9]);
    let pass = *r9 == R9 && *c9 == C9;
    (
        format!(
            "ctrees {} (r_9 = {r9}, c_9 = {c9}, self-test {})\n",
            env!("CARGO_PKG_VERSION"),
            if pass { "ok" } else { "FAILED" }
        ),
        pass,
    )
}

fn run(cli: Cli) -> Result<Outcome, Failure> {
    let Some(command) = cli.command else {
        let (text, pass) = version_line();
        return Ok(Outcome { text, pass });
    };
    let prec = cli.precision_bits;
    match command {
        Command::Count { kind, max_n } => {
            let table = |k| CountTable::new(k, max_n, StorageMode::RollingRow);
            ok(match kind {
                CountKind::Relaxed => diagonal_csv(&table(TreeKind::Relaxed)?),
                CountKind::Compacted => diagonal_csv(&table(TreeKind::Compacted)?),
                CountKind::Both => {
                    paired_diagonal_csv(&table(TreeKind::Relaxed)?, &table(TreeKind::Compacted)?)
                }
            })
        }
        Command::Table {
            kind,
            max_n,
            cutoff,
        } => ok(match kind {
            TableKind::Relaxed => {
                triangle_csv(&CountTable::relaxed(max_n, StorageMode::FullTriangle)?)
            }
            TableKind::Compacted => {
                triangle_csv(&CountTable::compacted(max_n, StorageMode::FullTriangle)?)
            }
            TableKind::MeanderD => rational_csv(&meander_table(TreeKind::Relaxed, max_n)?),
            TableKind::MeanderE => rational_csv(&meander_table(TreeKind::Compacted, max_n)?),
            TableKind::SuffixP => rational_csv(&suffix_weight_table(max_n)?),
            TableKind::SuffixQ => rational_csv(&compacted_suffix_weight_table(max_n)?),
            TableKind::Ehat => rational_csv(&ehat_table(max_n)?),
            TableKind::Dtilde => {
                rational_csv(&truncated_meander_table(max_n, cutoff, TreeKind::Relaxed)?)
            }
            TableKind::Etilde => rational_csv(&truncated_meander_table(
                max_n,
                cutoff,
                TreeKind::Compacted,
            )?),
        }),
        Command::Sample {
            kind,
            n,
            count,
            seed,
            format,
        } => {
            let mut ctx = SamplerContext::new(n, ChaCha8Rng::seed_from_u64(seed))?;
            let mut out = String::new();
            for _ in 0..count {
                let path = match kind {
                    Kind::Relaxed => ctx.sample_relaxed(n)?,
                    Kind::Compacted => ctx.sample_compacted(n)?.0.to_path(),
                };
                out.push_str(&render_tree(&path, format)?);
            }
            ok(out)
        }
        Command::Unrank { n, index, format } => {
            let index = Integer::from_str(&index)
                .map_err(|_| usage(format!("cannot parse index {index:?}")))?;
            let table = CountTable::relaxed(n, StorageMode::FullTriangle)?;
            ok(render_tree(&unrank_relaxed(&table, n, &index)?, format)?)
        }
        Command::Verify {
            lemma,
            n_min,
            n_max,
            eps,
            eta,
            negative_control,
            max_two_n,
            min_n,
            max_n,
            cutoff,
            cutoff_max_n,
            tolerance,
        } => {
            if let Some(family) = family_of(lemma) {
                let mut params = BoundFamilyParams::default_for(family);
                if let Some(e) = eps {
                    params.eps = parse_rational(&e)?;
                }
                if let Some(e) = eta {
                    if family.is_lower() {
                        return Err(usage("--eta applies to the upper families only"));
                    }
                    params.eta = parse_rational(&e)?;
                }
                if negative_control {
                    params = params.with_flipped_sigma4();
                }
                let cert = check_inequality(&params, n_min, n_max, prec.unwrap_or(192))?;
                return Ok(Outcome {
                    pass: cert.passed(),
                    text: cert.to_json() + "\n",
                });
            }
            if eps.is_some() || eta.is_some() || negative_control {
                return Err(usage(
                    "--eps, --eta and --negative-control apply to the bound families only",
                ));
            }
            match lemma {
                Lemma::SuffixMonotone => {
                    let c = check_suffix_monotone(max_two_n)?;
                    Ok(Outcome {
                        pass: c.passed(),
                        text: pretty(serde_json::to_string_pretty(&c)),
                    })
                }
                Lemma::CompactedSuffixMonotone => {
                    let c = check_compacted_suffix_monotone(min_n, max_two_n)?;
                    Ok(Outcome {
                        pass: c.passed(),
                        text: pretty(serde_json::to_string_pretty(&c)),
                    })
                }
                Lemma::Sandwich => {
                    let checks = vec![check_sandwich(max_n)?, check_ehat_between(max_n)?];
                    Ok(Outcome {
                        pass: checks.iter().all(|c| c.passed()),
                        text: pretty(serde_json::to_string_pretty(&checks)),
                    })
                }
                Lemma::Cutoff => {
                    let rows = cutoff_losses(cutoff, cutoff_max_n)?;
                    Ok(Outcome {
                        pass: rows.iter().all(|r| r.lost_f64 <= tolerance),
                        text: cutoff_csv(&rows),
                    })
                }
                _ => unreachable!(),
            }
        }
        Command::Extrapolate {
            kind,
            max_n,
            k,
            n,
            u_csv,
            v_csv: v_path,
            v_from,
        } => {
            if k == 0 || k > max_n {
                return Err(usage(format!("need 1 <= k <= max-n, got k = {k}")));
            }
            let prec = prec.unwrap_or(min_extrapolation_prec(k));
            let n = n.unwrap_or(max_n + 1 - k);
            if n + k - 1 > max_n || n == 0 {
                return Err(usage(format!(
                    "window [{n}, {}] is not inside [1, {max_n}]",
                    n + k - 1
                )));
            }
            let counts = CountTable::new(kind.into(), max_n, StorageMode::RollingRow)?;
            let u = u_sequence(kind.into(), counts.diagonal(), prec)?;
            if let Some(path) = u_csv {
                write_file(&path, &u.to_csv(30))?;
            }
            if let Some(path) = v_path {
                let from = v_from.unwrap_or(n.saturating_sub(200).max(1));
                if from > n {
                    return Err(usage("--v-from is past the window start"));
                }
                write_file(&path, &v_csv(&v_sequence(&u, k, from, n, prec)?, 30))?;
            }
            let est = extrapolate_gamma(&u, k, n, prec)?;
            ok(pretty(serde_json::to_string_pretty(&est)))
        }
        Command::Ratios { kind, max_n } => {
            let counts = CountTable::new(kind.into(), max_n, StorageMode::RollingRow)?;
            let rows = ratio_diagnostics(kind.into(), counts.diagonal(), prec.unwrap_or(128))?;
            ok(ratio_csv(&rows, 20))
        }
        Command::Dfa { command } => match command {
            DfaCommand::Bounds { max_n } => ok(bounds_csv(max_n, false)?),
            DfaCommand::Brute { max_n } => {
                if max_n > BRUTE_FORCE_CAP {
                    return Err(Error::Capacity {
                        what: "brute-force DFA enumeration",
                        requested: max_n,
                        cap: BRUTE_FORCE_CAP,
                    }
                    .into());
                }
                let c = CountTable::compacted(max_n, StorageMode::RollingRow)?;
                let r = CountTable::relaxed(max_n, StorageMode::RollingRow)?;
                let mut pass = true;
                for n in 1..=max_n {
                    let (lo, hi) = bounds_from(&c, &r, n)?;
                    let m = brute_count_minimal(n)?;
                    pass &= lo <= m && m <= hi;
                }
                Ok(Outcome {
                    text: bounds_csv(max_n, true)?,
                    pass,
                })
            }
        },
        Command::Plot {
            input,
            panel,
            offset,
            n_from,
            n_to,
            title,
        } => {
            let csv = fs::read_to_string(&input)
                .map_err(|e| usage(format!("cannot read {}: {e}", input.display())))?;
            let points: Vec<(usize, f64)> = read_series(&csv)
                .map_err(usage)?
                .into_iter()
                .filter(|&(n, _)| n_from.is_none_or(|a| n >= a) && n_to.is_none_or(|b| n <= b))
                .collect();
            let fig = Figure {
                panel,
                offset,
                title,
            };
            ok(emit_figure(&fig, &points).map_err(usage)?)
        }
    }
}

fn pretty(r: serde_json::Result<String>) -> String {
    r.expect("report serializes") + "\n"
}

fn write_file(path: &PathBuf, text: &str) -> Result<(), Failure> {
    fs::write(path, text).map_err(|e| Failure {
        code: 2,
        message: format!("cannot write {}: {e}", path.display()),
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(t) = cli.threads {
        if t == 0 {
            eprintln!("error: --threads must be positive");
            return ExitCode::from(2);
        }
        rayon::ThreadPoolBuilder::new()
            .num_threads(t)
            .build_global()
            .expect("thread pool is configured once");
    }
    let output = cli.output.clone();
    let force_version = cli.version;
    let result = if force_version {
        let (text, pass) = version_line();
        Ok(Outcome { text, pass })
    } else {
        run(cli)
    };
    match result {
        Ok(out) => {
            let written = match &output {
                Some(p) => write_file(p, &out.text),
                None => std::io::stdout()
                    .write_all(out.text.as_bytes())
                    .map_err(|e| usage(e.to_string())),
            };
            if let Err(f) = written {
                eprintln!("error: {}", f.message);
                return ExitCode::from(f.code);
            }
            if out.pass {
                ExitCode::SUCCESS
            } else {
                eprintln!("result: FAIL");
                ExitCode::from(1)
            }
        }
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
