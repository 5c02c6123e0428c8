//! vmvt: command-line front end for the mean-value laboratory.
//!
//! Every subcommand prints one CSV header line followed by records (or
//! newline-delimited JSON objects with --format json) to stdout;
//! diagnostics go to stderr. Exit status: 0 success, 1 invalid arguments,
//! 2 resource budget exceeded, 3 internal invariant violation.

mod output;
mod progress;

use std::fs::File;
use std::io::{BufReader, Write};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use output::{Emitter, Format, Value};
use vmvt_core::{congruences, exp_sums, exponents, mean_values, tarry, waring};
use vmvt_core::{ComputeConfig, Error};

#[derive(Parser)]
#[command(
    name = "vmvt",
    version,
    about = "Exact counts, exponential sums, and circle-method arithmetic for translation-dilation invariant systems"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Worker threads (default: VMVT_THREADS or all cores). Results are
    /// byte-identical for any value.
    #[arg(long, global = true)]
    threads: Option<usize>,

    /// Memory budget in bytes for enumeration tables (default 4 GiB).
    #[arg(long, global = true)]
    memory_budget: Option<u64>,

    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = OutputFormat::Csv)]
    format: OutputFormat,

    /// Seed for commands that sample random phase vectors.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,

    /// Suppress progress reporting on stderr.
    #[arg(long, global = true)]
    quiet: bool,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum OutputFormat {
    Csv,
    Json,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum StrategyArg {
    Mitm,
    Brute,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum EnvelopeArg {
    Weyl,
    Vinogradov,
}

#[derive(Subcommand)]
enum Command {
    /// Exact solution count of the degree-k system over [1, X]^{2s}.
    Jmean(JmeanArgs),
    /// Exact diagonal count: ordered pairs with equal multisets.
    Tdiag {
        #[arg(long)]
        s: u32,
        #[arg(long)]
        xmax: u64,
    },
    /// Pigeonhole floor L and exact count J, certifying J >= L.
    Lowbound {
        #[arg(long)]
        s: u32,
        #[arg(long)]
        k: u32,
        #[arg(long)]
        xmax: u64,
    },
    /// Checks count = diagonal count for every s <= k.
    Newton {
        #[arg(long)]
        k: u32,
        #[arg(long)]
        xmax: u64,
    },
    /// Count with all variables in one residue class, cross-checked against
    /// the contracted range.
    Progression {
        #[arg(long)]
        s: u32,
        #[arg(long)]
        k: u32,
        #[arg(long)]
        xmax: u64,
        #[arg(long)]
        q: u64,
        #[arg(long)]
        xi: i64,
    },
    /// Least-squares growth exponent of the count across heights.
    Slope {
        #[arg(long)]
        s: u32,
        #[arg(long)]
        k: u32,
        /// Comma-separated ascending heights, e.g. 64,128,256.
        #[arg(long, value_delimiter = ',')]
        xlist: Vec<u64>,
    },
    /// Exponential sum over a polynomial phase.
    Expsum(PhaseArgs),
    /// Best rational approximation with bounded denominator.
    Approx {
        #[arg(long)]
        alpha: Option<f64>,
        /// Sample this many random alphas instead of --alpha.
        #[arg(long)]
        random: Option<u32>,
        #[arg(long)]
        qbound: u64,
    },
    /// Minor-arc membership of a leading coefficient.
    Minor {
        #[arg(long)]
        beta: Option<f64>,
        #[arg(long)]
        random: Option<u32>,
        #[arg(long)]
        k: u32,
        #[arg(long)]
        xmax: u64,
    },
    /// Pointwise bound envelope value.
    Envelope {
        #[arg(long, value_enum)]
        kind: EnvelopeArg,
        #[arg(long)]
        q: u64,
        /// Coefficient index for the mean-value envelope (2 <= j <= k).
        #[arg(long)]
        j: Option<u32>,
        #[arg(long)]
        k: u32,
        #[arg(long)]
        xmax: u64,
        #[arg(long, default_value_t = 0.0)]
        epsilon: f64,
    },
    /// Minimum distance of the polynomial phase to the integers over
    /// n <= N, by exhaustive scan.
    Equi(EquiArgs),
    /// Congruence solution count against the lifting cap.
    Cong {
        #[arg(long)]
        k: u32,
        #[arg(long)]
        p: u64,
        #[arg(long, default_value_t = 0)]
        eta: u64,
        /// Comma-separated target tuple in [1, p^k].
        #[arg(long, value_delimiter = ',')]
        y: Vec<u64>,
    },
    /// Deep congruence count (modulus p^{k^2}) against its lifting cap.
    Congdeep {
        #[arg(long)]
        k: u32,
        #[arg(long)]
        p: u64,
        #[arg(long, default_value_t = 0)]
        xi: u64,
        #[arg(long, default_value_t = 0)]
        eta: u64,
        #[arg(long, value_delimiter = ',')]
        y: Vec<u64>,
    },
    /// Exact count of representations as an ordered sum of s k-th powers.
    Waring {
        #[arg(long)]
        s: u32,
        #[arg(long)]
        k: u32,
        #[arg(long)]
        n: u64,
    },
    /// Complete exponential sum over residues mod q.
    Gauss {
        #[arg(long)]
        q: u64,
        #[arg(long)]
        a: i64,
        #[arg(long)]
        k: u32,
    },
    /// Truncated singular series.
    Sseries {
        #[arg(long)]
        s: u32,
        #[arg(long)]
        k: u32,
        #[arg(long)]
        n: u64,
        #[arg(long, default_value_t = 200)]
        qmax: u64,
        /// Emit one record per q instead of the total.
        #[arg(long)]
        per_q: bool,
    },
    /// Exact counts against the circle-method prediction over a list of n.
    Asym {
        #[arg(long)]
        s: u32,
        #[arg(long)]
        k: u32,
        #[arg(long, default_value_t = 200)]
        qmax: u64,
        #[arg(long, value_delimiter = ',')]
        nlist: Vec<u64>,
    },
    /// Verify an equal-power-sums witness file.
    TarryVerify {
        /// Witness file: header `k h s`, one block per line.
        #[arg(long)]
        file: String,
    },
    /// Exhaustive bounded search for an equal-power-sums witness.
    TarrySearch {
        #[arg(long)]
        k: u32,
        #[arg(long)]
        h: u32,
        #[arg(long)]
        s: u32,
        #[arg(long)]
        height: u64,
        /// Write the witness here when found.
        #[arg(long)]
        out: Option<String>,
    },
    /// Exponent and threshold ledger for a degree.
    Ledger {
        #[arg(long)]
        k: u32,
    },
    /// Leading asymptotic constants for the three-variable quadratic
    /// system, optionally compared against exact counts.
    J32 {
        /// Heights to compare, e.g. 64,128,256; omit for constants only.
        #[arg(long, value_delimiter = ',')]
        xlist: Option<Vec<u64>>,
    },
}

#[derive(Args)]
struct JmeanArgs {
    #[arg(long)]
    s: u32,
    #[arg(long)]
    k: u32,
    #[arg(long)]
    xmax: u64,
    #[arg(long, value_enum, default_value_t = StrategyArg::Mitm)]
    strategy: StrategyArg,
    /// Checkpoint the representation table to this file (mitm only).
    #[arg(long)]
    table_out: Option<String>,
}

#[derive(Args)]
struct PhaseArgs {
    /// Comma-separated coefficients alpha_1,...,alpha_k.
    #[arg(long, value_delimiter = ',')]
    alpha: Option<Vec<f64>>,
    /// Sample this many random phase vectors of degree --k instead.
    #[arg(long)]
    random: Option<u32>,
    /// Degree for sampled phase vectors.
    #[arg(long)]
    k: Option<u32>,
    #[arg(long)]
    xmax: u64,
}

#[derive(Args)]
struct EquiArgs {
    #[arg(long, value_delimiter = ',')]
    alpha: Option<Vec<f64>>,
    #[arg(long)]
    random: Option<u32>,
    #[arg(long)]
    k: Option<u32>,
    #[arg(long)]
    nmax: u64,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            // clap's own exit codes do not match ours; invalid usage is 1
            let is_help = matches!(
                e.kind(),
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion
            );
            let _ = e.print();
            return if is_help {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            };
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::ResourceExceeded { .. } => 2,
        Error::InvariantViolation(_) => 3,
        _ => 1,
    }
}

fn resolve_threads(flag: Option<usize>) -> usize {
    if let Some(t) = flag {
        return t.max(1);
    }
    if let Ok(env) = std::env::var("VMVT_THREADS") {
        if let Ok(t) = env.parse::<usize>() {
            return t.max(1);
        }
    }
    std::thread::available_parallelism()
        .map(|n| n.get())
        .unwrap_or(1)
}

fn run(cli: Cli) -> Result<(), Error> {
    let mut cfg = ComputeConfig::default().with_threads(resolve_threads(cli.threads));
    if let Some(budget) = cli.memory_budget {
        cfg.memory_budget_bytes = budget;
    }
    let format = match cli.format {
        OutputFormat::Csv => Format::Csv,
        OutputFormat::Json => Format::Json,
    };
    let stdout = std::io::stdout();
    let mut emitter = Emitter::new(format, stdout.lock());
    let _ticker = progress::Ticker::start(cfg.progress.clone(), cli.quiet);
    dispatch(cli.command, cli.seed, &cfg, &mut emitter)
}

fn io_err(e: std::io::Error) -> Error {
    Error::InvalidInput(format!("i/o failure: {e}"))
}

fn join_floats(values: &[f64]) -> String {
    values
        .iter()
        .map(|v| format!("{v}"))
        .collect::<Vec<_>>()
        .join(";")
}

fn join_ints(values: &[u64]) -> String {
    values
        .iter()
        .map(|v| v.to_string())
        .collect::<Vec<_>>()
        .join(";")
}

/// Phase vectors from --alpha or --random/--k; exactly one must be given.
fn phase_inputs(
    alpha: Option<Vec<f64>>,
    random: Option<u32>,
    k: Option<u32>,
    seed: u64,
) -> Result<Vec<Vec<f64>>, Error> {
    match (alpha, random) {
        (Some(a), None) => Ok(vec![a]),
        (None, Some(count)) => {
            let degree = k.ok_or_else(|| {
                Error::InvalidInput("--random needs --k for the phase degree".into())
            })?;
            if degree < 1 {
                return Err(Error::InvalidInput("degree must be at least 1".into()));
            }
            let mut rng = StdRng::seed_from_u64(seed);
            Ok((0..count)
                .map(|_| (0..degree).map(|_| rng.gen::<f64>()).collect())
                .collect())
        }
        _ => Err(Error::InvalidInput(
            "give exactly one of --alpha or --random".into(),
        )),
    }
}

fn dispatch(
    command: Command,
    seed: u64,
    cfg: &ComputeConfig,
    out: &mut Emitter<impl Write>,
) -> Result<(), Error> {
    match command {
        Command::Jmean(args) => {
            let params = mean_values::SystemParams::new(args.s, args.k, args.xmax)?;
            let strategy = match args.strategy {
                StrategyArg::Mitm => mean_values::Strategy::MeetInMiddle,
                StrategyArg::Brute => mean_values::Strategy::BruteForce,
            };
            let j = match &args.table_out {
                Some(path) => {
                    if strategy != mean_values::Strategy::MeetInMiddle {
                        return Err(Error::InvalidInput(
                            "--table-out needs the mitm strategy".into(),
                        ));
                    }
                    let table = mean_values::representation_table(args.s, args.k, args.xmax, cfg)?;
                    let mut f = std::io::BufWriter::new(File::create(path).map_err(io_err)?);
                    table.write_to(&mut f).map_err(io_err)?;
                    table.sum_of_squared_counts()
                }
                None => mean_values::count_mean_value(&params, strategy, cfg)?,
            };
            out.emit(&[
                ("s", Value::UInt(args.s as u64)),
                ("k", Value::UInt(args.k as u64)),
                ("X", Value::UInt(args.xmax)),
                ("J", Value::Big(j)),
            ])
            .map_err(io_err)?;
        }
        Command::Tdiag { s, xmax } => {
            let t = mean_values::count_diagonal(s, xmax)?;
            out.emit(&[
                ("s", Value::UInt(s as u64)),
                ("X", Value::UInt(xmax)),
                ("T", Value::Big(t)),
            ])
            .map_err(io_err)?;
        }
        Command::Lowbound { s, k, xmax } => {
            let params = mean_values::SystemParams::new(s, k, xmax)?;
            let (floor, count) = mean_values::lower_bound_certificate(&params, cfg)?;
            out.emit(&[
                ("s", Value::UInt(s as u64)),
                ("k", Value::UInt(k as u64)),
                ("X", Value::UInt(xmax)),
                ("L", Value::Big(floor)),
                ("J", Value::Big(count)),
            ])
            .map_err(io_err)?;
        }
        Command::Newton { k, xmax } => {
            let holds = mean_values::check_newton_identity(k, xmax, cfg)?;
            out.emit(&[
                ("k", Value::UInt(k as u64)),
                ("X", Value::UInt(xmax)),
                ("holds", Value::Bool(holds)),
            ])
            .map_err(io_err)?;
        }
        Command::Progression { s, k, xmax, q, xi } => {
            let params = mean_values::SystemParams::new(s, k, xmax)?;
            let count = mean_values::count_in_progression(&params, q, xi, cfg)?;
            out.emit(&[
                ("s", Value::UInt(s as u64)),
                ("k", Value::UInt(k as u64)),
                ("X", Value::UInt(xmax)),
                ("q", Value::UInt(q)),
                ("xi", Value::Int(xi)),
                ("count", Value::Big(count)),
            ])
            .map_err(io_err)?;
        }
        Command::Slope { s, k, xlist } => {
            let slope = mean_values::fit_empirical_exponent(s, k, &xlist, cfg)?;
            out.emit(&[
                ("s", Value::UInt(s as u64)),
                ("k", Value::UInt(k as u64)),
                ("points", Value::UInt(xlist.len() as u64)),
                ("xmin", Value::UInt(*xlist.first().unwrap())),
                ("xmax", Value::UInt(*xlist.last().unwrap())),
                ("slope", Value::Float(slope)),
            ])
            .map_err(io_err)?;
        }
        Command::Expsum(args) => {
            for alpha in phase_inputs(args.alpha, args.random, args.k, seed)? {
                let pv = exp_sums::PhaseVector::new(&alpha)?;
                let z = exp_sums::eval_f(&pv, args.xmax, cfg);
                out.emit(&[
                    ("alpha", Value::Text(join_floats(pv.components()))),
                    ("X", Value::UInt(args.xmax)),
                    ("re", Value::Float(z.re)),
                    ("im", Value::Float(z.im)),
                    ("abs", Value::Float(z.norm())),
                ])
                .map_err(io_err)?;
            }
        }
        Command::Approx {
            alpha,
            random,
            qbound,
        } => {
            let alphas: Vec<f64> = match (alpha, random) {
                (Some(a), None) => vec![a],
                (None, Some(count)) => {
                    let mut rng = StdRng::seed_from_u64(seed);
                    (0..count).map(|_| rng.gen::<f64>()).collect()
                }
                _ => {
                    return Err(Error::InvalidInput(
                        "give exactly one of --alpha or --random".into(),
                    ))
                }
            };
            for a in alphas {
                let r = exp_sums::dirichlet_approx(a, qbound)?;
                out.emit(&[
                    ("alpha", Value::Float(a)),
                    ("Q", Value::UInt(qbound)),
                    ("a", Value::Int(r.numerator)),
                    ("q", Value::UInt(r.denominator)),
                    ("err", Value::Float(r.err)),
                ])
                .map_err(io_err)?;
            }
        }
        Command::Minor {
            beta,
            random,
            k,
            xmax,
        } => {
            let betas: Vec<f64> = match (beta, random) {
                (Some(b), None) => vec![b],
                (None, Some(count)) => {
                    let mut rng = StdRng::seed_from_u64(seed);
                    (0..count).map(|_| rng.gen::<f64>()).collect()
                }
                _ => {
                    return Err(Error::InvalidInput(
                        "give exactly one of --beta or --random".into(),
                    ))
                }
            };
            for b in betas {
                let minor = exp_sums::is_minor_arc(b, k, xmax)?;
                out.emit(&[
                    ("beta", Value::Float(b)),
                    ("k", Value::UInt(k as u64)),
                    ("X", Value::UInt(xmax)),
                    ("minor", Value::Bool(minor)),
                ])
                .map_err(io_err)?;
            }
        }
        Command::Envelope {
            kind,
            q,
            j,
            k,
            xmax,
            epsilon,
        } => {
            let env = match kind {
                EnvelopeArg::Weyl => exp_sums::weyl_envelope(q, k, xmax, epsilon)?,
                EnvelopeArg::Vinogradov => {
                    let j = j.ok_or_else(|| {
                        Error::InvalidInput("the vinogradov envelope needs --j".into())
                    })?;
                    exp_sums::vinogradov_envelope(q, j, k, xmax, epsilon)?
                }
            };
            out.emit(&[
                ("kind", Value::Text(env.kind.name().into())),
                ("q", Value::UInt(q)),
                ("j", Value::UInt(j.unwrap_or(k) as u64)),
                ("k", Value::UInt(k as u64)),
                ("X", Value::UInt(xmax)),
                ("epsilon", Value::Float(epsilon)),
                ("value", Value::Float(env.value)),
            ])
            .map_err(io_err)?;
        }
        Command::Equi(args) => {
            for alpha in phase_inputs(args.alpha, args.random, args.k, seed)? {
                let pv = exp_sums::PhaseVector::new(&alpha)?;
                let (n_star, value) = exp_sums::equidistribution_min(&pv, args.nmax, cfg)?;
                out.emit(&[
                    ("alpha", Value::Text(join_floats(pv.components()))),
                    ("N", Value::UInt(args.nmax)),
                    ("n_star", Value::UInt(n_star)),
                    ("min", Value::Float(value)),
                ])
                .map_err(io_err)?;
            }
        }
        Command::Cong { k, p, eta, y } => {
            let inst = congruences::CongruenceInstance::new(k, p, eta, y.clone())?;
            let lc = congruences::count_congruence_solutions(&inst, cfg)?;
            out.emit(&[
                ("k", Value::UInt(k as u64)),
                ("p", Value::UInt(p)),
                ("eta", Value::UInt(eta)),
                ("y", Value::Text(join_ints(&y))),
                ("count", Value::UInt(lc.count)),
                ("bound", Value::Text(lc.bound.to_string())),
            ])
            .map_err(io_err)?;
        }
        Command::Congdeep { k, p, xi, eta, y } => {
            let lc = congruences::count_deep_congruence_solutions(k, p, xi, eta, &y, cfg)?;
            out.emit(&[
                ("k", Value::UInt(k as u64)),
                ("p", Value::UInt(p)),
                ("xi", Value::UInt(xi)),
                ("eta", Value::UInt(eta)),
                ("y", Value::Text(join_ints(&y))),
                ("count", Value::UInt(lc.count)),
                ("bound", Value::Text(lc.bound.to_string())),
            ])
            .map_err(io_err)?;
        }
        Command::Waring { s, k, n } => {
            let inst = waring::WaringInstance::new(s, k, n)?;
            let r = waring::count_representations(&inst, cfg)?;
            out.emit(&[
                ("s", Value::UInt(s as u64)),
                ("k", Value::UInt(k as u64)),
                ("n", Value::UInt(n)),
                ("R", Value::Big(r)),
            ])
            .map_err(io_err)?;
        }
        Command::Gauss { q, a, k } => {
            let z = waring::gauss_sum(q, a, k)?;
            out.emit(&[
                ("q", Value::UInt(q)),
                ("a", Value::Int(a)),
                ("k", Value::UInt(k as u64)),
                ("re", Value::Float(z.re)),
                ("im", Value::Float(z.im)),
                ("abs", Value::Float(z.norm())),
            ])
            .map_err(io_err)?;
        }
        Command::Sseries {
            s,
            k,
            n,
            qmax,
            per_q,
        } => {
            let inst = waring::WaringInstance::new(s, k, n)?;
            let series = waring::singular_series(&inst, qmax, cfg)?;
            if per_q {
                let mut partial = 0.0;
                for (i, term) in series.terms.iter().enumerate() {
                    partial += term;
                    out.emit(&[
                        ("q", Value::UInt(i as u64 + 1)),
                        ("term", Value::Float(*term)),
                        ("partial", Value::Float(partial)),
                    ])
                    .map_err(io_err)?;
                }
            } else {
                out.emit(&[
                    ("s", Value::UInt(s as u64)),
                    ("k", Value::UInt(k as u64)),
                    ("n", Value::UInt(n)),
                    ("Q", Value::UInt(qmax)),
                    ("value", Value::Float(series.value)),
                    ("tail_est", Value::Float(series.tail_estimate)),
                ])
                .map_err(io_err)?;
            }
        }
        Command::Asym { s, k, qmax, nlist } => {
            let rows = waring::asymptotic_report(s, k, qmax, &nlist, cfg)?;
            for row in rows {
                out.emit(&[
                    ("n", Value::UInt(row.n)),
                    ("R", Value::Big(row.exact)),
                    ("predicted", Value::Float(row.predicted)),
                    ("ratio", Value::Float(row.ratio)),
                ])
                .map_err(io_err)?;
            }
        }
        Command::TarryVerify { file } => {
            let f = File::open(&file).map_err(io_err)?;
            let witness = tarry::read_witness(&mut BufReader::new(f))?;
            out.emit(&[
                ("k", Value::UInt(witness.k as u64)),
                ("h", Value::UInt(witness.h as u64)),
                ("s", Value::UInt(witness.s as u64)),
                ("valid", Value::Bool(tarry::verify_witness(&witness))),
            ])
            .map_err(io_err)?;
        }
        Command::TarrySearch {
            k,
            h,
            s,
            height,
            out: out_path,
        } => {
            let found = tarry::search_witness(k, h, s, height, cfg)?;
            let blocks = found
                .as_ref()
                .map(|w| {
                    w.blocks
                        .iter()
                        .map(|b| {
                            b.iter()
                                .map(|x| x.to_string())
                                .collect::<Vec<_>>()
                                .join(";")
                        })
                        .collect::<Vec<_>>()
                        .join("|")
                })
                .unwrap_or_default();
            if let (Some(w), Some(path)) = (&found, &out_path) {
                let mut f = File::create(path).map_err(io_err)?;
                tarry::write_witness(w, &mut f).map_err(io_err)?;
            }
            out.emit(&[
                ("k", Value::UInt(k as u64)),
                ("h", Value::UInt(h as u64)),
                ("s", Value::UInt(s as u64)),
                ("height", Value::UInt(height)),
                ("found", Value::Bool(found.is_some())),
                ("blocks", Value::Text(blocks)),
            ])
            .map_err(io_err)?;
        }
        Command::Ledger { k } => {
            for r in exponents::ledger(k)? {
                out.emit(&[
                    ("source", Value::Text(r.source.into())),
                    (
                        "k",
                        r.k.map(|v| Value::UInt(v as u64))
                            .unwrap_or(Value::Text(String::new())),
                    ),
                    (
                        "s",
                        r.s.map(Value::Float).unwrap_or(Value::Text(String::new())),
                    ),
                    ("kind", Value::Text(r.kind.name().into())),
                    ("value", Value::Float(r.value)),
                    ("citation", Value::Text(r.citation.into())),
                ])
                .map_err(io_err)?;
            }
        }
        Command::J32 { xlist } => match xlist {
            None => {
                let (c1, c2) = exponents::j32_constants();
                out.emit(&[("c1", Value::Float(c1)), ("c2", Value::Float(c2))])
                    .map_err(io_err)?;
            }
            Some(xs) => {
                for row in exponents::compare_asymptotic_j32(&xs, cfg)? {
                    out.emit(&[
                        ("X", Value::UInt(row.x_max)),
                        ("exact", Value::Big(row.exact)),
                        ("predicted", Value::Float(row.predicted)),
                        ("rel_err", Value::Float(row.relative_error)),
                    ])
                    .map_err(io_err)?;
                }
            }
        },
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exit_codes_follow_the_contract() {
        assert_eq!(exit_code(&Error::InvalidInput("x".into())), 1);
        assert_eq!(exit_code(&Error::NotPrime(9)), 1);
        assert_eq!(exit_code(&Error::ResiduesNotDistinct), 1);
        assert_eq!(
            exit_code(&Error::ResourceExceeded {
                needed_bytes: 2,
                budget_bytes: 1,
                hint: "",
            }),
            2
        );
        assert_eq!(exit_code(&Error::InvariantViolation("x".into())), 3);
    }
}
