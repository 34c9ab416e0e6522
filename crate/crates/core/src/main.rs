//! Command-line front end. Every subcommand routes to one library
//! operation and emits deterministic, stable-ordered output.
//!
//! Exit codes: 0 success, 1 invalid arguments, 2 resource cap exceeded,
//! 3 search budget exhausted (no result, honestly absent).

use clap::{Parser, Subcommand, ValueEnum};
use num_rational::BigRational;
use serde::Serialize;
use smoothsum::bounds::{self, BoundConstants};
use smoothsum::carmichael::{self, WindowBudget};
use smoothsum::repr::{self, FOutcome};
use smoothsum::residue::{self, ObstructionBudget};
use smoothsum::signed::{self, EvertseTuple};
use smoothsum::smooth::{self, PrimeSet};
use smoothsum::{Error, ResourceLimits, Result};
use std::io::Write as _;
use std::str::FromStr;

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Parser)]
#[command(
    name = "smoothsum",
    version,
    about = "Exact computation with P-smooth numbers: enumeration, minimal \
             representation lengths, threshold functions, Carmichael lambda, \
             residue-coverage obstructions and growth-bound reports"
)]
struct Cli {
    /// Output format (csv is available for tabular commands: gaps, bounds)
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,

    /// Worker threads for range sweeps; results do not depend on this
    #[arg(long, global = true)]
    threads: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

fn parse_rational(s: &str) -> std::result::Result<BigRational, String> {
    BigRational::from_str(s.trim()).map_err(|e| format!("{e} (use integer or num/den form)"))
}

#[derive(Subcommand)]
enum Command {
    /// List every element of A up to a limit in increasing order
    Enumerate {
        #[arg(long, value_delimiter = ',', required = true)]
        primes: Vec<u64>,
        #[arg(long)]
        limit: u64,
        /// Include exponent vectors in text output
        #[arg(long)]
        exponents: bool,
    },
    /// Build the minimal-term table; query one entry or export it
    MinTerms {
        #[arg(long, value_delimiter = ',', required = true)]
        primes: Vec<u64>,
        #[arg(long)]
        limit: u64,
        /// Entries above this count are stored as unreachable
        #[arg(long, default_value_t = 64)]
        term_cap: u8,
        /// Query a single n instead of printing the summary
        #[arg(long)]
        n: Option<u64>,
        /// Write the binary table to this path
        #[arg(long)]
        export: Option<std::path::PathBuf>,
    },
    /// F(k): least n that is not a sum of at most k elements of A
    F {
        #[arg(long, value_delimiter = ',', required = true)]
        primes: Vec<u64>,
        #[arg(long)]
        k: u32,
        #[arg(long)]
        limit: u64,
        /// Use the "fewer than k terms" convention (shifts the index by one)
        #[arg(long)]
        less_than: bool,
    },
    /// Minimal signed representation of one target, with witness terms
    SignedTerms {
        #[arg(long, value_delimiter = ',', required = true)]
        primes: Vec<u64>,
        #[arg(long, allow_hyphen_values = true)]
        n: i64,
        /// Term magnitude bound; default max(n^2, 16)
        #[arg(long)]
        bound: Option<u64>,
        /// Longest representation searched for
        #[arg(long, default_value_t = 16)]
        cap: u32,
    },
    /// Signed variant of F over terms from A and -A
    FSigned {
        #[arg(long, value_delimiter = ',', required = true)]
        primes: Vec<u64>,
        #[arg(long)]
        k: u32,
        #[arg(long)]
        limit: u64,
        /// Term magnitude bound; default limit^2 (certification threshold)
        #[arg(long)]
        bound: Option<u64>,
    },
    /// Greedy decomposition of n into non-increasing elements of A
    Greedy {
        #[arg(long, value_delimiter = ',', required = true)]
        primes: Vec<u64>,
        #[arg(long)]
        n: u64,
    },
    /// Gap records n - predecessor(n) over a sampled range
    Gaps {
        #[arg(long, value_delimiter = ',', required = true)]
        primes: Vec<u64>,
        #[arg(long)]
        lo: u64,
        #[arg(long)]
        hi: u64,
        #[arg(long, default_value_t = 1)]
        stride: u64,
    },
    /// Carmichael function of m
    Lambda {
        #[arg(long)]
        m: u64,
    },
    /// L = lcm(1..y), m = product of primes q with q-1 | L
    EpsConstruct {
        #[arg(long)]
        y: u32,
    },
    /// Search for m with log m in [log i, (log i)^c3] and small lambda
    LambdaWindow {
        #[arg(long)]
        i: u64,
        #[arg(long, default_value_t = 3.0)]
        c3: f64,
        #[arg(long, default_value_t = 3.0)]
        c4: f64,
        #[arg(long, default_value_t = 40)]
        max_y: u32,
        #[arg(long, default_value_t = 100_000)]
        max_checks: u64,
    },
    /// Residues mod m covered by sums of at most k (signed) smooth terms
    Coverage {
        #[arg(long, value_delimiter = ',', required = true)]
        primes: Vec<u64>,
        #[arg(long)]
        k: u32,
        #[arg(long)]
        m: u64,
        #[arg(long)]
        signed: bool,
        /// How many missing residues to list
        #[arg(long, default_value_t = 10)]
        missing: usize,
    },
    /// Search for an obstruction certificate bounding the signed threshold
    Certify {
        #[arg(long, value_delimiter = ',', required = true)]
        primes: Vec<u64>,
        #[arg(long)]
        k: u32,
        #[arg(long, default_value_t = 12)]
        max_y: u32,
        #[arg(long, default_value_t = 4000)]
        max_candidates: usize,
        #[arg(long, default_value_t = 20_000_000)]
        modulus_cap: u64,
        #[arg(long, default_value_t = 2_000_000)]
        work_cap: u64,
        #[arg(long, default_value_t = 10_000)]
        verify_witness_max: u64,
    },
    /// Log-space bound evaluation, with empirical sweeps when primes given
    Bounds {
        #[arg(long)]
        k: u64,
        /// Prime count; inferred from --primes when present
        #[arg(long)]
        t: Option<u64>,
        #[arg(long, value_delimiter = ',')]
        primes: Option<Vec<u64>>,
        #[arg(long, default_value_t = 1.0)]
        epsilon: f64,
        #[arg(long, default_value_t = 1.0)]
        c: f64,
        #[arg(long, default_value_t = 1.0)]
        big_c: f64,
        #[arg(long, default_value_t = 1.0)]
        c_pm: f64,
        #[arg(long, default_value_t = 1.0)]
        c1: f64,
        #[arg(long, default_value_t = 2.0)]
        c2: f64,
        #[arg(long, default_value_t = 1.0)]
        c6: f64,
        /// Largest n in the greedy/count sweeps
        #[arg(long, default_value_t = 1_000_000)]
        sweep_max: u64,
        /// Largest m in the lambda statistic sweep
        #[arg(long, default_value_t = 100_000)]
        m_max: u64,
    },
    /// Exact count of n <= limit coprime to every prime of P
    SieveCount {
        #[arg(long, value_delimiter = ',', required = true)]
        primes: Vec<u64>,
        #[arg(long)]
        limit: u64,
    },
    /// Check the four S-unit finiteness hypotheses on a tuple
    EvertseCheck {
        /// Comma-separated entries x_0,..,x_l
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true, required = true)]
        entries: Vec<i64>,
        #[arg(long, value_delimiter = ',', default_value = "2,3")]
        s0: Vec<u64>,
        #[arg(long, value_parser = parse_rational, default_value = "1")]
        c: BigRational,
        #[arg(long, value_parser = parse_rational, default_value = "1/2")]
        d: BigRational,
    },
}

fn main() {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = match e.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            let _ = e.print();
            std::process::exit(code);
        }
    };
    if let Some(n) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n).build_global() {
            eprintln!("error: cannot configure thread pool: {e}");
            std::process::exit(1);
        }
    }
    match run(cli.format, cli.command) {
        Ok(code) => std::process::exit(code),
        Err(e) => {
            eprintln!("error: {e}");
            std::process::exit(e.exit_code());
        }
    }
}

fn emit_json<T: Serialize>(value: &T) -> Result<()> {
    let mut out = std::io::stdout().lock();
    let s = serde_json::to_string(value)
        .map_err(|e| Error::Internal(format!("serialization failed: {e}")))?;
    writeln!(out, "{s}")?;
    Ok(())
}

fn csv_unsupported(cmd: &str) -> Error {
    Error::InvalidArgument(format!(
        "csv output is not available for `{cmd}`; use text or json"
    ))
}

fn run(format: Format, command: Command) -> Result<i32> {
    let limits = ResourceLimits::from_env();
    match command {
        Command::Enumerate {
            primes,
            limit,
            exponents,
        } => {
            let ps = PrimeSet::new(&primes)?;
            let list = smooth::enumerate_smooth(&ps, limit, &limits)?;
            match format {
                Format::Text => {
                    if exponents {
                        for s in &list {
                            println!(
                                "{} {}",
                                s.value(),
                                s.exponents()
                                    .iter()
                                    .map(|e| e.to_string())
                                    .collect::<Vec<_>>()
                                    .join(",")
                            );
                        }
                    } else {
                        let vals: Vec<String> =
                            list.iter().map(|s| s.value().to_string()).collect();
                        println!("{}", vals.join(" "));
                    }
                }
                Format::Json => emit_json(&list)?,
                Format::Csv => return Err(csv_unsupported("enumerate")),
            }
            Ok(0)
        }

        Command::MinTerms {
            primes,
            limit,
            term_cap,
            n,
            export,
        } => {
            let ps = PrimeSet::new(&primes)?;
            let table = repr::build_min_terms(&ps, limit, term_cap, &limits)?;
            if let Some(path) = &export {
                let mut f = std::fs::File::create(path)?;
                table.write_binary(&mut f)?;
            }
            match n {
                Some(n) => {
                    if n < 1 || n > limit {
                        return Err(Error::InvalidArgument(format!(
                            "n must lie in [1, {limit}]"
                        )));
                    }
                    #[derive(Serialize)]
                    struct Entry {
                        n: u64,
                        min_terms: Option<u8>,
                        term_cap: u8,
                    }
                    let entry = Entry {
                        n,
                        min_terms: table.min_terms(n),
                        term_cap,
                    };
                    match format {
                        Format::Text => match entry.min_terms {
                            Some(v) => println!("{v}"),
                            None => println!("unreachable(>{term_cap})"),
                        },
                        Format::Json => emit_json(&entry)?,
                        Format::Csv => return Err(csv_unsupported("min-terms")),
                    }
                }
                None => {
                    let summary = table.summary();
                    match format {
                        Format::Text => {
                            for e in &summary.f {
                                match e.outcome {
                                    FOutcome::Value(v) => println!("F({}) = {}", e.k, v),
                                    FOutcome::ExceedsLimit(l) => {
                                        println!("F({}) > {} (limit)", e.k, l)
                                    }
                                }
                            }
                        }
                        Format::Json => emit_json(&summary)?,
                        Format::Csv => return Err(csv_unsupported("min-terms")),
                    }
                }
            }
            Ok(0)
        }

        Command::F {
            primes,
            k,
            limit,
            less_than,
        } => {
            let ps = PrimeSet::new(&primes)?;
            if k < 1 {
                return Err(Error::InvalidArgument("k must be >= 1".into()));
            }
            let outcome = if less_than {
                // fewer than k terms = at most k-1 terms
                if k == 1 {
                    FOutcome::Value(1) // only the empty sum is allowed
                } else {
                    repr::f_of_k(&ps, k - 1, limit, &limits)?
                }
            } else {
                repr::f_of_k(&ps, k, limit, &limits)?
            };
            #[derive(Serialize)]
            struct Out {
                primes: Vec<u64>,
                k: u32,
                limit: u64,
                less_than: bool,
                outcome: FOutcome,
            }
            match format {
                Format::Text => match outcome {
                    FOutcome::Value(v) => println!("{v}"),
                    FOutcome::ExceedsLimit(l) => println!("exceeds {l}"),
                },
                Format::Json => emit_json(&Out {
                    primes: ps.primes().to_vec(),
                    k,
                    limit,
                    less_than,
                    outcome,
                })?,
                Format::Csv => return Err(csv_unsupported("f")),
            }
            Ok(if outcome.value().is_some() { 0 } else { 3 })
        }

        Command::SignedTerms {
            primes,
            n,
            bound,
            cap,
        } => {
            let ps = PrimeSet::new(&primes)?;
            let bound =
                bound.unwrap_or_else(|| n.unsigned_abs().saturating_mul(n.unsigned_abs()).max(16));
            let result = signed::min_terms_signed(&ps, n, bound, cap, &limits)?;
            match format {
                Format::Text => match result.length {
                    Some(len) => {
                        let rendered: Vec<String> = result
                            .terms
                            .iter()
                            .map(|t| {
                                format!(
                                    "{}{}",
                                    if t.negative { "-" } else { "+" },
                                    t.term.value()
                                )
                            })
                            .collect();
                        println!(
                            "length {len}: {}{}",
                            rendered.join(" "),
                            if result.certified { "" } else { " (under bound)" }
                        );
                    }
                    None => println!("not found within cap {cap} and bound {bound}"),
                },
                Format::Json => emit_json(&result)?,
                Format::Csv => return Err(csv_unsupported("signed-terms")),
            }
            Ok(if result.length.is_some() { 0 } else { 3 })
        }

        Command::FSigned {
            primes,
            k,
            limit,
            bound,
        } => {
            let ps = PrimeSet::new(&primes)?;
            let bound = bound.unwrap_or_else(|| limit.saturating_mul(limit));
            let (outcome, certified) = signed::f_pm_of_k(&ps, k, limit, bound, &limits)?;
            #[derive(Serialize)]
            struct Out {
                primes: Vec<u64>,
                k: u32,
                limit: u64,
                bound: u64,
                outcome: FOutcome,
                certified: bool,
            }
            match format {
                Format::Text => match outcome {
                    FOutcome::Value(v) => {
                        println!("{v}{}", if certified { "" } else { " (under bound)" })
                    }
                    FOutcome::ExceedsLimit(l) => println!("exceeds {l}"),
                },
                Format::Json => emit_json(&Out {
                    primes: ps.primes().to_vec(),
                    k,
                    limit,
                    bound,
                    outcome,
                    certified,
                })?,
                Format::Csv => return Err(csv_unsupported("f-signed")),
            }
            Ok(if outcome.value().is_some() { 0 } else { 3 })
        }

        Command::Greedy { primes, n } => {
            let ps = PrimeSet::new(&primes)?;
            let terms = smooth::greedy_decompose(&ps, n)?;
            match format {
                Format::Text => {
                    let vals: Vec<String> = terms.iter().map(|t| t.value().to_string()).collect();
                    println!("{}", vals.join(" "));
                }
                Format::Json => emit_json(&terms)?,
                Format::Csv => return Err(csv_unsupported("greedy")),
            }
            Ok(0)
        }

        Command::Gaps {
            primes,
            lo,
            hi,
            stride,
        } => {
            let ps = PrimeSet::new(&primes)?;
            let stats = smooth::gap_statistics(&ps, lo, hi, stride, &limits)?;
            match format {
                Format::Text => {
                    let s = &stats.summary;
                    println!("samples {}", s.samples);
                    println!("max_gap {} at n={}", s.max_gap, s.max_gap_at);
                    println!(
                        "max_relative_gap {:.9} at n={}",
                        s.max_relative_gap, s.max_relative_gap_at
                    );
                }
                Format::Json => emit_json(&stats)?,
                Format::Csv => {
                    let mut out = std::io::stdout().lock();
                    writeln!(out, "n,predecessor,gap")?;
                    for r in &stats.records {
                        writeln!(out, "{},{},{}", r.n, r.predecessor, r.gap)?;
                    }
                }
            }
            Ok(0)
        }

        Command::Lambda { m } => {
            let lambda = carmichael::carmichael_lambda(m)?;
            #[derive(Serialize)]
            struct Out {
                m: u64,
                lambda: u64,
                factorization: String,
            }
            match format {
                Format::Text => println!("{lambda}"),
                Format::Json => emit_json(&Out {
                    m,
                    lambda,
                    factorization: carmichael::factorize(m)?.to_string_compact(),
                })?,
                Format::Csv => return Err(csv_unsupported("lambda")),
            }
            Ok(0)
        }

        Command::EpsConstruct { y } => {
            let r = carmichael::eps_construct(y)?;
            print_lambda_result(format, y as u64, &r)?;
            Ok(0)
        }

        Command::LambdaWindow {
            i,
            c3,
            c4,
            max_y,
            max_checks,
        } => {
            let budget = WindowBudget { max_y, max_checks };
            match carmichael::find_small_lambda_window(i, c3, c4, &budget)? {
                Some(r) => {
                    print_lambda_result(format, i, &r)?;
                    Ok(0)
                }
                None => {
                    eprintln!("no qualifying modulus within budget");
                    Ok(3)
                }
            }
        }

        Command::Coverage {
            primes,
            k,
            m,
            signed,
            missing,
        } => {
            let ps = PrimeSet::new(&primes)?;
            let cov = residue::sumset_coverage(&ps, k, m, signed, &limits)?;
            let summary = cov.summary(missing);
            let bound = residue::coverage_bound_check(&ps, k, m, &limits)?;
            #[derive(Serialize)]
            struct Out {
                coverage: residue::CoverageSummary,
                unsigned_bound_check: residue::CoverageBoundReport,
            }
            match format {
                Format::Text => {
                    println!(
                        "covered {}/{} ({}signed, k={})",
                        summary.covered,
                        summary.m,
                        if signed { "" } else { "un" },
                        k
                    );
                    if summary.missing > 0 {
                        println!(
                            "missing {} residues; first: {:?}",
                            summary.missing, summary.first_missing
                        );
                    }
                    println!(
                        "count bound: log {} <= {} * log({}) -> {}",
                        bound.coverage_size,
                        bound.k * bound.t as u32,
                        bound.lambda + bound.max_alpha as u64 + 1,
                        if bound.holds { "holds" } else { "VIOLATED" }
                    );
                }
                Format::Json => emit_json(&Out {
                    coverage: summary,
                    unsigned_bound_check: bound,
                })?,
                Format::Csv => return Err(csv_unsupported("coverage")),
            }
            Ok(0)
        }

        Command::Certify {
            primes,
            k,
            max_y,
            max_candidates,
            modulus_cap,
            work_cap,
            verify_witness_max,
        } => {
            let ps = PrimeSet::new(&primes)?;
            let budget = ObstructionBudget {
                max_y,
                max_candidates,
                modulus_cap,
                residue_work_cap: work_cap,
                verify_witness_max,
            };
            match residue::find_obstruction(&ps, k, &budget, &limits)? {
                Some(cert) => {
                    match format {
                        Format::Text => {
                            println!(
                                "m={} lambda={} residue={} witness={} checked_by_search={}",
                                cert.m,
                                cert.lambda_m,
                                cert.residue,
                                cert.witness_n,
                                cert.checked_by_search
                            );
                            println!("implied: F_pm({}) <= {}", cert.k, cert.witness_n);
                        }
                        Format::Json => emit_json(&cert)?,
                        Format::Csv => return Err(csv_unsupported("certify")),
                    }
                    Ok(0)
                }
                None => {
                    eprintln!("no obstruction found within budget");
                    Ok(3)
                }
            }
        }

        Command::Bounds {
            k,
            t,
            primes,
            epsilon,
            c,
            big_c,
            c_pm,
            c1,
            c2,
            c6,
            sweep_max,
            m_max,
        } => {
            let consts = BoundConstants {
                c,
                big_c,
                c_pm,
                epsilon,
                c1,
                c2,
                c6,
            };
            let ps = primes.map(|p| PrimeSet::new(&p)).transpose()?;
            let t = match (&ps, t) {
                (Some(ps), Some(t)) if ps.count() as u64 != t => {
                    return Err(Error::InvalidArgument(format!(
                        "--t {t} contradicts --primes (t = {})",
                        ps.count()
                    )));
                }
                (Some(ps), _) => ps.count() as u64,
                (None, Some(t)) => t,
                (None, None) => {
                    return Err(Error::InvalidArgument(
                        "give --t or --primes".into(),
                    ));
                }
            };
            let report = build_bounds_report(k, t, ps.as_ref(), &consts, sweep_max, m_max, &limits)?;
            match format {
                Format::Text => print_bounds_text(&report),
                Format::Json => emit_json(&report)?,
                Format::Csv => print_bounds_csv(&report)?,
            }
            Ok(0)
        }

        Command::SieveCount { primes, limit } => {
            let ps = PrimeSet::new(&primes)?;
            let r = bounds::sieve_count_coprime(&ps, limit)?;
            match format {
                Format::Text => {
                    println!("exact {}", r.exact);
                    println!(
                        "product_lower_bound {:.6} -> {}",
                        r.product_lower_bound,
                        if r.holds_product { "holds" } else { "VIOLATED" }
                    );
                    println!(
                        "simple_lower_bound {:.6} -> {}",
                        r.simple_lower_bound,
                        if r.holds_simple { "holds" } else { "VIOLATED" }
                    );
                }
                Format::Json => emit_json(&r)?,
                Format::Csv => return Err(csv_unsupported("sieve-count")),
            }
            Ok(0)
        }

        Command::EvertseCheck { entries, s0, c, d } => {
            let tuple = EvertseTuple {
                entries,
                s0: PrimeSet::new(&s0)?,
                c,
                d,
            };
            let verdict = signed::check_evertse_conditions(&tuple)?;
            match format {
                Format::Text => {
                    println!("zero_sum {}", verdict.zero_sum);
                    println!("no_vanishing_subsum {}", verdict.no_vanishing_subsum);
                    println!("gcd_one {}", verdict.gcd_one);
                    println!("product_bound {}", verdict.product_bound);
                    if let Some(p) = &verdict.product {
                        println!("product {p} (max_abs {})", verdict.max_abs);
                    }
                    println!("all_hold {}", verdict.all_hold());
                }
                Format::Json => emit_json(&verdict)?,
                Format::Csv => return Err(csv_unsupported("evertse-check")),
            }
            Ok(0)
        }
    }
}

#[derive(Serialize)]
struct LambdaResultOut {
    input: u64,
    m: String,
    m_digits: usize,
    lambda: u64,
    ln_m: f64,
    window_log_low: f64,
    window_log_high: f64,
    l: u64,
}

fn print_lambda_result(
    format: Format,
    input: u64,
    r: &carmichael::LambdaSearchResult,
) -> Result<()> {
    let m_str = r.m.to_string();
    let out = LambdaResultOut {
        input,
        m_digits: m_str.len(),
        m: m_str,
        lambda: r.lambda,
        ln_m: r.ln_m(),
        window_log_low: r.window_log_low,
        window_log_high: r.window_log_high,
        l: r.smooth_exponent_l,
    };
    match format {
        Format::Text => {
            println!("L {}", out.l);
            println!("lambda {}", out.lambda);
            println!("m {} ({} digits, ln {:.4})", out.m, out.m_digits, out.ln_m);
        }
        Format::Json => emit_json(&out)?,
        Format::Csv => return Err(csv_unsupported("eps-construct/lambda-window")),
    }
    Ok(())
}

#[derive(Serialize)]
struct BoundsReport {
    k: u64,
    t: u64,
    constants: BoundConstants,
    entries: Vec<bounds::BoundEntry>,
    greedy: Option<Vec<bounds::GreedyBoundRow>>,
    counts: Option<Vec<bounds::CountBoundRow>>,
    fitted_c6: Option<f64>,
    sieve: Option<bounds::SieveCountReport>,
    lambda_sample: Option<bounds::LambdaSampleReport>,
    note: &'static str,
}

fn sweep_points(max: u64) -> Vec<u64> {
    let mut pts = Vec::new();
    let mut v = 100u64;
    while v <= max {
        pts.push(v);
        v = v.saturating_mul(10);
    }
    if pts.is_empty() {
        pts.push(max.max(16));
    }
    pts
}

fn build_bounds_report(
    k: u64,
    t: u64,
    ps: Option<&PrimeSet>,
    consts: &BoundConstants,
    sweep_max: u64,
    m_max: u64,
    limits: &ResourceLimits,
) -> Result<BoundsReport> {
    let entries = bounds::eval_bounds(k, t, consts)?;
    let (mut greedy, mut counts, mut fit, mut sieve, mut lambda_sample) =
        (None, None, None, None, None);
    if let Some(ps) = ps {
        let pts = sweep_points(sweep_max);
        greedy = Some(bounds::greedy_bound_rows(ps, &pts, consts.c1, consts.c2)?);
        let mut rows = Vec::new();
        for &n in &pts {
            rows.push(bounds::count_smooth_bound_check(ps, n, consts.c6, limits)?);
        }
        counts = Some(rows);
        fit = Some(bounds::fitted_c6(ps, &pts, limits)?);
        sieve = Some(bounds::sieve_count_coprime(ps, sweep_max.min(10_000_000))?);
        lambda_sample = Some(bounds::lambda_lower_sample(m_max, limits)?);
    }
    Ok(BoundsReport {
        k,
        t,
        constants: consts.clone(),
        entries,
        greedy,
        counts,
        fitted_c6: fit,
        sieve,
        lambda_sample,
        note: bounds::LIMITATION_NOTE,
    })
}

fn print_bounds_text(r: &BoundsReport) {
    println!("k {} t {}", r.k, r.t);
    for e in &r.entries {
        println!("log {} = {:.6}   [{}]", e.name, e.log_value, e.formula);
    }
    if let Some(rows) = &r.greedy {
        for row in rows {
            println!(
                "greedy n={} observed={} formula={:.3} {}",
                row.n,
                row.observed_terms,
                row.formula_value,
                if row.holds { "holds" } else { "exceeded" }
            );
        }
    }
    if let Some(rows) = &r.counts {
        for row in rows {
            println!(
                "count n={} count={} log_bound={:.3} {}",
                row.n,
                row.count,
                row.log_bound,
                if row.holds { "holds" } else { "exceeded" }
            );
        }
    }
    if let Some(fit) = r.fitted_c6 {
        println!("fitted_c6 {fit:.6}");
    }
    if let Some(s) = &r.sieve {
        println!(
            "sieve exact={} simple_lower={:.3} {}",
            s.exact,
            s.simple_lower_bound,
            if s.holds_simple { "holds" } else { "VIOLATED" }
        );
    }
    if let Some(l) = &r.lambda_sample {
        println!(
            "lambda_sample min_stat={:.6} at m={} = {} (lambda {})",
            l.min_statistic, l.argmin_m, l.argmin_factorization, l.argmin_lambda
        );
    }
    println!("note: {}", r.note);
}

fn print_bounds_csv(r: &BoundsReport) -> Result<()> {
    let mut out = std::io::stdout().lock();
    writeln!(out, "section,name,n,observed,log_value,log_bound,holds")?;
    for e in &r.entries {
        writeln!(out, "bound,{},,,{:.12},,", e.name, e.log_value)?;
    }
    if let Some(rows) = &r.greedy {
        for row in rows {
            writeln!(
                out,
                "greedy,,{},{},,{:.12},{}",
                row.n, row.observed_terms, row.formula_value, row.holds
            )?;
        }
    }
    if let Some(rows) = &r.counts {
        for row in rows {
            writeln!(
                out,
                "count,,{},{},{:.12},{:.12},{}",
                row.n, row.count, row.log_count, row.log_bound, row.holds
            )?;
        }
    }
    if let Some(fit) = r.fitted_c6 {
        writeln!(out, "fit,c6,,,{fit:.12},,")?;
    }
    if let Some(s) = &r.sieve {
        writeln!(
            out,
            "sieve,,{},{},,{:.12},{}",
            s.n_limit, s.exact, s.simple_lower_bound, s.holds_simple
        )?;
    }
    if let Some(l) = &r.lambda_sample {
        writeln!(
            out,
            "lambda_sample,{},{},{},{:.12},,",
            l.argmin_factorization, l.argmin_m, l.argmin_lambda, l.min_statistic
        )?;
    }
    writeln!(out, "note,\"{}\",,,,,", r.note)?;
    Ok(())
}
