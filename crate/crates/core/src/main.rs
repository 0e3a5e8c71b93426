use std::io::{self, BufWriter, Write};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use zerosum::cache::{cached_ell, Cache, CacheStatus};
use zerosum::formats::{format_sides, parse_chain, parse_pair_json, parse_plan, parse_sides};
use zerosum::{
    derive_chain_sides, derive_product_sides, enumerate_irreducible, extremal_construction,
    extremal_pairs, is_irreducible, pair_canonical, pair_to_json, reducibility_witness, selftest,
    EllReport, EnumConfig, EnumError, Mode, Multiset, Pair, Reducibility,
};

/// Success, or an irreducible pair for `check`.
const EXIT_OK: u8 = 0;
/// A negative answer: reducible pair, failed derivation, failed self test.
const EXIT_NEGATIVE: u8 = 1;
/// Unparseable input or an unusable configuration.
const EXIT_USAGE: u8 = 2;

#[derive(Parser)]
#[command(
    name = "zerosum",
    version,
    about = "Irreducible zero-sum sequences and k-irreducible pairs"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Decide whether a pair `A | B` is irreducible
    Check {
        /// Pair in text form (`7^3 1^2 | 6^3 5`) or JSON
        pair: String,
    },
    /// Apply a product derivation or a chain of single derivations
    Derive {
        /// Pair in text form; `a` values come from the left side
        pair: String,
        /// Product plan, e.g. `7,6^2;7,5`
        #[arg(long, conflicts_with = "chain", required_unless_present = "chain")]
        product: Option<String>,
        /// Chain of single derivations, e.g. `5,2;3,2`
        #[arg(long)]
        chain: Option<String>,
    },
    /// Compute ell(k), the maximum length of a k-irreducible pair, within a sum cap
    Ell {
        k: u32,
        #[arg(long, value_enum, default_value_t = Mode::Brute)]
        mode: Mode,
        /// Largest common sum scanned [default: k^2]
        #[arg(long)]
        sum_cap: Option<u64>,
        /// Neither read nor write the report cache
        #[arg(long)]
        no_cache: bool,
        /// Print the report as JSON
        #[arg(long)]
        json: bool,
        #[arg(long)]
        workers: Option<usize>,
    },
    /// List k-irreducible pairs, one per line
    Enumerate {
        k: u32,
        #[arg(long, value_enum, default_value_t = Mode::Brute)]
        mode: Mode,
        /// Largest common sum scanned [default: k^2]
        #[arg(long)]
        sum_cap: Option<u64>,
        #[arg(long)]
        min_len: Option<u64>,
        #[arg(long)]
        max_len: Option<u64>,
        #[arg(long, value_enum, default_value_t = Format::Plain)]
        format: Format,
        #[arg(long)]
        workers: Option<usize>,
    },
    /// List the k-irreducible pairs of length 2k-1 and compare with the extremal construction
    Extremal {
        k: u32,
        #[arg(long, value_enum, default_value_t = Mode::Brute)]
        mode: Mode,
        #[arg(long)]
        sum_cap: Option<u64>,
    },
    /// Run the verification suites at reduced scale
    Selftest {
        #[arg(long, default_value_t = 2024)]
        seed: u64,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Plain,
    Json,
    Csv,
}

fn parse_input_sides(text: &str) -> Result<(Multiset, Multiset), ExitCode> {
    let parsed = if text.trim_start().starts_with('{') {
        parse_pair_json(text).map(Pair::into_parts)
    } else {
        parse_sides(text)
    };
    parsed.map_err(|e| {
        eprintln!("error: {e}");
        ExitCode::from(EXIT_USAGE)
    })
}

fn config(k: u32, mode: Mode, sum_cap: Option<u64>, workers: Option<usize>) -> EnumConfig {
    let mut cfg = EnumConfig::new(k, mode);
    if let Some(cap) = sum_cap {
        cfg = cfg.with_sum_cap(cap);
    }
    cfg.workers = workers;
    cfg
}

fn enum_failure(e: EnumError) -> ExitCode {
    eprintln!("error: {e}");
    ExitCode::from(EXIT_USAGE)
}

fn cmd_check(text: &str) -> Result<ExitCode, ExitCode> {
    let (a, b) = parse_input_sides(text)?;
    let p = pair_canonical(a, b);
    let outcome = reducibility_witness(&p);
    println!("irreducible: {}", outcome == Reducibility::Irreducible);
    println!("length: {}", p.length());
    println!("max_element: {}", p.max_element());
    match outcome {
        Reducibility::Irreducible => Ok(ExitCode::from(EXIT_OK)),
        Reducibility::Unbalanced => {
            println!(
                "unbalanced: sums {} and {} differ",
                p.a().sigma(),
                p.b().sigma()
            );
            Ok(ExitCode::from(EXIT_NEGATIVE))
        }
        Reducibility::Reducible(w) => {
            println!("{w}");
            Ok(ExitCode::from(EXIT_NEGATIVE))
        }
    }
}

fn cmd_derive(
    text: &str,
    product: Option<&str>,
    chain: Option<&str>,
) -> Result<ExitCode, ExitCode> {
    let (left, right) = parse_input_sides(text)?;
    let usage = |e: zerosum::ParseError| {
        eprintln!("error: {e}");
        ExitCode::from(EXIT_USAGE)
    };
    let result = match (product, chain) {
        (Some(plan), _) => derive_product_sides(&left, &right, &parse_plan(plan).map_err(usage)?),
        (None, Some(chain)) => {
            derive_chain_sides(&left, &right, &parse_chain(chain).map_err(usage)?)
        }
        (None, None) => unreachable!("clap requires one of --product/--chain"),
    };
    match result {
        Ok((c, d)) => {
            println!("{}", format_sides(&c, &d));
            println!("irreducible: {}", is_irreducible(&pair_canonical(c, d)));
            Ok(ExitCode::from(EXIT_OK))
        }
        Err(e) => {
            eprintln!("error: {e}");
            Ok(ExitCode::from(EXIT_NEGATIVE))
        }
    }
}

fn print_report(r: &EllReport, json: bool) {
    if json {
        println!("{}", r.to_json());
        return;
    }
    println!("k: {}", r.k);
    println!("mode: {}", r.mode);
    println!("sum_cap: {}", r.sum_cap);
    println!("ell: {}", r.ell);
    for w in &r.witnesses {
        println!("witness: {w}");
    }
    println!("pairs_scanned: {}", r.pairs_scanned);
    println!("irreducible_count: {}", r.irreducible_count);
    println!("wall_time: {:.3}s", r.wall_time);
    println!("scope: pairs with common sum <= {}", r.sum_cap);
}

fn cmd_ell(cfg: EnumConfig, no_cache: bool, json: bool) -> Result<ExitCode, ExitCode> {
    let cache = if no_cache { None } else { Cache::from_env() };
    let out = cached_ell(cache.as_ref(), &cfg).map_err(enum_failure)?;
    print_report(&out.report, json);
    match (&cache, out.status) {
        (Some(c), CacheStatus::Hit | CacheStatus::Miss | CacheStatus::Stale) => {
            eprintln!("cache: {} ({})", out.status.as_str(), c.dir().display())
        }
        _ => eprintln!("cache: {}", CacheStatus::Disabled.as_str()),
    }
    if let Some(e) = out.store_error {
        eprintln!("warning: could not write cache entry: {e}");
    }
    Ok(ExitCode::from(EXIT_OK))
}

fn write_pairs(k: u32, pairs: &[Pair], format: Format) -> io::Result<()> {
    let mut out = BufWriter::new(io::stdout().lock());
    if let Format::Csv = format {
        writeln!(out, "k,sum,length,A,B")?;
    }
    for p in pairs {
        match format {
            Format::Plain => writeln!(out, "{p}")?,
            Format::Json => writeln!(out, "{}", pair_to_json(p))?,
            Format::Csv => writeln!(
                out,
                "{k},{},{},{},{}",
                p.a().sigma(),
                p.length(),
                p.a(),
                p.b()
            )?,
        }
    }
    out.flush()
}

fn cmd_enumerate(cfg: EnumConfig, format: Format) -> Result<ExitCode, ExitCode> {
    let pairs = enumerate_irreducible(&cfg).map_err(enum_failure)?;
    match write_pairs(cfg.k, &pairs, format) {
        Err(e) if e.kind() != io::ErrorKind::BrokenPipe => {
            eprintln!("error: {e}");
            Err(ExitCode::from(EXIT_NEGATIVE))
        }
        _ => Ok(ExitCode::from(EXIT_OK)),
    }
}

fn cmd_extremal(cfg: EnumConfig) -> Result<ExitCode, ExitCode> {
    let pairs = extremal_pairs(&cfg).map_err(enum_failure)?;
    for p in &pairs {
        println!("{p}");
    }
    let expected = extremal_construction(cfg.k).expect("k > 1 checked above");
    let unique = pairs.len() == 1 && pairs[0] == expected;
    println!("construction: {expected}");
    println!("unique: {unique}");
    println!("scope: pairs with common sum <= {}", cfg.sum_cap);
    Ok(ExitCode::from(if unique { EXIT_OK } else { EXIT_NEGATIVE }))
}

fn cmd_selftest(seed: u64) -> ExitCode {
    let mut ok = true;
    for r in selftest::run_all(seed) {
        ok &= r.passed;
        println!(
            "{} {} ({})",
            if r.passed { "PASS" } else { "FAIL" },
            r.name,
            r.detail
        );
    }
    ExitCode::from(if ok { EXIT_OK } else { EXIT_NEGATIVE })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Check { pair } => cmd_check(&pair),
        Command::Derive {
            pair,
            product,
            chain,
        } => cmd_derive(&pair, product.as_deref(), chain.as_deref()),
        Command::Ell {
            k,
            mode,
            sum_cap,
            no_cache,
            json,
            workers,
        } => cmd_ell(config(k, mode, sum_cap, workers), no_cache, json),
        Command::Enumerate {
            k,
            mode,
            sum_cap,
            min_len,
            max_len,
            format,
            workers,
        } => {
            let mut cfg = config(k, mode, sum_cap, workers);
            if min_len.is_some() || max_len.is_some() {
                cfg = cfg.with_length_window(min_len.unwrap_or(0), max_len.unwrap_or(u64::MAX));
            }
            cmd_enumerate(cfg, format)
        }
        Command::Extremal { k, mode, sum_cap } => cmd_extremal(config(k, mode, sum_cap, None)),
        Command::Selftest { seed } => Ok(cmd_selftest(seed)),
    };
    result.unwrap_or_else(|code| code)
}
