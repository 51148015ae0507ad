use std::fs;
use std::io::{self, Read};
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use bjpm_core::compact::build_max_table_compact;
use bjpm_core::gen::random_runs;
use bjpm_core::oracle::{brute_feasible, brute_tables, build_max_table_quadratic};
use bjpm_core::workspace::{self, CountingAllocator};
use bjpm_core::{
    build_max_table, build_min_table, io as index_io, BuildOptions, JumbledIndex, RunLengthString,
};
use clap::{Args, Parser, Subcommand, ValueEnum};

#[global_allocator]
static ALLOC: CountingAllocator = CountingAllocator;

#[derive(Parser)]
#[command(
    name = "bjpm",
    version,
    about = "Jumbled pattern matching indexes for binary strings"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build an index file from a bit string or run-length text.
    Build {
        #[command(flatten)]
        input: InputArgs,
        /// Also store witness positions.
        #[arg(long)]
        witness: bool,
        /// Build the count tables in O(n) bits of workspace.
        #[arg(long)]
        compact: bool,
        #[arg(short = 'o', long = "output")]
        output: PathBuf,
    },
    /// Ask whether a substring with the given numbers of 0s and 1s exists.
    Query {
        index: PathBuf,
        zeros: usize,
        ones: usize,
        /// Print the start position of a matching substring.
        #[arg(long)]
        witness: bool,
    },
    /// Cross-check every builder against brute force on one input.
    Verify {
        #[command(flatten)]
        input: InputArgs,
        /// Refuse inputs longer than this.
        #[arg(long, default_value_t = 4096)]
        max_n: usize,
    },
    /// Time construction on generated inputs; CSV on stdout.
    Bench {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        rho: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, value_enum, default_value_t = Mode::All)]
        mode: Mode,
        /// Repetitions per mode; the median build time is reported.
        #[arg(long, default_value_t = 3)]
        reps: usize,
    },
}

#[derive(Args)]
#[group(required = true, multiple = false, id = "format")]
struct FormatArgs {
    /// Input is run-length text: `0:<len> 1:<len> ... 0:<len>`.
    #[arg(long)]
    rle: bool,
    /// Input is a raw string of `0`/`1` characters.
    #[arg(long)]
    bits: bool,
}

#[derive(Args)]
struct InputArgs {
    /// Input file; stdin when omitted or `-`.
    input: Option<PathBuf>,
    #[command(flatten)]
    format: FormatArgs,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Mode {
    Plain,
    Compact,
    Witness,
    All,
}

impl Mode {
    fn name(self) -> &'static str {
        match self {
            Mode::Plain => "plain",
            Mode::Compact => "compact",
            Mode::Witness => "witness",
            Mode::All => "all",
        }
    }

    fn options(self) -> BuildOptions {
        BuildOptions {
            witness: self == Mode::Witness,
            compact: self == Mode::Compact,
        }
    }
}

type CliResult<T> = Result<T, String>;

fn read_input(args: &InputArgs) -> CliResult<RunLengthString> {
    let mut text = String::new();
    match &args.input {
        Some(p) if p.as_os_str() != "-" => {
            text = fs::read_to_string(p).map_err(|e| format!("{}: {e}", p.display()))?;
        }
        _ => {
            io::stdin()
                .read_to_string(&mut text)
                .map_err(|e| format!("stdin: {e}"))?;
        }
    }
    let text = text.trim_end();
    if args.format.rle {
        text.parse().map_err(|e: bjpm_core::Error| e.to_string())
    } else {
        RunLengthString::encode(text.as_bytes()).map_err(|e| e.to_string())
    }
}

fn cmd_build(input: &InputArgs, witness: bool, compact: bool, output: &PathBuf) -> CliResult<()> {
    let rls = read_input(input)?;
    let start = Instant::now();
    let (ix, peak) =
        workspace::measure(|| JumbledIndex::build(&rls, BuildOptions { witness, compact }));
    let ix = ix.map_err(|e| e.to_string())?;
    let elapsed = start.elapsed().as_secs_f64();
    index_io::save_to_path(&ix, output).map_err(|e| format!("{}: {e}", output.display()))?;
    let mut report = format!("n={} rho={} build_s={elapsed:.6}", ix.len(), ix.rho());
    if compact {
        match peak {
            Some(bytes) => report.push_str(&format!(" workspace_bits={}", bytes * 8)),
            None => report.push_str(" workspace_bits=unmeasured"),
        }
    }
    eprintln!("{report}");
    Ok(())
}

fn cmd_query(index: &PathBuf, zeros: usize, ones: usize, witness: bool) -> CliResult<bool> {
    let ix = index_io::load_from_path(index).map_err(|e| format!("{}: {e}", index.display()))?;
    if witness {
        let found = ix.exists(zeros, ones);
        let pos = ix.witness(zeros, ones).map_err(|e| e.to_string())?;
        match (found, pos) {
            (true, Some(q)) => println!("yes {q}"),
            (true, None) => println!("yes"),
            _ => println!("no"),
        }
        Ok(found)
    } else {
        let found = ix.exists(zeros, ones);
        println!("{}", if found { "yes" } else { "no" });
        Ok(found)
    }
}

/// Runs every cross-check; `Err` carries the first disagreement.
fn cmd_verify(input: &InputArgs, max_n: usize) -> CliResult<Result<(), String>> {
    let rls = read_input(input)?;
    if rls.len() > max_n {
        return Err(format!(
            "input length {} exceeds --max-n {max_n}",
            rls.len()
        ));
    }
    let text = rls.decode();
    let bits: Vec<bool> = text.bytes().map(|c| c == b'1').collect();
    let n = bits.len();
    let (bmin, bmax) = brute_tables(&bits);
    println!("input: n={n} rho={}", rls.rho());

    let first_mismatch = |name: &str, got: &[u32], want: &[u32]| -> Result<(), String> {
        match got.iter().zip(want).position(|(a, b)| a != b) {
            Some(i) => Err(format!(
                "{name}: mismatch at k={} (count {} vs oracle {})",
                i + 1,
                got[i],
                want[i]
            )),
            None => Ok(()),
        }
    };
    let mut checks: Vec<(&str, Result<(), String>)> = Vec::new();

    let max = build_max_table(&rls);
    let min = build_min_table(&rls);
    checks.push((
        "max table vs brute force",
        first_mismatch("max table", max.values(), &bmax),
    ));
    checks.push((
        "min table vs brute force",
        first_mismatch("min table", min.values(), &bmin),
    ));
    checks.push((
        "O(n*rho) max table vs brute force",
        first_mismatch(
            "O(n*rho) max table",
            &build_max_table_quadratic(&bits),
            &bmax,
        ),
    ));
    let compact = build_max_table_compact(&rls).to_table(bjpm_core::TableKind::MaxOnes);
    checks.push((
        "compact max table vs plain",
        first_mismatch("compact max table", compact.values(), max.values()),
    ));

    let ix = JumbledIndex::build(
        &rls,
        BuildOptions {
            witness: true,
            compact: false,
        },
    )
    .map_err(|e| e.to_string())?;
    let feasible = brute_feasible(&bits);
    let prefix: Vec<usize> = std::iter::once(0)
        .chain(bits.iter().scan(0, |acc, &b| {
            *acc += usize::from(b);
            Some(*acc)
        }))
        .collect();
    let mut queries = Ok(());
    'outer: for k in 1..=n {
        for ones in 0..=k {
            let want = feasible[k - 1][ones];
            if ix.exists_len(k, ones) != want {
                queries = Err(format!(
                    "exists disagrees at k={k} (count {ones}, oracle {want})"
                ));
                break 'outer;
            }
            let pos = ix.witness_len(k, ones).map_err(|e| e.to_string())?;
            let ok = match pos {
                Some(q) => {
                    want && q >= 1 && q + k - 1 <= n && prefix[q + k - 1] - prefix[q - 1] == ones
                }
                None => !want,
            };
            if !ok {
                queries = Err(format!(
                    "witness wrong at k={k} (count {ones}, got {pos:?})"
                ));
                break 'outer;
            }
        }
    }
    checks.push(("exists and witness vs brute force", queries));

    let bytes = index_io::to_bytes(&ix);
    let round_trip = match index_io::load(&mut bytes.as_slice()) {
        Ok(back) if back == ix && index_io::to_bytes(&back) == bytes => Ok(()),
        Ok(_) => Err("reloaded index differs".to_string()),
        Err(e) => Err(e.to_string()),
    };
    checks.push(("index file round trip", round_trip));

    let mut outcome = Ok(());
    for (name, result) in checks {
        match result {
            Ok(()) => println!("ok    {name}"),
            Err(why) => {
                println!("FAIL  {name}: {why}");
                if outcome.is_ok() {
                    outcome = Err(why);
                }
            }
        }
    }
    Ok(outcome)
}

fn cmd_bench(n: usize, rho: usize, seed: u64, mode: Mode, reps: usize) -> CliResult<()> {
    if rho > n / 2 {
        return Err(format!("--rho {rho} must be at most n/2 = {}", n / 2));
    }
    if reps == 0 {
        return Err("--reps must be positive".into());
    }
    let rls = random_runs(n, rho, seed).map_err(|e| e.to_string())?;
    let modes = match mode {
        Mode::All => vec![Mode::Plain, Mode::Compact, Mode::Witness],
        m => vec![m],
    };
    eprintln!("block updates: word operations");
    println!("mode,n,rho,build_s,workspace_bits,qps");
    for m in modes {
        let mut times = Vec::with_capacity(reps);
        let mut peak_bits = 0;
        let mut built = None;
        for _ in 0..reps {
            let start = Instant::now();
            let (ix, peak) = workspace::measure(|| JumbledIndex::build(&rls, m.options()));
            times.push(start.elapsed().as_secs_f64());
            peak_bits = peak.map_or(0, |b| b * 8);
            built = Some(ix.map_err(|e| e.to_string())?);
        }
        times.sort_by(f64::total_cmp);
        let ix = built.expect("reps > 0");
        let qps = query_rate(&ix, seed, m == Mode::Witness);
        println!(
            "{},{n},{rho},{:.6},{peak_bits},{qps:.0}",
            m.name(),
            times[reps / 2]
        );
    }
    Ok(())
}

/// Random queries per second; witness queries in witness mode.
fn query_rate(ix: &JumbledIndex, seed: u64, witness: bool) -> f64 {
    const QUERIES: usize = 200_000;
    let n = ix.len() as u64;
    if n == 0 {
        return 0.0;
    }
    // xorshift keeps query generation cheap next to the queries themselves
    let mut state = seed | 1;
    let mut next = || {
        state ^= state << 13;
        state ^= state >> 7;
        state ^= state << 17;
        state
    };
    let qs: Vec<(usize, usize)> = (0..QUERIES)
        .map(|_| {
            let k = 1 + next() % n;
            let ones = next() % (k + 1);
            ((k - ones) as usize, ones as usize)
        })
        .collect();
    let start = Instant::now();
    let mut hits = 0usize;
    for &(z, o) in &qs {
        if witness {
            hits += usize::from(matches!(ix.witness(z, o), Ok(Some(_))));
        } else {
            hits += usize::from(ix.exists(z, o));
        }
    }
    std::hint::black_box(hits);
    QUERIES as f64 / start.elapsed().as_secs_f64()
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Build {
            input,
            witness,
            compact,
            output,
        } => cmd_build(input, *witness, *compact, output).map(|()| ExitCode::SUCCESS),
        Command::Query {
            index,
            zeros,
            ones,
            witness,
        } => cmd_query(index, *zeros, *ones, *witness).map(|found| {
            if found {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }),
        Command::Verify { input, max_n } => {
            cmd_verify(input, *max_n).map(|outcome| match outcome {
                Ok(()) => {
                    println!("all checks passed");
                    ExitCode::SUCCESS
                }
                Err(why) => {
                    eprintln!("verify: {why}");
                    ExitCode::from(1)
                }
            })
        }
        Command::Bench {
            n,
            rho,
            seed,
            mode,
            reps,
        } => cmd_bench(*n, *rho, *seed, *mode, *reps).map(|()| ExitCode::SUCCESS),
    };
    result.unwrap_or_else(|e| {
        eprintln!("error: {e}");
        ExitCode::from(2)
    })
}
