mod commands;

use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use cubesum::catalog::{self, Catalog};
use cubesum::{Error, Multiset};
use num_bigint::BigInt;

use commands::Outcome;

/// Search, verify and construct integer multisets whose cube sum equals the
/// square of their sum.
#[derive(Debug, Parser)]
#[command(name = "cubesum", version)]
struct Cli {
    /// Emit one JSON document instead of one result per line.
    #[arg(long, global = true)]
    json: bool,

    /// Catalog file (defaults to $CUBESUM_CATALOG, then ./catalog.jsonl).
    #[arg(long, global = true, value_name = "PATH")]
    catalog: Option<PathBuf>,

    /// Add every produced set to the catalog.
    #[arg(long, global = true)]
    save: bool,

    /// Worker threads for enumeration (default: available cores).
    #[arg(long, global = true, value_parser = clap::value_parser!(u16).range(1..))]
    threads: Option<u16>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Check the identity and admissibility of a set.
    Verify {
        #[arg(long, allow_hyphen_values = true, value_parser = parse_set)]
        set: Multiset,
    },
    /// List all positive sets of a given size.
    Enumerate {
        #[arg(long)]
        n: usize,
        /// Largest entry searched (default n^2, which is complete).
        #[arg(long)]
        bound: Option<u64>,
        /// Fixed leading entries, e.g. `1,2`.
        #[arg(long, value_parser = parse_prefix)]
        prefix: Option<Prefix>,
        #[arg(long)]
        count_only: bool,
    },
    /// The multiset of divisor counts of the divisors of M.
    Liouville {
        #[arg(long, allow_hyphen_values = true)]
        m: i128,
        #[arg(long)]
        show_factorization: bool,
    },
    /// Extend a set by one entry, or by two with `--two`.
    Extend {
        #[arg(long, allow_hyphen_values = true, value_parser = parse_set)]
        set: Multiset,
        #[arg(long)]
        two: bool,
        /// List every two-entry representation.
        #[arg(long, requires = "two")]
        all_reps: bool,
        /// Use the two appended entries `x,y`.
        #[arg(long, requires = "two", conflicts_with = "all_reps", allow_hyphen_values = true, value_parser = parse_pair)]
        pair: Option<(BigInt, BigInt)>,
    },
    /// Apply single-entry extensions repeatedly.
    Chain {
        #[arg(long, allow_hyphen_values = true, value_parser = parse_set)]
        set: Multiset,
        #[arg(long)]
        steps: usize,
        #[arg(long, value_enum)]
        root: Root,
    },
    /// Members of the infinite families.
    Gen {
        #[command(subcommand)]
        family: Family,
    },
    /// Zero-sum sets with entries in [-B, B].
    ZerosumSearch {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        bound: u32,
    },
    /// Add to or list the catalog.
    Catalog {
        #[command(subcommand)]
        action: CatalogAction,
    },
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Root {
    Pos,
    Neg,
}

#[derive(Debug, Clone, Args)]
struct GenOpts {
    /// Print the underlying Pell solutions as JSON pairs on stderr.
    #[arg(long)]
    pell_debug: bool,
    /// Also write the JSON document with provenance to this file.
    #[arg(long, value_name = "PATH")]
    sidecar: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
enum Family {
    /// Zero-sum sets of size five from t^2 - 10 r^2 = 6.
    Prop7 {
        #[arg(long)]
        count: usize,
        #[command(flatten)]
        opts: GenOpts,
    },
    /// Sets of size three or four from x^3 + y^3 + z^3 = x + y + z.
    Chowla {
        #[arg(long)]
        count: usize,
        #[arg(long, value_parser = clap::value_parser!(u8).range(3..=4))]
        n: u8,
        #[command(flatten)]
        opts: GenOpts,
    },
    /// Zero-sum sets from translated Pythagorean tuples.
    Frolov {
        /// A Pythagorean triple `a,b,c`.
        #[arg(long, allow_hyphen_values = true, value_parser = parse_list, conflicts_with = "tuple")]
        triple: Option<IntList>,
        /// A Pythagorean tuple, hypotenuse last.
        #[arg(long, allow_hyphen_values = true, value_parser = parse_list)]
        tuple: Option<IntList>,
        /// Translation.
        #[arg(long, allow_hyphen_values = true)]
        c: Option<BigInt>,
        /// Required number of entries.
        #[arg(long)]
        target: Option<usize>,
        /// Member of the built-in family for `--target` when no tuple is given.
        #[arg(long, default_value_t = 0)]
        index: usize,
        #[command(flatten)]
        opts: GenOpts,
    },
    /// A set with N distinct entries.
    Distinct {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 0)]
        index: usize,
        #[command(flatten)]
        opts: GenOpts,
    },
}

#[derive(Debug, Subcommand)]
enum CatalogAction {
    Add {
        #[arg(long, allow_hyphen_values = true, value_parser = parse_set)]
        set: Multiset,
        #[arg(long = "tag")]
        tags: Vec<String>,
        #[arg(long, default_value = "cli")]
        source: String,
    },
    List {
        #[arg(long)]
        n: Option<usize>,
        #[arg(long = "tag")]
        tags: Vec<String>,
        #[arg(long)]
        zero_sum: bool,
    },
}

fn parse_set(s: &str) -> Result<Multiset, String> {
    s.parse::<Multiset>().map_err(|e| e.to_string())
}

/// Ordered integers given as `a,b,c` or `[a,b,c]`.
#[derive(Debug, Clone)]
struct IntList(Vec<BigInt>);

fn parse_list(s: &str) -> Result<IntList, String> {
    parse_ints(s).map(IntList)
}

fn parse_ints(s: &str) -> Result<Vec<BigInt>, String> {
    let inner = s.trim();
    let inner = inner
        .strip_prefix('[')
        .and_then(|t| t.strip_suffix(']'))
        .unwrap_or(inner);
    inner
        .split(',')
        .map(|p| {
            let p = p.trim();
            p.strip_prefix('+')
                .unwrap_or(p)
                .parse::<BigInt>()
                .map_err(|e| format!("{p:?}: {e}"))
        })
        .collect()
}

fn parse_pair(s: &str) -> Result<(BigInt, BigInt), String> {
    match <[BigInt; 2]>::try_from(parse_ints(s)?) {
        Ok([x, y]) => Ok((x, y)),
        Err(v) => Err(format!("expected two entries, got {}", v.len())),
    }
}

#[derive(Debug, Clone)]
struct Prefix(Vec<u64>);

fn parse_prefix(s: &str) -> Result<Prefix, String> {
    s.split(',')
        .map(|p| p.trim().parse::<u64>().map_err(|e| format!("{p:?}: {e}")))
        .collect::<Result<_, _>>()
        .map(Prefix)
}

fn exit_code(err: &Error) -> u8 {
    match err {
        Error::InvalidConfig(_) | Error::Parse(_) => 2,
        _ => 1,
    }
}

fn save(path: &Path, outcome: &Outcome) -> cubesum::Result<()> {
    let mut cat = Catalog::load(path)?;
    for (set, tags, source) in &outcome.records {
        cat.add(set.elements(), tags.iter().copied(), source.clone())?;
    }
    cat.save(path)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(t) = cli.threads {
        rayon::ThreadPoolBuilder::new()
            .num_threads(t as usize)
            .build_global()
            .expect("global thread pool is configured once");
    }
    let catalog_path = cli.catalog.clone().unwrap_or_else(catalog::default_path);
    let outcome = match commands::run(&cli.command, &catalog_path) {
        Ok(o) => o,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(exit_code(&e));
        }
    };

    let mut stdout = std::io::stdout().lock();
    let written = if cli.json {
        writeln!(stdout, "{}", serde_json::to_string_pretty(&outcome.json).expect("json"))
    } else {
        outcome.lines.iter().try_for_each(|l| writeln!(stdout, "{l}"))
    };
    if let Err(e) = written.and_then(|_| stdout.flush()) {
        if e.kind() == std::io::ErrorKind::BrokenPipe {
            return ExitCode::SUCCESS;
        }
        eprintln!("error: {e}");
        return ExitCode::from(1);
    }
    for note in &outcome.notes {
        eprintln!("{note}");
    }
    if let Some(path) = &outcome.sidecar {
        let text = serde_json::to_string_pretty(&outcome.json).expect("json");
        if let Err(e) = std::fs::write(path, text + "\n") {
            eprintln!("error: sidecar {}: {e}", path.display());
            return ExitCode::from(1);
        }
    }
    if cli.save {
        if let Err(e) = save(&catalog_path, &outcome) {
            eprintln!("error: {e}");
            return ExitCode::from(exit_code(&e));
        }
    }
    match &outcome.failure {
        Some(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(e))
        }
        None => ExitCode::SUCCESS,
    }
}
