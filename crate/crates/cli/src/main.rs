use std::fs;
use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Duration;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use ebug_core::format::{debruijn_dot, necklace_dot, ColouringFile};
use ebug_core::oracle::{max_k_cycles_with, SearchResult};
use ebug_core::words::{debruijn_count, lll_lower_bound, moreau, necklace_count, symbol_char, upper_bound};
use ebug_core::{lfsr, necklace, Colouring, CyclicWord, Error, Exec, ValidityReport};

#[derive(Parser)]
#[command(name = "ebugs", version, about = "Build, combine, check and decode LED colourings of robot rings")]
struct Cli {
    /// Keep words in the rotation they were generated in instead of the
    /// least rotation.
    #[arg(long, global = true)]
    fixture: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a colouring file.
    #[command(subcommand)]
    Gen(Gen),
    /// Print the cycle lengths available to `gen nonprimitive`.
    ListK {
        #[arg(long)]
        q: u64,
        #[arg(long)]
        l: usize,
    },
    /// Combine existing colouring files.
    #[command(subcommand)]
    Combine(Combine),
    /// Check a colouring file; exit 2 if two windows collide.
    Verify {
        #[arg(long)]
        file: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Upper and random-colouring lower bounds on the number of robots.
    Bound {
        #[arg(long)]
        q: u64,
        #[arg(long)]
        k: u64,
        #[arg(long)]
        l: u64,
    },
    /// Counting formulas.
    Count {
        #[arg(value_enum)]
        what: CountKind,
        #[arg(long)]
        q: u64,
        #[arg(long)]
        l: Option<u64>,
        /// Length for `moreau` (defaults to `--l`).
        #[arg(long)]
        t: Option<u64>,
    },
    /// Look up an observed window; exit 2 if nobody shows it.
    Decode {
        #[arg(long)]
        file: PathBuf,
        #[arg(long)]
        window: String,
    },
    /// Exhaustive search for the most disjoint k-cycles; exit 4 on timeout.
    Search {
        #[arg(long)]
        q: usize,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        l: usize,
        /// Seconds before giving up.
        #[arg(long, default_value_t = 60.0)]
        budget: f64,
        #[arg(long)]
        json: bool,
        /// Worker threads (0 = all cores, 1 = sequential).
        #[arg(long, default_value_t = 0)]
        threads: usize,
    },
    /// Graphviz output.
    #[command(subcommand)]
    Export(Export),
}

#[derive(Clone, Copy, clap::ValueEnum)]
enum CountKind {
    Necklaces,
    Moreau,
    Debruijn,
}

#[derive(Args)]
struct Out {
    /// Output path; stdout if absent.
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct Field {
    #[arg(long)]
    q: u64,
    #[arg(long)]
    l: usize,
    /// Feedback coefficients `p0,...,p(l-1)` of a primitive polynomial.
    #[arg(long, value_delimiter = ',')]
    coeffs: Option<Vec<u8>>,
}

#[derive(Subcommand)]
enum Gen {
    /// One de Bruijn cycle from a maximal-length LFSR.
    LfsrDb {
        #[command(flatten)]
        field: Field,
        #[command(flatten)]
        out: Out,
    },
    /// `q` cycles of length `q^(l-1)` from translates of an LFSR cycle.
    LfsrTranslate {
        #[command(flatten)]
        field: Field,
        #[command(flatten)]
        out: Out,
    },
    /// A de Bruijn LFSR cycle split into pieces of length `k`.
    LfsrSplit {
        #[command(flatten)]
        field: Field,
        #[arg(long)]
        k: u64,
        #[command(flatten)]
        out: Out,
    },
    /// Cycles of an LFSR whose polynomial has order `k`.
    Nonprimitive {
        #[command(flatten)]
        field: Field,
        #[arg(long)]
        k: u64,
        #[command(flatten)]
        out: Out,
    },
    /// The lexicographically least de Bruijn cycle.
    Fkm {
        #[arg(long)]
        q: usize,
        #[arg(long)]
        l: usize,
        #[command(flatten)]
        out: Out,
    },
    /// Joined necklaces of length `t * l`, for prime `l`.
    Concat {
        #[arg(long)]
        q: usize,
        #[arg(long)]
        l: usize,
        #[arg(long)]
        t: usize,
        #[command(flatten)]
        out: Out,
    },
    /// Closed walks around necklaces; identification only.
    Walks {
        #[arg(long)]
        q: usize,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        l: usize,
        #[command(flatten)]
        out: Out,
    },
}

#[derive(Subcommand)]
enum Combine {
    /// Pair two colourings letter by letter.
    Product {
        #[arg(long)]
        a: PathBuf,
        #[arg(long)]
        b: PathBuf,
        #[command(flatten)]
        out: Out,
    },
    /// Interleave `t` rotated copies.
    Interleave {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        t: usize,
        #[command(flatten)]
        out: Out,
    },
    /// Interleave pairs, for any word length.
    Interleave2 {
        #[arg(long = "in")]
        input: PathBuf,
        #[command(flatten)]
        out: Out,
    },
}

#[derive(Subcommand)]
enum Export {
    /// The de Bruijn digraph dB(q, l).
    Dot {
        #[arg(long)]
        q: usize,
        #[arg(long)]
        l: usize,
        #[command(flatten)]
        out: Out,
    },
    /// The necklace adjacency graph.
    DotNecklace {
        #[arg(long)]
        q: usize,
        #[arg(long)]
        l: usize,
        /// Only aperiodic necklaces.
        #[arg(long)]
        aperiodic: bool,
        #[command(flatten)]
        out: Out,
    },
}

/// `println!` that stays quiet when stdout is closed early (`| head`).
macro_rules! say {
    ($($arg:tt)*) => {{
        let _ = writeln!(std::io::stdout(), $($arg)*);
    }};
}

const MALFORMED: u8 = 1;
const NEGATIVE: u8 = 2;
const PRECONDITION: u8 = 3;
const BUDGET: u8 = 4;

struct Failure {
    code: u8,
    msg: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Parse { .. } | Error::InvalidInput(_) | Error::InvalidColouring(_) | Error::WindowMismatch(..) => {
                MALFORMED
            }
            Error::NotFound => NEGATIVE,
            Error::BudgetExceeded(_) => BUDGET,
            _ => PRECONDITION,
        };
        Failure { code, msg: e.to_string() }
    }
}

fn fail(code: u8, msg: impl Into<String>) -> Failure {
    Failure { code, msg: msg.into() }
}

type Outcome = Result<(), Failure>;

fn write_out(out: &Out, text: &str) -> Outcome {
    match &out.output {
        Some(path) => fs::write(path, text).map_err(|e| fail(MALFORMED, format!("{}: {e}", path.display()))),
        None => match std::io::stdout().write_all(text.as_bytes()) {
            Err(e) if e.kind() != std::io::ErrorKind::BrokenPipe => Err(fail(MALFORMED, e.to_string())),
            _ => Ok(()),
        },
    }
}

fn read_file(path: &Path) -> Result<ColouringFile, Failure> {
    let text = fs::read_to_string(path).map_err(|e| fail(MALFORMED, format!("{}: {e}", path.display())))?;
    ColouringFile::parse(&text).map_err(|e| fail(MALFORMED, format!("{}: {e}", path.display())))
}

fn read_colouring(path: &Path) -> Result<Colouring, Failure> {
    Ok(read_file(path)?.colouring()?)
}

/// Verifies, then writes. Generated files must never fail `verify`.
fn emit(c: Colouring, what: String, walks: bool, fixture: bool, out: &Out) -> Outcome {
    let c = if fixture { c } else { c.canonicalized() };
    let file = ColouringFile::from_colouring(&c, &[what], walks)?;
    let report = file.verify()?;
    if !report.valid {
        return Err(fail(NEGATIVE, format!("generated colouring failed its own check: {}", describe(&report))));
    }
    write_out(out, &file.to_text())
}

fn word_text(symbols: &[u8]) -> String {
    symbols.iter().map(|&s| symbol_char(s)).collect()
}

fn describe(r: &ValidityReport) -> String {
    match &r.first_conflict {
        None => format!("valid, {} windows", r.window_count),
        Some(c) => format!(
            "window {} at word {} rotation {} and word {} rotation {}",
            word_text(&c.window),
            c.first.0,
            c.first.1,
            c.second.0,
            c.second.1
        ),
    }
}

fn report_json(f: &ColouringFile, r: &ValidityReport) -> Value {
    let mut v = json!({
        "valid": r.valid,
        "q": f.q,
        "k": f.k,
        "l": f.l,
        "n": f.n(),
        "window_count": r.window_count,
    });
    if let Some(c) = &r.first_conflict {
        v["conflict"] = json!({
            "window": word_text(&c.window),
            "a": [c.first.0, c.first.1],
            "b": [c.second.0, c.second.1],
        });
    }
    v
}

fn gen(g: Gen, fixture: bool) -> Outcome {
    let coeffs = |f: &Field| f.coeffs.clone();
    match g {
        Gen::LfsrDb { field, out } => {
            let w = lfsr::lfsr_debruijn(field.q, field.l, coeffs(&field).as_deref())?;
            let c = Colouring::new(field.q as usize, w.len(), field.l, vec![w])?;
            emit(c, format!("lfsr-db q={} l={}", field.q, field.l), false, fixture, &out)
        }
        Gen::LfsrTranslate { field, out } => {
            let c = lfsr::lfsr_translate(field.q, field.l, coeffs(&field).as_deref())?;
            emit(c, format!("lfsr-translate q={} l={}", field.q, field.l), false, fixture, &out)
        }
        Gen::LfsrSplit { field, k, out } => {
            let c = lfsr::lfsr_split(field.q, field.l, k, coeffs(&field).as_deref())?;
            emit(c, format!("lfsr-split q={} l={} k={k}", field.q, field.l), false, fixture, &out)
        }
        Gen::Nonprimitive { field, k, out } => {
            let c = lfsr::nonprimitive_cycles(field.q, field.l, k, coeffs(&field).as_deref())?;
            emit(c, format!("nonprimitive q={} l={} k={k}", field.q, field.l), false, fixture, &out)
        }
        Gen::Fkm { q, l, out } => {
            if q == 0 || l == 0 {
                return Err(fail(MALFORMED, "need q >= 1 and l >= 1"));
            }
            let n = ebug_core::arith::checked_pow(q as u64, l as u32)
                .filter(|&n| n <= 1 << 24)
                .ok_or_else(|| fail(PRECONDITION, format!("{q}^{l} is too long")))?;
            let w = necklace::fkm_debruijn(q, l);
            let c = Colouring::new(q, n as usize, l, vec![w])?;
            emit(c, format!("fkm q={q} l={l}"), false, fixture, &out)
        }
        Gen::Concat { q, l, t, out } => {
            let c = necklace::concat_partition(q, l, t)?;
            emit(c, format!("concat q={q} l={l} t={t}"), false, fixture, &out)
        }
        Gen::Walks { q, k, l, out } => {
            let c = necklace::closed_walks(q, k, l)?;
            emit(c, format!("walks q={q} k={k} l={l}"), true, fixture, &out)
        }
    }
}

fn combine(c: Combine, fixture: bool) -> Outcome {
    match c {
        Combine::Product { a, b, out } => {
            let (x, y) = (read_colouring(&a)?, read_colouring(&b)?);
            let p = necklace::product(&x, &y)?;
            emit(p, format!("product of {} and {}", a.display(), b.display()), false, fixture, &out)
        }
        Combine::Interleave { input, t, out } => {
            let x = read_colouring(&input)?;
            let p = necklace::interleave(&x, t)?;
            emit(p, format!("interleave t={t} of {}", input.display()), false, fixture, &out)
        }
        Combine::Interleave2 { input, out } => {
            let x = read_colouring(&input)?;
            let p = necklace::interleave_pair_odd(&x)?;
            emit(p, format!("interleave2 of {}", input.display()), false, fixture, &out)
        }
    }
}

fn verify(file: &Path, as_json: bool) -> Outcome {
    let f = read_file(file)?;
    let r = f.verify()?;
    if as_json {
        say!("{}", report_json(&f, &r));
    } else {
        say!("{}", if r.valid { "valid" } else { "invalid" });
        say!("q={} k={} l={} n={} windows={}", f.q, f.k, f.l, f.n(), r.window_count);
        if !r.valid {
            say!("conflict: {}", describe(&r));
        }
    }
    if r.valid {
        Ok(())
    } else {
        Err(fail(NEGATIVE, ""))
    }
}

fn decode(file: &Path, window: &str) -> Outcome {
    let f = read_file(file)?;
    let obs = CyclicWord::parse(window).map_err(|e| fail(MALFORMED, format!("window: {e}")))?;
    if obs.symbols().iter().any(|&s| s as usize >= f.q) {
        return Err(fail(MALFORMED, format!("window {window} uses symbols outside 0..{}", f.q)));
    }
    let c = f.colouring()?;
    let hit = if f.is_walks() {
        let r = c.check_identification();
        if !r.valid {
            return Err(fail(NEGATIVE, format!("file is not identifying: {}", describe(&r))));
        }
        c.words()
            .iter()
            .enumerate()
            .find_map(|(i, w)| (0..c.k()).find(|&r| obs.len() == c.l() && w.window(r, c.l()) == obs.symbols()).map(|r| (i, r)))
            .ok_or(Error::NotFound)
    } else {
        ebug_core::DecoderTable::build(&c)?.decode(obs.symbols())
    };
    match hit {
        Ok((i, r)) => {
            say!("ebug={i} rotation={r}");
            Ok(())
        }
        Err(Error::NotFound) => Err(fail(NEGATIVE, format!("window {window} not found"))),
        Err(e) => Err(e.into()),
    }
}

fn search_json(q: usize, k: usize, l: usize, r: &SearchResult) -> Value {
    json!({
        "q": q,
        "k": k,
        "l": l,
        "best_count": r.best_count,
        "upper_bound": upper_bound(q as u64, k as u64, l as u64).ok(),
        "exhausted": r.exhausted,
        "nodes_expanded": r.nodes_expanded,
        "elapsed_ms": r.elapsed.as_secs_f64() * 1000.0,
        "witness": r.witness.words().iter().map(|w| w.to_string()).collect::<Vec<_>>(),
    })
}

fn run_search(q: usize, k: usize, l: usize, budget: Duration, threads: usize) -> ebug_core::Result<SearchResult> {
    if threads == 1 {
        return max_k_cycles_with(q, k, l, budget, Exec::Sequential);
    }
    #[cfg(feature = "parallel")]
    if threads > 1 {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build()
            .map_err(|e| Error::InvalidInput(e.to_string()))?;
        return pool.install(|| max_k_cycles_with(q, k, l, budget, Exec::Parallel));
    }
    max_k_cycles_with(q, k, l, budget, Exec::default())
}

fn search(q: usize, k: usize, l: usize, budget: f64, as_json: bool, threads: usize) -> Outcome {
    let budget = Duration::try_from_secs_f64(budget).map_err(|e| fail(MALFORMED, format!("--budget: {e}")))?;
    let (result, timed_out) = match run_search(q, k, l, budget, threads) {
        Ok(r) => (r, false),
        Err(Error::BudgetExceeded(r)) => (*r, true),
        Err(e) => return Err(e.into()),
    };
    if as_json {
        say!("{}", search_json(q, k, l, &result));
    } else {
        say!("best_count={}", result.best_count);
        if let Ok(u) = upper_bound(q as u64, k as u64, l as u64) {
            say!("upper_bound={u}");
        }
        say!("exhausted={}", result.exhausted);
        say!("nodes_expanded={}", result.nodes_expanded);
        say!("elapsed={:.3}s", result.elapsed.as_secs_f64());
        for w in result.witness.words() {
            say!("{w}");
        }
    }
    if timed_out {
        Err(fail(BUDGET, "search budget exceeded"))
    } else {
        Ok(())
    }
}

fn count(what: CountKind, q: u64, l: Option<u64>, t: Option<u64>) -> Outcome {
    let need = |x: Option<u64>, name: &str| x.ok_or_else(|| fail(MALFORMED, format!("missing --{name}")));
    let value = match what {
        CountKind::Necklaces => necklace_count(q, need(l, "l")?)?.to_string(),
        CountKind::Moreau => moreau(q, need(t.or(l), "t")?)?.to_string(),
        CountKind::Debruijn => debruijn_count(q, need(l, "l")?)?.to_string(),
    };
    say!("{value}");
    Ok(())
}

fn run(cli: Cli) -> Outcome {
    match cli.command {
        Command::Gen(g) => gen(g, cli.fixture),
        Command::ListK { q, l } => {
            for k in lfsr::zsigmondy_ks(q, l)? {
                say!("{k}");
            }
            Ok(())
        }
        Command::Combine(c) => combine(c, cli.fixture),
        Command::Verify { file, json } => verify(&file, json),
        Command::Bound { q, k, l } => {
            say!("upper={}", upper_bound(q, k, l)?);
            say!("lower={}", lll_lower_bound(q, k, l)?);
            Ok(())
        }
        Command::Count { what, q, l, t } => count(what, q, l, t),
        Command::Decode { file, window } => decode(&file, &window),
        Command::Search { q, k, l, budget, json, threads } => search(q, k, l, budget, json, threads),
        Command::Export(Export::Dot { q, l, out }) => write_out(&out, &debruijn_dot(q, l)?),
        Command::Export(Export::DotNecklace { q, l, aperiodic, out }) => {
            let g = necklace::necklace_graph(q, l, aperiodic)?;
            write_out(&out, &necklace_dot(&g))
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { MALFORMED } else { 0 });
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            if !f.msg.is_empty() {
                eprintln!("ebugs: {}", f.msg);
            }
            ExitCode::from(f.code)
        }
    }
}
