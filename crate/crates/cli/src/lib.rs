//! Command-line front end: argument grammar, dispatch and report export.

use std::fmt::Write as _;
use std::io::Write;
use std::path::PathBuf;
use std::time::Duration;

use anyhow::{bail, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use mortonlab::family::{family_sequence, whitehead_double, FamilyMember, FamilySpec};
use mortonlab::homfly::{naive_homfly, skein_trace, Engine, EngineConfig, EngineStats, SkeinTrace, NAIVE_LIMIT};
use mortonlab::morton::{
    compare_polynomials, verify_theorem_family, verify_theorem_family_auto, FamilyReport, PolyMatch,
};
use mortonlab::poly::{LaurentPoly2, TermRecord};
use mortonlab::seifert::seifert_circles;
use mortonlab::{load_knot_table, parse_pd, Diagram, Sign};

pub use mortonlab;

#[derive(Parser, Debug)]
#[command(
    name = "mortonlab",
    version,
    about = "HOMFLY polynomials and z-degree audits for PD link diagrams"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    #[command(flatten)]
    pub run: RunConfig,
}

#[derive(Args, Debug, Clone)]
pub struct RunConfig {
    /// Persistent HOMFLY cache file.
    #[arg(long, global = true, env = "MORTONLAB_CACHE")]
    pub cache: Option<PathBuf>,

    /// Worker threads for the HOMFLY engine.
    #[arg(long, global = true, default_value_t = 1, value_parser = clap::value_parser!(u32).range(1..))]
    pub jobs: u32,

    #[arg(long, global = true, value_enum, default_value_t = Format::Table)]
    pub format: Format,

    /// Crossing limit for the unmemoised reference evaluator.
    #[arg(long, global = true, default_value_t = NAIVE_LIMIT)]
    pub oracle_limit: usize,

    /// More log output on stderr (-v info, -vv debug).
    #[arg(short, long, global = true, action = clap::ArgAction::Count)]
    pub verbose: u8,

    /// Wall-clock budget in seconds for polynomial evaluation.
    #[arg(long, global = true, value_parser = parse_seconds)]
    pub budget: Option<f64>,
}

fn parse_seconds(s: &str) -> Result<f64, String> {
    match s.parse::<f64>() {
        Ok(x) if x.is_finite() && x >= 0.0 => Ok(x),
        _ => Err(format!("expected a non-negative number of seconds, got {s:?}")),
    }
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Json,
    Csv,
    Table,
    Dot,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum MirrorMode {
    /// Compare exactly, then under v -> 1/v.
    #[default]
    Auto,
    Off,
    /// Use the mirror image of the input diagram.
    On,
}

#[derive(Args, Debug, Clone)]
pub struct Input {
    /// PD code, e.g. "X[1,5,2,4] X[3,1,4,6] X[5,3,6,2]".
    #[arg(long, conflicts_with_all = ["table", "name"])]
    pub pd: Option<String>,

    /// CSV knot table with columns name,pd.
    #[arg(long, requires = "name")]
    pub table: Option<PathBuf>,

    #[arg(long, requires = "table")]
    pub name: Option<String>,

    #[arg(long, value_enum, default_value_t = MirrorMode::Auto)]
    pub mirror: MirrorMode,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Validate a diagram and print its normal form.
    Parse(Input),
    /// HOMFLY polynomial, optionally compared with an expected one.
    Homfly {
        #[command(flatten)]
        input: Input,
        /// Expected polynomial; exit 1 if it does not match.
        #[arg(long, allow_hyphen_values = true)]
        expect: Option<String>,
    },
    /// Seifert circles and diagram genus.
    Seifert(Input),
    /// Diagrams with crossing i replaced by n parallel bands.
    Family {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        crossing: usize,
        /// Band counts, e.g. 0,1,2,3.
        #[arg(long, value_delimiter = ',', default_values_t = [0u32, 1, 2, 3])]
        n: Vec<u32>,
    },
    /// Check M(L_n) < 2 g_c - 1 + n for n = 0..=nmax.
    Verify {
        #[command(flatten)]
        input: Input,
        /// Canonical genus of the knot, taken as given.
        #[arg(long)]
        gc: i64,
        /// Crossing index, or "auto" to try eligible crossings in order.
        #[arg(long, default_value = "auto")]
        crossing: String,
        #[arg(long, default_value_t = 5)]
        nmax: u32,
    },
    /// Full skein resolution tree.
    SkeinTree {
        #[command(flatten)]
        input: Input,
    },
    /// Whitehead double of a knot diagram.
    Double {
        #[command(flatten)]
        input: Input,
        /// Clasp sign: 1 or -1.
        #[arg(long, default_value_t = 1, allow_negative_numbers = true)]
        clasp: i32,
        /// Extra full twists in the doubled band.
        #[arg(long, default_value_t = 0, allow_negative_numbers = true)]
        twists: i32,
    },
    /// Compare the memoised engine with the plain skein recursion.
    OracleCheck {
        #[arg(long, conflicts_with = "pd")]
        table: Option<PathBuf>,
        #[arg(long)]
        pd: Option<String>,
        /// Only diagrams with at most this many crossings.
        #[arg(long, default_value_t = 7)]
        max_crossings: usize,
        /// Additional random braid closures.
        #[arg(long, default_value_t = 0)]
        random: usize,
        #[arg(long, default_value_t = 1)]
        seed: u64,
    },
}

/// How a command ended, beyond hard errors.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Ok,
    VerificationFailed,
}

pub struct Outcome {
    pub status: Status,
    /// Engine counters, for commands that evaluate polynomials.
    pub stats: Option<EngineStats>,
}

/// Errors caused by the user's input (exit code 2), as opposed to internal
/// failures.
#[derive(Debug, thiserror::Error)]
#[error("{0}")]
pub struct InputError(pub String);

fn input_error(e: impl std::fmt::Display) -> anyhow::Error {
    InputError(e.to_string()).into()
}

/// Exit code for an error: 2 for bad input, 1 otherwise.
pub fn exit_code_for(err: &anyhow::Error) -> i32 {
    if err.downcast_ref::<InputError>().is_some() {
        return 2;
    }
    match err.downcast_ref::<mortonlab::Error>() {
        Some(mortonlab::Error::BudgetExceeded) => 1,
        Some(mortonlab::Error::Io(_)) => 1,
        Some(_) => 2,
        None => 1,
    }
}

/// Output payloads.
#[derive(Serialize)]
#[serde(untagged)]
pub enum Payload {
    Parse(ParseOutput),
    Homfly(HomflyOutput),
    Seifert(SeifertOutput),
    Family(Vec<FamilyMember>),
    Report(FamilyReport),
    Trace(SkeinTrace),
    Double(DoubleOutput),
    Oracle(OracleOutput),
}

#[derive(Serialize)]
pub struct ParseOutput {
    pub name: String,
    pub pd: String,
    pub crossings: usize,
    pub components: usize,
    pub free_loops: u32,
    pub writhe: i32,
    pub connected: bool,
    pub canonical_code: String,
}

#[derive(Serialize)]
pub struct HomflyOutput {
    pub name: String,
    pub pd: String,
    pub mirrored_input: bool,
    pub polynomial: String,
    pub terms: Vec<TermRecord>,
    pub maxdeg_z: Option<i32>,
    pub alexander: Option<String>,
    pub expected: Option<String>,
    pub matches_expected: Option<PolyMatch>,
}

#[derive(Serialize)]
pub struct SeifertOutput {
    pub name: String,
    pub c: usize,
    pub s: usize,
    pub mu: usize,
    pub diagram_genus: i64,
    pub morton_bound: i64,
    pub eligible_crossings: Vec<usize>,
}

#[derive(Serialize)]
pub struct DoubleOutput {
    pub name: String,
    pub clasp: i32,
    pub twists: i32,
    pub base_crossings: usize,
    pub pd: String,
    pub crossings: usize,
    pub components: usize,
    pub diagram_genus: i64,
}

#[derive(Serialize)]
pub struct OracleRow {
    pub name: String,
    pub crossings: usize,
    pub agree: bool,
}

#[derive(Serialize)]
pub struct OracleOutput {
    pub checked: usize,
    pub mismatches: usize,
    pub rows: Vec<OracleRow>,
}

/// Renders a payload. Output depends only on the payload, so equal results
/// give equal bytes.
pub fn export_report(payload: &Payload, format: Format) -> anyhow::Result<Vec<u8>> {
    let text = match (payload, format) {
        (_, Format::Json) => serde_json::to_string_pretty(payload)? + "\n",
        (Payload::Trace(t), Format::Dot) => t.to_dot(),
        (_, Format::Dot) => bail!(InputError("dot output is only available for skein-tree".into())),
        (Payload::Report(r), Format::Csv) => r.to_csv(),
        (Payload::Report(r), Format::Table) => r.to_table(),
        (Payload::Parse(p), Format::Table) => format!(
            "{}\n{}\ncrossings {}  components {}  writhe {}  connected {}\ncode {}\n",
            p.name, p.pd, p.crossings, p.components, p.writhe, p.connected, p.canonical_code
        ),
        (Payload::Parse(p), Format::Csv) => format!(
            "name,crossings,components,writhe,code\n{},{},{},{},{}\n",
            p.name, p.crossings, p.components, p.writhe, p.canonical_code
        ),
        (Payload::Homfly(h), Format::Table) => {
            let mut s = format!("{}\n", h.polynomial);
            if let Some(m) = h.matches_expected {
                writeln!(s, "expected: {:?}", m)?;
            }
            s
        }
        (Payload::Homfly(h), Format::Csv) => {
            let mut s = String::from("ev,ez,c\n");
            for t in &h.terms {
                writeln!(s, "{},{},{}", t.ev, t.ez, t.c)?;
            }
            s
        }
        (Payload::Seifert(r), Format::Csv) => {
            format!(
                "name,c,s,mu,diagram_genus\n{},{},{},{},{}\n",
                r.name, r.c, r.s, r.mu, r.diagram_genus
            )
        }
        (Payload::Seifert(r), Format::Table) => format!(
            "{}: c={} s={} mu={} diagram_genus={} bound={}\neligible crossings: {:?}\n",
            r.name, r.c, r.s, r.mu, r.diagram_genus, r.morton_bound, r.eligible_crossings
        ),
        (Payload::Family(ms), Format::Csv) => {
            let mut s = String::from("n,c,s,mu,genus,pd\n");
            for m in ms {
                let g = m.diagram_genus.map_or_else(String::new, |g| g.to_string());
                writeln!(
                    s,
                    "{},{},{},{},{},\"{}\"",
                    m.n,
                    m.crossings,
                    m.seifert_circles,
                    m.components,
                    g,
                    m.diagram.to_pd_string()
                )?;
            }
            s
        }
        (Payload::Family(ms), Format::Table) => {
            let mut s = String::new();
            for m in ms {
                writeln!(s, "L_{}: {}", m.n, m.diagram.to_pd_string())?;
            }
            s
        }
        (Payload::Trace(t), _) => {
            let mut s = String::from("id,parent,role,crossings,components,maxdeg_z,cancellation\n");
            for n in &t.nodes {
                let parent = n.parent.map_or_else(String::new, |p| p.to_string());
                let m = n.maxdeg_z.map_or_else(String::new, |m| m.to_string());
                writeln!(
                    s,
                    "{},{},{:?},{},{},{},{}",
                    n.id, parent, n.role, n.crossings, n.components, m, n.cancellation
                )?;
            }
            s
        }
        (Payload::Double(d), Format::Csv) => format!(
            "name,base_crossings,crossings,components,diagram_genus\n{},{},{},{},{}\n",
            d.name, d.base_crossings, d.crossings, d.components, d.diagram_genus
        ),
        (Payload::Double(d), Format::Table) => format!(
            "{}\ncrossings {}  components {}  diagram genus {} (base crossings {})\n",
            d.pd, d.crossings, d.components, d.diagram_genus, d.base_crossings
        ),
        (Payload::Oracle(o), _) => {
            let mut s = String::from("name,crossings,agree\n");
            for r in &o.rows {
                writeln!(s, "{},{},{}", r.name, r.crossings, r.agree)?;
            }
            if format == Format::Table {
                writeln!(s, "checked {}, mismatches {}", o.checked, o.mismatches)?;
            }
            s
        }
    };
    Ok(text.into_bytes())
}

fn load_input(input: &Input) -> anyhow::Result<(String, Diagram)> {
    let (name, d) = match (&input.pd, &input.table, &input.name) {
        (Some(pd), _, _) => ("input".to_string(), parse_pd(pd).map_err(input_error)?),
        (None, Some(table), Some(name)) => {
            let t = load_knot_table(table).map_err(|e| input_error(format!("{}: {e}", table.display())))?;
            let e = t.get(name).map_err(input_error)?;
            (name.clone(), e.diagram.clone())
        }
        _ => bail!(InputError("give --pd or --table with --name".into())),
    };
    if input.mirror == MirrorMode::On {
        Ok((name, mirror_diagram(&d)?))
    } else {
        Ok((name, d))
    }
}

fn mirror_diagram(d: &Diagram) -> anyhow::Result<Diagram> {
    let mut m = d.clone();
    for i in 0..d.crossing_count() {
        m = m.switch_crossing(i)?;
    }
    Ok(m)
}

fn make_engine(config: &RunConfig) -> anyhow::Result<Engine> {
    let engine = Engine::new(EngineConfig {
        jobs: config.jobs as usize,
        budget: config.budget.map(Duration::from_secs_f64),
        ..Default::default()
    });
    if let Some(path) = &config.cache {
        let n = engine
            .load_cache(path)
            .with_context(|| format!("reading cache {}", path.display()))?;
        log::info!("loaded {n} cache entries from {}", path.display());
    }
    Ok(engine)
}

fn finish_engine(engine: &Engine, config: &RunConfig) -> anyhow::Result<EngineStats> {
    if let Some(path) = &config.cache {
        let n = engine
            .persist_cache(path)
            .with_context(|| format!("writing cache {}", path.display()))?;
        log::info!("appended {n} cache entries to {}", path.display());
    }
    let s = engine.stats();
    log::info!(
        "engine: {} expansions, {} cache hits, {} entries",
        s.expansions,
        s.cache_hits,
        s.cache_entries
    );
    Ok(s)
}

/// Runs a parsed command, writing the primary output to `out`.
pub fn execute(cli: &Cli, out: &mut dyn Write) -> anyhow::Result<Outcome> {
    let mut stats = None;
    let config = &cli.run;
    let budget = config.budget.map(Duration::from_secs_f64);
    let (payload, status) = match &cli.command {
        Command::Parse(input) => {
            let (name, d) = load_input(input)?;
            let p = ParseOutput {
                name,
                pd: d.to_pd_string(),
                crossings: d.crossing_count(),
                components: d.num_components(),
                free_loops: d.free_loops(),
                writhe: d.writhe(),
                connected: d.is_connected(),
                canonical_code: d.canonical_code().to_hex(),
            };
            (Payload::Parse(p), Status::Ok)
        }
        Command::Homfly { input, expect } => {
            let (name, d) = load_input(input)?;
            let engine = make_engine(config)?;
            let p = engine.homfly(&d)?;
            stats = Some(finish_engine(&engine, config)?);
            let expected = expect
                .as_deref()
                .map(str::parse::<LaurentPoly2>)
                .transpose()
                .map_err(input_error)?;
            let matches = expected
                .as_ref()
                .map(|e| match (compare_polynomials(&p, e), input.mirror) {
                    (PolyMatch::Mirror, MirrorMode::Off | MirrorMode::On) => PolyMatch::Different,
                    (m, _) => m,
                });
            let status = match matches {
                Some(PolyMatch::Different) => Status::VerificationFailed,
                _ => Status::Ok,
            };
            let h = HomflyOutput {
                name,
                pd: d.to_pd_string(),
                mirrored_input: input.mirror == MirrorMode::On,
                polynomial: p.to_string(),
                terms: p.to_records(),
                maxdeg_z: p.maxdeg_z(),
                alexander: (d.num_components() == 1)
                    .then(|| p.alexander().map(|a| a.to_string()))
                    .transpose()?,
                expected: expected.map(|e| e.to_string()),
                matches_expected: matches,
            };
            (Payload::Homfly(h), status)
        }
        Command::Seifert(input) => {
            let (name, d) = load_input(input)?;
            let dec = seifert_circles(&d).map_err(input_error)?;
            let s = SeifertOutput {
                name,
                c: dec.crossings,
                s: dec.num_circles,
                mu: dec.num_components,
                diagram_genus: dec.diagram_genus,
                morton_bound: dec.morton_bound(),
                eligible_crossings: dec.eligible_crossings(),
            };
            (Payload::Seifert(s), Status::Ok)
        }
        Command::Family { input, crossing, n } => {
            let (_, d) = load_input(input)?;
            let spec = FamilySpec {
                base: d,
                crossing: *crossing,
                counts: n.clone(),
            };
            (
                Payload::Family(family_sequence(&spec).map_err(input_error)?),
                Status::Ok,
            )
        }
        Command::Verify {
            input,
            gc,
            crossing,
            nmax,
        } => {
            let (name, d) = load_input(input)?;
            let engine = make_engine(config)?;
            let counts: Vec<u32> = (0..=*nmax).collect();
            let report = if crossing == "auto" {
                verify_theorem_family_auto(&engine, &name, &d, &counts, *gc, budget)?
            } else {
                let i = crossing
                    .parse()
                    .map_err(|_| input_error(format!("--crossing expects an index or auto, got {crossing:?}")))?;
                let spec = FamilySpec {
                    base: d,
                    crossing: i,
                    counts,
                };
                verify_theorem_family(&engine, &name, &spec, *gc, budget).map_err(input_error)?
            };
            stats = Some(finish_engine(&engine, config)?);
            let status = if report.all_strict() {
                Status::Ok
            } else {
                Status::VerificationFailed
            };
            (Payload::Report(report), status)
        }
        Command::SkeinTree { input } => {
            let (_, d) = load_input(input)?;
            (Payload::Trace(skein_trace(&d).map_err(input_error)?), Status::Ok)
        }
        Command::Double { input, clasp, twists } => {
            let (name, d) = load_input(input)?;
            let sign = match clasp {
                1 => Sign::Positive,
                -1 => Sign::Negative,
                _ => bail!(InputError("--clasp must be 1 or -1".into())),
            };
            let w = whitehead_double(&d, sign, *twists).map_err(input_error)?;
            let o = DoubleOutput {
                name,
                clasp: *clasp,
                twists: *twists,
                base_crossings: d.crossing_count(),
                pd: w.to_pd_string(),
                crossings: w.crossing_count(),
                components: w.num_components(),
                diagram_genus: seifert_circles(&w)?.diagram_genus,
            };
            (Payload::Double(o), Status::Ok)
        }
        Command::OracleCheck {
            table,
            pd,
            max_crossings,
            random,
            seed,
        } => {
            let (o, s) = oracle_check(config, table.as_ref(), pd.as_deref(), *max_crossings, *random, *seed)?;
            stats = Some(s);
            let status = if o.mismatches == 0 {
                Status::Ok
            } else {
                Status::VerificationFailed
            };
            (Payload::Oracle(o), status)
        }
    };
    out.write_all(&export_report(&payload, config.format)?)?;
    Ok(Outcome { status, stats })
}

fn oracle_check(
    config: &RunConfig,
    table: Option<&PathBuf>,
    pd: Option<&str>,
    max_crossings: usize,
    random: usize,
    seed: u64,
) -> anyhow::Result<(OracleOutput, EngineStats)> {
    use rand::SeedableRng;

    let limit = max_crossings.min(config.oracle_limit);
    let mut corpus: Vec<(String, Diagram)> = Vec::new();
    if let Some(path) = table {
        let t = load_knot_table(path).map_err(|e| input_error(format!("{}: {e}", path.display())))?;
        corpus.extend(
            t.iter()
                .filter(|e| e.diagram.crossing_count() <= limit)
                .map(|e| (e.name.clone(), e.diagram.clone())),
        );
    }
    if let Some(pd) = pd {
        corpus.push(("input".into(), parse_pd(pd).map_err(input_error)?));
    }
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    for k in 0..random {
        let d = mortonlab::random::random_braid_diagram(&mut rng, 4, limit);
        corpus.push((format!("random{k}"), mortonlab::random::random_relabel(&d, &mut rng)));
    }
    let engine = make_engine(config)?;
    let mut rows = Vec::new();
    for (name, d) in corpus {
        if d.crossing_count() > limit {
            bail!(InputError(format!(
                "{name} has {} crossings, above the limit {limit}",
                d.crossing_count()
            )));
        }
        let agree = engine.homfly(&d)? == naive_homfly(&d)?;
        rows.push(OracleRow {
            name,
            crossings: d.crossing_count(),
            agree,
        });
    }
    let stats = finish_engine(&engine, config)?;
    let mismatches = rows.iter().filter(|r| !r.agree).count();
    Ok((
        OracleOutput {
            checked: rows.len(),
            mismatches,
            rows,
        },
        stats,
    ))
}

/// Exit code for a finished command.
pub fn exit_code(result: &anyhow::Result<Outcome>, err: &mut dyn Write) -> i32 {
    match result.as_ref().map(|o| o.status) {
        Ok(Status::Ok) => 0,
        Ok(Status::VerificationFailed) => 1,
        Err(e) => {
            let _ = writeln!(err, "error: {e:#}");
            exit_code_for(e)
        }
    }
}

/// Parses `argv`, runs the command and returns the process exit code.
pub fn run_command<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = e.exit_code();
            let _ = write!(err, "{}", e.render());
            return code;
        }
    };
    exit_code(&execute(&cli, out), err)
}
