//! `kariforge`: compile piecewise affine maps into Wang tiles and check them.

mod render;

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, bail, ensure, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use kariforge::freegroup::{
    empty_finite, in_language, perg_forbidden, simple_sft_check, xleq1_forbidden, AbelianOracle,
    FGWord, FreeOracle, PaOracle, Pattern, PatternProblem, PermOracle, SftVerdict, TrivialOracle,
    WordOracle, DEFAULT_BUDGET,
};
use kariforge::karigen::{
    affine_tiles, family_tiles, pamap_circuit, GroupTileSet, TileOptions, ZTile, ZTileSet,
};
use kariforge::pamaps::{presets, PAMap, Presentation, Verdict};
use kariforge::verify::{map_witness_row, verify_tiles, witness_row, VerifyReport};
use kariforge::Rat;

/// Overrides the default search budgets of `group --witness` and the
/// free-group commands.
const BUDGET_VAR: &str = "KARIFORGE_BUDGET";

/// Generator name given to a map read on its own.
const MAP_NAME: &str = "f";

#[derive(Parser)]
#[command(name = "kariforge", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compile a map or a preset group into a tile set.
    Gen(GenArgs),
    /// Check a tile set against its map; exit 2 on periodicity, 3 on
    /// unsound or empty sets.
    Verify(VerifyArgs),
    /// Print the row of tiles encoding one input value.
    Simulate(SimulateArgs),
    /// Word problem and nontriviality witnesses in a preset group.
    Group(GroupArgs),
    /// Pattern problems on free groups.
    #[command(subcommand)]
    Freegroup(FreegroupCommand),
    /// Draw a tile set as SVG.
    Render(RenderArgs),
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct Source {
    /// JSON file holding one map or a map per generator.
    #[arg(long)]
    map: Option<PathBuf>,
    /// Built-in group: z-kari, psl2z, thompson-t or thompson-v.
    #[arg(long)]
    preset: Option<String>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Switch {
    On,
    Off,
}

#[derive(Args)]
struct GenArgs {
    #[command(flatten)]
    source: Source,
    /// Output file; the JSON goes to stdout when omitted.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "on")]
    fast_path: Switch,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long)]
    tiles: PathBuf,
    #[command(flatten)]
    source: Source,
    #[arg(long, default_value_t = 8)]
    max_n: usize,
    #[arg(long, default_value_t = 6)]
    max_k: usize,
}

#[derive(Args)]
struct SimulateArgs {
    #[command(flatten)]
    source: Source,
    /// Generator to simulate when the source has several.
    #[arg(long)]
    generator: Option<String>,
    #[arg(long)]
    x: Rat,
    #[arg(long, default_value_t = 16)]
    window: i64,
    /// Use only this piece (1-based, in domain order) as a bare affine set.
    #[arg(long)]
    piece: Option<usize>,
}

#[derive(Args)]
struct GroupArgs {
    #[arg(long)]
    preset: String,
    #[arg(long)]
    word: String,
    #[arg(long, conflicts_with = "witness", required_unless_present = "witness")]
    is_identity: bool,
    #[arg(long)]
    witness: bool,
    #[arg(long)]
    budget: Option<usize>,
}

#[derive(Args)]
struct OracleArgs {
    /// free, abelian, trivial, cyclic:N, or a preset name.
    #[arg(long, default_value = "free")]
    oracle: String,
    /// Number of generators for free, abelian and trivial oracles.
    #[arg(long, default_value_t = 2)]
    rank: usize,
    #[arg(long, default_value_t = 2)]
    radius: usize,
}

#[derive(Subcommand)]
enum FreegroupCommand {
    /// Decide whether any configuration avoids all patterns.
    Empty {
        #[arg(long)]
        problem: PathBuf,
        #[arg(long)]
        budget: Option<u128>,
    },
    /// Decide whether a pattern is forbidden: no surviving configuration
    /// shows it.
    Member {
        #[arg(long)]
        problem: PathBuf,
        /// Pattern JSON file.
        #[arg(long)]
        pattern: PathBuf,
        #[arg(long)]
        budget: Option<u128>,
    },
    /// Patterns forcing configurations to be constant on group elements.
    Perg {
        #[command(flatten)]
        oracle: OracleArgs,
        #[arg(long, default_value_t = 2)]
        alphabet: u32,
    },
    /// Patterns allowing at most one `1`.
    Xleq1 {
        #[command(flatten)]
        oracle: OracleArgs,
    },
    /// Colour the ball so that `g` and `g·a` always differ.
    Simple {
        #[command(flatten)]
        oracle: OracleArgs,
        #[arg(long)]
        a: FGWord,
    },
}

#[derive(Args)]
struct RenderArgs {
    #[arg(long)]
    tiles: PathBuf,
    #[arg(long)]
    out: PathBuf,
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}

fn run(cli: Cli) -> Result<u8> {
    match cli.command {
        Command::Gen(args) => gen(args).map(|()| 0),
        Command::Verify(args) => verify(args),
        Command::Simulate(args) => simulate(args).map(|()| 0),
        Command::Group(args) => group(args).map(|()| 0),
        Command::Freegroup(cmd) => freegroup(cmd).map(|()| 0),
        Command::Render(args) => {
            let text = read(&args.tiles)?;
            let svg = match serde_json::from_str::<GroupTileSet>(&text) {
                Ok(gts) => render::render_svg(gts.tile_set(), Some(gts.generators()))?,
                Err(_) => render::render_svg(&parse_tiles(&text)?, None)?,
            };
            fs::write(&args.out, svg).with_context(|| format!("writing {}", args.out.display()))?;
            Ok(0)
        }
    }
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

fn parse_tiles(text: &str) -> Result<ZTileSet> {
    serde_json::from_str(text).context("parsing tile set")
}

enum Loaded {
    Map(PAMap),
    Group(Presentation),
}

impl Loaded {
    fn presentation(self) -> Result<Presentation> {
        match self {
            Loaded::Map(f) => Ok(Presentation::new(BTreeMap::from([(
                MAP_NAME.to_string(),
                f,
            )]))?),
            Loaded::Group(p) => Ok(p),
        }
    }
}

fn load(source: &Source) -> Result<Loaded> {
    if let Some(name) = &source.preset {
        let p = presets::by_name(name).ok_or_else(|| {
            anyhow!(
                "unknown preset {name:?}; expected one of {}",
                presets::PRESET_NAMES.join(", ")
            )
        })?;
        return Ok(Loaded::Group(p));
    }
    let path = source.map.as_ref().expect("clap requires a source");
    let text = read(path)?;
    if let Ok(f) = serde_json::from_str::<PAMap>(&text) {
        return Ok(Loaded::Map(f));
    }
    let p: Presentation = serde_json::from_str(&text)
        .with_context(|| format!("{} holds neither a map nor a presentation", path.display()))?;
    Ok(Loaded::Group(p))
}

fn gen(args: GenArgs) -> Result<()> {
    let opts = TileOptions {
        fast_path: matches!(args.fast_path, Switch::On),
    };
    let (json, count) = match load(&args.source)? {
        Loaded::Map(f) => {
            let ts = kariforge::karigen::pamap_tiles(&f, opts)?;
            (serde_json::to_string(&ts)?, ts.len())
        }
        Loaded::Group(p) => {
            let gts = family_tiles(&p, opts)?;
            (serde_json::to_string(&gts)?, gts.len())
        }
    };
    match &args.out {
        Some(path) => {
            fs::write(path, json + "\n").with_context(|| format!("writing {}", path.display()))?;
            println!("{count} tiles");
        }
        None => {
            println!("{json}");
            eprintln!("{count} tiles");
        }
    }
    Ok(())
}

/// Pairs every output of the set with the generator it encodes. A single
/// output is paired with a single generator whatever their names.
fn pair_outputs(ts: &ZTileSet, pres: &Presentation) -> Result<Vec<(String, PAMap)>> {
    let gens = pres.generators();
    if ts.outs().len() == 1 && gens.len() == 1 {
        let f = gens.values().next().expect("one generator").clone();
        return Ok(vec![(
            ts.outs().keys().next().expect("one output").clone(),
            f,
        )]);
    }
    ts.outs()
        .keys()
        .map(|out| {
            let f = gens
                .get(out)
                .ok_or_else(|| anyhow!("no generator named {out:?} for output {out:?}"))?;
            Ok((out.clone(), f.clone()))
        })
        .collect()
}

fn verify(args: VerifyArgs) -> Result<u8> {
    let ts = parse_tiles(&read(&args.tiles)?)?;
    let pres = load(&args.source)?.presentation()?;
    let mut reports: BTreeMap<String, VerifyReport> = BTreeMap::new();
    for (out, f) in pair_outputs(&ts, &pres)? {
        let single = ts.project(&out)?;
        reports.insert(out, verify_tiles(&single, &f, args.max_n, args.max_k)?);
    }
    let code = reports
        .values()
        .map(VerifyReport::exit_code)
        .max()
        .unwrap_or(0);
    if reports.len() == 1 {
        let report = reports.into_values().next().expect("one report");
        println!("{}", serde_json::to_string(&report)?);
    } else {
        println!("{}", serde_json::to_string(&reports)?);
    }
    Ok(u8::try_from(code).expect("small exit code"))
}

fn digits(row: &[ZTile], f: impl Fn(&ZTile) -> u8) -> String {
    row.iter()
        .map(|t| char::from_digit(f(t).into(), 16).expect("digit below 16"))
        .collect()
}

fn simulate(args: SimulateArgs) -> Result<()> {
    let pres = load(&args.source)?.presentation()?;
    let (name, f) = match &args.generator {
        Some(g) => (
            g.clone(),
            pres.generator(g)
                .ok_or_else(|| anyhow!("no generator named {g:?}"))?
                .clone(),
        ),
        None => {
            ensure!(
                pres.generators().len() == 1,
                "choose a generator with --generator"
            );
            let (n, f) = pres.generators().iter().next().expect("one generator");
            (n.clone(), f.clone())
        }
    };
    let (row, y) = match args.piece {
        Some(i) => {
            let piece = i
                .checked_sub(1)
                .and_then(|i| f.pieces().get(i))
                .ok_or_else(|| anyhow!("{name} has {} pieces", f.pieces().len()))?;
            ensure!(
                piece.dom.contains(&args.x),
                "{} is outside the domain {} of piece {i}",
                args.x,
                piece.dom
            );
            let m = f.space().bit_max();
            let ts = affine_tiles(&piece.slope, &piece.offset, m, m)?;
            let row = witness_row(&ts, &piece.slope, &piece.offset, &args.x, args.window)?;
            (row, piece.eval(&args.x))
        }
        None => {
            let circuit = pamap_circuit(&f, TileOptions::default())?;
            let ts = circuit.compile()?;
            let row = map_witness_row(&circuit, &ts, &f, &args.x, args.window)?;
            (row, f.apply(&args.x)?)
        }
    };
    println!("{name}({}) = {y}", args.x);
    println!("positions {}..={}", -args.window, args.window);
    println!("top     {}", digits(&row, |t| t.top));
    println!("bottom  {}", digits(&row, ZTile::out));
    let carries: Vec<String> = std::iter::once(&row[0].left)
        .chain(row.iter().map(|t| &t.right))
        .map(|l| l.to_string())
        .collect();
    println!("carries {}", carries.join(" "));
    println!("valid: {} tiles from the set, neighbours match", row.len());
    Ok(())
}

fn budget_from_env() -> Result<Option<u128>> {
    match std::env::var(BUDGET_VAR) {
        Ok(v) => Ok(Some(v.parse().with_context(|| {
            format!("{BUDGET_VAR} must be a nonnegative integer")
        })?)),
        Err(_) => Ok(None),
    }
}

fn group(args: GroupArgs) -> Result<()> {
    let pres = presets::by_name(&args.preset)
        .ok_or_else(|| anyhow!("unknown preset {:?}", args.preset))?;
    let word = pres.parse_word(&args.word)?;
    if args.is_identity {
        println!("{}", pres.is_identity_word(&word)?);
        return Ok(());
    }
    let budget = match args.budget {
        Some(b) => b,
        None => budget_from_env()?.map_or(Ok(3), usize::try_from)?,
    };
    match pres.nontriviality_witness(&word, budget)? {
        Verdict::Witness(w) => {
            let conj = if w.conjugator.is_empty() {
                "identity".to_string()
            } else {
                w.conjugator.to_string()
            };
            println!(
                "witness t = {} (conjugator {conj}, depth {})",
                w.point, w.depth
            );
        }
        Verdict::Unknown => println!("unknown"),
    }
    Ok(())
}

fn oracle(args: &OracleArgs) -> Result<Box<dyn WordOracle>> {
    let rank = args.rank;
    Ok(match args.oracle.as_str() {
        "free" => Box::new(FreeOracle { rank }),
        "abelian" => Box::new(AbelianOracle { rank }),
        "trivial" => Box::new(TrivialOracle { rank }),
        other => {
            if let Some(order) = other.strip_prefix("cyclic:") {
                let order: usize = order.parse().context("cyclic order")?;
                ensure!(order > 0, "cyclic order must be positive");
                Box::new(PermOracle::cyclic(order))
            } else if let Some(p) = presets::by_name(other) {
                Box::new(PaOracle::new(p))
            } else {
                bail!("unknown oracle {other:?}")
            }
        }
    })
}

fn pattern_budget(flag: Option<u128>) -> Result<u128> {
    Ok(flag.or(budget_from_env()?).unwrap_or(DEFAULT_BUDGET))
}

fn print_problem(alphabet: u32, patterns: Vec<Pattern>) -> Result<()> {
    let problem = PatternProblem::new(alphabet, patterns)?;
    println!("{}", serde_json::to_string(&problem)?);
    eprintln!("{} patterns", problem.patterns().len());
    Ok(())
}

fn freegroup(cmd: FreegroupCommand) -> Result<()> {
    match cmd {
        FreegroupCommand::Empty { problem, budget } => {
            let p: PatternProblem = serde_json::from_str(&read(&problem)?)?;
            let empty = empty_finite(&p, pattern_budget(budget)?)?;
            println!("{}", if empty { "empty" } else { "nonempty" });
        }
        FreegroupCommand::Member {
            problem,
            pattern,
            budget,
        } => {
            let p: PatternProblem = serde_json::from_str(&read(&problem)?)?;
            let w: Pattern = serde_json::from_str(&read(&pattern)?)?;
            println!("{}", in_language(&w, &p, pattern_budget(budget)?)?);
        }
        FreegroupCommand::Perg {
            oracle: o,
            alphabet,
        } => {
            print_problem(
                alphabet,
                perg_forbidden(oracle(&o)?.as_ref(), o.radius, alphabet)?,
            )?;
        }
        FreegroupCommand::Xleq1 { oracle: o } => {
            print_problem(2, xleq1_forbidden(oracle(&o)?.as_ref(), o.radius)?)?;
        }
        FreegroupCommand::Simple { oracle: o, a } => {
            match simple_sft_check(oracle(&o)?.as_ref(), o.radius, &a)? {
                SftVerdict::Witness(c) => println!("{}", serde_json::to_string(&c)?),
                SftVerdict::NoColoringInBall => println!("no colouring"),
            }
        }
    }
    Ok(())
}
