mod route;

use std::fs;
use std::io::{self as stdio, Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::seq::index::sample;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use excseq::braid::{self, act_word, BraidWord};
use excseq::chord::{self, Mode};
use excseq::counting::{self, count_formula, Family, FormulaKind, Property};
use excseq::forest::{self, AugmentedTree, RootedForest};
use excseq::hereditary::{cn_cat, CatData};
use excseq::signed::Signed;
use excseq::verify::{self, Bounds, Suite};
use excseq::{bijections, io, render, tube, Error};

use route::Kind;

#[derive(Parser)]
#[command(name = "excseq", version, about = "Enumerate, count, convert and verify exceptional sequences and their combinatorial models")]
struct Cli {
    /// Worker threads; defaults to the number of cores.
    #[arg(long, global = true, env = "EXCSEQ_JOBS")]
    jobs: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Stream objects as newline-delimited JSON.
    Enumerate(EnumerateArgs),
    /// Evaluate a closed formula or count an enumeration.
    Count(CountArgs),
    /// Convert an object between models.
    Map(MapArgs),
    /// Act by a braid word, or check the braid relations on a carrier.
    Braid(BraidArgs),
    /// Exact distribution of relatively projective positions.
    Stats(StatsArgs),
    /// Run verification suites and print a JSON report.
    Verify(VerifyArgs),
    /// Draw a tree, forest or diagram.
    Render(RenderArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum FamilyArg {
    An,
    Cn,
    Tube,
    Tree,
    Forest,
    Diagram,
    Pointed,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Svg,
    Dot,
    Text,
}

#[derive(Args)]
struct Output {
    /// Write to this file instead of standard output.
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct Input {
    /// JSON object; a path, `-` for standard input, or inline JSON.
    #[arg(long)]
    input: Option<String>,
}

#[derive(Args)]
struct EnumerateArgs {
    #[arg(long, value_enum)]
    family: FamilyArg,
    #[arg(long)]
    n: usize,
    /// Sequence length; defaults to complete sequences.
    #[arg(long)]
    k: Option<usize>,
    #[arg(long)]
    signed: bool,
    /// Allow loops and non-rigid bricks.
    #[arg(long)]
    soft: bool,
    /// Trees and forests carry an augmentation.
    #[arg(long)]
    augmented: bool,
    #[arg(long)]
    limit: Option<usize>,
    /// Uniform sample of `--limit` records instead of the first ones.
    #[arg(long)]
    seed: Option<u64>,
    #[command(flatten)]
    out: Output,
}

#[derive(Args)]
struct CountArgs {
    /// Closed formula, e.g. exc-cn, signed-cn, chord-oriented, excsets-an.
    #[arg(long, conflicts_with = "family")]
    kind: Option<String>,
    #[arg(long, value_enum)]
    family: Option<FamilyArg>,
    #[arg(long)]
    n: usize,
    #[arg(long)]
    k: Option<usize>,
    #[arg(long)]
    signed: bool,
    #[arg(long)]
    soft: bool,
    #[arg(long)]
    augmented: bool,
}

#[derive(Args)]
struct MapArgs {
    #[arg(long, value_enum)]
    from: Kind,
    #[arg(long, value_enum)]
    to: Kind,
    #[command(flatten)]
    input: Input,
    /// Map back along the reverse route and require the input again.
    #[arg(long)]
    round_trip: bool,
    /// Root label used when a forest becomes a tree.
    #[arg(long, default_value_t = 1)]
    root: usize,
    #[command(flatten)]
    out: Output,
}

#[derive(Args)]
struct BraidArgs {
    /// Carrier: tree, forest, pointed or cn.
    #[arg(long, value_enum)]
    family: FamilyArg,
    #[arg(long)]
    augmented: bool,
    /// Braid word such as "s1 s2 s1'"; the rightmost generator acts first.
    #[arg(long, default_value = "")]
    word: String,
    /// Without an input, check the relations on every carrier element of this size.
    #[arg(long)]
    n: Option<usize>,
    #[command(flatten)]
    input: Input,
    #[command(flatten)]
    out: Output,
}

#[derive(Args)]
struct StatsArgs {
    /// cn or tube.
    #[arg(long, value_enum)]
    family: FamilyArg,
    #[arg(long)]
    n: usize,
    #[arg(long)]
    k: Option<usize>,
    /// Tabulate relative injectivity instead.
    #[arg(long)]
    injective: bool,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
    #[command(flatten)]
    out: Output,
}

#[derive(Args)]
struct VerifyArgs {
    /// Comma separated suites, or `all`.
    #[arg(long, default_value = "all")]
    suite: String,
    /// Overrides every per-family rank bound.
    #[arg(long)]
    n_max: Option<usize>,
    #[command(flatten)]
    out: Output,
}

#[derive(Args)]
struct RenderArgs {
    /// tree, forest or diagram.
    #[arg(long, value_enum)]
    from: Kind,
    #[command(flatten)]
    input: Input,
    #[arg(long, value_enum, default_value_t = Format::Svg)]
    format: Format,
    #[command(flatten)]
    out: Output,
}

/// Failure modes mapped to exit codes.
enum Fail {
    Usage(String),
    Verification(String),
}

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        Fail::Usage(e.to_string())
    }
}

impl From<stdio::Error> for Fail {
    fn from(e: stdio::Error) -> Self {
        Fail::Usage(e.to_string())
    }
}

type Res<T> = Result<T, Fail>;

fn usage<T>(msg: impl Into<String>) -> Res<T> {
    Err(Fail::Usage(msg.into()))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let mut pool = rayon::ThreadPoolBuilder::new();
    if let Some(j) = cli.jobs {
        if j == 0 {
            eprintln!("error: --jobs must be positive");
            return ExitCode::from(2);
        }
        pool = pool.num_threads(j);
    }
    let pool = match pool.build() {
        Ok(p) => p,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    match pool.install(|| dispatch(cli.command)) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Fail::Usage(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(2)
        }
        Err(Fail::Verification(m)) => {
            eprintln!("verification failed: {m}");
            ExitCode::from(1)
        }
    }
}

fn dispatch(cmd: Command) -> Res<()> {
    match cmd {
        Command::Enumerate(a) => enumerate(a),
        Command::Count(a) => count(a),
        Command::Map(a) => map(a),
        Command::Braid(a) => braid_cmd(a),
        Command::Stats(a) => stats(a),
        Command::Verify(a) => verify_cmd(a),
        Command::Render(a) => render_cmd(a),
    }
}

fn write_out(out: &Output, text: &str) -> Res<()> {
    match &out.output {
        Some(p) => fs::write(p, text)?,
        None => stdio::stdout().lock().write_all(text.as_bytes())?,
    }
    Ok(())
}

fn read_input(input: &Input) -> Res<String> {
    let Some(src) = &input.input else {
        return usage("--input is required");
    };
    if src == "-" {
        let mut s = String::new();
        stdio::stdin().read_to_string(&mut s)?;
        return Ok(s);
    }
    if src.trim_start().starts_with('{') {
        return Ok(src.clone());
    }
    Ok(fs::read_to_string(src)?)
}

fn default_k(family: FamilyArg, n: usize, soft: bool) -> usize {
    match family {
        FamilyArg::Tube | FamilyArg::Diagram if !soft => n.saturating_sub(1),
        _ => n,
    }
}

/// Records of a family, in enumeration order.
fn records(family: FamilyArg, n: usize, k: Option<usize>, signed: bool, soft: bool, augmented: bool) -> Res<Vec<String>> {
    if n == 0 {
        return usage("--n must be positive");
    }
    let k = k.unwrap_or_else(|| default_k(family, n, soft));
    let shifted_only = |flag: bool, what: &str| if flag { usage(format!("--{what} does not apply to this family")) } else { Ok(()) };
    Ok(match family {
        FamilyArg::An => {
            shifted_only(signed, "signed")?;
            let cat = CatData::type_a(n)?;
            let seqs = cat.enumerate_sequences(k)?;
            seqs.map(|s| io::to_line(&io::modules_to_json(&s.iter().map(|&x| Signed::plain(cat.module(x))).collect::<Vec<_>>(), n, false)))
                .collect()
        }
        FamilyArg::Cn => {
            let cat = cn_cat(n)?;
            let line = |s: &[Signed<usize>]| {
                io::to_line(&io::modules_to_json(&s.iter().map(|x| Signed { obj: cat.module(x.obj), shifted: x.shifted }).collect::<Vec<_>>(), n, signed))
            };
            if signed {
                cat.signed_sequences(k)?.map(|s| line(&s)).collect()
            } else {
                cat.enumerate_sequences(k)?.map(|s| line(&s.into_iter().map(Signed::plain).collect::<Vec<_>>())).collect()
            }
        }
        FamilyArg::Tube => {
            if signed && soft {
                return usage("--signed and --soft are exclusive");
            }
            if signed {
                verify::signed_tube_sequences(n, k)?.iter().map(|s| io::to_line(&io::tube_to_json(s, n, true))).collect()
            } else {
                tube::enumerate_tube_sequences(n, k, soft)?
                    .map(|s| io::to_line(&io::tube_to_json(&s.into_iter().map(Signed::plain).collect::<Vec<_>>(), n, false)))
                    .collect()
            }
        }
        FamilyArg::Tree => {
            shifted_only(signed, "signed")?;
            if augmented {
                forest::enumerate_augmented_trees(n).map(|t| io::to_line(&io::augmented_tree_to_json(&t))).collect()
            } else {
                forest::enumerate_trees(n).map(|t| io::to_line(&io::tree_to_json(&t))).collect()
            }
        }
        FamilyArg::Forest => {
            shifted_only(signed, "signed")?;
            if augmented {
                forest::enumerate_augmented_forests(n).map(|f| io::to_line(&io::augmented_forest_to_json(&f))).collect()
            } else {
                forest::enumerate_forests(n).map(|f| io::to_line(&io::forest_to_json(&f))).collect()
            }
        }
        FamilyArg::Diagram => {
            shifted_only(signed, "signed")?;
            let mode = if soft { Mode::WithLoops } else { Mode::ChordsOnly };
            chord::enumerate_sequences(n, k, mode)?.map(|d| io::to_line(&io::diagram_to_json(&d))).collect()
        }
        FamilyArg::Pointed => {
            shifted_only(signed, "signed")?;
            chord::enumerate_pointed(n).map(|d| io::to_line(&io::diagram_to_json(&d))).collect()
        }
    })
}

fn enumerate(a: EnumerateArgs) -> Res<()> {
    let mut recs = records(a.family, a.n, a.k, a.signed, a.soft, a.augmented)?;
    match (a.seed, a.limit) {
        (Some(seed), Some(limit)) => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let mut picks = sample(&mut rng, recs.len(), limit.min(recs.len())).into_vec();
            picks.sort_unstable();
            recs = picks.into_iter().map(|p| std::mem::take(&mut recs[p])).collect();
        }
        (Some(_), None) => return usage("--seed needs --limit"),
        (None, Some(limit)) => recs.truncate(limit),
        (None, None) => {}
    }
    let mut text = String::new();
    for r in recs {
        text.push_str(&r);
        text.push('\n');
    }
    write_out(&a.out, &text)
}

fn count(a: CountArgs) -> Res<()> {
    let line = if let Some(kind) = &a.kind {
        let kind = FormulaKind::parse(kind)?;
        let value = count_formula(kind, a.n, a.k)?;
        serde_json::json!({"kind": kind.name(), "n": a.n, "k": a.k, "value": value.to_string()})
    } else {
        let Some(family) = a.family else {
            return usage("give --kind or --family");
        };
        let k = a.k.unwrap_or_else(|| default_k(family, a.n, a.soft));
        let total = records(family, a.n, Some(k), a.signed, a.soft, a.augmented)?.len();
        serde_json::json!({"family": format!("{family:?}").to_lowercase(), "n": a.n, "k": k, "count": total})
    };
    write_out(&Output { output: None }, &format!("{line}\n"))
}

fn map(a: MapArgs) -> Res<()> {
    let text = read_input(&a.input)?;
    let obj = route::parse(a.from, &text)?;
    let path = route::route(a.from, a.to)?;
    let out = route::apply(&path, obj.clone(), a.root)?;
    if a.round_trip {
        let back = route::route(a.to, a.from)?;
        let again = route::apply(&back, out.clone(), a.root)?;
        if again != obj {
            return Err(Fail::Verification(format!(
                "round trip changed {} into {}",
                route::render(a.from, &obj),
                route::render(a.from, &again)
            )));
        }
    }
    write_out(&a.out, &format!("{}\n", route::render(a.to, &out)))
}

fn braid_cmd(a: BraidArgs) -> Res<()> {
    let word: BraidWord = a.word.parse()?;
    if a.input.input.is_none() {
        let Some(n) = a.n else {
            return usage("give --input or --n");
        };
        let reports = match (a.family, a.augmented) {
            (FamilyArg::Tree, false) => braid::verify_relations("trees", n, &forest::enumerate_trees(n).collect::<Vec<_>>())?,
            (FamilyArg::Tree, true) => braid::verify_relations("augmented trees", n, &forest::enumerate_augmented_trees(n).collect::<Vec<_>>())?,
            (FamilyArg::Forest, _) => braid::verify_relations("forests", n, &forest::enumerate_forests(n).collect::<Vec<_>>())?,
            (FamilyArg::Pointed, _) => braid::verify_relations("pointed diagrams", n, &chord::enumerate_pointed(n).collect::<Vec<_>>())?,
            (FamilyArg::Cn, _) => {
                let cat = cn_cat(n)?;
                let seqs: Vec<bijections::CnSequence> = cat.enumerate_sequences(n)?.map(|items| bijections::CnSequence { n, items }).collect();
                braid::verify_relations("sequences of type C", n, &seqs)?
            }
            _ => return usage("braid carriers are tree, forest, pointed and cn"),
        };
        let ok = reports.iter().all(|r| r.status);
        write_out(&a.out, &format!("{}\n", serde_json::to_string_pretty(&reports).expect("reports serialize")))?;
        return if ok { Ok(()) } else { Err(Fail::Verification("braid relation".into())) };
    }
    let text = read_input(&a.input)?;
    let line = match a.family {
        FamilyArg::Tree => {
            let j: io::TreeJson = io::parse(&text)?;
            if a.augmented || j.epsilon.is_some() {
                let t: AugmentedTree = io::augmented_tree_from_json(&j)?;
                io::to_line(&io::augmented_tree_to_json(&act_word(&word, &t)?))
            } else {
                io::to_line(&io::tree_to_json(&act_word(&word, &io::tree_from_json(&j)?)?))
            }
        }
        FamilyArg::Forest => {
            let f: RootedForest = io::forest_from_json(&io::parse(&text)?)?;
            io::to_line(&io::forest_to_json(&act_word(&word, &f)?))
        }
        FamilyArg::Pointed => {
            let d = io::diagram_from_json(&io::parse(&text)?)?;
            if !d.is_pointed() {
                return usage(format!("{d} is not a pointed diagram"));
            }
            io::to_line(&io::diagram_to_json(&act_word(&word, &d)?))
        }
        FamilyArg::Cn => {
            let obj = route::parse(Kind::CnSeq, &text)?;
            let route::Obj::Cn(n, seq) = obj else { unreachable!("parsed as cn-seq") };
            if seq.len() != n {
                return usage("the braid group acts on complete sequences");
            }
            let cat = cn_cat(n)?;
            let items = seq.iter().map(|s| cat.index_of(s.obj).expect("in range")).collect();
            let moved = act_word(&word, &bijections::CnSequence { n, items })?;
            let mods: Vec<_> = moved.items.iter().map(|&x| Signed::plain(cat.module(x))).collect();
            io::to_line(&io::modules_to_json(&mods, n, false))
        }
        _ => return usage("braid carriers are tree, forest, pointed and cn"),
    };
    write_out(&a.out, &format!("{line}\n"))
}

fn stats(a: StatsArgs) -> Res<()> {
    let family = match a.family {
        FamilyArg::Cn => Family::C,
        FamilyArg::Tube => Family::W,
        _ => return usage("stats covers cn and tube"),
    };
    let k = a.k.unwrap_or(if family == Family::W { a.n.saturating_sub(1) } else { a.n });
    let prop = if a.injective { Property::Injective } else { Property::Projective };
    let summary = counting::relproj_distribution(family, a.n, k, prop)?.summary();
    let text = match a.format {
        Format::Json => format!("{}\n", serde_json::to_string_pretty(&summary).expect("summary serializes")),
        Format::Text => {
            let mut s = format!("total {}\n", summary.total);
            for m in &summary.marginals {
                s.push_str(&format!("position {}: {} ({})\n", m.position, m.count, m.probability));
            }
            s.push_str(&format!("independent {}\n", summary.independent));
            s
        }
        _ => return usage("stats prints json or text"),
    };
    write_out(&a.out, &text)
}

fn verify_cmd(a: VerifyArgs) -> Res<()> {
    let suites: Vec<Suite> = Suite::parse_list(&a.suite)?;
    let bounds = match a.n_max {
        Some(0) => return usage("--n-max must be positive"),
        Some(n) => Bounds::uniform(n),
        None => Bounds::default(),
    };
    let report = verify::run(&suites, bounds)?;
    write_out(&a.out, &format!("{}\n", serde_json::to_string_pretty(&report).expect("report serializes")))?;
    match report.first_failure() {
        None => Ok(()),
        Some(c) => Err(Fail::Verification(serde_json::to_string(c).expect("check serializes"))),
    }
}

fn render_cmd(a: RenderArgs) -> Res<()> {
    let text = read_input(&a.input)?;
    let doc = match (a.from, a.format) {
        (Kind::Diagram, Format::Svg) => {
            let d = io::diagram_from_json(&io::parse(&text)?)?;
            if !chord::is_valid_sequence(&d) {
                return usage(format!("{d} is not a noncrossing sequence"));
            }
            render::diagram_svg(&d)
        }
        (Kind::Tree, f @ (Format::Svg | Format::Dot)) => {
            let j: io::TreeJson = io::parse(&text)?;
            let t = io::tree_from_json(&j)?;
            let caption = j.epsilon.map(|e| format!("epsilon = {}", e.rem_euclid(j.n as i64))).unwrap_or_default();
            let parents = t.forest().parents();
            if f == Format::Svg { render::forest_svg(parents, &caption) } else { render::forest_dot(parents, &caption) }
        }
        (Kind::Forest, f @ (Format::Svg | Format::Dot)) => {
            let j: io::ForestJson = io::parse(&text)?;
            let (parents, caption) = if j.epsilon_map.is_some() {
                let f = io::augmented_forest_from_json(&j)?;
                let map: String = f.epsilon_map().iter().map(|e| e.to_string()).collect::<Vec<_>>().join(",");
                (f.forest.parents().to_vec(), format!("epsilon = {map}"))
            } else {
                (io::forest_from_json(&j)?.parents().to_vec(), String::new())
            };
            if f == Format::Svg { render::forest_svg(&parents, &caption) } else { render::forest_dot(&parents, &caption) }
        }
        (k, f) => return usage(format!("cannot render {k} as {f:?}")),
    };
    write_out(&a.out, &doc)
}
