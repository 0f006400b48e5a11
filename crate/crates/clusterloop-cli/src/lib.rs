//! Command-line front end for `clusterloop`.
//!
//! Output is line-oriented `key: value` text. Quivers, fences, vector
//! configurations and automorphisms are printed in their own file formats so
//! that one command's output can be piped into the next.

use std::collections::BTreeMap;
use std::error::Error;
use std::fmt;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::Value;

use clusterloop::dynamics::{self, NTClass, ReducedVerdict};
use clusterloop::fence::{BraidWord, PlabicFence};
use clusterloop::fixpoint::{self, Outcome, PositiveChartMap, SearchOptions};
use clusterloop::folding::{self, Admissibility, Foldability, GAction};
use clusterloop::grassmann::{self, VectorConfig};
use clusterloop::loops::{self, instances, ThetaReading, TnQuiverSpec};
use clusterloop::quiver::FiniteType;
use clusterloop::{ClusterAutomorphism, Order, Quiver, Seed};

#[derive(Parser, Debug)]
#[command(name = "clusterloop", about = "Cluster automorphisms from Legendrian loops")]
pub struct Cli {
    /// Emit a JSON object instead of key-value text.
    #[arg(long, global = true)]
    json: bool,
    /// Seed for randomized searches.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand, Debug)]
enum Cmd {
    /// Quiver mutation and classification.
    #[command(subcommand)]
    Quiver(QuiverCmd),
    /// Plabic fences.
    #[command(subcommand)]
    Fence(FenceCmd),
    /// Legendrian loops compiled to automorphisms.
    #[command(subcommand)]
    Loop(LoopCmd),
    /// Automorphism actions on the initial seed.
    #[command(subcommand)]
    Aut(AutCmd),
    /// Folding by finite group actions.
    #[command(subcommand)]
    Fold(FoldCmd),
    /// Vector configurations in the Grassmannian.
    #[command(subcommand)]
    Grass(GrassCmd),
    /// Fixed points on the positive part.
    #[command(subcommand)]
    Fixpoint(FixCmd),
}

#[derive(Args, Debug)]
struct Input {
    /// Input file; `-` or absent reads standard input.
    input: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
enum QuiverCmd {
    /// Mutate at the given vertices in order (labels or 0-based indices).
    Mutate {
        #[arg(long = "at", required = true, num_args = 1..)]
        at: Vec<String>,
        #[command(flatten)]
        input: Input,
    },
    /// Size of the unlabeled mutation class.
    Class {
        #[arg(long, default_value_t = 10_000, value_parser = positive)]
        max: usize,
        #[command(flatten)]
        input: Input,
    },
    /// Finite or infinite mutation type.
    Finite {
        #[command(flatten)]
        input: Input,
    },
}

#[derive(Subcommand, Debug)]
enum FenceCmd {
    /// Fence of a positive braid word such as `s1^2 s2 D3`.
    Braid {
        #[arg(long)]
        word: String,
        #[arg(long, value_parser = positive)]
        strands: usize,
    },
    /// Quiver of a fence.
    Quiver {
        #[command(flatten)]
        input: Input,
    },
    /// The DT transformation as a mutation sequence.
    Dt {
        #[command(flatten)]
        input: Input,
    },
    /// Cyclic rotation of the columns, repeated `times` times.
    Rotate {
        #[arg(long, default_value_t = 1, value_parser = positive)]
        times: usize,
        #[command(flatten)]
        input: Input,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Reading {
    Example,
    Lemma,
}

#[derive(Subcommand, Debug)]
enum LoopCmd {
    /// Satellite loop of a braid around a fixed strand, or a built-in D~ loop.
    Theta {
        #[arg(long, required_unless_present = "dtilde")]
        beta: Option<String>,
        #[arg(long, requires = "beta")]
        strands: Option<usize>,
        #[arg(long, requires = "beta")]
        strand: Option<usize>,
        #[arg(long, requires = "beta")]
        k: Option<usize>,
        #[arg(long, value_enum, default_value_t = Reading::Example)]
        reading: Reading,
        /// Built-in `D~_n` loop on the labeled fence quiver.
        #[arg(long, conflicts_with = "beta")]
        dtilde: Option<usize>,
        #[arg(long, default_value_t = 1)]
        which: usize,
    },
    /// Generator `tau_i` on the T-shaped quiver with the given tails.
    Tau {
        #[arg(long, value_delimiter = ',', required = true)]
        tails: Vec<usize>,
        #[arg(long, value_parser = positive)]
        i: usize,
    },
    /// Kalman loop on the `(k, n)` torus link.
    Rho {
        #[arg(long, value_parser = positive)]
        k: usize,
        #[arg(long, value_parser = positive)]
        n: usize,
    },
    /// Relations among generators: the T-shaped family or the D~ pair.
    Verify {
        #[arg(long, value_delimiter = ',', conflicts_with = "dtilde")]
        tails: Option<Vec<usize>>,
        #[arg(long)]
        dtilde: Option<usize>,
    },
}

#[derive(Args, Debug)]
struct AutInput {
    /// Automorphism in tuple form, overriding any `mut:` line in the input.
    #[arg(long)]
    tuple: Option<String>,
    /// Prefix added to numeric names in `--tuple`.
    #[arg(long, default_value = "v")]
    prefix: String,
    #[command(flatten)]
    input: Input,
}

#[derive(Subcommand, Debug)]
enum AutCmd {
    /// Cluster variables after applying the automorphism.
    Apply {
        #[command(flatten)]
        aut: AutInput,
    },
    /// Order of the automorphism.
    Order {
        #[arg(long, default_value_t = dynamics::DEFAULT_ORDER_BOUND, value_parser = positive)]
        bound: usize,
        #[command(flatten)]
        aut: AutInput,
    },
    /// Periodic, reducible or pseudo-Anosov candidate.
    Classify {
        #[arg(long, default_value_t = dynamics::DEFAULT_ORDER_BOUND, value_parser = positive)]
        order_bound: usize,
        #[arg(long, default_value_t = dynamics::DEFAULT_MAX_POWER, value_parser = positive)]
        max_power: usize,
        #[command(flatten)]
        aut: AutInput,
    },
    /// Cluster Dehn twist test.
    Dehn {
        #[arg(long, default_value_t = 4, value_parser = positive)]
        max_reductions: usize,
        #[arg(long, default_value_t = dynamics::DEFAULT_MAX_POWER, value_parser = positive)]
        max_power: usize,
        #[arg(long, default_value_t = 6, value_parser = positive)]
        max_exp: usize,
        #[command(flatten)]
        aut: AutInput,
    },
}

#[derive(Args, Debug)]
struct FoldInput {
    /// Group generators file, one permutation per line in cycle notation.
    #[arg(long, required_unless_present = "gen")]
    group: Option<PathBuf>,
    /// A generator in cycle notation; may be repeated.
    #[arg(long = "gen")]
    gen: Vec<String>,
    #[command(flatten)]
    input: Input,
}

#[derive(Subcommand, Debug)]
enum FoldCmd {
    /// Admissibility of the quiver for the group.
    Check {
        #[command(flatten)]
        fold: FoldInput,
    },
    /// Folded exchange matrix and symmetrizer.
    Apply {
        #[command(flatten)]
        fold: FoldInput,
    },
    /// Breadth-first search for loss of admissibility under orbit mutations.
    Explore {
        #[arg(long, default_value_t = 10_000, value_parser = positive)]
        bound: usize,
        #[command(flatten)]
        fold: FoldInput,
    },
}

#[derive(Subcommand, Debug)]
enum GrassCmd {
    /// Plücker coordinate on 1-based columns.
    Plucker {
        #[arg(long, value_delimiter = ',', required = true)]
        cols: Vec<usize>,
        #[command(flatten)]
        input: Input,
    },
    /// Cyclic shift.
    Rho {
        #[arg(long, default_value_t = 1, value_parser = positive)]
        times: usize,
        #[arg(long)]
        inverse: bool,
        #[command(flatten)]
        input: Input,
    },
    /// Braid generator `sigma_i`.
    Sigma {
        #[arg(long, value_parser = positive)]
        i: usize,
        #[command(flatten)]
        input: Input,
    },
    /// Cross ratio of four plane vectors, or triple ratio with `--planes`.
    Xratio {
        /// Vectors separated by `;`, entries by `,`.
        #[arg(long)]
        lines: String,
        /// Three covectors for the triple ratio.
        #[arg(long)]
        planes: Option<String>,
    },
}

#[derive(Args, Debug)]
struct FixInput {
    /// Laurent system `a<i> = ...`, one line per coordinate, instead of an automorphism.
    #[arg(long)]
    system: Option<PathBuf>,
    /// Built-in systems: `t36`.
    #[arg(long, conflicts_with = "system")]
    builtin: Option<String>,
    #[arg(long, default_value_t = 64, value_parser = positive)]
    starts: usize,
    #[arg(long, default_value_t = 100, value_parser = positive)]
    iters: usize,
    #[arg(long = "box", value_delimiter = ',', num_args = 2, default_values_t = [1e-3, 1e3])]
    bounds: Vec<f64>,
    #[command(flatten)]
    aut: AutInput,
}

#[derive(Subcommand, Debug)]
enum FixCmd {
    /// Multistart search for a positive fixed point.
    Find {
        #[arg(long, default_value_t = fixpoint::TOL_FOUND, value_parser = positive_f64)]
        tol: f64,
        #[command(flatten)]
        fix: FixInput,
    },
    /// Heuristic refutation: least residual over seeded starts in the box.
    Refute {
        #[arg(long, default_value_t = fixpoint::TOL_REFUTE, value_parser = positive_f64)]
        tol: f64,
        #[command(flatten)]
        fix: FixInput,
    },
}

fn positive(s: &str) -> Result<usize, String> {
    match s.parse::<usize>() {
        Ok(v) if v > 0 => Ok(v),
        _ => Err(format!("expected a positive integer, got `{s}`")),
    }
}

fn positive_f64(s: &str) -> Result<f64, String> {
    match s.parse::<f64>() {
        Ok(v) if v > 0.0 && v.is_finite() => Ok(v),
        _ => Err(format!("expected a positive number, got `{s}`")),
    }
}

/// Exit status and captured streams of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RunResult {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

#[derive(Debug)]
struct Usage(String);

impl fmt::Display for Usage {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl Error for Usage {}

/// Source of standard input text.
pub type Stdin<'a> = dyn Fn() -> String + 'a;

type Res<T> = Result<T, Box<dyn Error>>;

fn usage<T>(msg: impl Into<String>) -> Res<T> {
    Err(Box::new(Usage(msg.into())))
}

/// Ordered output fields. Block fields hold text in a file format and are
/// printed verbatim.
#[derive(Default)]
struct Report {
    fields: Vec<(String, Value, bool)>,
}

impl Report {
    fn kv(&mut self, k: &str, v: impl Into<Value>) -> &mut Self {
        self.fields.push((k.to_string(), v.into(), false));
        self
    }

    fn block(&mut self, k: &str, text: String) -> &mut Self {
        self.fields.push((k.to_string(), Value::String(text), true));
        self
    }

    fn quiver(&mut self, q: &Quiver) -> &mut Self {
        self.block("quiver", q.to_text())
    }

    fn aut(&mut self, phi: &ClusterAutomorphism) -> &mut Self {
        self.block("automorphism", phi.to_text() + "\n")
    }

    fn render(&self, json: bool) -> String {
        if json {
            let mut m = serde_json::Map::new();
            for (k, v, _) in &self.fields {
                m.insert(k.clone(), v.clone());
            }
            return serde_json::to_string_pretty(&Value::Object(m)).unwrap() + "\n";
        }
        let mut s = String::new();
        for (k, v, block) in &self.fields {
            match (block, v) {
                (true, Value::String(t)) => s += t,
                (_, Value::String(t)) => s += &format!("{k}: {t}\n"),
                _ => s += &format!("{k}: {v}\n"),
            }
        }
        s
    }
}

/// Runs the command line `args` (including the program name) with the
/// given standard input.
pub fn run<I, T>(args: I, stdin: &str) -> RunResult
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    run_with(args, &|| stdin.to_string())
}

/// Like [`run`], but standard input is only read if the command needs it.
pub fn run_with<I, T>(args: I, stdin: &Stdin) -> RunResult
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            return if code == 0 {
                RunResult { code, stdout: text, stderr: String::new() }
            } else {
                RunResult { code, stdout: String::new(), stderr: text }
            };
        }
    };
    match dispatch(&cli, stdin) {
        Ok(r) => RunResult { code: 0, stdout: r.render(cli.json), stderr: String::new() },
        Err(e) if e.is::<Usage>() => RunResult { code: 2, stdout: String::new(), stderr: format!("usage error: {e}\n") },
        Err(e) => RunResult { code: 1, stdout: String::new(), stderr: format!("error: {e}\n") },
    }
}

fn read_input(input: &Input, stdin: &Stdin) -> Res<String> {
    read_path(input.input.as_ref(), stdin)
}

fn read_path(p: Option<&PathBuf>, stdin: &Stdin) -> Res<String> {
    match p {
        Some(p) if p.as_os_str() != "-" => {
            std::fs::read_to_string(p).map_err(|e| format!("cannot read {}: {e}", p.display()).into())
        }
        _ => Ok(stdin()),
    }
}

/// Splits a bundle into its quiver block and optional automorphism line;
/// other `key: value` lines are ignored.
fn parse_bundle(text: &str) -> Res<(Quiver, Option<ClusterAutomorphism>)> {
    let mut qtext = String::new();
    let mut aut = None;
    for line in text.lines() {
        let t = line.trim_start();
        if t.starts_with("mut:") {
            aut = Some(ClusterAutomorphism::parse(t)?);
            qtext.push('\n');
        } else if t.contains(':') {
            qtext.push('\n');
        } else {
            qtext += line;
            qtext.push('\n');
        }
    }
    Ok((Quiver::parse(&qtext)?, aut))
}

fn load_aut(a: &AutInput, stdin: &Stdin) -> Res<(Quiver, ClusterAutomorphism)> {
    let (q, phi) = parse_bundle(&read_input(&a.input, stdin)?)?;
    let phi = match (&a.tuple, phi) {
        (Some(t), _) => ClusterAutomorphism::parse_tuple(t, &a.prefix)?,
        (None, Some(p)) => p,
        (None, None) => return usage("no automorphism: give a `mut:` line or --tuple"),
    };
    Ok((q, phi))
}

fn vertex(q: &Quiver, s: &str) -> Res<usize> {
    if let Ok(i) = q.index_of(s) {
        return Ok(i);
    }
    match s.parse::<usize>() {
        Ok(i) if i < q.n() => Ok(i),
        _ => Err(format!("unknown vertex `{s}`").into()),
    }
}

fn dispatch(cli: &Cli, stdin: &Stdin) -> Res<Report> {
    let mut r = Report::default();
    match &cli.cmd {
        Cmd::Quiver(c) => quiver_cmd(c, stdin, &mut r)?,
        Cmd::Fence(c) => fence_cmd(c, stdin, &mut r)?,
        Cmd::Loop(c) => loop_cmd(c, &mut r)?,
        Cmd::Aut(c) => aut_cmd(c, stdin, &mut r)?,
        Cmd::Fold(c) => fold_cmd(c, stdin, &mut r)?,
        Cmd::Grass(c) => grass_cmd(c, stdin, &mut r)?,
        Cmd::Fixpoint(c) => fix_cmd(c, cli.seed, stdin, &mut r)?,
    }
    Ok(r)
}

fn quiver_cmd(c: &QuiverCmd, stdin: &Stdin, r: &mut Report) -> Res<()> {
    match c {
        QuiverCmd::Mutate { at, input } => {
            let mut q = Quiver::parse(&read_input(input, stdin)?)?;
            for v in at {
                q = q.mutate(vertex(&q, v)?)?;
            }
            r.quiver(&q);
        }
        QuiverCmd::Class { max, input } => {
            let q = Quiver::parse(&read_input(input, stdin)?)?;
            let (class, truncated) = q.mutation_class(*max)?;
            r.kv("size", class.len()).kv("truncated", truncated);
        }
        QuiverCmd::Finite { input } => {
            let q = Quiver::parse(&read_input(input, stdin)?)?;
            match q.finite_type()? {
                FiniteType::Finite(label) => {
                    r.kv("finite", true).kv("type", label.to_string());
                }
                FiniteType::Infinite(w) => {
                    r.kv("finite", false).kv("witness_max_multiplicity", w.max_multiplicity()).block("witness", w.to_text());
                }
            }
        }
    }
    Ok(())
}

fn fence_cmd(c: &FenceCmd, stdin: &Stdin, r: &mut Report) -> Res<()> {
    let load = |input: &Input| -> Res<PlabicFence> { Ok(PlabicFence::parse(&read_input(input, stdin)?)?) };
    match c {
        FenceCmd::Braid { word, strands } => {
            let b = BraidWord::parse(word, *strands)?;
            r.block("fence", PlabicFence::from_braid(&b).to_text());
        }
        FenceCmd::Quiver { input } => {
            r.quiver(&load(input)?.to_quiver());
        }
        FenceCmd::Dt { input } => {
            let f = load(input)?;
            let dt = f.dt_sequence()?;
            r.quiver(&f.to_quiver()).aut(&dt).kv("length", dt.word().len());
        }
        FenceCmd::Rotate { times, input } => {
            let f = load(input)?;
            let (g, phi) = f.rotations(*times)?;
            r.quiver(&f.to_quiver()).aut(&phi).kv("closed", g == f);
        }
    }
    Ok(())
}

fn loop_cmd(c: &LoopCmd, r: &mut Report) -> Res<()> {
    match c {
        LoopCmd::Theta { beta, strands, strand, k, reading, dtilde, which } => {
            if let Some(n) = dtilde {
                let q = instances::dtilde_quiver(*n).ok_or("no labeling of the D~ fence quiver validates both loops")?;
                let phi = match which {
                    1 => instances::dtilde_theta1(*n),
                    2 => instances::dtilde_theta2(),
                    _ => return usage("--which must be 1 or 2"),
                };
                r.quiver(&q).aut(&phi).kv("tuple", phi.to_tuple("v"));
                return Ok(());
            }
            let (Some(beta), Some(strands), Some(strand), Some(k)) = (beta, strands, strand, k) else {
                return usage("--beta needs --strands, --strand and --k");
            };
            let b = BraidWord::parse(beta, *strands)?;
            let t = loops::theta_from_satellite(&b, *strand, *k)?;
            let rd = match reading {
                Reading::Example => ThetaReading::Example,
                Reading::Lemma => ThetaReading::Lemma,
            };
            let phi = loops::theta_sequence(&t.input, rd)?;
            r.quiver(&t.quiver)
                .aut(&phi)
                .kv("tuple", phi.to_tuple("v"))
                .kv("gammas", t.input.q_gamma.join(" "))
                .kv("row", t.input.q_i.join(" "))
                .kv("matches_traced", phi == t.traced)
                .kv("automorphism_valid", phi.is_automorphism(&t.quiver, false));
        }
        LoopCmd::Tau { tails, i } => {
            let s = TnQuiverSpec::new(tails.clone())?;
            let phi = s.tau(*i)?;
            r.quiver(&s.quiver()).aut(&phi);
        }
        LoopCmd::Rho { k, n } => {
            let (f, phi) = loops::kalman_rho(*k, *n)?;
            r.quiver(&f.to_quiver()).aut(&phi);
        }
        LoopCmd::Verify { tails, dtilde } => {
            let (seed, gens, rels): (Seed, BTreeMap<String, ClusterAutomorphism>, Vec<(String, String)>) = match (tails, dtilde) {
                (Some(t), None) => {
                    let s = TnQuiverSpec::new(t.clone())?;
                    let mut gens = BTreeMap::new();
                    let mut rels = vec![];
                    for i in 1..=t.len() {
                        gens.insert(format!("t{i}"), s.tau(i)?);
                        for j in i + 1..=t.len() {
                            rels.push((format!("t{i} t{j}"), format!("t{j} t{i}")));
                            rels.push((format!("t{i}^{}", t[i - 1]), format!("t{j}^{}", t[j - 1])));
                        }
                    }
                    (Seed::initial(&s.quiver()), gens, rels)
                }
                (None, Some(n)) => {
                    let q = instances::dtilde_quiver(*n).ok_or("no labeling of the D~ fence quiver validates both loops")?;
                    let gens = BTreeMap::from([("a".to_string(), instances::dtilde_theta1(*n)), ("b".to_string(), instances::dtilde_theta2())]);
                    (Seed::initial(&q), gens, vec![("a b".into(), "b a".into())])
                }
                _ => return usage("give exactly one of --tails or --dtilde"),
            };
            let rels: Vec<(&str, &str)> = rels.iter().map(|(a, b)| (a.as_str(), b.as_str())).collect();
            let checks = loops::verify_relations(&seed, &gens, &rels)?;
            for (name, g) in &gens {
                r.kv(&format!("generator {name}"), g.to_text());
            }
            let all = checks.iter().all(|c| c.holds);
            for c in checks {
                r.kv(&format!("{} = {}", c.lhs, c.rhs), c.holds);
            }
            r.kv("all_hold", all);
        }
    }
    Ok(())
}

fn aut_cmd(c: &AutCmd, stdin: &Stdin, r: &mut Report) -> Res<()> {
    match c {
        AutCmd::Apply { aut } => {
            let (q, phi) = load_aut(aut, stdin)?;
            let s = Seed::initial(&q).apply(&phi)?;
            r.kv("automorphism_valid", phi.is_automorphism(&q, false));
            for v in 0..q.n() {
                r.kv(&format!("var {}", q.label(v)), s.vars()[v].to_string());
            }
        }
        AutCmd::Order { bound, aut } => {
            let (q, phi) = load_aut(aut, stdin)?;
            match Seed::initial(&q).order(&phi, *bound)? {
                Order::Finite(m) => r.kv("order", m),
                Order::ExceedsBound(b) => r.kv("order", format!("> {b}")),
            };
        }
        AutCmd::Classify { order_bound, max_power, aut } => {
            let (q, phi) = load_aut(aut, stdin)?;
            let s = Seed::initial(&q);
            match dynamics::classify(&s, &phi, *order_bound, *max_power)? {
                NTClass::Periodic { order, fixed } => {
                    r.kv("kind", "periodic").kv("order", order).kv("fixed", labels(&q, &fixed));
                }
                NTClass::Reducible { reduction, verdict } => {
                    r.kv("kind", "reducible").kv("power", reduction.power).kv("fixed", labels(&q, &reduction.fixed));
                    match verdict {
                        ReducedVerdict::Infinite => r.kv("reduced_type", "infinite").kv("infinite_order", true),
                        ReducedVerdict::FiniteTypeReduced { order } => r.kv("reduced_type", "finite").kv(
                            "order",
                            match order {
                                Order::Finite(m) => m.to_string(),
                                Order::ExceedsBound(b) => format!("> {b}"),
                            },
                        ),
                    };
                    r.quiver(&reduction.quiver).aut(&reduction.induced);
                }
                NTClass::PseudoAnosovCandidate { order_bound, max_power } => {
                    r.kv("kind", "pseudo-anosov candidate").kv("order_bound", order_bound).kv("max_power", max_power);
                }
            }
        }
        AutCmd::Dehn { max_reductions, max_power, max_exp, aut } => {
            let (q, phi) = load_aut(aut, stdin)?;
            match dynamics::is_cluster_dehn_twist(&Seed::initial(&q), &phi, *max_reductions, *max_power, *max_exp)? {
                Some(w) => {
                    r.kv("dehn_twist", true).kv("k", w.k).kv("m", w.m).kv("n", w.n).quiver(&w.quiver);
                }
                None => {
                    r.kv("dehn_twist", false);
                }
            }
        }
    }
    Ok(())
}

fn labels(q: &Quiver, vs: &[usize]) -> String {
    vs.iter().map(|&v| q.label(v)).collect::<Vec<_>>().join(" ")
}

fn load_fold(f: &FoldInput, stdin: &Stdin) -> Res<(Quiver, GAction)> {
    let q = Quiver::parse(&read_input(&f.input, stdin)?)?;
    let mut text = match &f.group {
        Some(p) => read_path(Some(p), &String::new)?,
        None => String::new(),
    };
    for g in &f.gen {
        text += g;
        text.push('\n');
    }
    let g = GAction::parse(&text, &q)?;
    Ok((q, g))
}

fn fold_cmd(c: &FoldCmd, stdin: &Stdin, r: &mut Report) -> Res<()> {
    match c {
        FoldCmd::Check { fold } => {
            let (q, g) = load_fold(fold, stdin)?;
            match folding::is_admissible(&q, &g)? {
                Admissibility::Admissible => r.kv("admissible", true),
                Admissibility::Violation { condition, witness } => {
                    r.kv("admissible", false).kv("condition", condition).kv("witness", labels(&q, &witness))
                }
            };
        }
        FoldCmd::Apply { fold } => {
            let (q, g) = load_fold(fold, stdin)?;
            let f = folding::fold(&q, &g)?;
            let orbits: Vec<String> = f.orbits.iter().map(|o| format!("{{{}}}", labels(&q, o))).collect();
            r.kv("orbits", orbits.join(" ")).kv("mutable_orbits", f.n_mut);
            for (i, row) in f.bg.iter().enumerate() {
                r.kv(&format!("bg row {i}"), row.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" "));
            }
            r.kv("d", f.d.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" "))
                .kv("skew_symmetrizable", f.is_skew_symmetrizable());
        }
        FoldCmd::Explore { bound, fold } => {
            let (q, g) = load_fold(fold, stdin)?;
            match folding::globally_foldable(&q, &g, *bound)? {
                Foldability::Yes { quivers } => r.kv("globally_foldable", "yes").kv("quivers", quivers),
                Foldability::Counterexample(w) => {
                    let word: Vec<String> = w.iter().map(|&o| format!("{{{}}}", labels(&q, &g.orbits()[o]))).collect();
                    r.kv("globally_foldable", "no").kv("counterexample", word.join(" "))
                }
                Foldability::Truncated => r.kv("globally_foldable", "unknown").kv("truncated_at", *bound),
            };
        }
    }
    Ok(())
}

fn vectors(s: &str) -> Res<Vec<Vec<num_rational::BigRational>>> {
    s.split(';')
        .map(|v| {
            v.split(',')
                .map(|t| grassmann::parse_rational(t.trim()).ok_or_else(|| -> Box<dyn Error> { format!("bad rational `{}`", t.trim()).into() }))
                .collect()
        })
        .collect()
}

fn grass_cmd(c: &GrassCmd, stdin: &Stdin, r: &mut Report) -> Res<()> {
    let load = |input: &Input| -> Res<VectorConfig> { Ok(VectorConfig::parse(&read_input(input, stdin)?)?) };
    match c {
        GrassCmd::Plucker { cols, input } => {
            let cfg = load(input)?;
            if cols.iter().any(|&c| c == 0) {
                return usage("columns are 1-based");
            }
            let idx: Vec<usize> = cols.iter().map(|c| c - 1).collect();
            r.kv("plucker", cfg.plucker(&idx)?.to_string());
        }
        GrassCmd::Rho { times, inverse, input } => {
            let mut cfg = load(input)?;
            for _ in 0..*times {
                cfg = if *inverse { cfg.cyclic_shift_inv() } else { cfg.cyclic_shift() };
            }
            r.block("config", cfg.to_text());
        }
        GrassCmd::Sigma { i, input } => {
            r.block("config", load(input)?.sigma(*i)?.to_text());
        }
        GrassCmd::Xratio { lines, planes } => {
            let v = vectors(lines)?;
            match planes {
                None => {
                    if v.len() != 4 || v.iter().any(|x| x.len() != 2) {
                        return usage("cross ratio needs four vectors in the plane");
                    }
                    r.kv("cross_ratio", grassmann::cross_ratio(&v[0], &v[1], &v[2], &v[3])?.to_string());
                }
                Some(p) => {
                    let p = vectors(p)?;
                    if v.len() != 3 || p.len() != 3 || v.iter().chain(&p).any(|x| x.len() != 3) {
                        return usage("triple ratio needs three vectors and three covectors in 3-space");
                    }
                    let t = grassmann::triple_ratio([&p[0], &p[1], &p[2]], [&v[0], &v[1], &v[2]])?;
                    r.kv("triple_ratio", t.to_string());
                }
            }
        }
    }
    Ok(())
}

fn fix_cmd(c: &FixCmd, seed: u64, stdin: &Stdin, r: &mut Report) -> Res<()> {
    let (fix, tol, refute) = match c {
        FixCmd::Find { tol, fix } => (fix, *tol, false),
        FixCmd::Refute { tol, fix } => (fix, *tol, true),
    };
    let map = match (&fix.system, &fix.builtin) {
        (Some(p), _) => PositiveChartMap::parse_system(&read_path(Some(p), stdin)?)?,
        (None, Some(b)) if b == "t36" => fixpoint::t36_sigma1(),
        (None, Some(b)) => return usage(format!("unknown built-in system `{b}`")),
        (None, None) => {
            let (q, phi) = load_aut(&fix.aut, stdin)?;
            PositiveChartMap::from_automorphism(&q, &phi)?
        }
    };
    let mut opts = SearchOptions { starts: fix.starts, iters: fix.iters, lo: fix.bounds[0], hi: fix.bounds[1], seed, ..Default::default() };
    if refute {
        opts.tol_refute = tol;
    } else {
        opts.tol_found = tol;
    }
    let rep = if refute { fixpoint::refute_fixed_point(&map, &opts)? } else { fixpoint::find_fixed_point(&map, &opts)? };
    let fmt = |x: &[f64]| x.iter().map(|v| format!("{v:.12e}")).collect::<Vec<_>>().join(" ");
    match rep.outcome {
        Outcome::Found { point, residual } => {
            r.kv("outcome", "found").kv("residual", format!("{residual:.3e}")).kv("point", fmt(&point));
        }
        Outcome::RefutedHeuristically { min_residual, argmin, starts, lo, hi } => {
            r.kv("outcome", "refuted (heuristic, not a certificate)")
                .kv("min_residual", format!("{min_residual:.6e}"))
                .kv("argmin", fmt(&argmin))
                .kv("starts", starts)
                .kv("box", format!("{lo:e},{hi:e}"));
        }
        Outcome::Inconclusive { min_residual, argmin } => {
            r.kv("outcome", "inconclusive").kv("min_residual", format!("{min_residual:.6e}")).kv("argmin", fmt(&argmin));
        }
    }
    r.kv("iterations", rep.iterations).kv("seed", rep.seed);
    Ok(())
}
