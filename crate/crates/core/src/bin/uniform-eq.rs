use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use uniform_eq::bounds::{self, BoundReport};
use uniform_eq::experiments::{self, OutputFormat, UrsStudy, Verdict};
use uniform_eq::game::{self, GameSpec, MixedProfile, VerifyMode, DEFAULT_MC_CONFIDENCE};
use uniform_eq::generators::{self, generate, Family, FamilyParams};
use uniform_eq::sampling::{self, UrsResult};
use uniform_eq::uniform::{self, SearchOutcome};
use uniform_eq::{io as game_io, rng, Error, Result};

#[derive(Parser)]
#[command(name = "uniform-eq", version, about = "k-uniform approximate Nash equilibria")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a game and write it as a game file.
    Gen(GenArgs),
    /// Enumerate k-uniform profiles until one is an ε-equilibrium.
    SolveExhaustive(SolveArgs),
    /// Draw uniform k-uniform profiles until one is an ε-equilibrium.
    Urs(UrsArgs),
    /// Check whether a mixed profile is an ε-equilibrium.
    Verify(VerifyArgs),
    /// Sample k-uniform profiles from the game's known equilibrium.
    Sample(SampleArgs),
    /// Evaluate closed-form bounds.
    Bounds(BoundsArgs),
    /// Entropy of the known equilibrium and the counting-lemma check.
    Entropy(EntropyArgs),
    /// Tail-probability sweep against 8e^{-kε²/8}/ε.
    SweepEq5(SweepArgs),
    /// Random-sampling cost against the entropy bound.
    EntropySamples(EntropySamplesArgs),
}

#[derive(Args)]
struct Output {
    /// Output file; standard output when absent.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Csv,
}

impl From<Format> for OutputFormat {
    fn from(f: Format) -> Self {
        match f {
            Format::Json => OutputFormat::Json,
            Format::Csv => OutputFormat::Csv,
        }
    }
}

#[derive(Args)]
struct GameSource {
    /// Game file.
    #[arg(long, conflicts_with = "family")]
    game: Option<PathBuf>,
    /// Generated family, e.g. matching_pennies or small_probability.
    #[arg(long)]
    family: Option<Family>,
    #[arg(long, default_value_t = 2)]
    n: usize,
    #[arg(long, default_value_t = 2)]
    m: usize,
    /// Atom cap multiplier for small-probability games.
    #[arg(long, default_value_t = 2.0)]
    c: f64,
    /// Seed for the game generator.
    #[arg(long, default_value_t = 0)]
    game_seed: u64,
}

impl GameSource {
    fn load(&self) -> Result<GameSpec> {
        match (&self.game, self.family) {
            (Some(path), _) => game_io::load_game(path),
            (None, Some(family)) => Ok(generate(family, self.params())?.game),
            (None, None) => Err(Error::InvalidParameter("pass --game or --family".into())),
        }
    }

    fn params(&self) -> FamilyParams {
        FamilyParams {
            n: self.n,
            m: self.m,
            c: self.c,
            seed: self.game_seed,
        }
    }
}

#[derive(Args)]
struct Verification {
    #[arg(long = "verify", value_enum, default_value_t = Mode::Exact)]
    mode: Mode,
    /// Monte Carlo trials; the default meets ε/4 accuracy at the confidence.
    #[arg(long)]
    mc_trials: Option<u64>,
    #[arg(long, default_value_t = DEFAULT_MC_CONFIDENCE)]
    mc_confidence: f64,
}

#[derive(Clone, Copy, ValueEnum)]
enum Mode {
    Exact,
    MonteCarlo,
    Auto,
}

impl Verification {
    fn mode(&self, game: &GameSpec, epsilon: f64, seed: u64) -> VerifyMode {
        match self.mode {
            Mode::Exact => VerifyMode::Exact,
            Mode::Auto => VerifyMode::Auto { seed },
            Mode::MonteCarlo => VerifyMode::MonteCarlo {
                trials: self
                    .mc_trials
                    .unwrap_or_else(|| game::default_mc_trials(epsilon, game.action_counts(), self.mc_confidence)),
                confidence: self.mc_confidence,
                seed,
            },
        }
    }
}

fn epsilon(s: &str) -> std::result::Result<f64, String> {
    let v: f64 = s.parse().map_err(|e| format!("{e}"))?;
    if v > 0.0 && v <= 1.0 {
        Ok(v)
    } else {
        Err(format!("epsilon must lie in (0, 1], got {v}"))
    }
}

#[derive(Args)]
struct GenArgs {
    #[command(flatten)]
    source: GameSource,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct SolveArgs {
    #[command(flatten)]
    source: GameSource,
    #[arg(long)]
    k: usize,
    #[arg(long, value_parser = epsilon)]
    epsilon: f64,
    /// Stop after this many profiles.
    #[arg(long)]
    budget: Option<u64>,
    /// Search partitioned ranges on the worker pool.
    #[arg(long)]
    parallel: bool,
    #[command(flatten)]
    output: Output,
}

#[derive(Args)]
struct UrsArgs {
    #[command(flatten)]
    source: GameSource,
    #[arg(long)]
    k: usize,
    #[arg(long, value_parser = epsilon)]
    epsilon: f64,
    #[arg(long, default_value_t = 1_000_000)]
    max_iterations: u64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[command(flatten)]
    verification: Verification,
    #[command(flatten)]
    output: Output,
}

#[derive(Args)]
struct VerifyArgs {
    #[command(flatten)]
    source: GameSource,
    /// Profile as `p,p,…;p,p,…` (one group per player); defaults to the
    /// game's known equilibrium.
    #[arg(long, conflicts_with = "profile_file")]
    profile: Option<String>,
    /// JSON file holding `[[p, …], …]`.
    #[arg(long)]
    profile_file: Option<PathBuf>,
    #[arg(long, value_parser = epsilon)]
    epsilon: f64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[command(flatten)]
    verification: Verification,
    #[command(flatten)]
    output: Output,
}

#[derive(Args)]
struct SampleArgs {
    #[command(flatten)]
    source: GameSource,
    #[arg(long)]
    k: usize,
    #[arg(long, default_value_t = 1)]
    draws: u64,
    /// When given, each draw is checked as an ε-equilibrium (exactly).
    #[arg(long, value_parser = epsilon)]
    epsilon: Option<f64>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[command(flatten)]
    output: Output,
}

#[derive(Clone, Copy, ValueEnum)]
enum BoundChoice {
    Theorem1,
    Theorem2,
    Eq5,
    Samples,
}

#[derive(Args)]
struct BoundsArgs {
    /// Bounds to evaluate; all whose inputs are present when omitted.
    #[arg(long, value_enum, value_delimiter = ',')]
    kind: Vec<BoundChoice>,
    #[arg(long)]
    n: Option<usize>,
    #[arg(long)]
    m: Option<usize>,
    #[arg(long, value_parser = epsilon)]
    epsilon: Option<f64>,
    #[arg(long)]
    k: Option<u64>,
    /// Entropy in bits; defaults to the maximum n·log2(m).
    #[arg(long)]
    entropy: Option<f64>,
    #[command(flatten)]
    output: Output,
}

#[derive(Args)]
struct EntropyArgs {
    #[command(flatten)]
    source: GameSource,
    #[command(flatten)]
    output: Output,
}

#[derive(Args)]
struct SweepArgs {
    #[command(flatten)]
    source: GameSource,
    #[arg(long, value_parser = epsilon)]
    epsilon: f64,
    /// Comma-separated values or `start:end:step` ranges, e.g. `40:160:8`.
    #[arg(long, default_value = "40:160:8")]
    k_values: String,
    #[arg(long, default_value_t = 100_000)]
    trials: u64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[command(flatten)]
    output: Output,
}

#[derive(Args)]
struct EntropySamplesArgs {
    /// Comma-separated families; `constant` and `dominant_action` are also accepted.
    #[arg(long, value_delimiter = ',', required = true)]
    families: Vec<String>,
    #[arg(long, default_value_t = 2)]
    n: usize,
    #[arg(long, default_value_t = 2)]
    m: usize,
    #[arg(long, default_value_t = 2.0)]
    c: f64,
    #[arg(long, default_value_t = 0)]
    game_seed: u64,
    #[arg(long)]
    k: u64,
    #[arg(long, value_parser = epsilon)]
    epsilon: f64,
    #[arg(long, default_value_t = 100)]
    runs: u64,
    #[arg(long, default_value_t = 1_000_000)]
    max_iterations: u64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[command(flatten)]
    verification: Verification,
    #[command(flatten)]
    output: Output,
}

fn join<T: ToString>(values: &[T]) -> String {
    values.iter().map(T::to_string).collect::<Vec<_>>().join(" ")
}

fn join_groups<T: ToString>(groups: &[Vec<T>]) -> String {
    groups.iter().map(|g| join(g)).collect::<Vec<_>>().join("|")
}

#[derive(Serialize)]
struct SearchRecord {
    k: usize,
    epsilon: f64,
    found: bool,
    profiles_checked: u64,
    max_regret: Option<f64>,
    counts: Option<String>,
    verdict: Verdict,
}

#[derive(Serialize)]
struct UrsRecord {
    k: usize,
    epsilon: f64,
    seed: u64,
    found: bool,
    iterations: u64,
    max_regret: Option<f64>,
    samples: Option<String>,
    verdict: Verdict,
}

#[derive(Serialize)]
struct VerifyRecord {
    epsilon: f64,
    mode: &'static str,
    is_equilibrium: bool,
    vacuous: bool,
    max_regret: f64,
    regrets: String,
    best_deviation: String,
    verdict: Verdict,
}

#[derive(Serialize)]
struct SampleRecord {
    draw: u64,
    k: usize,
    counts: String,
    max_regret: f64,
    is_equilibrium: Option<bool>,
    verdict: Verdict,
}

#[derive(Serialize)]
struct BoundRecord {
    kind: &'static str,
    n: Option<usize>,
    m: Option<usize>,
    epsilon: Option<f64>,
    k: Option<u64>,
    entropy_bits: Option<f64>,
    value: f64,
    log2: f64,
    exact: Option<String>,
    vacuous: bool,
    log_base: &'static str,
}

#[derive(Serialize)]
struct EntropyRecord {
    /// Empty for the whole-profile row.
    player: Option<usize>,
    entropy_bits: f64,
    max_entropy_bits: f64,
    deficit_bits: f64,
    max_atom: f64,
    lemma3_subset_size: Option<usize>,
    lemma3_premise: Option<bool>,
    lemma3_conclusion: Option<bool>,
    verdict: Verdict,
}

fn verdict(pass: bool) -> Verdict {
    if pass {
        Verdict::Pass
    } else {
        Verdict::Fail
    }
}

fn emit<T: Serialize>(records: &[T], output: &Output) -> Result<()> {
    match &output.out {
        Some(path) => {
            let mut w = BufWriter::new(File::create(path)?);
            experiments::write_records(records, output.format.into(), &mut w)?;
            w.flush()?;
        }
        None => experiments::write_records(records, output.format.into(), io::stdout().lock())?,
    }
    Ok(())
}

fn parse_k_values(text: &str) -> Result<Vec<u64>> {
    let bad = || Error::InvalidParameter(format!("bad k list {text:?}"));
    let mut out = Vec::new();
    for part in text.split(',').map(str::trim).filter(|p| !p.is_empty()) {
        let fields: Vec<u64> = part
            .split(':')
            .map(|f| f.trim().parse().map_err(|_| bad()))
            .collect::<Result<_>>()?;
        match fields[..] {
            [k] => out.push(k),
            [start, end, step] if step > 0 => out.extend((start..=end).step_by(step as usize)),
            _ => return Err(bad()),
        }
    }
    if out.is_empty() {
        return Err(bad());
    }
    Ok(out)
}

fn parse_profile(text: &str) -> Result<MixedProfile> {
    let strategies = text
        .split(';')
        .map(|group| {
            group
                .split(',')
                .map(|v| {
                    v.trim()
                        .parse::<f64>()
                        .map_err(|_| Error::InvalidParameter(format!("bad probability {v:?}")))
                })
                .collect()
        })
        .collect::<Result<_>>()?;
    MixedProfile::new(strategies)
}

fn known(game: &GameSpec) -> Result<&MixedProfile> {
    game.known_equilibrium().ok_or(Error::MissingEquilibrium)
}

/// Runs one command and returns the number of failed verdicts.
fn run(command: Command) -> Result<usize> {
    match command {
        Command::Gen(a) => {
            let game = a.source.load()?;
            let text = game_io::game_to_json(&game);
            match a.out {
                Some(path) => std::fs::write(path, text)?,
                None => io::stdout().lock().write_all(text.as_bytes())?,
            }
            Ok(0)
        }
        Command::SolveExhaustive(a) => {
            let game = a.source.load()?;
            let outcome = if a.parallel {
                uniform::exhaustive_search_parallel(&game, a.k, a.epsilon, a.budget)?
            } else {
                uniform::exhaustive_search(&game, a.k, a.epsilon, a.budget)?
            };
            let (max_regret, counts) = match &outcome {
                SearchOutcome::Found { profile, report, .. } => {
                    (Some(report.max_regret), Some(join_groups(profile.counts())))
                }
                SearchOutcome::NotFound { .. } => (None, None),
            };
            let record = SearchRecord {
                k: a.k,
                epsilon: a.epsilon,
                found: outcome.is_found(),
                profiles_checked: outcome.profiles_checked(),
                max_regret,
                counts,
                verdict: verdict(outcome.is_found()),
            };
            emit(&[&record], &a.output)?;
            Ok(usize::from(!outcome.is_found()))
        }
        Command::Urs(a) => {
            let game = a.source.load()?;
            let mode = a.verification.mode(&game, a.epsilon, rng::sub_seed(a.seed, 1));
            let outcome = sampling::urs(&game, a.k, a.epsilon, a.max_iterations, a.seed, mode)?;
            let (max_regret, samples) = match &outcome.result {
                UrsResult::Found { profile, report } => (Some(report.max_regret), Some(join_groups(profile.samples()))),
                UrsResult::Exhausted => (None, None),
            };
            let record = UrsRecord {
                k: a.k,
                epsilon: a.epsilon,
                seed: a.seed,
                found: outcome.is_found(),
                iterations: outcome.iterations,
                max_regret,
                samples,
                verdict: verdict(outcome.is_found()),
            };
            emit(&[&record], &a.output)?;
            Ok(usize::from(!outcome.is_found()))
        }
        Command::Verify(a) => {
            let game = a.source.load()?;
            let profile = match (&a.profile, &a.profile_file) {
                (Some(text), _) => parse_profile(text)?,
                (None, Some(path)) => {
                    let strategies: Vec<Vec<f64>> = serde_json::from_str(&std::fs::read_to_string(path)?)?;
                    MixedProfile::new(strategies)?
                }
                (None, None) => known(&game)?.clone(),
            };
            let mode = a.verification.mode(&game, a.epsilon, a.seed);
            let v = game::is_epsilon_equilibrium(&game, &profile, a.epsilon, mode)?;
            let record = VerifyRecord {
                epsilon: a.epsilon,
                mode: match v.report.mode {
                    game::RegretMode::Exact => "exact",
                    game::RegretMode::MonteCarlo { .. } => "monte_carlo",
                },
                is_equilibrium: v.is_equilibrium,
                vacuous: v.vacuous,
                max_regret: v.report.max_regret,
                regrets: join(&v.report.regrets),
                best_deviation: join(&v.report.best_deviation),
                verdict: verdict(v.is_equilibrium),
            };
            emit(&[&record], &a.output)?;
            Ok(usize::from(!v.is_equilibrium))
        }
        Command::Sample(a) => {
            let game = a.source.load()?;
            let x = known(&game)?;
            let factory = rng::StreamFactory::new(a.seed);
            let mut records = Vec::with_capacity(a.draws as usize);
            for t in 0..a.draws {
                let s = sampling::sample_from_mixed_with(x, a.k, &mut factory.stream(t))?;
                let counts = s.to_counts(game.action_counts());
                let report = game::regrets(&game, &counts.to_mixed(), VerifyMode::Exact)?;
                let is_eq = a.epsilon.map(|e| report.max_regret <= e + game::REGRET_TOLERANCE);
                records.push(SampleRecord {
                    draw: t,
                    k: a.k,
                    counts: join_groups(counts.counts()),
                    max_regret: report.max_regret,
                    is_equilibrium: is_eq,
                    verdict: verdict(is_eq != Some(false)),
                });
            }
            emit(&records, &a.output)?;
            Ok(records.iter().filter(|r| r.verdict.is_failure()).count())
        }
        Command::Bounds(a) => {
            let kinds = if a.kind.is_empty() {
                vec![
                    BoundChoice::Theorem1,
                    BoundChoice::Theorem2,
                    BoundChoice::Eq5,
                    BoundChoice::Samples,
                ]
            } else {
                a.kind.clone()
            };
            let explicit = !a.kind.is_empty();
            let missing = |what: &str| Error::InvalidParameter(format!("this bound needs --{what}"));
            let mut records = Vec::new();
            for kind in kinds {
                let report = match kind {
                    BoundChoice::Theorem1 | BoundChoice::Theorem2 => match (a.n, a.m, a.epsilon) {
                        (Some(n), Some(m), Some(e)) => Some(if matches!(kind, BoundChoice::Theorem1) {
                            BoundReport::theorem1_k(n, m, e)?
                        } else {
                            BoundReport::theorem2_k(n, m, e)?
                        }),
                        _ if explicit => return Err(missing("n, --m and --epsilon")),
                        _ => None,
                    },
                    BoundChoice::Eq5 => match (a.k, a.epsilon) {
                        (Some(k), Some(e)) => Some(BoundReport::eq5_tail(k, e)?),
                        _ if explicit => return Err(missing("k and --epsilon")),
                        _ => None,
                    },
                    BoundChoice::Samples => match (a.n, a.m, a.k) {
                        (Some(n), Some(m), Some(k)) => {
                            let h = a.entropy.unwrap_or_else(|| bounds::max_entropy_bits(&vec![m; n]));
                            Some(BoundReport::expected_samples(n, m, k, h)?)
                        }
                        _ if explicit => return Err(missing("n, --m and --k")),
                        _ => None,
                    },
                };
                records.extend(report.map(|r| BoundRecord {
                    kind: match r.kind {
                        bounds::BoundKind::Theorem1K => "theorem1_k",
                        bounds::BoundKind::Theorem2K => "theorem2_k",
                        bounds::BoundKind::Eq5Tail => "eq5_tail",
                        bounds::BoundKind::ExpectedSamples => "expected_samples",
                    },
                    n: r.n,
                    m: r.m,
                    epsilon: r.epsilon,
                    k: r.k,
                    entropy_bits: r.entropy_bits,
                    value: r.value.approx,
                    log2: r.value.log2,
                    exact: r.value.decimal.clone(),
                    vacuous: r.vacuous,
                    log_base: r.log_base,
                }));
            }
            if records.is_empty() {
                return Err(Error::InvalidParameter("no bound has all of its inputs".into()));
            }
            emit(&records, &a.output)?;
            Ok(0)
        }
        Command::Entropy(a) => {
            let game = a.source.load()?;
            let x = known(&game)?;
            let mut records = Vec::with_capacity(x.num_players() + 1);
            for (i, s) in x.strategies().iter().enumerate() {
                let h = bounds::distribution_entropy(s);
                let max = (s.len() as f64).log2();
                let lemma = (s.len() >= 2)
                    .then(|| bounds::lemma3_check(s, &bounds::greedy_premise_set(s)))
                    .transpose()?;
                let holds = lemma.as_ref().is_none_or(|c| !c.premise_holds || c.conclusion_holds);
                records.push(EntropyRecord {
                    player: Some(i),
                    entropy_bits: h,
                    max_entropy_bits: max,
                    deficit_bits: max - h,
                    max_atom: s.iter().copied().fold(0.0, f64::max),
                    lemma3_subset_size: lemma.as_ref().map(|c| c.subset_size),
                    lemma3_premise: lemma.as_ref().map(|c| c.premise_holds),
                    lemma3_conclusion: lemma.as_ref().map(|c| c.conclusion_holds),
                    verdict: verdict(holds),
                });
            }
            let h = bounds::shannon_entropy(x);
            let max = bounds::max_entropy_bits(game.action_counts());
            records.push(EntropyRecord {
                player: None,
                entropy_bits: h,
                max_entropy_bits: max,
                deficit_bits: bounds::entropy_deficit(x),
                max_atom: x.strategies().iter().flatten().copied().fold(0.0, f64::max),
                lemma3_subset_size: None,
                lemma3_premise: None,
                lemma3_conclusion: None,
                verdict: Verdict::Pass,
            });
            emit(&records, &a.output)?;
            Ok(records.iter().filter(|r| r.verdict.is_failure()).count())
        }
        Command::SweepEq5(a) => {
            let game = a.source.load()?;
            let k_values = parse_k_values(&a.k_values)?;
            let records = experiments::run_eq5_sweep(&game, a.epsilon, &k_values, a.trials, a.seed, None)?;
            emit(&records, &a.output)?;
            Ok(records.iter().filter(|r| r.verdict.is_failure()).count())
        }
        Command::EntropySamples(a) => {
            let params = FamilyParams {
                n: a.n,
                m: a.m,
                c: a.c,
                seed: a.game_seed,
            };
            let games = a
                .families
                .iter()
                .map(|name| {
                    let game = match name.replace('-', "_").as_str() {
                        "constant" => GameSpec::constant(vec![a.m; a.n], 0.5)?
                            .with_name("constant")
                            .with_known_equilibrium(MixedProfile::uniform(&vec![a.m; a.n]))?,
                        "dominant_action" => generators::dominant_action_game(a.m),
                        other => generate(other.parse()?, params)?.game,
                    };
                    Ok((name.clone(), game))
                })
                .collect::<Result<Vec<_>>>()?;
            let verify_mode = match games.first() {
                Some((_, g)) => a.verification.mode(g, a.epsilon, rng::sub_seed(a.seed, 1)),
                None => VerifyMode::Exact,
            };
            let study = UrsStudy {
                k: a.k,
                epsilon: a.epsilon,
                runs: a.runs,
                max_iterations: a.max_iterations,
                seed: a.seed,
                verify_mode,
            };
            let records = experiments::run_entropy_samples(&games, study)?;
            emit(&records, &a.output)?;
            Ok(records.iter().filter(|r| r.verdict.is_failure()).count())
        }
    }
}

fn configure_threads() -> Result<()> {
    if let Ok(value) = std::env::var("UNIFORM_EQ_THREADS") {
        let threads: usize = value
            .trim()
            .parse()
            .map_err(|_| Error::InvalidParameter(format!("UNIFORM_EQ_THREADS must be a count, got {value:?}")))?;
        rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build_global()
            .map_err(|e| Error::InvalidParameter(e.to_string()))?;
    }
    Ok(())
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    let result = configure_threads().and_then(|()| run(cli.command));
    match result {
        Ok(0) => ExitCode::SUCCESS,
        Ok(failures) => {
            eprintln!("{failures} verdict(s) failed");
            ExitCode::from(1)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
