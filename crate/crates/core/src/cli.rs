//! The `rw` command line. Everything lives here so the binary stays a
//! one-liner and tests can drive commands in-process.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};

use crate::colorings::{Color, Coloring, ColoringSpec};
use crate::conslen::{boundary_sets, consecutive_length, maximal_decomposition, BoundarySet};
use crate::error::{Error, Result};
use crate::index::{FactorIndex, Membership};
use crate::props::{run_suite, suite_description, suite_names, SuiteResult};
use crate::ramsey::{
    build_periodic_super_mono, build_suffix_chain, find_finite_sums_mono, subshift_super_mono, IPWitness,
    PeriodicConstruction, SearchOutcome, SubshiftWitness,
};
use crate::verifier::{
    check_monochromatic_factorisation, is_super_mono_prefix, probe_with, proof_trace, Constraints,
    FactorisationCandidate, MonoVerdict, ProbeParams, ProofTrace, SearchReport, Theorem, TraceOutcome,
};
use crate::words::{Alphabet, Word, WordSource, ZiminDefinition};
use crate::zimin::{concat_canonical, concat_is_factor, lift_w, parse_factor, suffix_test, CanonicalFactor, FinSet};

#[derive(Parser, Debug)]
#[command(name = "rw", version, about = "Factorisations, colorings and first occurrences in infinite words")]
pub struct RunConfig {
    /// Index window (letters of the source prefix that are indexed).
    #[arg(long, global = true, default_value_t = 4096)]
    pub window: usize,
    /// Largest Zimin letter index accepted.
    #[arg(long, global = true, default_value_t = 64)]
    pub kmax: u32,
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Also write the JSON report here.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Print a slice of a word.
    Gen(GenArgs),
    /// First occurrence, consecutive length and boundary sets of a factor.
    Analyze(AnalyzeArgs),
    /// Canonical forms of Zimin factors.
    #[command(subcommand)]
    Zimin(ZiminCmd),
    /// Color a word.
    Color(ColorArgs),
    /// Monochromatic constructions.
    #[command(subcommand)]
    Ramsey(RamseyCmd),
    /// Bounded searches and proof replays.
    #[command(subcommand)]
    Verify(VerifyCmd),
    /// Run invariant suites.
    Props(PropsArgs),
}

#[derive(Args, Debug)]
pub struct GenArgs {
    /// zimin[:1|2|3], pd, squarefree, periodic:<u>:<v>, file:<path>[:cycle=n], with optional @offset
    #[arg(long, default_value = "zimin")]
    pub word: String,
    /// Zimin definition (1, 2 or 3).
    #[arg(long)]
    pub def: Option<u8>,
    #[arg(short = 'n', long = "len")]
    pub n: usize,
    #[arg(long, default_value_t = 0)]
    pub at: usize,
}

#[derive(Args, Debug)]
pub struct AnalyzeArgs {
    #[arg(long, default_value = "zimin")]
    pub word: String,
    /// Take the factor starting here in the word...
    #[arg(long, requires = "len", conflicts_with = "factor")]
    pub at: Option<usize>,
    #[arg(long)]
    pub len: Option<usize>,
    /// ...or give it literally.
    #[arg(long)]
    pub factor: Option<String>,
    #[arg(long)]
    pub conslen: bool,
    /// Also compute lambda+-, rho+-.
    #[arg(long)]
    pub boundary: bool,
}

#[derive(Subcommand, Debug)]
pub enum ZiminCmd {
    /// Canonical triple of a factor of Z.
    Parse { word: String },
    /// `build {1,3}` gives u_A; `build {1} 3 {2}` gives u_A x_k v_B.
    Build {
        #[arg(num_args = 1..=3, required = true)]
        spec: Vec<String>,
    },
    /// Is w1 w2 a factor of Z, and its canonical triple.
    Concat { left: String, right: String },
    /// Is w1 a suffix of w2 (canonical test, needs k(w1) < k(w2)).
    Suffix { left: String, right: String },
    /// The first Zimin preimage of a period-doubling factor.
    Lift { word: String },
}

#[derive(Args, Debug)]
pub struct ColorArgs {
    /// Short form (zimin_cz, squarefree3:1024, nf:constant, ...) or JSON.
    #[arg(long)]
    pub spec: String,
    #[arg(long, default_value = "zimin")]
    pub word: String,
    pub factor: String,
}

#[derive(Subcommand, Debug)]
pub enum RamseyCmd {
    /// Finite-sums set in [1, n] monochromatic for an integer coloring.
    Ip {
        /// parity, mod:<m>, constant, or an explicit color string such as 0110...
        #[arg(long, default_value = "parity")]
        coloring: String,
        #[arg(long, default_value_t = 2)]
        r: usize,
        #[arg(long, default_value_t = 9)]
        n: u64,
    },
    /// Powers of the period of an ultimately periodic word.
    Periodic {
        #[arg(long)]
        word: String,
        #[arg(long)]
        spec: String,
        #[arg(long, default_value_t = 2)]
        r: usize,
        #[arg(long, default_value_t = 32)]
        n: u64,
    },
    /// Blocks of a suffix chain.
    Subshift {
        #[arg(long, default_value = "zimin")]
        word: String,
        #[arg(long)]
        spec: String,
        /// First chain word; defaults to the first letter.
        #[arg(long)]
        u1: Option<String>,
        #[arg(long, default_value_t = 6)]
        depth: usize,
        #[arg(long, default_value_t = 2)]
        r: usize,
    },
}

#[derive(Args, Debug)]
pub struct CandidateArgs {
    #[arg(long, default_value = "zimin")]
    pub word: String,
    #[arg(long)]
    pub spec: String,
    /// Suffix offset k: the candidate factorises T^k(x).
    #[arg(long, default_value_t = 0)]
    pub at: usize,
    /// Ends of the parts, e.g. 1,3,7.
    #[arg(long, value_delimiter = ',', required = true)]
    pub cuts: Vec<usize>,
    /// Comma list of consecutive, suffix_property, factor_closed.
    #[arg(long, default_value = "")]
    pub constraints: String,
}

#[derive(Subcommand, Debug)]
pub enum VerifyCmd {
    /// Depth-first refutation search over cut points.
    Probe {
        #[arg(long, default_value = "zimin")]
        word: String,
        #[arg(long)]
        spec: String,
        #[arg(long, default_value_t = 0)]
        k_min: usize,
        /// Largest suffix offset probed (not the letter cap).
        #[arg(long, default_value_t = 0)]
        k_max: usize,
        #[arg(long, default_value_t = 3)]
        m_max: usize,
        #[arg(long, default_value_t = 64)]
        len_max: usize,
        #[arg(long, default_value = "")]
        constraints: String,
        #[arg(long, default_value_t = 1000)]
        list_limit: usize,
    },
    /// Replay the forced steps of an impossibility argument.
    Trace {
        #[arg(long)]
        theorem: String,
        #[command(flatten)]
        cand: CandidateArgs,
    },
    /// Plain and subset-closed monochromatic checks.
    Check {
        #[command(flatten)]
        cand: CandidateArgs,
    },
}

#[derive(Args, Debug)]
pub struct PropsArgs {
    /// Suite to run; repeatable. Without it every suite runs.
    #[arg(long)]
    pub suite: Vec<String>,
    #[arg(long)]
    pub list: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GenReport {
    pub source: String,
    pub start: usize,
    pub word: Word,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AnalyzeReport {
    pub source: String,
    pub factor: Word,
    pub first_occurrence: usize,
    pub end: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub consecutive_length: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cuts: Option<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub decomposition: Option<Vec<Word>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub boundary: Option<BTreeMap<String, Vec<Word>>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "op", rename_all = "snake_case")]
pub enum ZiminReport {
    Parse { word: Word, canonical: CanonicalFactor },
    Build { canonical: CanonicalFactor, word: Word },
    Concat { left: CanonicalFactor, right: CanonicalFactor, is_factor: bool, product: Option<CanonicalFactor> },
    Suffix { left: CanonicalFactor, right: CanonicalFactor, is_suffix: bool },
    Lift { word: Word, first_occurrence: usize, lifted: Word, canonical: CanonicalFactor },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ColorReport {
    pub source: String,
    pub spec: ColoringSpec,
    pub factor: Word,
    pub is_factor: Option<bool>,
    pub color: Color,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "construction", rename_all = "snake_case")]
pub enum RamseyReport {
    Ip { coloring: String, r: usize, n: u64, result: SearchOutcome<IPWitness> },
    Periodic { source: String, spec: ColoringSpec, r: usize, n: u64, result: SearchOutcome<PeriodicConstruction> },
    Subshift { source: String, spec: ColoringSpec, r: usize, chain: Vec<Word>, result: SearchOutcome<SubshiftWitness> },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckReport {
    pub source: String,
    pub spec: ColoringSpec,
    pub k: usize,
    pub parts: Vec<Word>,
    pub violations: Vec<String>,
    pub monochromatic: bool,
    pub super_monochromatic: MonoVerdict,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PropsReport {
    pub seed: u64,
    pub suites: Vec<SuiteResult>,
}

/// What a command produced: the text and JSON renderings and whether the
/// property in question held.
pub struct Outcome {
    pub text: String,
    pub json: String,
    pub ok: bool,
}

fn outcome<T: Serialize>(report: &T, text: String, ok: bool) -> Result<Outcome> {
    let json = serde_json::to_string_pretty(report).map_err(|e| Error::Io(e.to_string()))?;
    Ok(Outcome { text, json, ok })
}

fn word_source(s: &str, kmax: u32) -> Result<WordSource> {
    Ok(s.parse::<WordSource>()?.with_kmax(kmax))
}

fn zimin_word(s: &str, kmax: u32) -> Result<Word> {
    let w = Word::parse_as(s, Alphabet::Zimin)?;
    if let Some(k) = w.max_letter().filter(|&k| k > kmax) {
        return Err(Error::CapExceeded(format!("letter x{k} is beyond --kmax {kmax}")));
    }
    Ok(w)
}

/// Runs one parsed command.
pub fn execute(cfg: &RunConfig) -> Result<Outcome> {
    match &cfg.command {
        Command::Gen(a) => gen(cfg, a),
        Command::Analyze(a) => analyze(cfg, a),
        Command::Zimin(z) => zimin(cfg, z),
        Command::Color(a) => color(cfg, a),
        Command::Ramsey(r) => ramsey(cfg, r),
        Command::Verify(v) => verify(cfg, v),
        Command::Props(p) => props(cfg, p),
    }
}

fn gen(cfg: &RunConfig, a: &GenArgs) -> Result<Outcome> {
    let mut src = word_source(&a.word, cfg.kmax)?;
    if let Some(d) = a.def {
        if !src.is_zimin() {
            return Err(Error::Parse("--def only applies to the Zimin word".into()));
        }
        src = WordSource::zimin(ZiminDefinition::from_id(d)?).with_kmax(cfg.kmax).suffix_view(src.offset());
    }
    let word = src.suffix_view(a.at).prefix(a.n)?;
    let text = word.to_string();
    outcome(&GenReport { source: src.to_string(), start: a.at, word }, text, true)
}

fn analyze(cfg: &RunConfig, a: &AnalyzeArgs) -> Result<Outcome> {
    let src = word_source(&a.word, cfg.kmax)?;
    let factor = match (&a.factor, a.at, a.len) {
        (Some(f), _, _) => Word::parse_as(f, src.alphabet())?,
        (None, Some(at), Some(len)) => src.suffix_view(at).prefix(len)?,
        _ => return Err(Error::Parse("give --factor, or --at with --len".into())),
    };
    let window = cfg.window.max(a.at.unwrap_or(0) + factor.len());
    let idx = FactorIndex::build(&src, window)?;
    let first = idx.first_occurrence(&factor)?;
    let mut report = AnalyzeReport {
        source: src.to_string(),
        factor: factor.clone(),
        first_occurrence: first,
        end: first + factor.len(),
        consecutive_length: None,
        cuts: None,
        decomposition: None,
        boundary: None,
    };
    let mut text = format!("factor {factor}\nA={} B={}", report.first_occurrence, report.end);
    if a.conslen {
        let l = consecutive_length(&idx, &factor)?;
        let d = maximal_decomposition(&idx, &factor)?;
        write!(text, "\nL={l} cuts={:?} {d}", d.cuts).ok();
        report.consecutive_length = Some(l);
        report.cuts = Some(d.cuts.clone());
        report.decomposition = Some(d.chunks());
    }
    if a.boundary {
        let mut map = BTreeMap::new();
        for which in BoundarySet::ALL {
            let set: Vec<Word> = boundary_sets(&idx, &factor, which)?.into_iter().collect();
            let shown: Vec<String> = set.iter().map(|w| format!("[{w}]")).collect();
            write!(text, "\n{which} = {{{}}}", shown.join(", ")).ok();
            map.insert(which.to_string(), set);
        }
        report.boundary = Some(map);
    }
    outcome(&report, text, true)
}

fn zimin(cfg: &RunConfig, z: &ZiminCmd) -> Result<Outcome> {
    let (report, text, ok) = match z {
        ZiminCmd::Parse { word } => {
            let word = zimin_word(word, cfg.kmax)?;
            let canonical = parse_factor(&word)?;
            let text = format!("{canonical}");
            (ZiminReport::Parse { word, canonical }, text, true)
        }
        ZiminCmd::Build { spec } => {
            let canonical = match &spec[..] {
                [a] => CanonicalFactor::of_u(a.parse()?)?,
                [a, k, b] => {
                    let k: u32 = k.parse().map_err(|_| Error::Parse(format!("bad letter index {k:?}")))?;
                    CanonicalFactor::new(a.parse()?, k, b.parse()?)?
                }
                _ => return Err(Error::Parse("build takes A, or A k B".into())),
            };
            if canonical.k() > cfg.kmax {
                return Err(Error::CapExceeded(format!("x{} is beyond --kmax {}", canonical.k(), cfg.kmax)));
            }
            let word = canonical.build()?;
            let text = word.to_string();
            (ZiminReport::Build { canonical, word }, text, true)
        }
        ZiminCmd::Concat { left, right } => {
            let l = parse_factor(&zimin_word(left, cfg.kmax)?)?;
            let r = parse_factor(&zimin_word(right, cfg.kmax)?)?;
            let is_factor = concat_is_factor(&l, &r)?;
            let product = if is_factor { Some(concat_canonical(&l, &r)?) } else { None };
            let text = match product {
                Some(p) => format!("factor: yes {p}"),
                None => "factor: no".to_string(),
            };
            (ZiminReport::Concat { left: l, right: r, is_factor, product }, text, is_factor)
        }
        ZiminCmd::Suffix { left, right } => {
            let l = parse_factor(&zimin_word(left, cfg.kmax)?)?;
            let r = parse_factor(&zimin_word(right, cfg.kmax)?)?;
            let is_suffix = suffix_test(&l, &r)?;
            let text = format!("suffix: {}", if is_suffix { "yes" } else { "no" });
            (ZiminReport::Suffix { left: l, right: r, is_suffix }, text, is_suffix)
        }
        ZiminCmd::Lift { word } => {
            let u = Word::parse_as(word, Alphabet::Binary)?;
            let idx = FactorIndex::build(&WordSource::period_doubling(), cfg.window.max(u.len()))?;
            let canonical = lift_w(&u, &idx)?;
            let lifted = canonical.build()?;
            let first = idx.first_occurrence(&u)?;
            let text = format!("A={first} W={lifted} {canonical}");
            (ZiminReport::Lift { word: u, first_occurrence: first, lifted, canonical }, text, true)
        }
    };
    outcome(&report, text, ok)
}

fn color(cfg: &RunConfig, a: &ColorArgs) -> Result<Outcome> {
    let src = word_source(&a.word, cfg.kmax)?;
    let spec: ColoringSpec = a.spec.parse()?;
    let factor = Word::parse_as(&a.factor, src.alphabet())?;
    let idx = FactorIndex::build(&src, cfg.window.max(spec.required_window()))?;
    let color = spec.color(&idx, &factor)?;
    let is_factor = match idx.is_factor(&factor) {
        Membership::Yes => Some(true),
        Membership::No => Some(false),
        Membership::UnknownBeyondWindow => None,
    };
    let text = color.to_string();
    outcome(&ColorReport { source: src.to_string(), spec, factor, is_factor, color }, text, true)
}

/// `parity`, `mod:<m>`, `constant`, or one digit per integer from 1.
fn integer_coloring(s: &str, n: u64) -> Result<Vec<Color>> {
    let colors: Vec<Color> = match s.split_once(':') {
        _ if s == "parity" => (1..=n).map(|i| Color::Index(i % 2)).collect(),
        _ if s == "constant" => vec![Color::Red; n as usize],
        Some(("mod", m)) => {
            let m: u64 = m.parse().ok().filter(|&m| m > 0).ok_or_else(|| Error::Parse(format!("bad modulus {m:?}")))?;
            (1..=n).map(|i| Color::Index(i % m)).collect()
        }
        _ => {
            let digits: Option<Vec<Color>> = s.chars().map(|c| c.to_digit(36).map(|d| Color::Index(d.into()))).collect();
            match digits {
                Some(d) if d.len() as u64 >= n => d,
                _ => return Err(Error::Parse(format!("coloring {s:?} needs at least {n} digits"))),
            }
        }
    };
    Ok(colors)
}

fn ramsey(cfg: &RunConfig, r: &RamseyCmd) -> Result<Outcome> {
    let (report, text, ok) = match r {
        RamseyCmd::Ip { coloring, r, n } => {
            let colors = integer_coloring(coloring, *n)?;
            let result = find_finite_sums_mono(|i| colors[i as usize - 1].clone(), *r, *n);
            let text = match &result {
                SearchOutcome::Found { witness } => {
                    format!("elements {:?} sums {:?} color {}", witness.elements, witness.sums(), witness.color)
                }
                SearchOutcome::NotFoundWithinBound { bound } => format!("not found within {bound}"),
            };
            let ok = result.is_found();
            (RamseyReport::Ip { coloring: coloring.clone(), r: *r, n: *n, result }, text, ok)
        }
        RamseyCmd::Periodic { word, spec, r, n } => {
            let src = word_source(word, cfg.kmax)?;
            let (u, v) = src
                .periodic_parts()
                .ok_or_else(|| Error::PreconditionViolated(format!("{src} is not ultimately periodic")))?;
            let (u, v) = (Word::new(src.alphabet(), u)?, Word::new(src.alphabet(), v)?);
            let spec: ColoringSpec = spec.parse()?;
            let window = cfg.window.max(spec.required_window()).max(u.len() + v.len() * 2 * *n as usize);
            let idx = FactorIndex::build(&src, window)?;
            let result = build_periodic_super_mono(&idx, &u, &v, &spec, *r, *n)?;
            let text = match &result {
                SearchOutcome::Found { witness } => {
                    let parts: Vec<String> = witness.parts.iter().map(|p| format!("[{p}]")).collect();
                    format!("offset {} exponents {:?} parts {} color {}", witness.offset, witness.exponents, parts.join(" "), witness.color)
                }
                SearchOutcome::NotFoundWithinBound { bound } => format!("not found within exponent {bound}"),
            };
            let ok = result.is_found();
            (RamseyReport::Periodic { source: src.to_string(), spec, r: *r, n: *n, result }, text, ok)
        }
        RamseyCmd::Subshift { word, spec, u1, depth, r } => {
            let src = word_source(word, cfg.kmax)?;
            let spec: ColoringSpec = spec.parse()?;
            let idx = FactorIndex::build(&src, cfg.window.max(spec.required_window()))?;
            let u1 = match u1 {
                Some(s) => Word::parse_as(s, src.alphabet())?,
                None => idx.text().slice(0..1),
            };
            let chain = build_suffix_chain(&idx, &u1, *depth)?;
            let result = subshift_super_mono(&idx, &spec, &chain, *r)?;
            let mut text = String::new();
            for (i, u) in chain.iter().enumerate() {
                writeln!(text, "u_{} = {u}", i + 1).ok();
            }
            match &result {
                SearchOutcome::Found { witness } => {
                    let blocks: Vec<String> = witness.blocks.iter().map(FinSet::to_string).collect();
                    write!(text, "blocks {} color {}", blocks.join(" < "), witness.color).ok();
                }
                SearchOutcome::NotFoundWithinBound { bound } => {
                    write!(text, "not found within chain depth {bound}").ok();
                }
            }
            let ok = result.is_found();
            (RamseyReport::Subshift { source: src.to_string(), spec, r: *r, chain, result }, text, ok)
        }
    };
    outcome(&report, text, ok)
}

fn candidate(cfg: &RunConfig, a: &CandidateArgs) -> Result<(WordSource, ColoringSpec, FactorIndex, FactorisationCandidate)> {
    let src = word_source(&a.word, cfg.kmax)?;
    let spec: ColoringSpec = a.spec.parse()?;
    let constraints: Constraints = a.constraints.parse()?;
    let last = a.cuts.iter().copied().max().unwrap_or(0);
    let idx = FactorIndex::build(&src, cfg.window.max(spec.required_window()).max(a.at + 2 * last))?;
    let cand = FactorisationCandidate::from_cuts(&idx, a.at, &a.cuts, constraints)?;
    Ok((src, spec, idx, cand))
}

fn verify(cfg: &RunConfig, v: &VerifyCmd) -> Result<Outcome> {
    match v {
        VerifyCmd::Probe { word, spec, k_min, k_max, m_max, len_max, constraints, list_limit } => {
            let src = word_source(word, cfg.kmax)?;
            let spec: ColoringSpec = spec.parse()?;
            let mut params = ProbeParams::new(&src, spec.clone(), *k_max, *m_max, *len_max)
                .with_constraints(constraints.parse()?);
            params.k_min = *k_min;
            params.window = cfg.window;
            params.list_limit = *list_limit;
            let report: SearchReport = probe_with(&params, &spec)?;
            let mut text = format!(
                "depth histogram {:?}\nmax surviving depth {}\nkills {}\nundecided {}",
                report.depth_histogram, report.max_depth, report.kills_total, report.undecided
            );
            for s in report.survivors.iter().take(10) {
                write!(text, "\nsurvivor k={} cuts={:?}", s.k, s.cuts).ok();
            }
            outcome(&report, text, true)
        }
        VerifyCmd::Trace { theorem, cand } => {
            let theorem: Theorem = theorem.parse()?;
            let (_, spec, idx, c) = candidate(cfg, cand)?;
            let trace: ProofTrace = proof_trace(theorem, &c, &spec, &idx)?;
            let mut text = String::new();
            for s in &trace.steps {
                writeln!(text, "[{}] {}  {}", if s.holds { "ok" } else { "FAIL" }, s.name, s.detail).ok();
            }
            let ok = !matches!(trace.outcome, TraceOutcome::Refuted { .. });
            match &trace.outcome {
                TraceOutcome::AllStepsHold => write!(text, "all steps hold"),
                TraceOutcome::Refuted { step } => write!(text, "refuted at: {step}"),
                TraceOutcome::SquareFound { square } => write!(text, "square found: {square}"),
                TraceOutcome::Inconclusive { reason } => write!(text, "inconclusive: {reason}"),
            }
            .ok();
            outcome(&trace, text, ok)
        }
        VerifyCmd::Check { cand } => {
            let (src, spec, idx, c) = candidate(cfg, cand)?;
            let violations = c.violations(&idx)?;
            let monochromatic = check_monochromatic_factorisation(&spec, &idx, &c)?;
            let sup = is_super_mono_prefix(&spec, &idx, &c)?;
            let mut text = format!("monochromatic: {monochromatic}\n");
            match &sup {
                MonoVerdict::Monochromatic { color } => write!(text, "super-monochromatic: yes ({color})"),
                MonoVerdict::Witness { pair: [a, b] } => write!(
                    text,
                    "super-monochromatic: no, parts {:?} [{}] is {} but parts {:?} [{}] is {}",
                    a.parts, a.word, a.color, b.parts, b.word, b.color
                ),
            }
            .ok();
            for v in &violations {
                write!(text, "\nconstraint violated: {v}").ok();
            }
            let ok = sup.is_monochromatic() && violations.is_empty();
            let report = CheckReport {
                source: src.to_string(),
                spec,
                k: c.offset,
                parts: c.parts.clone(),
                violations,
                monochromatic,
                super_monochromatic: sup,
            };
            outcome(&report, text, ok)
        }
    }
}

fn props(cfg: &RunConfig, p: &PropsArgs) -> Result<Outcome> {
    if p.list {
        let mut text = String::new();
        for n in suite_names() {
            writeln!(text, "{n:22} {}", suite_description(n).unwrap_or("")).ok();
        }
        let names: Vec<&str> = suite_names();
        return outcome(&names, text.trim_end().to_string(), true);
    }
    let names: Vec<String> =
        if p.suite.is_empty() { suite_names().into_iter().map(String::from).collect() } else { p.suite.clone() };
    let suites = names.iter().map(|n| run_suite(n, cfg.seed)).collect::<Result<Vec<_>>>()?;
    let ok = suites.iter().all(SuiteResult::ok);
    let text = suites.iter().map(ToString::to_string).collect::<Vec<_>>().join("\n");
    outcome(&PropsReport { seed: cfg.seed, suites }, text, ok)
}

fn exit_code_for(e: &Error) -> i32 {
    match e {
        Error::Parse(_) | Error::InvalidWord(_) | Error::AlphabetMismatch { .. } => 2,
        _ => 1,
    }
}

fn limit_threads() {
    if let Some(n) = std::env::var("RW_THREADS").ok().and_then(|s| s.parse::<usize>().ok()).filter(|&n| n > 0) {
        // a second call fails harmlessly when a pool already exists
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    }
}

/// Parses `args` (program name first), runs, prints, and returns the exit
/// status: 0 success, 1 refuted or failed, 2 usage error.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cfg = match RunConfig::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    limit_threads();
    match execute(&cfg) {
        Ok(o) => {
            if let Some(path) = &cfg.out {
                if let Err(e) = std::fs::write(path, &o.json) {
                    eprintln!("error[Io]: {}: {e}", path.display());
                    return 1;
                }
            }
            match cfg.format {
                Format::Text => println!("{}", o.text),
                Format::Json => println!("{}", o.json),
            }
            if o.ok {
                0
            } else {
                1
            }
        }
        Err(e) => {
            let msg = e.to_string();
            let name = e.name();
            let detail = msg.strip_prefix(name).and_then(|m| m.strip_prefix(": ")).unwrap_or(&msg);
            eprintln!("error[{name}]: {detail}");
            exit_code_for(&e)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run(args: &[&str]) -> Result<Outcome> {
        let cfg = RunConfig::try_parse_from(std::iter::once("rw").chain(args.iter().copied())).expect("parses");
        execute(&cfg)
    }

    #[test]
    fn gen_definition_three() {
        let o = run(&["gen", "--word", "zimin", "--def", "3", "-n", "8"]).unwrap();
        assert_eq!(o.text, "x1 x2 x1 x3 x1 x2 x1 x4");
    }

    #[test]
    fn analyze_conslen() {
        let o = run(&["analyze", "--word", "zimin", "--at", "0", "--len", "3", "--conslen"]).unwrap();
        assert!(o.text.contains("L=2 cuts=[1]"), "{}", o.text);
        let r: AnalyzeReport = serde_json::from_str(&o.json).unwrap();
        assert_eq!((r.consecutive_length, r.cuts), (Some(2), Some(vec![1])));
    }

    #[test]
    fn zimin_commands() {
        assert_eq!(run(&["zimin", "build", "{1,3}"]).unwrap().text, "x1 x3 x1 x2 x1");
        assert_eq!(run(&["zimin", "parse", "x1 x3 x1 x2 x1"]).unwrap().text, "({1}, 3, {1,2})");
        let c = run(&["zimin", "concat", "x1", "x2 x1"]).unwrap();
        assert!(c.ok);
        let s = run(&["zimin", "suffix", "x1", "x2 x1"]).unwrap();
        assert!(s.ok);
    }

    #[test]
    fn exit_codes() {
        assert_eq!(main_with_args(["rw", "gen", "--bogus"]), 2);
        assert_eq!(main_with_args(["rw", "gen", "--word", "nonsense", "-n", "3"]), 2);
        assert_eq!(main_with_args(["rw", "zimin", "concat", "x1", "x1"]), 1);
    }
}
