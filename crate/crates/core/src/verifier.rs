//! Bounded search for super-monochromatic factorisations of suffixes, and
//! instance-level replays of the three impossibility arguments.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::colorings::{Color, Coloring, ColoringSpec};
use crate::conslen::{boundary_sets, BoundarySet};
use crate::error::{Error, Result};
use crate::index::{FactorIndex, Membership};
use crate::words::{Alphabet, Word, WordSource};
use crate::zimin::{eta, lift_w, parse_factor, CanonicalFactor, FinSet};

pub const MAX_PARTS: usize = 20;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Constraints {
    pub consecutive: bool,
    pub suffix_property: bool,
    pub factor_closed: bool,
}

impl Constraints {
    pub const NONE: Constraints = Constraints { consecutive: false, suffix_property: false, factor_closed: false };
}

impl fmt::Display for Constraints {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut names = Vec::new();
        if self.consecutive {
            names.push("consecutive");
        }
        if self.suffix_property {
            names.push("suffix_property");
        }
        if self.factor_closed {
            names.push("factor_closed");
        }
        if names.is_empty() {
            f.write_str("none")
        } else {
            f.write_str(&names.join(","))
        }
    }
}

impl FromStr for Constraints {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut c = Constraints::NONE;
        for tok in s.split(',').map(str::trim).filter(|t| !t.is_empty()) {
            match tok {
                "none" => {}
                "consecutive" => c.consecutive = true,
                "suffix_property" | "suffix" => c.suffix_property = true,
                "factor_closed" | "factors" => c.factor_closed = true,
                _ => return Err(Error::Parse(format!("unknown constraint {tok:?}"))),
            }
        }
        Ok(c)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FactorisationCandidate {
    /// `k` in `T^k(x)`, relative to the index text.
    pub offset: usize,
    pub parts: Vec<Word>,
    pub constraints: Constraints,
}

impl FactorisationCandidate {
    pub fn new(offset: usize, parts: Vec<Word>, constraints: Constraints) -> Self {
        FactorisationCandidate { offset, parts, constraints }
    }

    /// Parts cut from the index text at `offset`; `cuts` are part end points
    /// relative to `offset`, strictly increasing.
    pub fn from_cuts(idx: &FactorIndex, offset: usize, cuts: &[usize], constraints: Constraints) -> Result<Self> {
        let text = idx.text();
        let mut parts = Vec::with_capacity(cuts.len());
        let mut prev = 0;
        for &c in cuts {
            if c <= prev || offset + c > text.len() {
                return Err(Error::PreconditionViolated(format!("bad cut {c} after {prev}")));
            }
            parts.push(text.slice(offset + prev..offset + c));
            prev = c;
        }
        Ok(FactorisationCandidate { offset, parts, constraints })
    }

    pub fn cuts(&self) -> Vec<usize> {
        self.parts
            .iter()
            .scan(0, |acc, p| {
                *acc += p.len();
                Some(*acc)
            })
            .collect()
    }

    /// Invariants that fail, as readable messages (empty when all hold).
    pub fn violations(&self, idx: &FactorIndex) -> Result<Vec<String>> {
        let mut out = Vec::new();
        let total: usize = self.parts.iter().map(Word::len).sum();
        let text = idx.text();
        if self.parts.is_empty() || self.parts.iter().any(Word::is_empty) {
            out.push("parts must be nonempty".to_string());
            return Ok(out);
        }
        if self.offset + total > text.len() {
            out.push(format!("parts run past the window {}", text.len()));
        } else {
            let joined = Word::concat_all(text.alphabet(), &self.parts);
            if joined != text.slice(self.offset..self.offset + total) {
                out.push(format!("parts do not tile T^{}(x)", self.offset));
            }
        }
        if self.constraints.suffix_property {
            for n in 1..self.parts.len() {
                let head = Word::concat_all(text.alphabet(), &self.parts[..n]);
                if !head.is_suffix_of(&self.parts[n]) {
                    out.push(format!("u_1..u_{n} is not a suffix of u_{}", n + 1));
                }
            }
        }
        if self.constraints.consecutive {
            let mut expect = self.offset;
            for (i, p) in self.parts.iter().enumerate() {
                match idx.find(p.letters()) {
                    Some(a) if a == expect => {}
                    _ => out.push(format!("u_{} does not start at its slot {expect}", i + 1)),
                }
                expect += p.len();
            }
        }
        if self.constraints.factor_closed {
            for w in subset_concats(&self.parts)? {
                if idx.is_factor(&w) != Membership::Yes {
                    out.push(format!("{w} is not a factor"));
                }
            }
        }
        Ok(out)
    }
}

fn check_part_count(m: usize) -> Result<()> {
    if m == 0 {
        return Err(Error::PreconditionViolated("need at least one part".into()));
    }
    if m > MAX_PARTS {
        return Err(Error::TooManyParts(m));
    }
    Ok(())
}

/// Concatenation of the parts selected by `mask` (bit `i` is part `i + 1`).
fn concat_mask(parts: &[Word], mask: u64) -> Word {
    let alphabet = parts.first().map(Word::alphabet).unwrap_or(Alphabet::Zimin);
    Word::concat_all(alphabet, parts.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, p)| p))
}

fn mask_parts(mask: u64) -> Vec<usize> {
    (0..64).filter(|i| mask >> i & 1 == 1).map(|i| i as usize + 1).collect()
}

/// All `2^m - 1` ordered subset concatenations, in binary-counting order.
pub fn subset_concats(parts: &[Word]) -> Result<Vec<Word>> {
    check_part_count(parts.len())?;
    Ok((1u64..1 << parts.len()).map(|mask| concat_mask(parts, mask)).collect())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SubsetWord {
    /// 1-based indices of the parts used.
    pub parts: Vec<usize>,
    pub word: Word,
    pub color: Color,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum MonoVerdict {
    Monochromatic { color: Color },
    Witness { pair: [SubsetWord; 2] },
}

impl MonoVerdict {
    pub fn is_monochromatic(&self) -> bool {
        matches!(self, MonoVerdict::Monochromatic { .. })
    }
}

/// Either the common color of every subset concatenation, or the first
/// concatenation whose color differs from that of `u_1`, paired with `u_1`.
pub fn is_super_mono_prefix(
    coloring: &dyn Coloring,
    idx: &FactorIndex,
    cand: &FactorisationCandidate,
) -> Result<MonoVerdict> {
    check_part_count(cand.parts.len())?;
    let first = concat_mask(&cand.parts, 1);
    let c1 = coloring.color(idx, &first)?;
    for mask in 2u64..1 << cand.parts.len() {
        let w = concat_mask(&cand.parts, mask);
        let c = coloring.color(idx, &w)?;
        if c != c1 {
            let a = SubsetWord { parts: vec![1], word: first, color: c1 };
            let b = SubsetWord { parts: mask_parts(mask), word: w, color: c };
            return Ok(MonoVerdict::Witness { pair: [a, b] });
        }
    }
    Ok(MonoVerdict::Monochromatic { color: c1 })
}

/// All parts share one color (no subset closure).
pub fn check_monochromatic_factorisation(
    coloring: &dyn Coloring,
    idx: &FactorIndex,
    cand: &FactorisationCandidate,
) -> Result<bool> {
    check_part_count(cand.parts.len())?;
    let c1 = coloring.color(idx, &cand.parts[0])?;
    for p in &cand.parts[1..] {
        if coloring.color(idx, p)? != c1 {
            return Ok(false);
        }
    }
    Ok(true)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProbeParams {
    pub source: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub coloring: Option<ColoringSpec>,
    pub k_min: usize,
    pub k_max: usize,
    pub m_max: usize,
    pub len_max: usize,
    pub constraints: Constraints,
    pub window: usize,
    /// Cap on listed survivors and kills; totals are always exact.
    pub list_limit: usize,
}

impl ProbeParams {
    pub fn new(source: &WordSource, coloring: ColoringSpec, k_max: usize, m_max: usize, len_max: usize) -> Self {
        ProbeParams {
            source: source.to_string(),
            coloring: Some(coloring),
            k_min: 0,
            k_max,
            m_max,
            len_max,
            constraints: Constraints::NONE,
            window: 4096,
            list_limit: 1000,
        }
    }

    pub fn with_constraints(mut self, c: Constraints) -> Self {
        self.constraints = c;
        self
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SurvivorRecord {
    pub k: usize,
    pub cuts: Vec<usize>,
    pub colors: Vec<Color>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct KillRecord {
    pub k: usize,
    pub cuts: Vec<usize>,
    pub pair: [SubsetWord; 2],
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchReport {
    pub params: ProbeParams,
    /// Entry `d - 1` counts surviving branches with `d` parts.
    pub depth_histogram: Vec<u64>,
    /// Survivors at `max_depth`.
    pub survivors: Vec<SurvivorRecord>,
    pub kills: Vec<KillRecord>,
    pub kills_total: u64,
    /// Branches dropped because a color or factor verdict needed more window.
    pub undecided: u64,
    pub max_depth: usize,
    pub wall_time_ms: u64,
}

impl SearchReport {
    /// The report with the wall-time zeroed, for determinism comparisons.
    pub fn without_timing(&self) -> SearchReport {
        SearchReport { wall_time_ms: 0, ..self.clone() }
    }
}

/// Re-derives a kill witness from the index text and re-colors both words.
pub fn verify_kill(coloring: &dyn Coloring, idx: &FactorIndex, kill: &KillRecord) -> Result<bool> {
    let cand = FactorisationCandidate::from_cuts(idx, kill.k, &kill.cuts, Constraints::NONE)?;
    let mut colors = Vec::new();
    for sw in &kill.pair {
        let mask = sw.parts.iter().fold(0u64, |m, &i| m | 1 << (i - 1));
        if sw.parts.iter().any(|&i| i == 0 || i > cand.parts.len()) || concat_mask(&cand.parts, mask) != sw.word {
            return Ok(false);
        }
        let c = coloring.color(idx, &sw.word)?;
        if c != sw.color {
            return Ok(false);
        }
        colors.push(c);
    }
    Ok(colors[0] != colors[1])
}

#[derive(Default)]
struct ProbeAcc {
    histogram: Vec<u64>,
    deepest: Vec<SurvivorRecord>,
    deepest_depth: usize,
    kills: Vec<KillRecord>,
    kills_total: u64,
    undecided: u64,
}

struct ProbeRun<'a> {
    idx: &'a FactorIndex,
    coloring: &'a dyn Coloring,
    params: &'a ProbeParams,
    k: usize,
    text: &'a [u32],
    alphabet: Alphabet,
    cache: HashMap<Vec<u32>, Result<Color>>,
    acc: ProbeAcc,
}

/// Branch state: part end points, and the subset family in binary-counting
/// order (entry `mask - 1`).
struct Node {
    cuts: Vec<usize>,
    family: Vec<Vec<u32>>,
    target: Option<Color>,
    part_colors: Vec<Color>,
}

enum Extension {
    Survives(Node),
    Pruned,
    Killed(KillRecord),
    Undecided,
}

impl ProbeRun<'_> {
    fn color(&mut self, w: &[u32]) -> Result<Color> {
        if let Some(c) = self.cache.get(w) {
            return c.clone();
        }
        let word = Word::new(self.alphabet, w.to_vec())?;
        let c = self.coloring.color(self.idx, &word);
        self.cache.insert(w.to_vec(), c.clone());
        c
    }

    fn extend(&mut self, node: &Node, cut: usize) -> Extension {
        let last = node.cuts.last().copied().unwrap_or(0);
        let part = &self.text[last..cut];
        let d = node.cuts.len();
        let cons = self.params.constraints;
        if cons.consecutive && self.idx.find(part) != Some(self.k + last) {
            return Extension::Pruned;
        }
        if cons.suffix_property && d > 0 && !part.ends_with(&self.text[..last]) {
            return Extension::Pruned;
        }
        let mut fresh: Vec<Vec<u32>> = Vec::with_capacity(1 << d);
        fresh.push(part.to_vec());
        for w in &node.family {
            let mut v = w.clone();
            v.extend_from_slice(part);
            fresh.push(v);
        }
        // binary order: the new bit is the highest, so old mask M maps to M | 1 << d;
        // `fresh[0]` is mask 1 << d and `fresh[M]` is mask M | 1 << d.
        if cons.factor_closed {
            for w in &fresh {
                let word = Word::from_raw(self.alphabet, w.clone());
                match self.idx.is_factor(&word) {
                    Membership::Yes => {}
                    Membership::No => return Extension::Pruned,
                    Membership::UnknownBeyondWindow => return Extension::Undecided,
                }
            }
        }
        let mut target = node.target.clone();
        let mut part_color = None;
        for (j, w) in fresh.iter().enumerate() {
            let c = match self.color(w) {
                Ok(c) => c,
                Err(_) => return Extension::Undecided,
            };
            if j == 0 {
                part_color = Some(c.clone());
            }
            match &target {
                None => target = Some(c),
                Some(t) if *t == c => {}
                Some(t) => {
                    let mut cuts = node.cuts.clone();
                    cuts.push(cut);
                    let mask = (j as u64) | 1 << d;
                    let first = SubsetWord {
                        parts: vec![1],
                        word: Word::from_raw(self.alphabet, node.family.first().unwrap_or(w).clone()),
                        color: t.clone(),
                    };
                    let second = SubsetWord {
                        parts: mask_parts(mask),
                        word: Word::from_raw(self.alphabet, w.clone()),
                        color: c,
                    };
                    return Extension::Killed(KillRecord { k: self.k, cuts, pair: [first, second] });
                }
            }
        }
        let mut cuts = node.cuts.clone();
        cuts.push(cut);
        let mut family = node.family.clone();
        family.extend(fresh);
        let mut part_colors = node.part_colors.clone();
        part_colors.push(part_color.expect("part colored"));
        Extension::Survives(Node { cuts, family, target, part_colors })
    }

    fn dfs(&mut self, node: &Node) {
        let last = node.cuts.last().copied().unwrap_or(0);
        for cut in last + 1..=self.text.len() {
            match self.extend(node, cut) {
                Extension::Pruned => {}
                Extension::Undecided => self.acc.undecided += 1,
                Extension::Killed(k) => {
                    self.acc.kills_total += 1;
                    if self.acc.kills.len() < self.params.list_limit {
                        self.acc.kills.push(k);
                    }
                }
                Extension::Survives(child) => {
                    let depth = child.cuts.len();
                    self.acc.histogram[depth - 1] += 1;
                    if depth > self.acc.deepest_depth {
                        self.acc.deepest_depth = depth;
                        self.acc.deepest.clear();
                    }
                    if depth == self.acc.deepest_depth && self.acc.deepest.len() < self.params.list_limit {
                        self.acc.deepest.push(SurvivorRecord {
                            k: self.k,
                            cuts: child.cuts.clone(),
                            colors: child.part_colors.clone(),
                        });
                    }
                    if depth < self.params.m_max {
                        self.dfs(&child);
                    }
                }
            }
        }
    }
}

/// Depth-first enumeration of factorisations of `P_{len_max}(T^k(x))` for
/// `k` in `k_min..=k_max`, with at most `m_max` parts, pruning a branch as
/// soon as its subset family is bichromatic. Bounded evidence only.
pub fn probe_conjecture(params: &ProbeParams) -> Result<SearchReport> {
    let spec = params
        .coloring
        .clone()
        .ok_or_else(|| Error::PreconditionViolated("probe parameters carry no coloring".into()))?;
    probe_with(params, &spec)
}

/// As [`probe_conjecture`] with an arbitrary coloring.
pub fn probe_with(params: &ProbeParams, coloring: &dyn Coloring) -> Result<SearchReport> {
    let started = Instant::now();
    if params.m_max == 0 || params.len_max == 0 || params.k_min > params.k_max {
        return Err(Error::PreconditionViolated("probe bounds must be positive".into()));
    }
    if params.m_max > MAX_PARTS {
        return Err(Error::TooManyParts(params.m_max));
    }
    let source: WordSource = params.source.parse()?;
    let need = params.k_max + params.len_max;
    let required = params.coloring.as_ref().map(ColoringSpec::required_window).unwrap_or(0);
    let idx = FactorIndex::build(&source, params.window.max(need).max(required))?;
    let accs: Vec<ProbeAcc> = (params.k_min..=params.k_max)
        .into_par_iter()
        .map(|k| {
            let mut run = ProbeRun {
                idx: &idx,
                coloring,
                params,
                k,
                text: &idx.text().letters()[k..k + params.len_max],
                alphabet: idx.text().alphabet(),
                cache: HashMap::new(),
                acc: ProbeAcc { histogram: vec![0; params.m_max], ..Default::default() },
            };
            let root = Node { cuts: Vec::new(), family: Vec::new(), target: None, part_colors: Vec::new() };
            run.dfs(&root);
            run.acc
        })
        .collect();
    let mut report = SearchReport {
        params: params.clone(),
        depth_histogram: vec![0; params.m_max],
        survivors: Vec::new(),
        kills: Vec::new(),
        kills_total: 0,
        undecided: 0,
        max_depth: 0,
        wall_time_ms: 0,
    };
    report.max_depth = accs.iter().map(|a| a.deepest_depth).max().unwrap_or(0);
    for acc in accs {
        for (h, x) in report.depth_histogram.iter_mut().zip(&acc.histogram) {
            *h += x;
        }
        if acc.deepest_depth == report.max_depth {
            report.survivors.extend(acc.deepest);
        }
        report.kills.extend(acc.kills);
        report.kills_total += acc.kills_total;
        report.undecided += acc.undecided;
    }
    report.survivors.truncate(params.list_limit);
    report.kills.truncate(params.list_limit);
    report.wall_time_ms = started.elapsed().as_millis() as u64;
    Ok(report)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Theorem {
    /// The two-coloring of the Zimin word.
    T3,
    /// The lifted coloring of the period-doubling word.
    T4,
    /// The three-coloring of words without large squares.
    T5,
}

impl FromStr for Theorem {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "t3" | "3" | "zimin" => Ok(Theorem::T3),
            "t4" | "4" | "period-doubling" | "pd" => Ok(Theorem::T4),
            "t5" | "5" | "squarefree" => Ok(Theorem::T5),
            _ => Err(Error::Parse(format!("unknown theorem {s:?}"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TraceStep {
    pub name: String,
    pub holds: bool,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "outcome", rename_all = "snake_case")]
pub enum TraceOutcome {
    AllStepsHold,
    Refuted { step: String },
    SquareFound { square: Word },
    /// Every replayed step held but the candidate is too short to reach
    /// the contradiction.
    Inconclusive { reason: String },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProofTrace {
    pub theorem: Theorem,
    pub steps: Vec<TraceStep>,
    pub outcome: TraceOutcome,
}

impl ProofTrace {
    fn new(theorem: Theorem) -> Self {
        ProofTrace { theorem, steps: Vec::new(), outcome: TraceOutcome::AllStepsHold }
    }

    fn step(&mut self, name: String, holds: bool, detail: String) {
        if !holds && self.outcome == TraceOutcome::AllStepsHold {
            self.outcome = TraceOutcome::Refuted { step: name.clone() };
        }
        self.steps.push(TraceStep { name, holds, detail });
    }

    fn settle_short(mut self, m: usize) -> Self {
        if m < 3 && self.outcome == TraceOutcome::AllStepsHold {
            self.outcome = TraceOutcome::Inconclusive { reason: "the contradiction needs at least three parts".into() };
        }
        self
    }

    pub fn step_holds(&self, name: &str) -> Option<bool> {
        self.steps.iter().find(|s| s.name == name).map(|s| s.holds)
    }
}

fn hypothesis(ok: bool, what: impl Into<String>) -> Result<()> {
    if ok {
        Ok(())
    } else {
        Err(Error::HypothesisViolated(what.into()))
    }
}

/// Replays the forced facts of an impossibility argument on one concrete
/// candidate. The first failing step is where this candidate dies.
pub fn proof_trace(
    theorem: Theorem,
    cand: &FactorisationCandidate,
    coloring: &dyn Coloring,
    idx: &FactorIndex,
) -> Result<ProofTrace> {
    check_part_count(cand.parts.len())?;
    if cand.parts.len() < 2 {
        return Err(Error::PreconditionViolated("a trace needs at least two parts".into()));
    }
    match theorem {
        Theorem::T3 => trace_zimin(cand, coloring, idx),
        Theorem::T4 => trace_period_doubling(cand, coloring, idx),
        Theorem::T5 => trace_squarefree(cand, coloring, idx),
    }
}

fn ks(cs: &[CanonicalFactor]) -> Vec<u32> {
    cs.iter().map(|c| c.k()).collect()
}

fn trace_zimin(cand: &FactorisationCandidate, coloring: &dyn Coloring, idx: &FactorIndex) -> Result<ProofTrace> {
    let w = &cand.parts;
    let m = w.len();
    let cs = w
        .iter()
        .map(|p| parse_factor(p).map_err(|_| Error::HypothesisViolated(format!("part {p} is not a factor of Z"))))
        .collect::<Result<Vec<_>>>()?;
    for s in subset_concats(w)? {
        hypothesis(parse_factor(&s).is_ok(), format!("factor_closed: {s} is not a factor of Z"))?;
    }
    let k = ks(&cs);
    for n in 0..m - 1 {
        hypothesis(
            k[n] <= 2 + k[n + 1],
            format!("spacing: k(w_{}) = {} > 2 + k(w_{}) = {}", n + 1, k[n], n + 2, 2 + k[n + 1]),
        )?;
    }
    let mut t = ProofTrace::new(Theorem::T3);
    for n in 0..m - 1 {
        let (i, j) = (n + 1, n + 2);
        let head = Word::concat_all(Alphabet::Zimin, &w[..=n]);
        t.step(format!("w_1..w_{i} suffix of w_{j}"), head.is_suffix_of(&w[n + 1]), format!("|head| = {}", head.len()));
        t.step(format!("k(w_{i}) < k(w_{j})"), k[n] < k[n + 1], format!("{} vs {}", k[n], k[n + 1]));
        let a_next = cs[n + 1].a();
        t.step(format!("k(w_{i}) not in A_{j}"), !a_next.contains(k[n]), format!("A_{j} = {a_next}"));
        let e = eta(&cs[n + 1]);
        t.step(format!("eta(w_{j}) = k(w_{i})"), e == k[n], format!("eta = {e}"));
        let low = FinSet::below(k[n]);
        let lhs = a_next.intersection(low);
        let rhs = low.difference(cs[n].b());
        t.step(format!("A_{j} below k(w_{i}) = [1,k(w_{i})) minus B_{i}"), lhs == rhs, format!("{lhs} vs {rhs}"));
        let c = coloring.color(idx, &w[n + 1])?;
        t.step(format!("w_{j} is red"), c == Color::Red, format!("color {c}"));
    }
    for n in 0..m.saturating_sub(2) {
        let (i, j) = (n + 1, n + 3);
        let pair = w[n].concat(&w[n + 2]);
        let a2 = cs[n + 2].a();
        t.step(format!("k(w_{i}) not in A_{j}"), !a2.contains(k[n]), format!("A_{j} = {a2}"));
        let c = coloring.color(idx, &pair)?;
        t.step(format!("w_{i} w_{j} is red"), c == Color::Red, format!("color {c}"));
    }
    Ok(t.settle_short(m))
}

fn check_consecutive(cand: &FactorisationCandidate, idx: &FactorIndex) -> Result<()> {
    let strict = FactorisationCandidate { constraints: Constraints { consecutive: true, ..Constraints::NONE }, ..cand.clone() };
    let v = strict.violations(idx)?;
    hypothesis(v.is_empty(), format!("consecutive: {}", v.join("; ")))
}

fn trace_period_doubling(
    cand: &FactorisationCandidate,
    coloring: &dyn Coloring,
    idx: &FactorIndex,
) -> Result<ProofTrace> {
    hypothesis(idx.source().is_period_doubling(), "the index must be over the period-doubling word")?;
    check_consecutive(cand, idx)?;
    let parts = &cand.parts;
    let lifts = parts.iter().map(|p| lift_w(p, idx)?.build()).collect::<Result<Vec<_>>>()?;
    let mut t = ProofTrace::new(Theorem::T4);
    for mask in 1u64..1 << parts.len() {
        if mask.count_ones() < 2 {
            continue;
        }
        let names = mask_parts(mask).iter().map(|i| format!("u_{i}")).collect::<Vec<_>>().join(" ");
        let joined = concat_mask(parts, mask);
        let lifted = lift_w(&joined, idx)?.build()?;
        let product = concat_mask(&lifts, mask);
        t.step(format!("W({names}) = product of W(u_i)"), lifted == product, format!("W = {lifted}"));
        let c = coloring.color(idx, &joined)?;
        let cz = ColoringSpec::ZiminCz.color(idx, &product)?;
        t.step(format!("C({names}) = C_Z of lifted product"), c == cz, format!("{c} vs {cz}"));
    }
    let lifted_cand = FactorisationCandidate::new(0, lifts, Constraints::NONE);
    let verdict = is_super_mono_prefix(&ColoringSpec::ZiminCz, idx, &lifted_cand)?;
    let detail = match &verdict {
        MonoVerdict::Monochromatic { color } => format!("all {color}"),
        MonoVerdict::Witness { pair } => {
            format!("{} {} vs {} {}", pair[0].word, pair[0].color, pair[1].word, pair[1].color)
        }
    };
    t.step("lifted family is C_Z-monochromatic".into(), verdict.is_monochromatic(), detail);
    Ok(t)
}

fn trace_squarefree(cand: &FactorisationCandidate, coloring: &dyn Coloring, idx: &FactorIndex) -> Result<ProofTrace> {
    let strict = FactorisationCandidate {
        constraints: Constraints { consecutive: true, suffix_property: true, factor_closed: false },
        ..cand.clone()
    };
    let v = strict.violations(idx)?;
    hypothesis(v.is_empty(), format!("suffix_property and consecutive: {}", v.join("; ")))?;
    let u = &cand.parts;
    let m = u.len();
    let mut t = ProofTrace::new(Theorem::T5);
    let sets = |w: &Word| -> Result<[std::collections::BTreeSet<Word>; 4]> {
        Ok([
            boundary_sets(idx, w, BoundarySet::LambdaPlus)?,
            boundary_sets(idx, w, BoundarySet::RhoPlus)?,
            boundary_sets(idx, w, BoundarySet::LambdaMinus)?,
            boundary_sets(idx, w, BoundarySet::RhoMinus)?,
        ])
    };
    for (n, un) in u.iter().enumerate().skip(1) {
        let j = n + 1;
        let [lp, rp, lm, rm] = sets(un)?;
        t.step(format!("lambda+(u_{j}) in rho+(u_{j})"), lp.is_subset(&rp), format!("{} vs {}", lp.len(), rp.len()));
        t.step(format!("rho+(u_{j}) in lambda+(u_{j})"), rp.is_subset(&lp), String::new());
        t.step(format!("lambda-(u_{j}) in rho-(u_{j})"), lm.is_subset(&rm), format!("{} vs {}", lm.len(), rm.len()));
        t.step(format!("rho-(u_{j}) in lambda-(u_{j})"), rm.is_subset(&lm), String::new());
        let c = coloring.color(idx, un)?;
        t.step(format!("u_{j} is red"), c == Color::Red, format!("color {c}"));
    }
    for n in 0..m.saturating_sub(2) {
        let (i, j) = (n + 1, n + 3);
        let pair = u[n].concat(&u[n + 2]);
        let c = coloring.color(idx, &pair)?;
        t.step(format!("u_{i} u_{j} is red"), c == Color::Red, format!("color {c}"));
        let square = u[n].concat(&u[n]);
        let found = idx.is_factor(&square) == Membership::Yes;
        t.step(format!("u_{i} u_{i} is a factor"), found, format!("|square| = {}", square.len()));
        if found && !matches!(t.outcome, TraceOutcome::Refuted { .. }) {
            t.outcome = TraceOutcome::SquareFound { square };
            break;
        }
    }
    Ok(t.settle_short(m))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::words::ZiminDefinition;
    use crate::zimin::build_un;

    fn chain_parts(m: u32) -> Vec<Word> {
        (1..=m).map(|n| build_un(n).unwrap()).collect()
    }

    #[test]
    fn subset_concat_examples() {
        let a = Word::binary("0");
        let b = Word::binary("1");
        assert_eq!(subset_concats(std::slice::from_ref(&a)).unwrap(), vec![a.clone()]);
        assert_eq!(subset_concats(&[a.clone(), b.clone()]).unwrap(), vec![a, b, Word::binary("01")]);
        let z = subset_concats(&chain_parts(3)).unwrap();
        assert_eq!(z.len(), 7);
        assert!(z.contains(&Word::zimin(&[1, 3, 1, 2, 1])));
        assert!(matches!(subset_concats(&vec![Word::binary("0"); 21]), Err(Error::TooManyParts(21))));
    }

    #[test]
    fn super_mono_examples() {
        let idx = FactorIndex::build(&WordSource::zimin(ZiminDefinition::Limit), 64).unwrap();
        let cand = FactorisationCandidate::new(0, chain_parts(3), Constraints::NONE);
        match is_super_mono_prefix(&ColoringSpec::ZiminCz, &idx, &cand).unwrap() {
            MonoVerdict::Witness { pair } => {
                assert_eq!(pair[1].parts, vec![1, 3]);
                assert_eq!(pair[1].color, Color::Blue);
                assert_eq!(pair[0].color, Color::Red);
            }
            v => panic!("{v:?}"),
        }
        assert!(is_super_mono_prefix(&ColoringSpec::Constant, &idx, &cand).unwrap().is_monochromatic());
        let single = FactorisationCandidate::new(0, chain_parts(1), Constraints::NONE);
        assert!(is_super_mono_prefix(&ColoringSpec::ZiminCz, &idx, &single).unwrap().is_monochromatic());
        let two = FactorisationCandidate::new(0, chain_parts(2), Constraints::NONE);
        assert!(check_monochromatic_factorisation(&ColoringSpec::ZiminCz, &idx, &two).unwrap());
    }

    #[test]
    fn candidate_invariants() {
        let idx = FactorIndex::build(&WordSource::zimin(ZiminDefinition::Limit), 64).unwrap();
        let all = Constraints { consecutive: true, suffix_property: true, factor_closed: true };
        let cand = FactorisationCandidate::new(0, chain_parts(4), all);
        assert!(cand.violations(&idx).unwrap().is_empty());
        assert_eq!(cand.cuts(), vec![1, 3, 7, 15]);
        let bad = FactorisationCandidate::from_cuts(&idx, 0, &[1, 2], all).unwrap();
        assert!(!bad.violations(&idx).unwrap().is_empty());
    }

    #[test]
    fn constraints_parse() {
        let c: Constraints = "consecutive,suffix_property".parse().unwrap();
        assert!(c.consecutive && c.suffix_property && !c.factor_closed);
        assert_eq!(c.to_string(), "consecutive,suffix_property");
        assert_eq!("none".parse::<Constraints>().unwrap(), Constraints::NONE);
    }

    #[test]
    fn constant_probe_survives() {
        let src = WordSource::periodic(Word::binary("01")).unwrap();
        let params = ProbeParams::new(&src, ColoringSpec::Constant, 1, 3, 8);
        let r = probe_conjecture(&params).unwrap();
        assert_eq!(r.max_depth, 3);
        assert!(r.depth_histogram.iter().all(|&h| h > 0));
        assert_eq!(r.kills_total, 0);
        // all cut sets with at most 3 parts of an 8-letter prefix, for k = 0, 1
        assert_eq!(r.depth_histogram, vec![16, 56, 112]);
    }

    #[test]
    fn zimin_trace() {
        let idx = FactorIndex::build(&WordSource::zimin(ZiminDefinition::Limit), 64).unwrap();
        let cand = FactorisationCandidate::new(0, chain_parts(4), Constraints::NONE);
        let t = proof_trace(Theorem::T3, &cand, &ColoringSpec::ZiminCz, &idx).unwrap();
        assert_eq!(t.step_holds("w_2 is red"), Some(true));
        assert_eq!(t.step_holds("w_3 is red"), Some(true));
        assert_eq!(t.step_holds("w_1 w_3 is red"), Some(false));
        assert_eq!(t.outcome, TraceOutcome::Refuted { step: "w_1 w_3 is red".into() });
    }
}
