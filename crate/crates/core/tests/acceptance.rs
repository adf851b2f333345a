//! Acceptance run: one line per criterion, nonzero exit if any fails.

use std::time::{Duration, Instant};

use wordramsey::colorings::{Color, ColoringSpec};
use wordramsey::index::FactorIndex;
use wordramsey::oracle;
use wordramsey::props::run_suite;
use wordramsey::ramsey::build_periodic_super_mono;
use wordramsey::ramsey::build_suffix_chain;
use wordramsey::verifier::{
    probe_with, proof_trace, subset_concats, verify_kill, Constraints, FactorisationCandidate, ProbeParams, SearchReport,
    Theorem, TraceOutcome,
};
use wordramsey::words::{psi, Word, WordSource, ZiminDefinition};
use wordramsey::zimin::{build_un, build_zn};

type Check = Result<String, String>;
type Criterion = Box<dyn Fn() -> Check>;

fn suites(names: &[&str], limit: Duration) -> Check {
    let start = Instant::now();
    let mut parts = Vec::new();
    for n in names {
        let r = run_suite(n, 2024).map_err(|e| format!("{n}: {e}"))?;
        if !r.ok() {
            return Err(r.to_string());
        }
        parts.push(format!("{} {}/{}", r.name, r.passed, r.total));
    }
    let t = start.elapsed();
    if t > limit {
        return Err(format!("{} took {t:?}, limit {limit:?}", parts.join(", ")));
    }
    Ok(format!("{} in {:.2?}", parts.join(", "), t))
}

fn ensure(ok: bool, msg: impl Into<String>) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn z() -> WordSource {
    WordSource::zimin(ZiminDefinition::Limit)
}

fn c4() -> Check {
    let z8 = build_zn(8).map_err(|e| e.to_string())?;
    let mut distinct = std::collections::BTreeSet::new();
    for i in 0..z8.len() {
        for j in i + 1..=z8.len() {
            distinct.insert(&z8.letters()[i..j]);
        }
    }
    Ok(format!("{} distinct substrings of Z_8; {}", distinct.len(), suites(&["canonical-roundtrip"], Duration::MAX)?))
}

fn c10() -> Check {
    let idx = FactorIndex::build(&z(), 1 << 10).map_err(|e| e.to_string())?;
    let chain = build_suffix_chain(&idx, &Word::zimin(&[1]), 5).map_err(|e| e.to_string())?;
    let def6: Vec<Word> = (1..=5).map(|n| build_un(n).unwrap()).collect();
    ensure(chain == def6, format!("chain {chain:?}"))?;

    let v = Word::binary("01");
    let src = WordSource::periodic(v.clone()).map_err(|e| e.to_string())?;
    let pidx = FactorIndex::build(&src, 256).map_err(|e| e.to_string())?;
    // |v^i| / 2 = i, so this colors v^i by the parity of i
    let parity = ColoringSpec::LengthClass { divisor: 2, modulus: 2 };
    let c = build_periodic_super_mono(&pidx, &Word::binary(""), &v, &parity, 2, 16)
        .map_err(|e| e.to_string())?
        .found()
        .ok_or("no periodic construction")?;
    ensure(c.exponents == [2, 4], format!("exponents {:?}", c.exponents))?;
    for w in subset_concats(&c.parts).map_err(|e| e.to_string())? {
        let want = Color::Index(0);
        ensure(wordramsey::colorings::Coloring::color(&parity, &pidx, &w).map_err(|e| e.to_string())? == want, format!("{w}"))?;
    }
    Ok("suffix chain = u_1..u_5; (01)^w parts v^2, v^4 verified on all subsets".into())
}

fn probe(src: &WordSource, spec: &ColoringSpec, k_max: usize, m_max: usize, len_max: usize, cons: &str) -> Result<(SearchReport, FactorIndex, Duration), String> {
    let mut p = ProbeParams::new(src, spec.clone(), k_max, m_max, len_max).with_constraints(cons.parse().map_err(|e: wordramsey::Error| e.to_string())?);
    p.list_limit = usize::MAX;
    let start = Instant::now();
    let r = probe_with(&p, spec).map_err(|e| e.to_string())?;
    let t = start.elapsed();
    let idx = FactorIndex::build(src, p.window.max(spec.required_window()).max(k_max + len_max)).map_err(|e| e.to_string())?;
    ensure(t < Duration::from_secs(300), format!("probe took {t:?}"))?;
    ensure(r.undecided == 0, format!("{} undecided branches", r.undecided))?;
    ensure(r.kills.len() as u64 == r.kills_total, "kill list truncated")?;
    for k in &r.kills {
        ensure(verify_kill(spec, &idx, k).map_err(|e| e.to_string())?, format!("kill {k:?} does not re-verify"))?;
    }
    let mut brute = vec![0; m_max];
    for k in 0..=k_max {
        let h = oracle::survivor_histogram(&idx, spec, k, m_max, len_max, r.params.constraints).map_err(|e| e.to_string())?;
        for (a, b) in brute.iter_mut().zip(h) {
            *a += b;
        }
    }
    ensure(brute == r.depth_histogram, format!("probe {:?} vs brute force {brute:?}", r.depth_histogram))?;
    Ok((r, idx, t))
}

fn c11() -> Check {
    // Z, zimin_cz: counts confirmed by unpruned enumeration before freezing
    let (r, zidx, tz) = probe(&z(), &ColoringSpec::ZiminCz, 3, 3, 64, "consecutive")?;
    ensure(r.depth_histogram == [255, 1124, 1074] && r.max_depth == 3, format!("Z histogram {:?}", r.depth_histogram))?;
    let natural = r.kills.iter().find(|k| k.k == 0 && k.cuts == [1, 3, 7]).ok_or("natural factorisation not killed")?;
    ensure(
        natural.pair[0].color == Color::Red && natural.pair[1].parts == [1, 3] && natural.pair[1].color == Color::Blue,
        format!("natural kill {natural:?}"),
    )?;

    let sq = WordSource::squarefree();
    let spec = ColoringSpec::Squarefree3 { search_window: 1024 };
    let (s, sidx, ts) = probe(&sq, &spec, 3, 4, 100, "suffix_property")?;
    ensure(s.depth_histogram == [400, 164, 0, 0] && s.max_depth == 2, format!("squarefree histogram {:?}", s.depth_histogram))?;
    for sv in &s.survivors {
        let cand = FactorisationCandidate::from_cuts(&sidx, sv.k, &sv.cuts, s.params.constraints).map_err(|e| e.to_string())?;
        let t = proof_trace(Theorem::T5, &cand, &spec, &sidx).map_err(|e| e.to_string())?;
        ensure(t.outcome != TraceOutcome::AllStepsHold, format!("T5 on {:?} claims success", sv.cuts))?;
    }

    // trace examples
    let parts: Vec<Word> = (1..=4).map(|n| build_un(n).unwrap()).collect();
    let cand = FactorisationCandidate::new(0, parts.clone(), Constraints::NONE);
    let t3 = proof_trace(Theorem::T3, &cand, &ColoringSpec::ZiminCz, &zidx).map_err(|e| e.to_string())?;
    for step in ["w_2 is red", "w_3 is red", "w_4 is red", "eta(w_3) = k(w_2)"] {
        ensure(t3.step_holds(step) == Some(true), format!("T3 step {step:?}"))?;
    }
    let dparts: Vec<Word> = parts.iter().map(|p| psi(p).unwrap()).collect();
    let didx = FactorIndex::build(&WordSource::period_doubling(), 4096).map_err(|e| e.to_string())?;
    let dcand = FactorisationCandidate::new(0, dparts, "consecutive".parse().unwrap());
    let t4 = proof_trace(Theorem::T4, &dcand, &ColoringSpec::PeriodDoublingCw, &didx).map_err(|e| e.to_string())?;
    let mult: Vec<_> = t4.steps.iter().filter(|s| s.name.contains("product of W")).collect();
    ensure(!mult.is_empty() && mult.iter().all(|s| s.holds), "T4 multiplicativity")?;

    Ok(format!(
        "Z {:?} ({} kills, {:.2?}); squarefree {:?} ({} kills, {:.2?}); all kills re-verify; goldens match brute force; T3/T4 steps hold; {} T5 traces inconclusive",
        r.depth_histogram, r.kills_total, tz, s.depth_histogram, s.kills_total, ts, s.survivors.len()
    ))
}

fn c12() -> Check {
    let d = WordSource::period_doubling().prefix(23).map_err(|e| e.to_string())?;
    ensure(d.to_string() == "01000101010001000100010", format!("D prefix {d}"))?;
    Ok(format!("prefix(23) = {d}; {}", suites(&["lift"], Duration::MAX)?))
}

fn main() {
    let secs = Duration::from_secs;
    let criteria: Vec<(&str, Criterion)> = vec![
        ("zimin definitions agree", Box::new(move || suites(&["zimin-equivalence"], secs(5)))),
        ("length identities", Box::new(|| suites(&["zimin-lengths"], Duration::MAX))),
        ("suffixes of u_n", Box::new(move || suites(&["u-suffixes"], secs(10)))),
        ("canonical form round trip", Box::new(c4)),
        ("concatenation and suffix tests vs string search", Box::new(move || suites(&["concat-calculus"], secs(60)))),
        ("C_Z red iff interval", Box::new(|| suites(&["prop10"], Duration::MAX))),
        ("consecutive length", Box::new(|| suites(&["dp-brute", "length-band", "rigid-chunks"], Duration::MAX))),
        ("first-occurrence split iff L >= 2", Box::new(|| suites(&["split-bridge"], Duration::MAX))),
        ("finite sums on [1,9]", Box::new(move || suites(&["ip-512"], secs(1)))),
        ("constructions", Box::new(c10)),
        ("bounded probes and traces", Box::new(c11)),
        ("period-doubling and lifts", Box::new(c12)),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let (tag, detail) = match f() {
            Ok(d) => ("PASS", d),
            Err(d) => {
                failed += 1;
                ("FAIL", d)
            }
        };
        println!("criterion {:2} {tag}  {name}: {detail}", i + 1);
    }
    println!("{} of {} criteria pass", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
