//! Replaying the forced steps of the impossibility arguments on concrete
//! candidates.
//!
//! cargo run --example proof_traces

use wordramsey::colorings::ColoringSpec;
use wordramsey::index::FactorIndex;
use wordramsey::verifier::{proof_trace, Constraints, FactorisationCandidate, ProofTrace, Theorem};
use wordramsey::words::{psi, Word, WordSource, ZiminDefinition};
use wordramsey::zimin::build_un;

fn show(t: &ProofTrace) {
    for s in &t.steps {
        println!("  [{}] {}", if s.holds { "ok" } else { "--" }, s.name);
    }
    println!("  => {:?}", t.outcome);
}

fn main() -> wordramsey::Result<()> {
    let parts: Vec<Word> = (1..=4).map(build_un).collect::<Result<_, _>>()?;

    let z = FactorIndex::build(&WordSource::zimin(ZiminDefinition::Limit), 1024)?;
    println!("two colors on Z, parts u_1..u_4:");
    show(&proof_trace(Theorem::T3, &FactorisationCandidate::new(0, parts.clone(), Constraints::NONE), &ColoringSpec::ZiminCz, &z)?);

    let d = FactorIndex::build(&WordSource::period_doubling(), 1024)?;
    let dparts = parts.iter().map(psi).collect::<Result<Vec<_>, _>>()?;
    println!("two colors on D, parts psi(u_1)..psi(u_4):");
    let cand = FactorisationCandidate::new(0, dparts, "consecutive".parse()?);
    show(&proof_trace(Theorem::T4, &cand, &ColoringSpec::PeriodDoublingCw, &d)?);

    // hypotheses are checked first
    let bad = FactorisationCandidate::new(0, vec![Word::zimin(&[1]), Word::zimin(&[2, 1, 3])], Constraints::NONE);
    match proof_trace(Theorem::T3, &bad, &ColoringSpec::ZiminCz, &z) {
        Err(e) => println!("x1 | x2 x1 x3: {e}"),
        Ok(t) => show(&t),
    }
    Ok(())
}
