//! Plugging a closure in as a coloring and checking factorisations by hand.
//!
//! cargo run --example custom_coloring

use wordramsey::colorings::{Color, FnColoring};
use wordramsey::index::FactorIndex;
use wordramsey::verifier::{is_super_mono_prefix, MonoVerdict, probe_with, Constraints, FactorisationCandidate, ProbeParams};
use wordramsey::words::{Word, WordSource};

fn main() -> wordramsey::Result<()> {
    // red iff the word contains more 0s than 1s
    let majority = FnColoring(|w: &Word| {
        let ones = w.letters().iter().filter(|&&l| l == 1).count();
        if 2 * ones < w.len() { Color::Red } else { Color::Blue }
    });

    let d = WordSource::period_doubling();
    let idx = FactorIndex::build(&d, 1024)?;
    let cand = FactorisationCandidate::from_cuts(&idx, 0, &[2, 4, 8], Constraints::NONE)?;
    let parts: Vec<String> = cand.parts.iter().map(Word::to_string).collect();
    match is_super_mono_prefix(&majority, &idx, &cand)? {
        MonoVerdict::Monochromatic { color } => println!("parts {parts:?}: all {color}"),
        MonoVerdict::Witness { pair: [a, b] } => {
            println!("parts {parts:?}: {} is {} but {} is {}", a.word, a.color, b.word, b.color)
        }
    }

    let params = ProbeParams { coloring: None, ..ProbeParams::new(&d, wordramsey::colorings::ColoringSpec::Constant, 4, 4, 24) };
    let r = probe_with(&params, &majority)?;
    println!("majority coloring on D: survivors by depth {:?}", r.depth_histogram);
    if let Some(s) = r.survivors.first() {
        println!("first deepest survivor: k = {}, cuts {:?}", s.k, s.cuts);
    }
    Ok(())
}
