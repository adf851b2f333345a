//! Constructive super-monochromatic factorisations: powers of the period
//! for ultimately periodic words, and blocks of a suffix chain.
//!
//! cargo run --example constructions

use wordramsey::colorings::ColoringSpec;
use wordramsey::index::FactorIndex;
use wordramsey::ramsey::{build_periodic_super_mono, build_suffix_chain, subshift_super_mono};
use wordramsey::words::{Word, WordSource, ZiminDefinition};

fn main() -> wordramsey::Result<()> {
    let src: WordSource = "periodic:1:01".parse()?;
    let idx = FactorIndex::build(&src, 512)?;
    let parity = ColoringSpec::LengthClass { divisor: 2, modulus: 2 };
    if let Some(c) = build_periodic_super_mono(&idx, &Word::binary("1"), &Word::binary("01"), &parity, 3, 32)?.found() {
        println!("{src} from {}: exponents {:?}, color {}", c.offset, c.exponents, c.color);
    }

    let z = FactorIndex::build(&WordSource::zimin(ZiminDefinition::Limit), 1 << 12)?;
    let chain = build_suffix_chain(&z, &Word::zimin(&[1]), 6)?;
    for (i, u) in chain.iter().enumerate().take(4) {
        println!("u_{} = {u}", i + 1);
    }
    for spec in [ColoringSpec::Constant, ColoringSpec::LengthClass { divisor: 1, modulus: 2 }, ColoringSpec::ZiminCz] {
        let out = subshift_super_mono(&z, &spec, &chain, 3)?;
        match out.found() {
            Some(w) => println!("{}: blocks {:?} all {}", spec.name(), w.blocks.iter().map(|b| b.to_string()).collect::<Vec<_>>(), w.color),
            None => println!("{}: no three blocks within the chain", spec.name()),
        }
    }

    let sq = FactorIndex::build(&WordSource::squarefree(), 1 << 12)?;
    let chain = build_suffix_chain(&sq, &sq.text().slice(0..1), 5)?;
    println!("squarefree chain lengths: {:?}", chain.iter().map(Word::len).collect::<Vec<_>>());
    Ok(())
}
