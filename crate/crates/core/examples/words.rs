//! Word sources: the Zimin word under its three definitions, period-doubling,
//! a squarefree ternary word and ultimately periodic words.
//!
//! cargo run --example words

use wordramsey::words::{largest_square_in, psi, Word, WordSource, ZiminDefinition};

fn main() -> wordramsey::Result<()> {
    for def in [ZiminDefinition::Limit, ZiminDefinition::Valuation, ZiminDefinition::Morphism] {
        println!("zimin ({def:?}): {}", WordSource::zimin(def).prefix(15)?);
    }
    let z = WordSource::zimin(ZiminDefinition::Limit);
    println!("T^1(Z):          {}", z.suffix_view(1).prefix(7)?);
    println!("psi(Z):          {}", psi(&z.prefix(23)?)?);
    println!("period-doubling: {}", WordSource::period_doubling().prefix(23)?);

    let sq = WordSource::squarefree();
    let p = sq.prefix(2000)?;
    println!("squarefree:      {}...  largest square in 2000 letters: {}", sq.prefix(24)?, largest_square_in(&p));

    let periodic: WordSource = "periodic:1:01".parse()?;
    println!("{periodic}: {}", periodic.prefix(12)?);
    println!("largest square in 00100: {}", largest_square_in(&Word::binary("00100")));
    Ok(())
}
