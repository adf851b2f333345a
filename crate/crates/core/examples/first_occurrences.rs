//! First occurrences A(u), B(u) and factor membership through the index.
//!
//! cargo run --example first_occurrences

use wordramsey::index::FactorIndex;
use wordramsey::words::{Word, WordSource, ZiminDefinition};

fn main() -> wordramsey::Result<()> {
    let z = WordSource::zimin(ZiminDefinition::Limit);
    let idx = FactorIndex::build(&z, 255)?;
    for u in [Word::zimin(&[2]), Word::zimin(&[3, 1, 2]), Word::zimin(&[1, 2, 1, 3, 1])] {
        println!("A({u}) = {}  B = {}", idx.first_occurrence(&u)?, idx.end_of_first_occurrence(&u)?);
    }
    println!("x1 occurs at {:?}", idx.occurrences_up_to(&Word::zimin(&[1]), 6));
    println!("x1 x1 is a factor: {:?}", idx.is_factor(&Word::zimin(&[1, 1])));
    println!("x1 x1 splits into two factors at {:?}", idx.two_factor_split(&Word::zimin(&[1, 1]))?);

    // prefixes of T^k(Z) eventually have their first occurrence at k
    for k in 1..6 {
        println!("T^{k}(Z) is pinned from prefix length {}", idx.pinned_prefix_length(k, 64)?);
    }

    let periodic: WordSource = "periodic::01".parse()?;
    let pidx = FactorIndex::build(&periodic, 64)?;
    println!("(01)^w at k = 2: {:?}", pidx.pinned_prefix_length(2, 32).map_err(|e| e.name()));
    Ok(())
}
