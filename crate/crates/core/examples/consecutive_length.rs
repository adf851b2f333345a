//! Consecutive decompositions, L(u), and the boundary sets used by the
//! three-coloring of squarefree words.
//!
//! cargo run --example consecutive_length

use wordramsey::conslen::{
    boundary_sets, consecutive_length, find_factor_with_length, is_consecutive, maximal_decomposition, BoundarySet,
};
use wordramsey::index::FactorIndex;
use wordramsey::words::{Word, WordSource, ZiminDefinition};

fn main() -> wordramsey::Result<()> {
    let idx = FactorIndex::build(&WordSource::zimin(ZiminDefinition::Limit), 1024)?;
    let u = Word::zimin(&[1, 2, 1]);
    println!("{u}: cuts [1] consecutive? {}", is_consecutive(&idx, &u, &[1])?);
    println!("{u}: cuts [1,2] consecutive? {}", is_consecutive(&idx, &u, &[1, 2])?);

    for u in [Word::zimin(&[2, 1]), Word::zimin(&[1, 2, 1, 3]), idx.text().slice(0..31)] {
        println!("L({u}) = {}  {}", consecutive_length(&idx, &u)?, maximal_decomposition(&idx, &u)?);
    }
    for l in 1..=4 {
        let w = find_factor_with_length(&idx, 5, l)?;
        println!("a factor at 5 with L = {l}: {w}");
    }

    let sq = FactorIndex::build(&WordSource::squarefree(), 1024)?;
    let u = sq.text().slice(17..25);
    println!("squarefree factor {u}: A = {}, L = {}", sq.first_occurrence(&u)?, consecutive_length(&sq, &u)?);
    for which in BoundarySet::ALL {
        let set: Vec<String> = boundary_sets(&sq, &u, which)?.iter().map(|w| w.to_string()).collect();
        println!("  {which}: {set:?}");
    }
    Ok(())
}
