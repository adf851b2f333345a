//! The colorings: recurrence, non-factor, first-occurrence split, C_Z,
//! the lifted period-doubling coloring and the squarefree three-coloring.
//!
//! cargo run --example colorings

use wordramsey::colorings::{product, Coloring, ColoringSpec};
use wordramsey::index::FactorIndex;
use wordramsey::words::{Word, WordSource, ZiminDefinition};
use wordramsey::zimin::{build_u, FinSet};

fn main() -> wordramsey::Result<()> {
    let z = FactorIndex::build(&WordSource::zimin(ZiminDefinition::Limit), 4096)?;
    for bits in [0b110u64, 0b101, 0b111, 0b1011] {
        let a = FinSet::from_bits(bits);
        println!("C_Z(u_{a}) = {}", ColoringSpec::ZiminCz.color(&z, &build_u(a)?)?);
    }
    println!("C_Z(x1 x1) = {} (not a factor)", ColoringSpec::ZiminCz.color(&z, &Word::zimin(&[1, 1]))?);
    println!("C_Z(x1 x1 x2 x2) = {}", ColoringSpec::ZiminCz.color(&z, &Word::zimin(&[1, 1, 2, 2]))?);

    let split = ColoringSpec::FirstoccSplit;
    println!("first-occurrence split: x1 x2 x1 {}, x2 x1 {}", split.color(&z, &Word::zimin(&[1, 2, 1]))?, split.color(&z, &Word::zimin(&[2, 1]))?);

    let rec: ColoringSpec = "recurrence:4096:2".parse()?;
    println!("recurrence on x5: {}", rec.color(&z, &Word::zimin(&[5]))?);

    let d = FactorIndex::build(&WordSource::period_doubling(), 4096)?;
    for u in ["0100", "0001", "0101"] {
        println!("C_W({u}) = {}", ColoringSpec::PeriodDoublingCw.color(&d, &Word::binary(u))?);
    }

    let sq = FactorIndex::build(&WordSource::squarefree(), 1024)?;
    let three = ColoringSpec::Squarefree3 { search_window: 1024 };
    for r in [0..1, 0..4, 3..12, 40..60] {
        let u = sq.text().slice(r);
        println!("squarefree3({u}) = {}", three.color(&sq, &u)?);
    }

    let both = product(vec![ColoringSpec::ZiminCz, ColoringSpec::FirstoccSplit])?;
    println!("product palette: {:?}", both.palette().iter().map(|c| c.to_string()).collect::<Vec<_>>());
    println!("as JSON: {}", serde_json::to_string(&both).expect("serializable"));
    Ok(())
}
