//! Bounded refutation search: enumerate factorisations of T^k(x) and kill
//! every branch whose subset concatenations use two colors.
//!
//! cargo run --release --example probe

use wordramsey::colorings::ColoringSpec;
use wordramsey::verifier::{probe_conjecture, ProbeParams};
use wordramsey::words::{WordSource, ZiminDefinition};

fn main() -> wordramsey::Result<()> {
    let z = WordSource::zimin(ZiminDefinition::Limit);
    let params = ProbeParams::new(&z, ColoringSpec::ZiminCz, 3, 3, 64).with_constraints("consecutive".parse()?);
    let r = probe_conjecture(&params)?;
    println!("Z, C_Z: survivors by depth {:?}, {} kills", r.depth_histogram, r.kills_total);
    if let Some(k) = r.kills.iter().find(|k| k.k == 0 && k.cuts == [1, 3, 7]) {
        let [a, b] = &k.pair;
        println!("u_1 u_2 u_3 dies: parts {:?} [{}] {} vs parts {:?} [{}] {}", a.parts, a.word, a.color, b.parts, b.word, b.color);
    }

    let sq = WordSource::squarefree();
    let params = ProbeParams::new(&sq, ColoringSpec::Squarefree3 { search_window: 1024 }, 3, 4, 100)
        .with_constraints("suffix_property".parse()?);
    let r = probe_conjecture(&params)?;
    println!("squarefree, 3 colors: survivors by depth {:?}, deepest {}", r.depth_histogram, r.max_depth);
    let json = serde_json::to_string(&r.without_timing()).expect("serializable");
    println!("report: {} bytes of JSON", json.len());
    Ok(())
}
