//! Monochromatic finite-sums sets in [1, N] for colorings of the integers.
//!
//! cargo run --example finite_sums

use wordramsey::colorings::Color;
use wordramsey::ramsey::{find_finite_sums_mono, SearchOutcome};

fn show(name: &str, color: impl Fn(u64) -> Color + Sync + Copy, r: usize, n: u64) {
    match find_finite_sums_mono(color, r, n) {
        SearchOutcome::Found { witness } => {
            println!("{name}, r = {r}: {:?} with sums {:?}, all {}", witness.elements, witness.sums(), witness.color);
            assert!(witness.verify(color));
        }
        SearchOutcome::NotFoundWithinBound { bound } => println!("{name}, r = {r}: nothing up to {bound}"),
    }
}

fn main() {
    show("constant", |_| Color::Red, 3, 10);
    show("parity", |i| Color::Index(i % 2), 2, 9);
    show("mod 3", |i| Color::Index(i % 3), 3, 60);
    // color by the parity of the number of binary digits
    show("bit length", |i| Color::Index(u64::from((64 - i.leading_zeros()) % 2)), 3, 200);
    show("injective", Color::Index, 2, 50);

    let hard = (0u32..512).filter(|&b| find_finite_sums_mono(move |i| Color::Index(u64::from(b >> (i - 1) & 1)), 2, 9).is_found()).count();
    println!("2-colorings of [1,9] with a witness for r = 2: {hard}/512");
}
