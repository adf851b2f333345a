//! Canonical forms u_A x_k v_B of Zimin factors and the set calculus for
//! concatenations and suffixes.
//!
//! cargo run --example zimin_calculus

use wordramsey::words::Word;
use wordramsey::zimin::{
    build_u, build_un, concat_canonical, concat_is_factor, cz_is_red, eta, parse_factor, suffix_decomposition_m,
    suffix_test, FinSet,
};

fn main() -> wordramsey::Result<()> {
    for n in 1..=4 {
        println!("u_{n} = {}", build_un(n)?);
    }
    let a: FinSet = "{1,3}".parse()?;
    println!("u_{a} = {}", build_u(a)?);

    let w = Word::zimin(&[1, 2, 1, 3, 1]);
    let c = parse_factor(&w)?;
    println!("{w} = {c}, eta = {}, C_Z red: {}", eta(&c), cz_is_red(&c));

    let x1 = parse_factor(&Word::zimin(&[1]))?;
    let x2x1 = parse_factor(&Word::zimin(&[2, 1]))?;
    let x1x2 = parse_factor(&Word::zimin(&[1, 2]))?;
    println!("x1 . x2 x1 factor? {} -> {}", concat_is_factor(&x1, &x2x1)?, concat_canonical(&x1, &x2x1)?);
    println!("x1 . x1 x2 factor? {}", concat_is_factor(&x1, &x1x2)?);
    println!("x1 suffix of x2 x1? {}", suffix_test(&x1, &x2x1)?);

    // every suffix of Z is a product of u_m over a cofinite set M
    for k in [0, 1, 2, 5, 100] {
        println!("T^{k}(Z) = prod u_m for m in {:?}...", suffix_decomposition_m(k, 5)?);
    }
    Ok(())
}
