//! Running the named invariant suites, as `rw props` does.
//!
//! cargo run --release --example invariant_suites [suite...]

use wordramsey::props::{run_suite, suite_description, suite_names};

fn main() -> wordramsey::Result<()> {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let names: Vec<&str> = if args.is_empty() {
        vec!["prop10", "suffix-products", "ip-512", "lift"]
    } else {
        args.iter().map(String::as_str).collect()
    };
    println!("{} suites available", suite_names().len());
    for n in names {
        println!("# {}", suite_description(n).unwrap_or("?"));
        println!("{}", run_suite(n, 1)?);
    }
    Ok(())
}
