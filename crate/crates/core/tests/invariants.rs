use wordramsey::props::{run_suite, suite_names};

#[test]
fn every_invariant_suite_passes() {
    let mut failed = Vec::new();
    for name in suite_names() {
        let r = run_suite(name, 7).unwrap();
        println!("{r}");
        if !r.ok() {
            failed.push(name);
        }
    }
    assert!(failed.is_empty(), "failing suites: {failed:?}");
}
