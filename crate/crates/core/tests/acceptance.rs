use cellcode::verify::{run, CRITERIA};

#[test]
fn acceptance() {
    println!();
    let mut failed = Vec::new();
    for &(id, _) in &CRITERIA {
        let outcome = run(id);
        println!("{outcome} ({:.1}s)", outcome.seconds);
        if !outcome.passed {
            failed.push(id);
        }
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
