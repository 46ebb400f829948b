//! Runs every acceptance criterion and prints one line per criterion.
//! Set `WEYMAN_HEAVY=1` to include the stretch targets.

use weyman::verify::{run_criterion, VerifyOptions, CRITERIA};

#[test]
fn acceptance_criteria() {
    let heavy = std::env::var("WEYMAN_HEAVY").is_ok_and(|v| !v.is_empty() && v != "0");
    let opts = VerifyOptions { heavy, ..VerifyOptions::default() };
    let mut outcomes = Vec::new();
    for (id, _) in CRITERIA {
        let o = run_criterion(id, &opts);
        println!("{o}");
        outcomes.push(o);
    }
    let failed: Vec<u8> = outcomes.iter().filter(|o| !o.passed).map(|o| o.id).collect();
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
