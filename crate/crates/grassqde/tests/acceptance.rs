//! One line per acceptance criterion, then a single gate over the gating ones.
//! Runs without the libtest harness so the lines are never captured.

use grassqde::selftest::{run_criterion, Status};
use grassqde::Exec;

fn main() {
    let mut failed = Vec::new();
    for id in 1..=11 {
        let start = std::time::Instant::now();
        let c = run_criterion(id, Exec::default()).expect("known criterion");
        let secs = start.elapsed().as_secs_f64();
        let tag = match c.status {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Reported => "REPORTED",
        };
        println!("criterion {id:>2} {tag:<8} {:<72} ({secs:.2}s)", c.name);
        match c.status {
            Status::Fail => {
                println!("    detail: {}", c.detail);
                failed.push(id);
            }
            Status::Reported => println!("    detail: {}", c.detail),
            Status::Pass => {}
        }
    }
    if failed.is_empty() {
        println!("acceptance: all gating criteria pass");
    } else {
        println!("acceptance: failing criteria {failed:?}");
        std::process::exit(1);
    }
}
