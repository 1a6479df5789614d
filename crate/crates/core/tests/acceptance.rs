//! Runs every acceptance criterion at L = 6, N = 4, window −4..6 and
//! prints one line per criterion. Built without the test harness so the
//! lines are never captured.

use hhcyc::suite::{run_suite, SuiteOptions, SuiteVerdict, CRITERIA};
use hhcyc::ComputationParams;

fn main() {
    let options = SuiteOptions::default();
    assert_eq!(options.params, ComputationParams::default().with_bar_length(6).with_u_power(4).with_window(-4, 6));
    let ledger = run_suite(&options);
    for e in &ledger.entries {
        let status = if e.verdict == SuiteVerdict::Pass { "PASS" } else { "FAIL" };
        println!("criterion {:>2} {status} ({}): {}", e.criterion, e.verdict, e.statement);
        for line in &e.evidence {
            println!("    {line}");
        }
    }
    assert_eq!(ledger.entries.len(), CRITERIA as usize, "every criterion has exactly one entry");
    let failed: Vec<u32> = ledger.entries.iter().filter(|e| e.verdict != SuiteVerdict::Pass).map(|e| e.criterion).collect();
    assert!(failed.is_empty(), "criteria not passing: {failed:?}");
}
