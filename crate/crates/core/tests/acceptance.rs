//! One line per acceptance criterion on the default window `H<=2, W<=2`.
//! Exits nonzero if any criterion fails or overruns its time budget.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use theta_cells::report::{Status, VerificationReport};
use theta_cells::verify::{run_suite, Suite, VerifyConfig};

struct Criterion {
    name: &'static str,
    suite: Suite,
    /// Check ids the criterion consists of; empty means the whole suite.
    checks: &'static [&'static str],
    budget: Duration,
}

const SECONDS: Duration = Duration::from_secs(60);
const fn minutes(m: u64) -> Duration {
    Duration::from_secs(60 * m)
}

const CRITERIA: [Criterion; 11] = [
    Criterion { name: "wreath isomorphism", suite: Suite::WreathIso, checks: &[], budget: minutes(5) },
    Criterion { name: "unique factorization", suite: Suite::Factorization, checks: &[], budget: minutes(10) },
    Criterion { name: "gamma and fdelta laws", suite: Suite::Gamma, checks: &[], budget: SECONDS },
    Criterion { name: "cover properties", suite: Suite::Covers, checks: &[], budget: minutes(10) },
    Criterion { name: "cofinality of spinal monos", suite: Suite::Cofinality, checks: &[], budget: minutes(10) },
    Criterion { name: "q-posets", suite: Suite::QPosets, checks: &[], budget: minutes(5) },
    Criterion { name: "opfibration and fibres", suite: Suite::Opfibration, checks: &[], budget: minutes(15) },
    Criterion { name: "shuffle counts", suite: Suite::Shuffles, checks: &[], budget: SECONDS },
    Criterion { name: "intertwiner", suite: Suite::Intertwiner, checks: &[], budget: minutes(5) },
    Criterion {
        name: "nerve laws",
        suite: Suite::Counterexample,
        checks: &["nerves.counts", "nerves.spines"],
        budget: SECONDS,
    },
    Criterion {
        name: "counterexample",
        suite: Suite::Counterexample,
        checks: &["counterexample.search"],
        budget: minutes(15),
    },
];

fn main() -> ExitCode {
    let config = VerifyConfig::default();
    assert_eq!(config.max_terminus, 5);
    let mut all_pass = true;
    for c in &CRITERIA {
        let start = Instant::now();
        let reports: Vec<VerificationReport> = run_suite(c.suite, &config)
            .into_iter()
            .filter(|r| c.checks.is_empty() || c.checks.contains(&r.check_id.as_str()))
            .collect();
        let elapsed = start.elapsed();
        let passed = !reports.is_empty()
            && reports.iter().all(|r| r.status == Status::Pass && r.is_well_formed())
            && elapsed <= c.budget;
        all_pass &= passed;
        println!(
            "{} {:<28} {:>8.1}s / {:>4}s  {}",
            if passed { "PASS" } else { "FAIL" },
            c.name,
            elapsed.as_secs_f64(),
            c.budget.as_secs(),
            reports.iter().map(|r| r.check_id.as_str()).collect::<Vec<_>>().join(", ")
        );
        for r in reports.iter().filter(|r| r.status != Status::Pass) {
            println!("    {r}");
        }
    }
    if all_pass {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
