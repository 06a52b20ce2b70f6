//! Build a small verification suite in code, run it, and print the CSV report.

use mvlaguerre::verify::suite::{run_suite, SuiteConfig, SuiteEntry, SuiteOptions};
use mvlaguerre::verify::Params;

fn main() {
    let params = |args: &[&str]| Params::from_args(args).expect("valid parameters");
    let mut sampled = SuiteEntry::new("prop1_general", params(&["k=2"]));
    sampled.samples = Some(4);
    let mut diag = SuiteEntry::new("diagonal_gf", params(&["beta=0.7", "x=0.4,0.9", "u=0.08"]));
    diag.expected_max_rel_residual = Some(1e-9);
    let config = SuiteConfig {
        seed: 42,
        budget: None,
        entries: vec![sampled, diag, SuiteEntry::new("hardy_hille", params(&["k=3", "alpha=2"]))],
    };

    let report = run_suite(&config, &SuiteOptions::default()).expect("suite runs");
    report.write_csv(std::io::stdout()).expect("stdout");
    eprintln!("{}", report.summary);
}
