// Run the full claim catalogue and print one line per claim.

use qcongruence::catalogue::{run_suite, SuiteConfig};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let report = run_suite(&SuiteConfig::default())?;
    for claim in &report.claims {
        println!("{claim}");
    }
    let passed = report.claims.iter().filter(|c| c.passed()).count();
    println!("{passed}/{} claims pass", report.claims.len());
    if !report.all_pass() {
        return Err(format!("{} claims did not pass", report.claims.len() - passed).into());
    }
    Ok(())
}

fn main() {
    if let Err(e) = run_example() {
        eprintln!("error: {e}");
        std::process::exit(1);
    }
}
