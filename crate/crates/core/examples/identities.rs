// Verify a few catalogued series identities in the exact ring.

use qcongruence::catalogue::build_display;
use qcongruence::engine::verify_identity;
use qcongruence::Ring;

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let order = 200;
    for id in ["eq-2-2", "eq-2-3", "eq-2-4", "eq-2-5", "eq-2-10", "eq-a-2"] {
        let chain = build_display(id, Ring::Exact, order).ok_or("not a series display")??;
        for rhs in &chain.rhs {
            let report = verify_identity(&chain.lhs, rhs, order)?.labeled(id, "exact");
            println!("{report}");
            if !report.passed() {
                return Err(format!("{id} failed").into());
            }
        }
    }
    Ok(())
}

fn main() {
    if let Err(e) = run_example() {
        eprintln!("error: {e}");
        std::process::exit(1);
    }
}
