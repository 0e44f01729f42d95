// Check vanishing progressions and a relation of C(q) in Z/2^64, plus one
// progression that is false and reports a witness.

use qcongruence::engine::{
    check_progression, check_relation, series_c, ProgressionClaim, RelationClaim,
};
use qcongruence::Ring;

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let order = 8000;
    let c = series_c(Ring::MOD64, order)?;
    for (a, b, modulus) in [(8, 4, 4), (8, 6, 8), (16, 13, 4), (32, 23, 8), (64, 51, 4)] {
        let claim = ProgressionClaim::in_range(a, b, modulus, order).ok_or("order too small")?;
        println!(
            "{}",
            check_progression(&c, &claim)?.labeled(format!("c({a}n+{b})"), "vanishes")
        );
    }
    let relation =
        RelationClaim::in_range((16, 11), -1, (4, 3), 8, order).ok_or("order too small")?;
    println!(
        "{}",
        check_relation(&c, &relation)?.labeled("c(16n+11)", "= -c(4n+3)")
    );

    // c(8n+4) is divisible by 4 but not by 8
    let wrong = ProgressionClaim {
        a: 8,
        b: 4,
        modulus: 8,
        n_max: 100,
    };
    let report = check_progression(&c, &wrong)?;
    println!("{}", report.clone().labeled("c(8n+4)", "mod 8"));
    if report.passed() {
        return Err("expected a counterexample".into());
    }
    Ok(())
}

fn main() {
    if let Err(e) = run_example() {
        eprintln!("error: {e}");
        std::process::exit(1);
    }
}
