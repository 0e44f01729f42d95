// Search for progressions A n + B on which c vanishes modulo 4 or 8.
// Hits are empirical and unproven beyond the sampled range.

use qcongruence::engine::{scan_progressions, series_c};
use qcongruence::Ring;

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let (a_max, n_max) = (32u64, 200u64);
    let c = series_c(Ring::MOD64, (a_max * (n_max + 1)) as usize)?;
    let hits = scan_progressions(&c, a_max, &[4, 8], n_max)?;
    println!(
        "# empirical, unproven: {} candidates with A <= {a_max}, n <= {n_max}",
        hits.len()
    );
    for h in &hits {
        println!("c({}n+{}) = 0 mod {}", h.a, h.b, h.modulus);
    }
    for (a, b, m) in [(8, 4, 4), (8, 6, 8), (16, 13, 4), (32, 23, 8)] {
        if !hits.iter().any(|h| (h.a, h.b, h.modulus) == (a, b, m)) {
            return Err(format!("scan missed c({a}n+{b}) mod {m}").into());
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
