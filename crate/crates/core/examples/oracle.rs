// List the counted two-color partitions of a small n and compare the brute
// force counts with the series coefficients.

use num_bigint::BigInt;
use qcongruence::engine::{series_c, series_ck};
use qcongruence::oracle::{count_c_limit, count_ck, enumerate_ck};
use qcongruence::Ring;

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let n = 5;
    println!("partitions counted by c({n}):");
    enumerate_ck(None, n, |p| println!("  {p}"));

    let n_max = 20;
    let c = series_c(Ring::Exact, n_max as usize + 1)?;
    let c2 = series_ck(Ring::Exact, 2, n_max as usize + 1)?;
    println!("n\tc(n)\tc(2,n)");
    for n in 0..=n_max {
        let (limit, two) = (count_c_limit(n), count_ck(2, n));
        println!("{n}\t{limit}\t{two}");
        if c.coefficient(n as usize)? != BigInt::from(limit)
            || c2.coefficient(n as usize)? != BigInt::from(two)
        {
            return Err(format!("series and enumeration disagree at n = {n}").into());
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
