// Expand the basic building blocks and print their leading terms.

use qcongruence::engine::{series_c, series_ck};
use qcongruence::mock_theta::MockThetaId;
use qcongruence::qproducts::{eta, pentagonal_series};
use qcongruence::{Ring, Series};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let order = 16;
    let f1 = eta(Ring::Exact, &[(1, 1)], order)?;
    assert_eq!(f1, pentagonal_series(Ring::Exact, 1, order)?);
    println!("f_1           = {f1}");
    println!(
        "f_2 f_4 / f_1^2 = {}",
        eta(Ring::Exact, &[(2, 1), (4, 1), (1, -2)], order)?
    );
    for id in [MockThetaId::Omega, MockThetaId::B, MockThetaId::F3] {
        println!("{id:<13} = {}", id.expand(Ring::Exact, order)?);
    }
    println!(
        "omega(-q^4)   = {}",
        MockThetaId::Omega.expand_at(Ring::Exact, -1, 4, order)?
    );
    let c = series_c(Ring::Exact, order)?;
    println!("C             = {c}");
    println!("C_2           = {}", series_ck(Ring::Exact, 2, order)?);

    // the same series in Z/2^64 keeps only residues
    let c64: Series = series_c(Ring::MOD64, 4000)?;
    println!("c(3999) mod 8 = {}", c64.residue(3999, 8)?);
    Ok(())
}

fn main() {
    if let Err(e) = run_example() {
        eprintln!("error: {e}");
        std::process::exit(1);
    }
}
