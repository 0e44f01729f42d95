// Parse, print and evaluate expressions in the series language.

use qcongruence::expr::{eval, parse};
use qcongruence::Ring;

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let sources = [
        "2*q*f[2]*f[4]/f[1]^2*B(-q) - q*omega(-q)",
        "f3(q^8) - 2*q*omega(-q) - 2*q^3*omega(-q^4)",
        "f[1]^2*f[4]^8/(f[2]^5*f[8]^4)",
        "D[2,1](C)",
        "poch(-q; q^2)^2 / poch(q; q^2; 3)",
    ];
    for src in sources {
        let e = parse(src)?;
        println!("{e}");
        println!("  = {}", eval(&e, 12, Ring::Exact)?);
    }

    let diff = eval(
        &parse("C - (2*q*f[2]*f[4]/f[1]^2*B(-q) - q*omega(-q))")?,
        300,
        Ring::Exact,
    )?;
    println!(
        "C minus its mock theta form vanishes to O(q^300): {}",
        diff.is_zero()
    );

    match parse("f[1]^2 / 1.5") {
        Err(e) => println!("rejected: {e}"),
        Ok(_) => return Err("decimal literal accepted".into()),
    }
    Ok(())
}

fn main() {
    if let Err(e) = run_example() {
        eprintln!("error: {e}");
        std::process::exit(1);
    }
}
