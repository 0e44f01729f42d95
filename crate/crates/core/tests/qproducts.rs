use qcongruence::catalogue::build_display;
use qcongruence::engine::{verify_congruent, verify_identity};
use qcongruence::qproducts::{eta, euler_fm, pentagonal_series};
use qcongruence::Ring;

fn holds(id: &str, order: usize) {
    let chain = build_display(id, Ring::Exact, order).unwrap().unwrap();
    for rhs in &chain.rhs {
        let report = verify_identity(&chain.lhs, rhs, order).unwrap();
        assert!(report.passed(), "{id}: {report}");
    }
}

#[test]
fn two_dissections_of_powers_of_f1() {
    for id in ["eq-2-6", "eq-2-7", "eq-2-14"] {
        holds(id, 400);
    }
}

#[test]
fn frobenius_congruence_for_powers_of_two() {
    let order = 300;
    for k in [1usize, 2, 4] {
        for m in 1..=5u32 {
            let lhs = eta(Ring::MOD64, &[(k, 1 << m)], order).unwrap();
            let rhs = eta(Ring::MOD64, &[(2 * k, 1 << (m - 1))], order).unwrap();
            let report = verify_congruent(&lhs, &rhs, 1 << m, order).unwrap();
            assert!(report.passed(), "k={k} m={m}: {report}");
        }
    }
    // one power short of the modulus is not enough
    let lhs = eta(Ring::MOD64, &[(1, 4)], order).unwrap();
    let rhs = eta(Ring::MOD64, &[(2, 2)], order).unwrap();
    assert!(!verify_congruent(&lhs, &rhs, 8, order).unwrap().passed());
}

#[test]
fn pentagonal_series_matches_product() {
    for m in [1, 2, 4, 8, 16] {
        assert_eq!(
            pentagonal_series(Ring::Exact, m, 500).unwrap(),
            euler_fm(Ring::Exact, m, 500).unwrap(),
            "m = {m}"
        );
    }
}

#[test]
fn exact_and_wrapped_products_agree() {
    let pairs = [(1, 2), (4, 8), (2, -5), (8, -4)];
    let exact = eta(Ring::Exact, &pairs, 300).unwrap();
    let wrapped = eta(Ring::MOD64, &pairs, 300).unwrap();
    assert_eq!(exact.reduce_to(Ring::MOD64).unwrap(), wrapped);
}
