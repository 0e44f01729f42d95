//! The fixed table of identities and congruences about `C(q)` and the suite
//! that evaluates it.
//!
//! Each entry carries its check type: exact series identity, coefficientwise
//! congruence of series, vanishing progression, relation between two
//! progressions, infinite family (checked for `k <= k_max`), or a cross-check
//! against brute-force enumeration. Displays containing `1/2` are scaled by 2.
//! A display written as a chain `L ≡ R₁ ≡ R₂ ...` passes only if `L` agrees
//! with every `Rᵢ`.

use std::collections::HashMap;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::engine::{
    check_family, check_progression, check_relation, series_c, series_ck, verify_congruent,
    verify_identity, ClaimReport, FamilyClaim, FamilyRelation, Params, ProgressionClaim,
    RelationClaim, Status,
};
use crate::error::{CheckError, SeriesError};
use crate::mock_theta::{b_appell, b_eulerian, MockThetaId};
use crate::oracle::{count_c_limit, count_ck, KBound};
use crate::qproducts::eta;
use crate::ring::Ring;
use crate::series::{inner_order, Series};

type Result<T> = std::result::Result<T, SeriesError>;

/// Left side and one or more right sides of a display.
pub struct Chain {
    pub lhs: Series,
    pub rhs: Vec<Series>,
}

type Builder = fn(&mut Workspace) -> Result<Chain>;

#[derive(Clone, Copy)]
pub enum Check {
    Identity(Builder),
    Congruence {
        modulus: u64,
        build: Builder,
    },
    /// `f_k^(2^m) ≡ f_2k^(2^(m-1)) (mod 2^m)`.
    PowerOfTwo {
        k: usize,
        m: u32,
    },
    Progression {
        a: u64,
        b: u64,
        modulus: u64,
    },
    Relation {
        lhs: (u64, u64),
        sign: i32,
        rhs: (u64, u64),
        modulus: u64,
    },
    Family(FamilyClaim),
    Oracle(KBound),
}

#[derive(Clone, Copy)]
pub struct Entry {
    pub id: &'static str,
    pub equation: &'static str,
    pub check: Check,
    pub note: Option<&'static str>,
}

impl Entry {
    const fn new(id: &'static str, equation: &'static str, check: Check) -> Self {
        Entry {
            id,
            equation,
            check,
            note: None,
        }
    }

    const fn noted(mut self, note: &'static str) -> Self {
        self.note = Some(note);
        self
    }

    /// Entries checked on the large-order scan series.
    pub fn is_scan(&self) -> bool {
        matches!(
            self.check,
            Check::Progression { .. } | Check::Relation { .. } | Check::Family(_)
        )
    }
}

/// Builds and caches the series that the displays are made of, all in one
/// ring and truncated to one order.
pub struct Workspace {
    ring: Ring,
    order: usize,
    cache: HashMap<(String, usize), Series>,
}

impl Workspace {
    pub fn new(ring: Ring, order: usize) -> Self {
        Workspace {
            ring,
            order,
            cache: HashMap::new(),
        }
    }

    pub fn ring(&self) -> Ring {
        self.ring
    }

    pub fn order(&self) -> usize {
        self.order
    }

    fn cached(
        &mut self,
        key: &str,
        order: usize,
        build: impl FnOnce(Ring, usize) -> Result<Series>,
    ) -> Result<Series> {
        // a longer cached expansion serves any shorter request
        if let Some(s) = self
            .cache
            .iter()
            .filter(|((k, o), _)| k == key && *o >= order)
            .map(|(_, s)| s)
            .next()
        {
            return Ok(s.truncate(order));
        }
        let s = build(self.ring, order)?;
        self.cache.insert((key.to_string(), order), s.clone());
        Ok(s)
    }

    /// `Π f_m^(e_m)`
    pub fn eta(&mut self, pairs: &[(usize, i64)]) -> Result<Series> {
        let key = format!("eta{pairs:?}");
        let order = self.order;
        self.cached(&key, order, |r, n| eta(r, pairs, n))
    }

    pub fn int(&self, value: i64) -> Result<Series> {
        Series::constant(self.ring, &BigInt::from(value), self.order)
    }

    pub fn c(&mut self) -> Result<Series> {
        self.c_part(1, 0)
    }

    /// `Σ c(m n + r) q^n`
    pub fn c_part(&mut self, m: usize, r: usize) -> Result<Series> {
        let needed = m * self.order.saturating_sub(1) + r + 1;
        let order = self.order;
        Ok(self
            .cached("C", needed, series_c)?
            .dissect(m, r)?
            .truncate(order))
    }

    pub fn b(&mut self) -> Result<Series> {
        self.b_part(1, 0)
    }

    /// `Σ a_B(m n + r) q^n`
    pub fn b_part(&mut self, m: usize, r: usize) -> Result<Series> {
        let needed = m * self.order.saturating_sub(1) + r + 1;
        let order = self.order;
        Ok(self
            .cached("B", needed, b_eulerian)?
            .dissect(m, r)?
            .truncate(order))
    }

    /// `Σ_{n ≡ r (mod m)} a_B(n) q^n`, same order.
    pub fn b_class(&mut self, m: usize, r: usize) -> Result<Series> {
        let b = self.b()?;
        let values = b
            .coefficients()
            .into_iter()
            .enumerate()
            .map(|(n, c)| if n % m == r { c } else { BigInt::from(0) })
            .collect();
        Series::from_bigints(self.ring, values)
    }

    /// `g(sign q^power)` for a mock theta function `g`.
    pub fn mock(&mut self, id: MockThetaId, sign: i32, power: usize) -> Result<Series> {
        let inner = inner_order(self.order, power).max(1);
        let order = self.order;
        Ok(self
            .cached(id.name(), inner, |r, n| id.expand(r, n))?
            .substitute_power(power, sign)?
            .truncate(order))
    }
}

fn lin(terms: &[(i64, usize, &Series)]) -> Result<Series> {
    // Σ coefficient * q^shift * series
    let (first, rest) = terms.split_first().expect("nonempty combination");
    let mut acc = first.2.shift(first.1).scalar_mul(&BigInt::from(first.0));
    for &(c, shift, s) in rest {
        acc = acc.add(&s.shift(shift).scalar_mul(&BigInt::from(c)))?;
    }
    Ok(acc)
}

fn chain(lhs: Series, rhs: Vec<Series>) -> Result<Chain> {
    Ok(Chain { lhs, rhs })
}

// 1/f_1^2 split by parity
fn inverse_f1_squared(ws: &mut Workspace) -> Result<Series> {
    let even = ws.eta(&[(8, 5), (2, -5), (16, -2)])?;
    let odd = ws.eta(&[(4, 2), (16, 2), (2, -5), (8, -1)])?;
    lin(&[(1, 0, &even), (2, 1, &odd)])
}

// f_1^2 split by parity
fn f1_squared(ws: &mut Workspace) -> Result<Series> {
    let even = ws.eta(&[(2, 1), (8, 5), (4, -2), (16, -2)])?;
    let odd = ws.eta(&[(2, 1), (16, 2), (8, -1)])?;
    lin(&[(1, 0, &even), (-2, 1, &odd)])
}

// 1/f_1^4 split by parity
fn inverse_f1_fourth(ws: &mut Workspace) -> Result<Series> {
    let even = ws.eta(&[(4, 14), (2, -14), (8, -4)])?;
    let odd = ws.eta(&[(4, 2), (8, 4), (2, -10)])?;
    lin(&[(1, 0, &even), (4, 1, &odd)])
}

// 2q f_2 f_4 / f_1^2 · B(-q), the first term of C(q)
fn b_term(ws: &mut Workspace) -> Result<Series> {
    let e = ws.eta(&[(2, 1), (4, 1), (1, -2)])?;
    let b = ws.mock(MockThetaId::B, -1, 1)?;
    Ok(e.mul(&b)?.shift(1).scalar_mul(&BigInt::from(2)))
}

// 2q f_2 f_4 (1/f_1^2 dissected) (Σ a_B(2n) q^2n - Σ a_B(2n+1) q^(2n+1))
fn b_term_dissected(ws: &mut Workspace) -> Result<Series> {
    let f2f4 = ws.eta(&[(2, 1), (4, 1)])?;
    let inv = inverse_f1_squared(ws)?;
    let parts = ws.b_class(2, 0)?.sub(&ws.b_class(2, 1)?)?;
    Ok(f2f4
        .mul(&inv)?
        .mul(&parts)?
        .shift(1)
        .scalar_mul(&BigInt::from(2)))
}

fn eq_2_2(ws: &mut Workspace) -> Result<Chain> {
    let c = ws.c()?;
    let w = ws.mock(MockThetaId::Omega, -1, 1)?;
    let rhs = lin(&[(1, 0, &b_term(ws)?), (-1, 1, &w)])?;
    chain(c, vec![rhs])
}

fn eq_2_3(ws: &mut Workspace) -> Result<Chain> {
    let (r, n) = (ws.ring(), ws.order());
    chain(b_eulerian(r, n)?, vec![b_appell(r, n)?])
}

fn theta_quotient(ws: &mut Workspace) -> Result<Series> {
    ws.eta(&[(1, 2), (4, 8), (2, -5), (8, -4)])
}

fn eq_2_4(ws: &mut Workspace) -> Result<Chain> {
    let f8 = ws.mock(MockThetaId::F3, 1, 8)?;
    let w1 = ws.mock(MockThetaId::Omega, -1, 1)?;
    let w4 = ws.mock(MockThetaId::Omega, -1, 4)?;
    let lhs = lin(&[(1, 0, &f8), (-2, 1, &w1), (-2, 3, &w4)])?;
    chain(lhs, vec![theta_quotient(ws)?])
}

fn eq_2_5(ws: &mut Workspace) -> Result<Chain> {
    let c = ws.c()?;
    let bt = b_term(ws)?;
    let w4 = ws.mock(MockThetaId::Omega, -1, 4)?;
    let wr = theta_quotient(ws)?;
    let f8 = ws.mock(MockThetaId::F3, 1, 8)?;
    let rhs = lin(&[(2, 0, &bt), (2, 3, &w4), (1, 0, &wr), (-1, 0, &f8)])?;
    chain(c.scalar_mul(&BigInt::from(2)), vec![rhs])
}

fn eq_2_6(ws: &mut Workspace) -> Result<Chain> {
    chain(ws.eta(&[(1, -2)])?, vec![inverse_f1_squared(ws)?])
}

fn eq_2_7(ws: &mut Workspace) -> Result<Chain> {
    chain(ws.eta(&[(1, 2)])?, vec![f1_squared(ws)?])
}

fn eq_2_8(ws: &mut Workspace) -> Result<Chain> {
    let c = ws.c()?;
    let bt = b_term_dissected(ws)?;
    let w4 = ws.mock(MockThetaId::Omega, -1, 4)?;
    let f8 = ws.mock(MockThetaId::F3, 1, 8)?;
    let tail = ws.eta(&[(4, 8), (2, -5), (8, -4)])?.mul(&f1_squared(ws)?)?;
    let rhs = lin(&[(2, 0, &bt), (2, 3, &w4), (-1, 0, &f8), (1, 0, &tail)])?;
    chain(c.scalar_mul(&BigInt::from(2)), vec![rhs])
}

fn eq_2_9(ws: &mut Workspace) -> Result<Chain> {
    let lhs = ws.c_part(2, 1)?;
    let even = ws
        .eta(&[(2, 1), (4, 5), (1, -4), (8, -2)])?
        .mul(&ws.b_part(2, 0)?)?;
    let odd = ws
        .eta(&[(2, 3), (8, 2), (1, -4), (4, -1)])?
        .mul(&ws.b_part(2, 1)?)?;
    let w2 = ws.mock(MockThetaId::Omega, -1, 2)?;
    let last = ws.eta(&[(2, 8), (8, 2), (1, -4), (4, -5)])?;
    let rhs = lin(&[(2, 0, &even), (-4, 1, &odd), (1, 1, &w2), (-1, 0, &last)])?;
    chain(lhs, vec![rhs])
}

fn eq_2_10(ws: &mut Workspace) -> Result<Chain> {
    chain(ws.b_part(2, 0)?, vec![ws.eta(&[(2, 5), (1, -4)])?])
}

fn eq_2_11(ws: &mut Workspace) -> Result<Chain> {
    chain(ws.b_part(2, 1)?, vec![ws.int(0)?])
}

fn b_mod_2(ws: &mut Workspace) -> Result<Chain> {
    let order = ws.order();
    let mut values = vec![BigInt::from(0); order];
    for n in 0.. {
        let e = 2 * n * n + 2 * n;
        if e >= order {
            break;
        }
        values[e] = BigInt::from(1);
    }
    chain(ws.b()?, vec![Series::from_bigints(ws.ring(), values)?])
}

fn eq_2_12(ws: &mut Workspace) -> Result<Chain> {
    let lhs = ws.c_part(2, 1)?;
    let w2 = ws.mock(MockThetaId::Omega, -1, 2)?;
    let last = ws.eta(&[(2, 8), (8, 2), (1, -4), (4, -5)])?;
    let first = ws.eta(&[(2, 6), (4, 5), (1, -8), (8, -2)])?;
    let reduced = ws.eta(&[(2, 2), (4, 5), (8, -2)])?;
    let r1 = lin(&[(2, 0, &first), (1, 1, &w2), (-1, 0, &last)])?;
    let r2 = lin(&[(2, 0, &reduced), (1, 1, &w2), (-1, 0, &last)])?;
    chain(lhs, vec![r1, r2])
}

fn eq_2_14(ws: &mut Workspace) -> Result<Chain> {
    chain(ws.eta(&[(1, -4)])?, vec![inverse_f1_fourth(ws)?])
}

fn eq_2_15(ws: &mut Workspace) -> Result<Chain> {
    let lhs = ws.c_part(2, 1)?.shift(1);
    let reduced = ws.eta(&[(2, 2), (4, 5), (8, -2)])?;
    let w2 = ws.mock(MockThetaId::Omega, -1, 2)?;
    let tail = ws
        .eta(&[(2, 8), (8, 2), (4, -5)])?
        .mul(&inverse_f1_fourth(ws)?)?;
    let rhs = lin(&[(2, 1, &reduced), (1, 2, &w2), (-1, 1, &tail)])?;
    chain(lhs, vec![rhs])
}

fn eq_2_16(ws: &mut Workspace) -> Result<Chain> {
    let lhs = ws.c_part(4, 3)?.shift(1);
    let w1 = ws.mock(MockThetaId::Omega, -1, 1)?;
    let long = ws.eta(&[(4, 6), (1, -2), (2, -3)])?;
    let short = ws.eta(&[(4, 4)])?;
    let r1 = lin(&[(1, 1, &w1), (-4, 1, &long)])?;
    let r2 = lin(&[(1, 1, &w1), (-4, 1, &short)])?;
    chain(lhs, vec![r1, r2])
}

fn eq_2_17(ws: &mut Workspace) -> Result<Chain> {
    let lhs = ws.mock(MockThetaId::Omega, -1, 1)?.shift(1);
    let rhs = b_term(ws)?.sub(&ws.c()?)?;
    chain(lhs, vec![rhs])
}

fn eq_2_18(ws: &mut Workspace) -> Result<Chain> {
    let lhs = ws.c_part(4, 3)?.shift(1);
    let c = ws.c()?;
    let f4 = ws.eta(&[(4, 4)])?;
    let r1 = lin(&[(1, 0, &b_term(ws)?), (-1, 0, &c), (-4, 1, &f4)])?;
    let r2 = lin(&[(1, 0, &b_term_dissected(ws)?), (-1, 0, &c), (-4, 1, &f4)])?;
    chain(lhs, vec![r1, r2])
}

fn eq_2_18_1(ws: &mut Workspace) -> Result<Chain> {
    let lhs = ws.c_part(8, 3)?;
    let odd_c = ws.c_part(2, 1)?;
    let f2_4 = ws.eta(&[(2, 4)])?;
    let even = ws
        .eta(&[(2, 1), (4, 5), (1, -4), (8, -2)])?
        .mul(&ws.b_part(2, 0)?)?;
    let alternating = ws.b_part(2, 1)?.substitute_power(1, -1)?;
    let odd = ws
        .eta(&[(2, 3), (8, 2), (1, -4), (4, -1)])?
        .mul(&alternating)?;
    let r1 = lin(&[
        (2, 0, &even),
        (-4, 1, &odd),
        (-1, 0, &odd_c),
        (-4, 0, &f2_4),
    ])?;
    let merged = ws.eta(&[(2, 6), (4, 5), (1, -8), (8, -2)])?;
    let r2 = lin(&[(2, 0, &merged), (-1, 0, &odd_c), (-4, 0, &f2_4)])?;
    let reduced = ws.eta(&[(2, 2), (4, 5), (8, -2)])?;
    let r3 = lin(&[(6, 0, &reduced), (-1, 0, &odd_c)])?;
    chain(lhs, vec![r1, r2, r3])
}

fn eq_a_1(ws: &mut Workspace) -> Result<Chain> {
    let lhs = ws.c_part(8, 7)?.shift(1);
    let even_c = ws.c_part(2, 0)?;
    let b_odd = ws.b_part(2, 1)?;
    let t1 = ws
        .eta(&[(2, 3), (8, 2), (1, -4), (4, -1)])?
        .mul(&ws.b_part(2, 0)?)?;
    let t2 = ws.eta(&[(2, 1), (4, 5), (1, -4), (8, -2)])?.mul(&b_odd)?;
    let r1 = lin(&[(4, 1, &t1), (-2, 1, &t2), (-1, 0, &even_c)])?;
    let u1 = ws.eta(&[(4, 1), (8, 2)])?;
    let u2 = ws.eta(&[(4, 1), (2, -1)])?.mul(&b_odd)?;
    let r2 = lin(&[(4, 1, &u1), (-2, 1, &u2), (-1, 0, &even_c)])?;
    chain(lhs, vec![r1, r2])
}

fn eq_2_24(ws: &mut Workspace) -> Result<Chain> {
    let lhs = ws.c_part(8, 7)?.shift(1);
    chain(lhs, vec![ws.c_part(2, 0)?.negate()])
}

fn eq_a_2(ws: &mut Workspace) -> Result<Chain> {
    let rhs = ws.eta(&[(2, 8), (1, -7)])?.scalar_mul(&BigInt::from(2));
    chain(ws.b_part(4, 1)?, vec![rhs])
}

fn c_16n_7(ws: &mut Workspace) -> Result<Chain> {
    let lhs = ws.c_part(16, 7)?;
    let c42 = ws.c_part(4, 2)?;
    let f2f4 = ws.eta(&[(2, 1), (4, 2)])?;
    let t = ws.eta(&[(2, 1), (1, -1)])?.mul(&ws.b_part(4, 1)?)?;
    let u = ws.eta(&[(2, 9), (1, -8)])?;
    let r1 = lin(&[(4, 0, &f2f4), (-2, 0, &t), (-1, 0, &c42)])?;
    let r2 = lin(&[(4, 0, &f2f4), (-4, 0, &u), (-1, 0, &c42)])?;
    chain(lhs, vec![r1, r2, c42.negate()])
}

fn c_16n_3(ws: &mut Workspace) -> Result<Chain> {
    let lhs = ws.c_part(16, 3)?;
    let c41 = ws.c_part(4, 1)?;
    let t = ws.eta(&[(1, 2), (2, 5), (4, -2)])?;
    let f4 = ws.eta(&[(4, 1)])?;
    let r1 = lin(&[(6, 0, &t), (-1, 0, &c41)])?;
    let r2 = lin(&[(2, 0, &f4), (-1, 0, &c41)])?;
    chain(lhs, vec![r1, r2])
}

const fn family(base: u64, exp_offset: u32, modulus: u64) -> FamilyClaim {
    FamilyClaim {
        exp_scale: 2,
        exp_offset,
        base,
        modulus,
        relation: None,
        k_max: 0,
    }
}

/// The claim table, in display order. Family entries carry `k_max = 0`; the
/// suite substitutes its own bound.
pub fn catalogue() -> Vec<Entry> {
    use Check::*;
    let mut entries = vec![
        Entry::new(
            "eq-1-2",
            "(1-2)",
            Progression {
                a: 8,
                b: 4,
                modulus: 4,
            },
        ),
        Entry::new(
            "eq-1-3",
            "(1-3)",
            Progression {
                a: 8,
                b: 6,
                modulus: 8,
            },
        ),
        Entry::new(
            "eq-1-4",
            "(1-4)",
            Progression {
                a: 16,
                b: 13,
                modulus: 4,
            },
        ),
        Entry::new(
            "eq-1-5",
            "(1-5)",
            Progression {
                a: 32,
                b: 23,
                modulus: 8,
            },
        ),
        Entry::new("eq-1-6", "(1-6)", Family(family(11, 3, 4))),
        Entry::new("eq-1-7", "(1-7)", Family(family(17, 3, 8))),
        Entry::new("eq-1-8", "(1-8)", Family(family(38, 4, 4))),
        Entry::new(
            "eq-2-1",
            "(2-1)",
            Family(FamilyClaim {
                exp_scale: 2,
                exp_offset: 2,
                base: 8,
                modulus: 8,
                relation: Some(FamilyRelation {
                    rhs: (4, 3),
                    alternating: true,
                }),
                k_max: 0,
            }),
        ),
        Entry::new("eq-2-2", "(2-2)", Identity(eq_2_2)),
        Entry::new("eq-2-3", "(2-3)", Identity(eq_2_3)).noted("Eulerian vs bilateral form of B"),
        Entry::new("eq-2-4", "(2-4)", Identity(eq_2_4)),
        Entry::new("eq-2-5", "(2-5)", Identity(eq_2_5)).noted("both sides scaled by 2"),
        Entry::new("eq-2-6", "(2-6)", Identity(eq_2_6)),
        Entry::new("eq-2-7", "(2-7)", Identity(eq_2_7)),
        Entry::new("eq-2-8", "(2-8)", Identity(eq_2_8)).noted("both sides scaled by 2"),
        Entry::new("eq-2-9", "(2-9)", Identity(eq_2_9)),
        Entry::new("eq-2-10", "(2-10)", Identity(eq_2_10)),
        Entry::new(
            "eq-2-11",
            "(2-11)",
            Congruence {
                modulus: 2,
                build: eq_2_11,
            },
        ),
        Entry::new(
            "b-mod-2",
            "B(q) mod 2",
            Congruence {
                modulus: 2,
                build: b_mod_2,
            },
        ),
        Entry::new(
            "eq-2-12",
            "(2-12)",
            Congruence {
                modulus: 8,
                build: eq_2_12,
            },
        ),
    ];
    for k in [1, 2, 4] {
        for m in 1..=5 {
            entries.push(Entry::new("eq-2-13", "(2-13)", PowerOfTwo { k, m }));
        }
    }
    entries.extend([
        Entry::new("eq-2-14", "(2-14)", Identity(eq_2_14)),
        Entry::new(
            "eq-2-15",
            "(2-15)",
            Congruence {
                modulus: 8,
                build: eq_2_15,
            },
        ),
        Entry::new(
            "eq-2-16",
            "(2-16)",
            Congruence {
                modulus: 8,
                build: eq_2_16,
            },
        ),
        Entry::new("eq-2-17", "(2-17)", Identity(eq_2_17)),
        Entry::new(
            "eq-2-18",
            "(2-18)",
            Congruence {
                modulus: 8,
                build: eq_2_18,
            },
        ),
        Entry::new(
            "eq-2-18-1",
            "(2-18-1)",
            Congruence {
                modulus: 8,
                build: eq_2_18_1,
            },
        ),
        Entry::new(
            "eq-2-19",
            "(2-19)",
            Relation {
                lhs: (16, 11),
                sign: -1,
                rhs: (4, 3),
                modulus: 8,
            },
        ),
        Entry::new(
            "eq-2-21",
            "(2-21)",
            Progression {
                a: 32,
                b: 15,
                modulus: 4,
            },
        ),
        Entry::new(
            "eq-2-22",
            "(2-22)",
            Progression {
                a: 32,
                b: 23,
                modulus: 8,
            },
        ),
        Entry::new(
            "eq-2-23",
            "(2-23)",
            Progression {
                a: 64,
                b: 51,
                modulus: 4,
            },
        ),
        Entry::new(
            "eq-a-1",
            "(a-1)",
            Congruence {
                modulus: 8,
                build: eq_a_1,
            },
        ),
        Entry::new(
            "eq-2-24",
            "(2-24)",
            Congruence {
                modulus: 4,
                build: eq_2_24,
            },
        ),
        Entry::new(
            "eq-2-25",
            "(2-25)",
            Relation {
                lhs: (8, 7),
                sign: -1,
                rhs: (2, 2),
                modulus: 4,
            },
        ),
        Entry::new("eq-a-2", "(a-2)", Identity(eq_a_2)),
        Entry::new(
            "c-16n+7",
            "c(16n+7) series, mod 8",
            Congruence {
                modulus: 8,
                build: c_16n_7,
            },
        ),
        Entry::new(
            "eq-2-26",
            "(2-26)",
            Relation {
                lhs: (16, 7),
                sign: -1,
                rhs: (4, 2),
                modulus: 8,
            },
        ),
        Entry::new(
            "c-16n+3",
            "c(16n+3) series, mod 4",
            Congruence {
                modulus: 4,
                build: c_16n_3,
            },
        ),
        Entry::new(
            "eq-2-27",
            "(2-27)",
            Relation {
                lhs: (32, 19),
                sign: -1,
                rhs: (8, 5),
                modulus: 4,
            },
        ),
        Entry::new(
            "oracle-k1",
            "C_1(q) vs enumeration",
            Oracle(KBound::Finite(1)),
        ),
        Entry::new(
            "oracle-k2",
            "C_2(q) vs enumeration",
            Oracle(KBound::Finite(2)),
        ),
        Entry::new(
            "oracle-k3",
            "C_3(q) vs enumeration",
            Oracle(KBound::Finite(3)),
        ),
        Entry::new("oracle-limit", "C(q) vs enumeration", Oracle(KBound::Limit)),
    ]);
    entries
}

/// Orders and bounds for one suite run.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SuiteConfig {
    /// Order of the exact identity checks.
    pub order_identity: usize,
    /// Order of the series congruences (checked in `Z/2^64`).
    pub order_congruence: usize,
    /// Order of `C(q)` in `Z/2^64` for progressions, relations and families.
    pub order_scan: usize,
    pub k_max: u32,
    /// Largest `n` compared against brute-force enumeration.
    pub oracle_n_max: u32,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig {
            order_identity: 400,
            order_congruence: 200,
            order_scan: 40_000,
            k_max: 2,
            oracle_n_max: 25,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SuiteReport {
    pub order_identity: usize,
    pub order_congruence: usize,
    pub order_scan: usize,
    pub k_max: u32,
    pub claims: Vec<ClaimReport>,
}

impl SuiteReport {
    pub fn all_pass(&self) -> bool {
        self.claims.iter().all(ClaimReport::passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &ClaimReport> {
        self.claims.iter().filter(|c| c.status == Status::Fail)
    }
}

fn run_chain(ws: &mut Workspace, build: Builder, modulus: Option<u64>) -> ClaimReport {
    let order = ws.order();
    let params = Params {
        order,
        ring: ws.ring().to_string(),
        modulus: modulus.map(|m| m.to_string()),
        ..Params::default()
    };
    let chain = match build(ws) {
        Ok(c) => c,
        Err(e) => return ClaimReport::order_too_small(params, &CheckError::Series(e)),
    };
    let mut last = None;
    for (line, rhs) in chain.rhs.iter().enumerate() {
        let outcome = match modulus {
            None => verify_identity(&chain.lhs, rhs, order),
            Some(m) => verify_congruent(&chain.lhs, rhs, m, order),
        };
        match outcome {
            Ok(report) if report.passed() => last = Some(report),
            Ok(report) => {
                let report = if chain.rhs.len() > 1 {
                    report.with_note(format!("right side #{} of the chain", line + 1))
                } else {
                    report
                };
                return report;
            }
            Err(e) => return ClaimReport::order_too_small(params, &e),
        }
    }
    last.unwrap_or_else(|| {
        ClaimReport::order_too_small(params, &CheckError::OrderTooSmall { needed: 0, order })
    })
}

fn power_of_two(k: usize, m: u32, order: usize) -> std::result::Result<ClaimReport, CheckError> {
    let mut ws = Workspace::new(Ring::MOD64, order);
    let lhs = ws.eta(&[(k, 1i64 << m)])?;
    let rhs = ws.eta(&[(2 * k, 1i64 << (m - 1))])?;
    let mut report = verify_congruent(&lhs, &rhs, 1u64 << m, order)?;
    report.params.k = Some(k as u32);
    Ok(report.with_note(format!(
        "f_{k}^{} vs f_{}^{}",
        1u64 << m,
        2 * k,
        1u64 << (m - 1)
    )))
}

fn oracle_check(k: KBound, n_max: u32) -> ClaimReport {
    let order = n_max as usize + 1;
    let series = match k {
        KBound::Finite(k) => series_ck(Ring::Exact, k as usize, order),
        KBound::Limit => series_c(Ring::Exact, order),
    }
    .expect("exact ring is valid");
    let mut report = ClaimReport {
        id: String::new(),
        equation: String::new(),
        status: Status::Pass,
        params: Params {
            k: match k {
                KBound::Finite(k) => Some(k),
                KBound::Limit => None,
            },
            n_max: Some(u64::from(n_max)),
            order,
            ring: Ring::Exact.to_string(),
            modulus: None,
        },
        witness: None,
        note: None,
    };
    for n in 0..=n_max {
        let counted = match k {
            KBound::Finite(k) => count_ck(k, n),
            KBound::Limit => count_c_limit(n),
        };
        let coefficient = series.coefficient(n as usize).expect("in range");
        if coefficient != BigInt::from(counted) {
            report.status = Status::Fail;
            report.witness = Some(crate::engine::Witness {
                n: u64::from(n),
                index: u64::from(n),
                value: coefficient.to_string(),
                other: Some(counted.to_string()),
                residue: (coefficient - BigInt::from(counted)).to_string(),
            });
            break;
        }
    }
    report
}

/// Run the progression, relation and family entries against an arbitrary
/// series (normally `C(q)` in `Z/2^64`).
pub fn scan_claims(series: &Series, k_max: u32) -> Vec<ClaimReport> {
    catalogue()
        .iter()
        .filter(|e| e.is_scan())
        .flat_map(|e| run_scan_entry(e, series, k_max))
        .collect()
}

fn run_scan_entry(entry: &Entry, series: &Series, k_max: u32) -> Vec<ClaimReport> {
    let order = series.order();
    let base_params = |modulus: u64| Params {
        order,
        ring: series.ring().to_string(),
        modulus: Some(modulus.to_string()),
        ..Params::default()
    };
    let reports = match entry.check {
        Check::Progression { a, b, modulus } => {
            vec![match ProgressionClaim::in_range(a, b, modulus, order) {
                Some(claim) => check_progression(series, &claim)
                    .unwrap_or_else(|e| ClaimReport::order_too_small(base_params(modulus), &e)),
                None => ClaimReport::order_too_small(
                    base_params(modulus),
                    &CheckError::OrderTooSmall { needed: b, order },
                ),
            }]
        }
        Check::Relation {
            lhs,
            sign,
            rhs,
            modulus,
        } => {
            vec![
                match RelationClaim::in_range(lhs, sign, rhs, modulus, order) {
                    Some(claim) => check_relation(series, &claim)
                        .unwrap_or_else(|e| ClaimReport::order_too_small(base_params(modulus), &e)),
                    None => ClaimReport::order_too_small(
                        base_params(modulus),
                        &CheckError::OrderTooSmall {
                            needed: lhs.1.max(rhs.1),
                            order,
                        },
                    ),
                },
            ]
        }
        Check::Family(f) => check_family(series, &FamilyClaim { k_max, ..f }),
        _ => Vec::new(),
    };
    reports.into_iter().map(|r| label(r, entry)).collect()
}

fn label(report: ClaimReport, entry: &Entry) -> ClaimReport {
    let report = report.labeled(entry.id, entry.equation);
    match (entry.note, &report.note) {
        (Some(note), None) => report.with_note(note),
        _ => report,
    }
}

/// Run one non-scan entry at the configured orders.
pub fn run_entry(
    entry: &Entry,
    config: &SuiteConfig,
    exact: &mut Workspace,
    modular: &mut Workspace,
) -> Vec<ClaimReport> {
    let reports = match entry.check {
        Check::Identity(build) => vec![run_chain(exact, build, None)],
        Check::Congruence { modulus, build } => vec![run_chain(modular, build, Some(modulus))],
        Check::PowerOfTwo { k, m } => {
            let order = config.order_congruence;
            vec![power_of_two(k, m, order).unwrap_or_else(|e| {
                ClaimReport::order_too_small(
                    Params {
                        order,
                        ring: Ring::MOD64.to_string(),
                        ..Params::default()
                    },
                    &e,
                )
            })]
        }
        Check::Oracle(k) => vec![oracle_check(k, config.oracle_n_max)],
        _ => Vec::new(),
    };
    reports.into_iter().map(|r| label(r, entry)).collect()
}

/// Evaluate the whole catalogue. Identities run in the exact ring, series
/// congruences and scans in `Z/2^64`.
pub fn run_suite(config: &SuiteConfig) -> Result<SuiteReport> {
    let scan_series = series_c(Ring::MOD64, config.order_scan)?;
    Ok(suite_with_scan_series(config, &scan_series))
}

/// [`run_suite`] with a caller-supplied scan series, e.g. a deliberately
/// corrupted one.
pub fn suite_with_scan_series(config: &SuiteConfig, scan_series: &Series) -> SuiteReport {
    let mut exact = Workspace::new(Ring::Exact, config.order_identity);
    let mut modular = Workspace::new(Ring::MOD64, config.order_congruence);
    let mut claims = Vec::new();
    for entry in catalogue() {
        if entry.is_scan() {
            claims.extend(run_scan_entry(&entry, scan_series, config.k_max));
        } else {
            claims.extend(run_entry(&entry, config, &mut exact, &mut modular));
        }
    }
    SuiteReport {
        order_identity: config.order_identity,
        order_congruence: config.order_congruence,
        order_scan: scan_series.order(),
        k_max: config.k_max,
        claims,
    }
}

/// Look up a catalogue entry by id (the first one for repeated ids).
pub fn find(id: &str) -> Option<Entry> {
    catalogue().into_iter().find(|e| e.id == id)
}

/// Build the two sides of a series display at a given ring and order.
pub fn build_display(id: &str, ring: Ring, order: usize) -> Option<Result<Chain>> {
    let entry = find(id)?;
    let build = match entry.check {
        Check::Identity(b) => b,
        Check::Congruence { build, .. } => build,
        _ => return None,
    };
    let mut ws = Workspace::new(ring, order);
    Some(build(&mut ws))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn catalogue_ids_cover_numbered_displays() {
        let ids: Vec<&str> = catalogue().iter().map(|e| e.id).collect();
        for expected in [
            "eq-1-2",
            "eq-1-3",
            "eq-1-4",
            "eq-1-5",
            "eq-1-6",
            "eq-1-7",
            "eq-1-8",
            "eq-2-1",
            "eq-2-2",
            "eq-2-3",
            "eq-2-4",
            "eq-2-5",
            "eq-2-6",
            "eq-2-7",
            "eq-2-8",
            "eq-2-9",
            "eq-2-10",
            "eq-2-11",
            "eq-2-12",
            "eq-2-13",
            "eq-2-14",
            "eq-2-15",
            "eq-2-16",
            "eq-2-17",
            "eq-2-18",
            "eq-2-18-1",
            "eq-2-19",
            "eq-2-21",
            "eq-2-22",
            "eq-2-23",
            "eq-2-24",
            "eq-2-25",
            "eq-2-26",
            "eq-2-27",
            "eq-a-1",
            "eq-a-2",
        ] {
            assert!(ids.contains(&expected), "missing {expected}");
        }
    }

    #[test]
    fn small_displays_hold() {
        let mut exact = Workspace::new(Ring::Exact, 60);
        for id in ["eq-2-2", "eq-2-4", "eq-2-6", "eq-a-2"] {
            let entry = find(id).unwrap();
            let Check::Identity(build) = entry.check else {
                panic!()
            };
            let r = run_chain(&mut exact, build, None);
            assert!(r.passed(), "{r}");
        }
    }

    #[test]
    fn chain_reports_failing_line() {
        fn broken(ws: &mut Workspace) -> Result<Chain> {
            let one = ws.int(1)?;
            chain(one.clone(), vec![one.clone(), ws.int(3)?])
        }
        let mut ws = Workspace::new(Ring::Exact, 5);
        let r = run_chain(&mut ws, broken, None);
        assert_eq!(r.status, Status::Fail);
        assert!(r.note.unwrap().contains("#2"));
        let r = run_chain(&mut ws, broken, Some(2));
        assert!(r.passed());
    }

    #[test]
    fn workspace_cache_serves_shorter_orders() {
        let mut ws = Workspace::new(Ring::Exact, 10);
        let long = ws.c_part(4, 3).unwrap();
        let c = ws.c().unwrap();
        assert_eq!(c, series_c(Ring::Exact, 10).unwrap());
        assert_eq!(long.order(), 10);
        assert_eq!(long.coefficient(0).unwrap(), c.coefficient(3).unwrap());
    }
}
