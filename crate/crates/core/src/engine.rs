//! Generating functions `C(q)`, `C_k(q)` and the congruence checks run on them.

use std::fmt;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::error::{CheckError, SeriesError};
use crate::qproducts::ProductSpec;
use crate::ring::Ring;
use crate::series::{Direction, Series};

/// Builds `Σ_n t_n` with
/// `t_n = q^(2n+1) (-q^(2n+2k);q²)_∞ (-q^(2n+2);q²)_∞ / (q^(2n+1);q²)_∞²`,
/// dropping the first product for the limit series (`k = None`).
///
/// `t_n` is kept as `q^(2n+1)` times a window of `order - (2n+1)` coefficients;
/// `t_(n+1) / t_n = q² (1 - q^(2n+1))² / ((1 + q^(2n+2)) (1 + q^(2n+2k)))`.
fn colored_series(ring: Ring, order: usize, k: Option<usize>) -> Result<Series, SeriesError> {
    let mut acc = Series::zero(ring, order)?;
    if order <= 1 {
        return Ok(acc);
    }
    let mut head = ProductSpec::new().with(-1, 2, 2, 1)?;
    if let Some(k) = k {
        head = head.with(-1, 2 * k, 2, 1)?;
    }
    let mut term = head.with(1, 1, 2, -2)?.expand(ring, order - 1)?;
    let mut exponent = 1usize;
    let mut n = 0usize;
    while exponent < order {
        acc.add_shifted_assign(&term, exponent, 1)?;
        exponent += 2;
        if exponent >= order {
            break;
        }
        term.truncate_in_place(order - exponent);
        term.mul_binomial_assign(-1, 2 * n + 1, Direction::Multiply)?;
        term.mul_binomial_assign(-1, 2 * n + 1, Direction::Multiply)?;
        term.mul_binomial_assign(1, 2 * n + 2, Direction::Divide)?;
        if let Some(k) = k {
            term.mul_binomial_assign(1, 2 * n + 2 * k, Direction::Divide)?;
        }
        n += 1;
    }
    Ok(acc)
}

/// `C(q) = Σ c(n) q^n`, the `k -> ∞` limit of `C_k(q)`.
pub fn series_c(ring: Ring, order: usize) -> Result<Series, SeriesError> {
    colored_series(ring, order, None)
}

/// `C_k(q) = Σ c(k, n) q^n`, `k >= 1`.
pub fn series_ck(ring: Ring, k: usize, order: usize) -> Result<Series, SeriesError> {
    if k == 0 {
        return Err(SeriesError::InvalidArgument("k must be >= 1".into()));
    }
    colored_series(ring, order, Some(k))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Pass,
    Fail,
    OrderTooSmall,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.pad(match self {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::OrderTooSmall => "ORDER-TOO-SMALL",
        })
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Params {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub k: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub n_max: Option<u64>,
    pub order: usize,
    pub ring: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub modulus: Option<String>,
}

/// A concrete counterexample. `value` is the coefficient at `index`, `other`
/// the coefficient it was compared with (if any) and `residue` the raw
/// residue that should have vanished.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    pub n: u64,
    pub index: u64,
    pub value: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub other: Option<String>,
    pub residue: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClaimReport {
    pub id: String,
    #[serde(rename = "paper_eq")]
    pub equation: String,
    pub status: Status,
    pub params: Params,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl ClaimReport {
    fn new(params: Params) -> Self {
        ClaimReport {
            id: String::new(),
            equation: String::new(),
            status: Status::Pass,
            params,
            witness: None,
            note: None,
        }
    }

    pub fn labeled(mut self, id: impl Into<String>, equation: impl Into<String>) -> Self {
        self.id = id.into();
        self.equation = equation.into();
        self
    }

    pub fn with_note(mut self, note: impl Into<String>) -> Self {
        self.note = Some(note.into());
        self
    }

    fn failed(mut self, witness: Witness) -> Self {
        self.status = Status::Fail;
        self.witness = Some(witness);
        self
    }

    /// Report for a claim whose arguments do not fit in the available order.
    pub fn order_too_small(params: Params, err: &CheckError) -> Self {
        let mut report = ClaimReport::new(params);
        report.status = Status::OrderTooSmall;
        report.note = Some(err.to_string());
        report
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }
}

impl fmt::Display for ClaimReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:<16} {:<18} {}", self.status, self.id, self.equation)?;
        if let Some(k) = self.params.k {
            write!(f, " k={k}")?;
        }
        if let Some(n) = self.params.n_max {
            write!(f, " n<={n}")?;
        }
        write!(f, " N={} {}", self.params.order, self.params.ring)?;
        if let Some(m) = &self.params.modulus {
            write!(f, " mod {m}")?;
        }
        if let Some(w) = &self.witness {
            write!(f, " witness: n={} index={} value={}", w.n, w.index, w.value)?;
            if let Some(o) = &w.other {
                write!(f, " other={o}")?;
            }
            write!(f, " residue={}", w.residue)?;
        }
        if let Some(note) = &self.note {
            write!(f, " ({note})")?;
        }
        Ok(())
    }
}

/// `c(A n + B) ≡ 0 (mod M)` for `0 <= n <= n_max`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ProgressionClaim {
    pub a: u64,
    pub b: u64,
    pub modulus: u64,
    pub n_max: u64,
}

impl ProgressionClaim {
    /// The claim over every `n` whose argument is below `order`; `None` if even
    /// `n = 0` does not fit.
    pub fn in_range(a: u64, b: u64, modulus: u64, order: usize) -> Option<Self> {
        let n_max = max_n(a, b, order)?;
        Some(ProgressionClaim {
            a,
            b,
            modulus,
            n_max,
        })
    }
}

/// `c(A₁ n + B₁) ≡ sign · c(A₂ n + B₂) (mod M)` for `0 <= n <= n_max`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RelationClaim {
    pub lhs: (u64, u64),
    pub sign: i32,
    pub rhs: (u64, u64),
    pub modulus: u64,
    pub n_max: u64,
}

impl RelationClaim {
    pub fn in_range(
        lhs: (u64, u64),
        sign: i32,
        rhs: (u64, u64),
        modulus: u64,
        order: usize,
    ) -> Option<Self> {
        let n_max = max_n(lhs.0, lhs.1, order)?.min(max_n(rhs.0, rhs.1, order)?);
        Some(RelationClaim {
            lhs,
            sign,
            rhs,
            modulus,
            n_max,
        })
    }
}

/// Largest `n` with `a n + b < order`.
pub fn max_n(a: u64, b: u64, order: usize) -> Option<u64> {
    let order = order as u64;
    if b >= order {
        return None;
    }
    Some((order - 1 - b).checked_div(a).unwrap_or(u64::MAX))
}

/// An infinite family indexed by `k >= 0`:
/// `A(k) = 2^(exp_scale k + exp_offset)`, `B(k) = (base 4^k + 1) / 3`, and either
/// `c(A(k) n + B(k)) ≡ 0 (mod M)` or, with `relation`, `≡ (±1)^k c(A₂ n + B₂)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FamilyClaim {
    pub exp_scale: u32,
    pub exp_offset: u32,
    pub base: u64,
    pub modulus: u64,
    pub relation: Option<FamilyRelation>,
    pub k_max: u32,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FamilyRelation {
    pub rhs: (u64, u64),
    /// Sign is `(-1)^k` when true, `+1` otherwise.
    pub alternating: bool,
}

impl FamilyClaim {
    pub fn modulus_at(&self, k: u32) -> u64 {
        1u64 << (self.exp_scale * k + self.exp_offset)
    }

    /// `(base 4^k + 1) / 3`; `None` if not an integer (never for `base ≡ 2 mod 3`).
    pub fn offset_at(&self, k: u32) -> Option<u64> {
        let numerator = self
            .base
            .checked_mul(4u64.checked_pow(k)?)?
            .checked_add(1)?;
        (numerator % 3 == 0).then_some(numerator / 3)
    }

    pub fn sign_at(&self, k: u32) -> i32 {
        match self.relation {
            Some(FamilyRelation {
                alternating: true, ..
            }) if k % 2 == 1 => -1,
            _ => 1,
        }
    }
}

fn residue_of(value: &BigInt, modulus: u64) -> BigInt {
    use num_integer::Integer;
    value.mod_floor(&BigInt::from(modulus))
}

fn series_params(s: &Series, order: usize, modulus: Option<u64>) -> Params {
    Params {
        k: None,
        n_max: None,
        order,
        ring: s.ring().to_string(),
        modulus: modulus.map(|m| m.to_string()),
    }
}

fn coefficient(s: &Series, index: u64) -> Result<BigInt, CheckError> {
    let i = usize::try_from(index).map_err(|_| CheckError::OrderTooSmall {
        needed: index,
        order: s.order(),
    })?;
    s.coefficient(i).map_err(|_| CheckError::OrderTooSmall {
        needed: index,
        order: s.order(),
    })
}

fn require(s: &Series, max_index: u64) -> Result<(), CheckError> {
    if max_index >= s.order() as u64 {
        return Err(CheckError::OrderTooSmall {
            needed: max_index,
            order: s.order(),
        });
    }
    Ok(())
}

/// Check `c(A n + B) ≡ 0 (mod M)` on the coefficients of `s`.
pub fn check_progression(s: &Series, claim: &ProgressionClaim) -> Result<ClaimReport, CheckError> {
    let top = claim.a * claim.n_max + claim.b;
    require(s, top)?;
    if !s.ring().supports_modulus(&BigInt::from(claim.modulus)) {
        return Err(SeriesError::UnsupportedModulus {
            modulus: claim.modulus.to_string(),
            ring: s.ring(),
        }
        .into());
    }
    let mut params = series_params(s, s.order(), Some(claim.modulus));
    params.n_max = Some(claim.n_max);
    let report = ClaimReport::new(params);
    for n in 0..=claim.n_max {
        let index = claim.a * n + claim.b;
        let residue = s.residue(index as usize, claim.modulus)?;
        if residue != 0 {
            let value = coefficient(s, index)?;
            return Ok(report.failed(Witness {
                n,
                index,
                value: value.to_string(),
                other: None,
                residue: residue.to_string(),
            }));
        }
    }
    Ok(report)
}

/// Check `c(A₁ n + B₁) ≡ sign · c(A₂ n + B₂) (mod M)`.
pub fn check_relation(s: &Series, claim: &RelationClaim) -> Result<ClaimReport, CheckError> {
    let top =
        (claim.lhs.0 * claim.n_max + claim.lhs.1).max(claim.rhs.0 * claim.n_max + claim.rhs.1);
    require(s, top)?;
    if !s.ring().supports_modulus(&BigInt::from(claim.modulus)) {
        return Err(SeriesError::UnsupportedModulus {
            modulus: claim.modulus.to_string(),
            ring: s.ring(),
        }
        .into());
    }
    let mut params = series_params(s, s.order(), Some(claim.modulus));
    params.n_max = Some(claim.n_max);
    let report = ClaimReport::new(params);
    let m = claim.modulus;
    for n in 0..=claim.n_max {
        let i = claim.lhs.0 * n + claim.lhs.1;
        let j = claim.rhs.0 * n + claim.rhs.1;
        let left = s.residue(i as usize, m)?;
        let right = s.residue(j as usize, m)?;
        let right = if claim.sign < 0 {
            (m - right) % m
        } else {
            right
        };
        if left != right {
            let diff = (left + m - right) % m;
            return Ok(report.failed(Witness {
                n,
                index: i,
                value: coefficient(s, i)?.to_string(),
                other: Some(coefficient(s, j)?.to_string()),
                residue: diff.to_string(),
            }));
        }
    }
    Ok(report)
}

/// One report per `k = 0..=k_max`, each over every in-range `n`.
pub fn check_family(s: &Series, family: &FamilyClaim) -> Vec<ClaimReport> {
    (0..=family.k_max)
        .map(|k| {
            let a = family.modulus_at(k);
            let mut params = series_params(s, s.order(), Some(family.modulus));
            params.k = Some(k);
            let Some(b) = family.offset_at(k) else {
                let err = CheckError::Series(SeriesError::InvalidArgument(format!(
                    "offset ({} * 4^{k} + 1) / 3 is not an integer",
                    family.base
                )));
                return ClaimReport::order_too_small(params, &err);
            };
            let outcome = match family.relation {
                None => match ProgressionClaim::in_range(a, b, family.modulus, s.order()) {
                    Some(claim) => check_progression(s, &claim),
                    None => Err(CheckError::OrderTooSmall {
                        needed: b,
                        order: s.order(),
                    }),
                },
                Some(rel) => {
                    match RelationClaim::in_range(
                        (a, b),
                        family.sign_at(k),
                        rel.rhs,
                        family.modulus,
                        s.order(),
                    ) {
                        Some(claim) => check_relation(s, &claim),
                        None => Err(CheckError::OrderTooSmall {
                            needed: b,
                            order: s.order(),
                        }),
                    }
                }
            };
            match outcome {
                Ok(mut report) => {
                    report.params.k = Some(k);
                    report
                }
                Err(err) => ClaimReport::order_too_small(params, &err),
            }
        })
        .collect()
}

fn first_difference(
    lhs: &Series,
    rhs: &Series,
    modulus: Option<u64>,
    order: usize,
) -> Result<Option<Witness>, CheckError> {
    if order > lhs.order().min(rhs.order()) {
        return Err(CheckError::OrderTooSmall {
            needed: order.saturating_sub(1) as u64,
            order: lhs.order().min(rhs.order()),
        });
    }
    let found = match modulus {
        None => lhs.first_mismatch(rhs, order)?,
        Some(m) => lhs.first_incongruence(rhs, &BigInt::from(m), order)?,
    };
    Ok(found.map(|i| {
        let a = lhs.coefficient(i).expect("in range");
        let b = rhs.coefficient(i).expect("in range");
        let diff = &a - &b;
        let residue = match modulus {
            None => diff,
            Some(m) => residue_of(&diff, m),
        };
        Witness {
            n: i as u64,
            index: i as u64,
            value: a.to_string(),
            other: Some(b.to_string()),
            residue: residue.to_string(),
        }
    }))
}

/// Exact coefficientwise equality of the first `order` coefficients.
pub fn verify_identity(
    lhs: &Series,
    rhs: &Series,
    order: usize,
) -> Result<ClaimReport, CheckError> {
    let report = ClaimReport::new(series_params(lhs, order, None));
    Ok(match first_difference(lhs, rhs, None, order)? {
        Some(w) => report.failed(w),
        None => report,
    })
}

/// Coefficientwise congruence modulo `modulus` of the first `order` coefficients.
pub fn verify_congruent(
    lhs: &Series,
    rhs: &Series,
    modulus: u64,
    order: usize,
) -> Result<ClaimReport, CheckError> {
    let report = ClaimReport::new(series_params(lhs, order, Some(modulus)));
    Ok(match first_difference(lhs, rhs, Some(modulus), order)? {
        Some(w) => report.failed(w),
        None => report,
    })
}

/// Every `(A, B, M)` with `A <= a_max`, `B < A`, `M` in `moduli` such that
/// `c(A n + B) ≡ 0 (mod M)` for all `0 <= n <= n_max`. Empirical only: a hit
/// says nothing beyond the sampled range.
pub fn scan_progressions(
    s: &Series,
    a_max: u64,
    moduli: &[u64],
    n_max: u64,
) -> Result<Vec<ProgressionClaim>, CheckError> {
    if a_max == 0 {
        return Ok(Vec::new());
    }
    require(s, a_max * n_max + a_max - 1)?;
    for &m in moduli {
        if !s.ring().supports_modulus(&BigInt::from(m)) {
            return Err(SeriesError::UnsupportedModulus {
                modulus: m.to_string(),
                ring: s.ring(),
            }
            .into());
        }
    }
    let mut found = Vec::new();
    for a in 1..=a_max {
        for b in 0..a {
            for &modulus in moduli {
                let vanishes = (0..=n_max).all(|n| {
                    s.residue((a * n + b) as usize, modulus)
                        .map(|r| r == 0)
                        .unwrap_or(false)
                });
                if vanishes {
                    found.push(ProgressionClaim {
                        a,
                        b,
                        modulus,
                        n_max,
                    });
                }
            }
        }
    }
    Ok(found)
}
