//! q-Pochhammer products, Euler functions `f_m = (q^m; q^m)_∞` and eta quotients.
//!
//! Products are materialized by chaining sparse binomial updates, so every
//! builder stays in integer arithmetic. [`pentagonal_series`] is an
//! independent construction of `f_m` used to check the product route.

use std::collections::BTreeMap;

use crate::error::SeriesError;
use crate::ring::Ring;
use crate::series::{Direction, Series};

type Result<T> = std::result::Result<T, SeriesError>;

/// One factor `(sign q^offset; q^step)_∞^exponent`, i.e.
/// `Π_{j≥0} (1 - sign q^(offset + j step))^exponent`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PochhammerFactor {
    pub sign: i32,
    pub offset: usize,
    pub step: usize,
    pub exponent: i64,
}

impl PochhammerFactor {
    pub fn new(sign: i32, offset: usize, step: usize, exponent: i64) -> Result<Self> {
        if sign != 1 && sign != -1 {
            return Err(SeriesError::InvalidArgument(format!(
                "sign must be ±1, got {sign}"
            )));
        }
        if offset == 0 || step == 0 {
            return Err(SeriesError::InvalidArgument(
                "pochhammer offset and step must be >= 1".into(),
            ));
        }
        if exponent == 0 {
            return Err(SeriesError::InvalidArgument(
                "factor exponent must be nonzero".into(),
            ));
        }
        Ok(PochhammerFactor {
            sign,
            offset,
            step,
            exponent,
        })
    }
}

/// A product of infinite q-Pochhammer symbols. Every factor has a positive
/// offset, so the product always has constant term 1.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ProductSpec {
    pub factors: Vec<PochhammerFactor>,
}

impl ProductSpec {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with(mut self, sign: i32, offset: usize, step: usize, exponent: i64) -> Result<Self> {
        self.factors
            .push(PochhammerFactor::new(sign, offset, step, exponent)?);
        Ok(self)
    }

    /// Expand to `order` coefficients. Positive exponents are applied before
    /// any division.
    pub fn expand(&self, ring: Ring, order: usize) -> Result<Series> {
        let mut out = Series::one(ring, order)?;
        self.apply(&mut out)?;
        Ok(out)
    }

    /// Multiply `series` in place by this product.
    pub fn apply(&self, series: &mut Series) -> Result<()> {
        let (num, den): (Vec<&PochhammerFactor>, Vec<&PochhammerFactor>) =
            self.factors.iter().partition(|f| f.exponent > 0);
        for f in num.into_iter().chain(den) {
            apply_factor(series, f.sign, f.offset, f.step, None, f.exponent)?;
        }
        Ok(())
    }
}

/// Multiply `series` by `Π_{j<count} (1 - sign q^(offset + j step))^exponent`
/// (all `j` when `count` is `None`). Factors at or beyond the order are skipped.
pub(crate) fn apply_factor(
    series: &mut Series,
    sign: i32,
    offset: usize,
    step: usize,
    count: Option<usize>,
    exponent: i64,
) -> Result<()> {
    let order = series.order();
    let direction = if exponent > 0 {
        Direction::Multiply
    } else {
        Direction::Divide
    };
    let c = -i64::from(sign);
    let mut j = 0usize;
    loop {
        if count.is_some_and(|n| j >= n) {
            break;
        }
        let e = offset + j * step;
        if e >= order {
            break;
        }
        for _ in 0..exponent.unsigned_abs() {
            series.mul_binomial_assign(c, e, direction)?;
        }
        j += 1;
    }
    Ok(())
}

/// `(sign q^s; q^m)_∞ = Π_{j≥0} (1 - sign q^(s + j m))` to `order` terms.
pub fn pochhammer_inf(ring: Ring, sign: i32, s: usize, m: usize, order: usize) -> Result<Series> {
    ProductSpec::new().with(sign, s, m, 1)?.expand(ring, order)
}

/// Finite product `(sign q^s; q^m)_n`; `n = 0` is the empty product.
pub fn pochhammer_fin(
    ring: Ring,
    sign: i32,
    s: usize,
    m: usize,
    n: usize,
    order: usize,
) -> Result<Series> {
    PochhammerFactor::new(sign, s, m, 1)?;
    let mut out = Series::one(ring, order)?;
    apply_factor(&mut out, sign, s, m, Some(n), 1)?;
    Ok(out)
}

/// Euler function `f_m = (q^m; q^m)_∞`.
pub fn euler_fm(ring: Ring, m: usize, order: usize) -> Result<Series> {
    pochhammer_inf(ring, 1, m, m, order)
}

/// Exponent table `m -> e_m` describing `Π f_m^(e_m)`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct EtaExponents(BTreeMap<usize, i64>);

impl EtaExponents {
    pub fn new() -> Self {
        Self::default()
    }

    /// Build from `(m, e)` pairs; repeated moduli add up and zero totals vanish.
    pub fn from_pairs(pairs: &[(usize, i64)]) -> Result<Self> {
        let mut table = BTreeMap::new();
        for &(m, e) in pairs {
            if m == 0 {
                return Err(SeriesError::InvalidArgument(
                    "eta modulus must be >= 1".into(),
                ));
            }
            *table.entry(m).or_insert(0) += e;
        }
        table.retain(|_, e| *e != 0);
        Ok(EtaExponents(table))
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, i64)> + '_ {
        self.0.iter().map(|(&m, &e)| (m, e))
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn to_product(&self) -> ProductSpec {
        ProductSpec {
            factors: self
                .iter()
                .map(|(m, e)| PochhammerFactor {
                    sign: 1,
                    offset: m,
                    step: m,
                    exponent: e,
                })
                .collect(),
        }
    }
}

/// `Π f_m^(e_m)` to `order` terms.
pub fn eta_quotient(ring: Ring, exponents: &EtaExponents, order: usize) -> Result<Series> {
    exponents.to_product().expand(ring, order)
}

/// Shorthand for [`eta_quotient`] from `(m, e)` pairs.
pub fn eta(ring: Ring, pairs: &[(usize, i64)], order: usize) -> Result<Series> {
    eta_quotient(ring, &EtaExponents::from_pairs(pairs)?, order)
}

/// `Σ_{j∈Z} (-1)^j q^(m j (3j-1)/2)`, which equals `f_m` by Euler's pentagonal
/// number theorem. Built directly from the exponents, no products involved.
pub fn pentagonal_series(ring: Ring, m: usize, order: usize) -> Result<Series> {
    if m == 0 {
        return Err(SeriesError::InvalidArgument("modulus must be >= 1".into()));
    }
    let mut coeffs = vec![0i64; order];
    if order > 0 {
        coeffs[0] = 1;
    }
    for j in 1usize.. {
        let sign = if j % 2 == 1 { -1 } else { 1 };
        let lo = m * (j * (3 * j - 1) / 2);
        let hi = m * (j * (3 * j + 1) / 2);
        if lo >= order {
            break;
        }
        coeffs[lo] += sign;
        if hi < order {
            coeffs[hi] += sign;
        }
    }
    Series::from_i64s(ring, &coeffs)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(s: &Series) -> Vec<i64> {
        s.coefficients()
            .iter()
            .map(|c| i64::try_from(c).unwrap())
            .collect()
    }

    /// Direct truncated product Π (1 - q^(k m)) by dense polynomial multiplication.
    fn naive_euler(m: usize, order: usize) -> Vec<i64> {
        let mut acc = vec![0i64; order];
        acc[0] = 1;
        let mut k = m;
        while k < order {
            let prev = acc.clone();
            for i in k..order {
                acc[i] -= prev[i - k];
            }
            k += m;
        }
        acc
    }

    #[test]
    fn euler_function_first_terms() {
        let f1 = euler_fm(Ring::Exact, 1, 13).unwrap();
        assert_eq!(ints(&f1), vec![1, -1, -1, 0, 0, 1, 0, 1, 0, 0, 0, 0, -1]);
        assert_eq!(ints(&f1), naive_euler(1, 13));
        assert_eq!(
            ints(&euler_fm(Ring::Exact, 3, 40).unwrap()),
            naive_euler(3, 40)
        );
    }

    #[test]
    fn distinct_parts_series() {
        // partitions of n into distinct parts, n <= 6: 1,1,1,2,2,3,4
        let d = pochhammer_inf(Ring::Exact, -1, 1, 1, 7).unwrap();
        assert_eq!(ints(&d), vec![1, 1, 1, 2, 2, 3, 4]);
    }

    #[test]
    fn factors_beyond_order_are_skipped() {
        for sign in [1, -1] {
            let p = pochhammer_inf(Ring::Exact, sign, 9, 1, 9).unwrap();
            assert_eq!(p, Series::one(Ring::Exact, 9).unwrap());
        }
    }

    #[test]
    fn finite_products() {
        let n = 10;
        assert_eq!(
            ints(&pochhammer_fin(Ring::Exact, 1, 1, 2, 1, n).unwrap())[..3],
            [1, -1, 0]
        );
        assert_eq!(
            pochhammer_fin(Ring::Exact, -1, 3, 2, 0, n).unwrap(),
            Series::one(Ring::Exact, n).unwrap()
        );
        for k in 0..6 {
            let head = pochhammer_fin(Ring::Exact, 1, 1, 1, k, 30).unwrap();
            let tail = pochhammer_inf(Ring::Exact, 1, 1 + k, 1, 30).unwrap();
            assert_eq!(
                head.mul(&tail).unwrap(),
                euler_fm(Ring::Exact, 1, 30).unwrap()
            );
        }
    }

    #[test]
    fn partition_numbers_from_inverse() {
        let p = eta(Ring::Exact, &[(1, -1)], 8).unwrap();
        assert_eq!(ints(&p), vec![1, 1, 2, 3, 5, 7, 11, 15]);
        assert_eq!(
            eta(Ring::Exact, &[], 5).unwrap(),
            Series::one(Ring::Exact, 5).unwrap()
        );
        // cancelling exponents collapse to the empty quotient
        assert!(EtaExponents::from_pairs(&[(2, 3), (2, -3)])
            .unwrap()
            .is_empty());
    }

    #[test]
    fn pentagonal_small_cases() {
        assert_eq!(
            ints(&pentagonal_series(Ring::Exact, 2, 3).unwrap()),
            vec![1, 0, -1]
        );
        assert_eq!(
            ints(&pentagonal_series(Ring::Exact, 1, 1).unwrap()),
            vec![1]
        );
        assert!(pentagonal_series(Ring::Exact, 0, 3).is_err());
    }

    #[test]
    fn invalid_factors() {
        assert!(PochhammerFactor::new(2, 1, 1, 1).is_err());
        assert!(PochhammerFactor::new(1, 0, 1, 1).is_err());
        assert!(PochhammerFactor::new(1, 1, 0, 1).is_err());
        assert!(PochhammerFactor::new(1, 1, 1, 0).is_err());
    }
}
