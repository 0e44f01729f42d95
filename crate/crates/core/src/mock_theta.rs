//! Truncated expansions of the mock theta functions `ω(q)`, `B(q)` and the
//! third-order `f(q)`.
//!
//! Each Eulerian sum is accumulated term by term. Term `n` is a monomial
//! `q^(e_n)` times a power series with only nonnegative exponents, so it is
//! stored as a window of `order - e_n` coefficients and the next term is
//! obtained from the previous one with a few sparse binomial updates. Once
//! `e_n >= order` the term (and every later one, since `e_n` is increasing)
//! only touches exponents `>= order` and the sum stops.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;

use crate::error::SeriesError;
use crate::qproducts::ProductSpec;
use crate::ring::Ring;
use crate::series::{Direction, Series};

type Result<T> = std::result::Result<T, SeriesError>;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum MockThetaId {
    /// `ω(q) = Σ q^(2n(n+1)) / (q;q²)_{n+1}²`
    Omega,
    /// Second-order `B(q) = Σ (-q²;q²)_n q^(n(n+1)) / (q;q²)_{n+1}²`
    B,
    /// Third-order `f(q) = Σ q^(n²) / (-q;q)_n²`
    F3,
}

impl MockThetaId {
    pub fn name(self) -> &'static str {
        match self {
            MockThetaId::Omega => "omega",
            MockThetaId::B => "B",
            MockThetaId::F3 => "f3",
        }
    }

    pub fn expand(self, ring: Ring, order: usize) -> Result<Series> {
        match self {
            MockThetaId::Omega => omega_series(ring, order),
            MockThetaId::B => b_eulerian(ring, order),
            MockThetaId::F3 => f3_series(ring, order),
        }
    }

    /// Expansion of `g(sign q^power)` to `order` terms.
    pub fn expand_at(self, ring: Ring, sign: i32, power: usize, order: usize) -> Result<Series> {
        let inner = crate::series::inner_order(order, power);
        Ok(self
            .expand(ring, inner.max(1))?
            .substitute_power(power, sign)?
            .truncate(order))
    }
}

impl fmt::Display for MockThetaId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.pad(self.name())
    }
}

impl FromStr for MockThetaId {
    type Err = SeriesError;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "omega" => Ok(MockThetaId::Omega),
            "B" => Ok(MockThetaId::B),
            "f3" => Ok(MockThetaId::F3),
            _ => Err(SeriesError::InvalidArgument(format!(
                "unknown mock theta function {s:?}"
            ))),
        }
    }
}

fn divide_twice(u: &mut Series, c: i64, j: usize) -> Result<()> {
    u.mul_binomial_assign(c, j, Direction::Divide)?;
    u.mul_binomial_assign(c, j, Direction::Divide)
}

/// `ω(q)`. Term ratio: `q^(4n+4) / (1 - q^(2n+3))²`.
pub fn omega_series(ring: Ring, order: usize) -> Result<Series> {
    let mut acc = Series::zero(ring, order)?;
    let mut term = Series::one(ring, order)?;
    divide_twice(&mut term, -1, 1)?;
    let mut exponent = 0usize;
    let mut n = 0usize;
    while exponent < order {
        acc.add_shifted_assign(&term, exponent, 1)?;
        exponent += 4 * n + 4;
        if exponent >= order {
            break;
        }
        term.truncate_in_place(order - exponent);
        divide_twice(&mut term, -1, 2 * n + 3)?;
        n += 1;
    }
    Ok(acc)
}

/// `B(q)` from the Eulerian form `Σ (-q²;q²)_n q^(n(n+1)) / (q;q²)_{n+1}²`.
/// Term ratio: `q^(2n+2) (1 + q^(2n+2)) / (1 - q^(2n+3))²`.
pub fn b_eulerian(ring: Ring, order: usize) -> Result<Series> {
    let mut acc = Series::zero(ring, order)?;
    let mut term = Series::one(ring, order)?;
    divide_twice(&mut term, -1, 1)?;
    let mut exponent = 0usize;
    let mut n = 0usize;
    while exponent < order {
        acc.add_shifted_assign(&term, exponent, 1)?;
        exponent += 2 * n + 2;
        if exponent >= order {
            break;
        }
        term.truncate_in_place(order - exponent);
        term.mul_binomial_assign(1, 2 * n + 2, Direction::Multiply)?;
        divide_twice(&mut term, -1, 2 * n + 3)?;
        n += 1;
    }
    Ok(acc)
}

/// `B(q)` from the bilateral Appell-type form
/// `(-q²;q²)_∞ / (q²;q²)_∞ · Σ_{n∈Z} (-1)^n q^(2n(n+1)) / (1 - q^(2n+1))`.
///
/// The index `n = -m-1` has the same exponent `2m(m+1)` and, after
/// `1/(1 - q^-(2m+1)) = -q^(2m+1)/(1 - q^(2m+1))`, contributes
/// `(-1)^m q^(2m(m+1)+2m+1) / (1 - q^(2m+1))`. Pairing it with `n = m` gives
/// `Σ_{m≥0} (-1)^m q^(2m(m+1)) (1 + q^(2m+1)) / (1 - q^(2m+1))`.
pub fn b_appell(ring: Ring, order: usize) -> Result<Series> {
    let mut sum = Series::zero(ring, order)?;
    let mut m = 0usize;
    loop {
        let exponent = 2 * m * (m + 1);
        if exponent >= order {
            break;
        }
        let mut term = Series::one(ring, order - exponent)?;
        term.mul_binomial_assign(1, 2 * m + 1, Direction::Multiply)?;
        term.mul_binomial_assign(-1, 2 * m + 1, Direction::Divide)?;
        let sign = if m.is_multiple_of(2) { 1 } else { -1 };
        sum.add_shifted_assign(&term, exponent, sign)?;
        m += 1;
    }
    let prefactor = ProductSpec::new()
        .with(-1, 2, 2, 1)?
        .with(1, 2, 2, -1)?
        .expand(ring, order)?;
    prefactor.mul(&sum)
}

/// Third-order `f(q)`. Term ratio: `q^(2n+1) / (1 + q^(n+1))²`.
pub fn f3_series(ring: Ring, order: usize) -> Result<Series> {
    let mut acc = Series::zero(ring, order)?;
    let mut term = Series::one(ring, order)?;
    let mut exponent = 0usize;
    let mut n = 0usize;
    while exponent < order {
        acc.add_shifted_assign(&term, exponent, 1)?;
        exponent += 2 * n + 1;
        if exponent >= order {
            break;
        }
        term.truncate_in_place(order - exponent);
        divide_twice(&mut term, 1, n + 1)?;
        n += 1;
    }
    Ok(acc)
}

/// Coefficient `a_B(n)` of `B(q)`.
pub fn a_b(n: usize) -> BigInt {
    b_eulerian(Ring::Exact, n + 1)
        .and_then(|b| b.coefficient(n))
        .expect("order n + 1 covers index n")
}
