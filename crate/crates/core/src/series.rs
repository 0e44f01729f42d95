//! Dense truncated power series in one variable `q`.
//!
//! A [`Series`] of order `N` knows the coefficients of `q^0 .. q^(N-1)` and
//! nothing beyond. Every binary operation returns a result whose order is the
//! minimum of the operand orders, so tail coefficients that were never
//! computed cannot leak into a comparison.

use std::fmt;
use std::io::{self, Write};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::SeriesError;
use crate::ring::{mask, wrap_bigint, Coef, Ring, Wrap};

#[derive(Clone, Debug, PartialEq, Eq)]
enum Coeffs {
    Exact(Vec<BigInt>),
    Mod { bits: u32, values: Vec<Wrap> },
}

/// A truncated formal power series over a [`Ring`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Series {
    coeffs: Coeffs,
}

/// Whether [`Series::mul_sparse_binomial`] multiplies or divides.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Direction {
    Multiply,
    Divide,
}

mod kernel {
    use crate::ring::Coef;

    pub fn add<T: Coef>(a: &[T], b: &[T]) -> Vec<T> {
        a.iter()
            .zip(b)
            .map(|(x, y)| {
                let mut s = x.clone();
                s.add_assign_ref(y);
                s
            })
            .collect()
    }

    pub fn sub<T: Coef>(a: &[T], b: &[T]) -> Vec<T> {
        a.iter()
            .zip(b)
            .map(|(x, y)| {
                let mut s = x.clone();
                s.sub_assign_ref(y);
                s
            })
            .collect()
    }

    pub fn mul<T: Coef>(a: &[T], b: &[T]) -> Vec<T> {
        let n = a.len().min(b.len());
        let mut out = vec![T::zero_value(); n];
        for (i, x) in a.iter().take(n).enumerate() {
            if x.is_zero_value() {
                continue;
            }
            for (slot, y) in out[i..].iter_mut().zip(b) {
                slot.mul_add_assign(x, y);
            }
        }
        out
    }

    /// `a / b` by forward substitution; `None` if `b[0]` is not a unit.
    pub fn div<T: Coef>(a: &[T], b: &[T]) -> Option<Vec<T>> {
        let n = a.len().min(b.len());
        if n == 0 {
            return Some(Vec::new());
        }
        let inv = b[0].unit_inverse()?;
        let support: Vec<usize> = (1..n).filter(|&k| !b[k].is_zero_value()).collect();
        let mut out: Vec<T> = Vec::with_capacity(n);
        for i in 0..n {
            let mut acc = a[i].clone();
            for &k in &support {
                if k > i {
                    break;
                }
                acc.mul_sub_assign(&b[k], &out[i - k]);
            }
            out.push(acc.mul_ref(&inv));
        }
        Some(out)
    }

    /// In place `a *= 1 + c q^j`.
    pub fn binomial_mul<T: Coef>(a: &mut [T], c: &T, j: usize) {
        if j == 0 {
            let mut factor = T::one_value();
            factor.add_assign_ref(c);
            for x in a.iter_mut() {
                *x = x.mul_ref(&factor);
            }
            return;
        }
        for i in (j..a.len()).rev() {
            let (lo, hi) = a.split_at_mut(i);
            hi[0].mul_add_assign(c, &lo[i - j]);
        }
    }

    /// In place `a /= 1 + c q^j`, `j >= 1`.
    pub fn binomial_div<T: Coef>(a: &mut [T], c: &T, j: usize) {
        for i in j..a.len() {
            let (lo, hi) = a.split_at_mut(i);
            hi[0].mul_sub_assign(c, &lo[i - j]);
        }
    }
}

type Result<T> = std::result::Result<T, SeriesError>;

impl Series {
    fn from_wrap(bits: u32, mut values: Vec<Wrap>) -> Series {
        let m = mask(bits);
        if m != u64::MAX {
            for v in values.iter_mut() {
                v.0 &= m;
            }
        }
        Series {
            coeffs: Coeffs::Mod { bits, values },
        }
    }

    fn with_same_ring_exact(&self, values: Vec<BigInt>) -> Series {
        debug_assert!(matches!(self.coeffs, Coeffs::Exact(_)));
        Series {
            coeffs: Coeffs::Exact(values),
        }
    }

    /// Series from exact integer coefficients, reduced into `ring`.
    pub fn from_bigints(ring: Ring, values: Vec<BigInt>) -> Result<Series> {
        match ring.validate()? {
            Ring::Exact => Ok(Series {
                coeffs: Coeffs::Exact(values),
            }),
            Ring::Mod2Pow(bits) => Ok(Series::from_wrap(
                bits,
                values.iter().map(wrap_bigint).collect(),
            )),
        }
    }

    pub fn from_i64s(ring: Ring, values: &[i64]) -> Result<Series> {
        Series::from_bigints(ring, values.iter().map(|&v| BigInt::from(v)).collect())
    }

    pub fn zero(ring: Ring, order: usize) -> Result<Series> {
        Series::from_bigints(ring, vec![BigInt::zero(); order])
    }

    pub fn one(ring: Ring, order: usize) -> Result<Series> {
        Series::constant(ring, &BigInt::one(), order)
    }

    pub fn constant(ring: Ring, value: &BigInt, order: usize) -> Result<Series> {
        Series::monomial(ring, value, 0, order)
    }

    /// `value * q^exponent`; zero when the exponent is beyond the order.
    pub fn monomial(ring: Ring, value: &BigInt, exponent: usize, order: usize) -> Result<Series> {
        let mut values = vec![BigInt::zero(); order];
        if exponent < order {
            values[exponent] = value.clone();
        }
        Series::from_bigints(ring, values)
    }

    pub fn ring(&self) -> Ring {
        match &self.coeffs {
            Coeffs::Exact(_) => Ring::Exact,
            Coeffs::Mod { bits, .. } => Ring::Mod2Pow(*bits),
        }
    }

    /// Number of known coefficients.
    pub fn order(&self) -> usize {
        match &self.coeffs {
            Coeffs::Exact(v) => v.len(),
            Coeffs::Mod { values, .. } => values.len(),
        }
    }

    pub fn is_zero(&self) -> bool {
        match &self.coeffs {
            Coeffs::Exact(v) => v.iter().all(Zero::is_zero),
            Coeffs::Mod { values, .. } => values.iter().all(|w| w.0 == 0),
        }
    }

    /// Coefficient of `q^n`. Modular rings return the canonical residue in `[0, 2^w)`.
    pub fn coefficient(&self, n: usize) -> Result<BigInt> {
        let order = self.order();
        if n >= order {
            return Err(SeriesError::OutOfRange { index: n, order });
        }
        Ok(match &self.coeffs {
            Coeffs::Exact(v) => v[n].clone(),
            Coeffs::Mod { values, .. } => BigInt::from(values[n].0),
        })
    }

    pub fn coefficients(&self) -> Vec<BigInt> {
        match &self.coeffs {
            Coeffs::Exact(v) => v.clone(),
            Coeffs::Mod { values, .. } => values.iter().map(|w| BigInt::from(w.0)).collect(),
        }
    }

    /// Residue of the coefficient of `q^n` modulo `m`, in `[0, m)`.
    pub fn residue(&self, n: usize, m: u64) -> Result<u64> {
        let order = self.order();
        if n >= order {
            return Err(SeriesError::OutOfRange { index: n, order });
        }
        self.check_modulus(&BigInt::from(m))?;
        Ok(match &self.coeffs {
            Coeffs::Exact(v) => v[n]
                .mod_floor(&BigInt::from(m))
                .to_u64()
                .expect("residue fits in u64"),
            // m divides 2^w, so m is a power of two
            Coeffs::Mod { values, .. } => values[n].0 & (m - 1),
        })
    }

    fn check_modulus(&self, m: &BigInt) -> Result<()> {
        if self.ring().supports_modulus(m) {
            Ok(())
        } else {
            Err(SeriesError::UnsupportedModulus {
                modulus: m.to_string(),
                ring: self.ring(),
            })
        }
    }

    fn same_ring(&self, other: &Series) -> Result<()> {
        if self.ring() == other.ring() {
            Ok(())
        } else {
            Err(SeriesError::RingMismatch(self.ring(), other.ring()))
        }
    }

    fn binary(
        &self,
        other: &Series,
        exact: fn(&[BigInt], &[BigInt]) -> Vec<BigInt>,
        modular: fn(&[Wrap], &[Wrap]) -> Vec<Wrap>,
    ) -> Result<Series> {
        self.same_ring(other)?;
        Ok(match (&self.coeffs, &other.coeffs) {
            (Coeffs::Exact(a), Coeffs::Exact(b)) => self.with_same_ring_exact(exact(a, b)),
            (Coeffs::Mod { bits, values: a }, Coeffs::Mod { values: b, .. }) => {
                Series::from_wrap(*bits, modular(a, b))
            }
            _ => unreachable!("ring equality checked"),
        })
    }

    fn map(&self, exact: impl Fn(&BigInt) -> BigInt, modular: impl Fn(&Wrap) -> Wrap) -> Series {
        match &self.coeffs {
            Coeffs::Exact(v) => self.with_same_ring_exact(v.iter().map(exact).collect()),
            Coeffs::Mod { bits, values } => {
                Series::from_wrap(*bits, values.iter().map(modular).collect())
            }
        }
    }

    pub fn add(&self, other: &Series) -> Result<Series> {
        self.binary(other, kernel::add::<BigInt>, kernel::add::<Wrap>)
    }

    pub fn sub(&self, other: &Series) -> Result<Series> {
        self.binary(other, kernel::sub::<BigInt>, kernel::sub::<Wrap>)
    }

    pub fn negate(&self) -> Series {
        self.map(|x| -x, |w| w.neg())
    }

    pub fn scalar_mul(&self, c: &BigInt) -> Series {
        let cw = wrap_bigint(c);
        self.map(|x| x * c, |w| w.mul_ref(&cw))
    }

    /// Cauchy product truncated to the smaller order.
    pub fn mul(&self, other: &Series) -> Result<Series> {
        self.binary(other, kernel::mul::<BigInt>, kernel::mul::<Wrap>)
    }

    /// Series quotient `self / other`; the divisor's constant term must be a unit.
    pub fn div(&self, other: &Series) -> Result<Series> {
        self.same_ring(other)?;
        let nonunit = SeriesError::NonUnit(self.ring());
        Ok(match (&self.coeffs, &other.coeffs) {
            (Coeffs::Exact(a), Coeffs::Exact(b)) => {
                self.with_same_ring_exact(kernel::div(a, b).ok_or(nonunit)?)
            }
            (Coeffs::Mod { bits, values: a }, Coeffs::Mod { values: b, .. }) => {
                // Units mod 2^w are the odd residues; the 2^64 inverse works for any w.
                Series::from_wrap(*bits, kernel::div(a, b).ok_or(nonunit)?)
            }
            _ => unreachable!("ring equality checked"),
        })
    }

    pub fn invert(&self) -> Result<Series> {
        Series::one(self.ring(), self.order())?.div(self)
    }

    /// Integer power by square-and-multiply. `pow(a, 0) = 1` for every `a`.
    pub fn pow(&self, e: i64) -> Result<Series> {
        let mut base = if e < 0 { self.invert()? } else { self.clone() };
        let mut exp = e.unsigned_abs();
        let mut acc = Series::one(self.ring(), self.order())?;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc.mul(&base)?;
            }
            exp >>= 1;
            if exp > 0 {
                base = base.mul(&base)?;
            }
        }
        Ok(acc)
    }

    /// `a(sign * q^m)`. The result knows exponents up to `m * (order - 1)`.
    pub fn substitute_power(&self, m: usize, sign: i32) -> Result<Series> {
        if m == 0 {
            return Err(SeriesError::InvalidArgument(
                "substitution power must be >= 1".into(),
            ));
        }
        if sign != 1 && sign != -1 {
            return Err(SeriesError::InvalidArgument(
                "substitution sign must be +1 or -1".into(),
            ));
        }
        let order = self.order();
        let new_order = if order == 0 { 0 } else { m * (order - 1) + 1 };
        fn spread<T: Coef>(v: &[T], m: usize, sign: i32, len: usize) -> Vec<T> {
            let mut out = vec![T::zero_value(); len];
            for (n, x) in v.iter().enumerate() {
                out[m * n] = if sign < 0 && n % 2 == 1 {
                    x.neg()
                } else {
                    x.clone()
                };
            }
            out
        }
        Ok(match &self.coeffs {
            Coeffs::Exact(v) => self.with_same_ring_exact(spread(v, m, sign, new_order)),
            Coeffs::Mod { bits, values } => {
                Series::from_wrap(*bits, spread(values, m, sign, new_order))
            }
        })
    }

    /// `Σ_n coeff[m n + r] q^n`.
    pub fn dissect(&self, m: usize, r: usize) -> Result<Series> {
        if m == 0 || r >= m {
            return Err(SeriesError::InvalidArgument(format!(
                "dissection needs 0 <= r < m, got m={m}, r={r}"
            )));
        }
        fn pick<T: Coef>(v: &[T], m: usize, r: usize) -> Vec<T> {
            v.iter().skip(r).step_by(m).cloned().collect()
        }
        Ok(match &self.coeffs {
            Coeffs::Exact(v) => self.with_same_ring_exact(pick(v, m, r)),
            Coeffs::Mod { bits, values } => Series::from_wrap(*bits, pick(values, m, r)),
        })
    }

    /// Product or quotient by `1 + c q^j` in linear time.
    pub fn mul_sparse_binomial(
        &self,
        c: &BigInt,
        j: usize,
        direction: Direction,
    ) -> Result<Series> {
        let mut out = self.clone();
        out.apply_binomial(c, j, direction)?;
        Ok(out)
    }

    /// In-place form of [`Series::mul_sparse_binomial`] for small constants.
    pub fn mul_binomial_assign(&mut self, c: i64, j: usize, direction: Direction) -> Result<()> {
        self.apply_binomial(&BigInt::from(c), j, direction)
    }

    fn apply_binomial(&mut self, c: &BigInt, j: usize, direction: Direction) -> Result<()> {
        if direction == Direction::Divide && j == 0 {
            return Err(SeriesError::InvalidArgument(
                "division by 1 + c needs j >= 1".into(),
            ));
        }
        match &mut self.coeffs {
            Coeffs::Exact(v) => match direction {
                Direction::Multiply => kernel::binomial_mul(v, c, j),
                Direction::Divide => kernel::binomial_div(v, c, j),
            },
            Coeffs::Mod { bits, values } => {
                let cw = wrap_bigint(c);
                match direction {
                    Direction::Multiply => kernel::binomial_mul(values, &cw, j),
                    Direction::Divide => kernel::binomial_div(values, &cw, j),
                }
                let m = mask(*bits);
                if m != u64::MAX {
                    values.iter_mut().for_each(|w| w.0 &= m);
                }
            }
        }
        Ok(())
    }

    /// `q^j * a`, keeping the order of `a`.
    pub fn shift(&self, j: usize) -> Series {
        fn shifted<T: Coef>(v: &[T], j: usize) -> Vec<T> {
            let n = v.len();
            let mut out = vec![T::zero_value(); n];
            if j < n {
                out[j..].clone_from_slice(&v[..n - j]);
            }
            out
        }
        match &self.coeffs {
            Coeffs::Exact(v) => self.with_same_ring_exact(shifted(v, j)),
            Coeffs::Mod { bits, values } => Series::from_wrap(*bits, shifted(values, j)),
        }
    }

    /// `self += sign * q^shift * other`, lowering the order of `self` to what
    /// the shifted operand supports.
    pub fn add_shifted_assign(&mut self, other: &Series, shift: usize, sign: i32) -> Result<()> {
        self.same_ring(other)?;
        let order = self.order().min(other.order() + shift);
        self.truncate_in_place(order);
        fn accumulate<T: Coef>(dst: &mut [T], src: &[T], shift: usize, negative: bool) {
            if shift >= dst.len() {
                return;
            }
            for (d, s) in dst[shift..].iter_mut().zip(src) {
                if negative {
                    d.sub_assign_ref(s);
                } else {
                    d.add_assign_ref(s);
                }
            }
        }
        match (&mut self.coeffs, &other.coeffs) {
            (Coeffs::Exact(a), Coeffs::Exact(b)) => accumulate(a, b, shift, sign < 0),
            (Coeffs::Mod { bits, values: a }, Coeffs::Mod { values: b, .. }) => {
                accumulate(a, b, shift, sign < 0);
                let m = mask(*bits);
                if m != u64::MAX {
                    a.iter_mut().for_each(|w| w.0 &= m);
                }
            }
            _ => unreachable!("ring equality checked"),
        }
        Ok(())
    }

    /// Keep only the first `order` coefficients (no-op if already shorter).
    pub fn truncate(&self, order: usize) -> Series {
        let mut out = self.clone();
        out.truncate_in_place(order);
        out
    }

    pub fn truncate_in_place(&mut self, order: usize) {
        match &mut self.coeffs {
            Coeffs::Exact(v) => v.truncate(order),
            Coeffs::Mod { values, .. } => values.truncate(order),
        }
    }

    /// Coefficients replaced by their residues in `[0, m)`, staying in the same ring.
    pub fn reduce_mod(&self, m: &BigInt) -> Result<Series> {
        self.check_modulus(m)?;
        Ok(match &self.coeffs {
            Coeffs::Exact(v) => {
                self.with_same_ring_exact(v.iter().map(|x| x.mod_floor(m)).collect())
            }
            Coeffs::Mod { bits, values } => {
                let low = m.to_u64().expect("modulus divides 2^w") - 1;
                Series::from_wrap(*bits, values.iter().map(|w| Wrap(w.0 & low)).collect())
            }
        })
    }

    /// Image under the reduction map into `target`. Only `Exact -> Z/2^w` and
    /// `Z/2^w -> Z/2^v` with `v <= w` are ring homomorphisms.
    pub fn reduce_to(&self, target: Ring) -> Result<Series> {
        let target = target.validate()?;
        match (&self.coeffs, target) {
            (_, t) if t == self.ring() => Ok(self.clone()),
            (Coeffs::Exact(v), Ring::Mod2Pow(_)) => Series::from_bigints(target, v.clone()),
            (Coeffs::Mod { bits, values }, Ring::Mod2Pow(v)) if v <= *bits => {
                Ok(Series::from_wrap(v, values.clone()))
            }
            _ => Err(SeriesError::RingMismatch(self.ring(), target)),
        }
    }

    fn check_prefix(&self, other: &Series, n: usize) -> Result<()> {
        self.same_ring(other)?;
        let order = self.order().min(other.order());
        if n > order {
            return Err(SeriesError::OutOfRange { index: n, order });
        }
        Ok(())
    }

    /// Exact agreement of the first `n` coefficients.
    pub fn equal_to_order(&self, other: &Series, n: usize) -> Result<bool> {
        Ok(self.first_mismatch(other, n)?.is_none())
    }

    /// First index below `n` where the coefficients differ.
    pub fn first_mismatch(&self, other: &Series, n: usize) -> Result<Option<usize>> {
        self.check_prefix(other, n)?;
        Ok(match (&self.coeffs, &other.coeffs) {
            (Coeffs::Exact(a), Coeffs::Exact(b)) => (0..n).find(|&i| a[i] != b[i]),
            (Coeffs::Mod { values: a, .. }, Coeffs::Mod { values: b, .. }) => {
                (0..n).find(|&i| a[i] != b[i])
            }
            _ => unreachable!("ring equality checked"),
        })
    }

    pub fn congruent_to_order(&self, other: &Series, m: &BigInt, n: usize) -> Result<bool> {
        Ok(self.first_incongruence(other, m, n)?.is_none())
    }

    /// First index below `n` where `self - other` is not divisible by `m`.
    pub fn first_incongruence(
        &self,
        other: &Series,
        m: &BigInt,
        n: usize,
    ) -> Result<Option<usize>> {
        self.check_prefix(other, n)?;
        self.check_modulus(m)?;
        Ok(match (&self.coeffs, &other.coeffs) {
            (Coeffs::Exact(a), Coeffs::Exact(b)) => {
                (0..n).find(|&i| !(&a[i] - &b[i]).is_multiple_of(m))
            }
            (Coeffs::Mod { values: a, .. }, Coeffs::Mod { values: b, .. }) => {
                let low = m.to_u64().expect("modulus divides 2^w") - 1;
                (0..n).find(|&i| a[i].0.wrapping_sub(b[i].0) & low != 0)
            }
            _ => unreachable!("ring equality checked"),
        })
    }

    /// Text dump: one `n<TAB>coefficient` line per known coefficient.
    pub fn write_text<W: Write>(&self, mut out: W) -> io::Result<()> {
        for (n, c) in self.coefficients().iter().enumerate() {
            writeln!(out, "{n}\t{c}")?;
        }
        Ok(())
    }

    pub fn to_dump(&self) -> SeriesDump {
        SeriesDump {
            order: self.order(),
            ring: self.ring().to_string(),
            coeffs: self
                .coefficients()
                .iter()
                .map(ToString::to_string)
                .collect(),
        }
    }

    pub fn from_dump(dump: &SeriesDump) -> Result<Series> {
        let ring = parse_ring_name(&dump.ring)?;
        if dump.coeffs.len() != dump.order {
            return Err(SeriesError::InvalidArgument(format!(
                "dump declares order {} but has {} coefficients",
                dump.order,
                dump.coeffs.len()
            )));
        }
        let values = dump
            .coeffs
            .iter()
            .map(|s| {
                s.parse::<BigInt>()
                    .map_err(|_| SeriesError::InvalidArgument(format!("bad coefficient {s:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Series::from_bigints(ring, values)
    }
}

/// Order an operand needs so that substituting `q -> ±q^m` yields at least
/// `order` known coefficients.
pub fn inner_order(order: usize, m: usize) -> usize {
    if order == 0 || m == 0 {
        return order;
    }
    (order - 1).div_ceil(m) + 1
}

/// JSON form of a series: `{"order": N, "ring": "exact", "coeffs": ["1", ...]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeriesDump {
    pub order: usize,
    pub ring: String,
    pub coeffs: Vec<String>,
}

fn parse_ring_name(name: &str) -> Result<Ring> {
    if name == "exact" {
        return Ok(Ring::Exact);
    }
    name.strip_prefix("mod2^")
        .and_then(|w| w.parse::<u32>().ok())
        .ok_or_else(|| SeriesError::InvalidArgument(format!("unknown ring {name:?}")))
        .and_then(Ring::mod2pow)
}

impl fmt::Display for Series {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (n, c) in self.coefficients().iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let (neg, mag) = (c.is_negative(), c.abs());
            match (first, neg) {
                (true, true) => write!(f, "-")?,
                (false, true) => write!(f, " - ")?,
                (false, false) => write!(f, " + ")?,
                (true, false) => {}
            }
            first = false;
            match n {
                0 => write!(f, "{mag}")?,
                _ if mag.is_one() => {}
                _ => write!(f, "{mag}*")?,
            }
            match n {
                0 => {}
                1 => write!(f, "q")?,
                _ => write!(f, "q^{n}")?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        write!(f, " + O(q^{})", self.order())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ex(v: &[i64]) -> Series {
        Series::from_i64s(Ring::Exact, v).unwrap()
    }

    #[test]
    fn add_and_negate() {
        assert_eq!(ex(&[1, 1]).add(&ex(&[1, -1])).unwrap(), ex(&[2, 0]));
        assert_eq!(ex(&[0, 0]).negate(), ex(&[0, 0]));
        assert_eq!(ex(&[1, 3]).scalar_mul(&BigInt::from(2)), ex(&[2, 6]));
        // order is the minimum of operand orders
        assert_eq!(ex(&[1, 2, 3]).sub(&ex(&[1])).unwrap(), ex(&[0]));
    }

    #[test]
    fn ring_mismatch_is_rejected() {
        let m = Series::from_i64s(Ring::MOD64, &[1, 1]).unwrap();
        assert!(matches!(
            ex(&[1, 1]).add(&m),
            Err(SeriesError::RingMismatch(..))
        ));
        let m3 = Series::from_i64s(Ring::Mod2Pow(3), &[1, 1]).unwrap();
        assert!(m.mul(&m3).is_err());
    }

    #[test]
    fn products_and_inverse() {
        assert_eq!(
            ex(&[1, 1, 0]).mul(&ex(&[1, -1, 0])).unwrap(),
            ex(&[1, 0, -1])
        );
        assert_eq!(
            ex(&[1, -1, 0, 0, 0]).invert().unwrap(),
            ex(&[1, 1, 1, 1, 1])
        );
        assert_eq!(ex(&[1]).invert().unwrap(), ex(&[1]));
        assert!(matches!(ex(&[2, 1]).invert(), Err(SeriesError::NonUnit(_))));
        let m = Series::from_i64s(Ring::Mod2Pow(3), &[2, 1]).unwrap();
        assert!(m.invert().is_err());
    }

    #[test]
    fn powers() {
        assert_eq!(ex(&[1, 1, 0, 0]).pow(2).unwrap(), ex(&[1, 2, 1, 0]));
        let a = ex(&[1, -1, -1, 0, 0, 1]);
        assert_eq!(a.pow(-1).unwrap(), a.invert().unwrap());
        assert_eq!(ex(&[0, 0, 0]).pow(0).unwrap(), ex(&[1, 0, 0]));
        assert!(ex(&[0, 1]).pow(-1).is_err());
    }

    #[test]
    fn substitution() {
        assert_eq!(
            ex(&[1, 1, 1]).substitute_power(2, 1).unwrap(),
            ex(&[1, 0, 1, 0, 1])
        );
        assert_eq!(ex(&[1, 1]).substitute_power(1, -1).unwrap(), ex(&[1, -1]));
        assert_eq!(ex(&[]).substitute_power(3, 1).unwrap().order(), 0);
        assert!(ex(&[1]).substitute_power(0, 1).is_err());
        assert!(ex(&[1]).substitute_power(1, 2).is_err());
    }

    #[test]
    fn sparse_binomials() {
        let one = ex(&[1, 0, 0]);
        let minus_one = BigInt::from(-1);
        assert_eq!(
            one.mul_sparse_binomial(&minus_one, 1, Direction::Multiply)
                .unwrap(),
            ex(&[1, -1, 0])
        );
        assert_eq!(
            ex(&[1, 0, -1])
                .mul_sparse_binomial(&minus_one, 1, Direction::Divide)
                .unwrap(),
            ex(&[1, 1, 0])
        );
        assert!(one
            .mul_sparse_binomial(&minus_one, 0, Direction::Divide)
            .is_err());
        // j = 0 multiplies by the constant 1 + c
        assert_eq!(
            ex(&[1, 2])
                .mul_sparse_binomial(&BigInt::from(2), 0, Direction::Multiply)
                .unwrap(),
            ex(&[3, 6])
        );
    }

    #[test]
    fn dissection() {
        assert_eq!(ex(&[1, 2, 3, 4]).dissect(2, 1).unwrap(), ex(&[2, 4]));
        let a = ex(&[5, 6, 7]);
        assert_eq!(a.dissect(1, 0).unwrap(), a);
        assert_eq!(ex(&[1, 2]).dissect(4, 3).unwrap().order(), 0);
        assert_eq!(ex(&[1, 2, 3, 4, 5]).dissect(3, 1).unwrap(), ex(&[2, 5]));
        assert!(a.dissect(2, 2).is_err());
    }

    #[test]
    fn accessors_and_comparisons() {
        let a = ex(&[1, 0, 0, 5]);
        assert_eq!(a.coefficient(3).unwrap(), BigInt::from(5));
        assert!(matches!(
            a.coefficient(4),
            Err(SeriesError::OutOfRange { .. })
        ));
        let four_q = ex(&[0, 4, 0, 0, 0, 0, 0, 0, 0, 0]);
        let zero = Series::zero(Ring::Exact, 10).unwrap();
        assert!(four_q
            .congruent_to_order(&zero, &BigInt::from(4), 10)
            .unwrap());
        assert_eq!(
            four_q
                .first_incongruence(&zero, &BigInt::from(8), 10)
                .unwrap(),
            Some(1)
        );
        assert!(four_q.equal_to_order(&zero, 1).unwrap());
        assert!(four_q.equal_to_order(&zero, 11).is_err());
        assert_eq!(
            ex(&[-3, 7]).reduce_mod(&BigInt::from(4)).unwrap(),
            ex(&[1, 3])
        );
        assert_eq!(ex(&[1, 2, 3]).truncate(2), ex(&[1, 2]));
        assert_eq!(ex(&[1, 2, 3]).shift(1), ex(&[0, 1, 2]));
    }

    #[test]
    fn modular_residues() {
        let m = Series::from_i64s(Ring::Mod2Pow(3), &[-1, 9, 4]).unwrap();
        assert_eq!(m.coefficients(), vec![7.into(), 1.into(), 4.into()]);
        assert_eq!(m.residue(0, 4).unwrap(), 3);
        assert!(m.residue(0, 16).is_err());
        assert!(m.residue(0, 3).is_err());
        assert_eq!(ex(&[-1]).residue(0, 8).unwrap(), 7);
    }

    #[test]
    fn shifted_accumulation_lowers_order() {
        let mut acc = ex(&[1, 1, 1, 1, 1]);
        acc.add_shifted_assign(&ex(&[1, 1]), 2, -1).unwrap();
        assert_eq!(acc, ex(&[1, 1, 0, 0]));
    }

    #[test]
    fn dump_formats() {
        let a = ex(&[0, 1]);
        let mut buf = Vec::new();
        a.write_text(&mut buf).unwrap();
        assert_eq!(String::from_utf8(buf).unwrap(), "0\t0\n1\t1\n");
        let dump = a.to_dump();
        assert_eq!(dump.ring, "exact");
        assert_eq!(Series::from_dump(&dump).unwrap(), a);
        let m = Series::from_i64s(Ring::MOD64, &[-1]).unwrap();
        let back = Series::from_dump(&m.to_dump()).unwrap();
        assert_eq!(back, m);
    }

    #[test]
    fn display() {
        assert_eq!(ex(&[1, -1, 0, 2]).to_string(), "1 - q + 2*q^3 + O(q^4)");
        assert_eq!(ex(&[0, 0]).to_string(), "0 + O(q^2)");
    }
}
