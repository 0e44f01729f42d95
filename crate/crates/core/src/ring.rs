//! Coefficient rings: exact integers and integers modulo `2^w`.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::SeriesError;

/// The ring that series coefficients live in.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Ring {
    /// Arbitrary-precision integers.
    Exact,
    /// Integers modulo `2^w`, `1 <= w <= 64`, with wraparound arithmetic.
    Mod2Pow(u32),
}

impl Ring {
    /// The fast scan ring, `Z / 2^64`.
    pub const MOD64: Ring = Ring::Mod2Pow(64);

    pub fn mod2pow(bits: u32) -> Result<Ring, SeriesError> {
        if (1..=64).contains(&bits) {
            Ok(Ring::Mod2Pow(bits))
        } else {
            Err(SeriesError::InvalidRing(bits))
        }
    }

    pub(crate) fn validate(self) -> Result<Ring, SeriesError> {
        match self {
            Ring::Exact => Ok(self),
            Ring::Mod2Pow(bits) => Ring::mod2pow(bits),
        }
    }

    /// Whether reducing modulo `m` is well defined in this ring.
    ///
    /// Always true for the exact ring; for `Z / 2^w` the modulus must divide `2^w`.
    pub fn supports_modulus(self, m: &BigInt) -> bool {
        if !m.is_positive() {
            return false;
        }
        match self {
            Ring::Exact => true,
            Ring::Mod2Pow(bits) => {
                let modulus = BigInt::one() << bits;
                modulus.is_multiple_of(m)
            }
        }
    }
}

impl fmt::Display for Ring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Ring::Exact => write!(f, "exact"),
            Ring::Mod2Pow(bits) => write!(f, "mod2^{bits}"),
        }
    }
}

/// Element operations shared by the dense kernels.
pub(crate) trait Coef: Clone + fmt::Debug + PartialEq {
    fn zero_value() -> Self;
    fn one_value() -> Self;
    fn is_zero_value(&self) -> bool;
    fn add_assign_ref(&mut self, other: &Self);
    fn sub_assign_ref(&mut self, other: &Self);
    fn neg(&self) -> Self;
    fn mul_ref(&self, other: &Self) -> Self;
    /// `self += a * b`
    fn mul_add_assign(&mut self, a: &Self, b: &Self);
    /// `self -= a * b`
    fn mul_sub_assign(&mut self, a: &Self, b: &Self);
    /// Multiplicative inverse, if this element is a unit.
    fn unit_inverse(&self) -> Option<Self>;
}

impl Coef for BigInt {
    fn zero_value() -> Self {
        Zero::zero()
    }

    fn one_value() -> Self {
        One::one()
    }

    fn is_zero_value(&self) -> bool {
        Zero::is_zero(self)
    }

    fn add_assign_ref(&mut self, other: &Self) {
        *self += other;
    }

    fn sub_assign_ref(&mut self, other: &Self) {
        *self -= other;
    }

    fn neg(&self) -> Self {
        -self
    }

    fn mul_ref(&self, other: &Self) -> Self {
        self * other
    }

    fn mul_add_assign(&mut self, a: &Self, b: &Self) {
        if a.is_one() {
            *self += b;
        } else if b.is_one() {
            *self += a;
        } else {
            *self += a * b;
        }
    }

    fn mul_sub_assign(&mut self, a: &Self, b: &Self) {
        if a.is_one() {
            *self -= b;
        } else if b.is_one() {
            *self -= a;
        } else {
            *self -= a * b;
        }
    }

    fn unit_inverse(&self) -> Option<Self> {
        if self.abs().is_one() {
            Some(self.clone())
        } else {
            None
        }
    }
}

/// A residue modulo `2^64` with wrapping arithmetic. Rings `Z / 2^w` with
/// smaller `w` reuse it and mask once at the end of every operation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub(crate) struct Wrap(pub u64);

impl Coef for Wrap {
    fn zero_value() -> Self {
        Wrap(0)
    }

    fn one_value() -> Self {
        Wrap(1)
    }

    fn is_zero_value(&self) -> bool {
        self.0 == 0
    }

    #[inline]
    fn add_assign_ref(&mut self, other: &Self) {
        self.0 = self.0.wrapping_add(other.0);
    }

    #[inline]
    fn sub_assign_ref(&mut self, other: &Self) {
        self.0 = self.0.wrapping_sub(other.0);
    }

    fn neg(&self) -> Self {
        Wrap(self.0.wrapping_neg())
    }

    fn mul_ref(&self, other: &Self) -> Self {
        Wrap(self.0.wrapping_mul(other.0))
    }

    #[inline]
    fn mul_add_assign(&mut self, a: &Self, b: &Self) {
        self.0 = self.0.wrapping_add(a.0.wrapping_mul(b.0));
    }

    #[inline]
    fn mul_sub_assign(&mut self, a: &Self, b: &Self) {
        self.0 = self.0.wrapping_sub(a.0.wrapping_mul(b.0));
    }

    fn unit_inverse(&self) -> Option<Self> {
        if self.0 & 1 == 0 {
            return None;
        }
        // Newton iteration; each step doubles the number of correct low bits.
        let a = self.0;
        let mut x = a;
        for _ in 0..6 {
            x = x.wrapping_mul(2u64.wrapping_sub(a.wrapping_mul(x)));
        }
        Some(Wrap(x))
    }
}

pub(crate) fn mask(bits: u32) -> u64 {
    if bits >= 64 {
        u64::MAX
    } else {
        (1u64 << bits) - 1
    }
}

/// Canonical residue of an exact integer modulo `2^64`.
pub(crate) fn wrap_bigint(value: &BigInt) -> Wrap {
    let modulus = BigInt::one() << 64u32;
    let residue = value.mod_floor(&modulus);
    Wrap(residue.to_u64().expect("residue below 2^64"))
}
