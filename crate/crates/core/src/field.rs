//! Coefficient fields: ℚ and prime fields 𝔽_p.
//!
//! All scalars share one representation, [`Scalar`] (an arbitrary-precision
//! rational). Over 𝔽_p a scalar is kept canonical as an integer in `[0, p)`,
//! so equality of canonical scalars is equality in the field. Every
//! arithmetic helper on [`FieldSpec`] returns canonical values.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub type Scalar = BigRational;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FieldSpec {
    Rationals,
    Prime(u64),
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d.saturating_mul(d) <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

fn pow_mod(base: u64, mut exp: u64, p: u64) -> u64 {
    let m = p as u128;
    let mut acc = 1u128;
    let mut b = base as u128 % m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * b % m;
        }
        b = b * b % m;
        exp >>= 1;
    }
    acc as u64
}

impl FieldSpec {
    pub fn prime(p: u64) -> Result<Self> {
        if is_prime(p) {
            Ok(FieldSpec::Prime(p))
        } else {
            Err(Error::NotPrime(p))
        }
    }

    /// `0` selects ℚ, a prime `p` selects 𝔽_p.
    pub fn from_characteristic(c: u64) -> Result<Self> {
        if c == 0 {
            Ok(FieldSpec::Rationals)
        } else {
            Self::prime(c)
        }
    }

    pub fn characteristic(self) -> u64 {
        match self {
            FieldSpec::Rationals => 0,
            FieldSpec::Prime(p) => p,
        }
    }

    /// True iff the integer `m` is zero in this field.
    pub fn divides(self, m: u64) -> bool {
        match self {
            FieldSpec::Rationals => m == 0,
            FieldSpec::Prime(p) => m.is_multiple_of(p),
        }
    }

    fn reduce_int(p: u64, n: &BigInt) -> u64 {
        let r = n.mod_floor(&BigInt::from(p));
        r.to_u64().expect("residue fits in u64")
    }

    /// Maps a rational into the field, failing when the denominator vanishes.
    pub fn try_normalize(self, x: &Scalar) -> Result<Scalar> {
        match self {
            FieldSpec::Rationals => Ok(x.clone()),
            FieldSpec::Prime(p) => {
                let num = Self::reduce_int(p, x.numer());
                let den = Self::reduce_int(p, x.denom());
                if den == 0 {
                    return Err(Error::NotInField(x.to_string(), p));
                }
                let inv = pow_mod(den, p - 2, p);
                let v = (num as u128 * inv as u128 % p as u128) as u64;
                Ok(Scalar::from_integer(v.into()))
            }
        }
    }

    /// Canonical form of `x`. Panics if `x` has a denominator divisible by
    /// the characteristic; use [`FieldSpec::try_normalize`] for untrusted input.
    pub fn normalize(self, x: Scalar) -> Scalar {
        match self {
            FieldSpec::Rationals => x,
            FieldSpec::Prime(_) => self
                .try_normalize(&x)
                .expect("scalar denominator vanishes in the field"),
        }
    }

    pub fn int(self, n: i64) -> Scalar {
        self.normalize(Scalar::from_integer(n.into()))
    }

    pub fn big_int(self, n: BigInt) -> Scalar {
        self.normalize(Scalar::from_integer(n))
    }

    pub fn zero(self) -> Scalar {
        Scalar::zero()
    }

    pub fn one(self) -> Scalar {
        Scalar::one()
    }

    pub fn add(self, a: &Scalar, b: &Scalar) -> Scalar {
        self.normalize(a + b)
    }

    pub fn sub(self, a: &Scalar, b: &Scalar) -> Scalar {
        self.normalize(a - b)
    }

    pub fn neg(self, a: &Scalar) -> Scalar {
        self.normalize(-a)
    }

    pub fn mul(self, a: &Scalar, b: &Scalar) -> Scalar {
        self.normalize(a * b)
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inv(self, a: &Scalar) -> Option<Scalar> {
        if a.is_zero() {
            None
        } else {
            Some(self.normalize(a.recip()))
        }
    }

    pub fn div(self, a: &Scalar, b: &Scalar) -> Option<Scalar> {
        self.inv(b).map(|ib| self.mul(a, &ib))
    }

    /// Small nonzero elements used by searches: all of 𝔽_p^×, or
    /// `1, -1, 2, -2, …, bound, -bound` over ℚ.
    pub fn small_units(self, bound: u64) -> Vec<Scalar> {
        match self {
            FieldSpec::Rationals => (1..=bound as i64).flat_map(|n| [n, -n]).map(|n| self.int(n)).collect(),
            FieldSpec::Prime(p) => (1..p).map(|n| Scalar::from_integer(n.into())).collect(),
        }
    }

    /// Sign used when printing; residues in 𝔽_p are never negative.
    pub fn is_negative(self, a: &Scalar) -> bool {
        match self {
            FieldSpec::Rationals => a.is_negative(),
            FieldSpec::Prime(_) => false,
        }
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldSpec::Rationals => f.write_str("Q"),
            FieldSpec::Prime(p) => write!(f, "F_{p}"),
        }
    }
}

/// `binomial(n, k)` as an exact integer.
pub fn binomial(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}
