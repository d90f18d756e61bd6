//! Arithmetic in prime fields GF(p), p an odd prime.
//!
//! [`Field`] is the context object used by vectors and matrices; it works on
//! raw residues in `0..p`. [`Fe`] is a self-describing element carrying its
//! modulus, convenient at API boundaries.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest supported modulus. Products of two residues must fit in a `u64`
/// and enumeration is only meaningful for tiny fields anyway.
pub const MAX_MODULUS: u32 = 1 << 16;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "u32", into = "u32")]
pub struct Field {
    p: u32,
}

impl TryFrom<u32> for Field {
    type Error = Error;
    fn try_from(p: u32) -> Result<Self> {
        Field::new(p)
    }
}

impl From<Field> for u32 {
    fn from(f: Field) -> u32 {
        f.p
    }
}

fn is_prime(n: u32) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u32;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

impl Field {
    /// Builds GF(p). Rejects composites, 2 and anything above [`MAX_MODULUS`].
    pub fn new(p: u32) -> Result<Self> {
        if p == 2 || p > MAX_MODULUS || !is_prime(p) {
            return Err(Error::InvalidModulus(p));
        }
        Ok(Field { p })
    }

    #[inline]
    pub fn modulus(self) -> u32 {
        self.p
    }

    /// Reduces an arbitrary integer into `0..p`.
    #[inline]
    pub fn reduce(self, x: i64) -> u32 {
        x.rem_euclid(self.p as i64) as u32
    }

    pub fn elem(self, x: i64) -> Fe {
        Fe { value: self.reduce(x), modulus: self.p }
    }

    pub fn zero(self) -> Fe {
        self.elem(0)
    }

    pub fn one(self) -> Fe {
        self.elem(1)
    }

    /// All field elements in increasing residue order.
    pub fn elements(self) -> impl Iterator<Item = Fe> {
        let p = self.p;
        (0..p).map(move |value| Fe { value, modulus: p })
    }

    /// Nonzero elements in increasing residue order.
    pub fn units(self) -> impl Iterator<Item = Fe> {
        self.elements().skip(1)
    }

    #[inline]
    pub fn add(self, a: u32, b: u32) -> u32 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }

    #[inline]
    pub fn sub(self, a: u32, b: u32) -> u32 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }

    #[inline]
    pub fn neg(self, a: u32) -> u32 {
        if a == 0 {
            0
        } else {
            self.p - a
        }
    }

    #[inline]
    pub fn mul(self, a: u32, b: u32) -> u32 {
        ((a as u64 * b as u64) % self.p as u64) as u32
    }

    pub fn pow(self, mut a: u32, mut e: u64) -> u32 {
        let mut acc = 1 % self.p;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, a);
            }
            a = self.mul(a, a);
            e >>= 1;
        }
        acc
    }

    /// Multiplicative inverse via Fermat's little theorem.
    pub fn inv(self, a: u32) -> Result<u32> {
        if a.is_multiple_of(self.p) {
            return Err(Error::DivisionByZero(self.p));
        }
        Ok(self.pow(a, (self.p - 2) as u64))
    }

    /// Inverse of 2, used by midpoints. Always exists since p is odd.
    pub fn half(self) -> u32 {
        self.p.div_ceil(2)
    }

    /// Whether `a` is a nonzero square.
    pub fn is_square(self, a: u32) -> bool {
        a != 0 && self.pow(a, ((self.p - 1) / 2) as u64) == 1
    }
}

/// A field element together with its modulus.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Fe {
    value: u32,
    modulus: u32,
}

impl Fe {
    #[inline]
    pub fn value(self) -> u32 {
        self.value
    }

    #[inline]
    pub fn modulus(self) -> u32 {
        self.modulus
    }

    pub fn field(self) -> Field {
        Field { p: self.modulus }
    }

    pub fn is_zero(self) -> bool {
        self.value == 0
    }

    pub fn inv(self) -> Result<Fe> {
        let value = self.field().inv(self.value)?;
        Ok(Fe { value, modulus: self.modulus })
    }

    pub fn pow(self, e: u64) -> Fe {
        Fe { value: self.field().pow(self.value, e), modulus: self.modulus }
    }

    #[inline]
    fn check(self, other: Fe) {
        assert_eq!(self.modulus, other.modulus, "mixing elements of different fields");
    }
}

impl fmt::Display for Fe {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

impl Add for Fe {
    type Output = Fe;
    fn add(self, rhs: Fe) -> Fe {
        self.check(rhs);
        Fe { value: self.field().add(self.value, rhs.value), modulus: self.modulus }
    }
}

impl Sub for Fe {
    type Output = Fe;
    fn sub(self, rhs: Fe) -> Fe {
        self.check(rhs);
        Fe { value: self.field().sub(self.value, rhs.value), modulus: self.modulus }
    }
}

impl Mul for Fe {
    type Output = Fe;
    fn mul(self, rhs: Fe) -> Fe {
        self.check(rhs);
        Fe { value: self.field().mul(self.value, rhs.value), modulus: self.modulus }
    }
}

impl Neg for Fe {
    type Output = Fe;
    fn neg(self) -> Fe {
        Fe { value: self.field().neg(self.value), modulus: self.modulus }
    }
}

/// Free-function form of [`Fe::inv`].
pub fn inv(a: Fe) -> Result<Fe> {
    a.inv()
}
