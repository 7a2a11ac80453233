use std::fmt;

use crate::error::{Error, Result};

/// Largest modulus accepted; matrix entries are stored as bytes.
pub const MAX_MODULUS: u32 = 251;

pub fn is_prime(n: u32) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

pub fn check_prime(p: u32) -> Result<()> {
    if p <= MAX_MODULUS && is_prime(p) {
        Ok(())
    } else {
        Err(Error::BadModulus(p))
    }
}

/// `a^e mod p`.
pub fn pow_mod(a: u32, mut e: u64, p: u32) -> u32 {
    let m = p as u64;
    let mut base = a as u64 % m;
    let mut acc = 1 % m;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * base % m;
        }
        base = base * base % m;
        e >>= 1;
    }
    acc as u32
}

/// Inverse of a nonzero residue modulo a prime.
pub fn inv_mod(a: u32, p: u32) -> Option<u32> {
    if a.is_multiple_of(p) {
        None
    } else {
        Some(pow_mod(a, (p - 2) as u64, p))
    }
}

/// Reduce a signed integer into `[0, p)`.
pub fn reduce(k: i64, p: u32) -> u32 {
    k.rem_euclid(p as i64) as u32
}

/// An element of the prime field F_p.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Fp {
    value: u32,
    modulus: u32,
}

impl Fp {
    pub fn new(value: i64, modulus: u32) -> Result<Self> {
        check_prime(modulus)?;
        Ok(Fp {
            value: reduce(value, modulus),
            modulus,
        })
    }

    /// Caller guarantees that `modulus` was already validated.
    pub(crate) fn from_raw(value: u32, modulus: u32) -> Self {
        Fp {
            value: value % modulus,
            modulus,
        }
    }

    pub fn value(self) -> u32 {
        self.value
    }

    pub fn modulus(self) -> u32 {
        self.modulus
    }

    pub fn zero(modulus: u32) -> Self {
        Fp { value: 0, modulus }
    }

    pub fn one(modulus: u32) -> Self {
        Fp {
            value: 1 % modulus,
            modulus,
        }
    }

    pub fn is_zero(self) -> bool {
        self.value == 0
    }

    fn same(self, other: Fp) -> Result<()> {
        if self.modulus == other.modulus {
            Ok(())
        } else {
            Err(Error::ModulusMismatch(self.modulus, other.modulus))
        }
    }

    pub fn add(self, other: Fp) -> Result<Fp> {
        self.same(other)?;
        Ok(Fp::from_raw(self.value + other.value, self.modulus))
    }

    pub fn sub(self, other: Fp) -> Result<Fp> {
        self.same(other)?;
        Ok(Fp::from_raw(
            self.value + self.modulus - other.value,
            self.modulus,
        ))
    }

    pub fn mul(self, other: Fp) -> Result<Fp> {
        self.same(other)?;
        Ok(Fp::from_raw(self.value * other.value, self.modulus))
    }

    pub fn neg(self) -> Fp {
        Fp::from_raw(self.modulus - self.value, self.modulus)
    }

    pub fn inv(self) -> Result<Fp> {
        inv_mod(self.value, self.modulus)
            .map(|v| Fp::from_raw(v, self.modulus))
            .ok_or(Error::NotUnit)
    }

    pub fn pow(self, e: i64) -> Result<Fp> {
        let base = if e < 0 { self.inv()? } else { self };
        Ok(Fp::from_raw(
            pow_mod(base.value, e.unsigned_abs(), self.modulus),
            self.modulus,
        ))
    }
}

impl fmt::Debug for Fp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (mod {})", self.value, self.modulus)
    }
}

impl fmt::Display for Fp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}
