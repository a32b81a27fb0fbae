//! Exact field elements: arbitrary-precision rationals and residues mod an
//! odd prime. There is no floating point anywhere in this crate.

use std::fmt;
use std::str::FromStr;

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{Integer, One, Signed, ToPrimitive, Zero};
use rand::Rng;

use crate::error::{GdetError, Result};

/// The field a [`Scalar`] lives in.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FieldTag {
    /// The rationals.
    Rationals,
    /// GF(p) for an odd prime p.
    Prime(u64),
}

impl FieldTag {
    /// GF(p) constructor; rejects 2 and composites.
    pub fn prime(p: u64) -> Result<FieldTag> {
        if p == 2 || !is_prime(p) {
            return Err(GdetError::BadPrime(p));
        }
        Ok(FieldTag::Prime(p))
    }

    pub fn characteristic(&self) -> u64 {
        match self {
            FieldTag::Rationals => 0,
            FieldTag::Prime(p) => *p,
        }
    }
}

impl fmt::Display for FieldTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldTag::Rationals => write!(f, "Q"),
            FieldTag::Prime(p) => write!(f, "GF({p})"),
        }
    }
}

/// Deterministic Miller-Rabin, valid for all u64.
fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n == p {
            return true;
        }
        if n % p == 0 {
            return false;
        }
    }
    let mut d = n - 1;
    let mut s = 0u32;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow_mod(a % n, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

#[inline]
fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1u64 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

/// An exact field element. Arithmetic between scalars of different fields is
/// a programming error and panics; constructors and deserializers reject
/// mixed inputs so user data can never reach such a state.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Scalar {
    Rat(BigRational),
    Mod { val: u64, p: u64 },
}

impl Scalar {
    pub fn zero(field: FieldTag) -> Scalar {
        match field {
            FieldTag::Rationals => Scalar::Rat(BigRational::zero()),
            FieldTag::Prime(p) => Scalar::Mod { val: 0, p },
        }
    }

    pub fn one(field: FieldTag) -> Scalar {
        match field {
            FieldTag::Rationals => Scalar::Rat(BigRational::one()),
            FieldTag::Prime(p) => Scalar::Mod { val: 1 % p, p },
        }
    }

    pub fn from_i64(v: i64, field: FieldTag) -> Scalar {
        match field {
            FieldTag::Rationals => Scalar::Rat(BigRational::from_integer(BigInt::from(v))),
            FieldTag::Prime(p) => {
                let r = v.rem_euclid(p as i64) as u64;
                Scalar::Mod { val: r, p }
            }
        }
    }

    pub fn field(&self) -> FieldTag {
        match self {
            Scalar::Rat(_) => FieldTag::Rationals,
            Scalar::Mod { p, .. } => FieldTag::Prime(*p),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Rat(r) => r.is_zero(),
            Scalar::Mod { val, .. } => *val == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Rat(r) => r.is_one(),
            Scalar::Mod { val, p } => *val == 1 % p,
        }
    }

    fn check_same(&self, other: &Scalar) -> (FieldTag, FieldTag) {
        let (a, b) = (self.field(), other.field());
        assert_eq!(a, b, "scalar arithmetic across fields: {a} vs {b}");
        (a, b)
    }

    pub fn add(&self, other: &Scalar) -> Scalar {
        self.check_same(other);
        match (self, other) {
            (Scalar::Rat(a), Scalar::Rat(b)) => Scalar::Rat(a + b),
            (Scalar::Mod { val: a, p }, Scalar::Mod { val: b, .. }) => Scalar::Mod {
                val: (*a + *b) % *p,
                p: *p,
            },
            _ => unreachable!(),
        }
    }

    pub fn sub(&self, other: &Scalar) -> Scalar {
        self.check_same(other);
        match (self, other) {
            (Scalar::Rat(a), Scalar::Rat(b)) => Scalar::Rat(a - b),
            (Scalar::Mod { val: a, p }, Scalar::Mod { val: b, .. }) => Scalar::Mod {
                val: (*a + *p - *b) % *p,
                p: *p,
            },
            _ => unreachable!(),
        }
    }

    pub fn mul(&self, other: &Scalar) -> Scalar {
        self.check_same(other);
        match (self, other) {
            (Scalar::Rat(a), Scalar::Rat(b)) => Scalar::Rat(a * b),
            (Scalar::Mod { val: a, p }, Scalar::Mod { val: b, .. }) => Scalar::Mod {
                val: mul_mod(*a, *b, *p),
                p: *p,
            },
            _ => unreachable!(),
        }
    }

    pub fn neg(&self) -> Scalar {
        match self {
            Scalar::Rat(a) => Scalar::Rat(-a),
            Scalar::Mod { val, p } => Scalar::Mod {
                val: (*p - *val) % *p,
                p: *p,
            },
        }
    }

    pub fn inv(&self) -> Result<Scalar> {
        if self.is_zero() {
            return Err(GdetError::DivisionByZero);
        }
        Ok(match self {
            Scalar::Rat(a) => Scalar::Rat(a.recip()),
            // Fermat: val^(p-2) mod p.
            Scalar::Mod { val, p } => Scalar::Mod {
                val: pow_mod(*val, *p - 2, *p),
                p: *p,
            },
        })
    }

    pub fn div(&self, other: &Scalar) -> Result<Scalar> {
        Ok(self.mul(&other.inv()?))
    }

    pub fn pow(&self, mut exp: u32) -> Scalar {
        let mut acc = Scalar::one(self.field());
        let mut base = self.clone();
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            exp >>= 1;
        }
        acc
    }

    /// Parses "num", "-num" or "num/den" in the given field. Prime-field
    /// inputs are reduced mod p; a denominator is inverted mod p.
    pub fn parse(s: &str, field: FieldTag) -> Result<Scalar> {
        let s = s.trim();
        match field {
            FieldTag::Rationals => {
                let (num_s, den_s) = match s.split_once('/') {
                    Some((a, b)) => (a, Some(b)),
                    None => (s, None),
                };
                let num = BigInt::from_str(num_s.trim())
                    .map_err(|e| GdetError::Parse(format!("bad rational {s:?}: {e}")))?;
                match den_s {
                    None => Ok(Scalar::Rat(BigRational::from_integer(num))),
                    Some(d) => {
                        let den = BigInt::from_str(d.trim())
                            .map_err(|e| GdetError::Parse(format!("bad rational {s:?}: {e}")))?;
                        if den.is_zero() {
                            return Err(GdetError::DivisionByZero);
                        }
                        Ok(Scalar::Rat(BigRational::new(num, den)))
                    }
                }
            }
            FieldTag::Prime(p) => {
                let (num_s, den_s) = match s.split_once('/') {
                    Some((a, b)) => (a, Some(b)),
                    None => (s, None),
                };
                let residue = |txt: &str| -> Result<u64> {
                    let v = BigInt::from_str(txt)
                        .map_err(|e| GdetError::Parse(format!("bad integer {txt:?}: {e}")))?;
                    Ok(v.mod_floor(&BigInt::from(p)).to_u64().unwrap_or(0))
                };
                let a = Scalar::Mod {
                    val: residue(num_s)?,
                    p,
                };
                match den_s {
                    None => Ok(a),
                    Some(d) => a.div(&Scalar::Mod {
                        val: residue(d)?,
                        p,
                    }),
                }
            }
        }
    }

    /// Uniform element of GF(p), or for Q a uniform integer in [0, 2^31).
    pub fn random<R: Rng + ?Sized>(rng: &mut R, field: FieldTag) -> Scalar {
        match field {
            FieldTag::Rationals => {
                Scalar::from_i64(rng.random_range(0..(1i64 << 31)), FieldTag::Rationals)
            }
            FieldTag::Prime(p) => Scalar::Mod {
                val: rng.random_range(0..p),
                p,
            },
        }
    }

    /// Nonzero element: uniform in GF(p)*, or a small nonzero rational
    /// num/den with num in [-9,9], den in [1,9].
    pub fn random_nonzero<R: Rng + ?Sized>(rng: &mut R, field: FieldTag) -> Scalar {
        match field {
            FieldTag::Rationals => loop {
                let num = rng.random_range(-9i64..=9);
                let den = rng.random_range(1i64..=9);
                if num != 0 {
                    return Scalar::Rat(BigRational::new(BigInt::from(num), BigInt::from(den)));
                }
            },
            FieldTag::Prime(p) => Scalar::Mod {
                val: rng.random_range(1..p),
                p,
            },
        }
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rat(r) => {
                if r.denom().is_one() {
                    write!(f, "{}", r.numer())
                } else {
                    write!(f, "{}/{}", r.numer(), r.denom())
                }
            }
            Scalar::Mod { val, .. } => write!(f, "{val}"),
        }
    }
}

/// True iff the rational is a (possibly negative) integer.
pub fn rat_is_integer(s: &Scalar) -> bool {
    match s {
        Scalar::Rat(r) => r.denom().is_one(),
        Scalar::Mod { .. } => true,
    }
}

/// Signum in Q: -1, 0, +1 (panics on prime-field input).
pub fn rat_signum(s: &Scalar) -> i32 {
    match s {
        Scalar::Rat(r) => {
            if r.is_zero() {
                0
            } else if r.is_positive() {
                1
            } else {
                -1
            }
        }
        Scalar::Mod { .. } => panic!("signum is only defined over Q"),
    }
}
