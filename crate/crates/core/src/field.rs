//! Exact scalar fields.
//!
//! Two fields are supported: the rationals (authoritative) and a prime field
//! `F_p` whose modulus is chosen at runtime. Because the prime is only known
//! at runtime, constructors take a field context instead of relying on
//! context-free `zero()`/`one()`.

use std::fmt;
use std::hash::Hash;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matrix::Matrix;

/// Identifies which field a value or matrix lives in.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum FieldTag {
    Q,
    Fp(u64),
}

impl fmt::Display for FieldTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldTag::Q => write!(f, "Q"),
            FieldTag::Fp(p) => write!(f, "F_{p}"),
        }
    }
}

/// An exact field element.
///
/// Implementations must keep values canonical so that `==` is field equality.
pub trait Field:
    Clone
    + PartialEq
    + Eq
    + Hash
    + fmt::Debug
    + fmt::Display
    + Send
    + Sync
    + 'static
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
{
    /// Runtime description of the field (unit for `Q`, the prime for `F_p`).
    type Ctx: Clone + fmt::Debug + PartialEq + Eq + Send + Sync;

    fn ctx(&self) -> Self::Ctx;
    fn tag(ctx: &Self::Ctx) -> FieldTag;

    fn zero_in(ctx: &Self::Ctx) -> Self;
    fn one_in(ctx: &Self::Ctx) -> Self;
    fn from_i64_in(ctx: &Self::Ctx, v: i64) -> Self;
    /// Maps a rational into the field; `None` when the denominator is not invertible.
    fn from_rational_in(ctx: &Self::Ctx, q: &BigRational) -> Option<Self>;

    fn is_zero(&self) -> bool;
    fn inv(&self) -> Option<Self>;

    fn is_one(&self) -> bool {
        *self == Self::one_in(&self.ctx())
    }

    fn checked_div(&self, rhs: &Self) -> Option<Self> {
        rhs.inv().map(|r| self.clone() * r)
    }

    fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one_in(&self.ctx());
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base.clone();
            }
            e >>= 1;
            if e > 0 {
                base = base.clone() * base;
            }
        }
        acc
    }

    /// Exact rank. Fields may override this with a specialised elimination.
    fn matrix_rank(m: &Matrix<Self>) -> usize {
        m.rank_by_elimination()
    }

    /// Canonical text form ("p/q" for rationals, the residue for `F_p`).
    fn to_canonical_string(&self) -> String {
        self.to_string()
    }
}

/// Arbitrary-precision rationals, always in lowest terms with positive denominator.
pub type Rational = BigRational;

impl Field for BigRational {
    type Ctx = ();

    fn ctx(&self) -> Self::Ctx {}

    fn tag(_: &()) -> FieldTag {
        FieldTag::Q
    }

    fn zero_in(_: &()) -> Self {
        <BigRational as Zero>::zero()
    }

    fn one_in(_: &()) -> Self {
        <BigRational as One>::one()
    }

    fn from_i64_in(_: &(), v: i64) -> Self {
        BigRational::from_integer(BigInt::from(v))
    }

    fn from_rational_in(_: &(), q: &BigRational) -> Option<Self> {
        Some(q.clone())
    }

    fn is_zero(&self) -> bool {
        <BigRational as Zero>::is_zero(self)
    }

    fn inv(&self) -> Option<Self> {
        if Field::is_zero(self) {
            None
        } else {
            Some(self.recip())
        }
    }

    fn matrix_rank(m: &Matrix<Self>) -> usize {
        crate::matrix::bareiss_rank(m)
    }
}

/// A validated odd prime modulus, below 2^62 so products fit in `u128`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Prime(u64);

impl Prime {
    pub fn new(p: u64) -> Result<Self> {
        if p < 3 || p.is_multiple_of(2) || p >= 1 << 62 || !is_prime_u64(p) {
            return Err(Error::InvalidInput(format!(
                "{p} is not an odd prime below 2^62"
            )));
        }
        Ok(Prime(p))
    }

    pub fn get(self) -> u64 {
        self.0
    }
}

/// Element of `F_p`, stored as the canonical representative in `[0, p)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Fp {
    value: u64,
    modulus: Prime,
}

impl Fp {
    pub fn new(modulus: Prime, v: i128) -> Self {
        let p = modulus.0 as i128;
        Fp {
            value: v.rem_euclid(p) as u64,
            modulus,
        }
    }

    pub fn value(&self) -> u64 {
        self.value
    }

    pub fn modulus(&self) -> Prime {
        self.modulus
    }

    fn with(&self, value: u64) -> Self {
        Fp {
            value,
            modulus: self.modulus,
        }
    }

    fn check(&self, rhs: &Self) {
        assert_eq!(self.modulus, rhs.modulus, "mixed prime fields");
    }
}

impl fmt::Display for Fp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

impl Add for Fp {
    type Output = Fp;
    fn add(self, rhs: Fp) -> Fp {
        self.check(&rhs);
        let p = self.modulus.0;
        let s = self.value + rhs.value;
        self.with(if s >= p { s - p } else { s })
    }
}

impl Sub for Fp {
    type Output = Fp;
    fn sub(self, rhs: Fp) -> Fp {
        self.check(&rhs);
        let p = self.modulus.0;
        self.with(if self.value >= rhs.value {
            self.value - rhs.value
        } else {
            self.value + p - rhs.value
        })
    }
}

impl Mul for Fp {
    type Output = Fp;
    fn mul(self, rhs: Fp) -> Fp {
        self.check(&rhs);
        let p = self.modulus.0 as u128;
        self.with(((self.value as u128 * rhs.value as u128) % p) as u64)
    }
}

impl Neg for Fp {
    type Output = Fp;
    fn neg(self) -> Fp {
        if self.value == 0 {
            self
        } else {
            self.with(self.modulus.0 - self.value)
        }
    }
}

impl Field for Fp {
    type Ctx = Prime;

    fn ctx(&self) -> Prime {
        self.modulus
    }

    fn tag(ctx: &Prime) -> FieldTag {
        FieldTag::Fp(ctx.0)
    }

    fn zero_in(ctx: &Prime) -> Self {
        Fp::new(*ctx, 0)
    }

    fn one_in(ctx: &Prime) -> Self {
        Fp::new(*ctx, 1)
    }

    fn from_i64_in(ctx: &Prime, v: i64) -> Self {
        Fp::new(*ctx, v as i128)
    }

    fn from_rational_in(ctx: &Prime, q: &BigRational) -> Option<Self> {
        let p = BigInt::from(ctx.0);
        let num = q.numer().mod_floor(&p).to_i128()?;
        let den = q.denom().mod_floor(&p).to_i128()?;
        let den = Fp::new(*ctx, den);
        den.inv().map(|d| Fp::new(*ctx, num) * d)
    }

    fn is_zero(&self) -> bool {
        self.value == 0
    }

    fn inv(&self) -> Option<Self> {
        if self.value == 0 {
            return None;
        }
        // extended Euclid on (value, p)
        let (mut r0, mut r1) = (self.modulus.0 as i128, self.value as i128);
        let (mut s0, mut s1) = (0i128, 1i128);
        while r1 != 0 {
            let q = r0 / r1;
            (r0, r1) = (r1, r0 - q * r1);
            (s0, s1) = (s1, s0 - q * s1);
        }
        debug_assert_eq!(r0, 1);
        Some(Fp::new(self.modulus, s0))
    }
}

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut acc = 1u64;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(acc, b, m);
        }
        b = mul_mod(b, b, m);
        e >>= 1;
    }
    acc
}

/// Deterministic Miller-Rabin for 64-bit inputs.
pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    const BASES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    for &b in &BASES {
        if n.is_multiple_of(b) {
            return n == b;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d.is_multiple_of(2) {
        d /= 2;
        s += 1;
    }
    'outer: for &a in &BASES {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'outer;
            }
        }
        return false;
    }
    true
}

/// Parses `"p/q"`, `"p"` or a decimal integer string into a rational.
pub fn parse_rational(s: &str) -> Result<BigRational> {
    let s = s.trim();
    let bad = || Error::InvalidInput(format!("not a rational number: {s:?}"));
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let n: BigInt = n.parse().map_err(|_| bad())?;
    let d: BigInt = d.parse().map_err(|_| bad())?;
    if d.is_zero() {
        return Err(bad());
    }
    Ok(BigRational::new(n, d))
}

/// Canonical string for a rational: `"p"` for integers, `"p/q"` otherwise.
pub fn rational_to_string(q: &BigRational) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// Least common multiple of the denominators of `values` (1 for an empty slice).
pub fn common_denominator<'a>(values: impl IntoIterator<Item = &'a BigRational>) -> BigInt {
    values
        .into_iter()
        .fold(BigInt::one(), |acc, q| acc.lcm(q.denom()))
}
