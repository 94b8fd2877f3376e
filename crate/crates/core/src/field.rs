//! Exact scalar fields: prime fields `F_p` and the rationals.

use core::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::Error;

/// The base field of every computation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Field {
    /// `F_p` for a prime `p < 2^31`.
    Prime(u32),
    Rationals,
}

/// A field element. Residues are always reduced into `0..p`, rationals are
/// always in lowest terms with a positive denominator.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Scalar {
    Residue(u32),
    Rational(BigRational),
}

fn is_prime(p: u32) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u32;
    while (d as u64) * (d as u64) <= p as u64 {
        if p % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

impl Field {
    pub fn prime(p: u32) -> Result<Field, Error> {
        if p >= 1 << 31 || !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        Ok(Field::Prime(p))
    }

    pub fn characteristic(&self) -> u32 {
        match self {
            Field::Prime(p) => *p,
            Field::Rationals => 0,
        }
    }

    pub fn zero(&self) -> Scalar {
        match self {
            Field::Prime(_) => Scalar::Residue(0),
            Field::Rationals => Scalar::Rational(BigRational::zero()),
        }
    }

    pub fn one(&self) -> Scalar {
        match self {
            Field::Prime(_) => Scalar::Residue(1),
            Field::Rationals => Scalar::Rational(BigRational::one()),
        }
    }

    pub fn from_int(&self, v: i64) -> Scalar {
        match self {
            Field::Prime(p) => Scalar::Residue(v.rem_euclid(*p as i64) as u32),
            Field::Rationals => Scalar::Rational(BigRational::from_integer(BigInt::from(v))),
        }
    }

    /// Builds `num/den`; `None` when `den` is zero (or not invertible mod p).
    pub fn from_fraction(&self, num: &BigInt, den: &BigInt) -> Option<Scalar> {
        if den.is_zero() {
            return None;
        }
        match self {
            Field::Prime(p) => {
                let pb = BigInt::from(*p);
                let reduce = |x: &BigInt| -> u32 {
                    let r = ((x % &pb) + &pb) % &pb;
                    r.iter_u32_digits().next().unwrap_or(0)
                };
                let d = reduce(den);
                if d == 0 {
                    return None;
                }
                let n = Scalar::Residue(reduce(num));
                Some(self.mul(&n, &self.inv(&Scalar::Residue(d))?))
            }
            Field::Rationals => Some(Scalar::Rational(BigRational::new(num.clone(), den.clone()))),
        }
    }

    /// Whether `s` is a canonical element of this field.
    pub fn contains(&self, s: &Scalar) -> bool {
        match (self, s) {
            (Field::Prime(p), Scalar::Residue(v)) => v < p,
            (Field::Rationals, Scalar::Rational(r)) => {
                r.denom().is_positive() && num_integer::Integer::gcd(r.numer(), r.denom()).is_one()
            }
            _ => false,
        }
    }

    pub fn is_zero(&self, s: &Scalar) -> bool {
        match s {
            Scalar::Residue(v) => *v == 0,
            Scalar::Rational(r) => r.is_zero(),
        }
    }

    pub fn is_one(&self, s: &Scalar) -> bool {
        match s {
            Scalar::Residue(v) => *v == 1,
            Scalar::Rational(r) => r.is_one(),
        }
    }

    pub fn add(&self, a: &Scalar, b: &Scalar) -> Scalar {
        match (self, a, b) {
            (Field::Prime(p), Scalar::Residue(x), Scalar::Residue(y)) => {
                Scalar::Residue(((*x as u64 + *y as u64) % *p as u64) as u32)
            }
            (Field::Rationals, Scalar::Rational(x), Scalar::Rational(y)) => Scalar::Rational(x + y),
            _ => panic!("scalar does not belong to {self}"),
        }
    }

    pub fn neg(&self, a: &Scalar) -> Scalar {
        match (self, a) {
            (Field::Prime(p), Scalar::Residue(x)) => Scalar::Residue(if *x == 0 { 0 } else { p - x }),
            (Field::Rationals, Scalar::Rational(x)) => Scalar::Rational(-x),
            _ => panic!("scalar does not belong to {self}"),
        }
    }

    pub fn sub(&self, a: &Scalar, b: &Scalar) -> Scalar {
        self.add(a, &self.neg(b))
    }

    pub fn mul(&self, a: &Scalar, b: &Scalar) -> Scalar {
        match (self, a, b) {
            (Field::Prime(p), Scalar::Residue(x), Scalar::Residue(y)) => {
                Scalar::Residue(((*x as u64 * *y as u64) % *p as u64) as u32)
            }
            (Field::Rationals, Scalar::Rational(x), Scalar::Rational(y)) => Scalar::Rational(x * y),
            _ => panic!("scalar does not belong to {self}"),
        }
    }

    /// Multiplicative inverse, `None` for zero.
    pub fn inv(&self, a: &Scalar) -> Option<Scalar> {
        if self.is_zero(a) {
            return None;
        }
        match (self, a) {
            (Field::Prime(p), Scalar::Residue(x)) => Some(Scalar::Residue(inv_mod(*x, *p))),
            (Field::Rationals, Scalar::Rational(x)) => Some(Scalar::Rational(x.recip())),
            _ => panic!("scalar does not belong to {self}"),
        }
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Field::Prime(p) => write!(f, "F_{p}"),
            Field::Rationals => write!(f, "Q"),
        }
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Residue(v) => write!(f, "{v}"),
            Scalar::Rational(r) => write!(f, "{r}"),
        }
    }
}

pub(crate) fn inv_mod(x: u32, p: u32) -> u32 {
    // Fermat: x^(p-2)
    let (mut base, mut exp, mut acc) = (x as u64 % p as u64, p as u64 - 2, 1u64);
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % p as u64;
        }
        base = base * base % p as u64;
        exp >>= 1;
    }
    acc as u32
}
