//! Exact coefficient fields: the rationals and prime fields GF(p), p < 2^31.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::Rng;

use crate::error::{Error, Result};

/// A coefficient field. Values are plain descriptors; arithmetic on [`Coeff`]
/// goes through the field so that prime-field elements stay reduced.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Field {
    Rationals,
    Prime(u32),
}

/// A field element. `Fp` values are always reduced modulo the field's prime.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Coeff {
    Fp(u32),
    Q(BigRational),
}

fn is_prime(p: u32) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= p as u64 {
        if p as u64 % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

impl Field {
    /// GF(p); `p` must be a prime below 2^31.
    pub fn prime(p: u32) -> Result<Field> {
        if p >= 1 << 31 || !is_prime(p) {
            return Err(Error::Usage(format!("{p} is not a prime below 2^31")));
        }
        Ok(Field::Prime(p))
    }

    pub fn characteristic(&self) -> u32 {
        match self {
            Field::Rationals => 0,
            Field::Prime(p) => *p,
        }
    }

    pub fn zero(&self) -> Coeff {
        match self {
            Field::Rationals => Coeff::Q(BigRational::zero()),
            Field::Prime(_) => Coeff::Fp(0),
        }
    }

    pub fn one(&self) -> Coeff {
        self.from_i64(1)
    }

    pub fn from_i64(&self, v: i64) -> Coeff {
        match self {
            Field::Rationals => Coeff::Q(BigRational::from_integer(BigInt::from(v))),
            Field::Prime(p) => Coeff::Fp(v.rem_euclid(*p as i64) as u32),
        }
    }

    /// Embeds a rational number; fails in GF(p) when p divides the denominator.
    pub fn from_rational(&self, v: &BigRational) -> Result<Coeff> {
        match self {
            Field::Rationals => Ok(Coeff::Q(v.clone())),
            Field::Prime(p) => {
                let pb = BigInt::from(*p);
                let num = (v.numer() % &pb + &pb) % &pb;
                let den = (v.denom() % &pb + &pb) % &pb;
                let num = Coeff::Fp(num.to_u32().unwrap_or(0));
                let den = Coeff::Fp(den.to_u32().unwrap_or(0));
                if self.is_zero(&den) {
                    return Err(Error::Usage(format!("denominator of {v} vanishes in GF({p})")));
                }
                Ok(self.div(&num, &den))
            }
        }
    }

    pub fn is_zero(&self, a: &Coeff) -> bool {
        match a {
            Coeff::Fp(v) => *v == 0,
            Coeff::Q(q) => q.is_zero(),
        }
    }

    pub fn is_one(&self, a: &Coeff) -> bool {
        match a {
            Coeff::Fp(v) => *v == 1,
            Coeff::Q(q) => q.is_one(),
        }
    }

    pub fn add(&self, a: &Coeff, b: &Coeff) -> Coeff {
        match (self, a, b) {
            (Field::Prime(p), Coeff::Fp(x), Coeff::Fp(y)) => {
                Coeff::Fp(((*x as u64 + *y as u64) % *p as u64) as u32)
            }
            (_, Coeff::Q(x), Coeff::Q(y)) => Coeff::Q(x + y),
            _ => panic!("mixed coefficient kinds"),
        }
    }

    pub fn neg(&self, a: &Coeff) -> Coeff {
        match (self, a) {
            (Field::Prime(p), Coeff::Fp(x)) => Coeff::Fp(if *x == 0 { 0 } else { p - x }),
            (_, Coeff::Q(x)) => Coeff::Q(-x),
            _ => panic!("mixed coefficient kinds"),
        }
    }

    pub fn sub(&self, a: &Coeff, b: &Coeff) -> Coeff {
        self.add(a, &self.neg(b))
    }

    pub fn mul(&self, a: &Coeff, b: &Coeff) -> Coeff {
        match (self, a, b) {
            (Field::Prime(p), Coeff::Fp(x), Coeff::Fp(y)) => {
                Coeff::Fp(((*x as u64 * *y as u64) % *p as u64) as u32)
            }
            (_, Coeff::Q(x), Coeff::Q(y)) => Coeff::Q(x * y),
            _ => panic!("mixed coefficient kinds"),
        }
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inv(&self, a: &Coeff) -> Option<Coeff> {
        if self.is_zero(a) {
            return None;
        }
        match (self, a) {
            (Field::Prime(p), Coeff::Fp(x)) => Some(Coeff::Fp(pow_mod(*x as u64, *p as u64 - 2, *p as u64) as u32)),
            (_, Coeff::Q(x)) => Some(Coeff::Q(x.recip())),
            _ => panic!("mixed coefficient kinds"),
        }
    }

    /// `a / b`. Panics on division by zero.
    pub fn div(&self, a: &Coeff, b: &Coeff) -> Coeff {
        self.mul(a, &self.inv(b).expect("division by zero"))
    }

    pub fn pow(&self, a: &Coeff, mut e: u64) -> Coeff {
        let mut base = a.clone();
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            e >>= 1;
        }
        acc
    }

    /// A random element; rationals are drawn as small integers.
    pub fn random<R: Rng + ?Sized>(&self, rng: &mut R) -> Coeff {
        match self {
            Field::Prime(p) => Coeff::Fp(rng.gen_range(0..*p)),
            Field::Rationals => self.from_i64(rng.gen_range(-50..=50)),
        }
    }

    /// Every element of a prime field in order; `None` for the rationals.
    pub fn elements(&self) -> Option<impl Iterator<Item = Coeff>> {
        match self {
            Field::Prime(p) => Some((0..*p).map(Coeff::Fp)),
            Field::Rationals => None,
        }
    }

    /// Canonical printed form. Prime-field values use the symmetric range.
    pub fn display(&self, a: &Coeff) -> String {
        match (self, a) {
            (Field::Prime(p), Coeff::Fp(x)) => {
                if *x > p / 2 {
                    format!("-{}", p - x)
                } else {
                    x.to_string()
                }
            }
            (_, Coeff::Q(q)) => {
                if q.is_integer() {
                    q.numer().to_string()
                } else {
                    format!("{}/{}", q.numer(), q.denom())
                }
            }
            _ => panic!("mixed coefficient kinds"),
        }
    }

    /// True when the printed form starts with a minus sign.
    pub fn is_negative_display(&self, a: &Coeff) -> bool {
        match (self, a) {
            (Field::Prime(p), Coeff::Fp(x)) => *x > p / 2,
            (_, Coeff::Q(q)) => q.is_negative(),
            _ => false,
        }
    }
}

fn pow_mod(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut acc = 1u64;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % m;
        }
        b = b * b % m;
        e >>= 1;
    }
    acc
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Field::Rationals => write!(f, "QQ"),
            Field::Prime(p) => write!(f, "GF({p})"),
        }
    }
}
