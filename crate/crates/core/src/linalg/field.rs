//! Ground fields: prime fields GF(p) and the rationals.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// A ground field. Prime fields keep their characteristic below 2^31 so that
/// products of two reduced residues fit in a `u64`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Field {
    Prime(u32),
    Rational,
}

/// A field element. Residues are always reduced into `0..p`; rationals are
/// kept in lowest terms, so structural equality is field equality.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Scalar {
    Mod(u32),
    Rat(BigRational),
}

fn is_prime(p: u32) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u32;
    while (d as u64) * (d as u64) <= p as u64 {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

pub(crate) fn pow_mod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1u64 % p;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    acc
}

impl Field {
    pub fn prime(p: u32) -> Result<Field> {
        if p >= (1 << 31) || !is_prime(p) {
            return Err(Error::InvalidField(format!("{p} is not a supported prime")));
        }
        Ok(Field::Prime(p))
    }

    /// 0 for the rationals.
    pub fn characteristic(self) -> u32 {
        match self {
            Field::Prime(p) => p,
            Field::Rational => 0,
        }
    }

    pub fn is_finite(self) -> bool {
        matches!(self, Field::Prime(_))
    }

    pub fn zero(self) -> Scalar {
        match self {
            Field::Prime(_) => Scalar::Mod(0),
            Field::Rational => Scalar::Rat(BigRational::zero()),
        }
    }

    pub fn one(self) -> Scalar {
        match self {
            Field::Prime(_) => Scalar::Mod(1),
            Field::Rational => Scalar::Rat(BigRational::one()),
        }
    }

    pub fn from_int(self, n: i64) -> Scalar {
        match self {
            Field::Prime(p) => Scalar::Mod(n.rem_euclid(p as i64) as u32),
            Field::Rational => Scalar::Rat(BigRational::from_integer(BigInt::from(n))),
        }
    }

    pub fn from_ratio(self, num: i64, den: i64) -> Result<Scalar> {
        if den == 0 {
            return Err(Error::Parse("zero denominator".into()));
        }
        let d = self
            .inv(&self.from_int(den))
            .ok_or_else(|| Error::Parse(format!("denominator {den} vanishes in {self}")))?;
        Ok(self.mul(&self.from_int(num), &d))
    }

    pub fn is_zero(self, a: &Scalar) -> bool {
        match a {
            Scalar::Mod(v) => *v == 0,
            Scalar::Rat(r) => r.is_zero(),
        }
    }

    pub fn is_one(self, a: &Scalar) -> bool {
        match a {
            Scalar::Mod(v) => *v == 1,
            Scalar::Rat(r) => r.is_one(),
        }
    }

    pub fn add(self, a: &Scalar, b: &Scalar) -> Scalar {
        match (self, a, b) {
            (Field::Prime(p), Scalar::Mod(x), Scalar::Mod(y)) => {
                Scalar::Mod(((*x as u64 + *y as u64) % p as u64) as u32)
            }
            (Field::Rational, Scalar::Rat(x), Scalar::Rat(y)) => Scalar::Rat(x + y),
            _ => panic!("scalar does not belong to {self}"),
        }
    }

    pub fn neg(self, a: &Scalar) -> Scalar {
        match (self, a) {
            (Field::Prime(p), Scalar::Mod(x)) => Scalar::Mod(if *x == 0 { 0 } else { p - x }),
            (Field::Rational, Scalar::Rat(x)) => Scalar::Rat(-x),
            _ => panic!("scalar does not belong to {self}"),
        }
    }

    pub fn sub(self, a: &Scalar, b: &Scalar) -> Scalar {
        self.add(a, &self.neg(b))
    }

    pub fn mul(self, a: &Scalar, b: &Scalar) -> Scalar {
        match (self, a, b) {
            (Field::Prime(p), Scalar::Mod(x), Scalar::Mod(y)) => {
                Scalar::Mod(((*x as u64 * *y as u64) % p as u64) as u32)
            }
            (Field::Rational, Scalar::Rat(x), Scalar::Rat(y)) => Scalar::Rat(x * y),
            _ => panic!("scalar does not belong to {self}"),
        }
    }

    pub fn inv(self, a: &Scalar) -> Option<Scalar> {
        if self.is_zero(a) {
            return None;
        }
        match (self, a) {
            (Field::Prime(p), Scalar::Mod(x)) => {
                Some(Scalar::Mod(pow_mod(*x as u64, p as u64 - 2, p as u64) as u32))
            }
            (Field::Rational, Scalar::Rat(x)) => Some(Scalar::Rat(x.recip())),
            _ => panic!("scalar does not belong to {self}"),
        }
    }

    pub fn pow(self, a: &Scalar, e: u64) -> Scalar {
        let mut acc = self.one();
        for _ in 0..e {
            acc = self.mul(&acc, a);
        }
        acc
    }

    /// All elements, in the order 0, 1, …, p−1. `None` for the rationals.
    pub fn elements(self) -> Option<Vec<Scalar>> {
        match self {
            Field::Prime(p) => Some((0..p).map(Scalar::Mod).collect()),
            Field::Rational => None,
        }
    }

    /// Parses an integer or `a/b` literal into the field.
    pub fn parse_scalar(self, text: &str) -> Result<Scalar> {
        let text = text.trim();
        let parse_int = |s: &str| -> Result<BigInt> {
            s.trim()
                .parse::<BigInt>()
                .map_err(|_| Error::Parse(format!("bad scalar literal `{text}`")))
        };
        let (num, den) = match text.split_once('/') {
            Some((n, d)) => (parse_int(n)?, parse_int(d)?),
            None => (parse_int(text)?, BigInt::one()),
        };
        if den.is_zero() {
            return Err(Error::Parse(format!("zero denominator in `{text}`")));
        }
        match self {
            Field::Rational => Ok(Scalar::Rat(BigRational::new(num, den))),
            Field::Prime(p) => {
                let pb = BigInt::from(p);
                let reduce = |x: &BigInt| -> u32 {
                    let r = ((x % &pb) + &pb) % &pb;
                    r.to_u32().expect("residue fits")
                };
                let n = Scalar::Mod(reduce(&num));
                let d = Scalar::Mod(reduce(&den));
                let di = self
                    .inv(&d)
                    .ok_or_else(|| Error::Parse(format!("denominator vanishes mod {p} in `{text}`")))?;
                Ok(self.mul(&n, &di))
            }
        }
    }

    /// Integer view of a scalar: the residue in `0..p`, or an integral rational.
    pub fn to_i64(self, a: &Scalar) -> Option<i64> {
        match a {
            Scalar::Mod(v) => Some(*v as i64),
            Scalar::Rat(r) if r.is_integer() => r.to_integer().to_i64(),
            Scalar::Rat(_) => None,
        }
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Field::Prime(p) => write!(f, "GF({p})"),
            Field::Rational => write!(f, "Q"),
        }
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Mod(v) => write!(f, "{v}"),
            Scalar::Rat(r) => {
                if r.is_integer() {
                    write!(f, "{}", r.numer())
                } else if r.is_negative() {
                    write!(f, "-{}/{}", r.numer().abs(), r.denom())
                } else {
                    write!(f, "{}/{}", r.numer(), r.denom())
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn rejects_composite_modulus() {
        assert!(Field::prime(9).is_err());
        assert!(Field::prime(1).is_err());
        assert!(Field::prime(7).is_ok());
    }

    #[test]
    fn parses_fractions() {
        let f = Field::Prime(7);
        // 1/2 = 4 mod 7
        assert_eq!(f.parse_scalar("1/2").unwrap(), Scalar::Mod(4));
        assert_eq!(f.parse_scalar("-1").unwrap(), Scalar::Mod(6));
        let q = Field::Rational;
        assert_eq!(q.parse_scalar("-2/4").unwrap().to_string(), "-1/2");
        assert!(f.parse_scalar("1/7").is_err());
    }

    fn field_axioms(f: Field, a: i64, b: i64, c: i64) {
        let (a, b, c) = (f.from_int(a), f.from_int(b), f.from_int(c));
        assert_eq!(f.mul(&a, &f.add(&b, &c)), f.add(&f.mul(&a, &b), &f.mul(&a, &c)));
        assert_eq!(f.mul(&f.mul(&a, &b), &c), f.mul(&a, &f.mul(&b, &c)));
        assert_eq!(f.add(&a, &f.neg(&a)), f.zero());
        if let Some(ai) = f.inv(&a) {
            assert!(f.is_one(&f.mul(&a, &ai)));
        } else {
            assert!(f.is_zero(&a));
        }
    }

    proptest! {
        #[test]
        fn gf_axioms(a in -50i64..50, b in -50i64..50, c in -50i64..50) {
            field_axioms(Field::Prime(7), a, b, c);
            field_axioms(Field::Prime(2), a, b, c);
        }

        #[test]
        fn rational_axioms(a in -50i64..50, b in -50i64..50, c in -50i64..50) {
            field_axioms(Field::Rational, a, b, c);
        }
    }
}
