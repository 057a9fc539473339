use num::bigint::BigInt;
use num::rational::BigRational;
use num::{One, Signed, ToPrimitive, Zero};

use super::LinalgError;

/// Exact scalar. Over a prime field the value is kept as an integer in `0..p`.
pub type Scalar = BigRational;

/// Ground field: the rationals or a prime field `F_p` with `p < 2^31`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Field {
    Rationals,
    Prime(u32),
}

fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

impl Field {
    pub fn prime(p: u64) -> Result<Field, LinalgError> {
        if p < (1u64 << 31) && is_prime(p) {
            Ok(Field::Prime(p as u32))
        } else {
            Err(LinalgError::NotPrime(p))
        }
    }

    /// `q` or `fp:<p>`.
    pub fn parse_spec(spec: &str) -> Result<Field, LinalgError> {
        let s = spec.trim();
        if s == "q" || s == "Q" {
            return Ok(Field::Rationals);
        }
        if let Some(rest) = s.strip_prefix("fp:") {
            let p: u64 = rest
                .parse()
                .map_err(|_| LinalgError::ParseField(spec.to_string()))?;
            return Field::prime(p);
        }
        Err(LinalgError::ParseField(spec.to_string()))
    }

    pub fn spec(&self) -> String {
        match self {
            Field::Rationals => "q".to_string(),
            Field::Prime(p) => format!("fp:{p}"),
        }
    }

    pub fn zero(&self) -> Scalar {
        Scalar::zero()
    }

    pub fn one(&self) -> Scalar {
        Scalar::one()
    }

    pub fn from_i64(&self, v: i64) -> Scalar {
        match self {
            Field::Rationals => Scalar::from_integer(BigInt::from(v)),
            Field::Prime(p) => {
                let r = v.rem_euclid(*p as i64);
                Scalar::from_integer(BigInt::from(r))
            }
        }
    }

    fn residue(a: &Scalar) -> u64 {
        debug_assert!(a.is_integer());
        a.numer().to_u64().expect("prime-field scalar out of range")
    }

    fn from_residue(r: u64) -> Scalar {
        Scalar::from_integer(BigInt::from(r))
    }

    fn pow_mod(mut b: u64, mut e: u64, p: u64) -> u64 {
        let mut acc = 1u64;
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

    /// Maps an arbitrary rational into the field (fails if the denominator vanishes mod p).
    pub fn embed(&self, x: &Scalar) -> Result<Scalar, LinalgError> {
        match self {
            Field::Rationals => Ok(x.clone()),
            Field::Prime(p) => {
                let pb = BigInt::from(*p);
                let num = ((x.numer() % &pb) + &pb) % &pb;
                let den = ((x.denom() % &pb) + &pb) % &pb;
                if den.is_zero() {
                    return Err(LinalgError::DivisionByZero);
                }
                let n = num.to_u64().unwrap();
                let d = den.to_u64().unwrap();
                let p = *p as u64;
                Ok(Self::from_residue(n * Self::pow_mod(d, p - 2, p) % p))
            }
        }
    }

    pub fn contains(&self, x: &Scalar) -> bool {
        match self {
            Field::Rationals => true,
            Field::Prime(p) => x.is_integer() && !x.is_negative() && x.numer() < &BigInt::from(*p),
        }
    }

    pub fn add(&self, a: &Scalar, b: &Scalar) -> Scalar {
        match self {
            Field::Rationals => a + b,
            Field::Prime(p) => {
                let p = *p as u64;
                Self::from_residue((Self::residue(a) + Self::residue(b)) % p)
            }
        }
    }

    pub fn sub(&self, a: &Scalar, b: &Scalar) -> Scalar {
        match self {
            Field::Rationals => a - b,
            Field::Prime(p) => {
                let p = *p as u64;
                Self::from_residue((Self::residue(a) + p - Self::residue(b)) % p)
            }
        }
    }

    pub fn neg(&self, a: &Scalar) -> Scalar {
        match self {
            Field::Rationals => -a,
            Field::Prime(p) => {
                let p = *p as u64;
                Self::from_residue((p - Self::residue(a)) % p)
            }
        }
    }

    pub fn mul(&self, a: &Scalar, b: &Scalar) -> Scalar {
        match self {
            Field::Rationals => a * b,
            Field::Prime(p) => {
                let p = *p as u64;
                Self::from_residue(Self::residue(a) * Self::residue(b) % p)
            }
        }
    }

    pub fn inv(&self, a: &Scalar) -> Result<Scalar, LinalgError> {
        if a.is_zero() {
            return Err(LinalgError::DivisionByZero);
        }
        match self {
            Field::Rationals => Ok(a.recip()),
            Field::Prime(p) => {
                let p = *p as u64;
                Ok(Self::from_residue(Self::pow_mod(Self::residue(a), p - 2, p)))
            }
        }
    }

    pub fn div(&self, a: &Scalar, b: &Scalar) -> Result<Scalar, LinalgError> {
        Ok(self.mul(a, &self.inv(b)?))
    }

    /// `(-1)^k` as a field element.
    pub fn sign(&self, k: i64) -> Scalar {
        if k.rem_euclid(2) == 0 {
            self.one()
        } else {
            self.from_i64(-1)
        }
    }

    pub fn parse(&self, text: &str) -> Result<Scalar, LinalgError> {
        let t = text.trim();
        let bad = || LinalgError::ParseScalar(text.to_string());
        let value = match t.split_once('/') {
            Some((n, d)) => {
                let n: BigInt = n.trim().parse().map_err(|_| bad())?;
                let d: BigInt = d.trim().parse().map_err(|_| bad())?;
                if d.is_zero() {
                    return Err(bad());
                }
                Scalar::new(n, d)
            }
            None => Scalar::from_integer(t.parse::<BigInt>().map_err(|_| bad())?),
        };
        self.embed(&value)
    }

    pub fn format(&self, a: &Scalar) -> String {
        a.to_string()
    }
}
