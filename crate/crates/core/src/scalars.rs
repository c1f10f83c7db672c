//! Exact scalars: arbitrary-precision rationals and prime fields.

use std::fmt;
use std::str::FromStr;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// The coefficient field of all objects in one ambient context.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Field {
    Rationals,
    Prime(u64),
}

impl Field {
    /// Builds the prime field `F_p`, rejecting composite or out-of-range moduli.
    pub fn prime(p: u64) -> Result<Field> {
        if p >= (1 << 62) || !is_prime(p) {
            return Err(Error::InvalidField(format!("{p} is not a supported prime")));
        }
        Ok(Field::Prime(p))
    }

    pub fn characteristic(&self) -> u64 {
        match self {
            Field::Rationals => 0,
            Field::Prime(p) => *p,
        }
    }

    pub fn zero(&self) -> Scalar {
        self.from_i64(0)
    }

    pub fn one(&self) -> Scalar {
        self.from_i64(1)
    }

    pub fn from_i64(&self, v: i64) -> Scalar {
        self.from_bigint(&BigInt::from(v))
    }

    pub fn from_bigint(&self, v: &BigInt) -> Scalar {
        match self {
            Field::Rationals => Scalar::Rational(BigRational::from_integer(v.clone())),
            Field::Prime(p) => {
                let m = BigInt::from(*p);
                let r = v.mod_floor(&m).to_u64().expect("reduced residue fits in u64");
                Scalar::Modular { value: r, modulus: *p }
            }
        }
    }

    /// The fraction `num/den` in this field.
    pub fn from_ratio(&self, num: i64, den: i64) -> Result<Scalar> {
        self.from_i64(num).div(&self.from_i64(den))
    }

    /// Reduces a rational number into the field; fails when the denominator vanishes mod p.
    pub fn from_rational(&self, q: &BigRational) -> Result<Scalar> {
        match self {
            Field::Rationals => Ok(Scalar::Rational(q.clone())),
            Field::Prime(_) => self.from_bigint(q.numer()).div(&self.from_bigint(q.denom())),
        }
    }

    /// `binom(n, k)` evaluated over the integers and then reduced into the field.
    pub fn binomial(&self, n: u64, k: u64) -> Scalar {
        if k > n {
            return self.zero();
        }
        let b: BigUint = num_integer::binomial(BigUint::from(n), BigUint::from(k));
        self.from_bigint(&BigInt::from(b))
    }

    /// `n!` reduced into the field (zero when `n >= p`).
    pub fn factorial(&self, n: u64) -> Scalar {
        let mut acc = BigInt::one();
        for i in 2..=n {
            acc *= i;
        }
        self.from_bigint(&acc)
    }

    /// The global characteristic assumption: char 0 or char greater than `degree`.
    pub fn char_guard(&self, degree: u32) -> Result<()> {
        match self {
            Field::Rationals => Ok(()),
            Field::Prime(p) if *p > degree as u64 => Ok(()),
            Field::Prime(p) => Err(Error::CharacteristicTooSmall { characteristic: *p, degree }),
        }
    }

    /// A square root of `s` in the field, if one exists.
    pub fn sqrt(&self, s: &Scalar) -> Option<Scalar> {
        match (self, s) {
            (Field::Rationals, Scalar::Rational(q)) => {
                if q.is_negative() {
                    return None;
                }
                let n = q.numer().sqrt();
                let d = q.denom().sqrt();
                if &(&n * &n) == q.numer() && &(&d * &d) == q.denom() {
                    Some(Scalar::Rational(BigRational::new(n, d)))
                } else {
                    None
                }
            }
            (Field::Prime(p), Scalar::Modular { value, .. }) => {
                tonelli_shanks(*value, *p).map(|r| Scalar::Modular { value: r.min(p - r), modulus: *p })
            }
            _ => None,
        }
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Field::Rationals => write!(f, "q"),
            Field::Prime(p) => write!(f, "fp:{p}"),
        }
    }
}

impl FromStr for Field {
    type Err = Error;

    /// Accepts `q` (also `Q`, `qq`) or `fp:<p>`.
    fn from_str(s: &str) -> Result<Field> {
        let t = s.trim();
        if matches!(t, "q" | "Q" | "qq" | "QQ") {
            return Ok(Field::Rationals);
        }
        if let Some(rest) = t.strip_prefix("fp:") {
            let p: u64 = rest
                .parse()
                .map_err(|_| Error::InvalidField(format!("bad modulus in '{s}'")))?;
            return Field::prime(p);
        }
        Err(Error::InvalidField(format!("unknown field '{s}', expected q or fp:<p>")))
    }
}

/// A field element. Rationals are kept in lowest terms, residues in `[0, p)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Scalar {
    Rational(BigRational),
    Modular { value: u64, modulus: u64 },
}

impl Scalar {
    pub fn field(&self) -> Field {
        match self {
            Scalar::Rational(_) => Field::Rationals,
            Scalar::Modular { modulus, .. } => Field::Prime(*modulus),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Rational(q) => q.is_zero(),
            Scalar::Modular { value, .. } => *value == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Rational(q) => q.is_one(),
            Scalar::Modular { value, .. } => *value == 1,
        }
    }

    pub fn checked_add(&self, o: &Scalar) -> Result<Scalar> {
        match (self, o) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Ok(Scalar::Rational(a + b)),
            (Scalar::Modular { value: a, modulus: p }, Scalar::Modular { value: b, modulus: q }) if p == q => {
                Ok(Scalar::Modular { value: ((*a as u128 + *b as u128) % *p as u128) as u64, modulus: *p })
            }
            _ => Err(Error::FieldMismatch),
        }
    }

    pub fn checked_mul(&self, o: &Scalar) -> Result<Scalar> {
        match (self, o) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Ok(Scalar::Rational(a * b)),
            (Scalar::Modular { value: a, modulus: p }, Scalar::Modular { value: b, modulus: q }) if p == q => {
                Ok(Scalar::Modular { value: mulmod(*a, *b, *p), modulus: *p })
            }
            _ => Err(Error::FieldMismatch),
        }
    }

    pub fn checked_sub(&self, o: &Scalar) -> Result<Scalar> {
        self.checked_add(&o.neg())
    }

    pub fn neg(&self) -> Scalar {
        match self {
            Scalar::Rational(a) => Scalar::Rational(-a),
            Scalar::Modular { value, modulus } => {
                Scalar::Modular { value: if *value == 0 { 0 } else { modulus - value }, modulus: *modulus }
            }
        }
    }

    pub fn inverse(&self) -> Result<Scalar> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(match self {
            Scalar::Rational(a) => Scalar::Rational(a.recip()),
            Scalar::Modular { value, modulus } => {
                Scalar::Modular { value: powmod(*value, modulus - 2, *modulus), modulus: *modulus }
            }
        })
    }

    pub fn div(&self, o: &Scalar) -> Result<Scalar> {
        self.checked_mul(&o.inverse()?)
    }

    pub fn pow(&self, e: u32) -> Scalar {
        let mut acc = self.field().one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// The rational value, if this is a rational scalar.
    pub fn as_rational(&self) -> Option<&BigRational> {
        match self {
            Scalar::Rational(q) => Some(q),
            _ => None,
        }
    }

    /// True when the scalar prints with a leading minus sign.
    pub fn is_negative(&self) -> bool {
        match self {
            Scalar::Rational(q) => q.is_negative(),
            Scalar::Modular { .. } => false,
        }
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rational(q) => {
                if q.is_integer() {
                    write!(f, "{}", q.numer())
                } else {
                    write!(f, "{}/{}", q.numer(), q.denom())
                }
            }
            Scalar::Modular { value, .. } => write!(f, "{value}"),
        }
    }
}

// Operator impls panic on mixed fields; use the checked_* methods where that can happen.
impl std::ops::Add for &Scalar {
    type Output = Scalar;
    fn add(self, o: &Scalar) -> Scalar {
        self.checked_add(o).expect("scalars from different fields")
    }
}

impl std::ops::Sub for &Scalar {
    type Output = Scalar;
    fn sub(self, o: &Scalar) -> Scalar {
        self.checked_sub(o).expect("scalars from different fields")
    }
}

impl std::ops::Mul for &Scalar {
    type Output = Scalar;
    fn mul(self, o: &Scalar) -> Scalar {
        self.checked_mul(o).expect("scalars from different fields")
    }
}

impl std::ops::Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar::neg(self)
    }
}

pub(crate) fn mulmod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

pub(crate) fn powmod(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1 % p;
    a %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = mulmod(r, a, p);
        }
        a = mulmod(a, a, p);
        e >>= 1;
    }
    r
}

/// Deterministic Miller-Rabin for 64-bit integers.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    const BASES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    for &b in &BASES {
        if n == b {
            return true;
        }
        if n % b == 0 {
            return false;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    'outer: for &a in &BASES {
        let mut x = powmod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mulmod(x, x, n);
            if x == n - 1 {
                continue 'outer;
            }
        }
        return false;
    }
    true
}

fn tonelli_shanks(a: u64, p: u64) -> Option<u64> {
    let a = a % p;
    if a == 0 || p == 2 {
        return Some(a);
    }
    if powmod(a, (p - 1) / 2, p) != 1 {
        return None;
    }
    let mut q = p - 1;
    let mut s = 0;
    while q % 2 == 0 {
        q /= 2;
        s += 1;
    }
    let mut z = 2;
    while powmod(z, (p - 1) / 2, p) != p - 1 {
        z += 1;
    }
    let mut m = s;
    let mut c = powmod(z, q, p);
    let mut t = powmod(a, q, p);
    let mut r = powmod(a, (q + 1) / 2, p);
    while t != 1 {
        let mut i = 0;
        let mut tt = t;
        while tt != 1 {
            tt = mulmod(tt, tt, p);
            i += 1;
        }
        let b = powmod(c, 1 << (m - i - 1), p);
        m = i;
        c = mulmod(b, b, p);
        t = mulmod(t, c, p);
        r = mulmod(r, b, p);
    }
    Some(r)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn guard_examples() {
        assert!(Field::Rationals.char_guard(100).is_ok());
        let f5 = Field::prime(5).unwrap();
        assert!(f5.char_guard(4).is_ok());
        assert!(matches!(f5.char_guard(5), Err(Error::CharacteristicTooSmall { characteristic: 5, degree: 5 })));
        assert!(Field::prime(2).unwrap().char_guard(3).is_err());
    }

    #[test]
    fn binomials_are_integer_first() {
        assert_eq!(Field::Rationals.binomial(2, 1), Field::Rationals.from_i64(2));
        let f3 = Field::prime(3).unwrap();
        assert!(f3.binomial(3, 1).is_zero());
        assert_eq!(f3.binomial(4, 1), f3.one());
    }

    #[test]
    fn modular_division() {
        let f7 = Field::prime(7).unwrap();
        assert_eq!(f7.from_ratio(3, 5).unwrap(), f7.from_i64(2));
        assert!(matches!(f7.one().div(&f7.zero()), Err(Error::DivisionByZero)));
    }

    #[test]
    fn rejects_composites() {
        assert!(Field::prime(91).is_err());
        assert!(Field::prime(1).is_err());
        assert!(Field::prime(101).is_ok());
        assert!("fp:12".parse::<Field>().is_err());
        assert_eq!("fp:13".parse::<Field>().unwrap(), Field::Prime(13));
    }

    #[test]
    fn square_roots() {
        let q = Field::Rationals;
        assert_eq!(q.sqrt(&q.from_ratio(9, 4).unwrap()), Some(q.from_ratio(3, 2).unwrap()));
        assert_eq!(q.sqrt(&q.from_i64(2)), None);
        let f = Field::prime(101).unwrap();
        let r = f.sqrt(&f.from_i64(5)).unwrap();
        assert_eq!(&r * &r, f.from_i64(5));
    }

    #[test]
    fn mixed_fields_error() {
        let a = Field::Rationals.one();
        let b = Field::prime(5).unwrap().one();
        assert!(matches!(a.checked_add(&b), Err(Error::FieldMismatch)));
    }
}
