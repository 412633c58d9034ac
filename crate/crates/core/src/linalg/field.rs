//! Exact scalar fields: the rationals and prime fields of odd characteristic.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

/// Largest supported prime modulus. Residue products must fit in a `u64`.
pub const MAX_MODULUS: u64 = (1 << 31) - 1;

/// The field every scalar of an algebra lives in.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FieldSpec {
    Rational,
    /// Integers modulo an odd prime.
    Prime(u64),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FieldError {
    #[error("characteristic 2 is not supported")]
    CharacteristicTwo,
    #[error("modulus {0} is not prime")]
    NotPrime(u64),
    #[error("modulus {0} exceeds the supported maximum {MAX_MODULUS}")]
    ModulusTooLarge(u64),
    #[error("malformed scalar `{0}`")]
    Malformed(String),
    #[error("denominator of `{0}` is zero in this field")]
    ZeroDenominator(String),
}

fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= p {
        if p % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

impl FieldSpec {
    /// The prime field of order `p`, rejecting even, composite and oversized moduli.
    pub fn prime(p: u64) -> Result<FieldSpec, FieldError> {
        if p == 2 {
            return Err(FieldError::CharacteristicTwo);
        }
        if p > MAX_MODULUS {
            return Err(FieldError::ModulusTooLarge(p));
        }
        if !is_prime(p) {
            return Err(FieldError::NotPrime(p));
        }
        Ok(FieldSpec::Prime(p))
    }

    /// Zero for the rationals.
    pub fn characteristic(&self) -> u64 {
        match self {
            FieldSpec::Rational => 0,
            FieldSpec::Prime(p) => *p,
        }
    }

    pub fn zero(&self) -> Scalar {
        self.from_i64(0)
    }

    pub fn one(&self) -> Scalar {
        self.from_i64(1)
    }

    pub fn from_i64(&self, n: i64) -> Scalar {
        match *self {
            FieldSpec::Rational => Scalar::Rational(BigRational::from_integer(BigInt::from(n))),
            FieldSpec::Prime(p) => Scalar::Residue {
                value: n.rem_euclid(p as i64) as u64,
                modulus: p,
            },
        }
    }

    /// `num / den`. Panics if `den` vanishes in this field.
    pub fn ratio(&self, num: i64, den: i64) -> Scalar {
        let d = self.from_i64(den);
        assert!(!d.is_zero(), "denominator {den} vanishes in {self}");
        &self.from_i64(num) / &d
    }

    pub fn from_bigint(&self, n: &BigInt) -> Scalar {
        match *self {
            FieldSpec::Rational => Scalar::Rational(BigRational::from_integer(n.clone())),
            FieldSpec::Prime(p) => {
                let r = n.mod_floor_u64(p);
                Scalar::Residue { value: r, modulus: p }
            }
        }
    }

    /// Parses the scalar text syntax: an optional sign, an integer, or `p/q` with `q > 0`.
    pub fn parse_scalar(&self, text: &str) -> Result<Scalar, FieldError> {
        let t = text.trim();
        let malformed = || FieldError::Malformed(text.to_string());
        let (negative, body) = match t.as_bytes().first() {
            Some(b'-') => (true, &t[1..]),
            Some(b'+') => (false, &t[1..]),
            _ => (false, t),
        };
        let (num, den) = match body.split_once('/') {
            Some((n, d)) => (n, Some(d)),
            None => (body, None),
        };
        let digits = |s: &str| !s.is_empty() && s.bytes().all(|b| b.is_ascii_digit());
        if !digits(num) || den.is_some_and(|d| !digits(d)) {
            return Err(malformed());
        }
        let mut n: BigInt = num.parse().map_err(|_| malformed())?;
        if negative {
            n = -n;
        }
        let d: BigInt = match den {
            Some(d) => d.parse().map_err(|_| malformed())?,
            None => BigInt::one(),
        };
        if d.is_zero() {
            return Err(FieldError::ZeroDenominator(text.to_string()));
        }
        let dn = self.from_bigint(&d);
        if dn.is_zero() {
            return Err(FieldError::ZeroDenominator(text.to_string()));
        }
        Ok(&self.from_bigint(&n) / &dn)
    }

    /// All field elements in increasing residue order (prime fields only).
    pub fn residues(&self) -> Option<impl Iterator<Item = Scalar>> {
        match *self {
            FieldSpec::Rational => None,
            FieldSpec::Prime(p) => Some((0..p).map(move |v| Scalar::Residue { value: v, modulus: p })),
        }
    }
}

trait ModFloor {
    fn mod_floor_u64(&self, p: u64) -> u64;
}

impl ModFloor for BigInt {
    fn mod_floor_u64(&self, p: u64) -> u64 {
        let m = BigInt::from(p);
        let r = ((self % &m) + &m) % &m;
        r.to_u64().expect("residue fits in u64")
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldSpec::Rational => write!(f, "rational"),
            FieldSpec::Prime(p) => write!(f, "gf {p}"),
        }
    }
}

/// An exact field element. Both variants are kept in canonical form:
/// reduced fractions with positive denominator, or least nonnegative residues.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Scalar {
    Rational(BigRational),
    Residue { value: u64, modulus: u64 },
}

fn mod_pow(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1u64;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % m;
        }
        base = base * base % m;
        exp >>= 1;
    }
    acc
}

impl Scalar {
    pub fn field(&self) -> FieldSpec {
        match self {
            Scalar::Rational(_) => FieldSpec::Rational,
            Scalar::Residue { modulus, .. } => FieldSpec::Prime(*modulus),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Rational(q) => q.is_zero(),
            Scalar::Residue { value, .. } => *value == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Rational(q) => q.is_one(),
            Scalar::Residue { value, .. } => *value == 1,
        }
    }

    pub fn inverse(&self) -> Option<Scalar> {
        if self.is_zero() {
            return None;
        }
        Some(match self {
            Scalar::Rational(q) => Scalar::Rational(q.recip()),
            Scalar::Residue { value, modulus } => Scalar::Residue {
                value: mod_pow(*value, modulus - 2, *modulus),
                modulus: *modulus,
            },
        })
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        match self {
            Scalar::Rational(q) => Some(q),
            Scalar::Residue { .. } => None,
        }
    }

    /// Text form usable inside a basis label: `-` becomes `m` and `/` becomes `d`.
    pub fn label_fragment(&self) -> String {
        self.to_string().replace('-', "m").replace('/', "d")
    }

    fn check_same(&self, other: &Scalar) {
        if self.field() != other.field() {
            panic!("scalar field mismatch: {} vs {}", self.field(), other.field());
        }
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rational(q) => {
                if q.denom().is_one() {
                    write!(f, "{}", q.numer())
                } else {
                    write!(f, "{}/{}", q.numer(), q.denom())
                }
            }
            Scalar::Residue { value, .. } => write!(f, "{value}"),
        }
    }
}

impl PartialOrd for Scalar {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Numeric order for rationals, residue order for prime fields.
impl Ord for Scalar {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Scalar::Rational(a), Scalar::Rational(b)) => a.cmp(b),
            (Scalar::Residue { value: a, modulus: p }, Scalar::Residue { value: b, modulus: q }) => {
                p.cmp(q).then(a.cmp(b))
            }
            _ => self.field().cmp(&other.field()),
        }
    }
}

impl<'a> Add<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        self.check_same(rhs);
        match (self, rhs) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a + b),
            (Scalar::Residue { value: a, modulus }, Scalar::Residue { value: b, .. }) => Scalar::Residue {
                value: (a + b) % modulus,
                modulus: *modulus,
            },
            _ => unreachable!(),
        }
    }
}

impl<'a> Sub<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        self.check_same(rhs);
        match (self, rhs) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a - b),
            (Scalar::Residue { value: a, modulus }, Scalar::Residue { value: b, .. }) => Scalar::Residue {
                value: (a + modulus - b) % modulus,
                modulus: *modulus,
            },
            _ => unreachable!(),
        }
    }
}

impl<'a> Mul<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        self.check_same(rhs);
        match (self, rhs) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a * b),
            (Scalar::Residue { value: a, modulus }, Scalar::Residue { value: b, .. }) => Scalar::Residue {
                value: a * b % modulus,
                modulus: *modulus,
            },
            _ => unreachable!(),
        }
    }
}

impl<'a> Div<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    /// Panics on division by zero, like integer division.
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn div(self, rhs: &Scalar) -> Scalar {
        let inv = rhs.inverse().expect("division by zero scalar");
        self * &inv
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        match self {
            Scalar::Rational(a) => Scalar::Rational(-a),
            Scalar::Residue { value, modulus } => Scalar::Residue {
                value: (modulus - value) % modulus,
                modulus: *modulus,
            },
        }
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

macro_rules! forward_owned {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr<Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: Scalar) -> Scalar { (&self).$m(&rhs) }
        }
        impl<'a> $tr<&'a Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: &Scalar) -> Scalar { (&self).$m(rhs) }
        }
    )*};
}
forward_owned!(Add add, Sub sub, Mul mul, Div div);

impl AddAssign<&Scalar> for Scalar {
    fn add_assign(&mut self, rhs: &Scalar) {
        *self = &*self + rhs;
    }
}

impl SubAssign<&Scalar> for Scalar {
    fn sub_assign(&mut self, rhs: &Scalar) {
        *self = &*self - rhs;
    }
}

impl MulAssign<&Scalar> for Scalar {
    fn mul_assign(&mut self, rhs: &Scalar) {
        *self = &*self * rhs;
    }
}

impl Scalar {
    /// Absolute value of the numerator and denominator, used by rational root search.
    pub(crate) fn rational_parts(&self) -> Option<(BigInt, BigInt)> {
        self.as_rational().map(|q| (q.numer().clone(), q.denom().clone()))
    }

    pub(crate) fn is_negative(&self) -> bool {
        self.as_rational().is_some_and(|q| q.is_negative())
    }
}
