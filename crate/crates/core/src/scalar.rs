//! Exact scalar arithmetic over the three supported coefficient fields:
//! the rationals Q, the Gaussian rationals Q(i), and prime fields F_p
//! with p < 2^31.
//!
//! Every value is exact. Rationals are kept in lowest terms with positive
//! denominator, Gaussian rationals as a pair of such fractions, prime-field
//! elements as residues in [0, p). There is no floating point anywhere.

use std::fmt;
use std::str::FromStr;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::QciError;

const MAX_MODULUS: u64 = 1 << 31;

/// Trial-division primality test, sufficient for moduli below 2^31.
fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n.is_multiple_of(2) {
        return n == 2;
    }
    let mut d = 3;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

/// One of the supported coefficient fields.
///
/// Construct through [`FieldDescriptor::rationals`],
/// [`FieldDescriptor::gaussian_rationals`], or
/// [`FieldDescriptor::prime_field`]; the latter certifies primality of the
/// modulus by trial division. Parses from and displays as `Q`, `Q(i)`,
/// or `Fp:<prime>`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct FieldDescriptor(Kind);

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
enum Kind {
    Rationals,
    Gaussian,
    Prime(u64),
}

impl FieldDescriptor {
    pub fn rationals() -> Self {
        FieldDescriptor(Kind::Rationals)
    }

    pub fn gaussian_rationals() -> Self {
        FieldDescriptor(Kind::Gaussian)
    }

    /// A prime field F_p. Fails if `p` is not prime or is out of range.
    pub fn prime_field(p: u64) -> Result<Self, QciError> {
        if p >= MAX_MODULUS {
            return Err(QciError::ModulusTooLarge(p));
        }
        if !is_prime(p) {
            return Err(QciError::NotPrime(p));
        }
        Ok(FieldDescriptor(Kind::Prime(p)))
    }

    pub fn is_rationals(&self) -> bool {
        matches!(self.0, Kind::Rationals)
    }

    pub fn is_gaussian_rationals(&self) -> bool {
        matches!(self.0, Kind::Gaussian)
    }

    pub fn prime_modulus(&self) -> Option<u64> {
        match self.0 {
            Kind::Prime(p) => Some(p),
            _ => None,
        }
    }

    /// 0 for the characteristic-zero fields, p for F_p.
    pub fn characteristic(&self) -> u64 {
        match self.0 {
            Kind::Prime(p) => p,
            _ => 0,
        }
    }

    /// Whether the field contains a square root of -1.
    ///
    /// True for Q(i); true for F_p exactly when p = 2 or p = 1 (mod 4);
    /// false for Q.
    pub fn has_sqrt_minus_one(&self) -> bool {
        match self.0 {
            Kind::Rationals => false,
            Kind::Gaussian => true,
            Kind::Prime(p) => p == 2 || p % 4 == 1,
        }
    }
}

impl fmt::Display for FieldDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.0 {
            Kind::Rationals => write!(f, "Q"),
            Kind::Gaussian => write!(f, "Q(i)"),
            Kind::Prime(p) => write!(f, "Fp:{p}"),
        }
    }
}

impl FromStr for FieldDescriptor {
    type Err = QciError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let t = s.trim();
        match t {
            "Q" => Ok(FieldDescriptor::rationals()),
            "Q(i)" => Ok(FieldDescriptor::gaussian_rationals()),
            _ => {
                if let Some(rest) = t.strip_prefix("Fp:") {
                    let p: u64 = rest
                        .trim()
                        .parse()
                        .map_err(|_| QciError::ParseDescriptor(s.to_string()))?;
                    FieldDescriptor::prime_field(p)
                } else {
                    Err(QciError::ParseDescriptor(s.to_string()))
                }
            }
        }
    }
}

/// An exact element of one of the supported fields.
///
/// The carried descriptor makes cross-field arithmetic a checked error
/// rather than a silent coercion.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct FieldScalar {
    desc: FieldDescriptor,
    value: Value,
}

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
enum Value {
    Rat(BigRational),
    Gauss(BigRational, BigRational),
    Mod(u64),
}

impl FieldScalar {
    pub fn descriptor(&self) -> FieldDescriptor {
        self.desc
    }

    pub fn zero(desc: FieldDescriptor) -> Self {
        Self::from_integer(desc, 0)
    }

    pub fn one(desc: FieldDescriptor) -> Self {
        Self::from_integer(desc, 1)
    }

    pub fn minus_one(desc: FieldDescriptor) -> Self {
        Self::from_integer(desc, -1)
    }

    /// Embed an integer, reducing modulo p over a prime field.
    pub fn from_integer(desc: FieldDescriptor, n: i64) -> Self {
        let value = match desc.0 {
            Kind::Rationals => Value::Rat(BigRational::from(BigInt::from(n))),
            Kind::Gaussian => Value::Gauss(
                BigRational::from(BigInt::from(n)),
                BigRational::zero(),
            ),
            Kind::Prime(p) => Value::Mod(reduce_mod(n, p)),
        };
        FieldScalar { desc, value }
    }

    /// Build a rational a/b over Q or Q(i). Fails over F_p (use
    /// [`FieldScalar::from_integer`] plus [`FieldScalar::div`] there).
    pub fn from_ratio(desc: FieldDescriptor, num: i64, den: i64) -> Result<Self, QciError> {
        if den == 0 {
            return Err(QciError::DivisionByZero);
        }
        let r = BigRational::new(BigInt::from(num), BigInt::from(den));
        match desc.0 {
            Kind::Rationals => Ok(FieldScalar {
                desc,
                value: Value::Rat(r),
            }),
            Kind::Gaussian => Ok(FieldScalar {
                desc,
                value: Value::Gauss(r, BigRational::zero()),
            }),
            Kind::Prime(_) => Err(QciError::ParseScalar {
                input: format!("{num}/{den}"),
                field: desc.to_string(),
                reason: "fractions are not prime-field literals".into(),
            }),
        }
    }

    /// The imaginary unit of Q(i).
    pub fn imaginary_unit(desc: FieldDescriptor) -> Result<Self, QciError> {
        match desc.0 {
            Kind::Gaussian => Ok(FieldScalar {
                desc,
                value: Value::Gauss(BigRational::zero(), BigRational::one()),
            }),
            _ => Err(QciError::UnsupportedSqrtArgument(format!(
                "{desc} has no distinguished imaginary unit"
            ))),
        }
    }

    /// The residue r mod p. Accepts any u64 and reduces.
    pub fn from_residue(desc: FieldDescriptor, r: u64) -> Result<Self, QciError> {
        match desc.0 {
            Kind::Prime(p) => Ok(FieldScalar {
                desc,
                value: Value::Mod(r % p),
            }),
            _ => Err(QciError::ParseScalar {
                input: r.to_string(),
                field: desc.to_string(),
                reason: "residues only exist over prime fields".into(),
            }),
        }
    }

    /// Residue representative over a prime field, if this is one.
    pub fn residue(&self) -> Option<u64> {
        match &self.value {
            Value::Mod(r) => Some(*r),
            _ => None,
        }
    }

    pub fn is_zero(&self) -> bool {
        match &self.value {
            Value::Rat(r) => r.is_zero(),
            Value::Gauss(re, im) => re.is_zero() && im.is_zero(),
            Value::Mod(r) => *r == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        *self == Self::one(self.desc)
    }

    fn check_same(&self, rhs: &Self) -> Result<(), QciError> {
        if self.desc == rhs.desc {
            Ok(())
        } else {
            Err(QciError::DescriptorMismatch {
                left: self.desc.to_string(),
                right: rhs.desc.to_string(),
            })
        }
    }

    pub fn add(&self, rhs: &Self) -> Result<Self, QciError> {
        self.check_same(rhs)?;
        Ok(self.add_raw(rhs))
    }

    pub fn sub(&self, rhs: &Self) -> Result<Self, QciError> {
        self.check_same(rhs)?;
        Ok(self.sub_raw(rhs))
    }

    pub fn mul(&self, rhs: &Self) -> Result<Self, QciError> {
        self.check_same(rhs)?;
        Ok(self.mul_raw(rhs))
    }

    pub fn div(&self, rhs: &Self) -> Result<Self, QciError> {
        self.check_same(rhs)?;
        Ok(self.mul_raw(&rhs.inv()?))
    }

    pub fn neg(&self) -> Self {
        let value = match &self.value {
            Value::Rat(r) => Value::Rat(-r),
            Value::Gauss(re, im) => Value::Gauss(-re, -im),
            Value::Mod(r) => Value::Mod(mod_neg(*r, self.modulus())),
        };
        FieldScalar {
            desc: self.desc,
            value,
        }
    }

    /// Multiplicative inverse. Fails on zero.
    pub fn inv(&self) -> Result<Self, QciError> {
        if self.is_zero() {
            return Err(QciError::DivisionByZero);
        }
        let value = match &self.value {
            Value::Rat(r) => Value::Rat(r.recip()),
            Value::Gauss(re, im) => {
                // (a + bi)^-1 = (a - bi) / (a^2 + b^2)
                let norm = re * re + im * im;
                Value::Gauss(re / &norm, -im / &norm)
            }
            Value::Mod(r) => Value::Mod(mod_inv(*r, self.modulus())),
        };
        Ok(FieldScalar {
            desc: self.desc,
            value,
        })
    }

    /// Exact integer power by square-and-multiply; `pow(a, 0) = 1`.
    /// Negative exponents require a nonzero base.
    pub fn pow(&self, e: i64) -> Result<Self, QciError> {
        let base = if e < 0 { self.inv()? } else { self.clone() };
        let mut acc = Self::one(self.desc);
        let mut sq = base;
        let mut rem = e.unsigned_abs();
        while rem > 0 {
            if rem & 1 == 1 {
                acc = acc.mul_raw(&sq);
            }
            rem >>= 1;
            if rem > 0 {
                sq = sq.mul_raw(&sq);
            }
        }
        Ok(acc)
    }

    /// A square root of `self`, defined only for 1 and -1.
    ///
    /// Returns `None` when the field has no such root. The branch choice is
    /// canonical: 1 for argument 1, the imaginary unit over Q(i), and the
    /// smallest residue r with r^2 = p - 1 over F_p.
    pub fn sqrt(&self) -> Result<Option<Self>, QciError> {
        if self.is_one() {
            return Ok(Some(Self::one(self.desc)));
        }
        if *self == Self::minus_one(self.desc) {
            return Ok(match self.desc.0 {
                Kind::Rationals => None,
                Kind::Gaussian => Some(Self::imaginary_unit(self.desc).expect("gaussian field")),
                Kind::Prime(p) => sqrt_minus_one_mod(p).map(|r| FieldScalar {
                    desc: self.desc,
                    value: Value::Mod(r),
                }),
            });
        }
        Err(QciError::UnsupportedSqrtArgument(self.to_string()))
    }

    /// Order of a nonzero element in the multiplicative group, when finite.
    ///
    /// Over Q and Q(i) only the roots of unity (1, -1, i, -i) have finite
    /// order; over F_p the order always exists and divides p - 1.
    pub fn multiplicative_order(&self) -> Result<Option<u64>, QciError> {
        if self.is_zero() {
            return Err(QciError::DivisionByZero);
        }
        match &self.value {
            Value::Mod(r) => Ok(Some(mod_order(*r, self.modulus()))),
            _ => {
                let one = Self::one(self.desc);
                let mut acc = self.clone();
                for k in 1..=4u64 {
                    if acc == one {
                        return Ok(Some(k));
                    }
                    acc = acc.mul_raw(self);
                }
                Ok(None)
            }
        }
    }

    fn modulus(&self) -> u64 {
        self.desc
            .prime_modulus()
            .expect("residue value implies a prime-field descriptor")
    }

    // Raw arithmetic skips the descriptor check. Callers validate once up
    // front (matrix and element constructors enforce uniform descriptors).

    pub(crate) fn add_raw(&self, rhs: &Self) -> Self {
        debug_assert_eq!(self.desc, rhs.desc);
        let value = match (&self.value, &rhs.value) {
            (Value::Rat(a), Value::Rat(b)) => Value::Rat(a + b),
            (Value::Gauss(ar, ai), Value::Gauss(br, bi)) => Value::Gauss(ar + br, ai + bi),
            (Value::Mod(a), Value::Mod(b)) => Value::Mod((a + b) % self.modulus()),
            _ => unreachable!("descriptor check precedes raw arithmetic"),
        };
        FieldScalar {
            desc: self.desc,
            value,
        }
    }

    pub(crate) fn sub_raw(&self, rhs: &Self) -> Self {
        self.add_raw(&rhs.neg())
    }

    pub(crate) fn mul_raw(&self, rhs: &Self) -> Self {
        debug_assert_eq!(self.desc, rhs.desc);
        let value = match (&self.value, &rhs.value) {
            (Value::Rat(a), Value::Rat(b)) => Value::Rat(a * b),
            (Value::Gauss(ar, ai), Value::Gauss(br, bi)) => {
                Value::Gauss(ar * br - ai * bi, ar * bi + ai * br)
            }
            (Value::Mod(a), Value::Mod(b)) => Value::Mod(mod_mul(*a, *b, self.modulus())),
            _ => unreachable!("descriptor check precedes raw arithmetic"),
        };
        FieldScalar {
            desc: self.desc,
            value,
        }
    }

    /// Parse a literal in the field's grammar: `a/b` or `a` over Q,
    /// `a/b+c/d i` (and degenerate forms like `i`, `-i`, `3 i`, `1/2-i`)
    /// over Q(i), a signed decimal integer reduced mod p over F_p.
    pub fn parse_literal(desc: FieldDescriptor, input: &str) -> Result<Self, QciError> {
        let err = |reason: &str| QciError::ParseScalar {
            input: input.to_string(),
            field: desc.to_string(),
            reason: reason.to_string(),
        };
        let t = input.trim();
        if t.is_empty() {
            return Err(err("empty literal"));
        }
        match desc.0 {
            Kind::Rationals => {
                let r = parse_rational(t).ok_or_else(|| err("expected a or a/b"))?;
                Ok(FieldScalar {
                    desc,
                    value: Value::Rat(r),
                })
            }
            Kind::Gaussian => {
                let (re, im) = parse_gaussian(t).ok_or_else(|| err("expected a/b+c/d i"))?;
                Ok(FieldScalar {
                    desc,
                    value: Value::Gauss(re, im),
                })
            }
            Kind::Prime(p) => {
                let n: i64 = t.parse().map_err(|_| err("expected a decimal integer"))?;
                Ok(FieldScalar {
                    desc,
                    value: Value::Mod(reduce_mod(n, p)),
                })
            }
        }
    }
}

impl fmt::Display for FieldScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.value {
            Value::Rat(r) => write!(f, "{}", format_rational(r)),
            Value::Gauss(re, im) => {
                if im.is_zero() {
                    write!(f, "{}", format_rational(re))
                } else if re.is_zero() {
                    write!(f, "{}", format_imaginary(im))
                } else if im.is_negative() {
                    write!(f, "{}-{}", format_rational(re), format_imaginary(&-im))
                } else {
                    write!(f, "{}+{}", format_rational(re), format_imaginary(im))
                }
            }
            Value::Mod(r) => write!(f, "{r}"),
        }
    }
}

fn format_rational(r: &BigRational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

fn format_imaginary(im: &BigRational) -> String {
    if im.is_one() {
        "i".to_string()
    } else if (-im).is_one() {
        "-i".to_string()
    } else {
        format!("{} i", format_rational(im))
    }
}

fn parse_rational(s: &str) -> Option<BigRational> {
    let s = s.trim();
    if let Some((num, den)) = s.split_once('/') {
        let n = BigInt::from_str(num.trim()).ok()?;
        let d = BigInt::from_str(den.trim()).ok()?;
        if d.is_zero() {
            return None;
        }
        Some(BigRational::new(n, d))
    } else {
        let n = BigInt::from_str(s).ok()?;
        Some(BigRational::from(n))
    }
}

fn parse_imaginary_part(s: &str) -> Option<BigRational> {
    // The input arrives with the trailing 'i' stripped.
    let s = s.trim();
    match s {
        "" | "+" => Some(BigRational::one()),
        "-" => Some(-BigRational::one()),
        _ => parse_rational(s),
    }
}

fn parse_gaussian(s: &str) -> Option<(BigRational, BigRational)> {
    let s = s.trim();
    if let Some(body) = s.strip_suffix('i') {
        // Split off a real summand if a top-level +/- separates two parts.
        if let Some(pos) = body
            .char_indices()
            .skip(1)
            .find(|(_, c)| *c == '+' || *c == '-')
            .map(|(i, _)| i)
        {
            let re = parse_rational(&body[..pos])?;
            let sign = if body.as_bytes()[pos] == b'-' { -1 } else { 1 };
            let im = parse_imaginary_part(&body[pos + 1..])?;
            let im = if sign < 0 { -im } else { im };
            return Some((re, im));
        }
        let im = parse_imaginary_part(body)?;
        return Some((BigRational::zero(), im));
    }
    // Purely real literal.
    let re = parse_rational(s)?;
    Some((re, BigRational::zero()))
}

fn reduce_mod(n: i64, p: u64) -> u64 {
    let p_i = p as i128;
    let r = (n as i128).rem_euclid(p_i);
    r as u64
}

fn mod_neg(r: u64, p: u64) -> u64 {
    if r == 0 {
        0
    } else {
        p - r
    }
}

fn mod_mul(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn mod_pow(mut base: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    base %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = mod_mul(acc, base, p);
        }
        base = mod_mul(base, base, p);
        e >>= 1;
    }
    acc
}

fn mod_inv(r: u64, p: u64) -> u64 {
    // Fermat: r^(p-2). p is prime and r != 0.
    mod_pow(r, p - 2, p)
}

/// Smallest residue r with r^2 = p - 1 (mod p), if any.
///
/// For p = 1 (mod 4) a root is n^((p-1)/4) for any quadratic non-residue n;
/// the canonical representative is the smaller of the two roots.
fn sqrt_minus_one_mod(p: u64) -> Option<u64> {
    if p == 2 {
        return Some(1);
    }
    if p % 4 != 1 {
        return None;
    }
    let mut n = 2;
    while mod_pow(n, (p - 1) / 2, p) != p - 1 {
        n += 1;
    }
    let r = mod_pow(n, (p - 1) / 4, p);
    Some(r.min(p - r))
}

/// Order of r in F_p^*, by stripping prime factors of p - 1.
fn mod_order(r: u64, p: u64) -> u64 {
    debug_assert!(r != 0);
    let group = p - 1;
    let mut order = group;
    let mut m = group;
    let mut factor = 2;
    while factor * factor <= m {
        if m.is_multiple_of(factor) {
            while m.is_multiple_of(factor) {
                m /= factor;
            }
            while order.is_multiple_of(factor) && mod_pow(r, order / factor, p) == 1 {
                order /= factor;
            }
        }
        factor += 1;
    }
    if m > 1 {
        while order.is_multiple_of(m) && mod_pow(r, order / m, p) == 1 {
            order /= m;
        }
    }
    order
}

/// Binomial coefficient as an exact big integer.
pub fn binomial(n: u64, m: u64) -> BigUint {
    if m > n {
        return BigUint::zero();
    }
    let m = m.min(n - m);
    let mut acc = BigUint::one();
    for k in 0..m {
        acc = acc * BigUint::from(n - k) / BigUint::from(k + 1);
    }
    acc
}
