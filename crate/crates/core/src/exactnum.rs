//! Exact integer and rational arithmetic.
//!
//! Nothing in this crate ever touches floating point: every quantity is a
//! [`Natural`] (arbitrary-precision unsigned integer) or an
//! [`ExactRational`].  Two conventions are load-bearing and worth stating
//! up front:
//!
//! * **Rationals are never reduced.**  The denominators that matter here
//!   (`10^L - 1`, `10^M`, products of those) carry structure that reduction
//!   would destroy, and gcd on multi-thousand-digit operands buys nothing
//!   when every comparison can be done by cross-multiplication.  Equality
//!   and ordering are *value* equality regardless of representation:
//!   `1/3 == 2/6`.
//! * **Decimal expansion truncates.**  [`decimal_digits`] returns
//!   `floor(x * 10^count)` zero-padded to exactly `count` digits.  No
//!   rounding ever happens, so a block of length `k` is a prefix of every
//!   longer block of the same expansion.

use std::cmp::Ordering;
use std::fmt;

use num_traits::{One, Pow, Zero};
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};
use thiserror::Error;

/// Arbitrary-precision unsigned integer.  All positions, exponents and
/// digit counts in this crate are naturals or fit in `u64`.
pub type Natural = num_bigint::BigUint;

/// Errors from the arithmetic primitives.
#[derive(Debug, Error, PartialEq, Eq)]
pub enum NumError {
    #[error("modulus must be nonzero")]
    ZeroModulus,
    #[error("denominator must be nonzero")]
    ZeroDenominator,
    #[error("expected a rational in [0, 1)")]
    NotInUnitInterval,
    #[error("digit count {0} exceeds the supported range")]
    CountTooLarge(u64),
    #[error("invalid digit character {0:?}")]
    BadDigit(char),
}

/// `10^e` as a [`Natural`].
pub fn pow10(e: u64) -> Natural {
    let e = u32::try_from(e).expect("power-of-ten exponent fits in u32");
    Pow::pow(&Natural::from(10u8), e)
}

/// Modular exponentiation `base^exp mod modulus` in `O(log exp)`
/// multiplications.
///
/// `exp == 0` yields `1 mod modulus`, hence `0` when `modulus == 1`.
pub fn pow_mod(base: &Natural, exp: &Natural, modulus: &Natural) -> Result<Natural, NumError> {
    if modulus.is_zero() {
        return Err(NumError::ZeroModulus);
    }
    Ok(base.modpow(exp, modulus))
}

/// Sign of an [`ExactRational`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Sign {
    Minus,
    Zero,
    Plus,
}

impl Sign {
    fn rank(self) -> u8 {
        match self {
            Sign::Minus => 0,
            Sign::Zero => 1,
            Sign::Plus => 2,
        }
    }

    fn flip(self) -> Sign {
        match self {
            Sign::Minus => Sign::Plus,
            Sign::Zero => Sign::Zero,
            Sign::Plus => Sign::Minus,
        }
    }
}

/// A signed rational kept in whatever form it was built in.
///
/// Invariants: `den != 0` always; a zero value is stored canonically as
/// `(Sign::Zero, 0, den)`; a nonzero value has `num != 0`.  Numerator and
/// denominator may share factors — all comparisons cross-multiply, and
/// consumers that want a reduced form divide by a gcd themselves.
#[derive(Clone, Debug)]
pub struct ExactRational {
    sign: Sign,
    num: Natural,
    den: Natural,
}

impl ExactRational {
    /// `num/den` with an explicit sign.  Fails if `den == 0`; a zero
    /// numerator collapses the sign to [`Sign::Zero`].
    pub fn new(sign: Sign, num: Natural, den: Natural) -> Result<Self, NumError> {
        if den.is_zero() {
            return Err(NumError::ZeroDenominator);
        }
        if num.is_zero() || sign == Sign::Zero {
            return Ok(ExactRational {
                sign: Sign::Zero,
                num: Natural::zero(),
                den,
            });
        }
        Ok(ExactRational { sign, num, den })
    }

    /// Nonnegative `num/den`.
    pub fn from_naturals(num: Natural, den: Natural) -> Result<Self, NumError> {
        Self::new(Sign::Plus, num, den)
    }

    /// Convenience for small literals, mostly in tests.
    pub fn from_u64(num: u64, den: u64) -> Result<Self, NumError> {
        Self::from_naturals(Natural::from(num), Natural::from(den))
    }

    pub fn zero() -> Self {
        ExactRational {
            sign: Sign::Zero,
            num: Natural::zero(),
            den: Natural::one(),
        }
    }

    pub fn sign(&self) -> Sign {
        self.sign
    }

    pub fn numerator(&self) -> &Natural {
        &self.num
    }

    pub fn denominator(&self) -> &Natural {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.sign == Sign::Zero
    }

    pub fn abs(&self) -> Self {
        ExactRational {
            sign: if self.sign == Sign::Zero {
                Sign::Zero
            } else {
                Sign::Plus
            },
            num: self.num.clone(),
            den: self.den.clone(),
        }
    }

    /// Integer power.  `x^0 == 1` even for `x == 0`.
    pub fn pow(&self, exp: u32) -> Self {
        if exp == 0 {
            return ExactRational {
                sign: Sign::Plus,
                num: Natural::one(),
                den: Natural::one(),
            };
        }
        let sign = match self.sign {
            Sign::Minus if exp % 2 == 1 => Sign::Minus,
            Sign::Minus => Sign::Plus,
            other => other,
        };
        ExactRational {
            sign,
            num: Pow::pow(&self.num, exp),
            den: Pow::pow(&self.den, exp),
        }
    }
}

/// Signed addition on (sign, magnitude) pairs.
fn add_signed(s1: Sign, a: Natural, s2: Sign, b: Natural) -> (Sign, Natural) {
    match (s1, s2) {
        (Sign::Zero, _) => (s2, b),
        (_, Sign::Zero) => (s1, a),
        _ if s1 == s2 => (s1, a + b),
        _ => match a.cmp(&b) {
            Ordering::Equal => (Sign::Zero, Natural::zero()),
            Ordering::Greater => (s1, a - b),
            Ordering::Less => (s2, b - a),
        },
    }
}

impl std::ops::Add for &ExactRational {
    type Output = ExactRational;

    fn add(self, rhs: &ExactRational) -> ExactRational {
        let (sign, num) = add_signed(
            self.sign,
            &self.num * &rhs.den,
            rhs.sign,
            &rhs.num * &self.den,
        );
        ExactRational {
            sign,
            num,
            den: &self.den * &rhs.den,
        }
    }
}

impl std::ops::Sub for &ExactRational {
    type Output = ExactRational;

    fn sub(self, rhs: &ExactRational) -> ExactRational {
        let (sign, num) = add_signed(
            self.sign,
            &self.num * &rhs.den,
            rhs.sign.flip(),
            &rhs.num * &self.den,
        );
        ExactRational {
            sign,
            num,
            den: &self.den * &rhs.den,
        }
    }
}

impl std::ops::Mul for &ExactRational {
    type Output = ExactRational;

    fn mul(self, rhs: &ExactRational) -> ExactRational {
        let sign = match (self.sign, rhs.sign) {
            (Sign::Zero, _) | (_, Sign::Zero) => Sign::Zero,
            (a, b) if a == b => Sign::Plus,
            _ => Sign::Minus,
        };
        let num = if sign == Sign::Zero {
            Natural::zero()
        } else {
            &self.num * &rhs.num
        };
        ExactRational {
            sign,
            num,
            den: &self.den * &rhs.den,
        }
    }
}

impl PartialEq for ExactRational {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for ExactRational {}

impl PartialOrd for ExactRational {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for ExactRational {
    fn cmp(&self, other: &Self) -> Ordering {
        match self.sign.rank().cmp(&other.sign.rank()) {
            Ordering::Equal => {}
            unequal => return unequal,
        }
        match self.sign {
            Sign::Zero => Ordering::Equal,
            Sign::Plus => (&self.num * &other.den).cmp(&(&other.num * &self.den)),
            Sign::Minus => (&other.num * &self.den).cmp(&(&self.num * &other.den)),
        }
    }
}

/// Three-way comparison by cross-multiplication.  Never reduces, never
/// divides; cost is one big multiplication on each side.
pub fn rat_cmp(a: &ExactRational, b: &ExactRational) -> Ordering {
    a.cmp(b)
}

impl fmt::Display for ExactRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.sign {
            Sign::Zero => write!(f, "0"),
            Sign::Plus => write!(f, "{}/{}", self.num, self.den),
            Sign::Minus => write!(f, "-{}/{}", self.num, self.den),
        }
    }
}

impl Serialize for ExactRational {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        // Big integers go out as decimal strings; the sign rides on the
        // numerator.
        let num = match self.sign {
            Sign::Minus => format!("-{}", self.num),
            _ => self.num.to_string(),
        };
        let mut st = serializer.serialize_struct("ExactRational", 2)?;
        st.serialize_field("num", &num)?;
        st.serialize_field("den", &self.den.to_string())?;
        st.end()
    }
}

/// Serde helper: emit a [`Natural`] as a decimal string, so arbitrary
/// precision survives consumers that parse JSON numbers as doubles.
pub fn serialize_natural<S: Serializer>(n: &Natural, serializer: S) -> Result<S::Ok, S::Error> {
    serializer.serialize_str(&n.to_string())
}

/// First `count` digits of the decimal expansion of `x` after the point.
///
/// Requires `0 <= x < 1`.  Returns the block at positions `1..=count`,
/// computed as `floor(x * 10^count)` and left-padded with zeros; truncation
/// means no digit depends on anything to its right.
pub fn decimal_digits(x: &ExactRational, count: u64) -> Result<DigitBlock, NumError> {
    if x.sign == Sign::Minus || x.num >= x.den {
        return Err(NumError::NotInUnitInterval);
    }
    if u32::try_from(count).is_err() {
        return Err(NumError::CountTooLarge(count));
    }
    let scaled = &x.num * pow10(count);
    let quot = scaled / &x.den;
    let mut digits: Vec<u8> = quot.to_string().bytes().map(|b| b - b'0').collect();
    if digits == [0] {
        digits.clear();
    }
    debug_assert!(digits.len() as u64 <= count);
    let mut padded = vec![0u8; count as usize - digits.len()];
    padded.extend_from_slice(&digits);
    Ok(DigitBlock::new(1, padded))
}

/// A contiguous run of decimal digits: `digits()[i]` is the digit at
/// 1-indexed position `start + i` of some expansion.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DigitBlock {
    start: u64,
    digits: Vec<u8>,
}

impl DigitBlock {
    /// `digits` are values `0..=9`, not ASCII.
    pub fn new(start: u64, digits: Vec<u8>) -> Self {
        debug_assert!(digits.iter().all(|&d| d <= 9));
        DigitBlock { start, digits }
    }

    /// Parse a run of ASCII digits starting at position `start`.
    pub fn from_ascii(start: u64, text: &str) -> Result<Self, NumError> {
        let mut digits = Vec::with_capacity(text.len());
        for c in text.chars() {
            let d = c.to_digit(10).ok_or(NumError::BadDigit(c))?;
            digits.push(d as u8);
        }
        Ok(DigitBlock { start, digits })
    }

    pub fn start(&self) -> u64 {
        self.start
    }

    /// One past the last position covered.
    pub fn end(&self) -> u64 {
        self.start + self.digits.len() as u64
    }

    pub fn len(&self) -> usize {
        self.digits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.digits.is_empty()
    }

    pub fn digits(&self) -> &[u8] {
        &self.digits
    }

    /// Digit at absolute position `pos`, if covered by this block.
    pub fn digit_at(&self, pos: u64) -> Option<u8> {
        if pos < self.start || pos >= self.end() {
            return None;
        }
        Some(self.digits[(pos - self.start) as usize])
    }

    /// The digits as an ASCII string, e.g. `"00252541"`.
    pub fn to_digit_string(&self) -> String {
        self.digits.iter().map(|d| (d + b'0') as char).collect()
    }

    /// The block read as an integer (leading zeros and all).
    pub fn as_integer(&self) -> Natural {
        self.digits.iter().fold(Natural::zero(), |acc, &d| {
            acc * Natural::from(10u8) + Natural::from(d)
        })
    }
}

impl fmt::Display for DigitBlock {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_digit_string())
    }
}

impl Serialize for DigitBlock {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut st = serializer.serialize_struct("DigitBlock", 2)?;
        st.serialize_field("start", &self.start)?;
        st.serialize_field("digits", &self.to_digit_string())?;
        st.end()
    }
}
