//! Exact rationals and base-3 expansions.
//!
//! Every value a player can move, every set endpoint and every certificate
//! bound is a [`Rational`]. There is no floating point below the interface
//! layer.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum NumericError {
    #[error("cannot parse {input:?} as an exact rational: {reason}")]
    Parse { input: String, reason: &'static str },
    #[error("empty open interval ({lo}, {hi})")]
    EmptyInterval { lo: Rational, hi: Rational },
    #[error("{value} lies outside [0, 1]")]
    OutsideUnit { value: Rational },
}

/// An exact fraction, always kept in lowest terms with a positive denominator.
#[derive(Clone, Hash)]
pub struct Rational(BigRational);

// Lowest terms make equality structural. Ordering cross-multiplies, which
// beats the continued-fraction comparison of `BigRational` on the long,
// nearly equal endpoints that nested play produces.
impl PartialEq for Rational {
    fn eq(&self, other: &Self) -> bool {
        self.0.numer() == other.0.numer() && self.0.denom() == other.0.denom()
    }
}

impl Eq for Rational {}

impl Ord for Rational {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        if self.0.denom() == other.0.denom() {
            return self.0.numer().cmp(other.0.numer());
        }
        (self.0.numer() * other.0.denom()).cmp(&(other.0.numer() * self.0.denom()))
    }
}

impl PartialOrd for Rational {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Rational {
    pub fn new(numer: i64, denom: i64) -> Self {
        assert!(denom != 0, "zero denominator");
        Rational(BigRational::new(numer.into(), denom.into()))
    }

    pub fn from_big(numer: BigInt, denom: BigInt) -> Self {
        assert!(!denom.is_zero(), "zero denominator");
        Rational(BigRational::new(numer, denom))
    }

    pub fn from_integer(n: i64) -> Self {
        Rational(BigRational::from_integer(n.into()))
    }

    pub fn zero() -> Self {
        Rational(BigRational::zero())
    }

    pub fn one() -> Self {
        Rational(BigRational::one())
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.0.is_one()
    }

    pub fn is_positive(&self) -> bool {
        self.0.is_positive()
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    /// `0 <= self <= 1`.
    pub fn in_unit_interval(&self) -> bool {
        !self.is_negative() && self.0 <= BigRational::one()
    }

    pub fn ensure_unit(&self) -> Result<(), NumericError> {
        if self.in_unit_interval() {
            Ok(())
        } else {
            Err(NumericError::OutsideUnit { value: self.clone() })
        }
    }

    pub fn floor(&self) -> BigInt {
        self.0.floor().to_integer()
    }

    pub fn ceil(&self) -> BigInt {
        self.0.ceil().to_integer()
    }

    /// `1 / 3^k`.
    pub fn inv_pow3(k: u32) -> Self {
        Rational(BigRational::new(BigInt::one(), BigInt::from(3u8).pow(k)))
    }

    /// `1 / 2^k`.
    pub fn inv_pow2(k: u32) -> Self {
        Rational(BigRational::new(BigInt::one(), BigInt::one() << k as usize))
    }

    pub fn min(self, other: Self) -> Self {
        std::cmp::min(self, other)
    }

    pub fn max(self, other: Self) -> Self {
        std::cmp::max(self, other)
    }

    /// Lossy conversion for display purposes only.
    pub fn to_f64_lossy(&self) -> f64 {
        self.0.to_f64().unwrap_or(f64::NAN)
    }

    pub fn as_big(&self) -> &BigRational {
        &self.0
    }
}

/// Exact ordering by cross multiplication.
pub fn compare(a: &Rational, b: &Rational) -> Ordering {
    (a.numer() * b.denom()).cmp(&(b.numer() * a.denom()))
}

/// `(a + b) / 2`, strictly between `a` and `b`.
pub fn midpoint(a: &Rational, b: &Rational) -> Result<Rational, NumericError> {
    if a >= b {
        return Err(NumericError::EmptyInterval {
            lo: a.clone(),
            hi: b.clone(),
        });
    }
    Ok(Rational((&a.0 + &b.0) / BigRational::from_integer(2.into())))
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident) => {
        impl<'a> $trait<&'a Rational> for &'a Rational {
            type Output = Rational;
            fn $method(self, rhs: &'a Rational) -> Rational {
                Rational($trait::$method(&self.0, &rhs.0))
            }
        }
        impl $trait for Rational {
            type Output = Rational;
            fn $method(self, rhs: Rational) -> Rational {
                Rational($trait::$method(self.0, rhs.0))
            }
        }
    };
}

forward_binop!(Add, add);
forward_binop!(Sub, sub);
forward_binop!(Mul, mul);
forward_binop!(Div, div);

impl Neg for Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-self.0)
    }
}

impl From<BigRational> for Rational {
    fn from(value: BigRational) -> Self {
        Rational(value)
    }
}

impl From<i64> for Rational {
    fn from(value: i64) -> Self {
        Rational::from_integer(value)
    }
}

/// `p/q` in lowest terms, or a bare integer when the denominator is 1.
impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.denom().is_one() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

impl fmt::Debug for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Accepts `p/q` (not necessarily reduced), integers, and terminating
/// decimals such as `0.375`.
impl FromStr for Rational {
    type Err = NumericError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let input = s.trim();
        let fail = |reason| NumericError::Parse {
            input: s.to_string(),
            reason,
        };
        if input.is_empty() {
            return Err(fail("empty input"));
        }
        if let Some((p, q)) = input.split_once('/') {
            let p = parse_int(p.trim()).ok_or_else(|| fail("bad numerator"))?;
            let q = parse_int(q.trim()).ok_or_else(|| fail("bad denominator"))?;
            if q.is_zero() {
                return Err(fail("zero denominator"));
            }
            return Ok(Rational(BigRational::new(p, q)));
        }
        if let Some((int_part, frac_part)) = input.split_once('.') {
            if frac_part.is_empty() || !frac_part.bytes().all(|b| b.is_ascii_digit()) {
                return Err(fail("only terminating decimals are exact"));
            }
            let negative = int_part.starts_with('-');
            let int_digits = int_part.trim_start_matches(['-', '+']);
            let whole = if int_digits.is_empty() {
                BigInt::zero()
            } else {
                parse_int(int_digits).ok_or_else(|| fail("bad integer part"))?
            };
            let scale = BigInt::from(10u8).pow(frac_part.len() as u32);
            let frac: BigInt = frac_part.parse().map_err(|_| fail("bad fraction digits"))?;
            let mut numer = whole * &scale + frac;
            if negative {
                numer = -numer;
            }
            return Ok(Rational(BigRational::new(numer, scale)));
        }
        parse_int(input)
            .map(|n| Rational(BigRational::from_integer(n)))
            .ok_or_else(|| fail("not a rational"))
    }
}

fn parse_int(s: &str) -> Option<BigInt> {
    let digits = s.strip_prefix(['-', '+']).unwrap_or(s);
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    s.parse().ok()
}

impl Serialize for Rational {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Rational {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Eventually periodic base-3 expansion `0.preperiod(period)` of a value in
/// `[0, 1]`.
///
/// A terminating expansion has an empty period. When its last digit is
/// nonzero, the same value is also written with that digit decremented and
/// followed by repeating 2s; `has_alternate_form` flags that case.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TernaryExpansion {
    pub preperiod: Vec<u8>,
    pub period: Vec<u8>,
    pub has_alternate_form: bool,
}

impl TernaryExpansion {
    pub fn is_terminating(&self) -> bool {
        self.period.is_empty()
    }

    /// The trailing-2s rewrite of a terminating expansion.
    pub fn alternate(&self) -> Option<TernaryExpansion> {
        if !self.has_alternate_form {
            return None;
        }
        let mut preperiod = self.preperiod.clone();
        let last = preperiod.last_mut()?;
        *last -= 1;
        Some(TernaryExpansion {
            preperiod,
            period: vec![2],
            has_alternate_form: false,
        })
    }

    /// True when every digit, in the preperiod and the period, is allowed.
    pub fn digits_within(&self, allowed: impl Fn(u8) -> bool) -> bool {
        self.preperiod.iter().chain(&self.period).all(|&d| allowed(d))
    }

    /// Sums the preperiod digits and the geometric series of the period.
    pub fn to_rational(&self) -> Rational {
        let three = BigInt::from(3u8);
        let mut numer = BigInt::zero();
        for &d in &self.preperiod {
            numer = numer * &three + BigInt::from(d);
        }
        let head_scale = three.pow(self.preperiod.len() as u32);
        let head = BigRational::new(numer, head_scale.clone());
        if self.period.is_empty() {
            return Rational(head);
        }
        let mut block = BigInt::zero();
        for &d in &self.period {
            block = block * &three + BigInt::from(d);
        }
        let cycle = three.pow(self.period.len() as u32) - BigInt::one();
        Rational(head + BigRational::new(block, cycle * head_scale))
    }
}

/// Exact base-3 expansion by long division. The terminating form is
/// preferred whenever one exists.
pub fn ternary_digits(q: &Rational) -> Result<TernaryExpansion, NumericError> {
    q.ensure_unit()?;
    if q.is_one() {
        return Ok(TernaryExpansion {
            preperiod: Vec::new(),
            period: vec![2],
            has_alternate_form: false,
        });
    }
    let denom = q.denom().clone();
    let mut remainder = q.numer().clone();
    let mut seen: HashMap<BigInt, usize> = HashMap::new();
    let mut digits = Vec::new();
    while !remainder.is_zero() {
        if let Some(&start) = seen.get(&remainder) {
            let period = digits.split_off(start);
            return Ok(TernaryExpansion {
                preperiod: digits,
                period,
                has_alternate_form: false,
            });
        }
        seen.insert(remainder.clone(), digits.len());
        let (digit, rest) = (remainder * 3u8).div_rem(&denom);
        digits.push(digit.to_u8().expect("base-3 digit"));
        remainder = rest;
    }
    let has_alternate_form = digits.last().is_some_and(|&d| d != 0);
    Ok(TernaryExpansion {
        preperiod: digits,
        period: Vec::new(),
        has_alternate_form,
    })
}
