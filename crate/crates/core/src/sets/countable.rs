use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive};

use crate::numeric::Rational;

use super::SetError;

/// A surjective (possibly repeating) listing `s_1, s_2, ...` of a countable
/// subset of `[0, 1]`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum CountableEnumeration {
    /// A finite list, cycled so that `enumerate` is total.
    Explicit(Vec<Rational>),
    /// Every rational in `(0, 1)`, by denominator then numerator.
    Farey,
    /// Every `k / 2^m` in `(0, 1)` with `k` odd, by `m` then `k`.
    Dyadic,
}

impl CountableEnumeration {
    pub fn explicit(points: Vec<Rational>) -> Result<Self, SetError> {
        if points.is_empty() {
            return Err(SetError::EmptySet);
        }
        if let Some(bad) = points.iter().find(|p| !p.in_unit_interval()) {
            return Err(SetError::OutsideUnit { value: bad.clone() });
        }
        Ok(CountableEnumeration::Explicit(points))
    }

    pub fn name(&self) -> &'static str {
        match self {
            CountableEnumeration::Explicit(_) => "explicit",
            CountableEnumeration::Farey => "farey",
            CountableEnumeration::Dyadic => "dyadic",
        }
    }

    /// The `n`-th element, 1-based.
    pub fn enumerate(&self, n: usize) -> Result<Rational, SetError> {
        if n == 0 {
            return Err(SetError::ZeroIndex);
        }
        Ok(match self {
            CountableEnumeration::Explicit(points) => points[(n - 1) % points.len()].clone(),
            CountableEnumeration::Farey => farey_nth(n),
            CountableEnumeration::Dyadic => dyadic_nth(n),
        })
    }

    /// `s_1, s_2, ...` as an iterator.
    pub fn iter(&self) -> impl Iterator<Item = Rational> + '_ {
        let mut farey = FareyIter::default();
        (1..).map(move |n| match self {
            CountableEnumeration::Farey => farey.next().expect("infinite"),
            other => other.enumerate(n).expect("n >= 1"),
        })
    }

    /// Exact membership. For the infinite enumerations this uses the closed
    /// form of the enumerated set, which agrees with scanning the prefix
    /// given by [`CountableEnumeration::prefix_bound`].
    pub fn contains(&self, q: &Rational) -> bool {
        match self {
            CountableEnumeration::Explicit(points) => points.contains(q),
            CountableEnumeration::Farey => q.is_positive() && *q < Rational::one(),
            CountableEnumeration::Dyadic => {
                q.is_positive() && *q < Rational::one() && is_power_of_two(q.denom())
            }
        }
    }

    /// Length of a prefix of the enumeration that contains every enumerated
    /// value with the given denominator, if there is one.
    pub fn prefix_bound(&self, denom: &BigInt) -> Option<usize> {
        let d = denom.to_usize()?;
        match self {
            CountableEnumeration::Explicit(points) => Some(points.len()),
            CountableEnumeration::Farey => Some((2..=d).map(euler_phi).sum()),
            CountableEnumeration::Dyadic => {
                if !is_power_of_two(denom) {
                    return Some(0);
                }
                Some(d.saturating_sub(1))
            }
        }
    }

    pub fn inf(&self) -> Rational {
        match self {
            CountableEnumeration::Explicit(points) => points.iter().min().cloned().expect("non-empty"),
            CountableEnumeration::Farey | CountableEnumeration::Dyadic => Rational::zero(),
        }
    }

    pub fn inf_in_interval(&self, x: &Rational, z: &Rational) -> Option<Rational> {
        match self {
            CountableEnumeration::Explicit(points) => {
                points.iter().filter(|p| x < *p && *p < z).min().cloned()
            }
            // Both sets are dense in (0, 1).
            CountableEnumeration::Farey | CountableEnumeration::Dyadic => {
                let meets = *x < Rational::one() && z.is_positive();
                meets.then(|| x.clone().max(Rational::zero()))
            }
        }
    }

    /// Some element of `(a, b)`, when there is one.
    pub fn point_in(&self, a: &Rational, b: &Rational) -> Option<Rational> {
        match self {
            CountableEnumeration::Explicit(points) => {
                points.iter().filter(|p| a < *p && *p < b).min().cloned()
            }
            CountableEnumeration::Farey | CountableEnumeration::Dyadic => {
                let lo = a.clone().max(Rational::zero());
                let hi = b.clone().min(Rational::one());
                if lo >= hi {
                    return None;
                }
                if matches!(self, CountableEnumeration::Farey) {
                    return crate::numeric::midpoint(&lo, &hi).ok();
                }
                Some(dyadic_between(&lo, &hi))
            }
        }
    }
}

fn is_power_of_two(n: &BigInt) -> bool {
    n.sign() == num_bigint::Sign::Plus && (n & (n - BigInt::one())) == BigInt::from(0u8)
}

fn euler_phi(n: usize) -> usize {
    (1..=n).filter(|k| k.gcd(&n) == 1).count()
}

/// The coarsest dyadic rational strictly inside `(lo, hi)`.
fn dyadic_between(lo: &Rational, hi: &Rational) -> Rational {
    let mut m = 0u32;
    loop {
        let scale = Rational::from_big(BigInt::one() << m as usize, BigInt::one());
        let k = (lo * &scale).floor() + BigInt::one();
        let candidate = Rational::from_big(k, BigInt::one() << m as usize);
        if candidate < *hi {
            return candidate;
        }
        m += 1;
    }
}

fn farey_nth(n: usize) -> Rational {
    FareyIter::default().nth(n - 1).expect("infinite")
}

fn dyadic_nth(n: usize) -> Rational {
    // Level m holds the 2^(m-1) odd numerators over 2^m.
    let m = usize::BITS - n.leading_zeros();
    let offset = n - (1usize << (m - 1));
    Rational::from_big(BigInt::from(2 * offset + 1), BigInt::one() << m as usize)
}

/// Reduced fractions of `(0, 1)` ordered by denominator then numerator.
#[derive(Debug, Clone)]
pub struct FareyIter {
    denom: u64,
    numer: u64,
}

impl Default for FareyIter {
    fn default() -> Self {
        FareyIter { denom: 2, numer: 0 }
    }
}

impl Iterator for FareyIter {
    type Item = Rational;

    fn next(&mut self) -> Option<Rational> {
        loop {
            self.numer += 1;
            if self.numer >= self.denom {
                self.denom += 1;
                self.numer = 1;
            }
            if self.numer.gcd(&self.denom) == 1 {
                return Some(Rational::from_big(self.numer.into(), self.denom.into()));
            }
        }
    }
}
