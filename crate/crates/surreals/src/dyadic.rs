//! Exact dyadic rationals `m / 2^k` and the simplest-number walk.
//!
//! Dyadic rationals are exactly the surreal numbers of finite birthday, so
//! they are the values of finite sign sequences. This module provides the
//! arithmetic and, crucially, the *simplest-number walk*: the canonical
//! enumeration 0, then ±1, then midpoints, that visits candidates in birthday
//! order. The walk yields both [`Dyadic::sign_expansion`] and
//! [`simplest_in`], the oracle for "the simplest number strictly between".
//!
//! Numerators are `i64` and denominator exponents `u32`; overflow panics.
//! That is deliberate: this crate targets desk-scale inputs, and a panic is
//! preferable to silent wraparound in an exactness-first kernel.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::{Error, Result};

/// A dyadic rational `num / 2^exp`, kept reduced (`num` odd unless `exp = 0`).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Dyadic {
    num: i64,
    exp: u32,
}

impl Dyadic {
    /// `num / 2^exp`, reduced.
    pub fn new(num: i64, exp: u32) -> Self {
        let mut d = Dyadic { num, exp };
        d.reduce();
        d
    }

    /// The integer `n`.
    pub fn integer(n: i64) -> Self {
        Dyadic { num: n, exp: 0 }
    }

    /// The value 0.
    pub fn zero() -> Self {
        Dyadic::integer(0)
    }

    /// The value 1.
    pub fn one() -> Self {
        Dyadic::integer(1)
    }

    /// The value 1/2.
    pub fn half() -> Self {
        Dyadic::new(1, 1)
    }

    /// `1 / 2^k`.
    pub fn pow2(k: u32) -> Self {
        Dyadic::new(1, k)
    }

    fn reduce(&mut self) {
        if self.num == 0 {
            self.exp = 0;
            return;
        }
        while self.exp > 0 && self.num % 2 == 0 {
            self.num /= 2;
            self.exp -= 1;
        }
    }

    /// The numerator of the reduced form.
    pub fn numer(&self) -> i64 {
        self.num
    }

    /// The denominator exponent of the reduced form (`self = num / 2^k`).
    pub fn denom_exp(&self) -> u32 {
        self.exp
    }

    /// True iff the value is 0.
    pub fn is_zero(&self) -> bool {
        self.num == 0
    }

    /// True iff the value is an integer.
    pub fn is_integer(&self) -> bool {
        self.exp == 0
    }

    /// True iff the value is strictly negative.
    pub fn is_negative(&self) -> bool {
        self.num < 0
    }

    /// True iff the value is strictly positive.
    pub fn is_positive(&self) -> bool {
        self.num > 0
    }

    /// Largest integer ≤ self.
    pub fn floor(&self) -> i64 {
        // Arithmetic shift on a signed numerator is floor division by 2^exp.
        self.num >> self.exp.min(63)
    }

    /// Smallest integer ≥ self.
    pub fn ceil(&self) -> i64 {
        -(-*self).floor()
    }

    /// Exact conversion to an arbitrary-precision rational.
    pub fn to_rational(&self) -> BigRational {
        BigRational::new(BigInt::from(self.num), BigInt::one() << self.exp as usize)
    }

    /// Exact conversion from a rational, if its denominator is a power of two.
    ///
    /// # Errors
    /// [`Error::NotDyadic`] otherwise, and for values outside the `i64`
    /// numerator range.
    pub fn try_from_rational(r: &BigRational) -> Result<Self> {
        let mut den = r.denom().clone();
        if den.is_negative() {
            den = -den;
        }
        let mut exp: u32 = 0;
        let two = BigInt::from(2);
        while (&den % &two).is_zero() {
            den /= &two;
            exp += 1;
        }
        if !den.is_one() {
            return Err(Error::NotDyadic(format!(
                "{r} has a non-2-power denominator"
            )));
        }
        let num = i64::try_from(r.numer().clone())
            .map_err(|_| Error::NotDyadic(format!("{r} exceeds the supported numerator range")))?;
        Ok(Dyadic::new(num, exp))
    }

    /// The finite sign expansion of this value in birthday order
    /// (`true` = plus). Empty for 0; `n` trues for the positive integer `n`.
    pub fn sign_expansion(&self) -> Vec<bool> {
        let mut signs = Vec::new();
        let mut walk = Walk::new();
        while walk.at != *self {
            let plus = *self > walk.at;
            signs.push(plus);
            walk.step(plus);
        }
        signs
    }

    /// The value of a finite sign expansion (`true` = plus); inverse of
    /// [`Dyadic::sign_expansion`].
    pub fn from_signs(signs: &[bool]) -> Self {
        let mut walk = Walk::new();
        for &plus in signs {
            walk.step(plus);
        }
        walk.at
    }

    /// Birthday: the length of the sign expansion.
    pub fn birthday(&self) -> u64 {
        self.num.unsigned_abs().min(i64::MAX as u64) / (1u64 << self.exp.min(62))
            + self.exp as u64
            + if self.exp > 0 { 1 } else { 0 }
    }
}

/// State of the simplest-number walk: the current candidate together with the
/// tightest bounds imposed by the signs consumed so far.
struct Walk {
    at: Dyadic,
    lo: Option<Dyadic>,
    hi: Option<Dyadic>,
}

impl Walk {
    fn new() -> Self {
        Walk {
            at: Dyadic::zero(),
            lo: None,
            hi: None,
        }
    }

    /// Move to the simplest value above (plus) or below (minus) the current
    /// candidate that respects the accumulated bounds.
    fn step(&mut self, plus: bool) {
        if plus {
            let next = match self.hi {
                // Only right steps so far: candidates are the integers.
                None => self.at + Dyadic::one(),
                Some(h) => half_sum(self.at, h),
            };
            self.lo = Some(self.at);
            self.at = next;
        } else {
            let next = match self.lo {
                None => self.at - Dyadic::one(),
                Some(l) => half_sum(l, self.at),
            };
            self.hi = Some(self.at);
            self.at = next;
        }
    }
}

fn half_sum(a: Dyadic, b: Dyadic) -> Dyadic {
    let s = a + b;
    Dyadic::new(
        s.num,
        s.exp.checked_add(1).expect("dyadic exponent overflow"),
    )
}

/// The simplest (earliest-born) dyadic strictly between `lo` and `hi`,
/// where `None` means unbounded on that side.
///
/// Callers must ensure `lo < hi` when both are present; the walk would
/// otherwise never find a gap to land in.
pub fn simplest_in(lo: Option<&Dyadic>, hi: Option<&Dyadic>) -> Dyadic {
    if let (Some(l), Some(h)) = (lo, hi) {
        assert!(l < h, "simplest_in requires lo < hi, got {l} and {h}");
    }
    let mut walk = Walk::new();
    loop {
        let above = lo.is_none_or(|l| *l < walk.at);
        let below = hi.is_none_or(|h| walk.at < *h);
        match (above, below) {
            (true, true) => return walk.at,
            (false, _) => walk.step(true),
            (_, false) => walk.step(false),
        }
    }
}

impl PartialOrd for Dyadic {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Dyadic {
    fn cmp(&self, other: &Self) -> Ordering {
        let m = self.exp.max(other.exp);
        let a = (self.num as i128) << (m - self.exp);
        let b = (other.num as i128) << (m - other.exp);
        a.cmp(&b)
    }
}

impl Neg for Dyadic {
    type Output = Dyadic;
    fn neg(self) -> Dyadic {
        Dyadic {
            num: -self.num,
            exp: self.exp,
        }
    }
}

impl Add for Dyadic {
    type Output = Dyadic;
    fn add(self, rhs: Dyadic) -> Dyadic {
        let m = self.exp.max(rhs.exp);
        let a = (self.num as i128) << (m - self.exp);
        let b = (rhs.num as i128) << (m - rhs.exp);
        let num = i64::try_from(a + b).expect("dyadic numerator overflow");
        Dyadic::new(num, m)
    }
}

impl Sub for Dyadic {
    type Output = Dyadic;
    fn sub(self, rhs: Dyadic) -> Dyadic {
        self + (-rhs)
    }
}

impl Mul for Dyadic {
    type Output = Dyadic;
    fn mul(self, rhs: Dyadic) -> Dyadic {
        let num = i64::try_from((self.num as i128) * (rhs.num as i128))
            .expect("dyadic numerator overflow");
        Dyadic::new(
            num,
            self.exp
                .checked_add(rhs.exp)
                .expect("dyadic exponent overflow"),
        )
    }
}

impl fmt::Display for Dyadic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.exp == 0 {
            write!(f, "{}", self.num)
        } else {
            write!(f, "{}/{}", self.num, 1u128 << self.exp.min(127))
        }
    }
}

impl FromStr for Dyadic {
    type Err = Error;

    /// Parse `p` or `p/q` with `q` a positive power of two.
    fn from_str(s: &str) -> Result<Self> {
        let parse_int = |t: &str, what: &str| -> Result<i64> {
            t.trim().parse().map_err(|_| Error::Parse {
                pos: 0,
                msg: format!("invalid {what} in dyadic literal `{s}`"),
            })
        };
        match s.split_once('/') {
            None => Ok(Dyadic::integer(parse_int(s, "integer")?)),
            Some((p, q)) => {
                let num = parse_int(p, "numerator")?;
                let den = parse_int(q, "denominator")?;
                if den <= 0 || den.count_ones() != 1 {
                    return Err(Error::NotDyadic(format!(
                        "denominator {den} is not a positive power of two"
                    )));
                }
                Ok(Dyadic::new(num, den.trailing_zeros()))
            }
        }
    }
}
