//! Exact rational scalars.
//!
//! Values live in a machine-word `Ratio<i64>` while they fit and spill into a
//! `BigRational` on overflow. The representation is canonical: a value is
//! only ever stored as `Big` when it does not fit `Ratio<i64>`, so derived
//! equality and hashing agree with numeric equality.

use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::{BigRational, Ratio};
use num_traits::{CheckedAdd, CheckedDiv, CheckedMul, CheckedSub, One, Signed, ToPrimitive, Zero};

use crate::error::Error;

#[derive(Clone)]
enum Repr {
    Small(Ratio<i64>),
    Big(BigRational),
}

/// An exact rational number.
#[derive(Clone)]
pub struct Rational(Repr);

fn to_big(r: &Ratio<i64>) -> BigRational {
    BigRational::new_raw(BigInt::from(*r.numer()), BigInt::from(*r.denom()))
}

impl Rational {
    pub fn zero() -> Self {
        Rational(Repr::Small(Ratio::from_integer(0)))
    }

    pub fn one() -> Self {
        Rational(Repr::Small(Ratio::from_integer(1)))
    }

    pub fn from_int(v: i64) -> Self {
        Rational(Repr::Small(Ratio::from_integer(v)))
    }

    /// `numer / denom`, reduced. Panics on a zero denominator.
    pub fn new(numer: i64, denom: i64) -> Self {
        assert!(denom != 0, "zero denominator");
        Rational(Repr::Small(Ratio::new(numer, denom)))
    }

    pub fn from_big(value: BigRational) -> Self {
        Self::canonical(value)
    }

    fn canonical(value: BigRational) -> Self {
        match (value.numer().to_i64(), value.denom().to_i64()) {
            (Some(n), Some(d)) => Rational(Repr::Small(Ratio::new_raw(n, d))),
            _ => Rational(Repr::Big(value)),
        }
    }

    pub fn to_big(&self) -> BigRational {
        match &self.0 {
            Repr::Small(r) => to_big(r),
            Repr::Big(b) => b.clone(),
        }
    }

    pub fn numer(&self) -> BigInt {
        match &self.0 {
            Repr::Small(r) => BigInt::from(*r.numer()),
            Repr::Big(b) => b.numer().clone(),
        }
    }

    pub fn denom(&self) -> BigInt {
        match &self.0 {
            Repr::Small(r) => BigInt::from(*r.denom()),
            Repr::Big(b) => b.denom().clone(),
        }
    }

    pub fn is_zero(&self) -> bool {
        match &self.0 {
            Repr::Small(r) => r.is_zero(),
            Repr::Big(b) => b.is_zero(),
        }
    }

    pub fn signum(&self) -> Ordering {
        match &self.0 {
            Repr::Small(r) => r.numer().cmp(&0),
            Repr::Big(b) => {
                if b.is_positive() {
                    Ordering::Greater
                } else if b.is_negative() {
                    Ordering::Less
                } else {
                    Ordering::Equal
                }
            }
        }
    }

    pub fn is_positive(&self) -> bool {
        self.signum() == Ordering::Greater
    }

    pub fn is_negative(&self) -> bool {
        self.signum() == Ordering::Less
    }

    pub fn abs(&self) -> Self {
        if self.is_negative() {
            -self
        } else {
            self.clone()
        }
    }

    pub fn half(&self) -> Self {
        self / &Rational::from_int(2)
    }

    pub fn max_of(a: &Self, b: &Self) -> Self {
        if a >= b {
            a.clone()
        } else {
            b.clone()
        }
    }

    pub fn min_of(a: &Self, b: &Self) -> Self {
        if a <= b {
            a.clone()
        } else {
            b.clone()
        }
    }

    /// Nearest `f64`; the relative error is a few ulps.
    pub fn to_f64(&self) -> f64 {
        match &self.0 {
            Repr::Small(r) => {
                let (n, d) = (*r.numer(), *r.denom());
                // Exactly representable integers convert with one rounding each.
                if n.unsigned_abs() < (1 << 53) && d < (1 << 53) {
                    n as f64 / d as f64
                } else {
                    to_big(r).to_f64().unwrap_or(f64::NAN)
                }
            }
            Repr::Big(b) => b.to_f64().unwrap_or(f64::NAN),
        }
    }

    fn binop(
        &self,
        rhs: &Self,
        small: impl Fn(&Ratio<i64>, &Ratio<i64>) -> Option<Ratio<i64>>,
        big: impl Fn(&BigRational, &BigRational) -> BigRational,
    ) -> Self {
        if let (Repr::Small(a), Repr::Small(b)) = (&self.0, &rhs.0) {
            if let Some(r) = small(a, b) {
                return Rational(Repr::Small(r));
            }
        }
        Self::canonical(big(&self.to_big(), &rhs.to_big()))
    }

    /// Exact decimal rendering when the denominator is of the form 2^a 5^b,
    /// `p/q` otherwise.
    pub fn to_exact_string(&self) -> String {
        let numer = self.numer();
        let denom = self.denom();
        if denom.is_one() {
            return numer.to_string();
        }
        let mut d = denom.clone();
        let (mut twos, mut fives) = (0u32, 0u32);
        let two = BigInt::from(2);
        let five = BigInt::from(5);
        while d.is_even() {
            d /= &two;
            twos += 1;
        }
        while (&d % &five).is_zero() {
            d /= &five;
            fives += 1;
        }
        if !d.is_one() {
            return format!("{numer}/{denom}");
        }
        let digits = twos.max(fives);
        // numer / denom = numer * 10^digits / denom / 10^digits exactly.
        let scaled = &numer * BigInt::from(10).pow(digits) / &denom;
        let negative = scaled.is_negative();
        let mut s = scaled.abs().to_string();
        if s.len() <= digits as usize {
            s = "0".repeat(digits as usize - s.len() + 1) + &s;
        }
        let split = s.len() - digits as usize;
        let mut out = String::new();
        if negative {
            out.push('-');
        }
        out.push_str(&s[..split]);
        out.push('.');
        out.push_str(&s[split..]);
        out
    }
}

impl Default for Rational {
    fn default() -> Self {
        Rational::zero()
    }
}

impl From<i64> for Rational {
    fn from(v: i64) -> Self {
        Rational::from_int(v)
    }
}

impl PartialEq for Rational {
    fn eq(&self, other: &Self) -> bool {
        match (&self.0, &other.0) {
            (Repr::Small(a), Repr::Small(b)) => a == b,
            (Repr::Big(a), Repr::Big(b)) => a == b,
            _ => false,
        }
    }
}

impl Eq for Rational {}

impl Hash for Rational {
    fn hash<H: Hasher>(&self, state: &mut H) {
        match &self.0 {
            Repr::Small(r) => {
                0u8.hash(state);
                r.hash(state);
            }
            Repr::Big(b) => {
                1u8.hash(state);
                b.hash(state);
            }
        }
    }
}

impl Ord for Rational {
    fn cmp(&self, other: &Self) -> Ordering {
        match (&self.0, &other.0) {
            (Repr::Small(a), Repr::Small(b)) => a.cmp(b),
            _ => self.to_big().cmp(&other.to_big()),
        }
    }
}

impl PartialOrd for Rational {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident, $checked:ident) => {
        impl<'a> $trait<&'a Rational> for &'a Rational {
            type Output = Rational;
            fn $method(self, rhs: &'a Rational) -> Rational {
                self.binop(rhs, |a, b| a.$checked(b), |a, b| $trait::$method(a, b))
            }
        }
        impl $trait<Rational> for Rational {
            type Output = Rational;
            fn $method(self, rhs: Rational) -> Rational {
                (&self).$method(&rhs)
            }
        }
        impl<'a> $trait<&'a Rational> for Rational {
            type Output = Rational;
            fn $method(self, rhs: &'a Rational) -> Rational {
                (&self).$method(rhs)
            }
        }
        impl<'a> $trait<Rational> for &'a Rational {
            type Output = Rational;
            fn $method(self, rhs: Rational) -> Rational {
                self.$method(&rhs)
            }
        }
    };
}

forward_binop!(Add, add, checked_add);
forward_binop!(Sub, sub, checked_sub);
forward_binop!(Mul, mul, checked_mul);

impl<'a> Div<&'a Rational> for &'a Rational {
    type Output = Rational;
    fn div(self, rhs: &'a Rational) -> Rational {
        assert!(!rhs.is_zero(), "division by zero");
        self.binop(rhs, |a, b| a.checked_div(b), |a, b| a / b)
    }
}

impl Div<Rational> for Rational {
    type Output = Rational;
    fn div(self, rhs: Rational) -> Rational {
        &self / &rhs
    }
}

impl<'a> Div<&'a Rational> for Rational {
    type Output = Rational;
    fn div(self, rhs: &'a Rational) -> Rational {
        &self / rhs
    }
}

impl Neg for &Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        match &self.0 {
            Repr::Small(r) => match r.numer().checked_neg() {
                Some(n) => Rational(Repr::Small(Ratio::new_raw(n, *r.denom()))),
                None => Rational::canonical(-to_big(r)),
            },
            Repr::Big(b) => Rational::canonical(-b.clone()),
        }
    }
}

impl Neg for Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        -&self
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_exact_string())
    }
}

impl fmt::Debug for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_exact_string())
    }
}

fn parse_int(s: &str, original: &str) -> Result<BigInt, Error> {
    let ok = !s.is_empty()
        && s.strip_prefix(['-', '+'])
            .unwrap_or(s)
            .chars()
            .all(|c| c.is_ascii_digit())
        && s.chars().any(|c| c.is_ascii_digit());
    if !ok {
        return Err(Error::Parse(format!("not an exact number: {original:?}")));
    }
    s.parse::<BigInt>()
        .map_err(|_| Error::Parse(format!("not an exact number: {original:?}")))
}

impl FromStr for Rational {
    type Err = Error;

    /// Accepts integers, finite decimals (`"-1.25"`, `"2e-3"`) and `"p/q"`.
    fn from_str(text: &str) -> Result<Self, Error> {
        let s = text.trim();
        if let Some((n, d)) = s.split_once('/') {
            let numer = parse_int(n.trim(), text)?;
            let denom = parse_int(d.trim(), text)?;
            if denom.is_zero() {
                return Err(Error::Parse(format!("zero denominator: {text:?}")));
            }
            return Ok(Rational::canonical(BigRational::new(numer, denom)));
        }
        let (mantissa, exponent) = match s.find(['e', 'E']) {
            Some(i) => {
                let exp: i32 = s[i + 1..]
                    .parse()
                    .map_err(|_| Error::Parse(format!("bad exponent: {text:?}")))?;
                (&s[..i], exp)
            }
            None => (s, 0),
        };
        let (int_part, frac_part) = mantissa.split_once('.').unwrap_or((mantissa, ""));
        if !frac_part.chars().all(|c| c.is_ascii_digit()) {
            return Err(Error::Parse(format!("not an exact number: {text:?}")));
        }
        let digits = format!("{int_part}{frac_part}");
        let digits = if digits == "-" || digits == "+" || digits.is_empty() {
            return Err(Error::Parse(format!("not an exact number: {text:?}")));
        } else {
            digits
        };
        let numer = parse_int(&digits, text)?;
        let scale = exponent - frac_part.len() as i32;
        let ten = BigInt::from(10);
        let value = if scale >= 0 {
            BigRational::from_integer(numer * ten.pow(scale as u32))
        } else {
            BigRational::new(numer, ten.pow((-scale) as u32))
        };
        Ok(Rational::canonical(value))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(s: &str) -> Rational {
        s.parse().unwrap()
    }

    #[test]
    fn parses_decimals_and_fractions() {
        assert_eq!(q("1.25"), Rational::new(5, 4));
        assert_eq!(q("-0.5"), Rational::new(-1, 2));
        assert_eq!(q("3/6"), Rational::new(1, 2));
        assert_eq!(q("-7"), Rational::from_int(-7));
        assert_eq!(q("2e-3"), Rational::new(1, 500));
        assert_eq!(q("1.5E2"), Rational::from_int(150));
        assert_eq!(q(" 4 / -8 "), Rational::new(-1, 2));
    }

    #[test]
    fn rejects_garbage() {
        for bad in ["", "abc", "1/0", "1.2.3", "--1", "0x10", "1/", "nan", "."] {
            assert!(bad.parse::<Rational>().is_err(), "{bad:?} parsed");
        }
    }

    #[test]
    fn exact_strings() {
        assert_eq!(q("5/4").to_exact_string(), "1.25");
        assert_eq!(q("-1/8").to_exact_string(), "-0.125");
        assert_eq!(q("1/3").to_exact_string(), "1/3");
        assert_eq!(q("12").to_exact_string(), "12");
        assert_eq!(q("-3/1000").to_exact_string(), "-0.003");
    }

    #[test]
    fn overflow_spills_to_big_and_back() {
        let big = Rational::from_int(i64::MAX);
        let sum = &big + &big;
        assert!(matches!(sum.0, Repr::Big(_)));
        let back = &sum - &big;
        assert!(matches!(back.0, Repr::Small(_)));
        assert_eq!(back, big);
        let tiny = Rational::new(1, i64::MAX);
        let prod = &tiny * &tiny;
        assert!(prod.is_positive());
        assert!(prod < tiny);
        assert_eq!(&prod / &tiny, tiny);
    }

    #[test]
    fn negating_min_does_not_panic() {
        let m = Rational::from_int(i64::MIN);
        let n = -&m;
        assert!(n.is_positive());
        assert_eq!(-&n, m);
    }

    #[test]
    fn ordering_across_representations() {
        let big = &Rational::from_int(i64::MAX) * &Rational::from_int(4);
        assert!(Rational::from_int(1) < big);
        assert!(-&big < Rational::from_int(-1));
        assert_eq!(big.signum(), Ordering::Greater);
    }
}
