//! Signed monomials `±q^e` with rational exponent, and small rational helpers.

use std::fmt;
use std::ops::{Mul, Neg};

use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Rational exponents. Everything in this crate stays far away from `i64` overflow.
pub type Rat = Ratio<i64>;

pub fn rat(n: i64, d: i64) -> Rat {
    Rat::new(n, d)
}

pub fn int(n: i64) -> Rat {
    Rat::from_integer(n)
}

/// Convert `e` into the scaled lattice `(1/denom)·Z`.
pub fn scaled(e: Rat, denom: i64) -> Result<i64> {
    let s = e * int(denom);
    if s.is_integer() {
        Ok(s.to_integer())
    } else {
        Err(Error::IncompatibleDenominator { exponent: e, denom })
    }
}

/// Least `D` such that every exponent lies in `(1/D)·Z`.
pub fn common_denom<I: IntoIterator<Item = Rat>>(exps: I) -> i64 {
    exps.into_iter().fold(1, |acc, e| acc.lcm(e.denom()))
}

pub fn parse_rat(text: &str) -> Option<Rat> {
    let t = text.trim();
    if let Some((n, d)) = t.split_once('/') {
        let n: i64 = n.trim().parse().ok()?;
        let d: i64 = d.trim().parse().ok()?;
        if d == 0 {
            return None;
        }
        return Some(rat(n, d));
    }
    if let Some((whole, frac)) = t.split_once('.') {
        if frac.is_empty() || !frac.bytes().all(|b| b.is_ascii_digit()) || frac.len() > 12 {
            return None;
        }
        let neg = whole.starts_with('-');
        let w: i64 = if whole.is_empty() || whole == "-" {
            0
        } else {
            whole.parse().ok()?
        };
        let scale = 10i64.pow(frac.len() as u32);
        let f: i64 = frac.parse().ok()?;
        let mag = w.abs() * scale + f;
        return Some(rat(if neg { -mag } else { mag }, scale));
    }
    t.parse::<i64>().ok().map(int)
}

pub fn fmt_rat(r: &Rat) -> String {
    if r.is_integer() {
        r.to_integer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn from_parity(odd: bool) -> Sign {
        if odd {
            Sign::Minus
        } else {
            Sign::Plus
        }
    }

    pub fn is_minus(self) -> bool {
        self == Sign::Minus
    }

    /// `self^k`, for any integer `k`.
    pub fn pow(self, k: i64) -> Sign {
        match self {
            Sign::Plus => Sign::Plus,
            Sign::Minus => Sign::from_parity(k.rem_euclid(2) == 1),
        }
    }

    pub fn as_i64(self) -> i64 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }
}

impl Mul for Sign {
    type Output = Sign;
    fn mul(self, rhs: Sign) -> Sign {
        Sign::from_parity(self != rhs)
    }
}

impl Neg for Sign {
    type Output = Sign;
    fn neg(self) -> Sign {
        self * Sign::Minus
    }
}

/// `sign · q^exponent`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct SignedMonomial {
    pub sign: Sign,
    pub exponent: Rat,
}

impl SignedMonomial {
    pub fn new(sign: Sign, exponent: Rat) -> Self {
        SignedMonomial { sign, exponent }
    }

    /// `q^e`
    pub fn q(e: Rat) -> Self {
        SignedMonomial::new(Sign::Plus, e)
    }

    /// `q^n` for integer `n`.
    pub fn qi(n: i64) -> Self {
        SignedMonomial::q(int(n))
    }

    /// `-q^n` for integer `n`.
    pub fn neg_qi(n: i64) -> Self {
        SignedMonomial::new(Sign::Minus, int(n))
    }

    pub fn one() -> Self {
        SignedMonomial::q(Rat::zero())
    }

    pub fn pow(self, k: i64) -> Self {
        SignedMonomial::new(self.sign.pow(k), self.exponent * int(k))
    }

    pub fn recip(self) -> Self {
        SignedMonomial::new(self.sign, -self.exponent)
    }

    pub fn is_one(&self) -> bool {
        self.sign == Sign::Plus && self.exponent.is_zero()
    }
}

impl Mul for SignedMonomial {
    type Output = SignedMonomial;
    fn mul(self, rhs: SignedMonomial) -> SignedMonomial {
        SignedMonomial::new(self.sign * rhs.sign, self.exponent + rhs.exponent)
    }
}

impl Neg for SignedMonomial {
    type Output = SignedMonomial;
    fn neg(self) -> SignedMonomial {
        SignedMonomial::new(-self.sign, self.exponent)
    }
}

impl fmt::Display for SignedMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = if self.sign.is_minus() { "-" } else { "" };
        if self.exponent.is_zero() {
            write!(f, "{s}1")
        } else if self.exponent.is_one() {
            write!(f, "{s}q")
        } else if self.exponent.is_negative() || !self.exponent.is_integer() {
            write!(f, "{s}q^({})", fmt_rat(&self.exponent))
        } else {
            write!(f, "{s}q^{}", self.exponent)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sign_algebra() {
        assert_eq!(Sign::Minus * Sign::Minus, Sign::Plus);
        assert_eq!(Sign::Minus.pow(-3), Sign::Minus);
        assert_eq!(Sign::Minus.pow(4), Sign::Plus);
    }

    #[test]
    fn monomial_pow_and_display() {
        let m = SignedMonomial::new(Sign::Minus, rat(3, 2));
        assert_eq!(m.pow(2), SignedMonomial::q(int(3)));
        assert_eq!(m.to_string(), "-q^(3/2)");
        assert_eq!(SignedMonomial::qi(1).to_string(), "q");
        assert_eq!(SignedMonomial::one().to_string(), "1");
    }

    #[test]
    fn scaling_and_parsing() {
        assert_eq!(scaled(rat(3, 2), 2).unwrap(), 3);
        assert!(matches!(
            scaled(rat(1, 3), 2),
            Err(Error::IncompatibleDenominator { .. })
        ));
        assert_eq!(common_denom([rat(1, 4), rat(1, 6), int(2)]), 12);
        assert_eq!(parse_rat("0.5"), Some(rat(1, 2)));
        assert_eq!(parse_rat("-7/3"), Some(rat(-7, 3)));
        assert_eq!(parse_rat("-1.25"), Some(rat(-5, 4)));
        assert_eq!(parse_rat("x"), None);
    }
}
