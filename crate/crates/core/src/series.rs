//! Truncated Laurent series in `q^(1/D)` with exact integer coefficients.
//!
//! A [`QSeries`] stores exponents scaled by its denominator `D`, so the
//! coefficient at scaled key `k` belongs to `q^(k/D)`. Coefficients are exact
//! for every key below the (exclusive) order and unknown from the order on.
//!
//! Storage is dense from the valuation: `coeffs[0]` sits at `start` and both
//! the first and last stored coefficient are nonzero. The zero series stores
//! nothing and reports its order as its valuation.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::monomial::{fmt_rat, int, rat, scaled, Rat, Sign, SignedMonomial};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QSeries {
    denom: i64,
    start: i64,
    coeffs: Vec<BigInt>,
    order: i64,
}

/// Outcome of comparing two series below a common order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Comparison {
    Pass,
    Mismatch {
        exponent: Rat,
        lhs: BigInt,
        rhs: BigInt,
    },
}

impl Comparison {
    pub fn is_pass(&self) -> bool {
        matches!(self, Comparison::Pass)
    }
}

impl QSeries {
    pub fn zero(denom: i64, order: i64) -> Self {
        assert!(denom > 0, "denominator must be positive");
        QSeries {
            denom,
            start: order,
            coeffs: Vec::new(),
            order,
        }
    }

    pub fn one(denom: i64, order: i64) -> Self {
        Self::from_coeffs(denom, 0, vec![BigInt::one()], order)
    }

    /// Build from a dense run of coefficients beginning at scaled key `start`.
    /// Entries at or beyond `order` are dropped.
    pub fn from_coeffs(denom: i64, start: i64, mut coeffs: Vec<BigInt>, order: i64) -> Self {
        assert!(denom > 0, "denominator must be positive");
        let keep = (order - start).clamp(0, coeffs.len() as i64) as usize;
        coeffs.truncate(keep);
        let mut s = QSeries {
            denom,
            start,
            coeffs,
            order,
        };
        s.normalize();
        s
    }

    /// Build from sparse `(scaled key, coefficient)` pairs; repeated keys accumulate.
    pub fn from_terms<I>(denom: i64, terms: I, order: i64) -> Self
    where
        I: IntoIterator<Item = (i64, BigInt)>,
    {
        let terms: Vec<(i64, BigInt)> = terms.into_iter().filter(|(k, _)| *k < order).collect();
        let Some(lo) = terms.iter().map(|(k, _)| *k).min() else {
            return Self::zero(denom, order);
        };
        let hi = terms.iter().map(|(k, _)| *k).max().unwrap();
        let mut coeffs = vec![BigInt::zero(); (hi - lo + 1) as usize];
        for (k, c) in terms {
            coeffs[(k - lo) as usize] += c;
        }
        Self::from_coeffs(denom, lo, coeffs, order)
    }

    /// `m` as a series with denominator `denom` and order `order`.
    pub fn monomial(m: SignedMonomial, denom: i64, order: i64) -> Result<Self> {
        let k = scaled(m.exponent, denom)?;
        let c = BigInt::from(m.sign.as_i64());
        Ok(Self::from_coeffs(denom, k, vec![c], order))
    }

    fn normalize(&mut self) {
        let lead = self.coeffs.iter().position(|c| !c.is_zero());
        match lead {
            None => {
                self.coeffs.clear();
                self.start = self.order;
            }
            Some(i) => {
                if i > 0 {
                    self.coeffs.drain(..i);
                    self.start += i as i64;
                }
                while self.coeffs.last().is_some_and(|c| c.is_zero()) {
                    self.coeffs.pop();
                }
            }
        }
    }

    pub fn denom(&self) -> i64 {
        self.denom
    }

    /// Exclusive truncation order, scaled by `denom`.
    pub fn order(&self) -> i64 {
        self.order
    }

    /// Least scaled key with a nonzero coefficient, or the order for the zero series.
    pub fn valuation(&self) -> i64 {
        self.start
    }

    pub fn order_rat(&self) -> Rat {
        rat(self.order, self.denom)
    }

    pub fn valuation_rat(&self) -> Rat {
        rat(self.start, self.denom)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Number of nonzero coefficients.
    pub fn term_count(&self) -> usize {
        self.coeffs.iter().filter(|c| !c.is_zero()).count()
    }

    /// Nonzero coefficients as `(scaled key, coefficient)`, in increasing key order.
    pub fn terms(&self) -> impl Iterator<Item = (i64, &BigInt)> + '_ {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(move |(i, c)| (self.start + i as i64, c))
    }

    /// Coefficient at scaled key `k`; zero outside the stored run.
    pub fn coeff_scaled(&self, k: i64) -> BigInt {
        if k < self.start {
            return BigInt::zero();
        }
        self.coeffs
            .get((k - self.start) as usize)
            .cloned()
            .unwrap_or_default()
    }

    /// Coefficient of `q^e`.
    pub fn coeff(&self, e: Rat) -> Result<BigInt> {
        if e >= self.order_rat() {
            return Err(Error::OrderExceeded {
                exponent: e,
                order: self.order_rat(),
            });
        }
        match scaled(e, self.denom) {
            Ok(k) => Ok(self.coeff_scaled(k)),
            Err(_) => Ok(BigInt::zero()),
        }
    }

    /// Lower the order to `order` (never raises it).
    pub fn truncate(&self, order: i64) -> Self {
        if order >= self.order {
            return self.clone();
        }
        Self::from_coeffs(self.denom, self.start, self.coeffs.clone(), order)
    }

    /// Re-express over the finer lattice `(1/denom)·Z`; `denom` must be a multiple of the current one.
    pub fn with_denom(&self, denom: i64) -> Self {
        if denom == self.denom {
            return self.clone();
        }
        assert!(
            denom % self.denom == 0,
            "{denom} is not a multiple of {}",
            self.denom
        );
        let m = denom / self.denom;
        let mut coeffs = Vec::new();
        if !self.coeffs.is_empty() {
            coeffs = vec![BigInt::zero(); (self.coeffs.len() - 1) * m as usize + 1];
            for (i, c) in self.coeffs.iter().enumerate() {
                coeffs[i * m as usize] = c.clone();
            }
        }
        QSeries {
            denom,
            start: self.start * m,
            coeffs,
            order: self.order * m,
        }
    }

    fn unify(&self, other: &Self) -> (Self, Self) {
        let d = self.denom.lcm(&other.denom);
        (self.with_denom(d), other.with_denom(d))
    }

    pub fn negate(&self) -> Self {
        QSeries {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
            ..self.clone()
        }
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        let coeffs = self.coeffs.iter().map(|c| c * k).collect();
        Self::from_coeffs(self.denom, self.start, coeffs, self.order)
    }

    pub fn scale_sign(&self, s: Sign) -> Self {
        match s {
            Sign::Plus => self.clone(),
            Sign::Minus => self.negate(),
        }
    }

    fn add_impl(&self, other: &Self, sign: Sign) -> Self {
        if self.denom != other.denom {
            let (a, b) = self.unify(other);
            return a.add_impl(&b, sign);
        }
        let order = self.order.min(other.order);
        if other.is_zero() {
            return self.truncate(order);
        }
        if self.is_zero() {
            return other.scale_sign(sign).truncate(order);
        }
        let lo = self.start.min(other.start);
        let hi =
            (self.start + self.coeffs.len() as i64).max(other.start + other.coeffs.len() as i64);
        let hi = hi.min(order).max(lo);
        let mut coeffs = vec![BigInt::zero(); (hi - lo) as usize];
        for (i, c) in self.coeffs.iter().enumerate() {
            let k = self.start + i as i64;
            if k < hi {
                coeffs[(k - lo) as usize] += c;
            }
        }
        for (i, c) in other.coeffs.iter().enumerate() {
            let k = other.start + i as i64;
            if k < hi {
                match sign {
                    Sign::Plus => coeffs[(k - lo) as usize] += c,
                    Sign::Minus => coeffs[(k - lo) as usize] -= c,
                }
            }
        }
        Self::from_coeffs(self.denom, lo, coeffs, order)
    }

    pub fn add(&self, other: &Self) -> Self {
        self.add_impl(other, Sign::Plus)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add_impl(other, Sign::Minus)
    }

    /// Product; the order is `min(T_f + v_g, T_g + v_f)`.
    pub fn mul(&self, other: &Self) -> Self {
        if self.denom != other.denom {
            let (a, b) = self.unify(other);
            return a.mul(&b);
        }
        let order = (self.order + other.start).min(other.order + self.start);
        if self.is_zero() || other.is_zero() {
            return Self::zero(self.denom, order);
        }
        let start = self.start + other.start;
        let len = (order - start).max(0) as usize;
        let coeffs = convolve(&self.coeffs, &other.coeffs, len);
        Self::from_coeffs(self.denom, start, coeffs, order)
    }

    /// Multiply by the monomial `m` exactly.
    pub fn shift(&self, m: SignedMonomial) -> Result<Self> {
        let d = self.denom.lcm(m.exponent.denom());
        let s = self.with_denom(d);
        let k = scaled(m.exponent, d)?;
        let mut out = s.scale_sign(m.sign);
        out.start += k;
        out.order += k;
        Ok(out)
    }

    /// Multiplicative inverse of a series whose leading coefficient is `±1`.
    ///
    /// With valuation `v` and order `T`, the inverse has valuation `-v` and order `T - 2v`.
    pub fn invert(&self) -> Result<Self> {
        let Some(lead) = self.coeffs.first() else {
            return Err(Error::ZeroDivisor);
        };
        let unit = if lead.is_one() {
            1i64
        } else if (-lead).is_one() {
            -1
        } else {
            return Err(Error::NonUnitLeadingCoefficient(lead.to_string()));
        };
        let v = self.start;
        let len = (self.order - v) as usize;
        let inv = invert_unit(&self.coeffs, unit, len);
        Ok(Self::from_coeffs(self.denom, -v, inv, self.order - 2 * v))
    }

    /// Multiply by `(1 - s·q^e)` where `e` is a scaled key.
    pub fn mul_binomial(&self, s: Sign, e: i64) -> Self {
        if self.is_zero() {
            return Self::zero(self.denom, self.order + e.min(0));
        }
        let order = self.order + e.min(0);
        let lo = self.start + e.min(0);
        let hi = (self.start + self.coeffs.len() as i64 + e.max(0)).min(order);
        if hi <= lo {
            return Self::zero(self.denom, order);
        }
        let mut coeffs = vec![BigInt::zero(); (hi - lo) as usize];
        for (i, c) in self.coeffs.iter().enumerate() {
            let k = self.start + i as i64;
            if k < hi {
                coeffs[(k - lo) as usize] += c;
            }
            let k2 = k + e;
            if k2 < hi {
                match s {
                    Sign::Plus => coeffs[(k2 - lo) as usize] -= c,
                    Sign::Minus => coeffs[(k2 - lo) as usize] += c,
                }
            }
        }
        Self::from_coeffs(self.denom, lo, coeffs, order)
    }

    /// Divide by `(1 - s·q^e)`; fails when `e = 0` since the factor is then `0` or `2`.
    pub fn div_binomial(&self, s: Sign, e: i64) -> Result<Self> {
        if e == 0 {
            let lead = if s == Sign::Plus { 0 } else { 2 };
            return Err(Error::NonUnitLeadingCoefficient(lead.to_string()));
        }
        if e < 0 {
            // 1 - s q^e = (-s q^e)(1 - s q^{-e})
            let mut moved = self.scale_sign(-s);
            moved.start -= e;
            moved.order -= e;
            return moved.div_binomial(s, -e);
        }
        if self.is_zero() {
            return Ok(self.clone());
        }
        let len = (self.order - self.start) as usize;
        let mut coeffs = self.coeffs.clone();
        coeffs.resize(len, BigInt::zero());
        let step = e as usize;
        for k in step..len {
            let prev = coeffs[k - step].clone();
            match s {
                Sign::Plus => coeffs[k] += prev,
                Sign::Minus => coeffs[k] -= prev,
            }
        }
        Ok(Self::from_coeffs(
            self.denom, self.start, coeffs, self.order,
        ))
    }

    /// Substitute `q -> q^r` for positive rational `r`. The result uses the least
    /// denominator that makes every nonzero exponent integral.
    pub fn rescale(&self, r: Rat) -> Result<Self> {
        if *r.numer() <= 0 {
            return Err(Error::Invalid(format!(
                "rescale factor must be positive, got {r}"
            )));
        }
        let (p, s) = (*r.numer(), *r.denom());
        let n = self.denom * s;
        let g = self.terms().fold(0i64, |g, (k, _)| g.gcd(&(k * p)));
        let new_denom = n / n.gcd(&g);
        let map = |k: i64| -> i64 { k * p * new_denom / n };
        let terms = self.terms().map(|(k, c)| (map(k), c.clone()));
        let order = Integer::div_ceil(
            &(self.order as i128 * p as i128 * new_denom as i128),
            &(n as i128),
        ) as i64;
        Ok(Self::from_terms(new_denom, terms, order))
    }

    /// Compare `self` with `other` at every exponent strictly below `t`.
    pub fn eq_to_order(&self, other: &Self, t: Rat) -> Result<Comparison> {
        for s in [self, other] {
            if t > s.order_rat() {
                return Err(Error::OrderExceeded {
                    exponent: t,
                    order: s.order_rat(),
                });
            }
        }
        let (a, b) = self.unify(other);
        let d = a.denom;
        // least scaled key that is >= t·d
        let limit = (t * int(d)).ceil().to_integer();
        let lo = a.start.min(b.start);
        let hi = (a.start + a.coeffs.len() as i64)
            .max(b.start + b.coeffs.len() as i64)
            .min(limit);
        for k in lo..hi {
            let (x, y) = (a.coeff_scaled(k), b.coeff_scaled(k));
            if x != y {
                return Ok(Comparison::Mismatch {
                    exponent: rat(k, d),
                    lhs: x,
                    rhs: y,
                });
            }
        }
        Ok(Comparison::Pass)
    }
}

impl fmt::Display for QSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, c) in self.terms() {
            let e = rat(k, self.denom);
            let mag = c.abs();
            let sep = match (first, c.is_negative()) {
                (true, true) => "-",
                (true, false) => "",
                (false, true) => " - ",
                (false, false) => " + ",
            };
            first = false;
            write!(f, "{sep}")?;
            if e.is_zero() {
                write!(f, "{mag}")?;
            } else {
                if !mag.is_one() {
                    write!(f, "{mag}*")?;
                }
                write!(f, "q^{}", fmt_rat(&e))?;
            }
        }
        if first {
            write!(f, "0")?;
        }
        write!(f, " + O(q^{})", fmt_rat(&self.order_rat()))
    }
}

impl Add for &QSeries {
    type Output = QSeries;
    fn add(self, rhs: &QSeries) -> QSeries {
        QSeries::add(self, rhs)
    }
}

impl Sub for &QSeries {
    type Output = QSeries;
    fn sub(self, rhs: &QSeries) -> QSeries {
        QSeries::sub(self, rhs)
    }
}

impl Mul for &QSeries {
    type Output = QSeries;
    fn mul(self, rhs: &QSeries) -> QSeries {
        QSeries::mul(self, rhs)
    }
}

impl Neg for &QSeries {
    type Output = QSeries;
    fn neg(self) -> QSeries {
        self.negate()
    }
}

fn small(v: &[BigInt]) -> Option<Vec<i64>> {
    v.iter().map(|c| c.to_i64()).collect()
}

/// Truncated product `c[k] = Σ a[i]·b[k-i]` for `k < len`.
pub(crate) fn convolve(a: &[BigInt], b: &[BigInt], len: usize) -> Vec<BigInt> {
    if let (Some(sa), Some(sb)) = (small(a), small(b)) {
        if let Some(out) = convolve_i128(&sa, &sb, len) {
            return out.into_iter().map(BigInt::from).collect();
        }
    }
    let mut out = vec![BigInt::zero(); len.min(a.len() + b.len())];
    for (i, x) in a.iter().enumerate() {
        if i >= out.len() {
            break;
        }
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate().take(out.len() - i) {
            if !y.is_zero() {
                out[i + j] += x * y;
            }
        }
    }
    out
}

fn convolve_i128(a: &[i64], b: &[i64], len: usize) -> Option<Vec<i128>> {
    let mut out = vec![0i128; len.min(a.len() + b.len())];
    for (i, &x) in a.iter().enumerate() {
        if i >= out.len() {
            break;
        }
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate().take(out.len() - i) {
            let p = x as i128 * y as i128;
            out[i + j] = out[i + j].checked_add(p)?;
        }
    }
    Some(out)
}

/// Inverse of `Σ c[k] q^k` with `c[0] = unit = ±1`, to `len` terms.
fn invert_unit(c: &[BigInt], unit: i64, len: usize) -> Vec<BigInt> {
    if let Some(sc) = small(c) {
        if let Some(out) = invert_unit_i128(&sc, unit, len) {
            return out.into_iter().map(BigInt::from).collect();
        }
    }
    let u = BigInt::from(unit);
    let mut g: Vec<BigInt> = Vec::with_capacity(len);
    for k in 0..len {
        if k == 0 {
            g.push(u.clone());
            continue;
        }
        let mut acc = BigInt::zero();
        for i in 1..=k.min(c.len() - 1) {
            if !c[i].is_zero() {
                acc += &c[i] * &g[k - i];
            }
        }
        g.push(-(&u * acc));
    }
    g
}

fn invert_unit_i128(c: &[i64], unit: i64, len: usize) -> Option<Vec<i128>> {
    let mut g: Vec<i128> = Vec::with_capacity(len);
    for k in 0..len {
        if k == 0 {
            g.push(unit as i128);
            continue;
        }
        let mut acc: i128 = 0;
        for i in 1..=k.min(c.len() - 1) {
            if c[i] != 0 {
                acc = acc.checked_add((c[i] as i128).checked_mul(g[k - i])?)?;
            }
        }
        g.push(-(unit as i128) * acc);
    }
    Some(g)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn poly(coeffs: &[i64], order: i64) -> QSeries {
        QSeries::from_coeffs(
            1,
            0,
            coeffs.iter().map(|&c| BigInt::from(c)).collect(),
            order,
        )
    }

    fn ints(s: &QSeries) -> Vec<(i64, i64)> {
        s.terms().map(|(k, c)| (k, c.to_i64().unwrap())).collect()
    }

    #[test]
    fn monomial_examples() {
        let one = QSeries::monomial(SignedMonomial::one(), 1, 10).unwrap();
        assert_eq!(ints(&one), vec![(0, 1)]);
        let m = QSeries::monomial(SignedMonomial::neg_qi(3), 1, 10).unwrap();
        assert_eq!(ints(&m), vec![(3, -1)]);
        let h = QSeries::monomial(SignedMonomial::q(rat(3, 2)), 2, 20).unwrap();
        assert_eq!(ints(&h), vec![(3, 1)]);
        assert_eq!(h.valuation(), 3);
        let bad = QSeries::monomial(SignedMonomial::q(rat(1, 3)), 2, 20);
        assert!(matches!(bad, Err(Error::IncompatibleDenominator { .. })));
    }

    #[test]
    fn add_examples() {
        let a = poly(&[1, -1], 10);
        let b = poly(&[0, 1], 10);
        assert_eq!(ints(&(&a + &b)), vec![(0, 1)]);
        let z = &a + &a.negate();
        assert!(z.is_zero());
        assert_eq!(z.valuation(), z.order());
        let h = QSeries::monomial(SignedMonomial::q(rat(1, 2)), 2, 10).unwrap();
        let s = &b + &h;
        assert_eq!(s.denom(), 2);
        assert_eq!(ints(&s), vec![(1, 1), (2, 1)]);
        assert_eq!(s.order(), 10);
    }

    #[test]
    fn mul_examples() {
        let p = &poly(&[1, -1], 10) * &poly(&[1, 1], 10);
        assert_eq!(ints(&p), vec![(0, 1), (2, -1)]);
        let f = poly(&[3, 0, -2, 7], 8);
        assert_eq!(&f * &QSeries::one(1, 8), f);
    }

    #[test]
    fn mul_order_propagation() {
        let f = QSeries::from_coeffs(1, 2, vec![BigInt::one()], 10);
        let g = QSeries::from_coeffs(1, -1, vec![BigInt::one()], 5);
        // min(10 + (-1), 5 + 2)
        assert_eq!(f.mul(&g).order(), 7);
    }

    #[test]
    fn invert_examples() {
        let g = poly(&[1, -1], 5).invert().unwrap();
        assert_eq!(ints(&g), vec![(0, 1), (1, 1), (2, 1), (3, 1), (4, 1)]);
        let f = QSeries::from_coeffs(1, 1, vec![BigInt::one(), -BigInt::one()], 6);
        let g = f.invert().unwrap();
        assert_eq!(g.valuation(), -1);
        assert_eq!(ints(&g)[..3], [(-1, 1), (0, 1), (1, 1)]);
        assert!(matches!(
            poly(&[2, 1], 5).invert(),
            Err(Error::NonUnitLeadingCoefficient(_))
        ));
        assert!(matches!(
            QSeries::zero(1, 5).invert(),
            Err(Error::ZeroDivisor)
        ));
    }

    #[test]
    fn binomial_ops_agree_with_general_ones() {
        let f = poly(&[1, 4, -2, 0, 5], 12);
        for e in [-3i64, -1, 1, 2, 5] {
            for s in [Sign::Plus, Sign::Minus] {
                let b = QSeries::from_terms(
                    1,
                    [(0, BigInt::one()), (e, BigInt::from(-s.as_i64()))],
                    i64::MAX / 4,
                );
                let m = f.mul_binomial(s, e);
                assert_eq!(m.order(), f.mul(&b).order());
                assert!(m.eq_to_order(&f.mul(&b), m.order_rat()).unwrap().is_pass());
                let d = f.div_binomial(s, e).unwrap();
                let back = d.mul_binomial(s, e);
                let t = back.order_rat().min(f.order_rat());
                assert!(back.eq_to_order(&f, t).unwrap().is_pass(), "e={e} s={s:?}");
            }
        }
        assert!(f.div_binomial(Sign::Plus, 0).is_err());
    }

    #[test]
    fn rescale_examples() {
        let f = poly(&[1, -1], 10);
        let r = f.rescale(int(3)).unwrap();
        assert_eq!(ints(&r), vec![(0, 1), (3, -1)]);
        assert_eq!(r.order(), 30);
        let h = f.rescale(rat(1, 2)).unwrap();
        assert_eq!(h.denom(), 2);
        assert_eq!(ints(&h), vec![(0, 1), (1, -1)]);
        assert_eq!(h.order_rat(), int(5));
        let back = r.rescale(rat(1, 3)).unwrap();
        assert_eq!(back, f);
    }

    #[test]
    fn coeff_and_comparison() {
        let f = poly(&[1, 0, 0, -1], 10);
        assert_eq!(f.coeff(int(3)).unwrap(), BigInt::from(-1));
        assert_eq!(f.coeff(rat(1, 2)).unwrap(), BigInt::zero());
        assert!(matches!(f.coeff(int(10)), Err(Error::OrderExceeded { .. })));
        assert_eq!(f.eq_to_order(&f, int(7)).unwrap(), Comparison::Pass);
        let g = poly(&[1, 0, 2, -1], 10);
        assert_eq!(
            f.eq_to_order(&g, int(10)).unwrap(),
            Comparison::Mismatch {
                exponent: int(2),
                lhs: BigInt::zero(),
                rhs: BigInt::from(2)
            }
        );
        assert_eq!(f.eq_to_order(&g, int(2)).unwrap(), Comparison::Pass);
        assert!(f.eq_to_order(&g, int(11)).is_err());
    }

    #[test]
    fn big_coefficients_take_the_slow_path() {
        let big = BigInt::from(i64::MAX) * BigInt::from(4);
        let f = QSeries::from_coeffs(1, 0, vec![BigInt::one(), big.clone()], 5);
        let sq = f.mul(&f);
        assert_eq!(sq.coeff_scaled(2), &big * &big);
        let inv = f.invert().unwrap();
        assert!(f
            .mul(&inv)
            .eq_to_order(&QSeries::one(1, 5), int(5))
            .unwrap()
            .is_pass());
    }

    #[test]
    fn display() {
        let f = poly(&[1, -2, 0, 1], 5);
        assert_eq!(f.to_string(), "1 - 2*q^1 + q^3 + O(q^5)");
    }
}
