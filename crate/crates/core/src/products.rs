//! q-Pochhammer symbols and theta functions.

use num_bigint::BigInt;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::monomial::{int, rat, scaled, Rat, Sign, SignedMonomial};
use crate::series::QSeries;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PochLength {
    Finite(u64),
    Infinite,
}

/// Whether a product multiplies or divides.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Placement {
    Numerator,
    Denominator,
}

/// `(a_1, ..., a_m; Q)_n` raised to `±1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PochSpec {
    pub args: Vec<SignedMonomial>,
    pub base: SignedMonomial,
    pub length: PochLength,
    pub placement: Placement,
}

impl PochSpec {
    pub fn infinite(args: Vec<SignedMonomial>, base: SignedMonomial) -> Self {
        PochSpec {
            args,
            base,
            length: PochLength::Infinite,
            placement: Placement::Numerator,
        }
    }

    pub fn finite(args: Vec<SignedMonomial>, base: SignedMonomial, n: u64) -> Self {
        PochSpec {
            args,
            base,
            length: PochLength::Finite(n),
            placement: Placement::Numerator,
        }
    }

    pub fn inverted(mut self) -> Self {
        self.placement = match self.placement {
            Placement::Numerator => Placement::Denominator,
            Placement::Denominator => Placement::Numerator,
        };
        self
    }

    /// `(q^{a_1}, ..., q^{a_m}; q^m)_∞` with integer exponents, the usual shorthand.
    pub fn q_inf(args: &[i64], base: i64) -> Self {
        Self::infinite(
            args.iter().map(|&a| SignedMonomial::qi(a)).collect(),
            SignedMonomial::qi(base),
        )
    }

    fn check(&self) -> Result<()> {
        if self.length == PochLength::Infinite {
            if self.base.exponent <= Rat::zero() {
                return Err(Error::NonConvergentProduct(format!(
                    "base {} has nonpositive exponent",
                    self.base
                )));
            }
            if let Some(a) = self.args.iter().find(|a| a.exponent < Rat::zero()) {
                return Err(Error::NonConvergentProduct(format!(
                    "argument {a} has negative exponent"
                )));
            }
        }
        Ok(())
    }

    /// Every linear factor `1 - a·Q^k` that differs from 1 below `bound`.
    fn factors(&self, bound: Rat) -> Vec<SignedMonomial> {
        let mut out = Vec::new();
        for &a in &self.args {
            match self.length {
                PochLength::Finite(n) => {
                    out.extend((0..n as i64).map(|k| a * self.base.pow(k)));
                }
                PochLength::Infinite => {
                    let mut k = 0;
                    loop {
                        let f = a * self.base.pow(k);
                        if f.exponent >= bound {
                            break;
                        }
                        out.push(f);
                        k += 1;
                    }
                }
            }
        }
        out
    }
}

/// Expand a Pochhammer product to scaled order `order` over `(1/denom)·Z`.
pub fn poch(spec: &PochSpec, denom: i64, order: i64) -> Result<QSeries> {
    spec.check()?;
    let factors = spec.factors(rat(order, denom));
    let keys = factors
        .iter()
        .map(|f| scaled(f.exponent, denom).map(|k| (f.sign, k)))
        .collect::<Result<Vec<_>>>()?;
    match spec.placement {
        Placement::Numerator => {
            let deficit: i64 = keys.iter().map(|&(_, k)| k.min(0)).sum();
            let mut acc = QSeries::one(denom, order - deficit);
            for (s, k) in keys {
                acc = acc.mul_binomial(s, k);
            }
            Ok(acc.truncate(order))
        }
        Placement::Denominator => {
            let mut acc = QSeries::one(denom, order);
            for (s, k) in keys {
                acc = acc.div_binomial(s, k)?;
            }
            Ok(acc.truncate(order))
        }
    }
}

/// Jacobi triple product sum `Σ_n (-1)^n (q^b)^{n(n-1)/2} c^n`, truncated.
pub fn theta_sum(c: SignedMonomial, b: Rat, denom: i64, order: i64) -> Result<QSeries> {
    if b <= Rat::zero() {
        return Err(Error::Invalid(format!(
            "theta base exponent must be positive, got {b}"
        )));
    }
    let bound = rat(order, denom);
    let exp_at = |n: i64| b * int(n * (n - 1)) / int(2) + c.exponent * int(n);
    // vertex of the quadratic in n
    let centre = (rat(1, 2) - c.exponent / b).round().to_integer();
    let mut terms = Vec::new();
    for dir in [1i64, -1] {
        let mut n = if dir == 1 { centre } else { centre - 1 };
        loop {
            let e = exp_at(n);
            if e >= bound {
                break;
            }
            let sign = Sign::from_parity(n.rem_euclid(2) == 1) * c.sign.pow(n);
            terms.push((scaled(e, denom)?, BigInt::from(sign.as_i64())));
            n += dir;
        }
    }
    Ok(QSeries::from_terms(denom, terms, order))
}

/// Shift `c = c'·(q^b)^k` so that the exponent of `c'` lies in `(0, b]`.
///
/// Returns `(prefactor, c')` with `θ(c; q^b) = prefactor · θ(c'; q^b)`.
pub fn theta_reduce(c: SignedMonomial, b: Rat) -> (SignedMonomial, SignedMonomial) {
    let k = (c.exponent / b).ceil().to_integer() - 1;
    let reduced = SignedMonomial::new(c.sign, c.exponent - b * int(k));
    let sign = Sign::from_parity(k.rem_euclid(2) == 1) * reduced.sign.pow(-k);
    let exponent = -b * int(k * (k - 1)) / int(2) - int(k) * reduced.exponent;
    (SignedMonomial::new(sign, exponent), reduced)
}

/// `θ(c; q^b) = (q^b, c, q^b/c; q^b)_∞`, after quasi-periodic reduction of `c`.
pub fn theta_prod(c: SignedMonomial, b: Rat, denom: i64, order: i64) -> Result<QSeries> {
    if b <= Rat::zero() {
        return Err(Error::Invalid(format!(
            "theta base exponent must be positive, got {b}"
        )));
    }
    let (pre, reduced) = theta_reduce(c, b);
    if reduced.exponent <= Rat::zero() || reduced.exponent > b {
        return Err(Error::NonConvergentProduct(format!(
            "could not reduce theta argument {c}"
        )));
    }
    let qb = SignedMonomial::q(b);
    let spec = PochSpec::infinite(vec![qb, reduced, qb * reduced.recip()], qb);
    let pre_key = scaled(pre.exponent, denom)?;
    let prod = poch(&spec, denom, order - pre_key)?;
    Ok(prod.shift(pre)?.truncate(order))
}

/// Which of the two Euler expansions to sum term by term.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum EulerKind {
    /// `Σ z^n / (q;q)_n`, equal to `1/(z;q)_∞`.
    Reciprocal,
    /// `Σ q^{n(n-1)/2} z^n / (q;q)_n`, equal to `(-z;q)_∞`.
    Product,
}

/// Direct term-by-term summation of an Euler series in `z`.
pub fn euler_sum(kind: EulerKind, z: SignedMonomial, denom: i64, order: i64) -> Result<QSeries> {
    let bound = rat(order, denom);
    let exp_at = |n: i64| match kind {
        EulerKind::Reciprocal => z.exponent * int(n),
        EulerKind::Product => int(n * (n - 1)) / int(2) + z.exponent * int(n),
    };
    if kind == EulerKind::Reciprocal && z.exponent <= Rat::zero() {
        return Err(Error::NonConvergentProduct(format!(
            "argument {z} must have positive exponent"
        )));
    }
    // The term exponent is convex in n; stop once it is past its minimum and above the bound.
    let mut ns = Vec::new();
    let mut n = 0i64;
    loop {
        let e = exp_at(n);
        let rising = exp_at(n + 1) >= e;
        if e >= bound && rising {
            break;
        }
        if e < bound {
            ns.push((n, e));
        }
        n += 1;
    }
    let lowest = ns
        .iter()
        .map(|&(_, e)| e)
        .min()
        .unwrap_or(Rat::zero())
        .min(Rat::zero());
    let work = order - scaled(lowest, denom)?;
    let mut inv = QSeries::one(denom, work);
    let mut acc = QSeries::zero(denom, order);
    let mut done = 0i64;
    for (n, e) in ns {
        while done < n {
            done += 1;
            inv = inv.div_binomial(Sign::Plus, scaled(int(done), denom)?)?;
        }
        let sign = z.sign.pow(n);
        let term = inv.shift(SignedMonomial::new(sign, e))?;
        acc = acc.add(&term.truncate(order));
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::ToPrimitive;

    fn ints(s: &QSeries) -> Vec<(i64, i64)> {
        s.terms().map(|(k, c)| (k, c.to_i64().unwrap())).collect()
    }

    fn q(e: i64) -> SignedMonomial {
        SignedMonomial::qi(e)
    }

    #[test]
    fn empty_product_is_one() {
        let s = poch(&PochSpec::finite(vec![q(1)], q(1), 0), 1, 10).unwrap();
        assert_eq!(ints(&s), vec![(0, 1)]);
    }

    #[test]
    fn euler_function_to_order_8() {
        let s = poch(&PochSpec::q_inf(&[1], 1), 1, 8).unwrap();
        assert_eq!(ints(&s), vec![(0, 1), (1, -1), (2, -1), (5, 1), (7, 1)]);
    }

    #[test]
    fn distinct_multiples_of_three() {
        let spec = PochSpec::infinite(vec![SignedMonomial::neg_qi(3)], q(3));
        let s = poch(&spec, 1, 10).unwrap();
        // 3, 6, 9 = 6+3 each have... 9 has two: {9}, {6,3}
        assert_eq!(ints(&s), vec![(0, 1), (3, 1), (6, 1), (9, 2)]);
    }

    #[test]
    fn signed_base() {
        // (-q; -q^5)_2 = (1 + q)(1 - q^6)
        let spec = PochSpec::finite(
            vec![SignedMonomial::neg_qi(1)],
            SignedMonomial::neg_qi(5),
            2,
        );
        let s = poch(&spec, 1, 20).unwrap();
        assert_eq!(ints(&s), vec![(0, 1), (1, 1), (6, -1), (7, -1)]);
    }

    #[test]
    fn nonconvergent_products_are_rejected() {
        let bad = PochSpec::infinite(vec![q(1)], q(0));
        assert!(matches!(
            poch(&bad, 1, 10),
            Err(Error::NonConvergentProduct(_))
        ));
        let bad = PochSpec::infinite(vec![q(-1)], q(1));
        assert!(matches!(
            poch(&bad, 1, 10),
            Err(Error::NonConvergentProduct(_))
        ));
    }

    #[test]
    fn denominator_with_constant_factor_is_not_a_unit() {
        let spec = PochSpec::finite(vec![SignedMonomial::neg_qi(0)], q(1), 2).inverted();
        assert!(matches!(
            poch(&spec, 1, 10),
            Err(Error::NonUnitLeadingCoefficient(_))
        ));
    }

    #[test]
    fn finite_product_with_negative_exponents() {
        // (q^{-2}; q)_3 = (1 - q^-2)(1 - q^-1)(1 - 1) = 0
        let s = poch(&PochSpec::finite(vec![q(-2)], q(1), 3), 1, 10).unwrap();
        assert!(s.is_zero());
        // (q^{-1}; q)_1 = 1 - q^-1
        let s = poch(&PochSpec::finite(vec![q(-1)], q(1), 1), 1, 10).unwrap();
        assert_eq!(ints(&s), vec![(-1, -1), (0, 1)]);
        let inv = poch(&PochSpec::finite(vec![q(-1)], q(1), 1).inverted(), 1, 10).unwrap();
        assert!(inv
            .mul(&s)
            .eq_to_order(&QSeries::one(1, 100), int(9))
            .unwrap()
            .is_pass());
    }

    #[test]
    fn theta_at_one_vanishes() {
        assert!(theta_sum(SignedMonomial::one(), int(1), 1, 30)
            .unwrap()
            .is_zero());
        assert!(theta_prod(SignedMonomial::one(), int(1), 1, 30)
            .unwrap()
            .is_zero());
    }

    #[test]
    fn theta_q_q3_sum_equals_product() {
        let s = theta_sum(q(1), int(3), 1, 20).unwrap();
        let p = poch(&PochSpec::q_inf(&[3, 1, 2], 3), 1, 20).unwrap();
        assert_eq!(s, p);
        assert_eq!(theta_prod(q(1), int(3), 1, 20).unwrap(), p);
    }

    #[test]
    fn reduce_examples() {
        let (pre, red) = theta_reduce(q(1), int(3));
        assert!(pre.is_one());
        assert_eq!(red, q(1));
        let (pre, red) = theta_reduce(SignedMonomial::neg_qi(5), int(4));
        assert_eq!(pre, q(-1));
        assert_eq!(red, SignedMonomial::neg_qi(1));
        let lhs = theta_sum(SignedMonomial::neg_qi(5), int(4), 1, 40).unwrap();
        let rhs = theta_sum(red, int(4), 1, 41).unwrap().shift(pre).unwrap();
        assert!(lhs.eq_to_order(&rhs, int(40)).unwrap().is_pass());
    }

    #[test]
    fn reduce_two_periods() {
        // c = q^(2b + e) with b = 3, e = 1: k = 2, prefactor (-1)^2 q^{-3} q^{-2}
        let (pre, red) = theta_reduce(q(7), int(3));
        assert_eq!(red, q(1));
        assert_eq!(pre, q(-5));
        let lhs = theta_sum(q(7), int(3), 1, 60).unwrap();
        let rhs = theta_sum(red, int(3), 1, 65).unwrap().shift(pre).unwrap();
        assert!(lhs.eq_to_order(&rhs, int(60)).unwrap().is_pass());
    }

    #[test]
    fn euler_sums_match_products() {
        let z = SignedMonomial::q(rat(1, 2));
        let lhs = euler_sum(EulerKind::Reciprocal, z, 2, 60).unwrap();
        let rhs = poch(&PochSpec::infinite(vec![z], q(1)).inverted(), 2, 60).unwrap();
        assert_eq!(lhs, rhs);
        let z = SignedMonomial::neg_qi(2);
        let lhs = euler_sum(EulerKind::Product, z, 1, 60).unwrap();
        let rhs = poch(&PochSpec::infinite(vec![-z], q(1)), 1, 60).unwrap();
        assert_eq!(lhs, rhs);
        assert!(euler_sum(EulerKind::Reciprocal, SignedMonomial::one(), 1, 10).is_err());
    }
}
