//! Composable series expressions used by the identity registry and `expand`.

use crate::ct::{ct, CtExpr};
use crate::error::{Error, Result};
use crate::lattice::{lattice_sum, LatticeSumSpec};
use crate::monomial::{common_denom, Rat, SignedMonomial};
use crate::products::{euler_sum, poch, theta_prod, theta_sum, EulerKind, PochSpec};
use crate::series::QSeries;
use num_bigint::BigInt;

#[derive(Debug, Clone, PartialEq)]
pub enum Expr {
    Lattice(LatticeSumSpec),
    Ct(CtExpr),
    Poch(PochSpec),
    ThetaSum {
        arg: SignedMonomial,
        base: Rat,
    },
    ThetaProd {
        arg: SignedMonomial,
        base: Rat,
    },
    Monomial(SignedMonomial),
    /// One of Euler's series in `z`, summed term by term.
    Euler {
        kind: EulerKind,
        z: SignedMonomial,
    },
    Sum(Vec<Expr>),
    Product(Vec<Expr>),
    Scale(i64, Box<Expr>),
    Inverse(Box<Expr>),
}

impl Expr {
    pub fn scale(k: i64, e: Expr) -> Expr {
        Expr::Scale(k, Box::new(e))
    }

    pub fn inverse(e: Expr) -> Expr {
        Expr::Inverse(Box::new(e))
    }

    /// Visit this node and every node below it.
    pub fn walk<'a>(&'a self, f: &mut dyn FnMut(&'a Expr)) {
        f(self);
        match self {
            Expr::Sum(v) | Expr::Product(v) => v.iter().for_each(|e| e.walk(f)),
            Expr::Scale(_, e) | Expr::Inverse(e) => e.walk(f),
            _ => {}
        }
    }

    /// Least denominator that represents every exponent appearing in the expression.
    pub fn natural_denom(&self) -> i64 {
        let mut exps: Vec<Rat> = Vec::new();
        self.walk(&mut |e| match e {
            Expr::Lattice(s) => exps.extend(s.exponents()),
            Expr::Ct(c) => exps.extend(c.exponents()),
            Expr::Poch(p) => {
                exps.extend(p.args.iter().map(|a| a.exponent));
                exps.push(p.base.exponent);
            }
            Expr::ThetaSum { arg, base } | Expr::ThetaProd { arg, base } => {
                exps.push(arg.exponent);
                exps.push(*base);
            }
            Expr::Monomial(m) => exps.push(m.exponent),
            Expr::Euler { z, .. } => exps.push(z.exponent),
            _ => {}
        });
        common_denom(exps)
    }

    /// Evaluate exactly below scaled order `order`; the result has order exactly `order`.
    pub fn eval(&self, denom: i64, order: i64) -> Result<QSeries> {
        let s = match self {
            Expr::Lattice(spec) => lattice_sum(spec, denom, order)?,
            Expr::Ct(c) => ct(c, denom, order)?,
            Expr::Poch(p) => poch(p, denom, order)?,
            Expr::ThetaSum { arg, base } => theta_sum(*arg, *base, denom, order)?,
            Expr::ThetaProd { arg, base } => theta_prod(*arg, *base, denom, order)?,
            Expr::Monomial(m) => QSeries::monomial(*m, denom, order)?,
            Expr::Euler { kind, z } => euler_sum(*kind, *z, denom, order)?,
            Expr::Sum(terms) => {
                let mut acc = QSeries::zero(denom, order);
                for t in terms {
                    acc = acc.add(&t.eval(denom, order)?);
                }
                acc
            }
            Expr::Scale(k, e) => e.eval(denom, order)?.scale(&BigInt::from(*k)),
            Expr::Product(parts) => eval_product(parts, denom, order)?,
            Expr::Inverse(e) => {
                let mut inner = e.eval(denom, order)?;
                if inner.is_zero() {
                    return Err(Error::ZeroDivisor);
                }
                let v = inner.valuation();
                if v > 0 {
                    inner = e.eval(denom, order + 2 * v)?;
                }
                inner.invert()?
            }
        };
        if s.order() < order {
            return Err(Error::Invalid(format!(
                "internal: expression evaluated only to {}",
                s.order()
            )));
        }
        Ok(s.truncate(order))
    }
}

/// Product of sub-expressions, re-evaluating any factor whose partners have negative valuation.
fn eval_product(parts: &[Expr], denom: i64, order: i64) -> Result<QSeries> {
    let mut values = parts
        .iter()
        .map(|p| p.eval(denom, order))
        .collect::<Result<Vec<_>>>()?;
    let vals: Vec<i64> = values.iter().map(|v| v.valuation()).collect();
    let total: i64 = vals.iter().sum();
    if total >= order {
        return Ok(QSeries::zero(denom, order));
    }
    for (i, p) in parts.iter().enumerate() {
        let need = order - (total - vals[i]);
        if need > values[i].order() {
            values[i] = p.eval(denom, need)?;
        }
    }
    let mut iter = values.into_iter();
    let Some(mut acc) = iter.next() else {
        return Ok(QSeries::one(denom, order));
    };
    for v in iter {
        acc = acc.mul(&v);
    }
    Ok(acc.truncate(order))
}

impl std::ops::Neg for Expr {
    type Output = Expr;

    fn neg(self) -> Expr {
        Expr::scale(-1, self)
    }
}
