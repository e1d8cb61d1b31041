//! Constant terms in `z` of `θ(c/z; q^b) · Π (u z^d; Q)_∞^{±1}`.
//!
//! The theta function contributes `(-1)^n (q^b)^{n(n-1)/2} c^n z^{-n}`, and
//! every Euler factor only carries nonnegative powers of `z`, so
//!
//! ```text
//!   CT = Σ_{n ≥ 0} (-1)^n (q^b)^{n(n-1)/2} c^n · [z^n] Π factors.
//! ```
//!
//! Each factor is expanded with Euler's two q-exponential series:
//! `1/(u z^d; Q)_∞ = Σ u^m z^{dm} / (Q;Q)_m` and
//! `(u z^d; Q)_∞ = Σ (-u)^m Q^{m(m-1)/2} z^{dm} / (Q;Q)_m`.

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::lattice::{lattice_sum, LatticeSumSpec};
use crate::monomial::{int, rat, scaled, Rat, Sign, SignedMonomial};
use crate::products::Placement;
use crate::series::{Comparison, QSeries};

/// `(u z^d; Q)_∞` in the numerator or denominator.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EulerFactor {
    pub u: SignedMonomial,
    pub degree: u32,
    pub base: SignedMonomial,
    pub placement: Placement,
}

impl EulerFactor {
    pub fn numerator(u: SignedMonomial, degree: u32, base: SignedMonomial) -> Self {
        EulerFactor {
            u,
            degree,
            base,
            placement: Placement::Numerator,
        }
    }

    pub fn denominator(u: SignedMonomial, degree: u32, base: SignedMonomial) -> Self {
        EulerFactor {
            u,
            degree,
            base,
            placement: Placement::Denominator,
        }
    }

    /// Monomial part of the `z^{dm}` coefficient.
    fn monomial(&self, m: i64) -> SignedMonomial {
        match self.placement {
            Placement::Denominator => self.u.pow(m),
            Placement::Numerator => (-self.u).pow(m) * self.base.pow(m * (m - 1) / 2),
        }
    }
}

/// `θ(theta_arg / z; q^theta_base) · Π factors`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CtExpr {
    pub theta_arg: SignedMonomial,
    pub theta_base: Rat,
    pub factors: Vec<EulerFactor>,
}

impl CtExpr {
    pub fn new(theta_arg: SignedMonomial, theta_base: Rat, factors: Vec<EulerFactor>) -> Self {
        CtExpr {
            theta_arg,
            theta_base,
            factors,
        }
    }

    /// Exponents that must be representable.
    pub fn exponents(&self) -> Vec<Rat> {
        let mut out = vec![self.theta_arg.exponent, self.theta_base];
        for f in &self.factors {
            out.push(f.u.exponent);
            out.push(f.base.exponent);
        }
        out
    }

    fn validate(&self) -> Result<()> {
        if self.theta_base <= Rat::zero() {
            return Err(Error::UnboundedCt(format!(
                "theta base exponent {} is not positive",
                self.theta_base
            )));
        }
        for f in &self.factors {
            if f.degree == 0 {
                return Err(Error::UnboundedCt("Euler factor without z".into()));
            }
            if f.base.exponent <= Rat::zero() {
                return Err(Error::UnboundedCt(format!(
                    "Euler factor base {} is not positive",
                    f.base
                )));
            }
        }
        Ok(())
    }

    /// Monomial `(-1)^n (q^b)^{n(n-1)/2} c^n`.
    pub fn theta_term(&self, n: i64) -> SignedMonomial {
        let s = Sign::from_parity(n % 2 == 1) * self.theta_arg.sign.pow(n);
        let e = self.theta_base * int(n * (n - 1)) / int(2) + self.theta_arg.exponent * int(n);
        SignedMonomial::new(s, e)
    }
}

/// Least exponent of `mono(m)` over `0 ≤ m ≤ max_m`.
fn min_valuation(f: &EulerFactor, max_m: i64) -> Rat {
    (0..=max_m)
        .map(|m| f.monomial(m).exponent)
        .min()
        .unwrap_or(Rat::zero())
}

/// Least exponent of `mono(m)` over all `m ≥ 0`, for a numerator factor.
fn numerator_floor(f: &EulerFactor) -> Rat {
    let mut best = Rat::zero();
    let mut m = 1;
    loop {
        let e = f.monomial(m).exponent;
        best = best.min(e);
        if f.monomial(m + 1).exponent >= e && e >= Rat::zero() {
            return best;
        }
        m += 1;
    }
}

/// Memoised evaluation of one constant-term expression at a fixed order.
pub struct CtEvaluator<'a> {
    expr: &'a CtExpr,
    denom: i64,
    order: i64,
    /// First theta index known not to contribute below the order.
    stop: i64,
    precision: i64,
    tables: Vec<Vec<QSeries>>,
}

impl<'a> CtEvaluator<'a> {
    pub fn new(expr: &'a CtExpr, denom: i64, order: i64) -> Result<Self> {
        Self::with_cutoff_scale(expr, denom, order, 1)
    }

    /// As [`CtEvaluator::new`], but sum `cutoff_scale` times further in the theta index.
    pub fn with_cutoff_scale(
        expr: &'a CtExpr,
        denom: i64,
        order: i64,
        cutoff_scale: i64,
    ) -> Result<Self> {
        expr.validate()?;
        let stop = stopping_index(expr, rat(order, denom))? * cutoff_scale.max(1);
        let mu_floor: Rat = expr
            .factors
            .iter()
            .map(|f| min_valuation(f, stop / f.degree as i64))
            .sum();
        let theta_floor = (0..stop)
            .map(|n| expr.theta_term(n).exponent)
            .min()
            .unwrap_or(Rat::zero());
        let deficit = (mu_floor + theta_floor).min(Rat::zero());
        let precision = order - scaled(deficit, denom)?;
        let mut ev = CtEvaluator {
            expr,
            denom,
            order,
            stop,
            precision,
            tables: Vec::new(),
        };
        ev.tables = expr
            .factors
            .iter()
            .map(|f| ev.factor_table(f, stop / f.degree as i64))
            .collect::<Result<_>>()?;
        Ok(ev)
    }

    pub fn stop(&self) -> i64 {
        self.stop
    }

    /// `mono(m) / (Q;Q)_m` for `m = 0..=max_m`.
    fn factor_table(&self, f: &EulerFactor, max_m: i64) -> Result<Vec<QSeries>> {
        let mut inv = QSeries::one(self.denom, self.precision);
        let mut out = Vec::with_capacity(max_m as usize + 1);
        for m in 0..=max_m {
            if m > 0 {
                let qm = f.base.pow(m);
                inv = inv.div_binomial(qm.sign, scaled(qm.exponent, self.denom)?)?;
            }
            out.push(inv.shift(f.monomial(m))?);
        }
        Ok(out)
    }

    /// Coefficient of `z^n` in the product of the Euler factors, exact below `order` (scaled).
    pub fn zcoeff(&self, n: i64, order: i64) -> Result<QSeries> {
        let mut acc = QSeries::zero(self.denom, order);
        let mut parts = Vec::with_capacity(self.tables.len());
        self.compositions(0, n, &mut parts, order, &mut acc)?;
        Ok(acc)
    }

    fn compositions(
        &self,
        k: usize,
        left: i64,
        parts: &mut Vec<usize>,
        order: i64,
        acc: &mut QSeries,
    ) -> Result<()> {
        if k == self.tables.len() {
            if left != 0 {
                return Ok(());
            }
            // Seeding with `one(order)` would cap the order when a factor has negative valuation.
            let mut entries = self.tables.iter().zip(parts.iter()).map(|(t, &m)| &t[m]);
            let mut prod = match entries.next() {
                Some(first) => first.clone(),
                None => QSeries::one(self.denom, order),
            };
            for entry in entries {
                prod = mul_to(&prod, entry, order);
            }
            *acc = acc.add(&prod.truncate(order));
            return Ok(());
        }
        let d = self.expr.factors[k].degree as i64;
        let max_m = (left / d).min(self.tables[k].len() as i64 - 1);
        for m in 0..=max_m {
            parts.push(m as usize);
            self.compositions(k + 1, left - d * m, parts, order, acc)?;
            parts.pop();
        }
        Ok(())
    }

    pub fn evaluate(&self) -> Result<QSeries> {
        let mut acc = QSeries::zero(self.denom, self.order);
        for n in 0..self.stop {
            let t = self.expr.theta_term(n);
            let key = scaled(t.exponent, self.denom)?;
            // The z^n coefficient may start below q^0, so compare against its valuation floor.
            let floor: Rat = self
                .expr
                .factors
                .iter()
                .map(|f| min_valuation(f, n / f.degree as i64))
                .sum();
            if key + scaled(floor.min(Rat::zero()), self.denom)? >= self.order {
                continue;
            }
            let rest = self.zcoeff(n, self.order - key)?;
            if rest.is_zero() {
                continue;
            }
            acc = acc.add(&rest.shift(t)?.truncate(self.order));
        }
        Ok(acc)
    }
}

/// Product truncated to `order`, trimming the inputs to what is needed first.
fn mul_to(a: &QSeries, b: &QSeries, order: i64) -> QSeries {
    if a.is_zero() || b.is_zero() || a.valuation() + b.valuation() >= order {
        return QSeries::zero(a.denom(), order);
    }
    let a2 = a.truncate(order - b.valuation());
    let b2 = b.truncate(order - a.valuation());
    a2.mul(&b2)
}

/// Least `n₀` such that every theta index `n ≥ n₀` contributes nothing below `bound`.
///
/// For each `n` the `z^n` coefficient has valuation at least
/// `Σ_k min_{m ≤ n/d_k} val_k(m)`, which is bounded below by a linear function of `n`
/// (denominator factors with a negative `u`) plus a constant (numerator factors).
/// Together with the theta exponent this gives a convex quadratic lower bound.
fn stopping_index(expr: &CtExpr, bound: Rat) -> Result<i64> {
    let mut slope = expr.theta_arg.exponent;
    let mut floor = Rat::zero();
    for f in &expr.factors {
        match f.placement {
            Placement::Denominator => {
                if f.u.exponent < Rat::zero() {
                    slope += f.u.exponent / int(f.degree as i64);
                }
            }
            Placement::Numerator => floor += numerator_floor(f),
        }
    }
    let b = expr.theta_base;
    let lower = |n: i64| b * int(n * (n - 1)) / int(2) + slope * int(n) + floor;
    // vertex of b n²/2 + (slope - b/2) n
    let mut n = ((b / int(2) - slope) / b).ceil().to_integer().max(0);
    while lower(n) < bound {
        n += 1;
        if n > 10_000_000 {
            return Err(Error::UnboundedCt("stopping index diverged".into()));
        }
    }
    Ok(n)
}

/// Coefficient of `z^n` in the Euler part of `expr`, to scaled order `order`.
pub fn zcoeff_rest(expr: &CtExpr, n: i64, denom: i64, order: i64) -> Result<QSeries> {
    if n < 0 {
        return Err(Error::Invalid(format!(
            "z-degree must be nonnegative, got {n}"
        )));
    }
    expr.validate()?;
    let max_val: Rat = expr
        .factors
        .iter()
        .map(|f| min_valuation(f, n / f.degree as i64))
        .sum::<Rat>()
        .min(Rat::zero());
    let precision = order - scaled(max_val, denom)?;
    let ev = CtEvaluator {
        expr,
        denom,
        order,
        stop: 0,
        precision,
        tables: Vec::new(),
    };
    let tables = expr
        .factors
        .iter()
        .map(|f| ev.factor_table(f, n / f.degree as i64))
        .collect::<Result<_>>()?;
    let ev = CtEvaluator { tables, ..ev };
    ev.zcoeff(n, order)
}

/// Constant term of `expr` to scaled order `order`.
pub fn ct(expr: &CtExpr, denom: i64, order: i64) -> Result<QSeries> {
    CtEvaluator::new(expr, denom, order)?.evaluate()
}

/// Compare a constant-term expression with a lattice sum below `order`.
pub fn ct_equiv_lattice(
    expr: &CtExpr,
    spec: &LatticeSumSpec,
    denom: i64,
    order: i64,
) -> Result<Comparison> {
    let a = ct(expr, denom, order)?;
    let b = lattice_sum(spec, denom, order)?;
    a.eq_to_order(&b, rat(order, denom))
}
