//! Generalised q-hypergeometric lattice sums.
//!
//! A [`LatticeSumSpec`] describes
//!
//! ```text
//!   sign · Σ_{n ∈ Z_{≥0}^r} (-1)^{ε·n} q^{½ nᵀAn + Bᵀn + C} · Π numerators(n) / Π denominators(n)
//! ```
//!
//! where every numerator and denominator is a finite Pochhammer symbol whose
//! length is an affine function of `n`. Nahm sums, the double sums of the
//! rank two sums S1..S4 and the single sums of Rogers all fit this shape.
//!
//! Enumeration is complete: a rational lower bound `t` with `nᵀAn ≥ t|n|²` on the
//! orthant gives a box outside of which every exponent is at least the order.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::monomial::{int, rat, scaled, Rat, Sign, SignedMonomial};
use crate::products::{Placement, PochSpec};
use crate::series::QSeries;

/// `constant + Σ coeffs[k]·n_k`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct AffineLength {
    pub constant: i64,
    pub coeffs: Vec<i64>,
}

impl AffineLength {
    /// `c·n_k + constant` in a rank `rank` lattice.
    pub fn coord(rank: usize, k: usize, c: i64, constant: i64) -> Self {
        let mut coeffs = vec![0; rank];
        coeffs[k] = c;
        AffineLength { constant, coeffs }
    }

    pub fn eval(&self, n: &[i64]) -> i64 {
        self.constant + self.coeffs.iter().zip(n).map(|(c, x)| c * x).sum::<i64>()
    }

    /// Index of the last coordinate the length depends on.
    fn depth(&self) -> Option<usize> {
        self.coeffs.iter().rposition(|&c| c != 0)
    }
}

/// `(arg; base)_{length(n)}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FactorSpec {
    pub arg: SignedMonomial,
    pub base: SignedMonomial,
    pub length: AffineLength,
}

impl FactorSpec {
    pub fn new(arg: SignedMonomial, base: SignedMonomial, length: AffineLength) -> Self {
        FactorSpec { arg, base, length }
    }

    /// `(q^b; q^b)_{c·n_k + constant}`.
    pub fn q_factorial(b: Rat, rank: usize, k: usize, c: i64, constant: i64) -> Self {
        let qb = SignedMonomial::q(b);
        FactorSpec::new(qb, qb, AffineLength::coord(rank, k, c, constant))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LatticeSumSpec {
    /// Symmetric matrix `A`; a term contributes `½ nᵀAn`.
    pub quad: Vec<Vec<Rat>>,
    pub lin: Vec<Rat>,
    pub constant: Rat,
    pub sign: Sign,
    /// `ε`: coordinate `k` contributes `(-1)^{n_k}` when set.
    pub alternating: Vec<bool>,
    pub denominators: Vec<FactorSpec>,
    pub numerators: Vec<FactorSpec>,
}

impl LatticeSumSpec {
    pub fn new(quad: Vec<Vec<Rat>>, lin: Vec<Rat>) -> Self {
        let r = lin.len();
        LatticeSumSpec {
            quad,
            lin,
            constant: Rat::zero(),
            sign: Sign::Plus,
            alternating: vec![false; r],
            denominators: Vec::new(),
            numerators: Vec::new(),
        }
    }

    /// Nahm sum `Σ q^{½nᵀAn + Bᵀn + C} / Π (q;q)_{n_i}`.
    pub fn nahm(quad: Vec<Vec<Rat>>, lin: Vec<Rat>, constant: Rat) -> Self {
        let r = lin.len();
        let mut spec = Self::new(quad, lin).with_constant(constant);
        for k in 0..r {
            spec.denominators
                .push(FactorSpec::q_factorial(int(1), r, k, 1, 0));
        }
        spec
    }

    pub fn rank(&self) -> usize {
        self.lin.len()
    }

    pub fn with_constant(mut self, c: Rat) -> Self {
        self.constant = c;
        self
    }

    pub fn with_sign(mut self, s: Sign) -> Self {
        self.sign = s;
        self
    }

    pub fn with_alternating(mut self, k: usize) -> Self {
        self.alternating[k] = true;
        self
    }

    pub fn with_denominator(mut self, f: FactorSpec) -> Self {
        self.denominators.push(f);
        self
    }

    pub fn with_numerator(mut self, f: FactorSpec) -> Self {
        self.numerators.push(f);
        self
    }

    /// Every exponent that must be representable for this sum.
    pub fn exponents(&self) -> Vec<Rat> {
        // n(n-1)/2 is an integer, so the attainable exponents are generated by
        // A_kk, A_kk/2 + b_k and the off-diagonal entries.
        let mut out: Vec<Rat> = self.quad.iter().flatten().copied().collect();
        out.extend(
            self.lin
                .iter()
                .enumerate()
                .map(|(k, b)| self.quad[k][k] / int(2) + b),
        );
        out.push(self.constant);
        for f in self.denominators.iter().chain(&self.numerators) {
            out.push(f.arg.exponent);
            out.push(f.base.exponent);
        }
        out
    }

    fn validate(&self) -> Result<()> {
        let r = self.rank();
        if r == 0 {
            return Err(Error::Invalid("lattice sum needs rank at least 1".into()));
        }
        if self.quad.len() != r
            || self.quad.iter().any(|row| row.len() != r)
            || self.alternating.len() != r
        {
            return Err(Error::Invalid(format!("dimension mismatch for rank {r}")));
        }
        for i in 0..r {
            for j in 0..i {
                if self.quad[i][j] != self.quad[j][i] {
                    return Err(Error::Invalid("quadratic form must be symmetric".into()));
                }
            }
        }
        for f in self.denominators.iter().chain(&self.numerators) {
            if f.length.coeffs.len() != r || f.length.coeffs.iter().any(|&c| c < 0) {
                return Err(Error::Invalid(format!(
                    "bad length function {:?}",
                    f.length
                )));
            }
            if f.base.exponent <= Rat::zero() || f.arg.exponent < Rat::zero() {
                return Err(Error::Invalid(format!(
                    "factor ({}; {}) must have valuation zero",
                    f.arg, f.base
                )));
            }
        }
        Ok(())
    }
}

fn big(r: Rat) -> BigRational {
    BigRational::new(BigInt::from(*r.numer()), BigInt::from(*r.denom()))
}

/// Positive definiteness by symmetric Gaussian elimination: every pivot must be positive.
fn is_positive_definite(m: &[Vec<BigRational>]) -> bool {
    let n = m.len();
    let mut a = m.to_vec();
    for k in 0..n {
        if !a[k][k].is_positive() {
            return false;
        }
        let (top, rest) = a.split_at_mut(k + 1);
        let pivot = &top[k];
        for row in rest {
            let f = &row[k] / &pivot[k];
            for (x, p) in row[k..].iter_mut().zip(&pivot[k..]) {
                *x -= &f * p;
            }
        }
    }
    true
}

/// Largest dyadic `t` found by bisection with `m - tI` positive definite.
fn eigen_lower_bound(m: &[Vec<BigRational>]) -> Option<BigRational> {
    if !is_positive_definite(m) {
        return None;
    }
    let n = m.len();
    let shifted = |t: &BigRational| -> Vec<Vec<BigRational>> {
        let mut s = m.to_vec();
        for (k, row) in s.iter_mut().enumerate().take(n) {
            row[k] -= t;
        }
        s
    };
    let mut lo = BigRational::zero();
    let mut hi = (0..n).map(|k| m[k][k].clone()).min().unwrap();
    let two = BigRational::from_integer(BigInt::from(2));
    for step in 0..64 {
        let mid = (&lo + &hi) / &two;
        if is_positive_definite(&shifted(&mid)) {
            lo = mid;
        } else {
            hi = mid;
        }
        if step >= 20 && lo.is_positive() {
            break;
        }
    }
    lo.is_positive().then_some(lo)
}

/// A rational `t > 0` with `nᵀAn ≥ t·|n|²` for every `n` in the nonnegative orthant.
///
/// Both `A` itself and `A` with its positive off-diagonal entries dropped are
/// tried; on the orthant the latter is a lower bound for the former.
pub fn orthant_lower_bound(quad: &[Vec<Rat>]) -> Result<BigRational> {
    let a: Vec<Vec<BigRational>> = quad
        .iter()
        .map(|row| row.iter().map(|&x| big(x)).collect())
        .collect();
    let dropped: Vec<Vec<BigRational>> = a
        .iter()
        .enumerate()
        .map(|(i, row)| {
            row.iter()
                .enumerate()
                .map(|(j, x)| {
                    if i != j && x.is_positive() {
                        BigRational::zero()
                    } else {
                        x.clone()
                    }
                })
                .collect()
        })
        .collect();
    let best = [eigen_lower_bound(&a), eigen_lower_bound(&dropped)]
        .into_iter()
        .flatten()
        .max();
    best.ok_or_else(|| Error::NotPositiveDefinite(format!("{quad:?}")))
}

/// Exclusive per-coordinate bound `R`: any point with some `n_k ≥ R` has exponent `≥ bound`.
fn coordinate_bound(spec: &LatticeSumSpec, bound: Rat) -> Result<i64> {
    let t = orthant_lower_bound(&spec.quad)?;
    let half_t = &t / BigRational::from_integer(BigInt::from(2));
    let neg = spec
        .lin
        .iter()
        .map(|b| -*b)
        .fold(Rat::zero(), |m, b| m.max(b));
    let neg = big(neg);
    let others = BigRational::from_integer(BigInt::from(spec.rank() as i64 - 1));
    let slack = big(spec.constant) - others * &neg * &neg / (&t + &t);
    let target = big(bound);
    // past the vertex the one-coordinate bound is increasing
    let mut m = (&neg / &t).ceil().to_integer().to_i64().unwrap_or(0).max(0);
    loop {
        let mm = BigRational::from_integer(BigInt::from(m));
        let value = &half_t * &mm * &mm - &neg * &mm + &slack;
        if value >= target {
            return Ok(m);
        }
        m += 1;
        if m > 1_000_000 {
            return Err(Error::NotPositiveDefinite(
                "enumeration bound diverged".into(),
            ));
        }
    }
}

/// Integer form of the exponent: `num(n) / scale`.
struct ExponentForm {
    scale: i64,
    quad: Vec<Vec<i64>>,
    lin: Vec<i64>,
    constant: i64,
}

impl ExponentForm {
    fn new(spec: &LatticeSumSpec) -> Self {
        let r = spec.rank();
        let coef = |i: usize, j: usize| {
            if i == j {
                spec.quad[i][i] / int(2)
            } else {
                spec.quad[i][j]
            }
        };
        let mut scale = spec.constant.denom().lcm(&1);
        for i in 0..r {
            scale = scale.lcm(spec.lin[i].denom());
            for j in i..r {
                scale = scale.lcm(coef(i, j).denom());
            }
        }
        let s = int(scale);
        let quad = (0..r)
            .map(|i| {
                (0..r)
                    .map(|j| {
                        if j < i {
                            0
                        } else {
                            (coef(i, j) * s).to_integer()
                        }
                    })
                    .collect()
            })
            .collect();
        let lin = spec.lin.iter().map(|b| (*b * s).to_integer()).collect();
        ExponentForm {
            scale,
            quad,
            lin,
            constant: (spec.constant * s).to_integer(),
        }
    }

    fn numerator(&self, n: &[i64]) -> i64 {
        let mut acc = self.constant;
        for (i, &ni) in n.iter().enumerate() {
            acc += self.lin[i] * ni;
            for (j, &nj) in n.iter().enumerate().skip(i) {
                acc += self.quad[i][j] * ni * nj;
            }
        }
        acc
    }
}

struct Point {
    n: Vec<i64>,
    key: i64,
    sign: Sign,
}

/// Lattice points whose scaled exponent is below `order`, in lexicographic order.
fn enumerate(spec: &LatticeSumSpec, denom: i64, order: i64, box_scale: i64) -> Result<Vec<Point>> {
    let r = spec.rank();
    let radius = coordinate_bound(spec, rat(order, denom))? * box_scale.max(1);
    let form = ExponentForm::new(spec);
    let mut out = Vec::new();
    let mut n = vec![0i64; r];
    loop {
        let num = form.numerator(&n) * denom;
        if num.rem_euclid(form.scale) != 0 {
            let e = rat(form.numerator(&n), form.scale);
            return Err(Error::IncompatibleDenominator { exponent: e, denom });
        }
        let key = num / form.scale;
        if key < order {
            let odd = n
                .iter()
                .zip(&spec.alternating)
                .filter(|(x, a)| **a && *x % 2 == 1)
                .count()
                % 2
                == 1;
            out.push(Point {
                n: n.clone(),
                key,
                sign: spec.sign * Sign::from_parity(odd),
            });
        }
        // odometer, last coordinate fastest
        let mut k = r;
        loop {
            if k == 0 {
                return Ok(out);
            }
            k -= 1;
            n[k] += 1;
            if n[k] < radius {
                break;
            }
            n[k] = 0;
        }
    }
}

/// Series for `(arg; base)_l^{±1}` for `l = 0..=max_len`.
fn factor_table(
    f: &FactorSpec,
    placement: Placement,
    max_len: i64,
    denom: i64,
    order: i64,
) -> Result<Vec<QSeries>> {
    let mut table = Vec::with_capacity(max_len as usize + 1);
    let mut cur = QSeries::one(denom, order);
    table.push(cur.clone());
    for l in 0..max_len {
        let m = f.arg * f.base.pow(l);
        let key = scaled(m.exponent, denom)?;
        cur = match placement {
            Placement::Numerator => cur.mul_binomial(m.sign, key),
            Placement::Denominator => cur.div_binomial(m.sign, key)?,
        };
        table.push(cur.clone());
    }
    Ok(table)
}

struct Factors {
    /// `(table, length, placement)` grouped by depth; index `rank` holds constant factors.
    by_depth: Vec<Vec<(Vec<QSeries>, AffineLength)>>,
    cache: Vec<HashMap<Vec<i64>, QSeries>>,
    denom: i64,
    order: i64,
}

impl Factors {
    /// Product of the depth-`d` factors at point prefix `n`; `None` when there are none.
    fn at(&mut self, d: usize, n: &[i64]) -> Option<QSeries> {
        let group = &self.by_depth[d];
        if group.is_empty() {
            return None;
        }
        let lens: Vec<i64> = group.iter().map(|(_, l)| l.eval(n)).collect();
        if let Some(s) = self.cache[d].get(&lens) {
            return Some(s.clone());
        }
        let mut acc = QSeries::one(self.denom, self.order);
        for ((table, _), &l) in group.iter().zip(&lens) {
            acc = acc.mul(&table[l as usize]);
        }
        self.cache[d].insert(lens, acc.clone());
        Some(acc)
    }
}

/// Evaluate a lattice sum to scaled order `order`.
pub fn lattice_sum(spec: &LatticeSumSpec, denom: i64, order: i64) -> Result<QSeries> {
    lattice_sum_with_box(spec, denom, order, 1)
}

/// As [`lattice_sum`] with the enumeration box enlarged `box_scale` times.
pub fn lattice_sum_with_box(
    spec: &LatticeSumSpec,
    denom: i64,
    order: i64,
    box_scale: i64,
) -> Result<QSeries> {
    spec.validate()?;
    let r = spec.rank();
    let points = enumerate(spec, denom, order, box_scale)?;
    let Some(lo) = points.iter().map(|p| p.key).min() else {
        return Ok(QSeries::zero(denom, order));
    };
    let work = order - lo.min(0);

    let mut by_depth = vec![Vec::new(); r + 1];
    for (list, placement) in [
        (&spec.numerators, Placement::Numerator),
        (&spec.denominators, Placement::Denominator),
    ] {
        for f in list {
            let mut max_len = 0;
            for p in &points {
                let l = f.length.eval(&p.n);
                if l < 0 {
                    return Err(Error::NegativeLength {
                        length: l,
                        point: p.n.clone(),
                    });
                }
                max_len = max_len.max(l);
            }
            let table = factor_table(f, placement, max_len, denom, work)?;
            by_depth[f.length.depth().unwrap_or(r)].push((table, f.length.clone()));
        }
    }
    let mut factors = Factors {
        by_depth,
        cache: vec![HashMap::new(); r + 1],
        denom,
        order: work,
    };

    let mut total = accumulate(&points, 0, r, &mut factors, denom, order)?;
    if let Some(c) = factors.at(r, &vec![0; r]) {
        total = total.mul(&c).truncate(order);
    }
    Ok(total)
}

/// Sum of the points sharing the first `level` coordinates, with every factor of
/// depth `>= level` applied.
fn accumulate(
    points: &[Point],
    level: usize,
    rank: usize,
    factors: &mut Factors,
    denom: i64,
    order: i64,
) -> Result<QSeries> {
    let mut acc = QSeries::zero(denom, order);
    let mut i = 0;
    while i < points.len() {
        let v = points[i].n[level];
        let mut j = i + 1;
        while j < points.len() && points[j].n[level] == v {
            j += 1;
        }
        let group = &points[i..j];
        let weight = factors.at(level, &group[0].n);
        let child = if level + 1 == rank {
            let p = &group[0];
            let m = SignedMonomial::new(p.sign, rat(p.key, denom));
            match weight {
                Some(w) => w.shift(m)?.truncate(order),
                None => QSeries::monomial(m, denom, order)?,
            }
        } else {
            let inner = accumulate(group, level + 1, rank, factors, denom, order)?;
            match weight {
                Some(w) => inner.mul(&w).truncate(order),
                None => inner,
            }
        };
        acc = acc.add(&child);
        i = j;
    }
    Ok(acc)
}

/// Nahm sum `f_{A,B,C}` over `(q;q)` denominators.
pub fn nahm_sum(
    quad: Vec<Vec<Rat>>,
    lin: Vec<Rat>,
    constant: Rat,
    denom: i64,
    order: i64,
) -> Result<QSeries> {
    lattice_sum(&LatticeSumSpec::nahm(quad, lin, constant), denom, order)
}

/// A sequence `(a_k)` for the diagonal transformation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SequenceSpec {
    /// `a_k = q^{αk² + βk}`.
    Quadratic { alpha: Rat, beta: Rat },
    /// Finitely supported: `a_k` given explicitly, zero elsewhere.
    Finite(Vec<(i64, SignedMonomial)>),
}

/// Both sides of the diagonal transformation for a sequence `a` and argument `x`:
///
/// ```text
///   Σ a_{i-j} q^{j(j-1)/2} x^j / ((q;q)_i (q;q)_j)
///     = (-x;q)_∞ Σ a_{i-j} q^{j(j-1)/2 + ij} x^j / ((q;q)_i (q;q)_j (-x;q)_j)
/// ```
///
/// Each side is a list of lattice sums to be added together; the quadratic
/// family produces one rank two sum per side, the finite family one rank one
/// sum per supported diagonal.
#[derive(Debug, Clone)]
pub struct TransformPair {
    pub lhs: Vec<LatticeSumSpec>,
    pub rhs: Vec<LatticeSumSpec>,
    pub rhs_prefactor: PochSpec,
}

pub fn transform_pair(seq: &SequenceSpec, x: SignedMonomial) -> Result<TransformPair> {
    if x.exponent <= Rat::zero() {
        return Err(Error::Invalid(format!(
            "argument {x} must have positive exponent"
        )));
    }
    let q1 = SignedMonomial::qi(1);
    let xi = x.exponent;
    let half = rat(1, 2);
    let prefactor = PochSpec::infinite(vec![-x], q1);
    match seq {
        SequenceSpec::Quadratic { alpha, beta } => {
            if *alpha <= Rat::zero() {
                return Err(Error::NonPositiveQuadratic(*alpha));
            }
            let a2 = *alpha * int(2);
            let lin = vec![*beta, -*beta - half + xi];
            let base = |off: Rat| {
                let mut s =
                    LatticeSumSpec::new(vec![vec![a2, off], vec![off, a2 + int(1)]], lin.clone())
                        .with_denominator(FactorSpec::q_factorial(int(1), 2, 0, 1, 0))
                        .with_denominator(FactorSpec::q_factorial(int(1), 2, 1, 1, 0));
                if x.sign.is_minus() {
                    s = s.with_alternating(1);
                }
                s
            };
            let lhs = base(-a2);
            let rhs = base(int(1) - a2).with_denominator(FactorSpec::new(
                -x,
                q1,
                AffineLength::coord(2, 1, 1, 0),
            ));
            Ok(TransformPair {
                lhs: vec![lhs],
                rhs: vec![rhs],
                rhs_prefactor: prefactor,
            })
        }
        SequenceSpec::Finite(terms) => {
            let mut lhs = Vec::new();
            let mut rhs = Vec::new();
            for &(k, a) in terms {
                let (i0, j0) = (k.max(0), (-k).max(0));
                let constant = a.exponent + int(j0 * (j0 - 1)) / int(2) + xi * int(j0);
                let b = int(j0) - half + xi;
                let sign = a.sign * x.sign.pow(j0);
                let side = |quad: i64, lin: Rat, c: Rat| {
                    let mut s = LatticeSumSpec::new(vec![vec![int(quad)]], vec![lin])
                        .with_constant(c)
                        .with_sign(sign)
                        .with_denominator(FactorSpec::q_factorial(int(1), 1, 0, 1, i0))
                        .with_denominator(FactorSpec::q_factorial(int(1), 1, 0, 1, j0));
                    if x.sign.is_minus() {
                        s = s.with_alternating(0);
                    }
                    s
                };
                lhs.push(side(1, b, constant));
                rhs.push(
                    side(3, b + int(i0 + j0), constant + int(i0 * j0)).with_denominator(
                        FactorSpec::new(-x, q1, AffineLength::coord(1, 0, 1, j0)),
                    ),
                );
            }
            Ok(TransformPair {
                lhs,
                rhs,
                rhs_prefactor: prefactor,
            })
        }
    }
}
