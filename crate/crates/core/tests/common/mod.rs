//! Helpers shared by the integration tests and the acceptance harness.
#![allow(dead_code)]

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use qnahm::ct::{ct, CtEvaluator, CtExpr};
use qnahm::lattice::{lattice_sum, lattice_sum_with_box};
use qnahm::monomial::{int, rat, scaled, Rat, Sign, SignedMonomial};
use qnahm::products::Placement;
use qnahm::registry::{ct_exprs, lattice_specs};
use qnahm::QSeries;

/// Constant term of a [`CtExpr`] by brute force: every Euler factor is expanded
/// as a finite product of binomials `(1 - w z^d)^{±1}` on a dense `(z, q)` grid,
/// with no use of the Euler series.
pub fn brute_ct(expr: &CtExpr, denom: i64, order: i64) -> QSeries {
    let key = |e: Rat| scaled(e, denom).expect("exponent fits the denominator");
    // per unit of z-degree, the most any factor can lower the q-exponent
    let slope: Rat = expr
        .factors
        .iter()
        .filter(|f| f.u.exponent < Rat::zero())
        .map(|f| -f.u.exponent / int(f.degree as i64))
        .sum();
    let b = expr.theta_base;
    let e = expr.theta_arg.exponent;
    let target = rat(order, denom);
    let mut n_max = 0i64;
    for n in 0..10_000 {
        if b * int(n * (n - 1)) / int(2) + e * int(n) - slope * int(n) < target {
            n_max = n;
        }
    }
    let zmax = n_max as usize;
    let up = |x: Rat| (x * int(denom)).ceil().to_integer().max(0);
    let margin = up(slope * int(n_max)) + up(-e * int(n_max));
    let qmin = -margin;
    let qmax = order + margin;
    let width = (qmax - qmin) as usize;
    let mut grid = vec![vec![BigInt::zero(); width]; zmax + 1];
    grid[0][(-qmin) as usize] = BigInt::from(1);

    for f in &expr.factors {
        let d = f.degree as usize;
        let mut k = 0i64;
        loop {
            let w = f.u * f.base.pow(k);
            let we = key(w.exponent);
            if we >= qmax && k > 0 {
                break;
            }
            let s = BigInt::from(w.sign.as_i64());
            match f.placement {
                // multiply by 1/(1 - w z^d): ascending recurrence
                Placement::Denominator => {
                    for z in d..=zmax {
                        for j in 0..width {
                            let src = j as i64 - we;
                            if src < 0 || src >= width as i64 {
                                continue;
                            }
                            let add = &grid[z - d][src as usize] * &s;
                            if !add.is_zero() {
                                grid[z][j] += add;
                            }
                        }
                    }
                }
                // multiply by (1 - w z^d): descending update
                Placement::Numerator => {
                    for z in (d..=zmax).rev() {
                        for j in 0..width {
                            let src = j as i64 - we;
                            if src < 0 || src >= width as i64 {
                                continue;
                            }
                            let sub = &grid[z - d][src as usize] * &s;
                            if !sub.is_zero() {
                                grid[z][j] -= sub;
                            }
                        }
                    }
                }
            }
            k += 1;
            if key(f.base.exponent) <= 0 {
                panic!("base must have positive exponent");
            }
        }
    }

    let mut terms: Vec<(i64, BigInt)> = Vec::new();
    for n in 0..=n_max {
        let t = expr.theta_term(n);
        let tk = key(t.exponent);
        let ts = BigInt::from(t.sign.as_i64());
        for (j, c) in grid[n as usize].iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let k = tk + j as i64 + qmin;
            if k < order {
                terms.push((k, c * &ts));
            }
        }
    }
    QSeries::from_terms(denom, terms, order)
}

/// For every lattice sum in the registry, the ids whose doubled enumeration box changes a coefficient.
pub fn box_doubling_failures(order_cap: Option<i64>) -> Vec<String> {
    let mut bad = Vec::new();
    for (id, spec, denom, order) in lattice_specs() {
        let t = order_cap.map_or(order, |c| order.min(c * denom));
        let a = lattice_sum(&spec, denom, t);
        let b = lattice_sum_with_box(&spec, denom, t, 2);
        match (a, b) {
            (Ok(a), Ok(b))
                if a.eq_to_order(&b, rat(t, denom))
                    .map(|c| c.is_pass())
                    .unwrap_or(false) => {}
            _ => bad.push(id),
        }
    }
    bad
}

/// For every CT expression in the registry, the ids whose doubled theta cutoff changes a coefficient.
pub fn ct_cutoff_failures(order: i64) -> Vec<String> {
    let mut bad = Vec::new();
    for (id, expr, denom) in ct_exprs() {
        let t = order * denom;
        let a = ct(&expr, denom, t);
        let b = CtEvaluator::with_cutoff_scale(&expr, denom, t, 2).and_then(|e| e.evaluate());
        match (a, b) {
            (Ok(a), Ok(b))
                if a.eq_to_order(&b, int(order))
                    .map(|c| c.is_pass())
                    .unwrap_or(false) => {}
            _ => bad.push(id),
        }
    }
    bad
}

/// For every CT expression in the registry, the ids where the brute-force oracle disagrees with `ct`.
pub fn ct_oracle_failures(order: i64) -> Vec<String> {
    let mut bad = Vec::new();
    for (id, expr, denom) in ct_exprs() {
        let t = order * denom;
        let fast = ct(&expr, denom, t);
        let slow = brute_ct(&expr, denom, t);
        match fast {
            Ok(f)
                if f.eq_to_order(&slow, int(order))
                    .map(|c| c.is_pass())
                    .unwrap_or(false) => {}
            _ => bad.push(id),
        }
    }
    bad
}

/// Random theta arguments: both signs, exponents in `(1/2)Z ∩ (-2b, 3b)`, with `b` in halves.
pub fn random_theta_cases(seed: u64, count: usize) -> Vec<(SignedMonomial, Rat)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let b = rat(rng.gen_range(1..=8), 2);
            let lo = (b * int(-4)).to_integer() + 1;
            let hi = (b * int(6)).to_integer() - 1;
            let e = rat(rng.gen_range(lo..=hi), 2);
            let sign = if rng.gen_bool(0.5) {
                Sign::Minus
            } else {
                Sign::Plus
            };
            (SignedMonomial::new(sign, e), b)
        })
        .collect()
}

/// A random series with denominator `denom`, small valuation and small coefficients.
pub fn random_series(rng: &mut impl Rng, denom: i64, order: i64) -> QSeries {
    let start = rng.gen_range(-3..=3);
    let len = rng.gen_range(0..12usize);
    let coeffs = (0..len)
        .map(|_| BigInt::from(rng.gen_range(-5i64..=5)))
        .collect();
    QSeries::from_coeffs(denom, start, coeffs, order)
}

/// A random series whose leading coefficient is a unit, so it can be inverted.
pub fn random_unit_series(rng: &mut impl Rng, denom: i64, order: i64) -> QSeries {
    let start = rng.gen_range(-3..=3);
    let len = rng.gen_range(1..12usize);
    let mut coeffs: Vec<BigInt> = (0..len)
        .map(|_| BigInt::from(rng.gen_range(-5i64..=5)))
        .collect();
    coeffs[0] = BigInt::from(if rng.gen_bool(0.5) { 1 } else { -1 });
    QSeries::from_coeffs(denom, start, coeffs, order)
}

/// Ring axioms and inversion round-trips on `cases` random triples; returns the number of failures.
pub fn ring_axiom_failures(seed: u64, cases: usize) -> usize {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut failures = 0;
    for _ in 0..cases {
        let d = [1, 2, 3][rng.gen_range(0..3)];
        let t = rng.gen_range(5..40);
        let a = random_series(&mut rng, d, t);
        let b = random_series(&mut rng, d, t);
        let c = random_series(&mut rng, d, t);
        let u = random_unit_series(&mut rng, d, t);
        let ok = [
            same(&(&a + &b), &(&b + &a)),
            same(&(&(&a + &b) + &c), &(&a + &(&b + &c))),
            same(&(&a * &b), &(&b * &a)),
            same(&(&(&a * &b) * &c), &(&a * &(&b * &c))),
            same(&(&a * &(&b + &c)), &(&(&a * &b) + &(&a * &c))),
            (&a - &a.clone()).is_zero(),
            {
                let inv = u.invert().expect("unit series");
                let one = &u * &inv;
                let t1 = one.order();
                one == QSeries::one(d, t1)
            },
        ];
        failures += ok.iter().filter(|x| !**x).count();
    }
    failures
}

/// Agreement below the smaller of the two orders.
pub fn same(x: &QSeries, y: &QSeries) -> bool {
    let t = x.order_rat().min(y.order_rat());
    x.eq_to_order(y, t).map(|c| c.is_pass()).unwrap_or(false)
}

/// Largest absolute coefficient, for sanity checks on oracle outputs.
pub fn max_abs(s: &QSeries) -> BigInt {
    s.terms().map(|(_, c)| c.abs()).max().unwrap_or_default()
}
