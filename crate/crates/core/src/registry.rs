//! The identity catalogue and the verification driver.
//!
//! Every record pairs two [`Expr`] builders with a default order. Records are
//! grouped into four sections. `S1`, `S2` are the double sums built by [`g_sum`] and
//! `S3`, `S4` those built by [`h_sum`].
//!
//!
//! - `main`: the sum-product identities for S1..S4, the diagonal
//!   transformation and its specialisations, and the relations between them.
//! - `tools`: Euler, Jacobi triple product, quasi-periodicity, q-Chu-Vandermonde
//!   and the constant-term conversions between double sums.
//! - `reduction`: Rogers' four mod-20 identities and the reduction of the
//!   double sum `G(x, q²/x)` to single sums.
//! - `byproducts`: alternative double sums, the `H(x, y)` representation and
//!   the equality of two double sums that differ only in their linear terms.

use std::time::Instant;

use num_integer::Integer;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::ct::{CtExpr, EulerFactor};
use crate::error::{Error, Result};
use crate::expr::Expr;
use crate::lattice::{transform_pair, FactorSpec, LatticeSumSpec, SequenceSpec};
use crate::monomial::{common_denom, fmt_rat, int, rat, Rat, Sign, SignedMonomial};
use crate::products::{EulerKind, PochSpec};
use crate::series::{Comparison, QSeries};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Section {
    Main,
    Tools,
    Reduction,
    Byproducts,
}

impl Section {
    pub fn name(self) -> &'static str {
        match self {
            Section::Main => "main",
            Section::Tools => "tools",
            Section::Reduction => "reduction",
            Section::Byproducts => "byproducts",
        }
    }

    pub fn parse(s: &str) -> Option<Section> {
        [
            Section::Main,
            Section::Tools,
            Section::Reduction,
            Section::Byproducts,
        ]
        .into_iter()
        .find(|x| x.name() == s)
    }
}

#[derive(Debug, Clone)]
pub struct IdentityRecord {
    pub id: String,
    pub lhs: Expr,
    pub rhs: Expr,
    /// In units of `q`.
    pub default_order: Rat,
    pub denom: i64,
    pub section: Section,
    /// Human-readable name of the identity family.
    pub source: &'static str,
}

impl IdentityRecord {
    fn new(
        id: impl Into<String>,
        section: Section,
        source: &'static str,
        order: i64,
        lhs: Expr,
        rhs: Expr,
    ) -> Self {
        let denom = common_denom([rat(1, lhs.natural_denom()), rat(1, rhs.natural_denom())]);
        IdentityRecord {
            id: id.into(),
            lhs,
            rhs,
            default_order: int(order),
            denom,
            section,
            source,
        }
    }

    /// Scaled order for a requested order in units of `q`.
    pub fn scaled_order(&self, order: Rat) -> i64 {
        (order * int(self.denom)).ceil().to_integer()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Outcome {
    Pass,
    Mismatch {
        exponent: String,
        lhs: String,
        rhs: String,
    },
    Error {
        message: String,
    },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerifyReport {
    pub id: String,
    pub order: Rat,
    pub outcome: Outcome,
    pub elapsed_ms: u128,
    pub lhs_terms: usize,
    pub rhs_terms: usize,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.outcome == Outcome::Pass
    }

    fn columns(&self) -> [String; 5] {
        let dash = || "-".to_string();
        match &self.outcome {
            Outcome::Pass => [
                "pass".into(),
                dash(),
                dash(),
                dash(),
                self.elapsed_ms.to_string(),
            ],
            Outcome::Mismatch { exponent, lhs, rhs } => [
                "mismatch".into(),
                exponent.clone(),
                lhs.clone(),
                rhs.clone(),
                self.elapsed_ms.to_string(),
            ],
            Outcome::Error { message } => [
                "error".into(),
                dash(),
                dash(),
                message.clone(),
                self.elapsed_ms.to_string(),
            ],
        }
    }

    /// `id status mismatch_exp lhs_coeff rhs_coeff elapsed_ms`, tab separated.
    pub fn to_tsv(&self) -> String {
        let c = self.columns();
        format!(
            "{}\t{}\t{}\t{}\t{}\t{}",
            self.id, c[0], c[1], c[2], c[3], c[4]
        )
    }

    pub fn to_json(&self) -> String {
        let c = self.columns();
        serde_json::json!({
            "id": self.id,
            "status": c[0],
            "mismatch_exp": c[1],
            "lhs_coeff": c[2],
            "rhs_coeff": c[3],
            "elapsed_ms": self.elapsed_ms,
        })
        .to_string()
    }
}

/// Evaluate both sides of `rec` to `order` (units of `q`) and compare them.
///
/// `defect`, when given, adds `q^defect` to the right-hand side before comparing.
pub fn verify_record(rec: &IdentityRecord, order: Rat, defect: Option<Rat>) -> VerifyReport {
    let start = Instant::now();
    let scaled = rec.scaled_order(order);
    let run = || -> Result<(QSeries, QSeries)> {
        let lhs = rec.lhs.eval(rec.denom, scaled)?;
        let mut rhs = rec.rhs.eval(rec.denom, scaled)?;
        if let Some(e) = defect {
            let d = rec.denom.lcm(e.denom());
            let bump = QSeries::monomial(SignedMonomial::q(e), d, scaled * (d / rec.denom))?;
            rhs = rhs.add(&bump);
        }
        Ok((lhs, rhs))
    };
    let (outcome, lt, rt) = match run() {
        Ok((l, r)) => {
            let t = rat(scaled, rec.denom);
            let outcome = match l.eq_to_order(&r, t) {
                Ok(Comparison::Pass) => Outcome::Pass,
                Ok(Comparison::Mismatch { exponent, lhs, rhs }) => Outcome::Mismatch {
                    exponent: fmt_rat(&exponent),
                    lhs: lhs.to_string(),
                    rhs: rhs.to_string(),
                },
                Err(e) => Outcome::Error {
                    message: e.to_string(),
                },
            };
            (outcome, l.term_count(), r.term_count())
        }
        Err(e) => (
            Outcome::Error {
                message: e.to_string(),
            },
            0,
            0,
        ),
    };
    VerifyReport {
        id: rec.id.clone(),
        order: rat(scaled, rec.denom),
        outcome,
        elapsed_ms: start.elapsed().as_millis(),
        lhs_terms: lt,
        rhs_terms: rt,
    }
}

/// Verify a registry identity by id at `order`, or at its default order.
pub fn verify(id: &str, order: Option<Rat>) -> Result<VerifyReport> {
    let rec = registry()
        .into_iter()
        .find(|r| r.id == id)
        .ok_or_else(|| Error::UnknownIdentity(id.to_string()))?;
    let order = order.unwrap_or(rec.default_order);
    Ok(verify_record(&rec, order, None))
}

// ---------------------------------------------------------------------------
// builders

fn q(e: i64) -> SignedMonomial {
    SignedMonomial::qi(e)
}

fn nq(e: i64) -> SignedMonomial {
    SignedMonomial::neg_qi(e)
}

fn qr(n: i64, d: i64) -> SignedMonomial {
    SignedMonomial::q(rat(n, d))
}

fn mono(m: SignedMonomial) -> Expr {
    Expr::Monomial(m)
}

fn pinf(args: &[i64], base: i64) -> Expr {
    Expr::Poch(PochSpec::q_inf(args, base))
}

fn pinv(args: &[i64], base: i64) -> Expr {
    Expr::Poch(PochSpec::q_inf(args, base).inverted())
}

fn poch(args: Vec<SignedMonomial>, base: SignedMonomial) -> Expr {
    Expr::Poch(PochSpec::infinite(args, base))
}

fn poch_inv(args: Vec<SignedMonomial>, base: SignedMonomial) -> Expr {
    Expr::Poch(PochSpec::infinite(args, base).inverted())
}

fn prod(parts: Vec<Expr>) -> Expr {
    Expr::Product(parts)
}

fn sum(parts: Vec<Expr>) -> Expr {
    Expr::Sum(parts)
}

fn square(e: Expr) -> Expr {
    prod(vec![e.clone(), e])
}

/// `(q^b;q^b)_{n}^{-1}`
fn qfact_inv(b: i64, n: u64) -> Expr {
    Expr::Poch(PochSpec::finite(vec![q(b)], q(b), n).inverted())
}

/// Rank two sum with exponent `a11/2 i² + a12 ij + a22/2 j² + b1 i + b2 j`
/// over `(q^{di};q^{di})_i (q^{dj};q^{dj})_j`.
fn double_sum(a: [Rat; 3], b: [Rat; 2], di: Rat, dj: Rat) -> LatticeSumSpec {
    LatticeSumSpec::new(vec![vec![a[0], a[1]], vec![a[1], a[2]]], b.to_vec())
        .with_denominator(FactorSpec::q_factorial(di, 2, 0, 1, 0))
        .with_denominator(FactorSpec::q_factorial(dj, 2, 1, 1, 0))
}

/// `Σ q^{i²/2 - ij + 2j² + b1 i + b2 j} / ((q³;q³)_i (q³;q³)_j)`; S₁ and S₂ are special cases.
pub fn g_sum(b1: Rat, b2: Rat) -> LatticeSumSpec {
    double_sum([int(1), int(-1), int(4)], [b1, b2], int(3), int(3))
}

fn s1() -> LatticeSumSpec {
    g_sum(rat(-1, 2), int(2))
}

fn s2() -> LatticeSumSpec {
    g_sum(rat(3, 2), int(0))
}

/// `Σ q^{2i² + 2ij + 2j² + b1 i + b2 j} / ((q³;q³)_i (q³;q³)_j)`
pub fn h_sum(b1: i64, b2: i64) -> LatticeSumSpec {
    double_sum([int(4), int(2), int(4)], [int(b1), int(b2)], int(3), int(3))
}

fn s3() -> LatticeSumSpec {
    h_sum(-2, -1)
}

fn s4() -> LatticeSumSpec {
    h_sum(0, 0)
}

/// `Σ q^{i²/2 + 2ij + 2j² + b1 i + b2 j} / ((q³;q³)_i (q⁶;q⁶)_j)`
fn mixed_base(b1: Rat, b2: Rat) -> LatticeSumSpec {
    double_sum([int(1), int(2), int(4)], [b1, b2], int(3), int(6))
}

fn lat(s: LatticeSumSpec) -> Expr {
    Expr::Lattice(s)
}

fn ctx(arg: SignedMonomial, base: Rat, factors: Vec<EulerFactor>) -> Expr {
    Expr::Ct(CtExpr::new(arg, base, factors))
}

fn den(u: SignedMonomial, d: u32, base: SignedMonomial) -> EulerFactor {
    EulerFactor::denominator(u, d, base)
}

fn num(u: SignedMonomial, d: u32, base: SignedMonomial) -> EulerFactor {
    EulerFactor::numerator(u, d, base)
}

/// `(-q³;q³)_∞`
fn neg_q3() -> Expr {
    poch(vec![nq(3)], q(3))
}

/// Rank one sum `Σ q^{a n²/2 + b n} / (q^f;q^f)_{c n + c0}`.
fn single_sum(a: i64, b: Rat, f: i64, c: i64, c0: i64) -> LatticeSumSpec {
    LatticeSumSpec::new(vec![vec![int(a)]], vec![b]).with_denominator(FactorSpec::q_factorial(
        int(f),
        1,
        0,
        c,
        c0,
    ))
}

fn main_records(out: &mut Vec<IdentityRecord>) {
    use Section::Main;
    const RR: &str = "Rogers-Ramanujan identities";
    out.push(IdentityRecord::new(
        "rr.1",
        Main,
        RR,
        200,
        lat(single_sum(2, int(0), 1, 1, 0)),
        pinv(&[1, 4], 5),
    ));
    out.push(IdentityRecord::new(
        "rr.2",
        Main,
        RR,
        200,
        lat(single_sum(2, int(1), 1, 1, 0)),
        pinv(&[2, 3], 5),
    ));

    const W: &str = "product formulas for S1 and S2";
    let s1_rhs = sum(vec![
        Expr::scale(
            3,
            prod(vec![
                pinf(&[6], 6),
                pinf(&[18, 27, 45], 45),
                square(pinv(&[3], 3)),
            ]),
        ),
        -(prod(vec![
            pinf(&[4, 6, 10], 10),
            pinf(&[1, 5, 11, 19, 25, 29], 30),
            pinv(&[3], 3),
            pinv(&[3, 27], 30),
        ])),
    ]);
    let s2_rhs = sum(vec![
        Expr::scale(
            3,
            prod(vec![
                mono(q(2)),
                pinf(&[6], 6),
                pinf(&[9, 36, 45], 45),
                square(pinv(&[3], 3)),
            ]),
        ),
        prod(vec![
            pinf(&[2, 8, 10], 10),
            pinf(&[5, 7, 13, 17, 23, 25], 30),
            pinv(&[3], 3),
            pinv(&[9, 21], 30),
        ]),
    ]);
    out.push(IdentityRecord::new(
        "wang.s1",
        Main,
        W,
        300,
        lat(s1()),
        s1_rhs,
    ));
    out.push(IdentityRecord::new(
        "wang.s2",
        Main,
        W,
        300,
        lat(s2()),
        s2_rhs,
    ));

    const VZ: &str = "product formulas for S3 and S4";
    let vz = |terms: Vec<Expr>| prod(vec![pinf(&[45], 45), pinv(&[3], 3), sum(terms)]);
    let s3_rhs = vz(vec![
        Expr::scale(2, pinf(&[18, 27], 45)),
        prod(vec![mono(q(1)), pinf(&[12, 33], 45)]),
        prod(vec![mono(q(4)), pinf(&[3, 42], 45)]),
    ]);
    let s4_rhs = vz(vec![
        pinf(&[21, 24], 45),
        -(prod(vec![mono(q(3)), pinf(&[6, 39], 45)])),
        Expr::scale(2, prod(vec![mono(q(2)), pinf(&[9, 36], 45)])),
    ]);
    out.push(IdentityRecord::new(
        "vz.s3",
        Main,
        VZ,
        300,
        lat(s3()),
        s3_rhs,
    ));
    out.push(IdentityRecord::new(
        "vz.s4",
        Main,
        VZ,
        300,
        lat(s4()),
        s4_rhs,
    ));

    for (k, (alpha, beta, x)) in transformation_cases().into_iter().enumerate() {
        let seq = SequenceSpec::Quadratic { alpha, beta };
        let pair = transform_pair(&seq, x).expect("valid transformation parameters");
        let lhs = sum(pair.lhs.into_iter().map(lat).collect());
        let rhs = prod(vec![
            Expr::Poch(pair.rhs_prefactor),
            sum(pair.rhs.into_iter().map(lat).collect()),
        ]);
        out.push(IdentityRecord::new(
            format!("thm11.q{}", k + 1),
            Main,
            "diagonal transformation",
            100,
            lhs,
            rhs,
        ));
    }

    for (k, (a, b, order)) in index_change_cases().into_iter().enumerate() {
        let (lhs, rhs) = index_change(a, b);
        out.push(IdentityRecord::new(
            format!("idxchg.c{}", k + 1),
            Main,
            "diagonal transformation at x = q",
            order,
            lhs,
            rhs,
        ));
    }

    const REL: &str = "S1, S2 as (-q^3;q^3) times S3, S4";
    out.push(IdentityRecord::new(
        "rel.s1s3",
        Main,
        REL,
        300,
        lat(s1()),
        prod(vec![neg_q3(), lat(s3())]),
    ));
    out.push(IdentityRecord::new(
        "rel.s2s4",
        Main,
        REL,
        300,
        lat(s2()),
        prod(vec![neg_q3(), lat(s4())]),
    ));

    const T13: &str = "theta-quotient forms of S1 and S2";
    let pre = || vec![pinf(&[4], 4), pinv(&[3], 3), pinv(&[6], 12)];
    let neg4 = || square(poch(vec![nq(4)], q(4)));
    let neg2 = || square(poch(vec![nq(2)], q(4)));
    let t1 = sum(vec![
        Expr::scale(2, prod(vec![neg4(), pinv(&[24, 96], 120)])),
        prod(vec![
            mono(q(1)),
            neg2(),
            poch_inv(vec![q(12), nq(18)], nq(30)),
        ]),
    ]);
    let t2 = sum(vec![
        prod(vec![neg2(), poch_inv(vec![nq(6), q(24)], nq(30))]),
        Expr::scale(2, prod(vec![mono(q(5)), neg4(), pinv(&[48, 72], 120)])),
    ]);
    let with_pre = |t: Expr| {
        let mut v = pre();
        v.push(t);
        prod(v)
    };
    out.push(IdentityRecord::new(
        "thm13.s1",
        Main,
        T13,
        300,
        lat(s1()),
        with_pre(t1),
    ));
    out.push(IdentityRecord::new(
        "thm13.s2",
        Main,
        T13,
        300,
        lat(s2()),
        with_pre(t2),
    ));
}

/// Twenty deterministic pseudo-random `(α, β, x)` triples.
pub fn transformation_cases() -> Vec<(Rat, Rat, SignedMonomial)> {
    let alphas = [rat(1, 3), rat(1, 2), int(1), rat(3, 2)];
    let xs = [qr(1, 2), q(1), q(2), nq(1)];
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_1108);
    (0..20)
        .map(|_| {
            let alpha = alphas[rng.gen_range(0..alphas.len())];
            let beta = rat(rng.gen_range(-12..=12), 6);
            let x = xs[rng.gen_range(0..xs.len())];
            (alpha, beta, x)
        })
        .collect()
}

/// `(a, b, default order)` for the `x = q` specialisation.
pub fn index_change_cases() -> Vec<(Rat, Rat, i64)> {
    vec![
        (rat(1, 2), rat(-1, 2), 150),
        (int(1), int(0), 150),
        (rat(1, 3), rat(1, 3), 150),
        (rat(3, 2), int(-1), 150),
        (rat(1, 6), rat(-1, 12), 120),
    ]
}

/// `Σ q^{a(i-j)² + b(i-j) + j(j+1)/2} / ((q;q)_i (q;q)_j)` and
/// `(-q;q)_∞ Σ q^{a(i-j)² + b(i-j) + j(j+1)/2 + ij} / ((q;q)_i (q²;q²)_j)`.
pub fn index_change(a: Rat, b: Rat) -> (Expr, Expr) {
    let a2 = a * int(2);
    let lin = [b, rat(1, 2) - b];
    let lhs = double_sum([a2, -a2, a2 + int(1)], lin, int(1), int(1));
    let rhs = double_sum([a2, int(1) - a2, a2 + int(1)], lin, int(1), int(2));
    (
        lat(lhs),
        prod(vec![pinf(&[1], 1).clone_with_sign(), lat(rhs)]),
    )
}

trait NegArgs {
    fn clone_with_sign(self) -> Expr;
}

impl NegArgs for Expr {
    /// `(a;q)_∞ -> (-a;q)_∞` for every argument.
    fn clone_with_sign(self) -> Expr {
        match self {
            Expr::Poch(mut p) => {
                p.args = p.args.into_iter().map(|a| -a).collect();
                Expr::Poch(p)
            }
            other => other,
        }
    }
}

fn tools_records(out: &mut Vec<IdentityRecord>) {
    use Section::Tools;
    let zs = [
        q(1),
        q(2),
        nq(1),
        qr(1, 2),
        SignedMonomial::new(Sign::Minus, rat(3, 2)),
        q(3),
    ];
    for (k, z) in zs.iter().enumerate() {
        out.push(IdentityRecord::new(
            format!("euler.1.z{}", k + 1),
            Tools,
            "Euler reciprocal series",
            200,
            Expr::Euler {
                kind: EulerKind::Reciprocal,
                z: *z,
            },
            poch_inv(vec![*z], q(1)),
        ));
    }
    for (k, z) in zs.iter().enumerate() {
        out.push(IdentityRecord::new(
            format!("euler.2.z{}", k + 1),
            Tools,
            "Euler product series",
            200,
            Expr::Euler {
                kind: EulerKind::Product,
                z: *z,
            },
            poch(vec![-*z], q(1)),
        ));
    }

    for (k, (c, b)) in theta_cases().into_iter().enumerate() {
        out.push(IdentityRecord::new(
            format!("jtp.z{}", k + 1),
            Tools,
            "Jacobi triple product",
            300,
            Expr::ThetaSum { arg: c, base: b },
            Expr::ThetaProd { arg: c, base: b },
        ));
    }

    // θ(c q^{kb}; q^b) = (-1)^k q^{-b k(k-1)/2} c^{-k} θ(c; q^b)
    let (c, b) = (nq(1), int(3));
    for k in -2i64..=3 {
        let shifted = c * SignedMonomial::q(b * int(k));
        let factor = SignedMonomial::new(
            Sign::from_parity(k.rem_euclid(2) == 1),
            -b * int(k * (k - 1)) / int(2),
        ) * c.pow(-k);
        out.push(IdentityRecord::new(
            format!("quasi.{k}"),
            Tools,
            "theta quasi-periodicity",
            300,
            Expr::ThetaSum {
                arg: shifted,
                base: b,
            },
            prod(vec![mono(factor), Expr::ThetaSum { arg: c, base: b }]),
        ));
    }

    for i in 0..=10u64 {
        for j in 0..=10u64 {
            let lhs = Expr::inverse(prod(vec![
                Expr::Poch(PochSpec::finite(vec![q(1)], q(1), i)),
                Expr::Poch(PochSpec::finite(vec![q(1)], q(1), j)),
            ]));
            let terms = (0..=i.min(j))
                .map(|k| {
                    let e = ((i - k) * (j - k)) as i64;
                    prod(vec![
                        mono(q(e)),
                        qfact_inv(1, k),
                        qfact_inv(1, i - k),
                        qfact_inv(1, j - k),
                    ])
                })
                .collect();
            out.push(IdentityRecord::new(
                format!("chu.{i}.{j}"),
                Tools,
                "q-Chu-Vandermonde",
                150,
                lhs,
                sum(terms),
            ));
        }
    }

    const EXP: &str = "mixed-base double sums for S1 and S2";
    out.push(IdentityRecord::new(
        "s12exp.1",
        Tools,
        EXP,
        300,
        lat(s1()),
        prod(vec![neg_q3(), lat(mixed_base(rat(-1, 2), int(2)))]),
    ));
    out.push(IdentityRecord::new(
        "s12exp.2",
        Tools,
        EXP,
        300,
        lat(s2()),
        prod(vec![neg_q3(), lat(mixed_base(rat(3, 2), int(0)))]),
    ));

    const CT: &str = "constant-term representation";
    out.push(IdentityRecord::new(
        "ct.s1",
        Tools,
        CT,
        300,
        lat(s1()),
        prod(vec![neg_q3(), s1_ct()]),
    ));
    out.push(IdentityRecord::new(
        "ct.s2",
        Tools,
        CT,
        300,
        lat(s2()),
        prod(vec![neg_q3(), s2_ct()]),
    ));

    const ALT: &str = "constant terms equal to S3 and S4";
    let alt1 = ctx(
        SignedMonomial::one(),
        int(1),
        vec![num(q(0), 1, q(3)), den(q(0), 2, q(3))],
    );
    let alt2 = ctx(
        SignedMonomial::one(),
        int(1),
        vec![num(q(2), 1, q(3)), den(q(1), 2, q(3))],
    );
    out.push(IdentityRecord::new(
        "s1alt",
        Tools,
        ALT,
        300,
        alt1,
        lat(s3()),
    ));
    out.push(IdentityRecord::new(
        "s1alt.s2",
        Tools,
        ALT,
        300,
        alt2,
        lat(s4()),
    ));
}

/// `θ(1/z;q) / ((-z;q³)_∞ (q³z²;q⁶)_∞)`
fn s1_ct() -> Expr {
    ctx(
        SignedMonomial::one(),
        int(1),
        vec![den(nq(0), 1, q(3)), den(q(3), 2, q(6))],
    )
}

/// `θ(1/z;q) / ((-q²z;q³)_∞ (qz²;q⁶)_∞)`
fn s2_ct() -> Expr {
    ctx(
        SignedMonomial::one(),
        int(1),
        vec![den(nq(2), 1, q(3)), den(q(1), 2, q(6))],
    )
}

/// Arguments and bases for the triple product checks; several lie outside `(0, b]`.
pub fn theta_cases() -> Vec<(SignedMonomial, Rat)> {
    vec![
        (q(1), int(3)),
        (nq(5), int(4)),
        (nq(0), int(1)),
        (qr(7, 2), rat(3, 2)),
        (q(-3), int(2)),
        (SignedMonomial::new(Sign::Minus, rat(1, 2)), int(5)),
    ]
}

fn reduction_records(out: &mut Vec<IdentityRecord>) {
    use Section::Reduction;
    const ROG: &str = "Rogers mod 20 identities";
    let odd = || pinv(&[1], 2);
    let cases = [
        (single_sum(2, int(0), 1, 2, 0), pinv(&[4, 16], 20)),
        (
            single_sum(2, int(1), 1, 2, 0),
            poch_inv(vec![nq(1), q(4)], nq(5)),
        ),
        (
            single_sum(2, int(1), 1, 2, 1),
            poch_inv(vec![q(2), nq(3)], nq(5)),
        ),
        (single_sum(2, int(2), 1, 2, 1), pinv(&[8, 12], 20)),
    ];
    for (k, (lhs, rhs)) in cases.into_iter().enumerate() {
        out.push(IdentityRecord::new(
            format!("rogers.{}", k + 1),
            Reduction,
            ROG,
            200,
            lat(lhs),
            prod(vec![odd(), rhs]),
        ));
    }

    // (q³;q³)_∞ G(x, q²/x) at x = q^a
    for a in 0..=3i64 {
        let g = g_sum(rat(-1, 2) + int(a), int(2 - a));
        let lhs = prod(vec![pinf(&[3], 3), lat(g)]);
        let first = prod(vec![
            Expr::ThetaProd {
                arg: nq(a),
                base: int(4),
            },
            lat(single_sum(12, int(3 * a), 6, 2, 0)),
        ]);
        let second = prod(vec![
            mono(q(1 + 2 * a)),
            Expr::ThetaProd {
                arg: nq(2 + a),
                base: int(4),
            },
            lat(single_sum(12, int(6 + 3 * a), 6, 2, 1)),
        ]);
        out.push(IdentityRecord::new(
            format!("lemma31.{a}"),
            Reduction,
            "reduction of G(x, q^2/x)",
            240,
            lhs,
            sum(vec![first, second]),
        ));
    }
}

fn byproduct_records(out: &mut Vec<IdentityRecord>) {
    use Section::Byproducts;
    const NEW: &str = "alternative double sums over q^(3/2)";
    let alt = |b1: Rat, b2: Rat| {
        double_sum([int(1), int(1), int(1)], [b1, b2], rat(3, 2), int(3)).with_alternating(1)
    };
    let new1 = alt(rat(-1, 2), int(1));
    let new2 = alt(int(0), int(0));
    let ct1 = ctx(
        SignedMonomial::one(),
        int(1),
        vec![den(nq(0), 1, qr(3, 2)), den(qr(3, 2), 1, q(3))],
    );
    let ct2 = ctx(
        SignedMonomial::one(),
        int(1),
        vec![
            den(SignedMonomial::new(Sign::Minus, rat(1, 2)), 1, qr(3, 2)),
            den(qr(1, 2), 1, q(3)),
        ],
    );
    out.push(IdentityRecord::new(
        "s12new.1",
        Byproducts,
        NEW,
        100,
        lat(s1()),
        prod(vec![neg_q3(), lat(new1.clone())]),
    ));
    out.push(IdentityRecord::new(
        "s12new.2",
        Byproducts,
        NEW,
        100,
        lat(s2()),
        prod(vec![neg_q3(), lat(new2.clone())]),
    ));
    out.push(IdentityRecord::new(
        "s12new.1.ct",
        Byproducts,
        NEW,
        100,
        ct1,
        lat(new1),
    ));
    out.push(IdentityRecord::new(
        "s12new.2.ct",
        Byproducts,
        NEW,
        100,
        ct2,
        lat(new2),
    ));

    const H: &str = "H(x, y) constant-term representation";
    let h_ct = ctx(
        SignedMonomial::one(),
        int(1),
        vec![num(q(1), 1, q(3)), den(q(-1), 2, q(3))],
    );
    let h_split = ctx(
        SignedMonomial::one(),
        int(1),
        vec![den(nq(1), 1, q(3)), den(q(-1), 2, q(6))],
    );
    out.push(IdentityRecord::new(
        "hrep",
        Byproducts,
        H,
        300,
        lat(s3()),
        h_ct.clone(),
    ));
    out.push(IdentityRecord::new(
        "hrep.prod",
        Byproducts,
        H,
        300,
        h_ct,
        h_split.clone(),
    ));
    out.push(IdentityRecord::new(
        "hrep.sum",
        Byproducts,
        H,
        300,
        h_split,
        lat(mixed_base(rat(1, 2), int(-2))),
    ));

    out.push(IdentityRecord::new(
        "cor41",
        Byproducts,
        "two double sums with mirrored linear terms",
        300,
        lat(mixed_base(rat(-1, 2), int(2))),
        lat(mixed_base(rat(1, 2), int(-2))),
    ));
}

/// The complete identity catalogue, in a fixed order.
///
/// Every identity family has at least one record:
///
/// ```
/// use std::collections::BTreeSet;
/// let sources: BTreeSet<_> = qnahm::registry::registry().iter().map(|r| r.source).collect();
/// let families = [
///     "Rogers-Ramanujan identities",
///     "product formulas for S1 and S2",
///     "product formulas for S3 and S4",
///     "diagonal transformation",
///     "diagonal transformation at x = q",
///     "S1, S2 as (-q^3;q^3) times S3, S4",
///     "theta-quotient forms of S1 and S2",
///     "Euler reciprocal series",
///     "Euler product series",
///     "Jacobi triple product",
///     "theta quasi-periodicity",
///     "q-Chu-Vandermonde",
///     "mixed-base double sums for S1 and S2",
///     "constant-term representation",
///     "constant terms equal to S3 and S4",
///     "Rogers mod 20 identities",
///     "reduction of G(x, q^2/x)",
///     "alternative double sums over q^(3/2)",
///     "H(x, y) constant-term representation",
///     "two double sums with mirrored linear terms",
/// ];
/// assert_eq!(sources, families.into_iter().collect());
/// ```
pub fn registry() -> Vec<IdentityRecord> {
    let mut out = Vec::new();
    main_records(&mut out);
    tools_records(&mut out);
    reduction_records(&mut out);
    byproduct_records(&mut out);
    out
}

/// Every lattice sum appearing in the registry, with the owning record's denominator and order.
pub fn lattice_specs() -> Vec<(String, LatticeSumSpec, i64, i64)> {
    let mut out = Vec::new();
    for rec in registry() {
        let t = rec.scaled_order(rec.default_order);
        for side in [&rec.lhs, &rec.rhs] {
            side.walk(&mut |e| {
                if let Expr::Lattice(s) = e {
                    out.push((rec.id.clone(), s.clone(), rec.denom, t));
                }
            });
        }
    }
    out
}

/// Every constant-term expression in the registry, with the owning record's denominator.
pub fn ct_exprs() -> Vec<(String, CtExpr, i64)> {
    let mut out = Vec::new();
    for rec in registry() {
        for side in [&rec.lhs, &rec.rhs] {
            side.walk(&mut |e| {
                if let Expr::Ct(c) = e {
                    out.push((rec.id.clone(), c.clone(), rec.denom));
                }
            });
        }
    }
    out
}
