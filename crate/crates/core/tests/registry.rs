use std::collections::BTreeSet;

use qnahm::expr::Expr;
use qnahm::monomial::int;
use qnahm::registry::{registry, verify, verify_record, Outcome, Section};

#[test]
fn every_identity_passes_at_its_default_order() {
    let failed: Vec<_> = registry()
        .iter()
        .map(|r| verify_record(r, r.default_order, None))
        .filter(|rep| !rep.passed())
        .map(|rep| (rep.id, rep.outcome))
        .collect();
    assert!(failed.is_empty(), "{failed:?}");
}

#[test]
fn headline_examples() {
    assert!(verify("rr.1", Some(int(200))).unwrap().passed());
    assert!(verify("wang.s1", Some(int(300))).unwrap().passed());
}

#[test]
fn every_identity_family_is_catalogued() {
    let sources: BTreeSet<&str> = registry().iter().map(|r| r.source).collect();
    for family in [
        "Rogers-Ramanujan identities",
        "product formulas for S1 and S2",
        "product formulas for S3 and S4",
        "diagonal transformation",
        "diagonal transformation at x = q",
        "S1, S2 as (-q^3;q^3) times S3, S4",
        "theta-quotient forms of S1 and S2",
        "Euler reciprocal series",
        "Euler product series",
        "Jacobi triple product",
        "theta quasi-periodicity",
        "q-Chu-Vandermonde",
        "mixed-base double sums for S1 and S2",
        "constant-term representation",
        "constant terms equal to S3 and S4",
        "Rogers mod 20 identities",
        "reduction of G(x, q^2/x)",
        "alternative double sums over q^(3/2)",
        "H(x, y) constant-term representation",
        "two double sums with mirrored linear terms",
    ] {
        assert!(sources.contains(family), "no record for {family}");
    }
}

#[test]
fn sections_partition_the_catalogue() {
    let reg = registry();
    let count = |s: Section| reg.iter().filter(|r| r.section == s).count();
    assert_eq!(
        count(Section::Main)
            + count(Section::Tools)
            + count(Section::Reduction)
            + count(Section::Byproducts),
        reg.len()
    );
    assert_eq!(reg.iter().filter(|r| r.id.starts_with("chu.")).count(), 121);
    assert_eq!(
        reg.iter().filter(|r| r.id.starts_with("thm11.")).count(),
        20
    );
}

#[test]
fn mirrored_linear_terms() {
    let rec = registry().into_iter().find(|r| r.id == "cor41").unwrap();
    let (Expr::Lattice(a), Expr::Lattice(b)) = (&rec.lhs, &rec.rhs) else {
        panic!("cor41 should compare two lattice sums")
    };
    assert_eq!(a.quad, b.quad);
    assert_eq!(a.lin.iter().map(|x| -x).collect::<Vec<_>>(), b.lin);
    assert_eq!(a.denominators, b.denominators);
}

#[test]
fn planted_defect_is_the_least_mismatch() {
    let rec = registry().into_iter().find(|r| r.id == "rr.1").unwrap();
    let rep = verify_record(&rec, int(200), Some(int(50)));
    assert!(matches!(rep.outcome, Outcome::Mismatch { ref exponent, .. } if exponent == "50"));
    let rep = verify_record(&rec, int(40), Some(int(50)));
    assert!(rep.passed());
}

#[test]
fn reports_are_deterministic() {
    let strip = |v: Vec<String>| {
        v.into_iter()
            .map(|l| l.rsplit_once('\t').unwrap().0.to_string())
            .collect::<Vec<_>>()
    };
    let run = || {
        registry()
            .iter()
            .filter(|r| r.section == Section::Byproducts)
            .map(|r| verify_record(r, r.default_order, None).to_tsv())
            .collect::<Vec<_>>()
    };
    assert_eq!(strip(run()), strip(run()));
}

#[test]
fn crossed_sides_do_not_verify() {
    let reg = registry();
    let get = |id: &str| reg.iter().find(|r| r.id == id).unwrap().clone();
    for (a, b) in [
        ("wang.s1", "wang.s2"),
        ("vz.s3", "vz.s4"),
        ("thm13.s1", "thm13.s2"),
        ("rogers.1", "rogers.2"),
        ("lemma31.0", "lemma31.1"),
        ("s12new.1", "s12new.2"),
        ("ct.s1", "ct.s2"),
        ("thm11.q1", "thm11.q2"),
    ] {
        let mut crossed = get(a);
        crossed.rhs = get(b).rhs;
        crossed.denom = num_integer::Integer::lcm(&crossed.denom, &get(b).denom);
        let rep = verify_record(&crossed, int(100), None);
        assert!(
            matches!(rep.outcome, Outcome::Mismatch { .. }),
            "{a} x {b}: {:?}",
            rep.outcome
        );
    }
}
