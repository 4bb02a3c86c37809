//! Acceptance criteria, one test per criterion.
//!
//! Every comparison is exact (polynomials, counts and strings are compared by
//! equality). Each test prints one `[PASS]`/`[FAIL]` line with its elapsed
//! time against the pinned runtime budget, then asserts.

use std::time::{Duration, Instant};

use pdgenus::census::{self, theta, theta_genus_closed_form, theta_pdg_closed_form};
use pdgenus::{
    pde_bouquet, pde_direct, pdg, BouquetClass, Census, EdgeSubset, GenusPolynomial,
    SignedRotation, SignedSequence,
};

fn rot(s: &str) -> SignedRotation {
    s.parse().unwrap()
}

fn poly(s: &str) -> GenusPolynomial {
    s.parse().unwrap()
}

fn pde(s: &str) -> GenusPolynomial {
    pde_direct(&rot(s).to_rotation_system()).unwrap()
}

fn pg(s: &str) -> GenusPolynomial {
    pdg(&rot(s).to_rotation_system()).unwrap()
}

/// Runs `body`, prints the verdict line and fails the test on any mismatch
/// or budget overrun. `body` returns the list of failed sub-checks.
fn criterion(n: u8, title: &str, budget: Duration, body: impl FnOnce() -> Vec<String>) {
    let start = Instant::now();
    let failures = body();
    let elapsed = start.elapsed();
    let in_budget = elapsed <= budget;
    let ok = failures.is_empty() && in_budget;
    println!(
        "[{}] criterion {n}: {title} ({:.2?} of {:?})",
        if ok { "PASS" } else { "FAIL" },
        elapsed,
        budget
    );
    for f in &failures {
        println!("    {f}");
    }
    assert!(failures.is_empty(), "criterion {n} failed: {failures:#?}");
    assert!(in_budget, "criterion {n} took {elapsed:?}, budget {budget:?}");
}

/// Records a mismatch between an expected and an actual rendering.
fn expect_eq(failures: &mut Vec<String>, what: &str, expected: impl ToString, actual: impl ToString) {
    let (e, a) = (expected.to_string(), actual.to_string());
    if e != a {
        failures.push(format!("{what}: expected {e}, got {a}"));
    }
}

fn secs(s: u64) -> Duration {
    Duration::from_secs(s)
}

#[test]
fn criterion_01_non_interpolating_four_edge_bouquet() {
    criterion(1, "pDe of (a,b,c,d,-b,-a,c,d)", secs(1), || {
        let mut f = Vec::new();
        let p = pde("(a,b,c,d,-b,-a,c,d)");
        expect_eq(&mut f, "pDe", "4z^2 + 12z^4", &p);
        expect_eq(&mut f, "interpolating", false, p.is_interpolating());
        f
    });
}

/// Signed sequences sharing one row, the Euler polynomial (tabulated for
/// e <= 3 and orientable rows) and the orientable polynomial.
const PRIME_ROWS: &[(&[&str], &str, Option<&str>)] = &[
    (&["(0)"], "2", Some("2")),
    (&["(-0)"], "2z", None),
    (&["(1, 1)"], "2 + 2z^2", Some("2 + 2z")),
    (&["(-1, 1)", "(-1, -1)"], "2z + 2z^2", None),
    (&["(1, 1, 2)"], "2 + 6z^2", Some("2 + 6z")),
    (&["(2, 2, 2)"], "8z^2", Some("8z")),
    (&["(-1, 1, 2)", "(-2, -1, 1)", "(-2, -2, 2)"], "2z + 2z^2 + 4z^3", None),
    (&["(-2, 1, 1)", "(-2, -2, -2)"], "2z + 6z^2", None),
    (&["(-1, -1, 2)", "(-2, -1, -1)", "(-2, 2, 2)"], "4z^2 + 4z^3", None),
    (&["(1, 1, 1, 3)"], "2 + 14z^2", Some("2 + 14z")),
    (&["(1, 1, 2, 2)", "(2, 2, 2, 2)"], "2 + 10z^2 + 4z^4", Some("2 + 10z + 4z^2")),
    (&["(1, 2, 2, 3)", "(2, 2, 3, 3)"], "12z^2 + 4z^4", Some("12z + 4z^2")),
    (&["(3, 3, 3, 3)"], "8z^2 + 8z^4", Some("8z + 8z^2")),
];

#[test]
fn criterion_02_prime_bouquet_table() {
    criterion(2, "prime-bouquet table reproduced row by row", secs(30), || {
        let mut f = Vec::new();
        let census = Census::default();
        let mut classes = census.enumerate_up_to(3, false, true).unwrap();
        classes.extend(census.enumerate(4, true, true).unwrap());
        let mut listed = 0;
        for (seqs, row_pde, row_pdg) in PRIME_ROWS {
            for s in *seqs {
                listed += 1;
                let seq: SignedSequence = s.parse().unwrap();
                let hits: Vec<&BouquetClass> =
                    classes.iter().filter(|c| c.sequence == seq).collect();
                expect_eq(&mut f, &format!("{s} class count"), 1, hits.len());
                for c in hits {
                    expect_eq(&mut f, &format!("{s} pDe"), row_pde, &c.pde);
                    let actual = c.pdg.as_ref().map(ToString::to_string);
                    expect_eq(&mut f, &format!("{s} pDg"), format!("{row_pdg:?}"), format!("{:?}", actual.as_deref()));
                }
            }
        }
        expect_eq(&mut f, "every prime class listed", listed, classes.len());
        // Rows that share a polynomial really do share it, and distinct rows differ.
        let distinct: std::collections::BTreeSet<String> =
            classes.iter().map(|c| c.pde.to_string()).collect();
        expect_eq(&mut f, "distinct pDe values", PRIME_ROWS.len(), distinct.len());
        f
    });
}

#[test]
fn criterion_03_eight_edge_join() {
    criterion(3, "pDg of (a,c,h,c,b,h,b,a,d,g,e,f,e,d,g,f)", secs(1), || {
        let mut f = Vec::new();
        expect_eq(&mut f, "pDg", "48z + 160z^2 + 48z^3", pg("(a,c,h,c,b,h,b,a,d,g,e,f,e,d,g,f)"));
        f
    });
}

#[test]
fn criterion_04_nine_edge_worked_example() {
    criterion(4, "nine-edge bouquet by enumeration and by the table pipeline", secs(2), || {
        let mut f = Vec::new();
        let text = "(h,a,b,c,d,c,a,d,b,h,i,e,f,-e,g,-f,g,-i)";
        let expected = "16z^2 + 16z^3 + 112z^4 + 80z^5 + 192z^6 + 32z^7 + 64z^8";
        expect_eq(&mut f, "direct", expected, pde(text));

        let r = rot(text);
        let (i, j, reduced) = r.strip_trivial();
        expect_eq(&mut f, "trivial loops (twisted, untwisted)", "(1, 1)", format!("{:?}", (i, j)));
        let factors = reduced.factor();
        let looked_up: Vec<GenusPolynomial> = factors
            .iter()
            .filter_map(|p| {
                let key = p.signed_sequence().to_string();
                PRIME_ROWS
                    .iter()
                    .find(|row| row.0.contains(&key.as_str()))
                    .map(|row| poly(row.1))
            })
            .collect();
        expect_eq(&mut f, "factors found in the table", factors.len(), looked_up.len());
        let prefactor = GenusPolynomial::monomial(1u32 << (i + j), i as u32);
        let pipeline = &prefactor * &looked_up.into_iter().product::<GenusPolynomial>();
        expect_eq(&mut f, "pipeline", expected, &pipeline);
        let closed = &poly("4z") * &(&poly("2 + 10z^2 + 4z^4") * &poly("2z + 2z^2 + 4z^3"));
        expect_eq(&mut f, "4z(2+10z^2+4z^4)(2z+2z^2+4z^3)", expected, closed);
        expect_eq(&mut f, "fast path", expected, pde_bouquet(&r).unwrap());
        f
    });
}

#[test]
fn criterion_05_theta_family() {
    criterion(5, "genus and pDg of theta(t), t = 1..12", secs(30), || {
        let mut f = Vec::new();
        for t in 1..=12 {
            let th = theta(t);
            let genus = th.to_map().genus().unwrap();
            let expected_genus = if t % 2 == 1 { (t - 1) / 2 } else { t / 2 };
            expect_eq(&mut f, &format!("genus theta({t})"), expected_genus, genus);
            expect_eq(&mut f, &format!("closed-form genus theta({t})"), expected_genus, theta_genus_closed_form(t));
            let p = pdg(&th.to_rotation_system()).unwrap();
            let pow = |k: usize| 1u64 << k;
            let expected = if t % 2 == 1 {
                format!("{}z^{}", pow(t), (t - 1) / 2)
            } else {
                format!("{}z^{} + {}z^{}", pow(t - 1), (t - 2) / 2, pow(t - 1), t / 2)
            };
            expect_eq(&mut f, &format!("pDg theta({t})"), poly(&expected), &p);
            expect_eq(&mut f, &format!("closed form theta({t})"), &p, theta_pdg_closed_form(t));
        }
        f
    });
}

#[test]
fn criterion_06_classification() {
    criterion(6, "prime counts and completeness of the signed sequence", secs(60), || {
        let mut f = Vec::new();
        let census = Census::default();
        for (e, expected) in [(1, 2), (2, 3), (3, 10)] {
            expect_eq(&mut f, &format!("prime classes e={e}"), expected, census.enumerate(e, false, true).unwrap().len());
        }
        let orientable_four = census.enumerate(4, true, true).unwrap();
        expect_eq(&mut f, "orientable prime classes e=4", 6, orientable_four.len());

        let report = census.verify_classification(3, 4).unwrap();
        expect_eq(&mut f, "sequence collisions among small primes", 0, report.sequence_collisions.len());
        expect_eq(&mut f, "pDe violations e<=3", 0, report.pde_violations.len());
        expect_eq(&mut f, "pDg violations orientable e<=4", 0, report.pdg_violations.len());
        f
    });
}

#[test]
fn criterion_07_counterexample_pairs() {
    criterion(7, "equal sequences with different polynomials or faces", secs(5), || {
        let mut f = Vec::new();
        let faces = |s: &str| rot(s).to_map().counts().faces;
        let seq = |s: &str| rot(s).signed_sequence().to_string();
        let iso = |a: &str, b: &str| rot(a).iso(&rot(b));

        let (p1, p2) = ("(a,c,-a,d,b,d,c,-b)", "(a,c,b,-a,-b,d,c,d)");
        expect_eq(&mut f, "e=4 pair sequences", seq(p1), seq(p2));
        expect_eq(&mut f, "e=4 pair distinct", false, iso(p1, p2));
        expect_eq(&mut f, "e=4 first pDe", "4z^2 + 8z^3 + 4z^4", pde(p1));
        expect_eq(&mut f, "e=4 second pDe", "2z + 2z^2 + 8z^3 + 4z^4", pde(p2));

        let (q1, q2) = ("(a,b,a,c,b,d,e,c,d,e)", "(a,b,a,c,d,b,e,d,c,e)");
        expect_eq(&mut f, "e=5 orientable pair sequences", "(1, 2, 2, 2, 3)|(1, 2, 2, 2, 3)", format!("{}|{}", seq(q1), seq(q2)));
        expect_eq(&mut f, "e=5 first pDg", "12z + 20z^2", pg(q1));
        expect_eq(&mut f, "e=5 second pDg", "2 + 14z + 16z^2", pg(q2));

        let (r1, r2) = ("(a,b,c,a,d,c,e,b,d,e)", "(a,b,c,a,d,e,c,b,e,d)");
        expect_eq(&mut f, "(2,2,2,3,3) pair sequences", "(2, 2, 2, 3, 3)|(2, 2, 2, 3, 3)", format!("{}|{}", seq(r1), seq(r2)));
        expect_eq(&mut f, "(2,2,2,3,3) pair faces", "2|4", format!("{}|{}", faces(r1), faces(r2)));
        expect_eq(&mut f, "(2,2,2,3,3) pair distinct", false, iso(r1, r2));

        let (s1, s2) = ("(a,b,-a,c,-b,d,c,d)", "(a,b,c,-b,d,-a,d,c)");
        expect_eq(&mut f, "(-2,-1,1,2) pair sequences", "(-2, -1, 1, 2)|(-2, -1, 1, 2)", format!("{}|{}", seq(s1), seq(s2)));
        expect_eq(&mut f, "(-2,-1,1,2) pair faces", "2|1", format!("{}|{}", faces(s1), faces(s2)));

        // The census finds the same pairs as the first violations.
        let wide = Census::default().verify_classification(4, 5).unwrap();
        expect_eq(&mut f, "first pDe violation", "Some(4)", format!("{:?}", wide.first_pde_violation()));
        expect_eq(&mut f, "first pDg violation", "Some(5)", format!("{:?}", wide.first_pdg_violation()));
        let has = |pairs: &[census::ClassPair], a: &str, b: &str| pairs.iter().any(|p| p.involves(&rot(a), &rot(b)));
        expect_eq(&mut f, "census lists the e=4 pair", true, has(&wide.pde_violations, p1, p2));
        expect_eq(&mut f, "census lists the e=5 pair", true, has(&wide.pdg_violations, q1, q2));
        f
    });
}

#[test]
fn criterion_08_conjecture_searches() {
    criterion(8, "single-term and gap searches", secs(180), || {
        let mut f = Vec::new();
        let census = Census::default();
        let single3 = census.search_conjecture_31(3).unwrap();
        expect_eq(&mut f, "single-term hits e<=3", 1, single3.len());
        if let Some(c) = single3.first() {
            expect_eq(&mut f, "hit is theta(3)", true, c.rotation.iso(&theta(3)));
            expect_eq(&mut f, "hit sequence", "(2, 2, 2)", &c.sequence);
            expect_eq(&mut f, "hit pDg", "Some(\"8z\")", format!("{:?}", c.pdg.as_ref().map(ToString::to_string)));
        }
        let gaps = census.search_conjecture_53(4).unwrap();
        let example = rot("(a,b,c,d,-b,-a,c,d)");
        let hit = gaps.iter().find(|c| c.rotation.iso(&example));
        expect_eq(&mut f, "gap search finds the four-edge example", "Some(\"4z^2 + 12z^4\")", format!("{:?}", hit.map(|c| c.pde.to_string())));
        let single5 = census.search_conjecture_31(5).unwrap();
        let th = single5.iter().find(|c| c.rotation.iso(&theta(5)));
        expect_eq(&mut f, "single-term search finds theta(5)", "Some(\"32z^2\")", format!("{:?}", th.and_then(|c| c.pdg.as_ref()).map(ToString::to_string)));
        f
    });
}

/// Inserts a trivial loop `x x` (or `x -x`) before position `gap`.
fn with_trivial_loop(r: &SignedRotation, gap: usize, twisted: bool) -> SignedRotation {
    let fresh = r.edge_count();
    let mut ids = r.positions().to_vec();
    ids.splice(gap..gap, [fresh, fresh]);
    let mut tw = r.twisted_edges().to_vec();
    tw.push(twisted);
    SignedRotation::from_ids(&ids, &tw).unwrap()
}

#[test]
fn criterion_09_property_suites() {
    criterion(9, "additivity, multiplicativity, trivial loops, invariance, parity, duality", secs(120), || {
        use rand::{Rng, SeedableRng};
        let mut f = Vec::new();
        let mut rng = rand::rngs::StdRng::seed_from_u64(0x5eed);
        let all = Census::default().enumerate_up_to(5, false, false).unwrap();
        let small: Vec<&BouquetClass> = all.iter().filter(|c| c.edge_count() <= 3).collect();
        let four: Vec<&BouquetClass> = all.iter().filter(|c| c.edge_count() <= 4).collect();

        // Genus of a partial dual splits over the subset and its complement.
        let mut n = 0;
        for c in &all {
            let rs = c.rotation.to_rotation_system();
            let m = rs.to_map();
            let e = c.edge_count();
            for mask in 0..1u64 << e {
                let a = EdgeSubset::from_mask(mask);
                n += 1;
                let lhs = m.partial_dual(a).unwrap().euler_genus();
                let rhs = rs.restrict(a).to_map().euler_genus()
                    + rs.restrict(a.complement(e)).to_map().euler_genus();
                if lhs != rhs {
                    f.push(format!("additivity {} A={mask:#b}", c.canonical));
                }
            }
        }
        expect_eq(&mut f, "additivity instances >= 1000", true, n >= 1000);

        // Joins multiply polynomials.
        for _ in 0..1000 {
            let a = small[rng.gen_range(0..small.len())];
            let b = small[rng.gen_range(0..small.len())];
            let joined = a.rotation.join(&b.rotation);
            if pde_direct(&joined.to_rotation_system()).unwrap() != &a.pde * &b.pde {
                f.push(format!("join {} v {}", a.canonical, b.canonical));
            }
        }

        // Trivial loops contribute a factor 2 or 2z, and stripping recovers them.
        for _ in 0..1000 {
            let c = four[rng.gen_range(0..four.len())];
            let gap = rng.gen_range(0..=2 * c.edge_count());
            let twisted = rng.gen_bool(0.5);
            let r = with_trivial_loop(&c.rotation, gap, twisted);
            let factor = poly(if twisted { "2z" } else { "2" });
            if pde_direct(&r.to_rotation_system()).unwrap() != &factor * &c.pde {
                f.push(format!("trivial loop {} gap {gap}", c.canonical));
            }
            let (i, j, reduced) = r.strip_trivial();
            let stripped = GenusPolynomial::monomial(1u32 << (i + j), i as u32);
            if &stripped * &pde_bouquet(&reduced).unwrap() != &factor * &c.pde {
                f.push(format!("strip {} gap {gap}", c.canonical));
            }
        }

        // Partial duals share the polynomial.
        for _ in 0..1000 {
            let c = four[rng.gen_range(0..four.len())];
            let mask = rng.gen_range(0..1u64 << c.edge_count());
            let rs = c.rotation.to_rotation_system();
            if !pdgenus::check_invariance(&rs, EdgeSubset::from_mask(mask)).unwrap() {
                f.push(format!("invariance {} A={mask:#b}", c.canonical));
            }
        }

        // Per-class facts.
        for c in &all {
            let e = c.edge_count();
            if c.pde.eval(1) != (1i64 << e).into() {
                f.push(format!("eval {}", c.canonical));
            }
            if e >= 1 && !c.pde.all_coefficients_even() {
                f.push(format!("even {}", c.canonical));
            }
            if c.sequence.beta_sum() % 2 != 0 {
                f.push(format!("beta sum {}", c.canonical));
            }
            if c.orientable && c.pde.halve_exponents().is_err() {
                f.push(format!("odd exponent {}", c.canonical));
            }
        }
        expect_eq(&mut f, "per-class instances >= 1000", true, all.len() >= 1000);

        // Partial duality is an involution; the full dual swaps v and f.
        let mut n = 0;
        for c in &four {
            let m = c.rotation.to_map();
            let e = c.edge_count();
            for mask in 0..1u64 << e {
                let a = EdgeSubset::from_mask(mask);
                n += 1;
                if m.partial_dual(a).unwrap().partial_dual(a).unwrap() != m {
                    f.push(format!("involution {} A={mask:#b}", c.canonical));
                }
            }
            let (k, d) = (m.counts(), m.partial_dual(EdgeSubset::full(e)).unwrap().counts());
            if (d.vertices, d.edges, d.faces, d.components) != (k.faces, k.edges, k.vertices, k.components) {
                f.push(format!("v/f swap {}", c.canonical));
            }
        }
        expect_eq(&mut f, "involution instances >= 1000", true, n >= 1000);
        f.truncate(20);
        f
    });
}

#[test]
fn criterion_10_ten_edge_signed_sequence() {
    criterion(10, "signed sequence rendering with -0", secs(1), || {
        let mut f = Vec::new();
        let r = rot("(a,b,-a,c,b,i,i,d,e,c,f,g,h,d,j,-j,h,-e,g,f)");
        expect_eq(&mut f, "sequence", "(-4, -1, -0, 0, 1, 2, 2, 2, 3, 5)", r.signed_sequence());
        f
    });
}
