//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! non-zero if any criterion fails. All comparisons are exact.

use std::cell::Cell;
use std::collections::BTreeSet;

use proptest::prelude::*;
use proptest::test_runner::{Config, RngAlgorithm, TestRng, TestRunner};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use nashorder_cli::{run, Analysis, Problem, RunConfig, Status, BUNDLED};
use nashorder_core::blowup::{nash_sequence, persistence_oracle, NashOptions};
use nashorder_core::contact::{contact_order, integral_invariance_check, DependenceWitness, WitnessTerm};
use nashorder_core::elimination::{ord_d, MonicPresentation};
use nashorder_core::poly::var_names;
use nashorder_core::{
    normalized_contact, Arc, ExtRational, FieldSpec, MultiPoly, Order, Point, ReesAlgebra, TruncatedSeries,
};

const Q: FieldSpec = FieldSpec::Rationals;
const F2: FieldSpec = FieldSpec::Prime(2);

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn xy() -> Vec<String> {
    var_names(&["x", "y"])
}

fn poly(text: &str, field: FieldSpec) -> MultiPoly {
    MultiPoly::parse(text, &xy(), field).unwrap()
}

fn algebra(text: &str, field: FieldSpec) -> ReesAlgebra {
    ReesAlgebra::parse(text, &xy(), field).unwrap()
}

fn arc(field: FieldSpec, comps: &[&str]) -> Arc {
    Arc::parse(&xy(), field, comps).unwrap()
}

fn bundled(name: &str) -> Problem {
    let (_, src) = BUNDLED.iter().find(|(n, _)| *n == name).unwrap();
    Problem::parse(src).unwrap()
}

fn long_runs() -> NashOptions {
    NashOptions {
        max_steps: 64,
        ..NashOptions::default()
    }
}

/// `sing_member` and `ord_at` of `a` and `b` agree at every point.
fn same_observer(a: &ReesAlgebra, b: &ReesAlgebra, points: &[Point]) -> Result<(), String> {
    for p in points {
        let (ma, mb) = (a.sing_member(p).unwrap(), b.sing_member(p).unwrap());
        ensure(ma == mb, || format!("Sing membership differs at {p}"))?;
        if ma {
            let (oa, ob) = (a.ord_at(p).unwrap(), b.ord_at(p).unwrap());
            ensure(oa == ob, || format!("ord differs at {p}: {oa} vs {ob}"))?;
        }
    }
    Ok(())
}

fn same_contact(a: &ReesAlgebra, b: &ReesAlgebra, arcs: &[Arc]) -> Result<(), String> {
    for phi in arcs {
        let (ra, rb) = (contact_order(a, phi).unwrap(), contact_order(b, phi).unwrap());
        ensure(ra == rb, || format!("contact differs on {phi}: {ra} vs {rb}"))?;
    }
    Ok(())
}

/// Checks the cusp arc `(t^2, t^3)` and the elimination order at the origin.
fn cusp_numbers(field: FieldSpec, r: i64, sequence: &[u64], ordd: ExtRational) -> Result<String, String> {
    let f = poly("y^2 - x^3", field);
    let g = ReesAlgebra::hypersurface(&f, 2).unwrap().diff_closure();
    let p = MonicPresentation::new(&f, "y").unwrap();
    let e = ord_d(&p, &Point::origin(1)).unwrap();
    ensure(ExtRational::from(e.ord_d.clone()) == ordd, || {
        format!("ord_d = {}", e.ord_d)
    })?;
    let phi = arc(field, &["t^2", "t^3"]);
    let c = normalized_contact(&g, &phi).unwrap();
    ensure(c.r == ExtRational::integer(r), || format!("r = {}", c.r))?;
    ensure(c.r_bar == ExtRational::ratio(r, 2), || format!("r_bar = {}", c.r_bar))?;
    ensure(c.rho == Order::Finite(r as u64), || {
        format!("rho (formula) = {}", c.rho)
    })?;
    let oracle = persistence_oracle(&f, &phi, NashOptions::default()).unwrap();
    ensure(oracle == r as u64, || format!("rho (blow-ups) = {oracle}"))?;
    let seq = nash_sequence(&f, &phi, NashOptions::default()).unwrap().sequence;
    ensure(seq == sequence, || format!("Nash sequence {seq:?}"))?;
    Ok(format!(
        "ord_d = {}, r = {}, r_bar = {}, rho = {} = {oracle}, sequence {seq:?}",
        e.ord_d, c.r, c.r_bar, c.rho
    ))
}

fn bundled_arcs(name: &str) -> Vec<Arc> {
    bundled(name).arcs.into_iter().map(|a| a.arc).collect()
}

fn criterion_1() -> Outcome {
    let g = ReesAlgebra::hypersurface(&poly("y^2 - x^3", Q), 2)
        .unwrap()
        .diff_closure();
    let expected = algebra("[y @ 1, x^2 @ 1, x^3 @ 2]", Q);
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let mut points = vec![Point::origin(2)];
    for s in 1..=6i64 {
        points.push(Point::from_ints(Q, &[s * s, s * s * s]));
    }
    while points.len() < 24 {
        let mut coord = || {
            let num = Q.int(rng.gen_range(-9..=9));
            let den = Q.int(rng.gen_range(1..=5));
            Q.div(&num, &den).unwrap()
        };
        points.push(Point::new(vec![coord(), coord()]));
    }
    same_observer(&g, &expected, &points)?;
    let arcs = bundled_arcs("cusp_char0");
    same_contact(&g, &expected, &arcs)?;
    let numbers = cusp_numbers(Q, 3, &[2, 2, 2, 1], ExtRational::ratio(3, 2))?;
    Ok(format!(
        "observer agrees at {} points and on {} bundled arcs; {numbers}",
        points.len(),
        arcs.len()
    ))
}

fn criterion_2() -> Outcome {
    let f = poly("y^2 - x^3", F2);
    let g = ReesAlgebra::hypersurface(&f, 2).unwrap().diff_closure();
    let expected = algebra("[x^2 @ 1, y^2 - x^3 @ 2]", F2);
    let points: Vec<Point> = [[0, 0], [0, 1], [1, 0], [1, 1]]
        .iter()
        .map(|p| Point::from_ints(F2, p))
        .collect();
    same_observer(&g, &expected, &points)?;
    let mut arcs = bundled_arcs("cusp_char2");
    for (a, b) in [(1, 1), (1, 2), (2, 1), (3, 2), (2, 5), (4, 6)] {
        arcs.push(arc(F2, &[&format!("t^{a}"), &format!("t^{b}")]));
    }
    same_contact(&g, &expected, &arcs)?;
    let e = ord_d(&MonicPresentation::new(&f, "y").unwrap(), &Point::origin(1)).unwrap();
    let visible = ReesAlgebra::parse("[x^2 @ 1]", &var_names(&["x"]), F2).unwrap();
    ensure(e.algebra.normalized() == visible.normalized(), || {
        format!("visible elimination gave {}", e.algebra)
    })?;
    let numbers = cusp_numbers(F2, 4, &[2, 2, 2, 2, 1], ExtRational::integer(2))?;
    Ok(format!(
        "observer agrees at all F_2 points and on {} arcs; elimination {} via {}; {numbers}",
        arcs.len(),
        e.algebra,
        e.method
    ))
}

fn criterion_3() -> Outcome {
    let mut instances = 0;
    let mut arcs = 0;
    let mut families = BTreeSet::new();
    for (name, _) in BUNDLED {
        let problem = bundled(name);
        let f = &problem.local_equation;
        let m = f.order_at_origin().finite().unwrap() as u32;
        let g = ReesAlgebra::hypersurface(f, m).unwrap().diff_closure();
        ensure(problem.arcs.len() >= 3, || {
            format!("{name} has {} arcs", problem.arcs.len())
        })?;
        let reparametrized = problem.arcs.iter().any(|a| {
            problem
                .arcs
                .iter()
                .any(|b| (2..=3).any(|n| a.arc.reparametrize(n) == b.arc))
        });
        ensure(reparametrized, || format!("{name} has no reparametrized arc"))?;
        for a in &problem.arcs {
            let oracle = persistence_oracle(f, &a.arc, long_runs()).map_err(|e| format!("{name}/{}: {e}", a.name))?;
            let formula = normalized_contact(&g, &a.arc).unwrap().r.floor();
            ensure(Order::Finite(oracle) == formula, || {
                format!("{name}/{}: blow-ups give {oracle}, contact gives {formula}", a.name)
            })?;
            arcs += 1;
        }
        instances += 1;
        families.insert((problem.equation_text.clone(), problem.field.characteristic()));
    }
    ensure(instances >= 8, || format!("only {instances} instances"))?;
    Ok(format!(
        "{instances} instances ({} equation/characteristic pairs), {arcs} arcs, all exact matches",
        families.len()
    ))
}

fn criterion_4() -> Outcome {
    let cfg = RunConfig {
        analyses: Some(vec![Analysis::Verify]),
        ..RunConfig::default()
    };
    let mut total = 0;
    for (name, _) in BUNDLED {
        let report = run(&bundled(name), &cfg);
        ensure(report.status == Status::Pass, || {
            format!("{name}: status {}", report.status)
        })?;
        let v = report.verify.as_ref().unwrap();
        ensure(v.arcs_checked >= 100, || format!("{name}: {} arcs", v.arcs_checked))?;
        ensure(v.lower_bound, || format!("{name}: a sampled arc lies below ord_d"))?;
        ensure(v.observed_min == v.ord_d, || {
            format!("{name}: min {} vs ord_d {}", v.observed_min, v.ord_d)
        })?;
        ensure(v.minimizing_r_bar == v.ord_d, || {
            format!(
                "{name}: minimizing arc gives {} vs ord_d {}",
                v.minimizing_r_bar, v.ord_d
            )
        })?;
        total += v.arcs_checked;
    }
    Ok(format!(
        "{} presentations, {total} arcs checked, sampled min = ord_d = minimizing arc value each time",
        BUNDLED.len()
    ))
}

fn criterion_5() -> Outcome {
    let mut rows = Vec::new();
    for (field, label) in [(Q, "Q"), (F2, "F_2")] {
        let f = poly("y^2 - x^3", field);
        let g = ReesAlgebra::hypersurface(&f, 2).unwrap().diff_closure();
        let phi = arc(field, &["t^2", "t^3"]);
        let r = contact_order(&g, &phi).unwrap();
        let r_value = r.finite().unwrap().clone();
        for n in 1..=8u64 {
            let rho = persistence_oracle(&f, &phi.reparametrize(n as usize), long_runs()).unwrap();
            ensure(Order::Finite(rho) == r.mul_int(n).floor(), || {
                format!("{label}, n = {n}: rho = {rho}, floor(n r) = {}", r.mul_int(n).floor())
            })?;
            let gap = ExtRational::integer(rho as i64).div_int(n).finite().unwrap() - &r_value;
            let bound = ExtRational::ratio(1, n as i64).finite().unwrap().clone();
            ensure(-bound.clone() < gap && gap < bound, || {
                format!("{label}, n = {n}: rho/n - r = {gap}")
            })?;
        }
        rows.push(format!("{label}: r = {r}, rho_n = {}n", r));
    }
    Ok(format!("n = 1..8, {}", rows.join("; ")))
}

fn term(field: FieldSpec, multiplier: &str, factors: &[usize]) -> WitnessTerm {
    WitnessTerm {
        multiplier: poly(multiplier, field),
        factors: factors.to_vec(),
    }
}

fn test_arcs(field: FieldSpec) -> Vec<Arc> {
    let mut arcs = Vec::new();
    for a in 1..=3 {
        for b in 1..=3 {
            arcs.push(arc(field, &[&format!("t^{a}"), &format!("t^{b}")]));
        }
    }
    arcs.push(arc(field, &["t + t^2", "t"]));
    arcs.push(arc(field, &["t^2", "t^3 + t^4"]));
    arcs.push(arc(field, &["t", "0"]));
    arcs.push(arc(field, &["t^2 + t^5", "t^7"]));
    arcs
}

fn criterion_6() -> Outcome {
    let triples: Vec<(&str, ReesAlgebra, MultiPoly, u32, DependenceWitness)> = vec![
        (
            "xy over [x^2 @ 2, y^2 @ 2]",
            algebra("[x^2 @ 2, y^2 @ 2]", Q),
            poly("x*y", Q),
            2,
            DependenceWitness {
                coefficients: vec![vec![], vec![term(Q, "-1", &[0, 1])]],
            },
        ),
        (
            "x over [x^2 @ 2]",
            algebra("[x^2 @ 2]", Q),
            poly("x", Q),
            1,
            DependenceWitness {
                coefficients: vec![vec![], vec![term(Q, "-1", &[0])]],
            },
        ),
        (
            "x*y^2 over [x^3 @ 3, y^3 @ 3]",
            algebra("[x^3 @ 3, y^3 @ 3]", Q),
            poly("x*y^2", Q),
            3,
            DependenceWitness {
                coefficients: vec![vec![], vec![], vec![term(Q, "-1", &[0, 1, 1])]],
            },
        ),
        (
            "x + y over [x^2 @ 2, y^2 @ 2] in F_2",
            algebra("[x^2 @ 2, y^2 @ 2]", F2),
            poly("x + y", F2),
            1,
            DependenceWitness {
                coefficients: vec![vec![], vec![term(F2, "1", &[0]), term(F2, "1", &[1])]],
            },
        ),
    ];
    let mut arcs_checked = 0;
    for (label, g, h, w, witness) in &triples {
        let arcs = test_arcs(g.field());
        ensure(arcs.len() >= 10, || format!("{label}: too few arcs"))?;
        let unchanged = integral_invariance_check(g, (h, *w), witness, &arcs).map_err(|e| format!("{label}: {e}"))?;
        ensure(unchanged, || format!("{label}: contact order changed"))?;
        arcs_checked += arcs.len();
    }
    Ok(format!(
        "{} triples, {arcs_checked} arcs, contact orders unchanged",
        triples.len()
    ))
}

fn fields() -> impl Strategy<Value = FieldSpec> {
    prop_oneof![Just(Q), Just(F2), Just(FieldSpec::Prime(3)), Just(FieldSpec::Prime(5))]
}

fn polys(n: usize) -> impl Strategy<Value = (FieldSpec, Vec<MultiPoly>)> {
    fields().prop_flat_map(move |field| {
        let one = prop::collection::vec((0u32..=4, 0u32..=4, -5i64..=5), 0..6).prop_map(move |terms| {
            MultiPoly::from_terms(
                &xy(),
                field,
                terms.into_iter().map(|(a, b, c)| (vec![a, b], field.int(c))),
            )
        });
        (Just(field), prop::collection::vec(one, n))
    })
}

const CASES: u32 = 128;

/// Runs `test` on `CASES` seeded inputs and returns the number of cases run.
fn property<S: Strategy>(
    seed: u8,
    strategy: S,
    test: impl Fn(S::Value) -> Result<(), TestCaseError>,
) -> Result<u32, String> {
    let config = Config {
        cases: CASES,
        failure_persistence: None,
        ..Config::default()
    };
    let mut runner = TestRunner::new_with_rng(config, TestRng::from_seed(RngAlgorithm::ChaCha, &[seed; 32]));
    let count = Cell::new(0u32);
    runner
        .run(&strategy, |v| {
            count.set(count.get() + 1);
            test(v)
        })
        .map_err(|e| e.to_string())?;
    Ok(count.get())
}

fn criterion_7() -> Outcome {
    let leibniz = property(1, (polys(2), 0u32..4, 0u32..4), |((field, ps), a, b)| {
        let (f, g) = (&ps[0], &ps[1]);
        let mut rhs = MultiPoly::zero(&xy(), field);
        for i in 0..=a {
            for j in 0..=b {
                rhs = &rhs + &(&f.hasse(&[i, j]) * &g.hasse(&[a - i, b - j]));
            }
        }
        prop_assert_eq!((f * g).hasse(&[a, b]), rhs);
        Ok(())
    })
    .map_err(|e| format!("Hasse-Leibniz: {e}"))?;

    let coords = (-3i64..=3, -3i64..=3);
    let translation = property(2, (polys(1), coords.clone(), coords), |((field, ps), p, q)| {
        let f = &ps[0];
        let pp = Point::from_ints(field, &[p.0, p.1]);
        let qq = Point::from_ints(field, &[q.0, q.1]);
        let sum = Point::from_ints(field, &[p.0 + q.0, p.1 + q.1]);
        prop_assert_eq!(
            f.translate(&pp).unwrap().translate(&qq).unwrap(),
            f.translate(&sum).unwrap()
        );
        Ok(())
    })
    .map_err(|e| format!("translation composition: {e}"))?;

    let orders = property(3, polys(2), |(_, ps)| {
        let (f, g) = (&ps[0], &ps[1]);
        prop_assert_eq!(
            (f * g).order_at_origin(),
            f.order_at_origin().checked_add(g.order_at_origin())
        );
        Ok(())
    })
    .map_err(|e| format!("order multiplicativity: {e}"))?;

    let wobble = prop::collection::vec(-2i64..=2, 1..4);
    let monotone = property(4, (fields(), wobble), |(field, w)| {
        let ws = TruncatedSeries::exact(field, std::iter::once(0).chain(w).map(|c| field.int(c)).collect());
        if ws.is_exact_zero() {
            return Ok(());
        }
        let phi = Arc::new(&xy(), field, vec![ws.pow(2), ws.pow(3)]).unwrap();
        let report = nash_sequence(&poly("y^2 - x^3", field), &phi, long_runs()).unwrap();
        prop_assert!(!report.truncated);
        prop_assert!(report.sequence.windows(2).all(|p| p[0] >= p[1]));
        Ok(())
    })
    .map_err(|e| format!("Nash monotonicity: {e}"))?;

    let idempotent = property(5, (polys(2), 1u32..4, 1u32..4), |((field, ps), w1, w2)| {
        let g = ReesAlgebra::new(&xy(), field, [(ps[0].clone(), w1), (ps[1].clone(), w2)]).unwrap();
        let once = g.diff_closure();
        prop_assert_eq!(once.diff_closure(), once);
        Ok(())
    })
    .map_err(|e| format!("diff_closure idempotence: {e}"))?;

    Ok(format!(
        "cases: Hasse-Leibniz {leibniz}, translation {translation}, orders {orders}, Nash monotonicity {monotone}, diff_closure idempotence {idempotent}"
    ))
}

fn main() {
    let criteria: [Criterion; 7] = [
        ("cusp over Q", criterion_1),
        ("cusp over F_2", criterion_2),
        ("blow-up persistence equals floor of contact", criterion_3),
        ("sampled minimum equals ord_d", criterion_4),
        ("limit of persistence", criterion_5),
        ("integral invariance", criterion_6),
        ("property suites", criterion_7),
    ];
    let mut failed = 0;
    for (i, (label, check)) in criteria.iter().enumerate() {
        match check() {
            Ok(detail) => println!("criterion {} ({label}): PASS  {detail}", i + 1),
            Err(detail) => {
                failed += 1;
                println!("criterion {} ({label}): FAIL  {detail}", i + 1);
            }
        }
    }
    println!(
        "acceptance: {} of {} criteria pass",
        criteria.len() - failed,
        criteria.len()
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
