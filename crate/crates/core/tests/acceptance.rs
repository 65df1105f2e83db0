//! Acceptance criteria: one PASS/FAIL line each, nonzero exit on failure.

mod common;

use std::collections::BTreeMap;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::thread;
use std::time::{Duration, Instant};

use common::{ctx, p, rf, ALL};
use invfield::cli::report::{run, AnalysisReport, Command, RunOptions};
use invfield::cli::load_spec;
use invfield::fieldgen::{homogeneous_invariants, profile_strictly_increasing};
use invfield::grouprep::RepContext;
use invfield::multipoly::{
    buchberger, divide, is_groebner_basis, Monomial, OrderKind, Polynomial, TermOrder, XPoly,
};
use invfield::orbitideal::{brute_force_kernel, build_orbit_ideal, xi_map, OrbitIdealReport};
use invfield::scalars::{Cyclotomic, Field, Rational};
use invfield::spanning::{analyze_span, compute_dreg, compute_dspan, galois_rank, RankMode};
use proptest::prelude::*;
use proptest::test_runner::{Config, RngAlgorithm, TestRng, TestRunner};

type Outcome = Result<String, String>;

/// Orbit-ideal allowance; only the alternating group is expected to hit it.
const BUDGET: Duration = Duration::from_secs(20);
const CASES: u32 = 128;
const SEED: [u8; 32] = *b"invariant-field-acceptance-seed!";

macro_rules! ensure {
    ($cond:expr, $($fmt:tt)+) => {
        if !$cond {
            return Err(format!($($fmt)+));
        }
    };
}

fn verify(name: &str) -> Result<AnalysisReport, String> {
    let spec = load_spec(name).map_err(|e| e.to_string())?;
    let opts = RunOptions {
        orbit_budget: Some(BUDGET),
        ..RunOptions::default()
    };
    run(Command::Verify, &spec, &opts).map_err(|e| format!("{name}: {e}"))
}

fn all_reports() -> BTreeMap<String, Result<AnalysisReport, String>> {
    thread::scope(|s| {
        let hs: Vec<_> = ALL
            .iter()
            .map(|n| (n.to_string(), s.spawn(move || verify(n))))
            .collect();
        hs.into_iter()
            .map(|(n, h)| (n, h.join().unwrap_or_else(|_| Err("panicked".into()))))
            .collect()
    })
}

type Reports = BTreeMap<String, Result<AnalysisReport, String>>;

fn report<'a>(reports: &'a Reports, name: &str) -> Result<&'a AnalysisReport, String> {
    reports
        .get(name)
        .ok_or_else(|| format!("{name}: no report"))?
        .as_ref()
        .map_err(|e| e.clone())
}

fn beta(r: &AnalysisReport) -> Option<u32> {
    r.bounds.as_ref().and_then(|b| b.beta_field_upper)
}

fn d_span(r: &AnalysisReport) -> u32 {
    r.span.as_ref().map(|s| s.d_span).unwrap_or(u32::MAX)
}

fn criterion_1(reports: &Reports) -> Outcome {
    let c = ctx("q8");
    let span = analyze_span(&c, RankMode::Exact).map_err(|e| e.to_string())?;
    let oi = build_orbit_ideal(&c, &span).map_err(|e| e.to_string())?;
    ensure!(span.d_span == 3, "D_span = {}", span.d_span);
    ensure!(oi.d_i == 4, "D_I = {}", oi.d_i);
    ensure!(oi.standard_monomials.len() == 8, "{} standard monomials", oi.standard_monomials.len());
    ensure!(oi.order.kind() == OrderKind::Grlex, "order {}", oi.order.kind());
    let mut lms = oi.summary(&c).leading_monomials;
    lms.sort();
    ensure!(lms == ["X*Y^3", "X^2*Y", "X^3", "Y^4"], "initial ideal {lms:?}");

    let sta = c.irrep_index("Sta").ok_or("no Sta")?;
    let rec = oi
        .records
        .iter()
        .find(|r| r.irrep == sta && r.phi.degree == 1 && r.phi.images[0] == p(&c, "x"))
        .ok_or("no record for the degree-1 copy")?;
    let psi = &span.witness.components[sta].embeddings;
    for (a, e) in rec.solution.iter().zip(psi) {
        let want = if e.images[0] == p(&c, "y^3") {
            rf(&c, "-2*x*y", "x^4 - y^4")
        } else if e.images[0] == p(&c, "x^2*y") {
            rf(&c, "x^4 + y^4", "x^5*y - x*y^5")
        } else {
            return Err(format!("unexpected witness {:?}", e.images));
        };
        ensure!(a == &want, "coefficient {} differs", a.format_with(c.var_names()));
    }

    let r = report(reports, "q8")?;
    ensure!(beta(r) == Some(6), "beta_field = {:?}", beta(r));
    ensure!(r.bounds.as_ref().map(|b| b.main_bound) == Some(7), "main bound");
    ensure!(r.passed(), "a check failed");
    Ok("D_span=3, D_I=4, 8 standard monomials, in(I)={Y^4, XY^3, X^3, X^2Y}, beta=6 <= 7, a1 and a2 exact".into())
}

fn criterion_2(reports: &Reports) -> Outcome {
    let mut seen = Vec::new();
    for n in [3u32, 5, 7, 9] {
        let r = report(reports, &format!("c{n}"))?;
        ensure!(d_span(r) == (n - 1) / 2, "c{n}: D_span = {}", d_span(r));
        ensure!(beta(r) == Some(n), "c{n}: beta = {:?}", beta(r));
        ensure!(n == 2 * d_span(r) + 1, "c{n}: not sharp");
        seen.push(format!("C{n}: D_span={} beta={n}", (n - 1) / 2));
    }
    Ok(seen.join(", "))
}

fn criterion_3(reports: &Reports) -> Outcome {
    let mut seen = Vec::new();
    for (name, want) in [("c2", 2), ("c3reg", 3), ("c4reg", 3)] {
        let r = report(reports, name)?;
        ensure!(d_span(r) == 1, "{name}: D_span = {}", d_span(r));
        ensure!(beta(r) == Some(want), "{name}: beta = {:?}", beta(r));
        seen.push(format!("{name}: beta={want}"));
    }
    Ok(format!("D_span=1 for all; {}", seen.join(", ")))
}

fn criterion_4(reports: &Reports) -> Outcome {
    let c = ctx("a4perm");
    let d_reg = compute_dreg(&c).map_err(|e| e.to_string())?;
    let d_span = compute_dspan(&c, RankMode::Exact).map_err(|e| e.to_string())?;
    ensure!(d_reg == 2, "D_reg = {d_reg}");
    ensure!(d_span == 3, "D_span = {d_span}");

    let w = c.irrep_index("W").ok_or("no W")?;
    let copy = c.hom_basis(w, 1);
    ensure!(copy.len() == 1, "{} degree-1 copies of W", copy.len());
    let inv = homogeneous_invariants(&c, 1);
    ensure!(inv.len() == 1, "{} linear invariants", inv.len());
    let mut family = copy[0].images.clone();
    family.extend(copy[0].images.iter().map(|f| f * &inv[0]));
    let rank = galois_rank(&c, &family, RankMode::Exact);
    ensure!(rank == 3, "galois_rank = {rank}");

    let r = report(reports, "a4perm")?;
    let oi = match (&r.orbit_ideal, &r.orbit_ideal_skipped) {
        (Some(o), _) => format!("orbit ideal computed, D_I={}", o.d_i),
        (None, Some(why)) => format!("orbit ideal flagged: {why}"),
        (None, None) => return Err("orbit ideal neither computed nor flagged".into()),
    };
    Ok(format!("D_reg=2, D_span=3, dependence witness galois_rank 3 (not 6); {oi}"))
}

fn criterion_5(reports: &Reports) -> Outcome {
    let mut skipped = Vec::new();
    for name in ALL {
        let r = report(reports, name)?;
        let s = r.span.as_ref().ok_or("no span")?;
        let g = r.group_order as u32;
        ensure!(s.d_reg <= s.d_span, "{name}: D_reg {} > D_span {}", s.d_reg, s.d_span);
        ensure!(s.d_span + 1 <= g, "{name}: D_span {} > |G|-1", s.d_span);
        ensure!(
            profile_strictly_increasing(&s.profile, r.group_order),
            "{name}: profile {:?}",
            s.profile
        );
        match &r.orbit_ideal {
            Some(o) => ensure!(o.d_i <= s.d_span + 1, "{name}: D_I {} > D_span+1", o.d_i),
            None => skipped.push(name.to_string()),
        }
        let b = beta(r).ok_or_else(|| format!("{name}: no beta"))?;
        ensure!(b <= 2 * s.d_span + 1, "{name}: beta {b} > 2 D_span + 1");
        ensure!(r.passed(), "{name}: report has a failed check");
    }
    let note = if skipped.is_empty() {
        String::new()
    } else {
        format!("; D_I not computed (budget) for {}", skipped.join(", "))
    };
    Ok(format!("{} fixtures{note}", ALL.len()))
}

fn criterion_6() -> Outcome {
    for name in ["trivial", "c2", "c3_1d"] {
        let c = ctx(name);
        let span = analyze_span(&c, RankMode::Exact).map_err(|e| e.to_string())?;
        let oi = build_orbit_ideal(&c, &span).map_err(|e| e.to_string())?;
        let oracle = buchberger(&brute_force_kernel(&c, span.d_span + 1), &oi.order);
        ensure!(oracle == oi.groebner_basis, "{name}: bases differ");
    }
    Ok("trivial, c2, c3_1d: identical reduced Groebner bases".into())
}

// Property suites

fn runner(salt: u8) -> TestRunner {
    let mut seed = SEED;
    seed[0] ^= salt;
    TestRunner::new_with_rng(
        Config {
            cases: CASES,
            failure_persistence: None,
            ..Config::default()
        },
        TestRng::from_seed(RngAlgorithm::ChaCha, &seed),
    )
}

fn check<S: Strategy>(
    name: &str,
    salt: u8,
    strategy: S,
    test: impl Fn(S::Value) -> Result<(), TestCaseError>,
) -> Result<String, String> {
    runner(salt)
        .run(&strategy, test)
        .map(|_| format!("{name} ({CASES})"))
        .map_err(|e| format!("{name}: {e}"))
}

fn arb_cyclotomic(m: u32) -> impl Strategy<Value = Cyclotomic> {
    let phi = invfield::scalars::euler_phi(m);
    prop::collection::vec((-6i64..=6, 1i64..=5), phi).prop_map(move |v| {
        let c: Vec<Rational> = v.into_iter().map(|(a, b)| Rational::new(a.into(), b.into())).collect();
        Cyclotomic::from_power_coeffs(m, &c)
    })
}

type QPoly = Polynomial<Rational>;

fn arb_qpoly(nvars: usize, max_deg: u32, max_terms: usize) -> impl Strategy<Value = QPoly> {
    prop::collection::vec((prop::collection::vec(0..=max_deg, nvars), -5i64..=5), 0..=max_terms).prop_map(
        move |ts| {
            QPoly::from_terms(
                nvars,
                ts.into_iter()
                    .map(|(e, c)| (Monomial::new(&e), Rational::from_integer(c.into()))),
            )
        },
    )
}

fn arb_order(nvars: usize) -> impl Strategy<Value = TermOrder> {
    prop_oneof![Just(OrderKind::Lex), Just(OrderKind::Grlex), Just(OrderKind::Grevlex)]
        .prop_map(move |k| TermOrder::new(k, nvars))
}

/// Random polynomial over the fixture's field in its variables.
fn arb_fixture_poly(c: &RepContext, max_deg: u32) -> impl Strategy<Value = invfield::multipoly::Poly> {
    let n = c.nvars();
    let m = c.group().field_order();
    prop::collection::vec((prop::collection::vec(0..=max_deg, n), arb_cyclotomic(m)), 1..=4).prop_map(
        move |ts| Polynomial::from_terms(n, ts.into_iter().map(|(e, c)| (Monomial::new(&e), c))),
    )
}

fn field_axioms() -> Outcome {
    let orders = prop_oneof![Just(1u32), Just(3), Just(4), Just(5), Just(8), Just(12)];
    let s = orders.prop_flat_map(|m| (arb_cyclotomic(m), arb_cyclotomic(m), arb_cyclotomic(m)));
    check("field axioms", 1, s, |(a, b, d)| {
        prop_assert_eq!(a.add(&b), b.add(&a));
        prop_assert_eq!(a.mul(&b), b.mul(&a));
        prop_assert_eq!(a.add(&b).add(&d), a.add(&b.add(&d)));
        prop_assert_eq!(a.mul(&b).mul(&d), a.mul(&b.mul(&d)));
        prop_assert_eq!(a.mul(&b.add(&d)), a.mul(&b).add(&a.mul(&d)));
        prop_assert!(a.add(&a.neg()).is_zero());
        prop_assert_eq!(a.mul(&a.one_like()), a.clone());
        if !a.is_zero() {
            prop_assert!(a.mul(&a.inv().unwrap()).is_one());
        }
        Ok(())
    })
}

fn division() -> Outcome {
    let s = (
        arb_qpoly(3, 3, 6),
        prop::collection::vec(arb_qpoly(3, 2, 3), 1..4),
        arb_order(3),
    );
    check("division re-expansion", 2, s, |(f, basis, order)| {
        let basis: Vec<QPoly> = basis.into_iter().filter(|b| !b.is_zero()).collect();
        if basis.is_empty() {
            return Ok(());
        }
        let (qs, r) = divide(&f, &basis, &order);
        let mut acc = r.clone();
        for (q, b) in qs.iter().zip(&basis) {
            acc = &acc + &(q * b);
        }
        prop_assert_eq!(acc, f);
        let leads: Vec<Monomial> = basis.iter().map(|b| b.leading_monomial(&order).unwrap().clone()).collect();
        for (m, _) in r.terms() {
            prop_assert!(!leads.iter().any(|l| l.divides(m)));
        }
        Ok(())
    })
}

fn s_polynomials(ideals: &[(String, OrbitIdealReport)]) -> Outcome {
    for (name, oi) in ideals {
        ensure!(is_groebner_basis(&oi.groebner_basis, &oi.order), "{name}: emitted basis fails");
    }
    let s = (prop::collection::vec(arb_qpoly(3, 2, 3), 1..4), arb_order(3));
    check("S-polynomial reduction", 3, s, |(gens, order)| {
        let gb = buchberger(&gens, &order);
        prop_assert!(is_groebner_basis(&gb, &order));
        Ok(())
    })
    .map(|s| format!("{s} + {} orbit-ideal bases", ideals.len()))
}

fn reynolds(contexts: &[(String, RepContext)]) -> Outcome {
    let idx = 0..contexts.len();
    let s = idx.prop_flat_map(|i| (Just(i), arb_fixture_poly(&contexts[i].1, 3), any::<prop::sample::Index>()));
    check("Reynolds idempotence and invariance", 4, s, |(i, f, gi)| {
        let c = &contexts[i].1;
        let a = c.action();
        let rf = a.reynolds(&f);
        prop_assert_eq!(a.reynolds(&rf), rf.clone());
        let g = gi.index(c.group().order());
        prop_assert_eq!(a.act(g, &rf), rf.clone());
        prop_assert!(a.is_invariant(&rf));
        Ok(())
    })
}

fn equivariance(contexts: &[(String, RepContext)]) -> Outcome {
    let idx = 0..contexts.len();
    let s = (idx, any::<prop::sample::Index>(), 0u32..=4, any::<prop::sample::Index>());
    check("hom_basis equivariance", 5, s, |(i, li, d, gi)| {
        let c = &contexts[i].1;
        let l = li.index(c.irreps().len());
        let g = gi.index(c.group().order());
        let rho = c.irreps()[l].matrix(g);
        for e in c.hom_basis(l, d).iter() {
            prop_assert!(c.is_equivariant(e));
            // g . phi(v_j) = phi(rho(g) v_j) = sum_k rho(g)_{kj} phi(v_k)
            for j in 0..e.images.len() {
                let lhs = c.action().act(g, &e.images[j]);
                let mut rhs = Polynomial::zero(c.nvars());
                for (k, img) in e.images.iter().enumerate() {
                    rhs = &rhs + &img.scale(rho.get(k, j));
                }
                prop_assert_eq!(lhs, rhs);
            }
        }
        Ok(())
    })
}

fn kernel_membership(ideals: &[(String, RepContext, OrbitIdealReport)]) -> Outcome {
    let idx = 0..ideals.len();
    let s = (idx, any::<prop::sample::Index>(), prop::collection::vec(0u32..=2, 4));
    check("orbit-ideal kernel membership and coefficient invariance", 6, s, |(i, gi, shift)| {
        let (_, c, oi) = &ideals[i];
        let gen = &oi.generators[gi.index(oi.generators.len())];
        prop_assert!(xi_map(&gen.xpoly).is_zero());
        for (_, coeff) in gen.xpoly.terms() {
            prop_assert!(c.action().is_invariant_rf(coeff));
        }
        // ideal membership survives multiplication by a monomial in X
        let n = c.nvars();
        let m = Monomial::new(&shift[..n]);
        let one = invfield::multipoly::RationalFunction::one(n);
        let moved: XPoly = gen.xpoly.mul_term(&m, &one);
        prop_assert!(xi_map(&moved).is_zero());
        Ok(())
    })
}

fn criterion_7() -> Outcome {
    let contexts: Vec<(String, RepContext)> = ["q8", "s3std", "c3", "c5", "c3reg", "c4reg", "a4perm"]
        .iter()
        .map(|n| (n.to_string(), ctx(n)))
        .collect();
    let ideals: Vec<(String, RepContext, OrbitIdealReport)> = ALL
        .iter()
        .filter(|n| **n != "a4perm")
        .map(|n| {
            let c = ctx(n);
            let span = analyze_span(&c, RankMode::Exact).expect("span");
            let oi = build_orbit_ideal(&c, &span).expect("orbit ideal");
            (n.to_string(), c, oi)
        })
        .collect();
    let bases: Vec<(String, OrbitIdealReport)> =
        ideals.iter().map(|(n, _, o)| (n.clone(), o.clone())).collect();
    let results = [
        field_axioms(),
        division(),
        s_polynomials(&bases),
        reynolds(&contexts),
        equivariance(&contexts),
        kernel_membership(&ideals),
    ];
    let mut ok = Vec::new();
    let mut bad = Vec::new();
    for r in results {
        match r {
            Ok(s) => ok.push(s),
            Err(e) => bad.push(e),
        }
    }
    if bad.is_empty() {
        Ok(ok.join("; "))
    } else {
        Err(bad.join("; "))
    }
}

fn guarded(f: impl FnOnce() -> Outcome) -> Outcome {
    catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|e| {
        let msg = e
            .downcast_ref::<String>()
            .cloned()
            .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
            .unwrap_or_else(|| "panic".into());
        Err(format!("panicked: {msg}"))
    })
}

fn main() {
    let start = Instant::now();
    let titles = [
        "Q8 end-to-end",
        "C_n family, n = 3, 5, 7, 9",
        "regular-representation fixtures",
        "A4 permutation representation",
        "inequalities over all fixtures",
        "oracle equivalence on tiny instances",
        "algebraic property suites",
    ];
    let (reports, independent) = thread::scope(|s| {
        let h4 = s.spawn(|| guarded(criterion_6));
        let h7 = s.spawn(|| guarded(criterion_7));
        let reports = all_reports();
        (reports, [h4.join().expect("joined"), h7.join().expect("joined")])
    });
    let [r6, r7] = independent;
    let results = [
        guarded(|| criterion_1(&reports)),
        guarded(|| criterion_2(&reports)),
        guarded(|| criterion_3(&reports)),
        guarded(|| criterion_4(&reports)),
        guarded(|| criterion_5(&reports)),
        r6,
        r7,
    ];
    let mut failed = 0;
    for (i, (title, r)) in titles.iter().zip(&results).enumerate() {
        match r {
            Ok(detail) => println!("[PASS] criterion {}: {title}: {detail}", i + 1),
            Err(why) => {
                failed += 1;
                println!("[FAIL] criterion {}: {title}: {why}", i + 1);
            }
        }
    }
    println!(
        "acceptance: {} of {} criteria passed in {:.1} s",
        results.len() - failed,
        results.len(),
        start.elapsed().as_secs_f64()
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
