//! Acceptance criteria, one line each. Exits nonzero if any criterion fails.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use cantorcert::cantor::enumerate_rank;
use cantorcert::exactmath::rational::{int, ratio};
use cantorcert::images::{power_refinement_hypothesis, refinement_hypothesis};
use cantorcert::thresholds::{
    catalog_ids, check_hk_xk, check_lambda_k_monotone, check_xk_below_lambda_k, lambda_k_poly, r_k_poly,
};
use cantorcert::{
    build_witness_tree, certify_circle_continuum, certify_fk_coverage, certify_st_continuum, decompose_f, decompose_fk,
    find_gaps, image_f, image_fk, image_union_fk, lambda_k, named_threshold, parse_rational, sign_at, verify_tree,
    Interval, IntervalUnion, Rational, Sign,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

struct Outcome {
    pass: bool,
    detail: String,
}

/// Name, time budget and check.
type Criterion = (&'static str, Duration, fn() -> Outcome);

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        pass,
        detail: detail.into(),
    }
}

fn width() -> Rational {
    ratio(1, 1_000_000_000)
}

fn lam(s: &str) -> Rational {
    parse_rational(s).unwrap()
}

fn threshold_regression() -> Outcome {
    let tol = ratio(5, 10_000);
    let mut misses = Vec::new();
    let ids = catalog_ids();
    for id in &ids {
        let report = named_threshold(*id, &width()).unwrap();
        let dev = report.deviation().expect("catalog entries carry a printed value");
        if dev > tol {
            misses.push(format!(
                "{id} midpoint {:.6} vs {} (|Δ| {:.6})",
                report.midpoint_f64(),
                report.reference.unwrap(),
                cantorcert::exactmath::rational::to_f64(&dev)
            ));
        }
    }
    if misses.is_empty() {
        outcome(true, format!("{} entries within 5e-4", ids.len()))
    } else {
        outcome(
            false,
            format!("{}/{} outside 5e-4: {}", misses.len(), ids.len(), misses.join("; ")),
        )
    }
}

fn lambda_k_solver() -> Outcome {
    let b = lambda_k(2, &width()).unwrap();
    // 2√3 − 3 ∈ (lo, hi)  ⇔  (lo+3)² < 12 < (hi+3)²
    let three = int(3);
    let sq = |x: &Rational| (x + &three) * (x + &three);
    let contains = sq(&b.lo) < int(12) && int(12) < sq(&b.hi);
    let monotone = check_lambda_k_monotone(64).unwrap();
    // λ_2: increasing on (0, 1/2), negative at 46/100; r_2: decreasing, negative at 32/100.
    let lk_above = sign_at(&lambda_k_poly(2), &ratio(46, 100)) == Sign::Negative
        && sign_at(&lambda_k_poly(2), &ratio(1, 2)) == Sign::Positive;
    let rk_below =
        sign_at(&r_k_poly(2), &ratio(32, 100)) == Sign::Negative && sign_at(&r_k_poly(2), &int(0)) == Sign::Positive;
    outcome(
        contains && monotone && lk_above && rk_below,
        format!(
            "contains 2√3-3: {contains}, monotone to 64: {monotone}, λ_2 > 0.46: {lk_above}, r_2 < 0.32: {rk_below}"
        ),
    )
}

fn exact_gaps() -> Outcome {
    let third = ratio(1, 3);
    let iv = |a: Rational, b: Rational| Interval::new(a, b).unwrap();
    let expected = IntervalUnion::normalize([
        iv(int(0), ratio(2401, 19683)),
        iv(ratio(32, 243), ratio(2401, 6561)),
        iv(ratio(8192, 19683), int(1)),
    ])
    .unwrap();
    let k4 = image_union_fk(4, &third, 2).unwrap();
    let k3 = image_union_fk(3, &third, 2).unwrap();
    let whole = IntervalUnion::single(iv(int(0), int(1)));
    outcome(
        k4 == expected && k3 == whole,
        format!("k=4 has {} parts, k=3 is [0,1]: {}", k4.len(), k3 == whole),
    )
}

fn st_boundary() -> Outcome {
    let passes: Vec<bool> = ["4302/10000", "44/100", "46/100", "49/100"]
        .iter()
        .map(|s| certify_st_continuum(&lam(s)).is_certified())
        .collect();
    let low = certify_st_continuum(&lam("42/100"));
    let names_row = low.checks.iter().any(|c| !c.holds && c.label.starts_with("table1_row"));
    let first = low.first_failure().map(|c| c.label.clone()).unwrap_or_default();
    outcome(
        passes.iter().all(|&p| p) && !low.is_certified() && names_row,
        format!("passes {passes:?}; 0.42 refuted naming a table1_row: {names_row} (first failure: {first})"),
    )
}

fn fk_boundary() -> Outcome {
    let ok = |k, s: &str| certify_fk_coverage(k, &lam(s)).unwrap().is_certified();
    let verdicts = [ok(2, "47/100"), ok(3, "48/100"), !ok(2, "45/100"), !ok(3, "47/100")];
    outcome(verdicts.iter().all(|&v| v), format!("expected verdicts {verdicts:?}"))
}

fn circle_boundary() -> Outcome {
    let hi = certify_circle_continuum(&lam("46/100")).is_certified();
    let lo = certify_circle_continuum(&lam("45/100")).is_certified();
    outcome(hi && !lo, format!("0.46 certified: {hi}, 0.45 certified: {lo}"))
}

fn witness_suite() -> Outcome {
    let lambda = ratio(9, 20);
    let mut notes = Vec::new();
    let mut pass = true;
    for t in ["1/2", "1/100", "9/10"] {
        match build_witness_tree(&lambda, &lam(t), 12) {
            Ok(tree) => {
                let leaves = tree.leaves();
                let mut keys: Vec<_> = leaves.iter().map(|l| (&l.address_i, &l.address_j)).collect();
                keys.sort();
                keys.dedup();
                let ok = leaves.len() == 4096 && keys.len() == 4096 && verify_tree(&tree);
                pass &= ok;
                notes.push(format!("t={t}: {} leaves, ok {ok}", leaves.len()));
            }
            Err(e) => {
                pass = false;
                notes.push(format!("t={t}: {e}"));
            }
        }
    }
    outcome(pass, notes.join(", "))
}

fn oracle_equivalence() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(20_240_917);
    let pairs: Vec<_> = (1..=4)
        .flat_map(|n| {
            let row = enumerate_rank(n);
            row.iter()
                .flat_map(|i| row.iter().map(move |j| (i.clone(), j.clone())))
                .collect::<Vec<_>>()
        })
        .collect();
    let (mut f_checked, mut fk_checked, mut mismatches) = (0usize, 0usize, Vec::new());
    for _ in 0..50 {
        let q: i64 = rng.gen_range(1_000..100_000);
        let lo = 43 * q / 100 + 1;
        let hi = (q - 1) / 2;
        let lambda = ratio(rng.gen_range(lo..=hi), q);
        for (i, j) in &pairs {
            let (ii, jj) = (i.eval_at(&lambda), j.eval_at(&lambda));
            if refinement_hypothesis(i, j, &lambda).unwrap().holds() {
                f_checked += 1;
                let lhs = decompose_f(i, j, &lambda).unwrap().union();
                if lhs != IntervalUnion::single(image_f(&ii, &jj).unwrap()) {
                    mismatches.push(format!("f λ={lambda} {} {}", i.address(), j.address()));
                }
            }
            for k in 2..=4 {
                if power_refinement_hypothesis(k, i, j, &lambda).unwrap().holds() {
                    fk_checked += 1;
                    let lhs = decompose_fk(k, i, j, &lambda).unwrap().union();
                    if lhs != IntervalUnion::single(image_fk(k, &ii, &jj).unwrap()) {
                        mismatches.push(format!("f_{k} λ={lambda} {} {}", i.address(), j.address()));
                    }
                }
            }
        }
    }
    let nonvacuous = f_checked > 0 && fk_checked > 0;
    let detail = format!(
        "{f_checked} f pairs, {fk_checked} f_k pairs, {} mismatches{}",
        mismatches.len(),
        mismatches.first().map(|m| format!(" (first: {m})")).unwrap_or_default()
    );
    outcome(nonvacuous && mismatches.is_empty(), detail)
}

fn refutation_cross_check() -> Outcome {
    let third = ratio(1, 3);
    let cert = certify_fk_coverage(4, &third).unwrap();
    let report = find_gaps(&image_union_fk(4, &third, 2).unwrap());
    outcome(
        !cert.is_certified() && report.refutes_coverage(),
        format!(
            "certificate refused: {}, rank-2 gaps: {}",
            !cert.is_certified(),
            report.gaps.len()
        ),
    )
}

fn hk_xk() -> Outcome {
    let rows = check_hk_xk(64).unwrap();
    let below = check_xk_below_lambda_k(64).unwrap();
    outcome(rows && below, format!("h_k(x_k) identity: {rows}, x_k < λ_k: {below}"))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        ("threshold regression", Duration::from_secs(5), threshold_regression),
        ("lambda_k solver", Duration::from_secs(5), lambda_k_solver),
        ("exact gap reproduction", Duration::from_secs(1), exact_gaps),
        ("S_t certificate boundary", Duration::from_secs(1), st_boundary),
        ("f_k certificate boundary", Duration::from_secs(1), fk_boundary),
        ("circle certificate", Duration::from_secs(1), circle_boundary),
        ("witness tree suite", Duration::from_secs(30), witness_suite),
        ("oracle equivalence", Duration::from_secs(60), oracle_equivalence),
        ("refutation cross-check", Duration::MAX, refutation_cross_check),
        ("h_k / x_k check", Duration::from_secs(5), hk_xk),
    ];
    let mut failed = 0;
    for (n, (name, budget, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let out = run();
        let elapsed = start.elapsed();
        let in_time = elapsed < *budget;
        let pass = out.pass && in_time;
        failed += usize::from(!pass);
        let timing = if in_time {
            String::new()
        } else {
            format!(" [over budget {budget:?}]")
        };
        println!(
            "criterion {:>2} {} {name}: {} ({:.2}s){timing}",
            n + 1,
            if pass { "PASS" } else { "FAIL" },
            out.detail,
            elapsed.as_secs_f64()
        );
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
