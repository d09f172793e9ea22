use std::fmt::Write as _;

use cantorcert::coverage::{gap_report_csv, CheckRecord, ONE_SIDED_NOTE};
use cantorcert::exactmath::{to_decimal, to_fraction_string};
use cantorcert::images::{
    decompose_f, decompose_fk, double_cover_condition, double_cover_hypothesis, double_cover_window, image_f, image_fk,
    power_refinement_hypothesis, refinement_hypothesis, ConditionReport,
};
use cantorcert::thresholds::{r_k, threshold_table};
use cantorcert::witness::build_witness_tree_with_limit;
use cantorcert::{
    certify_circle_continuum, certify_fk_coverage, certify_st_continuum, enumerate_rank_at, find_gaps, image_union_fk,
    lambda_k as lambda_k_bracket, verify_tree, Address, BasicInterval, Error, Interval, IntervalUnion, Rational,
    Result,
};
use serde_json::{json, Value};

use crate::{CertifyKind, Format, GlobalOpts, Lemma, Outcome};

fn exact(x: &Rational) -> String {
    format!("{} (≈ {})", to_fraction_string(x), to_decimal(x, 6))
}

fn interval_text(iv: &Interval<Rational>) -> String {
    format!("[{}, {}]", exact(&iv.lo), exact(&iv.hi))
}

fn to_value<T: serde::Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("serializable")
}

fn print_json(v: &Value) {
    println!("{}", serde_json::to_string_pretty(v).expect("serializable"));
}

fn check_rank(g: &GlobalOpts, rank: usize) -> Result<()> {
    if rank > g.rank_limit {
        return Err(Error::InvalidArgument(format!(
            "rank {rank} exceeds the rank limit {} (raise it with --rank-limit or CANTORCERT_RANK_LIMIT)",
            g.rank_limit
        )));
    }
    Ok(())
}

pub fn thresholds(g: &GlobalOpts) -> Result<Outcome> {
    let table = threshold_table(&g.width)?;
    match g.format {
        Format::Json => print_json(&to_value(&table)),
        Format::Csv => {
            println!("id,polynomial,lo,hi,midpoint,printed,deviation");
            for r in &table {
                println!(
                    "{},{},{},{},{},{},{}",
                    r.id,
                    r.poly,
                    to_fraction_string(&r.bracket.lo),
                    to_fraction_string(&r.bracket.hi),
                    r.bracket.display_midpoint(),
                    r.reference.unwrap_or(""),
                    r.deviation().map(|d| to_decimal(&d, 6)).unwrap_or_default()
                );
            }
        }
        Format::Text => {
            println!(
                "{:<18} {:<38} {:>10} {:>8} {:>10}",
                "id", "polynomial (root in bracket)", "midpoint", "printed", "|Δ|"
            );
            for r in &table {
                println!(
                    "{:<18} {:<38} {:>10} {:>8} {:>10}",
                    r.id.to_string(),
                    r.poly.to_string(),
                    r.bracket.display_midpoint(),
                    r.reference.unwrap_or("-"),
                    r.deviation().map(|d| to_decimal(&d, 6)).unwrap_or_default()
                );
            }
            println!("bracket width ≤ {}", to_fraction_string(&g.width));
        }
    }
    Ok(Outcome::Ok)
}

pub fn lambda_k(g: &GlobalOpts, k: usize) -> Result<Outcome> {
    let lk = lambda_k_bracket(k, &g.width)?;
    let rk = r_k(k, &g.width)?;
    match g.format {
        Format::Json => print_json(&json!({
            "k": k,
            "lambda_k": { "bracket": to_value(&lk), "midpoint": lk.display_midpoint() },
            "r_k": { "bracket": to_value(&rk), "midpoint": rk.display_midpoint() },
        })),
        Format::Csv => {
            println!("name,k,lo,hi,midpoint");
            println!(
                "lambda_k,{k},{},{},{}",
                to_fraction_string(&lk.lo),
                to_fraction_string(&lk.hi),
                lk.display_midpoint()
            );
            println!(
                "r_k,{k},{},{},{}",
                to_fraction_string(&rk.lo),
                to_fraction_string(&rk.hi),
                rk.display_midpoint()
            );
        }
        Format::Text => {
            println!(
                "lambda_{k} ≈ {}  in [{}, {}]",
                lk.display_midpoint(),
                to_decimal(&lk.lo, 12),
                to_decimal(&lk.hi, 12)
            );
            println!(
                "r_{k}      ≈ {}  in [{}, {}]",
                rk.display_midpoint(),
                to_decimal(&rk.lo, 12),
                to_decimal(&rk.hi, 12)
            );
        }
    }
    Ok(Outcome::Ok)
}

pub fn certify(g: &GlobalOpts, kind: CertifyKind, lambda: &Rational, k: Option<usize>) -> Result<Outcome> {
    let cert = match kind {
        CertifyKind::St => certify_st_continuum(lambda),
        CertifyKind::Circle => certify_circle_continuum(lambda),
        CertifyKind::Fk => {
            let k = k.ok_or_else(|| Error::InvalidArgument("certify fk needs --k".into()))?;
            certify_fk_coverage(k, lambda)?
        }
    };
    match g.format {
        Format::Json => println!("{}", cert.to_json()),
        Format::Csv => print!("{}", cert.to_csv()),
        Format::Text => {
            print!("{}", cert.to_text());
            if let (CertifyKind::Fk, Some(k)) = (kind, cert.k) {
                let rank = 2.min(g.rank_limit);
                let report = find_gaps(&image_union_fk(k, lambda, rank)?);
                if report.refutes_coverage() {
                    println!(
                        "cross-check: the rank-{rank} union has {} gap(s), so f_{k}(C_λ, C_λ) ≠ [0, 1]",
                        report.gaps.len()
                    );
                } else {
                    println!("cross-check: the rank-{rank} union has no gaps");
                }
                println!("note: {ONE_SIDED_NOTE}");
            }
        }
    }
    Ok(if cert.is_certified() {
        Outcome::Ok
    } else {
        Outcome::NotCertified
    })
}

pub fn gaps(g: &GlobalOpts, lambda: &Rational, k: usize, rank: usize) -> Result<Outcome> {
    check_rank(g, rank)?;
    let report = find_gaps(&image_union_fk(k, lambda, rank)?);
    match g.format {
        Format::Json => print_json(&to_value(&report)),
        Format::Csv => print!("{}", gap_report_csv(&report)),
        Format::Text => {
            println!("f_{k} over rank-{rank} pairs at λ = {}", exact(lambda));
            println!("union ({} part(s)):", report.union.len());
            for p in report.union.parts() {
                println!("  {}", interval_text(p));
            }
            if report.gaps.is_empty() {
                println!("no gaps");
            } else {
                println!("gaps ({}):", report.gaps.len());
                for gap in &report.gaps {
                    println!("  ({}, {})", exact(&gap.lo), exact(&gap.hi));
                }
            }
            println!("note: {ONE_SIDED_NOTE}");
        }
    }
    Ok(Outcome::Ok)
}

pub fn witness(
    g: &GlobalOpts,
    lambda: &Rational,
    t: &Rational,
    depth: usize,
    leaves_only: bool,
    scan_limit: usize,
) -> Result<Outcome> {
    let tree = build_witness_tree_with_limit(lambda, t, depth, scan_limit)?;
    let verified = verify_tree(&tree);
    if leaves_only {
        print!("{}", tree.leaves_csv());
    } else {
        match g.format {
            Format::Json => println!("{}", tree.to_json()),
            Format::Csv => print!("{}", tree.leaves_csv()),
            Format::Text => {
                println!("witness tree for t = {} at λ = {}", exact(t), exact(lambda));
                println!(
                    "scale prefix n0 = {} (I-side addresses carry {} leading zeros)",
                    tree.scale_prefix, tree.scale_prefix
                );
                println!(
                    "depth {depth}: {} nodes, {} leaves",
                    tree.node_count(),
                    tree.leaves().len()
                );
                let diag = tree.diagonal_counts();
                println!(
                    "diagonal nodes per branch: max {}, total {}",
                    diag.iter().max().unwrap_or(&0),
                    diag.iter().sum::<usize>()
                );
                println!("verified: {verified}");
                for leaf in tree.leaves().iter().take(16) {
                    println!("  ({}, {})  rank {}", leaf.address_i, leaf.address_j, leaf.rank);
                }
                if tree.leaves().len() > 16 {
                    println!("  … ({} more; use --leaves-only for all)", tree.leaves().len() - 16);
                }
            }
        }
    }
    Ok(if verified { Outcome::Ok } else { Outcome::NotCertified })
}

pub fn enumerate(g: &GlobalOpts, rank: usize, lambda: &Rational) -> Result<Outcome> {
    check_rank(g, rank)?;
    let addresses = Address::empty().descendants(rank);
    let intervals = enumerate_rank_at(rank, lambda);
    match g.format {
        Format::Json => {
            let rows: Vec<Value> = addresses
                .iter()
                .zip(&intervals)
                .map(|(a, iv)| json!({ "address": a.to_string(), "interval": to_value(iv) }))
                .collect();
            print_json(&Value::Array(rows));
        }
        Format::Csv => {
            println!("address,lo,hi");
            for (a, iv) in addresses.iter().zip(&intervals) {
                println!("{a},{},{}", to_fraction_string(&iv.lo), to_fraction_string(&iv.hi));
            }
        }
        Format::Text => {
            for (a, iv) in addresses.iter().zip(&intervals) {
                println!("{a:>width$}  {}", interval_text(iv), width = rank.max(1));
            }
        }
    }
    Ok(Outcome::Ok)
}

fn checks_of(report: ConditionReport<Rational>) -> Vec<CheckRecord> {
    report.comparisons.into_iter().map(CheckRecord::from).collect()
}

fn checks_text(out: &mut String, title: &str, checks: &[CheckRecord]) {
    let _ = writeln!(out, "{title}:");
    for c in checks {
        let _ = writeln!(
            out,
            "  [{}] {}: {} {} {}",
            if c.holds { "pass" } else { "FAIL" },
            c.label,
            to_decimal(&c.lhs, 8),
            c.relation,
            to_decimal(&c.rhs, 8)
        );
    }
}

pub fn check_lemma(
    g: &GlobalOpts,
    lemma: Lemma,
    lambda: &Rational,
    i: &Address,
    j: &Address,
    k: Option<usize>,
) -> Result<Outcome> {
    let bi = BasicInterval::from_address(i.clone());
    let bj = BasicInterval::from_address(j.clone());
    let (iv, jv) = (bi.eval_at(lambda), bj.eval_at(lambda));
    let (label, hypotheses, pieces, image, extra) = match lemma {
        Lemma::Refinement => {
            let d = decompose_f(&bi, &bj, lambda)?;
            (
                "2.2",
                checks_of(refinement_hypothesis(&bi, &bj, lambda)?),
                d,
                image_f(&iv, &jv)?,
                None,
            )
        }
        Lemma::PowerRefinement => {
            let k = k.ok_or_else(|| Error::InvalidArgument("check-lemma 3.1 needs --k".into()))?;
            let d = decompose_fk(k, &bi, &bj, lambda)?;
            (
                "3.1",
                checks_of(power_refinement_hypothesis(k, &bi, &bj, lambda)?),
                d,
                image_fk(k, &iv, &jv)?,
                None,
            )
        }
        Lemma::DoubleCover => {
            let d = decompose_f(&bi, &bj, lambda)?;
            let window = double_cover_window(bi.rank(), &iv.lo, &jv.lo, lambda)?;
            let full = checks_of(double_cover_condition(&bi, &bj, lambda)?);
            (
                "2.3",
                checks_of(double_cover_hypothesis(&bi, &bj, lambda)?),
                d,
                image_f(&iv, &jv)?,
                Some((window, full)),
            )
        }
    };
    let union: IntervalUnion<Rational> = pieces.union();
    let union_is_image = union.parts() == [image.clone()];
    let hypotheses_hold = hypotheses.iter().all(|c| c.holds);
    match g.format {
        Format::Json => {
            let mut v = json!({
                "lemma": label,
                "lambda": to_fraction_string(lambda),
                "i": i.to_string(),
                "j": j.to_string(),
                "k": k,
                "hypotheses": to_value(&hypotheses),
                "hypotheses_hold": hypotheses_hold,
                "pieces": to_value(&pieces.parts),
                "cover": pieces.check_cover(),
                "double_cover": pieces.check_double_cover(),
                "union": to_value(&union),
                "image": to_value(&image),
                "union_equals_image": union_is_image,
            });
            if let Some((window, full)) = &extra {
                v["window"] = to_value(window);
                v["full_double_cover"] = to_value(full);
            }
            print_json(&v);
        }
        Format::Csv => {
            println!("piece,lo,hi");
            for (n, p) in pieces.parts.iter().enumerate() {
                println!("{},{},{}", n + 1, to_fraction_string(&p.lo), to_fraction_string(&p.hi));
            }
        }
        Format::Text => {
            let mut out = String::new();
            let _ = writeln!(out, "lemma {label}: I = {i}, J = {j}, λ = {}", exact(lambda));
            checks_text(&mut out, "hypotheses", &hypotheses);
            for (n, p) in pieces.parts.iter().enumerate() {
                let _ = writeln!(out, "piece {}: {}", n + 1, interval_text(p));
            }
            let _ = writeln!(out, "cover: {}", pieces.check_cover());
            let _ = writeln!(out, "double cover: {}", pieces.check_double_cover());
            let _ = writeln!(out, "image: {}", interval_text(&image));
            let _ = writeln!(out, "union of pieces equals image: {union_is_image}");
            if let Some((window, full)) = &extra {
                let _ = writeln!(out, "window (L_n, R_n): ({}, {})", exact(&window.lo), exact(&window.hi));
                checks_text(&mut out, "full double-cover condition", full);
            }
            print!("{out}");
        }
    }
    Ok(Outcome::Ok)
}
