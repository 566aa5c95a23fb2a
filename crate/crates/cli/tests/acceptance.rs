//! Acceptance suite: one test per criterion, each printing a PASS/FAIL line.
//!
//! Run with `cargo test -p fano-strata-cli --test acceptance -- --nocapture`
//! to see the per-criterion lines.

use fano_strata_cli::config::{OutputFormat, RunConfig};
use fano_strata_cli::{commands, suites};
use fano_strata_core::error::Result;
use fano_strata_core::poly::MultiDegree;
use fano_strata_core::strata::{
    compute_table, derived_constants, margin, second_difference, second_difference_closed,
    FanoParameters,
};

fn config() -> RunConfig {
    RunConfig {
        seed: 1729,
        enumeration_cap: 10_000_000,
        format: OutputFormat::Text,
    }
}

fn criterion(name: &str, passed: bool, detail: &str) {
    println!(
        "acceptance {name}: {} ({detail})",
        if passed { "PASS" } else { "FAIL" }
    );
    assert!(passed, "criterion {name} failed: {detail}");
}

/// Every parameter pack of the exact-formula sweep: n ≤ 14, r ≤ min(5, n),
/// s ≤ 3, degrees in 2..=6.
fn sweep_packs() -> Vec<FanoParameters> {
    let mut tuples: Vec<Vec<u32>> = Vec::new();
    for s in 1..=3usize {
        let mut t = vec![2u32; s];
        loop {
            tuples.push(t.clone());
            let mut i = t.len();
            loop {
                if i == 0 {
                    break;
                }
                i -= 1;
                t[i] += 1;
                if t[i] <= 6 {
                    break;
                }
                t[i] = 2;
            }
            if t.iter().all(|&x| x == 2) {
                break;
            }
        }
    }
    let mut packs = Vec::new();
    for n in 1..=14u32 {
        for r in 0..=5u32.min(n) {
            for d in &tuples {
                packs.push(
                    FanoParameters::new(n, r, MultiDegree::new(d.clone()).unwrap()).unwrap(),
                );
            }
        }
    }
    packs
}

#[test]
fn a01_reference_constants_for_single_forms() {
    let result: Result<Vec<(u32, i64, i64)>> = (3..=12u32)
        .map(|n| {
            let report = commands::analyze(config(), n, 1, vec![n])?;
            Ok((n, report.constants.delta, report.constants.delta_lower))
        })
        .collect();
    let rows = result.expect("analyze succeeds");
    let ok = rows
        .iter()
        .all(|&(n, delta, lower)| delta == n as i64 - 3 && lower == n as i64 - 3);
    criterion(
        "1 single-form constants",
        ok,
        "delta = delta_lower = n - 3 for n in 3..=12, r = 1",
    );
}

#[test]
fn a02_margin_endpoint_values_over_sweep() {
    let packs = sweep_packs();
    let mut checked = 0u64;
    let mut ok = true;
    for p in &packs {
        let c = derived_constants(p).unwrap();
        let m0 = margin(0, p).unwrap();
        let mr = margin(p.r(), p).unwrap();
        let expected_mr = p.n() as i64 - 2 * p.r() as i64 - p.s() as i64 + 1;
        ok &= m0 == c.delta + 1 && mr == expected_mr;
        checked += 1;
    }
    criterion(
        "2 endpoint values",
        ok,
        &format!("margin(0) = delta+1 and margin(r) = n-2r-s+1 over {checked} packs"),
    );
}

#[test]
fn a03_second_difference_pascal_chain() {
    let packs = sweep_packs();
    let mut checked = 0u64;
    let mut ok = true;
    for p in &packs {
        let single_quadric = p.multidegree().is_single_quadric();
        for k in 1..p.r() {
            let direct = second_difference(k, p).unwrap();
            let closed = second_difference_closed(k, p).unwrap();
            ok &= direct == closed;
            if !single_quadric {
                ok &= direct >= 2;
            }
            checked += 1;
        }
    }
    criterion(
        "3 Pascal chain",
        ok,
        &format!("direct second difference equals closed form ({checked} interior cases)"),
    );
}

#[test]
fn a04_sharpness_and_identity_over_sweep() {
    let packs = sweep_packs();
    let mut identity_cases = 0u64;
    let mut sharp_cases = 0u64;
    let mut ok = true;
    for p in &packs {
        let table = compute_table(p).unwrap();
        for row in &table.rows {
            ok &= row.candidate + row.margin == table.two_dim_g;
            identity_cases += 1;
        }
        if table.constants.delta_lower >= 0 {
            ok &= table.candidate_max == table.threshold - 1;
            ok &= table.inequality_holds == Some(true) && table.sharpness_holds == Some(true);
            sharp_cases += 1;
        }
    }
    criterion(
        "4 sharpness",
        ok,
        &format!(
            "candidate+margin identity on {identity_cases} rows; aggregate = threshold-1 on {sharp_cases} packs"
        ),
    );
}

#[test]
fn a05_universal_property_exhaustive_f7() {
    let mut details = Vec::new();
    let mut ok = true;
    for d in [vec![2u32], vec![3u32]] {
        let report = suites::universal_property(config(), 7, 2, d.clone())
            .expect("sweep plan within caps");
        ok &= report.passed;
        details.push(format!("d={d:?}: {} pairs", report.cases));
        for f in report.failures.iter().take(4) {
            details.push(format!("counterexample {f}"));
        }
    }
    criterion("5 universal property", ok, &details.join("; "));
}

#[test]
fn a06_quadratic_rank_specialization() {
    let report = suites::quadratic_rank(config(), 200, 5).expect("suite runs");
    criterion(
        "6 quadratic rank",
        report.passed,
        &format!("{} random symmetric rational matrices", report.cases),
    );
}

#[test]
fn a07_fiber_law() {
    let mut ok = true;
    let mut cases = 0u64;
    for (q, d) in [
        (5u64, vec![2u32]),
        (7, vec![2]),
        (7, vec![3]),
        (5, vec![2, 2]),
        (7, vec![2, 2]),
    ] {
        let report =
            suites::fiber_law(config(), q, 3, 1, d.clone(), 50).expect("fiber suite runs");
        ok &= report.passed;
        cases += report.cases;
        if !report.passed {
            println!("fiber-law failures at q={q} d={d:?}: {:?}", report.failures);
        }
    }
    criterion(
        "7 fiber law",
        ok,
        &format!("{cases} fibers: witnesses for k in {{0,1}} plus 50 GL-translates each"),
    );
}

#[test]
fn a08_enumeration_counts() {
    let report = suites::enumeration_counts(config(), vec![2, 3, 5, 7], 3, 5)
        .expect("enumeration suite runs");
    criterion(
        "8 enumeration counts",
        report.passed,
        &format!("{} (dim, ambient, q) combinations", report.cases),
    );
}

#[test]
fn a09_plane_counts_on_reference_loci() {
    let mut ok = true;
    let mut details = Vec::new();

    let fermat = commands::fano_count(
        config(),
        "x0^3 + x1^3 + x2^3 + x3^3",
        Some(3),
        1,
        7,
        false,
    )
    .expect("count");
    ok &= fermat.count == 27 && fermat.pointwise_crosscheck == Some(true);
    details.push(format!("Fermat cubic / F_7: {}", fermat.count));

    for q in [3u64, 5] {
        let quadric = commands::fano_count(config(), "x0*x3 - x1*x2", Some(3), 1, q, false)
            .expect("count");
        ok &= quadric.count == 2 * (q + 1);
        details.push(format!("smooth quadric / F_{q}: {}", quadric.count));
    }

    let hyperplane =
        commands::fano_count(config(), "x3", Some(3), 1, 3, false).expect("count");
    ok &= hyperplane.count == 13;
    details.push(format!("hyperplane / F_3: {}", hyperplane.count));

    criterion("9 plane counts", ok, &details.join(", "));
}

#[test]
fn a10_point_case_degeneration() {
    let mut ok = true;
    let mut details = Vec::new();
    for (n, d) in [(3u32, vec![3u32]), (5, vec![2]), (7, vec![2, 3])] {
        let report = commands::analyze(config(), n, 0, d.clone()).expect("analyze");
        let s = d.len() as i64;
        ok &= report.constants.delta == n as i64 - s;
        ok &= report.constants.delta_lower == n as i64 - s;
        ok &= report.table.rows.len() == 1;
        let row = &report.table.rows[0];
        ok &= row.candidate + row.margin == report.table.two_dim_g;
        ok &= report.table.candidate_max == report.table.threshold - 1;
        details.push(format!("n={n} d={d:?}"));
    }
    criterion(
        "10 point-case degeneration",
        ok,
        &format!("r = 0 collapses to delta = n - s with a single stratum ({})", details.join("; ")),
    );
}
