//! The named verification suites behind `verify`.
//!
//! Every suite counts the cases it actually checked and collects a
//! description of each failure; a suite passes exactly when no case failed.
//! Randomized suites draw from a seeded generator recorded in the report.

use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde_json::json;

use fano_strata_core::apolarity::essential_subspace;
use fano_strata_core::apolarity::witness_form;
use fano_strata_core::error::Result;
use fano_strata_core::field::{Field, PrimeField, Rationals};
use fano_strata_core::linalg::Mat;
use fano_strata_core::oracle::{
    enumerate_subspaces, eval_poly_at, fiber_of_h, gaussian_binomial, gaussian_binomial_poly,
    UniversalPropertySweep,
};
use fano_strata_core::poly::{Form, FormTuple, Monomial, MultiDegree};
use fano_strata_core::strata::{
    compute_table, derived_constants, endpoint_minimum_check, margin, second_difference,
    second_difference_closed, FanoParameters,
};
use fano_strata_core::text::print_tuple;

use crate::config::RunConfig;
use crate::report::SuiteReport;

const SWEEP_CHUNK: u64 = 1 << 20;

/// Exhaustive two-route containment check over `F_q`: every nonzero tuple
/// up to scalar against every subspace. Ranges of representatives are
/// checked in parallel and merged deterministically.
pub fn universal_property(config: RunConfig, q: u64, n: u32, d: Vec<u32>) -> Result<SuiteReport> {
    let field = PrimeField::new(q)?;
    let d = MultiDegree::new(d)?;
    let sweep = UniversalPropertySweep::new(&field, n, &d, config.enumeration_cap)?;
    let total = sweep.total_reps();
    let ranges: Vec<(u64, u64)> = (0..total)
        .step_by(SWEEP_CHUNK as usize)
        .map(|start| (start, (start + SWEEP_CHUNK).min(total)))
        .collect();
    let outcome = ranges
        .par_iter()
        .map(|&(a, b)| sweep.check_range(a, b))
        .reduce(Default::default, |x, y| x.merge(y));
    let failures: Vec<String> = outcome
        .mismatches
        .iter()
        .take(32)
        .map(|m| {
            let tuple = sweep.rep_tuple(&sweep.decode_rep(m.rep_index));
            format!(
                "tuple {} vs subspace #{} (pivots {:?}): direct={} containment={}",
                print_tuple(&field, &tuple),
                m.subspace_index,
                sweep.subspace(m.subspace_index).pivots(),
                m.direct,
                m.containment,
            )
        })
        .collect();
    let params = json!({
        "q": q, "n": n, "d": d.entries(),
        "representatives": total,
        "subspaces": sweep.num_subspaces(),
        "crosschecks": outcome.crosschecks,
        "member_pairs": outcome.member_pairs,
    });
    Ok(SuiteReport::new(
        "universal-property",
        config,
        params,
        outcome.pairs_checked.min(u64::MAX as u128) as u64,
        failures,
    ))
}

fn random_invertible(field: &PrimeField, n: usize, rng: &mut ChaCha8Rng) -> Mat<PrimeField> {
    loop {
        let rows: Vec<Vec<u64>> = (0..n)
            .map(|_| (0..n).map(|_| rng.gen_range(0..field.modulus())).collect())
            .collect();
        let m = Mat::from_rows(rows).expect("square");
        if m.rank(field) == n {
            return m;
        }
    }
}

/// Fiber counts and fiber sets over witness tuples and their random
/// GL-translates.
pub fn fiber_law(
    config: RunConfig,
    q: u64,
    n: u32,
    r: u32,
    d: Vec<u32>,
    translates: u32,
) -> Result<SuiteReport> {
    let field = PrimeField::new(q)?;
    let params = FanoParameters::new(n, r, MultiDegree::new(d.clone())?)?;
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let mut cases = 0u64;
    let mut failures = Vec::new();
    for k in 0..=r {
        let base = witness_form(&field, &params, k)?;
        let mut variants = vec![base.clone()];
        for _ in 0..translates {
            let g = random_invertible(&field, params.ambient_dim(), &mut rng);
            variants.push(base.substitute_linear(&field, &g)?);
        }
        let expected = gaussian_binomial(k as usize, (n - r + k) as usize, q);
        for (i, phi) in variants.iter().enumerate() {
            cases += 1;
            let rep = fiber_of_h(&field, &params, phi, config.enumeration_cap)?;
            let label = if i == 0 {
                format!("witness k={k}")
            } else {
                format!("translate #{i} of witness k={k}")
            };
            if rep.rank as u32 != r + 1 - k {
                failures.push(format!("{label}: rank {} != {}", rep.rank, r + 1 - k));
            }
            if rep.expected_count != expected || !rep.count_matches {
                failures.push(format!(
                    "{label}: fiber size {} != [{} choose {}]_{} = {}",
                    rep.members.len(),
                    n - r + k,
                    k,
                    q,
                    expected
                ));
            }
            if rep.set_matches_essential != Some(true) {
                failures.push(format!("{label}: fiber set differs from planes over M"));
            }
            if rep.members.is_empty() {
                failures.push(format!("{label}: empty fiber"));
            }
        }
    }
    let params_json = json!({
        "q": q, "n": n, "r": r, "d": d, "translates": translates,
    });
    Ok(SuiteReport::new(
        "fiber-law",
        config,
        params_json,
        cases,
        failures,
    ))
}

/// Independent elimination over the rationals, used as the reference rank.
#[allow(clippy::needless_range_loop)] // two-row accesses; indexing is the clear form
fn reference_rank(mut m: Vec<Vec<BigRational>>) -> usize {
    let rows = m.len();
    if rows == 0 {
        return 0;
    }
    let cols = m[0].len();
    let mut rank = 0usize;
    for col in 0..cols {
        let Some(src) = (rank..rows).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(rank, src);
        for r in 0..rows {
            if r != rank && !m[r][col].is_zero() {
                let factor = &m[r][col] / &m[rank][col];
                for c in 0..cols {
                    let delta = &factor * &m[rank][c];
                    m[r][c] = &m[r][c] - delta;
                }
            }
        }
        rank += 1;
        if rank == rows {
            break;
        }
    }
    rank
}

/// Random symmetric rational matrices: the generalized rank of the paired
/// quadric must equal the matrix rank.
#[allow(clippy::needless_range_loop)] // symmetric (i, j) fill
pub fn quadratic_rank(config: RunConfig, count: u32, n_max: u32) -> Result<SuiteReport> {
    let q = Rationals;
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let mut failures = Vec::new();
    for case in 0..count {
        let n = rng.gen_range(1..=n_max) as usize + 1;
        let mut b = vec![vec![q.zero(); n]; n];
        for i in 0..n {
            for j in i..n {
                let num = rng.gen_range(-9i64..=9);
                let den = rng.gen_range(1i64..=3);
                let v = q.div(&q.from_i64(num), &q.from_i64(den)).unwrap();
                b[i][j] = v.clone();
                b[j][i] = v;
            }
        }
        // phi = sum_i B_ii/2 x_i^2 + sum_{i<j} B_ij x_i x_j, so that the
        // contraction matrix is exactly B.
        let mut phi = Form::zero(n, 2);
        for i in 0..n {
            for j in i..n {
                let mut exps = vec![0u32; n];
                exps[i] += 1;
                exps[j] += 1;
                let coeff = if i == j {
                    q.div(&b[i][j], &q.from_i64(2)).unwrap()
                } else {
                    b[i][j].clone()
                };
                phi.add_term(&q, Monomial::new(exps), coeff)?;
            }
        }
        let rank = essential_subspace(&q, &FormTuple::single(phi))?.rank;
        let expected = reference_rank(b);
        if rank != expected {
            failures.push(format!(
                "case {case}: generalized rank {rank} != matrix rank {expected}"
            ));
        }
    }
    let params = json!({"count": count, "n_max": n_max});
    Ok(SuiteReport::new(
        "quadratic-rank",
        config,
        params,
        count as u64,
        failures,
    ))
}

fn degree_tuples(s_max: u32, d_min: u32, d_max: u32) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    for s in 1..=s_max {
        let mut tuple = vec![d_min; s as usize];
        loop {
            out.push(tuple.clone());
            let mut i = tuple.len();
            loop {
                if i == 0 {
                    break;
                }
                i -= 1;
                tuple[i] += 1;
                if tuple[i] <= d_max {
                    break;
                }
                tuple[i] = d_min;
            }
            if tuple.iter().all(|&x| x == d_min) {
                break;
            }
        }
    }
    out
}

/// Exhaustive formula sweep: endpoint values, the Pascal chain for second
/// differences, the candidate/margin identity, sharpness, and the
/// endpoint-minimum law, over every parameter pack in range.
pub fn combinatorics_sweep(
    config: RunConfig,
    n_max: u32,
    r_max: u32,
    s_max: u32,
    d_max: u32,
) -> Result<SuiteReport> {
    let mut cases = 0u64;
    let mut failures = Vec::new();
    let tuples = degree_tuples(s_max, 2, d_max);
    for n in 1..=n_max {
        for r in 0..=r_max.min(n) {
            for d in &tuples {
                cases += 1;
                let label = format!("n={n} r={r} d={d:?}");
                let params = FanoParameters::new(n, r, MultiDegree::new(d.clone())?)?;
                let c = derived_constants(&params)?;
                let single_quadric = params.multidegree().is_single_quadric();

                let m0 = margin(0, &params)?;
                let mr = margin(r, &params)?;
                if m0 != c.delta + 1 {
                    failures.push(format!("{label}: margin(0) = {m0} != delta+1 = {}", c.delta + 1));
                }
                let expected_mr = n as i64 - 2 * r as i64 - d.len() as i64 + 1;
                if mr != expected_mr {
                    failures.push(format!("{label}: margin(r) = {mr} != {expected_mr}"));
                }

                for k in 1..r {
                    let direct = second_difference(k, &params)?;
                    let closed = second_difference_closed(k, &params)?;
                    if direct != closed {
                        failures.push(format!(
                            "{label}: second difference at k={k}: direct {direct} != closed {closed}"
                        ));
                    }
                    if single_quadric {
                        if direct != 1 {
                            failures.push(format!("{label}: quadric second difference {direct} != 1"));
                        }
                    } else if direct < 2 {
                        failures.push(format!("{label}: second difference {direct} < 2 at k={k}"));
                    }
                }

                let table = compute_table(&params)?;
                for row in &table.rows {
                    if row.candidate + row.margin != table.two_dim_g {
                        failures.push(format!(
                            "{label}: candidate({}) + margin({}) != 2 dim G",
                            row.k, row.k
                        ));
                    }
                }
                if c.delta_lower >= 0 {
                    if table.sharpness_holds != Some(true) {
                        failures.push(format!(
                            "{label}: aggregate {} is not threshold-1 = {}",
                            table.candidate_max,
                            table.threshold - 1
                        ));
                    }
                    if table.inequality_holds != Some(true) {
                        failures.push(format!("{label}: aggregate inequality fails"));
                    }
                }

                let endpoint = endpoint_minimum_check(&params)?;
                if c.delta_lower >= 0 {
                    if !endpoint.min_at_endpoint || !endpoint.equals_delta_lower_plus_one {
                        failures.push(format!(
                            "{label}: margin minimum {} not at endpoint / != delta_lower+1",
                            endpoint.min_value
                        ));
                    }
                    if single_quadric && endpoint.quadric_strictly_decreasing != Some(true) {
                        failures.push(format!("{label}: quadric margin not strictly decreasing"));
                    }
                }
                if !single_quadric && endpoint.concave != Some(true) {
                    failures.push(format!("{label}: margin sequence not concave"));
                }
            }
        }
    }
    let params = json!({
        "n_max": n_max, "r_max": r_max, "s_max": s_max,
        "d_min": 2, "d_max": d_max,
        "degree_tuples": tuples.len(),
    });
    Ok(SuiteReport::new(
        "combinatorics-sweep",
        config,
        params,
        cases,
        failures,
    ))
}

/// Streamed enumeration totals against both Gaussian-binomial routes, with
/// duplicate detection via canonical ordering.
pub fn enumeration_counts(
    config: RunConfig,
    q_list: Vec<u64>,
    dim_max: usize,
    ambient_max: usize,
) -> Result<SuiteReport> {
    let mut cases = 0u64;
    let mut failures = Vec::new();
    for &q in &q_list {
        let field = PrimeField::new(q)?;
        for ambient in 0..=ambient_max {
            for dim in 0..=dim_max.min(ambient) {
                cases += 1;
                let mut seen: Vec<_> =
                    enumerate_subspaces(&field, dim, ambient, config.enumeration_cap)?.collect();
                let streamed = seen.len() as u64;
                seen.sort();
                seen.dedup();
                if seen.len() as u64 != streamed {
                    failures.push(format!("q={q} [{ambient} {dim}]: duplicate subspaces"));
                }
                let product = gaussian_binomial(dim, ambient, q);
                let poly = eval_poly_at(&gaussian_binomial_poly(dim, ambient), q);
                if product != poly {
                    failures.push(format!("q={q} [{ambient} {dim}]: product {product} != poly {poly}"));
                }
                if product.to_u64() != Some(streamed) {
                    failures.push(format!(
                        "q={q} [{ambient} {dim}]: streamed {streamed} != gaussian {product}"
                    ));
                }
            }
        }
    }
    let params = json!({"q_list": q_list, "dim_max": dim_max, "ambient_max": ambient_max});
    Ok(SuiteReport::new(
        "enumeration-counts",
        config,
        params,
        cases,
        failures,
    ))
}
