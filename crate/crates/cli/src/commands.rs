//! Subcommand implementations, each returning a report.

use fano_strata_core::apolarity::essential_subspace;
use fano_strata_core::error::{Error, Result};
use fano_strata_core::field::{Field, FieldSpec, PrimeField, Rationals};
use fano_strata_core::linalg::Mat;
use fano_strata_core::oracle::{fano_points, vanishes_pointwise, PrimePowerField};
use fano_strata_core::poly::{FormTuple, MultiDegree};
use fano_strata_core::strata::{compute_table, endpoint_minimum_check, FanoParameters};
use fano_strata_core::text::{parse_tuple, print_tuple};

use crate::config::RunConfig;
use crate::report::{
    linear_form_string, prime_subspace_json, rationals_subspace_json, AnalysisReport,
    ApolarReport, FanoCountReport, FieldJson, ParamsJson, QuadricRankCheck, SubspaceJson,
};

pub fn analyze(config: RunConfig, n: u32, r: u32, d: Vec<u32>) -> Result<AnalysisReport> {
    let params = FanoParameters::new(n, r, MultiDegree::new(d)?)?;
    let table = compute_table(&params)?;
    let endpoint = if params.multidegree().has_unit_entry() {
        None
    } else {
        Some(endpoint_minimum_check(&params)?)
    };
    Ok(AnalysisReport::build(config, &params, &table, endpoint.as_ref()))
}

fn apolar_impl<F: Field>(
    field: &F,
    field_json: FieldJson,
    config: RunConfig,
    input: &str,
    n: Option<u32>,
    subspace_json: impl Fn(&fano_strata_core::linalg::Subspace<F>) -> SubspaceJson,
) -> Result<ApolarReport> {
    let tuple: FormTuple<F> = parse_tuple(field, input, n.map(|v| v as usize + 1))?;
    let profile = essential_subspace(field, &tuple)?;
    let quadric_rank_check = quadric_check(field, &tuple, profile.rank);
    Ok(ApolarReport {
        command: "apolar",
        config,
        field: field_json,
        n: tuple.nvars() as u32 - 1,
        degrees: tuple.degrees(),
        tuple: print_tuple(field, &tuple),
        zero_tuple: tuple.is_zero(),
        rank: profile.rank,
        annihilator_forms: (0..profile.apolar.dim())
            .map(|r| linear_form_string(field, profile.apolar.basis().row(r), "X"))
            .collect(),
        essential_forms: (0..profile.essential.dim())
            .map(|r| linear_form_string(field, profile.essential.basis().row(r), "x"))
            .collect(),
        annihilator: subspace_json(&profile.apolar),
        essential: subspace_json(&profile.essential),
        quadric_rank_check,
    })
}

/// For a single quadric, the contraction matrix is the symmetric matrix of
/// the form; its rank must agree with the generalized rank. Built here
/// directly from the coefficients as a cross-check.
fn quadric_check<F: Field>(field: &F, tuple: &FormTuple<F>, rank: usize) -> Option<QuadricRankCheck> {
    if tuple.degrees() != vec![2] {
        return None;
    }
    let n = tuple.nvars();
    let mut b = Mat::zero(field, n, n);
    for (m, c) in tuple.forms()[0].terms() {
        let nz: Vec<usize> = (0..n).filter(|&j| m.exps()[j] > 0).collect();
        if nz.len() == 1 {
            let i = nz[0];
            *b.at_mut(i, i) = field.mul(&field.from_i64(2), c);
        } else {
            *b.at_mut(nz[0], nz[1]) = c.clone();
            *b.at_mut(nz[1], nz[0]) = c.clone();
        }
    }
    let matrix_rank = b.rank(field);
    Some(QuadricRankCheck {
        matrix_rank,
        agrees: matrix_rank == rank,
    })
}

pub fn apolar(
    config: RunConfig,
    input: &str,
    n: Option<u32>,
    modulus: Option<u64>,
) -> Result<ApolarReport> {
    let spec = match modulus {
        None => FieldSpec::Rationals,
        Some(p) => FieldSpec::Prime(p),
    };
    spec.validate()?;
    match spec {
        FieldSpec::Rationals => apolar_impl(
            &Rationals,
            FieldJson::Rationals,
            config,
            input,
            n,
            rationals_subspace_json,
        ),
        FieldSpec::Prime(p) => {
            let field = PrimeField::new(p)?;
            apolar_impl(
                &field,
                FieldJson::Prime { p },
                config,
                input,
                n,
                prime_subspace_json,
            )
        }
    }
}

pub fn fano_count(
    config: RunConfig,
    input: &str,
    n: Option<u32>,
    r: u32,
    q: u64,
    with_members: bool,
) -> Result<FanoCountReport> {
    let field = PrimePowerField::prime(q)?.prime_field();
    let tuple: FormTuple<PrimeField> = parse_tuple(&field, input, n.map(|v| v as usize + 1))?;
    if tuple.is_zero() {
        return Err(Error::ZeroTuple);
    }
    let n = tuple.nvars() as u32 - 1;
    let params = FanoParameters::new(n, r, tuple.multidegree()?)?;
    let members = fano_points(&field, &params, &tuple, config.enumeration_cap)?;
    let pointwise_crosscheck = if q > tuple.max_degree() as u64 {
        let mut ok = true;
        for m in &members {
            ok &= vanishes_pointwise(&field, &tuple, m)?;
        }
        Some(ok)
    } else {
        None
    };
    Ok(FanoCountReport {
        command: "fano-count",
        config,
        field: FieldJson::Prime { p: q },
        params: ParamsJson::from(&params),
        tuple: print_tuple(&field, &tuple),
        count: members.len() as u64,
        members: with_members.then(|| members.iter().map(prime_subspace_json).collect()),
        pointwise_crosscheck,
    })
}
