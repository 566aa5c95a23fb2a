//! Discrete stratification formulas.
//!
//! For parameters `(n, r, d)` the ambient Grassmannian of projective
//! `r`-planes in `P^n` has dimension `(r+1)(n-r)`. Forms of multidegree `d`
//! stratify by generalized rank, and each stratum `k ∈ {0..r}` carries four
//! exact integers:
//!
//!   * `margin(k)    = (r+1-k)(n-r-k) - Σᵢ C(dᵢ+r-k, r-k) + 1`
//!   * `dim_bound(k) = (r+1-k)(n-r+k) + Σᵢ C(dᵢ+r-k, r-k) - 1`
//!   * `fiber_dim(k) = k(n-r)`
//!   * `candidate(k) = dim_bound(k) + 2·fiber_dim(k)`
//!
//! These satisfy `candidate(k) + margin(k) = 2·dim G` identically, so the
//! maximal candidate is controlled by the minimal margin, which in turn is
//! attained at an endpoint (`margin(0) = δ+1`, `margin(r) = n-2r-s+1`).
//! All arithmetic is checked; overflow is an error, never a wrong answer.

use alloc::string::ToString;
use alloc::vec::Vec;

use num_bigint::BigUint;
use num_integer::binomial;
use num_traits::ToPrimitive;

use crate::error::{Error, Result};
use crate::poly::MultiDegree;

/// The discrete parameter pack: ambient projective dimension `n`, plane
/// dimension `r`, and the multidegree of the defining forms.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FanoParameters {
    n: u32,
    r: u32,
    d: MultiDegree,
}

impl FanoParameters {
    pub fn new(n: u32, r: u32, d: MultiDegree) -> Result<Self> {
        if n < 1 {
            return Err(Error::InvalidParameters("n must be at least 1".to_string()));
        }
        if r > n {
            return Err(Error::InvalidParameters(alloc::format!(
                "r = {r} exceeds n = {n}"
            )));
        }
        Ok(FanoParameters { n, r, d })
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn r(&self) -> u32 {
        self.r
    }

    pub fn multidegree(&self) -> &MultiDegree {
        &self.d
    }

    pub fn s(&self) -> u32 {
        self.d.len() as u32
    }

    /// Number of coordinates of the underlying vector space.
    pub fn ambient_dim(&self) -> usize {
        self.n as usize + 1
    }

    /// Dimension of the planes as subspaces, `r + 1`.
    pub fn plane_dim(&self) -> usize {
        self.r as usize + 1
    }
}

/// Constants derived from the parameter pack.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct DerivedConstants {
    /// `(r+1)(n-r)`, the Grassmannian dimension.
    pub dim_g: i64,
    /// `Σᵢ C(dᵢ+r, r)`.
    pub binom_d_r: i64,
    /// `dim_g - binom_d_r`, the expected dimension of the plane locus.
    pub delta: i64,
    /// `min(delta, n - 2r - s)`.
    pub delta_lower: i64,
}

fn checked_mul(a: i64, b: i64) -> Result<i64> {
    a.checked_mul(b)
        .ok_or_else(|| Error::Overflow(alloc::format!("{a} * {b}")))
}

fn checked_add(a: i64, b: i64) -> Result<i64> {
    a.checked_add(b)
        .ok_or_else(|| Error::Overflow(alloc::format!("{a} + {b}")))
}

fn checked_sub(a: i64, b: i64) -> Result<i64> {
    a.checked_sub(b)
        .ok_or_else(|| Error::Overflow(alloc::format!("{a} - {b}")))
}

/// Exact `C(n, k)` as `i64`, failing loudly on overflow.
pub fn binom_exact(n: u64, k: u64) -> Result<i64> {
    if k > n {
        return Ok(0);
    }
    binomial(BigUint::from(n), BigUint::from(k))
        .to_i64()
        .ok_or_else(|| Error::Overflow(alloc::format!("C({n}, {k})")))
}

/// `Σᵢ C(dᵢ + j, j)` — the dimension of the degree-`d` form tuples on a
/// `(j+1)`-dimensional space.
pub fn binom_sum(j: u32, d: &MultiDegree) -> Result<i64> {
    let mut acc = 0i64;
    for &di in d.entries() {
        acc = checked_add(acc, binom_exact((di + j) as u64, j as u64)?)?;
    }
    Ok(acc)
}

pub fn derived_constants(params: &FanoParameters) -> Result<DerivedConstants> {
    let n = params.n as i64;
    let r = params.r as i64;
    let s = params.s() as i64;
    let dim_g = checked_mul(r + 1, n - r)?;
    let binom_d_r = binom_sum(params.r, &params.d)?;
    let delta = checked_sub(dim_g, binom_d_r)?;
    let delta_lower = delta.min(n - 2 * r - s);
    Ok(DerivedConstants {
        dim_g,
        binom_d_r,
        delta,
        delta_lower,
    })
}

fn ensure_k(k: u32, params: &FanoParameters) -> Result<()> {
    if k > params.r {
        return Err(Error::IndexOutOfRange {
            k: k as i64,
            r: params.r,
        });
    }
    Ok(())
}

/// `margin(k) = (r+1-k)(n-r-k) - Σᵢ C(dᵢ+r-k, r-k) + 1` for `k ∈ 0..=r`.
///
/// The two endpoints evaluate to `δ + 1` and `n - 2r - s + 1`.
pub fn margin(k: u32, params: &FanoParameters) -> Result<i64> {
    ensure_k(k, params)?;
    let n = params.n as i64;
    let r = params.r as i64;
    let k_ = k as i64;
    let quad = checked_mul(r + 1 - k_, n - r - k_)?;
    let g = binom_sum(params.r - k, &params.d)?;
    checked_add(checked_sub(quad, g)?, 1)
}

/// Second difference of `G(k) = Σᵢ C(dᵢ+r-k, r-k)`, computed by direct
/// differencing. Defined for interior `k ∈ 1..=r-1`; equals the closed form
/// [`second_difference_closed`].
pub fn second_difference(k: u32, params: &FanoParameters) -> Result<i64> {
    if k < 1 || k + 1 > params.r {
        return Err(Error::IndexOutOfRange {
            k: k as i64,
            r: params.r,
        });
    }
    let g = |kk: u32| binom_sum(params.r - kk, &params.d);
    let direct = checked_add(
        checked_sub(g(k + 1)?, checked_mul(2, g(k)?)?)?,
        g(k - 1)?,
    )?;
    Ok(direct)
}

/// Closed form `Σᵢ C(dᵢ + r - k - 1, r - k + 1)` obtained by collapsing the
/// direct second difference with Pascal's identity twice.
pub fn second_difference_closed(k: u32, params: &FanoParameters) -> Result<i64> {
    if k < 1 || k + 1 > params.r {
        return Err(Error::IndexOutOfRange {
            k: k as i64,
            r: params.r,
        });
    }
    let mut acc = 0i64;
    for &di in params.d.entries() {
        let top = (di + params.r - k) as i64 - 1;
        let bottom = (params.r - k + 1) as i64;
        acc = checked_add(acc, binom_exact(top as u64, bottom as u64)?)?;
    }
    Ok(acc)
}

/// Upper bound for the dimension of stratum `k`:
/// `(r+1-k)(n-r+k) + Σᵢ C(dᵢ+r-k, r-k) - 1`.
pub fn stratum_dim_bound(k: u32, params: &FanoParameters) -> Result<i64> {
    ensure_k(k, params)?;
    let n = params.n as i64;
    let r = params.r as i64;
    let k_ = k as i64;
    let quad = checked_mul(r + 1 - k_, n - r + k_)?;
    let g = binom_sum(params.r - k, &params.d)?;
    checked_sub(checked_add(quad, g)?, 1)
}

/// Dimension of the fiber over a point of stratum `k` (but not `k+1`):
/// `k(n-r)`, the dimension of the Grassmannian `G(k, n-r+k)`.
pub fn fiber_dim(k: u32, params: &FanoParameters) -> Result<i64> {
    ensure_k(k, params)?;
    checked_mul(k as i64, (params.n - params.r) as i64)
}

/// One row of the stratum table.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct StratumRow {
    pub k: u32,
    pub margin: i64,
    pub dim_bound: i64,
    pub fiber_dim: i64,
    /// `dim_bound + 2·fiber_dim`; the aggregate maximum of this column is
    /// the comparison quantity the inequality verdict is about.
    pub candidate: i64,
}

/// The full per-`k` table plus aggregate verdicts.
///
/// Verdicts are `None` (not applicable) when `delta_lower < 0` or some
/// degree equals 1; both checks are hypotheses of the statements they
/// instantiate.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StratumTable {
    pub constants: DerivedConstants,
    pub rows: Vec<StratumRow>,
    /// `max_k candidate(k)`, the bound-based aggregate.
    pub candidate_max: i64,
    /// `2·dim G`.
    pub two_dim_g: i64,
    /// `2·dim G - delta_lower`, the strict upper bound the aggregate must
    /// stay below.
    pub threshold: i64,
    /// `candidate_max < threshold`.
    pub inequality_holds: Option<bool>,
    /// `candidate_max == threshold - 1`.
    pub sharpness_holds: Option<bool>,
    /// Some degree entry equals 1.
    pub unit_degree_flag: bool,
}

/// Evaluate the whole stratum table and its aggregate verdicts.
pub fn compute_table(params: &FanoParameters) -> Result<StratumTable> {
    let constants = derived_constants(params)?;
    let two_dim_g = checked_mul(2, constants.dim_g)?;
    let mut rows = Vec::with_capacity(params.r as usize + 1);
    for k in 0..=params.r {
        let m = margin(k, params)?;
        let b = stratum_dim_bound(k, params)?;
        let f = fiber_dim(k, params)?;
        let candidate = checked_add(b, checked_mul(2, f)?)?;
        debug_assert_eq!(candidate + m, two_dim_g);
        rows.push(StratumRow {
            k,
            margin: m,
            dim_bound: b,
            fiber_dim: f,
            candidate,
        });
    }
    let candidate_max = rows
        .iter()
        .map(|row| row.candidate)
        .max()
        .expect("at least one stratum");
    let threshold = checked_sub(two_dim_g, constants.delta_lower)?;
    let unit_degree_flag = params.d.has_unit_entry();
    let applicable = constants.delta_lower >= 0 && !unit_degree_flag;
    Ok(StratumTable {
        constants,
        rows,
        candidate_max,
        two_dim_g,
        threshold,
        inequality_holds: applicable.then_some(candidate_max < threshold),
        sharpness_holds: applicable.then_some(candidate_max == threshold - 1),
        unit_degree_flag,
    })
}

/// Outcome of the endpoint-minimum analysis of the margin sequence.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EndpointCheck {
    pub values: Vec<i64>,
    pub min_value: i64,
    /// Direct evaluation agrees with `min(margin(0), margin(r))`.
    pub min_at_endpoint: bool,
    /// `min_value == delta_lower + 1`.
    pub equals_delta_lower_plus_one: bool,
    /// For `d = (2)` with `delta_lower ≥ 0`: strictly decreasing, with each
    /// step `margin(k-1) - margin(k) = n - k - r`.
    pub quadric_strictly_decreasing: Option<bool>,
    /// For `d ≠ (2)`: every interior second difference of the margin is
    /// `2 - Δ²G(k) ≤ 0`.
    pub concave: Option<bool>,
}

/// Check, by direct evaluation, that the margin sequence attains its minimum
/// at an endpoint, and the mechanism behind it (strict decrease for a single
/// quadric, concavity otherwise).
///
/// Requires every degree to be at least 2.
pub fn endpoint_minimum_check(params: &FanoParameters) -> Result<EndpointCheck> {
    if params.d.has_unit_entry() {
        return Err(Error::InvalidParameters(
            "endpoint-minimum analysis needs every degree at least 2".to_string(),
        ));
    }
    let constants = derived_constants(params)?;
    let r = params.r;
    let mut values = Vec::with_capacity(r as usize + 1);
    for k in 0..=r {
        values.push(margin(k, params)?);
    }
    let min_value = *values.iter().min().expect("nonempty");
    let endpoint_min = values[0].min(values[r as usize]);
    let min_at_endpoint = min_value == endpoint_min;
    let equals_delta_lower_plus_one = min_value == constants.delta_lower + 1;

    let quadric_strictly_decreasing = if params.d.is_single_quadric() {
        (constants.delta_lower >= 0).then(|| {
            (1..=r).all(|k| {
                let step = values[k as usize - 1] - values[k as usize];
                step == (params.n as i64 - k as i64 - r as i64) && step > 0
            })
        })
    } else {
        None
    };
    let concave = if params.d.is_single_quadric() {
        None
    } else {
        let mut ok = true;
        for k in 1..r {
            let dd = values[k as usize + 1] - 2 * values[k as usize] + values[k as usize - 1];
            let g2 = second_difference(k, params)?;
            if dd != 2 - g2 || dd > 0 {
                ok = false;
            }
        }
        Some(ok)
    };

    Ok(EndpointCheck {
        values,
        min_value,
        min_at_endpoint,
        equals_delta_lower_plus_one,
        quadric_strictly_decreasing,
        concave,
    })
}
