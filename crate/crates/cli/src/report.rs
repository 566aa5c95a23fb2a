//! Report types: one serializable struct per subcommand, each with a plain
//! text rendering. All numbers are exact — integers stay integers and
//! rationals serialize as `"p/q"` strings, never floats. Serialization is
//! deterministic: field order is fixed and nothing depends on wall time.

use std::fmt::Write as _;

use num_traits::ToPrimitive;
use serde::Serialize;

use fano_strata_core::field::{Field, PrimeField, Rationals};
use fano_strata_core::linalg::Subspace;
use fano_strata_core::strata::{DerivedConstants, EndpointCheck, FanoParameters, StratumTable};

use crate::config::RunConfig;

/// An exact scalar for JSON: an integer when it is one (and fits), the
/// `"p/q"` string otherwise.
#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
#[serde(untagged)]
pub enum ExactScalar {
    Int(i64),
    Ratio(String),
}

pub fn rational_scalar(v: &num_rational::BigRational) -> ExactScalar {
    if v.is_integer() {
        if let Some(i) = v.numer().to_i64() {
            return ExactScalar::Int(i);
        }
    }
    let (neg, mag) = Rationals.display_parts(v);
    ExactScalar::Ratio(if neg { format!("-{mag}") } else { mag })
}

pub fn prime_scalar(v: u64) -> ExactScalar {
    ExactScalar::Int(v as i64)
}

/// A subspace as row-major basis rows plus pivot columns.
#[derive(Clone, Debug, Serialize)]
pub struct SubspaceJson {
    pub dim: usize,
    pub ambient: usize,
    pub pivots: Vec<usize>,
    pub rows: Vec<Vec<ExactScalar>>,
}

pub fn subspace_json<F: Field>(
    space: &Subspace<F>,
    scalar: impl Fn(&F::Elem) -> ExactScalar,
) -> SubspaceJson {
    SubspaceJson {
        dim: space.dim(),
        ambient: space.ambient(),
        pivots: space.pivots().to_vec(),
        rows: (0..space.dim())
            .map(|r| space.basis().row(r).iter().map(&scalar).collect())
            .collect(),
    }
}

/// Render a basis row as a linear form over the given symbol (`x` or `X`).
pub fn linear_form_string<F: Field>(field: &F, row: &[F::Elem], symbol: &str) -> String {
    let mut out = String::new();
    let mut first = true;
    for (j, c) in row.iter().enumerate() {
        if field.is_zero(c) {
            continue;
        }
        let (neg, mag) = field.display_parts(c);
        if first {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        first = false;
        if mag != "1" {
            out.push_str(&mag);
            out.push('*');
        }
        let _ = write!(out, "{symbol}{j}");
    }
    if first {
        out.push('0');
    }
    out
}

#[derive(Clone, Debug, Serialize)]
pub struct ParamsJson {
    pub n: u32,
    pub r: u32,
    pub d: Vec<u32>,
    pub s: u32,
}

impl ParamsJson {
    pub fn from(params: &FanoParameters) -> Self {
        ParamsJson {
            n: params.n(),
            r: params.r(),
            d: params.multidegree().entries().to_vec(),
            s: params.s(),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ConstantsJson {
    pub dim_g: i64,
    pub binom_d_r: i64,
    pub delta: i64,
    pub delta_lower: i64,
}

impl ConstantsJson {
    pub fn from(c: &DerivedConstants) -> Self {
        ConstantsJson {
            dim_g: c.dim_g,
            binom_d_r: c.binom_d_r,
            delta: c.delta,
            delta_lower: c.delta_lower,
        }
    }
}

#[derive(Clone, Copy, Debug, Serialize, PartialEq, Eq)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    Holds,
    Fails,
    NotApplicable,
}

impl Verdict {
    pub fn from_option(v: Option<bool>) -> Self {
        match v {
            Some(true) => Verdict::Holds,
            Some(false) => Verdict::Fails,
            None => Verdict::NotApplicable,
        }
    }

    pub fn ok(&self) -> bool {
        !matches!(self, Verdict::Fails)
    }

    fn text(&self) -> &'static str {
        match self {
            Verdict::Holds => "holds",
            Verdict::Fails => "FAILS",
            Verdict::NotApplicable => "not-applicable",
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct StratumRowJson {
    pub k: u32,
    pub margin: i64,
    pub dim_bound: i64,
    pub fiber_dim: i64,
    pub candidate: i64,
}

#[derive(Clone, Debug, Serialize)]
pub struct TableJson {
    pub rows: Vec<StratumRowJson>,
    pub candidate_max: i64,
    pub two_dim_g: i64,
    pub threshold: i64,
}

impl TableJson {
    pub fn from(t: &StratumTable) -> Self {
        TableJson {
            rows: t
                .rows
                .iter()
                .map(|r| StratumRowJson {
                    k: r.k,
                    margin: r.margin,
                    dim_bound: r.dim_bound,
                    fiber_dim: r.fiber_dim,
                    candidate: r.candidate,
                })
                .collect(),
            candidate_max: t.candidate_max,
            two_dim_g: t.two_dim_g,
            threshold: t.threshold,
        }
    }
}

/// The cohomology-comparison range implied by `delta_lower`: restriction is
/// an isomorphism for `i < delta_lower` and injective at `i = delta_lower`.
/// Absent (vacuous) when `delta_lower < 0`.
#[derive(Clone, Debug, Serialize)]
pub struct ComparisonRange {
    pub iso_max_index: i64,
    pub injective_index: i64,
}

#[derive(Clone, Debug, Serialize)]
pub struct VerdictsJson {
    pub inequality: Verdict,
    pub sharpness: Verdict,
    pub endpoint_min: Verdict,
    pub trivial_zero_form: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct AnalysisReport {
    pub command: &'static str,
    pub config: RunConfig,
    pub params: ParamsJson,
    pub constants: ConstantsJson,
    pub comparison_range: Option<ComparisonRange>,
    pub table: TableJson,
    pub unit_degree_flag: bool,
    pub verdicts: VerdictsJson,
}

impl AnalysisReport {
    pub fn build(
        config: RunConfig,
        params: &FanoParameters,
        table: &StratumTable,
        endpoint: Option<&EndpointCheck>,
    ) -> Self {
        let c = &table.constants;
        let applicable = c.delta_lower >= 0 && !table.unit_degree_flag;
        let endpoint_verdict = if !applicable {
            Verdict::NotApplicable
        } else {
            match endpoint {
                Some(e) => Verdict::from_option(Some(
                    e.min_at_endpoint && e.equals_delta_lower_plus_one,
                )),
                None => Verdict::NotApplicable,
            }
        };
        AnalysisReport {
            command: "analyze",
            config,
            params: ParamsJson::from(params),
            constants: ConstantsJson::from(c),
            comparison_range: (c.delta_lower >= 0).then(|| ComparisonRange {
                iso_max_index: c.delta_lower - 1,
                injective_index: c.delta_lower,
            }),
            table: TableJson::from(table),
            unit_degree_flag: table.unit_degree_flag,
            verdicts: VerdictsJson {
                inequality: Verdict::from_option(table.inequality_holds),
                sharpness: Verdict::from_option(table.sharpness_holds),
                endpoint_min: endpoint_verdict,
                trivial_zero_form: false,
            },
        }
    }

    pub fn all_applicable_hold(&self) -> bool {
        self.verdicts.inequality.ok() && self.verdicts.sharpness.ok() && self.verdicts.endpoint_min.ok()
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let d: Vec<String> = self.params.d.iter().map(u32::to_string).collect();
        let _ = writeln!(
            out,
            "parameters   n={} r={} d=({}) s={}",
            self.params.n,
            self.params.r,
            d.join(","),
            self.params.s
        );
        let _ = writeln!(
            out,
            "derived      dim G = {}   sum C(d_i+r, r) = {}   delta = {}   delta_lower = {}",
            self.constants.dim_g,
            self.constants.binom_d_r,
            self.constants.delta,
            self.constants.delta_lower
        );
        match &self.comparison_range {
            Some(range) if range.iso_max_index >= 0 => {
                let _ = writeln!(
                    out,
                    "comparison   isomorphism for i in {{0..{}}}; injective at i = {}",
                    range.iso_max_index, range.injective_index
                );
            }
            Some(range) => {
                let _ = writeln!(
                    out,
                    "comparison   injective at i = {} (empty isomorphism range)",
                    range.injective_index
                );
            }
            None => {
                let _ = writeln!(out, "comparison   vacuous (delta_lower < 0)");
            }
        }
        if self.unit_degree_flag {
            let _ = writeln!(out, "note         some degree equals 1; verdicts suppressed");
        }
        let _ = writeln!(out, "{:>4} {:>8} {:>10} {:>10} {:>10}", "k", "margin", "dim_bound", "fiber_dim", "candidate");
        for r in &self.table.rows {
            let _ = writeln!(
                out,
                "{:>4} {:>8} {:>10} {:>10} {:>10}",
                r.k, r.margin, r.dim_bound, r.fiber_dim, r.candidate
            );
        }
        let _ = writeln!(
            out,
            "aggregate    candidate_max = {}   threshold = {} (2*dimG - delta_lower)",
            self.table.candidate_max, self.table.threshold
        );
        let _ = writeln!(
            out,
            "verdicts     inequality: {}   sharpness: {}   endpoint-min: {}",
            self.verdicts.inequality.text(),
            self.verdicts.sharpness.text(),
            self.verdicts.endpoint_min.text()
        );
        out
    }
}

#[derive(Clone, Debug, Serialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum FieldJson {
    Rationals,
    Prime { p: u64 },
}

#[derive(Clone, Debug, Serialize)]
pub struct QuadricRankCheck {
    pub matrix_rank: usize,
    pub agrees: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct ApolarReport {
    pub command: &'static str,
    pub config: RunConfig,
    pub field: FieldJson,
    pub n: u32,
    pub degrees: Vec<u32>,
    pub tuple: String,
    pub zero_tuple: bool,
    pub rank: usize,
    pub annihilator: SubspaceJson,
    pub essential: SubspaceJson,
    /// Human-readable bases: annihilator rows as forms in `X`, essential
    /// rows as forms in `x`.
    pub annihilator_forms: Vec<String>,
    pub essential_forms: Vec<String>,
    pub quadric_rank_check: Option<QuadricRankCheck>,
}

impl ApolarReport {
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let d: Vec<String> = self.degrees.iter().map(u32::to_string).collect();
        let _ = writeln!(out, "tuple        {}   (n = {}, d = ({}))", self.tuple, self.n, d.join(","));
        if self.zero_tuple {
            let _ = writeln!(out, "note         zero tuple: trivial case, every subspace carries it");
        }
        let _ = writeln!(out, "rank m       {}", self.rank);
        let _ = writeln!(
            out,
            "A basis      {}",
            if self.annihilator_forms.is_empty() {
                "(zero space)".to_string()
            } else {
                self.annihilator_forms.join(",  ")
            }
        );
        let _ = writeln!(
            out,
            "M basis      {}",
            if self.essential_forms.is_empty() {
                "(zero space)".to_string()
            } else {
                self.essential_forms.join(",  ")
            }
        );
        if let Some(check) = &self.quadric_rank_check {
            let _ = writeln!(
                out,
                "quadric      symmetric matrix rank = {} ({})",
                check.matrix_rank,
                if check.agrees { "agrees with m" } else { "DISAGREES with m" }
            );
        }
        out
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct FanoCountReport {
    pub command: &'static str,
    pub config: RunConfig,
    pub field: FieldJson,
    pub params: ParamsJson,
    pub tuple: String,
    pub count: u64,
    /// Present only when members were requested.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub members: Option<Vec<SubspaceJson>>,
    /// Pointwise-vanishing cross-check over every member; only meaningful
    /// (and only run) when `q` exceeds every degree.
    pub pointwise_crosscheck: Option<bool>,
}

impl FanoCountReport {
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let d: Vec<String> = self.params.d.iter().map(u32::to_string).collect();
        let FieldJson::Prime { p } = self.field else {
            unreachable!("plane counting is finite-field only")
        };
        let _ = writeln!(
            out,
            "zero locus   {}   (n = {}, d = ({}), q = {})",
            self.tuple,
            self.params.n,
            d.join(","),
            p
        );
        let _ = writeln!(out, "planes       r = {}  count = {}", self.params.r, self.count);
        if let Some(check) = self.pointwise_crosscheck {
            let _ = writeln!(
                out,
                "crosscheck   pointwise vanishing on members: {}",
                if check { "agrees" } else { "DISAGREES" }
            );
        }
        if let Some(members) = &self.members {
            for (i, m) in members.iter().enumerate() {
                let rows: Vec<String> = m
                    .rows
                    .iter()
                    .map(|row| {
                        let cells: Vec<String> = row
                            .iter()
                            .map(|c| match c {
                                ExactScalar::Int(v) => v.to_string(),
                                ExactScalar::Ratio(s) => s.clone(),
                            })
                            .collect();
                        format!("[{}]", cells.join(" "))
                    })
                    .collect();
                let _ = writeln!(out, "member {i:>4}  {}", rows.join(" "));
            }
        }
        out
    }
}

/// Outcome of one verification suite.
#[derive(Clone, Debug, Serialize)]
pub struct SuiteReport {
    pub command: &'static str,
    pub suite: String,
    pub config: RunConfig,
    pub params: serde_json::Value,
    pub cases: u64,
    pub failures: Vec<String>,
    pub passed: bool,
}

impl SuiteReport {
    pub fn new(suite: &str, config: RunConfig, params: serde_json::Value, cases: u64, failures: Vec<String>) -> Self {
        SuiteReport {
            command: "verify",
            suite: suite.to_string(),
            config,
            params,
            cases,
            passed: failures.is_empty(),
            failures,
        }
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(
            out,
            "suite {}: {} cases checked, {} failures -> {}",
            self.suite,
            self.cases,
            self.failures.len(),
            if self.passed { "PASS" } else { "FAIL" }
        );
        for f in &self.failures {
            let _ = writeln!(out, "  failure: {f}");
        }
        out
    }
}

pub fn rationals_subspace_json(space: &Subspace<Rationals>) -> SubspaceJson {
    subspace_json(space, rational_scalar)
}

pub fn prime_subspace_json(space: &Subspace<PrimeField>) -> SubspaceJson {
    subspace_json(space, |v| prime_scalar(*v))
}
