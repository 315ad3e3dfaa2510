use num_rational::Ratio;
use serde::{Deserialize, Serialize};

use crate::algebra::{Ambient, VarietySpec};
use crate::mu::MuParams;
use crate::padic::Side;
use crate::zeta::ZetaFunction;
use crate::IntPoly;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
    Error,
}

impl Verdict {
    /// `Pass` iff every flag is true.
    pub fn from_flags(flags: impl IntoIterator<Item = bool>) -> Self {
        if flags.into_iter().all(|b| b) {
            Verdict::Pass
        } else {
            Verdict::Fail
        }
    }

    /// Error dominates fail, fail dominates pass.
    pub fn combine(self, other: Verdict) -> Verdict {
        use Verdict::*;
        match (self, other) {
            (Error, _) | (_, Error) => Error,
            (Fail, _) | (_, Fail) => Fail,
            _ => Pass,
        }
    }
}

impl std::fmt::Display for Verdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Verdict::Pass => write!(f, "pass"),
            Verdict::Fail => write!(f, "fail"),
            Verdict::Error => write!(f, "error"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum DimSource {
    Estimated,
    User,
}

/// Plain-data description of the input variety.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpecSummary {
    pub p: u64,
    pub e: u32,
    pub q: u64,
    pub ambient: Ambient,
    pub n: usize,
    pub polys: Vec<String>,
    pub degrees: Vec<u32>,
}

impl From<&VarietySpec> for SpecSummary {
    fn from(s: &VarietySpec) -> Self {
        SpecSummary {
            p: s.field().p(),
            e: s.field().e(),
            q: s.q(),
            ambient: s.ambient(),
            n: s.n(),
            polys: s.polys().iter().map(|f| f.to_string()).collect(),
            degrees: s.degrees().to_vec(),
        }
    }
}

/// One irreducible factor checked against a required exponent.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DivisibilityRow {
    #[serde(with = "crate::json::int_poly")]
    pub factor: IntPoly,
    pub multiplicity: u32,
    pub side: Side,
    pub weight: u32,
    pub min_vq: Ratio<i64>,
    pub required: u32,
    /// Arguments of `mu` producing `required`; absent for the baseline exponent.
    pub mu_args: Option<MuParams>,
    pub pass: bool,
    pub justification: String,
}

/// Factor-by-factor check of one zeta function.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DivisibilityReport {
    pub check: String,
    pub zeta: Option<ZetaFunction>,
    pub rows: Vec<DivisibilityRow>,
    pub overall: Verdict,
    pub error: Option<String>,
}

impl DivisibilityReport {
    pub(crate) fn from_rows(check: &str, zeta: ZetaFunction, rows: Vec<DivisibilityRow>) -> Self {
        let overall = Verdict::from_flags(rows.iter().map(|r| r.pass));
        DivisibilityReport {
            check: check.into(),
            zeta: Some(zeta),
            rows,
            overall,
            error: None,
        }
    }

    pub(crate) fn failed(check: &str, zeta: Option<ZetaFunction>, err: &crate::Error) -> Self {
        DivisibilityReport {
            check: check.into(),
            zeta,
            rows: Vec::new(),
            overall: Verdict::Error,
            error: Some(err.to_string()),
        }
    }
}

/// Complement and variety checks for a projective variety.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ProjectiveReport {
    pub spec: SpecSummary,
    pub dim_used: Option<i64>,
    pub dim_source: DimSource,
    pub complement: DivisibilityReport,
    pub variety: DivisibilityReport,
    pub overall: Verdict,
}

/// Reciprocal poles of `Z(X, T)^{(-1)^(dim X - 1)}` for an affine complete intersection.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PolarReport {
    pub spec: SpecSummary,
    pub dim_used: Option<i64>,
    pub dim_source: DimSource,
    /// Whether the complete-intersection hypothesis was asserted by the caller.
    pub asserted_ci: bool,
    /// `(-1)^(dim - 1)`.
    pub orientation: i32,
    pub poles: DivisibilityReport,
    pub overall: Verdict,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CountRow {
    pub k: u32,
    /// What was counted: `variety`, `complement` or `cone`.
    pub form: String,
    pub count: u128,
    /// Required power of `p`: the count must be divisible by `q^(k mu) = p^exponent`.
    pub exponent: u32,
    pub pass: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AxKatzReport {
    pub spec: SpecSummary,
    pub mu: u32,
    pub mu_args: MuParams,
    pub rows: Vec<CountRow>,
    pub overall: Verdict,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExcisionRow {
    pub k: u32,
    /// `#(P^n \ Y)`.
    pub projective_complement: u128,
    /// `#(A^n \ X)`.
    pub affine_complement: u128,
    /// `#(P^(n-1) \ Y_inf)`.
    pub infinity_complement: u128,
    pub pass: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ExcisionReport {
    pub spec: SpecSummary,
    /// Homogenized equations of the closure `Y`.
    pub closure: Vec<String>,
    /// Equations of `Y_inf` in `P^(n-1)`.
    pub infinity: Vec<String>,
    pub rows: Vec<ExcisionRow>,
    pub overall: Verdict,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ProbeStatus {
    Satisfied,
    Violated,
}

/// Exploratory check of an open question; never a pass/fail verdict.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ProbeReport {
    pub label: String,
    pub spec: SpecSummary,
    pub dim_used: Option<i64>,
    /// Rows for `Z(X, T)`; `pass` means the probed bound holds for that factor.
    pub variety: Vec<DivisibilityRow>,
    /// Rows for `Z(A^n \ X, T)`.
    pub complement: Vec<DivisibilityRow>,
    pub status: ProbeStatus,
    pub violations: usize,
    pub note: String,
}
