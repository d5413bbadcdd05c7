//! JSON shapes of the command outputs. Field order is the output order.

use serde::Serialize;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Invariants {
    #[serde(rename = "D1")]
    pub d1: String,
    #[serde(rename = "D2")]
    pub d2: String,
    #[serde(rename = "D3")]
    pub d3: String,
    pub discriminant: String,
    pub hankel_rank: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RootOut {
    /// Exact value or radical expression in prefix notation.
    pub expr: String,
    pub re: f64,
    pub im: f64,
    pub multiplicity: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Summand {
    pub coefficient: String,
    pub linear_form: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Decomposition {
    pub degree: u32,
    pub variables: Vec<String>,
    pub summands: Vec<Summand>,
    pub text: String,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Verification {
    pub max_residual: f64,
    pub oracle_max_distance: f64,
    pub passed: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SolveReport {
    pub input: String,
    pub degree: usize,
    pub class: String,
    pub invariants: Option<Invariants>,
    pub roots: Vec<RootOut>,
    pub decomposition: Option<Decomposition>,
    pub verification: Option<Verification>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CenterReport {
    pub input: String,
    pub n: usize,
    pub degree: u32,
    pub dim: usize,
    pub commutative: bool,
    pub basis: Vec<Vec<Vec<String>>>,
    pub invariants: Option<Invariants>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DecomposeReport {
    pub input: String,
    pub n: usize,
    pub degree: u32,
    /// `exact` or `numeric`.
    pub mode: String,
    pub decomposition: Decomposition,
    pub verified: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ClassifyReport {
    pub input: String,
    pub degree: usize,
    pub class: String,
    pub invariants: Option<Invariants>,
    pub witness: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct OracleRootOut {
    pub re: f64,
    pub im: f64,
    pub multiplicity: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct OracleReport {
    pub input: String,
    pub degree: usize,
    pub precision: usize,
    pub iterations: usize,
    pub roots: Vec<OracleRootOut>,
}
