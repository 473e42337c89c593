//! Serializable shapes of everything the CLI prints.

use hfischer_core::decompose::{DecompositionResult, TheoremReport};
use hfischer_core::{GradeSet, Violation};
use serde::{Deserialize, Serialize};

use crate::io::PolyJson;

#[derive(Debug, Serialize, Deserialize)]
pub struct BasisJson {
    pub kind: String,
    pub m: usize,
    pub grades: Vec<usize>,
    pub k: usize,
    pub dim: usize,
    pub basis: Vec<PolyJson>,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct ApplyJson {
    pub op: Option<String>,
    pub word: Option<String>,
    pub result: PolyJson,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct ComponentJson {
    pub label: String,
    pub component: PolyJson,
    pub generator: PolyJson,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct DecompositionJson {
    pub theorem: String,
    pub m: usize,
    pub exact: bool,
    pub input: PolyJson,
    pub components: Vec<ComponentJson>,
    pub residual: PolyJson,
}

impl DecompositionJson {
    pub fn new(theorem: &str, d: &DecompositionResult) -> Self {
        DecompositionJson {
            theorem: theorem.to_string(),
            m: d.input.dim(),
            exact: d.is_exact(),
            input: PolyJson::from(&d.input),
            components: d
                .components
                .iter()
                .map(|(label, c)| ComponentJson {
                    label: label.to_string(),
                    component: PolyJson::from(c),
                    generator: PolyJson::from(&d.generators[label]),
                })
                .collect(),
            residual: PolyJson::from(&d.residual),
        }
    }
}

#[derive(Debug, Serialize, Deserialize)]
pub struct WitnessJson {
    pub context: String,
    pub message: String,
    pub poly: Option<PolyJson>,
}

impl From<&Violation> for WitnessJson {
    fn from(v: &Violation) -> Self {
        WitnessJson {
            context: v.context.clone(),
            message: v.message.clone(),
            poly: v.witness.as_ref().map(PolyJson::from),
        }
    }
}

#[derive(Debug, Serialize, Deserialize)]
pub struct DimJson {
    pub name: String,
    pub dim: usize,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct ReportJson {
    pub theorem: String,
    pub m: usize,
    pub grades: Vec<usize>,
    pub k: usize,
    pub dims: Vec<DimJson>,
    pub target_dim: usize,
    pub direct_sum: bool,
    pub fills: bool,
    pub passed: bool,
    pub witness: Option<WitnessJson>,
}

impl From<&TheoremReport> for ReportJson {
    fn from(r: &TheoremReport) -> Self {
        ReportJson {
            theorem: r.theorem.name().to_string(),
            m: r.m,
            grades: grades(r.grades),
            k: r.k,
            dims: r
                .dims
                .iter()
                .map(|(name, dim)| DimJson {
                    name: name.clone(),
                    dim: *dim,
                })
                .collect(),
            target_dim: r.target_dim,
            direct_sum: r.direct_sum,
            fills: r.fills,
            passed: r.passed(),
            witness: r.witness.as_ref().map(WitnessJson::from),
        }
    }
}

#[derive(Debug, Serialize, Deserialize)]
pub struct TheoremSummaryJson {
    pub theorem: String,
    pub passed: usize,
    pub failed: usize,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct RandomCheckJson {
    pub theorem: String,
    pub samples: usize,
    pub failures: usize,
    pub first_failure: Option<PolyJson>,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct VerifyJson {
    pub m: usize,
    pub kmax: usize,
    pub theorems: Vec<String>,
    pub seed: u64,
    pub complete: bool,
    pub skipped: usize,
    pub passed: usize,
    pub failed: usize,
    pub summary: Vec<TheoremSummaryJson>,
    pub random_checks: Vec<RandomCheckJson>,
    pub reports: Vec<ReportJson>,
}

pub fn grades(g: GradeSet) -> Vec<usize> {
    g.iter().collect()
}
