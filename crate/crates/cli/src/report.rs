use serde::Serialize;

use tatehodge::hodge::PeriodMatrix;

#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub name: String,
    pub paper_anchor: String,
    pub status: Status,
    pub detail: String,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

impl Check {
    pub fn new(name: impl Into<String>, anchor: impl Into<String>, ok: bool, detail: impl Into<String>) -> Self {
        Check {
            name: name.into(),
            paper_anchor: anchor.into(),
            status: if ok { Status::Pass } else { Status::Fail },
            detail: detail.into(),
        }
    }

    pub fn error(name: impl Into<String>, anchor: impl Into<String>, err: impl std::fmt::Display) -> Self {
        Check::new(name, anchor, false, format!("error: {err}"))
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ConfigDoc {
    pub k: u32,
    pub a: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub a_note: Option<String>,
    pub b: String,
    pub u: String,
    pub precision_bits: usize,
    pub tolerance: String,
    pub seed: u64,
    pub samples: usize,
    pub parallel: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct MatrixDoc {
    pub k: u32,
    pub a: String,
    pub precision_bits: usize,
    pub path: String,
    pub betti_basis: Vec<String>,
    pub derham_basis: Vec<String>,
    pub weights: Vec<i64>,
    pub entries: Vec<Vec<[String; 2]>>,
}

impl From<&PeriodMatrix> for MatrixDoc {
    fn from(m: &PeriodMatrix) -> Self {
        MatrixDoc {
            k: m.k,
            a: m.a.clone(),
            precision_bits: m.precision_bits,
            path: m.path.clone(),
            betti_basis: m.betti_basis.clone(),
            derham_basis: m.derham_basis.clone(),
            weights: m.weights(),
            entries: m.decimal_entries(),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub command: String,
    pub config: ConfigDoc,
    pub checks: Vec<Check>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub matrix: Option<MatrixDoc>,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(Check::passed)
    }
}
