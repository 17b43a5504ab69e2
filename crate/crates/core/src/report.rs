//! JSON shapes for reports. Vertices are rendered by name, rationals as
//! `"p/q"` strings (or `"p"` for integers).

use serde::{Deserialize, Serialize};

use crate::equivalence::{EquivalenceWitness, Violation};
use crate::error::{Error, Result};
use crate::graph::{Distance, Partition, VertexSet};
use crate::neighborhood::NeighborhoodGraph;
use crate::partitions::ConstructionReport;
use crate::similarity::{SimilarityReport, UpperBound};
use crate::transport::{CurvatureResult, Rational};

pub fn rational_string(r: &Rational) -> String {
    if *r.denom() == 1 {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PartitionJson {
    pub blocks: Vec<Vec<String>>,
}

impl PartitionJson {
    pub fn new(p: &Partition, s: &impl VertexSet) -> Self {
        PartitionJson {
            blocks: p.named_blocks(s),
        }
    }

    pub fn parse(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Parse {
            line: e.line(),
            message: e.to_string(),
        })
    }

    pub fn resolve(&self, s: &impl VertexSet) -> Result<Partition> {
        Partition::from_named_blocks(s, &self.blocks)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct NeighborhoodJson {
    pub n: usize,
    pub mode: String,
    pub edges: Vec<[String; 2]>,
    pub blocks: Vec<Vec<String>>,
}

impl NeighborhoodJson {
    pub fn new(ng: &NeighborhoodGraph<'_>) -> Self {
        let names = ng.graph.names();
        NeighborhoodJson {
            n: ng.n,
            mode: ng.mode.map_or("hyper", |m| m.as_str()).to_string(),
            edges: ng
                .graph
                .edges()
                .iter()
                .map(|&(u, v)| [names[u].clone(), names[v].clone()])
                .collect(),
            blocks: ng.components().named_blocks(&ng.graph),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CurvaturePairJson {
    pub x: String,
    pub y: String,
    pub distance: usize,
    pub w1: String,
    pub kappa: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CurvatureJson {
    pub pairs: Vec<CurvaturePairJson>,
}

impl CurvaturePairJson {
    pub fn new(s: &impl VertexSet, x: usize, y: usize, r: &CurvatureResult) -> Self {
        CurvaturePairJson {
            x: s.name(x).to_string(),
            y: s.name(y).to_string(),
            distance: r.distance,
            w1: rational_string(&r.w1),
            kappa: rational_string(&r.kappa),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ViolationJson {
    pub pair: [String; 2],
    pub neighbor: String,
    pub block: usize,
}

impl ViolationJson {
    pub fn new(v: &Violation, s: &impl VertexSet) -> Self {
        ViolationJson {
            pair: [s.name(v.pair.0).to_string(), s.name(v.pair.1).to_string()],
            neighbor: s.name(v.neighbor).to_string(),
            block: v.block,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VerificationJson {
    pub verdict: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub violation: Option<ViolationJson>,
}

impl VerificationJson {
    pub fn new(w: &EquivalenceWitness, s: &impl VertexSet) -> Self {
        VerificationJson {
            verdict: w.verdict(),
            violation: w.violation.as_ref().map(|v| ViolationJson::new(v, s)),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PreconditionJson {
    pub name: String,
    pub met: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ConstructionJson {
    pub method: String,
    pub preconditions: Vec<PreconditionJson>,
    pub verified: bool,
    pub blocks: Vec<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub violation: Option<ViolationJson>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

impl ConstructionJson {
    pub fn new(r: &ConstructionReport, s: &impl VertexSet) -> Self {
        ConstructionJson {
            method: r.method.to_string(),
            preconditions: r
                .preconditions
                .iter()
                .map(|p| PreconditionJson {
                    name: p.name.to_string(),
                    met: p.met,
                })
                .collect(),
            verified: r.verified,
            blocks: r.partition.named_blocks(s),
            violation: r.violation.as_ref().map(|v| ViolationJson::new(v, s)),
            notes: r.notes.clone(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(untagged)]
pub enum DistanceJson {
    Finite(usize),
    Unreachable(String),
}

impl From<Distance> for DistanceJson {
    fn from(d: Distance) -> Self {
        match d {
            Distance::Finite(d) => DistanceJson::Finite(d),
            Distance::Unreachable => DistanceJson::Unreachable("inf".into()),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(untagged)]
pub enum UpperJson {
    Exact(String),
    Interval { lo: String, hi: String },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SimilarityJson {
    pub x: String,
    pub y: String,
    pub walk: String,
    pub eta: usize,
    pub dx: usize,
    pub dy: usize,
    /// Decimal with 12 digits.
    pub sigma: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub sigma_exact: Option<String>,
    pub distance: DistanceJson,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub kappa: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub lower_bound: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub upper_bound: Option<UpperJson>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub bounds_hold: Option<bool>,
    pub fully_dissimilar: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub weak_structural: Option<bool>,
}

impl SimilarityJson {
    pub fn new(r: &SimilarityReport, s: &impl VertexSet) -> Self {
        SimilarityJson {
            x: s.name(r.x).to_string(),
            y: s.name(r.y).to_string(),
            walk: r.walk.as_str().to_string(),
            eta: r.cosine.eta,
            dx: r.cosine.dx,
            dy: r.cosine.dy,
            sigma: format!("{:.12}", r.cosine.value()),
            sigma_exact: r.cosine.exact().map(|v| rational_string(&v)),
            distance: r.distance.into(),
            kappa: r.kappa.as_ref().map(rational_string),
            lower_bound: r.bounds.as_ref().map(|b| rational_string(&b.lower)),
            upper_bound: r.bounds.as_ref().map(|b| match b.upper {
                UpperBound::Exact(u) => UpperJson::Exact(rational_string(&u)),
                UpperBound::Interval { lo, hi } => UpperJson::Interval {
                    lo: rational_string(&lo),
                    hi: rational_string(&hi),
                },
            }),
            bounds_hold: r.check.map(|c| c.holds()),
            fully_dissimilar: r.fully_dissimilar,
            weak_structural: r.weak_structural,
        }
    }
}
