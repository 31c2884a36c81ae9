//! Serialized output documents. Rationals are `"p/q"` strings; the `*_decimal`
//! fields are advisory `f64` duplicates.

use crossing_core::bounds::{psi_variance_bound, BoundInputs};
use crossing_core::rational::{fraction_string, to_f64};
use crossing_core::{kolmogorov_bound, Graph, MomentReport, PairClass, Pmf, Rational};
use serde::Serialize;
use std::collections::BTreeMap;

pub const ANALYSIS_SCHEMA: &str = "crossings.analysis/1";
pub const SIMULATION_SCHEMA: &str = "crossings.simulation/1";
pub const EXACT_SCHEMA: &str = "crossings.exact/1";
pub const BOUND_SCHEMA: &str = "crossings.bound/1";

#[derive(Debug, Serialize)]
pub struct GraphSummary {
    pub n: usize,
    pub m: usize,
    pub max_degree: usize,
    pub labels: Vec<String>,
}

impl GraphSummary {
    pub fn new(g: &Graph) -> Self {
        GraphSummary {
            n: g.vertex_count(),
            m: g.edge_count(),
            max_degree: g.max_degree(),
            labels: g.labels().to_vec(),
        }
    }
}

#[derive(Debug, Serialize)]
pub struct Exact {
    pub fraction: String,
    pub decimal: f64,
}

impl From<&Rational> for Exact {
    fn from(r: &Rational) -> Self {
        Exact {
            fraction: fraction_string(r),
            decimal: to_f64(r),
        }
    }
}

#[derive(Debug, Serialize)]
pub struct MatchingCounts {
    pub m1: String,
    pub m2: String,
    pub m3: String,
    pub m4: String,
}

#[derive(Debug, Serialize)]
pub struct Moments {
    pub mean: Exact,
    pub second_moment: Exact,
    pub variance: Exact,
}

#[derive(Debug, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum BoundSection {
    Ok {
        sigma: f64,
        coupling_bound: f64,
        radicand: f64,
        psi_bound: f64,
        psi_variance_bound: f64,
        kolmogorov_bound: f64,
    },
    Degenerate {
        reason: String,
    },
}

impl BoundSection {
    pub fn new(report: &MomentReport) -> Self {
        let inputs = BoundInputs::from(report);
        let (psi_var, bound) = match (psi_variance_bound(&inputs), kolmogorov_bound(&inputs)) {
            (Ok(p), Ok(b)) => (p, b),
            (Err(e), _) | (_, Err(e)) => {
                return BoundSection::Degenerate {
                    reason: e.to_string(),
                }
            }
        };
        BoundSection::Ok {
            sigma: bound.sigma,
            coupling_bound: bound.coupling_bound,
            radicand: bound.radicand,
            psi_bound: bound.psi_bound,
            psi_variance_bound: psi_var,
            kolmogorov_bound: bound.kolmogorov_bound,
        }
    }
}

#[derive(Debug, Serialize)]
pub struct AnalysisDocument {
    pub schema: &'static str,
    pub tool_version: &'static str,
    pub input_digest: String,
    pub graph: GraphSummary,
    pub matchings: MatchingCounts,
    pub census: BTreeMap<String, String>,
    pub moments: Moments,
    pub bound: BoundSection,
}

impl AnalysisDocument {
    pub fn new(g: &Graph, report: &MomentReport, digest: String) -> Self {
        AnalysisDocument {
            schema: ANALYSIS_SCHEMA,
            tool_version: env!("CARGO_PKG_VERSION"),
            input_digest: digest,
            graph: GraphSummary::new(g),
            matchings: MatchingCounts {
                m1: g.edge_count().to_string(),
                m2: report.m2.to_string(),
                m3: report.m3.to_string(),
                m4: report.m4.to_string(),
            },
            census: PairClass::ALL
                .iter()
                .map(|&c| (c.name().to_string(), report.census.count(c).to_string()))
                .collect(),
            moments: Moments {
                mean: (&report.mean).into(),
                second_moment: (&report.second_moment).into(),
                variance: (&report.variance).into(),
            },
            bound: BoundSection::new(report),
        }
    }

    /// Flat `key,value` rows.
    pub fn to_csv(&self) -> String {
        let mut rows: Vec<(String, String)> = vec![
            ("schema".into(), self.schema.into()),
            ("tool_version".into(), self.tool_version.into()),
            ("input_digest".into(), self.input_digest.clone()),
            ("n".into(), self.graph.n.to_string()),
            ("m".into(), self.graph.m.to_string()),
            ("max_degree".into(), self.graph.max_degree.to_string()),
            ("m1".into(), self.matchings.m1.clone()),
            ("m2".into(), self.matchings.m2.clone()),
            ("m3".into(), self.matchings.m3.clone()),
            ("m4".into(), self.matchings.m4.clone()),
        ];
        for (class, count) in &self.census {
            rows.push((format!("census_{class}"), count.clone()));
        }
        for (name, value) in [
            ("mean", &self.moments.mean),
            ("second_moment", &self.moments.second_moment),
            ("variance", &self.moments.variance),
        ] {
            rows.push((name.into(), value.fraction.clone()));
            rows.push((format!("{name}_decimal"), value.decimal.to_string()));
        }
        match &self.bound {
            BoundSection::Ok {
                sigma,
                coupling_bound,
                radicand,
                psi_bound,
                psi_variance_bound,
                kolmogorov_bound,
            } => {
                rows.push(("bound_status".into(), "ok".into()));
                for (k, v) in [
                    ("sigma", sigma),
                    ("coupling_bound", coupling_bound),
                    ("radicand", radicand),
                    ("psi_bound", psi_bound),
                    ("psi_variance_bound", psi_variance_bound),
                    ("kolmogorov_bound", kolmogorov_bound),
                ] {
                    rows.push((k.into(), v.to_string()));
                }
            }
            BoundSection::Degenerate { reason } => {
                rows.push(("bound_status".into(), "degenerate".into()));
                rows.push(("bound_reason".into(), reason.clone()));
            }
        }
        let mut out = String::from("key,value\n");
        for (k, v) in rows {
            out.push_str(&format!("{k},{}\n", csv_field(&v)));
        }
        out
    }
}

fn csv_field(v: &str) -> String {
    if v.contains([',', '"', '\n']) {
        format!("\"{}\"", v.replace('"', "\"\""))
    } else {
        v.to_string()
    }
}

#[derive(Debug, Serialize)]
pub struct PmfEntry {
    pub k: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub count: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub fraction: Option<String>,
    pub probability: f64,
}

pub fn pmf_entries(pmf: &Pmf) -> Vec<PmfEntry> {
    (0..pmf.len())
        .map(|k| PmfEntry {
            k,
            count: match pmf {
                Pmf::Empirical { counts, .. } => Some(counts[k]),
                Pmf::Exact { .. } => None,
            },
            fraction: pmf.exact_probability(k).map(|p| fraction_string(&p)),
            probability: pmf.probability(k),
        })
        .collect()
}

#[derive(Debug, Serialize)]
pub struct ExactDocument {
    pub schema: &'static str,
    pub tool_version: &'static str,
    pub input_digest: String,
    pub graph: GraphSummary,
    pub pmf: Vec<PmfEntry>,
    pub mean: Exact,
    pub variance: Exact,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub ks_to_normal: Option<f64>,
}

#[derive(Debug, Serialize)]
pub struct SimulationDocument {
    pub schema: &'static str,
    pub tool_version: &'static str,
    pub input_digest: String,
    pub graph: GraphSummary,
    pub samples: u64,
    pub seed: u64,
    pub pmf: Vec<PmfEntry>,
    pub empirical_mean: f64,
    pub empirical_variance: f64,
    /// `exact` when the census fit the cap, otherwise `empirical`.
    pub standardization: &'static str,
    pub standardization_mean: f64,
    pub standardization_sigma: f64,
    pub ks_to_normal: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub exact: Option<ExactDocument>,
}

#[derive(Debug, Serialize)]
pub struct BoundDocument {
    pub schema: &'static str,
    pub tool_version: &'static str,
    pub input_digest: String,
    pub graph: GraphSummary,
    pub m2: String,
    pub m4: String,
    pub variance: Exact,
    pub bound: BoundSection,
}
