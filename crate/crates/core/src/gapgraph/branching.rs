use serde::{Deserialize, Serialize};

use super::GapGraph;
use crate::dictionary::TruncatedDictionary;
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VertexDegree {
    pub word: String,
    #[serde(rename = "out")]
    pub out_degree: usize,
    #[serde(rename = "in")]
    pub in_degree: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BranchingReport {
    pub order: usize,
    pub p_k: usize,
    pub p_k1: usize,
    pub b_plus: usize,
    pub b_minus: usize,
    pub b: usize,
    pub dangling: Vec<String>,
    /// The complexity bounds only hold without dangling vertices and for
    /// alphabets with at least two letters; false means they were skipped.
    pub bounds_checked: bool,
    pub vertices: Vec<VertexDegree>,
}

impl BranchingReport {
    pub fn forward_branching(&self) -> impl Iterator<Item = &VertexDegree> {
        self.vertices.iter().filter(|v| v.out_degree > 1)
    }

    pub fn backward_branching(&self) -> impl Iterator<Item = &VertexDegree> {
        self.vertices.iter().filter(|v| v.in_degree > 1)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

/// Degrees and branching counts of `g`, with the complexity bounds
/// b± ≤ Δp and Δp/(|A|−1) ≤ b ≤ 2Δp checked in integers.
pub fn branching_report(g: &GapGraph) -> Result<BranchingReport> {
    let vertices: Vec<VertexDegree> = (0..g.vertices().len())
        .map(|v| VertexDegree {
            word: g.render(&g.vertices()[v]),
            out_degree: g.out_edges(v).len(),
            in_degree: g.in_edges(v).len(),
        })
        .collect();
    let b_plus = vertices.iter().filter(|v| v.out_degree > 1).count();
    let b_minus = vertices.iter().filter(|v| v.in_degree > 1).count();
    let b = vertices.iter().filter(|v| v.out_degree > 1 || v.in_degree > 1).count();
    let p_k = vertices.len();
    let p_k1 = g.edges().len();
    let dangling: Vec<String> = g.dangling_vertices().into_iter().map(|v| vertices[v].word.clone()).collect();

    let out_sum: usize = vertices.iter().map(|v| v.out_degree).sum();
    let in_sum: usize = vertices.iter().map(|v| v.in_degree).sum();
    if out_sum != p_k1 || in_sum != p_k1 || b > b_plus + b_minus {
        return Err(Error::Internal(format!("degree bookkeeping failed at order {}", g.order())));
    }

    let letters = g.alphabet().len();
    let bounds_checked = dangling.is_empty() && letters > 1;
    if bounds_checked {
        let delta = p_k1
            .checked_sub(p_k)
            .ok_or_else(|| Error::Internal(format!("complexity decreased at order {}", g.order())))?;
        let ok = b_plus <= delta && b_minus <= delta && delta <= b * (letters - 1) && b <= 2 * delta;
        if !ok {
            return Err(Error::Internal(format!(
                "branching bounds fail at order {}: b+={b_plus} b-={b_minus} b={b} dp={delta}",
                g.order()
            )));
        }
    }

    Ok(BranchingReport { order: g.order(), p_k, p_k1, b_plus, b_minus, b, dangling, bounds_checked, vertices })
}

/// p(k+1)/p(k).
pub fn amenability_ratio(d: &TruncatedDictionary, k: usize) -> Result<f64> {
    Ok(d.complexity(k + 1)? as f64 / d.complexity(k)? as f64)
}

/// ln p(k) / k.
pub fn entropy_estimate(d: &TruncatedDictionary, k: usize) -> Result<f64> {
    if k == 0 {
        return Err(Error::Validation("entropy estimate needs k >= 1".into()));
    }
    Ok((d.complexity(k)? as f64).ln() / k as f64)
}
