use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::fstar::GeneratorMap;
use crate::fiber_graph::FiberGraph;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum HomologyError {
    #[error("graph and matrix disagree: {0}")]
    InconsistentInput(String),
    #[error("integer overflow during elimination")]
    Overflow,
}

/// Abelianized map: row k is the exponent-sum vector of the image of domain
/// generator k.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HomologyMatrix {
    pub row_labels: Vec<String>,
    pub col_labels: Vec<String>,
    pub rows: Vec<Vec<i64>>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum WitnessKind {
    /// Boundary of a graph component away from the unbounded region.
    Component,
    /// Signed sum of the B-circle generators along a cycle.
    Cycle,
    /// Nonzero determinant other than ±1; no integer kernel vector exists.
    Determinant,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    pub kind: WitnessKind,
    /// Coefficient per matrix row (empty for `Determinant`).
    pub vector: Vec<i64>,
    /// Row labels with nonzero coefficient.
    pub support: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Obstruction {
    pub det: i128,
    pub witnesses: Vec<Witness>,
}

impl HomologyMatrix {
    pub fn size(&self) -> usize {
        self.rows.len()
    }

    /// `v · M`.
    pub fn left_apply(&self, v: &[i64]) -> Vec<i64> {
        let mut out = vec![0i64; self.col_labels.len()];
        for (row, &c) in self.rows.iter().zip(v) {
            for (o, &x) in out.iter_mut().zip(row) {
                *o += c * x;
            }
        }
        out
    }

    pub fn row_index(&self, label: &str) -> Option<usize> {
        self.row_labels.iter().position(|l| l == label)
    }

    /// Fraction-free (Bareiss) elimination in 128-bit integers.
    pub fn det(&self) -> Result<i128, HomologyError> {
        let n = self.rows.len();
        if n == 0 {
            return Ok(1);
        }
        let mut a: Vec<Vec<i128>> = self
            .rows
            .iter()
            .map(|r| r.iter().map(|&x| x as i128).collect())
            .collect();
        let mut sign = 1i128;
        let mut prev = 1i128;
        for k in 0..n - 1 {
            if a[k][k] == 0 {
                let Some(p) = (k + 1..n).find(|&i| a[i][k] != 0) else {
                    return Ok(0);
                };
                a.swap(k, p);
                sign = -sign;
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let x = a[i][j]
                        .checked_mul(a[k][k])
                        .and_then(|x| x.checked_sub(a[i][k].checked_mul(a[k][j])?))
                        .ok_or(HomologyError::Overflow)?;
                    a[i][j] = x / prev;
                }
                a[i][k] = 0;
            }
            prev = a[k][k];
        }
        Ok(sign * a[n - 1][n - 1])
    }
}

pub fn abelianize(m: &GeneratorMap) -> HomologyMatrix {
    let rank = m.codomain.len();
    HomologyMatrix {
        row_labels: m.domain.clone(),
        col_labels: m.codomain.clone(),
        rows: m.images.iter().map(|w| w.exponent_sums(rank)).collect(),
    }
}

fn u(id: &str) -> String {
    format!("u_{id}")
}

/// A left-kernel vector of the abelianized map for each defect of G_B, or
/// `None` when the matrix is unimodular.
pub fn homology_obstruction(
    g: &FiberGraph,
    m: &HomologyMatrix,
) -> Result<Option<Obstruction>, HomologyError> {
    let rows: BTreeSet<&str> = m.row_labels.iter().map(String::as_str).collect();
    let mut missing = vec![];
    for v in &g.vertices {
        if !rows.contains(u(v).as_str()) {
            missing.push(v.as_str());
        }
    }
    if missing.len() != 1 {
        return Err(HomologyError::InconsistentInput(format!(
            "expected exactly one region without a generator, found {missing:?}"
        )));
    }
    let unbounded = missing[0];
    for e in &g.edges {
        if !rows.contains(u(&e.id).as_str()) {
            return Err(HomologyError::InconsistentInput(format!(
                "no generator for {}",
                e.id
            )));
        }
    }
    if rows.len() != g.vertices.len() - 1 + g.edges.len() {
        return Err(HomologyError::InconsistentInput(
            "matrix has rows outside the graph".into(),
        ));
    }

    let det = m.det()?;
    if det.abs() == 1 {
        return Ok(None);
    }
    let forest = g.forest(Some(unbounded));
    let mut witnesses = vec![];
    let row = |label: String| m.row_index(&label).expect("checked above");
    let base_component = forest.component[g.vertex_index()[unbounded]];
    if let Some(comp) = (0..forest.components.len()).find(|&c| c != base_component) {
        let mut v = vec![0i64; m.size()];
        for &x in &forest.components[comp] {
            v[row(u(&g.vertices[x]))] = 1;
        }
        let index = g.vertex_index();
        for e in &g.edges {
            if forest.component[index[e.ends.0.as_str()]] == comp {
                v[row(u(&e.id))] = 1;
            }
        }
        witnesses.push(witness(m, WitnessKind::Component, v)?);
    }
    if let Some(&k) = forest.non_tree_edges.first() {
        let mut v = vec![0i64; m.size()];
        for (e, sign) in oriented_cycle(g, &g.fundamental_cycle(&forest, k)) {
            v[row(u(&g.edges[e].id))] = sign;
        }
        witnesses.push(witness(m, WitnessKind::Cycle, v)?);
    }
    if witnesses.is_empty() {
        witnesses.push(Witness {
            kind: WitnessKind::Determinant,
            vector: vec![],
            support: vec![],
        });
    }
    Ok(Some(Obstruction { det, witnesses }))
}

fn witness(m: &HomologyMatrix, kind: WitnessKind, vector: Vec<i64>) -> Result<Witness, HomologyError> {
    if m.left_apply(&vector).iter().any(|&x| x != 0) {
        return Err(HomologyError::InconsistentInput(format!(
            "{kind:?} vector is not in the left kernel"
        )));
    }
    let support = vector
        .iter()
        .zip(&m.row_labels)
        .filter(|(c, _)| **c != 0)
        .map(|(_, l)| l.clone())
        .collect();
    Ok(Witness {
        kind,
        vector,
        support,
    })
}

/// Signs making the generator rows of a cycle telescope: +1 when the edge is
/// walked from its n side to its m side.
pub fn oriented_cycle(g: &FiberGraph, cycle: &[usize]) -> Vec<(usize, i64)> {
    let ends: Vec<(&str, &str)> = cycle
        .iter()
        .map(|&e| (g.edges[e].ends.0.as_str(), g.edges[e].ends.1.as_str()))
        .collect();
    if cycle.len() == 1 {
        return vec![(cycle[0], 1)];
    }
    // Start at the vertex of the first edge not shared with the second.
    let (m0, n0) = ends[0];
    let mut at = if n0 != ends[1].0 && n0 != ends[1].1 { n0 } else { m0 };
    let mut out = vec![];
    for (&e, &(m, n)) in cycle.iter().zip(&ends) {
        if at == n {
            out.push((e, 1));
            at = m;
        } else {
            out.push((e, -1));
            at = n;
        }
    }
    out
}

/// Row-by-row view used in reports.
pub fn rows_by_label(m: &HomologyMatrix) -> BTreeMap<String, Vec<i64>> {
    m.row_labels.iter().cloned().zip(m.rows.iter().cloned()).collect()
}
