//! The graph G_B: vertices are C-regions, edges are B-circles. The standard
//! surface of a flat augmented link is a fiber exactly when this graph is a
//! tree.

use std::collections::{BTreeMap, VecDeque};
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::ald::{FlatAugmentedLink, Violation};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphEdge {
    pub id: String,
    pub ends: (String, String),
}

/// Multigraph with self-loops and parallel edges allowed.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FiberGraph {
    pub vertices: Vec<String>,
    pub edges: Vec<GraphEdge>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Outcome {
    Fibered,
    NotFibered,
    Inapplicable,
}

impl Outcome {
    pub fn exit_code(self) -> i32 {
        match self {
            Outcome::Fibered => 0,
            Outcome::NotFibered => 1,
            Outcome::Inapplicable => 2,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Certificate {
    SpanningTree { edges: Vec<String> },
    Disconnected { components: Vec<Vec<String>> },
    Cycle { edges: Vec<String> },
    Reason { text: String },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Verdict {
    pub outcome: Outcome,
    pub certificates: Vec<Certificate>,
}

impl Verdict {
    pub fn inapplicable(text: impl Into<String>) -> Self {
        Verdict {
            outcome: Outcome::Inapplicable,
            certificates: vec![Certificate::Reason { text: text.into() }],
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("verdict serializes")
    }
}

/// A spanning forest with the bookkeeping needed for certificates.
pub(crate) struct Forest {
    /// Component index per vertex.
    pub component: Vec<usize>,
    pub components: Vec<Vec<usize>>,
    /// Parent (vertex, edge index) in the BFS forest.
    pub parent: Vec<Option<(usize, usize)>>,
    pub depth: Vec<usize>,
    pub tree_edges: Vec<usize>,
    pub non_tree_edges: Vec<usize>,
}

impl FiberGraph {
    pub fn vertex_index(&self) -> BTreeMap<&str, usize> {
        self.vertices
            .iter()
            .enumerate()
            .map(|(i, v)| (v.as_str(), i))
            .collect()
    }

    pub(crate) fn forest(&self, root: Option<&str>) -> Forest {
        let index = self.vertex_index();
        let n = self.vertices.len();
        let mut adj: Vec<Vec<(usize, usize)>> = vec![vec![]; n];
        for (k, e) in self.edges.iter().enumerate() {
            let (a, b) = (index[e.ends.0.as_str()], index[e.ends.1.as_str()]);
            adj[a].push((b, k));
            if a != b {
                adj[b].push((a, k));
            }
        }
        let mut component = vec![usize::MAX; n];
        let mut components = vec![];
        let mut parent = vec![None; n];
        let mut depth = vec![0; n];
        let mut used = vec![false; self.edges.len()];
        let mut tree_edges = vec![];
        let order = root
            .and_then(|r| index.get(r).copied())
            .into_iter()
            .chain(0..n);
        for s in order {
            if component[s] != usize::MAX {
                continue;
            }
            let c = components.len();
            component[s] = c;
            let mut members = vec![s];
            let mut queue = VecDeque::from([s]);
            while let Some(v) = queue.pop_front() {
                for &(w, k) in &adj[v] {
                    if component[w] == usize::MAX {
                        component[w] = c;
                        parent[w] = Some((v, k));
                        depth[w] = depth[v] + 1;
                        used[k] = true;
                        tree_edges.push(k);
                        members.push(w);
                        queue.push_back(w);
                    }
                }
            }
            members.sort();
            components.push(members);
        }
        let non_tree_edges = (0..self.edges.len()).filter(|&k| !used[k]).collect();
        Forest {
            component,
            components,
            parent,
            depth,
            tree_edges,
            non_tree_edges,
        }
    }

    /// Edge indices of the fundamental cycle closed by non-tree edge `k`.
    pub(crate) fn fundamental_cycle(&self, forest: &Forest, k: usize) -> Vec<usize> {
        let index = self.vertex_index();
        let e = &self.edges[k];
        let (mut a, mut b) = (index[e.ends.0.as_str()], index[e.ends.1.as_str()]);
        let mut left = vec![k];
        let mut right = vec![];
        while a != b {
            if forest.depth[a] >= forest.depth[b] {
                let (p, edge) = forest.parent[a].expect("same component");
                left.push(edge);
                a = p;
            } else {
                let (p, edge) = forest.parent[b].expect("same component");
                right.push(edge);
                b = p;
            }
        }
        right.reverse();
        left.extend(right);
        left
    }

    /// One fundamental cycle per non-tree edge of a BFS spanning forest.
    pub fn fundamental_cycles(&self) -> Vec<Vec<usize>> {
        let forest = self.forest(None);
        forest
            .non_tree_edges
            .iter()
            .map(|&k| self.fundamental_cycle(&forest, k))
            .collect()
    }

    pub fn to_dot(&self) -> String {
        let mut out = String::from("graph G_B {\n");
        for v in &self.vertices {
            let _ = writeln!(out, "  \"{v}\";");
        }
        for e in &self.edges {
            let _ = writeln!(
                out,
                "  \"{}\" -- \"{}\" [label=\"{}\"];",
                e.ends.0, e.ends.1, e.id
            );
        }
        out.push_str("}\n");
        out
    }
}

/// One edge per B-circle between its two sides; A-circles contribute nothing.
pub fn build_gb(ald: &FlatAugmentedLink) -> FiberGraph {
    let ald = ald.canonical();
    FiberGraph {
        vertices: ald.c_regions.iter().map(|c| c.id.clone()).collect(),
        edges: ald
            .b_circles
            .iter()
            .map(|b| GraphEdge {
                id: b.id.clone(),
                ends: (b.m_side.clone(), b.n_side.clone()),
            })
            .collect(),
    }
}

pub fn is_tree(g: &FiberGraph) -> Verdict {
    let forest = g.forest(None);
    let mut certificates = vec![];
    if forest.components.len() > 1 {
        certificates.push(Certificate::Disconnected {
            components: forest
                .components
                .iter()
                .map(|c| c.iter().map(|&v| g.vertices[v].clone()).collect())
                .collect(),
        });
    }
    for &k in &forest.non_tree_edges {
        certificates.push(Certificate::Cycle {
            edges: g
                .fundamental_cycle(&forest, k)
                .into_iter()
                .map(|e| g.edges[e].id.clone())
                .collect(),
        });
    }
    if certificates.is_empty() && !g.vertices.is_empty() {
        let mut edges: Vec<String> = forest
            .tree_edges
            .iter()
            .map(|&k| g.edges[k].id.clone())
            .collect();
        edges.sort();
        return Verdict {
            outcome: Outcome::Fibered,
            certificates: vec![Certificate::SpanningTree { edges }],
        };
    }
    if g.vertices.is_empty() {
        return Verdict::inapplicable("graph has no vertices");
    }
    Verdict {
        outcome: Outcome::NotFibered,
        certificates,
    }
}

pub fn describe_violations(v: &[Violation]) -> String {
    v.iter()
        .map(|x| serde_json::to_string(x).unwrap_or_default())
        .collect::<Vec<_>>()
        .join("; ")
}

pub fn analyze(ald: &FlatAugmentedLink) -> Verdict {
    let violations = ald.validate();
    if !violations.is_empty() {
        return Verdict::inapplicable(format!(
            "invalid ALD: {}",
            describe_violations(&violations)
        ));
    }
    if ald.has_alternating() {
        return Verdict::inapplicable(
            "alternating crossing circles present; run lift_alternating first",
        );
    }
    is_tree(&build_gb(ald))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ald::Style;

    fn ald(regions: usize, b: &[(usize, usize)], a: &[(usize, usize)]) -> FlatAugmentedLink {
        FlatAugmentedLink::from_graph(regions, b, a)
    }

    #[test]
    fn single_edge() {
        let g = build_gb(&ald(2, &[(1, 0)], &[]));
        assert_eq!((g.vertices.len(), g.edges.len()), (2, 1));
    }

    #[test]
    fn self_loop_is_cycle() {
        let v = analyze(&ald(1, &[(0, 0)], &[]));
        assert_eq!(v.outcome, Outcome::NotFibered);
        assert_eq!(
            v.certificates,
            vec![Certificate::Cycle {
                edges: vec!["B1".into()]
            }]
        );
    }

    #[test]
    fn path_is_tree() {
        let v = analyze(&ald(3, &[(0, 1), (1, 2)], &[]));
        assert_eq!(v.outcome, Outcome::Fibered);
        assert_eq!(
            v.certificates,
            vec![Certificate::SpanningTree {
                edges: vec!["B1".into(), "B2".into()]
            }]
        );
    }

    #[test]
    fn triangle_is_cycle() {
        let v = analyze(&ald(3, &[(0, 1), (1, 2), (2, 0)], &[]));
        assert_eq!(v.outcome, Outcome::NotFibered);
        let Certificate::Cycle { edges } = &v.certificates[0] else {
            panic!("expected cycle")
        };
        let mut e = edges.clone();
        e.sort();
        assert_eq!(e, vec!["B1", "B2", "B3"]);
    }

    #[test]
    fn disconnected_reported() {
        let v = analyze(&ald(3, &[(1, 2)], &[(0, 1)]));
        assert_eq!(v.outcome, Outcome::NotFibered);
        assert_eq!(
            v.certificates,
            vec![Certificate::Disconnected {
                components: vec![vec!["C0".into()], vec!["C1".into(), "C2".into()]]
            }]
        );
    }

    #[test]
    fn both_defects_reported() {
        let v = analyze(&ald(4, &[(1, 2), (2, 3), (3, 1)], &[]));
        assert_eq!(v.certificates.len(), 2);
    }

    #[test]
    fn a_circles_irrelevant() {
        let v = analyze(&ald(3, &[(0, 1), (1, 2)], &[(0, 2), (1, 1)]));
        assert_eq!(v.outcome, Outcome::Fibered);
    }

    #[test]
    fn invalid_or_alternating_is_inapplicable() {
        let mut bad = ald(2, &[(0, 1)], &[]);
        bad.c_regions[0].boundary.clear();
        assert_eq!(analyze(&bad).outcome, Outcome::Inapplicable);
        let mut alt = ald(2, &[(0, 1)], &[]);
        alt.b_circles[0].style = Style::Alternating;
        assert_eq!(analyze(&alt).outcome, Outcome::Inapplicable);
    }

    #[test]
    fn dot_export() {
        let dot = build_gb(&ald(2, &[(1, 0)], &[])).to_dot();
        assert!(dot.contains("\"C1\" -- \"C0\" [label=\"B1\"]"));
    }
}
