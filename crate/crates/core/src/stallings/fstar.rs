//! The push-off map on fundamental groups, written on free generators.
//!
//! Domain generators `u_X` are loops around the white regions of the
//! surface (B-regions and bounded C-regions); codomain generators `x_X` are
//! the dual meridian loops in the complement. Conjugators are normalized to
//! the empty word, so images are taken at a base point in the single "+"
//! region.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::word::GroupWord;
use crate::ald::{FlatAugmentedLink, SideLabel, Violation};
use crate::moves::FilledStructure;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FstarError {
    #[error("A-circles must be deplumbed first: {0:?}")]
    HasACircles(Vec<String>),
    #[error("the diagram has no C-regions")]
    EmptyDiagram,
    #[error("invalid ALD: {0:?}")]
    Invalid(Vec<Violation>),
    #[error("B-circles left unfilled: {0:?}")]
    PartiallyFilled(Vec<String>),
    #[error("G_B is not a tree")]
    NotATree,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GeneratorMap {
    pub domain: Vec<String>,
    pub codomain: Vec<String>,
    /// Image of `domain[k]`, over codomain indices.
    pub images: Vec<GroupWord>,
}

impl GeneratorMap {
    pub fn rank(&self) -> usize {
        self.codomain.len()
    }

    pub fn image(&self, domain: &str) -> Option<&GroupWord> {
        self.domain
            .iter()
            .position(|d| d == domain)
            .map(|k| &self.images[k])
    }

    pub fn codomain_index(&self, label: &str) -> Option<usize> {
        self.codomain.iter().position(|c| c == label)
    }

    pub fn show(&self, w: &GroupWord) -> String {
        w.display_with(&self.codomain).to_string()
    }

    /// `u_X -> word` lines keyed by domain label.
    pub fn rendered(&self) -> BTreeMap<String, String> {
        self.domain
            .iter()
            .zip(&self.images)
            .map(|(d, w)| (d.clone(), self.show(w)))
            .collect()
    }
}

struct Letters {
    index: BTreeMap<String, usize>,
}

impl Letters {
    /// `x_id^sign`, or nothing for a region without a generator.
    fn x(&self, id: &str, sign: i8) -> GroupWord {
        match self.index.get(id) {
            Some(&g) => GroupWord::gen(g).pow(sign),
            None => GroupWord::identity(),
        }
    }
}

pub fn build_fstar(ald: &FlatAugmentedLink) -> Result<GeneratorMap, FstarError> {
    if ald.c_regions.is_empty() {
        return Err(FstarError::EmptyDiagram);
    }
    let violations = ald.validate();
    if !violations.is_empty() {
        return Err(FstarError::Invalid(violations));
    }
    if !ald.a_circles.is_empty() {
        return Err(FstarError::HasACircles(
            ald.a_circles.iter().map(|a| a.id.clone()).collect(),
        ));
    }
    let ald = ald.canonical();
    let ids: Vec<&str> = ald
        .b_circles
        .iter()
        .map(|b| b.id.as_str())
        .chain(ald.bounded_regions())
        .collect();
    let letters = Letters {
        index: ids.iter().enumerate().map(|(k, id)| (id.to_string(), k)).collect(),
    };
    let mut images = vec![];
    for b in &ald.b_circles {
        images.push(letters.x(&b.m_side, 1).mul(&letters.x(&b.n_side, -1)));
    }
    for c in ald.bounded_regions() {
        let region = ald.region(c).expect("bounded region exists");
        let inc = &region.boundary;
        let start = (0..inc.len())
            .min_by(|&a, &b| inc[a].circle.cmp(&inc[b].circle).then(a.cmp(&b)))
            .unwrap_or(0);
        let mut w = GroupWord::identity();
        for k in 0..inc.len() {
            let i = &inc[(start + k) % inc.len()];
            let factor = match i.side {
                SideLabel::M => letters.x(&i.circle, 1).mul(&letters.x(c, -1)),
                _ => letters.x(c, 1).mul(&letters.x(&i.circle, -1)),
            };
            w = w.mul(&factor);
        }
        images.push(w);
    }
    let names: Vec<String> = ids.iter().map(|id| id.to_string()).collect();
    Ok(GeneratorMap {
        domain: names.iter().map(|n| format!("u_{n}")).collect(),
        codomain: names.iter().map(|n| format!("x_{n}")).collect(),
        images,
    })
}

/// The map for the link obtained by ±1 filling every B-circle of a tree.
/// Only C-regions carry generators. A vertex `v` with parent `p` (reached
/// through an edge filled with sign `e`) and children `w_1..w_s` in its
/// cyclic order maps to `(x_v x_p^-1)^e · Π (x_v x_{w_i}^-1)^{e_i}`, where
/// `x_p` is dropped when `p` is the unbounded region.
pub fn build_fstar_filled(k: &FilledStructure) -> Result<GeneratorMap, FstarError> {
    if !k.unfilled.is_empty() {
        return Err(FstarError::PartiallyFilled(k.unfilled.clone()));
    }
    let ald = &k.origin;
    if ald.c_regions.is_empty() {
        return Err(FstarError::EmptyDiagram);
    }
    let bounded = ald.bounded_regions();
    if k.parent.len() != bounded.len() {
        return Err(FstarError::NotATree);
    }
    let letters = Letters {
        index: bounded.iter().enumerate().map(|(i, id)| (id.to_string(), i)).collect(),
    };
    let sign_of: BTreeMap<&str, i8> = k
        .fillings
        .iter()
        .map(|f| (f.circle.as_str(), f.sign))
        .collect();
    let mut images = vec![];
    for &v in &bounded {
        let (p, edge) = &k.parent[v];
        let up = letters.x(v, 1).mul(&letters.x(p, -1)).pow(sign_of[edge.as_str()]);
        let mut w = up;
        for (child, e) in k.children(v) {
            let factor = letters.x(v, 1).mul(&letters.x(&child, -1));
            w = w.mul(&factor.pow(sign_of[e.as_str()]));
        }
        images.push(w);
    }
    Ok(GeneratorMap {
        domain: bounded.iter().map(|c| format!("u_{c}")).collect(),
        codomain: bounded.iter().map(|c| format!("x_{c}")).collect(),
        images,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ald(regions: usize, b: &[(usize, usize)], a: &[(usize, usize)]) -> FlatAugmentedLink {
        FlatAugmentedLink::from_graph(regions, b, a)
    }

    #[test]
    fn edge_to_unbounded() {
        // B1: m = C1, n = C0.
        let m = build_fstar(&ald(2, &[(1, 0)], &[])).unwrap();
        assert_eq!(m.domain, vec!["u_B1", "u_C1"]);
        assert_eq!(m.show(m.image("u_B1").unwrap()), "x_C1");
        assert_eq!(m.show(m.image("u_C1").unwrap()), "x_B1 x_C1^-1");
    }

    #[test]
    fn internal_edge() {
        let m = build_fstar(&ald(3, &[(0, 1), (1, 2)], &[])).unwrap();
        assert_eq!(m.show(m.image("u_B2").unwrap()), "x_C1 x_C2^-1");
    }

    #[test]
    fn m_then_n_reduces() {
        // C1 is m for B1 and n for B2.
        let m = build_fstar(&ald(3, &[(1, 0), (2, 1)], &[])).unwrap();
        assert_eq!(m.show(m.image("u_C1").unwrap()), "x_B1 x_B2^-1");
    }

    #[test]
    fn refuses_a_circles_and_empty() {
        assert!(matches!(
            build_fstar(&ald(2, &[(1, 0)], &[(0, 1)])),
            Err(FstarError::HasACircles(_))
        ));
        let mut empty = ald(1, &[], &[]);
        empty.c_regions.clear();
        assert_eq!(build_fstar(&empty), Err(FstarError::EmptyDiagram));
    }

    #[test]
    fn b_images_have_two_c_letters_before_omission() {
        let m = build_fstar(&ald(4, &[(1, 2), (2, 3), (3, 1), (0, 1)], &[])).unwrap();
        for b in ["u_B1", "u_B2", "u_B3"] {
            let w = m.image(b).unwrap();
            assert_eq!(w.len(), 2);
            assert!(w.letters().iter().all(|&(g, _)| m.codomain[g].starts_with("x_C")));
        }
    }
}
