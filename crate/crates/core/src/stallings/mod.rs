//! Independent check of the tree criterion through Stallings' fibration
//! test: the surface is a fiber iff the push-off map on fundamental groups
//! is an isomorphism. Surjectivity is decided by Nielsen reduction (free
//! groups are Hopfian); failures are certified in homology.

pub mod fstar;
pub mod homology;
pub mod nielsen;
pub mod word;

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use fstar::{build_fstar, build_fstar_filled, FstarError, GeneratorMap};
pub use homology::{abelianize, homology_obstruction, HomologyError, HomologyMatrix, Obstruction, Witness, WitnessKind};
pub use nielsen::{
    nielsen_generates, nielsen_generates_with_budget, step_budget_from_env, Move, NielsenError,
    NielsenOutcome, NielsenTrace,
};
pub use word::GroupWord;

use crate::ald::FlatAugmentedLink;
use crate::fiber_graph::{build_gb, Outcome};
use crate::moves::{deplumb, HopfRecord};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum OracleError {
    #[error("alternating crossing circles present; lift first")]
    NotFlat,
    #[error(transparent)]
    Fstar(#[from] FstarError),
    #[error(transparent)]
    Homology(#[from] HomologyError),
    #[error(transparent)]
    Nielsen(#[from] NielsenError),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OracleVerdict {
    pub outcome: Outcome,
    pub map: GeneratorMap,
    pub hopf: Vec<HopfRecord>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub trace: Option<NielsenTrace>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub obstruction: Option<Obstruction>,
    /// Set when neither a trace nor an obstruction was found.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reason: Option<String>,
}

pub fn verify(ald: &FlatAugmentedLink) -> Result<OracleVerdict, OracleError> {
    verify_with_budget(ald, step_budget_from_env())
}

/// Deplumbs A-circles, builds the push-off map and decides it. A
/// non-unimodular abelianization settles the negative case without a
/// search; otherwise Nielsen reduction must reach the standard basis.
pub fn verify_with_budget(ald: &FlatAugmentedLink, budget: u64) -> Result<OracleVerdict, OracleError> {
    if ald.has_alternating() {
        return Err(OracleError::NotFlat);
    }
    let (base, hopf) = deplumb(ald);
    let map = build_fstar(&base)?;
    let matrix = abelianize(&map);
    let obstruction = homology_obstruction(&build_gb(&base), &matrix)?;
    if obstruction.is_some() {
        return Ok(OracleVerdict {
            outcome: Outcome::NotFibered,
            map,
            hopf,
            trace: None,
            obstruction,
            reason: None,
        });
    }
    match nielsen_generates_with_budget(&map.images, map.rank(), budget) {
        Ok(out) if out.generates => Ok(OracleVerdict {
            outcome: Outcome::Fibered,
            map,
            hopf,
            trace: Some(out.trace),
            obstruction: None,
            reason: None,
        }),
        Ok(out) => Ok(OracleVerdict {
            outcome: Outcome::NotFibered,
            reason: Some(format!(
                "unimodular but not generating; reduced tuple has total length {}",
                out.reduced.iter().map(GroupWord::len).sum::<usize>()
            )),
            map,
            hopf,
            trace: Some(out.trace),
            obstruction: None,
        }),
        Err(NielsenError::BudgetExhausted(b)) => Ok(OracleVerdict {
            outcome: Outcome::Inapplicable,
            reason: Some(format!("step budget of {b} exhausted")),
            map,
            hopf,
            trace: None,
            obstruction: None,
        }),
        Err(e) => Err(e.into()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fiber_graph::analyze;
    use crate::moves::fill_b_circles;

    fn ald(regions: usize, b: &[(usize, usize)], a: &[(usize, usize)]) -> FlatAugmentedLink {
        FlatAugmentedLink::from_graph(regions, b, a)
    }

    #[test]
    fn path_tree_is_fibered_with_trace() {
        let v = verify(&ald(3, &[(0, 1), (1, 2)], &[(0, 2)])).unwrap();
        assert_eq!(v.outcome, Outcome::Fibered);
        assert!(v.trace.unwrap().is_consistent());
        assert_eq!(v.hopf.len(), 1);
    }

    #[test]
    fn self_loop_cycle_witness() {
        let v = verify(&ald(2, &[(0, 1), (1, 1)], &[])).unwrap();
        assert_eq!(v.outcome, Outcome::NotFibered);
        let w = &v.obstruction.unwrap().witnesses[0];
        assert_eq!(w.kind, WitnessKind::Cycle);
        assert_eq!(w.support, vec!["u_B2"]);
    }

    #[test]
    fn disconnected_component_witness() {
        let v = verify(&ald(3, &[(1, 2)], &[(0, 1)])).unwrap();
        assert_eq!(v.outcome, Outcome::NotFibered);
        let w = &v.obstruction.unwrap().witnesses[0];
        assert_eq!(w.kind, WitnessKind::Component);
        assert_eq!(w.support, vec!["u_B1", "u_C1", "u_C2"]);
    }

    #[test]
    fn triangle_cycle_vector_is_all_ones_after_orienting() {
        // m -> n around the triangle.
        let x = ald(3, &[(1, 0), (2, 1), (0, 2)], &[]);
        let m = abelianize(&build_fstar(&x).unwrap());
        assert_eq!(m.det().unwrap(), 0);
        let o = homology_obstruction(&build_gb(&x), &m).unwrap().unwrap();
        let w = &o.witnesses[0];
        let b_rows: Vec<i64> = w.vector[..3].iter().map(|c| c.abs()).collect();
        assert_eq!(b_rows, vec![1, 1, 1]);
        assert!(w.vector[..3].iter().all(|&c| c == w.vector[0]));
    }

    #[test]
    fn agrees_with_graph_on_small_cases() {
        for x in [
            ald(1, &[], &[]),
            ald(2, &[(0, 1)], &[]),
            ald(2, &[(0, 1), (1, 0)], &[]),
            ald(4, &[(0, 1), (1, 2), (1, 3)], &[(2, 3)]),
            ald(4, &[(0, 1), (2, 3)], &[(1, 2)]),
        ] {
            assert_eq!(verify(&x).unwrap().outcome, analyze(&x).outcome, "{x:?}");
        }
    }

    /// The filled tree C0 - C11, C0 - C12 - C2.
    fn example_filled() -> GeneratorMap {
        let mut x = ald(4, &[(0, 1), (0, 2), (2, 3)], &[]);
        for (old, new) in [("C1", "C11"), ("C2", "C12"), ("C3", "C2")] {
            for c in &mut x.c_regions {
                if c.id == old {
                    c.id = new.into();
                }
            }
            for b in &mut x.b_circles {
                for s in [&mut b.m_side, &mut b.n_side] {
                    if s == old {
                        *s = new.into();
                    }
                }
            }
        }
        assert!(x.validate().is_empty());
        let ids: Vec<String> = ["B1", "B2", "B3"].map(String::from).to_vec();
        build_fstar_filled(&fill_b_circles(&x, &ids, &[1, 1, -1]).unwrap()).unwrap()
    }

    #[test]
    fn filled_example_images() {
        let m = example_filled();
        let r = m.rendered();
        assert_eq!(r["u_C11"], "x_C11");
        assert_eq!(r["u_C12"], "x_C12 x_C2 x_C12^-1");
        assert_eq!(r["u_C2"], "x_C12 x_C2^-1");
        let out = nielsen_generates(&m.images, m.rank()).unwrap();
        assert!(out.generates);
        assert!(out.trace.is_consistent());
    }

    #[test]
    fn filled_single_edge() {
        let x = ald(2, &[(1, 0)], &[]);
        for s in [1, -1] {
            let m = build_fstar_filled(&fill_b_circles(&x, &["B1".into()], &[s]).unwrap()).unwrap();
            assert_eq!(m.images[0], GroupWord::gen(0).pow(s));
        }
    }
}
