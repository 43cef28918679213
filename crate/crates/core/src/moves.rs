//! Transformations of augmented-link records: Hopf-band deplumbing, ±1
//! fillings, and the lift of a locally alternating link to a flat one with
//! a tree graph.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::ald::{ACircle, BCircle, CRegion, FlatAugmentedLink, Incidence, SideLabel, Style, Violation};
use crate::fiber_graph::{build_gb, is_tree, Certificate, Outcome};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MoveError {
    #[error("{0} is not an A-circle")]
    NotACircleOfTypeA(String),
    #[error("{0} is not a B-circle")]
    NotACircleOfTypeB(String),
    #[error("G_B is not a tree: {0:?}")]
    NotATree(Vec<Certificate>),
    #[error("A-circles must be deplumbed first: {0:?}")]
    HasACircles(Vec<String>),
    #[error("no A-circle joins the graph components {0:?}")]
    NoBridgingACircle(Vec<Vec<String>>),
    #[error("circles are not locally alternating: {0:?}")]
    NotLocallyAlternating(Vec<String>),
    #[error("invalid ALD: {0:?}")]
    Invalid(Vec<Violation>),
    #[error("{ids} circles but {signs} signs")]
    SignCount { ids: usize, signs: usize },
    #[error("filling sign must be +1 or -1, got {0}")]
    BadSign(i64),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Handedness {
    #[serde(rename = "+")]
    Right,
    #[serde(rename = "-")]
    Left,
}

impl Handedness {
    pub fn from_sign(sign: i8) -> Self {
        if sign > 0 {
            Handedness::Right
        } else {
            Handedness::Left
        }
    }
}

/// Two Hopf bands removed for one A-circle.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HopfRecord {
    pub source: String,
    pub count: u8,
    pub handedness: [Handedness; 2],
}

impl HopfRecord {
    pub fn chi_delta(&self) -> i64 {
        -(self.count as i64)
    }
}

fn check_valid(ald: &FlatAugmentedLink) -> Result<(), MoveError> {
    let v = ald.validate();
    if v.is_empty() {
        Ok(())
    } else {
        Err(MoveError::Invalid(v))
    }
}

fn check_sign(sign: i8) -> Result<(), MoveError> {
    if sign == 1 || sign == -1 {
        Ok(())
    } else {
        Err(MoveError::BadSign(sign as i64))
    }
}

/// Euler characteristic of the standard surface, read off the record: the
/// white regions of a connected diagram number `2A + B + C`, and the black
/// surface has `chi = 2 - #white`.
pub fn standard_surface_chi(ald: &FlatAugmentedLink) -> i64 {
    2 - (2 * ald.a_circles.len() + ald.b_circles.len() + ald.c_regions.len()) as i64
}

/// Removes every A-circle, recording the Hopf-band pair for each.
pub fn deplumb(ald: &FlatAugmentedLink) -> (FlatAugmentedLink, Vec<HopfRecord>) {
    let mut out = ald.clone();
    let mut records = vec![];
    for a in std::mem::take(&mut out.a_circles) {
        out.drop_incidences(&a.id);
        let handedness = match a.style {
            Style::Flat => [Handedness::Right, Handedness::Left],
            Style::Alternating => [Handedness::Right, Handedness::Right],
        };
        records.push(HopfRecord {
            source: a.id,
            count: 2,
            handedness,
        });
    }
    (out, records)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum FillKind {
    A,
    B,
    #[serde(rename = "pair")]
    Pair,
}

/// Bookkeeping for a ±1 filling on an A-circle: one Hopf band plumbed onto
/// the deplumbed surface.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FillRecord {
    pub circle: String,
    pub kind: FillKind,
    pub sign: i8,
    pub handedness: Handedness,
    pub chi_delta: i64,
}

pub fn fill_a_circle(
    ald: &FlatAugmentedLink,
    id: &str,
    sign: i8,
) -> Result<(FlatAugmentedLink, FillRecord), MoveError> {
    check_sign(sign)?;
    if ald.a_circle(id).is_none() {
        return Err(MoveError::NotACircleOfTypeA(id.to_string()));
    }
    let mut out = ald.clone();
    out.a_circles.retain(|a| a.id != id);
    out.drop_incidences(id);
    Ok((
        out,
        FillRecord {
            circle: id.to_string(),
            kind: FillKind::A,
            sign,
            handedness: Handedness::from_sign(sign),
            chi_delta: -1,
        },
    ))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Filling {
    pub circle: String,
    pub sign: i8,
    /// The two C-regions now meeting at the new crossing pair.
    pub ends: (String, String),
}

/// A tree-graph record after ±1 filling some of its B-circles.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FilledStructure {
    pub origin: FlatAugmentedLink,
    pub fillings: Vec<Filling>,
    pub unfilled: Vec<String>,
    /// Distance from the unbounded region in the tree.
    pub levels: BTreeMap<String, usize>,
    /// Parent region and connecting circle, for every region but the root.
    pub parent: BTreeMap<String, (String, String)>,
    pub chi_delta: i64,
    pub chi: i64,
}

impl FilledStructure {
    /// Child regions of `v` with their connecting circles, in `v`'s cyclic
    /// order starting after the parent edge.
    pub fn children(&self, v: &str) -> Vec<(String, String)> {
        let Some(region) = self.origin.region(v) else {
            return vec![];
        };
        let inc: Vec<&Incidence> = region
            .boundary
            .iter()
            .filter(|i| self.origin.b_circle(&i.circle).is_some())
            .collect();
        let parent_edge = self.parent.get(v).map(|(_, e)| e.as_str());
        let start = parent_edge
            .and_then(|e| inc.iter().position(|i| i.circle == e))
            .map(|p| p + 1)
            .unwrap_or_else(|| {
                (0..inc.len())
                    .min_by(|&a, &b| inc[a].circle.cmp(&inc[b].circle))
                    .unwrap_or(0)
            });
        (0..inc.len())
            .map(|k| inc[(start + k) % inc.len().max(1)])
            .filter(|i| Some(i.circle.as_str()) != parent_edge)
            .filter_map(|i| {
                let b = self.origin.b_circle(&i.circle)?;
                let other = if i.side == SideLabel::M { &b.n_side } else { &b.m_side };
                (self.parent.get(other.as_str()).map(|(p, _)| p.as_str()) == Some(v))
                    .then(|| (other.clone(), b.id.clone()))
            })
            .collect()
    }
}

/// Fills the listed B-circles of a tree-graph record with the given signs.
pub fn fill_b_circles(
    ald: &FlatAugmentedLink,
    ids: &[String],
    signs: &[i8],
) -> Result<FilledStructure, MoveError> {
    check_valid(ald)?;
    if ids.len() != signs.len() {
        return Err(MoveError::SignCount {
            ids: ids.len(),
            signs: signs.len(),
        });
    }
    if !ald.a_circles.is_empty() {
        return Err(MoveError::HasACircles(
            ald.a_circles.iter().map(|a| a.id.clone()).collect(),
        ));
    }
    let verdict = is_tree(&build_gb(ald));
    if verdict.outcome != Outcome::Fibered {
        return Err(MoveError::NotATree(verdict.certificates));
    }
    let mut fillings = vec![];
    for (id, &sign) in ids.iter().zip(signs) {
        check_sign(sign)?;
        let b = ald
            .b_circle(id)
            .ok_or_else(|| MoveError::NotACircleOfTypeB(id.clone()))?;
        fillings.push(Filling {
            circle: id.clone(),
            sign,
            ends: (b.m_side.clone(), b.n_side.clone()),
        });
    }
    let filled: BTreeSet<&str> = ids.iter().map(String::as_str).collect();
    let unfilled = ald
        .canonical()
        .b_circles
        .iter()
        .filter(|b| !filled.contains(b.id.as_str()))
        .map(|b| b.id.clone())
        .collect();

    let mut levels = BTreeMap::from([(ald.unbounded.clone(), 0)]);
    let mut parent = BTreeMap::new();
    let mut queue = VecDeque::from([ald.unbounded.clone()]);
    while let Some(v) = queue.pop_front() {
        let region = ald.region(&v).expect("validated");
        for inc in &region.boundary {
            let b = ald.b_circle(&inc.circle).expect("no A-circles");
            let other = if inc.side == SideLabel::M { &b.n_side } else { &b.m_side };
            if !levels.contains_key(other) {
                levels.insert(other.clone(), levels[&v] + 1);
                parent.insert(other.clone(), (v.clone(), b.id.clone()));
                queue.push_back(other.clone());
            }
        }
    }
    let chi_delta = fillings.len() as i64;
    Ok(FilledStructure {
        origin: ald.clone(),
        chi: standard_surface_chi(ald) + chi_delta,
        fillings,
        unfilled,
        levels,
        parent,
        chi_delta,
    })
}

pub fn make_locally_alternating(ald: &FlatAugmentedLink) -> FlatAugmentedLink {
    let mut out = ald.clone();
    for b in &mut out.b_circles {
        b.style = Style::Alternating;
    }
    for a in &mut out.a_circles {
        a.style = Style::Alternating;
    }
    out
}

/// One ±1 filling instruction. `partner` names the circle added next to
/// `circle` by a pair replacement.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProgramEntry {
    pub circle: String,
    pub kind: FillKind,
    pub sign: i8,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub partner: Option<String>,
}

struct Fresh {
    next: usize,
}

impl Fresh {
    fn new(ald: &FlatAugmentedLink) -> Self {
        let max = ald
            .c_regions
            .iter()
            .map(|c| &c.id)
            .chain(ald.b_circles.iter().map(|b| &b.id))
            .chain(ald.a_circles.iter().map(|a| &a.id))
            .filter_map(|id| id.get(1..)?.parse::<usize>().ok())
            .max()
            .unwrap_or(0);
        Fresh { next: max + 1 }
    }

    fn take(&mut self, prefix: char) -> String {
        self.next += 1;
        format!("{prefix}{}", self.next - 1)
    }
}

fn replace_incidence(ald: &mut FlatAugmentedLink, region: &str, from: &Incidence, to: Incidence) {
    let r = ald.region_mut(region).expect("region exists");
    let k = r.boundary.iter().position(|i| i == from).expect("incidence exists");
    r.boundary[k] = to;
}

fn insert_after(ald: &mut FlatAugmentedLink, region: &str, after: &Incidence, new: Incidence) {
    let r = ald.region_mut(region).expect("region exists");
    let k = r.boundary.iter().position(|i| i == after).expect("incidence exists");
    r.boundary.insert(k + 1, new);
}

/// Connected components of the region/circle incidence structure, as
/// sorted region lists.
fn incidence_components(ald: &FlatAugmentedLink) -> Vec<Vec<String>> {
    let mut adj: BTreeMap<&str, Vec<&str>> = ald.c_regions.iter().map(|c| (c.id.as_str(), vec![])).collect();
    for id in ald.b_circles.iter().map(|b| &b.id).chain(ald.a_circles.iter().map(|a| &a.id)) {
        let [(_, x), (_, y)] = ald.circle_sides(id).expect("circle exists");
        adj.get_mut(x).unwrap().push(y);
        adj.get_mut(y).unwrap().push(x);
    }
    let mut seen = BTreeSet::new();
    let mut out = vec![];
    for &start in adj.keys() {
        if !seen.insert(start) {
            continue;
        }
        let mut comp = vec![start.to_string()];
        let mut queue = VecDeque::from([start]);
        while let Some(v) = queue.pop_front() {
            for &w in &adj[v] {
                if seen.insert(w) {
                    comp.push(w.to_string());
                    queue.push_back(w);
                }
            }
        }
        comp.sort();
        out.push(comp);
    }
    out
}

/// Lifts a locally alternating record to a flat one whose graph is a tree,
/// together with the fillings that recover the original. Loops of G_B are
/// cut by subdividing an edge with a new region joined through a flat
/// A-circle; components are joined by a flat B-circle next to a bridging
/// A-circle; finally each alternating circle becomes flat with a new flat
/// B-circle to a new leaf region beside it.
pub fn lift_alternating(
    ald_a: &FlatAugmentedLink,
    sign: i8,
) -> Result<(FlatAugmentedLink, Vec<ProgramEntry>), MoveError> {
    check_sign(sign)?;
    check_valid(ald_a)?;
    let flat: Vec<String> = ald_a
        .b_circles
        .iter()
        .filter(|b| b.style == Style::Flat)
        .map(|b| b.id.clone())
        .chain(
            ald_a
                .a_circles
                .iter()
                .filter(|a| a.style == Style::Flat)
                .map(|a| a.id.clone()),
        )
        .collect();
    if !flat.is_empty() {
        return Err(MoveError::NotLocallyAlternating(flat));
    }
    let components = incidence_components(ald_a);
    if components.len() > 1 {
        return Err(MoveError::NoBridgingACircle(components));
    }

    let mut out = ald_a.canonical();
    let mut fresh = Fresh::new(&out);
    let mut program = vec![];

    // Cut loops.
    loop {
        let g = build_gb(&out);
        let forest = g.forest(Some(&out.unbounded));
        let Some(cycle) = forest
            .non_tree_edges
            .iter()
            .map(|&k| {
                let mut ids: Vec<String> = g
                    .fundamental_cycle(&forest, k)
                    .into_iter()
                    .map(|e| g.edges[e].id.clone())
                    .collect();
                ids.sort();
                ids
            })
            .min()
        else {
            break;
        };
        let e = cycle[0].clone();
        let b = out.b_circle(&e).expect("edge is a B-circle").clone();
        let v3 = fresh.take('C');
        let a = fresh.take('A');
        // The n side moves to the new region; the A-circle takes its place.
        let old = Incidence::new(&e, SideLabel::N);
        replace_incidence(&mut out, &b.n_side, &old, Incidence::new(&a, SideLabel::Two));
        out.c_regions.push(CRegion {
            id: v3.clone(),
            boundary: vec![old, Incidence::new(&a, SideLabel::One)],
        });
        out.a_circles.push(ACircle {
            id: a.clone(),
            side1: v3.clone(),
            side2: b.n_side.clone(),
            style: Style::Flat,
        });
        out.b_circles
            .iter_mut()
            .find(|x| x.id == e)
            .expect("edge exists")
            .n_side = v3;
        program.push(ProgramEntry {
            circle: a,
            kind: FillKind::A,
            sign,
            partner: None,
        });
    }

    // Join components.
    loop {
        let g = build_gb(&out);
        let forest = g.forest(Some(&out.unbounded));
        if forest.components.len() <= 1 {
            break;
        }
        let index = g.vertex_index();
        let comp = |id: &str| forest.component[index[id]];
        let mut bridges: Vec<&ACircle> = out
            .a_circles
            .iter()
            .filter(|a| comp(&a.side1) != comp(&a.side2))
            .collect();
        bridges.sort_by(|x, y| x.id.cmp(&y.id));
        let Some(bridge) = bridges.first().map(|a| (*a).clone()) else {
            return Err(MoveError::NoBridgingACircle(
                forest
                    .components
                    .iter()
                    .map(|c| c.iter().map(|&v| g.vertices[v].clone()).collect())
                    .collect(),
            ));
        };
        let e = fresh.take('B');
        insert_after(
            &mut out,
            &bridge.side1,
            &Incidence::new(&bridge.id, SideLabel::One),
            Incidence::new(&e, SideLabel::M),
        );
        insert_after(
            &mut out,
            &bridge.side2,
            &Incidence::new(&bridge.id, SideLabel::Two),
            Incidence::new(&e, SideLabel::N),
        );
        out.b_circles.push(BCircle {
            id: e.clone(),
            m_side: bridge.side1.clone(),
            n_side: bridge.side2.clone(),
            style: Style::Flat,
        });
        program.push(ProgramEntry {
            circle: e,
            kind: FillKind::B,
            sign,
            partner: None,
        });
    }

    // Replace each alternating circle by a flat pair.
    let alternating: Vec<(String, String, Incidence)> = out
        .b_circles
        .iter()
        .filter(|b| b.style == Style::Alternating)
        .map(|b| (b.id.clone(), b.m_side.clone(), Incidence::new(&b.id, SideLabel::M)))
        .chain(
            out.a_circles
                .iter()
                .filter(|a| a.style == Style::Alternating)
                .map(|a| (a.id.clone(), a.side1.clone(), Incidence::new(&a.id, SideLabel::One))),
        )
        .collect();
    for (x, side, inc) in alternating {
        let y = fresh.take('B');
        let leaf = fresh.take('C');
        insert_after(&mut out, &side, &inc, Incidence::new(&y, SideLabel::M));
        out.c_regions.push(CRegion {
            id: leaf.clone(),
            boundary: vec![Incidence::new(&y, SideLabel::N)],
        });
        out.b_circles.push(BCircle {
            id: y.clone(),
            m_side: side,
            n_side: leaf,
            style: Style::Flat,
        });
        if let Some(b) = out.b_circles.iter_mut().find(|b| b.id == x) {
            b.style = Style::Flat;
        }
        if let Some(a) = out.a_circles.iter_mut().find(|a| a.id == x) {
            a.style = Style::Flat;
        }
        program.push(ProgramEntry {
            circle: x,
            kind: FillKind::Pair,
            sign,
            partner: Some(y),
        });
    }
    Ok((out.canonical(), program))
}

fn remove_circle(ald: &mut FlatAugmentedLink, id: &str) {
    ald.b_circles.retain(|b| b.id != id);
    ald.a_circles.retain(|a| a.id != id);
    ald.drop_incidences(id);
}

/// Undoes a lift program at the bookkeeping level, newest entry first.
pub fn replay_program(lifted: &FlatAugmentedLink, program: &[ProgramEntry]) -> FlatAugmentedLink {
    let mut out = lifted.clone();
    for entry in program.iter().rev() {
        match entry.kind {
            FillKind::Pair => {
                let y = entry.partner.as_deref().unwrap_or_default();
                if let Some(leaf) = out.b_circle(y).map(|b| b.n_side.clone()) {
                    remove_circle(&mut out, y);
                    out.c_regions.retain(|c| c.id != leaf);
                }
                if let Some(b) = out.b_circles.iter_mut().find(|b| b.id == entry.circle) {
                    b.style = Style::Alternating;
                }
                if let Some(a) = out.a_circles.iter_mut().find(|a| a.id == entry.circle) {
                    a.style = Style::Alternating;
                }
            }
            FillKind::B => remove_circle(&mut out, &entry.circle),
            FillKind::A => {
                let Some(a) = out.a_circle(&entry.circle).cloned() else {
                    continue;
                };
                let v3 = out.region(&a.side1).expect("new region").clone();
                let Some(old) = v3.boundary.iter().find(|i| i.circle != a.id).cloned() else {
                    continue;
                };
                replace_incidence(&mut out, &a.side2, &Incidence::new(&a.id, SideLabel::Two), old.clone());
                if let Some(b) = out.b_circles.iter_mut().find(|b| b.id == old.circle) {
                    b.n_side = a.side2.clone();
                }
                out.a_circles.retain(|x| x.id != a.id);
                out.c_regions.retain(|c| c.id != v3.id);
            }
        }
    }
    out.canonical()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fiber_graph::analyze;

    fn ald(regions: usize, b: &[(usize, usize)], a: &[(usize, usize)]) -> FlatAugmentedLink {
        FlatAugmentedLink::from_graph(regions, b, a)
    }

    #[test]
    fn deplumb_keeps_graph() {
        let x = ald(3, &[(0, 1), (1, 2)], &[(0, 2), (1, 2), (2, 2)]);
        let (y, records) = deplumb(&x);
        assert!(y.a_circles.is_empty());
        assert!(y.validate().is_empty());
        assert_eq!(build_gb(&x), build_gb(&y));
        assert_eq!(records.len(), 3);
        assert_eq!(records.iter().map(HopfRecord::chi_delta).sum::<i64>(), -6);
        assert_eq!(standard_surface_chi(&x), standard_surface_chi(&y) - 6);
    }

    #[test]
    fn deplumb_without_a_is_identity() {
        let x = ald(2, &[(0, 1)], &[]);
        assert_eq!(deplumb(&x), (x, vec![]));
    }

    #[test]
    fn fill_a_keeps_verdict() {
        let x = ald(2, &[(0, 1)], &[(0, 1)]);
        let (plus, r1) = fill_a_circle(&x, "A1", 1).unwrap();
        let (_, r2) = fill_a_circle(&x, "A1", -1).unwrap();
        assert_eq!(analyze(&plus).outcome, Outcome::Fibered);
        assert_ne!(r1.handedness, r2.handedness);
        assert_eq!(
            fill_a_circle(&x, "B1", 1),
            Err(MoveError::NotACircleOfTypeA("B1".into()))
        );
    }

    #[test]
    fn fill_b_levels() {
        // C0 - C1 - C2 and C0 - C3.
        let x = ald(4, &[(0, 1), (1, 2), (0, 3)], &[]);
        let ids: Vec<String> = ["B1", "B2", "B3"].map(String::from).to_vec();
        let k = fill_b_circles(&x, &ids, &[1, -1, 1]).unwrap();
        assert_eq!(k.levels["C2"], 2);
        assert_eq!(k.parent["C2"], ("C1".to_string(), "B2".to_string()));
        assert_eq!(k.children("C1"), vec![("C2".to_string(), "B2".to_string())]);
        assert_eq!(k.chi_delta, 3);
        assert!(k.unfilled.is_empty());
        let partial = fill_b_circles(&x, &ids[..1], &[1]).unwrap();
        assert_eq!(partial.unfilled, vec!["B2", "B3"]);
    }

    #[test]
    fn fill_b_refuses_cycle() {
        let x = ald(3, &[(0, 1), (1, 2), (2, 0)], &[]);
        let ids: Vec<String> = vec!["B1".into()];
        assert!(matches!(fill_b_circles(&x, &ids, &[1]), Err(MoveError::NotATree(_))));
    }

    #[test]
    fn locally_alternating_is_idempotent() {
        let x = ald(3, &[(0, 1), (1, 2)], &[(0, 2)]);
        let a = make_locally_alternating(&x);
        assert!(a.b_circles.iter().all(|b| b.style == Style::Alternating));
        assert_eq!(make_locally_alternating(&a), a);
        assert_eq!(build_gb(&a), build_gb(&x));
    }

    fn check_lift(x: &FlatAugmentedLink) -> (FlatAugmentedLink, Vec<ProgramEntry>) {
        let la = make_locally_alternating(x);
        let (lifted, program) = lift_alternating(&la, 1).unwrap();
        assert!(lifted.validate().is_empty(), "{:?}", lifted.validate());
        assert!(!lifted.has_alternating());
        assert_eq!(analyze(&lifted).outcome, Outcome::Fibered);
        assert_eq!(replay_program(&lifted, &program), la.canonical());
        (lifted, program)
    }

    #[test]
    fn lift_tree_adds_leaf_per_circle() {
        let x = ald(3, &[(0, 1), (1, 2)], &[(0, 2)]);
        let (lifted, program) = check_lift(&x);
        assert_eq!(lifted.c_regions.len(), 3 + 3);
        assert!(program.iter().all(|p| p.kind == FillKind::Pair));
    }

    #[test]
    fn lift_breaks_cycle() {
        let (_, program) = check_lift(&ald(3, &[(0, 1), (1, 2), (2, 0)], &[]));
        assert_eq!(program.iter().filter(|p| p.kind == FillKind::A).count(), 1);
        let (_, program) = check_lift(&ald(1, &[(0, 0)], &[]));
        assert_eq!(program[0].kind, FillKind::A);
    }

    #[test]
    fn lift_joins_components() {
        let (_, program) = check_lift(&ald(3, &[(1, 2)], &[(0, 1)]));
        assert_eq!(program.iter().filter(|p| p.kind == FillKind::B).count(), 1);
    }

    #[test]
    fn lift_errors() {
        let x = ald(3, &[(1, 2)], &[]);
        assert!(matches!(
            lift_alternating(&make_locally_alternating(&x), 1),
            Err(MoveError::NoBridgingACircle(_))
        ));
        assert!(matches!(
            lift_alternating(&x, 1),
            Err(MoveError::NotLocallyAlternating(_))
        ));
    }
}
