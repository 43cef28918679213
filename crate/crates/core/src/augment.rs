//! Twist regions, crossing-circle insertion and removal of full twists.
//!
//! A crossing circle is inserted at one end of its twist region, across the
//! two edges bounding the corner opposite the region's first bigon. The new
//! circle passes over both strands on the side facing the region and under
//! them on the far side.
//!
//! Handedness of a twist crossing is read at a corner on the twist axis (a
//! bigon corner, or the corner the circle sits in): the crossing is
//! right-handed when the edge on the counter-clockwise side of that corner
//! passes under. Removing a right-handed full twist contributes `-1` to the
//! filling coefficient `n`, a left-handed one `+1`.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::diagram::faces::{colored_faces, face_adjacency, face_index, trace_faces, Color, Face};
use crate::diagram::pd::{Crossing, Dart, DiagramError, EdgeLabel, PlanarDiagram};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Parity {
    Even,
    Odd,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TwistRegion {
    /// Crossing indices in chain order.
    pub crossings: Vec<usize>,
    pub crossing_count: usize,
    pub parity: Parity,
}

impl TwistRegion {
    fn new(crossings: Vec<usize>) -> Self {
        let n = crossings.len();
        TwistRegion {
            crossings,
            crossing_count: n,
            parity: if n.is_multiple_of(2) { Parity::Even } else { Parity::Odd },
        }
    }
}

/// Which twist region a filling instruction came from.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Provenance {
    /// Crossing indices in the augmented diagram.
    pub crossings: Vec<usize>,
    pub right_handed: usize,
    pub left_handed: usize,
}

/// A `1/n` filling on a crossing circle.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FillingInstruction {
    /// Ordinal of the crossing circle (circles ordered by lowest crossing).
    pub circle: usize,
    pub n: i64,
    pub provenance: Provenance,
}

impl FillingInstruction {
    /// The slope as `(numerator, denominator)`; the numerator is always 1.
    pub fn slope(&self) -> (i64, i64) {
        (1, self.n)
    }

    /// Crossings restored by reinserting the removed twists.
    pub fn reinserted_crossings(&self) -> usize {
        2 * self.n.unsigned_abs() as usize
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AugmentError {
    #[error("twist regions overlap at crossing {0}")]
    OverlappingSelection(usize),
    #[error("twist region {crossings:?} has odd crossing count {count}")]
    OddTwistRegion { crossings: Vec<usize>, count: usize },
    #[error("no corner of crossing {0} bounds two distinct edges")]
    NoCorner(usize),
    #[error("crossing circle {0} does not have the flat over/over/under/under pattern")]
    UnrecognizedCircle(usize),
    #[error("a strand closes up without reaching a kept crossing")]
    FreeLoop,
    #[error(transparent)]
    Diagram(#[from] DiagramError),
}

fn involves_circle(d: &PlanarDiagram, c: usize) -> bool {
    (0..4).any(|s| d.is_circle_dart(Dart::new(c, s)))
}

/// A face of degree two whose corners sit at two distinct crossings.
fn bigon_pair(f: &Face) -> Option<(Dart, Dart)> {
    match f.boundary.as_slice() {
        [a, b] if a.crossing != b.crossing => Some((*a, *b)),
        _ => None,
    }
}

/// Maximal chains of bigon-adjacent crossings. Crossings on crossing circles
/// are not part of any twist region.
pub fn find_twist_regions(d: &PlanarDiagram) -> Vec<TwistRegion> {
    let n = d.crossing_count();
    let eligible: Vec<bool> = (0..n).map(|c| !involves_circle(d, c)).collect();
    let mut neighbours: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); n];
    for f in trace_faces(d) {
        if let Some((a, b)) = bigon_pair(&f) {
            if eligible[a.crossing] && eligible[b.crossing] {
                neighbours[a.crossing].insert(b.crossing);
                neighbours[b.crossing].insert(a.crossing);
            }
        }
    }
    let mut assigned = vec![false; n];
    let mut regions = vec![];
    for c in 0..n {
        if !eligible[c] || assigned[c] {
            continue;
        }
        // Collect the connected group, then walk it from an end.
        let mut group = BTreeSet::from([c]);
        let mut stack = vec![c];
        while let Some(x) = stack.pop() {
            for &y in &neighbours[x] {
                if group.insert(y) {
                    stack.push(y);
                }
            }
        }
        let start = group
            .iter()
            .copied()
            .min_by_key(|&x| (neighbours[x].len(), x))
            .unwrap();
        let mut chain = vec![start];
        let mut visited = BTreeSet::from([start]);
        let mut cur = start;
        while let Some(&next) = neighbours[cur].iter().find(|y| !visited.contains(y)) {
            visited.insert(next);
            chain.push(next);
            cur = next;
        }
        // Branching cannot happen in a 4-valent diagram, but keep every crossing.
        chain.extend(group.iter().filter(|x| !visited.contains(x)));
        for &x in &chain {
            assigned[x] = true;
        }
        regions.push(TwistRegion::new(chain));
    }
    regions
}

/// Corner darts of `c` lying in bigons shared with another crossing of `set`.
fn bigon_corners(idx: &[[usize; 4]], faces: &[Face], c: usize, set: &[usize]) -> Vec<Dart> {
    (0..4)
        .map(|s| Dart::new(c, s))
        .filter(|dart| {
            bigon_pair(&faces[idx[c][dart.slot]]).is_some_and(|(a, b)| {
                let other = if a.crossing == c { b } else { a };
                set.contains(&other.crossing)
            })
        })
        .collect()
}

/// The corner at which the region's crossing circle is inserted.
fn circle_corner(d: &PlanarDiagram, region: &TwistRegion) -> Result<Dart, AugmentError> {
    let faces = trace_faces(d);
    let idx = face_index(d, &faces);
    let c1 = region.crossings[0];
    let bigons = bigon_corners(&idx, &faces, c1, &region.crossings);
    let mut candidates: Vec<Dart> = bigons.iter().map(|b| b.rotate(2)).collect();
    candidates.extend([1, 2, 3, 0].map(|s| Dart::new(c1, s)));
    candidates
        .into_iter()
        .find(|corner| d.edge(corner.rotate(3)) != d.edge(*corner))
        .ok_or(AugmentError::NoCorner(c1))
}

/// Inserts one crossing circle around the edges bounding `corner`.
fn insert_circle(d: &PlanarDiagram, corner: Dart) -> Result<PlanarDiagram, AugmentError> {
    let c1 = corner.crossing;
    let da = corner.rotate(3);
    let db = corner;
    let xa = d.partner(da);
    let yb = d.partner(db);
    let next = d
        .crossings()
        .iter()
        .flat_map(|x| x.edges)
        .max()
        .unwrap_or(0)
        + 1;
    let [n1, n2, n3, m1, m2, m3, cap_a, far, cap_b, near]: [EdgeLabel; 10] =
        std::array::from_fn(|i| next + i as EdgeLabel);

    let mut crossings: Vec<Crossing> = d.crossings().to_vec();
    crossings[c1].edges[da.slot] = n1;
    crossings[xa.crossing].edges[xa.slot] = n3;
    crossings[c1].edges[db.slot] = m1;
    crossings[yb.crossing].edges[yb.slot] = m3;

    let p1 = if d.is_outgoing(da) {
        [n1, cap_a, n2, near]
    } else {
        [n2, near, n1, cap_a]
    };
    let p2 = [cap_a, n3, far, n2];
    let q1 = [far, m3, cap_b, m2];
    let q2 = if d.is_outgoing(db) {
        [m1, near, m2, cap_b]
    } else {
        [m2, cap_b, m1, near]
    };
    crossings.extend([p1, p2, q1, q2].map(Crossing::new));

    let mut circle_edges = d.circle_edge_labels();
    circle_edges.extend([cap_a, far, cap_b, near]);

    // The corner dart itself becomes the small triangle between the crossing
    // and the circle; keep the unbounded face on the outer remainder.
    let mut unbounded = d.unbounded_dart();
    if unbounded == corner {
        let faces = trace_faces(d);
        let idx = face_index(d, &faces);
        let face = &faces[idx[corner.crossing][corner.slot]];
        unbounded = *face
            .boundary
            .iter()
            .find(|&&x| x != corner)
            .ok_or(AugmentError::NoCorner(c1))?;
    }
    Ok(PlanarDiagram::new(crossings, &circle_edges, unbounded)?)
}

/// Encircles every selected twist region with a crossing circle.
pub fn augment(d: &PlanarDiagram, selection: &[TwistRegion]) -> Result<PlanarDiagram, AugmentError> {
    let mut used = BTreeSet::new();
    for r in selection {
        for &c in &r.crossings {
            if !used.insert(c) {
                return Err(AugmentError::OverlappingSelection(c));
            }
        }
    }
    let mut out = d.clone();
    for r in selection {
        let corner = circle_corner(&out, r)?;
        out = insert_circle(&out, corner)?;
    }
    Ok(out)
}

/// Circle components ordered by their lowest crossing index.
pub fn circle_order(d: &PlanarDiagram) -> Vec<usize> {
    let mut firsts: BTreeMap<usize, usize> = BTreeMap::new();
    for c in 0..d.crossing_count() {
        for s in 0..4 {
            let dart = Dart::new(c, s);
            if d.is_circle_dart(dart) {
                firsts.entry(d.component_of(dart)).or_insert(c);
            }
        }
    }
    let mut v: Vec<(usize, usize)> = firsts.into_iter().map(|(comp, c)| (c, comp)).collect();
    v.sort();
    v.into_iter().map(|(_, comp)| comp).collect()
}

/// Arcs of a circle component, as outgoing darts in traversal order, with
/// the circle's over/under flag at the arc's start and end crossings.
pub(crate) fn circle_arcs(d: &PlanarDiagram, comp: usize) -> Vec<(Dart, bool, bool)> {
    d.component_darts(comp)
        .into_iter()
        .map(|out| {
            let inc = d.partner(out);
            (out, out.slot % 2 == 1, inc.slot % 2 == 1)
        })
        .collect()
}

/// Handedness of a crossing read at an axis corner: `true` = right-handed.
fn right_handed_at(corner: Dart) -> bool {
    corner.slot.is_multiple_of(2)
}

struct Encircled {
    circle: usize,
    region: Option<(TwistRegion, Dart)>,
}

fn encircled_regions(d: &PlanarDiagram) -> Result<Vec<Encircled>, AugmentError> {
    let faces = trace_faces(d);
    let idx = face_index(d, &faces);
    let regions = find_twist_regions(d);
    let mut out = vec![];
    for (ordinal, comp) in circle_order(d).into_iter().enumerate() {
        let arcs = circle_arcs(d, comp);
        if arcs.len() != 4 {
            return Err(AugmentError::UnrecognizedCircle(ordinal));
        }
        let over = arcs.iter().find(|(_, a, b)| *a && *b);
        let under = arcs.iter().find(|(_, a, b)| !*a && !*b);
        let (Some(&(over, ..)), Some(&(under, ..))) = (over, under) else {
            return Err(AugmentError::UnrecognizedCircle(ordinal));
        };
        let face_of = |x: Dart| idx[x.crossing][x.slot];
        let over_faces = [face_of(over), face_of(d.partner(over))];
        let under_faces = [face_of(under), face_of(d.partner(under))];
        let Some(&middle) = over_faces.iter().find(|f| under_faces.contains(f)) else {
            return Err(AugmentError::UnrecognizedCircle(ordinal));
        };
        let near = if over_faces[0] == middle { over_faces[1] } else { over_faces[0] };
        let near_face = &faces[near];
        let region = near_face
            .boundary
            .iter()
            .find(|x| !involves_circle(d, x.crossing))
            .filter(|_| near_face.degree() == 3)
            .and_then(|&x| {
                regions
                    .iter()
                    .find(|r| r.crossings.contains(&x.crossing))
                    .map(|r| (r.clone(), x))
            });
        out.push(Encircled { circle: ordinal, region });
    }
    Ok(out)
}

/// Removes all full twists from every encircled twist region.
pub fn flatten(d: &PlanarDiagram) -> Result<(PlanarDiagram, Vec<FillingInstruction>), AugmentError> {
    let encircled = encircled_regions(d)?;
    let faces = trace_faces(d);
    let idx = face_index(d, &faces);
    let n = d.crossing_count();
    let mut removed = vec![false; n];
    let mut region_of = vec![usize::MAX; n];
    let mut instructions = vec![];
    for (k, e) in encircled.iter().enumerate() {
        let Some((region, circle_corner)) = &e.region else {
            continue;
        };
        if region.parity == Parity::Odd {
            return Err(AugmentError::OddTwistRegion {
                crossings: region.crossings.clone(),
                count: region.crossing_count,
            });
        }
        let (mut right, mut left) = (0, 0);
        for &c in &region.crossings {
            let axis = bigon_corners(&idx, &faces, c, &region.crossings)
                .first()
                .copied()
                .unwrap_or(*circle_corner);
            if right_handed_at(axis) {
                right += 1;
            } else {
                left += 1;
            }
            removed[c] = true;
            region_of[c] = k;
        }
        instructions.push(FillingInstruction {
            circle: e.circle,
            n: (left as i64 - right as i64) / 2,
            provenance: Provenance {
                crossings: region.crossings.clone(),
                right_handed: right,
                left_handed: left,
            },
        });
    }
    if instructions.is_empty() {
        return Ok((d.clone(), instructions));
    }

    let kept: Vec<usize> = (0..n).filter(|&c| !removed[c]).collect();
    let mut new_index = vec![usize::MAX; n];
    for (i, &c) in kept.iter().enumerate() {
        new_index[c] = i;
    }
    let follow = |mut p: Dart| -> Result<Dart, AugmentError> {
        let mut steps = 0;
        while removed[p.crossing] {
            p = d.partner(p.rotate(2));
            steps += 1;
            if steps > 4 * n {
                return Err(AugmentError::FreeLoop);
            }
        }
        Ok(p)
    };

    let mut labels: BTreeMap<Dart, EdgeLabel> = BTreeMap::new();
    let mut next_label: EdgeLabel = 1;
    for &c in &kept {
        for s in 0..4 {
            let dart = Dart::new(c, s);
            if labels.contains_key(&dart) {
                continue;
            }
            let end = follow(d.partner(dart))?;
            labels.insert(dart, next_label);
            labels.insert(end, next_label);
            next_label += 1;
        }
    }
    let crossings: Vec<Crossing> = kept
        .iter()
        .map(|&c| Crossing::new(std::array::from_fn(|s| labels[&Dart::new(c, s)])))
        .collect();
    let circle_edges: BTreeSet<EdgeLabel> = labels
        .iter()
        .filter(|(dart, _)| d.is_circle_dart(**dart))
        .map(|(_, &l)| l)
        .collect();

    let remap = |x: Dart| Dart::new(new_index[x.crossing], x.slot);
    let u_face = &faces[idx[d.unbounded_dart().crossing][d.unbounded_dart().slot]];
    let unbounded = match u_face.boundary.iter().find(|x| !removed[x.crossing]) {
        Some(&x) => remap(x),
        None => {
            // Every corner of the unbounded face vanished with the twists.
            // Take a face of the same colour lying outside every circle.
            let colored = colored_faces(d)?;
            let provisional = PlanarDiagram::new(crossings.clone(), &circle_edges, Dart::new(0, 0))?;
            let flat_faces = trace_faces(&provisional);
            let inside: BTreeSet<usize> = circle_interiors(&provisional, &flat_faces)
                .into_iter()
                .flatten()
                .collect();
            flat_faces
                .iter()
                .filter(|f| !inside.contains(&f.id))
                .find(|f| {
                    f.boundary.iter().all(|x| {
                        let old = Dart::new(kept[x.crossing], x.slot);
                        colored[idx[old.crossing][old.slot]].color == Some(Color::White)
                    })
                })
                .map(|f| f.boundary[0])
                .unwrap_or(Dart::new(0, 0))
        }
    };
    let flat = PlanarDiagram::new(crossings, &circle_edges, unbounded)?;
    Ok((flat, instructions))
}

/// Faces inside each crossing circle: of the two sides of the circle, the
/// one made of two bigons and a square. Circles where neither side has that
/// shape are skipped.
fn circle_interiors(d: &PlanarDiagram, faces: &[Face]) -> Vec<BTreeSet<usize>> {
    let idx = face_index(d, faces);
    let adjacency = face_adjacency(d, faces);
    let mut out = vec![];
    for comp in circle_order(d) {
        let arcs = circle_arcs(d, comp);
        let own: BTreeSet<Dart> = arcs
            .iter()
            .flat_map(|&(x, ..)| [x, d.partner(x)])
            .collect();
        let mut adj = vec![vec![]; faces.len()];
        for &(dart, a, b) in &adjacency {
            if !own.contains(&dart) {
                adj[a].push(b);
                adj[b].push(a);
            }
        }
        let (out_dart, ..) = arcs[0];
        for start in [idx[out_dart.crossing][out_dart.slot], {
            let p = d.partner(out_dart);
            idx[p.crossing][p.slot]
        }] {
            let mut seen = BTreeSet::from([start]);
            let mut stack = vec![start];
            while let Some(f) = stack.pop() {
                for &g in &adj[f] {
                    if seen.insert(g) {
                        stack.push(g);
                    }
                }
            }
            let mut degrees: Vec<usize> = seen.iter().map(|&f| faces[f].degree()).collect();
            degrees.sort();
            if degrees == [2, 2, 4] {
                out.push(seen);
                break;
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::parse_pd;

    const FIGURE_EIGHT: &str = "X(4,2,5,1)\nX(8,6,1,5)\nX(6,3,7,4)\nX(2,7,3,8)\n";
    const TREFOIL: &str = "X(1,5,2,4)\nX(3,1,4,6)\nX(5,3,6,2)\n";

    #[test]
    fn trefoil_has_one_region() {
        let regions = find_twist_regions(&parse_pd(TREFOIL).unwrap());
        assert_eq!(regions.len(), 1);
        assert_eq!(regions[0].crossing_count, 3);
        assert_eq!(regions[0].parity, Parity::Odd);
    }

    #[test]
    fn figure_eight_has_two_regions() {
        let regions = find_twist_regions(&parse_pd(FIGURE_EIGHT).unwrap());
        let counts: Vec<usize> = regions.iter().map(|r| r.crossing_count).collect();
        assert_eq!(counts, vec![2, 2]);
    }

    #[test]
    fn isolated_crossing_is_singleton() {
        let regions = find_twist_regions(&parse_pd("X(1,1,2,2)").unwrap());
        assert_eq!(regions, vec![TwistRegion::new(vec![0])]);
    }

    #[test]
    fn augment_counts() {
        let d = parse_pd(FIGURE_EIGHT).unwrap();
        let regions = find_twist_regions(&d);
        let aug = augment(&d, &regions).unwrap();
        assert_eq!(aug.crossing_count(), 12);
        assert_eq!(aug.circle_components().len(), 2);
        assert_eq!(aug.component_count(), 3);
        assert_eq!(augment(&d, &[]).unwrap(), d);

        let t = parse_pd(TREFOIL).unwrap();
        let aug = augment(&t, &find_twist_regions(&t)).unwrap();
        assert_eq!(aug.crossing_count(), 7);
        assert_eq!(aug.circle_components().len(), 1);
    }

    #[test]
    fn overlapping_selection_rejected() {
        let d = parse_pd(FIGURE_EIGHT).unwrap();
        let r = find_twist_regions(&d);
        assert!(matches!(
            augment(&d, &[r[0].clone(), r[0].clone()]),
            Err(AugmentError::OverlappingSelection(_))
        ));
    }

    #[test]
    fn flatten_figure_eight() {
        let d = parse_pd(FIGURE_EIGHT).unwrap();
        let aug = augment(&d, &find_twist_regions(&d)).unwrap();
        let (flat, instr) = flatten(&aug).unwrap();
        assert_eq!(flat.crossing_count(), 8);
        assert_eq!(instr.len(), 2);
        for i in &instr {
            assert_eq!(i.n.abs(), 1);
            assert_eq!(i.slope().0, 1);
            assert_eq!(i.reinserted_crossings(), 2);
        }
        // One non-circle component survives.
        assert_eq!(flat.component_count() - flat.circle_components().len(), 1);
    }

    #[test]
    fn flatten_trefoil_is_odd() {
        let d = parse_pd(TREFOIL).unwrap();
        let aug = augment(&d, &find_twist_regions(&d)).unwrap();
        assert!(matches!(flatten(&aug), Err(AugmentError::OddTwistRegion { count: 3, .. })));
    }

    #[test]
    fn flatten_without_circles_is_identity() {
        let d = parse_pd(FIGURE_EIGHT).unwrap();
        let (flat, instr) = flatten(&d).unwrap();
        assert_eq!(flat, d);
        assert!(instr.is_empty());
    }

    #[test]
    fn unbounded_face_swallowed_by_twist_stays_outside() {
        // Closure of s1^-2 s2^2: the outer face only touches the first twist.
        let d = parse_pd("X(1,2,5,4)\nX(4,5,7,1)\nX(3,9,8,7)\nX(9,3,2,8)\n").unwrap();
        let aug = augment(&d, &find_twist_regions(&d)).unwrap();
        let (flat, _) = flatten(&aug).unwrap();
        let faces = trace_faces(&flat);
        let idx = face_index(&flat, &faces);
        let u = flat.unbounded_dart();
        let inside: BTreeSet<usize> = circle_interiors(&flat, &faces).into_iter().flatten().collect();
        assert_eq!(inside.len(), 6);
        assert!(!inside.contains(&idx[u.crossing][u.slot]));
    }
}
