//! Reads the abstract augmented-link record off a flat diagram.
//!
//! Inside each crossing circle the two strands cut out two caps (degree 2)
//! and a middle face (degree 4). A white middle makes the circle a B-circle
//! whose B-region is that middle; a black middle makes it an A-circle whose
//! A-regions are the two white caps.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use thiserror::Error;

use super::model::{ACircle, BCircle, CRegion, FlatAugmentedLink, Incidence, SideLabel, Style};
use crate::augment::{circle_arcs, circle_order};
use crate::diagram::faces::{colored_faces, face_adjacency, face_index, Color, Face};
use crate::diagram::pd::{Dart, DiagramError, PlanarDiagram};
use crate::diagram::surface::{surface_stats, SideAssignment};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ClassifyError {
    #[error("diagram is not flat: {0}")]
    NotFlat(String),
    #[error("the black surface is non-orientable")]
    NonOrientableSurface,
    #[error("the unbounded face lies inside crossing circle {0}")]
    UnboundedInsideCircle(String),
    #[error(transparent)]
    Diagram(#[from] DiagramError),
}

/// Per-circle classification details, useful for checks in pipeline mode.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CircleFaces {
    pub id: String,
    pub caps: [usize; 2],
    pub middle: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Classified {
    pub ald: FlatAugmentedLink,
    pub faces: Vec<Face>,
    pub circles: Vec<CircleFaces>,
    /// Face id of every C-region.
    pub region_faces: BTreeMap<String, usize>,
}

pub fn classify(d: &PlanarDiagram) -> Result<FlatAugmentedLink, ClassifyError> {
    classify_detailed(d).map(|c| c.ald)
}

pub fn classify_detailed(d: &PlanarDiagram) -> Result<Classified, ClassifyError> {
    let faces = colored_faces(d)?;
    for c in 0..d.crossing_count() {
        let circle_slots = (0..4)
            .filter(|&s| d.is_circle_dart(Dart::new(c, s)))
            .count();
        if circle_slots != 2 {
            return Err(ClassifyError::NotFlat(format!(
                "crossing {c} is not between a crossing circle and a strand"
            )));
        }
    }
    if surface_stats(d, &faces).side_assignment == SideAssignment::NonOrientable {
        return Err(ClassifyError::NonOrientableSurface);
    }
    let idx = face_index(d, &faces);
    let face_of = |x: Dart| idx[x.crossing][x.slot];
    let adjacency = face_adjacency(d, &faces);
    let unbounded = faces.iter().position(|f| f.unbounded).unwrap_or(0);

    let mut special: BTreeSet<usize> = BTreeSet::new();
    let mut exterior: BTreeMap<Dart, Incidence> = BTreeMap::new();
    let mut records = vec![];
    let mut b_circles = vec![];
    let mut a_circles = vec![];
    // (exterior face, incidence) per circle side, resolved to region ids below.
    let mut sides: Vec<(String, [(SideLabel, usize); 2], Style)> = vec![];

    for (ordinal, comp) in circle_order(d).into_iter().enumerate() {
        let arcs = circle_arcs(d, comp);
        let label = ordinal + 1;
        if arcs.len() != 4 {
            return Err(ClassifyError::NotFlat(format!(
                "crossing circle {label} meets {} crossings",
                arcs.len()
            )));
        }
        let own: BTreeSet<Dart> = arcs
            .iter()
            .flat_map(|&(out, ..)| [out, d.partner(out)])
            .collect();
        let outside = reachable(&adjacency, faces.len(), unbounded, &own);
        let right: Vec<usize> = arcs.iter().map(|&(out, ..)| face_of(out)).collect();
        let left: Vec<usize> = arcs.iter().map(|&(out, ..)| face_of(d.partner(out))).collect();
        let (interior, ext_darts): (Vec<usize>, Vec<Dart>) = if right.iter().all(|f| !outside[*f]) {
            (right, arcs.iter().map(|&(out, ..)| d.partner(out)).collect())
        } else if left.iter().all(|f| !outside[*f]) {
            (left, arcs.iter().map(|&(out, ..)| out).collect())
        } else {
            return Err(ClassifyError::NotFlat(format!(
                "crossing circle {label} has no interior side"
            )));
        };
        let middle_at = if interior[0] == interior[2] {
            0
        } else if interior[1] == interior[3] {
            1
        } else {
            return Err(ClassifyError::NotFlat(format!(
                "crossing circle {label} lacks a middle face"
            )));
        };
        let middle = interior[middle_at];
        let caps = [interior[middle_at + 1], interior[(middle_at + 3) % 4]];
        if caps[0] == caps[1]
            || caps.contains(&middle)
            || faces[middle].degree() != 4
            || caps.iter().any(|&c| faces[c].degree() != 2)
        {
            return Err(ClassifyError::NotFlat(format!(
                "crossing circle {label} does not have two caps and a middle"
            )));
        }
        let overs: Vec<bool> = arcs.iter().map(|&(_, start_over, _)| start_over).collect();
        let style = if (0..4).any(|i| overs[i] && overs[(i + 1) % 4]) {
            Style::Flat
        } else {
            Style::Alternating
        };

        let middle_white = faces[middle].color == Some(Color::White);
        // Exterior arcs carrying the two white neighbours: outside the caps
        // for a B-circle, outside the middle for an A-circle.
        let white_arcs: Vec<usize> = (0..4)
            .filter(|i| (i % 2 == middle_at) != middle_white)
            .collect();
        let first = white_arcs
            .iter()
            .copied()
            .find(|&i| overs[i])
            .unwrap_or(white_arcs[0]);
        let second = white_arcs.iter().copied().find(|&i| i != first).unwrap();
        let (id, labels) = if middle_white {
            special.insert(middle);
            (format!("B{label}"), [SideLabel::M, SideLabel::N])
        } else {
            special.extend(caps);
            (format!("A{label}"), [SideLabel::One, SideLabel::Two])
        };
        for (arc, side) in [(first, labels[0]), (second, labels[1])] {
            exterior.insert(ext_darts[arc], Incidence::new(id.clone(), side));
        }
        sides.push((
            id.clone(),
            [
                (labels[0], face_of(ext_darts[first])),
                (labels[1], face_of(ext_darts[second])),
            ],
            style,
        ));
        records.push(CircleFaces { id, caps, middle });
    }

    if special.contains(&unbounded) {
        let owner = records
            .iter()
            .find(|r| r.middle == unbounded || r.caps.contains(&unbounded))
            .map(|r| r.id.clone())
            .unwrap_or_default();
        return Err(ClassifyError::UnboundedInsideCircle(owner));
    }

    let mut region_faces = BTreeMap::new();
    let mut name_of = BTreeMap::new();
    name_of.insert(unbounded, "C0".to_string());
    let mut k = 1;
    for f in &faces {
        if f.color == Some(Color::White) && !special.contains(&f.id) && f.id != unbounded {
            name_of.insert(f.id, format!("C{k}"));
            k += 1;
        }
    }
    let mut c_regions = vec![];
    for (&face, name) in &name_of {
        region_faces.insert(name.clone(), face);
        let boundary = faces[face]
            .boundary
            .iter()
            .filter_map(|x| exterior.get(x).cloned())
            .collect();
        c_regions.push(CRegion {
            id: name.clone(),
            boundary,
        });
    }
    for (id, [(l0, f0), (_, f1)], style) in sides {
        let region = |f: usize| {
            name_of.get(&f).cloned().ok_or_else(|| {
                ClassifyError::NotFlat(format!("circle {id} borders a non-C white face"))
            })
        };
        let (s0, s1) = (region(f0)?, region(f1)?);
        if l0 == SideLabel::M {
            b_circles.push(BCircle {
                id,
                m_side: s0,
                n_side: s1,
                style,
            });
        } else {
            a_circles.push(ACircle {
                id,
                side1: s0,
                side2: s1,
                style,
            });
        }
    }
    let ald = FlatAugmentedLink {
        c_regions,
        b_circles,
        a_circles,
        unbounded: "C0".into(),
    }
    .canonical();
    Ok(Classified {
        ald,
        faces,
        circles: records,
        region_faces,
    })
}

/// Faces reachable from `start` without crossing the listed darts' edges.
fn reachable(
    adjacency: &[(Dart, usize, usize)],
    n_faces: usize,
    start: usize,
    blocked: &BTreeSet<Dart>,
) -> Vec<bool> {
    let mut adj = vec![vec![]; n_faces];
    for &(dart, a, b) in adjacency {
        if !blocked.contains(&dart) {
            adj[a].push(b);
            adj[b].push(a);
        }
    }
    let mut seen = vec![false; n_faces];
    seen[start] = true;
    let mut queue = VecDeque::from([start]);
    while let Some(f) = queue.pop_front() {
        for &g in &adj[f] {
            if !seen[g] {
                seen[g] = true;
                queue.push_back(g);
            }
        }
    }
    seen
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::augment::{augment, find_twist_regions, flatten};
    use crate::diagram::parse_pd;

    const FIGURE_EIGHT: &str = "X(4,2,5,1)\nX(8,6,1,5)\nX(6,3,7,4)\nX(2,7,3,8)\n";
    // Hopf link: a single cyclic twist region of two crossings.
    const HOPF: &str = "X(4,1,3,2)\nX(2,3,1,4)\n";

    fn flat_of(text: &str) -> PlanarDiagram {
        let d = parse_pd(text).unwrap();
        let aug = augment(&d, &find_twist_regions(&d)).unwrap();
        flatten(&aug).unwrap().0
    }

    #[test]
    fn hopf_flattens_to_single_b_circle() {
        let c = classify_detailed(&flat_of(HOPF)).unwrap();
        assert!(c.ald.validate().is_empty(), "{:?}", c.ald.validate());
        assert_eq!(c.ald.b_circles.len() + c.ald.a_circles.len(), 1);
        for circle in &c.circles {
            let middle = c.faces[circle.middle].color;
            for cap in circle.caps {
                assert_ne!(c.faces[cap].color, middle);
            }
        }
    }

    #[test]
    fn figure_eight_pipeline() {
        let c = classify_detailed(&flat_of(FIGURE_EIGHT)).unwrap();
        let ald = &c.ald;
        assert!(ald.validate().is_empty(), "{:?}", ald.validate());
        assert_eq!(ald.circle_count(), 2);
        let white = c
            .faces
            .iter()
            .filter(|f| f.color == Some(Color::White))
            .count();
        assert_eq!(
            white,
            2 * ald.a_circles.len() + ald.b_circles.len() + ald.c_regions.len()
        );
    }

    #[test]
    fn non_flat_diagram_rejected() {
        let d = parse_pd(FIGURE_EIGHT).unwrap();
        assert!(matches!(classify(&d), Err(ClassifyError::NotFlat(_))));
    }
}
