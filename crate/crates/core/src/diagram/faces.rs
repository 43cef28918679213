use std::collections::VecDeque;

use serde::{Deserialize, Serialize};

use super::pd::{Dart, DiagramError, PlanarDiagram};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Color {
    Black,
    White,
}

impl Color {
    pub fn other(self) -> Self {
        match self {
            Color::Black => Color::White,
            Color::White => Color::Black,
        }
    }
}

/// A complementary region of the diagram. Each boundary dart traverses an
/// edge with the face on its right; the dart also names the corner between
/// slots `slot - 1` and `slot` of its crossing.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Face {
    pub id: usize,
    pub boundary: Vec<Dart>,
    pub color: Option<Color>,
    pub unbounded: bool,
}

impl Face {
    /// Crossing incidences counted with multiplicity.
    pub fn degree(&self) -> usize {
        self.boundary.len()
    }
}

/// Faces of the diagram, numbered in order of their smallest dart.
pub fn trace_faces(d: &PlanarDiagram) -> Vec<Face> {
    if d.is_free_loop() {
        return (0..2)
            .map(|id| Face {
                id,
                boundary: vec![],
                color: None,
                unbounded: id == 0,
            })
            .collect();
    }
    let n = d.crossing_count();
    let mut seen = vec![[false; 4]; n];
    let mut faces = vec![];
    let unbounded = d.unbounded_dart();
    for c in 0..n {
        for s in 0..4 {
            if seen[c][s] {
                continue;
            }
            let mut boundary = vec![];
            let mut dart = Dart::new(c, s);
            while !seen[dart.crossing][dart.slot] {
                seen[dart.crossing][dart.slot] = true;
                boundary.push(dart);
                dart = d.face_next(dart);
            }
            let id = faces.len();
            let is_unbounded = boundary.contains(&unbounded);
            faces.push(Face {
                id,
                boundary,
                color: None,
                unbounded: is_unbounded,
            });
        }
    }
    faces
}

/// Dart-to-face lookup table.
pub fn face_index(d: &PlanarDiagram, faces: &[Face]) -> Vec<[usize; 4]> {
    let mut idx = vec![[usize::MAX; 4]; d.crossing_count()];
    for f in faces {
        for dart in &f.boundary {
            idx[dart.crossing][dart.slot] = f.id;
        }
    }
    idx
}

/// Faces on the two sides of every edge, once per edge.
pub fn face_adjacency(d: &PlanarDiagram, faces: &[Face]) -> Vec<(Dart, usize, usize)> {
    let idx = face_index(d, faces);
    let mut out = vec![];
    for c in 0..d.crossing_count() {
        for s in 0..4 {
            let dart = Dart::new(c, s);
            let p = d.partner(dart);
            if dart < p {
                out.push((dart, idx[c][s], idx[p.crossing][p.slot]));
            }
        }
    }
    out
}

/// Two-colors the faces with `unbounded_face` white.
pub fn checkerboard(
    d: &PlanarDiagram,
    faces: &[Face],
    unbounded_face: usize,
) -> Result<Vec<Face>, DiagramError> {
    if unbounded_face >= faces.len() {
        return Err(DiagramError::BadUnbounded(format!("face {unbounded_face}")));
    }
    let mut colored: Vec<Face> = faces
        .iter()
        .map(|f| Face {
            color: None,
            unbounded: f.id == unbounded_face,
            ..f.clone()
        })
        .collect();
    if d.is_free_loop() {
        colored[unbounded_face].color = Some(Color::White);
        colored[1 - unbounded_face].color = Some(Color::Black);
        return Ok(colored);
    }
    let mut adj = vec![vec![]; faces.len()];
    for (_, a, b) in face_adjacency(d, faces) {
        adj[a].push(b);
        adj[b].push(a);
    }
    let mut queue = VecDeque::from([unbounded_face]);
    colored[unbounded_face].color = Some(Color::White);
    while let Some(f) = queue.pop_front() {
        let c = colored[f].color.unwrap();
        for &g in &adj[f] {
            match colored[g].color {
                None => {
                    colored[g].color = Some(c.other());
                    queue.push_back(g);
                }
                Some(cg) if cg == c => return Err(DiagramError::NotTwoColorable),
                Some(_) => {}
            }
        }
    }
    if colored.iter().any(|f| f.color.is_none()) {
        return Err(DiagramError::NotTwoColorable);
    }
    Ok(colored)
}

/// The face flagged by the diagram's unbounded dart.
pub fn default_unbounded(faces: &[Face]) -> usize {
    faces.iter().position(|f| f.unbounded).unwrap_or(0)
}

/// Convenience: trace and color with the diagram's designated unbounded face.
pub fn colored_faces(d: &PlanarDiagram) -> Result<Vec<Face>, DiagramError> {
    let faces = trace_faces(d);
    let u = default_unbounded(&faces);
    checkerboard(d, &faces, u)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::pd::parse_pd;

    const FIGURE_EIGHT: &str = "X(4,2,5,1)\nX(8,6,1,5)\nX(6,3,7,4)\nX(2,7,3,8)\n";

    fn degrees(faces: &[Face]) -> Vec<usize> {
        let mut v: Vec<_> = faces.iter().map(Face::degree).collect();
        v.sort();
        v
    }

    #[test]
    fn figure_eight_faces() {
        let d = parse_pd(FIGURE_EIGHT).unwrap();
        let faces = trace_faces(&d);
        assert_eq!(faces.len(), 6);
        assert_eq!(degrees(&faces).iter().filter(|&&k| k == 2).count(), 2);
        assert_eq!(degrees(&faces).iter().sum::<usize>(), 16);
    }

    #[test]
    fn kink_faces() {
        let d = parse_pd("X(1,1,2,2)").unwrap();
        assert_eq!(degrees(&trace_faces(&d)), vec![1, 1, 2]);
    }

    #[test]
    fn loop_faces() {
        let d = parse_pd("loop").unwrap();
        let faces = colored_faces(&d).unwrap();
        assert_eq!(faces.len(), 2);
        assert_eq!(faces[0].color, Some(Color::White));
        assert_eq!(faces[1].color, Some(Color::Black));
    }

    #[test]
    fn figure_eight_coloring() {
        let d = parse_pd(FIGURE_EIGHT).unwrap();
        let faces = colored_faces(&d).unwrap();
        let black = faces.iter().filter(|f| f.color == Some(Color::Black)).count();
        assert_eq!(black, 3);
        for (_, a, b) in face_adjacency(&d, &faces) {
            assert_ne!(faces[a].color, faces[b].color);
        }
        assert_eq!(faces.iter().filter(|f| f.unbounded).count(), 1);
    }

    #[test]
    fn bad_unbounded_id() {
        let d = parse_pd(FIGURE_EIGHT).unwrap();
        let faces = trace_faces(&d);
        assert!(checkerboard(&d, &faces, 99).is_err());
    }
}
