use std::collections::{BTreeMap, VecDeque};

use serde::{Deserialize, Serialize};

use super::faces::{face_index, Color, Face};
use super::pd::{Dart, PlanarDiagram};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Side {
    #[serde(rename = "+")]
    Plus,
    #[serde(rename = "-")]
    Minus,
}

impl Side {
    pub fn other(self) -> Self {
        match self {
            Side::Plus => Side::Minus,
            Side::Minus => Side::Plus,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SideAssignment {
    Sides(BTreeMap<usize, Side>),
    NonOrientable,
}

/// Statistics of the black checkerboard surface.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SurfaceStats {
    pub chi: i64,
    pub boundary_count: usize,
    /// Present only for a connected orientable surface.
    pub genus: Option<i64>,
    pub connected: bool,
    /// Euler characteristic of each connected piece (one entry when connected).
    pub component_chi: Vec<i64>,
    pub side_assignment: SideAssignment,
}

/// The two black corners' faces at each crossing.
fn black_pairs(d: &PlanarDiagram, faces: &[Face]) -> Vec<(usize, usize)> {
    let idx = face_index(d, faces);
    (0..d.crossing_count())
        .map(|c| {
            let k = (0..4)
                .find(|&s| faces[idx[c][s]].color == Some(Color::Black))
                .expect("a crossing has black corners");
            let a = idx[c][k];
            let b = idx[c][(k + 2) % 4];
            (a, b)
        })
        .collect()
}

pub fn surface_stats(d: &PlanarDiagram, faces: &[Face]) -> SurfaceStats {
    let black: Vec<usize> = faces
        .iter()
        .filter(|f| f.color == Some(Color::Black))
        .map(|f| f.id)
        .collect();
    let boundary_count = d.component_count();
    if d.is_free_loop() {
        return SurfaceStats {
            chi: 1,
            boundary_count,
            genus: Some(0),
            connected: true,
            component_chi: vec![1],
            side_assignment: SideAssignment::Sides(
                black.iter().map(|&f| (f, Side::Plus)).collect(),
            ),
        };
    }
    let pairs = black_pairs(d, faces);
    let mut adj: BTreeMap<usize, Vec<(usize, usize)>> =
        black.iter().map(|&f| (f, vec![])).collect();
    for (c, &(a, b)) in pairs.iter().enumerate() {
        adj.get_mut(&a).unwrap().push((b, c));
        adj.get_mut(&b).unwrap().push((a, c));
    }

    let mut sides: BTreeMap<usize, Side> = BTreeMap::new();
    let mut piece_of: BTreeMap<usize, usize> = BTreeMap::new();
    let mut orientable = true;
    let mut pieces = 0;
    for &start in &black {
        if sides.contains_key(&start) {
            continue;
        }
        sides.insert(start, Side::Plus);
        piece_of.insert(start, pieces);
        let mut queue = VecDeque::from([start]);
        while let Some(f) = queue.pop_front() {
            let s = sides[&f];
            for &(g, _) in &adj[&f] {
                match sides.get(&g) {
                    None => {
                        sides.insert(g, s.other());
                        piece_of.insert(g, pieces);
                        queue.push_back(g);
                    }
                    Some(&sg) if sg == s => orientable = false,
                    Some(_) => {}
                }
            }
        }
        pieces += 1;
    }

    let mut component_chi = vec![0i64; pieces];
    for f in &black {
        component_chi[piece_of[f]] += 1;
    }
    for &(a, _) in &pairs {
        component_chi[piece_of[&a]] -= 1;
    }
    let chi = black.len() as i64 - d.crossing_count() as i64;
    let connected = pieces == 1;
    let genus = (connected && orientable).then(|| (2 - chi - boundary_count as i64) / 2);
    SurfaceStats {
        chi,
        boundary_count,
        genus,
        connected,
        component_chi,
        side_assignment: if orientable {
            SideAssignment::Sides(sides)
        } else {
            SideAssignment::NonOrientable
        },
    }
}

/// Side of the black face at a dart's corner, if the corner is black and the
/// surface orientable.
pub fn corner_side(stats: &SurfaceStats, idx: &[[usize; 4]], dart: Dart) -> Option<Side> {
    match &stats.side_assignment {
        SideAssignment::Sides(m) => m.get(&idx[dart.crossing][dart.slot]).copied(),
        SideAssignment::NonOrientable => None,
    }
}
