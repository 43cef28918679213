//! PD-style diagram codes.
//!
//! One crossing per line, `X(a,b,c,d)`, edge labels listed counter-clockwise
//! starting at the incoming under-strand. Besides crossings the format knows
//! three directives:
//!
//! * `circle(a,b,...)` marks the link component containing any listed edge as
//!   a crossing circle;
//! * `U(c,s)` designates the unbounded face as the face containing dart
//!   `(c, s)` (0-based crossing line index and slot); default `U(0,0)`;
//! * `loop` is the crossingless unknot (only valid with no crossings).
//!
//! Lines starting with `#` and blank lines are ignored.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use thiserror::Error;

pub type EdgeLabel = u32;

/// A half-edge: the edge leaving `crossing` through `slot`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Dart {
    pub crossing: usize,
    pub slot: usize,
}

impl Dart {
    pub fn new(crossing: usize, slot: usize) -> Self {
        Dart { crossing, slot: slot % 4 }
    }

    pub fn rotate(self, by: usize) -> Self {
        Dart::new(self.crossing, self.slot + by)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Crossing {
    pub edges: [EdgeLabel; 4],
}

impl Crossing {
    pub fn new(edges: [EdgeLabel; 4]) -> Self {
        Crossing { edges }
    }

    /// Slots 0 and 2 carry the under-strand.
    pub fn is_over(slot: usize) -> bool {
        slot % 2 == 1
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DiagramError {
    #[error("malformed code at line {line}: {msg}")]
    MalformedCode { line: usize, msg: String },
    #[error("edge {0} appears only once")]
    NonClosing(EdgeLabel),
    #[error("Euler check failed: V - E + F = {0}, expected 2")]
    NotSphere(i64),
    #[error("face coloring is not a 2-coloring")]
    NotTwoColorable,
    #[error("unbounded face designation {0} is out of range")]
    BadUnbounded(String),
}

/// A closed 4-valent diagram on the sphere with a rotation system.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PlanarDiagram {
    crossings: Vec<Crossing>,
    partner: Vec<[Dart; 4]>,
    component: Vec<[usize; 4]>,
    outgoing: Vec<[bool; 4]>,
    n_components: usize,
    circle_components: BTreeSet<usize>,
    unbounded: Dart,
    free_loop: bool,
}

impl PlanarDiagram {
    /// The crossingless unknot.
    pub fn unknot() -> Self {
        PlanarDiagram {
            crossings: vec![],
            partner: vec![],
            component: vec![],
            outgoing: vec![],
            n_components: 1,
            circle_components: BTreeSet::new(),
            unbounded: Dart::new(0, 0),
            free_loop: true,
        }
    }

    pub fn new(
        crossings: Vec<Crossing>,
        circle_edges: &BTreeSet<EdgeLabel>,
        unbounded: Dart,
    ) -> Result<Self, DiagramError> {
        if crossings.is_empty() {
            return Err(DiagramError::MalformedCode {
                line: 0,
                msg: "no crossings (use `loop` for the unknot)".into(),
            });
        }
        let mut ends: BTreeMap<EdgeLabel, Vec<Dart>> = BTreeMap::new();
        for (c, x) in crossings.iter().enumerate() {
            for (s, &e) in x.edges.iter().enumerate() {
                ends.entry(e).or_default().push(Dart::new(c, s));
            }
        }
        let mut partner = vec![[Dart::new(0, 0); 4]; crossings.len()];
        for (&e, ds) in &ends {
            match ds.len() {
                1 => return Err(DiagramError::NonClosing(e)),
                2 => {
                    partner[ds[0].crossing][ds[0].slot] = ds[1];
                    partner[ds[1].crossing][ds[1].slot] = ds[0];
                }
                n => {
                    return Err(DiagramError::MalformedCode {
                        line: 0,
                        msg: format!("edge {e} appears {n} times"),
                    })
                }
            }
        }
        for e in circle_edges {
            if !ends.contains_key(e) {
                return Err(DiagramError::MalformedCode {
                    line: 0,
                    msg: format!("circle tag names unknown edge {e}"),
                });
            }
        }
        if unbounded.crossing >= crossings.len() {
            return Err(DiagramError::BadUnbounded(format!(
                "U({},{})",
                unbounded.crossing, unbounded.slot
            )));
        }

        let mut d = PlanarDiagram {
            crossings,
            partner,
            component: vec![],
            outgoing: vec![],
            n_components: 0,
            circle_components: BTreeSet::new(),
            unbounded,
            free_loop: false,
        };
        d.orient_components()?;
        for e in circle_edges {
            let dart = ends[e][0];
            d.circle_components
                .insert(d.component[dart.crossing][dart.slot]);
        }
        let v = d.crossings.len() as i64;
        let f = d.count_faces() as i64;
        let euler = v - 2 * v + f;
        if euler != 2 {
            return Err(DiagramError::NotSphere(euler));
        }
        Ok(d)
    }

    /// Traverses components and fixes an orientation in which every
    /// under-passage runs from slot 0 to slot 2.
    fn orient_components(&mut self) -> Result<(), DiagramError> {
        let n = self.crossings.len();
        let mut component = vec![[usize::MAX; 4]; n];
        let mut outgoing = vec![[false; 4]; n];
        let mut comp = 0;
        // Prefer starts on an under-strand so the orientation is forced.
        let starts = (0..n)
            .map(|c| Dart::new(c, 2))
            .chain((0..n).flat_map(|c| [Dart::new(c, 1), Dart::new(c, 3)]));
        for start in starts {
            if component[start.crossing][start.slot] != usize::MAX {
                continue;
            }
            let mut out = start;
            loop {
                let inc = self.partner[out.crossing][out.slot];
                component[out.crossing][out.slot] = comp;
                outgoing[out.crossing][out.slot] = true;
                component[inc.crossing][inc.slot] = comp;
                if inc.slot == 2 {
                    return Err(DiagramError::MalformedCode {
                        line: inc.crossing + 1,
                        msg: "under-strand orientation is inconsistent".into(),
                    });
                }
                let next = inc.rotate(2);
                if next == start {
                    break;
                }
                if component[next.crossing][next.slot] != usize::MAX {
                    return Err(DiagramError::MalformedCode {
                        line: next.crossing + 1,
                        msg: "strand traversal is inconsistent".into(),
                    });
                }
                out = next;
            }
            comp += 1;
        }
        self.component = component;
        self.outgoing = outgoing;
        self.n_components = comp;
        Ok(())
    }

    fn count_faces(&self) -> usize {
        let mut seen = vec![[false; 4]; self.crossings.len()];
        let mut faces = 0;
        for c in 0..self.crossings.len() {
            for s in 0..4 {
                if seen[c][s] {
                    continue;
                }
                faces += 1;
                let mut d = Dart::new(c, s);
                while !seen[d.crossing][d.slot] {
                    seen[d.crossing][d.slot] = true;
                    d = self.face_next(d);
                }
            }
        }
        faces
    }

    /// Next dart along a face boundary: cross the edge, then turn to the
    /// counter-clockwise neighbour. The face lies to the right of each dart.
    pub fn face_next(&self, d: Dart) -> Dart {
        self.partner(d).rotate(1)
    }

    pub fn partner(&self, d: Dart) -> Dart {
        self.partner[d.crossing][d.slot]
    }

    pub fn edge(&self, d: Dart) -> EdgeLabel {
        self.crossings[d.crossing].edges[d.slot]
    }

    pub fn crossings(&self) -> &[Crossing] {
        &self.crossings
    }

    pub fn crossing_count(&self) -> usize {
        self.crossings.len()
    }

    pub fn edge_count(&self) -> usize {
        2 * self.crossings.len()
    }

    pub fn is_free_loop(&self) -> bool {
        self.free_loop
    }

    pub fn component_count(&self) -> usize {
        self.n_components
    }

    pub fn component_of(&self, d: Dart) -> usize {
        self.component[d.crossing][d.slot]
    }

    /// Whether the strand leaves the crossing through this dart.
    pub fn is_outgoing(&self, d: Dart) -> bool {
        self.outgoing[d.crossing][d.slot]
    }

    pub fn is_circle_component(&self, comp: usize) -> bool {
        self.circle_components.contains(&comp)
    }

    pub fn circle_components(&self) -> &BTreeSet<usize> {
        &self.circle_components
    }

    pub fn is_circle_dart(&self, d: Dart) -> bool {
        self.is_circle_component(self.component_of(d))
    }

    pub fn unbounded_dart(&self) -> Dart {
        self.unbounded
    }

    pub fn with_unbounded(&self, d: Dart) -> Result<Self, DiagramError> {
        if d.crossing >= self.crossings.len() && !self.free_loop {
            return Err(DiagramError::BadUnbounded(format!(
                "U({},{})",
                d.crossing, d.slot
            )));
        }
        let mut out = self.clone();
        out.unbounded = d;
        Ok(out)
    }

    /// Darts of one component in traversal order, outgoing darts only.
    pub fn component_darts(&self, comp: usize) -> Vec<Dart> {
        let Some(start) = (0..self.crossings.len())
            .flat_map(|c| (0..4).map(move |s| Dart::new(c, s)))
            .find(|&d| self.component_of(d) == comp && self.is_outgoing(d))
        else {
            return vec![];
        };
        let mut out = vec![start];
        let mut d = self.partner(start).rotate(2);
        while d != start {
            out.push(d);
            d = self.partner(d).rotate(2);
        }
        out
    }

    pub fn circle_edge_labels(&self) -> BTreeSet<EdgeLabel> {
        self.circle_components
            .iter()
            .flat_map(|&c| self.component_darts(c))
            .map(|d| self.edge(d))
            .collect()
    }
}

pub fn parse_pd(text: &str) -> Result<PlanarDiagram, DiagramError> {
    let mut crossings = vec![];
    let mut circle_edges = BTreeSet::new();
    let mut unbounded = None;
    let mut free_loop = false;
    for (idx, raw) in text.lines().enumerate() {
        let line = raw.trim();
        let lineno = idx + 1;
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let err = |msg: &str| DiagramError::MalformedCode {
            line: lineno,
            msg: msg.to_string(),
        };
        if line == "loop" {
            free_loop = true;
            continue;
        }
        let (head, args) = split_call(line).ok_or_else(|| err("expected NAME(args)"))?;
        let nums = args
            .split(',')
            .map(|t| t.trim().parse::<u32>())
            .collect::<Result<Vec<_>, _>>()
            .map_err(|_| err("arguments must be non-negative integers"))?;
        match head {
            "X" => {
                let edges: [u32; 4] = nums
                    .try_into()
                    .map_err(|_| err("a crossing lists exactly 4 edges"))?;
                crossings.push(Crossing::new(edges));
            }
            "circle" => circle_edges.extend(nums),
            "U" => {
                if nums.len() != 2 || nums[1] > 3 {
                    return Err(err("U takes (crossing, slot) with slot in 0..4"));
                }
                unbounded = Some(Dart::new(nums[0] as usize, nums[1] as usize));
            }
            _ => return Err(err("unknown directive")),
        }
    }
    if free_loop {
        if !crossings.is_empty() || !circle_edges.is_empty() {
            return Err(DiagramError::MalformedCode {
                line: 0,
                msg: "`loop` cannot be combined with crossings".into(),
            });
        }
        return Ok(PlanarDiagram::unknot());
    }
    PlanarDiagram::new(crossings, &circle_edges, unbounded.unwrap_or(Dart::new(0, 0)))
}

fn split_call(line: &str) -> Option<(&str, &str)> {
    let open = line.find('(')?;
    let rest = line[open + 1..].strip_suffix(')')?;
    Some((line[..open].trim(), rest))
}

impl fmt::Display for PlanarDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.free_loop {
            return writeln!(f, "loop");
        }
        for x in &self.crossings {
            let [a, b, c, d] = x.edges;
            writeln!(f, "X({a},{b},{c},{d})")?;
        }
        for &comp in &self.circle_components {
            let labels: Vec<String> = self
                .component_darts(comp)
                .into_iter()
                .map(|d| self.edge(d).to_string())
                .collect();
            writeln!(f, "circle({})", labels.join(","))?;
        }
        if self.unbounded != Dart::new(0, 0) {
            writeln!(f, "U({},{})", self.unbounded.crossing, self.unbounded.slot)?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    pub const FIGURE_EIGHT: &str = "X(4,2,5,1)\nX(8,6,1,5)\nX(6,3,7,4)\nX(2,7,3,8)\n";

    #[test]
    fn figure_eight_counts() {
        let d = parse_pd(FIGURE_EIGHT).unwrap();
        assert_eq!(d.crossing_count(), 4);
        assert_eq!(d.edge_count(), 8);
        assert_eq!(d.count_faces(), 6);
        assert_eq!(d.component_count(), 1);
    }

    #[test]
    fn kink_counts() {
        let d = parse_pd("# kink\nX(1,1,2,2)").unwrap();
        assert_eq!((d.crossing_count(), d.edge_count(), d.count_faces()), (1, 2, 3));
    }

    #[test]
    fn unpaired_slot_is_non_closing() {
        assert_eq!(parse_pd("X(1,1,2,3)"), Err(DiagramError::NonClosing(2)));
    }

    #[test]
    fn syntax_errors() {
        assert!(matches!(
            parse_pd("X(1,2,3)"),
            Err(DiagramError::MalformedCode { line: 1, .. })
        ));
        assert!(matches!(
            parse_pd("Y(1,1,2,2)"),
            Err(DiagramError::MalformedCode { .. })
        ));
        assert!(matches!(
            parse_pd("X(1,a,2,2)"),
            Err(DiagramError::MalformedCode { .. })
        ));
    }

    #[test]
    fn split_diagram_fails_euler() {
        let err = parse_pd("X(1,1,2,2)\nX(3,3,4,4)").unwrap_err();
        assert_eq!(err, DiagramError::NotSphere(4));
    }

    #[test]
    fn display_round_trips() {
        let text = "X(1,5,2,4)\nX(3,1,4,6)\nX(5,3,6,2)\nU(1,2)\n";
        let d = parse_pd(text).unwrap();
        assert_eq!(d.to_string(), text);
        assert_eq!(parse_pd(&d.to_string()).unwrap(), d);
    }
}
