use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum SideLabel {
    #[serde(rename = "m")]
    M,
    #[serde(rename = "n")]
    N,
    #[serde(rename = "1")]
    One,
    #[serde(rename = "2")]
    Two,
}

impl fmt::Display for SideLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SideLabel::M => "m",
            SideLabel::N => "n",
            SideLabel::One => "1",
            SideLabel::Two => "2",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Incidence {
    pub circle: String,
    pub side: SideLabel,
}

impl Incidence {
    pub fn new(circle: impl Into<String>, side: SideLabel) -> Self {
        Incidence { circle: circle.into(), side }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CRegion {
    pub id: String,
    /// Circles met going once around the region, in planar cyclic order.
    pub boundary: Vec<Incidence>,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Style {
    #[default]
    Flat,
    Alternating,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BCircle {
    pub id: String,
    pub m_side: String,
    pub n_side: String,
    #[serde(default)]
    pub style: Style,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ACircle {
    pub id: String,
    pub side1: String,
    pub side2: String,
    #[serde(default)]
    pub style: Style,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum CircleType {
    /// Bounds two white regions.
    A,
    /// Bounds a single white region.
    B,
}

/// Abstract record of a flat (or locally alternating) augmented link.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FlatAugmentedLink {
    pub c_regions: Vec<CRegion>,
    #[serde(default)]
    pub b_circles: Vec<BCircle>,
    #[serde(default)]
    pub a_circles: Vec<ACircle>,
    pub unbounded: String,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RankCounts {
    pub q: usize,
    pub r: usize,
}

impl RankCounts {
    pub fn rank(&self) -> usize {
        self.q + self.r
    }
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(tag = "kind")]
pub enum Violation {
    DuplicateId { id: String },
    MissingUnbounded { id: String },
    DanglingIncidence { region: String, circle: String },
    InconsistentCyclicOrder { region: String, circle: String },
    SideMismatch { region: String, circle: String },
}

impl FlatAugmentedLink {
    pub fn b_circle(&self, id: &str) -> Option<&BCircle> {
        self.b_circles.iter().find(|b| b.id == id)
    }

    pub fn a_circle(&self, id: &str) -> Option<&ACircle> {
        self.a_circles.iter().find(|a| a.id == id)
    }

    pub fn region(&self, id: &str) -> Option<&CRegion> {
        self.c_regions.iter().find(|c| c.id == id)
    }

    pub fn region_mut(&mut self, id: &str) -> Option<&mut CRegion> {
        self.c_regions.iter_mut().find(|c| c.id == id)
    }

    pub fn circle_type(&self, id: &str) -> Option<CircleType> {
        if self.b_circle(id).is_some() {
            Some(CircleType::B)
        } else if self.a_circle(id).is_some() {
            Some(CircleType::A)
        } else {
            None
        }
    }

    pub fn circle_count(&self) -> usize {
        self.b_circles.len() + self.a_circles.len()
    }

    pub fn has_alternating(&self) -> bool {
        self.b_circles.iter().any(|b| b.style == Style::Alternating)
            || self.a_circles.iter().any(|a| a.style == Style::Alternating)
    }

    /// The regions a circle touches, per side label.
    pub fn circle_sides(&self, id: &str) -> Option<[(SideLabel, &str); 2]> {
        if let Some(b) = self.b_circle(id) {
            Some([(SideLabel::M, &b.m_side), (SideLabel::N, &b.n_side)])
        } else {
            self.a_circle(id)
                .map(|a| [(SideLabel::One, a.side1.as_str()), (SideLabel::Two, a.side2.as_str())])
        }
    }

    pub fn rank_counts(&self) -> RankCounts {
        RankCounts {
            q: self.b_circles.len(),
            r: self.c_regions.len().saturating_sub(1),
        }
    }

    /// Region ids other than the unbounded one, sorted.
    pub fn bounded_regions(&self) -> Vec<&str> {
        let mut v: Vec<&str> = self
            .c_regions
            .iter()
            .map(|c| c.id.as_str())
            .filter(|id| *id != self.unbounded)
            .collect();
        v.sort();
        v
    }

    pub fn validate(&self) -> Vec<Violation> {
        let mut out = BTreeSet::new();
        let mut ids = BTreeSet::new();
        let all_ids = self
            .c_regions
            .iter()
            .map(|c| &c.id)
            .chain(self.b_circles.iter().map(|b| &b.id))
            .chain(self.a_circles.iter().map(|a| &a.id));
        for id in all_ids {
            if !ids.insert(id.clone()) {
                out.insert(Violation::DuplicateId { id: id.clone() });
            }
        }
        if self.region(&self.unbounded).is_none() {
            out.insert(Violation::MissingUnbounded {
                id: self.unbounded.clone(),
            });
        }

        // Expected incidences from the circle records.
        let mut expected: BTreeMap<(&str, &str), Vec<SideLabel>> = BTreeMap::new();
        let circle_ids = self
            .b_circles
            .iter()
            .map(|b| &b.id)
            .chain(self.a_circles.iter().map(|a| &a.id));
        for id in circle_ids {
            for (side, region) in self.circle_sides(id).unwrap() {
                if self.region(region).is_none() {
                    out.insert(Violation::DanglingIncidence {
                        region: region.to_string(),
                        circle: id.clone(),
                    });
                    continue;
                }
                expected.entry((region, id.as_str())).or_default().push(side);
            }
        }
        let mut found: BTreeMap<(&str, &str), Vec<SideLabel>> = BTreeMap::new();
        for region in &self.c_regions {
            for inc in &region.boundary {
                match self.circle_type(&inc.circle) {
                    None => {
                        out.insert(Violation::DanglingIncidence {
                            region: region.id.clone(),
                            circle: inc.circle.clone(),
                        });
                    }
                    Some(t) => {
                        let ok = matches!(
                            (t, inc.side),
                            (CircleType::B, SideLabel::M | SideLabel::N)
                                | (CircleType::A, SideLabel::One | SideLabel::Two)
                        );
                        if !ok {
                            out.insert(Violation::SideMismatch {
                                region: region.id.clone(),
                                circle: inc.circle.clone(),
                            });
                        }
                        found
                            .entry((region.id.as_str(), inc.circle.as_str()))
                            .or_default()
                            .push(inc.side);
                    }
                }
            }
        }
        let keys: BTreeSet<_> = expected.keys().chain(found.keys()).copied().collect();
        for key in keys {
            let mut e = expected.get(&key).cloned().unwrap_or_default();
            let mut f = found.get(&key).cloned().unwrap_or_default();
            e.sort();
            f.sort();
            if e != f && self.circle_type(key.1).is_some() && self.region(key.0).is_some() {
                out.insert(Violation::InconsistentCyclicOrder {
                    region: key.0.to_string(),
                    circle: key.1.to_string(),
                });
            }
        }
        out.into_iter().collect()
    }

    /// Copy with every list sorted by id (cyclic boundary lists untouched).
    pub fn canonical(&self) -> Self {
        let mut out = self.clone();
        out.c_regions.sort_by(|a, b| a.id.cmp(&b.id));
        out.b_circles.sort_by(|a, b| a.id.cmp(&b.id));
        out.a_circles.sort_by(|a, b| a.id.cmp(&b.id));
        out
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.canonical()).expect("ALD serializes")
    }

    pub fn from_json(text: &str) -> Result<Self, serde_json::Error> {
        serde_json::from_str(text)
    }

    /// Regions `C0..C{regions-1}` (C0 unbounded), B-circles `B1..` joining
    /// `(m, n)` and A-circles `A1..` joining `(side1, side2)`, all flat, with
    /// incidences listed in circle order.
    pub fn from_graph(regions: usize, b: &[(usize, usize)], a: &[(usize, usize)]) -> Self {
        let mut c_regions: Vec<CRegion> = (0..regions)
            .map(|i| CRegion {
                id: format!("C{i}"),
                boundary: vec![],
            })
            .collect();
        let mut b_circles = vec![];
        for (k, &(m, n)) in b.iter().enumerate() {
            let id = format!("B{}", k + 1);
            c_regions[m].boundary.push(Incidence::new(&id, SideLabel::M));
            c_regions[n].boundary.push(Incidence::new(&id, SideLabel::N));
            b_circles.push(BCircle {
                id,
                m_side: format!("C{m}"),
                n_side: format!("C{n}"),
                style: Style::Flat,
            });
        }
        let mut a_circles = vec![];
        for (k, &(s1, s2)) in a.iter().enumerate() {
            let id = format!("A{}", k + 1);
            c_regions[s1].boundary.push(Incidence::new(&id, SideLabel::One));
            c_regions[s2].boundary.push(Incidence::new(&id, SideLabel::Two));
            a_circles.push(ACircle {
                id,
                side1: format!("C{s1}"),
                side2: format!("C{s2}"),
                style: Style::Flat,
            });
        }
        FlatAugmentedLink {
            c_regions,
            b_circles,
            a_circles,
            unbounded: "C0".into(),
        }
    }

    /// Removes every incidence of `circle` from region boundaries.
    pub(crate) fn drop_incidences(&mut self, circle: &str) {
        for region in &mut self.c_regions {
            region.boundary.retain(|inc| inc.circle != circle);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) fn edge_ald() -> FlatAugmentedLink {
        FlatAugmentedLink {
            c_regions: vec![
                CRegion {
                    id: "C0".into(),
                    boundary: vec![Incidence::new("B1", SideLabel::N)],
                },
                CRegion {
                    id: "C1".into(),
                    boundary: vec![Incidence::new("B1", SideLabel::M)],
                },
            ],
            b_circles: vec![BCircle {
                id: "B1".into(),
                m_side: "C1".into(),
                n_side: "C0".into(),
                style: Style::Flat,
            }],
            a_circles: vec![],
            unbounded: "C0".into(),
        }
    }

    #[test]
    fn well_formed_is_clean() {
        assert!(edge_ald().validate().is_empty());
    }

    #[test]
    fn dangling_region_reference() {
        let mut ald = edge_ald();
        ald.b_circles[0].m_side = "C9".into();
        let v = ald.validate();
        assert!(v.contains(&Violation::DanglingIncidence {
            region: "C9".into(),
            circle: "B1".into()
        }));
    }

    #[test]
    fn omitted_incidence_is_inconsistent() {
        let mut ald = edge_ald();
        ald.c_regions[1].boundary.clear();
        assert_eq!(
            ald.validate(),
            vec![Violation::InconsistentCyclicOrder {
                region: "C1".into(),
                circle: "B1".into()
            }]
        );
    }

    #[test]
    fn side_labels_must_match_type() {
        let mut ald = edge_ald();
        ald.c_regions[1].boundary[0].side = SideLabel::One;
        assert!(ald
            .validate()
            .iter()
            .any(|v| matches!(v, Violation::SideMismatch { .. })));
    }

    #[test]
    fn missing_unbounded_and_duplicates() {
        let mut ald = edge_ald();
        ald.unbounded = "C7".into();
        ald.c_regions.push(ald.c_regions[1].clone());
        let v = ald.validate();
        assert!(v.contains(&Violation::MissingUnbounded { id: "C7".into() }));
        assert!(v.contains(&Violation::DuplicateId { id: "C1".into() }));
    }

    #[test]
    fn rank_counts_ignore_a_circles() {
        let mut ald = edge_ald();
        assert_eq!(ald.rank_counts(), RankCounts { q: 1, r: 1 });
        ald.a_circles.push(ACircle {
            id: "A1".into(),
            side1: "C0".into(),
            side2: "C1".into(),
            style: Style::Flat,
        });
        assert_eq!(ald.rank_counts(), RankCounts { q: 1, r: 1 });
    }

    #[test]
    fn json_uses_documented_field_names() {
        let json = edge_ald().to_json();
        let v: serde_json::Value = serde_json::from_str(&json).unwrap();
        assert_eq!(v["b_circles"][0]["m_side"], "C1");
        assert_eq!(v["c_regions"][0]["boundary"][0]["side"], "n");
        assert_eq!(v["unbounded"], "C0");
        assert_eq!(FlatAugmentedLink::from_json(&json).unwrap(), edge_ald());
    }
}
