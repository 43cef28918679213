#![allow(dead_code)]

use std::collections::BTreeMap;

use augfiber::ald::{ACircle, FlatAugmentedLink, Incidence, SideLabel, Style};
use rand::seq::SliceRandom;
use rand::Rng;

pub const FIGURE_EIGHT: &str = "X(4,2,5,1)\nX(8,6,1,5)\nX(6,3,7,4)\nX(2,7,3,8)\n";
pub const TREFOIL: &str = "X(1,5,2,4)\nX(3,1,4,6)\nX(5,3,6,2)\n";

/// Renames every region and circle through a random permutation of its
/// numeric suffix, with fresh prefixes.
pub fn relabel(ald: &FlatAugmentedLink, rng: &mut impl Rng) -> FlatAugmentedLink {
    let mut map = BTreeMap::new();
    let mut perm = |ids: Vec<String>, prefix: &str, rng: &mut dyn rand::RngCore| {
        let mut k: Vec<usize> = (0..ids.len()).collect();
        k.shuffle(rng);
        for (id, k) in ids.into_iter().zip(k) {
            map.insert(id, format!("{prefix}{k}"));
        }
    };
    perm(ald.c_regions.iter().map(|c| c.id.clone()).collect(), "R", rng);
    perm(ald.b_circles.iter().map(|c| c.id.clone()).collect(), "P", rng);
    perm(ald.a_circles.iter().map(|c| c.id.clone()).collect(), "Q", rng);
    let r = |s: &String| map[s].clone();
    let mut out = ald.clone();
    for c in &mut out.c_regions {
        c.id = r(&c.id);
        for inc in &mut c.boundary {
            inc.circle = r(&inc.circle);
        }
    }
    for b in &mut out.b_circles {
        b.id = r(&b.id);
        b.m_side = r(&b.m_side);
        b.n_side = r(&b.n_side);
    }
    for a in &mut out.a_circles {
        a.id = r(&a.id);
        a.side1 = r(&a.side1);
        a.side2 = r(&a.side2);
    }
    out.unbounded = r(&out.unbounded);
    out
}

/// Exchanges the m and n roles of one B-circle.
pub fn swap_mn(ald: &FlatAugmentedLink, id: &str) -> FlatAugmentedLink {
    let mut out = ald.clone();
    let b = out.b_circles.iter_mut().find(|b| b.id == id).expect("B-circle");
    std::mem::swap(&mut b.m_side, &mut b.n_side);
    for c in &mut out.c_regions {
        for inc in &mut c.boundary {
            if inc.circle == id {
                inc.side = match inc.side {
                    SideLabel::M => SideLabel::N,
                    SideLabel::N => SideLabel::M,
                    s => s,
                };
            }
        }
    }
    out
}

pub fn insert_a(ald: &FlatAugmentedLink, side1: &str, side2: &str) -> FlatAugmentedLink {
    let mut out = ald.clone();
    let id = format!("A{}", 1000 + out.a_circles.len());
    for (side, label) in [(side1, SideLabel::One), (side2, SideLabel::Two)] {
        let region = out.region_mut(side).expect("region");
        region.boundary.push(Incidence::new(&id, label));
    }
    out.a_circles.push(ACircle {
        id,
        side1: side1.into(),
        side2: side2.into(),
        style: Style::Flat,
    });
    out
}

pub fn remove_a(ald: &FlatAugmentedLink, id: &str) -> FlatAugmentedLink {
    let mut out = ald.clone();
    out.a_circles.retain(|a| a.id != id);
    for c in &mut out.c_regions {
        c.boundary.retain(|inc| inc.circle != id);
    }
    out
}
