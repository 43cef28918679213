//! Seeded random instances: abstract records for the graph/oracle
//! properties and closed-braid diagrams for the diagram pipeline.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::ald::FlatAugmentedLink;

pub const MAX_REGIONS: usize = 12;
pub const MAX_CIRCLES: usize = 15;

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Uniform random labelled tree on `n` vertices from a Prüfer sequence.
fn random_tree(rng: &mut impl Rng, n: usize) -> Vec<(usize, usize)> {
    if n < 2 {
        return vec![];
    }
    let code: Vec<usize> = (0..n - 2).map(|_| rng.gen_range(0..n)).collect();
    let mut degree = vec![1usize; n];
    for &c in &code {
        degree[c] += 1;
    }
    let mut edges = vec![];
    for &c in &code {
        let leaf = (0..n).find(|&v| degree[v] == 1).expect("a leaf exists");
        edges.push((leaf, c));
        degree[leaf] -= 1;
        degree[c] -= 1;
    }
    let rest: Vec<usize> = (0..n).filter(|&v| degree[v] == 1).collect();
    edges.push((rest[0], rest[1]));
    edges
}

fn find(parent: &mut [usize], v: usize) -> usize {
    let mut r = v;
    while parent[r] != r {
        r = parent[r];
    }
    parent[v] = r;
    r
}

/// A random valid flat record on at most `size` regions (capped at 12)
/// with at most 15 circles. Half of the instances have a tree graph.
/// A-circles are added where needed so the region/circle incidence
/// structure is connected, as for a connected diagram.
pub fn random_ald(seed: u64, size: usize) -> FlatAugmentedLink {
    let mut rng = rng(seed);
    let n = rng.gen_range(1..=size.clamp(1, MAX_REGIONS));
    let mut b_edges = if rng.gen_bool(0.5) {
        random_tree(&mut rng, n)
    } else {
        // Leaves room for the A-circles that may be needed to connect.
        let k = rng.gen_range(0..=(n + 2).min(MAX_CIRCLES + 1 - n));
        (0..k)
            .map(|_| (rng.gen_range(0..n), rng.gen_range(0..n)))
            .collect()
    };
    for e in &mut b_edges {
        if rng.gen_bool(0.5) {
            *e = (e.1, e.0);
        }
    }
    let mut parent: Vec<usize> = (0..n).collect();
    for &(x, y) in &b_edges {
        let (rx, ry) = (find(&mut parent, x), find(&mut parent, y));
        parent[rx] = ry;
    }
    let mut a_edges = vec![];
    for v in 1..n {
        let (r0, rv) = (find(&mut parent, 0), find(&mut parent, v));
        if r0 != rv {
            let joined: Vec<usize> = (0..v).filter(|&u| find(&mut parent, u) == r0).collect();
            let u = *joined.choose(&mut rng).expect("component of 0 is non-empty");
            a_edges.push(if rng.gen_bool(0.5) { (u, v) } else { (v, u) });
            parent[rv] = r0;
        }
    }
    let room = MAX_CIRCLES - b_edges.len() - a_edges.len();
    let extra = rng.gen_range(0..=3usize.min(room));
    for _ in 0..extra {
        let at = rng.gen_range(0..=a_edges.len());
        a_edges.insert(at, (rng.gen_range(0..n), rng.gen_range(0..n)));
    }

    let mut ald = FlatAugmentedLink::from_graph(n, &b_edges, &a_edges);
    for region in &mut ald.c_regions {
        region.boundary.shuffle(&mut rng);
    }
    ald
}

/// A closed braid with every generator used, in runs of two equal letters
/// and one sign per generator, so each twist region has an even number of
/// crossings. Returned as PD text whose unbounded face lies left of the
/// first strand.
pub fn random_braid_pd(seed: u64) -> String {
    let mut rng = rng(seed);
    let strands = rng.gen_range(2..=4usize);
    let signs: Vec<bool> = (1..strands).map(|_| rng.gen_bool(0.5)).collect();
    let extra = rng.gen_range(0..=3usize);
    let mut gens: Vec<usize> = (0..strands - 1).collect();
    gens.extend((0..extra).map(|_| rng.gen_range(0..strands - 1)));
    gens.shuffle(&mut rng);
    let word: Vec<usize> = gens.iter().flat_map(|&g| [g, g]).collect();
    braid_closure_pd(strands, &word, &signs)
}

/// PD text of the closure of a braid word. `word` lists 0-based generator
/// indices; `positive[i]` fixes the sign of every occurrence of `i`.
pub fn braid_closure_pd(strands: usize, word: &[usize], positive: &[bool]) -> String {
    let mut cur: Vec<u32> = (1..=strands as u32).collect();
    let mut next = strands as u32 + 1;
    let mut crossings: Vec<[u32; 4]> = vec![];
    for &g in word {
        let (bl, br) = (cur[g], cur[g + 1]);
        let (tl, tr) = (next, next + 1);
        next += 2;
        crossings.push(if positive[g] {
            [br, tr, tl, bl]
        } else {
            [bl, br, tr, tl]
        });
        cur[g] = tl;
        cur[g + 1] = tr;
    }
    // Close up: the top of each strand is its bottom.
    let close = |l: u32| {
        cur.iter()
            .position(|&c| c == l)
            .map(|p| p as u32 + 1)
            .unwrap_or(l)
    };
    let mut out = String::new();
    let mut unbounded = None;
    for (k, x) in crossings.iter().enumerate() {
        let [a, b, c, d] = x.map(close);
        out.push_str(&format!("X({a},{b},{c},{d})\n"));
        if unbounded.is_none() && word[k] == 0 {
            unbounded = Some((k, if positive[0] { 3 } else { 0 }));
        }
    }
    if let Some((c, s)) = unbounded {
        out.push_str(&format!("U({c},{s})\n"));
    }
    out
}
