//! Kuratowski witnesses: extraction by destructive edge deletion and
//! structural verification.

use serde::{Deserialize, Serialize};

use super::lr;
use crate::cayley::SimpleGraph;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum WitnessKind {
    K5,
    K33,
}

/// A subdivision of K5 or K3,3 inside a host graph. Paths run between
/// branch vertices and are internally disjoint; every consecutive pair on
/// a path is an edge of the host.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct KuratowskiWitness {
    pub kind: WitnessKind,
    pub branch_vertices: Vec<usize>,
    pub paths: Vec<Vec<usize>>,
}

/// Pull a Kuratowski subdivision out of a non-planar graph.
///
/// One deletion pass: an edge is kept exactly when removing it would make
/// the rest planar. Kept edges stay mandatory under later deletions
/// (subgraphs of planar graphs are planar), so a single pass leaves an
/// edge-minimal non-planar subgraph, which is a K5 or K3,3 subdivision.
///
/// Panics if the input is planar.
pub fn extract_witness(g: &SimpleGraph) -> KuratowskiWitness {
    assert!(
        !lr::is_planar(g),
        "witness extraction needs a non-planar graph"
    );
    let n = g.vertex_count();
    let mut kept: Vec<(usize, usize)> = g.edges().to_vec();
    let mut i = 0;
    while i < kept.len() {
        let mut trial = kept.clone();
        trial.swap_remove(i);
        let without = SimpleGraph::new(n, trial.iter().copied());
        if lr::is_planar(&without) {
            i += 1; // edge is load-bearing
        } else {
            kept.swap_remove(i);
        }
    }
    witness_from_minimal(n, &kept)
}

/// Classify an edge-minimal non-planar subgraph and walk out its paths.
fn witness_from_minimal(n: usize, edges: &[(usize, usize)]) -> KuratowskiWitness {
    let sub = SimpleGraph::new(n, edges.iter().copied());
    let deg = sub.degrees();
    let adj = sub.adjacency();
    let branch: Vec<usize> = (0..n).filter(|&v| deg[v] >= 3).collect();
    let kind = match branch.len() {
        5 if branch.iter().all(|&v| deg[v] == 4) => WitnessKind::K5,
        6 if branch.iter().all(|&v| deg[v] == 3) => WitnessKind::K33,
        _ => panic!(
            "minimal non-planar subgraph has branch degrees {:?}, not a Kuratowski shape",
            branch.iter().map(|&v| deg[v]).collect::<Vec<_>>()
        ),
    };
    let is_branch = |v: usize| deg[v] >= 3;
    // walk from each branch vertex along each incident edge through
    // degree-2 vertices; keep one direction per path
    let mut used = std::collections::HashSet::new();
    let mut paths = Vec::new();
    for &b in &branch {
        for &first in &adj[b] {
            if used.contains(&(b, first)) {
                continue;
            }
            let mut path = vec![b, first];
            used.insert((b, first));
            let (mut prev, mut cur) = (b, first);
            while !is_branch(cur) {
                let next = *adj[cur]
                    .iter()
                    .find(|&&x| x != prev)
                    .expect("degree-2 vertex has another side");
                used.insert((cur, next));
                path.push(next);
                prev = cur;
                cur = next;
            }
            used.insert((cur, prev)); // block the reverse walk
            paths.push(path);
        }
    }
    KuratowskiWitness {
        kind,
        branch_vertices: branch,
        paths,
    }
}

/// Structural validity of a witness against a host graph: path edges exist
/// in the host, paths are internally disjoint and meet branch vertices only
/// at their endpoints, and the contracted pattern is exactly K5 or K3,3.
pub fn verify_kuratowski(g: &SimpleGraph, w: &KuratowskiWitness) -> bool {
    let b = &w.branch_vertices;
    let expected_branches = match w.kind {
        WitnessKind::K5 => 5,
        WitnessKind::K33 => 6,
    };
    if b.len() != expected_branches {
        return false;
    }
    let mut sorted = b.clone();
    sorted.sort_unstable();
    sorted.dedup();
    if sorted.len() != b.len() || sorted.iter().any(|&v| v >= g.vertex_count()) {
        return false;
    }
    let is_branch = |v: usize| sorted.binary_search(&v).is_ok();

    let mut interior_seen = std::collections::HashSet::new();
    let mut pattern = Vec::new();
    for path in &w.paths {
        if path.len() < 2 {
            return false;
        }
        let (s, t) = (path[0], *path.last().expect("non-empty"));
        if !is_branch(s) || !is_branch(t) || s == t {
            return false;
        }
        for pair in path.windows(2) {
            if !g.has_edge(pair[0], pair[1]) {
                return false;
            }
        }
        let mut within = std::collections::HashSet::new();
        for &v in path {
            if !within.insert(v) {
                return false; // revisits a vertex
            }
        }
        for &v in &path[1..path.len() - 1] {
            if is_branch(v) || !interior_seen.insert(v) {
                return false; // touches a branch vertex or another path
            }
        }
        pattern.push(if s < t { (s, t) } else { (t, s) });
    }
    pattern.sort_unstable();
    let before = pattern.len();
    pattern.dedup();
    if pattern.len() != before {
        return false; // two paths joining the same branch pair
    }
    match w.kind {
        WitnessKind::K5 => {
            // all ten pairs present
            let mut expect = Vec::new();
            for i in 0..5 {
                for j in i + 1..5 {
                    let (x, y) = (sorted[i], sorted[j]);
                    expect.push((x.min(y), x.max(y)));
                }
            }
            expect.sort_unstable();
            pattern == expect
        }
        WitnessKind::K33 => {
            if pattern.len() != 9 {
                return false;
            }
            // 9 edges on 6 vertices, every vertex degree 3, bipartite:
            // that pins down K3,3
            let mut pat_deg = std::collections::HashMap::new();
            for &(u, v) in &pattern {
                *pat_deg.entry(u).or_insert(0usize) += 1;
                *pat_deg.entry(v).or_insert(0usize) += 1;
            }
            if !sorted.iter().all(|v| pat_deg.get(v) == Some(&3)) {
                return false;
            }
            is_bipartite_on(&sorted, &pattern)
        }
    }
}

fn is_bipartite_on(vertices: &[usize], edges: &[(usize, usize)]) -> bool {
    let mut color = std::collections::HashMap::new();
    for &start in vertices {
        if color.contains_key(&start) {
            continue;
        }
        color.insert(start, 0u8);
        let mut queue = std::collections::VecDeque::from([start]);
        while let Some(v) = queue.pop_front() {
            let c = color[&v];
            for &(a, b) in edges {
                let w = if a == v {
                    b
                } else if b == v {
                    a
                } else {
                    continue;
                };
                match color.get(&w) {
                    None => {
                        color.insert(w, 1 - c);
                        queue.push_back(w);
                    }
                    Some(&cw) if cw == c => return false,
                    _ => {}
                }
            }
        }
    }
    true
}
