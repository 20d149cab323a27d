//! Planarity with certificates in both directions, plus face tracing,
//! embedding genus, and brute-force minimum genus for tiny graphs.

mod kuratowski;
mod lr;

use std::collections::HashMap;

use serde::ser::SerializeStruct;
use serde::{Deserialize, Serialize};

use crate::cayley::SimpleGraph;
use crate::{Error, Result};

pub use kuratowski::{extract_witness, verify_kuratowski, KuratowskiWitness, WitnessKind};

/// Clockwise neighbor order around every vertex.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RotationSystem {
    order: Vec<Vec<usize>>,
}

impl RotationSystem {
    pub fn new(order: Vec<Vec<usize>>) -> RotationSystem {
        RotationSystem { order }
    }

    pub fn vertex_count(&self) -> usize {
        self.order.len()
    }

    pub fn cw(&self, v: usize) -> &[usize] {
        &self.order[v]
    }

    /// Each vertex's list is exactly its neighbor set, once each.
    pub fn consistent_with(&self, g: &SimpleGraph) -> bool {
        if self.order.len() != g.vertex_count() {
            return false;
        }
        let adj = g.adjacency();
        (0..g.vertex_count()).all(|v| {
            let mut mine = self.order[v].clone();
            let mut theirs = adj[v].clone();
            mine.sort_unstable();
            theirs.sort_unstable();
            mine.windows(2).all(|w| w[0] != w[1]) && mine == theirs
        })
    }
}

/// Faces of a rotation system: orbits of half-edges under the rule
/// "after arriving at w from v, leave along the clockwise predecessor
/// of v at w". Each face is the closed walk of its half-edges.
pub fn trace_faces(rot: &RotationSystem) -> Vec<Vec<(usize, usize)>> {
    let n = rot.vertex_count();
    let mut pos: Vec<HashMap<usize, usize>> = vec![HashMap::new(); n];
    for v in 0..n {
        for (i, &w) in rot.cw(v).iter().enumerate() {
            pos[v].insert(w, i);
        }
    }
    let mut seen: Vec<Vec<bool>> = (0..n).map(|v| vec![false; rot.cw(v).len()]).collect();
    let mut faces = Vec::new();
    for v0 in 0..n {
        for i0 in 0..rot.cw(v0).len() {
            if seen[v0][i0] {
                continue;
            }
            let mut face = Vec::new();
            let (mut v, mut i) = (v0, i0);
            loop {
                seen[v][i] = true;
                let w = rot.cw(v)[i];
                face.push((v, w));
                let len = rot.cw(w).len();
                let j = (pos[w][&v] + len - 1) % len;
                v = w;
                i = j;
                if (v, i) == (v0, i0) {
                    break;
                }
            }
            faces.push(face);
        }
    }
    faces
}

/// A graph together with a rotation system and the faces it traces out.
#[derive(Clone, Debug)]
pub struct PlanarEmbedding {
    graph: SimpleGraph,
    rotation: RotationSystem,
    faces: Vec<Vec<(usize, usize)>>,
}

impl PlanarEmbedding {
    /// Trace the faces of `rotation` and package the result. No validity
    /// check happens here; that is `verify_embedding`'s job.
    pub fn from_rotation(graph: SimpleGraph, rotation: RotationSystem) -> PlanarEmbedding {
        let faces = trace_faces(&rotation);
        PlanarEmbedding {
            graph,
            rotation,
            faces,
        }
    }

    /// Assemble from stored parts, e.g. deserialized output. Unvalidated.
    pub fn from_parts(
        graph: SimpleGraph,
        rotation: RotationSystem,
        faces: Vec<Vec<(usize, usize)>>,
    ) -> PlanarEmbedding {
        PlanarEmbedding {
            graph,
            rotation,
            faces,
        }
    }

    pub fn graph(&self) -> &SimpleGraph {
        &self.graph
    }

    pub fn rotation(&self) -> &RotationSystem {
        &self.rotation
    }

    pub fn faces(&self) -> &[Vec<(usize, usize)>] {
        &self.faces
    }

    pub fn face_count(&self) -> usize {
        self.faces.len()
    }
}

impl Serialize for PlanarEmbedding {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut out = s.serialize_struct("PlanarEmbedding", 2)?;
        out.serialize_field("rotation", &self.rotation)?;
        out.serialize_field("faces", &self.faces)?;
        out.end()
    }
}

/// Outcome of `test_planarity`: exactly one certificate, checkable on its own.
#[derive(Clone, Debug, Serialize)]
pub enum PlanarityCertificate {
    Embedding(PlanarEmbedding),
    Witness(KuratowskiWitness),
}

impl PlanarityCertificate {
    pub fn is_planar(&self) -> bool {
        matches!(self, PlanarityCertificate::Embedding(_))
    }

    pub fn embedding(&self) -> Option<&PlanarEmbedding> {
        match self {
            PlanarityCertificate::Embedding(e) => Some(e),
            PlanarityCertificate::Witness(_) => None,
        }
    }

    pub fn witness(&self) -> Option<&KuratowskiWitness> {
        match self {
            PlanarityCertificate::Embedding(_) => None,
            PlanarityCertificate::Witness(w) => Some(w),
        }
    }
}

/// Planarity verdict without certificates. Much cheaper than
/// `test_planarity` on non-planar graphs; use this for sweeps.
pub fn is_planar(g: &SimpleGraph) -> bool {
    lr::is_planar(g)
}

/// Decide planarity and build the certificate: a combinatorial embedding
/// when planar, a Kuratowski subdivision when not. Disconnected input is
/// fine (a graph is planar iff all components are; the embedding carries
/// every component).
pub fn test_planarity(g: &SimpleGraph) -> PlanarityCertificate {
    match lr::embed(g) {
        Some(order) => {
            let rot = RotationSystem::new(order);
            PlanarityCertificate::Embedding(PlanarEmbedding::from_rotation(g.clone(), rot))
        }
        None => PlanarityCertificate::Witness(extract_witness(g)),
    }
}

fn canonical_face(face: &[(usize, usize)]) -> Vec<(usize, usize)> {
    let k = (0..face.len())
        .min_by_key(|&i| face[i])
        .expect("faces are non-empty");
    face[k..].iter().chain(face[..k].iter()).copied().collect()
}

/// Re-trace the stored rotation and accept only if the stored faces match,
/// half-edge conservation holds, and Euler's relation gives genus 0.
pub fn verify_embedding(e: &PlanarEmbedding) -> Result<bool> {
    let g = e.graph();
    if !g.is_connected() {
        return Err(Error::Disconnected("verify_embedding"));
    }
    if !e.rotation().consistent_with(g) {
        return Ok(false);
    }
    let traced = trace_faces(e.rotation());
    let mut got: Vec<_> = traced.iter().map(|f| canonical_face(f)).collect();
    let mut stored: Vec<_> = e.faces().iter().map(|f| canonical_face(f)).collect();
    got.sort_unstable();
    stored.sort_unstable();
    if got != stored {
        return Ok(false);
    }
    let half_edges: usize = traced.iter().map(|f| f.len()).sum();
    if half_edges != 2 * g.edge_count() {
        return Ok(false);
    }
    let f = if g.edge_count() == 0 { 1 } else { traced.len() };
    Ok(g.vertex_count() as i64 - g.edge_count() as i64 + f as i64 == 2)
}

/// Genus of the surface a rotation system embeds the graph in:
/// (2 - |V| + |E| - |F|) / 2.
pub fn genus_of_embedding(g: &SimpleGraph, rot: &RotationSystem) -> Result<usize> {
    if !g.is_connected() {
        return Err(Error::Disconnected("genus_of_embedding"));
    }
    if !rot.consistent_with(g) {
        return Err(Error::Precondition(
            "rotation system does not match the graph".into(),
        ));
    }
    let f = if g.edge_count() == 0 {
        1
    } else {
        trace_faces(rot).len()
    };
    let chi = g.vertex_count() as i64 - g.edge_count() as i64 + f as i64;
    assert!(chi <= 2 && (2 - chi) % 2 == 0, "rotation genus must be a nonnegative integer");
    Ok(((2 - chi) / 2) as usize)
}

/// The reflected drawing: every rotation list reversed. Validity, face
/// counts, and genus are all preserved.
pub fn mirror_embedding(e: &PlanarEmbedding) -> PlanarEmbedding {
    let rev: Vec<Vec<usize>> = (0..e.rotation().vertex_count())
        .map(|v| {
            let mut list = e.rotation().cw(v).to_vec();
            list.reverse();
            list
        })
        .collect();
    PlanarEmbedding::from_rotation(e.graph().clone(), RotationSystem::new(rev))
}

/// Faces as vertex cycles, each normalized over starting point and
/// direction, then sorted — a form in which two embeddings of the same
/// graph can be compared for equal face structure.
pub fn face_multiset(e: &PlanarEmbedding) -> Vec<Vec<usize>> {
    let mut all: Vec<Vec<usize>> = e
        .faces()
        .iter()
        .map(|f| canonical_cycle(&f.iter().map(|&(v, _)| v).collect::<Vec<_>>()))
        .collect();
    all.sort();
    all
}

fn canonical_cycle(cycle: &[usize]) -> Vec<usize> {
    let mut best: Option<Vec<usize>> = None;
    for rev in [false, true] {
        let seq: Vec<usize> = if rev {
            cycle.iter().rev().copied().collect()
        } else {
            cycle.to_vec()
        };
        for start in 0..seq.len() {
            let turned: Vec<usize> = seq[start..]
                .iter()
                .chain(seq[..start].iter())
                .copied()
                .collect();
            if best.as_ref().is_none_or(|b| &turned < b) {
                best = Some(turned);
            }
        }
    }
    best.unwrap_or_default()
}

/// Result of exhaustive genus search under a budget.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MinGenus {
    Exact(usize),
    Exceeded,
}

/// Minimum orientable genus by enumerating every rotation system, with the
/// first neighbor pinned at each vertex (cyclic rotations of a vertex's
/// order give the same embedding). The search space is
/// prod_v (deg(v)-1)!; anything over `budget` returns `Exceeded` rather
/// than a wrong number.
pub fn min_genus_bruteforce(g: &SimpleGraph, budget: u64) -> Result<MinGenus> {
    if !g.is_connected() {
        return Err(Error::Disconnected("min_genus_bruteforce"));
    }
    if g.edge_count() == 0 {
        return Ok(MinGenus::Exact(0));
    }
    let adj = g.adjacency();
    let mut total: u128 = 1;
    for a in &adj {
        for f in 1..a.len().max(1) {
            total = total.saturating_mul(f as u128);
        }
        if total > budget as u128 {
            return Ok(MinGenus::Exceeded);
        }
    }
    let mut rot: Vec<Vec<usize>> = adj.clone();
    let mut best_faces = 0usize;
    enumerate_rotations(&adj, &mut rot, 0, &mut best_faces);
    let chi = g.vertex_count() as i64 - g.edge_count() as i64 + best_faces as i64;
    Ok(MinGenus::Exact(((2 - chi) / 2) as usize))
}

fn enumerate_rotations(
    adj: &[Vec<usize>],
    rot: &mut Vec<Vec<usize>>,
    v: usize,
    best_faces: &mut usize,
) {
    if v == adj.len() {
        let faces = trace_faces(&RotationSystem::new(rot.clone())).len();
        *best_faces = (*best_faces).max(faces);
        return;
    }
    let deg = adj[v].len();
    if deg <= 2 {
        rot[v] = adj[v].clone();
        enumerate_rotations(adj, rot, v + 1, best_faces);
        return;
    }
    // first neighbor stays put; permute the tail
    let mut tail: Vec<usize> = adj[v][1..].to_vec();
    permute_tail(adj, rot, v, &mut tail, 0, best_faces);
}

fn permute_tail(
    adj: &[Vec<usize>],
    rot: &mut Vec<Vec<usize>>,
    v: usize,
    tail: &mut Vec<usize>,
    at: usize,
    best_faces: &mut usize,
) {
    if at == tail.len() {
        rot[v] = std::iter::once(adj[v][0]).chain(tail.iter().copied()).collect();
        enumerate_rotations(adj, rot, v + 1, best_faces);
        return;
    }
    for i in at..tail.len() {
        tail.swap(at, i);
        permute_tail(adj, rot, v, tail, at + 1, best_faces);
        tail.swap(at, i);
    }
}

/// Largest edge count a planar graph on `v` vertices allows: 3v-6, or
/// 2v-4 without triangles. Below three vertices the complete graph bound
/// applies.
pub fn euler_bounds(v: usize, triangle_free: bool) -> usize {
    if v < 3 {
        return v * v.saturating_sub(1) / 2;
    }
    if triangle_free {
        2 * v - 4
    } else {
        3 * v - 6
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{direct_product, group_alternating, group_cyclic, right_group, ElementSet};
    use crate::cayley::{cayley_digraph, group_cayley_digraph, underlying_graph};

    fn cube_graph() -> SimpleGraph {
        // vertices = 3-bit strings, edges = single bit flips
        let mut edges = Vec::new();
        for v in 0..8usize {
            for b in [1usize, 2, 4] {
                if v < (v ^ b) {
                    edges.push((v, v ^ b));
                }
            }
        }
        SimpleGraph::new(8, edges)
    }

    #[test]
    fn complete_graph_witnesses() {
        let cert = test_planarity(&SimpleGraph::complete(5));
        let w = cert.witness().expect("K5 is not planar");
        assert_eq!(w.kind, WitnessKind::K5);
        assert!(verify_kuratowski(&SimpleGraph::complete(5), w));

        let g33 = SimpleGraph::complete_bipartite(3, 3);
        let cert = test_planarity(&g33);
        let w = cert.witness().expect("K33 is not planar");
        assert_eq!(w.kind, WitnessKind::K33);
        assert!(verify_kuratowski(&g33, w));

        assert!(test_planarity(&SimpleGraph::complete(4)).is_planar());
    }

    #[test]
    fn alternating_group_embedding() {
        // A4 on a 3-cycle and a double transposition: 12 vertices, 18 edges
        let a4 = group_alternating(4).unwrap();
        let c = ElementSet::new(vec![
            a4.element_by_name("(123)").unwrap(),
            a4.element_by_name("(12)(34)").unwrap(),
        ]);
        let graph = underlying_graph(&group_cayley_digraph(&a4, &c).unwrap());
        assert_eq!(graph.vertex_count(), 12);
        assert_eq!(graph.edge_count(), 18);
        let cert = test_planarity(&graph);
        let emb = cert.embedding().expect("this Cayley graph is planar");
        assert!(verify_embedding(emb).unwrap());
        assert_eq!(emb.face_count(), 8); // truncated tetrahedron
    }

    #[test]
    fn product_with_band_yields_witness() {
        let g = direct_product(&group_cyclic(2).unwrap(), &group_cyclic(4).unwrap()).unwrap();
        let s = right_group(g, 2).unwrap();
        // (1,0) = 4, (0,1) = 1 in product coordinates
        let c = ElementSet::new(vec![s.index(4, 0), s.index(1, 1)]);
        let graph = underlying_graph(&cayley_digraph(&s, &c).unwrap());
        let cert = test_planarity(&graph);
        let w = cert.witness().expect("graph is non-planar");
        assert!(verify_kuratowski(&graph, w));
    }

    #[test]
    fn cube_euler_relation() {
        let cube = cube_graph();
        let cert = test_planarity(&cube);
        let emb = cert.embedding().expect("cube is planar");
        assert_eq!(emb.face_count(), 6); // 8 - 12 + 6 = 2
        assert!(verify_embedding(emb).unwrap());
    }

    #[test]
    fn tampering_is_detected() {
        let cube = cube_graph();
        let emb = match test_planarity(&cube) {
            PlanarityCertificate::Embedding(e) => e,
            PlanarityCertificate::Witness(_) => unreachable!(),
        };
        let mut order: Vec<Vec<usize>> = (0..8).map(|v| emb.rotation().cw(v).to_vec()).collect();
        order[0].swap(0, 1);
        let tampered =
            PlanarEmbedding::from_parts(cube, RotationSystem::new(order), emb.faces().to_vec());
        assert!(!verify_embedding(&tampered).unwrap());
    }

    #[test]
    fn face_trace_conserves_half_edges() {
        for g in [cube_graph(), SimpleGraph::complete(4), SimpleGraph::cycle(7)] {
            let emb = match test_planarity(&g) {
                PlanarityCertificate::Embedding(e) => e,
                PlanarityCertificate::Witness(_) => unreachable!(),
            };
            let total: usize = emb.faces().iter().map(|f| f.len()).sum();
            assert_eq!(total, 2 * g.edge_count());
        }
    }

    #[test]
    fn genus_oracles() {
        let k4 = SimpleGraph::complete(4);
        assert_eq!(min_genus_bruteforce(&k4, 1000).unwrap(), MinGenus::Exact(0));
        // 6^5 = 7776 rotations
        let k5 = SimpleGraph::complete(5);
        assert_eq!(min_genus_bruteforce(&k5, 7776).unwrap(), MinGenus::Exact(1));
        assert_eq!(min_genus_bruteforce(&k5, 7775).unwrap(), MinGenus::Exceeded);
        // 2^6 = 64 rotations
        let k33 = SimpleGraph::complete_bipartite(3, 3);
        assert_eq!(min_genus_bruteforce(&k33, 64).unwrap(), MinGenus::Exact(1));
    }

    #[test]
    fn k4_rotations_span_both_genera() {
        // K4 fits the sphere (4 faces) and the torus (2 faces); its rotation
        // systems realize exactly genus 0 and 1
        let k4 = SimpleGraph::complete(4);
        let adj = k4.adjacency();
        let mut seen = std::collections::BTreeSet::new();
        let perms2 = |a: usize, b: usize| [[a, b], [b, a]];
        for p0 in perms2(adj[0][1], adj[0][2]) {
            for p1 in perms2(adj[1][1], adj[1][2]) {
                for p2 in perms2(adj[2][1], adj[2][2]) {
                    for p3 in perms2(adj[3][1], adj[3][2]) {
                        let rot = RotationSystem::new(vec![
                            vec![adj[0][0], p0[0], p0[1]],
                            vec![adj[1][0], p1[0], p1[1]],
                            vec![adj[2][0], p2[0], p2[1]],
                            vec![adj[3][0], p3[0], p3[1]],
                        ]);
                        seen.insert(genus_of_embedding(&k4, &rot).unwrap());
                    }
                }
            }
        }
        assert_eq!(seen.into_iter().collect::<Vec<_>>(), vec![0, 1]);
    }

    #[test]
    fn subdivided_witness_still_verifies() {
        // split one K33 edge with two fresh vertices
        let mut edges: Vec<(usize, usize)> = SimpleGraph::complete_bipartite(3, 3)
            .edges()
            .to_vec();
        edges.retain(|&e| e != (0, 3));
        edges.push((0, 6));
        edges.push((6, 7));
        edges.push((7, 3));
        let g = SimpleGraph::new(8, edges);
        let cert = test_planarity(&g);
        let w = cert.witness().expect("subdivision stays non-planar");
        assert_eq!(w.kind, WitnessKind::K33);
        assert!(verify_kuratowski(&g, w));
        // a witness naming a non-edge must fail
        let mut bad = w.clone();
        bad.paths[0] = vec![bad.paths[0][0], *bad.paths[0].last().unwrap()];
        let changed = !w
            .paths
            .iter()
            .any(|p| p == &bad.paths[0]);
        if changed {
            assert!(!verify_kuratowski(&g, &bad));
        }
    }

    #[test]
    fn euler_bound_table() {
        assert_eq!(euler_bounds(12, false), 30); // icosahedron meets this
        assert_eq!(euler_bounds(12, true), 20); // 2(3m)-4 with m=4
        assert_eq!(euler_bounds(6, true), 8); // K33 has 9 > 8
        assert_eq!(euler_bounds(2, false), 1);
        assert_eq!(euler_bounds(1, true), 0);
    }

    #[test]
    fn disconnected_inputs() {
        // two triangles, no shared vertex
        let g = SimpleGraph::new(6, [(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5)]);
        assert!(test_planarity(&g).is_planar());
        assert!(genus_of_embedding(&g, &RotationSystem::new(g.adjacency())).is_err());
        assert!(min_genus_bruteforce(&g, 1000).is_err());
        // K5 plus an isolated triangle is still non-planar
        let mut edges: Vec<(usize, usize)> = SimpleGraph::complete(5).edges().to_vec();
        edges.extend([(5, 6), (6, 7), (5, 7)]);
        let h = SimpleGraph::new(8, edges);
        let cert = test_planarity(&h);
        assert!(verify_kuratowski(&h, cert.witness().unwrap()));
    }
}
