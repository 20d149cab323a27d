//! Directed Cayley graphs of right groups and their underlying simple graphs,
//! plus the counting bounds and the generating-set enumerator the exhaustive
//! searches are built on.

use serde::{Deserialize, Serialize};

use num_rational::Rational64;

use crate::algebra::{projections, ElementSet, GroupTable, RightGroupTable};
use crate::{Error, Result};

// ---------------------------------------------------------------------------
// Graph types

/// One labeled arc (s, s·c); `label` indexes into the connection set.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Arc {
    pub src: usize,
    pub dst: usize,
    pub label: usize,
}

/// Right Cayley digraph Cay(S,C): exactly one arc per (vertex, connection
/// element), loops included.
#[derive(Clone, Debug, Serialize)]
pub struct CayleyDigraph {
    pub vertex_count: usize,
    pub arcs: Vec<Arc>,
    pub connection: ElementSet,
    pub vertex_names: Vec<String>,
}

/// Undirected loop-free graph with canonically sorted edge list (u < v).
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SimpleGraph {
    vertex_count: usize,
    edges: Vec<(usize, usize)>,
}

impl std::fmt::Debug for SimpleGraph {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "SimpleGraph(n={}, m={})",
            self.vertex_count,
            self.edges.len()
        )
    }
}

impl SimpleGraph {
    /// Normalizes the edge list: loops dropped, duplicates merged, pairs
    /// oriented u < v, sorted.
    pub fn new(vertex_count: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> SimpleGraph {
        let mut es: Vec<(usize, usize)> = edges
            .into_iter()
            .filter(|&(u, v)| u != v)
            .map(|(u, v)| if u < v { (u, v) } else { (v, u) })
            .collect();
        es.sort_unstable();
        es.dedup();
        assert!(
            es.last().map_or(true, |&(_, v)| v < vertex_count),
            "edge endpoint out of range"
        );
        SimpleGraph {
            vertex_count,
            edges: es,
        }
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        if u == v {
            return false;
        }
        let e = if u < v { (u, v) } else { (v, u) };
        self.edges.binary_search(&e).is_ok()
    }

    /// Sorted neighbor lists.
    pub fn adjacency(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.vertex_count];
        for &(u, v) in &self.edges {
            adj[u].push(v);
            adj[v].push(u);
        }
        for row in &mut adj {
            row.sort_unstable();
        }
        adj
    }

    pub fn degrees(&self) -> Vec<usize> {
        let mut deg = vec![0usize; self.vertex_count];
        for &(u, v) in &self.edges {
            deg[u] += 1;
            deg[v] += 1;
        }
        deg
    }

    /// Connected components as sorted vertex lists (isolated vertices count).
    pub fn components(&self) -> Vec<Vec<usize>> {
        let adj = self.adjacency();
        let mut comp = vec![usize::MAX; self.vertex_count];
        let mut out: Vec<Vec<usize>> = Vec::new();
        for start in 0..self.vertex_count {
            if comp[start] != usize::MAX {
                continue;
            }
            let id = out.len();
            comp[start] = id;
            let mut queue = vec![start];
            let mut members = vec![start];
            while let Some(x) = queue.pop() {
                for &y in &adj[x] {
                    if comp[y] == usize::MAX {
                        comp[y] = id;
                        queue.push(y);
                        members.push(y);
                    }
                }
            }
            members.sort_unstable();
            out.push(members);
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.vertex_count <= 1 || self.components().len() == 1
    }

    /// Connected and no deletion of two vertices disconnects what remains.
    /// Requires at least four vertices. Quadratic sweep; meant for the
    /// desk-scale graphs this crate works with.
    pub fn is_three_connected(&self) -> bool {
        let n = self.vertex_count;
        if n < 4 || !self.is_connected() {
            return false;
        }
        let adj = self.adjacency();
        let mut seen = vec![false; n];
        for u in 0..n {
            for v in u + 1..n {
                seen.fill(false);
                seen[u] = true;
                seen[v] = true;
                let start = (0..n).find(|&x| !seen[x]).expect("n >= 4");
                seen[start] = true;
                let mut queue = vec![start];
                let mut reached = 1;
                while let Some(x) = queue.pop() {
                    for &y in &adj[x] {
                        if !seen[y] {
                            seen[y] = true;
                            reached += 1;
                            queue.push(y);
                        }
                    }
                }
                if reached != n - 2 {
                    return false;
                }
            }
        }
        true
    }

    pub fn complete(n: usize) -> SimpleGraph {
        let mut edges = Vec::new();
        for u in 0..n {
            for v in u + 1..n {
                edges.push((u, v));
            }
        }
        SimpleGraph::new(n, edges)
    }

    pub fn complete_bipartite(a: usize, b: usize) -> SimpleGraph {
        let mut edges = Vec::new();
        for u in 0..a {
            for v in 0..b {
                edges.push((u, a + v));
            }
        }
        SimpleGraph::new(a + b, edges)
    }

    pub fn cycle(n: usize) -> SimpleGraph {
        assert!(n >= 3);
        SimpleGraph::new(n, (0..n).map(|i| (i, (i + 1) % n)))
    }
}

// ---------------------------------------------------------------------------
// Cayley graph construction

/// Cay(S,C) for a right group: arcs (s, s·c) for every s and every c ∈ C.
pub fn cayley_digraph(s: &RightGroupTable, c: &ElementSet) -> Result<CayleyDigraph> {
    if c.is_empty() {
        return Err(Error::Empty("connection set"));
    }
    let mut arcs = Vec::with_capacity(s.size() * c.len());
    for v in s.elements() {
        for (label, conn) in c.iter().enumerate() {
            arcs.push(Arc {
                src: v,
                dst: s.mul(v, conn),
                label,
            });
        }
    }
    Ok(CayleyDigraph {
        vertex_count: s.size(),
        arcs,
        connection: c.clone(),
        vertex_names: s.elements().map(|v| s.name(v)).collect(),
    })
}

/// Cay(G,C) for a plain group (the k = 1 view, without band decoration).
pub fn group_cayley_digraph(g: &GroupTable, c: &ElementSet) -> Result<CayleyDigraph> {
    if c.is_empty() {
        return Err(Error::Empty("connection set"));
    }
    let mut arcs = Vec::with_capacity(g.order() * c.len());
    for v in g.elements() {
        for (label, conn) in c.iter().enumerate() {
            arcs.push(Arc {
                src: v,
                dst: g.mul(v, conn),
                label,
            });
        }
    }
    Ok(CayleyDigraph {
        vertex_count: g.order(),
        arcs,
        connection: c.clone(),
        vertex_names: g.names().to_vec(),
    })
}

/// Drop directions, multiplicities and loops.
pub fn underlying_graph(digraph: &CayleyDigraph) -> SimpleGraph {
    SimpleGraph::new(
        digraph.vertex_count,
        digraph.arcs.iter().map(|a| (a.src, a.dst)),
    )
}

/// Two-sweep reachability: out-BFS and in-BFS from vertex 0.
pub fn is_strongly_connected(digraph: &CayleyDigraph) -> bool {
    let n = digraph.vertex_count;
    if n <= 1 {
        return true;
    }
    let mut fwd = vec![Vec::new(); n];
    let mut bwd = vec![Vec::new(); n];
    for a in &digraph.arcs {
        fwd[a.src].push(a.dst);
        bwd[a.dst].push(a.src);
    }
    let reach = |adj: &Vec<Vec<usize>>| {
        let mut seen = vec![false; n];
        seen[0] = true;
        let mut queue = vec![0usize];
        let mut count = 1;
        while let Some(x) = queue.pop() {
            for &y in &adj[x] {
                if !seen[y] {
                    seen[y] = true;
                    count += 1;
                    queue.push(y);
                }
            }
        }
        count == n
    };
    reach(&fwd) && reach(&bwd)
}

/// k disjoint copies: the right Cayley graph of the left group L_k × G over
/// the connection set L_k × C. Vertex (ℓ, g) has index ℓ·|G| + g.
pub fn left_group_cayley(k: usize, g: &GroupTable, c: &ElementSet) -> Result<CayleyDigraph> {
    if c.is_empty() {
        return Err(Error::Empty("connection set"));
    }
    if k == 0 {
        return Err(Error::BadSpec("band size 0".into()));
    }
    let m = g.order();
    // connection = L_k × C, ordered band-major to match its set indices
    let mut arcs = Vec::with_capacity(k * m * k * c.len());
    for band in 0..k {
        for v in 0..m {
            let src = band * m + v;
            for (ci, conn) in c.iter().enumerate() {
                for lab_band in 0..k {
                    // (ℓ,g)·(ℓ',c) = (ℓ, gc): the left coordinate never moves
                    arcs.push(Arc {
                        src,
                        dst: band * m + g.mul(v, conn),
                        label: lab_band * c.len() + ci,
                    });
                }
            }
        }
    }
    let mut names = Vec::with_capacity(k * m);
    for band in 0..k {
        for v in 0..m {
            names.push(format!("(l{},{})", band + 1, g.name(v)));
        }
    }
    Ok(CayleyDigraph {
        vertex_count: k * m,
        arcs,
        connection: (0..k * c.len()).collect(),
        vertex_names: names,
    })
}

/// Any 3-clique? Sorted-neighbor-list intersection per edge.
pub fn has_triangle(graph: &SimpleGraph) -> bool {
    let adj = graph.adjacency();
    for &(u, v) in graph.edges() {
        let (a, b) = (&adj[u], &adj[v]);
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].cmp(&b[j]) {
                std::cmp::Ordering::Less => i += 1,
                std::cmp::Ordering::Greater => j += 1,
                std::cmp::Ordering::Equal => return true,
            }
        }
    }
    false
}

// ---------------------------------------------------------------------------
// Counting

/// The printed closed form for |E(underlying Cay(G×R_k, C))|:
///   m · ( Σ_{a ∈ π_G(C)} (c_a·k − c_{a⁻¹}/2) − c_e/2 ).
/// Exact when every c_a ≤ 1; can overshoot otherwise (see the tests), so the
/// search never prunes with it.
pub fn edge_count_formula(g: &GroupTable, k: usize, multiplicities: &[usize]) -> Rational64 {
    let m = g.order() as i64;
    let mut sum = Rational64::new(0, 1);
    for a in g.elements() {
        if multiplicities[a] == 0 {
            continue;
        }
        let c_a = multiplicities[a] as i64;
        let c_ainv = multiplicities[g.inv(a)] as i64;
        sum += Rational64::new(c_a * k as i64, 1) - Rational64::new(c_ainv, 2);
    }
    sum -= Rational64::new(multiplicities[g.identity()] as i64, 2);
    sum * Rational64::new(m, 1)
}

/// Sound lower bound on the exact underlying edge count:
///   (m/2) · ( k·Σ_{a≠e} c_a + (k−1)·c_e ).
/// Every connection element emits |S| = mk arcs; loops arise only for a = e
/// (k per copy of e, one per vertex column), and each undirected edge absorbs
/// at most two arcs.
pub fn safe_edge_lower_bound(g: &GroupTable, k: usize, multiplicities: &[usize]) -> Rational64 {
    let m = g.order() as i64;
    let e = g.identity();
    let mut non_id = 0i64;
    for a in g.elements() {
        if a != e {
            non_id += multiplicities[a] as i64;
        }
    }
    let c_e = multiplicities[e] as i64;
    Rational64::new(m, 2) * Rational64::new(k as i64 * non_id + (k as i64 - 1) * c_e, 1)
}

// ---------------------------------------------------------------------------
// Generating-set enumeration

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EnumMode {
    All,
    Minimal,
}

/// Output of `enumerate_generating_sets`; `truncated_below_k` flags the
/// degenerate call with max_size < k (no generating set can exist there).
#[derive(Clone, Debug)]
pub struct GeneratingSets {
    pub sets: Vec<ElementSet>,
    pub truncated_below_k: bool,
}

/// Does C generate S = G×R_k? Uses the projection criterion (all k bands hit
/// and π_G(C) generates G), which matches semigroup closure by the
/// strong-connectivity lemma — the equivalence is itself under test.
pub fn generates_by_projection(s: &RightGroupTable, c: &ElementSet) -> bool {
    if c.is_empty() {
        return false;
    }
    let p = projections(s, c);
    p.band_part.len() == s.k() && s.group().generates(p.group_part.members())
}

/// All (or all minimal) generating sets of S with |C| ≤ max_size, in
/// (size, lexicographic) order. With `prune` on, only the canonical
/// representative under band relabeling is kept.
pub fn enumerate_generating_sets(
    s: &RightGroupTable,
    max_size: usize,
    mode: EnumMode,
    prune: bool,
) -> GeneratingSets {
    let mut out = GeneratingSets {
        sets: Vec::new(),
        truncated_below_k: max_size < s.k(),
    };
    if out.truncated_below_k {
        return out;
    }
    let n = s.size();
    let mut members = Vec::new();
    for size in s.k()..=max_size.min(n) {
        combinations(n, size, &mut members, &mut |chosen| {
            let c = ElementSet::new(chosen.to_vec());
            if !generates_by_projection(s, &c) {
                return;
            }
            if mode == EnumMode::Minimal && !is_minimal_generating(s, &c) {
                return;
            }
            if prune && band_canonical(s, &c) != c {
                return;
            }
            out.sets.push(c);
        });
    }
    out
}

/// C generates and no single-element removal still generates.
pub fn is_minimal_generating(s: &RightGroupTable, c: &ElementSet) -> bool {
    if !generates_by_projection(s, c) {
        return false;
    }
    let members = c.members();
    for drop in 0..members.len() {
        let smaller: ElementSet = members
            .iter()
            .enumerate()
            .filter(|&(i, _)| i != drop)
            .map(|(_, &x)| x)
            .collect();
        if generates_by_projection(s, &smaller) {
            return false;
        }
    }
    true
}

/// Minimum relabeling of C over all permutations of the band coordinates —
/// band relabeling is a semigroup automorphism of G×R_k, so orbits share all
/// graph-theoretic properties. Sorting the band columns by their group
/// content realizes the minimum directly: an adjacent-label swap only
/// reorders the entries of the two columns' symmetric difference, so the
/// column whose first unshared group element is smaller must take the
/// smaller label, and a column must outrank any strict prefix of itself.
pub fn band_canonical(s: &RightGroupTable, c: &ElementSet) -> ElementSet {
    let k = s.k();
    let mut columns: Vec<Vec<usize>> = vec![Vec::new(); k];
    for x in c.iter() {
        columns[s.band_part(x)].push(s.group_part(x)); // ascending: members are sorted
    }
    columns.sort_by(|a, b| {
        for (x, y) in a.iter().zip(b.iter()) {
            if x != y {
                return x.cmp(y);
            }
        }
        b.len().cmp(&a.len())
    });
    let mut members = Vec::with_capacity(c.len());
    for (label, column) in columns.iter().enumerate() {
        members.extend(column.iter().map(|&g| s.index(g, label)));
    }
    ElementSet::new(members)
}

/// Lexicographic size-`size` combinations of 0..n.
fn combinations(n: usize, size: usize, scratch: &mut Vec<usize>, visit: &mut impl FnMut(&[usize])) {
    fn rec(
        n: usize,
        size: usize,
        start: usize,
        scratch: &mut Vec<usize>,
        visit: &mut impl FnMut(&[usize]),
    ) {
        if scratch.len() == size {
            visit(scratch);
            return;
        }
        let remaining = size - scratch.len();
        for x in start..=n.saturating_sub(remaining) {
            scratch.push(x);
            rec(n, size, x + 1, scratch, visit);
            scratch.pop();
        }
    }
    scratch.clear();
    rec(n, size, 0, scratch, visit);
}
