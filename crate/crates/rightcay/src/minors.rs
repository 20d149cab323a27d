//! Minor machinery: replayable deletion/contraction traces, the group-action
//! contraction that collapses a vertex-transitive graph onto a Cayley graph
//! of the acting group, the band-collapsing factor construction, Coxeter
//! diagnosis, and a generic small-scale minor search.

use std::collections::{BTreeMap, BTreeSet, HashMap, VecDeque};

use serde::{Deserialize, Serialize};

use crate::algebra::{ElementSet, GroupTable, RightGroupTable};
use crate::cayley::{cayley_digraph, group_cayley_digraph, is_strongly_connected, underlying_graph, SimpleGraph};
use crate::{Error, Result};

/// Vertex count past which the generic iso backtracking refuses to run.
pub const ISO_GRAPH_CAP: usize = 256;
/// Host size cap for the generic minor search.
pub const MINOR_HOST_CAP: usize = 24;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "op", rename_all = "snake_case")]
pub enum Step {
    Delete { u: usize, v: usize },
    Contract { u: usize, v: usize },
}

/// A replayable witness that `result` is a minor of `host`: an ordered step
/// list plus the vertex merge map the contractions induce.
#[derive(Clone, Debug, Serialize)]
pub struct MinorTrace {
    host: SimpleGraph,
    steps: Vec<Step>,
    result: SimpleGraph,
    merge_map: Vec<usize>,
}

impl MinorTrace {
    pub fn host(&self) -> &SimpleGraph {
        &self.host
    }

    pub fn steps(&self) -> &[Step] {
        &self.steps
    }

    pub fn result(&self) -> &SimpleGraph {
        &self.result
    }

    /// Host vertex -> result vertex.
    pub fn merge_map(&self) -> &[usize] {
        &self.merge_map
    }
}

struct UnionFind {
    parent: Vec<usize>,
    size: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> UnionFind {
        UnionFind {
            parent: (0..n).collect(),
            size: vec![1; n],
        }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) {
        let (mut a, mut b) = (self.find(a), self.find(b));
        if a == b {
            return;
        }
        if self.size[a] < self.size[b] {
            std::mem::swap(&mut a, &mut b);
        }
        self.parent[b] = a;
        self.size[a] += self.size[b];
    }
}

/// Replay `steps` on `host`. Steps name edges by any pair of original host
/// vertices whose current merge classes are joined by a live edge; a step
/// that points at a missing or collapsed edge fails with `DeadEdge`.
pub fn apply_trace(host: &SimpleGraph, steps: &[Step]) -> Result<MinorTrace> {
    let n = host.vertex_count();
    let mut uf = UnionFind::new(n);
    let mut alive = vec![true; host.edge_count()];
    for (i, step) in steps.iter().enumerate() {
        let (u, v, deleting) = match *step {
            Step::Delete { u, v } => (u, v, true),
            Step::Contract { u, v } => (u, v, false),
        };
        if u >= n || v >= n {
            return Err(Error::DeadEdge { step: i, u, v });
        }
        let (a, b) = (uf.find(u), uf.find(v));
        let mut hit = false;
        if a != b {
            for (e, &(x, y)) in host.edges().iter().enumerate() {
                if !alive[e] {
                    continue;
                }
                let (fx, fy) = (uf.find(x), uf.find(y));
                if (fx, fy) == (a, b) || (fx, fy) == (b, a) {
                    alive[e] = false;
                    hit = true;
                }
            }
        }
        if !hit {
            return Err(Error::DeadEdge { step: i, u, v });
        }
        if !deleting {
            uf.union(a, b);
        }
    }
    // renumber surviving classes
    let mut class_ids = BTreeMap::new();
    for v in 0..n {
        let r = uf.find(v);
        let next = class_ids.len();
        class_ids.entry(r).or_insert(next);
    }
    let merge_map: Vec<usize> = (0..n).map(|v| class_ids[&uf.find(v)]).collect();
    let edges: Vec<(usize, usize)> = host
        .edges()
        .iter()
        .enumerate()
        .filter(|&(e, _)| alive[e])
        .map(|(_, &(x, y))| (merge_map[x], merge_map[y]))
        .filter(|&(x, y)| x != y)
        .collect();
    let result = SimpleGraph::new(class_ids.len(), edges);
    Ok(MinorTrace {
        host: host.clone(),
        steps: steps.to_vec(),
        result,
        merge_map,
    })
}

/// Replays the trace from scratch and compares everything it claims.
pub fn verify_trace(t: &MinorTrace) -> bool {
    match apply_trace(&t.host, &t.steps) {
        Ok(fresh) => fresh.result == t.result && fresh.merge_map == t.merge_map,
        Err(_) => false,
    }
}

/// Contract a strongly connected right-group Cayley graph along the
/// translates of a lifted quotient spanning tree, leaving a Cayley graph of
/// the group factor. Returns the trace and the induced generating set.
///
/// The left G-action g.(h, r_i) = (gh, r_i) is free with orbits G x {r_i};
/// the quotient has one vertex per band. A spanning tree of the quotient is
/// lifted to a tree F meeting every orbit once, and E = {g.F : g in G} is
/// contracted. Each block g.F collapses to one vertex, blocks inherit the
/// left multiplication, and the block adjacency is the Cayley graph of G
/// with respect to C' = { u_i f u_j^{-1} } over connections (f, r_j) and
/// bands i, where u_i is the group part of the lifted representative.
pub fn babai_contract(s: &RightGroupTable, c: &ElementSet) -> Result<(MinorTrace, ElementSet)> {
    let digraph = cayley_digraph(s, c)?;
    if !is_strongly_connected(&digraph) {
        return Err(Error::Precondition(
            "babai_contract needs a strongly connected Cayley graph".into(),
        ));
    }
    let host = underlying_graph(&digraph);
    let g = s.group();
    let k = s.k();
    // BFS the band quotient from the band of the identity's orbit, lifting
    // each tree edge to the smallest-index target vertex
    let mut rep: Vec<Option<usize>> = vec![None; k]; // band -> lifted vertex
    rep[0] = Some(s.index(g.identity(), 0));
    let mut tree_lifts: Vec<(usize, usize)> = Vec::new();
    let mut queue = VecDeque::from([0usize]);
    while let Some(band) = queue.pop_front() {
        let from = rep[band].expect("visited bands have representatives");
        let mut best: Vec<Option<usize>> = vec![None; k];
        for x in c.iter() {
            let j = s.band_part(x);
            if rep[j].is_some() {
                continue;
            }
            let target = s.mul(from, x);
            if best[j].map_or(true, |t| target < t) {
                best[j] = Some(target);
            }
        }
        for (j, target) in best.into_iter().enumerate() {
            if let Some(t) = target {
                rep[j] = Some(t);
                tree_lifts.push((from, t));
                queue.push_back(j);
            }
        }
    }
    // strong connectivity forces every band into the connection set
    let reps: Vec<usize> = rep
        .into_iter()
        .map(|r| r.expect("every band is reachable"))
        .collect();
    let u: Vec<usize> = reps.iter().map(|&v| s.group_part(v)).collect();
    let mut steps = Vec::new();
    for a in g.elements() {
        for &(x, y) in &tree_lifts {
            let gx = s.index(g.mul(a, s.group_part(x)), s.band_part(x));
            let gy = s.index(g.mul(a, s.group_part(y)), s.band_part(y));
            steps.push(Step::Contract { u: gx, v: gy });
        }
    }
    let trace = apply_trace(&host, &steps)?;
    // block adjacency, read off as group elements
    let mut cprime = BTreeSet::new();
    for x in c.iter() {
        let f = s.group_part(x);
        let j = s.band_part(x);
        for i in 0..k {
            let e = g.mul(g.mul(u[i], f), g.inv(u[j]));
            if e != g.identity() {
                cprime.insert(e);
            }
        }
    }
    let cprime = ElementSet::new(cprime.into_iter().collect());
    let expected = expected_group_graph(g, &cprime)?;
    assert!(
        graph_isomorphic(trace.result(), &expected)?,
        "contracted graph must match the Cayley graph of the group factor"
    );
    Ok((trace, cprime))
}

/// All-identity connection sets collapse to the edgeless graph on G.
fn expected_group_graph(g: &GroupTable, c: &ElementSet) -> Result<SimpleGraph> {
    if c.is_empty() {
        return Ok(SimpleGraph::new(g.order(), []));
    }
    Ok(underlying_graph(&group_cayley_digraph(g, c)?))
}

/// The two conjugation alternatives that license `factor_minor` for a
/// candidate (g, r_j): g normalizes-up-to-inverse either every connection
/// element sharing its band, or every connection element living in another
/// band (so a group part listed in band j *and* elsewhere must be tame under
/// the second reading too — its off-band copies survive the collapse as
/// conjugates). With k = 1 the second alternative is vacuous and the collapse
/// is the empty script.
pub fn check_factor_precondition(s: &RightGroupTable, c: &ElementSet, candidate: usize) -> bool {
    assert!(c.contains(candidate), "candidate must come from the connection set");
    let g = s.group();
    let cand_g = s.group_part(candidate);
    let j = s.band_part(candidate);
    let band_j: BTreeSet<usize> = c
        .iter()
        .filter(|&x| s.band_part(x) == j)
        .map(|x| s.group_part(x))
        .collect();
    let outside: BTreeSet<usize> = c
        .iter()
        .filter(|&x| s.band_part(x) != j)
        .map(|x| s.group_part(x))
        .collect();
    let tame = |h: usize| {
        let conj = g.mul(g.mul(g.inv(cand_g), h), cand_g);
        conj == h || conj == g.inv(h)
    };
    band_j.iter().all(|&h| tame(h)) || outside.iter().all(|&h| tame(h))
}

/// Collapse the band structure onto the candidate's band: delete every
/// cross-band edge not labeled by the candidate's group part (plus the
/// candidate-labeled ones that leave band r_j), contract the candidate's
/// cross-band edges into band r_j. Under `check_factor_precondition` the
/// result is the Cayley graph of the group factor on the projected
/// connection set, which is verified before returning.
pub fn factor_minor(s: &RightGroupTable, c: &ElementSet, candidate: usize) -> Result<MinorTrace> {
    if !check_factor_precondition(s, c, candidate) {
        return Err(Error::Precondition(
            "factor_minor candidate fails both conjugation alternatives".into(),
        ));
    }
    let g = s.group();
    let k = s.k();
    let cand_g = s.group_part(candidate);
    let j = s.band_part(candidate);
    let digraph = cayley_digraph(s, c)?;
    let host = underlying_graph(&digraph);
    let mut contract: BTreeSet<(usize, usize)> = BTreeSet::new();
    let mut delete: BTreeSet<(usize, usize)> = BTreeSet::new();
    for a in g.elements() {
        for i in 0..k {
            let src = s.index(a, i);
            for x in c.iter() {
                let (f, l) = (s.group_part(x), s.band_part(x));
                if i == l {
                    continue; // stays inside its band
                }
                let dst = s.mul(src, x);
                let key = (src.min(dst), src.max(dst));
                if f == cand_g && l == j {
                    contract.insert(key);
                } else if f != cand_g || i == j {
                    // off-label cross edges go, as do candidate-labeled hops
                    // out of band j (they would contract into g^2-chords)
                    delete.insert(key);
                }
                // f == cand_g, source off band j: collapses onto a
                // candidate edge on its own
            }
        }
    }
    let mut steps: Vec<Step> = Vec::new();
    for &(u, v) in delete.difference(&contract) {
        steps.push(Step::Delete { u, v });
    }
    for &(u, v) in &contract {
        steps.push(Step::Contract { u, v });
    }
    let trace = apply_trace(&host, &steps)?;
    let projected = ElementSet::new(
        c.iter()
            .map(|x| s.group_part(x))
            .filter(|&h| h != g.identity())
            .collect(),
    );
    let expected = expected_group_graph(g, &projected)?;
    assert!(
        graph_isomorphic(trace.result(), &expected)?,
        "band collapse must reproduce the projected Cayley graph"
    );
    Ok(trace)
}

/// What `coxeter_diagnose` found: generator orders, the diagram, its shape.
#[derive(Clone, Debug, Serialize)]
pub struct CoxeterDiagnosis {
    pub is_coxeter: bool,
    /// Generator index pairs whose product has order >= 3.
    pub dynkin_edges: Vec<(usize, usize)>,
    pub is_tree: bool,
    pub is_forest: bool,
}

/// All-involution check plus the diagram on pairwise product orders.
/// Finite systems of this kind always have forest diagrams; connected
/// (irreducible) ones have trees.
pub fn coxeter_diagnose(g: &GroupTable, gens: &ElementSet) -> CoxeterDiagnosis {
    let list: Vec<usize> = gens.iter().collect();
    let is_coxeter = !list.is_empty() && list.iter().all(|&c| g.element_order(c) == 2);
    let mut dynkin_edges = Vec::new();
    if is_coxeter {
        for i in 0..list.len() {
            for j in i + 1..list.len() {
                if g.element_order(g.mul(list[i], list[j])) >= 3 {
                    dynkin_edges.push((i, j));
                }
            }
        }
    }
    let m = list.len();
    let diagram = SimpleGraph::new(m.max(1), dynkin_edges.iter().copied());
    let acyclic = dynkin_edges.len() + diagram.components().len() == m.max(1);
    let is_forest = is_coxeter && acyclic;
    let is_tree = is_forest && diagram.is_connected() && m > 0;
    CoxeterDiagnosis {
        is_coxeter,
        dynkin_edges,
        is_tree,
        is_forest,
    }
}

/// Outcome of the budgeted minor search.
#[derive(Debug)]
pub enum MinorSearch {
    Found(MinorTrace),
    Absent,
    Exceeded,
}

/// Exhaustive branch-set search for `pattern` as a minor of `host`, both
/// connected. Pattern vertices are processed by decreasing degree; branch
/// sets are grown vertex-by-vertex with adjacency constraints checked
/// against already-placed neighbors. `budget` caps search-tree nodes;
/// running out yields `Exceeded`, never a wrong answer.
pub fn minor_contains(host: &SimpleGraph, pattern: &SimpleGraph, budget: u64) -> Result<MinorSearch> {
    if host.vertex_count() > MINOR_HOST_CAP {
        return Err(Error::CapExceeded {
            what: "minor search host size",
            limit: MINOR_HOST_CAP as u64,
        });
    }
    if pattern.vertex_count() > host.vertex_count() || pattern.vertex_count() == 0 {
        return Err(Error::Precondition(
            "pattern must be nonempty and at most host-sized".into(),
        ));
    }
    if !host.is_connected() || !pattern.is_connected() {
        return Err(Error::Precondition(
            "minor search expects connected host and pattern".into(),
        ));
    }
    let t = pattern.vertex_count();
    let pat_deg = pattern.degrees();
    let mut order: Vec<usize> = (0..t).collect();
    order.sort_by_key(|&p| std::cmp::Reverse(pat_deg[p]));
    let slot_of: HashMap<usize, usize> = order.iter().enumerate().map(|(d, &p)| (p, d)).collect();
    // earlier-placed pattern neighbors per search slot
    let needs: Vec<Vec<usize>> = order
        .iter()
        .map(|&p| {
            pattern
                .adjacency()[p]
                .iter()
                .map(|&q| slot_of[&q])
                .filter(|&dq| dq < slot_of[&p])
                .collect()
        })
        .collect();
    let host_adj = host.adjacency();
    let mut host_order: Vec<usize> = (0..host.vertex_count()).collect();
    host_order.sort_by_key(|&v| std::cmp::Reverse(host_adj[v].len()));
    let mut st = BranchSearch {
        host_adj: &host_adj,
        needs: &needs,
        host_order: &host_order,
        slot: vec![usize::MAX; host.vertex_count()],
        sets: vec![Vec::new(); t],
        budget,
    };
    match st.place(0) {
        Placement::Found => {
            let trace = trace_from_sets(host, pattern, &order, &st.sets)?;
            Ok(MinorSearch::Found(trace))
        }
        Placement::Absent => Ok(MinorSearch::Absent),
        Placement::Exceeded => Ok(MinorSearch::Exceeded),
    }
}

enum Placement {
    Found,
    Absent,
    Exceeded,
}

struct BranchSearch<'a> {
    host_adj: &'a [Vec<usize>],
    needs: &'a [Vec<usize>],
    host_order: &'a [usize],
    slot: Vec<usize>, // host vertex -> search slot, usize::MAX = free
    sets: Vec<Vec<usize>>,
    budget: u64,
}

impl BranchSearch<'_> {
    fn place(&mut self, depth: usize) -> Placement {
        if depth == self.sets.len() {
            return Placement::Found;
        }
        let free_needed = self.sets.len() - depth;
        let free: usize = self.slot.iter().filter(|&&s| s == usize::MAX).count();
        if free < free_needed {
            return Placement::Absent;
        }
        // roots tried earlier are banned from later enumerations at this
        // depth; sets containing them were already covered
        let mut banned = Vec::new();
        for ri in 0..self.host_order.len() {
            let root = self.host_order[ri];
            if self.slot[root] != usize::MAX {
                continue;
            }
            self.slot[root] = depth;
            self.sets[depth].push(root);
            match self.grow(depth, free - free_needed, &banned) {
                Placement::Absent => {}
                // leave the winning assignment in place for trace building
                other => return other,
            }
            self.slot[root] = usize::MAX;
            self.sets[depth].clear();
            banned.push(root);
        }
        Placement::Absent
    }

    /// Current set for `depth` is in self.sets[depth]; try it as-is, then
    /// try every connected extension. `slack` = free vertices we may still
    /// consume beyond one per remaining pattern vertex.
    fn grow(&mut self, depth: usize, slack: usize, banned: &[usize]) -> Placement {
        if self.budget == 0 {
            return Placement::Exceeded;
        }
        self.budget -= 1;
        if self.satisfied(depth) {
            match self.place(depth + 1) {
                Placement::Absent => {}
                other => return other,
            }
        }
        if slack == 0 {
            return Placement::Absent;
        }
        // extensions: free neighbors of the current set
        let mut frontier = Vec::new();
        for &v in &self.sets[depth] {
            for &w in &self.host_adj[v] {
                if self.slot[w] == usize::MAX
                    && !banned.contains(&w)
                    && !frontier.contains(&w)
                {
                    frontier.push(w);
                }
            }
        }
        let mut local_ban = banned.to_vec();
        for w in frontier {
            if local_ban.contains(&w) {
                continue;
            }
            self.slot[w] = depth;
            self.sets[depth].push(w);
            match self.grow(depth, slack - 1, &local_ban) {
                Placement::Absent => {}
                other => return other,
            }
            self.slot[w] = usize::MAX;
            self.sets[depth].pop();
            local_ban.push(w);
        }
        Placement::Absent
    }

    /// Does the current set touch every earlier-placed pattern neighbor?
    fn satisfied(&self, depth: usize) -> bool {
        self.needs[depth].iter().all(|&q| {
            self.sets[depth]
                .iter()
                .any(|&v| self.host_adj[v].iter().any(|&w| self.slot[w] == q))
        })
    }
}

/// Turn disjoint connected branch sets into a replayable trace: absorb
/// leftover vertices into adjacent sets, contract each part to a point,
/// delete surplus adjacencies.
fn trace_from_sets(
    host: &SimpleGraph,
    pattern: &SimpleGraph,
    order: &[usize],
    sets: &[Vec<usize>],
) -> Result<MinorTrace> {
    let n = host.vertex_count();
    let t = sets.len();
    // part[v] = pattern vertex whose branch set absorbs v
    let mut part: Vec<Option<usize>> = vec![None; n];
    for (depth, set) in sets.iter().enumerate() {
        for &v in set {
            part[v] = Some(order[depth]);
        }
    }
    let adj = host.adjacency();
    loop {
        let mut changed = false;
        for v in 0..n {
            if part[v].is_some() {
                continue;
            }
            if let Some(p) = adj[v].iter().find_map(|&w| part[w]) {
                part[v] = Some(p);
                changed = true;
            }
        }
        if part.iter().all(|p| p.is_some()) {
            break;
        }
        assert!(changed, "connected host leaves no unreachable vertices");
    }
    let part: Vec<usize> = part.into_iter().map(|p| p.expect("total")).collect();
    let mut steps = Vec::new();
    // spanning tree of each part, BFS from its smallest vertex
    for p in 0..t {
        let members: Vec<usize> = (0..n).filter(|&v| part[v] == p).collect();
        let mut seen: BTreeSet<usize> = BTreeSet::new();
        let start = *members.first().expect("every pattern vertex got a set");
        seen.insert(start);
        let mut queue = VecDeque::from([start]);
        while let Some(v) = queue.pop_front() {
            for &w in &adj[v] {
                if part[w] == p && seen.insert(w) {
                    steps.push(Step::Contract { u: v, v: w });
                    queue.push_back(w);
                }
            }
        }
        assert_eq!(seen.len(), members.len(), "branch sets stay connected");
    }
    // one delete per adjacent part pair the pattern lacks
    let mut bad_pairs = BTreeSet::new();
    for &(x, y) in host.edges() {
        let (a, b) = (part[x].min(part[y]), part[x].max(part[y]));
        if a != b && !pattern.has_edge(a, b) && bad_pairs.insert((a, b)) {
            steps.push(Step::Delete { u: x, v: y });
        }
    }
    let trace = apply_trace(host, &steps)?;
    debug_assert!(graph_isomorphic(trace.result(), pattern).unwrap_or(false));
    Ok(trace)
}

/// Backtracking isomorphism on top of iterated neighborhood refinement.
pub fn graph_isomorphic(a: &SimpleGraph, b: &SimpleGraph) -> Result<bool> {
    if a.vertex_count().max(b.vertex_count()) > ISO_GRAPH_CAP {
        return Err(Error::CapExceeded {
            what: "isomorphism search size",
            limit: ISO_GRAPH_CAP as u64,
        });
    }
    if a.vertex_count() != b.vertex_count() || a.edge_count() != b.edge_count() {
        return Ok(false);
    }
    let n = a.vertex_count();
    if n == 0 {
        return Ok(true);
    }
    let adj_a = a.adjacency();
    let adj_b = b.adjacency();
    let (col_a, col_b) = match refine_colors(&adj_a, &adj_b) {
        Some(pair) => pair,
        None => return Ok(false),
    };
    // most-constrained-first vertex order for A
    let mut class_size = HashMap::new();
    for &c in &col_a {
        *class_size.entry(c).or_insert(0usize) += 1;
    }
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&v| (class_size[&col_a[v]], std::cmp::Reverse(adj_a[v].len())));
    let mut mapping = vec![usize::MAX; n];
    let mut used = vec![false; n];
    Ok(iso_backtrack(
        &adj_a, &adj_b, &col_a, &col_b, &order, 0, &mut mapping, &mut used,
    ))
}

/// Parallel 1-dimensional refinement on both graphs; colors comparable
/// across the pair. None when the color histograms split them apart.
fn refine_colors(adj_a: &[Vec<usize>], adj_b: &[Vec<usize>]) -> Option<(Vec<u64>, Vec<u64>)> {
    let n = adj_a.len();
    let mut col_a: Vec<u64> = adj_a.iter().map(|x| x.len() as u64).collect();
    let mut col_b: Vec<u64> = adj_b.iter().map(|x| x.len() as u64).collect();
    for _ in 0..n {
        let sig = |adj: &[Vec<usize>], col: &[u64], v: usize| {
            let mut around: Vec<u64> = adj[v].iter().map(|&w| col[w]).collect();
            around.sort_unstable();
            (col[v], around)
        };
        let mut palette = BTreeMap::new();
        let sigs_a: Vec<_> = (0..n).map(|v| sig(adj_a, &col_a, v)).collect();
        let sigs_b: Vec<_> = (0..n).map(|v| sig(adj_b, &col_b, v)).collect();
        for s in sigs_a.iter().chain(sigs_b.iter()) {
            let next = palette.len() as u64;
            palette.entry(s.clone()).or_insert(next);
        }
        let next_a: Vec<u64> = sigs_a.iter().map(|s| palette[s]).collect();
        let next_b: Vec<u64> = sigs_b.iter().map(|s| palette[s]).collect();
        let mut hist_a: Vec<u64> = next_a.clone();
        let mut hist_b: Vec<u64> = next_b.clone();
        hist_a.sort_unstable();
        hist_b.sort_unstable();
        if hist_a != hist_b {
            return None;
        }
        let stable = next_a
            .iter()
            .zip(&col_a)
            .all(|(x, y)| *x == *y)
            && next_b.iter().zip(&col_b).all(|(x, y)| *x == *y);
        col_a = next_a;
        col_b = next_b;
        if stable {
            break;
        }
    }
    Some((col_a, col_b))
}

#[allow(clippy::too_many_arguments)]
fn iso_backtrack(
    adj_a: &[Vec<usize>],
    adj_b: &[Vec<usize>],
    col_a: &[u64],
    col_b: &[u64],
    order: &[usize],
    at: usize,
    mapping: &mut [usize],
    used: &mut [bool],
) -> bool {
    if at == order.len() {
        return true;
    }
    let v = order[at];
    'candidate: for w in 0..adj_b.len() {
        if used[w] || col_b[w] != col_a[v] || adj_b[w].len() != adj_a[v].len() {
            continue;
        }
        for &x in &adj_a[v] {
            if mapping[x] != usize::MAX && !adj_b[w].contains(&mapping[x]) {
                continue 'candidate;
            }
        }
        // reverse direction: mapped neighbors of w must come from neighbors of v
        for &y in &adj_b[w] {
            if let Some(x) = mapping.iter().position(|&m| m == y) {
                if !adj_a[v].contains(&x) {
                    continue 'candidate;
                }
            }
        }
        mapping[v] = w;
        used[w] = true;
        if iso_backtrack(adj_a, adj_b, col_a, col_b, order, at + 1, mapping, used) {
            return true;
        }
        mapping[v] = usize::MAX;
        used[w] = false;
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{group_cyclic, group_dihedral, group_symmetric, right_group};
    use crate::planarity::is_planar;

    #[test]
    fn contraction_and_deletion_basics() {
        let k4 = SimpleGraph::complete(4);
        let t = apply_trace(&k4, &[Step::Contract { u: 0, v: 1 }]).unwrap();
        assert!(graph_isomorphic(t.result(), &SimpleGraph::complete(3)).unwrap());
        assert!(verify_trace(&t));

        let k5 = SimpleGraph::complete(5);
        let t = apply_trace(&k5, &[Step::Delete { u: 0, v: 1 }]).unwrap();
        assert!(is_planar(t.result()));
        assert_eq!(t.result().edge_count(), 9);
    }

    #[test]
    fn dead_edges_are_reported() {
        let k4 = SimpleGraph::complete(4);
        let double_delete = [Step::Delete { u: 0, v: 1 }, Step::Delete { u: 0, v: 1 }];
        match apply_trace(&k4, &double_delete) {
            Err(Error::DeadEdge { step: 1, u: 0, v: 1 }) => {}
            other => panic!("expected a dead edge at step 1, got {other:?}"),
        }
        // contracting an edge twice also leaves nothing to contract
        let double_contract = [Step::Contract { u: 2, v: 3 }, Step::Contract { u: 2, v: 3 }];
        assert!(apply_trace(&k4, &double_contract).is_err());
    }

    #[test]
    fn contracting_subdivision_paths_recovers_k33() {
        // subdivide three disjoint edges of K33 by one middle vertex each,
        // then contract the halves back
        let base = SimpleGraph::complete_bipartite(3, 3);
        let mut edges: Vec<(usize, usize)> = base.edges().to_vec();
        let picks = [(0, 3), (1, 4), (2, 5)];
        for (m, &(u, v)) in picks.iter().enumerate() {
            edges.retain(|&e| e != (u, v));
            edges.push((u, 6 + m));
            edges.push((6 + m, v));
        }
        let host = SimpleGraph::new(9, edges);
        let steps: Vec<Step> = picks
            .iter()
            .enumerate()
            .map(|(m, &(u, _))| Step::Contract { u, v: 6 + m })
            .collect();
        let t = apply_trace(&host, &steps).unwrap();
        assert!(graph_isomorphic(t.result(), &base).unwrap());
        assert!(verify_trace(&t));
    }

    #[test]
    fn group_action_contraction_on_bands() {
        // k = 1 leaves the graph alone
        let z6 = group_cyclic(6).unwrap();
        let s = right_group(z6.clone(), 1).unwrap();
        let c = ElementSet::new(vec![s.index(1, 0)]);
        let (t, cp) = babai_contract(&s, &c).unwrap();
        assert_eq!(t.result().vertex_count(), 6);
        assert_eq!(cp.members(), &[1]);

        // two bands over Z2 collapse to a single edge
        let s = right_group(group_cyclic(2).unwrap(), 2).unwrap();
        let c = ElementSet::new(vec![s.index(1, 0), s.index(0, 1)]);
        let (t, cp) = babai_contract(&s, &c).unwrap();
        assert_eq!(t.result().vertex_count(), 2);
        assert_eq!(cp.members(), &[1]);
        assert_eq!(t.result().edge_count(), 1);

        // three bands over Z6: result stays planar, so the group factor is too
        let s = right_group(z6, 3).unwrap();
        let c = ElementSet::new(vec![s.index(1, 0), s.index(0, 1), s.index(0, 2)]);
        let (t, _) = babai_contract(&s, &c).unwrap();
        assert_eq!(t.result().vertex_count(), 6);
        assert!(is_planar(t.result()));
    }

    #[test]
    fn factor_preconditions() {
        // abelian group part: always fine
        let s = right_group(group_cyclic(4).unwrap(), 2).unwrap();
        let c = ElementSet::new(vec![s.index(1, 0), s.index(1, 1)]);
        for x in c.iter() {
            assert!(check_factor_precondition(&s, &c, x));
        }
        // S4 with a 4-cycle and 3-cycle in both bands: conjugation moves
        // each off the other, in-band and out-of-band alike
        let s4 = group_symmetric(4).unwrap();
        let a = s4.element_by_name("(1234)").unwrap();
        let b = s4.element_by_name("(123)").unwrap();
        let s = right_group(s4, 2).unwrap();
        let c = ElementSet::new(vec![
            s.index(a, 0),
            s.index(b, 0),
            s.index(a, 1),
            s.index(b, 1),
        ]);
        for x in c.iter() {
            assert!(!check_factor_precondition(&s, &c, x));
        }

        // a group part listed in both bands counts against the out-of-band
        // alternative: sigma is untame under rho, so the rotation candidate
        // fails even though the set difference of the projections is tame
        let d3 = group_dihedral(3).unwrap();
        let rho = crate::algebra::dihedral_rotation(3);
        let rho2 = d3.mul(rho, rho);
        let sg = crate::algebra::dihedral_reflection_12(3);
        let s = right_group(d3, 2).unwrap();
        let c = ElementSet::new(vec![
            s.index(rho, 0),
            s.index(sg, 0),
            s.index(sg, 1),
            s.index(rho2, 1),
        ]);
        assert!(!check_factor_precondition(&s, &c, s.index(rho, 0)));
        // ...while the reflection candidate tames its whole band
        assert!(check_factor_precondition(&s, &c, s.index(sg, 0)));
        let t = factor_minor(&s, &c, s.index(sg, 0)).unwrap();
        assert!(verify_trace(&t));
        assert_eq!(t.result().vertex_count(), 6);
    }

    #[test]
    fn band_collapse_reproduces_group_graphs() {
        // D3 on its two standard reflections spread over two bands: 6-cycle
        let d3 = group_dihedral(3).unwrap();
        let r1 = crate::algebra::dihedral_reflection_12(3);
        let r2 = crate::algebra::dihedral_reflection_13(3);
        let s = right_group(d3, 2).unwrap();
        let c = ElementSet::new(vec![s.index(r1, 0), s.index(r2, 1)]);
        let t = factor_minor(&s, &c, s.index(r1, 0)).unwrap();
        assert!(graph_isomorphic(t.result(), &SimpleGraph::cycle(6)).unwrap());

        // Z4 twice: 4-cycle
        let s = right_group(group_cyclic(4).unwrap(), 2).unwrap();
        let c = ElementSet::new(vec![s.index(1, 0), s.index(1, 1)]);
        let t = factor_minor(&s, &c, s.index(1, 0)).unwrap();
        assert!(graph_isomorphic(t.result(), &SimpleGraph::cycle(4)).unwrap());

        // k = 1: nothing to do
        let s = right_group(group_cyclic(5).unwrap(), 1).unwrap();
        let c = ElementSet::new(vec![s.index(1, 0)]);
        let t = factor_minor(&s, &c, s.index(1, 0)).unwrap();
        assert!(t.steps().is_empty());
        assert!(graph_isomorphic(t.result(), &SimpleGraph::cycle(5)).unwrap());
    }

    #[test]
    fn coxeter_diagnosis_shapes() {
        let s4 = group_symmetric(4).unwrap();
        let gens = ElementSet::new(vec![
            s4.element_by_name("(12)").unwrap(),
            s4.element_by_name("(23)").unwrap(),
            s4.element_by_name("(34)").unwrap(),
        ]);
        let d = coxeter_diagnose(&s4, &gens);
        assert!(d.is_coxeter);
        assert_eq!(d.dynkin_edges, vec![(0, 1), (1, 2)]); // a path
        assert!(d.is_tree);

        let d3 = group_dihedral(3).unwrap();
        let gens = ElementSet::new(vec![
            crate::algebra::dihedral_reflection_12(3),
            crate::algebra::dihedral_reflection_13(3),
        ]);
        let d = coxeter_diagnose(&d3, &gens);
        assert!(d.is_coxeter && d.is_tree);
        assert_eq!(d.dynkin_edges.len(), 1);

        let z3 = group_cyclic(3).unwrap();
        let d = coxeter_diagnose(&z3, &ElementSet::new(vec![1]));
        assert!(!d.is_coxeter);

        // Klein four-group on its two factors: diagram with no edges is a
        // forest but not a tree
        let d2 = group_dihedral(2).unwrap();
        let gens = ElementSet::new(vec![
            d2.element_by_name("r").unwrap(),
            d2.element_by_name("s").unwrap(),
        ]);
        let d = coxeter_diagnose(&d2, &gens);
        assert!(d.is_coxeter && d.is_forest && !d.is_tree);
    }

    fn petersen() -> SimpleGraph {
        let outer = [(0, 1), (1, 2), (2, 3), (3, 4), (4, 0)];
        let spokes = [(0, 5), (1, 6), (2, 7), (3, 8), (4, 9)];
        let inner = [(5, 7), (7, 9), (9, 6), (6, 8), (8, 5)];
        SimpleGraph::new(
            10,
            outer.iter().chain(spokes.iter()).chain(inner.iter()).copied(),
        )
    }

    #[test]
    fn minor_search_examples() {
        let k5 = SimpleGraph::complete(5);
        let k4 = SimpleGraph::complete(4);
        match minor_contains(&k5, &k4, 10_000).unwrap() {
            MinorSearch::Found(t) => {
                assert!(verify_trace(&t));
                assert!(graph_isomorphic(t.result(), &k4).unwrap());
            }
            other => panic!("K4 is a minor of K5, got {other:?}"),
        }
        match minor_contains(&petersen(), &k5, 1_000_000).unwrap() {
            MinorSearch::Found(t) => {
                assert!(verify_trace(&t));
                assert!(graph_isomorphic(t.result(), &k5).unwrap());
            }
            other => panic!("K5 is a minor of the Petersen graph, got {other:?}"),
        }
        // a cycle contracts down to a triangle but never reaches K4
        match minor_contains(&SimpleGraph::cycle(6), &SimpleGraph::complete(3), 1_000_000).unwrap()
        {
            MinorSearch::Found(t) => {
                assert!(verify_trace(&t));
                assert!(graph_isomorphic(t.result(), &SimpleGraph::complete(3)).unwrap());
            }
            other => panic!("C6 contracts to a triangle, got {other:?}"),
        }
        match minor_contains(&SimpleGraph::cycle(6), &k4, 1_000_000).unwrap() {
            MinorSearch::Absent => {}
            other => panic!("cycles have no K4 minor, got {other:?}"),
        }
        match minor_contains(&petersen(), &k5, 3).unwrap() {
            MinorSearch::Exceeded => {}
            other => panic!("budget of 3 nodes cannot finish, got {other:?}"),
        }
    }

    #[test]
    fn isomorphism_checks() {
        let g1 = SimpleGraph::complete_bipartite(3, 3);
        // relabel by a fixed permutation
        let perm = [4, 2, 0, 5, 3, 1];
        let g2 = SimpleGraph::new(
            6,
            g1.edges().iter().map(|&(u, v)| (perm[u], perm[v])),
        );
        assert!(graph_isomorphic(&g1, &g2).unwrap());
        assert!(!graph_isomorphic(&SimpleGraph::complete(4), &SimpleGraph::cycle(4)).unwrap());

        // D3 on a rotation and a reflection is the triangular prism
        let d3 = group_dihedral(3).unwrap();
        let c = ElementSet::new(vec![
            crate::algebra::dihedral_rotation(3),
            crate::algebra::dihedral_reflection_12(3),
        ]);
        let cay = underlying_graph(&group_cayley_digraph(&d3, &c).unwrap());
        let prism = SimpleGraph::new(
            6,
            [(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3), (0, 3), (1, 4), (2, 5)],
        );
        assert!(graph_isomorphic(&cay, &prism).unwrap());
    }
}
