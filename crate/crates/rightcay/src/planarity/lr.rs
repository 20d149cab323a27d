//! Left-right planarity test with an embedding phase.
//!
//! This follows the Brandes formulation: orient the graph by DFS computing
//! lowpoints and a nesting order, partition back edges into left/right
//! constraint sets with a stack of conflict pairs, then replay the DFS to
//! assemble clockwise rotations. Edge state lives in arrays indexed by the
//! undirected edge id, which works because the orientation pass assigns each
//! edge exactly one direction.

use std::collections::HashMap;

use crate::cayley::SimpleGraph;

type Eid = usize;

const NONE_HEIGHT: usize = usize::MAX;

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
struct Interval {
    low: Option<Eid>,
    high: Option<Eid>,
}

impl Interval {
    const EMPTY: Interval = Interval {
        low: None,
        high: None,
    };

    fn is_empty(&self) -> bool {
        self.low.is_none() && self.high.is_none()
    }
}

#[derive(Clone, Copy, Debug)]
struct ConflictPair {
    left: Interval,
    right: Interval,
}

struct LrState {
    adj: Vec<Vec<(usize, Eid)>>,
    edge_endpoints: Vec<(usize, usize)>,
    // orientation, assigned once per edge
    oriented: Vec<bool>,
    dst: Vec<usize>,
    height: Vec<usize>, // NONE_HEIGHT = unvisited
    parent_edge: Vec<Option<Eid>>,
    roots: Vec<usize>,
    dfs_order: Vec<Vec<Eid>>, // out-edges in DFS-orientation order, untouched
    out_edges: Vec<Vec<Eid>>, // working copy, sorted by nesting depth
    lowpt: Vec<usize>,
    lowpt2: Vec<usize>,
    nesting: Vec<i64>,
    ref_: Vec<Option<Eid>>,
    side: Vec<i8>,
    stack: Vec<ConflictPair>,
    stack_bottom: Vec<usize>, // stack height snapshot per edge
    lowpt_edge: Vec<Option<Eid>>,
}

impl LrState {
    fn new(g: &SimpleGraph) -> LrState {
        let n = g.vertex_count();
        let m = g.edge_count();
        let mut adj = vec![Vec::new(); n];
        for (eid, &(u, v)) in g.edges().iter().enumerate() {
            adj[u].push((v, eid));
            adj[v].push((u, eid));
        }
        LrState {
            adj,
            edge_endpoints: g.edges().to_vec(),
            oriented: vec![false; m],
            dst: vec![usize::MAX; m],
            height: vec![NONE_HEIGHT; n],
            parent_edge: vec![None; n],
            roots: Vec::new(),
            dfs_order: vec![Vec::new(); n],
            out_edges: vec![Vec::new(); n],
            lowpt: vec![0; m],
            lowpt2: vec![0; m],
            nesting: vec![0; m],
            ref_: vec![None; m],
            side: vec![1; m],
            stack: Vec::new(),
            stack_bottom: vec![0; m],
            lowpt_edge: vec![None; m],
        }
    }

    fn dfs_orientation(&mut self, v: usize) {
        let e = self.parent_edge[v];
        for idx in 0..self.adj[v].len() {
            let (w, eid) = self.adj[v][idx];
            if self.oriented[eid] {
                continue;
            }
            self.oriented[eid] = true;
            self.dst[eid] = w;
            self.dfs_order[v].push(eid);
            self.lowpt[eid] = self.height[v];
            self.lowpt2[eid] = self.height[v];
            if self.height[w] == NONE_HEIGHT {
                // tree edge
                self.parent_edge[w] = Some(eid);
                self.height[w] = self.height[v] + 1;
                self.dfs_orientation(w);
            } else {
                // back edge
                self.lowpt[eid] = self.height[w];
            }
            self.nesting[eid] = 2 * self.lowpt[eid] as i64;
            if self.lowpt2[eid] < self.height[v] {
                self.nesting[eid] += 1; // chordal
            }
            if let Some(pe) = e {
                if self.lowpt[eid] < self.lowpt[pe] {
                    self.lowpt2[pe] = self.lowpt[pe].min(self.lowpt2[eid]);
                    self.lowpt[pe] = self.lowpt[eid];
                } else if self.lowpt[eid] > self.lowpt[pe] {
                    self.lowpt2[pe] = self.lowpt2[pe].min(self.lowpt[eid]);
                } else {
                    self.lowpt2[pe] = self.lowpt2[pe].min(self.lowpt2[eid]);
                }
            }
        }
    }

    fn conflicting(&self, i: &Interval, b: Eid) -> bool {
        !i.is_empty() && self.lowpt[i.high.expect("non-empty interval carries high")] > self.lowpt[b]
    }

    fn pair_lowest(&self, p: &ConflictPair) -> usize {
        if p.left.is_empty() {
            return self.lowpt[p.right.low.expect("non-empty pair")];
        }
        if p.right.is_empty() {
            return self.lowpt[p.left.low.expect("non-empty pair")];
        }
        self.lowpt[p.left.low.expect("left low")].min(self.lowpt[p.right.low.expect("right low")])
    }

    fn dfs_testing(&mut self, v: usize) -> bool {
        let e = self.parent_edge[v];
        for idx in 0..self.out_edges[v].len() {
            let eid = self.out_edges[v][idx];
            let w = self.dst[eid];
            self.stack_bottom[eid] = self.stack.len();
            if self.parent_edge[w] == Some(eid) {
                // tree edge
                if !self.dfs_testing(w) {
                    return false;
                }
            } else {
                // back edge
                self.lowpt_edge[eid] = Some(eid);
                self.stack.push(ConflictPair {
                    left: Interval::EMPTY,
                    right: Interval {
                        low: Some(eid),
                        high: Some(eid),
                    },
                });
            }
            if self.lowpt[eid] < self.height[v] {
                // eid has a return edge; v cannot be a root here since
                // lowpt >= 0 = height(root)
                let pe = e.expect("return edge below a root is impossible");
                if idx == 0 {
                    self.lowpt_edge[pe] = self.lowpt_edge[eid];
                } else if !self.add_constraints(eid, pe) {
                    return false;
                }
            }
        }
        if let Some(pe) = e {
            self.remove_back_edges(pe);
        }
        true
    }

    fn add_constraints(&mut self, ei: Eid, e: Eid) -> bool {
        let mut p = ConflictPair {
            left: Interval::EMPTY,
            right: Interval::EMPTY,
        };
        // merge return edges of ei into p.right
        loop {
            let mut q = self.stack.pop().expect("conflict pair for ei on stack");
            if !q.left.is_empty() {
                std::mem::swap(&mut q.left, &mut q.right);
            }
            if !q.left.is_empty() {
                return false; // not planar
            }
            let q_right_low = q.right.low.expect("interval with both sides");
            if self.lowpt[q_right_low] > self.lowpt[e] {
                // merge intervals
                if p.right.is_empty() {
                    p.right = q.right;
                } else if let Some(p_right_low) = p.right.low {
                    self.ref_[p_right_low] = q.right.high;
                }
                p.right.low = q.right.low;
            } else {
                // align
                self.ref_[q_right_low] = self.lowpt_edge[e];
            }
            if self.stack.len() == self.stack_bottom[ei] {
                break;
            }
        }
        // merge conflicting return edges of earlier siblings into p.left
        while {
            let top = self.stack.last().expect("conflicting pairs live on stack");
            self.conflicting(&top.left, ei) || self.conflicting(&top.right, ei)
        } {
            let mut q = self.stack.pop().expect("checked non-empty");
            if self.conflicting(&q.right, ei) {
                std::mem::swap(&mut q.left, &mut q.right);
            }
            if self.conflicting(&q.right, ei) {
                return false; // not planar
            }
            // merge interval below lowpt(ei) into p.right
            if let Some(p_right_low) = p.right.low {
                self.ref_[p_right_low] = q.right.high;
            }
            if q.right.low.is_some() {
                p.right.low = q.right.low;
            }
            if p.left.is_empty() {
                p.left = q.left;
            } else if let Some(p_left_low) = p.left.low {
                self.ref_[p_left_low] = q.left.high;
            }
            p.left.low = q.left.low;
        }
        if !(p.left.is_empty() && p.right.is_empty()) {
            self.stack.push(p);
        }
        true
    }

    fn remove_back_edges(&mut self, e: Eid) {
        let u = self.src_of(e);
        // drop entire conflict pairs returning to the parent
        while let Some(top) = self.stack.last() {
            if self.pair_lowest(top) != self.height[u] {
                break;
            }
            let p = self.stack.pop().expect("checked");
            if let Some(left_low) = p.left.low {
                self.side[left_low] = -1;
            }
        }
        if let Some(mut p) = self.stack.pop() {
            // trim left interval
            while let Some(h) = p.left.high {
                if self.dst[h] != u {
                    break;
                }
                p.left.high = self.ref_[h];
            }
            if p.left.high.is_none() {
                if let Some(left_low) = p.left.low {
                    // just emptied
                    self.ref_[left_low] = p.right.low;
                    self.side[left_low] = -1;
                    p.left.low = None;
                }
            }
            // trim right interval
            while let Some(h) = p.right.high {
                if self.dst[h] != u {
                    break;
                }
                p.right.high = self.ref_[h];
            }
            if p.right.high.is_none() {
                if let Some(right_low) = p.right.low {
                    // just emptied
                    self.ref_[right_low] = p.left.low;
                    self.side[right_low] = -1;
                    p.right.low = None;
                }
            }
            self.stack.push(p);
        }
        // side of e is the side of a highest return edge
        if self.lowpt[e] < self.height[u] {
            let top = self.stack.last().expect("return edge leaves a pair");
            let hl = top.left.high;
            let hr = top.right.high;
            self.ref_[e] = match (hl, hr) {
                (Some(l), Some(r)) => {
                    if self.lowpt[l] > self.lowpt[r] {
                        Some(l)
                    } else {
                        Some(r)
                    }
                }
                (Some(l), None) => Some(l),
                (None, r) => r,
            };
        }
    }

    fn src_of(&self, e: Eid) -> usize {
        // the oriented source: the endpoint that is not dst
        let (u, v) = self.edge_endpoints[e];
        if self.dst[e] == v {
            u
        } else {
            v
        }
    }

    /// Resolve relative sides along ref chains to absolute signs.
    fn resolve_sign(&mut self, e: Eid) -> i8 {
        let mut chain = vec![e];
        while let Some(r) = self.ref_[*chain.last().expect("non-empty")] {
            chain.push(r);
        }
        for i in (0..chain.len() - 1).rev() {
            let x = chain[i];
            let r = chain[i + 1];
            self.side[x] *= self.side[r];
            self.ref_[x] = None;
        }
        self.side[e]
    }
}

/// Clockwise rotation builder mirroring the doubly-linked neighbor lists of
/// a combinatorial embedding under construction.
struct RotBuilder {
    cw: Vec<HashMap<usize, usize>>,
    ccw: Vec<HashMap<usize, usize>>,
    leftmost: Vec<Option<usize>>,
}

impl RotBuilder {
    fn new(n: usize) -> RotBuilder {
        RotBuilder {
            cw: vec![HashMap::new(); n],
            ccw: vec![HashMap::new(); n],
            leftmost: vec![None; n],
        }
    }

    fn add_first_out_edge(&mut self, v: usize, w: usize) {
        self.cw[v].insert(w, w);
        self.ccw[v].insert(w, w);
        self.leftmost[v] = Some(w);
    }

    /// Insert w counterclockwise-adjacent to `r` at v (new edge's cw = r).
    fn add_with_cw_ref(&mut self, v: usize, w: usize, r: usize) {
        let r_ccw = self.ccw[v][&r];
        self.cw[v].insert(w, r);
        self.ccw[v].insert(w, r_ccw);
        *self.cw[v].get_mut(&r_ccw).expect("linked") = w;
        *self.ccw[v].get_mut(&r).expect("linked") = w;
        if self.leftmost[v] == Some(r) {
            self.leftmost[v] = Some(w);
        }
    }

    /// Insert w clockwise-adjacent to `r` at v (new edge's ccw = r).
    fn add_with_ccw_ref(&mut self, v: usize, w: usize, r: usize) {
        let r_cw = self.cw[v][&r];
        self.cw[v].insert(w, r_cw);
        self.ccw[v].insert(w, r);
        *self.ccw[v].get_mut(&r_cw).expect("linked") = w;
        *self.cw[v].get_mut(&r).expect("linked") = w;
    }

    /// Insert w as the new leftmost neighbor of v.
    fn add_first(&mut self, v: usize, w: usize) {
        match self.leftmost[v] {
            Some(l) => self.add_with_cw_ref(v, w, l),
            None => self.add_first_out_edge(v, w),
        }
    }

    fn into_rotations(self) -> Vec<Vec<usize>> {
        let mut out = Vec::with_capacity(self.cw.len());
        for v in 0..self.cw.len() {
            let mut rot = Vec::with_capacity(self.cw[v].len());
            if let Some(start) = self.leftmost[v] {
                let mut cur = start;
                loop {
                    rot.push(cur);
                    cur = self.cw[v][&cur];
                    if cur == start {
                        break;
                    }
                }
            }
            out.push(rot);
        }
        out
    }
}

pub(crate) enum LrOutcome {
    NonPlanar,
    Planar(Option<Vec<Vec<usize>>>),
}

/// Run the test; optionally complete the embedding phase.
pub(crate) fn run(g: &SimpleGraph, build_embedding: bool) -> LrOutcome {
    let n = g.vertex_count();
    let m = g.edge_count();
    if n > 2 && m > 3 * n - 6 {
        return LrOutcome::NonPlanar;
    }
    let mut st = LrState::new(g);
    for v in 0..n {
        if st.height[v] == NONE_HEIGHT {
            st.height[v] = 0;
            st.roots.push(v);
            st.dfs_orientation(v);
        }
    }
    // sort adjacency lists by nesting depth (stable, so DFS order breaks ties)
    for v in 0..n {
        let mut order = st.dfs_order[v].clone();
        let nesting = &st.nesting;
        order.sort_by_key(|&eid| nesting[eid]);
        st.out_edges[v] = order;
    }
    for i in 0..st.roots.len() {
        let r = st.roots[i];
        if !st.dfs_testing(r) {
            return LrOutcome::NonPlanar;
        }
    }
    if !build_embedding {
        return LrOutcome::Planar(None);
    }
    for eid in 0..m {
        if st.oriented[eid] {
            let s = st.resolve_sign(eid) as i64;
            st.nesting[eid] *= s;
        }
    }
    let mut rb = RotBuilder::new(n);
    for v in 0..n {
        let mut order = st.dfs_order[v].clone();
        let nesting = &st.nesting;
        order.sort_by_key(|&eid| nesting[eid]);
        st.out_edges[v] = order;
        let mut previous: Option<usize> = None;
        for idx in 0..st.out_edges[v].len() {
            let w = st.dst[st.out_edges[v][idx]];
            match previous {
                None => rb.add_first_out_edge(v, w),
                Some(p) => rb.add_with_ccw_ref(v, w, p),
            }
            previous = Some(w);
        }
    }
    let mut left_ref = vec![usize::MAX; n];
    let mut right_ref = vec![usize::MAX; n];
    for i in 0..st.roots.len() {
        let r = st.roots[i];
        st.dfs_embedding(r, &mut rb, &mut left_ref, &mut right_ref);
    }
    LrOutcome::Planar(Some(rb.into_rotations()))
}

impl LrState {
    fn dfs_embedding(
        &mut self,
        v: usize,
        rb: &mut RotBuilder,
        left_ref: &mut [usize],
        right_ref: &mut [usize],
    ) {
        for idx in 0..self.out_edges[v].len() {
            let eid = self.out_edges[v][idx];
            let w = self.dst[eid];
            if self.parent_edge[w] == Some(eid) {
                // tree edge
                rb.add_first(w, v);
                left_ref[v] = w;
                right_ref[v] = w;
                self.dfs_embedding(w, rb, left_ref, right_ref);
            } else {
                // back edge
                if self.side[eid] == 1 {
                    rb.add_with_ccw_ref(w, v, right_ref[w]);
                } else {
                    rb.add_with_cw_ref(w, v, left_ref[w]);
                    left_ref[w] = v;
                }
            }
        }
    }
}

/// Planarity verdict only — skips the embedding phase.
pub fn is_planar(g: &SimpleGraph) -> bool {
    !matches!(run(g, false), LrOutcome::NonPlanar)
}

/// Clockwise rotations of a planar embedding, or None for non-planar input.
pub fn embed(g: &SimpleGraph) -> Option<Vec<Vec<usize>>> {
    match run(g, true) {
        LrOutcome::NonPlanar => None,
        LrOutcome::Planar(rot) => Some(rot.expect("embedding was requested")),
    }
}
