//! Finite groups as dense multiplication tables, right groups G × R_k, and the
//! element-set plumbing shared by the graph and search modules.
//!
//! Elements are indices into tables; names are display-only. Permutation
//! groups are materialized at construction (orders here never exceed 120, so
//! full tables are cheap and every later operation is an array lookup).

use std::fmt;

use serde::Serialize;

use crate::{Error, Result};

/// Largest order accepted for table construction (the O(n^3) associativity
/// scan stays cheap below this).
pub const ORDER_CAP: usize = 240;

/// Largest order `group_isomorphic` will attempt; the generator-image
/// backtracking is only tuned for the catalog sizes.
pub const ISO_CAP: usize = 120;

// ---------------------------------------------------------------------------
// GroupTable

/// A finite group given by its full multiplication table.
///
/// `mul(a, b)` composes with `b` acting first, matching ordinary function
/// composition for the permutation groups; all identities below were fixed
/// under that convention.
#[derive(Clone)]
pub struct GroupTable {
    order: usize,
    mul: Vec<usize>, // row-major: mul[a * order + b] = a·b
    identity: usize,
    inv: Vec<usize>,
    names: Vec<String>,
}

impl fmt::Debug for GroupTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("GroupTable")
            .field("order", &self.order)
            .finish()
    }
}

impl GroupTable {
    /// Build and fully validate a table: entries in range, unique names,
    /// two-sided identity, two-sided inverses, associativity on all triples.
    pub fn from_parts(names: Vec<String>, mul: Vec<usize>) -> Result<GroupTable> {
        let n = names.len();
        if n == 0 {
            return Err(Error::BadTable("empty element list".into()));
        }
        if n > ORDER_CAP {
            return Err(Error::CapExceeded {
                what: "group order",
                limit: ORDER_CAP as u64,
            });
        }
        if mul.len() != n * n {
            return Err(Error::BadTable(format!(
                "table has {} entries, expected {}",
                mul.len(),
                n * n
            )));
        }
        if mul.iter().any(|&x| x >= n) {
            return Err(Error::BadTable("entry out of range".into()));
        }
        {
            let mut sorted = names.clone();
            sorted.sort();
            sorted.dedup();
            if sorted.len() != n {
                return Err(Error::BadTable("duplicate element names".into()));
            }
        }
        let at = |a: usize, b: usize| mul[a * n + b];
        let identity = (0..n)
            .find(|&e| (0..n).all(|x| at(e, x) == x && at(x, e) == x))
            .ok_or_else(|| Error::BadTable("no two-sided identity".into()))?;
        let mut inv = vec![usize::MAX; n];
        for x in 0..n {
            inv[x] = (0..n)
                .find(|&y| at(x, y) == identity && at(y, x) == identity)
                .ok_or_else(|| Error::BadTable(format!("element {x} has no inverse")))?;
        }
        for a in 0..n {
            for b in 0..n {
                let ab = at(a, b);
                for c in 0..n {
                    if at(ab, c) != at(a, at(b, c)) {
                        return Err(Error::BadTable(format!(
                            "associativity fails at ({a},{b},{c})"
                        )));
                    }
                }
            }
        }
        Ok(GroupTable {
            order: n,
            mul,
            identity,
            inv,
            names,
        })
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mul[a * self.order + b]
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inv[a]
    }

    pub fn name(&self, a: usize) -> &str {
        &self.names[a]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn element_by_name(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.order
    }

    /// Least d >= 1 with g^d = e.
    pub fn element_order(&self, g: usize) -> usize {
        let mut x = g;
        let mut d = 1;
        while x != self.identity {
            x = self.mul(x, g);
            d += 1;
        }
        d
    }

    /// Subgroup generated by `gens`, as a sorted index list. For a group,
    /// closing under left multiplication by generators suffices (inverses come
    /// for free by finiteness).
    pub fn subgroup_closure(&self, gens: &[usize]) -> Vec<usize> {
        let mut seen = vec![false; self.order];
        seen[self.identity] = true;
        let mut queue = vec![self.identity];
        while let Some(x) = queue.pop() {
            for &g in gens {
                let y = self.mul(x, g);
                if !seen[y] {
                    seen[y] = true;
                    queue.push(y);
                }
            }
        }
        (0..self.order).filter(|&x| seen[x]).collect()
    }

    pub fn generates(&self, gens: &[usize]) -> bool {
        self.subgroup_closure(gens).len() == self.order
    }

    /// Multiset of element orders — the cheapest isomorphism invariant.
    pub fn order_profile(&self) -> Vec<usize> {
        let mut p: Vec<usize> = (0..self.order).map(|g| self.element_order(g)).collect();
        p.sort_unstable();
        p
    }

    /// A small generating set: greedily add any element that enlarges the
    /// closure. At most log2(order) elements.
    pub fn small_generating_set(&self) -> Vec<usize> {
        let mut gens = Vec::new();
        let mut closed = vec![self.identity];
        while closed.len() < self.order {
            let next = (0..self.order)
                .find(|x| closed.binary_search(x).is_err())
                .expect("closure smaller than group must miss an element");
            gens.push(next);
            closed = self.subgroup_closure(&gens);
        }
        gens
    }
}

// ---------------------------------------------------------------------------
// Constructors

/// The trivial group, element named "e".
pub fn group_trivial() -> GroupTable {
    GroupTable::from_parts(vec!["e".into()], vec![0]).expect("trivial table")
}

/// Z_n = {0, …, n-1} under addition.
pub fn group_cyclic(n: usize) -> Result<GroupTable> {
    if n == 0 {
        return Err(Error::BadSpec("Z0".into()));
    }
    let names = (0..n).map(|i| i.to_string()).collect();
    let mut mul = vec![0usize; n * n];
    for a in 0..n {
        for b in 0..n {
            mul[a * n + b] = (a + b) % n;
        }
    }
    GroupTable::from_parts(names, mul)
}

/// D_n, the symmetries of the n-gon (order 2n), for n >= 2.
///
/// Element layout: indices 0..n are the rotations ρ^i (vertex v ↦ v+i on the
/// 0-based polygon), indices n..2n are the reflections σ_c (v ↦ c−v). Under
/// the composition convention used here:
///   ρ^i ρ^j = ρ^{i+j},  ρ^i σ_c = σ_{c+i},  σ_c ρ^i = σ_{c−i},  σ_c σ_d = ρ^{c−d}.
/// Names are the cycle notation of the action on vertices 1..n (faithful for
/// n >= 3); D_2 acts unfaithfully on the 2-gon so its elements get the
/// abstract names e, r, s, rs.
pub fn group_dihedral(n: usize) -> Result<GroupTable> {
    if n < 2 {
        return Err(Error::BadSpec(format!("D{n}")));
    }
    let size = 2 * n;
    let mut mul = vec![0usize; size * size];
    // index i < n: rotation ρ^i; index n + c: reflection σ_c
    for a in 0..size {
        for b in 0..size {
            let prod = match (a < n, b < n) {
                (true, true) => (a + b) % n,
                (true, false) => n + (b - n + a) % n,
                (false, true) => n + (a - n + n - b % n) % n,
                (false, false) => (a - n + n - (b - n)) % n,
            };
            mul[a * size + b] = prod;
        }
    }
    let names: Vec<String> = if n == 2 {
        ["e", "r", "s", "rs"].iter().map(|s| s.to_string()).collect()
    } else {
        (0..size)
            .map(|idx| {
                // 0-based vertex action, printed 1-based
                let perm: Vec<usize> = (0..n)
                    .map(|v| {
                        if idx < n {
                            (v + idx) % n
                        } else {
                            (idx - n + n - v % n) % n
                        }
                    })
                    .collect();
                cycle_name(&perm)
            })
            .collect()
    };
    GroupTable::from_parts(names, mul)
}

/// Index of the rotation (1 2 … n) inside `group_dihedral(n)`.
pub fn dihedral_rotation(_n: usize) -> usize {
    1
}

/// Index of the reflection the catalog calls ⟨12⟩ (swaps polygon vertices
/// 1 and 2) inside `group_dihedral(n)`.
pub fn dihedral_reflection_12(n: usize) -> usize {
    n + 1
}

/// Index of the reflection the catalog calls ⟨13⟩ (fixes polygon vertex 2)
/// inside `group_dihedral(n)`.
pub fn dihedral_reflection_13(n: usize) -> usize {
    n + 2
}

/// S_n for 2 <= n <= 5, with cycle-notation names.
pub fn group_symmetric(n: usize) -> Result<GroupTable> {
    if !(2..=5).contains(&n) {
        return Err(Error::BadSpec(format!("S{n}")));
    }
    let perms = all_permutations(n);
    permutation_table(perms)
}

/// A_n for 2 <= n <= 5, with cycle-notation names.
pub fn group_alternating(n: usize) -> Result<GroupTable> {
    if !(2..=5).contains(&n) {
        return Err(Error::BadSpec(format!("A{n}")));
    }
    let perms: Vec<Vec<usize>> = all_permutations(n)
        .into_iter()
        .filter(|p| perm_is_even(p))
        .collect();
    permutation_table(perms)
}

/// The order-8 group ⟨i,j⟩ with i² = j² = (ij)² = -1. Needed for complete
/// sweeps over all groups of order at most eight; not reachable from the
/// spec grammar.
pub fn group_quaternion() -> GroupTable {
    let names: Vec<String> = ["1", "-1", "i", "-i", "j", "-j", "k", "-k"]
        .iter()
        .map(|s| s.to_string())
        .collect();
    // element 2u+s encodes (-1)^s times unit u, units ordered 1,i,j,k
    let unit_mul = [
        [(0usize, 0usize), (0, 1), (0, 2), (0, 3)],
        [(0, 1), (1, 0), (0, 3), (1, 2)],
        [(0, 2), (1, 3), (1, 0), (0, 1)],
        [(0, 3), (0, 2), (1, 1), (1, 0)],
    ];
    let mut mul = vec![0usize; 64];
    for x in 0..8 {
        for y in 0..8 {
            let (su, u) = (x % 2, x / 2);
            let (sv, v) = (y % 2, y / 2);
            let (sw, w) = unit_mul[u][v];
            mul[x * 8 + y] = 2 * w + (su + sv + sw) % 2;
        }
    }
    GroupTable::from_parts(names, mul).expect("quaternion axioms")
}

/// Direct product with componentwise multiplication; element (a,b) of G × H
/// gets index a·|H| + b and name "(a,b)".
pub fn direct_product(g: &GroupTable, h: &GroupTable) -> Result<GroupTable> {
    let (m, n) = (g.order(), h.order());
    let size = m * n;
    let mut names = Vec::with_capacity(size);
    for a in 0..m {
        for b in 0..n {
            names.push(format!("({},{})", g.name(a), h.name(b)));
        }
    }
    let mut mul = vec![0usize; size * size];
    for a1 in 0..m {
        for b1 in 0..n {
            let x = a1 * n + b1;
            for a2 in 0..m {
                for b2 in 0..n {
                    let y = a2 * n + b2;
                    mul[x * size + y] = g.mul(a1, a2) * n + h.mul(b1, b2);
                }
            }
        }
    }
    GroupTable::from_parts(names, mul)
}

/// Build a group from a description like "Z6", "D4", "A5", or "Z2 x S4".
/// Atoms: E or 1 (trivial), Zn, Dn (n >= 2), Sn, An (2 <= n <= 5); "x"
/// between atoms takes direct products, associating to the left. Case and
/// whitespace are free.
pub fn parse_group_spec(spec: &str) -> Result<GroupTable> {
    let mut acc: Option<GroupTable> = None;
    for part in spec.split(['x', 'X']) {
        let atom = parse_group_atom(part.trim(), spec)?;
        acc = Some(match acc {
            None => atom,
            Some(g) => direct_product(&g, &atom)?,
        });
    }
    acc.ok_or_else(|| Error::BadSpec(spec.into()))
}

fn parse_group_atom(tok: &str, whole: &str) -> Result<GroupTable> {
    let bad = || Error::BadSpec(format!("{tok} (in `{whole}`)"));
    if tok.eq_ignore_ascii_case("e") || tok == "1" {
        return Ok(group_trivial());
    }
    if tok.len() < 2 || !tok.is_ascii() {
        return Err(bad());
    }
    let (head, tail) = tok.split_at(1);
    let n: usize = tail.parse().map_err(|_| bad())?;
    match head {
        "Z" | "z" => group_cyclic(n),
        "D" | "d" => group_dihedral(n),
        "S" | "s" => group_symmetric(n),
        "A" | "a" => group_alternating(n),
        _ => Err(bad()),
    }
}

// Permutations are arrays p with p[x] = image of x; composition (p·q)(x) = p(q(x)).

fn all_permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur: Vec<usize> = (0..n).collect();
    loop {
        out.push(cur.clone());
        // next lexicographic permutation
        let Some(i) = (0..n.saturating_sub(1)).rev().find(|&i| cur[i] < cur[i + 1]) else {
            break;
        };
        let j = (i + 1..n).rev().find(|&j| cur[j] > cur[i]).unwrap();
        cur.swap(i, j);
        cur[i + 1..].reverse();
    }
    out
}

fn perm_is_even(p: &[usize]) -> bool {
    let mut seen = vec![false; p.len()];
    let mut transpositions = 0;
    for start in 0..p.len() {
        if seen[start] {
            continue;
        }
        let mut len = 0;
        let mut x = start;
        while !seen[x] {
            seen[x] = true;
            x = p[x];
            len += 1;
        }
        transpositions += len - 1;
    }
    transpositions % 2 == 0
}

/// Cycle notation over 1-based points, cycles ordered by smallest member,
/// fixed points omitted; the identity prints as "e".
fn cycle_name(p: &[usize]) -> String {
    let mut seen = vec![false; p.len()];
    let mut out = String::new();
    for start in 0..p.len() {
        if seen[start] || p[start] == start {
            seen[start] = true;
            continue;
        }
        out.push('(');
        let mut x = start;
        while !seen[x] {
            seen[x] = true;
            out.push_str(&(x + 1).to_string());
            x = p[x];
        }
        out.push(')');
    }
    if out.is_empty() {
        out.push('e');
    }
    out
}

fn permutation_table(perms: Vec<Vec<usize>>) -> Result<GroupTable> {
    let size = perms.len();
    let names: Vec<String> = perms.iter().map(|p| cycle_name(p)).collect();
    let mut index = std::collections::HashMap::new();
    for (i, p) in perms.iter().enumerate() {
        index.insert(p.clone(), i);
    }
    let mut mul = vec![0usize; size * size];
    for (i, p) in perms.iter().enumerate() {
        for (j, q) in perms.iter().enumerate() {
            let composed: Vec<usize> = (0..p.len()).map(|x| p[q[x]]).collect();
            mul[i * size + j] = index[&composed];
        }
    }
    GroupTable::from_parts(names, mul)
}

// ---------------------------------------------------------------------------
// Isomorphism

/// Isomorphism test by backtracking on generator images with order-profile
/// pruning. Sound and complete up to `ORDER_CAP`.
pub fn group_isomorphic(g: &GroupTable, h: &GroupTable) -> Result<bool> {
    if g.order() > ISO_CAP || h.order() > ISO_CAP {
        return Err(Error::CapExceeded {
            what: "group order for isomorphism search",
            limit: ISO_CAP as u64,
        });
    }
    if g.order() != h.order() {
        return Ok(false);
    }
    if g.order_profile() != h.order_profile() {
        return Ok(false);
    }
    let gens = g.small_generating_set();
    let gen_orders: Vec<usize> = gens.iter().map(|&x| g.element_order(x)).collect();
    let mut images = Vec::with_capacity(gens.len());
    Ok(assign_images(g, h, &gens, &gen_orders, &mut images))
}

fn assign_images(
    g: &GroupTable,
    h: &GroupTable,
    gens: &[usize],
    gen_orders: &[usize],
    images: &mut Vec<usize>,
) -> bool {
    if images.len() == gens.len() {
        return check_homomorphism(g, h, gens, images);
    }
    let want = gen_orders[images.len()];
    for y in h.elements() {
        if h.element_order(y) != want {
            continue;
        }
        images.push(y);
        if assign_images(g, h, gens, gen_orders, images) {
            images.pop();
            return true;
        }
        images.pop();
    }
    false
}

/// Extend gens ↦ images to a full map by closure propagation, then verify it
/// is a bijective homomorphism on every pair.
fn check_homomorphism(g: &GroupTable, h: &GroupTable, gens: &[usize], images: &[usize]) -> bool {
    let n = g.order();
    let mut map = vec![usize::MAX; n];
    map[g.identity()] = h.identity();
    let mut queue = vec![g.identity()];
    while let Some(x) = queue.pop() {
        for (&gen, &img) in gens.iter().zip(images) {
            let xg = g.mul(x, gen);
            let want = h.mul(map[x], img);
            if map[xg] == usize::MAX {
                map[xg] = want;
                queue.push(xg);
            } else if map[xg] != want {
                return false;
            }
        }
    }
    if map.iter().any(|&y| y == usize::MAX) {
        return false; // gens fail to generate — cannot happen for small_generating_set
    }
    let mut hit = vec![false; n];
    for &y in &map {
        if hit[y] {
            return false;
        }
        hit[y] = true;
    }
    for a in 0..n {
        for b in 0..n {
            if map[g.mul(a, b)] != h.mul(map[a], map[b]) {
                return false;
            }
        }
    }
    true
}

// ---------------------------------------------------------------------------
// Right groups

/// The right group S = G × R_k: pairs (g, r_j) with (g,r_i)(h,r_j) = (gh,r_j).
/// Element (g, r_j) has index g·k + j, 0 <= j < k.
#[derive(Clone)]
pub struct RightGroupTable {
    group: GroupTable,
    k: usize,
}

impl fmt::Debug for RightGroupTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("RightGroupTable")
            .field("group_order", &self.group.order())
            .field("k", &self.k)
            .finish()
    }
}

/// S = G × R_k for k >= 1.
pub fn right_group(group: GroupTable, k: usize) -> Result<RightGroupTable> {
    if k == 0 {
        return Err(Error::BadSpec("band size 0".into()));
    }
    Ok(RightGroupTable { group, k })
}

impl RightGroupTable {
    pub fn group(&self) -> &GroupTable {
        &self.group
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn size(&self) -> usize {
        self.group.order() * self.k
    }

    #[inline]
    pub fn index(&self, g: usize, band: usize) -> usize {
        g * self.k + band
    }

    #[inline]
    pub fn group_part(&self, s: usize) -> usize {
        s / self.k
    }

    #[inline]
    pub fn band_part(&self, s: usize) -> usize {
        s % self.k
    }

    /// (g, r_i)(h, r_j) = (gh, r_j).
    #[inline]
    pub fn mul(&self, x: usize, y: usize) -> usize {
        self.index(
            self.group.mul(self.group_part(x), self.group_part(y)),
            self.band_part(y),
        )
    }

    /// Display name "(g,r<j+1>)".
    pub fn name(&self, s: usize) -> String {
        format!(
            "({},r{})",
            self.group.name(self.group_part(s)),
            self.band_part(s) + 1
        )
    }

    pub fn element_by_name(&self, name: &str) -> Option<usize> {
        (0..self.size()).find(|&s| self.name(s) == name)
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.size()
    }
}

// ---------------------------------------------------------------------------
// Element sets

/// A canonical (sorted, duplicate-free) set of element indices. The parent
/// table is passed to the operations that need it rather than stored here, so
/// sets stay plain data.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct ElementSet(Vec<usize>);

impl fmt::Debug for ElementSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ElementSet{:?}", self.0)
    }
}

impl ElementSet {
    pub fn new(mut members: Vec<usize>) -> ElementSet {
        members.sort_unstable();
        members.dedup();
        ElementSet(members)
    }

    pub fn empty() -> ElementSet {
        ElementSet(Vec::new())
    }

    pub fn members(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, x: usize) -> bool {
        self.0.binary_search(&x).is_ok()
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().copied()
    }

    pub fn is_subset_of(&self, other: &ElementSet) -> bool {
        self.0.iter().all(|&x| other.contains(x))
    }
}

impl FromIterator<usize> for ElementSet {
    fn from_iter<T: IntoIterator<Item = usize>>(iter: T) -> Self {
        ElementSet::new(iter.into_iter().collect())
    }
}

/// Smallest subsemigroup of S containing T, by worklist saturation.
pub fn semigroup_closure(s: &RightGroupTable, t: &ElementSet) -> Result<ElementSet> {
    if t.is_empty() {
        return Err(Error::Empty("generating set"));
    }
    let mut seen = vec![false; s.size()];
    let mut stack: Vec<usize> = t.iter().collect();
    for &x in t.members() {
        seen[x] = true;
    }
    while let Some(x) = stack.pop() {
        // products with every element already in the closure, both orders
        for y in 0..s.size() {
            if !seen[y] {
                continue;
            }
            for z in [s.mul(x, y), s.mul(y, x)] {
                if !seen[z] {
                    seen[z] = true;
                    stack.push(z);
                }
            }
        }
    }
    Ok((0..s.size()).filter(|&x| seen[x]).collect())
}

/// Does T generate all of S?
pub fn generates_right_group(s: &RightGroupTable, t: &ElementSet) -> bool {
    !t.is_empty()
        && semigroup_closure(s, t)
            .map(|c| c.len() == s.size())
            .unwrap_or(false)
}

/// The four standard views of a connection set C ⊆ G × R_k.
#[derive(Clone, Debug, Serialize)]
pub struct Projections {
    /// π_G(C): group parts present.
    pub group_part: ElementSet,
    /// π_R(C): band indices present (0-based).
    pub band_part: ElementSet,
    /// π_G(C)_j, indexed by band j.
    pub by_band: Vec<ElementSet>,
    /// c_a for every a ∈ G (dense, index = group element).
    pub multiplicities: Vec<usize>,
}

pub fn projections(s: &RightGroupTable, c: &ElementSet) -> Projections {
    let mut by_band = vec![Vec::new(); s.k()];
    let mut multiplicities = vec![0usize; s.group().order()];
    for x in c.iter() {
        let (g, j) = (s.group_part(x), s.band_part(x));
        by_band[j].push(g);
        multiplicities[g] += 1;
    }
    Projections {
        group_part: c.iter().map(|x| s.group_part(x)).collect(),
        band_part: c.iter().map(|x| s.band_part(x)).collect(),
        by_band: by_band.into_iter().map(ElementSet::new).collect(),
        multiplicities,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cyclic_basics() {
        let z6 = group_cyclic(6).unwrap();
        assert_eq!(z6.order(), 6);
        assert_eq!(z6.element_order(1), 6);
        assert_eq!(z6.name(0), "0");
        let z4 = group_cyclic(4).unwrap();
        assert_eq!(z4.element_order(2), 2);
        let z1 = group_cyclic(1).unwrap();
        assert_eq!(z1.order(), 1);
    }

    #[test]
    fn dihedral_layout_matches_polygon_action() {
        let d4 = group_dihedral(4).unwrap();
        assert_eq!(d4.order(), 8);
        assert_eq!(d4.element_order(dihedral_rotation(4)), 4);
        assert_eq!(d4.element_order(dihedral_reflection_13(4)), 2);
        assert_eq!(d4.name(dihedral_rotation(4)), "(1234)");
        assert_eq!(d4.name(dihedral_reflection_13(4)), "(13)");
        assert_eq!(d4.name(dihedral_reflection_12(4)), "(12)(34)");
        let d3 = group_dihedral(3).unwrap();
        assert_eq!(d3.name(dihedral_reflection_12(3)), "(12)");
        assert_eq!(d3.name(dihedral_reflection_13(3)), "(13)");
        // ⟨12⟩⟨13⟩ generate and their product is a rotation
        let a = dihedral_reflection_12(3);
        let b = dihedral_reflection_13(3);
        assert!(d3.generates(&[a, b]));
        assert_eq!(d3.element_order(d3.mul(a, b)), 3);
    }

    #[test]
    fn dihedral_2_is_klein() {
        let d2 = group_dihedral(2).unwrap();
        let z2 = group_cyclic(2).unwrap();
        let klein = direct_product(&z2, &z2).unwrap();
        assert!(group_isomorphic(&d2, &klein).unwrap());
    }

    #[test]
    fn quaternion_is_the_odd_one_out_at_order_eight() {
        let q = group_quaternion();
        assert_eq!(q.order(), 8);
        // exactly one involution (-1), six elements of order 4
        assert_eq!(q.order_profile(), vec![1, 2, 4, 4, 4, 4, 4, 4]);
        let i = q.element_by_name("i").unwrap();
        let j = q.element_by_name("j").unwrap();
        assert_eq!(q.name(q.mul(i, j)), "k");
        assert_eq!(q.name(q.mul(j, i)), "-k");
        for other in [
            group_cyclic(8).unwrap(),
            group_dihedral(4).unwrap(),
            parse_group_spec("Z2 x Z4").unwrap(),
            parse_group_spec("Z2 x Z2 x Z2").unwrap(),
        ] {
            assert!(!group_isomorphic(&q, &other).unwrap());
        }
    }

    #[test]
    fn symmetric_and_alternating_orders() {
        assert_eq!(group_symmetric(4).unwrap().order(), 24);
        assert_eq!(group_alternating(4).unwrap().order(), 12);
        assert_eq!(group_alternating(5).unwrap().order(), 60);
        assert_eq!(group_symmetric(5).unwrap().order(), 120);
        let a4 = group_alternating(4).unwrap();
        let g = a4.element_by_name("(123)").unwrap();
        assert_eq!(a4.element_order(g), 3);
    }

    #[test]
    fn conjugation_convention() {
        // (1234)^{-1} (123) (1234) = (124) pins down the composition order.
        let s4 = group_symmetric(4).unwrap();
        let t = s4.element_by_name("(1234)").unwrap();
        let c = s4.element_by_name("(123)").unwrap();
        let conj = s4.mul(s4.mul(s4.inv(t), c), t);
        assert_eq!(s4.name(conj), "(124)");
    }

    #[test]
    fn product_and_isomorphism_identities() {
        let z2 = group_cyclic(2).unwrap();
        let z3 = group_cyclic(3).unwrap();
        let z4 = group_cyclic(4).unwrap();
        let z6 = group_cyclic(6).unwrap();
        let klein = direct_product(&z2, &z2).unwrap();
        assert!(group_isomorphic(&direct_product(&z2, &z3).unwrap(), &z6).unwrap());
        assert!(!group_isomorphic(&z4, &klein).unwrap());
        let d3 = group_dihedral(3).unwrap();
        let d6 = group_dihedral(6).unwrap();
        assert!(group_isomorphic(&direct_product(&z2, &d3).unwrap(), &d6).unwrap());
        let e = group_trivial();
        let a4 = group_alternating(4).unwrap();
        assert!(group_isomorphic(&direct_product(&e, &a4).unwrap(), &a4).unwrap());
    }

    #[test]
    fn right_group_law_by_scan() {
        let z3 = group_cyclic(3).unwrap();
        let s = right_group(z3, 2).unwrap();
        assert_eq!(s.size(), 6);
        for x in s.elements() {
            for y in s.elements() {
                let z = s.mul(x, y);
                assert_eq!(
                    s.group_part(z),
                    s.group().mul(s.group_part(x), s.group_part(y))
                );
                assert_eq!(s.band_part(z), s.band_part(y));
            }
        }
        assert_eq!(s.name(s.index(2, 1)), "(2,r2)");
    }

    #[test]
    fn closure_examples() {
        // right-zero band: any subset of {e} x R_4 is closed
        let e4 = right_group(group_trivial(), 4).unwrap();
        let t = ElementSet::new(vec![0, 1]);
        assert_eq!(semigroup_closure(&e4, &t).unwrap(), t);

        let z2r2 = right_group(group_cyclic(2).unwrap(), 2).unwrap();
        // {(1,r1),(0,r2)} generates all four elements
        let c = ElementSet::new(vec![z2r2.index(1, 0), z2r2.index(0, 1)]);
        assert_eq!(semigroup_closure(&z2r2, &c).unwrap().len(), 4);
        // {(0,r1),(0,r2)} stays in the identity column
        let c0 = ElementSet::new(vec![z2r2.index(0, 0), z2r2.index(0, 1)]);
        assert_eq!(semigroup_closure(&z2r2, &c0).unwrap().len(), 2);
        assert!(semigroup_closure(&z2r2, &ElementSet::empty()).is_err());
    }

    #[test]
    fn projection_views() {
        let z6r3 = right_group(group_cyclic(6).unwrap(), 3).unwrap();
        let c = ElementSet::new(vec![
            z6r3.index(1, 0),
            z6r3.index(0, 1),
            z6r3.index(0, 2),
        ]);
        let p = projections(&z6r3, &c);
        assert_eq!(p.group_part, ElementSet::new(vec![0, 1]));
        assert_eq!(p.band_part, ElementSet::new(vec![0, 1, 2]));
        assert_eq!(p.multiplicities[0], 2);
        assert_eq!(p.multiplicities[1], 1);
        assert_eq!(p.by_band[0], ElementSet::new(vec![1]));
        assert_eq!(p.by_band[1], ElementSet::new(vec![0]));
        assert_eq!(p.multiplicities.iter().sum::<usize>(), c.len());
    }
}
