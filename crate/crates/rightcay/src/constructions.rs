//! Ready-made planar material: the verified catalog of planar groups with
//! their generating sets, programmatic ring drawings for ℤ_n × R_k and
//! D_n × R_k, and the gadget construction that turns a two-generator
//! drawing of G with alternating arcs into drawings of G × R_2 and G × R_3.

use serde::Serialize;

use crate::algebra::{
    dihedral_reflection_12, dihedral_reflection_13, dihedral_rotation, group_cyclic,
    group_dihedral, parse_group_spec, right_group, ElementSet, GroupTable, RightGroupTable,
};
use crate::cayley::{cayley_digraph, group_cayley_digraph, underlying_graph, CayleyDigraph};
use crate::planarity::{PlanarEmbedding, RotationSystem};
use crate::{Error, Result};

// ---------------------------------------------------------------------------
// The catalog

/// One verified catalog row: a group, a minimal generating set (by element
/// name), and the vertex/edge counts its Cayley graph must have.
#[derive(Clone, Debug, Serialize)]
pub struct CatalogEntry {
    pub group: String,
    pub generators: Vec<String>,
    pub expected_vertices: usize,
    pub expected_edges: usize,
}

impl CatalogEntry {
    fn new(group: &str, generators: &[&str], v: usize, e: usize) -> CatalogEntry {
        CatalogEntry {
            group: group.to_string(),
            generators: generators.iter().map(|s| s.to_string()).collect(),
            expected_vertices: v,
            expected_edges: e,
        }
    }
}

/// Every group with a planar Cayley graph, one row per known minimal
/// generating set, with infinite families instantiated for n up to 8.
pub fn maschke_catalog() -> Vec<CatalogEntry> {
    maschke_catalog_with_cap(8)
}

/// Catalog with the family cap chosen by the caller (cap >= 3).
pub fn maschke_catalog_with_cap(cap: usize) -> Vec<CatalogEntry> {
    let cap = cap.max(3);
    let mut rows = Vec::new();

    // cycles
    for n in 3..=cap {
        rows.push(CatalogEntry::new(&format!("Z{n}"), &["1"], n, n));
    }
    // prisms over cycles; n = 2 degenerates to a 4-cycle and n = 4 is the cube
    rows.push(CatalogEntry::new("Z2 x Z2", &["(1,0)", "(0,1)"], 4, 4));
    rows.push(CatalogEntry::new("Z2 x Z4", &["(1,0)", "(0,1)"], 8, 12));
    for n in (3..=cap).filter(|&n| n != 4) {
        rows.push(CatalogEntry::new(
            &format!("Z2 x Z{n}"),
            &["(1,0)", "(0,1)"],
            2 * n,
            3 * n,
        ));
    }
    // dihedral: the 2n-gon on two reflections and the n-prism on a
    // rotation-reflection pair; names depend on n, so harvest them
    for n in 3..=cap {
        let d = group_dihedral(n).expect("n >= 3");
        let rot = d.name(dihedral_rotation(n));
        let r12 = d.name(dihedral_reflection_12(n));
        let r13 = d.name(dihedral_reflection_13(n));
        let dn = format!("D{n}");
        rows.push(CatalogEntry::new(&dn, &[r12, r13], 2 * n, 2 * n));
        rows.push(CatalogEntry::new(&dn, &[rot, r12], 2 * n, 3 * n));
    }
    // octahedron on the triangle group: a 3-cycle plus two reflections
    rows.push(CatalogEntry::new("D3", &["(123)", "(12)", "(23)"], 6, 12));
    // cube on the square group via the diagonal reflection
    if cap >= 4 {
        rows.push(CatalogEntry::new("D4", &["(1234)", "(13)"], 8, 12));
    }
    // doubled dihedral prisms
    for n in 2..=cap {
        let d = group_dihedral(2 * n).expect("2n >= 4");
        let g0 = format!("(0,{})", d.name(dihedral_reflection_12(2 * n)));
        let g1 = format!("(0,{})", d.name(dihedral_reflection_13(2 * n)));
        rows.push(CatalogEntry::new(
            &format!("Z2 x D{}", 2 * n),
            &["(1,e)", &g0, &g1],
            8 * n,
            12 * n,
        ));
    }
    // tetrahedral
    rows.push(CatalogEntry::new("A4", &["(123)", "(12)(34)"], 12, 18));
    rows.push(CatalogEntry::new("A4", &["(123)", "(234)"], 12, 24));
    rows.push(CatalogEntry::new(
        "A4",
        &["(123)", "(234)", "(13)(24)"],
        12,
        30,
    ));
    rows.push(CatalogEntry::new(
        "Z2 x A4",
        &["(0,(123))", "(1,(12)(34))"],
        24,
        36,
    ));
    // octahedral
    rows.push(CatalogEntry::new("S4", &["(123)", "(34)"], 24, 36));
    rows.push(CatalogEntry::new("S4", &["(12)", "(23)", "(34)"], 24, 36));
    rows.push(CatalogEntry::new("S4", &["(12)", "(1234)"], 24, 36));
    rows.push(CatalogEntry::new("S4", &["(123)", "(1234)"], 24, 48));
    rows.push(CatalogEntry::new(
        "S4",
        &["(1234)", "(123)", "(34)"],
        24,
        60,
    ));
    // three reflections of the full cube symmetry group; pairwise products
    // have orders 3, 4, 2, giving the hexagon/octagon/square faces
    rows.push(CatalogEntry::new(
        "Z2 x S4",
        &["(1,(12))", "(1,(23))", "(1,(12)(34))"],
        48,
        72,
    ));
    // icosahedral
    rows.push(CatalogEntry::new("A5", &["(124)", "(23)(45)"], 60, 90));
    rows.push(CatalogEntry::new("A5", &["(12345)", "(23)(45)"], 60, 90));
    rows.push(CatalogEntry::new("A5", &["(12345)", "(124)"], 60, 120));
    rows.push(CatalogEntry::new(
        "A5",
        &["(12345)", "(124)", "(23)(45)"],
        60,
        150,
    ));
    rows.push(CatalogEntry::new(
        "Z2 x A5",
        &["(1,(12)(35))", "(1,(24)(35))", "(1,(23)(45))"],
        120,
        180,
    ));

    rows
}

/// Resolve a catalog row to its group table and generator indices.
pub fn materialize_entry(entry: &CatalogEntry) -> Result<(GroupTable, ElementSet)> {
    let g = parse_group_spec(&entry.group)?;
    let mut members = Vec::with_capacity(entry.generators.len());
    for name in &entry.generators {
        let idx = g.element_by_name(name).ok_or_else(|| {
            Error::BadSpec(format!("{} has no element named {name}", entry.group))
        })?;
        members.push(idx);
    }
    Ok((g, ElementSet::new(members)))
}

// ---------------------------------------------------------------------------
// Ring drawings

/// The groups whose Cayley graph on the chosen generators is a single
/// cycle: ℤ_n on +1, or D_n on two adjacent reflections.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RingGroup {
    Cyclic(usize),
    Dihedral(usize),
}

/// A right-group Cayley graph bundled with an explicit embedding of its
/// underlying simple graph.
pub struct EmbeddedCayley {
    pub table: RightGroupTable,
    pub set: ElementSet,
    pub digraph: CayleyDigraph,
    pub embedding: PlanarEmbedding,
}

/// Plane drawing of G × R_k for G = ℤ_n (n >= 1) or D_n (n >= 2) and
/// k ∈ {2,3}, on the generating set {(b,r₁),(e,r₂),(e,r₃)} (cyclic, b the
/// unit step) or {(a,r₁),(b,r₂),(e,r₃)} (dihedral, a,b adjacent
/// reflections), with the identity-labelled members dropped for k = 2.
/// The rotation system is built arithmetically — concentric rings of
/// columns with one gadget per ring step — not by running the planarity
/// tester.
pub fn build_cycle_band_embedding(which: RingGroup, k: usize) -> Result<EmbeddedCayley> {
    if !(k == 2 || k == 3) {
        return Err(Error::BadSpec(format!("band count {k} (want 2 or 3)")));
    }
    match which {
        RingGroup::Cyclic(n) if n >= 1 => cyclic_bands(n, k),
        RingGroup::Dihedral(n) if n >= 2 => dihedral_bands(n, k),
        RingGroup::Cyclic(n) => Err(Error::BadSpec(format!("Z{n}"))),
        RingGroup::Dihedral(n) => Err(Error::BadSpec(format!("D{n}"))),
    }
}

fn cyclic_bands(n: usize, k: usize) -> Result<EmbeddedCayley> {
    let s = right_group(group_cyclic(n)?, k)?;
    let step = 1 % n;
    let mut members = vec![s.index(step, 0), s.index(0, 1)];
    if k == 3 {
        members.push(s.index(0, 2));
    }
    let set = ElementSet::new(members);
    let digraph = cayley_digraph(&s, &set)?;
    let graph = underlying_graph(&digraph);

    let ix = |a: usize, band: usize| s.index(a, band);
    let mut rot: Vec<Vec<usize>> = vec![Vec::new(); s.size()];
    match (n, k) {
        // with one or two columns the ring degenerates; fixed drawings
        (1, 2) => {
            rot[ix(0, 0)] = vec![ix(0, 1)];
            rot[ix(0, 1)] = vec![ix(0, 0)];
        }
        (1, 3) => {
            rot[ix(0, 0)] = vec![ix(0, 1), ix(0, 2)];
            rot[ix(0, 1)] = vec![ix(0, 0), ix(0, 2)];
            rot[ix(0, 2)] = vec![ix(0, 0), ix(0, 1)];
        }
        (2, 2) => {
            rot[ix(0, 0)] = vec![ix(1, 1), ix(1, 0), ix(0, 1)];
            rot[ix(1, 0)] = vec![ix(0, 1), ix(0, 0), ix(1, 1)];
            rot[ix(0, 1)] = vec![ix(0, 0), ix(1, 0)];
            rot[ix(1, 1)] = vec![ix(1, 0), ix(0, 0)];
        }
        (2, 3) => {
            // two sector tetrahedra sharing the ring edge
            rot[ix(0, 0)] = vec![ix(1, 0), ix(0, 1), ix(0, 2), ix(1, 2), ix(1, 1)];
            rot[ix(1, 0)] = vec![ix(0, 0), ix(1, 1), ix(1, 2), ix(0, 2), ix(0, 1)];
            rot[ix(0, 1)] = vec![ix(1, 0), ix(0, 2), ix(0, 0)];
            rot[ix(0, 2)] = vec![ix(0, 1), ix(1, 0), ix(0, 0)];
            rot[ix(1, 1)] = vec![ix(0, 0), ix(1, 2), ix(1, 0)];
            rot[ix(1, 2)] = vec![ix(1, 1), ix(0, 0), ix(1, 0)];
        }
        _ => {
            // ring vertices (a,0) on a circle; bands 1 and 2 hang in the
            // sector between columns a and a+1, forming one tetrahedral
            // cell per sector
            for a in 0..n {
                let up = (a + 1) % n;
                let dn = (a + n - 1) % n;
                if k == 3 {
                    rot[ix(a, 0)] = vec![
                        ix(up, 0),
                        ix(dn, 0),
                        ix(dn, 2),
                        ix(dn, 1),
                        ix(a, 1),
                        ix(a, 2),
                    ];
                    rot[ix(a, 1)] = vec![ix(up, 0), ix(a, 2), ix(a, 0)];
                    rot[ix(a, 2)] = vec![ix(up, 0), ix(a, 0), ix(a, 1)];
                } else {
                    rot[ix(a, 0)] = vec![ix(up, 0), ix(dn, 0), ix(dn, 1), ix(a, 1)];
                    rot[ix(a, 1)] = vec![ix(up, 0), ix(a, 0)];
                }
            }
        }
    }
    let embedding = PlanarEmbedding::from_rotation(graph, RotationSystem::new(rot));
    Ok(EmbeddedCayley {
        table: s,
        set,
        digraph,
        embedding,
    })
}

fn dihedral_bands(n: usize, k: usize) -> Result<EmbeddedCayley> {
    let g = group_dihedral(n)?;
    // two reflections whose product is a full rotation; D_2 has no
    // faithful polygon action, so it addresses its reflections directly
    let (ra, rb) = if n == 2 {
        (2, 3)
    } else {
        (dihedral_reflection_12(n), dihedral_reflection_13(n))
    };
    let s = right_group(g, k)?;
    let mut members = vec![s.index(ra, 0), s.index(rb, 1)];
    if k == 3 {
        members.push(s.index(s.group().identity(), 2));
    }
    let set = ElementSet::new(members);
    let digraph = cayley_digraph(&s, &set)?;
    let graph = underlying_graph(&digraph);

    // columns around the ring: alternate right-multiplication by the two
    // reflections; even steps are ra-steps, odd steps rb-steps
    let m = 2 * n;
    let mut col = vec![0usize; m];
    for t in 1..m {
        let gen = if (t - 1) % 2 == 0 { ra } else { rb };
        col[t] = s.group().mul(col[t - 1], gen);
    }
    debug_assert_eq!(s.group().mul(col[m - 1], rb), s.group().identity());

    let mut rot: Vec<Vec<usize>> = vec![Vec::new(); s.size()];
    for t in 0..m {
        let up = (t + 1) % m;
        let dn = (t + m - 1) % m;
        let ix = |tt: usize, band: usize| s.index(col[tt], band);
        // Each ring step carries a five-edge tree between adjacent
        // columns (three edges fanning into the step's band-0 or band-1
        // hub, two collected by the far hub); columns alternate their
        // radial order so the trees nest without crossing.
        if t % 2 == 0 {
            if k == 3 {
                rot[ix(t, 0)] = vec![ix(dn, 1), ix(up, 1), ix(up, 2), ix(up, 0), ix(t, 2)];
                rot[ix(t, 1)] = vec![ix(dn, 0), ix(dn, 2), ix(dn, 1), ix(t, 2), ix(up, 0)];
                rot[ix(t, 2)] = vec![ix(dn, 1), ix(t, 0), ix(up, 0), ix(t, 1)];
            } else {
                rot[ix(t, 0)] = vec![ix(dn, 1), ix(up, 1), ix(up, 0)];
                rot[ix(t, 1)] = vec![ix(dn, 0), ix(dn, 1), ix(up, 0)];
            }
        } else if k == 3 {
            rot[ix(t, 0)] = vec![ix(dn, 1), ix(dn, 2), ix(dn, 0), ix(t, 2), ix(up, 1)];
            rot[ix(t, 1)] = vec![ix(dn, 0), ix(up, 0), ix(up, 2), ix(up, 1), ix(t, 2)];
            rot[ix(t, 2)] = vec![ix(up, 1), ix(t, 0), ix(dn, 0), ix(t, 1)];
        } else {
            rot[ix(t, 0)] = vec![ix(dn, 1), ix(dn, 0), ix(up, 1)];
            rot[ix(t, 1)] = vec![ix(dn, 0), ix(up, 0), ix(up, 1)];
        }
    }
    let embedding = PlanarEmbedding::from_rotation(graph, RotationSystem::new(rot));
    Ok(EmbeddedCayley {
        table: s,
        set,
        digraph,
        embedding,
    })
}

// ---------------------------------------------------------------------------
// Alternation and the gadget blow-up

fn check_pair(g: &GroupTable, a: usize, b: usize) -> Result<()> {
    let e = g.identity();
    if a == e || g.mul(a, a) != e {
        return Err(Error::Precondition(
            "first generator must be a non-trivial involution".into(),
        ));
    }
    if g.mul(b, b) == e {
        return Err(Error::Precondition(
            "second generator must not square to the identity".into(),
        ));
    }
    if !g.generates(&[a, b]) {
        return Err(Error::Precondition(
            "the two generators must generate the group".into(),
        ));
    }
    Ok(())
}

/// In `x`'s rotation, is the successor of the a-edge the outgoing b-edge?
fn succ_is_out(g: &GroupTable, e: &PlanarEmbedding, x: usize, a: usize, b: usize) -> bool {
    let list = e.rotation().cw(x);
    let y = g.mul(x, a);
    let pos = list
        .iter()
        .position(|&v| v == y)
        .expect("a-edge present in a checked embedding");
    list[(pos + 1) % list.len()] == g.mul(x, b)
}

/// Does every a-edge of this embedding of Cay(G,{a,b}) see its four
/// incident b-arcs alternate in/out around it? Every vertex has degree
/// three here, so around the edge {x, xa} the four b-arcs alternate
/// exactly when the rotation successor of the edge points the same way
/// (outgoing or incoming) at both ends. Reflecting the embedding flips
/// successors to predecessors at both ends at once, so the answer is
/// mirror-invariant.
pub fn alternation_check(
    g: &GroupTable,
    e: &PlanarEmbedding,
    a: usize,
    b: usize,
) -> Result<bool> {
    check_pair(g, a, b)?;
    let expected = underlying_graph(&group_cayley_digraph(
        g,
        &ElementSet::new(vec![a, b]),
    )?);
    if e.graph() != &expected {
        return Err(Error::Precondition(
            "embedding is not of Cay(G,{a,b}) in group numbering".into(),
        ));
    }
    for x in g.elements() {
        let y = g.mul(x, a);
        if x < y && succ_is_out(g, e, x, a, b) != succ_is_out(g, e, y, a, b) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Which right-group Cayley graph the blow-up should produce from a base
/// drawing of Cay(G,{a,b}): three bands on {(a,r₁),(b,r₂),(e,r₃)}, its
/// two-band subgraph on {(a,r₁),(b,r₂)}, or the two-band variant on
/// {(e,r₁),(a,r₂),(b,r₂)}.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BlowUpVariant {
    R3,
    R2,
    R2Alt,
}

/// Blow each a-edge of the base drawing up into a gadget between the two
/// element columns and re-route the b-arcs as bundles, producing an
/// embedding of the chosen right-group Cayley graph. Requires
/// `alternation_check` to pass: around each a-edge the gadget has its two
/// in-hubs at opposite corners, which forces the b-arcs at both ends to
/// agree on orientation.
pub fn blow_up(
    g: &GroupTable,
    base: &PlanarEmbedding,
    a: usize,
    b: usize,
    variant: BlowUpVariant,
) -> Result<EmbeddedCayley> {
    if !alternation_check(g, base, a, b)? {
        return Err(Error::Precondition(
            "b-arcs do not alternate around every a-edge".into(),
        ));
    }
    let eid = g.identity();
    let binv = g.inv(b);
    let k = if variant == BlowUpVariant::R3 { 3 } else { 2 };
    let s = right_group(g.clone(), k)?;
    let set = match variant {
        BlowUpVariant::R3 => {
            ElementSet::new(vec![s.index(a, 0), s.index(b, 1), s.index(eid, 2)])
        }
        BlowUpVariant::R2 => ElementSet::new(vec![s.index(a, 0), s.index(b, 1)]),
        BlowUpVariant::R2Alt => {
            ElementSet::new(vec![s.index(eid, 0), s.index(a, 1), s.index(b, 1)])
        }
    };
    let digraph = cayley_digraph(&s, &set)?;
    let graph = underlying_graph(&digraph);

    let mut rot: Vec<Vec<usize>> = vec![Vec::new(); s.size()];
    for x in g.elements() {
        let y = g.mul(x, a); // across the gadget
        let o = g.mul(x, b); // out-bundle target column
        let w = g.mul(x, binv); // in-bundle source column
        let ix = |gg: usize, band: usize| s.index(gg, band);
        // Rotations for the gadget orientation in which the out-bundle
        // leaves past the rotation successor of the a-edge; the opposite
        // orientation is the mirrored gadget, so the lists reverse.
        let lists: Vec<(usize, Vec<usize>)> = match variant {
            BlowUpVariant::R3 => vec![
                (
                    ix(x, 0),
                    vec![ix(y, 1), ix(o, 1), ix(x, 2), ix(y, 0), ix(y, 2)],
                ),
                (ix(x, 2), vec![ix(x, 0), ix(o, 1), ix(x, 1), ix(y, 0)]),
                (
                    ix(x, 1),
                    vec![
                        ix(x, 2),
                        ix(o, 1),
                        ix(w, 1),
                        ix(w, 2),
                        ix(w, 0),
                        ix(y, 0),
                    ],
                ),
            ],
            BlowUpVariant::R2 => vec![
                (ix(x, 0), vec![ix(y, 1), ix(o, 1), ix(y, 0)]),
                (ix(x, 1), vec![ix(o, 1), ix(w, 1), ix(w, 0), ix(y, 0)]),
            ],
            BlowUpVariant::R2Alt => vec![
                (ix(x, 0), vec![ix(y, 1), ix(o, 1), ix(x, 1)]),
                (
                    ix(x, 1),
                    vec![
                        ix(y, 1),
                        ix(x, 0),
                        ix(o, 1),
                        ix(w, 1),
                        ix(w, 0),
                        ix(y, 0),
                    ],
                ),
            ],
        };
        let flip = !succ_is_out(g, base, x, a, b);
        for (v, mut list) in lists {
            if flip {
                list.reverse();
            }
            rot[v] = list;
        }
    }
    let embedding = PlanarEmbedding::from_rotation(graph, RotationSystem::new(rot));
    Ok(EmbeddedCayley {
        table: s,
        set,
        digraph,
        embedding,
    })
}
