//! Straight-line drawings over exact rational coordinates: barycentric
//! (convex outer face) layout for 3-connected planar graphs, concentric
//! ring layout for the cycle-band family, and an exact segment-intersection
//! pass that certifies a drawing crossing-free.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};

use crate::algebra::RightGroupTable;
use crate::cayley::SimpleGraph;
use crate::constructions::RingGroup;
use crate::error::Error;
use crate::planarity::PlanarEmbedding;
use crate::Result;

pub type Coord = (BigRational, BigRational);

fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// m rational points on the unit circle in counterclockwise order, roughly
/// evenly spaced, via the tangent-half-angle parametrization (so each point
/// lies exactly on the circle).
pub fn circle_points(m: usize) -> Vec<Coord> {
    assert!(m >= 3, "need at least three directions");
    let mut pts = Vec::with_capacity(m);
    let denom: i64 = 4096;
    let mut last: Option<BigRational> = None;
    for t in 0..m {
        let theta = -std::f64::consts::PI
            + std::f64::consts::PI / m as f64
            + 2.0 * std::f64::consts::PI * t as f64 / m as f64;
        let u = rat(((theta / 2.0).tan() * denom as f64).round() as i64, denom);
        if let Some(prev) = &last {
            assert!(*prev < u, "tangent samples must stay strictly increasing");
        }
        last = Some(u.clone());
        let u2 = &u * &u;
        let den = BigRational::from_integer(BigInt::from(1)) + &u2;
        let x = (BigRational::from_integer(BigInt::from(1)) - &u2) / den.clone();
        let y = (rat(2, 1) * u) / den;
        pts.push((x, y));
    }
    pts
}

fn scale(p: &Coord, f: &BigRational) -> Coord {
    (&p.0 * f, &p.1 * f)
}

fn midpoint(a: &Coord, b: &Coord) -> Coord {
    ((&a.0 + &b.0) / rat(2, 1), (&a.1 + &b.1) / rat(2, 1))
}

// ---------------------------------------------------------------------------
// Tutte barycentric layout

fn canonical_cycle(walk: &[usize]) -> Vec<usize> {
    let n = walk.len();
    let best = (0..n).min_by_key(|&i| {
        let mut rotated: Vec<usize> = Vec::with_capacity(n);
        rotated.extend_from_slice(&walk[i..]);
        rotated.extend_from_slice(&walk[..i]);
        rotated
    });
    let i = best.unwrap_or(0);
    let mut out = Vec::with_capacity(n);
    out.extend_from_slice(&walk[i..]);
    out.extend_from_slice(&walk[..i]);
    out
}

/// The deterministic outer-face pick: a longest face, ties broken by the
/// lexicographically least rotation of its vertex walk.
pub fn outer_face(embedding: &PlanarEmbedding) -> Vec<usize> {
    let mut best: Option<Vec<usize>> = None;
    for face in embedding.faces() {
        let walk: Vec<usize> = face.iter().map(|&(u, _)| u).collect();
        let cand = canonical_cycle(&walk);
        let better = match &best {
            None => true,
            Some(b) => cand.len() > b.len() || (cand.len() == b.len() && cand < *b),
        };
        if better {
            best = Some(cand);
        }
    }
    best.unwrap_or_default()
}

/// Exact Gaussian elimination with two right-hand sides.
fn solve_two(
    mut a: Vec<Vec<BigRational>>,
    mut bx: Vec<BigRational>,
    mut by: Vec<BigRational>,
) -> Result<(Vec<BigRational>, Vec<BigRational>)> {
    let n = a.len();
    for col in 0..n {
        let pivot = (col..n)
            .find(|&r| !a[r][col].is_zero())
            .ok_or_else(|| Error::Precondition("layout system is singular".into()))?;
        a.swap(col, pivot);
        bx.swap(col, pivot);
        by.swap(col, pivot);
        let inv = a[col][col].clone();
        for r in col + 1..n {
            if a[r][col].is_zero() {
                continue;
            }
            let f = &a[r][col] / &inv;
            for c in col..n {
                let sub = &f * &a[col][c];
                a[r][c] -= sub;
            }
            let sx = &f * &bx[col];
            bx[r] -= sx;
            let sy = &f * &by[col];
            by[r] -= sy;
        }
    }
    for col in (0..n).rev() {
        for r in 0..col {
            if a[r][col].is_zero() {
                continue;
            }
            let f = &a[r][col] / &a[col][col];
            let sx = &f * &bx[col];
            bx[r] -= sx;
            let sy = &f * &by[col];
            by[r] -= sy;
            a[r][col] = BigRational::zero();
        }
        let d = a[col][col].clone();
        bx[col] /= d.clone();
        by[col] /= d;
    }
    Ok((bx, by))
}

/// Barycentric straight-line layout: the outer face pinned to a convex
/// polygon on the unit circle, every interior vertex at the average of its
/// neighbors, solved exactly. Crossing-free for 3-connected planar graphs.
pub fn tutte_layout(graph: &SimpleGraph, embedding: &PlanarEmbedding) -> Result<Vec<Coord>> {
    if !graph.is_three_connected() {
        return Err(Error::Precondition(
            "barycentric layout needs a 3-connected graph".into(),
        ));
    }
    let outer = outer_face(embedding);
    if outer.len() < 3 {
        return Err(Error::Precondition("outer face too small".into()));
    }
    let n = graph.vertex_count();
    let ring = circle_points(outer.len());
    let mut pinned: Vec<Option<Coord>> = vec![None; n];
    for (i, &v) in outer.iter().enumerate() {
        pinned[v] = Some(ring[i].clone());
    }
    let interior: Vec<usize> = (0..n).filter(|&v| pinned[v].is_none()).collect();
    let slot: Vec<Option<usize>> = {
        let mut s = vec![None; n];
        for (i, &v) in interior.iter().enumerate() {
            s[v] = Some(i);
        }
        s
    };
    let adj = graph.adjacency();
    let m = interior.len();
    let mut a = vec![vec![BigRational::zero(); m]; m];
    let mut bx = vec![BigRational::zero(); m];
    let mut by = vec![BigRational::zero(); m];
    for (i, &v) in interior.iter().enumerate() {
        a[i][i] = BigRational::from_integer(BigInt::from(adj[v].len() as i64));
        for &u in &adj[v] {
            match &pinned[u] {
                Some(p) => {
                    bx[i] += &p.0;
                    by[i] += &p.1;
                }
                None => {
                    let j = slot[u].expect("unpinned vertex has a slot");
                    a[i][j] -= BigRational::from_integer(BigInt::from(1));
                }
            }
        }
    }
    let (xs, ys) = if m > 0 {
        solve_two(a, bx, by)?
    } else {
        (Vec::new(), Vec::new())
    };
    let mut out: Vec<Coord> = Vec::with_capacity(n);
    for v in 0..n {
        match &pinned[v] {
            Some(p) => out.push(p.clone()),
            None => {
                let i = slot[v].expect("interior slot");
                out.push((xs[i].clone(), ys[i].clone()));
            }
        }
    }
    Ok(out)
}

// ---------------------------------------------------------------------------
// Ring layout for the cycle-band family

/// Concentric drawing of the cycle-band graphs, matching the vertex
/// indexing of `build_cycle_band_embedding`. Cyclic subjects put the spine
/// on the unit circle with the band vertices hung inside each sector;
/// dihedral subjects alternate the bands' radial order column by column.
pub fn ring_layout(which: RingGroup, k: usize, table: &RightGroupTable) -> Result<Vec<Coord>> {
    if !(k == 2 || k == 3) {
        return Err(Error::BadSpec(format!("band count {k} (want 2 or 3)")));
    }
    let mut points: Vec<Coord> = vec![(BigRational::zero(), BigRational::zero()); table.size()];
    match which {
        RingGroup::Cyclic(n) => {
            if n < 3 {
                return Err(Error::Precondition(
                    "ring layout needs at least three columns".into(),
                ));
            }
            let ring = circle_points(n);
            for a in 0..n {
                let up = (a + 1) % n;
                let mid = midpoint(&ring[a], &ring[up]);
                points[table.index(a, 0)] = ring[a].clone();
                // the sector cell: band 1 just inside the chord, band 2
                // (when present) deeper, keeping the cell a nested triangle
                if k == 3 {
                    points[table.index(a, 1)] = scale(&mid, &rat(9, 10));
                    points[table.index(a, 2)] = scale(&mid, &rat(3, 5));
                } else {
                    points[table.index(a, 1)] = scale(&mid, &rat(4, 5));
                }
            }
        }
        RingGroup::Dihedral(n) => {
            if n < 2 {
                return Err(Error::BadSpec(format!("D{n}")));
            }
            let g = table.group();
            let (ra, rb) = if n == 2 {
                (2, 3)
            } else {
                (
                    crate::algebra::dihedral_reflection_12(n),
                    crate::algebra::dihedral_reflection_13(n),
                )
            };
            let m = 2 * n;
            let mut col = vec![0usize; m];
            for t in 1..m {
                let gen = if (t - 1) % 2 == 0 { ra } else { rb };
                col[t] = g.mul(col[t - 1], gen);
            }
            let ring = circle_points(m);
            for (t, &ct) in col.iter().enumerate() {
                // radial order alternates with column parity so each
                // sector's fans land hub-side without interleaving
                let radius = |band: usize| -> BigRational {
                    let inner = rat(1, 2);
                    let mid = rat(3, 4);
                    let outer = rat(1, 1);
                    if k == 3 {
                        match (t % 2, band) {
                            (0, 1) | (1, 0) => inner,
                            (_, 2) => mid,
                            _ => outer,
                        }
                    } else {
                        match (t % 2, band) {
                            (0, 1) | (1, 0) => inner,
                            _ => outer,
                        }
                    }
                };
                for band in 0..k {
                    points[table.index(ct, band)] = scale(&ring[t], &radius(band));
                }
            }
        }
    }
    Ok(points)
}

// ---------------------------------------------------------------------------
// Exact crossing certification

fn orient(a: &Coord, b: &Coord, c: &Coord) -> i8 {
    let v = (&b.0 - &a.0) * (&c.1 - &a.1) - (&b.1 - &a.1) * (&c.0 - &a.0);
    match v.cmp(&BigRational::zero()) {
        std::cmp::Ordering::Less => -1,
        std::cmp::Ordering::Equal => 0,
        std::cmp::Ordering::Greater => 1,
    }
}

fn within(a: &BigRational, p: &BigRational, b: &BigRational) -> bool {
    (a.min(b) <= p) && (p <= a.max(b))
}

/// Collinearity assumed: does p lie on segment ab?
fn on_segment(a: &Coord, b: &Coord, p: &Coord) -> bool {
    within(&a.0, &p.0, &b.0) && within(&a.1, &p.1, &b.1)
}

fn segments_intersect(a: &Coord, b: &Coord, c: &Coord, d: &Coord) -> bool {
    let o1 = orient(a, b, c);
    let o2 = orient(a, b, d);
    let o3 = orient(c, d, a);
    let o4 = orient(c, d, b);
    if o1 != o2 && o3 != o4 && o1 != 0 && o2 != 0 && o3 != 0 && o4 != 0 {
        return true;
    }
    (o1 == 0 && on_segment(a, b, c))
        || (o2 == 0 && on_segment(a, b, d))
        || (o3 == 0 && on_segment(c, d, a))
        || (o4 == 0 && on_segment(c, d, b))
}

/// Every pair of drawn segments that meets outside a shared endpoint, as
/// edge-index pairs; empty means the drawing is certified crossing-free.
/// Exact arithmetic throughout — no epsilons.
pub fn crossing_pairs(points: &[Coord], edges: &[(usize, usize)]) -> Vec<(usize, usize)> {
    let mut bad = Vec::new();
    for i in 0..edges.len() {
        let (a, b) = edges[i];
        if points[a] == points[b] {
            bad.push((i, i));
            continue;
        }
        for j in i + 1..edges.len() {
            let (c, d) = edges[j];
            let shared: Vec<usize> = [a, b]
                .iter()
                .filter(|v| **v == c || **v == d)
                .copied()
                .collect();
            match shared.len() {
                2 => bad.push((i, j)), // the same segment drawn twice
                1 => {
                    // adjacent edges may only touch at the shared vertex;
                    // collinear same-direction pairs overlap
                    let s = shared[0];
                    let p = if a == s { b } else { a };
                    let q = if c == s { d } else { c };
                    if orient(&points[s], &points[p], &points[q]) == 0 {
                        let dot = (&points[p].0 - &points[s].0)
                            * (&points[q].0 - &points[s].0)
                            + (&points[p].1 - &points[s].1) * (&points[q].1 - &points[s].1);
                        if dot > BigRational::zero() {
                            bad.push((i, j));
                        }
                    }
                }
                _ => {
                    if segments_intersect(&points[a], &points[b], &points[c], &points[d]) {
                        bad.push((i, j));
                    }
                }
            }
        }
    }
    bad
}

// ---------------------------------------------------------------------------
// SVG

fn fmt_f(v: &BigRational) -> String {
    format!("{:.5}", v.to_f64().unwrap_or(0.0))
}

/// Straight-line SVG; each vertex carries its exact rational coordinates in
/// `data-x`/`data-y` so the drawing can be re-audited without parsing
/// floats. The y axis is flipped for display only.
pub fn svg_document(
    title: &str,
    points: &[Coord],
    edges: &[(usize, usize)],
    names: &[String],
) -> String {
    let mut out = String::new();
    out.push_str(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"-1.15 -1.15 2.3 2.3\" \
         width=\"720\" height=\"720\">\n",
    );
    out.push_str(&format!("  <title>{}</title>\n", xml_text(title)));
    out.push_str("  <g stroke=\"#444444\" stroke-width=\"0.009\" fill=\"none\">\n");
    for &(u, v) in edges {
        out.push_str(&format!(
            "    <line x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\"/>\n",
            fmt_f(&points[u].0),
            fmt_f(&(-points[u].1.clone())),
            fmt_f(&points[v].0),
            fmt_f(&(-points[v].1.clone())),
        ));
    }
    out.push_str("  </g>\n  <g fill=\"#1f4e79\">\n");
    for (v, p) in points.iter().enumerate() {
        out.push_str(&format!(
            "    <circle cx=\"{}\" cy=\"{}\" r=\"0.022\" data-x=\"{}\" data-y=\"{}\">\
             <title>{}</title></circle>\n",
            fmt_f(&p.0),
            fmt_f(&(-p.1.clone())),
            p.0,
            p.1,
            xml_text(&names[v]),
        ));
    }
    out.push_str("  </g>\n</svg>\n");
    out
}

fn xml_text(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

/// When no coordinate path applies, the drawing degrades to the embedding's
/// face walks as text — still a faithful description of the plane graph.
pub fn face_dump_svg(title: &str, embedding: &PlanarEmbedding, names: &[String]) -> String {
    let faces = embedding.faces();
    let height = 40 + 22 * faces.len();
    let mut out = String::new();
    out.push_str(&format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 960 {height}\" \
         width=\"960\" height=\"{height}\">\n",
    ));
    out.push_str(&format!(
        "  <title>{} (face walks)</title>\n",
        xml_text(title)
    ));
    for (i, face) in faces.iter().enumerate() {
        let walk: Vec<&str> = face.iter().map(|&(u, _)| names[u].as_str()).collect();
        out.push_str(&format!(
            "  <text x=\"12\" y=\"{}\" font-family=\"monospace\" font-size=\"14\">face {}: {}</text>\n",
            30 + 22 * i,
            i,
            xml_text(&walk.join(" "))
        ));
    }
    out.push_str("</svg>\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{parse_group_spec, ElementSet};
    use crate::cayley::{group_cayley_digraph, underlying_graph};
    use crate::constructions::build_cycle_band_embedding;
    use crate::planarity::{test_planarity, PlanarityCertificate};

    fn embed(graph: &SimpleGraph) -> PlanarEmbedding {
        match test_planarity(graph) {
            PlanarityCertificate::Embedding(e) => e,
            PlanarityCertificate::Witness(_) => panic!("expected planar input"),
        }
    }

    #[test]
    fn circle_points_are_on_the_circle_in_order() {
        for m in [3, 5, 8, 16] {
            let pts = circle_points(m);
            for (x, y) in &pts {
                assert_eq!(x * x + y * y, rat(1, 1), "m={m}");
            }
            let angles: Vec<f64> = pts
                .iter()
                .map(|(x, y)| y.to_f64().unwrap().atan2(x.to_f64().unwrap()))
                .collect();
            for w in angles.windows(2) {
                assert!(w[0] < w[1], "m={m}: {angles:?}");
            }
        }
    }

    #[test]
    fn tetrahedron_layout_is_crossing_free() {
        let g = SimpleGraph::complete(4);
        let emb = embed(&g);
        let pts = tutte_layout(&g, &emb).unwrap();
        assert!(crossing_pairs(&pts, g.edges()).is_empty());
    }

    #[test]
    fn truncated_tetrahedron_layout_is_crossing_free() {
        // the order-12 rotation group on a double transposition and a
        // 3-cycle gives the truncated tetrahedron
        let a4 = parse_group_spec("A4").unwrap();
        let c = ElementSet::new(vec![
            a4.element_by_name("(12)(34)").unwrap(),
            a4.element_by_name("(123)").unwrap(),
        ]);
        let g = underlying_graph(&group_cayley_digraph(&a4, &c).unwrap());
        assert_eq!((g.vertex_count(), g.edge_count()), (12, 18));
        let emb = embed(&g);
        let pts = tutte_layout(&g, &emb).unwrap();
        assert!(crossing_pairs(&pts, g.edges()).is_empty());
    }

    #[test]
    fn ring_layouts_are_crossing_free() {
        for n in [3usize, 4, 5, 8] {
            for k in [2usize, 3] {
                let built = build_cycle_band_embedding(RingGroup::Cyclic(n), k).unwrap();
                let pts = ring_layout(RingGroup::Cyclic(n), k, &built.table).unwrap();
                let graph = built.embedding.graph();
                let bad = crossing_pairs(&pts, graph.edges());
                assert!(bad.is_empty(), "Z{n} k={k}: {bad:?}");
            }
        }
        for n in [2usize, 3, 4, 6] {
            for k in [2usize, 3] {
                let built = build_cycle_band_embedding(RingGroup::Dihedral(n), k).unwrap();
                let pts = ring_layout(RingGroup::Dihedral(n), k, &built.table).unwrap();
                let graph = built.embedding.graph();
                let bad = crossing_pairs(&pts, graph.edges());
                assert!(bad.is_empty(), "D{n} k={k}: {bad:?}");
            }
        }
    }

    #[test]
    fn crossing_checker_catches_a_crossing() {
        let points: Vec<Coord> = vec![
            (rat(0, 1), rat(0, 1)),
            (rat(1, 1), rat(1, 1)),
            (rat(0, 1), rat(1, 1)),
            (rat(1, 1), rat(0, 1)),
        ];
        let edges = vec![(0usize, 1usize), (2, 3)];
        assert_eq!(crossing_pairs(&points, &edges).len(), 1);
        // touching at an interior point is also rejected
        let points2: Vec<Coord> = vec![
            (rat(0, 1), rat(0, 1)),
            (rat(2, 1), rat(0, 1)),
            (rat(1, 1), rat(0, 1)),
            (rat(1, 1), rat(1, 1)),
        ];
        let edges2 = vec![(0usize, 1usize), (2, 3)];
        assert_eq!(crossing_pairs(&points2, &edges2).len(), 1);
        // collinear overlap through a shared endpoint is rejected
        let points3: Vec<Coord> = vec![
            (rat(0, 1), rat(0, 1)),
            (rat(2, 1), rat(0, 1)),
            (rat(1, 1), rat(0, 1)),
        ];
        let edges3 = vec![(0usize, 1usize), (0, 2)];
        assert_eq!(crossing_pairs(&points3, &edges3).len(), 1);
    }

    #[test]
    fn svg_embeds_exact_coordinates() {
        let g = SimpleGraph::complete(4);
        let emb = embed(&g);
        let pts = tutte_layout(&g, &emb).unwrap();
        let names: Vec<String> = (0..4).map(|i| format!("v{i}")).collect();
        let svg = svg_document("K4", &pts, g.edges(), &names);
        assert_eq!(svg.matches("<line ").count(), 6);
        assert_eq!(svg.matches("<circle ").count(), 4);
        assert!(svg.contains("data-x="));
        let again = svg_document("K4", &pts, g.edges(), &names);
        assert_eq!(svg, again);
    }
}
