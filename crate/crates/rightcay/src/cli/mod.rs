//! Command-line front end: construct, decide, verify, export, render.
//!
//! Exit codes: 0 success, 1 expectation failure (a verification found a
//! mismatch, or a render was refused), 2 usage or parse error, 3 resource
//! cap exceeded.

pub mod formats;
pub mod render;

use clap::{Parser, Subcommand, ValueEnum};

use crate::algebra::{parse_group_spec, ElementSet, GroupTable, RightGroupTable, right_group};
use crate::cayley::{
    cayley_digraph, group_cayley_digraph, is_strongly_connected, underlying_graph, CayleyDigraph,
    SimpleGraph,
};
use crate::characterize::{check_conjecture, decide_spec, SearchCaps};
use crate::constructions::{build_cycle_band_embedding, maschke_catalog_with_cap, materialize_entry, RingGroup};
use crate::error::Error;
use crate::planarity::{
    min_genus_bruteforce, test_planarity, verify_embedding, MinGenus, PlanarityCertificate,
};
use crate::Result;

use formats::ArcListGraph;

#[derive(Parser)]
#[command(name = "rightcay", version, about = "Cayley graphs of right groups: build, decide planarity, verify, draw")]
struct Cli {
    /// Emit machine-readable JSON instead of prose
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Decide whether G x R_k has a planar Cayley graph (exhaustive, certified)
    Characterize {
        /// Group spec: atoms Z<n>, D<n>, S4, A4, A5, E joined with `x`
        #[arg(long)]
        group: String,
        /// Number of bands (right-zero factor size)
        #[arg(long)]
        k: usize,
        /// Refuse subjects with more than this many elements
        #[arg(long)]
        max_elements: Option<usize>,
        /// Node budget for minor searches
        #[arg(long)]
        minor_budget: Option<u64>,
        /// Test every minimal candidate instead of one per band-relabeling orbit
        #[arg(long)]
        no_band_prune: bool,
        /// Also write the full JSON report here
        #[arg(long)]
        out: Option<String>,
    },
    /// Re-verify the planar-group catalog: vertex/edge counts and embeddings
    VerifyTable {
        /// Instantiate the cyclic/dihedral families up to this n
        #[arg(long, default_value_t = 8)]
        family_cap: usize,
        /// Override an expected row count, e.g. --assume 3=24/60 (negative control)
        #[arg(long)]
        assume: Vec<String>,
    },
    /// Replay the band-collapse minor property on every small right group
    Conjecture {
        #[arg(long, default_value_t = 16)]
        size_cap: usize,
        #[arg(long, default_value_t = 5_000_000)]
        minor_budget: u64,
    },
    /// Build a Cayley digraph and print its shape
    Cayley {
        #[arg(long)]
        group: String,
        /// Bands; 1 means the plain group Cayley graph
        #[arg(long, default_value_t = 1)]
        k: usize,
        /// Connection set: element names (or indices) separated by top-level commas
        #[arg(long)]
        set: String,
    },
    /// Write a Cayley digraph to DOT, JSON, or GraphML
    Export {
        #[arg(long)]
        group: String,
        #[arg(long, default_value_t = 1)]
        k: usize,
        #[arg(long)]
        set: String,
        #[arg(long, value_enum)]
        format: ExportFormat,
        /// Output path; `-` for stdout
        #[arg(long)]
        out: String,
    },
    /// Draw a planar Cayley graph as SVG with exact rational coordinates
    Render {
        #[arg(long)]
        group: String,
        #[arg(long, default_value_t = 1)]
        k: usize,
        /// Connection set (omit with --family ring for the standard ring set)
        #[arg(long)]
        set: Option<String>,
        /// Use a construction family's dedicated layout
        #[arg(long, value_enum)]
        family: Option<Family>,
        #[arg(long)]
        out: String,
    },
    /// Minimum orientable genus by exhaustive rotation-system search
    Genus {
        /// Preset graph instead of a group subject
        #[arg(long, value_enum)]
        graph: Option<PresetGraph>,
        #[arg(long)]
        group: Option<String>,
        #[arg(long, default_value_t = 1)]
        k: usize,
        #[arg(long)]
        set: Option<String>,
        #[arg(long, default_value_t = 10_000_000)]
        rotation_budget: u64,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum ExportFormat {
    Dot,
    Json,
    Graphml,
}

#[derive(Clone, Copy, ValueEnum)]
enum Family {
    Ring,
}

#[derive(Clone, Copy, ValueEnum)]
enum PresetGraph {
    K4,
    K5,
    K33,
}

pub fn run() -> i32 {
    let cli = Cli::parse();
    match dispatch(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            exit_code_of(&e)
        }
    }
}

fn exit_code_of(e: &Error) -> i32 {
    match e {
        Error::BadSpec(_)
        | Error::BadTable(_)
        | Error::Empty(_)
        | Error::Disconnected(_)
        | Error::Precondition(_) => 2,
        Error::CapExceeded { .. } => 3,
        _ => 1,
    }
}

fn env_u64(key: &str) -> Option<u64> {
    std::env::var(key).ok()?.trim().parse().ok()
}

/// Defaults, overridable by RIGHTCAY_MAX_ELEMENTS / RIGHTCAY_MINOR_BUDGET.
fn default_caps() -> SearchCaps {
    let mut caps = SearchCaps::default();
    if let Some(v) = env_u64("RIGHTCAY_MAX_ELEMENTS") {
        caps.max_elements = v as usize;
    }
    if let Some(v) = env_u64("RIGHTCAY_MINOR_BUDGET") {
        caps.minor_budget = v;
    }
    caps
}

/// Split on commas and semicolons at parenthesis depth zero — element
/// names themselves contain commas.
fn split_top_level(s: &str) -> Vec<String> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut cur = String::new();
    for ch in s.chars() {
        match ch {
            '(' => {
                depth += 1;
                cur.push(ch);
            }
            ')' => {
                depth -= 1;
                cur.push(ch);
            }
            ',' | ';' if depth == 0 => {
                if !cur.trim().is_empty() {
                    out.push(cur.trim().to_string());
                }
                cur.clear();
            }
            _ => cur.push(ch),
        }
    }
    if !cur.trim().is_empty() {
        out.push(cur.trim().to_string());
    }
    out
}

enum Subject {
    Group(GroupTable),
    Right(RightGroupTable),
}

impl Subject {
    fn lookup(&self, token: &str) -> Option<usize> {
        if let Ok(idx) = token.parse::<usize>() {
            let n = match self {
                Subject::Group(g) => g.order(),
                Subject::Right(s) => s.size(),
            };
            return (idx < n).then_some(idx);
        }
        match self {
            Subject::Group(g) => g.element_by_name(token),
            Subject::Right(s) => s.element_by_name(token),
        }
    }
}

fn build_subject(spec: &str, k: usize) -> Result<Subject> {
    let g = parse_group_spec(spec)?;
    if k <= 1 {
        Ok(Subject::Group(g))
    } else {
        Ok(Subject::Right(right_group(g, k)?))
    }
}

fn build_digraph(spec: &str, k: usize, set: &str) -> Result<CayleyDigraph> {
    let subject = build_subject(spec, k)?;
    let tokens = split_top_level(set);
    if tokens.is_empty() {
        return Err(Error::Empty("connection set"));
    }
    let mut members = Vec::with_capacity(tokens.len());
    for t in &tokens {
        members.push(
            subject
                .lookup(t)
                .ok_or_else(|| Error::BadSpec(format!("element `{t}` not in {spec}")))?,
        );
    }
    let c = ElementSet::new(members);
    match &subject {
        Subject::Group(g) => group_cayley_digraph(g, &c),
        Subject::Right(s) => cayley_digraph(s, &c),
    }
}

fn write_out(path: &str, content: &str) -> Result<()> {
    if path == "-" {
        print!("{content}");
        Ok(())
    } else {
        std::fs::write(path, content)?;
        Ok(())
    }
}

fn dispatch(cli: Cli) -> Result<i32> {
    match cli.cmd {
        Cmd::Characterize {
            group,
            k,
            max_elements,
            minor_budget,
            no_band_prune,
            out,
        } => {
            let mut caps = default_caps();
            if let Some(v) = max_elements {
                caps.max_elements = v;
            }
            if let Some(v) = minor_budget {
                caps.minor_budget = v;
            }
            caps.band_prune = !no_band_prune;
            let verdict = decide_spec(&group, k, &caps)?;
            let report = serde_json::to_string_pretty(&verdict)?;
            if let Some(path) = out {
                std::fs::write(path, format!("{report}\n"))?;
            }
            if cli.json {
                println!("{report}");
            } else {
                println!("{} x R{}: {}", group, k, verdict.verdict);
                println!(
                    "  searched |C| <= {}; tested {} minimal candidates ({} more covered by reduction)",
                    verdict.caps.set_size_bound, verdict.tested, verdict.covered_by_reduction
                );
                println!(
                    "  rejected: {} non-generating, {} over the edge bound, {} by Kuratowski witness",
                    verdict.rejected_by.projection,
                    verdict.rejected_by.edge_bound,
                    verdict.rejected_by.kuratowski
                );
                if let Some(cert) = &verdict.certificate {
                    println!(
                        "  planar on {{{}}} with {} faces",
                        cert.connection_set.join(", "),
                        cert.embedding.faces().len()
                    );
                }
            }
            Ok(0)
        }
        Cmd::VerifyTable { family_cap, assume } => {
            let overrides = parse_assumptions(&assume)?;
            let rows = maschke_catalog_with_cap(family_cap);
            let mut failures = 0usize;
            let mut lines = Vec::new();
            for (i, row) in rows.iter().enumerate() {
                let (g, c) = materialize_entry(row)?;
                let graph = underlying_graph(&group_cayley_digraph(&g, &c)?);
                let (want_v, want_e) = overrides
                    .iter()
                    .find(|(idx, _, _)| *idx == i)
                    .map(|&(_, v, e)| (v, e))
                    .unwrap_or((row.expected_vertices, row.expected_edges));
                let planar = match test_planarity(&graph) {
                    PlanarityCertificate::Embedding(emb) => verify_embedding(&emb)?,
                    PlanarityCertificate::Witness(_) => false,
                };
                let ok =
                    graph.vertex_count() == want_v && graph.edge_count() == want_e && planar;
                if !ok {
                    failures += 1;
                }
                lines.push(format!(
                    "row {i:2} {} {{{}}}: {} vertices {} edges {} -> {}",
                    row.group,
                    row.generators.join(", "),
                    graph.vertex_count(),
                    graph.edge_count(),
                    if planar { "planar" } else { "NOT planar" },
                    if ok { "ok" } else { "MISMATCH" },
                ));
            }
            if cli.json {
                #[derive(serde::Serialize)]
                struct TableReport {
                    rows: usize,
                    failures: usize,
                    lines: Vec<String>,
                }
                println!(
                    "{}",
                    serde_json::to_string_pretty(&TableReport {
                        rows: rows.len(),
                        failures,
                        lines
                    })?
                );
            } else {
                for l in &lines {
                    println!("{l}");
                }
                println!(
                    "{} rows, {} failures",
                    rows.len(),
                    failures
                );
            }
            Ok(if failures == 0 { 0 } else { 1 })
        }
        Cmd::Conjecture {
            size_cap,
            minor_budget,
        } => {
            let report = check_conjecture(size_cap, minor_budget)?;
            if cli.json {
                println!("{}", serde_json::to_string_pretty(&report)?);
            } else {
                println!(
                    "checked {} minimal sets over {} groups: {} single-band, {} by band collapse, {} by search",
                    report.cases,
                    report.groups.len(),
                    report.trivial_single_band,
                    report.via_factor,
                    report.via_search
                );
                for c in &report.counterexamples {
                    println!("  counterexample: {c}");
                }
                for u in &report.unresolved {
                    println!("  unresolved (budget): {u}");
                }
            }
            Ok(if report.counterexamples.is_empty() && report.unresolved.is_empty() {
                0
            } else {
                1
            })
        }
        Cmd::Cayley { group, k, set } => {
            let digraph = build_digraph(&group, k, &set)?;
            let graph = underlying_graph(&digraph);
            let strong = is_strongly_connected(&digraph);
            if cli.json {
                #[derive(serde::Serialize)]
                struct CayleyReport {
                    vertices: usize,
                    arcs: usize,
                    simple_edges: usize,
                    strongly_connected: bool,
                    planar: bool,
                    graph: ArcListGraph,
                }
                let planar = matches!(test_planarity(&graph), PlanarityCertificate::Embedding(_));
                println!(
                    "{}",
                    serde_json::to_string_pretty(&CayleyReport {
                        vertices: digraph.vertex_count,
                        arcs: digraph.arcs.len(),
                        simple_edges: graph.edge_count(),
                        strongly_connected: strong,
                        planar,
                        graph: ArcListGraph::from_digraph(&digraph),
                    })?
                );
            } else {
                let planar = matches!(test_planarity(&graph), PlanarityCertificate::Embedding(_));
                println!(
                    "{} vertices, {} arcs, {} simple edges; strongly connected: {}; planar: {}",
                    digraph.vertex_count,
                    digraph.arcs.len(),
                    graph.edge_count(),
                    strong,
                    planar
                );
            }
            Ok(0)
        }
        Cmd::Export {
            group,
            k,
            set,
            format,
            out,
        } => {
            let digraph = build_digraph(&group, k, &set)?;
            let arclist = ArcListGraph::from_digraph(&digraph);
            let content = match format {
                ExportFormat::Dot => formats::to_dot(&arclist),
                ExportFormat::Json => formats::to_json(&arclist)?,
                ExportFormat::Graphml => formats::to_graphml(&arclist),
            };
            write_out(&out, &content)?;
            if matches!(format, ExportFormat::Json) && out != "-" {
                // round-trip audit: the file must re-import to the same arcs
                let back = formats::from_json(&std::fs::read_to_string(&out)?)?;
                if back != arclist {
                    return Err(Error::BadTable("JSON round-trip mismatch".into()));
                }
            }
            if out != "-" && !cli.json {
                eprintln!(
                    "wrote {} ({} vertices, {} arcs)",
                    out,
                    arclist.vertices.len(),
                    arclist.arcs.len()
                );
            }
            Ok(0)
        }
        Cmd::Render {
            group,
            k,
            set,
            family,
            out,
        } => render_cmd(&group, k, set.as_deref(), family, &out, cli.json),
        Cmd::Genus {
            graph,
            group,
            k,
            set,
            rotation_budget,
        } => {
            let (g, label): (SimpleGraph, String) = match (graph, group) {
                (Some(preset), _) => {
                    let (g, name) = match preset {
                        PresetGraph::K4 => (SimpleGraph::complete(4), "K4"),
                        PresetGraph::K5 => (SimpleGraph::complete(5), "K5"),
                        PresetGraph::K33 => (SimpleGraph::complete_bipartite(3, 3), "K3,3"),
                    };
                    (g, name.to_string())
                }
                (None, Some(spec)) => {
                    let set = set.ok_or(Error::Empty("connection set"))?;
                    let digraph = build_digraph(&spec, k, &set)?;
                    (underlying_graph(&digraph), format!("{spec} x R{k}"))
                }
                (None, None) => {
                    return Err(Error::Empty("graph choice (--graph or --group)"));
                }
            };
            match min_genus_bruteforce(&g, rotation_budget)? {
                MinGenus::Exact(genus) => {
                    if cli.json {
                        println!("{{\"graph\": \"{label}\", \"genus\": {genus}}}");
                    } else {
                        println!("{label}: minimum orientable genus {genus}");
                    }
                    Ok(0)
                }
                MinGenus::Exceeded => {
                    eprintln!("rotation budget {rotation_budget} exceeded for {label}");
                    Ok(3)
                }
            }
        }
    }
}

fn parse_assumptions(specs: &[String]) -> Result<Vec<(usize, usize, usize)>> {
    let mut out = Vec::new();
    for s in specs {
        let bad = || Error::BadSpec(format!("assume `{s}` (want IDX=V/E)"));
        let (idx, counts) = s.split_once('=').ok_or_else(bad)?;
        let (v, e) = counts.split_once('/').ok_or_else(bad)?;
        out.push((
            idx.trim().parse().map_err(|_| bad())?,
            v.trim().parse().map_err(|_| bad())?,
            e.trim().parse().map_err(|_| bad())?,
        ));
    }
    Ok(out)
}

fn ring_group_of(spec: &str) -> Option<RingGroup> {
    let t = spec.trim();
    if let Some(n) = t.strip_prefix('Z').or_else(|| t.strip_prefix('z')) {
        return n.parse().ok().map(RingGroup::Cyclic);
    }
    if let Some(n) = t.strip_prefix('D').or_else(|| t.strip_prefix('d')) {
        return n.parse().ok().map(RingGroup::Dihedral);
    }
    None
}

fn render_cmd(
    group: &str,
    k: usize,
    set: Option<&str>,
    family: Option<Family>,
    out: &str,
    json: bool,
) -> Result<i32> {
    let title = format!("Cay({group} x R{k})");
    if let Some(Family::Ring) = family {
        let which = ring_group_of(group).ok_or_else(|| {
            Error::BadSpec(format!("{group} (ring family wants Z<n> or D<n>)"))
        })?;
        let built = build_cycle_band_embedding(which, k)?;
        let graph = built.embedding.graph();
        let names: Vec<String> = built.digraph.vertex_names.clone();
        match render::ring_layout(which, k, &built.table) {
            Ok(points) => {
                let crossings = render::crossing_pairs(&points, graph.edges());
                if !crossings.is_empty() {
                    return Err(Error::Precondition(format!(
                        "ring layout produced {} crossing pairs",
                        crossings.len()
                    )));
                }
                write_out(out, &render::svg_document(&title, &points, graph.edges(), &names))?;
            }
            Err(_) => {
                // fewer than three columns: no annular drawing, dump faces
                write_out(out, &render::face_dump_svg(&title, &built.embedding, &names))?;
            }
        }
        if !json {
            eprintln!("wrote {out}");
        }
        return Ok(0);
    }
    let set = set.ok_or(Error::Empty("connection set"))?;
    let digraph = build_digraph(group, k, set)?;
    let graph = underlying_graph(&digraph);
    match test_planarity(&graph) {
        PlanarityCertificate::Witness(w) => {
            eprintln!(
                "render refused: graph is non-planar; witness: {}",
                serde_json::to_string(&w)?
            );
            Ok(1)
        }
        PlanarityCertificate::Embedding(emb) => {
            let names = digraph.vertex_names.clone();
            let content = if graph.is_three_connected() {
                let points = render::tutte_layout(&graph, &emb)?;
                let crossings = render::crossing_pairs(&points, graph.edges());
                if !crossings.is_empty() {
                    return Err(Error::Precondition(format!(
                        "layout produced {} crossing pairs",
                        crossings.len()
                    )));
                }
                render::svg_document(&title, &points, graph.edges(), &names)
            } else {
                render::face_dump_svg(&title, &emb, &names)
            };
            write_out(out, &content)?;
            if !json {
                eprintln!("wrote {out}");
            }
            Ok(0)
        }
    }
}
