//! Serialization of Cayley digraphs: DOT, a JSON arc-list schema, GraphML.
//! All three are deterministic — fixed vertex order, arcs in construction
//! order — so identical inputs give byte-identical files.

use serde::{Deserialize, Serialize};

use crate::cayley::{Arc, CayleyDigraph};
use crate::Result;

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct ArcListGraph {
    pub vertices: Vec<String>,
    pub arcs: Vec<ArcRecord>,
}

#[derive(Clone, Copy, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct ArcRecord {
    pub src: usize,
    pub dst: usize,
    pub label: usize,
}

impl ArcListGraph {
    pub fn from_digraph(d: &CayleyDigraph) -> ArcListGraph {
        ArcListGraph {
            vertices: d.vertex_names.clone(),
            arcs: d
                .arcs
                .iter()
                .map(|a| ArcRecord {
                    src: a.src,
                    dst: a.dst,
                    label: a.label,
                })
                .collect(),
        }
    }

    pub fn arcs_as_tuples(&self) -> Vec<Arc> {
        self.arcs
            .iter()
            .map(|a| Arc {
                src: a.src,
                dst: a.dst,
                label: a.label,
            })
            .collect()
    }
}

fn dot_escape(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}

/// DOT digraph; every arc carries the inducing connection element as a
/// `label="c=<index>"` attribute, the index being the element's index in S.
pub fn to_dot(g: &ArcListGraph) -> String {
    let mut out = String::from("digraph cayley {\n");
    for (i, name) in g.vertices.iter().enumerate() {
        out.push_str(&format!("  {i} [label=\"{}\"];\n", dot_escape(name)));
    }
    for a in &g.arcs {
        out.push_str(&format!(
            "  {} -> {} [label=\"c={}\"];\n",
            a.src, a.dst, a.label
        ));
    }
    out.push_str("}\n");
    out
}

pub fn to_json(g: &ArcListGraph) -> Result<String> {
    let mut s = serde_json::to_string_pretty(g)?;
    s.push('\n');
    Ok(s)
}

pub fn from_json(text: &str) -> Result<ArcListGraph> {
    Ok(serde_json::from_str(text)?)
}

fn xml_escape(s: &str) -> String {
    s.replace('&', "&amp;")
        .replace('<', "&lt;")
        .replace('>', "&gt;")
        .replace('"', "&quot;")
}

pub fn to_graphml(g: &ArcListGraph) -> String {
    let mut out = String::from(
        "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n\
         <graphml xmlns=\"http://graphml.graphdrawing.org/xmlns\">\n\
         \x20 <key id=\"name\" for=\"node\" attr.name=\"name\" attr.type=\"string\"/>\n\
         \x20 <key id=\"c\" for=\"edge\" attr.name=\"c\" attr.type=\"int\"/>\n\
         \x20 <graph id=\"cayley\" edgedefault=\"directed\">\n",
    );
    for (i, name) in g.vertices.iter().enumerate() {
        out.push_str(&format!(
            "    <node id=\"n{i}\"><data key=\"name\">{}</data></node>\n",
            xml_escape(name)
        ));
    }
    for a in &g.arcs {
        out.push_str(&format!(
            "    <edge source=\"n{}\" target=\"n{}\"><data key=\"c\">{}</data></edge>\n",
            a.src, a.dst, a.label
        ));
    }
    out.push_str("  </graph>\n</graphml>\n");
    out
}
