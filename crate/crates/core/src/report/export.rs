use std::fmt::Write as _;
use std::str::FromStr;

use crate::error::Error;
use crate::network::DependencyNetwork;
use crate::partition::Partition;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ExportFormat {
    EdgeList,
    GraphMl,
    Dot,
}

impl FromStr for ExportFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        match s {
            "edgelist" | "tsv" => Ok(ExportFormat::EdgeList),
            "graphml" => Ok(ExportFormat::GraphMl),
            "dot" => Ok(ExportFormat::Dot),
            _ => Err(Error::Unknown {
                what: "export format",
                value: s.to_string(),
            }),
        }
    }
}

/// Serializes the network. A partition adds module ids (GraphML) or node
/// colors (DOT); the edge list ignores it.
pub fn export_network(net: &DependencyNetwork, format: ExportFormat, partition: Option<&Partition>) -> String {
    match format {
        ExportFormat::EdgeList => edgelist(net),
        ExportFormat::GraphMl => graphml(net, partition),
        ExportFormat::Dot => dot(net, partition),
    }
}

fn edgelist(net: &DependencyNetwork) -> String {
    let mut out = String::new();
    for v in net.nodes() {
        match net.package(v) {
            Some(p) => {
                let _ = writeln!(out, "#node {} package={}", net.name(v), p.join("."));
            }
            None => {
                let _ = writeln!(out, "#node {}", net.name(v));
            }
        }
    }
    out.push_str("source\ttarget\tkinds\n");
    for l in net.links() {
        let _ = writeln!(out, "{}\t{}\t{}", net.name(l.source), net.name(l.target), l.kinds);
    }
    out
}

fn xml_escape(s: &str) -> String {
    let mut out = String::with_capacity(s.len());
    for c in s.chars() {
        match c {
            '&' => out.push_str("&amp;"),
            '<' => out.push_str("&lt;"),
            '>' => out.push_str("&gt;"),
            '"' => out.push_str("&quot;"),
            '\'' => out.push_str("&apos;"),
            c => out.push(c),
        }
    }
    out
}

fn graphml(net: &DependencyNetwork, partition: Option<&Partition>) -> String {
    let mut out = String::from(
        "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n\
         <graphml xmlns=\"http://graphml.graphdrawing.org/xmlns\" \
         xmlns:xsi=\"http://www.w3.org/2001/XMLSchema-instance\" \
         xsi:schemaLocation=\"http://graphml.graphdrawing.org/xmlns http://graphml.graphdrawing.org/xmlns/1.0/graphml.xsd\">\n\
         \x20 <key id=\"package\" for=\"node\" attr.name=\"package\" attr.type=\"string\"/>\n\
         \x20 <key id=\"module\" for=\"node\" attr.name=\"module\" attr.type=\"int\"/>\n\
         \x20 <key id=\"kinds\" for=\"edge\" attr.name=\"kinds\" attr.type=\"string\"/>\n\
         \x20 <graph id=\"G\" edgedefault=\"directed\">\n",
    );
    for v in net.nodes() {
        let _ = write!(out, "    <node id=\"{}\">", xml_escape(net.name(v)));
        if let Some(p) = net.package(v) {
            let _ = write!(out, "<data key=\"package\">{}</data>", xml_escape(&p.join(".")));
        }
        if let Some(part) = partition {
            let _ = write!(out, "<data key=\"module\">{}</data>", part.module_of(v));
        }
        out.push_str("</node>\n");
    }
    for (i, l) in net.links().iter().enumerate() {
        let _ = writeln!(
            out,
            "    <edge id=\"e{i}\" source=\"{}\" target=\"{}\"><data key=\"kinds\">{}</data></edge>",
            xml_escape(net.name(l.source)),
            xml_escape(net.name(l.target)),
            l.kinds
        );
    }
    out.push_str("  </graph>\n</graphml>\n");
    out
}

fn dot_id(s: &str) -> String {
    format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
}

/// Evenly spaced hues, one per module.
pub fn module_color(module: usize, modules: usize) -> String {
    format!("{:.3} 0.550 0.950", module as f64 / modules.max(1) as f64)
}

fn dot(net: &DependencyNetwork, partition: Option<&Partition>) -> String {
    let mut out = String::from("digraph dependencies {\n  node [shape=box, style=filled, fillcolor=\"0.000 0.000 0.950\"];\n");
    for v in net.nodes() {
        let _ = write!(out, "  {}", dot_id(net.name(v)));
        if let Some(p) = partition {
            let _ = write!(
                out,
                " [fillcolor=\"{}\", module={}]",
                module_color(p.module_of(v), p.module_count()),
                p.module_of(v)
            );
        }
        out.push_str(";\n");
    }
    for l in net.links() {
        let _ = writeln!(out, "  {} -> {};", dot_id(net.name(l.source)), dot_id(net.name(l.target)));
    }
    out.push_str("}\n");
    out
}
