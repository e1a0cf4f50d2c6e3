//! Tab-separated edge list input.
//!
//! ```text
//! # free comment
//! #node a.b.C package=a.b
//! source  target  kinds
//! a.b.C   a.d.E   field,return
//! ```
//!
//! Fields may be separated by tabs or spaces. The `kinds` column is
//! optional (defaults to `field`), as is the header line. Package
//! annotations may also be written `# package: <name> <a.b.c>`.

use std::path::Path;

use crate::error::{Error, Result};
use crate::network::{DependencyKind, DependencyNetwork, Diagnostic, KindSet, NetworkBuilder};

#[derive(Clone, Debug)]
pub struct EdgeList {
    pub network: DependencyNetwork,
    pub warnings: Vec<Diagnostic>,
}

pub fn load_edgelist(path: &Path) -> Result<EdgeList> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    parse_edgelist(&text, &path.display().to_string())
}

fn split_package(p: &str) -> Vec<String> {
    p.split('.').filter(|s| !s.is_empty()).map(String::from).collect()
}

pub fn parse_edgelist(text: &str, origin: &str) -> Result<EdgeList> {
    let mut builder = NetworkBuilder::new();
    let mut warnings = Vec::new();
    let mut seen_data = false;
    let err = |line: usize, message: String| Error::Parse {
        origin: origin.to_string(),
        line,
        message,
    };

    for (idx, raw) in text.lines().enumerate() {
        let lineno = idx + 1;
        let line = raw.trim();
        if line.is_empty() {
            continue;
        }
        if let Some(rest) = line.strip_prefix("#node") {
            let mut fields = rest.split_whitespace();
            let name = fields
                .next()
                .ok_or_else(|| err(lineno, "`#node` without a name".into()))?;
            builder.add_node(name);
            for attr in fields {
                match attr.split_once('=') {
                    Some(("package", p)) => builder.set_package(name, split_package(p)),
                    Some(_) => {}
                    None => return Err(err(lineno, format!("malformed node attribute `{attr}`"))),
                }
            }
            continue;
        }
        if let Some(rest) = line.strip_prefix('#') {
            if let Some(entry) = rest.trim_start().strip_prefix("package:") {
                let fields: Vec<&str> = entry.split_whitespace().collect();
                match fields.as_slice() {
                    [name, package] => builder.set_package(name, split_package(package)),
                    [name] => builder.set_package(name, Vec::new()),
                    _ => return Err(err(lineno, "expected `# package: <name> <package>`".into())),
                }
            }
            continue;
        }

        let fields: Vec<&str> = line.split_whitespace().collect();
        if !seen_data {
            seen_data = true;
            if fields.len() >= 2 && fields[0] == "source" && fields[1] == "target" {
                continue;
            }
        }
        let (source, target, kinds) = match fields.as_slice() {
            [s, t] => (*s, *t, KindSet::single(DependencyKind::Field)),
            [s, t, k] => {
                let kinds: KindSet = k.parse().map_err(|e| err(lineno, format!("{e}")))?;
                if kinds.is_empty() {
                    return Err(err(lineno, "empty kinds column".into()));
                }
                (*s, *t, kinds)
            }
            _ => {
                return Err(err(
                    lineno,
                    format!("expected `source target [kinds]`, got {} fields", fields.len()),
                ))
            }
        };
        if !builder.add_link(source, target, kinds) {
            log::warn!("{origin}:{lineno}: self-loop on {source} dropped");
            warnings.push(Diagnostic::new(
                Some(format!("{origin}:{lineno}")),
                format!("self-loop on `{source}` dropped"),
            ));
        }
    }

    let (network, diags) = builder.finish();
    warnings.extend(diags.into_iter().filter(|d| !d.message.contains("self-loop")));
    Ok(EdgeList { network, warnings })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::network::NodeId;

    #[test]
    fn three_cycle() {
        let el = parse_edgelist("a b\nb c\nc a\n", "t").unwrap();
        assert_eq!((el.network.n(), el.network.m()), (3, 3));
        for v in el.network.nodes() {
            assert_eq!(el.network.in_degree(v), 1);
            assert_eq!(el.network.out_degree(v), 1);
        }
    }

    #[test]
    fn self_loop_warns() {
        let el = parse_edgelist("a\tb\na\ta\n", "t").unwrap();
        assert_eq!(el.network.m(), 1);
        assert_eq!(el.warnings.len(), 1);
        assert!(el.warnings[0].location.as_deref() == Some("t:2"));
    }

    #[test]
    fn header_annotations_and_kinds() {
        let text = "#node x.A package=x\n# package: y.B y\nsource\ttarget\tkinds\nx.A\ty.B\tfield,return\nx.A\ty.B\tinheritance\n";
        let el = parse_edgelist(text, "t").unwrap();
        let net = &el.network;
        assert_eq!(net.m(), 1);
        assert_eq!(net.links()[0].kinds.to_string(), "inheritance,return,field");
        assert_eq!(net.package(NodeId(1)), Some(&["y".to_string()][..]));
        assert!(net.has_packages());
    }

    #[test]
    fn malformed_lines_report_position() {
        let e = parse_edgelist("a b\nlonely\n", "f.tsv").unwrap_err();
        assert!(e.to_string().starts_with("f.tsv:2:"), "{e}");
        let e = parse_edgelist("a b nonsense\n", "f.tsv").unwrap_err();
        assert!(e.to_string().contains("f.tsv:1"));
        assert!(parse_edgelist("a b c d\n", "f").is_err());
    }
}
