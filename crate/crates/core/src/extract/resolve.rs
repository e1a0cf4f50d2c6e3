//! Resolution of written type names to corpus classes, and network assembly.
//!
//! Lookup order for a simple name follows the language's scoping: the
//! declaring type and its enclosing types (and their member types), single
//! type imports, the current package, then on-demand imports (including
//! implicit ones). Names that resolve outside the corpus are external and
//! dropped. A simple name matched by several on-demand imports is ambiguous
//! and also dropped, with a diagnostic.

use std::collections::HashMap;

use super::{ClassEntity, ExtractOptions, TypeRef};
use crate::error::{Error, Result};
use crate::network::{DependencyNetwork, Diagnostic, KindSet, NetworkBuilder};

/// A built network plus everything noteworthy that happened on the way.
#[derive(Clone, Debug)]
pub struct Extraction {
    pub network: DependencyNetwork,
    pub diagnostics: Vec<Diagnostic>,
}

#[derive(Debug, PartialEq, Eq)]
enum Lookup {
    Internal(String),
    External,
    Ambiguous(Vec<String>),
    Unknown,
}

struct Resolver<'a> {
    /// fqname (or folded alias) -> entity index.
    by_name: HashMap<&'a str, usize>,
    implicit: &'a [String],
}

impl<'a> Resolver<'a> {
    fn new(entities: &'a [ClassEntity], options: &'a ExtractOptions) -> Self {
        let mut by_name = HashMap::new();
        for (i, e) in entities.iter().enumerate() {
            by_name.entry(e.fqname.as_str()).or_insert(i);
            for alias in &e.folded {
                by_name.entry(alias.as_str()).or_insert(i);
            }
        }
        Resolver {
            by_name,
            implicit: &options.implicit_imports,
        }
    }

    fn known(&self, name: &str) -> bool {
        self.by_name.contains_key(name)
    }

    /// The enclosing type of a type name, if that prefix is itself a type.
    fn enclosing(&self, name: &str) -> Option<&'a str> {
        let (prefix, _) = name.rsplit_once('.')?;
        self.by_name.get_key_value(prefix).map(|(k, _)| *k)
    }

    fn lookup_simple(&self, simple: &str, scope: &str, entity: &ClassEntity) -> Lookup {
        let mut cur = self.by_name.get_key_value(scope).map(|(k, _)| *k);
        while let Some(s) = cur {
            if s.rsplit('.').next() == Some(simple) {
                return Lookup::Internal(s.to_string());
            }
            let member = format!("{s}.{simple}");
            if self.known(&member) {
                return Lookup::Internal(member);
            }
            cur = self.enclosing(s);
        }

        for imp in entity.imports.iter().filter(|i| !i.on_demand) {
            if imp.name.rsplit('.').next() == Some(simple) {
                return if self.known(&imp.name) {
                    Lookup::Internal(imp.name.clone())
                } else {
                    Lookup::External
                };
            }
        }

        let same_package = if entity.package_path.is_empty() {
            simple.to_string()
        } else {
            format!("{}.{simple}", entity.package_path.join("."))
        };
        if self.known(&same_package) {
            return Lookup::Internal(same_package);
        }

        let mut hits: Vec<String> = entity
            .imports
            .iter()
            .filter(|i| i.on_demand)
            .map(|i| i.name.as_str())
            .chain(self.implicit.iter().map(String::as_str))
            .map(|pkg| format!("{pkg}.{simple}"))
            .filter(|cand| self.known(cand))
            .collect();
        hits.sort();
        hits.dedup();
        match hits.len() {
            0 => Lookup::Unknown,
            1 => Lookup::Internal(hits.pop().unwrap()),
            _ => Lookup::Ambiguous(hits),
        }
    }

    fn resolve(&self, r: &TypeRef, entity: &ClassEntity) -> Lookup {
        let (first, rest) = match r.name.split_once('.') {
            Some((f, rest)) => (f, Some(rest)),
            None => (r.name.as_str(), None),
        };
        match self.lookup_simple(first, &r.scope, entity) {
            Lookup::Internal(base) => match rest {
                None => Lookup::Internal(base),
                Some(rest) => {
                    let full = format!("{base}.{rest}");
                    if self.known(&full) {
                        Lookup::Internal(full)
                    } else {
                        Lookup::External
                    }
                }
            },
            Lookup::Unknown if rest.is_some() && self.known(&r.name) => {
                Lookup::Internal(r.name.clone())
            }
            Lookup::Unknown => Lookup::External,
            other => other,
        }
    }

    fn index_of(&self, name: &str) -> usize {
        self.by_name[name]
    }
}

/// Resolves every entity's references and assembles the network. A link
/// `(i, j)` means class `i` depends on class `j`.
pub fn build_network(entities: &[ClassEntity], options: &ExtractOptions) -> Result<Extraction> {
    if entities.is_empty() {
        return Err(Error::NoEntities);
    }
    let resolver = Resolver::new(entities, options);
    let mut builder = NetworkBuilder::new();
    let mut diagnostics = Vec::new();

    for e in entities {
        builder.set_package(&e.fqname, e.package_path.clone());
    }
    for (i, e) in entities.iter().enumerate() {
        for r in &e.declared_refs {
            match resolver.resolve(&r.target, e) {
                Lookup::Internal(name) => {
                    let j = resolver.index_of(&name);
                    if j != i {
                        builder.add_link(&e.fqname, &entities[j].fqname, KindSet::single(r.kind));
                    }
                }
                Lookup::Ambiguous(candidates) => diagnostics.push(Diagnostic::new(
                    Some(e.fqname.clone()),
                    format!(
                        "ambiguous reference `{}` ({}) dropped",
                        r.target.name,
                        candidates.join(", ")
                    ),
                )),
                Lookup::External | Lookup::Unknown => {}
            }
        }
    }

    let (network, build_diags) = builder.finish();
    diagnostics.extend(build_diags);
    if network.is_empty() {
        diagnostics.push(Diagnostic::new(
            None,
            "network is empty: no reference resolved inside the corpus",
        ));
    }
    Ok(Extraction {
        network,
        diagnostics,
    })
}
