//! Class dependency network extraction from source trees.
//!
//! [`scan_sources`] walks a directory, parses every source file at signature
//! level and returns one [`ClassEntity`] per named type declaration.
//! [`build_network`] resolves the collected type references against the
//! corpus and produces the [`DependencyNetwork`].

mod edgelist;
mod lexer;
mod parser;
mod resolve;

use std::collections::{BTreeSet, HashMap};
use std::path::{Path, PathBuf};

use rayon::prelude::*;
use serde::Serialize;

pub use edgelist::{load_edgelist, parse_edgelist, EdgeList};
pub use parser::{parse_source, Import, SourceUnit, TypeDecl, TypeKind};
pub use resolve::build_network;

use crate::error::{Error, Result};
use crate::network::{DependencyKind, Diagnostic};

#[derive(Clone, Debug)]
pub struct ExtractOptions {
    /// Merge nested types into their top-level host class.
    pub fold_nested: bool,
    /// Source file suffix, without the dot.
    pub extension: String,
    /// Packages imported implicitly by every compilation unit.
    pub implicit_imports: Vec<String>,
}

impl Default for ExtractOptions {
    fn default() -> Self {
        ExtractOptions {
            fold_nested: false,
            extension: "java".to_string(),
            implicit_imports: vec!["java.lang".to_string()],
        }
    }
}

/// A type name as written in a signature, plus the fully qualified name of
/// the declaration it appeared in (the lookup scope for nested types).
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct TypeRef {
    pub name: String,
    pub scope: String,
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct DeclaredRef {
    pub target: TypeRef,
    pub kind: DependencyKind,
}

/// A named type declaration found in the sources.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClassEntity {
    pub fqname: String,
    pub package_path: Vec<String>,
    pub kind: TypeKind,
    /// Deduplicated and sorted.
    pub declared_refs: Vec<DeclaredRef>,
    pub imports: Vec<Import>,
    /// Fully qualified name of the directly enclosing type.
    pub enclosing: Option<String>,
    /// Nested types folded into this entity (only with `fold_nested`).
    pub folded: Vec<String>,
    pub file: PathBuf,
}

impl ClassEntity {
    pub fn simple_name(&self) -> &str {
        self.fqname.rsplit('.').next().unwrap_or(&self.fqname)
    }
}

/// Result of scanning a source tree.
#[derive(Clone, Debug, Default)]
pub struct Scan {
    /// Sorted by fully qualified name.
    pub entities: Vec<ClassEntity>,
    pub diagnostics: Vec<Diagnostic>,
}

/// Converts one parsed compilation unit into entities.
pub fn entities_from_unit(unit: &SourceUnit, file: &Path) -> Vec<ClassEntity> {
    let prefix = if unit.package.is_empty() {
        String::new()
    } else {
        format!("{}.", unit.package.join("."))
    };
    unit.types
        .iter()
        .map(|decl| {
            let fqname = format!("{prefix}{}", decl.name_path.join("."));
            let enclosing = (decl.name_path.len() > 1).then(|| {
                format!(
                    "{prefix}{}",
                    decl.name_path[..decl.name_path.len() - 1].join(".")
                )
            });
            let refs: BTreeSet<DeclaredRef> = decl
                .refs
                .iter()
                .map(|(name, kind)| DeclaredRef {
                    target: TypeRef {
                        name: name.clone(),
                        scope: fqname.clone(),
                    },
                    kind: *kind,
                })
                .collect();
            ClassEntity {
                fqname,
                package_path: unit.package.clone(),
                kind: decl.kind,
                declared_refs: refs.into_iter().collect(),
                imports: unit.imports.clone(),
                enclosing,
                folded: Vec::new(),
                file: file.to_path_buf(),
            }
        })
        .collect()
}

/// Parses a single source text.
pub fn scan_source(src: &str, file: &Path) -> (Vec<ClassEntity>, Vec<Diagnostic>) {
    let unit = parse_source(src);
    let diags = unit
        .diagnostics
        .iter()
        .map(|(line, msg)| Diagnostic::new(Some(format!("{}:{line}", file.display())), msg.clone()))
        .collect();
    (entities_from_unit(&unit, file), diags)
}

/// Walks `root` and extracts every type declaration from files with the
/// configured extension.
pub fn scan_sources(root: &Path, options: &ExtractOptions) -> Result<Scan> {
    let meta = std::fs::metadata(root).map_err(|e| Error::io(root, e))?;
    let mut files = Vec::new();
    let mut diagnostics = Vec::new();
    if meta.is_file() {
        files.push(root.to_path_buf());
    } else {
        for entry in walkdir::WalkDir::new(root).sort_by_file_name() {
            match entry {
                Ok(e) if e.file_type().is_file() => {
                    if e.path().extension().is_some_and(|x| x == options.extension.as_str()) {
                        files.push(e.into_path());
                    }
                }
                Ok(_) => {}
                Err(e) => diagnostics.push(Diagnostic::new(
                    e.path().map(|p| p.display().to_string()),
                    format!("unreadable entry skipped: {e}"),
                )),
            }
        }
    }

    let per_file: Vec<(Vec<ClassEntity>, Vec<Diagnostic>)> = files
        .par_iter()
        .map(|path| match std::fs::read(path) {
            Ok(bytes) => scan_source(&String::from_utf8_lossy(&bytes), path),
            Err(e) => (
                Vec::new(),
                vec![Diagnostic::new(
                    Some(path.display().to_string()),
                    format!("unreadable file skipped: {e}"),
                )],
            ),
        })
        .collect();

    let mut seen: HashMap<String, PathBuf> = HashMap::new();
    let mut entities = Vec::new();
    for (ents, diags) in per_file {
        diagnostics.extend(diags);
        for e in ents {
            if let Some(first) = seen.get(&e.fqname) {
                diagnostics.push(Diagnostic::new(
                    Some(e.file.display().to_string()),
                    format!("duplicate type {} (first declared in {})", e.fqname, first.display()),
                ));
                continue;
            }
            seen.insert(e.fqname.clone(), e.file.clone());
            entities.push(e);
        }
    }
    entities.sort_by(|a, b| a.fqname.cmp(&b.fqname));
    if options.fold_nested {
        entities = fold_nested(entities);
    }
    Ok(Scan {
        entities,
        diagnostics,
    })
}

/// Merges every nested entity into its outermost enclosing entity.
/// Reference scopes are kept so that resolution still sees the nested
/// declaration context.
pub fn fold_nested(entities: Vec<ClassEntity>) -> Vec<ClassEntity> {
    let enclosing: HashMap<String, Option<String>> = entities
        .iter()
        .map(|e| (e.fqname.clone(), e.enclosing.clone()))
        .collect();
    let top_of = |name: &str| -> String {
        let mut cur = name.to_string();
        while let Some(Some(parent)) = enclosing.get(&cur) {
            cur = parent.clone();
        }
        cur
    };

    let mut hosts: Vec<ClassEntity> = Vec::new();
    let mut host_index: HashMap<String, usize> = HashMap::new();
    let mut nested = Vec::new();
    for e in entities {
        if e.enclosing.is_none() {
            host_index.insert(e.fqname.clone(), hosts.len());
            hosts.push(e);
        } else {
            nested.push(e);
        }
    }
    for e in nested {
        let top = top_of(&e.fqname);
        match host_index.get(&top) {
            Some(&h) => {
                let host = &mut hosts[h];
                host.folded.push(e.fqname.clone());
                host.declared_refs.extend(e.declared_refs);
            }
            // Host missing (e.g. it was a duplicate): keep the nested entity.
            None => {
                host_index.insert(e.fqname.clone(), hosts.len());
                hosts.push(e);
            }
        }
    }
    for h in &mut hosts {
        h.declared_refs.sort();
        h.declared_refs.dedup();
        h.folded.sort();
    }
    hosts.sort_by(|a, b| a.fqname.cmp(&b.fqname));
    hosts
}
