//! Error-tolerant, signature-level parser for Java-like sources.
//!
//! Only declaration headers are examined: the package clause, imports, type
//! headers (`extends`/`implements`), field types, and method/constructor
//! parameter and return types. Bodies and initializers are skipped by
//! bracket matching, which also makes anonymous and local classes invisible.

use serde::{Deserialize, Serialize};

use super::lexer::{tokenize, TokKind, Token};
use crate::network::DependencyKind;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum TypeKind {
    Class,
    Interface,
    Enum,
    Annotation,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Import {
    /// Dotted name without the trailing `.*`.
    pub name: String,
    /// `import a.b.*;`
    pub on_demand: bool,
}

/// One named type declaration, nested or top level.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TypeDecl {
    /// Simple names from the outermost enclosing type down to this one.
    pub name_path: Vec<String>,
    pub kind: TypeKind,
    /// Referenced type names as written (dotted), with the kind of use.
    pub refs: Vec<(String, DependencyKind)>,
}

#[derive(Clone, Debug, Default)]
pub struct SourceUnit {
    pub package: Vec<String>,
    pub imports: Vec<Import>,
    pub types: Vec<TypeDecl>,
    /// `(line, message)` for declarations that could not be parsed.
    pub diagnostics: Vec<(u32, String)>,
}

const PRIMITIVES: &[&str] = &[
    "boolean", "byte", "char", "short", "int", "long", "float", "double", "void",
];

const MODIFIERS: &[&str] = &[
    "public",
    "protected",
    "private",
    "static",
    "final",
    "abstract",
    "native",
    "synchronized",
    "transient",
    "volatile",
    "strictfp",
    "default",
    "sealed",
];

// Reserved words that can never start a type.
const NON_TYPE_WORDS: &[&str] = &[
    "abstract", "assert", "break", "case", "catch", "class", "const", "continue", "default", "do",
    "else", "enum", "extends", "false", "final", "finally", "for", "goto", "if", "implements",
    "import", "instanceof", "interface", "native", "new", "null", "package", "private",
    "protected", "public", "return", "static", "strictfp", "super", "switch", "synchronized",
    "this", "throw", "throws", "transient", "true", "try", "volatile", "while",
];

pub fn parse_source(src: &str) -> SourceUnit {
    let toks = tokenize(src);
    let close = match_brackets(&toks);
    let mut parser = Parser {
        toks,
        close,
        unit: SourceUnit::default(),
    };
    parser.compilation_unit();
    parser.unit
}

/// For every opening bracket, the index of its partner (or `len` when
/// unbalanced). Entries for other tokens are unused.
fn match_brackets(toks: &[Token<'_>]) -> Vec<usize> {
    let mut close = vec![toks.len(); toks.len()];
    let mut stack: Vec<(usize, char)> = Vec::new();
    for (i, t) in toks.iter().enumerate() {
        if t.kind != TokKind::Punct {
            continue;
        }
        match t.text {
            "(" | "[" | "{" => stack.push((i, t.text.chars().next().unwrap())),
            ")" | "]" | "}" => {
                let want = match t.text {
                    ")" => '(',
                    "]" => '[',
                    _ => '{',
                };
                if let Some(pos) = stack.iter().rposition(|&(_, c)| c == want) {
                    close[stack[pos].0] = i;
                    stack.truncate(pos);
                }
            }
            _ => {}
        }
    }
    close
}

struct Parser<'a> {
    toks: Vec<Token<'a>>,
    close: Vec<usize>,
    unit: SourceUnit,
}

impl<'a> Parser<'a> {
    fn len(&self) -> usize {
        self.toks.len()
    }

    fn is(&self, p: usize, punct: char) -> bool {
        p < self.len() && self.toks[p].is(punct)
    }

    fn is_word(&self, p: usize, word: &str) -> bool {
        p < self.len() && self.toks[p].is_word(word)
    }

    fn is_ident(&self, p: usize) -> bool {
        p < self.len() && self.toks[p].kind == TokKind::Ident
    }

    fn is_opener(&self, p: usize) -> bool {
        self.is(p, '(') || self.is(p, '[') || self.is(p, '{')
    }

    fn line(&self, p: usize) -> u32 {
        self.toks
            .get(p.min(self.len().saturating_sub(1)))
            .map_or(0, |t| t.line)
    }

    fn diag(&mut self, p: usize, message: impl Into<String>) {
        let line = self.line(p);
        self.unit.diagnostics.push((line, message.into()));
    }

    /// Index after the bracket group opening at `p`.
    fn jump(&self, p: usize) -> usize {
        if self.is_opener(p) {
            (self.close[p] + 1).min(self.len())
        } else {
            p + 1
        }
    }

    fn compilation_unit(&mut self) {
        let end = self.len();
        let mut p = 0;
        while p < end {
            if self.is_word(p, "package") {
                let (name, q) = self.dotted_until_semicolon(p + 1, end);
                self.unit.package = name.split('.').filter(|s| !s.is_empty()).map(String::from).collect();
                p = q;
            } else if self.is_word(p, "import") {
                let mut q = p + 1;
                let is_static = self.is_word(q, "static");
                if is_static {
                    q += 1;
                }
                let (name, next) = self.dotted_until_semicolon(q, end);
                if !is_static && !name.is_empty() {
                    let import = match name.strip_suffix(".*") {
                        Some(stem) => Import {
                            name: stem.to_string(),
                            on_demand: true,
                        },
                        None => Import {
                            name,
                            on_demand: false,
                        },
                    };
                    self.unit.imports.push(import);
                }
                p = next;
            } else {
                let q = self.skip_modifiers(p, end);
                if self.decl_keyword(q).is_some() {
                    p = self.type_decl(q, end, &[], &[]);
                } else {
                    p = self.jump(q).max(p + 1);
                }
            }
        }
    }

    /// Concatenates identifier, `.` and `*` tokens up to the next `;`.
    fn dotted_until_semicolon(&self, mut p: usize, end: usize) -> (String, usize) {
        let mut name = String::new();
        while p < end && !self.is(p, ';') {
            let t = self.toks[p];
            if t.kind == TokKind::Ident || t.is('.') || t.is('*') {
                name.push_str(t.text);
            }
            p += 1;
        }
        (name, (p + 1).min(end))
    }

    fn skip_annotation(&self, p: usize, end: usize) -> usize {
        // at '@', not '@interface'
        let mut q = p + 1;
        if self.is_ident(q) {
            q += 1;
            while self.is(q, '.') && self.is_ident(q + 1) {
                q += 2;
            }
        }
        if q < end && self.is(q, '(') {
            q = self.jump(q);
        }
        q.min(end)
    }

    fn skip_modifiers(&self, mut p: usize, end: usize) -> usize {
        while p < end {
            if self.is(p, '@') && !self.is_word(p + 1, "interface") {
                p = self.skip_annotation(p, end);
            } else if self.toks[p].kind == TokKind::Ident && MODIFIERS.contains(&self.toks[p].text) {
                p += 1;
            } else if self.is_word(p, "non") && self.is(p + 1, '-') && self.is_word(p + 2, "sealed") {
                p += 3;
            } else {
                break;
            }
        }
        p
    }

    /// Recognizes a type declaration keyword at `p`; returns the kind and
    /// the index of the declared name.
    fn decl_keyword(&self, p: usize) -> Option<(TypeKind, usize)> {
        if p >= self.len() {
            return None;
        }
        let t = self.toks[p];
        if t.is('@') && self.is_word(p + 1, "interface") {
            return Some((TypeKind::Annotation, p + 2));
        }
        match t.text {
            "class" if t.kind == TokKind::Ident => Some((TypeKind::Class, p + 1)),
            "interface" if t.kind == TokKind::Ident => Some((TypeKind::Interface, p + 1)),
            "enum" if t.kind == TokKind::Ident => Some((TypeKind::Enum, p + 1)),
            // contextual keyword: `record Name(` or `record Name<`
            "record"
                if t.kind == TokKind::Ident
                    && self.is_ident(p + 1)
                    && (self.is(p + 2, '(') || self.is(p + 2, '<')) =>
            {
                Some((TypeKind::Class, p + 1))
            }
            _ => None,
        }
    }

    /// Parses a type expression, returning every referenced type name
    /// (the outer type first, then type arguments recursively). Primitives
    /// and wildcards contribute nothing.
    fn parse_type(&self, mut p: usize, end: usize) -> Option<(Vec<String>, usize)> {
        while p < end && self.is(p, '@') {
            p = self.skip_annotation(p, end);
        }
        if p >= end {
            return None;
        }
        let t = self.toks[p];
        if t.is('?') {
            if self.is_word(p + 1, "extends") || self.is_word(p + 1, "super") {
                return self.parse_type(p + 2, end);
            }
            return Some((Vec::new(), p + 1));
        }
        if t.kind != TokKind::Ident || NON_TYPE_WORDS.contains(&t.text) {
            return None;
        }
        if PRIMITIVES.contains(&t.text) {
            return Some((Vec::new(), self.skip_dims(p + 1, end)));
        }

        let mut segments = vec![t.text];
        let mut args = Vec::new();
        p += 1;
        loop {
            if p < end && self.is(p, '<') {
                p += 1;
                loop {
                    if p >= end {
                        return None;
                    }
                    if self.is(p, '>') {
                        p += 1;
                        break;
                    }
                    let (inner, q) = self.parse_type(p, end)?;
                    args.extend(inner);
                    p = q;
                    if self.is(p, ',') {
                        p += 1;
                    } else if self.is(p, '>') {
                        p += 1;
                        break;
                    } else {
                        return None;
                    }
                }
            }
            if p + 1 < end && self.is(p, '.') && self.is_ident(p + 1) && self.toks[p + 1].text != "this" {
                segments.push(self.toks[p + 1].text);
                p += 2;
                continue;
            }
            break;
        }
        let mut names = Vec::with_capacity(args.len() + 1);
        names.push(segments.join("."));
        names.extend(args);
        Some((names, self.skip_dims(p, end)))
    }

    fn skip_dims(&self, mut p: usize, end: usize) -> usize {
        loop {
            while p < end && self.is(p, '@') {
                p = self.skip_annotation(p, end);
            }
            if p + 1 < end && self.is(p, '[') && self.is(p + 1, ']') {
                p += 2;
            } else {
                return p;
            }
        }
    }

    /// Type parameter names of a `<...>` list starting at `p`.
    fn type_params(&self, p: usize, end: usize) -> (Vec<String>, usize) {
        let mut names = Vec::new();
        let mut depth = 0usize;
        let mut q = p;
        let mut expect_name = false;
        while q < end {
            let t = self.toks[q];
            if t.is('<') {
                depth += 1;
                if depth == 1 {
                    expect_name = true;
                }
            } else if t.is('>') {
                depth = depth.saturating_sub(1);
                if depth == 0 {
                    return (names, q + 1);
                }
            } else if t.is(',') && depth == 1 {
                expect_name = true;
            } else if t.is('@') {
                q = self.skip_annotation(q, end);
                continue;
            } else if t.is('{') || t.is(';') || t.is('(') {
                break;
            } else if expect_name && t.kind == TokKind::Ident {
                names.push(t.text.to_string());
                expect_name = false;
            }
            q += 1;
        }
        (names, q)
    }

    fn add_refs(&mut self, decl: usize, names: Vec<String>, kind: DependencyKind, tvars: &[String]) {
        for name in names {
            if !name.contains('.') && tvars.contains(&name) {
                continue;
            }
            self.unit.types[decl].refs.push((name, kind));
        }
    }

    /// Parses a declaration whose keyword is at `p`; returns the index after
    /// its body.
    fn type_decl(&mut self, p: usize, end: usize, enclosing: &[String], outer_tvars: &[String]) -> usize {
        let (kind, name_at) = self.decl_keyword(p).expect("caller checked keyword");
        if !self.is_ident(name_at) {
            self.diag(p, "type declaration without a name");
            return self.recover(name_at, end);
        }
        let name = self.toks[name_at].text.to_string();
        let is_record = self.toks[p].text == "record";
        let mut q = name_at + 1;

        let mut tvars = outer_tvars.to_vec();
        if self.is(q, '<') {
            let (names, next) = self.type_params(q, end);
            tvars.extend(names);
            q = next;
        }

        let mut name_path = enclosing.to_vec();
        name_path.push(name);
        let decl = self.unit.types.len();
        self.unit.types.push(TypeDecl {
            name_path: name_path.clone(),
            kind,
            refs: Vec::new(),
        });

        if is_record && self.is(q, '(') {
            self.params(decl, q, DependencyKind::Field, &tvars);
            q = self.jump(q);
        }

        while q < end && !self.is(q, '{') {
            if self.is_word(q, "extends") || self.is_word(q, "implements") || self.is_word(q, "permits") {
                let kind = if self.is_word(q, "permits") {
                    None
                } else {
                    Some(DependencyKind::Inheritance)
                };
                q += 1;
                loop {
                    match self.parse_type(q, end) {
                        Some((names, next)) => {
                            if let Some(kind) = kind {
                                self.add_refs(decl, names, kind, &tvars);
                            }
                            q = next;
                        }
                        None => {
                            self.diag(q, "unparseable supertype");
                            break;
                        }
                    }
                    if self.is(q, ',') {
                        q += 1;
                    } else {
                        break;
                    }
                }
            } else if self.is(q, ';') {
                self.diag(q, "type declaration without a body");
                return q + 1;
            } else {
                q = self.jump(q);
            }
        }
        if q >= end {
            return end;
        }
        let body_end = self.close[q].min(end);
        self.body(decl, q + 1, body_end, kind == TypeKind::Enum, &name_path, &tvars);
        (body_end + 1).min(end)
    }

    fn body(&mut self, decl: usize, start: usize, end: usize, is_enum: bool, name_path: &[String], tvars: &[String]) {
        let mut p = start;
        if is_enum {
            p = self.skip_to_semicolon(p, end);
        }
        while p < end {
            if self.is(p, ';') {
                p += 1;
                continue;
            }
            let member_start = p;
            p = self.skip_modifiers(p, end);
            if p >= end {
                break;
            }
            if self.is(p, '{') {
                p = self.jump(p);
                continue;
            }
            if self.decl_keyword(p).is_some() {
                p = self.type_decl(p, end, name_path, tvars);
                continue;
            }

            let mut member_tvars = tvars.to_vec();
            if self.is(p, '<') {
                let (names, next) = self.type_params(p, end);
                member_tvars.extend(names);
                p = next;
            }

            match self.parse_type(p, end) {
                Some((names, q)) if self.is(q, '(') => {
                    // constructor: `names` is the class name itself
                    let _ = names;
                    self.params(decl, q, DependencyKind::Parameter, &member_tvars);
                    p = self.after_method(self.jump(q), end);
                }
                Some((names, q)) if self.is_ident(q) && self.is(q + 1, '(') => {
                    self.add_refs(decl, names, DependencyKind::Return, &member_tvars);
                    self.params(decl, q + 1, DependencyKind::Parameter, &member_tvars);
                    p = self.after_method(self.jump(q + 1), end);
                }
                Some((names, q)) if self.is_ident(q) => {
                    self.add_refs(decl, names, DependencyKind::Field, &member_tvars);
                    p = self.skip_to_semicolon(q, end);
                }
                _ => {
                    self.diag(p, "unparseable member declaration skipped");
                    p = self.recover(p, end).max(member_start + 1);
                }
            }
        }
    }

    /// Parameters (or record components) of the list opening at `open`.
    fn params(&mut self, decl: usize, open: usize, kind: DependencyKind, tvars: &[String]) {
        let end = self.close[open].min(self.len());
        let mut q = open + 1;
        while q < end {
            q = self.skip_modifiers(q, end);
            if q >= end {
                break;
            }
            match self.parse_type(q, end) {
                Some((names, next)) => {
                    self.add_refs(decl, names, kind, tvars);
                    q = next;
                }
                None => {
                    self.diag(q, "unparseable parameter list");
                    return;
                }
            }
            while q < end && !self.is(q, ',') {
                q = self.jump(q);
            }
            q += 1;
        }
    }

    /// Skips `throws` clauses, `default` values and the method body.
    fn after_method(&self, mut p: usize, end: usize) -> usize {
        while p < end {
            if self.is(p, ';') {
                return p + 1;
            }
            if self.is(p, '{') {
                return self.jump(p).min(end);
            }
            p = self.jump(p);
        }
        end
    }

    /// Index after the next `;` outside brackets.
    fn skip_to_semicolon(&self, mut p: usize, end: usize) -> usize {
        while p < end {
            if self.is(p, ';') {
                return p + 1;
            }
            p = self.jump(p);
        }
        end
    }

    /// Skips a member we could not parse: up to a `;` or past a `{...}` block.
    fn recover(&self, mut p: usize, end: usize) -> usize {
        while p < end {
            if self.is(p, ';') {
                return p + 1;
            }
            if self.is(p, '{') {
                return self.jump(p).min(end);
            }
            p = self.jump(p);
        }
        end
    }
}
