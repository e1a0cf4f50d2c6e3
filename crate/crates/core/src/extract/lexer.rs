//! Token stream for signature parsing. Comments, string, text-block and
//! character literals are dropped; numbers collapse to a single token kind.

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TokKind {
    Ident,
    Punct,
    /// `...`
    Ellipsis,
    /// Numbers and other literals that never matter in a signature.
    Literal,
}

#[derive(Clone, Copy, Debug)]
pub struct Token<'a> {
    pub kind: TokKind,
    pub text: &'a str,
    pub line: u32,
}

impl Token<'_> {
    pub fn is(&self, punct: char) -> bool {
        self.kind == TokKind::Punct && self.text.starts_with(punct)
    }

    pub fn is_word(&self, word: &str) -> bool {
        self.kind == TokKind::Ident && self.text == word
    }
}

fn is_ident_start(c: char) -> bool {
    c.is_alphabetic() || c == '_' || c == '$'
}

fn is_ident_part(c: char) -> bool {
    c.is_alphanumeric() || c == '_' || c == '$'
}

/// Tokenizes source text. Never fails: an unterminated comment or literal
/// simply runs to the end of input.
pub fn tokenize(src: &str) -> Vec<Token<'_>> {
    let bytes = src.as_bytes();
    let mut tokens = Vec::new();
    let mut line = 1u32;
    let mut i = 0;

    while i < src.len() {
        let c = src[i..].chars().next().unwrap();
        let width = c.len_utf8();
        match c {
            '\n' => {
                line += 1;
                i += 1;
            }
            _ if c.is_whitespace() => i += width,
            '/' if bytes.get(i + 1) == Some(&b'/') => {
                while i < src.len() && bytes[i] != b'\n' {
                    i += 1;
                }
            }
            '/' if bytes.get(i + 1) == Some(&b'*') => {
                i += 2;
                while i < src.len() && !(bytes[i] == b'*' && bytes.get(i + 1) == Some(&b'/')) {
                    if bytes[i] == b'\n' {
                        line += 1;
                    }
                    i += 1;
                }
                i = (i + 2).min(src.len());
            }
            '"' if src[i..].starts_with("\"\"\"") => {
                i += 3;
                while i < src.len() && !src[i..].starts_with("\"\"\"") {
                    if bytes[i] == b'\\' {
                        i += 1;
                    } else if bytes[i] == b'\n' {
                        line += 1;
                    }
                    i += 1;
                }
                i = (i + 3).min(src.len());
                tokens.push(Token {
                    kind: TokKind::Literal,
                    text: "\"\"",
                    line,
                });
            }
            '"' | '\'' => {
                let quote = bytes[i];
                i += 1;
                while i < src.len() && bytes[i] != quote && bytes[i] != b'\n' {
                    if bytes[i] == b'\\' {
                        i += 1;
                    }
                    i += 1;
                }
                i = (i + 1).min(src.len());
                tokens.push(Token {
                    kind: TokKind::Literal,
                    text: "\"\"",
                    line,
                });
            }
            _ if c.is_ascii_digit() => {
                let start = i;
                while i < src.len() {
                    let b = bytes[i];
                    let exponent_sign = (b == b'+' || b == b'-')
                        && matches!(bytes[i - 1], b'e' | b'E' | b'p' | b'P');
                    if b.is_ascii_alphanumeric() || b == b'_' || b == b'.' || exponent_sign {
                        i += 1;
                    } else {
                        break;
                    }
                }
                tokens.push(Token {
                    kind: TokKind::Literal,
                    text: &src[start..i],
                    line,
                });
            }
            _ if is_ident_start(c) => {
                let start = i;
                for ch in src[i..].chars() {
                    if !is_ident_part(ch) {
                        break;
                    }
                    i += ch.len_utf8();
                }
                tokens.push(Token {
                    kind: TokKind::Ident,
                    text: &src[start..i],
                    line,
                });
            }
            '.' if src[i..].starts_with("...") => {
                tokens.push(Token {
                    kind: TokKind::Ellipsis,
                    text: "...",
                    line,
                });
                i += 3;
            }
            _ => {
                tokens.push(Token {
                    kind: TokKind::Punct,
                    text: &src[i..i + width],
                    line,
                });
                i += width;
            }
        }
    }
    tokens
}
