use super::PresentationError;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Tok {
    Ident(String),
    Int(i64),
    /// `{…}` including the braces.
    Brace(String),
    /// `[…]` including the brackets.
    Bracket(String),
    Sym(&'static str),
}

#[derive(Clone, Debug)]
pub struct Token {
    pub tok: Tok,
    /// Byte offset into the lexed text.
    pub at: usize,
}

const SYMBOLS: [&str; 20] = [
    "..", "==", "!=", "<=", ">=", "->", "+", "-", "*", ".", "/", "%", "^", "(", ")", ",", "=", "<",
    ">", ":",
];

/// Splits `text` into tokens; `#` starts a comment running to end of line.
pub fn lex(text: &str) -> Result<Vec<Token>, PresentationError> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i] as char;
        if c.is_whitespace() {
            i += 1;
            continue;
        }
        if c == '#' {
            while i < bytes.len() && bytes[i] != b'\n' {
                i += 1;
            }
            continue;
        }
        let start = i;
        if c.is_ascii_alphabetic() || c == '_' {
            while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                i += 1;
            }
            out.push(Token {
                tok: Tok::Ident(text[start..i].to_string()),
                at: start,
            });
            continue;
        }
        if c.is_ascii_digit() {
            while i < bytes.len() && bytes[i].is_ascii_digit() {
                i += 1;
            }
            let v = text[start..i]
                .parse()
                .map_err(|_| PresentationError::syntax(start, "integer literal too large"))?;
            out.push(Token {
                tok: Tok::Int(v),
                at: start,
            });
            continue;
        }
        if c == '{' || c == '[' {
            let close = if c == '{' { '}' } else { ']' };
            let end = text[start..]
                .find(close)
                .ok_or_else(|| PresentationError::syntax(start, format!("unclosed {c}")))?;
            let raw = text[start..=start + end].to_string();
            i = start + end + 1;
            let tok = if c == '{' {
                Tok::Brace(raw)
            } else {
                Tok::Bracket(raw)
            };
            out.push(Token { tok, at: start });
            continue;
        }
        match SYMBOLS.iter().find(|s| text[i..].starts_with(**s)) {
            Some(s) => {
                out.push(Token {
                    tok: Tok::Sym(s),
                    at: start,
                });
                i += s.len();
            }
            None => {
                return Err(PresentationError::syntax(
                    start,
                    format!("unexpected character {c:?}"),
                ))
            }
        }
    }
    Ok(out)
}
