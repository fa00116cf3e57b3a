use crate::error::{ParseError, SourceSpan};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Tok {
    Ident(String),
    Var(String),
    Num(u32),
    Dot,
    Comma,
    Semi,
    Colon,
    LParen,
    RParen,
    LBrace,
    RBrace,
    LBracket,
    RBracket,
    Bar,
    Eq,
    Neq,
    Eof,
}

impl Tok {
    pub fn describe(&self) -> String {
        match self {
            Tok::Ident(s) => format!("`{s}`"),
            Tok::Var(s) => format!("`?{s}`"),
            Tok::Num(n) => format!("`{n}`"),
            Tok::Dot => "`.`".into(),
            Tok::Comma => "`,`".into(),
            Tok::Semi => "`;`".into(),
            Tok::Colon => "`:`".into(),
            Tok::LParen => "`(`".into(),
            Tok::RParen => "`)`".into(),
            Tok::LBrace => "`{`".into(),
            Tok::RBrace => "`}`".into(),
            Tok::LBracket => "`[`".into(),
            Tok::RBracket => "`]`".into(),
            Tok::Bar => "`|`".into(),
            Tok::Eq => "`=`".into(),
            Tok::Neq => "`!=`".into(),
            Tok::Eof => "end of input".into(),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Pos {
    pub line: usize,
    pub column: usize,
    pub length: usize,
}

#[derive(Clone, Debug)]
pub struct Token {
    pub tok: Tok,
    pub pos: Pos,
}

/// Prefix reserved for names introduced by the normalizer.
pub const RESERVED_PREFIX: &str = "__n";

pub fn span(file: &str, pos: Pos) -> SourceSpan {
    SourceSpan { file: file.to_string(), line: pos.line, column: pos.column, length: pos.length.max(1) }
}

pub fn tokenize(file: &str, text: &str) -> Result<Vec<Token>, ParseError> {
    let mut out = Vec::new();
    let chars: Vec<char> = text.chars().collect();
    let mut i = 0;
    let mut line = 1;
    let mut col = 1;
    let err = |pos: Pos, message: String| ParseError { span: span(file, pos), message, expected: vec![] };

    while i < chars.len() {
        let c = chars[i];
        let start = Pos { line, column: col, length: 1 };
        if c == '\n' {
            i += 1;
            line += 1;
            col = 1;
            continue;
        }
        if c.is_whitespace() {
            i += 1;
            col += 1;
            continue;
        }
        if c == '#' {
            while i < chars.len() && chars[i] != '\n' {
                i += 1;
                col += 1;
            }
            continue;
        }
        if c.is_ascii_alphabetic() || c == '_' || c == '?' {
            let is_var = c == '?';
            let mut j = if is_var { i + 1 } else { i };
            let first = j;
            while j < chars.len() && (chars[j].is_ascii_alphanumeric() || chars[j] == '_') {
                j += 1;
            }
            let word: String = chars[first..j].iter().collect();
            let pos = Pos { length: j - i, ..start };
            if word.is_empty() {
                return Err(err(pos, "expected a variable name after `?`".into()));
            }
            if word.starts_with(RESERVED_PREFIX) {
                return Err(err(pos, format!("identifier `{word}` uses the reserved prefix `{RESERVED_PREFIX}`")));
            }
            let tok = if is_var { Tok::Var(word) } else { Tok::Ident(word) };
            out.push(Token { tok, pos });
            col += j - i;
            i = j;
            continue;
        }
        if c.is_ascii_digit() {
            let mut j = i;
            while j < chars.len() && chars[j].is_ascii_digit() {
                j += 1;
            }
            let digits: String = chars[i..j].iter().collect();
            let pos = Pos { length: j - i, ..start };
            let n = digits.parse::<u32>().map_err(|_| err(pos, format!("number `{digits}` is too large")))?;
            out.push(Token { tok: Tok::Num(n), pos });
            col += j - i;
            i = j;
            continue;
        }
        let (tok, len) = match c {
            '.' => (Tok::Dot, 1),
            ',' => (Tok::Comma, 1),
            ';' => (Tok::Semi, 1),
            ':' => (Tok::Colon, 1),
            '(' => (Tok::LParen, 1),
            ')' => (Tok::RParen, 1),
            '{' => (Tok::LBrace, 1),
            '}' => (Tok::RBrace, 1),
            '[' => (Tok::LBracket, 1),
            ']' => (Tok::RBracket, 1),
            '|' => (Tok::Bar, 1),
            '=' => (Tok::Eq, 1),
            '!' if chars.get(i + 1) == Some(&'=') => (Tok::Neq, 2),
            other => return Err(err(start, format!("unexpected character `{other}`"))),
        };
        out.push(Token { tok, pos: Pos { length: len, ..start } });
        i += len;
        col += len;
    }
    out.push(Token { tok: Tok::Eof, pos: Pos { line, column: col, length: 1 } });
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn positions_and_comments() {
        let toks = tokenize("t", "concept A. # note\n  ?v1 != 12").unwrap();
        let kinds: Vec<_> = toks.iter().map(|t| t.tok.clone()).collect();
        assert_eq!(
            kinds,
            vec![
                Tok::Ident("concept".into()),
                Tok::Ident("A".into()),
                Tok::Dot,
                Tok::Var("v1".into()),
                Tok::Neq,
                Tok::Num(12),
                Tok::Eof
            ]
        );
        assert_eq!(toks[3].pos, Pos { line: 2, column: 3, length: 3 });
    }

    #[test]
    fn reserved_prefix_rejected() {
        let e = tokenize("t", "concept __n1.").unwrap_err();
        assert_eq!(e.span.column, 9);
    }

    #[test]
    fn stray_character() {
        let e = tokenize("t", "a @ b").unwrap_err();
        assert_eq!((e.span.line, e.span.column), (1, 3));
    }
}
