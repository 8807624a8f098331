//! Tokenizer for the document language.

use crate::error::DslError;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Pos {
    pub line: usize,
    pub col: usize,
    pub offset: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Tok {
    Ident(String),
    Int(String),
    /// `d/dNAME`, the coordinate vector field of `NAME`.
    VecBasis(String),
    LParen,
    RParen,
    LBracket,
    RBracket,
    Comma,
    Semi,
    Eq,
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    Eof,
}

impl Tok {
    pub fn describe(&self) -> String {
        match self {
            Tok::Ident(s) => format!("identifier `{s}`"),
            Tok::Int(s) => format!("number `{s}`"),
            Tok::VecBasis(s) => format!("`d/d{s}`"),
            Tok::Eof => "end of input".into(),
            t => format!("`{}`", t.symbol()),
        }
    }

    fn symbol(&self) -> &'static str {
        match self {
            Tok::LParen => "(",
            Tok::RParen => ")",
            Tok::LBracket => "[",
            Tok::RBracket => "]",
            Tok::Comma => ",",
            Tok::Semi => ";",
            Tok::Eq => "=",
            Tok::Plus => "+",
            Tok::Minus => "-",
            Tok::Star => "*",
            Tok::Slash => "/",
            Tok::Caret => "^",
            _ => "",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Token {
    pub tok: Tok,
    pub pos: Pos,
    /// Byte offset one past the last character of the token.
    pub end: usize,
}

fn is_ident_start(c: char) -> bool {
    c.is_ascii_alphabetic() || c == '_'
}

fn is_ident_char(c: char) -> bool {
    c.is_ascii_alphanumeric() || c == '_' || c == '\''
}

struct Cursor<'a> {
    chars: Vec<(usize, char)>,
    i: usize,
    line: usize,
    col: usize,
    text: &'a str,
}

impl<'a> Cursor<'a> {
    fn peek_at(&self, k: usize) -> Option<char> {
        self.chars.get(self.i + k).map(|&(_, c)| c)
    }

    fn pos(&self) -> Pos {
        let offset = self.chars.get(self.i).map_or(self.text.len(), |&(o, _)| o);
        Pos { line: self.line, col: self.col, offset }
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.peek_at(0)?;
        self.i += 1;
        if c == '\n' {
            self.line += 1;
            self.col = 1;
        } else {
            self.col += 1;
        }
        Some(c)
    }

    fn take_while(&mut self, f: impl Fn(char) -> bool) -> String {
        let mut s = String::new();
        while let Some(c) = self.peek_at(0) {
            if !f(c) {
                break;
            }
            s.push(c);
            self.bump();
        }
        s
    }
}

pub fn tokenize(text: &str) -> Result<Vec<Token>, DslError> {
    let mut cur = Cursor { chars: text.char_indices().collect(), i: 0, line: 1, col: 1, text };
    let mut out = Vec::new();
    loop {
        while let Some(c) = cur.peek_at(0) {
            if c.is_whitespace() {
                cur.bump();
            } else if c == '#' {
                cur.take_while(|c| c != '\n');
            } else {
                break;
            }
        }
        let pos = cur.pos();
        let Some(c) = cur.peek_at(0) else {
            out.push(Token { tok: Tok::Eof, pos, end: text.len() });
            return Ok(out);
        };
        let tok = if c.is_ascii_digit() {
            Tok::Int(cur.take_while(|c| c.is_ascii_digit()))
        } else if is_ident_start(c) {
            let vec_basis = c == 'd'
                && cur.peek_at(1) == Some('/')
                && cur.peek_at(2) == Some('d')
                && cur.peek_at(3).is_some_and(is_ident_start);
            if vec_basis {
                for _ in 0..3 {
                    cur.bump();
                }
                Tok::VecBasis(cur.take_while(is_ident_char))
            } else {
                Tok::Ident(cur.take_while(is_ident_char))
            }
        } else {
            cur.bump();
            match c {
                '(' => Tok::LParen,
                ')' => Tok::RParen,
                '[' => Tok::LBracket,
                ']' => Tok::RBracket,
                ',' => Tok::Comma,
                ';' => Tok::Semi,
                '=' => Tok::Eq,
                '+' => Tok::Plus,
                '-' => Tok::Minus,
                '*' => Tok::Star,
                '/' => Tok::Slash,
                '^' => Tok::Caret,
                other => {
                    return Err(DslError::syntax(pos, format!("unexpected character `{other}`")));
                }
            }
        };
        out.push(Token { tok, pos, end: cur.pos().offset });
    }
}
