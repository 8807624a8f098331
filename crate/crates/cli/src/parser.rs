//! Recursive-descent parser with name resolution.
//!
//! ```text
//! document  := chart-decl statement*
//! statement := chart-decl | binding | sample-decl | command
//! chart-decl:= "chart" "(" ident ("," ident)* ")" ";"
//! binding   := ["let"] ident "=" expr ";"
//! sample    := "sample" "(" expr ("," expr)* ")" ";"
//! command   := name arg ([","] arg)* ["expect" ("pass" | "fail")] ";"
//! expr      := term (("+" | "-") term)*
//! term      := unary (("*" | "/") unary)*
//! unary     := "-" unary | power
//! power     := atom ["^" unary]
//! atom      := int | ident | "d/d" ident | call | "(" expr ")"
//!            | "(" expr "," expr ("," expr)* ")" | "[" [expr ("," expr)*] "]"
//! ```

use std::collections::HashSet;

use num_bigint::BigUint;

use crate::ast::{Arg, BinOp, Command, Document, Expectation, Expr, Statement};
use crate::error::DslError;
use crate::eval::{function_arity, CLASSIFY_KINDS, SUITES};
use crate::lexer::{tokenize, Pos, Tok, Token};

/// Command names with their minimum and maximum number of arguments.
pub const COMMANDS: &[(&str, usize, usize)] = &[
    ("check-jacobi", 1, 2),
    ("check-hom-poisson", 1, 2),
    ("check-gcs", 1, 1),
    ("check-hom-gc", 1, 1),
    ("check-nacs", 1, 1),
    ("check-dl-complex", 1, 1),
    ("check-integrable", 1, 1),
    ("check-equal", 2, 2),
    ("eigenframe", 1, 2),
    ("dorfman", 2, 3),
    ("star", 2, 3),
    ("flat-product", 2, 3),
    ("backward-projection", 2, 3),
    ("backward-embedding", 2, 3),
    ("split-contact", 2, 4),
    ("split-lcs", 2, 4),
    ("invert-jacobi", 1, 2),
    ("solve-dbarD", 1, 2),
    ("frame-equal", 2, 2),
    ("classify", 1, 2),
    ("suite", 1, 2),
];

/// Words that cannot name coordinates or bindings.
pub const RESERVED: &[&str] = &["j", "one", "I", "let", "chart", "sample", "expect"];

/// Which arguments of a call or command are bare names rather than
/// expressions.
#[derive(Clone, Copy, PartialEq, Eq)]
enum Raw {
    Expr,
    Gallery,
    NewName,
    NameList,
    Suite,
    Kind,
}

fn raw_rule(callee: &str, index: usize) -> Raw {
    match (callee, index) {
        ("canonical", 0) => Raw::Gallery,
        ("chart", _) => Raw::NewName,
        ("backward_embedding" | "backward-embedding", 1) => Raw::NameList,
        ("suite", 0) => Raw::Suite,
        ("classify", 1) => Raw::Kind,
        _ => Raw::Expr,
    }
}

struct Scope {
    chart: Option<Vec<String>>,
    bindings: HashSet<String>,
}

impl Scope {
    fn is_coordinate(&self, name: &str) -> bool {
        self.chart.as_ref().is_some_and(|c| c.iter().any(|n| n == name))
    }

    fn resolves(&self, name: &str) -> bool {
        RESERVED[..3].contains(&name)
            || self.bindings.contains(name)
            || self.is_coordinate(name)
            || name.strip_prefix('d').is_some_and(|c| self.is_coordinate(c))
    }

    fn describe_chart(&self) -> String {
        self.chart.as_ref().map(|c| format!("({})", c.join(", "))).unwrap_or_default()
    }
}

struct Parser {
    toks: Vec<Token>,
    i: usize,
    scope: Scope,
}

pub fn parse(text: &str) -> Result<Document, DslError> {
    let toks = tokenize(text)?;
    let mut p = Parser { toks, i: 0, scope: Scope { chart: None, bindings: HashSet::new() } };
    p.document()
}

/// Parse a single expression in the scope of a chart, without bindings.
/// Used to read rendered witnesses back.
pub fn parse_expr(text: &str, chart: &[String]) -> Result<Expr, DslError> {
    let toks = tokenize(text)?;
    let mut p = Parser { toks, i: 0, scope: Scope { chart: Some(chart.to_vec()), bindings: HashSet::new() } };
    let e = p.expr()?;
    p.expect(Tok::Eof)?;
    Ok(e)
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.i].tok
    }

    fn peek_at(&self, k: usize) -> &Tok {
        let j = (self.i + k).min(self.toks.len() - 1);
        &self.toks[j].tok
    }

    fn pos(&self) -> Pos {
        self.toks[self.i].pos
    }

    fn advance(&mut self) -> Token {
        let t = self.toks[self.i].clone();
        if self.i + 1 < self.toks.len() {
            self.i += 1;
        }
        t
    }

    /// Whether the current token starts right where the previous one ended.
    fn adjacent(&self) -> bool {
        self.i > 0 && self.toks[self.i - 1].end == self.toks[self.i].pos.offset
    }

    fn error_here(&self, what: &str) -> DslError {
        DslError::syntax(self.pos(), format!("expected {what}, found {}", self.peek().describe()))
    }

    fn expect(&mut self, t: Tok) -> Result<(), DslError> {
        if *self.peek() == t {
            self.advance();
            Ok(())
        } else {
            let what = match &t {
                Tok::Eof => "end of input".to_string(),
                other => other.describe(),
            };
            Err(self.error_here(&what))
        }
    }

    fn ident(&mut self, what: &str) -> Result<(String, Pos), DslError> {
        let pos = self.pos();
        match self.peek().clone() {
            Tok::Ident(s) => {
                self.advance();
                Ok((s, pos))
            }
            _ => Err(self.error_here(what)),
        }
    }

    fn document(&mut self) -> Result<Document, DslError> {
        let mut statements = Vec::new();
        let mut positions = Vec::new();
        while *self.peek() != Tok::Eof {
            let pos = self.pos();
            let st = self.statement()?;
            if statements.is_empty() && !matches!(st, Statement::Chart(_)) {
                return Err(DslError::syntax(pos, "a document must start with a chart declaration"));
            }
            statements.push(st);
            positions.push((pos.line, pos.col));
        }
        if statements.is_empty() {
            return Err(DslError::syntax(self.pos(), "empty document: expected a chart declaration"));
        }
        Ok(Document { statements, positions })
    }

    fn statement(&mut self) -> Result<Statement, DslError> {
        let st = match (self.peek().clone(), self.peek_at(1).clone()) {
            (Tok::Ident(k), Tok::LParen) if k == "chart" => self.chart_decl()?,
            (Tok::Ident(k), Tok::LParen) if k == "sample" => self.sample_decl()?,
            (Tok::Ident(k), Tok::Ident(_)) if k == "let" => {
                self.advance();
                self.binding()?
            }
            (Tok::Ident(_), Tok::Eq) => self.binding()?,
            (Tok::Ident(_), _) => Statement::Command(self.command()?),
            _ => return Err(self.error_here("a statement")),
        };
        self.expect(Tok::Semi)?;
        Ok(st)
    }

    fn chart_decl(&mut self) -> Result<Statement, DslError> {
        self.advance();
        self.expect(Tok::LParen)?;
        let mut names: Vec<String> = Vec::new();
        loop {
            let (name, pos) = self.ident("a coordinate name")?;
            self.check_new_name(&name, pos, &names)?;
            names.push(name);
            if *self.peek() == Tok::Comma {
                self.advance();
            } else {
                break;
            }
        }
        self.expect(Tok::RParen)?;
        for a in &names {
            if let Some(b) = names.iter().find(|b| a.strip_prefix('d') == Some(b.as_str())) {
                return Err(DslError::syntax(self.pos(), format!("coordinate `{a}` clashes with the differential of `{b}`")));
            }
        }
        self.scope.chart = Some(names.clone());
        Ok(Statement::Chart(names))
    }

    fn check_new_name(&self, name: &str, pos: Pos, earlier: &[String]) -> Result<(), DslError> {
        if RESERVED.contains(&name) {
            return Err(DslError::syntax(pos, format!("`{name}` is reserved")));
        }
        if earlier.iter().any(|n| n == name) {
            return Err(DslError::syntax(pos, format!("duplicate coordinate `{name}`")));
        }
        if self.scope.bindings.contains(name) {
            return Err(DslError::syntax(pos, format!("coordinate `{name}` shadows a binding")));
        }
        Ok(())
    }

    fn binding(&mut self) -> Result<Statement, DslError> {
        let (name, pos) = self.ident("a binding name")?;
        if RESERVED.contains(&name.as_str()) {
            return Err(DslError::syntax(pos, format!("`{name}` is reserved")));
        }
        if self.scope.resolves(&name) {
            return Err(DslError::syntax(pos, format!("`{name}` is already defined")));
        }
        self.expect(Tok::Eq)?;
        let value = self.expr()?;
        self.scope.bindings.insert(name.clone());
        Ok(Statement::Let { name, value })
    }

    fn sample_decl(&mut self) -> Result<Statement, DslError> {
        let pos = self.pos();
        self.advance();
        self.expect(Tok::LParen)?;
        let mut coords = Vec::new();
        loop {
            let at = self.pos();
            let e = self.expr()?;
            if !is_rational_literal(&e) {
                return Err(DslError::syntax(at, "sample coordinates must be rational literals"));
            }
            coords.push(e);
            if *self.peek() == Tok::Comma {
                self.advance();
            } else {
                break;
            }
        }
        self.expect(Tok::RParen)?;
        let dim = self.scope.chart.as_ref().map_or(0, |c| c.len());
        if coords.len() != dim {
            return Err(DslError::ChartMismatch {
                line: pos.line,
                col: pos.col,
                message: format!("sample point has {} coordinates, chart {} has {dim}", coords.len(), self.scope.describe_chart()),
            });
        }
        Ok(Statement::Sample(coords))
    }

    fn command_name(&mut self) -> Result<(String, Pos), DslError> {
        let (mut name, pos) = self.ident("a command")?;
        // `check jacobi` and `backward projection` are accepted for
        // `check-jacobi` and `backward-projection`.
        if name == "check" || name == "backward" {
            if let Tok::Ident(next) = self.peek().clone() {
                self.advance();
                name = format!("{name}-{next}");
            }
        }
        while *self.peek() == Tok::Minus && self.adjacent() {
            let save = self.i;
            self.advance();
            match self.peek().clone() {
                Tok::Ident(part) if self.adjacent() => {
                    self.advance();
                    name.push('-');
                    name.push_str(&part);
                }
                _ => {
                    self.i = save;
                    break;
                }
            }
        }
        Ok((name, pos))
    }

    fn command(&mut self) -> Result<Command, DslError> {
        let (name, pos) = self.command_name()?;
        let Some(&(_, min, max)) = COMMANDS.iter().find(|(c, ..)| *c == name) else {
            return Err(DslError::syntax(pos, format!("unknown command `{name}`")));
        };
        let mut args = Vec::new();
        let mut expect = None;
        loop {
            match self.peek().clone() {
                Tok::Semi | Tok::Eof => break,
                Tok::Ident(k) if k == "expect" => {
                    self.advance();
                    let (v, at) = self.ident("`pass` or `fail`")?;
                    expect = Some(match v.as_str() {
                        "pass" => Expectation::Pass,
                        "fail" => Expectation::Fail,
                        _ => return Err(DslError::syntax(at, format!("expected `pass` or `fail`, found `{v}`"))),
                    });
                    break;
                }
                Tok::Comma if !args.is_empty() => {
                    self.advance();
                }
                _ if !args.is_empty() && !starts_atom(self.peek()) => {
                    return Err(self.error_here("`,`, `expect` or `;`"));
                }
                _ => {}
            }
            let rule = raw_rule(&name, args.len());
            args.push(self.argument(rule)?);
        }
        if args.len() < min || args.len() > max {
            let range = if min == max { format!("{min}") } else { format!("{min} to {max}") };
            return Err(DslError::syntax(pos, format!("`{name}` takes {range} arguments, got {}", args.len())));
        }
        Ok(Command { name, args, expect })
    }

    fn argument(&mut self, rule: Raw) -> Result<Expr, DslError> {
        match rule {
            Raw::Expr => self.expr(),
            Raw::Gallery => {
                let (name, pos) = self.ident("a gallery name")?;
                if !dj_structures::GALLERY.contains(&name.as_str()) {
                    return Err(DslError::unknown(pos, &name, format!(" (gallery: {})", dj_structures::GALLERY.join(", "))));
                }
                Ok(Expr::Ident(name))
            }
            Raw::NewName => Ok(Expr::Ident(self.ident("a coordinate name")?.0)),
            Raw::Suite => self.choice(SUITES, "suite"),
            Raw::Kind => self.choice(CLASSIFY_KINDS, "structure kind"),
            Raw::NameList => {
                self.expect(Tok::LBracket)?;
                let mut items = Vec::new();
                while *self.peek() != Tok::RBracket {
                    if !items.is_empty() {
                        self.expect(Tok::Comma)?;
                    }
                    items.push(Expr::Ident(self.ident("a coordinate name")?.0));
                }
                self.advance();
                Ok(Expr::List(items))
            }
        }
    }

    fn choice(&mut self, options: &[&str], what: &str) -> Result<Expr, DslError> {
        let (name, pos) = self.ident(what)?;
        if !options.contains(&name.as_str()) {
            return Err(DslError::unknown(pos, &name, format!(" ({what} is one of {})", options.join(", "))));
        }
        Ok(Expr::Ident(name))
    }

    fn expr(&mut self) -> Result<Expr, DslError> {
        let mut lhs = self.term()?;
        loop {
            let op = match self.peek() {
                Tok::Plus => BinOp::Add,
                Tok::Minus => BinOp::Sub,
                _ => return Ok(lhs),
            };
            self.advance();
            let rhs = self.term()?;
            lhs = Expr::Binary(op, Box::new(lhs), Box::new(rhs));
        }
    }

    fn term(&mut self) -> Result<Expr, DslError> {
        let mut lhs = self.unary()?;
        loop {
            let op = match self.peek() {
                Tok::Star => BinOp::Mul,
                Tok::Slash => BinOp::Div,
                _ => return Ok(lhs),
            };
            self.advance();
            let rhs = self.unary()?;
            lhs = Expr::Binary(op, Box::new(lhs), Box::new(rhs));
        }
    }

    fn unary(&mut self) -> Result<Expr, DslError> {
        if *self.peek() == Tok::Minus {
            self.advance();
            return Ok(Expr::Neg(Box::new(self.unary()?)));
        }
        let base = self.atom()?;
        if *self.peek() == Tok::Caret {
            self.advance();
            let exp = self.unary()?;
            return Ok(Expr::Binary(BinOp::Caret, Box::new(base), Box::new(exp)));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Expr, DslError> {
        let pos = self.pos();
        match self.peek().clone() {
            Tok::Int(digits) => {
                self.advance();
                let n: BigUint = digits.parse().map_err(|_| DslError::syntax(pos, "malformed number"))?;
                Ok(Expr::Int(n))
            }
            Tok::VecBasis(name) => {
                self.advance();
                if !self.scope.is_coordinate(&name) {
                    return Err(DslError::unknown(
                        pos,
                        &format!("d/d{name}"),
                        format!(": `{name}` is not a coordinate of chart {}", self.scope.describe_chart()),
                    ));
                }
                Ok(Expr::VecBasis(name))
            }
            Tok::Ident(name) => {
                self.advance();
                if *self.peek() == Tok::LParen && self.adjacent() {
                    return self.call(name, pos);
                }
                if !self.scope.resolves(&name) {
                    return Err(DslError::unknown(
                        pos,
                        &name,
                        format!(": not a binding, coordinate or differential of chart {}", self.scope.describe_chart()),
                    ));
                }
                Ok(Expr::Ident(name))
            }
            Tok::LParen => {
                self.advance();
                let first = self.expr()?;
                if *self.peek() == Tok::Comma {
                    let mut items = vec![first];
                    while *self.peek() == Tok::Comma {
                        self.advance();
                        items.push(self.expr()?);
                    }
                    self.expect(Tok::RParen)?;
                    return Ok(Expr::Tuple(items));
                }
                self.expect(Tok::RParen)?;
                Ok(first)
            }
            Tok::LBracket => {
                self.advance();
                let mut items = Vec::new();
                while *self.peek() != Tok::RBracket {
                    if !items.is_empty() {
                        self.expect(Tok::Comma)?;
                    }
                    items.push(self.expr()?);
                }
                self.advance();
                Ok(Expr::List(items))
            }
            _ => Err(self.error_here("an expression")),
        }
    }

    fn call(&mut self, name: String, pos: Pos) -> Result<Expr, DslError> {
        let Some((min, max)) = function_arity(&name) else {
            return Err(DslError::unknown(pos, &name, ": unknown function"));
        };
        self.expect(Tok::LParen)?;
        let mut args: Vec<Arg> = Vec::new();
        let mut seen = Vec::new();
        while *self.peek() != Tok::RParen {
            if !args.is_empty() {
                self.expect(Tok::Comma)?;
            }
            let at = self.pos();
            if let (Tok::Ident(key), Tok::Eq) = (self.peek().clone(), self.peek_at(1).clone()) {
                if name != "canonical" || !["d", "n", "size"].contains(&key.as_str()) {
                    return Err(DslError::syntax(at, format!("`{name}` has no keyword argument `{key}`")));
                }
                self.advance();
                self.advance();
                args.push(Arg { key: Some(key), value: self.expr()? });
                continue;
            }
            let value = self.argument(raw_rule(&name, args.len()))?;
            if name == "chart" {
                if let Expr::Ident(n) = &value {
                    if RESERVED.contains(&n.as_str()) || seen.contains(n) {
                        return Err(DslError::syntax(at, format!("invalid or duplicate coordinate `{n}`")));
                    }
                    seen.push(n.clone());
                }
            }
            args.push(Arg::positional(value));
        }
        self.advance();
        if args.len() < min || args.len() > max {
            let range = if min == max { format!("{min}") } else { format!("{min} to {max}") };
            return Err(DslError::syntax(pos, format!("`{name}` takes {range} arguments, got {}", args.len())));
        }
        Ok(Expr::Call(name, args))
    }
}

fn starts_atom(t: &Tok) -> bool {
    matches!(t, Tok::Ident(_) | Tok::Int(_) | Tok::VecBasis(_) | Tok::LParen | Tok::LBracket)
}

fn is_rational_literal(e: &Expr) -> bool {
    match e {
        Expr::Int(_) => true,
        Expr::Neg(a) => is_rational_literal(a),
        Expr::Binary(BinOp::Add | BinOp::Sub | BinOp::Mul | BinOp::Div, a, b) => {
            is_rational_literal(a) && is_rational_literal(b)
        }
        _ => false,
    }
}
