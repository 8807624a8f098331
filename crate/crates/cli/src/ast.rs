//! Syntax tree of a document and its canonical printer.

use std::fmt;

use num_bigint::BigUint;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum BinOp {
    Add,
    Sub,
    Mul,
    Div,
    /// Wedge product, or a power when the exponent is an integer.
    Caret,
}

impl BinOp {
    pub fn symbol(self) -> &'static str {
        match self {
            BinOp::Add => "+",
            BinOp::Sub => "-",
            BinOp::Mul => "*",
            BinOp::Div => "/",
            BinOp::Caret => "^",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Expr {
    Int(BigUint),
    Ident(String),
    /// `d/dNAME`.
    VecBasis(String),
    Neg(Box<Expr>),
    Binary(BinOp, Box<Expr>, Box<Expr>),
    Call(String, Vec<Arg>),
    /// `(D, psi)`: a section of `DL + J^1 L`.
    Tuple(Vec<Expr>),
    List(Vec<Expr>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Arg {
    pub key: Option<String>,
    pub value: Expr,
}

impl Arg {
    pub fn positional(value: Expr) -> Self {
        Arg { key: None, value }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Expectation {
    Pass,
    Fail,
}

impl Expectation {
    pub fn name(self) -> &'static str {
        match self {
            Expectation::Pass => "pass",
            Expectation::Fail => "fail",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Command {
    pub name: String,
    pub args: Vec<Expr>,
    pub expect: Option<Expectation>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Statement {
    Chart(Vec<String>),
    Let { name: String, value: Expr },
    Sample(Vec<Expr>),
    Command(Command),
}

#[derive(Clone, Debug)]
pub struct Document {
    pub statements: Vec<Statement>,
    /// Source position `(line, column)` of each statement.
    pub positions: Vec<(usize, usize)>,
}

impl PartialEq for Document {
    fn eq(&self, o: &Self) -> bool {
        self.statements == o.statements
    }
}

impl Document {
    pub fn commands(&self) -> impl Iterator<Item = (usize, &Command)> {
        self.statements.iter().enumerate().filter_map(|(i, s)| match s {
            Statement::Command(c) => Some((i, c)),
            _ => None,
        })
    }
}

// Precedence levels used by the printer: sums, products, unary minus, and
// atoms. The caret is printed with an atomic base.
const SUM: u8 = 1;
const PRODUCT: u8 = 2;
const UNARY: u8 = 3;
const ATOM: u8 = 4;

fn level(e: &Expr) -> u8 {
    match e {
        Expr::Binary(BinOp::Add | BinOp::Sub, ..) => SUM,
        Expr::Binary(BinOp::Mul | BinOp::Div, ..) => PRODUCT,
        Expr::Neg(_) | Expr::Binary(BinOp::Caret, ..) => UNARY,
        _ => ATOM,
    }
}

fn write_at(f: &mut fmt::Formatter<'_>, e: &Expr, min: u8) -> fmt::Result {
    if level(e) < min {
        write!(f, "({e})")
    } else {
        write!(f, "{e}")
    }
}

fn comma_list<T: fmt::Display>(f: &mut fmt::Formatter<'_>, items: &[T]) -> fmt::Result {
    for (i, it) in items.iter().enumerate() {
        if i > 0 {
            write!(f, ", ")?;
        }
        write!(f, "{it}")?;
    }
    Ok(())
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::Int(n) => write!(f, "{n}"),
            Expr::Ident(s) => write!(f, "{s}"),
            Expr::VecBasis(s) => write!(f, "d/d{s}"),
            Expr::Neg(e) => {
                write!(f, "-")?;
                write_at(f, e, UNARY)
            }
            Expr::Binary(op @ (BinOp::Add | BinOp::Sub), l, r) => {
                write_at(f, l, SUM)?;
                write!(f, " {} ", op.symbol())?;
                write_at(f, r, PRODUCT)
            }
            Expr::Binary(op @ (BinOp::Mul | BinOp::Div), l, r) => {
                let left = if level(l) < PRODUCT { format!("({l})") } else { l.to_string() };
                let right = if level(r) < UNARY { format!("({r})") } else { r.to_string() };
                // Keep `d / dx` apart from the vector `d/dx`.
                let sep = if *op == BinOp::Div && left.ends_with('d') && right.starts_with('d') { " / " } else { op.symbol() };
                write!(f, "{left}{sep}{right}")
            }
            Expr::Binary(BinOp::Caret, l, r) => {
                write_at(f, l, ATOM)?;
                write!(f, "^")?;
                write_at(f, r, UNARY)
            }
            Expr::Call(name, args) => {
                write!(f, "{name}(")?;
                comma_list(f, args)?;
                write!(f, ")")
            }
            Expr::Tuple(items) => {
                write!(f, "(")?;
                comma_list(f, items)?;
                write!(f, ")")
            }
            Expr::List(items) => {
                write!(f, "[")?;
                comma_list(f, items)?;
                write!(f, "]")
            }
        }
    }
}

impl fmt::Display for Arg {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.key {
            Some(k) => write!(f, "{k}={}", self.value),
            None => write!(f, "{}", self.value),
        }
    }
}

impl fmt::Display for Command {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.name)?;
        if !self.args.is_empty() {
            write!(f, " ")?;
            comma_list(f, &self.args)?;
        }
        if let Some(e) = self.expect {
            write!(f, " expect {}", e.name())?;
        }
        Ok(())
    }
}

impl fmt::Display for Statement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Statement::Chart(names) => {
                write!(f, "chart (")?;
                comma_list(f, names)?;
                write!(f, ");")
            }
            Statement::Let { name, value } => write!(f, "let {name} = {value};"),
            Statement::Sample(coords) => {
                write!(f, "sample (")?;
                comma_list(f, coords)?;
                write!(f, ");")
            }
            Statement::Command(c) => write!(f, "{c};"),
        }
    }
}

impl fmt::Display for Document {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in &self.statements {
            writeln!(f, "{s}")?;
        }
        Ok(())
    }
}
