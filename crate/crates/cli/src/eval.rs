//! Expression evaluation and the builtin functions.

use std::collections::HashMap;
use std::sync::Arc;

use dj_atiyah::{deriv_bracket, homogenize_endo, AtiyahForm, Derivation};
use dj_cartan::{schouten, VectorField};
use dj_dolbeault::{dbar_d, dbar_d_solve, partial_d, partial_d_solve, HoloChart};
use dj_omni::{backward_embedding, backward_projection, flat_product, graph_atiyah, star, Frame, OmniSection};
use dj_scalar::{default_samples, CScalar, Chart, Field, Rational, SamplePoint, QI};
use dj_structures::{
    build_l_jz, canonical, eigenframe, invert_jacobi, lcs_to_jacobi, split_contact, split_lcs, AcQuadruple, GenContactOp,
    HomGC, HomPoisson, JacobiPair,
};

use crate::ast::{Arg, BinOp, Expr};
use crate::error::{EvalError, EvalResult};
use crate::value::{self as v, Value};

pub const SUITES: &[&str] = &["bracket", "dolbeault", "homogenization"];
pub const CLASSIFY_KINDS: &[&str] = &["generalized_contact", "hom_gc", "neither"];

/// Builtin functions with their minimum and maximum number of arguments.
pub const FUNCTIONS: &[(&str, usize, usize)] = &[
    ("canonical", 1, 2),
    ("chart", 1, usize::MAX),
    ("jacobi", 2, 2),
    ("hom_poisson", 2, 2),
    ("graph", 1, 1),
    ("span", 0, usize::MAX),
    ("derivations", 0, 0),
    ("jets", 0, 0),
    ("bfield", 2, 2),
    ("bfield_open", 2, 2),
    ("conj", 1, 1),
    ("d", 1, 1),
    ("interior", 2, 2),
    ("lie", 2, 2),
    ("bracket", 2, 2),
    ("pair", 2, 2),
    ("dorfman", 2, 2),
    ("flat_product", 2, 2),
    ("star", 2, 2),
    ("backward_projection", 2, 2),
    ("backward_embedding", 2, 2),
    ("eigenframe", 1, 1),
    ("l_jz", 1, 1),
    ("split_contact", 2, 3),
    ("split_lcs", 2, 3),
    ("invert_jacobi", 1, 1),
    ("lcs_to_jacobi", 2, 2),
    ("contact_op", 1, 1),
    ("complex_op", 1, 1),
    ("gen_contact", 1, 1),
    ("conjugate", 2, 2),
    ("hom_gc", 5, 5),
    ("nacs", 3, 4),
    ("nacs_normal", 1, 1),
    ("gauge_transform", 2, 2),
    ("to_phi", 1, 1),
    ("homogenize", 1, 1),
    ("dbar_d", 1, 1),
    ("partial_d", 1, 1),
    ("dbar_d_solve", 1, 1),
    ("partial_d_solve", 1, 1),
];

pub fn function_arity(name: &str) -> Option<(usize, usize)> {
    FUNCTIONS.iter().find(|(n, ..)| *n == name).map(|&(_, a, b)| (a, b))
}

/// Settings shared by every document run.
#[derive(Clone, Debug)]
pub struct Options {
    /// Seed of the randomized suites and of the extra sample points.
    pub seed: u64,
    /// Extra pseudo-random sample points attached to every frame.
    pub samples: usize,
    /// Largest total degree allowed for scalars built by a document.
    pub max_degree: u32,
}

impl Default for Options {
    fn default() -> Self {
        Options { seed: dj_scalar::DEFAULT_SEED, samples: 3, max_degree: 24 }
    }
}

/// Bindings and declared sample points of a document.
pub struct Env {
    pub opts: Options,
    pub values: HashMap<String, Value>,
    pub samples: Vec<(Arc<Chart>, SamplePoint)>,
}

impl Env {
    pub fn new(opts: Options) -> Self {
        Env { opts, values: HashMap::new(), samples: Vec::new() }
    }

    /// Attach the configured and declared sample points to a frame.
    pub fn prepare(&self, f: Frame) -> Frame {
        let chart = f.chart().clone();
        let mut pts = default_samples(chart.dim(), self.opts.samples, self.opts.seed);
        pts.extend(self.samples.iter().filter(|(c, _)| *c == chart).map(|(_, p)| p.clone()));
        f.with_samples(pts)
    }
}

/// Evaluation context: the environment and the chart in effect.
pub struct Ctx<'a> {
    pub env: &'a Env,
    pub chart: Arc<Chart>,
}

fn qi(re: Rational) -> QI {
    QI::from_rational(re)
}

impl<'a> Ctx<'a> {
    pub fn eval(&self, e: &Expr) -> EvalResult<Value> {
        match e {
            Expr::Int(n) => Ok(Value::Const(qi(Rational::from_integer(n.clone().into())))),
            Expr::Ident(name) => self.ident(name),
            Expr::VecBasis(name) => {
                let i = self.chart.index_of(name)?;
                Ok(Value::Vector(VectorField::basis(&self.chart, i).to_multivector()))
            }
            Expr::Neg(a) => v::neg(&self.eval(a)?),
            Expr::Binary(op, a, b) => {
                let (x, y) = (self.eval(a)?, self.eval(b)?);
                let out = match op {
                    BinOp::Add => v::add(&x, &y)?,
                    BinOp::Sub => v::sub(&x, &y)?,
                    BinOp::Mul => v::mul(&x, &y)?,
                    BinOp::Div => v::div(&x, &y)?,
                    BinOp::Caret => v::caret(&x, &y, self.env.opts.max_degree)?,
                };
                self.guard(&out)?;
                Ok(out)
            }
            Expr::Call(name, args) => self.call(name, args),
            Expr::Tuple(items) => {
                if items.len() != 2 {
                    return Err(EvalError::msg(format!("a section is a pair (D, psi), got {} entries", items.len())));
                }
                let (d, psi) = (self.eval(&items[0])?, self.eval(&items[1])?);
                let ch = d.chart().or(psi.chart()).unwrap_or_else(|| self.chart.clone());
                Ok(Value::Section(OmniSection::new(v::derivation(&d, &ch)?, v::jet(&psi, &ch)?)))
            }
            Expr::List(items) => Ok(Value::List(items.iter().map(|x| self.eval(x)).collect::<EvalResult<_>>()?)),
        }
    }

    fn ident(&self, name: &str) -> EvalResult<Value> {
        if let Some(val) = self.env.values.get(name) {
            return Ok(val.clone());
        }
        let c = &self.chart;
        match name {
            "j" => return Ok(Value::Form(AtiyahForm::j(c))),
            "one" => return Ok(Value::Derivation(Derivation::one(c))),
            "I" => return Ok(Value::Const(QI::new(Rational::from_integer(0.into()), Rational::from_integer(1.into())))),
            _ => {}
        }
        if let Ok(i) = c.index_of(name) {
            return Ok(Value::Scalar(c.clone(), CScalar::var(c.dim(), i)));
        }
        if let Some(i) = name.strip_prefix('d').and_then(|n| c.index_of(n).ok()) {
            return Ok(Value::Form(AtiyahForm::embed(&dj_cartan::Form::basis(c, &[i]))));
        }
        Err(EvalError::msg(format!("UnknownIdentifier: `{name}`")))
    }

    /// Degree guardrail on scalar results.
    fn guard(&self, out: &Value) -> EvalResult<()> {
        if let Value::Scalar(_, s) = out {
            let max = self.env.opts.max_degree;
            let deg = [&s.re, &s.im].iter().map(|r| r.num().total_degree().max(r.den().total_degree())).max().unwrap_or(0);
            if deg > max {
                return Err(EvalError::msg(format!("scalar of degree {deg} exceeds the degree guardrail {max}")));
            }
        }
        Ok(())
    }

    fn positional(&self, args: &[Arg], i: usize) -> EvalResult<Value> {
        self.eval(&args[i].value)
    }

    /// Chart of the first argument that has one, else the chart in effect.
    fn chart_of(&self, vals: &[&Value]) -> Arc<Chart> {
        vals.iter().find_map(|x| x.chart()).unwrap_or_else(|| self.chart.clone())
    }

    fn frame(&self, x: &Value) -> EvalResult<Frame> {
        match x {
            Value::Frame(f) => Ok(f.clone()),
            Value::List(items) => {
                let refs: Vec<&Value> = items.iter().collect();
                self.span(&refs)
            }
            other => Err(EvalError::msg(format!("expected a frame, got a {}", other.type_name()))),
        }
    }

    fn span(&self, items: &[&Value]) -> EvalResult<Frame> {
        let ch = self.chart_of(items);
        let gens = items.iter().map(|x| v::section(x, &ch)).collect::<EvalResult<Vec<_>>>()?;
        Ok(self.env.prepare(Frame::new(&ch, gens)))
    }

    fn size(&self, x: &Value) -> EvalResult<usize> {
        v::const_integer(x)
            .filter(|&k| k > 0)
            .map(|k| k as usize)
            .ok_or_else(|| EvalError::msg(format!("expected a positive integer, got {}", x.render())))
    }

    fn call(&self, name: &str, args: &[Arg]) -> EvalResult<Value> {
        let out = self.call_inner(name, args)?;
        Ok(match out {
            Value::Frame(f) => Value::Frame(self.env.prepare(f)),
            other => other,
        })
    }

    fn call_inner(&self, name: &str, args: &[Arg]) -> EvalResult<Value> {
        let arg = |i: usize| self.positional(args, i);
        let ch = |vals: &[&Value]| self.chart_of(vals);
        Ok(match name {
            "canonical" => {
                let Expr::Ident(which) = &args[0].value else { unreachable!("parser checks gallery names") };
                let size = match args.get(1) {
                    Some(a) => self.size(&self.eval(&a.value)?)?,
                    None => 1,
                };
                Value::from(canonical(which, size)?)
            }
            "chart" => {
                let names: Vec<String> = args
                    .iter()
                    .map(|a| match &a.value {
                        Expr::Ident(n) => n.clone(),
                        _ => unreachable!("parser checks coordinate names"),
                    })
                    .collect();
                Value::Chart(Chart::new(&names)?)
            }
            "jacobi" => {
                let (l, e) = (arg(0)?, arg(1)?);
                let c = ch(&[&l, &e]);
                Value::Jacobi(JacobiPair::new(v::multivector(&l, &c, 2)?, v::vector_field(&e, &c)?))
            }
            "hom_poisson" => {
                let (p, z) = (arg(0)?, arg(1)?);
                let c = ch(&[&p, &z]);
                Value::HomPoisson(HomPoisson::new(v::multivector(&p, &c, 2)?, v::vector_field(&z, &c)?))
            }
            "graph" => match arg(0)? {
                Value::Jacobi(j) => Value::Frame(j.graph()),
                Value::HomPoisson(h) => Value::Frame(h.dirac_jacobi()),
                Value::Form(w) if w.deg() == 2 => Value::Frame(graph_atiyah(&w)?),
                other => return Err(EvalError::msg(format!("graph of a {} is not defined", other.type_name()))),
            },
            "span" => {
                let vals = args.iter().map(|a| self.eval(&a.value)).collect::<EvalResult<Vec<_>>>()?;
                let flat: Vec<&Value> = vals
                    .iter()
                    .flat_map(|x| match x {
                        Value::List(items) => items.iter().collect::<Vec<_>>(),
                        other => vec![other],
                    })
                    .collect();
                Value::Frame(self.span(&flat)?)
            }
            "derivations" => Value::Frame(Frame::derivations(&self.chart)),
            "jets" => Value::Frame(Frame::jets(&self.chart)),
            "bfield" | "bfield_open" => {
                let (b, x) = (arg(0)?, arg(1)?);
                let c = ch(&[&x, &b]);
                let bf = v::atiyah_form(&b, &c)?;
                let open = name == "bfield_open";
                match &x {
                    Value::Frame(f) => Value::Frame(f.bfield(&bf, open)?),
                    other => Value::Section(dj_omni::bfield(&bf, &v::section(other, &c)?, open)?),
                }
            }
            "conj" => match arg(0)? {
                Value::Const(c) => Value::Const(QI::new(c.re.clone(), -c.im.clone())),
                Value::Scalar(c, s) => Value::Scalar(c, s.conj()),
                Value::Vector(m) => Value::Vector(m.conj()),
                Value::Form(w) => Value::Form(w.conj()),
                Value::Derivation(d) => Value::Derivation(d.conj()),
                Value::Section(s) => Value::Section(s.conj()),
                Value::Frame(f) => Value::Frame(f.conj()),
                other => return Err(EvalError::msg(format!("conjugate of a {} is not defined", other.type_name()))),
            },
            "d" => {
                let x = arg(0)?;
                Value::form(v::atiyah_form(&x, &ch(&[&x]))?.d())
            }
            "interior" | "lie" => {
                let (d, w) = (arg(0)?, arg(1)?);
                let c = ch(&[&d, &w]);
                let (d, w) = (v::derivation(&d, &c)?, v::atiyah_form(&w, &c)?);
                if name == "interior" {
                    if w.deg() == 0 {
                        return Err(EvalError::msg("interior product of a scalar"));
                    }
                    Value::form(w.interior(&d))
                } else {
                    Value::form(w.lie(&d))
                }
            }
            "bracket" => {
                let (a, b) = (arg(0)?, arg(1)?);
                let c = ch(&[&a, &b]);
                match (&a, &b) {
                    (Value::Vector(x), Value::Vector(y)) => {
                        v::same_chart(x.chart(), y.chart())?;
                        Value::Vector(schouten(x, y))
                    }
                    _ => Value::Derivation(deriv_bracket(&v::derivation(&a, &c)?, &v::derivation(&b, &c)?)?),
                }
            }
            "pair" | "dorfman" => {
                let (a, b) = (arg(0)?, arg(1)?);
                let c = ch(&[&a, &b]);
                let (a, b) = (v::section(&a, &c)?, v::section(&b, &c)?);
                if name == "pair" {
                    Value::Scalar(c, dj_omni::omni_pair(&a, &b)?)
                } else {
                    Value::Section(dj_omni::dorfman(&a, &b)?)
                }
            }
            "flat_product" | "star" => {
                let (a, b) = (self.frame(&arg(0)?)?, self.frame(&arg(1)?)?);
                Value::Frame(if name == "star" { star(&a, &b)? } else { flat_product(&a, &b)? })
            }
            "backward_projection" => {
                let f = self.frame(&arg(0)?)?;
                let Value::Chart(product) = arg(1)? else {
                    return Err(EvalError::msg("backward_projection needs a product chart, e.g. chart(x, p, u, y)"));
                };
                Value::Frame(backward_projection(&f, &product)?)
            }
            "backward_embedding" => {
                let f = self.frame(&arg(0)?)?;
                Value::Frame(backward_embedding(&f, &raw_names(&args[1].value))?)
            }
            "eigenframe" | "l_jz" => match arg(0)? {
                Value::GenContact(k) => Value::Frame(eigenframe(&k)?),
                Value::HomGC(h) => Value::Frame(build_l_jz(&h)?),
                other => return Err(EvalError::msg(format!("no eigenframe for a {}", other.type_name()))),
            },
            "split_contact" | "split_lcs" => {
                let first = arg(0)?;
                let (m, x, d) = match (&first, args.len()) {
                    (Value::HomPoisson(h), 2) => (h.pi.clone(), h.z.clone(), arg(1)?),
                    (Value::Jacobi(j), 2) => (j.lambda.clone(), j.e.clone(), arg(1)?),
                    (_, 3) => {
                        let second = arg(1)?;
                        let c = ch(&[&first, &second]);
                        (v::multivector(&first, &c, 2)?, v::vector_field(&second, &c)?, arg(2)?)
                    }
                    _ => return Err(EvalError::msg(format!("{name} takes (pi, Z, d) or a pair and d"))),
                };
                let d = self.size(&d)?;
                Value::Jacobi(if name == "split_contact" { split_contact(&m, &x, d)? } else { split_lcs(&m, &x, d)? })
            }
            "invert_jacobi" => Value::Form(invert_jacobi(&jacobi_of(&arg(0)?)?)?.omega),
            "lcs_to_jacobi" => {
                let (o, g) = (arg(0)?, arg(1)?);
                let c = ch(&[&o, &g]);
                Value::Jacobi(lcs_to_jacobi(&v::plain_form(&o, &c, 2)?, &v::plain_form(&g, &c, 1)?)?)
            }
            "contact_op" => Value::GenContact(GenContactOp::contact_from_jacobi(&jacobi_of(&arg(0)?)?)?),
            "complex_op" => {
                let p = arg(0)?;
                Value::GenContact(GenContactOp::complex_type(&v::gauge(&p, &ch(&[&p]))?))
            }
            "gen_contact" => {
                let Value::List(rows) = arg(0)? else {
                    return Err(EvalError::msg("gen_contact takes a list of matrix rows"));
                };
                let all: Vec<&Value> = rows
                    .iter()
                    .flat_map(|r| match r {
                        Value::List(items) => items.iter().collect::<Vec<_>>(),
                        other => vec![other],
                    })
                    .collect();
                let c = ch(&all);
                let m = rows
                    .iter()
                    .map(|r| match r {
                        Value::List(items) => items.iter().map(|x| v::scalar_on(x, &c)).collect::<EvalResult<Vec<_>>>(),
                        _ => Err(EvalError::msg("matrix rows must be lists")),
                    })
                    .collect::<EvalResult<Vec<_>>>()?;
                Value::GenContact(GenContactOp::from_matrix(&c, m)?)
            }
            "conjugate" => {
                let (k, b) = (arg(0)?, arg(1)?);
                let Value::GenContact(k) = k else {
                    return Err(EvalError::msg("conjugate takes a generalized contact operator and a 2-form"));
                };
                Value::GenContact(k.conjugate_bfield(&v::atiyah_form(&b, k.chart())?)?)
            }
            "hom_gc" => {
                let vals = (0..5).map(arg).collect::<EvalResult<Vec<_>>>()?;
                let c = ch(&vals.iter().collect::<Vec<_>>());
                Value::HomGC(HomGC::new(
                    v::endo(&vals[0], &c)?,
                    v::multivector(&vals[1], &c, 2)?,
                    v::plain_form(&vals[2], &c, 2)?,
                    v::vector_field(&vals[3], &c)?,
                    v::plain_form(&vals[4], &c, 1)?,
                ))
            }
            "nacs" => {
                let vals = (0..args.len()).map(arg).collect::<EvalResult<Vec<_>>>()?;
                let c = ch(&vals.iter().collect::<Vec<_>>());
                let g = match vals.get(3) {
                    Some(g) => v::scalar_on(g, &c)?,
                    None => CScalar::zero(c.dim()),
                };
                Value::Nacs(AcQuadruple::new(
                    v::endo(&vals[0], &c)?,
                    v::vector_field(&vals[1], &c)?,
                    v::plain_form(&vals[2], &c, 1)?,
                    g,
                ))
            }
            "nacs_normal" => {
                let f = arg(0)?;
                let c = ch(&[&f]);
                if c.dim() % 2 == 0 {
                    return Err(EvalError::msg("normal forms live on charts (u, x.., y..) of odd dimension"));
                }
                Value::Nacs(AcQuadruple::normal_form(&c, &v::scalar_on(&f, &c)?))
            }
            "gauge_transform" => {
                let (t, f) = (arg(0)?, arg(1)?);
                let Value::Nacs(t) = t else {
                    return Err(EvalError::msg("gauge_transform takes an almost contact quadruple and a scalar"));
                };
                let f = v::scalar_on(&f, t.chart())?;
                Value::Nacs(t.gauge_transform(&f))
            }
            "to_phi" => match arg(0)? {
                Value::Nacs(t) => Value::Gauge(t.to_phi()),
                other => return Err(EvalError::msg(format!("to_phi of a {} is not defined", other.type_name()))),
            },
            "homogenize" => {
                let p = arg(0)?;
                Value::Endo(homogenize_endo(&v::gauge(&p, &ch(&[&p]))?)?)
            }
            "dbar_d" | "partial_d" | "dbar_d_solve" | "partial_d_solve" => {
                let x = arg(0)?;
                let c = ch(&[&x]);
                let w = v::atiyah_form(&x, &c)?;
                let h = HoloChart::from_chart(&c)?;
                Value::form(match name {
                    "dbar_d" => dbar_d(&h, &w)?,
                    "partial_d" => partial_d(&h, &w)?,
                    "dbar_d_solve" => dbar_d_solve(&h, &w)?,
                    _ => partial_d_solve(&h, &w)?,
                })
            }
            other => return Err(EvalError::msg(format!("unknown function `{other}`"))),
        })
    }
}

pub fn jacobi_of(x: &Value) -> EvalResult<JacobiPair> {
    match x {
        Value::Jacobi(j) => Ok(j.clone()),
        other => Err(EvalError::msg(format!("expected a Jacobi pair, got a {}", other.type_name()))),
    }
}

pub fn raw_names(e: &Expr) -> Vec<&str> {
    match e {
        Expr::List(items) => items
            .iter()
            .filter_map(|x| match x {
                Expr::Ident(n) => Some(n.as_str()),
                _ => None,
            })
            .collect(),
        _ => Vec::new(),
    }
}

/// Rational value of a sample-point literal.
pub fn rational_literal(e: &Expr) -> EvalResult<Rational> {
    let one = |n: i64| Rational::from_integer(n.into());
    Ok(match e {
        Expr::Int(n) => Rational::from_integer(n.clone().into()),
        Expr::Neg(a) => -rational_literal(a)?,
        Expr::Binary(op, a, b) => {
            let (x, y) = (rational_literal(a)?, rational_literal(b)?);
            match op {
                BinOp::Add => x + y,
                BinOp::Sub => x - y,
                BinOp::Mul => x * y,
                BinOp::Div => {
                    if y == one(0) {
                        return Err(EvalError::msg("division by zero in a sample point"));
                    }
                    x / y
                }
                BinOp::Caret => return Err(EvalError::msg("powers are not allowed in sample points")),
            }
        }
        _ => return Err(EvalError::msg("sample coordinates must be rational literals")),
    })
}
