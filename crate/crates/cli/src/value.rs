//! Runtime values of the document language and their arithmetic.

use std::sync::Arc;

use dj_atiyah::{AtiyahForm, Derivation, GaugeEndo, Jet};
use dj_cartan::{Endo11, Form, Multivector, VectorField};
use dj_omni::{Frame, OmniSection};
use dj_scalar::{CScalar, Chart, Field, QI};
use dj_structures::{show, AcQuadruple, GenContactOp, HomGC, HomPoisson, JacobiPair, Structure};

use crate::error::{EvalError, EvalResult};

#[derive(Clone, Debug)]
pub enum Value {
    /// A number not yet attached to a chart.
    Const(QI),
    Scalar(Arc<Chart>, CScalar),
    /// Multivector field of degree at least one.
    Vector(Multivector),
    /// Atiyah form of degree at least one.
    Form(AtiyahForm),
    Derivation(Derivation),
    Section(OmniSection),
    Endo(Endo11),
    Gauge(GaugeEndo),
    Frame(Frame),
    Jacobi(JacobiPair),
    HomPoisson(HomPoisson),
    GenContact(GenContactOp),
    HomGC(HomGC),
    Nacs(AcQuadruple),
    Chart(Arc<Chart>),
    List(Vec<Value>),
}

impl From<Structure> for Value {
    fn from(s: Structure) -> Self {
        match s {
            Structure::Jacobi(j) => Value::Jacobi(j),
            Structure::HomPoisson(h) => Value::HomPoisson(h),
            Structure::Atiyah(w) => Value::form(w),
            Structure::Form(w) => Value::form(AtiyahForm::embed(&w)),
            Structure::Gauge(g) => Value::Gauge(g),
            Structure::Endo(e) => Value::Endo(e),
            Structure::GenContact(k) => Value::GenContact(k),
            Structure::HomGC(h) => Value::HomGC(h),
            Structure::Frame(f) => Value::Frame(f),
        }
    }
}

fn mismatch(a: &Chart, b: &Chart) -> EvalError {
    EvalError::ChartMismatch(format!("({}) vs ({})", a.names().join(", "), b.names().join(", ")))
}

pub fn same_chart(a: &Arc<Chart>, b: &Arc<Chart>) -> EvalResult<()> {
    if a == b {
        Ok(())
    } else {
        Err(mismatch(a, b))
    }
}

fn qi_int(v: i64) -> QI {
    QI::from_i64(v)
}

impl Value {
    /// Atiyah forms of degree zero are scalars.
    pub fn form(w: AtiyahForm) -> Value {
        if w.deg() == 0 {
            Value::Scalar(w.chart().clone(), w.scalar_part())
        } else {
            Value::Form(w)
        }
    }

    pub fn type_name(&self) -> String {
        match self {
            Value::Const(_) => "number".into(),
            Value::Scalar(..) => "scalar".into(),
            Value::Vector(m) if m.deg() == 1 => "vector field".into(),
            Value::Vector(m) => format!("{}-vector", m.deg()),
            Value::Form(w) => format!("{}-form", w.deg()),
            Value::Derivation(_) => "derivation".into(),
            Value::Section(_) => "section".into(),
            Value::Endo(_) => "endomorphism".into(),
            Value::Gauge(_) => "gauge endomorphism".into(),
            Value::Frame(_) => "frame".into(),
            Value::Jacobi(_) => "Jacobi pair".into(),
            Value::HomPoisson(_) => "homogeneous Poisson pair".into(),
            Value::GenContact(_) => "generalized contact operator".into(),
            Value::HomGC(_) => "homogeneous generalized complex structure".into(),
            Value::Nacs(_) => "almost contact quadruple".into(),
            Value::Chart(_) => "chart".into(),
            Value::List(_) => "list".into(),
        }
    }

    pub fn chart(&self) -> Option<Arc<Chart>> {
        Some(match self {
            Value::Const(_) | Value::List(_) => return None,
            Value::Scalar(c, _) | Value::Chart(c) => c.clone(),
            Value::Vector(m) => m.chart().clone(),
            Value::Form(w) => w.chart().clone(),
            Value::Derivation(d) => d.chart().clone(),
            Value::Section(s) => s.chart().clone(),
            Value::Endo(e) => e.chart().clone(),
            Value::Gauge(g) => g.chart().clone(),
            Value::Frame(f) => f.chart().clone(),
            Value::Jacobi(j) => j.chart().clone(),
            Value::HomPoisson(h) => h.chart().clone(),
            Value::GenContact(k) => k.chart().clone(),
            Value::HomGC(h) => h.chart().clone(),
            Value::Nacs(t) => t.chart().clone(),
        })
    }

    pub fn is_zero_const(&self) -> bool {
        matches!(self, Value::Const(c) if Field::is_zero(c))
    }

    /// Rendering in the expression syntax of the document language.
    pub fn render(&self) -> String {
        match self {
            Value::Const(c) => c.render().0,
            Value::Scalar(ch, s) => s.render(ch.names()),
            Value::Vector(m) => show::multivector(m),
            Value::Form(w) => w.render(),
            Value::Derivation(d) => d.render(),
            Value::Section(s) => s.render(),
            Value::Endo(e) => e.render(),
            Value::Gauge(g) => g.render(),
            Value::Frame(f) => f.render(),
            Value::Jacobi(j) => format!("jacobi({}, {})", show::multivector(&j.lambda), j.e.render()),
            Value::HomPoisson(h) => format!("hom_poisson({}, {})", show::multivector(&h.pi), h.z.render()),
            Value::GenContact(k) => {
                let names = k.chart().names();
                let rows: Vec<String> = k
                    .matrix()
                    .iter()
                    .map(|r| format!("[{}]", r.iter().map(|c| c.render(names)).collect::<Vec<_>>().join(", ")))
                    .collect();
                format!("gen_contact([{}])", rows.join(", "))
            }
            Value::HomGC(h) => format!(
                "hom_gc({}, {}, {}, {}, {})",
                h.a.render(),
                show::multivector(&h.pi),
                show::form(&h.sigma),
                h.z.render(),
                show::form(&h.zeta)
            ),
            Value::Nacs(t) => format!(
                "nacs({}, {}, {}, {})",
                t.phi.render(),
                t.xi.render(),
                show::form(&t.eta),
                t.g.render(t.chart().names())
            ),
            Value::Chart(c) => format!("chart({})", c.names().join(", ")),
            Value::List(items) => format!("[{}]", items.iter().map(|v| v.render()).collect::<Vec<_>>().join(", ")),
        }
    }
}

// ------------------------------------------------------------ coercions

pub fn scalar_on(v: &Value, chart: &Arc<Chart>) -> EvalResult<CScalar> {
    match v {
        Value::Const(c) => Ok(CScalar::constant(chart.dim(), c)),
        Value::Scalar(ch, s) => {
            same_chart(ch, chart)?;
            Ok(s.clone())
        }
        other => Err(EvalError::msg(format!("expected a scalar, got a {}", other.type_name()))),
    }
}

pub fn vector_field(v: &Value, chart: &Arc<Chart>) -> EvalResult<VectorField> {
    match v {
        c if c.is_zero_const() => Ok(VectorField::zero(chart)),
        Value::Vector(m) if m.deg() == 1 => {
            same_chart(m.chart(), chart)?;
            Ok(VectorField::from_multivector(m))
        }
        other => Err(EvalError::msg(format!("expected a vector field, got a {}", other.type_name()))),
    }
}

pub fn multivector(v: &Value, chart: &Arc<Chart>, deg: usize) -> EvalResult<Multivector> {
    match v {
        c if c.is_zero_const() => Ok(Multivector::zero(chart, deg)),
        Value::Vector(m) if m.deg() == deg => {
            same_chart(m.chart(), chart)?;
            Ok(m.clone())
        }
        other => Err(EvalError::msg(format!("expected a {deg}-vector, got a {}", other.type_name()))),
    }
}

pub fn atiyah_form(v: &Value, chart: &Arc<Chart>) -> EvalResult<AtiyahForm> {
    match v {
        Value::Const(_) | Value::Scalar(..) => Ok(AtiyahForm::scalar(chart, scalar_on(v, chart)?)),
        Value::Form(w) => {
            same_chart(w.chart(), chart)?;
            Ok(w.clone())
        }
        other => Err(EvalError::msg(format!("expected a form, got a {}", other.type_name()))),
    }
}

/// Ordinary form of degree `deg`, i.e. an Atiyah form without `j`.
pub fn plain_form(v: &Value, chart: &Arc<Chart>, deg: usize) -> EvalResult<Form> {
    if v.is_zero_const() {
        return Ok(Form::zero(chart, deg));
    }
    let w = atiyah_form(v, chart)?;
    if w.deg() != deg {
        return Err(EvalError::msg(format!("expected a {deg}-form, got a {}", v.type_name())));
    }
    if !w.w1.is_zero() {
        return Err(EvalError::msg(format!("expected an ordinary {deg}-form without j, got {}", w.render())));
    }
    Ok(w.w0)
}

pub fn derivation(v: &Value, chart: &Arc<Chart>) -> EvalResult<Derivation> {
    match v {
        Value::Derivation(d) => {
            same_chart(d.chart(), chart)?;
            Ok(d.clone())
        }
        Value::Vector(m) if m.deg() == 1 => Ok(Derivation::new(vector_field(v, chart)?, CScalar::zero(chart.dim()))),
        c if c.is_zero_const() => Ok(Derivation::zero(chart)),
        other => Err(EvalError::msg(format!("expected a derivation, got a {}", other.type_name()))),
    }
}

pub fn jet(v: &Value, chart: &Arc<Chart>) -> EvalResult<Jet> {
    match v {
        c if c.is_zero_const() => Ok(Jet::zero(chart)),
        Value::Form(w) if w.deg() == 1 => {
            same_chart(w.chart(), chart)?;
            Ok(w.to_jet()?)
        }
        other => Err(EvalError::msg(format!("expected a 1-form, got a {}", other.type_name()))),
    }
}

pub fn section(v: &Value, chart: &Arc<Chart>) -> EvalResult<OmniSection> {
    match v {
        Value::Section(s) => {
            same_chart(s.chart(), chart)?;
            Ok(s.clone())
        }
        Value::Form(_) => Ok(OmniSection::jet(jet(v, chart)?)),
        other => Ok(OmniSection::derivation(derivation(other, chart).map_err(|_| {
            EvalError::msg(format!("expected a section of DL + J1L, got a {}", other.type_name()))
        })?)),
    }
}

pub fn gauge(v: &Value, chart: &Arc<Chart>) -> EvalResult<GaugeEndo> {
    match v {
        c if c.is_zero_const() => Ok(GaugeEndo::zero(chart)),
        Value::Gauge(g) => {
            same_chart(g.chart(), chart)?;
            Ok(g.clone())
        }
        Value::Endo(e) => {
            same_chart(e.chart(), chart)?;
            Ok(promote(e))
        }
        other => Err(EvalError::msg(format!("expected a gauge endomorphism, got a {}", other.type_name()))),
    }
}

pub fn endo(v: &Value, chart: &Arc<Chart>) -> EvalResult<Endo11> {
    match v {
        c if c.is_zero_const() => Ok(Endo11::zero(chart)),
        Value::Endo(e) => {
            same_chart(e.chart(), chart)?;
            Ok(e.clone())
        }
        other => Err(EvalError::msg(format!("expected an endomorphism of TM, got a {}", other.type_name()))),
    }
}

/// `TM`-endomorphism viewed as a gauge endomorphism vanishing on `1`.
fn promote(e: &Endo11) -> GaugeEndo {
    let n = e.chart().dim();
    let mut m = vec![vec![CScalar::zero(n); n + 1]; n + 1];
    for (i, row) in e.matrix().iter().enumerate() {
        for (j, c) in row.iter().enumerate() {
            m[i][j] = c.clone();
        }
    }
    GaugeEndo::new(e.chart(), m).expect("square matrix of the right size")
}

/// Chart shared by two values, if either has one.
fn common_chart(a: &Value, b: &Value) -> EvalResult<Option<Arc<Chart>>> {
    match (a.chart(), b.chart()) {
        (Some(x), Some(y)) => {
            same_chart(&x, &y)?;
            Ok(Some(x))
        }
        (x, y) => Ok(x.or(y)),
    }
}

fn kind_error(op: &str, a: &Value, b: &Value) -> EvalError {
    EvalError::msg(format!("cannot {op} a {} and a {}", a.type_name(), b.type_name()))
}

// ------------------------------------------------------------ arithmetic

pub fn neg(v: &Value) -> EvalResult<Value> {
    Ok(match v {
        Value::Const(c) => Value::Const(-c.clone()),
        Value::Scalar(ch, s) => Value::Scalar(ch.clone(), -s),
        Value::Vector(m) => Value::Vector(m.neg()),
        Value::Form(w) => Value::Form(w.neg()),
        Value::Derivation(d) => Value::Derivation(d.neg()),
        Value::Section(s) => Value::Section(s.neg()),
        Value::Endo(e) => Value::Endo(e.scale(&CScalar::int(e.chart().dim(), -1))),
        Value::Gauge(g) => Value::Gauge(g.scale(&CScalar::int(g.chart().dim(), -1))),
        other => return Err(EvalError::msg(format!("cannot negate a {}", other.type_name()))),
    })
}

pub fn add(a: &Value, b: &Value) -> EvalResult<Value> {
    if a.is_zero_const() {
        return Ok(b.clone());
    }
    if b.is_zero_const() {
        return Ok(a.clone());
    }
    let Some(ch) = common_chart(a, b)? else {
        return match (a, b) {
            (Value::Const(x), Value::Const(y)) => Ok(Value::Const(x.clone() + y.clone())),
            _ => Err(kind_error("add", a, b)),
        };
    };
    use Value::*;
    Ok(match (a, b) {
        (Const(_) | Scalar(..), Const(_) | Scalar(..)) => Scalar(ch.clone(), &scalar_on(a, &ch)? + &scalar_on(b, &ch)?),
        (Vector(x), Vector(y)) if x.deg() == y.deg() => Vector(x.add(y)),
        (Form(x), Form(y)) if x.deg() == y.deg() => Value::form(x.add(y)),
        (Endo(x), Endo(y)) => Endo(x.add(y)),
        (Endo(_) | Gauge(_), Endo(_) | Gauge(_)) => Gauge(gauge(a, &ch)?.add(&gauge(b, &ch)?)),
        (Vector(_) | Derivation(_), Vector(_) | Derivation(_)) => Derivation(derivation(a, &ch)?.add(&derivation(b, &ch)?)),
        (Vector(_) | Derivation(_) | Form(_) | Section(_), Vector(_) | Derivation(_) | Form(_) | Section(_)) => {
            Section(section(a, &ch)?.add(&section(b, &ch)?))
        }
        _ => return Err(kind_error("add", a, b)),
    })
}

pub fn sub(a: &Value, b: &Value) -> EvalResult<Value> {
    if b.is_zero_const() {
        return Ok(a.clone());
    }
    add(a, &neg(b)?)
}

fn scale(v: &Value, s: &Value) -> EvalResult<Value> {
    let Some(ch) = common_chart(v, s)? else {
        return match (v, s) {
            (Value::Const(x), Value::Const(y)) => Ok(Value::Const(x.clone() * y.clone())),
            _ => Err(kind_error("multiply", v, s)),
        };
    };
    let c = scalar_on(s, &ch)?;
    Ok(match v {
        Value::Const(_) | Value::Scalar(..) => Value::Scalar(ch.clone(), &scalar_on(v, &ch)? * &c),
        Value::Vector(m) => Value::Vector(m.scale(&c)),
        Value::Form(w) => Value::Form(w.scale(&c)),
        Value::Derivation(d) => Value::Derivation(d.scale(&c)),
        Value::Section(x) => Value::Section(x.scale(&c)),
        Value::Endo(e) => Value::Endo(e.scale(&c)),
        Value::Gauge(g) => Value::Gauge(g.scale(&c)),
        other => return Err(EvalError::msg(format!("cannot scale a {}", other.type_name()))),
    })
}

fn is_scalar(v: &Value) -> bool {
    matches!(v, Value::Const(_) | Value::Scalar(..))
}

pub fn mul(a: &Value, b: &Value) -> EvalResult<Value> {
    if is_scalar(a) {
        return scale(b, a);
    }
    if is_scalar(b) {
        return scale(a, b);
    }
    let ch = common_chart(a, b)?.expect("non-scalar values carry charts");
    match (a, b) {
        (Value::Form(w), Value::Vector(m)) if w.deg() == 1 && m.deg() == 1 && w.w1.is_zero() => {
            Ok(Value::Endo(Endo11::tensor(&w.w0, &VectorField::from_multivector(m))))
        }
        (Value::Form(w), Value::Vector(_) | Value::Derivation(_)) if w.deg() == 1 => {
            Ok(Value::Gauge(GaugeEndo::tensor(&w.to_jet()?, &derivation(b, &ch)?)))
        }
        _ => Err(kind_error("multiply", a, b)),
    }
}

pub fn div(a: &Value, b: &Value) -> EvalResult<Value> {
    match b {
        Value::Const(c) => {
            if Field::is_zero(c) {
                return Err(EvalError::msg("division by zero"));
            }
            mul(a, &Value::Const(c.inv()))
        }
        Value::Scalar(ch, s) => mul(a, &Value::Scalar(ch.clone(), s.inv()?)),
        other => Err(EvalError::msg(format!("cannot divide by a {}", other.type_name()))),
    }
}

/// Integer value of a real constant.
pub fn const_integer(v: &Value) -> Option<i64> {
    let Value::Const(c) = v else { return None };
    if !Field::is_zero(&c.im) || !c.re.is_integer() {
        return None;
    }
    i64::try_from(c.re.to_integer()).ok()
}

/// `a ^ b`: wedge product of forms or multivectors, or an integer power.
pub fn caret(a: &Value, b: &Value, max_degree: u32) -> EvalResult<Value> {
    if let (true, Some(e)) = (is_scalar(a), const_integer(b)) {
        if e.unsigned_abs() > max_degree as u64 {
            return Err(EvalError::msg(format!("exponent {e} exceeds the degree guardrail {max_degree}")));
        }
        return Ok(match a {
            Value::Const(c) => {
                let p = pow_qi(c, e.unsigned_abs());
                Value::Const(if e < 0 { checked_inv(&p)? } else { p })
            }
            Value::Scalar(ch, s) => {
                let p = s.pow(e.unsigned_abs() as u32);
                Value::Scalar(ch.clone(), if e < 0 { p.inv()? } else { p })
            }
            _ => unreachable!(),
        });
    }
    let ch = common_chart(a, b)?;
    match (a, b) {
        (Value::Vector(x), Value::Vector(y)) => Ok(Value::Vector(x.wedge(y))),
        (Value::Form(_) | Value::Scalar(..), Value::Form(_) | Value::Scalar(..)) => {
            let ch = ch.expect("forms carry charts");
            Ok(Value::form(atiyah_form(a, &ch)?.wedge(&atiyah_form(b, &ch)?)))
        }
        _ => Err(kind_error("wedge", a, b)),
    }
}

fn pow_qi(c: &QI, e: u64) -> QI {
    (0..e).fold(qi_int(1), |acc, _| acc * c.clone())
}

fn checked_inv(c: &QI) -> EvalResult<QI> {
    if Field::is_zero(c) {
        Err(EvalError::msg("division by zero"))
    } else {
        Ok(c.inv())
    }
}

/// Exact equality after coercion to a common type; frames are compared as
/// spans.
pub fn values_equal(a: &Value, b: &Value) -> EvalResult<bool> {
    if let (Value::Frame(x), Value::Frame(y)) = (a, b) {
        return Ok(dj_omni::frame_equal(x, y)?);
    }
    common_chart(a, b)?;
    match (a, b) {
        (Value::Jacobi(x), Value::Jacobi(y)) => Ok(x == y),
        (Value::HomPoisson(x), Value::HomPoisson(y)) => Ok(x == y),
        (Value::HomGC(x), Value::HomGC(y)) => Ok(x == y),
        (Value::Nacs(x), Value::Nacs(y)) => Ok(x == y),
        (Value::GenContact(x), Value::GenContact(y)) => Ok(x.matrix() == y.matrix()),
        (Value::Chart(x), Value::Chart(y)) => Ok(x == y),
        _ => is_zero(&sub(a, b)?),
    }
}

pub fn is_zero(v: &Value) -> EvalResult<bool> {
    Ok(match v {
        Value::Const(c) => Field::is_zero(c),
        Value::Scalar(_, s) => s.is_zero(),
        Value::Vector(m) => m.is_zero(),
        Value::Form(w) => w.is_zero(),
        Value::Derivation(d) => d.is_zero(),
        Value::Section(s) => s.is_zero(),
        Value::Endo(e) => e.is_zero(),
        Value::Gauge(g) => g.is_zero(),
        other => return Err(EvalError::msg(format!("cannot test a {} for zero", other.type_name()))),
    })
}
