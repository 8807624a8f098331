//! Execution of document commands.

use dj_cartan::Report;
use dj_dolbeault::{dbar_d, dbar_d_solve, HoloChart};
use dj_omni::{backward_embedding, backward_projection, flat_product, frame_equal, star, Frame};
use dj_scalar::{Field, Rational};
use dj_structures::{
    build_l_jz, check_dl_complex, check_gen_contact, check_hom_gc, check_hom_poisson, check_jacobi_pair, check_nacs,
    classify_dj, eigenframe, invert_jacobi, split_contact, split_lcs, DjKind,
};

use crate::ast::{Command, Expr};
use crate::error::{EvalError, EvalResult};
use crate::eval::{jacobi_of, raw_names, Ctx};
use crate::suites;
use crate::value::{self as v, Value};

/// Checked conditions and computed values of one command.
#[derive(Debug, Default)]
pub struct Outcome {
    pub report: Report,
    /// Computed values, as `name = expression` lines.
    pub results: Vec<String>,
}

impl Outcome {
    fn result(&mut self, name: &str, val: &Value) {
        self.results.push(format!("{name} = {}", val.render()));
    }

    fn record(&mut self, name: &str, ok: bool, witness: impl FnOnce() -> String) {
        self.report.record(name, ok, witness);
    }
}

fn frame_of(ctx: &Ctx, x: &Value) -> EvalResult<Frame> {
    match x {
        Value::Frame(f) => Ok(ctx.env.prepare(f.clone())),
        other => Err(EvalError::msg(format!("expected a frame, got a {}", other.type_name()))),
    }
}

/// Compare a computed frame with an optional expected one.
fn compare_frame(ctx: &Ctx, out: &mut Outcome, name: &str, got: Frame, expected: Option<&Expr>) -> EvalResult<()> {
    let val = Value::Frame(got.clone());
    out.result(name, &val);
    if let Some(e) = expected {
        let want = frame_of(ctx, &ctx.eval(e)?)?;
        let ok = frame_equal(&got, &want)?;
        out.record(&format!("{name} equals the expected frame"), ok, || format!("expected {}", want.render()));
    }
    Ok(())
}

pub fn run(cmd: &Command, ctx: &Ctx) -> EvalResult<Outcome> {
    let mut out = Outcome::default();
    let arg = |i: usize| ctx.eval(&cmd.args[i]);
    let n = cmd.args.len();
    match cmd.name.as_str() {
        "check-jacobi" => {
            let (l, e) = if n == 1 {
                let j = jacobi_of(&arg(0)?)?;
                (j.lambda, j.e)
            } else {
                let (a, b) = (arg(0)?, arg(1)?);
                let c = a.chart().or(b.chart()).unwrap_or_else(|| ctx.chart.clone());
                (v::multivector(&a, &c, 2)?, v::vector_field(&b, &c)?)
            };
            out.report = check_jacobi_pair(&l, &e);
        }
        "check-hom-poisson" => {
            let (p, z) = if n == 1 {
                match arg(0)? {
                    Value::HomPoisson(h) => (h.pi, h.z),
                    other => return Err(EvalError::msg(format!("expected a homogeneous Poisson pair, got a {}", other.type_name()))),
                }
            } else {
                let (a, b) = (arg(0)?, arg(1)?);
                let c = a.chart().or(b.chart()).unwrap_or_else(|| ctx.chart.clone());
                (v::multivector(&a, &c, 2)?, v::vector_field(&b, &c)?)
            };
            out.report = check_hom_poisson(&p, &z);
        }
        "check-gcs" => match arg(0)? {
            Value::GenContact(k) => out.report = check_gen_contact(&k),
            other => return Err(EvalError::msg(format!("expected a generalized contact operator, got a {}", other.type_name()))),
        },
        "check-hom-gc" => match arg(0)? {
            Value::HomGC(h) => out.report = check_hom_gc(&h)?,
            other => return Err(EvalError::msg(format!("expected a homogeneous generalized complex structure, got a {}", other.type_name()))),
        },
        "check-nacs" => match arg(0)? {
            Value::Nacs(t) => out.report = check_nacs(&t),
            other => return Err(EvalError::msg(format!("expected an almost contact quadruple, got a {}", other.type_name()))),
        },
        "check-dl-complex" => {
            let p = arg(0)?;
            let c = p.chart().unwrap_or_else(|| ctx.chart.clone());
            out.report = check_dl_complex(&v::gauge(&p, &c)?);
        }
        "check-integrable" => match arg(0)? {
            Value::Endo(e) => {
                let nj = e.nijenhuis();
                out.record("Nijenhuis torsion vanishes", nj.is_zero(), || match nj.first_nonzero() {
                    Some((i, j, val)) => {
                        let names = e.chart().names();
                        format!("N(d/d{}, d/d{}) = {}", names[*i], names[*j], val.render())
                    }
                    None => String::new(),
                });
            }
            Value::Gauge(g) => {
                let nj = g.nijenhuis();
                out.record("gauge Nijenhuis torsion vanishes", nj.is_zero(), || match nj.first_nonzero() {
                    Some((i, j, val)) => {
                        let names = g.chart().names();
                        let b = |k: usize| if k < names.len() { format!("d/d{}", names[k]) } else { "one".into() };
                        format!("N({}, {}) = {}", b(*i), b(*j), val.render())
                    }
                    None => String::new(),
                });
            }
            other => return Err(EvalError::msg(format!("expected an endomorphism, got a {}", other.type_name()))),
        },
        "check-equal" => {
            let (a, b) = (arg(0)?, arg(1)?);
            let ok = v::values_equal(&a, &b)?;
            out.record("values are equal", ok, || {
                match (&a, &b) {
                    (Value::Frame(_), _) | (_, Value::Frame(_)) => format!("{} vs {}", a.render(), b.render()),
                    _ => v::sub(&a, &b).map(|d| format!("difference = {}", d.render())).unwrap_or_default(),
                }
            });
        }
        "frame-equal" => {
            let (a, b) = (frame_of(ctx, &arg(0)?)?, frame_of(ctx, &arg(1)?)?);
            let ok = frame_equal(&a, &b)?;
            out.record("frames span the same subbundle", ok, || format!("{} vs {}", a.render(), b.render()));
        }
        "eigenframe" => {
            let f = match arg(0)? {
                Value::GenContact(k) => eigenframe(&k)?,
                Value::HomGC(h) => build_l_jz(&h)?,
                other => return Err(EvalError::msg(format!("no eigenframe for a {}", other.type_name()))),
            };
            compare_frame(ctx, &mut out, "eigenframe", ctx.env.prepare(f), cmd.args.get(1))?;
        }
        "dorfman" => {
            let (a, b) = (arg(0)?, arg(1)?);
            let c = a.chart().or(b.chart()).unwrap_or_else(|| ctx.chart.clone());
            let r = Value::Section(dj_omni::dorfman(&v::section(&a, &c)?, &v::section(&b, &c)?)?);
            out.result("bracket", &r);
            if n == 3 {
                let want = arg(2)?;
                let ok = v::values_equal(&r, &Value::Section(v::section(&want, &c)?))?;
                out.record("bracket equals the expected section", ok, || format!("expected {}", want.render()));
            }
        }
        "star" | "flat-product" => {
            let (a, b) = (frame_of(ctx, &arg(0)?)?, frame_of(ctx, &arg(1)?)?);
            let f = if cmd.name == "star" { star(&a, &b)? } else { flat_product(&a, &b)? };
            compare_frame(ctx, &mut out, &cmd.name, ctx.env.prepare(f), cmd.args.get(2))?;
        }
        "backward-projection" => {
            let f = frame_of(ctx, &arg(0)?)?;
            let Value::Chart(product) = arg(1)? else {
                return Err(EvalError::msg("backward-projection needs a product chart, e.g. chart(x, p, u, y)"));
            };
            let g = backward_projection(&f, &product)?;
            compare_frame(ctx, &mut out, "backward projection", ctx.env.prepare(g), cmd.args.get(2))?;
        }
        "backward-embedding" => {
            let f = frame_of(ctx, &arg(0)?)?;
            let g = backward_embedding(&f, &raw_names(&cmd.args[1]))?;
            compare_frame(ctx, &mut out, "backward embedding", ctx.env.prepare(g), cmd.args.get(2))?;
        }
        "split-contact" | "split-lcs" => {
            let vals = (0..n).map(arg).collect::<EvalResult<Vec<_>>>()?;
            let (m, x, d, rest) = match &vals[0] {
                Value::HomPoisson(h) => (h.pi.clone(), h.z.clone(), &vals[1], &vals[2..]),
                Value::Jacobi(j) => (j.lambda.clone(), j.e.clone(), &vals[1], &vals[2..]),
                first => {
                    if n < 3 {
                        return Err(EvalError::msg(format!("{} takes (pi, Z, d) or a pair and d", cmd.name)));
                    }
                    let c = first.chart().or(vals[1].chart()).unwrap_or_else(|| ctx.chart.clone());
                    (v::multivector(first, &c, 2)?, v::vector_field(&vals[1], &c)?, &vals[2], &vals[3..])
                }
            };
            let d = v::const_integer(d).filter(|&k| k > 0).ok_or_else(|| EvalError::msg("the splitting size must be a positive integer"))?;
            let j = if cmd.name == "split-contact" { split_contact(&m, &x, d as usize)? } else { split_lcs(&m, &x, d as usize)? };
            out.result("pair", &Value::Jacobi(j.clone()));
            out.report.extend("", check_jacobi_pair(&j.lambda, &j.e));
            if let Some(want) = rest.first() {
                let want = jacobi_of(want)?;
                out.record("pair equals the expected Jacobi pair", want == j, || format!("expected {}", Value::Jacobi(want.clone()).render()));
            }
        }
        "invert-jacobi" => {
            let j = jacobi_of(&arg(0)?)?;
            match invert_jacobi(&j) {
                Ok(inv) => {
                    out.report.pass("Jacobi pair is non-degenerate");
                    let w = Value::Form(inv.omega.clone());
                    out.result("omega", &w);
                    out.result("theta", &Value::Form(dj_atiyah::AtiyahForm::embed(&inv.theta)));
                    if n == 2 {
                        let want = arg(1)?;
                        let ok = v::values_equal(&w, &want)?;
                        out.record("omega equals the expected form", ok, || format!("expected {}", want.render()));
                    }
                }
                Err(e) => out.report.fail("Jacobi pair is non-degenerate", e.to_string()),
            }
        }
        "solve-dbarD" => {
            let b = arg(0)?;
            let c = b.chart().unwrap_or_else(|| ctx.chart.clone());
            let beta = v::atiyah_form(&b, &c)?;
            let h = HoloChart::from_chart(&c)?;
            match dbar_d_solve(&h, &beta) {
                Ok(rho) => {
                    out.result("rho", &Value::form(rho.clone()));
                    let back = dbar_d(&h, &rho)?;
                    out.record("dbar_D rho = beta", back == beta, || format!("dbar_D rho - beta = {}", back.sub(&beta).render()));
                    if n == 2 {
                        let want = arg(1)?;
                        let ok = v::values_equal(&Value::form(rho), &want)?;
                        out.record("rho equals the expected primitive", ok, || format!("expected {}", want.render()));
                    }
                }
                Err(e) => out.report.fail("dbar_D beta = 0 and beta has a primitive", e.to_string()),
            }
        }
        "classify" => {
            let f = frame_of(ctx, &arg(0)?)?;
            let cl = classify_dj(&f)?;
            out.results.push(format!("kind = {}", cl.kind.name()));
            if let Some(s) = &cl.real_section {
                out.result("real section", &Value::Section(s.clone()));
            }
            if let Some(Expr::Ident(want)) = cmd.args.get(1) {
                out.record(&format!("structure is {want}"), cl.kind.name() == want, || format!("kind = {}", cl.kind.name()));
                if cl.kind == DjKind::HomGC && want == "hom_gc" {
                    let origin = vec![Rational::from_integer(0.into()); f.chart().dim()];
                    let one = cl.real_section.as_ref().map(|s| s.d.f.eval(&origin));
                    let ok = matches!(&one, Some(Ok(c)) if !Field::is_zero(c));
                    out.record("real section is transverse to the leaf at the origin", ok, || match one {
                        Some(Ok(c)) => format!("one-component at the origin = {}", c.render().0),
                        Some(Err(e)) => e.to_string(),
                        None => "no real section".into(),
                    });
                }
            }
        }
        "suite" => {
            let Expr::Ident(which) = &cmd.args[0] else { unreachable!("parser checks suite names") };
            let count = match cmd.args.get(1) {
                Some(e) => v::const_integer(&ctx.eval(e)?)
                    .filter(|&k| k > 0)
                    .ok_or_else(|| EvalError::msg("the suite size must be a positive integer"))? as usize,
                None => suites::default_count(which),
            };
            let (report, summary) = suites::run(which, count, ctx.env.opts.seed)?;
            out.report = report;
            out.results.extend(summary);
        }
        other => return Err(EvalError::msg(format!("unknown command `{other}`"))),
    }
    Ok(out)
}
