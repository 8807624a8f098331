//! Rendering of defects in the expression syntax of the DSL.

use dj_cartan::{Form, Multivector};

pub fn form(w: &Form) -> String {
    let names = w.chart().names();
    w.render(|i| format!("d{}", names[i]))
}

pub fn multivector(m: &Multivector) -> String {
    let names = m.chart().names();
    m.render(|i| format!("d/d{}", names[i]))
}

/// Name of the `i`-th element of the standard frame of `DL + J^1 L`.
pub fn omni_basis(names: &[String], i: usize) -> String {
    let n = names.len();
    if i < n {
        format!("d/d{}", names[i])
    } else if i == n {
        "one".into()
    } else if i < 2 * n + 1 {
        format!("d{}", names[i - n - 1])
    } else {
        "j".into()
    }
}

/// Name of the `i`-th element of the standard frame of `TM + T*M`.
pub fn generalized_basis(names: &[String], i: usize) -> String {
    let n = names.len();
    if i < n {
        format!("d/d{}", names[i])
    } else {
        format!("d{}", names[i - n])
    }
}
