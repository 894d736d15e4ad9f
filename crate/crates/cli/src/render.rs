//! Plain-text rendering helpers.

use muext_core::cyclotomic::CycElem;
use muext_core::finite_field::FiniteField;
use muext_core::local::PadicElem;

pub fn field_name(m: u64) -> String {
    match m {
        1 => "Q".into(),
        4 => "Q(i)".into(),
        _ => format!("Q(zeta_{m})"),
    }
}

pub fn local_name(p: u64, m: u64) -> String {
    if m == 1 {
        format!("Q_{p}")
    } else {
        format!("Q_{p}(zeta_{m})")
    }
}

pub fn finite_name(f: &FiniteField) -> String {
    format!("F{}", f.order())
}

pub fn set(xs: &[u64]) -> String {
    format!("{{{}}}", xs.iter().map(u64::to_string).collect::<Vec<_>>().join(", "))
}

pub fn signed_set(xs: &[i64]) -> String {
    format!("{{{}}}", xs.iter().map(i64::to_string).collect::<Vec<_>>().join(", "))
}

pub fn vector(v: &[u64]) -> String {
    format!("({})", v.iter().map(u64::to_string).collect::<Vec<_>>().join(", "))
}

pub fn vectors(vs: &[Vec<u64>]) -> String {
    if vs.is_empty() {
        return "{0}".into();
    }
    format!("span of {}", vs.iter().map(|v| vector(v)).collect::<Vec<_>>().join(", "))
}

/// Coefficients in the power basis of `zeta`.
pub fn coeffs(x: &CycElem) -> String {
    format!("[{}]", x.coeffs().iter().map(|c| c.to_string()).collect::<Vec<_>>().join(", "))
}

pub fn padic(x: &PadicElem) -> String {
    if let Some(q) = x.to_rational_approx() {
        return q.to_string();
    }
    let body = format!("[{}]", x.symmetric_coeffs().iter().map(|c| c.to_string()).collect::<Vec<_>>().join(", "));
    match x.shift() {
        0 => body,
        s => format!("p^{} * {body}", -s),
    }
}

pub fn power_word(p: u64) -> String {
    match p {
        2 => "square".into(),
        3 => "cube".into(),
        _ => format!("{p}th power"),
    }
}
