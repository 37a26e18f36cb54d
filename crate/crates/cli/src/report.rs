use morphic_core::algnum::ModulusClass;
use morphic_core::{
    AlgebraicNumber, Closure, EigenvalueModule, FieldElement, RationalMatrix, RationalPolynomial,
    RationalSubspace, Q,
};
use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde_json::{json, Value};

const APPROX_BITS: u32 = 64;

pub fn int(x: &BigInt) -> Value {
    x.to_i64()
        .map_or_else(|| Value::from(x.to_string()), Value::from)
}

pub fn rational(x: &Q) -> Value {
    Value::from(x.to_string())
}

pub fn rationals(v: &[Q]) -> Value {
    v.iter().map(rational).collect()
}

/// Ascending coefficients of the primitive integer multiple.
pub fn polynomial(p: &RationalPolynomial) -> Value {
    p.primitive_integer_coeffs().iter().map(int).collect()
}

/// Integer arrays when every entry is integral, rational strings otherwise.
pub fn matrix(m: &RationalMatrix) -> Value {
    match m.to_integer_rows() {
        Some(rows) => rows
            .iter()
            .map(|r| r.iter().map(int).collect::<Value>())
            .collect(),
        None => m.data().iter().map(|r| rationals(r)).collect(),
    }
}

pub fn subspace(s: &RationalSubspace) -> Value {
    json!({ "ambient": s.ambient(), "dim": s.dim(), "basis": s.basis().iter().map(|b| rationals(b)).collect::<Value>() })
}

pub fn modulus_class(c: ModulusClass) -> &'static str {
    match c {
        ModulusClass::LessThanOne => "less_than_one",
        ModulusClass::OnUnitCircle => "on_unit_circle",
        ModulusClass::GreaterThanOne => "greater_than_one",
    }
}

pub fn algebraic(a: &AlgebraicNumber) -> Value {
    let (re, im) = a.approx();
    json!({ "minpoly": polynomial(a.minpoly()), "approx": [re, im] })
}

pub fn approx(x: &FieldElement) -> f64 {
    x.embed_numeric(APPROX_BITS).approx().0
}

pub fn element(x: &FieldElement) -> Value {
    json!({ "coords": rationals(x.coords()), "approx": approx(x) })
}

fn closure(c: &Closure) -> Value {
    match c {
        Closure::None => json!("none"),
        Closure::InversePerron => json!("inverse_perron"),
        Closure::InverseDet(q) => json!({ "inverse_det": int(q) }),
    }
}

pub fn module(m: &EigenvalueModule) -> Value {
    let gens = m.generators();
    json!({
        "field_minpoly": polynomial(&m.field().modulus()),
        "field_generator_approx": m.field().generator().approx().0,
        "generators": gens.iter().map(|g| rationals(g.coords())).collect::<Value>(),
        "generators_approx": gens.iter().map(approx).collect::<Value>(),
        "closure": closure(m.closure()),
        "rank": m.rank(),
        "display": m.render(),
    })
}

pub fn rational_list(v: &[Q]) -> String {
    format!(
        "({})",
        v.iter()
            .map(ToString::to_string)
            .collect::<Vec<_>>()
            .join(", ")
    )
}

pub fn matrix_text(m: &RationalMatrix) -> String {
    m.data()
        .iter()
        .map(|r| format!("  {}", rational_list(r)))
        .collect::<Vec<_>>()
        .join("\n")
}

pub fn subspace_text(s: &RationalSubspace) -> String {
    if s.is_zero() {
        return "{0}".into();
    }
    format!(
        "span{{{}}}",
        s.basis()
            .iter()
            .map(|b| rational_list(b))
            .collect::<Vec<_>>()
            .join(", ")
    )
}
