//! JSON and text renderings. Every rational and every unbounded integer is
//! written as a string (`"p/q"` or `"p"`); object keys come out sorted.

use std::fmt::Write as _;

use serde_json::{json, Value};

use super::parse::format_monomial;
use crate::arith::{fmt_rational, Integer, IntegerVector, Rational, RationalPoint};
use crate::filtration::FiltrationMap;
use crate::geometry::HalfSpace;
use crate::lojasiewicz::LojaReport;
use crate::multiplicity::MultiplicityTable;
use crate::newton::{MonomialIdeal, NewtonPolyhedron};
use crate::relations::{HickelReport, InequalitySuite, NonDegeneracy, Verdict};

pub fn q(r: &Rational) -> Value {
    Value::String(fmt_rational(r))
}

pub fn z(i: &Integer) -> Value {
    Value::String(i.to_string())
}

pub fn point(p: &RationalPoint) -> Value {
    Value::Array(p.coords().iter().map(q).collect())
}

pub fn ivec(v: &IntegerVector) -> Value {
    Value::Array(v.coords().iter().map(z).collect())
}

pub fn verdict(v: Verdict) -> Value {
    match v {
        Verdict::True => Value::Bool(true),
        Verdict::False => Value::Bool(false),
        Verdict::Undecided => Value::String("UNDECIDED".into()),
    }
}

pub fn point_text(p: &RationalPoint) -> String {
    let parts: Vec<String> = p.coords().iter().map(fmt_rational).collect();
    format!("({})", parts.join(", "))
}

pub fn ideal_strings(i: &MonomialIdeal, names: &[String]) -> Vec<String> {
    i.generators()
        .iter()
        .map(|g| format_monomial(g, names))
        .collect()
}

pub fn ideal(i: &MonomialIdeal, names: &[String]) -> Value {
    json!(ideal_strings(i, names))
}

pub fn ideal_text(i: &MonomialIdeal, names: &[String]) -> String {
    format!("<{}>", ideal_strings(i, names).join(", "))
}

fn halfspace(h: &HalfSpace) -> Value {
    json!({ "normal": ivec(&h.normal), "offset": q(&h.offset) })
}

fn halfspace_text(h: &HalfSpace) -> String {
    let v: Vec<String> = h.normal.coords().iter().map(|c| c.to_string()).collect();
    format!("<({}), k> >= {}", v.join(", "), fmt_rational(&h.offset))
}

pub fn polyhedron(p: &NewtonPolyhedron) -> Value {
    json!({
        "dimension": p.dim(),
        "vertices": p.vertices().iter().map(point).collect::<Vec<_>>(),
        "facets": p.facets().iter().map(halfspace).collect::<Vec<_>>(),
        "compact_faces": p.compact_faces().iter().map(|f| json!({
            "dim": f.dim,
            "vertices": f.vertices.iter().map(point).collect::<Vec<_>>(),
        })).collect::<Vec<_>>(),
        "axis_intercepts": p.axis_intercepts().iter()
            .map(|a| a.as_ref().map_or(Value::Null, q))
            .collect::<Vec<_>>(),
        "convenient": p.is_convenient(),
    })
}

pub fn polyhedron_text(p: &NewtonPolyhedron) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "vertices:");
    for v in p.vertices() {
        let _ = writeln!(s, "  {}", point_text(v));
    }
    let _ = writeln!(s, "facets:");
    for h in p.facets() {
        let tag = if h.normal.is_positive() {
            "compact"
        } else {
            "unbounded"
        };
        let _ = writeln!(s, "  {}  [{tag}]", halfspace_text(h));
    }
    let counts: Vec<String> = (0..p.dim())
        .map(|d| format!("{}", p.faces_of_dim(d).count()))
        .collect();
    let _ = writeln!(
        s,
        "compact faces by dimension 0..{}: {}",
        p.dim() - 1,
        counts.join(", ")
    );
    let _ = write!(s, "convenient: {}", p.is_convenient());
    s
}

pub fn filtration(f: &FiltrationMap) -> Value {
    json!({
        "M_J": z(f.m()),
        "pieces": f.pieces().iter().map(|p| json!({
            "normal": ivec(&p.normal),
            "support": z(&p.support),
            "multiplier": z(&p.multiplier),
        })).collect::<Vec<_>>(),
        "diagonal": f.diagonal().map_or(Value::Null, |d| json!({
            "exponents": d.exponents.iter().map(z).collect::<Vec<_>>(),
            "w": ivec(&d.w),
            "w0": z(&d.w0),
            "v": ivec(&d.v),
        })),
        "maximal": f.is_maximal(),
    })
}

pub fn table(t: &MultiplicityTable) -> Value {
    json!({
        "n": t.n,
        "e_I": z(&t.e_i),
        "e_J": z(&t.e_j),
        "mixed": t.mixed.iter().map(z).collect::<Vec<_>>(),
        "covolumes": t.covolumes.iter().map(|((a, b), v)| json!({
            "a": a, "b": b, "covolume": q(v),
        })).collect::<Vec<_>>(),
    })
}

pub fn table_text(t: &MultiplicityTable) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "e(I) = {}", t.e_i);
    let _ = writeln!(s, "e(J) = {}", t.e_j);
    for (i, e) in t.mixed.iter().enumerate() {
        let _ = writeln!(s, "e_{i}(I, J) = {e}");
    }
    s.pop();
    s
}

pub fn loja(r: &LojaReport) -> Value {
    json!({
        "n": r.n,
        "M_J": z(&r.m_j),
        "c_J": z(&r.c_j),
        "a": r.a.iter().map(q).collect::<Vec<_>>(),
        "L_J": q(r.exponent()),
        "sequence": r.entries.iter().map(|e| json!({
            "i": e.i,
            "kind": e.kind.as_str(),
            "value": e.value.as_ref().map_or(Value::Null, q),
        })).collect::<Vec<_>>(),
        "inclusion": r.inclusion,
        "diagonal": r.diagonal,
        "maximal": r.maximal,
        "notes": r.notes,
    })
}

/// Entries are listed from `i = n` down to `i = 1`.
pub fn loja_text(r: &LojaReport) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "M_J = {}", r.m_j);
    let _ = writeln!(s, "c_J(I) = {}", r.c_j);
    let a: Vec<String> = r.a.iter().map(fmt_rational).collect();
    let _ = writeln!(s, "a_J(I) = ({})", a.join(", "));
    let _ = writeln!(s, "L_J(I) = {}", fmt_rational(r.exponent()));
    for e in r.entries.iter().rev() {
        let value = e.value.as_ref().map_or("-".to_string(), fmt_rational);
        let _ = writeln!(s, "L^({}) = {value}  [{}]", e.i, e.kind.as_str());
    }
    let _ = writeln!(s, "I in closure(J): {}", r.inclusion);
    let _ = write!(s, "J diagonal: {}", r.diagonal);
    for note in &r.notes {
        let _ = write!(s, "\nnote: {note}");
    }
    s
}

pub fn hickel(h: &HickelReport) -> Value {
    json!({
        "ratio_e": q(&h.ratio_e),
        "product_L": h.product_l.as_ref().map_or(Value::Null, q),
        "product_a": q(&h.product_a),
        "is_hickel": verdict(h.is_hickel),
        "equality_a": h.equality_a,
        "per_i": h.per_i.iter().map(|c| json!({
            "i": c.i,
            "ratio": q(&c.ratio),
            "bound": c.bound.as_ref().map_or(Value::Null, q),
            "kind": c.kind.as_str(),
            "satisfied": c.satisfied,
            "equality": c.equality,
        })).collect::<Vec<_>>(),
    })
}

pub fn hickel_text(h: &HickelReport) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "e(I)/e(J) = {}", fmt_rational(&h.ratio_e));
    match &h.product_l {
        Some(p) => {
            let _ = writeln!(s, "prod L^(i) = {}", fmt_rational(p));
        }
        None => {
            let _ = writeln!(s, "prod L^(i) = unavailable");
        }
    }
    let _ = writeln!(s, "prod a_i / M_J^n = {}", fmt_rational(&h.product_a));
    for c in &h.per_i {
        let bound = c.bound.as_ref().map_or("-".to_string(), fmt_rational);
        let status = match c.satisfied {
            Some(true) => "ok",
            Some(false) => "VIOLATED",
            None => "n/a",
        };
        let _ = writeln!(
            s,
            "e_{}/e_{} = {} <= L^({}) = {bound} [{}]: {status}",
            c.i,
            c.i - 1,
            fmt_rational(&c.ratio),
            c.i,
            c.kind.as_str()
        );
    }
    let _ = write!(s, "Hickel with respect to J: {}", h.is_hickel);
    s
}

pub fn suite(s: &InequalitySuite) -> Value {
    json!({
        "all_hold": s.all_hold(),
        "checks": s.checks.iter().map(|c| json!({
            "name": c.name,
            "lhs": q(&c.lhs),
            "relation": c.relation.as_str(),
            "rhs": q(&c.rhs),
            "holds": c.holds,
        })).collect::<Vec<_>>(),
    })
}

pub fn suite_text(s: &InequalitySuite) -> String {
    s.checks
        .iter()
        .map(ToString::to_string)
        .collect::<Vec<_>>()
        .join("\n")
}

pub fn nondegeneracy(r: &NonDegeneracy) -> Value {
    json!({
        "sigma": r.sigma.as_ref().map_or(Value::Null, z),
        "bound": q(&r.bound),
        "nondegenerate": verdict(r.verdict),
    })
}
