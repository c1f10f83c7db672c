use apolar::divided_powers::Monomial;
use apolar::{format_dp, format_operator, Basis, DPPoly, GroupElement, Operator, Scalar, Space};
use serde_json::{json, Map, Value};

/// Collected output of one command.
pub struct Report {
    pub command: String,
    pub field: String,
    pub vars: usize,
    pub inputs: Vec<String>,
    pub results: Map<String, Value>,
    pub warnings: Vec<String>,
}

impl Report {
    pub fn new(command: &str, field: String, vars: usize, inputs: Vec<String>) -> Report {
        Report { command: command.into(), field, vars, inputs, results: Map::new(), warnings: Vec::new() }
    }

    pub fn set(&mut self, key: &str, v: impl Into<Value>) {
        self.results.insert(key.into(), v.into());
    }

    pub fn warn(&mut self, w: impl Into<String>) {
        self.warnings.push(w.into());
    }

    pub fn to_json(&self) -> Value {
        json!({
            "command": self.command,
            "field": self.field,
            "vars": self.vars,
            "inputs": self.inputs,
            "results": self.results,
            "warnings": self.warnings,
        })
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for (k, v) in &self.results {
            write_value(&mut out, k, v, 0);
        }
        for w in &self.warnings {
            out.push_str(&format!("warning: {w}\n"));
        }
        out
    }
}

fn write_value(out: &mut String, key: &str, v: &Value, indent: usize) {
    let pad = "  ".repeat(indent);
    match v {
        Value::Object(m) => {
            out.push_str(&format!("{pad}{key}:\n"));
            for (k, x) in m {
                write_value(out, k, x, indent + 1);
            }
        }
        Value::Array(a) if a.iter().any(|x| x.is_object() || x.is_array()) => {
            out.push_str(&format!("{pad}{key}:\n"));
            for (i, x) in a.iter().enumerate() {
                write_value(out, &format!("[{i}]"), x, indent + 1);
            }
        }
        Value::Array(a) => {
            let parts: Vec<String> = a.iter().map(scalar_text).collect();
            out.push_str(&format!("{pad}{key}: ({})\n", parts.join(", ")));
        }
        x => out.push_str(&format!("{pad}{key}: {}\n", scalar_text(x))),
    }
}

fn scalar_text(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        x => x.to_string(),
    }
}

pub fn poly(f: &DPPoly) -> Value {
    Value::String(format_dp(f))
}

pub fn op(s: &Operator) -> Value {
    Value::String(format_operator(s))
}

pub fn scalar(c: &Scalar) -> Value {
    Value::String(c.to_string())
}

pub fn matrix(m: &[Vec<Scalar>]) -> Value {
    Value::Array(m.iter().map(|r| Value::Array(r.iter().map(scalar).collect())).collect())
}

fn monomial(m: &Monomial, space: Space, field: apolar::Field) -> String {
    match space {
        Space::P => format_dp(&DPPoly::term(m.clone(), field.one())),
        Space::S => format_operator(&Operator::term(m.clone(), field.one(), m.degree())),
    }
}

/// Basis elements as strings plus the reduced coefficient matrix over the listed columns.
pub fn basis(b: &Basis) -> Value {
    let amb = b.ambient();
    let elements: Vec<Value> = match amb.space {
        Space::P => b.polys().iter().map(poly).collect(),
        Space::S => b.operators().iter().map(op).collect(),
    };
    let columns: Vec<String> = b.columns().iter().map(|m| monomial(m, amb.space, amb.field)).collect();
    json!({
        "dim": b.dim(),
        "window": [amb.lo, amb.hi],
        "elements": elements,
        "columns": columns,
        "rows": matrix(&b.rows()),
    })
}

pub fn group_element(g: &GroupElement) -> Value {
    json!({
        "automorphism": g.aut().images().iter().map(op).collect::<Vec<_>>(),
        "unit": op(g.unit()),
    })
}
