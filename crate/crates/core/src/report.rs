//! Human-readable and JSON reports. The JSON form always carries the keys
//! `verdict`, `certificate`, `counterexample`, `solutions`, `pieces` and
//! `timings` (null when not applicable) plus a `details` object.

use std::time::Duration;

use serde_json::{json, Map, Value};

use crate::config::OutputFormat;
use crate::io::{matrix_to_json, vec_to_json};
use crate::lcp::{SolutionPiece, WUniquenessReport};
use crate::numeric::{format_rational, format_vec, Rational};
use crate::tcp::{OmegaReport, TcpSolution};
use crate::verdict::{Certificate, Counterexample, SearchReport, Verdict, Witness};

#[derive(Clone, Debug, Default)]
pub struct Report {
    title: String,
    text: Vec<String>,
    verdict: Option<String>,
    certificate: Option<Value>,
    counterexample: Option<Value>,
    solutions: Option<Value>,
    pieces: Option<Value>,
    timings: Vec<(String, f64)>,
    details: Map<String, Value>,
}

impl Report {
    pub fn new(title: impl Into<String>) -> Self {
        Report {
            title: title.into(),
            ..Report::default()
        }
    }

    /// Adds a free text block.
    pub fn text(&mut self, block: impl Into<String>) -> &mut Self {
        self.text.push(block.into());
        self
    }

    pub fn detail(&mut self, key: &str, value: Value) -> &mut Self {
        self.details.insert(key.to_string(), value);
        self
    }

    pub fn timing(&mut self, label: &str, d: Duration) -> &mut Self {
        self.timings.push((label.to_string(), d.as_secs_f64() * 1e3));
        self
    }

    pub fn verdict(&mut self, v: &Verdict) -> &mut Self {
        self.verdict = Some(v.status().as_str().to_string());
        self.text.push(format!("verdict: {}", v.status().as_str()));
        match v {
            Verdict::Holds(c) => {
                self.text.push(format!("certificate:\n{}", indent(&c.describe())));
                self.certificate = Some(certificate_json(c));
            }
            Verdict::Fails(c) => {
                self.text
                    .push(format!("counterexample:\n{}", indent(&counterexample_text(c))));
                self.counterexample = Some(counterexample_json(c));
            }
            Verdict::Unknown(r) => {
                self.text.push(format!("search:\n{}", indent(&search_text(r))));
                self.details.insert("search".to_string(), search_json(r));
            }
        }
        self
    }

    /// Sets a custom verdict string (for uniqueness reports).
    pub fn status(&mut self, status: &str) -> &mut Self {
        self.verdict = Some(status.to_string());
        self.text.push(format!("verdict: {status}"));
        self
    }

    pub fn pieces(&mut self, pieces: &[SolutionPiece]) -> &mut Self {
        let mut block = format!("solution pieces ({}):", pieces.len());
        for p in pieces {
            block.push('\n');
            block.push_str(&indent(&piece_text(p)));
        }
        self.text.push(block);
        self.pieces = Some(Value::Array(pieces.iter().map(piece_json).collect()));
        self
    }

    pub fn lcp_solutions(&mut self, z: &[Vec<Rational>]) -> &mut Self {
        let lines: Vec<String> = z.iter().map(|v| format!("  z = {}", format_vec(v))).collect();
        self.text.push(format!("solutions:\n{}", lines.join("\n")));
        self.solutions = Some(Value::Array(z.iter().map(|v| json!({ "z": vec_to_json(v) })).collect()));
        self
    }

    pub fn tcp_solutions(&mut self, sols: &[TcpSolution], exact: bool) -> &mut Self {
        let mut block = format!("solutions ({}):", sols.len());
        for s in sols {
            block.push('\n');
            block.push_str(&indent(&tcp_solution_text(s, exact)));
        }
        self.text.push(block);
        self.solutions = Some(Value::Array(sols.iter().map(|s| tcp_solution_json(s, exact)).collect()));
        self
    }

    pub fn emit(&self, format: OutputFormat) -> String {
        match format {
            OutputFormat::Text => {
                let mut out = format!("== {} ==\n", self.title);
                for block in &self.text {
                    out.push_str(block);
                    out.push('\n');
                }
                if !self.timings.is_empty() {
                    let t: Vec<String> = self.timings.iter().map(|(k, ms)| format!("{k} {ms:.3} ms")).collect();
                    out.push_str(&format!("timings: {}\n", t.join(", ")));
                }
                out
            }
            OutputFormat::Json => {
                let timings: Map<String, Value> = self.timings.iter().map(|(k, ms)| (k.clone(), json!(ms))).collect();
                let v = json!({
                    "command": self.title,
                    "verdict": self.verdict,
                    "certificate": self.certificate,
                    "counterexample": self.counterexample,
                    "solutions": self.solutions,
                    "pieces": self.pieces,
                    "timings": timings,
                    "details": self.details,
                });
                serde_json::to_string_pretty(&v).expect("report serializes") + "\n"
            }
        }
    }
}

fn indent(s: &str) -> String {
    s.lines().map(|l| format!("  {l}")).collect::<Vec<_>>().join("\n")
}

fn certificate_json(c: &Certificate) -> Value {
    match c {
        Certificate::ConeRays { patterns, rays_checked } => json!({
            "kind": "sign-cone-rays",
            "patterns": patterns,
            "rays_checked": rays_checked,
        }),
        Certificate::EvenOrderBlock {
            order,
            majorization,
            matrix_certificate,
            implied_by,
        } => json!({
            "kind": "even-order-zero-mixed-block",
            "order": order,
            "majorization": matrix_to_json(majorization),
            "matrix_certificate": certificate_json(matrix_certificate),
            "implied_by": implied_by,
        }),
        Certificate::DecoupledForm { terms } => json!({
            "kind": "decoupled-form",
            "terms": terms.iter().map(|(e, c)| json!({ "exponents": e, "coefficient": format_rational(c) })).collect::<Vec<_>>(),
        }),
        Certificate::Structural(s) => json!({ "kind": "structural", "statement": s }),
    }
}

pub fn counterexample_text(c: &Counterexample) -> String {
    match &c.witness {
        Witness::Point { x, image, values } => format!(
            "x = {}\nA x^(m-1) = {}\nvalues = {}\nviolates: {}",
            format_vec(x),
            format_vec(image),
            format_vec(values),
            c.condition
        ),
        Witness::Entry { index, value } => {
            let idx: Vec<String> = index.iter().map(|i| (i + 1).to_string()).collect();
            format!(
                "entry a[{}] = {}\nviolates: {}",
                idx.join(","),
                format_rational(value),
                c.condition
            )
        }
    }
}

fn counterexample_json(c: &Counterexample) -> Value {
    let witness = match &c.witness {
        Witness::Point { x, image, values } => json!({
            "x": vec_to_json(x),
            "image": vec_to_json(image),
            "values": vec_to_json(values),
        }),
        Witness::Entry { index, value } => json!({
            "index": index.iter().map(|i| i + 1).collect::<Vec<_>>(),
            "value": format_rational(value),
        }),
    };
    json!({ "condition": c.condition, "witness": witness })
}

fn search_text(r: &SearchReport) -> String {
    let mut s = format!("seeds {}, samples {}", r.seeds, r.samples);
    if let Some(m) = r.best_margin {
        s.push_str(&format!(", closest margin {m:.3e}"));
    }
    for n in &r.notes {
        s.push_str(&format!("\n{n}"));
    }
    s
}

fn search_json(r: &SearchReport) -> Value {
    json!({ "seeds": r.seeds, "samples": r.samples, "best_margin": r.best_margin, "notes": r.notes })
}

/// A piece as `base + sum t_k r_k, t_k >= 0` when it has a single vertex,
/// else as a convex hull plus cone.
pub fn piece_text(p: &SolutionPiece) -> String {
    let support: Vec<String> = p.support.iter().map(|i| (i + 1).to_string()).collect();
    let mut s = format!("support {{{}}}: ", support.join(","));
    if p.vertices.len() == 1 {
        s.push_str(&format_vec(&p.vertices[0]));
        for (k, r) in p.rays.iter().enumerate() {
            s.push_str(&format!(" + t{} {}", k + 1, format_vec(r)));
        }
        if !p.rays.is_empty() {
            let ts: Vec<String> = (1..=p.rays.len()).map(|k| format!("t{k}")).collect();
            s.push_str(&format!(", {} >= 0", ts.join(", ")));
        }
    } else {
        let vs: Vec<String> = p.vertices.iter().map(|v| format_vec(v)).collect();
        s.push_str(&format!("conv{{{}}}", vs.join(", ")));
        if !p.rays.is_empty() {
            let rs: Vec<String> = p.rays.iter().map(|v| format_vec(v)).collect();
            s.push_str(&format!(" + cone{{{}}}", rs.join(", ")));
        }
    }
    match &p.w {
        Some(w) => s.push_str(&format!("\nw = {}", format_vec(w))),
        None => s.push_str("\nw varies over the piece"),
    }
    s
}

fn piece_json(p: &SolutionPiece) -> Value {
    json!({
        "support": p.support.iter().map(|i| i + 1).collect::<Vec<_>>(),
        "base": vec_to_json(&p.base),
        "vertices": p.vertices.iter().map(|v| vec_to_json(v)).collect::<Vec<_>>(),
        "rays": p.rays.iter().map(|v| vec_to_json(v)).collect::<Vec<_>>(),
        "w": p.w.as_deref().map(vec_to_json),
    })
}

fn floats(v: &[f64]) -> String {
    let parts: Vec<String> = v.iter().map(|x| format!("{x:.10}")).collect();
    format!("({})", parts.join(", "))
}

pub fn tcp_solution_text(s: &TcpSolution, exact: bool) -> String {
    let x = match (&s.exact, exact) {
        (Some(e), true) => format_vec(e),
        _ => floats(&s.x),
    };
    let w = match (&s.omega_exact, exact) {
        (Some(e), true) => format_vec(e),
        _ => floats(&s.omega),
    };
    let tag = if s.exact.is_some() { "exact" } else { "float" };
    format!("x = {x}  omega = {w}  [{tag}, residual {:.1e}]", s.residual)
}

fn tcp_solution_json(s: &TcpSolution, exact: bool) -> Value {
    json!({
        "x": s.x,
        "omega": s.omega,
        "x_exact": s.exact.as_deref().filter(|_| exact).map(vec_to_json),
        "omega_exact": s.omega_exact.as_deref().filter(|_| exact).map(vec_to_json),
        "residual": s.residual,
    })
}

pub fn w_unique_report(r: &WUniquenessReport) -> Report {
    let mut rep = Report::new("lcp w-unique");
    let status = match (r.unique, r.vacuous) {
        (true, true) => "unique (vacuously: no solutions)",
        (true, false) => "unique",
        (false, _) => "not unique",
    };
    rep.status(status);
    let ws: Vec<String> = r.w_values.iter().map(|w| format_vec(w)).collect();
    rep.text(format!("w values: {}", ws.join(", ")));
    if let Some((a, b)) = &r.witness_pair {
        rep.text(format!("witness pair: z = {} and z = {}", format_vec(a), format_vec(b)));
        rep.detail("witness_pair", json!([vec_to_json(a), vec_to_json(b)]));
    }
    rep.detail("unique", json!(r.unique))
        .detail("vacuous", json!(r.vacuous))
        .detail(
            "w_values",
            Value::Array(r.w_values.iter().map(|w| vec_to_json(w)).collect()),
        );
    rep.pieces(&r.pieces);
    rep
}

pub fn omega_report(r: &OmegaReport, exact: bool) -> Report {
    let mut rep = Report::new("tcp omega-unique");
    let status = match (r.unique, r.vacuous) {
        (Some(true), true) => "unique (vacuously: no solutions)",
        (Some(true), false) => "unique",
        (Some(false), _) => "not unique",
        (None, _) => "undecided",
    };
    rep.status(status);
    rep.text(format!("method: {}", r.method.as_str()));
    if let Some(w) = &r.certified_omega {
        rep.text(format!("certified omega: {}", format_vec(w)));
        rep.certificate = Some(json!({ "method": r.method.as_str(), "omega": vec_to_json(w) }));
    }
    if let Some((a, b)) = &r.witness_pair {
        rep.text(format!(
            "witness pair:\n{}\n{}",
            indent(&tcp_solution_text(a, exact)),
            indent(&tcp_solution_text(b, exact))
        ));
        rep.counterexample = Some(json!([tcp_solution_json(a, exact), tcp_solution_json(b, exact)]));
    }
    for n in &r.notes {
        rep.text(format!("note: {n}"));
    }
    rep.detail("unique", json!(r.unique))
        .detail("vacuous", json!(r.vacuous))
        .detail("method", json!(r.method.as_str()))
        .detail("omega_values", json!(r.omega_values))
        .detail("notes", json!(r.notes));
    rep
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::ints;

    #[test]
    fn json_keeps_documented_keys() {
        let mut r = Report::new("check");
        r.verdict(&Verdict::Holds(Certificate::Structural("ok".into())));
        let v: Value = serde_json::from_str(&r.emit(OutputFormat::Json)).unwrap();
        for key in [
            "verdict",
            "certificate",
            "counterexample",
            "solutions",
            "pieces",
            "timings",
        ] {
            assert!(v.get(key).is_some(), "missing {key}");
        }
        assert_eq!(v["verdict"], "holds");
        assert!(v["counterexample"].is_null());
    }

    #[test]
    fn counterexamples_print_exactly() {
        let c = Counterexample {
            witness: Witness::Point {
                x: vec![Rational::new(1.into(), 3.into()), Rational::from_integer((-1).into())],
                image: ints(&[0, 1]),
                values: ints(&[0, -1]),
            },
            condition: "demo".into(),
        };
        let mut r = Report::new("check");
        r.verdict(&Verdict::Fails(c));
        let text = r.emit(OutputFormat::Text);
        assert!(text.contains("x = (1/3, -1)"));
        let v: Value = serde_json::from_str(&r.emit(OutputFormat::Json)).unwrap();
        assert_eq!(v["counterexample"]["witness"]["x"][0], "1/3");
    }

    #[test]
    fn pieces_print_as_base_plus_rays() {
        let p = SolutionPiece {
            support: vec![1, 2],
            base: ints(&[0, 1, 0]),
            directions: vec![],
            vertices: vec![ints(&[0, 1, 0])],
            rays: vec![ints(&[0, 0, 1])],
            w_constant: true,
            w: Some(ints(&[0, 0, 0])),
        };
        assert_eq!(
            piece_text(&p),
            "support {2,3}: (0, 1, 0) + t1 (0, 0, 1), t1 >= 0\nw = (0, 0, 0)"
        );
    }
}
