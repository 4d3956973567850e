//! Plain-text and JSON formats for tensors, matrices and vectors.
//!
//! Tensor text format: the first non-comment line is `m n`; every further
//! line is `i1 .. im value` with 1-based indices and an integer, decimal or
//! `p/q` value. `#` starts a comment. Duplicate tuples are summed.

use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::numeric::{format_rational, parse_rational, Rational};
use crate::tensor::SparseTensor;

fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines().enumerate().filter_map(|(k, raw)| {
        let line = raw.split('#').next().unwrap_or("").trim();
        (!line.is_empty()).then_some((k + 1, line))
    })
}

fn at_line(line: usize, e: Error) -> Error {
    match e {
        Error::Parse { message, .. } => Error::parse(line, message),
        other => Error::parse(line, other.to_string()),
    }
}

fn parse_usize(token: &str, line: usize, what: &str) -> Result<usize> {
    token
        .parse()
        .map_err(|_| Error::parse(line, format!("invalid {what} '{token}'")))
}

pub fn parse_tensor(text: &str) -> Result<SparseTensor> {
    let mut lines = content_lines(text);
    let (hline, header) = lines.next().ok_or_else(|| Error::parse(0, "missing 'm n' header"))?;
    let fields: Vec<&str> = header.split_whitespace().collect();
    if fields.len() != 2 {
        return Err(Error::parse(hline, "header must be 'm n'"));
    }
    let order = parse_usize(fields[0], hline, "order")?;
    let dim = parse_usize(fields[1], hline, "dimension")?;
    let mut t = SparseTensor::zeros(order, dim).map_err(|e| at_line(hline, e))?;
    for (k, line) in lines {
        let fields: Vec<&str> = line.split_whitespace().collect();
        if fields.len() != order + 1 {
            return Err(Error::parse(
                k,
                format!("expected {} indices and a value, found {} fields", order, fields.len()),
            ));
        }
        let mut index = Vec::with_capacity(order);
        for f in &fields[..order] {
            let i = parse_usize(f, k, "index")?;
            if i == 0 || i > dim {
                return Err(at_line(k, Error::IndexOutOfRange { index: i, dim }));
            }
            index.push(i - 1);
        }
        let value = parse_rational(fields[order]).map_err(|e| at_line(k, e))?;
        t.accumulate(index, value).map_err(|e| at_line(k, e))?;
    }
    Ok(t)
}

/// Canonical text form; entries in lexicographic index order.
pub fn format_tensor(t: &SparseTensor) -> String {
    let mut out = format!("{} {}\n", t.order(), t.dim());
    for (index, v) in t.entries() {
        for i in index {
            out.push_str(&(i + 1).to_string());
            out.push(' ');
        }
        out.push_str(&format_rational(v));
        out.push('\n');
    }
    out
}

pub fn tensor_to_json(t: &SparseTensor) -> Value {
    let entries: Vec<Value> = t
        .entries()
        .map(|(index, v)| {
            json!({
                "index": index.iter().map(|i| i + 1).collect::<Vec<_>>(),
                "value": format_rational(v),
            })
        })
        .collect();
    json!({ "order": t.order(), "dim": t.dim(), "entries": entries })
}

pub fn tensor_from_json(v: &Value) -> Result<SparseTensor> {
    let field = |name: &str| {
        v.get(name)
            .and_then(Value::as_u64)
            .map(|x| x as usize)
            .ok_or_else(|| Error::parse(0, format!("missing integer field '{name}'")))
    };
    let mut t = SparseTensor::zeros(field("order")?, field("dim")?)?;
    let entries = v
        .get("entries")
        .and_then(Value::as_array)
        .ok_or_else(|| Error::parse(0, "missing array field 'entries'"))?;
    for (k, e) in entries.iter().enumerate() {
        let bad = || Error::parse(k + 1, "entry needs 'index' (1-based integers) and 'value'");
        let index: Vec<usize> = e
            .get("index")
            .and_then(Value::as_array)
            .ok_or_else(bad)?
            .iter()
            .map(|i| i.as_u64().filter(|&i| i >= 1).map(|i| i as usize - 1).ok_or_else(bad))
            .collect::<Result<_>>()?;
        let value = match e.get("value") {
            Some(Value::String(s)) => parse_rational(s),
            Some(Value::Number(n)) => parse_rational(&n.to_string()),
            _ => Err(bad()),
        }
        .map_err(|e| at_line(k + 1, e))?;
        t.accumulate(index, value).map_err(|e| at_line(k + 1, e))?;
    }
    Ok(t)
}

/// Parses a tensor from either the text format or its JSON mirror.
pub fn parse_tensor_any(text: &str) -> Result<SparseTensor> {
    if text.trim_start().starts_with('{') {
        let v: Value = serde_json::from_str(text).map_err(|e| Error::parse(e.line(), e.to_string()))?;
        tensor_from_json(&v)
    } else {
        parse_tensor(text)
    }
}

/// A vector given as whitespace- or comma-separated numbers, optionally in
/// parentheses or brackets.
pub fn parse_vector(s: &str) -> Result<Vec<Rational>> {
    let inner = s.trim().trim_start_matches(['(', '[']).trim_end_matches([')', ']']);
    inner
        .split(|c: char| c == ',' || c.is_whitespace())
        .filter(|tok| !tok.is_empty())
        .map(parse_rational)
        .collect()
}

/// Matrix/vector text format: `k`, then `k` rows of `k` entries, then `q` on
/// one line.
pub fn parse_lcp(text: &str) -> Result<(Matrix, Vec<Rational>)> {
    let mut lines = content_lines(text);
    let (hline, header) = lines.next().ok_or_else(|| Error::parse(0, "missing size line"))?;
    let k = parse_usize(header, hline, "size")?;
    let mut rows = Vec::with_capacity(k);
    let mut last = hline;
    for _ in 0..k {
        let (line, text) = lines
            .next()
            .ok_or_else(|| Error::parse(last, format!("expected {k} matrix rows")))?;
        let row = parse_vector(text).map_err(|e| at_line(line, e))?;
        if row.len() != k {
            return Err(Error::parse(
                line,
                format!("row has {} entries, expected {k}", row.len()),
            ));
        }
        rows.push(row);
        last = line;
    }
    let (line, text) = lines.next().ok_or_else(|| Error::parse(last, "missing q line"))?;
    let q = parse_vector(text).map_err(|e| at_line(line, e))?;
    if q.len() != k {
        return Err(Error::parse(line, format!("q has {} entries, expected {k}", q.len())));
    }
    if let Some((line, _)) = lines.next() {
        return Err(Error::parse(line, "unexpected trailing content"));
    }
    Ok((Matrix::from_rows(rows)?, q))
}

pub fn format_lcp(m: &Matrix, q: &[Rational]) -> String {
    let mut out = format!("{}\n", m.rows());
    let line = |v: &[Rational]| v.iter().map(format_rational).collect::<Vec<_>>().join(" ");
    for i in 0..m.rows() {
        out.push_str(&line(m.row(i)));
        out.push('\n');
    }
    out.push_str(&line(q));
    out.push('\n');
    out
}

/// Tab-separated rows with an optional header line.
pub fn format_delimited(m: &Matrix, headers: Option<&[String]>) -> String {
    let mut out = String::new();
    if let Some(h) = headers {
        out.push_str(&h.join("\t"));
        out.push('\n');
    }
    for i in 0..m.rows() {
        let row: Vec<String> = m.row(i).iter().map(format_rational).collect();
        out.push_str(&row.join("\t"));
        out.push('\n');
    }
    out
}

pub fn matrix_to_json(m: &Matrix) -> Value {
    Value::Array(m.to_rows().iter().map(|r| vec_to_json(r)).collect())
}

pub fn vec_to_json(v: &[Rational]) -> Value {
    Value::Array(v.iter().map(|x| Value::String(format_rational(x))).collect())
}
