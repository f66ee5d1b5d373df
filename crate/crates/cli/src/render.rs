//! Text, JSON and CSV renderings. JSON numbers are emitted as decimal
//! strings so that arbitrarily large values survive any consumer.

use std::fmt::Write as _;

use serde_json::{json, Map, Value};
use twobridge::contfrac::EvenCfTrace;
use twobridge::diagram::MuValue;
use twobridge::goeritz::{DiagonalForm, GoeritzMatrix, TransitionMatrix};
use twobridge::signature::{SliceVerdict, SumSpec};
use twobridge::{ContinuedFraction, Int, Matrix, SignatureReport};

pub const SIGNATURE_COLUMNS: [&str; 7] = ["p", "q", "cf", "sigmaG", "mu", "sigma", "det"];

fn s(x: impl ToString) -> Value {
    Value::String(x.to_string())
}

fn matrix_json<T: std::fmt::Display>(m: &Matrix<T>) -> Value {
    Value::Array(m.rows().map(|r| Value::Array(r.iter().map(s).collect())).collect())
}

pub fn pretty(v: &Value) -> String {
    serde_json::to_string_pretty(v).expect("serializable") + "\n"
}

pub fn csv_table(header: &[&str], rows: &[Vec<String>]) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(header).expect("in-memory write");
    for r in rows {
        w.write_record(r).expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf-8")
}

/// The fraction a report is about: the input fraction, or `p_n/q_n` of its
/// expansion with the sign on `p`.
pub fn report_fraction(r: &SignatureReport) -> (Int, Int) {
    match &r.fraction {
        Some(f) => f.clone(),
        None => {
            let (p, q) = r.cf.convergents().last().clone();
            if q < Int::from(0) {
                (-p, -q)
            } else {
                (p, q)
            }
        }
    }
}

pub fn signature_row(r: &SignatureReport) -> Vec<String> {
    let (p, q) = report_fraction(r);
    vec![
        p.to_string(),
        q.to_string(),
        r.cf.to_string(),
        r.sigma_g.to_string(),
        r.mu.to_string(),
        r.sigma.to_string(),
        r.determinant.to_string(),
    ]
}

fn trace_json(t: &EvenCfTrace) -> Value {
    let row = |r: &twobridge::TraceRow| json!({"step": s(r.step), "c": s(&r.coefficient), "eps": s(r.sign), "r": s(&r.remainder)});
    json!({
        "signOfP": s(t.sign_of_p),
        "first": row(&t.first),
        "rows": t.rows.iter().map(row).collect::<Vec<_>>(),
        "completion": s(t.completion),
        "target": s(format!("{}/{}", t.target.0, t.target.1)),
    })
}

pub fn signature_json(r: &SignatureReport) -> Value {
    let (p, q) = report_fraction(r);
    let mut m = Map::new();
    m.insert("p".into(), s(p));
    m.insert("q".into(), s(q));
    m.insert("cf".into(), s(&r.cf));
    m.insert("sigmaG".into(), s(&r.sigma_g));
    m.insert("mu".into(), s(&r.mu));
    m.insert("sigma".into(), s(&r.sigma));
    m.insert("det".into(), s(&r.determinant));
    m.insert("method".into(), s(r.method));
    m.insert("congruenceFallback".into(), Value::Bool(r.congruence_fallback));
    if let Some(t) = &r.even_cf {
        m.insert("evenCf".into(), trace_json(t));
    }
    Value::Object(m)
}

pub fn signature_text(r: &SignatureReport) -> String {
    let (p, q) = report_fraction(r);
    let mut out = String::new();
    let _ = writeln!(out, "K({p}/{q})");
    let _ = writeln!(out, "  expansion    {}", r.cf);
    if let Some(t) = &r.even_cf {
        if t.uses_isotopic_fraction() {
            let _ = writeln!(out, "               (evaluates to the isotopic {}/{})", t.target.0, t.target.1);
        }
    }
    let _ = writeln!(out, "  sigma(G)     {}", r.sigma_g);
    let _ = writeln!(out, "  mu           {}", r.mu);
    let _ = writeln!(out, "  signature    {}", r.sigma);
    let _ = writeln!(out, "  determinant  {}", r.determinant);
    let _ = writeln!(out, "  method       {}", r.method);
    if r.congruence_fallback {
        let _ = writeln!(out, "  note         closed form degenerate; sigma(G) by congruence");
    }
    out
}

pub struct GoeritzView<'a> {
    pub cf: &'a ContinuedFraction,
    pub goeritz: &'a GoeritzMatrix,
    pub sigma_g: &'a Int,
    /// Closed form and transition matrix, absent when the closed form
    /// degenerates.
    pub closed: Option<(&'a DiagonalForm, &'a TransitionMatrix)>,
    pub congruence: &'a DiagonalForm,
}

pub fn goeritz_json(v: &GoeritzView) -> Value {
    let labels: Vec<Value> = v.goeritz.basis.labels().iter().map(s).collect();
    let entries = |d: &DiagonalForm| Value::Array(d.entries.iter().map(s).collect());
    let mut m = Map::new();
    m.insert("cf".into(), s(v.cf));
    m.insert("basis".into(), Value::Array(labels));
    m.insert("matrix".into(), matrix_json(&v.goeritz.matrix));
    m.insert("det".into(), s(v.goeritz.determinant()));
    m.insert("sigmaG".into(), s(v.sigma_g));
    m.insert("congruenceDiagonal".into(), entries(v.congruence));
    match v.closed {
        Some((d, p)) => {
            m.insert("diagonal".into(), entries(d));
            m.insert("transition".into(), matrix_json(&p.matrix));
            m.insert("transitionDet".into(), s(p.determinant()));
        }
        None => {
            m.insert("diagonal".into(), Value::Null);
            m.insert("transition".into(), Value::Null);
        }
    }
    Value::Object(m)
}

fn matrix_text<T: ToString>(labels: &[String], m: &Matrix<T>) -> String {
    let cells: Vec<Vec<String>> = m.rows().map(|r| r.iter().map(ToString::to_string).collect()).collect();
    let width = cells.iter().flatten().chain(labels.iter()).map(String::len).max().unwrap_or(1);
    let lw = labels.iter().map(String::len).max().unwrap_or(0);
    let mut out = String::new();
    let _ = write!(out, "    {:lw$}", "");
    for l in labels {
        let _ = write!(out, " {l:>width$}");
    }
    out.push('\n');
    for (l, row) in labels.iter().zip(&cells) {
        let _ = write!(out, "    {l:lw$}");
        for c in row {
            let _ = write!(out, " {c:>width$}");
        }
        out.push('\n');
    }
    out
}

fn join<T: ToString>(xs: &[T]) -> String {
    xs.iter().map(ToString::to_string).collect::<Vec<_>>().join(", ")
}

pub fn goeritz_text(v: &GoeritzView) -> String {
    let labels: Vec<String> = v.goeritz.basis.labels().iter().map(ToString::to_string).collect();
    let mut out = String::new();
    let _ = writeln!(out, "Goeritz matrix of {} ({}x{})", v.cf, v.goeritz.size(), v.goeritz.size());
    out.push_str(&matrix_text(&labels, &v.goeritz.matrix));
    let _ = writeln!(out, "  det G        {}", v.goeritz.determinant());
    let _ = writeln!(out, "  sigma(G)     {}", v.sigma_g);
    match v.closed {
        Some((d, p)) => {
            let _ = writeln!(out, "  closed form  [{}]", join(&d.entries));
            let _ = writeln!(out, "Transition matrix P (det {}), P^T G P = closed form", p.determinant());
            out.push_str(&matrix_text(&labels, &p.matrix));
        }
        None => {
            let _ = writeln!(out, "  closed form  degenerate (a lambda vanishes)");
        }
    }
    let _ = writeln!(out, "  congruence   [{}]", join(&v.congruence.entries));
    out
}

pub fn goeritz_rows(v: &GoeritzView) -> (Vec<String>, Vec<Vec<String>>) {
    let mut header = vec!["basis".to_string()];
    header.extend(v.goeritz.basis.labels().iter().map(ToString::to_string));
    let rows = v
        .goeritz
        .basis
        .labels()
        .iter()
        .zip(v.goeritz.matrix.rows())
        .map(|(l, r)| std::iter::once(l.to_string()).chain(r.iter().map(ToString::to_string)).collect())
        .collect();
    (header, rows)
}

pub fn even_cf_json(cf: &ContinuedFraction, t: &EvenCfTrace) -> Value {
    json!({"cf": s(cf), "evenCf": trace_json(t)})
}

pub const TRACE_COLUMNS: [&str; 4] = ["step", "c", "eps", "r"];

pub fn trace_rows(t: &EvenCfTrace) -> Vec<Vec<String>> {
    std::iter::once(&t.first)
        .chain(&t.rows)
        .map(|r| vec![r.step.to_string(), r.coefficient.to_string(), r.sign.to_string(), r.remainder.to_string()])
        .collect()
}

pub fn even_cf_text(p: &Int, q: &Int, cf: &ContinuedFraction, t: &EvenCfTrace) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "{p}/{q} = {cf}");
    if t.uses_isotopic_fraction() {
        let _ = writeln!(
            out,
            "  completion {}: the expansion evaluates to {}/{}, an isotopic knot",
            t.completion, t.target.0, t.target.1
        );
    } else if t.completion != twobridge::contfrac::Completion::None {
        let _ = writeln!(out, "  completion {}", t.completion);
    }
    let f = &t.first;
    let _ = writeln!(out, "  step 1: c = {}, eps = {}, r = {}", f.coefficient, f.sign, f.remainder);
    let body = trace_rows(t).into_iter().skip(1).collect::<Vec<_>>();
    let widths: Vec<usize> =
        (0..4).map(|i| body.iter().map(|r| r[i].len()).chain([TRACE_COLUMNS[i].len()]).max().unwrap_or(1)).collect();
    let line = |cells: &[String]| {
        let parts: Vec<String> = cells.iter().zip(&widths).map(|(c, w)| format!("{c:>w$}")).collect();
        format!("  {}\n", parts.join("  "))
    };
    out.push_str(&line(&TRACE_COLUMNS.map(String::from)));
    for r in &body {
        out.push_str(&line(r));
    }
    out
}

pub const MU_COLUMNS: [&str; 6] = ["position", "c", "eta", "type", "strands", "contribution"];

pub fn mu_rows(m: &MuValue) -> Vec<Vec<String>> {
    m.contributions
        .iter()
        .map(|r| {
            vec![
                r.position.to_string(),
                r.coefficient.to_string(),
                r.eta.to_string(),
                r.tau.to_string(),
                r.strands.to_string(),
                r.contribution.to_string(),
            ]
        })
        .collect()
}

pub fn mu_json(cf: &ContinuedFraction, m: &MuValue) -> Value {
    let regions: Vec<Value> = m
        .contributions
        .iter()
        .map(|r| {
            json!({
                "position": s(r.position),
                "c": s(&r.coefficient),
                "eta": s(r.eta),
                "type": s(r.tau),
                "strands": s(r.strands),
                "contribution": s(&r.contribution),
            })
        })
        .collect();
    let table = match m.table {
        Some(t) => json!({"length": s(t.length), "row": s(t.row), "reversed": t.reversed}),
        None => Value::Null,
    };
    json!({"cf": s(cf), "mu": s(&m.total), "regions": regions, "table": table})
}

pub fn mu_text(cf: &ContinuedFraction, m: &MuValue) -> String {
    let rows = mu_rows(m);
    let widths: Vec<usize> = (0..MU_COLUMNS.len())
        .map(|i| rows.iter().map(|r| r[i].len()).chain([MU_COLUMNS[i].len()]).max().unwrap_or(1))
        .collect();
    let line = |cells: &[String]| {
        let parts: Vec<String> = cells.iter().zip(&widths).map(|(c, w)| format!("{c:>w$}")).collect();
        format!("  {}\n", parts.join("  "))
    };
    let mut out = format!("Correction term of {cf}\n");
    out.push_str(&line(&MU_COLUMNS.map(String::from)));
    for r in &rows {
        out.push_str(&line(r));
    }
    let _ = writeln!(out, "  mu = {}", m.total);
    if let Some(t) = m.table {
        let rev = if t.reversed { ", reversed" } else { "" };
        let _ = writeln!(out, "  matches table row {} for length {}{rev}", t.row, t.length);
    }
    out
}

pub struct SumView<'a> {
    pub spec: &'a SumSpec,
    pub each: &'a [Int],
    pub total: &'a Int,
    pub verdict: &'a SliceVerdict,
}

pub const SUM_COLUMNS: [&str; 4] = ["mult", "p", "q", "sigma"];

pub fn sum_rows(v: &SumView) -> Vec<Vec<String>> {
    v.spec
        .entries
        .iter()
        .zip(v.each)
        .map(|(e, s)| vec![e.multiplicity.to_string(), e.p.to_string(), e.q.to_string(), s.to_string()])
        .collect()
}

pub fn sum_json(v: &SumView) -> Value {
    let entries: Vec<Value> = v
        .spec
        .entries
        .iter()
        .zip(v.each)
        .map(|(e, sig)| json!({"mult": s(&e.multiplicity), "p": s(&e.p), "q": s(&e.q), "sigma": s(sig)}))
        .collect();
    let verdict = match v.verdict {
        SliceVerdict::Obstructed { .. } => "obstructed",
        SliceVerdict::Inconclusive => "inconclusive",
    };
    json!({"entries": entries, "total": s(v.total), "verdict": verdict})
}

pub fn sum_text(v: &SumView) -> String {
    let mut out = String::new();
    for r in sum_rows(v) {
        let _ = writeln!(out, "  {:>4} x K({}/{})  sigma {}", r[0], r[1], r[2], r[3]);
    }
    let _ = writeln!(out, "total signature {}", v.total);
    let _ = writeln!(out, "{}", v.verdict);
    out
}
