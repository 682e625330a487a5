//! JSON instance and module files.
//!
//! Structure constants are sparse lists of index tuples followed by a rational
//! literal. Saving is canonical: fixed field order, entries sorted by index tuple,
//! zero entries omitted, one entry per line.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::Path;

use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::bimonad::{Algebra, Coalgebra, WeakBraidedBimonad, WeakYBPair};
use crate::error::{Error, Result};
use crate::exactmat::{format_rational, parse_rational, Mat, Rational, Scalar};
use crate::hopfmodules::MixedBimodule;
use crate::tensorexpr::TensorMap;

use super::graded_flip;

/// Pinned results for regression checks.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Expected {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub base_dim: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tensor_dim: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cotensor_dim: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub gamma_rank: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub hopf: Option<bool>,
}

#[derive(Deserialize)]
#[serde(untagged)]
enum RawTau {
    Token(String),
    Entries(Vec<(usize, usize, usize, usize, String)>),
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawInstance {
    name: String,
    dim: usize,
    m: Vec<(usize, usize, usize, String)>,
    e: Vec<(usize, String)>,
    delta: Vec<(usize, usize, usize, String)>,
    eps: Vec<(usize, String)>,
    tau: RawTau,
    #[serde(default)]
    tau_prime: Option<RawTau>,
    #[serde(default)]
    grading: Option<Vec<u8>>,
    #[serde(default)]
    expected: Option<Expected>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawModule {
    dim: usize,
    h: Vec<(usize, usize, usize, String)>,
    theta: Vec<(usize, usize, usize, String)>,
}

fn schema(locator: impl Into<String>, msg: impl Into<String>) -> Error {
    Error::Schema { locator: locator.into(), msg: msg.into() }
}

fn from_json<T: for<'de> Deserialize<'de>>(text: &str) -> Result<T> {
    serde_json::from_str(text)
        .map_err(|e| schema(format!("line {} column {}", e.line(), e.column()), e.to_string()))
}

/// Scatter sparse entries into a dense matrix. `bounds` are the index ranges and
/// `place` maps an index tuple to `(row, col)`.
fn scatter(
    field: &str,
    rows: usize,
    cols: usize,
    entries: &[(Vec<usize>, &str)],
    bounds: &[usize],
    place: impl Fn(&[usize]) -> (usize, usize),
) -> Result<Mat> {
    let mut m = Mat::zeros(rows, cols);
    let mut seen: BTreeMap<Vec<usize>, usize> = BTreeMap::new();
    for (k, (idx, lit)) in entries.iter().enumerate() {
        let locator = format!("{field}[{k}]");
        for (pos, (&i, &bound)) in idx.iter().zip(bounds).enumerate() {
            if i >= bound {
                return Err(Error::IndexOutOfRange { locator: format!("{locator}[{pos}]"), index: i, bound });
            }
        }
        if let Some(first) = seen.insert(idx.clone(), k) {
            return Err(schema(locator, format!("duplicate of {field}[{first}]")));
        }
        let q = parse_rational(lit).map_err(|e| match e {
            Error::Schema { msg, .. } => schema(format!("{locator}[{}]", idx.len()), msg),
            other => other,
        })?;
        let (r, c) = place(idx);
        m.set(r, c, q);
    }
    Ok(m)
}

fn triples(v: &[(usize, usize, usize, String)]) -> Vec<(Vec<usize>, &str)> {
    v.iter().map(|(a, b, c, s)| (vec![*a, *b, *c], s.as_str())).collect()
}

fn singles(v: &[(usize, String)]) -> Vec<(Vec<usize>, &str)> {
    v.iter().map(|(a, s)| (vec![*a], s.as_str())).collect()
}

fn tau_matrix(field: &str, raw: &RawTau, n: usize, grading: Option<&[u8]>) -> Result<TensorMap> {
    match raw {
        RawTau::Token(t) if t == "flip" => Ok(match grading {
            Some(g) => graded_flip(g),
            None => TensorMap::swap(n, n),
        }),
        RawTau::Token(t) => Err(schema(field, format!("unknown token \"{t}\" (expected \"flip\" or a list)"))),
        RawTau::Entries(v) => {
            let entries: Vec<(Vec<usize>, &str)> =
                v.iter().map(|(a, b, c, d, s)| (vec![*a, *b, *c, *d], s.as_str())).collect();
            let m = scatter(field, n * n, n * n, &entries, &[n; 4], |x| (x[2] * n + x[3], x[0] * n + x[1]))?;
            TensorMap::new(vec![n, n], vec![n, n], m)
        }
    }
}

/// Parse an instance document.
pub fn instance_from_str(text: &str) -> Result<WeakBraidedBimonad> {
    let raw: RawInstance = from_json(text)?;
    let n = raw.dim;
    if n == 0 {
        return Err(schema("dim", "dimension must be positive"));
    }
    if let Some(g) = &raw.grading {
        if g.len() != n {
            return Err(schema("grading", format!("expected {n} entries, got {}", g.len())));
        }
        if let Some(k) = g.iter().position(|&x| x > 1) {
            return Err(schema(format!("grading[{k}]"), "grading entries must be 0 or 1"));
        }
    }
    let m = scatter("m", n, n * n, &triples(&raw.m), &[n; 3], |x| (x[2], x[0] * n + x[1]))?;
    let e = scatter("e", n, 1, &singles(&raw.e), &[n], |x| (x[0], 0))?;
    let d = scatter("delta", n * n, n, &triples(&raw.delta), &[n; 3], |x| (x[1] * n + x[2], x[0]))?;
    let eps = scatter("eps", 1, n, &singles(&raw.eps), &[n], |x| (0, x[0]))?;
    let grading = raw.grading.as_deref();
    let tau = tau_matrix("tau", &raw.tau, n, grading)?;
    let yb = match &raw.tau_prime {
        Some(tp) => WeakYBPair::new(n, tau, tau_matrix("tau_prime", tp, n, grading)?)?,
        None => WeakYBPair::involutive(n, tau).map_err(|_| schema("tau_prime", "required unless tau·tau = id"))?,
    };
    let alg = Algebra::new(n, TensorMap::new(vec![n, n], vec![n], m)?, TensorMap::new(vec![], vec![n], e)?)?;
    let coa = Coalgebra::new(n, TensorMap::new(vec![n], vec![n, n], d)?, TensorMap::new(vec![n], vec![], eps)?)?;
    let mut b = WeakBraidedBimonad::new(&raw.name, alg, coa, yb)?;
    b.expected = raw.expected;
    Ok(b)
}

pub fn load(path: impl AsRef<Path>) -> Result<WeakBraidedBimonad> {
    let text = std::fs::read_to_string(path.as_ref())
        .map_err(|e| Error::Io(format!("{}: {e}", path.as_ref().display())))?;
    instance_from_str(&text)
}

fn json_str(s: &str) -> String {
    serde_json::to_string(s).expect("strings serialize")
}

/// Write a list field with one entry per line.
fn write_list(out: &mut String, field: &str, items: &[String], last: bool) {
    if items.is_empty() {
        let _ = write!(out, "  \"{field}\": []");
    } else {
        let _ = writeln!(out, "  \"{field}\": [");
        for (k, item) in items.iter().enumerate() {
            let sep = if k + 1 == items.len() { "" } else { "," };
            let _ = writeln!(out, "    {item}{sep}");
        }
        let _ = write!(out, "  ]");
    }
    out.push_str(if last { "\n" } else { ",\n" });
}

fn entry(idx: &[usize], q: &Rational) -> String {
    let parts: Vec<String> = idx.iter().map(ToString::to_string).collect();
    format!("[{}, {}]", parts.join(", "), json_str(&format_rational(q)))
}

fn tau_entries(t: &TensorMap, n: usize) -> Vec<String> {
    let mut out = Vec::new();
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                for l in 0..n {
                    let q = t.mat().get(k * n + l, i * n + j);
                    if !Scalar::is_zero(q) {
                        out.push(entry(&[i, j, k, l], q));
                    }
                }
            }
        }
    }
    out
}

/// A grading whose signed flip equals `t`, if any.
fn detect_grading(t: &TensorMap, n: usize) -> Option<Vec<u8>> {
    let g: Vec<u8> = (0..n).map(|i| u8::from(t.mat().get(i * n + i, i * n + i) == &-<Rational as One>::one())).collect();
    (graded_flip(&g) == *t).then_some(g)
}

/// Canonical text of an instance.
pub fn instance_to_string(b: &WeakBraidedBimonad) -> String {
    let n = b.n();
    let mut out = String::from("{\n");
    let _ = writeln!(out, "  \"name\": {},", json_str(&b.name));
    let _ = writeln!(out, "  \"dim\": {n},");
    let mut m = Vec::new();
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                let q = b.m().mat().get(k, i * n + j);
                if !Scalar::is_zero(q) {
                    m.push(entry(&[i, j, k], q));
                }
            }
        }
    }
    write_list(&mut out, "m", &m, false);
    let e: Vec<String> =
        (0..n).filter(|&i| !Scalar::is_zero(b.e().mat().get(i, 0))).map(|i| entry(&[i], b.e().mat().get(i, 0))).collect();
    write_list(&mut out, "e", &e, false);
    let mut d = Vec::new();
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                let q = b.delta().mat().get(j * n + k, i);
                if !Scalar::is_zero(q) {
                    d.push(entry(&[i, j, k], q));
                }
            }
        }
    }
    write_list(&mut out, "delta", &d, false);
    let eps: Vec<String> = (0..n)
        .filter(|&i| !Scalar::is_zero(b.eps().mat().get(0, i)))
        .map(|i| entry(&[i], b.eps().mat().get(0, i)))
        .collect();
    let grading = detect_grading(b.tau(), n);
    let tau_is_involutive_prime = b.tau_prime() == b.tau() && b.nabla() == &TensorMap::id_power(n, 2);
    let mut tail: Vec<(String, Option<Vec<String>>)> = Vec::new();
    match &grading {
        Some(_) => tail.push(("  \"tau\": \"flip\"".into(), None)),
        None => tail.push(("tau".into(), Some(tau_entries(b.tau(), n)))),
    }
    if !tau_is_involutive_prime {
        tail.push(("tau_prime".into(), Some(tau_entries(b.tau_prime(), n))));
    }
    if let Some(g) = grading.as_ref().filter(|g| g.contains(&1)) {
        let parts: Vec<String> = g.iter().map(ToString::to_string).collect();
        tail.push((format!("  \"grading\": [{}]", parts.join(", ")), None));
    }
    if let Some(exp) = &b.expected {
        let body = serde_json::to_string(exp).expect("expected block serializes");
        let body = body.replace(',', ", ").replace(':', ": ");
        tail.push((format!("  \"expected\": {body}"), None));
    }
    write_list(&mut out, "eps", &eps, false);
    let count = tail.len();
    for (k, (head, items)) in tail.into_iter().enumerate() {
        let last = k + 1 == count;
        match items {
            Some(items) => write_list(&mut out, &head, &items, last),
            None => {
                out.push_str(&head);
                out.push_str(if last { "\n" } else { ",\n" });
            }
        }
    }
    out.push_str("}\n");
    out
}

pub fn save(b: &WeakBraidedBimonad, path: impl AsRef<Path>) -> Result<()> {
    std::fs::write(path.as_ref(), instance_to_string(b)).map_err(|e| Error::Io(format!("{}: {e}", path.as_ref().display())))
}

/// Parse a mixed-bimodule document over an instance of dimension `n`.
pub fn module_from_str(text: &str, n: usize) -> Result<MixedBimodule> {
    let raw: RawModule = from_json(text)?;
    let d = raw.dim;
    let h = scatter("h", d, n * d, &triples(&raw.h), &[n, d, d], |x| (x[2], x[0] * d + x[1]))?;
    let theta = scatter("theta", n * d, d, &triples(&raw.theta), &[n, d, d], |x| (x[0] * d + x[1], x[2]))?;
    MixedBimodule::new(n, d, TensorMap::new(vec![n, d], vec![d], h)?, TensorMap::new(vec![d], vec![n, d], theta)?)
}

pub fn load_module(path: impl AsRef<Path>, n: usize) -> Result<MixedBimodule> {
    let text = std::fs::read_to_string(path.as_ref())
        .map_err(|e| Error::Io(format!("{}: {e}", path.as_ref().display())))?;
    module_from_str(&text, n)
}

/// Canonical text of a mixed bimodule.
pub fn module_to_string(mb: &MixedBimodule) -> String {
    let (n, d) = (mb.n, mb.dim);
    let mut out = String::from("{\n");
    let _ = writeln!(out, "  \"dim\": {d},");
    let mut h = Vec::new();
    let mut theta = Vec::new();
    for i in 0..n {
        for j in 0..d {
            for k in 0..d {
                let q = mb.h.mat().get(k, i * d + j);
                if !Scalar::is_zero(q) {
                    h.push(entry(&[i, j, k], q));
                }
                let q = mb.theta.mat().get(i * d + j, k);
                if !Scalar::is_zero(q) {
                    theta.push(entry(&[i, j, k], q));
                }
            }
        }
    }
    write_list(&mut out, "h", &h, false);
    write_list(&mut out, "theta", &theta, true);
    out.push_str("}\n");
    out
}

pub fn save_module(mb: &MixedBimodule, path: impl AsRef<Path>) -> Result<()> {
    std::fs::write(path.as_ref(), module_to_string(mb))
        .map_err(|e| Error::Io(format!("{}: {e}", path.as_ref().display())))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instances::{groupoid_algebra, super_line, GroupoidSpec};

    #[test]
    fn round_trip_is_identity_on_canonical_text() {
        for b in [groupoid_algebra(&GroupoidSpec::full(2)).unwrap(), super_line()] {
            let text = instance_to_string(&b);
            let back = instance_from_str(&text).unwrap();
            assert_eq!(back, b);
            assert_eq!(instance_to_string(&back), text);
        }
    }

    #[test]
    fn flip_token_expands() {
        let text = r#"{"name": "t", "dim": 2, "m": [], "e": [], "delta": [], "eps": [], "tau": "flip"}"#;
        let b = instance_from_str(text).unwrap();
        assert_eq!(b.tau(), &TensorMap::swap(2, 2));
        assert_eq!(b.tau_prime(), b.tau());
    }

    #[test]
    fn duplicates_and_ranges_are_rejected() {
        let dup = r#"{"name": "t", "dim": 1, "m": [[0,0,0,"1"],[0,0,0,"1"]], "e": [], "delta": [], "eps": [], "tau": "flip"}"#;
        assert!(matches!(instance_from_str(dup), Err(Error::Schema { locator, .. }) if locator == "m[1]"));
        let oob = r#"{"name": "t", "dim": 1, "m": [[0,2,0,"1"]], "e": [], "delta": [], "eps": [], "tau": "flip"}"#;
        assert_eq!(
            instance_from_str(oob).unwrap_err(),
            Error::IndexOutOfRange { locator: "m[0][1]".into(), index: 2, bound: 1 }
        );
        let bad_q = r#"{"name": "t", "dim": 1, "m": [[0,0,0,"1/0"]], "e": [], "delta": [], "eps": [], "tau": "flip"}"#;
        assert!(matches!(instance_from_str(bad_q), Err(Error::Schema { locator, .. }) if locator == "m[0][3]"));
        let unknown = r#"{"name": "t", "dim": 1, "m": [], "e": [], "delta": [], "eps": [], "tau": "flip", "extra": 1}"#;
        assert!(matches!(instance_from_str(unknown), Err(Error::Schema { .. })));
        let token = r#"{"name": "t", "dim": 1, "m": [], "e": [], "delta": [], "eps": [], "tau": "braid"}"#;
        assert!(matches!(instance_from_str(token), Err(Error::Schema { locator, .. }) if locator == "tau"));
    }

    #[test]
    fn non_involutive_tau_needs_tau_prime() {
        let text = r#"{"name": "t", "dim": 1, "m": [], "e": [], "delta": [], "eps": [], "tau": [[0,0,0,0,"2"]]}"#;
        assert!(matches!(instance_from_str(text), Err(Error::Schema { locator, .. }) if locator == "tau_prime"));
    }
}
