//! Machine- and human-readable certificates, plus the JSON file formats the
//! command-line front end consumes.
//!
//! Interval endpoints are serialized as shortest round-trip decimal strings,
//! so a certificate read back yields exactly the in-memory endpoints and
//! stays rigorous. The `pretty` fields use the compact midpoint-plus-bracket
//! style (`5.56625+[46,81]e-7`); they are a display aid, the raw endpoint
//! strings are authoritative.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::bench::{run_bench, BenchConfig, BenchReport};
use crate::complex::CInterval;
use crate::cone::{verify_all, verify_one, DominanceReport, VerifyConfig, VerifyResult};
use crate::interval::Interval;
use crate::linalg::{CMatrix, IMatrix};
use crate::polyroot::{enclose_roots, normalize, RootResult};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum FileError {
    #[error("malformed JSON: {0}")]
    Json(String),
    #[error("{0}")]
    Schema(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OutputFormat {
    Json,
    Text,
}

// ---------------------------------------------------------------------------
// Input files

#[derive(Deserialize)]
#[serde(untagged)]
enum NumOrStr {
    Num(f64),
    Str(String),
}

impl NumOrStr {
    fn to_interval(&self) -> Result<Interval, FileError> {
        match self {
            NumOrStr::Num(x) => {
                if !x.is_finite() {
                    return Err(FileError::Schema(format!("non-finite entry {x}")));
                }
                Ok(Interval::point(*x))
            }
            NumOrStr::Str(s) => Interval::from_decimal_str(s)
                .map_err(|e| FileError::Schema(e.to_string())),
        }
    }

    fn to_f64(&self) -> Result<f64, FileError> {
        match self {
            NumOrStr::Num(x) if x.is_finite() => Ok(*x),
            NumOrStr::Num(x) => Err(FileError::Schema(format!("non-finite entry {x}"))),
            NumOrStr::Str(s) => s
                .trim()
                .parse::<f64>()
                .ok()
                .filter(|x| x.is_finite())
                .ok_or_else(|| FileError::Schema(format!("cannot parse {s:?} as a number"))),
        }
    }
}

#[derive(Deserialize)]
#[serde(untagged)]
enum EntryRepr {
    Complex { re: NumOrStr, im: NumOrStr },
    Real(NumOrStr),
}

impl EntryRepr {
    fn to_cinterval(&self) -> Result<CInterval, FileError> {
        match self {
            EntryRepr::Complex { re, im } => {
                Ok(CInterval::new(re.to_interval()?, im.to_interval()?))
            }
            EntryRepr::Real(x) => Ok(CInterval::new(x.to_interval()?, Interval::ZERO)),
        }
    }

    fn to_complex(&self) -> Result<Complex64, FileError> {
        match self {
            EntryRepr::Complex { re, im } => Ok(Complex64::new(re.to_f64()?, im.to_f64()?)),
            EntryRepr::Real(x) => Ok(Complex64::new(x.to_f64()?, 0.0)),
        }
    }
}

#[derive(Deserialize)]
struct MatrixFile {
    n: usize,
    entries: Vec<Vec<EntryRepr>>,
}

/// Parses `{"n": N, "entries": [[{"re": .., "im": ..} | number, ..], ..]}`.
/// String values are hulled as exact decimals, numbers as points.
pub fn parse_matrix_json(text: &str) -> Result<IMatrix, FileError> {
    let file: MatrixFile =
        serde_json::from_str(text).map_err(|e| FileError::Json(e.to_string()))?;
    if file.entries.len() != file.n {
        return Err(FileError::Schema(format!(
            "declared n = {} but found {} rows",
            file.n,
            file.entries.len()
        )));
    }
    let mut rows = Vec::with_capacity(file.n);
    for (i, row) in file.entries.iter().enumerate() {
        if row.len() != file.n {
            return Err(FileError::Schema(format!(
                "row {} has {} entries, expected {}",
                i,
                row.len(),
                file.n
            )));
        }
        let mut parsed = Vec::with_capacity(file.n);
        for entry in row {
            parsed.push(entry.to_cinterval()?);
        }
        rows.push(parsed);
    }
    Ok(IMatrix::from_fn(file.n, file.n, |i, j| rows[i][j]))
}

/// Serializes a point matrix with exact round-trip numbers.
pub fn matrix_to_json(m: &CMatrix) -> String {
    let entries: Vec<Vec<serde_json::Value>> = (0..m.rows())
        .map(|i| {
            (0..m.cols())
                .map(|j| {
                    serde_json::json!({
                        "re": m[(i, j)].re,
                        "im": m[(i, j)].im,
                    })
                })
                .collect()
        })
        .collect();
    serde_json::to_string_pretty(&serde_json::json!({
        "n": m.rows(),
        "entries": entries,
    }))
    .expect("matrix serialization cannot fail")
}

/// Parses a coefficient array ordered constant-first:
/// `[{"re": -8, "im": 0}, ..]` (bare numbers mean real coefficients).
pub fn parse_poly_json(text: &str) -> Result<Vec<Complex64>, FileError> {
    let raw: Vec<EntryRepr> =
        serde_json::from_str(text).map_err(|e| FileError::Json(e.to_string()))?;
    raw.iter().map(EntryRepr::to_complex).collect()
}

/// FNV-1a 64 digest of the raw input bytes; ties a certificate to its input.
pub fn input_digest(bytes: &[u8]) -> String {
    let mut h: u64 = 0xcbf2_9ce4_8422_2325;
    for &b in bytes {
        h ^= b as u64;
        h = h.wrapping_mul(0x0000_0100_0000_01b3);
    }
    format!("fnv1a64:{h:016x}")
}

// ---------------------------------------------------------------------------
// Pretty printing

/// Splits a finite f64 into `(mantissa, exponent)` with 25 significant
/// decimal digits: `x ~ mantissa * 10^exponent`.
fn decimal_parts(x: f64) -> (i128, i32) {
    let s = format!("{:.24e}", x);
    let (mant_str, exp_str) = s.split_once('e').expect("exponent always present");
    let exp: i32 = exp_str.parse().expect("exponent parses");
    let neg = mant_str.starts_with('-');
    let digits: String = mant_str.chars().filter(|c| c.is_ascii_digit()).collect();
    let mut mant: i128 = digits.parse().expect("25 digits fit in i128");
    if neg {
        mant = -mant;
    }
    (mant, exp - 24)
}

fn floor_div(a: i128, b: i128) -> i128 {
    let q = a / b;
    if a % b != 0 && (a < 0) != (b < 0) {
        q - 1
    } else {
        q
    }
}

fn ceil_div(a: i128, b: i128) -> i128 {
    let q = a / b;
    if a % b != 0 && (a < 0) == (b < 0) {
        q + 1
    } else {
        q
    }
}

/// Exact decimal string of `mant * 10^exp` with trailing zeros trimmed.
fn decimal_string(mant: i128, exp: i32) -> String {
    if mant == 0 {
        return "0".to_string();
    }
    let neg = mant < 0;
    let digits = mant.unsigned_abs().to_string();
    let mut out = String::new();
    if neg {
        out.push('-');
    }
    if exp >= 0 {
        out.push_str(&digits);
        out.push_str(&"0".repeat(exp as usize));
    } else {
        let frac_len = (-exp) as usize;
        if digits.len() > frac_len {
            let (int_part, frac_part) = digits.split_at(digits.len() - frac_len);
            out.push_str(int_part);
            let frac_part = frac_part.trim_end_matches('0');
            if !frac_part.is_empty() {
                out.push('.');
                out.push_str(frac_part);
            }
        } else {
            out.push_str("0.");
            out.push_str(&"0".repeat(frac_len - digits.len()));
            out.push_str(digits.trim_end_matches('0'));
        }
    }
    out
}

/// Midpoint-plus-bracket rendering: `5.56625+[46, 81]e-7` reads as the
/// decimal prefix plus a two-digit remainder range at the given scale.
pub fn pretty_interval(iv: &Interval) -> String {
    let (lo, hi) = (iv.lo(), iv.hi());
    if lo == hi {
        return format!("{lo}");
    }
    if !lo.is_finite() || !hi.is_finite() {
        return format!("[{lo}, {hi}]");
    }
    let (mlo, elo) = decimal_parts(lo);
    let (mhi, ehi) = decimal_parts(hi);
    let e = elo.min(ehi);
    let shift_lo = (elo - e) as u32;
    let shift_hi = (ehi - e) as u32;
    if shift_lo > 12 || shift_hi > 12 {
        return format!("[{lo}, {hi}]");
    }
    let v_lo = mlo * 10i128.pow(shift_lo);
    let v_hi = mhi * 10i128.pow(shift_hi);

    let mut t: u32 = 0;
    loop {
        let unit = 10i128.pow(t);
        let u_lo = floor_div(v_lo, unit);
        let u_hi = ceil_div(v_hi, unit);
        if u_hi - u_lo <= 99 {
            let mid = (u_lo + u_hi) / 2;
            let anchor = (mid / 100) * 100;
            let r_lo = u_lo - anchor;
            let r_hi = u_hi - anchor;
            let scale = e + t as i32;
            let bracket = format!("[{r_lo}, {r_hi}]e{scale}");
            return if anchor == 0 {
                bracket
            } else {
                format!("{}+{}", decimal_string(anchor, scale), bracket)
            };
        }
        t += 1;
    }
}

pub fn pretty_cinterval(z: &CInterval) -> String {
    let re = pretty_interval(&z.re);
    if z.im == Interval::ZERO {
        return re;
    }
    format!("{} + ({})i", re, pretty_interval(&z.im))
}

// ---------------------------------------------------------------------------
// Certificate documents

#[derive(Debug, Clone, Serialize)]
pub struct IntervalRepr {
    pub lo: String,
    pub hi: String,
}

impl IntervalRepr {
    fn of(iv: &Interval) -> Self {
        IntervalRepr {
            lo: format!("{}", iv.lo()),
            hi: format!("{}", iv.hi()),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct BoxRepr {
    pub re: IntervalRepr,
    pub im: IntervalRepr,
    pub pretty: String,
}

impl BoxRepr {
    fn of(z: &CInterval) -> Self {
        BoxRepr {
            re: IntervalRepr::of(&z.re),
            im: IntervalRepr::of(&z.im),
            pretty: pretty_cinterval(z),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct PointRepr {
    pub re: f64,
    pub im: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct ConfigEcho {
    pub eps_start: f64,
    pub eps_min: f64,
    pub eps_max: f64,
    pub factor: f64,
    pub refine: bool,
    pub tighten_value: bool,
    pub residual_target: f64,
    pub seed: u64,
    pub threads: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub k: Option<usize>,
}

impl ConfigEcho {
    fn of(cfg: &VerifyConfig, k: Option<usize>) -> Self {
        ConfigEcho {
            eps_start: cfg.search.eps_start,
            eps_min: cfg.search.eps_min,
            eps_max: cfg.search.eps_max,
            factor: cfg.search.factor,
            refine: cfg.search.refine,
            tighten_value: cfg.search.tighten_value,
            residual_target: cfg.solver.residual_target,
            seed: cfg.solver.seed,
            threads: cfg.threads,
            k,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct ResultRecord {
    pub k: usize,
    pub status: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub epsilon: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub value: Option<BoxRepr>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub vector: Option<Vec<BoxRepr>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub report: Option<DominanceReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub lambda_tilde: Option<PointRepr>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub residual: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reason: Option<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct CertificateDocument {
    pub tool: String,
    pub version: String,
    pub command: String,
    pub input_digest: String,
    pub config: ConfigEcho,
    pub all_verified: bool,
    pub results: Vec<ResultRecord>,
}

fn eig_record(res: &VerifyResult) -> ResultRecord {
    match res {
        Ok(enc) => ResultRecord {
            k: enc.k,
            status: "verified".to_string(),
            epsilon: Some(enc.epsilon),
            value: Some(BoxRepr::of(&enc.value)),
            vector: Some(enc.vector.entries().iter().map(BoxRepr::of).collect()),
            report: Some(enc.report),
            lambda_tilde: Some(PointRepr {
                re: enc.basis.lambda_tilde.re,
                im: enc.basis.lambda_tilde.im,
            }),
            residual: Some(enc.basis.residual),
            reason: None,
        },
        Err(fail) => ResultRecord {
            k: fail.k,
            status: "failed".to_string(),
            epsilon: None,
            value: None,
            vector: None,
            report: None,
            lambda_tilde: None,
            residual: None,
            reason: Some(fail.reason.to_string()),
        },
    }
}

fn root_record(res: &RootResult) -> ResultRecord {
    match res {
        Ok(enc) => ResultRecord {
            k: enc.k,
            status: "verified".to_string(),
            epsilon: Some(enc.epsilon),
            value: Some(BoxRepr::of(&enc.root)),
            vector: None,
            report: Some(enc.report),
            lambda_tilde: None,
            residual: None,
            reason: None,
        },
        Err(fail) => ResultRecord {
            k: fail.k,
            status: "failed".to_string(),
            epsilon: None,
            value: None,
            vector: None,
            report: None,
            lambda_tilde: None,
            residual: None,
            reason: Some(fail.reason.to_string()),
        },
    }
}

fn render(doc: &CertificateDocument, format: OutputFormat) -> String {
    match format {
        OutputFormat::Json => {
            serde_json::to_string_pretty(doc).expect("certificate serialization cannot fail")
        }
        OutputFormat::Text => render_text(doc),
    }
}

fn render_text(doc: &CertificateDocument) -> String {
    use std::fmt::Write;
    let mut out = String::new();
    let _ = writeln!(
        out,
        "{} {} {} certificate  (input {})",
        doc.tool, doc.version, doc.command, doc.input_digest
    );
    let c = &doc.config;
    let _ = writeln!(
        out,
        "eps grid: start {:e}, min {:e}, max {:e}, factor {:e}, refine {}, tighten {}",
        c.eps_start, c.eps_min, c.eps_max, c.factor, c.refine, c.tighten_value
    );
    for r in &doc.results {
        match r.status.as_str() {
            "verified" => {
                let _ = writeln!(
                    out,
                    "k = {:<2} verified  eps = {:.3e}",
                    r.k,
                    r.epsilon.unwrap_or(f64::NAN)
                );
                if let Some(value) = &r.value {
                    let _ = writeln!(out, "    value  {}", value.pretty);
                    let _ = writeln!(
                        out,
                        "           re [{}, {}]  im [{}, {}]",
                        value.re.lo, value.re.hi, value.im.lo, value.im.hi
                    );
                }
                if let Some(rep) = &r.report {
                    let _ = writeln!(
                        out,
                        "    check  lhs {:.6e} < {:.6e} = recip - cross  (co {:.6e}, ex {:.6e})",
                        rep.lhs,
                        rep.inv_norm_recip - rep.cross,
                        rep.co_bound,
                        rep.ex_bound
                    );
                }
                if let Some(vector) = &r.vector {
                    let _ = writeln!(out, "    vector");
                    for (i, comp) in vector.iter().enumerate() {
                        let _ = writeln!(out, "      [{i}] {}", comp.pretty);
                    }
                }
            }
            _ => {
                let _ = writeln!(
                    out,
                    "k = {:<2} FAILED    {}",
                    r.k,
                    r.reason.as_deref().unwrap_or("unknown")
                );
            }
        }
    }
    let _ = writeln!(
        out,
        "{}",
        if doc.all_verified {
            "all requested indices verified"
        } else {
            "verification incomplete"
        }
    );
    out
}

// ---------------------------------------------------------------------------
// Commands (the thin binary delegates here)

pub struct CommandOutput {
    pub rendered: String,
    pub all_verified: bool,
}

pub struct EigOptions {
    pub k: Option<usize>,
    pub format: OutputFormat,
    pub verify: VerifyConfig,
}

pub fn cmd_eig(input: &str, opts: &EigOptions) -> Result<CommandOutput, FileError> {
    let matrix = parse_matrix_json(input)?;
    let results = match opts.k {
        Some(k) => {
            if k >= matrix.rows() {
                return Err(FileError::Schema(format!(
                    "--k {} out of range for a {}x{} matrix",
                    k,
                    matrix.rows(),
                    matrix.cols()
                )));
            }
            vec![verify_one(&matrix, k, &opts.verify)]
        }
        None => verify_all(&matrix, &opts.verify),
    };
    let all_verified = results.iter().all(Result::is_ok);
    let doc = CertificateDocument {
        tool: "coneig".to_string(),
        version: env!("CARGO_PKG_VERSION").to_string(),
        command: "eig".to_string(),
        input_digest: input_digest(input.as_bytes()),
        config: ConfigEcho::of(&opts.verify, opts.k),
        all_verified,
        results: results.iter().map(eig_record).collect(),
    };
    Ok(CommandOutput {
        rendered: render(&doc, opts.format),
        all_verified,
    })
}

pub fn cmd_roots(input: &str, opts: &EigOptions) -> Result<CommandOutput, FileError> {
    let raw = parse_poly_json(input)?;
    let poly = normalize(&raw, false).map_err(|e| FileError::Schema(e.to_string()))?;
    let mut results = enclose_roots(&poly, &opts.verify);
    if let Some(k) = opts.k {
        if k >= results.len() {
            return Err(FileError::Schema(format!(
                "--k {} out of range for a degree-{} polynomial",
                k,
                poly.degree()
            )));
        }
        results = vec![results.into_iter().nth(k).unwrap()];
    }
    let all_verified = results.iter().all(Result::is_ok);
    let doc = CertificateDocument {
        tool: "coneig".to_string(),
        version: env!("CARGO_PKG_VERSION").to_string(),
        command: "roots".to_string(),
        input_digest: input_digest(input.as_bytes()),
        config: ConfigEcho::of(&opts.verify, opts.k),
        all_verified,
        results: results.iter().map(root_record).collect(),
    };
    Ok(CommandOutput {
        rendered: render(&doc, opts.format),
        all_verified,
    })
}

pub fn cmd_bench(cfg: &BenchConfig, format: OutputFormat) -> (String, BenchReport) {
    let report = run_bench(cfg);
    let rendered = match format {
        OutputFormat::Json => {
            serde_json::to_string_pretty(&report).expect("report serialization cannot fail")
        }
        OutputFormat::Text => {
            use std::fmt::Write;
            let mut out = String::new();
            let _ = writeln!(
                out,
                "bench: count {}  size {}  range {}  seed {}",
                report.count, report.size, report.range, report.seed
            );
            let _ = writeln!(
                out,
                "matrices verified {} / {}   pairs verified {}, failed {}",
                report.verified_matrices, report.count, report.verified_pairs, report.failed_pairs
            );
            match &report.epsilon {
                Some(e) => {
                    let _ = writeln!(
                        out,
                        "epsilon: min {:.3e}  q1 {:.3e}  median {:.3e}  q3 {:.3e}  max {:.3e}",
                        e.min, e.q1, e.median, e.q3, e.max
                    );
                }
                None => {
                    let _ = writeln!(out, "epsilon: no verified pairs");
                }
            }
            out
        }
    };
    (rendered, report)
}
