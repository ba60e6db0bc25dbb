//! Report documents and their JSON, CSV and text renderings.

use std::fmt::Write as _;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::family::{Family, FamilySpec};
use crate::field::{FieldCtx, FiniteField};
use crate::modring::InversePath;
use crate::monomial::Exponent;
use crate::verify::{ScanSummary, VResult, VerifyReport};

pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Csv,
    Text,
}

/// The resolved run parameters, echoed into every report.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RunConfig {
    pub subcommand: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub class: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub p: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub m: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub s: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub modulus_variant: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub d: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub q: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub n: Option<u64>,
    pub format: Format,
    pub max_q: u64,
    pub workers: usize,
    pub scan: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct FieldInfo {
    pub p: u32,
    pub m: u32,
    pub q: u64,
    pub base_modulus: Vec<u32>,
    pub top_modulus: Vec<Vec<u32>>,
}

impl FieldInfo {
    pub fn of(ctx: &FieldCtx) -> Self {
        Self {
            p: ctx.p(),
            m: ctx.m(),
            q: ctx.q(),
            base_modulus: ctx.base_modulus(),
            top_modulus: ctx.encode_top_modulus(),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct FamilyInfo {
    #[serde(flatten)]
    pub spec: FamilySpec,
    pub d: Exponent,
    pub inverse_e: Exponent,
    pub inverse_path: InversePath,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub inverse_formula: Option<&'static str>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub inverse_integer_value: Option<String>,
}

impl FamilyInfo {
    pub fn of(family: &Family) -> Self {
        let inv = family.inverse();
        Self {
            spec: *family.spec(),
            d: Exponent::new(family.d().clone()),
            inverse_e: family.inverse_exponent(),
            inverse_path: inv.path,
            inverse_formula: inv.formula,
            inverse_integer_value: inv.integer_value.as_ref().map(|x| x.to_string()),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct VerifySummary {
    pub count: usize,
    pub expected_count: u64,
    pub all_pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub first_failure: Option<Vec<Vec<u32>>>,
    pub elapsed_ms: u64,
}

#[derive(Debug, Clone, Serialize)]
pub struct VerifyDocument {
    pub version: &'static str,
    pub config: RunConfig,
    pub field: FieldInfo,
    pub family: FamilyInfo,
    pub results: Vec<VResult>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub scan: Option<ScanSummary>,
    pub summary: VerifySummary,
}

impl VerifyDocument {
    pub fn new(config: RunConfig, ctx: &FieldCtx, family: &Family, report: VerifyReport) -> Self {
        let first_failure = report.first_failure.map(|i| ctx.encode(ctx.element(i)));
        Self {
            version: TOOL_VERSION,
            config,
            field: FieldInfo::of(ctx),
            family: FamilyInfo::of(family),
            summary: VerifySummary {
                count: report.count,
                expected_count: report.expected_count,
                all_pass: report.all_pass,
                first_failure,
                elapsed_ms: report.elapsed_ms,
            },
            results: report.results,
            scan: report.scan,
        }
    }

    pub fn render(&self, format: Format) -> Result<String> {
        match format {
            Format::Json => to_json(self),
            Format::Csv => {
                let rows = self.results.iter().map(|r| {
                    vec![
                        r.v_index.to_string(),
                        encode_compact(&r.v),
                        r.is_pp.to_string(),
                        r.is_cpp.to_string(),
                        r.composition_ok.to_string(),
                        r.char_sum_ok.to_string(),
                        r.wan_ok.map_or(String::new(), |b| b.to_string()),
                        r.inverse_is_cpp.to_string(),
                        r.forward_exponent.to_string(),
                        r.inverse_exponent.to_string(),
                        r.inverse_path.to_string(),
                    ]
                });
                to_csv(
                    &[
                        "v_index",
                        "v",
                        "is_pp",
                        "is_cpp",
                        "composition_ok",
                        "char_sum_ok",
                        "wan_ok",
                        "inverse_is_cpp",
                        "forward_exponent",
                        "inverse_exponent",
                        "inverse_path",
                    ],
                    rows,
                )
            }
            Format::Text => {
                let mut s = String::new();
                let f = &self.family;
                let _ = writeln!(
                    s,
                    "{} p={} m={}{} modulus={} q={}",
                    f.spec.class,
                    self.field.p,
                    self.field.m,
                    f.spec.s.map_or(String::new(), |s| format!(" s={s}")),
                    f.spec.modulus,
                    self.field.q
                );
                let _ = writeln!(s, "d = {}  inverse e = {} ({})", f.d, f.inverse_e, f.inverse_path);
                for r in &self.results {
                    let _ = writeln!(
                        s,
                        "v={} {}",
                        encode_compact(&r.v),
                        if r.passed() { "ok" } else { "FAIL" }
                    );
                }
                if let Some(scan) = &self.scan {
                    let _ = writeln!(
                        s,
                        "scan: {} complete v, contains admissible set: {}, equal: {}",
                        scan.count, scan.superset_ok, scan.equal
                    );
                }
                let _ = writeln!(
                    s,
                    "{} / {} admissible v checked, {}",
                    self.summary.count,
                    self.summary.expected_count,
                    if self.summary.all_pass { "all pass" } else { "FAILED" }
                );
                Ok(s)
            }
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct EnumerateRow {
    pub v: Vec<Vec<u32>>,
    pub v_index: u64,
    pub forward_exponent: Exponent,
    pub inverse_exponent: Exponent,
    pub inverse_path: InversePath,
}

#[derive(Debug, Clone, Serialize)]
pub struct EnumerateDocument {
    pub version: &'static str,
    pub config: RunConfig,
    pub field: FieldInfo,
    pub family: FamilyInfo,
    pub rows: Vec<EnumerateRow>,
    pub count: usize,
}

impl EnumerateDocument {
    pub fn render(&self, format: Format) -> Result<String> {
        match format {
            Format::Json => to_json(self),
            Format::Csv => to_csv(
                &["v_index", "v", "forward_exponent", "inverse_exponent", "inverse_path"],
                self.rows.iter().map(|r| {
                    vec![
                        r.v_index.to_string(),
                        encode_compact(&r.v),
                        r.forward_exponent.to_string(),
                        r.inverse_exponent.to_string(),
                        r.inverse_path.to_string(),
                    ]
                }),
            ),
            Format::Text => Ok(self
                .rows
                .iter()
                .map(|r| {
                    format!(
                        "{} d={} e={} ({})\n",
                        encode_compact(&r.v),
                        r.forward_exponent,
                        r.inverse_exponent,
                        r.inverse_path
                    )
                })
                .collect()),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct InverseDocument {
    pub version: &'static str,
    pub config: RunConfig,
    pub d: Exponent,
    pub modulus: Exponent,
    pub inverse_e: Exponent,
    pub inverse_path: InversePath,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub formula: Option<&'static str>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub integer_value: Option<String>,
}

impl InverseDocument {
    pub fn render(&self, format: Format) -> Result<String> {
        match format {
            Format::Json => to_json(self),
            Format::Csv => to_csv(
                &["d", "modulus", "inverse_e", "inverse_path", "formula", "integer_value"],
                std::iter::once(vec![
                    self.d.to_string(),
                    self.modulus.to_string(),
                    self.inverse_e.to_string(),
                    self.inverse_path.to_string(),
                    self.formula.unwrap_or("").to_string(),
                    self.integer_value.clone().unwrap_or_default(),
                ]),
            ),
            Format::Text => {
                let mut s = format!("{} ({})\n", self.inverse_e, self.inverse_path);
                if let Some(f) = self.formula {
                    let raw = self.integer_value.as_deref().unwrap_or("-");
                    let _ = writeln!(s, "closed form {f} = {raw}");
                }
                Ok(s)
            }
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct ScanDocument {
    pub version: &'static str,
    pub config: RunConfig,
    pub field: FieldInfo,
    pub d: Exponent,
    pub hits: Vec<Vec<Vec<u32>>>,
    pub count: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub admissible_count: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub superset_ok: Option<bool>,
}

impl ScanDocument {
    pub fn render(&self, format: Format) -> Result<String> {
        match format {
            Format::Json => to_json(self),
            Format::Csv => to_csv(&["v"], self.hits.iter().map(|v| vec![encode_compact(v)])),
            Format::Text => {
                let mut s: String = self.hits.iter().map(|v| encode_compact(v) + "\n").collect();
                let _ = writeln!(s, "{} complete v for d = {}", self.count, self.d);
                if let Some(ok) = self.superset_ok {
                    let _ = writeln!(s, "contains admissible set: {ok}");
                }
                Ok(s)
            }
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct DicksonDocument {
    pub version: &'static str,
    pub config: RunConfig,
    pub n: u64,
    pub p: u32,
    /// `D_n = sum coeff * a^a_power * x^x_power` over `F_p`.
    pub terms: Vec<crate::dickson::DicksonTerm>,
    pub integer_coefficients: Vec<String>,
    pub recurrence_agrees: bool,
    pub reversed_fraction_agrees: bool,
    pub note: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub q: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub is_pp: Option<bool>,
}

pub const DICKSON_NOTE: &str = "coefficient of (-a)^i x^(n-2i) is n/(n-i)*C(n-i,i); \
the reversed fraction (n-i)/n*C(n-i,i) disagrees with the recurrence for every n >= 2";

impl DicksonDocument {
    pub fn render(&self, format: Format) -> Result<String> {
        match format {
            Format::Json => to_json(self),
            Format::Csv => to_csv(
                &["a_power", "x_power", "coeff"],
                self.terms.iter().map(|t| {
                    vec![t.a_power.to_string(), t.x_power.to_string(), t.coeff.to_string()]
                }),
            ),
            Format::Text => {
                let poly: Vec<String> = self
                    .terms
                    .iter()
                    .map(|t| format!("{}*a^{}*x^{}", t.coeff, t.a_power, t.x_power))
                    .collect();
                let mut s = format!("D_{} over F_{} = {}\n", self.n, self.p, poly.join(" + "));
                let _ = writeln!(s, "recurrence agrees: {}", self.recurrence_agrees);
                let _ = writeln!(s, "{}", self.note);
                if let (Some(q), Some(pp)) = (self.q, self.is_pp) {
                    let _ = writeln!(s, "permutes F_{q}: {pp}");
                }
                Ok(s)
            }
        }
    }
}

/// `[[1,0],[2,1]]` style encoding without whitespace.
pub fn encode_compact(v: &[Vec<u32>]) -> String {
    serde_json::to_string(v).expect("integer arrays serialize")
}

fn to_json<T: Serialize>(doc: &T) -> Result<String> {
    let mut s = serde_json::to_string_pretty(doc)
        .map_err(|e| Error::InternalInvariant(format!("json: {e}")))?;
    s.push('\n');
    Ok(s)
}

fn to_csv<I: IntoIterator<Item = Vec<String>>>(header: &[&str], rows: I) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    let io = |e: csv::Error| Error::InternalInvariant(format!("csv: {e}"));
    w.write_record(header).map_err(io)?;
    for row in rows {
        w.write_record(&row).map_err(io)?;
    }
    let bytes = w
        .into_inner()
        .map_err(|e| Error::InternalInvariant(format!("csv: {e}")))?;
    String::from_utf8(bytes).map_err(|e| Error::InternalInvariant(format!("csv: {e}")))
}
