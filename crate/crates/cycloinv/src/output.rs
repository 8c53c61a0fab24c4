//! Serializable views of core results and their text renderings.
//!
//! Coefficients are always listed degree-ascending. JSON keys are fixed:
//! `M`, `phi`, `coeffs` / `entries`, `scale`, `norm`, `case`, `checks`.

use std::fmt::Write as _;
use std::ops::Range;

use cycloinv_core::scaled::NormProfile;
use cycloinv_core::{
    Blocks, ExpansionReport, IntPoly, ReductionMatrix, RingElement, ScaledInverse,
};
use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

/// Integers that may outgrow `i64` are written as JSON numbers when they fit
/// and as decimal strings otherwise.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Int {
    Small(i64),
    Big(String),
}

impl From<&BigInt> for Int {
    fn from(v: &BigInt) -> Self {
        i64::try_from(v).map_or_else(|_| Int::Big(v.to_string()), Int::Small)
    }
}

impl std::fmt::Display for Int {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Int::Small(v) => write!(f, "{v}"),
            Int::Big(s) => f.write_str(s),
        }
    }
}

fn ints(v: &[BigInt]) -> Vec<Int> {
    v.iter().map(Int::from).collect()
}

pub fn coeff_list(v: &[BigInt]) -> String {
    v.iter()
        .map(ToString::to_string)
        .collect::<Vec<_>>()
        .join(",")
}

/// Parses `c0,c1,...` (whitespace tolerated, empty list allowed).
pub fn parse_coeff_list(s: &str) -> Result<IntPoly, String> {
    let coeffs = s
        .split(',')
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .map(|t| {
            t.parse::<BigInt>()
                .map_err(|e| format!("bad coefficient {t:?}: {e}"))
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(IntPoly::new(coeffs))
}

#[derive(Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct PolyJson {
    #[serde(rename = "M")]
    pub m: usize,
    pub phi: usize,
    pub coeffs: Vec<Int>,
}

impl PolyJson {
    pub fn new(m: usize, phi: usize, coeffs: &[BigInt]) -> Self {
        Self {
            m,
            phi,
            coeffs: ints(coeffs),
        }
    }
}

#[derive(Debug, Serialize, Deserialize, PartialEq, Eq, Clone)]
pub struct BlocksJson {
    pub identity: [usize; 2],
    pub b1: [usize; 2],
    pub b2: [usize; 2],
    pub b3: [usize; 2],
}

fn pair(r: &Range<usize>) -> [usize; 2] {
    [r.start, r.end]
}

impl From<&Blocks> for BlocksJson {
    fn from(b: &Blocks) -> Self {
        Self {
            identity: pair(&b.identity),
            b1: pair(&b.b1),
            b2: pair(&b.b2),
            b3: pair(&b.b3),
        }
    }
}

#[derive(Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct MatrixJson {
    #[serde(rename = "M")]
    pub m: usize,
    pub phi: usize,
    pub entries: Vec<Vec<i64>>,
    pub blocks: Option<BlocksJson>,
}

impl From<&ReductionMatrix> for MatrixJson {
    fn from(r: &ReductionMatrix) -> Self {
        Self {
            m: r.cols(),
            phi: r.rows(),
            entries: r.to_rows(),
            blocks: r.blocks().map(BlocksJson::from),
        }
    }
}

impl MatrixJson {
    /// Entry-for-entry comparison with an in-memory matrix, blocks included.
    pub fn matches(&self, r: &ReductionMatrix) -> bool {
        self == &MatrixJson::from(r)
    }
}

pub fn matrix_csv(r: &ReductionMatrix) -> String {
    let mut out = String::new();
    for i in 0..r.rows() {
        let row: Vec<String> = r.row(i).iter().map(ToString::to_string).collect();
        out.push_str(&row.join(","));
        out.push('\n');
    }
    out
}

/// Right-aligned grid. With `blocks`, a `|` separates the column groups and
/// a header line names them.
pub fn matrix_pretty(r: &ReductionMatrix, blocks: Option<&Blocks>) -> String {
    let mut out = String::new();
    let cuts: Vec<usize> = blocks
        .map(|b| vec![b.b1.start, b.b2.start, b.b3.start])
        .unwrap_or_default();
    if let Some(b) = blocks {
        let _ = writeln!(
            out,
            "# I = cols {:?}, B1 = cols {:?}, B2 = cols {:?}, B3 = cols {:?}",
            b.identity, b.b1, b.b2, b.b3
        );
    }
    for i in 0..r.rows() {
        let mut line = String::new();
        for (j, e) in r.row(i).iter().enumerate() {
            if cuts.contains(&j) {
                line.push_str(" |");
            }
            let _ = write!(line, "{e:>3}");
        }
        out.push_str(line.trim_start());
        out.push('\n');
    }
    out
}

#[derive(Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct InverseJson {
    pub method: String,
    pub case: String,
    pub scale: Int,
    pub bound: Option<u64>,
    pub norm: Int,
    pub coeffs: Vec<Int>,
}

impl InverseJson {
    pub fn new(method: &str, inv: &ScaledInverse) -> Self {
        Self {
            method: method.to_string(),
            case: inv.case.name().to_string(),
            scale: Int::from(&inv.scale),
            bound: inv.bound,
            norm: Int::from(&inv.norm()),
            coeffs: ints(inv.u.coeffs()),
        }
    }

    pub fn pretty(&self) -> String {
        let coeffs: Vec<String> = self.coeffs.iter().map(ToString::to_string).collect();
        let bound = self
            .bound
            .map_or_else(|| "none".to_string(), |b| b.to_string());
        format!(
            "method: {}\ncase: {}\nscale: {}\nbound: {}\nnorm: {}\ncoeffs: {}\n",
            self.method,
            self.case,
            self.scale,
            bound,
            self.norm,
            coeffs.join(",")
        )
    }
}

#[derive(Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct ScaledInvJson {
    #[serde(rename = "M")]
    pub m: usize,
    pub phi: usize,
    pub i: i64,
    pub j: i64,
    pub results: Vec<InverseJson>,
    /// Present when both methods ran.
    pub agree: Option<bool>,
}

#[derive(Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct ExpansionKJson {
    #[serde(rename = "M")]
    pub m: usize,
    pub phi: usize,
    pub k: i64,
    pub factor: u64,
    pub witness_g: Vec<Int>,
}

impl ExpansionKJson {
    pub fn new(k: i64, factor: u64, g: &RingElement) -> Self {
        Self {
            m: g.modulus().m(),
            phi: g.modulus().phi(),
            k,
            factor,
            witness_g: ints(g.coeffs()),
        }
    }
}

#[derive(Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct ExpansionJson {
    #[serde(rename = "M")]
    pub m: usize,
    pub phi: usize,
    pub per_k: Vec<u64>,
    pub max_factor: u64,
    pub witness_k: i64,
    pub witness_g: Vec<Int>,
}

impl From<&ExpansionReport> for ExpansionJson {
    fn from(r: &ExpansionReport) -> Self {
        Self {
            m: r.m,
            phi: r.witness_g.modulus().phi(),
            per_k: r.per_k.clone(),
            max_factor: r.max_factor,
            witness_k: r.witness_k,
            witness_g: ints(r.witness_g.coeffs()),
        }
    }
}

#[derive(Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct SweepRowJson {
    pub i: i64,
    pub j: i64,
    pub case: String,
    pub scale: Int,
    pub bound: u64,
    pub norm: Int,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub minimal_scale: Option<Int>,
}

#[derive(Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct CaseMaxJson {
    pub case: String,
    pub count: usize,
    pub norm: Int,
    pub witness: [i64; 2],
    pub scale: Int,
}

#[derive(Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct SweepJson {
    #[serde(rename = "M")]
    pub m: usize,
    pub maxima: Vec<CaseMaxJson>,
    pub rows: Vec<SweepRowJson>,
}

impl From<&NormProfile> for SweepJson {
    fn from(p: &NormProfile) -> Self {
        Self {
            m: p.m,
            maxima: p
                .maxima
                .iter()
                .map(|c| CaseMaxJson {
                    case: c.case.name().to_string(),
                    count: c.count,
                    norm: Int::from(&c.max_norm),
                    witness: [c.witness.0, c.witness.1],
                    scale: Int::from(&c.max_scale),
                })
                .collect(),
            rows: p
                .rows
                .iter()
                .map(|r| SweepRowJson {
                    i: r.i,
                    j: r.j,
                    case: r.case.name().to_string(),
                    scale: Int::from(&r.scale),
                    bound: r.bound,
                    norm: Int::from(&r.norm),
                    minimal_scale: r.minimal_scale.as_ref().map(Int::from),
                })
                .collect(),
        }
    }
}

pub fn sweep_csv(p: &NormProfile) -> Result<String, csv::Error> {
    let mut w = csv::Writer::from_writer(Vec::new());
    for row in SweepJson::from(p).rows {
        w.serialize(row)?;
    }
    let bytes = w.into_inner().map_err(|e| e.into_error())?;
    Ok(String::from_utf8(bytes).expect("csv output is UTF-8"))
}

pub fn sweep_summary(p: &NormProfile) -> String {
    let mut out = format!("M = {}, pairs = {}\n", p.m, p.rows.len());
    for c in &p.maxima {
        let bound = p
            .rows
            .iter()
            .find(|r| r.case == c.case)
            .map_or(0, |r| r.bound);
        let _ = writeln!(
            out,
            "{:<16} count={:<6} max_norm={} witness=({}, {}) bound={} scale={}",
            c.case.name(),
            c.count,
            c.max_norm,
            c.witness.0,
            c.witness.1,
            bound,
            c.max_scale
        );
    }
    let mismatches = p.scale_mismatches().count();
    if p.rows.iter().any(|r| r.minimal_scale.is_some()) {
        let _ = writeln!(
            out,
            "pairs with scale above the generic minimum: {mismatches}"
        );
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use cycloinv_core::{make_modulus, reduction_matrix};

    #[test]
    fn big_ints_fall_back_to_strings() {
        let big = BigInt::from(i64::MAX) * 4;
        assert_eq!(Int::from(&big), Int::Big(big.to_string()));
        assert_eq!(Int::from(&BigInt::from(-3)), Int::Small(-3));
        let json = serde_json::to_string(&vec![Int::Small(1), Int::Big("99".into())]).unwrap();
        assert_eq!(json, r#"[1,"99"]"#);
    }

    #[test]
    fn coeff_list_parsing() {
        assert_eq!(
            parse_coeff_list(" 1, -2 ,3").unwrap(),
            IntPoly::from_i64s(&[1, -2, 3])
        );
        assert!(parse_coeff_list("1,x").is_err());
        assert!(parse_coeff_list("").unwrap().is_zero());
    }

    #[test]
    fn matrix_json_round_trip() {
        for m in [7u64, 15, 21, 45] {
            let r = reduction_matrix(&make_modulus(m).unwrap());
            let text = serde_json::to_string(&MatrixJson::from(&r)).unwrap();
            let back: MatrixJson = serde_json::from_str(&text).unwrap();
            assert!(back.matches(&r));
        }
    }

    #[test]
    fn pretty_r7() {
        let r = reduction_matrix(&make_modulus(7).unwrap());
        let text = matrix_pretty(&r, None);
        assert_eq!(text.lines().next().unwrap(), "1  0  0  0  0  0 -1");
        assert_eq!(text.lines().count(), 6);
    }
}
