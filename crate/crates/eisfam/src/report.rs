//! Machine-readable reports: JSON and CSV serialization of tables, Katz
//! expansions and bound reports. Reports embed the run configuration and the
//! exact constants used, and are deterministic for a fixed configuration.

use crate::arith::{rat_display, rat_to_json, vp_rat, ValOrBound};
use crate::family::{BoundReport, CounterexampleReport, FamilyTable, NewtonSlopes, ReductionReport};
use crate::forms::KatzExpansion;
use crate::qexp::QSeries;
use crate::ring::RatField;
use crate::Rat;
use num_traits::Zero;
use serde::Serialize;

/// Full configuration of a run; embedded into every report so that tables are
/// self-describing and byte-reproducible.
#[derive(Debug, Clone, Serialize)]
pub struct RunConfig {
    pub p: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub q_precision: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub w_degree: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub padic_precision: Option<i64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub katz_depth: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub basis: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
}

impl RunConfig {
    pub fn new(p: u64) -> Self {
        RunConfig {
            p,
            q_precision: None,
            w_degree: None,
            padic_precision: None,
            katz_depth: None,
            basis: None,
            seed: None,
        }
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).unwrap()
    }
}

/// `{"prec": N, "coeffs": ["a/b", ...]}` for an exact rational q-expansion.
pub fn qseries_to_json(s: &QSeries<RatField>) -> serde_json::Value {
    serde_json::json!({
        "prec": s.prec(),
        "coeffs": s.coeffs().iter().map(rat_display).collect::<Vec<_>>(),
    })
}

/// Katz expansion with exact rational coordinates:
/// `{"p", "depth", "blocks": [{"i", "coords", "val"}]}`.
pub fn katz_to_json(p: u64, x: &KatzExpansion<Rat>) -> serde_json::Value {
    let blocks: Vec<serde_json::Value> = x
        .blocks
        .iter()
        .map(|b| {
            let val = crate::family::FamilyTable::cell_valuation(
                &b.coords
                    .iter()
                    .map(|c| crate::arith::PAdicNumber::from_rat(p, c, 64))
                    .collect::<Vec<_>>(),
            );
            let exact_val = {
                let mut best: Option<Rat> = None;
                for c in &b.coords {
                    if let Some(v) = vp_rat(c, p) {
                        let v = Rat::from_integer(v.into());
                        best = Some(match best.take() {
                            Some(b) if b <= v => b,
                            _ => v,
                        });
                    }
                }
                best
            };
            serde_json::json!({
                "i": b.i,
                "j_start": b.j_start,
                "coords": b.coords.iter().map(rat_display).collect::<Vec<_>>(),
                "val": match exact_val {
                    Some(v) => rat_to_json(&v),
                    None => ValOrBound::Infinite.to_json(),
                },
                "val_bound": val.to_json(),
            })
        })
        .collect();
    serde_json::json!({ "p": p, "depth": x.blocks.len().saturating_sub(1), "blocks": blocks })
}

pub fn table_to_json(t: &FamilyTable, config: &RunConfig) -> serde_json::Value {
    let rows: Vec<serde_json::Value> = t
        .rows
        .iter()
        .map(|r| {
            serde_json::json!({
                "index": r.index,
                "j_start": r.j_start,
                "entries": r.entries.iter().map(|e| {
                    e.iter().map(|c| c.to_json()).collect::<Vec<_>>()
                }).collect::<Vec<_>>(),
            })
        })
        .collect();
    serde_json::json!({
        "p": t.p,
        "basis": t.basis.as_str(),
        "w_degree": t.w_degree,
        "rows": rows,
        "config": config.to_json(),
    })
}

/// Parse a [`table_to_json`] document back into a table.
pub fn table_from_json(v: &serde_json::Value) -> crate::Result<FamilyTable> {
    use crate::family::{BasisTag, FamilyRow};
    let bad = |m: &str| crate::Error::BadConfig(format!("table json: {m}"));
    let p = v["p"].as_u64().ok_or_else(|| bad("missing p"))?;
    let basis = match v["basis"].as_str() {
        Some("q") => BasisTag::Q,
        Some("katz") => BasisTag::Katz,
        Some("hauptmodul") => BasisTag::Hauptmodul,
        _ => return Err(bad("unknown basis")),
    };
    let w_degree = v["w_degree"].as_u64().ok_or_else(|| bad("missing w_degree"))? as usize;
    let mut rows = Vec::new();
    for r in v["rows"].as_array().ok_or_else(|| bad("missing rows"))? {
        let index = r["index"].as_u64().ok_or_else(|| bad("missing index"))?;
        let j_start = r["j_start"].as_u64().unwrap_or(0) as usize;
        let mut entries = Vec::new();
        for e in r["entries"].as_array().ok_or_else(|| bad("missing entries"))? {
            let coords = e
                .as_array()
                .ok_or_else(|| bad("entry is not a coordinate list"))?
                .iter()
                .map(crate::arith::PAdicNumber::from_json)
                .collect::<crate::Result<Vec<_>>>()?;
            entries.push(coords);
        }
        rows.push(FamilyRow { index, j_start, entries });
    }
    Ok(FamilyTable { p, basis, w_degree, rows })
}

/// CSV valuation table: one line per row index, columns j, cells `v` or
/// `>=P` for entries only bounded by their precision.
pub fn table_to_csv(t: &FamilyTable) -> String {
    let mut out = String::new();
    out.push_str("index");
    for j in 0..t.w_degree {
        out.push_str(&format!(",j{j}"));
    }
    out.push('\n');
    for (index, cells) in t.valuation_rows() {
        out.push_str(&index.to_string());
        for c in cells {
            out.push(',');
            out.push_str(&c.to_csv_cell());
        }
        out.push('\n');
    }
    out
}

pub fn bound_report_to_json(r: &BoundReport, config: &RunConfig) -> serde_json::Value {
    serde_json::json!({
        "constant_label": r.label,
        "constant": rat_to_json(&r.constant),
        "effective_constant": rat_to_json(&r.effective_constant),
        "checked": r.checked,
        "undetermined": r.undetermined,
        "violations": r.violations.iter().map(|v| serde_json::json!({
            "row": v.row,
            "col": v.col,
            "coord": v.coord,
            "observed": v.observed.to_json(),
            "required": rat_to_json(&v.required),
        })).collect::<Vec<_>>(),
        "empirical_profile": r.empirical_profile.as_ref().map(rat_to_json),
        "config": config.to_json(),
    })
}

pub fn counterexample_to_json(r: &CounterexampleReport, config: &RunConfig) -> serde_json::Value {
    serde_json::json!({
        "p": r.p,
        "kappa": format!("x^{} chi", r.k0),
        "chi_images": r.chi_images,
        "v_w": rat_to_json(&r.w_valuation),
        "u_valuations": r.u_valuations.iter().map(|v| v.to_json()).collect::<Vec<_>>(),
        "v_5(a_10)": rat_to_json(&r.observed),
        "required_if_c_were_1": rat_to_json(&r.required_if_c_were_1),
        "refutes_c_equals_1": r.refutes,
        "config": config.to_json(),
    })
}

pub fn reduction_to_json(r: &ReductionReport, config: &RunConfig) -> serde_json::Value {
    serde_json::json!({
        "p": r.p,
        "k0": r.k0,
        "gamma": rat_to_json(&r.gamma),
        "v_w": rat_to_json(&r.w_valuation),
        "residues": r.residues,
        "u_valuations": r.u_valuations.iter().map(|v| match v {
            Some(v) => rat_to_json(v),
            None => serde_json::json!({ "infinite": true }),
        }).collect::<Vec<_>>(),
        "positivity_failures": r.positivity_failures,
        "empirical_exponent": r.empirical_exponent.as_ref().map(rat_to_json),
        "config": config.to_json(),
    })
}

pub fn slopes_to_json(s: &NewtonSlopes) -> serde_json::Value {
    serde_json::json!({
        "slopes": s.slopes.iter().map(|(v, m)| serde_json::json!({
            "valuation": rat_to_json(v),
            "multiplicity": m,
        })).collect::<Vec<_>>(),
        "infinite": s.infinite,
        "note": "slopes are trustworthy only within the truncation size; entries beyond it may perturb large slopes",
    })
}

/// Matrix of exact rationals as nested display strings with a valuation table.
pub fn rational_matrix_to_json(p: u64, m: &[Vec<Rat>]) -> serde_json::Value {
    serde_json::json!({
        "entries": m.iter().map(|row| row.iter().map(rat_display).collect::<Vec<_>>())
            .collect::<Vec<_>>(),
        "valuations": m.iter().map(|row| row.iter().map(|e| {
            if e.is_zero() {
                ValOrBound::Infinite.to_csv_cell()
            } else {
                vp_rat(e, p).unwrap().to_string()
            }
        }).collect::<Vec<_>>()).collect::<Vec<_>>(),
    })
}
