//! Machine-readable run records (JSON / CSV / Markdown).
//!
//! Multiprecision quantities are carried as decimal strings so nothing is lost
//! to a binary64 round trip.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::analysis::Analysis;
use crate::numeric::real::to_sig_string;
use crate::numeric::Real;
use crate::resum::StabIndex;

/// Significant digits written for every multiprecision value.
pub const RECORD_DIGITS: usize = 25;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct InputEcho {
    pub potential: String,
    pub ell: u32,
    pub nr: u32,
    pub order: usize,
    pub prec_bits: u32,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LeadingEcho {
    pub q0: String,
    pub w: String,
    pub beta: String,
    pub ellbar: String,
    pub c0: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PadeEntryEcho {
    pub n: usize,
    pub m: usize,
    pub value: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PadeStabEcho {
    /// `[N, M]` of the first stable entry.
    pub index: Option<(usize, usize)>,
    pub digits: usize,
    pub value: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PadeEcho {
    pub entries: Vec<PadeEntryEcho>,
    pub best: Option<String>,
    pub stab: PadeStabEcho,
    /// Orders skipped as degenerate.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub skipped: Vec<(usize, usize)>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SeriesStabEcho {
    pub index: Option<usize>,
    pub digits: usize,
    pub value: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Diagnostics {
    pub diverging: bool,
    pub opt_trunc: usize,
    /// Partial sum at the optimal truncation order.
    pub opt_value: String,
    pub min_step: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OracleEcho {
    pub energy: f64,
    pub nodes: u32,
    pub richardson_error: f64,
    pub r_max: f64,
    pub points: usize,
    /// `best Padé − oracle`, when both exist.
    pub pade_deviation: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunRecord {
    pub input: InputEcho,
    pub leading: LeadingEcho,
    pub partials: Vec<String>,
    pub pade: PadeEcho,
    pub series_stab: SeriesStabEcho,
    pub diagnostics: Diagnostics,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub oracle: Option<OracleEcho>,
    pub timings_ms: BTreeMap<String, f64>,
}

fn dec<T: Real>(x: &T) -> String {
    to_sig_string(x, RECORD_DIGITS)
}

impl RunRecord {
    pub fn from_analysis<T: Real>(a: &Analysis<T>) -> Self {
        let s = &a.series;
        let lead = &s.leading;
        let st = &a.staircase;
        let pade_deviation = match (&a.oracle, &st.best) {
            (Some(o), Some(best)) => best.to_f64().map(|b| b - o.energy),
            _ => None,
        };
        RunRecord {
            input: InputEcho {
                potential: a.potential.source().to_string(),
                ell: a.state.ell,
                nr: a.state.nr,
                order: s.order(),
                prec_bits: s.prec.bits(),
            },
            leading: LeadingEcho {
                q0: dec(&lead.q0),
                w: dec(&lead.w),
                beta: dec(&lead.beta),
                ellbar: dec(&lead.ellbar),
                c0: dec(&lead.c0),
            },
            partials: s.partials.iter().map(dec).collect(),
            pade: PadeEcho {
                entries: st
                    .entries
                    .iter()
                    .map(|e| PadeEntryEcho {
                        n: e.n,
                        m: e.m,
                        value: dec(&e.value),
                    })
                    .collect(),
                best: st.best.as_ref().map(dec),
                stab: PadeStabEcho {
                    index: st.stab_index(),
                    digits: st.stab.digits,
                    value: st.stab.converged_value.as_ref().map(dec),
                },
                skipped: st.skipped.clone(),
            },
            series_stab: SeriesStabEcho {
                index: match a.series_stab.index {
                    Some(StabIndex::Order(k)) => Some(k),
                    _ => None,
                },
                digits: a.series_stab.digits,
                value: a.series_stab.converged_value.as_ref().map(dec),
            },
            diagnostics: Diagnostics {
                diverging: a.truncation.diverging,
                opt_trunc: a.truncation.index,
                opt_value: dec(&s.partials[a.truncation.index]),
                min_step: dec(&a.truncation.min_step),
            },
            oracle: a.oracle.as_ref().map(|o| OracleEcho {
                energy: o.energy,
                nodes: o.nodes,
                richardson_error: o.richardson_error,
                r_max: o.grid.r_max,
                points: o.grid.points,
                pade_deviation,
            }),
            timings_ms: a.timings_ms.clone(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("record serializes")
    }

    pub fn from_json(text: &str) -> serde_json::Result<Self> {
        serde_json::from_str(text)
    }

    /// One row per partial sum, Padé entry and summary value.
    pub fn to_csv(&self) -> csv::Result<String> {
        #[derive(Serialize)]
        struct Row<'a> {
            kind: &'a str,
            k: Option<usize>,
            n: Option<usize>,
            m: Option<usize>,
            value: &'a str,
        }
        let mut w = csv::Writer::from_writer(Vec::new());
        let row = |kind, k, n, m, value| Row { kind, k, n, m, value };
        w.serialize(row("c0", None, None, None, &self.leading.c0))?;
        for (k, p) in self.partials.iter().enumerate() {
            w.serialize(row("partial", Some(k), None, None, p))?;
        }
        for e in &self.pade.entries {
            w.serialize(row("pade", None, Some(e.n), Some(e.m), &e.value))?;
        }
        if let Some(best) = &self.pade.best {
            w.serialize(row("pade_best", None, None, None, best))?;
        }
        let opt = self.diagnostics.opt_value.as_str();
        w.serialize(row("opt_trunc", Some(self.diagnostics.opt_trunc), None, None, opt))?;
        if let Some(o) = &self.oracle {
            w.serialize(row("oracle", None, None, None, &o.energy.to_string()))?;
        }
        let bytes = w.into_inner().map_err(|e| e.into_error())?;
        Ok(String::from_utf8(bytes).expect("csv is utf-8"))
    }

    pub fn to_markdown(&self) -> String {
        let mut out = String::new();
        let i = &self.input;
        let _ = writeln!(
            out,
            "## V(r) = {}, ℓ = {}, nr = {}\n\norder {}, {} bits\n",
            i.potential, i.ell, i.nr, i.order, i.prec_bits
        );
        let l = &self.leading;
        let _ = writeln!(out, "| q0 | w | beta | ellbar | c0 |\n|---|---|---|---|---|");
        let _ = writeln!(
            out,
            "| {} | {} | {} | {} | {} |\n",
            short(&l.q0),
            short(&l.w),
            short(&l.beta),
            short(&l.ellbar),
            short(&l.c0)
        );
        let _ = writeln!(out, "| k | E_k |\n|---|---|");
        for (k, p) in self.partials.iter().enumerate() {
            let _ = writeln!(out, "| {k} | {} |", short(p));
        }
        let _ = writeln!(out, "\n| [N,M] | Padé |\n|---|---|");
        for e in &self.pade.entries {
            let _ = writeln!(out, "| [{},{}] | {} |", e.n, e.m, short(&e.value));
        }
        for (n, m) in &self.pade.skipped {
            let _ = writeln!(out, "| [{n},{m}] | degenerate |");
        }
        let _ = writeln!(out);
        let s = &self.series_stab;
        let _ = writeln!(
            out,
            "- series stable from: {} ({} digits{})",
            s.index.map_or("—".to_string(), |k| format!("E{k}")),
            s.digits,
            s.value.as_deref().map_or(String::new(), |v| format!(", {}", short(v)))
        );
        let p = &self.pade.stab;
        let _ = writeln!(
            out,
            "- Padé stable from: {} ({} digits{})",
            p.index.map_or("—".to_string(), |(n, m)| format!("[{n},{m}]")),
            p.digits,
            p.value.as_deref().map_or(String::new(), |v| format!(", {}", short(v)))
        );
        let d = &self.diagnostics;
        let _ = writeln!(
            out,
            "- diverging: {}; optimal truncation E{} = {} (smallest step {})",
            d.diverging,
            d.opt_trunc,
            short(&d.opt_value),
            short(&d.min_step)
        );
        if let Some(o) = &self.oracle {
            let _ = writeln!(
                out,
                "- oracle: {:.10} ({} nodes, Richardson error {:.1e}, r_max {:.1}, {} points)",
                o.energy, o.nodes, o.richardson_error, o.r_max, o.points
            );
            if let Some(dev) = o.pade_deviation {
                let _ = writeln!(out, "- best Padé − oracle: {dev:.3e}");
            }
        }
        out
    }
}

/// Record decimal shortened to 12 significant digits for display.
#[allow(clippy::redundant_guards)] // also catches -0.0
fn short(text: &str) -> String {
    match text.parse::<f64>() {
        Ok(v) if v == 0.0 => "0".to_string(),
        Ok(v) => format!("{v:.11e}"),
        Err(_) => text.to_string(),
    }
}
