//! Reference tables for the truncated Coulomb potential `−1/(r+α)`, α = 10.
//!
//! Table 1: s states 4s…11s with the 20-term sum, its stabilization order,
//! the best Padé value and the staircase position where it settles.
//! Table 2: partial sums `−E_k` of the ten-node states for ℓ = 1, 3, 5, 15.

use std::fmt::Write as _;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::analysis::{analyze, Analysis, SolveOptions};
use crate::error::Result;
use crate::leading::QuantumState;
use crate::numeric::real::to_places_string;
use crate::numeric::{BigFloat, Precision};
use crate::potential::PotentialExpr;
use crate::resum::StabIndex;

pub const TABLE_ALPHA: &str = "10";
pub const TABLE_ORDER: usize = 20;

/// States of table 1 with the decimals printed for (E₂₀, Padé).
pub const TABLE1_STATES: [(&str, usize, usize); 5] =
    [("4s", 6, 6), ("6s", 6, 7), ("7s", 6, 7), ("9s", 6, 6), ("11s", 6, 7)];

/// Columns of table 2: ℓ and the decimals printed.
pub const TABLE2_COLUMNS: [(u32, usize); 4] = [(1, 5), (3, 6), (5, 7), (15, 8)];
pub const TABLE2_NR: u32 = 10;
/// Partial-sum orders listed in table 2.
pub const TABLE2_ROWS: [usize; 10] = [0, 1, 2, 3, 4, 5, 6, 7, 8, 20];

pub fn table_potential() -> PotentialExpr {
    PotentialExpr::truncated_coulomb(TABLE_ALPHA).expect("literal potential parses")
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Table1Row {
    pub state: String,
    pub e20: String,
    pub series_stab: Option<usize>,
    pub pade: Option<String>,
    pub pade_stab: Option<(usize, usize)>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Table1 {
    pub prec_bits: u32,
    pub digits: usize,
    pub rows: Vec<Table1Row>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Table2Column {
    pub ell: u32,
    /// `−E_k` for the orders in [`TABLE2_ROWS`].
    pub values: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Table2 {
    pub prec_bits: u32,
    pub rows: Vec<usize>,
    pub columns: Vec<Table2Column>,
}

fn options(prec: Precision, digits: usize) -> SolveOptions {
    SolveOptions {
        order: TABLE_ORDER,
        prec,
        digits,
        oracle: false,
    }
}

/// Full analyses behind table 1, in row order.
pub fn table1_analyses(prec: Precision, digits: usize) -> Result<Vec<Analysis<BigFloat>>> {
    let pot = table_potential();
    let opts = options(prec, digits);
    TABLE1_STATES
        .par_iter()
        .map(|(label, _, _)| analyze(&pot, &QuantumState::from_label(label)?, &opts))
        .collect()
}

pub fn reproduce_table1(prec: Precision, digits: usize) -> Result<Table1> {
    let rows = table1_analyses(prec, digits)?
        .iter()
        .zip(TABLE1_STATES)
        .map(|(a, (label, e_places, p_places))| Table1Row {
            state: label.to_string(),
            e20: to_places_string(a.series.last(), e_places),
            series_stab: match a.series_stab.index {
                Some(StabIndex::Order(k)) => Some(k),
                _ => None,
            },
            pade: a.staircase.best.as_ref().map(|b| to_places_string(b, p_places)),
            pade_stab: a.staircase.stab_index(),
        })
        .collect();
    Ok(Table1 {
        prec_bits: prec.bits(),
        digits,
        rows,
    })
}

pub fn reproduce_table2(prec: Precision) -> Result<Table2> {
    let pot = table_potential();
    let opts = options(prec, crate::resum::DEFAULT_DIGITS);
    let columns = TABLE2_COLUMNS
        .par_iter()
        .map(|&(ell, places)| {
            let a: Analysis<BigFloat> = analyze(&pot, &QuantumState::new(ell, TABLE2_NR), &opts)?;
            let values = TABLE2_ROWS
                .iter()
                .map(|&k| to_places_string(&-a.series.partials[k].clone(), places))
                .collect();
            Ok(Table2Column { ell, values })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Table2 {
        prec_bits: prec.bits(),
        rows: TABLE2_ROWS.to_vec(),
        columns,
    })
}

impl Table1 {
    pub fn to_markdown(&self) -> String {
        let mut out = format!(
            "V(r) = -1/(r+{TABLE_ALPHA}), {} terms, {} bits, stabilization at {} significant digits\n\n",
            TABLE_ORDER, self.prec_bits, self.digits
        );
        out.push_str("| State | E20 | stable from | Padé | stable from |\n|---|---|---|---|---|\n");
        for r in &self.rows {
            let _ = writeln!(
                out,
                "| {} | {} | {} | {} | {} |",
                r.state,
                r.e20,
                r.series_stab.map_or("—".into(), |k| format!("E{k}")),
                r.pade.as_deref().unwrap_or("—"),
                r.pade_stab.map_or("—".into(), |(n, m)| format!("E[{n},{m}]"))
            );
        }
        out
    }

    pub fn to_csv(&self) -> csv::Result<String> {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(["state", "e20", "series_stab", "pade", "pade_stab"])?;
        for r in &self.rows {
            w.write_record([
                r.state.clone(),
                r.e20.clone(),
                r.series_stab.map_or(String::new(), |k| k.to_string()),
                r.pade.clone().unwrap_or_default(),
                r.pade_stab.map_or(String::new(), |(n, m)| format!("{n},{m}")),
            ])?;
        }
        let bytes = w.into_inner().map_err(|e| e.into_error())?;
        Ok(String::from_utf8(bytes).expect("csv is utf-8"))
    }
}

impl Table2 {
    pub fn to_markdown(&self) -> String {
        let mut out = format!(
            "V(r) = -1/(r+{TABLE_ALPHA}), nr = {TABLE2_NR}, {} bits\n\n|  |",
            self.prec_bits
        );
        for c in &self.columns {
            let _ = write!(out, " ℓ = {} |", c.ell);
        }
        out.push_str("\n|---|");
        out.push_str(&"---|".repeat(self.columns.len()));
        out.push('\n');
        for (i, k) in self.rows.iter().enumerate() {
            let _ = write!(out, "| -E{k} |");
            for c in &self.columns {
                let _ = write!(out, " {} |", c.values[i]);
            }
            out.push('\n');
        }
        out
    }

    pub fn to_csv(&self) -> csv::Result<String> {
        let mut w = csv::Writer::from_writer(Vec::new());
        let mut header = vec!["order".to_string()];
        header.extend(self.columns.iter().map(|c| format!("ell_{}", c.ell)));
        w.write_record(&header)?;
        for (i, k) in self.rows.iter().enumerate() {
            let mut rec = vec![k.to_string()];
            rec.extend(self.columns.iter().map(|c| c.values[i].clone()));
            w.write_record(&rec)?;
        }
        let bytes = w.into_inner().map_err(|e| e.into_error())?;
        Ok(String::from_utf8(bytes).expect("csv is utf-8"))
    }
}
