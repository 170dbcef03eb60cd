//! Padé resummation of the energy tail and stabilization detection.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numeric::real::to_sig_string;
use crate::numeric::{solve_linear, Precision, Real};
use crate::series::EnergySeries;

pub const DEFAULT_DIGITS: usize = 5;

/// `P(u)/Q(u)` with `Q(0) = 1`.
#[derive(Debug, Clone, PartialEq)]
pub struct PadeApproximant<T> {
    pub n: usize,
    pub m: usize,
    pub num: Vec<T>,
    pub den: Vec<T>,
}

fn horner<T: Real>(c: &[T], u: &T) -> T {
    c.iter().rev().fold(T::zero(), |acc, v| acc * u + v)
}

impl<T: Real> PadeApproximant<T> {
    pub fn eval(&self, u: &T) -> T {
        horner(&self.num, u) / horner(&self.den, u)
    }

    /// Taylor coefficients of `P/Q` through `u^order`.
    pub fn taylor(&self, order: usize) -> Vec<T> {
        let mut s: Vec<T> = Vec::with_capacity(order + 1);
        for k in 0..=order {
            let mut acc = self.num.get(k).cloned().unwrap_or_else(T::zero);
            for i in 1..=k.min(self.m) {
                acc -= self.den[i].clone() * &s[k - i];
            }
            s.push(acc);
        }
        s
    }
}

/// `[n/m]` Padé approximant of the power series `Σ t_k u^k`.
///
/// Entries whose Hankel system is singular, or whose re-expansion misses the
/// input by more than `2^(−bits/3)` relative, are reported as degenerate.
pub fn pade<T: Real>(t: &[T], n: usize, m: usize, prec: Precision) -> Result<PadeApproximant<T>> {
    let need = n + m + 1;
    if t.len() < need {
        return Err(Error::TooFewCoefficients { need, have: t.len() });
    }
    let t = &t[..need];
    let coef = |k: isize| if k < 0 { T::zero() } else { t[k as usize].clone() };

    if t.iter().all(|v| v.is_zero()) {
        let mut den = vec![T::zero(); m + 1];
        den[0] = T::one();
        return Ok(PadeApproximant {
            n,
            m,
            num: vec![T::zero(); n + 1],
            den,
        });
    }

    let mut den = vec![T::one()];
    if m > 0 {
        // Σ_(i=1..m) q_i t_(k−i) = −t_k for k = n+1..n+m
        let rows: Vec<Vec<T>> = (0..m)
            .map(|r| (1..=m).map(|i| coef((n + 1 + r) as isize - i as isize)).collect())
            .collect();
        let rhs: Vec<T> = (0..m).map(|r| -coef((n + 1 + r) as isize)).collect();
        let q = solve_linear(&rows, &rhs, prec).map_err(|e| match e {
            Error::SingularMatrix { .. } => Error::DegeneratePade { n, m },
            other => other,
        })?;
        den.extend(q);
    }
    let num: Vec<T> = (0..=n)
        .map(|k| {
            (0..=k.min(m)).fold(T::zero(), |acc, i| acc + den[i].clone() * coef(k as isize - i as isize))
        })
        .collect();
    let approx = PadeApproximant { n, m, num, den };

    let bits = T::effective_bits(prec);
    let scale = t.iter().map(Real::abs).fold(T::zero(), T::max_of);
    let tol = scale * T::exp2_neg(bits / 3, prec);
    let reexpanded = approx.taylor(n + m);
    if reexpanded.iter().zip(t).any(|(a, b)| (a.clone() - b).abs() > tol) {
        return Err(Error::DegeneratePade { n, m });
    }
    Ok(approx)
}

/// Near-diagonal sequence `[1,1], [1,2], [2,2], [2,3], …` with `n+m+1 ≤ budget`.
pub fn staircase_orders(budget: usize) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    let (mut n, mut m) = (1, 1);
    while n + m < budget {
        out.push((n, m));
        if n == m {
            m += 1;
        } else {
            n += 1;
        }
    }
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum StabilizationKind {
    PartialSums,
    Pade,
}

/// Position from which a sequence has settled.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StabIndex {
    Order(usize),
    Pade(usize, usize),
}

impl std::fmt::Display for StabIndex {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            StabIndex::Order(k) => write!(f, "E{k}"),
            StabIndex::Pade(n, m) => write!(f, "[{n},{m}]"),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct StabilizationReport<T> {
    pub kind: StabilizationKind,
    pub index: Option<StabIndex>,
    pub digits: usize,
    /// Final value rounded to `digits` significant digits.
    pub converged_value: Option<T>,
}

/// Earliest position `i` such that `seq[i..]` all round to the same
/// `digits`-significant decimal as the last element.
pub fn stabilization_position<T: Real>(seq: &[T], digits: usize) -> Option<usize> {
    let keys: Vec<String> = seq.iter().map(|v| to_sig_string(v, digits)).collect();
    let last = keys.last()?;
    let mut start = keys.len() - 1;
    while start > 0 && keys[start - 1] == *last {
        start -= 1;
    }
    if keys.len() >= 2 && start == keys.len() - 1 {
        return None;
    }
    Some(start)
}

/// Stabilization of a partial-sum sequence (`seq[k] = E_k`).
pub fn stabilization<T: Real>(seq: &[T], digits: usize, prec: Precision) -> StabilizationReport<T> {
    let pos = stabilization_position(seq, digits);
    StabilizationReport {
        kind: StabilizationKind::PartialSums,
        index: pos.map(StabIndex::Order),
        digits,
        converged_value: pos.map(|_| rounded(seq.last().expect("nonempty"), digits, prec)),
    }
}

fn rounded<T: Real>(x: &T, digits: usize, prec: Precision) -> T {
    T::parse_decimal(&to_sig_string(x, digits), prec).expect("formatted decimal parses")
}

#[derive(Debug, Clone, PartialEq)]
pub struct PadeEntry<T> {
    pub n: usize,
    pub m: usize,
    pub value: T,
}

#[derive(Debug, Clone, PartialEq)]
pub struct PadeStaircase<T> {
    /// `t_n = ε_(2(n+1)) / q₀²`, coefficient of `uⁿ` with `u = 1/ℓ̄`.
    pub tail: Vec<T>,
    pub entries: Vec<PadeEntry<T>>,
    /// Orders whose approximant was degenerate.
    pub skipped: Vec<(usize, usize)>,
    /// Highest-order computed entry.
    pub best: Option<T>,
    pub stab: StabilizationReport<T>,
}

impl<T: Real> PadeStaircase<T> {
    pub fn stab_index(&self) -> Option<(usize, usize)> {
        match self.stab.index {
            Some(StabIndex::Pade(n, m)) => Some((n, m)),
            _ => None,
        }
    }
}

/// Padé staircase of the energy tail, evaluated at `u = 1/ℓ̄` with `c₀` added.
pub fn pade_staircase<T: Real>(series: &EnergySeries<T>, digits: usize) -> PadeStaircase<T> {
    let prec = series.prec;
    let lead = &series.leading;
    let q02 = lead.q0.clone() * &lead.q0;
    let mut tail: Vec<T> = (0..series.order().saturating_sub(1))
        .map(|n| series.eps[2 * (n + 1)].clone() / &q02)
        .collect();
    // a tail at rounding level (Coulomb) would only feed noise to the Hankel solve
    let bits = T::effective_bits(prec);
    let floor = lead.c0.abs() * T::exp2_neg(bits * 3 / 4, prec);
    if tail.iter().all(|v| v.abs() <= floor) {
        tail.iter_mut().for_each(|v| *v = T::zero());
    }

    let u = T::one() / &lead.ellbar;
    let results: Vec<_> = staircase_orders(tail.len())
        .into_par_iter()
        .map(|(n, m)| (n, m, pade(&tail, n, m, prec)))
        .collect();
    let mut entries = Vec::new();
    let mut skipped = Vec::new();
    for (n, m, res) in results {
        match res {
            Ok(p) => entries.push(PadeEntry {
                n,
                m,
                value: lead.c0.clone() + p.eval(&u),
            }),
            Err(_) => skipped.push((n, m)),
        }
    }

    let values: Vec<T> = entries.iter().map(|e| e.value.clone()).collect();
    let pos = stabilization_position(&values, digits);
    let stab = StabilizationReport {
        kind: StabilizationKind::Pade,
        index: pos.map(|i| StabIndex::Pade(entries[i].n, entries[i].m)),
        digits,
        converged_value: pos.map(|_| rounded(values.last().expect("nonempty"), digits, prec)),
    };
    PadeStaircase {
        tail,
        best: values.last().cloned(),
        entries,
        skipped,
        stab,
    }
}
