//! Energy series of the shifted-ℓ expansion.
//!
//! With `q = q₀(1 + λx)` and `λ = ℓ̄^(-1/2)` the radial problem becomes, after
//! factoring `ℓ̄/q₀²`, the perturbed oscillator
//!
//! ```text
//! h(λ) = −½ d²/dx² + ½w²x² + Σ_j λʲ v_j(x)
//! v_j  = A_j x^(j+2) + B_j x^j + C_j x^(j−2)
//! A_j  = ½(−1)ʲ(j+3) + δ_(j+2)
//! B_j  = ½(2β+1)(−1)ʲ(j+1)
//! C_j  = ½β(β+1)(−1)ʲ(j−1)             (j ≥ 2)
//! δ_k  = q₀^(k+2) V⁽ᵏ⁾(q₀) / (k! ℓ̄²)
//! ```
//!
//! Its eigenvalue `ε(λ) = Σ ε_m λᵐ` is generated by the hypervirial relations
//! for the moments `⟨xᴺ⟩` together with the Hellmann–Feynman theorem. The
//! energy is `E = c₀ + Σ_(k≥2) ε_(2(k−1)) ℓ̄^(2−k) / q₀²`.

use crate::error::{Error, Result};
use crate::leading::{solve_leading, LeadingOrder, QuantumState};
use crate::numeric::{Precision, Real};
use crate::potential::{jet, Jet, PotentialExpr};

pub const DEFAULT_ORDER: usize = 20;

/// Coefficients `W_(k,j)` of `xᵏ λʲ` in the perturbation, plus `½w²`.
#[derive(Debug, Clone, PartialEq)]
pub struct PerturbationTable<T> {
    /// Harmonic coefficient `½w²`.
    pub harmonic: T,
    /// `rows[j]` lists `(k, W_(k,j))`; row 0 is empty.
    rows: Vec<Vec<(usize, T)>>,
    /// `δ_k` for `k = 0..=j_max+2` (empty for hand-built tables).
    pub delta: Vec<T>,
}

impl<T: Real> PerturbationTable<T> {
    /// Hand-built table from `(k, j, value)` triples.
    pub fn from_entries(harmonic: T, entries: impl IntoIterator<Item = (usize, usize, T)>) -> Self {
        let mut rows: Vec<Vec<(usize, T)>> = vec![Vec::new()];
        for (k, j, v) in entries {
            assert!(j >= 1, "perturbation orders start at 1");
            if rows.len() <= j {
                rows.resize(j + 1, Vec::new());
            }
            match rows[j].iter_mut().find(|(kk, _)| *kk == k) {
                Some((_, existing)) => *existing += v,
                None => rows[j].push((k, v)),
            }
        }
        PerturbationTable {
            harmonic,
            rows,
            delta: Vec::new(),
        }
    }

    pub fn j_max(&self) -> usize {
        self.rows.len().saturating_sub(1)
    }

    pub fn row(&self, j: usize) -> &[(usize, T)] {
        self.rows.get(j).map_or(&[], Vec::as_slice)
    }

    pub fn coeff(&self, k: usize, j: usize) -> Option<&T> {
        self.row(j).iter().find(|(kk, _)| *kk == k).map(|(_, v)| v)
    }
}

fn sign(j: usize) -> i64 {
    if j.is_multiple_of(2) {
        1
    } else {
        -1
    }
}

/// Builds the perturbation table from the potential jet at `q₀`.
pub fn assemble_perturbation<T: Real>(
    jet: &Jet<T>,
    lead: &LeadingOrder<T>,
    j_max: usize,
    prec: Precision,
) -> Result<PerturbationTable<T>> {
    let need = j_max + 3;
    if jet.derivs.len() < need {
        return Err(Error::InsufficientJet {
            need,
            have: jet.derivs.len(),
        });
    }
    let bits = T::effective_bits(prec);
    let l2 = lead.ellbar.clone() * &lead.ellbar;
    let mut delta = Vec::with_capacity(need);
    let mut qpow = lead.q0.clone() * &lead.q0;
    let mut fact = T::from_i64(1, prec);
    for k in 0..need {
        if k > 0 {
            qpow *= &lead.q0;
            fact *= T::from_i64(k as i64, prec);
        }
        delta.push(qpow.clone() * &jet.derivs[k] / (fact.clone() * &l2));
    }

    let three = T::from_i64(3, prec);
    let half = T::from_f64(0.5, prec);
    let w2 = lead.w.clone() * &lead.w;
    let tol = T::exp2_neg(bits / 3, prec);
    assert!(
        (delta[1].clone() - T::one()).abs() <= tol,
        "δ₁ = {} must equal 1 at the effective radius",
        delta[1]
    );
    let delta2_expected = (w2.clone() - &three) * &half;
    assert!(
        (delta[2].clone() - &delta2_expected).abs() <= tol.clone() * T::max_of(T::one(), delta2_expected.abs()),
        "δ₂ = {} must equal (w²−3)/2 = {}",
        delta[2],
        delta2_expected
    );

    let two_beta_p1 = T::from_i64(2, prec) * &lead.beta + T::one();
    let beta_beta_p1 = lead.beta.clone() * (lead.beta.clone() + T::one());
    let entries = (1..=j_max).flat_map(|j| {
        let s = T::from_i64(sign(j), prec);
        let a = half.clone() * &s * T::from_i64(j as i64 + 3, prec) + &delta[j + 2];
        let b = half.clone() * &two_beta_p1 * &s * T::from_i64(j as i64 + 1, prec);
        let mut out = vec![(j + 2, j, a), (j, j, b)];
        if j >= 2 {
            let c = half.clone() * &beta_beta_p1 * &s * T::from_i64(j as i64 - 1, prec);
            out.push((j - 2, j, c));
        }
        out
    });
    let mut table = PerturbationTable::from_entries(w2 * &half, entries.collect::<Vec<_>>());
    table.delta = delta;
    Ok(table)
}

/// Moment table `X[p][N] = ⟨xᴺ⟩` at perturbation order `p`, with every entry
/// tracked so an out-of-order read is an error rather than a silent zero.
struct Moments<T> {
    rows: Vec<Vec<Option<T>>>,
    bound: usize,
}

impl<T: Real> Moments<T> {
    fn get(&self, n: usize, p: usize) -> Result<&T> {
        if n > self.bound {
            return Err(Error::OrderOverflow {
                index: n,
                bound: self.bound,
            });
        }
        self.rows
            .get(p)
            .and_then(|row| row.get(n))
            .and_then(Option::as_ref)
            .ok_or(Error::UncomputedMoment { index: n, order: p })
    }
}

/// Default envelope for moment indices, `3·m_max + 4`.
pub fn default_moment_bound(m_max: usize) -> usize {
    3 * m_max + 4
}

/// λ-series coefficients `ε₀…ε_(m_max)` of the `nr`-th level of `h(λ)`.
pub fn hvhf_expand<T: Real>(
    tab: &PerturbationTable<T>,
    w: &T,
    nr: u32,
    m_max: usize,
    prec: Precision,
) -> Result<Vec<T>> {
    hvhf_expand_bounded(tab, w, nr, m_max, default_moment_bound(m_max), prec)
}

/// [`hvhf_expand`] with an explicit moment-index bound.
pub fn hvhf_expand_bounded<T: Real>(
    tab: &PerturbationTable<T>,
    w: &T,
    nr: u32,
    m_max: usize,
    bound: usize,
    prec: Precision,
) -> Result<Vec<T>> {
    let quarter = T::from_f64(0.25, prec);
    let w2 = T::from_i64(2, prec) * &tab.harmonic;
    let int = |n: i64| T::from_i64(n, prec);

    let mut eps: Vec<T> = Vec::with_capacity(m_max + 1);
    eps.push((int(nr as i64) + T::from_f64(0.5, prec)) * w);

    // order p needs moments up to index m_max − p + 2
    let mut x = Moments {
        rows: (0..=m_max).map(|p| vec![None; m_max - p + 3]).collect(),
        bound,
    };
    for (p, row) in x.rows.iter_mut().enumerate() {
        row[0] = Some(if p == 0 { T::one() } else { T::zero() });
    }

    for p in 0..=m_max {
        if p >= 1 {
            // Hellmann–Feynman: p ε_p = Σ_j j Σ_k W_(k,j) X_k^(p−j)
            let mut acc = T::zero();
            for j in 1..=p.min(tab.j_max()) {
                for (k, c) in tab.row(j) {
                    let xv = x.get(*k, p - j)?;
                    if xv.is_zero() || c.is_zero() {
                        continue;
                    }
                    acc += int(j as i64) * c * xv;
                }
            }
            eps.push(acc / int(p as i64));
        }

        let top = m_max - p + 2;
        for n in 0..top {
            // 2N E X_(N−1) + ¼N(N−1)(N−2) X_(N−3) = Σ_k (2N+k) W_k X_(N+k−1)
            let mut rhs = T::zero();
            if n >= 1 {
                for (i, e) in eps.iter().enumerate().take(p + 1) {
                    let xv = x.get(n - 1, p - i)?;
                    if xv.is_zero() || e.is_zero() {
                        continue;
                    }
                    rhs += int(2 * n as i64) * e * xv;
                }
            }
            if n >= 3 {
                let xv = x.get(n - 3, p)?;
                rhs += quarter.clone() * int((n * (n - 1) * (n - 2)) as i64) * xv;
            }
            for j in 1..=p.min(tab.j_max()) {
                for (k, c) in tab.row(j) {
                    let factor = 2 * n + k;
                    if factor == 0 || c.is_zero() {
                        continue;
                    }
                    let xv = x.get(n + k - 1, p - j)?;
                    if xv.is_zero() {
                        continue;
                    }
                    rhs -= int(factor as i64) * c * xv;
                }
            }
            if n + 1 > bound {
                return Err(Error::OrderOverflow { index: n + 1, bound });
            }
            x.rows[p][n + 1] = Some(rhs / (int(n as i64 + 1) * &w2));
        }
    }
    Ok(eps)
}

/// Terms, partial sums and raw λ-coefficients of the energy series.
#[derive(Debug, Clone, PartialEq)]
pub struct EnergySeries<T> {
    pub leading: LeadingOrder<T>,
    /// `ε_m`, `m = 0..=2(M−1)`.
    pub eps: Vec<T>,
    /// `c_k`, `k = 0..=M`.
    pub terms: Vec<T>,
    /// `E_k = Σ_(i≤k) c_i`.
    pub partials: Vec<T>,
    pub table: PerturbationTable<T>,
    pub prec: Precision,
}

impl<T: Real> EnergySeries<T> {
    pub fn order(&self) -> usize {
        self.terms.len() - 1
    }

    pub fn last(&self) -> &T {
        self.partials.last().expect("series has at least two terms")
    }

    /// max |ε_odd| / max |ε|.
    pub fn odd_parity_ratio(&self) -> T {
        let max_all = self.eps.iter().map(Real::abs).fold(T::zero(), T::max_of);
        let max_odd = self
            .eps
            .iter()
            .skip(1)
            .step_by(2)
            .map(Real::abs)
            .fold(T::zero(), T::max_of);
        if max_all.is_zero() {
            max_all
        } else {
            max_odd / max_all
        }
    }
}

/// Energy series for `state` in `pot` through `c_M`.
pub fn energy_series<T: Real>(
    pot: &PotentialExpr,
    state: &QuantumState,
    order: usize,
    prec: Precision,
) -> Result<EnergySeries<T>> {
    if order < 2 {
        return Err(Error::OrderTooLow { min: 2, got: order });
    }
    let leading: LeadingOrder<T> = solve_leading(pot, state, prec)?;
    let m_max = 2 * (order - 1);
    let jet = jet(pot, &leading.q0, 2 * order + 2, prec)?;
    let table = assemble_perturbation(&jet, &leading, m_max, prec)?;
    let eps = hvhf_expand(&table, &leading.w, state.nr, m_max, prec)?;

    let q02 = leading.q0.clone() * &leading.q0;
    let inv_lbar = T::one() / &leading.ellbar;
    let mut terms = vec![leading.c0.clone(), leading.c1.clone()];
    // c_k = ε_(2(k−1)) ℓ̄^(2−k) / q₀²
    let mut scale = T::one() / &q02;
    for k in 2..=order {
        if k > 2 {
            scale *= &inv_lbar;
        }
        terms.push(eps[2 * (k - 1)].clone() * &scale);
    }
    let mut partials = Vec::with_capacity(terms.len());
    let mut acc = T::zero();
    for t in &terms {
        acc += t;
        partials.push(acc.clone());
    }
    Ok(EnergySeries {
        leading,
        eps,
        terms,
        partials,
        table,
        prec,
    })
}

/// Smallest-term diagnostics of an asymptotic series.
#[derive(Debug, Clone, PartialEq)]
pub struct Truncation<T> {
    /// Order `k ≥ 2` of the smallest `|c_k|`.
    pub index: usize,
    pub min_step: T,
    pub diverging: bool,
}

/// Locates the smallest correction and flags asymptotic divergence.
///
/// The series is flagged as diverging when the smallest term sits at least
/// two orders before the end, the terms after it grow on average (positive
/// least-squares slope of `ln|c_k|`), and some later term is at least ten
/// times the smallest one.
pub fn optimal_truncation<T: Real>(series: &EnergySeries<T>) -> Truncation<T> {
    let bits = T::effective_bits(series.prec);
    let floor = series.terms[0].abs() * T::exp2_neg(bits * 3 / 4, series.prec);
    optimal_truncation_terms(&series.terms, &floor)
}

/// [`optimal_truncation`] on raw terms `c_0…c_M`; corrections no larger
/// than `floor` count as exact zeros.
pub fn optimal_truncation_terms<T: Real>(terms: &[T], floor: &T) -> Truncation<T> {
    let m = terms.len() - 1;
    let mags: Vec<T> = terms.iter().map(Real::abs).collect();
    if m < 2 || mags[2..].iter().all(|v| v <= floor) {
        return Truncation {
            index: m,
            min_step: T::zero(),
            diverging: false,
        };
    }
    let mut index = 2;
    for k in 3..=m {
        if mags[k] < mags[index] {
            index = k;
        }
    }
    let min_step = mags[index].clone();

    let diverging = index + 2 <= m && {
        let pts: Vec<(f64, f64)> = (index..=m)
            .map(|k| (k as f64, mags[k].to_f64().unwrap_or(0.0).max(1e-300).ln()))
            .collect();
        let n = pts.len() as f64;
        let mx = pts.iter().map(|p| p.0).sum::<f64>() / n;
        let my = pts.iter().map(|p| p.1).sum::<f64>() / n;
        let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
        let sxx: f64 = pts.iter().map(|p| (p.0 - mx).powi(2)).sum();
        let regrowth = mags[index + 1..].iter().any(|v| {
            let ten = T::one() + T::one() + T::one() + T::one() + T::one();
            *v >= min_step.clone() * (ten.clone() + ten)
        });
        sxy / sxx > 0.0 && regrowth
    };
    Truncation {
        index,
        min_step,
        diverging,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    #[allow(unused_imports)]
    use num_traits::{One, ToPrimitive, Zero};
    use crate::numeric::BigFloat;
    use crate::potential::parse_potential;

    fn prec() -> Precision {
        Precision::default()
    }

    fn big(v: f64) -> BigFloat {
        BigFloat::from_f64(v, prec())
    }

    fn tiny(exp10: i32) -> BigFloat {
        BigFloat::parse_decimal(&format!("1e{exp10}"), prec()).unwrap()
    }

    #[test]
    fn unperturbed_oscillator() {
        let tab = PerturbationTable::from_entries(big(0.5), Vec::new());
        let eps = hvhf_expand(&tab, &big(1.0), 2, 6, prec()).unwrap();
        assert_eq!(eps[0], big(2.5));
        assert!(eps[1..].iter().all(|e| e.is_zero()));
    }

    #[test]
    fn quartic_first_and_second_order() {
        let g = BigFloat::parse_decimal("0.3", prec()).unwrap();
        let tab = PerturbationTable::from_entries(big(0.5), vec![(4, 2, g.clone())]);
        let eps = hvhf_expand(&tab, &big(1.0), 0, 4, prec()).unwrap();
        let first = BigFloat::from_i64(3, prec()) / BigFloat::from_i64(4, prec()) * &g;
        let second = -(BigFloat::from_i64(21, prec()) / BigFloat::from_i64(8, prec())) * &g * &g;
        assert!((eps[2].clone() - first).abs() < tiny(-50));
        assert!((eps[4].clone() - second).abs() < tiny(-50));
        assert!(eps[1].is_zero() && eps[3].is_zero());
    }

    #[test]
    fn excited_quartic_first_order() {
        // <n|x^4|n> = (6n^2 + 6n + 3)/4 for w = 1
        let tab = PerturbationTable::from_entries(big(0.5), vec![(4, 2, big(1.0))]);
        for n in 0..5u32 {
            let eps = hvhf_expand(&tab, &big(1.0), n, 2, prec()).unwrap();
            let expect = big((6 * n * n + 6 * n + 3) as f64 / 4.0);
            assert!((eps[2].clone() - expect).abs() < tiny(-50), "n={n}");
        }
    }

    #[test]
    fn overflow_and_dependency_tracking() {
        let tab = PerturbationTable::from_entries(big(0.5), vec![(4, 2, big(1.0))]);
        assert!(matches!(
            hvhf_expand_bounded(&tab, &big(1.0), 0, 8, 5, prec()),
            Err(Error::OrderOverflow { .. })
        ));
        // x^6 at first order violates k <= j + 2, its moment is never built
        let bad = PerturbationTable::from_entries(big(0.5), vec![(6, 1, big(1.0))]);
        assert!(matches!(
            hvhf_expand(&bad, &big(1.0), 0, 4, prec()),
            Err(Error::UncomputedMoment { .. })
        ));
    }

    #[test]
    fn coulomb_table_shape() {
        let pot = parse_potential("-1/r").unwrap();
        let state = QuantumState::new(1, 2);
        let lead: LeadingOrder<BigFloat> = solve_leading(&pot, &state, prec()).unwrap();
        let j = jet(&pot, &lead.q0, 12, prec()).unwrap();
        let tab = assemble_perturbation(&j, &lead, 10, prec()).unwrap();
        for jj in 1..=10usize {
            let a = tab.coeff(jj + 2, jj).unwrap();
            // A_j = (−1)^j (½(j+3) − 1)
            let expect = big(sign(jj) as f64 * ((jj as f64 + 3.0) / 2.0 - 1.0));
            assert!((a.clone() - expect).abs() < tiny(-40), "j={jj}");
            assert!(tab.coeff(jj, jj).is_some());
            assert_eq!(tab.row(jj).len(), if jj >= 2 { 3 } else { 2 });
        }
    }

    #[test]
    fn harmonic_table_has_no_anharmonic_deltas() {
        let pot = parse_potential("r^2/2").unwrap();
        let lead: LeadingOrder<BigFloat> = solve_leading(&pot, &QuantumState::new(0, 0), prec()).unwrap();
        let j = jet(&pot, &lead.q0, 8, prec()).unwrap();
        let tab = assemble_perturbation(&j, &lead, 6, prec()).unwrap();
        for jj in 1..=6usize {
            let expect = big(sign(jj) as f64 * (jj as f64 + 3.0) / 2.0);
            assert!((tab.coeff(jj + 2, jj).unwrap().clone() - expect).abs() < tiny(-45));
        }
    }

    #[test]
    fn insufficient_jet() {
        let pot = parse_potential("-1/r").unwrap();
        let lead: LeadingOrder<BigFloat> = solve_leading(&pot, &QuantumState::new(0, 0), prec()).unwrap();
        let j = jet(&pot, &lead.q0, 4, prec()).unwrap();
        assert_eq!(
            assemble_perturbation(&j, &lead, 4, prec()).unwrap_err(),
            Error::InsufficientJet { need: 7, have: 5 }
        );
    }

    #[test]
    fn coulomb_series_exact() {
        let pot = parse_potential("-1/r").unwrap();
        let s: EnergySeries<BigFloat> = energy_series(&pot, &QuantumState::from_label("6s").unwrap(), 20, prec()).unwrap();
        let exact = -(BigFloat::one() / BigFloat::from_i64(72, prec()));
        for p in &s.partials {
            assert!((p.clone() - &exact).abs() <= tiny(-30));
        }
        for e in &s.eps[1..] {
            assert!(e.abs() <= tiny(-30));
        }
    }

    #[test]
    fn order_too_low() {
        let pot = parse_potential("-1/r").unwrap();
        assert!(matches!(
            energy_series::<f64>(&pot, &QuantumState::new(0, 0), 1, prec()),
            Err(Error::OrderTooLow { .. })
        ));
    }

    fn truncated(alpha: &str, ell: u32, nr: u32) -> EnergySeries<BigFloat> {
        let pot = parse_potential(&format!("-1/(r+{alpha})")).unwrap();
        energy_series(&pot, &QuantumState::new(ell, nr), 20, prec()).unwrap()
    }

    fn close(x: &BigFloat, expect: &str, tol: f64) -> bool {
        (x.to_f64().unwrap() - expect.parse::<f64>().unwrap()).abs() <= tol
    }

    #[test]
    fn four_s_partial_sums() {
        let s = truncated("10", 0, 3);
        let golden = [
            (0, "-0.0132428364621"),
            (2, "-0.0120612103377"),
            (7, "-0.0116415122045"),
            (12, "-0.0116384556479"),
            (20, "-0.0116383086602"),
        ];
        for (k, v) in golden {
            assert!(close(&s.partials[k], v, 1e-13), "E{k} = {}", s.partials[k]);
        }
        assert!(s.odd_parity_ratio() < tiny(-40));
    }

    #[test]
    fn high_node_state_partial_sums() {
        let s = truncated("10", 1, 10);
        assert!(close(&s.leading.q0, "175.925904046", 1e-9));
        assert!(close(&s.partials[5], "-0.00247790514157", 1e-14));
        assert!(close(&s.partials[20], "-0.00246930440687", 1e-14));
        let t = optimal_truncation(&s);
        assert!(!t.diverging);
    }

    #[test]
    fn strong_coupling_diverges() {
        let s = truncated("0.1", 0, 0);
        assert!(close(&s.partials[20], "-0.119294187954", 1e-11));
        let t = optimal_truncation(&s);
        assert_eq!(t.index, 7);
        assert!(t.diverging);
    }

    #[test]
    fn double_precision_tracks_big_float() {
        let pot = parse_potential("-1/(r+10)").unwrap();
        let st = QuantumState::new(0, 3);
        let lo: EnergySeries<f64> = energy_series(&pot, &st, 12, prec()).unwrap();
        let hi = truncated("10", 0, 3);
        assert!((lo.partials[12] - hi.partials[12].to_f64().unwrap()).abs() < 1e-12);
    }

    #[test]
    fn scale_covariance() {
        // V -> s^2 V(s r) scales every energy by s^2 (with hbar = m = 1)
        let a = truncated("10", 2, 1);
        let pot = parse_potential("-4/(2*r+10)").unwrap();
        let b: EnergySeries<BigFloat> = energy_series(&pot, &QuantumState::new(2, 1), 20, prec()).unwrap();
        for (x, y) in a.terms.iter().zip(&b.terms) {
            let want = x.clone() * BigFloat::from_i64(4, prec());
            assert!((want.clone() - y).abs() <= want.abs() * tiny(-40) + tiny(-60));
        }
    }

    #[test]
    fn harmonic_series_is_exact() {
        // E = (2 nr + l + 3/2) w for V = w^2 r^2 / 2
        let pot = parse_potential("r^2/2").unwrap();
        let s: EnergySeries<BigFloat> = energy_series(&pot, &QuantumState::new(3, 2), 10, prec()).unwrap();
        let exact = big(8.5);
        for p in &s.partials {
            assert!((p.clone() - &exact).abs() < tiny(-40), "{p}");
        }
    }

    #[test]
    fn truncation_geometric() {
        let terms: Vec<f64> = (0..=20).map(|k| 0.5f64.powi(k)).collect();
        let t = optimal_truncation_terms(&terms, &0.0);
        assert_eq!(t.index, 20);
        assert!(!t.diverging);
    }

    #[test]
    fn truncation_factorial_growth() {
        // c_k = k! x^k with x = 0.2: minimum near k = 5, then blows up
        let terms: Vec<f64> = (0..=20)
            .map(|k| <f64 as Real>::factorial(k, prec()) * 0.2f64.powi(k as i32))
            .collect();
        let t = optimal_truncation_terms(&terms, &0.0);
        assert!(t.diverging);
        assert!((4..=5).contains(&t.index), "{}", t.index);
    }

    #[test]
    fn truncation_late_minimum_is_not_divergence() {
        let mut terms: Vec<f64> = (0..=20).map(|k| 0.5f64.powi(k)).collect();
        terms[19] = 1e-9; // one dip just before the end
        let t = optimal_truncation_terms(&terms, &0.0);
        assert_eq!(t.index, 19);
        assert!(!t.diverging);
    }
}
