//! Leading-order geometry of the shifted-ℓ expansion.
//!
//! Writing `ℓ(ℓ+1) = ℓ̄² + (2β+1)ℓ̄ + β(β+1)` with `ℓ̄ = ℓ − β`, the effective
//! radius `q₀` minimises `ℓ̄²/(2q²) + V(q)`, i.e. `ℓ̄² = q₀³V'(q₀)`, and the
//! shift `β = −½[1 + (2nᵣ+1)w]` removes the energy term of order `ℓ̄`. Since
//! `w` depends on `q₀`, the radius solves the scalar equation
//!
//! ```text
//! q³V'(q) = (ℓ + ½ + (nᵣ + ½) w(q))²,   w(q)² = 3 + qV''(q)/V'(q)
//! ```

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numeric::{try_find_root, Precision, Real};
use crate::potential::{jet, PotentialExpr};

const LETTERS: [char; 8] = ['s', 'p', 'd', 'f', 'g', 'h', 'i', 'k'];

/// A bound state labelled by angular momentum and node count.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct QuantumState {
    pub ell: u32,
    /// Radial quantum number, the number of radial nodes.
    pub nr: u32,
    pub label: Option<String>,
}

impl QuantumState {
    pub fn new(ell: u32, nr: u32) -> Self {
        QuantumState { ell, nr, label: None }
    }

    /// Parses spectroscopic labels such as `4s` or `11s` (letters s…k).
    pub fn from_label(label: &str) -> Result<Self> {
        let text = label.trim();
        let split = text
            .find(|c: char| !c.is_ascii_digit())
            .ok_or_else(|| Error::InvalidState(format!("`{label}` has no orbital letter")))?;
        let (num, letter) = text.split_at(split);
        let n: u32 = num
            .parse()
            .map_err(|_| Error::InvalidState(format!("`{label}` has no principal number")))?;
        let mut chars = letter.chars();
        let (Some(c), None) = (chars.next(), chars.next()) else {
            return Err(Error::InvalidState(format!("`{label}`: expected one orbital letter")));
        };
        let ell = LETTERS
            .iter()
            .position(|&l| l == c.to_ascii_lowercase())
            .ok_or_else(|| {
                Error::InvalidState(format!(
                    "`{label}`: orbital letter `{c}` not in s,p,d,f,g,h,i,k; use --ell/--nr"
                ))
            })? as u32;
        if n < ell + 1 {
            return Err(Error::InvalidState(format!("`{label}`: n must exceed ell")));
        }
        Ok(QuantumState {
            ell,
            nr: n - ell - 1,
            label: Some(text.to_string()),
        })
    }

    pub fn principal(&self) -> u32 {
        self.nr + self.ell + 1
    }
}

impl fmt::Display for QuantumState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.label {
            Some(l) => write!(f, "{l}"),
            None => write!(f, "l={} nr={}", self.ell, self.nr),
        }
    }
}

/// Solved geometry and the leading energy term for one state.
#[derive(Debug, Clone, PartialEq)]
pub struct LeadingOrder<T> {
    pub state: QuantumState,
    pub q0: T,
    pub w: T,
    pub beta: T,
    pub ellbar: T,
    pub c0: T,
    /// Energy term of order ℓ̄; zero by the choice of β.
    pub c1: T,
    /// Potential jet at `q0` up to second order.
    pub v: [T; 3],
}

impl<T: Real> LeadingOrder<T> {
    /// `(2β+1)/2 + (nᵣ+½)w`, which the shift makes vanish.
    pub fn c1_identity_residual(&self, prec: Precision) -> T {
        let half = T::from_f64(0.5, prec);
        let two = T::from_i64(2, prec);
        let nr_half = T::from_i64(self.state.nr as i64, prec) + &half;
        (two * &self.beta + T::one()) * &half + nr_half * &self.w
    }

    /// `q₀³V'(q₀) − ℓ̄²`.
    pub fn radius_residual(&self) -> T {
        self.q0.powi(3) * &self.v[1] - self.ellbar.clone() * &self.ellbar
    }
}

struct Geometry<T> {
    g: T,
}

fn geometry<T: Real>(pot: &PotentialExpr, state: &QuantumState, q: &T, prec: Precision) -> Result<Option<Geometry<T>>> {
    let j = jet(pot, q, 2, prec)?;
    let (v1, v2) = (&j.derivs[1], &j.derivs[2]);
    if *v1 <= T::zero() {
        return Ok(None);
    }
    let w2 = T::from_i64(3, prec) + q.clone() * v2 / v1;
    if w2 <= T::zero() {
        return Ok(None);
    }
    let half = T::from_f64(0.5, prec);
    let target = T::from_i64(state.ell as i64, prec)
        + &half
        + (T::from_i64(state.nr as i64, prec) + &half) * w2.sqrt();
    let g = q.powi(3) * v1 - target.clone() * &target;
    Ok(Some(Geometry { g }))
}

/// Solves the leading-order geometry for `state` in potential `pot`.
pub fn solve_leading<T: Real>(pot: &PotentialExpr, state: &QuantumState, prec: Precision) -> Result<LeadingOrder<T>> {
    let bits = T::effective_bits(prec);
    let lo_bound = T::parse_decimal("1e-6", prec).expect("literal");
    let hi_bound = T::parse_decimal("1e9", prec).expect("literal");
    let factor = T::from_i64(2, prec);

    // geometric scan for the first sign change of g over valid points
    let mut bracket = None;
    let mut prev: Option<(T, T)> = None;
    let mut q = lo_bound;
    while q <= hi_bound {
        let point = match geometry(pot, state, &q, prec) {
            Ok(Some(geo)) => Some(geo.g),
            Ok(None) | Err(Error::SingularPoint { .. }) => None,
            Err(e) => return Err(e),
        };
        match (point, prev.take()) {
            (Some(g), Some((pq, pg))) => {
                if g.is_zero() || g.signum_i() != pg.signum_i() {
                    bracket = Some((pq, q.clone()));
                    break;
                }
                prev = Some((q.clone(), g));
            }
            (Some(g), None) => prev = Some((q.clone(), g)),
            (None, _) => prev = None,
        }
        q *= &factor;
    }
    let (lo, hi) = bracket.ok_or(Error::NoBinding)?;

    let tol = T::exp2_neg(bits.saturating_sub(6), prec);
    let q0 = try_find_root(
        |q: &T| match geometry(pot, state, q, prec)? {
            Some(geo) => Ok(geo.g),
            None => Err(Error::ComplexFrequency {
                q0: q.to_string(),
                w2: "undefined".into(),
            }),
        },
        lo,
        hi,
        tol,
    )
    .map_err(Error::from)?;

    let j = jet(pot, &q0, 2, prec)?;
    let [v0, v1, v2]: [T; 3] = j.derivs.try_into().expect("jet of order 2");
    let w2 = T::from_i64(3, prec) + q0.clone() * &v2 / &v1;
    if w2 <= T::zero() {
        return Err(Error::ComplexFrequency {
            q0: q0.to_string(),
            w2: w2.to_string(),
        });
    }
    let w = w2.sqrt();
    let half = T::from_f64(0.5, prec);
    let beta = -(T::one() + T::from_i64(2 * state.nr as i64 + 1, prec) * &w) * &half;
    let ellbar = T::from_i64(state.ell as i64, prec) - &beta;
    let c0 = ellbar.clone() * &ellbar / (T::from_i64(2, prec) * &q0 * &q0) + &v0;
    if !(q0 > T::zero() && ellbar > T::zero()) {
        return Err(Error::NoBinding);
    }
    Ok(LeadingOrder {
        state: state.clone(),
        q0,
        w,
        beta,
        ellbar,
        c0,
        c1: T::zero(),
        v: [v0, v1, v2],
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::{ToPrimitive, Zero};
    use crate::numeric::BigFloat;
    use crate::potential::parse_potential;

    fn prec() -> Precision {
        Precision::default()
    }

    fn tiny(exp10: i32) -> BigFloat {
        BigFloat::parse_decimal(&format!("1e{exp10}"), prec()).unwrap()
    }

    #[test]
    fn labels() {
        let s = QuantumState::from_label("4s").unwrap();
        assert_eq!((s.ell, s.nr), (0, 3));
        let s = QuantumState::from_label("11s").unwrap();
        assert_eq!((s.ell, s.nr), (0, 10));
        let s = QuantumState::from_label("5f").unwrap();
        assert_eq!((s.ell, s.nr), (3, 1));
        let s = QuantumState::from_label("9k").unwrap();
        assert_eq!((s.ell, s.nr), (7, 1));
        assert!(QuantumState::from_label("2d").is_err());
        assert!(QuantumState::from_label("9l").is_err());
        assert!(QuantumState::from_label("s").is_err());
        assert!(QuantumState::from_label("4").is_err());
        assert_eq!(QuantumState::from_label("6s").unwrap().principal(), 6);
    }

    #[test]
    fn coulomb_4s() {
        let pot = parse_potential("-1/r").unwrap();
        let lead: LeadingOrder<BigFloat> = solve_leading(&pot, &QuantumState::new(0, 3), prec()).unwrap();
        let c = |v: f64| BigFloat::from_f64(v, prec());
        assert!((lead.w.clone() - c(1.0)).abs() < tiny(-40));
        assert!((lead.beta.clone() + c(4.0)).abs() < tiny(-40));
        assert!((lead.ellbar.clone() - c(4.0)).abs() < tiny(-40));
        assert!((lead.q0.clone() - c(16.0)).abs() < tiny(-35));
        assert!((lead.c0.clone() + c(1.0 / 32.0)).abs() < tiny(-30));
    }

    #[test]
    fn harmonic_l2_nr1() {
        let pot = parse_potential("r^2/2").unwrap();
        let lead: LeadingOrder<BigFloat> = solve_leading(&pot, &QuantumState::new(2, 1), prec()).unwrap();
        let c = |v: f64| BigFloat::from_f64(v, prec());
        assert!((lead.w.clone() - c(2.0)).abs() < tiny(-40));
        assert!((lead.beta.clone() + c(3.5)).abs() < tiny(-40));
        assert!((lead.ellbar.clone() - c(5.5)).abs() < tiny(-40));
        assert!((lead.q0.clone() - c(5.5).sqrt()).abs() < tiny(-40));
        assert!((lead.c0.clone() - c(5.5)).abs() < tiny(-30));
    }

    #[test]
    fn truncated_coulomb_l1_nr10() {
        let pot = parse_potential("-1/(r+10)").unwrap();
        let lead: LeadingOrder<BigFloat> = solve_leading(&pot, &QuantumState::new(1, 10), prec()).unwrap();
        let c0 = lead.c0.to_f64().unwrap();
        assert_eq!(format!("{:.5}", -c0), "0.00283");
        // residual contract
        let l2 = lead.ellbar.clone() * &lead.ellbar;
        assert!(lead.radius_residual().abs() <= l2 * tiny(-48));
    }

    #[test]
    fn shift_identity_is_exact() {
        let pot = parse_potential("-1/(r+10)").unwrap();
        for nr in [0, 3, 10] {
            let lead: LeadingOrder<BigFloat> = solve_leading(&pot, &QuantumState::new(0, nr), prec()).unwrap();
            assert!(lead.c1_identity_residual(prec()).abs() <= tiny(-55));
            assert!(lead.c1.is_zero());
        }
    }

    #[test]
    fn frequency_relation() {
        let pot = parse_potential("-1/(r+10)").unwrap();
        let lead: LeadingOrder<BigFloat> = solve_leading(&pot, &QuantumState::new(3, 10), prec()).unwrap();
        let w2 = BigFloat::from_i64(3, prec()) + lead.q0.clone() * &lead.v[2] / &lead.v[1];
        assert!((lead.w.clone() * &lead.w - w2).abs() <= tiny(-55));
    }

    #[test]
    fn no_binding_for_repulsive() {
        let pot = parse_potential("1/r").unwrap();
        assert_eq!(
            solve_leading::<f64>(&pot, &QuantumState::new(0, 0), prec()).unwrap_err(),
            Error::NoBinding
        );
    }

    #[test]
    fn f64_instantiation_agrees() {
        let pot = parse_potential("-1/(r+10)").unwrap();
        let state = QuantumState::new(0, 3);
        let a: LeadingOrder<f64> = solve_leading(&pot, &state, prec()).unwrap();
        let b: LeadingOrder<BigFloat> = solve_leading(&pot, &state, prec()).unwrap();
        assert!((a.c0 - b.c0.to_f64().unwrap()).abs() < 1e-15);
        assert!((a.q0 / b.q0.to_f64().unwrap() - 1.0).abs() < 1e-12);
    }
}
