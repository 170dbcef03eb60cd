//! Cross-module properties of the series, resummation and oracle.

use num_traits::ToPrimitive;
use proptest::prelude::*;
use pslet::analysis::{analyze, SolveOptions};
use pslet::oracle::{auto_grid, oracle_eigenvalue};
use pslet::resum::pade_staircase;
use pslet::{energy_series, parse_potential, BigFloat, EnergySeries64, EnergySeriesMp, Precision, QuantumState};

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn coulomb_series_exact_for_any_state(ell in 0u32..8, nr in 0u32..8, z in 1u32..4) {
        let pot = parse_potential(&format!("-{z}/r")).unwrap();
        let p = Precision::default();
        let s: EnergySeriesMp = energy_series(&pot, &QuantumState::new(ell, nr), 12, p).unwrap();
        let n = (ell + nr + 1) as f64;
        let exact = -((z * z) as f64) / (2.0 * n * n);
        for e in &s.partials {
            prop_assert!((e.to_f64().unwrap() - exact).abs() < 1e-15 * exact.abs());
        }
        let st = pade_staircase(&s, 5);
        for e in &st.entries {
            prop_assert!((e.value.to_f64().unwrap() - exact).abs() < 1e-15 * exact.abs());
        }
    }

    #[test]
    fn double_and_multiprecision_agree(ell in 0u32..4, nr in 0u32..4) {
        let pot = parse_potential("-1/(r+10)").unwrap();
        let st = QuantumState::new(ell, nr);
        let p = Precision::default();
        let lo: EnergySeries64 = energy_series(&pot, &st, 10, p).unwrap();
        let hi: EnergySeriesMp = energy_series(&pot, &st, 10, p).unwrap();
        let (a, b) = (lo.partials[10], hi.partials[10].to_f64().unwrap());
        // the recursion loses a few digits in double precision
        prop_assert!((a - b).abs() <= 1e-9 * b.abs(), "{a} vs {b}");
    }
}

#[test]
fn pade_tracks_oracle_for_low_states() {
    let pot = parse_potential("-1/(r+2)").unwrap();
    for (ell, nr) in [(2, 0), (3, 1), (5, 2)] {
        let st = QuantumState::new(ell, nr);
        let a = analyze::<BigFloat>(&pot, &st, &SolveOptions::default()).unwrap();
        let o = oracle_eigenvalue(&pot, &st, &auto_grid(&pot, &st).unwrap()).unwrap();
        let best = a.staircase.best.unwrap().to_f64().unwrap();
        assert!((best - o.energy).abs() < 1e-6, "ℓ={ell} nr={nr}: {best} vs {}", o.energy);
    }
}

#[test]
fn oracle_levels_increase_with_nodes() {
    let pot = parse_potential("-1/(r+10)").unwrap();
    let energies: Vec<f64> = (0..4)
        .map(|nr| {
            let st = QuantumState::new(0, nr);
            oracle_eigenvalue(&pot, &st, &auto_grid(&pot, &st).unwrap()).unwrap().energy
        })
        .collect();
    assert!(energies.windows(2).all(|w| w[0] < w[1]), "{energies:?}");
}
