//! Direct finite-difference eigensolver used as ground truth.
//!
//! `−½u″ + [ℓ(ℓ+1)/(2r²) + V]u = Eu` on `(r_min, r_max)` with `u = 0` at both
//! ends is discretized by three-point differences; the resulting symmetric
//! tridiagonal matrix is bisected with Sturm counts. Two grids (`h` and `h/2`)
//! give a Richardson-extrapolated energy and an error estimate.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::leading::{solve_leading, LeadingOrder, QuantumState};
use crate::numeric::{find_root, Precision, Real};
use crate::potential::{jet, PotentialExpr};

pub const MIN_POINTS: usize = 1000;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GridConfig {
    pub r_max: f64,
    pub points: usize,
    #[serde(default)]
    pub r_min: f64,
}

impl GridConfig {
    pub fn new(r_max: f64, points: usize) -> Self {
        GridConfig {
            r_max,
            points,
            r_min: 0.0,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.points < MIN_POINTS {
            return Err(Error::InvalidGrid(format!("{} points, need at least {MIN_POINTS}", self.points)));
        }
        if !(self.r_max > 0.0 && self.r_min >= 0.0 && self.r_min < self.r_max && self.r_max.is_finite()) {
            return Err(Error::InvalidGrid(format!(
                "domain ({}, {}) is not a positive interval",
                self.r_min, self.r_max
            )));
        }
        Ok(())
    }

    /// Same domain, half the step.
    pub fn refined(&self) -> Self {
        GridConfig {
            points: 2 * self.points + 1,
            ..*self
        }
    }

    pub fn step(&self) -> f64 {
        (self.r_max - self.r_min) / (self.points + 1) as f64
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OracleResult {
    pub energy: f64,
    pub nodes: u32,
    pub grid: GridConfig,
    pub richardson_error: f64,
}

/// Symmetric tridiagonal matrix with constant off-diagonal.
struct Tridiagonal {
    diag: Vec<f64>,
    off: f64,
}

fn discretize(pot: &PotentialExpr, ell: u32, grid: &GridConfig) -> Result<Tridiagonal> {
    let prec = Precision::default();
    let h = grid.step();
    let kinetic = 1.0 / (h * h);
    let centrifugal = (ell as f64) * (ell as f64 + 1.0) / 2.0;
    let diag = (1..=grid.points)
        .map(|i| {
            let r = grid.r_min + i as f64 * h;
            let v: f64 = pot.eval(&r, prec)?;
            Ok(kinetic + centrifugal / (r * r) + v)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Tridiagonal {
        diag,
        off: -0.5 * kinetic,
    })
}

impl Tridiagonal {
    /// Number of eigenvalues strictly below `x`.
    fn count_below(&self, x: f64) -> usize {
        let e2 = self.off * self.off;
        let tiny = f64::MIN_POSITIVE.sqrt() * self.off.abs().max(1.0);
        let mut count = 0;
        let mut q = 1.0;
        for (i, d) in self.diag.iter().enumerate() {
            q = if i == 0 { d - x } else { d - x - e2 / q };
            if q == 0.0 {
                q = -tiny;
            }
            if q < 0.0 {
                count += 1;
            }
        }
        count
    }

    fn gershgorin(&self) -> (f64, f64) {
        let r = 2.0 * self.off.abs();
        let lo = self.diag.iter().copied().fold(f64::INFINITY, f64::min) - r;
        let hi = self.diag.iter().copied().fold(f64::NEG_INFINITY, f64::max) + r;
        (lo, hi)
    }

    /// `index`-th eigenvalue (0-based) inside `(lo, hi)` by bisection.
    fn eigenvalue(&self, index: usize, mut lo: f64, mut hi: f64) -> f64 {
        for _ in 0..200 {
            let mid = 0.5 * (lo + hi);
            if mid <= lo || mid >= hi {
                break;
            }
            if self.count_below(mid) > index {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        0.5 * (lo + hi)
    }

    /// Eigenvector for a converged eigenvalue by inverse iteration.
    fn eigenvector(&self, lambda: f64) -> Vec<f64> {
        let n = self.diag.len();
        let mut x = vec![1.0; n];
        for _ in 0..3 {
            x = self.shifted_solve(lambda, &x);
            let norm = x.iter().map(|v| v * v).sum::<f64>().sqrt();
            x.iter_mut().for_each(|v| *v /= norm);
        }
        x
    }

    /// Solves `(T − λ)y = b` by LU with partial pivoting.
    fn shifted_solve(&self, lambda: f64, b: &[f64]) -> Vec<f64> {
        let n = self.diag.len();
        let eps = f64::EPSILON * self.off.abs().max(1.0);
        // row i of U holds (u0, u1, u2) on columns i, i+1, i+2
        let mut u = vec![[0.0; 3]; n];
        let mut y = b.to_vec();
        let mut cur = [self.diag[0] - lambda, self.off, 0.0];
        for i in 0..n {
            if i + 1 == n {
                u[i] = cur;
                break;
            }
            let below = [self.off, self.diag[i + 1] - lambda, if i + 2 < n { self.off } else { 0.0 }];
            // candidate rows: `cur` covers columns i..i+2, `below` covers i..i+2 too
            let (pivot_row, other, swap) = if below[0].abs() > cur[0].abs() {
                (below, cur, true)
            } else {
                (cur, below, false)
            };
            if swap {
                y.swap(i, i + 1);
            }
            let p = if pivot_row[0] == 0.0 { eps } else { pivot_row[0] };
            let l = other[0] / p;
            u[i] = [p, pivot_row[1], pivot_row[2]];
            y[i + 1] -= l * y[i];
            cur = [other[1] - l * pivot_row[1], other[2] - l * pivot_row[2], 0.0];
        }
        if u[n - 1][0] == 0.0 {
            u[n - 1][0] = eps;
        }
        let mut x = vec![0.0; n];
        for i in (0..n).rev() {
            let mut acc = y[i];
            if i + 1 < n {
                acc -= u[i][1] * x[i + 1];
            }
            if i + 2 < n {
                acc -= u[i][2] * x[i + 2];
            }
            x[i] = acc / u[i][0];
        }
        x
    }
}

/// Interior sign changes, ignoring components below `1e-10·max|v|`.
pub fn count_nodes(v: &[f64]) -> u32 {
    let max = v.iter().fold(0.0f64, |m, x| m.max(x.abs()));
    let floor = 1e-10 * max;
    let mut last = 0.0f64;
    let mut nodes = 0;
    for &x in v.iter().filter(|x| x.abs() > floor) {
        if last != 0.0 && x.signum() != last.signum() {
            nodes += 1;
        }
        last = x;
    }
    nodes
}

struct Level {
    energy: f64,
    nodes: u32,
}

fn solve_grid(pot: &PotentialExpr, state: &QuantumState, grid: &GridConfig) -> Result<Level> {
    let t = discretize(pot, state.ell, grid)?;
    let r = grid.r_max;
    let edge: f64 = pot.eval(&r, Precision::default())?;
    let edge = edge + (state.ell as f64) * (state.ell as f64 + 1.0) / (2.0 * r * r);
    let need = state.nr as usize + 1;
    let found = t.count_below(edge);
    if found < need {
        return Err(Error::NoBoundState { need, found, edge });
    }
    let (lo, _) = t.gershgorin();
    let energy = t.eigenvalue(state.nr as usize, lo, edge);
    let nodes = count_nodes(&t.eigenvector(energy));
    if nodes != state.nr {
        return Err(Error::NodeMismatch {
            expected: state.nr as usize,
            found: nodes as usize,
        });
    }
    Ok(Level { energy, nodes })
}

/// Eigenvalue of the `nr`-th level of partial wave `ℓ`, Richardson-extrapolated
/// from `grid` and its refinement.
pub fn oracle_eigenvalue(pot: &PotentialExpr, state: &QuantumState, grid: &GridConfig) -> Result<OracleResult> {
    grid.validate()?;
    let fine_grid = grid.refined();
    let (coarse, fine) = rayon::join(
        || solve_grid(pot, state, grid),
        || solve_grid(pot, state, &fine_grid),
    );
    let (coarse, fine) = (coarse?, fine?);
    // O(h²) discretization: E ≈ E_fine + (E_fine − E_coarse)/3
    let correction = (fine.energy - coarse.energy) / 3.0;
    Ok(OracleResult {
        energy: fine.energy + correction,
        nodes: fine.nodes,
        grid: *grid,
        richardson_error: correction.abs(),
    })
}

/// Grid sized from the leading-order geometry: six times the outer classical
/// turning point at `c₀` (at least 50), and a step with `h²|V″(q₀)| ≤ 10⁻⁸`
/// (at least 20000 points).
pub fn auto_grid(pot: &PotentialExpr, state: &QuantumState) -> Result<GridConfig> {
    let prec = Precision::default();
    let lead: LeadingOrder<f64> = solve_leading(pot, state, prec)?;
    let cent = (state.ell as f64) * (state.ell as f64 + 1.0) / 2.0;
    let excess = |r: &f64| -> f64 {
        let v: f64 = pot.eval(r, prec).unwrap_or(f64::INFINITY);
        cent / (r * r) + v - lead.c0
    };
    let mut outer = lead.q0;
    let mut turning = None;
    for _ in 0..80 {
        let next = outer * 1.5;
        if excess(&next) > 0.0 {
            turning = find_root(excess, outer, next, 1e-12 * next).ok();
            break;
        }
        outer = next;
    }
    let turning = turning.unwrap_or(outer);
    let r_max = (6.0 * turning).max(50.0);

    let v2 = jet(pot, &lead.q0, 2, prec)?.derivs[2].abs();
    let points = ((r_max * (v2 * 1e8).sqrt()).ceil() as usize).max(20_000);
    Ok(GridConfig::new(r_max, points))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::potential::parse_potential;

    fn pot(s: &str) -> PotentialExpr {
        parse_potential(s).unwrap()
    }

    #[test]
    fn coulomb_four_s_fixed_grid() {
        let r = oracle_eigenvalue(&pot("-1/r"), &QuantumState::new(0, 3), &GridConfig::new(400.0, 40_000)).unwrap();
        assert!((r.energy + 0.03125).abs() < 1e-7, "{}", r.energy);
        assert_eq!(r.nodes, 3);
        assert!(r.richardson_error < 1e-6);
    }

    #[test]
    fn coulomb_three_s_auto_grid() {
        let p = pot("-1/r");
        let st = QuantumState::from_label("3s").unwrap();
        let g = auto_grid(&p, &st).unwrap();
        let r = oracle_eigenvalue(&p, &st, &g).unwrap();
        assert!((r.energy + 1.0 / 18.0).abs() < 1e-7, "{}", r.energy);
    }

    #[test]
    fn harmonic_levels() {
        let p = pot("r^2/2");
        for (ell, nr) in [(0, 0), (2, 1)] {
            let st = QuantumState::new(ell, nr);
            let r = oracle_eigenvalue(&p, &st, &auto_grid(&p, &st).unwrap()).unwrap();
            let exact = 2.0 * nr as f64 + ell as f64 + 1.5;
            assert!((r.energy - exact).abs() < 1e-7, "{} vs {exact}", r.energy);
        }
    }

    #[test]
    fn variational_ordering_in_nr() {
        let p = pot("-1/(r+10)");
        let g = GridConfig::new(3000.0, 20_000);
        let e: Vec<f64> = (0..4)
            .map(|nr| oracle_eigenvalue(&p, &QuantumState::new(1, nr), &g).unwrap().energy)
            .collect();
        assert!(e.windows(2).all(|w| w[0] < w[1]), "{e:?}");
    }

    #[test]
    fn truncation_ordering_in_alpha() {
        let st = QuantumState::new(0, 1);
        let g = GridConfig::new(600.0, 20_000);
        let e: Vec<f64> = ["0.5", "1", "2", "5"]
            .iter()
            .map(|a| oracle_eigenvalue(&pot(&format!("-1/(r+{a})")), &st, &g).unwrap().energy)
            .collect();
        assert!(e.windows(2).all(|w| w[0] < w[1]), "{e:?}");
    }

    #[test]
    fn grid_convergence_matches_error_estimate() {
        let p = pot("-1/(r+10)");
        let st = QuantumState::from_label("4s").unwrap();
        let g = auto_grid(&p, &st).unwrap();
        let a = oracle_eigenvalue(&p, &st, &g).unwrap();
        let b = oracle_eigenvalue(&p, &st, &g.refined()).unwrap();
        assert!((a.energy - b.energy).abs() < 4.0 * a.richardson_error.max(1e-12));
        assert!((a.energy + 0.011638).abs() < 2e-6);
    }

    #[test]
    fn auto_grid_examples() {
        let g = auto_grid(&pot("-1/r"), &QuantumState::new(0, 3)).unwrap();
        assert!(g.r_max >= 192.0 - 1e-6 && g.r_max < 200.0, "{}", g.r_max);
        let g = auto_grid(&pot("r^2/2"), &QuantumState::new(0, 0)).unwrap();
        assert!(g.r_max >= 6.0 * 3f64.sqrt());
        assert!(g.points >= 20_000);
        let p = pot("-1/(r+10)");
        let st = QuantumState::from_label("11s").unwrap();
        let lead: LeadingOrder<f64> = solve_leading(&p, &st, Precision::default()).unwrap();
        assert!(lead.q0 < auto_grid(&p, &st).unwrap().r_max / 3.0);
    }

    #[test]
    fn box_too_small() {
        let err = oracle_eigenvalue(&pot("-1/r"), &QuantumState::new(0, 10), &GridConfig::new(50.0, 5000)).unwrap_err();
        assert!(matches!(err, Error::NoBoundState { need: 11, .. }), "{err:?}");
    }

    #[test]
    fn invalid_grids() {
        let st = QuantumState::new(0, 0);
        for g in [GridConfig::new(100.0, 10), GridConfig::new(-1.0, 5000)] {
            assert!(matches!(oracle_eigenvalue(&pot("-1/r"), &st, &g), Err(Error::InvalidGrid(_))));
        }
    }

    #[test]
    fn node_counting() {
        assert_eq!(count_nodes(&[0.0, 1.0, 2.0, -1.0, -3.0, 4.0, 0.0]), 2);
        // sub-threshold noise in the tail is not a node
        assert_eq!(count_nodes(&[1.0, 0.5, 1e-14, -1e-14, 1e-15]), 0);
    }

    #[test]
    fn shifted_solve_inverts() {
        let t = Tridiagonal {
            diag: vec![2.0, 0.1, 3.0, -1.0, 4.0],
            off: -0.7,
        };
        let b = [1.0, -2.0, 0.5, 3.0, 1.0];
        let x = t.shifted_solve(0.3, &b);
        for i in 0..5 {
            let mut ax = (t.diag[i] - 0.3) * x[i];
            if i > 0 {
                ax += t.off * x[i - 1];
            }
            if i < 4 {
                ax += t.off * x[i + 1];
            }
            assert!((ax - b[i]).abs() < 1e-12, "row {i}");
        }
    }
}
