use crate::error::{Error, Result};
use crate::numeric::real::{Precision, Real};

/// Solves `A x = b` by Gaussian elimination with partial pivoting.
///
/// A pivot smaller than `2^(-bits/2)` times the largest entry of `A` is
/// reported as [`Error::SingularMatrix`].
pub fn solve_linear<T: Real>(a: &[Vec<T>], b: &[T], prec: Precision) -> Result<Vec<T>> {
    let n = b.len();
    if a.len() != n || a.iter().any(|row| row.len() != n) {
        return Err(Error::Dimension(format!(
            "matrix is {}x{}, right-hand side has {} entries",
            a.len(),
            a.first().map_or(0, Vec::len),
            n
        )));
    }
    if n == 0 {
        return Ok(Vec::new());
    }

    let mut m: Vec<Vec<T>> = a.to_vec();
    let mut rhs: Vec<T> = b.to_vec();

    let scale = m
        .iter()
        .flatten()
        .map(Real::abs)
        .fold(T::zero(), T::max_of);
    let bits = T::effective_bits(prec);
    let threshold = scale.clone() * T::exp2_neg(bits / 2, prec);

    for col in 0..n {
        let (pivot_row, pivot_abs) = (col..n)
            .map(|r| (r, m[r][col].abs()))
            .fold((col, T::zero()), |best, cand| if cand.1 > best.1 { cand } else { best });
        if pivot_abs <= threshold {
            let rel = if scale.is_zero() {
                0.0
            } else {
                (pivot_abs / &scale).to_f64().unwrap_or(0.0)
            };
            return Err(Error::SingularMatrix { column: col, pivot: rel });
        }
        m.swap(col, pivot_row);
        rhs.swap(col, pivot_row);

        for r in (col + 1)..n {
            if m[r][col].is_zero() {
                continue;
            }
            let factor = m[r][col].clone() / &m[col][col];
            #[allow(clippy::needless_range_loop)]
            for c in col..n {
                let delta = factor.clone() * &m[col][c];
                m[r][c] -= delta;
            }
            let delta = factor * &rhs[col];
            rhs[r] -= delta;
        }
    }

    let mut x = vec![T::zero(); n];
    for row in (0..n).rev() {
        let mut acc = rhs[row].clone();
        for c in (row + 1)..n {
            acc -= m[row][c].clone() * &x[c];
        }
        x[row] = acc / &m[row][row];
    }
    Ok(x)
}

#[cfg(test)]
mod tests {
    use super::*;
    #[allow(unused_imports)]
    use num_traits::{One, ToPrimitive, Zero};
    use crate::numeric::BigFloat;

    fn big(v: f64) -> BigFloat {
        BigFloat::from_f64(v, Precision::default())
    }

    #[test]
    fn identity_system() {
        let a = vec![vec![1.0, 0.0], vec![0.0, 1.0]];
        let x = solve_linear(&a, &[3.0, 5.0], Precision::default()).unwrap();
        assert_eq!(x, vec![3.0, 5.0]);
    }

    #[test]
    fn diagonal_system() {
        let a = vec![vec![big(2.0), big(0.0)], vec![big(0.0), big(4.0)]];
        let x = solve_linear(&a, &[big(2.0), big(8.0)], Precision::default()).unwrap();
        assert_eq!(x, vec![big(1.0), big(2.0)]);
    }

    #[test]
    fn hilbert_round_trip() {
        let prec = Precision::default();
        let n = 8;
        let a: Vec<Vec<BigFloat>> = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| BigFloat::one() / BigFloat::from_i64((i + j + 1) as i64, prec))
                    .collect()
            })
            .collect();
        let b: Vec<BigFloat> = a
            .iter()
            .map(|row| row.iter().fold(BigFloat::zero(), |s, v| s + v))
            .collect();
        let x = solve_linear(&a, &b, prec).unwrap();
        let tol = big(1e-20);
        for xi in &x {
            assert!((xi.clone() - BigFloat::one()).abs() <= tol, "{xi}");
        }
        // residual bound from the contract
        let bnorm = b.iter().map(Real::abs).fold(BigFloat::zero(), BigFloat::max_of);
        let bound = bnorm * BigFloat::exp2_neg(48, prec);
        for (row, bi) in a.iter().zip(&b) {
            let ax = row.iter().zip(&x).fold(BigFloat::zero(), |s, (aij, xj)| s + aij.clone() * xj);
            assert!((ax - bi).abs() <= bound);
        }
    }

    #[test]
    fn singular_detected() {
        let a = vec![vec![1.0, 2.0], vec![2.0, 4.0]];
        let err = solve_linear(&a, &[1.0, 2.0], Precision::default()).unwrap_err();
        assert!(matches!(err, Error::SingularMatrix { column: 1, .. }));
    }

    #[test]
    fn pivoting_handles_zero_leading_entry() {
        let a = vec![vec![0.0, 1.0], vec![1.0, 0.0]];
        let x = solve_linear(&a, &[2.0, 3.0], Precision::default()).unwrap();
        assert_eq!(x, vec![3.0, 2.0]);
    }

    #[test]
    fn shape_mismatch() {
        let a = vec![vec![1.0, 0.0]];
        assert!(matches!(
            solve_linear(&a, &[1.0, 2.0], Precision::default()),
            Err(Error::Dimension(_))
        ));
    }
}
