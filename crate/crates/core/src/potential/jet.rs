use crate::error::{Error, Result};
use crate::numeric::{Precision, Real};
use crate::potential::expr::{literal, Expr, PotentialExpr};

/// Extra mantissa bits carried while propagating Taylor coefficients; the
/// derivatives are rounded back to the working precision at the end.
pub const JET_GUARD_BITS: u32 = 32;

/// Derivatives `V(r₀), V'(r₀), …, V⁽ᴷ⁾(r₀)` at a single radius.
#[derive(Debug, Clone, PartialEq)]
pub struct Jet<T> {
    pub base_point: T,
    pub derivs: Vec<T>,
}

impl<T: Real> Jet<T> {
    /// Highest derivative order held.
    pub fn order(&self) -> usize {
        self.derivs.len().saturating_sub(1)
    }

    /// Taylor polynomial of the jet evaluated at `base_point + h`.
    pub fn taylor_eval(&self, h: &T, prec: Precision) -> T {
        let mut acc = T::zero();
        for k in (0..self.derivs.len()).rev() {
            let coef = self.derivs[k].clone() / T::factorial(k as u32, prec);
            acc = acc * h + coef;
        }
        acc
    }
}

// Normalised Taylor coefficients a_k = f^(k)(r0)/k!.
type Series<T> = Vec<T>;

fn constant<T: Real>(c: T, len: usize) -> Series<T> {
    let mut s = vec![T::zero(); len];
    s[0] = c;
    s
}

fn mul_series<T: Real>(a: &Series<T>, b: &Series<T>) -> Series<T> {
    let n = a.len();
    (0..n)
        .map(|k| {
            let mut acc = T::zero();
            for i in 0..=k {
                if a[i].is_zero() || b[k - i].is_zero() {
                    continue;
                }
                acc += a[i].clone() * &b[k - i];
            }
            acc
        })
        .collect()
}

fn div_series<T: Real>(a: &Series<T>, b: &Series<T>, at: &T) -> Result<Series<T>> {
    if b[0].is_zero() {
        return Err(Error::SingularPoint { at: at.to_string() });
    }
    let n = a.len();
    let mut c: Series<T> = Vec::with_capacity(n);
    for k in 0..n {
        let mut acc = a[k].clone();
        for i in 1..=k {
            if b[i].is_zero() {
                continue;
            }
            acc -= b[i].clone() * &c[k - i];
        }
        c.push(acc / &b[0]);
    }
    Ok(c)
}

fn pow_series<T: Real>(base: &Series<T>, n: i32, at: &T, prec: Precision) -> Result<Series<T>> {
    let len = base.len();
    let mut result = constant(T::from_i64(1, prec), len);
    let mut square = base.clone();
    let mut e = n.unsigned_abs();
    while e > 0 {
        if e & 1 == 1 {
            result = mul_series(&result, &square);
        }
        e >>= 1;
        if e > 0 {
            square = mul_series(&square, &square);
        }
    }
    if n < 0 {
        let one = constant(T::from_i64(1, prec), len);
        return div_series(&one, &result, at);
    }
    Ok(result)
}

fn series_of<T: Real>(e: &Expr, r: &T, len: usize, prec: Precision) -> Result<Series<T>> {
    Ok(match e {
        Expr::Num(text) => constant(literal(text, prec)?, len),
        Expr::R => {
            let mut s = constant(r.clone(), len);
            if len > 1 {
                s[1] = T::from_i64(1, prec);
            }
            s
        }
        Expr::Neg(a) => series_of(a, r, len, prec)?.into_iter().map(|v| -v).collect(),
        Expr::Add(a, b) => {
            let (x, y) = (series_of(a, r, len, prec)?, series_of(b, r, len, prec)?);
            x.into_iter().zip(y).map(|(p, q)| p + q).collect()
        }
        Expr::Sub(a, b) => {
            let (x, y) = (series_of(a, r, len, prec)?, series_of(b, r, len, prec)?);
            x.into_iter().zip(y).map(|(p, q)| p - q).collect()
        }
        Expr::Mul(a, b) => mul_series(&series_of(a, r, len, prec)?, &series_of(b, r, len, prec)?),
        Expr::Div(a, b) => div_series(&series_of(a, r, len, prec)?, &series_of(b, r, len, prec)?, r)?,
        Expr::Pow(a, n) => pow_series(&series_of(a, r, len, prec)?, *n, r, prec)?,
    })
}

/// Derivatives of the expression at `r` up to order `k_max`, by exact
/// propagation of Taylor coefficients through the tree.
pub fn jet<T: Real>(expr: &PotentialExpr, r: &T, k_max: usize, prec: Precision) -> Result<Jet<T>> {
    let wide = prec.widened(JET_GUARD_BITS);
    let r_wide = r.with_precision(wide);
    let coeffs = series_of(expr.root(), &r_wide, k_max + 1, wide)?;
    let mut derivs = Vec::with_capacity(k_max + 1);
    let mut fact = T::from_i64(1, wide);
    for (k, c) in coeffs.into_iter().enumerate() {
        if k > 0 {
            fact *= T::from_i64(k as i64, wide);
        }
        derivs.push((c * &fact).with_precision(prec));
    }
    Ok(Jet {
        base_point: r.clone(),
        derivs,
    })
}

/// Closed-form jet of `V(r) = -1/(r + alpha)`:
/// `V⁽ᵏ⁾(r) = (-1)^(k+1) k! (r + alpha)^(-(k+1))`.
pub fn truncated_coulomb_jet<T: Real>(alpha: &T, r: &T, k_max: usize, prec: Precision) -> Result<Jet<T>> {
    let wide = prec.widened(JET_GUARD_BITS);
    let shifted = r.with_precision(wide) + alpha.with_precision(wide);
    if shifted <= T::zero() {
        return Err(Error::SingularPoint { at: r.to_string() });
    }
    let inv = T::from_i64(1, wide) / shifted;
    let mut derivs = Vec::with_capacity(k_max + 1);
    // (-1)^(k+1) k! inv^(k+1), built incrementally
    let mut term = -inv.clone();
    for k in 0..=k_max {
        if k > 0 {
            term = -(term * T::from_i64(k as i64, wide) * &inv);
        }
        derivs.push(term.with_precision(prec));
    }
    Ok(Jet {
        base_point: r.clone(),
        derivs,
    })
}
