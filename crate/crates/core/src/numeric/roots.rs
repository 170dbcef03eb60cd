use std::convert::Infallible;

use crate::error::{Error, Result};
use crate::numeric::real::Real;

/// Bracketed root of `f` on `[lo, hi]`, see [`try_find_root`].
pub fn find_root<T: Real>(mut f: impl FnMut(&T) -> T, lo: T, hi: T, tol: T) -> Result<T> {
    try_find_root(|x| Ok::<T, Infallible>(f(x)), lo, hi, tol).map_err(|e| match e {
        RootError::Solver(e) => e,
        RootError::Callback(never) => match never {},
    })
}

/// Failure of a fallible root search: either the solver or the callback.
#[derive(Debug)]
pub enum RootError<E> {
    Solver(Error),
    Callback(E),
}

impl From<RootError<Error>> for Error {
    fn from(e: RootError<Error>) -> Self {
        match e {
            RootError::Solver(e) | RootError::Callback(e) => e,
        }
    }
}

/// Regula falsi with the Illinois modification, falling back to bisection
/// whenever the bracket fails to halve over three consecutive steps.
///
/// Stops when `|f(x)| <= tol` or the bracket is narrower than
/// `tol * max(1, |x|)`.
pub fn try_find_root<T: Real, E>(
    mut f: impl FnMut(&T) -> std::result::Result<T, E>,
    lo: T,
    hi: T,
    tol: T,
) -> std::result::Result<T, RootError<E>> {
    let (mut a, mut b) = if lo <= hi { (lo, hi) } else { (hi, lo) };
    let mut fa = f(&a).map_err(RootError::Callback)?;
    let mut fb = f(&b).map_err(RootError::Callback)?;
    if fa.is_zero() {
        return Ok(a);
    }
    if fb.is_zero() {
        return Ok(b);
    }
    if fa.signum_i() == fb.signum_i() {
        return Err(RootError::Solver(Error::NoBracket));
    }

    let two = T::one() + T::one();
    let mut width_history = vec![(b.clone() - &a).abs()];
    // which end was retained last time, for the Illinois down-weighting
    let mut last_kept: Option<bool> = None;

    for _ in 0..4000 {
        let width = (b.clone() - &a).abs();
        let stalled = width_history.len() >= 4
            && width.clone() * &two > width_history[width_history.len() - 4];
        let mut x = if stalled {
            (a.clone() + &b) / &two
        } else {
            (a.clone() * &fb - b.clone() * &fa) / (fb.clone() - &fa)
        };
        if !(x > a && x < b) {
            x = (a.clone() + &b) / &two;
        }
        let fx = f(&x).map_err(RootError::Callback)?;
        if fx.abs() <= tol {
            return Ok(x);
        }
        if fx.signum_i() == fa.signum_i() {
            a = x;
            fa = fx;
            if last_kept == Some(true) {
                fb /= &two;
            }
            last_kept = Some(true);
        } else {
            b = x;
            fb = fx;
            if last_kept == Some(false) {
                fa /= &two;
            }
            last_kept = Some(false);
        }
        let width = (b.clone() - &a).abs();
        let mid = (a.clone() + &b) / &two;
        let scale = T::max_of(T::one(), mid.abs());
        if width <= tol.clone() * scale {
            return Ok(if fa.abs() < fb.abs() { a } else { b });
        }
        width_history.push(width);
    }
    Ok(if fa.abs() < fb.abs() { a } else { b })
}
