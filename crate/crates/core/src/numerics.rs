//! Scalar abstraction and the small set of 1-D numerical routines the
//! exponent code is built on: golden-section maximization of concave
//! functions, a bracketed bisection/secant root finder, binary entropy and
//! its inverse, and grid helpers.

use std::fmt::{Debug, Display};
use std::iter::Sum;

use num_traits::{Float, FloatConst, FromPrimitive, ToPrimitive};

use crate::error::{Error, Result};

/// Floating point scalar used throughout the crate (`f32` or `f64`).
pub trait Real:
    Float + FloatConst + FromPrimitive + ToPrimitive + Sum + Debug + Display + Send + Sync + 'static
{
    /// Tolerance used when validating that probability tables sum to one.
    ///
    /// `1e-12` for `f64`, scaled up to what the type can resolve otherwise.
    fn prob_tol() -> Self {
        let floor = Self::epsilon() * lit(4096.0);
        lit::<Self>(1e-12).max(floor)
    }
}

impl Real for f32 {}
impl Real for f64 {}

/// Converts an `f64` constant into `T`.
#[inline]
pub fn lit<T: Real>(x: f64) -> T {
    T::from_f64(x).expect("constant representable in scalar type")
}

/// Golden ratio conjugate, (sqrt(5) - 1) / 2.
const INV_PHI: f64 = 0.618_033_988_749_894_9;

/// Maximizes a concave (or unimodal) `f` on `[lo, hi]`.
///
/// Runs golden-section search until the bracket is narrower than `tol` and
/// then compares the interior candidate with both endpoints explicitly, so
/// boundary optima are returned exactly. Returns `(argmax, max)`.
pub fn maximize_unimodal<T: Real>(f: impl Fn(T) -> T, lo: T, hi: T, tol: T) -> (T, T) {
    debug_assert!(lo <= hi);
    let inv_phi = lit::<T>(INV_PHI);
    let mut a = lo;
    let mut b = hi;
    let mut x1 = b - inv_phi * (b - a);
    let mut x2 = a + inv_phi * (b - a);
    let mut f1 = f(x1);
    let mut f2 = f(x2);
    for _ in 0..300 {
        if b - a <= tol {
            break;
        }
        if f1 < f2 {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + inv_phi * (b - a);
            f2 = f(x2);
        } else {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - inv_phi * (b - a);
            f1 = f(x1);
        }
    }
    let (mut best_x, mut best_f) = if f1 >= f2 { (x1, f1) } else { (x2, f2) };
    for x in [lo, hi] {
        let fx = f(x);
        if fx > best_f {
            best_x = x;
            best_f = fx;
        }
    }
    (best_x, best_f)
}

/// Finds a root of `f` in `[lo, hi]` where `f(lo)` and `f(hi)` differ in sign.
///
/// Illinois-modified regula falsi with a bisection step whenever the secant
/// estimate fails to shrink the bracket by half. Stops when the bracket is
/// narrower than `tol` or `f` vanishes exactly.
pub fn bracketed_root<T: Real>(f: impl Fn(T) -> T, lo: T, hi: T, tol: T) -> Result<T> {
    let mut a = lo;
    let mut b = hi;
    let mut fa = f(a);
    let mut fb = f(b);
    if fa == T::zero() {
        return Ok(a);
    }
    if fb == T::zero() {
        return Ok(b);
    }
    if fa.signum() == fb.signum() || fa.is_nan() || fb.is_nan() {
        return Err(Error::Domain(format!(
            "root not bracketed on [{lo}, {hi}]: f(lo) = {fa}, f(hi) = {fb}"
        )));
    }
    let half = lit::<T>(0.5);
    // side of the last replaced endpoint: -1 = a, 1 = b
    let mut side = 0i8;
    for _ in 0..500 {
        let width = b - a;
        if width.abs() <= tol {
            break;
        }
        let mut c = (a * fb - b * fa) / (fb - fa);
        if !(c > a && c < b) {
            c = a + half * width;
        }
        let fc = f(c);
        if fc == T::zero() {
            return Ok(c);
        }
        if fc.signum() == fa.signum() {
            a = c;
            fa = fc;
            if side == -1 {
                fb = fb * half;
            }
            side = -1;
        } else {
            b = c;
            fb = fc;
            if side == 1 {
                fa = fa * half;
            }
            side = 1;
        }
        // guarantee geometric shrinkage
        if (b - a).abs() > half * width.abs() {
            let m = a + half * (b - a);
            let fm = f(m);
            if fm == T::zero() {
                return Ok(m);
            }
            if fm.signum() == fa.signum() {
                a = m;
                fa = fm;
            } else {
                b = m;
                fb = fm;
            }
            side = 0;
        }
    }
    Ok(if fa.abs() < fb.abs() { a } else { b })
}

/// `x log x` with the convention `0 log 0 = 0`.
#[inline]
pub fn xlogx<T: Real>(x: T) -> T {
    if x <= T::zero() {
        T::zero()
    } else {
        x * x.ln()
    }
}

/// Binary entropy in nats.
pub fn binary_entropy_nats<T: Real>(p: T) -> T {
    -xlogx(p) - xlogx(T::one() - p)
}

/// Binary entropy in bits.
pub fn binary_entropy_bits<T: Real>(p: T) -> T {
    binary_entropy_nats(p) / T::LN_2()
}

/// Inverse of the binary entropy (bits) on the branch `[0, 1/2]`.
///
/// Bisection with 80 halvings; inputs outside `[0, 1]` are clamped.
pub fn inverse_binary_entropy_bits<T: Real>(y: T) -> T {
    let half = lit::<T>(0.5);
    if y <= T::zero() {
        return T::zero();
    }
    if y >= T::one() {
        return half;
    }
    let mut lo = T::zero();
    let mut hi = half;
    for _ in 0..80 {
        let mid = half * (lo + hi);
        if binary_entropy_bits(mid) < y {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    half * (lo + hi)
}

/// `points` evenly spaced values from `start` to `stop` inclusive.
pub fn linspace<T: Real>(start: T, stop: T, points: usize) -> Vec<T> {
    match points {
        0 => Vec::new(),
        1 => vec![start],
        _ => {
            let step = (stop - start) / T::from_usize(points - 1).unwrap();
            (0..points)
                .map(|i| {
                    if i == points - 1 {
                        stop
                    } else {
                        start + step * T::from_usize(i).unwrap()
                    }
                })
                .collect()
        }
    }
}

/// `points` log-spaced values from `start` to `stop` inclusive (both > 0).
pub fn logspace<T: Real>(start: T, stop: T, points: usize) -> Vec<T> {
    let mut v: Vec<T> = linspace(start.ln(), stop.ln(), points)
        .into_iter()
        .map(Float::exp)
        .collect();
    if let Some(first) = v.first_mut() {
        *first = start;
    }
    if points > 1 {
        if let Some(last) = v.last_mut() {
            *last = stop;
        }
    }
    v
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn golden_section_interior_and_boundary() {
        let (x, fx) = maximize_unimodal(|x: f64| -(x - 0.3) * (x - 0.3), 0.0, 1.0, 1e-10);
        assert!((x - 0.3).abs() < 1e-8);
        assert!(fx.abs() < 1e-15);

        // increasing function: optimum is the right endpoint, exactly
        let (x, _) = maximize_unimodal(|x: f64| x, 0.0, 1.0, 1e-9);
        assert_eq!(x, 1.0);
        let (x, _) = maximize_unimodal(|x: f64| -x, 0.0, 1.0, 1e-9);
        assert_eq!(x, 0.0);
    }

    #[test]
    fn root_finder_converges() {
        let r = bracketed_root(|x: f64| x * x - 2.0, 0.0, 3.0, 1e-14).unwrap();
        assert!((r - 2f64.sqrt()).abs() < 1e-12);
        let r = bracketed_root(|x: f64| (x - 1.0).powi(3), -5.0, 10.0, 1e-12).unwrap();
        assert!((r - 1.0).abs() < 1e-6);
        assert!(bracketed_root(|x: f64| x * x + 1.0, -1.0, 1.0, 1e-9).is_err());
    }

    #[test]
    fn binary_entropy_values() {
        assert_eq!(binary_entropy_bits(0.0f64), 0.0);
        assert!((binary_entropy_bits(0.5f64) - 1.0).abs() < 1e-15);
        // H_B(0.11) ~ 0.4999 bits
        assert!((binary_entropy_bits(0.11f64) - 0.499_915_958_164_528_2).abs() < 1e-12);
    }

    #[test]
    fn inverse_binary_entropy_round_trip() {
        for i in 0..=200 {
            let y = i as f64 / 200.0;
            let p = inverse_binary_entropy_bits(y);
            assert!((0.0..=0.5).contains(&p));
            assert!((binary_entropy_bits(p) - y).abs() < 1e-10, "y = {y}");
        }
    }

    #[test]
    fn grids() {
        let g = logspace(1e-3f64, 10.0, 5);
        assert_eq!(g[0], 1e-3);
        assert_eq!(g[4], 10.0);
        assert!((g[1] - 1e-2).abs() < 1e-15);
        assert_eq!(linspace(0.0f64, 1.0, 1), vec![0.0]);
        assert_eq!(linspace(0.0f64, 1.0, 3), vec![0.0, 0.5, 1.0]);
    }

    #[test]
    fn works_in_single_precision() {
        let (x, _) = maximize_unimodal(|x: f32| -(x - 0.25) * (x - 0.25), 0.0, 1.0, 1e-6);
        assert!((x - 0.25).abs() < 1e-3);
        assert!(f32::prob_tol() > 1e-12);
        assert_eq!(f64::prob_tol(), 1e-12);
    }
}
