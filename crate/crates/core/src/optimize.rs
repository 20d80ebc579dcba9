//! One-dimensional maximization of unimodal functions.

use crate::scalar::{lit, Real};

/// Result of a bracketed scalar search.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScalarOptimum<S> {
    pub x: S,
    pub value: S,
    pub evaluations: usize,
}

/// Maximizes a unimodal `f` on `[lo, hi]` by golden-section search with
/// parabolic acceleration (Brent's method).
///
/// Stops when the bracket around the best point is narrower than roughly
/// `2·(tol + √ε·|x|)`. Endpoints are never evaluated.
pub fn maximize_unimodal<S: Real>(mut f: impl FnMut(S) -> S, lo: S, hi: S, tol: S) -> ScalarOptimum<S> {
    let half: S = lit(0.5);
    let golden: S = lit(0.381_966_011_250_105_1); // (3 − √5) / 2
    let sqrt_eps = S::epsilon().sqrt();
    let (mut a, mut b) = (lo.min(hi), lo.max(hi));
    let mut evaluations = 0;
    // Minimize the negation.
    let mut g = |x: S| {
        evaluations += 1;
        let v = -f(x);
        if v.is_nan() {
            S::infinity()
        } else {
            v
        }
    };

    let mut x = a + golden * (b - a);
    let (mut w, mut v) = (x, x);
    let mut fx = g(x);
    let (mut fw, mut fv) = (fx, fx);
    let mut d = S::zero();
    let mut e = S::zero();

    loop {
        let m = half * (a + b);
        let tol1 = sqrt_eps * x.abs() + tol / lit(3.0);
        let tol2 = tol1 + tol1;
        if (x - m).abs() <= tol2 - half * (b - a) {
            break;
        }
        let mut use_golden = true;
        if e.abs() > tol1 {
            let mut r = (x - w) * (fx - fv);
            let mut q = (x - v) * (fx - fw);
            let mut p = (x - v) * q - (x - w) * r;
            q = (q - r) + (q - r);
            if q > S::zero() {
                p = -p;
            } else {
                q = -q;
            }
            r = e;
            e = d;
            if p.abs() < (half * q * r).abs() && p > q * (a - x) && p < q * (b - x) {
                d = p / q;
                let u = x + d;
                if u - a < tol2 || b - u < tol2 {
                    d = if x < m { tol1 } else { -tol1 };
                }
                use_golden = false;
            }
        }
        if use_golden {
            e = if x < m { b - x } else { a - x };
            d = golden * e;
        }
        let u = if d.abs() >= tol1 {
            x + d
        } else if d > S::zero() {
            x + tol1
        } else {
            x - tol1
        };
        let fu = g(u);
        if fu <= fx {
            if u < x {
                b = x;
            } else {
                a = x;
            }
            v = w;
            fv = fw;
            w = x;
            fw = fx;
            x = u;
            fx = fu;
        } else {
            if u < x {
                a = u;
            } else {
                b = u;
            }
            if fu <= fw || w == x {
                v = w;
                fv = fw;
                w = u;
                fw = fu;
            } else if fu <= fv || v == x || v == w {
                v = u;
                fv = fu;
            }
        }
    }
    ScalarOptimum {
        x,
        value: -fx,
        evaluations,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn finds_parabola_peak() {
        let opt = maximize_unimodal(|x: f64| -(x - 1.3) * (x - 1.3), -5.0, 5.0, 1e-8);
        assert!((opt.x - 1.3).abs() < 1e-7);
        assert!(opt.evaluations < 40);
    }

    #[test]
    fn non_smooth_unimodal() {
        let opt = maximize_unimodal(|x: f64| -(x - 0.2).abs(), -1.0, 3.0, 1e-9);
        assert!((opt.x - 0.2).abs() < 1e-7);
    }

    #[test]
    fn monotone_runs_to_the_edge() {
        let opt = maximize_unimodal(|x: f64| x, 0.0, 1.0, 1e-6);
        assert!(opt.x > 1.0 - 1e-5);
    }

    #[test]
    fn f32_search() {
        let opt = maximize_unimodal(|x: f32| -(x - 2.0).powi(2), 0.0, 4.0, 1e-4);
        assert!((opt.x - 2.0).abs() < 1e-3);
    }
}
