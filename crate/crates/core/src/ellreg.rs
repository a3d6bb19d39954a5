//! Elliptic regulator integrals by quadrature.
//!
//! For the curve `y^2 = x(x-1)(x-lambda)` the integral of `log|x|` against
//! the normalized invariant volume form is computed on the uniformizing
//! torus: periods come from the arithmetic-geometric mean applied to the
//! branch values, the coordinate is recovered from the Weierstrass function
//! (Laurent series plus duplication), and the integral is a midpoint rule in
//! lattice coordinates with recursive refinement around the two logarithmic
//! singularities (the pole of x and its double zero).

use num_complex::Complex64;
use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum EllRegError {
    #[error("lambda = {0} is a degenerate parameter (0 or 1)")]
    DegenerateLambda(Complex64),
    #[error("tolerance {0} is below the supported 1e-6")]
    ToleranceTooTight(f64),
    #[error("no period basis reproduced the branch values (residual {0:.2e})")]
    DegenerateLattice(f64),
    #[error("quadrature did not converge to {requested:.1e}; best two-resolution difference {achieved:.1e}")]
    NonConvergence { requested: f64, achieved: f64 },
}

/// Uniformization data for `y^2 = x(x-1)(x-lambda)`.
#[derive(Debug, Clone)]
pub struct EllipticParams {
    pub lambda: Complex64,
    /// Lattice basis with `Im(omega2/omega1) > 0`.
    pub periods: (Complex64, Complex64),
    /// Weierstrass half-period values `e1, e2, e3` (the shifted branch
    /// values).
    pub branch_values: [Complex64; 3],
    /// `x(z) = scale * wp(z) + shift` maps the branch values to 0, 1, lambda.
    pub scale: Complex64,
    pub shift: Complex64,
    g2: Complex64,
    g3: Complex64,
    /// Shortest nonzero lattice length (for series scaling).
    rho: f64,
    /// Torus coordinates of the double zero of x.
    zero_uv: (f64, f64),
}

/// Quadrature output.
#[derive(Debug, Clone, Serialize)]
pub struct IntegralResult {
    pub value: f64,
    /// Two-resolution error estimate.
    pub error_estimate: f64,
    /// Final grid resolution per axis.
    pub grid: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct FunctionalEquationReport {
    pub i_lambda: f64,
    pub i_inverse: f64,
    pub log_abs_lambda: f64,
    pub residual: f64,
    pub pass: bool,
}

/// Optimal-branch complex arithmetic-geometric mean.
fn agm(mut a: Complex64, mut b: Complex64) -> Complex64 {
    for _ in 0..100 {
        if (a - b).norm() <= 1e-15 * a.norm().max(1e-300) {
            break;
        }
        let a1 = (a + b) * 0.5;
        let mut b1 = (a * b).sqrt();
        let d = (a1 - b1).norm();
        let s = (a1 + b1).norm();
        if d > s || ((d - s).abs() < 1e-14 * a1.norm() && (b1 / a1).im < 0.0) {
            b1 = -b1;
        }
        a = a1;
        b = b1;
    }
    (a + b) * 0.5
}

fn close(a: Complex64, b: Complex64, tol: f64) -> bool {
    (a - b).norm() <= tol
}

pub fn uniformize(lambda: Complex64) -> Result<EllipticParams, EllRegError> {
    if close(lambda, Complex64::new(0.0, 0.0), 1e-12)
        || close(lambda, Complex64::new(1.0, 0.0), 1e-12)
    {
        return Err(EllRegError::DegenerateLambda(lambda));
    }
    let one = Complex64::new(1.0, 0.0);
    let shift = (one + lambda) / 3.0;
    let roots = [-shift, one - shift, lambda - shift];
    // invariants of y^2 = prod (x - r_i) with sum r_i = 0
    let p = roots[0] * roots[1] + roots[0] * roots[2] + roots[1] * roots[2];
    let q = -(roots[0] * roots[1] * roots[2]);
    let g2 = -4.0 * p;
    let g3 = -4.0 * q;

    // one period candidate per base root
    let mut candidates = [Complex64::default(); 3];
    for c in 0..3 {
        let others: Vec<Complex64> = (0..3).filter(|&k| k != c).map(|k| roots[k]).collect();
        let m = agm((roots[c] - others[0]).sqrt(), (roots[c] - others[1]).sqrt());
        candidates[c] = Complex64::new(std::f64::consts::PI, 0.0) / m;
    }

    let scale_len = roots.iter().map(|r| r.norm()).fold(1.0_f64, f64::max);
    let mut best: Option<(f64, Complex64, Complex64)> = None;
    for i in 0..3 {
        for j in 0..3 {
            if i == j {
                continue;
            }
            let w1 = candidates[i];
            let mut w2 = candidates[j];
            let tau = w2 / w1;
            if tau.im.abs() < 1e-9 {
                continue;
            }
            if tau.im < 0.0 {
                w2 = -w2;
            }
            let params = EllipticParams {
                lambda,
                periods: (w1, w2),
                branch_values: roots,
                scale: one,
                shift,
                g2,
                g3,
                rho: lattice_min(w1, w2),
                zero_uv: (0.0, 0.0),
            };
            // half-period values must reproduce the branch values as a set
            let halves = [w1 * 0.5, w2 * 0.5, (w1 + w2) * 0.5];
            let mut err = 0.0_f64;
            for h in halves {
                let v = wp(&params, h);
                let d = roots
                    .iter()
                    .map(|r| (v - r).norm())
                    .fold(f64::INFINITY, f64::min);
                err += d;
            }
            if best.as_ref().is_none_or(|(e, _, _)| err < *e) {
                best = Some((err, w1, w2));
            }
        }
    }
    let (err, w1, w2) = best.ok_or(EllRegError::DegenerateLattice(f64::INFINITY))?;
    if err > 1e-10 * scale_len.max(1.0) {
        return Err(EllRegError::DegenerateLattice(err));
    }
    let mut params = EllipticParams {
        lambda,
        periods: (w1, w2),
        branch_values: roots,
        scale: one,
        shift,
        g2,
        g3,
        rho: lattice_min(w1, w2),
        zero_uv: (0.0, 0.0),
    };
    // locate the double zero of x = wp + shift among the half periods
    let halves = [(0.5, 0.0), (0.0, 0.5), (0.5, 0.5)];
    let zero_uv = halves
        .into_iter()
        .min_by(|&a, &b| {
            let xa = x_at(&params, a.0, a.1).norm();
            let xb = x_at(&params, b.0, b.1).norm();
            xa.partial_cmp(&xb).unwrap()
        })
        .unwrap();
    params.zero_uv = zero_uv;
    Ok(params)
}

fn lattice_min(w1: Complex64, w2: Complex64) -> f64 {
    [w1, w2, w1 + w2, w1 - w2]
        .iter()
        .map(|w| w.norm())
        .fold(f64::INFINITY, f64::min)
}

/// Weierstrass function on the lattice of `params`.
pub fn wp(params: &EllipticParams, z: Complex64) -> Complex64 {
    let (w1, w2) = params.periods;
    // reduce to the centered fundamental cell
    let det = w1.re * w2.im - w1.im * w2.re;
    let u = (z.re * w2.im - z.im * w2.re) / det;
    let v = (z.im * w1.re - z.re * w1.im) / det;
    let mut zz = (u - u.round()) * w1 + (v - v.round()) * w2;
    for du in -1i32..=1 {
        for dv in -1i32..=1 {
            let cand = zz + (du as f64) * w1 + (dv as f64) * w2;
            if cand.norm() < zz.norm() {
                zz = cand;
            }
        }
    }
    let mut halvings = 0;
    while zz.norm() > 0.35 * params.rho && halvings < 64 {
        zz *= 0.5;
        halvings += 1;
    }
    // Laurent coefficients of wp at 0
    let mut c = [Complex64::default(); 12];
    c[2] = params.g2 / 20.0;
    c[3] = params.g3 / 28.0;
    for m in 4..12 {
        let mut acc = Complex64::default();
        for h in 2..=(m - 2) {
            acc += c[h] * c[m - h];
        }
        c[m] = acc * (3.0 / ((2 * m + 1) as f64 * (m as f64 - 3.0)));
    }
    let z2 = zz * zz;
    let mut w = 1.0 / z2;
    let mut t = z2;
    for coef in c.iter().skip(2) {
        w += coef * t;
        t *= z2;
    }
    // duplication back up
    for _ in 0..halvings {
        let num = 6.0 * w * w - params.g2 * 0.5;
        let den = 4.0 * (4.0 * w * w * w - params.g2 * w - params.g3);
        w = -2.0 * w + num * num / den;
    }
    w
}

/// The rational coordinate x at torus coordinates (u, v).
pub fn x_at(params: &EllipticParams, u: f64, v: f64) -> Complex64 {
    let z = u * params.periods.0 + v * params.periods.1;
    params.scale * wp(params, z) + params.shift
}

fn torus_dist(a: f64, b: f64) -> f64 {
    let d = (a - b).rem_euclid(1.0);
    d.min(1.0 - d)
}

fn cell_integral(params: &EllipticParams, u0: f64, v0: f64, h: f64, depth: usize) -> f64 {
    let um = u0 + 0.5 * h;
    let vm = v0 + 0.5 * h;
    let near_singular = [(0.0, 0.0), params.zero_uv].iter().any(|&(su, sv)| {
        torus_dist(um, su).max(torus_dist(vm, sv)) < 1.5 * h
    });
    if near_singular && depth > 0 {
        let h2 = 0.5 * h;
        return cell_integral(params, u0, v0, h2, depth - 1)
            + cell_integral(params, u0 + h2, v0, h2, depth - 1)
            + cell_integral(params, u0, v0 + h2, h2, depth - 1)
            + cell_integral(params, u0 + h2, v0 + h2, h2, depth - 1);
    }
    x_at(params, um, vm).norm().ln() * h * h
}

/// Midpoint quadrature at a fixed per-axis resolution, with recursive
/// refinement of cells near the singular points.
pub fn integral_at_resolution(params: &EllipticParams, n_grid: usize, depth: usize) -> f64 {
    let h = 1.0 / n_grid as f64;
    let mut total = 0.0;
    for iu in 0..n_grid {
        for iv in 0..n_grid {
            total += cell_integral(params, iu as f64 * h, iv as f64 * h, h, depth);
        }
    }
    total
}

const REFINE_DEPTH: usize = 24;

/// The regulator integral of `log|x|` against the unit-volume invariant
/// form, with a two-resolution error estimate at most `tol`.
pub fn regulator_integral(lambda: Complex64, tol: f64) -> Result<IntegralResult, EllRegError> {
    if tol < 1e-6 {
        return Err(EllRegError::ToleranceTooTight(tol));
    }
    let params = uniformize(lambda)?;
    let mut n_grid = 32usize;
    let mut prev = integral_at_resolution(&params, n_grid, REFINE_DEPTH);
    let mut best_diff = f64::INFINITY;
    while n_grid <= 1024 {
        n_grid *= 2;
        let cur = integral_at_resolution(&params, n_grid, REFINE_DEPTH);
        let diff = (cur - prev).abs();
        best_diff = best_diff.min(diff);
        if diff < 0.5 * tol {
            return Ok(IntegralResult {
                value: cur,
                error_estimate: diff.max(1e-14),
                grid: n_grid,
            });
        }
        prev = cur;
    }
    Err(EllRegError::NonConvergence {
        requested: tol,
        achieved: best_diff,
    })
}

/// Verify `I(lambda) = log|lambda| + I(1/lambda)` numerically.
pub fn functional_equation_check(
    lambda: Complex64,
    tol: f64,
) -> Result<FunctionalEquationReport, EllRegError> {
    let a = regulator_integral(lambda, tol)?;
    let b = regulator_integral(1.0 / lambda, tol)?;
    let log_abs = lambda.norm().ln();
    let residual = (a.value - b.value - log_abs).abs();
    Ok(FunctionalEquationReport {
        i_lambda: a.value,
        i_inverse: b.value,
        log_abs_lambda: log_abs,
        residual,
        pass: residual < 5.0 * tol,
    })
}

/// Check that `scale * lattice(a)` and `lattice(b)` agree: the change of
/// basis must be integral with determinant +-1.
pub fn lattices_equivalent(a: &EllipticParams, b: &EllipticParams, scale: Complex64) -> bool {
    let (b1, b2) = b.periods;
    let det = b1.re * b2.im - b1.im * b2.re;
    let coords = |z: Complex64| -> (f64, f64) {
        (
            (z.re * b2.im - z.im * b2.re) / det,
            (z.im * b1.re - z.re * b1.im) / det,
        )
    };
    let (m11, m12) = coords(scale * a.periods.0);
    let (m21, m22) = coords(scale * a.periods.1);
    let near_int = |x: f64| (x - x.round()).abs() < 1e-8;
    if !(near_int(m11) && near_int(m12) && near_int(m21) && near_int(m22)) {
        return false;
    }
    let d = m11.round() * m22.round() - m12.round() * m21.round();
    (d.abs() - 1.0).abs() < 1e-8
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn uniformize_self_check_holds() {
        // branch values at the half periods reproduce {0, 1, lambda}
        for lambda in [
            c(2.0, 0.0),
            c(0.5, 0.0),
            c(4.0, 0.0),
            c(10.0, 0.0),
            c(3.0, 1.0),
            c(-1.5, 0.7),
            c(0.3, -0.1),
        ] {
            let p = uniformize(lambda).unwrap();
            let one = c(1.0, 0.0);
            let targets = [c(0.0, 0.0), one, lambda];
            let halves = [(0.5, 0.0), (0.0, 0.5), (0.5, 0.5)];
            for (u, v) in halves {
                let x = x_at(&p, u, v);
                let d = targets
                    .iter()
                    .map(|t| (x - t).norm())
                    .fold(f64::INFINITY, f64::min);
                assert!(d < 1e-9, "lambda={lambda} half ({u},{v}) off by {d:e}");
            }
            assert!((p.periods.1 / p.periods.0).im > 0.0);
        }
    }

    #[test]
    fn uniformize_rejects_degenerate_lambda() {
        assert!(matches!(
            uniformize(c(0.0, 0.0)),
            Err(EllRegError::DegenerateLambda(_))
        ));
        assert!(matches!(
            uniformize(c(1.0, 0.0)),
            Err(EllRegError::DegenerateLambda(_))
        ));
    }

    #[test]
    fn random_lambdas_pass_the_half_period_check() {
        // deterministic pseudo-random sample of 20 parameters
        let mut state = 0x9e3779b97f4a7c15u64;
        let mut next = move || {
            state ^= state << 13;
            state ^= state >> 7;
            state ^= state << 17;
            (state >> 11) as f64 / (1u64 << 53) as f64
        };
        for _ in 0..20 {
            let lambda = c(4.0 * next() - 2.0, 4.0 * next() - 2.0);
            if lambda.norm() < 0.1 || (lambda - c(1.0, 0.0)).norm() < 0.1 {
                continue;
            }
            uniformize(lambda).unwrap();
        }
    }

    #[test]
    fn inverse_lambda_gives_scaled_lattice() {
        for lambda in [c(2.0, 0.0), c(4.0, 0.0), c(3.0, 1.0)] {
            let a = uniformize(lambda).unwrap();
            let b = uniformize(1.0 / lambda).unwrap();
            let s = lambda.sqrt();
            assert!(
                lattices_equivalent(&a, &b, s) || lattices_equivalent(&a, &b, -s),
                "lambda={lambda}"
            );
        }
    }

    #[test]
    fn integral_is_real_and_finite_inside_unit_interval() {
        let r = regulator_integral(c(0.5, 0.0), 1e-3).unwrap();
        assert!(r.value.is_finite());
        assert!(r.error_estimate <= 1e-3);
    }

    #[test]
    fn functional_equation_at_two() {
        let rep = functional_equation_check(c(2.0, 0.0), 1e-3).unwrap();
        assert!(rep.pass, "{rep:?}");
        assert!((rep.i_lambda - rep.i_inverse - 2.0_f64.ln()).abs() < 5e-3);
    }

    #[test]
    fn unit_modulus_case() {
        // |lambda| = 1: the functional equation degenerates to
        // I(lambda) = I(1/lambda)
        let lambda = c(0.6, 0.8);
        let rep = functional_equation_check(lambda, 1e-3).unwrap();
        assert!(rep.log_abs_lambda.abs() < 1e-12);
        assert!(rep.pass, "{rep:?}");
    }

    #[test]
    fn tolerance_precondition() {
        assert!(matches!(
            regulator_integral(c(2.0, 0.0), 1e-9),
            Err(EllRegError::ToleranceTooTight(_))
        ));
    }
}
