//! Two independent estimators of the regulator integral: the production grid
//! quadrature and a plain Monte Carlo mean over the torus.

use num_complex::Complex64;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use cycleforge::ellreg::{integral_at_resolution, regulator_integral, uniformize, x_at};

#[test]
fn grid_and_monte_carlo_agree_at_two() {
    let tol = 1e-3;
    let lambda = Complex64::new(2.0, 0.0);
    let grid = regulator_integral(lambda, tol).unwrap();
    let params = uniformize(lambda).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let samples = 4_000_000usize;
    let mut total = 0.0f64;
    for _ in 0..samples {
        let u: f64 = rng.random();
        let v: f64 = rng.random();
        total += x_at(&params, u, v).norm().ln();
    }
    let mc = total / samples as f64;
    assert!(
        (grid.value - mc).abs() < 3.0 * tol,
        "grid {} vs monte carlo {}",
        grid.value,
        mc
    );
}

#[test]
fn halving_the_mesh_stays_within_the_reported_estimate() {
    for lambda in [
        Complex64::new(2.0, 0.0),
        Complex64::new(4.0, 0.0),
        Complex64::new(10.0, 0.0),
        Complex64::new(3.0, 1.0),
    ] {
        let tol = 1e-3;
        let result = regulator_integral(lambda, tol).unwrap();
        let params = uniformize(lambda).unwrap();
        let finer = integral_at_resolution(&params, result.grid * 2, 24);
        assert!(
            (finer - result.value).abs() <= result.error_estimate,
            "lambda={lambda}: refinement moved {} vs estimate {}",
            (finer - result.value).abs(),
            result.error_estimate
        );
    }
}
