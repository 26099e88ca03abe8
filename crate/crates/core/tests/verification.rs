//! Deterministic numerical verification against frozen reference values
//! (high-precision closed-form evaluations and an independently
//! implemented eigensolver), plus the heavier convergence and quadrature
//! checks.

use coriolis_core::{
    commutator_deviation, convergence_study, discretize_hamiltonian, eigenfunction,
    eigensolve_lowest, energy_level, evolve_time_dependent, guiding_center, hermite_function,
    kinetic_momentum_matrices, ladder_commutator_deviation, ladder_hamiltonian_deviation,
    ladder_matrices, log_log_slope, oscillator_scaling, overlap, EvolveMethod, FrameParams, Grid1D,
    QuantumNumbers, RotationGenerator, Vec3, ELECTRON_MASS,
};

fn defaults() -> FrameParams {
    FrameParams::new(ELECTRON_MASS, 1e11).unwrap()
}

/// SI grid spanning the guiding center plus/minus `half_widths` coriolis
/// radii.
fn si_grid(params: &FrameParams, k_y: f64, half_widths: f64, n: usize) -> Grid1D {
    let x0 = guiding_center(params, k_y);
    let w = half_widths * params.coriolis_radius();
    Grid1D::new(x0 - w, x0 + w, n).unwrap()
}

/// Finite-difference eigenvalues at N=4000 on a +-12 box, frozen from an
/// independent solver. The distance to n + 1/2 is pure second-order
/// stencil truncation, `(h^2/24) <p^4>_n` to leading order.
const FD_LEVELS_N4000: [f64; 6] = [
    0.499_998_874_430_148_45,
    1.499_994_372_168_136_6,
    2.499_985_367_600_593,
    3.499_971_860_705_912_3,
    4.499_953_851_451_689,
    5.499_931_339_805_514,
];

#[test]
fn fd_spectrum_at_reference_settings_matches_frozen_values() {
    let params = defaults();
    let matrix = discretize_hamiltonian(&params, 0.0, 4000, 12.0).unwrap();
    let eig = eigensolve_lowest(&matrix, 6).unwrap();
    for (n, (&got, want)) in eig.values.iter().zip(FD_LEVELS_N4000).enumerate() {
        assert!(
            (got - want).abs() < 1e-10,
            "level {n}: {got:.17e} vs frozen {want:.17e}"
        );
    }
    for &r in &eig.residuals {
        assert!(r < 1e-10, "residual {r:e}");
    }
    // orthonormal in the grid measure
    let h = matrix.grid.spacing();
    for i in 0..6 {
        for j in 0..=i {
            let dot: f64 = eig.vectors[i]
                .iter()
                .zip(&eig.vectors[j])
                .map(|(a, b)| a * b * h)
                .sum();
            let want = if i == j { 1.0 } else { 0.0 };
            assert!((dot - want).abs() < 1e-8, "({i},{j}) dot {dot}");
        }
    }
    // fidelity against the sampled analytic eigenfunctions
    for n in 0..6 {
        let fidelity = overlap(&eig.vectors[n], &matrix.grid, n).unwrap();
        assert!(fidelity > 0.9999, "level {n}: overlap {fidelity}");
        assert!(
            1.0 - fidelity < 1e-8,
            "level {n}: defect {:e}",
            1.0 - fidelity
        );
    }
    // SI energies inherit exactly the dimensionless relative error
    let si = eig.energies_si();
    for (n, &si_energy) in si.iter().enumerate() {
        let exact = energy_level(&params, n as i64).unwrap();
        let rel_si = si_energy / exact - 1.0;
        let rel_eps = eig.values[n] / (n as f64 + 0.5) - 1.0;
        assert!(
            (rel_si - rel_eps).abs() < 1e-12,
            "level {n}: SI {rel_si:e} vs eps {rel_eps:e}"
        );
    }
}

#[test]
fn commutator_deviation_matches_frozen_values_and_order() {
    let params = defaults();
    let sizes = [64usize, 128, 256, 512];
    let frozen = [4.793_452e-2, 1.224_753e-2, 3.066_299e-3, 7.653_421e-4];
    let mut devs = Vec::new();
    for (&n, &want) in sizes.iter().zip(&frozen) {
        let grid = si_grid(&params, 0.0, 10.0, n);
        let ops = kinetic_momentum_matrices(&params, &grid, 0.0).unwrap();
        let dev = commutator_deviation(&ops);
        assert!(
            (dev / want - 1.0).abs() < 1e-6,
            "N={n}: {dev:.9e} vs {want:.9e}"
        );
        devs.push(dev);
    }
    assert!(devs[3] < 1e-3, "N=512 deviation {:e}", devs[3]);
    let spacings: Vec<f64> = sizes.iter().map(|&n| 20.0 / (n - 1) as f64).collect();
    let slope = log_log_slope(&spacings, &devs).unwrap();
    assert!((slope - 2.0).abs() < 0.2, "slope {slope}");
    assert!(
        (slope - 1.977_488_155_068_680_3).abs() < 1e-6,
        "slope {slope:.17}"
    );
}

#[test]
fn ladder_identities_match_frozen_values_and_order() {
    let params = defaults();
    let sizes = [64usize, 128, 256, 512];
    let frozen_comm = [4.793_452e-2, 1.224_753e-2, 3.066_299e-3, 7.653_421e-4];
    let frozen_ham = [1.479_680e-2, 3.964_772e-3, 1.000_849e-3, 2.508_455e-4];
    let mut ham_devs = Vec::new();
    for ((&n, &want_comm), &want_ham) in sizes.iter().zip(&frozen_comm).zip(&frozen_ham) {
        let grid = si_grid(&params, 0.0, 10.0, n);
        let ops = ladder_matrices(&params, &grid, 0.0).unwrap();
        let dev_comm = ladder_commutator_deviation(&ops);
        let dev_ham = ladder_hamiltonian_deviation(&ops);
        assert!(
            (dev_comm / want_comm - 1.0).abs() < 1e-6,
            "N={n}: [a,a+] {dev_comm:.9e} vs {want_comm:.9e}"
        );
        assert!(
            (dev_ham / want_ham - 1.0).abs() < 1e-6,
            "N={n}: number-form {dev_ham:.9e} vs {want_ham:.9e}"
        );
        ham_devs.push(dev_ham);
    }
    assert!(ham_devs[3] < 1e-3);
    let spacings: Vec<f64> = sizes.iter().map(|&n| 20.0 / (n - 1) as f64).collect();
    let slope = log_log_slope(&spacings, &ham_devs).unwrap();
    assert!((slope - 2.0).abs() < 0.2, "slope {slope}");
    assert!(
        (slope - 1.950_503_580_179_842_5).abs() < 1e-6,
        "slope {slope:.17}"
    );
}

/// Norm of the lowering operator applied to the numeric ground state on
/// an SI grid of `n` points spanning +-10 radii.
fn lowering_on_numeric_ground(n: usize) -> f64 {
    let params = defaults();
    let matrix = discretize_hamiltonian(&params, 0.0, n, 10.0).unwrap();
    let eig = eigensolve_lowest(&matrix, 1).unwrap();
    let radius = params.coriolis_radius();
    // dimensionless grid normalization carries over to SI after the
    // 1/sqrt(radius) amplitude rescale
    let u: Vec<f64> = eig.vectors[0].iter().map(|v| v / radius.sqrt()).collect();
    let grid = si_grid(&params, 0.0, 10.0, n);
    let ops = ladder_matrices(&params, &grid, 0.0).unwrap();
    let av = ops.apply_lowering(&u).unwrap();
    (av.iter().map(|z| z.norm_sqr()).sum::<f64>() * grid.spacing()).sqrt()
}

#[test]
fn lowering_annihilates_the_numeric_ground_state() {
    let fine = lowering_on_numeric_ground(2000);
    assert!((fine / 9.891_995e-6 - 1.0).abs() < 1e-3, "norm {fine:.9e}");
    assert!(fine < 1e-5);
    // second-order residual: halving the spacing cuts it 4x
    let coarse = lowering_on_numeric_ground(1000);
    assert!(
        (coarse / 3.960_745e-5 - 1.0).abs() < 1e-3,
        "norm {coarse:.9e}"
    );
    let ratio = coarse / fine;
    assert!((3.4..4.6).contains(&ratio), "ratio {ratio}");
}

/// Angular-velocity samples of a unit-rate axis precessing in the plane,
/// `(cos 0.7t, sin 0.7t, 0)`, dense enough that interpolation error is
/// negligible next to integrator error.
fn precessing_generator(t_max: f64, n_samples: usize) -> RotationGenerator {
    let samples = (0..n_samples)
        .map(|i| {
            let t = t_max * i as f64 / (n_samples - 1) as f64;
            (t, Vec3::new((0.7 * t).cos(), (0.7 * t).sin(), 0.0))
        })
        .collect();
    RotationGenerator::sampled(samples).unwrap()
}

#[test]
fn time_dependent_methods_agree_on_the_precessing_axis() {
    let gen = precessing_generator(0.4, 20_001);
    let r0 = Vec3::new(1.0, 0.4, -0.2);
    let reference = evolve_time_dependent(&gen, r0, 0.4, 10_000, EvolveMethod::Rk4).unwrap();
    let piecewise =
        evolve_time_dependent(&gen, r0, 0.4, 1_000, EvolveMethod::PiecewiseRodrigues).unwrap();
    let magnus = evolve_time_dependent(&gen, r0, 0.4, 1_000, EvolveMethod::Magnus2).unwrap();
    assert!(
        piecewise.max_abs_diff(reference) < 1e-8,
        "piecewise gap {:e}",
        piecewise.max_abs_diff(reference)
    );
    assert!(
        magnus.max_abs_diff(reference) < 1e-8,
        "magnus gap {:e}",
        magnus.max_abs_diff(reference)
    );
    // every method returns a plain rotation of the start vector
    for r in [reference, piecewise, magnus] {
        assert!((r.norm() / r0.norm() - 1.0).abs() < 1e-10);
    }
}

#[test]
fn piecewise_norm_drift_stays_tiny_over_ten_thousand_steps() {
    // each step is an exact rotation, so only rounding accumulates
    let gen = precessing_generator(5.0, 50_001);
    let r0 = Vec3::new(1.0, 0.4, -0.2);
    let r = evolve_time_dependent(&gen, r0, 5.0, 10_000, EvolveMethod::PiecewiseRodrigues).unwrap();
    let drift = (r.norm() - r0.norm()).abs() / r0.norm();
    assert!(drift < 1e-10, "norm drift {drift:e}");
}

#[test]
fn hermite_quadrature_invariants() {
    // unit norm of one level on a fine grid
    let n_pts = 6001usize;
    let dxi = 40.0 / (n_pts - 1) as f64;
    let mut norm7 = 0.0;
    for j in 0..n_pts {
        let xi = -20.0 + dxi * j as f64;
        let w = if j == 0 || j == n_pts - 1 { 0.5 } else { 1.0 };
        norm7 += w * hermite_function(7, xi).unwrap().powi(2) * dxi;
    }
    assert!((norm7 - 1.0).abs() < 1e-10, "norm {norm7:.15}");

    // pairwise orthonormality across the first eleven levels
    let n_pts = 4001usize;
    let dxi = 30.0 / (n_pts - 1) as f64;
    let table: Vec<Vec<f64>> = (0..=10)
        .map(|n| {
            (0..n_pts)
                .map(|j| hermite_function(n, -15.0 + dxi * j as f64).unwrap())
                .collect()
        })
        .collect();
    for m in 0..=10 {
        for n in 0..=m {
            let mut s = 0.0;
            for (j, (a, b)) in table[m].iter().zip(&table[n]).enumerate() {
                let w = if j == 0 || j == n_pts - 1 { 0.5 } else { 1.0 };
                s += w * a * b * dxi;
            }
            let want = if m == n { 1.0 } else { 0.0 };
            assert!((s - want).abs() < 1e-8, "({m},{n}): {s:e}");
        }
    }
}

#[test]
fn ground_state_density_width_and_normalization() {
    let params = defaults();
    let k_y = 1e9;
    let qn = QuantumNumbers::new(0, k_y).unwrap();
    let map = oscillator_scaling(&params, k_y);
    let radius = params.coriolis_radius();
    let n_pts = 4001usize;
    let dxi = 20.0 / (n_pts - 1) as f64;
    let (mut weight, mut mean_acc) = (0.0, 0.0);
    let mut xs = Vec::with_capacity(n_pts);
    let mut dens = Vec::with_capacity(n_pts);
    for j in 0..n_pts {
        let x = map.x_from_xi(-10.0 + dxi * j as f64);
        let d = eigenfunction(&params, &qn, x, 0.0).unwrap().norm_sqr();
        let w = if j == 0 || j == n_pts - 1 { 0.5 } else { 1.0 };
        weight += w * d;
        mean_acc += w * d * x;
        xs.push(x);
        dens.push(w * d);
    }
    let dx = radius * dxi;
    // per-unit-y-length normalization: integral of the density is 1
    assert!((weight * dx - 1.0).abs() < 1e-9, "norm {:e}", weight * dx);
    let mean = mean_acc / weight;
    assert!((mean - guiding_center(&params, k_y)).abs() < 1e-6 * radius);
    // the density Gaussian is sqrt(2) narrower than the amplitude one
    let var: f64 = xs
        .iter()
        .zip(&dens)
        .map(|(&x, &d)| d * (x - mean) * (x - mean))
        .sum::<f64>()
        / weight;
    let sigma = var.sqrt();
    let want = radius / std::f64::consts::SQRT_2;
    assert!(
        (sigma / want - 1.0).abs() < 1e-6,
        "sigma {sigma:e} vs {want:e}"
    );
}

#[test]
fn excited_state_normalization() {
    let params = defaults();
    for n in [1i64, 3, 7] {
        let qn = QuantumNumbers::new(n, 0.0).unwrap();
        let map = oscillator_scaling(&params, 0.0);
        let half = ((2 * n + 1) as f64).sqrt() + 10.0;
        let n_pts = 6001usize;
        let dxi = 2.0 * half / (n_pts - 1) as f64;
        let mut weight = 0.0;
        for j in 0..n_pts {
            let x = map.x_from_xi(-half + dxi * j as f64);
            let d = eigenfunction(&params, &qn, x, -2.0e-9).unwrap().norm_sqr();
            let w = if j == 0 || j == n_pts - 1 { 0.5 } else { 1.0 };
            weight += w * d;
        }
        let integral = weight * params.coriolis_radius() * dxi;
        assert!((integral - 1.0).abs() < 1e-9, "n={n}: {integral:.15}");
    }
}

#[test]
fn refinement_study_shows_second_order_convergence() {
    let params = defaults();
    let sizes = [250usize, 500, 1000, 2000];
    let rows = convergence_study(&params, 0.0, &sizes, 3, 10.0).unwrap();
    assert_eq!(rows.len(), 12);
    for level in 0..3 {
        let (mut spacings, mut errors) = (Vec::new(), Vec::new());
        for &n in &sizes {
            let row = rows
                .iter()
                .find(|r| r.n_points == n && r.level == level)
                .unwrap();
            assert!(!row.domain_limited);
            assert!((row.eps - (level as f64 + 0.5)).abs() < 5e-3);
            spacings.push(20.0 / (n - 1) as f64);
            errors.push(row.abs_error);
        }
        for k in 1..errors.len() {
            assert!(errors[k] < errors[k - 1], "level {level} not improving");
        }
        let slope = log_log_slope(&spacings, &errors).unwrap();
        assert!((slope - 2.0).abs() < 0.2, "level {level}: slope {slope}");
    }
}
