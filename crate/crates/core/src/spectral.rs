//! Finite-difference spectrum of the transverse oscillator: dimensionless
//! discretization, a self-contained symmetric tridiagonal eigensolver
//! (Sturm-count bisection plus inverse iteration), analytic-overlap
//! checks, and grid-refinement studies.

use crate::analytic::hermite_function;
use crate::error::{Error, Result};
use crate::grid::Grid1D;
use crate::units::{oscillator_scaling, FrameParams, ScalingMap};

/// Largest number of eigenpairs the physics-level solvers hand out; the
/// low end of the spectrum is the only part the second-order stencil
/// resolves well.
pub const MAX_EIGENPAIRS: usize = 10;

/// Smallest grid accepted by [`discretize_hamiltonian`].
const MIN_GRID_POINTS: usize = 16;

/// Eigenpair acceptance threshold on `|T v - lambda v| / |T|`.
const RESIDUAL_TOL: f64 = 1e-8;

/// Inverse-iteration refinement passes; the first solve already lands on
/// the eigenvector, the rest are cheap insurance for tight clusters.
const INVERSE_ITERATIONS: usize = 4;

/// Entry-magnitude bound that keeps the Sturm recurrence free of
/// overflow-driven NaNs.
const MAX_ENTRY: f64 = 1e150;

/// Symmetric tridiagonal Hamiltonian in dimensionless oscillator
/// coordinates, with the grid and unit maps needed to read results back
/// in SI.
#[derive(Debug, Clone)]
pub struct TridiagMatrix {
    /// Main diagonal, one entry per grid point.
    pub diag: Vec<f64>,
    /// Symmetric off-diagonal, one entry per adjacent pair.
    pub off: Vec<f64>,
    /// Dimensionless grid the rows live on.
    pub grid: Grid1D,
    /// Dimensionless-to-SI maps for lengths and energies.
    pub scaling: ScalingMap,
}

impl TridiagMatrix {
    /// Matrix order (number of grid points).
    pub fn order(&self) -> usize {
        self.diag.len()
    }
}

/// Second-order discretization of the transverse Hamiltonian in
/// dimensionless coordinates, `-(1/2) d^2/dxi^2 + xi^2/2` with Dirichlet
/// ends, on `n_points` spanning `[-half_width, half_width]`. Eigenvalues
/// approach `n + 1/2` as the grid refines.
pub fn discretize_hamiltonian(
    params: &FrameParams,
    k_y: f64,
    n_points: usize,
    half_width: f64,
) -> Result<TridiagMatrix> {
    if n_points < MIN_GRID_POINTS {
        return Err(Error::invalid(
            "n_points",
            format!("discretization needs at least {MIN_GRID_POINTS} points, got {n_points}"),
        ));
    }
    if !half_width.is_finite() || half_width <= 0.0 {
        return Err(Error::invalid(
            "half_width",
            format!("must be finite and positive, got {half_width}"),
        ));
    }
    let grid = Grid1D::new(-half_width, half_width, n_points)?;
    let inv_h2 = 1.0 / (grid.spacing() * grid.spacing());
    let diag = (0..n_points)
        .map(|j| {
            let xi = grid.point(j);
            inv_h2 + 0.5 * xi * xi
        })
        .collect();
    let off = vec![-0.5 * inv_h2; n_points - 1];
    Ok(TridiagMatrix {
        diag,
        off,
        grid,
        scaling: oscillator_scaling(params, k_y),
    })
}

/// Raw eigenpairs of a symmetric tridiagonal matrix: ascending values,
/// unit-norm sign-fixed vectors, and the relative residuals
/// `|T v - lambda v| / |T|` they were accepted with.
#[derive(Debug, Clone)]
pub struct TridiagEigen {
    /// Eigenvalues, ascending.
    pub values: Vec<f64>,
    /// Eigenvectors, Euclidean-normalized, largest component positive.
    pub vectors: Vec<Vec<f64>>,
    /// Relative residual each pair was accepted with.
    pub residuals: Vec<f64>,
}

/// Lowest eigenpairs of the physics matrix, with vectors renormalized to
/// the grid measure (`sum v_j^2 h = 1`).
#[derive(Debug, Clone)]
pub struct EigenResult {
    /// Dimensionless eigenvalues, ascending; level `n` sits near `n + 1/2`.
    pub values: Vec<f64>,
    /// Grid-normalized eigenvectors on the dimensionless grid.
    pub vectors: Vec<Vec<f64>>,
    /// Relative residuals from the raw solve.
    pub residuals: Vec<f64>,
    /// Dimensionless grid the vectors live on.
    pub grid: Grid1D,
    /// Dimensionless-to-SI maps carried over from the matrix.
    pub scaling: ScalingMap,
}

impl EigenResult {
    /// Eigenvalues mapped to SI energies (J).
    pub fn energies_si(&self) -> Vec<f64> {
        self.values
            .iter()
            .map(|&eps| self.scaling.energy_from_eps(eps))
            .collect()
    }

    /// Grid points mapped to SI positions (m).
    pub fn x_points_si(&self) -> Vec<f64> {
        self.grid
            .points()
            .iter()
            .map(|&xi| self.scaling.x_from_xi(xi))
            .collect()
    }
}

fn check_bands(diag: &[f64], off: &[f64]) -> Result<()> {
    if diag.is_empty() {
        return Err(Error::invalid("diag", "matrix must have at least one row"));
    }
    if off.len() + 1 != diag.len() {
        return Err(Error::LengthMismatch {
            context: "tridiagonal bands",
            left: diag.len(),
            right: off.len(),
        });
    }
    for &v in diag.iter().chain(off) {
        if !v.is_finite() || v.abs() > MAX_ENTRY {
            return Err(Error::invalid(
                "matrix",
                format!("entries must be finite with magnitude <= {MAX_ENTRY:e}, got {v}"),
            ));
        }
    }
    Ok(())
}

/// Infinity norm (max absolute row sum).
fn inf_norm(diag: &[f64], off: &[f64]) -> f64 {
    let n = diag.len();
    (0..n)
        .map(|i| {
            diag[i].abs()
                + if i > 0 { off[i - 1].abs() } else { 0.0 }
                + if i + 1 < n { off[i].abs() } else { 0.0 }
        })
        .fold(0.0f64, f64::max)
}

/// Interval certain to contain the whole spectrum (union of Gershgorin
/// discs).
fn spectrum_bounds(diag: &[f64], off: &[f64]) -> (f64, f64) {
    let n = diag.len();
    let mut lo = f64::INFINITY;
    let mut hi = f64::NEG_INFINITY;
    for i in 0..n {
        let r =
            if i > 0 { off[i - 1].abs() } else { 0.0 } + if i + 1 < n { off[i].abs() } else { 0.0 };
        lo = lo.min(diag[i] - r);
        hi = hi.max(diag[i] + r);
    }
    (lo, hi)
}

/// Number of eigenvalues strictly below `x`: negative-pivot count of the
/// LDL^T factorization of `T - x I` (Sylvester inertia). Exact-zero
/// pivots are nudged negative; divisions that overflow to infinity
/// self-correct on the next step, so no entry pattern can poison the
/// count with NaN.
fn count_below(diag: &[f64], off: &[f64], x: f64) -> usize {
    let mut count = 0usize;
    let mut d = 1.0f64;
    for i in 0..diag.len() {
        let off2 = if i == 0 { 0.0 } else { off[i - 1] * off[i - 1] };
        d = (diag[i] - x) - off2 / d;
        if d == 0.0 {
            d = -f64::MIN_POSITIVE;
        }
        if d < 0.0 {
            count += 1;
        }
    }
    count
}

/// Eigenvalue of ascending index `i`, bisected to floating-point
/// collapse of the bracketing interval.
fn bisect_eigenvalue(diag: &[f64], off: &[f64], i: usize, bounds: (f64, f64)) -> f64 {
    let scale = bounds.0.abs().max(bounds.1.abs()).max(f64::MIN_POSITIVE);
    // pad so the counts bracket even an eigenvalue sitting exactly on a
    // Gershgorin endpoint
    let mut lo = bounds.0 - 2.0 * f64::EPSILON * scale - f64::MIN_POSITIVE;
    let mut hi = bounds.1 + 2.0 * f64::EPSILON * scale + f64::MIN_POSITIVE;
    // invariant: count(lo) <= i < count(hi); ~60 halvings in practice,
    // the cap is pure paranoia
    for _ in 0..4096 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if count_below(diag, off, mid) > i {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    0.5 * (lo + hi)
}

/// LU factorization of `T - lambda I` with partial pivoting. Row swaps
/// add a second superdiagonal; near-singular pivots (the expected case
/// at an eigenvalue shift) are nudged so the solve stays finite while
/// keeping the giant growth inverse iteration feeds on.
struct ShiftedLu {
    d: Vec<f64>,
    du: Vec<f64>,
    du2: Vec<f64>,
    dl: Vec<f64>,
    swapped: Vec<bool>,
}

impl ShiftedLu {
    fn factor(diag: &[f64], off: &[f64], lambda: f64, anorm: f64) -> Self {
        let n = diag.len();
        let mut d: Vec<f64> = diag.iter().map(|&x| x - lambda).collect();
        let mut du: Vec<f64> = off.to_vec();
        let mut dl: Vec<f64> = off.to_vec();
        let mut du2 = vec![0.0; n.saturating_sub(2)];
        let mut swapped = vec![false; n.saturating_sub(1)];
        for i in 0..n.saturating_sub(1) {
            if d[i].abs() >= dl[i].abs() {
                // no interchange; a zero pivot here forces dl[i] == 0 too
                if d[i] != 0.0 {
                    let fact = dl[i] / d[i];
                    dl[i] = fact;
                    d[i + 1] -= fact * du[i];
                } else {
                    dl[i] = 0.0;
                }
            } else {
                swapped[i] = true;
                let fact = d[i] / dl[i];
                d[i] = dl[i];
                dl[i] = fact;
                let temp = du[i];
                du[i] = d[i + 1];
                d[i + 1] = temp - fact * d[i + 1];
                if i + 2 < n {
                    du2[i] = du[i + 1];
                    du[i + 1] *= -fact;
                }
            }
        }
        let tiny = anorm * f64::EPSILON * f64::EPSILON + f64::MIN_POSITIVE;
        for x in &mut d {
            if x.abs() < tiny {
                *x = if x.is_sign_negative() { -tiny } else { tiny };
            }
        }
        Self {
            d,
            du,
            du2,
            dl,
            swapped,
        }
    }

    fn solve_in_place(&self, b: &mut [f64]) {
        let n = self.d.len();
        for i in 0..n.saturating_sub(1) {
            if self.swapped[i] {
                let t = b[i] - self.dl[i] * b[i + 1];
                b[i] = b[i + 1];
                b[i + 1] = t;
            } else {
                b[i + 1] -= self.dl[i] * b[i];
            }
        }
        b[n - 1] /= self.d[n - 1];
        if n >= 2 {
            b[n - 2] = (b[n - 2] - self.du[n - 2] * b[n - 1]) / self.d[n - 2];
        }
        for i in (0..n.saturating_sub(2)).rev() {
            b[i] = (b[i] - self.du[i] * b[i + 1] - self.du2[i] * b[i + 2]) / self.d[i];
        }
    }
}

fn tridiag_matvec(diag: &[f64], off: &[f64], v: &[f64]) -> Vec<f64> {
    let n = diag.len();
    (0..n)
        .map(|i| {
            diag[i] * v[i]
                + if i > 0 { off[i - 1] * v[i - 1] } else { 0.0 }
                + if i + 1 < n { off[i] * v[i + 1] } else { 0.0 }
        })
        .collect()
}

fn normalize(v: &mut [f64]) {
    let norm = v.iter().map(|x| x * x).sum::<f64>().sqrt();
    if norm > 0.0 {
        for x in v.iter_mut() {
            *x /= norm;
        }
    }
}

/// Flips the vector if needed so its largest-magnitude component is
/// positive, making eigenvector output reproducible.
fn fix_sign(v: &mut [f64]) {
    let mut idx = 0;
    let mut best = -1.0f64;
    for (i, &x) in v.iter().enumerate() {
        if x.abs() > best {
            best = x.abs();
            idx = i;
        }
    }
    if v[idx] < 0.0 {
        for x in v.iter_mut() {
            *x = -*x;
        }
    }
}

/// Deterministic start vectors for inverse iteration (splitmix64). A
/// seeded generator covers every grid parity; fixed patterns like the
/// all-ones vector sit exactly orthogonal to the odd modes of a
/// symmetric problem and would stall the iteration.
struct SplitMix64(u64);

impl SplitMix64 {
    fn next_u64(&mut self) -> u64 {
        self.0 = self.0.wrapping_add(0x9e37_79b9_7f4a_7c15);
        let mut z = self.0;
        z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
        z ^ (z >> 31)
    }

    /// Uniform in [-1, 1).
    fn next_unit(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 / (1u64 << 52) as f64 - 1.0
    }
}

fn inverse_iteration(
    diag: &[f64],
    off: &[f64],
    lambda: f64,
    index: usize,
    previous: &[Vec<f64>],
    anorm: f64,
) -> (Vec<f64>, f64) {
    let n = diag.len();
    let lu = ShiftedLu::factor(diag, off, lambda, anorm);
    let mut rng = SplitMix64((n as u64).wrapping_mul(0x06c6_2272_08ab_5cbb) ^ index as u64);
    let mut v: Vec<f64> = (0..n).map(|_| rng.next_unit()).collect();
    normalize(&mut v);
    for _ in 0..INVERSE_ITERATIONS {
        lu.solve_in_place(&mut v);
        // modified Gram-Schmidt against already-accepted vectors; a no-op
        // for well-separated eigenvalues, decisive inside clusters
        for p in previous {
            let c: f64 = v.iter().zip(p).map(|(a, b)| a * b).sum();
            for (a, b) in v.iter_mut().zip(p) {
                *a -= c * b;
            }
        }
        normalize(&mut v);
    }
    fix_sign(&mut v);
    let tv = tridiag_matvec(diag, off, &v);
    let residual = tv
        .iter()
        .zip(&v)
        .map(|(a, b)| (a - lambda * b) * (a - lambda * b))
        .sum::<f64>()
        .sqrt()
        / anorm.max(f64::MIN_POSITIVE);
    (v, residual)
}

/// Computes the `k` lowest eigenpairs of the symmetric tridiagonal
/// matrix with the given bands. Values come back ascending; vectors are
/// Euclidean-normalized with their largest component positive. Every
/// pair must meet the relative-residual acceptance bound or the whole
/// solve reports no convergence (carrying the worst residual observed).
///
/// Runs in O(k n) time and is bitwise deterministic for fixed input.
pub fn tridiag_eigen_lowest(diag: &[f64], off: &[f64], k: usize) -> Result<TridiagEigen> {
    check_bands(diag, off)?;
    let n = diag.len();
    if k == 0 || k > n {
        return Err(Error::invalid(
            "k",
            format!("need 1 <= k <= {n} eigenpairs, got {k}"),
        ));
    }
    let bounds = spectrum_bounds(diag, off);
    let anorm = inf_norm(diag, off);
    let values: Vec<f64> = (0..k)
        .map(|i| bisect_eigenvalue(diag, off, i, bounds))
        .collect();
    let mut vectors: Vec<Vec<f64>> = Vec::with_capacity(k);
    let mut residuals = Vec::with_capacity(k);
    let mut worst = 0.0f64;
    for (i, &lambda) in values.iter().enumerate() {
        let (v, res) = inverse_iteration(diag, off, lambda, i, &vectors, anorm);
        worst = worst.max(res);
        residuals.push(res);
        vectors.push(v);
    }
    // NaN residuals must also land here, so test the failure side.
    if worst.is_nan() || worst > RESIDUAL_TOL {
        return Err(Error::NoConvergence {
            what: "tridiagonal eigensolver",
            residual: worst,
        });
    }
    Ok(TridiagEigen {
        values,
        vectors,
        residuals,
    })
}

/// Computes the `n_levels` lowest eigenpairs of a discretized
/// Hamiltonian, renormalizing vectors to the grid measure
/// (`sum v_j^2 h = 1`) so they compare directly with sampled analytic
/// eigenfunctions.
pub fn eigensolve_lowest(matrix: &TridiagMatrix, n_levels: usize) -> Result<EigenResult> {
    if n_levels == 0 || n_levels > MAX_EIGENPAIRS {
        return Err(Error::invalid(
            "n_levels",
            format!("need 1 <= n_levels <= {MAX_EIGENPAIRS}, got {n_levels}"),
        ));
    }
    let raw = tridiag_eigen_lowest(&matrix.diag, &matrix.off, n_levels)?;
    let inv_sqrt_h = 1.0 / matrix.grid.spacing().sqrt();
    let vectors = raw
        .vectors
        .into_iter()
        .map(|mut v| {
            for x in &mut v {
                *x *= inv_sqrt_h;
            }
            v
        })
        .collect();
    Ok(EigenResult {
        values: raw.values,
        vectors,
        residuals: raw.residuals,
        grid: matrix.grid,
        scaling: matrix.scaling,
    })
}

/// Overlap of a grid-normalized vector with the analytic level-`n`
/// eigenfunction sampled on the same dimensionless grid, by rectangle
/// quadrature. Returned as a magnitude so it ignores sign conventions;
/// 1 means a perfect match.
pub fn overlap(vector: &[f64], grid: &Grid1D, n: usize) -> Result<f64> {
    if vector.len() != grid.n_points {
        return Err(Error::LengthMismatch {
            context: "overlap",
            left: vector.len(),
            right: grid.n_points,
        });
    }
    let h = grid.spacing();
    let mut s = 0.0;
    for (j, &v) in vector.iter().enumerate() {
        s += v * hermite_function(n, grid.point(j))?;
    }
    Ok((s * h).abs())
}

/// One level of one grid in a refinement study.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StudyRow {
    /// Grid size this row was computed on.
    pub n_points: usize,
    /// Level index.
    pub level: usize,
    /// Computed dimensionless eigenvalue.
    pub eps: f64,
    /// Distance from the continuum value `level + 1/2`.
    pub abs_error: f64,
    /// True when the box is too small for this level's classical
    /// turning points, so domain truncation (not the stencil) may be
    /// what limits the error.
    pub domain_limited: bool,
}

/// Solves the discretized Hamiltonian across several grid sizes (one
/// worker thread each) and reports per-level errors against the
/// continuum spectrum. Rows come back grouped by grid in the order
/// given, levels ascending within each group. On a fixed box the error
/// of a stencil-limited level falls quadratically with the spacing.
pub fn convergence_study(
    params: &FrameParams,
    k_y: f64,
    n_points_list: &[usize],
    n_levels: usize,
    half_width: f64,
) -> Result<Vec<StudyRow>> {
    if n_points_list.is_empty() {
        return Err(Error::invalid(
            "n_points_list",
            "must name at least one grid",
        ));
    }
    if n_levels == 0 || n_levels > MAX_EIGENPAIRS {
        return Err(Error::invalid(
            "n_levels",
            format!("need 1 <= n_levels <= {MAX_EIGENPAIRS}, got {n_levels}"),
        ));
    }
    let groups: Result<Vec<Vec<StudyRow>>> = std::thread::scope(|scope| {
        let handles: Vec<_> = n_points_list
            .iter()
            .map(|&n_points| {
                scope.spawn(move || -> Result<Vec<StudyRow>> {
                    let matrix = discretize_hamiltonian(params, k_y, n_points, half_width)?;
                    let eig = eigensolve_lowest(&matrix, n_levels)?;
                    Ok((0..n_levels)
                        .map(|level| {
                            let eps = eig.values[level];
                            let turning_point = ((2 * level + 1) as f64).sqrt();
                            StudyRow {
                                n_points,
                                level,
                                eps,
                                abs_error: (eps - (level as f64 + 0.5)).abs(),
                                domain_limited: half_width < turning_point + 1.5,
                            }
                        })
                        .collect())
                })
            })
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("study worker panicked"))
            .collect()
    });
    Ok(groups?.concat())
}

/// Least-squares slope of `ln y` against `ln x`; the observed order of a
/// refinement study when fed spacings and errors.
pub fn log_log_slope(x: &[f64], y: &[f64]) -> Result<f64> {
    if x.len() != y.len() {
        return Err(Error::LengthMismatch {
            context: "log_log_slope",
            left: x.len(),
            right: y.len(),
        });
    }
    if x.len() < 2 {
        return Err(Error::invalid("x", "need at least two samples for a slope"));
    }
    for &v in x.iter().chain(y) {
        if !v.is_finite() || v <= 0.0 {
            return Err(Error::invalid(
                "samples",
                format!("log-log fit needs positive finite values, got {v}"),
            ));
        }
    }
    let n = x.len() as f64;
    let lx: Vec<f64> = x.iter().map(|&v| v.ln()).collect();
    let ly: Vec<f64> = y.iter().map(|&v| v.ln()).collect();
    let mx = lx.iter().sum::<f64>() / n;
    let my = ly.iter().sum::<f64>() / n;
    let sxx: f64 = lx.iter().map(|&v| (v - mx) * (v - mx)).sum();
    let sxy: f64 = lx.iter().zip(&ly).map(|(&a, &b)| (a - mx) * (b - my)).sum();
    if sxx == 0.0 {
        return Err(Error::invalid("x", "samples must not all coincide"));
    }
    Ok(sxy / sxx)
}
