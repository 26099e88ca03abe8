//! Classical rotation kinematics: cross-product generators, closed-form
//! (Rodrigues) and series evolution, and steppers for time-dependent axes.

use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};

/// Series terms beyond this order underflow to zero for any |O| t of
/// practical size; the multiplicative recurrence stays finite regardless.
pub const MAX_SERIES_TERMS: usize = 170;

/// Real 3-vector.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Vec3 {
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl Vec3 {
    pub const ZERO: Self = Self {
        x: 0.0,
        y: 0.0,
        z: 0.0,
    };

    #[inline]
    pub fn new(x: f64, y: f64, z: f64) -> Self {
        Self { x, y, z }
    }

    #[inline]
    pub fn dot(self, other: Self) -> f64 {
        self.x * other.x + self.y * other.y + self.z * other.z
    }

    #[inline]
    pub fn cross(self, other: Self) -> Self {
        Self {
            x: self.y * other.z - self.z * other.y,
            y: self.z * other.x - self.x * other.z,
            z: self.x * other.y - self.y * other.x,
        }
    }

    #[inline]
    pub fn norm(self) -> f64 {
        self.dot(self).sqrt()
    }

    #[inline]
    pub fn is_finite(self) -> bool {
        self.x.is_finite() && self.y.is_finite() && self.z.is_finite()
    }

    /// Largest absolute component difference against `other`.
    pub fn max_abs_diff(self, other: Self) -> f64 {
        (self.x - other.x)
            .abs()
            .max((self.y - other.y).abs())
            .max((self.z - other.z).abs())
    }
}

impl Add for Vec3 {
    type Output = Self;
    #[inline]
    fn add(self, o: Self) -> Self {
        Self::new(self.x + o.x, self.y + o.y, self.z + o.z)
    }
}

impl Sub for Vec3 {
    type Output = Self;
    #[inline]
    fn sub(self, o: Self) -> Self {
        Self::new(self.x - o.x, self.y - o.y, self.z - o.z)
    }
}

impl Mul<f64> for Vec3 {
    type Output = Self;
    #[inline]
    fn mul(self, s: f64) -> Self {
        Self::new(self.x * s, self.y * s, self.z * s)
    }
}

impl Neg for Vec3 {
    type Output = Self;
    #[inline]
    fn neg(self) -> Self {
        Self::new(-self.x, -self.y, -self.z)
    }
}

/// Acceleration `-2 omega x v` of a particle moving with velocity `v` in a
/// frame rotating at `omega` (force per unit mass, m/s^2).
#[inline]
pub fn coriolis_acceleration(omega: Vec3, velocity: Vec3) -> Vec3 {
    -(omega.cross(velocity)) * 2.0
}

/// Applies the cross-product generator n times: `O x (O x (... x R0))`.
/// `n = 0` returns `r0` unchanged.
pub fn cross_apply_n(o: Vec3, r0: Vec3, n: u32) -> Vec3 {
    let mut r = r0;
    for _ in 0..n {
        r = o.cross(r);
    }
    r
}

/// Truncated exponential series for rotation about a fixed generator:
/// sum over k of t^k/k! (O x)^k R0.
///
/// The k-th term is built multiplicatively, term_k = (t/k) O x term_{k-1},
/// so no factorial or power ever overflows. Orders beyond
/// [`MAX_SERIES_TERMS`] underflow to zero in f64 for any practical |O| t
/// and are not evaluated. The caller owns the truncation error.
pub fn evolve_series(o: Vec3, r0: Vec3, t: f64, n_terms: usize) -> Vec3 {
    let mut term = r0;
    let mut acc = r0;
    for k in 1..n_terms.min(MAX_SERIES_TERMS) {
        term = o.cross(term) * (t / k as f64);
        acc = acc + term;
    }
    acc
}

/// Closed-form rotation of `r0` about the fixed generator `o` for time `t`:
/// cos(|o|t) R0 + sin(|o|t) (n x R0) + (1 - cos(|o|t)) (n . R0) n,
/// with n = o/|o|. A zero generator is the identity.
pub fn evolve_rodrigues(o: Vec3, r0: Vec3, t: f64) -> Vec3 {
    let mag = o.norm();
    if mag == 0.0 {
        return r0;
    }
    let n = o * (1.0 / mag);
    let theta = mag * t;
    let (sin, cos) = theta.sin_cos();
    r0 * cos + n.cross(r0) * sin + n * ((1.0 - cos) * n.dot(r0))
}

/// Rotation generator O(t): either constant or piecewise-linear samples.
#[derive(Debug, Clone)]
pub enum RotationGenerator {
    /// Fixed generator (rad/s).
    Constant(Vec3),
    /// `(time s, generator rad/s)` samples with strictly increasing times;
    /// evaluation interpolates linearly between neighbours.
    Sampled(Vec<(f64, Vec3)>),
}

impl RotationGenerator {
    pub fn constant(o: Vec3) -> Self {
        Self::Constant(o)
    }

    /// Validates at least two samples, strictly increasing finite times,
    /// and finite generator components.
    pub fn sampled(samples: Vec<(f64, Vec3)>) -> Result<Self> {
        if samples.len() < 2 {
            return Err(Error::invalid(
                "samples",
                format!("need at least 2 samples, got {}", samples.len()),
            ));
        }
        for (i, (t, v)) in samples.iter().enumerate() {
            if !t.is_finite() || !v.is_finite() {
                return Err(Error::invalid(
                    "samples",
                    format!("non-finite entry at index {i}"),
                ));
            }
            if i > 0 && *t <= samples[i - 1].0 {
                return Err(Error::invalid(
                    "samples",
                    format!(
                        "times must be strictly increasing, got {} after {} at index {i}",
                        t,
                        samples[i - 1].0
                    ),
                ));
            }
        }
        Ok(Self::Sampled(samples))
    }

    /// Generator at time `t`. Sampled generators interpolate linearly;
    /// times outside the sampled range clamp to the nearest endpoint
    /// (the steppers reject such ranges up front).
    pub fn at(&self, t: f64) -> Vec3 {
        match self {
            Self::Constant(o) => *o,
            Self::Sampled(s) => {
                let last = s.len() - 1;
                if t <= s[0].0 {
                    return s[0].1;
                }
                if t >= s[last].0 {
                    return s[last].1;
                }
                // first index with sample time > t; t is strictly inside
                let hi = s.partition_point(|(st, _)| *st <= t);
                let (t0, v0) = s[hi - 1];
                let (t1, v1) = s[hi];
                let w = (t - t0) / (t1 - t0);
                v0 * (1.0 - w) + v1 * w
            }
        }
    }

    /// Average of the generator over `[t0, t1]`, exact for the
    /// piecewise-linear interpolant (trapezoid over every breakpoint).
    fn average(&self, t0: f64, t1: f64) -> Vec3 {
        match self {
            Self::Constant(o) => *o,
            Self::Sampled(s) => {
                let mut acc = Vec3::ZERO;
                let mut prev_t = t0;
                let mut prev_v = self.at(t0);
                for &(st, _) in s.iter() {
                    if st <= t0 || st >= t1 {
                        continue;
                    }
                    let v = self.at(st);
                    acc = acc + (prev_v + v) * (0.5 * (st - prev_t));
                    prev_t = st;
                    prev_v = v;
                }
                let v1 = self.at(t1);
                acc = acc + (prev_v + v1) * (0.5 * (t1 - prev_t));
                acc * (1.0 / (t1 - t0))
            }
        }
    }

    /// Whether `[lo, hi]` lies inside the sampled range (constant
    /// generators cover all times).
    fn covers(&self, lo: f64, hi: f64) -> bool {
        match self {
            Self::Constant(_) => true,
            Self::Sampled(s) => s[0].0 <= lo && hi <= s[s.len() - 1].0,
        }
    }
}

/// Stepping scheme for [`evolve_time_dependent`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EvolveMethod {
    /// One exact rotation per step about the midpoint-sampled axis.
    PiecewiseRodrigues,
    /// Classical fourth-order Runge-Kutta on dR/dt = O(t) x R.
    Rk4,
    /// One exact rotation per step about the step-averaged generator
    /// (first term of the Magnus expansion).
    Magnus2,
}

/// Integrates dR/dt = O(t) x R from t = 0 to `t_final` in `steps` equal
/// steps with the chosen method.
///
/// Errors: `steps = 0` or non-finite `t_final` fail validation; a sampled
/// generator that does not cover `[0, t_final]` is an out-of-range error.
pub fn evolve_time_dependent(
    gen: &RotationGenerator,
    r0: Vec3,
    t_final: f64,
    steps: usize,
    method: EvolveMethod,
) -> Result<Vec3> {
    if steps == 0 {
        return Err(Error::invalid("steps", "must be at least 1"));
    }
    if !t_final.is_finite() {
        return Err(Error::invalid(
            "t_final",
            format!("must be finite, got {t_final}"),
        ));
    }
    let (lo, hi) = if t_final >= 0.0 {
        (0.0, t_final)
    } else {
        (t_final, 0.0)
    };
    if !gen.covers(lo, hi) {
        return Err(Error::OutOfRange {
            what: "t_final",
            reason: format!("[{lo}, {hi}] is not covered by the sampled times"),
        });
    }

    let dt = t_final / steps as f64;
    let mut r = r0;
    for i in 0..steps {
        let t = i as f64 * dt;
        r = match method {
            EvolveMethod::PiecewiseRodrigues => evolve_rodrigues(gen.at(t + 0.5 * dt), r, dt),
            EvolveMethod::Magnus2 => evolve_rodrigues(gen.average(t, t + dt), r, dt),
            EvolveMethod::Rk4 => {
                let f = |tau: f64, y: Vec3| gen.at(tau).cross(y);
                let k1 = f(t, r);
                let k2 = f(t + 0.5 * dt, r + k1 * (0.5 * dt));
                let k3 = f(t + 0.5 * dt, r + k2 * (0.5 * dt));
                let k4 = f(t + dt, r + k3 * dt);
                r + (k1 + k2 * 2.0 + k3 * 2.0 + k4) * (dt / 6.0)
            }
        };
    }
    Ok(r)
}

#[cfg(test)]
mod tests {
    use super::*;

    const PI: f64 = std::f64::consts::PI;

    #[test]
    fn coriolis_acceleration_is_minus_two_omega_cross_v() {
        let a = coriolis_acceleration(Vec3::new(0.0, 0.0, 1.0), Vec3::new(1.0, 0.0, 0.0));
        assert_eq!(a, Vec3::new(0.0, -2.0, 0.0));
    }

    #[test]
    fn cross_apply_twice_flips_unit_x_about_z() {
        let r = cross_apply_n(Vec3::new(0.0, 0.0, 1.0), Vec3::new(1.0, 0.0, 0.0), 2);
        assert!(r.max_abs_diff(Vec3::new(-1.0, 0.0, 0.0)) == 0.0);
        assert_eq!(
            cross_apply_n(Vec3::new(0.3, -0.4, 0.9), Vec3::new(1.0, 2.0, 3.0), 0),
            Vec3::new(1.0, 2.0, 3.0)
        );
    }

    #[test]
    fn rodrigues_half_turn_about_z() {
        let r = evolve_rodrigues(Vec3::new(0.0, 0.0, 1.0), Vec3::new(1.0, 0.0, 0.0), PI);
        assert!(r.max_abs_diff(Vec3::new(-1.0, 0.0, 0.0)) < 1e-15);
    }

    #[test]
    fn zero_generator_is_identity() {
        let r0 = Vec3::new(0.4, -1.2, 2.0);
        assert_eq!(evolve_rodrigues(Vec3::ZERO, r0, 7.0), r0);
        assert_eq!(evolve_series(Vec3::ZERO, r0, 7.0, 40), r0);
    }

    #[test]
    fn series_matches_rodrigues_at_moderate_angle() {
        let o = Vec3::new(0.3, -1.1, 0.7);
        let r0 = Vec3::new(1.0, 0.4, -0.2);
        let t = 1.3;
        let d = evolve_series(o, r0, t, 60).max_abs_diff(evolve_rodrigues(o, r0, t));
        assert!(d < 1e-12, "series/rodrigues differ by {d:e}");
    }

    #[test]
    fn series_term_cap_is_harmless() {
        let o = Vec3::new(0.0, 0.0, 1.0);
        let r0 = Vec3::new(1.0, 0.0, 0.0);
        let full = evolve_series(o, r0, 2.0, usize::MAX);
        let capped = evolve_series(o, r0, 2.0, MAX_SERIES_TERMS);
        assert_eq!(full, capped);
    }

    #[test]
    fn sampled_generator_validation() {
        assert!(RotationGenerator::sampled(vec![(0.0, Vec3::ZERO)]).is_err());
        assert!(RotationGenerator::sampled(vec![(0.0, Vec3::ZERO), (0.0, Vec3::ZERO)]).is_err());
        assert!(RotationGenerator::sampled(vec![
            (0.0, Vec3::new(f64::NAN, 0.0, 0.0)),
            (1.0, Vec3::ZERO)
        ])
        .is_err());
    }

    #[test]
    fn sampled_interpolation_is_linear() {
        let g = RotationGenerator::sampled(vec![
            (0.0, Vec3::new(0.0, 0.0, 0.0)),
            (2.0, Vec3::new(4.0, -2.0, 0.0)),
        ])
        .unwrap();
        assert_eq!(g.at(0.5), Vec3::new(1.0, -0.5, 0.0));
        assert_eq!(g.at(-1.0), Vec3::ZERO); // clamped
        let avg = g.average(0.0, 2.0);
        assert!(avg.max_abs_diff(Vec3::new(2.0, -1.0, 0.0)) < 1e-15);
    }

    #[test]
    fn out_of_range_and_zero_steps_are_rejected() {
        let g = RotationGenerator::sampled(vec![
            (0.0, Vec3::new(0.0, 0.0, 1.0)),
            (1.0, Vec3::new(0.0, 0.0, 1.0)),
        ])
        .unwrap();
        let r0 = Vec3::new(1.0, 0.0, 0.0);
        assert!(matches!(
            evolve_time_dependent(&g, r0, 2.0, 10, EvolveMethod::Rk4),
            Err(Error::OutOfRange { .. })
        ));
        assert!(evolve_time_dependent(&g, r0, 0.5, 0, EvolveMethod::Rk4).is_err());
    }

    #[test]
    fn constant_generator_all_methods_match_rodrigues() {
        let o = Vec3::new(0.3, -1.1, 0.7);
        let r0 = Vec3::new(1.0, 0.4, -0.2);
        let t = 1.3;
        let exact = evolve_rodrigues(o, r0, t);
        let g = RotationGenerator::constant(o);
        for (method, steps, tol) in [
            (EvolveMethod::PiecewiseRodrigues, 1, 1e-12),
            (EvolveMethod::Magnus2, 1, 1e-12),
            (EvolveMethod::Rk4, 2000, 1e-12),
        ] {
            let r = evolve_time_dependent(&g, r0, t, steps, method).unwrap();
            let d = r.max_abs_diff(exact);
            assert!(d < tol, "{method:?} off by {d:e}");
        }
    }
}
