//! Physical constants, rotating-frame parameters, and unit scaling.
//!
//! Constants are CODATA 2018 values, pinned here once. Everything else in
//! the crate (and its tests) refers to these symbols instead of re-typing
//! literals.

use crate::error::{Error, Result};

/// Reduced Planck constant (J s), CODATA 2018.
pub const HBAR: f64 = 1.054_571_817e-34;

/// Electron mass (kg), CODATA 2018.
pub const ELECTRON_MASS: f64 = 9.109_383_701_5e-31;

/// Joules per milli-electron-volt (exact, from the 2019 SI definition).
pub const J_PER_MEV: f64 = 1.602_176_634e-22;

/// Converts an energy in joules to milli-electron-volts.
#[inline]
pub fn joules_to_mev(energy_j: f64) -> f64 {
    energy_j / J_PER_MEV
}

/// Parameters of a uniformly rotating frame seen by a single particle.
///
/// `omega_tilde` is the effective oscillator frequency of the transverse
/// motion and always equals `2 * omega`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FrameParams {
    /// Particle mass (kg), finite and > 0.
    pub mass: f64,
    /// Frame rotation rate (rad/s), finite and > 0.
    pub omega: f64,
    /// Effective oscillator frequency `2 * omega` (rad/s).
    pub omega_tilde: f64,
    /// Reduced Planck constant (J s) used in derived quantities.
    pub hbar: f64,
}

impl FrameParams {
    /// Builds a parameter set with the pinned [`HBAR`].
    pub fn new(mass: f64, omega: f64) -> Result<Self> {
        Self::with_hbar(mass, omega, HBAR)
    }

    /// Builds a parameter set with an explicit `hbar` (scaled-unit tests).
    pub fn with_hbar(mass: f64, omega: f64, hbar: f64) -> Result<Self> {
        if !(mass.is_finite() && mass > 0.0) {
            return Err(Error::invalid(
                "mass",
                format!("must be finite and > 0, got {mass:e}"),
            ));
        }
        if !(omega.is_finite() && omega > 0.0) {
            return Err(Error::invalid(
                "omega",
                format!("must be finite and > 0, got {omega:e}"),
            ));
        }
        if !(hbar.is_finite() && hbar > 0.0) {
            return Err(Error::invalid(
                "hbar",
                format!("must be finite and > 0, got {hbar:e}"),
            ));
        }
        Ok(Self {
            mass,
            omega,
            omega_tilde: 2.0 * omega,
            hbar,
        })
    }

    /// Characteristic transverse length `sqrt(hbar / (2 m omega))` (m).
    ///
    /// Satisfies `2 m omega * r^2 = hbar` to a few ulp.
    pub fn coriolis_radius(&self) -> f64 {
        (self.hbar / (2.0 * self.mass * self.omega)).sqrt()
    }

    /// Level spacing `hbar * omega_tilde` of the transverse spectrum (J).
    pub fn level_spacing(&self) -> f64 {
        self.hbar * self.omega_tilde
    }
}

/// Transverse equilibrium position `hbar k_y / (m omega_tilde)` (m).
pub fn guiding_center(params: &FrameParams, k_y: f64) -> f64 {
    params.hbar * k_y / (params.mass * params.omega_tilde)
}

/// Affine map between SI coordinates/energies and dimensionless
/// oscillator units `xi = (x - center)/length_unit`, `eps = E/energy_unit`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScalingMap {
    /// Length unit: one coriolis radius (m).
    pub length_unit: f64,
    /// Energy unit: `hbar * omega_tilde` (J).
    pub energy_unit: f64,
    /// Offset subtracted before scaling: the guiding center (m).
    pub center: f64,
}

impl ScalingMap {
    /// SI position to dimensionless coordinate.
    #[inline]
    pub fn xi_from_x(&self, x: f64) -> f64 {
        (x - self.center) / self.length_unit
    }

    /// Dimensionless coordinate to SI position.
    #[inline]
    pub fn x_from_xi(&self, xi: f64) -> f64 {
        self.center + xi * self.length_unit
    }

    /// SI energy to dimensionless eigenvalue.
    #[inline]
    pub fn eps_from_energy(&self, energy_j: f64) -> f64 {
        energy_j / self.energy_unit
    }

    /// Dimensionless eigenvalue to SI energy.
    #[inline]
    pub fn energy_from_eps(&self, eps: f64) -> f64 {
        eps * self.energy_unit
    }
}

/// Oscillator-unit scaling for the given transverse wavenumber, centered
/// on the guiding center.
pub fn oscillator_scaling(params: &FrameParams, k_y: f64) -> ScalingMap {
    ScalingMap {
        length_unit: params.coriolis_radius(),
        energy_unit: params.level_spacing(),
        center: guiding_center(params, k_y),
    }
}

#[cfg(test)]
// Reference values keep their full 17-digit form.
#[allow(clippy::excessive_precision)]
mod tests {
    use super::*;

    fn defaults() -> FrameParams {
        FrameParams::new(ELECTRON_MASS, 1e11).unwrap()
    }

    #[test]
    fn omega_tilde_is_twice_omega() {
        let p = defaults();
        assert_eq!(p.omega_tilde, 2.0 * p.omega);
    }

    #[test]
    fn rejects_nonpositive_inputs() {
        for (m, w) in [
            (-1.0, 1e11),
            (0.0, 1e11),
            (ELECTRON_MASS, 0.0),
            (1.0, f64::NAN),
        ] {
            assert!(FrameParams::new(m, w).is_err());
        }
        let err = FrameParams::new(-1.0, 1e11).unwrap_err().to_string();
        assert!(err.contains("mass"));
    }

    #[test]
    fn coriolis_radius_matches_high_precision_reference() {
        // Independent 50-digit evaluation of sqrt(hbar/(2 m omega)) for the
        // electron at 1e11 rad/s.
        let r = defaults().coriolis_radius();
        assert!((r / 2.405_905_609_646_219_8e-8 - 1.0).abs() < 1e-12);
    }

    #[test]
    fn coriolis_radius_closes_the_commutator_identity() {
        let p = defaults();
        let r = p.coriolis_radius();
        assert!((2.0 * p.mass * p.omega * r * r / p.hbar - 1.0).abs() < 1e-15);
    }

    #[test]
    fn guiding_center_matches_reference() {
        // hbar * 1e9 / (m_e * 2e11), evaluated at 50 digits.
        let x = guiding_center(&defaults(), 1e9);
        assert!((x / 5.788_381_802_527_148_7e-7 - 1.0).abs() < 1e-12);
        assert_eq!(guiding_center(&defaults(), 0.0), 0.0);
    }

    #[test]
    fn scaling_round_trips() {
        let map = oscillator_scaling(&defaults(), 1e9);
        for x in [-3.2e-8, 0.0, 5.788e-7, 1.1e-6] {
            let back = map.x_from_xi(map.xi_from_x(x));
            assert!((back - x).abs() <= 1e-14 * x.abs().max(map.length_unit));
        }
        for e in [1e-24, 2.1e-23, 5.5e-22] {
            let back = map.energy_from_eps(map.eps_from_energy(e));
            assert!((back / e - 1.0).abs() < 1e-14);
        }
    }

    #[test]
    fn mev_conversion_reference_value() {
        // 2 hbar omega at 1e11 rad/s in meV, 50-digit reference.
        let de = defaults().level_spacing();
        assert!((joules_to_mev(de) / 0.131_642_391_309_521_49 - 1.0).abs() < 1e-12);
    }
}
