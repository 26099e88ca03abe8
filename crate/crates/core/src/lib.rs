//! Quantum states bound by the Coriolis force in a uniformly rotating
//! frame, and the classical rotation kinematics they descend from.
//!
//! A particle confined to a plane inside a rotating body feels the same
//! algebra a charge feels in a uniform magnetic field: the kinetic
//! momenta close at a constant, the spectrum collapses into evenly
//! spaced levels `hbar * omega_tilde * (n + 1/2)` with `omega_tilde`
//! twice the rotation rate, and a standing wave circulating an area
//! picks up a geometric phase proportional to the enclosed area. This
//! crate provides:
//!
//! - [`rotor`]: evolution of a co-rotating vector by the classical
//!   equation `dr/dt = omega x r` (closed-form axis-angle map, a
//!   truncated exponential series, and time-dependent integrators);
//! - [`units`]: pinned CODATA-2018 constants, frame parameters, and the
//!   dimensionless scaling shared by the analytic and numerical halves;
//! - [`analytic`]: gauge potential, lattice kinetic momenta, ladder
//!   operators, the exact spectrum, and normalized eigenfunctions;
//! - [`spectral`]: finite-difference discretization with a
//!   self-contained symmetric tridiagonal eigensolver and convergence
//!   studies against the analytic levels;
//! - [`ac`]: the rotation-induced geometric phase and level splitting,
//!   with a rapidly-rotating-molecule preset.
//!
//! Everything is deterministic: equal inputs give bitwise-equal output,
//! with no time, environment, or hidden-RNG dependence.

pub mod ac;
pub mod analytic;
pub mod error;
pub mod grid;
pub mod rotor;
pub mod spectral;
pub mod units;

pub use ac::{
    ac_energy_shift, ac_phase, evaluate_scenario, fullerene_preset, ACResult, ACScenario,
    DEFAULT_ENCLOSED_AREA, FULLERENE_OMEGA, PRINTED_ENCLOSED_AREA,
};
pub use analytic::{
    commutator_deviation, coriolis_field, eigenfunction, energy_level, gauge_potential,
    hermite_function, kinetic_momentum_matrices, ladder_commutator_deviation,
    ladder_hamiltonian_deviation, ladder_matrices, KineticOperators, LadderOperators,
    QuantumNumbers, MAX_HERMITE_ORDER,
};
pub use error::{Error, Result};
pub use grid::Grid1D;
pub use rotor::{
    coriolis_acceleration, cross_apply_n, evolve_rodrigues, evolve_series, evolve_time_dependent,
    EvolveMethod, RotationGenerator, Vec3, MAX_SERIES_TERMS,
};
pub use spectral::{
    convergence_study, discretize_hamiltonian, eigensolve_lowest, log_log_slope, overlap,
    tridiag_eigen_lowest, EigenResult, StudyRow, TridiagEigen, TridiagMatrix, MAX_EIGENPAIRS,
};
pub use units::{
    guiding_center, joules_to_mev, oscillator_scaling, FrameParams, ScalingMap, ELECTRON_MASS,
    HBAR, J_PER_MEV,
};
