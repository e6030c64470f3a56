//! Stochastic kernels driven by the symmetric α-stable process on (-1, 1).

pub mod greens;
pub mod interior;
pub mod jump;
pub mod rng;
pub mod walk;

pub use greens::{
    c_hat, c_tilde, expected_exit_time, fixed_radius, greens_q, occupation_zeta, BallGeometry,
};
pub use interior::{interior_table, sample_interior, InteriorTable};
pub use jump::{jump_from_uniform, sample_direction_1d, sample_jump, sample_jump_with, JumpLaw};
pub use rng::{Purpose, RngStream};
pub use walk::{
    parabolic_walk, poisson_walk, Fn1, Fn2, ParabolicSpec, ParabolicWalker, PoissonSpec, PoissonWalker,
    SourceTime, WalkOutcome, DEFAULT_STEP_CAP,
};
