//! Opinion-formation games under Marinatto-Weber quantization.
//!
//! - [`tensor`]: states, permutation operators, density matrices.
//! - [`games`]: the classical GM I/II/III tables and their pure analysis.
//! - [`mw`]: the quantization pipeline and closed-form payoffs.
//! - [`equilibrium`]: equilibrium verification, equilibrium families and
//!   the GM III joint-payoff maximum.

pub mod equilibrium;
pub mod games;
pub mod mw;
pub mod tensor;

pub use equilibrium::{
    classical_reduction_check, equilibrium_family, find_vertex_equilibria,
    grid_maximize_joint_payoff_gm3, maximize_joint_payoff_gm3, verify_profile, EquilibriumFamily,
    JointMaxResult, ProfileVerdict,
};
pub use games::{BimatrixGame, GameParams, Model, PureProfile, Strategy};
pub use mw::{expected_payoffs, LocalOp, MixedStrategy, MixedStrategy2, MixedStrategy3, QuantumGame};
pub use tensor::{DensityMatrix, Operator, StateVector};
