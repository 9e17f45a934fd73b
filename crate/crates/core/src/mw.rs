//! Marinatto-Weber quantization of the opinion games.
//!
//! Both players share an initial state `|ψ_in⟩`. Each player applies one of
//! a fixed set of local permutation operators at random, with probabilities
//! given by a mixed strategy. The final density matrix is the resulting
//! convex mixture of conjugated copies of `ρ_in = |ψ_in⟩⟨ψ_in|`, and each
//! player's expected payoff is the mean of a diagonal payoff operator.
//!
//! Operator sets:
//!
//! | dim | operator | action on labels        |
//! |-----|----------|-------------------------|
//! | 2   | `I`      | identity                |
//! | 2   | `C`      | 1 ↔ 2                   |
//! | 3   | `I`      | identity                |
//! | 3   | `C`      | 1 ↔ 3, fixes 2          |
//! | 3   | `D`      | 1 ↔ 2, fixes 3          |

use std::fmt;

use num_complex::Complex64;
use rand::Rng;
use thiserror::Error;

use crate::games::{BimatrixGame, GameError, GameParams, Model};
use crate::tensor::{
    conjugate_sandwich, expectation, outer_product, tensor, DensityMatrix, Operator, StateVector,
    TensorError, TOLERANCE,
};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum MwError {
    #[error(transparent)]
    Tensor(#[from] TensorError),
    #[error(transparent)]
    Game(#[from] GameError),
    #[error("probability {name} = {value} is outside [0, 1]")]
    ProbabilityOutOfRange { name: &'static str, value: f64 },
    #[error("strategy (p = {p}, p1 = {p1}) is outside the simplex p, p1 >= 0, p + p1 <= 1")]
    OutsideSimplex { p: f64, p1: f64 },
    #[error("strategy for a {found}-level player used in a {expected}-level game")]
    StrategyDimension { expected: usize, found: usize },
    #[error("initial state is {found_a}x{found_b} but the game has {expected} strategies per player")]
    StateDimension {
        expected: usize,
        found_a: usize,
        found_b: usize,
    },
    #[error("closed form {form} requires a {expected}-level state, got {found}")]
    ClosedFormDimension {
        form: &'static str,
        expected: usize,
        found: usize,
    },
}

pub type Result<T> = std::result::Result<T, MwError>;

/// Local operators available to a player.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum LocalOp {
    Identity,
    C,
    D,
}

impl LocalOp {
    /// Operator set of a `dim`-level player, in vertex order.
    pub fn for_dim(dim: usize) -> &'static [LocalOp] {
        match dim {
            2 => &[LocalOp::Identity, LocalOp::C],
            3 => &[LocalOp::Identity, LocalOp::C, LocalOp::D],
            _ => &[],
        }
    }

    /// Image of a 1-based basis label.
    pub fn image(self, dim: usize, label: usize) -> usize {
        match (self, dim, label) {
            (LocalOp::Identity, _, l) => l,
            (LocalOp::C, 2, 1) => 2,
            (LocalOp::C, 2, 2) => 1,
            (LocalOp::C, 3, 1) => 3,
            (LocalOp::C, 3, 3) => 1,
            (LocalOp::C, 3, l) => l,
            (LocalOp::D, 3, 1) => 2,
            (LocalOp::D, 3, 2) => 1,
            (LocalOp::D, 3, l) => l,
            _ => panic!("{self} is not defined on a {dim}-level space"),
        }
    }

    /// Permutation matrix on the local space.
    pub fn matrix(self, dim: usize) -> Operator {
        let images: Vec<usize> = (1..=dim).map(|l| self.image(dim, l) - 1).collect();
        Operator::permutation(&images)
    }
}

impl fmt::Display for LocalOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            LocalOp::Identity => "I",
            LocalOp::C => "C",
            LocalOp::D => "D",
        })
    }
}

/// 2-level mixed strategy: `I` with probability `p`, `C` with `1 - p`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MixedStrategy2 {
    p: f64,
}

impl MixedStrategy2 {
    pub fn new(p: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&p) {
            return Err(MwError::ProbabilityOutOfRange { name: "p", value: p });
        }
        Ok(Self { p })
    }

    pub fn random<R: Rng + ?Sized>(rng: &mut R) -> Self {
        Self { p: rng.random() }
    }

    pub fn p(&self) -> f64 {
        self.p
    }
}

/// 3-level mixed strategy: `C` with probability `p`, `D` with `p1`, and
/// `I` with the remainder.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MixedStrategy3 {
    p: f64,
    p1: f64,
}

impl MixedStrategy3 {
    pub fn new(p: f64, p1: f64) -> Result<Self> {
        for (name, value) in [("p", p), ("p1", p1)] {
            if !(0.0..=1.0).contains(&value) {
                return Err(MwError::ProbabilityOutOfRange { name, value });
            }
        }
        if p + p1 > 1.0 + TOLERANCE {
            return Err(MwError::OutsideSimplex { p, p1 });
        }
        Ok(Self { p, p1 })
    }

    /// Uniform on the simplex.
    pub fn random<R: Rng + ?Sized>(rng: &mut R) -> Self {
        let (x, y): (f64, f64) = (rng.random(), rng.random());
        let (lo, hi) = if x < y { (x, y) } else { (y, x) };
        Self { p: lo, p1: hi - lo }
    }

    pub fn p(&self) -> f64 {
        self.p
    }

    pub fn p1(&self) -> f64 {
        self.p1
    }

    /// Weight left on the identity.
    pub fn identity_weight(&self) -> f64 {
        (1.0 - self.p - self.p1).max(0.0)
    }
}

/// A player's mixed strategy over their local operator set.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum MixedStrategy {
    Two(MixedStrategy2),
    Three(MixedStrategy3),
}

impl MixedStrategy {
    pub fn two(p: f64) -> Result<Self> {
        MixedStrategy2::new(p).map(Self::Two)
    }

    pub fn three(p: f64, p1: f64) -> Result<Self> {
        MixedStrategy3::new(p, p1).map(Self::Three)
    }

    /// The pure strategy that always applies `op`.
    pub fn pure(dim: usize, op: LocalOp) -> Self {
        match (dim, op) {
            (2, LocalOp::Identity) => Self::Two(MixedStrategy2 { p: 1.0 }),
            (2, LocalOp::C) => Self::Two(MixedStrategy2 { p: 0.0 }),
            (3, LocalOp::Identity) => Self::Three(MixedStrategy3 { p: 0.0, p1: 0.0 }),
            (3, LocalOp::C) => Self::Three(MixedStrategy3 { p: 1.0, p1: 0.0 }),
            (3, LocalOp::D) => Self::Three(MixedStrategy3 { p: 0.0, p1: 1.0 }),
            _ => panic!("{op} is not available to a {dim}-level player"),
        }
    }

    /// Pure strategies in vertex order.
    pub fn vertices(dim: usize) -> Vec<Self> {
        LocalOp::for_dim(dim)
            .iter()
            .map(|&op| Self::pure(dim, op))
            .collect()
    }

    pub fn random<R: Rng + ?Sized>(dim: usize, rng: &mut R) -> Self {
        match dim {
            2 => Self::Two(MixedStrategy2::random(rng)),
            _ => Self::Three(MixedStrategy3::random(rng)),
        }
    }

    pub fn dim(&self) -> usize {
        match self {
            Self::Two(_) => 2,
            Self::Three(_) => 3,
        }
    }

    /// Probability of each operator, in vertex order.
    pub fn weights(&self) -> Vec<(LocalOp, f64)> {
        match *self {
            Self::Two(s) => vec![(LocalOp::Identity, s.p), (LocalOp::C, 1.0 - s.p)],
            Self::Three(s) => vec![
                (LocalOp::Identity, s.identity_weight()),
                (LocalOp::C, s.p),
                (LocalOp::D, s.p1),
            ],
        }
    }

    /// Coordinates as reported to users: `[p]` or `[p, p1]`.
    pub fn coordinates(&self) -> Vec<f64> {
        match *self {
            Self::Two(s) => vec![s.p],
            Self::Three(s) => vec![s.p, s.p1],
        }
    }

    /// `(1 - t) * self + t * other`.
    pub fn lerp(&self, other: &Self, t: f64) -> Result<Self> {
        match (self, other) {
            (Self::Two(x), Self::Two(y)) => Self::two((1.0 - t) * x.p + t * y.p),
            (Self::Three(x), Self::Three(y)) => {
                Self::three((1.0 - t) * x.p + t * y.p, (1.0 - t) * x.p1 + t * y.p1)
            }
            _ => Err(MwError::StrategyDimension {
                expected: self.dim(),
                found: other.dim(),
            }),
        }
    }
}

impl From<MixedStrategy2> for MixedStrategy {
    fn from(s: MixedStrategy2) -> Self {
        Self::Two(s)
    }
}

impl From<MixedStrategy3> for MixedStrategy {
    fn from(s: MixedStrategy3) -> Self {
        Self::Three(s)
    }
}

impl fmt::Display for MixedStrategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Two(s) => write!(f, "(p={})", s.p),
            Self::Three(s) => write!(f, "(p={}, p1={})", s.p, s.p1),
        }
    }
}

/// `P_X = Σ E_X(i,j) |ij⟩⟨ij|` for both players.
pub fn payoff_operators(game: &BimatrixGame) -> (Operator, Operator) {
    let diag = |table: &[f64]| Operator::diagonal(table).expect("game tables are finite");
    (diag(game.table_a()), diag(game.table_b()))
}

/// A classical game together with its shared initial state.
#[derive(Debug, Clone)]
pub struct QuantumGame {
    classical: BimatrixGame,
    initial_state: StateVector,
    payoff_a: Operator,
    payoff_b: Operator,
    /// `(U_a ⊗ U_b) ρ_in (U_a ⊗ U_b)†` for every operator pair, A-major in
    /// vertex order.
    branches: Vec<DensityMatrix>,
}

impl QuantumGame {
    pub fn new(classical: BimatrixGame, initial_state: StateVector) -> Result<Self> {
        let n = classical.n_strategies();
        if initial_state.dim_a() != n || initial_state.dim_b() != n {
            return Err(MwError::StateDimension {
                expected: n,
                found_a: initial_state.dim_a(),
                found_b: initial_state.dim_b(),
            });
        }
        let (payoff_a, payoff_b) = payoff_operators(&classical);
        let rho_in = outer_product(&initial_state);
        let ops = LocalOp::for_dim(n);
        let mut branches = Vec::with_capacity(ops.len() * ops.len());
        for op_a in ops {
            for op_b in ops {
                let joint = tensor(&op_a.matrix(n), &op_b.matrix(n));
                branches.push(conjugate_sandwich(&joint, &rho_in)?);
            }
        }
        Ok(Self {
            classical,
            initial_state,
            payoff_a,
            payoff_b,
            branches,
        })
    }

    /// The same classical game with a different initial state.
    pub fn with_state(&self, initial_state: StateVector) -> Result<Self> {
        Self::new(self.classical.clone(), initial_state)
    }

    pub fn classical(&self) -> &BimatrixGame {
        &self.classical
    }

    pub fn initial_state(&self) -> &StateVector {
        &self.initial_state
    }

    /// Number of levels per player.
    pub fn dim(&self) -> usize {
        self.classical.n_strategies()
    }

    pub fn payoff_operators(&self) -> (&Operator, &Operator) {
        (&self.payoff_a, &self.payoff_b)
    }

    fn check_strategy(&self, s: &MixedStrategy) -> Result<()> {
        if s.dim() != self.dim() {
            return Err(MwError::StrategyDimension {
                expected: self.dim(),
                found: s.dim(),
            });
        }
        Ok(())
    }
}

/// `ρ_fin = Σ w_A(U) w_B(V) (U ⊗ V) ρ_in (U ⊗ V)†` over both operator sets.
pub fn final_density(
    game: &QuantumGame,
    s_a: &MixedStrategy,
    s_b: &MixedStrategy,
) -> Result<DensityMatrix> {
    game.check_strategy(s_a)?;
    game.check_strategy(s_b)?;
    let (wa, wb) = (s_a.weights(), s_b.weights());
    let terms = wa
        .iter()
        .flat_map(|(_, x)| wb.iter().map(move |(_, y)| x * y))
        .zip(&game.branches);
    Ok(DensityMatrix::mixture(terms)?)
}

/// Four-term mixture over `{I, C} ⊗ {I, C}`.
pub fn final_density_2x2(
    game: &QuantumGame,
    s_a: MixedStrategy2,
    s_b: MixedStrategy2,
) -> Result<DensityMatrix> {
    final_density(game, &s_a.into(), &s_b.into())
}

/// Nine-term mixture over `{I, C, D} ⊗ {I, C, D}`.
pub fn final_density_3x3(
    game: &QuantumGame,
    s_a: MixedStrategy3,
    s_b: MixedStrategy3,
) -> Result<DensityMatrix> {
    final_density(game, &s_a.into(), &s_b.into())
}

/// `(Tr(P_A ρ_fin), Tr(P_B ρ_fin))`
pub fn expected_payoffs(
    game: &QuantumGame,
    s_a: &MixedStrategy,
    s_b: &MixedStrategy,
) -> Result<(f64, f64)> {
    let rho = final_density(game, s_a, s_b)?;
    Ok((
        expectation(&game.payoff_a, &rho)?,
        expectation(&game.payoff_b, &rho)?,
    ))
}

/// Payoffs of every pure operator pair, A-major in vertex order. Used by
/// scans that reweight the same branches many times.
pub fn branch_payoffs(game: &QuantumGame) -> Result<Vec<(f64, f64)>> {
    game.branches
        .iter()
        .map(|rho| Ok((expectation(&game.payoff_a, rho)?, expectation(&game.payoff_b, rho)?)))
        .collect()
}

/// Distribution over final pure profiles (row-major) obtained by pushing
/// the basis outcome `(i, j)` through each operator pair with the
/// strategies' weights.
pub fn induced_action_distribution(
    dim: usize,
    i: usize,
    j: usize,
    s_a: &MixedStrategy,
    s_b: &MixedStrategy,
) -> Vec<f64> {
    let mut dist = vec![0.0; dim * dim];
    for (op_a, wa) in s_a.weights() {
        for (op_b, wb) in s_b.weights() {
            let (fi, fj) = (op_a.image(dim, i), op_b.image(dim, j));
            dist[(fi - 1) * dim + (fj - 1)] += wa * wb;
        }
    }
    dist
}

fn require_dim(form: &'static str, state: &StateVector, expected: usize) -> Result<()> {
    if state.dim_a() != expected || state.dim_b() != expected {
        return Err(MwError::ClosedFormDimension {
            form,
            expected,
            found: state.dim_a().max(state.dim_b()),
        });
    }
    Ok(())
}

/// Closed-form quantum GM I payoffs, `p` and `q` being the
/// identity weights of A and B.
pub fn gm1_payoff_closed_form(
    params: &GameParams,
    state: &StateVector,
    p: f64,
    q: f64,
) -> Result<(f64, f64)> {
    require_dim("gm1", state, 2)?;
    let u = |i, j| state.probability(i, j);
    let (u11, u12, u21, u22) = (u(1, 1), u(1, 2), u(2, 1), u(2, 2));
    let payoff_a = -(params.a + params.b)
        * (p * u11 + p * u12 - p * u21 - p * u22 - q * u11 + q * u12 - q * u21 + q * u22 - u12
            + u21);
    Ok((payoff_a, -payoff_a))
}

/// Closed-form quantum GM III joint payoff. `p` and `q`
/// are the weights on `C`; the expression has no dependence on the `D`
/// weights.
pub fn gm3_joint_payoff_closed_form(
    params: &GameParams,
    state: &StateVector,
    p: f64,
    q: f64,
) -> Result<f64> {
    require_dim("gm3-joint", state, 3)?;
    let u = |i, j| state.probability(i, j);
    let sum = 2.0 * u(1, 3) + 2.0 * u(2, 3) + 2.0 * u(3, 1) + 2.0 * u(3, 2) + 4.0 * u(3, 3)
        + 2.0 * p * u(1, 1)
        + 2.0 * p * u(1, 2)
        + 2.0 * p * u(1, 3)
        - 2.0 * p * u(3, 1)
        - 2.0 * p * u(3, 2)
        - 2.0 * p * u(3, 3)
        + 2.0 * q * u(1, 1)
        - 2.0 * q * u(1, 3)
        + 2.0 * q * u(2, 1)
        - 2.0 * q * u(2, 3)
        + 2.0 * q * u(3, 1)
        - 2.0 * q * u(3, 3);
    Ok(sum / params.d)
}

/// Closed-form quantum GM III payoffs for the state `√0.5 (|11⟩ + |33⟩)`.
pub fn gm3_entangled_payoffs_closed_form(
    params: &GameParams,
    s_a: &MixedStrategy3,
    s_b: &MixedStrategy3,
) -> (f64, f64) {
    let GameParams { a, b, d, .. } = *params;
    let (p1, q1) = (s_a.p1, s_b.p1);
    let payoff_a = (a * d * p1 - a * d * q1 + b * d * p1 - b * d * q1 + 2.0) / (2.0 * d);
    let payoff_b = (a * d * q1 - a * d * p1 - b * d * p1 + b * d * q1 + 2.0) / (2.0 * d);
    (payoff_a, payoff_b)
}

/// `√0.5 |11⟩ + √0.5 |33⟩`
pub fn entangled_11_33() -> StateVector {
    let h = Complex64::new(0.5f64.sqrt(), 0.0);
    let mut amps = vec![Complex64::new(0.0, 0.0); 9];
    amps[0] = h;
    amps[8] = h;
    StateVector::new(3, 3, amps).expect("normalized by construction")
}

/// Equal-amplitude state over all outcomes.
pub fn uniform_state(dim: usize) -> StateVector {
    StateVector::from_weights(dim, &vec![1.0 / (dim * dim) as f64; dim * dim])
        .expect("normalized by construction")
}

/// Convenience: quantized `model` with `params` on `state`.
pub fn quantize(model: Model, params: &GameParams, state: StateVector) -> Result<QuantumGame> {
    QuantumGame::new(model.build(params)?, state)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::games::{build_gm1, build_gm2, build_gm3};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn params(a: f64, b: f64, c: f64, d: f64) -> GameParams {
        GameParams::new(a, b, c, d).unwrap()
    }

    #[test]
    fn local_operators_follow_label_rules() {
        assert_eq!(LocalOp::C.matrix(2), Operator::permutation(&[1, 0]));
        assert_eq!(LocalOp::C.matrix(3), Operator::permutation(&[2, 1, 0]));
        assert_eq!(LocalOp::D.matrix(3), Operator::permutation(&[1, 0, 2]));
        for dim in [2, 3] {
            for op in LocalOp::for_dim(dim) {
                let m = op.matrix(dim);
                assert!(m.is_unitary(0.0) && m.is_hermitian(0.0));
            }
        }
    }

    #[test]
    fn strategy_validation() {
        assert!(MixedStrategy2::new(1.5).is_err());
        assert!(MixedStrategy3::new(0.6, 0.6).is_err());
        assert!(MixedStrategy3::new(-0.1, 0.5).is_err());
        assert!(MixedStrategy3::new(0.5, 0.5).is_ok());
    }

    #[test]
    fn final_density_2x2_basis_cases() {
        let g = quantize(Model::Gm1, &params(1.0, 1.0, 1.0, 1.0), StateVector::basis(2, 1, 1).unwrap())
            .unwrap();
        let one = MixedStrategy2::new(1.0).unwrap();
        let zero = MixedStrategy2::new(0.0).unwrap();
        let rho = final_density_2x2(&g, one, one).unwrap();
        assert_eq!(rho, outer_product(&StateVector::basis(2, 1, 1).unwrap()));
        let rho = final_density_2x2(&g, one, zero).unwrap();
        assert_eq!(rho, outer_product(&StateVector::basis(2, 1, 2).unwrap()));
    }

    #[test]
    fn final_density_3x3_entangled_dd() {
        let g = quantize(Model::Gm3, &params(1.0, 1.0, 1.0, 1.0), entangled_11_33()).unwrap();
        let dd = MixedStrategy3::new(0.0, 1.0).unwrap();
        let rho = final_density_3x3(&g, dd, dd).unwrap();
        let h = 0.5f64.sqrt();
        let mut amps = vec![Complex64::new(0.0, 0.0); 9];
        amps[4] = h.into();
        amps[8] = h.into();
        let expected = outer_product(&StateVector::new(3, 3, amps).unwrap());
        assert!(rho.max_abs_diff(&expected) < 1e-15);

        let id = MixedStrategy3::new(0.0, 0.0).unwrap();
        let rho = final_density_3x3(&g, id, id).unwrap();
        assert_eq!(rho, outer_product(&entangled_11_33()));
    }

    #[test]
    fn final_density_invariants_on_random_inputs() {
        let mut rng = ChaCha8Rng::seed_from_u64(23);
        for model in Model::ALL {
            for _ in 0..50 {
                let n = model.n_strategies();
                let g = quantize(model, &params(1.0, 2.0, 0.5, 0.7), StateVector::random(n, &mut rng))
                    .unwrap();
                let (sa, sb) = (MixedStrategy::random(n, &mut rng), MixedStrategy::random(n, &mut rng));
                let rho = final_density(&g, &sa, &sb).unwrap();
                rho.check_invariants().unwrap();
                assert!((rho.diagonal().iter().sum::<f64>() - 1.0).abs() <= 1e-12);
            }
        }
    }

    #[test]
    fn strategy_dimension_mismatch() {
        let g = quantize(Model::Gm1, &params(1.0, 1.0, 1.0, 1.0), StateVector::basis(2, 1, 1).unwrap())
            .unwrap();
        let s3 = MixedStrategy::three(0.0, 0.0).unwrap();
        let s2 = MixedStrategy::two(0.5).unwrap();
        assert!(matches!(
            expected_payoffs(&g, &s3, &s2),
            Err(MwError::StrategyDimension { expected: 2, found: 3 })
        ));
        assert!(matches!(
            quantize(Model::Gm2, &params(1.0, 1.0, 1.0, 1.0), StateVector::basis(2, 1, 1).unwrap()),
            Err(MwError::StateDimension { .. })
        ));
    }

    #[test]
    fn payoff_operators_are_diagonal_tables() {
        let (pa, pb) = payoff_operators(&build_gm1(&params(1.0, 2.0, 1.0, 1.0)).unwrap());
        let diag: Vec<f64> = (0..4).map(|k| pa.get(k, k).re).collect();
        assert_eq!(diag, vec![0.0, -3.0, 3.0, 0.0]);
        let (pa3, _) = payoff_operators(&build_gm3(&params(1.0, 1.0, 1.0, 0.5)).unwrap());
        assert_eq!(pa3.get(8, 8).re, 4.0);
        for op in [&pa, &pb, &pa3] {
            assert!(op.is_hermitian(0.0));
            let n = op.dim();
            for r in 0..n {
                for c in 0..n {
                    if r != c {
                        assert_eq!(op.get(r, c).norm(), 0.0);
                    }
                }
            }
        }
    }

    #[test]
    fn expected_payoff_examples() {
        let g = quantize(Model::Gm1, &params(1.0, 2.0, 1.0, 1.0), StateVector::basis(2, 1, 2).unwrap())
            .unwrap();
        let one = MixedStrategy::two(1.0).unwrap();
        assert_eq!(expected_payoffs(&g, &one, &one).unwrap(), (-3.0, 3.0));

        for d in [0.3, 1.0, 2.0, 7.5] {
            let g = quantize(Model::Gm3, &params(1.2, 0.4, 2.0, d), entangled_11_33()).unwrap();
            let dd = MixedStrategy::three(0.0, 1.0).unwrap();
            let (x, y) = expected_payoffs(&g, &dd, &dd).unwrap();
            assert!((x - 1.0 / d).abs() < 1e-12 && (y - 1.0 / d).abs() < 1e-12);
        }

        let mut rng = ChaCha8Rng::seed_from_u64(29);
        let g2 = build_gm2(&params(1.5, 0.5, 2.5, 1.0)).unwrap();
        for _ in 0..100 {
            let g = QuantumGame::new(g2.clone(), StateVector::random(3, &mut rng)).unwrap();
            let (sa, sb) = (MixedStrategy::random(3, &mut rng), MixedStrategy::random(3, &mut rng));
            let (x, y) = expected_payoffs(&g, &sa, &sb).unwrap();
            assert!((x + y).abs() <= 1e-12);
        }
    }

    #[test]
    fn gm1_closed_form_examples() {
        let p = params(1.0, 2.0, 1.0, 1.0);
        let psi = StateVector::basis(2, 1, 2).unwrap();
        assert_eq!(gm1_payoff_closed_form(&p, &psi, 1.0, 1.0).unwrap(), (-3.0, 3.0));
        let psi = StateVector::basis(2, 1, 1).unwrap();
        for t in [0.0, 0.3, 1.0] {
            let (x, y) = gm1_payoff_closed_form(&p, &psi, t, t).unwrap();
            assert_eq!(x, 0.0);
            assert_eq!(y, 0.0);
        }
        assert!(gm1_payoff_closed_form(&p, &entangled_11_33(), 0.0, 0.0).is_err());
    }

    #[test]
    fn gm3_closed_form_examples() {
        let d = 0.8;
        let p = params(1.0, 1.0, 1.0, d);
        let corner = StateVector::basis(3, 3, 3).unwrap();
        assert_eq!(gm3_joint_payoff_closed_form(&p, &corner, 0.0, 0.0).unwrap(), 4.0 / d);
        for (x, y) in [(0.0, 0.0), (0.2, 0.9), (1.0, 1.0)] {
            let joint = gm3_joint_payoff_closed_form(&p, &entangled_11_33(), x, y).unwrap();
            assert!((joint - 2.0 / d).abs() < 1e-12);
        }

        let s = |p, p1| MixedStrategy3::new(p, p1).unwrap();
        let (x, y) = gm3_entangled_payoffs_closed_form(&p, &s(0.1, 0.4), &s(0.3, 0.4));
        assert!((x - 1.0 / d).abs() < 1e-15 && (y - 1.0 / d).abs() < 1e-15);
        let unit = params(1.0, 1.0, 1.0, 1.0);
        assert_eq!(gm3_entangled_payoffs_closed_form(&unit, &s(0.0, 1.0), &s(0.0, 0.0)), (2.0, 0.0));
    }

    #[test]
    fn induced_distribution_for_basis_11() {
        let sa = MixedStrategy::three(0.2, 0.3).unwrap();
        let sb = MixedStrategy::three(0.0, 0.0).unwrap();
        let dist = induced_action_distribution(3, 1, 1, &sa, &sb);
        // A ends on Change with 1 - p - p1, Keep with p1, Agree with p.
        assert!((dist[0] - 0.5).abs() < 1e-15);
        assert!((dist[3] - 0.3).abs() < 1e-15);
        assert!((dist[6] - 0.2).abs() < 1e-15);
    }
}
