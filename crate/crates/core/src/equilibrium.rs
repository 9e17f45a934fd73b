//! Nash equilibria of quantized games and the GM III joint-payoff maximum.
//!
//! Expected payoffs are affine in each player's own operator weights while
//! the opponent is held fixed, so a best response is always attained at a
//! pure-operator vertex. Equilibrium checks therefore compare the profile
//! against the vertices of each player's strategy simplex and need no
//! search.

use std::fmt;

use rayon::prelude::*;
use thiserror::Error;

use crate::games::{build_gm3, GameParams};
use crate::mw::{
    branch_payoffs, expected_payoffs, gm3_joint_payoff_closed_form, induced_action_distribution,
    LocalOp, MixedStrategy, MixedStrategy3, MwError, QuantumGame,
};
use crate::tensor::{StateVector, TOLERANCE};

/// Tolerance on deviation gaps and affine coefficients.
pub const EQUILIBRIUM_TOLERANCE: f64 = 1e-9;

/// Resolution of the grid oracle for the joint-payoff maximum.
pub const DEFAULT_GRID_RESOLUTION: usize = 10;

/// Resolution of the per-player strategy grid in the classical reduction
/// check.
pub const REDUCTION_GRID_RESOLUTION: usize = 5;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum EquilibriumError {
    #[error(transparent)]
    Mw(#[from] MwError),
    #[error("profile is not an equilibrium (deviation gaps {gap_a:e}, {gap_b:e})")]
    NotAnEquilibrium { gap_a: f64, gap_b: f64 },
    #[error("initial state is not the basis state |{i}{j}>")]
    NonBasisState { i: usize, j: usize },
    #[error("grid resolution must be at least 1")]
    EmptyGrid,
}

pub type Result<T> = std::result::Result<T, EquilibriumError>;

/// Outcome of checking one strategy profile.
#[derive(Debug, Clone, PartialEq)]
pub struct ProfileVerdict {
    pub profile: (MixedStrategy, MixedStrategy),
    pub payoffs: (f64, f64),
    pub is_equilibrium: bool,
    /// Largest gain A can get by deviating alone, clamped at zero.
    pub deviation_gap_a: f64,
    pub deviation_gap_b: f64,
}

impl ProfileVerdict {
    pub fn joint_payoff(&self) -> f64 {
        self.payoffs.0 + self.payoffs.1
    }
}

fn vertex_payoffs_a(game: &QuantumGame, s_b: &MixedStrategy) -> Result<Vec<f64>> {
    MixedStrategy::vertices(game.dim())
        .iter()
        .map(|v| Ok(expected_payoffs(game, v, s_b)?.0))
        .collect()
}

fn vertex_payoffs_b(game: &QuantumGame, s_a: &MixedStrategy) -> Result<Vec<f64>> {
    MixedStrategy::vertices(game.dim())
        .iter()
        .map(|v| Ok(expected_payoffs(game, s_a, v)?.1))
        .collect()
}

fn max_of(values: &[f64]) -> f64 {
    values.iter().copied().fold(f64::NEG_INFINITY, f64::max)
}

pub fn verify_profile(
    game: &QuantumGame,
    s_a: &MixedStrategy,
    s_b: &MixedStrategy,
) -> Result<ProfileVerdict> {
    let payoffs = expected_payoffs(game, s_a, s_b)?;
    let gap_a = (max_of(&vertex_payoffs_a(game, s_b)?) - payoffs.0).max(0.0);
    let gap_b = (max_of(&vertex_payoffs_b(game, s_a)?) - payoffs.1).max(0.0);
    Ok(ProfileVerdict {
        profile: (*s_a, *s_b),
        payoffs,
        is_equilibrium: gap_a.max(gap_b) <= EQUILIBRIUM_TOLERANCE,
        deviation_gap_a: gap_a,
        deviation_gap_b: gap_b,
    })
}

/// Equilibria among the pure-operator profiles, A-major in vertex order.
pub fn find_vertex_equilibria(game: &QuantumGame) -> Result<Vec<ProfileVerdict>> {
    let vertices = MixedStrategy::vertices(game.dim());
    let mut found = Vec::new();
    for s_a in &vertices {
        for s_b in &vertices {
            let verdict = verify_profile(game, s_a, s_b)?;
            if verdict.is_equilibrium {
                found.push(verdict);
            }
        }
    }
    Ok(found)
}

/// How a strategy coordinate behaves on the equilibrium set.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CoordinateStatus {
    /// The player's payoff does not depend on this coordinate.
    Free,
    /// Negative coefficient: held at its smallest feasible value.
    PinnedLow,
    /// Positive coefficient: held at its largest feasible value.
    PinnedHigh,
}

impl fmt::Display for CoordinateStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CoordinateStatus::Free => "free",
            CoordinateStatus::PinnedLow => "pinned-low",
            CoordinateStatus::PinnedHigh => "pinned-high",
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CoordinateFamily {
    pub name: &'static str,
    /// Slope of the player's own payoff along this coordinate.
    pub coefficient: f64,
    pub status: CoordinateStatus,
    /// Range of the coordinate over the player's best-response face.
    pub interval: (f64, f64),
}

/// One player's share of an equilibrium family: the face of their simplex
/// spanned by the optimal vertices.
#[derive(Debug, Clone, PartialEq)]
pub struct PlayerFamily {
    pub coordinates: Vec<CoordinateFamily>,
    pub face: Vec<LocalOp>,
    dim: usize,
}

impl PlayerFamily {
    /// True when `s` puts no weight outside the face.
    pub fn contains(&self, s: &MixedStrategy) -> bool {
        s.dim() == self.dim
            && s.weights()
                .iter()
                .all(|(op, w)| self.face.contains(op) || *w <= TOLERANCE)
    }

    pub fn is_single_point(&self) -> bool {
        self.face.len() == 1
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FamilyShape {
    /// Every profile in the product of the two faces is an equilibrium.
    Product,
    /// The faces interact; only the sample profile is certified.
    Unclassified,
}

/// The equilibrium set containing a verified profile.
#[derive(Debug, Clone, PartialEq)]
pub struct EquilibriumFamily {
    pub sample: (MixedStrategy, MixedStrategy),
    pub player_a: PlayerFamily,
    pub player_b: PlayerFamily,
    pub shape: FamilyShape,
}

impl EquilibriumFamily {
    pub fn contains(&self, s_a: &MixedStrategy, s_b: &MixedStrategy) -> bool {
        match self.shape {
            FamilyShape::Product => self.player_a.contains(s_a) && self.player_b.contains(s_b),
            FamilyShape::Unclassified => (*s_a, *s_b) == self.sample,
        }
    }

    pub fn is_single_point(&self) -> bool {
        self.player_a.is_single_point() && self.player_b.is_single_point()
    }
}

impl fmt::Display for EquilibriumFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.shape == FamilyShape::Unclassified {
            return write!(f, "unclassified; certified at {} x {}", self.sample.0, self.sample.1);
        }
        let mut parts = Vec::new();
        for player in [&self.player_a, &self.player_b] {
            for c in &player.coordinates {
                let (lo, hi) = c.interval;
                let range = if lo == hi {
                    format!("{} = {lo}", c.name)
                } else {
                    format!("{} in [{lo}, {hi}]", c.name)
                };
                parts.push(format!("{range} ({})", c.status));
            }
        }
        let simplex = if self.player_a.dim == 3 { "; within the simplex" } else { "" };
        write!(f, "{}{simplex}", parts.join(", "))
    }
}

fn coordinate_names(dim: usize, player_a: bool) -> &'static [&'static str] {
    match (dim, player_a) {
        (2, true) => &["p"],
        (2, false) => &["q"],
        (_, true) => &["p", "p1"],
        (_, false) => &["q", "q1"],
    }
}

fn player_family(dim: usize, player_a: bool, vertex_values: &[f64]) -> PlayerFamily {
    let best = max_of(vertex_values);
    let ops = LocalOp::for_dim(dim);
    let face: Vec<LocalOp> = ops
        .iter()
        .zip(vertex_values)
        .filter(|(_, v)| best - **v <= EQUILIBRIUM_TOLERANCE)
        .map(|(op, _)| *op)
        .collect();
    // Slopes along the reported coordinates.
    let coefficients = match dim {
        2 => vec![vertex_values[0] - vertex_values[1]],
        _ => vec![
            vertex_values[1] - vertex_values[0],
            vertex_values[2] - vertex_values[0],
        ],
    };
    let face_coords: Vec<Vec<f64>> = face
        .iter()
        .map(|&op| MixedStrategy::pure(dim, op).coordinates())
        .collect();
    let coordinates = coordinate_names(dim, player_a)
        .iter()
        .zip(coefficients)
        .enumerate()
        .map(|(k, (&name, coefficient))| {
            let status = if coefficient.abs() <= EQUILIBRIUM_TOLERANCE {
                CoordinateStatus::Free
            } else if coefficient > 0.0 {
                CoordinateStatus::PinnedHigh
            } else {
                CoordinateStatus::PinnedLow
            };
            let values = face_coords.iter().map(|c| c[k]);
            let lo = values.clone().fold(f64::INFINITY, f64::min);
            let hi = values.fold(f64::NEG_INFINITY, f64::max);
            CoordinateFamily {
                name,
                coefficient,
                status,
                interval: (lo, hi),
            }
        })
        .collect();
    PlayerFamily {
        coordinates,
        face,
        dim,
    }
}

/// Describes the equilibrium set through a verified profile as a product
/// of best-response faces, when that product is itself an equilibrium set.
pub fn equilibrium_family(
    game: &QuantumGame,
    s_a: &MixedStrategy,
    s_b: &MixedStrategy,
) -> Result<EquilibriumFamily> {
    let verdict = verify_profile(game, s_a, s_b)?;
    if !verdict.is_equilibrium {
        return Err(EquilibriumError::NotAnEquilibrium {
            gap_a: verdict.deviation_gap_a,
            gap_b: verdict.deviation_gap_b,
        });
    }
    let dim = game.dim();
    let player_a = player_family(dim, true, &vertex_payoffs_a(game, s_b)?);
    let player_b = player_family(dim, false, &vertex_payoffs_b(game, s_a)?);

    // The product of faces is an equilibrium set iff each face stays optimal
    // against every vertex of the other face.
    let mut product = true;
    for &op_b in &player_b.face {
        let values = vertex_payoffs_a(game, &MixedStrategy::pure(dim, op_b))?;
        let best = max_of(&values);
        product &= LocalOp::for_dim(dim)
            .iter()
            .zip(&values)
            .all(|(op, v)| !player_a.face.contains(op) || best - v <= EQUILIBRIUM_TOLERANCE);
    }
    for &op_a in &player_a.face {
        let values = vertex_payoffs_b(game, &MixedStrategy::pure(dim, op_a))?;
        let best = max_of(&values);
        product &= LocalOp::for_dim(dim)
            .iter()
            .zip(&values)
            .all(|(op, v)| !player_b.face.contains(op) || best - v <= EQUILIBRIUM_TOLERANCE);
    }

    Ok(EquilibriumFamily {
        sample: (*s_a, *s_b),
        player_a,
        player_b,
        shape: if product {
            FamilyShape::Product
        } else {
            FamilyShape::Unclassified
        },
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MaxMethod {
    /// Vertex enumeration of the affine joint payoff.
    Analytic,
    /// Exhaustive scan with step `1/resolution`.
    Grid { resolution: usize },
}

impl fmt::Display for MaxMethod {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MaxMethod::Analytic => f.write_str("analytic"),
            MaxMethod::Grid { resolution } => write!(f, "grid(1/{resolution})"),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct JointMaxResult {
    pub max_value: f64,
    pub arg_state: StateVector,
    pub arg_strategies: (MixedStrategy3, MixedStrategy3),
    pub method: MaxMethod,
}

/// Maximum of the GM III joint payoff over initial states and the `C`
/// weights of both players.
///
/// The joint payoff is affine in `p` and `q` and linear in the nine
/// `|u_ij|²`, so the maximum sits at a basis state with `p, q ∈ {0, 1}`.
/// Ties keep the first candidate in `(i, j, p, q)` order.
pub fn maximize_joint_payoff_gm3(params: &GameParams) -> Result<JointMaxResult> {
    build_gm3(params).map_err(MwError::from)?;
    let mut best: Option<(f64, usize, usize, f64, f64)> = None;
    for i in 1..=3 {
        for j in 1..=3 {
            let state = StateVector::basis(3, i, j).map_err(MwError::from)?;
            for p in [0.0, 1.0] {
                for q in [0.0, 1.0] {
                    let value = gm3_joint_payoff_closed_form(params, &state, p, q)?;
                    if best.is_none_or(|(v, ..)| value > v) {
                        best = Some((value, i, j, p, q));
                    }
                }
            }
        }
    }
    let (max_value, i, j, p, q) = best.expect("nine candidate states");
    Ok(JointMaxResult {
        max_value,
        arg_state: StateVector::basis(3, i, j).map_err(MwError::from)?,
        arg_strategies: (MixedStrategy3::new(p, 0.0)?, MixedStrategy3::new(q, 0.0)?),
        method: MaxMethod::Analytic,
    })
}

/// All ways to split `total` units over `parts` bins, lexicographic.
pub fn simplex_grid(parts: usize, total: usize) -> Vec<Vec<usize>> {
    fn fill(parts: usize, total: usize, prefix: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if parts == 1 {
            prefix.push(total);
            out.push(prefix.clone());
            prefix.pop();
            return;
        }
        for k in 0..=total {
            prefix.push(k);
            fill(parts - 1, total - k, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    if parts > 0 {
        fill(parts, total, &mut Vec::with_capacity(parts), &mut out);
    }
    out
}

/// Every strategy of a `dim`-level player with coordinates on multiples of
/// `1/resolution`.
pub fn strategy_grid(dim: usize, resolution: usize) -> Vec<MixedStrategy> {
    let step = |k: usize| k as f64 / resolution as f64;
    match dim {
        2 => (0..=resolution)
            .map(|k| MixedStrategy::two(step(k)).expect("on grid"))
            .collect(),
        _ => (0..=resolution)
            .flat_map(|i| {
                (0..=resolution - i).map(move |j| MixedStrategy::three(step(i), step(j)).expect("on grid"))
            })
            .collect(),
    }
}

/// Upper bound on how far the grid optimum can fall below the true maximum.
/// Rounding the nine outcome weights onto the grid moves them by at most
/// `9h` in L1, against coefficients spanning `[0, 4/d]`; rounding `p` and
/// `q` moves each by `h/2` against slopes of at most `2/d`.
pub fn grid_slack(params: &GameParams, resolution: usize) -> f64 {
    let h = 1.0 / resolution as f64;
    (18.0 * h + 2.0 * h) / params.d
}

/// Grid oracle for [`maximize_joint_payoff_gm3`]: scans real amplitude
/// vectors `sqrt(w)` with `w` on the simplex grid, and `p, q` on
/// `{0, 1/n, …, 1}` with the `D` weights at zero, evaluating every point
/// through the density-matrix pipeline. Ties keep the lexicographically
/// first grid point, independent of evaluation order.
pub fn grid_maximize_joint_payoff_gm3(
    params: &GameParams,
    resolution: usize,
) -> Result<JointMaxResult> {
    if resolution == 0 {
        return Err(EquilibriumError::EmptyGrid);
    }
    let classical = build_gm3(params).map_err(MwError::from)?;
    let states = simplex_grid(9, resolution);
    let template = QuantumGame::new(classical, StateVector::basis(3, 1, 1).map_err(MwError::from)?)?;
    let n = resolution as f64;

    let best = states
        .par_iter()
        .enumerate()
        .map(|(idx, units)| -> Result<(f64, usize, usize, usize)> {
            let weights: Vec<f64> = units.iter().map(|&k| k as f64 / n).collect();
            let state = StateVector::from_weights(3, &weights).map_err(MwError::from)?;
            let game = template.with_state(state)?;
            let joint: Vec<f64> = branch_payoffs(&game)?.iter().map(|(x, y)| x + y).collect();
            let mut best = (f64::NEG_INFINITY, idx, 0, 0);
            for pi in 0..=resolution {
                for qi in 0..=resolution {
                    let (p, q) = (pi as f64 / n, qi as f64 / n);
                    // Branch order is A-major over (I, C, D); D carries no weight.
                    let wa = [1.0 - p, p];
                    let wb = [1.0 - q, q];
                    let mut value = 0.0;
                    for (ka, xa) in wa.iter().enumerate() {
                        for (kb, xb) in wb.iter().enumerate() {
                            value += xa * xb * joint[ka * 3 + kb];
                        }
                    }
                    if value > best.0 {
                        best = (value, idx, pi, qi);
                    }
                }
            }
            Ok(best)
        })
        .try_reduce(
            || (f64::NEG_INFINITY, usize::MAX, 0, 0),
            |x, y| {
                let y_wins = y.0 > x.0 || (y.0 == x.0 && (y.1, y.2, y.3) < (x.1, x.2, x.3));
                Ok(if y_wins { y } else { x })
            },
        )?;

    let (max_value, idx, pi, qi) = best;
    let weights: Vec<f64> = states[idx].iter().map(|&k| k as f64 / n).collect();
    Ok(JointMaxResult {
        max_value,
        arg_state: StateVector::from_weights(3, &weights).map_err(MwError::from)?,
        arg_strategies: (
            MixedStrategy3::new(pi as f64 / n, 0.0)?,
            MixedStrategy3::new(qi as f64 / n, 0.0)?,
        ),
        method: MaxMethod::Grid { resolution },
    })
}

/// Checks that a game started in the basis state `|ij⟩` reproduces the
/// classical game: on a strategy grid, quantum payoffs equal the classical
/// expected payoffs under the induced distribution of final actions.
pub fn classical_reduction_check(game: &QuantumGame, i: usize, j: usize) -> Result<bool> {
    if game.initial_state().as_basis_label() != Some((i, j)) {
        return Err(EquilibriumError::NonBasisState { i, j });
    }
    let dim = game.dim();
    let grid = strategy_grid(dim, REDUCTION_GRID_RESOLUTION);
    for s_a in &grid {
        for s_b in &grid {
            let (qa, qb) = expected_payoffs(game, s_a, s_b)?;
            let dist = induced_action_distribution(dim, i, j, s_a, s_b);
            let (ca, cb) = game.classical().expected_payoffs(&dist);
            if (qa - ca).abs() > TOLERANCE || (qb - cb).abs() > TOLERANCE {
                return Ok(false);
            }
        }
    }
    Ok(true)
}
