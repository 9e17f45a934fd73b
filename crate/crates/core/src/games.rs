//! The three classical opinion-formation games and their pure-strategy
//! analysis.
//!
//! Each player either changes opinion, keeps it, or (in the 3×3 models)
//! moves to a compromise opinion. GM I is the 2×2 Change/Keep game. GM II
//! adds the compromise strategy. GM III additionally rewards compromise in
//! inverse proportion to the opinion distance `d`.
//!
//! All comparisons in this module are exact: table entries are direct
//! arithmetic on the parameters.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum GameError {
    #[error("parameter {name} must be finite and strictly positive, got {value}")]
    NonPositiveParameter { name: &'static str, value: f64 },
    #[error("unsupported game size {0}, expected 2 or 3 strategies")]
    UnsupportedSize(usize),
    #[error("payoff table has {found} entries, expected {expected}")]
    TableShape { expected: usize, found: usize },
    #[error("payoff table entry {index} is not finite")]
    NonFinite { index: usize },
    #[error("unknown game model {0:?}, expected GM1, GM2 or GM3")]
    UnknownModel(String),
}

pub type Result<T> = std::result::Result<T, GameError>;

/// Which of the three opinion-formation games a table was built from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Model {
    Gm1,
    Gm2,
    Gm3,
}

impl Model {
    pub const ALL: [Model; 3] = [Model::Gm1, Model::Gm2, Model::Gm3];

    pub fn n_strategies(self) -> usize {
        match self {
            Model::Gm1 => 2,
            Model::Gm2 | Model::Gm3 => 3,
        }
    }

    pub fn build(self, params: &GameParams) -> Result<BimatrixGame> {
        match self {
            Model::Gm1 => build_gm1(params),
            Model::Gm2 => build_gm2(params),
            Model::Gm3 => build_gm3(params),
        }
    }

    /// Names of the parameters the model's table does not depend on.
    pub fn ignored_params(self) -> &'static [&'static str] {
        match self {
            Model::Gm1 => &["c", "d"],
            Model::Gm2 => &["d"],
            Model::Gm3 => &[],
        }
    }
}

impl fmt::Display for Model {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Model::Gm1 => "GM1",
            Model::Gm2 => "GM2",
            Model::Gm3 => "GM3",
        })
    }
}

impl FromStr for Model {
    type Err = GameError;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_uppercase().replace(['-', '_', ' '], "").as_str() {
            "GM1" | "GMI" | "1" => Ok(Model::Gm1),
            "GM2" | "GMII" | "2" => Ok(Model::Gm2),
            "GM3" | "GMIII" | "3" => Ok(Model::Gm3),
            _ => Err(GameError::UnknownModel(s.to_string())),
        }
    }
}

/// Pure strategies, labelled 1, 2, 3 in this order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Strategy {
    Change,
    Keep,
    Agree,
}

impl Strategy {
    pub const ALL: [Strategy; 3] = [Strategy::Change, Strategy::Keep, Strategy::Agree];

    /// 0-based table index.
    pub fn index(self) -> usize {
        self as usize
    }

    /// 1-based basis label.
    pub fn label(self) -> usize {
        self.index() + 1
    }

    pub fn from_index(index: usize) -> Option<Self> {
        Self::ALL.get(index).copied()
    }

    pub fn name(self) -> &'static str {
        match self {
            Strategy::Change => "Change",
            Strategy::Keep => "Keep",
            Strategy::Agree => "Agree",
        }
    }
}

impl fmt::Display for Strategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Payoff units `a`, `b`, `c` and opinion distance `d`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GameParams {
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub d: f64,
}

impl GameParams {
    /// Validated constructor; every parameter must be strictly positive.
    pub fn new(a: f64, b: f64, c: f64, d: f64) -> Result<Self> {
        let params = Self { a, b, c, d };
        params.require(&["a", "b", "c", "d"])?;
        Ok(params)
    }

    fn value(&self, name: &str) -> f64 {
        match name {
            "a" => self.a,
            "b" => self.b,
            "c" => self.c,
            "d" => self.d,
            _ => unreachable!("unknown parameter {name}"),
        }
    }

    fn require(&self, names: &[&'static str]) -> Result<()> {
        for &name in names {
            let value = self.value(name);
            if !(value.is_finite() && value > 0.0) {
                return Err(GameError::NonPositiveParameter { name, value });
            }
        }
        Ok(())
    }

    /// The distance `1/(b+c)` at which GM III switches equilibrium.
    pub fn gm3_threshold(&self) -> f64 {
        1.0 / (self.b + self.c)
    }
}

/// A pure strategy profile.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PureProfile {
    pub row: Strategy,
    pub col: Strategy,
}

impl PureProfile {
    pub fn new(row: Strategy, col: Strategy) -> Self {
        Self { row, col }
    }
}

impl fmt::Display for PureProfile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.row, self.col)
    }
}

/// Two-player game given by payoff tables for the row player A and the
/// column player B, stored row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct BimatrixGame {
    model: Option<Model>,
    n: usize,
    payoff_a: Vec<f64>,
    payoff_b: Vec<f64>,
}

impl BimatrixGame {
    /// Arbitrary game over the first `n` strategies of Change, Keep, Agree.
    pub fn new(n: usize, payoff_a: Vec<f64>, payoff_b: Vec<f64>) -> Result<Self> {
        if n != 2 && n != 3 {
            return Err(GameError::UnsupportedSize(n));
        }
        for table in [&payoff_a, &payoff_b] {
            if table.len() != n * n {
                return Err(GameError::TableShape {
                    expected: n * n,
                    found: table.len(),
                });
            }
            if let Some(index) = table.iter().position(|x| !x.is_finite()) {
                return Err(GameError::NonFinite { index });
            }
        }
        Ok(Self {
            model: None,
            n,
            payoff_a,
            payoff_b,
        })
    }

    pub fn model(&self) -> Option<Model> {
        self.model
    }

    pub fn n_strategies(&self) -> usize {
        self.n
    }

    pub fn strategies(&self) -> &'static [Strategy] {
        &Strategy::ALL[..self.n]
    }

    pub fn payoff_a(&self, row: Strategy, col: Strategy) -> f64 {
        self.payoff_a[row.index() * self.n + col.index()]
    }

    pub fn payoff_b(&self, row: Strategy, col: Strategy) -> f64 {
        self.payoff_b[row.index() * self.n + col.index()]
    }

    pub fn payoffs(&self, profile: PureProfile) -> (f64, f64) {
        (
            self.payoff_a(profile.row, profile.col),
            self.payoff_b(profile.row, profile.col),
        )
    }

    pub fn joint_payoff(&self, profile: PureProfile) -> f64 {
        let (a, b) = self.payoffs(profile);
        a + b
    }

    /// Row-major table for player A.
    pub fn table_a(&self) -> &[f64] {
        &self.payoff_a
    }

    /// Row-major table for player B.
    pub fn table_b(&self) -> &[f64] {
        &self.payoff_b
    }

    /// All profiles in row-major order.
    pub fn profiles(&self) -> impl Iterator<Item = PureProfile> + '_ {
        self.strategies().iter().flat_map(move |&row| {
            self.strategies()
                .iter()
                .map(move |&col| PureProfile::new(row, col))
        })
    }

    /// Expected payoffs under a joint outcome distribution given row-major
    /// over the profiles.
    pub fn expected_payoffs(&self, distribution: &[f64]) -> (f64, f64) {
        assert_eq!(distribution.len(), self.n * self.n);
        let dot = |table: &[f64]| table.iter().zip(distribution).map(|(x, w)| x * w).sum();
        (dot(&self.payoff_a), dot(&self.payoff_b))
    }
}

fn from_rows(model: Model, rows: &[&[(f64, f64)]]) -> BimatrixGame {
    let n = rows.len();
    let (payoff_a, payoff_b) = rows.iter().flat_map(|row| row.iter().copied()).unzip();
    BimatrixGame {
        model: Some(model),
        n,
        payoff_a,
        payoff_b,
    }
}

/// GM I: Change/Keep, zero-sum.
pub fn build_gm1(params: &GameParams) -> Result<BimatrixGame> {
    params.require(&["a", "b"])?;
    let GameParams { a, b, .. } = *params;
    Ok(from_rows(
        Model::Gm1,
        &[
            &[(0.0, 0.0), (-a - b, a + b)],
            &[(a + b, -a - b), (0.0, 0.0)],
        ],
    ))
}

/// GM II: Change/Keep/Agree, zero-sum.
pub fn build_gm2(params: &GameParams) -> Result<BimatrixGame> {
    params.require(&["a", "b", "c"])?;
    let GameParams { a, b, c, .. } = *params;
    Ok(from_rows(
        Model::Gm2,
        &[
            &[(0.0, 0.0), (-a - b, a + b), (-a + c, a - c)],
            &[(a + b, -a - b), (0.0, 0.0), (b + c, -b - c)],
            &[(a - c, -a + c), (-b - c, b + c), (0.0, 0.0)],
        ],
    ))
}

/// GM III: GM II plus a `1/d` bonus to each side of every compromise
/// outcome.
pub fn build_gm3(params: &GameParams) -> Result<BimatrixGame> {
    params.require(&["a", "b", "c", "d"])?;
    let GameParams { a, b, c, d } = *params;
    let bonus = 1.0 / d;
    Ok(from_rows(
        Model::Gm3,
        &[
            &[(0.0, 0.0), (-a - b, a + b), (-a + c + bonus, a - c + bonus)],
            &[(a + b, -a - b), (0.0, 0.0), (b + c + bonus, -b - c + bonus)],
            &[
                (a - c + bonus, -a + c + bonus),
                (-b - c + bonus, b + c + bonus),
                (2.0 / d, 2.0 / d),
            ],
        ],
    ))
}

/// Pure profiles where neither player gains from a unilateral pure
/// deviation. Ties count as equilibria.
pub fn pure_nash_equilibria(game: &BimatrixGame) -> Vec<PureProfile> {
    let strategies = game.strategies();
    game.profiles()
        .filter(|p| {
            let row_best = strategies
                .iter()
                .all(|&r| game.payoff_a(r, p.col) <= game.payoff_a(p.row, p.col));
            let col_best = strategies
                .iter()
                .all(|&c| game.payoff_b(p.row, c) <= game.payoff_b(p.row, p.col));
            row_best && col_best
        })
        .collect()
}

pub fn is_zero_sum(game: &BimatrixGame) -> bool {
    game.payoff_a
        .iter()
        .zip(&game.payoff_b)
        .all(|(a, b)| a + b == 0.0)
}

/// Pure profiles not Pareto-dominated by another pure profile.
pub fn pareto_optimal_pure(game: &BimatrixGame) -> Vec<PureProfile> {
    let all: Vec<PureProfile> = game.profiles().collect();
    all.iter()
        .copied()
        .filter(|&p| {
            let (pa, pb) = game.payoffs(p);
            !all.iter().any(|&q| {
                let (qa, qb) = game.payoffs(q);
                qa >= pa && qb >= pb && (qa > pa || qb > pb)
            })
        })
        .collect()
}
