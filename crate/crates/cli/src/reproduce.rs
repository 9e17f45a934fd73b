//! The quantitative claims checked by `reproduce-paper` and by the
//! acceptance suite. Every claim draws from its own seeded stream, so
//! adding or reordering claims does not shift the others.

use mw_opinion::equilibrium::{
    classical_reduction_check, grid_maximize_joint_payoff_gm3, maximize_joint_payoff_gm3,
    strategy_grid, verify_profile, EQUILIBRIUM_TOLERANCE,
};
use mw_opinion::games::{build_gm3, is_zero_sum, pareto_optimal_pure, pure_nash_equilibria};
use mw_opinion::mw::{
    entangled_11_33, expected_payoffs, final_density, gm1_payoff_closed_form,
    gm3_entangled_payoffs_closed_form, gm3_joint_payoff_closed_form, quantize, MixedStrategy3,
};
use mw_opinion::tensor::TOLERANCE;
use mw_opinion::{
    BimatrixGame, GameParams, LocalOp, MixedStrategy, Model, PureProfile, StateVector, Strategy,
};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::report::ClaimReport;
use crate::CliError;

pub type Result<T> = std::result::Result<T, CliError>;

/// Number of criteria covered by [`run_claims`].
pub const CRITERIA: u32 = 10;

/// Resolution of the dense deviation scan used against vertex reduction.
pub const DENSE_GRID: usize = 50;

/// Resolution of the state/strategy grid used by the maximum oracle.
pub const MAX_GRID: usize = 10;

/// Draw counts, in order of the claims below.
const CLASSICAL_DRAWS: usize = 100;
const THRESHOLD_DRAWS: usize = 100;
const PARETO_DRAWS: usize = 100;
const CLOSED_FORM_DRAWS: usize = 1000;
const D_WEIGHT_DRAWS: usize = 200;
const ZERO_SUM_DRAWS: usize = 1000;
const REDUCTION_DRAWS: usize = 10;
const MAX_D_VALUES: usize = 20;
const MAX_GRID_D_VALUES: usize = 5;
const WINWIN_DRAWS: usize = 100;
const DEVIATION_DRAWS: usize = 200;
const PROPERTY_DRAWS: usize = 1000;
const SOUNDNESS_DRAWS: usize = 500;

const THRESHOLD_OFFSET: f64 = 1e-6;

/// `(a, b, c)` with `b + c` a power of two, so `1/(1/(b+c)) == b+c`
/// holds exactly and the boundary case is decided without rounding.
const DYADIC_THRESHOLD_CASES: [(f64, f64, f64); 6] = [
    (1.0, 1.0, 1.0),
    (2.0, 0.25, 0.25),
    (0.3, 1.5, 2.5),
    (5.0, 0.125, 0.375),
    (0.7, 3.0, 5.0),
    (9.5, 0.0625, 0.0625),
];

fn rng_for(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

fn draw_params(rng: &mut impl Rng) -> GameParams {
    let mut draw = || rng.random_range(0.1..10.0);
    GameParams::new(draw(), draw(), draw(), draw()).expect("positive draws")
}

fn draw_model(rng: &mut impl Rng) -> Model {
    Model::ALL[rng.random_range(0..3)]
}

fn keep() -> PureProfile {
    PureProfile::new(Strategy::Keep, Strategy::Keep)
}

fn agree() -> PureProfile {
    PureProfile::new(Strategy::Agree, Strategy::Agree)
}

struct Claims {
    seed: u64,
    min_samples: usize,
    out: Vec<ClaimReport>,
}

impl Claims {
    fn count(&self, pinned: usize) -> usize {
        pinned.max(self.min_samples)
    }

    fn rng(&self) -> ChaCha8Rng {
        rng_for(self.seed, self.out.len() as u64)
    }

    fn push(&mut self, report: ClaimReport) {
        self.out.push(report);
    }
}

/// Runs every claim. `samples` raises each random draw count to at least
/// that value; it never lowers the pinned counts.
pub fn run_claims(seed: u64, samples: Option<usize>) -> Result<Vec<ClaimReport>> {
    let mut c = Claims {
        seed,
        min_samples: samples.unwrap_or(0),
        out: Vec::new(),
    };
    classical_structure(&mut c)?;
    gm3_threshold(&mut c)?;
    gm3_pareto(&mut c)?;
    closed_forms(&mut c)?;
    zero_sum(&mut c)?;
    classical_reduction(&mut c)?;
    gm3_max(&mut c)?;
    gm3_winwin(&mut c)?;
    gm3_deviation_identity(&mut c)?;
    properties(&mut c)?;
    Ok(c.out)
}

fn classical_structure(c: &mut Claims) -> Result<()> {
    let mut rng = c.rng();
    let n = c.count(CLASSICAL_DRAWS);
    let mut violations = 0usize;
    for _ in 0..n {
        let p = draw_params(&mut rng);
        for m in [Model::Gm1, Model::Gm2] {
            let g = m.build(&p)?;
            violations += usize::from(!is_zero_sum(&g));
            violations += usize::from(pure_nash_equilibria(&g) != vec![keep()]);
        }
        violations += usize::from(is_zero_sum(&build_gm3(&p)?));
    }
    c.push(ClaimReport::evaluate(
        "classical-structure",
        1,
        &format!("GM1 and GM2 zero-sum with unique pure NE (Keep,Keep), GM3 not zero-sum; violations over {n} draws"),
        vec![violations as f64],
        vec![0.0],
        0.0,
        "exact count",
    ));
    Ok(())
}

/// Violations of the threshold rule at a given `d`.
fn threshold_violations(p: &GameParams, d: f64, expect_agree: bool, expect_keep: bool) -> Result<usize> {
    let g = build_gm3(&GameParams { d, ..*p })?;
    let ne = pure_nash_equilibria(&g);
    let (has_agree, has_keep) = (ne.contains(&agree()), ne.contains(&keep()));
    let mut bad = usize::from(has_agree != expect_agree) + usize::from(has_keep != expect_keep);
    if has_agree {
        bad += usize::from(g.joint_payoff(agree()) != 4.0 / d);
    }
    if has_keep {
        bad += usize::from(g.joint_payoff(keep()) != 0.0);
    }
    Ok(bad)
}

fn gm3_threshold(c: &mut Claims) -> Result<()> {
    let mut rng = c.rng();
    let n = c.count(THRESHOLD_DRAWS);
    let mut violations = 0usize;
    let mut checks = 0usize;
    for &(a, b, cc) in &DYADIC_THRESHOLD_CASES {
        let p = GameParams::new(a, b, cc, 1.0)?;
        let t = p.gm3_threshold();
        violations += threshold_violations(&p, t, true, true)?;
        violations += threshold_violations(&p, t - THRESHOLD_OFFSET, true, false)?;
        violations += threshold_violations(&p, t + THRESHOLD_OFFSET, false, true)?;
        checks += 3;
    }
    for _ in 0..n {
        let p = draw_params(&mut rng);
        let t = p.gm3_threshold();
        violations += threshold_violations(&p, t - THRESHOLD_OFFSET, true, false)?;
        violations += threshold_violations(&p, t + THRESHOLD_OFFSET, false, true)?;
        checks += 2;
    }
    c.push(ClaimReport::evaluate(
        "gm3-threshold",
        2,
        &format!(
            "(Agree,Agree) is a pure NE with joint 4/d iff d <= 1/(b+c); (Keep,Keep) is one with joint 0 iff d >= 1/(b+c); violations over {checks} checks at the threshold and +-1e-6"
        ),
        vec![violations as f64],
        vec![0.0],
        0.0,
        "exact count",
    ));
    Ok(())
}

fn gm3_pareto(c: &mut Claims) -> Result<()> {
    let mut rng = c.rng();
    let n = c.count(PARETO_DRAWS);
    let mut violations = 0usize;
    for _ in 0..n {
        let g = build_gm3(&draw_params(&mut rng))?;
        violations += usize::from(!pareto_optimal_pure(&g).contains(&agree()));
    }
    c.push(ClaimReport::evaluate(
        "gm3-pareto",
        3,
        &format!("(Agree,Agree) is Pareto-optimal in GM3; violations over {n} draws"),
        vec![violations as f64],
        vec![0.0],
        0.0,
        "exact count",
    ));
    Ok(())
}

fn closed_forms(c: &mut Claims) -> Result<()> {
    let n = c.count(CLOSED_FORM_DRAWS);

    let mut rng = c.rng();
    let mut worst = 0.0f64;
    for _ in 0..n {
        let p = draw_params(&mut rng);
        let psi = StateVector::random(2, &mut rng);
        let (x, y) = (rng.random_range(0.0..=1.0), rng.random_range(0.0..=1.0));
        let g = quantize(Model::Gm1, &p, psi.clone())?;
        let pipe = expected_payoffs(&g, &MixedStrategy::two(x)?, &MixedStrategy::two(y)?)?;
        let closed = gm1_payoff_closed_form(&p, &psi, x, y)?;
        worst = worst.max((pipe.0 - closed.0).abs()).max((pipe.1 - closed.1).abs());
    }
    c.push(ClaimReport::evaluate(
        "gm1-closed-form",
        4,
        &format!("quantum GM1 closed-form payoffs vs pipeline; max abs difference over {n} draws"),
        vec![worst],
        vec![0.0],
        TOLERANCE,
        "pipeline oracle",
    ));

    let mut rng = c.rng();
    let mut worst = 0.0f64;
    for _ in 0..n {
        let p = draw_params(&mut rng);
        let psi = StateVector::random(3, &mut rng);
        let sa = MixedStrategy3::random(&mut rng);
        let sb = MixedStrategy3::random(&mut rng);
        let g = quantize(Model::Gm3, &p, psi.clone())?;
        let (x, y) = expected_payoffs(&g, &sa.into(), &sb.into())?;
        let closed = gm3_joint_payoff_closed_form(&p, &psi, sa.p(), sb.p())?;
        worst = worst.max((x + y - closed).abs());
    }
    c.push(ClaimReport::evaluate(
        "gm3-joint-closed-form",
        4,
        &format!("quantum GM3 closed-form joint payoff vs pipeline; max abs difference over {n} draws"),
        vec![worst],
        vec![0.0],
        TOLERANCE,
        "pipeline oracle",
    ));

    let mut rng = c.rng();
    let mut worst = 0.0f64;
    for _ in 0..n {
        let p = draw_params(&mut rng);
        let sa = MixedStrategy3::random(&mut rng);
        let sb = MixedStrategy3::random(&mut rng);
        let g = quantize(Model::Gm3, &p, entangled_11_33())?;
        let pipe = expected_payoffs(&g, &sa.into(), &sb.into())?;
        let closed = gm3_entangled_payoffs_closed_form(&p, &sa, &sb);
        worst = worst.max((pipe.0 - closed.0).abs()).max((pipe.1 - closed.1).abs());
    }
    c.push(ClaimReport::evaluate(
        "gm3-entangled-closed-form",
        4,
        &format!(
            "quantum GM3 closed-form payoffs on sqrt(0.5)(|11>+|33>) vs pipeline; max abs difference over {n} draws"
        ),
        vec![worst],
        vec![0.0],
        TOLERANCE,
        "pipeline oracle",
    ));

    // The joint payoff is evaluated with the D weights swept over a grid and
    // compared with the D-free value.
    let mut rng = c.rng();
    let n_sweep = c.count(D_WEIGHT_DRAWS);
    let mut worst = 0.0f64;
    for _ in 0..n_sweep {
        let p = draw_params(&mut rng);
        let g = quantize(Model::Gm3, &p, StateVector::random(3, &mut rng))?;
        let (x, y) = (rng.random_range(0.0..=1.0), rng.random_range(0.0..=1.0));
        let base = {
            let (u, v) = expected_payoffs(&g, &MixedStrategy::three(x, 0.0)?, &MixedStrategy::three(y, 0.0)?)?;
            u + v
        };
        for k in 0..=4 {
            for l in 0..=4 {
                let sa = MixedStrategy::three(x, k as f64 / 4.0 * (1.0 - x))?;
                let sb = MixedStrategy::three(y, l as f64 / 4.0 * (1.0 - y))?;
                let (u, v) = expected_payoffs(&g, &sa, &sb)?;
                worst = worst.max((u + v - base).abs());
            }
        }
    }
    c.push(ClaimReport::evaluate(
        "gm3-joint-ignores-d-weights",
        4,
        &format!(
            "quantum GM3 joint payoff does not depend on the D weights; max change over {n_sweep} states x 25 D-weight pairs"
        ),
        vec![worst],
        vec![0.0],
        TOLERANCE,
        "pipeline sweep",
    ));
    Ok(())
}

fn zero_sum(c: &mut Claims) -> Result<()> {
    let n = c.count(ZERO_SUM_DRAWS);
    for (model, id) in [(Model::Gm1, "zero-sum-gm1"), (Model::Gm2, "zero-sum-gm2")] {
        let mut rng = c.rng();
        let dim = model.n_strategies();
        let mut worst = 0.0f64;
        for _ in 0..n {
            let p = draw_params(&mut rng);
            let g = quantize(model, &p, StateVector::random(dim, &mut rng))?;
            let sa = MixedStrategy::random(dim, &mut rng);
            let sb = MixedStrategy::random(dim, &mut rng);
            let (x, y) = expected_payoffs(&g, &sa, &sb)?;
            worst = worst.max((x + y).abs());
        }
        c.push(ClaimReport::evaluate(
            id,
            5,
            &format!("quantum {model} stays zero-sum; max |A + B| over {n} draws"),
            vec![worst],
            vec![0.0],
            TOLERANCE,
            "exact identity",
        ));
    }
    Ok(())
}

/// Final action label after each local operator, `[operator][label - 1]`
/// with operators in the order I, C, D.
const ACTION_MAP_2: [[usize; 2]; 2] = [[1, 2], [2, 1]];
const ACTION_MAP_3: [[usize; 3]; 3] = [[1, 2, 3], [3, 2, 1], [2, 1, 3]];

/// Operator weights of a strategy in the order I, C, D.
fn operator_weights(s: &MixedStrategy) -> Vec<f64> {
    match s.coordinates().as_slice() {
        [p] => vec![*p, 1.0 - p],
        [p, p1] => vec![1.0 - p - p1, *p, *p1],
        _ => unreachable!("strategies have one or two coordinates"),
    }
}

/// Classical expected payoffs of starting from `(i, j)` and letting each
/// player apply its operators with the strategy weights.
fn classical_oracle(game: &BimatrixGame, i: usize, j: usize, s_a: &MixedStrategy, s_b: &MixedStrategy) -> (f64, f64) {
    let image = |op: usize, label: usize| match game.n_strategies() {
        2 => ACTION_MAP_2[op][label - 1],
        _ => ACTION_MAP_3[op][label - 1],
    };
    let action = |label: usize| Strategy::from_index(label - 1).expect("label in range");
    let (mut x, mut y) = (0.0, 0.0);
    for (ka, wa) in operator_weights(s_a).into_iter().enumerate() {
        for (kb, wb) in operator_weights(s_b).into_iter().enumerate() {
            let (row, col) = (action(image(ka, i)), action(image(kb, j)));
            x += wa * wb * game.payoff_a(row, col);
            y += wa * wb * game.payoff_b(row, col);
        }
    }
    (x, y)
}

fn classical_reduction(c: &mut Claims) -> Result<()> {
    let mut rng = c.rng();
    let n = c.count(REDUCTION_DRAWS);
    let mut worst = 0.0f64;
    let mut failed_checks = 0usize;
    let mut cases = 0usize;
    for _ in 0..n {
        let p = draw_params(&mut rng);
        for model in Model::ALL {
            let dim = model.n_strategies();
            let grid = strategy_grid(dim, 5);
            for i in 1..=dim {
                for j in 1..=dim {
                    let g = quantize(model, &p, StateVector::basis(dim, i, j)?)?;
                    failed_checks += usize::from(!classical_reduction_check(&g, i, j)?);
                    for s_a in &grid {
                        for s_b in &grid {
                            let (qa, qb) = expected_payoffs(&g, s_a, s_b)?;
                            let (ca, cb) = classical_oracle(g.classical(), i, j, s_a, s_b);
                            worst = worst.max((qa - ca).abs()).max((qb - cb).abs());
                        }
                    }
                    cases += 1;
                }
            }
        }
    }
    c.push(ClaimReport::evaluate(
        "classical-reduction",
        6,
        &format!(
            "basis initial states reproduce classical expected payoffs on a 1/5 strategy grid; [max abs difference, failed library checks] over {cases} (params, model, basis state) cases"
        ),
        vec![worst, failed_checks as f64],
        vec![0.0, 0.0],
        TOLERANCE,
        "classical action-mapping oracle",
    ));
    Ok(())
}

/// `count` values of d evenly spaced over [0.1, 10].
fn d_values(count: usize) -> Vec<f64> {
    if count == 1 {
        return vec![0.1];
    }
    (0..count)
        .map(|k| 0.1 + 9.9 * k as f64 / (count - 1) as f64)
        .collect()
}

fn gm3_max(c: &mut Claims) -> Result<()> {
    let mut rng = c.rng();
    let ds = d_values(MAX_D_VALUES);
    let mut observed = Vec::new();
    for &d in &ds {
        let p = GameParams { d, ..draw_params(&mut rng) };
        observed.push(maximize_joint_payoff_gm3(&p)?.max_value);
    }
    c.push(ClaimReport::evaluate(
        "gm3-max",
        7,
        &format!("analytic maximum of the quantum GM3 joint payoff at {} values of d in [0.1, 10]", ds.len()),
        observed,
        ds.iter().map(|d| 4.0 / d).collect(),
        0.0,
        "closed form 4/d",
    ));

    let mut rng = c.rng();
    let ds = d_values(MAX_GRID_D_VALUES);
    let mut observed = Vec::new();
    for &d in &ds {
        let p = GameParams { d, ..draw_params(&mut rng) };
        observed.push(grid_maximize_joint_payoff_gm3(&p, MAX_GRID)?.max_value);
    }
    c.push(ClaimReport::evaluate(
        "gm3-max-grid",
        7,
        &format!(
            "grid oracle (states and strategies at resolution 1/{MAX_GRID}) for the quantum GM3 joint maximum at {} values of d",
            ds.len()
        ),
        observed,
        ds.iter().map(|d| 4.0 / d).collect(),
        0.0,
        "closed form 4/d",
    ));
    Ok(())
}

fn gm3_winwin(c: &mut Claims) -> Result<()> {
    let mut rng = c.rng();
    let n = c.count(WINWIN_DRAWS);
    let dd = MixedStrategy::pure(3, LocalOp::D);
    let mut joints = Vec::new();
    let mut expected = Vec::new();
    let (mut not_equilibrium, mut worst_a, mut worst_b) = (0usize, 0.0f64, 0.0f64);
    let mut beyond_threshold = 0usize;
    for _ in 0..n {
        let p = draw_params(&mut rng);
        beyond_threshold += usize::from(p.d > p.gm3_threshold());
        let g = quantize(Model::Gm3, &p, entangled_11_33())?;
        let v = verify_profile(&g, &dd, &dd)?;
        not_equilibrium += usize::from(!v.is_equilibrium);
        worst_a = worst_a.max((v.payoffs.0 - 1.0 / p.d).abs());
        worst_b = worst_b.max((v.payoffs.1 - 1.0 / p.d).abs());
        joints.push(v.joint_payoff());
        expected.push(2.0 / p.d);
    }
    c.push(ClaimReport::evaluate(
        "gm3-winwin-unconditional",
        8,
        &format!(
            "joint payoff of the (D,D) equilibrium on sqrt(0.5)(|11>+|33>) over {n} draws of (a,b,c,d), {beyond_threshold} of them with d > 1/(b+c)"
        ),
        joints,
        expected,
        TOLERANCE,
        "closed form 2/d",
    ));
    c.push(ClaimReport::evaluate(
        "gm3-winwin-equilibrium",
        8,
        &format!(
            "(D,D) on sqrt(0.5)(|11>+|33>) passes the equilibrium check with payoffs (1/d, 1/d); [non-equilibria, max |A - 1/d|, max |B - 1/d|] over {n} draws"
        ),
        vec![not_equilibrium as f64, worst_a, worst_b],
        vec![0.0, 0.0, 0.0],
        TOLERANCE,
        "closed form 1/d",
    ));
    Ok(())
}

fn gm3_deviation_identity(c: &mut Claims) -> Result<()> {
    let mut rng = c.rng();
    let n = c.count(DEVIATION_DRAWS);
    let (mut worst_a, mut worst_b) = (0.0f64, 0.0f64);
    for _ in 0..n {
        let p = draw_params(&mut rng);
        let g = quantize(Model::Gm3, &p, entangled_11_33())?;
        let star_a = MixedStrategy3::random(&mut rng);
        let star_b = MixedStrategy3::random(&mut rng);
        let dev_a = MixedStrategy3::random(&mut rng);
        let dev_b = MixedStrategy3::random(&mut rng);
        let at_star = expected_payoffs(&g, &star_a.into(), &star_b.into())?;
        let a_moves = expected_payoffs(&g, &dev_a.into(), &star_b.into())?;
        let b_moves = expected_payoffs(&g, &star_a.into(), &dev_b.into())?;
        let half = (p.a + p.b) / 2.0;
        worst_a = worst_a.max((at_star.0 - a_moves.0 - (star_a.p1() - dev_a.p1()) * half).abs());
        worst_b = worst_b.max((at_star.1 - b_moves.1 - (star_b.p1() - dev_b.p1()) * half).abs());
    }
    c.push(ClaimReport::evaluate(
        "gm3-deviation-identity",
        9,
        &format!(
            "on sqrt(0.5)(|11>+|33>), a unilateral deviation changes the deviator's payoff by (p1* - p1)(a+b)/2; [max error A, max error B] over {n} draws"
        ),
        vec![worst_a, worst_b],
        vec![0.0, 0.0],
        TOLERANCE,
        "closed form (p1* - p1)(a+b)/2",
    ));
    Ok(())
}

fn random_scenario(rng: &mut ChaCha8Rng) -> Result<(mw_opinion::QuantumGame, MixedStrategy, MixedStrategy)> {
    let model = draw_model(rng);
    let dim = model.n_strategies();
    let p = draw_params(rng);
    let g = quantize(model, &p, StateVector::random(dim, rng))?;
    let sa = MixedStrategy::random(dim, rng);
    let sb = MixedStrategy::random(dim, rng);
    Ok((g, sa, sb))
}

fn properties(c: &mut Claims) -> Result<()> {
    let n = c.count(PROPERTY_DRAWS);

    let mut rng = c.rng();
    let (mut trace_err, mut herm_err, mut neg_diag) = (0.0f64, 0.0f64, 0.0f64);
    for _ in 0..n {
        let (g, sa, sb) = random_scenario(&mut rng)?;
        let rho = final_density(&g, &sa, &sb)?;
        let dim = rho.dim();
        let e = rho.entries();
        trace_err = trace_err.max((rho.trace() - Complex64::new(1.0, 0.0)).norm());
        for r in 0..dim {
            for col in 0..dim {
                herm_err = herm_err.max((e[r * dim + col] - e[col * dim + r].conj()).norm());
            }
            neg_diag = neg_diag.max(-e[r * dim + r].re).max(e[r * dim + r].im.abs());
        }
    }
    c.push(ClaimReport::evaluate(
        "density-invariants",
        10,
        &format!(
            "final density matrices have unit trace, are Hermitian, and have a real non-negative diagonal; [max |tr - 1|, max Hermiticity gap, max diagonal defect] over {n} draws"
        ),
        vec![trace_err, herm_err, neg_diag],
        vec![0.0, 0.0, 0.0],
        TOLERANCE,
        "exact identity",
    ));

    let mut rng = c.rng();
    let mut worst = 0.0f64;
    for _ in 0..n {
        let (g, sa, sb) = random_scenario(&mut rng)?;
        let psi = g.initial_state();
        let rotated: Vec<Complex64> = psi
            .amplitudes()
            .iter()
            .map(|u| u * Complex64::from_polar(1.0, rng.random_range(0.0..std::f64::consts::TAU)))
            .collect();
        let h = g.with_state(StateVector::normalized(psi.dim_a(), psi.dim_b(), rotated)?)?;
        let (x, y) = expected_payoffs(&g, &sa, &sb)?;
        let (x2, y2) = expected_payoffs(&h, &sa, &sb)?;
        worst = worst.max((x - x2).abs()).max((y - y2).abs());
    }
    c.push(ClaimReport::evaluate(
        "phase-invariance",
        10,
        &format!("payoffs do not change when amplitudes get random phases; max change over {n} draws"),
        vec![worst],
        vec![0.0],
        TOLERANCE,
        "exact identity",
    ));

    let mut rng = c.rng();
    let mut worst = 0.0f64;
    for _ in 0..n {
        let (g, sa, sb) = random_scenario(&mut rng)?;
        let dim = g.dim();
        let other = MixedStrategy::random(dim, &mut rng);
        let mid_a = sa.lerp(&other, 0.5)?;
        let mid_b = sb.lerp(&other, 0.5)?;
        let base = expected_payoffs(&g, &sa, &sb)?;
        let a_end = expected_payoffs(&g, &other, &sb)?;
        let a_mid = expected_payoffs(&g, &mid_a, &sb)?;
        let b_end = expected_payoffs(&g, &sa, &other)?;
        let b_mid = expected_payoffs(&g, &sa, &mid_b)?;
        for (mid, end) in [(a_mid, a_end), (b_mid, b_end)] {
            worst = worst
                .max((mid.0 - 0.5 * (base.0 + end.0)).abs())
                .max((mid.1 - 0.5 * (base.1 + end.1)).abs());
        }
    }
    c.push(ClaimReport::evaluate(
        "multilinearity",
        10,
        &format!("payoffs at the midpoint of two strategies of one player equal the mean payoff; max error over {n} draws"),
        vec![worst],
        vec![0.0],
        TOLERANCE,
        "exact identity",
    ));

    let mut rng = c.rng();
    let n_sound = c.count(SOUNDNESS_DRAWS);
    let grids = [strategy_grid(2, DENSE_GRID), strategy_grid(3, DENSE_GRID)];
    let mut worst = 0.0f64;
    for _ in 0..n_sound {
        let (g, sa, sb) = random_scenario(&mut rng)?;
        let grid = &grids[g.dim() - 2];
        let v = verify_profile(&g, &sa, &sb)?;
        let mut best_a = f64::NEG_INFINITY;
        let mut best_b = f64::NEG_INFINITY;
        for s in grid {
            best_a = best_a.max(expected_payoffs(&g, s, &sb)?.0);
            best_b = best_b.max(expected_payoffs(&g, &sa, s)?.1);
        }
        let gap_a = (best_a - v.payoffs.0).max(0.0);
        let gap_b = (best_b - v.payoffs.1).max(0.0);
        worst = worst
            .max((v.deviation_gap_a - gap_a).abs())
            .max((v.deviation_gap_b - gap_b).abs());
    }
    c.push(ClaimReport::evaluate(
        "vertex-reduction-soundness",
        10,
        &format!(
            "deviation gaps from pure-operator vertices match a dense 1/{DENSE_GRID} strategy scan; max difference over {n_sound} draws"
        ),
        vec![worst],
        vec![0.0],
        EQUILIBRIUM_TOLERANCE,
        "dense grid oracle",
    ));
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn oracle_tables_match_operator_images() {
        for (dim, ops) in [(2, LocalOp::for_dim(2)), (3, LocalOp::for_dim(3))] {
            for (k, op) in ops.iter().enumerate() {
                for label in 1..=dim {
                    let table = if dim == 2 { ACTION_MAP_2[k][label - 1] } else { ACTION_MAP_3[k][label - 1] };
                    assert_eq!(op.image(dim, label), table);
                }
            }
        }
    }

    #[test]
    fn operator_weights_sum_to_one() {
        let s = MixedStrategy::three(0.2, 0.3).unwrap();
        assert_eq!(operator_weights(&s), vec![0.5, 0.2, 0.3]);
        assert_eq!(operator_weights(&MixedStrategy::two(0.25).unwrap()), vec![0.25, 0.75]);
    }

    #[test]
    fn d_values_span_the_range() {
        let ds = d_values(20);
        assert_eq!(ds.len(), 20);
        assert_eq!(ds[0], 0.1);
        assert!((ds[19] - 10.0).abs() < 1e-12);
    }

    #[test]
    fn streams_are_independent_of_order() {
        let mut a = rng_for(5, 3);
        let mut b = rng_for(5, 3);
        assert_eq!(a.random::<u64>(), b.random::<u64>());
        assert_ne!(rng_for(5, 3).random::<u64>(), rng_for(5, 4).random::<u64>());
    }
}
