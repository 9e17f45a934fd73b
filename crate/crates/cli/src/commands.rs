//! The analysis commands. Each returns a text rendering and a JSON value;
//! the binary prints one or the other.

use mw_opinion::equilibrium::{
    equilibrium_family, find_vertex_equilibria, grid_maximize_joint_payoff_gm3, grid_slack,
    maximize_joint_payoff_gm3, CoordinateFamily, EquilibriumFamily, FamilyShape, JointMaxResult,
    PlayerFamily,
};
use mw_opinion::games::{is_zero_sum, pareto_optimal_pure, pure_nash_equilibria};
use mw_opinion::mw::{
    entangled_11_33, expected_payoffs, gm1_payoff_closed_form, gm3_entangled_payoffs_closed_form,
    gm3_joint_payoff_closed_form, quantize,
};
use mw_opinion::{BimatrixGame, GameParams, MixedStrategy, Model, PureProfile, StateVector};
use serde_json::{json, Value};

use crate::config::RunConfig;
use crate::report::{fmt6, num, render_table};
use crate::CliError;

#[derive(Debug, Clone)]
pub struct Output {
    pub text: String,
    pub json: Value,
}

fn params_json(p: &GameParams) -> Value {
    json!({ "a": num(p.a), "b": num(p.b), "c": num(p.c), "d": num(p.d) })
}

fn params_text(model: Model, p: &GameParams) -> String {
    let used: Vec<String> = [("a", p.a), ("b", p.b), ("c", p.c), ("d", p.d)]
        .iter()
        .filter(|(name, _)| !model.ignored_params().contains(name))
        .map(|(name, v)| format!("{name}={}", fmt6(*v)))
        .collect();
    format!("{model} ({})", used.join(", "))
}

fn state_json(psi: &StateVector) -> Value {
    Value::Array(
        psi.amplitudes()
            .iter()
            .map(|z| json!([num(z.re), num(z.im)]))
            .collect(),
    )
}

fn state_text(psi: &StateVector) -> String {
    let n = psi.dim_b();
    let terms: Vec<String> = psi
        .amplitudes()
        .iter()
        .enumerate()
        .filter(|(_, z)| z.norm_sqr() > 0.0)
        .map(|(k, z)| {
            let amp = if z.im == 0.0 {
                fmt6(z.re)
            } else {
                format!("({}{:+}i)", fmt6(z.re), fmt6(z.im))
            };
            format!("{amp}|{}{}>", k / n + 1, k % n + 1)
        })
        .collect();
    terms.join(" + ")
}

fn strategy_json(s: &MixedStrategy) -> Value {
    Value::Array(s.coordinates().into_iter().map(num).collect())
}

/// `C` for a pure operator, `(p=.., p1=..)` otherwise.
fn strategy_label(s: &MixedStrategy) -> String {
    match s.weights().iter().find(|(_, w)| *w == 1.0) {
        Some((op, _)) => op.to_string(),
        None => s.to_string(),
    }
}

fn profile_json(game: &BimatrixGame, profile: PureProfile) -> Value {
    let (x, y) = game.payoffs(profile);
    json!({
        "profile": [profile.row.name(), profile.col.name()],
        "payoffs": [num(x), num(y)],
        "joint": num(x + y),
    })
}

fn payoff_table(game: &BimatrixGame, player_a: bool) -> (String, Vec<Value>) {
    let strategies = game.strategies();
    let mut header = vec!["A \\ B"];
    header.extend(strategies.iter().map(|s| s.name()));
    let mut rows = Vec::new();
    let mut json_rows = Vec::new();
    for &r in strategies {
        let values: Vec<f64> = strategies
            .iter()
            .map(|&c| if player_a { game.payoff_a(r, c) } else { game.payoff_b(r, c) })
            .collect();
        let mut row = vec![r.name().to_string()];
        row.extend(values.iter().map(|v| fmt6(*v)));
        rows.push(row);
        json_rows.push(Value::Array(values.into_iter().map(num).collect()));
    }
    (render_table(&header, &rows), json_rows)
}

pub fn cmd_classical(cfg: &RunConfig) -> Result<Output, CliError> {
    let game = cfg.model.build(&cfg.params)?;
    let ne = pure_nash_equilibria(&game);
    let pareto = pareto_optimal_pure(&game);
    let zero_sum = is_zero_sum(&game);
    let ignored = cfg.ignored_params();

    let mut text = format!("classical {}\n", params_text(cfg.model, &cfg.params));
    if !ignored.is_empty() {
        text += &format!("ignored parameters: {} ({} does not use them)\n", ignored.join(", "), cfg.model);
    }
    let (table_a, rows_a) = payoff_table(&game, true);
    let (table_b, rows_b) = payoff_table(&game, false);
    text += &format!("\npayoff to A\n{table_a}\npayoff to B\n{table_b}\n");

    let ne_rows: Vec<Vec<String>> = ne
        .iter()
        .map(|&p| {
            let (x, y) = game.payoffs(p);
            vec![p.to_string(), fmt6(x), fmt6(y), fmt6(x + y)]
        })
        .collect();
    text += "pure Nash equilibria\n";
    text += &render_table(&["profile", "A", "B", "joint"], &ne_rows);
    text += &format!("\nzero-sum: {zero_sum}\n");
    let pareto_names: Vec<String> = pareto.iter().map(|p| p.to_string()).collect();
    text += &format!("Pareto-optimal pure profiles: {}\n", pareto_names.join(" "));
    if cfg.model == Model::Gm3 {
        let t = cfg.params.gm3_threshold();
        text += &format!(
            "win-win threshold 1/(b+c) = {}; d {} threshold\n",
            fmt6(t),
            if cfg.params.d <= t { "is within the" } else { "exceeds the" }
        );
    }

    let json = json!({
        "command": "classical",
        "model": cfg.model.to_string(),
        "params": params_json(&cfg.params),
        "ignored_params": ignored,
        "payoff_a": rows_a,
        "payoff_b": rows_b,
        "pure_nash_equilibria": ne.iter().map(|&p| profile_json(&game, p)).collect::<Vec<_>>(),
        "zero_sum": zero_sum,
        "pareto_optimal": pareto.iter().map(|&p| profile_json(&game, p)).collect::<Vec<_>>(),
        "gm3_threshold": if cfg.model == Model::Gm3 { num(cfg.params.gm3_threshold()) } else { Value::Null },
    });
    Ok(Output { text, json })
}

pub fn cmd_payoff(cfg: &RunConfig) -> Result<Output, CliError> {
    let psi = cfg.initial_state()?;
    let (s_a, s_b) = cfg.strategies()?;
    let game = quantize(cfg.model, &cfg.params, psi.clone())?;
    let (x, y) = expected_payoffs(&game, &s_a, &s_b)?;

    // (name, payoff A, payoff B, joint); a missing entry is not given by the form.
    let mut forms: Vec<(&str, Option<f64>, Option<f64>, f64)> = Vec::new();
    match cfg.model {
        Model::Gm1 => {
            let (p, q) = (s_a.coordinates()[0], s_b.coordinates()[0]);
            let (fa, fb) = gm1_payoff_closed_form(&cfg.params, &psi, p, q)?;
            forms.push(("gm1-closed-form", Some(fa), Some(fb), fa + fb));
        }
        Model::Gm3 => {
            let (p, q) = (s_a.coordinates()[0], s_b.coordinates()[0]);
            let joint = gm3_joint_payoff_closed_form(&cfg.params, &psi, p, q)?;
            forms.push(("gm3-joint-closed-form", None, None, joint));
            if psi == entangled_11_33() {
                if let (MixedStrategy::Three(a3), MixedStrategy::Three(b3)) = (s_a, s_b) {
                    let (fa, fb) = gm3_entangled_payoffs_closed_form(&cfg.params, &a3, &b3);
                    forms.push(("gm3-entangled-closed-form", Some(fa), Some(fb), fa + fb));
                }
            }
        }
        Model::Gm2 => {}
    }

    let mut text = format!(
        "payoff {}\nstate: {}\nstrategies: A {}  B {}\n\n",
        params_text(cfg.model, &cfg.params),
        state_text(&psi),
        s_a,
        s_b
    );
    let opt = |v: Option<f64>| v.map_or("-".to_string(), fmt6);
    let mut rows = vec![vec!["pipeline".to_string(), fmt6(x), fmt6(y), fmt6(x + y), String::new()]];
    for (name, fa, fb, joint) in &forms {
        let diff = [fa.map(|v| v - x), fb.map(|v| v - y), Some(joint - (x + y))]
            .iter()
            .flatten()
            .fold(0.0f64, |m, v| m.max(v.abs()));
        rows.push(vec![name.to_string(), opt(*fa), opt(*fb), fmt6(*joint), fmt6(diff)]);
    }
    text += &render_table(&["source", "A", "B", "joint", "|diff|"], &rows);

    let json = json!({
        "command": "payoff",
        "model": cfg.model.to_string(),
        "params": params_json(&cfg.params),
        "state": state_json(&psi),
        "strategies": { "a": strategy_json(&s_a), "b": strategy_json(&s_b) },
        "pipeline": { "payoff_a": num(x), "payoff_b": num(y), "joint": num(x + y) },
        "closed_forms": forms.iter().map(|(name, fa, fb, joint)| json!({
            "name": name,
            "payoff_a": fa.map_or(Value::Null, num),
            "payoff_b": fb.map_or(Value::Null, num),
            "joint": num(*joint),
        })).collect::<Vec<_>>(),
    });
    Ok(Output { text, json })
}

fn coordinate_json(c: &CoordinateFamily) -> Value {
    json!({
        "name": c.name,
        "coefficient": num(c.coefficient),
        "status": c.status.to_string(),
        "interval": [num(c.interval.0), num(c.interval.1)],
    })
}

fn player_json(p: &PlayerFamily) -> Value {
    json!({
        "face": p.face.iter().map(|op| op.to_string()).collect::<Vec<_>>(),
        "coordinates": p.coordinates.iter().map(coordinate_json).collect::<Vec<_>>(),
    })
}

fn family_json(f: &EquilibriumFamily) -> Value {
    json!({
        "shape": match f.shape { FamilyShape::Product => "product", FamilyShape::Unclassified => "unclassified" },
        "single_point": f.is_single_point(),
        "player_a": player_json(&f.player_a),
        "player_b": player_json(&f.player_b),
        "description": f.to_string(),
    })
}

pub fn cmd_find_ne(cfg: &RunConfig) -> Result<Output, CliError> {
    let psi = cfg.initial_state()?;
    let game = quantize(cfg.model, &cfg.params, psi.clone())?;
    let verdicts = find_vertex_equilibria(&game)?;

    let mut rows = Vec::new();
    let mut entries = Vec::new();
    let mut families: Vec<EquilibriumFamily> = Vec::new();
    for v in &verdicts {
        let (s_a, s_b) = v.profile;
        let family = equilibrium_family(&game, &s_a, &s_b)?;
        rows.push(vec![
            strategy_label(&s_a),
            strategy_label(&s_b),
            fmt6(v.payoffs.0),
            fmt6(v.payoffs.1),
            fmt6(v.joint_payoff()),
        ]);
        entries.push(json!({
            "profile": [strategy_label(&s_a), strategy_label(&s_b)],
            "strategies": { "a": strategy_json(&s_a), "b": strategy_json(&s_b) },
            "payoffs": [num(v.payoffs.0), num(v.payoffs.1)],
            "joint": num(v.joint_payoff()),
            "deviation_gaps": [num(v.deviation_gap_a), num(v.deviation_gap_b)],
            "family": family_json(&family),
        }));
        let same = |f: &EquilibriumFamily| {
            f.shape == FamilyShape::Product
                && family.shape == FamilyShape::Product
                && f.player_a.face == family.player_a.face
                && f.player_b.face == family.player_b.face
        };
        if !families.iter().any(same) {
            families.push(family);
        }
    }

    let mut text = format!(
        "find-ne {}\nstate: {}\n\nvertex equilibria\n",
        params_text(cfg.model, &cfg.params),
        state_text(&psi)
    );
    text += &render_table(&["A", "B", "payoff A", "payoff B", "joint"], &rows);
    if verdicts.is_empty() {
        text += "(none among pure operator profiles)\n";
    }
    text += "\nequilibrium families\n";
    for f in &families {
        let faces = |p: &PlayerFamily| p.face.iter().map(|op| op.to_string()).collect::<Vec<_>>().join(",");
        text += &format!("  A in {{{}}} x B in {{{}}}: {f}\n", faces(&f.player_a), faces(&f.player_b));
    }

    let json = json!({
        "command": "find-ne",
        "model": cfg.model.to_string(),
        "params": params_json(&cfg.params),
        "state": state_json(&psi),
        "equilibria": entries,
    });
    Ok(Output { text, json })
}

fn max_json(r: &JointMaxResult) -> Value {
    json!({
        "method": r.method.to_string(),
        "max_value": num(r.max_value),
        "arg_state": state_json(&r.arg_state),
        "arg_strategies": {
            "a": [num(r.arg_strategies.0.p()), num(r.arg_strategies.0.p1())],
            "b": [num(r.arg_strategies.1.p()), num(r.arg_strategies.1.p1())],
        },
    })
}

pub fn cmd_max_joint(cfg: &RunConfig) -> Result<Output, CliError> {
    if cfg.model != Model::Gm3 {
        return Err(CliError::Usage(format!(
            "max-joint applies to GM3 only, not {}",
            cfg.model
        )));
    }
    let analytic = maximize_joint_payoff_gm3(&cfg.params)?;
    let grid = grid_maximize_joint_payoff_gm3(&cfg.params, cfg.grid)?;
    let gap = analytic.max_value - grid.max_value;
    let slack = grid_slack(&cfg.params, cfg.grid);

    let row = |r: &JointMaxResult| {
        vec![
            r.method.to_string(),
            fmt6(r.max_value),
            state_text(&r.arg_state),
            format!("{}", MixedStrategy::Three(r.arg_strategies.0)),
            format!("{}", MixedStrategy::Three(r.arg_strategies.1)),
        ]
    };
    let mut text = format!("max-joint {}\n\n", params_text(cfg.model, &cfg.params));
    text += &render_table(&["method", "max joint", "state", "A", "B"], &[row(&analytic), row(&grid)]);
    text += &format!(
        "\nanalytic - grid = {} (grid slack bound {})\n",
        fmt6(gap),
        fmt6(slack)
    );

    let json = json!({
        "command": "max-joint",
        "model": cfg.model.to_string(),
        "params": params_json(&cfg.params),
        "analytic": max_json(&analytic),
        "grid": max_json(&grid),
        "gap": num(gap),
        "grid_slack": num(slack),
    });
    Ok(Output { text, json })
}
