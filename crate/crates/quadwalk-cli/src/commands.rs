//! The table-producing subcommands (everything except `verify`).

use crate::config::{format_complex, parse_complex_list, Command, RunConfig};
use crate::output::{Cell, Table};
use anyhow::{anyhow, Result};
use num_complex::Complex64 as Complex;
use quadwalk_core::{
    build_coin, split_coin, stationary_total, step, stationary_return_probability, stationary_probability, two_state_density,
    LimitLaw, Parity, WalkState,
};
use std::f64::consts::FRAC_1_SQRT_2;

pub fn run(cfg: &RunConfig) -> Result<()> {
    match &cfg.command {
        Command::Simulate { p0_series } => simulate(cfg, p0_series.as_deref()),
        Command::Stationary { range } => stationary(cfg, *range),
        Command::Limit => limit(cfg),
        Command::Compare2 { init2 } => compare2(cfg, init2.as_deref()),
        Command::Verify => unreachable!("verify is dispatched separately"),
    }
}

fn base_meta(cfg: &RunConfig, command: &str) -> Table {
    let mut table = Table::default();
    table.push_meta("command", command);
    table.push_meta(
        "coin",
        format!(
            "{},{},{},{}",
            format_complex(cfg.coin.a),
            format_complex(cfg.coin.b),
            format_complex(cfg.coin.c),
            format_complex(cfg.coin.d)
        ),
    );
    table.push_meta(
        "init",
        format!(
            "{},{},{},{}",
            format_complex(cfg.init.alpha),
            format_complex(cfg.init.beta),
            format_complex(cfg.init.gamma),
            format_complex(cfg.init.delta)
        ),
    );
    table.push_meta("time", cfg.time.to_string());
    table.push_meta("gridsize", cfg.gridsize.to_string());
    table.push_meta("seed", cfg.seed.to_string());
    table
}

fn simulate(cfg: &RunConfig, p0_series: Option<&std::path::Path>) -> Result<()> {
    let (p, q) = split_coin(&build_coin(&cfg.coin));
    let mut state = WalkState::initial(&cfg.init);
    let mut p0_trace = vec![state.return_probability()];
    for _ in 0..cfg.time {
        state = step(&state, &p, &q);
        p0_trace.push(state.return_probability());
    }

    let mut table = base_meta(cfg, "simulate");
    table.columns = vec!["x", "probability"];
    let dist = state.distribution();
    for x in dist.support() {
        if (x + cfg.time as i64) % 2 == 0 {
            table
                .rows
                .push(vec![Cell::Int(x), Cell::Float(dist.prob(x))]);
        }
    }
    table.write(cfg.format, cfg.out.as_deref())?;

    if let Some(path) = p0_series {
        let mut series = base_meta(cfg, "simulate-p0-series");
        series.columns = vec!["t", "p0"];
        for (t, p0) in p0_trace.iter().enumerate() {
            series
                .rows
                .push(vec![Cell::Int(t as i64), Cell::Float(*p0)]);
        }
        series.write(cfg.format, Some(path))?;
    }
    Ok(())
}

fn stationary(cfg: &RunConfig, range: i64) -> Result<()> {
    let mut table = base_meta(cfg, "stationary");
    table.push_float_meta("p0", stationary_return_probability(&cfg.init));
    table.push_float_meta("delta", stationary_total(&cfg.init));
    table.columns = vec!["x", "even_time_limit", "odd_time_limit"];
    for x in -range..=range {
        table.rows.push(vec![
            Cell::Int(x),
            Cell::Float(stationary_probability(x, Parity::Even, &cfg.init)),
            Cell::Float(stationary_probability(x, Parity::Odd, &cfg.init)),
        ]);
    }
    table.write(cfg.format, cfg.out.as_deref())
}

fn limit(cfg: &RunConfig) -> Result<()> {
    let law = LimitLaw::for_initial_state(&cfg.init);
    let mut table = base_meta(cfg, "limit");
    table.push_float_meta("delta", law.delta);
    table.push_float_meta("c0", law.c0);
    table.push_float_meta("c1", law.c1);
    table.push_float_meta("c2", law.c2);
    table.columns = vec!["x", "density"];
    for x in density_grid(cfg.gridsize) {
        table
            .rows
            .push(vec![Cell::Float(x), Cell::Float(law.density(x))]);
    }
    table.write(cfg.format, cfg.out.as_deref())
}

fn compare2(cfg: &RunConfig, init2: Option<&str>) -> Result<()> {
    let (alpha2, beta2) = match init2 {
        None => (
            Complex::new(FRAC_1_SQRT_2, 0.0),
            Complex::new(0.0, FRAC_1_SQRT_2),
        ),
        Some(spec) => {
            let v = parse_complex_list(spec, 2)?;
            let norm = v[0].norm_sqr() + v[1].norm_sqr();
            if (norm - 1.0).abs() > 1e-12 {
                return Err(anyhow!(
                    "--init2 must have unit norm, got squared norm {norm}"
                ));
            }
            (v[0], v[1])
        }
    };
    let law = LimitLaw::for_initial_state(&cfg.init);

    let mut table = base_meta(cfg, "compare2");
    table.push_meta(
        "init2",
        format!("{},{}", format_complex(alpha2), format_complex(beta2)),
    );
    // the 2-state walk localizes nowhere: its limit law has no atom
    table.push_float_meta("delta2", 0.0);
    table.push_float_meta("delta4", law.delta);
    table.columns = vec!["x", "two_state_density", "four_state_density"];
    for x in density_grid(cfg.gridsize) {
        table.rows.push(vec![
            Cell::Float(x),
            Cell::Float(two_state_density(alpha2, beta2, x)),
            Cell::Float(law.density(x)),
        ]);
    }
    table.write(cfg.format, cfg.out.as_deref())
}

/// `n + 1` equally spaced nodes spanning the closed density support
/// `[-1/√2, 1/√2]`; for even `n` the midpoint x = 0 is a node.
fn density_grid(n: usize) -> impl Iterator<Item = f64> {
    let width = 2.0 * FRAC_1_SQRT_2;
    (0..=n).map(move |i| -FRAC_1_SQRT_2 + width * i as f64 / n as f64)
}
