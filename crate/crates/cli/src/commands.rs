use std::fmt::Write as _;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use xdecay::oracle::{default_dt, embed_xstate, extract_xstate, integrate, LindbladSpec};
use xdecay::{
    bell_bound, concurrence_x, death_time, energy_report, evolve_xstate, general_bound,
    general_death_omega_sq, mean_energy_a, preset_state, random_xstate, time_to_transfer,
    BathParams, BoundVariant, DeathResult, Error, XState,
};

use crate::output::{emit, num};
use crate::{CliError, RunArgs, RunConfig};

/// Elementwise agreement required between the propagator and the oracle.
pub const VERIFY_TOL: f64 = 1e-8;

pub const TRACE_HEADER: &str = "t,a,b,c,d,z,concurrence,energy,delta_e";
pub const SWEEP_HEADER: &str = "nbar,death_time,delta_e_at_death,bell_bound,general_bound";

fn describe_state(x: &XState) -> String {
    let [a, b, c, d, z] = x.to_array();
    format!(
        "a={} b={} c={} d={} z={}",
        num(a),
        num(b),
        num(c),
        num(d),
        num(z)
    )
}

fn is_bell(x: &XState) -> bool {
    ["bell-plus", "bell-minus"].iter().any(|n| {
        preset_state(n)
            .map(|b| b.max_abs_diff(x) <= 1e-12)
            .unwrap_or(false)
    })
}

fn bound_or_undefined(result: xdecay::Result<f64>) -> xdecay::Result<String> {
    match result {
        Ok(v) => Ok(num(v)),
        Err(Error::BoundUndefined) => Ok("undefined".into()),
        Err(e) => Err(e),
    }
}

pub fn evolve(cfg: &RunConfig) -> Result<String, CliError> {
    let t = cfg.args.t;
    let xt = evolve_xstate(&cfg.state, &cfg.bath, t)?;
    let report = energy_report(&cfg.state, &cfg.bath, t, &cfg.energy)?;
    let mut out = String::new();
    writeln!(out, "initial:      {}", describe_state(&cfg.state)).unwrap();
    writeln!(out, "t:            {}", num(t)).unwrap();
    writeln!(out, "state:        {}", describe_state(&xt)).unwrap();
    writeln!(out, "concurrence:  {}", num(concurrence_x(&xt))).unwrap();
    writeln!(out, "energy:       {}", num(report.e_final)).unwrap();
    writeln!(out, "delta_e:      {}", num(report.delta_e)).unwrap();
    Ok(out)
}

pub fn trace(cfg: &RunConfig) -> Result<String, CliError> {
    let (t_max, n) = (cfg.args.t, cfg.args.steps);
    let e0 = mean_energy_a(&cfg.state, &cfg.energy);
    let mut csv = String::from(TRACE_HEADER);
    csv.push('\n');
    for i in 0..n {
        let t = t_max * i as f64 / (n - 1) as f64;
        let x = evolve_xstate(&cfg.state, &cfg.bath, t)?;
        let e = mean_energy_a(&x, &cfg.energy);
        let [a, b, c, d, z] = x.to_array();
        let row = [t, a, b, c, d, z, concurrence_x(&x), e, e0 - e];
        let cells: Vec<String> = row.iter().map(|v| num(*v)).collect();
        csv.push_str(&cells.join(","));
        csv.push('\n');
    }
    emit(cfg.args.out.as_deref(), &csv)?;
    Ok(match &cfg.args.out {
        Some(p) => format!("wrote {n} rows to {}\n", p.display()),
        None => String::new(),
    })
}

pub fn death(cfg: &RunConfig) -> Result<String, CliError> {
    let result = death_time(&cfg.state, &cfg.bath, &cfg.energy, cfg.time_tol())?;
    let nbar = cfg.bath.nbar();
    let corrected = bound_or_undefined(general_bound(
        &cfg.state,
        nbar,
        &cfg.energy,
        BoundVariant::Corrected,
    ))?;
    let literal = bound_or_undefined(general_bound(
        &cfg.state,
        nbar,
        &cfg.energy,
        BoundVariant::PaperLiteral,
    ))?;
    let mut out = String::new();
    match result {
        DeathResult::AlreadySeparable => {
            writeln!(out, "death_time:            already-separable").unwrap();
            writeln!(out, "omega_sq_at_death:     {}", num(0.0)).unwrap();
            writeln!(out, "delta_e_at_death:      {}", num(0.0)).unwrap();
        }
        DeathResult::Never { horizon } => {
            writeln!(
                out,
                "death_time:            never (no crossing before t = {})",
                num(horizon)
            )
            .unwrap();
        }
        DeathResult::Finite(d) => {
            writeln!(out, "death_time:            {}", num(d.time)).unwrap();
            writeln!(
                out,
                "bracket:               [{}, {}]",
                num(d.bracket.0),
                num(d.bracket.1)
            )
            .unwrap();
            writeln!(out, "omega_sq_at_death:     {}", num(d.omega_sq)).unwrap();
            writeln!(out, "delta_e_at_death:      {}", num(d.delta_e)).unwrap();
        }
    }
    writeln!(out, "bound_corrected:       {corrected}").unwrap();
    writeln!(out, "bound_paper_literal:   {literal}").unwrap();
    Ok(out)
}

fn format_time(t: Option<f64>) -> String {
    t.map(num).unwrap_or_else(|| "never".into())
}

pub fn bounds(cfg: &RunConfig) -> Result<String, CliError> {
    let nbar = cfg.bath.nbar();
    let x0 = &cfg.state;
    let bell = bell_bound(nbar, &cfg.energy)?;
    let mut out = String::new();
    if is_bell(x0) {
        writeln!(out, "bell_bound:                 {}", num(bell)).unwrap();
        let t = time_to_transfer(x0, &cfg.bath, &cfg.energy, bell)?;
        writeln!(out, "bell_bound_time:            {}", format_time(t)).unwrap();
    } else {
        writeln!(
            out,
            "bell_bound:                 n/a (initial state is not a Bell state)"
        )
        .unwrap();
    }
    let mut values = Vec::new();
    for variant in [BoundVariant::Corrected, BoundVariant::PaperLiteral] {
        let r = general_bound(x0, nbar, &cfg.energy, variant);
        match r {
            Ok(v) => {
                values.push(Some(v));
                writeln!(out, "general_bound[{variant}]: {}{}", pad(variant), num(v)).unwrap();
            }
            Err(Error::BoundUndefined) => {
                values.push(None);
                writeln!(out, "general_bound[{variant}]: {}undefined", pad(variant)).unwrap();
            }
            Err(e) => return Err(e.into()),
        }
    }
    if let [Some(c), Some(l)] = values[..] {
        if l > 0.0 {
            writeln!(out, "corrected/paper-literal:    {}", num(c / l)).unwrap();
        }
    }
    let selected = match cfg.args.bound_variant {
        BoundVariant::Corrected => values[0],
        BoundVariant::PaperLiteral => values[1],
    };
    if let Some(v) = selected {
        let t = time_to_transfer(x0, &cfg.bath, &cfg.energy, v)?;
        writeln!(
            out,
            "bound_time[{}]:{}{}",
            cfg.args.bound_variant,
            pad_time(cfg.args.bound_variant),
            format_time(t)
        )
        .unwrap();
    }
    if let Ok(w2) = general_death_omega_sq(x0, nbar) {
        writeln!(out, "omega_sq_threshold:         {}", num(w2)).unwrap();
    }
    Ok(out)
}

fn pad(v: BoundVariant) -> &'static str {
    match v {
        BoundVariant::Corrected => "     ",
        BoundVariant::PaperLiteral => " ",
    }
}

fn pad_time(v: BoundVariant) -> &'static str {
    match v {
        BoundVariant::Corrected => "      ",
        BoundVariant::PaperLiteral => "  ",
    }
}

/// Random states are drawn from `--seed`; the initial-state flags are ignored.
pub fn verify(args: &RunArgs) -> Result<String, CliError> {
    let nbars: Vec<f64> = match args.nbar {
        Some(n) => vec![n],
        None => vec![0.0, 0.5, 1.0, 3.0],
    };
    let gamma = args.gamma_rate;
    for &n in &nbars {
        BathParams::new(gamma, n)?;
    }
    if args.samples == 0 {
        return Err(CliError::Usage("--samples must be at least 1".into()));
    }
    let scaled_times = [0.1, 0.5, 1.0, 3.0];
    let mut rng = ChaCha8Rng::seed_from_u64(args.seed);
    let states: Vec<XState> = (0..args.samples).map(|_| random_xstate(&mut rng)).collect();

    let mut jobs = Vec::new();
    for x in &states {
        for &n in &nbars {
            for &s in &scaled_times {
                jobs.push((*x, n, s));
            }
        }
    }
    let results: Vec<xdecay::Result<(f64, f64)>> = jobs
        .par_iter()
        .map(|&(x0, nbar, scaled)| {
            let bath = BathParams::new(gamma, nbar)?;
            let spec = LindbladSpec::thermal(&bath);
            let t = scaled / bath.total_rate();
            let rho = integrate(&embed_xstate(&x0), &spec, t, default_dt(&spec))?;
            let off = rho.off_pattern_magnitude();
            let numeric = extract_xstate(&rho)?;
            Ok((numeric.max_abs_diff(&evolve_xstate(&x0, &bath, t)?), off))
        })
        .collect();

    let mut max_dev: f64 = 0.0;
    let mut max_off: f64 = 0.0;
    for r in results {
        let (d, o) = r?;
        max_dev = max_dev.max(d);
        max_off = max_off.max(o);
    }
    let mut out = String::new();
    writeln!(out, "seed:                 {}", args.seed).unwrap();
    writeln!(
        out,
        "runs:                 {} ({} states x {} nbar x {} times)",
        jobs.len(),
        states.len(),
        nbars.len(),
        scaled_times.len()
    )
    .unwrap();
    writeln!(out, "max_deviation:        {}", num(max_dev)).unwrap();
    writeln!(out, "max_off_x_entry:      {}", num(max_off)).unwrap();
    writeln!(out, "tolerance:            {}", num(VERIFY_TOL)).unwrap();
    if max_dev < VERIFY_TOL {
        writeln!(out, "result:               pass").unwrap();
        Ok(out)
    } else {
        writeln!(out, "result:               FAIL").unwrap();
        Err(CliError::Verification {
            report: out,
            max_deviation: max_dev,
        })
    }
}

pub fn sweep(cfg: &RunConfig) -> Result<String, CliError> {
    let n = cfg.args.steps;
    let nbar_max = cfg.bath.nbar();
    let gamma = cfg.bath.gamma_rate();
    let grid: Vec<f64> = (0..n)
        .map(|i| nbar_max * i as f64 / (n - 1) as f64)
        .collect();
    let rows: Vec<xdecay::Result<String>> = grid
        .par_iter()
        .map(|&nbar| {
            let bath = BathParams::new(gamma, nbar)?;
            let tol = cfg
                .args
                .tol
                .unwrap_or_else(|| xdecay::default_time_tol(&bath));
            let (time, energy) = match death_time(&cfg.state, &bath, &cfg.energy, tol)? {
                DeathResult::AlreadySeparable => ("already-separable".to_string(), num(0.0)),
                DeathResult::Never { .. } => ("never".to_string(), "nan".to_string()),
                DeathResult::Finite(d) => (num(d.time), num(d.delta_e)),
            };
            let bell = num(bell_bound(nbar, &cfg.energy)?);
            let general = bound_or_undefined(general_bound(
                &cfg.state,
                nbar,
                &cfg.energy,
                cfg.args.bound_variant,
            ))?;
            Ok(format!("{},{time},{energy},{bell},{general}\n", num(nbar)))
        })
        .collect();
    let mut csv = String::from(SWEEP_HEADER);
    csv.push('\n');
    for row in rows {
        csv.push_str(&row?);
    }
    emit(cfg.args.out.as_deref(), &csv)?;
    Ok(match &cfg.args.out {
        Some(p) => format!("wrote {n} rows to {}\n", p.display()),
        None => String::new(),
    })
}
