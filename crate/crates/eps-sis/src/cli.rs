//! Subcommand dispatcher behind the `eps-sis` binary.
//!
//! Usage: `eps-sis <subcommand> [--config FILE] [--section.key VALUE ...]`.
//! Flags mirror config keys one-to-one and override file values;
//! environment variables are deliberately not consulted. Every run writes
//! its artifacts into `output.dir`: a CSV table (`<cmd>.csv`), a JSON
//! summary (`<cmd>_summary.json`) with the full resolved configuration,
//! master seed, fitted parameters and pass/fail flags, and a
//! `<cmd>_resolved.conf` that reproduces the run byte-for-byte when fed
//! back through `--config`.
//!
//! Exit codes: 0 ok, 2 configuration error, 3 infeasible workload,
//! 4 internal numerical failure.

use std::path::{Path, PathBuf};

use serde_json::{json, Value};

use crate::chain::ModelParams;
use crate::config::{KeySpec, RawConfig, ResolvedConfig, COMMON_KEYS};
use crate::deterministic::ode_solution;
use crate::error::{Error, Result};
use crate::exact::{
    mixing_profile, mixing_time, spectral_gap, stationary_distribution, transient_distribution,
    StartSet, UniformizationOptions,
};
use crate::experiments::report::{fmt_g17, quantile};
use crate::experiments::{
    concentration_scan, coupling_tail, cutoff_scan, lower_bound_witness, phase_verification,
    stationary_concentration, ConcentrationOptions, CutoffOptions,
};
use crate::simulate::{
    default_radius, exit_time, simulate_coupled, simulate_path, simulate_reflected, sup_deviation,
    GoodSet, ScaledInterval, Seed, Trajectory,
};

/// Runs the CLI on the given arguments (program name already stripped)
/// and returns the process exit code.
pub fn run<I>(args: I) -> i32
where
    I: IntoIterator<Item = String>,
{
    let argv: Vec<String> = args.into_iter().collect();
    if argv.is_empty() || argv[0] == "--help" || argv[0] == "-h" {
        print_usage();
        return if argv.is_empty() { 2 } else { 0 };
    }
    let name = argv[0].clone();
    let Some(cmd) = SUBCOMMANDS.iter().find(|c| c.name == name) else {
        eprintln!("error: unknown subcommand `{name}`");
        print_usage();
        return 2;
    };
    if argv.iter().any(|a| a == "--help" || a == "-h") {
        print_keys(cmd);
        return 0;
    }
    match execute(cmd, &argv[1..]) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("error: {e}");
            exit_code(&e)
        }
    }
}

fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Infeasible(_) => 3,
        Error::Numerical(_) | Error::Io(_) => 4,
        _ => 2,
    }
}

fn print_usage() {
    eprintln!("usage: eps-sis <subcommand> [--config FILE] [--section.key VALUE ...]");
    eprintln!("subcommands:");
    for c in SUBCOMMANDS {
        eprintln!("  {:18} {}", c.name, c.about);
    }
    eprintln!("run `eps-sis <subcommand> --help` for the key list");
}

fn print_keys(cmd: &Subcommand) {
    println!("eps-sis {} : {}", cmd.name, cmd.about);
    println!("keys (as `--name value` flags or config-file entries):");
    for spec in COMMON_KEYS.iter().chain(cmd.keys.iter()) {
        let status = if spec.required {
            "required".to_string()
        } else {
            format!("default {}", spec.default.unwrap_or("-"))
        };
        println!("  {:28} {:18} {}", spec.name, status, spec.help);
    }
}

fn parse_flags(args: &[String]) -> Result<RawConfig> {
    let mut file_cfg = RawConfig::default();
    let mut flag_cfg = RawConfig::default();
    let mut i = 0;
    let mut config_seen = false;
    while i < args.len() {
        let arg = &args[i];
        let key = arg.strip_prefix("--").ok_or_else(|| Error::InvalidParameter {
            name: "config",
            reason: format!("expected `--key value` pairs, got `{arg}`"),
        })?;
        let value = args.get(i + 1).ok_or_else(|| Error::InvalidParameter {
            name: "config",
            reason: format!("flag `--{key}` is missing its value"),
        })?;
        if key == "config" {
            if config_seen {
                return Err(Error::InvalidParameter {
                    name: "config",
                    reason: "`--config` given twice".to_string(),
                });
            }
            config_seen = true;
            file_cfg = RawConfig::from_file(Path::new(value))?;
        } else {
            flag_cfg.set(key, value);
        }
        i += 2;
    }
    file_cfg.overlay(flag_cfg);
    Ok(file_cfg)
}

fn execute(cmd: &Subcommand, args: &[String]) -> Result<()> {
    let raw = parse_flags(args)?;
    let cfg = ResolvedConfig::resolve(&raw, &[COMMON_KEYS, cmd.keys])?;
    let threads = cfg.get_usize("threads")?;
    let out = OutputWriter::new(cmd.name, &cfg)?;
    let ctx = Ctx {
        cfg: &cfg,
        out: &out,
    };
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .map_err(|e| Error::Numerical(format!("thread pool: {e}")))?;
    pool.install(|| (cmd.run)(&ctx))?;
    out.write_resolved(&cfg)?;
    Ok(())
}

struct Ctx<'a> {
    cfg: &'a ResolvedConfig,
    out: &'a OutputWriter,
}

impl Ctx<'_> {
    fn model(&self, n: usize) -> Result<ModelParams> {
        ModelParams::new(
            self.cfg.get_f64("model.lambda")?,
            self.cfg.get_f64("model.mu")?,
            self.cfg.get_f64("model.epsilon")?,
            n,
        )
    }

    fn model_n(&self) -> Result<ModelParams> {
        self.model(self.cfg.get_usize("experiment.N")?)
    }

    fn master_seed(&self) -> Result<u64> {
        self.cfg.get_u64("master_seed")
    }

    /// `experiment.<key>` that is either `auto` or a radius.
    fn radius(&self, key: &str, params: &ModelParams) -> Result<f64> {
        let s = self.cfg.get_str(key)?;
        if s == "auto" {
            Ok(default_radius(params))
        } else {
            self.cfg.get_f64(key)
        }
    }

    fn start_set(&self, key: &str) -> Result<StartSet> {
        match self.cfg.get_str(key)? {
            "endpoints" => Ok(StartSet::Endpoints),
            "full" => Ok(StartSet::Full),
            _ => Ok(StartSet::States(self.cfg.get_usize_list(key)?)),
        }
    }

    fn summary(&self, results: Value, pass: Value) -> Result<()> {
        self.out.write_summary(json!({
            "subcommand": self.out.base,
            "config": self.cfg.entries(),
            "master_seed": self.master_seed()?,
            "results": results,
            "pass": pass,
        }))
    }
}

struct OutputWriter {
    dir: PathBuf,
    base: String,
    csv_enabled: bool,
    json_enabled: bool,
}

impl OutputWriter {
    fn new(base: &str, cfg: &ResolvedConfig) -> Result<Self> {
        let format = cfg.get_str("output.format")?;
        let (csv_enabled, json_enabled) = match format {
            "csv" => (true, false),
            "json" => (false, true),
            "both" => (true, true),
            other => {
                return Err(Error::InvalidParameter {
                    name: "config",
                    reason: format!("key `output.format`: expected csv|json|both, got `{other}`"),
                })
            }
        };
        let dir = PathBuf::from(cfg.get_str("output.dir")?);
        std::fs::create_dir_all(&dir)
            .map_err(|e| Error::Io(format!("cannot create {}: {e}", dir.display())))?;
        Ok(Self {
            dir,
            base: base.to_string(),
            csv_enabled,
            json_enabled,
        })
    }

    fn write(&self, name: &str, content: &str) -> Result<()> {
        let path = self.dir.join(name);
        std::fs::write(&path, content)
            .map_err(|e| Error::Io(format!("cannot write {}: {e}", path.display())))
    }

    fn write_csv(&self, content: &str) -> Result<()> {
        if self.csv_enabled {
            self.write(&format!("{}.csv", self.base), content)?;
        }
        Ok(())
    }

    fn write_summary(&self, value: Value) -> Result<()> {
        if self.json_enabled {
            let text = serde_json::to_string_pretty(&value)
                .map_err(|e| Error::Io(format!("summary serialization: {e}")))?;
            self.write(&format!("{}_summary.json", self.base), &(text + "\n"))?;
        }
        Ok(())
    }

    fn write_resolved(&self, cfg: &ResolvedConfig) -> Result<()> {
        self.write(&format!("{}_resolved.conf", self.base), &cfg.to_config_text())
    }
}

struct Subcommand {
    name: &'static str,
    about: &'static str,
    keys: &'static [KeySpec],
    run: fn(&Ctx) -> Result<()>,
}

macro_rules! key {
    ($name:literal, req, $help:literal) => {
        KeySpec {
            name: $name,
            required: true,
            default: None,
            help: $help,
        }
    };
    ($name:literal, $default:literal, $help:literal) => {
        KeySpec {
            name: $name,
            required: false,
            default: Some($default),
            help: $help,
        }
    };
}

const N_KEY: KeySpec = key!("experiment.N", req, "population size");

fn time_grid(t_max: f64, points: usize) -> Result<Vec<f64>> {
    if !(t_max > 0.0) || points < 2 {
        return Err(Error::Domain(
            "need t_max > 0 and at least 2 grid points".to_string(),
        ));
    }
    let step = t_max / (points - 1) as f64;
    Ok((0..points).map(|i| i as f64 * step).collect())
}

fn trajectory_csv(trajectories: &[Trajectory]) -> String {
    let mut out = String::from("replication,event_index,time,state\n");
    for (rep, traj) in trajectories.iter().enumerate() {
        for (i, (&t, &x)) in traj.times().iter().zip(traj.states()).enumerate() {
            out.push_str(&format!("{rep},{i},{},{x}\n", fmt_g17(t)));
        }
    }
    out
}

// ---------------------------------------------------------------------
// Subcommand handlers
// ---------------------------------------------------------------------

fn run_derived(ctx: &Ctx) -> Result<()> {
    let params = ctx.model_n()?;
    let d = params.derived();
    println!(
        "J = {}\nx_star = {}\nx1_star = {}\nt_N = {}\nk = {}",
        d.j, d.x_star, d.x1_star, d.t_n, d.k
    );
    let csv = format!(
        "J,x_star,x1_star,t_N,k\n{},{},{},{},{}\n",
        fmt_g17(d.j),
        fmt_g17(d.x_star),
        fmt_g17(d.x1_star),
        fmt_g17(d.t_n),
        fmt_g17(d.k)
    );
    ctx.out.write_csv(&csv)?;
    ctx.summary(json!(d), json!({}))
}

const ODE_KEYS: &[KeySpec] = &[
    N_KEY,
    key!("experiment.alpha", req, "initial proportion in [0,1]"),
    key!("experiment.t_max", req, "end of the evaluation grid"),
    key!("experiment.points", "101", "grid size"),
];

fn run_ode(ctx: &Ctx) -> Result<()> {
    let params = ctx.model_n()?;
    let alpha = ctx.cfg.get_f64("experiment.alpha")?;
    let grid = time_grid(
        ctx.cfg.get_f64("experiment.t_max")?,
        ctx.cfg.get_usize("experiment.points")?,
    )?;
    let mut csv = String::from("t,x\n");
    for &t in &grid {
        csv.push_str(&format!(
            "{},{}\n",
            fmt_g17(t),
            fmt_g17(ode_solution(&params, alpha, t)?)
        ));
    }
    ctx.out.write_csv(&csv)?;
    let last = ode_solution(&params, alpha, *grid.last().unwrap())?;
    println!("x({}) = {last} from alpha = {alpha}", grid.last().unwrap());
    ctx.summary(
        json!({"alpha": alpha, "final_value": last, "x_star": params.derived().x_star}),
        json!({}),
    )
}

fn run_stationary(ctx: &Ctx) -> Result<()> {
    let params = ctx.model_n()?;
    let pi = stationary_distribution(&params);
    let mut csv = String::from("state,probability\n");
    for (x, &p) in pi.values().iter().enumerate() {
        csv.push_str(&format!("{x},{}\n", fmt_g17(p)));
    }
    ctx.out.write_csv(&csv)?;
    let mean = pi.mean();
    println!(
        "stationary mean = {mean}, x_star N = {}",
        params.derived().x_star * params.n_f64()
    );
    ctx.summary(
        json!({"mean": mean, "variance": pi.variance(), "mode": pi.values().iter().enumerate().max_by(|a, b| a.1.total_cmp(b.1)).map(|(i, _)| i)}),
        json!({}),
    )
}

const TRANSIENT_KEYS: &[KeySpec] = &[
    N_KEY,
    key!("experiment.x0", req, "starting state"),
    key!("experiment.t", req, "evaluation time"),
];

fn run_transient(ctx: &Ctx) -> Result<()> {
    let params = ctx.model_n()?;
    let x0 = ctx.cfg.get_usize("experiment.x0")?;
    let t = ctx.cfg.get_f64("experiment.t")?;
    let initial = crate::exact::ProbabilityVector::point_mass(params.n() + 1, x0)?;
    let tr = transient_distribution(&params, &initial, t)?;
    let mut csv = String::from("state,probability\n");
    for (x, &p) in tr.law.values().iter().enumerate() {
        csv.push_str(&format!("{x},{}\n", fmt_g17(p)));
    }
    ctx.out.write_csv(&csv)?;
    println!(
        "E X({t}) = {} (truncation error {:.3e}, {} steps)",
        tr.law.mean(),
        tr.truncation_error,
        tr.steps
    );
    ctx.summary(
        json!({
            "mean": tr.law.mean(),
            "variance": tr.law.variance(),
            "truncation_error": tr.truncation_error,
            "steps": tr.steps,
        }),
        json!({}),
    )
}

const TVPROFILE_KEYS: &[KeySpec] = &[
    N_KEY,
    key!("experiment.t_max", req, "end of the time grid"),
    key!("experiment.points", "41", "grid size"),
    key!("experiment.start_set", "endpoints", "endpoints | full | comma list"),
];

fn run_tvprofile(ctx: &Ctx) -> Result<()> {
    let params = ctx.model_n()?;
    let grid = time_grid(
        ctx.cfg.get_f64("experiment.t_max")?,
        ctx.cfg.get_usize("experiment.points")?,
    )?;
    let starts = ctx.start_set("experiment.start_set")?;
    let prof = mixing_profile(&params, &grid, &starts, &UniformizationOptions::default())?;
    let mut csv = String::from("t,rho\n");
    for (t, r) in prof.times.iter().zip(&prof.rho) {
        csv.push_str(&format!("{},{}\n", fmt_g17(*t), fmt_g17(*r)));
    }
    ctx.out.write_csv(&csv)?;
    println!(
        "rho({}) = {}",
        grid.last().unwrap(),
        prof.rho.last().unwrap()
    );
    ctx.summary(
        json!({"rho_final": prof.rho.last(), "start_set_size": prof.start_set.len()}),
        json!({}),
    )
}

const MIXTIME_KEYS: &[KeySpec] = &[
    N_KEY,
    key!("experiment.delta", req, "TV level in (0,1)"),
    key!("experiment.start_set", "endpoints", "endpoints | full | comma list"),
];

fn run_mixtime(ctx: &Ctx) -> Result<()> {
    let params = ctx.model_n()?;
    let delta = ctx.cfg.get_f64("experiment.delta")?;
    let starts = ctx.start_set("experiment.start_set")?;
    let t = mixing_time(&params, delta, &starts, &UniformizationOptions::default())?;
    let d = params.derived();
    ctx.out
        .write_csv(&format!("delta,t_mix,t_N\n{},{},{}\n", fmt_g17(delta), fmt_g17(t), fmt_g17(d.t_n)))?;
    println!("t_mix({delta}) = {t}   (t_N = {})", d.t_n);
    ctx.summary(json!({"t_mix": t, "t_N": d.t_n}), json!({}))
}

fn run_gap(ctx: &Ctx) -> Result<()> {
    let params = ctx.model_n()?;
    let g = spectral_gap(&params);
    ctx.out.write_csv(&format!(
        "gap,relaxation_time\n{},{}\n",
        fmt_g17(g.gap),
        fmt_g17(g.relaxation_time)
    ))?;
    println!("gap = {}, relaxation time = {}", g.gap, g.relaxation_time);
    ctx.summary(json!(g), json!({}))
}

const SIMULATE_KEYS: &[KeySpec] = &[
    N_KEY,
    key!("experiment.x0", req, "starting state"),
    key!("experiment.t_max", req, "horizon"),
    key!("experiment.replications", "1", "independent paths"),
];

fn run_simulate(ctx: &Ctx) -> Result<()> {
    let params = ctx.model_n()?;
    let x0 = ctx.cfg.get_usize("experiment.x0")?;
    let t_max = ctx.cfg.get_f64("experiment.t_max")?;
    let reps = ctx.cfg.get_usize("experiment.replications")?;
    let master = ctx.master_seed()?;
    let mut trajectories = Vec::with_capacity(reps);
    let mut devs = Vec::with_capacity(reps);
    for rep in 0..reps {
        let traj = simulate_path(&params, x0, t_max, Seed::new(master, rep as u64))?;
        devs.push(sup_deviation(&traj, &params)?);
        trajectories.push(traj);
    }
    ctx.out.write_csv(&trajectory_csv(&trajectories))?;
    let events: usize = trajectories.iter().map(Trajectory::event_count).sum();
    println!("{reps} path(s), {events} events");
    ctx.summary(
        json!({
            "events": events,
            "final_states": trajectories.iter().map(|t| t.state_at(t_max)).collect::<Vec<_>>(),
            "sup_deviation_median": quantile(&devs, 0.5),
        }),
        json!({}),
    )
}

const COUPLE_KEYS: &[KeySpec] = &[
    N_KEY,
    key!("experiment.w0", "0", "lower start"),
    key!("experiment.z0", "auto", "upper start (auto = N)"),
    key!("experiment.t_max", req, "horizon"),
    key!("experiment.replications", "1", "independent coupled pairs"),
    key!("experiment.r", "auto", "good-set radius (auto = default)"),
    key!("experiment.h", "0.5", "deviation exponent in (0,1)"),
];

fn run_couple(ctx: &Ctx) -> Result<()> {
    let params = ctx.model_n()?;
    let w0 = ctx.cfg.get_usize("experiment.w0")?;
    let z0 = match ctx.cfg.get_str("experiment.z0")? {
        "auto" => params.n(),
        _ => ctx.cfg.get_usize("experiment.z0")?,
    };
    let t_max = ctx.cfg.get_f64("experiment.t_max")?;
    let reps = ctx.cfg.get_usize("experiment.replications")?;
    let r = ctx.radius("experiment.r", &params)?;
    let h = ctx.cfg.get_f64("experiment.h")?;
    let good = GoodSet::new(&params, r, h)?;
    let master = ctx.master_seed()?;

    let mut csv = String::from("replication,tau_couple,tau_exit\n");
    let mut coalesced = 0usize;
    for rep in 0..reps {
        let trace = simulate_coupled(&params, w0, z0, t_max, &good, Seed::new(master, rep as u64))?;
        coalesced += usize::from(trace.tau_couple.is_some());
        let fmt_opt = |v: Option<f64>| v.map(fmt_g17).unwrap_or_default();
        csv.push_str(&format!(
            "{rep},{},{}\n",
            fmt_opt(trace.tau_couple),
            fmt_opt(trace.tau_exit)
        ));
    }
    ctx.out.write_csv(&csv)?;
    println!("{coalesced}/{reps} pairs coalesced by t = {t_max}");
    ctx.summary(
        json!({"coalesced": coalesced, "replications": reps}),
        json!({}),
    )
}

const REFLECT_KEYS: &[KeySpec] = &[
    N_KEY,
    key!("experiment.x0", req, "starting state (inside the good set)"),
    key!("experiment.r", "auto", "good-set radius (auto = default)"),
    key!("experiment.t_max", req, "horizon"),
    key!("experiment.replications", "1", "independent paths"),
];

fn run_reflect(ctx: &Ctx) -> Result<()> {
    let params = ctx.model_n()?;
    let x0 = ctx.cfg.get_usize("experiment.x0")?;
    let r = ctx.radius("experiment.r", &params)?;
    let t_max = ctx.cfg.get_f64("experiment.t_max")?;
    let reps = ctx.cfg.get_usize("experiment.replications")?;
    let master = ctx.master_seed()?;
    let mut trajectories = Vec::with_capacity(reps);
    for rep in 0..reps {
        trajectories.push(simulate_reflected(
            &params,
            x0,
            r,
            t_max,
            Seed::new(master, rep as u64),
        )?);
    }
    ctx.out.write_csv(&trajectory_csv(&trajectories))?;
    let d = params.derived();
    let interval = ScaledInterval::new(d.x_star - r, d.x_star + r)?;
    let exits: usize = trajectories
        .iter()
        .filter(|t| exit_time(t, &interval).is_some())
        .count();
    println!("{reps} reflected path(s); {exits} touched a boundary state");
    ctx.summary(
        json!({"replications": reps, "boundary_touches": exits}),
        json!({}),
    )
}

const CUTOFF_KEYS: &[KeySpec] = &[
    key!("experiment.N_list", req, "comma-separated population sizes, increasing"),
    key!(
        "experiment.delta_levels",
        "0.9,0.75,0.5,0.25,0.1",
        "TV levels, decreasing"
    ),
    key!("experiment.fit_level", "0.25", "level fitted against log N"),
    key!("experiment.max_step_ops", "1e12", "work budget (steps x states)"),
];

fn run_cutoff_scan(ctx: &Ctx) -> Result<()> {
    let params = ctx.model(1)?;
    let n_list = ctx.cfg.get_usize_list("experiment.N_list")?;
    let levels = ctx.cfg.get_f64_list("experiment.delta_levels")?;
    let opts = CutoffOptions {
        fit_level: ctx.cfg.get_f64("experiment.fit_level")?,
        max_step_ops: ctx.cfg.get_f64("experiment.max_step_ops")?,
        ..CutoffOptions::default()
    };
    let report = cutoff_scan(&params, &n_list, &levels, &opts)?;
    ctx.out.write_csv(&report.to_csv())?;
    println!(
        "fitted slope {} vs predicted {} ; window ratio {}",
        report.fitted_slope, report.predicted_slope, report.window_ratio
    );
    let slope_ok =
        (report.fitted_slope / report.predicted_slope - 1.0).abs() <= 0.15;
    let window_ok = report.window_ratio <= 1.5;
    ctx.summary(
        serde_json::to_value(&report).map_err(|e| Error::Io(e.to_string()))?,
        json!({
            "slope_within_15pct_of_prediction": slope_ok,
            "window_ratio_at_most_1_5": window_ok,
        }),
    )
}

const CONC_KEYS: &[KeySpec] = &[
    key!("experiment.N_list", req, "comma-separated population sizes, increasing"),
    key!("experiment.replications", req, "paths per population size (>= 100)"),
    key!("experiment.x0_proportion", "0.0", "starting proportion"),
    key!("experiment.horizon_scale", "1.0", "horizon = scale * log(N)/J"),
];

fn run_concentration_scan(ctx: &Ctx) -> Result<()> {
    let params = ctx.model(1)?;
    let n_list = ctx.cfg.get_usize_list("experiment.N_list")?;
    let reps = ctx.cfg.get_usize("experiment.replications")?;
    let opts = ConcentrationOptions {
        x0_proportion: ctx.cfg.get_f64("experiment.x0_proportion")?,
        horizon_scale: ctx.cfg.get_f64("experiment.horizon_scale")?,
    };
    let report = concentration_scan(&params, &n_list, reps, ctx.master_seed()?, &opts)?;
    ctx.out.write_csv(&report.to_csv())?;
    println!("log-log slope of median deviation: {}", report.slope);
    let slope_ok = (report.slope - (-0.5)).abs() <= 0.1;
    ctx.summary(
        serde_json::to_value(&report).map_err(|e| Error::Io(e.to_string()))?,
        json!({"slope_within_minus_half_pm_0_1": slope_ok}),
    )
}

const TAIL_KEYS: &[KeySpec] = &[
    N_KEY,
    key!("experiment.w0", "0", "lower start"),
    key!("experiment.z0", "auto", "upper start (auto = N)"),
    key!("experiment.xi_grid", req, "comma-separated positive offsets, increasing"),
    key!("experiment.replications", req, "coupled pairs"),
    key!("experiment.c4", "1.0", "overlay constant for the exponential term"),
];

fn run_coupling_tail(ctx: &Ctx) -> Result<()> {
    let params = ctx.model_n()?;
    let w0 = ctx.cfg.get_usize("experiment.w0")?;
    let z0 = match ctx.cfg.get_str("experiment.z0")? {
        "auto" => params.n(),
        _ => ctx.cfg.get_usize("experiment.z0")?,
    };
    let xi = ctx.cfg.get_f64_list("experiment.xi_grid")?;
    let reps = ctx.cfg.get_usize("experiment.replications")?;
    let c4 = ctx.cfg.get_f64("experiment.c4")?;
    let report = coupling_tail(&params, w0, z0, &xi, reps, ctx.master_seed()?, c4)?;
    ctx.out.write_csv(&report.to_csv())?;
    println!(
        "tail at xi = {}: {}",
        xi.last().unwrap(),
        report.rows.last().unwrap().tail
    );
    let monotone = report.rows.windows(2).all(|w| w[1].tail <= w[0].tail);
    ctx.summary(
        serde_json::to_value(&report).map_err(|e| Error::Io(e.to_string()))?,
        json!({"tail_non_increasing": monotone}),
    )
}

const PHASE_KEYS: &[KeySpec] = &[
    N_KEY,
    key!("experiment.xi", req, "window parameter (> 0)"),
    key!("experiment.replications", req, "coupled pairs"),
    key!("experiment.w0", "0", "lower start"),
    key!("experiment.z0", "auto", "upper start (auto = N)"),
    key!("experiment.h", "0.5", "deviation exponent in (0,1)"),
    key!("experiment.r", "auto", "good-set radius (auto = default)"),
    key!("experiment.c1", "1.0", "surrogate for the concentration constant C1"),
    key!("experiment.c2", "1.0", "surrogate for the deviation constant C2"),
];

fn run_phase_verify(ctx: &Ctx) -> Result<()> {
    let params = ctx.model_n()?;
    let xi = ctx.cfg.get_f64("experiment.xi")?;
    let reps = ctx.cfg.get_usize("experiment.replications")?;
    let w0 = ctx.cfg.get_usize("experiment.w0")?;
    let z0 = match ctx.cfg.get_str("experiment.z0")? {
        "auto" => params.n(),
        _ => ctx.cfg.get_usize("experiment.z0")?,
    };
    let good = GoodSet::with_surrogates(
        &params,
        ctx.radius("experiment.r", &params)?,
        ctx.cfg.get_f64("experiment.h")?,
        ctx.cfg.get_f64("experiment.c1")?,
        ctx.cfg.get_f64("experiment.c2")?,
    )?;
    let report = phase_verification(&params, w0, z0, xi, reps, ctx.master_seed()?, &good)?;
    ctx.out.write_csv(&report.to_csv())?;
    println!(
        "burn-in {:.4}, intermediate {:.4}, final {:.4}",
        report.burn_in.frequency, report.intermediate.frequency, report.final_phase.frequency
    );
    ctx.summary(
        serde_json::to_value(&report).map_err(|e| Error::Io(e.to_string()))?,
        json!({}),
    )
}

const STATCONC_KEYS: &[KeySpec] = &[
    key!("experiment.N_list", req, "comma-separated population sizes, increasing"),
    key!(
        "experiment.c_grid",
        "0.5,0.75,1.0,1.5,2.0,3.0,4.0",
        "ball radii in units of sqrt(N), increasing"
    ),
];

fn run_stationary_conc(ctx: &Ctx) -> Result<()> {
    let params = ctx.model(1)?;
    let n_list = ctx.cfg.get_usize_list("experiment.N_list")?;
    let c_grid = ctx.cfg.get_f64_list("experiment.c_grid")?;
    let report = stationary_concentration(&params, &n_list, &c_grid)?;
    ctx.out.write_csv(&report.to_csv())?;
    println!("minimal covering radii ratio: {}", report.c_min_ratio);
    let stable = report.c_min_ratio <= 1.5;
    ctx.summary(
        serde_json::to_value(&report).map_err(|e| Error::Io(e.to_string()))?,
        json!({"c_min_ratio_at_most_1_5": stable}),
    )
}

const LOWER_KEYS: &[KeySpec] = &[
    N_KEY,
    key!("experiment.xi", req, "offset before t_N (t_N - xi must be >= 0)"),
    key!("experiment.r", "auto", "witness radius (auto = default)"),
];

fn run_lower_bound(ctx: &Ctx) -> Result<()> {
    let params = ctx.model_n()?;
    let xi = ctx.cfg.get_f64("experiment.xi")?;
    let r = match ctx.cfg.get_str("experiment.r")? {
        "auto" => None,
        _ => Some(ctx.cfg.get_f64("experiment.r")?),
    };
    let report = lower_bound_witness(&params, xi, r)?;
    ctx.out.write_csv(&report.to_csv())?;
    println!(
        "TV at t_N - {xi} = {} ; transient mass in the stationary 95% ball = {}",
        report.tv, report.mass_in_ball
    );
    ctx.summary(
        serde_json::to_value(&report).map_err(|e| Error::Io(e.to_string()))?,
        json!({
            "tv_at_least_0_9": report.tv >= 0.9,
            "ball_mass_at_most_0_1": report.mass_in_ball <= 0.1,
        }),
    )
}

const SUBCOMMANDS: &[Subcommand] = &[
    Subcommand {
        name: "derived",
        about: "closed-form constants J, x_star, x1_star, t_N, k",
        keys: &[N_KEY],
        run: run_derived,
    },
    Subcommand {
        name: "ode",
        about: "mean-field solution on a time grid",
        keys: ODE_KEYS,
        run: run_ode,
    },
    Subcommand {
        name: "stationary",
        about: "exact stationary law by detailed balance",
        keys: &[N_KEY],
        run: run_stationary,
    },
    Subcommand {
        name: "transient",
        about: "exact transient law by uniformization",
        keys: TRANSIENT_KEYS,
        run: run_transient,
    },
    Subcommand {
        name: "tvprofile",
        about: "worst-case TV distance along a time grid",
        keys: TVPROFILE_KEYS,
        run: run_tvprofile,
    },
    Subcommand {
        name: "mixtime",
        about: "mixing time at one TV level",
        keys: MIXTIME_KEYS,
        run: run_mixtime,
    },
    Subcommand {
        name: "gap",
        about: "spectral gap and relaxation time",
        keys: &[N_KEY],
        run: run_gap,
    },
    Subcommand {
        name: "simulate",
        about: "exact event-driven paths (CSV dump)",
        keys: SIMULATE_KEYS,
        run: run_simulate,
    },
    Subcommand {
        name: "couple",
        about: "independently coupled pairs, coalescence times",
        keys: COUPLE_KEYS,
        run: run_couple,
    },
    Subcommand {
        name: "reflect",
        about: "chain reflected at the good-set boundary",
        keys: REFLECT_KEYS,
        run: run_reflect,
    },
    Subcommand {
        name: "cutoff-scan",
        about: "mixing times across N, slope and window fit",
        keys: CUTOFF_KEYS,
        run: run_cutoff_scan,
    },
    Subcommand {
        name: "concentration-scan",
        about: "sup-deviation quantiles across N",
        keys: CONC_KEYS,
        run: run_concentration_scan,
    },
    Subcommand {
        name: "coupling-tail",
        about: "empirical coalescence tail around t_N",
        keys: TAIL_KEYS,
        run: run_coupling_tail,
    },
    Subcommand {
        name: "phase-verify",
        about: "three-phase coupling success frequencies",
        keys: PHASE_KEYS,
        run: run_phase_verify,
    },
    Subcommand {
        name: "stationary-conc",
        about: "exact stationary tail outside sqrt(N)-balls",
        keys: STATCONC_KEYS,
        run: run_stationary_conc,
    },
    Subcommand {
        name: "lower-bound",
        about: "exact TV witness shortly before t_N",
        keys: LOWER_KEYS,
        run: run_lower_bound,
    },
];

/// Names of all subcommands, for help and tests.
pub fn subcommand_names() -> Vec<&'static str> {
    SUBCOMMANDS.iter().map(|c| c.name).collect()
}
