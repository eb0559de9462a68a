//! Mode dispatch and file output for one configured run.

use std::fs::{self, File};
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};
use std::time::Instant;

use serde_json::{json, Value};

use crate::config::{InitialConfig, Mode, RunConfig, SignalConfig};
use crate::coupling::{
    check_compatibility, diagnose, evaluate, generate_compatible_release, picard_solve,
    run_coupled, run_prescribed, CoupledState, RunOptions, TimeStepping, WallSignal,
};
use crate::energy::{audit_run, observed_orders, DiagnosticsRecord};
use crate::error::{Error, Result};
use crate::fluid::FluidState;
use crate::hyperbolic::{build_symmetrizer, dissipativity_threshold};
use crate::model::Model;
use crate::output::{
    config_hash, interpolate, read_fluid_csv, read_signal_csv, read_trajectory, write_prescribed,
    write_trajectory,
};
use crate::solid::SolidState;

fn create(path: &Path) -> Result<BufWriter<File>> {
    if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
        fs::create_dir_all(dir).map_err(|e| Error::Io(format!("{}: {e}", dir.display())))?;
    }
    let f = File::create(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    Ok(BufWriter::new(f))
}

fn open(path: &Path) -> Result<File> {
    File::open(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))
}

fn io_at(path: &Path) -> impl Fn(std::io::Error) -> Error + '_ {
    move |e| Error::Io(format!("{}: {e}", path.display()))
}

/// Initial coupled state described by `[initial]`.
pub fn initial_state(cfg: &RunConfig, model: &Model) -> Result<CoupledState> {
    let cells = model.grid.len();
    match &cfg.initial {
        InitialConfig::Equilibrium => Ok(CoupledState::equilibrium(cells)),
        InitialConfig::Release {
            delta0,
            decay_length,
        } => generate_compatible_release(
            *delta0,
            decay_length.unwrap_or(2.0 * model.params.solid_radius()),
            model,
        ),
        InitialConfig::Csv { path, delta0, w0 } => {
            let fluid = read_fluid_csv(open(&cfg.resolve(path))?, model.grid.centers())?;
            Ok(CoupledState {
                fluid,
                solid: SolidState::new(*delta0, *w0),
                t: 0.0,
            })
        }
    }
}

fn write_snapshots(
    dir: &Path,
    snapshots: &[FluidState],
    every: usize,
    model: &Model,
) -> Result<usize> {
    for (k, s) in snapshots.iter().enumerate() {
        let path = dir.join(format!("snapshot_{:06}.csv", k * every));
        let mut out = create(&path)?;
        s.write_snapshot_csv(&mut out, &model.grid, &model.params)
            .and_then(|_| out.flush())
            .map_err(io_at(&path))?;
    }
    Ok(snapshots.len())
}

fn write_records(cfg: &RunConfig, records: &[DiagnosticsRecord]) -> Result<()> {
    let path = &cfg.resolve(&cfg.output.trajectory);
    let mut out = create(path)?;
    write_trajectory(&mut out, &config_hash(cfg), records)
        .and_then(|_| out.flush())
        .map_err(io_at(path))
}

/// Wall symmetrizer for the wall state of `cs`.
fn symmetrizer_report(cs: &CoupledState, cfg: &RunConfig, model: &Model) -> Result<Value> {
    let e = evaluate(&cs.fluid, cs.solid, cs.t, model)?;
    let g = model.params.gravity();
    let sym = build_symmetrizer(e.fluid.wall, g, cfg.numerics.symmetrizer_weight)?;
    Ok(json!({
        "weight": sym.weight,
        "threshold": dissipativity_threshold(e.fluid.wall, g)?,
        "boundary_form": sym.boundary_form,
        "dissipative": sym.dissipative,
    }))
}

fn run_coupled_mode(cfg: &RunConfig, model: &Model, cs0: &CoupledState) -> Result<Value> {
    let options = RunOptions {
        snapshot_every: cfg.time.snapshot_every,
    };
    let traj = run_coupled(
        cs0,
        cfg.time.t_end,
        TimeStepping::Cfl(cfg.time.cfl),
        model,
        &options,
    )?;
    write_records(cfg, &traj.records)?;
    let snapshots = match &cfg.output.snapshots_dir {
        Some(dir) => write_snapshots(
            &cfg.resolve(dir),
            &traj.snapshots,
            cfg.time.snapshot_every,
            model,
        )?,
        None => 0,
    };
    let audit = audit_run(&traj.records);
    let min_margin = traj
        .records
        .iter()
        .map(|r| r.subsonic_margin_min)
        .fold(f64::INFINITY, f64::min);
    Ok(json!({
        "final_delta": traj.final_state.solid.delta,
        "final_w": traj.final_state.solid.w,
        "energy_drift": audit.max_energy_drift,
        "mass_residual": audit.mass_residual,
        "min_subsonic_margin": min_margin,
        "steps": traj.steps.len(),
        "snapshots": snapshots,
        "wall_symmetrizer": symmetrizer_report(cs0, cfg, model)?,
    }))
}

fn signal(cfg: &RunConfig) -> Result<WallSignal> {
    match cfg.prescribed.as_ref() {
        Some(SignalConfig::Sine { amplitude, omega }) => {
            let (a, w) = (*amplitude, *omega);
            Ok(WallSignal::closure(move |t| a * (w * t).sin()))
        }
        Some(SignalConfig::Csv { path }) => {
            let samples = read_signal_csv(open(&cfg.resolve(path))?)?;
            Ok(WallSignal::closure(move |t| interpolate(&samples, t)))
        }
        None => Err(Error::config(
            "prescribed",
            "required when mode = \"prescribed\"",
        )),
    }
}

fn run_prescribed_mode(cfg: &RunConfig, model: &Model, cs0: &CoupledState) -> Result<Value> {
    let sig = signal(cfg)?;
    let WallSignal::Closure(f) = &sig else {
        unreachable!("config signals are closures")
    };
    let tr = run_prescribed(
        &cs0.fluid,
        &sig,
        cfg.time.t_end,
        cfg.time.cfl,
        model,
        cfg.time.snapshot_every,
    )?;
    let w: Vec<f64> = tr.times.iter().map(|&t| f(t)).collect();
    let path = &cfg.resolve(&cfg.output.trajectory);
    let mut out = create(path)?;
    write_prescribed(
        &mut out,
        &config_hash(cfg),
        &tr.times,
        &w,
        &tr.zeta_wall,
        &tr.q_wall,
    )
    .and_then(|_| out.flush())
    .map_err(io_at(path))?;
    let snapshots = match &cfg.output.snapshots_dir {
        Some(dir) => write_snapshots(
            &cfg.resolve(dir),
            &tr.snapshots,
            cfg.time.snapshot_every,
            model,
        )?,
        None => 0,
    };
    let max_zeta = tr.zeta_wall.iter().fold(0.0, |m: f64, z| m.max(z.abs()));
    Ok(json!({
        "steps": tr.times.len() - 1,
        "max_abs_zeta_R": max_zeta,
        "snapshots": snapshots,
    }))
}

fn run_picard_mode(cfg: &RunConfig, model: &Model, cs0: &CoupledState) -> Result<Value> {
    let res = picard_solve(
        cs0,
        cfg.time.t_end,
        cfg.picard.iterations,
        cfg.picard.cfl,
        model,
    )?;
    let last = &res.last;
    let records = (0..last.delta.len())
        .map(|k| {
            let cs = CoupledState {
                fluid: last.fluid[k].clone(),
                solid: SolidState::new(last.delta[k], last.w[k]),
                t: last.fluid[k].t,
            };
            let e = evaluate(&cs.fluid, cs.solid, cs.t, model)?;
            diagnose(&cs, &e, model, [0.0; 2])
        })
        .collect::<Result<Vec<_>>>()?;
    write_records(cfg, &records)?;
    let audit = audit_run(&records);
    Ok(json!({
        "dt": res.dt,
        "steps": res.steps,
        "iterations": res.differences.len(),
        "differences": res.differences,
        "ratios": res.ratios(),
        "final_delta": last.delta[res.steps],
        "energy_drift": audit.max_energy_drift,
    }))
}

fn run_check_compat(model: &Model, cs0: &CoupledState) -> Result<Value> {
    let rep = check_compatibility(&cs0.fluid, cs0.solid, model);
    if !rep.order0_pass {
        return Err(Error::IncompatibleData {
            order: 0,
            residual: rep.order0_residual,
            tolerance: rep.order0_tolerance,
        });
    }
    if !rep.order1_pass {
        return Err(Error::IncompatibleData {
            order: 1,
            residual: rep.order1_residual,
            tolerance: rep.order1_tolerance,
        });
    }
    Ok(serde_json::to_value(rep).expect("report serializes"))
}

/// Conservation audit of trajectory files, ordered coarse to fine.
pub fn audit_files(paths: &[PathBuf]) -> Result<Value> {
    let mut runs = Vec::new();
    let mut drifts = Vec::new();
    let mut mass: f64 = 0.0;
    for path in paths {
        let records = read_trajectory(open(path)?)?;
        let rep = audit_run(&records);
        drifts.push(rep.max_energy_drift);
        mass = mass.max(rep.mass_residual);
        runs.push(json!({
            "path": path.display().to_string(),
            "max_energy_drift": rep.max_energy_drift,
            "mass_residual": rep.mass_residual,
            "steps": rep.steps,
        }));
    }
    let orders = observed_orders(&drifts);
    let observed = if orders.is_empty() {
        Value::Null
    } else {
        json!(orders.iter().cloned().fold(f64::INFINITY, f64::min))
    };
    Ok(json!({
        "max_energy_drift": drifts.iter().cloned().fold(0.0, f64::max),
        "mass_residual": mass,
        "observed_order": observed,
        "observed_orders": orders,
        "runs": runs,
    }))
}

/// Executes the configured mode and writes the summary JSON; returns it.
pub fn run(cfg: &RunConfig) -> Result<Value> {
    let start = Instant::now();
    let model = cfg.validate()?;
    let mut summary = if cfg.mode == Mode::Audit {
        let inputs: Vec<PathBuf> = cfg
            .audit
            .iter()
            .flat_map(|a| a.inputs.iter().map(|p| cfg.resolve(p)))
            .collect();
        audit_files(&inputs)?
    } else {
        let cs0 = initial_state(cfg, &model)?;
        match cfg.mode {
            Mode::Coupled => run_coupled_mode(cfg, &model, &cs0)?,
            Mode::Prescribed => run_prescribed_mode(cfg, &model, &cs0)?,
            Mode::Picard => run_picard_mode(cfg, &model, &cs0)?,
            Mode::CheckCompat => run_check_compat(&model, &cs0)?,
            Mode::Audit => unreachable!(),
        }
    };
    summary["mode"] = serde_json::to_value(cfg.mode).expect("mode serializes");
    summary["config_hash"] = json!(config_hash(cfg));
    summary["wall_clock_s"] = json!(start.elapsed().as_secs_f64());
    if cfg.mode != Mode::CheckCompat {
        let path = &cfg.resolve(&cfg.output.summary);
        let mut out = create(path)?;
        serde_json::to_writer_pretty(&mut out, &summary).map_err(|e| Error::Io(e.to_string()))?;
        writeln!(out)
            .and_then(|_| out.flush())
            .map_err(io_at(path))?;
    }
    Ok(summary)
}
