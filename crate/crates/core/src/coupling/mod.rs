//! Two-way coupled time integration of fluid and solid.
//!
//! Both substates share the stages of a Heun (explicit trapezoidal) step.
//! At every stage the wall discharge is −(R/2)w and the heave equation reads
//! ζ_e(R) from the wall state solved with that same discharge.

mod compat;
mod picard;
mod prescribed;

use std::f64::consts::PI;

pub use compat::{
    boundary_slope, boundary_trace, check_compatibility, generate_compatible_release,
    CompatibilityReport,
};
pub use picard::{picard_solve, PicardIterate, PicardResult};
pub use prescribed::{run_prescribed, PrescribedTrajectory, WallSignal};

use crate::energy::{
    energy_flux_at_wall, fluid_energy, interior_energy, radial_energy_flux, solid_energy,
    total_mass, DiagnosticsRecord,
};
use crate::error::{Error, Result};
use crate::fluid::{advance, cfl_dt, fluid_rhs, FluidRhs, FluidState, WallBC};
use crate::model::Model;
use crate::solid::{interior_pressure_profiles, solid_acceleration, SolidState};

#[derive(Debug, Clone, PartialEq)]
pub struct CoupledState {
    pub fluid: FluidState,
    pub solid: SolidState,
    pub t: f64,
}

impl CoupledState {
    pub fn equilibrium(cells: usize) -> Self {
        CoupledState {
            fluid: FluidState::rest(cells),
            solid: SolidState::default(),
            t: 0.0,
        }
    }
}

/// Everything evaluated at one stage of the coupled system.
#[derive(Debug, Clone)]
pub struct StageEval {
    pub fluid: FluidRhs,
    pub accel: f64,
    pub q_wall: f64,
    pub zeta_wall: f64,
}

fn diverged(t: f64, e: Error) -> Error {
    match e {
        e @ Error::NoWallSolution { .. } => Error::CouplingDiverged {
            t,
            source: Box::new(e),
        },
        e => e,
    }
}

/// Evaluates the coupled right-hand side at (fluid, solid).
pub fn evaluate(fluid: &FluidState, solid: SolidState, t: f64, model: &Model) -> Result<StageEval> {
    model.shape.check_clearance(solid.delta)?;
    let q_wall = model.wall_discharge(solid.w);
    let rhs = fluid_rhs(fluid, WallBC { q_wall }, &model.params, &model.grid)
        .map_err(|e| diverged(t, e))?;
    let zeta_wall = rhs.wall.h - model.params.rest_depth();
    let accel = solid_acceleration(
        solid,
        zeta_wall,
        &model.params,
        &model.shape,
        model.pressure_corrector,
    )?;
    Ok(StageEval {
        fluid: rhs,
        accel,
        q_wall,
        zeta_wall,
    })
}

/// Final Heun combination ½(U + U₁ + dt·dU₁), shared with the prescribed mode
/// so both produce identical floats.
pub(crate) fn heun_combine(
    u: &FluidState,
    u1: &FluidState,
    rhs1: &FluidRhs,
    dt: f64,
) -> FluidState {
    FluidState {
        zeta: u
            .zeta
            .iter()
            .zip(&u1.zeta)
            .zip(&rhs1.dzeta)
            .map(|((a, b), d)| 0.5 * (a + b + dt * d))
            .collect(),
        q: u.q
            .iter()
            .zip(&u1.q)
            .zip(&rhs1.dq)
            .map(|((a, b), d)| 0.5 * (a + b + dt * d))
            .collect(),
        t: u.t + dt,
    }
}

/// Velocities used at the two stages of a step, plus its size.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StepLog {
    pub dt: f64,
    pub stage_w: [f64; 2],
    /// Velocity at the end of the step.
    pub end_w: f64,
}

fn heun_from(
    cs: &CoupledState,
    e0: &StageEval,
    dt: f64,
    model: &Model,
) -> Result<(CoupledState, StageEval, StepLog)> {
    let s = cs.solid;
    let u1 = advance(&cs.fluid, &e0.fluid, dt);
    let s1 = SolidState::new(s.delta + dt * s.w, s.w + dt * e0.accel);
    let e1 = evaluate(&u1, s1, cs.t + dt, model)?;
    let fluid = heun_combine(&cs.fluid, &u1, &e1.fluid, dt);
    let solid = SolidState::new(
        s.delta + 0.5 * dt * (s.w + s1.w),
        s.w + 0.5 * dt * (e0.accel + e1.accel),
    );
    model.shape.check_clearance(solid.delta)?;
    let log = StepLog {
        dt,
        stage_w: [s.w, s1.w],
        end_w: solid.w,
    };
    Ok((
        CoupledState {
            fluid,
            solid,
            t: cs.t + dt,
        },
        e1,
        log,
    ))
}

/// One Heun step of the coupled semi-discrete system.
pub fn coupled_step(cs: &CoupledState, dt: f64, model: &Model) -> Result<CoupledState> {
    let e0 = evaluate(&cs.fluid, cs.solid, cs.t, model)?;
    heun_from(cs, &e0, dt, model).map(|(next, _, _)| next)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum TimeStepping {
    /// dt = cfl · Δr / max|λ| recomputed every step.
    Cfl(f64),
    Fixed(f64),
}

#[derive(Debug, Clone, Default)]
pub struct RunOptions {
    /// Keep a fluid snapshot every this many steps (0 disables).
    pub snapshot_every: usize,
}

#[derive(Debug, Clone)]
pub struct Trajectory {
    pub records: Vec<DiagnosticsRecord>,
    pub steps: Vec<StepLog>,
    pub snapshots: Vec<FluidState>,
    pub final_state: CoupledState,
}

impl Trajectory {
    pub fn recorded_signal(&self) -> WallSignal {
        WallSignal::Recorded(self.steps.clone())
    }
}

/// Diagnostics for the state `cs`, whose stage evaluation is `e`.
pub fn diagnose(
    cs: &CoupledState,
    e: &StageEval,
    model: &Model,
    outer_out: [f64; 2],
) -> Result<DiagnosticsRecord> {
    let params = &model.params;
    let e_ext = fluid_energy(&cs.fluid, params, &model.grid)?;
    let e_int = interior_energy(cs.solid, params, &model.shape)?;
    let e_sol = solid_energy(cs.solid, params);
    let pressure = interior_pressure_profiles(
        cs.solid,
        e.accel,
        e.zeta_wall,
        params,
        &model.shape,
        model.pressure_corrector,
    )?;
    let wall_pressure = pressure.total(params.solid_radius());
    let flux = energy_flux_at_wall(e.fluid.wall, wall_pressure, params)?;
    Ok(DiagnosticsRecord {
        t: cs.t,
        delta: cs.solid.delta,
        w: cs.solid.w,
        zeta_r: e.zeta_wall,
        q_wall: e.q_wall,
        e_sw: e_ext + e_int,
        e_sol,
        e_tot: e_ext + e_int + e_sol,
        boundary_energy_flux: flux.fluid,
        p_cor: pressure.forces().p_cor,
        mass_total: total_mass(&cs.fluid, cs.solid, params, &model.grid),
        subsonic_margin_min: e.fluid.min_margin,
        min_h: e.fluid.min_depth,
        outer_mass_out: outer_out[0],
        outer_energy_out: outer_out[1],
    })
}

/// Rates (volume, energy) leaving through r_max for a stage.
fn outer_rates(e: &StageEval, model: &Model) -> Result<[f64; 2]> {
    let r_max = model.grid.outer_radius();
    Ok([
        2.0 * PI * r_max * e.fluid.outer_flux[0],
        radial_energy_flux(e.fluid.outer, r_max, &model.params)?,
    ])
}

/// Integrates the coupled system to `t_end`, recording diagnostics after
/// every step.
pub fn run_coupled(
    cs0: &CoupledState,
    t_end: f64,
    stepping: TimeStepping,
    model: &Model,
    options: &RunOptions,
) -> Result<Trajectory> {
    let mut cs = cs0.clone();
    let mut e = evaluate(&cs.fluid, cs.solid, cs.t, model)?;
    let mut outer_out = [0.0; 2];
    let mut records = vec![diagnose(&cs, &e, model, outer_out)?];
    let mut steps = Vec::new();
    let mut snapshots = Vec::new();
    if options.snapshot_every > 0 {
        snapshots.push(cs.fluid.clone());
    }
    let tiny = 1e-12 * t_end.abs().max(1.0);
    while cs.t < t_end - tiny {
        let dt_max = match stepping {
            TimeStepping::Cfl(cfl) => cfl_dt(&cs.fluid, &model.grid, &model.params, cfl)?,
            TimeStepping::Fixed(dt) => dt,
        };
        let dt = dt_max.min(t_end - cs.t);
        let rates0 = outer_rates(&e, model)?;
        let (next, e1, log) = heun_from(&cs, &e, dt, model)?;
        let rates1 = outer_rates(&e1, model)?;
        for k in 0..2 {
            outer_out[k] += 0.5 * dt * (rates0[k] + rates1[k]);
        }
        cs = next;
        e = evaluate(&cs.fluid, cs.solid, cs.t, model)?;
        records.push(diagnose(&cs, &e, model, outer_out)?);
        steps.push(log);
        if options.snapshot_every > 0 && steps.len() % options.snapshot_every == 0 {
            snapshots.push(cs.fluid.clone());
        }
    }
    Ok(Trajectory {
        records,
        steps,
        snapshots,
        final_state: cs,
    })
}
