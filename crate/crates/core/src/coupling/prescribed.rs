//! Fluid driven by a solid whose heave velocity is given.

use std::fmt;
use std::sync::Arc;

use super::compat::boundary_trace;
use super::{heun_combine, StepLog};
use crate::error::{Error, Result};
use crate::fluid::{advance, cfl_dt, fluid_rhs, FluidRhs, FluidState, WallBC};
use crate::model::Model;

/// Heave velocity of the solid.
#[derive(Clone)]
pub enum WallSignal {
    /// w_G(t), sampled at the stage times of a CFL-limited Heun step.
    Closure(Arc<dyn Fn(f64) -> f64 + Send + Sync>),
    /// Step sizes and stage velocities replayed verbatim.
    Recorded(Vec<StepLog>),
}

impl fmt::Debug for WallSignal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            WallSignal::Closure(_) => f.write_str("WallSignal::Closure"),
            WallSignal::Recorded(s) => write!(f, "WallSignal::Recorded({} steps)", s.len()),
        }
    }
}

impl WallSignal {
    pub fn closure(f: impl Fn(f64) -> f64 + Send + Sync + 'static) -> Self {
        WallSignal::Closure(Arc::new(f))
    }

    fn initial_velocity(&self) -> f64 {
        match self {
            WallSignal::Closure(f) => f(0.0),
            WallSignal::Recorded(steps) => steps.first().map_or(0.0, |s| s.stage_w[0]),
        }
    }
}

#[derive(Debug, Clone)]
pub struct PrescribedTrajectory {
    pub times: Vec<f64>,
    pub zeta_wall: Vec<f64>,
    pub q_wall: Vec<f64>,
    pub snapshots: Vec<FluidState>,
    pub final_state: FluidState,
}

fn wall_rhs(state: &FluidState, w: f64, model: &Model) -> Result<FluidRhs> {
    fluid_rhs(
        state,
        WallBC {
            q_wall: model.wall_discharge(w),
        },
        &model.params,
        &model.grid,
    )
}

/// Fluid-only evolution with q_wall(t) = −(R/2)w_G(t).
pub fn run_prescribed(
    fluid0: &FluidState,
    signal: &WallSignal,
    t_end: f64,
    cfl: f64,
    model: &Model,
    snapshot_every: usize,
) -> Result<PrescribedTrajectory> {
    let params = &model.params;
    let (g, h0) = (params.gravity(), params.rest_depth());
    let w0 = signal.initial_velocity();
    let residual = (boundary_trace(&fluid0.q) - model.wall_discharge(w0)).abs();
    let tolerance = 1e-8 * (g * h0).sqrt() * h0;
    if residual >= tolerance {
        return Err(Error::IncompatibleData {
            order: 0,
            residual,
            tolerance,
        });
    }

    let mut u = fluid0.clone();
    let mut out = PrescribedTrajectory {
        times: Vec::new(),
        zeta_wall: Vec::new(),
        q_wall: Vec::new(),
        snapshots: Vec::new(),
        final_state: fluid0.clone(),
    };
    let push = |u: &FluidState, rhs: &FluidRhs, out: &mut PrescribedTrajectory, step: usize| {
        out.times.push(u.t);
        out.zeta_wall.push(rhs.wall.h - h0);
        out.q_wall.push(rhs.wall.q);
        if snapshot_every > 0 && step.is_multiple_of(snapshot_every) {
            out.snapshots.push(u.clone());
        }
    };

    let tiny = 1e-12 * t_end.abs().max(1.0);
    let mut step = 0;
    match signal {
        WallSignal::Recorded(steps) => {
            let mut rhs0 = wall_rhs(&u, w0, model)?;
            push(&u, &rhs0, &mut out, 0);
            for log in steps {
                if u.t >= t_end - tiny {
                    break;
                }
                let u1 = advance(&u, &rhs0, log.dt);
                let rhs1 = wall_rhs(&u1, log.stage_w[1], model)?;
                u = heun_combine(&u, &u1, &rhs1, log.dt);
                step += 1;
                rhs0 = wall_rhs(&u, log.end_w, model)?;
                push(&u, &rhs0, &mut out, step);
            }
        }
        WallSignal::Closure(f) => {
            let mut rhs0 = wall_rhs(&u, f(u.t), model)?;
            push(&u, &rhs0, &mut out, 0);
            while u.t < t_end - tiny {
                let dt = cfl_dt(&u, &model.grid, params, cfl)?.min(t_end - u.t);
                let u1 = advance(&u, &rhs0, dt);
                let rhs1 = wall_rhs(&u1, f(u.t + dt), model)?;
                u = heun_combine(&u, &u1, &rhs1, dt);
                step += 1;
                rhs0 = wall_rhs(&u, f(u.t), model)?;
                push(&u, &rhs0, &mut out, step);
            }
        }
    }
    out.final_state = u;
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::super::tests::model;
    use super::*;

    #[test]
    fn still_solid_keeps_rest() {
        let m = model(100, 20.0);
        let sig = WallSignal::closure(|_| 0.0);
        let tr = run_prescribed(&FluidState::rest(100), &sig, 2.0, 0.9, &m, 0).unwrap();
        assert_eq!(tr.final_state.max_abs(), 0.0);
        assert!(tr.zeta_wall.iter().all(|&z| z == 0.0));
    }

    #[test]
    fn moving_start_over_still_water_is_incompatible() {
        let m = model(100, 20.0);
        let sig = WallSignal::closure(|_| 0.2);
        let err = run_prescribed(&FluidState::rest(100), &sig, 1.0, 0.9, &m, 0).unwrap_err();
        assert!(matches!(err, Error::IncompatibleData { order: 0, .. }));
        assert_eq!(err.exit_code(), 3);
    }

    #[test]
    fn wall_discharge_follows_signal() {
        let m = model(100, 20.0);
        let sig = WallSignal::closure(|t| 0.01 * (3.0 * t).sin());
        let tr = run_prescribed(&FluidState::rest(100), &sig, 1.0, 0.9, &m, 10).unwrap();
        for (t, q) in tr.times.iter().zip(&tr.q_wall) {
            assert_eq!(*q, -0.5 * 0.01 * (3.0 * t).sin());
        }
        assert!(!tr.snapshots.is_empty());
    }
}
