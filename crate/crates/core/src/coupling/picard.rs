//! Fixed-point iteration on the coupled system with frozen coefficients.
//!
//! Iterate n solves the linear fluid problem with coefficients and wall
//! discharge taken from iterate n−1, and the heave ODE linearized around
//! iterate n−1 and forced by the new wall elevation. Both use the same Heun
//! stages and a fixed step on the whole horizon.

use super::CoupledState;
use crate::error::{Error, Result};
use crate::fluid::{check_admissible, linear_rhs, FluidState};
use crate::hyperbolic::wave_speeds;
use crate::model::Model;
use crate::solid::{added_mass, beta_coeff, SolidState};

/// One iterate sampled at the time levels t_k = k·dt.
#[derive(Debug, Clone, PartialEq)]
pub struct PicardIterate {
    pub fluid: Vec<FluidState>,
    pub delta: Vec<f64>,
    pub w: Vec<f64>,
    /// ζ at r = R from the wall closure.
    pub zeta_wall: Vec<f64>,
}

impl PicardIterate {
    /// Sup-norm distance over all levels and components.
    pub fn distance(&self, other: &PicardIterate) -> f64 {
        let mut d: f64 = 0.0;
        for k in 0..self.delta.len() {
            d = d
                .max(self.fluid[k].max_diff(&other.fluid[k]))
                .max((self.delta[k] - other.delta[k]).abs())
                .max((self.w[k] - other.w[k]).abs());
        }
        d
    }

    pub fn final_state(&self) -> CoupledState {
        let k = self.delta.len() - 1;
        CoupledState {
            fluid: self.fluid[k].clone(),
            solid: SolidState::new(self.delta[k], self.w[k]),
            t: self.fluid[k].t,
        }
    }
}

#[derive(Debug, Clone)]
pub struct PicardResult {
    pub dt: f64,
    pub steps: usize,
    /// ‖Vⁿ − Vⁿ⁻¹‖∞ for n = 1, 2, …
    pub differences: Vec<f64>,
    pub last: PicardIterate,
}

impl PicardResult {
    /// d_n / d_{n−1} for every consecutive pair.
    pub fn ratios(&self) -> Vec<f64> {
        self.differences.windows(2).map(|d| d[1] / d[0]).collect()
    }
}

/// Fixed step used on the horizon: cfl·Δr / max|λ| of the initial state,
/// rounded so an integer number of steps reaches `t_end`.
pub fn picard_step(
    cs0: &CoupledState,
    t_end: f64,
    cfl: f64,
    model: &Model,
) -> Result<(f64, usize)> {
    check_admissible(&cs0.fluid, &model.params)?;
    let (g, h0) = (model.params.gravity(), model.params.rest_depth());
    let speed = (0..cs0.fluid.len())
        .map(|j| {
            let (a, b) = wave_speeds(cs0.fluid.point(j, h0), g);
            a.abs().max(b.abs())
        })
        .fold(0.0, f64::max);
    let steps = ((t_end * speed) / (cfl * model.grid.dr())).ceil().max(1.0) as usize;
    Ok((t_end / steps as f64, steps))
}

struct Frozen<'a> {
    prev: &'a PicardIterate,
    model: &'a Model,
}

impl Frozen<'_> {
    /// δ̈ of the linear ODE at level k for the unknowns (δ, w) and forcing ζ_R.
    fn accel(&self, k: usize, s: SolidState, zeta_edge: f64) -> Result<f64> {
        let p = &self.model.params;
        let shape = &self.model.shape;
        let delta_prev = self.prev.delta[k];
        let m_a = added_mass(delta_prev, shape, p)?;
        let beta = beta_coeff(delta_prev, shape, p)?;
        let h_ref = if self.model.pressure_corrector {
            p.rest_depth() + self.prev.zeta_wall[k]
        } else {
            shape.height(delta_prev, p.solid_radius())
        };
        if !(h_ref > 0.0) {
            return Err(Error::DryState {
                h: h_ref,
                cell: None,
            });
        }
        let c = p.buoyancy_stiffness();
        let quad = p.added_mass_scale() / (h_ref * h_ref) + beta;
        Ok((-c * s.delta + c * zeta_edge + quad * self.prev.w[k] * s.w) / (p.solid_mass() + m_a))
    }
}

fn constant_iterate(
    cs0: &CoupledState,
    steps: usize,
    dt: f64,
    model: &Model,
) -> Result<PicardIterate> {
    let rhs = linear_rhs(
        &cs0.fluid,
        &cs0.fluid,
        None,
        model.wall_discharge(cs0.solid.w),
        &model.params,
        &model.grid,
    )?;
    let levels = steps + 1;
    Ok(PicardIterate {
        fluid: (0..levels)
            .map(|k| FluidState {
                t: k as f64 * dt,
                ..cs0.fluid.clone()
            })
            .collect(),
        delta: vec![cs0.solid.delta; levels],
        w: vec![cs0.solid.w; levels],
        zeta_wall: vec![rhs.wall[0]; levels],
    })
}

fn next_iterate(
    cs0: &CoupledState,
    prev: &PicardIterate,
    dt: f64,
    model: &Model,
) -> Result<PicardIterate> {
    let (params, grid) = (&model.params, &model.grid);
    let frozen = Frozen { prev, model };
    let steps = prev.delta.len() - 1;
    let mut u = cs0.fluid.clone();
    u.t = 0.0;
    let mut s = cs0.solid;
    let mut out = PicardIterate {
        fluid: Vec::with_capacity(steps + 1),
        delta: Vec::with_capacity(steps + 1),
        w: Vec::with_capacity(steps + 1),
        zeta_wall: Vec::with_capacity(steps + 1),
    };
    for k in 0..steps {
        model.shape.check_clearance(s.delta)?;
        let g0 = model.wall_discharge(prev.w[k]);
        let r0 = linear_rhs(&prev.fluid[k], &u, None, g0, params, grid)?;
        let a0 = frozen.accel(k, s, r0.wall[0])?;
        out.fluid.push(u.clone());
        out.delta.push(s.delta);
        out.w.push(s.w);
        out.zeta_wall.push(r0.wall[0]);

        let u1 = step_with(&u, &r0.dzeta, &r0.dq, dt);
        let s1 = SolidState::new(s.delta + dt * s.w, s.w + dt * a0);
        let g1 = model.wall_discharge(prev.w[k + 1]);
        let r1 = linear_rhs(&prev.fluid[k + 1], &u1, None, g1, params, grid)?;
        let a1 = frozen.accel(k + 1, s1, r1.wall[0])?;
        u = FluidState {
            zeta: (0..u.len())
                .map(|j| 0.5 * (u.zeta[j] + u1.zeta[j] + dt * r1.dzeta[j]))
                .collect(),
            q: (0..u.len())
                .map(|j| 0.5 * (u.q[j] + u1.q[j] + dt * r1.dq[j]))
                .collect(),
            t: (k + 1) as f64 * dt,
        };
        s = SolidState::new(
            s.delta + 0.5 * dt * (s.w + s1.w),
            s.w + 0.5 * dt * (a0 + a1),
        );
    }
    model.shape.check_clearance(s.delta)?;
    let r = linear_rhs(
        &prev.fluid[steps],
        &u,
        None,
        model.wall_discharge(prev.w[steps]),
        params,
        grid,
    )?;
    out.fluid.push(u);
    out.delta.push(s.delta);
    out.w.push(s.w);
    out.zeta_wall.push(r.wall[0]);
    Ok(out)
}

fn step_with(u: &FluidState, dzeta: &[f64], dq: &[f64], dt: f64) -> FluidState {
    FluidState {
        zeta: u.zeta.iter().zip(dzeta).map(|(a, d)| a + dt * d).collect(),
        q: u.q.iter().zip(dq).map(|(a, d)| a + dt * d).collect(),
        t: u.t + dt,
    }
}

/// Runs up to `max_iters` iterations from the constant-in-time iterate V⁰,
/// stopping early once successive iterates agree to roundoff.
pub fn picard_solve(
    cs0: &CoupledState,
    t_end: f64,
    max_iters: usize,
    cfl: f64,
    model: &Model,
) -> Result<PicardResult> {
    let (dt, steps) = picard_step(cs0, t_end, cfl, model)?;
    let mut prev = constant_iterate(cs0, steps, dt, model)?;
    let mut differences = Vec::new();
    let mut growth = 0;
    let scale = cs0
        .fluid
        .max_abs()
        .max(cs0.solid.delta.abs())
        .max(cs0.solid.w.abs());
    for iteration in 1..=max_iters {
        let next = next_iterate(cs0, &prev, dt, model)?;
        let d = next.distance(&prev);
        if let Some(&last) = differences.last() {
            if d > last {
                growth += 1;
            } else {
                growth = 0;
            }
        }
        differences.push(d);
        prev = next;
        if growth >= 3 {
            return Err(Error::NonContracting {
                iteration,
                history: differences,
            });
        }
        if d <= 1e-15 * scale {
            break;
        }
    }
    Ok(PicardResult {
        dt,
        steps,
        differences,
        last: prev,
    })
}
