//! Explicit finite-volume integrator for the radial shallow-water system on
//! (R, r_max).
//!
//! Cell averages of (ζ, q) are advanced with radially weighted flux
//! differences
//!
//! ```text
//! d/dt u_j = −(r_{j+½} F_{j+½} − r_{j−½} F_{j−½}) / (r_j Δr) + S_j
//! ```
//!
//! where the mass equation has no cell source (q/r is carried by the
//! weighting) and the momentum equation keeps only the hoop term g h²/(2r)
//! left over from writing ∂r(g h²/2) in weighted form. Interior faces use
//! the HLL flux; the wall face and the outer face use the physical flux of
//! a boundary state built from Riemann invariants, so the discharge through
//! the wall is exactly the prescribed one.

mod boundary;
mod flux;
mod linearized;

use std::io::Write;

use rayon::prelude::*;

pub use boundary::{outer_boundary_state, resolve_wall_state};
pub use flux::{geometric_source, numerical_flux, physical_flux};
pub use linearized::{linear_rhs, step_linearized, LinearRhs};

use crate::error::{Error, Result};
use crate::hyperbolic::{subsonic_margin, wave_speeds, StatePoint};
use crate::params::{PhysicalParams, RadialGrid};

/// Grids at least this large are processed with rayon.
const PARALLEL_CELLS: usize = 8192;

/// Cell averages of elevation and discharge.
#[derive(Debug, Clone, PartialEq)]
pub struct FluidState {
    pub zeta: Vec<f64>,
    pub q: Vec<f64>,
    pub t: f64,
}

impl FluidState {
    pub fn new(zeta: Vec<f64>, q: Vec<f64>) -> Self {
        assert_eq!(zeta.len(), q.len(), "zeta and q must have the same length");
        FluidState { zeta, q, t: 0.0 }
    }

    pub fn rest(cells: usize) -> Self {
        FluidState::new(vec![0.0; cells], vec![0.0; cells])
    }

    pub fn len(&self) -> usize {
        self.zeta.len()
    }

    pub fn is_empty(&self) -> bool {
        self.zeta.is_empty()
    }

    pub fn point(&self, j: usize, rest_depth: f64) -> StatePoint {
        StatePoint::from_elevation(self.zeta[j], self.q[j], rest_depth)
    }

    /// Max-norm distance over both fields.
    pub fn max_diff(&self, other: &FluidState) -> f64 {
        self.zeta
            .iter()
            .zip(&other.zeta)
            .chain(self.q.iter().zip(&other.q))
            .fold(0.0, |m: f64, (a, b)| m.max((a - b).abs()))
    }

    pub fn max_abs(&self) -> f64 {
        self.zeta
            .iter()
            .chain(&self.q)
            .fold(0.0, |m: f64, x| m.max(x.abs()))
    }

    /// Writes `r,zeta,q,h,froude`, one row per cell.
    pub fn write_snapshot_csv<W: Write>(
        &self,
        out: &mut W,
        grid: &RadialGrid,
        params: &PhysicalParams,
    ) -> std::io::Result<()> {
        writeln!(out, "r,zeta,q,h,froude")?;
        let g = params.gravity();
        for (j, r) in grid.centers().iter().enumerate() {
            let p = self.point(j, params.rest_depth());
            let froude = p.q.abs() / (p.h * (g * p.h).sqrt());
            writeln!(
                out,
                "{:.16e},{:.16e},{:.16e},{:.16e},{:.16e}",
                r, self.zeta[j], p.q, p.h, froude
            )?;
        }
        Ok(())
    }
}

/// Discharge imposed at r = R.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WallBC {
    pub q_wall: f64,
}

/// Semi-discrete right-hand side together with the boundary data used.
#[derive(Debug, Clone)]
pub struct FluidRhs {
    pub dzeta: Vec<f64>,
    pub dq: Vec<f64>,
    pub wall: StatePoint,
    pub outer: StatePoint,
    /// Physical flux through the wall face (mass, momentum), per unit arc.
    pub wall_flux: [f64; 2],
    pub outer_flux: [f64; 2],
    pub min_margin: f64,
    pub min_depth: f64,
}

/// Checks every cell is wet and subsonic; returns (min margin, min depth).
pub fn check_admissible(state: &FluidState, params: &PhysicalParams) -> Result<(f64, f64)> {
    let g = params.gravity();
    let h0 = params.rest_depth();
    let mut min_margin = f64::INFINITY;
    let mut min_depth = f64::INFINITY;
    for j in 0..state.len() {
        let p = state.point(j, h0);
        let margin = subsonic_margin(p, g).map_err(|e| e.at_cell(j))?;
        if !(margin > 0.0) {
            return Err(Error::NotSubsonic {
                margin,
                cell: Some(j),
            });
        }
        min_margin = min_margin.min(margin);
        min_depth = min_depth.min(p.h);
    }
    Ok((min_margin, min_depth))
}

pub fn fluid_rhs(
    state: &FluidState,
    wall: WallBC,
    params: &PhysicalParams,
    grid: &RadialGrid,
) -> Result<FluidRhs> {
    let n = grid.len();
    if state.len() != n {
        return Err(Error::InvalidGrid(format!(
            "state has {} cells, grid has {n}",
            state.len()
        )));
    }
    let g = params.gravity();
    let h0 = params.rest_depth();
    let (min_margin, min_depth) = check_admissible(state, params)?;

    let wall_state = resolve_wall_state(state.point(0, h0), wall.q_wall, g)?;
    let outer_state = outer_boundary_state(state.point(n - 1, h0), g, h0)?;
    let wall_flux = physical_flux(wall_state, g);
    let outer_flux = physical_flux(outer_state, g);

    let face_flux = |f: usize| -> [f64; 2] {
        if f == 0 {
            wall_flux
        } else if f == n {
            outer_flux
        } else {
            // both neighbours were checked wet above
            numerical_flux(state.point(f - 1, h0), state.point(f, h0), g)
                .expect("admissible neighbours")
        }
    };
    let fluxes: Vec<[f64; 2]> = if n >= PARALLEL_CELLS {
        (0..=n).into_par_iter().map(face_flux).collect()
    } else {
        (0..=n).map(face_flux).collect()
    };

    let faces = grid.faces();
    let centers = grid.centers();
    let dr = grid.dr();
    let cell = |j: usize| -> (f64, f64) {
        let (rl, rr) = (faces[j], faces[j + 1]);
        let vol = centers[j] * dr;
        let h = h0 + state.zeta[j];
        let hydro = 0.5 * g * h * h;
        let dzeta = -(rr * fluxes[j + 1][0] - rl * fluxes[j][0]) / vol;
        // hoop term written against the same face radii so still water cancels exactly
        let dq = -(rr * (fluxes[j + 1][1] - hydro) - rl * (fluxes[j][1] - hydro)) / vol;
        (dzeta, dq)
    };
    let (dzeta, dq): (Vec<f64>, Vec<f64>) = if n >= PARALLEL_CELLS {
        (0..n).into_par_iter().map(cell).unzip()
    } else {
        (0..n).map(cell).unzip()
    };

    Ok(FluidRhs {
        dzeta,
        dq,
        wall: wall_state,
        outer: outer_state,
        wall_flux,
        outer_flux,
        min_margin,
        min_depth,
    })
}

/// Largest stable step: cfl · Δr / max_j max(|λ₋|, |λ₊|).
pub fn cfl_dt(
    state: &FluidState,
    grid: &RadialGrid,
    params: &PhysicalParams,
    cfl_number: f64,
) -> Result<f64> {
    if !(cfl_number > 0.0 && cfl_number <= 1.0) {
        return Err(Error::config(
            "time.cfl",
            format!("must lie in (0, 1], got {cfl_number}"),
        ));
    }
    check_admissible(state, params)?;
    let g = params.gravity();
    let h0 = params.rest_depth();
    let speed = (0..state.len())
        .map(|j| {
            let (lm, lp) = wave_speeds(state.point(j, h0), g);
            lm.abs().max(lp.abs())
        })
        .fold(0.0, f64::max);
    Ok(cfl_number * grid.dr() / speed)
}

/// Adds `dt · rhs` to `state`.
pub fn advance(state: &FluidState, rhs: &FluidRhs, dt: f64) -> FluidState {
    FluidState {
        zeta: state
            .zeta
            .iter()
            .zip(&rhs.dzeta)
            .map(|(u, d)| u + dt * d)
            .collect(),
        q: state
            .q
            .iter()
            .zip(&rhs.dq)
            .map(|(u, d)| u + dt * d)
            .collect(),
        t: state.t + dt,
    }
}

/// One forward-Euler finite-volume step.
pub fn step_fluid(
    state: &FluidState,
    dt: f64,
    wall: WallBC,
    params: &PhysicalParams,
    grid: &RadialGrid,
) -> Result<FluidState> {
    let rhs = fluid_rhs(state, wall, params, grid)?;
    Ok(advance(state, &rhs, dt))
}

/// Exterior water volume 2π Σ ζ_j r_j Δr.
pub fn exterior_volume(state: &FluidState, grid: &RadialGrid) -> f64 {
    2.0 * std::f64::consts::PI
        * state
            .zeta
            .iter()
            .enumerate()
            .map(|(j, z)| z * grid.cell_weight(j))
            .sum::<f64>()
}
