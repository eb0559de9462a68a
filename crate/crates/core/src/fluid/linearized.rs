//! Frozen-coefficient linear system ∂t u + A(ū)∂r u + B(ū, r)u = f with the
//! wall condition e₂·u = g_b, discretized by characteristic upwinding.
//!
//! The wall value of ζ comes from carrying the λ₋ characteristic variable of
//! the first cell to the wall; at r_max the incoming variable is zero.

use crate::error::{Error, Result};
use crate::hyperbolic::{eigen, source_matrix, EigenData, Mat2};
use crate::params::{PhysicalParams, RadialGrid};

use super::FluidState;

#[derive(Debug, Clone)]
pub struct LinearRhs {
    pub dzeta: Vec<f64>,
    pub dq: Vec<f64>,
    /// (ζ, q) at r = R implied by the boundary closure.
    pub wall: [f64; 2],
    pub outer: [f64; 2],
}

fn frozen_eigen(frozen: &FluidState, params: &PhysicalParams) -> Result<Vec<EigenData>> {
    let h0 = params.rest_depth();
    let g = params.gravity();
    (0..frozen.len())
        .map(|j| eigen(frozen.point(j, h0), g).map_err(|e| e.at_cell(j)))
        .collect()
}

pub fn linear_rhs(
    frozen: &FluidState,
    state: &FluidState,
    forcing: Option<&[[f64; 2]]>,
    wall_discharge: f64,
    params: &PhysicalParams,
    grid: &RadialGrid,
) -> Result<LinearRhs> {
    let n = grid.len();
    if frozen.len() != n || state.len() != n {
        return Err(Error::InvalidGrid(format!(
            "frozen/state sizes {}/{} do not match grid {n}",
            frozen.len(),
            state.len()
        )));
    }
    let h0 = params.rest_depth();
    let eig = frozen_eigen(frozen, params)?;
    let u = |j: usize| [state.zeta[j], state.q[j]];

    // λ₋ left eigenvector is (−λ₊, 1): −λ₊ζ_b + g_b = −λ₊ζ₁ + q₁
    let first = &eig[0];
    let zeta_wall = state.zeta[0] + (wall_discharge - state.q[0]) / first.lambda_plus;
    let wall = [zeta_wall, wall_discharge];

    // λ₊ variable (−λ₋, 1) extrapolated, λ₋ variable (−λ₊, 1) set to zero
    let last = &eig[n - 1];
    let zeta_out = (state.q[n - 1] - last.lambda_minus * state.zeta[n - 1])
        / (last.lambda_plus - last.lambda_minus);
    let outer = [zeta_out, last.lambda_plus * zeta_out];

    let dr = grid.dr();
    let mut dzeta = Vec::with_capacity(n);
    let mut dq = Vec::with_capacity(n);
    for j in 0..n {
        let (a_plus, a_minus): (Mat2, Mat2) = eig[j].split();
        let left = if j == 0 { wall } else { u(j - 1) };
        let right = if j + 1 == n { outer } else { u(j + 1) };
        let c = u(j);
        let back = a_plus.apply([c[0] - left[0], c[1] - left[1]]);
        let fwd = a_minus.apply([right[0] - c[0], right[1] - c[1]]);
        let b = source_matrix(frozen.point(j, h0), grid.centers()[j]).map_err(|e| e.at_cell(j))?;
        let bu = b.apply(c);
        let f = forcing.map(|f| f[j]).unwrap_or([0.0, 0.0]);
        dzeta.push(-(back[0] + fwd[0]) / dr - bu[0] + f[0]);
        dq.push(-(back[1] + fwd[1]) / dr - bu[1] + f[1]);
    }
    Ok(LinearRhs {
        dzeta,
        dq,
        wall,
        outer,
    })
}

/// One explicit upwind step of the frozen-coefficient system.
pub fn step_linearized(
    frozen: &FluidState,
    state: &FluidState,
    forcing: Option<&[[f64; 2]]>,
    wall_discharge: f64,
    dt: f64,
    params: &PhysicalParams,
    grid: &RadialGrid,
) -> Result<FluidState> {
    let rhs = linear_rhs(frozen, state, forcing, wall_discharge, params, grid)?;
    Ok(FluidState {
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
    })
}
