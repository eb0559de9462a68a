//! Energy, mass and boundary-flux bookkeeping for coupled runs.
//!
//! E_sw counts the exterior water (midpoint rule over cells, the solver's own
//! quadrature) plus the water under the solid, whose kinetic part is ½m_a w²
//! and whose potential part relative to equilibrium is ½𝔠δ² − mgδ. With
//! E_sol = ½mw² + mgδ the total is E_ext + ½(m + m_a)w² + ½𝔠δ².

use std::f64::consts::PI;

use serde::Serialize;

use crate::error::Result;
use crate::fluid::FluidState;
use crate::hyperbolic::StatePoint;
use crate::params::{PhysicalParams, RadialGrid, SolidShape};
use crate::solid::{added_mass, SolidState};

/// 2π Σ_j [(ρ/2)gζ_j² + (ρ/2)q_j²/h_j] r_j Δr.
pub fn fluid_energy(state: &FluidState, params: &PhysicalParams, grid: &RadialGrid) -> Result<f64> {
    let (rho, g, h0) = (params.density(), params.gravity(), params.rest_depth());
    let mut sum = 0.0;
    for j in 0..state.len() {
        let p = state.point(j, h0);
        p.ensure_wet().map_err(|e| e.at_cell(j))?;
        let z = state.zeta[j];
        sum += (0.5 * rho * g * z * z + 0.5 * rho * p.q * p.q / p.h) * grid.cell_weight(j);
    }
    Ok(2.0 * PI * sum)
}

/// Energy of the water under the solid, relative to equilibrium.
pub fn interior_energy(s: SolidState, params: &PhysicalParams, shape: &SolidShape) -> Result<f64> {
    let m_a = added_mass(s.delta, shape, params)?;
    let c = params.buoyancy_stiffness();
    let weight = params.solid_mass() * params.gravity();
    Ok(0.5 * m_a * s.w * s.w + 0.5 * c * s.delta * s.delta - weight * s.delta)
}

/// ½mw² + mgδ.
pub fn solid_energy(s: SolidState, params: &PhysicalParams) -> f64 {
    let m = params.solid_mass();
    0.5 * m * s.w * s.w + m * params.gravity() * s.delta
}

/// Power leaving through a circle of radius r: 2πr ρ(q³/(2h²) + gζq).
pub fn radial_energy_flux(p: StatePoint, r: f64, params: &PhysicalParams) -> Result<f64> {
    p.ensure_wet()?;
    let zeta = p.zeta(params.rest_depth());
    Ok(2.0
        * PI
        * r
        * params.density()
        * (p.q * p.q * p.q / (2.0 * p.h * p.h) + params.gravity() * zeta * p.q))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct WallEnergyFlux {
    /// Fluid flux at r = R (positive outward).
    pub fluid: f64,
    /// 2πR (P_i − P_atm) q_i at the wall.
    pub pressure_work: f64,
}

pub fn energy_flux_at_wall(
    wall_state: StatePoint,
    interior_pressure: f64,
    params: &PhysicalParams,
) -> Result<WallEnergyFlux> {
    let radius = params.solid_radius();
    Ok(WallEnergyFlux {
        fluid: radial_energy_flux(wall_state, radius, params)?,
        pressure_work: 2.0 * PI * radius * interior_pressure * wall_state.q,
    })
}

/// One row of a trajectory.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DiagnosticsRecord {
    pub t: f64,
    pub delta: f64,
    pub w: f64,
    pub zeta_r: f64,
    pub q_wall: f64,
    pub e_sw: f64,
    pub e_sol: f64,
    pub e_tot: f64,
    pub boundary_energy_flux: f64,
    pub p_cor: f64,
    pub mass_total: f64,
    pub subsonic_margin_min: f64,
    pub min_h: f64,
    /// Volume that has left through r_max since t = 0.
    pub outer_mass_out: f64,
    /// Energy that has left through r_max since t = 0.
    pub outer_energy_out: f64,
}

/// 2πΣζ_j r_j Δr + πR²δ.
pub fn total_mass(
    state: &FluidState,
    s: SolidState,
    params: &PhysicalParams,
    grid: &RadialGrid,
) -> f64 {
    let r = params.solid_radius();
    crate::fluid::exterior_volume(state, grid) + PI * r * r * s.delta
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ConservationReport {
    /// max_t |E_tot(t) − E_tot(0) + energy out through r_max|.
    pub max_energy_drift: f64,
    /// Largest per-step |Δmass + Δ(volume out through r_max)|.
    pub mass_residual: f64,
    pub steps: usize,
}

pub fn audit_run(records: &[DiagnosticsRecord]) -> ConservationReport {
    let Some(first) = records.first() else {
        return ConservationReport {
            max_energy_drift: 0.0,
            mass_residual: 0.0,
            steps: 0,
        };
    };
    let max_energy_drift = records
        .iter()
        .map(|r| (r.e_tot - first.e_tot + r.outer_energy_out).abs())
        .fold(0.0, f64::max);
    let mass_residual = records
        .windows(2)
        .map(|w| {
            ((w[1].mass_total - w[0].mass_total) + (w[1].outer_mass_out - w[0].outer_mass_out))
                .abs()
        })
        .fold(0.0, f64::max);
    ConservationReport {
        max_energy_drift,
        mass_residual,
        steps: records.len().saturating_sub(1),
    }
}

/// log2 of successive ratios, for errors from runs refined by 2 each time.
pub fn observed_orders(errors: &[f64]) -> Vec<f64> {
    errors.windows(2).map(|e| (e[0] / e[1]).log2()).collect()
}
