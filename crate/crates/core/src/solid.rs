//! Heave dynamics of the floating body and the interior flow under it.
//!
//! Under the solid the depth h_w(δ, r) = h_w,eq(r) + δ is fixed by the
//! displacement, the discharge is q_i = −(r/2)w, and the interior pressure
//! splits as P_I (quadratic in w) + P_II (linear in ẇ) + P_III (constant).

use std::f64::consts::PI;
use std::io::Write;

use crate::error::{Error, Result};
use crate::params::{PhysicalParams, SolidShape};

/// Displacement from equilibrium and its rate.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct SolidState {
    pub delta: f64,
    pub w: f64,
}

impl SolidState {
    pub fn new(delta: f64, w: f64) -> Self {
        SolidState { delta, w }
    }
}

/// Force split on the solid bottom, relative to P_atm.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FluidForceBreakdown {
    pub f_one: f64,
    pub f_two: f64,
    pub f_three: f64,
    pub p_cor: f64,
    pub added_mass: f64,
    pub beta: f64,
}

impl FluidForceBreakdown {
    pub fn total(&self) -> f64 {
        self.f_one + self.f_two + self.f_three
    }
}

/// m_a(δ) = (ρπ/2)∫₀^R r³/h_w dr.
pub fn added_mass(delta: f64, shape: &SolidShape, params: &PhysicalParams) -> Result<f64> {
    shape.check_clearance(delta)?;
    let b = params.added_mass_scale();
    Ok(match shape {
        SolidShape::Flat { draft } => b / (draft + delta),
        SolidShape::Profiled { rule, .. } => {
            let rho = params.density();
            0.5 * rho
                * PI
                * rule.integrate(0.0, params.solid_radius(), |r| {
                    r * r * r / shape.height(delta, r)
                })
        }
    })
}

/// β(δ) = 𝔟/(2h_w(R)²) + (πρ/8)∫₀^R r⁴ ∂_r h_w / h_w³ dr.
pub fn beta_coeff(delta: f64, shape: &SolidShape, params: &PhysicalParams) -> Result<f64> {
    shape.check_clearance(delta)?;
    let b = params.added_mass_scale();
    let radius = params.solid_radius();
    let h_edge = shape.height(delta, radius);
    Ok(match shape {
        SolidShape::Flat { .. } => b / (2.0 * h_edge * h_edge),
        SolidShape::Profiled { rule, .. } => {
            let rho = params.density();
            let tail = rule.integrate(0.0, radius, |r| {
                let h = shape.height(delta, r);
                r.powi(4) * shape.equilibrium_slope(r) / (h * h * h)
            });
            b / (2.0 * h_edge * h_edge) + PI * rho / 8.0 * tail
        }
    })
}

/// q_i(r) = −(r/2)w.
pub fn interior_discharge(r: f64, w: f64) -> f64 {
    -0.5 * r * w
}

/// (ρ/2) q_i(R)² (1/h_e² − 1/h_w²).
pub fn pressure_cor(q_i_edge: f64, h_e_edge: f64, h_w_edge: f64, rho: f64) -> Result<f64> {
    for h in [h_e_edge, h_w_edge] {
        if !(h > 0.0) {
            return Err(Error::DryState { h, cell: None });
        }
    }
    Ok(0.5
        * rho
        * q_i_edge
        * q_i_edge
        * (1.0 / (h_e_edge * h_e_edge) - 1.0 / (h_w_edge * h_w_edge)))
}

fn exterior_depth(zeta_e_edge: f64, params: &PhysicalParams) -> Result<f64> {
    let h = params.rest_depth() + zeta_e_edge;
    if h > 0.0 {
        Ok(h)
    } else {
        Err(Error::DryState { h, cell: None })
    }
}

/// δ̈ from (m+m_a)δ̈ = −𝔠δ + 𝔠ζ_e(R) + (𝔟/h_e(R)² + β)δ̇².
pub fn solid_rhs(
    s: SolidState,
    zeta_e_edge: f64,
    params: &PhysicalParams,
    shape: &SolidShape,
) -> Result<f64> {
    solid_acceleration(s, zeta_e_edge, params, shape, true)
}

/// As [`solid_rhs`]; with `pressure_corrector = false` the P_cor force is
/// dropped, which turns 𝔟/h_e(R)² into 𝔟/h_w(R)².
pub fn solid_acceleration(
    s: SolidState,
    zeta_e_edge: f64,
    params: &PhysicalParams,
    shape: &SolidShape,
    pressure_corrector: bool,
) -> Result<f64> {
    let m_a = added_mass(s.delta, shape, params)?;
    let beta = beta_coeff(s.delta, shape, params)?;
    let h_e = exterior_depth(zeta_e_edge, params)?;
    let b = params.added_mass_scale();
    let c = params.buoyancy_stiffness();
    let h_ref = if pressure_corrector {
        h_e
    } else {
        shape.height(s.delta, params.solid_radius())
    };
    let quad = b / (h_ref * h_ref) + beta;
    Ok((-c * s.delta + c * zeta_e_edge + quad * s.w * s.w) / (params.solid_mass() + m_a))
}

/// Interior pressure field for a given solid state and acceleration.
#[derive(Debug, Clone)]
pub struct InteriorPressure {
    state: SolidState,
    accel: f64,
    p_three: f64,
    forces: FluidForceBreakdown,
    shape: SolidShape,
    rho: f64,
    g: f64,
    radius: f64,
}

/// ∂_r P_I = −(ρ/h_w)[∂_r(q²/h_w) + q²/(r h_w) + g h_w ∂_r h_w] with q = −(r/2)w,
/// returned with the sign flipped so P_I(r) = ∫_r^R of it.
fn p_one_density(shape: &SolidShape, rho: f64, g: f64, delta: f64, w: f64, s: f64) -> f64 {
    let h = shape.height(delta, s);
    let dh = shape.equilibrium_slope(s);
    rho * (w * w * (0.75 * s / (h * h) - 0.25 * s * s * dh / (h * h * h)) + g * dh)
}

impl InteriorPressure {
    /// P_I(r) − P_atm.
    pub fn p_one(&self, r: f64) -> f64 {
        let w = self.state.w;
        let (radius, rho) = (self.radius, self.rho);
        match &self.shape {
            SolidShape::Flat { draft } => {
                let h = draft + self.state.delta;
                3.0 * rho * w * w * (radius * radius - r * r) / (8.0 * h * h)
            }
            shape @ SolidShape::Profiled { rule, .. } => rule.integrate(r, radius, |s| {
                p_one_density(shape, rho, self.g, self.state.delta, w, s)
            }),
        }
    }

    /// P_II(r) = −∫_r^R ρẇ s/(2h_w(s)) ds.
    pub fn p_two(&self, r: f64) -> f64 {
        let (radius, rho) = (self.radius, self.rho);
        match &self.shape {
            SolidShape::Flat { draft } => {
                let h = draft + self.state.delta;
                -rho * self.accel * (radius * radius - r * r) / (4.0 * h)
            }
            shape @ SolidShape::Profiled { rule, .. } => {
                -rho * self.accel
                    * rule.integrate(r, radius, |s| 0.5 * s / shape.height(self.state.delta, s))
            }
        }
    }

    /// P_III − P_atm, constant over the disk.
    pub fn p_three(&self) -> f64 {
        self.p_three
    }

    pub fn total(&self, r: f64) -> f64 {
        self.p_one(r) + self.p_two(r) + self.p_three
    }

    pub fn forces(&self) -> FluidForceBreakdown {
        self.forces
    }

    /// Writes `r,q_i,P_I,P_II,P_III` on `points` equispaced radii in [0, R].
    pub fn write_csv<W: Write>(&self, out: &mut W, points: usize) -> std::io::Result<()> {
        writeln!(out, "r,q_i,P_I,P_II,P_III")?;
        let n = points.max(2);
        for k in 0..n {
            let r = self.radius * k as f64 / (n - 1) as f64;
            writeln!(
                out,
                "{:.16e},{:.16e},{:.16e},{:.16e},{:.16e}",
                r,
                interior_discharge(r, self.state.w),
                self.p_one(r),
                self.p_two(r),
                self.p_three
            )?;
        }
        Ok(())
    }
}

/// Builds the three interior pressures and their forces. `accel` is δ̈ and
/// is taken as given, not recomputed from the ODE.
pub fn interior_pressure_profiles(
    s: SolidState,
    accel: f64,
    zeta_e_edge: f64,
    params: &PhysicalParams,
    shape: &SolidShape,
    pressure_corrector: bool,
) -> Result<InteriorPressure> {
    let m_a = added_mass(s.delta, shape, params)?;
    let beta = beta_coeff(s.delta, shape, params)?;
    let h_e = exterior_depth(zeta_e_edge, params)?;
    let (rho, g, radius, h0) = (
        params.density(),
        params.gravity(),
        params.solid_radius(),
        params.rest_depth(),
    );
    let h_w_edge = shape.height(s.delta, radius);
    let p_cor = if pressure_corrector {
        pressure_cor(interior_discharge(radius, s.w), h_e, h_w_edge, rho)?
    } else {
        0.0
    };
    let zeta_i_edge = h_w_edge - h0;
    let p_three = rho * g * (zeta_e_edge - zeta_i_edge) + p_cor;
    let area = PI * radius * radius;

    // 2π∫₀^R r∫_r^R f ds dr = π∫₀^R s² f(s) ds
    let f_one = match shape {
        SolidShape::Flat { .. } => {
            3.0 * PI * rho * radius.powi(4) * s.w * s.w / (16.0 * h_w_edge * h_w_edge)
        }
        SolidShape::Profiled { rule, .. } => {
            PI * rule.integrate(0.0, radius, |r| {
                r * r * p_one_density(shape, rho, g, s.delta, s.w, r)
            })
        }
    };
    let forces = FluidForceBreakdown {
        f_one,
        f_two: -m_a * accel,
        f_three: area * p_three,
        p_cor,
        added_mass: m_a,
        beta,
    };
    Ok(InteriorPressure {
        state: s,
        accel,
        p_three,
        forces,
        shape: shape.clone(),
        rho,
        g,
        radius,
    })
}

/// Weight of the solid implied by hydrostatic equilibrium,
/// 2πρg∫₀^R r (h0 − h_w,eq(r)) dr.
pub fn equilibrium_weight(params: &PhysicalParams, shape: &SolidShape) -> f64 {
    let (rho, g, radius, h0) = (
        params.density(),
        params.gravity(),
        params.solid_radius(),
        params.rest_depth(),
    );
    match shape {
        SolidShape::Flat { draft } => PI * radius * radius * rho * g * (h0 - draft),
        SolidShape::Profiled { rule, .. } => {
            2.0 * PI
                * rho
                * g
                * rule.integrate(0.0, radius, |r| r * (h0 - shape.equilibrium_height(r)))
        }
    }
}
