//! Physical constants, solid geometry and the radial grid.

use std::f64::consts::PI;
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::quadrature::CompositeRule;

/// Physical constants of the fluid and the floating body.
///
/// The buoyancy stiffness ρgπR² and the added-mass scale πρR⁴/8 are derived on
/// demand from the primitives, never stored.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhysicalParams {
    gravity: f64,
    density: f64,
    rest_depth: f64,
    solid_radius: f64,
    solid_mass: f64,
    atmospheric_pressure: f64,
}

impl PhysicalParams {
    pub fn new(
        gravity: f64,
        density: f64,
        rest_depth: f64,
        solid_radius: f64,
        solid_mass: f64,
        atmospheric_pressure: f64,
    ) -> Result<Self> {
        let positive = [
            ("g", gravity),
            ("rho", density),
            ("h0", rest_depth),
            ("R", solid_radius),
            ("m", solid_mass),
        ];
        for (field, value) in positive {
            // `!(v > 0)` also rejects NaN
            if !(value > 0.0) || !value.is_finite() {
                return Err(Error::NonPositiveParameter { field, value });
            }
        }
        if !(atmospheric_pressure >= 0.0) || !atmospheric_pressure.is_finite() {
            return Err(Error::NonPositiveParameter {
                field: "P_atm",
                value: atmospheric_pressure,
            });
        }
        Ok(PhysicalParams {
            gravity,
            density,
            rest_depth,
            solid_radius,
            solid_mass,
            atmospheric_pressure,
        })
    }

    pub fn gravity(&self) -> f64 {
        self.gravity
    }

    pub fn density(&self) -> f64 {
        self.density
    }

    pub fn rest_depth(&self) -> f64 {
        self.rest_depth
    }

    pub fn solid_radius(&self) -> f64 {
        self.solid_radius
    }

    pub fn solid_mass(&self) -> f64 {
        self.solid_mass
    }

    pub fn atmospheric_pressure(&self) -> f64 {
        self.atmospheric_pressure
    }

    /// ρgπR² (N/m).
    pub fn buoyancy_stiffness(&self) -> f64 {
        self.density * self.gravity * PI * self.solid_radius * self.solid_radius
    }

    /// πρR⁴/8 (kg·m).
    pub fn added_mass_scale(&self) -> f64 {
        PI * self.density * self.solid_radius.powi(4) / 8.0
    }

    /// Linear gravity-wave speed √(g h0) at rest.
    pub fn rest_celerity(&self) -> f64 {
        (self.gravity * self.rest_depth).sqrt()
    }
}

pub type ProfileFn = Arc<dyn Fn(f64) -> f64 + Send + Sync>;

/// Equilibrium fluid height under a profiled bottom, with its radial derivative.
#[derive(Clone)]
pub struct DraftProfile {
    name: String,
    height: ProfileFn,
    slope: ProfileFn,
}

impl DraftProfile {
    pub fn new(name: impl Into<String>, height: ProfileFn, slope: ProfileFn) -> Self {
        DraftProfile {
            name: name.into(),
            height,
            slope,
        }
    }

    pub fn constant(h: f64) -> Self {
        DraftProfile::new(
            format!("constant({h})"),
            Arc::new(move |_| h),
            Arc::new(|_| 0.0),
        )
    }

    /// h(r) = centre + (edge − centre)(r/R)².
    pub fn parabolic(centre: f64, edge: f64, radius: f64) -> Self {
        let k = (edge - centre) / (radius * radius);
        DraftProfile::new(
            format!("parabolic({centre},{edge})"),
            Arc::new(move |r| centre + k * r * r),
            Arc::new(move |r| 2.0 * k * r),
        )
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn height(&self, r: f64) -> f64 {
        (self.height)(r)
    }

    pub fn slope(&self, r: f64) -> f64 {
        (self.slope)(r)
    }
}

impl fmt::Debug for DraftProfile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("DraftProfile")
            .field("name", &self.name)
            .finish()
    }
}

/// Bottom geometry of the floating body at equilibrium.
#[derive(Debug, Clone)]
pub enum SolidShape {
    Flat {
        draft: f64,
    },
    Profiled {
        profile: DraftProfile,
        rule: CompositeRule,
        /// min over [0, R] of the equilibrium height, sampled at construction
        min_height: f64,
    },
}

impl SolidShape {
    pub fn flat(equilibrium_height: f64) -> Result<Self> {
        if !(equilibrium_height > 0.0) || !equilibrium_height.is_finite() {
            return Err(Error::NonPositiveParameter {
                field: "h_w_eq",
                value: equilibrium_height,
            });
        }
        Ok(SolidShape::Flat {
            draft: equilibrium_height,
        })
    }

    pub fn profiled(profile: DraftProfile, radius: f64, rule: CompositeRule) -> Result<Self> {
        let mut samples: Vec<f64> = (0..=1024).map(|k| radius * k as f64 / 1024.0).collect();
        samples.extend(rule.abscissae(0.0, radius));
        let min_height = samples
            .iter()
            .map(|&r| profile.height(r))
            .fold(f64::INFINITY, f64::min);
        if !(min_height > 0.0) || !min_height.is_finite() {
            return Err(Error::NonPositiveParameter {
                field: "h_w_eq",
                value: min_height,
            });
        }
        Ok(SolidShape::Profiled {
            profile,
            rule,
            min_height,
        })
    }

    /// Equilibrium height h_w,eq(r).
    pub fn equilibrium_height(&self, r: f64) -> f64 {
        match self {
            SolidShape::Flat { draft } => *draft,
            SolidShape::Profiled { profile, .. } => profile.height(r),
        }
    }

    pub fn equilibrium_slope(&self, r: f64) -> f64 {
        match self {
            SolidShape::Flat { .. } => 0.0,
            SolidShape::Profiled { profile, .. } => profile.slope(r),
        }
    }

    pub fn min_equilibrium_height(&self) -> f64 {
        match self {
            SolidShape::Flat { draft } => *draft,
            SolidShape::Profiled { min_height, .. } => *min_height,
        }
    }

    /// h_w(δ, r) = h_w,eq(r) + δ.
    pub fn height(&self, delta: f64, r: f64) -> f64 {
        self.equilibrium_height(r) + delta
    }

    /// Rejects displacements that bring the solid onto the bottom.
    pub fn check_clearance(&self, delta: f64) -> Result<()> {
        let h_w = self.min_equilibrium_height() + delta;
        if h_w > 0.0 && delta.is_finite() {
            Ok(())
        } else {
            Err(Error::BottomContact { delta, h_w })
        }
    }

    pub fn rule(&self) -> Option<&CompositeRule> {
        match self {
            SolidShape::Flat { .. } => None,
            SolidShape::Profiled { rule, .. } => Some(rule),
        }
    }
}

/// Uniform finite-volume partition of (R, r_max).
#[derive(Debug, Clone, PartialEq)]
pub struct RadialGrid {
    faces: Vec<f64>,
    centers: Vec<f64>,
    dr: f64,
}

impl RadialGrid {
    pub fn new(inner_radius: f64, outer_radius: f64, cells: usize) -> Result<Self> {
        if !(inner_radius > 0.0) || !inner_radius.is_finite() {
            return Err(Error::InvalidGrid(format!(
                "inner radius must be positive, got {inner_radius}"
            )));
        }
        if !(outer_radius > inner_radius) || !outer_radius.is_finite() {
            return Err(Error::InvalidGrid(format!(
                "outer radius {outer_radius} must exceed inner radius {inner_radius}"
            )));
        }
        if cells < 4 {
            return Err(Error::InvalidGrid(format!(
                "need at least 4 cells, got {cells}"
            )));
        }
        let length = outer_radius - inner_radius;
        let dr = length / cells as f64;
        let mut faces: Vec<f64> = (0..=cells)
            .map(|j| inner_radius + length * (j as f64 / cells as f64))
            .collect();
        faces[0] = inner_radius;
        faces[cells] = outer_radius;
        let centers = (0..cells)
            .map(|j| inner_radius + (j as f64 + 0.5) * dr)
            .collect();
        Ok(RadialGrid { faces, centers, dr })
    }

    pub fn len(&self) -> usize {
        self.centers.len()
    }

    pub fn is_empty(&self) -> bool {
        self.centers.is_empty()
    }

    pub fn dr(&self) -> f64 {
        self.dr
    }

    pub fn inner_radius(&self) -> f64 {
        self.faces[0]
    }

    pub fn outer_radius(&self) -> f64 {
        self.faces[self.faces.len() - 1]
    }

    pub fn centers(&self) -> &[f64] {
        &self.centers
    }

    pub fn faces(&self) -> &[f64] {
        &self.faces
    }

    /// Axisymmetric cell measure r_j Δr.
    pub fn cell_weight(&self, j: usize) -> f64 {
        self.centers[j] * self.dr
    }
}
