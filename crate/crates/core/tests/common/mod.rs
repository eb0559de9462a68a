#![allow(dead_code)]

use floatswe::params::{DraftProfile, PhysicalParams, RadialGrid, SolidShape};
use floatswe::quadrature::CompositeRule;
use floatswe::Model;

/// g = 9.81, ρ = 1000, h0 = 1, R = 1, m = 500.
pub fn reference_params() -> PhysicalParams {
    PhysicalParams::new(9.81, 1000.0, 1.0, 1.0, 500.0, 0.0).unwrap()
}

/// Flat bottom, h_w,eq = 0.5.
pub fn reference_model(cells: usize, r_max: f64) -> Model {
    let grid = RadialGrid::new(1.0, r_max, cells).unwrap();
    Model::new(reference_params(), SolidShape::flat(0.5).unwrap(), grid).unwrap()
}

pub fn constant_profile(draft: f64) -> SolidShape {
    SolidShape::profiled(
        DraftProfile::constant(draft),
        1.0,
        CompositeRule::new(32, 8),
    )
    .unwrap()
}

pub fn bowl() -> SolidShape {
    SolidShape::profiled(
        DraftProfile::parabolic(0.3, 0.5, 1.0),
        1.0,
        CompositeRule::new(32, 8),
    )
    .unwrap()
}

pub const REFERENCE_TOML: &str = r#"
[params]
g = 9.81
rho = 1000.0
h0 = 1.0
R = 1.0
m = 500.0

[shape]
kind = "flat"
draft = 0.5
"#;
