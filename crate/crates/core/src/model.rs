use crate::error::Result;
use crate::params::{PhysicalParams, RadialGrid, SolidShape};

/// Everything a coupled run needs besides its state.
#[derive(Debug, Clone)]
pub struct Model {
    pub params: PhysicalParams,
    pub shape: SolidShape,
    pub grid: RadialGrid,
    /// Include the P_cor force in the heave equation.
    pub pressure_corrector: bool,
}

impl Model {
    pub fn new(params: PhysicalParams, shape: SolidShape, grid: RadialGrid) -> Result<Self> {
        if (grid.inner_radius() - params.solid_radius()).abs() > 1e-12 * params.solid_radius() {
            return Err(crate::Error::InvalidGrid(format!(
                "grid starts at {} but the solid radius is {}",
                grid.inner_radius(),
                params.solid_radius()
            )));
        }
        Ok(Model {
            params,
            shape,
            grid,
            pressure_corrector: true,
        })
    }

    pub fn without_corrector(mut self) -> Self {
        self.pressure_corrector = false;
        self
    }

    /// Discharge imposed on the fluid by a solid moving at `w`.
    pub fn wall_discharge(&self, w: f64) -> f64 {
        crate::solid::interior_discharge(self.params.solid_radius(), w)
    }
}
