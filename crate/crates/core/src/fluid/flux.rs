use crate::error::{Error, Result};
use crate::hyperbolic::{wave_speeds, StatePoint};

/// (q, q²/h + g h²/2).
pub fn physical_flux(p: StatePoint, g: f64) -> [f64; 2] {
    [p.q, p.q * p.q / p.h + 0.5 * g * p.h * p.h]
}

/// HLL flux with Einfeldt-type speed bounds built from the Roe average.
pub fn numerical_flux(left: StatePoint, right: StatePoint, g: f64) -> Result<[f64; 2]> {
    left.ensure_wet()?;
    right.ensure_wet()?;
    let fl = physical_flux(left, g);
    if left == right {
        return Ok(fl);
    }
    let fr = physical_flux(right, g);

    let (sl_l, _) = wave_speeds(left, g);
    let (_, sr_r) = wave_speeds(right, g);
    let (sql, sqr) = (left.h.sqrt(), right.h.sqrt());
    let u_roe = (sql * left.velocity() + sqr * right.velocity()) / (sql + sqr);
    let c_roe = (0.5 * g * (left.h + right.h)).sqrt();
    let sl = sl_l.min(u_roe - c_roe);
    let sr = sr_r.max(u_roe + c_roe);

    if sl >= 0.0 {
        return Ok(fl);
    }
    if sr <= 0.0 {
        return Ok(fr);
    }
    let ul = [left.h, left.q];
    let ur = [right.h, right.q];
    let mut out = [0.0; 2];
    for k in 0..2 {
        out[k] = (sr * fl[k] - sl * fr[k] + sl * sr * (ur[k] - ul[k])) / (sr - sl);
    }
    Ok(out)
}

/// Pointwise geometric terms of the quasilinear form, (−q/r, −q²/(rh)),
/// i.e. −B(u, r)u.
pub fn geometric_source(p: StatePoint, r: f64) -> Result<[f64; 2]> {
    if !(r > 0.0) {
        return Err(Error::NonPositiveRadius { r });
    }
    p.ensure_wet()?;
    Ok([-p.q / r, -p.q * p.q / (r * p.h)])
}
