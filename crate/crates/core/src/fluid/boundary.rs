//! Boundary states from Riemann invariants q/h ± 2√(gh).
//!
//! At the wall only the λ₋ family leaves the domain, so one scalar (the
//! discharge) is imposed and the outgoing invariant fixes the depth. At the
//! truncated outer radius the incoming invariant is pinned to its rest value.

use crate::error::{Error, Result};
use crate::hyperbolic::{ensure_subsonic, StatePoint};

/// Depth at which |q|/h equals √(gh) for a given discharge.
fn critical_depth(q: f64, g: f64) -> f64 {
    (q * q / g).cbrt()
}

/// Solves q_wall/h − 2√(gh) = q_int/h_int − 2√(g h_int) for the subsonic
/// root h and returns (h, q_wall).
pub fn resolve_wall_state(interior: StatePoint, q_wall: f64, g: f64) -> Result<StatePoint> {
    ensure_subsonic(interior, g)?;
    if !q_wall.is_finite() {
        return Err(Error::NoWallSolution {
            face: "wall",
            reason: format!("non-finite discharge {q_wall}"),
            lo: f64::NAN,
            hi: f64::NAN,
        });
    }
    let invariant = interior.velocity() - 2.0 * (g * interior.h).sqrt();
    if q_wall == 0.0 {
        if interior.q == 0.0 {
            return Ok(StatePoint::new(interior.h, 0.0));
        }
        let c = -0.5 * invariant;
        return Ok(StatePoint::new(c * c / g, 0.0));
    }

    let residual = |h: f64| q_wall / h - 2.0 * (g * h).sqrt() - invariant;
    let slope = |h: f64| -q_wall / (h * h) - (g / h).sqrt();

    // the residual decreases on the subsonic branch h > h_c
    let mut lo = critical_depth(q_wall, g);
    if residual(lo) <= 0.0 {
        return Err(Error::NoWallSolution {
            face: "wall",
            reason: format!(
                "outgoing invariant {invariant:.6e} admits no subsonic depth for q_wall = {q_wall:.6e}"
            ),
            lo,
            hi: f64::INFINITY,
        });
    }
    let mut hi = interior.h.max(lo) * 2.0;
    let mut expansions = 0;
    while residual(hi) > 0.0 {
        lo = hi;
        hi *= 2.0;
        expansions += 1;
        if expansions > 200 {
            return Err(Error::NoWallSolution {
                face: "wall",
                reason: "failed to bracket the wall depth".into(),
                lo,
                hi,
            });
        }
    }

    let scale = invariant.abs() + 2.0 * (g * interior.h).sqrt();
    let mut h = interior.h.clamp(lo, hi);
    for _ in 0..200 {
        let f = residual(h);
        if f.abs() <= 1e-15 * scale {
            break;
        }
        if f > 0.0 {
            lo = h;
        } else {
            hi = h;
        }
        let newton = h - f / slope(h);
        let next = if newton > lo && newton < hi {
            newton
        } else {
            0.5 * (lo + hi)
        };
        if (next - h).abs() <= 1e-16 * h {
            h = next;
            break;
        }
        h = next;
    }
    let f = residual(h);
    if f.abs() > 1e-12 * scale {
        return Err(Error::NoWallSolution {
            face: "wall",
            reason: format!("depth iteration stalled with residual {f:.3e}"),
            lo,
            hi,
        });
    }
    let state = StatePoint::new(h, q_wall);
    ensure_subsonic(state, g).map_err(|_| Error::NoWallSolution {
        face: "wall",
        reason: "wall state is not subsonic".into(),
        lo,
        hi,
    })?;
    Ok(state)
}

/// Ghost state at r_max: incoming invariant at rest, outgoing extrapolated.
pub fn outer_boundary_state(interior: StatePoint, g: f64, rest_depth: f64) -> Result<StatePoint> {
    ensure_subsonic(interior, g)?;
    let c0 = (g * rest_depth).sqrt();
    let outgoing = interior.velocity() + 2.0 * (g * interior.h).sqrt();
    let incoming = -2.0 * c0;
    if outgoing == -incoming {
        return Ok(StatePoint::new(rest_depth, 0.0));
    }
    let u = 0.5 * (outgoing + incoming);
    let c = 0.25 * (outgoing - incoming);
    if !(c > 0.0) {
        return Err(Error::NoWallSolution {
            face: "outer",
            reason: format!("invariants {outgoing:.6e}/{incoming:.6e} give no positive celerity"),
            lo: 0.0,
            hi: f64::INFINITY,
        });
    }
    let h = c * c / g;
    let state = StatePoint::new(h, u * h);
    ensure_subsonic(state, g).map_err(|_| Error::NoWallSolution {
        face: "outer",
        reason: "outer ghost state is not subsonic".into(),
        lo: 0.0,
        hi: f64::INFINITY,
    })?;
    Ok(state)
}
