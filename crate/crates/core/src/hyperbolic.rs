//! Algebra of the quasilinear radial system ∂t u + A(u)∂r u + B(u,r)u = 0
//! with u = (ζ, q): Jacobian, source matrix, characteristic decomposition and
//! the projector-based symmetrizer used to certify a maximally dissipative
//! wall condition.
//!
//! Everything is closed-form 2×2 arithmetic.

use std::ops::{Add, Mul, Sub};

use crate::error::{Error, Result};

/// A wet point (h, q) of the exterior flow.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StatePoint {
    pub h: f64,
    pub q: f64,
}

impl StatePoint {
    pub fn new(h: f64, q: f64) -> Self {
        StatePoint { h, q }
    }

    pub fn from_elevation(zeta: f64, q: f64, rest_depth: f64) -> Self {
        StatePoint {
            h: rest_depth + zeta,
            q,
        }
    }

    pub fn zeta(&self, rest_depth: f64) -> f64 {
        self.h - rest_depth
    }

    pub fn velocity(&self) -> f64 {
        self.q / self.h
    }

    pub fn ensure_wet(&self) -> Result<()> {
        if self.h > 0.0 && self.h.is_finite() && self.q.is_finite() {
            Ok(())
        } else {
            Err(Error::DryState {
                h: self.h,
                cell: None,
            })
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Mat2(pub [[f64; 2]; 2]);

impl Mat2 {
    pub const IDENTITY: Mat2 = Mat2([[1.0, 0.0], [0.0, 1.0]]);
    pub const ZERO: Mat2 = Mat2([[0.0, 0.0], [0.0, 0.0]]);

    pub fn transpose(&self) -> Mat2 {
        let a = self.0;
        Mat2([[a[0][0], a[1][0]], [a[0][1], a[1][1]]])
    }

    pub fn apply(&self, v: [f64; 2]) -> [f64; 2] {
        let a = self.0;
        [
            a[0][0] * v[0] + a[0][1] * v[1],
            a[1][0] * v[0] + a[1][1] * v[1],
        ]
    }

    pub fn scale(&self, s: f64) -> Mat2 {
        let a = self.0;
        Mat2([[s * a[0][0], s * a[0][1]], [s * a[1][0], s * a[1][1]]])
    }

    pub fn trace(&self) -> f64 {
        self.0[0][0] + self.0[1][1]
    }

    pub fn det(&self) -> f64 {
        self.0[0][0] * self.0[1][1] - self.0[0][1] * self.0[1][0]
    }

    /// Largest absolute entry.
    pub fn max_abs(&self) -> f64 {
        self.0
            .iter()
            .flatten()
            .fold(0.0, |m: f64, x| m.max(x.abs()))
    }

    /// Eigenvalues of the symmetric part, ascending.
    pub fn symmetric_eigenvalues(&self) -> [f64; 2] {
        let a = self.0[0][0];
        let d = self.0[1][1];
        let b = 0.5 * (self.0[0][1] + self.0[1][0]);
        let mean = 0.5 * (a + d);
        let rad = (0.25 * (a - d) * (a - d) + b * b).sqrt();
        [mean - rad, mean + rad]
    }

    pub fn quadratic_form(&self, v: [f64; 2]) -> f64 {
        dot(self.apply(v), v)
    }
}

impl Add for Mat2 {
    type Output = Mat2;
    fn add(self, o: Mat2) -> Mat2 {
        let (a, b) = (self.0, o.0);
        Mat2([
            [a[0][0] + b[0][0], a[0][1] + b[0][1]],
            [a[1][0] + b[1][0], a[1][1] + b[1][1]],
        ])
    }
}

impl Sub for Mat2 {
    type Output = Mat2;
    fn sub(self, o: Mat2) -> Mat2 {
        self + o.scale(-1.0)
    }
}

impl Mul for Mat2 {
    type Output = Mat2;
    fn mul(self, o: Mat2) -> Mat2 {
        let (a, b) = (self.0, o.0);
        let mut c = [[0.0; 2]; 2];
        for (i, row) in c.iter_mut().enumerate() {
            for (j, out) in row.iter_mut().enumerate() {
                *out = a[i][0] * b[0][j] + a[i][1] * b[1][j];
            }
        }
        Mat2(c)
    }
}

pub fn dot(a: [f64; 2], b: [f64; 2]) -> f64 {
    a[0] * b[0] + a[1] * b[1]
}

/// Kernel direction of the wall condition e₂·u = g.
pub const E1: [f64; 2] = [1.0, 0.0];

/// A(u) = [[0, 1], [gh − q²/h², 2q/h]].
pub fn flux_jacobian(p: StatePoint, g: f64) -> Result<Mat2> {
    p.ensure_wet()?;
    let u = p.velocity();
    Ok(Mat2([[0.0, 1.0], [g * p.h - u * u, 2.0 * u]]))
}

/// B(u, r) = [[0, 1/r], [0, q/(rh)]].
pub fn source_matrix(p: StatePoint, r: f64) -> Result<Mat2> {
    if !(r > 0.0) {
        return Err(Error::NonPositiveRadius { r });
    }
    p.ensure_wet()?;
    Ok(Mat2([[0.0, 1.0 / r], [0.0, p.q / (r * p.h)]]))
}

/// gh − q²/h²; the state is subsonic iff this is positive.
pub fn subsonic_margin(p: StatePoint, g: f64) -> Result<f64> {
    p.ensure_wet()?;
    let u = p.velocity();
    Ok(g * p.h - u * u)
}

pub fn ensure_subsonic(p: StatePoint, g: f64) -> Result<f64> {
    let margin = subsonic_margin(p, g)?;
    if margin > 0.0 {
        Ok(margin)
    } else {
        Err(Error::NotSubsonic { margin, cell: None })
    }
}

/// Characteristic speeds q/h ∓ √(gh) without the subsonic check.
pub fn wave_speeds(p: StatePoint, g: f64) -> (f64, f64) {
    let c = (g * p.h).sqrt();
    let u = p.velocity();
    (u - c, u + c)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EigenData {
    pub lambda_minus: f64,
    pub lambda_plus: f64,
    pub e_minus: [f64; 2],
    pub e_plus: [f64; 2],
    pub p_minus: Mat2,
    pub p_plus: Mat2,
}

impl EigenData {
    /// λ₊P₊ + λ₋P₋.
    pub fn reconstruct(&self) -> Mat2 {
        self.p_plus.scale(self.lambda_plus) + self.p_minus.scale(self.lambda_minus)
    }

    /// Positive and negative parts A⁺ = λ₊P₊, A⁻ = λ₋P₋.
    pub fn split(&self) -> (Mat2, Mat2) {
        (
            self.p_plus.scale(self.lambda_plus),
            self.p_minus.scale(self.lambda_minus),
        )
    }
}

fn unit_eigenvector(lambda: f64) -> [f64; 2] {
    let n = (1.0 + lambda * lambda).sqrt();
    [1.0 / n, lambda / n]
}

pub fn eigen(p: StatePoint, g: f64) -> Result<EigenData> {
    ensure_subsonic(p, g)?;
    let a = flux_jacobian(p, g)?;
    let (lambda_minus, lambda_plus) = wave_speeds(p, g);
    let gap = lambda_plus - lambda_minus;
    let p_plus = (a - Mat2::IDENTITY.scale(lambda_minus)).scale(1.0 / gap);
    let p_minus = (a - Mat2::IDENTITY.scale(lambda_plus)).scale(-1.0 / gap);
    Ok(EigenData {
        lambda_minus,
        lambda_plus,
        e_minus: unit_eigenvector(lambda_minus),
        e_plus: unit_eigenvector(lambda_plus),
        p_minus,
        p_plus,
    })
}

fn projected_norms(e: &EigenData) -> (f64, f64) {
    let plus = e.p_plus.apply(E1);
    let minus = e.p_minus.apply(E1);
    (dot(plus, plus), dot(minus, minus))
}

/// Smallest weight M for which the symmetrizer makes the wall condition
/// maximally dissipative: −λ₊|P₊e₁|² / (λ₋|P₋e₁|²).
pub fn dissipativity_threshold(p: StatePoint, g: f64) -> Result<f64> {
    let e = eigen(p, g)?;
    let (plus, minus) = projected_norms(&e);
    Ok(-e.lambda_plus * plus / (e.lambda_minus * minus))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Symmetrizer {
    pub weight: f64,
    pub s: Mat2,
    /// S·A
    pub sa: Mat2,
    /// Coercivity bound min(M, 1)/2.
    pub alpha: f64,
    /// (S A e₁, e₁) on the kernel of the wall condition.
    pub boundary_form: f64,
    /// Whether `boundary_form` is negative beyond roundoff.
    pub dissipative: bool,
}

/// S = M P₋ᵀP₋ + P₊ᵀP₊. With `weight = None` the weight defaults to twice
/// the dissipativity threshold of `p`.
pub fn build_symmetrizer(p: StatePoint, g: f64, weight: Option<f64>) -> Result<Symmetrizer> {
    let e = eigen(p, g)?;
    let (plus, minus) = projected_norms(&e);
    let threshold = -e.lambda_plus * plus / (e.lambda_minus * minus);
    let m = weight.unwrap_or(2.0 * threshold);
    if !(m > 0.0) {
        return Err(Error::NonPositiveParameter {
            field: "M",
            value: m,
        });
    }
    let s = (e.p_minus.transpose() * e.p_minus).scale(m) + e.p_plus.transpose() * e.p_plus;
    let a = flux_jacobian(p, g)?;
    let sa = s * a;
    let boundary_form = e.lambda_minus * m * minus + e.lambda_plus * plus;
    // the two contributions cancel exactly at the threshold; anything within
    // roundoff of their size is treated as zero
    let scale = e.lambda_plus * plus;
    let dissipative = boundary_form < -1e-12 * scale;
    Ok(Symmetrizer {
        weight: m,
        s,
        sa,
        alpha: m.min(1.0) / 2.0,
        boundary_form,
        dissipative,
    })
}
