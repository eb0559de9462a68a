//! Composite Gauss–Legendre quadrature on finite intervals.
//!
//! Nodes are the roots of P_n found by Newton iteration on the three-term
//! recurrence, started from the Chebyshev-like guess cos(π(i − 1/4)/(n + 1/2)).

use std::f64::consts::PI;

#[derive(Debug, Clone, PartialEq)]
pub struct GaussLegendre {
    nodes: Vec<f64>,
    weights: Vec<f64>,
}

impl GaussLegendre {
    pub fn new(n: usize) -> Self {
        assert!(n >= 1, "Gauss-Legendre rule needs at least one node");
        let mut nodes = vec![0.0; n];
        let mut weights = vec![0.0; n];
        let m = n.div_ceil(2);
        for i in 0..m {
            let mut x = (PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
            let mut dp = 0.0;
            for _ in 0..100 {
                let (p, d) = legendre_with_derivative(n, x);
                dp = d;
                let dx = p / d;
                x -= dx;
                if dx.abs() < 1e-16 {
                    break;
                }
            }
            let (_, d) = legendre_with_derivative(n, x);
            if d != 0.0 {
                dp = d;
            }
            let w = 2.0 / ((1.0 - x * x) * dp * dp);
            nodes[i] = -x;
            nodes[n - 1 - i] = x;
            weights[i] = w;
            weights[n - 1 - i] = w;
        }
        if n % 2 == 1 {
            nodes[n / 2] = 0.0;
        }
        GaussLegendre { nodes, weights }
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn integrate<F: Fn(f64) -> f64>(&self, a: f64, b: f64, f: F) -> f64 {
        let half = 0.5 * (b - a);
        let mid = 0.5 * (a + b);
        self.nodes
            .iter()
            .zip(&self.weights)
            .map(|(x, w)| w * f(mid + half * x))
            .sum::<f64>()
            * half
    }
}

fn legendre_with_derivative(n: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = x;
    for k in 2..=n {
        let kf = k as f64;
        let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
        p0 = p1;
        p1 = p2;
    }
    let dp = n as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, dp)
}

/// A Gauss–Legendre rule applied on `panels` equal sub-intervals.
#[derive(Debug, Clone, PartialEq)]
pub struct CompositeRule {
    rule: GaussLegendre,
    panels: usize,
}

impl Default for CompositeRule {
    /// 32 points on 8 panels.
    fn default() -> Self {
        CompositeRule::new(32, 8)
    }
}

impl CompositeRule {
    pub fn new(points: usize, panels: usize) -> Self {
        assert!(panels >= 1);
        CompositeRule {
            rule: GaussLegendre::new(points),
            panels,
        }
    }

    pub fn points(&self) -> usize {
        self.rule.len()
    }

    pub fn panels(&self) -> usize {
        self.panels
    }

    pub fn integrate<F: Fn(f64) -> f64>(&self, a: f64, b: f64, f: F) -> f64 {
        if a == b {
            return 0.0;
        }
        let width = (b - a) / self.panels as f64;
        (0..self.panels)
            .map(|k| {
                let lo = a + k as f64 * width;
                let hi = if k + 1 == self.panels { b } else { lo + width };
                self.rule.integrate(lo, hi, &f)
            })
            .sum()
    }

    /// Every abscissa the rule touches on [a, b], in increasing order.
    pub fn abscissae(&self, a: f64, b: f64) -> Vec<f64> {
        let width = (b - a) / self.panels as f64;
        let mut out = Vec::with_capacity(self.panels * self.rule.len());
        for k in 0..self.panels {
            let lo = a + k as f64 * width;
            let mid = lo + 0.5 * width;
            out.extend(self.rule.nodes().iter().map(|x| mid + 0.5 * width * x));
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn weights_sum_to_two() {
        for n in [1, 2, 5, 16, 32, 64] {
            let gl = GaussLegendre::new(n);
            let s: f64 = gl.weights().iter().sum();
            assert!((s - 2.0).abs() < 1e-13, "n={n} sum={s}");
        }
    }

    #[test]
    fn exact_for_polynomials_up_to_degree_2n_minus_1() {
        let gl = GaussLegendre::new(6);
        for deg in 0..12 {
            let got = gl.integrate(0.0, 1.0, |x| x.powi(deg));
            let want = 1.0 / (deg as f64 + 1.0);
            assert!((got - want).abs() < 1e-14, "deg={deg}");
        }
    }

    #[test]
    fn three_point_nodes() {
        let gl = GaussLegendre::new(3);
        let r = (0.6f64).sqrt();
        assert!((gl.nodes()[0] + r).abs() < 1e-15);
        assert_eq!(gl.nodes()[1], 0.0);
        assert!((gl.weights()[1] - 8.0 / 9.0).abs() < 1e-15);
    }

    #[test]
    fn composite_smooth_integrand() {
        let rule = CompositeRule::default();
        let got = rule.integrate(0.0, 2.0, |x| (3.0 * x).sin() * (-x).exp());
        // ∫ e^{-x} sin 3x = e^{-x}(-sin 3x - 3 cos 3x)/10
        let f = |x: f64| (-x).exp() * (-(3.0 * x).sin() - 3.0 * (3.0 * x).cos()) / 10.0;
        let want = f(2.0) - f(0.0);
        assert!((got - want).abs() < 1e-15);
    }

    #[test]
    fn abscissae_are_sorted_and_inside() {
        let rule = CompositeRule::new(4, 3);
        let xs = rule.abscissae(1.0, 2.0);
        assert_eq!(xs.len(), 12);
        assert!(xs.windows(2).all(|w| w[0] < w[1]));
        assert!(xs.iter().all(|&x| x > 1.0 && x < 2.0));
    }
}
