//! Composite, adaptively bisected Gauss-Legendre quadrature.

use std::num::NonZeroUsize;

use gauss_quad::legendre::GaussLegendre;

const PANEL_DEGREE: usize = 20;
const MAX_DEPTH: u32 = 48;

/// Integral estimate with an error bound.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadResult {
    pub value: f64,
    pub error: f64,
}

/// Gauss-Legendre nodes and weights on `[-1, 1]`, ascending in the node.
pub fn gauss_legendre(degree: usize) -> Vec<(f64, f64)> {
    let degree = NonZeroUsize::new(degree.max(1)).expect("degree is at least one");
    let mut pairs = GaussLegendre::new(degree).as_node_weight_pairs().to_vec();
    pairs.sort_by(|x, y| x.0.total_cmp(&y.0));
    pairs
}

pub struct Integrator {
    rule: GaussLegendre,
    rel_tol: f64,
}

impl Integrator {
    pub fn new(rel_tol: f64) -> Self {
        Self {
            rule: GaussLegendre::new(NonZeroUsize::new(PANEL_DEGREE).unwrap()),
            rel_tol,
        }
    }

    /// Integrates over consecutive panels `[p₀, p₁], [p₁, p₂], …`, bisecting
    /// each panel until the `n`-point rule and the sum over both halves agree
    /// within the panel's share of `rel_tol · |∫f|`.
    ///
    /// The reported error is the summed coarse/fine discrepancy of accepted
    /// panels, which bounds the error of the coarse estimates and so
    /// over-estimates that of the returned (fine) value.
    pub fn integrate<F: FnMut(f64) -> f64>(&self, mut f: F, breakpoints: &[f64]) -> QuadResult {
        let panels: Vec<(f64, f64)> = breakpoints.windows(2).map(|w| (w[0], w[1])).collect();
        let coarse: Vec<f64> = panels
            .iter()
            .map(|&(a, b)| self.rule.integrate(a, b, &mut f))
            .collect();
        let scale = coarse.iter().map(|v| v.abs()).sum::<f64>();
        let abs_tol = self.rel_tol * scale;
        let mut total = QuadResult {
            value: 0.0,
            error: 0.0,
        };
        for (&(a, b), &whole) in panels.iter().zip(&coarse) {
            let share = abs_tol * (b - a) / (breakpoints[breakpoints.len() - 1] - breakpoints[0]);
            let part = self.refine(&mut f, a, b, whole, share.max(f64::MIN_POSITIVE), 0);
            total.value += part.value;
            total.error += part.error;
        }
        total
    }

    fn refine<F: FnMut(f64) -> f64>(
        &self,
        f: &mut F,
        a: f64,
        b: f64,
        whole: f64,
        tol: f64,
        depth: u32,
    ) -> QuadResult {
        let mid = 0.5 * (a + b);
        let left = self.rule.integrate(a, mid, &mut *f);
        let right = self.rule.integrate(mid, b, &mut *f);
        let fine = left + right;
        let diff = (fine - whole).abs();
        if diff <= tol || depth >= MAX_DEPTH || !diff.is_finite() {
            return QuadResult {
                value: fine,
                error: diff,
            };
        }
        let l = self.refine(f, a, mid, left, 0.5 * tol, depth + 1);
        let r = self.refine(f, mid, b, right, 0.5 * tol, depth + 1);
        QuadResult {
            value: l.value + r.value,
            error: l.error + r.error,
        }
    }
}
