//! Fixed-node quadrature rules.
//!
//! Gauss-Legendre nodes are computed once per order by Newton iteration on
//! the Legendre recurrence and cached; the computation is deterministic, so
//! every call sees identical nodes.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

/// Default node count per angular interval for the SEP integrands.
pub const DEFAULT_NODES: usize = 128;

/// Nodes and weights on the reference interval `[-1, 1]`.
#[derive(Debug)]
pub struct GaussLegendre {
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
}

impl GaussLegendre {
    fn compute(n: usize) -> Self {
        assert!(n >= 1);
        let mut nodes = vec![0.0; n];
        let mut weights = vec![0.0; n];
        let m = n.div_ceil(2);
        for i in 0..m {
            // Chebyshev-based initial guess, then Newton on P_n.
            let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
            let mut pp = 0.0;
            for _ in 0..100 {
                let (p, dp) = legendre(n, x);
                pp = dp;
                let dx = p / dp;
                x -= dx;
                if dx.abs() < 1e-15 {
                    break;
                }
            }
            nodes[i] = -x;
            nodes[n - 1 - i] = x;
            let w = 2.0 / ((1.0 - x * x) * pp * pp);
            weights[i] = w;
            weights[n - 1 - i] = w;
        }
        Self { nodes, weights }
    }

    /// Integrate `f` over `[a, b]` with this rule.
    pub fn integrate(&self, a: f64, b: f64, mut f: impl FnMut(f64) -> f64) -> f64 {
        let half = 0.5 * (b - a);
        let mid = 0.5 * (a + b);
        self.nodes
            .iter()
            .zip(&self.weights)
            .map(|(&x, &w)| w * f(mid + half * x))
            .sum::<f64>()
            * half
    }
}

/// Value and derivative of the Legendre polynomial `P_n` at `x`.
fn legendre(n: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = x;
    for k in 2..=n {
        let kf = k as f64;
        let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
        p0 = p1;
        p1 = p2;
    }
    if n == 0 {
        return (1.0, 0.0);
    }
    let dp = n as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, dp)
}

/// Shared rule of order `n`.
pub fn gauss_legendre(n: usize) -> Arc<GaussLegendre> {
    static CACHE: OnceLock<Mutex<HashMap<usize, Arc<GaussLegendre>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    let mut guard = cache.lock().expect("quadrature cache poisoned");
    guard
        .entry(n)
        .or_insert_with(|| Arc::new(GaussLegendre::compute(n)))
        .clone()
}

/// Mean of `f` over one period `[0, 2*pi)` by an `n`-point uniform sum
/// (the composite trapezoid rule for a periodic integrand).
pub fn periodic_mean(n: usize, mut f: impl FnMut(f64) -> f64) -> f64 {
    let step = 2.0 * std::f64::consts::PI / n as f64;
    (0..n).map(|i| f(i as f64 * step)).sum::<f64>() / n as f64
}
