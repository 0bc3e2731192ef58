//! M-ary PAM, PSK and square QAM constellations.
//!
//! Every point set is normalized to unit average energy and zero mean, so
//! a symbol vector drawn uniformly has identity covariance. Symbol error
//! probability is the metric throughout the crate, so no bit labeling is
//! attached to the points.

use crate::error::{Error, Result};
use crate::rng::Rng;
use num_complex::Complex64;
use std::f64::consts::PI;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ConstellationKind {
    Pam,
    Psk,
    Qam,
}

impl ConstellationKind {
    pub fn as_str(&self) -> &'static str {
        match self {
            ConstellationKind::Pam => "PAM",
            ConstellationKind::Psk => "PSK",
            ConstellationKind::Qam => "QAM",
        }
    }
}

impl std::fmt::Display for ConstellationKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Normalized constellation of order `M`.
#[derive(Debug, Clone, PartialEq)]
pub struct Constellation {
    kind: ConstellationKind,
    m: usize,
    points: Vec<Complex64>,
}

impl Constellation {
    /// Build the point set for `kind` of order `m`.
    ///
    /// * PAM: `(2i - M + 1) * sqrt(3/(M^2-1))`, `i = 0..M-1`.
    /// * PSK: `exp(2*pi*i*k/M)` with reference phase 0.
    /// * QAM: square grid `sqrt(M)`-PAM x `sqrt(M)`-PAM scaled by
    ///   `sqrt(3/(2(M-1)))`; `M` must be a perfect square `>= 4`.
    pub fn new(kind: ConstellationKind, m: usize) -> Result<Self> {
        if m < 2 {
            return Err(Error::InvalidOrder(format!("order {m} must be >= 2")));
        }
        let points = match kind {
            ConstellationKind::Pam => {
                let scale = (3.0 / (m as f64 * m as f64 - 1.0)).sqrt();
                (0..m)
                    .map(|i| Complex64::new((2.0 * i as f64 - m as f64 + 1.0) * scale, 0.0))
                    .collect()
            }
            ConstellationKind::Psk => (0..m)
                .map(|k| Complex64::from_polar(1.0, 2.0 * PI * k as f64 / m as f64))
                .collect(),
            ConstellationKind::Qam => {
                let side = (m as f64).sqrt().round() as usize;
                if side * side != m || m < 4 {
                    return Err(Error::InvalidOrder(format!(
                        "QAM order {m} must be a perfect square >= 4"
                    )));
                }
                let scale = (3.0 / (2.0 * (m as f64 - 1.0))).sqrt();
                let mut points = Vec::with_capacity(m);
                for i in 0..side {
                    for q in 0..side {
                        points.push(Complex64::new(
                            (2.0 * i as f64 - side as f64 + 1.0) * scale,
                            (2.0 * q as f64 - side as f64 + 1.0) * scale,
                        ));
                    }
                }
                points
            }
        };
        Ok(Self { kind, m, points })
    }

    pub fn kind(&self) -> ConstellationKind {
        self.kind
    }

    pub fn order(&self) -> usize {
        self.m
    }

    pub fn points(&self) -> &[Complex64] {
        &self.points
    }

    pub fn point(&self, index: usize) -> Complex64 {
        self.points[index]
    }

    /// Minimum distance between distinct points.
    pub fn min_distance(&self) -> f64 {
        match self.kind {
            ConstellationKind::Pam => 2.0 * (3.0 / (self.m as f64 * self.m as f64 - 1.0)).sqrt(),
            ConstellationKind::Psk => 2.0 * (PI / self.m as f64).sin(),
            ConstellationKind::Qam => (6.0 / (self.m as f64 - 1.0)).sqrt(),
        }
    }

    /// Index of the closest point to `y`; ties break to the lowest index.
    pub fn hard_decision(&self, y: Complex64) -> usize {
        let mut best = 0usize;
        let mut best_dist = f64::INFINITY;
        for (i, s) in self.points.iter().enumerate() {
            let d = (y - s).norm_sqr();
            if d < best_dist {
                best_dist = d;
                best = i;
            }
        }
        best
    }

    /// `n` uniform symbol indices from the given generator.
    pub fn random_symbols(&self, n: usize, rng: &mut Rng) -> Vec<usize> {
        (0..n).map(|_| rng.next_index(self.m)).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::RngStream;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn check_invariants(cst: &Constellation) {
        let m = cst.order() as f64;
        let power: f64 = cst.points().iter().map(|s| s.norm_sqr()).sum::<f64>() / m;
        let mean: Complex64 = cst.points().iter().sum::<Complex64>() / m;
        assert!((power - 1.0).abs() < 1e-12, "{cst:?} power {power}");
        assert!(mean.norm() < 1e-12, "{cst:?} mean {mean}");
        for i in 0..cst.order() {
            for j in (i + 1)..cst.order() {
                assert!((cst.point(i) - cst.point(j)).norm() > 1e-9);
            }
        }
    }

    #[test]
    fn bpsk_points() {
        let cst = Constellation::new(ConstellationKind::Pam, 2).unwrap();
        assert!((cst.point(0) - c(-1.0, 0.0)).norm() < 1e-15);
        assert!((cst.point(1) - c(1.0, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn qam4_points() {
        let cst = Constellation::new(ConstellationKind::Qam, 4).unwrap();
        let s = 1.0 / 2.0f64.sqrt();
        let expected = [c(-s, -s), c(-s, s), c(s, -s), c(s, s)];
        for (p, e) in cst.points().iter().zip(&expected) {
            assert!((p - e).norm() < 1e-15);
        }
    }

    #[test]
    fn psk8_normalized() {
        let cst = Constellation::new(ConstellationKind::Psk, 8).unwrap();
        check_invariants(&cst);
    }

    #[test]
    fn invariants_across_kinds_and_orders() {
        for m in [2usize, 4, 8, 16, 64, 256, 1024] {
            check_invariants(&Constellation::new(ConstellationKind::Pam, m).unwrap());
            check_invariants(&Constellation::new(ConstellationKind::Psk, m).unwrap());
        }
        for m in [4usize, 16, 64, 256, 1024] {
            check_invariants(&Constellation::new(ConstellationKind::Qam, m).unwrap());
        }
    }

    #[test]
    fn qam_rejects_non_square_order() {
        assert!(matches!(
            Constellation::new(ConstellationKind::Qam, 8),
            Err(Error::InvalidOrder(_))
        ));
        assert!(matches!(
            Constellation::new(ConstellationKind::Qam, 2),
            Err(Error::InvalidOrder(_))
        ));
    }

    #[test]
    fn min_distance_formulas() {
        for m in [2usize, 4, 8, 16, 64] {
            let pam = Constellation::new(ConstellationKind::Pam, m).unwrap();
            let expected = 2.0 * (3.0 / ((m * m) as f64 - 1.0)).sqrt();
            assert!((pam.min_distance() - expected).abs() < 1e-14);
        }
        for m in [4usize, 16, 64] {
            let qam = Constellation::new(ConstellationKind::Qam, m).unwrap();
            let expected = (6.0 / (m as f64 - 1.0)).sqrt();
            assert!((qam.min_distance() - expected).abs() < 1e-14);
            // Cross-check against the brute-force pairwise minimum.
            let mut brute = f64::INFINITY;
            for i in 0..m {
                for j in 0..m {
                    if i != j {
                        brute = brute.min((qam.point(i) - qam.point(j)).norm());
                    }
                }
            }
            assert!((qam.min_distance() - brute).abs() < 1e-12);
        }
    }

    #[test]
    fn decision_examples() {
        let pam2 = Constellation::new(ConstellationKind::Pam, 2).unwrap();
        assert_eq!(pam2.hard_decision(c(0.9, -0.1)), 1);

        let qam4 = Constellation::new(ConstellationKind::Qam, 4).unwrap();
        let s = 1.0 / 2.0f64.sqrt();
        let idx = qam4.hard_decision(c(s, 0.9 * s));
        assert!((qam4.point(idx) - c(s, s)).norm() < 1e-15);
    }

    #[test]
    fn decision_is_identity_on_points_and_within_half_min_distance() {
        let kinds = [
            (ConstellationKind::Pam, vec![2usize, 4, 16, 64]),
            (ConstellationKind::Psk, vec![2, 8, 64]),
            (ConstellationKind::Qam, vec![4, 16, 64]),
        ];
        for (kind, orders) in kinds {
            for m in orders {
                let cst = Constellation::new(kind, m).unwrap();
                let eps = 0.49 * cst.min_distance();
                for (i, s) in cst.points().iter().enumerate() {
                    assert_eq!(cst.hard_decision(*s), i);
                    for angle in [0.0, 1.3, 2.9, 4.4] {
                        let y = s + Complex64::from_polar(eps, angle);
                        assert_eq!(cst.hard_decision(y), i, "{kind:?}-{m} at angle {angle}");
                    }
                }
            }
        }
    }

    #[test]
    fn symbols_are_uniform_and_reproducible() {
        let cst = Constellation::new(ConstellationKind::Psk, 8).unwrap();
        let n = 1_000_000usize;
        let draws = cst.random_symbols(n, &mut RngStream::new(11, 0).rng());
        let again = cst.random_symbols(n, &mut RngStream::new(11, 0).rng());
        assert_eq!(draws, again);

        let mut counts = vec![0usize; 8];
        for &d in &draws {
            counts[d] += 1;
        }
        let p = 1.0 / 8.0;
        let sigma = (n as f64 * p * (1.0 - p)).sqrt();
        for &count in &counts {
            assert!((count as f64 - n as f64 * p).abs() < 3.0 * sigma);
        }
    }

    #[test]
    fn bpsk_sample_mean_vanishes() {
        let cst = Constellation::new(ConstellationKind::Pam, 2).unwrap();
        let n = 1_000_000usize;
        let mut rng = RngStream::new(5, 9).rng();
        let sum: Complex64 = cst
            .random_symbols(n, &mut rng)
            .into_iter()
            .map(|i| cst.point(i))
            .sum();
        assert!((sum / n as f64).norm() < 3e-3);
    }
}
