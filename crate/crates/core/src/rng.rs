//! Seeded, splittable random number generation.
//!
//! The generator is algorithm-pinned so the reproducibility contract does
//! not depend on any external crate's internals:
//!
//! * state expansion and stream splitting use SplitMix64
//!   (Steele-Lea-Flood; increment `0x9E3779B97F4A7C15`, multipliers
//!   `0xBF58476D1CE4E5B9` / `0x94D049BB133111EB`),
//! * the output sequence is xoshiro256** (Blackman-Vigna),
//! * uniform doubles take the top 53 bits,
//! * Gaussian pairs use the Marsaglia polar method,
//! * bounded integers use the multiply-shift reduction.
//!
//! A stream is addressed by `(seed, stream_id)` and any number of
//! sub-generators can be derived per trial index; identical addresses
//! reproduce identical draws on every platform.

use num_complex::Complex64;

const GOLDEN: u64 = 0x9E3779B97F4A7C15;

#[inline]
fn splitmix64(state: &mut u64) -> u64 {
    *state = state.wrapping_add(GOLDEN);
    let mut z = *state;
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58476D1CE4E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D049BB133111EB);
    z ^ (z >> 31)
}

/// Address of one reproducible random stream.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RngStream {
    pub seed: u64,
    pub stream_id: u64,
}

impl RngStream {
    pub fn new(seed: u64, stream_id: u64) -> Self {
        Self { seed, stream_id }
    }

    /// Generator for this stream.
    pub fn rng(&self) -> Rng {
        Rng::from_words(&[self.seed, self.stream_id])
    }

    /// Generator for trial `index` within this stream. Distinct indices
    /// give statistically independent sequences.
    pub fn trial_rng(&self, index: u64) -> Rng {
        Rng::from_words(&[self.seed, self.stream_id, index])
    }

    /// Derived stream, e.g. one per sweep point.
    pub fn substream(&self, index: u64) -> RngStream {
        let mut z = self.stream_id ^ index.wrapping_mul(GOLDEN);
        RngStream {
            seed: self.seed,
            stream_id: splitmix64(&mut z),
        }
    }
}

/// xoshiro256** generator.
#[derive(Debug, Clone)]
pub struct Rng {
    s: [u64; 4],
}

impl Rng {
    /// Deterministic construction from a word sequence: each word is
    /// absorbed into a SplitMix64 chain, whose next four outputs form the
    /// xoshiro state.
    pub fn from_words(words: &[u64]) -> Self {
        let mut z = 0u64;
        for &w in words {
            z ^= w;
            let _ = splitmix64(&mut z);
            z = splitmix64(&mut z);
        }
        let mut s = [0u64; 4];
        for slot in &mut s {
            *slot = splitmix64(&mut z);
        }
        if s == [0, 0, 0, 0] {
            s[0] = GOLDEN;
        }
        Self { s }
    }

    #[inline]
    pub fn next_u64(&mut self) -> u64 {
        let result = self.s[1].wrapping_mul(5).rotate_left(7).wrapping_mul(9);
        let t = self.s[1] << 17;
        self.s[2] ^= self.s[0];
        self.s[3] ^= self.s[1];
        self.s[1] ^= self.s[2];
        self.s[0] ^= self.s[3];
        self.s[2] ^= t;
        self.s[3] = self.s[3].rotate_left(45);
        result
    }

    /// Uniform in `[0, 1)` with 53-bit resolution.
    #[inline]
    pub fn next_f64(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }

    /// Uniform index in `0..m` by multiply-shift reduction.
    #[inline]
    pub fn next_index(&mut self, m: usize) -> usize {
        debug_assert!(m >= 1);
        ((self.next_u64() as u128 * m as u128) >> 64) as usize
    }

    /// Two independent standard normals via the polar method.
    pub fn next_gaussian_pair(&mut self) -> (f64, f64) {
        loop {
            let u = 2.0 * self.next_f64() - 1.0;
            let v = 2.0 * self.next_f64() - 1.0;
            let s = u * u + v * v;
            if s > 0.0 && s < 1.0 {
                let factor = (-2.0 * s.ln() / s).sqrt();
                return (u * factor, v * factor);
            }
        }
    }

    /// Standard circular complex Gaussian: real and imaginary parts each
    /// `N(0, 1/2)`, so `E|z|^2 = 1`.
    #[inline]
    pub fn next_complex_gaussian(&mut self) -> Complex64 {
        let (x, y) = self.next_gaussian_pair();
        Complex64::new(x, y) * std::f64::consts::FRAC_1_SQRT_2
    }
}
