//! Seeded, portable pseudo-randomness for reproducible splits and fixtures.
//!
//! The generator is SplitMix64 (Steele, Lea & Flood 2014): a single `u64`
//! of state, identical output on every platform. Splits and fixture
//! generation must replay bit-identically from a seed, which rules out
//! generators whose streams change between library versions.

/// SplitMix64 generator.
///
/// `next_u64` advances the state by the golden-gamma constant and applies
/// the standard 64-bit finalizer.
#[derive(Debug, Clone)]
pub struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    pub fn new(seed: u64) -> Self {
        Self { state: seed }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(0x9E37_79B9_7F4A_7C15);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^ (z >> 31)
    }

    /// Uniform draw in `0..bound` via modulo reduction.
    ///
    /// The modulo bias is below 2^-32 for any bound this crate uses and is
    /// accepted in exchange for a one-line, hand-replayable rule.
    pub fn below(&mut self, bound: u64) -> u64 {
        assert!(bound > 0, "bound must be positive");
        self.next_u64() % bound
    }

    /// Uniform draw in the half-open unit interval `[0, 1)`.
    pub fn unit_f64(&mut self) -> f64 {
        // 53 high bits -> exactly representable dyadic rational.
        (self.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }

    /// Standard normal draw via the Box-Muller transform.
    pub fn normal_f64(&mut self) -> f64 {
        let u1 = loop {
            let u = self.unit_f64();
            if u > 0.0 {
                break u;
            }
        };
        let u2 = self.unit_f64();
        (-2.0 * u1.ln()).sqrt() * (std::f64::consts::TAU * u2).cos()
    }
}

/// In-place Fisher-Yates shuffle driven by [`SplitMix64::below`].
///
/// For `i` from `len-1` down to `1`, swap `items[i]` with
/// `items[rng.below(i+1)]`. Documented so the permutation for a given seed
/// can be reproduced independently.
pub fn fisher_yates<T>(items: &mut [T], rng: &mut SplitMix64) {
    for i in (1..items.len()).rev() {
        let j = rng.below(i as u64 + 1) as usize;
        items.swap(i, j);
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn splitmix_reference_stream() {
        // First three outputs for seed 0, per the reference implementation.
        let mut rng = SplitMix64::new(0);
        assert_eq!(rng.next_u64(), 0xE220_A839_7B1D_CDAF);
        assert_eq!(rng.next_u64(), 0x6E78_9E6A_A1B9_65F4);
        assert_eq!(rng.next_u64(), 0x06C4_5D18_8009_454F);
    }

    #[test]
    fn shuffle_is_deterministic() {
        let mut a: Vec<u32> = (0..50).collect();
        let mut b: Vec<u32> = (0..50).collect();
        fisher_yates(&mut a, &mut SplitMix64::new(7));
        fisher_yates(&mut b, &mut SplitMix64::new(7));
        assert_eq!(a, b);
        let mut c: Vec<u32> = (0..50).collect();
        fisher_yates(&mut c, &mut SplitMix64::new(8));
        assert_ne!(a, c);
    }

    #[test]
    fn unit_draws_stay_in_range() {
        let mut rng = SplitMix64::new(123);
        for _ in 0..1000 {
            let u = rng.unit_f64();
            assert!((0.0..1.0).contains(&u));
        }
    }
}
