//! Seeded sampling of small integer vectors.
//!
//! Every random draw in the crate goes through [`SampleRng`], so a seed fully
//! determines a verification run.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::linalg::RationalVector;

/// Entries of sampled vectors lie in `[-SAMPLE_BOUND, SAMPLE_BOUND]`.
pub const SAMPLE_BOUND: i64 = 9;

pub struct SampleRng(ChaCha8Rng);

impl SampleRng {
    pub fn new(seed: u64) -> Self {
        SampleRng(ChaCha8Rng::seed_from_u64(seed))
    }

    pub fn int_vector(&mut self, len: usize) -> Vec<i64> {
        (0..len)
            .map(|_| self.0.gen_range(-SAMPLE_BOUND..=SAMPLE_BOUND))
            .collect()
    }

    pub fn vector(&mut self, len: usize) -> RationalVector {
        RationalVector::from_integers(self.int_vector(len))
    }

    pub fn nonzero_vector(&mut self, len: usize) -> RationalVector {
        loop {
            let v = self.vector(len);
            if !v.is_zero() {
                return v;
            }
        }
    }

    /// A nonzero multiple of a random standard basis vector.
    pub fn axis_vector(&mut self, len: usize) -> RationalVector {
        let mut v = vec![0; len];
        let k = self.0.gen_range(0..len);
        while v[k] == 0 {
            v[k] = self.0.gen_range(-SAMPLE_BOUND..=SAMPLE_BOUND);
        }
        RationalVector::from_integers(v)
    }

    /// A rational with numerator in `[-9, 9]` and denominator in `[1, 9]`.
    pub fn small_rational(&mut self) -> num_rational::BigRational {
        let n = self.0.gen_range(-SAMPLE_BOUND..=SAMPLE_BOUND);
        let d = self.0.gen_range(1..=SAMPLE_BOUND);
        num_rational::BigRational::new(n.into(), d.into())
    }

    pub fn rational_vector(&mut self, len: usize) -> RationalVector {
        RationalVector((0..len).map(|_| self.small_rational()).collect())
    }
}
