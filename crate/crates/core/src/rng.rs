//! Reproducible pseudorandom streams for sampled checks.
//!
//! Every stream is a 128-bit multiplicative congruential generator with an
//! XSL output permutation (`rand_pcg::Mcg128Xsl64`). A stream is keyed by a
//! user seed and a call-site label, so independent checks draw from
//! independent streams and a fixed seed reproduces every sample bit-for-bit.

use rand::{Error as RandError, RngCore};
use rand_pcg::Mcg128Xsl64;

pub struct Sampler(Mcg128Xsl64);

fn splitmix(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

// FNV-1a; stable across platforms and toolchains.
fn label_hash(label: &str) -> u64 {
    label
        .bytes()
        .fold(0xcbf2_9ce4_8422_2325, |h, b| (h ^ b as u64).wrapping_mul(0x0100_0000_01b3))
}

impl Sampler {
    pub fn new(seed: u64, site: &str) -> Self {
        let hi = splitmix(seed ^ label_hash(site));
        let lo = splitmix(hi ^ seed.rotate_left(17));
        Sampler(Mcg128Xsl64::new(((hi as u128) << 64) | lo as u128))
    }

    /// Derives an independent child stream, e.g. one per checked item.
    pub fn fork(&mut self, site: &str) -> Sampler {
        Sampler::new(self.next_u64(), site)
    }
}

impl RngCore for Sampler {
    fn next_u32(&mut self) -> u32 {
        self.0.next_u32()
    }
    fn next_u64(&mut self) -> u64 {
        self.0.next_u64()
    }
    fn fill_bytes(&mut self, dest: &mut [u8]) {
        self.0.fill_bytes(dest)
    }
    fn try_fill_bytes(&mut self, dest: &mut [u8]) -> Result<(), RandError> {
        self.0.try_fill_bytes(dest)
    }
}
