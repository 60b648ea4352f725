//! Seeded samplers for randomized checks.
//!
//! All randomness flows through a `ChaCha8Rng` built from a `u64` seed, so a
//! seed fixes every sample bit for bit.

use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::liealg::{ChevalleyAlgebra, LieSeries};
use crate::miura::{HConnection, Twist};
use crate::opers::{GaugeTransform, OperDisk, OperPunctured};
use crate::rational::Q;
use crate::series::TruncLaurent;
use crate::takiff::JetWeight;

/// Default bound on numerators and denominators.
pub const DEFAULT_BOUND: i64 = 100;

#[derive(Clone, Debug)]
pub struct Sampler {
    rng: ChaCha8Rng,
    bound: i64,
}

impl Sampler {
    pub fn new(seed: u64) -> Self {
        Self::with_bound(seed, DEFAULT_BOUND)
    }

    pub fn with_bound(seed: u64, bound: i64) -> Self {
        assert!(bound >= 1, "bound must be positive");
        Self { rng: ChaCha8Rng::seed_from_u64(seed), bound }
    }

    pub fn bound(&self) -> i64 {
        self.bound
    }

    /// `p/q` with `|p| <= bound` and `1 <= q <= bound`.
    pub fn rational(&mut self) -> Q {
        let p = self.rng.gen_range(-self.bound..=self.bound);
        let q = self.rng.gen_range(1..=self.bound);
        Q::new(p.into(), q.into())
    }

    pub fn integer(&mut self, lo: i64, hi: i64) -> i64 {
        self.rng.gen_range(lo..=hi)
    }

    pub fn rationals(&mut self, n: usize) -> Vec<Q> {
        (0..n).map(|_| self.rational()).collect()
    }

    /// Scalar series on the window `[v, precision)`.
    pub fn series(&mut self, v: i64, precision: i64) -> TruncLaurent {
        TruncLaurent::new(v, self.rationals((precision - v) as usize)).expect("nonempty window")
    }

    /// Lie series supported on basis vectors of principal degree in
    /// `[lo, hi]`, on the window `[v, precision)`.
    pub fn lie_series(&mut self, alg: &ChevalleyAlgebra, lo: i64, hi: i64, v: i64, precision: i64) -> LieSeries {
        let coeffs = (v..precision)
            .map(|_| {
                let mut x = alg.zero();
                for k in 0..alg.dim() {
                    let d = alg.degree(k);
                    if d >= lo && d <= hi {
                        x.set(k, self.rational());
                    }
                }
                x
            })
            .collect();
        TruncLaurent::new(v, coeffs).expect("nonempty window")
    }

    /// Disk oper of order `n` with Borel-valued `x` known modulo
    /// `t^precision`.
    pub fn oper_disk(&mut self, alg: &ChevalleyAlgebra, n: usize, precision: i64) -> OperDisk {
        OperDisk { order: n, x: self.lie_series(alg, 0, alg.max_degree(), 0, precision) }
    }

    /// Punctured oper with `x` on the window `[v, precision)`.
    pub fn oper_punctured(&mut self, alg: &ChevalleyAlgebra, v: i64, precision: i64) -> OperPunctured {
        OperPunctured { x: self.lie_series(alg, 0, alg.max_degree(), v, precision) }
    }

    /// One factor of each positive degree, each on `[v, precision)`.
    pub fn gauge(&mut self, alg: &ChevalleyAlgebra, v: i64, precision: i64) -> GaugeTransform {
        let factors = (1..=alg.max_degree())
            .map(|d| (d, self.lie_series(alg, d, d, v, precision)))
            .collect();
        GaugeTransform::new(alg, factors).expect("pure-degree factors")
    }

    /// Cartan connection of order `n` with `u` known modulo `t^precision`.
    pub fn h_connection(&mut self, alg: &ChevalleyAlgebra, twist: Twist, n: usize, precision: i64) -> HConnection {
        let u = self.lie_series(alg, 0, 0, 0, precision);
        HConnection::new(alg, twist, n, u).expect("Cartan-valued sample")
    }

    pub fn jet_weight(&mut self, rank: usize, n: usize) -> JetWeight {
        JetWeight::new((0..n).map(|_| self.rationals(rank)).collect()).expect("n, rank >= 1")
    }

    /// A rational that is nonzero.
    pub fn nonzero_rational(&mut self) -> Q {
        loop {
            let x = self.rational();
            if !x.is_zero() {
                return x;
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn seeds_determine_samples() {
        let a: Vec<Q> = Sampler::new(7).rationals(20);
        let b: Vec<Q> = Sampler::new(7).rationals(20);
        let c: Vec<Q> = Sampler::new(8).rationals(20);
        assert_eq!(a, b);
        assert_ne!(a, c);
    }

    #[test]
    fn bounds_hold() {
        let mut s = Sampler::with_bound(1, 5);
        for _ in 0..200 {
            let x = s.rational();
            assert!(x.numer().magnitude() <= &5u32.into());
            assert!(x.denom() <= &5.into());
        }
    }
}
