//! Random profile generators: the Mallows model and impartial culture.
//!
//! Voter `i` draws from its own ChaCha8 stream `(seed, i)`, so a profile
//! depends only on its parameters, never on how voters are scheduled.

use alloc::vec::Vec;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::profile::{Candidate, Profile, Ranking, MAX_CANDIDATES};

/// Identifier of the random generator, recorded alongside experiment output.
pub const RNG_ALGORITHM: &str = "chacha8-stream-per-voter";

/// Generator for voter `voter` of a profile drawn with `seed`.
pub fn voter_rng(seed: u64, voter: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(voter);
    rng
}

#[derive(Debug, Clone, PartialEq)]
pub struct MallowsParams {
    /// Reference ranking `sigma`.
    pub reference: Ranking,
    /// Dispersion in `(0, 1]`; `1` is impartial culture.
    pub phi: f64,
    pub n: usize,
    pub seed: u64,
}

impl MallowsParams {
    pub fn new(reference: Ranking, phi: f64, n: usize, seed: u64) -> Result<Self> {
        let p = MallowsParams { reference, phi, n, seed };
        p.validate()?;
        Ok(p)
    }

    fn validate(&self) -> Result<()> {
        if !(self.phi > 0.0 && self.phi <= 1.0) {
            return Err(Error::InvalidDispersion);
        }
        if self.n == 0 {
            return Err(Error::EmptyProfile);
        }
        Ok(())
    }
}

/// One ranking with probability proportional to `phi^KT(r, sigma)`, by
/// repeated insertion: the `j`-th candidate of `sigma` lands `d` places
/// before the end of the partial ranking with probability proportional to
/// `phi^d`.
pub fn mallows_ranking<R: Rng + ?Sized>(reference: &Ranking, phi: f64, rng: &mut R) -> Ranking {
    let m = reference.len();
    let mut weights = Vec::with_capacity(m);
    let mut w = 1.0;
    for _ in 0..m {
        weights.push(w);
        w *= phi;
    }
    let mut partial: Vec<Candidate> = Vec::with_capacity(m);
    for (j, c) in reference.iter().enumerate() {
        let total: f64 = weights[..=j].iter().sum();
        let mut u = rng.random::<f64>() * total;
        let mut d = 0;
        while d < j && u >= weights[d] {
            u -= weights[d];
            d += 1;
        }
        partial.insert(j - d, c);
    }
    Ranking::from_candidates(&partial).expect("insertion yields a permutation")
}

/// `n` independent Mallows rankings.
pub fn mallows_sample(params: &MallowsParams) -> Result<Profile> {
    params.validate()?;
    let rankings = (0..params.n as u64).map(|i| mallows_ranking(&params.reference, params.phi, &mut voter_rng(params.seed, i)));
    Profile::from_rankings(params.reference.len(), rankings)
}

/// `n` uniformly random rankings of `m` candidates.
pub fn impartial_culture(m: usize, n: usize, seed: u64) -> Result<Profile> {
    if m > MAX_CANDIDATES {
        return Err(Error::TooManyCandidates { m, max: MAX_CANDIDATES });
    }
    if n == 0 {
        return Err(Error::EmptyProfile);
    }
    let rankings = (0..n as u64).map(|i| {
        let mut order: Vec<usize> = (0..m).collect();
        order.shuffle(&mut voter_rng(seed, i));
        Ranking::from_order(&order).expect("shuffle yields a permutation")
    });
    Profile::from_rankings(m, rankings)
}

/// Mean Kendall tau distance to the reference under the Mallows model.
pub fn expected_kendall_tau(m: usize, phi: f64) -> f64 {
    let mut total = 0.0;
    for j in 1..=m {
        let mut z = 0.0;
        let mut num = 0.0;
        let mut w = 1.0;
        for d in 0..j {
            z += w;
            num += d as f64 * w;
            w *= phi;
        }
        total += num / z;
    }
    total
}
