//! Reproducible random inputs with a prescribed number of runs of 1s.

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use rand_distr::{Distribution, Geometric};

use crate::error::{Error, Result};
use crate::rle::RunLengthString;

/// A string of exactly `n` bits with exactly `rho` runs of 1s.
///
/// Every run gets a geometric number of extra characters on top of its
/// minimum (1 for one-runs and interior zero-runs, 0 at the boundaries).
/// If the draws overshoot `n` they are scaled down; any shortfall pads the
/// trailing zero-run.
pub fn random_runs(n: usize, rho: usize, seed: u64) -> Result<RunLengthString> {
    if rho > 0 && 2 * rho - 1 > n {
        return Err(Error::InvalidRuns(format!(
            "{rho} runs of 1s need at least {} bits, n = {n}",
            2 * rho - 1
        )));
    }
    if rho == 0 {
        return RunLengthString::from_parts(vec![n], Vec::new());
    }
    let mut rng = StdRng::seed_from_u64(seed);
    let slots = 2 * rho + 1;
    let spare = n - (2 * rho - 1);
    let mean = spare as f64 / slots as f64;
    let geo = Geometric::new(1.0 / (mean + 1.0)).expect("probability in (0, 1]");
    let mut extra: Vec<u64> = (0..slots).map(|_| geo.sample(&mut rng)).collect();
    let total: u128 = extra.iter().map(|&e| u128::from(e)).sum();
    if total > spare as u128 {
        for e in &mut extra {
            *e = (u128::from(*e) * spare as u128 / total) as u64;
        }
    }
    let used: u64 = extra.iter().sum();
    extra[slots - 1] += spare as u64 - used;

    let mut zero_runs = Vec::with_capacity(rho + 1);
    let mut one_runs = Vec::with_capacity(rho);
    for (slot, &e) in extra.iter().enumerate() {
        let e = e as usize;
        if slot % 2 == 1 {
            one_runs.push(1 + e);
        } else if slot == 0 || slot == slots - 1 {
            zero_runs.push(e);
        } else {
            zero_runs.push(1 + e);
        }
    }
    RunLengthString::from_parts(zero_runs, one_runs)
}

/// Uniformly random bit string.
pub fn random_bits(n: usize, seed: u64) -> String {
    let mut rng = StdRng::seed_from_u64(seed);
    (0..n)
        .map(|_| if rng.random::<bool>() { '1' } else { '0' })
        .collect()
}
