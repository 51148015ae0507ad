#![allow(dead_code)]

use bjpm_core::gen::random_runs;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

/// Every binary string of length `n`, as ASCII.
pub fn all_strings(n: usize) -> impl Iterator<Item = String> {
    (0u64..1 << n).map(move |m| {
        (0..n)
            .map(|i| if (m >> i) & 1 == 1 { '1' } else { '0' })
            .collect()
    })
}

/// Random strings with 1 <= n <= max_n, mixing uniform densities with run-structured inputs.
pub fn random_corpus(count: usize, max_n: usize, seed: u64) -> Vec<String> {
    let mut rng = StdRng::seed_from_u64(seed);
    (0..count)
        .map(|i| {
            let n = rng.random_range(1..=max_n);
            if i % 3 == 2 {
                let rho = rng.random_range(0..=n.div_ceil(2));
                random_runs(n, rho, rng.random()).unwrap().decode()
            } else {
                let p: f64 = rng.random_range(0.05..0.95);
                (0..n)
                    .map(|_| if rng.random_bool(p) { '1' } else { '0' })
                    .collect()
            }
        })
        .collect()
}

/// Independent window recount via prefix sums over the ASCII string.
pub struct Recount {
    prefix: Vec<usize>,
}

impl Recount {
    pub fn new(s: &str) -> Self {
        let mut prefix = vec![0];
        for c in s.bytes() {
            prefix.push(prefix.last().unwrap() + usize::from(c == b'1'));
        }
        Self { prefix }
    }

    pub fn ones(&self, start: usize, len: usize) -> usize {
        self.prefix[start + len - 1] - self.prefix[start - 1]
    }
}
