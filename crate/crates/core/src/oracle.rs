//! Brute-force reference implementations for differential testing.
//!
//! Everything here works on the raw bit string (`&[bool]`), never on the
//! run-length form, and shares no code with the fast builders.

use crate::error::{Error, Result};

/// Parses an ASCII `0`/`1` string into booleans.
pub fn parse_bits(s: &str) -> Result<Vec<bool>> {
    s.bytes()
        .enumerate()
        .map(|(offset, c)| match c {
            b'0' => Ok(false),
            b'1' => Ok(true),
            _ => Err(Error::InvalidBit {
                offset,
                found: c as char,
            }),
        })
        .collect()
}

/// `prefix[i]` = number of 1s among the first `i` bits.
pub fn prefix_ones(bits: &[bool]) -> Vec<usize> {
    let mut out = Vec::with_capacity(bits.len() + 1);
    out.push(0);
    let mut acc = 0;
    for &b in bits {
        acc += usize::from(b);
        out.push(acc);
    }
    out
}

/// Ones in every length-`k` window, by direct counting.
fn window_counts(bits: &[bool], k: usize) -> impl Iterator<Item = usize> + '_ {
    bits.windows(k).map(|w| w.iter().filter(|&&b| b).count())
}

/// Fewest and most 1s over all length-`k` windows.
pub fn brute_minmax(bits: &[bool], k: usize) -> Result<(usize, usize)> {
    if k == 0 || k > bits.len() {
        return Err(Error::OutOfBounds {
            index: k,
            lo: 1,
            hi: bits.len(),
        });
    }
    Ok(window_counts(bits, k).fold((usize::MAX, 0), |(lo, hi), c| (lo.min(c), hi.max(c))))
}

/// Min and max tables for every `k = 1..=n`, by sliding each window length
/// across the string one step at a time. `O(n^2)`.
pub fn brute_tables(bits: &[bool]) -> (Vec<u32>, Vec<u32>) {
    let n = bits.len();
    let mut min = Vec::with_capacity(n);
    let mut max = Vec::with_capacity(n);
    for k in 1..=n {
        let mut count = bits[..k].iter().filter(|&&b| b).count();
        let (mut lo, mut hi) = (count, count);
        for start in 1..=n - k {
            count = count + usize::from(bits[start + k - 1]) - usize::from(bits[start - 1]);
            lo = lo.min(count);
            hi = hi.max(count);
        }
        min.push(lo as u32);
        max.push(hi as u32);
    }
    (min, max)
}

/// `feasible[k - 1][y]` is true when some length-`k` window holds exactly
/// `y` ones. Every window is visited; `O(n^2)` time and bits.
pub fn brute_feasible(bits: &[bool]) -> Vec<Vec<bool>> {
    let n = bits.len();
    (1..=n)
        .map(|k| {
            let mut seen = vec![false; k + 1];
            let mut count = bits[..k].iter().filter(|&&b| b).count();
            seen[count] = true;
            for start in 1..=n - k {
                count = count + usize::from(bits[start + k - 1]) - usize::from(bits[start - 1]);
                seen[count] = true;
            }
            seen
        })
        .collect()
}

/// Leftmost 1-based start of a window with `zeros` 0s and `ones` 1s.
pub fn brute_witness(bits: &[bool], zeros: usize, ones: usize) -> Option<usize> {
    let k = zeros.checked_add(ones)?;
    if k == 0 || k > bits.len() {
        return None;
    }
    window_counts(bits, k)
        .position(|c| c == ones)
        .map(|p| p + 1)
}

pub fn brute_exists(bits: &[bool], zeros: usize, ones: usize) -> bool {
    zeros == 0 && ones == 0 || brute_witness(bits, zeros, ones).is_some()
}

/// The `O(n * rho)` max-table algorithm: pair the start of every run of 1s
/// with every 1 at or after it, then one forward pass.
pub fn build_max_table_quadratic(bits: &[bool]) -> Vec<u32> {
    let n = bits.len();
    let mut t = vec![0u32; n];
    let run_starts = (0..n).filter(|&i| bits[i] && (i == 0 || !bits[i - 1]));
    for start in run_starts {
        let mut ones = 0u32;
        for end in start..n {
            if bits[end] {
                ones += 1;
                let len = end - start + 1;
                t[len - 1] = t[len - 1].max(ones);
            }
        }
    }
    for k in 1..n {
        t[k] = t[k].max(t[k - 1]);
    }
    t
}
