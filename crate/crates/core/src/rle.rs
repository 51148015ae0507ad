//! Run-length view of a binary string.
//!
//! A string is framed by (possibly empty) runs of 0s, so a string with `rho`
//! runs of 1s always has `rho + 1` zero-runs:
//!
//! ```text
//! 0^z[0] 1^o[1] 0^z[1] 1^o[2] ... 1^o[rho] 0^z[rho]
//! ```
//!
//! Only the two boundary zero-runs may be empty.

use std::fmt;
use std::str::FromStr;

use crate::bits::RawBits;
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RunLengthString {
    zero_runs: Vec<usize>,
    one_runs: Vec<usize>,
    len: usize,
}

impl RunLengthString {
    /// The empty string: one empty zero-run, no one-runs.
    pub fn empty() -> Self {
        Self {
            zero_runs: vec![0],
            one_runs: Vec::new(),
            len: 0,
        }
    }

    /// Builds a run-length string from explicit run lengths, checking every invariant.
    pub fn from_parts(zero_runs: Vec<usize>, one_runs: Vec<usize>) -> Result<Self> {
        if zero_runs.len() != one_runs.len() + 1 {
            return Err(Error::InvalidRuns(format!(
                "expected {} zero-runs for {} one-runs, found {}",
                one_runs.len() + 1,
                one_runs.len(),
                zero_runs.len()
            )));
        }
        if let Some(i) = one_runs.iter().position(|&o| o == 0) {
            return Err(Error::InvalidRuns(format!("one-run {} is empty", i + 1)));
        }
        let rho = one_runs.len();
        if rho > 1 {
            if let Some(i) = (1..rho).find(|&i| zero_runs[i] == 0) {
                return Err(Error::InvalidRuns(format!(
                    "interior zero-run {i} is empty"
                )));
            }
        }
        let len = zero_runs
            .iter()
            .chain(one_runs.iter())
            .try_fold(0usize, |acc, &x| acc.checked_add(x))
            .ok_or_else(|| Error::InvalidRuns("total length overflows".into()))?;
        Ok(Self {
            zero_runs,
            one_runs,
            len,
        })
    }

    /// Canonicalizes an arbitrary sequence of `(bit, length)` runs: adjacent runs of
    /// the same character are merged and empty runs dropped.
    pub fn from_runs<I>(runs: I) -> Self
    where
        I: IntoIterator<Item = (bool, usize)>,
    {
        let mut zero_runs = vec![0];
        let mut one_runs: Vec<usize> = Vec::new();
        let mut len = 0;
        // true while the most recent non-empty run was a run of 1s
        let mut in_ones = false;
        for (bit, run) in runs {
            if run == 0 {
                continue;
            }
            len += run;
            match (bit, in_ones) {
                (true, true) => *one_runs.last_mut().unwrap() += run,
                (true, false) => {
                    one_runs.push(run);
                    in_ones = true;
                }
                (false, true) => {
                    zero_runs.push(run);
                    in_ones = false;
                }
                (false, false) => *zero_runs.last_mut().unwrap() += run,
            }
        }
        if in_ones {
            zero_runs.push(0);
        }
        Self {
            zero_runs,
            one_runs,
            len,
        }
    }

    /// Encodes an ASCII bit string (`b'0'` / `b'1'`).
    pub fn encode(bits: &[u8]) -> Result<Self> {
        let mut runs = Vec::new();
        let mut iter = bits.iter().enumerate().peekable();
        while let Some((offset, &c)) = iter.next() {
            let bit = match c {
                b'0' => false,
                b'1' => true,
                _ => {
                    return Err(Error::InvalidBit {
                        offset,
                        found: c as char,
                    })
                }
            };
            let mut run = 1;
            while iter.peek().is_some_and(|&(_, &d)| d == c) {
                iter.next();
                run += 1;
            }
            runs.push((bit, run));
        }
        Ok(Self::from_runs(runs))
    }

    /// Expands back into an ASCII bit string.
    pub fn decode(&self) -> String {
        let mut out = String::with_capacity(self.len);
        for (bit, run) in self.runs() {
            let c = if bit { '1' } else { '0' };
            out.extend(std::iter::repeat_n(c, run));
        }
        out
    }

    /// Expands into a packed bit array.
    pub fn to_raw_bits(&self) -> RawBits {
        let mut bits = RawBits::with_capacity(self.len);
        for (bit, run) in self.runs() {
            bits.push_run(bit, run);
        }
        bits
    }

    /// All runs in order, including empty boundary zero-runs.
    pub fn runs(&self) -> impl Iterator<Item = (bool, usize)> + '_ {
        let zeros = self.zero_runs.iter().map(|&z| (false, z));
        let ones = self.one_runs.iter().map(|&o| (true, o));
        // interleave z[0] o[1] z[1] ... o[rho] z[rho]
        zeros
            .zip(ones.map(Some).chain(std::iter::once(None)))
            .flat_map(|(z, o)| std::iter::once(z).chain(o))
    }

    /// The run-length string of the bitwise complement.
    pub fn complement(&self) -> Self {
        Self::from_runs(self.runs().map(|(bit, run)| (!bit, run)))
    }

    pub fn zero_runs(&self) -> &[usize] {
        &self.zero_runs
    }

    pub fn one_runs(&self) -> &[usize] {
        &self.one_runs
    }

    /// Total length n in characters.
    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    /// Number of runs of 1s.
    pub fn rho(&self) -> usize {
        self.one_runs.len()
    }

    pub fn total_ones(&self) -> usize {
        self.one_runs.iter().sum()
    }

    pub fn total_zeros(&self) -> usize {
        self.zero_runs.iter().sum()
    }

    /// 1-based start position of every run of 1s.
    pub fn one_run_starts(&self) -> Vec<usize> {
        let mut pos = self.zero_runs[0] + 1;
        let mut starts = Vec::with_capacity(self.rho());
        for (i, &o) in self.one_runs.iter().enumerate() {
            starts.push(pos);
            pos += o + self.zero_runs[i + 1];
        }
        starts
    }
}

impl Default for RunLengthString {
    fn default() -> Self {
        Self::empty()
    }
}

/// Text form: `0:<len> 1:<len> ... 0:<len>`, boundary zero-runs always present.
impl fmt::Display for RunLengthString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, (bit, run)) in self.runs().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{}:{}", u8::from(bit), run)?;
        }
        Ok(())
    }
}

impl FromStr for RunLengthString {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let line = s.trim_end_matches(['\n', '\r']);
        let bad = |token: usize, reason: &str| Error::InvalidRunToken {
            token,
            reason: reason.to_string(),
        };
        let mut zero_runs = Vec::new();
        let mut one_runs = Vec::new();
        for (i, tok) in line.split(' ').enumerate() {
            let (tag, len) = tok
                .split_once(':')
                .ok_or_else(|| bad(i, "expected <bit>:<len>"))?;
            let expected = if i % 2 == 0 { "0" } else { "1" };
            if tag != expected {
                return Err(bad(i, &format!("expected a {expected}-run, found {tag:?}")));
            }
            if len.is_empty() || !len.bytes().all(|b| b.is_ascii_digit()) {
                return Err(bad(i, &format!("length {len:?} is not a decimal integer")));
            }
            let len: usize = len.parse().map_err(|_| bad(i, "length out of range"))?;
            if i % 2 == 0 {
                zero_runs.push(len);
            } else {
                one_runs.push(len);
            }
        }
        if zero_runs.len() != one_runs.len() + 1 {
            return Err(bad(
                zero_runs.len() + one_runs.len(),
                "input must end with a 0-run",
            ));
        }
        Self::from_parts(zero_runs, one_runs)
    }
}
