//! Max/min ones-per-length tables and their delta-encoded bitvectors.
//!
//! `T[k]` is the maximum number of 1s in any length-`k` window. It is built
//! from the run-length encoding in three stages:
//!
//! 1. for every pair of one-runs `i <= j`, the window from the start of run
//!    `i` to the end of run `j` gives a candidate for `T[len]`;
//! 2. a right-to-left pass enforces `T[k] >= T[k + 1] - 1`;
//! 3. a left-to-right pass enforces `T[k] >= T[k - 1]`.
//!
//! Stage 1 costs `O(rho^2)`, the passes `O(n)`. The min table comes from the
//! max table of the complement: `min[k] = k - max_complement[k]`.

use crate::bits::{RankBitvector, RawBits};
use crate::error::{Error, Result};
use crate::rle::RunLengthString;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TableKind {
    MaxOnes,
    MinOnes,
}

/// Dense table indexed by window length `k = 1..=n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CountTable {
    kind: TableKind,
    values: Vec<u32>,
}

impl CountTable {
    pub fn new(kind: TableKind, values: Vec<u32>) -> Self {
        Self { kind, values }
    }

    pub fn kind(&self) -> TableKind {
        self.kind
    }

    /// Value for window length `k` (1-based).
    pub fn get(&self, k: usize) -> usize {
        self.values[k - 1] as usize
    }

    /// Values for `k = 1..=n`, in order.
    pub fn values(&self) -> &[u32] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Table of `k - self[k]`, i.e. the max table of the complement string
    /// turned into the min table of the original (and vice versa).
    pub fn mirrored(&self) -> Self {
        let kind = match self.kind {
            TableKind::MaxOnes => TableKind::MinOnes,
            TableKind::MinOnes => TableKind::MaxOnes,
        };
        let values = self
            .values
            .iter()
            .enumerate()
            .map(|(i, &v)| i as u32 + 1 - v)
            .collect();
        Self { kind, values }
    }
}

/// Unit-step non-decreasing sequence stored as its increments: bit `k` is set
/// when the value grows between `k - 1` and `k`, so `rank1(k)` is the value.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonotoneBitvector {
    bits: RankBitvector,
}

impl MonotoneBitvector {
    /// Any bit array is a valid increment sequence.
    pub fn from_raw(bits: RawBits) -> Self {
        Self {
            bits: RankBitvector::new(bits),
        }
    }

    pub fn len(&self) -> usize {
        self.bits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_empty()
    }

    /// Table value at length `k`, for `1 <= k <= n`.
    pub fn value(&self, k: usize) -> Result<usize> {
        if k == 0 || k > self.len() {
            return Err(Error::OutOfBounds {
                index: k,
                lo: 1,
                hi: self.len(),
            });
        }
        Ok(self.bits.rank1(k))
    }

    #[inline]
    pub(crate) fn value_unchecked(&self, k: usize) -> usize {
        self.bits.rank1(k)
    }

    /// Encoding of `k - value(k)`: every increment bit flipped.
    pub fn mirrored(&self) -> Self {
        let mut raw = self.bits.raw().clone();
        raw.invert();
        Self::from_raw(raw)
    }

    pub fn to_table(&self, kind: TableKind) -> CountTable {
        let mut acc = 0u32;
        let values = self
            .bits
            .raw()
            .iter()
            .map(|b| {
                acc += u32::from(b);
                acc
            })
            .collect();
        CountTable::new(kind, values)
    }

    pub fn raw(&self) -> &RawBits {
        self.bits.raw()
    }

    pub fn rank_bits(&self) -> &RankBitvector {
        &self.bits
    }

    pub fn to_bit_string(&self) -> String {
        self.bits.to_bit_string()
    }
}

/// Delta-encodes a table; fails if it is not unit-step monotone from `T[0] = 0`.
pub fn delta_encode(table: &CountTable) -> Result<MonotoneBitvector> {
    let mut raw = RawBits::with_capacity(table.len());
    let mut prev = 0u32;
    for (i, &v) in table.values().iter().enumerate() {
        match v.checked_sub(prev) {
            Some(0) => raw.push(false),
            Some(1) => raw.push(true),
            _ => return Err(Error::NotUnitStep { k: i + 1 }),
        }
        prev = v;
    }
    Ok(MonotoneBitvector::from_raw(raw))
}

pub(crate) fn check_len(n: usize) {
    assert!(
        u32::try_from(n).is_ok(),
        "string length {n} exceeds the supported maximum"
    );
}

/// Stage-by-stage construction of the max table, exposed so each stage can be
/// inspected on its own.
#[derive(Clone, Debug)]
pub struct MaxTableBuilder<'a> {
    rls: &'a RunLengthString,
    table: Vec<u32>,
    pair_ops: u64,
}

impl<'a> MaxTableBuilder<'a> {
    pub fn new(rls: &'a RunLengthString) -> Self {
        check_len(rls.len());
        Self {
            rls,
            table: vec![0; rls.len()],
            pair_ops: 0,
        }
    }

    /// Stage 1: one candidate per ordered pair of one-runs.
    pub fn run_pairs(&mut self) -> &mut Self {
        let z = self.rls.zero_runs();
        let o = self.rls.one_runs();
        let t = &mut self.table;
        for i in 0..o.len() {
            let mut ones = o[i];
            let mut len = o[i];
            self.pair_ops += 1;
            if ones as u32 > t[len - 1] {
                t[len - 1] = ones as u32;
            }
            for j in i + 1..o.len() {
                ones += o[j];
                len += o[j] + z[j];
                self.pair_ops += 1;
                if ones as u32 > t[len - 1] {
                    t[len - 1] = ones as u32;
                }
            }
        }
        self
    }

    /// Stage 2: right to left, `T[k] = max(T[k], T[k + 1] - 1)`.
    pub fn backward_pass(&mut self) -> &mut Self {
        let t = &mut self.table;
        for k in (1..t.len()).rev() {
            let from_right = t[k].saturating_sub(1);
            if t[k - 1] < from_right {
                t[k - 1] = from_right;
            }
        }
        self
    }

    /// Stage 3: left to right, `T[k] = max(T[k], T[k - 1])`.
    pub fn forward_pass(&mut self) -> &mut Self {
        let t = &mut self.table;
        for k in 1..t.len() {
            if t[k] < t[k - 1] {
                t[k] = t[k - 1];
            }
        }
        self
    }

    /// Current table contents, `k = 1..=n`.
    pub fn values(&self) -> &[u32] {
        &self.table
    }

    /// Number of pair candidates examined by stage 1.
    pub fn pair_ops(&self) -> u64 {
        self.pair_ops
    }

    pub fn finish(self) -> CountTable {
        CountTable::new(TableKind::MaxOnes, self.table)
    }
}

pub fn build_max_table(rls: &RunLengthString) -> CountTable {
    let mut b = MaxTableBuilder::new(rls);
    b.run_pairs().backward_pass().forward_pass();
    b.finish()
}

pub fn build_min_table(rls: &RunLengthString) -> CountTable {
    build_max_table(&rls.complement()).mirrored()
}
