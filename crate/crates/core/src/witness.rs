//! Start positions of extremal windows, built alongside the max table.
//!
//! `P[k]` is the 1-based start of some length-`k` window holding `T[k]` ones.
//! Stage 1 records the start of run `i` whenever a pair improves `T`; the
//! passes copy positions along with values, and the forward pass clamps the
//! copied start so the longer window still fits inside the string.

use crate::bits::RankBitvector;
use crate::error::{Error, Result};
use crate::packed::{width_for, IntVector};
use crate::rle::RunLengthString;
use crate::table::{check_len, CountTable, TableKind};

/// Marks a position not yet assigned during construction.
pub const UNSET: u32 = 0;

#[derive(Clone, Debug)]
pub struct WitnessBuilder<'a> {
    rls: &'a RunLengthString,
    table: Vec<u32>,
    positions: Vec<u32>,
}

impl<'a> WitnessBuilder<'a> {
    pub fn new(rls: &'a RunLengthString) -> Self {
        check_len(rls.len());
        Self {
            rls,
            table: vec![0; rls.len()],
            positions: vec![UNSET; rls.len()],
        }
    }

    pub fn run_pairs(&mut self) -> &mut Self {
        let z = self.rls.zero_runs();
        let o = self.rls.one_runs();
        let (t, p) = (&mut self.table, &mut self.positions);
        let mut start = z[0] + 1;
        for i in 0..o.len() {
            let mut ones = o[i];
            let mut len = o[i];
            if ones as u32 > t[len - 1] {
                t[len - 1] = ones as u32;
                p[len - 1] = start as u32;
            }
            for j in i + 1..o.len() {
                ones += o[j];
                len += o[j] + z[j];
                if ones as u32 > t[len - 1] {
                    t[len - 1] = ones as u32;
                    p[len - 1] = start as u32;
                }
            }
            start += o[i] + z[i + 1];
        }
        self
    }

    pub fn backward_pass(&mut self) -> &mut Self {
        let (t, p) = (&mut self.table, &mut self.positions);
        for k in (1..t.len()).rev() {
            let from_right = t[k].saturating_sub(1);
            if t[k - 1] < from_right {
                t[k - 1] = from_right;
                p[k - 1] = p[k];
            }
        }
        self
    }

    pub fn forward_pass(&mut self) -> &mut Self {
        let n = self.table.len();
        let (t, p) = (&mut self.table, &mut self.positions);
        for k in 1..n {
            if t[k] < t[k - 1] {
                t[k] = t[k - 1];
                p[k] = p[k - 1];
                // window of length k + 1 must end by position n
                let len = k + 1;
                if p[k] as usize + len - 1 > n {
                    p[k] = (n - len + 1) as u32;
                }
            }
        }
        self
    }

    pub fn values(&self) -> &[u32] {
        &self.table
    }

    /// Positions so far; [`UNSET`] where none has been recorded.
    pub fn positions(&self) -> &[u32] {
        &self.positions
    }

    /// Finished table and positions. Lengths whose maximum is 0 never get a
    /// position from the passes; every window qualifies there, so they get 1.
    pub fn finish(self) -> (CountTable, Vec<u32>) {
        let mut positions = self.positions;
        for (p, &t) in positions.iter_mut().zip(&self.table) {
            if *p == UNSET {
                debug_assert_eq!(t, 0);
                *p = 1;
            }
        }
        (CountTable::new(TableKind::MaxOnes, self.table), positions)
    }
}

fn max_with_positions(rls: &RunLengthString) -> (CountTable, Vec<u32>) {
    let mut b = WitnessBuilder::new(rls);
    b.run_pairs().backward_pass().forward_pass();
    b.finish()
}

/// Extremal window positions plus a rank structure over the string itself.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WitnessTables {
    p_max: IntVector,
    p_min: IntVector,
    source: RankBitvector,
}

impl WitnessTables {
    pub fn from_parts(p_max: IntVector, p_min: IntVector, source: RankBitvector) -> Result<Self> {
        let n = source.len();
        if p_max.len() != n || p_min.len() != n {
            return Err(Error::Corrupt(format!(
                "position tables of length {} and {} for a string of length {n}",
                p_max.len(),
                p_min.len()
            )));
        }
        for k in 1..=n {
            for p in [p_max.get(k - 1), p_min.get(k - 1)] {
                if p == 0 || p as usize > n - k + 1 {
                    return Err(Error::Corrupt(format!(
                        "position {p} for window length {k} does not fit in n = {n}"
                    )));
                }
            }
        }
        Ok(Self {
            p_max,
            p_min,
            source,
        })
    }

    pub fn len(&self) -> usize {
        self.source.len()
    }

    pub fn is_empty(&self) -> bool {
        self.source.is_empty()
    }

    /// Start of a length-`k` window with the maximum number of 1s.
    pub fn p_max(&self, k: usize) -> usize {
        self.p_max.get(k - 1) as usize
    }

    /// Start of a length-`k` window with the minimum number of 1s.
    pub fn p_min(&self, k: usize) -> usize {
        self.p_min.get(k - 1) as usize
    }

    /// Ones in `s[start .. start + len - 1]`, via two rank queries.
    #[inline]
    pub fn window_ones(&self, start: usize, len: usize) -> usize {
        self.source.rank1(start + len - 1) - self.source.rank1(start - 1)
    }

    pub fn source(&self) -> &RankBitvector {
        &self.source
    }

    pub fn p_max_packed(&self) -> &IntVector {
        &self.p_max
    }

    pub fn p_min_packed(&self) -> &IntVector {
        &self.p_min
    }

    pub fn heap_bits(&self) -> usize {
        self.p_max.heap_bits()
            + self.p_min.heap_bits()
            + self.source.payload_bits()
            + self.source.directory_bits()
    }
}

/// Max table, min table and witness positions in one go.
///
/// The min side reuses the same procedure on the complement: a window with
/// the most 0s is a window with the fewest 1s, at the same position.
pub fn build_witness_tables(rls: &RunLengthString) -> (CountTable, CountTable, WitnessTables) {
    let n = rls.len();
    let (max, p_max) = max_with_positions(rls);
    let (max_of_complement, p_min) = max_with_positions(&rls.complement());
    let width = width_for(n);
    let tables = WitnessTables {
        p_max: IntVector::from_values(&p_max, width),
        p_min: IntVector::from_values(&p_min, width),
        source: RankBitvector::new(rls.to_raw_bits()),
    };
    (max, max_of_complement.mirrored(), tables)
}
