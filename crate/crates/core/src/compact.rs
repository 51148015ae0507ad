//! Max-table construction in `O(n)` bits of working memory.
//!
//! The table is cut into blocks of `B <= 64` entries. Each block stores its
//! first value explicitly (`ceil(log2(n + 1))` bits) and one increment bit per
//! later entry, packed into a single word whose bit `r` is `T[h + r] - T[h + r - 1]`
//! for the block starting at `h`. Bit 0 of every block word is unused.
//!
//! Writes keep every block unit-step monotone: setting `T[i] = v` also lifts
//! earlier entries of the block to at least `v - (i - j)` and later ones to at
//! least `v`. Those lower bounds hold for the true maxima anyway, so the final
//! table is unchanged. Updates are word operations: the entries that change
//! form one interval around `i`, bounded by a select over the zero bits to the
//! left and the one bits to the right.

use crate::bits::{select_in_word, RawBits};
use crate::error::{Error, Result};
use crate::packed::{width_for, IntVector};
use crate::rle::RunLengthString;
use crate::table::{check_len, MonotoneBitvector};

pub const DEFAULT_BLOCK_SIZE: usize = 64;

/// Bits `0..=r` set.
#[inline]
fn low_mask(r: usize) -> u64 {
    if r >= 63 {
        u64::MAX
    } else {
        (2u64 << r) - 1
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BlockedTable {
    len: usize,
    block_size: usize,
    firsts: IntVector,
    deltas: Vec<u64>,
}

impl BlockedTable {
    /// All-zero table of `len` entries.
    pub fn new(len: usize, block_size: usize) -> Self {
        assert!(
            (1..=64).contains(&block_size),
            "block size must be in 1..=64, got {block_size}"
        );
        let blocks = len.div_ceil(block_size);
        Self {
            len,
            block_size,
            firsts: IntVector::new(blocks, width_for(len)),
            deltas: vec![0; blocks],
        }
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn block_size(&self) -> usize {
        self.block_size
    }

    pub fn num_blocks(&self) -> usize {
        self.deltas.len()
    }

    /// Entries in block `b` (the last block may be short).
    pub fn block_len(&self, b: usize) -> usize {
        (self.len - b * self.block_size).min(self.block_size)
    }

    /// 1-based index of the first entry of block `b`.
    pub fn block_start(&self, b: usize) -> usize {
        b * self.block_size + 1
    }

    pub fn block_end(&self, b: usize) -> usize {
        self.block_start(b) + self.block_len(b) - 1
    }

    pub fn first(&self, b: usize) -> usize {
        self.firsts.get(b) as usize
    }

    /// Increment bits of block `b` as text, one character per entry after the first.
    pub fn delta_string(&self, b: usize) -> String {
        (1..self.block_len(b))
            .map(|r| {
                if (self.deltas[b] >> r) & 1 == 1 {
                    '1'
                } else {
                    '0'
                }
            })
            .collect()
    }

    pub fn get(&self, i: usize) -> Result<usize> {
        if i == 0 || i > self.len {
            return Err(Error::OutOfBounds {
                index: i,
                lo: 1,
                hi: self.len,
            });
        }
        Ok(self.value(i))
    }

    #[inline]
    fn value(&self, i: usize) -> usize {
        let (b, r) = ((i - 1) / self.block_size, (i - 1) % self.block_size);
        self.firsts.get(b) as usize + (self.deltas[b] & low_mask(r)).count_ones() as usize
    }

    /// Raises `T[i]` to at least `v`, keeping the block unit-step monotone.
    pub fn set(&mut self, i: usize, v: usize) -> Result<()> {
        if i == 0 || i > self.len {
            return Err(Error::OutOfBounds {
                index: i,
                lo: 1,
                hi: self.len,
            });
        }
        if v > i {
            return Err(Error::ValueExceedsLength {
                length: i,
                value: v,
            });
        }
        self.raise(i, v);
        Ok(())
    }

    #[inline]
    fn raise(&mut self, i: usize, v: usize) {
        let old = self.value(i);
        if v <= old {
            return;
        }
        let deficit = (v - old) as u32;
        let (b, r) = ((i - 1) / self.block_size, (i - 1) % self.block_size);
        let block_mask = low_mask(self.block_len(b) - 1);
        let mut word = self.deltas[b];

        // Left side: the entries that fall below the ramp v - (i - j) end at the
        // deficit-th zero increment bit at or below r (bit 0 excluded).
        let left_zeros = !word & low_mask(r) & !1;
        let available = left_zeros.count_ones();
        let ramp_from = if available >= deficit {
            select_in_word(left_zeros, available - deficit).unwrap() as usize
        } else {
            // ramp reaches the start of the block: lift the first value
            let first = self.firsts.get(b) + u64::from(deficit - available);
            self.firsts.set(b, first);
            1
        };
        if ramp_from <= r {
            word |= low_mask(r) & !low_mask(ramp_from - 1);
        }

        // Right side: later entries below v form a plateau ending at the
        // deficit-th one bit above r.
        if r + 1 < self.block_len(b) {
            let right_ones = word & block_mask & !low_mask(r);
            let plateau_to = select_in_word(right_ones, deficit - 1)
                .map_or(self.block_len(b) - 1, |q| q as usize);
            word &= !(low_mask(plateau_to) & !low_mask(r));
        }
        self.deltas[b] = word;
    }

    /// Heap bits held by the table.
    pub fn heap_bits(&self) -> usize {
        self.firsts.heap_bits() + self.deltas.capacity() * 64
    }

    /// Decodes every entry. Test and debugging aid; allocates `n` words.
    pub fn to_values(&self) -> Vec<u32> {
        (1..=self.len).map(|i| self.value(i) as u32).collect()
    }

    /// Increment bitvector of the whole table, assuming it is unit-step
    /// monotone across block boundaries too.
    pub fn to_monotone(&self) -> Result<MonotoneBitvector> {
        let mut raw = RawBits::with_capacity(self.len);
        let mut prev_last = 0usize;
        for b in 0..self.num_blocks() {
            let first = self.first(b);
            let step =
                first
                    .checked_sub(prev_last)
                    .filter(|&s| s <= 1)
                    .ok_or(Error::NotUnitStep {
                        k: self.block_start(b),
                    })?;
            let word = (self.deltas[b] & !1) | step as u64;
            raw.push_bits(word, self.block_len(b));
            prev_last = self.value(self.block_end(b));
        }
        Ok(MonotoneBitvector::from_raw(raw))
    }
}

/// Staged max-table construction on a [`BlockedTable`].
#[derive(Clone, Debug)]
pub struct CompactBuilder<'a> {
    rls: &'a RunLengthString,
    table: BlockedTable,
    pair_ops: u64,
}

impl<'a> CompactBuilder<'a> {
    pub fn new(rls: &'a RunLengthString, block_size: usize) -> Self {
        check_len(rls.len());
        Self {
            rls,
            table: BlockedTable::new(rls.len(), block_size),
            pair_ops: 0,
        }
    }

    pub fn run_pairs(&mut self) -> &mut Self {
        let z = self.rls.zero_runs();
        let o = self.rls.one_runs();
        for i in 0..o.len() {
            let mut ones = o[i];
            let mut len = o[i];
            self.pair_ops += 1;
            self.table.raise(len, ones);
            for j in i + 1..o.len() {
                ones += o[j];
                len += o[j] + z[j];
                self.pair_ops += 1;
                self.table.raise(len, ones);
            }
        }
        self
    }

    /// Within a block `T[k] >= T[k + 1] - 1` already holds, so only block
    /// boundaries need work: one write per block, right to left.
    pub fn backward_pass(&mut self) -> &mut Self {
        let t = &mut self.table;
        for b in (0..t.num_blocks().saturating_sub(1)).rev() {
            let next_first = t.first(b + 1);
            if next_first > 0 {
                t.raise(t.block_end(b), next_first - 1);
            }
        }
        self
    }

    /// Carries the last value of each block into the next one, left to right.
    pub fn forward_pass(&mut self) -> &mut Self {
        let t = &mut self.table;
        for b in 1..t.num_blocks() {
            let prev_last = t.value(t.block_end(b - 1));
            t.raise(t.block_start(b), prev_last);
        }
        self
    }

    pub fn table(&self) -> &BlockedTable {
        &self.table
    }

    pub fn pair_ops(&self) -> u64 {
        self.pair_ops
    }

    pub fn finish(self) -> MonotoneBitvector {
        self.table
            .to_monotone()
            .expect("blocked table is unit-step monotone after both passes")
    }
}

pub fn build_max_table_compact_with(rls: &RunLengthString, block_size: usize) -> MonotoneBitvector {
    let mut b = CompactBuilder::new(rls, block_size);
    b.run_pairs().backward_pass().forward_pass();
    b.finish()
}

/// Max-table bitvector built with 64-entry blocks.
pub fn build_max_table_compact(rls: &RunLengthString) -> MonotoneBitvector {
    build_max_table_compact_with(rls, DEFAULT_BLOCK_SIZE)
}

/// Min-table bitvector via the complement, with the same workspace bound.
pub fn build_min_table_compact(rls: &RunLengthString) -> MonotoneBitvector {
    build_max_table_compact(&rls.complement()).mirrored()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::table::{build_max_table, delta_encode};
    use proptest::prelude::*;

    fn rls(s: &str) -> RunLengthString {
        RunLengthString::encode(s.as_bytes()).unwrap()
    }

    fn state(t: &BlockedTable) -> (Vec<usize>, Vec<String>) {
        (
            (0..t.num_blocks()).map(|b| t.first(b)).collect(),
            (0..t.num_blocks()).map(|b| t.delta_string(b)).collect(),
        )
    }

    #[test]
    fn worked_example_block_writes() {
        let mut t = BlockedTable::new(12, 4);
        t.set(1, 1).unwrap();
        assert_eq!(state(&t).1[0], "000");
        assert_eq!(t.first(0), 1);
        t.set(3, 2).unwrap();
        assert_eq!((t.first(0), t.delta_string(0).as_str()), (1, "010"));
        t.set(7, 5).unwrap();
        assert_eq!((t.first(1), t.delta_string(1).as_str()), (3, "110"));
        t.set(11, 7).unwrap();
        assert_eq!((t.first(2), t.delta_string(2).as_str()), (5, "110"));
        t.set(5, 4).unwrap();
        assert_eq!((t.first(1), t.delta_string(1).as_str()), (4, "010"));
    }

    #[test]
    fn worked_example_final_state() {
        let r = rls("010101110011");
        let mut b = CompactBuilder::new(&r, 4);
        b.run_pairs();
        let (firsts, deltas) = state(b.table());
        assert_eq!(firsts, vec![1, 4, 6]);
        assert_eq!(deltas, vec!["110", "010", "010"]);
        assert_eq!(
            b.table().to_values(),
            vec![1, 2, 3, 3, 4, 4, 5, 5, 6, 6, 7, 7]
        );
        b.backward_pass().forward_pass();
        assert_eq!(state(b.table()), (firsts, deltas));
        assert_eq!(b.finish().to_bit_string(), "111010101010");
    }

    #[test]
    fn lower_writes_are_ignored() {
        let mut t = BlockedTable::new(8, 4);
        t.set(3, 3).unwrap();
        let before = t.clone();
        t.set(3, 1).unwrap();
        t.set(4, 3).unwrap();
        t.set(2, 2).unwrap();
        assert_eq!(t, before);
    }

    #[test]
    fn fresh_and_single_write() {
        let mut t = BlockedTable::new(100, 64);
        assert!(t.to_values().iter().all(|&v| v == 0));
        t.set(70, 40).unwrap();
        assert_eq!(t.get(70).unwrap(), 40);
        assert_eq!(t.get(65).unwrap(), 35);
        assert_eq!(t.get(100).unwrap(), 40);
        assert_eq!(t.get(64).unwrap(), 0);
    }

    #[test]
    fn write_errors() {
        let mut t = BlockedTable::new(8, 4);
        assert!(matches!(t.set(3, 4), Err(Error::ValueExceedsLength { .. })));
        assert!(t.set(0, 0).is_err());
        assert!(t.set(9, 1).is_err());
        assert!(t.get(9).is_err());
    }

    #[test]
    fn passes_are_needed_when_blocks_stay_untouched() {
        let r = rls("10000000");
        let mut b = CompactBuilder::new(&r, 4);
        b.run_pairs();
        assert_eq!(b.table().to_values(), vec![1, 1, 1, 1, 0, 0, 0, 0]);
        b.backward_pass().forward_pass();
        assert_eq!(b.table().to_values(), vec![1; 8]);
    }

    #[test]
    fn example_and_zeros() {
        assert_eq!(
            build_max_table_compact(&rls("010101110011")).to_bit_string(),
            "111010101010"
        );
        assert_eq!(
            build_max_table_compact(&rls("0000")).to_bit_string(),
            "0000"
        );
        assert!(build_max_table_compact(&rls("")).is_empty());
    }

    /// Reference block write: raise every entry to its lower bound one at a time.
    fn naive_raise(values: &mut [i64], block: usize, i: usize, v: i64) {
        let h = (i - 1) / block * block + 1;
        let end = (h + block - 1).min(values.len());
        for j in h..=end {
            let bound = if j < i { v - (i - j) as i64 } else { v };
            values[j - 1] = values[j - 1].max(bound);
        }
    }

    proptest! {
        #[test]
        fn block_writes_match_naive(
            len in 1usize..200,
            block in 1usize..=64,
            writes in proptest::collection::vec((0.0f64..1.0, 0.0f64..1.0), 0..60),
        ) {
            let mut t = BlockedTable::new(len, block);
            let mut reference = vec![0i64; len];
            for (a, c) in writes {
                let i = 1 + ((a * len as f64) as usize).min(len - 1);
                let v = ((c * (i + 1) as f64) as usize).min(i);
                t.set(i, v).unwrap();
                naive_raise(&mut reference, block, i, v as i64);
                let got: Vec<i64> = t.to_values().iter().map(|&x| i64::from(x)).collect();
                prop_assert_eq!(&got, &reference);
                for b in 0..t.num_blocks() {
                    for k in t.block_start(b) + 1..=t.block_end(b) {
                        let step = got[k - 1] - got[k - 2];
                        prop_assert!(step == 0 || step == 1);
                    }
                }
            }
        }

        #[test]
        fn compact_matches_plain(bits in proptest::collection::vec(any::<bool>(), 0..600), block in 1usize..=64) {
            let s: String = bits.iter().map(|&b| if b { '1' } else { '0' }).collect();
            let r = rls(&s);
            let plain = delta_encode(&build_max_table(&r)).unwrap();
            prop_assert_eq!(build_max_table_compact_with(&r, block), plain);
        }
    }
}
