//! The queryable index.
//!
//! A length-`k` substring with `y` ones exists iff `min[k] <= y <= max[k]`,
//! because sliding a window one step changes its count by at most one. So an
//! existence query is two rank lookups, and a witness can be found by binary
//! search between the stored minimal and maximal windows.

use crate::compact::{build_max_table_compact, build_min_table_compact};
use crate::error::{Error, Result};
use crate::rle::RunLengthString;
use crate::table::{build_max_table, build_min_table, delta_encode, MonotoneBitvector};
use crate::witness::{build_witness_tables, WitnessTables};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct BuildOptions {
    /// Also build the position tables needed by [`JumbledIndex::witness`].
    pub witness: bool,
    /// Build the count bitvectors in `O(n)` bits of workspace. Position
    /// tables, when requested, still take `O(n)` words.
    pub compact: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JumbledIndex {
    len: usize,
    rho: usize,
    min_ones: MonotoneBitvector,
    max_ones: MonotoneBitvector,
    witnesses: Option<WitnessTables>,
}

impl JumbledIndex {
    pub fn build(rls: &RunLengthString, options: BuildOptions) -> Result<Self> {
        if u32::try_from(rls.len()).is_err() {
            return Err(Error::TooLong(rls.len()));
        }
        let (min_ones, max_ones, witnesses) = match options {
            BuildOptions {
                witness: true,
                compact,
            } => {
                let (max, min, w) = build_witness_tables(rls);
                let (min_bv, max_bv) = if compact {
                    (build_min_table_compact(rls), build_max_table_compact(rls))
                } else {
                    (delta_encode(&min)?, delta_encode(&max)?)
                };
                (min_bv, max_bv, Some(w))
            }
            BuildOptions {
                witness: false,
                compact: true,
            } => (
                build_min_table_compact(rls),
                build_max_table_compact(rls),
                None,
            ),
            BuildOptions {
                witness: false,
                compact: false,
            } => (
                delta_encode(&build_min_table(rls))?,
                delta_encode(&build_max_table(rls))?,
                None,
            ),
        };
        Ok(Self {
            len: rls.len(),
            rho: rls.rho(),
            min_ones,
            max_ones,
            witnesses,
        })
    }

    /// Parses an ASCII bit string and builds with the given options.
    pub fn from_bits(bits: &str, options: BuildOptions) -> Result<Self> {
        Self::build(&RunLengthString::encode(bits.as_bytes())?, options)
    }

    /// Assembles an index from stored parts, checking their mutual consistency.
    pub fn from_parts(
        len: usize,
        rho: usize,
        min_ones: MonotoneBitvector,
        max_ones: MonotoneBitvector,
        witnesses: Option<WitnessTables>,
    ) -> Result<Self> {
        if min_ones.len() != len || max_ones.len() != len {
            return Err(Error::Corrupt(format!(
                "table lengths {} / {} disagree with n = {len}",
                min_ones.len(),
                max_ones.len()
            )));
        }
        // min[k] <= max[k] can only break where the running difference drops
        let (mut lo, mut hi) = (0usize, 0usize);
        for (a, b) in min_ones.raw().iter().zip(max_ones.raw().iter()) {
            lo += usize::from(a);
            hi += usize::from(b);
            if lo > hi {
                return Err(Error::Corrupt("min table exceeds max table".into()));
            }
        }
        if let Some(w) = &witnesses {
            if w.len() != len {
                return Err(Error::Corrupt(format!(
                    "witness source has length {}, expected {len}",
                    w.len()
                )));
            }
            if w.source().count_ones() != hi {
                return Err(Error::Corrupt(
                    "witness source disagrees with max table".into(),
                ));
            }
            for k in 1..=len {
                if w.window_ones(w.p_max(k), k) != max_ones.value_unchecked(k)
                    || w.window_ones(w.p_min(k), k) != min_ones.value_unchecked(k)
                {
                    return Err(Error::Corrupt(format!(
                        "witness position for length {k} does not match its table value"
                    )));
                }
            }
        }
        Ok(Self {
            len,
            rho,
            min_ones,
            max_ones,
            witnesses,
        })
    }

    /// String length n.
    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn rho(&self) -> usize {
        self.rho
    }

    pub fn min_ones(&self) -> &MonotoneBitvector {
        &self.min_ones
    }

    pub fn max_ones(&self) -> &MonotoneBitvector {
        &self.max_ones
    }

    pub fn witnesses(&self) -> Option<&WitnessTables> {
        self.witnesses.as_ref()
    }

    pub fn has_witnesses(&self) -> bool {
        self.witnesses.is_some()
    }

    /// Is there a substring with exactly `zeros` 0s and `ones` 1s?
    pub fn exists(&self, zeros: usize, ones: usize) -> bool {
        match zeros.checked_add(ones) {
            Some(k) => self.exists_len(k, ones),
            None => false,
        }
    }

    /// Is there a length-`k` substring with exactly `ones` 1s?
    pub fn exists_len(&self, k: usize, ones: usize) -> bool {
        if k == 0 {
            return true;
        }
        if k > self.len || ones > k {
            return false;
        }
        self.min_ones.value_unchecked(k) <= ones && ones <= self.max_ones.value_unchecked(k)
    }

    /// Fewest and most 1s over all length-`k` windows.
    pub fn range_of_ones(&self, k: usize) -> Result<(usize, usize)> {
        Ok((self.min_ones.value(k)?, self.max_ones.value(k)?))
    }

    /// 1-based start of a substring with `zeros` 0s and `ones` 1s, if any.
    ///
    /// The empty query has no position and yields `Ok(None)`.
    pub fn witness(&self, zeros: usize, ones: usize) -> Result<Option<usize>> {
        let w = self.witnesses.as_ref().ok_or(Error::WitnessUnavailable)?;
        let Some(k) = zeros.checked_add(ones) else {
            return Ok(None);
        };
        if k == 0 || k > self.len || ones > k {
            return Ok(None);
        }
        let (lo_count, hi_count) = (
            self.min_ones.value_unchecked(k),
            self.max_ones.value_unchecked(k),
        );
        if ones < lo_count || ones > hi_count {
            return Ok(None);
        }
        let (lo_pos, hi_pos) = (w.p_min(k), w.p_max(k));
        if ones == hi_count {
            return Ok(Some(hi_pos));
        }
        if ones == lo_count {
            return Ok(Some(lo_pos));
        }
        // `below` holds fewer than `ones` 1s, `above` more; the positions
        // between them contain a match.
        let (mut below, mut above) = (lo_pos, hi_pos);
        loop {
            debug_assert!(below.abs_diff(above) > 1);
            let mid = (below.min(above) + below.max(above)) / 2;
            let count = w.window_ones(mid, k);
            if count == ones {
                return Ok(Some(mid));
            }
            if count < ones {
                below = mid;
            } else {
                above = mid;
            }
        }
    }

    /// [`witness`](Self::witness) in (length, ones) form.
    pub fn witness_len(&self, k: usize, ones: usize) -> Result<Option<usize>> {
        if ones > k {
            self.witnesses.as_ref().ok_or(Error::WitnessUnavailable)?;
            return Ok(None);
        }
        self.witness(k - ones, ones)
    }

    /// Heap bits of the stored structures, rank directories included.
    pub fn heap_bits(&self) -> usize {
        let bv =
            |m: &MonotoneBitvector| m.rank_bits().payload_bits() + m.rank_bits().directory_bits();
        bv(&self.min_ones)
            + bv(&self.max_ones)
            + self.witnesses.as_ref().map_or(0, WitnessTables::heap_bits)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bits::{rank_calls, reset_rank_calls};

    const EXAMPLE: &str = "010101110011";

    fn witnessed(s: &str) -> JumbledIndex {
        JumbledIndex::from_bits(
            s,
            BuildOptions {
                witness: true,
                compact: false,
            },
        )
        .unwrap()
    }

    #[test]
    fn existence_examples() {
        let ix = JumbledIndex::from_bits(EXAMPLE, BuildOptions::default()).unwrap();
        assert!(ix.exists(2, 3));
        assert!(!ix.exists(4, 1));
        assert!(ix.exists(0, 0));
        assert!(!ix.exists(13, 0));
        assert!(!ix.exists(usize::MAX, 1));
        for ones in 0..=6 {
            assert_eq!(
                ix.exists_len(5, ones),
                (2..=4).contains(&ones),
                "ones={ones}"
            );
        }
    }

    #[test]
    fn ranges() {
        let ix = JumbledIndex::from_bits(EXAMPLE, BuildOptions::default()).unwrap();
        assert_eq!(ix.range_of_ones(5).unwrap(), (2, 4));
        assert_eq!(ix.range_of_ones(12).unwrap(), (7, 7));
        assert!(ix.range_of_ones(0).is_err());
        assert!(ix.range_of_ones(13).is_err());
        let z = JumbledIndex::from_bits("0000", BuildOptions::default()).unwrap();
        assert_eq!(z.range_of_ones(2).unwrap(), (0, 0));
    }

    #[test]
    fn witness_examples() {
        let ix = witnessed(EXAMPLE);
        reset_rank_calls();
        assert_eq!(ix.witness(2, 3).unwrap(), Some(2));
        // two table lookups plus one probe
        assert_eq!(rank_calls(), 4);
        assert_eq!(ix.witness(0, 3).unwrap(), Some(6));
        assert_eq!(ix.witness(4, 1).unwrap(), None);
        assert_eq!(ix.witness(0, 0).unwrap(), None);
        assert_eq!(ix.witness_len(5, 3).unwrap(), Some(2));
        assert_eq!(ix.witness_len(3, 4).unwrap(), None);
    }

    #[test]
    fn witness_requires_tables() {
        let ix = JumbledIndex::from_bits(EXAMPLE, BuildOptions::default()).unwrap();
        assert!(matches!(ix.witness(2, 3), Err(Error::WitnessUnavailable)));
    }

    #[test]
    fn empty_index() {
        let ix = witnessed("");
        assert!(ix.is_empty());
        assert!(ix.exists(0, 0));
        assert!(!ix.exists(0, 1));
        assert!(!ix.exists(1, 0));
        assert_eq!(ix.witness(0, 0).unwrap(), None);
    }

    #[test]
    fn build_modes_agree() {
        let s = "0001101111010000011101";
        let plain = JumbledIndex::from_bits(s, BuildOptions::default()).unwrap();
        for (witness, compact) in [(false, true), (true, false), (true, true)] {
            let other = JumbledIndex::from_bits(s, BuildOptions { witness, compact }).unwrap();
            assert_eq!(other.min_ones(), plain.min_ones());
            assert_eq!(other.max_ones(), plain.max_ones());
        }
    }

    #[test]
    fn from_parts_checks_consistency() {
        let ix = witnessed(EXAMPLE);
        let again = JumbledIndex::from_parts(
            ix.len(),
            ix.rho(),
            ix.min_ones().clone(),
            ix.max_ones().clone(),
            ix.witnesses().cloned(),
        )
        .unwrap();
        assert_eq!(again, ix);
        // swapped tables violate min <= max
        assert!(JumbledIndex::from_parts(
            12,
            4,
            ix.max_ones().clone(),
            ix.min_ones().clone(),
            None
        )
        .is_err());
        assert!(JumbledIndex::from_parts(
            11,
            4,
            ix.min_ones().clone(),
            ix.max_ones().clone(),
            None
        )
        .is_err());
    }
}
