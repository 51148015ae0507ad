//! Packed bit arrays and a constant-time rank structure over them.
//!
//! Positions are 1-based: `rank1(i)` counts the 1s among bits `1..=i` and
//! `access(i)` reads bit `i`. Internally bit `i` lives at offset `i - 1`.

use std::cell::Cell;

use crate::error::{Error, Result};

const WORD_BITS: usize = 64;
/// Bits covered by one coarse directory entry.
const COARSE_BITS: usize = 512;
const WORDS_PER_COARSE: usize = COARSE_BITS / WORD_BITS;

thread_local! {
    static RANK_CALLS: Cell<u64> = const { Cell::new(0) };
}

/// Number of `rank1` calls made on this thread since the last reset.
pub fn rank_calls() -> u64 {
    RANK_CALLS.with(Cell::get)
}

pub fn reset_rank_calls() {
    RANK_CALLS.with(|c| c.set(0));
}

/// Growable packed bit array, little-endian within each 64-bit word.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct RawBits {
    words: Vec<u64>,
    len: usize,
}

impl RawBits {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with_capacity(bits: usize) -> Self {
        Self {
            words: Vec::with_capacity(bits.div_ceil(WORD_BITS)),
            len: 0,
        }
    }

    /// All-zero array of `len` bits.
    pub fn zeros(len: usize) -> Self {
        Self {
            words: vec![0; len.div_ceil(WORD_BITS)],
            len,
        }
    }

    /// Wraps stored words; bits past `len` must be zero.
    pub fn from_words(words: Vec<u64>, len: usize) -> Result<Self> {
        if words.len() != len.div_ceil(WORD_BITS) {
            return Err(Error::Corrupt(format!(
                "{} payload words for {} bits, expected {}",
                words.len(),
                len,
                len.div_ceil(WORD_BITS)
            )));
        }
        if !len.is_multiple_of(WORD_BITS) {
            let tail = words[words.len() - 1] >> (len % WORD_BITS);
            if tail != 0 {
                return Err(Error::Corrupt("nonzero padding bits in payload".into()));
            }
        }
        Ok(Self { words, len })
    }

    /// Parses an ASCII `0`/`1` string.
    pub fn parse(bits: &[u8]) -> Result<Self> {
        let mut out = Self::with_capacity(bits.len());
        for (offset, &c) in bits.iter().enumerate() {
            match c {
                b'0' => out.push(false),
                b'1' => out.push(true),
                _ => {
                    return Err(Error::InvalidBit {
                        offset,
                        found: c as char,
                    })
                }
            }
        }
        Ok(out)
    }

    pub fn push(&mut self, bit: bool) {
        if self.len.is_multiple_of(WORD_BITS) {
            self.words.push(0);
        }
        if bit {
            self.words[self.len / WORD_BITS] |= 1 << (self.len % WORD_BITS);
        }
        self.len += 1;
    }

    /// Appends the low `count` bits of `bits`, lowest first.
    pub fn push_bits(&mut self, bits: u64, count: usize) {
        debug_assert!(count <= WORD_BITS);
        if count == 0 {
            return;
        }
        let bits = if count == WORD_BITS {
            bits
        } else {
            bits & ((1 << count) - 1)
        };
        let offset = self.len % WORD_BITS;
        if offset == 0 {
            self.words.push(bits);
        } else {
            *self.words.last_mut().unwrap() |= bits << offset;
            if offset + count > WORD_BITS {
                self.words.push(bits >> (WORD_BITS - offset));
            }
        }
        self.len += count;
    }

    pub fn push_run(&mut self, bit: bool, mut count: usize) {
        let fill = if bit { u64::MAX } else { 0 };
        while count > 0 {
            let step = count.min(WORD_BITS);
            self.push_bits(fill, step);
            count -= step;
        }
    }

    /// Bit at 1-based position `i`.
    pub fn get(&self, i: usize) -> bool {
        assert!(i >= 1 && i <= self.len, "bit position {i} out of range");
        let p = i - 1;
        (self.words[p / WORD_BITS] >> (p % WORD_BITS)) & 1 == 1
    }

    pub fn set(&mut self, i: usize, bit: bool) {
        assert!(i >= 1 && i <= self.len, "bit position {i} out of range");
        let p = i - 1;
        let mask = 1u64 << (p % WORD_BITS);
        if bit {
            self.words[p / WORD_BITS] |= mask;
        } else {
            self.words[p / WORD_BITS] &= !mask;
        }
    }

    /// Flips every bit (padding stays zero).
    pub fn invert(&mut self) {
        for w in &mut self.words {
            *w = !*w;
        }
        if !self.len.is_multiple_of(WORD_BITS) {
            let last = self.words.len() - 1;
            self.words[last] &= (1 << (self.len % WORD_BITS)) - 1;
        }
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn words(&self) -> &[u64] {
        &self.words
    }

    pub fn count_ones(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn iter(&self) -> impl Iterator<Item = bool> + '_ {
        (1..=self.len).map(move |i| self.get(i))
    }

    pub fn to_bit_string(&self) -> String {
        self.iter().map(|b| if b { '1' } else { '0' }).collect()
    }

    pub fn heap_bits(&self) -> usize {
        self.words.capacity() * WORD_BITS
    }
}

/// Bit array with a two-level rank directory.
///
/// Coarse entries hold the number of 1s before each 512-bit block; fine
/// entries hold the count before each 64-bit word, relative to its coarse
/// block. A query is two table lookups plus one popcount.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RankBitvector {
    bits: RawBits,
    coarse: Vec<u64>,
    fine: Vec<u16>,
}

impl RankBitvector {
    pub fn new(bits: RawBits) -> Self {
        let words = bits.words();
        // one entry per word plus a trailing sentinel, so rank1(len) needs no special case
        let mut coarse = Vec::with_capacity(words.len() / WORDS_PER_COARSE + 1);
        let mut fine = Vec::with_capacity(words.len() + 1);
        let mut total = 0u64;
        for w in 0..=words.len() {
            if w % WORDS_PER_COARSE == 0 {
                coarse.push(total);
            }
            fine.push((total - coarse[coarse.len() - 1]) as u16);
            if let Some(word) = words.get(w) {
                total += u64::from(word.count_ones());
            }
        }
        Self { bits, coarse, fine }
    }

    pub fn from_bit_str(bits: &str) -> Result<Self> {
        Ok(Self::new(RawBits::parse(bits.as_bytes())?))
    }

    pub fn len(&self) -> usize {
        self.bits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_empty()
    }

    /// Number of 1s among positions `1..=i`.
    #[inline]
    pub fn rank1(&self, i: usize) -> usize {
        RANK_CALLS.with(|c| c.set(c.get() + 1));
        assert!(
            i <= self.len(),
            "rank position {i} exceeds length {}",
            self.len()
        );
        let word = i / WORD_BITS;
        let offset = i % WORD_BITS;
        let mut r = self.coarse[word / WORDS_PER_COARSE] as usize + self.fine[word] as usize;
        if offset > 0 {
            let mask = (1u64 << offset) - 1;
            r += (self.bits.words()[word] & mask).count_ones() as usize;
        }
        r
    }

    /// Checked form of [`rank1`](Self::rank1).
    pub fn try_rank1(&self, i: usize) -> Result<usize> {
        if i > self.len() {
            return Err(Error::OutOfBounds {
                index: i,
                lo: 0,
                hi: self.len(),
            });
        }
        Ok(self.rank1(i))
    }

    /// Bit at 1-based position `i`.
    pub fn access(&self, i: usize) -> Result<bool> {
        if i == 0 || i > self.len() {
            return Err(Error::OutOfBounds {
                index: i,
                lo: 1,
                hi: self.len(),
            });
        }
        Ok(self.bits.get(i))
    }

    pub fn count_ones(&self) -> usize {
        self.bits.count_ones()
    }

    pub fn raw(&self) -> &RawBits {
        &self.bits
    }

    pub fn into_raw(self) -> RawBits {
        self.bits
    }

    pub fn payload_bits(&self) -> usize {
        self.bits.words().len() * WORD_BITS
    }

    /// Size of the rank directory in bits.
    pub fn directory_bits(&self) -> usize {
        self.coarse.len() * 64 + self.fine.len() * 16
    }

    pub fn to_bit_string(&self) -> String {
        self.bits.to_bit_string()
    }
}

/// Offset of the `k`-th (0-based) set bit of `word`, or `None` if it has fewer.
pub fn select_in_word(word: u64, k: u32) -> Option<u32> {
    if k >= word.count_ones() {
        return None;
    }
    let mut k = k;
    let mut base = 0;
    let mut w = word;
    loop {
        let byte = (w & 0xff) as u8;
        let c = byte.count_ones();
        if k < c {
            let mut b = byte;
            for _ in 0..k {
                b &= b - 1;
            }
            return Some(base + b.trailing_zeros());
        }
        k -= c;
        w >>= 8;
        base += 8;
    }
}
