use crate::error::{Error, Result};

/// Number of bits needed to store any value in `0..=max`.
pub fn width_for(max: usize) -> u32 {
    usize::BITS - max.leading_zeros()
}

/// Fixed-width unsigned integers bit-packed into 64-bit words.
///
/// Entry `i` occupies bits `i * width .. (i + 1) * width`, least significant
/// bit first, and may straddle two words.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntVector {
    words: Vec<u64>,
    len: usize,
    width: u32,
}

impl IntVector {
    pub fn new(len: usize, width: u32) -> Self {
        assert!(width <= 64);
        Self {
            words: vec![0; Self::words_needed(len, width)],
            len,
            width,
        }
    }

    pub fn words_needed(len: usize, width: u32) -> usize {
        (len * width as usize).div_ceil(64)
    }

    pub fn from_words(words: Vec<u64>, len: usize, width: u32) -> Result<Self> {
        if width > 64 || words.len() != Self::words_needed(len, width) {
            return Err(Error::Corrupt(format!(
                "{} packed words for {len} entries of width {width}",
                words.len()
            )));
        }
        let used = len * width as usize;
        if !used.is_multiple_of(64) && words[words.len() - 1] >> (used % 64) != 0 {
            return Err(Error::Corrupt(
                "nonzero padding bits in packed array".into(),
            ));
        }
        Ok(Self { words, len, width })
    }

    pub fn from_values(values: &[u32], width: u32) -> Self {
        let mut v = Self::new(values.len(), width);
        for (i, &x) in values.iter().enumerate() {
            v.set(i, u64::from(x));
        }
        v
    }

    /// 0-based read.
    #[inline]
    pub fn get(&self, i: usize) -> u64 {
        debug_assert!(i < self.len);
        if self.width == 0 {
            return 0;
        }
        let bit = i * self.width as usize;
        let (w, off) = (bit / 64, bit % 64);
        let mask = self.mask();
        let mut v = self.words[w] >> off;
        if off + self.width as usize > 64 {
            v |= self.words[w + 1] << (64 - off);
        }
        v & mask
    }

    /// 0-based write; `value` must fit in the width.
    #[inline]
    pub fn set(&mut self, i: usize, value: u64) {
        debug_assert!(i < self.len);
        let mask = self.mask();
        assert!(
            value <= mask,
            "value {value} does not fit in {} bits",
            self.width
        );
        if self.width == 0 {
            return;
        }
        let bit = i * self.width as usize;
        let (w, off) = (bit / 64, bit % 64);
        self.words[w] = (self.words[w] & !(mask << off)) | (value << off);
        if off + self.width as usize > 64 {
            let spill = 64 - off;
            self.words[w + 1] = (self.words[w + 1] & !(mask >> spill)) | (value >> spill);
        }
    }

    fn mask(&self) -> u64 {
        if self.width == 64 {
            u64::MAX
        } else {
            (1 << self.width) - 1
        }
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn width(&self) -> u32 {
        self.width
    }

    pub fn words(&self) -> &[u64] {
        &self.words
    }

    pub fn iter(&self) -> impl Iterator<Item = u64> + '_ {
        (0..self.len).map(move |i| self.get(i))
    }

    pub fn heap_bits(&self) -> usize {
        self.words.capacity() * 64
    }
}
