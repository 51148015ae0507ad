//! Versioned binary index files.
//!
//! All integers are little-endian.
//!
//! ```text
//! offset  size  field
//! 0       4     magic "BJPM"
//! 4       1     version (1)
//! 5       1     flags, bit 0 = witness section present; other bits zero
//! 6       6     reserved, zero
//! 12      8     n (string length)
//! 20      8     rho (runs of 1s)
//! 28      ...   max-ones increment bits   } payload: u64 word count, then words;
//!         ...   min-ones increment bits   } bit k-1 of the stream is entry k
//! -- witness section, only when flag bit 0 is set --
//!         ...   source string bits (payload)
//!         ...   P_max, packed positions   } u64 word count, then words of
//!         ...   P_min, packed positions   } ceil(log2(n+1))-bit fields, LSB first
//! ```
//!
//! Padding bits past the last field must be zero. Rank directories are not
//! stored; they are rebuilt on load.

use std::fs::File;
use std::io::{self, BufReader, BufWriter, Read, Write};
use std::path::Path;

use crate::bits::{RankBitvector, RawBits};
use crate::error::{Error, Result};
use crate::index::JumbledIndex;
use crate::packed::{width_for, IntVector};
use crate::table::MonotoneBitvector;
use crate::witness::WitnessTables;

pub const MAGIC: &[u8; 4] = b"BJPM";
pub const VERSION: u8 = 1;
pub const FLAG_WITNESS: u8 = 1;
pub const HEADER_LEN: usize = 28;

fn write_u64<W: Write>(w: &mut W, v: u64) -> io::Result<()> {
    w.write_all(&v.to_le_bytes())
}

fn write_words<W: Write>(w: &mut W, words: &[u64]) -> io::Result<()> {
    write_u64(w, words.len() as u64)?;
    for &word in words {
        write_u64(w, word)?;
    }
    Ok(())
}

pub fn save<W: Write>(ix: &JumbledIndex, sink: &mut W) -> Result<()> {
    let flags = if ix.has_witnesses() { FLAG_WITNESS } else { 0 };
    let mut header = [0u8; 12];
    header[..4].copy_from_slice(MAGIC);
    header[4] = VERSION;
    header[5] = flags;
    sink.write_all(&header)?;
    write_u64(sink, ix.len() as u64)?;
    write_u64(sink, ix.rho() as u64)?;
    write_words(sink, ix.max_ones().raw().words())?;
    write_words(sink, ix.min_ones().raw().words())?;
    if let Some(w) = ix.witnesses() {
        write_words(sink, w.source().raw().words())?;
        write_words(sink, w.p_max_packed().words())?;
        write_words(sink, w.p_min_packed().words())?;
    }
    Ok(())
}

pub fn to_bytes(ix: &JumbledIndex) -> Vec<u8> {
    let mut out = Vec::new();
    save(ix, &mut out).expect("writing to a Vec cannot fail");
    out
}

pub fn save_to_path(ix: &JumbledIndex, path: impl AsRef<Path>) -> Result<()> {
    let mut w = BufWriter::new(File::create(path)?);
    save(ix, &mut w)?;
    w.flush()?;
    Ok(())
}

struct Reader<R> {
    inner: R,
}

impl<R: Read> Reader<R> {
    fn exact(&mut self, buf: &mut [u8], what: &str) -> Result<()> {
        self.inner.read_exact(buf).map_err(|e| match e.kind() {
            io::ErrorKind::UnexpectedEof => {
                Error::Corrupt(format!("truncated while reading {what}"))
            }
            _ => Error::Io(e),
        })
    }

    fn u64(&mut self, what: &str) -> Result<u64> {
        let mut b = [0u8; 8];
        self.exact(&mut b, what)?;
        Ok(u64::from_le_bytes(b))
    }

    /// Reads a word-count-prefixed payload whose count must be `expected`.
    fn words(&mut self, expected: usize, what: &str) -> Result<Vec<u64>> {
        let count = self.u64(what)?;
        if count != expected as u64 {
            return Err(Error::Corrupt(format!(
                "{what} has {count} words, expected {expected}"
            )));
        }
        let mut bytes = vec![0u8; expected * 8];
        self.exact(&mut bytes, what)?;
        Ok(bytes
            .chunks_exact(8)
            .map(|c| u64::from_le_bytes(c.try_into().unwrap()))
            .collect())
    }
}

pub fn load<R: Read>(source: &mut R) -> Result<JumbledIndex> {
    let mut r = Reader { inner: source };
    let mut header = [0u8; 12];
    r.inner
        .read_exact(&mut header)
        .map_err(|e| match e.kind() {
            io::ErrorKind::UnexpectedEof => Error::Format("file too short for a header".into()),
            _ => Error::Io(e),
        })?;
    if &header[..4] != MAGIC {
        return Err(Error::Format(format!("bad magic {:?}", &header[..4])));
    }
    if header[4] != VERSION {
        return Err(Error::Format(format!("unsupported version {}", header[4])));
    }
    let flags = header[5];
    if flags & !FLAG_WITNESS != 0 {
        return Err(Error::Format(format!("unknown flags {flags:#04x}")));
    }
    if header[6..].iter().any(|&b| b != 0) {
        return Err(Error::Format("reserved header bytes are not zero".into()));
    }
    let n = r.u64("length")?;
    let rho = r.u64("run count")?;
    if n > u64::from(u32::MAX) {
        return Err(Error::Corrupt(format!("declared length {n} is too large")));
    }
    let n = n as usize;
    if rho > (n as u64).div_ceil(2) {
        return Err(Error::Corrupt(format!(
            "{rho} runs of 1s cannot fit in {n} bits"
        )));
    }
    let bit_words = n.div_ceil(64);
    let max_bits = RawBits::from_words(r.words(bit_words, "max-ones payload")?, n)?;
    let min_bits = RawBits::from_words(r.words(bit_words, "min-ones payload")?, n)?;
    let witnesses = if flags & FLAG_WITNESS != 0 {
        let source = RawBits::from_words(r.words(bit_words, "source payload")?, n)?;
        let width = width_for(n);
        let packed_words = IntVector::words_needed(n, width);
        let p_max = IntVector::from_words(r.words(packed_words, "P_max")?, n, width)?;
        let p_min = IntVector::from_words(r.words(packed_words, "P_min")?, n, width)?;
        Some(WitnessTables::from_parts(
            p_max,
            p_min,
            RankBitvector::new(source),
        )?)
    } else {
        None
    };
    JumbledIndex::from_parts(
        n,
        rho as usize,
        MonotoneBitvector::from_raw(min_bits),
        MonotoneBitvector::from_raw(max_bits),
        witnesses,
    )
}

pub fn load_from_path(path: impl AsRef<Path>) -> Result<JumbledIndex> {
    load(&mut BufReader::new(File::open(path)?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::index::BuildOptions;

    fn example(witness: bool) -> JumbledIndex {
        JumbledIndex::from_bits(
            "010101110011",
            BuildOptions {
                witness,
                compact: false,
            },
        )
        .unwrap()
    }

    #[test]
    fn header_layout() {
        let bytes = to_bytes(&example(true));
        assert_eq!(&bytes[..4], b"BJPM");
        assert_eq!(bytes[4], 1);
        assert_eq!(bytes[5], 1);
        assert_eq!(&bytes[6..12], &[0; 6]);
        assert_eq!(u64::from_le_bytes(bytes[12..20].try_into().unwrap()), 12);
        assert_eq!(u64::from_le_bytes(bytes[20..28].try_into().unwrap()), 4);
        // max payload: one word holding 111010101010, bit 0 first
        assert_eq!(u64::from_le_bytes(bytes[28..36].try_into().unwrap()), 1);
        assert_eq!(
            u64::from_le_bytes(bytes[36..44].try_into().unwrap()),
            0b0101_0101_0111
        );
        // 3 payloads of 2 words, 2 packed tables of 12 x 4 bits = 1 word each
        assert_eq!(bytes.len(), HEADER_LEN + 5 * 16);
        assert_eq!(to_bytes(&example(false)).len(), HEADER_LEN + 2 * 16);
    }

    #[test]
    fn round_trip_keeps_answers() {
        for witness in [false, true] {
            let ix = example(witness);
            let bytes = to_bytes(&ix);
            let back = load(&mut bytes.as_slice()).unwrap();
            assert_eq!(back, ix);
            assert!(back.exists(2, 3));
            assert_eq!(back.range_of_ones(5).unwrap(), (2, 4));
            assert_eq!(to_bytes(&back), bytes);
        }
        assert_eq!(
            load(&mut to_bytes(&example(true)).as_slice())
                .unwrap()
                .witness(2, 3)
                .unwrap(),
            Some(2)
        );
    }

    #[test]
    fn empty_round_trip() {
        let ix = JumbledIndex::from_bits(
            "",
            BuildOptions {
                witness: true,
                compact: false,
            },
        )
        .unwrap();
        let back = load(&mut to_bytes(&ix).as_slice()).unwrap();
        assert_eq!(back.len(), 0);
        assert!(back.exists(0, 0));
    }

    #[test]
    fn rejects_bad_headers() {
        let good = to_bytes(&example(false));
        let mut bad = good.clone();
        bad[0] = b'X';
        assert!(matches!(load(&mut bad.as_slice()), Err(Error::Format(_))));
        let mut bad = good.clone();
        bad[4] = 2;
        assert!(matches!(load(&mut bad.as_slice()), Err(Error::Format(_))));
        let mut bad = good.clone();
        bad[5] = 0x80;
        assert!(matches!(load(&mut bad.as_slice()), Err(Error::Format(_))));
        let mut bad = good.clone();
        bad[9] = 1;
        assert!(matches!(load(&mut bad.as_slice()), Err(Error::Format(_))));
        assert!(matches!(load(&mut &good[..5]), Err(Error::Format(_))));
    }

    #[test]
    fn rejects_truncation_and_length_mismatch() {
        let good = to_bytes(&example(true));
        for cut in [HEADER_LEN - 3, HEADER_LEN + 4, good.len() - 1] {
            assert!(
                matches!(load(&mut &good[..cut]), Err(Error::Corrupt(_))),
                "cut {cut}"
            );
        }
        // witness flag set but section missing
        let plain = to_bytes(&example(false));
        let mut flagged = plain.clone();
        flagged[5] = FLAG_WITNESS;
        assert!(matches!(
            load(&mut flagged.as_slice()),
            Err(Error::Corrupt(_))
        ));
        // declared n disagrees with payload word counts
        let mut longer = plain.clone();
        longer[12..20].copy_from_slice(&100u64.to_le_bytes());
        assert!(matches!(
            load(&mut longer.as_slice()),
            Err(Error::Corrupt(_))
        ));
        // declared n inside the same word count leaves set bits in the padding
        let mut shorter = plain;
        shorter[12..20].copy_from_slice(&5u64.to_le_bytes());
        shorter[20..28].copy_from_slice(&2u64.to_le_bytes());
        assert!(matches!(
            load(&mut shorter.as_slice()),
            Err(Error::Corrupt(_))
        ));
    }

    #[test]
    fn rejects_inconsistent_witnesses() {
        let mut bytes = to_bytes(&example(true));
        // flip one bit of the stored source string
        let source_word = HEADER_LEN + 2 * 16 + 8;
        bytes[source_word] ^= 0b10;
        assert!(matches!(
            load(&mut bytes.as_slice()),
            Err(Error::Corrupt(_))
        ));
    }
}
