//! Word-level bit kernels shared by the set algebra and the search engines.

pub(crate) const WORD: usize = 64;

#[inline]
pub(crate) fn words_for(bits: usize) -> usize {
    bits.div_ceil(WORD)
}

#[inline]
pub(crate) fn low_mask(len: usize) -> u64 {
    if len >= WORD {
        u64::MAX
    } else {
        (1u64 << len) - 1
    }
}

/// Reads `len <= 64` bits starting at bit `pos`.
#[inline]
pub(crate) fn read_bits(src: &[u64], pos: usize, len: usize) -> u64 {
    debug_assert!(len <= WORD && len > 0);
    let w = pos / WORD;
    let b = pos % WORD;
    let mut v = src[w] >> b;
    if b != 0 && b + len > WORD {
        v |= src[w + 1] << (WORD - b);
    }
    v & low_mask(len)
}

/// ORs the low `len` bits of `val` into `dst` at bit `pos`.
#[inline]
pub(crate) fn or_bits(dst: &mut [u64], pos: usize, val: u64, len: usize) {
    let w = pos / WORD;
    let b = pos % WORD;
    dst[w] |= val << b;
    if b != 0 && b + len > WORD {
        dst[w + 1] |= val >> (WORD - b);
    }
}

/// ORs `src[src_pos .. src_pos + len]` into `dst[dst_pos ..]`.
pub(crate) fn or_range(dst: &mut [u64], dst_pos: usize, src: &[u64], src_pos: usize, len: usize) {
    let mut done = 0;
    while done < len {
        let chunk = (len - done).min(WORD);
        let v = read_bits(src, src_pos + done, chunk);
        if v != 0 {
            or_bits(dst, dst_pos + done, v, chunk);
        }
        done += chunk;
    }
}

pub(crate) fn range_is_empty(src: &[u64], pos: usize, len: usize) -> bool {
    let mut done = 0;
    while done < len {
        let chunk = (len - done).min(WORD);
        if read_bits(src, pos + done, chunk) != 0 {
            return false;
        }
        done += chunk;
    }
    true
}

/// Iterator over set bit positions of a word slice.
pub(crate) struct Ones<'a> {
    words: &'a [u64],
    index: usize,
    current: u64,
}

impl<'a> Ones<'a> {
    pub(crate) fn new(words: &'a [u64]) -> Self {
        Ones {
            words,
            index: 0,
            current: words.first().copied().unwrap_or(0),
        }
    }
}

impl Iterator for Ones<'_> {
    type Item = usize;

    #[inline]
    fn next(&mut self) -> Option<usize> {
        loop {
            if self.current != 0 {
                let tz = self.current.trailing_zeros() as usize;
                self.current &= self.current - 1;
                return Some(self.index * WORD + tz);
            }
            self.index += 1;
            if self.index >= self.words.len() {
                return None;
            }
            self.current = self.words[self.index];
        }
    }
}
