//! Cyclic words, windows, and the colouring data model.
//!
//! A colouring assigns each robot a cyclic word of `k` symbols over `Z_q`;
//! the camera sees `l` consecutive symbols. Window `i` of a word is the
//! length-`l` prefix of its `i`-th left rotation, so window `i` is the de
//! Bruijn vertex reached after `i` steps around the word.

mod colouring;
mod counting;

use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};

pub use colouring::{
    build_decoder, is_optimal_partition, is_valid, Colouring, Conflict, DecoderTable,
    ValidityReport,
};
pub use counting::{
    debruijn_count, lll_lower_bound, moreau, necklace_count, upper_bound, CountingTables,
};

use crate::error::{Error, Result};
use crate::field::FieldElement;

/// Symbols are printed as `0-9a-z`; larger values (possible for in-memory
/// products) print as `?`.
pub fn symbol_char(s: u8) -> char {
    match s {
        0..=9 => (b'0' + s) as char,
        10..=35 => (b'a' + s - 10) as char,
        _ => '?',
    }
}

pub fn parse_symbol(c: char) -> Option<u8> {
    match c {
        '0'..='9' => Some(c as u8 - b'0'),
        'a'..='z' => Some(c as u8 - b'a' + 10),
        _ => None,
    }
}

/// Encodes a window as a base-`q` integer, first symbol most significant.
pub(crate) fn encode_window(symbols: impl IntoIterator<Item = u8>, q: u64) -> u64 {
    symbols
        .into_iter()
        .fold(0u64, |acc, s| acc * q + s as u64)
}

/// Index of the lexicographically least rotation (Booth's algorithm).
pub fn least_rotation(s: &[u8]) -> usize {
    let n = s.len();
    if n == 0 {
        return 0;
    }
    let mut fail = vec![-1isize; 2 * n];
    let mut k = 0usize;
    for j in 1..2 * n {
        let sj = s[j % n];
        let mut i = fail[j - k - 1];
        while i != -1 && sj != s[(k + i as usize + 1) % n] {
            if sj < s[(k + i as usize + 1) % n] {
                k = j - i as usize - 1;
            }
            i = fail[i as usize];
        }
        if i == -1 && sj != s[k % n] {
            if sj < s[k % n] {
                k = j;
            }
            fail[j - k] = -1;
        } else {
            fail[j - k] = i + 1;
        }
    }
    k % n
}

/// A word considered up to rotation.
///
/// The stored rotation is kept verbatim (constructions use it as the
/// necklace representative), but equality, ordering and hashing all go
/// through the canonical least rotation.
#[derive(Clone, Debug)]
pub struct CyclicWord {
    symbols: Vec<u8>,
}

impl CyclicWord {
    pub fn new(symbols: Vec<u8>) -> Self {
        CyclicWord { symbols }
    }

    /// Parses a `0-9a-z` string.
    pub fn parse(s: &str) -> Result<Self> {
        s.chars()
            .map(|c| {
                parse_symbol(c).ok_or_else(|| Error::InvalidInput(format!("bad symbol {c:?}")))
            })
            .collect::<Result<Vec<_>>>()
            .map(CyclicWord::new)
    }

    pub fn symbols(&self) -> &[u8] {
        &self.symbols
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    pub fn max_symbol(&self) -> Option<u8> {
        self.symbols.iter().copied().max()
    }

    /// Left rotation by `i` places (mod the length).
    pub fn rotate(&self, i: usize) -> CyclicWord {
        if self.is_empty() {
            return self.clone();
        }
        let mut v = self.symbols.clone();
        v.rotate_left(i % self.len());
        CyclicWord::new(v)
    }

    /// The `l` symbols starting at position `i`, wrapping as often as needed.
    pub fn window(&self, i: usize, l: usize) -> Vec<u8> {
        let k = self.len();
        (0..l).map(|j| self.symbols[(i + j) % k]).collect()
    }

    /// All `k` windows, in rotation order.
    pub fn windows(&self, l: usize) -> Vec<Vec<u8>> {
        (0..self.len()).map(|i| self.window(i, l)).collect()
    }

    pub fn canonical_symbols(&self) -> Vec<u8> {
        let mut v = self.symbols.clone();
        v.rotate_left(least_rotation(&self.symbols));
        v
    }

    pub fn canonical(&self) -> CyclicWord {
        CyclicWord::new(self.canonical_symbols())
    }

    /// Smallest `p > 0` with `rotate(p) == self` symbol-for-symbol.
    pub fn period(&self) -> usize {
        let k = self.len();
        if k == 0 {
            return 0;
        }
        // prefix function
        let mut pi = vec![0usize; k];
        for i in 1..k {
            let mut j = pi[i - 1];
            while j > 0 && self.symbols[i] != self.symbols[j] {
                j = pi[j - 1];
            }
            if self.symbols[i] == self.symbols[j] {
                j += 1;
            }
            pi[i] = j;
        }
        let p = k - pi[k - 1];
        if k.is_multiple_of(p) {
            p
        } else {
            k
        }
    }

    /// Number of distinct rotations.
    pub fn necklace_size(&self) -> usize {
        self.period()
    }

    pub fn is_aperiodic(&self) -> bool {
        self.period() == self.len()
    }

    /// The word traversed `times` times.
    pub fn repeat(&self, times: usize) -> CyclicWord {
        CyclicWord::new(self.symbols.repeat(times))
    }
}

impl PartialEq for CyclicWord {
    fn eq(&self, other: &Self) -> bool {
        self.len() == other.len() && self.canonical_symbols() == other.canonical_symbols()
    }
}

impl Eq for CyclicWord {}

impl Hash for CyclicWord {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.canonical_symbols().hash(state);
    }
}

impl PartialOrd for CyclicWord {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for CyclicWord {
    fn cmp(&self, other: &Self) -> Ordering {
        self.canonical_symbols().cmp(&other.canonical_symbols())
    }
}

impl fmt::Display for CyclicWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &s in &self.symbols {
            write!(f, "{}", symbol_char(s))?;
        }
        Ok(())
    }
}

impl std::str::FromStr for CyclicWord {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        CyclicWord::parse(s)
    }
}

/// Left rotation by `i`.
pub fn rotate(w: &CyclicWord, i: usize) -> CyclicWord {
    w.rotate(i)
}

pub fn window(w: &CyclicWord, i: usize, l: usize) -> Vec<u8> {
    w.window(i, l)
}

pub fn windows(w: &CyclicWord, l: usize) -> Vec<Vec<u8>> {
    w.windows(l)
}

/// Turns a closed walk of field states into the cyclic word of their leading
/// coordinates. Window `i` of the result is state `i`.
pub fn field_cycle_to_word(states: &[FieldElement]) -> Result<CyclicWord> {
    if states.is_empty() {
        return Err(Error::InvalidInput("empty state sequence".into()));
    }
    let n = states.len();
    for i in 0..n {
        let (a, b) = (states[i].coords(), states[(i + 1) % n].coords());
        if a.len() != b.len() || a.is_empty() || a[1..] != b[..b.len() - 1] {
            return Err(Error::NotAWalk { index: i });
        }
    }
    Ok(CyclicWord::new(states.iter().map(|s| s.coords()[0]).collect()))
}
