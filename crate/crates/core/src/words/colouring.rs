use std::collections::hash_map::Entry;
use std::collections::HashMap;

use super::{encode_window, CyclicWord};
use crate::arith;
use crate::error::{Error, Result};

/// `n` robots with `k` LEDs each in `q` colours, read through an
/// `l`-symbol camera window.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Colouring {
    q: usize,
    k: usize,
    l: usize,
    words: Vec<CyclicWord>,
}

impl Colouring {
    pub fn new(q: usize, k: usize, l: usize, words: Vec<CyclicWord>) -> Result<Self> {
        if !(1..=256).contains(&q) {
            return Err(Error::InvalidInput(format!("alphabet size {q} out of range")));
        }
        if l == 0 || l > k {
            return Err(Error::InvalidInput(format!("need 1 <= l <= k, got l={l}, k={k}")));
        }
        if arith::checked_pow(q as u64, l as u32).is_none() {
            return Err(Error::TooLarge(format!("{q}^{l} windows")));
        }
        for (i, w) in words.iter().enumerate() {
            if w.len() != k {
                return Err(Error::InvalidInput(format!(
                    "word {i} has length {}, expected {k}",
                    w.len()
                )));
            }
            if w.max_symbol().is_some_and(|s| s as usize >= q) {
                return Err(Error::InvalidInput(format!("word {i} uses a symbol >= {q}")));
            }
        }
        Ok(Colouring { q, k, l, words })
    }

    pub fn q(&self) -> usize {
        self.q
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn l(&self) -> usize {
        self.l
    }

    pub fn n(&self) -> usize {
        self.words.len()
    }

    pub fn words(&self) -> &[CyclicWord] {
        &self.words
    }

    pub fn into_words(self) -> Vec<CyclicWord> {
        self.words
    }

    /// `q^l`, the number of vertices of dB(q, l).
    pub fn window_space(&self) -> u64 {
        (self.q as u64).pow(self.l as u32)
    }

    /// Same colouring with every word stored in its least rotation.
    pub fn canonicalized(&self) -> Colouring {
        Colouring {
            words: self.words.iter().map(CyclicWord::canonical).collect(),
            ..self.clone()
        }
    }

    /// Window keys of word `i` in rotation order.
    pub(crate) fn window_keys(&self, i: usize) -> impl Iterator<Item = u64> + '_ {
        let w = self.words[i].symbols();
        let q = self.q as u64;
        let space = self.window_space();
        let mut key = encode_window(w.iter().cycle().take(self.l).copied(), q);
        (0..self.k).map(move |r| {
            let out = key;
            key = (key % (space / q)) * q + w[(r + self.l) % self.k] as u64;
            out
        })
    }

    pub fn is_valid(&self) -> ValidityReport {
        self.scan(false)
    }

    pub fn is_optimal_partition(&self) -> bool {
        self.is_valid().valid && (self.n() * self.k) as u64 == self.window_space()
    }

    /// Identification-only check: window sets of different words must be
    /// disjoint; a word may repeat its own windows.
    pub fn check_identification(&self) -> ValidityReport {
        self.scan(true)
    }

    fn scan(&self, across_words_only: bool) -> ValidityReport {
        let mut seen: HashMap<u64, (usize, usize)> = HashMap::with_capacity(self.n() * self.k);
        let mut first_conflict = None;
        for i in 0..self.n() {
            for (r, key) in self.window_keys(i).enumerate() {
                match seen.entry(key) {
                    Entry::Vacant(v) => {
                        v.insert((i, r));
                    }
                    Entry::Occupied(o) => {
                        let prev = *o.get();
                        if first_conflict.is_none() && !(across_words_only && prev.0 == i) {
                            first_conflict = Some(Conflict {
                                window: self.words[i].window(r, self.l),
                                first: prev,
                                second: (i, r),
                            });
                        }
                    }
                }
            }
        }
        ValidityReport {
            valid: first_conflict.is_none(),
            window_count: seen.len(),
            first_conflict,
        }
    }
}

/// Two placements `(word index, rotation)` that show the same window.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Conflict {
    pub window: Vec<u8>,
    pub first: (usize, usize),
    pub second: (usize, usize),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ValidityReport {
    pub valid: bool,
    /// Number of distinct windows observed.
    pub window_count: usize,
    /// Earliest repeat in scan order (word index, then rotation).
    pub first_conflict: Option<Conflict>,
}

pub fn is_valid(c: &Colouring) -> ValidityReport {
    c.is_valid()
}

pub fn is_optimal_partition(c: &Colouring) -> bool {
    c.is_optimal_partition()
}

/// Exact lookup from an observed window to `(robot index, rotation)`.
#[derive(Clone, Debug)]
pub struct DecoderTable {
    q: usize,
    l: usize,
    entries: HashMap<u64, (usize, usize)>,
}

impl DecoderTable {
    pub fn build(c: &Colouring) -> Result<Self> {
        let report = c.is_valid();
        if let Some(conflict) = report.first_conflict {
            return Err(Error::InvalidColouring(format!(
                "window {:?} appears at {:?} and {:?}",
                conflict.window, conflict.first, conflict.second
            )));
        }
        let mut entries = HashMap::with_capacity(c.n() * c.k());
        for i in 0..c.n() {
            for (r, key) in c.window_keys(i).enumerate() {
                entries.insert(key, (i, r));
            }
        }
        Ok(DecoderTable { q: c.q(), l: c.l(), entries })
    }

    pub fn l(&self) -> usize {
        self.l
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn decode(&self, obs: &[u8]) -> Result<(usize, usize)> {
        if obs.len() != self.l || obs.iter().any(|&s| s as usize >= self.q) {
            return Err(Error::NotFound);
        }
        self.entries
            .get(&encode_window(obs.iter().copied(), self.q as u64))
            .copied()
            .ok_or(Error::NotFound)
    }
}

pub fn build_decoder(c: &Colouring) -> Result<DecoderTable> {
    DecoderTable::build(c)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn colouring(q: usize, k: usize, l: usize, words: &[&str]) -> Colouring {
        let words = words.iter().map(|s| CyclicWord::parse(s).unwrap()).collect();
        Colouring::new(q, k, l, words).unwrap()
    }

    fn fig2(l: usize) -> Colouring {
        colouring(2, 8, l, &["10111110", "01000001", "00110110", "00111001"])
    }

    /// Quadratic pairwise comparison of every placement.
    fn pairwise_valid(c: &Colouring) -> bool {
        let mut all = Vec::new();
        for w in c.words() {
            all.extend(w.windows(c.l()));
        }
        for i in 0..all.len() {
            for j in i + 1..all.len() {
                if all[i] == all[j] {
                    return false;
                }
            }
        }
        true
    }

    #[test]
    fn four_robot_example() {
        let c = fig2(5);
        let r = c.is_valid();
        assert!(r.valid, "{r:?}");
        assert_eq!(r.window_count, 32);
        assert!(c.is_optimal_partition());
        let d = DecoderTable::build(&c).unwrap();
        assert_eq!(d.decode(&[0, 0, 1, 0, 1]).unwrap().0, 1);
        assert!(matches!(d.decode(&[0, 0, 2, 0, 1]), Err(Error::NotFound)));
        assert!(matches!(d.decode(&[0, 0, 1]), Err(Error::NotFound)));
    }

    #[test]
    fn pigeonhole_failure() {
        let r = fig2(4).is_valid();
        assert!(!r.valid);
        assert!(r.window_count <= 16);
        assert!(matches!(DecoderTable::build(&fig2(4)), Err(Error::InvalidColouring(_))));
    }

    #[test]
    fn constant_word_conflicts_with_itself() {
        let c = colouring(2, 3, 3, &["000"]);
        let r = c.is_valid();
        assert!(!r.valid);
        let conflict = r.first_conflict.unwrap();
        assert_eq!(conflict.first, (0, 0));
        assert_eq!(conflict.second, (0, 1));
        assert_eq!(conflict.window, vec![0, 0, 0]);
        // but it is fine for identification
        assert!(c.check_identification().valid);
    }

    #[test]
    fn optimality_needs_full_cover() {
        let c = colouring(2, 4, 3, &["0011"]);
        assert!(c.is_valid().valid);
        assert!(!c.is_optimal_partition());
        let db = colouring(2, 8, 3, &["00010111"]);
        assert!(db.is_optimal_partition());
    }

    #[test]
    fn constructor_rejects_bad_shapes() {
        let w = vec![CyclicWord::parse("0120").unwrap()];
        assert!(Colouring::new(2, 4, 2, w.clone()).is_err());
        assert!(Colouring::new(3, 5, 2, w.clone()).is_err());
        assert!(Colouring::new(3, 4, 5, w).is_err());
    }

    fn arb_colouring() -> impl Strategy<Value = Colouring> {
        (2usize..4, 1usize..5).prop_flat_map(|(q, l)| {
            (l..l + 6).prop_flat_map(move |k| {
                prop::collection::vec(prop::collection::vec(0..q as u8, k), 1..6).prop_map(
                    move |ws| {
                        Colouring::new(q, k, l, ws.into_iter().map(CyclicWord::new).collect())
                            .unwrap()
                    },
                )
            })
        })
    }

    proptest! {
        #[test]
        fn checker_agrees_with_pairwise(c in arb_colouring()) {
            let r = c.is_valid();
            prop_assert_eq!(r.valid, pairwise_valid(&c));
            prop_assert_eq!(r.valid, r.window_count == c.n() * c.k());
            if r.valid {
                for w in c.words() {
                    prop_assert!(w.is_aperiodic());
                }
                let d = DecoderTable::build(&c).unwrap();
                for (i, w) in c.words().iter().enumerate() {
                    for r in 0..c.k() {
                        prop_assert_eq!(d.decode(&w.window(r, c.l())).unwrap(), (i, r));
                    }
                }
            }
        }
    }
}
