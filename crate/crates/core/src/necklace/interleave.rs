use crate::error::{Error, Result};
use crate::par::{self, Exec};
use crate::words::{Colouring, CyclicWord};

use super::require_valid;

/// A rotation of one of a colouring's necklaces, remembering which necklace
/// (`source_index`) and how far it is turned from the stored representative
/// (`rotation`, the `psi` value).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RotationIndexedWord {
    pub word: CyclicWord,
    pub source_index: usize,
    pub rotation: usize,
}

/// The set `W` of all rotations of all words, grouped by source and ordered
/// by rotation. Fails if some word is periodic, since `psi` is then ambiguous.
pub fn rotation_index(c: &Colouring) -> Result<Vec<RotationIndexedWord>> {
    let mut out = Vec::with_capacity(c.n() * c.k());
    for (i, w) in c.words().iter().enumerate() {
        if !w.is_aperiodic() {
            return Err(Error::InvalidInput(format!("word {i} is periodic")));
        }
        for r in 0..c.k() {
            out.push(RotationIndexedWord {
                word: w.rotate(r),
                source_index: i,
                rotation: r,
            });
        }
    }
    Ok(out)
}

/// Round-robin interleaving `a11 a21 ... at1 a12 ...` of equal-length words.
pub fn interleave_words(parts: &[&[u8]]) -> CyclicWord {
    let k = parts.first().map_or(0, |p| p.len());
    debug_assert!(parts.iter().all(|p| p.len() == k));
    let mut out = Vec::with_capacity(k * parts.len());
    for j in 0..k {
        for p in parts {
            out.push(p[j]);
        }
    }
    CyclicWord::new(out)
}

/// Inverse of [`interleave_words`].
pub fn deinterleave(word: &[u8], t: usize) -> Vec<Vec<u8>> {
    (0..t).map(|i| word.iter().skip(i).step_by(t).copied().collect()).collect()
}

/// Rotation tuples `(psi_2, ..., psi_t)` in ascending lexicographic order
/// satisfying `keep`; `psi_1` is always 0.
fn rotation_tuples(k: usize, t: usize, keep: impl Fn(&[usize]) -> bool) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut psi = vec![0usize; t - 1];
    loop {
        if keep(&psi) {
            out.push(psi.clone());
        }
        let mut i = psi.len();
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            psi[i] += 1;
            if psi[i] < k {
                break;
            }
            psi[i] = 0;
        }
    }
}

/// Interleaves every source tuple (lexicographic) with every rotation tuple.
/// With `rightward`, word `i > 1` is turned right by `psi_i` instead of left.
fn interleave_by(
    c: &Colouring,
    t: usize,
    rotations: &[Vec<usize>],
    rightward: bool,
    exec: Exec,
) -> Result<Vec<CyclicWord>> {
    let n = c.n();
    let total = u32::try_from(t)
        .ok()
        .and_then(|t| n.checked_pow(t))
        .ok_or_else(|| Error::TooLarge(format!("{n}^{t} source tuples")))?;
    let sources: Vec<usize> = (0..total).collect();
    let k = c.k();
    let reps: Vec<&[u8]> = c.words().iter().map(|w| w.symbols()).collect();
    Ok(par::flat_map(exec, &sources, |&code| {
        // digits of `code` in base n, most significant first
        let mut idx = vec![0usize; t];
        let mut x = code;
        for slot in idx.iter_mut().rev() {
            *slot = x % n;
            x /= n;
        }
        rotations
            .iter()
            .map(|psi| {
                let parts: Vec<Vec<u8>> = (0..t)
                    .map(|i| {
                        let r = if i == 0 { 0 } else { psi[i - 1] % k };
                        let mut w = reps[idx[i]].to_vec();
                        if rightward {
                            w.rotate_right(r);
                        } else {
                            w.rotate_left(r);
                        }
                        w
                    })
                    .collect();
                let refs: Vec<&[u8]> = parts.iter().map(|p| p.as_slice()).collect();
                interleave_words(&refs)
            })
            .collect()
    }))
}

/// Interleaves every `t`-tuple of rotations with `psi_1 = 0` and
/// `sum psi = 0 (mod t)`: `n^t k^(t-1) / t` words of length `tk`, `(tl)`-valid.
///
/// Source tuples are enumerated lexicographically by word index; within a
/// tuple, rotation tuples ascend. Representatives are the stored rotations.
pub fn interleave(c: &Colouring, t: usize) -> Result<Colouring> {
    interleave_with(c, t, Exec::default())
}

pub fn interleave_with(c: &Colouring, t: usize, exec: Exec) -> Result<Colouring> {
    if t == 0 || !c.k().is_multiple_of(t) {
        return Err(Error::NotADivisor {
            k: t as u64,
            n: c.k() as u64,
        });
    }
    require_valid(c)?;
    let k = c.k();
    let rotations = rotation_tuples(k, t, |psi| psi.iter().sum::<usize>() % t == 0);
    let words = interleave_by(c, t, &rotations, false, exec)?;
    Colouring::new(c.q(), t * k, t * c.l(), words)
}

/// Pairs with `psi_1 = 0` and `psi_2 < (k - 1)/2`: `floor(k/2) n^2` words of
/// length `2k`, `(2l)`-valid for any `k` (useful when `k` is odd).
///
/// Here the second word is turned *right* by `psi_2`. The word for
/// `(a, b, j)` shows the aligned pairs `(a, b)` at offset `j` and `(b, a)` at
/// offset `-1 - j`; offsets `0..(k-1)/2` and their images never meet. Turning
/// left instead would make `(a, b, 0)` and `(b, a, 1)` share windows.
pub fn interleave_pair_odd(c: &Colouring) -> Result<Colouring> {
    interleave_pair_odd_with(c, Exec::default())
}

pub fn interleave_pair_odd_with(c: &Colouring, exec: Exec) -> Result<Colouring> {
    require_valid(c)?;
    let k = c.k();
    let rotations = rotation_tuples(k, 2, |psi| 2 * psi[0] + 1 < k);
    let words = interleave_by(c, 2, &rotations, true, exec)?;
    Colouring::new(c.q(), 2 * k, 2 * c.l(), words)
}
