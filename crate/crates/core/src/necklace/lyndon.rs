use crate::words::CyclicWord;

/// Calls `visit` on every `q`-ary Lyndon word of length at most `n`, in
/// lexicographic order (Duval's successor rule).
pub(crate) fn for_each_lyndon(q: usize, n: usize, mut visit: impl FnMut(&[u8])) {
    if q == 0 || n == 0 {
        return;
    }
    let top = (q - 1) as u8;
    let mut w: Vec<u8> = vec![0];
    loop {
        visit(&w);
        let m = w.len();
        while w.len() < n {
            w.push(w[w.len() - m]);
        }
        while w.last() == Some(&top) {
            w.pop();
        }
        match w.last_mut() {
            Some(last) => *last += 1,
            None => break,
        }
    }
}

/// All `q`-ary Lyndon words of length exactly `n`, lexicographic.
pub fn lyndon_words(q: usize, n: usize) -> Vec<CyclicWord> {
    let mut out = Vec::new();
    for_each_lyndon(q, n, |w| {
        if w.len() == n {
            out.push(CyclicWord::new(w.to_vec()));
        }
    });
    out
}

/// Every necklace of length `n` as its least rotation, lexicographic.
pub fn necklaces(q: usize, n: usize) -> Vec<CyclicWord> {
    let mut out = Vec::new();
    for_each_lyndon(q, n, |w| {
        if n.is_multiple_of(w.len()) {
            out.push(CyclicWord::new(w.repeat(n / w.len())));
        }
    });
    out
}

/// The lexicographically least de Bruijn sequence of order `l`: the
/// concatenation of the Lyndon words whose length divides `l`.
pub fn fkm_debruijn(q: usize, l: usize) -> CyclicWord {
    let mut out = Vec::new();
    for_each_lyndon(q, l, |w| {
        if l.is_multiple_of(w.len()) {
            out.extend_from_slice(w);
        }
    });
    CyclicWord::new(out)
}
