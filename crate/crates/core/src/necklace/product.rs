use crate::arith::{gcd, lcm};
use crate::error::{Error, Result};
use crate::par::{self, Exec};
use crate::words::{Colouring, CyclicWord};

use super::require_valid;

/// Pairs letters position by position: `(x, y)` becomes `x * q2 + y`.
pub fn merge(a: &[u8], b: &[u8], q2: usize) -> CyclicWord {
    debug_assert_eq!(a.len(), b.len());
    CyclicWord::new(
        a.iter()
            .zip(b)
            .map(|(&x, &y)| (x as usize * q2 + y as usize) as u8)
            .collect(),
    )
}

/// Product colouring over `q1 * q2` colours with `gcd(k1, k2) n1 n2` words of
/// length `lcm(k1, k2)`.
///
/// Each stored word is the necklace representative. For every pair of
/// necklaces (lexicographic by index) and every `j` in `0..gcd`, the output
/// merges `a` with `b` rotated left by `j`, both repeated to the common length.
pub fn product(a: &Colouring, b: &Colouring) -> Result<Colouring> {
    product_with(a, b, Exec::default())
}

pub fn product_with(a: &Colouring, b: &Colouring, exec: Exec) -> Result<Colouring> {
    if a.l() != b.l() {
        return Err(Error::WindowMismatch(a.l(), b.l()));
    }
    require_valid(a)?;
    require_valid(b)?;
    let q = a.q() * b.q();
    if q > 256 {
        return Err(Error::TooLarge(format!("{q} colours")));
    }
    let (k1, k2) = (a.k() as u64, b.k() as u64);
    let k = lcm(k1, k2) as usize;
    let g = gcd(k1, k2) as usize;
    let left: Vec<Vec<u8>> = a.words().iter().map(|w| w.repeat(k / a.k()).symbols().to_vec()).collect();
    let right: Vec<Vec<u8>> = b.words().iter().map(|w| w.repeat(k / b.k()).symbols().to_vec()).collect();
    let pairs: Vec<(usize, usize)> = (0..left.len())
        .flat_map(|i| (0..right.len()).map(move |j| (i, j)))
        .collect();
    let q2 = b.q();
    let words = par::flat_map(exec, &pairs, |&(i, j)| {
        (0..g)
            .map(|r| {
                let mut rot = right[j].clone();
                rot.rotate_left(r);
                merge(&left[i], &rot, q2)
            })
            .collect()
    });
    Colouring::new(q, k, a.l(), words)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lfsr::lfsr_translate;
    use crate::necklace::fkm_debruijn;
    use std::collections::BTreeSet;

    fn single(q: usize, l: usize, s: &str) -> Colouring {
        let w = CyclicWord::parse(s).unwrap();
        Colouring::new(q, w.len(), l, vec![w]).unwrap()
    }

    #[test]
    fn figure_pair() {
        let outer = single(2, 3, "00010111");
        let inner = single(2, 3, "01011100");
        let p = product(&outer, &inner).unwrap();
        assert_eq!((p.q(), p.k(), p.n()), (4, 8, 8));
        let got: BTreeSet<String> = p.canonicalized().words().iter().map(|w| w.to_string()).collect();
        let want: BTreeSet<String> = [
            "00030333", "10021233", "11020323", "11120232", "01130223", "10131222", "01031322",
            "00121332",
        ]
        .iter()
        .map(|s| CyclicWord::parse(s).unwrap().canonical().to_string())
        .collect();
        assert_eq!(got, want);
        assert!(p.is_optimal_partition());
    }

    #[test]
    fn fkm_squared() {
        let db = {
            let w = fkm_debruijn(2, 3);
            Colouring::new(2, 8, 3, vec![w]).unwrap()
        };
        let p = product(&db, &db).unwrap();
        assert_eq!(p.n(), 8);
        assert!(p.is_optimal_partition());
    }

    #[test]
    fn concluding_pipeline() {
        let two = lfsr_translate(2, 5, None).unwrap();
        let p = product(&two, &two).unwrap();
        assert_eq!((p.q(), p.k(), p.l(), p.n()), (4, 16, 5, 64));
        assert!(p.is_optimal_partition());
        assert_eq!(
            p.words().iter().map(|w| w.to_string()).collect::<Vec<_>>(),
            product_with(&two, &two, Exec::Sequential)
                .unwrap()
                .words()
                .iter()
                .map(|w| w.to_string())
                .collect::<Vec<_>>()
        );
    }

    #[test]
    fn unequal_lengths() {
        // k1 = 4, k2 = 6: gcd 2, lcm 12.
        let a = lfsr_translate(2, 3, None).unwrap();
        let b = crate::lfsr::lfsr_split(3, 2, 4, None).unwrap();
        let b6 = Colouring::new(3, 6, 2, vec![CyclicWord::parse("001122").unwrap()]);
        assert!(b6.is_ok());
        let p = product(&a, &b6.unwrap());
        // windows of length 3 vs 2 differ
        assert!(matches!(p, Err(Error::WindowMismatch(3, 2))));
        let a2 = Colouring::new(2, 4, 2, vec![CyclicWord::parse("0011").unwrap()]).unwrap();
        let p = product(&a2, &b).unwrap();
        assert_eq!((p.q(), p.k(), p.n()), (6, 4, 8));
        assert!(p.is_valid().valid);
        // b misses the zero vertex, so the product misses 4 windows
        assert_eq!(p.is_valid().window_count, 32);
        let c6 = Colouring::new(3, 6, 2, vec![CyclicWord::parse("001122").unwrap()]).unwrap();
        let p = product(&a2, &c6).unwrap();
        assert_eq!((p.k(), p.n()), (12, 2));
        assert!(p.is_valid().valid);
    }

    #[test]
    fn rejects_invalid_input() {
        let bad = single(2, 3, "0000");
        let good = single(2, 3, "00010111");
        assert!(matches!(product(&bad, &good), Err(Error::InvalidInput(_))));
    }
}
