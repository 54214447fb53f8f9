//! Polynomial arithmetic over a base field, modulo a monic polynomial given
//! in feedback form `x^n = p_0 + p_1 x + ... + p_{n-1} x^{n-1}`.
//!
//! Polynomials are coefficient vectors, lowest degree first.

use super::BaseField;
use crate::arith;

/// Reduces `a` in place until its length is at most `feedback.len()`.
fn reduce(base: &BaseField, a: &mut Vec<u8>, feedback: &[u8]) {
    let n = feedback.len();
    while a.len() > n {
        let top = a.pop().unwrap();
        if top == 0 {
            continue;
        }
        let shift = a.len() - n;
        for (i, &p) in feedback.iter().enumerate() {
            let t = base.mul(top, p);
            a[shift + i] = base.add(a[shift + i], t);
        }
    }
    a.resize(n, 0);
}

pub fn mul_mod(base: &BaseField, a: &[u8], b: &[u8], feedback: &[u8]) -> Vec<u8> {
    let mut out = vec![0u8; a.len() + b.len()];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            let t = base.mul(x, y);
            out[i + j] = base.add(out[i + j], t);
        }
    }
    reduce(base, &mut out, feedback);
    out
}

/// `x^e` reduced modulo the feedback polynomial.
pub fn pow_x_mod(base: &BaseField, mut e: u64, feedback: &[u8]) -> Vec<u8> {
    let n = feedback.len();
    let mut x = vec![0u8, 1];
    reduce(base, &mut x, feedback);
    let mut acc = vec![0u8; n];
    acc[0] = 1;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(base, &acc, &x, feedback);
        }
        x = mul_mod(base, &x, &x, feedback);
        e >>= 1;
    }
    acc
}

fn is_one(v: &[u8]) -> bool {
    v[0] == 1 && v[1..].iter().all(|&c| c == 0)
}

/// True iff `x` has multiplicative order exactly `q^n - 1` modulo the
/// feedback polynomial, i.e. the polynomial is primitive.
pub fn is_primitive(base: &BaseField, feedback: &[u8]) -> bool {
    let n = feedback.len();
    if n == 0 || feedback[0] == 0 || feedback.iter().any(|&c| c as usize >= base.order()) {
        return false;
    }
    let Some(order) = arith::checked_pow(base.order() as u64, n as u32) else {
        return false;
    };
    let group = order - 1;
    if !is_one(&pow_x_mod(base, group, feedback)) {
        return false;
    }
    arith::prime_factors(group)
        .into_iter()
        .all(|r| !is_one(&pow_x_mod(base, group / r, feedback)))
}

/// The lexicographically smallest primitive feedback vector `(p_0, ..., p_{n-1})`.
pub fn find_primitive(base: &BaseField, n: usize) -> Vec<u8> {
    let q = base.order();
    let mut coeffs = vec![0u8; n];
    loop {
        if is_primitive(base, &coeffs) {
            return coeffs;
        }
        // Odometer with p_0 as the most significant digit.
        let mut i = n;
        loop {
            assert!(i > 0, "no primitive polynomial of degree {n} over GF({q})");
            i -= 1;
            coeffs[i] += 1;
            if (coeffs[i] as usize) < q {
                break;
            }
            coeffs[i] = 0;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gf2_quadratic() {
        let f2 = BaseField::new(2).unwrap();
        assert_eq!(find_primitive(&f2, 2), vec![1, 1]);
        assert!(!is_primitive(&f2, &[1, 0]));
    }

    #[test]
    fn degree_one() {
        let f2 = BaseField::new(2).unwrap();
        assert_eq!(find_primitive(&f2, 1), vec![1]);
        let f7 = BaseField::new(7).unwrap();
        // 3 generates Z_7^*; 2 has order 3.
        assert_eq!(find_primitive(&f7, 1), vec![3]);
    }

    #[test]
    fn reducible_rejected() {
        let f3 = BaseField::new(3).unwrap();
        assert!(!is_primitive(&f3, &[0, 1, 0]));
        assert!(is_primitive(&f3, &[2, 1, 0]));
    }
}
