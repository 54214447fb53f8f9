use super::poly;
use crate::arith;
use crate::error::{Error, Result};

/// `q = p^s` with `p` prime and `s >= 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct PrimePower {
    pub q: u64,
    pub p: u64,
    pub s: u32,
}

pub fn is_prime_power(n: u64) -> Option<PrimePower> {
    if n < 2 {
        return None;
    }
    match arith::factorize(n).as_slice() {
        [(p, s)] => Some(PrimePower { q: n, p: *p, s: *s }),
        _ => None,
    }
}

/// The field GF(q) on symbols `0..q`.
///
/// For `s > 1` a symbol encodes the polynomial `sum d_i x^i` over Z_p through
/// its base-`p` digits `d_i` (least significant first), reduced by the
/// lexicographically smallest primitive modulus of degree `s`.
#[derive(Clone, Debug)]
pub struct BaseField {
    prime_power: PrimePower,
    modulus: Option<Vec<u8>>,
    add: Vec<u8>,
    mul: Vec<u8>,
    neg: Vec<u8>,
    inv: Vec<u8>,
}

/// Largest alphabet a `u8` symbol can hold.
pub const MAX_BASE_ORDER: u64 = 256;

impl BaseField {
    pub fn new(q: u64) -> Result<Self> {
        let pp = is_prime_power(q).ok_or(Error::NotPrimePower(q))?;
        if q > MAX_BASE_ORDER {
            return Err(Error::TooLarge(format!("base field of order {q}")));
        }
        if pp.s == 1 {
            return Ok(Self::prime(pp));
        }
        let zp = Self::prime(PrimePower { q: pp.p, p: pp.p, s: 1 });
        let modulus = poly::find_primitive(&zp, pp.s as usize);
        let p = pp.p as usize;
        let s = pp.s as usize;
        let q = q as usize;
        let digits = |mut v: usize| -> Vec<u8> {
            (0..s)
                .map(|_| {
                    let d = (v % p) as u8;
                    v /= p;
                    d
                })
                .collect()
        };
        let undigits = |d: &[u8]| d.iter().rev().fold(0usize, |acc, &x| acc * p + x as usize);
        let mut add = vec![0u8; q * q];
        let mut mul = vec![0u8; q * q];
        for a in 0..q {
            let da = digits(a);
            for b in 0..q {
                let db = digits(b);
                let sum: Vec<u8> = da.iter().zip(&db).map(|(&x, &y)| zp.add(x, y)).collect();
                add[a * q + b] = undigits(&sum) as u8;
                mul[a * q + b] = undigits(&poly::mul_mod(&zp, &da, &db, &modulus)) as u8;
            }
        }
        Ok(Self::from_tables(pp, Some(modulus), add, mul))
    }

    fn prime(pp: PrimePower) -> Self {
        let p = pp.p as usize;
        let mut add = vec![0u8; p * p];
        let mut mul = vec![0u8; p * p];
        for a in 0..p {
            for b in 0..p {
                add[a * p + b] = ((a + b) % p) as u8;
                mul[a * p + b] = ((a * b) % p) as u8;
            }
        }
        Self::from_tables(pp, None, add, mul)
    }

    fn from_tables(pp: PrimePower, modulus: Option<Vec<u8>>, add: Vec<u8>, mul: Vec<u8>) -> Self {
        let q = pp.q as usize;
        let mut neg = vec![0u8; q];
        let mut inv = vec![0u8; q];
        for a in 0..q {
            for b in 0..q {
                if add[a * q + b] == 0 {
                    neg[a] = b as u8;
                }
                if mul[a * q + b] == 1 {
                    inv[a] = b as u8;
                }
            }
        }
        BaseField { prime_power: pp, modulus, add, mul, neg, inv }
    }

    pub fn prime_power(&self) -> PrimePower {
        self.prime_power
    }

    pub fn order(&self) -> usize {
        self.prime_power.q as usize
    }

    pub fn characteristic(&self) -> u64 {
        self.prime_power.p
    }

    /// Feedback coefficients of the modulus for `s > 1`.
    pub fn modulus(&self) -> Option<&[u8]> {
        self.modulus.as_deref()
    }

    #[inline]
    pub fn add(&self, a: u8, b: u8) -> u8 {
        self.add[a as usize * self.order() + b as usize]
    }

    #[inline]
    pub fn mul(&self, a: u8, b: u8) -> u8 {
        self.mul[a as usize * self.order() + b as usize]
    }

    #[inline]
    pub fn neg(&self, a: u8) -> u8 {
        self.neg[a as usize]
    }

    #[inline]
    pub fn sub(&self, a: u8, b: u8) -> u8 {
        self.add(a, self.neg(b))
    }

    pub fn inv(&self, a: u8) -> Result<u8> {
        if a == 0 {
            return Err(Error::DivisionByZero);
        }
        Ok(self.inv[a as usize])
    }
}

pub fn make_base_field(q: u64) -> Result<BaseField> {
    BaseField::new(q)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn check_axioms(f: &BaseField) {
        let q = f.order() as u8;
        for a in 0..q {
            assert_eq!(f.add(a, 0), a);
            assert_eq!(f.mul(a, 1), a);
            assert_eq!(f.add(a, f.neg(a)), 0);
            if a != 0 {
                assert_eq!(f.mul(a, f.inv(a).unwrap()), 1);
            }
            for b in 0..q {
                assert_eq!(f.add(a, b), f.add(b, a));
                assert_eq!(f.mul(a, b), f.mul(b, a));
                for c in 0..q {
                    assert_eq!(f.add(f.add(a, b), c), f.add(a, f.add(b, c)));
                    assert_eq!(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
                    assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
                }
            }
        }
    }

    #[test]
    fn prime_power_gate() {
        assert_eq!(is_prime_power(9), Some(PrimePower { q: 9, p: 3, s: 2 }));
        assert_eq!(is_prime_power(27), Some(PrimePower { q: 27, p: 3, s: 3 }));
        assert_eq!(is_prime_power(12), None);
        assert_eq!(is_prime_power(1), None);
    }

    #[test]
    fn every_small_field_satisfies_axioms() {
        for q in 2..=36 {
            match BaseField::new(q) {
                Ok(f) => check_axioms(&f),
                Err(Error::NotPrimePower(n)) => assert_eq!(n, q),
                Err(e) => panic!("{e}"),
            }
        }
    }

    #[test]
    fn gf4_layout() {
        let f = BaseField::new(4).unwrap();
        assert_eq!(f.modulus(), Some(&[1u8, 1][..]));
        assert_eq!(f.add(1, 1), 0);
        // x * x = x + 1
        assert_eq!(f.mul(2, 2), 3);
    }

    #[test]
    fn gf3_is_mod3() {
        let f = BaseField::new(3).unwrap();
        for a in 0..3u8 {
            for b in 0..3u8 {
                assert_eq!(f.add(a, b), (a + b) % 3);
                assert_eq!(f.mul(a, b), (a * b) % 3);
            }
        }
    }

    #[test]
    fn six_rejected() {
        assert!(matches!(BaseField::new(6), Err(Error::NotPrimePower(6))));
    }
}
