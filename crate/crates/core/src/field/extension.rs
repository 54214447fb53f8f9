use std::fmt;

use super::{poly, BaseField};
use crate::arith;
use crate::error::{Error, Result};

/// Largest `q^l` for which log/antilog tables are built.
pub const MAX_TABLE_ORDER: u64 = 1 << 25;

/// Square matrix over a base field, row-major.
pub type Matrix = Vec<Vec<u8>>;

/// An element of GF(q^l) in Fibonacci-basis coordinates.
///
/// The coordinate word doubles as a vertex of the de Bruijn graph dB(q, l);
/// `coords()[0]` is the coefficient of the basis vector 1.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FieldElement(Vec<u8>);

impl FieldElement {
    pub fn coords(&self) -> &[u8] {
        &self.0
    }

    pub fn into_coords(self) -> Vec<u8> {
        self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&c| c == 0)
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &c in &self.0 {
            write!(f, "{}", crate::words::symbol_char(c))?;
        }
        Ok(())
    }
}

/// GF(q^l) built from a primitive feedback vector `(p_0, ..., p_{l-1})`,
/// where the primitive element satisfies `a^l = p_0 + p_1 a + ... + p_{l-1} a^{l-1}`.
///
/// Elements are stored internally by index: the coordinate word read as a
/// base-`q` number with the leftmost coordinate most significant. With that
/// encoding multiplication by the primitive element is a de Bruijn edge.
#[derive(Clone, Debug)]
pub struct ExtensionField {
    base: BaseField,
    degree: usize,
    feedback: Vec<u8>,
    order: usize,
    antilog: Vec<u32>,
    log: Vec<u32>,
}

impl ExtensionField {
    pub fn new(base: BaseField, degree: usize, coeffs: Option<&[u8]>) -> Result<Self> {
        if degree == 0 {
            return Err(Error::InvalidInput("field degree must be at least 1".into()));
        }
        let q = base.order() as u64;
        let order = arith::checked_pow(q, degree as u32)
            .filter(|&o| o <= MAX_TABLE_ORDER)
            .ok_or_else(|| Error::TooLarge(format!("GF({q}^{degree})")))?;
        let feedback = match coeffs {
            Some(c) => {
                if c.len() != degree || !poly::is_primitive(&base, c) {
                    return Err(Error::NotPrimitive(c.to_vec()));
                }
                c.to_vec()
            }
            None => poly::find_primitive(&base, degree),
        };
        let order = order as usize;
        let mut field = ExtensionField {
            base,
            degree,
            feedback,
            order,
            antilog: Vec::with_capacity(order - 1),
            log: vec![u32::MAX; order],
        };
        let one = field.one_index();
        let mut v = one;
        for i in 0..order - 1 {
            if field.log[v] != u32::MAX {
                return Err(Error::NotPrimitive(field.feedback));
            }
            field.log[v] = i as u32;
            field.antilog.push(v as u32);
            v = field.step_index(v);
        }
        if v != one {
            return Err(Error::NotPrimitive(field.feedback));
        }
        Ok(field)
    }

    pub fn base(&self) -> &BaseField {
        &self.base
    }

    pub fn q(&self) -> usize {
        self.base.order()
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn feedback(&self) -> &[u8] {
        &self.feedback
    }

    /// Number of elements, `q^l`.
    pub fn order(&self) -> usize {
        self.order
    }

    /// Order of the multiplicative group, `q^l - 1`.
    pub fn group_order(&self) -> usize {
        self.order - 1
    }

    // ---- index-level plumbing ----

    pub(crate) fn one_index(&self) -> usize {
        self.order / self.q()
    }

    pub(crate) fn coords_of(&self, mut idx: usize) -> Vec<u8> {
        let q = self.q();
        let mut out = vec![0u8; self.degree];
        for slot in out.iter_mut().rev() {
            *slot = (idx % q) as u8;
            idx /= q;
        }
        out
    }

    pub(crate) fn index_of(&self, e: &FieldElement) -> usize {
        assert_eq!(e.0.len(), self.degree, "element has the wrong number of coordinates");
        e.0.iter().fold(0usize, |acc, &c| acc * self.q() + c as usize)
    }

    pub(crate) fn element_at(&self, idx: usize) -> FieldElement {
        FieldElement(self.coords_of(idx))
    }

    /// Fibonacci shift on indices: drop the leading coordinate, append the feedback sum.
    pub(crate) fn step_index(&self, idx: usize) -> usize {
        let coords = self.coords_of(idx);
        let fb = coords
            .iter()
            .zip(&self.feedback)
            .fold(0u8, |acc, (&v, &p)| self.base.add(acc, self.base.mul(p, v)));
        (idx * self.q()) % self.order + fb as usize
    }

    pub(crate) fn add_index(&self, a: usize, b: usize) -> usize {
        let (ca, cb) = (self.coords_of(a), self.coords_of(b));
        ca.iter()
            .zip(&cb)
            .fold(0usize, |acc, (&x, &y)| acc * self.q() + self.base.add(x, y) as usize)
    }

    pub(crate) fn log_index(&self, idx: usize) -> Option<usize> {
        (idx != 0).then(|| self.log[idx] as usize)
    }

    pub(crate) fn antilog_index(&self, i: usize) -> usize {
        self.antilog[i % self.group_order()] as usize
    }

    pub(crate) fn mul_index(&self, a: usize, b: usize) -> usize {
        match (self.log_index(a), self.log_index(b)) {
            (Some(x), Some(y)) => self.antilog_index(x + y),
            _ => 0,
        }
    }

    // ---- element API ----

    pub fn element(&self, coords: &[u8]) -> Result<FieldElement> {
        if coords.len() != self.degree || coords.iter().any(|&c| c as usize >= self.q()) {
            return Err(Error::InvalidInput(format!(
                "{coords:?} is not a coordinate vector of GF({}^{})",
                self.q(),
                self.degree
            )));
        }
        Ok(FieldElement(coords.to_vec()))
    }

    pub fn zero(&self) -> FieldElement {
        FieldElement(vec![0; self.degree])
    }

    pub fn one(&self) -> FieldElement {
        self.scalar(1)
    }

    /// The primitive element.
    pub fn alpha(&self) -> FieldElement {
        self.element_at(self.antilog_index(1))
    }

    /// Embeds a base-field symbol.
    pub fn scalar(&self, e: u8) -> FieldElement {
        let mut v = vec![0; self.degree];
        v[0] = e;
        FieldElement(v)
    }

    /// `alpha * beta`, which is the out-edge `beta -> alpha beta` of dB(q, l).
    pub fn fib_step(&self, beta: &FieldElement) -> FieldElement {
        self.element_at(self.step_index(self.index_of(beta)))
    }

    pub fn add(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        FieldElement(a.0.iter().zip(&b.0).map(|(&x, &y)| self.base.add(x, y)).collect())
    }

    pub fn neg(&self, a: &FieldElement) -> FieldElement {
        FieldElement(a.0.iter().map(|&x| self.base.neg(x)).collect())
    }

    pub fn sub(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        self.add(a, &self.neg(b))
    }

    /// Adds `e` to the coordinate of the basis vector 1 only.
    pub fn scalar_add(&self, beta: &FieldElement, e: u8) -> FieldElement {
        let mut v = beta.0.clone();
        v[0] = self.base.add(v[0], e);
        FieldElement(v)
    }

    pub fn mul(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        self.element_at(self.mul_index(self.index_of(a), self.index_of(b)))
    }

    pub fn inv(&self, a: &FieldElement) -> Result<FieldElement> {
        let la = self.log_index(self.index_of(a)).ok_or(Error::DivisionByZero)?;
        Ok(self.element_at(self.antilog_index(self.group_order() - la)))
    }

    pub fn div(&self, a: &FieldElement, b: &FieldElement) -> Result<FieldElement> {
        Ok(self.mul(a, &self.inv(b)?))
    }

    pub fn pow(&self, beta: &FieldElement, n: i64) -> Result<FieldElement> {
        match self.log_index(self.index_of(beta)) {
            None if n > 0 => Ok(self.zero()),
            None if n == 0 => Ok(self.one()),
            None => Err(Error::DivisionByZero),
            Some(l) => {
                let g = self.group_order() as i128;
                let e = (l as i128 * n as i128).rem_euclid(g);
                Ok(self.element_at(self.antilog_index(e as usize)))
            }
        }
    }

    /// `i` with `alpha^i = beta`; equivalently the position of `beta` in the
    /// LFSR run started from 1.
    pub fn discrete_log(&self, beta: &FieldElement) -> Result<u64> {
        self.log_index(self.index_of(beta))
            .map(|l| l as u64)
            .ok_or(Error::LogOfZero)
    }

    /// `alpha^i`, with `i` taken modulo the group order.
    pub fn antilog(&self, i: u64) -> FieldElement {
        self.element_at(self.antilog_index((i % self.group_order() as u64) as usize))
    }

    /// `alpha^((q^l - 1) / k)`, an element of multiplicative order exactly `k`.
    pub fn element_of_order(&self, k: u64) -> Result<FieldElement> {
        let n = self.group_order() as u64;
        if k == 0 || !n.is_multiple_of(k) {
            return Err(Error::NotADivisor { k, n });
        }
        Ok(self.antilog(n / k))
    }

    /// The Galois state-change (companion) matrix `M`.
    pub fn companion_matrix(&self) -> Matrix {
        let l = self.degree;
        let mut m = vec![vec![0u8; l]; l];
        for i in 1..l {
            m[i][i - 1] = 1;
        }
        for (i, row) in m.iter_mut().enumerate() {
            row[l - 1] = self.feedback[i];
        }
        m
    }

    /// `C` with `C[i][j] = (M^i)[0][j]`, mapping Galois coordinates to
    /// Fibonacci coordinates.
    pub fn change_of_basis_matrix(&self) -> Matrix {
        let l = self.degree;
        let m = self.companion_matrix();
        let mut power = identity(l);
        let mut c = Vec::with_capacity(l);
        for _ in 0..l {
            c.push(power[0].clone());
            power = mat_mul(&self.base, &power, &m);
        }
        c
    }

    /// Converts polynomial-basis coordinates (coefficients of `1, alpha, ...`)
    /// into a Fibonacci-basis element.
    pub fn from_polynomial_basis(&self, poly: &[u8]) -> FieldElement {
        let c = self.change_of_basis_matrix();
        FieldElement(mat_vec(&self.base, &c, poly))
    }
}

pub fn identity(n: usize) -> Matrix {
    (0..n)
        .map(|i| (0..n).map(|j| (i == j) as u8).collect())
        .collect()
}

pub fn mat_mul(base: &BaseField, a: &Matrix, b: &Matrix) -> Matrix {
    let n = a.len();
    let m = b[0].len();
    let mut out = vec![vec![0u8; m]; n];
    for i in 0..n {
        for (k, brow) in b.iter().enumerate() {
            let x = a[i][k];
            if x == 0 {
                continue;
            }
            for j in 0..m {
                out[i][j] = base.add(out[i][j], base.mul(x, brow[j]));
            }
        }
    }
    out
}

pub fn mat_vec(base: &BaseField, a: &Matrix, v: &[u8]) -> Vec<u8> {
    a.iter()
        .map(|row| {
            row.iter()
                .zip(v)
                .fold(0u8, |acc, (&x, &y)| base.add(acc, base.mul(x, y)))
        })
        .collect()
}

pub fn transpose(a: &Matrix) -> Matrix {
    let n = a.len();
    let m = a[0].len();
    (0..m).map(|j| (0..n).map(|i| a[i][j]).collect()).collect()
}

pub fn find_primitive_coeffs(base: &BaseField, degree: usize) -> Vec<u8> {
    poly::find_primitive(base, degree)
}

pub fn make_extension_field(
    base: BaseField,
    degree: usize,
    coeffs: Option<&[u8]>,
) -> Result<ExtensionField> {
    ExtensionField::new(base, degree, coeffs)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gf27() -> ExtensionField {
        ExtensionField::new(BaseField::new(3).unwrap(), 3, Some(&[2, 1, 0])).unwrap()
    }

    #[test]
    fn gf27_stream_prefix() {
        let f = gf27();
        let one = f.one();
        assert_eq!(one.coords(), &[1, 0, 0]);
        assert_eq!(f.fib_step(&one).coords(), &[0, 0, 2]);
        let mut beta = one.clone();
        let mut firsts = String::new();
        for _ in 0..26 {
            firsts.push((b'0' + beta.coords()[0]) as char);
            beta = f.fib_step(&beta);
        }
        assert_eq!(beta, one);
        assert_eq!(firsts, "10020212210222001012112011");
    }

    #[test]
    fn gf27_logs() {
        let f = gf27();
        assert_eq!(f.discrete_log(&f.one()).unwrap(), 0);
        assert_eq!(f.discrete_log(&f.alpha()).unwrap(), 1);
        assert_eq!(f.discrete_log(&f.element(&[0, 2, 0]).unwrap()).unwrap(), 2);
        assert!(matches!(f.discrete_log(&f.zero()), Err(Error::LogOfZero)));
        assert_eq!(f.mul(&f.antilog(5), &f.antilog(21)), f.one());
        assert_eq!(f.order(), 27);
        assert_eq!(f.group_order(), 26);
    }

    #[test]
    fn reducible_override_rejected() {
        let r = ExtensionField::new(BaseField::new(3).unwrap(), 3, Some(&[0, 1, 0]));
        assert!(matches!(r, Err(Error::NotPrimitive(_))));
    }

    #[test]
    fn gf8_period_seven() {
        let f = ExtensionField::new(BaseField::new(2).unwrap(), 3, None).unwrap();
        let mut beta = f.alpha();
        let mut n = 1;
        while beta != f.one() {
            beta = f.fib_step(&beta);
            n += 1;
        }
        assert_eq!(n, 7);
    }

    #[test]
    fn degenerate_gf2() {
        let f = ExtensionField::new(BaseField::new(2).unwrap(), 1, None).unwrap();
        assert_eq!(f.feedback(), &[1]);
        assert_eq!(f.alpha(), f.one());
    }

    #[test]
    fn arithmetic_identities() {
        let f = gf27();
        let a = f.element(&[1, 0, 0]).unwrap();
        let b = f.element(&[2, 0, 0]).unwrap();
        assert!(f.add(&a, &b).is_zero());
        let c = f.element(&[0, 1, 2]).unwrap();
        assert_eq!(f.scalar_add(&c, 2).coords(), &[2, 1, 2]);
        assert_eq!(f.add(&c, &f.zero()), c);
        assert_eq!(f.mul(&c, &f.one()), c);
        assert_eq!(f.mul(&c, &f.inv(&c).unwrap()), f.one());
        assert!(matches!(f.inv(&f.zero()), Err(Error::DivisionByZero)));
        assert_eq!(f.pow(&f.alpha(), 26).unwrap(), f.one());
        assert_eq!(f.pow(&c, -1).unwrap(), f.inv(&c).unwrap());
        assert_eq!(f.pow(&f.zero(), 0).unwrap(), f.one());
        assert!(f.pow(&f.zero(), -2).is_err());
    }

    #[test]
    fn element_of_order_gf16() {
        let f = ExtensionField::new(BaseField::new(2).unwrap(), 4, None).unwrap();
        let b = f.element_of_order(5).unwrap();
        assert_eq!(b, f.pow(&f.alpha(), 3).unwrap());
        let mut x = b.clone();
        let mut order = 1;
        while x != f.one() {
            x = f.mul(&x, &b);
            order += 1;
        }
        assert_eq!(order, 5);
        assert_eq!(f.element_of_order(15).unwrap(), f.alpha());
        assert_eq!(f.element_of_order(1).unwrap(), f.one());
        assert!(matches!(f.element_of_order(7), Err(Error::NotADivisor { .. })));
    }

    #[test]
    fn gf27_change_of_basis() {
        let f = gf27();
        let c = f.change_of_basis_matrix();
        let m = f.companion_matrix();
        assert_eq!(c[0], vec![1, 0, 0]);
        assert_eq!(c, transpose(&c));
        assert_eq!(mat_mul(f.base(), &c, &m), mat_mul(f.base(), &transpose(&m), &c));
    }
}
