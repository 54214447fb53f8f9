//! Colourings from linear feedback shift registers over GF(q^l).
//!
//! Running the Fibonacci LFSR from 1 walks every nonzero vertex of dB(q, l).
//! From that single cycle we get a de Bruijn sequence (splice in the zero
//! vertex), `q - 1` disjoint short cycles (start at the scaled points
//! `alpha e / (alpha^k - 1)`), an optimal partition of dB(q, l) into `q`
//! cycles of length `q^(l-1)` (translate the LFSR circuit one level down),
//! and partitions of the nonzero vertices from elements of smaller order.

use crate::arith;
use crate::error::{Error, Result};
use crate::field::{is_prime_power, BaseField, ExtensionField, FieldElement};
use crate::words::{field_cycle_to_word, Colouring, CyclicWord};

fn build_field(q: u64, degree: usize, coeffs: Option<&[u8]>) -> Result<ExtensionField> {
    is_prime_power(q).ok_or(Error::NotPrimePower(q))?;
    ExtensionField::new(BaseField::new(q)?, degree, coeffs)
}

/// States `alpha^(start + i * stride)` for `i in 0..count`, as elements.
fn orbit(field: &ExtensionField, start: usize, stride: usize, count: usize) -> Vec<FieldElement> {
    (0..count)
        .map(|i| field.element_at(field.antilog_index(start + i * stride)))
        .collect()
}

/// De Bruijn sequence of order `l` from the LFSR run started at 1, with the
/// zero vertex spliced in right after state 1 (so the word contains `1 0^l`).
pub fn lfsr_debruijn(q: u64, l: usize, coeffs: Option<&[u8]>) -> Result<CyclicWord> {
    let field = build_field(q, l, coeffs)?;
    let mut states = orbit(&field, 0, 1, field.group_order());
    states.insert(1, field.zero());
    field_cycle_to_word(&states)
}

/// `q - 1` pairwise disjoint `k`-cycles in dB(q, l) for `k <= (q^l - 1)/(q - 1)`.
///
/// Cycle `e` (for each nonzero scalar `e`, ascending) runs the LFSR for `k`
/// steps from `alpha e / (alpha^k - 1)`; the closing edge back to the start
/// exists because that point differs from `alpha^(k-1)` times itself by a
/// scalar in the leading coordinate only.
///
/// For `q = 2` and `k = 2^l - 1` the denominator vanishes; the single cycle
/// is then the full LFSR run from 1.
pub fn lfsr_split(q: u64, l: usize, k: u64, coeffs: Option<&[u8]>) -> Result<Colouring> {
    let field = build_field(q, l, coeffs)?;
    let n = field.group_order() as u64;
    let m = n / (q - 1);
    if k > m {
        return Err(Error::KTooLarge { k, max: m });
    }
    if k < l as u64 {
        return Err(Error::InvalidInput(format!(
            "cycle length {k} is shorter than the window {l}"
        )));
    }
    let k_us = k as usize;
    let alpha_k = field.antilog_index(k_us);
    let words = if alpha_k == field.one_index() {
        vec![field_cycle_to_word(&orbit(&field, 0, 1, k_us))?]
    } else {
        let neg_one = field.index_of(&field.neg(&field.one()));
        let denom = field.add_index(alpha_k, neg_one);
        let log_denom = field.log_index(denom).expect("alpha^k != 1");
        let g = field.group_order();
        (1..q as u8)
            .map(|e| {
                let log_e = field.log_index(field.index_of(&field.scalar(e))).unwrap();
                let start = (1 + log_e + g - log_denom) % g;
                field_cycle_to_word(&orbit(&field, start, 1, k_us))
            })
            .collect::<Result<Vec<_>>>()?
    };
    Colouring::new(q as usize, k_us, l, words)
}

/// The fixed points `phi_e = alpha e / (1 - alpha)` of the affine maps
/// `xi_e(beta) = alpha beta + alpha e`, one per scalar `e`.
///
/// The edges `beta -> xi_e(beta)` for a fixed `e` form the class `P_e`; the
/// classes partition the edges of dB(q, l) and translation by `phi_e` maps
/// `P_0` onto `P_e`.
#[derive(Clone, Debug)]
pub struct TranslationSystem {
    field: ExtensionField,
    fixed_points: Vec<FieldElement>,
}

impl TranslationSystem {
    pub fn new(field: ExtensionField) -> Result<Self> {
        let alpha = field.alpha();
        if alpha == field.one() {
            return Err(Error::DegenerateField {
                q: field.q() as u64,
                degree: field.degree(),
            });
        }
        let one_minus_alpha = field.sub(&field.one(), &alpha);
        let fixed_points = (0..field.q() as u8)
            .map(|e| {
                let num = field.mul(&alpha, &field.scalar(e));
                field.div(&num, &one_minus_alpha)
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(TranslationSystem { field, fixed_points })
    }

    pub fn field(&self) -> &ExtensionField {
        &self.field
    }

    pub fn fixed_point(&self, e: u8) -> &FieldElement {
        &self.fixed_points[e as usize]
    }

    pub fn xi(&self, e: u8, beta: &FieldElement) -> FieldElement {
        let f = &self.field;
        let alpha = f.alpha();
        f.add(&f.mul(&alpha, beta), &f.mul(&alpha, &f.scalar(e)))
    }

    /// Which class `P_e` the de Bruijn edge `from -> to` belongs to.
    pub fn edge_class(&self, from: &FieldElement, to: &FieldElement) -> Option<u8> {
        (0..self.field.q() as u8).find(|&e| &self.xi(e, from) == to)
    }
}

/// `q` cycles of length `q^(l-1)` partitioning dB(q, l).
///
/// The LFSR cycle of the degree-`(l-1)` field is a circuit in dB(q, l-1)
/// using every edge of `P_0` except the loop at 0. Its translate by `phi_e`
/// lies in `P_e`; inserting one loop `(phi_f, phi_f)` with `f != e` into each
/// translate (first occurrence, scanning from the translate of 1) completes
/// `q` edge-disjoint circuits covering every edge, i.e. `q` vertex-disjoint
/// cycles one level up.
///
/// Output word `j` is the translate whose edges append `j` more than the
/// plain LFSR step would (class `P_(j/p_0)`), and it receives the loop of
/// word `j + 1`. With `p_0 = 1` this is simply `C_j` with loop `phi_(j+1)`.
///
/// `coeffs`, when given, are feedback coefficients of the degree-`(l-1)`
/// field. For `l = 1` the answer is the `q` loops.
pub fn lfsr_translate(q: u64, l: usize, coeffs: Option<&[u8]>) -> Result<Colouring> {
    if l == 0 {
        return Err(Error::InvalidInput("window length must be at least 1".into()));
    }
    is_prime_power(q).ok_or(Error::NotPrimePower(q))?;
    if l == 1 {
        let words = (0..q as u8).map(|e| CyclicWord::new(vec![e])).collect();
        return Colouring::new(q as usize, 1, 1, words);
    }
    let system = TranslationSystem::new(build_field(q, l - 1, coeffs)?)?;
    let field = system.field();
    let base = field.base();
    let cycle: Vec<usize> = (0..field.group_order()).map(|i| field.antilog_index(i)).collect();
    let label = base.inv(field.feedback()[0])?;
    let mut words = Vec::with_capacity(q as usize);
    for j in 0..q as u8 {
        let e = base.mul(j, label);
        let f = base.mul(base.add(j, 1), label);
        let shift = field.index_of(system.fixed_point(e));
        let mut states: Vec<usize> = cycle.iter().map(|&v| field.add_index(v, shift)).collect();
        let target = field.index_of(system.fixed_point(f));
        let pos = states
            .iter()
            .position(|&v| v == target)
            .expect("translated cycle misses a nonzero vertex");
        states.insert(pos + 1, target);
        let elems: Vec<_> = states.into_iter().map(|v| field.element_at(v)).collect();
        words.push(field_cycle_to_word(&elems)?);
    }
    Colouring::new(q as usize, field.order(), l, words)
}

/// `(q^l - 1)/k` disjoint `k`-cycles covering every nonzero vertex of
/// dB(q, l), from an element `beta` of order `k` outside every proper subfield.
///
/// Word `j` is the output of the LFSR driven by `beta` on the coset
/// `alpha^j <beta>`: symbol `i` is the leading Fibonacci coordinate of
/// `beta^i alpha^j = alpha^(j + i (q^l - 1)/k)`. Because `1, beta, ...,
/// beta^(l-1)` is a basis, each window determines its field element, so
/// windows never repeat across the cosets.
pub fn nonprimitive_cycles(q: u64, l: usize, k: u64, coeffs: Option<&[u8]>) -> Result<Colouring> {
    let field = build_field(q, l, coeffs)?;
    let order = field.group_order() as u64;
    if k == 0 || !order.is_multiple_of(k) {
        return Err(Error::NotADivisor { k, n: order });
    }
    for i in 1..l as u32 {
        if (q.pow(i) - 1) % k == 0 {
            return Err(Error::OrderTooSmall { k, q, i });
        }
    }
    if k < l as u64 {
        return Err(Error::InvalidInput(format!(
            "cycle length {k} is shorter than the window {l}"
        )));
    }
    let cosets = (order / k) as usize;
    let stride = cosets;
    let lead = field.order() / field.q();
    let words = (0..cosets)
        .map(|j| {
            CyclicWord::new(
                (0..k as usize)
                    .map(|i| (field.antilog_index(j + i * stride) / lead) as u8)
                    .collect(),
            )
        })
        .collect();
    Colouring::new(q as usize, k as usize, l, words)
}

/// Every divisor `k > 1` of `q^l - 1` that divides no `q^i - 1` with `i < l`,
/// ascending. These are exactly the cycle lengths [`nonprimitive_cycles`] accepts.
pub fn zsigmondy_ks(q: u64, l: usize) -> Result<Vec<u64>> {
    let order = u32::try_from(l)
        .ok()
        .and_then(|l| arith::checked_pow(q, l))
        .ok_or(Error::Overflow)?
        - 1;
    if order == 0 {
        return Ok(Vec::new());
    }
    Ok(arith::divisors(order)
        .into_iter()
        .filter(|&k| k > 1 && (1..l as u32).all(|i| (q.pow(i) - 1) % k != 0))
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashSet;

    fn strings(c: &Colouring) -> Vec<String> {
        c.words().iter().map(|w| w.to_string()).collect()
    }

    #[test]
    fn debruijn_small() {
        let w = lfsr_debruijn(2, 1, None).unwrap();
        assert_eq!(w, CyclicWord::parse("01").unwrap());
        for (q, l) in [(2u64, 3usize), (2, 5), (3, 2), (4, 2), (5, 3)] {
            let w = lfsr_debruijn(q, l, None).unwrap();
            assert_eq!(w.len() as u64, q.pow(l as u32));
            let c = Colouring::new(q as usize, w.len(), l, vec![w.clone()]).unwrap();
            assert!(c.is_optimal_partition(), "({q},{l})");
            let mut factor = vec![1u8];
            factor.extend(std::iter::repeat_n(0, l));
            assert_eq!(w.window(0, l + 1), factor);
        }
    }

    #[test]
    fn debruijn_gf27_override() {
        let w = lfsr_debruijn(3, 3, Some(&[2, 1, 0])).unwrap();
        assert_eq!(w.to_string(), "100020212210222001012112011");
        let c = Colouring::new(3, 27, 3, vec![w]).unwrap();
        assert!(c.is_optimal_partition());
    }

    #[test]
    fn split_examples() {
        let c = lfsr_split(3, 2, 4, None).unwrap();
        assert_eq!((c.n(), c.k()), (2, 4));
        assert!(c.is_valid().valid);
        assert_eq!(c.is_valid().window_count, 8);

        let c = lfsr_split(5, 2, 6, None).unwrap();
        assert_eq!((c.n(), c.k()), (4, 6));
        assert!(c.is_valid().valid);

        let c = lfsr_split(2, 4, 9, None).unwrap();
        assert_eq!(c.n(), 1);
        assert!(c.is_valid().valid);

        let c = lfsr_split(2, 4, 15, None).unwrap();
        assert_eq!(c.n(), 1);
        assert!(c.is_valid().valid);

        assert!(matches!(lfsr_split(3, 2, 5, None), Err(Error::KTooLarge { k: 5, max: 4 })));
        assert!(matches!(lfsr_split(6, 2, 3, None), Err(Error::NotPrimePower(6))));
    }

    #[test]
    fn split_cycles_are_lfsr_runs() {
        // Each word's windows are consecutive powers of alpha times a start point.
        let field = build_field(4, 2, None).unwrap();
        let c = lfsr_split(4, 2, 5, None).unwrap();
        for w in c.words() {
            let states: Vec<_> = w.windows(2).iter().map(|v| field.element(v).unwrap()).collect();
            for i in 0..states.len() - 1 {
                assert_eq!(field.fib_step(&states[i]), states[i + 1]);
            }
        }
    }

    #[test]
    fn translate_worked_example() {
        let c = lfsr_translate(3, 4, Some(&[2, 1, 0])).unwrap();
        assert_eq!(
            strings(&c),
            vec![
                "100202122102220010121120111",
                "211010200210001121202201222",
                "022121011021112202010012000"
            ]
        );
        assert!(c.is_optimal_partition());
    }

    #[test]
    fn translate_loops_and_degenerate() {
        let c = lfsr_translate(5, 1, None).unwrap();
        assert_eq!(strings(&c), vec!["0", "1", "2", "3", "4"]);
        assert!(c.is_optimal_partition());
        assert!(matches!(lfsr_translate(2, 2, None), Err(Error::DegenerateField { .. })));
        let c = lfsr_translate(2, 5, None).unwrap();
        assert_eq!((c.n(), c.k()), (2, 16));
        assert!(c.is_optimal_partition());
    }

    #[test]
    fn translate_family() {
        for q in [2u64, 3, 4, 5, 7, 8, 9] {
            for l in 1..=14usize {
                if q.pow(l as u32) > 1 << 14 {
                    break;
                }
                if (q, l) == (2, 2) {
                    continue;
                }
                let c = lfsr_translate(q, l, None).unwrap();
                assert_eq!(c.n() as u64, q);
                assert!(c.is_optimal_partition(), "({q},{l})");
            }
        }
    }

    #[test]
    fn translation_edge_classes() {
        // Every edge of dB(3,2) appears exactly once, and each circuit uses
        // its own class P_e apart from the inserted loop.
        let c = lfsr_translate(3, 3, None).unwrap();
        let system = TranslationSystem::new(build_field(3, 2, None).unwrap()).unwrap();
        let f = system.field();
        let mut edges = HashSet::new();
        let label = f.base().inv(f.feedback()[0]).unwrap();
        for (j, w) in c.words().iter().enumerate() {
            let e = f.base().mul(j as u8, label);
            for win in w.windows(3) {
                assert!(edges.insert(win.clone()));
                let from = f.element(&win[..2]).unwrap();
                let to = f.element(&win[1..]).unwrap();
                let class = system.edge_class(&from, &to).unwrap();
                let loop_at = system.fixed_point(f.base().mul(f.base().add(j as u8, 1), label));
                assert!(class == e || (&from == loop_at && &to == loop_at));
            }
        }
        assert_eq!(edges.len(), 27);
        for e in 0..3u8 {
            let phi = system.fixed_point(e);
            assert_eq!(&system.xi(e, phi), phi);
        }
    }

    #[test]
    fn nonprimitive_examples() {
        for (q, l, k, n) in [(2u64, 4usize, 5u64, 3usize), (2, 6, 9, 7), (3, 3, 13, 2), (3, 2, 8, 1)] {
            let c = nonprimitive_cycles(q, l, k, None).unwrap();
            assert_eq!(c.n(), n);
            let r = c.is_valid();
            assert!(r.valid, "({q},{l},{k})");
            assert_eq!(r.window_count as u64, q.pow(l as u32) - 1);
        }
        assert!(matches!(nonprimitive_cycles(2, 4, 3, None), Err(Error::OrderTooSmall { .. })));
        assert!(matches!(nonprimitive_cycles(2, 4, 7, None), Err(Error::NotADivisor { .. })));
    }

    #[test]
    fn primitive_case_is_the_full_run() {
        let c = nonprimitive_cycles(3, 2, 8, None).unwrap();
        let full = lfsr_split(3, 2, 4, None).unwrap();
        let run: Vec<u8> = {
            let f = build_field(3, 2, None).unwrap();
            (0..8).map(|i| f.antilog(i).coords()[0]).collect()
        };
        assert_eq!(c.words()[0].symbols(), &run[..]);
        assert_eq!(full.q(), 3);
    }

    #[test]
    fn zsigmondy_lists() {
        assert_eq!(zsigmondy_ks(2, 4).unwrap(), vec![5, 15]);
        assert_eq!(zsigmondy_ks(2, 6).unwrap(), vec![9, 21, 63]);
        assert_eq!(zsigmondy_ks(3, 2).unwrap(), vec![4, 8]);
        for k in zsigmondy_ks(2, 6).unwrap() {
            assert!(nonprimitive_cycles(2, 6, k, None).unwrap().is_valid().valid);
        }
    }

    #[test]
    fn deterministic() {
        assert_eq!(
            strings(&lfsr_translate(4, 3, None).unwrap()),
            strings(&lfsr_translate(4, 3, None).unwrap())
        );
    }
}
