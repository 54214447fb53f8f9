//! Bounds on the robot number and the classical counting formulas.

use crate::arith::{self, divisors};
use crate::error::{Error, Result};

pub use crate::arith::CountingTables;

fn pow(q: u64, l: u64) -> Result<u64> {
    u32::try_from(l)
        .ok()
        .and_then(|l| arith::checked_pow(q, l))
        .ok_or(Error::Overflow)
}

/// `floor(q^l / k)`: every robot uses `k` distinct windows out of `q^l`.
pub fn upper_bound(q: u64, k: u64, l: u64) -> Result<u64> {
    if k == 0 {
        return Err(Error::InvalidInput("k must be positive".into()));
    }
    Ok(pow(q, l)? / k)
}

/// Exact rational brackets around Euler's number from the first 18 terms of
/// `sum 1/i!`: `E_LO = E_NUM / E_DEN < e < (E_NUM * 17 + 1) / (E_DEN * 17)`.
const E_DEN: u128 = 355_687_428_096_000; // 17!
const E_NUM: u128 = {
    let mut num = 0u128;
    let mut term = E_DEN;
    let mut i = 0u128;
    while i <= 17 {
        num += term;
        i += 1;
        if i <= 17 {
            term /= i;
        }
    }
    num
};

/// `floor(q^l / ((2l - 1) e k))`, the random-colouring guarantee.
///
/// The floor is computed in floating point and then confirmed against exact
/// rational brackets on `e`, so results next to an integer boundary are exact.
pub fn lll_lower_bound(q: u64, k: u64, l: u64) -> Result<u64> {
    if k == 0 || l == 0 {
        return Err(Error::InvalidInput("k and l must be positive".into()));
    }
    let space = pow(q, l)? as u128;
    let denom = (2 * l as u128 - 1)
        .checked_mul(k as u128)
        .ok_or(Error::Overflow)?;
    // Does n * denom * e <= space hold?
    let fits = |n: u128| -> bool {
        let lhs = n * denom;
        let hi = lhs
            .checked_mul(E_NUM * 17 + 1)
            .zip(space.checked_mul(E_DEN * 17));
        let lo = lhs.checked_mul(E_NUM).zip(space.checked_mul(E_DEN));
        match (hi, lo) {
            (Some((a, b)), _) if a <= b => true,
            (_, Some((a, b))) if a > b => false,
            _ => (n as f64) * (denom as f64) * std::f64::consts::E <= space as f64,
        }
    };
    let mut n = (space as f64 / (denom as f64 * std::f64::consts::E)).floor() as u128;
    while fits(n + 1) {
        n += 1;
    }
    while n > 0 && !fits(n) {
        n -= 1;
    }
    u64::try_from(n).map_err(|_| Error::Overflow)
}

/// Number of aperiodic `q`-ary necklaces of length `t`.
pub fn moreau(q: u64, t: u64) -> Result<u64> {
    if t == 0 {
        return Err(Error::InvalidInput("t must be positive".into()));
    }
    let mut sum: i128 = 0;
    for d in divisors(t) {
        let term = pow(q, d)? as i128;
        sum += arith::mobius(t / d) as i128 * term;
    }
    u64::try_from(sum / t as i128).map_err(|_| Error::Overflow)
}

/// Number of `q`-ary necklaces of length `l`, via the totient sum.
pub fn necklace_count(q: u64, l: u64) -> Result<u64> {
    if l == 0 {
        return Err(Error::InvalidInput("l must be positive".into()));
    }
    let mut sum: u128 = 0;
    for d in divisors(l) {
        sum += arith::totient(l / d) as u128 * pow(q, d)? as u128;
    }
    u64::try_from(sum / l as u128).map_err(|_| Error::Overflow)
}

/// `(q!)^(q^(l-1)) / q^l`, the number of de Bruijn cycles of order `l`.
///
/// Evaluated as `q^(q^(l-1) - l) * ((q-1)!)^(q^(l-1))`, which is exact and
/// avoids the oversized numerator.
pub fn debruijn_count(q: u64, l: u64) -> Result<u128> {
    if q < 2 || l == 0 {
        return Err(Error::InvalidInput("need q >= 2 and l >= 1".into()));
    }
    let reps = pow(q, l - 1)?;
    let fact: u128 = (1..q as u128).try_fold(1u128, |a, b| a.checked_mul(b)).ok_or(Error::Overflow)?;
    let pow128 = |b: u128, e: u64| -> Result<u128> {
        let mut acc = 1u128;
        for _ in 0..e {
            acc = acc.checked_mul(b).ok_or(Error::Overflow)?;
            if acc == 0 || b <= 1 {
                break;
            }
        }
        Ok(acc)
    };
    let qpart = pow128(q as u128, reps - l)?;
    let fpart = pow128(fact, reps)?;
    qpart.checked_mul(fpart).ok_or(Error::Overflow)
}
