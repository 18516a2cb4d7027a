//! Binomial-sum identities behind the degree-two Chern character of a
//! symmetric power.
//!
//! `f(k, n) = Σ_i i² C(n-2+k-i, n-2)` and
//! `g(k, n) = Σ_{i,j} i j C(n-3+k-i-j, n-3)`, both summed over positive
//! indices, are compared against their factorial closed forms. The
//! multi-index sum `f(k, n, J)` generalizes both.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::{Error, Result};

/// `C(a, b)`, zero when `b < 0` or `a < b`.
pub fn binomial(a: i64, b: i64) -> BigInt {
    if b < 0 || a < b {
        return BigInt::zero();
    }
    let b = b.min(a - b);
    let mut acc = BigInt::one();
    for i in 0..b {
        acc *= a - i;
        acc /= i + 1;
    }
    acc
}

fn factorial(n: i64) -> BigInt {
    (2..=n).fold(BigInt::one(), |acc, i| acc * i)
}

/// Direct summation of `f(k, n)`.
pub fn f_brute(k: u32, n: u32) -> BigInt {
    let (k, n) = (i64::from(k), i64::from(n));
    (1..=k)
        .map(|i| BigInt::from(i * i) * binomial(n - 2 + k - i, n - 2))
        .sum()
}

/// `(n+2k-1)(k+n-1)! / ((k-1)!(n+1)!)`, zero for `k = 0`.
pub fn f_closed(k: u32, n: u32) -> BigInt {
    if k == 0 {
        return BigInt::zero();
    }
    let (k, n) = (i64::from(k), i64::from(n));
    BigInt::from(n + 2 * k - 1) * factorial(k + n - 1) / (factorial(k - 1) * factorial(n + 1))
}

/// `(2k² + k(n-1)) p(k) / (n(n+1))` with `p(k) = C(k+n-1, n-1)`.
pub fn f_from_rank(k: u32, n: u32) -> BigInt {
    let (k, n) = (i64::from(k), i64::from(n));
    let p = binomial(k + n - 1, n - 1);
    BigInt::from(2 * k * k + k * (n - 1)) * p / BigInt::from(n * (n + 1))
}

/// Direct double summation of `g(k, n)` over `i, j >= 1`, `i + j <= k`.
pub fn g_brute(k: u32, n: u32) -> BigInt {
    let (k, n) = (i64::from(k), i64::from(n));
    let mut acc = BigInt::zero();
    for i in 1..k {
        for j in 1..=k - i {
            acc += BigInt::from(i * j) * binomial(n - 3 + k - i - j, n - 3);
        }
    }
    acc
}

/// `(k+n-1)! / ((k-2)!(n+1)!)`, zero for `k < 2`.
pub fn g_closed(k: u32, n: u32) -> BigInt {
    if k < 2 {
        return BigInt::zero();
    }
    let (k, n) = (i64::from(k), i64::from(n));
    factorial(k + n - 1) / (factorial(k - 2) * factorial(n + 1))
}

/// `k(k-1) p(k) / (n(n+1))`.
pub fn g_from_rank(k: u32, n: u32) -> BigInt {
    let (k, n) = (i64::from(k), i64::from(n));
    let p = binomial(k + n - 1, n - 1);
    BigInt::from(k * (k - 1)) * p / BigInt::from(n * (n + 1))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SumCheck {
    pub identity: &'static str,
    pub k: u32,
    pub n: u32,
    #[serde(serialize_with = "crate::serde_rational::display::serialize")]
    pub brute: BigInt,
    #[serde(serialize_with = "crate::serde_rational::display::serialize")]
    pub closed: BigInt,
    /// Closed form rewritten through `p(k) = C(k+n-1, n-1)`.
    #[serde(serialize_with = "crate::serde_rational::display::serialize")]
    pub via_rank: BigInt,
    pub matches: bool,
}

fn check(identity: &'static str, k: u32, n: u32, brute: BigInt, closed: BigInt, via_rank: BigInt) -> SumCheck {
    let matches = brute == closed && closed == via_rank;
    SumCheck {
        identity,
        k,
        n,
        brute,
        closed,
        via_rank,
        matches,
    }
}

/// Checks the first identity; needs `k >= 1`, `n >= 2`.
pub fn appendix_f(k: u32, n: u32) -> Result<SumCheck> {
    if k < 1 || n < 2 {
        return Err(Error::domain(format!(
            "f(k, n) needs k >= 1 and n >= 2, got k={k}, n={n}"
        )));
    }
    Ok(check("f", k, n, f_brute(k, n), f_closed(k, n), f_from_rank(k, n)))
}

/// Checks the second identity; needs `k >= 1`, `n >= 3`.
pub fn appendix_g(k: u32, n: u32) -> Result<SumCheck> {
    if k < 1 || n < 3 {
        return Err(Error::domain(format!(
            "g(k, n) needs k >= 1 and n >= 3, got k={k}, n={n}"
        )));
    }
    Ok(check("g", k, n, g_brute(k, n), g_closed(k, n), g_from_rank(k, n)))
}

/// `f(k, n, J) = Σ i_1^{j_1} ... i_q^{j_q} C(n+k-Σi_l-q-1, n-q-1)` over
/// positive indices `i_1, ..., i_q`.
pub fn appendix_general(k: u32, n: u32, exponents: &[u32]) -> Result<BigInt> {
    let q = exponents.len();
    if q == 0 || q + 1 > n as usize {
        return Err(Error::domain(format!(
            "multi-index of length {q} needs 1 <= q <= n - 1 = {}",
            i64::from(n) - 1
        )));
    }
    if exponents.contains(&0) {
        return Err(Error::domain("multi-index entries must be positive"));
    }
    fn go(exponents: &[u32], k: i64, n: i64, q: i64, used: i64, weight: BigInt) -> BigInt {
        match exponents.split_first() {
            None => weight * binomial(n + k - used - q - 1, n - q - 1),
            Some((&j, rest)) => {
                let mut acc = BigInt::zero();
                // remaining indices need at least one each
                for i in 1..=k - used - rest.len() as i64 {
                    acc += go(rest, k, n, q, used + i, &weight * BigInt::from(i).pow(j));
                }
                acc
            }
        }
    }
    Ok(go(exponents, i64::from(k), i64::from(n), q as i64, 0, BigInt::one()))
}

/// `f(k, n) = f(k-1, n) + f(k, n-1)` by direct summation. The boundary
/// `n = 2` fails under the zero-binomial convention, so `n >= 3` is required.
pub fn f_recurrence_holds(k: u32, n: u32) -> Result<bool> {
    if k < 2 || n < 3 {
        return Err(Error::domain(format!(
            "f recurrence needs k >= 2 and n >= 3, got k={k}, n={n}"
        )));
    }
    Ok(f_brute(k, n) == f_brute(k - 1, n) + f_brute(k, n - 1))
}

/// `g(k, n) = g(k-1, n) + g(k, n-1)` by direct summation, for `n >= 4`.
pub fn g_recurrence_holds(k: u32, n: u32) -> Result<bool> {
    if k < 2 || n < 4 {
        return Err(Error::domain(format!(
            "g recurrence needs k >= 2 and n >= 4, got k={k}, n={n}"
        )));
    }
    Ok(g_brute(k, n) == g_brute(k - 1, n) + g_brute(k, n - 1))
}

/// Every applicable identity at `(k, n)`: `f` when `n >= 2`, `g` when `n >= 3`.
pub fn checks_at(k: u32, n: u32) -> Vec<SumCheck> {
    let mut out = Vec::new();
    if let Ok(c) = appendix_f(k, n) {
        out.push(c);
    }
    if let Ok(c) = appendix_g(k, n) {
        out.push(c);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(n: i64) -> BigInt {
        BigInt::from(n)
    }

    #[test]
    fn binomial_convention() {
        assert_eq!(binomial(5, 2), big(10));
        assert_eq!(binomial(0, 0), big(1));
        assert_eq!(binomial(2, 3), big(0));
        assert_eq!(binomial(3, -1), big(0));
        assert_eq!(binomial(-1, -1), big(0));
    }

    #[test]
    fn f_examples() {
        for n in 2..10 {
            assert_eq!(f_brute(1, n), big(1));
            assert_eq!(f_closed(1, n), big(1));
        }
        assert_eq!(f_brute(2, 3), big(6));
        assert_eq!(f_closed(2, 3), big(6));
        for k in 1..30u32 {
            let pyramid = big(i64::from(k * (k + 1) * (2 * k + 1) / 6));
            assert_eq!(f_brute(k, 2), pyramid);
            assert_eq!(f_closed(k, 2), pyramid);
        }
    }

    #[test]
    fn g_examples() {
        for n in 3..10 {
            assert_eq!(g_brute(1, n), big(0));
            assert_eq!(g_closed(1, n), big(0));
        }
        assert_eq!(g_brute(3, 3), big(5));
        assert_eq!(g_closed(3, 3), big(5));
        assert_eq!(g_brute(2, 4), big(1));
        assert_eq!(g_closed(2, 4), big(1));
    }

    #[test]
    fn identities_hold_on_grid() {
        for k in 1..=40 {
            for n in 2..=40 {
                assert!(appendix_f(k, n).unwrap().matches, "f({k},{n})");
                if n >= 3 {
                    assert!(appendix_g(k, n).unwrap().matches, "g({k},{n})");
                }
            }
        }
    }

    #[test]
    fn recurrences() {
        for k in 2..=40 {
            for n in 3..=40 {
                assert!(f_recurrence_holds(k, n).unwrap());
                if n >= 4 {
                    assert!(g_recurrence_holds(k, n).unwrap());
                }
            }
        }
        // the zero-binomial convention breaks the recurrence at the boundary
        assert_ne!(f_brute(3, 2), f_brute(2, 2) + f_brute(3, 1));
    }

    #[test]
    fn general_sum_specializes() {
        assert_eq!(appendix_general(2, 3, &[2]).unwrap(), big(6));
        assert_eq!(appendix_general(3, 3, &[1, 1]).unwrap(), big(5));
        assert_eq!(appendix_general(2, 2, &[1]).unwrap(), big(3));
        for k in 1..=15 {
            for n in 3..=12 {
                assert_eq!(appendix_general(k, n, &[2]).unwrap(), f_brute(k, n));
                assert_eq!(appendix_general(k, n, &[1, 1]).unwrap(), g_brute(k, n));
            }
        }
        assert!(appendix_general(3, 2, &[1, 1]).is_err());
        assert!(appendix_general(3, 4, &[]).is_err());
        assert!(appendix_general(3, 4, &[0]).is_err());
    }

    #[test]
    fn domain_errors() {
        assert!(appendix_f(0, 3).is_err());
        assert!(appendix_f(3, 1).is_err());
        assert!(appendix_g(3, 2).is_err());
        assert_eq!(checks_at(3, 2).len(), 1);
        assert_eq!(checks_at(3, 3).len(), 2);
    }
}
