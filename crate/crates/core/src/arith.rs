//! Small integer helpers on machine words.

use alloc::vec::Vec;

/// Prime factorization by trial division, as `(prime, exponent)` pairs in
/// increasing prime order.
pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            let mut e = 0;
            while n.is_multiple_of(d) {
                n /= d;
                e += 1;
            }
            out.push((d, e));
        }
        d += if d == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

pub fn is_prime(n: u64) -> bool {
    n >= 2 && factorize(n) == [(n, 1)]
}

/// Largest `e` with `p^e | n`, for `n != 0`.
pub fn valuation(mut n: u64, p: u64) -> u32 {
    debug_assert!(n != 0 && p >= 2);
    let mut e = 0;
    while n.is_multiple_of(p) {
        n /= p;
        e += 1;
    }
    e
}

pub fn totient(n: u64) -> u64 {
    factorize(n)
        .into_iter()
        .fold(n, |acc, (p, _)| acc / p * (p - 1))
}

pub fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn factorizations() {
        assert_eq!(factorize(1), []);
        assert_eq!(factorize(45), [(3, 2), (5, 1)]);
        assert_eq!(factorize(121), [(11, 2)]);
        assert_eq!(factorize(30), [(2, 1), (3, 1), (5, 1)]);
        assert!(is_prime(97));
        assert!(!is_prime(91));
    }

    #[test]
    fn totients_and_valuations() {
        assert_eq!(totient(15), 8);
        assert_eq!(totient(21), 12);
        assert_eq!(totient(121), 110);
        assert_eq!(valuation(72, 2), 3);
        assert_eq!(valuation(7, 3), 0);
        assert_eq!(gcd(12, 18), 6);
    }
}
