//! Integer helpers shared by the group and side-function layers.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

pub use num_integer::{gcd, lcm, Integer};

static DIVISORS: OnceLock<Mutex<HashMap<u64, Arc<[u64]>>>> = OnceLock::new();
const DIVISOR_CACHE_LIMIT: usize = 1 << 16;

/// Sorted positive divisors of `n` (`n >= 1`).
pub fn divisors(n: u64) -> Arc<[u64]> {
    assert!(n >= 1, "divisors of zero");
    let cache = DIVISORS.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(d) = cache.lock().unwrap().get(&n) {
        return d.clone();
    }
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut i = 1u64;
    while i * i <= n {
        if n % i == 0 {
            small.push(i);
            if i * i != n {
                large.push(n / i);
            }
        }
        i += 1;
    }
    small.extend(large.into_iter().rev());
    let d: Arc<[u64]> = small.into();
    let mut guard = cache.lock().unwrap();
    if guard.len() < DIVISOR_CACHE_LIMIT {
        guard.insert(n, d.clone());
    }
    d
}

pub fn divisor_count(n: u64) -> u64 {
    divisors(n).len() as u64
}

/// Prime factorization as (prime, exponent) pairs, primes increasing.
pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2u64;
    while p * p <= n {
        if n % p == 0 {
            let mut e = 0;
            while n % p == 0 {
                n /= p;
                e += 1;
            }
            out.push((p, e));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

pub fn smallest_prime_factor(n: u64) -> Option<u64> {
    factorize(n).first().map(|&(p, _)| p)
}

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut r = 1 % m;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            r = mul_mod(r, b, m);
        }
        b = mul_mod(b, b, m);
        e >>= 1;
    }
    r
}

/// Deterministic Miller-Rabin for all 64-bit inputs.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    const WITNESSES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    for &p in &WITNESSES {
        if n % p == 0 {
            return n == p;
        }
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'witness: for &a in &WITNESSES {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// `Some((p, r))` when `n = p^r` with `p` prime and `r >= 1`.
pub fn prime_power(n: u64) -> Option<(u64, u32)> {
    match factorize(n).as_slice() {
        [(p, r)] => Some((*p, *r)),
        _ => None,
    }
}

pub fn ceil_div(a: u64, b: u64) -> u64 {
    a.div_ceil(b)
}

/// Floor division that rounds toward negative infinity.
pub fn floor_div(a: i64, b: i64) -> i64 {
    Integer::div_floor(&a, &b)
}

pub fn binomial(n: u64, k: u64) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut r: u128 = 1;
    for i in 0..k {
        r = r * (n - i) as u128 / (i + 1) as u128;
    }
    r
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn divisors_small() {
        assert_eq!(&*divisors(1), &[1]);
        assert_eq!(&*divisors(12), &[1, 2, 3, 4, 6, 12]);
        assert_eq!(&*divisors(49), &[1, 7, 49]);
    }

    #[test]
    fn primality_matches_trial_division() {
        for n in 0..5000u64 {
            let trial = n >= 2 && (2..n).take_while(|d| d * d <= n).all(|d| n % d != 0);
            assert_eq!(is_prime(n), trial, "n={n}");
        }
        assert!(is_prime(18446744073709551557));
        assert!(!is_prime(3215031751));
    }

    #[test]
    fn factorization_round_trip() {
        for n in 1..3000u64 {
            let f = factorize(n);
            assert_eq!(f.iter().map(|&(p, e)| p.pow(e)).product::<u64>(), n);
        }
    }

    #[test]
    fn floor_div_negative() {
        assert_eq!(floor_div(-1, 2), -1);
        assert_eq!(floor_div(-4, 2), -2);
        assert_eq!(floor_div(3, 2), 1);
    }
}
