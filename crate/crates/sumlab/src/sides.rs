//! The arithmetic functions v_g(n,h), v_pm(n,h), u(n,m,h), u^(n,m,h) and
//! their relatives.

use serde::Serialize;

use crate::arith::{divisors, floor_div, gcd};

/// A value together with the divisor attaining it.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Witnessed {
    pub value: u64,
    pub divisor: Option<u64>,
}

fn argmax(n: u64, f: impl Fn(u64) -> Option<i64>) -> Witnessed {
    let mut best = Witnessed { value: 0, divisor: None };
    for &d in divisors(n).iter() {
        if let Some(v) = f(d) {
            let v = v.max(0) as u64;
            if best.divisor.is_none() || v > best.value {
                best = Witnessed { value: v, divisor: Some(d) };
            }
        }
    }
    best
}

fn argmin(n: u64, f: impl Fn(u64) -> u64) -> Witnessed {
    let mut best = Witnessed { value: u64::MAX, divisor: None };
    for &d in divisors(n).iter() {
        let v = f(d);
        if v < best.value {
            best = Witnessed { value: v, divisor: Some(d) };
        }
    }
    best
}

/// `v_g(n,h)` straight from its definition as a maximum over divisors.
pub fn v_def(n: u64, h: u64, g: u64) -> Witnessed {
    assert!(n >= 1 && h >= 1 && (1..=h).contains(&g), "v needs 1 <= g <= h");
    argmax(n, |d| {
        let t = floor_div(d as i64 - 1 - gcd(d, g) as i64, h as i64) + 1;
        Some(t * (n / d) as i64)
    })
}

/// `v_g(n,h)` through the divisor-class characterization.
pub fn v_fast(n: u64, h: u64, g: u64) -> u64 {
    assert!(n >= 1 && h >= 1 && (1..=h).contains(&g), "v needs 1 <= g <= h");
    // smallest d in D_i(n) for each residue class i
    let mut d_i: Vec<Option<u64>> = vec![None; h as usize];
    for &d in divisors(n).iter() {
        let i = (d % h) as usize;
        if d_i[i].is_none() && gcd(d, g) < i as u64 {
            d_i[i] = Some(d);
        }
    }
    // maximize (d + h - i) / d, then scale by n/h
    let mut best: Option<(u64, u64)> = None;
    for (i, d) in d_i.iter().enumerate() {
        if let Some(d) = *d {
            let num = d + h - i as u64;
            match best {
                Some((bn, bd)) if (num as u128) * (bd as u128) <= (bn as u128) * (d as u128) => {}
                _ => best = Some((num, d)),
            }
        }
    }
    match best {
        Some((num, d)) => {
            let top = n as u128 * num as u128;
            let bottom = h as u128 * d as u128;
            debug_assert_eq!(top % bottom, 0);
            (top / bottom) as u64
        }
        None if g != h => n / h,
        None => (n - 1) / h,
    }
}

/// `v_g(n,h)`; debug builds cross-check the two evaluators.
pub fn v(n: u64, h: u64, g: u64) -> u64 {
    let fast = v_fast(n, h, g);
    debug_assert_eq!(fast, v_def(n, h, g).value, "v_{g}({n},{h})");
    fast
}

pub fn v_pm_def(n: u64, h: u64) -> Witnessed {
    assert!(n >= 1 && h >= 1);
    argmax(n, |d| {
        let t = 2 * floor_div(d as i64 - 2, 2 * h as i64) + 1;
        Some(t * (n / d) as i64)
    })
}

pub fn v_pm(n: u64, h: u64) -> u64 {
    v_pm_def(n, h).value
}

/// `f_d(m,h) = (h ceil(m/d) - h + 1) d`.
pub fn f_d(d: u64, m: u64, h: u64) -> u64 {
    (h * m.div_ceil(d) - h + 1) * d
}

pub fn u_def(n: u64, m: u64, h: u64) -> Witnessed {
    assert!(n >= 1 && h >= 1 && (1..=n).contains(&m), "u needs 1 <= m <= n");
    argmin(n, |d| f_d(d, m, h))
}

pub fn u(n: u64, m: u64, h: u64) -> u64 {
    u_def(n, m, h).value
}

/// Positive remainder of `x` modulo `d`, in `[1, d]`.
pub fn positive_remainder(x: u64, d: u64) -> u64 {
    x - d * (x.div_ceil(d) - 1)
}

/// The correction term `delta_d`.
pub fn delta(d: u64, m: u64, h: u64) -> i64 {
    let k = positive_remainder(m, d) as i64;
    let r = positive_remainder(h, d) as i64;
    let d = d as i64;
    if r < k {
        (k - r) * r - (d - 1)
    } else if k < r && r < d {
        (d - r) * (r - k) - (d - 1)
    } else if k == r && r == d {
        d - 1
    } else {
        0
    }
}

pub fn f_hat(n: u64, m: u64, h: u64, d: u64) -> u64 {
    assert!(1 <= h && h < m && m <= n && n % d == 0, "f_hat needs 1 <= h < m <= n and d | n");
    let k = positive_remainder(m, d);
    let base = (h * m - h * h + 1) as i64;
    if h <= k.min(d - 1) {
        n.min(f_d(d, m, h)).min(base as u64)
    } else {
        let v = base - delta(d, m, h);
        (n as i64).min(v).max(0) as u64
    }
}

pub fn u_hat_def(n: u64, m: u64, h: u64) -> Witnessed {
    argmin(n, |d| f_hat(n, m, h, d))
}

pub fn u_hat(n: u64, m: u64, h: u64) -> u64 {
    u_hat_def(n, m, h).value
}

/// Least `m` with `u(n,m,h) = n`.
pub fn h_critical(n: u64, h: u64) -> u64 {
    let c = v(n, h, 1) + 1;
    debug_assert!(u(n, c, h) == n && (c == 1 || u(n, c - 1, h) < n));
    c
}

pub fn h_critical_scan(n: u64, h: u64) -> u64 {
    (1..=n).find(|&m| u(n, m, h) == n).expect("u(n,n,h) = n")
}

/// Least `m > 2` with `u^(n,m,2) = n`.
pub fn restricted_2_critical_scan(n: u64) -> Option<u64> {
    (3..=n).find(|&m| u_hat(n, m, 2) == n)
}

pub fn v_hat_def(n: u64, s: u64) -> Witnessed {
    assert!(n >= 1 && s >= 1);
    argmax(n, |d| (d >= s + 2).then(|| (floor_div(d as i64 - 2, s as i64) + 1) * (n / d) as i64))
}

pub fn v_hat(n: u64, s: u64) -> u64 {
    v_hat_def(n, s).value
}

pub fn v_hat_pm_def(n: u64, s: u64) -> Witnessed {
    assert!(n >= 1 && s >= 1);
    argmax(n, |d| (d >= 2 * s + 2).then(|| (2 * floor_div(d as i64 - 2, 2 * s as i64) + 1) * (n / d) as i64))
}

pub fn v_hat_pm(n: u64, s: u64) -> u64 {
    v_hat_pm_def(n, s).value
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::is_prime;

    #[test]
    fn v_examples() {
        assert_eq!(v(18, 4, 2), 6);
        assert_eq!(v(9, 5, 3), 2);
        assert_eq!(v(437, 5, 5), 95);
        assert_eq!(v(16, 11, 6), 4);
        for n in 1..200 {
            assert_eq!(v(n, 1, 1), n - 1);
            assert_eq!(v(n, 2, 1), n / 2);
            assert_eq!(v(n, 2, 2), (n - 1) / 2);
        }
    }

    #[test]
    fn v_fast_agrees_with_definition() {
        for n in 1..=2000 {
            for h in 1..=8 {
                for g in 1..=h {
                    assert_eq!(v_fast(n, h, g), v_def(n, h, g).value, "v_{g}({n},{h})");
                }
            }
        }
    }

    #[test]
    fn v_bounds() {
        for n in 1..=300u64 {
            for h in 2..=8 {
                for g in 1..=h {
                    let x = v(n, h, g);
                    assert!((n - 1) / h <= x && 2 * x <= n);
                    assert_eq!(2 * x == n, n % 2 == 0 && g % 2 == 1, "n={n} h={h} g={g}");
                }
            }
        }
    }

    #[test]
    fn v_for_primes_and_prime_powers() {
        for p in (2..200u64).filter(|&p| is_prime(p)) {
            for h in 1..=7 {
                for g in 1..=h {
                    let want = if g % p == 0 { 0 } else { (p - 2) / h + 1 };
                    assert_eq!(v(p, h, g), want);
                }
                assert_eq!(v_pm(p, h), 2 * ((p - 2) / (2 * h)) + 1);
            }
            for r in 1..4 {
                let q = p.pow(r);
                if q > 5000 {
                    continue;
                }
                for h in 1..=6 {
                    for g in (1..=h).filter(|g| g % p != 0) {
                        let want = if p % h == 1 % h { (q - 1) / h } else { ((p - 2) / h + 1) * p.pow(r - 1) };
                        assert_eq!(v(q, h, g), want, "p={p} r={r} h={h} g={g}");
                    }
                }
            }
        }
    }

    #[test]
    fn v_pm_properties() {
        for n in 1..=400u64 {
            assert_eq!(v_pm(n, 1), if n % 2 == 0 { n - 1 } else { n.saturating_sub(2) });
            let want2 = if n % 2 == 0 {
                n / 2
            } else if n % 4 == 3 {
                (n - 1) / 2
            } else {
                n.saturating_sub(3) / 2
            };
            if n > 1 {
                assert_eq!(v_pm(n, 2), want2, "n={n}");
            }
            let want4 = if n % 2 == 0 {
                n / 2
            } else if let Some(&d) = divisors(n).iter().find(|&&d| d % 8 == 3) {
                (d + 1) * n / (4 * d)
            } else {
                2 * (n.saturating_sub(2) / 8) + 1
            };
            if n > 1 {
                assert_eq!(v_pm(n, 4), want4, "n={n}");
            }
            for h in 1..=8 {
                assert!(v_pm(n, h) <= v(n, h, 1));
                if h >= 2 {
                    assert!(2 * v_pm(n, h) <= n);
                    assert_eq!(2 * v_pm(n, h) == n, n % 2 == 0);
                }
                if h >= 3 && n % 2 == 1 {
                    assert!(3 * v_pm(n, h) <= n);
                    assert_eq!(3 * v_pm(n, h) == n, n % 3 == 0);
                }
            }
        }
        assert_eq!(v_pm(16, 4), 8);
    }

    #[test]
    fn u_examples_and_bounds() {
        assert_eq!(u(15, 6, 2), 9);
        assert_eq!(u(15, 7, 2), 13);
        for n in 1..=120u64 {
            for h in 1..=6 {
                assert_eq!(u(n, 1, h), 1);
                assert_eq!(u(n, n, h), n);
                for m in 1..=n {
                    let x = u(n, m, h);
                    assert!(m <= x && x <= n.min(h * m - h + 1));
                    assert_eq!(x == m, h == 1 || n % m == 0);
                    if m < n {
                        assert!(u(n, m + 1, h) >= x);
                    }
                    assert!(u(n, m, h + 1) >= x);
                    let p = crate::arith::smallest_prime_factor(n).unwrap_or(1);
                    if n > 1 {
                        assert!(x >= p.min(h * m - h + 1));
                        assert_eq!(x == p.min(h * m - h + 1), m <= p);
                    }
                }
            }
        }
        for p in (2..60u64).filter(|&p| is_prime(p)) {
            for m in 1..=p {
                for h in 1..6 {
                    assert_eq!(u(p, m, h), p.min(h * m - h + 1));
                }
            }
        }
    }

    #[test]
    fn delta_small_divisors() {
        for m in 2..60u64 {
            for h in 1..m {
                assert_eq!(delta(1, m, h), 0);
                assert_eq!(delta(2, m, h), i64::from(m % 2 == 0 && h % 2 == 0));
                let want3 = if m % 3 == 0 && h % 3 == 0 {
                    2
                } else if m % 3 != 0 && h % 3 != 0 && (m - h) % 3 != 0 {
                    -1
                } else {
                    0
                };
                assert_eq!(delta(3, m, h), want3, "m={m} h={h}");
                assert_eq!(f_hat(m.max(2), m, h, 1), m.max(2).min(h * m - h * h + 1));
            }
        }
    }

    #[test]
    fn u_hat_examples_and_props() {
        assert_eq!(u_hat(15, 6, 3), 8);
        for n in 2..=200u64 {
            for m in 2..=n {
                assert_eq!(u_hat(n, m, 1), m);
                let u2 = u(n, m, 2);
                if m > 2 {
                    let want = if n % 2 == 0 && m % 2 == 0 { u2.min(2 * m - 4) } else { u2.min(2 * m - 3) };
                    assert_eq!(u_hat(n, m, 2), want, "n={n} m={m}");
                    assert!(u_hat(n, m, 2) + 2 >= u2);
                }
                if m > 3 {
                    let g = gcd(n, m - 1);
                    let u3 = u(n, m, 3);
                    let want = if g >= 8 {
                        u3.min(3 * m - 3 - g)
                    } else if g == 7 || (g <= 5 && n % 3 == 0 && m % 3 == 0) {
                        u3.min(3 * m - 10)
                    } else if g == 6 {
                        u3.min(3 * m - 9)
                    } else {
                        u3.min(3 * m - 8)
                    };
                    assert_eq!(u_hat(n, m, 3), want, "n={n} m={m}");
                }
                for h in 1..m.min(8) {
                    let x = u_hat(n, m, h);
                    assert!(m <= x && x <= u(n, m, h).min(h * m - h * h + 1), "n={n} m={m} h={h}");
                    let eq = h == 1 || h == m - 1 || n % m == 0 || (h == 2 && m == 4 && n % 2 == 0);
                    assert_eq!(x == m, eq, "n={n} m={m} h={h}");
                    if is_prime(n) {
                        assert_eq!(x, n.min(h * m - h * h + 1));
                    }
                }
            }
        }
    }

    #[test]
    fn critical_numbers_of_n() {
        assert_eq!(h_critical(10, 2), 6);
        assert_eq!(h_critical(15, 3), 7);
        for n in 1..=200u64 {
            assert_eq!(h_critical(n, 1), n);
            for h in 1..=6 {
                assert_eq!(h_critical(n, h), h_critical_scan(n, h));
            }
            if n >= 3 {
                assert_eq!(restricted_2_critical_scan(n), Some(n / 2 + 2).filter(|&c| c <= n), "n={n}");
            }
        }
    }

    #[test]
    fn v_hat_examples() {
        for n in 1..=100u64 {
            for s in 1..6 {
                if n <= s + 1 {
                    assert_eq!(v_hat(n, s), 0);
                }
                if n <= 2 * s + 1 {
                    assert_eq!(v_hat_pm(n, s), 0);
                }
            }
            if n >= 3 {
                assert_eq!(v_hat(n, 1), n - 1);
            }
        }
        for p in (2..100u64).filter(|&p| is_prime(p)) {
            for s in 1..6 {
                if p >= 2 * s + 2 {
                    assert_eq!(v_hat_pm(p, s), 2 * ((p - 2) / (2 * s)) + 1);
                }
            }
        }
    }
}
