//! Binomials, partitions, the functions a(j,k) and c(j,k), and sizes of
//! coefficient layers `Lambda^m(H)`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::sumset::{Lambda, Terms};

fn add(a: u128, b: u128) -> Result<u128> {
    a.checked_add(b).ok_or(Error::Overflow("counting"))
}

fn mul(a: u128, b: u128) -> Result<u128> {
    a.checked_mul(b).ok_or(Error::Overflow("counting"))
}

pub fn binom(n: u64, k: u64) -> Result<u128> {
    if k > n {
        return Ok(0);
    }
    let k = k.min(n - k);
    let mut r: u128 = 1;
    for i in 0..k {
        r = mul(r, (n - i) as u128)? / (i + 1) as u128;
    }
    Ok(r)
}

/// `C(j-1, i-1)` with the convention `C(-1,-1) = 1`.
fn binom_shifted(j: u64, i: u64) -> Result<u128> {
    match (j, i) {
        (0, 0) => Ok(1),
        (0, _) | (_, 0) => Ok(0),
        _ => binom(j - 1, i - 1),
    }
}

/// `a(j,k) = sum_i C(j,i) C(k,i) 2^i`.
pub fn a(j: u64, k: u64) -> Result<u128> {
    let mut s = 0u128;
    for i in 0..=j.min(k) {
        let t = mul(mul(binom(j, i)?, binom(k, i)?)?, pow2(i)?)?;
        s = add(s, t)?;
    }
    Ok(s)
}

/// `c(j,k) = sum_i C(j-1,i-1) C(k,i) 2^i`.
pub fn c(j: u64, k: u64) -> Result<u128> {
    let mut s = 0u128;
    for i in 0..=j.min(k) {
        let t = mul(mul(binom_shifted(j, i)?, binom(k, i)?)?, pow2(i)?)?;
        s = add(s, t)?;
    }
    Ok(s)
}

fn pow2(i: u64) -> Result<u128> {
    if i >= 128 {
        return Err(Error::Overflow("counting"));
    }
    Ok(1u128 << i)
}

fn pow3(i: u64) -> Result<u128> {
    (0..i).try_fold(1u128, |acc, _| mul(acc, 3))
}

/// Table of `a` by the triple recursion, indices `0..=jmax` by `0..=kmax`.
pub fn a_table(jmax: usize, kmax: usize) -> Result<Vec<Vec<u128>>> {
    let mut t = vec![vec![1u128; kmax + 1]; jmax + 1];
    for j in 1..=jmax {
        for k in 1..=kmax {
            t[j][k] = add(add(t[j - 1][k], t[j - 1][k - 1])?, t[j][k - 1])?;
        }
    }
    Ok(t)
}

/// Table of `c` by the same recursion with `c(0,k) = 1`, `c(j,0) = 0`.
pub fn c_table(jmax: usize, kmax: usize) -> Result<Vec<Vec<u128>>> {
    let mut t = vec![vec![0u128; kmax + 1]; jmax + 1];
    t[0].iter_mut().for_each(|x| *x = 1);
    for j in 1..=jmax {
        for k in 1..=kmax {
            t[j][k] = add(add(t[j - 1][k], t[j - 1][k - 1])?, t[j][k - 1])?;
        }
    }
    Ok(t)
}

/// Number of partitions of `alpha`.
pub fn partition_p(alpha: u64) -> Result<u128> {
    let n = alpha as usize;
    let mut p = vec![0u128; n + 1];
    p[0] = 1;
    for part in 1..=n {
        for s in part..=n {
            p[s] = add(p[s], p[s - part])?;
        }
    }
    Ok(p[n])
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LayerSpec {
    pub lambda: Lambda,
    pub m: u64,
    pub terms: Terms,
}

/// `|Lambda^m(H)|`; `Error::Infinite` for the unbounded unrestricted cases.
pub fn layer_size(spec: LayerSpec) -> Result<u128> {
    let m = spec.m;
    let exact = |h: u64| -> Result<u128> {
        match spec.lambda {
            Lambda::N0 => {
                if m == 0 {
                    Ok(u128::from(h == 0))
                } else {
                    binom(m + h - 1, h)
                }
            }
            Lambda::Z => c(h, m),
            Lambda::Restricted => binom(m, h),
            Lambda::RestrictedSigned => mul(binom(m, h)?, pow2(h)?),
        }
    };
    let range = |lo: u64, hi: u64| -> Result<u128> { (lo..=hi).try_fold(0u128, |acc, h| add(acc, exact(h)?)) };
    let infinite = || Error::Infinite(format!("{:?} over {:?}", spec.lambda, spec.terms));
    match spec.terms {
        Terms::Exact(h) => exact(h),
        Terms::UpTo(s) => range(0, s),
        Terms::Range1(t) => range(1, t),
        Terms::AllN0 | Terms::AllN => match spec.lambda {
            Lambda::N0 | Lambda::Z if m > 0 => Err(infinite()),
            Lambda::N0 | Lambda::Z => Ok(u128::from(spec.terms == Terms::AllN0)),
            Lambda::Restricted => {
                let t = pow2(m)?;
                Ok(if spec.terms == Terms::AllN0 { t } else { t - 1 })
            }
            Lambda::RestrictedSigned => {
                let t = pow3(m)?;
                Ok(if spec.terms == Terms::AllN0 { t } else { t - 1 })
            }
        },
    }
}

/// Points of `Z^m(h)` whose k-th coordinate is positive and all earlier ones vanish.
pub fn layer_halfspace_size(m: u64, h: u64) -> Result<u128> {
    if m == 0 || h == 0 {
        return Err(Error::InvalidParameter("layer_halfspace_size needs m, h >= 1".into()));
    }
    a(m - 1, h - 1)
}
