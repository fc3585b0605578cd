//! Registry of closed-form results and conjectures, and sweeps that compare
//! them with exhaustive search.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::arith::{binomial, gcd, is_prime, smallest_prime_factor};
use crate::error::{Error, Result};
use crate::group::{Group, Subset};
use crate::search::{enumerate_extremal, evaluate, spanning_set, Family, QuantityQuery, SearchConfig};
use crate::sides::{u, v, v_hat, v_pm};
use crate::sumset::{Lambda, SumsetSpec, Terms};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct KnownResult {
    pub citation_id: String,
    /// `None` when the quantity does not exist.
    pub value: Option<u64>,
    pub applicability: String,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum EntryKind {
    Theorem,
    /// Hypotheses are checkable but no desk-scale group satisfies them.
    Asserted,
    Conjecture,
    /// A remark about the literature; never evaluated.
    Annotation,
}

struct Pred {
    value: Option<u64>,
    why: String,
}

fn pred(value: u64, why: impl Into<String>) -> Option<Pred> {
    Some(Pred { value: Some(value), why: why.into() })
}

fn absent(why: impl Into<String>) -> Option<Pred> {
    Some(Pred { value: None, why: why.into() })
}

type EvalFn = fn(&Group, &QuantityQuery) -> Option<Pred>;
type SweepFn = fn(&Group) -> Vec<QuantityQuery>;

pub struct Entry {
    pub id: &'static str,
    pub kind: EntryKind,
    pub statement: &'static str,
    eval: Option<EvalFn>,
    sweep: Option<SweepFn>,
}

impl Entry {
    pub fn sweepable(&self) -> bool {
        self.kind == EntryKind::Theorem && self.sweep.is_some()
    }
}

// ---------------------------------------------------------------------------
// helpers

fn ord2(g: &Group) -> u64 {
    g.ord_set(2).size() as u64
}

fn elementary2(g: &Group) -> bool {
    g.order() > 1 && g.factors().iter().all(|&f| f == 2)
}

fn prime_order(g: &Group) -> Option<u64> {
    let n = g.order() as u64;
    is_prime(n).then_some(n)
}

fn smallest_prime_mod(n: u64, r: u64, m: u64) -> Option<u64> {
    crate::arith::factorize(n).into_iter().map(|(p, _)| p).find(|p| p % m == r)
}

fn bare(q: &QuantityQuery, f: Family, l: Lambda) -> bool {
    q.family == f && q.spec.lambda == l && !q.generating && !q.exclude_zero && q.pair.is_none()
}

fn exact(q: &QuantityQuery) -> Option<u64> {
    match q.spec.terms {
        Terms::Exact(h) => Some(h),
        _ => None,
    }
}

fn upto(q: &QuantityQuery) -> Option<u64> {
    match q.spec.terms {
        Terms::UpTo(s) => Some(s),
        _ => None,
    }
}

fn range1(q: &QuantityQuery) -> Option<u64> {
    match q.spec.terms {
        Terms::Range1(t) => Some(t),
        _ => None,
    }
}

fn sized(q: &QuantityQuery, n: u64) -> Option<u64> {
    q.m.filter(|&m| (1..=n).contains(&m))
}

fn query(f: Family, l: Lambda, t: Terms) -> QuantityQuery {
    QuantityQuery::new(f, SumsetSpec::new(l, t))
}

fn log2_floor(n: u64) -> u64 {
    63 - n.leading_zeros() as u64
}

/// Positive diameter `sum n_i - r`.
fn diameter(g: &Group) -> u64 {
    g.factors().iter().map(|&f| f - 1).sum()
}

// ---------------------------------------------------------------------------
// theorem evaluators

fn rho_u(g: &Group, q: &QuantityQuery) -> Option<Pred> {
    let n = g.order() as u64;
    let h = exact(q).filter(|&h| h >= 1)?;
    if !bare(q, Family::Rho, Lambda::N0) {
        return None;
    }
    let m = sized(q, n)?;
    pred(u(n, m, h), format!("any group of order {n}, 1 <= m <= n, h >= 1"))
}

fn rho_vs_p(g: &Group, q: &QuantityQuery) -> Option<Pred> {
    let n = g.order() as u64;
    let h = exact(q).filter(|&h| h >= 1)?;
    if !bare(q, Family::Rho, Lambda::N0) || n < 2 {
        return None;
    }
    let m = sized(q, n)?;
    let p = smallest_prime_factor(n)?;
    (m <= p).then(|| Pred { value: Some(p.min(h * m - h + 1)), why: format!("m = {m} <= p = {p}, the least prime divisor of n") })
}

fn dias_da_silva(g: &Group, q: &QuantityQuery) -> Option<Pred> {
    let p = prime_order(g)?;
    let h = exact(q)?;
    if !bare(q, Family::Rho, Lambda::Restricted) {
        return None;
    }
    let m = sized(q, p)?;
    (1 <= h && h <= m).then(|| Pred { value: Some(p.min(h * m - h * h + 1)), why: format!("p = {p} prime, 1 <= h <= m <= p") })
}

fn rhohat_m4(g: &Group, q: &QuantityQuery) -> Option<Pred> {
    if !bare(q, Family::Rho, Lambda::Restricted) || exact(q) != Some(2) || q.m != Some(4) || g.order() < 4 {
        return None;
    }
    let o = ord2(g);
    let v = match o {
        0 => 5,
        1 => 4,
        _ => 3,
    };
    pred(v, format!("|Ord(G,2)| = {o}"))
}

fn carrick(g: &Group, q: &QuantityQuery) -> Option<Pred> {
    let n = g.order() as u64;
    if !bare(q, Family::Rho, Lambda::Restricted) || exact(q) != Some(2) || q.m != Some(5) || n < 5 {
        return None;
    }
    let v = if n % 5 == 0 {
        5
    } else if n % 6 == 0 {
        6
    } else {
        7
    };
    pred(v, format!("n = {n}, m = 5, h = 2"))
}

fn matzke_prime(g: &Group, q: &QuantityQuery) -> Option<Pred> {
    let p = prime_order(g).filter(|&p| p > 2)?;
    let s = upto(q).filter(|&s| s >= 1)?;
    if !bare(q, Family::Rho, Lambda::Z) {
        return None;
    }
    let m = sized(q, p)?;
    pred(p.min(2 * s * (m / 2) + 1), format!("odd prime p = {p}"))
}

fn chi_v1(g: &Group, q: &QuantityQuery) -> Option<Pred> {
    let h = exact(q).filter(|&h| h >= 1)?;
    if !bare(q, Family::Chi, Lambda::N0) {
        return None;
    }
    let n = g.order() as u64;
    pred(v(n, h, 1) + 1, "any finite abelian group, h >= 1")
}

fn chi_upto_v1(g: &Group, q: &QuantityQuery) -> Option<Pred> {
    let s = upto(q).filter(|&s| s >= 1)?;
    if !bare(q, Family::Chi, Lambda::N0) {
        return None;
    }
    let n = g.order() as u64;
    pred(v(n, s, 1) + 1, "any finite abelian group, s >= 1")
}

fn chi_pm_cyclic(g: &Group, q: &QuantityQuery) -> Option<Pred> {
    let h = exact(q).filter(|&h| h >= 1)?;
    if !bare(q, Family::Chi, Lambda::Z) || !g.is_cyclic() {
        return None;
    }
    let n = g.order() as u64;
    pred(v(n, h, 1) + 1, "cyclic group, h >= 1")
}

fn chi_pm_01(g: &Group, q: &QuantityQuery) -> Option<Pred> {
    let n = g.order() as u64;
    if !bare(q, Family::Chi, Lambda::Z) || upto(q) != Some(1) || n < 3 {
        return None;
    }
    pred(if n % 2 == 1 { n - 1 } else { n }, format!("n = {n} >= 3"))
}

fn chi_pm_prime(g: &Group, q: &QuantityQuery) -> Option<Pred> {
    let p = prime_order(g)?;
    let s = upto(q).filter(|&s| s >= 1)?;
    if !bare(q, Family::Chi, Lambda::Z) {
        return None;
    }
    pred(2 * ((p - 2) / (2 * s)) + 2, format!("p = {p} prime"))
}

fn chi_hat_easy(g: &Group, q: &QuantityQuery) -> Option<Pred> {
    let h = exact(q)?;
    if !bare(q, Family::Chi, Lambda::Restricted) {
        return None;
    }
    let n = g.order() as u64;
    if n == 1 {
        return if h <= 1 { pred(1, "trivial group, h <= 1") } else { absent("h > n") };
    }
    match h {
        0 => absent("h = 0 and n >= 2"),
        1 => pred(n, "h = 1"),
        _ if h == n - 1 => pred(n, "h = n - 1"),
        _ if h == n => absent("h = n >= 2"),
        _ if h > n => absent("h > n"),
        _ => None,
    }
}

fn chi_hat_exists(g: &Group, q: &QuantityQuery) -> Option<Pred> {
    let h = exact(q)?;
    if !bare(q, Family::Chi, Lambda::Restricted) || !elementary2(g) {
        return None;
    }
    let n = g.order() as u64;
    ((1..n).contains(&h) && (h == 2 || h + 2 == n)).then(|| Pred { value: None, why: format!("elementary abelian 2-group with h = {h}") })
}

fn chi_hat_2(g: &Group, q: &QuantityQuery) -> Option<Pred> {
    let n = g.order() as u64;
    if !bare(q, Family::Chi, Lambda::Restricted) || exact(q) != Some(2) || n < 3 || elementary2(g) {
        return None;
    }
    pred((n + ord2(g) + 3) / 2, format!("n = {n} >= 3, not elementary abelian 2-group"))
}

fn chi_hat_prime(g: &Group, q: &QuantityQuery) -> Option<Pred> {
    let p = prime_order(g)?;
    let h = exact(q)?;
    if !bare(q, Family::Chi, Lambda::Restricted) || !(1..p).contains(&h) {
        return None;
    }
    pred((p - 2) / h + h + 1, format!("p = {p} prime, 1 <= h <= p - 1"))
}

fn roth_lempel(g: &Group, q: &QuantityQuery) -> Option<Pred> {
    let n = g.order() as u64;
    let h = exact(q)?;
    if !bare(q, Family::Chi, Lambda::Restricted) || n < 12 || n % 2 == 1 || !(3..=n - 2).contains(&h) {
        return None;
    }
    // there the critical number does not exist at all
    if elementary2(g) && h == n - 2 {
        return None;
    }
    let f = g.factors();
    let special = elementary2(g) || (f.last() == Some(&4) && f[..f.len() - 1].iter().all(|&x| x == 2));
    if special && (h == 3 || h + 2 == n / 2) {
        return pred(n / 2 + 2, "Z_2^r or Z_2^(r-1) x Z_4 with h in {3, n/2 - 2}");
    }
    let o = ord2(g);
    let v = if h + 2 <= n / 2 {
        n / 2 + 1
    } else if 2 * h + 3 <= n + o {
        h + 3
    } else {
        h + 2
    };
    pred(v, format!("n = {n} even, 3 <= h <= n - 2"))
}

fn klo_lev_cyclic(g: &Group, q: &QuantityQuery) -> Option<Pred> {
    let s = upto(q).filter(|&s| s >= 1)?;
    if q.family != Family::Chi || q.spec.lambda != Lambda::N0 || !q.generating || q.exclude_zero || !g.is_cyclic() {
        return None;
    }
    let n = g.order() as u64;
    pred(v_hat(n, s) + 1, "cyclic group, generating sets")
}

fn lev_2003(g: &Group, q: &QuantityQuery) -> Option<Pred> {
    let s = upto(q).filter(|&s| s >= 2)?;
    if q.family != Family::Chi || q.spec.lambda != Lambda::N0 || !q.generating || q.exclude_zero || !elementary2(g) {
        return None;
    }
    let r = g.rank() as u64;
    if r <= s {
        pred(1, format!("Z_2^{r} with r <= s"))
    } else {
        pred((s + 2) * (1 << (r - s - 1)) + 1, format!("Z_2^{r} with r > s >= 2"))
    }
}

fn klo_lev_extremes(g: &Group, q: &QuantityQuery) -> Option<Pred> {
    let s = upto(q).filter(|&s| s >= 1)?;
    if q.family != Family::Chi || q.spec.lambda != Lambda::N0 || !q.generating || q.exclude_zero {
        return None;
    }
    let n = g.order() as u64;
    if n < 2 {
        return None;
    }
    let z2 = n == 2;
    let d = diameter(g);
    if s >= d {
        return pred(1, format!("s >= D = {d}"));
    }
    if s + 1 == d && !z2 {
        return pred(g.rank() as u64 + 2, format!("s = D - 1 = {s}"));
    }
    match s {
        1 if !z2 => pred(n, "s = 1"),
        2 if !z2 && !(n == 4 && elementary2(g)) => pred(n / 2 + 1, "s = 2"),
        3 if !elementary2(g) => {
            let best = g
                .all_subgroups()
                .into_iter()
                .filter(|h| h.size() % 3 == 2 && h.indices().into_iter().any(|x| g.order_idx(x) > 2))
                .map(|h| h.size() as u64)
                .min();
            match best {
                Some(d) => pred((d + 1) * n / (3 * d) + 1, format!("least subgroup of order 2 mod 3 not elementary 2: {d}")),
                None => pred(n / 3 + 1, "no subgroup of order 2 mod 3 outside elementary 2-groups"),
            }
        }
        _ => None,
    }
}

fn klo_lev_pm_prime(g: &Group, q: &QuantityQuery) -> Option<Pred> {
    let p = prime_order(g)?;
    let s = upto(q).filter(|&s| s >= 1)?;
    if q.family != Family::Chi || q.spec.lambda != Lambda::Z || !q.generating || q.exclude_zero {
        return None;
    }
    if p >= 3 && 2 * s + 3 <= p {
        pred(2 * ((p - 2) / (2 * s)) + 2, format!("p = {p}, s <= (p-3)/2"))
    } else {
        pred(1, format!("p = {p}, s >= (p-1)/2"))
    }
}

fn star_n(q: &QuantityQuery) -> bool {
    q.family == Family::Chi && q.spec.lambda == Lambda::Restricted && q.spec.terms == Terms::AllN && q.exclude_zero && !q.generating && q.pair.is_none()
}

fn combined(g: &Group, q: &QuantityQuery) -> Option<Pred> {
    let n = g.order() as u64;
    if !star_n(q) || n < 3 {
        return None;
    }
    let p = smallest_prime_factor(n)?;
    let k = (4 * (p - 2)).isqrt();
    if n == p {
        return pred(k, format!("n = p = {p}"));
    }
    let f = g.factors();
    // Z_2^2 belongs to this list as well; the even-order theorem and the
    // search both give 3 there
    let small = matches!(f, [4] | [6] | [8] | [2, 2] | [2, 4] | [3, 3]);
    let q2 = n / p;
    if small || (g.is_cyclic() && is_prime(q2) && 3 <= p && q2 <= p + k + 1) {
        return pred(q2 + p - 1, "listed small group, or cyclic of order pq with q close to p");
    }
    pred(q2 + p - 2, format!("least prime divisor p = {p}"))
}

fn combined_simpler(g: &Group, q: &QuantityQuery) -> Option<Pred> {
    let n = g.order() as u64;
    if !star_n(q) || n < 10 {
        return None;
    }
    let p = smallest_prime_factor(n)?;
    let q2 = n / p;
    let k = (4 * (p - 2)).isqrt();
    if g.is_cyclic() && (n == p || (is_prime(q2) && 3 <= p && q2 <= p + k + 1)) {
        pred((4 * (n - 2)).isqrt(), "cyclic of prime order or order pq with q close to p")
    } else {
        pred(q2 + p - 2, format!("n = {n} >= 10, p = {p}"))
    }
}

fn crit_for_prime(g: &Group, q: &QuantityQuery) -> Option<Pred> {
    let p = prime_order(g).filter(|&p| p > 2)?;
    star_n(q).then(|| Pred { value: Some((4 * (p - 2)).isqrt()), why: format!("odd prime p = {p}") })
}

fn diderrich_mann(g: &Group, q: &QuantityQuery) -> Option<Pred> {
    let n = g.order() as u64;
    if !star_n(q) || n < 4 || n % 2 == 1 {
        return None;
    }
    if matches!(g.factors(), [4] | [6] | [8] | [2, 2] | [2, 4]) {
        pred(n / 2 + 1, "listed group of even order")
    } else {
        pred(n / 2, format!("n = {n} even"))
    }
}

fn mann_wou(g: &Group, q: &QuantityQuery) -> Option<Pred> {
    let f = g.factors();
    if !star_n(q) || f.len() != 2 || f[0] != f[1] || f[0] == 2 || !is_prime(f[0]) {
        return None;
    }
    let p = f[0];
    pred(if p == 3 { 5 } else { 2 * p - 2 }, format!("Z_{p}^2, p odd prime"))
}

fn gao_hamidoune(g: &Group, q: &QuantityQuery) -> Option<Pred> {
    let n = g.order() as u64;
    if !star_n(q) || n % 2 == 0 || n < 3 {
        return None;
    }
    let p = smallest_prime_factor(n)?;
    let r = n / p;
    (r > 1 && !is_prime(r)).then(|| Pred { value: Some(r + p - 2), why: format!("n odd, n/p = {r} composite") })
}

fn phi_pm_1(g: &Group, q: &QuantityQuery) -> Option<Pred> {
    if !bare(q, Family::Phi, Lambda::Z) || exact(q) != Some(1) {
        return None;
    }
    pred((g.order() as u64 + ord2(g) + 1) / 2, "any group, h = 1")
}

fn sigma_pm_1(g: &Group, q: &QuantityQuery) -> Option<Pred> {
    if !bare(q, Family::Sigma, Lambda::Z) || exact(q) != Some(1) {
        return None;
    }
    pred((g.order() as u64 - 1 - ord2(g)) / 2, "any group, h = 1")
}

fn zforp(g: &Group, q: &QuantityQuery) -> Option<Pred> {
    let p = prime_order(g)?;
    let h = exact(q).filter(|&h| h >= 1)?;
    if !bare(q, Family::Tau, Lambda::N0) {
        return None;
    }
    if h % p == 0 {
        pred(0, format!("p = {p} divides h"))
    } else {
        pred((p - 2) / h + 1, format!("p = {p} prime, p does not divide h"))
    }
}

fn tau_elementary(g: &Group, q: &QuantityQuery) -> Option<Pred> {
    let h = exact(q).filter(|&h| h >= 1)?;
    if !bare(q, Family::Tau, Lambda::N0) || g.order() < 2 {
        return None;
    }
    let p = g.factors()[0];
    if !is_prime(p) || g.factors().iter().any(|&f| f != p) {
        return None;
    }
    let r = g.rank() as u32;
    if h % p == 0 {
        return pred(0, format!("Z_{p}^{r} with p | h"));
    }
    let v = if p % h == 1 % h { (p.pow(r) - 1) / h } else { p.pow(r - 1) * (1 + p / h) };
    pred(v, format!("Z_{p}^{r} with p not dividing h"))
}

fn tau_small_t(g: &Group, q: &QuantityQuery) -> Option<Pred> {
    let t = range1(q)?;
    if !bare(q, Family::Tau, Lambda::N0) {
        return None;
    }
    let n = g.order() as u64;
    match t {
        1 => pred(n - 1, "t = 1"),
        2 => pred((n - ord2(g) - 1) / 2, "t = 2"),
        _ => None,
    }
}

fn tau_cyclic_t(g: &Group, q: &QuantityQuery) -> Option<Pred> {
    let t = range1(q)?;
    if !bare(q, Family::Tau, Lambda::N0) || !g.is_cyclic() {
        return None;
    }
    pred((g.order() as u64 - 1) / t, "cyclic group")
}

fn three_free_g(g: &Group, q: &QuantityQuery) -> Option<Pred> {
    if !bare(q, Family::Tau, Lambda::Z) || range1(q) != Some(3) {
        return None;
    }
    let n = g.order() as u64;
    let k = g.exponent();
    if k % 4 == 0 {
        return pred(n / 4, "exponent divisible by 4");
    }
    if k % 2 == 0 {
        return pred((n - ord2(g) - 1) / 4, "exponent even, not divisible by 4");
    }
    let p = smallest_prime_mod(k, 5, 6)?;
    pred((p + 1) * n / (6 * p), format!("exponent odd, least prime divisor 5 mod 6 is {p}"))
}

fn three_free(g: &Group, q: &QuantityQuery) -> Option<Pred> {
    if !bare(q, Family::Tau, Lambda::Z) || range1(q) != Some(3) || !g.is_cyclic() {
        return None;
    }
    let n = g.order() as u64;
    if n % 2 == 0 {
        return pred(n / 4, "n even");
    }
    match smallest_prime_mod(n, 5, 6) {
        Some(p) => pred((p + 1) * n / (6 * p), format!("n odd, least prime divisor 5 mod 6 is {p}")),
        None => pred(n / 6, "n odd, no prime divisor 5 mod 6"),
    }
}

fn tau_hat_prime(g: &Group, q: &QuantityQuery) -> Option<Pred> {
    let p = prime_order(g)?;
    let h = exact(q)?;
    if !bare(q, Family::Tau, Lambda::Restricted) || !(1..p).contains(&h) {
        return None;
    }
    pred((p - 2) / h + h, format!("p = {p} prime, 1 <= h <= p - 1"))
}

fn tau_hat_even_odd(g: &Group, q: &QuantityQuery) -> Option<Pred> {
    let n = g.order() as u64;
    let h = exact(q)?;
    if !bare(q, Family::Tau, Lambda::Restricted) || !g.is_cyclic() || n < 12 || n % 2 == 1 || h % 2 == 0 || !(3..n).contains(&h) {
        return None;
    }
    let v = if h + 2 <= n / 2 {
        n / 2
    } else if h + 1 == n / 2 {
        n / 2 + 1
    } else if h + 2 <= n {
        h + 1
    } else {
        n - 1
    };
    pred(v, format!("n = {n} even, h = {h} odd"))
}

fn tau_hat_12(g: &Group, q: &QuantityQuery) -> Option<Pred> {
    if !bare(q, Family::Tau, Lambda::Restricted) {
        return None;
    }
    let n = g.order() as u64;
    match exact(q)? {
        1 => pred(n - 1, "h = 1"),
        2 => pred((n + ord2(g) + 1) / 2, "h = 2"),
        _ => None,
    }
}

fn tau_hat_n(g: &Group, q: &QuantityQuery) -> Option<Pred> {
    let n = g.order() as u64;
    if !bare(q, Family::Tau, Lambda::Restricted) || exact(q) != Some(n) {
        return None;
    }
    let k = g.exponent();
    let v = if k % 2 == 0 && (n / k) % 2 == 1 { n } else { n - 1 };
    pred(v, format!("h = n, exponent {k}"))
}

fn tau_hat_n1(g: &Group, q: &QuantityQuery) -> Option<Pred> {
    let n = g.order() as u64;
    if !bare(q, Family::Tau, Lambda::Restricted) || n < 2 || exact(q) != Some(n - 1) {
        return None;
    }
    pred(n - 1, "h = n - 1")
}

fn tau_hat_pm_12(g: &Group, q: &QuantityQuery) -> Option<Pred> {
    if !bare(q, Family::Tau, Lambda::RestrictedSigned) {
        return None;
    }
    let n = g.order() as u64;
    match exact(q)? {
        1 => pred(n - 1, "h = 1"),
        2 => pred((n + ord2(g) + 1) / 2, "h = 2"),
        h if h > n => pred(n, "h > n"),
        _ => None,
    }
}

fn tau_hat_pm_n(g: &Group, q: &QuantityQuery) -> Option<Pred> {
    let n = g.order() as u64;
    if !bare(q, Family::Tau, Lambda::RestrictedSigned) || exact(q) != Some(n) {
        return None;
    }
    let k = g.exponent();
    let v = if k % 4 == 2 && (n / k) % 2 == 1 { n } else { n - 1 };
    pred(v, format!("h = n, exponent {k}"))
}

fn tau_hat_pm_small_n(g: &Group, q: &QuantityQuery) -> Option<Pred> {
    let t = range1(q)?;
    if !bare(q, Family::Tau, Lambda::RestrictedSigned) || !g.is_cyclic() || t > 63 {
        return None;
    }
    let n = g.order() as u64;
    (1u64 << (t - 1) <= n && n < 1u64 << t).then(|| Pred { value: Some(t - 1), why: format!("2^{} <= n < 2^{t}", t - 1) })
}

fn tau_hat_pm_cyclic(g: &Group, q: &QuantityQuery) -> Option<Pred> {
    if !bare(q, Family::Tau, Lambda::RestrictedSigned) || q.spec.terms != Terms::AllN || !g.is_cyclic() {
        return None;
    }
    pred(log2_floor(g.order() as u64), "cyclic group")
}

fn mu_pair(q: &QuantityQuery, l: Lambda) -> Option<(u64, u64)> {
    (q.family == Family::Mu && q.spec.lambda == l && !q.generating && !q.exclude_zero).then_some(q.pair?).filter(|&(k, l)| k > l && l >= 1)
}

fn diananda_yap(g: &Group, q: &QuantityQuery) -> Option<Pred> {
    if mu_pair(q, Lambda::N0)? != (2, 1) || !g.is_cyclic() {
        return None;
    }
    pred(v(g.order() as u64, 3, 1), "cyclic group, (k,l) = (2,1)")
}

fn mu_prime(g: &Group, q: &QuantityQuery) -> Option<Pred> {
    let p = prime_order(g)?;
    let (k, l) = mu_pair(q, Lambda::N0)?;
    if (k - l) % p == 0 {
        pred(0, format!("p = {p} divides k - l"))
    } else {
        pred((p - 2) / (k + l) + 1, format!("p = {p} prime"))
    }
}

fn mu_bounds(g: &Group, q: &QuantityQuery) -> Option<Pred> {
    let (k, l) = mu_pair(q, Lambda::N0)?;
    if !g.is_cyclic() {
        return None;
    }
    let n = g.order() as u64;
    let lo = v(n, k + l, k - l);
    (lo == v(n, k + l, 1)).then(|| Pred { value: Some(lo), why: "lower and upper bounds coincide".into() })
}

fn mu_31(g: &Group, q: &QuantityQuery) -> Option<Pred> {
    if mu_pair(q, Lambda::N0)? != (3, 1) || !g.is_cyclic() {
        return None;
    }
    pred(v(g.order() as u64, 4, 2), "cyclic group, (k,l) = (3,1)")
}

fn mu_41(g: &Group, q: &QuantityQuery) -> Option<Pred> {
    if mu_pair(q, Lambda::N0)? != (4, 1) || !g.is_cyclic() {
        return None;
    }
    pred(v(g.order() as u64, 5, 3), "cyclic group, (k,l) = (4,1)")
}

fn m21(g: &Group, q: &QuantityQuery) -> Option<Pred> {
    if mu_pair(q, Lambda::Restricted)? != (2, 1) || !g.is_cyclic() {
        return None;
    }
    let n = g.order() as u64;
    match smallest_prime_mod(n, 2, 3) {
        Some(p) => pred((p + 1) * n / (3 * p), format!("least prime divisor 2 mod 3 is {p}")),
        None => pred(n / 3 + 1, "no prime divisor 2 mod 3"),
    }
}

fn gao_ger_sch(g: &Group, q: &QuantityQuery) -> Option<Pred> {
    let f = g.factors();
    if f.len() != 2 || f[0] != f[1] || f[0] < 47 || !is_prime(f[0]) || !bare(q, Family::Tau, Lambda::Restricted) || exact(q) != Some(f[0]) {
        return None;
    }
    pred(2 * f[0] - 2, format!("Z_p^2 with p = {} >= 47", f[0]))
}

// ---------------------------------------------------------------------------
// sweeps

const H_MAX: u64 = 6;

fn sw_rho(g: &Group) -> Vec<QuantityQuery> {
    let n = g.order() as u64;
    let mut out = Vec::new();
    for m in 1..=n {
        for h in 1..=H_MAX {
            out.push(query(Family::Rho, Lambda::N0, Terms::Exact(h)).with_m(m));
        }
    }
    out
}

fn sw_rho_hat(g: &Group) -> Vec<QuantityQuery> {
    let n = g.order() as u64;
    let mut out = Vec::new();
    for m in 1..=n {
        for h in 1..=m.min(H_MAX) {
            out.push(query(Family::Rho, Lambda::Restricted, Terms::Exact(h)).with_m(m));
        }
    }
    out
}

fn sw_rho_pm(g: &Group) -> Vec<QuantityQuery> {
    let n = g.order() as u64;
    let mut out = Vec::new();
    for m in 1..=n {
        for s in 1..=4 {
            out.push(query(Family::Rho, Lambda::Z, Terms::UpTo(s)).with_m(m));
        }
    }
    out
}

fn sw_family(f: Family, l: Lambda, terms: impl IntoIterator<Item = Terms>) -> Vec<QuantityQuery> {
    terms.into_iter().map(|t| query(f, l, t)).collect()
}

fn sw_chi(_: &Group) -> Vec<QuantityQuery> {
    sw_family(Family::Chi, Lambda::N0, (1..=H_MAX).map(Terms::Exact))
}

fn sw_chi_upto(_: &Group) -> Vec<QuantityQuery> {
    sw_family(Family::Chi, Lambda::N0, (1..=H_MAX).map(Terms::UpTo))
}

fn sw_chi_pm(_: &Group) -> Vec<QuantityQuery> {
    sw_family(Family::Chi, Lambda::Z, (1..=H_MAX).map(Terms::Exact))
}

fn sw_chi_pm_upto(_: &Group) -> Vec<QuantityQuery> {
    sw_family(Family::Chi, Lambda::Z, (1..=H_MAX).map(Terms::UpTo))
}

fn sw_chi_hat(g: &Group) -> Vec<QuantityQuery> {
    sw_family(Family::Chi, Lambda::Restricted, (0..=g.order() as u64 + 1).map(Terms::Exact))
}

fn sw_chi_gen(g: &Group) -> Vec<QuantityQuery> {
    let top = diameter(g).max(1) + 1;
    (1..=top).map(|s| query(Family::Chi, Lambda::N0, Terms::UpTo(s)).generating(true)).collect()
}

fn sw_chi_gen_pm(g: &Group) -> Vec<QuantityQuery> {
    let top = g.order() as u64 / 2 + 1;
    (1..=top).map(|s| query(Family::Chi, Lambda::Z, Terms::UpTo(s)).generating(true)).collect()
}

fn sw_star(_: &Group) -> Vec<QuantityQuery> {
    vec![query(Family::Chi, Lambda::Restricted, Terms::AllN).exclude_zero(true)]
}

fn sw_phi_pm(_: &Group) -> Vec<QuantityQuery> {
    sw_family(Family::Phi, Lambda::Z, [Terms::Exact(1)])
}

fn sw_sigma_pm(_: &Group) -> Vec<QuantityQuery> {
    sw_family(Family::Sigma, Lambda::Z, [Terms::Exact(1)])
}

fn sw_tau(_: &Group) -> Vec<QuantityQuery> {
    sw_family(Family::Tau, Lambda::N0, (1..=H_MAX).map(Terms::Exact))
}

fn sw_tau_t(_: &Group) -> Vec<QuantityQuery> {
    sw_family(Family::Tau, Lambda::N0, (1..=4).map(Terms::Range1))
}

fn sw_tau_pm3(_: &Group) -> Vec<QuantityQuery> {
    sw_family(Family::Tau, Lambda::Z, [Terms::Range1(3)])
}

fn sw_tau_hat(g: &Group) -> Vec<QuantityQuery> {
    sw_family(Family::Tau, Lambda::Restricted, (1..=g.order() as u64).map(Terms::Exact))
}

fn sw_tau_hat_pm(g: &Group) -> Vec<QuantityQuery> {
    let n = g.order() as u64;
    let mut out = sw_family(Family::Tau, Lambda::RestrictedSigned, (1..=n + 1).map(Terms::Exact));
    out.extend(sw_family(Family::Tau, Lambda::RestrictedSigned, (1..=6).map(Terms::Range1)));
    out.push(query(Family::Tau, Lambda::RestrictedSigned, Terms::AllN));
    out
}

fn sw_mu(_: &Group) -> Vec<QuantityQuery> {
    let mut out = Vec::new();
    for k in 2..=5 {
        for l in 1..k {
            out.push(query(Family::Mu, Lambda::N0, Terms::Exact(k)).with_pair(k, l));
        }
    }
    out
}

fn sw_mu_hat(_: &Group) -> Vec<QuantityQuery> {
    vec![query(Family::Mu, Lambda::Restricted, Terms::Exact(2)).with_pair(2, 1)]
}

// ---------------------------------------------------------------------------
// registry

macro_rules! thm {
    ($id:expr, $st:expr, $eval:expr, $sweep:expr) => {
        Entry { id: $id, kind: EntryKind::Theorem, statement: $st, eval: Some($eval), sweep: Some($sweep) }
    };
}

macro_rules! conj {
    ($id:expr, $st:expr) => {
        Entry { id: $id, kind: EntryKind::Conjecture, statement: $st, eval: None, sweep: None }
    };
}

pub static REGISTRY: &[Entry] = &[
    thm!("thm:rho=u", "rho(G,m,h) = u(n,m,h)", rho_u, sw_rho),
    thm!("cor:rho-vs-p", "rho(G,m,h) = min{p, hm-h+1} for m <= p, p the least prime divisor of n", rho_vs_p, sw_rho),
    thm!("thm:Dias-Da-Silva-Hamidoune", "rho^(Z_p,m,h) = min{p, hm-h^2+1} for 1 <= h <= m <= p", dias_da_silva, sw_rho_hat),
    thm!("prop:rhohat-m=4", "rho^(G,4,2) = 3, 4, 5 as |Ord(G,2)| >= 2, = 1, = 0", rhohat_m4, sw_rho_hat),
    thm!("thm:carrick", "rho^(G,5,2) = 5 if 5 | n, 6 if 6 | n, 7 otherwise", carrick, sw_rho_hat),
    thm!("thm:Matzke-limited-prime", "rho_pm(Z_p,m,[0,s]) = min{p, 2s floor(m/2) + 1} for odd primes p", matzke_prime, sw_rho_pm),
    thm!("thm:h-crit-numb", "chi(G,h) = v_1(n,h) + 1", chi_v1, sw_chi),
    thm!("thm:[0,s]-crit-numb", "chi(G,[0,s]) = v_1(n,s) + 1", chi_upto_v1, sw_chi_upto),
    thm!("thm:chi-pm-cyclic-h", "chi_pm(Z_n,h) = v_1(n,h) + 1", chi_pm_cyclic, sw_chi_pm),
    thm!("prop:[0,1]-pm-crit-numb", "chi_pm(G,[0,1]) = n - 1 (n odd), n (n even), n >= 3", chi_pm_01, sw_chi_pm_upto),
    thm!("thm:crit-prime-from-KloLev", "chi_pm(Z_p,[0,s]) = 2 floor((p-2)/(2s)) + 2", chi_pm_prime, sw_chi_pm_upto),
    thm!("prop:restricted-h-critical-easy", "chi^(G,1) = chi^(G,n-1) = n; chi^(G,0), chi^(G,n) absent for n >= 2; absent for h > n", chi_hat_easy, sw_chi_hat),
    thm!("thm:crit-exists", "chi^(G,h) is absent for elementary abelian 2-groups with h = 2 or h = n - 2", chi_hat_exists, sw_chi_hat),
    thm!("prop:2-chrom-G", "chi^(G,2) = (n + |Ord(G,2)| + 3)/2 for n >= 3, G not elementary abelian 2-group", chi_hat_2, sw_chi_hat),
    thm!("thm:prime-rest-crit", "chi^(Z_p,h) = floor((p-2)/h) + h + 1 for 1 <= h <= p - 1", chi_hat_prime, sw_chi_hat),
    thm!("thm:Roth-Lempel-even", "chi^(G,h) for n >= 12 even, 3 <= h <= n - 2", roth_lempel, sw_chi_hat),
    thm!("thm:Klo-Lev-cyclic", "chi^(Z_n,[0,s]) over generating sets = v^(n,s) + 1", klo_lev_cyclic, sw_chi_gen),
    thm!("thm:Lev-2003a", "chi^(Z_2^r,[0,s]) over generating sets = 1 (r <= s), (s+2) 2^(r-s-1) + 1 (r > s), s >= 2", lev_2003, sw_chi_gen),
    thm!("thm:Klopsch-Lev-extremes", "chi^(G,[0,s]) over generating sets for s in {1, 2, 3, D-1} and s >= D", klo_lev_extremes, sw_chi_gen),
    thm!("cor:prime-from-KloLev", "chi^_pm(Z_p,[0,s]) over generating sets = 2 floor((p-2)/(2s)) + 2 or 1", klo_lev_pm_prime, sw_chi_gen_pm),
    thm!("thm:combined", "chi^(G*,N) for n >= 3 in terms of the least prime divisor p of n", combined, sw_star),
    thm!("cor:combined-simpler", "chi^(G*,N) = floor(2 sqrt(n-2)) or n/p + p - 2 for n >= 10", combined_simpler, sw_star),
    thm!("thm:critical-for-prime", "chi^(Z_p*,N) = floor(2 sqrt(p-2)) for odd primes p", crit_for_prime, sw_star),
    thm!("thm:Diderrich-and-Mann", "chi^(G*,N) = n/2 + 1 for Z_4, Z_6, Z_8, Z_2^2, Z_2 x Z_4 and n/2 for other even n >= 4", diderrich_mann, sw_star),
    thm!("thm:Mann-and-Wou", "chi^((Z_p^2)*,N) = 2p - 1 for p = 3 and 2p - 2 for other odd primes", mann_wou, sw_star),
    thm!("thm:Gao-and-Hamidoune", "chi^(G*,N) = n/p + p - 2 for odd n with n/p composite", gao_hamidoune, sw_star),
    thm!("prop:phi-pm-US-h=1", "phi_pm(G,1) = (n + |Ord(G,2)| + 1)/2", phi_pm_1, sw_phi_pm),
    thm!("prop:sigma-pm-h=1", "sigma_pm(G,1) = (n - 1 - |Ord(G,2)|)/2", sigma_pm_1, sw_sigma_pm),
    thm!("thm:zforp", "tau(Z_p,h) = 0 if p | h, floor((p-2)/h) + 1 otherwise", zforp, sw_tau),
    thm!("thm:tau-elementary", "tau(Z_p^r,h) = 0 if p | h, v_1(p^r,h) otherwise", tau_elementary, sw_tau),
    thm!("prop:tau-[1,1]-[1,2]", "tau(G,[1,1]) = n - 1, tau(G,[1,2]) = (n - |Ord(G,2)| - 1)/2", tau_small_t, sw_tau_t),
    thm!("cor:tau-cyclic-[1,t]", "tau(Z_n,[1,t]) = floor((n-1)/t)", tau_cyclic_t, sw_tau_t),
    thm!("thm:3freeG", "tau_pm(G,[1,3]) by the exponent of G", three_free_g, sw_tau_pm3),
    thm!("thm:3free", "tau_pm(Z_n,[1,3]) = floor(n/4), (1+1/p) n/6, floor(n/6)", three_free, sw_tau_pm3),
    thm!("thm:Zforp", "tau^(Z_p,h) = floor((p-2)/h) + h for 1 <= h <= p - 1", tau_hat_prime, sw_tau_hat),
    thm!("thm:Zfor-n-even-h-odd", "tau^(Z_n,h) for n >= 12 even and 3 <= h <= n - 1 odd", tau_hat_even_odd, sw_tau_hat),
    thm!("prop:tau-hat-h=1,2", "tau^(G,1) = n - 1, tau^(G,2) = (n + |Ord(G,2)| + 1)/2", tau_hat_12, sw_tau_hat),
    thm!("prop:tau-hat-h=n", "tau^(G,n) = n if exponent even and n/exponent odd, n - 1 otherwise", tau_hat_n, sw_tau_hat),
    thm!("prop:tau-hat-h=n-1", "tau^(G,n-1) = n - 1", tau_hat_n1, sw_tau_hat),
    thm!("prop:tau-hat-pm-h=1,2", "tau^_pm(G,1) = n - 1, tau^_pm(G,2) = (n + |Ord(G,2)| + 1)/2, tau^_pm(G,h) = n for h > n", tau_hat_pm_12, sw_tau_hat_pm),
    thm!("prop:tau-hat-pm-h=n", "tau^_pm(G,n) = n if exponent = 2 mod 4 and n/exponent odd, n - 1 otherwise", tau_hat_pm_n, sw_tau_hat_pm),
    thm!("prop:prob-tau-hat-pm-G-1t-n-small", "tau^_pm(Z_n,[1,t]) = t - 1 for 2^(t-1) <= n < 2^t", tau_hat_pm_small_n, sw_tau_hat_pm),
    thm!("prop:tau-hat-pm-for-cyclic-groups", "tau^_pm(Z_n,N) = floor(log2 n)", tau_hat_pm_cyclic, sw_tau_hat_pm),
    thm!("thm:Diananda-Yap", "mu(Z_n,{2,1}) = v_1(n,3)", diananda_yap, sw_mu),
    thm!("thm:muforp", "mu(Z_p,{k,l}) = 0 if p | k - l, floor((p-2)/(k+l)) + 1 otherwise", mu_prime, sw_mu),
    thm!("thm:mu", "v_{k-l}(n,k+l) <= mu(Z_n,{k,l}) <= v_1(n,k+l), used when the bounds agree", mu_bounds, sw_mu),
    thm!("thm:mu(3,1)", "mu(Z_n,{3,1}) = v_2(n,4)", mu_31, sw_mu),
    thm!("thm:Butterworth-mu(4,1)", "mu(Z_n,{4,1}) = v_3(n,5)", mu_41, sw_mu),
    thm!("thm:M21", "mu^(Z_n,{2,1}) = (1 + 1/p) n/3 for the least prime p = 2 mod 3 dividing n, floor(n/3) + 1 otherwise", m21, sw_mu_hat),
    Entry {
        id: "thm:GaoGerSch",
        kind: EntryKind::Asserted,
        statement: "tau^(Z_p^2,p) = 2p - 2 for primes p >= 47; asserted, unverifiable at desk scale",
        eval: Some(gao_ger_sch),
        sweep: None,
    },
    conj!("conj:zconj", "tau(Z_n,h) = v_h(n,h)"),
    conj!("conj:zfconj", "tau_pm(Z_n,3) = v_3(n,3)"),
    conj!("conj:rhohatforh=2", "rho^(Z_n,m,2) attains its upper bound for 3 <= m <= n"),
    conj!("conj:rhohatforh=3", "rho^(Z_n,m,3) attains its upper bound for 4 <= m <= n"),
    conj!("conj:Matzke-limited-conj", "rho_pm(Z_n,m,[0,s]) = u_pm(n,m,[0,s])"),
    conj!("conj:chi-pm-cyclic", "chi_pm(Z_n,[0,s]) = v_pm(n,s) + 1"),
    conj!("conj:mu-[0,2]", "mu(Z_n,[0,2]) = v_2(n,4)"),
    conj!("conj:no-perfect-bases", "no perfect s-bases of size m unless s = 1 or m = 1"),
    conj!("conj:upper-for-|Sigma|", "rho^(Z_n,m,N_0) attains its divisor upper bound"),
    conj!("conj:zero-sum-free-simple-n-even", "tau^(Z_n,N) = floor(sqrt(2n-3)) for even n"),
    conj!("conj:GaoTha", "tau^(Z_k^2,k) = 2k - 2 (k odd), 2k (k even)"),
    conj!("conj:inverse-tau-hat-pm-2-power", "the largest dissociated subsets of Z_{2^k} are exactly the recursive family A_k"),
    conj!("conj:dim-G-m", "dim(Z_n,m) = floor(log2 m)"),
    Entry {
        id: "note:Ham-1998a-lemma-3.3",
        kind: EntryKind::Annotation,
        statement: "A lemma in the cited 1998 work claiming [1,2]^A = Z_n for A in Z_n \\ {0} with |A| >= n/2 fails for every even n.",
        eval: None,
        sweep: None,
    },
    Entry {
        id: "note:Qu-2014a",
        kind: EntryKind::Annotation,
        statement: "The cited 2014 work misstates the critical numbers of Z_2^2 and of Z_{p^2}.",
        eval: None,
        sweep: None,
    },
];

fn canon(id: &str) -> String {
    let s = id.trim().replace(' ', "-");
    let s = s.split_once(':').map_or(s.as_str(), |(_, r)| r).to_string();
    s.strip_prefix("conj-").unwrap_or(&s).to_string()
}

/// Looks up an entry by id; the kind prefix and a `conj-` stem are optional,
/// and case is ignored when that leaves a single match.
pub fn entry(id: &str) -> Result<&'static Entry> {
    let c = canon(id);
    let bad = || Error::Parse { what: "citation id", token: id.to_string() };
    if let Some(e) = REGISTRY.iter().find(|e| e.id == id.trim() || canon(e.id) == c) {
        return Ok(e);
    }
    let mut loose = REGISTRY.iter().filter(|e| canon(e.id).eq_ignore_ascii_case(&c));
    match (loose.next(), loose.next()) {
        (Some(e), None) => Ok(e),
        _ => Err(bad()),
    }
}

/// Every registry result whose hypotheses hold for `(g, q)`.
pub fn known_values(g: &Group, q: &QuantityQuery) -> Vec<KnownResult> {
    REGISTRY
        .iter()
        .filter_map(|e| {
            let p = (e.eval?)(g, q)?;
            Some(KnownResult { citation_id: e.id.to_string(), value: p.value, applicability: p.why })
        })
        .collect()
}

/// The predicted value, after checking that all applicable results agree.
pub fn known_value(g: &Group, q: &QuantityQuery) -> Result<Option<KnownResult>> {
    let all = known_values(g, q);
    if let Some(first) = all.first() {
        if let Some(other) = all.iter().find(|r| r.value != first.value) {
            return Err(Error::RegistryConflict(first.citation_id.clone(), other.citation_id.clone()));
        }
    }
    Ok(all.into_iter().next())
}

// ---------------------------------------------------------------------------
// sweeps and reports

/// Parameter grid. `h` doubles as `s` or `k` where a conjecture uses those;
/// an empty `m` list means every admissible size.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Grid {
    pub n: Vec<u64>,
    #[serde(default)]
    pub h: Vec<u64>,
    #[serde(default)]
    pub m: Vec<u64>,
}

impl Grid {
    pub fn new(n: impl IntoIterator<Item = u64>) -> Self {
        Grid { n: n.into_iter().collect(), ..Default::default() }
    }
    pub fn with_h(mut self, h: impl IntoIterator<Item = u64>) -> Self {
        self.h = h.into_iter().collect();
        self
    }
    pub fn with_m(mut self, m: impl IntoIterator<Item = u64>) -> Self {
        self.m = m.into_iter().collect();
        self
    }
    fn ms(&self, lo: u64, hi: u64) -> Vec<u64> {
        if self.m.is_empty() {
            (lo..=hi).collect()
        } else {
            self.m.iter().copied().filter(|m| (lo..=hi).contains(m)).collect()
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "kebab-case")]
pub enum Status {
    Confirmed,
    Refuted,
    Skipped { reason: String },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckPoint {
    pub id: String,
    pub group: String,
    pub params: BTreeMap<String, u64>,
    pub predicted: Option<u64>,
    pub observed: Option<u64>,
    #[serde(flatten)]
    pub status: Status,
    /// For conjectures implied by coinciding bounds: whether this point was
    /// forced by that coincidence.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub forced: Option<bool>,
    /// Coordinates of the elements of a set attaining `observed`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Vec<Vec<u64>>>,
    pub nodes: u64,
}

impl CheckPoint {
    pub fn is_confirmed(&self) -> bool {
        self.status == Status::Confirmed
    }
    pub fn is_refuted(&self) -> bool {
        self.status == Status::Refuted
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConjectureReport {
    pub conjecture_id: String,
    pub kind: EntryKind,
    pub grid: Grid,
    pub points: Vec<CheckPoint>,
}

impl ConjectureReport {
    pub fn confirmed(&self) -> usize {
        self.points.iter().filter(|p| p.is_confirmed()).count()
    }
    pub fn refuted(&self) -> usize {
        self.points.iter().filter(|p| p.is_refuted()).count()
    }
    pub fn skipped(&self) -> usize {
        self.points.len() - self.confirmed() - self.refuted()
    }
}

fn coords(s: &Subset) -> Vec<Vec<u64>> {
    s.elements().into_iter().map(|e| e.coords).collect()
}

fn params(kv: &[(&str, u64)]) -> BTreeMap<String, u64> {
    kv.iter().map(|(k, v)| (k.to_string(), *v)).collect()
}

fn skipped(id: &str, g: &Group, params: BTreeMap<String, u64>, predicted: Option<u64>, e: Error) -> CheckPoint {
    CheckPoint { id: id.to_string(), group: g.to_string(), params, predicted, observed: None, status: Status::Skipped { reason: e.to_string() }, forced: None, witness: None, nodes: 0 }
}

/// Compares a predicted value with exhaustive search.
fn probe(id: &str, g: &Group, q: &QuantityQuery, params: BTreeMap<String, u64>, predicted: Option<u64>, cfg: &SearchConfig) -> CheckPoint {
    match evaluate(g, q, cfg) {
        Ok(r) => CheckPoint {
            id: id.to_string(),
            group: g.to_string(),
            params,
            predicted,
            observed: r.value,
            status: if r.value == predicted { Status::Confirmed } else { Status::Refuted },
            forced: None,
            witness: r.witness_subset(g).map(|w| coords(&w)),
            nodes: r.nodes,
        },
        Err(e @ Error::BudgetExceeded { .. }) => skipped(id, g, params, predicted, e),
        Err(e) => skipped(id, g, params, predicted, e),
    }
}

fn query_params(q: &QuantityQuery) -> BTreeMap<String, u64> {
    let mut p = BTreeMap::new();
    match q.spec.terms {
        Terms::Exact(h) => {
            p.insert("h".into(), h);
        }
        Terms::UpTo(s) => {
            p.insert("s".into(), s);
        }
        Terms::Range1(t) => {
            p.insert("t".into(), t);
        }
        Terms::AllN0 | Terms::AllN => {}
    }
    if let Some(m) = q.m {
        p.insert("m".into(), m);
    }
    if let Some((k, l)) = q.pair {
        p.insert("k".into(), k);
        p.insert("l".into(), l);
    }
    p
}

/// Soundness sweep of one registry theorem over every group of order at
/// most `max_n` and the entry's parameter range.
pub fn theorem_sweep(id: &str, max_n: u64, cfg: &SearchConfig) -> Result<ConjectureReport> {
    let e = entry(id)?;
    let (Some(eval), Some(sweep)) = (e.eval, e.sweep) else {
        return Err(Error::InvalidParameter(format!("{} is not a checkable theorem", e.id)));
    };
    if !e.sweepable() {
        return Err(Error::InvalidParameter(format!("{} is not a checkable theorem", e.id)));
    }
    let mut work = Vec::new();
    for n in 1..=max_n {
        for g in Group::all_of_order(n) {
            for q in sweep(&g) {
                if let Some(p) = eval(&g, &q) {
                    work.push((g.clone(), q, p.value));
                }
            }
        }
    }
    let points = work.par_iter().map(|(g, q, p)| probe(e.id, g, q, query_params(q), *p, cfg)).collect();
    Ok(ConjectureReport { conjecture_id: e.id.to_string(), kind: e.kind, grid: Grid::new(1..=max_n), points })
}

// ---------------------------------------------------------------------------
// conjecture predictions

fn rhohat2_bound(n: u64, m: u64) -> u64 {
    let pow2_plus1 = m >= 2 && (m - 1).is_power_of_two();
    let minus4 = (n % 2 == 0 && m % 2 == 0) || (n % (2 * m - 2) == 0 && !pow2_plus1);
    u(n, m, 2).min(if minus4 { 2 * m - 4 } else { 2 * m - 3 })
}

fn rhohat3_bound(n: u64, m: u64) -> u64 {
    let d0 = gcd(n, m - 1);
    let c = if d0 >= 8 {
        3 * m - 3 - d0
    } else if d0 == 7 || (d0 <= 5 && n % 3 == 0 && m % 3 == 0) || (d0 <= 5 && m > 3 && n % (3 * m - 9) == 0 && (m - 3) % 5 == 0) {
        3 * m - 10
    } else if d0 == 6 || (m == 6 && n % 10 == 0 && n % 3 != 0) {
        3 * m - 9
    } else {
        3 * m - 8
    };
    u(n, m, 3).min(c)
}

fn two_adic(k: u64) -> u32 {
    k.trailing_zeros()
}

/// `u_pm(n,m,[0,s])`, the divisor bound for signed `[0,s]`-fold sumsets.
pub fn u_pm_upto(n: u64, m: u64, s: u64) -> u64 {
    let f = |d: u64, m: u64| (s * m.div_ceil(d) - s + 1) * d;
    crate::arith::divisors(n)
        .iter()
        .map(|&d| {
            let top = d * m.div_ceil(d);
            if two_adic(n) >= two_adic(top) {
                f(d, m)
            } else {
                f(d, m + d)
            }
        })
        .min()
        .unwrap_or(0)
}

/// Divisor upper bound for `rho^(Z_n,m,N_0)`.
pub fn sigma_upper(n: u64, m: u64) -> u64 {
    crate::arith::divisors(n)
        .iter()
        .map(|&d| {
            let c = ceil_half_rational(m, d) as u64;
            (c * m - c * c * d + 1) * d
        })
        .min()
        .unwrap_or(0)
}

/// `ceil((m/d - 1)/2)` for rational `m/d`.
fn ceil_half_rational(m: u64, d: u64) -> i64 {
    let num = m as i64 - d as i64;
    let den = 2 * d as i64;
    -((-num).div_euclid(den))
}

/// The recursive family `A_k` of `k`-subsets of `Z_{2^k}` (as residues).
pub fn family_a(k: u32) -> Vec<Vec<u64>> {
    let mut fam = vec![vec![1u64]];
    if k == 0 {
        return vec![Vec::new()];
    }
    for j in 1..k {
        let top = 1u64 << j;
        let mut next = Vec::new();
        for a in &fam {
            for eps in 0..(1u64 << j) {
                let mut b: Vec<u64> = a.iter().enumerate().map(|(i, &x)| x + ((eps >> i) & 1) * top).collect();
                b.push(top);
                b.sort_unstable();
                next.push(b);
            }
        }
        fam = next;
    }
    fam.sort();
    fam.dedup();
    fam
}

/// `dim(Z_n,m)` for every `m`, by dynamic programming over all subsets.
/// Index `m` of the result holds the value and a set attaining it.
pub fn dissociativity_dims(n: u64, cfg: &SearchConfig) -> Result<Vec<(u64, Vec<u64>)>> {
    if n == 0 || n > 30 {
        return Err(Error::InvalidParameter(format!("dimension table needs 1 <= n <= 30, got {n}")));
    }
    let total = (1u128 << n) * n as u128;
    if total > cfg.budget as u128 {
        return Err(Error::BudgetExceeded { budget: cfg.budget, estimate: total });
    }
    let size = 1usize << n;
    let cap = log2_floor(n) as u32;
    let mut dim = vec![0u8; size];
    let mut best: Vec<Option<(u8, usize)>> = vec![None; n as usize + 1];
    for mask in 0..size {
        let k = mask.count_ones();
        let mut d = 0u8;
        if k <= cap && dissociated(mask, n) {
            d = k as u8;
        } else {
            let mut rest = mask;
            while rest != 0 {
                let b = rest & rest.wrapping_neg();
                d = d.max(dim[mask ^ b]);
                rest ^= b;
            }
        }
        dim[mask] = d;
        let slot = &mut best[k as usize];
        if slot.is_none_or(|(v, _)| d < v) {
            *slot = Some((d, mask));
        }
    }
    Ok(best
        .into_iter()
        .map(|b| {
            let (d, mask) = b.expect("every size occurs");
            (d as u64, (0..n).filter(|i| mask >> i & 1 == 1).collect())
        })
        .collect())
}

/// All `2^k` subset sums distinct modulo `n`.
fn dissociated(mask: usize, n: u64) -> bool {
    let elems: Vec<u64> = (0..n).filter(|i| mask >> i & 1 == 1).collect();
    let mut sums = vec![0u64];
    for &a in &elems {
        let extra: Vec<u64> = sums.iter().map(|&s| (s + a) % n).collect();
        sums.extend(extra);
    }
    let mut seen = vec![false; n as usize];
    sums.into_iter().all(|s| !std::mem::replace(&mut seen[s as usize], true))
}

struct Item {
    g: Group,
    q: QuantityQuery,
    params: BTreeMap<String, u64>,
    predicted: Option<u64>,
    forced: Option<bool>,
}

fn cyc(n: u64) -> Option<Group> {
    Group::cyclic(n).ok()
}

fn value_items(id: &str, grid: &Grid) -> Result<Vec<Item>> {
    let mut out = Vec::new();
    let hs = |d: &[u64]| if grid.h.is_empty() { d.to_vec() } else { grid.h.clone() };
    let mut push = |g: Group, q: QuantityQuery, kv: &[(&str, u64)], predicted: Option<u64>, forced: Option<bool>| {
        out.push(Item { g, q, params: params(kv), predicted, forced });
    };
    match id {
        "conj:zconj" => {
            for &n in &grid.n {
                for h in hs(&[3]) {
                    let Some(g) = cyc(n) else { continue };
                    let (vh, v1) = (v(n, h, h), v(n, h, 1));
                    push(g, query(Family::Tau, Lambda::N0, Terms::Exact(h)), &[("n", n), ("h", h)], Some(vh), Some(vh == v1));
                }
            }
        }
        "conj:zfconj" => {
            for &n in &grid.n {
                let Some(g) = cyc(n) else { continue };
                let (v3, v1) = (v(n, 3, 3), v(n, 3, 1));
                push(g, query(Family::Tau, Lambda::Z, Terms::Exact(3)), &[("n", n), ("h", 3)], Some(v3), Some(v3 == v1));
            }
        }
        "conj:rhohatforh=2" | "conj:rhohatforh=3" => {
            let h = if id.ends_with('2') { 2 } else { 3 };
            for &n in &grid.n {
                for m in grid.ms(h + 1, n) {
                    let Some(g) = cyc(n) else { continue };
                    let b = if h == 2 { rhohat2_bound(n, m) } else { rhohat3_bound(n, m) };
                    push(g, query(Family::Rho, Lambda::Restricted, Terms::Exact(h)).with_m(m), &[("n", n), ("m", m), ("h", h)], Some(b), None);
                }
            }
        }
        "conj:Matzke-limited-conj" => {
            for &n in &grid.n {
                for s in hs(&[1, 2, 3]) {
                    for m in grid.ms(1, n) {
                        let Some(g) = cyc(n) else { continue };
                        push(g, query(Family::Rho, Lambda::Z, Terms::UpTo(s)).with_m(m), &[("n", n), ("m", m), ("s", s)], Some(u_pm_upto(n, m, s)), None);
                    }
                }
            }
        }
        "conj:chi-pm-cyclic" => {
            for &n in &grid.n {
                for s in hs(&[1, 2, 3]) {
                    let Some(g) = cyc(n) else { continue };
                    let (vp, v1) = (v_pm(n, s), v(n, s, 1));
                    push(g, query(Family::Chi, Lambda::Z, Terms::UpTo(s)), &[("n", n), ("s", s)], Some(vp + 1), Some(vp == v1));
                }
            }
        }
        "conj:mu-[0,2]" => {
            for &n in &grid.n {
                let Some(g) = cyc(n) else { continue };
                push(g, query(Family::Mu, Lambda::N0, Terms::UpTo(2)), &[("n", n), ("s", 2)], Some(v(n, 4, 2)), None);
            }
        }
        "conj:upper-for-|Sigma|" => {
            for &n in &grid.n {
                for m in grid.ms(1, n) {
                    let Some(g) = cyc(n) else { continue };
                    push(g, query(Family::Rho, Lambda::Restricted, Terms::AllN0).with_m(m), &[("n", n), ("m", m)], Some(sigma_upper(n, m)), None);
                }
            }
        }
        "conj:zero-sum-free-simple-n-even" => {
            for &n in grid.n.iter().filter(|&&n| n % 2 == 0) {
                let Some(g) = cyc(n) else { continue };
                push(g, query(Family::Tau, Lambda::Restricted, Terms::AllN), &[("n", n)], Some((2 * n - 3).isqrt()), None);
            }
        }
        "conj:GaoTha" => {
            for k in hs(&[2, 3]) {
                let Ok(g) = Group::power(k, 2) else { continue };
                let p = if k % 2 == 1 { 2 * k - 2 } else { 2 * k };
                push(g, query(Family::Tau, Lambda::Restricted, Terms::Exact(k)), &[("k", k)], Some(p), None);
            }
        }
        _ => return Err(Error::InvalidParameter(format!("{id} has no value sweep"))),
    }
    Ok(out)
}

fn perfect_bases(id: &str, grid: &Grid, cfg: &SearchConfig) -> Vec<CheckPoint> {
    let ss = if grid.h.is_empty() { vec![2] } else { grid.h.clone() };
    let mut work = Vec::new();
    for &s in ss.iter().filter(|&&s| s >= 2) {
        for &m in grid.m.iter().filter(|&&m| m >= 2) {
            let plain = binomial(m + s, s);
            let restricted: u128 = (0..=s.min(m)).map(|j| binomial(m, j)).sum();
            for (lambda, n) in [(Lambda::N0, plain), (Lambda::Restricted, restricted)] {
                if n > 1 << 20 {
                    continue;
                }
                // the restricted claim was only ever checked in cyclic groups
                for g in Group::all_of_order(n as u64) {
                    if lambda == Lambda::N0 || g.is_cyclic() {
                        work.push((g, lambda, s, m));
                    }
                }
            }
        }
    }
    work.par_iter()
        .map(|(g, lambda, s, m)| {
            let spec = SumsetSpec::new(*lambda, Terms::UpTo(*s));
            let kv = params(&[("s", *s), ("m", *m), ("restricted", lambda.is_restricted() as u64)]);
            match spanning_set(g, *m, spec, cfg) {
                Ok(found) => CheckPoint {
                    id: id.to_string(),
                    group: g.to_string(),
                    params: kv,
                    predicted: Some(0),
                    observed: Some(found.is_some() as u64),
                    status: if found.is_some() { Status::Refuted } else { Status::Confirmed },
                    forced: None,
                    witness: found.map(|w| coords(&Subset::from_indices(g, w))),
                    nodes: 0,
                },
                Err(e) => skipped(id, g, kv, Some(0), e),
            }
        })
        .collect()
}

fn inverse_dissociated(id: &str, grid: &Grid, cfg: &SearchConfig) -> Vec<CheckPoint> {
    let ks = if grid.h.is_empty() { vec![1, 2, 3, 4] } else { grid.h.clone() };
    ks.par_iter()
        .filter(|&&k| (1..=20).contains(&k))
        .map(|&k| {
            let g = Group::cyclic(1 << k).expect("small power of two");
            let kv = params(&[("k", k)]);
            let want: Vec<Subset> = family_a(k as u32).into_iter().map(|a| Subset::from_residues(&g, a.into_iter().map(|x| x as i64))).collect();
            let q = query(Family::Tau, Lambda::RestrictedSigned, Terms::AllN);
            match enumerate_extremal(&g, &q, cfg) {
                Ok(got) => {
                    let stray = got.iter().find(|s| !want.contains(s)).or_else(|| want.iter().find(|s| !got.contains(s)));
                    CheckPoint {
                        id: id.to_string(),
                        group: g.to_string(),
                        params: kv,
                        predicted: Some(want.len() as u64),
                        observed: Some(got.len() as u64),
                        status: if stray.is_none() { Status::Confirmed } else { Status::Refuted },
                        forced: None,
                        witness: stray.map(coords),
                        nodes: 0,
                    }
                }
                Err(e) => skipped(id, &g, kv, Some(want.len() as u64), e),
            }
        })
        .collect()
}

fn dims(id: &str, grid: &Grid, cfg: &SearchConfig) -> Vec<CheckPoint> {
    grid.n
        .par_iter()
        .flat_map_iter(|&n| {
            let g = Group::cyclic(n.max(1)).expect("cyclic");
            let ms = grid.ms(1, n);
            match dissociativity_dims(n, cfg) {
                Ok(t) => ms
                    .into_iter()
                    .map(|m| {
                        let (d, w) = &t[m as usize];
                        let p = log2_floor(m);
                        CheckPoint {
                            id: id.to_string(),
                            group: g.to_string(),
                            params: params(&[("n", n), ("m", m)]),
                            predicted: Some(p),
                            observed: Some(*d),
                            status: if *d == p { Status::Confirmed } else { Status::Refuted },
                            forced: None,
                            witness: Some(w.iter().map(|&x| vec![x]).collect()),
                            nodes: 0,
                        }
                    })
                    .collect::<Vec<_>>(),
                Err(e) => ms.into_iter().map(|m| skipped(id, &g, params(&[("n", n), ("m", m)]), Some(log2_floor(m)), e.clone())).collect(),
            }
        })
        .collect()
}

/// Runs a conjecture over a grid. Points come back in grid order; points
/// beyond the search budget are reported as skipped.
pub fn conjecture_check(id: &str, grid: &Grid, cfg: &SearchConfig) -> Result<ConjectureReport> {
    let e = entry(id)?;
    if e.kind != EntryKind::Conjecture {
        return Err(Error::InvalidParameter(format!("{} is not a conjecture", e.id)));
    }
    let points = match e.id {
        "conj:no-perfect-bases" => perfect_bases(e.id, grid, cfg),
        "conj:inverse-tau-hat-pm-2-power" => inverse_dissociated(e.id, grid, cfg),
        "conj:dim-G-m" => dims(e.id, grid, cfg),
        _ => value_items(e.id, grid)?
            .par_iter()
            .map(|it| {
                let mut p = probe(e.id, &it.g, &it.q, it.params.clone(), it.predicted, cfg);
                p.forced = it.forced;
                p
            })
            .collect(),
    };
    Ok(ConjectureReport { conjecture_id: e.id.to_string(), kind: e.kind, grid: grid.clone(), points })
}
