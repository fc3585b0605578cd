//! Explicit extremal sets, each returned with the properties it is claimed
//! to have so that callers can check them by direct computation.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::arith::{ceil_div, divisors, floor_div, gcd, smallest_prime_factor};
use crate::counting;
use crate::error::{invalid, Error, Result};
use crate::group::{Group, GroupElement, Subset};
use crate::sides::{f_d, f_hat};
use crate::sumset::{sumset, Lambda, SumsetSpec, Terms};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Kind {
    Ad,
    Bd,
    PerfectConsecutive,
    PerfectOneAnd2s1,
    PerfectOneSpanning,
    IntervalSumFree,
    SelfridgeMinus2,
    SelfridgeEven,
    ErdosGriggs,
    Bui,
    Kemnitz,
    Hallfors1,
    Hallfors2,
    Diderrich,
    ZeroFreeInterval,
    Collins,
    ThreeIndependent,
}

impl Kind {
    pub const ALL: [Kind; 17] = [
        Kind::Ad,
        Kind::Bd,
        Kind::PerfectConsecutive,
        Kind::PerfectOneAnd2s1,
        Kind::PerfectOneSpanning,
        Kind::IntervalSumFree,
        Kind::SelfridgeMinus2,
        Kind::SelfridgeEven,
        Kind::ErdosGriggs,
        Kind::Bui,
        Kind::Kemnitz,
        Kind::Hallfors1,
        Kind::Hallfors2,
        Kind::Diderrich,
        Kind::ZeroFreeInterval,
        Kind::Collins,
        Kind::ThreeIndependent,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Kind::Ad => "Ad",
            Kind::Bd => "Bd",
            Kind::PerfectConsecutive => "perfect-consecutive",
            Kind::PerfectOneAnd2s1 => "perfect-one-2s1",
            Kind::PerfectOneSpanning => "perfect-one-spanning",
            Kind::IntervalSumFree => "interval-sumfree",
            Kind::SelfridgeMinus2 => "selfridge-minus2",
            Kind::SelfridgeEven => "selfridge-even",
            Kind::ErdosGriggs => "erdos-griggs",
            Kind::Bui => "bui",
            Kind::Kemnitz => "kemnitz",
            Kind::Hallfors1 => "hallfors1",
            Kind::Hallfors2 => "hallfors2",
            Kind::Diderrich => "diderrich",
            Kind::ZeroFreeInterval => "zero-free-interval",
            Kind::Collins => "collins",
            Kind::ThreeIndependent => "three-independent",
        }
    }

    /// Parameter names, required ones first; `h` is optional where listed.
    pub fn params(self) -> &'static [&'static str] {
        match self {
            Kind::Ad => &["n", "m", "d", "h?"],
            Kind::Bd => &["n", "m", "d", "k1", "k2", "g", "j0"],
            Kind::PerfectConsecutive | Kind::PerfectOneAnd2s1 => &["s"],
            Kind::PerfectOneSpanning => &["m"],
            Kind::IntervalSumFree => &["n", "k", "l"],
            Kind::SelfridgeMinus2 | Kind::ErdosGriggs | Kind::ThreeIndependent => &["n"],
            Kind::SelfridgeEven => &["n", "m?"],
            Kind::Bui => &["r"],
            Kind::Kemnitz => &["k", "r"],
            Kind::Hallfors1 => &["n", "k", "l"],
            Kind::Hallfors2 => &["n", "k", "l", "d"],
            Kind::Diderrich => &["n", "n2?"],
            Kind::ZeroFreeInterval => &["n", "t"],
            Kind::Collins => &["n", "h"],
        }
    }
}

impl fmt::Display for Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Kind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Kind> {
        let t = s.trim();
        Kind::ALL
            .into_iter()
            .find(|k| k.name().eq_ignore_ascii_case(t))
            .ok_or_else(|| Error::Parse { what: "construction kind", token: s.to_string() })
    }
}

/// What a construction is claimed to satisfy.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "predicate", rename_all = "kebab-case")]
pub enum Predicate {
    /// `|A| = value`.
    Size { value: u64 },
    /// `|H_Lambda A| = value`.
    SumsetSize { spec: SumsetSpec, value: u64 },
    /// `H_Lambda A = G`.
    Spans { spec: SumsetSpec },
    /// `0` not in `H_Lambda A`.
    ZeroFree { spec: SumsetSpec },
    /// `kA` and `lA` disjoint (restricted sums when `weak`).
    SumFree { k: u64, l: u64, weak: bool },
    /// `kA` and `lA` partition `G`.
    Complete { k: u64, l: u64, weak: bool },
}

impl Predicate {
    pub fn eval(&self, a: &Subset) -> bool {
        let pair = |k: u64, l: u64, weak: bool| {
            let lambda = if weak { Lambda::Restricted } else { Lambda::N0 };
            (sumset(a, SumsetSpec::exact(lambda, k)), sumset(a, SumsetSpec::exact(lambda, l)))
        };
        match *self {
            Predicate::Size { value } => a.size() as u64 == value,
            Predicate::SumsetSize { spec, value } => sumset(a, spec).size() as u64 == value,
            Predicate::Spans { spec } => sumset(a, spec).is_full(),
            Predicate::ZeroFree { spec } => !sumset(a, spec).contains(0),
            Predicate::SumFree { k, l, weak } => {
                let (x, y) = pair(k, l, weak);
                x.is_disjoint(&y)
            }
            Predicate::Complete { k, l, weak } => {
                let (x, y) = pair(k, l, weak);
                x.is_disjoint(&y) && x.union(&y).is_full()
            }
        }
    }
}

impl fmt::Display for Predicate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Predicate::Size { value } => write!(f, "|A| = {value}"),
            Predicate::SumsetSize { spec, value } => write!(f, "|{spec} A| = {value}"),
            Predicate::Spans { spec } => write!(f, "{spec} A = G"),
            Predicate::ZeroFree { spec } => write!(f, "0 not in {spec} A"),
            Predicate::SumFree { k, l, weak } => {
                write!(f, "{}({k},{l})-sum-free", if *weak { "weakly " } else { "" })
            }
            Predicate::Complete { k, l, weak } => {
                write!(f, "{}({k},{l})-sum-free and complete", if *weak { "weakly " } else { "" })
            }
        }
    }
}

/// A predicate with its citation and the truth value asserted for it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Claim {
    pub citation: &'static str,
    pub predicate: Predicate,
    pub expected: bool,
}

impl Claim {
    fn holds(citation: &'static str, predicate: Predicate) -> Claim {
        Claim { citation, predicate, expected: true }
    }

    pub fn check(&self, a: &Subset) -> bool {
        self.predicate.eval(a) == self.expected
    }
}

#[derive(Clone, Debug)]
pub struct Construction {
    pub kind: Kind,
    pub params: BTreeMap<String, i64>,
    pub group: Group,
    pub set: Subset,
    pub claims: Vec<Claim>,
}

#[derive(Clone, Debug, Serialize)]
pub struct ClaimOutcome {
    pub claim: Claim,
    pub observed: bool,
    pub ok: bool,
}

impl Construction {
    pub fn verify(&self) -> Vec<ClaimOutcome> {
        self.claims
            .iter()
            .map(|c| {
                let observed = c.predicate.eval(&self.set);
                ClaimOutcome { claim: c.clone(), observed, ok: observed == c.expected }
            })
            .collect()
    }

    pub fn all_hold(&self) -> bool {
        self.claims.iter().all(|c| c.check(&self.set))
    }
}

/// `kind` plus its integer parameters.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConstructionSpec {
    pub kind: Kind,
    pub params: BTreeMap<String, i64>,
}

impl ConstructionSpec {
    pub fn new(kind: Kind, params: &[(&str, i64)]) -> Self {
        ConstructionSpec { kind, params: params.iter().map(|(k, v)| (k.to_string(), *v)).collect() }
    }

    /// Parses `n=12,m=7,d=3`.
    pub fn parse_params(kind: Kind, text: &str) -> Result<Self> {
        let mut params = BTreeMap::new();
        for part in text.split(',').map(str::trim).filter(|p| !p.is_empty()) {
            let bad = || Error::Parse { what: "construction parameter", token: part.to_string() };
            let (k, v) = part.split_once('=').ok_or_else(bad)?;
            let v: i64 = v.trim().parse().map_err(|_| bad())?;
            params.insert(k.trim().to_string(), v);
        }
        Ok(ConstructionSpec { kind, params })
    }

    fn get(&self, key: &str) -> Result<u64> {
        self.opt(key)?.ok_or_else(|| invalid(format!("{} needs parameter {key}", self.kind)))
    }

    fn opt(&self, key: &str) -> Result<Option<u64>> {
        match self.params.get(key) {
            None => Ok(None),
            Some(&v) if v >= 0 => Ok(Some(v as u64)),
            Some(&v) => Err(invalid(format!("parameter {key}={v} must be nonnegative"))),
        }
    }

    pub fn build(&self) -> Result<Construction> {
        let known = self.kind.params();
        for key in self.params.keys() {
            if !known.iter().any(|k| k.trim_end_matches('?') == key) {
                return Err(Error::Parse { what: "construction parameter", token: key.clone() });
            }
        }
        let mut c = match self.kind {
            Kind::Ad => {
                let (n, m, d) = (self.get("n")?, self.get("m")?, self.get("d")?);
                build_a_d_claims(n, m, d, self.opt("h")?.unwrap_or(2))?
            }
            Kind::Bd => build_b_d(
                self.get("n")?,
                self.get("m")?,
                self.get("d")?,
                self.get("k1")?,
                self.get("k2")?,
                self.get("g")?,
                self.get("j0")?,
            )?,
            Kind::PerfectConsecutive => perfect_spanning_pair(self.get("s")?, PairVariant::Consecutive)?,
            Kind::PerfectOneAnd2s1 => perfect_spanning_pair(self.get("s")?, PairVariant::OneAnd2s1)?,
            Kind::PerfectOneSpanning => perfect_one_spanning(self.get("m")?)?,
            Kind::IntervalSumFree => {
                let (n, k, l) = (self.get("n")?, self.get("k")?, self.get("l")?);
                interval_construction(n, k, l)?
            }
            Kind::SelfridgeMinus2 => selfridge_minus2(self.get("n")?)?,
            Kind::SelfridgeEven => {
                let n = self.get("n")?;
                selfridge_even(n, self.opt("m")?)?
            }
            Kind::ErdosGriggs => erdos_griggs(self.get("n")?)?,
            Kind::Bui => bui(self.get("r")?)?,
            Kind::Kemnitz => kemnitz(self.get("k")?, self.get("r")?)?,
            Kind::Hallfors1 => hallfors1(self.get("n")?, self.get("k")?, self.get("l")?)?,
            Kind::Hallfors2 => hallfors2(self.get("n")?, self.get("k")?, self.get("l")?, self.get("d")?)?,
            Kind::Diderrich => {
                let n = self.get("n")?;
                let g = match self.opt("n2")? {
                    Some(n2) => Group::normalize(&[n, n2])?,
                    None => Group::cyclic(n)?,
                };
                diderrich(&g)?
            }
            Kind::ZeroFreeInterval => zero_free_interval(self.get("n")?, self.get("t")?)?,
            Kind::Collins => collins(self.get("n")?, self.get("h")?)?,
            Kind::ThreeIndependent => three_independent(self.get("n")?)?,
        };
        c.params = self.params.clone();
        Ok(c)
    }
}

fn make(kind: Kind, group: Group, set: Subset, claims: Vec<Claim>) -> Construction {
    Construction { kind, params: BTreeMap::new(), group, set, claims }
}

fn cyclic_set(n: u64, xs: impl IntoIterator<Item = i64>) -> Result<(Group, Subset)> {
    let g = Group::cyclic(n)?;
    let s = Subset::from_residues(&g, xs);
    Ok((g, s))
}

fn size_claim(citation: &'static str, value: u64) -> Claim {
    Claim::holds(citation, Predicate::Size { value })
}

// ---------------------------------------------------------------------------
// coset constructions

/// `A_d(n,m)`: `ceil(m/d)` consecutive cosets of the order-`d` subgroup of
/// `Z_n`, the last one only partly filled.
pub fn build_a_d(n: u64, m: u64, d: u64) -> Result<Subset> {
    if d == 0 || n % d != 0 {
        return Err(Error::NotDivisor(d, n));
    }
    if m == 0 || m > n {
        return Err(invalid(format!("A_d needs 1 <= m <= n, got m={m}, n={n}")));
    }
    let step = (n / d) as i64;
    let c = ceil_div(m, d) - 1;
    let k = m - d * c;
    let mut xs = Vec::with_capacity(m as usize);
    for i in 0..c as i64 {
        xs.extend((0..d as i64).map(|j| i + j * step));
    }
    xs.extend((0..k as i64).map(|j| c as i64 + j * step));
    Ok(cyclic_set(n, xs)?.1)
}

/// `A_d(n,m)` with its sizes for `h`-fold sums, and for restricted `h`-fold
/// sums when `h < m`.
pub fn build_a_d_claims(n: u64, m: u64, d: u64, h: u64) -> Result<Construction> {
    let set = build_a_d(n, m, d)?;
    if h == 0 {
        return Err(invalid("A_d claims need h >= 1"));
    }
    let mut claims = vec![
        size_claim("def:A_d", m),
        Claim::holds(
            "prop:|hA_d(n,m)|",
            Predicate::SumsetSize {
                spec: SumsetSpec::exact(Lambda::N0, h),
                value: n.min(f_d(d, m, h)).min(h * m - h + 1),
            },
        ),
    ];
    if h < m {
        claims.push(Claim::holds(
            "thm:uhattheorem",
            Predicate::SumsetSize { spec: SumsetSpec::exact(Lambda::Restricted, h), value: f_hat(n, m, h, d) },
        ));
    }
    Ok(make(Kind::Ad, set.group().clone(), set, claims))
}

/// `B_d(n,m;k1,k2,g,j0) = B' u (g+H) u ... u ((c-1)g+H) u B''`.
pub fn build_b_d(n: u64, m: u64, d: u64, k1: u64, k2: u64, g: u64, j0: u64) -> Result<Construction> {
    if d == 0 || n % d != 0 {
        return Err(Error::NotDivisor(d, n));
    }
    if !(k1 < d && k2 < d && k1 + k2 > d) {
        return Err(invalid(format!("B_d needs k1, k2 < d < k1 + k2; got k1={k1}, k2={k2}, d={d}")));
    }
    if j0 >= d {
        return Err(invalid(format!("B_d needs 0 <= j0 <= d-1, got j0={j0}")));
    }
    if m < k1 + k2 || (m - k1 - k2) % d != 0 {
        return Err(invalid(format!("B_d needs m = k1 + (c-1)d + k2, got m={m}")));
    }
    let c = (m - k1 - k2) / d + 1;
    let step = (n / d) as i64;
    let (gi, j0) = (g as i64, j0 as i64);
    let mut xs: Vec<i64> = (0..k1 as i64).map(|j| j * step).collect();
    for i in 1..c as i64 {
        xs.extend((0..d as i64).map(|j| i * gi + j * step));
    }
    xs.extend((0..k2 as i64).map(|j| c as i64 * gi + (j0 + j) * step));
    let (grp, set) = cyclic_set(n, xs)?;
    if set.size() as u64 != m {
        return Err(invalid(format!("B_d cosets overlap for g={g}; got {} elements instead of {m}", set.size())));
    }
    let mut claims = vec![size_claim("def:B_d", m)];
    if let Some((h, value)) = special_b_case(n, m, d, k1, k2, g, j0 as u64) {
        claims.push(Claim::holds(
            "thm:special-sets-listed",
            Predicate::SumsetSize { spec: SumsetSpec::exact(Lambda::Restricted, h), value },
        ));
    }
    Ok(make(Kind::Bd, grp, set, claims))
}

/// The `(h, |h^B|)` promised when the parameters are one of the three listed
/// families of small restricted sumsets.
pub fn special_b_case(n: u64, m: u64, d: u64, k1: u64, k2: u64, g: u64, j0: u64) -> Option<(u64, u64)> {
    let two = 2 * m - 2;
    let m1 = m - 1;
    if d > 1
        && d % 2 == 1
        && m1 % d == 0
        && !m1.is_power_of_two()
        && n % two == 0
        && k1 == (d + 1) / 2
        && k2 == (d + 1) / 2
        && g == n / two
        && j0 == (d - 1) / 2
    {
        return Some((2, 2 * m - 4));
    }
    if d == 5 && m == 6 && n % 10 == 0 && k1 == 4 && k2 == 2 && g == n / 10 && j0 == 3 {
        return Some((3, 9));
    }
    if d >= 3 && d % 2 == 1 {
        let h = d - 2;
        if m > h && (m + 2) % (h + 2) == 0 {
            let q = h * m - h * h;
            if n % q == 0 && k1 == h + 1 && k2 == h + 1 && g == n / q && j0 == (h + 3) / 2 {
                return Some((h, q - 1));
            }
        }
    }
    None
}

/// Parameters of the listed `B_d` families for `(n, m, h)`, one per
/// applicable divisor.
pub fn special_b_params(n: u64, m: u64, h: u64) -> Vec<[u64; 7]> {
    let mut out = Vec::new();
    if m < 3 || h >= m {
        return out;
    }
    if h == 2 && !(m - 1).is_power_of_two() && n % (2 * m - 2) == 0 {
        for &d in divisors(m - 1).iter().filter(|&&d| d > 1 && d % 2 == 1) {
            out.push([n, m, d, (d + 1) / 2, (d + 1) / 2, n / (2 * m - 2), (d - 1) / 2]);
        }
    }
    if h == 3 && m == 6 && n % 10 == 0 {
        out.push([n, 6, 5, 4, 2, n / 10, 3]);
    }
    if h % 2 == 1 && (m + 2) % (h + 2) == 0 && n % (h * m - h * h) == 0 {
        out.push([n, m, h + 2, h + 1, h + 1, n / (h * m - h * h), (h + 3) / 2]);
    }
    out
}

// ---------------------------------------------------------------------------
// spanning sets

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum PairVariant {
    /// `{s, s+1}`.
    Consecutive,
    /// `{1, 2s+1}`.
    OneAnd2s1,
}

/// A perfect `s`-spanning pair in `Z_{2s^2+2s+1}`.
pub fn perfect_spanning_pair(s: u64, variant: PairVariant) -> Result<Construction> {
    if s == 0 {
        return Err(invalid("perfect spanning pairs need s >= 1"));
    }
    let n = 2 * s * s + 2 * s + 1;
    let xs = match variant {
        PairVariant::Consecutive => [s as i64, s as i64 + 1],
        PairVariant::OneAnd2s1 => [1, 2 * s as i64 + 1],
    };
    let (g, set) = cyclic_set(n, xs)?;
    let index_set = counting::a(2, s)?;
    debug_assert_eq!(index_set, n as u128);
    let kind = match variant {
        PairVariant::Consecutive => Kind::PerfectConsecutive,
        PairVariant::OneAnd2s1 => Kind::PerfectOneAnd2s1,
    };
    let claims = vec![
        size_claim("prop:perfex", 2),
        Claim::holds("prop:perfex", Predicate::Spans { spec: SumsetSpec::new(Lambda::Z, Terms::UpTo(s)) }),
        Claim::holds(
            "prop:perfex",
            Predicate::SumsetSize { spec: SumsetSpec::new(Lambda::Z, Terms::UpTo(s)), value: index_set as u64 },
        ),
    ];
    Ok(make(kind, g, set, claims))
}

/// `{1, ..., m}` in `Z_{2m+1}`, a perfect 1-spanning set.
pub fn perfect_one_spanning(m: u64) -> Result<Construction> {
    if m == 0 {
        return Err(invalid("perfect 1-spanning sets need m >= 1"));
    }
    let n = 2 * m + 1;
    let (g, set) = cyclic_set(n, 1..=m as i64)?;
    let claims = vec![
        size_claim("prop:perfex", m),
        Claim::holds("prop:perfex", Predicate::Spans { spec: SumsetSpec::new(Lambda::Z, Terms::UpTo(1)) }),
        Claim::holds(
            "prop:perfex",
            Predicate::SumsetSize { spec: SumsetSpec::new(Lambda::Z, Terms::UpTo(1)), value: counting::a(m, 1)? as u64 },
        ),
    ];
    Ok(make(Kind::PerfectOneSpanning, g, set, claims))
}

// ---------------------------------------------------------------------------
// weak (k,l)-sum-free intervals

fn check_kl(n: u64, k: u64, l: u64) -> Result<()> {
    if !(0 < l && l < k && k <= n) {
        return Err(invalid(format!("need 0 < l < k <= n, got n={n}, k={k}, l={l}")));
    }
    Ok(())
}

/// Maximum size of a weak `(k,l)`-sum-free interval in `Z_n`, by formula.
pub fn interval_weak_sumfree_size(n: u64, k: u64, l: u64) -> Result<u64> {
    check_kl(n, k, l)?;
    let (n_, k_, l_) = (n as i64, k as i64, l as i64);
    let delta = gcd(n, k - l) as i64;
    let j = k_ * k_ + l_ * l_ - (k_ + l_);
    let m = floor_div(n_ + j - 2, k_ + l_);
    let big_k = k_ * m - j / 2 + 1;
    let big_l = l_ * m - j / 2 + 1;
    let plus = big_l <= delta * floor_div(n_ - big_k, delta);
    Ok((if plus { m + 1 } else { m }).clamp(0, n_) as u64)
}

fn interval(n: u64, a: u64, m: u64) -> Vec<i64> {
    (0..m).map(|i| ((a + i) % n) as i64).collect()
}

fn weak_pair_free(g: &Group, xs: &[i64], k: u64, l: u64) -> bool {
    let a = Subset::from_residues(g, xs.iter().copied());
    Predicate::SumFree { k, l, weak: true }.eval(&a)
}

/// First interval `{a, ..., a+m-1}` that is weakly `(k,l)`-sum-free.
pub fn find_weak_sumfree_interval(n: u64, k: u64, l: u64, m: u64) -> Result<Option<Subset>> {
    let g = Group::cyclic(n)?;
    for a in 0..n {
        let xs = interval(n, a, m);
        if weak_pair_free(&g, &xs, k, l) {
            return Ok(Some(Subset::from_residues(&g, xs)));
        }
    }
    Ok(None)
}

/// Maximum size of a weak `(k,l)`-sum-free interval, by scanning every
/// interval of every size.
pub fn interval_weak_sumfree_scan(n: u64, k: u64, l: u64) -> Result<u64> {
    check_kl(n, k, l)?;
    for m in (1..=n).rev() {
        if find_weak_sumfree_interval(n, k, l, m)?.is_some() {
            return Ok(m);
        }
    }
    Ok(0)
}

/// The formula value together with an interval attaining it.
pub fn interval_weak_sumfree(n: u64, k: u64, l: u64) -> Result<(u64, Subset)> {
    let size = interval_weak_sumfree_size(n, k, l)?;
    let w = find_weak_sumfree_interval(n, k, l, size)?
        .ok_or_else(|| invalid(format!("no weakly ({k},{l})-sum-free interval of size {size} in Z_{n}")))?;
    Ok((size, w))
}

fn interval_construction(n: u64, k: u64, l: u64) -> Result<Construction> {
    let (size, set) = interval_weak_sumfree(n, k, l)?;
    let claims = vec![
        size_claim("prop:max-size-interval-weak-sumfree", size),
        Claim::holds("prop:max-size-interval-weak-sumfree", Predicate::SumFree { k, l, weak: true }),
    ];
    Ok(make(Kind::IntervalSumFree, set.group().clone(), set, claims))
}

/// `floor((n + k^2 + l^2 - gcd(n,k-l) - 1) / (k+l))`.
pub fn kl_lower(n: u64, k: u64, l: u64) -> u64 {
    (n + k * k + l * l - gcd(n, k - l) - 1) / (k + l)
}

// ---------------------------------------------------------------------------
// zero-sum-free sets

fn sigma_star_spec() -> SumsetSpec {
    SumsetSpec::new(Lambda::Restricted, Terms::AllN)
}

/// `{1, -2, 3, 4, ..., m}` with `m` as large as `1 + 3 + ... + m < n` allows.
pub fn selfridge_minus2(n: u64) -> Result<Construction> {
    if n < 6 {
        return Err(invalid("the {1,-2,3,...,m} construction needs n >= 6"));
    }
    let fits = |m: u64| m * (m + 1) / 2 - 2 < n;
    let mut m = 2;
    while fits(m + 1) {
        m += 1;
    }
    let xs = (1..=m as i64).map(|x| if x == 2 { -2 } else { x });
    let (g, set) = cyclic_set(n, xs)?;
    let bound = ((((8 * n + 9) as f64).sqrt() - 1.0) / 2.0).floor() as u64;
    let claims = vec![
        size_claim("prop:zero-sum-free-simple--2", bound),
        Claim::holds("prop:zero-sum-free-simple--2", Predicate::ZeroFree { spec: sigma_star_spec() }),
    ];
    Ok(make(Kind::SelfridgeMinus2, g, set, claims))
}

/// Largest `m` the even-`n` construction certifies.
pub fn selfridge_even_size(n: u64) -> u64 {
    isqrt(2 * n - 3)
}

/// The two-block set in `Z_n`, `n` even; `m` defaults to `floor(sqrt(2n-3))`.
pub fn selfridge_even(n: u64, m: Option<u64>) -> Result<Construction> {
    if n < 2 || n % 2 != 0 {
        return Err(invalid(format!("the two-block construction needs even n, got {n}")));
    }
    let m = m.unwrap_or_else(|| selfridge_even_size(n));
    let half = (n / 2) as i64;
    let xs: Vec<i64> = if m == 0 {
        vec![]
    } else if m % 2 == 1 {
        let t = ((m - 1) / 2) as i64;
        (1..=t).chain(half..=half + t).collect()
    } else {
        let t = (m / 2) as i64;
        (1..t).chain(half..=half + t).collect()
    };
    let (g, set) = cyclic_set(n, xs)?;
    if set.size() as u64 != m {
        return Err(invalid(format!("two-block set of size {m} does not fit in Z_{n}")));
    }
    let certified = if m % 2 == 1 {
        let t = (m - 1) / 2;
        t * (t + 1) < n / 2
    } else {
        let t = m / 2;
        t * (t - 1) + t < n / 2
    };
    let mut claims = vec![size_claim("prop:zero-sum-free-simple-n-even", m)];
    if certified {
        claims.push(Claim::holds("prop:zero-sum-free-simple-n-even", Predicate::ZeroFree { spec: sigma_star_spec() }));
    }
    Ok(make(Kind::SelfridgeEven, g, set, claims))
}

fn isqrt(x: u64) -> u64 {
    let mut r = (x as f64).sqrt() as u64;
    while r * r > x {
        r -= 1;
    }
    while (r + 1) * (r + 1) <= x {
        r += 1;
    }
    r
}

/// `floor(2 sqrt(n-2))`.
pub fn two_sqrt(n: u64) -> u64 {
    isqrt(4 * (n - 2))
}

/// `{+-1, ..., +-(k-1)/2}` or `{+-1, ..., +-(k-2)/2, k/2}` with
/// `k = floor(2 sqrt(n-2))`: a set of size `k-1` whose nonempty subset sums
/// miss part of `Z_n`.
pub fn erdos_griggs(n: u64) -> Result<Construction> {
    if n < 3 {
        return Err(invalid("the Erdos-Griggs set needs n >= 3"));
    }
    let k = two_sqrt(n) as i64;
    let (xs, sums): (Vec<i64>, u64) = if k % 2 == 1 {
        let t = (k - 1) / 2;
        ((1..=t).flat_map(|i| [i, -i]).collect(), ((k * k + 3) / 4) as u64)
    } else {
        let t = (k - 2) / 2;
        ((1..=t).flat_map(|i| [i, -i]).chain([k / 2]).collect(), ((k * k + 4) / 4) as u64)
    };
    let (g, set) = cyclic_set(n, xs)?;
    let mut claims = vec![size_claim("p:set-leading-to-Erdos-Griggs", (k - 1) as u64)];
    // for k = 2 the set is {1} and the stated interval would count the empty sum
    if sums < n && k >= 3 {
        claims.push(Claim::holds(
            "p:set-leading-to-Erdos-Griggs",
            Predicate::SumsetSize { spec: sigma_star_spec(), value: sums },
        ));
    }
    claims.push(Claim {
        citation: "p:set-leading-to-Erdos-Griggs",
        predicate: Predicate::Spans { spec: sigma_star_spec() },
        expected: false,
    });
    Ok(make(Kind::ErdosGriggs, g, set, claims))
}

/// The Bui index set `{q+s-1, ..., 2q+s-1}` for `r = 3q+s`.
pub fn bui_index_set(r: u64) -> Vec<u64> {
    let (q, s) = (r / 3, r % 3);
    ((q + s).saturating_sub(1)..=(2 * q + s).saturating_sub(1)).collect()
}

/// `2 sum_{i in I} C(r,i)`.
pub fn bui_size(r: u64) -> u64 {
    bui_index_set(r).iter().map(|&i| 2 * counting::binom(r, i).expect("small") as u64).sum()
}

/// `U_{i in I} (A_i u -A_i)` in `Z_3^r`, where `A_i` holds the vectors with
/// exactly `i` zero coordinates and ones elsewhere.
pub fn bui(r: u64) -> Result<Construction> {
    if r == 0 {
        return Err(invalid("Bui sets need r >= 1"));
    }
    let g = Group::power(3, r as usize)?;
    let idx = bui_index_set(r);
    let mut set = Subset::empty(&g);
    for x in 0..g.order() {
        let e = g.element(x);
        let zeros = e.coords.iter().filter(|&&c| c == 0).count() as u64;
        let nonzero: Vec<u64> = e.coords.iter().copied().filter(|&c| c != 0).collect();
        let uniform = nonzero.windows(2).all(|w| w[0] == w[1]);
        if zeros < r && uniform && idx.contains(&zeros) {
            set.insert(x);
        }
    }
    let claims = vec![
        size_claim("thm:bui", bui_size(r)),
        Claim::holds("thm:bui", Predicate::ZeroFree { spec: SumsetSpec::exact(Lambda::Restricted, 3) }),
    ];
    Ok(make(Kind::Bui, g, set, claims))
}

/// `{0,1}^{r-1} x {0, ..., k-2}` (or `x Z_k` for even `k`) in `Z_k^r`.
pub fn kemnitz(k: u64, r: u64) -> Result<Construction> {
    if k < 2 || r == 0 {
        return Err(invalid("Kemnitz sets need k >= 2 and r >= 1"));
    }
    let g = Group::power(k, r as usize)?;
    let last = if k % 2 == 0 { k } else { k - 1 };
    let mut set = Subset::empty(&g);
    for bits in 0..1u64 << (r - 1) {
        for t in 0..last {
            let mut coords: Vec<u64> = (0..r - 1).map(|i| (bits >> i) & 1).collect();
            coords.push(t);
            set.insert(g.index(&GroupElement::new(coords))?);
        }
    }
    let claims = vec![
        size_claim("prop:Kemnitz-bounds", last << (r - 1)),
        Claim::holds("prop:Kemnitz-bounds", Predicate::ZeroFree { spec: SumsetSpec::exact(Lambda::Restricted, k) }),
    ];
    Ok(make(Kind::Kemnitz, g, set, claims))
}

/// `(H \ {0}) u (g + K)` with `H` of index `p`, the least prime divisor of
/// `n`, and `|K| = p - 2`.
pub fn diderrich(g: &Group) -> Result<Construction> {
    let n = g.order() as u64;
    let p = smallest_prime_factor(n).filter(|&p| p < n).ok_or_else(|| invalid(format!("{n} is not composite")))?;
    let h = g
        .all_subgroups()
        .into_iter()
        .find(|s| s.size() as u64 == n / p)
        .ok_or_else(|| invalid("no subgroup of index p"))?;
    let outside = (0..g.order()).find(|&x| !h.contains(x)).expect("proper subgroup");
    let mut set = h.without_zero();
    for k in h.indices().into_iter().take((p - 2) as usize) {
        set.insert(g.add_idx(outside, k));
    }
    let claims = vec![
        size_claim("prop:lower-for-composite", n / p + p - 3),
        Claim { citation: "prop:lower-for-composite", predicate: Predicate::Spans { spec: sigma_star_spec() }, expected: false },
    ];
    Ok(make(Kind::Diderrich, g.clone(), set, claims))
}

/// `{1, ..., floor((n-1)/t)}`, free of zero sums with 1 to `t` terms.
pub fn zero_free_interval(n: u64, t: u64) -> Result<Construction> {
    if n == 0 || t == 0 {
        return Err(invalid("zero-free intervals need n, t >= 1"));
    }
    let m = (n - 1) / t;
    let (g, set) = cyclic_set(n, 1..=m as i64)?;
    let claims = vec![
        size_claim("sec:5maxUlimited", m),
        Claim::holds("sec:5maxUlimited", Predicate::ZeroFree { spec: SumsetSpec::new(Lambda::N0, Terms::Range1(t)) }),
    ];
    Ok(make(Kind::ZeroFreeInterval, g, set, claims))
}

/// `floor(n/h + (h^2-3)/(2h))`.
pub fn collins_size(n: u64, h: u64) -> u64 {
    (2 * n + h * h - 3) / (2 * h)
}

/// An interval around `(n+1)/2` of size `collins_size(n, h)`, free of zero
/// restricted signed `h`-fold sums.
pub fn collins(n: u64, h: u64) -> Result<Construction> {
    if n % 2 == 0 || h % 2 == 0 || h > n {
        return Err(invalid(format!("Collins sets need odd n and odd h <= n, got n={n}, h={h}")));
    }
    let s = collins_size(n, h);
    let start = ((n + 1) / 2) as i64 - (s / 2) as i64;
    let (g, set) = cyclic_set(n, (0..s as i64).map(|i| start + i))?;
    let claims = vec![
        size_claim("prop:collins", s),
        Claim::holds("prop:collins", Predicate::ZeroFree { spec: SumsetSpec::exact(Lambda::RestrictedSigned, h) }),
    ];
    Ok(make(Kind::Collins, g, set, claims))
}

/// Smallest prime divisor of `n` congruent to 5 mod 6.
pub fn least_prime_5_mod_6(n: u64) -> Option<u64> {
    crate::arith::factorize(n).into_iter().map(|(p, _)| p).find(|p| p % 6 == 5)
}

/// The largest 3-independent set in `Z_n` of the three explicit shapes:
/// odd numbers below `n/2` (even `n`), `{p i1 + 2 i2 + 1}` when some prime
/// `p = 5 mod 6` divides odd `n`, and odd numbers below `n/3` otherwise.
pub fn three_independent(n: u64) -> Result<Construction> {
    if n == 0 {
        return Err(invalid("n must be positive"));
    }
    let odd = |count: u64| (0..count as i64).map(|i| 2 * i + 1).collect::<Vec<_>>();
    let xs = if n % 2 == 0 {
        odd(n / 4)
    } else if let Some(p) = least_prime_5_mod_6(n) {
        let mut v = Vec::new();
        for i1 in 0..(n / p) as i64 {
            for i2 in 0..=((p - 5) / 6) as i64 {
                v.push(p as i64 * i1 + 2 * i2 + 1);
            }
        }
        v
    } else {
        odd(n / 6)
    };
    let (g, set) = cyclic_set(n, xs)?;
    let claims = vec![
        size_claim("thm:3free", three_free_value(n)),
        Claim::holds("sec:5maxUSlimited", Predicate::ZeroFree { spec: SumsetSpec::new(Lambda::Z, Terms::Range1(3)) }),
    ];
    Ok(make(Kind::ThreeIndependent, g, set, claims))
}

/// `tau_pm(Z_n, [1,3])`.
pub fn three_free_value(n: u64) -> u64 {
    if n % 2 == 0 {
        n / 4
    } else if let Some(p) = least_prime_5_mod_6(n) {
        (p + 1) * n / (6 * p)
    } else {
        n / 6
    }
}

// ---------------------------------------------------------------------------
// weak (k,l)-sum-free sets

/// `{a, ..., a+c} + H` with `|H| = k-1`, `a = ln/((k^2-l^2)(k-1))` and
/// `c = n/((k+l)(k-1))`.
pub fn hallfors1(n: u64, k: u64, l: u64) -> Result<Construction> {
    check_kl(n, k, l)?;
    let q = (k * k - l * l) * (k - 1);
    if n % q != 0 {
        return Err(invalid(format!("(k^2-l^2)(k-1) = {q} must divide n = {n}")));
    }
    let a = (l * n / q) as i64;
    let c = (n / ((k + l) * (k - 1))) as i64;
    let step = (n / (k - 1)) as i64;
    let xs = (a..=a + c).flat_map(|x| (0..(k - 1) as i64).map(move |j| x + j * step));
    let (g, set) = cyclic_set(n, xs)?;
    let complete = Claim {
        citation: "prop:Hallfors-prop-1",
        predicate: Predicate::Complete { k, l, weak: true },
        expected: l + 2 <= k,
    };
    let mut claims = vec![
        size_claim("prop:Hallfors-prop-1", n / (k + l) + k - 1),
        Claim::holds("prop:Hallfors-prop-1", Predicate::SumFree { k, l, weak: true }),
    ];
    // completeness is only asserted for l <= k-2
    if complete.expected {
        claims.push(complete);
    }
    Ok(make(Kind::Hallfors1, g, set, claims))
}

/// Whether the second Hallfors set is complete: `d/2 - 1 < l < k < n/d`.
pub fn hallfors2_complete(n: u64, k: u64, l: u64, d: u64) -> bool {
    d / 2 < l + 1 && l < k && k < n / d
}

/// `(1 + H) u {0, d, ..., (d/2-2)d}` with `H` the subgroup of order `n/d`.
pub fn hallfors2(n: u64, k: u64, l: u64, d: u64) -> Result<Construction> {
    check_kl(n, k, l)?;
    if d == 0 || d % 2 != 0 || n % d != 0 {
        return Err(invalid(format!("d = {d} must be an even divisor of n = {n}")));
    }
    if n < d * (d / 2 - 1) {
        return Err(invalid("need n >= d(d/2 - 1)"));
    }
    if (k % d).abs_diff(l % d) != d / 2 {
        return Err(invalid(format!("k mod {d} and l mod {d} must differ by {}", d / 2)));
    }
    let di = d as i64;
    let xs = (0..(n / d) as i64).map(|j| 1 + j * di).chain((0..(d / 2) as i64 - 1).map(|j| j * di));
    let (g, set) = cyclic_set(n, xs)?;
    let claims = vec![
        size_claim("prop:Hallfors-prop-2", n / d + d / 2 - 1),
        Claim::holds("prop:Hallfors-prop-2", Predicate::SumFree { k, l, weak: true }),
        Claim {
            citation: "prop:Hallfors-prop-2",
            predicate: Predicate::Complete { k, l, weak: true },
            expected: hallfors2_complete(n, k, l, d),
        },
    ];
    Ok(make(Kind::Hallfors2, g, set, claims))
}
