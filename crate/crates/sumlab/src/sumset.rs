//! Sumsets `H_Lambda A` for the four coefficient domains and five term-count
//! sets, computed by layered bitset dynamic programming.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;
use std::sync::{Arc, Mutex, OnceLock};

use serde::{Deserialize, Serialize};

use crate::bits::{Bits, DynBits};
use crate::error::{Error, Result};
use crate::group::{Group, Subset};

/// Coefficient domain.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Lambda {
    /// `N_0`: unrestricted, unsigned.
    N0,
    /// `Z`: unrestricted, signed.
    Z,
    /// `{0,1}`.
    Restricted,
    /// `{-1,0,1}`.
    RestrictedSigned,
}

impl Lambda {
    pub const ALL: [Lambda; 4] = [Lambda::N0, Lambda::Z, Lambda::Restricted, Lambda::RestrictedSigned];

    pub fn is_signed(self) -> bool {
        matches!(self, Lambda::Z | Lambda::RestrictedSigned)
    }
    pub fn is_restricted(self) -> bool {
        matches!(self, Lambda::Restricted | Lambda::RestrictedSigned)
    }
    pub fn name(self) -> &'static str {
        match self {
            Lambda::N0 => "plain",
            Lambda::Z => "signed",
            Lambda::Restricted => "restricted",
            Lambda::RestrictedSigned => "restricted-signed",
        }
    }
}

impl fmt::Display for Lambda {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Lambda {
    type Err = Error;
    fn from_str(s: &str) -> Result<Lambda> {
        Ok(match s.trim().to_ascii_lowercase().as_str() {
            "plain" | "n0" | "unrestricted" => Lambda::N0,
            "signed" | "z" | "pm" => Lambda::Z,
            "restricted" | "hat" => Lambda::Restricted,
            "restricted-signed" | "restricted_signed" | "hat-pm" | "signed-restricted" => Lambda::RestrictedSigned,
            _ => return Err(Error::Parse { what: "coefficient domain", token: s.to_string() }),
        })
    }
}

/// Term-count set `H`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Terms {
    /// `{h}`.
    Exact(u64),
    /// `[0,s]`.
    UpTo(u64),
    /// `[1,t]`.
    Range1(u64),
    /// `N_0`.
    AllN0,
    /// `N`.
    AllN,
}

impl Terms {
    /// Largest term count needed when the set is finite.
    pub fn top(self) -> Option<u64> {
        match self {
            Terms::Exact(h) | Terms::UpTo(h) | Terms::Range1(h) => Some(h),
            Terms::AllN0 | Terms::AllN => None,
        }
    }

    pub fn contains(self, h: u64) -> bool {
        match self {
            Terms::Exact(x) => h == x,
            Terms::UpTo(s) => h <= s,
            Terms::Range1(t) => (1..=t).contains(&h),
            Terms::AllN0 => true,
            Terms::AllN => h >= 1,
        }
    }
}

impl fmt::Display for Terms {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Terms::Exact(h) => write!(f, "exact:{h}"),
            Terms::UpTo(s) => write!(f, "upto:{s}"),
            Terms::Range1(t) => write!(f, "range:{t}"),
            Terms::AllN0 => f.write_str("all0"),
            Terms::AllN => f.write_str("all"),
        }
    }
}

impl FromStr for Terms {
    type Err = Error;
    fn from_str(s: &str) -> Result<Terms> {
        let bad = || Error::Parse { what: "term count", token: s.to_string() };
        let t = s.trim().to_ascii_lowercase();
        match t.as_str() {
            "all0" | "n0" => return Ok(Terms::AllN0),
            "all" | "n" => return Ok(Terms::AllN),
            _ => {}
        }
        let (kind, num) = t.split_once(':').unwrap_or(("exact", t.as_str()));
        let v: u64 = num.parse().map_err(|_| bad())?;
        match kind {
            "exact" | "h" => Ok(Terms::Exact(v)),
            "upto" | "s" => Ok(Terms::UpTo(v)),
            "range" | "t" if v >= 1 => Ok(Terms::Range1(v)),
            _ => Err(bad()),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SumsetSpec {
    pub lambda: Lambda,
    pub terms: Terms,
}

impl SumsetSpec {
    pub fn new(lambda: Lambda, terms: Terms) -> Self {
        SumsetSpec { lambda, terms }
    }
    pub fn exact(lambda: Lambda, h: u64) -> Self {
        SumsetSpec { lambda, terms: Terms::Exact(h) }
    }
}

impl fmt::Display for SumsetSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {}", self.lambda, self.terms)
    }
}

const TABLE_LIMIT: usize = 1024;

/// Fast translation of index sets by a group element.
pub struct Translator {
    n: usize,
    cyclic: bool,
    factors: Vec<usize>,
    coords: Vec<u32>,
    table: Option<Vec<u32>>,
}

impl Translator {
    fn build(g: &Group) -> Translator {
        let n = g.order();
        let factors: Vec<usize> = g.factors().iter().map(|&f| f as usize).collect();
        let cyclic = g.is_cyclic();
        let mut t = Translator { n, cyclic, factors, coords: Vec::new(), table: None };
        if !cyclic {
            let r = t.factors.len();
            t.coords = vec![0; n * r];
            for i in 0..n {
                let mut x = i;
                for k in (0..r).rev() {
                    t.coords[i * r + k] = (x % t.factors[k]) as u32;
                    x /= t.factors[k];
                }
            }
            if n <= TABLE_LIMIT {
                let mut table = vec![0u32; n * n];
                for x in 0..n {
                    for a in 0..n {
                        table[x * n + a] = t.add_slow(x, a) as u32;
                    }
                }
                t.table = Some(table);
            }
        }
        t
    }

    /// Shared translator for a group, built once per process.
    pub fn for_group(g: &Group) -> Arc<Translator> {
        static CACHE: OnceLock<Mutex<HashMap<Group, Arc<Translator>>>> = OnceLock::new();
        let cache = CACHE.get_or_init(Default::default);
        if let Some(t) = cache.lock().expect("translator cache").get(g) {
            return t.clone();
        }
        let t = Arc::new(Translator::build(g));
        let mut map = cache.lock().expect("translator cache");
        if map.len() > 256 {
            map.clear();
        }
        map.entry(g.clone()).or_insert(t).clone()
    }

    pub fn order(&self) -> usize {
        self.n
    }

    fn combine(&self, x: usize, a: usize, sign: i64) -> usize {
        let r = self.factors.len();
        let mut idx = 0usize;
        for k in 0..r {
            let f = self.factors[k] as i64;
            let c = (self.coords[x * r + k] as i64 + sign * self.coords[a * r + k] as i64).rem_euclid(f);
            idx = idx * f as usize + c as usize;
        }
        idx
    }

    fn add_slow(&self, x: usize, a: usize) -> usize {
        self.combine(x, a, 1)
    }

    #[inline]
    pub fn add(&self, x: usize, a: usize) -> usize {
        if self.cyclic {
            let s = x + a;
            if s >= self.n {
                s - self.n
            } else {
                s
            }
        } else if let Some(t) = &self.table {
            t[x * self.n + a] as usize
        } else {
            self.add_slow(x, a)
        }
    }

    pub fn neg(&self, a: usize) -> usize {
        if self.cyclic {
            (self.n - a) % self.n
        } else {
            self.combine(0, a, -1)
        }
    }

    /// `lambda * a`.
    pub fn mul(&self, lambda: i64, a: usize) -> usize {
        if self.cyclic {
            return (lambda as i128 * a as i128).rem_euclid(self.n as i128) as usize;
        }
        let r = self.factors.len();
        let mut idx = 0usize;
        for k in 0..r {
            let f = self.factors[k] as i128;
            let c = (lambda as i128 * self.coords[a * r + k] as i128).rem_euclid(f);
            idx = idx * f as usize + c as usize;
        }
        idx
    }

    /// `dst |= src + a`.
    #[inline]
    pub fn or_translated<B: Bits>(&self, dst: &mut B, src: &B, a: usize) {
        if self.cyclic {
            dst.or_rotated(src, a, self.n);
        } else {
            src.for_each(|x| dst.insert(self.add(x, a)));
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Mode {
    /// Layers `L[j]` of sums with exactly `j` terms, `j <= top`.
    Layered { top: usize },
    /// The generated subgroup.
    Closure,
    /// Nonempty subset sums in layer 0.
    SubsetSums,
}

/// Incremental evaluation state for a growing set `A`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct State<B> {
    layers: Vec<B>,
    scratch: B,
    m: usize,
}

impl<B: Bits> State<B> {
    pub fn size(&self) -> usize {
        self.m
    }
    /// Sums with exactly `j` terms (layered modes only).
    pub fn layer(&self, j: usize) -> &B {
        &self.layers[j]
    }
    pub fn depth(&self) -> usize {
        self.layers.len()
    }
}

/// A compiled sumset specification over a fixed group.
#[derive(Clone)]
pub struct Accumulator {
    tr: Arc<Translator>,
    spec: SumsetSpec,
    mode: Mode,
}

impl Accumulator {
    pub fn new(g: &Group, spec: SumsetSpec) -> Accumulator {
        let mode = match spec.terms.top() {
            Some(h) => Mode::Layered { top: h as usize },
            None if spec.lambda.is_restricted() => Mode::SubsetSums,
            None => Mode::Closure,
        };
        Accumulator { tr: Translator::for_group(g), spec, mode }
    }

    /// Layered accumulator with `top` layers regardless of the term set,
    /// used by the sum-free searches.
    pub fn layered(g: &Group, lambda: Lambda, top: u64) -> Accumulator {
        Accumulator::new(g, SumsetSpec::new(lambda, Terms::UpTo(top)))
    }

    pub fn spec(&self) -> SumsetSpec {
        self.spec
    }
    pub fn translator(&self) -> &Translator {
        &self.tr
    }
    pub fn order(&self) -> usize {
        self.tr.n
    }

    pub fn init<B: Bits>(&self) -> State<B> {
        let n = self.tr.n;
        let count = match self.mode {
            Mode::Layered { top } => top + 1,
            Mode::Closure | Mode::SubsetSums => 1,
        };
        let mut layers = vec![B::empty(n); count];
        if self.mode != Mode::SubsetSums {
            layers[0].insert(0);
        }
        State { layers, scratch: B::empty(n), m: 0 }
    }

    pub fn push<B: Bits>(&self, st: &mut State<B>, a: usize) {
        let tr = &*self.tr;
        st.m += 1;
        match self.mode {
            Mode::Layered { top } => match self.spec.lambda {
                Lambda::N0 => {
                    for j in 1..=top {
                        let (lo, hi) = st.layers.split_at_mut(j);
                        tr.or_translated(&mut hi[0], &lo[j - 1], a);
                    }
                }
                Lambda::Restricted => {
                    for j in (1..=top.min(st.m)).rev() {
                        let (lo, hi) = st.layers.split_at_mut(j);
                        tr.or_translated(&mut hi[0], &lo[j - 1], a);
                    }
                }
                Lambda::RestrictedSigned => {
                    let na = tr.neg(a);
                    for j in (1..=top.min(st.m)).rev() {
                        let (lo, hi) = st.layers.split_at_mut(j);
                        tr.or_translated(&mut hi[0], &lo[j - 1], a);
                        tr.or_translated(&mut hi[0], &lo[j - 1], na);
                    }
                }
                Lambda::Z => {
                    for j in (1..=top).rev() {
                        let (lo, hi) = st.layers.split_at_mut(j);
                        for i in 1..=j {
                            let src = &lo[j - i];
                            if src.is_empty() {
                                continue;
                            }
                            tr.or_translated(&mut hi[0], src, tr.mul(i as i64, a));
                            tr.or_translated(&mut hi[0], src, tr.mul(-(i as i64), a));
                        }
                    }
                }
            },
            Mode::Closure => {
                let s = &mut st.layers[0];
                if s.contains(a) {
                    return;
                }
                st.scratch.copy_from(s);
                let mut cur = a;
                while !st.scratch.contains(cur) {
                    tr.or_translated(s, &st.scratch, cur);
                    cur = tr.add(cur, a);
                }
            }
            Mode::SubsetSums => {
                let t = &mut st.layers[0];
                st.scratch.copy_from(t);
                tr.or_translated(t, &st.scratch, a);
                t.insert(a);
                if self.spec.lambda.is_signed() {
                    let na = tr.neg(a);
                    tr.or_translated(t, &st.scratch, na);
                    t.insert(na);
                }
            }
        }
    }

    /// Writes `H_Lambda A` into `out`.
    pub fn result_into<B: Bits>(&self, st: &State<B>, out: &mut B) {
        out.clear();
        match (self.mode, self.spec.terms) {
            (Mode::Layered { .. }, Terms::Exact(h)) => out.copy_from(&st.layers[h as usize]),
            (Mode::Layered { .. }, Terms::UpTo(s)) => {
                for l in &st.layers[..=s as usize] {
                    out.or_assign(l);
                }
            }
            (Mode::Layered { .. }, Terms::Range1(t)) => {
                for l in &st.layers[1..=t as usize] {
                    out.or_assign(l);
                }
            }
            (Mode::Closure, Terms::AllN) if st.m == 0 => {}
            (Mode::Closure, _) => out.copy_from(&st.layers[0]),
            (Mode::SubsetSums, terms) => {
                out.copy_from(&st.layers[0]);
                if terms == Terms::AllN0 {
                    out.insert(0);
                }
            }
            (Mode::Layered { .. }, _) => unreachable!("layered mode has a finite term set"),
        }
    }

    pub fn result<B: Bits>(&self, st: &State<B>) -> B {
        let mut out = B::empty(self.tr.n);
        self.result_into(st, &mut out);
        out
    }

    pub fn contains_zero<B: Bits>(&self, st: &State<B>) -> bool {
        match (self.mode, self.spec.terms) {
            (Mode::Layered { .. }, Terms::Exact(h)) => st.layers[h as usize].contains(0),
            (Mode::Layered { .. }, Terms::UpTo(_)) => true,
            (Mode::Layered { .. }, Terms::Range1(t)) => st.layers[1..=t as usize].iter().any(|l| l.contains(0)),
            (Mode::Closure, Terms::AllN) => st.m > 0,
            (Mode::Closure, _) => true,
            (Mode::SubsetSums, Terms::AllN0) => true,
            (Mode::SubsetSums, _) => st.layers[0].contains(0),
            (Mode::Layered { .. }, _) => unreachable!("layered mode has a finite term set"),
        }
    }

    /// `|H_Lambda A|` without materializing the union when one layer suffices.
    pub fn result_count<B: Bits>(&self, st: &State<B>) -> usize {
        match (self.mode, self.spec.terms) {
            (Mode::Layered { .. }, Terms::Exact(h)) => st.layers[h as usize].count(),
            (Mode::Layered { .. }, Terms::UpTo(0)) => 1,
            _ => self.result(st).count(),
        }
    }

    pub fn spans<B: Bits>(&self, st: &State<B>) -> bool {
        self.result_count(st) == self.tr.n
    }

    /// Evaluates the sumset of an index list.
    pub fn eval<B: Bits>(&self, a: &[usize]) -> B {
        let mut st = self.init::<B>();
        for &x in a {
            self.push(&mut st, x);
        }
        self.result(&st)
    }
}

fn to_dyn<B: Bits>(b: &B, n: usize) -> DynBits {
    let mut d = DynBits::empty(n);
    b.for_each(|i| d.insert(i));
    d
}

/// `H_Lambda A`.
pub fn sumset(a: &Subset, spec: SumsetSpec) -> Subset {
    let g = a.group();
    let acc = Accumulator::new(g, spec);
    let idx = a.indices();
    let bits = if g.order() <= 64 {
        to_dyn(&acc.eval::<u64>(&idx), g.order())
    } else {
        acc.eval::<DynBits>(&idx)
    };
    Subset::from_bits(g, bits)
}

/// `Sigma A`: all subset sums, the empty sum included.
pub fn sigma(a: &Subset) -> Subset {
    sumset(a, SumsetSpec::new(Lambda::Restricted, Terms::AllN0))
}

/// `Sigma^* A`: sums of nonempty subsets.
pub fn sigma_star(a: &Subset) -> Subset {
    sumset(a, SumsetSpec::new(Lambda::Restricted, Terms::AllN))
}

/// `Sigma_pm A`.
pub fn sigma_pm(a: &Subset) -> Subset {
    sumset(a, SumsetSpec::new(Lambda::RestrictedSigned, Terms::AllN0))
}

/// `Sigma_pm^* A`.
pub fn sigma_pm_star(a: &Subset) -> Subset {
    sumset(a, SumsetSpec::new(Lambda::RestrictedSigned, Terms::AllN))
}

/// `b . A = {b a : a in A}`.
pub fn dilate(b: i64, a: &Subset) -> Subset {
    let g = a.group();
    let tr = Translator::for_group(g);
    Subset::from_indices(g, a.indices().into_iter().map(|x| tr.mul(b, x)))
}

/// Representative of a residue in `(-n/2, n/2]`.
pub fn centered(x: u64, n: u64) -> i64 {
    let x = (x % n) as i64;
    let n = n as i64;
    if 2 * x > n {
        x - n
    } else {
        x
    }
}

/// `||A||`, the sum of absolute values of centered representatives.
pub fn norm(a: &Subset) -> Result<u64> {
    let g = a.group();
    if !g.is_cyclic() {
        return Err(Error::NotCyclic);
    }
    let n = g.order() as u64;
    Ok(a.indices().into_iter().map(|x| centered(x as u64, n).unsigned_abs()).sum())
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::BTreeSet;

    fn z(n: u64) -> Group {
        Group::cyclic(n).unwrap()
    }

    fn res(g: &Group, xs: &[i64]) -> Subset {
        Subset::from_residues(g, xs.iter().copied())
    }

    /// Direct enumeration of all coefficient vectors with bounded entries.
    fn brute(a: &Subset, spec: SumsetSpec) -> BTreeSet<usize> {
        let g = a.group();
        let n = g.order() as i64;
        let idx = a.indices();
        let m = idx.len();
        let bound: i64 = match spec.terms.top() {
            Some(h) => h as i64,
            None => n,
        };
        let (lo, hi) = match spec.lambda {
            Lambda::N0 => (0, bound),
            Lambda::Z => (-bound, bound),
            Lambda::Restricted => (0, 1),
            Lambda::RestrictedSigned => (-1, 1),
        };
        let mut out = BTreeSet::new();
        let mut coef = vec![lo; m];
        loop {
            let total: i64 = coef.iter().map(|c| c.abs()).sum();
            let ok = match spec.terms.top() {
                Some(_) => spec.terms.contains(total as u64),
                None => spec.terms.contains(total as u64),
            };
            if ok {
                let mut s = 0usize;
                for (&c, &x) in coef.iter().zip(&idx) {
                    s = g.add_idx(s, g.scale_idx(c, x));
                }
                out.insert(s);
            }
            let mut k = 0;
            loop {
                if k == m {
                    return out;
                }
                if coef[k] < hi {
                    coef[k] += 1;
                    break;
                }
                coef[k] = lo;
                k += 1;
            }
        }
    }

    #[test]
    fn table_examples_in_z13() {
        let g = z(13);
        let a = res(&g, &[2, 3]);
        let run = |l, t| sumset(&a, SumsetSpec::new(l, t)).indices();
        assert_eq!(run(Lambda::N0, Terms::Exact(2)), vec![4, 5, 6]);
        assert_eq!(run(Lambda::Z, Terms::Exact(2)), vec![1, 4, 5, 6, 7, 8, 9, 12]);
        assert_eq!(run(Lambda::RestrictedSigned, Terms::Exact(2)), vec![1, 5, 8, 12]);
        assert_eq!(run(Lambda::Restricted, Terms::Exact(2)), vec![5]);
        assert_eq!(run(Lambda::N0, Terms::UpTo(3)), vec![0, 2, 3, 4, 5, 6, 7, 8, 9]);
        for l in Lambda::ALL {
            assert_eq!(run(l, Terms::Exact(0)), vec![0]);
            assert_eq!(sumset(&Subset::empty(&g), SumsetSpec::exact(l, 0)).indices(), vec![0]);
        }
    }

    #[test]
    fn subset_sums() {
        for m in 1..8i64 {
            let g = z((m * (m + 1) / 2 + 5) as u64);
            let a = Subset::from_residues(&g, 1..=m);
            let want: Vec<usize> = (1..=(m * (m + 1) / 2) as usize).collect();
            assert_eq!(sigma_star(&a).indices(), want);
        }
        let g = z(13);
        assert_eq!(sigma(&Subset::empty(&g)).indices(), vec![0]);
        assert!(sigma_star(&Subset::empty(&g)).is_empty());
        let a = res(&g, &[1, 3, 9]);
        let spec = SumsetSpec::new(Lambda::RestrictedSigned, Terms::AllN0);
        assert_eq!(sigma_pm(&a).indices(), brute(&a, spec).into_iter().collect::<Vec<_>>());
    }

    #[test]
    fn matches_enumeration_on_small_groups() {
        let groups = ["Z7", "Z8", "Z12", "Z2xZ4", "Z3xZ3", "Z2^3", "Z70"];
        let mut seed = 0x9e3779b97f4a7c15u64;
        for gs in groups {
            let g: Group = gs.parse().unwrap();
            let n = g.order();
            for _ in 0..12 {
                seed ^= seed << 13;
                seed ^= seed >> 7;
                seed ^= seed << 17;
                let m = 1 + (seed % 4) as usize;
                let a = Subset::from_indices(&g, (0..m).map(|i| ((seed >> (8 * i + 8)) as usize) % n));
                for l in Lambda::ALL {
                    let mut terms = vec![Terms::AllN0, Terms::AllN];
                    for h in 0..4 {
                        terms.push(Terms::Exact(h));
                        terms.push(Terms::UpTo(h));
                        if h > 0 {
                            terms.push(Terms::Range1(h));
                        }
                    }
                    for t in terms {
                        if !l.is_restricted() && t.top().is_none() && a.size() > 3 {
                            continue;
                        }
                        let spec = SumsetSpec::new(l, t);
                        let got: BTreeSet<usize> = sumset(&a, spec).indices().into_iter().collect();
                        assert_eq!(got, brute(&a, spec), "{gs} {a:?} {spec}");
                    }
                }
            }
        }
    }

    #[test]
    fn closure_is_generated_subgroup() {
        let g: Group = "Z6xZ6".parse().unwrap();
        let a = Subset::from_elements(
            &g,
            &[crate::group::GroupElement::new(vec![1, 2]), crate::group::GroupElement::new(vec![1, 4])],
        )
        .unwrap();
        for l in [Lambda::N0, Lambda::Z] {
            assert_eq!(sumset(&a, SumsetSpec::new(l, Terms::AllN0)).size(), 18);
            assert_eq!(sumset(&a, SumsetSpec::new(l, Terms::AllN)), g.generated_subgroup(&a));
            assert!(sumset(&Subset::empty(&g), SumsetSpec::new(l, Terms::AllN)).is_empty());
        }
    }

    #[test]
    fn dilates_and_norms() {
        let g = z(27);
        let a = res(&g, &[5, 6, 7, 8, 9, 19, 20, 21, 22]);
        assert_eq!(dilate(25, &a).indices(), (9..=17).collect::<Vec<_>>());
        assert_eq!(dilate(-1, &a), a.negated());
        let g15 = z(15);
        let h = res(&g15, &[0, 3, 6, 9, 12]);
        assert_eq!(dilate(2, &h), h);
        let g10 = z(10);
        assert_eq!(norm(&res(&g10, &[0, 2, 5, 8])).unwrap(), 9);
        assert_eq!(norm(&res(&g10, &[0])).unwrap(), 0);
        for m in 1..10i64 {
            let g = z(2 * m as u64 + 3);
            assert_eq!(norm(&Subset::from_residues(&g, 1..=m)).unwrap(), (m * (m + 1) / 2) as u64);
        }
        assert_eq!(norm(&Subset::empty(&"Z2^2".parse().unwrap())), Err(Error::NotCyclic));
    }

    #[test]
    fn parse_round_trip() {
        for l in Lambda::ALL {
            assert_eq!(l.to_string().parse::<Lambda>().unwrap(), l);
        }
        for t in [Terms::Exact(3), Terms::UpTo(2), Terms::Range1(4), Terms::AllN0, Terms::AllN] {
            assert_eq!(t.to_string().parse::<Terms>().unwrap(), t);
        }
        assert_eq!("5".parse::<Terms>().unwrap(), Terms::Exact(5));
        assert!("range:0".parse::<Terms>().is_err());
        assert!("bogus".parse::<Lambda>().is_err());
    }

    #[test]
    fn large_noncyclic_without_table() {
        let g: Group = "Z2xZ1024".parse().unwrap();
        let a = Subset::from_indices(&g, [1, 1025, 3]);
        let spec = SumsetSpec::exact(Lambda::N0, 2);
        let got: BTreeSet<usize> = sumset(&a, spec).indices().into_iter().collect();
        assert_eq!(got, brute(&a, spec));
    }
}
