//! Finite abelian groups in invariant-factor form.

use std::collections::{HashSet, VecDeque};
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::arith::{factorize, gcd, lcm};
use crate::bits::{Bits, DynBits};
use crate::error::{invalid, Error, Result};

pub const DEFAULT_ORDER_BOUND: usize = 1 << 20;

/// `Z_{n_1} x ... x Z_{n_r}` with `n_1 | n_2 | ... | n_r`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Group {
    factors: Arc<[u64]>,
    n: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct GroupElement {
    pub coords: Vec<u64>,
}

impl GroupElement {
    pub fn new(coords: Vec<u64>) -> Self {
        GroupElement { coords }
    }
}

impl Group {
    /// Invariant decomposition of `Z_{f1} x ... x Z_{fk}`.
    pub fn normalize(factors: &[u64]) -> Result<Group> {
        Group::normalize_with_bound(factors, DEFAULT_ORDER_BOUND)
    }

    pub fn normalize_with_bound(factors: &[u64], bound: usize) -> Result<Group> {
        let mut order: u128 = 1;
        for &f in factors {
            if f == 0 {
                return Err(invalid("group factors must be positive"));
            }
            order = order.saturating_mul(f as u128);
            if order > bound as u128 {
                return Err(Error::OrderTooLarge { order, bound });
            }
        }
        // exponents of each prime, largest first
        let mut by_prime: Vec<(u64, Vec<u32>)> = Vec::new();
        for &f in factors {
            for (p, e) in factorize(f) {
                match by_prime.iter_mut().find(|(q, _)| *q == p) {
                    Some((_, v)) => v.push(e),
                    None => by_prime.push((p, vec![e])),
                }
            }
        }
        let rank = by_prime.iter().map(|(_, v)| v.len()).max().unwrap_or(0);
        let mut inv = vec![1u64; rank];
        for (p, mut exps) in by_prime {
            exps.sort_unstable_by(|a, b| b.cmp(a));
            for (i, e) in exps.into_iter().enumerate() {
                inv[rank - 1 - i] *= p.pow(e);
            }
        }
        Ok(Group { n: order as usize, factors: inv.into() })
    }

    pub fn cyclic(n: u64) -> Result<Group> {
        Group::normalize(&[n])
    }

    pub fn trivial() -> Group {
        Group { factors: Arc::from(Vec::new()), n: 1 }
    }

    /// `Z_k^r`.
    pub fn power(k: u64, r: usize) -> Result<Group> {
        Group::normalize(&vec![k; r])
    }

    pub fn factors(&self) -> &[u64] {
        &self.factors
    }
    pub fn order(&self) -> usize {
        self.n
    }
    pub fn rank(&self) -> usize {
        self.factors.len()
    }
    pub fn exponent(&self) -> u64 {
        self.factors.last().copied().unwrap_or(1)
    }
    pub fn is_cyclic(&self) -> bool {
        self.factors.len() <= 1
    }

    /// Every group of order `n` up to isomorphism, in a fixed order.
    pub fn all_of_order(n: u64) -> Vec<Group> {
        // partitions of each prime exponent give the primary parts
        fn partitions(e: u32, max: u32) -> Vec<Vec<u32>> {
            if e == 0 {
                return vec![vec![]];
            }
            let mut out = Vec::new();
            for first in (1..=e.min(max)).rev() {
                for mut rest in partitions(e - first, first) {
                    rest.insert(0, first);
                    out.push(rest);
                }
            }
            out
        }
        let mut groups: Vec<Vec<u64>> = vec![vec![]];
        for (p, e) in factorize(n) {
            let mut next = Vec::new();
            for g in &groups {
                for part in partitions(e, e) {
                    let mut f = g.clone();
                    f.extend(part.iter().map(|&k| p.pow(k)));
                    next.push(f);
                }
            }
            groups = next;
        }
        groups.into_iter().map(|f| Group::normalize(&f).expect("small group")).collect()
    }

    pub fn element(&self, mut idx: usize) -> GroupElement {
        let mut coords = vec![0u64; self.rank()];
        for (c, &f) in coords.iter_mut().zip(self.factors.iter()).rev() {
            *c = (idx % f as usize) as u64;
            idx /= f as usize;
        }
        GroupElement { coords }
    }

    pub fn index(&self, a: &GroupElement) -> Result<usize> {
        self.check(a)?;
        Ok(self.index_unchecked(&a.coords))
    }

    fn index_unchecked(&self, coords: &[u64]) -> usize {
        coords
            .iter()
            .zip(self.factors.iter())
            .fold(0usize, |acc, (&c, &f)| acc * f as usize + c as usize)
    }

    fn check(&self, a: &GroupElement) -> Result<()> {
        if a.coords.len() != self.rank() || a.coords.iter().zip(self.factors.iter()).any(|(&c, &f)| c >= f) {
            return Err(Error::GroupMismatch);
        }
        Ok(())
    }

    pub fn zero(&self) -> GroupElement {
        GroupElement { coords: vec![0; self.rank()] }
    }

    pub fn add(&self, a: &GroupElement, b: &GroupElement) -> Result<GroupElement> {
        self.check(a)?;
        self.check(b)?;
        let coords = a
            .coords
            .iter()
            .zip(&b.coords)
            .zip(self.factors.iter())
            .map(|((&x, &y), &f)| (x + y) % f)
            .collect();
        Ok(GroupElement { coords })
    }

    pub fn negate(&self, a: &GroupElement) -> Result<GroupElement> {
        self.check(a)?;
        let coords = a.coords.iter().zip(self.factors.iter()).map(|(&x, &f)| (f - x) % f).collect();
        Ok(GroupElement { coords })
    }

    pub fn sub(&self, a: &GroupElement, b: &GroupElement) -> Result<GroupElement> {
        self.add(a, &self.negate(b)?)
    }

    pub fn scale(&self, lambda: i64, a: &GroupElement) -> Result<GroupElement> {
        self.check(a)?;
        let coords = a
            .coords
            .iter()
            .zip(self.factors.iter())
            .map(|(&x, &f)| (lambda as i128 * x as i128).rem_euclid(f as i128) as u64)
            .collect();
        Ok(GroupElement { coords })
    }

    pub fn element_order(&self, a: &GroupElement) -> Result<u64> {
        self.check(a)?;
        Ok(a.coords.iter().zip(self.factors.iter()).fold(1u64, |acc, (&x, &f)| lcm(acc, f / gcd(f, x))))
    }

    // index-level arithmetic used by the hot paths

    pub fn add_idx(&self, a: usize, b: usize) -> usize {
        if self.is_cyclic() {
            return (a + b) % self.n;
        }
        let (x, y) = (self.element(a), self.element(b));
        let c: Vec<u64> = x.coords.iter().zip(&y.coords).zip(self.factors.iter()).map(|((&p, &q), &f)| (p + q) % f).collect();
        self.index_unchecked(&c)
    }

    pub fn neg_idx(&self, a: usize) -> usize {
        if self.is_cyclic() {
            return (self.n - a) % self.n;
        }
        let x = self.element(a);
        let c: Vec<u64> = x.coords.iter().zip(self.factors.iter()).map(|(&p, &f)| (f - p) % f).collect();
        self.index_unchecked(&c)
    }

    pub fn scale_idx(&self, lambda: i64, a: usize) -> usize {
        if self.is_cyclic() {
            return (lambda as i128 * a as i128).rem_euclid(self.n as i128) as usize;
        }
        let x = self.element(a);
        self.index_unchecked(&self.scale(lambda, &x).expect("valid element").coords)
    }

    pub fn order_idx(&self, a: usize) -> u64 {
        self.element_order(&self.element(a)).expect("valid element")
    }

    /// Elements of order exactly `d`.
    pub fn ord_set(&self, d: u64) -> Subset {
        let mut s = Subset::empty(self);
        for i in 0..self.n {
            if self.order_idx(i) == d {
                s.insert(i);
            }
        }
        s
    }

    /// Closure of `A u {0}` under addition and negation.
    pub fn generated_subgroup(&self, a: &Subset) -> Subset {
        let mut s = Subset::empty(self);
        s.insert(0);
        let gens = a.indices();
        let mut queue = VecDeque::from([0usize]);
        while let Some(x) = queue.pop_front() {
            for &g in &gens {
                let y = self.add_idx(x, g);
                if !s.contains(y) {
                    s.insert(y);
                    queue.push_back(y);
                }
            }
        }
        s
    }

    /// Every subgroup, found by closing under one extra generator at a time.
    pub fn all_subgroups(&self) -> Vec<Subset> {
        let mut seen: HashSet<DynBits> = HashSet::new();
        let trivial = self.generated_subgroup(&Subset::empty(self));
        seen.insert(trivial.bits.clone());
        let mut frontier = vec![trivial];
        let mut all = frontier.clone();
        while let Some(h) = frontier.pop() {
            for g in 0..self.n {
                if h.contains(g) {
                    continue;
                }
                let mut gens = h.clone();
                gens.insert(g);
                let k = self.generated_subgroup(&gens);
                if seen.insert(k.bits.clone()) {
                    frontier.push(k.clone());
                    all.push(k);
                }
            }
        }
        all.sort_by(|a, b| a.size().cmp(&b.size()).then_with(|| a.indices().cmp(&b.indices())));
        all
    }
}

/// The subgroup `{j n/d : 0 <= j < d}` of `Z_n`.
pub fn cyclic_subgroup(n: u64, d: u64) -> Result<Subset> {
    if d == 0 || n % d != 0 {
        return Err(Error::NotDivisor(d, n));
    }
    let g = Group::cyclic(n)?;
    Ok(Subset::from_indices(&g, (0..d).map(|j| (j * (n / d)) as usize)))
}

/// Number of subgroups of `Z_{n1} x Z_{n2}` for `n1 | n2`.
pub fn subgroup_count_rank2(n1: u64, n2: u64) -> Result<u64> {
    if n1 == 0 || n2 % n1 != 0 {
        return Err(Error::NotDivisor(n1, n2));
    }
    let d1s = crate::arith::divisors(n1);
    let d2s = crate::arith::divisors(n2);
    Ok(d1s.iter().map(|&a| d2s.iter().map(|&b| gcd(a, b)).sum::<u64>()).sum())
}

impl fmt::Display for Group {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            return write!(f, "Z1");
        }
        let parts: Vec<String> = self.factors.iter().map(|k| format!("Z{k}")).collect();
        write!(f, "{}", parts.join("x"))
    }
}

impl fmt::Debug for Group {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Group({self})")
    }
}

#[derive(Serialize, Deserialize)]
struct GroupJson {
    factors: Vec<u64>,
}

impl Group {
    pub fn to_json(&self) -> String {
        serde_json::to_string(&GroupJson { factors: self.factors.to_vec() }).expect("plain struct")
    }
}

impl FromStr for Group {
    type Err = Error;

    /// Accepts `Z12`, `Z3^2`, `Z2xZ4`, `Z2^2xZ6` and `{"factors":[2,4]}`.
    fn from_str(s: &str) -> Result<Group> {
        let s = s.trim();
        let bad = || Error::Parse { what: "group", token: s.to_string() };
        if s.starts_with('{') {
            let j: GroupJson = serde_json::from_str(s).map_err(|_| bad())?;
            return Group::normalize(&j.factors);
        }
        let mut factors = Vec::new();
        for part in s.split(['x', '*']) {
            let part = part.trim();
            let body = part.strip_prefix('Z').ok_or_else(|| Error::Parse { what: "group factor", token: part.to_string() })?;
            let (base, exp) = match body.split_once('^') {
                Some((b, e)) => (b, e.parse::<usize>().map_err(|_| Error::Parse { what: "exponent", token: part.to_string() })?),
                None => (body, 1),
            };
            let k: u64 = base.parse().map_err(|_| Error::Parse { what: "group factor", token: part.to_string() })?;
            if k == 0 {
                return Err(bad());
            }
            factors.extend(std::iter::repeat_n(k, exp));
        }
        Group::normalize(&factors)
    }
}

/// A subset of a group, stored as a bitset over canonical indices.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Subset {
    group: Group,
    pub(crate) bits: DynBits,
}

impl Subset {
    pub fn empty(g: &Group) -> Subset {
        Subset { group: g.clone(), bits: DynBits::empty(g.order()) }
    }

    pub fn full(g: &Group) -> Subset {
        Subset::from_indices(g, 0..g.order())
    }

    pub fn from_indices(g: &Group, idx: impl IntoIterator<Item = usize>) -> Subset {
        let mut s = Subset::empty(g);
        for i in idx {
            assert!(i < g.order(), "index {i} outside group of order {}", g.order());
            s.insert(i);
        }
        s
    }

    /// Cyclic-group convenience: residues are reduced mod n.
    pub fn from_residues(g: &Group, xs: impl IntoIterator<Item = i64>) -> Subset {
        let n = g.order() as i64;
        Subset::from_indices(g, xs.into_iter().map(|x| x.rem_euclid(n) as usize))
    }

    pub fn from_elements(g: &Group, xs: &[GroupElement]) -> Result<Subset> {
        let mut s = Subset::empty(g);
        for x in xs {
            s.insert(g.index(x)?);
        }
        Ok(s)
    }

    pub(crate) fn from_bits(g: &Group, bits: DynBits) -> Subset {
        Subset { group: g.clone(), bits }
    }

    pub fn group(&self) -> &Group {
        &self.group
    }
    pub fn insert(&mut self, i: usize) {
        self.bits.insert(i);
    }
    pub fn remove(&mut self, i: usize) {
        self.bits.remove(i);
    }
    pub fn contains(&self, i: usize) -> bool {
        i < self.group.order() && self.bits.contains(i)
    }
    pub fn size(&self) -> usize {
        self.bits.count()
    }
    pub fn is_empty(&self) -> bool {
        self.bits.is_empty()
    }
    pub fn is_full(&self) -> bool {
        self.size() == self.group.order()
    }
    pub fn indices(&self) -> Vec<usize> {
        self.bits.ones()
    }
    pub fn elements(&self) -> Vec<GroupElement> {
        self.indices().into_iter().map(|i| self.group.element(i)).collect()
    }

    pub fn union(&self, o: &Subset) -> Subset {
        let mut b = self.bits.clone();
        b.or_assign(&o.bits);
        Subset::from_bits(&self.group, b)
    }

    pub fn intersection(&self, o: &Subset) -> Subset {
        let mut b = self.bits.clone();
        b.and_assign(&o.bits);
        Subset::from_bits(&self.group, b)
    }

    pub fn is_disjoint(&self, o: &Subset) -> bool {
        !self.bits.intersects(&o.bits)
    }

    pub fn is_subset_of(&self, o: &Subset) -> bool {
        self.intersection(o) == *self
    }

    /// `{a + g : a in A}`.
    pub fn translate(&self, g: usize) -> Subset {
        Subset::from_indices(&self.group, self.indices().into_iter().map(|a| self.group.add_idx(a, g)))
    }

    pub fn negated(&self) -> Subset {
        Subset::from_indices(&self.group, self.indices().into_iter().map(|a| self.group.neg_idx(a)))
    }

    pub fn without_zero(&self) -> Subset {
        let mut s = self.clone();
        s.remove(0);
        s
    }
}

impl fmt::Debug for Subset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{:?}", self.group, self.indices())
    }
}
