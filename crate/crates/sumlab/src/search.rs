//! Exhaustive evaluation of the extremal quantities nu, phi, sigma, rho,
//! chi, tau and mu over subsets of a finite abelian group.
//!
//! Fixed-size searches walk m-subsets in colex order, split into blocks by
//! their two largest elements; blocks run in parallel and are reduced in
//! block order, so values and witnesses never depend on scheduling.

use std::fmt;
use std::str::FromStr;
use std::sync::atomic::{AtomicBool, AtomicU64, AtomicUsize, Ordering::Relaxed};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::arith::binomial;
use crate::bits::{Bits, DynBits};
use crate::counting::{layer_size, LayerSpec};
use crate::error::{Error, Result};
use crate::group::{Group, Subset};
use crate::sumset::{Accumulator, Lambda, State, SumsetSpec, Terms};

pub const DEFAULT_BUDGET: u64 = 1_000_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchConfig {
    /// Maximum number of search nodes before giving up.
    pub budget: u64,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig { budget: DEFAULT_BUDGET }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchResult {
    /// `None` when the quantity does not exist.
    pub value: Option<u64>,
    /// Canonical indices of a set attaining the value.
    pub witness: Option<Vec<usize>>,
    pub exhaustive: bool,
    pub nodes: u64,
}

impl SearchResult {
    pub fn witness_subset(&self, g: &Group) -> Option<Subset> {
        self.witness.as_ref().map(|w| Subset::from_indices(g, w.iter().copied()))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Family {
    Nu,
    Phi,
    Sigma,
    Rho,
    Chi,
    Tau,
    Mu,
}

impl FromStr for Family {
    type Err = Error;
    fn from_str(s: &str) -> Result<Family> {
        Ok(match s.trim().to_ascii_lowercase().as_str() {
            "nu" => Family::Nu,
            "phi" => Family::Phi,
            "sigma" => Family::Sigma,
            "rho" => Family::Rho,
            "chi" => Family::Chi,
            "tau" => Family::Tau,
            "mu" => Family::Mu,
            _ => return Err(Error::Parse { what: "quantity family", token: s.to_string() }),
        })
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Family::Nu => "nu",
            Family::Phi => "phi",
            Family::Sigma => "sigma",
            Family::Rho => "rho",
            Family::Chi => "chi",
            Family::Tau => "tau",
            Family::Mu => "mu",
        };
        f.write_str(s)
    }
}

/// One of the seven quantities with its decorations.
///
/// For `Mu`, `pair = Some((k, l))` asks for `kA` and `lA` to be disjoint;
/// otherwise `spec.terms` must be `UpTo(s)` and all layers up to `s` must be
/// pairwise disjoint.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuantityQuery {
    pub family: Family,
    pub spec: SumsetSpec,
    pub m: Option<u64>,
    pub pair: Option<(u64, u64)>,
    pub generating: bool,
    pub exclude_zero: bool,
}

impl QuantityQuery {
    pub fn new(family: Family, spec: SumsetSpec) -> Self {
        QuantityQuery { family, spec, m: None, pair: None, generating: false, exclude_zero: false }
    }
    pub fn with_m(mut self, m: u64) -> Self {
        self.m = Some(m);
        self
    }
    pub fn with_pair(mut self, k: u64, l: u64) -> Self {
        self.pair = Some((k, l));
        self
    }
    pub fn generating(mut self, on: bool) -> Self {
        self.generating = on;
        self
    }
    pub fn exclude_zero(mut self, on: bool) -> Self {
        self.exclude_zero = on;
        self
    }
}

// ---------------------------------------------------------------------------
// budget

struct Budget {
    limit: u64,
    nodes: AtomicU64,
    over: AtomicBool,
}

impl Budget {
    fn new(limit: u64) -> Self {
        Budget { limit, nodes: AtomicU64::new(0), over: AtomicBool::new(false) }
    }
    fn add(&self, k: u64) -> bool {
        let c = self.nodes.fetch_add(k, Relaxed) + k;
        if c > self.limit {
            self.over.store(true, Relaxed);
        }
        self.over.load(Relaxed)
    }
    fn nodes(&self) -> u64 {
        self.nodes.load(Relaxed)
    }
    fn check(&self) -> Result<()> {
        if self.over.load(Relaxed) {
            Err(Error::BudgetExceeded { budget: self.limit, estimate: self.nodes() as u128 })
        } else {
            Ok(())
        }
    }
}

/// Thread-local node counter flushing to the shared budget in batches.
struct Tick<'a> {
    budget: &'a Budget,
    local: u64,
}

impl<'a> Tick<'a> {
    fn new(budget: &'a Budget) -> Self {
        Tick { budget, local: 0 }
    }
    #[inline]
    fn tick(&mut self) -> bool {
        self.local += 1;
        if self.local == 1024 {
            self.local = 0;
            return self.budget.add(1024);
        }
        false
    }
}

impl Drop for Tick<'_> {
    fn drop(&mut self) {
        self.budget.add(self.local);
    }
}

fn pre_estimate(pool: usize, r: usize, cfg: &SearchConfig) -> Result<()> {
    let est = binomial(pool as u64, r as u64);
    if est > cfg.budget as u128 {
        return Err(Error::BudgetExceeded { budget: cfg.budget, estimate: est });
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// fixed-size colex walk

trait Visitor<B>: Send {
    /// Called on a proper partial set; `true` discards every extension.
    fn cut(&mut self, st: &State<B>) -> bool;
    /// Called on a complete set (`chosen` is descending); `true` ends the walk.
    fn leaf(&mut self, st: &State<B>, chosen: &[usize]) -> bool;
    /// External request to stop.
    fn halted(&self) -> bool;
}

struct Walker<'a> {
    acc: &'a Accumulator,
    pool: &'a [usize],
}

impl Walker<'_> {
    /// Extends `stack[0]` by `remaining` pool elements with positions below `hi`.
    fn walk<B: Bits, V: Visitor<B>>(
        &self,
        stack: &mut [State<B>],
        chosen: &mut Vec<usize>,
        remaining: usize,
        hi: usize,
        v: &mut V,
        tick: &mut Tick,
    ) -> bool {
        let (cur, rest) = stack.split_first_mut().expect("stack depth");
        for t in (remaining - 1)..hi {
            if tick.tick() || v.halted() {
                return true;
            }
            let next = &mut rest[0];
            next.clone_from(cur);
            self.acc.push(next, self.pool[t]);
            chosen.push(self.pool[t]);
            let stop = if remaining == 1 {
                v.leaf(next, chosen)
            } else if v.cut(next) {
                false
            } else {
                self.walk(rest, chosen, remaining - 1, t, v, tick)
            };
            chosen.pop();
            if stop {
                return true;
            }
        }
        false
    }
}

/// Runs one visitor per colex block and returns them in block order.
fn run_blocks<B, V, F>(
    acc: &Accumulator,
    pool: &[usize],
    forced: &[usize],
    r: usize,
    budget: &Budget,
    make: F,
) -> Vec<V>
where
    B: Bits,
    V: Visitor<B>,
    F: Fn(usize) -> V + Sync,
{
    let mut base = acc.init::<B>();
    for &f in forced {
        acc.push(&mut base, f);
    }
    let mut chosen0: Vec<usize> = forced.iter().rev().copied().collect();
    if r == 0 {
        let mut v = make(0);
        v.leaf(&base, &chosen0);
        return vec![v];
    }
    if r > pool.len() {
        return Vec::new();
    }
    let p = pool.len();
    let depth = r.min(2);
    let mut prefixes: Vec<(usize, Option<usize>)> = Vec::new();
    for t1 in (r - 1)..p {
        if depth == 1 {
            prefixes.push((t1, None));
        } else {
            for t2 in (r - 2)..t1 {
                prefixes.push((t1, Some(t2)));
            }
        }
    }
    let walker = Walker { acc, pool };
    chosen0.reverse();
    prefixes
        .par_iter()
        .enumerate()
        .map(|(idx, &(t1, t2))| {
            let mut v = make(idx);
            let mut tick = Tick::new(budget);
            if v.halted() || tick.tick() {
                return v;
            }
            let mut stack = vec![base.clone(); r + 1 - depth + 1];
            let mut chosen = chosen0.clone();
            acc.push(&mut stack[0], pool[t1]);
            chosen.push(pool[t1]);
            let (hi, left) = match t2 {
                None => (t1, r - 1),
                Some(t2) => {
                    if r > 1 && v.cut(&stack[0]) {
                        return v;
                    }
                    acc.push(&mut stack[0], pool[t2]);
                    chosen.push(pool[t2]);
                    (t2, r - 2)
                }
            };
            if left == 0 {
                v.leaf(&stack[0], &chosen);
            } else if !v.cut(&stack[0]) {
                walker.walk(&mut stack, &mut chosen, left, hi, &mut v, &mut tick);
            }
            v
        })
        .collect()
}

fn sorted(chosen: &[usize]) -> Vec<usize> {
    let mut w = chosen.to_vec();
    w.sort_unstable();
    w
}

struct FirstMatch<'a, C, L> {
    idx: usize,
    first: &'a AtomicUsize,
    cut: &'a C,
    leaf: &'a L,
    found: Option<Vec<usize>>,
}

impl<B, C, L> Visitor<B> for FirstMatch<'_, C, L>
where
    B: Bits,
    C: Fn(&State<B>) -> bool + Sync,
    L: Fn(&State<B>, &[usize]) -> bool + Sync,
{
    fn cut(&mut self, st: &State<B>) -> bool {
        (self.cut)(st)
    }
    fn leaf(&mut self, st: &State<B>, chosen: &[usize]) -> bool {
        if (self.leaf)(st, chosen) {
            self.found = Some(sorted(chosen));
            self.first.fetch_min(self.idx, Relaxed);
            return true;
        }
        false
    }
    fn halted(&self) -> bool {
        self.first.load(Relaxed) < self.idx
    }
}

/// The colex-first `forced + r`-set satisfying `leaf`.
fn first_match<B, C, L>(
    acc: &Accumulator,
    pool: &[usize],
    forced: &[usize],
    r: usize,
    budget: &Budget,
    cut: &C,
    leaf: &L,
) -> Result<Option<Vec<usize>>>
where
    B: Bits,
    C: Fn(&State<B>) -> bool + Sync,
    L: Fn(&State<B>, &[usize]) -> bool + Sync,
{
    let first = AtomicUsize::new(usize::MAX);
    let vs = run_blocks::<B, _, _>(acc, pool, forced, r, budget, |idx| FirstMatch {
        idx,
        first: &first,
        cut,
        leaf,
        found: None,
    });
    let hit = vs.into_iter().find_map(|v| v.found);
    if hit.is_none() {
        budget.check()?;
    }
    Ok(hit)
}

struct CollectAll<'a, C: ?Sized, L: ?Sized> {
    cut: &'a C,
    leaf: &'a L,
    found: Vec<Vec<usize>>,
}

impl<B, C, L> Visitor<B> for CollectAll<'_, C, L>
where
    B: Bits,
    C: Fn(&State<B>) -> bool + Sync + ?Sized,
    L: Fn(&State<B>, &[usize]) -> bool + Sync + ?Sized,
{
    fn cut(&mut self, st: &State<B>) -> bool {
        (self.cut)(st)
    }
    fn leaf(&mut self, st: &State<B>, chosen: &[usize]) -> bool {
        if (self.leaf)(st, chosen) {
            self.found.push(sorted(chosen));
        }
        false
    }
    fn halted(&self) -> bool {
        false
    }
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Dir {
    Max,
    Min,
}

struct Optimize<'a, F> {
    idx: usize,
    dir: Dir,
    value: &'a F,
    /// Values are monotone under inclusion, so partial sets bound the leaves.
    monotone: bool,
    shared: &'a AtomicU64,
    bound: Option<u64>,
    first: &'a AtomicUsize,
    best: Option<(u64, Vec<usize>)>,
}

impl<B, F> Visitor<B> for Optimize<'_, F>
where
    B: Bits,
    F: Fn(&State<B>) -> u64 + Sync,
{
    fn cut(&mut self, st: &State<B>) -> bool {
        self.dir == Dir::Min && self.monotone && (self.value)(st) > self.shared.load(Relaxed)
    }
    fn leaf(&mut self, st: &State<B>, chosen: &[usize]) -> bool {
        let v = (self.value)(st);
        let better = match (&self.best, self.dir) {
            (None, _) => true,
            (Some((b, _)), Dir::Max) => v > *b,
            (Some((b, _)), Dir::Min) => v < *b,
        };
        if better {
            self.best = Some((v, sorted(chosen)));
            match self.dir {
                Dir::Max => self.shared.fetch_max(v, Relaxed),
                Dir::Min => self.shared.fetch_min(v, Relaxed),
            };
            if Some(v) == self.bound {
                self.first.fetch_min(self.idx, Relaxed);
                return true;
            }
        }
        false
    }
    fn halted(&self) -> bool {
        self.first.load(Relaxed) < self.idx
    }
}

#[allow(clippy::too_many_arguments)]
fn optimize<B, F>(
    acc: &Accumulator,
    pool: &[usize],
    forced: &[usize],
    r: usize,
    dir: Dir,
    monotone: bool,
    bound: Option<u64>,
    budget: &Budget,
    value: &F,
) -> Result<Option<(u64, Vec<usize>)>>
where
    B: Bits,
    F: Fn(&State<B>) -> u64 + Sync,
{
    let shared = AtomicU64::new(if dir == Dir::Max { 0 } else { u64::MAX });
    let first = AtomicUsize::new(usize::MAX);
    let vs = run_blocks::<B, _, _>(acc, pool, forced, r, budget, |idx| Optimize {
        idx,
        dir,
        value,
        monotone,
        shared: &shared,
        bound,
        first: &first,
        best: None,
    });
    let hit = first.load(Relaxed);
    if hit == usize::MAX {
        budget.check()?;
    }
    let mut best: Option<(u64, Vec<usize>)> = None;
    for v in vs.into_iter().take(hit.saturating_add(1)) {
        if let Some((val, w)) = v.best {
            let better = match (&best, dir) {
                (None, _) => true,
                (Some((b, _)), Dir::Max) => val > *b,
                (Some((b, _)), Dir::Min) => val < *b,
            };
            if better {
                best = Some((val, w));
            }
        }
    }
    Ok(best)
}

// ---------------------------------------------------------------------------
// hereditary maximum

struct Hereditary<'a, O> {
    acc: &'a Accumulator,
    ok: &'a O,
    best: &'a AtomicUsize,
    ub: usize,
}

impl<O> Hereditary<'_, O> {
    /// Branch and bound over candidates already known to be compatible with `stack[0]`.
    fn grow<B: Bits>(&self, stack: &mut [State<B>], size: usize, cands: &[usize], tick: &mut Tick) -> bool
    where
        O: Fn(&State<B>) -> bool + Sync,
    {
        for i in (0..cands.len()).rev() {
            if size + 1 + i <= self.best.load(Relaxed) {
                break;
            }
            if tick.tick() || self.best.load(Relaxed) >= self.ub {
                return true;
            }
            let (cur, rest) = stack.split_first_mut().expect("stack depth");
            let (next, rest2) = rest.split_first_mut().expect("stack depth");
            next.clone_from(cur);
            self.acc.push(next, cands[i]);
            self.best.fetch_max(size + 1, Relaxed);
            if i == 0 || size + 1 + i <= self.best.load(Relaxed) {
                continue;
            }
            let tmp = &mut rest2[0];
            let mut sub = Vec::with_capacity(i);
            for &y in &cands[..i] {
                tmp.clone_from(next);
                self.acc.push(tmp, y);
                if (self.ok)(tmp) {
                    sub.push(y);
                }
            }
            if sub.is_empty() {
                continue;
            }
            // next becomes the current state of the recursion
            if self.grow(&mut stack[1..], size + 1, &sub, tick) {
                return true;
            }
        }
        false
    }
}

/// Largest `|forced| + r` for which some extension of `forced` by `r` pool
/// elements satisfies the hereditary predicate `ok`.
fn hereditary_max<B, O>(
    acc: &Accumulator,
    pool: &[usize],
    forced: &[usize],
    ok: &O,
    ub: usize,
    budget: &Budget,
) -> Result<Option<usize>>
where
    B: Bits,
    O: Fn(&State<B>) -> bool + Sync,
{
    let mut base = acc.init::<B>();
    if !ok(&base) {
        return Ok(None);
    }
    for &f in forced {
        acc.push(&mut base, f);
    }
    if !ok(&base) {
        return Ok(None);
    }
    let cands: Vec<usize> = pool
        .iter()
        .copied()
        .filter(|&y| {
            let mut t = base.clone();
            acc.push(&mut t, y);
            ok(&t)
        })
        .collect();
    let best = AtomicUsize::new(forced.len());
    let h = Hereditary { acc, ok, best: &best, ub };
    let depth = cands.len() + 3;
    (0..cands.len()).into_par_iter().rev().for_each(|i| {
        let mut tick = Tick::new(budget);
        if forced.len() + 1 + i <= best.load(Relaxed) || best.load(Relaxed) >= ub || tick.tick() {
            return;
        }
        let mut stack = vec![base.clone(); depth.min(ub + 3)];
        acc.push(&mut stack[0], cands[i]);
        best.fetch_max(forced.len() + 1, Relaxed);
        let mut sub = Vec::with_capacity(i);
        for &y in &cands[..i] {
            let mut t = stack[0].clone();
            acc.push(&mut t, y);
            if ok(&t) {
                sub.push(y);
            }
        }
        if !sub.is_empty() {
            h.grow(&mut stack, forced.len() + 1, &sub, &mut tick);
        }
    });
    if best.load(Relaxed) < ub {
        budget.check()?;
    }
    Ok(Some(best.load(Relaxed)))
}

// ---------------------------------------------------------------------------
// pools

fn nonzero(g: &Group) -> Vec<usize> {
    (1..g.order()).collect()
}

/// One element from each pair `{a, -a}` of nonzero elements (the smaller index).
fn sign_representatives(g: &Group) -> Vec<usize> {
    (1..g.order()).filter(|&a| a <= g.neg_idx(a)).collect()
}

/// Sizes of `H_Lambda A` are translation invariant.
fn translation_invariant(spec: SumsetSpec) -> bool {
    matches!(spec.terms, Terms::Exact(_)) && matches!(spec.lambda, Lambda::N0 | Lambda::Restricted)
}

macro_rules! dispatch {
    ($g:expr, $f:ident ( $($arg:expr),* )) => {
        if $g.order() <= 64 { $f::<u64>($($arg),*) } else { $f::<DynBits>($($arg),*) }
    };
}

fn finish(budget: &Budget, value: Option<u64>, witness: Option<Vec<usize>>) -> SearchResult {
    SearchResult { value, witness, exhaustive: true, nodes: budget.nodes() }
}

// ---------------------------------------------------------------------------
// nu and rho

fn extremal_size<B: Bits>(g: &Group, m: u64, spec: SumsetSpec, dir: Dir, cfg: &SearchConfig) -> Result<SearchResult> {
    let n = g.order();
    if m == 0 || m as usize > n {
        return Err(Error::InvalidParameter(format!("subset size {m} outside 1..={n}")));
    }
    let acc = Accumulator::new(g, spec);
    let (pool, forced) = if translation_invariant(spec) && n > 1 { (nonzero(g), vec![0]) } else { ((0..n).collect(), vec![]) };
    let r = m as usize - forced.len();
    pre_estimate(pool.len(), r, cfg)?;
    let budget = Budget::new(cfg.budget);
    let bound = match dir {
        Dir::Max => {
            let layer = layer_size(LayerSpec { lambda: spec.lambda, m, terms: spec.terms });
            Some(layer.map(|l| l.min(n as u128) as u64).unwrap_or(n as u64))
        }
        Dir::Min => Some(match spec.terms {
            Terms::Exact(0) | Terms::UpTo(0) => 1,
            _ => 0,
        }),
    };
    let value = |st: &State<B>| acc.result_count(st) as u64;
    let best = optimize::<B, _>(&acc, &pool, &forced, r, dir, true, bound, &budget, &value)?;
    let (v, w) = best.expect("nonempty search space");
    Ok(finish(&budget, Some(v), Some(w)))
}

/// `nu_Lambda(G, m, H)`: the largest `|H_Lambda A|` over m-subsets.
pub fn max_sumset_size(g: &Group, m: u64, spec: SumsetSpec, cfg: &SearchConfig) -> Result<SearchResult> {
    dispatch!(g, extremal_size(g, m, spec, Dir::Max, cfg))
}

/// `rho_Lambda(G, m, H)`: the smallest `|H_Lambda A|` over m-subsets.
pub fn min_sumset_size(g: &Group, m: u64, spec: SumsetSpec, cfg: &SearchConfig) -> Result<SearchResult> {
    dispatch!(g, extremal_size(g, m, spec, Dir::Min, cfg))
}

// ---------------------------------------------------------------------------
// phi

fn phi_pool(g: &Group, spec: SumsetSpec) -> (Vec<usize>, Vec<usize>) {
    let n = g.order();
    if n == 1 {
        return ((0..n).collect(), vec![]);
    }
    let zero_useless = matches!(spec.terms, Terms::UpTo(_) | Terms::AllN0)
        || (matches!(spec.lambda, Lambda::N0 | Lambda::Z) && spec.terms == Terms::AllN);
    if spec.lambda == Lambda::Z && zero_useless {
        (sign_representatives(g), vec![])
    } else if zero_useless {
        (nonzero(g), vec![])
    } else if translation_invariant(spec) {
        (nonzero(g), vec![0])
    } else {
        ((0..n).collect(), vec![])
    }
}

fn phi_impl<B: Bits>(g: &Group, spec: SumsetSpec, cfg: &SearchConfig) -> Result<SearchResult> {
    let acc = Accumulator::new(g, spec);
    let (pool, forced) = phi_pool(g, spec);
    let budget = Budget::new(cfg.budget);
    let cut = |_: &State<B>| false;
    let leaf = |st: &State<B>, _: &[usize]| acc.spans(st);
    for m in 1..=pool.len() + forced.len() {
        if m < forced.len() {
            continue;
        }
        if let Some(w) = first_match::<B, _, _>(&acc, &pool, &forced, m - forced.len(), &budget, &cut, &leaf)? {
            return Ok(finish(&budget, Some(m as u64), Some(w)));
        }
    }
    Ok(finish(&budget, None, None))
}

/// `phi_Lambda(G, H)`: the least size of a set with `H_Lambda A = G`.
pub fn min_spanning_size(g: &Group, spec: SumsetSpec, cfg: &SearchConfig) -> Result<SearchResult> {
    dispatch!(g, phi_impl(g, spec, cfg))
}

/// Colex-first spanning m-set, if any.
pub fn spanning_set(g: &Group, m: u64, spec: SumsetSpec, cfg: &SearchConfig) -> Result<Option<Vec<usize>>> {
    fn go<B: Bits>(g: &Group, m: u64, spec: SumsetSpec, cfg: &SearchConfig) -> Result<Option<Vec<usize>>> {
        let acc = Accumulator::new(g, spec);
        let (pool, forced) = phi_pool(g, spec);
        if (m as usize) < forced.len() || m as usize > pool.len() + forced.len() {
            return Ok(None);
        }
        let budget = Budget::new(cfg.budget);
        let cut = |_: &State<B>| false;
        let leaf = |st: &State<B>, _: &[usize]| acc.spans(st);
        first_match::<B, _, _>(&acc, &pool, &forced, m as usize - forced.len(), &budget, &cut, &leaf)
    }
    dispatch!(g, go(g, m, spec, cfg))
}

// ---------------------------------------------------------------------------
// chi

fn chi_impl<B: Bits>(
    g: &Group,
    spec: SumsetSpec,
    generating: bool,
    exclude_zero: bool,
    cfg: &SearchConfig,
) -> Result<SearchResult> {
    let n = g.order();
    let acc = Accumulator::new(g, spec);
    let closure = Accumulator::new(g, SumsetSpec::new(Lambda::N0, Terms::AllN0));
    let (pool, forced): (Vec<usize>, Vec<usize>) = if exclude_zero {
        (nonzero(g), vec![])
    } else if translation_invariant(spec) && !generating && n > 1 {
        (nonzero(g), vec![0])
    } else {
        ((0..n).collect(), vec![])
    };
    let total = pool.len() + forced.len();
    let budget = Budget::new(cfg.budget);
    let cut = |st: &State<B>| acc.spans(st);
    let leaf = |st: &State<B>, chosen: &[usize]| {
        if acc.spans(st) {
            return false;
        }
        !generating || closure.eval::<B>(chosen).count() == n
    };
    for k in (forced.len().max(1)..=total).rev() {
        if let Some(w) = first_match::<B, _, _>(&acc, &pool, &forced, k - forced.len(), &budget, &cut, &leaf)? {
            let value = if k == total { None } else { Some(k as u64 + 1) };
            return Ok(finish(&budget, value, Some(w)));
        }
    }
    Ok(finish(&budget, Some(1), None))
}

/// `chi_Lambda(G, H)`: the least m such that every qualifying set of size at
/// least m spans. With `generating` only sets generating `G` qualify; with
/// `exclude_zero` only subsets of `G \ {0}` qualify. The witness is a largest
/// qualifying set that fails to span.
pub fn critical_number(
    g: &Group,
    spec: SumsetSpec,
    generating: bool,
    exclude_zero: bool,
    cfg: &SearchConfig,
) -> Result<SearchResult> {
    dispatch!(g, chi_impl(g, spec, generating, exclude_zero, cfg))
}

// ---------------------------------------------------------------------------
// hereditary families

/// Search space for a hereditary family: accumulator, pool, forced elements,
/// upper bound and the predicate kind.
#[derive(Clone)]
struct HeredPlan {
    acc: Accumulator,
    pool: Vec<usize>,
    forced: Vec<usize>,
    ub: usize,
    kind: HeredKind,
}

#[derive(Clone)]
enum HeredKind {
    /// `|H A|` equals the layer size for `|A|`.
    Sidon(Vec<u128>),
    /// `0` not in `H A`.
    ZeroFree,
    /// Listed layer pairs disjoint.
    Disjoint(Vec<(usize, usize)>),
    /// Never satisfiable, not even by the empty set.
    Impossible,
}

impl HeredPlan {
    fn ok<B: Bits>(&self, st: &State<B>) -> bool {
        match &self.kind {
            HeredKind::Sidon(sizes) => {
                let m = st.size();
                m < sizes.len() && self.acc.result_count(st) as u128 == sizes[m]
            }
            HeredKind::ZeroFree => !self.acc.contains_zero(st),
            HeredKind::Disjoint(pairs) => pairs.iter().all(|&(k, l)| !st.layer(k).intersects(st.layer(l))),
            HeredKind::Impossible => false,
        }
    }
}

fn sidon_plan(g: &Group, spec: SumsetSpec) -> Result<HeredPlan> {
    let n = g.order();
    let mut sizes = Vec::new();
    for m in 0..=n as u64 {
        let s = layer_size(LayerSpec { lambda: spec.lambda, m, terms: spec.terms })?;
        if s > n as u128 && m > 0 {
            break;
        }
        sizes.push(s);
    }
    let (pool, forced) = if translation_invariant(spec) && n > 1 { (nonzero(g), vec![0]) } else { ((0..n).collect(), vec![]) };
    Ok(HeredPlan { acc: Accumulator::new(g, spec), pool, forced, ub: sizes.len() - 1, kind: HeredKind::Sidon(sizes) })
}

fn tau_plan(g: &Group, spec: SumsetSpec) -> HeredPlan {
    let n = g.order();
    let acc = Accumulator::new(g, spec);
    if spec.terms.contains(0) {
        return HeredPlan { acc, pool: vec![], forced: vec![], ub: 0, kind: HeredKind::Impossible };
    }
    let kappa = g.exponent();
    let (pool, forced) = if spec.lambda.is_signed() && spec.terms.contains(2) {
        let mut pool = sign_representatives(g);
        // 0 used once adds nothing to a restricted signed sum
        if spec.lambda == Lambda::RestrictedSigned && !spec.terms.contains(1) {
            pool.insert(0, 0);
        }
        (pool, vec![])
    } else if let (Lambda::Restricted, Terms::Exact(h)) = (spec.lambda, spec.terms) {
        if n > 1 && h % kappa == 0 {
            (nonzero(g), vec![0])
        } else {
            ((0..n).collect(), vec![])
        }
    } else if spec.terms.contains(1) {
        (nonzero(g), vec![])
    } else {
        ((0..n).collect(), vec![])
    };
    HeredPlan { acc, pool, forced, ub: n, kind: HeredKind::ZeroFree }
}

fn mu_plan(g: &Group, lambda: Lambda, pairs: Vec<(usize, usize)>, top: u64) -> HeredPlan {
    let n = g.order();
    HeredPlan {
        acc: Accumulator::layered(g, lambda, top),
        pool: (0..n).collect(),
        forced: vec![],
        ub: n,
        kind: HeredKind::Disjoint(pairs),
    }
}

fn mu_pairs(query: &QuantityQuery) -> Result<(Vec<(usize, usize)>, u64)> {
    match (query.pair, query.spec.terms) {
        (Some((k, l)), _) => {
            if k <= l {
                return Err(Error::InvalidParameter(format!("sum-free pair needs k > l, got ({k},{l})")));
            }
            Ok((vec![(k as usize, l as usize)], k))
        }
        (None, Terms::UpTo(s)) => {
            let mut v = Vec::new();
            for k in 1..=s as usize {
                for l in 0..k {
                    v.push((k, l));
                }
            }
            Ok((v, s))
        }
        _ => Err(Error::InvalidParameter("sum-free query needs a pair (k,l) or terms upto:s".into())),
    }
}

fn hered_plan(g: &Group, query: &QuantityQuery) -> Result<HeredPlan> {
    match query.family {
        Family::Sigma => sidon_plan(g, query.spec),
        Family::Tau => Ok(tau_plan(g, query.spec)),
        Family::Mu => {
            let (pairs, top) = mu_pairs(query)?;
            Ok(mu_plan(g, query.spec.lambda, pairs, top))
        }
        f => Err(Error::InvalidParameter(format!("{f} is not a hereditary family"))),
    }
}

fn hered_impl<B: Bits>(g: &Group, plan: &HeredPlan, cfg: &SearchConfig) -> Result<SearchResult> {
    let budget = Budget::new(cfg.budget);
    let ok = |st: &State<B>| plan.ok(st);
    let value = hereditary_max::<B, _>(&plan.acc, &plan.pool, &plan.forced, &ok, plan.ub, &budget)?;
    let Some(size) = value else {
        return Ok(finish(&budget, Some(0), None));
    };
    let _ = g;
    let cut = |st: &State<B>| !plan.ok(st);
    let leaf = |st: &State<B>, _: &[usize]| plan.ok(st);
    let w = first_match::<B, _, _>(&plan.acc, &plan.pool, &plan.forced, size - plan.forced.len(), &budget, &cut, &leaf)?;
    debug_assert!(w.is_some(), "hereditary witness must exist");
    Ok(finish(&budget, Some(size as u64), w))
}

/// Colex-first m-set satisfying a hereditary family's predicate.
fn hered_first<B: Bits>(plan: &HeredPlan, m: usize, cfg: &SearchConfig) -> Result<Option<Vec<usize>>> {
    if m < plan.forced.len() || m > plan.pool.len() + plan.forced.len() {
        return Ok(None);
    }
    let budget = Budget::new(cfg.budget);
    let mut base = plan.acc.init::<B>();
    if !plan.ok(&base) {
        return Ok(None);
    }
    for &f in &plan.forced {
        plan.acc.push(&mut base, f);
    }
    if !plan.ok(&base) {
        return Ok(None);
    }
    let cut = |st: &State<B>| !plan.ok(st);
    let leaf = |st: &State<B>, _: &[usize]| plan.ok(st);
    first_match::<B, _, _>(&plan.acc, &plan.pool, &plan.forced, m - plan.forced.len(), &budget, &cut, &leaf)
}

/// `sigma_Lambda(G, H)`: the largest m with `|H_Lambda A| = |Lambda^m(H)|`.
pub fn max_sidon_size(g: &Group, spec: SumsetSpec, cfg: &SearchConfig) -> Result<SearchResult> {
    let plan = sidon_plan(g, spec)?;
    dispatch!(g, hered_impl(g, &plan, cfg))
}

/// Colex-first Sidon-type m-set (with `0` when the search fixes it).
pub fn sidon_set(g: &Group, m: u64, spec: SumsetSpec, cfg: &SearchConfig) -> Result<Option<Vec<usize>>> {
    let plan = sidon_plan(g, spec)?;
    dispatch!(g, hered_first(&plan, m as usize, cfg))
}

/// `tau_Lambda(G, H)`: the largest m with `0` outside `H_Lambda A`.
pub fn max_zero_sum_free(g: &Group, spec: SumsetSpec, cfg: &SearchConfig) -> Result<SearchResult> {
    let plan = tau_plan(g, spec);
    dispatch!(g, hered_impl(g, &plan, cfg))
}

/// `mu(G, {k,l})`, or its restricted form when `weak` is set.
pub fn max_sum_free(g: &Group, k: u64, l: u64, weak: bool, cfg: &SearchConfig) -> Result<SearchResult> {
    let lambda = if weak { Lambda::Restricted } else { Lambda::N0 };
    let q = QuantityQuery::new(Family::Mu, SumsetSpec::exact(lambda, k)).with_pair(k, l);
    evaluate(g, &q, cfg)
}

/// `mu(G, [0,s])`, or its restricted form when `weak` is set.
pub fn max_sum_free_upto(g: &Group, s: u64, weak: bool, cfg: &SearchConfig) -> Result<SearchResult> {
    let lambda = if weak { Lambda::Restricted } else { Lambda::N0 };
    let q = QuantityQuery::new(Family::Mu, SumsetSpec::new(lambda, Terms::UpTo(s)));
    evaluate(g, &q, cfg)
}

// ---------------------------------------------------------------------------
// front door

fn need_m(q: &QuantityQuery) -> Result<u64> {
    q.m.ok_or_else(|| Error::InvalidParameter(format!("{} needs a subset size m", q.family)))
}

/// Evaluates any quantity query by exhaustive search.
pub fn evaluate(g: &Group, q: &QuantityQuery, cfg: &SearchConfig) -> Result<SearchResult> {
    match q.family {
        Family::Nu => max_sumset_size(g, need_m(q)?, q.spec, cfg),
        Family::Rho => min_sumset_size(g, need_m(q)?, q.spec, cfg),
        Family::Phi => min_spanning_size(g, q.spec, cfg),
        Family::Chi => critical_number(g, q.spec, q.generating, q.exclude_zero, cfg),
        Family::Sigma | Family::Tau | Family::Mu => {
            let plan = hered_plan(g, q)?;
            dispatch!(g, hered_impl(g, &plan, cfg))
        }
    }
}

fn collect_impl<B: Bits>(g: &Group, q: &QuantityQuery, value: u64, cfg: &SearchConfig) -> Result<Vec<Vec<usize>>> {
    let n = g.order();
    let pool: Vec<usize> = (0..n).collect();
    let budget = Budget::new(cfg.budget);
    let closure = Accumulator::new(g, SumsetSpec::new(Lambda::N0, Terms::AllN0));
    let run = |acc: &Accumulator, r: usize, pool: &[usize], cut: &(dyn Fn(&State<B>) -> bool + Sync), leaf: &(dyn Fn(&State<B>, &[usize]) -> bool + Sync)| {
        pre_estimate(pool.len(), r, cfg)?;
        let vs = run_blocks::<B, _, _>(acc, pool, &[], r, &budget, |_| CollectAll { cut, leaf, found: Vec::new() });
        budget.check()?;
        Ok::<_, Error>(vs.into_iter().flat_map(|v| v.found).collect::<Vec<_>>())
    };
    match q.family {
        Family::Nu | Family::Rho => {
            let acc = Accumulator::new(g, q.spec);
            let m = need_m(q)? as usize;
            run(&acc, m, &pool, &|_| false, &|st, _| acc.result_count(st) as u64 == value)
        }
        Family::Phi => {
            let acc = Accumulator::new(g, q.spec);
            run(&acc, value as usize, &pool, &|_| false, &|st, _| acc.spans(st))
        }
        Family::Chi => {
            let acc = Accumulator::new(g, q.spec);
            let pool: Vec<usize> = if q.exclude_zero { nonzero(g) } else { pool };
            let gen = q.generating;
            run(&acc, value as usize - 1, &pool, &|st| acc.spans(st), &|st, ch| {
                !acc.spans(st) && (!gen || closure.eval::<B>(ch).count() == n)
            })
        }
        Family::Sigma | Family::Tau | Family::Mu => {
            let plan = hered_plan(g, q)?;
            if matches!(plan.kind, HeredKind::Impossible) {
                return Ok(Vec::new());
            }
            let acc = plan.acc.clone();
            run(&acc, value as usize, &pool, &|st| !plan.ok(st), &|st, _| plan.ok(st))
        }
    }
}

/// Every set attaining the extremum, in colex order, without the pool
/// reductions used for the value. For `Chi` these are the qualifying sets of
/// size one less than the critical number that fail to span.
pub fn enumerate_extremal(g: &Group, q: &QuantityQuery, cfg: &SearchConfig) -> Result<Vec<Subset>> {
    let res = evaluate(g, q, cfg)?;
    let Some(value) = res.value else {
        return Ok(Vec::new());
    };
    if q.family == Family::Chi && value <= 1 {
        return Ok(Vec::new());
    }
    let sets = dispatch!(g, collect_impl(g, q, value, cfg))?;
    Ok(sets.into_iter().map(|w| Subset::from_indices(g, w)).collect())
}
