//! Membership bitsets over canonical element indices.
//!
//! `u64` covers groups of order at most 64; `DynBits` covers the rest.

use std::fmt::Debug;
use std::hash::Hash;

pub trait Bits: Clone + Debug + PartialEq + Eq + Hash + Send + Sync {
    fn empty(n: usize) -> Self;
    fn clear(&mut self);
    fn insert(&mut self, i: usize);
    fn remove(&mut self, i: usize);
    fn contains(&self, i: usize) -> bool;
    fn or_assign(&mut self, o: &Self);
    fn and_assign(&mut self, o: &Self);
    fn intersects(&self, o: &Self) -> bool;
    fn count(&self) -> usize;
    fn is_empty(&self) -> bool;
    fn for_each(&self, f: impl FnMut(usize));
    /// `self |= src` rotated by `a` positions inside a ring of `n` bits.
    fn or_rotated(&mut self, src: &Self, a: usize, n: usize);

    fn copy_from(&mut self, src: &Self) {
        self.clone_from(src);
    }

    fn ones(&self) -> Vec<usize> {
        let mut v = Vec::with_capacity(self.count());
        self.for_each(|i| v.push(i));
        v
    }
}

#[inline]
fn low_mask(n: usize) -> u64 {
    if n >= 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

impl Bits for u64 {
    #[inline]
    fn empty(n: usize) -> Self {
        debug_assert!(n <= 64);
        0
    }
    #[inline]
    fn clear(&mut self) {
        *self = 0;
    }
    #[inline]
    fn insert(&mut self, i: usize) {
        *self |= 1 << i;
    }
    #[inline]
    fn remove(&mut self, i: usize) {
        *self &= !(1 << i);
    }
    #[inline]
    fn contains(&self, i: usize) -> bool {
        (*self >> i) & 1 == 1
    }
    #[inline]
    fn or_assign(&mut self, o: &Self) {
        *self |= *o;
    }
    #[inline]
    fn and_assign(&mut self, o: &Self) {
        *self &= *o;
    }
    #[inline]
    fn intersects(&self, o: &Self) -> bool {
        *self & *o != 0
    }
    #[inline]
    fn count(&self) -> usize {
        self.count_ones() as usize
    }
    #[inline]
    fn is_empty(&self) -> bool {
        *self == 0
    }
    #[inline]
    fn for_each(&self, mut f: impl FnMut(usize)) {
        let mut w = *self;
        while w != 0 {
            f(w.trailing_zeros() as usize);
            w &= w - 1;
        }
    }
    #[inline]
    fn or_rotated(&mut self, src: &Self, a: usize, n: usize) {
        if a == 0 {
            *self |= *src;
        } else {
            *self |= ((*src << a) | (*src >> (n - a))) & low_mask(n);
        }
    }
    #[inline]
    fn copy_from(&mut self, src: &Self) {
        *self = *src;
    }
}

/// Heap-backed bitset for groups of any order.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DynBits {
    words: Vec<u64>,
}

impl DynBits {
    pub fn words(&self) -> &[u64] {
        &self.words
    }

    fn or_shl(&mut self, src: &Self, s: usize, n: usize) {
        let ws = s / 64;
        let bs = s % 64;
        let len = self.words.len();
        for i in ws..len {
            let mut v = src.words[i - ws] << bs;
            if bs > 0 && i > ws {
                v |= src.words[i - ws - 1] >> (64 - bs);
            }
            if i == len - 1 {
                v &= low_mask(n - 64 * (len - 1));
            }
            self.words[i] |= v;
        }
    }

    fn or_shr(&mut self, src: &Self, s: usize) {
        let ws = s / 64;
        let bs = s % 64;
        let len = self.words.len();
        for i in 0..len.saturating_sub(ws) {
            let mut v = src.words[i + ws] >> bs;
            if bs > 0 && i + ws + 1 < len {
                v |= src.words[i + ws + 1] << (64 - bs);
            }
            self.words[i] |= v;
        }
    }
}

impl Bits for DynBits {
    fn empty(n: usize) -> Self {
        DynBits { words: vec![0; n.div_ceil(64).max(1)] }
    }
    fn clear(&mut self) {
        self.words.iter_mut().for_each(|w| *w = 0);
    }
    #[inline]
    fn insert(&mut self, i: usize) {
        self.words[i / 64] |= 1 << (i % 64);
    }
    #[inline]
    fn remove(&mut self, i: usize) {
        self.words[i / 64] &= !(1 << (i % 64));
    }
    #[inline]
    fn contains(&self, i: usize) -> bool {
        (self.words[i / 64] >> (i % 64)) & 1 == 1
    }
    fn or_assign(&mut self, o: &Self) {
        self.words.iter_mut().zip(&o.words).for_each(|(a, b)| *a |= b);
    }
    fn and_assign(&mut self, o: &Self) {
        self.words.iter_mut().zip(&o.words).for_each(|(a, b)| *a &= b);
    }
    fn intersects(&self, o: &Self) -> bool {
        self.words.iter().zip(&o.words).any(|(a, b)| a & b != 0)
    }
    fn count(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }
    fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }
    fn for_each(&self, mut f: impl FnMut(usize)) {
        for (k, &w) in self.words.iter().enumerate() {
            let mut w = w;
            while w != 0 {
                f(64 * k + w.trailing_zeros() as usize);
                w &= w - 1;
            }
        }
    }
    fn or_rotated(&mut self, src: &Self, a: usize, n: usize) {
        if a == 0 {
            self.or_assign(src);
            return;
        }
        self.or_shl(src, a, n);
        self.or_shr(src, n - a);
    }
}
