//! Finite posets, their order ideals and antichains, and the `[a]×[b]` grid.
//!
//! Subsets of a poset are bitmasks over a fixed element ordering. For the
//! grid that ordering is lexicographic in `(k, ℓ)`, so element `(k, ℓ)` has
//! index `(k-1)·b + (ℓ-1)`. Every canonical order used elsewhere (enumeration
//! order, orbit representatives) is the numeric order of these bitmasks.

use std::cmp::Ordering;
use std::collections::BinaryHeap;
use std::cmp::Reverse;
use std::fmt;
use std::ops::Deref;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

const WORDS: usize = 4;

/// Largest poset the bitmask representation can hold.
pub const MAX_ELEMENTS: usize = 64 * WORDS;

/// Default bound on the number of states an enumeration may produce.
pub const DEFAULT_ENUMERATION_GUARD: u64 = 10_000_000;

/// A subset of poset elements, stored as a fixed-width bitmask.
///
/// Ordered as the unsigned integer whose bit `i` is element `i`.
#[derive(Clone, Copy, Default, PartialEq, Eq, Hash)]
pub struct ElementSet([u64; WORDS]);

impl ElementSet {
    pub const fn empty() -> Self {
        ElementSet([0; WORDS])
    }

    /// The set `{0, 1, …, n-1}`.
    pub fn full(n: usize) -> Self {
        debug_assert!(n <= MAX_ELEMENTS);
        let mut s = Self::empty();
        for (w, word) in s.0.iter_mut().enumerate() {
            let lo = w * 64;
            if n >= lo + 64 {
                *word = u64::MAX;
            } else if n > lo {
                *word = (1u64 << (n - lo)) - 1;
            }
        }
        s
    }

    pub fn singleton(i: usize) -> Self {
        let mut s = Self::empty();
        s.insert(i);
        s
    }

    pub fn contains(&self, i: usize) -> bool {
        self.0[i / 64] >> (i % 64) & 1 == 1
    }

    pub fn insert(&mut self, i: usize) {
        self.0[i / 64] |= 1 << (i % 64);
    }

    pub fn remove(&mut self, i: usize) {
        self.0[i / 64] &= !(1 << (i % 64));
    }

    pub fn flip(&mut self, i: usize) {
        self.0[i / 64] ^= 1 << (i % 64);
    }

    pub fn len(&self) -> usize {
        self.0.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.0.iter().all(|&w| w == 0)
    }

    pub fn union(&self, other: &Self) -> Self {
        ElementSet(std::array::from_fn(|w| self.0[w] | other.0[w]))
    }

    pub fn intersection(&self, other: &Self) -> Self {
        ElementSet(std::array::from_fn(|w| self.0[w] & other.0[w]))
    }

    pub fn difference(&self, other: &Self) -> Self {
        ElementSet(std::array::from_fn(|w| self.0[w] & !other.0[w]))
    }

    pub fn is_subset(&self, other: &Self) -> bool {
        (0..WORDS).all(|w| self.0[w] & !other.0[w] == 0)
    }

    pub fn is_disjoint(&self, other: &Self) -> bool {
        (0..WORDS).all(|w| self.0[w] & other.0[w] == 0)
    }

    /// Member indices in ascending order.
    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        (0..WORDS).flat_map(move |w| {
            let mut word = self.0[w];
            std::iter::from_fn(move || {
                if word == 0 {
                    return None;
                }
                let bit = word.trailing_zeros() as usize;
                word &= word - 1;
                Some(w * 64 + bit)
            })
        })
    }
}

impl FromIterator<usize> for ElementSet {
    fn from_iter<T: IntoIterator<Item = usize>>(iter: T) -> Self {
        let mut s = Self::empty();
        for i in iter {
            s.insert(i);
        }
        s
    }
}

impl Ord for ElementSet {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0.iter().rev().cmp(other.0.iter().rev())
    }
}

impl PartialOrd for ElementSet {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for ElementSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

/// A down-closed subset of a poset.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct OrderIdeal(pub ElementSet);

/// A subset of pairwise incomparable elements.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Antichain(pub ElementSet);

impl OrderIdeal {
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, x: usize) -> bool {
        self.0.contains(x)
    }
}

impl Antichain {
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, x: usize) -> bool {
        self.0.contains(x)
    }
}

/// A finite poset on elements `0..size`.
#[derive(Clone, Debug)]
pub struct Poset {
    size: usize,
    lower_covers: Vec<ElementSet>,
    upper_covers: Vec<ElementSet>,
    below: Vec<ElementSet>,
    heights: Vec<usize>,
    linear_extension: Vec<usize>,
}

impl Poset {
    /// Builds a poset from relations `(x, y)` meaning `x < y`.
    ///
    /// The relations need not be covers; the transitive closure is taken and
    /// the covers are recomputed from it. Cycles are rejected.
    pub fn from_relations(size: usize, relations: &[(usize, usize)]) -> Result<Self> {
        if size > MAX_ELEMENTS {
            return Err(Error::TooManyElements(size));
        }
        let mut succ = vec![ElementSet::empty(); size];
        let mut indegree = vec![0usize; size];
        for &(x, y) in relations {
            if x >= size || y >= size {
                return Err(Error::InvalidCover(format!("({x}, {y}) out of range for {size} elements")));
            }
            if x == y {
                return Err(Error::InvalidCover(format!("self-relation on {x}")));
            }
            if !succ[x].contains(y) {
                succ[x].insert(y);
                indegree[y] += 1;
            }
        }

        // Lexicographically smallest linear extension (Kahn with a min-heap).
        let mut heap: BinaryHeap<Reverse<usize>> =
            (0..size).filter(|&x| indegree[x] == 0).map(Reverse).collect();
        let mut linear_extension = Vec::with_capacity(size);
        while let Some(Reverse(x)) = heap.pop() {
            linear_extension.push(x);
            for y in succ[x].iter() {
                indegree[y] -= 1;
                if indegree[y] == 0 {
                    heap.push(Reverse(y));
                }
            }
        }
        if linear_extension.len() != size {
            return Err(Error::InvalidCover("relations contain a cycle".into()));
        }

        let mut below = vec![ElementSet::empty(); size];
        for &y in &linear_extension {
            for x in 0..size {
                if succ[x].contains(y) {
                    let b = below[x].union(&ElementSet::singleton(x));
                    below[y] = below[y].union(&b);
                }
            }
        }
        let mut above = vec![ElementSet::empty(); size];
        for y in 0..size {
            for x in below[y].iter() {
                above[x].insert(y);
            }
        }
        // x ⋖ y iff x < y and nothing strictly between.
        let mut lower_covers = vec![ElementSet::empty(); size];
        let mut upper_covers = vec![ElementSet::empty(); size];
        for y in 0..size {
            for x in below[y].iter() {
                if above[x].intersection(&below[y]).is_empty() {
                    lower_covers[y].insert(x);
                    upper_covers[x].insert(y);
                }
            }
        }
        let mut heights = vec![0usize; size];
        for &y in &linear_extension {
            heights[y] = lower_covers[y].iter().map(|x| heights[x] + 1).max().unwrap_or(0);
        }

        Ok(Poset { size, lower_covers, upper_covers, below, heights, linear_extension })
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn contains_element(&self, x: usize) -> bool {
        x < self.size
    }

    pub fn less_than(&self, x: usize, y: usize) -> bool {
        self.below[y].contains(x)
    }

    pub fn comparable(&self, x: usize, y: usize) -> bool {
        x == y || self.less_than(x, y) || self.less_than(y, x)
    }

    pub fn covers(&self, y: usize, x: usize) -> bool {
        self.lower_covers[y].contains(x)
    }

    pub fn lower_covers(&self, x: usize) -> &ElementSet {
        &self.lower_covers[x]
    }

    pub fn upper_covers(&self, x: usize) -> &ElementSet {
        &self.upper_covers[x]
    }

    /// Cover relations as `(x, y)` with `x ⋖ y`, sorted.
    pub fn cover_relations(&self) -> Vec<(usize, usize)> {
        (0..self.size)
            .flat_map(|x| self.upper_covers[x].iter().map(move |y| (x, y)))
            .collect()
    }

    /// Length of the longest chain ending at `x`.
    pub fn height(&self, x: usize) -> usize {
        self.heights[x]
    }

    pub fn max_height(&self) -> usize {
        self.heights.iter().copied().max().unwrap_or(0)
    }

    pub fn linear_extension(&self) -> &[usize] {
        &self.linear_extension
    }

    pub fn full_set(&self) -> ElementSet {
        ElementSet::full(self.size)
    }

    pub fn is_ideal(&self, s: &ElementSet) -> bool {
        s.is_subset(&self.full_set()) && s.iter().all(|x| self.lower_covers[x].is_subset(s))
    }

    pub fn is_antichain(&self, s: &ElementSet) -> bool {
        s.is_subset(&self.full_set()) && s.iter().all(|x| self.below[x].is_disjoint(s))
    }

    pub fn ideal(&self, s: ElementSet) -> Result<OrderIdeal> {
        if self.is_ideal(&s) {
            Ok(OrderIdeal(s))
        } else {
            Err(Error::InvalidState(format!("{s:?} is not an order ideal")))
        }
    }

    pub fn antichain(&self, s: ElementSet) -> Result<Antichain> {
        if self.is_antichain(&s) {
            Ok(Antichain(s))
        } else {
            Err(Error::InvalidState(format!("{s:?} is not an antichain")))
        }
    }

    pub fn empty_ideal(&self) -> OrderIdeal {
        OrderIdeal(ElementSet::empty())
    }

    pub fn full_ideal(&self) -> OrderIdeal {
        OrderIdeal(self.full_set())
    }

    /// Smallest order ideal containing `s`.
    pub fn down_closure(&self, s: &ElementSet) -> OrderIdeal {
        OrderIdeal(s.iter().fold(*s, |acc, x| acc.union(&self.below[x])))
    }

    pub fn maximal_elements(&self, ideal: &OrderIdeal) -> Antichain {
        let s = &ideal.0;
        Antichain(s.iter().filter(|&x| self.upper_covers[x].is_disjoint(s)).collect())
    }

    pub fn minimal_elements_of_complement(&self, ideal: &OrderIdeal) -> Antichain {
        let s = &ideal.0;
        Antichain(
            (0..self.size)
                .filter(|&x| !s.contains(x) && self.lower_covers[x].is_subset(s))
                .collect(),
        )
    }

    /// All order ideals in ascending bitmask order.
    pub fn enumerate_order_ideals(&self, guard: u64) -> Result<Vec<OrderIdeal>> {
        let mut out = Vec::new();
        let mut current = ElementSet::empty();
        self.extend_ideals(0, &mut current, &mut out, guard)?;
        out.sort();
        Ok(out)
    }

    fn extend_ideals(
        &self,
        depth: usize,
        current: &mut ElementSet,
        out: &mut Vec<OrderIdeal>,
        guard: u64,
    ) -> Result<()> {
        if depth == self.size {
            if out.len() as u64 >= guard {
                return Err(Error::GuardExceeded { what: "order ideals".into(), limit: guard });
            }
            out.push(OrderIdeal(*current));
            return Ok(());
        }
        let x = self.linear_extension[depth];
        self.extend_ideals(depth + 1, current, out, guard)?;
        if self.lower_covers[x].is_subset(current) {
            current.insert(x);
            let r = self.extend_ideals(depth + 1, current, out, guard);
            current.remove(x);
            r?;
        }
        Ok(())
    }

    /// All antichains in ascending bitmask order.
    pub fn enumerate_antichains(&self, guard: u64) -> Result<Vec<Antichain>> {
        let mut out: Vec<Antichain> = self
            .enumerate_order_ideals(guard)?
            .iter()
            .map(|i| self.maximal_elements(i))
            .collect();
        out.sort();
        Ok(out)
    }

    /// Toggle at `x`: flip membership when the result is still an ideal.
    pub fn toggle(&self, ideal: &OrderIdeal, x: usize) -> Result<OrderIdeal> {
        if x >= self.size {
            return Err(Error::UnknownElement(x.to_string()));
        }
        Ok(self.toggle_unchecked(ideal, x))
    }

    pub(crate) fn toggle_unchecked(&self, ideal: &OrderIdeal, x: usize) -> OrderIdeal {
        let mut s = ideal.0;
        if s.contains(x) {
            if self.upper_covers[x].is_disjoint(&s) {
                s.remove(x);
            }
        } else if self.lower_covers[x].is_subset(&s) {
            s.insert(x);
        }
        OrderIdeal(s)
    }

    /// Rowmotion on ideals: the ideal generated by the minimal elements of
    /// the complement.
    pub fn rowmotion_ideal(&self, ideal: &OrderIdeal) -> OrderIdeal {
        self.down_closure(&self.minimal_elements_of_complement(ideal).0)
    }

    /// Rowmotion on antichains: minimal elements of the complement of the
    /// generated ideal.
    pub fn rowmotion_antichain(&self, antichain: &Antichain) -> Antichain {
        self.minimal_elements_of_complement(&self.down_closure(&antichain.0))
    }

    /// Rowmotion as `σ_{x_1} σ_{x_2} ⋯ σ_{x_n}` for the linear extension
    /// `x_1, …, x_n` (so `σ_{x_n}` acts first).
    pub fn rowmotion_by_toggles(&self, ideal: &OrderIdeal, extension: &[usize]) -> OrderIdeal {
        extension
            .iter()
            .rev()
            .fold(*ideal, |acc, &x| self.toggle_unchecked(&acc, x))
    }

    /// Rowmotion as toggling whole height levels from the top down.
    pub fn rowmotion_by_ranks(&self, ideal: &OrderIdeal) -> OrderIdeal {
        let mut acc = *ideal;
        for h in (0..=self.max_height()).rev() {
            for x in (0..self.size).filter(|&x| self.heights[x] == h) {
                acc = self.toggle_unchecked(&acc, x);
            }
        }
        acc
    }

    pub fn is_linear_extension(&self, order: &[usize]) -> bool {
        if order.len() != self.size {
            return false;
        }
        let mut seen = ElementSet::empty();
        for &x in order {
            if x >= self.size || seen.contains(x) || !self.below[x].is_subset(&seen) {
                return false;
            }
            seen.insert(x);
        }
        true
    }
}

/// The product of chains `[a]×[b]`.
#[derive(Clone, Debug)]
pub struct GridPoset {
    a: usize,
    b: usize,
    poset: Poset,
}

/// Grid shape as serialized: `{"a":…,"b":…}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GridShape {
    pub a: usize,
    pub b: usize,
}

impl GridPoset {
    pub fn new(a: usize, b: usize) -> Result<Self> {
        if a == 0 || b == 0 {
            return Err(Error::EmptyChain { a, b });
        }
        if a.saturating_mul(b) > MAX_ELEMENTS {
            return Err(Error::TooManyElements(a.saturating_mul(b)));
        }
        let mut relations = Vec::new();
        for k in 1..=a {
            for l in 1..=b {
                let x = (k - 1) * b + (l - 1);
                if k < a {
                    relations.push((x, x + b));
                }
                if l < b {
                    relations.push((x, x + 1));
                }
            }
        }
        let poset = Poset::from_relations(a * b, &relations)?;
        Ok(GridPoset { a, b, poset })
    }

    pub fn a(&self) -> usize {
        self.a
    }

    pub fn b(&self) -> usize {
        self.b
    }

    pub fn shape(&self) -> GridShape {
        GridShape { a: self.a, b: self.b }
    }

    pub fn poset(&self) -> &Poset {
        &self.poset
    }

    /// Index of `(k, ℓ)`, both 1-based.
    pub fn index(&self, k: usize, l: usize) -> Result<usize> {
        if (1..=self.a).contains(&k) && (1..=self.b).contains(&l) {
            Ok((k - 1) * self.b + (l - 1))
        } else {
            Err(Error::UnknownElement(format!("({k},{l}) in [{}]×[{}]", self.a, self.b)))
        }
    }

    /// `(k, ℓ)` for an element index.
    pub fn coords(&self, x: usize) -> (usize, usize) {
        (x / self.b + 1, x % self.b + 1)
    }

    pub fn rank(&self, x: usize) -> usize {
        let (k, l) = self.coords(x);
        k + l - 2
    }

    pub fn file(&self, x: usize) -> i64 {
        let (k, l) = self.coords(x);
        l as i64 - k as i64
    }

    /// Files run from `1-a` to `b-1`.
    pub fn files(&self) -> std::ops::RangeInclusive<i64> {
        (1 - self.a as i64)..=(self.b as i64 - 1)
    }

    /// Elements of file `d`, bottom to top.
    pub fn file_elements(&self, d: i64) -> Vec<usize> {
        (1..=self.a)
            .filter_map(|k| {
                let l = k as i64 + d;
                (1..=self.b as i64).contains(&l).then(|| (k - 1) * self.b + (l as usize - 1))
            })
            .collect()
    }

    /// The `k`th positive fiber `{(k, ℓ)}`.
    pub fn positive_fiber(&self, k: usize) -> ElementSet {
        (1..=self.b).map(|l| (k - 1) * self.b + (l - 1)).collect()
    }

    /// The `ℓ`th negative fiber `{(k, ℓ)}`.
    pub fn negative_fiber(&self, l: usize) -> ElementSet {
        (1..=self.a).map(|k| (k - 1) * self.b + (l - 1)).collect()
    }

    /// The element obtained by rotating the grid 180° about its center.
    pub fn opposite(&self, x: usize) -> usize {
        let (k, l) = self.coords(x);
        (self.a - k) * self.b + (self.b - l)
    }

    pub fn set_from_pairs(&self, pairs: &[(usize, usize)]) -> Result<ElementSet> {
        pairs.iter().map(|&(k, l)| self.index(k, l)).collect()
    }

    /// Sorted `(k, ℓ)` pairs of a subset.
    pub fn pairs(&self, s: &ElementSet) -> Vec<(usize, usize)> {
        s.iter().map(|x| self.coords(x)).collect()
    }

    /// `[[k,ℓ],…]` text form of a subset.
    pub fn format_set(&self, s: &ElementSet) -> String {
        let body: Vec<String> = self.pairs(s).iter().map(|(k, l)| format!("[{k},{l}]")).collect();
        format!("[{}]", body.join(","))
    }

    /// Number of ideals, `binomial(a+b, a)`, saturating.
    pub fn ideal_count(&self) -> u128 {
        binomial(self.a + self.b, self.a)
    }

    pub fn enumerate_order_ideals(&self, guard: u64) -> Result<Vec<OrderIdeal>> {
        self.check_guard(guard, "order ideals")?;
        self.poset.enumerate_order_ideals(guard)
    }

    pub fn enumerate_antichains(&self, guard: u64) -> Result<Vec<Antichain>> {
        self.check_guard(guard, "antichains")?;
        self.poset.enumerate_antichains(guard)
    }

    fn check_guard(&self, guard: u64, what: &str) -> Result<()> {
        if self.ideal_count() > guard as u128 {
            Err(Error::GuardExceeded { what: format!("{what} of [{}]×[{}]", self.a, self.b), limit: guard })
        } else {
            Ok(())
        }
    }
}

impl Deref for GridPoset {
    type Target = Poset;

    fn deref(&self) -> &Poset {
        &self.poset
    }
}

/// `binomial(n, k)`, saturating at `u128::MAX`.
pub fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        // acc * (n - i) / (i + 1) stays integral at every step
        acc = match acc.checked_mul((n - i) as u128) {
            Some(v) => v / (i as u128 + 1),
            None => return u128::MAX,
        };
    }
    acc
}
