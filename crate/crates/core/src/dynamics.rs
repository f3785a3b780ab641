//! Toggles, rowmotion and promotion on `[a]×[b]`, and the word encodings
//! that turn them into rotations and block-gap reversal.

use crate::error::{Error, Result};
use crate::poset::{Antichain, ElementSet, GridPoset, OrderIdeal};
use crate::words::{Sign, SignWord, StanleyThomasWord};

/// `h_I(k)` for `k = -a, …, b`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HeightFunction {
    a: usize,
    values: Vec<i64>,
}

impl HeightFunction {
    pub fn at(&self, k: i64) -> i64 {
        self.values[(k + self.a as i64) as usize]
    }

    pub fn values(&self) -> &[i64] {
        &self.values
    }

    pub fn sum(&self) -> i64 {
        self.values.iter().sum()
    }
}

impl GridPoset {
    fn file_count(&self, ideal: &OrderIdeal, d: i64) -> usize {
        self.file_elements(d).iter().filter(|&&x| ideal.contains(x)).count()
    }

    /// Promotion: toggle each file from `1-a` up to `b-1`, bottom to top
    /// within a file.
    pub fn promotion_ideal(&self, ideal: &OrderIdeal) -> OrderIdeal {
        let mut acc = *ideal;
        for d in self.files() {
            for x in self.file_elements(d) {
                acc = self.toggle_unchecked(&acc, x);
            }
        }
        acc
    }

    /// Promotion transported to antichains through the maximal-element
    /// bijection.
    pub fn promotion_antichain(&self, antichain: &Antichain) -> Antichain {
        self.maximal_elements(&self.promotion_ideal(&self.down_closure(&antichain.0)))
    }

    pub fn height_function(&self, ideal: &OrderIdeal) -> HeightFunction {
        let (a, b) = (self.a() as i64, self.b() as i64);
        let values = (-a..=b)
            .map(|k| k.abs() + 2 * self.file_count(ideal, k) as i64)
            .collect();
        HeightFunction { a: self.a(), values }
    }

    /// Letter `i` is `h_I(i-a) - h_I(i-a-1)`.
    pub fn sign_word(&self, ideal: &OrderIdeal) -> SignWord {
        let h = self.height_function(ideal);
        SignWord(
            h.values
                .windows(2)
                .map(|w| if w[1] > w[0] { Sign::Plus } else { Sign::Minus })
                .collect(),
        )
    }

    pub fn ideal_from_sign_word(&self, word: &SignWord) -> Result<OrderIdeal> {
        let (a, b) = (self.a(), self.b());
        if word.len() != a + b || word.count(Sign::Minus) != a {
            return Err(Error::MalformedWord(format!(
                "{word} needs length {} with {a} minus letters for [{a}]×[{b}]",
                a + b
            )));
        }
        let mut members = ElementSet::empty();
        let mut h = a as i64;
        for (i, s) in word.letters().iter().enumerate() {
            h += s.value();
            let k = i as i64 + 1 - a as i64;
            let count = ((h - k.abs()) / 2) as usize;
            for &x in self.file_elements(k).iter().take(count) {
                members.insert(x);
            }
        }
        Ok(OrderIdeal(members))
    }

    pub fn stanley_thomas_word(&self, antichain: &Antichain) -> StanleyThomasWord {
        let (a, b) = (self.a(), self.b());
        let s = &antichain.0;
        let positive = (1..=a).map(|k| !self.positive_fiber(k).is_disjoint(s));
        let negative = (1..=b).map(|l| self.negative_fiber(l).is_disjoint(s));
        StanleyThomasWord(
            positive
                .chain(negative)
                .map(|plus| if plus { Sign::Plus } else { Sign::Minus })
                .collect(),
        )
    }

    /// Inverse of [`GridPoset::stanley_thomas_word`]: pairs the `+1`
    /// positions among the first `a` letters, ascending, with the `-1`
    /// positions among the last `b`, descending.
    pub fn antichain_from_st_word(&self, word: &StanleyThomasWord) -> Result<Antichain> {
        let (a, b) = (self.a(), self.b());
        if word.len() != a + b || word.count(Sign::Minus) != a {
            return Err(Error::MalformedWord(format!(
                "{word} needs length {} with {a} minus letters for [{a}]×[{b}]",
                a + b
            )));
        }
        let letters = word.letters();
        let rows: Vec<usize> = (1..=a).filter(|&i| letters[i - 1] == Sign::Plus).collect();
        let cols: Vec<usize> = (1..=b).filter(|&j| letters[a + j - 1] == Sign::Minus).collect();
        debug_assert_eq!(rows.len(), cols.len());
        let members = rows
            .iter()
            .zip(cols.iter().rev())
            .map(|(&k, &l)| self.index(k, l))
            .collect::<Result<ElementSet>>()?;
        Ok(Antichain(members))
    }
}

/// Reverses each maximal block (`-1,+1`) and gap (`+…+-…-`) of a word in
/// place.
pub fn block_gap_reversal(word: &SignWord) -> SignWord {
    let w = word.letters();
    let n = w.len();
    let is_block_at = |j: usize| j + 1 < n && w[j] == Sign::Minus && w[j + 1] == Sign::Plus;
    let mut out = Vec::with_capacity(n);
    let mut i = 0;
    while i < n {
        let end = if is_block_at(i) {
            i + 2
        } else {
            let mut j = i;
            while j < n && w[j] == Sign::Plus {
                j += 1;
            }
            while j < n && w[j] == Sign::Minus && !is_block_at(j) {
                j += 1;
            }
            j
        };
        out.extend(w[i..end].iter().rev());
        i = end;
    }
    SignWord(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poset::DEFAULT_ENUMERATION_GUARD as G;
    use crate::words::Direction;

    fn w(s: &str) -> SignWord {
        s.parse().unwrap()
    }

    fn grid(a: usize, b: usize) -> GridPoset {
        GridPoset::new(a, b).unwrap()
    }

    /// Run-exchange construction: pad with `+…-`, swap the i-th run of `+`
    /// with the i-th run of `-`, strip the padding.
    fn block_gap_oracle(word: &SignWord) -> SignWord {
        let mut padded = vec![Sign::Plus];
        padded.extend_from_slice(word.letters());
        padded.push(Sign::Minus);
        let mut runs: Vec<(Sign, usize)> = Vec::new();
        for s in padded {
            match runs.last_mut() {
                Some((t, len)) if *t == s => *len += 1,
                _ => runs.push((s, 1)),
            }
        }
        // runs alternate +,-,+,-,… starting with + and ending with -
        assert_eq!(runs.len() % 2, 0);
        let mut swapped = Vec::new();
        for pair in runs.chunks(2) {
            let (plus, minus) = (pair[0].1, pair[1].1);
            swapped.extend(std::iter::repeat_n(Sign::Minus, minus));
            swapped.extend(std::iter::repeat_n(Sign::Plus, plus));
        }
        assert_eq!(swapped.first(), Some(&Sign::Minus));
        assert_eq!(swapped.last(), Some(&Sign::Plus));
        SignWord(swapped[1..swapped.len() - 1].to_vec())
    }

    #[test]
    fn toggle_examples() {
        let p = grid(3, 2);
        let bottom = p.index(1, 1).unwrap();
        let empty = p.empty_ideal();
        let one = p.toggle(&empty, bottom).unwrap();
        assert_eq!(one.0, ElementSet::singleton(bottom));
        assert_eq!(p.toggle(&one, bottom).unwrap(), empty);
        assert_eq!(p.toggle(&empty, p.index(1, 2).unwrap()).unwrap(), empty);
        assert!(matches!(p.toggle(&empty, 6), Err(Error::UnknownElement(_))));
    }

    #[test]
    fn toggles_are_involutions() {
        for a in 1..=4 {
            for b in 1..=4 {
                let p = grid(a, b);
                for i in p.enumerate_order_ideals(G).unwrap() {
                    for x in 0..p.size() {
                        let t = p.toggle(&i, x).unwrap();
                        assert!(p.is_ideal(&t.0));
                        assert_eq!(p.toggle(&t, x).unwrap(), i);
                    }
                }
            }
        }
    }

    #[test]
    fn non_covering_toggles_commute() {
        let p = grid(3, 3);
        let ideals = p.enumerate_order_ideals(G).unwrap();
        for x in 0..9 {
            for y in 0..9 {
                let adjacent = p.covers(x, y) || p.covers(y, x);
                let mut all_commute = true;
                for i in &ideals {
                    let xy = p.toggle(&p.toggle(i, y).unwrap(), x).unwrap();
                    let yx = p.toggle(&p.toggle(i, x).unwrap(), y).unwrap();
                    all_commute &= xy == yx;
                }
                if !adjacent {
                    assert!(all_commute, "σ{x} and σ{y} should commute");
                } else {
                    assert!(!all_commute, "covering toggles σ{x}, σ{y} do not commute");
                }
            }
        }
    }

    #[test]
    fn rowmotion_array_on_4x2() {
        let p = grid(4, 2);
        let start = p.down_closure(&p.set_from_pairs(&[(2, 1)]).unwrap());
        let expected = ["--+--+", "-+--+-", "+--+--", "-++---", "+----+", "---++-"];
        let mut i = start;
        for row in expected {
            assert_eq!(p.sign_word(&i).to_string(), row);
            i = p.rowmotion_ideal(&i);
        }
        assert_eq!(i, start);
        assert_eq!(p.rowmotion_ideal(&p.full_ideal()), p.empty_ideal());
    }

    #[test]
    fn rowmotion_antichain_examples() {
        let p = grid(7, 5);
        let a = Antichain(p.set_from_pairs(&[(1, 5), (5, 3), (6, 2)]).unwrap());
        assert_eq!(p.pairs(&p.rowmotion_antichain(&a).0), vec![(2, 4), (6, 3), (7, 1)]);
        assert_eq!(p.pairs(&p.rowmotion_antichain(&Antichain::default()).0), vec![(1, 1)]);
        let p = grid(2, 2);
        let top = Antichain(p.set_from_pairs(&[(2, 2)]).unwrap());
        assert!(p.rowmotion_antichain(&top).is_empty());
    }

    #[test]
    fn promotion_examples() {
        let p = grid(3, 2);
        assert_eq!(p.sign_word(&p.empty_ideal()).to_string(), "---++");
        assert_eq!(p.sign_word(&p.promotion_ideal(&p.empty_ideal())).to_string(), "--++-");
        for i in p.enumerate_order_ideals(G).unwrap() {
            let mut j = i;
            for _ in 0..5 {
                j = p.promotion_ideal(&j);
            }
            assert_eq!(j, i);
        }
        let p = grid(2, 3);
        assert_eq!(p.sign_word(&p.full_ideal()).to_string(), "+++--");
        assert_eq!(p.sign_word(&p.promotion_ideal(&p.full_ideal())).to_string(), "++--+");
    }

    #[test]
    fn sign_word_examples() {
        let p = grid(3, 2);
        assert_eq!(p.sign_word(&p.empty_ideal()).to_string(), "---++");
        assert_eq!(p.sign_word(&p.full_ideal()).to_string(), "++---");
        let p = grid(4, 2);
        let i = p.down_closure(&p.set_from_pairs(&[(2, 1)]).unwrap());
        assert_eq!(p.sign_word(&i).to_string(), "--+--+");
        assert!(p.ideal_from_sign_word(&w("--+-+")).is_err());
        assert!(p.ideal_from_sign_word(&w("--+--++")).is_err());
    }

    #[test]
    fn height_function_examples() {
        let p = grid(3, 2);
        let h = p.height_function(&p.empty_ideal());
        assert_eq!(h.values(), &[3, 2, 1, 0, 1, 2]);
        assert_eq!(h.sum(), 9);
        assert_eq!(h.at(-3), 3);
        assert_eq!(h.at(2), 2);
        assert_eq!(p.height_function(&p.full_ideal()).sum(), 21);
    }

    #[test]
    fn full_ideal_height_sum_from_file_counts() {
        // The size-6 ideal of [3]×[2] is the full poset; recompute its height
        // sum straight from file counts: files -2..1 hold 1,2,2,1 elements.
        let p = grid(3, 2);
        let file_sizes = [0, 1, 2, 2, 1, 0];
        let by_hand: i64 = (-3i64..=2).zip(file_sizes).map(|(k, c)| k.abs() + 2 * c).sum();
        assert_eq!(by_hand, 21);
        assert_eq!(p.height_function(&p.full_ideal()).sum(), by_hand);
    }

    #[test]
    fn block_gap_examples() {
        assert_eq!(block_gap_reversal(&w("-++---++")).to_string(), "+---++-+");
        assert_eq!(block_gap_reversal(&w("----")), w("----"));
        assert_eq!(block_gap_reversal(&w("-+")), w("+-"));
        assert_eq!(block_gap_reversal(&w("")), w(""));
    }

    #[test]
    fn block_gap_matches_run_exchange_oracle() {
        for n in 0..=10 {
            for minus in 0..=n {
                for word in crate::words::words_with_counts(minus, n - minus) {
                    assert_eq!(block_gap_reversal(&word), block_gap_oracle(&word), "{word}");
                }
            }
        }
    }

    #[test]
    fn stanley_thomas_examples() {
        let p = grid(7, 5);
        let a = Antichain(p.set_from_pairs(&[(1, 5), (5, 3), (6, 2)]).unwrap());
        let word = p.stanley_thomas_word(&a);
        assert_eq!(word.to_string(), "+---++-+--+-");
        assert_eq!(p.antichain_from_st_word(&word).unwrap(), a);
        let next = p.stanley_thomas_word(&p.rowmotion_antichain(&a));
        assert_eq!(next.to_string(), "-+---++-+--+");
        assert_eq!(next, word.shift(Direction::Right).unwrap());

        for (a, b) in [(2, 3), (4, 1)] {
            let p = grid(a, b);
            let expected: String = "-".repeat(a) + &"+".repeat(b);
            assert_eq!(p.stanley_thomas_word(&Antichain::default()).to_string(), expected);
        }
        assert!(p.antichain_from_st_word(&"+-".parse().unwrap()).is_err());
    }

    #[test]
    fn word_equivariances_exhaustive() {
        for a in 1..=5 {
            for b in 1..=5 {
                let p = grid(a, b);
                let ext = p.linear_extension().to_vec();
                for i in p.enumerate_order_ideals(G).unwrap() {
                    let word = p.sign_word(&i);
                    assert_eq!(p.ideal_from_sign_word(&word).unwrap(), i);
                    assert_eq!(p.sign_word(&p.promotion_ideal(&i)), word.shift(Direction::Left).unwrap());
                    let row = p.rowmotion_ideal(&i);
                    assert_eq!(p.sign_word(&row), block_gap_reversal(&word));
                    assert_eq!(p.rowmotion_by_toggles(&i, &ext), row);
                    assert_eq!(p.rowmotion_by_ranks(&i), row);
                    assert_eq!(p.maximal_elements(&row), p.rowmotion_antichain(&p.maximal_elements(&i)));
                    let h = p.height_function(&i);
                    let (a, b) = (a as i64, b as i64);
                    assert_eq!(h.sum() - a * (a + 1) / 2 - b * (b + 1) / 2, 2 * i.len() as i64);
                }
                for anti in p.enumerate_antichains(G).unwrap() {
                    let word = p.stanley_thomas_word(&anti);
                    assert_eq!(p.antichain_from_st_word(&word).unwrap(), anti);
                    let next = p.stanley_thomas_word(&p.rowmotion_antichain(&anti));
                    assert_eq!(next, word.shift(Direction::Right).unwrap());
                }
            }
        }
    }

    #[test]
    fn rowmotion_independent_of_linear_extension() {
        // reverse-lexicographic-by-rank extension differs from the default one
        let p = grid(3, 3);
        let mut ext: Vec<usize> = (0..9).collect();
        ext.sort_by_key(|&x| (p.rank(x), std::cmp::Reverse(x)));
        assert!(p.is_linear_extension(&ext));
        assert_ne!(ext, p.linear_extension());
        for i in p.enumerate_order_ideals(G).unwrap() {
            assert_eq!(p.rowmotion_by_toggles(&i, &ext), p.rowmotion_ideal(&i));
        }
    }

    #[test]
    fn generic_poset_rowmotion_formulations_agree() {
        use crate::poset::Poset;
        // a non-graded poset: 0 < 1 < 2 and 0 < 3 < 2, plus 4 < 2
        let p = Poset::from_relations(5, &[(0, 1), (1, 2), (0, 3), (3, 2), (4, 2)]).unwrap();
        let ext = p.linear_extension().to_vec();
        for i in p.enumerate_order_ideals(G).unwrap() {
            let row = p.rowmotion_ideal(&i);
            assert_eq!(p.rowmotion_by_toggles(&i, &ext), row);
            assert_eq!(p.rowmotion_by_ranks(&i), row);
        }
    }
}
