//! Permutations under reversal, and `±1` words under cyclic rotation.

use crate::engine::{Statistic, System};
use crate::error::Result;
use crate::gallery::guard_count;
use crate::poset::binomial;
use crate::rational::{ratio, Rational};
use crate::words::{words_with_counts, Direction, Sign, SignWord};

pub type Permutation = Vec<usize>;

/// Number of pairs `i < j` with `s_i > s_j`.
pub fn inversions<T: Ord>(s: &[T]) -> i64 {
    let mut n = 0;
    for (i, x) in s.iter().enumerate() {
        n += s[i + 1..].iter().filter(|y| x > *y).count() as i64;
    }
    n
}

/// Permutations of `1..=n` in lexicographic order.
pub fn permutations(n: usize, guard: u64) -> Result<Vec<Permutation>> {
    let count = (1..=n as u128).try_fold(1u128, |acc, k| acc.checked_mul(k)).unwrap_or(u128::MAX);
    guard_count(format!("permutations of {n}"), count, guard)?;
    let mut current: Permutation = (1..=n).collect();
    let mut out = vec![current.clone()];
    // next lexicographic permutation
    loop {
        let Some(i) = (1..current.len()).rev().find(|&i| current[i - 1] < current[i]) else {
            break;
        };
        let j = (i..current.len()).rev().find(|&j| current[j] > current[i - 1]).unwrap();
        current.swap(i - 1, j);
        current[i..].reverse();
        out.push(current.clone());
    }
    Ok(out)
}

/// Permutations of `[n]` under reversal with the inversion count; the
/// constant is `n(n-1)/4`.
pub fn reversal_inversions_space(n: usize, guard: u64) -> Result<(System<Permutation>, Statistic<Permutation>)> {
    let space = permutations(n, guard)?;
    let system = System::new("reversal", space, |p: &Permutation| p.iter().rev().copied().collect());
    Ok((system, Statistic::counting("inversions", |p: &Permutation| inversions(p))))
}

pub fn reversal_constant(n: usize) -> Rational {
    ratio((n * n.saturating_sub(1)) as i64, 4)
}

fn rotation_space(minus: usize, plus: usize, guard: u64) -> Result<System<SignWord>> {
    guard_count(format!("words with {minus} minus and {plus} plus letters"), binomial(minus + plus, minus), guard)?;
    Ok(System::new("left-shift", words_with_counts(minus, plus), |w: &SignWord| {
        w.shift(Direction::Left).expect("words in a rotation space are nonempty")
    }))
}

/// 1 when every nonempty prefix sum is positive.
pub fn ballot_indicator(w: &SignWord) -> i64 {
    let mut total = 0;
    for s in w.letters() {
        total += s.value();
        if total <= 0 {
            return 0;
        }
    }
    1
}

/// Words with `a` letters `-1` and `b` letters `+1` under the left shift,
/// with the "B always ahead" indicator. For `b > a` the constant is
/// `(b-a)/(b+a)`.
pub fn ballot_space(a: usize, b: usize, guard: u64) -> Result<(System<SignWord>, Statistic<SignWord>)> {
    let system = rotation_space(a, b, guard)?;
    Ok((system, Statistic::counting("ballot", ballot_indicator)))
}

pub fn ballot_constant(a: usize, b: usize) -> Rational {
    ratio(b as i64 - a as i64, (a + b) as i64)
}

/// Same words and map with the multiset inversion count `#{i<j : s_i > s_j}`.
/// The constant is `ab/2`.
pub fn cyclic_inversions_space(a: usize, b: usize, guard: u64) -> Result<(System<SignWord>, Statistic<SignWord>)> {
    let system = rotation_space(a, b, guard)?;
    Ok((system, Statistic::counting("inversions", |w: &SignWord| inversions(w.letters()))))
}

pub fn cyclic_inversions_constant(a: usize, b: usize) -> Rational {
    ratio((a * b) as i64, 2)
}

/// Sum of the positions (1-based) holding `-1`, minus `a(a+1)/2`; equals
/// the inversion count.
pub fn minus_position_statistic(w: &SignWord) -> i64 {
    let a = w.count(Sign::Minus) as i64;
    let positions: i64 = w
        .letters()
        .iter()
        .enumerate()
        .filter(|(_, s)| **s == Sign::Minus)
        .map(|(i, _)| i as i64 + 1)
        .sum();
    positions - a * (a + 1) / 2
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poset::DEFAULT_ENUMERATION_GUARD as G;
    use crate::rational::int;

    #[test]
    fn reversal_examples() {
        let (sys, f) = reversal_inversions_space(2, G).unwrap();
        let report = sys.check(&f).unwrap();
        assert_eq!(report.orbits.len(), 1);
        assert!(report.is_c_mesic(&ratio(1, 2)));
        for n in 1..=6 {
            let (sys, f) = reversal_inversions_space(n, G).unwrap();
            assert!(sys.check(&f).unwrap().is_c_mesic(&reversal_constant(n)), "n={n}");
        }
        assert_eq!(reversal_constant(3), ratio(3, 2));
        let (sys, f) = reversal_inversions_space(1, G).unwrap();
        let report = sys.check(&f).unwrap();
        assert_eq!(report.orbits[0].period, 1);
        assert!(report.is_c_mesic(&int(0)));
        assert!(reversal_inversions_space(10, 1000).unwrap_err().is_guard());
    }

    #[test]
    fn permutations_are_lexicographic() {
        let p = permutations(3, G).unwrap();
        assert_eq!(p, vec![vec![1, 2, 3], vec![1, 3, 2], vec![2, 1, 3], vec![2, 3, 1], vec![3, 1, 2], vec![3, 2, 1]]);
        assert_eq!(permutations(0, G).unwrap(), vec![Vec::<usize>::new()]);
    }

    #[test]
    fn ballot_examples() {
        // a=1, b=2: words -++, +-+, ++-; only ++- never ties
        let (sys, f) = ballot_space(1, 2, G).unwrap();
        assert_eq!(sys.space.len(), 3);
        let values: i64 = sys.space.iter().map(ballot_indicator).sum();
        assert_eq!(values, 1);
        assert!(sys.check(&f).unwrap().is_c_mesic(&ratio(1, 3)));
        let (sys, f) = ballot_space(0, 1, G).unwrap();
        assert!(sys.check(&f).unwrap().is_c_mesic(&int(1)));
        let (sys, f) = ballot_space(2, 3, G).unwrap();
        assert!(sys.check(&f).unwrap().is_c_mesic(&ratio(1, 5)));
    }

    #[test]
    fn cyclic_inversion_examples() {
        let (sys, f) = cyclic_inversions_space(2, 2, G).unwrap();
        let report = sys.check(&f).unwrap();
        assert_eq!(report.orbits.len(), 2);
        assert!(report.is_c_mesic(&int(2)));
        for (a, b) in [(0, 3), (4, 0)] {
            let (sys, f) = cyclic_inversions_space(a, b, G).unwrap();
            assert!(sys.check(&f).unwrap().is_c_mesic(&int(0)));
        }
        let (sys, f) = cyclic_inversions_space(3, 2, G).unwrap();
        assert!(sys.check(&f).unwrap().is_c_mesic(&int(3)));
    }

    #[test]
    fn position_sum_equals_inversions() {
        for minus in 0..=5 {
            for plus in 0..=5 {
                for w in words_with_counts(minus, plus) {
                    assert_eq!(minus_position_statistic(&w), inversions(w.letters()));
                }
            }
        }
    }
}
