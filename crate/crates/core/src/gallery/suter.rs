//! Suter's cyclic action on Young diagrams whose hull fits in a staircase.
//!
//! Diagrams are partitions written as weakly decreasing positive parts,
//! drawn in French convention: part 1 is the bottom row. `Y_n` holds the
//! diagrams with `λ_1 + (number of parts) ≤ n`.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::engine::{Statistic, System};
use crate::error::{Error, Result};
use crate::gallery::guard_count;
use crate::rational::{ratio, Rational};

#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Partition(pub Vec<usize>);

impl Partition {
    pub fn new(parts: Vec<usize>) -> Result<Self> {
        if parts.iter().any(|&p| p == 0) || parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::Parse(format!("{parts:?} is not a partition")));
        }
        Ok(Partition(parts))
    }

    pub fn parts(&self) -> &[usize] {
        &self.0
    }

    /// Length of the bottom row.
    pub fn first_part(&self) -> usize {
        self.0.first().copied().unwrap_or(0)
    }

    pub fn length(&self) -> usize {
        self.0.len()
    }

    pub fn size(&self) -> usize {
        self.0.iter().sum()
    }

    /// Boxes as 1-indexed (row, column) pairs, row 1 at the bottom.
    pub fn boxes(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.0.iter().enumerate().flat_map(|(r, &len)| (1..=len).map(move |c| (r + 1, c)))
    }

    pub fn in_yn(&self, n: usize) -> bool {
        self.first_part() + self.length() <= n
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|p| p.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

impl FromStr for Partition {
    type Err = Error;

    /// Accepts `(3,2,2)`, `[3,2,2]`, `3,2,2`, `()` or the empty string.
    fn from_str(s: &str) -> Result<Self> {
        let inner = s.trim().trim_start_matches(['(', '[']).trim_end_matches([')', ']']);
        let parts = inner
            .split([',', ' '])
            .filter(|t| !t.is_empty())
            .map(|t| t.parse::<usize>().map_err(|_| Error::Parse(format!("bad part {t:?} in {s:?}"))))
            .collect::<Result<Vec<_>>>()?;
        Partition::new(parts)
    }
}

fn require_yn(n: usize, lambda: &Partition) -> Result<()> {
    if lambda.in_yn(n) {
        Ok(())
    } else {
        Err(Error::NotInStaircase(lambda.to_string(), n))
    }
}

/// Drops the bottom row, raises every other part by one, and pads with
/// parts equal to 1 up to `n - 1 - λ_1` parts.
pub fn suter_rho(n: usize, lambda: &Partition) -> Result<Partition> {
    require_yn(n, lambda)?;
    let target = n - 1 - lambda.first_part();
    let mut parts: Vec<usize> = lambda.0.iter().skip(1).map(|p| p + 1).collect();
    parts.resize(target, 1);
    Ok(Partition(parts))
}

/// Weight of the box in row `r`, column `c`.
pub fn box_weight(n: usize, r: usize, c: usize) -> usize {
    n + 1 - r - c
}

pub fn suter_weight(n: usize, lambda: &Partition) -> Result<u64> {
    require_yn(n, lambda)?;
    Ok(lambda.boxes().map(|(r, c)| box_weight(n, r, c) as u64).sum())
}

/// `i·#(weight-i boxes) + j·#(weight-j boxes)`; when `i = j` the boxes count twice.
pub fn suter_weight_ij(n: usize, i: usize, j: usize, lambda: &Partition) -> Result<u64> {
    require_yn(n, lambda)?;
    if i + j != n {
        return Err(Error::InvalidState(format!("refined weight needs i + j = n, got {i} + {j} != {n}")));
    }
    let count = |w: usize| lambda.boxes().filter(|&(r, c)| box_weight(n, r, c) == w).count() as u64;
    Ok(i as u64 * count(i) + j as u64 * count(j))
}

/// All of `Y_n`, sorted. There are `2^(n-1)` of them for `n ≥ 1`.
pub fn enumerate_yn(n: usize, guard: u64) -> Result<Vec<Partition>> {
    let expected = if n == 0 { 1 } else { 1u128.checked_shl(n as u32 - 1).unwrap_or(u128::MAX) };
    guard_count(format!("Y_{n}"), expected, guard)?;
    let mut out = Vec::new();
    // first part p, then a partition with parts ≤ p and at most n - p - 1 more parts
    fn extend(prefix: &mut Vec<usize>, max_part: usize, slots: usize, out: &mut Vec<Partition>) {
        out.push(Partition(prefix.clone()));
        if slots == 0 {
            return;
        }
        for p in 1..=max_part {
            prefix.push(p);
            extend(prefix, p, slots - 1, out);
            prefix.pop();
        }
    }
    out.push(Partition::default());
    for first in 1..n {
        let mut prefix = vec![first];
        extend(&mut prefix, first, n - first - 1, &mut out);
    }
    out.sort();
    debug_assert_eq!(out.len() as u128, expected);
    Ok(out)
}

/// `(n³ - n) / 12`
pub fn suter_constant(n: usize) -> Rational {
    let n = n as i64;
    ratio(n * n * n - n, 12)
}

pub fn suter_system(n: usize, guard: u64) -> Result<System<Partition>> {
    let space = enumerate_yn(n, guard)?;
    Ok(System::new(format!("suter-{n}"), space, move |l: &Partition| {
        suter_rho(n, l).expect("Y_n is closed under rho")
    }))
}

pub fn weight_statistic(n: usize) -> Statistic<Partition> {
    Statistic::counting("weight", move |l: &Partition| suter_weight(n, l).expect("state in Y_n") as i64)
}

pub fn refined_weight_statistic(n: usize, i: usize, j: usize) -> Statistic<Partition> {
    Statistic::counting(format!("weight-{i}-{j}"), move |l: &Partition| {
        suter_weight_ij(n, i, j, l).expect("state in Y_n with i + j = n") as i64
    })
}
