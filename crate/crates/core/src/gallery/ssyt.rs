//! Promotion on semistandard tableaux of rectangular shape.
//!
//! Tableaux are stored row-major in English convention: row 1 on top, rows
//! weakly increasing left to right, columns strictly increasing downward,
//! entries in `1..=k` (the ceiling).

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::engine::{Statistic, System};
use crate::error::{Error, Result};
use crate::gallery::guard_count;
use crate::rational::{ratio, Rational};

/// 1-indexed (row, column).
pub type Cell = (usize, usize);

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct RectSSYT {
    rows: Vec<Vec<u32>>,
    k: u32,
}

impl RectSSYT {
    pub fn new(rows: Vec<Vec<u32>>, k: u32) -> Result<Self> {
        let bad = |why: String| Err(Error::InvalidTableau(why));
        let Some(width) = rows.first().map(Vec::len) else {
            return bad("no rows".into());
        };
        if width == 0 || rows.iter().any(|r| r.len() != width) {
            return bad("shape is not a nonempty rectangle".into());
        }
        for (r, row) in rows.iter().enumerate() {
            if let Some(&x) = row.iter().find(|&&x| x == 0 || x > k) {
                return bad(format!("entry {x} outside 1..={k}"));
            }
            if row.windows(2).any(|w| w[0] > w[1]) {
                return bad(format!("row {} decreases", r + 1));
            }
            if r > 0 && rows[r - 1].iter().zip(row).any(|(above, below)| above >= below) {
                return bad(format!("a column is not strictly increasing at row {}", r + 1));
            }
        }
        Ok(RectSSYT { rows, k })
    }

    pub fn rows(&self) -> &[Vec<u32>] {
        &self.rows
    }

    pub fn ceiling(&self) -> u32 {
        self.k
    }

    /// (number of rows, number of columns)
    pub fn shape(&self) -> (usize, usize) {
        (self.rows.len(), self.rows[0].len())
    }

    pub fn entry(&self, (r, c): Cell) -> Option<u32> {
        self.rows.get(r.checked_sub(1)?)?.get(c.checked_sub(1)?).copied()
    }

    /// Bender–Knuth involution swapping the free `i` and `i + 1` entries in
    /// each row.
    pub fn bk_involution(&self, i: u32) -> Result<Self> {
        if i == 0 || i >= self.k {
            return Err(Error::InvalidState(format!("Bender-Knuth index {i} outside 1..{}", self.k)));
        }
        let mut rows = self.rows.clone();
        for r in 0..rows.len() {
            let is_free = |c: usize| {
                let x = self.rows[r][c];
                if x == i {
                    self.rows.get(r + 1).map_or(true, |below| below[c] != i + 1)
                } else if x == i + 1 {
                    r == 0 || self.rows[r - 1][c] != i
                } else {
                    false
                }
            };
            let free: Vec<usize> = (0..rows[r].len()).filter(|&c| is_free(c)).collect();
            let lows = free.iter().filter(|&&c| self.rows[r][c] == i).count();
            let highs = free.len() - lows;
            for (offset, &c) in free.iter().enumerate() {
                rows[r][c] = if offset < highs { i } else { i + 1 };
            }
            debug_assert!(lows + highs == free.len());
        }
        Ok(RectSSYT { rows, k: self.k })
    }

    /// `BK_{k-1} ∘ … ∘ BK_2 ∘ BK_1`
    pub fn promotion(&self) -> Self {
        (1..self.k).fold(self.clone(), |t, i| t.bk_involution(i).expect("index in range"))
    }

    pub fn sigma(&self, cells: &[Cell]) -> Result<u64> {
        cells
            .iter()
            .map(|&cell| {
                self.entry(cell)
                    .map(u64::from)
                    .ok_or_else(|| Error::InvalidState(format!("cell {cell:?} outside the shape")))
            })
            .sum()
    }
}

impl fmt::Display for RectSSYT {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = self
            .rows
            .iter()
            .map(|r| r.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(","))
            .collect();
        write!(f, "({})", rows.join("/"))
    }
}

/// Number of SSYT of an `m × n` rectangle with entries at most `k`, by the
/// hook-content formula.
pub fn ssyt_count(m: usize, n: usize, k: u32) -> u128 {
    // ∏ (k + c - r) / hook over cells, with (r, c) 0-indexed
    let mut num: u128 = 1;
    let mut den: u128 = 1;
    for r in 0..m {
        for c in 0..n {
            let content = k as i64 + c as i64 - r as i64;
            if content <= 0 {
                return 0;
            }
            num = num.saturating_mul(content as u128);
            den = den.saturating_mul(((n - c) + (m - r) - 1) as u128);
            let g = gcd(num, den);
            num /= g;
            den /= g;
        }
    }
    num / den
}

fn gcd(mut a: u128, mut b: u128) -> u128 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a.max(1)
}

/// All tableaux of the `m × n` rectangle with ceiling `k`, sorted.
pub fn enumerate(m: usize, n: usize, k: u32, guard: u64) -> Result<Vec<RectSSYT>> {
    if m == 0 || n == 0 {
        return Err(Error::InvalidTableau("rectangle must have positive dimensions".into()));
    }
    guard_count(format!("SSYT_{k}({n}^{m})"), ssyt_count(m, n, k), guard)?;
    let mut out = Vec::new();
    let mut rows = vec![vec![0u32; n]; m];
    fn fill(rows: &mut Vec<Vec<u32>>, pos: usize, k: u32, out: &mut Vec<RectSSYT>) {
        let (m, n) = (rows.len(), rows[0].len());
        if pos == m * n {
            out.push(RectSSYT { rows: rows.clone(), k });
            return;
        }
        let (r, c) = (pos / n, pos % n);
        let left = if c > 0 { rows[r][c - 1] } else { 1 };
        let above = if r > 0 { rows[r - 1][c] + 1 } else { 1 };
        // leave room for the strictly larger entries below
        let top = k.saturating_sub((m - 1 - r) as u32);
        for x in left.max(above)..=top {
            rows[r][c] = x;
            fill(rows, pos + 1, k, out);
        }
    }
    fill(&mut rows, 0, k, &mut out);
    out.sort();
    Ok(out)
}

/// Every subset of the rectangle fixed by rotation through 180°, listed by
/// choosing a subset of the rotation orbits.
pub fn centrally_symmetric_subsets(m: usize, n: usize) -> Vec<Vec<Cell>> {
    let mut orbits: Vec<Vec<Cell>> = Vec::new();
    for r in 1..=m {
        for c in 1..=n {
            let opposite = (m + 1 - r, n + 1 - c);
            if (r, c) <= opposite {
                let mut orbit = vec![(r, c)];
                if opposite != (r, c) {
                    orbit.push(opposite);
                }
                orbits.push(orbit);
            }
        }
    }
    (0..1u64 << orbits.len())
        .map(|mask| {
            let mut cells: Vec<Cell> =
                orbits.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).flat_map(|(_, o)| o.clone()).collect();
            cells.sort();
            cells
        })
        .collect()
}

/// `|R|(k + 1)/2`
pub fn sigma_constant(cells: usize, k: u32) -> Rational {
    ratio(cells as i64 * (k as i64 + 1), 2)
}

pub fn ssyt_system(m: usize, n: usize, k: u32, guard: u64) -> Result<System<RectSSYT>> {
    let space = enumerate(m, n, k, guard)?;
    Ok(System::new(format!("ssyt-{m}x{n}-k{k}"), space, RectSSYT::promotion))
}

pub fn sigma_statistic(cells: Vec<Cell>) -> Statistic<RectSSYT> {
    let name = format!(
        "sigma[{}]",
        cells.iter().map(|(r, c)| format!("({r},{c})")).collect::<Vec<_>>().join("")
    );
    Statistic::counting(name, move |t: &RectSSYT| t.sigma(&cells).expect("cells inside the shape") as i64)
}

/// Parses `r,c;r,c;...` into cells.
pub fn parse_cells(text: &str) -> Result<Vec<Cell>> {
    text.split(';')
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .map(|pair| {
            let coords: Vec<&str> = pair.trim_matches(['(', ')']).split(',').map(str::trim).collect();
            match coords.as_slice() {
                [r, c] => match (r.parse(), c.parse()) {
                    (Ok(r), Ok(c)) => Ok((r, c)),
                    _ => Err(Error::Parse(format!("bad cell {pair:?}"))),
                },
                _ => Err(Error::Parse(format!("bad cell {pair:?}"))),
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poset::binomial;

    fn t(rows: &[&[u32]], k: u32) -> RectSSYT {
        RectSSYT::new(rows.iter().map(|r| r.to_vec()).collect(), k).unwrap()
    }

    fn five_cycle_orbit() -> Vec<RectSSYT> {
        vec![
            t(&[&[1, 1, 2], &[2, 3, 4]], 5),
            t(&[&[1, 1, 3], &[2, 5, 5]], 5),
            t(&[&[1, 2, 4], &[4, 5, 5]], 5),
            t(&[&[1, 3, 4], &[3, 4, 5]], 5),
            t(&[&[2, 2, 3], &[3, 4, 5]], 5),
        ]
    }

    #[test]
    fn validation() {
        assert!(RectSSYT::new(vec![vec![1, 1], vec![1, 2]], 3).is_err());
        assert!(RectSSYT::new(vec![vec![2, 1]], 3).is_err());
        assert!(RectSSYT::new(vec![vec![1, 4]], 3).is_err());
        assert!(RectSSYT::new(vec![vec![1, 2], vec![3]], 3).is_err());
        assert!(RectSSYT::new(vec![], 3).is_err());
    }

    #[test]
    fn reproduces_five_cycle_orbit() {
        let orbit = five_cycle_orbit();
        for (i, tab) in orbit.iter().enumerate() {
            assert_eq!(tab.promotion(), orbit[(i + 1) % 5], "step {i}");
        }
        let corner: Vec<u64> = orbit.iter().map(|x| x.sigma(&[(1, 1), (2, 3)]).unwrap()).collect();
        assert_eq!(corner, vec![5, 6, 6, 6, 7]);
        let anti: Vec<u64> = orbit.iter().map(|x| x.sigma(&[(1, 3), (2, 1)]).unwrap()).collect();
        assert_eq!(anti, vec![4, 5, 8, 7, 6]);
        assert_eq!(orbit[0].sigma(&[]).unwrap(), 0);
        assert!(orbit[0].sigma(&[(3, 1)]).is_err());
    }

    #[test]
    fn bender_knuth_is_an_involution() {
        for tab in enumerate(2, 3, 5, 1000).unwrap() {
            for i in 1..5 {
                let once = tab.bk_involution(i).unwrap();
                assert!(RectSSYT::new(once.rows.clone(), 5).is_ok());
                assert_eq!(once.bk_involution(i).unwrap(), tab);
            }
            assert!(tab.bk_involution(5).is_err());
        }
    }

    #[test]
    fn enumeration_matches_hook_content() {
        for (m, n) in [(1, 1), (1, 3), (2, 2), (2, 3), (3, 2), (3, 3)] {
            for k in 1..=6 {
                let all = enumerate(m, n, k, 1 << 20).unwrap();
                assert_eq!(all.len() as u128, ssyt_count(m, n, k), "{m}x{n} k={k}");
                assert!(all.iter().all(|x| RectSSYT::new(x.rows.clone(), k).is_ok()));
                if m == 1 {
                    assert_eq!(all.len() as u128, binomial(n + k as usize - 1, n));
                }
            }
        }
        assert!(enumerate(2, 3, 5, 10).unwrap_err().is_guard());
    }

    #[test]
    fn promotion_order_and_sigma_homomesy() {
        for (m, n, kmax) in [(2, 2, 4), (2, 3, 5)] {
            for k in 1..=kmax {
                let sys = ssyt_system(m, n, k, 1 << 16).unwrap();
                if sys.space.is_empty() {
                    // fewer values than rows
                    assert!((k as usize) < m);
                    continue;
                }
                for tab in &sys.space {
                    let back = (0..k).fold(tab.clone(), |x, _| x.promotion());
                    assert_eq!(&back, tab);
                }
                let part = sys.partition(100).unwrap();
                for cells in centrally_symmetric_subsets(m, n) {
                    let c = sigma_constant(cells.len(), k);
                    assert!(part.check(&sigma_statistic(cells.clone())).unwrap().is_c_mesic(&c), "{cells:?}");
                }
            }
        }
    }

    #[test]
    fn symmetric_subsets() {
        assert_eq!(centrally_symmetric_subsets(2, 3).len(), 8);
        assert_eq!(centrally_symmetric_subsets(3, 3).len(), 32);
        assert!(centrally_symmetric_subsets(2, 2).contains(&vec![(1, 1), (2, 2)]));
        assert_eq!(parse_cells("1,1; 2,3").unwrap(), vec![(1, 1), (2, 3)]);
        assert!(parse_cells("1;2").is_err());
    }
}
