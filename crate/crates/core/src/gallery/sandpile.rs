//! Abelian sandpiles on directed multigraphs with a global sink.
//!
//! Configurations live on the non-sink vertices, listed in vertex order with
//! the sink removed. The reduced Laplacian `Δ'` is oriented so that firing
//! the vertices in `φ` turns `σ` into `σ - Δ'φ`: column `v` records what
//! firing `v` does, `Δ'[v][v] = outdeg(v) - deg(v,v)` and
//! `Δ'[w][v] = -deg(v,w)`.

use std::collections::BTreeSet;

use crate::engine::{Statistic, System};
use crate::error::{Error, Result};
use crate::gallery::guard_count;
use crate::linalg;
use crate::rational::{int, Rational};

/// Bound on total topplings during one stabilization.
pub const DEFAULT_TOPPLING_GUARD: u64 = 100_000_000;

pub type SandpileConfig = Vec<u64>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SandpileGraph {
    names: Vec<String>,
    /// `deg[v][w]`: number of edges `v → w`.
    deg: Vec<Vec<u64>>,
    sink: usize,
    source: usize,
    /// Non-sink vertices in order; configuration index `i` is vertex `nonsink[i]`.
    nonsink: Vec<usize>,
}

impl SandpileGraph {
    pub fn new(names: Vec<String>, deg: Vec<Vec<u64>>, sink: usize, source: usize) -> Result<Self> {
        let n = names.len();
        if deg.len() != n || deg.iter().any(|row| row.len() != n) {
            return Err(Error::InvalidGraph("degree matrix does not match the vertex list".into()));
        }
        if sink >= n || source >= n {
            return Err(Error::InvalidGraph("sink or source is not a vertex".into()));
        }
        if sink == source {
            return Err(Error::InvalidGraph("source must differ from the sink".into()));
        }
        // every vertex must reach the sink
        let mut reaches = vec![false; n];
        reaches[sink] = true;
        let mut changed = true;
        while changed {
            changed = false;
            for v in 0..n {
                if !reaches[v] && (0..n).any(|w| deg[v][w] > 0 && reaches[w]) {
                    reaches[v] = true;
                    changed = true;
                }
            }
        }
        if let Some(v) = (0..n).find(|&v| !reaches[v]) {
            return Err(Error::InvalidGraph(format!("vertex {} has no path to the sink", names[v])));
        }
        let nonsink = (0..n).filter(|&v| v != sink).collect();
        Ok(SandpileGraph { names, deg, sink, source, nonsink })
    }

    /// Parses the edge-list format: lines `v w count`, plus `sink t` and
    /// `source s`. Blank lines and `#` comments are skipped. Vertices are
    /// ordered numerically when every name is an integer, otherwise
    /// lexicographically.
    pub fn parse(text: &str) -> Result<Self> {
        let mut edges: Vec<(String, String, u64)> = Vec::new();
        let mut sink = None;
        let mut source = None;
        let mut names = BTreeSet::new();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap().trim();
            if line.is_empty() {
                continue;
            }
            let fields: Vec<&str> = line.split_whitespace().collect();
            let bad = || Error::InvalidGraph(format!("line {}: cannot parse {raw:?}", lineno + 1));
            match fields.as_slice() {
                ["sink", t] => sink = Some(t.to_string()),
                ["source", s] => source = Some(s.to_string()),
                [v, w, count] => {
                    let count: u64 = count.parse().map_err(|_| bad())?;
                    names.insert(v.to_string());
                    names.insert(w.to_string());
                    edges.push((v.to_string(), w.to_string(), count));
                }
                _ => return Err(bad()),
            }
        }
        let sink = sink.ok_or_else(|| Error::InvalidGraph("missing `sink` line".into()))?;
        let source = source.ok_or_else(|| Error::InvalidGraph("missing `source` line".into()))?;
        names.insert(sink.clone());
        names.insert(source.clone());
        let mut names: Vec<String> = names.into_iter().collect();
        if names.iter().all(|s| s.parse::<i64>().is_ok()) {
            names.sort_by_key(|s| s.parse::<i64>().unwrap());
        }
        let index = |name: &str| names.iter().position(|n| n == name).unwrap();
        let mut deg = vec![vec![0u64; names.len()]; names.len()];
        for (v, w, count) in &edges {
            deg[index(v)][index(w)] += count;
        }
        let (t, s) = (index(&sink), index(&source));
        Self::new(names, deg, t, s)
    }

    /// Renders the graph back into the edge-list format.
    pub fn to_edge_list(&self) -> String {
        let mut out = format!("sink {}\nsource {}\n", self.names[self.sink], self.names[self.source]);
        for (v, row) in self.deg.iter().enumerate() {
            for (w, &count) in row.iter().enumerate() {
                if count > 0 {
                    out.push_str(&format!("{} {} {}\n", self.names[v], self.names[w], count));
                }
            }
        }
        out
    }

    /// The bidirected cycle on vertices `1..=n`.
    pub fn bidirected_cycle(n: usize, sink: usize, source: usize) -> Result<Self> {
        let names = (1..=n).map(|v| v.to_string()).collect();
        let mut deg = vec![vec![0; n]; n];
        for v in 0..n {
            deg[v][(v + 1) % n] += 1;
            deg[v][(v + n - 1) % n] += 1;
        }
        Self::new(names, deg, sink - 1, source - 1)
    }

    /// Number of non-sink vertices (the configuration dimension).
    pub fn dimension(&self) -> usize {
        self.nonsink.len()
    }

    pub fn nonsink_names(&self) -> Vec<&str> {
        self.nonsink.iter().map(|&v| self.names[v].as_str()).collect()
    }

    pub fn outdeg(&self, v: usize) -> u64 {
        self.deg[v].iter().sum()
    }

    /// Index of the source in a configuration vector.
    pub fn source_index(&self) -> usize {
        self.nonsink.iter().position(|&v| v == self.source).unwrap()
    }

    pub fn reduced_laplacian(&self) -> Vec<Vec<i64>> {
        self.nonsink
            .iter()
            .map(|&w| {
                self.nonsink
                    .iter()
                    .map(|&v| {
                        if v == w {
                            (self.outdeg(v) - self.deg[v][v]) as i64
                        } else {
                            -(self.deg[v][w] as i64)
                        }
                    })
                    .collect()
            })
            .collect()
    }

    pub fn reduced_laplacian_rational(&self) -> Vec<Vec<Rational>> {
        self.reduced_laplacian().into_iter().map(|row| row.into_iter().map(int).collect()).collect()
    }

    pub fn is_stable(&self, sigma: &[u64]) -> bool {
        self.nonsink.iter().zip(sigma).all(|(&v, &g)| g < self.outdeg(v))
    }

    fn check_config(&self, sigma: &[u64]) -> Result<()> {
        if sigma.len() == self.dimension() {
            Ok(())
        } else {
            Err(Error::InvalidState(format!("configuration has {} entries, expected {}", sigma.len(), self.dimension())))
        }
    }

    fn fire(&self, sigma: &mut [u64], i: usize) {
        let v = self.nonsink[i];
        sigma[i] -= self.outdeg(v);
        for (j, &w) in self.nonsink.iter().enumerate() {
            sigma[j] += self.deg[v][w];
        }
    }

    /// Stabilizes `sigma`, firing the lowest-index unstable vertex each time.
    /// Returns the stable configuration and the firing vector.
    pub fn stabilize(&self, sigma: &[u64], guard: u64) -> Result<(SandpileConfig, Vec<u64>)> {
        let order: Vec<usize> = (0..self.dimension()).collect();
        self.stabilize_with_priority(sigma, &order, guard)
    }

    /// Stabilization that fires the first unstable vertex in `priority`.
    pub fn stabilize_with_priority(
        &self,
        sigma: &[u64],
        priority: &[usize],
        guard: u64,
    ) -> Result<(SandpileConfig, Vec<u64>)> {
        self.check_config(sigma)?;
        let mut current = sigma.to_vec();
        let mut firing = vec![0u64; self.dimension()];
        let mut topplings = 0u64;
        while let Some(&i) = priority.iter().find(|&&i| current[i] >= self.outdeg(self.nonsink[i])) {
            if topplings >= guard {
                return Err(Error::StabilizationGuard(guard));
            }
            self.fire(&mut current, i);
            firing[i] += 1;
            topplings += 1;
        }
        Ok((current, firing))
    }

    /// `τ(σ) = (σ + 1_s)°`
    pub fn tau(&self, sigma: &[u64]) -> Result<SandpileConfig> {
        let mut bumped = sigma.to_vec();
        self.check_config(&bumped)?;
        bumped[self.source_index()] += 1;
        Ok(self.stabilize(&bumped, DEFAULT_TOPPLING_GUARD)?.0)
    }

    /// `f(σ) = φ(σ + 1_s)`
    pub fn firing_of_added_grain(&self, sigma: &[u64]) -> Result<Vec<u64>> {
        let mut bumped = sigma.to_vec();
        self.check_config(&bumped)?;
        bumped[self.source_index()] += 1;
        Ok(self.stabilize(&bumped, DEFAULT_TOPPLING_GUARD)?.1)
    }

    /// All stable configurations in lexicographic order.
    pub fn stable_configs(&self, guard: u64) -> Result<Vec<SandpileConfig>> {
        let radices: Vec<u64> = self.nonsink.iter().map(|&v| self.outdeg(v)).collect();
        let count = radices.iter().try_fold(1u128, |acc, &r| acc.checked_mul(r as u128)).unwrap_or(u128::MAX);
        guard_count("stable sandpile configurations", count, guard)?;
        let mut out = Vec::with_capacity(count as usize);
        let mut current = vec![0u64; radices.len()];
        loop {
            out.push(current.clone());
            // odometer, last coordinate fastest
            let Some(i) = (0..radices.len()).rev().find(|&i| current[i] + 1 < radices[i]) else {
                break;
            };
            current[i] += 1;
            for c in current[i + 1..].iter_mut() {
                *c = 0;
            }
        }
        Ok(out)
    }

    /// Stable configurations lying on a cycle of `τ`.
    pub fn recurrents(&self, guard: u64) -> Result<Vec<SandpileConfig>> {
        let stable = self.stable_configs(guard)?;
        let index_of = |c: &SandpileConfig| stable.binary_search(c).expect("τ of a stable configuration is stable");
        let next: Vec<usize> = stable.iter().map(|c| self.tau(c).map(|t| index_of(&t))).collect::<Result<_>>()?;
        // walk the functional graph; a node is on a cycle iff the walk from it
        // returns to it before reaching an already classified node
        #[derive(Clone, Copy, PartialEq)]
        enum Mark {
            New,
            Active,
            Done,
        }
        let mut mark = vec![Mark::New; stable.len()];
        let mut on_cycle = vec![false; stable.len()];
        for start in 0..stable.len() {
            let mut path = Vec::new();
            let mut v = start;
            while mark[v] == Mark::New {
                mark[v] = Mark::Active;
                path.push(v);
                v = next[v];
            }
            if mark[v] == Mark::Active {
                let at = path.iter().position(|&p| p == v).unwrap();
                for &p in &path[at..] {
                    on_cycle[p] = true;
                }
            }
            for p in path {
                mark[p] = Mark::Done;
            }
        }
        Ok(stable.into_iter().zip(on_cycle).filter_map(|(c, r)| r.then_some(c)).collect())
    }

    /// The recurrent configurations under `τ`.
    pub fn system(&self, guard: u64) -> Result<System<SandpileConfig>> {
        let space = self.recurrents(guard)?;
        let g = self.clone();
        Ok(System::new("sandpile", space, move |c: &SandpileConfig| {
            g.tau(c).expect("recurrent configurations stabilize")
        }))
    }

    /// `σ ↦ φ(σ + 1_s)` as a vector statistic.
    pub fn firing_statistic(&self) -> Statistic<SandpileConfig> {
        let g = self.clone();
        Statistic::new("firing-vector", self.dimension(), move |c: &SandpileConfig| {
            g.firing_of_added_grain(c)
                .expect("configuration matches the graph")
                .into_iter()
                .map(|x| int(x as i64))
                .collect()
        })
    }

    /// The solution of `Δ' f* = 1_s`.
    pub fn expected_firing_average(&self) -> Result<Vec<Rational>> {
        let mut rhs = vec![int(0); self.dimension()];
        rhs[self.source_index()] = int(1);
        linalg::solve(&self.reduced_laplacian_rational(), &rhs)
    }
}
