//! Orbits of invertible maps on finite state sets, exact orbit averages and
//! homomesy decisions.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::sync::Arc;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::linalg;
use crate::rational::{int, Rational};

/// Default bound on orbit length.
pub const DEFAULT_ORBIT_GUARD: u64 = 1_000_000;

pub type MapFn<S> = Arc<dyn Fn(&S) -> S + Send + Sync>;

type EvalFn<S> = Arc<dyn Fn(&S) -> Vec<Rational> + Send + Sync>;

/// A named map from states to rational vectors of fixed dimension.
pub struct Statistic<S> {
    name: String,
    dimension: usize,
    eval: EvalFn<S>,
}

impl<S> Clone for Statistic<S> {
    fn clone(&self) -> Self {
        Statistic { name: self.name.clone(), dimension: self.dimension, eval: Arc::clone(&self.eval) }
    }
}

impl<S> fmt::Debug for Statistic<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Statistic").field("name", &self.name).field("dimension", &self.dimension).finish()
    }
}

impl<S: 'static> Statistic<S> {
    pub fn new<F>(name: impl Into<String>, dimension: usize, eval: F) -> Self
    where
        F: Fn(&S) -> Vec<Rational> + Send + Sync + 'static,
    {
        Statistic { name: name.into(), dimension, eval: Arc::new(eval) }
    }

    pub fn scalar<F>(name: impl Into<String>, eval: F) -> Self
    where
        F: Fn(&S) -> Rational + Send + Sync + 'static,
    {
        Self::new(name, 1, move |s| vec![eval(s)])
    }

    /// Integer-valued scalar statistic.
    pub fn counting<F>(name: impl Into<String>, eval: F) -> Self
    where
        F: Fn(&S) -> i64 + Send + Sync + 'static,
    {
        Self::scalar(name, move |s| int(eval(s)))
    }

    /// `Σ coefficients[i] · basis[i]` for scalar statistics.
    pub fn linear_combination(name: impl Into<String>, basis: &[Statistic<S>], coefficients: &[Rational]) -> Result<Self> {
        if basis.len() != coefficients.len() {
            return Err(Error::DimensionMismatch {
                name: "coefficients".into(),
                expected: basis.len(),
                got: coefficients.len(),
            });
        }
        for f in basis {
            f.require_scalar()?;
        }
        let terms: Vec<(Statistic<S>, Rational)> =
            basis.iter().cloned().zip(coefficients.iter().cloned()).filter(|(_, c)| !c.is_zero()).collect();
        Ok(Self::scalar(name, move |s| terms.iter().map(|(f, c)| c * &f.eval(s)[0]).sum()))
    }

    /// Component `i` of a vector statistic.
    pub fn component(&self, i: usize) -> Self {
        assert!(i < self.dimension);
        let inner = self.clone();
        Self::scalar(format!("{}[{i}]", self.name), move |s| inner.eval(s).swap_remove(i))
    }
}

impl<S> Statistic<S> {
    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn dimension(&self) -> usize {
        self.dimension
    }

    pub fn eval(&self, state: &S) -> Vec<Rational> {
        (self.eval)(state)
    }

    fn eval_checked(&self, state: &S) -> Result<Vec<Rational>> {
        let v = self.eval(state);
        if v.len() != self.dimension {
            return Err(Error::DimensionMismatch { name: self.name.clone(), expected: self.dimension, got: v.len() });
        }
        Ok(v)
    }

    fn require_scalar(&self) -> Result<()> {
        if self.dimension == 1 {
            Ok(())
        } else {
            Err(Error::DimensionMismatch { name: self.name.clone(), expected: 1, got: self.dimension })
        }
    }
}

/// The cycle of states through some start, beginning at its minimum.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Orbit<S> {
    states: Vec<S>,
}

impl<S> Orbit<S> {
    pub fn states(&self) -> &[S] {
        &self.states
    }

    pub fn period(&self) -> usize {
        self.states.len()
    }

    pub fn representative(&self) -> &S {
        &self.states[0]
    }

    /// The orbit traversed `times` times in a row.
    pub fn superorbit(&self, times: usize) -> Vec<&S> {
        self.states.iter().cycle().take(self.states.len() * times).collect()
    }
}

/// Follows `tau` from `start` until it returns, then rotates the cycle to
/// begin at its least state.
pub fn iterate_orbit<S, F>(tau: F, start: &S, guard: u64) -> Result<Orbit<S>>
where
    S: Clone + Ord,
    F: Fn(&S) -> S,
{
    let mut states = vec![start.clone()];
    let mut seen = BTreeSet::new();
    seen.insert(start.clone());
    loop {
        let next = tau(states.last().unwrap());
        if next == *start {
            break;
        }
        if states.len() as u64 >= guard {
            return Err(Error::OrbitGuardExceeded { limit: guard });
        }
        if !seen.insert(next.clone()) {
            return Err(Error::NotInvertible(format!(
                "the trajectory from the start state re-enters itself after {} steps without returning",
                states.len()
            )));
        }
        states.push(next);
    }
    let min_at = (0..states.len()).min_by(|&i, &j| states[i].cmp(&states[j])).unwrap();
    states.rotate_left(min_at);
    Ok(Orbit { states })
}

/// The orbits of `tau` on a finite state set, in increasing order of
/// representative.
#[derive(Clone, Debug)]
pub struct OrbitPartition<S> {
    orbits: Vec<Orbit<S>>,
    size: usize,
}

impl<S: Clone + Ord> OrbitPartition<S> {
    pub fn new<F>(tau: F, space: &[S], guard: u64) -> Result<Self>
    where
        F: Fn(&S) -> S,
    {
        let members: BTreeSet<&S> = space.iter().collect();
        let mut assigned: BTreeSet<S> = BTreeSet::new();
        let mut orbits = Vec::new();
        for s in &members {
            if assigned.contains(*s) {
                continue;
            }
            let orbit = iterate_orbit(&tau, s, guard)?;
            for t in &orbit.states {
                if !members.contains(t) {
                    return Err(Error::ClosureViolation("an orbit leaves the supplied state set".into()));
                }
                if !assigned.insert(t.clone()) {
                    return Err(Error::NotInvertible("two orbits share a state".into()));
                }
            }
            orbits.push(orbit);
        }
        orbits.sort_by(|x, y| x.representative().cmp(y.representative()));
        Ok(OrbitPartition { orbits, size: members.len() })
    }
}

impl<S> OrbitPartition<S> {
    pub fn orbits(&self) -> &[Orbit<S>] {
        &self.orbits
    }

    pub fn len(&self) -> usize {
        self.orbits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.orbits.is_empty()
    }

    /// Number of states covered.
    pub fn state_count(&self) -> usize {
        self.size
    }

    pub fn periods(&self) -> Vec<usize> {
        self.orbits.iter().map(Orbit::period).collect()
    }

    /// Orbit summaries and verdict for `f` over every orbit. The global
    /// average is included because the partition covers a whole state set.
    pub fn check(&self, f: &Statistic<S>) -> Result<HomomesyReport<S>>
    where
        S: Clone,
    {
        let mut report = report_for_orbits(&self.orbits, f)?;
        let mut total = vec![Rational::zero(); f.dimension()];
        for summary in &report.orbits {
            for (t, avg) in total.iter_mut().zip(&summary.average) {
                *t += avg * int(summary.period as i64);
            }
        }
        let count = int(self.size as i64);
        report.global_average = (self.size > 0).then(|| total.into_iter().map(|t| t / &count).collect());
        Ok(report)
    }

    /// Splits `f` into its orbit average (invariant) and the remainder
    /// (0-mesic on every orbit).
    pub fn decompose(&self, f: &Statistic<S>) -> Result<Decomposition<S>>
    where
        S: Clone + Ord,
    {
        let mut invariant = BTreeMap::new();
        let mut zero_mesic = BTreeMap::new();
        for orbit in &self.orbits {
            let avg = orbit_average(f, orbit)?;
            for s in orbit.states() {
                let value = f.eval_checked(s)?;
                let rest: Vec<Rational> = value.iter().zip(&avg).map(|(v, m)| v - m).collect();
                invariant.insert(s.clone(), avg.clone());
                zero_mesic.insert(s.clone(), rest);
            }
        }
        Ok(Decomposition { name: f.name().to_string(), dimension: f.dimension(), invariant, zero_mesic })
    }

    /// Coefficient vectors `c` with `Σ c_i f_i` homomesic, as a canonical
    /// (reduced row-echelon) basis.
    pub fn homomesic_subspace(&self, basis: &[Statistic<S>]) -> Result<HomomesicSubspace> {
        if basis.is_empty() {
            return Err(Error::EmptyBasis);
        }
        for f in basis {
            f.require_scalar()?;
        }
        let averages: Vec<Vec<Rational>> = self
            .orbits
            .iter()
            .map(|o| basis.iter().map(|f| orbit_average(f, o).map(|mut v| v.swap_remove(0))).collect())
            .collect::<Result<_>>()?;
        let rows: Vec<Vec<Rational>> = match averages.split_first() {
            Some((reference, rest)) => rest
                .iter()
                .map(|row| row.iter().zip(reference).map(|(x, r)| x - r).collect())
                .collect(),
            None => Vec::new(),
        };
        Ok(HomomesicSubspace { basis: linalg::rational_nullspace(&rows, basis.len()), ambient: basis.len() })
    }
}

/// Orbit partition of `space` under `tau` with the default guard.
pub fn orbit_partition<S, F>(tau: F, space: &[S]) -> Result<Vec<Orbit<S>>>
where
    S: Clone + Ord,
    F: Fn(&S) -> S,
{
    Ok(OrbitPartition::new(tau, space, DEFAULT_ORBIT_GUARD)?.orbits)
}

/// Exact componentwise mean of `f` over the orbit.
pub fn orbit_average<S>(f: &Statistic<S>, orbit: &Orbit<S>) -> Result<Vec<Rational>> {
    let mut total = vec![Rational::zero(); f.dimension()];
    for s in orbit.states() {
        for (t, v) in total.iter_mut().zip(f.eval_checked(s)?) {
            *t += v;
        }
    }
    let n = int(orbit.period() as i64);
    Ok(total.into_iter().map(|t| t / &n).collect())
}

pub fn check_homomesy<S, F>(tau: F, space: &[S], f: &Statistic<S>) -> Result<HomomesyReport<S>>
where
    S: Clone + Ord,
    F: Fn(&S) -> S,
{
    OrbitPartition::new(tau, space, DEFAULT_ORBIT_GUARD)?.check(f)
}

pub fn invariant_homomesic_decomposition<S, F>(tau: F, space: &[S], f: &Statistic<S>) -> Result<Decomposition<S>>
where
    S: Clone + Ord,
    F: Fn(&S) -> S,
{
    OrbitPartition::new(tau, space, DEFAULT_ORBIT_GUARD)?.decompose(f)
}

/// Report over an arbitrary collection of orbits (no global average).
pub fn report_for_orbits<S: Clone>(orbits: &[Orbit<S>], f: &Statistic<S>) -> Result<HomomesyReport<S>> {
    let summaries = orbits
        .iter()
        .map(|o| {
            Ok(OrbitSummary { representative: o.representative().clone(), period: o.period(), average: orbit_average(f, o)? })
        })
        .collect::<Result<Vec<_>>>()?;
    let homomesic = summaries.windows(2).all(|w| w[0].average == w[1].average);
    let c = if homomesic { summaries.first().map(|s| s.average.clone()) } else { None };
    Ok(HomomesyReport { statistic: f.name().to_string(), orbits: summaries, global_average: None, homomesic, c })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrbitSummary<S> {
    pub representative: S,
    pub period: usize,
    pub average: Vec<Rational>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomomesyReport<S> {
    pub statistic: String,
    pub orbits: Vec<OrbitSummary<S>>,
    pub global_average: Option<Vec<Rational>>,
    pub homomesic: bool,
    pub c: Option<Vec<Rational>>,
}

impl<S> HomomesyReport<S> {
    /// Distinct orbit averages, sorted.
    pub fn distinct_averages(&self) -> Vec<Vec<Rational>> {
        let set: BTreeSet<&Vec<Rational>> = self.orbits.iter().map(|o| &o.average).collect();
        set.into_iter().cloned().collect()
    }

    /// True when homomesic with the given scalar constant.
    pub fn is_c_mesic(&self, c: &Rational) -> bool {
        matches!(&self.c, Some(v) if v.len() == 1 && v[0] == *c)
    }
}

/// `f = invariant + zero_mesic`, tabulated over the state set.
#[derive(Clone, Debug)]
pub struct Decomposition<S> {
    name: String,
    dimension: usize,
    pub invariant: BTreeMap<S, Vec<Rational>>,
    pub zero_mesic: BTreeMap<S, Vec<Rational>>,
}

impl<S: Clone + Ord + Send + Sync + 'static> Decomposition<S> {
    /// Both parts as statistics. They are only defined on the decomposed
    /// state set and panic elsewhere.
    pub fn into_statistics(self) -> (Statistic<S>, Statistic<S>) {
        let lookup = |table: BTreeMap<S, Vec<Rational>>| {
            move |s: &S| table.get(s).cloned().expect("state outside the decomposed state set")
        };
        (
            Statistic::new(format!("{}-invariant", self.name), self.dimension, lookup(self.invariant)),
            Statistic::new(format!("{}-0-mesic", self.name), self.dimension, lookup(self.zero_mesic)),
        )
    }
}

/// Homomesic coefficient vectors over a scalar statistic basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomomesicSubspace {
    pub basis: Vec<Vec<Rational>>,
    pub ambient: usize,
}

impl HomomesicSubspace {
    pub fn dimension(&self) -> usize {
        self.basis.len()
    }

    pub fn contains(&self, coefficients: &[Rational]) -> bool {
        coefficients.len() == self.ambient && linalg::in_span(&self.basis, coefficients)
    }
}

/// A state set together with an invertible map on it.
pub struct System<S> {
    pub name: String,
    pub space: Vec<S>,
    pub map: MapFn<S>,
}

impl<S> Clone for System<S>
where
    S: Clone,
{
    fn clone(&self) -> Self {
        System { name: self.name.clone(), space: self.space.clone(), map: Arc::clone(&self.map) }
    }
}

impl<S> fmt::Debug for System<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("System").field("name", &self.name).field("states", &self.space.len()).finish()
    }
}

impl<S: Clone + Ord> System<S> {
    pub fn new<F>(name: impl Into<String>, space: Vec<S>, map: F) -> Self
    where
        F: Fn(&S) -> S + Send + Sync + 'static,
    {
        System { name: name.into(), space, map: Arc::new(map) }
    }

    pub fn apply(&self, s: &S) -> S {
        (self.map)(s)
    }

    pub fn partition(&self, guard: u64) -> Result<OrbitPartition<S>> {
        OrbitPartition::new(|s: &S| (self.map)(s), &self.space, guard)
    }

    pub fn check(&self, f: &Statistic<S>) -> Result<HomomesyReport<S>> {
        self.partition(DEFAULT_ORBIT_GUARD)?.check(f)
    }

    pub fn orbit_of(&self, s: &S, guard: u64) -> Result<Orbit<S>> {
        iterate_orbit(|x: &S| (self.map)(x), s, guard)
    }
}
