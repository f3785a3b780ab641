//! Rowmotion and promotion on `[a]×[b]` packaged as systems, with the
//! cardinality, file, fiber and indicator statistics.

use crate::engine::{Statistic, System};
use crate::error::Result;
use crate::poset::{Antichain, GridPoset, OrderIdeal};
use crate::rational::{int, ratio, Rational};

pub fn rowmotion_ideals(p: &GridPoset, guard: u64) -> Result<System<OrderIdeal>> {
    let space = p.enumerate_order_ideals(guard)?;
    let p = p.clone();
    Ok(System::new("rowmotion", space, move |i: &OrderIdeal| p.rowmotion_ideal(i)))
}

pub fn rowmotion_antichains(p: &GridPoset, guard: u64) -> Result<System<Antichain>> {
    let space = p.enumerate_antichains(guard)?;
    let p = p.clone();
    Ok(System::new("rowmotion", space, move |a: &Antichain| p.rowmotion_antichain(a)))
}

pub fn promotion_ideals(p: &GridPoset, guard: u64) -> Result<System<OrderIdeal>> {
    let space = p.enumerate_order_ideals(guard)?;
    let p = p.clone();
    Ok(System::new("promotion", space, move |i: &OrderIdeal| p.promotion_ideal(i)))
}

pub fn promotion_antichains(p: &GridPoset, guard: u64) -> Result<System<Antichain>> {
    let space = p.enumerate_antichains(guard)?;
    let p = p.clone();
    Ok(System::new("promotion", space, move |a: &Antichain| p.promotion_antichain(a)))
}

pub fn ideal_size() -> Statistic<OrderIdeal> {
    Statistic::counting("ideal-size", |i: &OrderIdeal| i.len() as i64)
}

pub fn antichain_size() -> Statistic<Antichain> {
    Statistic::counting("antichain-size", |a: &Antichain| a.len() as i64)
}

/// `#I ∩ F` for the file `F` at offset `d`.
pub fn ideal_file_count(p: &GridPoset, d: i64) -> Statistic<OrderIdeal> {
    let file = p.file_elements(d);
    Statistic::counting(format!("file:{d}"), move |i: &OrderIdeal| file.iter().filter(|&&x| i.contains(x)).count() as i64)
}

/// `#A ∩ (kth positive fiber)`.
pub fn antichain_positive_fiber_count(p: &GridPoset, k: usize) -> Statistic<Antichain> {
    let fiber = p.positive_fiber(k);
    Statistic::counting(format!("positive-fiber:{k}"), move |a: &Antichain| a.0.intersection(&fiber).len() as i64)
}

/// `#A ∩ (ℓth negative fiber)`.
pub fn antichain_negative_fiber_count(p: &GridPoset, l: usize) -> Statistic<Antichain> {
    let fiber = p.negative_fiber(l);
    Statistic::counting(format!("negative-fiber:{l}"), move |a: &Antichain| a.0.intersection(&fiber).len() as i64)
}

pub fn ideal_indicator(p: &GridPoset, x: usize) -> Statistic<OrderIdeal> {
    let (k, l) = p.coords(x);
    Statistic::counting(format!("1_({k},{l})"), move |i: &OrderIdeal| i.contains(x) as i64)
}

pub fn antichain_indicator(p: &GridPoset, x: usize) -> Statistic<Antichain> {
    let (k, l) = p.coords(x);
    Statistic::counting(format!("1_({k},{l})"), move |a: &Antichain| a.contains(x) as i64)
}

/// Element indicators on ideals, in element order.
pub fn ideal_indicator_basis(p: &GridPoset) -> Vec<Statistic<OrderIdeal>> {
    (0..p.size()).map(|x| ideal_indicator(p, x)).collect()
}

/// Element indicators on antichains, in element order.
pub fn antichain_indicator_basis(p: &GridPoset) -> Vec<Statistic<Antichain>> {
    (0..p.size()).map(|x| antichain_indicator(p, x)).collect()
}

/// `ab/2`
pub fn ideal_size_constant(a: usize, b: usize) -> Rational {
    ratio((a * b) as i64, 2)
}

/// `ab/(a+b)`
pub fn antichain_size_constant(a: usize, b: usize) -> Rational {
    ratio((a * b) as i64, (a + b) as i64)
}

/// A named coefficient vector over the indicator basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Generator {
    pub name: String,
    pub coefficients: Vec<Rational>,
}

fn indicator_sum(p: &GridPoset, name: String, members: impl IntoIterator<Item = usize>, sign: i64) -> Generator {
    let mut coefficients = vec![int(0); p.size()];
    for x in members {
        coefficients[x] += int(sign);
    }
    Generator { name, coefficients }
}

/// Opposite pairs `{x, y}` with `x ≤ y` (the center, when it exists,
/// pairs with itself).
fn opposite_pairs(p: &GridPoset) -> Vec<(usize, usize)> {
    (0..p.size()).map(|x| (x, p.opposite(x))).filter(|(x, y)| x <= y).collect()
}

fn label(p: &GridPoset, x: usize) -> String {
    let (k, l) = p.coords(x);
    format!("({k},{l})")
}

/// `Σ_{x∈F} 1_x` for every file `F`.
pub fn file_sum_generators(p: &GridPoset) -> Vec<Generator> {
    p.files()
        .map(|d| indicator_sum(p, format!("file {d}"), p.file_elements(d), 1))
        .collect()
}

/// `1_x + 1_y` for every opposite pair.
pub fn opposite_sum_generators(p: &GridPoset) -> Vec<Generator> {
    opposite_pairs(p)
        .into_iter()
        .map(|(x, y)| {
            let mut g = indicator_sum(p, format!("1_{} + 1_{}", label(p, x), label(p, y)), [x], 1);
            g.coefficients[y] += int(1);
            g
        })
        .collect()
}

/// `Σ_{x∈F} 1_x` for every positive and negative fiber.
pub fn fiber_sum_generators(p: &GridPoset) -> Vec<Generator> {
    let positive = (1..=p.a()).map(|k| indicator_sum(p, format!("positive fiber {k}"), p.positive_fiber(k).iter(), 1));
    let negative = (1..=p.b()).map(|l| indicator_sum(p, format!("negative fiber {l}"), p.negative_fiber(l).iter(), 1));
    positive.chain(negative).collect()
}

/// `1_x - 1_y` for every opposite pair.
pub fn opposite_difference_generators(p: &GridPoset) -> Vec<Generator> {
    opposite_pairs(p)
        .into_iter()
        .map(|(x, y)| {
            let mut g = indicator_sum(p, format!("1_{} - 1_{}", label(p, x), label(p, y)), [x], 1);
            g.coefficients[y] -= int(1);
            g
        })
        .collect()
}
