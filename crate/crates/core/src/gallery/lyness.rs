//! The Lyness map `(x, y) ↦ (y, (y+1)/x)`, of order 5 on the set where
//! `x, y, x+1, y+1, x+y+1` are all nonzero.
//!
//! The statistic `log|h(x)|` with `h(z) = z⁻¹ + z⁻²` is 0-mesic. Logs are
//! not rational, so the check here is the equivalent multiplicative one:
//! the product of `|h|` over the 5-cycle is exactly 1.

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::rational::{self, Rational};

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct LynessState {
    x: Rational,
    y: Rational,
}

impl LynessState {
    pub fn new(x: Rational, y: Rational) -> Result<Self> {
        let one = Rational::one();
        let checks = [
            ("x", x.clone()),
            ("y", y.clone()),
            ("x+1", &x + &one),
            ("y+1", &y + &one),
            ("x+y+1", &x + &y + &one),
        ];
        for (name, value) in checks {
            if value.is_zero() {
                return Err(Error::LynessDomain(format!(
                    "{name} vanishes at ({}, {})",
                    rational::format(&x),
                    rational::format(&y)
                )));
            }
        }
        Ok(LynessState { x, y })
    }

    pub fn x(&self) -> &Rational {
        &self.x
    }

    pub fn y(&self) -> &Rational {
        &self.y
    }
}

impl std::fmt::Display for LynessState {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "({}, {})", rational::format(&self.x), rational::format(&self.y))
    }
}

/// `(x, y) ↦ (y, (y+1)/x)`; the domain is closed under this map.
pub fn lyness_step(s: &LynessState) -> LynessState {
    let next = (&s.y + Rational::one()) / &s.x;
    LynessState { x: s.y.clone(), y: next }
}

/// The sequence `x_1, …, x_5` with `x_1 = x`, `x_2 = y` and
/// `x_{i-1} x_{i+1} = x_i + 1`.
pub fn lyness_cycle(s: &LynessState) -> [Rational; 5] {
    let mut state = s.clone();
    std::array::from_fn(|_| {
        let x = state.x.clone();
        state = lyness_step(&state);
        x
    })
}

/// `h(z) = 1/z + 1/z²`
pub fn h(z: &Rational) -> Rational {
    let inv = z.recip();
    &inv + &inv * &inv
}

/// `Π |h(x_i)|` over the 5-cycle through `s`.
pub fn lyness_orbit_product(s: &LynessState) -> Rational {
    lyness_cycle(s).iter().map(|x| h(x).abs()).product()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, ratio};

    #[test]
    fn cycle_through_one_three() {
        let s = LynessState::new(int(1), int(3)).unwrap();
        assert_eq!(lyness_cycle(&s), [int(1), int(3), int(4), ratio(5, 3), ratio(2, 3)]);
        let factors: Vec<Rational> = lyness_cycle(&s).iter().map(|x| h(x).abs()).collect();
        assert_eq!(factors, vec![int(2), ratio(4, 9), ratio(5, 16), ratio(24, 25), ratio(15, 4)]);
        assert_eq!(lyness_orbit_product(&s), int(1));
    }

    #[test]
    fn order_five() {
        let s = LynessState::new(ratio(-7, 3), ratio(2, 5)).unwrap();
        let mut t = s.clone();
        for i in 1..=5 {
            t = lyness_step(&t);
            assert_eq!(t == s, i == 5);
        }
    }

    #[test]
    fn rejects_points_outside_domain() {
        assert!(LynessState::new(int(0), int(1)).is_err());
        assert!(LynessState::new(int(2), int(-1)).is_err());
        assert!(LynessState::new(int(-1), int(5)).is_err());
        assert!(LynessState::new(int(2), int(-3)).is_err());
        assert!(LynessState::new(ratio(1, 2), ratio(1, 2)).is_ok());
    }
}
