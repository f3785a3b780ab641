//! Words over `{-1, +1}` and cyclic rotation.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// A letter `-1` or `+1`. `Minus` sorts first.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Sign {
    Minus,
    Plus,
}

impl Sign {
    pub fn value(self) -> i64 {
        match self {
            Sign::Minus => -1,
            Sign::Plus => 1,
        }
    }

    pub fn from_value(v: i64) -> Option<Sign> {
        match v {
            -1 => Some(Sign::Minus),
            1 => Some(Sign::Plus),
            _ => None,
        }
    }

    fn symbol(self) -> char {
        match self {
            Sign::Minus => '-',
            Sign::Plus => '+',
        }
    }

    fn parse(c: char) -> Option<Sign> {
        match c {
            '-' | '−' | '0' => Some(Sign::Minus),
            '+' | '1' => Some(Sign::Plus),
            _ => None,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Direction {
    Left,
    Right,
}

/// Rotates a word by one position.
///
/// `Left` sends `(s_1, …, s_n)` to `(s_2, …, s_n, s_1)`.
pub fn cyclic_shift<T: Clone>(word: &[T], direction: Direction) -> Result<Vec<T>> {
    if word.is_empty() {
        return Err(Error::EmptyWord);
    }
    let mut out = word.to_vec();
    match direction {
        Direction::Left => out.rotate_left(1),
        Direction::Right => out.rotate_right(1),
    }
    Ok(out)
}

fn parse_letters(s: &str) -> Result<Vec<Sign>> {
    s.chars()
        .filter(|c| !c.is_whitespace() && *c != '|' && *c != ',')
        .map(|c| Sign::parse(c).ok_or_else(|| Error::MalformedWord(format!("unexpected letter {c:?} in {s:?}"))))
        .collect()
}

fn write_letters(letters: &[Sign], f: &mut fmt::Formatter<'_>) -> fmt::Result {
    for s in letters {
        write!(f, "{}", s.symbol())?;
    }
    Ok(())
}

macro_rules! pm_word {
    ($(#[$doc:meta])* $name:ident) => {
        $(#[$doc])*
        #[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
        pub struct $name(pub Vec<Sign>);

        impl $name {
            pub fn letters(&self) -> &[Sign] {
                &self.0
            }

            pub fn len(&self) -> usize {
                self.0.len()
            }

            pub fn is_empty(&self) -> bool {
                self.0.is_empty()
            }

            pub fn count(&self, sign: Sign) -> usize {
                self.0.iter().filter(|&&s| s == sign).count()
            }

            pub fn from_values(values: &[i64]) -> Result<Self> {
                values
                    .iter()
                    .map(|&v| Sign::from_value(v).ok_or_else(|| Error::MalformedWord(format!("letter {v} is not ±1"))))
                    .collect::<Result<Vec<_>>>()
                    .map($name)
            }

            pub fn values(&self) -> Vec<i64> {
                self.0.iter().map(|s| s.value()).collect()
            }

            pub fn shift(&self, direction: Direction) -> Result<Self> {
                cyclic_shift(&self.0, direction).map($name)
            }

            /// `0`/`1` rendering with `1` for `+1`.
            pub fn to_bits(&self) -> String {
                self.0.iter().map(|s| if *s == Sign::Plus { '1' } else { '0' }).collect()
            }
        }

        impl fmt::Display for $name {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                write_letters(&self.0, f)
            }
        }

        impl FromStr for $name {
            type Err = Error;

            fn from_str(s: &str) -> Result<Self> {
                parse_letters(s).map($name)
            }
        }
    };
}

pm_word!(
    /// Slopes of the lattice path bounding an order ideal of `[a]×[b]`.
    SignWord
);

pm_word!(
    /// Fiber-occupancy word of an antichain of `[a]×[b]`.
    StanleyThomasWord
);

/// All words with `minus` letters `-1` and `plus` letters `+1`, in
/// lexicographic order (`-` before `+`).
pub fn words_with_counts(minus: usize, plus: usize) -> Vec<SignWord> {
    fn go(minus: usize, plus: usize, prefix: &mut Vec<Sign>, out: &mut Vec<SignWord>) {
        if minus == 0 && plus == 0 {
            out.push(SignWord(prefix.clone()));
            return;
        }
        if minus > 0 {
            prefix.push(Sign::Minus);
            go(minus - 1, plus, prefix, out);
            prefix.pop();
        }
        if plus > 0 {
            prefix.push(Sign::Plus);
            go(minus, plus - 1, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    go(minus, plus, &mut Vec::with_capacity(minus + plus), &mut out);
    out
}
