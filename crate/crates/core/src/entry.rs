use serde::{Deserialize, Serialize};
use std::cmp::Ordering;
use std::fmt;

/// One cell's content.
///
/// Numeric values may be zero or negative: the crystal algorithm relabels marks
/// into that range. A marked entry optionally carries a tracked value, in which
/// case it behaves like that numeric value everywhere except printing.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Entry {
    Numeric { value: i32, primed: bool },
    Marked { index: u32, tracked: Option<(i32, bool)> },
}

impl Entry {
    pub const fn num(value: i32) -> Self {
        Entry::Numeric { value, primed: false }
    }

    pub const fn primed(value: i32) -> Self {
        Entry::Numeric { value, primed: true }
    }

    pub const fn mark(index: u32) -> Self {
        Entry::Marked { index, tracked: None }
    }

    /// Numeric view: plain numbers and tracked marks.
    pub fn value(&self) -> Option<i32> {
        match *self {
            Entry::Numeric { value, .. } => Some(value),
            Entry::Marked { tracked: Some((v, _)), .. } => Some(v),
            Entry::Marked { tracked: None, .. } => None,
        }
    }

    pub fn is_primed(&self) -> bool {
        match *self {
            Entry::Numeric { primed, .. } => primed,
            Entry::Marked { tracked: Some((_, p)), .. } => p,
            _ => false,
        }
    }

    pub fn is_mark(&self) -> bool {
        matches!(self, Entry::Marked { tracked: None, .. })
    }

    pub fn is_numeric(&self) -> bool {
        matches!(self, Entry::Numeric { .. })
    }

    pub fn mark_index(&self) -> Option<u32> {
        match *self {
            Entry::Marked { index, .. } => Some(index),
            _ => None,
        }
    }

    /// Same value and primality as a plain numeric letter.
    pub fn is_letter(&self, value: i32, primed: bool) -> bool {
        self.value() == Some(value) && self.is_primed() == primed
    }

    /// Unprimed letter `value`.
    pub fn is(&self, value: i32) -> bool {
        self.is_letter(value, false)
    }

    pub fn with_primed(self, primed: bool) -> Self {
        match self {
            Entry::Numeric { value, .. } => Entry::Numeric { value, primed },
            Entry::Marked { index, tracked: Some((v, _)) } => {
                Entry::Marked { index, tracked: Some((v, primed)) }
            }
            e => e,
        }
    }

    pub fn with_value(self, value: i32) -> Self {
        match self {
            Entry::Numeric { primed, .. } => Entry::Numeric { value, primed },
            Entry::Marked { index, tracked: Some((_, p)) } => {
                Entry::Marked { index, tracked: Some((value, p)) }
            }
            e => e,
        }
    }

    /// Sort key used by slides: i' sits between i-1 and i, bare marks above every number.
    pub fn key(&self) -> (u8, i64) {
        match *self {
            Entry::Marked { index, tracked: None } => (1, index as i64),
            _ => {
                let v = self.value().unwrap() as i64;
                (0, 2 * v - self.is_primed() as i64)
            }
        }
    }

    /// Key with bare marks sorted below every number instead of above.
    pub fn key_marks_low(&self) -> (u8, i64) {
        match *self {
            Entry::Marked { index, tracked: None } => (0, index as i64),
            _ => (1, self.key().1),
        }
    }
}

impl PartialOrd for Entry {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Entry {
    fn cmp(&self, other: &Self) -> Ordering {
        self.key().cmp(&other.key()).then_with(|| {
            // tracked marks tie with their plain value; order them after it
            let a = self.mark_index().map(|i| i as i64).unwrap_or(-1);
            let b = other.mark_index().map(|i| i as i64).unwrap_or(-1);
            a.cmp(&b)
        })
    }
}

impl fmt::Display for Entry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Entry::Numeric { value, primed } => {
                write!(f, "{value}{}", if primed { "'" } else { "" })
            }
            Entry::Marked { index, tracked: None } => write!(f, "x{index}"),
            Entry::Marked { index, tracked: Some((v, p)) } => {
                write!(f, "{v}{}_{index}", if p { "'" } else { "" })
            }
        }
    }
}

impl std::str::FromStr for Entry {
    type Err = crate::Error;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || crate::Error::Parse(format!("bad entry {s:?}"));
        if let Some(rest) = s.strip_prefix('x') {
            let index = rest.parse::<u32>().map_err(|_| bad())?;
            return Ok(Entry::mark(index));
        }
        let (body, sub) = match s.split_once('_') {
            Some((b, k)) => (b, Some(k.parse::<u32>().map_err(|_| bad())?)),
            None => (s, None),
        };
        let (digits, primed) = match body.strip_suffix('\'') {
            Some(d) => (d, true),
            None => (body, false),
        };
        let value = digits.parse::<i32>().map_err(|_| bad())?;
        Ok(match sub {
            Some(index) => Entry::Marked { index, tracked: Some((value, primed)) },
            None => Entry::Numeric { value, primed },
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tokens_round_trip() {
        for s in ["3", "2'", "x4", "3_2", "-1", "0'", "2'_1"] {
            let e: Entry = s.parse().unwrap();
            assert_eq!(e.to_string(), s);
        }
        assert!("x".parse::<Entry>().is_err());
        assert!("a".parse::<Entry>().is_err());
    }

    #[test]
    fn primes_interleave() {
        let one = Entry::num(1);
        let two_p = Entry::primed(2);
        let two = Entry::num(2);
        assert!(one < two_p && two_p < two);
        assert!(two < Entry::mark(1));
    }
}
