use crate::entry::Entry;
use crate::error::{pre, Result};
use std::fmt;

/// A finite sequence of entries, usually a reading word.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Word(pub Vec<Entry>);

impl Word {
    pub fn from_values(vals: &[i32]) -> Self {
        Word(vals.iter().map(|&v| Entry::num(v)).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn letters(&self) -> &[Entry] {
        &self.0
    }

    /// Unprimed numeric values, or None if any letter is a bare mark.
    pub fn values(&self) -> Option<Vec<i32>> {
        self.0.iter().map(|e| e.value()).collect()
    }

    /// Relabel by 1..n. Equal unprimed letters rank left to right, equal primed
    /// letters right to left.
    pub fn standardize(&self) -> Result<Word> {
        if self.0.iter().any(|e| e.is_mark()) {
            return Err(pre("standardize: marked letter present"));
        }
        let order = standard_order(&self.0);
        let mut out = vec![Entry::num(0); self.0.len()];
        for (rank, &pos) in order.iter().enumerate() {
            out[pos] = Entry::num(rank as i32 + 1);
        }
        Ok(Word(out))
    }

    pub fn is_ballot(&self) -> bool {
        let Some(v) = self.values() else { return false };
        prefix_dominant(v.iter().copied(), &mut Vec::new())
    }

    pub fn is_reverse_ballot(&self) -> bool {
        let Some(v) = self.values() else { return false };
        prefix_dominant(v.iter().rev().copied(), &mut Vec::new())
    }

    /// First occurrence of each value in reading order becomes unprimed.
    pub fn canonical_form(&self) -> Word {
        let mut seen = std::collections::HashSet::new();
        Word(
            self.0
                .iter()
                .map(|e| match e.value() {
                    Some(v) if seen.insert(v) => e.with_primed(false),
                    _ => *e,
                })
                .collect(),
        )
    }

    pub fn is_canonical(&self) -> bool {
        self.canonical_form() == *self
    }

    pub fn reversed(&self) -> Word {
        Word(self.0.iter().rev().copied().collect())
    }
}

/// Positions of `letters` listed from least to greatest in standardization order.
/// Bare marks rank by index after every number.
pub fn standard_order(letters: &[Entry]) -> Vec<usize> {
    let mut idx: Vec<usize> = (0..letters.len()).collect();
    idx.sort_by(|&a, &b| {
        let (ea, eb) = (letters[a], letters[b]);
        ea.key().cmp(&eb.key()).then_with(|| {
            if ea.is_primed() {
                b.cmp(&a)
            } else {
                a.cmp(&b)
            }
        })
    });
    idx
}

/// Every prefix has at least as many i's as (i+1)'s. Letters below 1 are ignored.
fn prefix_dominant(it: impl Iterator<Item = i32>, counts: &mut Vec<i64>) -> bool {
    for v in it {
        if v < 1 {
            continue;
        }
        let v = v as usize;
        if counts.len() <= v {
            counts.resize(v + 1, 0);
        }
        counts[v] += 1;
        if v > 1 && counts[v] > counts[v - 1] {
            return false;
        }
    }
    true
}

/// Ballot test for `prefix` followed by `w`, reading values only.
pub fn is_ballot_after(prefix: &[i32], w: &[i32]) -> bool {
    prefix_dominant(prefix.iter().chain(w.iter()).copied(), &mut Vec::new())
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, e) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{e}")?;
        }
        Ok(())
    }
}

impl std::str::FromStr for Word {
    type Err = crate::Error;
    /// Space-separated tokens, or a bare digit string such as `2213`.
    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        let s = s.trim();
        if s.contains(char::is_whitespace) {
            return s.split_whitespace().map(str::parse).collect::<Result<Vec<_>>>().map(Word);
        }
        let mut out = Vec::new();
        let chars: Vec<char> = s.chars().collect();
        let mut i = 0;
        while i < chars.len() {
            let d = chars[i]
                .to_digit(10)
                .ok_or_else(|| crate::Error::Parse(format!("bad word {s:?}")))?;
            let primed = chars.get(i + 1) == Some(&'\'');
            out.push(Entry::Numeric { value: d as i32, primed });
            i += 1 + primed as usize;
        }
        Ok(Word(out))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> Word {
        s.parse().unwrap()
    }

    #[test]
    fn standardize_small() {
        assert_eq!(w("112").standardize().unwrap(), w("123"));
        assert_eq!(w("211").standardize().unwrap(), w("312"));
        // 1 2' 1' 1 2 1': primed ones rank right to left
        assert_eq!(w("12'1'121'").standardize().unwrap().to_string(), "3 5 2 4 6 1");
    }

    #[test]
    fn ballots() {
        assert!(w("112").is_ballot());
        assert!(!w("21").is_ballot());
        assert!(w("21").is_reverse_ballot());
    }

    #[test]
    fn canonical_example() {
        assert_eq!(w("12'1'121'").canonical_form(), w("121'121'"));
    }
}
