//! Type-A crystal operators. Letters are plain integers and may be zero or
//! negative; bare marks and primed letters never take part in a bracket.
//! Tracked marks count as their value and keep their subscript when flipped.

use crate::entry::Entry;
use crate::error::{pre, Result};
use crate::tableau::Tableau;
use crate::word::Word;
use serde::Serialize;

/// Bracket structure of the {i, i+1} subword: i+1 opens, i closes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParenMatching {
    pub i: i32,
    /// (open, close) positions of matched pairs.
    pub matched: Vec<(usize, usize)>,
    /// Unmatched i's, left to right. They all sit before the unmatched opens.
    pub unmatched_close: Vec<usize>,
    /// Unmatched (i+1)'s, left to right.
    pub unmatched_open: Vec<usize>,
}

fn letter(e: &Entry) -> Option<i32> {
    if e.is_primed() {
        None
    } else {
        e.value()
    }
}

impl ParenMatching {
    pub fn of(letters: &[Entry], i: i32) -> ParenMatching {
        let mut stack = Vec::new();
        let mut m = ParenMatching { i, matched: Vec::new(), unmatched_close: Vec::new(), unmatched_open: Vec::new() };
        for (p, e) in letters.iter().enumerate() {
            match letter(e) {
                Some(v) if v == i + 1 => stack.push(p),
                Some(v) if v == i => match stack.pop() {
                    Some(o) => m.matched.push((o, p)),
                    None => m.unmatched_close.push(p),
                },
                _ => {}
            }
        }
        m.unmatched_open = stack;
        m
    }
}

/// Position E_i would flip, if any.
pub fn raise_position(letters: &[Entry], i: i32) -> Option<usize> {
    ParenMatching::of(letters, i).unmatched_open.first().copied()
}

/// Position F_i would flip, if any.
pub fn lower_position(letters: &[Entry], i: i32) -> Option<usize> {
    ParenMatching::of(letters, i).unmatched_close.last().copied()
}

/// E_i: first unmatched i+1 becomes i.
pub fn crystal_raise(w: &Word, i: i32) -> Option<Word> {
    let p = raise_position(&w.0, i)?;
    let mut out = w.clone();
    out.0[p] = out.0[p].with_value(i);
    Some(out)
}

/// F_i: last unmatched i becomes i+1.
pub fn crystal_lower(w: &Word, i: i32) -> Option<Word> {
    let p = lower_position(&w.0, i)?;
    let mut out = w.clone();
    out.0[p] = out.0[p].with_value(i + 1);
    Some(out)
}

/// Applies an operator to a tableau through its reading word, rewriting one cell.
pub fn raise_tableau(t: &Tableau, i: i32) -> Option<Tableau> {
    let cells = t.reading_cells();
    let w: Vec<Entry> = cells.iter().map(|&c| t.get(c).unwrap()).collect();
    let p = raise_position(&w, i)?;
    let mut out = t.clone();
    out.set(cells[p], w[p].with_value(i));
    Some(out)
}

pub fn lower_tableau(t: &Tableau, i: i32) -> Option<Tableau> {
    let cells = t.reading_cells();
    let w: Vec<Entry> = cells.iter().map(|&c| t.get(c).unwrap()).collect();
    let p = lower_position(&w, i)?;
    let mut out = t.clone();
    out.set(cells[p], w[p].with_value(i + 1));
    Some(out)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum CrystalOp {
    E(i32),
    F(i32),
}

/// Applies E_i for i >= 1, smallest defined index first, until none is defined.
pub fn to_highest_weight(t: &Tableau) -> Result<(Tableau, Vec<CrystalOp>)> {
    if !t.is_semistandard() {
        return Err(pre("to_highest_weight: tableau not semistandard"));
    }
    let mut cur = t.clone();
    let mut log = Vec::new();
    let top = t.max_value();
    'outer: loop {
        for i in 1..top {
            if let Some(n) = raise_tableau(&cur, i) {
                cur = n;
                log.push(CrystalOp::E(i));
                continue 'outer;
            }
        }
        return Ok((cur, log));
    }
}

/// Applies F_i for 1 <= i < n (n the largest entry) until none is defined,
/// then shifts entries down so the smallest occurring value is 1.
pub fn to_lowest_weight(t: &Tableau) -> Result<(Tableau, Vec<CrystalOp>)> {
    if !t.is_semistandard() {
        return Err(pre("to_lowest_weight: tableau not semistandard"));
    }
    let n = t.max_value();
    let mut cur = t.clone();
    let mut log = Vec::new();
    'outer: loop {
        for i in (1..n).rev() {
            if let Some(next) = lower_tableau(&cur, i) {
                cur = next;
                log.push(CrystalOp::F(i));
                continue 'outer;
            }
        }
        break;
    }
    let low = cur.entries().filter_map(|e| e.value()).min().unwrap_or(1);
    Ok((cur.map(|e| e.with_value(e.value().unwrap() - (low - 1))), log))
}

/// True iff the tableau has strictly more i's than (i+1)'s. Only claimed for LR tableaux.
pub fn f_defined(t: &Tableau, i: i32) -> Result<bool> {
    if !t.is_littlewood_richardson() {
        return Err(pre("f_defined: tableau is not Littlewood-Richardson"));
    }
    let count = |v: i32| t.entries().filter(|e| e.value() == Some(v)).count();
    Ok(count(i) > count(i + 1))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tableau::grid;

    fn w(s: &str) -> Word {
        s.parse().unwrap()
    }

    #[test]
    fn bracket_example() {
        let x = w("2221132122131");
        assert_eq!(crystal_raise(&x, 1), Some(w("1221132122131")));
        assert_eq!(crystal_lower(&x, 1), None);
    }

    #[test]
    fn negative_letters_pair_too() {
        let x = Word::from_values(&[-1, 0, 0]);
        assert_eq!(crystal_raise(&x, -1).unwrap(), Word::from_values(&[-1, -1, 0]));
        assert_eq!(crystal_lower(&x, -1).unwrap(), Word::from_values(&[0, 0, 0]));
    }

    #[test]
    fn highest_weight_of_standard() {
        let (h, log) = to_highest_weight(&grid("1 3/2")).unwrap();
        assert_eq!(h, grid("1 1/2"));
        assert_eq!(log, vec![CrystalOp::E(2), CrystalOp::E(1)]);
        assert!(h.is_littlewood_richardson());
    }

    #[test]
    fn lowest_weight_shift() {
        let (l, _) = to_lowest_weight(&grid("1 1/2")).unwrap();
        assert_eq!(l, grid("1 2/2"));
    }

    #[test]
    fn f_defined_counts() {
        assert!(f_defined(&Tableau::highest_weight(&"(2,1)".parse().unwrap()), 1).unwrap());
        assert!(!f_defined(&Tableau::highest_weight(&"(1,1)".parse().unwrap()), 1).unwrap());
        assert!(f_defined(&grid("2"), 1).is_err());
    }
}
