use serde::{Deserialize, Serialize};
use std::fmt;

/// Weakly decreasing sequence of row lengths. Trailing zeros are dropped.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize, Deserialize)]
pub struct Partition(Vec<usize>);

impl Partition {
    pub fn new(mut parts: Vec<usize>) -> Result<Self, crate::Error> {
        while parts.last() == Some(&0) {
            parts.pop();
        }
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(crate::Error::Shape(format!("not a partition: {parts:?}")));
        }
        Ok(Partition(parts))
    }

    /// Builds without the monotonicity check; trailing zeros are still trimmed.
    pub(crate) fn from_parts_unchecked(mut parts: Vec<usize>) -> Self {
        while parts.last() == Some(&0) {
            parts.pop();
        }
        Partition(parts)
    }

    pub fn empty() -> Self {
        Partition(Vec::new())
    }

    pub fn parts(&self) -> &[usize] {
        &self.0
    }

    pub fn get(&self, r: usize) -> usize {
        self.0.get(r).copied().unwrap_or(0)
    }

    pub fn size(&self) -> usize {
        self.0.iter().sum()
    }

    pub fn length(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, other: &Partition) -> bool {
        (0..other.length()).all(|r| other.get(r) <= self.get(r))
    }

    pub fn is_strict(&self) -> bool {
        self.0.windows(2).all(|w| w[0] > w[1])
    }

    /// All partitions with at most `rows` parts, each at most `cols`.
    pub fn all_in_box(rows: usize, cols: usize) -> Vec<Partition> {
        let mut out = Vec::new();
        let mut cur = Vec::new();
        fn rec(rows: usize, cap: usize, cur: &mut Vec<usize>, out: &mut Vec<Partition>) {
            out.push(Partition::from_parts_unchecked(cur.clone()));
            if cur.len() == rows {
                return;
            }
            for p in 1..=cap {
                cur.push(p);
                rec(rows, p, cur, out);
                cur.pop();
            }
        }
        rec(rows, cols, &mut cur, &mut out);
        out
    }

    /// Strict partitions contained in the staircase (h, h-1, ..., 1).
    pub fn strict_in_staircase(h: usize) -> Vec<Partition> {
        let mut out = Vec::new();
        let mut cur = Vec::new();
        fn rec(h: usize, cap: usize, cur: &mut Vec<usize>, out: &mut Vec<Partition>) {
            out.push(Partition::from_parts_unchecked(cur.clone()));
            let r = cur.len();
            if r == h {
                return;
            }
            let cap = cap.min(h - r);
            for p in 1..=cap {
                cur.push(p);
                rec(h, p - 1, cur, out);
                cur.pop();
            }
        }
        rec(h, h, &mut cur, &mut out);
        out
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, p) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, ")")
    }
}

impl std::str::FromStr for Partition {
    type Err = crate::Error;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let inner = s.trim().trim_start_matches('(').trim_end_matches(')');
        if inner.trim().is_empty() {
            return Ok(Partition::empty());
        }
        let parts = inner
            .split(',')
            .map(|p| p.trim().parse::<usize>())
            .collect::<Result<Vec<_>, _>>()
            .map_err(|e| crate::Error::Parse(format!("bad partition {s:?}: {e}")))?;
        Partition::new(parts)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn trims_and_checks() {
        assert_eq!(Partition::new(vec![3, 1, 0, 0]).unwrap().parts(), &[3, 1]);
        assert!(Partition::new(vec![1, 2]).is_err());
        assert_eq!("(4,2)".parse::<Partition>().unwrap().size(), 6);
        assert_eq!("()".parse::<Partition>().unwrap(), Partition::empty());
    }

    #[test]
    fn box_counts() {
        // binomial(3+4, 3)
        assert_eq!(Partition::all_in_box(3, 4).len(), 35);
        // subsets of {1,2,3,4}
        assert_eq!(Partition::strict_in_staircase(4).len(), 16);
    }
}
