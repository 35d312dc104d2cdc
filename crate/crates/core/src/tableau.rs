use crate::entry::Entry;
use crate::error::{pre, Error, Result};
use crate::partition::Partition;
use crate::word::Word;
use serde_json::{json, Value};
use std::fmt;

pub type Cell = (usize, usize);

/// Outer and inner shape. For shifted shapes row r is indented r columns.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SkewShape {
    pub outer: Partition,
    pub inner: Partition,
    pub shifted: bool,
}

impl SkewShape {
    pub fn new(outer: Partition, inner: Partition, shifted: bool) -> Result<Self> {
        if !outer.contains(&inner) {
            return Err(Error::Shape(format!("{inner} not inside {outer}")));
        }
        if shifted && !(outer.is_strict() && inner.is_strict()) {
            return Err(Error::Shape("shifted shapes need strict partitions".into()));
        }
        Ok(SkewShape { outer, inner, shifted })
    }

    pub fn offset(&self, r: usize) -> usize {
        if self.shifted {
            r
        } else {
            0
        }
    }

    /// Row-major, top to bottom.
    pub fn cells(&self) -> Vec<Cell> {
        let mut out = Vec::new();
        for r in 0..self.outer.length() {
            let o = self.offset(r);
            for c in o + self.inner.get(r)..o + self.outer.get(r) {
                out.push((r, c));
            }
        }
        out
    }

    pub fn size(&self) -> usize {
        self.outer.size() - self.inner.size()
    }
}

/// Filling of a skew shape, stored on absolute columns.
///
/// Each row is a run of `None` (inner shape, plus the staircase indent for
/// shifted tableaux) followed by the row's entries.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Tableau {
    shifted: bool,
    rows: Vec<Vec<Option<Entry>>>,
}

impl Tableau {
    pub fn empty(shifted: bool) -> Self {
        Tableau { shifted, rows: Vec::new() }
    }

    /// No cells; inner and outer shape both `shape`.
    pub fn empty_at(shape: &Partition, shifted: bool) -> Self {
        let s = SkewShape { outer: shape.clone(), inner: shape.clone(), shifted };
        Tableau::from_shape(&s, |_| unreachable!())
    }

    pub fn from_rows(rows: Vec<Vec<Option<Entry>>>, shifted: bool) -> Result<Self> {
        let t = Tableau { shifted, rows }.normalized();
        t.validate()?;
        Ok(t)
    }

    /// Straight shape, no padding.
    pub fn straight(rows: Vec<Vec<Entry>>) -> Result<Self> {
        Self::from_rows(rows.into_iter().map(|r| r.into_iter().map(Some).collect()).collect(), false)
    }

    /// Shifted straight shape: row r gets r cells of indent.
    pub fn shifted_straight(rows: Vec<Vec<Entry>>) -> Result<Self> {
        let rows = rows
            .into_iter()
            .enumerate()
            .map(|(r, row)| std::iter::repeat_n(None, r).chain(row.into_iter().map(Some)).collect())
            .collect();
        Self::from_rows(rows, true)
    }

    pub fn from_shape(shape: &SkewShape, fill: impl Fn(Cell) -> Entry) -> Self {
        let mut rows = Vec::new();
        for r in 0..shape.outer.length() {
            let o = shape.offset(r);
            let mut row = vec![None; o + shape.outer.get(r)];
            for (c, slot) in row.iter_mut().enumerate().skip(o + shape.inner.get(r)) {
                *slot = Some(fill((r, c)));
            }
            rows.push(row);
        }
        Tableau { shifted: shape.shifted, rows }.normalized()
    }

    fn normalized(mut self) -> Self {
        for (r, row) in self.rows.iter_mut().enumerate() {
            let base = if self.shifted { r } else { 0 };
            if row.len() < base {
                row.resize(base, None);
            }
        }
        while let Some(last) = self.rows.last() {
            let base = if self.shifted { self.rows.len() - 1 } else { 0 };
            if last.len() <= base && last.iter().all(Option::is_none) {
                self.rows.pop();
            } else {
                break;
            }
        }
        self
    }

    fn validate(&self) -> Result<()> {
        for (r, row) in self.rows.iter().enumerate() {
            let first = row.iter().position(Option::is_some).unwrap_or(row.len());
            if row[first..].iter().any(Option::is_none) {
                return Err(Error::Shape(format!("row {r} has a gap")));
            }
            if self.shifted && first < r && first < row.len() {
                return Err(Error::Shape(format!("row {r} starts left of the diagonal")));
            }
        }
        let outer = self.outer_parts();
        let inner = self.inner_parts();
        let check = |p: &[usize], what: &str| -> Result<()> {
            let ok = if self.shifted {
                p.windows(2).all(|w| w[0] > w[1] || w[1] == 0)
            } else {
                p.windows(2).all(|w| w[0] >= w[1])
            };
            if ok {
                Ok(())
            } else {
                Err(Error::Shape(format!("{what} shape {p:?} is not a valid partition")))
            }
        };
        check(&outer, "outer")?;
        check(&inner, "inner")?;
        if self.shifted {
            // zeros may only trail
            if inner.iter().skip_while(|&&x| x > 0).any(|&x| x > 0) {
                return Err(Error::Shape(format!("inner shape {inner:?} is not strict")));
            }
        }
        Ok(())
    }

    fn base(&self, r: usize) -> usize {
        if self.shifted {
            r
        } else {
            0
        }
    }

    fn outer_parts(&self) -> Vec<usize> {
        self.rows.iter().enumerate().map(|(r, row)| row.len() - self.base(r)).collect()
    }

    fn inner_parts(&self) -> Vec<usize> {
        self.rows
            .iter()
            .enumerate()
            .map(|(r, row)| row.iter().position(Option::is_some).unwrap_or(row.len()) - self.base(r))
            .collect()
    }

    pub fn is_shifted(&self) -> bool {
        self.shifted
    }

    pub fn outer(&self) -> Partition {
        Partition::from_parts_unchecked(self.outer_parts())
    }

    pub fn inner(&self) -> Partition {
        Partition::from_parts_unchecked(self.inner_parts())
    }

    pub fn shape(&self) -> SkewShape {
        SkewShape { outer: self.outer(), inner: self.inner(), shifted: self.shifted }
    }

    pub fn num_rows(&self) -> usize {
        self.rows.len()
    }

    pub fn raw_rows(&self) -> &[Vec<Option<Entry>>] {
        &self.rows
    }

    /// Trusted constructor for algorithm output; normalizes but skips validation.
    pub(crate) fn from_raw(rows: Vec<Vec<Option<Entry>>>, shifted: bool) -> Tableau {
        Tableau { shifted, rows }.normalized()
    }

    /// Entries of row r, left to right.
    pub fn row(&self, r: usize) -> Vec<Entry> {
        self.rows.get(r).map(|row| row.iter().flatten().copied().collect()).unwrap_or_default()
    }

    /// First column holding an entry in row r (= row length if none).
    pub fn row_start(&self, r: usize) -> usize {
        self.rows[r].iter().position(Option::is_some).unwrap_or(self.rows[r].len())
    }

    pub fn row_end(&self, r: usize) -> usize {
        self.rows[r].len()
    }

    pub fn get(&self, (r, c): Cell) -> Option<Entry> {
        self.rows.get(r).and_then(|row| row.get(c)).copied().flatten()
    }

    /// Overwrites an existing cell.
    pub fn set(&mut self, (r, c): Cell, e: Entry) {
        let slot = &mut self.rows[r][c];
        assert!(slot.is_some(), "set on empty cell ({r},{c})");
        *slot = Some(e);
    }

    pub fn len(&self) -> usize {
        self.rows.iter().map(|r| r.iter().flatten().count()).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn is_straight(&self) -> bool {
        self.inner().is_empty()
    }

    pub fn cells(&self) -> Vec<Cell> {
        let mut out = Vec::new();
        for (r, row) in self.rows.iter().enumerate() {
            for (c, e) in row.iter().enumerate() {
                if e.is_some() {
                    out.push((r, c));
                }
            }
        }
        out
    }

    /// Cells bottom row first, each row left to right.
    pub fn reading_cells(&self) -> Vec<Cell> {
        let mut out = Vec::with_capacity(self.len());
        for (r, row) in self.rows.iter().enumerate().rev() {
            for (c, e) in row.iter().enumerate() {
                if e.is_some() {
                    out.push((r, c));
                }
            }
        }
        out
    }

    pub fn reading_word(&self) -> Word {
        Word(self.reading_cells().into_iter().map(|c| self.get(c).unwrap()).collect())
    }

    /// Same shape, entries replaced in reading order.
    pub fn with_reading_word(&self, w: &[Entry]) -> Tableau {
        assert_eq!(w.len(), self.len(), "word length does not match tableau");
        let mut t = self.clone();
        for (cell, e) in self.reading_cells().into_iter().zip(w) {
            t.set(cell, *e);
        }
        t
    }

    pub fn map(&self, f: impl Fn(Entry) -> Entry) -> Tableau {
        let rows = self.rows.iter().map(|row| row.iter().map(|e| e.map(&f)).collect()).collect();
        Tableau { shifted: self.shifted, rows }
    }

    pub fn entries(&self) -> impl Iterator<Item = Entry> + '_ {
        self.rows.iter().flat_map(|r| r.iter().flatten().copied())
    }

    pub fn all_numeric(&self) -> bool {
        self.entries().all(|e| e.is_numeric())
    }

    pub fn max_value(&self) -> i32 {
        self.entries().filter_map(|e| e.value()).max().unwrap_or(0)
    }

    pub fn num_marks(&self) -> usize {
        self.entries().filter(|e| e.is_mark()).count()
    }

    /// Counts of each value 1..=max; primed and unprimed together.
    pub fn weight(&self) -> Result<Vec<usize>> {
        let mut w = Vec::new();
        for e in self.entries() {
            let v = e.value().ok_or_else(|| pre("weight: marked entry"))?;
            if v < 1 {
                return Err(pre("weight: nonpositive entry"));
            }
            if w.len() < v as usize {
                w.resize(v as usize, 0);
            }
            w[v as usize - 1] += 1;
        }
        Ok(w)
    }

    /// Rows weakly increase, columns strictly increase (type A); the shifted
    /// rules when the tableau is shifted or carries primes.
    pub fn is_semistandard(&self) -> bool {
        if self.entries().any(|e| e.is_mark()) {
            return false;
        }
        self.is_semistandard_by(|e| e.key())
    }

    /// Semistandard with respect to an arbitrary key (used for tableaux with marks).
    pub fn is_semistandard_by<K: Ord>(&self, key: impl Fn(&Entry) -> K) -> bool {
        let primes = self.shifted || self.entries().any(|e| e.is_primed());
        let ok = |a: Entry, b: Entry, along_row: bool| -> bool {
            let (ka, kb) = (key(&a), key(&b));
            if ka != kb {
                return ka < kb;
            }
            if !primes {
                return along_row;
            }
            // equal letters: unprimed may repeat in rows, primed in columns
            if along_row {
                !a.is_primed()
            } else {
                a.is_primed()
            }
        };
        for (r, c) in self.cells() {
            let e = self.get((r, c)).unwrap();
            if let Some(right) = self.get((r, c + 1)) {
                if !ok(e, right, true) {
                    return false;
                }
            }
            if let Some(below) = self.get((r + 1, c)) {
                if !ok(e, below, false) {
                    return false;
                }
            }
        }
        true
    }

    /// Semistandard with values exactly 1..n, each once.
    pub fn is_standard(&self) -> bool {
        if !self.is_semistandard() || self.entries().any(|e| e.is_primed()) {
            return false;
        }
        let mut v: Vec<i32> = self.entries().map(|e| e.value().unwrap()).collect();
        v.sort_unstable();
        v.iter().enumerate().all(|(i, &x)| x == i as i32 + 1)
    }

    /// Cells in standardization order of the entries (least first).
    pub fn standard_cells(&self) -> Vec<Cell> {
        let cells = self.reading_cells();
        let letters: Vec<Entry> = cells.iter().map(|&c| self.get(c).unwrap()).collect();
        crate::word::standard_order(&letters).into_iter().map(|i| cells[i]).collect()
    }

    pub fn standardize(&self) -> Result<Tableau> {
        let w = self.reading_word().standardize()?;
        Ok(self.with_reading_word(&w.0))
    }

    pub fn canonical_form(&self) -> Tableau {
        self.with_reading_word(&self.reading_word().canonical_form().0)
    }

    pub fn is_canonical(&self) -> bool {
        self.reading_word().is_canonical()
    }

    /// Keep only cells matching `keep`, as the inner part of this tableau: earlier
    /// cells in a row become padding, later ones are dropped.
    pub fn restrict(&self, keep: impl Fn(Entry) -> bool) -> Result<Tableau> {
        let mut rows = Vec::with_capacity(self.rows.len());
        for (r, row) in self.rows.iter().enumerate() {
            let kept: Vec<usize> =
                (0..row.len()).filter(|&c| row[c].map(&keep).unwrap_or(false)).collect();
            let mut new_row: Vec<Option<Entry>>;
            match (kept.first(), kept.last()) {
                (Some(&a), Some(&b)) => {
                    if b - a + 1 != kept.len() {
                        return Err(Error::Shape(format!("restricted row {r} is not contiguous")));
                    }
                    new_row = vec![None; b + 1];
                    for c in a..=b {
                        new_row[c] = row[c];
                    }
                }
                _ => {
                    let start = row.iter().position(Option::is_some).unwrap_or(row.len());
                    new_row = vec![None; start];
                }
            }
            rows.push(new_row);
        }
        Tableau::from_rows(rows, self.shifted)
    }

    /// Splits into (cells matching `first`, the rest) as an inner/outer pair.
    pub fn split(&self, first: impl Fn(Entry) -> bool + Copy) -> Result<(Tableau, Tableau)> {
        let a = self.restrict(first)?;
        // the outer part keeps everything, with the first part's cells as padding
        let mut rows = self.rows.clone();
        for (r, row) in rows.iter_mut().enumerate() {
            for c in 0..a.rows.get(r).map_or(0, |x| x.len()) {
                if row[c].is_some_and(|e| !first(e)) {
                    return Err(Error::Shape("split: parts interleave".into()));
                }
                row[c] = None;
            }
        }
        let b = Tableau::from_rows(rows, self.shifted)?;
        if b.entries().any(first) {
            return Err(Error::Shape("split: parts interleave".into()));
        }
        Ok((a, b))
    }

    /// Concatenates an inner tableau and one extending it, entries untouched.
    pub fn glue(inner: &Tableau, outer: &Tableau) -> Result<Tableau> {
        if inner.shifted != outer.shifted {
            return Err(Error::Shape("glue: mixed shifted flags".into()));
        }
        if inner.outer() != outer.inner() {
            return Err(pre(format!(
                "outer tableau does not extend inner ({} vs {})",
                inner.outer(),
                outer.inner()
            )));
        }
        let n = inner.rows.len().max(outer.rows.len());
        let mut rows = Vec::with_capacity(n);
        for r in 0..n {
            let a = inner.rows.get(r);
            let b = outer.rows.get(r);
            let len = a.map_or(0, |x| x.len()).max(b.map_or(0, |x| x.len()));
            let mut row = vec![None; len];
            if let Some(a) = a {
                row[..a.len()].copy_from_slice(a);
            }
            if let Some(b) = b {
                for (c, e) in b.iter().enumerate() {
                    if e.is_some() {
                        row[c] = *e;
                    }
                }
            }
            rows.push(row);
        }
        Tableau::from_rows(rows, inner.shifted)
    }

    /// X ⊔ T: T's values raised by max(X).
    pub fn union(x: &Tableau, t: &Tableau) -> Result<Tableau> {
        if !x.all_numeric() || !t.all_numeric() {
            return Err(pre("union: entries must be numeric"));
        }
        let m = x.max_value();
        Tableau::glue(x, &t.map(|e| e.with_value(e.value().unwrap() + m)))
    }

    /// Row i filled with i.
    pub fn highest_weight(shape: &Partition) -> Tableau {
        let s = SkewShape { outer: shape.clone(), inner: Partition::empty(), shifted: false };
        Tableau::from_shape(&s, |(r, _)| Entry::num(r as i32 + 1))
    }

    pub fn shifted_highest_weight(shape: &Partition) -> Tableau {
        let s = SkewShape { outer: shape.clone(), inner: Partition::empty(), shifted: true };
        Tableau::from_shape(&s, |(r, _)| Entry::num(r as i32 + 1))
    }

    /// Semistandard with reverse-ballot reading word.
    pub fn is_littlewood_richardson(&self) -> bool {
        self.is_semistandard() && !self.entries().any(|e| e.is_primed()) && self.reading_word().is_reverse_ballot()
    }

    /// Same cells and entries, flagged as shifted or not. The cells must be valid in the new geometry.
    pub fn reinterpret(&self, shifted: bool) -> Result<Tableau> {
        Tableau::from_rows(self.rows.clone(), shifted)
    }

    // ---- text grid ----

    pub fn to_grid(&self) -> String {
        let mut s = String::new();
        for row in &self.rows {
            let toks: Vec<String> =
                row.iter().map(|e| e.map_or_else(|| ".".to_string(), |e| e.to_string())).collect();
            s.push_str(&toks.join(" "));
            s.push('\n');
        }
        s
    }

    pub fn from_grid(text: &str, shifted: bool) -> Result<Tableau> {
        let mut rows = Vec::new();
        let lines: Vec<&str> = text.lines().collect();
        let last = lines.iter().rposition(|l| !l.trim().is_empty()).map_or(0, |i| i + 1);
        for line in &lines[..last] {
            let row = line
                .split_whitespace()
                .map(|tok| if tok == "." { Ok(None) } else { tok.parse().map(Some) })
                .collect::<Result<Vec<_>>>()?;
            rows.push(row);
        }
        let t = Tableau::from_rows(rows, shifted)?;
        let mut seen = std::collections::HashSet::new();
        for e in t.entries() {
            if let Some(k) = e.mark_index() {
                if !seen.insert(k) {
                    return Err(Error::Parse(format!("mark index {k} repeated")));
                }
            }
        }
        Ok(t)
    }

    pub fn to_json(&self) -> Value {
        let rows: Vec<Value> = self
            .rows
            .iter()
            .map(|row| {
                Value::Array(
                    row.iter()
                        .map(|e| match e {
                            None => Value::Null,
                            Some(Entry::Numeric { value, primed: false }) => json!(value),
                            Some(e) => json!(e.to_string()),
                        })
                        .collect(),
                )
            })
            .collect();
        json!({ "rows": rows })
    }

    pub fn from_json(v: &Value, shifted: bool) -> Result<Tableau> {
        let bad = |m: &str| Error::Parse(format!("json tableau: {m}"));
        let rows = v.get("rows").and_then(Value::as_array).ok_or_else(|| bad("missing rows"))?;
        let mut out = Vec::new();
        for row in rows {
            let row = row.as_array().ok_or_else(|| bad("row is not an array"))?;
            let mut r = Vec::new();
            for cell in row {
                r.push(match cell {
                    Value::Null => None,
                    Value::Number(n) => {
                        let v = n.as_i64().ok_or_else(|| bad("non-integer"))?;
                        Some(Entry::num(v as i32))
                    }
                    Value::String(s) => Some(s.parse()?),
                    _ => return Err(bad("bad cell")),
                });
            }
            out.push(r);
        }
        Tableau::from_rows(out, shifted)
    }
}

impl fmt::Display for Tableau {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_grid())
    }
}

/// Grid literal for tests and examples: rows separated by `/`, cells by spaces.
pub fn grid(s: &str) -> Tableau {
    Tableau::from_grid(&s.replace('/', "\n"), false).expect("bad grid literal")
}

pub fn shifted_grid(s: &str) -> Tableau {
    Tableau::from_grid(&s.replace('/', "\n"), true).expect("bad shifted grid literal")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reading_word_example() {
        let t = grid("1 1 3/2 2/3 4");
        assert_eq!(t.reading_word().to_string(), "3 4 2 2 1 1 3");
        assert!(Tableau::empty(false).reading_word().is_empty());
    }

    #[test]
    fn shape_and_weight() {
        let t = grid(". x1 x3 1/x2 1 1/1 2 2");
        assert_eq!(t.inner().parts(), &[1]);
        assert_eq!(t.outer().parts(), &[4, 3, 3]);
        let (x, tt) = t.split(|e| e.is_mark()).unwrap();
        assert_eq!(x.len(), 3);
        assert_eq!(tt.weight().unwrap(), vec![4, 2]);
        assert!(tt.is_littlewood_richardson());
        assert_eq!(Tableau::glue(&x, &tt).unwrap(), t);
    }

    #[test]
    fn grid_round_trip() {
        let t = grid(". . 2'/. x1/3_2");
        assert_eq!(Tableau::from_grid(&t.to_grid(), false).unwrap(), t);
        assert_eq!(Tableau::from_json(&t.to_json(), false).unwrap(), t);
    }

    #[test]
    fn rejects_gaps() {
        assert!(Tableau::from_grid("1 . 2", false).is_err());
        assert!(Tableau::from_grid("1\n1 2", false).is_err());
        assert!(Tableau::from_grid("1 2\n3", true).is_err());
    }

    #[test]
    fn highest_weight_is_lr() {
        for p in Partition::all_in_box(3, 3) {
            assert!(Tableau::highest_weight(&p).is_littlewood_richardson());
        }
        assert!(!grid("2").is_littlewood_richardson());
    }
}
