//! Jeu de taquin on ordinary and shifted skew tableaux.

use crate::entry::Entry;
use crate::error::{inv, pre, Error, Result};
use crate::tableau::{Cell, Tableau};
use crate::word::Word;
use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SlideKind {
    Inner,
    Outer,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SlideStep {
    pub kind: SlideKind,
    pub start: Cell,
    pub path: Vec<Cell>,
}

impl SlideStep {
    /// Cell moves performed by this slide.
    pub fn moves(&self) -> usize {
        self.path.len().saturating_sub(1)
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct SlideRecord {
    pub steps: Vec<SlideStep>,
}

impl SlideRecord {
    pub fn moves(&self) -> usize {
        self.steps.iter().map(SlideStep::moves).sum()
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("slide record serializes")
    }
}

/// How bare marks compare with numbers during slides.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum MarkOrder {
    /// Marks above every number (the default for outer marks).
    #[default]
    High,
    /// Marks below every number, used when the marks form the inner part.
    Low,
}

impl MarkOrder {
    /// Picks the order under which `t` is semistandard, preferring `High`.
    pub fn infer(t: &Tableau) -> MarkOrder {
        if t.num_marks() == 0 || t.is_semistandard_by(|e| e.key()) {
            MarkOrder::High
        } else if t.is_semistandard_by(|e| e.key_marks_low()) {
            MarkOrder::Low
        } else {
            MarkOrder::High
        }
    }

    fn key(self, e: &Entry) -> (u8, i64) {
        match self {
            MarkOrder::High => e.key(),
            MarkOrder::Low => e.key_marks_low(),
        }
    }
}

/// Corner selection for rectification.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum CornerPolicy {
    #[default]
    BottomRight,
    TopLeft,
}

/// Working grid: each cell carries a tag so that switching can slide one
/// tableau through another.
#[derive(Clone, Debug)]
pub(crate) struct Board {
    pub shifted: bool,
    pub order: MarkOrder,
    pub rows: Vec<Vec<Option<(Entry, u8)>>>,
}

impl Board {
    pub fn new(t: &Tableau, tag: u8, order: MarkOrder) -> Board {
        let rows = t.raw_rows().iter().map(|row| row.iter().map(|e| e.map(|e| (e, tag))).collect()).collect();
        Board { shifted: t.is_shifted(), order, rows }
    }

    /// Lays `outer`'s cells over `inner`'s.
    pub fn glued(inner: &Tableau, outer: &Tableau, order: MarkOrder) -> Result<Board> {
        Tableau::glue(inner, outer)?;
        let mut b = Board::new(inner, 0, order);
        for (r, row) in outer.raw_rows().iter().enumerate() {
            if b.rows.len() <= r {
                b.rows.push(Vec::new());
            }
            let dst = &mut b.rows[r];
            if dst.len() < row.len() {
                dst.resize(row.len(), None);
            }
            for (c, e) in row.iter().enumerate() {
                if let Some(e) = e {
                    dst[c] = Some((*e, 1));
                }
            }
        }
        Ok(b)
    }

    pub fn tableau(&self, keep: impl Fn(u8) -> bool) -> Tableau {
        let rows = self
            .rows
            .iter()
            .map(|row| row.iter().map(|c| c.and_then(|(e, t)| keep(t).then_some(e))).collect())
            .collect();
        Tableau::from_raw(rows, self.shifted)
    }

    /// Inner part (cells tagged `tag`), with later cells dropped.
    pub fn part(&self, tag: u8) -> Tableau {
        let rows = self
            .rows
            .iter()
            .map(|row| {
                let last = row.iter().rposition(|c| matches!(c, Some((_, t)) if *t == tag));
                let first = row.iter().position(|c| c.is_some()).unwrap_or(row.len());
                match last {
                    Some(l) => row[..=l].iter().map(|c| c.and_then(|(e, t)| (t == tag).then_some(e))).collect(),
                    None => vec![None; first],
                }
            })
            .collect();
        Tableau::from_raw(rows, self.shifted)
    }

    fn at(&self, (r, c): Cell) -> Option<(Entry, u8)> {
        self.rows.get(r).and_then(|row| row.get(c)).copied().flatten()
    }

    fn tagged(&self, cell: Cell, tag: u8) -> Option<Entry> {
        self.at(cell).and_then(|(e, t)| (t == tag).then_some(e))
    }

    fn put(&mut self, (r, c): Cell, v: Option<(Entry, u8)>) {
        self.rows[r][c] = v;
    }

    fn relabel(&mut self, cell: Cell, f: impl Fn(Entry) -> Entry) {
        let (e, t) = self.at(cell).unwrap();
        self.put(cell, Some((f(e), t)));
    }

    /// Moves entries tagged `tag` into the empty cell `hole` until it has no such
    /// neighbour to the right or below. Returns the path of the hole.
    pub fn inner_path(&mut self, hole: Cell, tag: u8) -> Vec<Cell> {
        let mut path = vec![hole];
        let (mut r, mut c) = hole;
        // set after a primed letter enters the diagonal from the right
        let mut diag_primed: Option<i32> = None;
        loop {
            let right = self.tagged((r, c + 1), tag);
            let below = self.tagged((r + 1, c), tag);
            let from_below = match (right, below) {
                (None, None) => break,
                (Some(_), None) => false,
                (None, Some(_)) => true,
                (Some(a), Some(b)) => {
                    let (ka, kb) = (self.order.key(&a), self.order.key(&b));
                    if ka != kb {
                        kb < ka
                    } else {
                        !b.is_primed()
                    }
                }
            };
            let src = if from_below { (r + 1, c) } else { (r, c + 1) };
            let moved = self.at(src);
            self.put((r, c), moved);
            self.put(src, None);
            if self.shifted {
                let e = moved.unwrap().0;
                if !from_below && r == c && e.is_primed() {
                    diag_primed = e.value();
                    (r, c) = src;
                    path.push(src);
                    continue;
                }
                if from_below && c == r + 1 && diag_primed.is_some() && e.value() == diag_primed {
                    // letter i' came onto the diagonal, now an i or i' rises beside it
                    if e.is_primed() {
                        self.relabel((r, c), |x| x.with_primed(false));
                    } else {
                        self.relabel((r, r), |x| x.with_primed(false));
                    }
                }
                diag_primed = None;
            }
            (r, c) = src;
            path.push(src);
        }
        path
    }

    /// Mirror of `inner_path`: moves tagged entries right/down into `hole`.
    pub fn outer_path(&mut self, hole: Cell, tag: u8) -> Vec<Cell> {
        let mut path = vec![hole];
        let (mut r, mut c) = hole;
        // set after an unprimed letter drops onto the diagonal from above
        let mut dropped: Option<i32> = None;
        loop {
            let left = if c > 0 { self.tagged((r, c - 1), tag) } else { None };
            let above = if r > 0 { self.tagged((r - 1, c), tag) } else { None };
            let from_above = match (left, above) {
                (None, None) => break,
                (Some(_), None) => false,
                (None, Some(_)) => true,
                (Some(a), Some(b)) => {
                    let (ka, kb) = (self.order.key(&a), self.order.key(&b));
                    if ka != kb {
                        kb > ka
                    } else {
                        !b.is_primed()
                    }
                }
            };
            let src = if from_above { (r - 1, c) } else { (r, c - 1) };
            let moved = self.at(src);
            self.put((r, c), moved);
            self.put(src, None);
            if self.shifted {
                let e = moved.unwrap().0;
                if from_above && r == c && !e.is_primed() {
                    dropped = e.value();
                    (r, c) = src;
                    path.push(src);
                    continue;
                }
                if !from_above && c == r + 1 && dropped.is_some() && e.value() == dropped {
                    let left_primed = e.is_primed();
                    self.relabel((r, c), |x| x.with_primed(true));
                    self.relabel((r + 1, c), |x| x.with_primed(left_primed));
                }
                dropped = None;
            }
            (r, c) = src;
            path.push(src);
        }
        path
    }

    fn row_start(&self, r: usize) -> usize {
        self.rows.get(r).map_or(usize::MAX, |row| row.iter().position(Option::is_some).unwrap_or(row.len()))
    }

    fn base(&self, r: usize) -> usize {
        if self.shifted {
            r
        } else {
            0
        }
    }

    /// Whether (r,c) lies in the inner shape.
    fn in_inner(&self, (r, c): Cell) -> bool {
        r < self.rows.len() && c >= self.base(r) && c < self.row_start(r)
    }

    pub fn inner_corners(&self) -> Vec<Cell> {
        let mut out = Vec::new();
        for r in 0..self.rows.len() {
            let s = self.row_start(r);
            if s > self.base(r) {
                let cell = (r, s - 1);
                if !self.in_inner((r + 1, s - 1)) {
                    out.push(cell);
                }
            }
        }
        out
    }

    pub fn is_outer_cocorner(&self, (r, c): Cell) -> bool {
        let len = self.rows.get(r).map_or(self.base(r), |row| row.len());
        if c != len || c < self.base(r) {
            return false;
        }
        // in a new row the cell must sit at its start
        if r >= self.rows.len() && (r > self.rows.len() || c != self.base(r)) {
            return false;
        }
        r == 0 || self.rows.get(r - 1).is_some_and(|row| c < row.len())
    }

    /// One inner slide from an inner corner, shrinking the row where the hole exits.
    pub fn inner_slide(&mut self, corner: Cell) -> Result<Vec<Cell>> {
        if !self.inner_corners().contains(&corner) {
            return Err(pre(format!("{corner:?} is not an inner corner")));
        }
        let path = self.inner_path(corner, 0);
        let (r, c) = *path.last().unwrap();
        debug_assert_eq!(c + 1, self.rows[r].len());
        self.rows[r].pop();
        Ok(path)
    }

    /// One outer slide into an addable cell; the hole ends inside the inner shape.
    pub fn outer_slide(&mut self, cell: Cell) -> Result<Vec<Cell>> {
        if !self.is_outer_cocorner(cell) {
            return Err(pre(format!("{cell:?} is not an outer co-corner")));
        }
        let (r, c) = cell;
        while self.rows.len() <= r {
            let b = self.base(self.rows.len());
            self.rows.push(vec![None; b]);
        }
        self.rows[r].push(None);
        debug_assert_eq!(self.rows[r].len(), c + 1);
        Ok(self.outer_path(cell, 0))
    }
}

fn board(t: &Tableau) -> Board {
    Board::new(t, 0, MarkOrder::infer(t))
}

pub fn inner_corners(t: &Tableau) -> Vec<Cell> {
    board(t).inner_corners()
}

pub fn inner_slide(t: &Tableau, corner: Cell) -> Result<(Tableau, Vec<Cell>)> {
    let mut b = board(t);
    let path = b.inner_slide(corner)?;
    Ok((b.tableau(|_| true), path))
}

pub fn outer_slide(t: &Tableau, cell: Cell) -> Result<(Tableau, Vec<Cell>)> {
    let mut b = board(t);
    let path = b.outer_slide(cell)?;
    Ok((b.tableau(|_| true), path))
}

/// Addable cells outside the current outer shape.
pub fn outer_cocorners(t: &Tableau) -> Vec<Cell> {
    let b = board(t);
    let n = t.num_rows();
    (0..=n)
        .map(|r| (r, b.rows.get(r).map_or(b.base(r), |row| row.len())))
        .filter(|&cell| b.is_outer_cocorner(cell))
        .collect()
}

pub fn rectify(t: &Tableau) -> (Tableau, SlideRecord) {
    rectify_with(t, CornerPolicy::default())
}

pub fn rectify_with(t: &Tableau, policy: CornerPolicy) -> (Tableau, SlideRecord) {
    let mut b = board(t);
    let rec = rectify_board(&mut b, policy);
    (b.tableau(|_| true), rec)
}

pub(crate) fn rectify_board(b: &mut Board, policy: CornerPolicy) -> SlideRecord {
    let mut steps = Vec::new();
    loop {
        let corners = b.inner_corners();
        let pick = match policy {
            CornerPolicy::BottomRight => corners.last(),
            CornerPolicy::TopLeft => corners.first(),
        };
        let Some(&corner) = pick else { break };
        let path = b.inner_slide(corner).expect("listed corner");
        steps.push(SlideStep { kind: SlideKind::Inner, start: corner, path });
    }
    SlideRecord { steps }
}

/// Replays a record backwards with slide directions flipped.
pub fn unrectify(t: &Tableau, record: &SlideRecord) -> Result<Tableau> {
    let mut b = board(t);
    unrectify_board(&mut b, record)?;
    Ok(b.tableau(|_| true))
}

pub(crate) fn unrectify_board(b: &mut Board, record: &SlideRecord) -> Result<()> {
    for step in record.steps.iter().rev() {
        let from = *step.path.last().ok_or_else(|| inv("empty slide path"))?;
        let path = match step.kind {
            SlideKind::Inner => b.outer_slide(from)?,
            SlideKind::Outer => b.inner_slide(from)?,
        };
        if path.last() != Some(&step.start) {
            return Err(Error::Shape(format!(
                "record mismatch: slide from {from:?} ended at {:?}, expected {:?}",
                path.last(),
                step.start
            )));
        }
    }
    Ok(())
}

/// Delete the corner entry, slide, and freeze `alphabet + 1 - v` where the hole exits.
pub fn evacuate_rectified_with(t: &Tableau, alphabet: i32) -> Result<Tableau> {
    if !t.is_straight() {
        return Err(pre("evacuation needs a straight shape"));
    }
    if t.entries().any(|e| e.value().is_none()) {
        return Err(pre("evacuation needs numeric entries"));
    }
    let mut b = Board::new(t, 0, MarkOrder::High);
    let mut out = t.clone();
    while b.rows.first().is_some_and(|r| r.iter().any(Option::is_some)) {
        let (e, _) = b.at((0, 0)).expect("straight board has a corner");
        b.put((0, 0), None);
        let path = b.inner_path((0, 0), 0);
        let end = *path.last().unwrap();
        b.rows[end.0].pop();
        out.set(end, e.with_value(alphabet + 1 - e.value().unwrap()));
        while b.rows.last().is_some_and(|r| r.iter().all(Option::is_none)) {
            b.rows.pop();
        }
    }
    Ok(out)
}

pub fn evacuate_rectified(t: &Tableau) -> Result<Tableau> {
    evacuate_rectified_with(t, t.max_value())
}

/// Evacuation conjugated by rectification, using the highest-weight filling of
/// the inner shape as the auxiliary tableau.
pub fn evacuate_coplactic_with(t: &Tableau, alphabet: i32) -> Result<Tableau> {
    let aux = if t.is_shifted() {
        // standard row filling: shifted slides only agree with standardization
        // when the placed letters are distinct
        let inner = t.inner();
        let before: Vec<usize> = (0..inner.length()).map(|r| inner.parts()[..r].iter().sum()).collect();
        let s = crate::tableau::SkewShape { outer: inner, inner: crate::Partition::empty(), shifted: true };
        Tableau::from_shape(&s, |(r, c)| Entry::num((before[r] + c - r + 1) as i32))
    } else {
        Tableau::highest_weight(&t.inner())
    };
    evacuate_coplactic_via(t, &aux, alphabet)
}

pub fn evacuate_coplactic(t: &Tableau) -> Result<Tableau> {
    evacuate_coplactic_with(t, t.max_value())
}

/// Same, with a caller-chosen straight auxiliary tableau of the inner shape.
pub fn evacuate_coplactic_via(t: &Tableau, aux: &Tableau, alphabet: i32) -> Result<Tableau> {
    if !aux.is_straight() || aux.outer() != t.inner() {
        return Err(pre("auxiliary tableau must fill the inner shape"));
    }
    let (rect, aux2) = crate::switching::switch_raw(aux, t)?;
    let ev = evacuate_rectified_with(&rect, alphabet)?;
    let (_, back) = crate::switching::switch_raw(&ev, &aux2)?;
    Ok(back)
}

// ---- RSK ----

/// Row insertion of a word of values; returns (insertion, recording).
pub fn rsk(w: &Word) -> Result<(Tableau, Tableau)> {
    let vals = w.values().ok_or_else(|| pre("rsk: marked letter"))?;
    let mut p: Vec<Vec<i32>> = Vec::new();
    let mut q: Vec<Vec<i32>> = Vec::new();
    for (k, &v) in vals.iter().enumerate() {
        let mut x = v;
        let mut r = 0;
        loop {
            if r == p.len() {
                p.push(vec![x]);
                q.push(vec![k as i32 + 1]);
                break;
            }
            match p[r].iter().position(|&y| y > x) {
                Some(i) => {
                    std::mem::swap(&mut p[r][i], &mut x);
                    r += 1;
                }
                None => {
                    p[r].push(x);
                    q[r].push(k as i32 + 1);
                    break;
                }
            }
        }
    }
    let mk = |rows: Vec<Vec<i32>>| {
        Tableau::straight(rows.into_iter().map(|r| r.into_iter().map(Entry::num).collect()).collect())
            .expect("rsk rows form a partition")
    };
    Ok((mk(p), mk(q)))
}

/// Inverse of `rsk` for a standard recording tableau.
pub fn inverse_rsk(p: &Tableau, q: &Tableau) -> Result<Word> {
    if p.outer() != q.outer() || !p.is_straight() || !q.is_straight() {
        return Err(pre("inverse rsk: shapes differ"));
    }
    let mut prow: Vec<Vec<i32>> = (0..p.num_rows()).map(|r| p.row(r).iter().map(|e| e.value().unwrap()).collect()).collect();
    let mut qrow: Vec<Vec<i32>> = (0..q.num_rows()).map(|r| q.row(r).iter().map(|e| e.value().unwrap()).collect()).collect();
    let n = p.len();
    let mut out = vec![0; n];
    for k in (1..=n as i32).rev() {
        let r = qrow.iter().position(|row| row.last() == Some(&k)).ok_or_else(|| pre("recording tableau not standard"))?;
        qrow[r].pop();
        let mut x = prow[r].pop().unwrap();
        for rr in (0..r).rev() {
            // rightmost entry strictly less than x
            let i = prow[rr].iter().rposition(|&y| y < x).ok_or_else(|| inv("inverse bump failed"))?;
            std::mem::swap(&mut prow[rr][i], &mut x);
        }
        out[k as usize - 1] = x;
        while prow.last().is_some_and(Vec::is_empty) {
            prow.pop();
            qrow.pop();
        }
    }
    Ok(Word::from_values(&out))
}

/// Evacuate the insertion tableau and invert RSK with the same recording tableau.
pub fn evacuate_word(w: &Word, alphabet: Option<i32>) -> Result<Word> {
    let (p, q) = rsk(w)?;
    let k = alphabet.unwrap_or_else(|| p.max_value());
    inverse_rsk(&evacuate_rectified_with(&p, k)?, &q)
}

pub fn slide_equivalent(s: &Tableau, t: &Tableau) -> Result<bool> {
    Ok(rsk(&s.reading_word())?.0 == rsk(&t.reading_word())?.0)
}

pub fn dual_equivalent(s: &Tableau, t: &Tableau) -> Result<bool> {
    Ok(s.shape() == t.shape() && rsk(&s.reading_word())?.1 == rsk(&t.reading_word())?.1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tableau::grid;

    #[test]
    fn single_slide() {
        let t = grid(". 1/1 2");
        let (s, path) = inner_slide(&t, (0, 0)).unwrap();
        assert_eq!(s, grid("1 1/2"));
        assert_eq!(path, vec![(0, 0), (1, 0), (1, 1)]);
        assert!(inner_slide(&grid("1 2"), (0, 0)).is_err());
    }

    #[test]
    fn round_trip() {
        let t = grid(". . 1 2/. 2 3/1 4");
        let (r, rec) = rectify(&t);
        assert!(r.is_straight());
        assert_eq!(unrectify(&r, &rec).unwrap(), t);
    }

    #[test]
    fn evacuation_example() {
        let t = grid("1 1 3/2 2/3 4");
        assert_eq!(evacuate_rectified(&t).unwrap(), grid("1 2 3/2 3/4 4"));
    }

    #[test]
    fn evacuate_word_example() {
        assert_eq!(evacuate_word(&"132".parse().unwrap(), None).unwrap(), "231".parse().unwrap());
        assert_eq!(evacuate_word(&"2".parse().unwrap(), Some(3)).unwrap(), "2".parse().unwrap());
        assert_eq!(evacuate_word(&"1".parse().unwrap(), Some(3)).unwrap(), "3".parse().unwrap());
    }

    #[test]
    fn rsk_round_trip() {
        let w: Word = "31221".parse().unwrap();
        let (p, q) = rsk(&w).unwrap();
        assert_eq!(inverse_rsk(&p, &q).unwrap(), w);
    }

    #[test]
    fn shifted_diagonal_rules() {
        use crate::tableau::shifted_grid;
        // outer slide into the diagonal hole: i,i turns into i' over i
        let t = shifted_grid("1 1");
        let (s, _) = outer_slide(&t, (1, 1)).unwrap();
        assert_eq!(s, shifted_grid(". 1'/. 1"));
        let t = shifted_grid("1' 1");
        let (s, _) = outer_slide(&t, (1, 1)).unwrap();
        assert_eq!(s, shifted_grid(". 1'/. 1'"));
        // and back
        let (u, _) = inner_slide(&shifted_grid(". 1'/. 1"), (0, 0)).unwrap();
        assert_eq!(u, shifted_grid("1 1"));
        let (u, _) = inner_slide(&shifted_grid(". 1'/. 1'"), (0, 0)).unwrap();
        assert_eq!(u, shifted_grid("1' 1"));
    }
}
