//! Tableau switching and the bijections built from rectification around it.

use crate::entry::Entry;
use crate::error::{pre, Result};
use crate::jdt::{self, Board, CornerPolicy, MarkOrder, SlideRecord};
use crate::tableau::Tableau;

/// An inner tableau and one extending it.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TableauPair {
    pub inner: Tableau,
    pub outer: Tableau,
}

impl TableauPair {
    pub fn new(inner: Tableau, outer: Tableau) -> Result<Self> {
        Tableau::glue(&inner, &outer)?;
        Ok(TableauPair { inner, outer })
    }

    pub fn combined(&self) -> Tableau {
        Tableau::glue(&self.inner, &self.outer).expect("pair invariant")
    }

    /// Marks on one side, numbers on the other, whichever way round they sit.
    pub fn from_marked(t: &Tableau) -> Result<Self> {
        if let Ok((a, b)) = t.split(|e| e.is_mark()) {
            if !a.is_empty() || t.num_marks() == 0 {
                return Ok(TableauPair { inner: a, outer: b });
            }
        }
        let (a, b) = t.split(|e| !e.is_mark())?;
        Ok(TableauPair { inner: a, outer: b })
    }

    pub fn swap(self) -> Self {
        TableauPair { inner: self.outer, outer: self.inner }
    }
}

/// A sequence of tableaux, each extending the one before.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TableauChain {
    pub links: Vec<Tableau>,
}

impl TableauChain {
    pub fn new(links: Vec<Tableau>) -> Result<Self> {
        for w in links.windows(2) {
            Tableau::glue(&w[0], &w[1])?;
        }
        Ok(TableauChain { links })
    }

    pub fn combined(&self) -> Tableau {
        let mut it = self.links.iter();
        let Some(first) = it.next() else { return Tableau::empty(false) };
        it.fold(first.clone(), |acc, t| Tableau::glue(&acc, t).expect("chain invariant"))
    }
}

/// Bare marks become their index; everything else unchanged.
pub fn unmark(t: &Tableau) -> Tableau {
    t.map(|e| match e {
        Entry::Marked { index, tracked: None } => Entry::num(index as i32),
        e => e,
    })
}

pub fn remark(t: &Tableau) -> Tableau {
    t.map(|e| match e {
        Entry::Numeric { value, .. } => Entry::mark(value as u32),
        e => e,
    })
}

/// Switching against an empty tableau only exchanges roles.
fn trivial_swap(p: &TableauPair) -> TableauPair {
    if p.inner.is_empty() {
        TableauPair { inner: p.outer.clone(), outer: Tableau::empty_at(&p.outer.outer(), p.outer.is_shifted()) }
    } else {
        TableauPair { inner: Tableau::empty_at(&p.inner.inner(), p.inner.is_shifted()), outer: p.inner.clone() }
    }
}

fn has_marks(t: &Tableau) -> bool {
    t.num_marks() > 0
}

fn shift(t: &Tableau, by: i32) -> Tableau {
    t.map(|e| e.with_value(e.value().expect("numeric") + by))
}

/// Slides `outer` through `inner`, emptying inner cells largest first.
/// Returns (new inner, new outer, cell moves).
pub(crate) fn switch_counted(inner: &Tableau, outer: &Tableau) -> Result<(Tableau, Tableau, usize)> {
    let mut b = Board::glued(inner, outer, MarkOrder::infer(outer))?;
    let mut moves = 0;
    for cell in inner.standard_cells().into_iter().rev() {
        let (e, _) = b.rows[cell.0][cell.1].take().expect("inner cell present");
        let path = b.inner_path(cell, 1);
        moves += path.len() - 1;
        let end = *path.last().unwrap();
        b.rows[end.0][end.1] = Some((e, 0));
    }
    Ok((b.part(1), b.tableau(|t| t == 0), moves))
}

pub(crate) fn switch_raw(inner: &Tableau, outer: &Tableau) -> Result<(Tableau, Tableau)> {
    let (a, b, _) = switch_counted(inner, outer)?;
    Ok((a, b))
}

pub fn switch(p: &TableauPair) -> Result<TableauPair> {
    let (a, b) = switch_raw(&p.inner, &p.outer)?;
    Ok(TableauPair { inner: a, outer: b })
}

/// Oracle runs also report elementary steps (cell moves).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Counted<T> {
    pub value: T,
    pub moves: usize,
}

fn numeric_sides(p: &TableauPair) -> Result<(Tableau, Tableau)> {
    let x = unmark(&p.inner);
    let t = unmark(&p.outer);
    if !x.is_semistandard() || !t.is_semistandard() {
        return Err(pre("pair is not semistandard"));
    }
    Ok((x, t))
}

/// Rectify the union, switch, unrectify.
pub fn coswitch_counted(p: &TableauPair) -> Result<Counted<TableauPair>> {
    let (x, t) = numeric_sides(p)?;
    if x.is_empty() || t.is_empty() {
        return Ok(Counted { value: trivial_swap(p), moves: 0 });
    }
    let m = x.max_value();
    let u = Tableau::union(&x, &t)?;
    let mut b = Board::new(&u, 0, MarkOrder::High);
    let rec = jdt::rectify_board(&mut b, CornerPolicy::default());
    let rect = b.tableau(|_| true);
    let (rx, rt) = rect.split(|e| e.value().unwrap() <= m)?;
    let (st, sx, sw) = switch_counted(&rx, &shift(&rt, -m))?;
    let back = Tableau::union(&st, &sx)?;
    let tmax = st.max_value();
    let mut b = Board::new(&back, 0, MarkOrder::High);
    jdt::unrectify_board(&mut b, &rec)?;
    let un = b.tableau(|_| true);
    let (nt, nx) = un.split(|e| e.value().unwrap() <= tmax)?;
    let nx = shift(&nx, -tmax);
    let value = TableauPair {
        inner: if has_marks(&p.outer) { remark(&nt) } else { nt },
        outer: if has_marks(&p.inner) { remark(&nx) } else { nx },
    };
    Ok(Counted { value, moves: 2 * rec.moves() + sw })
}

pub fn coswitch(p: &TableauPair) -> Result<TableauPair> {
    Ok(coswitch_counted(p)?.value)
}

/// Evacuation conjugated by rectification, keeping marks as marks.
pub fn evacuate_marked(t: &Tableau) -> Result<Tableau> {
    let n = unmark(t);
    let e = jdt::evacuate_coplactic(&n)?;
    Ok(if has_marks(t) { remark(&e) } else { e })
}

pub fn pesh_counted(p: &TableauPair) -> Result<Counted<TableauPair>> {
    let x = unmark(&p.inner);
    let ex = jdt::evacuate_coplactic(&x)?;
    let ex = if has_marks(&p.inner) { remark(&ex) } else { ex };
    coswitch_counted(&TableauPair { inner: ex, outer: p.outer.clone() })
}

pub fn pesh(p: &TableauPair) -> Result<TableauPair> {
    Ok(pesh_counted(p)?.value)
}

/// The two parts of the evacuated union.
pub fn evacuate_pair(p: &TableauPair) -> Result<TableauPair> {
    let (x, t) = numeric_sides(p)?;
    if x.is_empty() && t.is_empty() {
        return Ok(p.clone());
    }
    let u = Tableau::union(&x, &t)?;
    let e = jdt::evacuate_coplactic(&u)?;
    let tmax = t.max_value();
    let (nt, nx) = e.split(|e| e.value().unwrap() <= tmax)?;
    let nx = shift(&nx, -tmax);
    Ok(TableauPair {
        inner: if has_marks(&p.outer) { remark(&nt) } else { nt },
        outer: if has_marks(&p.inner) { remark(&nx) } else { nx },
    })
}

/// Reverses links i..=j (1-based) by rectifying them together, switching
/// adjacent links into reverse order, and unrectifying.
pub fn coswitch_chain(chain: &TableauChain, i: usize, j: usize) -> Result<TableauChain> {
    let r = chain.links.len();
    if i < 1 || i > j || j > r {
        return Err(pre(format!("chain indices {i}..{j} out of range 1..{r}")));
    }
    if i == j {
        return Ok(chain.clone());
    }
    let marked: Vec<bool> = chain.links.iter().map(has_marks).collect();
    let nums: Vec<Tableau> = chain.links.iter().map(unmark).collect();
    // the outer links stay where they are; rectify the block i..j inside them
    let block = &nums[i - 1..j];
    let mut offsets = Vec::new();
    let mut u = block[0].clone();
    let mut acc = block[0].max_value();
    offsets.push(0);
    for t in &block[1..] {
        offsets.push(acc);
        u = Tableau::glue(&u, &shift(t, acc))?;
        acc += t.max_value();
    }
    let mut b = Board::new(&u, 0, MarkOrder::High);
    let rec = jdt::rectify_board(&mut b, CornerPolicy::default());
    let rect = b.tableau(|_| true);
    let mut parts: Vec<Tableau> = Vec::new();
    let mut rest = rect;
    for k in 0..block.len() {
        let hi = offsets.get(k + 1).copied().unwrap_or(i32::MAX);
        let (a, b) = rest.split(|e| e.value().unwrap() <= hi)?;
        parts.push(shift(&a, -offsets[k]));
        rest = b;
    }
    // bubble the block into reverse order with adjacent switches
    let n = parts.len();
    let mut order: Vec<usize> = (0..n).collect();
    for pass in 0..n {
        for k in 0..n - 1 - pass {
            let (a, b) = switch_raw(&parts[k], &parts[k + 1])?;
            parts[k] = a;
            parts[k + 1] = b;
            order.swap(k, k + 1);
        }
    }
    let mut u = parts[0].clone();
    let mut acc = parts[0].max_value();
    let mut bounds = vec![0];
    for t in &parts[1..] {
        bounds.push(acc);
        u = Tableau::glue(&u, &shift(t, acc))?;
        acc += t.max_value();
    }
    let mut b = Board::new(&u, 0, MarkOrder::High);
    jdt::unrectify_board(&mut b, &rec)?;
    let mut rest = b.tableau(|_| true);
    let mut links = chain.links[..i - 1].to_vec();
    for k in 0..n {
        let hi = bounds.get(k + 1).copied().unwrap_or(i32::MAX);
        let (a, b) = rest.split(|e| e.value().unwrap() <= hi)?;
        let a = shift(&a, -bounds[k]);
        links.push(if marked[i - 1 + order[k]] { remark(&a) } else { a });
        rest = b;
    }
    links.extend_from_slice(&chain.links[j..]);
    TableauChain::new(links)
}

/// Monodromy: switch after coswitch.
pub fn monodromy_omega(p: &TableauPair) -> Result<TableauPair> {
    switch(&coswitch(p)?)
}

pub fn is_fixed_point(p: &TableauPair) -> Result<bool> {
    Ok(monodromy_omega(p)? == *p)
}

/// Straight-shape switch used by the row-data comparison: rows of the
/// switched inner tableau after rectifying the pair.
pub fn rectified_switch(p: &TableauPair) -> Result<(TableauPair, SlideRecord)> {
    let (x, t) = numeric_sides(p)?;
    let m = x.max_value();
    let u = Tableau::union(&x, &t)?;
    let (rect, rec) = jdt::rectify(&u);
    let (rx, rt) = rect.split(|e| e.value().unwrap() <= m)?;
    let (st, sx) = switch_raw(&rx, &shift(&rt, -m))?;
    Ok((TableauPair { inner: st, outer: sx }, rec))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tableau::grid;

    fn pair(s: &str) -> TableauPair {
        TableauPair::from_marked(&grid(s)).unwrap()
    }

    #[test]
    fn from_marked_sides() {
        let p = pair(". x1 x3 1/x2 1 1/1 2 2");
        assert_eq!(p.inner.len(), 3);
        assert!(p.inner.entries().all(|e| e.is_mark()));
        let q = pair(". 1 1 1/1 2 x2/2 x1 x3");
        assert_eq!(q.outer.len(), 3);
    }

    #[test]
    fn empty_sides() {
        let p = pair("1 1/2");
        assert_eq!(switch(&p).unwrap().combined(), p.combined());
    }

    fn numeric_pair(x: &str, t: &str) -> TableauPair {
        TableauPair::new(grid(x), grid(t)).unwrap()
    }

    fn figure_pair() -> TableauPair {
        numeric_pair(". . 1 2/. 2 2/1", ". . . . 1/. . . 3/. 2 3")
    }

    #[test]
    fn switch_figure() {
        let s = switch(&figure_pair()).unwrap();
        assert_eq!(s.inner, grid(". . 1 3/. 2 3"));
        assert_eq!(s.outer, grid(". . . . 2/. . . 1/1 2 2"));
    }

    #[test]
    fn coswitch_figure() {
        let s = coswitch(&figure_pair()).unwrap();
        assert_eq!(s.inner, grid(". . 3 3/. 1/2"));
        assert_eq!(s.outer, grid(". . . . 2/. . 1 2/. 1 2"));
    }

    #[test]
    fn evacuate_figure() {
        let s = evacuate_pair(&figure_pair()).unwrap();
        assert_eq!(s.inner, grid(". . 1 2/. 1/3"));
        assert_eq!(s.outer, grid(". . . . 2/. . 1 1/. 1 2"));
    }
}
