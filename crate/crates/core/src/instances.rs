//! Random and structured test instances, slides of whole pairs, and the step
//! bound for the local algorithms.

use crate::entry::Entry;
use crate::enumerate::lr_fillings;
use crate::error::{pre, Result};
use crate::jdt::{self, Board, MarkOrder};
use crate::partition::Partition;
use crate::switching::{self, TableauPair};
use crate::tableau::{Cell, SkewShape, Tableau};
use rand::seq::SliceRandom;
use rand::Rng;

/// |beta| (l(lambda) + l(beta)) (2 beta_1 + 2 lambda_1).
pub fn step_bound(beta: &Partition, lambda: &Partition) -> usize {
    beta.size() * (lambda.length() + beta.length()) * (2 * beta.get(0) + 2 * lambda.get(0))
}

/// Shape of the rectification (marks read as their index).
pub fn rect_shape(t: &Tableau) -> Partition {
    jdt::rectify(&switching::unmark(t)).0.outer()
}

/// Content of a numeric tableau as a partition (LR tableaux only).
pub fn content(t: &Tableau) -> Partition {
    Partition::new(t.weight().unwrap_or_default()).unwrap_or_else(|_| Partition::empty())
}

fn random_partition_in(rng: &mut impl Rng, outer: &Partition, rows: usize, cols: usize) -> Partition {
    // random walk upward from `outer`, adding up to rows*cols cells
    let mut parts: Vec<usize> = (0..rows).map(|r| outer.get(r)).collect();
    let extra = rng.gen_range(0..=rows * cols);
    for _ in 0..extra {
        let addable: Vec<usize> =
            (0..rows).filter(|&r| parts[r] < cols && (r == 0 || parts[r - 1] > parts[r])).collect();
        let Some(&r) = addable.choose(rng) else { break };
        parts[r] += 1;
    }
    Partition::new(parts).expect("walk keeps a partition")
}

/// Random linear extension of the cells of a skew shape, as marks.
pub fn random_standard(rng: &mut impl Rng, shape: &SkewShape) -> Tableau {
    let cells = shape.cells();
    let mut t = Tableau::from_shape(shape, |_| Entry::mark(0));
    let mut done = vec![false; cells.len()];
    let idx = |c: Cell| cells.iter().position(|&d| d == c);
    for k in 1..=cells.len() {
        let ready: Vec<usize> = (0..cells.len())
            .filter(|&i| !done[i])
            .filter(|&i| {
                let (r, c) = cells[i];
                let left = c.checked_sub(1).and_then(|c| idx((r, c)));
                let up = r.checked_sub(1).and_then(|r| idx((r, c)));
                [left, up].into_iter().flatten().all(|j| done[j])
            })
            .collect();
        let &i = ready.choose(rng).expect("some cell is ready");
        done[i] = true;
        t.set(cells[i], Entry::mark(k as u32));
    }
    t
}

/// Random (X, T) inside a rows x cols box: X standard marks, T LR, with
/// |c/a| at most `max_boxes`. Retries until both parts are nonempty.
pub fn random_pair(rng: &mut impl Rng, rows: usize, cols: usize, max_boxes: usize) -> TableauPair {
    loop {
        let a = random_partition_in(rng, &Partition::empty(), rows, cols / 2);
        let b = random_partition_in(rng, &a, rows, cols);
        let c = random_partition_in(rng, &b, rows, cols);
        if b == a || c == b || c.size() - a.size() > max_boxes {
            continue;
        }
        let ts = lr_fillings(&SkewShape::new(c.clone(), b.clone(), false).unwrap());
        let Some(t) = ts.choose(rng) else { continue };
        let x = random_standard(rng, &SkewShape::new(b, a, false).unwrap());
        return TableauPair { inner: x, outer: t.clone() };
    }
}

/// Slides the combined tableau: an inner slide into `cell` when it is an inner
/// corner, otherwise an outer slide into it. The inner side stays inner.
pub fn slide_pair(p: &TableauPair, cell: Cell) -> Result<TableauPair> {
    let marks_inner = p.inner.num_marks() > 0 || (p.inner.is_empty() && p.outer.num_marks() == 0);
    let order = if marks_inner { MarkOrder::Low } else { MarkOrder::High };
    let mut b = Board::new(&p.combined(), 0, order);
    if b.inner_corners().contains(&cell) {
        b.inner_slide(cell)?;
    } else if b.is_outer_cocorner(cell) {
        b.outer_slide(cell)?;
    } else {
        return Err(pre(format!("{cell:?} is neither an inner corner nor an outer co-corner")));
    }
    let s = b.tableau(|_| true);
    let (inner, outer) = s.split(|e| e.is_mark() == marks_inner)?;
    Ok(TableauPair { inner, outer })
}

/// Every cell `slide_pair` accepts for this pair.
pub fn slide_cells(p: &TableauPair) -> Vec<Cell> {
    let u = p.combined();
    let mut out = jdt::inner_corners(&u);
    // an outer slide whose hole cannot move changes nothing
    out.extend(jdt::outer_cocorners(&u).into_iter().filter(|&c| jdt::outer_slide(&u, c).is_ok_and(|(_, path)| path.len() > 1)));
    out
}

/// Grows the inner shape one cell at a time by outward slides that move
/// something, keeping the inner shape inside `bound`. Co-corners are tried top
/// row first, backtracking when the inner shape cannot reach `bound`.
/// Returns the starting pair followed by one pair per slide.
pub fn outward_family(start: &TableauPair, bound: &Partition) -> Result<Vec<TableauPair>> {
    fn grow(path: &mut Vec<TableauPair>, bound: &Partition) -> bool {
        let cur = path.last().unwrap().clone();
        if cur.inner.inner() == *bound {
            return true;
        }
        let u = cur.combined();
        for c in jdt::outer_cocorners(&u) {
            let Ok((s, moved)) = jdt::outer_slide(&u, c) else { continue };
            if moved.len() < 2 || !bound.contains(&s.inner()) {
                continue;
            }
            let Ok(next) = slide_pair(&cur, c) else { continue };
            path.push(next);
            if grow(path, bound) {
                return true;
            }
            path.pop();
        }
        false
    }
    let mut path = vec![start.clone()];
    if !grow(&mut path, bound) {
        return Err(pre(format!("no outward slides reach {bound}")));
    }
    Ok(path)
}

/// The fixed family: X of shape (2,1), T of content (4,2), grown into (5,4,3).
pub fn complexity_family() -> Result<Vec<TableauPair>> {
    let start = TableauPair::from_marked(&crate::tableau::grid("x1 x2 1 1 1 1/x3 2 2"))?;
    outward_family(&start, &Partition::new(vec![5, 4, 3])?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::rngs::StdRng;
    use rand::SeedableRng;

    #[test]
    fn random_pairs_are_valid() {
        let mut rng = StdRng::seed_from_u64(7);
        for _ in 0..50 {
            let p = random_pair(&mut rng, 3, 4, 9);
            assert!(p.outer.is_littlewood_richardson());
            assert!(p.inner.is_semistandard_by(|e| e.key()));
            assert_eq!(p.inner.len(), p.inner.num_marks());
        }
    }

    #[test]
    fn family_grows_to_bound() {
        let f = complexity_family().unwrap();
        assert_eq!(f.len(), 13);
        assert_eq!(f.last().unwrap().inner.inner(), Partition::new(vec![5, 4, 3]).unwrap());
        for p in &f {
            assert_eq!(rect_shape(&p.inner), Partition::new(vec![2, 1]).unwrap());
            assert_eq!(content(&p.outer), Partition::new(vec![4, 2]).unwrap());
        }
    }

    #[test]
    fn bound_formula() {
        let b = Partition::new(vec![2, 1]).unwrap();
        let l = Partition::new(vec![4, 2]).unwrap();
        assert_eq!(step_bound(&b, &l), 3 * 4 * 12);
    }
}
