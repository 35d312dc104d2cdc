//! Exhaustive generators for small shapes and fillings.

use crate::entry::Entry;
use crate::partition::Partition;
use crate::switching::TableauPair;
use crate::tableau::{Cell, SkewShape, Tableau};
use std::collections::HashSet;

fn in_shape(cells: &HashSet<Cell>, c: Option<Cell>) -> bool {
    c.is_some_and(|c| cells.contains(&c))
}

fn left((r, c): Cell) -> Option<Cell> {
    c.checked_sub(1).map(|c| (r, c))
}

fn up((r, c): Cell) -> Option<Cell> {
    r.checked_sub(1).map(|r| (r, c))
}

/// Standard fillings by 1..n (linear extensions of the cell poset).
pub fn standard_fillings(shape: &SkewShape) -> Vec<Tableau> {
    let cells = shape.cells();
    let set: HashSet<Cell> = cells.iter().copied().collect();
    let blank = Tableau::from_shape(shape, |_| Entry::num(0));
    let mut out = Vec::new();
    let mut filled = HashSet::new();
    let mut cur = blank.clone();
    fn go(
        k: i32,
        cells: &[Cell],
        set: &HashSet<Cell>,
        filled: &mut HashSet<Cell>,
        cur: &mut Tableau,
        out: &mut Vec<Tableau>,
    ) {
        if filled.len() == cells.len() {
            out.push(cur.clone());
            return;
        }
        for &c in cells {
            if filled.contains(&c) {
                continue;
            }
            let ready = [left(c), up(c)].into_iter().all(|n| !in_shape(set, n) || filled.contains(&n.unwrap()));
            if ready {
                filled.insert(c);
                cur.set(c, Entry::num(k));
                go(k + 1, cells, set, filled, cur, out);
                filled.remove(&c);
            }
        }
    }
    go(1, &cells, &set, &mut filled, &mut cur, &mut out);
    out
}

/// Standard fillings with marks x_1..x_n in place of 1..n.
pub fn standard_marked_fillings(shape: &SkewShape) -> Vec<Tableau> {
    standard_fillings(shape)
        .into_iter()
        .map(|t| t.map(|e| Entry::mark(e.value().unwrap() as u32)))
        .collect()
}

/// Semistandard fillings with values in 1..=max (ordinary shapes only).
pub fn semistandard_fillings(shape: &SkewShape, max: i32) -> Vec<Tableau> {
    let cells = shape.cells();
    let blank = Tableau::from_shape(shape, |_| Entry::num(0));
    let set: HashSet<Cell> = cells.iter().copied().collect();
    let mut out = Vec::new();
    fn go(i: usize, cells: &[Cell], set: &HashSet<Cell>, max: i32, cur: &mut Tableau, out: &mut Vec<Tableau>) {
        if i == cells.len() {
            out.push(cur.clone());
            return;
        }
        let c = cells[i];
        let lo_left = left(c).filter(|n| set.contains(n)).map_or(1, |n| cur.get(n).unwrap().value().unwrap());
        let lo_up = up(c).filter(|n| set.contains(n)).map_or(1, |n| cur.get(n).unwrap().value().unwrap() + 1);
        for v in lo_left.max(lo_up)..=max {
            cur.set(c, Entry::num(v));
            go(i + 1, cells, set, max, cur, out);
        }
    }
    let mut cur = blank;
    go(0, &cells, &set, max, &mut cur, &mut out);
    out
}

/// Littlewood-Richardson fillings: semistandard with reverse-ballot reading word.
/// Cells are filled in reverse reading order so the ballot test is on prefixes.
pub fn lr_fillings(shape: &SkewShape) -> Vec<Tableau> {
    let mut order = shape.cells();
    order.sort_by(|a, b| a.0.cmp(&b.0).then(b.1.cmp(&a.1)));
    let set: HashSet<Cell> = order.iter().copied().collect();
    let blank = Tableau::from_shape(shape, |_| Entry::num(0));
    let mut out = Vec::new();
    fn go(
        i: usize,
        order: &[Cell],
        set: &HashSet<Cell>,
        counts: &mut Vec<usize>,
        cur: &mut Tableau,
        out: &mut Vec<Tableau>,
    ) {
        if i == order.len() {
            out.push(cur.clone());
            return;
        }
        let (r, c) = order[i];
        let right = (r, c + 1);
        let hi = if set.contains(&right) { cur.get(right).unwrap().value().unwrap() } else { i32::MAX };
        let lo = up((r, c)).filter(|n| set.contains(n)).map_or(1, |n| cur.get(n).unwrap().value().unwrap() + 1);
        let top = (counts.len() as i32 + 1).min(hi);
        for v in lo..=top {
            let vi = v as usize;
            let have = counts.get(vi - 1).copied().unwrap_or(0);
            if vi > 1 && have + 1 > counts[vi - 2] {
                continue;
            }
            if vi > counts.len() {
                counts.push(0);
            }
            counts[vi - 1] += 1;
            cur.set((r, c), Entry::num(v));
            go(i + 1, order, set, counts, cur, out);
            counts[vi - 1] -= 1;
            if counts.last() == Some(&0) {
                counts.pop();
            }
        }
    }
    let mut counts = Vec::new();
    let mut cur = blank;
    go(0, &order, &set, &mut counts, &mut cur, &mut out);
    out
}

/// All chains a ⊆ b ⊆ c drawn from `parts`.
pub fn nested_triples(parts: &[Partition]) -> Vec<(Partition, Partition, Partition)> {
    let mut out = Vec::new();
    for a in parts {
        for b in parts.iter().filter(|b| b.contains(a)) {
            for c in parts.iter().filter(|c| c.contains(b)) {
                out.push((a.clone(), b.clone(), c.clone()));
            }
        }
    }
    out
}

/// Every (X, T) with X standard (marks) on b/a and T LR on c/b, for shapes in
/// a rows x cols box. `max_boxes` caps |c/a|.
pub fn pairs_in_box(rows: usize, cols: usize, max_boxes: usize) -> Vec<TableauPair> {
    let parts = Partition::all_in_box(rows, cols);
    let mut out = Vec::new();
    for (a, b, c) in nested_triples(&parts) {
        if c.size() - a.size() > max_boxes {
            continue;
        }
        let xs = standard_marked_fillings(&SkewShape::new(b.clone(), a.clone(), false).unwrap());
        let ts = lr_fillings(&SkewShape::new(c.clone(), b.clone(), false).unwrap());
        for x in &xs {
            for t in &ts {
                out.push(TableauPair { inner: x.clone(), outer: t.clone() });
            }
        }
    }
    out
}

/// Same as `pairs_in_box` with the roles swapped: T LR on b/a inside, X standard
/// marks on c/b outside. Inputs for the reverse algorithms.
pub fn reverse_pairs_in_box(rows: usize, cols: usize, max_boxes: usize) -> Vec<TableauPair> {
    let parts = Partition::all_in_box(rows, cols);
    let mut out = Vec::new();
    for (a, b, c) in nested_triples(&parts) {
        if c.size() - a.size() > max_boxes {
            continue;
        }
        let ts = lr_fillings(&SkewShape::new(b.clone(), a.clone(), false).unwrap());
        let xs = standard_marked_fillings(&SkewShape::new(c.clone(), b.clone(), false).unwrap());
        for t in &ts {
            for x in &xs {
                out.push(TableauPair { inner: t.clone(), outer: x.clone() });
            }
        }
    }
    out
}

/// Shifted LR fillings: semistandard shifted fillings in canonical form whose
/// rectification is the shifted highest-weight tableau. Brute force over the
/// primed alphabet 1' < 1 < ... < m with m at most the number of rows.
pub fn shifted_lr_fillings(shape: &SkewShape) -> Vec<Tableau> {
    let cells = shape.cells();
    let rows = shape.outer.length().max(1) as i32;
    let mut letters = Vec::new();
    for v in 1..=rows {
        letters.push(Entry::primed(v));
        letters.push(Entry::num(v));
    }
    let set: HashSet<Cell> = cells.iter().copied().collect();
    let mut cur = Tableau::from_shape(shape, |_| Entry::num(0));
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    fn fits(prev: Option<Entry>, e: Entry, along_row: bool) -> bool {
        let Some(p) = prev else { return true };
        if p.key() != e.key() {
            return p.key() < e.key();
        }
        if along_row {
            !p.is_primed()
        } else {
            p.is_primed()
        }
    }
    #[allow(clippy::too_many_arguments)]
    fn go(
        i: usize,
        cells: &[Cell],
        set: &HashSet<Cell>,
        letters: &[Entry],
        cur: &mut Tableau,
        seen: &mut HashSet<Tableau>,
        out: &mut Vec<Tableau>,
    ) {
        if i == cells.len() {
            let c = cur.canonical_form();
            if seen.insert(c.clone()) && crate::shifted::shifted_is_lr(&c) {
                out.push(c);
            }
            return;
        }
        let cell = cells[i];
        let l = left(cell).filter(|n| set.contains(n)).map(|n| cur.get(n).unwrap());
        let u = up(cell).filter(|n| set.contains(n)).map(|n| cur.get(n).unwrap());
        for &e in letters {
            if fits(l, e, true) && fits(u, e, false) {
                cur.set(cell, e);
                go(i + 1, cells, set, letters, cur, seen, out);
            }
        }
    }
    go(0, &cells, &set, &letters, &mut cur, &mut seen, &mut out);
    out
}

fn shifted_triples(h: usize, max_boxes: usize) -> Vec<(Partition, Partition, Partition)> {
    nested_triples(&Partition::strict_in_staircase(h))
        .into_iter()
        .filter(|(a, _, c)| c.size() - a.size() <= max_boxes)
        .collect()
}

fn shifted_shape(o: &Partition, i: &Partition) -> SkewShape {
    SkewShape::new(o.clone(), i.clone(), true).expect("strict shapes")
}

/// Shifted (X, T): X standard marks on b/a, T shifted LR on c/b, all strict
/// shapes inside the staircase of height `h`, |c/a| at most `max_boxes`.
pub fn shifted_pairs(h: usize, max_boxes: usize) -> Vec<TableauPair> {
    let mut out = Vec::new();
    for (a, b, c) in shifted_triples(h, max_boxes) {
        let xs = standard_marked_fillings(&shifted_shape(&b, &a));
        let ts = shifted_lr_fillings(&shifted_shape(&c, &b));
        for x in &xs {
            for t in &ts {
                out.push(TableauPair { inner: x.clone(), outer: t.clone() });
            }
        }
    }
    out
}

/// Reverse inputs: T shifted LR inside, X standard marks outside.
pub fn shifted_reverse_pairs(h: usize, max_boxes: usize) -> Vec<TableauPair> {
    let mut out = Vec::new();
    for (a, b, c) in shifted_triples(h, max_boxes) {
        let ts = shifted_lr_fillings(&shifted_shape(&b, &a));
        let xs = standard_marked_fillings(&shifted_shape(&c, &b));
        for t in &ts {
            for x in &xs {
                out.push(TableauPair { inner: t.clone(), outer: x.clone() });
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn shape(o: &[usize], i: &[usize]) -> SkewShape {
        SkewShape::new(Partition::new(o.to_vec()).unwrap(), Partition::new(i.to_vec()).unwrap(), false).unwrap()
    }

    #[test]
    fn standard_counts() {
        assert_eq!(standard_fillings(&shape(&[2, 1], &[])).len(), 2);
        assert_eq!(standard_fillings(&shape(&[3, 2], &[])).len(), 5);
        assert_eq!(standard_fillings(&shape(&[2, 1], &[1])).len(), 2);
    }

    #[test]
    fn lr_counts() {
        // c^{(3,2,1)}_{(2,1),(2,1)} = 2
        let lr = lr_fillings(&shape(&[3, 2, 1], &[2, 1]));
        assert_eq!(lr.iter().filter(|t| t.weight().unwrap() == vec![2, 1]).count(), 2);
        assert!(lr.iter().all(|t| t.is_littlewood_richardson()));
    }

    #[test]
    fn shifted_lr_counts() {
        let s = SkewShape::new(Partition::new(vec![3, 1]).unwrap(), Partition::empty(), true).unwrap();
        assert_eq!(shifted_lr_fillings(&s).len(), 1);
        // shifted standard tableaux of shape (3,1): 2
        assert_eq!(standard_fillings(&s).len(), 2);
    }

    #[test]
    fn lr_matches_filter() {
        let s = shape(&[3, 3, 2], &[2, 1]);
        let brute: Vec<Tableau> =
            semistandard_fillings(&s, 4).into_iter().filter(|t| t.is_littlewood_richardson()).collect();
        let mut fast = lr_fillings(&s);
        let mut brute = brute;
        fast.sort_by_key(|t| t.to_grid());
        brute.sort_by_key(|t| t.to_grid());
        assert_eq!(fast, brute);
    }
}
