//! Shifted tableaux: canonical forms, shifted jeu de taquin, the shifted LR
//! predicate, switching oracles, the shifted coplactic operators, and the
//! shifted hopping and coplactic algorithms with their inverses.
//!
//! A word here is an equivalence class of strings: two strings are the same
//! word when their canonical forms agree. Tableaux are kept canonical between
//! steps except where an algorithm picks another representative on purpose.

use crate::entry::Entry;
use crate::error::{inv, pre, Result};
use crate::jdt::{self, SlideRecord};
use crate::localalg::{HopEvent, HopStep, HopTrace, LocalOutput, TransitionData};
use crate::partition::Partition;
use crate::switching::{self, Counted, TableauPair};
use crate::tableau::{Cell, Tableau};
use crate::word::Word;
use serde::{Deserialize, Serialize};

// ---- canonical forms, slides, LR ----

/// First occurrence of each value in reading order becomes unprimed.
pub fn canonical_form(w: &Word) -> Word {
    w.canonical_form()
}

pub fn canonical_tableau(t: &Tableau) -> Tableau {
    t.canonical_form()
}

fn need_shifted(t: &Tableau) -> Result<()> {
    if t.is_shifted() {
        Ok(())
    } else {
        Err(pre("expected a shifted tableau"))
    }
}

pub fn shifted_slide(t: &Tableau, corner: Cell) -> Result<Tableau> {
    need_shifted(t)?;
    Ok(jdt::inner_slide(t, corner)?.0)
}

pub fn shifted_rectify(t: &Tableau) -> Result<(Tableau, SlideRecord)> {
    need_shifted(t)?;
    Ok(jdt::rectify(t))
}

pub fn shifted_highest_weight(shape: &Partition) -> Tableau {
    Tableau::shifted_highest_weight(shape)
}

fn is_highest_weight_rect(rect: &Tableau) -> bool {
    let c = rect.canonical_form();
    c == Tableau::shifted_highest_weight(&c.outer())
}

/// Semistandard, and rectifies to the shifted highest-weight tableau of its shape.
pub fn shifted_is_lr(t: &Tableau) -> bool {
    if !t.is_shifted() || !t.all_numeric() {
        return false;
    }
    let c = t.canonical_form();
    if !c.is_semistandard() {
        return false;
    }
    is_highest_weight_rect(&jdt::rectify(&c).0)
}

/// One letter per row on an antidiagonal, first letter lowest. Its reading
/// word is `letters`, and no two cells share a row or column.
fn antidiagonal(letters: &[Entry]) -> Tableau {
    let n = letters.len();
    let rows = (0..n)
        .map(|r| {
            let c = 2 * n - 1 - r;
            let mut row = vec![None; c + 1];
            row[c] = Some(letters[n - 1 - r]);
            row
        })
        .collect();
    Tableau::from_rows(rows, true).expect("antidiagonal is a valid shifted shape")
}

/// LR test for a word through its antidiagonal tableau.
pub fn word_is_shifted_lr(w: &Word) -> bool {
    if w.is_empty() {
        return true;
    }
    if w.0.iter().any(|e| e.value().is_none()) {
        return false;
    }
    let c = w.canonical_form();
    is_highest_weight_rect(&jdt::rectify(&antidiagonal(&c.0)).0)
}

// ---- switching oracles ----
//
// Oracles run on standardizations, so slides never meet equal letters, and
// the letters are put back afterwards.

/// Standard labels back to letters. Labels k..k+m carrying one value get
/// primes on the leading run that goes backwards in reading order.
pub fn destandardize(t: &Tableau, values: &[i32]) -> Result<Tableau> {
    let cells = t.reading_cells();
    let mut by_rank: Vec<Option<usize>> = vec![None; values.len()];
    for (pos, &c) in cells.iter().enumerate() {
        let k = t.get(c).and_then(|e| e.value()).ok_or_else(|| pre("destandardize: numeric entries only"))?;
        let slot = by_rank.get_mut((k - 1) as usize).ok_or_else(|| pre("destandardize: label out of range"))?;
        *slot = Some(pos);
    }
    let mut word = vec![Entry::num(0); cells.len()];
    let mut k = 0;
    while k < values.len() {
        let v = values[k];
        let mut end = k;
        while end < values.len() && values[end] == v {
            end += 1;
        }
        let pos: Vec<usize> =
            by_rank[k..end].iter().map(|p| p.ok_or_else(|| pre("destandardize: missing label"))).collect::<Result<_>>()?;
        let mut s = 0;
        while s + 1 < pos.len() && pos[s + 1] < pos[s] {
            s += 1;
        }
        if pos[s..].windows(2).any(|w| w[1] < w[0]) {
            return Err(inv(format!("labels {}..{} do not form a letter class", k + 1, end)));
        }
        for (r, &p) in pos.iter().enumerate() {
            word[p] = if r < s { Entry::primed(v) } else { Entry::num(v) };
        }
        k = end;
    }
    let out = t.with_reading_word(&word);
    if !out.is_semistandard() {
        return Err(inv(format!("destandardized tableau is not semistandard\n{out}")));
    }
    Ok(out)
}

/// Standard labels for a numeric side; marks pass through.
fn standard_side(t: &Tableau) -> Result<(Tableau, Option<Vec<i32>>)> {
    if t.is_empty() || !t.all_numeric() {
        return Ok((t.clone(), None));
    }
    let mut values: Vec<i32> = t.entries().map(|e| e.value().unwrap()).collect();
    values.sort_unstable();
    Ok((t.standardize()?, Some(values)))
}

fn restore(t: &Tableau, values: &Option<Vec<i32>>) -> Result<Tableau> {
    match values {
        Some(v) if !t.is_empty() => destandardize(t, v),
        _ => Ok(t.clone()),
    }
}

fn need_shifted_pair(p: &TableauPair) -> Result<()> {
    need_shifted(&p.inner)?;
    need_shifted(&p.outer)
}

/// Runs a role-swapping bijection on standardized sides.
fn via_standard(
    p: &TableauPair,
    f: impl Fn(&TableauPair) -> Result<Counted<TableauPair>>,
) -> Result<Counted<TableauPair>> {
    need_shifted_pair(p)?;
    let (inner, vi) = standard_side(&p.inner)?;
    let (outer, vo) = standard_side(&p.outer)?;
    let c = f(&TableauPair { inner, outer })?;
    let value = TableauPair { inner: restore(&c.value.inner, &vo)?, outer: restore(&c.value.outer, &vi)? };
    Ok(Counted { value, moves: c.moves })
}

pub fn shifted_switch(p: &TableauPair) -> Result<TableauPair> {
    Ok(via_standard(p, |q| Ok(Counted { value: switching::switch(q)?, moves: 0 }))?.value)
}

pub fn shifted_coswitch_counted(p: &TableauPair) -> Result<Counted<TableauPair>> {
    via_standard(p, switching::coswitch_counted)
}

pub fn shifted_coswitch(p: &TableauPair) -> Result<TableauPair> {
    Ok(shifted_coswitch_counted(p)?.value)
}

pub fn shifted_pesh_counted(p: &TableauPair) -> Result<Counted<TableauPair>> {
    via_standard(p, switching::pesh_counted)
}

pub fn shifted_pesh(p: &TableauPair) -> Result<TableauPair> {
    Ok(shifted_pesh_counted(p)?.value)
}

/// Coplactic evacuation of a shifted tableau (numeric sides via standardization).
pub fn shifted_evacuate(t: &Tableau) -> Result<Tableau> {
    need_shifted(t)?;
    if t.is_empty() {
        return Ok(t.clone());
    }
    let (st, values) = standard_side(t)?;
    let e = switching::evacuate_marked(&st)?;
    match values {
        Some(v) => {
            // letters reversed: v -> max + min - v
            let (lo, hi) = (v[0], v[v.len() - 1]);
            let mut flipped: Vec<i32> = v.iter().map(|x| hi + lo - x).collect();
            flipped.sort_unstable();
            destandardize(&e, &flipped)
        }
        None => Ok(e),
    }
}

pub fn shifted_monodromy_omega(p: &TableauPair) -> Result<TableauPair> {
    shifted_switch(&shifted_coswitch(p)?)
}

// ---- coplactic operators ----

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum OpKind {
    E,
    F,
    EPrime,
    FPrime,
}

/// Canonical straight two-letter tableaux of shape (a, b), letters 1 and 2.
/// `Row(t)`: single row 1^(a-t) 2^t. With two rows, `H` is the highest weight,
/// `A(t)` has row 1^(a-t) 2' 2^(t-1) and `B(t)` has 1^(a-t) 2^t, over 2^b.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Two {
    Row(usize),
    H,
    A(usize),
    B(usize),
}

fn two_states(a: usize, b: usize) -> Vec<Two> {
    if b == 0 {
        return (0..=a).map(Two::Row).collect();
    }
    let top = a - b;
    let mut out = vec![Two::H];
    for t in 1..=top {
        out.push(Two::A(t));
        if t < top {
            out.push(Two::B(t));
        }
    }
    out
}

fn two_tableau(s: Two, a: usize, b: usize) -> Tableau {
    let one = Entry::num(1);
    let two = Entry::num(2);
    let row0 = |t: usize, primed: bool| -> Vec<Entry> {
        let mut r = vec![one; a - t];
        if t > 0 {
            r.push(if primed { Entry::primed(2) } else { two });
            r.extend(std::iter::repeat_n(two, t - 1));
        }
        r
    };
    let top = match s {
        Two::Row(t) => row0(t, false),
        Two::H => row0(0, false),
        Two::A(t) => row0(t, true),
        Two::B(t) => row0(t, false),
    };
    let mut rows = vec![top];
    if b > 0 {
        rows.push(vec![two; b]);
    }
    Tableau::shifted_straight(rows).expect("two-letter tableau")
}

fn lower_two(s: Two, a: usize, b: usize, primed: bool) -> Option<Two> {
    let top = a - b;
    match s {
        Two::Row(t) => (t < a).then_some(Two::Row(t + 1)),
        Two::H if primed => Some(Two::A(1)),
        Two::H => (top > 1).then_some(Two::B(1)),
        Two::A(t) if !primed => (t < top).then_some(Two::A(t + 1)),
        Two::A(t) => (t + 1 < top).then_some(Two::A(t + 1)),
        Two::B(t) if !primed => (t + 1 < top).then_some(Two::B(t + 1)),
        Two::B(t) if t + 1 < top => Some(Two::B(t + 1)),
        Two::B(_) => Some(Two::A(top)),
    }
}

fn raise_two(s: Two, a: usize, b: usize, primed: bool) -> Option<Two> {
    two_states(a, b).into_iter().find(|&p| lower_two(p, a, b, primed) == Some(s))
}

fn classify(rect: &Tableau) -> Result<(Two, usize, usize)> {
    let shape = rect.outer();
    if shape.length() > 2 {
        return Err(inv("two-letter tableau with more than two rows"));
    }
    let (a, b) = (shape.get(0), shape.get(1));
    let c = rect.canonical_form();
    two_states(a, b)
        .into_iter()
        .find(|&s| two_tableau(s, a, b) == c)
        .map(|s| (s, a, b))
        .ok_or_else(|| inv(format!("unrecognised two-letter tableau\n{c}")))
}

/// The {i, i+1} cells relabelled 1, 2, with smaller entries as padding.
fn two_letter_part(t: &Tableau, i: i32) -> Result<Tableau> {
    let rows = t
        .raw_rows()
        .iter()
        .map(|row| {
            let mut out: Vec<Option<Entry>> = Vec::new();
            for (c, slot) in row.iter().enumerate() {
                match slot.map(|e| (e, e.value().unwrap_or(i32::MAX))) {
                    None => out.resize(c + 1, None),
                    Some((_, v)) if v < i => out.resize(c + 1, None),
                    Some((e, v)) if v <= i + 1 => {
                        out.resize(c, None);
                        out.push(Some(e.with_value(v - i + 1)));
                    }
                    _ => {}
                }
            }
            out
        })
        .collect();
    Tableau::from_rows(rows, true)
}

/// Applies E_i, F_i, E'_i or F'_i to a numeric shifted tableau. The {i, i+1}
/// part is rectified, moved along its two-letter crystal, and slid back.
pub fn shifted_operator(t: &Tableau, i: i32, kind: OpKind) -> Result<Option<Tableau>> {
    need_shifted(t)?;
    if !t.all_numeric() {
        return Err(pre("coplactic operators need numeric entries"));
    }
    let t = t.canonical_form();
    let in_pair = |e: Entry| matches!(e.value(), Some(v) if v == i || v == i + 1);
    let cells: Vec<Cell> = t.cells().into_iter().filter(|&c| in_pair(t.get(c).unwrap())).collect();
    if cells.is_empty() {
        return Ok(None);
    }
    let sub = two_letter_part(&t, i)?;
    let (rect, rec) = jdt::rectify(&sub);
    let (s, a, b) = classify(&rect)?;
    let next = match kind {
        OpKind::F => lower_two(s, a, b, false),
        OpKind::FPrime => lower_two(s, a, b, true),
        OpKind::E => raise_two(s, a, b, false),
        OpKind::EPrime => raise_two(s, a, b, true),
    };
    let Some(next) = next else { return Ok(None) };
    let back = jdt::unrectify(&two_tableau(next, a, b), &rec).map_err(|e| {
        inv(format!("{e}\n{kind:?}_{i} on\n{}\nsub\n{}\nrect\n{}\nnext {next:?}", t.to_grid(), sub.to_grid(), rect.to_grid()))
    })?;
    let mut out = t.clone();
    for c in cells {
        let e = back.get(c).ok_or_else(|| inv("unrectified part lost a cell"))?;
        out.set(c, e.with_value(e.value().unwrap() + i - 1));
    }
    let out = out.canonical_form();
    if !out.is_semistandard() {
        return Err(inv(format!("{kind:?}_{i} broke semistandardness\n{}\n->\n{}", t.to_grid(), out.to_grid())));
    }
    Ok(Some(out))
}

/// The operators on words, through the antidiagonal tableau.
pub fn shifted_coplactic_operators(w: &Word, i: i32, kind: OpKind) -> Option<Word> {
    if w.is_empty() || w.0.iter().any(|e| e.value().is_none()) {
        return None;
    }
    let t = antidiagonal(&w.canonical_form().0);
    shifted_operator(&t, i, kind).ok().flatten().map(|t| t.reading_word())
}

// ---- working state for the local algorithms ----

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Moved {
    Not,
    /// Last switch was with an entry earlier in reading order.
    Earlier,
    Later,
}

struct State {
    template: Tableau,
    cells: Vec<Cell>,
    w: Vec<Entry>,
    trace: Vec<HopStep>,
    moved: Moved,
    /// Running (X, T) step snapshots, when requested.
    snapshots: Option<Vec<Tableau>>,
}

impl State {
    fn new(t: &Tableau) -> State {
        let cells = t.reading_cells();
        let w = cells.iter().map(|&c| t.get(c).unwrap()).collect();
        State { template: t.clone(), cells, w, trace: Vec::new(), moved: Moved::Not, snapshots: None }
    }

    fn tableau(&self) -> Tableau {
        self.template.with_reading_word(&self.w)
    }

    fn log(&mut self, phase: u8, mark: u32, event: HopEvent) {
        self.trace.push(HopStep { phase, mark, event });
        if self.snapshots.is_some() {
            let t = self.tableau();
            self.snapshots.as_mut().unwrap().push(t);
        }
    }

    fn pos(&self, k: u32) -> Result<usize> {
        self.w
            .iter()
            .position(|e| e.is_mark() && e.mark_index() == Some(k))
            .ok_or_else(|| inv(format!("mark x{k} vanished")))
    }

    fn canonicalize(&mut self) {
        self.w = Word(std::mem::take(&mut self.w)).canonical_form().0;
    }

    fn has_value(&self, q: usize, v: i32) -> bool {
        self.w[q].value() == Some(v)
    }

    fn first_of(&self, v: i32) -> Option<usize> {
        (0..self.w.len()).find(|&q| self.has_value(q, v))
    }

    /// Smallest entry of value v in standardization order: the last v' in
    /// reading order, else the first v.
    fn smallest_of(&self, v: i32) -> Option<usize> {
        (0..self.w.len())
            .rev()
            .find(|&q| self.w[q].is_letter(v, true))
            .or_else(|| (0..self.w.len()).find(|&q| self.w[q].is_letter(v, false)))
    }

    fn precedes_all(&self, p: usize, v: i32) -> bool {
        (0..p).all(|q| !self.has_value(q, v))
    }

    /// Nearest letter (v, primed) on the given side of p.
    fn nearest(&self, p: usize, v: i32, primed: bool, after: bool) -> Option<usize> {
        if after {
            (p + 1..self.w.len()).find(|&q| self.w[q].is_letter(v, primed))
        } else {
            (0..p).rev().find(|&q| self.w[q].is_letter(v, primed))
        }
    }

    /// The numeric remainder after swapping p and q is semistandard and LR.
    fn valid_after_swap(&self, p: usize, q: usize) -> bool {
        let mut w = self.w.clone();
        w.swap(p, q);
        remainder_is_lr(&self.template, &self.cells, &w)
    }

    fn swap(&mut self, phase: u8, mark: u32, p: usize, q: usize) {
        let value = self.w[q].value().unwrap_or(0);
        self.w.swap(p, q);
        self.moved = if q < p { Moved::Earlier } else { Moved::Later };
        let (from, to) = (self.cells[p], self.cells[q]);
        self.log(phase, mark, HopEvent::Switch { value, from, to });
    }

    /// Switch with the nearest (v, primed) letter. A hop across a primed
    /// letter goes forward in reading order, across an unprimed one backward;
    /// inverse hops go the other way. Returns false if there is no such letter
    /// or the switch is not valid.
    fn hop(&mut self, phase: u8, mark: u32, v: i32, primed: bool, inverse: bool) -> Result<bool> {
        let p = self.pos(mark)?;
        let after = primed != inverse;
        let Some(q) = self.nearest(p, v, primed, after) else { return Ok(false) };
        if !self.valid_after_swap(p, q) {
            return Ok(false);
        }
        self.swap(phase, mark, p, q);
        Ok(true)
    }

    fn must_hop(&mut self, phase: u8, mark: u32, v: i32, primed: bool, inverse: bool) -> Result<()> {
        if self.hop(phase, mark, v, primed, inverse)? {
            Ok(())
        } else {
            let tick = if primed { "'" } else { "" };
            Err(inv(format!("x{mark}: no valid switch across {v}{tick}\n{}", self.tableau())))
        }
    }

    fn count_value(&self, v: i32) -> usize {
        (0..self.w.len()).filter(|&q| self.has_value(q, v)).count()
    }

    fn unique_value(&self, v: i32) -> Result<usize> {
        let mut it = (0..self.w.len()).filter(|&q| self.has_value(q, v));
        match (it.next(), it.next()) {
            (Some(p), None) => Ok(p),
            _ => Err(inv(format!("expected a single {v}"))),
        }
    }

    fn max_value(&self) -> i32 {
        self.w.iter().filter_map(|e| e.value()).max().unwrap_or(0)
    }

    fn apply(&mut self, phase: u8, mark: u32, i: i32, kind: OpKind) -> Result<bool> {
        let t = self.tableau();
        let Some(next) = shifted_operator(&t, i, kind)? else { return Ok(false) };
        let changed = self.cells.iter().position(|&c| t.get(c) != next.get(c)).unwrap_or(0);
        self.w = self.cells.iter().map(|&c| next.get(c).unwrap()).collect();
        let cell = self.cells[changed];
        let event = match kind {
            OpKind::E | OpKind::EPrime => HopEvent::Raise { index: i, cell },
            OpKind::F | OpKind::FPrime => HopEvent::Lower { index: i, cell },
        };
        self.log(phase, mark, event);
        Ok(true)
    }

    fn must_apply(&mut self, phase: u8, mark: u32, i: i32, kind: OpKind) -> Result<()> {
        if self.apply(phase, mark, i, kind)? {
            Ok(())
        } else {
            Err(inv(format!("{kind:?}_{i} undefined\n{}", self.tableau())))
        }
    }

    fn peek(&self, i: i32, kind: OpKind) -> Result<Option<Tableau>> {
        shifted_operator(&self.tableau(), i, kind)
    }
}

/// Numeric entries of `w` (marks dropped) are semistandard in canonical form
/// and form an LR word.
fn remainder_is_lr(template: &Tableau, cells: &[Cell], w: &[Entry]) -> bool {
    let canon = Word(w.to_vec()).canonical_form().0;
    let t = template.with_reading_word(&canon);
    for (&(r, c), e) in cells.iter().zip(&canon) {
        if e.is_mark() {
            continue;
        }
        for (nb, along_row) in [((r, c + 1), true), ((r + 1, c), false)] {
            if let Some(f) = t.get(nb).filter(|f| !f.is_mark()) {
                if !shifted_pair_ok(*e, f, along_row) {
                    return false;
                }
            }
        }
    }
    let nums: Vec<Entry> = canon.into_iter().filter(|e| !e.is_mark()).collect();
    word_is_shifted_lr(&Word(nums))
}

fn shifted_pair_ok(a: Entry, b: Entry, along_row: bool) -> bool {
    let (ka, kb) = (a.key(), b.key());
    if ka != kb {
        return ka < kb;
    }
    if along_row {
        !a.is_primed()
    } else {
        a.is_primed()
    }
}

/// Whether switching mark x_k with the entry in `target` keeps the numeric
/// part semistandard and LR.
pub fn valid_switch(t: &Tableau, mark: u32, target: Cell) -> Result<bool> {
    need_shifted(t)?;
    let s = State::new(t);
    let p = s.pos(mark)?;
    let q = s.cells.iter().position(|&c| c == target).ok_or_else(|| pre(format!("{target:?} is not a cell")))?;
    if s.w[q].value().is_none() {
        return Err(pre("target must hold a number"));
    }
    Ok(s.valid_after_swap(p, q))
}

// ---- inputs ----

fn check_shifted_lr(t: &Tableau, what: &str) -> Result<()> {
    need_shifted(t)?;
    if !shifted_is_lr(t) {
        return Err(pre(format!("{what} tableau is not shifted Littlewood-Richardson")));
    }
    Ok(())
}

/// Marks x_1..x_n for a standard inner or outer tableau; numeric input is
/// remarked. Returns the marks and whether the input was numeric.
fn standard_marks(x: &Tableau, inner: bool) -> Result<(Tableau, bool)> {
    need_shifted(x)?;
    let numeric = !x.is_empty() && x.all_numeric();
    let xm = if numeric {
        if !x.is_standard() {
            return Err(pre("shifted X must be standard"));
        }
        switching::remark(x)
    } else {
        x.clone()
    };
    let n = xm.len();
    let mut idx: Vec<u32> = xm.entries().filter_map(|e| e.mark_index()).collect();
    idx.sort_unstable();
    if idx.len() != n || idx.iter().enumerate().any(|(i, &k)| k != i as u32 + 1) {
        return Err(pre("marks must be x1..xn"));
    }
    let ok = if inner { xm.is_semistandard_by(|e| e.key_marks_low()) } else { xm.is_semistandard_by(|e| e.key()) };
    if !ok {
        return Err(pre("marks are not standard"));
    }
    Ok((xm, numeric))
}

fn finish(state: &State, numeric: bool, marks_outer: bool) -> Result<TableauPair> {
    let t = state.tableau();
    let (a, b) = if marks_outer { t.split(|e| !e.is_mark())? } else { t.split(|e| e.is_mark())? };
    let fix = |x: Tableau, is_marks: bool| {
        if is_marks {
            if numeric {
                switching::unmark(&x)
            } else {
                x
            }
        } else {
            x.canonical_form()
        }
    };
    Ok(TableauPair { inner: fix(a, !marks_outer), outer: fix(b, marks_outer) })
}

fn empty_forward(t: &Tableau) -> LocalOutput {
    LocalOutput {
        pair: TableauPair { inner: t.canonical_form(), outer: Tableau::empty_at(&t.outer(), true) },
        transition: TransitionData::default(),
        trace: HopTrace::default(),
    }
}

fn forward_state(x: &Tableau, t: &Tableau) -> Result<(State, u32, bool)> {
    check_shifted_lr(t, "outer")?;
    let (xm, numeric) = standard_marks(x, true)?;
    let s = State::new(&Tableau::glue(&xm, &t.canonical_form())?);
    Ok((s, xm.len() as u32, numeric))
}

// ---- shifted hopping ----

/// Safety net against runaway loops on inputs outside the hypotheses.
fn guard(steps: &mut usize, cap: usize) -> Result<()> {
    *steps += 1;
    if *steps > cap {
        return Err(inv("shifted algorithm did not terminate"));
    }
    Ok(())
}

fn hop_phase1(s: &mut State, n: u32) -> Result<(Vec<i32>, i32)> {
    let mut a = Vec::with_capacity(n as usize);
    let mut i = n;
    let mut j = 1;
    let mut steps = 0;
    let cap = 64 * (s.w.len() + 4);
    loop {
        guard(&mut steps, cap)?;
        let p = s.pos(i)?;
        if s.nearest(p, j, true, true).is_some() {
            s.must_hop(1, i, j, true, false)?;
            s.must_hop(1, i, j, false, false)?;
            j += 1;
            continue;
        }
        a.push(j);
        if i == 1 {
            // x_1 carries on as x_n
            s.w[p] = Entry::mark(n);
            s.canonicalize();
            return Ok((a, j));
        }
        s.w[p] = Entry::primed(j);
        let cell = s.cells[p];
        s.log(1, i, HopEvent::Absorb { value: j, cell });
        s.canonicalize();
        i -= 1;
        j = 1;
        s.moved = Moved::Not;
    }
}

/// The j,j+1 word read up to x ends in j (j+1)^*.
fn ends_with_j_run(s: &State, p: usize, j: i32) -> bool {
    for q in (0..p).rev() {
        let e = s.w[q];
        match e.value() {
            Some(v) if v == j + 1 && !e.is_primed() => continue,
            Some(v) if v == j + 1 || v == j => return e.is_letter(j, false),
            _ => continue,
        }
    }
    false
}

/// The j,j+1 word read after x starts with (j')^* (j+1)'.
fn starts_with_primed_run(s: &State, p: usize, j: i32) -> bool {
    for q in p + 1..s.w.len() {
        let e = s.w[q];
        match e.value() {
            Some(v) if v == j && e.is_primed() => continue,
            Some(v) if v == j || v == j + 1 => return e.is_letter(j + 1, true),
            _ => continue,
        }
    }
    false
}

fn hop_phase2(s: &mut State, a: &[i32], d: i32, start_j: i32) -> Result<()> {
    let n = a.len() as u32;
    let mut j = start_j;
    let mut steps = 0;
    let cap = 64 * (s.w.len() + 4) * (n as usize + 1);
    for i in 1..=n {
        let k = n - i + 1;
        if i > 1 {
            j = a[k as usize - 1];
            let q = s.smallest_of(j).ok_or_else(|| inv(format!("no {j} left for x{k}")))?;
            s.w[q] = Entry::mark(k);
            let cell = s.cells[q];
            s.log(2, k, HopEvent::Emit { value: j, cell });
            s.canonicalize();
            s.moved = Moved::Not;
        }
        let stop = d + (n - i + 1) as i32;
        loop {
            guard(&mut steps, cap)?;
            if matches!(s.moved, Moved::Not | Moved::Earlier) {
                // Phase 2(a)
                let p = s.pos(k)?;
                if s.count_value(j) > 0 && !s.precedes_all(p, j) {
                    let f = s.first_of(j).unwrap();
                    s.w[f] = s.w[f].with_primed(true);
                    while s.hop(2, k, j, true, true)? {}
                    let p = s.pos(k)?;
                    if !s.precedes_all(p, j) {
                        if ends_with_j_run(s, p, j) {
                            s.must_hop(2, k, j, false, false)?;
                        }
                        j += 1;
                        continue;
                    }
                }
            }
            // Phase 2(b)
            while s.hop(2, k, j, false, true)? {}
            let p = s.pos(k)?;
            if starts_with_primed_run(s, p, j) {
                s.must_hop(2, k, j + 1, true, false)?;
            }
            if j < stop {
                j += 1;
            } else {
                break;
            }
        }
    }
    Ok(())
}

pub fn shifted_hop(x: &Tableau, t: &Tableau) -> Result<LocalOutput> {
    Ok(shifted_hop_snapshots(x, t, false)?.0)
}

/// Same as `shifted_hop`, also returning the combined tableau after every step.
pub fn shifted_hop_snapshots(x: &Tableau, t: &Tableau, snapshots: bool) -> Result<(LocalOutput, Vec<Tableau>)> {
    if x.is_empty() {
        check_shifted_lr(t, "outer")?;
        return Ok((empty_forward(t), Vec::new()));
    }
    let (mut s, n, numeric) = forward_state(x, t)?;
    if snapshots {
        s.snapshots = Some(vec![s.tableau()]);
    }
    let d = t.max_value();
    let (a, j) = hop_phase1(&mut s, n)?;
    // a_k is stored at k-1; phase 2 reads a_{n-i+1}
    hop_phase2(&mut s, &a, d, j)?;
    let pair = finish(&s, numeric, true)?;
    let snaps = s.snapshots.take().unwrap_or_default();
    Ok((LocalOutput { pair, transition: TransitionData::new(a), trace: HopTrace { steps: s.trace } }, snaps))
}

/// Coswitching by local moves: evacuate X, then hop.
pub fn shifted_coswitch_local(x: &Tableau, t: &Tableau) -> Result<LocalOutput> {
    shifted_hop(&shifted_evacuate(x)?, t)
}

// ---- shifted coplactic algorithm ----

fn relabel_marks(s: &mut State, n: u32) {
    for e in s.w.iter_mut() {
        if let Some(k) = e.mark_index().filter(|_| e.is_mark()) {
            *e = Entry::num(k as i32 - n as i32);
        }
    }
}

fn coplactic_phase1(s: &mut State, n: u32) -> Result<Vec<i32>> {
    relabel_marks(s, n);
    let mut a = Vec::with_capacity(n as usize);
    for i in (1..=n).rev() {
        let mut j = 1;
        loop {
            if s.peek(j - 1, OpKind::EPrime)? != s.peek(j - 1, OpKind::E)? {
                let times = s.count_value(j).saturating_sub(2);
                for _ in 0..times {
                    s.must_apply(1, i, j - 1, OpKind::E)?;
                }
                s.must_apply(1, i, j - 1, OpKind::EPrime)?;
                j += 1;
                continue;
            }
            let p = s.unique_value(j - 1)?;
            s.w[p] = Entry::primed(j);
            for e in s.w.iter_mut() {
                if let Some(v) = e.value().filter(|&v| v < j - 1) {
                    *e = e.with_value(v + 1);
                }
            }
            let cell = s.cells[p];
            s.log(1, i, HopEvent::Absorb { value: j, cell });
            s.canonicalize();
            a.push(j);
            break;
        }
    }
    Ok(a)
}

fn coplactic_phase2(s: &mut State, a: &[i32], d: i32) -> Result<()> {
    let n = a.len() as u32;
    for i in 1..=n {
        let k = n - i + 1;
        for f in a[k as usize - 1]..=d + (n - i) as i32 {
            s.must_apply(2, k, f, OpKind::F)?;
        }
    }
    for k in 1..=n {
        let p = s.unique_value(d + k as i32)?;
        s.w[p] = Entry::mark(k);
        let cell = s.cells[p];
        s.log(2, k, HopEvent::Emit { value: d + k as i32, cell });
    }
    Ok(())
}

pub fn shifted_coplactic_alg(x: &Tableau, t: &Tableau) -> Result<LocalOutput> {
    if x.is_empty() {
        check_shifted_lr(t, "outer")?;
        return Ok(empty_forward(t));
    }
    let (mut s, n, numeric) = forward_state(x, t)?;
    let d = t.max_value();
    let a = coplactic_phase1(&mut s, n)?;
    coplactic_phase2(&mut s, &a, d)?;
    let pair = finish(&s, numeric, true)?;
    Ok(LocalOutput { pair, transition: TransitionData::new(a), trace: HopTrace { steps: s.trace } })
}

// ---- inverses ----

fn reverse_state(t: &Tableau, x: &Tableau) -> Result<(State, u32, bool)> {
    check_shifted_lr(t, "inner")?;
    let (xm, numeric) = standard_marks(x, false)?;
    let s = State::new(&Tableau::glue(&t.canonical_form(), &xm)?);
    Ok((s, xm.len() as u32, numeric))
}

fn empty_reverse(t: &Tableau) -> TableauPair {
    TableauPair { inner: Tableau::empty_at(&t.inner(), true), outer: t.canonical_form() }
}

/// The {j-1, j} part with x read as `letter` is at highest weight.
fn two_letter_top(s: &State, p: usize, letter: Entry, j: i32) -> Result<bool> {
    if j <= 1 {
        return Ok(true);
    }
    let mut w = s.w.clone();
    w[p] = letter;
    let t = s.template.with_reading_word(&w);
    let keep: Vec<Cell> = s
        .cells
        .iter()
        .zip(&w)
        .filter(|(_, e)| matches!(e.value(), Some(v) if v == j || v == j - 1))
        .map(|(&c, _)| c)
        .collect();
    let letters: Vec<Entry> = s.cells.iter().filter(|c| keep.contains(c)).map(|&c| t.get(c).unwrap()).collect();
    let sub = Word(letters).canonical_form();
    let a = antidiagonal(&sub.0);
    Ok(shifted_operator(&a, j - 1, OpKind::E)?.is_none() && shifted_operator(&a, j - 1, OpKind::EPrime)?.is_none())
}

/// The j-1,j word read up to x ends in j' (j-1)'^*.
fn ends_with_primed_run(s: &State, p: usize, j: i32) -> bool {
    for q in (0..p).rev() {
        let e = s.w[q];
        match e.value() {
            Some(v) if v == j - 1 && e.is_primed() => continue,
            Some(v) if v == j || v == j - 1 => return e.is_letter(j, true),
            _ => continue,
        }
    }
    false
}

/// The j-1,j word read after x starts with j^* (j-1).
fn starts_with_j_run(s: &State, p: usize, j: i32) -> bool {
    for q in p + 1..s.w.len() {
        let e = s.w[q];
        match e.value() {
            Some(v) if v == j && !e.is_primed() => continue,
            Some(v) if v == j || v == j - 1 => return e.is_letter(j - 1, false),
            _ => continue,
        }
    }
    false
}

/// Returns (records for x_1..x_{n-1}, level reached by x_n).
fn inv_hop_phase2(s: &mut State, n: u32) -> Result<(Vec<i32>, i32)> {
    let mut rec = Vec::with_capacity(n as usize);
    let mut steps = 0;
    let cap = 64 * (s.w.len() + 4) * (n as usize + 1);
    let mut i = 1;
    let mut d = s.max_value();
    let mut j;
    // entry test: x_i read as d+1 already on top
    let enter = |s: &State, i: u32, d: i32| -> Result<bool> {
        let p = s.pos(i)?;
        two_letter_top(s, p, Entry::num(d + 1), d + 1)
    };
    let mut absorb_at: Option<i32> = if enter(s, i, d)? { Some(d + 1) } else { None };
    j = d;
    s.moved = Moved::Not;
    loop {
        guard(&mut steps, cap)?;
        if let Some(level) = absorb_at.take() {
            let p = s.pos(i)?;
            if i == n {
                return Ok((rec, level));
            }
            s.w[p] = Entry::primed(level);
            let cell = s.cells[p];
            s.log(2, i, HopEvent::Absorb { value: level, cell });
            rec.push(level);
            i += 1;
            s.canonicalize();
            d = s.max_value();
            j = d;
            s.moved = Moved::Not;
            if enter(s, i, d)? {
                absorb_at = Some(d + 1);
            }
            continue;
        }
        let p = s.pos(i)?;
        if s.precedes_all(p, j) {
            if let Some(f) = s.first_of(j) {
                s.w[f] = s.w[f].with_primed(true);
            }
        }
        let mut use_b = matches!(s.moved, Moved::Not | Moved::Earlier);
        if use_b {
            // Reverse Phase 2(b)
            while s.hop(2, i, j, false, false)? {}
            let p = s.pos(i)?;
            if s.precedes_all(p, j) {
                use_b = false;
            } else {
                if two_letter_top(s, p, Entry::num(j), j)? {
                    absorb_at = Some(j);
                    continue;
                }
                // skipped when the switch would break validity
                if ends_with_primed_run(s, p, j) {
                    s.hop(2, i, j, true, true)?;
                }
                j -= 1;
                if j < 1 {
                    return Err(inv(format!("x{i} fell below level 1")));
                }
                continue;
            }
        }
        if !use_b {
            // Reverse Phase 2(a)
            while s.hop(2, i, j, true, false)? {}
            let p = s.pos(i)?;
            if two_letter_top(s, p, Entry::primed(j), j)? {
                absorb_at = Some(j);
                continue;
            }
            if starts_with_j_run(s, p, j) {
                s.hop(2, i, j - 1, false, true)?;
            }
            j -= 1;
            if j < 1 {
                return Err(inv(format!("x{i} fell below level 1")));
            }
        }
    }
}

fn inv_hop_phase1(s: &mut State, n: u32, rec: &[i32], level: i32) -> Result<()> {
    // x_n continues as x_1
    let p = s.pos(n)?;
    s.w[p] = Entry::mark(1);
    let mut j = level - 1;
    for m in 1..=n {
        if m > 1 {
            let a = rec[(n - m) as usize];
            let q = s.smallest_of(a).ok_or_else(|| inv(format!("no {a} to restore x{m}")))?;
            s.w[q] = Entry::mark(m);
            let cell = s.cells[q];
            s.log(1, m, HopEvent::Emit { value: a, cell });
            s.canonicalize();
            j = a - 1;
        }
        while j >= 1 {
            if let Some(f) = s.first_of(j) {
                s.w[f] = s.w[f].with_primed(true);
            }
            s.must_hop(1, m, j, false, true)?;
            s.must_hop(1, m, j, true, true)?;
            j -= 1;
        }
    }
    s.canonicalize();
    Ok(())
}

/// Inverse of `shifted_hop`: T inner and shifted LR, X outer standard.
pub fn inv_shifted_hop(t: &Tableau, x: &Tableau) -> Result<TableauPair> {
    if x.is_empty() {
        check_shifted_lr(t, "inner")?;
        return Ok(empty_reverse(t));
    }
    let (mut s, n, numeric) = reverse_state(t, x)?;
    let (rec, level) = inv_hop_phase2(&mut s, n)?;
    inv_hop_phase1(&mut s, n, &rec, level)?;
    finish(&s, numeric, false)
}

/// Inverse of `shifted_coplactic_alg`.
pub fn inv_shifted_coplactic(t: &Tableau, x: &Tableau) -> Result<TableauPair> {
    if x.is_empty() {
        check_shifted_lr(t, "inner")?;
        return Ok(empty_reverse(t));
    }
    let (mut s, n, numeric) = reverse_state(t, x)?;
    let d = s.max_value();
    for e in s.w.iter_mut() {
        if let Some(k) = e.mark_index().filter(|_| e.is_mark()) {
            *e = Entry::num(d + k as i32);
        }
    }
    let mut rec = Vec::with_capacity(n as usize);
    for i in 1..=n {
        let mut j = d + i as i32;
        while j > 1 && s.apply(2, i, j - 1, OpKind::E)? {
            j -= 1;
        }
        rec.push(j);
    }
    for i in (1..=n).rev() {
        let a = rec[i as usize - 1];
        for e in s.w.iter_mut() {
            if let Some(v) = e.value().filter(|&v| v < a) {
                *e = e.with_value(v - 1);
            }
        }
        let p = s.smallest_of(a).ok_or_else(|| inv(format!("no {a} to restore a mark")))?;
        s.w[p] = Entry::num(a - 1);
        s.canonicalize();
        let m = n - i + 1;
        for k in (0..=a - 2).rev() {
            let times = s.count_value(k).saturating_sub(2);
            s.must_apply(1, m, k, OpKind::FPrime)?;
            for _ in 0..times {
                s.must_apply(1, m, k, OpKind::F)?;
            }
        }
        let p = s.unique_value(0)?;
        let cell = s.cells[p];
        s.log(1, m, HopEvent::Emit { value: 0, cell });
    }
    // k - n back to x_k
    for e in s.w.iter_mut() {
        if let Some(v) = e.value().filter(|&v| v <= 0) {
            *e = Entry::mark((v + n as i32) as u32);
        }
    }
    finish(&s, numeric, false)
}

// ---- helpers for callers ----

/// Splits a combined shifted tableau into (marks, numbers) or (numbers, marks).
pub fn shifted_pair(t: &Tableau) -> Result<TableauPair> {
    need_shifted(t)?;
    TableauPair::from_marked(t)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tableau::shifted_grid;

    /// The worked example, in true shifted coordinates.
    pub(crate) fn example() -> Tableau {
        shifted_grid(". . . . x3 1' 1/. . . x2 1' 1/. . x1 x4 2' 2/. . . 1 2")
    }

    fn sides(t: &Tableau) -> TableauPair {
        TableauPair::from_marked(t).unwrap()
    }

    #[test]
    fn canonical_example() {
        let w: Word = "1 2' 1' 1 2 1'".parse().unwrap();
        assert_eq!(canonical_form(&w), "1 2 1' 1 2 1'".parse().unwrap());
    }

    #[test]
    fn lr_predicate() {
        let p: Partition = "(3,1)".parse().unwrap();
        assert!(shifted_is_lr(&shifted_highest_weight(&p)));
        assert!(!shifted_is_lr(&shifted_grid("2")));
        assert!(shifted_is_lr(&sides(&example()).outer));
    }

    #[test]
    fn word_lr_matches_tableau_lr() {
        let t = sides(&example()).outer;
        assert!(word_is_shifted_lr(&t.reading_word()));
        assert!(!word_is_shifted_lr(&"2 1".parse().unwrap()));
    }

    #[test]
    fn hop_example() {
        let p = sides(&example());
        let o = shifted_hop(&p.inner, &p.outer).unwrap();
        assert_eq!(o.transition.entries, vec![3, 2, 3, 4]);
        let want = shifted_grid(". . . . 1 1 1/. . . 1 2 x2/. . 1 2' x1 x3/. . . 2 x4");
        assert_eq!(o.pair.combined(), want);
    }

    #[test]
    fn coplactic_example() {
        let p = sides(&example());
        let o = shifted_coplactic_alg(&p.inner, &p.outer).unwrap();
        assert_eq!(o.transition.entries, vec![3, 2, 3, 4]);
        let want = shifted_grid(". . . . 1 1 1/. . . 1 2 x2/. . 1 2' x1 x3/. . . 2 x4");
        assert_eq!(o.pair.combined(), want);
    }

    pub(crate) fn fixed_point() -> Tableau {
        shifted_grid(
            ". . . . . . . . . x3 1'/. . . . . . . . . 1 1/. . . . . . x1 x2 1'/. . . . . . 1 1 1/. . . . x4 1'/. . . . . 1",
        )
    }

    #[test]
    fn fixed_point_example() {
        let p = sides(&fixed_point());
        let h = shifted_hop(&p.inner, &p.outer).unwrap().pair;
        let want = shifted_grid(
            ". . . . . . . . . 1' 1/. . . . . . . . . 1 x3/. . . . . . 1' 1 1/. . . . . . 1 x1 x2/. . . . 1 1/. . . . . x4",
        );
        // the figure's output is coswitch(X, T), which hop reaches after X is evacuated
        let c = shifted_coswitch_local(&p.inner, &p.outer).unwrap().pair;
        assert_eq!(c.combined(), want);
        assert_eq!(shifted_coswitch(&p).unwrap(), c);
        assert_eq!(shifted_switch(&p).unwrap(), c);
        assert_eq!(shifted_switch(&c).unwrap(), p);
        assert_eq!(h, shifted_pesh(&p).unwrap());
        assert_eq!(shifted_monodromy_omega(&p).unwrap(), p);
    }

    #[test]
    fn inverses_on_example() {
        let p = sides(&example());
        let o = shifted_hop(&p.inner, &p.outer).unwrap();
        let back = inv_shifted_hop(&o.pair.inner, &o.pair.outer).unwrap();
        assert_eq!(back, p);
        let back = inv_shifted_coplactic(&o.pair.inner, &o.pair.outer).unwrap();
        assert_eq!(back, p);
    }
}
