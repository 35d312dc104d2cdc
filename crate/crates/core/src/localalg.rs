//! Shape-preserving algorithms for pesh and coswitch: hopping, crystal, mixed,
//! array, label tracking, and the reverse algorithms.
//!
//! Everything runs on the combined reading word with cells held fixed.
//! Marks x_1..x_n carry the inner tableau; a semistandard numeric inner tableau
//! is standardized into marks first and relabeled at the end.

use crate::crystal::{lower_position, raise_position};
use crate::entry::Entry;
use crate::error::{inv, pre, Result};
use crate::jdt::{self, Board, MarkOrder};
use crate::partition::Partition;
use crate::switching::{self, TableauPair};
use crate::tableau::{Cell, SkewShape, Tableau};
use crate::word::{is_ballot_after, Word};
use serde::{Deserialize, Serialize};

/// Values a_1..a_n in the order they were recorded.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct TransitionData {
    pub entries: Vec<i32>,
}

impl TransitionData {
    pub fn new(entries: Vec<i32>) -> Self {
        TransitionData { entries }
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// a_k, 1-based.
    pub fn get(&self, k: usize) -> i32 {
        self.entries[k - 1]
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "event", rename_all = "lowercase")]
pub enum HopEvent {
    /// The mark traded places with an entry of this value.
    Switch { value: i32, from: Cell, to: Cell },
    Raise { index: i32, cell: Cell },
    Lower { index: i32, cell: Cell },
    /// The mark left its phase and became a number.
    Absorb { value: i32, cell: Cell },
    /// A number was turned back into the mark.
    Emit { value: i32, cell: Cell },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HopStep {
    pub phase: u8,
    pub mark: u32,
    #[serde(flatten)]
    pub event: HopEvent,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct HopTrace {
    pub steps: Vec<HopStep>,
}

impl HopTrace {
    /// Every logged event is one elementary step.
    pub fn phase_steps(&self, phase: u8) -> usize {
        self.steps.iter().filter(|s| s.phase == phase).count()
    }

    pub fn total_steps(&self) -> usize {
        self.phase_steps(1) + self.phase_steps(2)
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("trace serializes")
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LocalOutput {
    pub pair: TableauPair,
    pub transition: TransitionData,
    pub trace: HopTrace,
}

// ---- working state ----

pub(crate) struct Run {
    template: Tableau,
    pub cells: Vec<Cell>,
    pub w: Vec<Entry>,
    pub trace: Vec<HopStep>,
    snapshots: Option<Vec<Tableau>>,
}

impl Run {
    pub fn new(t: &Tableau) -> Run {
        let cells = t.reading_cells();
        let w = cells.iter().map(|&c| t.get(c).unwrap()).collect();
        Run { template: t.clone(), cells, w, trace: Vec::new(), snapshots: None }
    }

    pub fn tableau(&self) -> Tableau {
        self.template.with_reading_word(&self.w)
    }

    fn log(&mut self, phase: u8, mark: u32, event: HopEvent) {
        self.trace.push(HopStep { phase, mark, event });
        if self.snapshots.is_some() {
            let t = self.tableau();
            self.snapshots.as_mut().unwrap().push(t);
        }
    }

    pub fn mark_pos(&self, k: u32) -> Result<usize> {
        self.w
            .iter()
            .position(|e| e.is_mark() && e.mark_index() == Some(k))
            .ok_or_else(|| inv(format!("mark x{k} vanished")))
    }

    pub fn swap(&mut self, phase: u8, mark: u32, p: usize, q: usize) {
        let value = self.w[q].value().unwrap_or(0);
        // tracked labels stay in reading order among the entries of this value
        let labels: Vec<Option<u32>> =
            self.w.iter().filter(|e| e.is(value)).map(|e| e.mark_index().filter(|_| !e.is_mark())).collect();
        self.w.swap(p, q);
        if labels.iter().any(Option::is_some) {
            let mut it = labels.into_iter();
            for e in self.w.iter_mut().filter(|e| e.is(value)) {
                *e = match it.next().flatten() {
                    Some(index) => Entry::Marked { index, tracked: Some((value, false)) },
                    None => Entry::num(value),
                };
            }
        }
        let (from, to) = (self.cells[p], self.cells[q]);
        self.log(phase, mark, HopEvent::Switch { value, from, to });
    }

    fn count(&self, range: impl Iterator<Item = usize>, v: i32) -> usize {
        range.filter(|&q| self.w[q].is(v)).count()
    }

    fn count_after(&self, p: usize, v: i32) -> usize {
        self.count(p + 1..self.w.len(), v)
    }

    /// Entries strictly after `p` hold as many j's as (j+1)'s.
    fn tied(&self, p: usize, j: i32) -> bool {
        self.count_after(p, j) == self.count_after(p, j + 1)
    }

    fn first(&self, v: i32) -> Option<usize> {
        self.w.iter().position(|e| e.is(v))
    }

    fn unique(&self, v: i32) -> Result<usize> {
        let mut it = self.w.iter().enumerate().filter(|(_, e)| e.is(v)).map(|(p, _)| p);
        match (it.next(), it.next()) {
            (Some(p), None) => Ok(p),
            _ => Err(inv(format!("expected a single {v}"))),
        }
    }

    pub fn max_value(&self) -> i32 {
        self.w.iter().filter_map(|e| e.value()).max().unwrap_or(0)
    }

    fn raise(&mut self, phase: u8, mark: u32, i: i32) -> Result<()> {
        let p = raise_position(&self.w, i).ok_or_else(|| inv(format!("E_{i} undefined")))?;
        self.w[p] = self.w[p].with_value(i);
        let cell = self.cells[p];
        self.log(phase, mark, HopEvent::Raise { index: i, cell });
        Ok(())
    }

    fn lower(&mut self, phase: u8, mark: u32, i: i32) -> Result<()> {
        let p = lower_position(&self.w, i).ok_or_else(|| inv(format!("F_{i} undefined")))?;
        self.w[p] = self.w[p].with_value(i + 1);
        let cell = self.cells[p];
        self.log(phase, mark, HopEvent::Lower { index: i, cell });
        Ok(())
    }
}

// ---- input handling ----

/// How marks turn back into numbers when the inner tableau was numeric.
#[derive(Clone, Copy)]
enum Relabel {
    /// Output lies in the slide class of the evacuated inner tableau.
    Evacuated,
    /// Output keeps the inner tableau's slide class.
    Kept,
}

struct Labels {
    /// Value of the k-th cell in standardization order, for numeric inputs.
    values: Option<Vec<i32>>,
    alphabet: i32,
}

impl Labels {
    fn apply(&self, x: &Tableau, how: Relabel) -> Tableau {
        let Some(vals) = &self.values else { return x.clone() };
        let n = vals.len();
        x.map(|e| match e.mark_index() {
            Some(k) if e.is_mark() => {
                let k = k as usize;
                Entry::num(match how {
                    Relabel::Kept => vals[k - 1],
                    Relabel::Evacuated => self.alphabet + 1 - vals[n - k],
                })
            }
            _ => e,
        })
    }
}

/// Standard marks x_1..x_n, in either mark order.
fn check_standard_marks(x: &Tableau, inner: bool) -> Result<()> {
    let n = x.len();
    let mut idx: Vec<u32> = x.entries().filter_map(|e| e.mark_index()).collect();
    idx.sort_unstable();
    if idx.len() != n || idx.iter().enumerate().any(|(i, &k)| k != i as u32 + 1) {
        return Err(pre("marks must be x1..xn"));
    }
    let ok = if inner { x.is_semistandard_by(|e| e.key_marks_low()) } else { x.is_semistandard_by(|e| e.key()) };
    if !ok {
        return Err(pre("marks are not standard"));
    }
    Ok(())
}

/// Marks for the inner tableau, standardizing a numeric one.
fn marked_inner(x: &Tableau) -> Result<(Tableau, Labels)> {
    if x.num_marks() == x.len() {
        check_standard_marks(x, true)?;
        return Ok((x.clone(), Labels { values: None, alphabet: x.len() as i32 }));
    }
    if !x.all_numeric() || !x.is_semistandard() || x.entries().any(|e| e.is_primed()) {
        return Err(pre("inner tableau must be standard marks or a semistandard numeric tableau"));
    }
    let order = x.standard_cells();
    let mut out = x.clone();
    let mut vals = Vec::with_capacity(order.len());
    for (k, &c) in order.iter().enumerate() {
        vals.push(x.get(c).unwrap().value().unwrap());
        out.set(c, Entry::mark(k as u32 + 1));
    }
    Ok((out, Labels { values: Some(vals), alphabet: x.max_value() }))
}

fn check_lr(t: &Tableau, what: &str) -> Result<()> {
    if !t.all_numeric() || !t.is_littlewood_richardson() {
        return Err(pre(format!("{what} tableau is not Littlewood-Richardson")));
    }
    Ok(())
}

fn empty_result(t: &Tableau) -> TableauPair {
    TableauPair { inner: t.clone(), outer: Tableau::empty_at(&t.outer(), t.is_shifted()) }
}

/// Combined tableau → (numbers, marks).
fn split_numbers_first(t: &Tableau) -> Result<TableauPair> {
    let (a, b) = t.split(|e| !e.is_mark())?;
    Ok(TableauPair { inner: a, outer: b })
}

// ---- phases ----

fn hop_phase1(run: &mut Run, n: u32, tracked: bool) -> Result<Vec<i32>> {
    let mut a = Vec::with_capacity(n as usize);
    for i in (1..=n).rev() {
        let mut j = 1;
        loop {
            let p = run.mark_pos(i)?;
            match (0..p).rev().find(|&q| run.w[q].is(j)) {
                None => {
                    let rec = a.len() as u32 + 1;
                    run.w[p] = if tracked {
                        Entry::Marked { index: rec, tracked: Some((j, false)) }
                    } else {
                        Entry::num(j)
                    };
                    a.push(j);
                    let cell = run.cells[p];
                    run.log(1, i, HopEvent::Absorb { value: j, cell });
                    break;
                }
                Some(q) => {
                    run.swap(1, i, p, q);
                    j += 1;
                }
            }
        }
    }
    Ok(a)
}

/// Emits x_n, ..., x_1 using a_n, ..., a_1.
fn hop_phase2(run: &mut Run, a: &[i32], tracked: bool) -> Result<()> {
    let n = a.len() as u32;
    for k in (1..=n).rev() {
        let mut j = a[k as usize - 1];
        let d = run.max_value();
        let first = run.first(j).ok_or_else(|| inv(format!("no {j} left for x{k}")))?;
        let mut p = if tracked {
            let p = run
                .w
                .iter()
                .position(|e| !e.is_mark() && e.mark_index() == Some(k))
                .ok_or_else(|| inv(format!("tracked entry {k} missing")))?;
            if p != first {
                return Err(inv(format!("tracked entry {k} is not the first {j}")));
            }
            p
        } else {
            first
        };
        run.w[p] = Entry::mark(k);
        let cell = run.cells[p];
        run.log(2, k, HopEvent::Emit { value: j, cell });
        while j <= d {
            if !run.tied(p, j) {
                let q = (p + 1..run.w.len())
                    .find(|&q| run.w[q].is(j) && run.tied(q, j))
                    .ok_or_else(|| inv(format!("x{k}: no tied {j} after it")))?;
                run.swap(2, k, p, q);
                p = q;
            }
            j += 1;
        }
    }
    Ok(())
}

fn crystal_phase1(run: &mut Run, n: u32) -> Result<Vec<i32>> {
    for p in 0..run.w.len() {
        if let Some(k) = run.w[p].mark_index().filter(|_| run.w[p].is_mark()) {
            run.w[p] = Entry::num(k as i32 - n as i32);
        }
    }
    let mut a = Vec::with_capacity(n as usize);
    for i in (1..=n).rev() {
        let mut j = 0;
        loop {
            let s = run.unique(j)?;
            if (0..s).any(|q| run.w[q].is(j + 1)) {
                let times = run.count(0..run.w.len(), j + 1) - 1;
                for _ in 0..times {
                    run.raise(1, i, j)?;
                }
                j += 1;
            } else {
                a.push(j + 1);
                for e in run.w.iter_mut() {
                    if let Some(v) = e.value().filter(|&v| v < j + 1) {
                        *e = e.with_value(v + 1);
                    }
                }
                let cell = run.cells[s];
                run.log(1, i, HopEvent::Absorb { value: j + 1, cell });
                break;
            }
        }
    }
    Ok(a)
}

fn crystal_phase2(run: &mut Run, a: &[i32]) -> Result<()> {
    let n = a.len() as u32;
    for k in (1..=n).rev() {
        let d = run.max_value();
        for f in a[k as usize - 1]..=d {
            run.lower(2, k, f)?;
        }
        let p = run.unique(d + 1)?;
        run.w[p] = Entry::mark(k);
        let cell = run.cells[p];
        run.log(2, k, HopEvent::Emit { value: d + 1, cell });
    }
    Ok(())
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Phase1 {
    Hop,
    Crystal,
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Phase2 {
    Hop,
    Crystal,
}

struct Plan {
    p1: Phase1,
    p2: Phase2,
    tracked: bool,
    snapshots: bool,
    /// Rewrites the transition data between the phases.
    array: bool,
}

fn run_local(x: &Tableau, t: &Tableau, plan: Plan, relabel: Relabel) -> Result<(LocalOutput, Vec<Tableau>)> {
    check_lr(t, "outer")?;
    Tableau::glue(x, t)?;
    if x.is_empty() {
        let out = LocalOutput { pair: empty_result(t), transition: TransitionData::default(), trace: HopTrace::default() };
        return Ok((out, Vec::new()));
    }
    let (xm, labels) = marked_inner(x)?;
    let n = xm.len() as u32;
    let mut run = Run::new(&Tableau::glue(&xm, t)?);
    if plan.snapshots {
        run.snapshots = Some(vec![run.tableau()]);
    }
    let a = match plan.p1 {
        Phase1::Hop => hop_phase1(&mut run, n, plan.tracked)?,
        Phase1::Crystal => crystal_phase1(&mut run, n)?,
    };
    let used = if plan.array { array_transform(&TransitionData::new(a.clone()))?.entries } else { a.clone() };
    match plan.p2 {
        Phase2::Hop => hop_phase2(&mut run, &used, plan.tracked)?,
        Phase2::Crystal => crystal_phase2(&mut run, &used)?,
    }
    let pair = split_numbers_first(&run.tableau())?;
    let pair = TableauPair { inner: pair.inner, outer: labels.apply(&pair.outer, relabel) };
    let snaps = run.snapshots.take().unwrap_or_default();
    Ok((LocalOutput { pair, transition: TransitionData::new(a), trace: HopTrace { steps: run.trace } }, snaps))
}

const HOP: Plan = Plan { p1: Phase1::Hop, p2: Phase2::Hop, tracked: false, snapshots: false, array: false };

/// The hopping algorithm. Computes pesh(X, T).
pub fn hop(x: &Tableau, t: &Tableau) -> Result<LocalOutput> {
    Ok(run_local(x, t, HOP, Relabel::Evacuated)?.0)
}

/// Crystal-operator version of the hopping algorithm.
pub fn crystal_alg(x: &Tableau, t: &Tableau) -> Result<(TableauPair, TransitionData)> {
    let o = crystal_alg_traced(x, t)?;
    Ok((o.pair, o.transition))
}

pub fn crystal_alg_traced(x: &Tableau, t: &Tableau) -> Result<LocalOutput> {
    let plan = Plan { p1: Phase1::Crystal, p2: Phase2::Crystal, ..HOP };
    Ok(run_local(x, t, plan, Relabel::Evacuated)?.0)
}

/// Hopping Phase 1, crystal Phase 2.
pub fn mixed_alg(x: &Tableau, t: &Tableau) -> Result<(TableauPair, TransitionData)> {
    let o = mixed_alg_traced(x, t)?;
    Ok((o.pair, o.transition))
}

pub fn mixed_alg_traced(x: &Tableau, t: &Tableau) -> Result<LocalOutput> {
    let plan = Plan { p2: Phase2::Crystal, ..HOP };
    Ok(run_local(x, t, plan, Relabel::Evacuated)?.0)
}

/// Hopping with absorbed marks kept as subscripted numbers. Returns the state
/// after every event, starting with the input.
pub fn hop_tracked(x: &Tableau, t: &Tableau) -> Result<(TableauPair, TransitionData, Vec<Tableau>)> {
    let plan = Plan { tracked: true, snapshots: true, ..HOP };
    let (o, snaps) = run_local(x, t, plan, Relabel::Evacuated)?;
    Ok((o.pair, o.transition, snaps))
}

/// coswitch(X, T) as hop(e(X), T).
pub fn coswitch_local(x: &Tableau, t: &Tableau) -> Result<TableauPair> {
    Ok(coswitch_local_traced(x, t)?.pair)
}

pub fn coswitch_local_traced(x: &Tableau, t: &Tableau) -> Result<LocalOutput> {
    check_lr(t, "outer")?;
    Tableau::glue(x, t)?;
    if x.is_empty() {
        return run_local(x, t, HOP, Relabel::Kept).map(|r| r.0);
    }
    let (xm, labels) = marked_inner(x)?;
    let y = switching::evacuate_marked(&xm)?;
    let (mut o, _) = run_local(&y, t, HOP, Relabel::Evacuated)?;
    o.pair.outer = labels.apply(&o.pair.outer, Relabel::Kept);
    Ok(o)
}

/// coswitch(X, T) without evacuating X: Phase 1, rewrite the transition data, Phase 2.
pub fn array_alg(x: &Tableau, t: &Tableau) -> Result<TableauPair> {
    Ok(array_alg_traced(x, t)?.pair)
}

pub fn array_alg_traced(x: &Tableau, t: &Tableau) -> Result<LocalOutput> {
    let plan = Plan { array: true, ..HOP };
    Ok(run_local(x, t, plan, Relabel::Kept)?.0)
}

// ---- transition data ----

/// a_1 ... a_n as a word, the form in which it is lambda-dominant.
pub fn transition_word(td: &TransitionData) -> Word {
    Word::from_values(&td.entries)
}

/// Columns (a_k, k) sorted by a descending, then k ascending.
fn sorted_columns(td: &TransitionData) -> Vec<(i32, i32)> {
    let mut cols: Vec<(i32, i32)> = td.entries.iter().enumerate().map(|(k, &a)| (a, k as i32 + 1)).collect();
    cols.sort_by(|x, y| y.0.cmp(&x.0).then(x.1.cmp(&y.1)));
    cols
}

/// Bottom row of the sorted two-line array.
pub fn reading_word_from_transition(td: &TransitionData) -> Word {
    Word::from_values(&sorted_columns(td).iter().map(|c| c.1).collect::<Vec<_>>())
}

/// Sort, evacuate the bottom row, sort back by the bottom row.
pub fn array_transform(td: &TransitionData) -> Result<TransitionData> {
    let n = td.len();
    let cols = sorted_columns(td);
    let bottom = Word::from_values(&cols.iter().map(|c| c.1).collect::<Vec<_>>());
    let ev = jdt::evacuate_word(&bottom, Some(n as i32))?.values().expect("numeric");
    let mut b = vec![0; n];
    for (col, &e) in cols.iter().zip(&ev) {
        if e < 1 || e as usize > n || b[e as usize - 1] != 0 {
            return Err(inv("evacuated array row is not a permutation"));
        }
        b[e as usize - 1] = col.0;
    }
    Ok(TransitionData::new(b))
}

/// v·w is ballot for v = 1^λ1 2^λ2 ...
pub fn is_lambda_dominant(w: &Word, lambda: &Partition) -> bool {
    let Some(vals) = w.values() else { return false };
    let v: Vec<i32> =
        lambda.parts().iter().enumerate().flat_map(|(r, &len)| std::iter::repeat_n(r as i32 + 1, len)).collect();
    is_ballot_after(&v, &vals)
}

// ---- reverse algorithms ----

fn reverse_inputs(t: &Tableau, x: &Tableau) -> Result<(Run, u32, bool)> {
    check_lr(t, "inner")?;
    Tableau::glue(t, x)?;
    let numeric = !x.is_empty() && x.all_numeric();
    let xm = if numeric {
        if !x.is_standard() {
            return Err(pre("outer tableau must be standard"));
        }
        switching::remark(x)
    } else {
        x.clone()
    };
    check_standard_marks(&xm, false)?;
    Ok((Run::new(&Tableau::glue(t, &xm)?), xm.len() as u32, numeric))
}

fn reverse_output(run: &Run, numeric: bool) -> Result<TableauPair> {
    let (a, b) = run.tableau().split(|e| e.is_mark())?;
    let a = if numeric { switching::unmark(&a) } else { a };
    Ok(TableauPair { inner: a, outer: b })
}

fn rev_hop_phase2(run: &mut Run, n: u32) -> Result<Vec<i32>> {
    let mut rec = Vec::with_capacity(n as usize);
    for i in 1..=n {
        let mut j = run.max_value() + 1;
        loop {
            let p = run.mark_pos(i)?;
            if j == 1 || run.count_after(p, j - 1) > run.count_after(p, j) {
                run.w[p] = Entry::num(j);
                rec.push(j);
                let cell = run.cells[p];
                run.log(2, i, HopEvent::Absorb { value: j, cell });
                break;
            }
            if !run.tied(p, j - 2) {
                let cands: Vec<usize> = (0..run.w.len())
                    .filter(|&q| run.w[q].is(j - 1))
                    .filter(|&q| {
                        let mut w = run.w.clone();
                        w.swap(p, q);
                        let c = |v: i32| w[q + 1..].iter().filter(|e| e.is(v)).count();
                        c(j - 2) == c(j - 1)
                    })
                    .collect();
                let q = match cands.last() {
                    Some(&q) => q,
                    None => run.first(j - 1).ok_or_else(|| inv(format!("x{i}: no {} to switch with", j - 1)))?,
                };
                run.swap(2, i, p, q);
            }
            j -= 1;
        }
    }
    Ok(rec)
}

fn rev_hop_phase1(run: &mut Run, rec: &[i32]) -> Result<()> {
    let n = rec.len() as u32;
    for i in 1..=n {
        // the value x_i was absorbed as is the one recorded for x_{n-i+1}
        let mut j = rec[(n - i) as usize];
        let p = run.first(j).ok_or_else(|| inv(format!("no {j} to restore x{i}")))?;
        run.w[p] = Entry::mark(i);
        let cell = run.cells[p];
        run.log(1, i, HopEvent::Emit { value: j, cell });
        while j > 1 {
            let p = run.mark_pos(i)?;
            let q = (p + 1..run.w.len())
                .find(|&q| run.w[q].is(j - 1))
                .ok_or_else(|| inv(format!("x{i}: no {} after it", j - 1)))?;
            run.swap(1, i, p, q);
            j -= 1;
        }
    }
    Ok(())
}

fn rev_crystal_phase2(run: &mut Run, n: u32) -> Result<Vec<i32>> {
    let mut rec = Vec::with_capacity(n as usize);
    for i in 1..=n {
        let d = run.max_value();
        let p = run.mark_pos(i)?;
        run.w[p] = Entry::num(d + 1);
        let mut k = d;
        while k >= 1 && raise_position(&run.w, k).is_some() {
            run.raise(2, i, k)?;
            k -= 1;
        }
        rec.push(k + 1);
        let cell = run.cells[p];
        run.log(2, i, HopEvent::Absorb { value: k + 1, cell });
    }
    Ok(rec)
}

fn rev_crystal_phase1(run: &mut Run, rec: &[i32]) -> Result<()> {
    let n = rec.len() as u32;
    for i in 1..=n {
        let a = rec[(n - i) as usize];
        for e in run.w.iter_mut() {
            if let Some(v) = e.value().filter(|&v| v < a) {
                *e = e.with_value(v - 1);
            }
        }
        let p = run.first(a).ok_or_else(|| inv(format!("no {a} to restore x{i}")))?;
        run.w[p] = Entry::num(a - 1);
        for k in (0..=a - 2).rev() {
            let times = run.count(0..run.w.len(), k).saturating_sub(1);
            for _ in 0..times {
                run.lower(1, i, k)?;
            }
        }
        let p = run.unique(0)?;
        run.w[p] = Entry::mark(i);
        let cell = run.cells[p];
        run.log(1, i, HopEvent::Emit { value: 0, cell });
    }
    Ok(())
}

/// Inverse of `hop`: T inner and Littlewood-Richardson, X outer standard.
pub fn rev_hop(t: &Tableau, x: &Tableau) -> Result<TableauPair> {
    let (mut run, n, numeric) = reverse_inputs(t, x)?;
    if n == 0 {
        return Ok(TableauPair { inner: Tableau::empty_at(&t.inner(), t.is_shifted()), outer: t.clone() });
    }
    let rec = rev_hop_phase2(&mut run, n)?;
    rev_hop_phase1(&mut run, &rec)?;
    reverse_output(&run, numeric)
}

/// Inverse of `crystal_alg`.
pub fn rev_crystal(t: &Tableau, x: &Tableau) -> Result<TableauPair> {
    let (mut run, n, numeric) = reverse_inputs(t, x)?;
    if n == 0 {
        return Ok(TableauPair { inner: Tableau::empty_at(&t.inner(), t.is_shifted()), outer: t.clone() });
    }
    let rec = rev_crystal_phase2(&mut run, n)?;
    rev_crystal_phase1(&mut run, &rec)?;
    reverse_output(&run, numeric)
}

/// Rebuilds (X, T) from the end-of-Phase-1 tableau S, the rectification shape
/// of T, and transition data given as a word.
pub fn pair_from_transition(s: &Tableau, lambda: &Partition, w: &Word) -> Result<TableauPair> {
    if !s.is_littlewood_richardson() {
        return Err(pre("S is not Littlewood-Richardson"));
    }
    if !is_lambda_dominant(w, lambda) {
        return Err(pre("transition word is not lambda-dominant"));
    }
    let (rect, record) = jdt::rectify(s);
    let mu = rect.outer();
    if !mu.contains(lambda) {
        return Err(pre(format!("{lambda} is not contained in {mu}")));
    }
    let vals = w.values().expect("checked numeric");
    for r in 0..mu.length() {
        let want = mu.get(r) - lambda.get(r);
        if vals.iter().filter(|&&v| v == r as i32 + 1).count() != want {
            return Err(pre("transition word weight does not match the skew shape"));
        }
    }
    if vals.iter().any(|&v| v < 1 || v as usize > mu.length()) {
        return Err(pre("transition word weight does not match the skew shape"));
    }
    let inner_t = Tableau::highest_weight(lambda);
    if vals.is_empty() {
        let t = jdt::unrectify(&inner_t, &record)?;
        return Ok(TableauPair { inner: Tableau::empty_at(&t.inner(), false), outer: t });
    }
    let shape = SkewShape::new(mu, lambda.clone(), false)?;
    let blank = Tableau::from_shape(&shape, |_| Entry::num(0));
    let word = reading_word_from_transition(&TransitionData::new(vals));
    let letters: Vec<Entry> = word.values().unwrap().iter().map(|&k| Entry::mark(k as u32)).collect();
    let x_rect = blank.with_reading_word(&letters);
    let back = rev_hop(&inner_t, &x_rect)?;
    let mut b = Board::new(&back.combined(), 0, MarkOrder::Low);
    jdt::unrectify_board(&mut b, &record)?;
    let (x, t) = b.tableau(|_| true).split(|e| e.is_mark())?;
    Ok(TableauPair { inner: x, outer: t })
}

/// Phase 1 with the per-mark steps interleaved. `pick` chooses among the marks
/// allowed to move (each may move only below the index of the mark processed
/// before it). Returns the end-of-Phase-1 tableau and transition data.
pub fn hop_phase1_staggered(
    x: &Tableau,
    t: &Tableau,
    mut pick: impl FnMut(&[u32]) -> usize,
) -> Result<(Tableau, TransitionData)> {
    check_lr(t, "outer")?;
    let (xm, _) = marked_inner(x)?;
    let n = xm.len() as u32;
    let mut run = Run::new(&Tableau::glue(&xm, t)?);
    // front[i] = current index of x_i, None once absorbed
    let mut front: Vec<Option<i32>> = vec![Some(1); n as usize + 1];
    let mut a = vec![0; n as usize];
    loop {
        let movable: Vec<u32> = (1..=n)
            .filter(|&i| {
                let Some(j) = front[i as usize] else { return false };
                front[i as usize + 1..].iter().flatten().all(|&jk| j < jk)
            })
            .collect();
        if movable.is_empty() {
            break;
        }
        let i = movable[pick(&movable) % movable.len()];
        let j = front[i as usize].unwrap();
        let p = run.mark_pos(i)?;
        match (0..p).rev().find(|&q| run.w[q].is(j)) {
            None => {
                run.w[p] = Entry::num(j);
                a[(n - i) as usize] = j;
                front[i as usize] = None;
            }
            Some(q) => {
                run.swap(1, i, p, q);
                front[i as usize] = Some(j + 1);
            }
        }
    }
    Ok((run.tableau(), TransitionData::new(a)))
}

/// End-of-Phase-1 tableau of the ordinary hopping algorithm.
pub fn hop_phase1_tableau(x: &Tableau, t: &Tableau) -> Result<(Tableau, TransitionData)> {
    check_lr(t, "outer")?;
    let (xm, _) = marked_inner(x)?;
    let mut run = Run::new(&Tableau::glue(&xm, t)?);
    let a = hop_phase1(&mut run, xm.len() as u32, false)?;
    Ok((run.tableau(), TransitionData::new(a)))
}

/// Numbers (ignoring bare marks) read as a reverse-ballot word and
/// semistandard along rows and columns.
pub fn numeric_part_is_lr(t: &Tableau) -> bool {
    let w: Vec<i32> = t.reading_word().0.iter().filter_map(|e| e.value()).collect();
    if !Word::from_values(&w).is_reverse_ballot() {
        return false;
    }
    let cells = t.cells();
    let val = |c: Cell| t.get(c).and_then(|e| e.value());
    cells.iter().all(|&(r, c)| {
        let Some(v) = val((r, c)) else { return true };
        let row_ok = (c + 1..t.row_end(r)).filter_map(|cc| val((r, cc))).all(|u| u >= v);
        let col_ok = (r + 1..t.num_rows()).filter_map(|rr| val((rr, c))).all(|u| u > v);
        row_ok && col_ok
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tableau::grid;

    fn split(s: &str) -> (Tableau, Tableau) {
        let p = TableauPair::from_marked(&grid(s)).unwrap();
        (p.inner, p.outer)
    }

    const EX: &str = ". x1 x3 1/x2 1 1/1 2 2";

    #[test]
    fn hop_example() {
        let (x, t) = split(EX);
        let o = hop(&x, &t).unwrap();
        assert_eq!(o.pair.combined(), grid(". 1 1 1/1 2 x2/2 x1 x3"));
        assert_eq!(o.transition.entries, vec![3, 2, 3]);
    }

    #[test]
    fn crystal_and_mixed_example() {
        let (x, t) = split(EX);
        let (p, td) = crystal_alg(&x, &t).unwrap();
        assert_eq!(p.combined(), grid(". 1 1 1/1 2 x2/2 x1 x3"));
        assert_eq!(td.entries, vec![3, 2, 3]);
        let (q, td2) = mixed_alg(&x, &t).unwrap();
        assert_eq!(q, p);
        assert_eq!(td2, td);
    }

    #[test]
    fn coswitch_example() {
        let (x, t) = split(EX);
        let o = coswitch_local_traced(&x, &t).unwrap();
        assert_eq!(o.pair.combined(), grid(". 1 1 1/1 2 x1/2 x2 x3"));
        assert_eq!(o.transition.entries, vec![2, 3, 3]);
        assert_eq!(array_alg(&x, &t).unwrap(), o.pair);
    }

    #[test]
    fn array_example() {
        let a = TransitionData::new(vec![3, 2, 3]);
        assert_eq!(reading_word_from_transition(&a), Word::from_values(&[1, 3, 2]));
        assert_eq!(array_transform(&a).unwrap().entries, vec![2, 3, 3]);
    }

    #[test]
    fn tracked_example() {
        let (x, t) = split(EX);
        let (p, _, snaps) = hop_tracked(&x, &t).unwrap();
        assert!(snaps.contains(&grid(". 1 1 1/1 2 2/2_2 3_3 3_1")));
        assert!(snaps.contains(&grid(". 1 1 1/1 2 2/2_2 3_1 x3")));
        assert_eq!(p.combined(), grid(". 1 1 1/1 2 x2/2 x1 x3"));
        assert!(snaps.iter().all(numeric_part_is_lr));
    }

    #[test]
    fn reverse_example() {
        let (x, t) = split(EX);
        let out = grid(". 1 1 1/1 2 x2/2 x1 x3");
        let p = TableauPair::from_marked(&out).unwrap();
        assert_eq!(rev_hop(&p.inner, &p.outer).unwrap(), TableauPair { inner: x.clone(), outer: t.clone() });
        assert_eq!(rev_crystal(&p.inner, &p.outer).unwrap(), TableauPair { inner: x, outer: t });
    }

    #[test]
    fn dominance() {
        assert!(is_lambda_dominant(&Word::from_values(&[3, 2, 3]), &Partition::new(vec![4, 2]).unwrap()));
        assert!(!is_lambda_dominant(&Word::from_values(&[2]), &Partition::empty()));
        assert!(is_lambda_dominant(&Word::default(), &Partition::new(vec![1]).unwrap()));
    }

    #[test]
    fn empty_inner() {
        let t = grid("1 1/2");
        let e = Tableau::empty(false);
        let o = hop(&e, &t).unwrap();
        assert_eq!(o.pair.inner, t);
        assert!(o.transition.is_empty());
    }

    #[test]
    fn rejects_non_lr() {
        let (x, _) = split(EX);
        let bad = grid(". . . 2/. 1 1/1 2 2");
        assert!(matches!(hop(&x, &bad), Err(crate::Error::Precondition(_))));
    }
}
