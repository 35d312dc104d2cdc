//! Whole-library checks: worked examples, oracle sweeps, inversions, algebraic
//! identities, coplacticity, invariants and step counts. Each returns a
//! `Report`; the acceptance target and `verify` both print these.

use crate::enumerate::{pairs_in_box, shifted_pairs};
use crate::instances::{self, complexity_family, content, random_pair, rect_shape, slide_cells, slide_pair, step_bound};
use crate::jdt;
use crate::localalg::{self as la, LocalOutput};
use crate::par::par_map;
use crate::shifted as sh;
use crate::switching::{self as sw, TableauPair};
use crate::tableau::{grid, shifted_grid, Tableau};
use crate::word::Word;
use crate::Result;
use rand::rngs::StdRng;
use rand::seq::SliceRandom;
use rand::SeedableRng;

/// Maximum failure messages kept per report.
const KEEP: usize = 5;

#[derive(Clone, Debug, Default)]
pub struct Report {
    pub name: String,
    pub instances: usize,
    pub mismatches: usize,
    pub failures: Vec<String>,
}

impl Report {
    pub fn new(name: impl Into<String>) -> Report {
        Report { name: name.into(), ..Default::default() }
    }

    pub fn ok(&self) -> bool {
        self.mismatches == 0
    }

    pub fn fail(&mut self, msg: impl Into<String>) {
        self.mismatches += 1;
        if self.failures.len() < KEEP {
            self.failures.push(msg.into());
        }
    }

    /// Folds per-instance results (None = fine) into the report.
    pub fn absorb(&mut self, results: Vec<Option<String>>) {
        self.instances += results.len();
        for r in results.into_iter().flatten() {
            self.fail(r);
        }
    }

    pub fn merge(&mut self, other: Report) {
        self.instances += other.instances;
        self.mismatches += other.mismatches;
        for f in other.failures {
            if self.failures.len() < KEEP {
                self.failures.push(format!("{}: {f}", other.name));
            }
        }
    }

    pub fn summary(&self) -> String {
        format!("{} instances, {} mismatches", self.instances, self.mismatches)
    }
}

fn show(p: &TableauPair) -> String {
    p.combined().to_grid()
}

fn marked(s: &str) -> TableauPair {
    TableauPair::from_marked(&grid(s)).expect("fixture")
}

fn shifted_marked(s: &str) -> TableauPair {
    TableauPair::from_marked(&shifted_grid(s)).expect("fixture")
}

fn numeric_pair(x: &str, t: &str) -> TableauPair {
    TableauPair::new(grid(x), grid(t)).expect("fixture")
}

// ---- worked examples ----

type Example = (&'static str, fn() -> Result<bool>);

fn ex_evacuation() -> Result<bool> {
    Ok(jdt::evacuate_rectified(&grid("1 1 3/2 2/3 4"))? == grid("1 2 3/2 3/4 4"))
}

fn figure_pair() -> TableauPair {
    numeric_pair(". . 1 2/. 2 2/1", ". . . . 1/. . . 3/. 2 3")
}

fn ex_switch() -> Result<bool> {
    let s = sw::switch(&figure_pair())?;
    Ok(s.inner == grid(". . 1 3/. 2 3") && s.outer == grid(". . . . 2/. . . 1/1 2 2"))
}

fn ex_coswitch() -> Result<bool> {
    let s = sw::coswitch(&figure_pair())?;
    Ok(s.inner == grid(". . 3 3/. 1/2") && s.outer == grid(". . . . 2/. . 1 2/. 1 2"))
}

fn ex_pesh() -> Result<bool> {
    let s = sw::pesh(&figure_pair())?;
    Ok(s.inner == grid(". . 3 3/. 1/2") && s.outer == grid(". . . . 2/. . 1 1/. 1 2"))
}

fn ex_evacuate_pair() -> Result<bool> {
    let s = sw::evacuate_pair(&figure_pair())?;
    Ok(s.inner == grid(". . 1 2/. 1/3") && s.outer == grid(". . . . 2/. . 1 1/. 1 2"))
}

const HOP_IN: &str = ". x1 x3 1/x2 1 1/1 2 2";
const HOP_OUT: &str = ". 1 1 1/1 2 x2/2 x1 x3";

fn ex_hop() -> Result<bool> {
    let p = marked(HOP_IN);
    let o = la::hop(&p.inner, &p.outer)?;
    Ok(o.pair.combined() == grid(HOP_OUT) && o.transition.entries == [3, 2, 3])
}

fn ex_hop_coswitch() -> Result<bool> {
    let p = marked(HOP_IN);
    let o = la::coswitch_local_traced(&p.inner, &p.outer)?;
    Ok(o.pair.combined() == grid(". 1 1 1/1 2 x1/2 x2 x3") && o.transition.entries == [2, 3, 3])
}

fn ex_crystal() -> Result<bool> {
    let p = marked(HOP_IN);
    let (q, td) = la::crystal_alg(&p.inner, &p.outer)?;
    let (m, tm) = la::mixed_alg(&p.inner, &p.outer)?;
    Ok(q.combined() == grid(HOP_OUT) && td.entries == [3, 2, 3] && m == q && tm == td)
}

fn ex_tracking() -> Result<bool> {
    let p = marked(HOP_IN);
    let (q, _, snaps) = la::hop_tracked(&p.inner, &p.outer)?;
    Ok(snaps.contains(&grid(". 1 1 1/1 2 2/2_2 3_3 3_1"))
        && snaps.contains(&grid(". 1 1 1/1 2 2/2_2 3_1 x3"))
        && q.combined() == grid(HOP_OUT))
}

fn ex_array() -> Result<bool> {
    let a = la::TransitionData::new(vec![3, 2, 3]);
    let bottom = la::reading_word_from_transition(&a);
    let ev = jdt::evacuate_word(&bottom, Some(3))?;
    let p = marked(HOP_IN);
    Ok(bottom == Word::from_values(&[1, 3, 2])
        && ev == Word::from_values(&[2, 3, 1])
        && la::array_transform(&a)?.entries == [2, 3, 3]
        && la::array_alg(&p.inner, &p.outer)?.combined() == grid(". 1 1 1/1 2 x1/2 x2 x3"))
}

fn ex_chain() -> Result<bool> {
    let blue = grid(". . 1 1/. 1 2/1");
    let red = grid(". . . . 1/. . . 2/. 1 1");
    let out = sw::coswitch_chain(&sw::TableauChain::new(vec![blue, red])?, 1, 2)?;
    Ok(out.links[0] == grid(". . 1 1/. 1/2") && out.links[1] == grid(". . . . 1/. . 1 1/. 1 2"))
}

fn ex_fixed_point() -> Result<bool> {
    let p = marked(". . x1 1 1/. x2 1 2/x3 1");
    let c = la::coswitch_local(&p.inner, &p.outer)?;
    Ok(c.combined() == grid(". . 1 1 x1/. 1 2 x2/1 x3") && sw::is_fixed_point(&p)?)
}

const SHIFTED_IN: &str = ". . . . x3 1' 1/. . . x2 1' 1/. . x1 x4 2' 2/. . . 1 2";
const SHIFTED_OUT: &str = ". . . . 1 1 1/. . . 1 2 x2/. . 1 2' x1 x3/. . . 2 x4";

fn ex_shifted_hop() -> Result<bool> {
    let p = shifted_marked(SHIFTED_IN);
    let o = sh::shifted_hop(&p.inner, &p.outer)?;
    Ok(o.pair.combined() == shifted_grid(SHIFTED_OUT) && o.transition.entries == [3, 2, 3, 4])
}

fn ex_shifted_coplactic() -> Result<bool> {
    let p = shifted_marked(SHIFTED_IN);
    let o = sh::shifted_coplactic_alg(&p.inner, &p.outer)?;
    Ok(o.pair.combined() == shifted_grid(SHIFTED_OUT) && o.transition.entries == [3, 2, 3, 4])
}

fn ex_shifted_fixed_point() -> Result<bool> {
    let p = shifted_marked(
        ". . . . . . . . . x3 1'/. . . . . . . . . 1 1/. . . . . . x1 x2 1'/. . . . . . 1 1 1/. . . . x4 1'/. . . . . 1",
    );
    let want = shifted_grid(
        ". . . . . . . . . 1' 1/. . . . . . . . . 1 x3/. . . . . . 1' 1 1/. . . . . . 1 x1 x2/. . . . 1 1/. . . . . x4",
    );
    let c = sh::shifted_coswitch_local(&p.inner, &p.outer)?.pair;
    Ok(c.combined() == want && sh::shifted_monodromy_omega(&p)? == p)
}

fn ex_canonical() -> Result<bool> {
    let w: Word = "12'1'121'".parse()?;
    Ok(w.canonical_form() == "121'121'".parse()?)
}

pub const EXAMPLES: &[Example] = &[
    ("evacuation", ex_evacuation),
    ("switch", ex_switch),
    ("coswitch", ex_coswitch),
    ("pesh", ex_pesh),
    ("evacuate_pair", ex_evacuate_pair),
    ("hop", ex_hop),
    ("hop_coswitch", ex_hop_coswitch),
    ("crystal", ex_crystal),
    ("label_tracking", ex_tracking),
    ("array", ex_array),
    ("chain", ex_chain),
    ("monodromy_fixed_point", ex_fixed_point),
    ("shifted_hop", ex_shifted_hop),
    ("shifted_coplactic", ex_shifted_coplactic),
    ("shifted_fixed_point", ex_shifted_fixed_point),
    ("canonical_form", ex_canonical),
];

pub fn examples() -> Report {
    let mut r = Report::new("examples");
    for (name, f) in EXAMPLES {
        r.instances += 1;
        match f() {
            Ok(true) => {}
            Ok(false) => r.fail(format!("{name}: output differs")),
            Err(e) => r.fail(format!("{name}: {e}")),
        }
    }
    r
}

// ---- sweeps ----

/// Type-A sweep instances: everything in a rows x cols box.
pub fn type_a_sweep(rows: usize, cols: usize, max_boxes: usize) -> Vec<TableauPair> {
    pairs_in_box(rows, cols, max_boxes)
}

/// Type-B sweep instances: strict shapes in the staircase of height `h`.
pub fn type_b_sweep(h: usize, max_boxes: usize) -> Vec<TableauPair> {
    shifted_pairs(h, max_boxes)
}

fn same(name: &str, p: &TableauPair, got: Result<TableauPair>, want: &TableauPair) -> Option<String> {
    match got {
        Ok(g) if g == *want => None,
        Ok(g) => Some(format!("{name} on {}: got {}, want {}", show(p), show(&g), show(want))),
        Err(e) => Some(format!("{name} on {}: {e}", show(p))),
    }
}

fn first_of(results: impl IntoIterator<Item = Option<String>>) -> Option<String> {
    results.into_iter().flatten().next()
}

fn pair_of(o: Result<LocalOutput>) -> Result<TableauPair> {
    o.map(|o| o.pair)
}

fn type_a_equivalences(p: &TableauPair) -> Option<String> {
    let pesh = match sw::pesh(p) {
        Ok(v) => v,
        Err(e) => return Some(format!("pesh oracle on {}: {e}", show(p))),
    };
    let cos = match sw::coswitch(p) {
        Ok(v) => v,
        Err(e) => return Some(format!("coswitch oracle on {}: {e}", show(p))),
    };
    first_of([
        same("hop", p, pair_of(la::hop(&p.inner, &p.outer)), &pesh),
        same("crystal", p, la::crystal_alg(&p.inner, &p.outer).map(|o| o.0), &pesh),
        same("mixed", p, la::mixed_alg(&p.inner, &p.outer).map(|o| o.0), &pesh),
        same("coswitch_local", p, la::coswitch_local(&p.inner, &p.outer), &cos),
        same("array", p, la::array_alg(&p.inner, &p.outer), &cos),
    ])
}

fn type_b_equivalences(p: &TableauPair) -> Option<String> {
    let pesh = match sh::shifted_pesh(p) {
        Ok(v) => v,
        Err(e) => return Some(format!("shifted pesh oracle on {}: {e}", show(p))),
    };
    let cos = match sh::shifted_coswitch(p) {
        Ok(v) => v,
        Err(e) => return Some(format!("shifted coswitch oracle on {}: {e}", show(p))),
    };
    first_of([
        same("shifted_hop", p, pair_of(sh::shifted_hop(&p.inner, &p.outer)), &pesh),
        same("shifted_coplactic", p, pair_of(sh::shifted_coplactic_alg(&p.inner, &p.outer)), &pesh),
        same("shifted_coswitch_local", p, pair_of(sh::shifted_coswitch_local(&p.inner, &p.outer)), &cos),
    ])
}

pub fn equivalences_a(pairs: &[TableauPair]) -> Report {
    let mut r = Report::new("type A equivalences");
    r.absorb(par_map(pairs, type_a_equivalences));
    r
}

pub fn equivalences_b(pairs: &[TableauPair]) -> Report {
    let mut r = Report::new("type B equivalences");
    r.absorb(par_map(pairs, type_b_equivalences));
    r
}

// ---- inversions ----

fn round_trip(
    name: &str,
    p: &TableauPair,
    fwd: impl Fn(&Tableau, &Tableau) -> Result<TableauPair>,
    back: impl Fn(&Tableau, &Tableau) -> Result<TableauPair>,
) -> Option<String> {
    let q = match fwd(&p.inner, &p.outer) {
        Ok(q) => q,
        Err(e) => return Some(format!("{name} forward on {}: {e}", show(p))),
    };
    same(name, &q, back(&q.inner, &q.outer), p)
}

pub fn inversions_a(pairs: &[TableauPair]) -> Report {
    let mut r = Report::new("type A inversions");
    r.absorb(par_map(pairs, |p| {
        first_of([
            round_trip("rev_hop", p, |x, t| pair_of(la::hop(x, t)), la::rev_hop),
            round_trip("rev_crystal", p, |x, t| la::crystal_alg(x, t).map(|o| o.0), la::rev_crystal),
        ])
    }));
    r
}

pub fn inversions_b(pairs: &[TableauPair]) -> Report {
    let mut r = Report::new("type B inversions");
    r.absorb(par_map(pairs, |p| {
        first_of([
            round_trip("inv_shifted_hop", p, |x, t| pair_of(sh::shifted_hop(x, t)), sh::inv_shifted_hop),
            round_trip(
                "inv_shifted_coplactic",
                p,
                |x, t| pair_of(sh::shifted_coplactic_alg(x, t)),
                sh::inv_shifted_coplactic,
            ),
        ])
    }));
    r
}

// ---- algebraic identities ----

fn power(f: fn(&TableauPair) -> Result<TableauPair>, p: &TableauPair, k: usize) -> Result<TableauPair> {
    let mut cur = p.clone();
    for _ in 0..k {
        cur = f(&cur)?;
    }
    Ok(cur)
}

/// coswitch^2, evacuate_pair^2, switch^2 and pesh^4 are the identity; the
/// second report counts instances with pesh^2 != id.
pub fn involutions(pairs: &[TableauPair]) -> (Report, usize) {
    let mut r = Report::new("involutions");
    let ops: [(&str, fn(&TableauPair) -> Result<TableauPair>, usize); 4] =
        [("coswitch^2", sw::coswitch, 2), ("evacuate_pair^2", sw::evacuate_pair, 2), ("switch^2", sw::switch, 2), ("pesh^4", sw::pesh, 4)];
    let results = par_map(pairs, |p| {
        let bad = first_of(ops.iter().map(|&(name, f, k)| same(name, p, power(f, p, k), p)));
        let order_four = matches!(power(sw::pesh, p, 2), Ok(q) if q != *p);
        (bad, order_four)
    });
    let witnesses = results.iter().filter(|x| x.1).count();
    r.absorb(results.into_iter().map(|x| x.0).collect());
    (r, witnesses)
}

// ---- coplacticity ----

pub type Bijection = (&'static str, fn(&TableauPair) -> Result<TableauPair>);

pub const COPLACTIC: &[Bijection] = &[
    ("hop", |p| pair_of(la::hop(&p.inner, &p.outer))),
    ("crystal", |p| la::crystal_alg(&p.inner, &p.outer).map(|o| o.0)),
    ("mixed", |p| la::mixed_alg(&p.inner, &p.outer).map(|o| o.0)),
    ("coswitch_local", |p| la::coswitch_local(&p.inner, &p.outer)),
    ("array", |p| la::array_alg(&p.inner, &p.outer)),
    ("coswitch", sw::coswitch),
    ("pesh", sw::pesh),
    ("evacuate_pair", sw::evacuate_pair),
];

/// Random (pair, slide cell) samples inside a rows x cols box.
pub fn slide_samples(seed: u64, n: usize, rows: usize, cols: usize, max_boxes: usize) -> Vec<(TableauPair, (usize, usize))> {
    let mut rng = StdRng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(n);
    while out.len() < n {
        let p = random_pair(&mut rng, rows, cols, max_boxes);
        if let Some(&c) = slide_cells(&p).choose(&mut rng) {
            out.push((p, c));
        }
    }
    out
}

/// op(slide(p)) == slide(op(p)) for every sample and every listed bijection.
pub fn coplacticity(samples: &[(TableauPair, (usize, usize))], ops: &[Bijection]) -> Report {
    let mut r = Report::new("coplacticity");
    for &(name, f) in ops {
        let mut sub = Report::new(name);
        sub.absorb(par_map(samples, |(p, cell)| {
            let left = slide_pair(p, *cell).and_then(|s| f(&s));
            let right = f(p).and_then(|q| slide_pair(&q, *cell));
            match (left, right) {
                (Ok(a), Ok(b)) if a == b => None,
                (Ok(a), Ok(b)) => Some(format!("{name} at {cell:?} on {}: {} vs {}", show(p), show(&a), show(&b))),
                (Err(e), _) | (_, Err(e)) => Some(format!("{name} at {cell:?} on {}: {e}", show(p))),
            }
        }));
        r.merge(sub);
    }
    r
}

// ---- invariants ----

fn row_data(q: &TableauPair) -> Vec<i32> {
    let mut rows: Vec<(u32, i32)> = q
        .outer
        .cells()
        .into_iter()
        .filter_map(|c| q.outer.get(c).and_then(|e| e.mark_index()).map(|k| (k, c.0 as i32 + 1)))
        .collect();
    rows.sort();
    rows.into_iter().map(|x| x.1).collect()
}

fn invariant_failures(p: &TableauPair) -> Result<Option<String>> {
    let (tq, td, snaps) = la::hop_tracked(&p.inner, &p.outer)?;
    if tq != la::hop(&p.inner, &p.outer)?.pair {
        return Ok(Some(format!("label tracking changes the output on {}", show(p))));
    }
    if let Some(s) = snaps.iter().find(|s| !la::numeric_part_is_lr(s)) {
        return Ok(Some(format!("alwaysballot fails at {} from {}", s.to_grid(), show(p))));
    }
    let lambda = content(&p.outer);
    let (_, ctd) = la::crystal_alg(&p.inner, &p.outer)?;
    for t in [&td, &ctd] {
        if !la::is_lambda_dominant(&la::transition_word(t), &lambda) {
            return Ok(Some(format!("transition {:?} not {lambda}-dominant on {}", t.entries, show(p))));
        }
    }
    if p.inner.inner().is_empty() {
        let mut rows = row_data(&sw::coswitch(p)?);
        let mut trans = td.entries.clone();
        rows.sort();
        trans.sort();
        if rows != trans {
            return Ok(Some(format!("row data {rows:?} vs transition {trans:?} on {}", show(p))));
        }
    }
    if !p.inner.is_empty() && !p.outer.is_empty() {
        // hop outputs pesh, so the oracle switches e(X) past T
        let ex = TableauPair { inner: sw::evacuate_marked(&p.inner)?, outer: p.outer.clone() };
        let (q, _) = sw::rectified_switch(&ex)?;
        let want = q.outer.reading_word().values();
        let got = la::reading_word_from_transition(&td).values();
        if want != got {
            return Ok(Some(format!("reading word {got:?} vs switched {want:?} on {}", show(p))));
        }
    }
    Ok(None)
}

pub fn invariants(pairs: &[TableauPair]) -> Report {
    let mut r = Report::new("invariants");
    r.absorb(par_map(pairs, |p| match invariant_failures(p) {
        Ok(v) => v,
        Err(e) => Some(format!("{}: {e}", show(p))),
    }));
    r
}

// ---- step counts ----

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StepRow {
    pub id: usize,
    pub alpha: usize,
    pub beta: usize,
    pub lambda: usize,
    pub phase1: usize,
    pub phase2: usize,
    pub oracle: usize,
}

impl StepRow {
    pub fn local(&self) -> usize {
        self.phase1 + self.phase2
    }
}

pub fn step_row(id: usize, p: &TableauPair) -> Result<StepRow> {
    let o = la::hop(&p.inner, &p.outer)?;
    let oracle = sw::pesh_counted(p)?.moves;
    Ok(StepRow {
        id,
        alpha: p.inner.inner().size(),
        beta: p.inner.len(),
        lambda: p.outer.len(),
        phase1: o.trace.phase_steps(1),
        phase2: o.trace.phase_steps(2),
        oracle,
    })
}

/// Local step counts of hop, crystal and mixed stay under the bound.
pub fn step_bounds(pairs: &[TableauPair]) -> Report {
    let mut r = Report::new("step bound");
    r.absorb(par_map(pairs, |p| {
        let bound = step_bound(&rect_shape(&p.inner), &content(&p.outer));
        let runs = [
            ("hop", la::hop(&p.inner, &p.outer)),
            ("crystal", la::crystal_alg_traced(&p.inner, &p.outer)),
            ("mixed", la::mixed_alg_traced(&p.inner, &p.outer)),
        ];
        first_of(runs.into_iter().map(|(name, o)| match o {
            Ok(o) if o.trace.total_steps() <= bound => None,
            Ok(o) => Some(format!("{name}: {} steps > {bound} on {}", o.trace.total_steps(), show(p))),
            Err(e) => Some(format!("{name} on {}: {e}", show(p))),
        }))
    }));
    r
}

/// Along the outward family: the local count never changes and the oracle
/// count strictly increases.
pub fn alpha_scaling() -> Result<(Report, Vec<StepRow>)> {
    let fam = complexity_family()?;
    let rows = fam.iter().enumerate().map(|(i, p)| step_row(i, p)).collect::<Result<Vec<_>>>()?;
    let mut r = Report::new("alpha scaling");
    r.instances = rows.len();
    for w in rows.windows(2) {
        if w[1].local() != w[0].local() {
            r.fail(format!("local count {} -> {} at |alpha| = {}", w[0].local(), w[1].local(), w[1].alpha));
        }
        if w[1].oracle <= w[0].oracle {
            r.fail(format!("oracle count {} -> {} at |alpha| = {}", w[0].oracle, w[1].oracle, w[1].alpha));
        }
    }
    Ok((r, rows))
}

/// Random instances for the bound check.
pub fn random_instances(seed: u64, n: usize) -> Vec<TableauPair> {
    let mut rng = StdRng::seed_from_u64(seed);
    (0..n).map(|_| instances::random_pair(&mut rng, 4, 6, 14)).collect()
}

// ---- single pairs ----

/// Every type-A comparison for one pair: local algorithms against the
/// oracles, then the reverse algorithms.
pub fn check_pair_a(p: &TableauPair) -> Option<String> {
    type_a_equivalences(p).or_else(|| {
        first_of([
            round_trip("rev_hop", p, |x, t| pair_of(la::hop(x, t)), la::rev_hop),
            round_trip("rev_crystal", p, |x, t| la::crystal_alg(x, t).map(|o| o.0), la::rev_crystal),
        ])
    })
}

pub fn check_pair_b(p: &TableauPair) -> Option<String> {
    type_b_equivalences(p).or_else(|| {
        first_of([
            round_trip("inv_shifted_hop", p, |x, t| pair_of(sh::shifted_hop(x, t)), sh::inv_shifted_hop),
            round_trip(
                "inv_shifted_coplactic",
                p,
                |x, t| pair_of(sh::shifted_coplactic_alg(x, t)),
                sh::inv_shifted_coplactic,
            ),
        ])
    })
}
