mod io;

use anyhow::{bail, Result};
use clap::{Parser, Subcommand, ValueEnum};
use io::{read_pair, read_tableau, usage, Output};
use serde_json::json;
use std::process::ExitCode;
use tableau_core::checks::{self, check_pair_a, check_pair_b, step_row, Report};
use tableau_core::instances::{self, content, rect_shape, step_bound};
use tableau_core::localalg::{self as la, LocalOutput};
use tableau_core::par::par_map;
use tableau_core::shifted as sh;
use tableau_core::switching as sw;
use tableau_core::{jdt, Error, Partition, TableauChain, TableauPair};

/// Skew and shifted tableaux: switching, evacuation shuffling, local algorithms.
///
/// Tableaux are given as file paths or inline grids, rows separated by `/`,
/// cells by spaces, `.` for an empty cell, `x3` for a mark and `2'` for a
/// primed entry. A pair is one combined tableau (marks on one side, numbers
/// on the other) or two tableaux, inner then outer.
///
/// Exit codes: 0 ok, 1 verification mismatch or internal error, 2 parse or
/// usage error, 3 failed precondition.
#[derive(Parser)]
#[command(name = "tableau", version)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
    #[arg(long = "type", value_enum, default_value = "a", global = true, ignore_case = true)]
    kind: Kind,
    #[arg(long, value_enum, global = true)]
    variant: Option<Variant>,
    #[arg(long, value_enum, default_value = "grid", global = true)]
    format: Format,
    /// Dump the step trace as JSON
    #[arg(long, global = true)]
    trace: bool,
    /// Replace shifted inputs by their canonical form
    #[arg(long, global = true)]
    canonicalize: bool,
    #[arg(long, default_value_t = 2024, global = true)]
    seed: u64,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Kind {
    A,
    B,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum, Debug)]
enum Variant {
    Hop,
    Crystal,
    Mixed,
    Array,
    Oracle,
    Reverse,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Grid,
    Json,
}

#[derive(Subcommand)]
enum Cmd {
    /// Rectify by jeu de taquin
    Rectify { input: String },
    /// Coplactic evacuation of a skew tableau
    Evacuate { input: String },
    Switch { inputs: Vec<String> },
    /// variants: oracle (default), hop, array
    Coswitch { inputs: Vec<String> },
    /// variants: oracle (default), hop, crystal, mixed, reverse
    Pesh { inputs: Vec<String> },
    /// Evacuate both tableaux of a pair
    Epair { inputs: Vec<String> },
    Hop { inputs: Vec<String> },
    Crystal { inputs: Vec<String> },
    Mixed { inputs: Vec<String> },
    Array { inputs: Vec<String> },
    /// Inverse of hop; the pair has numbers inside and marks outside
    Revhop { inputs: Vec<String> },
    Revcrystal { inputs: Vec<String> },
    /// Coswitch links i..=j of a chain of tableaux
    Chain {
        #[arg(long)]
        i: usize,
        #[arg(long)]
        j: usize,
        links: Vec<String>,
    },
    /// Monodromy operator and fixed-point test
    Omega { inputs: Vec<String> },
    ShiftedRectify { input: String },
    ShiftedEvacuate { input: String },
    ShiftedSwitch { inputs: Vec<String> },
    ShiftedCoswitch { inputs: Vec<String> },
    ShiftedPesh { inputs: Vec<String> },
    ShiftedHop { inputs: Vec<String> },
    ShiftedCoplactic { inputs: Vec<String> },
    ShiftedInvhop { inputs: Vec<String> },
    ShiftedInvcoplactic { inputs: Vec<String> },
    ShiftedOmega { inputs: Vec<String> },
    /// Compare local algorithms with the oracles on one pair or a sweep
    Verify {
        inputs: Vec<String>,
        /// Max boxes of the exhaustive sweep (capped by TABLEAU_SWEEP_MAX)
        #[arg(long)]
        sweep: Option<usize>,
    },
    /// Step counts of hop against the oracle, as CSV
    Bench {
        /// Random instances instead of the fixed family
        #[arg(long)]
        random: Option<usize>,
        /// Start pair of a custom family, grown outward into --bound
        #[arg(long, requires = "bound")]
        family: Option<String>,
        #[arg(long)]
        bound: Option<String>,
    },
}

struct Ctx {
    shifted: bool,
    variant: Option<Variant>,
    canonicalize: bool,
    seed: u64,
}

impl Ctx {
    fn pair(&self, inputs: &[String]) -> Result<TableauPair> {
        read_pair(inputs, self.shifted, self.canonicalize)
    }

    fn variant(&self, allowed: &[Variant], default: Variant) -> Result<Variant> {
        match self.variant {
            None => Ok(default),
            Some(v) if allowed.contains(&v) => Ok(v),
            Some(v) => bail!(usage(&format!("variant {v:?} is not valid here"))),
        }
    }

    fn type_a_only(&self, what: &str) -> Result<()> {
        if self.shifted {
            bail!(Error::Precondition(format!("{what} is defined for type A only")));
        }
        Ok(())
    }
}

fn local(o: LocalOutput) -> Output {
    let mut out = Output::pair(&o.pair);
    out.transition = Some(o.transition);
    out.trace = Some(o.trace.to_json());
    out
}

fn run(cli: &Cli) -> Result<String> {
    let shifted_cmd = matches!(
        cli.cmd,
        Cmd::ShiftedRectify { .. }
            | Cmd::ShiftedEvacuate { .. }
            | Cmd::ShiftedSwitch { .. }
            | Cmd::ShiftedCoswitch { .. }
            | Cmd::ShiftedPesh { .. }
            | Cmd::ShiftedHop { .. }
            | Cmd::ShiftedCoplactic { .. }
            | Cmd::ShiftedInvhop { .. }
            | Cmd::ShiftedInvcoplactic { .. }
            | Cmd::ShiftedOmega { .. }
    );
    let cx = Ctx {
        shifted: shifted_cmd || cli.kind == Kind::B,
        variant: cli.variant,
        canonicalize: cli.canonicalize,
        seed: cli.seed,
    };
    let b = cx.shifted;
    use Variant::*;
    let out = match &cli.cmd {
        Cmd::Rectify { input } | Cmd::ShiftedRectify { input } => {
            cx.variant(&[Oracle], Oracle)?;
            let t = read_tableau(input, b, cx.canonicalize)?;
            let (r, rec) = if b { sh::shifted_rectify(&t)? } else { jdt::rectify(&t) };
            let mut o = Output::tableau(r);
            o.trace = Some(rec.to_json());
            o
        }
        Cmd::Evacuate { input } | Cmd::ShiftedEvacuate { input } => {
            cx.variant(&[Oracle], Oracle)?;
            let t = read_tableau(input, b, cx.canonicalize)?;
            Output::tableau(if b { sh::shifted_evacuate(&t)? } else { jdt::evacuate_coplactic(&t)? })
        }
        Cmd::Switch { inputs } | Cmd::ShiftedSwitch { inputs } => {
            cx.variant(&[Oracle], Oracle)?;
            let p = cx.pair(inputs)?;
            Output::pair(&if b { sh::shifted_switch(&p)? } else { sw::switch(&p)? })
        }
        Cmd::Coswitch { inputs } | Cmd::ShiftedCoswitch { inputs } => {
            let v = cx.variant(if b { &[Oracle, Hop] } else { &[Oracle, Hop, Array] }, Oracle)?;
            let p = cx.pair(inputs)?;
            match (v, b) {
                (Oracle, false) => Output::pair(&sw::coswitch(&p)?),
                (Oracle, true) => Output::pair(&sh::shifted_coswitch(&p)?),
                (Hop, false) => local(la::coswitch_local_traced(&p.inner, &p.outer)?),
                (Hop, true) => local(sh::shifted_coswitch_local(&p.inner, &p.outer)?),
                _ => local(la::array_alg_traced(&p.inner, &p.outer)?),
            }
        }
        Cmd::Pesh { inputs } | Cmd::ShiftedPesh { inputs } => {
            let allowed: &[Variant] =
                if b { &[Oracle, Hop, Crystal, Reverse] } else { &[Oracle, Hop, Crystal, Mixed, Reverse] };
            let v = cx.variant(allowed, Oracle)?;
            let p = cx.pair(inputs)?;
            pesh_like(&p, v, b)?
        }
        Cmd::Epair { inputs } => {
            cx.type_a_only("epair")?;
            cx.variant(&[Oracle], Oracle)?;
            Output::pair(&sw::evacuate_pair(&cx.pair(inputs)?)?)
        }
        Cmd::Hop { inputs } | Cmd::ShiftedHop { inputs } => {
            let v = cx.variant(&[Hop, Oracle], Hop)?;
            pesh_like(&cx.pair(inputs)?, v, b)?
        }
        Cmd::Crystal { inputs } | Cmd::ShiftedCoplactic { inputs } => {
            let v = cx.variant(&[Crystal, Oracle], Crystal)?;
            pesh_like(&cx.pair(inputs)?, v, b)?
        }
        Cmd::Mixed { inputs } => {
            cx.type_a_only("mixed")?;
            let v = cx.variant(&[Mixed, Oracle], Mixed)?;
            pesh_like(&cx.pair(inputs)?, v, b)?
        }
        Cmd::Array { inputs } => {
            cx.type_a_only("array")?;
            cx.variant(&[Array], Array)?;
            let p = cx.pair(inputs)?;
            local(la::array_alg_traced(&p.inner, &p.outer)?)
        }
        Cmd::Revhop { inputs } | Cmd::ShiftedInvhop { inputs } => {
            cx.variant(&[Reverse], Reverse)?;
            let p = cx.pair(inputs)?;
            Output::pair(&if b { sh::inv_shifted_hop(&p.inner, &p.outer)? } else { la::rev_hop(&p.inner, &p.outer)? })
        }
        Cmd::Revcrystal { inputs } | Cmd::ShiftedInvcoplactic { inputs } => {
            cx.variant(&[Reverse], Reverse)?;
            let p = cx.pair(inputs)?;
            Output::pair(&if b {
                sh::inv_shifted_coplactic(&p.inner, &p.outer)?
            } else {
                la::rev_crystal(&p.inner, &p.outer)?
            })
        }
        Cmd::Chain { i, j, links } => {
            cx.type_a_only("chain")?;
            cx.variant(&[Oracle], Oracle)?;
            let ts = links.iter().map(|l| read_tableau(l, false, cx.canonicalize)).collect::<Result<Vec<_>>>()?;
            let c = sw::coswitch_chain(&TableauChain::new(ts)?, *i, *j)?;
            let mut o = Output::default();
            for (k, t) in c.links.into_iter().enumerate() {
                o.tableaux.push((format!("link{}", k + 1), t));
            }
            o
        }
        Cmd::Omega { inputs } | Cmd::ShiftedOmega { inputs } => {
            cx.variant(&[Oracle], Oracle)?;
            let p = cx.pair(inputs)?;
            let w = if b { sh::shifted_monodromy_omega(&p)? } else { sw::monodromy_omega(&p)? };
            let mut o = Output::pair(&w);
            o.notes.push(("fixed".into(), json!(w == p)));
            o
        }
        Cmd::Verify { inputs, sweep } => return verify(&cx, inputs, *sweep),
        Cmd::Bench { random, family, bound } => return bench(&cx, *random, family.as_deref(), bound.as_deref()),
    };
    Ok(out.render(cli.format == Format::Json, cli.trace))
}

/// hop, crystal and mixed all compute pesh; `reverse` undoes hop.
fn pesh_like(p: &TableauPair, v: Variant, b: bool) -> Result<Output> {
    use Variant::*;
    Ok(match (v, b) {
        (Oracle, false) => Output::pair(&sw::pesh(p)?),
        (Oracle, true) => Output::pair(&sh::shifted_pesh(p)?),
        (Hop, false) => local(la::hop(&p.inner, &p.outer)?),
        (Hop, true) => local(sh::shifted_hop(&p.inner, &p.outer)?),
        (Crystal, false) => local(la::crystal_alg_traced(&p.inner, &p.outer)?),
        (Crystal, true) => local(sh::shifted_coplactic_alg(&p.inner, &p.outer)?),
        (Mixed, _) => local(la::mixed_alg_traced(&p.inner, &p.outer)?),
        (Reverse, false) => Output::pair(&la::rev_hop(&p.inner, &p.outer)?),
        (Reverse, true) => Output::pair(&sh::inv_shifted_hop(&p.inner, &p.outer)?),
        (Array, _) => unreachable!("rejected by variant check"),
    })
}

fn sweep_cap() -> Option<usize> {
    std::env::var("TABLEAU_SWEEP_MAX").ok().and_then(|s| s.trim().parse().ok())
}

fn verify(cx: &Ctx, inputs: &[String], sweep: Option<usize>) -> Result<String> {
    let check = if cx.shifted { check_pair_b } else { check_pair_a };
    let pairs = match sweep {
        Some(n) => {
            if !inputs.is_empty() {
                bail!(usage("verify takes either inputs or --sweep"));
            }
            let n = sweep_cap().map_or(n, |cap| n.min(cap));
            if cx.shifted {
                checks::type_b_sweep(4, n)
            } else {
                checks::type_a_sweep(3, 4, n)
            }
        }
        None => vec![cx.pair(inputs)?],
    };
    let mut r = Report::new("verify");
    r.absorb(par_map(&pairs, check));
    for f in r.failures.iter().take(5) {
        eprintln!("{f}");
    }
    let line = format!("{}: {} instances, {} mismatches\n", if r.ok() { "OK" } else { "FAIL" }, r.instances, r.mismatches);
    if r.ok() {
        Ok(line)
    } else {
        print!("{line}");
        Err(Mismatch.into())
    }
}

#[derive(Debug)]
struct Mismatch;

impl std::fmt::Display for Mismatch {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str("verification failed")
    }
}

impl std::error::Error for Mismatch {}

fn bench(cx: &Ctx, random: Option<usize>, family: Option<&str>, bound: Option<&str>) -> Result<String> {
    cx.type_a_only("bench")?;
    let is_family = random.is_none();
    let pairs = match (random, family) {
        (Some(_), Some(_)) => bail!(usage("--random and --family are exclusive")),
        (Some(n), None) => checks::random_instances(cx.seed, n),
        (None, Some(f)) => {
            let start = cx.pair(&[f.to_string()])?;
            let bound: Partition = bound.unwrap_or_default().parse()?;
            instances::outward_family(&start, &bound)?
        }
        (None, None) => instances::complexity_family()?,
    };
    let mut csv = String::from("id,alpha,beta,lambda,phase1,phase2,oracle\n");
    let mut rows = Vec::new();
    let mut over = 0;
    for (id, p) in pairs.iter().enumerate() {
        let row = step_row(id, p)?;
        if row.local() > step_bound(&rect_shape(&p.inner), &content(&p.outer)) {
            over += 1;
        }
        csv.push_str(&format!(
            "{},{},{},{},{},{},{}\n",
            row.id, row.alpha, row.beta, row.lambda, row.phase1, row.phase2, row.oracle
        ));
        rows.push(row);
    }
    eprintln!("bound exceeded: {over} of {}", rows.len());
    let mut ok = over == 0;
    if is_family {
        let constant = rows.windows(2).all(|w| w[0].local() == w[1].local());
        // with no inner entries there is nothing to shuffle and both counts stay 0
        let growing = rows.iter().all(|r| r.beta == 0) || rows.windows(2).all(|w| w[0].oracle < w[1].oracle);
        eprintln!("local steps constant: {constant}");
        eprintln!("oracle steps increasing: {growing}");
        ok &= constant && growing;
    }
    if ok {
        Ok(csv)
    } else {
        print!("{csv}");
        Err(Mismatch.into())
    }
}

fn exit_code(e: &anyhow::Error) -> u8 {
    if e.is::<Mismatch>() {
        return 1;
    }
    match e.downcast_ref::<Error>() {
        Some(Error::Parse(_)) => 2,
        Some(Error::Precondition(_) | Error::Shape(_)) => 3,
        _ => 1,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(s) => {
            print!("{s}");
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(exit_code(&e))
        }
    }
}
