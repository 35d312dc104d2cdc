//! Reading tableaux from files or inline grids, and printing results.

use anyhow::{Context, Result};
use serde_json::{json, Value};
use std::path::Path;
use tableau_core::localalg::TransitionData;
use tableau_core::{Tableau, TableauPair};

/// A file path, or an inline grid with `/` between rows. JSON is accepted
/// when the text starts with `{`. An empty file is the empty tableau.
pub fn read_tableau(arg: &str, shifted: bool, canonicalize: bool) -> Result<Tableau> {
    parse_tableau(arg, shifted, canonicalize).map_err(|e| match e.downcast::<tableau_core::Error>() {
        // a malformed grid is a parse failure, whatever the core calls it
        Ok(tableau_core::Error::Shape(m)) => tableau_core::Error::Parse(format!("{arg}: {m}")).into(),
        Ok(e) => e.into(),
        Err(e) => e,
    })
}

fn parse_tableau(arg: &str, shifted: bool, canonicalize: bool) -> Result<Tableau> {
    let text = if Path::new(arg).is_file() {
        std::fs::read_to_string(arg).with_context(|| format!("reading {arg}"))?
    } else {
        arg.replace('/', "\n")
    };
    let t = if text.trim_start().starts_with('{') {
        let v: Value = serde_json::from_str(&text)
            .map_err(|e| tableau_core::Error::Parse(format!("{arg}: {e}")))?;
        Tableau::from_json(&v, shifted)?
    } else {
        Tableau::from_grid(&text, shifted)?
    };
    Ok(if canonicalize { t.canonical_form() } else { t })
}

/// One argument: a combined tableau with marks on one side. Two: inner, outer.
pub fn read_pair(args: &[String], shifted: bool, canonicalize: bool) -> Result<TableauPair> {
    let ts = args
        .iter()
        .map(|a| read_tableau(a, shifted, canonicalize))
        .collect::<Result<Vec<_>>>()?;
    Ok(match ts.as_slice() {
        [t] => TableauPair::from_marked(t)?,
        [x, t] => TableauPair::new(x.clone(), t.clone())?,
        _ => anyhow::bail!(usage("expected one combined tableau or an inner and an outer tableau")),
    })
}

pub fn usage(msg: &str) -> tableau_core::Error {
    tableau_core::Error::Parse(msg.to_string())
}

#[derive(Default)]
pub struct Output {
    pub tableaux: Vec<(String, Tableau)>,
    pub transition: Option<TransitionData>,
    pub trace: Option<Value>,
    pub notes: Vec<(String, Value)>,
}

impl Output {
    pub fn tableau(t: Tableau) -> Output {
        Output { tableaux: vec![("result".into(), t)], ..Default::default() }
    }

    pub fn pair(p: &TableauPair) -> Output {
        Output::tableau(p.combined())
    }

    pub fn render(&self, json_out: bool, show_trace: bool) -> String {
        if json_out {
            let mut v = json!({});
            for (name, t) in &self.tableaux {
                v[name] = t.to_json();
            }
            if let Some(td) = &self.transition {
                v["transition"] = json!(td.entries);
            }
            for (k, n) in &self.notes {
                v[k] = n.clone();
            }
            if show_trace {
                if let Some(tr) = &self.trace {
                    v["trace"] = tr.clone();
                }
            }
            return format!("{v}\n");
        }
        let mut s = String::new();
        for (i, (_, t)) in self.tableaux.iter().enumerate() {
            if i > 0 {
                s.push_str("--\n");
            }
            s.push_str(&t.to_grid());
        }
        if let Some(td) = &self.transition {
            s.push_str("transition:");
            for a in &td.entries {
                s.push_str(&format!(" {a}"));
            }
            s.push('\n');
        }
        for (k, n) in &self.notes {
            s.push_str(&format!("{k}: {n}\n"));
        }
        if show_trace {
            if let Some(tr) = &self.trace {
                s.push_str(&format!("{tr}\n"));
            }
        }
        s
    }
}
