use tableau_core::localalg::{coswitch_local, hop};
use tableau_core::switching::{coswitch, coswitch_chain, is_fixed_point, pesh, switch, TableauChain};
use tableau_core::tableau::grid;
use tableau_core::{Entry, Tableau, TableauPair};

fn numeric_pair(x: &str, t: &str) -> TableauPair {
    TableauPair::new(grid(x), grid(t)).unwrap()
}

#[test]
fn pesh_figure() {
    let p = numeric_pair(". . 1 2/. 2 2/1", ". . . . 1/. . . 3/. 2 3");
    let s = pesh(&p).unwrap();
    assert_eq!(s.inner, grid(". . 3 3/. 1/2"));
    assert_eq!(s.outer, grid(". . . . 2/. . 1 1/. 1 2"));
}

#[test]
fn pesh_has_order_four_here() {
    let p = numeric_pair(". . 1 2/. 2 2/1", ". . . . 1/. . . 3/. 2 3");
    let twice = pesh(&pesh(&p).unwrap()).unwrap();
    assert_ne!(twice, p);
    assert_eq!(pesh(&pesh(&twice).unwrap()).unwrap(), p);
}

#[test]
fn chain_wall_crossing() {
    let blue = grid(". . 1 1/. 1 2/1");
    let red = grid(". . . . 1/. . . 2/. 1 1");
    let out = coswitch_chain(&TableauChain::new(vec![blue.clone(), red.clone()]).unwrap(), 1, 2).unwrap();
    assert_eq!(out.links[0], grid(". . 1 1/. 1/2"));
    assert_eq!(out.links[1], grid(". . . . 1/. . 1 1/. 1 2"));
    let direct = coswitch(&TableauPair::new(blue, red).unwrap()).unwrap();
    assert_eq!(direct.inner, out.links[0]);
    assert_eq!(direct.outer, out.links[1]);
}

/// The single-box links of a standard tableau.
fn boxes(x: &Tableau) -> Vec<Tableau> {
    (1..=x.len() as i32)
        .map(|k| {
            let rows = x
                .raw_rows()
                .iter()
                .map(|row| {
                    let mut out = Vec::new();
                    for (c, e) in row.iter().enumerate() {
                        match e.and_then(|e| e.value()) {
                            Some(v) if v < k => out.push(None),
                            Some(v) if v == k => {
                                out.resize(c, None);
                                out.push(Some(Entry::num(1)));
                            }
                            None if e.is_none() => out.push(None),
                            _ => {}
                        }
                    }
                    out
                })
                .collect();
            Tableau::from_rows(rows, false).unwrap()
        })
        .collect()
}

#[test]
fn chain_of_boxes_is_pesh() {
    let x = grid(". . 3 4/. 2 5/1");
    let t = grid(". . . . 1/. . . 2/. 1 1");
    let mut links = boxes(&x);
    links.push(t.clone());
    let out = coswitch_chain(&TableauChain::new(links).unwrap(), 1, 6).unwrap();
    let p = pesh(&TableauPair::new(x, t).unwrap()).unwrap();
    assert_eq!(p.inner, grid(". . 1 1/. 1/2"));
    assert_eq!(p.outer, grid(". . . . 5/. . 1 4/. 2 3"));
    assert_eq!(out.links[0], p.inner);
    // output box k sits where pesh put label k
    for k in 1..=5 {
        let cell = out.links[k].cells()[0];
        assert_eq!(p.outer.get(cell), Some(Entry::num(k as i32)));
    }
}

#[test]
fn monodromy_fixed_point() {
    let pair = TableauPair::from_marked(&grid(". . x1 1 1/. x2 1 2/x3 1")).unwrap();
    let c = coswitch_local(&pair.inner, &pair.outer).unwrap();
    assert_eq!(c.combined(), grid(". . 1 1 x1/. 1 2 x2/1 x3"));
    assert_eq!(c, coswitch(&pair).unwrap());
    assert_eq!(switch(&c).unwrap(), pair);
    assert!(is_fixed_point(&pair).unwrap());
    // hop alone gives pesh, which differs here only if X is not self-evacuating
    assert_eq!(hop(&pair.inner, &pair.outer).unwrap().pair, pesh(&pair).unwrap());
}
