use tableau_core::checks::{alpha_scaling, random_instances, step_bounds, step_row};
use tableau_core::instances::complexity_family;
use tableau_core::localalg::hop;
use tableau_core::{Partition, Tableau, TableauPair};

#[test]
fn family_spans_zero_to_twelve() {
    let fam = complexity_family().unwrap();
    let sizes: Vec<usize> = fam.iter().map(|p| p.inner.inner().size()).collect();
    assert_eq!(sizes, (0..=12).collect::<Vec<_>>());
    assert_eq!(fam.last().unwrap().inner.inner(), Partition::new(vec![5, 4, 3]).unwrap());
}

#[test]
fn local_count_flat_oracle_count_rising() {
    let (r, rows) = alpha_scaling().unwrap();
    assert!(r.ok(), "{:?}", r.failures);
    // frozen measurements
    assert!(rows.iter().all(|x| (x.phase1, x.phase2) == (4, 6)));
    let oracle: Vec<usize> = rows.iter().map(|x| x.oracle).collect();
    assert_eq!(oracle, [10, 22, 34, 46, 58, 70, 72, 76, 80, 84, 86, 88, 90]);
}

#[test]
fn bound_on_random_instances() {
    let r = step_bounds(&random_instances(5, 1000));
    assert!(r.ok(), "{:?}", r.failures);
}

#[test]
fn empty_inner_costs_nothing() {
    let t = Tableau::highest_weight(&Partition::new(vec![3, 1]).unwrap());
    let o = hop(&Tableau::empty(false), &t).unwrap();
    assert_eq!(o.trace.total_steps(), 0);
    let row = step_row(0, &TableauPair { inner: Tableau::empty(false), outer: t }).unwrap();
    assert_eq!(row.local(), 0);
}
