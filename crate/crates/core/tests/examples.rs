//! Worked examples on the bundled three-layer network.

mod common;

use std::collections::BTreeSet;

use common::FIG1_L1;
use msn::{
    aggregate_layers, compare_aggregations, fig1, time_series, to_edge_set_family, to_multigraph,
    to_pillar, AggregationPolicy, Direction, EventLog, GroupMembership, Msn, MsnError,
    TemporalEvent,
};

#[test]
fn fixture_shape() {
    let msn = fig1();
    assert_eq!(msn.actor_count(), 6);
    assert_eq!(msn.layer_names(), ["l1", "l2", "l3"]);
    let l1 = msn.layer("l1").unwrap();
    let got: BTreeSet<(String, String)> = msn
        .layer_projection(l1)
        .unwrap()
        .labeled_edges()
        .map(|(s, t)| (s.to_owned(), t.to_owned()))
        .collect();
    let want: BTreeSet<(String, String)> = FIG1_L1
        .iter()
        .map(|&(s, t)| (s.to_owned(), t.to_owned()))
        .collect();
    assert_eq!(got, want);
}

#[test]
fn directed_friendship() {
    let msn = fig1();
    let l1 = msn.layer("l1").unwrap();
    let y = msn.actor("y").unwrap();
    let z = msn.actor("z").unwrap();
    assert!(msn.has_edge(y, z, l1).unwrap());
    assert!(!msn.has_edge(z, y, l1).unwrap());
}

#[test]
fn removing_an_actor_removes_its_edges() {
    let mut msn = fig1();
    let l1 = msn.layer("l1").unwrap();
    msn.remove_actor(msn.actor("z").unwrap()).unwrap();
    assert_eq!(msn.layer_edge_count(l1).unwrap(), 4);
    assert_eq!(msn.actor_count(), 5);
    assert!(matches!(
        msn.add_labeled_edge("x", "x", "l1"),
        Err(MsnError::SelfLoop(_))
    ));
}

#[test]
fn representations_of_the_fixture() {
    let msn = fig1();
    let mg = to_multigraph(&msn);
    assert_eq!(mg.total(), 21);
    let x = msn.actor("x").unwrap();
    let y = msn.actor("y").unwrap();
    // x→y is present on l1 and l3
    assert_eq!(mg.multiedge_count(x, y).unwrap(), 2);

    let pillar = to_pillar(&msn);
    assert_eq!(pillar.networks.len(), 3);
    assert!(pillar.networks.iter().all(|n| n.actor_count() == 6));
    assert_eq!(pillar.classes.len(), 6);
    assert!(pillar.classes.iter().all(|c| c.members.len() == 3));

    let family = to_edge_set_family(&msn);
    let sizes: Vec<usize> = family.edge_sets.iter().map(|e| e.pairs.len()).collect();
    assert_eq!(sizes, [8, 6, 7]);
}

#[test]
fn aggregation_bounds() {
    let msn = fig1();
    let all: Vec<_> = msn.layers().collect();
    let union = aggregate_layers(&msn, &all, AggregationPolicy::Union).unwrap();
    let count = aggregate_layers(&msn, &all, AggregationPolicy::Count).unwrap();
    assert!((8..=21).contains(&union.view.edge_count()));
    assert_eq!(count.mass(), 21);

    let l1 = msn.layer("l1").unwrap();
    let l2 = msn.layer("l2").unwrap();
    let report = compare_aggregations(&msn, &[l1], &[l2]).unwrap();
    assert_eq!(report.shared.len() + report.a_only.len(), 8);
    assert_eq!(report.shared.len() + report.b_only.len(), 6);
    assert!((0.0..=1.0).contains(&report.jaccard));
}

#[test]
fn degree_over_layers() {
    let msn = fig1();
    let x = msn.actor("x").unwrap();
    let all: Vec<_> = msn.layers().collect();
    let union =
        msn::measures::degree(&msn, x, Direction::Out, &all, AggregationPolicy::Union).unwrap();
    let count =
        msn::measures::degree(&msn, x, Direction::Out, &all, AggregationPolicy::Count).unwrap();
    // y is an out-neighbour on both l1 and l3
    assert!(union < count);
}

#[test]
fn tumbling_windows_report_gaps() {
    let mut log = EventLog::new(&["l1"]).unwrap();
    for (s, t, ts) in [("a", "b", 0), ("b", "c", 4), ("c", "a", 9), ("a", "c", 25)] {
        log.push(TemporalEvent::new(s, t, "l1", ts).unwrap())
            .unwrap();
    }
    let series = time_series(&log, &GroupMembership::new(), &["l1"], None, 10, 10).unwrap();
    let edges: Vec<usize> = series.iter().map(|(_, m)| m.edge_count()).collect();
    assert_eq!(edges, [3, 0, 1]);
    let starts: Vec<u64> = series.iter().map(|(w, _)| w.start()).collect();
    assert_eq!(starts, [0, 10, 20]);
    assert!(series.iter().all(|(_, m): &(_, Msn)| m.actor_count() == 3));
}
