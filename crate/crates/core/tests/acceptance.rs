//! Acceptance gate: runs every criterion and prints one PASS/FAIL line each.
//! Exits non-zero if any criterion fails.

mod common;

use std::collections::{BTreeMap, BTreeSet};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use common::{sample_instances, sample_mappings, Instance, FIG1_L1};
use msn::io::{parse_network, write_edge_list};
use msn::measures::density_ranking;
use msn::models::EdgeSet;
use msn::{
    aggregate_layers, coarsen, from_edge_set_family, from_pillar, snapshot, to_edge_set_family,
    to_multigraph, to_pillar, AggregationPolicy, Direction, EdgeSetFamily, EventLog,
    GroupMembership, Msn, NodeMapping, SnapshotKey, TimeWindow,
};
use proptest::test_runner::TestRunner;

const RANDOM_INSTANCES: usize = 1000;
const MAPPINGS_PER_INSTANCE: usize = 100;
const FIXTURE_LOAD_LIMIT: Duration = Duration::from_secs(1);
const DENSITY_TOLERANCE: f64 = 1e-12;

type Outcome = Result<String, String>;

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        let holds: bool = $cond;
        if !holds {
            return Err(format!($($msg)+));
        }
    };
}

fn labels(msn: &Msn, ids: &BTreeSet<msn::ActorId>) -> BTreeSet<String> {
    ids.iter().map(|&a| msn.actor_label(a).to_owned()).collect()
}

fn set(items: &[&str]) -> BTreeSet<String> {
    items.iter().map(|s| s.to_string()).collect()
}

fn fixture_reproduction() -> Outcome {
    let start = Instant::now();
    let msn = msn::fig1();
    let elapsed = start.elapsed();
    ensure!(msn.actor_count() == 6, "|V| = {}", msn.actor_count());
    ensure!(msn.layer_count() == 3, "|L| = {}", msn.layer_count());
    let counts: Vec<usize> = msn
        .layers()
        .map(|l| msn.layer_edge_count(l).unwrap())
        .collect();
    ensure!(
        msn.layer_names() == ["l1", "l2", "l3"],
        "layers {:?}",
        msn.layer_names()
    );
    ensure!(counts == [8, 6, 7], "per-layer counts {counts:?}");
    ensure!(elapsed < FIXTURE_LOAD_LIMIT, "load took {elapsed:?}");
    Ok(format!("|V|=6 |L|=3 counts=(8,6,7) in {elapsed:?}"))
}

fn l1_structure() -> Outcome {
    let msn = msn::fig1();
    let l1 = msn.layer("l1").unwrap();
    let view = msn.layer_projection(l1).unwrap();
    let got: BTreeSet<(String, String)> = view
        .labeled_edges()
        .map(|(s, t)| (s.to_owned(), t.to_owned()))
        .collect();
    let reference: BTreeSet<(String, String)> = FIG1_L1
        .iter()
        .map(|&(s, t)| (s.to_owned(), t.to_owned()))
        .collect();
    ensure!(got == reference, "l1 edges {got:?}");

    let id = |l: &str| msn.actor(l).unwrap();
    let out_x = labels(
        &msn,
        &msn.neighbors(id("x"), Direction::Out, &[l1]).unwrap(),
    );
    ensure!(out_x == set(&["y", "z"]), "out(x) = {out_x:?}");
    let in_z = labels(&msn, &msn.neighbors(id("z"), Direction::In, &[l1]).unwrap());
    ensure!(in_z == set(&["x", "y", "u"]), "in(z) = {in_z:?}");
    let t = id("t");
    let t_out = msn.neighbors(t, Direction::Out, &[l1]).unwrap();
    let t_in = msn.neighbors(t, Direction::In, &[l1]).unwrap();
    ensure!(
        t_out.is_empty() && t_in.is_empty(),
        "t is not isolated on l1"
    );
    Ok("8 reference tuples, out(x)={y,z}, in(z)={x,y,u}, t isolated".into())
}

fn density_ordering() -> Outcome {
    let msn = msn::fig1();
    let ranking = density_ranking(&msn).map_err(|e| e.to_string())?;
    let order: Vec<&str> = ranking.iter().map(|r| r.layer.as_str()).collect();
    ensure!(order == ["l1", "l3", "l2"], "ranking {order:?}");
    for (report, (edges, possible)) in ranking.iter().zip([(8, 30), (7, 30), (6, 30)]) {
        ensure!(
            report.edges == edges && report.possible == possible,
            "{} = {}/{}",
            report.layer,
            report.edges,
            report.possible
        );
        let expected = edges as f64 / possible as f64;
        ensure!(
            (report.value() - expected).abs() <= DENSITY_TOLERANCE,
            "{} density {}",
            report.layer,
            report.value()
        );
    }
    Ok("l1 (8/30) > l3 (7/30) > l2 (6/30)".into())
}

fn repeated_list_example() -> Outcome {
    let mut msn = Msn::new(["l1", "l2", "l3"]).unwrap();
    for (target, layer) in [
        ("v", "l1"),
        ("y", "l1"),
        ("y", "l2"),
        ("y", "l3"),
        ("z", "l1"),
        ("z", "l2"),
    ] {
        msn.add_labeled_edge("x", target, layer).unwrap();
    }
    let mg = to_multigraph(&msn);
    let id = |l: &str| msn.actor(l).unwrap();
    let x = id("x");
    for (target, expected) in [("v", 1), ("y", 3), ("z", 2)] {
        let got = mg.multiedge_count(x, id(target)).unwrap();
        ensure!(got == expected, "count(x,{target}) = {got}");
    }
    let list = mg.to_repeated_list();
    let rendered = format!("[{}]", list.labels(x).join(", "));
    ensure!(rendered == "[v, y, y, y, z, z]", "list {rendered}");
    Ok(format!("x -> {rendered}"))
}

fn family_from_instance(instance: &Instance) -> EdgeSetFamily {
    EdgeSetFamily {
        actors: instance.actors.clone(),
        edge_sets: instance
            .layers
            .iter()
            .enumerate()
            .map(|(l, name)| EdgeSet {
                name: name.clone(),
                pairs: instance
                    .edges
                    .iter()
                    .filter(|e| e.2 == l)
                    .map(|&(s, t, _)| (s, t))
                    .collect(),
            })
            .collect(),
    }
}

fn conversion_round_trips(instances: &[Instance]) -> Outcome {
    for (i, instance) in instances.iter().enumerate() {
        let msn = instance.build();
        let back =
            from_pillar(&to_pillar(&msn), msn.layer_names()).map_err(|e| format!("#{i}: {e}"))?;
        ensure!(back == msn, "#{i}: pillar round trip differs");

        let back =
            from_edge_set_family(&to_edge_set_family(&msn)).map_err(|e| format!("#{i}: {e}"))?;
        ensure!(back == msn, "#{i}: msn -> family -> msn differs");
        let family = family_from_instance(instance);
        let again =
            to_edge_set_family(&from_edge_set_family(&family).map_err(|e| format!("#{i}: {e}"))?);
        ensure!(again == family, "#{i}: family -> msn -> family differs");

        let text = write_edge_list(&msn);
        let parsed = parse_network(text.as_bytes(), None).map_err(|e| format!("#{i}: {e}"))?;
        ensure!(parsed == msn, "#{i}: parse(write(G)) differs");
        ensure!(
            parsed.labeled_edges().len() == instance.triples().len(),
            "#{i}: edge loss"
        );
    }
    Ok(format!("{} instances, 0 failures", instances.len()))
}

fn conservation(instances: &[Instance]) -> Outcome {
    let mut coarsenings = 0usize;
    let mut runner = TestRunner::deterministic();
    for (i, instance) in instances.iter().enumerate() {
        let msn = instance.build();
        let expected = instance.triples().len();
        let per_layer: usize = msn.layers().map(|l| msn.layer_edge_count(l).unwrap()).sum();
        ensure!(
            per_layer == expected && msn.edge_count() == expected,
            "#{i}: Σ|E_l| = {per_layer}, |E| = {expected}"
        );
        let mg = to_multigraph(&msn);
        ensure!(mg.total() == expected, "#{i}: Σ counts = {}", mg.total());

        let mut views: Vec<_> = msn
            .layers()
            .map(|l| msn.layer_projection(l).unwrap())
            .collect();
        if msn.layer_count() > 0 {
            let all: Vec<_> = msn.layers().collect();
            views.push(
                aggregate_layers(&msn, &all, AggregationPolicy::Union)
                    .unwrap()
                    .view,
            );
        }
        for (j, pairs) in sample_mappings(&mut runner, &instance.actors, MAPPINGS_PER_INSTANCE)
            .into_iter()
            .enumerate()
        {
            let mapping = NodeMapping::new(pairs).map_err(|e| e.to_string())?;
            for view in &views {
                let coarse = coarsen(view, &mapping).map_err(|e| format!("#{i}/{j}: {e}"))?;
                ensure!(
                    coarse.total() == view.edge_count(),
                    "#{i}/{j}: Σ coarse = {}, |view| = {}",
                    coarse.total(),
                    view.edge_count()
                );
                coarsenings += 1;
            }
        }
    }
    Ok(format!(
        "{} instances, {coarsenings} coarsenings, 0 failures",
        instances.len()
    ))
}

fn aggregation_coherence(instances: &[Instance]) -> Outcome {
    for (i, instance) in instances.iter().enumerate() {
        let msn = instance.build();
        for l in msn.layers() {
            let agg = aggregate_layers(&msn, &[l], AggregationPolicy::Union).unwrap();
            let projection = msn.layer_projection(l).unwrap();
            ensure!(
                agg.view.edge_set() == projection.edge_set(),
                "#{i}: layer {l} union != projection"
            );
            let oracle = instance.layer_pairs(l.index());
            let got: BTreeSet<(String, String)> = projection
                .labeled_edges()
                .map(|(s, t)| (s.to_owned(), t.to_owned()))
                .collect();
            ensure!(
                got == oracle,
                "#{i}: projection of layer {l} differs from brute force"
            );
        }
        if msn.layer_count() == 0 {
            continue;
        }
        let all: Vec<_> = msn.layers().collect();
        let count = aggregate_layers(&msn, &all, AggregationPolicy::Count).unwrap();
        let mg = to_multigraph(&msn);
        ensure!(
            count.counts.as_ref() == Some(mg.counts()),
            "#{i}: COUNT != multigraph counts"
        );
        let labelled: BTreeMap<(String, String), usize> = mg
            .counts()
            .iter()
            .map(|(&(s, t), &c)| ((mg.label(s).to_owned(), mg.label(t).to_owned()), c))
            .collect();
        ensure!(
            labelled == instance.pair_tally(),
            "#{i}: multigraph != brute-force tally"
        );
    }
    Ok(format!("{} instances, 0 failures", instances.len()))
}

fn coarsen_golden() -> Outcome {
    let msn = msn::fig1();
    let view = msn.layer_projection(msn.layer("l1").unwrap()).unwrap();
    let mapping = NodeMapping::new([
        ("x", "D1"),
        ("y", "D1"),
        ("z", "D1"),
        ("t", "D2"),
        ("u", "D2"),
        ("v", "D2"),
    ])
    .unwrap();
    let coarse = coarsen(&view, &mapping).map_err(|e| e.to_string())?;

    // independent tally over the reference tuples
    let dept = |a: &str| {
        if ["x", "y", "z"].contains(&a) {
            "D1"
        } else {
            "D2"
        }
    };
    let mut oracle: BTreeMap<(&str, &str), usize> = BTreeMap::new();
    for (s, t) in FIG1_L1 {
        *oracle.entry((dept(s), dept(t))).or_default() += 1;
    }
    for (from, to, expected) in [
        ("D1", "D1", 5),
        ("D2", "D2", 2),
        ("D2", "D1", 1),
        ("D1", "D2", 0),
    ] {
        let got = coarse.count(from, to);
        ensure!(got == expected, "{from}->{to} = {got}");
        ensure!(
            oracle.get(&(from, to)).copied().unwrap_or(0) == expected,
            "oracle disagrees on {from}->{to}"
        );
    }
    Ok("D1->D1 5, D2->D2 2, D2->D1 1, D1->D2 0".into())
}

fn lossiness_witness() -> Outcome {
    let mut first = Msn::new(["l1", "l2"]).unwrap();
    first.add_labeled_edge("a", "b", "l1").unwrap();
    first.add_labeled_edge("b", "a", "l2").unwrap();
    let mut second = Msn::new(["l1", "l2"]).unwrap();
    second.add_labeled_edge("a", "b", "l2").unwrap();
    second.add_labeled_edge("b", "a", "l1").unwrap();
    ensure!(first != second, "witness networks are equal");
    let (m1, m2) = (to_multigraph(&first), to_multigraph(&second));
    ensure!(m1 == m2, "multigraph views differ");
    Ok("two distinct networks share one multigraph view".into())
}

fn snapshot_identity() -> Outcome {
    let msn = msn::fig1();
    let log = EventLog::from_msn(&msn, 0);
    let key = SnapshotKey::new(msn.layer_names(), TimeWindow::new(0, 1).unwrap(), None)
        .map_err(|e| e.to_string())?;
    let snap = snapshot(&log, &GroupMembership::new(), &key).map_err(|e| e.to_string())?;
    ensure!(snap == msn, "snapshot differs from fixture");
    ensure!(
        snap.labeled_edges() == msn.labeled_edges(),
        "edge sets differ"
    );
    Ok(format!("{} edges reproduced", snap.edge_count()))
}

fn run(name: &str, check: impl FnOnce() -> Outcome) -> bool {
    let result = catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|panic| {
        let msg = panic
            .downcast_ref::<String>()
            .cloned()
            .or_else(|| panic.downcast_ref::<&str>().map(|s| s.to_string()))
            .unwrap_or_else(|| "panic".into());
        Err(format!("panicked: {msg}"))
    });
    match result {
        Ok(detail) => {
            println!("PASS  {name}: {detail}");
            true
        }
        Err(detail) => {
            println!("FAIL  {name}: {detail}");
            false
        }
    }
}

fn main() {
    let instances = sample_instances(RANDOM_INSTANCES);
    let results = [
        run("1 fixture reproduction", fixture_reproduction),
        run("2 l1 structure", l1_structure),
        run("3 density ordering", density_ordering),
        run("4 repeated adjacency list", repeated_list_example),
        run("5 conversion round-trips", || {
            conversion_round_trips(&instances)
        }),
        run("6 conservation", || conservation(&instances)),
        run("7 aggregation coherence", || {
            aggregation_coherence(&instances)
        }),
        run("8 coarsen golden case", coarsen_golden),
        run("9 lossiness witness", lossiness_witness),
        run("10 snapshot identity", snapshot_identity),
    ];
    let failed = results.iter().filter(|ok| !**ok).count();
    println!(
        "acceptance: {} passed, {failed} failed",
        results.len() - failed
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
