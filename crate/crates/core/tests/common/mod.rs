#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet};

use msn::Msn;
use proptest::prelude::*;
use proptest::strategy::ValueTree;
use proptest::test_runner::TestRunner;

pub const MAX_ACTORS: usize = 8;
pub const MAX_LAYERS: usize = 4;

/// The reference friendship tuples of the three-layer example.
pub const FIG1_L1: [(&str, &str); 8] = [
    ("x", "y"),
    ("y", "x"),
    ("x", "z"),
    ("z", "x"),
    ("y", "z"),
    ("u", "z"),
    ("u", "v"),
    ("v", "u"),
];

/// Raw description of a small network, kept apart from the library types so
/// that test oracles can compute expectations without going through them.
#[derive(Debug, Clone)]
pub struct Instance {
    pub actors: Vec<String>,
    pub layers: Vec<String>,
    /// `(source, target, layer)` indexes, inserted in this order.
    pub edges: Vec<(usize, usize, usize)>,
}

impl Instance {
    pub fn build(&self) -> Msn {
        let mut msn = Msn::new(&self.layers).unwrap();
        for a in &self.actors {
            msn.add_actor(a).unwrap();
        }
        for &(s, t, l) in &self.edges {
            msn.add_labeled_edge(&self.actors[s], &self.actors[t], &self.layers[l])
                .unwrap();
        }
        msn
    }

    pub fn triples(&self) -> BTreeSet<(String, String, String)> {
        self.edges
            .iter()
            .map(|&(s, t, l)| {
                (
                    self.actors[s].clone(),
                    self.actors[t].clone(),
                    self.layers[l].clone(),
                )
            })
            .collect()
    }

    /// Brute-force tally of the layers carrying each ordered pair.
    pub fn pair_tally(&self) -> BTreeMap<(String, String), usize> {
        let mut tally = BTreeMap::new();
        for s in 0..self.actors.len() {
            for t in 0..self.actors.len() {
                let n = (0..self.layers.len())
                    .filter(|&l| self.edges.contains(&(s, t, l)))
                    .count();
                if n > 0 {
                    tally.insert((self.actors[s].clone(), self.actors[t].clone()), n);
                }
            }
        }
        tally
    }

    pub fn layer_pairs(&self, l: usize) -> BTreeSet<(String, String)> {
        self.edges
            .iter()
            .filter(|e| e.2 == l)
            .map(|&(s, t, _)| (self.actors[s].clone(), self.actors[t].clone()))
            .collect()
    }
}

pub fn instance() -> impl Strategy<Value = Instance> {
    (0..=MAX_ACTORS, 0..=MAX_LAYERS)
        .prop_flat_map(|(n, m)| {
            let mut slots = Vec::new();
            for s in 0..n {
                for t in 0..n {
                    if s != t {
                        for l in 0..m {
                            slots.push((s, t, l));
                        }
                    }
                }
            }
            let len = slots.len();
            (
                Just(n),
                Just(m),
                proptest::collection::vec(proptest::bool::weighted(0.3), len),
                Just(slots),
            )
        })
        .prop_flat_map(|(n, m, keep, slots)| {
            let chosen: Vec<_> = slots
                .into_iter()
                .zip(keep)
                .filter(|(_, k)| *k)
                .map(|(e, _)| e)
                .collect();
            (Just(n), Just(m), Just(chosen).prop_shuffle())
        })
        .prop_map(|(n, m, edges)| Instance {
            actors: (0..n).map(|i| format!("a{i}")).collect(),
            layers: (0..m).map(|i| format!("l{i}")).collect(),
            edges,
        })
}

/// `count` instances from a fixed-seed runner.
pub fn sample_instances(count: usize) -> Vec<Instance> {
    let mut runner = TestRunner::deterministic();
    let strategy = instance();
    (0..count)
        .map(|_| strategy.new_tree(&mut runner).unwrap().current())
        .collect()
}

/// Random total assignment of `actors` onto up to `|actors|` coarse labels.
pub fn sample_mappings(
    runner: &mut TestRunner,
    actors: &[String],
    count: usize,
) -> Vec<Vec<(String, String)>> {
    let len = actors.len();
    let strategy = (1..=len.max(1)).prop_flat_map(move |k| proptest::collection::vec(0..k, len));
    (0..count)
        .map(|_| {
            let assignment = strategy.new_tree(runner).unwrap().current();
            actors
                .iter()
                .zip(assignment)
                .map(|(a, c)| (a.clone(), format!("C{c}")))
                .collect()
        })
        .collect()
}
