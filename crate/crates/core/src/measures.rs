//! Layer-wise degree, neighbourhood and density.

use std::cmp::Ordering;
use std::collections::BTreeSet;

use crate::dimensions::AggregationPolicy;
use crate::error::{MsnError, Result};
use crate::network::{ActorId, Direction, LayerId, Msn};

/// Degree of `x` over `layers`.
///
/// `Union` counts distinct neighbours across the layers, `Count` sums the
/// per-layer degrees.
pub fn degree(
    msn: &Msn,
    x: ActorId,
    direction: Direction,
    layers: &[LayerId],
    policy: AggregationPolicy,
) -> Result<usize> {
    match policy {
        AggregationPolicy::Union => Ok(msn.neighbors(x, direction, layers)?.len()),
        AggregationPolicy::Count => {
            msn.check_actor(x)?;
            if layers.is_empty() {
                return Err(MsnError::EmptyLayerSet);
            }
            layers
                .iter()
                .map(|&l| msn.adjacent(x, l, direction).map(BTreeSet::len))
                .sum()
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LayerDegree {
    pub layer: String,
    pub in_degree: usize,
    pub out_degree: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DegreeReport {
    pub actor: String,
    pub per_layer: Vec<LayerDegree>,
    pub policy: AggregationPolicy,
    pub in_degree: usize,
    pub out_degree: usize,
}

pub fn degree_report(
    msn: &Msn,
    x: ActorId,
    layers: &[LayerId],
    policy: AggregationPolicy,
) -> Result<DegreeReport> {
    let per_layer = layers
        .iter()
        .map(|&l| {
            Ok(LayerDegree {
                layer: msn.layer_name(l).to_owned(),
                in_degree: degree(msn, x, Direction::In, &[l], AggregationPolicy::Count)?,
                out_degree: degree(msn, x, Direction::Out, &[l], AggregationPolicy::Count)?,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(DegreeReport {
        actor: msn.actor_label(x).to_owned(),
        per_layer,
        policy,
        in_degree: degree(msn, x, Direction::In, layers, policy)?,
        out_degree: degree(msn, x, Direction::Out, layers, policy)?,
    })
}

/// Directed density of one layer over the shared actor set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DensityReport {
    pub layer: String,
    pub edges: usize,
    /// `|V|·(|V|−1)`.
    pub possible: usize,
}

impl DensityReport {
    pub fn value(&self) -> f64 {
        self.edges as f64 / self.possible as f64
    }

    /// Exact comparison of the two ratios.
    fn cmp_density(&self, other: &Self) -> Ordering {
        let lhs = self.edges as u128 * other.possible as u128;
        let rhs = other.edges as u128 * self.possible as u128;
        lhs.cmp(&rhs)
    }
}

pub fn density_report(msn: &Msn, l: LayerId) -> Result<DensityReport> {
    let n = msn.actor_count();
    if n < 2 {
        return Err(MsnError::TooFewActors(n));
    }
    Ok(DensityReport {
        layer: msn.layer_name(l).to_owned(),
        edges: msn.layer_edge_count(l)?,
        possible: n * (n - 1),
    })
}

pub fn density(msn: &Msn, l: LayerId) -> Result<f64> {
    density_report(msn, l).map(|r| r.value())
}

/// All layers, densest first; ties are ordered by layer name.
pub fn density_ranking(msn: &Msn) -> Result<Vec<DensityReport>> {
    let mut reports = msn
        .layers()
        .map(|l| density_report(msn, l))
        .collect::<Result<Vec<_>>>()?;
    if reports.is_empty() && msn.actor_count() < 2 {
        return Err(MsnError::TooFewActors(msn.actor_count()));
    }
    reports.sort_by(|a, b| b.cmp_density(a).then_with(|| a.layer.cmp(&b.layer)));
    Ok(reports)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LayerNeighbourhood {
    pub layer: String,
    pub out: BTreeSet<ActorId>,
    pub inc: BTreeSet<ActorId>,
}

/// Per-layer neighbour sets of one actor. `union` and `intersection` range
/// over the out-neighbour sets of every layer.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NeighbourhoodReport {
    pub actor: ActorId,
    pub per_layer: Vec<LayerNeighbourhood>,
    pub union: BTreeSet<ActorId>,
    pub intersection: BTreeSet<ActorId>,
}

pub fn neighbourhood_report(msn: &Msn, x: ActorId) -> Result<NeighbourhoodReport> {
    msn.check_actor(x)?;
    let per_layer = msn
        .layers()
        .map(|l| {
            Ok(LayerNeighbourhood {
                layer: msn.layer_name(l).to_owned(),
                out: msn.adjacent(x, l, Direction::Out)?.clone(),
                inc: msn.adjacent(x, l, Direction::In)?.clone(),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let union = per_layer
        .iter()
        .flat_map(|n| n.out.iter().copied())
        .collect();
    let intersection = match per_layer.split_first() {
        None => BTreeSet::new(),
        Some((first, rest)) => rest.iter().fold(first.out.clone(), |acc, n| {
            acc.intersection(&n.out).copied().collect()
        }),
    };
    Ok(NeighbourhoodReport {
        actor: x,
        per_layer,
        union,
        intersection,
    })
}
