//! Conversions between the canonical network and the alternative models:
//! pillar networks (separate layers joined by a one-to-one node mapping),
//! coarsening through a many-to-one node mapping, and the family-of-edge-sets
//! encoding.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::sync::Arc;

use crate::error::{validate_label, MsnError, Result};
use crate::network::{ActorId, Msn, Provenance, SsnView};

/// One identified node across pillar networks: at most one local actor per
/// network, given as `(network index, local actor)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IdentityClass {
    pub id: String,
    pub members: Vec<(usize, ActorId)>,
}

/// A family of single-layered networks, each with its own actor namespace,
/// plus a one-to-one mapping that identifies local actors across networks.
///
/// Fields are public so a pillar can be assembled from external data;
/// [`PillarNetwork::validate`] checks the mapping.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PillarNetwork {
    pub networks: Vec<SsnView>,
    pub classes: Vec<IdentityClass>,
}

impl PillarNetwork {
    /// Checks that every local actor is in exactly one class and that no
    /// class holds two actors of the same network.
    pub fn validate(&self) -> Result<()> {
        let mut owner: HashMap<(usize, ActorId), &str> = HashMap::new();
        let mut ids = BTreeSet::new();
        for class in &self.classes {
            validate_label(&class.id)?;
            if !ids.insert(class.id.as_str()) {
                return Err(MsnError::InvalidArgument(format!(
                    "duplicate class id `{}`",
                    class.id
                )));
            }
            let mut networks_seen = BTreeSet::new();
            for &(k, local) in &class.members {
                let network = self.networks.get(k).ok_or_else(|| {
                    MsnError::InvalidArgument(format!(
                        "class `{}` references network {k}, only {} exist",
                        class.id,
                        self.networks.len()
                    ))
                })?;
                if local.index() >= network.actor_count() {
                    return Err(MsnError::UnknownActor(format!("{local} in network {k}")));
                }
                if !networks_seen.insert(k) {
                    return Err(MsnError::NonInjectiveMapping(format!(
                        "class `{}` holds several actors of network {k}",
                        class.id
                    )));
                }
                if let Some(other) = owner.insert((k, local), &class.id) {
                    return Err(MsnError::NonInjectiveMapping(format!(
                        "actor `{}` of network {k} is in classes `{other}` and `{}`",
                        network.label(local),
                        class.id
                    )));
                }
            }
        }
        for (k, network) in self.networks.iter().enumerate() {
            for i in 0..network.actor_count() {
                let local = ActorId::from_index(i);
                if !owner.contains_key(&(k, local)) {
                    return Err(MsnError::UnmappedActor {
                        network: k,
                        actor: network.label(local).to_owned(),
                    });
                }
            }
        }
        Ok(())
    }
}

/// Splits a network into one single-layered network per layer. Every actor
/// becomes an identity class named by its label, holding its copy in each
/// network.
pub fn to_pillar(msn: &Msn) -> PillarNetwork {
    let networks = msn
        .layers()
        .map(|l| {
            let actors = Arc::new(msn.actor_labels().to_vec());
            let edges = msn.layer_edges(l).expect("own layer").collect();
            SsnView::from_parts(
                actors,
                edges,
                Provenance {
                    layers: vec![msn.layer_name(l).to_owned()],
                    policy: None,
                },
            )
        })
        .collect::<Vec<_>>();
    let classes = msn
        .actors()
        .map(|a| IdentityClass {
            id: msn.actor_label(a).to_owned(),
            members: (0..networks.len()).map(|k| (k, a)).collect(),
        })
        .collect();
    PillarNetwork { networks, classes }
}

/// Merges a pillar back into one network whose actors are the identity
/// classes; network `k` becomes layer `layer_names[k]`.
pub fn from_pillar<S: AsRef<str>>(pillar: &PillarNetwork, layer_names: &[S]) -> Result<Msn> {
    pillar.validate()?;
    if layer_names.len() != pillar.networks.len() {
        return Err(MsnError::InvalidArgument(format!(
            "{} layer names for {} networks",
            layer_names.len(),
            pillar.networks.len()
        )));
    }
    let mut msn = Msn::new(layer_names.iter().map(AsRef::as_ref))?;
    let mut class_of: HashMap<(usize, ActorId), ActorId> = HashMap::new();
    for class in &pillar.classes {
        let unified = msn.add_actor(&class.id)?;
        for &member in &class.members {
            class_of.insert(member, unified);
        }
    }
    for (k, network) in pillar.networks.iter().enumerate() {
        let layer = msn.layer(layer_names[k].as_ref()).expect("declared above");
        for (s, t) in network.edges() {
            msn.add_edge(class_of[&(k, s)], class_of[&(k, t)], layer)?;
        }
    }
    Ok(msn)
}

/// Total many-to-one assignment of fine actors to coarse actors, by label.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct NodeMapping {
    assignment: BTreeMap<String, String>,
}

impl NodeMapping {
    /// Builds a mapping from `(fine, coarse)` pairs. Repeating a pair is
    /// harmless; assigning one fine actor to two coarse actors is an error.
    pub fn new<I, A, B>(pairs: I) -> Result<Self>
    where
        I: IntoIterator<Item = (A, B)>,
        A: Into<String>,
        B: Into<String>,
    {
        let mut assignment = BTreeMap::new();
        for (fine, coarse) in pairs {
            let (fine, coarse) = (fine.into(), coarse.into());
            validate_label(&fine)?;
            validate_label(&coarse)?;
            if let Some(previous) = assignment.get(&fine) {
                if *previous != coarse {
                    return Err(MsnError::InvalidArgument(format!(
                        "actor `{fine}` assigned to both `{previous}` and `{coarse}`"
                    )));
                }
            }
            assignment.insert(fine, coarse);
        }
        Ok(NodeMapping { assignment })
    }

    pub fn identity<S: AsRef<str>>(labels: &[S]) -> Result<Self> {
        Self::new(labels.iter().map(|l| (l.as_ref(), l.as_ref())))
    }

    pub fn get(&self, fine: &str) -> Option<&str> {
        self.assignment.get(fine).map(String::as_str)
    }

    pub fn len(&self) -> usize {
        self.assignment.len()
    }

    pub fn is_empty(&self) -> bool {
        self.assignment.is_empty()
    }

    pub fn pairs(&self) -> impl Iterator<Item = (&str, &str)> + '_ {
        self.assignment
            .iter()
            .map(|(f, c)| (f.as_str(), c.as_str()))
    }

    /// Composition: apply `self`, then `next`.
    pub fn then(&self, next: &NodeMapping) -> Result<NodeMapping> {
        let pairs = self
            .assignment
            .iter()
            .map(|(fine, mid)| {
                next.get(mid)
                    .map(|coarse| (fine.clone(), coarse.to_owned()))
                    .ok_or_else(|| MsnError::PartialMapping(mid.clone()))
            })
            .collect::<Result<Vec<_>>>()?;
        NodeMapping::new(pairs)
    }
}

/// Quotient graph of a coarsening: coarse actors with directed edge
/// multiplicities. Self-loops count edges internal to one coarse actor.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoarseGraph {
    actors: Vec<String>,
    counts: BTreeMap<(usize, usize), usize>,
}

impl CoarseGraph {
    /// Coarse actor labels, sorted.
    pub fn actors(&self) -> &[String] {
        &self.actors
    }

    pub fn count(&self, from: &str, to: &str) -> usize {
        let (Some(a), Some(b)) = (self.position(from), self.position(to)) else {
            return 0;
        };
        self.counts.get(&(a, b)).copied().unwrap_or(0)
    }

    pub fn total(&self) -> usize {
        self.counts.values().sum()
    }

    /// Non-zero entries as `(from, to, count)`, ordered by label.
    pub fn entries(&self) -> impl Iterator<Item = (&str, &str, usize)> + '_ {
        self.counts
            .iter()
            .map(|(&(a, b), &c)| (self.actors[a].as_str(), self.actors[b].as_str(), c))
    }

    /// Coarsens this graph again; multiplicities add up.
    pub fn coarsen(&self, mapping: &NodeMapping) -> Result<CoarseGraph> {
        quotient(
            &self.actors,
            self.counts.iter().map(|(&(a, b), &c)| (a, b, c)),
            mapping,
        )
    }

    fn position(&self, label: &str) -> Option<usize> {
        self.actors.binary_search_by(|a| a.as_str().cmp(label)).ok()
    }
}

/// Collapses a view through a many-to-one node mapping.
pub fn coarsen(view: &SsnView, mapping: &NodeMapping) -> Result<CoarseGraph> {
    quotient(
        view.actor_labels(),
        view.edges().map(|(s, t)| (s.index(), t.index(), 1)),
        mapping,
    )
}

fn quotient<I>(labels: &[String], edges: I, mapping: &NodeMapping) -> Result<CoarseGraph>
where
    I: Iterator<Item = (usize, usize, usize)>,
{
    let images = labels
        .iter()
        .map(|l| {
            mapping
                .get(l)
                .ok_or_else(|| MsnError::PartialMapping(l.clone()))
        })
        .collect::<Result<Vec<_>>>()?;
    let actors: Vec<String> = images
        .iter()
        .copied()
        .collect::<BTreeSet<_>>()
        .into_iter()
        .map(str::to_owned)
        .collect();
    let position: HashMap<&str, usize> = actors
        .iter()
        .enumerate()
        .map(|(i, a)| (a.as_str(), i))
        .collect();
    let mut counts = BTreeMap::new();
    for (s, t, c) in edges {
        let key = (position[images[s]], position[images[t]]);
        *counts.entry(key).or_insert(0) += c;
    }
    Ok(CoarseGraph { actors, counts })
}

/// One named relation `E_k ⊆ V × V` of an [`EdgeSetFamily`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EdgeSet {
    pub name: String,
    /// Pairs of indexes into [`EdgeSetFamily::actors`].
    pub pairs: BTreeSet<(usize, usize)>,
}

/// `M = (V, {E_1, ..., E_m})`: a shared actor set and one edge set per
/// relation. Interchangeable with [`Msn`] without loss.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct EdgeSetFamily {
    pub actors: Vec<String>,
    pub edge_sets: Vec<EdgeSet>,
}

pub fn to_edge_set_family(msn: &Msn) -> EdgeSetFamily {
    EdgeSetFamily {
        actors: msn.actor_labels().to_vec(),
        edge_sets: msn
            .layers()
            .map(|l| EdgeSet {
                name: msn.layer_name(l).to_owned(),
                pairs: msn
                    .layer_edges(l)
                    .expect("own layer")
                    .map(|(s, t)| (s.index(), t.index()))
                    .collect(),
            })
            .collect(),
    }
}

pub fn from_edge_set_family(family: &EdgeSetFamily) -> Result<Msn> {
    for set in &family.edge_sets {
        for &(s, t) in &set.pairs {
            if s == t {
                let actor = family
                    .actors
                    .get(s)
                    .cloned()
                    .unwrap_or_else(|| format!("#{s}"));
                return Err(MsnError::SelfPair {
                    set: set.name.clone(),
                    actor,
                });
            }
        }
    }
    let mut msn = Msn::new(family.edge_sets.iter().map(|s| s.name.as_str()))?;
    let mut ids = Vec::with_capacity(family.actors.len());
    for label in &family.actors {
        if msn.actor(label).is_some() {
            return Err(MsnError::InvalidArgument(format!(
                "duplicate actor `{label}`"
            )));
        }
        ids.push(msn.add_actor(label)?);
    }
    for (k, set) in family.edge_sets.iter().enumerate() {
        let layer = crate::network::LayerId::from_index(k);
        for &(s, t) in &set.pairs {
            let (Some(&x), Some(&y)) = (ids.get(s), ids.get(t)) else {
                return Err(MsnError::UnknownActor(format!("#{}", s.max(t))));
            };
            msn.add_edge(x, y, layer)?;
        }
    }
    Ok(msn)
}
