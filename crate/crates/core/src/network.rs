//! The canonical multi-layered network: a unified actor set, a fixed layer
//! set and directed edges labelled with exactly one layer.

use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::sync::Arc;

use crate::dimensions::AggregationPolicy;
use crate::error::{validate_label, MsnError, Result};

/// Dense index of an actor inside one [`Msn`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ActorId(u32);

impl ActorId {
    pub fn index(self) -> usize {
        self.0 as usize
    }

    pub(crate) fn from_index(index: usize) -> Self {
        ActorId(u32::try_from(index).expect("actor index exceeds u32"))
    }
}

impl fmt::Display for ActorId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "#{}", self.0)
    }
}

/// Index of a layer inside one [`Msn`], in declaration order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct LayerId(u32);

impl LayerId {
    pub fn index(self) -> usize {
        self.0 as usize
    }

    pub(crate) fn from_index(index: usize) -> Self {
        LayerId(u32::try_from(index).expect("layer index exceeds u32"))
    }
}

impl fmt::Display for LayerId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "L{}", self.0)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct LayeredEdge {
    pub source: ActorId,
    pub target: ActorId,
    pub layer: LayerId,
}

/// Edge orientation relative to the actor being queried.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Direction {
    In,
    Out,
}

#[derive(Debug, Clone, Default)]
struct LayerAdjacency {
    out: Vec<BTreeSet<ActorId>>,
    inc: Vec<BTreeSet<ActorId>>,
    len: usize,
}

/// A multi-layered social network `⟨V, E, L⟩`.
///
/// Actors are shared by every layer. The layer set is fixed when the network
/// is created. Each layer keeps its own out- and in-adjacency indexed by
/// actor, so projecting a layer or reading a per-layer degree does not touch
/// the other layers.
///
/// Equality is semantic: two networks are equal when they declare the same
/// layers in the same order, hold the same actor labels and the same labelled
/// edge triples. Actor insertion order is not compared.
#[derive(Debug, Clone, Default)]
pub struct Msn {
    labels: Arc<Vec<String>>,
    index: HashMap<String, ActorId>,
    layer_names: Vec<String>,
    layers: Vec<LayerAdjacency>,
    edge_count: usize,
}

impl Msn {
    /// Creates an empty network with the given, pairwise distinct layers.
    pub fn new<I, S>(layer_names: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: AsRef<str>,
    {
        let mut names: Vec<String> = Vec::new();
        for name in layer_names {
            let name = name.as_ref();
            if name.is_empty() {
                return Err(MsnError::EmptyName);
            }
            validate_label(name)?;
            if names.iter().any(|n| n == name) {
                return Err(MsnError::DuplicateLayer(name.to_owned()));
            }
            names.push(name.to_owned());
        }
        let layers = vec![LayerAdjacency::default(); names.len()];
        Ok(Msn {
            labels: Arc::new(Vec::new()),
            index: HashMap::new(),
            layer_names: names,
            layers,
            edge_count: 0,
        })
    }

    /// Looks up or creates the actor with `label`.
    pub fn add_actor(&mut self, label: &str) -> Result<ActorId> {
        if let Some(&id) = self.index.get(label) {
            return Ok(id);
        }
        validate_label(label)?;
        let id = ActorId::from_index(self.labels.len());
        Arc::make_mut(&mut self.labels).push(label.to_owned());
        self.index.insert(label.to_owned(), id);
        for layer in &mut self.layers {
            layer.out.push(BTreeSet::new());
            layer.inc.push(BTreeSet::new());
        }
        Ok(id)
    }

    pub fn actor(&self, label: &str) -> Option<ActorId> {
        self.index.get(label).copied()
    }

    pub fn actor_label(&self, id: ActorId) -> &str {
        &self.labels[id.index()]
    }

    /// Actor labels in insertion order; position `i` is `ActorId` index `i`.
    pub fn actor_labels(&self) -> &[String] {
        &self.labels
    }

    pub fn actors(&self) -> impl Iterator<Item = ActorId> + '_ {
        (0..self.labels.len()).map(ActorId::from_index)
    }

    pub fn actor_count(&self) -> usize {
        self.labels.len()
    }

    pub fn layer(&self, name: &str) -> Option<LayerId> {
        self.layer_names
            .iter()
            .position(|n| n == name)
            .map(LayerId::from_index)
    }

    pub fn layer_name(&self, id: LayerId) -> &str {
        &self.layer_names[id.index()]
    }

    pub fn layer_names(&self) -> &[String] {
        &self.layer_names
    }

    pub fn layers(&self) -> impl Iterator<Item = LayerId> + '_ {
        (0..self.layer_names.len()).map(LayerId::from_index)
    }

    pub fn layer_count(&self) -> usize {
        self.layer_names.len()
    }

    /// Total number of edge tuples over all layers.
    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    pub fn layer_edge_count(&self, l: LayerId) -> Result<usize> {
        Ok(self.adjacency(l)?.len)
    }

    pub fn add_edge(&mut self, x: ActorId, y: ActorId, l: LayerId) -> Result<()> {
        self.check_actor(x)?;
        self.check_actor(y)?;
        self.check_layer(l)?;
        if x == y {
            return Err(MsnError::SelfLoop(self.actor_label(x).to_owned()));
        }
        let layer = &mut self.layers[l.index()];
        if !layer.out[x.index()].insert(y) {
            return Err(MsnError::DuplicateEdge(
                self.labels[x.index()].clone(),
                self.labels[y.index()].clone(),
                self.layer_names[l.index()].clone(),
            ));
        }
        layer.inc[y.index()].insert(x);
        layer.len += 1;
        self.edge_count += 1;
        Ok(())
    }

    /// Adds `⟨source, target, layer⟩` by label, creating missing actors.
    /// The layer must already be declared.
    pub fn add_labeled_edge(&mut self, source: &str, target: &str, layer: &str) -> Result<()> {
        let l = self
            .layer(layer)
            .ok_or_else(|| MsnError::UnknownLayer(layer.to_owned()))?;
        if source == target {
            validate_label(source)?;
            return Err(MsnError::SelfLoop(source.to_owned()));
        }
        let x = self.add_actor(source)?;
        let y = self.add_actor(target)?;
        self.add_edge(x, y, l)
    }

    pub fn remove_edge(&mut self, x: ActorId, y: ActorId, l: LayerId) -> Result<()> {
        self.check_actor(x)?;
        self.check_actor(y)?;
        self.check_layer(l)?;
        let layer = &mut self.layers[l.index()];
        if !layer.out[x.index()].remove(&y) {
            return Err(MsnError::NotFound(format!(
                "edge {} -> {} on layer `{}`",
                self.labels[x.index()],
                self.labels[y.index()],
                self.layer_names[l.index()]
            )));
        }
        layer.inc[y.index()].remove(&x);
        layer.len -= 1;
        self.edge_count -= 1;
        Ok(())
    }

    /// Removes an actor together with every incident edge on every layer.
    ///
    /// Actor indexes are kept dense, so ids of actors added after `a` shift
    /// down by one. Re-resolve ids by label after calling this.
    pub fn remove_actor(&mut self, a: ActorId) -> Result<()> {
        if a.index() >= self.labels.len() {
            return Err(MsnError::NotFound(format!("actor {a}")));
        }
        let removed = a.index();
        let shift = |id: &ActorId| {
            if id.index() > removed {
                ActorId::from_index(id.index() - 1)
            } else {
                *id
            }
        };
        let mut total = 0;
        for layer in &mut self.layers {
            layer.out.remove(removed);
            layer.inc.remove(removed);
            let mut len = 0;
            for set in layer.out.iter_mut().chain(layer.inc.iter_mut()) {
                set.remove(&a);
                *set = set.iter().map(shift).collect();
            }
            for set in &layer.out {
                len += set.len();
            }
            layer.len = len;
            total += len;
        }
        self.edge_count = total;
        Arc::make_mut(&mut self.labels).remove(removed);
        self.index = self
            .labels
            .iter()
            .enumerate()
            .map(|(i, label)| (label.clone(), ActorId::from_index(i)))
            .collect();
        Ok(())
    }

    pub fn has_edge(&self, x: ActorId, y: ActorId, l: LayerId) -> Result<bool> {
        self.check_actor(x)?;
        self.check_actor(y)?;
        Ok(self.adjacency(l)?.out[x.index()].contains(&y))
    }

    /// Union over `layers` of the actors adjacent to `x` in `direction`.
    pub fn neighbors(
        &self,
        x: ActorId,
        direction: Direction,
        layers: &[LayerId],
    ) -> Result<BTreeSet<ActorId>> {
        self.check_actor(x)?;
        if layers.is_empty() {
            return Err(MsnError::EmptyLayerSet);
        }
        let mut result = BTreeSet::new();
        for &l in layers {
            result.extend(self.adjacent(x, l, direction)?.iter().copied());
        }
        Ok(result)
    }

    /// Adjacent actors of `x` on one layer.
    pub fn adjacent(
        &self,
        x: ActorId,
        l: LayerId,
        direction: Direction,
    ) -> Result<&BTreeSet<ActorId>> {
        self.check_actor(x)?;
        let layer = self.adjacency(l)?;
        Ok(match direction {
            Direction::Out => &layer.out[x.index()],
            Direction::In => &layer.inc[x.index()],
        })
    }

    /// Edges of one layer ordered by (source index, target index).
    pub fn layer_edges(&self, l: LayerId) -> Result<impl Iterator<Item = (ActorId, ActorId)> + '_> {
        let layer = self.adjacency(l)?;
        Ok(layer
            .out
            .iter()
            .enumerate()
            .flat_map(|(s, targets)| targets.iter().map(move |&t| (ActorId::from_index(s), t))))
    }

    /// All edges ordered by (layer, source index, target index).
    pub fn edges(&self) -> impl Iterator<Item = LayeredEdge> + '_ {
        self.layers().flat_map(move |l| {
            self.layer_edges(l)
                .expect("layer id from own range")
                .map(move |(source, target)| LayeredEdge {
                    source,
                    target,
                    layer: l,
                })
        })
    }

    /// Edge triples by label, as a set.
    pub fn labeled_edges(&self) -> BTreeSet<(&str, &str, &str)> {
        self.edges()
            .map(|e| {
                (
                    self.actor_label(e.source),
                    self.actor_label(e.target),
                    self.layer_name(e.layer),
                )
            })
            .collect()
    }

    /// The single-layered network `⟨V, E_l⟩` over the full actor set.
    pub fn layer_projection(&self, l: LayerId) -> Result<SsnView> {
        let edges = self.layer_edges(l)?.collect();
        Ok(SsnView {
            actors: Arc::clone(&self.labels),
            edges,
            provenance: Provenance {
                layers: vec![self.layer_name(l).to_owned()],
                policy: None,
            },
        })
    }

    /// Resolves layer names, failing on the first unknown one.
    pub fn resolve_layers<S: AsRef<str>>(&self, names: &[S]) -> Result<Vec<LayerId>> {
        names
            .iter()
            .map(|n| {
                self.layer(n.as_ref())
                    .ok_or_else(|| MsnError::UnknownLayer(n.as_ref().to_owned()))
            })
            .collect()
    }

    pub(crate) fn shared_labels(&self) -> Arc<Vec<String>> {
        Arc::clone(&self.labels)
    }

    pub(crate) fn check_actor(&self, x: ActorId) -> Result<()> {
        if x.index() < self.labels.len() {
            Ok(())
        } else {
            Err(MsnError::UnknownActor(x.to_string()))
        }
    }

    fn check_layer(&self, l: LayerId) -> Result<()> {
        self.adjacency(l).map(|_| ())
    }

    fn adjacency(&self, l: LayerId) -> Result<&LayerAdjacency> {
        self.layers
            .get(l.index())
            .ok_or_else(|| MsnError::UnknownLayer(l.to_string()))
    }
}

impl PartialEq for Msn {
    fn eq(&self, other: &Self) -> bool {
        if self.layer_names != other.layer_names
            || self.edge_count != other.edge_count
            || self.labels.len() != other.labels.len()
        {
            return false;
        }
        let mine: BTreeSet<&str> = self.labels.iter().map(String::as_str).collect();
        let theirs: BTreeSet<&str> = other.labels.iter().map(String::as_str).collect();
        mine == theirs && self.labeled_edges() == other.labeled_edges()
    }
}

impl Eq for Msn {}

/// How a [`SsnView`] was produced.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Provenance {
    pub layers: Vec<String>,
    /// `None` for a plain single-layer projection.
    pub policy: Option<AggregationPolicy>,
}

/// An immutable single-layered directed network over a shared actor set.
///
/// Actor ids index into [`SsnView::actor_labels`]. Views produced from an
/// [`Msn`] share its label storage, so their ids coincide with the
/// network's ids.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SsnView {
    actors: Arc<Vec<String>>,
    edges: BTreeSet<(ActorId, ActorId)>,
    provenance: Provenance,
}

impl SsnView {
    /// Builds a view over its own actor namespace, validating every pair.
    pub fn new<I>(actors: Vec<String>, edges: I, provenance: Provenance) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut seen = BTreeSet::new();
        for label in &actors {
            validate_label(label)?;
            if !seen.insert(label.as_str()) {
                return Err(MsnError::InvalidArgument(format!(
                    "duplicate actor `{label}`"
                )));
            }
        }
        let mut set = BTreeSet::new();
        for (s, t) in edges {
            let (Some(source), Some(target)) = (actors.get(s), actors.get(t)) else {
                return Err(MsnError::UnknownActor(format!("#{}", s.max(t))));
            };
            if s == t {
                return Err(MsnError::SelfLoop(source.clone()));
            }
            if !set.insert((ActorId::from_index(s), ActorId::from_index(t))) {
                return Err(MsnError::InvalidArgument(format!(
                    "duplicate pair {source} -> {target}"
                )));
            }
        }
        Ok(SsnView {
            actors: Arc::new(actors),
            edges: set,
            provenance,
        })
    }

    pub(crate) fn from_parts(
        actors: Arc<Vec<String>>,
        edges: BTreeSet<(ActorId, ActorId)>,
        provenance: Provenance,
    ) -> Self {
        SsnView {
            actors,
            edges,
            provenance,
        }
    }

    pub fn actor_count(&self) -> usize {
        self.actors.len()
    }

    pub fn actor_labels(&self) -> &[String] {
        &self.actors
    }

    pub fn actor(&self, label: &str) -> Option<ActorId> {
        self.actors
            .iter()
            .position(|a| a == label)
            .map(ActorId::from_index)
    }

    pub fn label(&self, id: ActorId) -> &str {
        &self.actors[id.index()]
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Edges ordered by (source index, target index).
    pub fn edges(&self) -> impl Iterator<Item = (ActorId, ActorId)> + '_ {
        self.edges.iter().copied()
    }

    pub fn edge_set(&self) -> &BTreeSet<(ActorId, ActorId)> {
        &self.edges
    }

    pub fn labeled_edges(&self) -> impl Iterator<Item = (&str, &str)> + '_ {
        self.edges
            .iter()
            .map(|&(s, t)| (self.label(s), self.label(t)))
    }

    pub fn has_edge(&self, x: ActorId, y: ActorId) -> bool {
        self.edges.contains(&(x, y))
    }

    pub fn out_neighbors(&self, x: ActorId) -> impl Iterator<Item = ActorId> + '_ {
        self.edges
            .range((x, ActorId(0))..=(x, ActorId(u32::MAX)))
            .map(|&(_, t)| t)
    }

    pub fn in_neighbors(&self, x: ActorId) -> impl Iterator<Item = ActorId> + '_ {
        self.edges.iter().filter(move |e| e.1 == x).map(|&(s, _)| s)
    }

    pub fn provenance(&self) -> &Provenance {
        &self.provenance
    }
}
