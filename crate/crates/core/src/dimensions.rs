//! The layer, time and group dimensions: timestamped interaction events,
//! group membership, snapshot extraction and layer aggregation.

use std::collections::{BTreeMap, BTreeSet, HashSet};
use std::fmt;
use std::str::FromStr;

use crate::error::{validate_label, MsnError, Result};
use crate::network::{ActorId, LayerId, Msn, Provenance, SsnView};

/// How several layers combine into one view. There is no default; callers
/// always name a policy.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum AggregationPolicy {
    /// A pair is present if any selected layer carries it.
    Union,
    /// A pair carries the number of selected layers that contain it.
    Count,
}

impl fmt::Display for AggregationPolicy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            AggregationPolicy::Union => "union",
            AggregationPolicy::Count => "count",
        })
    }
}

impl FromStr for AggregationPolicy {
    type Err = MsnError;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "union" => Ok(AggregationPolicy::Union),
            "count" => Ok(AggregationPolicy::Count),
            other => Err(MsnError::InvalidArgument(format!(
                "unknown aggregation policy `{other}` (expected union or count)"
            ))),
        }
    }
}

/// One interaction `source -> target` on `layer` at `timestamp`.
/// The same triple may recur at other times.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct TemporalEvent {
    pub source: String,
    pub target: String,
    pub layer: String,
    pub timestamp: u64,
}

impl TemporalEvent {
    pub fn new(source: &str, target: &str, layer: &str, timestamp: u64) -> Result<Self> {
        validate_label(source)?;
        validate_label(target)?;
        validate_label(layer)?;
        if source == target {
            return Err(MsnError::SelfLoop(source.to_owned()));
        }
        Ok(TemporalEvent {
            source: source.to_owned(),
            target: target.to_owned(),
            layer: layer.to_owned(),
            timestamp,
        })
    }
}

/// Events over a fixed layer set. Actors are recorded in first-appearance
/// order and form the shared actor set of every snapshot.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct EventLog {
    layers: Vec<String>,
    actors: Vec<String>,
    seen: HashSet<String>,
    events: Vec<TemporalEvent>,
}

impl EventLog {
    pub fn new<S: AsRef<str>>(layers: &[S]) -> Result<Self> {
        // reuse the layer validation of the network constructor
        Msn::new(layers.iter().map(AsRef::as_ref))?;
        Ok(EventLog {
            layers: layers.iter().map(|l| l.as_ref().to_owned()).collect(),
            ..Default::default()
        })
    }

    pub fn push(&mut self, event: TemporalEvent) -> Result<()> {
        if !self.layers.contains(&event.layer) {
            return Err(MsnError::UnknownLayer(event.layer));
        }
        for actor in [&event.source, &event.target] {
            if self.seen.insert(actor.clone()) {
                self.actors.push(actor.clone());
            }
        }
        self.events.push(event);
        Ok(())
    }

    /// Declares an actor that may have no events.
    pub fn add_actor(&mut self, label: &str) -> Result<()> {
        validate_label(label)?;
        if self.seen.insert(label.to_owned()) {
            self.actors.push(label.to_owned());
        }
        Ok(())
    }

    pub fn layers(&self) -> &[String] {
        &self.layers
    }

    pub fn actors(&self) -> &[String] {
        &self.actors
    }

    pub fn events(&self) -> &[TemporalEvent] {
        &self.events
    }

    pub fn len(&self) -> usize {
        self.events.len()
    }

    pub fn is_empty(&self) -> bool {
        self.events.is_empty()
    }

    /// Smallest and largest timestamp, if any event exists.
    pub fn span(&self) -> Option<(u64, u64)> {
        let min = self.events.iter().map(|e| e.timestamp).min()?;
        let max = self.events.iter().map(|e| e.timestamp).max()?;
        Some((min, max))
    }

    /// Stamps every edge of `msn` with `timestamp`.
    pub fn from_msn(msn: &Msn, timestamp: u64) -> Self {
        let mut log = EventLog::new(msn.layer_names()).expect("layers already validated");
        for label in msn.actor_labels() {
            log.add_actor(label).expect("labels already validated");
        }
        for e in msn.edges() {
            log.push(TemporalEvent {
                source: msn.actor_label(e.source).to_owned(),
                target: msn.actor_label(e.target).to_owned(),
                layer: msn.layer_name(e.layer).to_owned(),
                timestamp,
            })
            .expect("layer declared");
        }
        log
    }
}

/// Possibly overlapping group memberships.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct GroupMembership {
    members: BTreeMap<String, BTreeSet<String>>,
}

impl GroupMembership {
    pub fn new() -> Self {
        Self::default()
    }

    /// Adds `actor` to `group`. Repeats are ignored.
    pub fn insert(&mut self, actor: &str, group: &str) -> Result<()> {
        validate_label(actor)?;
        validate_label(group)?;
        self.members
            .entry(group.to_owned())
            .or_default()
            .insert(actor.to_owned());
        Ok(())
    }

    pub fn members(&self, group: &str) -> Option<&BTreeSet<String>> {
        self.members.get(group)
    }

    pub fn groups_of(&self, actor: &str) -> BTreeSet<&str> {
        self.members
            .iter()
            .filter(|(_, m)| m.contains(actor))
            .map(|(g, _)| g.as_str())
            .collect()
    }

    pub fn groups(&self) -> impl Iterator<Item = &str> + '_ {
        self.members.keys().map(String::as_str)
    }
}

/// Half-open interval `[start, end)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct TimeWindow {
    start: u64,
    end: u64,
}

impl TimeWindow {
    pub fn new(start: u64, end: u64) -> Result<Self> {
        if start >= end {
            return Err(MsnError::EmptyWindow(start, end));
        }
        Ok(TimeWindow { start, end })
    }

    pub fn start(&self) -> u64 {
        self.start
    }

    pub fn end(&self) -> u64 {
        self.end
    }

    pub fn contains(&self, t: u64) -> bool {
        self.start <= t && t < self.end
    }
}

impl fmt::Display for TimeWindow {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {})", self.start, self.end)
    }
}

/// Coordinates of one snapshot: a layer subset, a time window and an
/// optional group.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SnapshotKey {
    layers: Vec<String>,
    window: TimeWindow,
    group: Option<String>,
}

impl SnapshotKey {
    pub fn new<S: AsRef<str>>(
        layers: &[S],
        window: TimeWindow,
        group: Option<&str>,
    ) -> Result<Self> {
        if layers.is_empty() {
            return Err(MsnError::EmptyLayerSet);
        }
        Ok(SnapshotKey {
            layers: layers.iter().map(|l| l.as_ref().to_owned()).collect(),
            window,
            group: group.map(str::to_owned),
        })
    }

    pub fn layers(&self) -> &[String] {
        &self.layers
    }

    pub fn window(&self) -> TimeWindow {
        self.window
    }

    pub fn group(&self) -> Option<&str> {
        self.group.as_deref()
    }
}

struct Selection<'a> {
    actors: Vec<&'a str>,
    admitted: Option<&'a BTreeSet<String>>,
}

fn select<'a>(
    log: &'a EventLog,
    membership: &'a GroupMembership,
    key: &SnapshotKey,
) -> Result<Selection<'a>> {
    for layer in &key.layers {
        if !log.layers.contains(layer) {
            return Err(MsnError::UnknownLayer(layer.clone()));
        }
    }
    let Some(group) = key.group.as_deref() else {
        return Ok(Selection {
            actors: log.actors.iter().map(String::as_str).collect(),
            admitted: None,
        });
    };
    let members = membership
        .members(group)
        .ok_or_else(|| MsnError::UnknownGroup(group.to_owned()))?;
    let mut actors: Vec<&str> = log
        .actors
        .iter()
        .filter(|a| members.contains(*a))
        .map(String::as_str)
        .collect();
    actors.extend(
        members
            .iter()
            .filter(|m| !log.seen.contains(*m))
            .map(String::as_str),
    );
    Ok(Selection {
        actors,
        admitted: Some(members),
    })
}

fn matching<'a>(
    log: &'a EventLog,
    selection: &'a Selection<'a>,
    key: &'a SnapshotKey,
) -> impl Iterator<Item = &'a TemporalEvent> + 'a {
    let admitted = move |a: &String| selection.admitted.is_none_or(|m| m.contains(a));
    log.events.iter().filter(move |e| {
        key.window.contains(e.timestamp)
            && key.layers.contains(&e.layer)
            && admitted(&e.source)
            && admitted(&e.target)
    })
}

/// The network at the intersection of the key's layers, window and group.
///
/// The result declares every layer of the log; only the key's layers carry
/// edges. With a group, both endpoints of an edge must be members and the
/// actor set is restricted to members. Repeated events collapse to one
/// edge.
pub fn snapshot(log: &EventLog, membership: &GroupMembership, key: &SnapshotKey) -> Result<Msn> {
    let selection = select(log, membership, key)?;
    let mut msn = Msn::new(&log.layers)?;
    for actor in &selection.actors {
        msn.add_actor(actor)?;
    }
    for event in matching(log, &selection, key) {
        match msn.add_labeled_edge(&event.source, &event.target, &event.layer) {
            Ok(()) | Err(MsnError::DuplicateEdge(..)) => {}
            Err(e) => return Err(e),
        }
    }
    Ok(msn)
}

/// Number of events that fall into the snapshot, before collapsing repeats.
pub fn snapshot_event_count(
    log: &EventLog,
    membership: &GroupMembership,
    key: &SnapshotKey,
) -> Result<usize> {
    let selection = select(log, membership, key)?;
    Ok(matching(log, &selection, key).count())
}

/// Snapshots over consecutive windows of `window_length`, advancing by
/// `step`, starting at the earliest event and covering the latest one.
/// `step == window_length` gives tumbling windows.
pub fn time_series<S: AsRef<str>>(
    log: &EventLog,
    membership: &GroupMembership,
    layers: &[S],
    group: Option<&str>,
    window_length: u64,
    step: u64,
) -> Result<Vec<(TimeWindow, Msn)>> {
    if window_length == 0 || step == 0 {
        return Err(MsnError::InvalidArgument(
            "window length and step must be positive".into(),
        ));
    }
    let Some((first, last)) = log.span() else {
        return Ok(Vec::new());
    };
    let mut series = Vec::new();
    let mut start = first;
    loop {
        let window = TimeWindow::new(start, start.saturating_add(window_length))?;
        let key = SnapshotKey::new(layers, window, group)?;
        series.push((window, snapshot(log, membership, &key)?));
        match start.checked_add(step) {
            Some(next) if next <= last => start = next,
            _ => break,
        }
    }
    Ok(series)
}

/// A layer aggregation: the union view plus, under
/// [`AggregationPolicy::Count`], the number of layers carrying each pair.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Aggregation {
    pub view: SsnView,
    pub counts: Option<BTreeMap<(ActorId, ActorId), usize>>,
}

impl Aggregation {
    pub fn count(&self, x: ActorId, y: ActorId) -> usize {
        match &self.counts {
            Some(counts) => counts.get(&(x, y)).copied().unwrap_or(0),
            None => usize::from(self.view.has_edge(x, y)),
        }
    }

    /// Σ of the per-pair counts (the edge count under union).
    pub fn mass(&self) -> usize {
        match &self.counts {
            Some(counts) => counts.values().sum(),
            None => self.view.edge_count(),
        }
    }
}

pub fn aggregate_layers(
    msn: &Msn,
    layers: &[LayerId],
    policy: AggregationPolicy,
) -> Result<Aggregation> {
    if layers.is_empty() {
        return Err(MsnError::EmptyLayerSet);
    }
    let mut counts: BTreeMap<(ActorId, ActorId), usize> = BTreeMap::new();
    let mut names = Vec::new();
    let mut seen = BTreeSet::new();
    for &l in layers {
        let edges = msn.layer_edges(l)?;
        if !seen.insert(l) {
            continue;
        }
        names.push(msn.layer_name(l).to_owned());
        for pair in edges {
            *counts.entry(pair).or_insert(0) += 1;
        }
    }
    let view = SsnView::from_parts(
        msn.shared_labels(),
        counts.keys().copied().collect(),
        Provenance {
            layers: names,
            policy: Some(policy),
        },
    );
    Ok(Aggregation {
        view,
        counts: (policy == AggregationPolicy::Count).then_some(counts),
    })
}

/// Overlap between the union views of two layer subsets.
#[derive(Debug, Clone, PartialEq)]
pub struct OverlapReport {
    pub shared: Vec<(String, String)>,
    pub a_only: Vec<(String, String)>,
    pub b_only: Vec<(String, String)>,
    /// `|shared| / |a ∪ b|`, 1.0 when both views are empty.
    pub jaccard: f64,
}

pub fn compare_aggregations(msn: &Msn, a: &[LayerId], b: &[LayerId]) -> Result<OverlapReport> {
    let left = aggregate_layers(msn, a, AggregationPolicy::Union)?.view;
    let right = aggregate_layers(msn, b, AggregationPolicy::Union)?.view;
    let pair = |&(s, t): &(ActorId, ActorId)| {
        (msn.actor_label(s).to_owned(), msn.actor_label(t).to_owned())
    };
    let shared: Vec<_> = left
        .edge_set()
        .intersection(right.edge_set())
        .map(pair)
        .collect();
    let a_only: Vec<_> = left
        .edge_set()
        .difference(right.edge_set())
        .map(pair)
        .collect();
    let b_only: Vec<_> = right
        .edge_set()
        .difference(left.edge_set())
        .map(pair)
        .collect();
    let union = shared.len() + a_only.len() + b_only.len();
    let jaccard = if union == 0 {
        1.0
    } else {
        shared.len() as f64 / union as f64
    };
    Ok(OverlapReport {
        shared,
        a_only,
        b_only,
        jaccard,
    })
}
