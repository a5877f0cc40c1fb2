//! Text formats: edge lists (3-column networks, 4-column event streams),
//! group membership files, coarsening and pillar mapping files, multigraph
//! exports.
//!
//! All formats are UTF-8, comma separated without quoting, with a fixed
//! header line. Lines starting with `#` are comments. Before the header two
//! comment directives are understood:
//!
//! ```text
//! #!layers friendship,work,family
//! #!actors t,w
//! ```
//!
//! `#!layers` fixes the layer set and its order, `#!actors` declares actors
//! that have no edges. Both are emitted by the canonical writer so that
//! empty layers and isolated actors survive a write/parse round trip.

use std::collections::{BTreeMap, BTreeSet, HashSet};
use std::io::BufRead;

use thiserror::Error;

use crate::dimensions::{EventLog, GroupMembership, TemporalEvent};
use crate::error::{validate_label, MsnError};
use crate::models::{IdentityClass, NodeMapping, PillarNetwork};
use crate::network::{Msn, Provenance, SsnView};
use crate::representations::MultigraphView;

pub const NETWORK_HEADER: &str = "source,target,layer";
pub const EVENT_HEADER: &str = "source,target,layer,time";
pub const MEMBERSHIP_HEADER: &str = "actor,group";
pub const COARSE_MAPPING_HEADER: &str = "fine,coarse";
pub const PILLAR_MAPPING_HEADER: &str = "class_id,network_index,local_actor";
pub const MULTIGRAPH_HEADER: &str = "source,target,count";

const LAYERS_DIRECTIVE: &str = "#!layers";
const ACTORS_DIRECTIVE: &str = "#!actors";

/// Parse failure. Every variant tied to input text carries the 1-based line
/// number of the offending line.
#[derive(Debug, Error)]
pub enum FormatError {
    #[error("line {line}: bad header `{found}`, expected {expected}")]
    BadHeader {
        line: usize,
        found: String,
        expected: String,
    },
    #[error("line {line}: expected {expected} fields, found {found}")]
    ArityMismatch {
        line: usize,
        expected: usize,
        found: usize,
    },
    #[error("line {line}: self-loop on `{actor}`")]
    SelfLoop { line: usize, actor: String },
    #[error("line {line}: duplicate edge {source_actor} -> {target} on layer `{layer}`")]
    DuplicateEdge {
        line: usize,
        source_actor: String,
        target: String,
        layer: String,
    },
    #[error("line {line}: bad timestamp `{value}`")]
    BadTimestamp { line: usize, value: String },
    #[error("line {line}: layer `{layer}` is not declared")]
    UndeclaredLayer { line: usize, layer: String },
    #[error("line {line}: {error}")]
    Invalid {
        line: usize,
        #[source]
        error: MsnError,
    },
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl FormatError {
    pub fn line(&self) -> Option<usize> {
        match self {
            FormatError::BadHeader { line, .. }
            | FormatError::ArityMismatch { line, .. }
            | FormatError::SelfLoop { line, .. }
            | FormatError::DuplicateEdge { line, .. }
            | FormatError::BadTimestamp { line, .. }
            | FormatError::UndeclaredLayer { line, .. }
            | FormatError::Invalid { line, .. } => Some(*line),
            FormatError::Io(_) => None,
        }
    }
}

/// Result of reading an edge list: a network from the 3-column form, an
/// event log from the 4-column form.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Parsed {
    Network(Msn),
    Events(EventLog),
}

impl Parsed {
    pub fn into_network(self) -> Option<Msn> {
        match self {
            Parsed::Network(msn) => Some(msn),
            Parsed::Events(_) => None,
        }
    }

    pub fn into_events(self) -> Option<EventLog> {
        match self {
            Parsed::Events(log) => Some(log),
            Parsed::Network(_) => None,
        }
    }
}

struct Lines<R> {
    inner: std::io::Lines<R>,
    number: usize,
}

enum Line {
    Directive(String),
    Record(String),
}

impl<R: BufRead> Lines<R> {
    fn new(reader: R) -> Self {
        Lines {
            inner: reader.lines(),
            number: 0,
        }
    }

    /// Next non-blank line that is a record or a directive.
    fn next_line(&mut self) -> Result<Option<(usize, Line)>, FormatError> {
        for line in self.inner.by_ref() {
            self.number += 1;
            let line = line?;
            let line = line.strip_suffix('\r').unwrap_or(&line);
            if line.is_empty() {
                continue;
            }
            if line.starts_with("#!") {
                return Ok(Some((self.number, Line::Directive(line.to_owned()))));
            }
            if line.starts_with('#') {
                continue;
            }
            return Ok(Some((self.number, Line::Record(line.to_owned()))));
        }
        Ok(None)
    }
}

#[derive(Default)]
struct Directives {
    layers: Option<Vec<String>>,
    layers_line: usize,
    actors: Vec<String>,
}

impl Directives {
    fn apply(&mut self, line: usize, text: &str) -> Result<(), FormatError> {
        let (name, rest) = text.split_once(' ').unwrap_or((text, ""));
        let values = || -> Result<Vec<String>, FormatError> {
            if rest.is_empty() {
                return Ok(Vec::new());
            }
            rest.split(',')
                .map(|v| {
                    validate_label(v).map_err(|error| FormatError::Invalid { line, error })?;
                    Ok(v.to_owned())
                })
                .collect()
        };
        match name {
            LAYERS_DIRECTIVE => {
                self.layers = Some(values()?);
                self.layers_line = line;
            }
            ACTORS_DIRECTIVE => self.actors.extend(values()?),
            // unknown directives are plain comments
            _ => {}
        }
        Ok(())
    }
}

fn split_record(line: usize, text: &str, arity: usize) -> Result<Vec<&str>, FormatError> {
    let fields: Vec<&str> = text.split(',').collect();
    if fields.len() != arity {
        return Err(FormatError::ArityMismatch {
            line,
            expected: arity,
            found: fields.len(),
        });
    }
    Ok(fields)
}

fn label(line: usize, value: &str) -> Result<&str, FormatError> {
    validate_label(value).map_err(|error| FormatError::Invalid { line, error })?;
    Ok(value)
}

/// Reads a 3-column network or a 4-column event list.
///
/// Layers come from `declared_layers` when given, else from a `#!layers`
/// directive, else from first appearance in the records. With an explicit
/// declaration every record layer must belong to it.
pub fn parse_edge_list<R: BufRead>(
    reader: R,
    declared_layers: Option<&[String]>,
) -> Result<Parsed, FormatError> {
    let mut lines = Lines::new(reader);
    let mut directives = Directives::default();
    let (header_line, header) = loop {
        match lines.next_line()? {
            None => {
                return Err(FormatError::BadHeader {
                    line: lines.number.max(1),
                    found: String::new(),
                    expected: format!("`{NETWORK_HEADER}` or `{EVENT_HEADER}`"),
                })
            }
            Some((n, Line::Directive(d))) => directives.apply(n, &d)?,
            Some((n, Line::Record(r))) => break (n, r),
        }
    };
    let temporal = match header.as_str() {
        NETWORK_HEADER => false,
        EVENT_HEADER => true,
        _ => {
            return Err(FormatError::BadHeader {
                line: header_line,
                found: header,
                expected: format!("`{NETWORK_HEADER}` or `{EVENT_HEADER}`"),
            })
        }
    };
    let arity = if temporal { 4 } else { 3 };

    let mut layers: Vec<String> = Vec::new();
    if let Some(declared) = declared_layers {
        layers = declared.to_vec();
        if let Some(listed) = &directives.layers {
            for l in listed {
                if !layers.contains(l) {
                    return Err(FormatError::UndeclaredLayer {
                        line: directives.layers_line,
                        layer: l.clone(),
                    });
                }
            }
        }
    } else if let Some(listed) = &directives.layers {
        layers = listed.clone();
    }
    let fixed = declared_layers.is_some() || directives.layers.is_some();

    let mut records: Vec<(String, String, String, u64)> = Vec::new();
    let mut seen: HashSet<(String, String, String)> = HashSet::new();
    while let Some((n, line)) = lines.next_line()? {
        let Line::Record(text) = line else {
            // directives after the header are ordinary comments
            continue;
        };
        let fields = split_record(n, &text, arity)?;
        let source = label(n, fields[0])?;
        let target = label(n, fields[1])?;
        let layer = label(n, fields[2])?;
        if source == target {
            return Err(FormatError::SelfLoop {
                line: n,
                actor: source.to_owned(),
            });
        }
        if !layers.iter().any(|l| l == layer) {
            if fixed {
                return Err(FormatError::UndeclaredLayer {
                    line: n,
                    layer: layer.to_owned(),
                });
            }
            layers.push(layer.to_owned());
        }
        let timestamp = if temporal {
            fields[3]
                .parse::<u64>()
                .map_err(|_| FormatError::BadTimestamp {
                    line: n,
                    value: fields[3].to_owned(),
                })?
        } else {
            let key = (source.to_owned(), target.to_owned(), layer.to_owned());
            if !seen.insert(key) {
                return Err(FormatError::DuplicateEdge {
                    line: n,
                    source_actor: source.to_owned(),
                    target: target.to_owned(),
                    layer: layer.to_owned(),
                });
            }
            0
        };
        records.push((
            source.to_owned(),
            target.to_owned(),
            layer.to_owned(),
            timestamp,
        ));
    }

    let invalid = |error| FormatError::Invalid {
        line: header_line,
        error,
    };
    if temporal {
        let mut log = EventLog::new(&layers).map_err(invalid)?;
        for (s, t, l, ts) in records {
            log.push(TemporalEvent {
                source: s,
                target: t,
                layer: l,
                timestamp: ts,
            })
            .map_err(invalid)?;
        }
        for a in &directives.actors {
            log.add_actor(a).map_err(invalid)?;
        }
        Ok(Parsed::Events(log))
    } else {
        let mut msn = Msn::new(&layers).map_err(invalid)?;
        for (s, t, l, _) in &records {
            msn.add_labeled_edge(s, t, l).map_err(invalid)?;
        }
        for a in &directives.actors {
            msn.add_actor(a).map_err(invalid)?;
        }
        Ok(Parsed::Network(msn))
    }
}

/// Parses a 3-column network, rejecting event lists.
pub fn parse_network<R: BufRead>(
    reader: R,
    declared_layers: Option<&[String]>,
) -> Result<Msn, FormatError> {
    match parse_edge_list(reader, declared_layers)? {
        Parsed::Network(msn) => Ok(msn),
        Parsed::Events(_) => Err(FormatError::BadHeader {
            line: 1,
            found: EVENT_HEADER.to_owned(),
            expected: format!("`{NETWORK_HEADER}`"),
        }),
    }
}

/// Canonical text of a network: directives, header, then records sorted by
/// (layer declaration order, source label, target label).
///
/// The `#!layers` line is written whenever a layer is declared and the
/// `#!actors` line lists actors without edges, sorted. A network with no
/// layers and no actors is the header line alone.
pub fn write_edge_list(msn: &Msn) -> String {
    let mut out = String::new();
    if msn.layer_count() > 0 {
        out.push_str(LAYERS_DIRECTIVE);
        out.push(' ');
        out.push_str(&msn.layer_names().join(","));
        out.push('\n');
    }
    let mut touched = vec![false; msn.actor_count()];
    for e in msn.edges() {
        touched[e.source.index()] = true;
        touched[e.target.index()] = true;
    }
    write_isolated(&mut out, msn.actor_labels(), &touched);
    out.push_str(NETWORK_HEADER);
    out.push('\n');
    for l in msn.layers() {
        let mut rows: Vec<(&str, &str)> = msn
            .layer_edges(l)
            .expect("own layer")
            .map(|(s, t)| (msn.actor_label(s), msn.actor_label(t)))
            .collect();
        rows.sort_unstable();
        for (s, t) in rows {
            out.push_str(&format!("{s},{t},{}\n", msn.layer_name(l)));
        }
    }
    out
}

fn write_isolated(out: &mut String, labels: &[String], touched: &[bool]) {
    let isolated: BTreeSet<&str> = labels
        .iter()
        .zip(touched)
        .filter(|(_, &t)| !t)
        .map(|(l, _)| l.as_str())
        .collect();
    if !isolated.is_empty() {
        out.push_str(ACTORS_DIRECTIVE);
        out.push(' ');
        out.push_str(&isolated.into_iter().collect::<Vec<_>>().join(","));
        out.push('\n');
    }
}

/// 4-column text of an event log, events in log order.
pub fn write_events(log: &EventLog) -> String {
    let mut out = String::new();
    if !log.layers().is_empty() {
        out.push_str(&format!("{LAYERS_DIRECTIVE} {}\n", log.layers().join(",")));
    }
    let active: HashSet<&str> = log
        .events()
        .iter()
        .flat_map(|e| [e.source.as_str(), e.target.as_str()])
        .collect();
    let touched: Vec<bool> = log
        .actors()
        .iter()
        .map(|a| active.contains(a.as_str()))
        .collect();
    write_isolated(&mut out, log.actors(), &touched);
    out.push_str(EVENT_HEADER);
    out.push('\n');
    for e in log.events() {
        out.push_str(&format!(
            "{},{},{},{}\n",
            e.source, e.target, e.layer, e.timestamp
        ));
    }
    out
}

fn expect_header<R: BufRead>(lines: &mut Lines<R>, expected: &str) -> Result<(), FormatError> {
    loop {
        match lines.next_line()? {
            Some((_, Line::Directive(_))) => continue,
            Some((_, Line::Record(r))) if r == expected => return Ok(()),
            Some((n, Line::Record(r))) => {
                return Err(FormatError::BadHeader {
                    line: n,
                    found: r,
                    expected: format!("`{expected}`"),
                })
            }
            None => {
                return Err(FormatError::BadHeader {
                    line: lines.number.max(1),
                    found: String::new(),
                    expected: format!("`{expected}`"),
                })
            }
        }
    }
}

fn records<R: BufRead>(
    lines: &mut Lines<R>,
    arity: usize,
    mut each: impl FnMut(usize, &[&str]) -> Result<(), FormatError>,
) -> Result<(), FormatError> {
    while let Some((n, line)) = lines.next_line()? {
        if let Line::Record(text) = line {
            let fields = split_record(n, &text, arity)?;
            each(n, &fields)?;
        }
    }
    Ok(())
}

/// Reads `actor,group` records. Repeated pairs collapse.
pub fn parse_membership<R: BufRead>(reader: R) -> Result<GroupMembership, FormatError> {
    let mut lines = Lines::new(reader);
    expect_header(&mut lines, MEMBERSHIP_HEADER)?;
    let mut membership = GroupMembership::new();
    records(&mut lines, 2, |n, f| {
        membership
            .insert(f[0], f[1])
            .map_err(|error| FormatError::Invalid { line: n, error })
    })?;
    Ok(membership)
}

pub fn write_membership(membership: &GroupMembership) -> String {
    let mut out = format!("{MEMBERSHIP_HEADER}\n");
    let mut rows = BTreeSet::new();
    for group in membership.groups() {
        for actor in membership.members(group).into_iter().flatten() {
            rows.insert((actor.as_str(), group));
        }
    }
    for (actor, group) in rows {
        out.push_str(&format!("{actor},{group}\n"));
    }
    out
}

/// Reads `fine,coarse` records into a node mapping.
pub fn parse_node_mapping<R: BufRead>(reader: R) -> Result<NodeMapping, FormatError> {
    let mut lines = Lines::new(reader);
    expect_header(&mut lines, COARSE_MAPPING_HEADER)?;
    let mut pairs: BTreeMap<String, (usize, String)> = BTreeMap::new();
    records(&mut lines, 2, |n, f| {
        let fine = label(n, f[0])?;
        let coarse = label(n, f[1])?;
        if let Some((_, previous)) = pairs.get(fine) {
            if previous != coarse {
                return Err(FormatError::Invalid {
                    line: n,
                    error: MsnError::InvalidArgument(format!(
                        "actor `{fine}` assigned to both `{previous}` and `{coarse}`"
                    )),
                });
            }
        }
        pairs.insert(fine.to_owned(), (n, coarse.to_owned()));
        Ok(())
    })?;
    NodeMapping::new(pairs.into_iter().map(|(f, (_, c))| (f, c)))
        .map_err(|error| FormatError::Invalid { line: 1, error })
}

pub fn write_node_mapping(mapping: &NodeMapping) -> String {
    let mut out = format!("{COARSE_MAPPING_HEADER}\n");
    for (fine, coarse) in mapping.pairs() {
        out.push_str(&format!("{fine},{coarse}\n"));
    }
    out
}

/// Multigraph counts as `source,target,count`, rows sorted by labels.
pub fn write_multigraph(mg: &MultigraphView) -> String {
    let mut rows: Vec<(&str, &str, usize)> = mg
        .counts()
        .iter()
        .map(|(&(s, t), &c)| (mg.label(s), mg.label(t), c))
        .collect();
    rows.sort_unstable();
    let mut out = format!("{MULTIGRAPH_HEADER}\n");
    for (s, t, c) in rows {
        out.push_str(&format!("{s},{t},{c}\n"));
    }
    out
}

/// Files making up an exported pillar network.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PillarFiles {
    /// One 3-column edge list per network, in network order.
    pub networks: Vec<String>,
    /// `class_id,network_index,local_actor` rows, by class then network.
    /// A class without members is written as `class_id,,`.
    pub mapping: String,
}

pub fn write_pillar(pillar: &PillarNetwork) -> PillarFiles {
    let networks = pillar
        .networks
        .iter()
        .enumerate()
        .map(|(k, view)| {
            let name = view
                .provenance()
                .layers
                .first()
                .cloned()
                .unwrap_or_else(|| format!("network_{k}"));
            let mut msn = Msn::new([name.as_str()]).expect("validated layer name");
            for label in view.actor_labels() {
                msn.add_actor(label).expect("validated label");
            }
            for (s, t) in view.labeled_edges() {
                msn.add_labeled_edge(s, t, &name).expect("valid view edge");
            }
            write_edge_list(&msn)
        })
        .collect();
    let mut mapping = format!("{PILLAR_MAPPING_HEADER}\n");
    for class in &pillar.classes {
        if class.members.is_empty() {
            mapping.push_str(&format!("{},,\n", class.id));
        }
        let mut members = class.members.clone();
        members.sort_unstable();
        for (k, local) in members {
            let actor = pillar.networks[k].label(local);
            mapping.push_str(&format!("{},{k},{actor}\n", class.id));
        }
    }
    PillarFiles { networks, mapping }
}

/// Rebuilds a pillar network from its files. Returns the pillar and the
/// layer name of each network. The mapping is not validated here; see
/// [`PillarNetwork::validate`].
pub fn read_pillar(files: &PillarFiles) -> Result<(PillarNetwork, Vec<String>), FormatError> {
    let mut networks = Vec::new();
    let mut names = Vec::new();
    for text in &files.networks {
        let msn = parse_network(text.as_bytes(), None)?;
        if msn.layer_count() != 1 {
            return Err(FormatError::Invalid {
                line: 1,
                error: MsnError::InvalidArgument(format!(
                    "a pillar network file holds exactly one layer, found {}",
                    msn.layer_count()
                )),
            });
        }
        let layer = msn.layers().next().expect("one layer");
        let view = msn.layer_projection(layer).expect("own layer");
        let view = SsnView::new(
            view.actor_labels().to_vec(),
            view.edges().map(|(s, t)| (s.index(), t.index())),
            Provenance {
                layers: vec![msn.layer_name(layer).to_owned()],
                policy: None,
            },
        )
        .expect("parsed network is valid");
        names.push(msn.layer_name(layer).to_owned());
        networks.push(view);
    }

    let mut lines = Lines::new(files.mapping.as_bytes());
    expect_header(&mut lines, PILLAR_MAPPING_HEADER)?;
    let mut classes: Vec<IdentityClass> = Vec::new();
    records(&mut lines, 3, |n, f| {
        let id = label(n, f[0])?;
        let position = match classes.iter().position(|c| c.id == id) {
            Some(p) => p,
            None => {
                classes.push(IdentityClass {
                    id: id.to_owned(),
                    members: Vec::new(),
                });
                classes.len() - 1
            }
        };
        if f[1].is_empty() && f[2].is_empty() {
            return Ok(());
        }
        let invalid = |msg: String| FormatError::Invalid {
            line: n,
            error: MsnError::InvalidArgument(msg),
        };
        let k: usize = f[1]
            .parse()
            .map_err(|_| invalid(format!("bad network index `{}`", f[1])))?;
        let network = networks
            .get(k)
            .ok_or_else(|| invalid(format!("network index {k} out of range")))?;
        let local = network
            .actor(f[2])
            .ok_or_else(|| invalid(format!("actor `{}` not in network {k}", f[2])))?;
        classes[position].members.push((k, local));
        Ok(())
    })?;
    Ok((PillarNetwork { networks, classes }, names))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::models::{from_pillar, to_pillar};

    fn parse(text: &str) -> Result<Parsed, FormatError> {
        parse_edge_list(text.as_bytes(), None)
    }

    #[test]
    fn header_only_is_empty() {
        let msn = parse("source,target,layer\n")
            .unwrap()
            .into_network()
            .unwrap();
        assert_eq!(
            (msn.actor_count(), msn.layer_count(), msn.edge_count()),
            (0, 0, 0)
        );
        assert_eq!(write_edge_list(&msn), "source,target,layer\n");
    }

    #[test]
    fn errors_carry_line_numbers() {
        let err = parse("# c\nsource,target,layer\nx,y,l1\nx,x,l1\n").unwrap_err();
        assert!(
            matches!(err, FormatError::SelfLoop { line: 4, .. }),
            "{err}"
        );

        let err = parse("source,target\n").unwrap_err();
        assert!(matches!(err, FormatError::BadHeader { line: 1, .. }));
        assert!(matches!(
            parse("").unwrap_err(),
            FormatError::BadHeader { .. }
        ));

        let err = parse("source,target,layer\nx,y\n").unwrap_err();
        assert!(matches!(
            err,
            FormatError::ArityMismatch {
                line: 2,
                expected: 3,
                found: 2
            }
        ));

        let err = parse("source,target,layer\nx,y,l\n\nx,y,l\n").unwrap_err();
        assert!(matches!(err, FormatError::DuplicateEdge { line: 4, .. }));

        let err = parse("source,target,layer,time\nx,y,l,-3\n").unwrap_err();
        assert!(matches!(err, FormatError::BadTimestamp { line: 2, .. }));

        let err = parse("source,target,layer\nx, y,l\n").unwrap_err();
        assert!(matches!(err, FormatError::Invalid { line: 2, .. }));
        assert_eq!(err.line(), Some(2));
    }

    #[test]
    fn first_error_wins() {
        let err = parse("source,target,layer\nx,y,l\nx,y,l\nx,y\n").unwrap_err();
        assert_eq!(err.line(), Some(3));
    }

    #[test]
    fn declared_layers() {
        let declared = vec!["a".to_owned(), "b".to_owned()];
        let msn =
            parse_network("source,target,layer\nx,y,b\n".as_bytes(), Some(&declared)).unwrap();
        assert_eq!(msn.layer_names(), ["a", "b"]);
        let err =
            parse_network("source,target,layer\nx,y,c\n".as_bytes(), Some(&declared)).unwrap_err();
        assert!(matches!(err, FormatError::UndeclaredLayer { line: 2, .. }));
        let err = parse("#!layers a\nsource,target,layer\nx,y,c\n").unwrap_err();
        assert!(matches!(err, FormatError::UndeclaredLayer { line: 3, .. }));
    }

    #[test]
    fn inferred_layer_order() {
        let msn = parse_network(
            "source,target,layer\nx,y,b\ny,x,a\nx,z,b\n".as_bytes(),
            None,
        )
        .unwrap();
        assert_eq!(msn.layer_names(), ["b", "a"]);
    }

    #[test]
    fn events_allow_repeats() {
        let log = parse("source,target,layer,time\nx,y,l,1\nx,y,l,2\n")
            .unwrap()
            .into_events()
            .unwrap();
        assert_eq!(log.len(), 2);
        assert_eq!(log.span(), Some((1, 2)));
        let text = write_events(&log);
        assert_eq!(parse(&text).unwrap().into_events().unwrap(), log);
    }

    #[test]
    fn canonical_writer_keeps_empty_layers_and_isolated_actors() {
        let mut msn = Msn::new(["w", "a"]).unwrap();
        msn.add_actor("lonely").unwrap();
        msn.add_labeled_edge("q", "p", "a").unwrap();
        msn.add_labeled_edge("p", "q", "a").unwrap();
        let text = write_edge_list(&msn);
        assert_eq!(
            text,
            "#!layers w,a\n#!actors lonely\nsource,target,layer\np,q,a\nq,p,a\n"
        );
        let back = parse_network(text.as_bytes(), None).unwrap();
        assert_eq!(back, msn);
        assert_eq!(write_edge_list(&back), text);
    }

    #[test]
    fn crlf_and_comments() {
        let msn = parse_network(
            "# hi\r\nsource,target,layer\r\nx,y,l\r\n# bye\r\n".as_bytes(),
            None,
        )
        .unwrap();
        assert_eq!(msn.edge_count(), 1);
    }

    #[test]
    fn membership_file() {
        let m = parse_membership("actor,group\nx,g\nx,g\ny,g\nx,h\n".as_bytes()).unwrap();
        assert_eq!(m.members("g").unwrap().len(), 2);
        assert_eq!(
            parse_membership(write_membership(&m).as_bytes()).unwrap(),
            m
        );
        let err = parse_membership("actor,grp\n".as_bytes()).unwrap_err();
        assert!(matches!(err, FormatError::BadHeader { line: 1, .. }));
        let err = parse_membership("actor,group\nx\n".as_bytes()).unwrap_err();
        assert!(matches!(err, FormatError::ArityMismatch { line: 2, .. }));
    }

    #[test]
    fn node_mapping_file() {
        let m = parse_node_mapping("fine,coarse\nx,D1\ny,D1\nx,D1\n".as_bytes()).unwrap();
        assert_eq!(m.len(), 2);
        assert_eq!(
            parse_node_mapping(write_node_mapping(&m).as_bytes()).unwrap(),
            m
        );
        let err = parse_node_mapping("fine,coarse\nx,D1\nx,D2\n".as_bytes()).unwrap_err();
        assert_eq!(err.line(), Some(3));
    }

    #[test]
    fn pillar_files_round_trip() {
        let mut msn = Msn::new(["a", "b"]).unwrap();
        msn.add_labeled_edge("p", "q", "a").unwrap();
        msn.add_labeled_edge("q", "r", "b").unwrap();
        msn.add_actor("s").unwrap();
        let pillar = to_pillar(&msn);
        let files = write_pillar(&pillar);
        assert_eq!(files.networks.len(), 2);
        assert!(files.mapping.starts_with(PILLAR_MAPPING_HEADER));
        let (back, names) = read_pillar(&files).unwrap();
        assert_eq!(names, ["a", "b"]);
        assert_eq!(from_pillar(&back, &names).unwrap(), msn);
    }

    #[test]
    fn memberless_classes_survive() {
        let mut msn = Msn::new(Vec::<&str>::new()).unwrap();
        msn.add_actor("solo").unwrap();
        let files = write_pillar(&to_pillar(&msn));
        assert_eq!(files.mapping, format!("{PILLAR_MAPPING_HEADER}\nsolo,,\n"));
        let (back, names) = read_pillar(&files).unwrap();
        assert_eq!(from_pillar(&back, &names).unwrap(), msn);
    }
}
