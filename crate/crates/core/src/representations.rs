//! Layer-erased multigraph views.
//!
//! Flattening a network into a multigraph keeps only how many layers connect
//! each ordered pair. Which layer carried which edge is discarded, and no
//! inverse conversion exists.

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::error::{MsnError, Result};
use crate::network::{ActorId, Msn};

/// Multiedge multiplicities between ordered actor pairs.
///
/// `count(i, j)` is the number of layers carrying `i -> j`. Zero entries are
/// not stored.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MultigraphView {
    actors: Arc<Vec<String>>,
    counts: BTreeMap<(ActorId, ActorId), usize>,
}

impl MultigraphView {
    pub fn actor_labels(&self) -> &[String] {
        &self.actors
    }

    pub fn actor_count(&self) -> usize {
        self.actors.len()
    }

    pub fn label(&self, id: ActorId) -> &str {
        &self.actors[id.index()]
    }

    /// Sparse counts keyed by (source, target), ordered by actor index.
    pub fn counts(&self) -> &BTreeMap<(ActorId, ActorId), usize> {
        &self.counts
    }

    pub fn multiedge_count(&self, i: ActorId, j: ActorId) -> Result<usize> {
        for a in [i, j] {
            if a.index() >= self.actors.len() {
                return Err(MsnError::UnknownActor(a.to_string()));
            }
        }
        Ok(self.counts.get(&(i, j)).copied().unwrap_or(0))
    }

    /// Σ of all multiplicities; equals the edge count of the source network.
    pub fn total(&self) -> usize {
        self.counts.values().sum()
    }

    /// Σ of the multiplicities leaving `x`.
    pub fn row_sum(&self, x: ActorId) -> usize {
        self.row(x).map(|(_, c)| c).sum()
    }

    fn row(&self, x: ActorId) -> impl Iterator<Item = (ActorId, usize)> + '_ {
        self.counts
            .range((x, ActorId::from_index(0))..=(x, ActorId::from_index(u32::MAX as usize)))
            .map(|(&(_, t), &c)| (t, c))
    }

    /// Dense `|V| × |V|` adjacency matrix, built on demand.
    pub fn to_dense(&self) -> Vec<Vec<usize>> {
        let n = self.actors.len();
        let mut matrix = vec![vec![0; n]; n];
        for (&(s, t), &c) in &self.counts {
            matrix[s.index()][t.index()] = c;
        }
        matrix
    }

    /// Repeated-entry adjacency list: one neighbour entry per multiedge.
    pub fn to_repeated_list(&self) -> RepeatedAdjacencyList {
        let lists = (0..self.actors.len())
            .map(|i| {
                let mut row: Vec<(ActorId, usize)> = self.row(ActorId::from_index(i)).collect();
                row.sort_by(|a, b| self.label(a.0).cmp(self.label(b.0)));
                row.into_iter()
                    .flat_map(|(t, c)| std::iter::repeat_n(t, c))
                    .collect()
            })
            .collect();
        RepeatedAdjacencyList {
            actors: Arc::clone(&self.actors),
            lists,
        }
    }
}

/// Flattens every layer into one multigraph.
pub fn to_multigraph(msn: &Msn) -> MultigraphView {
    let mut counts = BTreeMap::new();
    for edge in msn.edges() {
        *counts.entry((edge.source, edge.target)).or_insert(0) += 1;
    }
    MultigraphView {
        actors: msn.shared_labels(),
        counts,
    }
}

/// Per-actor neighbour lists where a multiedge of multiplicity `k` appears
/// as `k` identical entries. Entries are sorted by neighbour label.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RepeatedAdjacencyList {
    actors: Arc<Vec<String>>,
    lists: Vec<Vec<ActorId>>,
}

impl RepeatedAdjacencyList {
    pub fn list(&self, x: ActorId) -> &[ActorId] {
        &self.lists[x.index()]
    }

    pub fn labels(&self, x: ActorId) -> Vec<&str> {
        self.list(x)
            .iter()
            .map(|id| self.actors[id.index()].as_str())
            .collect()
    }

    pub fn actor_labels(&self) -> &[String] {
        &self.actors
    }

    pub fn total_len(&self) -> usize {
        self.lists.iter().map(Vec::len).sum()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn repeated_list_example() -> Msn {
        let mut msn = Msn::new(["l1", "l2", "l3"]).unwrap();
        for (t, l) in [
            ("y", "l1"),
            ("y", "l2"),
            ("y", "l3"),
            ("v", "l1"),
            ("z", "l1"),
            ("z", "l2"),
        ] {
            msn.add_labeled_edge("x", t, l).unwrap();
        }
        msn
    }

    #[test]
    fn repeated_list_counts() {
        let msn = repeated_list_example();
        let mg = to_multigraph(&msn);
        let id = |l: &str| msn.actor(l).unwrap();
        assert_eq!(mg.multiedge_count(id("x"), id("v")).unwrap(), 1);
        assert_eq!(mg.multiedge_count(id("x"), id("y")).unwrap(), 3);
        assert_eq!(mg.multiedge_count(id("x"), id("z")).unwrap(), 2);
        assert_eq!(mg.multiedge_count(id("y"), id("x")).unwrap(), 0);
        assert_eq!(mg.multiedge_count(id("x"), id("x")).unwrap(), 0);

        let list = mg.to_repeated_list();
        assert_eq!(list.labels(id("x")), ["v", "y", "y", "y", "z", "z"]);
        assert!(list.list(id("y")).is_empty());
        assert_eq!(list.total_len(), mg.total());
        assert_eq!(mg.row_sum(id("x")), 6);
    }

    #[test]
    fn empty_network() {
        let msn = Msn::new(["a"]).unwrap();
        let mg = to_multigraph(&msn);
        assert!(mg.counts().is_empty());
        assert_eq!(mg.total(), 0);
        assert!(mg
            .multiedge_count(ActorId::from_index(0), ActorId::from_index(0))
            .is_err());
    }

    #[test]
    fn dense_matrix_matches_counts() {
        let msn = repeated_list_example();
        let mg = to_multigraph(&msn);
        let dense = mg.to_dense();
        let x = msn.actor("x").unwrap().index();
        let y = msn.actor("y").unwrap().index();
        assert_eq!(dense[x][y], 3);
        assert_eq!(dense.iter().flatten().sum::<usize>(), 6);
    }
}
