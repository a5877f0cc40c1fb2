//! Multi-layered social networks.
//!
//! A network `⟨V, E, L⟩` holds one actor set shared by every layer, a layer
//! set fixed at construction, and directed edges `⟨x, y, l⟩` with `x ≠ y`,
//! at most one per ordered pair and layer. Around that core the crate offers
//! layer-erased multigraph views, conversions to pillar networks, coarsening
//! and edge-set families, layer/time/group snapshots, per-layer measures and
//! the text formats used by the `msn` command line tool.

pub mod cli;
pub mod dimensions;
pub mod error;
pub mod io;
pub mod measures;
pub mod models;
pub mod network;
pub mod representations;

pub use dimensions::{
    aggregate_layers, compare_aggregations, snapshot, time_series, Aggregation, AggregationPolicy,
    EventLog, GroupMembership, OverlapReport, SnapshotKey, TemporalEvent, TimeWindow,
};
pub use error::{MsnError, Result};
pub use measures::{degree, density, density_ranking, neighbourhood_report};
pub use models::{
    coarsen, from_edge_set_family, from_pillar, to_edge_set_family, to_pillar, CoarseGraph,
    EdgeSetFamily, NodeMapping, PillarNetwork,
};
pub use network::{ActorId, Direction, LayerId, LayeredEdge, Msn, Provenance, SsnView};
pub use representations::{to_multigraph, MultigraphView, RepeatedAdjacencyList};

/// The bundled three-layer example network (`fixtures/fig1.csv`).
///
/// Its `l1` records are the reference friendship tuples. The `l2` and `l3`
/// records are synthetic and only match the reference per-layer counts.
pub const FIG1_CSV: &str = include_str!("../fixtures/fig1.csv");

/// Parses [`FIG1_CSV`].
pub fn fig1() -> Msn {
    io::parse_network(FIG1_CSV.as_bytes(), None).expect("bundled fixture is valid")
}
