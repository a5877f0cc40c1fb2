//! The `msn` command line tool.
//!
//! Results go to stdout as an aligned text table (default) or CSV, and
//! diagnostics to stderr. Exit status: 0 on success, 1 for domain or
//! argument errors, 2 for I/O and parse errors.

use std::collections::BTreeSet;
use std::ffi::OsString;
use std::fs;
use std::io::{BufReader, Write};
use std::path::{Path, PathBuf};

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::dimensions::{
    aggregate_layers, compare_aggregations, snapshot, snapshot_event_count, time_series,
    AggregationPolicy, EventLog, GroupMembership, SnapshotKey, TimeWindow,
};
use crate::error::MsnError;
use crate::io::{self, FormatError, Parsed, PillarFiles};
use crate::measures::{degree_report, density_ranking, neighbourhood_report};
use crate::models::{coarsen, from_pillar, to_pillar};
use crate::network::{ActorId, LayerId, Msn};
use crate::representations::to_multigraph;

#[derive(Debug, Parser)]
#[command(name = "msn", version, about = "Analyse multi-layered social networks")]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Table, global = true)]
    format: Format,

    /// Declares the layer set of input files, in order. Records on any
    /// other layer are rejected.
    #[arg(long, value_delimiter = ',', global = true)]
    layers: Option<Vec<String>>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Table,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Policy {
    Union,
    Count,
}

impl From<Policy> for AggregationPolicy {
    fn from(p: Policy) -> Self {
        match p {
            Policy::Union => AggregationPolicy::Union,
            Policy::Count => AggregationPolicy::Count,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum DirectionArg {
    In,
    Out,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Target {
    /// Canonical 3-column edge list.
    Edgelist,
    /// `source,target,count` multiedge counts.
    Multigraph,
    /// Repeated-entry adjacency lists.
    Adjacency,
    /// One edge list per layer plus `mapping.csv`, written to `--out-dir`.
    Pillar,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Source {
    Edgelist,
    /// A directory written by `convert --to pillar`.
    Pillar,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Actor, layer and edge counts (event counts for 4-column files).
    Stats { input: PathBuf },
    /// Edges of one layer.
    Project {
        input: PathBuf,
        #[arg(long)]
        layer: String,
    },
    /// Combine several layers into one view.
    Aggregate {
        input: PathBuf,
        /// Layers to combine (repeatable or comma separated).
        #[arg(long, value_delimiter = ',', required = true)]
        layer: Vec<String>,
        #[arg(long, value_enum)]
        policy: Policy,
    },
    /// Overlap of two layer aggregations.
    Compare {
        input: PathBuf,
        #[arg(long, value_delimiter = ',', required = true)]
        a: Vec<String>,
        #[arg(long, value_delimiter = ',', required = true)]
        b: Vec<String>,
        /// Also list every pair with its side.
        #[arg(long)]
        pairs: bool,
    },
    /// Per-layer and aggregated degree of one actor.
    Degree {
        input: PathBuf,
        #[arg(long)]
        actor: String,
        /// Layers to aggregate over; all layers when omitted.
        #[arg(long, value_delimiter = ',')]
        layer: Vec<String>,
        #[arg(long, value_enum)]
        policy: Policy,
    },
    /// Layers ranked by directed density.
    Density { input: PathBuf },
    /// Per-layer neighbour sets of one actor.
    Neighbourhood {
        input: PathBuf,
        #[arg(long)]
        actor: String,
    },
    /// Convert between representations.
    Convert {
        input: PathBuf,
        #[arg(long, value_enum, default_value_t = Source::Edgelist)]
        from: Source,
        #[arg(long, value_enum)]
        to: Target,
        #[arg(long)]
        out_dir: Option<PathBuf>,
    },
    /// Collapse actors through a `fine,coarse` mapping.
    Coarsen {
        input: PathBuf,
        #[arg(long)]
        mapping: PathBuf,
        /// Layers to union before coarsening; all layers when omitted.
        #[arg(long, value_delimiter = ',')]
        layer: Vec<String>,
    },
    /// The network inside one layer/time/group coordinate of an event file.
    Snapshot {
        input: PathBuf,
        #[arg(long)]
        from: u64,
        #[arg(long)]
        to: u64,
        #[command(flatten)]
        selection: Selection,
        /// Also write the snapshot as an edge list.
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Snapshots over sliding or tumbling windows of an event file.
    Timeseries {
        input: PathBuf,
        #[arg(long)]
        window: u64,
        /// Defaults to the window length (tumbling windows).
        #[arg(long)]
        step: Option<u64>,
        #[command(flatten)]
        selection: Selection,
    },
}

#[derive(Debug, Args)]
struct Selection {
    /// Layers to include; all layers when omitted.
    #[arg(long, value_delimiter = ',')]
    layer: Vec<String>,
    #[arg(long, requires = "membership")]
    group: Option<String>,
    /// `actor,group` membership file.
    #[arg(long)]
    membership: Option<PathBuf>,
}

#[derive(Debug)]
enum Failure {
    Domain(MsnError),
    Format(PathBuf, FormatError),
    Usage(String),
}

impl From<MsnError> for Failure {
    fn from(e: MsnError) -> Self {
        Failure::Domain(e)
    }
}

impl Failure {
    fn exit_code(&self) -> i32 {
        match self {
            Failure::Domain(_) | Failure::Usage(_) => 1,
            Failure::Format(..) => 2,
        }
    }

    fn message(&self) -> String {
        match self {
            Failure::Domain(e) => format!("error: {e}"),
            Failure::Format(path, e) => format!("error: {}: {e}", path.display()),
            Failure::Usage(m) => format!("error: {m}"),
        }
    }
}

type Outcome<T = ()> = std::result::Result<T, Failure>;

/// Tabular output, rendered as aligned text or CSV.
#[derive(Debug, Default)]
struct Table {
    headers: Vec<String>,
    rows: Vec<Vec<String>>,
}

impl Table {
    fn new<const N: usize>(headers: [&str; N]) -> Self {
        Table {
            headers: headers.iter().map(|h| h.to_string()).collect(),
            rows: Vec::new(),
        }
    }

    fn row<I, S>(&mut self, cells: I)
    where
        I: IntoIterator<Item = S>,
        S: ToString,
    {
        self.rows
            .push(cells.into_iter().map(|c| c.to_string()).collect());
    }

    fn render(&self, format: Format, color: bool) -> String {
        match format {
            Format::Csv => {
                let mut out = self.headers.join(",");
                out.push('\n');
                for row in &self.rows {
                    out.push_str(&row.join(","));
                    out.push('\n');
                }
                out
            }
            Format::Table => {
                let mut widths: Vec<usize> =
                    self.headers.iter().map(|h| h.chars().count()).collect();
                for row in &self.rows {
                    for (w, cell) in widths.iter_mut().zip(row) {
                        *w = (*w).max(cell.chars().count());
                    }
                }
                let line = |cells: &[String]| {
                    let padded: Vec<String> = cells
                        .iter()
                        .zip(&widths)
                        .map(|(c, &w)| format!("{c:<w$}"))
                        .collect();
                    padded.join("  ").trim_end().to_owned()
                };
                let mut out = String::new();
                let header = line(&self.headers);
                if color {
                    out.push_str(&format!("\x1b[1m{header}\x1b[0m\n"));
                } else {
                    out.push_str(&header);
                    out.push('\n');
                }
                for row in &self.rows {
                    out.push_str(&line(row));
                    out.push('\n');
                }
                out
            }
        }
    }
}

struct Context<'a> {
    format: Format,
    color: bool,
    declared: Option<Vec<String>>,
    out: &'a mut dyn Write,
}

impl Context<'_> {
    fn emit(&mut self, table: &Table) -> Outcome {
        let text = table.render(self.format, self.color);
        self.write(&text)
    }

    fn write(&mut self, text: &str) -> Outcome {
        self.out
            .write_all(text.as_bytes())
            .map_err(|e| Failure::Format(PathBuf::from("<stdout>"), e.into()))
    }

    fn read(&self, path: &Path) -> Outcome<Parsed> {
        let file = fs::File::open(path).map_err(|e| Failure::Format(path.to_owned(), e.into()))?;
        io::parse_edge_list(BufReader::new(file), self.declared.as_deref())
            .map_err(|e| Failure::Format(path.to_owned(), e))
    }

    fn network(&self, path: &Path) -> Outcome<Msn> {
        match self.read(path)? {
            Parsed::Network(msn) => Ok(msn),
            Parsed::Events(_) => Err(Failure::Usage(format!(
                "{} is an event file; this command needs a 3-column network",
                path.display()
            ))),
        }
    }

    fn events(&self, path: &Path) -> Outcome<EventLog> {
        match self.read(path)? {
            Parsed::Events(log) => Ok(log),
            Parsed::Network(msn) => Ok(EventLog::from_msn(&msn, 0)),
        }
    }
}

fn read_text(path: &Path) -> Outcome<String> {
    fs::read_to_string(path).map_err(|e| Failure::Format(path.to_owned(), e.into()))
}

fn layer_ids(msn: &Msn, names: &[String]) -> Outcome<Vec<LayerId>> {
    if names.is_empty() {
        return Ok(msn.layers().collect());
    }
    Ok(msn.resolve_layers(names)?)
}

fn actor_id(msn: &Msn, label: &str) -> Outcome<ActorId> {
    msn.actor(label)
        .ok_or_else(|| Failure::Domain(MsnError::UnknownActor(label.to_owned())))
}

fn labels(msn: &Msn, ids: &BTreeSet<ActorId>) -> String {
    let mut names: Vec<&str> = ids.iter().map(|&a| msn.actor_label(a)).collect();
    names.sort_unstable();
    names.join(" ")
}

/// Runs the tool with `args` (including the program name) and returns the
/// exit status.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let rendered = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = out.write_all(rendered.as_bytes());
                    0
                }
                _ => {
                    let _ = err.write_all(rendered.as_bytes());
                    1
                }
            };
        }
    };
    let color = std::env::var("MSN_COLOR").is_ok_and(|v| v == "1");
    let mut ctx = Context {
        format: cli.format,
        color: color && cli.format == Format::Table,
        declared: cli.layers,
        out,
    };
    match dispatch(&mut ctx, cli.command) {
        Ok(()) => 0,
        Err(failure) => {
            let _ = writeln!(err, "{}", failure.message());
            failure.exit_code()
        }
    }
}

fn dispatch(ctx: &mut Context<'_>, command: Command) -> Outcome {
    match command {
        Command::Stats { input } => stats(ctx, &input),
        Command::Project { input, layer } => {
            let msn = ctx.network(&input)?;
            let l = msn.resolve_layers(&[layer])?[0];
            let view = msn.layer_projection(l)?;
            let mut rows: Vec<(&str, &str)> = view.labeled_edges().collect();
            rows.sort_unstable();
            let mut table = Table::new(["source", "target"]);
            for (s, t) in rows {
                table.row([s, t]);
            }
            ctx.emit(&table)
        }
        Command::Aggregate {
            input,
            layer,
            policy,
        } => {
            let msn = ctx.network(&input)?;
            let layers = msn.resolve_layers(&layer)?;
            let agg = aggregate_layers(&msn, &layers, policy.into())?;
            let mut rows: Vec<(&str, &str, usize)> = agg
                .view
                .edges()
                .map(|(s, t)| (msn.actor_label(s), msn.actor_label(t), agg.count(s, t)))
                .collect();
            rows.sort_unstable();
            let mut table = match policy {
                Policy::Union => Table::new(["source", "target"]),
                Policy::Count => Table::new(["source", "target", "count"]),
            };
            for (s, t, c) in rows {
                match policy {
                    Policy::Union => table.row([s, t]),
                    Policy::Count => table.row([s.to_owned(), t.to_owned(), c.to_string()]),
                }
            }
            ctx.emit(&table)
        }
        Command::Compare { input, a, b, pairs } => {
            let msn = ctx.network(&input)?;
            let a = msn.resolve_layers(&a)?;
            let b = msn.resolve_layers(&b)?;
            let report = compare_aggregations(&msn, &a, &b)?;
            let mut summary = Table::new(["metric", "value"]);
            summary.row(["shared".to_owned(), report.shared.len().to_string()]);
            summary.row(["a_only".to_owned(), report.a_only.len().to_string()]);
            summary.row(["b_only".to_owned(), report.b_only.len().to_string()]);
            summary.row(["jaccard".to_owned(), format!("{:.6}", report.jaccard)]);
            ctx.emit(&summary)?;
            if pairs {
                let mut table = Table::new(["source", "target", "side"]);
                for (side, list) in [
                    ("shared", &report.shared),
                    ("a_only", &report.a_only),
                    ("b_only", &report.b_only),
                ] {
                    let mut list = list.clone();
                    list.sort_unstable();
                    for (s, t) in list {
                        table.row([s.as_str(), t.as_str(), side]);
                    }
                }
                ctx.write("\n")?;
                ctx.emit(&table)?;
            }
            Ok(())
        }
        Command::Degree {
            input,
            actor,
            layer,
            policy,
        } => {
            let msn = ctx.network(&input)?;
            let x = actor_id(&msn, &actor)?;
            let layers = layer_ids(&msn, &layer)?;
            let report = degree_report(&msn, x, &layers, policy.into())?;
            let mut table = Table::new(["layer", "in", "out"]);
            for l in &report.per_layer {
                table.row([
                    l.layer.clone(),
                    l.in_degree.to_string(),
                    l.out_degree.to_string(),
                ]);
            }
            table.row([
                format!("[{}]", report.policy),
                report.in_degree.to_string(),
                report.out_degree.to_string(),
            ]);
            ctx.emit(&table)
        }
        Command::Density { input } => {
            let msn = ctx.network(&input)?;
            let mut table = Table::new(["layer", "edges", "possible", "density"]);
            for r in density_ranking(&msn)? {
                table.row([
                    r.layer.clone(),
                    r.edges.to_string(),
                    r.possible.to_string(),
                    format!("{:.6}", r.value()),
                ]);
            }
            ctx.emit(&table)
        }
        Command::Neighbourhood { input, actor } => {
            let msn = ctx.network(&input)?;
            let x = actor_id(&msn, &actor)?;
            let report = neighbourhood_report(&msn, x)?;
            let mut table = Table::new(["layer", "direction", "neighbours"]);
            for n in &report.per_layer {
                table.row([n.layer.as_str(), "out", &labels(&msn, &n.out)]);
                table.row([n.layer.as_str(), "in", &labels(&msn, &n.inc)]);
            }
            table.row(["[union]", "out", &labels(&msn, &report.union)]);
            table.row(["[intersection]", "out", &labels(&msn, &report.intersection)]);
            ctx.emit(&table)
        }
        Command::Convert {
            input,
            from,
            to,
            out_dir,
        } => convert(ctx, &input, from, to, out_dir.as_deref()),
        Command::Coarsen {
            input,
            mapping,
            layer,
        } => {
            let msn = ctx.network(&input)?;
            let layers = layer_ids(&msn, &layer)?;
            let text = read_text(&mapping)?;
            let mapping = io::parse_node_mapping(text.as_bytes())
                .map_err(|e| Failure::Format(mapping.clone(), e))?;
            let view = aggregate_layers(&msn, &layers, AggregationPolicy::Union)?.view;
            let coarse = coarsen(&view, &mapping)?;
            let mut table = Table::new(["from", "to", "count"]);
            for (a, b, c) in coarse.entries() {
                table.row([a.to_owned(), b.to_owned(), c.to_string()]);
            }
            ctx.emit(&table)
        }
        Command::Snapshot {
            input,
            from,
            to,
            selection,
            output,
        } => {
            let log = ctx.events(&input)?;
            let membership = membership(&selection)?;
            let layers = selected(&log, &selection.layer);
            let key = SnapshotKey::new(
                &layers,
                TimeWindow::new(from, to)?,
                selection.group.as_deref(),
            )?;
            let msn = snapshot(&log, &membership, &key)?;
            let events = snapshot_event_count(&log, &membership, &key)?;
            if let Some(path) = output {
                fs::write(&path, io::write_edge_list(&msn))
                    .map_err(|e| Failure::Format(path.clone(), e.into()))?;
            }
            let mut table = Table::new(["metric", "value"]);
            table.row(["window".to_owned(), key.window().to_string()]);
            table.row(["events".to_owned(), events.to_string()]);
            table.row(["actors".to_owned(), msn.actor_count().to_string()]);
            table.row(["edges".to_owned(), msn.edge_count().to_string()]);
            for l in msn.layers() {
                table.row([
                    format!("edges[{}]", msn.layer_name(l)),
                    msn.layer_edge_count(l)?.to_string(),
                ]);
            }
            ctx.emit(&table)
        }
        Command::Timeseries {
            input,
            window,
            step,
            selection,
        } => {
            let log = ctx.events(&input)?;
            let membership = membership(&selection)?;
            let layers = selected(&log, &selection.layer);
            let series = time_series(
                &log,
                &membership,
                &layers,
                selection.group.as_deref(),
                window,
                step.unwrap_or(window),
            )?;
            let mut headers = vec!["start".to_owned(), "end".to_owned(), "edges".to_owned()];
            headers.extend(log.layers().iter().cloned());
            let mut table = Table {
                headers,
                rows: Vec::new(),
            };
            for (w, msn) in &series {
                let mut row = vec![
                    w.start().to_string(),
                    w.end().to_string(),
                    msn.edge_count().to_string(),
                ];
                for l in msn.layers() {
                    row.push(msn.layer_edge_count(l)?.to_string());
                }
                table.rows.push(row);
            }
            ctx.emit(&table)
        }
    }
}

fn membership(selection: &Selection) -> Outcome<GroupMembership> {
    match &selection.membership {
        None => Ok(GroupMembership::new()),
        Some(path) => {
            let text = read_text(path)?;
            io::parse_membership(text.as_bytes()).map_err(|e| Failure::Format(path.clone(), e))
        }
    }
}

fn selected(log: &EventLog, layers: &[String]) -> Vec<String> {
    if layers.is_empty() {
        log.layers().to_vec()
    } else {
        layers.to_vec()
    }
}

fn stats(ctx: &mut Context<'_>, input: &Path) -> Outcome {
    let mut table = Table::new(["metric", "value"]);
    match ctx.read(input)? {
        Parsed::Network(msn) => {
            table.row(["actors".to_owned(), msn.actor_count().to_string()]);
            table.row(["layers".to_owned(), msn.layer_count().to_string()]);
            table.row(["edges".to_owned(), msn.edge_count().to_string()]);
            for l in msn.layers() {
                table.row([
                    format!("edges[{}]", msn.layer_name(l)),
                    msn.layer_edge_count(l)?.to_string(),
                ]);
            }
        }
        Parsed::Events(log) => {
            table.row(["actors".to_owned(), log.actors().len().to_string()]);
            table.row(["layers".to_owned(), log.layers().len().to_string()]);
            table.row(["events".to_owned(), log.len().to_string()]);
            if let Some((first, last)) = log.span() {
                table.row(["first_time".to_owned(), first.to_string()]);
                table.row(["last_time".to_owned(), last.to_string()]);
            }
            for layer in log.layers() {
                let n = log.events().iter().filter(|e| &e.layer == layer).count();
                table.row([format!("events[{layer}]"), n.to_string()]);
            }
        }
    }
    ctx.emit(&table)
}

const MAPPING_FILE: &str = "mapping.csv";

fn network_file(k: usize) -> String {
    format!("network_{k}.csv")
}

fn convert(
    ctx: &mut Context<'_>,
    input: &Path,
    from: Source,
    to: Target,
    out_dir: Option<&Path>,
) -> Outcome {
    let msn = match from {
        Source::Edgelist => ctx.network(input)?,
        Source::Pillar => {
            let mapping = read_text(&input.join(MAPPING_FILE))?;
            let mut networks = Vec::new();
            while input.join(network_file(networks.len())).exists() {
                networks.push(read_text(&input.join(network_file(networks.len())))?);
            }
            let files = PillarFiles { networks, mapping };
            let (pillar, names) =
                io::read_pillar(&files).map_err(|e| Failure::Format(input.to_owned(), e))?;
            from_pillar(&pillar, &names)?
        }
    };
    match to {
        Target::Edgelist => ctx.write(&io::write_edge_list(&msn)),
        Target::Multigraph => {
            let mg = to_multigraph(&msn);
            let mut rows: Vec<(&str, &str, usize)> = mg
                .counts()
                .iter()
                .map(|(&(s, t), &c)| (mg.label(s), mg.label(t), c))
                .collect();
            rows.sort_unstable();
            let mut table = Table::new(["source", "target", "count"]);
            for (s, t, c) in rows {
                table.row([s.to_owned(), t.to_owned(), c.to_string()]);
            }
            ctx.emit(&table)
        }
        Target::Adjacency => {
            let list = to_multigraph(&msn).to_repeated_list();
            let mut actors: Vec<ActorId> = msn.actors().collect();
            actors.sort_by_key(|&a| msn.actor_label(a));
            let mut table = Table::new(["actor", "neighbours"]);
            for a in actors {
                table.row([msn.actor_label(a).to_owned(), list.labels(a).join(" ")]);
            }
            ctx.emit(&table)
        }
        Target::Pillar => {
            let dir =
                out_dir.ok_or_else(|| Failure::Usage("--to pillar requires --out-dir".into()))?;
            let files = io::write_pillar(&to_pillar(&msn));
            fs::create_dir_all(dir).map_err(|e| Failure::Format(dir.to_owned(), e.into()))?;
            let mut table = Table::new(["file", "records"]);
            for (k, text) in files.networks.iter().enumerate() {
                let path = dir.join(network_file(k));
                fs::write(&path, text).map_err(|e| Failure::Format(path.clone(), e.into()))?;
                let records = text.lines().filter(|l| !l.starts_with('#')).count() - 1;
                table.row([network_file(k), records.to_string()]);
            }
            let path = dir.join(MAPPING_FILE);
            fs::write(&path, &files.mapping)
                .map_err(|e| Failure::Format(path.clone(), e.into()))?;
            table.row([
                MAPPING_FILE.to_owned(),
                (files.mapping.lines().count() - 1).to_string(),
            ]);
            ctx.emit(&table)
        }
    }
}
