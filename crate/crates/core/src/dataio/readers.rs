use std::collections::{BTreeMap, HashMap};
use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::hypercore::Hypergraph;

/// Where a dataset came from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SourceFormat {
    /// `-nverts`, `-simplices` and `-times` files sharing a prefix.
    Triple,
    /// One hyperedge per line.
    EdgeList,
}

impl SourceFormat {
    pub fn as_str(self) -> &'static str {
        match self {
            SourceFormat::Triple => "triple",
            SourceFormat::EdgeList => "edgelist",
        }
    }
}

impl std::str::FromStr for SourceFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "triple" => Ok(SourceFormat::Triple),
            "edgelist" => Ok(SourceFormat::EdgeList),
            other => Err(Error::param("format", format!("unknown input format `{other}`"))),
        }
    }
}

/// A parsed hypergraph with its node names.
#[derive(Debug, Clone, PartialEq)]
pub struct SimplexDataset {
    pub hypergraph: Hypergraph,
    /// External name of each node index.
    pub names: Vec<String>,
    pub format: SourceFormat,
    /// SHA-256 of the input bytes, hex encoded.
    pub content_hash: String,
    pub dropped_duplicates: usize,
    pub dropped_repeated: usize,
    pub dropped_cardinality: usize,
}

impl SimplexDataset {
    /// Drops hyperedges larger than `max_t`; returns how many went.
    pub fn limit_cardinality(&mut self, max_t: usize) -> usize {
        let h = &self.hypergraph;
        let before = h.num_edges();
        self.hypergraph = h.select_edges(|i| h.edges()[i].len() <= max_t);
        let dropped = before - self.hypergraph.num_edges();
        self.dropped_cardinality += dropped;
        dropped
    }

    /// Node index by external name.
    pub fn index_of(&self) -> HashMap<&str, usize> {
        self.names.iter().enumerate().map(|(i, s)| (s.as_str(), i)).collect()
    }
}

pub(crate) fn read_text(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|e| Error::io(path, e))
}

fn hex(bytes: &[u8]) -> String {
    let mut s = String::with_capacity(bytes.len() * 2);
    for b in bytes {
        write!(s, "{b:02x}").expect("write to string");
    }
    s
}

/// Hex SHA-256 over the given texts, in order.
pub fn content_hash(parts: &[&str]) -> String {
    let mut hasher = Sha256::new();
    for p in parts {
        hasher.update(p.as_bytes());
    }
    hex(&hasher.finalize())
}

fn parse_column<T: std::str::FromStr>(path: &Path, text: &str) -> Result<Vec<T>> {
    let mut out = Vec::new();
    for (ln, line) in text.lines().enumerate() {
        for tok in line.split_whitespace() {
            let v = tok.parse().map_err(|_| Error::Parse {
                path: path.to_path_buf(),
                line: ln + 1,
                message: format!("cannot parse `{tok}`"),
            })?;
            out.push(v);
        }
    }
    Ok(out)
}

/// Paths of the three files for a prefix: `{prefix}-nverts.txt`, `{prefix}-simplices.txt`, `{prefix}-times.txt`.
pub fn triple_paths(prefix: &Path) -> (PathBuf, PathBuf, PathBuf) {
    let p = prefix.to_string_lossy();
    (
        PathBuf::from(format!("{p}-nverts.txt")),
        PathBuf::from(format!("{p}-simplices.txt")),
        PathBuf::from(format!("{p}-times.txt")),
    )
}

/// Reads the timestamped-simplex format: simplex sizes, the flattened
/// 1-based node ids, and one time per simplex.
///
/// Node ids are mapped to dense indices in ascending id order. Simplices
/// with a repeated node or a size outside `[2, max_t]` are dropped and
/// counted; duplicate node-sets keep their earliest time.
pub fn read_simplex_triple_files(nverts: &Path, simplices: &Path, times: &Path, max_t: usize) -> Result<SimplexDataset> {
    let (tn, ts, tt) = (read_text(nverts)?, read_text(simplices)?, read_text(times)?);
    let sizes: Vec<usize> = parse_column(nverts, &tn)?;
    let ids: Vec<u64> = parse_column(simplices, &ts)?;
    let stamps: Vec<f64> = parse_column(times, &tt)?;
    let total: usize = sizes.iter().sum();
    if total != ids.len() {
        return Err(Error::Format {
            path: simplices.to_path_buf(),
            message: format!("sizes sum to {total} but {} node ids were read", ids.len()),
        });
    }
    if sizes.len() != stamps.len() {
        return Err(Error::Format {
            path: times.to_path_buf(),
            message: format!("{} simplices but {} timestamps", sizes.len(), stamps.len()),
        });
    }
    if let Some(i) = ids.iter().position(|&v| v == 0) {
        return Err(Error::Format {
            path: simplices.to_path_buf(),
            message: format!("node id 0 at position {} (ids are 1-based)", i + 1),
        });
    }

    let mut dense: BTreeMap<u64, usize> = ids.iter().map(|&v| (v, 0)).collect();
    for (i, slot) in dense.values_mut().enumerate() {
        *slot = i;
    }
    let names: Vec<String> = dense.keys().map(u64::to_string).collect();

    let mut edges = Vec::with_capacity(sizes.len());
    let mut kept_times = Vec::with_capacity(sizes.len());
    let (mut repeated, mut out_of_range) = (0, 0);
    let mut offset = 0;
    for (k, &s) in sizes.iter().enumerate() {
        let mut e: Vec<usize> = ids[offset..offset + s].iter().map(|v| dense[v]).collect();
        offset += s;
        e.sort_unstable();
        if e.windows(2).any(|w| w[0] == w[1]) {
            repeated += 1;
            continue;
        }
        if s < 2 || s > max_t {
            out_of_range += 1;
            continue;
        }
        edges.push(e);
        kept_times.push(stamps[k]);
    }
    let (hypergraph, duplicates) = Hypergraph::build(names.len(), edges, Some(kept_times))?;
    report_drops(nverts, duplicates, repeated, out_of_range);
    Ok(SimplexDataset {
        hypergraph,
        names,
        format: SourceFormat::Triple,
        content_hash: content_hash(&[&tn, &ts, &tt]),
        dropped_duplicates: duplicates,
        dropped_repeated: repeated,
        dropped_cardinality: out_of_range,
    })
}

fn report_drops(path: &Path, duplicates: usize, repeated: usize, out_of_range: usize) {
    if duplicates > 0 {
        log::warn!("{}: dropped {duplicates} duplicate hyperedges", path.display());
    }
    if repeated > 0 {
        log::warn!("{}: dropped {repeated} simplices with repeated nodes", path.display());
    }
    if out_of_range > 0 {
        log::warn!("{}: dropped {out_of_range} simplices of unsupported size", path.display());
    }
}

/// Splits a line into tokens after stripping a `#` comment.
fn tokens(line: &str) -> impl Iterator<Item = &str> {
    let body = line.split('#').next().unwrap_or("");
    body.split(|c: char| c.is_whitespace() || c == ',').filter(|t| !t.is_empty())
}

/// Reads one hyperedge per line; node names are interned in first-seen
/// order. A final token `@<time>` attaches a timestamp, and then every
/// hyperedge must carry one.
pub fn read_edge_list(path: &Path) -> Result<SimplexDataset> {
    let text = read_text(path)?;
    let perr = |line: usize, message: String| Error::Parse {
        path: path.to_path_buf(),
        line,
        message,
    };
    let mut index: HashMap<String, usize> = HashMap::new();
    let mut names = Vec::new();
    let mut edges = Vec::new();
    let mut times = Vec::new();
    let mut timed: Option<bool> = None;
    for (ln, line) in text.lines().enumerate() {
        let mut toks: Vec<&str> = tokens(line).collect();
        if toks.is_empty() {
            continue;
        }
        let time = match toks.last().and_then(|t| t.strip_prefix('@')) {
            Some(t) => {
                let v: f64 = t.parse().map_err(|_| perr(ln + 1, format!("bad timestamp `{t}`")))?;
                toks.pop();
                Some(v)
            }
            None => None,
        };
        match timed {
            None => timed = Some(time.is_some()),
            Some(flag) if flag != time.is_some() => {
                return Err(perr(ln + 1, "timestamps must be given on every line or none".into()));
            }
            _ => {}
        }
        if toks.len() < 2 {
            return Err(perr(ln + 1, format!("hyperedge with {} node(s)", toks.len())));
        }
        let mut e = Vec::with_capacity(toks.len());
        for tok in toks {
            let next = names.len();
            let id = *index.entry(tok.to_string()).or_insert_with(|| {
                names.push(tok.to_string());
                next
            });
            if e.contains(&id) {
                return Err(perr(ln + 1, format!("node `{tok}` repeated")));
            }
            e.push(id);
        }
        edges.push(e);
        if let Some(t) = time {
            times.push(t);
        }
    }
    let ts = if timed == Some(true) { Some(times) } else { None };
    let (hypergraph, duplicates) = Hypergraph::build(names.len(), edges, ts)?;
    report_drops(path, duplicates, 0, 0);
    Ok(SimplexDataset {
        hypergraph,
        names,
        format: SourceFormat::EdgeList,
        content_hash: content_hash(&[&text]),
        dropped_duplicates: duplicates,
        dropped_repeated: 0,
        dropped_cardinality: 0,
    })
}

/// Reads either format; for `Triple`, `path` is the file prefix.
pub fn read_dataset(path: &Path, format: SourceFormat, max_t: usize) -> Result<SimplexDataset> {
    match format {
        SourceFormat::Triple => {
            let (a, b, c) = triple_paths(path);
            read_simplex_triple_files(&a, &b, &c, max_t)
        }
        SourceFormat::EdgeList => {
            let mut d = read_edge_list(path)?;
            let dropped = d.limit_cardinality(max_t);
            if dropped > 0 {
                log::warn!("{}: dropped {dropped} hyperedges larger than {max_t}", path.display());
            }
            Ok(d)
        }
    }
}

/// Writes one hyperedge per line using node names, with `@<time>` when timestamped.
pub fn write_edge_list(h: &Hypergraph, names: &[String], path: &Path) -> Result<()> {
    let mut out = String::new();
    for (i, e) in h.edges().iter().enumerate() {
        let line: Vec<&str> = e.iter().map(|&v| names[v].as_str()).collect();
        out.push_str(&line.join(" "));
        if let Some(ts) = h.timestamps() {
            write!(out, " @{}", ts[i]).expect("write to string");
        }
        out.push('\n');
    }
    fs::write(path, out).map_err(|e| Error::io(path, e))
}

/// Node names `0..n` as strings.
pub fn default_names(n: usize) -> Vec<String> {
    (0..n).map(|i| i.to_string()).collect()
}

/// Per-node labels aligned with a dataset's node indices.
#[derive(Debug, Clone, PartialEq)]
pub struct Labels {
    pub labels: Vec<Option<String>>,
    /// Nodes without a label, ascending.
    pub missing: Vec<usize>,
}

impl Labels {
    pub fn coverage(&self) -> f64 {
        if self.labels.is_empty() {
            return 1.0;
        }
        1.0 - self.missing.len() as f64 / self.labels.len() as f64
    }
}

/// Reads `node label` lines and aligns them with `names`.
pub fn read_labels(path: &Path, names: &[String]) -> Result<Labels> {
    let text = read_text(path)?;
    let index: HashMap<&str, usize> = names.iter().enumerate().map(|(i, s)| (s.as_str(), i)).collect();
    let mut labels: Vec<Option<String>> = vec![None; names.len()];
    for (ln, line) in text.lines().enumerate() {
        let toks: Vec<&str> = tokens(line).collect();
        if toks.is_empty() {
            continue;
        }
        let perr = |message: String| Error::Parse {
            path: path.to_path_buf(),
            line: ln + 1,
            message,
        };
        if toks.len() != 2 {
            return Err(perr(format!("expected `node label`, found {} tokens", toks.len())));
        }
        let &i = index
            .get(toks[0])
            .ok_or_else(|| perr(format!("unknown node `{}`", toks[0])))?;
        if labels[i].is_some() {
            return Err(perr(format!("node `{}` labelled twice", toks[0])));
        }
        labels[i] = Some(toks[1].to_string());
    }
    let missing: Vec<usize> = (0..labels.len()).filter(|&i| labels[i].is_none()).collect();
    if !missing.is_empty() {
        log::warn!("{}: {} nodes have no label", path.display(), missing.len());
    }
    Ok(Labels { labels, missing })
}

/// Writes `node label` lines for labelled nodes.
pub fn write_labels(names: &[String], labels: &[Option<String>], path: &Path) -> Result<()> {
    let mut out = String::new();
    for (name, l) in names.iter().zip(labels) {
        if let Some(l) = l {
            writeln!(out, "{name} {l}").expect("write to string");
        }
    }
    fs::write(path, out).map_err(|e| Error::io(path, e))
}
