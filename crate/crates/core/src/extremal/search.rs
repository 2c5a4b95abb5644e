//! Exhaustive search for `φ(t) = max λ(T)` over families with `|T| = t`.
//!
//! Connected families are generated by depth-first canonical augmentation:
//! every node is a canonical key, its children add one triangle touching an
//! existing vertex, and a per-size visited set keeps one representative per
//! isomorphism class. Disconnected families are covered by the partition
//! reduction `λ(A ⊔ B) = min(λ(A), λ(B))`.

use std::collections::{BTreeMap, HashSet};
use std::fs::{File, OpenOptions};
use std::io::{BufRead, BufReader, Write};
use std::path::{Path, PathBuf};
use std::sync::atomic::{AtomicBool, AtomicU64, Ordering};
use std::sync::Mutex;
use std::time::{Duration, Instant};

use rayon::prelude::*;
use serde::Serialize;

use super::canon::{canonical_key_local, key_to_family, key_to_string, parse_key, CanonKey, DEFAULT_LABELING_BUDGET};
use super::checks::counting_lambda_cap;
use crate::error::{Error, Result};
use crate::family::TriangleFamily;
use crate::spectra::lambda;

/// Hard cap on `--max-vertices`.
pub const MAX_SEARCH_VERTICES: usize = 13;

const TIE: f64 = 1e-9;

#[derive(Clone, Debug)]
pub struct SearchConfig {
    pub max_vertices: Option<usize>,
    pub budget: Option<Duration>,
    pub prune: bool,
    pub checkpoint: Option<PathBuf>,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig { max_vertices: None, budget: None, prune: true, checkpoint: None }
    }
}

impl SearchConfig {
    /// `2t+1` unless overridden; a connected family never needs more.
    pub fn vertex_limit(&self, t: usize) -> usize {
        self.max_vertices.unwrap_or(2 * t + 1)
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct SearchOutcome {
    pub t: usize,
    pub best_lambda: Option<f64>,
    #[serde(skip)]
    pub best_key: Option<CanonKey>,
    pub classes: u64,
    pub pruned: u64,
    pub exhaustive: bool,
    pub timed_out: bool,
}

impl SearchOutcome {
    pub fn witness(&self) -> Option<TriangleFamily> {
        self.best_key.as_deref().map(key_to_family)
    }
}

fn validate(t: usize, max_vertices: usize) -> Result<()> {
    if t == 0 {
        return Err(Error::InvalidArgument("t must be at least 1".into()));
    }
    if max_vertices < 3 {
        return Err(Error::InvalidArgument(format!("max_vertices {max_vertices} < 3")));
    }
    if max_vertices > MAX_SEARCH_VERTICES {
        return Err(Error::CanonicalBudget(format!(
            "max_vertices {max_vertices} exceeds the search cap of {MAX_SEARCH_VERTICES}; lower --max-vertices"
        )));
    }
    Ok(())
}

/// One representative per isomorphism class of connected `t`-triangle
/// families on at most `max_vertices` vertices, labelled `1..=v`, sorted by
/// canonical key.
pub fn enumerate_connected_families(t: usize, max_vertices: usize) -> Result<Vec<TriangleFamily>> {
    validate(t, max_vertices)?;
    let levels: Vec<Mutex<HashSet<CanonKey>>> = (0..=t).map(|_| Mutex::new(HashSet::new())).collect();
    let root: CanonKey = vec![[0, 1, 2]];
    levels[1].lock().unwrap().insert(root.clone());
    collect(&root, 3, t, max_vertices, &levels)?;
    let mut keys: Vec<CanonKey> = levels.into_iter().last().unwrap().into_inner().unwrap().into_iter().collect();
    keys.sort();
    Ok(keys.iter().map(|k| key_to_family(k)).collect())
}

fn collect(
    key: &CanonKey,
    v: usize,
    t: usize,
    max_vertices: usize,
    levels: &[Mutex<HashSet<CanonKey>>],
) -> Result<()> {
    if key.len() == t {
        return Ok(());
    }
    let fresh: Vec<(CanonKey, usize)> = children(key, v, max_vertices)
        .into_iter()
        .map(|(tris, w)| canonical_key_local(&tris, w, DEFAULT_LABELING_BUDGET).map(|k| (k, w)))
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .filter(|(k, _)| levels[k.len()].lock().unwrap().insert(k.clone()))
        .collect();
    fresh.par_iter().try_for_each(|(k, w)| collect(k, *w, t, max_vertices, levels))
}

/// Every family obtained by adding one triangle with at least one vertex in
/// `0..v`, new vertices taking labels `v` and `v+1`.
fn children(key: &CanonKey, v: usize, max_vertices: usize) -> Vec<(Vec<[u8; 3]>, usize)> {
    let present: HashSet<[u8; 3]> = key.iter().copied().collect();
    let mut out = Vec::new();
    let n = v as u8;
    let mut push = |tri: [u8; 3], w: usize| {
        if w <= max_vertices && !present.contains(&tri) {
            let mut tris = key.clone();
            tris.push(tri);
            out.push((tris, w));
        }
    };
    for a in 0..n {
        for b in a + 1..n {
            for c in b + 1..n {
                push([a, b, c], v);
            }
            push([a, b, n], v + 1);
        }
        push([a, n, n + 1], v + 2);
    }
    out
}

struct Shared {
    t: usize,
    max_vertices: usize,
    prune: bool,
    deadline: Option<Instant>,
    levels: Vec<Mutex<HashSet<CanonKey>>>,
    done: HashSet<CanonKey>,
    incumbent: AtomicU64,
    best: Mutex<Option<(f64, CanonKey)>>,
    classes: AtomicU64,
    pruned: AtomicU64,
    timed_out: AtomicBool,
    checkpoint: Option<Mutex<File>>,
}

impl Shared {
    fn incumbent(&self) -> f64 {
        f64::from_bits(self.incumbent.load(Ordering::Acquire))
    }

    // Counting lemma: any completion on >= w vertices has λ <= cap(w, t).
    fn hopeless(&self, w: usize) -> bool {
        self.prune && (counting_lambda_cap(w as u64, self.t as u64) as f64) < self.incumbent() - TIE
    }

    fn offer(&self, lambda: f64, key: &CanonKey) -> Result<()> {
        let mut best = self.best.lock().unwrap();
        let better = match best.as_ref() {
            None => true,
            Some((b, k)) => lambda > b + TIE || ((lambda - b).abs() <= TIE && key < k),
        };
        if better {
            // Nonnegative floats order the same as their bit patterns.
            self.incumbent.fetch_max(lambda.to_bits(), Ordering::AcqRel);
            *best = Some((lambda, key.clone()));
            self.record(&format!("# best {lambda:?} {}", key_to_string(key)))?;
        }
        Ok(())
    }

    fn record(&self, line: &str) -> Result<()> {
        if let Some(file) = &self.checkpoint {
            let mut f = file.lock().unwrap();
            writeln!(f, "{line}")?;
            f.flush()?;
        }
        Ok(())
    }

    fn expired(&self) -> bool {
        if self.timed_out.load(Ordering::Relaxed) {
            return true;
        }
        if self.deadline.is_some_and(|d| Instant::now() >= d) {
            self.timed_out.store(true, Ordering::Relaxed);
            return true;
        }
        false
    }

    fn visit(&self, key: &CanonKey, v: usize) -> Result<()> {
        if self.expired() {
            return Ok(());
        }
        if key.len() == self.t {
            self.classes.fetch_add(1, Ordering::Relaxed);
            let lambda = lambda(&key_to_family(key))?;
            return self.offer(lambda, key);
        }
        if self.done.contains(key) {
            return Ok(());
        }
        let mut fresh = Vec::new();
        for (tris, w) in children(key, v, self.max_vertices) {
            if self.hopeless(w) {
                self.pruned.fetch_add(1, Ordering::Relaxed);
                continue;
            }
            let k = canonical_key_local(&tris, w, DEFAULT_LABELING_BUDGET)?;
            if self.levels[k.len()].lock().unwrap().insert(k.clone()) {
                fresh.push((k, w));
            }
        }
        fresh.par_iter().try_for_each(|(k, w)| self.visit(k, *w))?;
        if !self.expired() {
            self.record(&key_to_string(key))?;
        }
        Ok(())
    }
}

fn checkpoint_header(t: usize, max_vertices: usize, prune: bool) -> String {
    format!("# trispec phi checkpoint t={t} max_vertices={max_vertices} prune={prune}")
}

struct Resume {
    done: HashSet<CanonKey>,
    best: Option<(f64, CanonKey)>,
}

fn read_checkpoint(path: &Path, header: &str) -> Result<Option<Resume>> {
    let file = match File::open(path) {
        Ok(f) => f,
        Err(e) if e.kind() == std::io::ErrorKind::NotFound => return Ok(None),
        Err(e) => return Err(e.into()),
    };
    let mut lines = BufReader::new(file).lines();
    match lines.next().transpose()? {
        None => return Ok(None),
        Some(first) if first.trim() == header => {}
        Some(first) => {
            return Err(Error::InvalidArgument(format!(
                "checkpoint {} was written for `{}`, not `{header}`",
                path.display(),
                first.trim()
            )))
        }
    }
    let mut resume = Resume { done: HashSet::new(), best: None };
    for line in lines {
        let line = line?;
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        if let Some(rest) = line.strip_prefix("# best ") {
            let (value, key) = rest
                .split_once(' ')
                .ok_or_else(|| Error::InvalidArgument(format!("malformed checkpoint line `{line}`")))?;
            let value: f64 = value
                .parse()
                .map_err(|_| Error::InvalidArgument(format!("malformed checkpoint line `{line}`")))?;
            resume.best = Some((value, parse_key(key)?));
        } else if !line.starts_with('#') {
            resume.done.insert(parse_key(line)?);
        }
    }
    Ok(Some(resume))
}

/// Maximum of `λ` over connected families with exactly `t` triangles.
///
/// `floor` seeds the incumbent: with pruning on, branches that cannot beat it
/// are skipped, so the result is only the true connected maximum when that
/// maximum is at least `floor`.
pub fn search_connected(t: usize, config: &SearchConfig, floor: Option<f64>) -> Result<SearchOutcome> {
    let max_vertices = config.vertex_limit(t);
    validate(t, max_vertices)?;
    let header = checkpoint_header(t, max_vertices, config.prune);

    let resume = match &config.checkpoint {
        Some(path) => read_checkpoint(path, &header)?,
        None => None,
    };
    let checkpoint = match &config.checkpoint {
        Some(path) => {
            let mut f = OpenOptions::new().create(true).append(true).open(path)?;
            if resume.is_none() {
                f.set_len(0)?;
                writeln!(f, "{header}")?;
                f.flush()?;
            }
            Some(Mutex::new(f))
        }
        None => None,
    };
    let (done, restored) = match resume {
        Some(r) => (r.done, r.best),
        None => (HashSet::new(), None),
    };

    let start = floor.unwrap_or(0.0).max(restored.as_ref().map_or(0.0, |b| b.0));
    let shared = Shared {
        t,
        max_vertices,
        prune: config.prune,
        deadline: config.budget.map(|b| Instant::now() + b),
        levels: (0..=t).map(|_| Mutex::new(HashSet::new())).collect(),
        done,
        incumbent: AtomicU64::new(start.to_bits()),
        best: Mutex::new(restored),
        classes: AtomicU64::new(0),
        pruned: AtomicU64::new(0),
        timed_out: AtomicBool::new(false),
        checkpoint,
    };

    let root: CanonKey = vec![[0, 1, 2]];
    shared.levels[1].lock().unwrap().insert(root.clone());
    shared.visit(&root, 3)?;

    let timed_out = shared.timed_out.load(Ordering::Relaxed);
    let best = shared.best.into_inner().unwrap();
    // Families on more than max_vertices vertices are skipped; that is only
    // harmless when the counting bound for them cannot beat what was found.
    let covers_all = max_vertices > 2 * t
        || best
            .as_ref()
            .is_some_and(|(b, _)| (counting_lambda_cap(max_vertices as u64 + 1, t as u64) as f64) <= b + TIE);
    Ok(SearchOutcome {
        t,
        best_lambda: best.as_ref().map(|b| b.0),
        best_key: best.map(|b| b.1),
        classes: shared.classes.load(Ordering::Relaxed),
        pruned: shared.pruned.load(Ordering::Relaxed),
        exhaustive: !timed_out && covers_all,
        timed_out,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct PhiEntry {
    pub t: usize,
    pub phi: f64,
    pub witness: TriangleFamily,
    pub exhaustive: bool,
    /// Part sizes of the witness, one per connected component.
    pub partition: Vec<usize>,
    pub classes: u64,
    pub pruned: u64,
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct PhiTable {
    pub entries: BTreeMap<usize, PhiEntry>,
}

impl PhiTable {
    pub fn insert(&mut self, entry: PhiEntry) {
        self.entries.insert(entry.t, entry);
    }

    pub fn get(&self, t: usize) -> Option<&PhiEntry> {
        self.entries.get(&t)
    }

    /// `Λ(t) = max_{s <= t} φ(s)`, defined while every `s <= t` is present.
    pub fn running_max(&self) -> Vec<(usize, f64)> {
        let mut out = Vec::new();
        let mut acc = f64::NEG_INFINITY;
        for (expected, (&t, e)) in (1..).zip(&self.entries) {
            if t != expected {
                break;
            }
            acc = acc.max(e.phi);
            out.push((t, acc));
        }
        out
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.entries.values().collect::<Vec<_>>()).expect("serializable")
    }

    pub fn to_csv(&self) -> Result<String> {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(["t", "phi", "exhaustive", "partition", "witness"]).map_err(csv_err)?;
        for e in self.entries.values() {
            let partition: Vec<String> = e.partition.iter().map(|p| p.to_string()).collect();
            let witness: Vec<String> = e.witness.iter().map(|t| {
                let [a, b, c] = t.vertices();
                format!("{a} {b} {c}")
            }).collect();
            w.write_record([
                e.t.to_string(),
                format!("{:?}", e.phi),
                e.exhaustive.to_string(),
                partition.join("+"),
                witness.join(";"),
            ])
            .map_err(csv_err)?;
        }
        let bytes = w.into_inner().map_err(|e| Error::Internal(e.to_string()))?;
        Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
    }
}

fn csv_err(e: csv::Error) -> Error {
    Error::Internal(format!("csv: {e}"))
}

/// Integer partitions of `t` with parts in nonincreasing order.
pub fn partitions(t: usize) -> Vec<Vec<usize>> {
    fn go(rest: usize, max: usize, prefix: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if rest == 0 {
            out.push(prefix.clone());
            return;
        }
        for p in (1..=rest.min(max)).rev() {
            prefix.push(p);
            go(rest - p, p, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    go(t, t, &mut Vec::new(), &mut out);
    out
}

/// `φ(t)`, with the connected maxima for every `s < t` searched first.
///
/// The checkpoint and time budget apply to the final `s = t` search only.
pub fn phi_exact(t: usize, config: &SearchConfig) -> Result<PhiEntry> {
    let table = phi_table(t, config)?;
    Ok(table.entries.into_values().last().expect("t >= 1"))
}

/// `φ(1..=t)`.
pub fn phi_table(t: usize, config: &SearchConfig) -> Result<PhiTable> {
    if t == 0 {
        return Err(Error::InvalidArgument("t must be at least 1".into()));
    }
    if let Some(m) = config.max_vertices {
        validate(t, m)?;
    }
    let mut connected: Vec<Option<(f64, CanonKey, bool)>> = vec![None];
    let mut table = PhiTable::default();
    for s in 1..=t {
        let proper = best_partition(s, &connected, true);
        let last = s == t;
        let cfg = SearchConfig {
            max_vertices: config.max_vertices.map(|m| m.min(2 * s + 1)),
            budget: if last { config.budget } else { None },
            prune: config.prune,
            checkpoint: if last { config.checkpoint.clone() } else { None },
        };
        // Smaller budgets feed later partitions, so they need the exact
        // connected maximum and get no partition floor.
        let floor = if last { proper.as_ref().map(|p| p.0) } else { None };
        let outcome = search_connected(s, &cfg, floor)?;
        connected.push(outcome.best_key.clone().map(|k| (outcome.best_lambda.unwrap(), k, outcome.exhaustive)));
        let (phi, parts) = best_partition(s, &connected, false)
            .ok_or_else(|| Error::Internal(format!("no family found for t = {s}")))?;
        let mut witness = TriangleFamily::empty();
        for &p in &parts {
            let (_, key, _) = connected[p].as_ref().expect("part searched");
            witness = witness.disjoint_union(&key_to_family(key));
        }
        let exhaustive = (1..=s).all(|p| connected[p].as_ref().is_some_and(|c| c.2));
        table.insert(PhiEntry {
            t: s,
            phi,
            witness,
            exhaustive,
            partition: parts,
            classes: outcome.classes,
            pruned: outcome.pruned,
        });
    }
    Ok(table)
}

// Best min-over-parts value; ties prefer fewer parts.
fn best_partition(
    s: usize,
    connected: &[Option<(f64, CanonKey, bool)>],
    proper_only: bool,
) -> Option<(f64, Vec<usize>)> {
    let mut best: Option<(f64, Vec<usize>)> = None;
    for parts in partitions(s) {
        if proper_only && parts.len() == 1 {
            continue;
        }
        let Some(value) = parts
            .iter()
            .map(|&p| connected.get(p).and_then(|c| c.as_ref()).map(|c| c.0))
            .try_fold(f64::INFINITY, |acc, v| v.map(|v| acc.min(v)))
        else {
            continue;
        };
        if best.as_ref().is_none_or(|(b, _)| value > b + TIE) {
            best = Some((value, parts));
        }
    }
    best
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn partitions_of_five() {
        let p = partitions(5);
        assert_eq!(p.len(), 7);
        assert_eq!(p[0], vec![5]);
        assert_eq!(p[6], vec![1, 1, 1, 1, 1]);
    }

    #[test]
    fn small_class_counts() {
        assert_eq!(enumerate_connected_families(1, 3).unwrap().len(), 1);
        assert_eq!(enumerate_connected_families(2, 5).unwrap().len(), 2);
        // Sharing an edge needs only 4 vertices.
        assert_eq!(enumerate_connected_families(2, 4).unwrap().len(), 1);
    }

    #[test]
    fn phi_small() {
        let table = phi_table(4, &SearchConfig::default()).unwrap();
        let phis: Vec<f64> = table.entries.values().map(|e| e.phi).collect();
        for (got, want) in phis.iter().zip([3.0, 3.0, 3.0, 4.0]) {
            assert!((got - want).abs() < 1e-8, "{phis:?}");
        }
        assert!(table.entries.values().all(|e| e.exhaustive));
        assert_eq!(table.get(4).unwrap().witness.len(), 4);
        // Two triangles through one vertex already reach 3.
        assert_eq!(table.get(2).unwrap().partition, vec![2]);
    }

    #[test]
    fn rejects_oversized_vertex_cap() {
        let cfg = SearchConfig { max_vertices: Some(14), ..Default::default() };
        assert!(matches!(search_connected(6, &cfg, None), Err(Error::CanonicalBudget(_))));
    }
}
