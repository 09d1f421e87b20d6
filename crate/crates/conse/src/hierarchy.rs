//! Undirected is-a hierarchy over labels with hop-distance queries.
//!
//! Edges are read as `parent_id<SPACE>child_id` lines. Hops are counted on
//! the undirected graph, so ancestors and descendants both contribute.
//! Inputs with multiple parents are accepted; repeated edges collapse to
//! one.

use std::collections::{BTreeMap, BTreeSet, HashMap, VecDeque};
use std::fs::File;
use std::io::{BufRead, BufReader};
use std::path::Path;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::LabelId;

#[derive(Debug, Error)]
pub enum HierarchyError {
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
    #[error("line {line}: malformed edge {text:?}")]
    MalformedEdge { line: usize, text: String },
    #[error("line {line}: self-loop on label {0}", .id)]
    SelfLoop { line: usize, id: LabelId },
    #[error("unknown node {0}")]
    UnknownNode(LabelId),
    #[error("train label set is empty")]
    EmptyTrainSet,
    #[error("max_hops must be at least 1")]
    InvalidMaxHops,
    #[error("k must be at least 1")]
    InvalidK,
    #[error("universe of size {universe} is smaller than k = {k}")]
    UniverseTooSmall { universe: usize, k: usize },
    #[error("true label {0} is not in the universe")]
    TrueLabelNotInUniverse(LabelId),
}

/// Undirected graph over label ids.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct LabelHierarchy {
    adjacency: BTreeMap<LabelId, BTreeSet<LabelId>>,
}

/// Labels absent from the hierarchy or outside its main component.
#[derive(Debug, Clone, Default, Serialize, Deserialize)]
pub struct ConnectivityReport {
    /// Labels with no node in the hierarchy at all.
    pub missing: Vec<LabelId>,
    /// Labels present but not connected to the component holding the most
    /// labels.
    pub disconnected: Vec<LabelId>,
}

impl ConnectivityReport {
    pub fn is_fully_connected(&self) -> bool {
        self.missing.is_empty() && self.disconnected.is_empty()
    }
}

impl LabelHierarchy {
    pub fn from_reader<R: BufRead>(reader: R) -> Result<Self, HierarchyError> {
        let mut adjacency: BTreeMap<LabelId, BTreeSet<LabelId>> = BTreeMap::new();
        for (idx, line) in reader.lines().enumerate() {
            let line_no = idx + 1;
            let line = line?;
            let line = line.trim_end_matches('\r');
            if line.is_empty() {
                continue;
            }
            let (parent_text, child_text) =
                line.split_once(' ')
                    .ok_or_else(|| HierarchyError::MalformedEdge {
                        line: line_no,
                        text: line.to_string(),
                    })?;
            let parent: LabelId =
                parent_text
                    .parse()
                    .map_err(|_| HierarchyError::MalformedEdge {
                        line: line_no,
                        text: line.to_string(),
                    })?;
            let child: LabelId = child_text
                .parse()
                .map_err(|_| HierarchyError::MalformedEdge {
                    line: line_no,
                    text: line.to_string(),
                })?;
            if parent == child {
                return Err(HierarchyError::SelfLoop {
                    line: line_no,
                    id: parent,
                });
            }
            adjacency.entry(parent).or_default().insert(child);
            adjacency.entry(child).or_default().insert(parent);
        }
        Ok(LabelHierarchy { adjacency })
    }

    pub fn from_path<P: AsRef<Path>>(path: P) -> Result<Self, HierarchyError> {
        Self::from_reader(BufReader::new(File::open(path)?))
    }

    /// Build directly from undirected edge pairs.
    pub fn from_edges<I: IntoIterator<Item = (LabelId, LabelId)>>(
        edges: I,
    ) -> Result<Self, HierarchyError> {
        let mut adjacency: BTreeMap<LabelId, BTreeSet<LabelId>> = BTreeMap::new();
        for (line, (a, b)) in edges.into_iter().enumerate() {
            if a == b {
                return Err(HierarchyError::SelfLoop {
                    line: line + 1,
                    id: a,
                });
            }
            adjacency.entry(a).or_default().insert(b);
            adjacency.entry(b).or_default().insert(a);
        }
        Ok(LabelHierarchy { adjacency })
    }

    pub fn contains(&self, id: LabelId) -> bool {
        self.adjacency.contains_key(&id)
    }

    pub fn node_count(&self) -> usize {
        self.adjacency.len()
    }

    pub fn nodes(&self) -> impl Iterator<Item = LabelId> + '_ {
        self.adjacency.keys().copied()
    }

    pub fn edge_count(&self) -> usize {
        self.adjacency.values().map(BTreeSet::len).sum::<usize>() / 2
    }

    /// All shortest distances from `start`, including `start` at 0.
    fn bfs_distances(&self, start: LabelId) -> HashMap<LabelId, u32> {
        let mut dist = HashMap::new();
        dist.insert(start, 0);
        let mut queue = VecDeque::new();
        queue.push_back(start);
        while let Some(node) = queue.pop_front() {
            let d = dist[&node];
            if let Some(neighbors) = self.adjacency.get(&node) {
                for &next in neighbors {
                    if !dist.contains_key(&next) {
                        dist.insert(next, d + 1);
                        queue.push_back(next);
                    }
                }
            }
        }
        dist
    }

    /// Shortest undirected path length, or `None` when unreachable.
    pub fn hop_distance(&self, a: LabelId, b: LabelId) -> Result<Option<u32>, HierarchyError> {
        if !self.contains(a) {
            return Err(HierarchyError::UnknownNode(a));
        }
        if !self.contains(b) {
            return Err(HierarchyError::UnknownNode(b));
        }
        if a == b {
            return Ok(Some(0));
        }
        // Bounded BFS from a, stopping as soon as b is labeled.
        let mut dist = HashMap::new();
        dist.insert(a, 0u32);
        let mut queue = VecDeque::new();
        queue.push_back(a);
        while let Some(node) = queue.pop_front() {
            let d = dist[&node];
            if let Some(neighbors) = self.adjacency.get(&node) {
                for &next in neighbors {
                    if !dist.contains_key(&next) {
                        if next == b {
                            return Ok(Some(d + 1));
                        }
                        dist.insert(next, d + 1);
                        queue.push_back(next);
                    }
                }
            }
        }
        Ok(None)
    }

    /// Test labels within `max_hops` of any train label. Labels absent from
    /// the hierarchy are unreachable and never selected.
    pub fn hop_candidate_set(
        &self,
        train_labels: &BTreeSet<LabelId>,
        test_labels: &BTreeSet<LabelId>,
        max_hops: u32,
    ) -> Result<BTreeSet<LabelId>, HierarchyError> {
        if train_labels.is_empty() {
            return Err(HierarchyError::EmptyTrainSet);
        }
        if max_hops == 0 {
            return Err(HierarchyError::InvalidMaxHops);
        }
        // Multi-source BFS from every train label present in the graph.
        let mut dist: HashMap<LabelId, u32> = HashMap::new();
        let mut queue = VecDeque::new();
        for &t in train_labels {
            if self.contains(t) {
                dist.insert(t, 0);
                queue.push_back(t);
            }
        }
        while let Some(node) = queue.pop_front() {
            let d = dist[&node];
            if d == max_hops {
                continue;
            }
            if let Some(neighbors) = self.adjacency.get(&node) {
                for &next in neighbors {
                    if !dist.contains_key(&next) {
                        dist.insert(next, d + 1);
                        queue.push_back(next);
                    }
                }
            }
        }
        Ok(test_labels
            .iter()
            .copied()
            .filter(|id| dist.contains_key(id))
            .collect())
    }

    /// Universe labels closest to `true_label`, expanded radius by radius
    /// until at least `k` labels accumulate; the whole boundary radius is
    /// kept, so the result may exceed `k`. Unreachable universe labels form
    /// one final tier and are only included when the expansion would
    /// otherwise fall short of `k`.
    pub fn relevance_set(
        &self,
        true_label: LabelId,
        k: usize,
        universe: &BTreeSet<LabelId>,
    ) -> Result<BTreeSet<LabelId>, HierarchyError> {
        if k == 0 {
            return Err(HierarchyError::InvalidK);
        }
        if universe.len() < k {
            return Err(HierarchyError::UniverseTooSmall {
                universe: universe.len(),
                k,
            });
        }
        if !universe.contains(&true_label) {
            return Err(HierarchyError::TrueLabelNotInUniverse(true_label));
        }
        let dist = self.bfs_distances(true_label);
        let mut tiers: BTreeMap<Option<u32>, Vec<LabelId>> = BTreeMap::new();
        for &id in universe {
            // None sorts first in BTreeMap, so reachable tiers use Some(d)
            // and the unreachable tier is keyed by None handled last below.
            tiers.entry(dist.get(&id).copied()).or_default().push(id);
        }
        let unreachable = tiers.remove(&None).unwrap_or_default();
        let mut selected = BTreeSet::new();
        for (_, tier) in tiers {
            if selected.len() >= k {
                break;
            }
            selected.extend(tier);
        }
        if selected.len() < k {
            selected.extend(unreachable);
        }
        Ok(selected)
    }

    /// Report labels missing from the graph or outside the component that
    /// holds the most labels.
    pub fn connectivity(&self, labels: &[LabelId]) -> ConnectivityReport {
        let mut missing = Vec::new();
        let mut present = Vec::new();
        for &id in labels {
            if self.contains(id) {
                present.push(id);
            } else {
                missing.push(id);
            }
        }
        let mut component_of: HashMap<LabelId, usize> = HashMap::new();
        let mut component_sizes: Vec<usize> = Vec::new();
        for &id in &present {
            if component_of.contains_key(&id) {
                continue;
            }
            let comp = component_sizes.len();
            let reach = self.bfs_distances(id);
            let mut size = 0;
            for &node in reach.keys() {
                component_of.insert(node, comp);
            }
            for &p in &present {
                if reach.contains_key(&p) {
                    size += 1;
                }
            }
            component_sizes.push(size);
        }
        let main = component_sizes
            .iter()
            .enumerate()
            .max_by_key(|(_, &s)| s)
            .map(|(i, _)| i);
        let disconnected = present
            .into_iter()
            .filter(|id| main.is_some_and(|m| component_of[id] != m))
            .collect();
        ConnectivityReport {
            missing,
            disconnected,
        }
    }
}
