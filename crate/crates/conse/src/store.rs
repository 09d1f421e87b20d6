//! Word-embedding table, label catalog, and per-label mean embeddings.
//!
//! The embedding text format is line-oriented UTF-8: the first line holds
//! `<count> <dim>`, every following line holds a term and `dim` decimal
//! components, single-space separated. Vectors are renormalized to unit
//! L2 norm on load; the magnitudes in the file are discarded.
//!
//! The label catalog joins a TSV label map (`label_id<TAB>syn1,syn2,...`)
//! with a split assignment file (`label_id<SPACE>TRAIN|TEST`). Labels whose
//! synonyms are all missing from the embedding vocabulary are dropped by
//! [`LabelCatalog::resolve`] and itemized in an [`ExclusionReport`].

use std::collections::HashMap;
use std::fs::File;
use std::io::{BufRead, BufReader, Write};
use std::path::Path;

use indexmap::IndexMap;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::vecmath::l2_norm;
use crate::{LabelId, Split};

/// Maximum tolerated deviation of a stored vector norm from 1.0.
pub const UNIT_NORM_TOLERANCE: f64 = 1e-6;

#[derive(Debug, Error)]
pub enum StoreError {
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
    #[error("line {line}: expected header '<count> <dim>', got {text:?}")]
    InvalidHeader { line: usize, text: String },
    #[error("line {line}: expected {expected} components, found {found}")]
    DimensionMismatch {
        line: usize,
        expected: usize,
        found: usize,
    },
    #[error("line {line}: cannot parse {token:?} as a number")]
    InvalidNumber { line: usize, token: String },
    #[error("line {line}: non-finite component in vector for {term:?}")]
    NonFinite { line: usize, term: String },
    #[error("line {line}: zero vector for {term:?} cannot be normalized")]
    ZeroVector { line: usize, term: String },
    #[error("line {line}: duplicate term {term:?}")]
    DuplicateTerm { line: usize, term: String },
    #[error("header declares {declared} entries but body has {found}")]
    CountMismatch { declared: usize, found: usize },
    #[error("line {line}: empty term")]
    EmptyTerm { line: usize },
    #[error("line {line}: malformed record {text:?}")]
    MalformedRecord { line: usize, text: String },
    #[error("duplicate label id {0}")]
    DuplicateLabel(LabelId),
    #[error("label {0} has an empty synonym list")]
    EmptySynonyms(LabelId),
    #[error("split file references unknown label id {0}")]
    UnknownSplitLabel(LabelId),
    #[error("label {0} is assigned a split more than once")]
    DuplicateSplitAssignment(LabelId),
    #[error("label {0} has no split assignment")]
    MissingSplit(LabelId),
    #[error("label {0} is not resolved in the catalog")]
    UnresolvedLabel(LabelId),
}

/// Immutable map from term to unit-norm embedding vector.
#[derive(Debug, Clone, PartialEq)]
pub struct EmbeddingTable {
    dim: usize,
    entries: IndexMap<String, Vec<f64>>,
}

impl EmbeddingTable {
    /// Parse the embedding text format, renormalizing every vector.
    pub fn from_reader<R: BufRead>(reader: R) -> Result<Self, StoreError> {
        let mut lines = reader.lines();
        let header = match lines.next() {
            Some(line) => line?,
            None => {
                return Err(StoreError::InvalidHeader {
                    line: 1,
                    text: String::new(),
                })
            }
        };
        let header = header.trim_end_matches('\r');
        let mut parts = header.split(' ');
        let (count, dim) = match (parts.next(), parts.next(), parts.next()) {
            (Some(c), Some(d), None) => match (c.parse::<usize>(), d.parse::<usize>()) {
                (Ok(c), Ok(d)) if d > 0 => (c, d),
                _ => {
                    return Err(StoreError::InvalidHeader {
                        line: 1,
                        text: header.to_string(),
                    })
                }
            },
            _ => {
                return Err(StoreError::InvalidHeader {
                    line: 1,
                    text: header.to_string(),
                })
            }
        };

        let mut entries: IndexMap<String, Vec<f64>> = IndexMap::with_capacity(count);
        for (idx, line) in lines.enumerate() {
            let line_no = idx + 2;
            let line = line?;
            let line = line.trim_end_matches('\r');
            let mut tokens = line.split(' ');
            let term = tokens.next().unwrap_or("");
            if term.is_empty() {
                return Err(StoreError::EmptyTerm { line: line_no });
            }
            let mut vector = Vec::with_capacity(dim);
            for token in tokens {
                let value: f64 = token.parse().map_err(|_| StoreError::InvalidNumber {
                    line: line_no,
                    token: token.to_string(),
                })?;
                if !value.is_finite() {
                    return Err(StoreError::NonFinite {
                        line: line_no,
                        term: term.to_string(),
                    });
                }
                vector.push(value);
            }
            if vector.len() != dim {
                return Err(StoreError::DimensionMismatch {
                    line: line_no,
                    expected: dim,
                    found: vector.len(),
                });
            }
            let norm = l2_norm(&vector);
            if norm == 0.0 {
                return Err(StoreError::ZeroVector {
                    line: line_no,
                    term: term.to_string(),
                });
            }
            for v in &mut vector {
                *v /= norm;
            }
            if entries.insert(term.to_string(), vector).is_some() {
                return Err(StoreError::DuplicateTerm {
                    line: line_no,
                    term: term.to_string(),
                });
            }
        }
        if entries.len() != count {
            return Err(StoreError::CountMismatch {
                declared: count,
                found: entries.len(),
            });
        }
        Ok(EmbeddingTable { dim, entries })
    }

    pub fn from_path<P: AsRef<Path>>(path: P) -> Result<Self, StoreError> {
        Self::from_reader(BufReader::new(File::open(path)?))
    }

    pub fn dimension(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Unit vector for `term`, or `None` when the term is out of vocabulary.
    pub fn get(&self, term: &str) -> Option<&[f64]> {
        self.entries.get(term).map(Vec::as_slice)
    }

    pub fn contains(&self, term: &str) -> bool {
        self.entries.contains_key(term)
    }

    /// Entries in file order.
    pub fn iter(&self) -> impl Iterator<Item = (&str, &[f64])> {
        self.entries.iter().map(|(t, v)| (t.as_str(), v.as_slice()))
    }

    /// Re-emit the table in the embedding text format.
    pub fn write_to<W: Write>(&self, mut writer: W) -> std::io::Result<()> {
        writeln!(writer, "{} {}", self.entries.len(), self.dim)?;
        for (term, vector) in &self.entries {
            write!(writer, "{term}")?;
            for v in vector {
                write!(writer, " {v}")?;
            }
            writeln!(writer)?;
        }
        Ok(())
    }
}

/// One catalog row: a label, its synonym terms, and its split.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CatalogEntry {
    pub label_id: LabelId,
    pub synonyms: Vec<String>,
    pub split: Split,
}

/// Labels with synonym lists and a disjoint train/test partition,
/// kept in label-map file order.
#[derive(Debug, Clone, PartialEq)]
pub struct LabelCatalog {
    entries: Vec<CatalogEntry>,
    index: HashMap<LabelId, usize>,
}

/// A label dropped during resolution because every synonym was out of
/// vocabulary.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExcludedLabel {
    pub label_id: LabelId,
    pub split: Split,
    pub synonyms: Vec<String>,
}

/// Machine-readable record of labels dropped by [`LabelCatalog::resolve`].
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct ExclusionReport {
    pub excluded: Vec<ExcludedLabel>,
}

impl ExclusionReport {
    pub fn is_empty(&self) -> bool {
        self.excluded.is_empty()
    }

    pub fn contains(&self, id: LabelId) -> bool {
        self.excluded.iter().any(|e| e.label_id == id)
    }
}

impl LabelCatalog {
    /// Parse the label map and split assignment.
    pub fn load<M: BufRead, S: BufRead>(map: M, splits: S) -> Result<Self, StoreError> {
        let mut entries: Vec<(LabelId, Vec<String>)> = Vec::new();
        let mut index: HashMap<LabelId, usize> = HashMap::new();
        for (idx, line) in map.lines().enumerate() {
            let line_no = idx + 1;
            let line = line?;
            let line = line.trim_end_matches('\r');
            if line.is_empty() {
                continue;
            }
            let (id_text, syn_text) =
                line.split_once('\t')
                    .ok_or_else(|| StoreError::MalformedRecord {
                        line: line_no,
                        text: line.to_string(),
                    })?;
            let label_id: LabelId =
                id_text
                    .parse()
                    .map_err(|_| StoreError::MalformedRecord {
                        line: line_no,
                        text: line.to_string(),
                    })?;
            let synonyms: Vec<String> = syn_text
                .split(',')
                .map(str::to_string)
                .filter(|s| !s.is_empty())
                .collect();
            if synonyms.is_empty() {
                return Err(StoreError::EmptySynonyms(label_id));
            }
            if index.contains_key(&label_id) {
                return Err(StoreError::DuplicateLabel(label_id));
            }
            index.insert(label_id, entries.len());
            entries.push((label_id, synonyms));
        }

        let mut assigned: HashMap<LabelId, Split> = HashMap::new();
        for (idx, line) in splits.lines().enumerate() {
            let line_no = idx + 1;
            let line = line?;
            let line = line.trim_end_matches('\r');
            if line.is_empty() {
                continue;
            }
            let (id_text, split_text) =
                line.split_once(' ')
                    .ok_or_else(|| StoreError::MalformedRecord {
                        line: line_no,
                        text: line.to_string(),
                    })?;
            let label_id: LabelId =
                id_text
                    .parse()
                    .map_err(|_| StoreError::MalformedRecord {
                        line: line_no,
                        text: line.to_string(),
                    })?;
            let split = match split_text {
                "TRAIN" => Split::Train,
                "TEST" => Split::Test,
                _ => {
                    return Err(StoreError::MalformedRecord {
                        line: line_no,
                        text: line.to_string(),
                    })
                }
            };
            if !index.contains_key(&label_id) {
                return Err(StoreError::UnknownSplitLabel(label_id));
            }
            if assigned.insert(label_id, split).is_some() {
                return Err(StoreError::DuplicateSplitAssignment(label_id));
            }
        }

        let entries: Vec<CatalogEntry> = entries
            .into_iter()
            .map(|(label_id, synonyms)| {
                let split = assigned
                    .get(&label_id)
                    .copied()
                    .ok_or(StoreError::MissingSplit(label_id))?;
                Ok(CatalogEntry {
                    label_id,
                    synonyms,
                    split,
                })
            })
            .collect::<Result<_, StoreError>>()?;
        let index = entries
            .iter()
            .enumerate()
            .map(|(i, e)| (e.label_id, i))
            .collect();
        Ok(LabelCatalog { entries, index })
    }

    pub fn from_paths<P: AsRef<Path>, Q: AsRef<Path>>(
        map: P,
        splits: Q,
    ) -> Result<Self, StoreError> {
        Self::load(
            BufReader::new(File::open(map)?),
            BufReader::new(File::open(splits)?),
        )
    }

    /// Drop labels with no in-vocabulary synonym and report them.
    pub fn resolve(&self, table: &EmbeddingTable) -> (LabelCatalog, ExclusionReport) {
        let mut retained = Vec::with_capacity(self.entries.len());
        let mut excluded = Vec::new();
        for entry in &self.entries {
            if entry.synonyms.iter().any(|s| table.contains(s)) {
                retained.push(entry.clone());
            } else {
                log::warn!(
                    "label {} excluded: no synonym in embedding vocabulary",
                    entry.label_id
                );
                excluded.push(ExcludedLabel {
                    label_id: entry.label_id,
                    split: entry.split,
                    synonyms: entry.synonyms.clone(),
                });
            }
        }
        let index = retained
            .iter()
            .enumerate()
            .map(|(i, e)| (e.label_id, i))
            .collect();
        (
            LabelCatalog {
                entries: retained,
                index,
            },
            ExclusionReport { excluded },
        )
    }

    pub fn get(&self, id: LabelId) -> Option<&CatalogEntry> {
        self.index.get(&id).map(|&i| &self.entries[i])
    }

    pub fn contains(&self, id: LabelId) -> bool {
        self.index.contains_key(&id)
    }

    /// Entries in file order.
    pub fn entries(&self) -> &[CatalogEntry] {
        &self.entries
    }

    /// Label ids of one split, in file order.
    pub fn ids_for(&self, split: Split) -> Vec<LabelId> {
        self.entries
            .iter()
            .filter(|e| e.split == split)
            .map(|e| e.label_id)
            .collect()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}

/// Mean of a label's in-vocabulary synonym vectors plus the individual
/// word vectors used for ranking.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LabelEmbedding {
    pub label_id: LabelId,
    pub mean_vector: Vec<f64>,
    pub word_vectors: Vec<Vec<f64>>,
}

/// Mean over in-vocabulary synonyms only; out-of-vocabulary synonyms are
/// skipped. The mean is intentionally not renormalized: its norm carries
/// the confidence signal and cosine ranking is scale-invariant anyway.
pub fn label_embedding(
    catalog: &LabelCatalog,
    table: &EmbeddingTable,
    label_id: LabelId,
) -> Result<LabelEmbedding, StoreError> {
    let entry = catalog
        .get(label_id)
        .ok_or(StoreError::UnresolvedLabel(label_id))?;
    // Averaging in sorted-term order keeps the mean bit-identical under
    // synonym permutations.
    let mut in_vocab: Vec<&str> = entry
        .synonyms
        .iter()
        .map(String::as_str)
        .filter(|s| table.contains(s))
        .collect();
    if in_vocab.is_empty() {
        return Err(StoreError::UnresolvedLabel(label_id));
    }
    in_vocab.sort_unstable();
    let dim = table.dimension();
    let mut mean = vec![0.0; dim];
    for term in &in_vocab {
        let v = table.get(term).expect("term checked in vocabulary");
        for (m, x) in mean.iter_mut().zip(v) {
            *m += x;
        }
    }
    let count = in_vocab.len() as f64;
    for m in &mut mean {
        *m /= count;
    }
    let word_vectors = entry
        .synonyms
        .iter()
        .filter_map(|s| table.get(s))
        .map(<[f64]>::to_vec)
        .collect();
    Ok(LabelEmbedding {
        label_id,
        mean_vector: mean,
        word_vectors,
    })
}

/// Label embeddings for every resolved label in a catalog.
#[derive(Debug, Clone)]
pub struct LabelEmbeddingSet {
    dim: usize,
    by_id: std::collections::BTreeMap<LabelId, LabelEmbedding>,
}

impl LabelEmbeddingSet {
    /// Build embeddings for all entries of a resolved catalog.
    pub fn build(catalog: &LabelCatalog, table: &EmbeddingTable) -> Result<Self, StoreError> {
        let mut by_id = std::collections::BTreeMap::new();
        for entry in catalog.entries() {
            let emb = label_embedding(catalog, table, entry.label_id)?;
            by_id.insert(entry.label_id, emb);
        }
        Ok(LabelEmbeddingSet {
            dim: table.dimension(),
            by_id,
        })
    }

    pub fn get(&self, id: LabelId) -> Option<&LabelEmbedding> {
        self.by_id.get(&id)
    }

    pub fn dimension(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.by_id.len()
    }

    pub fn is_empty(&self) -> bool {
        self.by_id.is_empty()
    }

    pub fn ids(&self) -> impl Iterator<Item = LabelId> + '_ {
        self.by_id.keys().copied()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn table_from(text: &str) -> Result<EmbeddingTable, StoreError> {
        EmbeddingTable::from_reader(text.as_bytes())
    }

    fn catalog_from(map: &str, splits: &str) -> Result<LabelCatalog, StoreError> {
        LabelCatalog::load(map.as_bytes(), splits.as_bytes())
    }

    #[test]
    fn axis_vectors_normalize_to_units() {
        let table = table_from("2 3\ncat 1 0 0\ndog 0 2 0\n").unwrap();
        assert_eq!(table.len(), 2);
        assert_eq!(table.dimension(), 3);
        assert_eq!(table.get("cat").unwrap(), &[1.0, 0.0, 0.0]);
        assert_eq!(table.get("dog").unwrap(), &[0.0, 1.0, 0.0]);
        assert!(table.get("fox").is_none());
    }

    #[test]
    fn zero_vector_is_rejected() {
        let err = table_from("1 3\na 0 0 0\n").unwrap_err();
        assert!(matches!(err, StoreError::ZeroVector { .. }));
    }

    #[test]
    fn loaded_vectors_are_unit_norm() {
        // Norms 2, 2, and 5 divide exactly, so the normalized components
        // are the frozen quotients below.
        let table = table_from("3 4\na 1 1 1 1\nb 2 0 0 0\nc 0 0 3 4\n").unwrap();
        assert_eq!(table.get("a").unwrap(), &[0.5, 0.5, 0.5, 0.5]);
        assert_eq!(table.get("b").unwrap(), &[1.0, 0.0, 0.0, 0.0]);
        assert_eq!(table.get("c").unwrap(), &[0.0, 0.0, 3.0 / 5.0, 4.0 / 5.0]);
        for (_, v) in table.iter() {
            assert!((l2_norm(v) - 1.0).abs() <= 1e-9);
        }
    }

    #[test]
    fn dimension_mismatch_is_rejected() {
        let err = table_from("1 3\na 1 0\n").unwrap_err();
        assert!(matches!(
            err,
            StoreError::DimensionMismatch {
                expected: 3,
                found: 2,
                ..
            }
        ));
    }

    #[test]
    fn non_finite_component_is_rejected() {
        let err = table_from("1 2\na 1 inf\n").unwrap_err();
        assert!(matches!(err, StoreError::NonFinite { .. }));
        let err = table_from("1 2\na NaN 1\n").unwrap_err();
        assert!(matches!(err, StoreError::NonFinite { .. }));
    }

    #[test]
    fn duplicate_term_is_rejected() {
        let err = table_from("2 2\na 1 0\na 0 1\n").unwrap_err();
        assert!(matches!(err, StoreError::DuplicateTerm { .. }));
    }

    #[test]
    fn count_mismatch_is_rejected() {
        let err = table_from("2 2\na 1 0\n").unwrap_err();
        assert!(matches!(
            err,
            StoreError::CountMismatch {
                declared: 2,
                found: 1
            }
        ));
        let err = table_from("1 2\na 1 0\nb 0 1\n").unwrap_err();
        assert!(matches!(err, StoreError::CountMismatch { .. }));
    }

    #[test]
    fn garbage_number_is_rejected() {
        let err = table_from("1 2\na 1 x\n").unwrap_err();
        assert!(matches!(err, StoreError::InvalidNumber { .. }));
    }

    #[test]
    fn reload_is_bit_identical() {
        let text = "2 3\ncat 0.3 0.2 -0.1\ndog -0.25 0.5 0.75\n";
        let a = table_from(text).unwrap();
        let b = table_from(text).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn reemitted_table_reloads_identically() {
        let text = "2 3\ncat 0.3 0.2 -0.1\ndog -0.25 0.5 0.75\n";
        let a = table_from(text).unwrap();
        let mut emitted = Vec::new();
        a.write_to(&mut emitted).unwrap();
        let b = EmbeddingTable::from_reader(emitted.as_slice()).unwrap();
        assert_eq!(a.dimension(), b.dimension());
        assert_eq!(a.len(), b.len());
        for (term, v) in a.iter() {
            let w = b.get(term).unwrap();
            for (x, y) in v.iter().zip(w) {
                assert!((x - y).abs() <= 1e-12);
            }
        }
    }

    #[test]
    fn catalog_retains_in_vocabulary_label() {
        let table = table_from("1 2\nlion 1 0\n").unwrap();
        let catalog = catalog_from("7\tlion\n", "7 TRAIN\n").unwrap();
        let (resolved, report) = catalog.resolve(&table);
        assert_eq!(resolved.len(), 1);
        assert!(report.is_empty());
        assert_eq!(resolved.get(LabelId(7)).unwrap().synonyms, vec!["lion"]);
    }

    #[test]
    fn fully_oov_label_is_excluded_and_reported() {
        let table = table_from("1 2\nlion 1 0\n").unwrap();
        let catalog = catalog_from("8\tliger,lion-tiger-hybrid\n", "8 TEST\n").unwrap();
        let (resolved, report) = catalog.resolve(&table);
        assert!(resolved.is_empty());
        assert_eq!(report.excluded.len(), 1);
        assert_eq!(report.excluded[0].label_id, LabelId(8));
        assert_eq!(report.excluded[0].split, Split::Test);
    }

    #[test]
    fn resolution_reports_exactly_the_oov_labels() {
        let table = table_from("4 2\na 1 0\nb 0 1\nc 1 1\nd 1 2\n").unwrap();
        let map = "0\ta\n1\tb\n2\tmissing,also-missing\n3\tc\n4\td\n";
        let splits = "0 TRAIN\n1 TRAIN\n2 TEST\n3 TEST\n4 TEST\n";
        let catalog = catalog_from(map, splits).unwrap();
        let (resolved, report) = catalog.resolve(&table);
        assert_eq!(resolved.len(), 4);
        assert_eq!(report.excluded.len(), 1);
        assert!(report.contains(LabelId(2)));
        assert!(!resolved.contains(LabelId(2)));
    }

    #[test]
    fn duplicate_label_id_is_rejected() {
        let err = catalog_from("1\ta\n1\tb\n", "1 TRAIN\n").unwrap_err();
        assert!(matches!(err, StoreError::DuplicateLabel(LabelId(1))));
    }

    #[test]
    fn empty_synonym_list_is_rejected() {
        let err = catalog_from("1\t\n", "1 TRAIN\n").unwrap_err();
        assert!(matches!(err, StoreError::EmptySynonyms(LabelId(1))));
    }

    #[test]
    fn split_for_unknown_label_is_rejected() {
        let err = catalog_from("1\ta\n", "1 TRAIN\n9 TEST\n").unwrap_err();
        assert!(matches!(err, StoreError::UnknownSplitLabel(LabelId(9))));
    }

    #[test]
    fn missing_split_is_rejected() {
        let err = catalog_from("1\ta\n2\tb\n", "1 TRAIN\n").unwrap_err();
        assert!(matches!(err, StoreError::MissingSplit(LabelId(2))));
    }

    #[test]
    fn splits_partition_is_disjoint() {
        let catalog = catalog_from("1\ta\n2\tb\n", "1 TRAIN\n2 TEST\n").unwrap();
        let train = catalog.ids_for(Split::Train);
        let test = catalog.ids_for(Split::Test);
        assert_eq!(train, vec![LabelId(1)]);
        assert_eq!(test, vec![LabelId(2)]);
    }

    #[test]
    fn single_synonym_mean_is_the_word_vector() {
        let table = table_from("1 2\nlion 3 4\n").unwrap();
        let catalog = catalog_from("7\tlion\n", "7 TRAIN\n").unwrap();
        let emb = label_embedding(&catalog, &table, LabelId(7)).unwrap();
        assert_eq!(emb.mean_vector, table.get("lion").unwrap());
        assert_eq!(emb.word_vectors.len(), 1);
    }

    #[test]
    fn mean_of_orthogonal_synonyms() {
        let table = table_from("2 2\na 1 0\nb 0 1\n").unwrap();
        let catalog = catalog_from("1\ta,b\n", "1 TRAIN\n").unwrap();
        let emb = label_embedding(&catalog, &table, LabelId(1)).unwrap();
        assert_eq!(emb.mean_vector, vec![0.5, 0.5]);
    }

    #[test]
    fn oov_synonyms_are_skipped_in_mean() {
        let table = table_from("2 2\na 1 0\nb 0 1\n").unwrap();
        let catalog = catalog_from("1\ta,b,ghost\n", "1 TRAIN\n").unwrap();
        let emb = label_embedding(&catalog, &table, LabelId(1)).unwrap();
        assert_eq!(emb.mean_vector, vec![0.5, 0.5]);
        assert_eq!(emb.word_vectors.len(), 2);
    }

    #[test]
    fn unresolved_label_is_an_error() {
        let table = table_from("1 2\na 1 0\n").unwrap();
        let catalog = catalog_from("1\ta\n", "1 TRAIN\n").unwrap();
        let err = label_embedding(&catalog, &table, LabelId(42)).unwrap_err();
        assert!(matches!(err, StoreError::UnresolvedLabel(LabelId(42))));
    }

    #[test]
    fn mean_matches_componentwise_average_of_word_vectors() {
        let table = table_from("3 3\na 1 2 3\nb -1 0 2\nc 4 4 4\n").unwrap();
        let catalog = catalog_from("1\ta,b,c\n", "1 TEST\n").unwrap();
        let emb = label_embedding(&catalog, &table, LabelId(1)).unwrap();
        for i in 0..3 {
            let avg: f64 =
                emb.word_vectors.iter().map(|w| w[i]).sum::<f64>() / emb.word_vectors.len() as f64;
            assert!((emb.mean_vector[i] - avg).abs() <= 1e-9);
        }
    }

    proptest! {
        #[test]
        fn mean_is_permutation_invariant(perm in proptest::sample::subsequence(vec![0usize, 1, 2, 3], 4)) {
            prop_assume!(!perm.is_empty());
            let table = table_from("4 3\nw0 1 2 3\nw1 -1 0 2\nw2 4 4 4\nw3 0.5 -2 1\n").unwrap();
            let names = ["w0", "w1", "w2", "w3"];
            let forward: Vec<&str> = perm.iter().map(|&i| names[i]).collect();
            let mut reverse = forward.clone();
            reverse.reverse();
            let cat_a = catalog_from(&format!("1\t{}\n", forward.join(",")), "1 TEST\n").unwrap();
            let cat_b = catalog_from(&format!("1\t{}\n", reverse.join(",")), "1 TEST\n").unwrap();
            let a = label_embedding(&cat_a, &table, LabelId(1)).unwrap();
            let b = label_embedding(&cat_b, &table, LabelId(1)).unwrap();
            prop_assert_eq!(a.mean_vector, b.mean_vector);
        }

        #[test]
        fn all_loaded_norms_are_unit(values in proptest::collection::vec(-100.0f64..100.0, 3)) {
            prop_assume!(values.iter().any(|v| v.abs() > 1e-6));
            let text = format!("1 3\nw {} {} {}\n", values[0], values[1], values[2]);
            let table = table_from(&text).unwrap();
            let v = table.get("w").unwrap();
            prop_assert!((l2_norm(v) - 1.0).abs() <= UNIT_NORM_TOLERANCE);
        }
    }
}
