//! Zero-shot label ranking via convex combinations of semantic embeddings.
//!
//! The pipeline turns the probability distribution emitted by any n-way
//! classifier into a point in a word-embedding space: the top-T training
//! labels are extracted, their label embeddings are combined with the
//! renormalized probabilities as weights, and unseen candidate labels are
//! ranked by cosine similarity against the combined vector. A label
//! hierarchy supplies hop-bounded candidate sets and the relevance sets
//! used by hierarchical precision@k.
//!
//! Modules:
//! - [`store`]: embedding table, label catalog, per-label mean embeddings.
//! - [`conse`]: top-T extraction, convex combination, cosine ranking.
//! - [`hierarchy`]: hop distances, hop-bounded candidate sets, relevance sets.
//! - [`eval`]: flat hit@k and hierarchical precision@k over ranked batches.
//! - [`synth`]: seeded synthetic bundles and the naive reference ranker.
//! - [`manifest`]: run manifests written by the CLI.

pub mod conse;
pub mod eval;
pub mod hierarchy;
pub mod manifest;
pub mod store;
pub mod synth;
pub(crate) mod vecmath;

use std::fmt;

use serde::{Deserialize, Serialize};

/// Integer identifier of a class label.
#[derive(
    Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize, Default,
)]
#[serde(transparent)]
pub struct LabelId(pub u32);

impl fmt::Display for LabelId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

impl std::str::FromStr for LabelId {
    type Err = std::num::ParseIntError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        s.parse().map(LabelId)
    }
}

impl From<u32> for LabelId {
    fn from(id: u32) -> Self {
        LabelId(id)
    }
}

/// Which side of the train/test partition a label belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Split {
    Train,
    Test,
}

impl fmt::Display for Split {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Split::Train => write!(f, "TRAIN"),
            Split::Test => write!(f, "TEST"),
        }
    }
}
