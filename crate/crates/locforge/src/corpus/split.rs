//! Seeded train/valid/test splitting.

use serde::{Deserialize, Serialize};

use super::filter::MetaPredicate;
use super::rng::{shuffle, SplitMix64};
use super::segment::BiSegment;
use super::CorpusError;

/// How to draw validation and test sets out of a corpus.
///
/// `scope`, when set, restricts which segments are eligible for the drawn
/// sets (segments matching the predicate are eligible); everything out of
/// scope stays in train. The same (corpus, spec) pair yields the same
/// split in every release; see [`super::rng`] for the pinned generator.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SplitSpec {
    pub valid_size: usize,
    pub test_size: usize,
    pub seed: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub scope: Option<MetaPredicate>,
}

impl SplitSpec {
    pub fn new(valid_size: usize, test_size: usize, seed: u64) -> Self {
        SplitSpec { valid_size, test_size, seed, scope: None }
    }

    pub fn with_scope(mut self, scope: MetaPredicate) -> Self {
        self.scope = Some(scope);
        self
    }
}

/// The three pairwise-disjoint outputs of [`split`]; their union is the
/// input.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SplitResult {
    pub train: Vec<BiSegment>,
    pub valid: Vec<BiSegment>,
    pub test: Vec<BiSegment>,
}

/// Splits a corpus into train/valid/test without replacement.
///
/// Eligible segments are shuffled by Fisher–Yates under SplitMix64 seeded
/// with `spec.seed`; the first `test_size` drawn become test, the next
/// `valid_size` become valid. Train is everything else (eligible leftovers
/// plus out-of-scope segments) in input order, while valid and test keep
/// their draw order.
pub fn split(segments: Vec<BiSegment>, spec: &SplitSpec) -> Result<SplitResult, CorpusError> {
    let eligible: Vec<usize> = segments
        .iter()
        .enumerate()
        .filter(|(_, seg)| spec.scope.as_ref().is_none_or(|p| p.matches(seg)))
        .map(|(i, _)| i)
        .collect();

    let needed = spec.valid_size + spec.test_size;
    if eligible.len() < needed {
        return Err(CorpusError::InsufficientEligible { needed, available: eligible.len() });
    }

    let mut drawn = eligible;
    shuffle(&mut drawn, &mut SplitMix64::new(spec.seed));
    let test_idx = &drawn[..spec.test_size];
    let valid_idx = &drawn[spec.test_size..needed];

    let mut slots: Vec<Option<BiSegment>> = segments.into_iter().map(Some).collect();
    let test: Vec<BiSegment> = test_idx.iter().map(|&i| slots[i].take().unwrap()).collect();
    let valid: Vec<BiSegment> = valid_idx.iter().map(|&i| slots[i].take().unwrap()).collect();
    let train: Vec<BiSegment> = slots.into_iter().flatten().collect();

    Ok(SplitResult { train, valid, test })
}
