use std::collections::HashMap;

use rand::distributions::{Distribution, WeightedIndex};
use rand::Rng;

use crate::corpus::{PosTag, TagSet, TaggedSentence};
use crate::error::ModelError;

/// Tags a sentence template may leave unfilled.
pub const SKIPPABLE: [PosTag; 3] = [PosTag::Det, PosTag::Adj, PosTag::Adv];

pub fn default_skippable() -> TagSet {
    TagSet::of(&SKIPPABLE)
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SentenceTemplate {
    pub tags: Vec<PosTag>,
    pub frequency: u64,
}

impl SentenceTemplate {
    /// Slots that always yield a word: everything except punctuation and
    /// skippable tags.
    pub fn guaranteed_words(&self, skippable: TagSet) -> usize {
        guaranteed_words(&self.tags, skippable)
    }

    pub fn label(&self) -> String {
        self.tags.iter().map(|t| t.label()).collect::<Vec<_>>().join(" ")
    }
}

fn guaranteed_words(tags: &[PosTag], skippable: TagSet) -> usize {
    tags.iter()
        .filter(|&&t| t != PosTag::Punct && !skippable.contains(t))
        .count()
}

/// Whether a tag sequence is usable as a template.
pub fn passes_filters(tags: &[PosTag], min_words: usize, skippable: TagSet) -> bool {
    tags.contains(&PosTag::Verb)
        && !tags.contains(&PosTag::Num)
        && !tags.contains(&PosTag::X)
        && guaranteed_words(tags, skippable) >= min_words
}

/// Whether the `top_k` cut is taken over all sentence shapes or only over
/// the ones that pass the filters.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum TemplateSelection {
    #[default]
    FilterThenTop,
    TopThenFilter,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TemplateOptions {
    pub top_k: usize,
    pub min_words: usize,
    pub skippable: TagSet,
    pub selection: TemplateSelection,
}

impl Default for TemplateOptions {
    fn default() -> Self {
        TemplateOptions {
            top_k: 100,
            min_words: 5,
            skippable: default_skippable(),
            selection: TemplateSelection::default(),
        }
    }
}

/// Frequency-weighted collection of sentence templates.
#[derive(Debug, Clone)]
pub struct TemplateStore {
    templates: Vec<SentenceTemplate>,
    weights: WeightedIndex<u64>,
}

impl TemplateStore {
    pub fn new(templates: Vec<SentenceTemplate>) -> Result<TemplateStore, ModelError> {
        let weights = WeightedIndex::new(templates.iter().map(|t| t.frequency))
            .map_err(|_| ModelError::EmptyTemplateStore)?;
        Ok(TemplateStore { templates, weights })
    }

    pub fn templates(&self) -> &[SentenceTemplate] {
        &self.templates
    }

    pub fn len(&self) -> usize {
        self.templates.len()
    }

    pub fn is_empty(&self) -> bool {
        self.templates.is_empty()
    }

    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> &SentenceTemplate {
        &self.templates[self.weights.sample(rng)]
    }
}

/// Counts full-sentence tag sequences and keeps the most frequent usable ones.
pub fn extract_templates(
    sentences: &[TaggedSentence],
    top_k: usize,
    min_words: usize,
) -> Result<TemplateStore, ModelError> {
    extract_templates_with(
        sentences,
        &TemplateOptions {
            top_k,
            min_words,
            ..TemplateOptions::default()
        },
    )
}

pub fn extract_templates_with(
    sentences: &[TaggedSentence],
    options: &TemplateOptions,
) -> Result<TemplateStore, ModelError> {
    if sentences.is_empty() {
        return Err(ModelError::NoSentences);
    }
    let mut counts: HashMap<Vec<PosTag>, u64> = HashMap::new();
    for s in sentences {
        *counts.entry(s.tags().collect()).or_default() += 1;
    }
    let mut ranked: Vec<SentenceTemplate> = counts
        .into_iter()
        .map(|(tags, frequency)| SentenceTemplate { tags, frequency })
        .collect();
    ranked.sort_by(|a, b| {
        b.frequency
            .cmp(&a.frequency)
            .then(a.tags.len().cmp(&b.tags.len()))
            .then_with(|| a.tags.cmp(&b.tags))
    });

    let usable = |t: &SentenceTemplate| passes_filters(&t.tags, options.min_words, options.skippable);
    let templates: Vec<SentenceTemplate> = match options.selection {
        TemplateSelection::FilterThenTop => ranked.into_iter().filter(usable).take(options.top_k).collect(),
        TemplateSelection::TopThenFilter => ranked.into_iter().take(options.top_k).filter(usable).collect(),
    };
    TemplateStore::new(templates)
}

pub fn sample_template<'a, R: Rng + ?Sized>(store: &'a TemplateStore, rng: &mut R) -> &'a SentenceTemplate {
    store.sample(rng)
}
