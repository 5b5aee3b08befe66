//! Corpus ingestion: the CMU Pronouncing Dictionary, Brown-format tagged
//! text, and the lexicon built from their intersection.

mod cmudict;
mod lexicon;
mod tagged;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

pub use cmudict::{parse_cmudict, read_cmudict, Pronunciation, PronunciationDict};
pub use lexicon::{build_lexicon, CorpusStats, Lexicon, LexiconEntry};
pub use tagged::{corpus_files, parse_tagged_corpus, TagMap, TaggedCorpus, TaggedSentence};

/// The twelve-tag universal part-of-speech inventory.
///
/// Variants are declared in alphabetical order of their labels so the derived
/// `Ord` doubles as the tie-break order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum PosTag {
    #[serde(rename = ".")]
    Punct,
    #[serde(rename = "ADJ")]
    Adj,
    #[serde(rename = "ADP")]
    Adp,
    #[serde(rename = "ADV")]
    Adv,
    #[serde(rename = "CONJ")]
    Conj,
    #[serde(rename = "DET")]
    Det,
    #[serde(rename = "NOUN")]
    Noun,
    #[serde(rename = "NUM")]
    Num,
    #[serde(rename = "PRON")]
    Pron,
    #[serde(rename = "PRT")]
    Prt,
    #[serde(rename = "VERB")]
    Verb,
    X,
}

impl PosTag {
    pub const ALL: [PosTag; 12] = [
        PosTag::Punct,
        PosTag::Adj,
        PosTag::Adp,
        PosTag::Adv,
        PosTag::Conj,
        PosTag::Det,
        PosTag::Noun,
        PosTag::Num,
        PosTag::Pron,
        PosTag::Prt,
        PosTag::Verb,
        PosTag::X,
    ];

    pub fn label(self) -> &'static str {
        match self {
            PosTag::Punct => ".",
            PosTag::Adj => "ADJ",
            PosTag::Adp => "ADP",
            PosTag::Adv => "ADV",
            PosTag::Conj => "CONJ",
            PosTag::Det => "DET",
            PosTag::Noun => "NOUN",
            PosTag::Num => "NUM",
            PosTag::Pron => "PRON",
            PosTag::Prt => "PRT",
            PosTag::Verb => "VERB",
            PosTag::X => "X",
        }
    }

    pub fn index(self) -> usize {
        self as usize
    }
}

impl fmt::Display for PosTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UnknownTag(pub String);

impl fmt::Display for UnknownTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "unknown universal tag `{}`", self.0)
    }
}

impl std::error::Error for UnknownTag {}

impl FromStr for PosTag {
    type Err = UnknownTag;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        PosTag::ALL
            .into_iter()
            .find(|t| t.label().eq_ignore_ascii_case(s))
            .ok_or_else(|| UnknownTag(s.to_string()))
    }
}

/// A small set of universal tags.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash)]
pub struct TagSet(u16);

impl TagSet {
    pub const EMPTY: TagSet = TagSet(0);

    pub fn of(tags: &[PosTag]) -> TagSet {
        tags.iter().fold(TagSet::EMPTY, |set, &t| set.with(t))
    }

    pub fn single(tag: PosTag) -> TagSet {
        TagSet::EMPTY.with(tag)
    }

    pub fn with(self, tag: PosTag) -> TagSet {
        TagSet(self.0 | 1 << tag.index())
    }

    pub fn contains(self, tag: PosTag) -> bool {
        self.0 & (1 << tag.index()) != 0
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn iter(self) -> impl Iterator<Item = PosTag> {
        PosTag::ALL.into_iter().filter(move |&t| self.contains(t))
    }
}

impl FromIterator<PosTag> for TagSet {
    fn from_iter<I: IntoIterator<Item = PosTag>>(iter: I) -> Self {
        iter.into_iter().fold(TagSet::EMPTY, TagSet::with)
    }
}
