//! Digit trie over canonical digit strings.

use std::collections::HashMap;

use crate::corpus::{Lexicon, PosTag, TagSet};
use crate::error::IndexError;
use crate::phonetics::DigitString;

pub type WordId = u32;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IndexedWord {
    pub word: String,
    pub digits: DigitString,
    pub pos: PosTag,
    pub frequency: u64,
}

/// A word together with the number of leading digits it encodes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Candidate {
    pub id: WordId,
    pub digits: usize,
}

#[derive(Debug, Clone, Default)]
struct Node {
    children: [u32; 10],
    // Sorted by (pos, word) so a POS bucket is a contiguous run.
    words: Vec<WordId>,
}

#[derive(Debug, Clone)]
pub struct EncodingIndex {
    words: Vec<IndexedWord>,
    by_name: HashMap<String, WordId>,
    nodes: Vec<Node>,
    max_word_digits: usize,
}

impl EncodingIndex {
    /// Indexes every lexicon word that encodes at least one digit.
    pub fn build(lexicon: &Lexicon) -> EncodingIndex {
        let words = lexicon
            .iter()
            .filter(|e| !e.canonical_digits.is_empty())
            .map(|e| IndexedWord {
                word: e.word.clone(),
                digits: e.canonical_digits.clone(),
                pos: e.dominant_pos,
                frequency: e.frequency,
            });
        EncodingIndex::from_words(words)
    }

    pub fn from_words(words: impl IntoIterator<Item = IndexedWord>) -> EncodingIndex {
        let mut words: Vec<IndexedWord> = words.into_iter().filter(|w| !w.digits.is_empty()).collect();
        words.sort_by(|a, b| a.word.cmp(&b.word));
        words.dedup_by(|a, b| a.word == b.word);

        let mut nodes = vec![Node::default()];
        let mut max_word_digits = 0;
        for (id, w) in words.iter().enumerate() {
            let mut node = 0usize;
            for &d in w.digits.as_slice() {
                let child = nodes[node].children[d as usize];
                node = if child == 0 {
                    nodes.push(Node::default());
                    let new = nodes.len() - 1;
                    nodes[node].children[d as usize] = new as u32;
                    new
                } else {
                    child as usize
                };
            }
            nodes[node].words.push(id as WordId);
            max_word_digits = max_word_digits.max(w.digits.len());
        }
        for node in &mut nodes {
            node.words
                .sort_by(|&a, &b| (words[a as usize].pos, a).cmp(&(words[b as usize].pos, b)));
        }
        let by_name = words
            .iter()
            .enumerate()
            .map(|(i, w)| (w.word.clone(), i as WordId))
            .collect();
        EncodingIndex {
            words,
            by_name,
            nodes,
            max_word_digits,
        }
    }

    pub fn word(&self, id: WordId) -> &IndexedWord {
        &self.words[id as usize]
    }

    pub fn lookup(&self, word: &str) -> Option<WordId> {
        self.by_name.get(word).copied()
    }

    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    pub fn max_word_digits(&self) -> usize {
        self.max_word_digits
    }

    fn words_at<'a>(&'a self, node: &'a Node, filter: Option<TagSet>) -> impl Iterator<Item = WordId> + 'a {
        node.words
            .iter()
            .copied()
            .filter(move |&id| filter.is_none_or(|f| f.contains(self.word(id).pos)))
    }

    /// Nodes along the path of `digits`, paired with their depth.
    fn walk<'a>(&'a self, digits: &'a [u8]) -> impl Iterator<Item = (usize, &'a Node)> + 'a {
        let limit = digits.len().min(self.max_word_digits);
        let mut node = 0usize;
        digits[..limit].iter().enumerate().map_while(move |(i, &d)| {
            let child = self.nodes[node].children[d as usize];
            if child == 0 {
                return None;
            }
            node = child as usize;
            Some((i + 1, &self.nodes[node]))
        })
    }

    /// All words whose digit string is a nonempty prefix of `remaining`,
    /// shortest first.
    pub fn prefix_candidates(&self, remaining: &[u8], filter: Option<TagSet>) -> Vec<Candidate> {
        let mut out = Vec::new();
        for (depth, node) in self.walk(remaining) {
            out.extend(self.words_at(node, filter).map(|id| Candidate { id, digits: depth }));
        }
        out
    }

    /// The words encoding the longest matchable prefix of `remaining`.
    pub fn max_prefix_candidates(&self, remaining: &[u8]) -> Result<(usize, Vec<WordId>), IndexError> {
        self.walk(remaining)
            .filter(|(_, node)| !node.words.is_empty())
            .last()
            .map(|(depth, node)| (depth, node.words.clone()))
            .ok_or_else(|| IndexError::NoCandidate {
                remaining: DigitString::from_iter(remaining.iter().copied()).to_string(),
            })
    }

    /// Words whose digit string equals `digits` exactly.
    pub fn exact_candidates(&self, digits: &[u8]) -> &[WordId] {
        if digits.is_empty() || digits.len() > self.max_word_digits {
            return &[];
        }
        let mut node = 0usize;
        for &d in digits {
            match self.nodes[node].children[d as usize] {
                0 => return &[],
                child => node = child as usize,
            }
        }
        &self.nodes[node].words
    }

    /// Exact matches restricted to a tag set.
    pub fn exact_candidates_tagged(&self, digits: &[u8], filter: TagSet) -> Vec<WordId> {
        self.exact_candidates(digits)
            .iter()
            .copied()
            .filter(|&id| filter.contains(self.word(id).pos))
            .collect()
    }

    /// Exact matches with one tag, as a contiguous slice.
    pub fn exact_bucket(&self, digits: &[u8], tag: PosTag) -> &[WordId] {
        let all = self.exact_candidates(digits);
        let start = all.partition_point(|&id| self.word(id).pos < tag);
        let end = all.partition_point(|&id| self.word(id).pos <= tag);
        &all[start..end]
    }
}
