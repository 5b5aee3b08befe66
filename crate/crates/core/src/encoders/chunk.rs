use super::{encoded, EncoderConfig, Encoding, Sentence, WordScorer};
use crate::corpus::PosTag::{self, *};
use crate::error::EncodeError;
use crate::index::WordId;
use crate::langmodel::TokenId;
use crate::phonetics::DigitString;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Phrase {
    Noun,
    Verb,
}

/// Every sentence is noun phrase, verb phrase, noun phrase.
pub const SENTENCE_SHAPE: [Phrase; 3] = [Phrase::Noun, Phrase::Verb, Phrase::Noun];

impl Phrase {
    /// One- and two-word tag shapes that read as this phrase.
    pub fn patterns(self) -> &'static [&'static [PosTag]] {
        match self {
            Phrase::Noun => &[&[Noun], &[Det, Noun], &[Adj, Noun], &[Pron]],
            Phrase::Verb => &[&[Verb], &[Verb, Adv], &[Adv, Verb], &[Verb, Prt], &[Verb, Noun], &[Verb, Pron]],
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Phrase::Noun => "noun phrase",
            Phrase::Verb => "verb phrase",
        }
    }
}

/// A realization of one chunk: its words with their tags, and its score.
type Realization = (Vec<(WordId, PosTag)>, f64);

/// Best one- or two-word realization of `chunk` as `phrase` after `prev`.
pub(crate) fn realize(chunk: &[u8], phrase: Phrase, prev: TokenId, scorer: &WordScorer<'_>) -> Option<Realization> {
    let index = scorer.index;
    let mut best: Option<Realization> = None;
    let beats = |best: &Option<Realization>, s: f64| best.as_ref().is_none_or(|b| s > b.1);

    for pattern in phrase.patterns() {
        match **pattern {
            [tag] => {
                for &id in index.exact_bucket(chunk, tag) {
                    let s = scorer.bigram(prev, scorer.token(id));
                    if beats(&best, s) {
                        best = Some((vec![(id, tag)], s));
                    }
                }
            }
            [t1, t2] => {
                for split in 1..chunk.len() {
                    let second = index.exact_bucket(&chunk[split..], t2);
                    if second.is_empty() {
                        continue;
                    }
                    for &a in index.exact_bucket(&chunk[..split], t1) {
                        let first = scorer.bigram(prev, scorer.token(a));
                        // the second factor is at most 1
                        if !beats(&best, first) {
                            continue;
                        }
                        for &b in second {
                            let s = first * scorer.bigram(scorer.token(a), scorer.token(b));
                            if beats(&best, s) {
                                best = Some((vec![(a, t1), (b, t2)], s));
                            }
                        }
                    }
                }
            }
            _ => unreachable!("patterns have one or two tags"),
        }
    }
    best
}

/// Splits the digits into fixed-size chunks and realizes each as a noun or
/// verb phrase, three chunks to a sentence.
pub fn encode_chunk(digits: &DigitString, scorer: &WordScorer<'_>, config: &EncoderConfig) -> Result<Encoding, EncodeError> {
    config.validate()?;
    let start = scorer.model.start_id();
    let mut prev = start;
    let mut sentences = Vec::new();
    let mut current = Sentence::default();

    for (i, chunk) in digits.as_slice().chunks(config.chunk_size).enumerate() {
        let phrase = SENTENCE_SHAPE[i % SENTENCE_SHAPE.len()];
        let (words, _) = realize(chunk, phrase, prev, scorer).ok_or_else(|| EncodeError::UnencodableChunk {
            chunk: DigitString::from_iter(chunk.iter().copied()).to_string(),
            slot: phrase.name(),
        })?;
        for (id, tag) in words {
            current.words.push(encoded(scorer.index, id, Some(tag)));
            prev = scorer.token(id);
        }
        if i % SENTENCE_SHAPE.len() == SENTENCE_SHAPE.len() - 1 {
            current.terminated = true;
            sentences.push(std::mem::take(&mut current));
            prev = start;
        }
    }
    if !current.words.is_empty() {
        current.terminated = true;
        sentences.push(current);
    }
    Ok(Encoding {
        source: digits.clone(),
        sentences,
    })
}
