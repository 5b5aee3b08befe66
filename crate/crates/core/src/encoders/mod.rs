//! The six digit-to-words encoders and the rescoring pass.

mod chunk;
mod greedy;
mod ngram;
mod pos;
mod postprocess;
mod sentence;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

pub use chunk::{encode_chunk, Phrase};
pub use greedy::{encode_random, encode_unigram};
pub use ngram::encode_ngram;
pub use pos::encode_pos;
pub use postprocess::post_process;
pub use sentence::encode_sentence;

use crate::corpus::{PosTag, TagSet};
use crate::index::{EncodingIndex, WordId};
use crate::langmodel::{default_skippable, NgramModel, TokenId};
use crate::phonetics::DigitString;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum EncoderKind {
    Random,
    Unigram,
    Ngram,
    Pos,
    Chunk,
    Sentence,
}

impl EncoderKind {
    pub const ALL: [EncoderKind; 6] = [
        EncoderKind::Random,
        EncoderKind::Unigram,
        EncoderKind::Ngram,
        EncoderKind::Pos,
        EncoderKind::Chunk,
        EncoderKind::Sentence,
    ];

    pub fn name(self) -> &'static str {
        match self {
            EncoderKind::Random => "random",
            EncoderKind::Unigram => "unigram",
            EncoderKind::Ngram => "ngram",
            EncoderKind::Pos => "pos",
            EncoderKind::Chunk => "chunk",
            EncoderKind::Sentence => "sentence",
        }
    }
}

impl fmt::Display for EncoderKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for EncoderKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        EncoderKind::ALL
            .into_iter()
            .find(|k| k.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| format!("unknown encoder `{s}`"))
    }
}

/// Whether the n-gram encoder takes the best word or samples by score.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum NgramMode {
    #[default]
    Argmax,
    Sample,
}

#[derive(Debug, Clone, PartialEq)]
pub struct EncoderConfig {
    pub kind: EncoderKind,
    pub n: usize,
    pub alpha: f64,
    /// Exponent applied to the digit count of each sentence-encoder candidate.
    pub weight_power: f64,
    pub ngram_mode: NgramMode,
    pub seed: u64,
    pub chunk_size: usize,
    pub skippable_tags: TagSet,
    /// Consecutive template resamples before the sentence encoder gives up.
    pub retry_limit: usize,
    pub post_process: bool,
}

impl Default for EncoderConfig {
    fn default() -> Self {
        EncoderConfig {
            kind: EncoderKind::Sentence,
            n: 3,
            alpha: 0.1,
            weight_power: 10.0,
            ngram_mode: NgramMode::Argmax,
            seed: 0,
            chunk_size: 3,
            skippable_tags: default_skippable(),
            retry_limit: 100,
            post_process: true,
        }
    }
}

impl EncoderConfig {
    pub fn validate(&self) -> Result<(), crate::error::EncodeError> {
        use crate::error::EncodeError::InvalidConfig;
        if !self.weight_power.is_finite() || self.weight_power < 0.0 {
            return Err(InvalidConfig(format!("weight power must be >= 0, got {}", self.weight_power)));
        }
        if self.chunk_size == 0 {
            return Err(InvalidConfig("chunk size must be at least 1".into()));
        }
        if self.retry_limit == 0 {
            return Err(InvalidConfig("retry limit must be at least 1".into()));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EncodedWord {
    pub word: String,
    /// The digits this word stands for.
    pub digits: DigitString,
    /// Template slot the word filled, for slot-driven encoders.
    pub slot: Option<PosTag>,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Sentence {
    pub words: Vec<EncodedWord>,
    /// Whether the sentence is closed with a period.
    pub terminated: bool,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Encoding {
    pub source: DigitString,
    pub sentences: Vec<Sentence>,
}

/// One word of an encoding in the machine-readable output.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WordRecord {
    pub sentence: usize,
    pub word: String,
    pub span: DigitString,
    pub slot: Option<PosTag>,
    pub terminated: bool,
}

impl Encoding {
    pub fn empty(source: DigitString) -> Encoding {
        Encoding {
            source,
            sentences: Vec::new(),
        }
    }

    pub fn words(&self) -> impl Iterator<Item = &EncodedWord> {
        self.sentences.iter().flat_map(|s| s.words.iter())
    }

    pub fn word_count(&self) -> usize {
        self.sentences.iter().map(|s| s.words.len()).sum()
    }

    pub fn spans(&self) -> DigitString {
        let mut out = DigitString::new();
        for w in self.words() {
            out.extend_from(&w.digits);
        }
        out
    }

    /// Readable form: capitalised sentences, periods where terminated.
    pub fn render(&self) -> String {
        self.sentences
            .iter()
            .map(|s| {
                let mut text = s
                    .words
                    .iter()
                    .enumerate()
                    .map(|(i, w)| if i == 0 { capitalise(&w.word) } else { w.word.clone() })
                    .collect::<Vec<_>>()
                    .join(" ");
                if s.terminated {
                    text.push('.');
                }
                text
            })
            .collect::<Vec<_>>()
            .join(" ")
    }

    pub fn to_records(&self) -> Vec<WordRecord> {
        self.sentences
            .iter()
            .enumerate()
            .flat_map(|(i, s)| {
                s.words.iter().map(move |w| WordRecord {
                    sentence: i,
                    word: w.word.clone(),
                    span: w.digits.clone(),
                    slot: w.slot,
                    terminated: s.terminated,
                })
            })
            .collect()
    }

    /// Rebuilds an encoding from its records; the source is the concatenated
    /// spans.
    pub fn from_records(records: &[WordRecord]) -> Encoding {
        let mut sentences: Vec<Sentence> = Vec::new();
        let mut current = None;
        for r in records {
            if current != Some(r.sentence) {
                sentences.push(Sentence {
                    words: Vec::new(),
                    terminated: r.terminated,
                });
                current = Some(r.sentence);
            }
            sentences.last_mut().unwrap().words.push(EncodedWord {
                word: r.word.clone(),
                digits: r.span.clone(),
                slot: r.slot,
            });
        }
        let mut encoding = Encoding {
            source: DigitString::new(),
            sentences,
        };
        encoding.source = encoding.spans();
        encoding
    }
}

fn capitalise(word: &str) -> String {
    let mut chars = word.chars();
    match chars.next() {
        Some(c) => c.to_uppercase().chain(chars).collect(),
        None => String::new(),
    }
}

/// Never-seen token id; any n-gram containing it has count zero.
const UNSEEN: TokenId = TokenId::MAX;

/// Index word ids mapped to n-gram token ids.
#[derive(Debug, Clone)]
pub struct TokenMap(Vec<TokenId>);

impl TokenMap {
    pub fn new(index: &EncodingIndex, model: &NgramModel) -> TokenMap {
        TokenMap(
            (0..index.len() as WordId)
                .map(|id| model.token_id(&index.word(id).word).unwrap_or(UNSEEN))
                .collect(),
        )
    }
}

/// Scores index words with the word n-gram model.
#[derive(Debug, Clone, Copy)]
pub struct WordScorer<'a> {
    pub index: &'a EncodingIndex,
    pub model: &'a NgramModel,
    tokens: &'a TokenMap,
}

impl<'a> WordScorer<'a> {
    pub fn new(index: &'a EncodingIndex, model: &'a NgramModel, tokens: &'a TokenMap) -> WordScorer<'a> {
        WordScorer { index, model, tokens }
    }

    pub fn token(&self, id: WordId) -> TokenId {
        self.tokens.0[id as usize]
    }

    pub fn score(&self, context: &Context, id: WordId) -> f64 {
        self.model.score_ids(context.ids(), self.token(id))
    }

    pub fn score_token(&self, context: &Context, token: TokenId) -> f64 {
        self.model.score_ids(context.ids(), token)
    }

    pub fn bigram(&self, prev: TokenId, next: TokenId) -> f64 {
        self.model.bigram_score(prev, next)
    }

    pub fn lookup_word(&self, word: &str) -> Option<WordId> {
        self.index.lookup(word)
    }
}

/// Sliding window of the last `order - 1` tokens, start-padded.
#[derive(Debug, Clone)]
pub struct Context {
    ids: Vec<TokenId>,
    width: usize,
    start: TokenId,
}

impl Context {
    pub fn start(model: &NgramModel) -> Context {
        let width = model.order() - 1;
        Context {
            ids: vec![model.start_id(); width],
            width,
            start: model.start_id(),
        }
    }

    pub fn push(&mut self, token: TokenId) {
        if self.width == 0 {
            return;
        }
        self.ids.remove(0);
        self.ids.push(token);
    }

    pub fn reset(&mut self) {
        self.ids.iter_mut().for_each(|t| *t = self.start);
    }

    pub fn ids(&self) -> &[TokenId] {
        &self.ids
    }
}

/// `k^power` with `0^0 = 1`.
pub fn digit_weight(digits: usize, power: f64) -> f64 {
    if power == 0.0 {
        1.0
    } else {
        (digits as f64).powf(power)
    }
}

/// Picks the highest-scoring candidate; ties go to the longer span, then to
/// the alphabetically first word.
pub(crate) fn best_candidate<I>(index: &EncodingIndex, scored: I) -> Option<(WordId, usize, f64)>
where
    I: IntoIterator<Item = (WordId, usize, f64)>,
{
    scored.into_iter().fold(None, |best, cand| match best {
        None => Some(cand),
        Some(b) => {
            let better = cand.2 > b.2
                || (cand.2 == b.2
                    && (cand.1 > b.1 || (cand.1 == b.1 && index.word(cand.0).word < index.word(b.0).word)));
            Some(if better { cand } else { b })
        }
    })
}

pub(crate) fn encoded(index: &EncodingIndex, id: WordId, slot: Option<PosTag>) -> EncodedWord {
    let w = index.word(id);
    EncodedWord {
        word: w.word.clone(),
        digits: w.digits.clone(),
        slot,
    }
}
