//! Decoding words back to digits, round-trip checks and comparison metrics.

use serde::{Deserialize, Serialize};

use crate::corpus::{Lexicon, LexiconEntry};
use crate::encoders::Encoding;
use crate::error::VerifyError;
use crate::langmodel::{NgramModel, START};
use crate::phonetics::DigitString;

fn is_word_char(c: char) -> bool {
    c.is_alphanumeric() || c == '\''
}

/// Finds a token in the lexicon. `Ok(None)` means the token is punctuation.
fn lookup<'a>(token: &str, lexicon: &'a Lexicon) -> Result<Option<&'a LexiconEntry>, VerifyError> {
    let lower = token.to_lowercase();
    // a sentence-final "p.m." renders as "p.m.."
    let unstopped = lower.strip_suffix('.').unwrap_or(&lower);
    for form in [lower.as_str(), unstopped] {
        if let Some(e) = lexicon.get(form) {
            return Ok(Some(e));
        }
    }
    let trimmed = lower.trim_matches(|c: char| !is_word_char(c));
    if trimmed.is_empty() {
        return Ok(None);
    }
    lexicon
        .get(trimmed)
        .map(Some)
        .ok_or_else(|| VerifyError::UnknownWord(token.to_string()))
}

/// Concatenated canonical digits of `words`. Case and surrounding
/// punctuation are ignored.
pub fn decode<S: AsRef<str>>(words: &[S], lexicon: &Lexicon) -> Result<DigitString, VerifyError> {
    decode_with_warnings(words, lexicon).map(|(d, _)| d)
}

/// Splits free text on whitespace and decodes it.
pub fn decode_text(text: &str, lexicon: &Lexicon) -> Result<DigitString, VerifyError> {
    decode(&text.split_whitespace().collect::<Vec<_>>(), lexicon)
}

/// A word whose other pronunciations would decode differently.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Ambiguity {
    pub word: String,
    pub canonical: DigitString,
    pub alternates: Vec<DigitString>,
}

pub fn decode_with_warnings<S: AsRef<str>>(
    words: &[S],
    lexicon: &Lexicon,
) -> Result<(DigitString, Vec<Ambiguity>), VerifyError> {
    let mut digits = DigitString::new();
    let mut warnings = Vec::new();
    for w in words {
        let Some(entry) = lookup(w.as_ref(), lexicon)? else {
            continue;
        };
        digits.extend_from(&entry.canonical_digits);
        let alternates = entry.alternate_digits();
        if !alternates.is_empty() {
            warnings.push(Ambiguity {
                word: entry.word.clone(),
                canonical: entry.canonical_digits.clone(),
                alternates,
            });
        }
    }
    Ok((digits, warnings))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum RoundTripFailure {
    UnknownWord { index: usize, word: String },
    /// A word's recorded span is not its canonical digit string.
    SpanMismatch { index: usize, word: String, span: DigitString, canonical: DigitString },
    /// The decoded digits differ from the source starting at `position`.
    SourceMismatch { position: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RoundTripReport {
    pub decoded: DigitString,
    pub failure: Option<RoundTripFailure>,
}

impl RoundTripReport {
    pub fn is_ok(&self) -> bool {
        self.failure.is_none()
    }
}

pub fn check_roundtrip(encoding: &Encoding, lexicon: &Lexicon) -> RoundTripReport {
    let mut decoded = DigitString::new();
    let mut failure = None;
    for (index, w) in encoding.words().enumerate() {
        let Some(entry) = lexicon.get(&w.word) else {
            failure = Some(RoundTripFailure::UnknownWord {
                index,
                word: w.word.clone(),
            });
            break;
        };
        decoded.extend_from(&entry.canonical_digits);
        if entry.canonical_digits != w.digits {
            failure = Some(RoundTripFailure::SpanMismatch {
                index,
                word: w.word.clone(),
                span: w.digits.clone(),
                canonical: entry.canonical_digits.clone(),
            });
            break;
        }
    }
    if failure.is_none() && decoded != encoding.source {
        let (a, b) = (decoded.as_slice(), encoding.source.as_slice());
        let position = a.iter().zip(b).take_while(|(x, y)| x == y).count();
        failure = Some(RoundTripFailure::SourceMismatch { position });
    }
    RoundTripReport { decoded, failure }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Metrics {
    pub word_count: usize,
    pub sentence_count: usize,
    pub digits_per_word: f64,
    pub mean_word_frequency: f64,
    /// Sum of natural-log word model scores, each sentence start-padded.
    pub model_score: f64,
}

pub fn compute_metrics(encoding: &Encoding, lexicon: &Lexicon, model: &NgramModel) -> Metrics {
    let word_count = encoding.word_count();
    let digits: usize = encoding.words().map(|w| w.digits.len()).sum();
    let frequency: u64 = encoding
        .words()
        .map(|w| lexicon.get(&w.word).map_or(0, |e| e.frequency))
        .sum();
    let mut model_score = 0.0;
    for s in &encoding.sentences {
        let mut context: Vec<&str> = vec![START; model.order() - 1];
        for w in &s.words {
            model_score += model.sb_score(&context, &w.word).ln();
            context.push(&w.word);
        }
    }
    let per_word = |total: f64| if word_count == 0 { 0.0 } else { total / word_count as f64 };
    Metrics {
        word_count,
        sentence_count: encoding.sentences.len(),
        digits_per_word: per_word(digits as f64),
        mean_word_frequency: per_word(frequency as f64),
        model_score,
    }
}
