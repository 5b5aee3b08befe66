use rand::distributions::{Distribution, WeightedIndex};
use rand::Rng;

use super::{best_candidate, encoded, Context, EncoderConfig, Encoding, NgramMode, Sentence, WordScorer};
use crate::error::EncodeError;
use crate::phonetics::DigitString;

enum Choice {
    Word(u32, usize),
    End,
}

/// Left-to-right encoding scored by the word n-gram model. The sentence-end
/// token competes with the words; choosing it closes the current sentence.
pub fn encode_ngram<R: Rng + ?Sized>(
    digits: &DigitString,
    scorer: &WordScorer<'_>,
    config: &EncoderConfig,
    rng: &mut R,
) -> Result<Encoding, EncodeError> {
    config.validate()?;
    let index = scorer.index;
    let end = scorer.model.end_id();
    let all = digits.as_slice();
    let mut context = Context::start(scorer.model);
    let mut sentences = Vec::new();
    let mut current = Sentence::default();
    let mut pos = 0;

    while pos < all.len() {
        let candidates = index.prefix_candidates(&all[pos..], None);
        if candidates.is_empty() {
            return Err(EncodeError::Unencodable {
                position: pos,
                remaining: digits.slice(pos..all.len()).to_string(),
            });
        }
        let scored: Vec<(u32, usize, f64)> = candidates
            .iter()
            .map(|c| (c.id, c.digits, scorer.score(&context, c.id)))
            .collect();
        let end_score = if current.words.is_empty() {
            None
        } else {
            Some(scorer.score_token(&context, end))
        };

        let choice = match config.ngram_mode {
            NgramMode::Argmax => {
                let (id, k, s) = best_candidate(index, scored.iter().copied()).expect("nonempty");
                match end_score {
                    Some(e) if e > s => Choice::End,
                    _ => Choice::Word(id, k),
                }
            }
            NgramMode::Sample => {
                let weights = scored.iter().map(|c| c.2).chain(end_score);
                match WeightedIndex::new(weights) {
                    Ok(dist) => {
                        let i = dist.sample(rng);
                        if i == scored.len() {
                            Choice::End
                        } else {
                            Choice::Word(scored[i].0, scored[i].1)
                        }
                    }
                    // every score is zero
                    Err(_) => {
                        let (id, k, _) = best_candidate(index, scored.iter().copied()).expect("nonempty");
                        Choice::Word(id, k)
                    }
                }
            }
        };

        match choice {
            Choice::End => {
                current.terminated = true;
                sentences.push(std::mem::take(&mut current));
                context.reset();
            }
            Choice::Word(id, k) => {
                current.words.push(encoded(index, id, None));
                context.push(scorer.token(id));
                pos += k;
            }
        }
    }
    if !current.words.is_empty() {
        sentences.push(current);
    }
    Ok(Encoding {
        source: digits.clone(),
        sentences,
    })
}
