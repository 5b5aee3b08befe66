use rand::Rng;

use super::{best_candidate, digit_weight, encoded, post_process, Context, EncoderConfig, Encoding, Sentence, WordScorer};
use crate::corpus::{PosTag, TagSet};
use crate::error::EncodeError;
use crate::langmodel::TemplateStore;
use crate::phonetics::DigitString;

/// Tags a template slot accepts. Nouns may stand in for pronouns.
pub(crate) fn slot_tags(slot: PosTag) -> TagSet {
    match slot {
        PosTag::Pron => TagSet::of(&[PosTag::Pron, PosTag::Noun]),
        t => TagSet::single(t),
    }
}

/// Fills sampled sentence templates slot by slot. Each word is the best
/// `score * digits^power` among the words of the slot's tags that encode a
/// prefix of what is left.
pub fn encode_sentence<R: Rng + ?Sized>(
    digits: &DigitString,
    scorer: &WordScorer<'_>,
    templates: &TemplateStore,
    config: &EncoderConfig,
    rng: &mut R,
) -> Result<Encoding, EncodeError> {
    config.validate()?;
    let index = scorer.index;
    let all = digits.as_slice();
    let mut sentences = Vec::new();
    let mut pos = 0;
    let mut failures = 0;

    while pos < all.len() {
        let template = templates.sample(rng);
        let mut context = Context::start(scorer.model);
        let mut sentence = Sentence {
            words: Vec::new(),
            terminated: true,
        };
        let mut at = pos;
        let mut failed = false;

        for &slot in &template.tags {
            if at == all.len() {
                break;
            }
            if slot == PosTag::Punct {
                continue;
            }
            let candidates = index.prefix_candidates(&all[at..], Some(slot_tags(slot)));
            let scored = candidates.iter().map(|c| {
                (c.id, c.digits, scorer.score(&context, c.id) * digit_weight(c.digits, config.weight_power))
            });
            match best_candidate(index, scored) {
                Some((id, k, _)) => {
                    sentence.words.push(encoded(index, id, Some(slot)));
                    context.push(scorer.token(id));
                    at += k;
                }
                None if config.skippable_tags.contains(slot) => {}
                None => {
                    failed = true;
                    break;
                }
            }
        }

        if failed || sentence.words.is_empty() {
            failures += 1;
            if failures >= config.retry_limit {
                return Err(EncodeError::RetryLimit {
                    attempts: failures,
                    position: pos,
                });
            }
            continue;
        }
        failures = 0;
        pos = at;
        sentences.push(sentence);
    }

    let encoding = Encoding {
        source: digits.clone(),
        sentences,
    };
    Ok(if config.post_process {
        post_process(&encoding, scorer)
    } else {
        encoding
    })
}
