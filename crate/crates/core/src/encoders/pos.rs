use super::{best_candidate, encoded, Context, Encoding, Sentence, WordScorer};
use crate::corpus::{PosTag, TagSet};
use crate::error::EncodeError;
use crate::langmodel::{push_tag, PosTrigramModel, SENTENCE_START};
use crate::phonetics::DigitString;

/// Tags to try after `ranked`: the model's choices first, then every other
/// tag so that any encodable prefix is reachable.
fn tag_order(ranked: Vec<PosTag>) -> Vec<PosTag> {
    let mut order = ranked;
    for t in PosTag::ALL {
        if t != PosTag::Punct && !order.contains(&t) {
            order.push(t);
        }
    }
    order
}

/// Predicts the next tag with the POS trigram model, then picks the best
/// word of that tag by the word model.
pub fn encode_pos(
    digits: &DigitString,
    scorer: &WordScorer<'_>,
    pos_model: &PosTrigramModel,
) -> Result<Encoding, EncodeError> {
    let index = scorer.index;
    let all = digits.as_slice();
    let mut context = Context::start(scorer.model);
    let mut tags = SENTENCE_START;
    let mut words = Vec::new();
    let mut pos = 0;

    while pos < all.len() {
        let rest = &all[pos..];
        let pick = tag_order(pos_model.most_likely_tags(&tags)).into_iter().find_map(|tag| {
            let candidates = index.prefix_candidates(rest, Some(TagSet::single(tag)));
            best_candidate(index, candidates.iter().map(|c| (c.id, c.digits, scorer.score(&context, c.id))))
                .map(|(id, k, _)| (tag, id, k))
        });
        let Some((tag, id, k)) = pick else {
            return Err(EncodeError::Unencodable {
                position: pos,
                remaining: digits.slice(pos..all.len()).to_string(),
            });
        };
        words.push(encoded(index, id, Some(tag)));
        context.push(scorer.token(id));
        tags = push_tag(&tags, tag);
        pos += k;
    }
    let sentences = if words.is_empty() {
        Vec::new()
    } else {
        vec![Sentence {
            words,
            terminated: false,
        }]
    };
    Ok(Encoding {
        source: digits.clone(),
        sentences,
    })
}
