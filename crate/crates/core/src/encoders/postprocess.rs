use super::{sentence::slot_tags, Encoding, WordScorer};
use crate::index::WordId;
use crate::langmodel::TokenId;

const MAX_PASSES: usize = 1000;

/// Replaces each word by the same-digit word the bigram model likes best
/// between its neighbours. Left context is the already-rewritten word.
/// Passes repeat until nothing changes, so the result is a fixed point.
pub fn post_process(encoding: &Encoding, scorer: &WordScorer<'_>) -> Encoding {
    let mut out = encoding.clone();
    for _ in 0..MAX_PASSES {
        if !pass(&mut out, scorer) {
            break;
        }
    }
    out
}

fn pass(encoding: &mut Encoding, scorer: &WordScorer<'_>) -> bool {
    let index = scorer.index;
    let start = scorer.model.start_id();
    let end = scorer.model.end_id();
    let mut changed = false;

    for sentence in &mut encoding.sentences {
        let ids: Option<Vec<WordId>> = sentence.words.iter().map(|w| scorer.lookup_word(&w.word)).collect();
        let Some(mut ids) = ids else {
            // words from outside the index are left alone
            continue;
        };
        let tokens = |ids: &[WordId], i: usize| scorer.token(ids[i]);
        for i in 0..ids.len() {
            let prev = if i == 0 { start } else { tokens(&ids, i - 1) };
            let next: Option<TokenId> = if i + 1 < ids.len() {
                Some(tokens(&ids, i + 1))
            } else if sentence.terminated {
                Some(end)
            } else {
                None
            };
            let local = |id: WordId| {
                let t = scorer.token(id);
                scorer.bigram(prev, t) * next.map_or(1.0, |n| scorer.bigram(t, n))
            };
            let word = &sentence.words[i];
            let allowed = word.slot.map(slot_tags);
            let mut best = (ids[i], local(ids[i]));
            for &c in index.exact_candidates(word.digits.as_slice()) {
                if allowed.is_some_and(|tags| !tags.contains(index.word(c).pos)) {
                    continue;
                }
                let s = local(c);
                if s > best.1 {
                    best = (c, s);
                }
            }
            if best.0 != ids[i] {
                ids[i] = best.0;
                sentence.words[i].word = index.word(best.0).word.clone();
                changed = true;
            }
        }
    }
    changed
}
