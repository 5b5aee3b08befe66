use std::collections::HashMap;

use rustc_hash::FxHashMap;

use crate::error::ModelError;

/// Sentence-start padding token.
pub const START: &str = "<s>";
/// Sentence-end token.
pub const END: &str = "</s>";

/// Longest supported n-gram; keys pack up to four 32-bit token ids.
pub const MAX_ORDER: usize = 4;

pub type TokenId = u32;

#[derive(Debug, Clone, Default)]
struct Vocab {
    ids: HashMap<String, TokenId>,
    tokens: Vec<String>,
}

impl Vocab {
    fn intern(&mut self, token: &str) -> TokenId {
        if let Some(&id) = self.ids.get(token) {
            return id;
        }
        let id = self.tokens.len() as TokenId;
        self.tokens.push(token.to_string());
        self.ids.insert(token.to_string(), id);
        id
    }
}

fn pack(ids: impl IntoIterator<Item = TokenId>) -> u128 {
    ids.into_iter().fold(0u128, |key, id| key << 32 | id as u128)
}

/// Token n-gram counts scored with Stupid Backoff.
///
/// Scores are relative frequencies at the longest matching context, each
/// backoff step multiplying by `alpha`. They are not normalised.
#[derive(Debug, Clone)]
pub struct NgramModel {
    order: usize,
    alpha: f64,
    vocab: Vocab,
    // counts[k - 1] holds k-gram counts.
    counts: Vec<FxHashMap<u128, u64>>,
    total_tokens: u64,
}

impl NgramModel {
    pub fn new(order: usize, alpha: f64) -> Result<NgramModel, ModelError> {
        if !(1..=MAX_ORDER).contains(&order) {
            return Err(ModelError::InvalidOrder {
                got: order,
                max: MAX_ORDER,
            });
        }
        if !(alpha > 0.0 && alpha <= 1.0) {
            return Err(ModelError::InvalidAlpha(alpha));
        }
        let mut model = NgramModel {
            order,
            alpha,
            vocab: Vocab::default(),
            counts: vec![FxHashMap::default(); order],
            total_tokens: 0,
        };
        model.vocab.intern(START);
        model.vocab.intern(END);
        Ok(model)
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn total_tokens(&self) -> u64 {
        self.total_tokens
    }

    pub fn vocab_size(&self) -> usize {
        self.vocab.tokens.len()
    }

    pub fn token_id(&self, token: &str) -> Option<TokenId> {
        self.vocab.ids.get(token).copied()
    }

    pub fn token(&self, id: TokenId) -> &str {
        &self.vocab.tokens[id as usize]
    }

    pub fn start_id(&self) -> TokenId {
        0
    }

    pub fn end_id(&self) -> TokenId {
        1
    }

    /// Counts every k-gram (k up to the model order) of a raw token sequence.
    /// Start padding is never counted as a predicted token.
    pub fn add_sequence<S: AsRef<str>>(&mut self, tokens: &[S]) {
        let ids: Vec<TokenId> = tokens.iter().map(|t| self.vocab.intern(t.as_ref())).collect();
        self.add_ids(&ids);
    }

    /// Pads a sentence with `order - 1` start tokens and one end token.
    pub fn add_sentence<S: AsRef<str>>(&mut self, words: &[S]) {
        let mut ids = vec![self.start_id(); self.order.saturating_sub(1).max(1)];
        ids.extend(words.iter().map(|w| self.vocab.intern(w.as_ref())));
        ids.push(self.end_id());
        self.add_ids(&ids);
    }

    fn add_ids(&mut self, ids: &[TokenId]) {
        for i in 0..ids.len() {
            for k in 1..=self.order.min(ids.len() - i) {
                *self.counts[k - 1].entry(pack(ids[i..i + k].iter().copied())).or_default() += 1;
            }
        }
        self.total_tokens += ids.iter().filter(|&&id| id != self.start_id()).count() as u64;
    }

    pub(crate) fn set_count(&mut self, tokens: &[&str], count: u64) {
        let ids: Vec<TokenId> = tokens.iter().map(|t| self.vocab.intern(t)).collect();
        self.counts[ids.len() - 1].insert(pack(ids), count);
    }

    pub(crate) fn set_total_tokens(&mut self, total: u64) {
        self.total_tokens = total;
    }

    fn count_ids(&self, ids: &[TokenId]) -> u64 {
        if ids.is_empty() || ids.len() > self.order {
            return 0;
        }
        self.counts[ids.len() - 1]
            .get(&pack(ids.iter().copied()))
            .copied()
            .unwrap_or(0)
    }

    /// Occurrence count of a token tuple (0 for unknown tokens).
    pub fn count(&self, tokens: &[&str]) -> u64 {
        let ids: Option<Vec<TokenId>> = tokens.iter().map(|t| self.token_id(t)).collect();
        ids.map_or(0, |ids| self.count_ids(&ids))
    }

    /// Stupid Backoff score of `word` after `context`. Contexts longer than
    /// `order - 1` are truncated to their last tokens.
    pub fn sb_score(&self, context: &[&str], word: &str) -> f64 {
        let Some(w) = self.token_id(word) else {
            return 0.0;
        };
        // Unknown context tokens can only shorten the usable context.
        let usable = context
            .iter()
            .rev()
            .take(self.order - 1)
            .map_while(|t| self.token_id(t))
            .collect::<Vec<_>>();
        let ctx: Vec<TokenId> = usable.into_iter().rev().collect();
        let penalty = self.alpha.powi((context.len().min(self.order - 1) - ctx.len()) as i32);
        penalty * self.score_ids(&ctx, w)
    }

    /// [`NgramModel::sb_score`] over token ids.
    pub fn score_ids(&self, context: &[TokenId], word: TokenId) -> f64 {
        self.score_ids_with_order(context, word, self.order)
    }

    /// Scores as if the model were of a lower order; `order = 2` gives the
    /// bigram model used for rescoring.
    pub fn score_ids_with_order(&self, context: &[TokenId], word: TokenId, order: usize) -> f64 {
        let order = order.clamp(1, self.order);
        let ctx = &context[context.len().saturating_sub(order - 1)..];
        let mut factor = 1.0;
        let mut gram = Vec::with_capacity(ctx.len() + 1);
        for start in 0..ctx.len() {
            gram.clear();
            gram.extend_from_slice(&ctx[start..]);
            gram.push(word);
            let joint = self.count_ids(&gram);
            if joint > 0 {
                return factor * joint as f64 / self.count_ids(&ctx[start..]) as f64;
            }
            factor *= self.alpha;
        }
        if self.total_tokens == 0 {
            return 0.0;
        }
        factor * self.count_ids(&[word]) as f64 / self.total_tokens as f64
    }

    pub fn bigram_score(&self, prev: TokenId, word: TokenId) -> f64 {
        self.score_ids_with_order(&[prev], word, 2)
    }

    /// All stored n-grams as `(tokens, count)`, sorted by tokens.
    pub fn entries(&self) -> Vec<(Vec<&str>, u64)> {
        let mut out = Vec::new();
        for (k, table) in self.counts.iter().enumerate() {
            let len = k + 1;
            for (&key, &count) in table {
                let tokens = (0..len)
                    .rev()
                    .map(|i| self.token((key >> (32 * i)) as u32))
                    .collect();
                out.push((tokens, count));
            }
        }
        out.sort();
        out
    }
}
