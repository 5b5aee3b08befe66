use super::ngram::{NgramModel, TokenId};
use crate::corpus::{PosTag, TaggedSentence};
use crate::error::ModelError;

/// Two preceding tags; `None` stands for sentence-start padding.
pub type TagContext = [Option<PosTag>; 2];

pub const SENTENCE_START: TagContext = [None, None];

/// Trigram model over universal tags, trained without punctuation.
#[derive(Debug, Clone)]
pub struct PosTrigramModel {
    model: NgramModel,
}

impl PosTrigramModel {
    pub fn train(sentences: &[TaggedSentence], alpha: f64) -> Result<PosTrigramModel, ModelError> {
        PosTrigramModel::from_tag_sequences(sentences.iter().map(|s| s.tags().collect::<Vec<_>>()), alpha)
    }

    pub fn from_tag_sequences<I>(sequences: I, alpha: f64) -> Result<PosTrigramModel, ModelError>
    where
        I: IntoIterator<Item = Vec<PosTag>>,
    {
        let mut model = NgramModel::new(3, alpha)?;
        for seq in sequences {
            let labels: Vec<&str> = seq
                .iter()
                .filter(|&&t| t != PosTag::Punct)
                .map(|t| t.label())
                .collect();
            if !labels.is_empty() {
                model.add_sentence(&labels);
            }
        }
        Ok(PosTrigramModel { model })
    }

    pub(crate) fn from_ngram(model: NgramModel) -> PosTrigramModel {
        PosTrigramModel { model }
    }

    pub fn ngram(&self) -> &NgramModel {
        &self.model
    }

    fn context_ids(&self, context: &TagContext) -> Vec<TokenId> {
        // A tag never seen in training cannot extend the context.
        let ids: Vec<Option<TokenId>> = context
            .iter()
            .map(|t| match t {
                None => Some(self.model.start_id()),
                Some(tag) => self.model.token_id(tag.label()),
            })
            .collect();
        let usable = ids.iter().rev().take_while(|id| id.is_some()).count();
        ids[ids.len() - usable..].iter().map(|id| id.unwrap()).collect()
    }

    pub fn score(&self, context: &TagContext, tag: PosTag) -> f64 {
        let Some(id) = self.model.token_id(tag.label()) else {
            return 0.0;
        };
        let ctx = self.context_ids(context);
        let penalty = self.model.alpha().powi((2 - ctx.len()) as i32);
        penalty * self.model.score_ids(&ctx, id)
    }

    /// Tags with a nonzero score after `context`, best first; ties in
    /// alphabetical order.
    pub fn most_likely_tags(&self, context: &TagContext) -> Vec<PosTag> {
        let mut scored: Vec<(f64, PosTag)> = PosTag::ALL
            .into_iter()
            .map(|t| (self.score(context, t), t))
            .filter(|(s, _)| *s > 0.0)
            .collect();
        scored.sort_by(|a, b| b.0.total_cmp(&a.0).then(a.1.cmp(&b.1)));
        scored.into_iter().map(|(_, t)| t).collect()
    }
}

/// Slides a tag context forward by one tag.
pub fn push_tag(context: &TagContext, tag: PosTag) -> TagContext {
    [context[1], Some(tag)]
}
