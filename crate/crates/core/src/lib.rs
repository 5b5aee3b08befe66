//! Major-system mnemonic encoders: turn digit strings into words whose
//! consonant sounds spell the digits, and decode them back.

pub mod corpus;
pub mod encoders;
pub mod error;
pub mod index;
pub mod langmodel;
pub mod phonetics;
pub mod verify;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use corpus::{Lexicon, PronunciationDict, TaggedCorpus};
use encoders::{EncoderConfig, EncoderKind, Encoding, TokenMap, WordScorer};
use error::{CorpusError, EncodeError, ModelError};
use index::EncodingIndex;
use langmodel::{LanguageModels, ModelParams};
use phonetics::DigitString;

pub use encoders::{NgramMode, WordRecord};
pub use phonetics::{MajorMap, Phoneme};

#[derive(Debug, thiserror::Error)]
pub enum BuildError {
    #[error(transparent)]
    Corpus(#[from] CorpusError),
    #[error(transparent)]
    Model(#[from] ModelError),
}

/// A lexicon, its digit index and the trained models, ready to encode.
#[derive(Debug, Clone)]
pub struct Engine {
    pub lexicon: Lexicon,
    pub index: EncodingIndex,
    pub models: LanguageModels,
    tokens: TokenMap,
}

impl Engine {
    pub fn build(
        pron: &PronunciationDict,
        corpus: &TaggedCorpus,
        params: &ModelParams,
    ) -> Result<Engine, BuildError> {
        let lexicon = Lexicon::from_corpus(pron, corpus)?;
        let models = LanguageModels::train(&corpus.sentences, params)?;
        Ok(Engine::from_parts(lexicon, models))
    }

    pub fn from_parts(lexicon: Lexicon, models: LanguageModels) -> Engine {
        let index = EncodingIndex::build(&lexicon);
        let tokens = TokenMap::new(&index, &models.words);
        Engine {
            lexicon,
            index,
            models,
            tokens,
        }
    }

    pub fn scorer(&self) -> WordScorer<'_> {
        WordScorer::new(&self.index, &self.models.words, &self.tokens)
    }

    /// Runs the configured encoder. Randomness comes only from `config.seed`.
    pub fn encode(&self, digits: &DigitString, config: &EncoderConfig) -> Result<Encoding, EncodeError> {
        config.validate()?;
        let words = &self.models.words;
        if config.n != words.order() || config.alpha != words.alpha() {
            return Err(EncodeError::InvalidConfig(format!(
                "model was trained with n={} alpha={}, asked for n={} alpha={}",
                words.order(),
                words.alpha(),
                config.n,
                config.alpha
            )));
        }
        let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
        let scorer = self.scorer();
        match config.kind {
            EncoderKind::Random => encoders::encode_random(digits, &self.index, &mut rng),
            EncoderKind::Unigram => encoders::encode_unigram(digits, &self.index),
            EncoderKind::Ngram => encoders::encode_ngram(digits, &scorer, config, &mut rng),
            EncoderKind::Pos => encoders::encode_pos(digits, &scorer, &self.models.pos),
            EncoderKind::Chunk => encoders::encode_chunk(digits, &scorer, config),
            EncoderKind::Sentence => {
                encoders::encode_sentence(digits, &scorer, &self.models.templates, config, &mut rng)
            }
        }
    }
}
