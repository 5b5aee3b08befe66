//! Greedy baselines: every step takes a word from the set that encodes the
//! most digits possible.

use rand::seq::SliceRandom;
use rand::Rng;

use super::{encoded, Encoding, Sentence};
use crate::error::EncodeError;
use crate::index::{EncodingIndex, WordId};
use crate::phonetics::DigitString;

fn greedy<F>(digits: &DigitString, index: &EncodingIndex, mut choose: F) -> Result<Encoding, EncodeError>
where
    F: FnMut(&[WordId]) -> WordId,
{
    let mut words = Vec::new();
    let mut pos = 0;
    let all = digits.as_slice();
    while pos < all.len() {
        let (k, maximal) = index
            .max_prefix_candidates(&all[pos..])
            .map_err(|_| EncodeError::Unencodable {
                position: pos,
                remaining: digits.slice(pos..all.len()).to_string(),
            })?;
        words.push(encoded(index, choose(&maximal), None));
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

/// Uniform choice among the maximal words.
pub fn encode_random<R: Rng + ?Sized>(
    digits: &DigitString,
    index: &EncodingIndex,
    rng: &mut R,
) -> Result<Encoding, EncodeError> {
    greedy(digits, index, |maximal| *maximal.choose(rng).expect("maximal set is nonempty"))
}

/// The most frequent maximal word; ties alphabetical.
pub fn encode_unigram(digits: &DigitString, index: &EncodingIndex) -> Result<Encoding, EncodeError> {
    greedy(digits, index, |maximal| {
        *maximal
            .iter()
            .min_by(|&&a, &&b| {
                let (wa, wb) = (index.word(a), index.word(b));
                wb.frequency.cmp(&wa.frequency).then_with(|| wa.word.cmp(&wb.word))
            })
            .expect("maximal set is nonempty")
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::PosTag::*;
    use crate::encoders::fixtures::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn toy() -> EncodingIndex {
        EncodingIndex::from_words([
            word("tent", "121", Noun, 5),
            word("tin", "12", Noun, 50),
            word("toe", "1", Noun, 100),
        ])
    }

    #[test]
    fn random_takes_unique_maximal_word() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let e = encode_random(&digits("121"), &toy(), &mut rng).unwrap();
        assert_eq!(words_of(&e), ["tent"]);
        assert_eq!(e.spans(), e.source);
    }

    #[test]
    fn empty_input() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let e = encode_random(&digits(""), &toy(), &mut rng).unwrap();
        assert_eq!(e.word_count(), 0);
        assert!(e.sentences.is_empty());
        assert_eq!(encode_unigram(&digits(""), &toy()).unwrap().word_count(), 0);
    }

    #[test]
    fn unigram_prefers_frequent_words() {
        let idx = EncodingIndex::from_words([
            word("tent", "121", Noun, 3),
            word("dent", "121", Noun, 10),
            word("toe", "1", Noun, 100),
        ]);
        assert_eq!(words_of(&encode_unigram(&digits("121"), &idx).unwrap()), ["dent"]);
        assert_eq!(words_of(&encode_unigram(&digits("121"), &toy()).unwrap()), ["tent"]);
    }

    #[test]
    fn unigram_ties_are_alphabetical() {
        let idx = EncodingIndex::from_words([word("tot", "11", Noun, 4), word("dad", "11", Noun, 4)]);
        assert_eq!(words_of(&encode_unigram(&digits("1111"), &idx).unwrap()), ["dad", "dad"]);
    }

    #[test]
    fn unencodable_digit() {
        let err = encode_unigram(&digits("1219"), &toy()).unwrap_err();
        assert_eq!(
            err,
            EncodeError::Unencodable {
                position: 3,
                remaining: "9".into()
            }
        );
    }

    #[test]
    fn random_is_seeded() {
        let idx = EncodingIndex::from_words([
            word("tea", "1", Noun, 1),
            word("toe", "1", Noun, 1),
            word("tie", "1", Verb, 1),
        ]);
        let run = |seed| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            words_of(&encode_random(&digits("1111111111"), &idx, &mut rng).unwrap())
        };
        assert_eq!(run(9), run(9));
        assert_eq!(run(9).len(), 10);
    }
}
