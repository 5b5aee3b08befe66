use std::collections::{BTreeMap, HashMap};
use std::io::{BufRead, Write};

use super::{PosTag, PronunciationDict, TaggedCorpus, TaggedSentence};
use crate::error::CorpusError;
use crate::phonetics::{pronunciation_to_digits, DigitString, Phoneme};

const CACHE_HEADER: &str = "#majorsys-lexicon 1";

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LexiconEntry {
    pub word: String,
    /// Primary pronunciation first.
    pub pronunciations: Vec<Vec<Phoneme>>,
    pub canonical_digits: DigitString,
    pub dominant_pos: PosTag,
    pub frequency: u64,
}

impl LexiconEntry {
    /// Digit strings of the alternate pronunciations that differ from the
    /// canonical one.
    pub fn alternate_digits(&self) -> Vec<DigitString> {
        let mut out: Vec<DigitString> = self.pronunciations[1..]
            .iter()
            .map(|p| pronunciation_to_digits(p))
            .filter(|d| *d != self.canonical_digits)
            .collect();
        out.sort();
        out.dedup();
        out
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct CorpusStats {
    pub sentences: usize,
    pub tokens: u64,
    /// Distinct lowercased tokens.
    pub types: usize,
    /// Distinct tokens before lowercasing, when known.
    pub raw_types: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Lexicon {
    entries: BTreeMap<String, LexiconEntry>,
    pub stats: CorpusStats,
}

/// Intersects the pronunciation dictionary with the corpus vocabulary.
pub fn build_lexicon(
    pron: &PronunciationDict,
    sentences: &[TaggedSentence],
) -> Result<Lexicon, CorpusError> {
    if pron.is_empty() {
        return Err(CorpusError::EmptyInput("pronunciation dictionary"));
    }
    if sentences.is_empty() {
        return Err(CorpusError::EmptyInput("tagged corpus"));
    }

    let mut tag_counts: HashMap<&str, [u64; 12]> = HashMap::new();
    let mut tokens = 0u64;
    for sentence in sentences {
        for (word, tag) in &sentence.tokens {
            tag_counts.entry(word.as_str()).or_default()[tag.index()] += 1;
            tokens += 1;
        }
    }

    let mut entries = BTreeMap::new();
    for (word, counts) in &tag_counts {
        let Some(prons) = pron.get(*word) else {
            continue;
        };
        // max_by_key keeps the last maximum, so walk tags in reverse to
        // prefer the alphabetically first one.
        let dominant_pos = PosTag::ALL
            .into_iter()
            .rev()
            .max_by_key(|t| counts[t.index()])
            .expect("twelve tags");
        entries.insert(
            word.to_string(),
            LexiconEntry {
                word: word.to_string(),
                pronunciations: prons.clone(),
                canonical_digits: pronunciation_to_digits(&prons[0]),
                dominant_pos,
                frequency: counts.iter().sum(),
            },
        );
    }
    if entries.is_empty() {
        return Err(CorpusError::EmptyIntersection);
    }

    Ok(Lexicon {
        entries,
        stats: CorpusStats {
            sentences: sentences.len(),
            tokens,
            types: tag_counts.len(),
            raw_types: 0,
        },
    })
}

impl Lexicon {
    pub fn from_corpus(pron: &PronunciationDict, corpus: &TaggedCorpus) -> Result<Lexicon, CorpusError> {
        let mut lexicon = build_lexicon(pron, &corpus.sentences)?;
        lexicon.stats.raw_types = corpus.raw_type_count();
        Ok(lexicon)
    }

    /// Builds directly from entries; used by tests and fixtures.
    pub fn from_entries(entries: impl IntoIterator<Item = LexiconEntry>) -> Lexicon {
        let entries: BTreeMap<_, _> = entries.into_iter().map(|e| (e.word.clone(), e)).collect();
        let tokens = entries.values().map(|e| e.frequency).sum();
        let types = entries.len();
        Lexicon {
            entries,
            stats: CorpusStats {
                sentences: 0,
                tokens,
                types,
                raw_types: types,
            },
        }
    }

    pub fn get(&self, word: &str) -> Option<&LexiconEntry> {
        self.entries.get(word)
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Entries in word order.
    pub fn iter(&self) -> impl Iterator<Item = &LexiconEntry> {
        self.entries.values()
    }

    /// Writes the versioned, tab-separated cache form.
    pub fn write_cache<W: Write>(&self, mut out: W) -> std::io::Result<()> {
        writeln!(out, "{CACHE_HEADER}")?;
        let s = &self.stats;
        writeln!(
            out,
            "#stats\t{}\t{}\t{}\t{}",
            s.sentences, s.tokens, s.types, s.raw_types
        )?;
        for e in self.entries.values() {
            let prons: Vec<String> = e
                .pronunciations
                .iter()
                .map(|p| p.iter().map(|ph| ph.symbol()).collect::<Vec<_>>().join(" "))
                .collect();
            writeln!(
                out,
                "{}\t{}\t{}\t{}\t{}",
                e.word,
                e.canonical_digits,
                e.dominant_pos,
                e.frequency,
                prons.join("|")
            )?;
        }
        Ok(())
    }

    pub fn read_cache<R: BufRead>(source: R) -> Result<Lexicon, CorpusError> {
        let mut lines = source.lines().enumerate();
        let mut next_line = |what: &str| -> Result<String, CorpusError> {
            match lines.next() {
                Some((_, Ok(l))) => Ok(l),
                Some((_, Err(e))) => Err(CorpusError::io("<lexicon cache>", e)),
                None => Err(CorpusError::CacheFormat(format!("missing {what}"))),
            }
        };
        let header = next_line("header")?;
        if header != CACHE_HEADER {
            return Err(CorpusError::CacheFormat(header));
        }
        let stats_line = next_line("stats")?;
        let nums: Vec<u64> = stats_line
            .strip_prefix("#stats\t")
            .ok_or_else(|| CorpusError::CacheFormat(stats_line.clone()))?
            .split('\t')
            .map(|n| n.parse::<u64>())
            .collect::<Result<_, _>>()
            .map_err(|_| CorpusError::CacheFormat(stats_line.clone()))?;
        let [sentences, tokens, types, raw_types] = nums[..] else {
            return Err(CorpusError::CacheFormat(stats_line));
        };

        let mut entries = BTreeMap::new();
        for (i, line) in lines {
            let line = line.map_err(|e| CorpusError::io("<lexicon cache>", e))?;
            let entry = parse_entry(&line).ok_or_else(|| CorpusError::MalformedLine {
                line: i + 1,
                message: format!("bad lexicon record `{line}`"),
            })?;
            entries.insert(entry.word.clone(), entry);
        }
        Ok(Lexicon {
            entries,
            stats: CorpusStats {
                sentences: sentences as usize,
                tokens,
                types: types as usize,
                raw_types: raw_types as usize,
            },
        })
    }
}

fn parse_entry(line: &str) -> Option<LexiconEntry> {
    let cols: Vec<&str> = line.split('\t').collect();
    let [word, digits, pos, freq, prons] = cols[..] else {
        return None;
    };
    let pronunciations = prons
        .split('|')
        .map(|p| p.split(' ').map(Phoneme::parse).collect::<Result<Vec<_>, _>>())
        .collect::<Result<Vec<_>, _>>()
        .ok()?;
    let canonical_digits: DigitString = digits.parse().ok()?;
    if pronunciations.is_empty() || pronunciation_to_digits(&pronunciations[0]) != canonical_digits
    {
        return None;
    }
    Some(LexiconEntry {
        word: word.to_string(),
        pronunciations,
        canonical_digits,
        dominant_pos: pos.parse().ok()?,
        frequency: freq.parse().ok()?,
    })
}
