use std::collections::{HashMap, HashSet};
use std::fs::{self, File};
use std::io::{BufRead, BufReader};
use std::path::{Path, PathBuf};

use super::PosTag;
use crate::error::CorpusError;

const BROWN_UNIVERSAL: &str = include_str!("../../data/brown-universal.map");

/// Maps Brown corpus tags onto the universal tag set.
#[derive(Debug, Clone)]
pub struct TagMap {
    map: HashMap<String, PosTag>,
}

impl TagMap {
    /// Reads a two-column `brown_tag universal_tag` table. Blank lines and
    /// lines starting with `#` are skipped.
    pub fn parse<R: BufRead>(source: R) -> Result<TagMap, CorpusError> {
        let mut map = HashMap::new();
        for (i, line) in source.lines().enumerate() {
            let line = line.map_err(|e| CorpusError::io("<tag map>", e))?;
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let mut cols = line.split_whitespace();
            let (Some(brown), Some(universal), None) = (cols.next(), cols.next(), cols.next())
            else {
                return Err(CorpusError::BadTagMap {
                    line: i + 1,
                    message: format!("expected two columns, got `{line}`"),
                });
            };
            let tag = universal.parse().map_err(|e| CorpusError::BadTagMap {
                line: i + 1,
                message: format!("{e}"),
            })?;
            map.insert(brown.to_ascii_lowercase(), tag);
        }
        Ok(TagMap { map })
    }

    pub fn read(path: &Path) -> Result<TagMap, CorpusError> {
        let file = File::open(path).map_err(|e| CorpusError::io(path, e))?;
        TagMap::parse(BufReader::new(file))
    }

    /// The bundled Brown to universal table.
    pub fn brown() -> TagMap {
        TagMap::parse(BROWN_UNIVERSAL.as_bytes()).expect("bundled tag map is well formed")
    }

    pub fn raw_table() -> &'static str {
        BROWN_UNIVERSAL
    }

    /// Looks up a Brown tag. Compound tags such as `np-tl` or `pps+bez` fall
    /// back to their base; anything still unknown becomes `X`.
    pub fn map(&self, brown_tag: &str) -> PosTag {
        let tag = brown_tag.to_ascii_lowercase();
        if let Some(&t) = self.map.get(&tag) {
            return t;
        }
        if !tag.bytes().any(|b| b.is_ascii_alphabetic()) {
            return PosTag::X;
        }
        let split = tag
            .char_indices()
            .skip(1)
            .find(|&(_, c)| c == '+' || c == '-');
        let base = match split {
            Some((i, _)) => &tag[..i],
            None => &tag,
        };
        self.map
            .get(base)
            .or_else(|| self.map.get(base.trim_end_matches('*')))
            .copied()
            .unwrap_or(PosTag::X)
    }
}

impl Default for TagMap {
    fn default() -> Self {
        TagMap::brown()
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct TaggedSentence {
    pub tokens: Vec<(String, PosTag)>,
}

impl TaggedSentence {
    pub fn tags(&self) -> impl Iterator<Item = PosTag> + '_ {
        self.tokens.iter().map(|(_, t)| *t)
    }

    pub fn words(&self) -> impl Iterator<Item = &str> + '_ {
        self.tokens.iter().map(|(w, _)| w.as_str())
    }
}

/// Parses `word/TAG` text with one sentence per line.
pub fn parse_tagged_corpus<R: BufRead>(
    source: R,
    tag_map: &TagMap,
) -> Result<Vec<TaggedSentence>, CorpusError> {
    let mut corpus = TaggedCorpus::default();
    corpus.ingest(source, tag_map)?;
    Ok(corpus.sentences)
}

/// Sentences from one or more tagged files, plus the count of distinct
/// surface forms before lowercasing.
#[derive(Debug, Clone, Default)]
pub struct TaggedCorpus {
    pub sentences: Vec<TaggedSentence>,
    raw_types: HashSet<String>,
}

impl TaggedCorpus {
    pub fn ingest<R: BufRead>(&mut self, source: R, tag_map: &TagMap) -> Result<(), CorpusError> {
        for (i, line) in source.lines().enumerate() {
            let line = line.map_err(|e| CorpusError::io("<corpus>", e))?;
            let mut tokens = Vec::new();
            for (pos, token) in line.split_whitespace().enumerate() {
                let (word, tag) = match token.rfind('/') {
                    Some(slash) if slash > 0 && slash + 1 < token.len() => {
                        (&token[..slash], &token[slash + 1..])
                    }
                    _ => {
                        return Err(CorpusError::MissingTag {
                            line: i + 1,
                            position: pos + 1,
                            token: token.to_string(),
                        })
                    }
                };
                if !self.raw_types.contains(word) {
                    self.raw_types.insert(word.to_string());
                }
                tokens.push((word.to_lowercase(), tag_map.map(tag)));
            }
            if !tokens.is_empty() {
                self.sentences.push(TaggedSentence { tokens });
            }
        }
        Ok(())
    }

    pub fn read_file(&mut self, path: &Path, tag_map: &TagMap) -> Result<(), CorpusError> {
        let file = File::open(path).map_err(|e| CorpusError::io(path, e))?;
        self.ingest(BufReader::new(file), tag_map).map_err(|e| match e {
            CorpusError::MissingTag {
                line,
                position,
                token,
            } => CorpusError::MalformedLine {
                line,
                message: format!("{}: token {position} `{token}` has no tag", path.display()),
            },
            CorpusError::Io { source, .. } => CorpusError::io(path, source),
            other => other,
        })
    }

    /// Reads a single file, or every corpus file of a directory in name order.
    pub fn read_path(path: &Path, tag_map: &TagMap) -> Result<TaggedCorpus, CorpusError> {
        let mut corpus = TaggedCorpus::default();
        for file in corpus_files(path)? {
            corpus.read_file(&file, tag_map)?;
        }
        Ok(corpus)
    }

    pub fn raw_type_count(&self) -> usize {
        self.raw_types.len()
    }
}

/// Files making up a corpus directory. An NLTK-style `cats.txt` index, when
/// present, names the files; otherwise every non-hidden regular file is used.
pub fn corpus_files(path: &Path) -> Result<Vec<PathBuf>, CorpusError> {
    let meta = fs::metadata(path).map_err(|e| CorpusError::io(path, e))?;
    if meta.is_file() {
        return Ok(vec![path.to_path_buf()]);
    }
    let index = path.join("cats.txt");
    let mut files = if index.is_file() {
        let text = fs::read_to_string(&index).map_err(|e| CorpusError::io(&index, e))?;
        text.lines()
            .filter_map(|l| l.split_whitespace().next())
            .map(|id| path.join(id))
            .collect::<Vec<_>>()
    } else {
        let mut files = Vec::new();
        for entry in fs::read_dir(path).map_err(|e| CorpusError::io(path, e))? {
            let entry = entry.map_err(|e| CorpusError::io(path, e))?;
            let hidden = entry.file_name().to_string_lossy().starts_with('.');
            if !hidden && entry.path().is_file() {
                files.push(entry.path());
            }
        }
        files
    };
    files.sort();
    if files.is_empty() {
        return Err(CorpusError::EmptyInput("corpus directory"));
    }
    Ok(files)
}
