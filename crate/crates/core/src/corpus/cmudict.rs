use std::collections::BTreeMap;
use std::fs::File;
use std::io::{BufRead, BufReader};
use std::path::Path;

use crate::error::CorpusError;
use crate::phonetics::Phoneme;

pub type Pronunciation = Vec<Phoneme>;

/// Lowercased word to its pronunciations, in file order.
pub type PronunciationDict = BTreeMap<String, Vec<Pronunciation>>;

/// Parses CMU Pronouncing Dictionary text.
///
/// Accepts both the classic `WORD  PH1 PH2` layout with `;;;` comments and the
/// newer lowercase `word PH1 PH2 # note` layout. Alternates written `WORD(2)`
/// are appended to the base word's list.
pub fn parse_cmudict<R: BufRead>(mut source: R) -> Result<PronunciationDict, CorpusError> {
    let mut dict = PronunciationDict::new();
    let mut buf = Vec::new();
    let mut line_no = 0;
    loop {
        buf.clear();
        let read = source
            .read_until(b'\n', &mut buf)
            .map_err(|e| CorpusError::io("<cmudict>", e))?;
        if read == 0 {
            break;
        }
        line_no += 1;
        let text = String::from_utf8_lossy(&buf);
        let line = text.trim();
        if line.is_empty() || line.starts_with(";;;") {
            continue;
        }
        let line = match line.find(" #") {
            Some(i) => line[..i].trim_end(),
            None => line,
        };

        let mut fields = line.split_whitespace();
        let head = fields.next().unwrap_or_default();
        let word = base_word(head).to_lowercase();
        if word.is_empty() {
            return Err(CorpusError::MalformedLine {
                line: line_no,
                message: format!("bad headword `{head}`"),
            });
        }
        let phones = fields
            .map(|raw| {
                Phoneme::parse(raw).map_err(|_| CorpusError::UnknownPhone {
                    line: line_no,
                    symbol: raw.to_string(),
                })
            })
            .collect::<Result<Vec<_>, _>>()?;
        if phones.is_empty() {
            return Err(CorpusError::MalformedLine {
                line: line_no,
                message: format!("`{head}` has no phones"),
            });
        }
        dict.entry(word).or_default().push(phones);
    }
    Ok(dict)
}

pub fn read_cmudict(path: &Path) -> Result<PronunciationDict, CorpusError> {
    let file = File::open(path).map_err(|e| CorpusError::io(path, e))?;
    parse_cmudict(BufReader::new(file)).map_err(|e| match e {
        CorpusError::Io { source, .. } => CorpusError::io(path, source),
        other => other,
    })
}

// "WORD(2)" -> "WORD"; anything else is returned unchanged.
fn base_word(head: &str) -> &str {
    if let Some(stripped) = head.strip_suffix(')') {
        if let Some(open) = stripped.rfind('(') {
            let inner = &stripped[open + 1..];
            if open > 0 && !inner.is_empty() && inner.bytes().all(|b| b.is_ascii_digit()) {
                return &stripped[..open];
            }
        }
    }
    head
}
