//! Word n-gram model, POS trigram model and sentence templates.

mod ngram;
mod pos;
mod templates;

use std::io::{BufRead, Write};

pub use ngram::{NgramModel, TokenId, END, MAX_ORDER, START};
pub use pos::{push_tag, PosTrigramModel, TagContext, SENTENCE_START};
pub use templates::{
    default_skippable, extract_templates, extract_templates_with, passes_filters, sample_template,
    SentenceTemplate, TemplateOptions, TemplateSelection, TemplateStore, SKIPPABLE,
};

use crate::corpus::{PosTag, TaggedSentence};
use crate::error::ModelError;

const CACHE_HEADER: &str = "#majorsys-model 1";

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModelParams {
    pub order: usize,
    pub alpha: f64,
    pub templates: TemplateOptions,
}

impl Default for ModelParams {
    fn default() -> Self {
        ModelParams {
            order: 3,
            alpha: 0.1,
            templates: TemplateOptions::default(),
        }
    }
}

/// Everything trained from the tagged corpus.
#[derive(Debug, Clone)]
pub struct LanguageModels {
    pub words: NgramModel,
    pub pos: PosTrigramModel,
    pub templates: TemplateStore,
}

/// Word model over a corpus, one padded sentence per input sentence.
/// Punctuation tokens are dropped so that sentence ends follow words.
pub fn train_word_model(
    sentences: &[TaggedSentence],
    order: usize,
    alpha: f64,
) -> Result<NgramModel, ModelError> {
    let mut model = NgramModel::new(order, alpha)?;
    for s in sentences {
        let words: Vec<&str> = s
            .tokens
            .iter()
            .filter(|(_, t)| *t != PosTag::Punct)
            .map(|(w, _)| w.as_str())
            .collect();
        if !words.is_empty() {
            model.add_sentence(&words);
        }
    }
    Ok(model)
}

impl LanguageModels {
    pub fn train(sentences: &[TaggedSentence], params: &ModelParams) -> Result<LanguageModels, ModelError> {
        if sentences.is_empty() {
            return Err(ModelError::NoSentences);
        }
        Ok(LanguageModels {
            words: train_word_model(sentences, params.order, params.alpha)?,
            pos: PosTrigramModel::train(sentences, params.alpha)?,
            templates: extract_templates_with(sentences, &params.templates)?,
        })
    }

    /// Writes the versioned model cache. Output is byte-identical for
    /// identical models.
    pub fn write_cache<W: Write>(&self, mut out: W) -> std::io::Result<()> {
        writeln!(out, "{CACHE_HEADER}")?;
        write_ngram(&mut out, "words", &self.words)?;
        write_ngram(&mut out, "pos", self.pos.ngram())?;
        writeln!(out, "[templates]\t{}", self.templates.len())?;
        for t in self.templates.templates() {
            writeln!(out, "{}\t{}", t.frequency, t.label())?;
        }
        Ok(())
    }

    pub fn read_cache<R: BufRead>(source: R) -> Result<LanguageModels, ModelError> {
        let mut reader = CacheReader {
            lines: source.lines(),
            line: 0,
        };
        let header = reader.next()?;
        if header != CACHE_HEADER {
            return Err(reader.error(format!("unsupported header `{header}`")));
        }
        let words = read_ngram(&mut reader, "words")?;
        let pos = PosTrigramModel::from_ngram(read_ngram(&mut reader, "pos")?);
        let n = reader.section("templates")?;
        let mut templates = Vec::with_capacity(n);
        for _ in 0..n {
            let line = reader.next()?;
            let (freq, tags) = line
                .split_once('\t')
                .ok_or_else(|| reader.error("expected `frequency<TAB>tags`"))?;
            let frequency = freq.parse().map_err(|_| reader.error("bad frequency"))?;
            let tags = tags
                .split(' ')
                .map(|t| t.parse::<PosTag>())
                .collect::<Result<Vec<_>, _>>()
                .map_err(|e| reader.error(e.to_string()))?;
            templates.push(SentenceTemplate { tags, frequency });
        }
        Ok(LanguageModels {
            words,
            pos,
            templates: TemplateStore::new(templates)?,
        })
    }
}

fn write_ngram<W: Write>(out: &mut W, name: &str, model: &NgramModel) -> std::io::Result<()> {
    let entries = model.entries();
    writeln!(
        out,
        "[{name}]\t{}\t{}\t{}\t{}",
        entries.len(),
        model.order(),
        model.alpha(),
        model.total_tokens()
    )?;
    for (tokens, count) in entries {
        writeln!(out, "{count}\t{}", tokens.join(" "))?;
    }
    Ok(())
}

fn read_ngram<R: BufRead>(reader: &mut CacheReader<R>, name: &str) -> Result<NgramModel, ModelError> {
    let line = reader.next()?;
    let fields: Vec<&str> = line
        .strip_prefix(&format!("[{name}]\t"))
        .ok_or_else(|| reader.error(format!("expected [{name}] section")))?
        .split('\t')
        .collect();
    let [n, order, alpha, total] = fields[..] else {
        return Err(reader.error("bad section header"));
    };
    let bad = |_| reader.error("bad section header");
    let n: usize = n.parse().map_err(bad)?;
    let order: usize = order.parse().map_err(bad)?;
    let alpha: f64 = alpha.parse().map_err(|_| reader.error("bad alpha"))?;
    let total: u64 = total.parse().map_err(bad)?;
    let mut model = NgramModel::new(order, alpha)?;
    for _ in 0..n {
        let line = reader.next()?;
        let (count, tokens) = line
            .split_once('\t')
            .ok_or_else(|| reader.error("expected `count<TAB>tokens`"))?;
        let count = count.parse().map_err(|_| reader.error("bad count"))?;
        let tokens: Vec<&str> = tokens.split(' ').collect();
        if tokens.is_empty() || tokens.len() > order {
            return Err(reader.error("n-gram longer than model order"));
        }
        model.set_count(&tokens, count);
    }
    model.set_total_tokens(total);
    Ok(model)
}

struct CacheReader<R> {
    lines: std::io::Lines<R>,
    line: usize,
}

impl<R: BufRead> CacheReader<R> {
    fn next(&mut self) -> Result<String, ModelError> {
        self.line += 1;
        match self.lines.next() {
            Some(l) => Ok(l?),
            None => Err(self.error("unexpected end of file")),
        }
    }

    fn section(&mut self, name: &str) -> Result<usize, ModelError> {
        let line = self.next()?;
        line.strip_prefix(&format!("[{name}]\t"))
            .and_then(|n| n.parse().ok())
            .ok_or_else(|| self.error(format!("expected [{name}] section")))
    }

    fn error(&self, message: impl Into<String>) -> ModelError {
        ModelError::CacheFormat {
            line: self.line,
            message: message.into(),
        }
    }
}
