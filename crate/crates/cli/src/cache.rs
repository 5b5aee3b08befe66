//! On-disk model cache keyed by a hash of every input and hyperparameter.

use std::fs::{self, File};
use std::io::{BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};

use anyhow::{Context, Result};
use serde_json::json;
use sha2::{Digest, Sha256};

use majorsys::corpus::{corpus_files, read_cmudict, Lexicon, TagMap, TaggedCorpus};
use majorsys::langmodel::{LanguageModels, ModelParams};
use majorsys::Engine;

const FORMAT: &str = "majorsys-cache 1";
const MANIFEST: &str = "manifest.json";
const LEXICON: &str = "lexicon.tsv";
const MODELS: &str = "models.tsv";

#[derive(Debug, Clone)]
pub struct Inputs {
    pub cmudict: PathBuf,
    pub corpus: PathBuf,
    /// `None` selects the bundled Brown mapping.
    pub tagmap: Option<PathBuf>,
    pub params: ModelParams,
}

impl Inputs {
    fn tag_map(&self) -> Result<TagMap> {
        match &self.tagmap {
            Some(path) => Ok(TagMap::read(path)?),
            None => Ok(TagMap::brown()),
        }
    }

    /// Hex SHA-256 over the cache format, the input bytes and the parameters.
    pub fn key(&self) -> Result<String> {
        let mut h = Sha256::new();
        let mut section = |name: &str, bytes: &[u8]| {
            h.update(name.as_bytes());
            h.update((bytes.len() as u64).to_le_bytes());
            h.update(bytes);
        };
        section("format", FORMAT.as_bytes());
        section("cmudict", &read(&self.cmudict)?);
        match &self.tagmap {
            Some(path) => section("tagmap", &read(path)?),
            None => section("tagmap", TagMap::raw_table().as_bytes()),
        }
        for file in corpus_files(&self.corpus)? {
            let name = file.file_name().map(|n| n.to_string_lossy().into_owned()).unwrap_or_default();
            section("corpus-file", name.as_bytes());
            section("corpus-bytes", &read(&file)?);
        }
        let p = &self.params;
        let t = &p.templates;
        let params = format!(
            "n={} alpha={} top_k={} min_words={} skippable={:?} selection={:?}",
            p.order,
            p.alpha,
            t.top_k,
            t.min_words,
            t.skippable.iter().collect::<Vec<_>>(),
            t.selection
        );
        section("params", params.as_bytes());
        Ok(hex::encode(h.finalize()))
    }

    pub fn build(&self) -> Result<Engine> {
        let pron = read_cmudict(&self.cmudict)?;
        let corpus = TaggedCorpus::read_path(&self.corpus, &self.tag_map()?)?;
        Ok(Engine::build(&pron, &corpus, &self.params)?)
    }
}

fn read(path: &Path) -> Result<Vec<u8>> {
    fs::read(path).with_context(|| format!("cannot read {}", path.display()))
}

pub fn write(dir: &Path, key: &str, engine: &Engine) -> Result<()> {
    fs::create_dir_all(dir).with_context(|| format!("cannot create {}", dir.display()))?;
    let create = |name: &str| -> Result<BufWriter<File>> {
        let path = dir.join(name);
        Ok(BufWriter::new(
            File::create(&path).with_context(|| format!("cannot write {}", path.display()))?,
        ))
    };
    let mut out = create(LEXICON)?;
    engine.lexicon.write_cache(&mut out)?;
    out.flush()?;
    let mut out = create(MODELS)?;
    engine.models.write_cache(&mut out)?;
    out.flush()?;
    // the manifest goes last so a half-written cache is never trusted
    let manifest = json!({ "format": FORMAT, "key": key });
    fs::write(dir.join(MANIFEST), serde_json::to_string_pretty(&manifest)? + "\n")?;
    Ok(())
}

fn stored_key(dir: &Path) -> Option<String> {
    let text = fs::read_to_string(dir.join(MANIFEST)).ok()?;
    let value: serde_json::Value = serde_json::from_str(&text).ok()?;
    value.get("key")?.as_str().map(str::to_string)
}

fn read_cached(dir: &Path) -> Result<Engine> {
    let open = |name: &str| -> Result<BufReader<File>> {
        let path = dir.join(name);
        Ok(BufReader::new(
            File::open(&path).with_context(|| format!("cannot read {}", path.display()))?,
        ))
    };
    let lexicon = Lexicon::read_cache(open(LEXICON)?)?;
    let models = LanguageModels::read_cache(open(MODELS)?)?;
    Ok(Engine::from_parts(lexicon, models))
}

/// Loads the engine from `cache` when its key matches, otherwise builds
/// and refreshes the cache. Notices go to `notices`.
pub fn load(inputs: &Inputs, cache: Option<&Path>, notices: &mut dyn Write) -> Result<Engine> {
    let Some(dir) = cache else {
        return inputs.build();
    };
    let key = inputs.key()?;
    match stored_key(dir) {
        Some(stored) if stored == key => match read_cached(dir) {
            Ok(engine) => return Ok(engine),
            Err(e) => writeln!(notices, "note: cache in {} is unreadable ({e:#}); rebuilding", dir.display())?,
        },
        Some(_) => writeln!(notices, "note: cache in {} is stale; rebuilding", dir.display())?,
        None => writeln!(notices, "note: no model cache in {}; building", dir.display())?,
    }
    let engine = inputs.build()?;
    write(dir, &key, &engine)?;
    Ok(engine)
}
