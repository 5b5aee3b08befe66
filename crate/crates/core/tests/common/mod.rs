#![allow(dead_code)]

use std::path::PathBuf;

use majorsys::corpus::{read_cmudict, TagMap, TaggedCorpus};
use majorsys::langmodel::ModelParams;
use majorsys::Engine;

/// Data directory: `MAJORSYS_DATA` or the workspace `data/`.
pub fn data_dir() -> PathBuf {
    std::env::var_os("MAJORSYS_DATA")
        .map(PathBuf::from)
        .unwrap_or_else(|| PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../data"))
}

pub fn load_corpus() -> Result<TaggedCorpus, String> {
    let dir = data_dir();
    TaggedCorpus::read_path(&dir.join("brown"), &TagMap::brown()).map_err(|e| e.to_string())
}

pub fn build_engine() -> Result<Engine, String> {
    let dir = data_dir();
    let pron = read_cmudict(&dir.join("cmudict.dict")).map_err(|e| e.to_string())?;
    let corpus = load_corpus()?;
    Engine::build(&pron, &corpus, &ModelParams::default()).map_err(|e| e.to_string())
}
