use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use majorsys::encoders::{Encoding, WordRecord};
use tempfile::TempDir;

fn data() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../data")
}

fn majorsys(cache: &Path, args: &[&str]) -> Output {
    let data = data();
    Command::new(env!("CARGO_BIN_EXE_majorsys"))
        .arg("--cmudict")
        .arg(data.join("cmudict.dict"))
        .arg("--corpus")
        .arg(data.join("brown"))
        .arg("--cache")
        .arg(cache)
        .args(args)
        .output()
        .unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

const PI_50: &str = "31415926535897932384626433832795028841971693993751";

#[test]
fn usage_errors_exit_1() {
    let dir = TempDir::new().unwrap();
    for args in [
        &["encode", "12a"][..],
        &["encode", ""],
        &["encode", "121", "--encoder", "bogus"],
        &["encode", "121", "--power", "-1"],
        &["--n", "9", "encode", "121"],
        &["frobnicate"],
        &[],
    ] {
        let o = majorsys(dir.path(), args);
        assert_eq!(o.status.code(), Some(1), "{args:?}: {}", stderr(&o));
    }
    let help = majorsys(dir.path(), &["--help"]);
    assert_eq!(help.status.code(), Some(0));
    assert!(stdout(&help).contains("encode"));
}

#[test]
fn missing_data_exits_2_and_names_the_path() {
    let o = Command::new(env!("CARGO_BIN_EXE_majorsys"))
        .args(["--cmudict", "/nonexistent/cmudict.dict", "--no-cache", "encode", "121"])
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("/nonexistent/cmudict.dict"), "{}", stderr(&o));
}

#[test]
fn build_is_reproducible() {
    let dir = TempDir::new().unwrap();
    let first = majorsys(dir.path(), &["build"]);
    assert!(first.status.success(), "{}", stderr(&first));
    assert!(stdout(&first).contains("lexicon words"));
    let snapshot = |name: &str| fs::read(dir.path().join(name)).unwrap();
    let (lex, models) = (snapshot("lexicon.tsv"), snapshot("models.tsv"));
    let second = majorsys(dir.path(), &["build"]);
    assert!(second.status.success());
    assert_eq!(snapshot("lexicon.tsv"), lex);
    assert_eq!(snapshot("models.tsv"), models);
    assert_eq!(stdout(&first), stdout(&second));
}

#[test]
fn encode_and_decode() {
    let dir = TempDir::new().unwrap();
    let o = majorsys(dir.path(), &["encode", "86101521", "--encoder", "sentence", "--seed", "5"]);
    assert!(o.status.success(), "{}", stderr(&o));
    assert!(stdout(&o).contains("round trip: ok"));
    assert!(stderr(&o).contains("building"));

    let again = majorsys(dir.path(), &["encode", "86101521", "--encoder", "sentence", "--seed", "5"]);
    assert_eq!(stdout(&again), stdout(&o));
    assert!(!stderr(&again).contains("building"));

    let text = stdout(&o).lines().next().unwrap().to_string();
    let decoded = majorsys(dir.path(), &["decode", &text]);
    assert_eq!(stdout(&decoded).trim(), "86101521");

    for (words, digits) in [("officiate wasteland.", "86101521"), ("tent", "121"), ("Vouching wits widely and", "86101521")] {
        let o = majorsys(dir.path(), &["decode", words]);
        assert_eq!(stdout(&o).trim(), digits, "{words}");
    }
    let unknown = majorsys(dir.path(), &["decode", "tent", "qwzxv"]);
    assert_eq!(unknown.status.code(), Some(3));
    assert!(stderr(&unknown).contains("qwzxv"));
}

#[test]
fn json_records_rebuild_the_input() {
    let dir = TempDir::new().unwrap();
    for encoder in ["random", "unigram", "ngram", "pos", "chunk", "sentence"] {
        let o = majorsys(dir.path(), &["encode", PI_50, "--encoder", encoder, "--seed", "9", "--format", "json"]);
        assert!(o.status.success(), "{encoder}: {}", stderr(&o));
        let value: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
        let records: Vec<WordRecord> = serde_json::from_value(value["records"].clone()).unwrap();
        let rebuilt = Encoding::from_records(&records);
        assert_eq!(rebuilt.source.to_string(), PI_50);
        assert_eq!(value["text"].as_str().unwrap(), rebuilt.render());
        assert_eq!(value["round_trip"]["failure"], serde_json::Value::Null);
    }
}

#[test]
fn missing_seed_is_printed_and_replays() {
    let dir = TempDir::new().unwrap();
    let o = majorsys(dir.path(), &["encode", PI_50, "--encoder", "random"]);
    assert!(o.status.success());
    let seed = stderr(&o)
        .lines()
        .find_map(|l| l.strip_prefix("seed: ").map(str::to_string))
        .expect("seed line");
    let replay = majorsys(dir.path(), &["encode", PI_50, "--encoder", "random", "--seed", &seed]);
    assert_eq!(stdout(&replay), stdout(&o));
}

#[test]
fn compare_lists_every_encoder_in_order() {
    let dir = TempDir::new().unwrap();
    let o = majorsys(dir.path(), &["compare", PI_50, "--seed", "1", "--format", "table"]);
    assert!(o.status.success(), "{}", stderr(&o));
    let out = stdout(&o);
    let rows: Vec<&str> = out.lines().skip(1).collect();
    let names: Vec<&str> = rows.iter().map(|r| r.split('\t').next().unwrap()).collect();
    assert_eq!(names, ["random", "unigram", "ngram", "pos", "chunk", "sentence"]);
    assert!(rows.iter().all(|r| r.split('\t').nth(3) == Some("ok")));
    let again = majorsys(dir.path(), &["compare", PI_50, "--seed", "1", "--format", "table"]);
    assert_eq!(stdout(&again), out);
}

#[test]
fn changed_parameters_make_the_cache_stale() {
    let dir = TempDir::new().unwrap();
    assert!(majorsys(dir.path(), &["build"]).status.success());
    let o = majorsys(dir.path(), &["--n", "2", "encode", "121", "--seed", "0"]);
    assert!(o.status.success());
    assert!(stderr(&o).contains("stale"), "{}", stderr(&o));
    let stats = majorsys(dir.path(), &["--n", "2", "stats", "--format", "json"]);
    let value: serde_json::Value = serde_json::from_str(&stdout(&stats)).unwrap();
    assert_eq!(value["word_model_order"], 2);
    assert!(!stderr(&stats).contains("stale"));
}

const TINY_DICT: &str = "\
tea T IY1
toe T OW1
tent T EH1 N T
knee N IY1
men M EH1 N
ran R AE1 N
rat R AE1 T
mat M AE1 T
cat K AE1 T
";

const TINY_CORPUS: &str = "\
men/nns ran/vbd ./.
tent/nn ran/vbd ./.
men/nns ran/vbd tent/nn rat/nn mat/nn ./.
cat/nn ran/vbd men/nns rat/nn tent/nn ./.
";

#[test]
fn custom_inputs_and_tag_map() {
    let dir = TempDir::new().unwrap();
    let dict = dir.path().join("dict");
    let corpus = dir.path().join("corpus.txt");
    let tags = dir.path().join("tags.map");
    fs::write(&dict, TINY_DICT).unwrap();
    fs::write(&corpus, TINY_CORPUS).unwrap();
    fs::write(&tags, "nns\tNOUN\nnn\tNOUN\nvbd\tVERB\n.\t.\n").unwrap();
    let run = |args: &[&str]| {
        Command::new(env!("CARGO_BIN_EXE_majorsys"))
            .arg("--cmudict")
            .arg(&dict)
            .arg("--corpus")
            .arg(&corpus)
            .arg("--tagmap")
            .arg(&tags)
            .arg("--no-cache")
            .args(args)
            .output()
            .unwrap()
    };
    let o = run(&["encode", "12132", "--encoder", "unigram"]);
    assert!(o.status.success(), "{}", stderr(&o));
    assert!(stdout(&o).starts_with("Tent men"), "{}", stdout(&o));
    let bad = run(&["encode", "19", "--encoder", "unigram"]);
    assert_eq!(bad.status.code(), Some(3));
    assert!(stderr(&bad).contains("cannot encode"), "{}", stderr(&bad));
}
