mod cache;
mod output;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::anyhow;
use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use majorsys::encoders::{EncoderConfig, EncoderKind, Encoding, NgramMode};
use majorsys::error::EncodeError;
use majorsys::langmodel::{ModelParams, MAX_ORDER};
use majorsys::phonetics::DigitString;
use majorsys::verify::{check_roundtrip, compute_metrics, decode_with_warnings};
use majorsys::Engine;

use output::{Format, Report};

const EXIT_USAGE: u8 = 1;
const EXIT_DATA: u8 = 2;
const EXIT_ENCODE: u8 = 3;

/// Encode numbers as memorable words with the major system.
#[derive(Debug, Parser)]
#[command(name = "majorsys", version)]
struct Cli {
    #[command(flatten)]
    data: DataArgs,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct DataArgs {
    /// CMU Pronouncing Dictionary file
    #[arg(long, global = true, default_value = "data/cmudict.dict")]
    cmudict: PathBuf,
    /// Tagged corpus file or directory (Brown layout)
    #[arg(long, global = true, default_value = "data/brown")]
    corpus: PathBuf,
    /// Tag map file (`corpus_tag<TAB>UNIVERSAL`); defaults to the bundled Brown map
    #[arg(long, global = true)]
    tagmap: Option<PathBuf>,
    /// Model cache directory
    #[arg(long, global = true, default_value = ".majorsys-cache")]
    cache: PathBuf,
    /// Always build from the data files and leave the cache alone
    #[arg(long, global = true)]
    no_cache: bool,
    /// Word n-gram order
    #[arg(long, global = true, default_value_t = 3, value_parser = parse_order)]
    n: usize,
    /// Stupid Backoff factor
    #[arg(long, global = true, default_value_t = 0.1, value_parser = parse_alpha)]
    alpha: f64,
    #[arg(long, global = true, value_enum, default_value_t = Format::Plain)]
    format: Format,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Mode {
    Argmax,
    Sample,
}

#[derive(Debug, Args)]
struct EncodeOptions {
    /// Exponent on the digit count of sentence-encoder candidates
    #[arg(long, default_value_t = 10.0, value_parser = parse_power)]
    power: f64,
    /// Digits per chunk for the chunk encoder
    #[arg(long, default_value_t = 3, value_parser = parse_chunk_size)]
    chunk_size: usize,
    /// n-gram encoder choice rule
    #[arg(long, value_enum, default_value_t = Mode::Argmax)]
    mode: Mode,
    /// Random seed; a fresh one is drawn and printed when omitted
    #[arg(long)]
    seed: Option<u64>,
    /// Skip the sentence encoder's bigram rewrite pass
    #[arg(long)]
    no_post_process: bool,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Build the lexicon and models and write the cache
    Build,
    /// Encode a digit string
    Encode {
        #[arg(value_parser = parse_digits)]
        digits: DigitString,
        #[arg(long, short, default_value = "sentence", value_parser = parse_kind)]
        encoder: EncoderKind,
        #[command(flatten)]
        options: EncodeOptions,
    },
    /// Decode words back to digits
    Decode {
        #[arg(required = true, num_args = 1..)]
        words: Vec<String>,
    },
    /// Run all six encoders on the same digits
    Compare {
        #[arg(value_parser = parse_digits)]
        digits: DigitString,
        #[command(flatten)]
        options: EncodeOptions,
    },
    /// Corpus, lexicon and model statistics
    Stats {
        /// How many of the most frequent templates to list
        #[arg(long, default_value_t = 10)]
        templates: usize,
    },
}

fn parse_digits(s: &str) -> Result<DigitString, String> {
    if s.is_empty() {
        return Err("expected at least one digit".into());
    }
    s.parse().map_err(|e: majorsys::error::PhoneticsError| e.to_string())
}

fn parse_kind(s: &str) -> Result<EncoderKind, String> {
    s.parse()
}

fn parse_order(s: &str) -> Result<usize, String> {
    match s.parse::<usize>() {
        Ok(n) if (1..=MAX_ORDER).contains(&n) => Ok(n),
        _ => Err(format!("expected an integer from 1 to {MAX_ORDER}")),
    }
}

fn parse_alpha(s: &str) -> Result<f64, String> {
    match s.parse::<f64>() {
        Ok(a) if a > 0.0 && a <= 1.0 => Ok(a),
        _ => Err("expected a number in (0, 1]".into()),
    }
}

fn parse_power(s: &str) -> Result<f64, String> {
    match s.parse::<f64>() {
        Ok(p) if p >= 0.0 && p.is_finite() => Ok(p),
        _ => Err("expected a number >= 0".into()),
    }
}

fn parse_chunk_size(s: &str) -> Result<usize, String> {
    match s.parse::<usize>() {
        Ok(n) if n >= 1 => Ok(n),
        _ => Err("expected a positive integer".into()),
    }
}

struct Failure {
    code: u8,
    error: anyhow::Error,
}

impl From<anyhow::Error> for Failure {
    fn from(error: anyhow::Error) -> Self {
        Failure { code: EXIT_DATA, error }
    }
}

impl From<std::io::Error> for Failure {
    fn from(error: std::io::Error) -> Self {
        Failure {
            code: EXIT_DATA,
            error: error.into(),
        }
    }
}

fn encode_failure(e: EncodeError) -> Failure {
    let code = match e {
        EncodeError::InvalidConfig(_) => EXIT_USAGE,
        _ => EXIT_ENCODE,
    };
    Failure { code, error: e.into() }
}

impl DataArgs {
    fn inputs(&self) -> cache::Inputs {
        cache::Inputs {
            cmudict: self.cmudict.clone(),
            corpus: self.corpus.clone(),
            tagmap: self.tagmap.clone(),
            params: ModelParams {
                order: self.n,
                alpha: self.alpha,
                ..ModelParams::default()
            },
        }
    }

    fn engine(&self) -> Result<Engine, Failure> {
        let cache = (!self.no_cache).then_some(self.cache.as_path());
        Ok(cache::load(&self.inputs(), cache, &mut std::io::stderr())?)
    }
}

impl EncodeOptions {
    fn config(&self, kind: EncoderKind, data: &DataArgs, seed: u64) -> EncoderConfig {
        EncoderConfig {
            kind,
            n: data.n,
            alpha: data.alpha,
            weight_power: self.power,
            ngram_mode: match self.mode {
                Mode::Argmax => NgramMode::Argmax,
                Mode::Sample => NgramMode::Sample,
            },
            seed,
            chunk_size: self.chunk_size,
            post_process: !self.no_post_process,
            ..EncoderConfig::default()
        }
    }

    fn seed(&self) -> u64 {
        self.seed.unwrap_or_else(|| {
            let seed = rand::random();
            eprintln!("seed: {seed}");
            seed
        })
    }
}

struct Outcome {
    kind: EncoderKind,
    encoding: Encoding,
    metrics: majorsys::verify::Metrics,
    round_trip: majorsys::verify::RoundTripReport,
}

fn run_encoder(engine: &Engine, digits: &DigitString, config: &EncoderConfig) -> Result<Outcome, EncodeError> {
    let encoding = engine.encode(digits, config)?;
    Ok(Outcome {
        kind: config.kind,
        metrics: compute_metrics(&encoding, &engine.lexicon, &engine.models.words),
        round_trip: check_roundtrip(&encoding, &engine.lexicon),
        encoding,
    })
}

fn report<'a>(o: &'a Outcome, seed: u64) -> Report<'a> {
    Report {
        kind: o.kind,
        seed,
        encoding: &o.encoding,
        metrics: &o.metrics,
        round_trip: &o.round_trip,
    }
}

fn round_trip_failure(kinds: &[EncoderKind]) -> Failure {
    let names: Vec<&str> = kinds.iter().map(|k| k.name()).collect();
    Failure {
        code: EXIT_ENCODE,
        error: anyhow!("round trip failed for {}", names.join(", ")),
    }
}

fn run(cli: Cli, out: &mut dyn Write) -> Result<(), Failure> {
    let data = &cli.data;
    match &cli.command {
        Command::Build => {
            let inputs = data.inputs();
            let engine = inputs.build()?;
            if !data.no_cache {
                cache::write(&data.cache, &inputs.key()?, &engine)?;
            }
            write!(out, "{}", stats(&engine, data.format, 0))?;
            if !data.no_cache && data.format == Format::Plain {
                writeln!(out, "cache written to {}", data.cache.display())?;
            }
        }
        Command::Encode {
            digits,
            encoder,
            options,
        } => {
            let engine = data.engine()?;
            let seed = options.seed();
            let config = options.config(*encoder, data, seed);
            let outcome = run_encoder(&engine, digits, &config).map_err(encode_failure)?;
            write!(out, "{}", output::encoding(&report(&outcome, seed), data.format))?;
            if !outcome.round_trip.is_ok() {
                return Err(round_trip_failure(&[*encoder]));
            }
        }
        Command::Decode { words } => {
            let engine = data.engine()?;
            let text = words.join(" ");
            let tokens: Vec<&str> = text.split_whitespace().collect();
            let (digits, warnings) = decode_with_warnings(&tokens, &engine.lexicon).map_err(|e| Failure {
                code: EXIT_ENCODE,
                error: e.into(),
            })?;
            match data.format {
                Format::Json => writeln!(out, "{}", json!({ "digits": digits, "warnings": warnings }))?,
                _ => {
                    writeln!(out, "{digits}")?;
                    for w in &warnings {
                        let alts: Vec<String> = w.alternates.iter().map(|d| d.to_string()).collect();
                        eprintln!(
                            "warning: `{}` read as {} but other pronunciations give {}",
                            w.word,
                            w.canonical,
                            alts.join(", ")
                        );
                    }
                }
            }
        }
        Command::Compare { digits, options } => {
            let engine = data.engine()?;
            let seed = options.seed();
            let configs: Vec<EncoderConfig> = EncoderKind::ALL.iter().map(|&k| options.config(k, data, seed)).collect();
            let results: Vec<Result<Outcome, EncodeError>> = std::thread::scope(|s| {
                let handles: Vec<_> = configs
                    .iter()
                    .map(|c| s.spawn(|| run_encoder(&engine, digits, c)))
                    .collect();
                handles.into_iter().map(|h| h.join().expect("encoder thread panicked")).collect()
            });
            let mut outcomes = Vec::new();
            for (config, result) in configs.iter().zip(results) {
                match result {
                    Ok(o) => outcomes.push(o),
                    Err(e) => {
                        let mut f = encode_failure(e);
                        f.error = f.error.context(format!("{} encoder", config.kind));
                        return Err(f);
                    }
                }
            }
            let rows: Vec<Report> = outcomes.iter().map(|o| report(o, seed)).collect();
            write!(out, "{}", output::comparison(&rows, data.format))?;
            let failed: Vec<EncoderKind> = outcomes.iter().filter(|o| !o.round_trip.is_ok()).map(|o| o.kind).collect();
            if !failed.is_empty() {
                return Err(round_trip_failure(&failed));
            }
        }
        Command::Stats { templates } => {
            let engine = data.engine()?;
            write!(out, "{}", stats(&engine, data.format, *templates))?;
        }
    }
    Ok(())
}

fn stats(engine: &Engine, format: Format, top: usize) -> String {
    let s = engine.lexicon.stats;
    let templates = engine.models.templates.templates();
    let shown = &templates[..top.min(templates.len())];
    let rows: Vec<(&str, String)> = vec![
        ("sentences", s.sentences.to_string()),
        ("tokens", s.tokens.to_string()),
        ("types", s.raw_types.to_string()),
        ("lowercased_types", s.types.to_string()),
        ("lexicon_words", engine.lexicon.len().to_string()),
        ("indexed_words", engine.index.len().to_string()),
        ("longest_word_digits", engine.index.max_word_digits().to_string()),
        ("word_model_order", engine.models.words.order().to_string()),
        ("word_model_vocabulary", engine.models.words.vocab_size().to_string()),
        ("templates", templates.len().to_string()),
    ];
    match format {
        Format::Json => {
            let mut obj = serde_json::Map::new();
            for (k, v) in &rows {
                obj.insert(k.to_string(), json!(v.parse::<u64>().unwrap_or_default()));
            }
            let top: Vec<_> = shown
                .iter()
                .map(|t| json!({ "frequency": t.frequency, "tags": t.label() }))
                .collect();
            obj.insert("top_templates".into(), json!(top));
            format!("{}\n", serde_json::Value::Object(obj))
        }
        Format::Table => {
            let mut out = String::from("statistic\tvalue\n");
            for (k, v) in &rows {
                out += &format!("{k}\t{v}\n");
            }
            for t in shown {
                out += &format!("template\t{}\t{}\n", t.frequency, t.label());
            }
            out
        }
        Format::Plain => {
            let mut out = String::new();
            for (k, v) in &rows {
                out += &format!("{:<22} {v}\n", k.replace('_', " "));
            }
            for t in shown {
                out += &format!("{:>6}  {}\n", t.frequency, t.label());
            }
            out
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => ExitCode::SUCCESS,
                _ => ExitCode::from(EXIT_USAGE),
            };
        }
    };
    let stdout = std::io::stdout();
    let mut out = stdout.lock();
    match run(cli, &mut out) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            let _ = out.flush();
            eprintln!("error: {:#}", f.error);
            ExitCode::from(f.code)
        }
    }
}
