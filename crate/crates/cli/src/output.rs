use std::fmt::Write as _;

use clap::ValueEnum;
use serde_json::{json, Value};

use majorsys::encoders::{EncoderKind, Encoding};
use majorsys::verify::{Metrics, RoundTripReport};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    /// Readable text
    Plain,
    /// Tab-separated columns with a header row
    Table,
    /// JSON
    Json,
}

pub struct Report<'a> {
    pub kind: EncoderKind,
    pub seed: u64,
    pub encoding: &'a Encoding,
    pub metrics: &'a Metrics,
    pub round_trip: &'a RoundTripReport,
}

fn verdict(r: &RoundTripReport) -> String {
    match &r.failure {
        None => "ok".into(),
        Some(f) => format!("FAILED {}", serde_json::to_string(f).unwrap_or_default()),
    }
}

fn slot(s: Option<majorsys::corpus::PosTag>) -> &'static str {
    s.map_or("-", |t| t.label())
}

pub fn encoding(r: &Report, format: Format) -> String {
    let mut out = String::new();
    let m = r.metrics;
    match format {
        Format::Plain => {
            let _ = writeln!(out, "{}", r.encoding.render());
            let spans: Vec<String> = r.encoding.words().map(|w| format!("{}[{}]", w.word, w.digits)).collect();
            let _ = writeln!(out, "{}", spans.join(" "));
            let _ = writeln!(
                out,
                "words {}  sentences {}  digits/word {:.2}  mean frequency {:.1}  log score {:.2}",
                m.word_count, m.sentence_count, m.digits_per_word, m.mean_word_frequency, m.model_score
            );
            let _ = writeln!(out, "round trip: {}", verdict(r.round_trip));
        }
        Format::Table => {
            let _ = writeln!(out, "sentence\tword\tspan\tslot\tterminated");
            for rec in r.encoding.to_records() {
                let _ = writeln!(out, "{}\t{}\t{}\t{}\t{}", rec.sentence, rec.word, rec.span, slot(rec.slot), rec.terminated);
            }
        }
        Format::Json => {
            let _ = writeln!(out, "{}", report_json(r));
        }
    }
    out
}

fn report_json(r: &Report) -> Value {
    json!({
        "encoder": r.kind.name(),
        "seed": r.seed,
        "digits": r.encoding.source,
        "text": r.encoding.render(),
        "records": r.encoding.to_records(),
        "metrics": r.metrics,
        "round_trip": r.round_trip,
    })
}

pub fn comparison(rows: &[Report], format: Format) -> String {
    let mut out = String::new();
    match format {
        Format::Plain => {
            let width = EncoderKind::ALL.iter().map(|k| k.name().len()).max().unwrap_or(0);
            for r in rows {
                let _ = writeln!(
                    out,
                    "{:<width$}  {:>3} words  {:>5.2} d/w  {:<2}  {}",
                    r.kind.name(),
                    r.metrics.word_count,
                    r.metrics.digits_per_word,
                    verdict(r.round_trip),
                    r.encoding.render()
                );
            }
        }
        Format::Table => {
            let _ = writeln!(out, "encoder\twords\tdigits_per_word\tround_trip\ttext");
            for r in rows {
                let _ = writeln!(
                    out,
                    "{}\t{}\t{:.3}\t{}\t{}",
                    r.kind.name(),
                    r.metrics.word_count,
                    r.metrics.digits_per_word,
                    verdict(r.round_trip),
                    r.encoding.render()
                );
            }
        }
        Format::Json => {
            let all: Vec<Value> = rows.iter().map(report_json).collect();
            let _ = writeln!(out, "{}", Value::Array(all));
        }
    }
    out
}
