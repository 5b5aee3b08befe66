//! Acceptance criteria, one PASS/FAIL line each. Runs without the libtest
//! harness so the lines are always printed.

mod common;

use std::collections::{HashMap, HashSet};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use majorsys::corpus::{Lexicon, PosTag};
use majorsys::encoders::{post_process, EncoderConfig, EncoderKind, Encoding, NgramMode};
use majorsys::langmodel::{NgramModel, END, START};
use majorsys::phonetics::{phoneme_to_digit, DigitString, Phoneme};
use majorsys::verify::{check_roundtrip, compute_metrics, decode, decode_text};
use majorsys::Engine;

type Outcome = Result<String, String>;

/// The major-system table written out symbol by symbol.
const TABLE: &[(&str, Option<u8>)] = &[
    ("S", Some(0)), ("Z", Some(0)),
    ("T", Some(1)), ("D", Some(1)), ("TH", Some(1)), ("DH", Some(1)),
    ("N", Some(2)),
    ("M", Some(3)),
    ("R", Some(4)),
    ("L", Some(5)),
    ("CH", Some(6)), ("JH", Some(6)), ("SH", Some(6)), ("ZH", Some(6)),
    ("K", Some(7)), ("G", Some(7)),
    ("F", Some(8)), ("V", Some(8)),
    ("P", Some(9)), ("B", Some(9)),
    ("NG", None), ("HH", None), ("W", None), ("Y", None), ("ER", None),
    ("AA", None), ("AE", None), ("AH", None), ("AO", None), ("AW", None),
    ("AY", None), ("EH", None), ("EY", None), ("IH", None), ("IY", None),
    ("OW", None), ("OY", None), ("UH", None), ("UW", None),
];

fn oracle_digits(phones: &[Phoneme]) -> DigitString {
    let table: HashMap<&str, Option<u8>> = TABLE.iter().copied().collect();
    phones.iter().filter_map(|p| table[p.symbol()]).collect()
}

fn random_digits(rng: &mut ChaCha8Rng, len: usize) -> DigitString {
    (0..len).map(|_| rng.gen_range(0..10u8)).collect()
}

fn config(kind: EncoderKind, seed: u64) -> EncoderConfig {
    EncoderConfig {
        kind,
        seed,
        ..EncoderConfig::default()
    }
}

fn ensure(ok: bool, message: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(message())
    }
}

fn table_conformance() -> Outcome {
    let expected: HashSet<&str> = TABLE.iter().map(|(s, _)| *s).collect();
    let actual: HashSet<&str> = Phoneme::ALL.iter().map(|p| p.symbol()).collect();
    ensure(expected == actual, || format!("inventory differs: {:?}", expected.symmetric_difference(&actual)))?;
    for &(sym, digit) in TABLE {
        for stress in ["", "0", "1", "2"] {
            let p = Phoneme::parse(&format!("{sym}{stress}")).map_err(|e| e.to_string())?;
            ensure(phoneme_to_digit(p) == digit, || format!("{sym}{stress} -> {:?}, want {digit:?}", phoneme_to_digit(p)))?;
        }
    }
    Ok(format!("{} symbols x 4 stress forms", TABLE.len()))
}

fn worked_examples(engine: &Engine) -> Outcome {
    let lex = &engine.lexicon;
    let cases: [(&[&str], &str); 4] = [
        (&["tent"], "121"),
        (&["officiate"], "861"),
        (&["wasteland"], "01521"),
        (&["vouching", "wits", "widely", "and"], "86101521"),
    ];
    for (words, want) in cases {
        let got = decode(words, lex).map_err(|e| e.to_string())?;
        ensure(got.to_string() == want, || format!("{words:?} -> {got}, want {want}"))?;
    }
    let text = decode_text("Officiate wasteland.", lex).map_err(|e| e.to_string())?;
    ensure(text.to_string() == "86101521", || format!("sentence form -> {text}"))?;
    Ok("4 exact matches".into())
}

fn oracle_decode(encoding: &Encoding, lex: &Lexicon) -> Option<DigitString> {
    let mut out = DigitString::new();
    for w in encoding.words() {
        out.extend_from(&oracle_digits(&lex.get(&w.word)?.pronunciations[0]));
    }
    Some(out)
}

fn round_trip(engine: &Engine) -> Outcome {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let mut failures = Vec::new();
    let mut runs = 0;
    for i in 0..1000 {
        let len = rng.gen_range(1..=50);
        let digits = random_digits(&mut rng, len);
        for kind in EncoderKind::ALL {
            runs += 1;
            let result = engine.encode(&digits, &config(kind, i));
            let ok = match &result {
                Ok(e) => check_roundtrip(e, &engine.lexicon).is_ok() && oracle_decode(e, &engine.lexicon).as_ref() == Some(&digits),
                Err(_) => false,
            };
            if !ok {
                failures.push(format!("{kind} on {digits}: {:?}", result.map(|e| e.render())));
            }
        }
    }
    let elapsed = start.elapsed();
    ensure(failures.is_empty(), || format!("{} of {runs} failed, first: {}", failures.len(), failures[0]))?;
    ensure(elapsed.as_secs() < 300, || format!("took {elapsed:?}"))?;
    Ok(format!("{runs} encodings in {:.1}s", elapsed.as_secs_f64()))
}

/// Stupid Backoff computed directly from the definition over padded
/// sentences, with counts found by scanning.
struct BruteForce {
    padded: Vec<Vec<String>>,
    order: usize,
    alpha: f64,
}

impl BruteForce {
    fn new(sentences: &[&[&str]], order: usize, alpha: f64) -> BruteForce {
        let padded = sentences
            .iter()
            .map(|s| {
                let mut p = vec![START.to_string(); order - 1];
                p.extend(s.iter().map(|w| w.to_string()));
                p.push(END.to_string());
                p
            })
            .collect();
        BruteForce { padded, order, alpha }
    }

    fn count(&self, gram: &[String]) -> usize {
        self.padded
            .iter()
            .map(|s| s.windows(gram.len()).filter(|w| *w == gram).count())
            .sum()
    }

    fn total(&self) -> usize {
        self.padded.iter().map(|s| s.iter().filter(|t| *t != START).count()).sum()
    }

    fn score(&self, context: &[String], word: &str) -> f64 {
        let context = &context[context.len().saturating_sub(self.order - 1)..];
        if context.is_empty() {
            return self.count(&[word.to_string()]) as f64 / self.total() as f64;
        }
        let mut joint = context.to_vec();
        joint.push(word.to_string());
        let n = self.count(&joint);
        if n > 0 {
            n as f64 / self.count(context) as f64
        } else {
            self.alpha * self.score(&context[1..], word)
        }
    }
}

fn backoff_oracle() -> Outcome {
    let sentences: &[&[&str]] = &[
        &["the", "cat", "sat"],
        &["the", "cat", "ran"],
        &["a", "dog", "sat", "down"],
        &["the", "dog", "ran", "down", "the", "hill"],
        &["cat", "sat"],
    ];
    let mut checked = 0;
    for (order, alpha) in [(3, 0.1), (2, 0.4), (1, 0.1)] {
        let oracle = BruteForce::new(sentences, order, alpha);
        let mut model = NgramModel::new(order, alpha).map_err(|e| e.to_string())?;
        for s in sentences {
            model.add_sentence(s);
        }
        let mut vocab: Vec<String> = sentences.iter().flat_map(|s| s.iter().map(|w| w.to_string())).collect();
        vocab.sort();
        vocab.dedup();
        ensure(vocab.len() <= 10, || "toy corpus too large".into())?;
        let mut ctx_tokens = vocab.clone();
        ctx_tokens.push(START.to_string());
        let mut targets = vocab.clone();
        targets.push(END.to_string());

        let mut contexts: Vec<Vec<String>> = vec![vec![]];
        for _ in 0..order - 1 {
            let longer: Vec<Vec<String>> = contexts
                .iter()
                .filter(|c| c.len() == contexts.last().unwrap().len())
                .flat_map(|c| ctx_tokens.iter().map(move |t| [vec![t.clone()], c.clone()].concat()))
                .collect();
            contexts.extend(longer);
        }
        for ctx in &contexts {
            let ctx_refs: Vec<&str> = ctx.iter().map(String::as_str).collect();
            for w in &targets {
                let got = model.sb_score(&ctx_refs, w);
                let want = oracle.score(ctx, w);
                ensure((got - want).abs() <= 1e-12, || format!("n={order} {ctx:?} {w}: {got} vs {want}"))?;
                checked += 1;
            }
        }
    }
    Ok(format!("{checked} (context, word) pairs within 1e-12"))
}

fn corpus_statistics(engine: &Engine) -> Outcome {
    let stats = engine.lexicon.stats;
    let within = |x: f64, target: f64, tol: f64| (x - target).abs() <= tol * target;
    let types = stats.raw_types as f64;
    let tokens = stats.tokens as f64;
    let inter = engine.lexicon.len() as f64;
    let line = format!(
        "types {} (lowercased {}), tokens {}, intersection {}",
        stats.raw_types,
        stats.types,
        stats.tokens,
        engine.lexicon.len()
    );
    ensure(
        within(types, 56_000.0, 0.10) && within(tokens, 1_200_000.0, 0.10) && within(inter, 34_000.0, 0.20),
        || line.clone(),
    )?;
    Ok(line)
}

fn template_filters(engine: &Engine) -> Outcome {
    let store = &engine.models.templates;
    ensure(store.len() <= 100 && !store.is_empty(), || format!("store size {}", store.len()))?;
    for t in store.templates() {
        let guaranteed = t
            .tags
            .iter()
            .filter(|&&tag| !matches!(tag, PosTag::Punct | PosTag::Det | PosTag::Adj | PosTag::Adv))
            .count();
        let ok = t.tags.contains(&PosTag::Verb)
            && !t.tags.contains(&PosTag::Num)
            && !t.tags.contains(&PosTag::X)
            && guaranteed >= 5;
        ensure(ok, || format!("template `{}` violates the filters", t.label()))?;
    }
    Ok(format!("{} templates, all filtered", store.len()))
}

fn greedy_maximality(engine: &Engine) -> Outcome {
    // every digit string some lexicon word encodes, found by a linear scan
    let encodable: HashSet<DigitString> = engine
        .lexicon
        .iter()
        .map(|e| oracle_digits(&e.pronunciations[0]))
        .filter(|d| !d.is_empty())
        .collect();
    let longest = encodable.iter().map(|d| d.len()).max().unwrap_or(0);
    let mut rng = ChaCha8Rng::seed_from_u64(0x6ee0);
    let mut words = 0;
    for i in 0..500 {
        let len = rng.gen_range(1..=50);
        let digits = random_digits(&mut rng, len);
        for kind in [EncoderKind::Random, EncoderKind::Unigram] {
            let e = engine.encode(&digits, &config(kind, i)).map_err(|e| format!("{kind} on {digits}: {e}"))?;
            let mut pos = 0;
            for w in e.words() {
                let rest = digits.slice(pos..digits.len());
                let k = (1..=rest.len().min(longest))
                    .rev()
                    .find(|&k| encodable.contains(&rest.slice(0..k)))
                    .unwrap_or(0);
                ensure(w.digits.len() == k && rest.slice(0..k) == w.digits, || {
                    format!("{kind} on {digits}: `{}` spans {} but the longest match is {k}", w.word, w.digits.len())
                })?;
                pos += k;
                words += 1;
            }
            ensure(pos == digits.len(), || format!("{kind} on {digits}: stopped at {pos}"))?;
        }
    }
    Ok(format!("{words} words, all maximal"))
}

fn digit_density(engine: &Engine) -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0xde75);
    let (mut sentence_words, mut ngram_words, mut digits_total) = (0usize, 0usize, 0usize);
    for i in 0..100 {
        let digits = random_digits(&mut rng, 50);
        digits_total += digits.len();
        for (kind, words) in [(EncoderKind::Sentence, &mut sentence_words), (EncoderKind::Ngram, &mut ngram_words)] {
            let e = engine.encode(&digits, &config(kind, i)).map_err(|e| format!("{kind}: {e}"))?;
            *words += compute_metrics(&e, &engine.lexicon, &engine.models.words).word_count;
        }
    }
    let sentence = digits_total as f64 / sentence_words as f64;
    let ngram = digits_total as f64 / ngram_words as f64;
    let line = format!("sentence {sentence:.3} vs n-gram {ngram:.3} digits per word");
    ensure(sentence > ngram, || line.clone())?;
    Ok(line)
}

fn determinism(engine: &Engine) -> Outcome {
    let rebuilt = common::build_engine()?;
    let mut rng = ChaCha8Rng::seed_from_u64(0xd00d);
    let inputs: Vec<DigitString> = (0..25).map(|_| {
        let len = rng.gen_range(1..=50);
        random_digits(&mut rng, len)
    }).collect();
    let mut configs: Vec<EncoderConfig> = EncoderKind::ALL.iter().map(|&k| config(k, 1234)).collect();
    configs.push(EncoderConfig {
        ngram_mode: NgramMode::Sample,
        ..config(EncoderKind::Ngram, 99)
    });
    let render = |engine: &Engine, d: &DigitString, c: &EncoderConfig| -> Result<String, String> {
        let e = engine.encode(d, c).map_err(|e| e.to_string())?;
        Ok(format!("{}\n{}", e.render(), serde_json::to_string(&e.to_records()).unwrap()))
    };
    for c in &configs {
        for d in &inputs {
            let first = render(engine, d, c)?;
            let again = render(engine, d, c)?;
            let other = render(&rebuilt, d, c)?;
            ensure(first == again && first == other, || format!("{} on {d} differs between runs", c.kind))?;
        }
    }
    Ok(format!("{} configurations x {} inputs x 3 runs identical", configs.len(), inputs.len()))
}

fn post_processing(engine: &Engine) -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0x9057);
    let scorer = engine.scorer();
    let mut changed = 0;
    for i in 0..50 {
        let len = rng.gen_range(1..=40);
        let digits = random_digits(&mut rng, len);
        let kind = EncoderKind::ALL[i % EncoderKind::ALL.len()];
        let c = EncoderConfig {
            post_process: false,
            ..config(kind, i as u64)
        };
        let raw = engine.encode(&digits, &c).map_err(|e| e.to_string())?;
        let once = post_process(&raw, &scorer);
        let spans = |e: &Encoding| e.words().map(|w| w.digits.clone()).collect::<Vec<_>>();
        ensure(spans(&once) == spans(&raw), || format!("spans changed on {digits}"))?;
        ensure(oracle_decode(&once, &engine.lexicon).as_ref() == Some(&digits), || format!("decoding changed on {digits}"))?;
        ensure(post_process(&once, &scorer) == once, || format!("not idempotent on {digits}"))?;
        changed += raw.words().zip(once.words()).filter(|(a, b)| a.word != b.word).count();
    }
    Ok(format!("50 fixtures, {changed} words replaced, spans kept, idempotent"))
}

fn run(n: usize, name: &str, check: impl FnOnce() -> Outcome) -> bool {
    let outcome = catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|p| {
        Err(p.downcast_ref::<String>().cloned().or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string())).unwrap_or_else(|| "panicked".into()))
    });
    match outcome {
        Ok(detail) => {
            println!("criterion {n:>2} {name}: PASS ({detail})");
            true
        }
        Err(why) => {
            println!("criterion {n:>2} {name}: FAIL ({why})");
            false
        }
    }
}

fn main() {
    let engine = common::build_engine();
    let with_engine = |f: fn(&Engine) -> Outcome| {
        let engine = &engine;
        move || match engine {
            Ok(e) => f(e),
            Err(why) => Err(format!("cannot load data from {}: {why}", common::data_dir().display())),
        }
    };
    let results = [
        run(1, "major map table", table_conformance),
        run(2, "worked decode examples", with_engine(worked_examples)),
        run(3, "round trip, 1000 inputs x 6 encoders", with_engine(round_trip)),
        run(4, "stupid backoff oracle", backoff_oracle),
        run(5, "corpus statistics", with_engine(corpus_statistics)),
        run(6, "template filters", with_engine(template_filters)),
        run(7, "greedy maximality", with_engine(greedy_maximality)),
        run(8, "digit density", with_engine(digit_density)),
        run(9, "determinism", with_engine(determinism)),
        run(10, "post-processing safety", with_engine(post_processing)),
    ];
    let passed = results.iter().filter(|&&ok| ok).count();
    println!("{passed}/{} criteria passed", results.len());
    if passed != results.len() {
        std::process::exit(1);
    }
}
