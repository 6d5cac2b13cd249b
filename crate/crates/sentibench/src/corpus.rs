//! Dataset loading, text cleaning, and deterministic train/test splits.
//!
//! The cleaning pipeline applies a fixed rule sequence (URL drop, mention
//! drop, hashtag drop, emoticon removal, lowercasing, contraction expansion,
//! special-character removal, whitespace collapse) and iterates it to a fixed
//! point, which makes `clean_text` idempotent for any configuration.

use std::collections::{BTreeMap, BTreeSet};
use std::fs;
use std::path::Path;

use rand::seq::SliceRandom;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rng::{sub_rng, tag};

/// Three-way sentiment label, ordered (-1, 0, 1).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "i8", into = "i8")]
pub enum SentimentLabel {
    Negative,
    Neutral,
    Positive,
}

impl SentimentLabel {
    pub const ALL: [SentimentLabel; 3] = [
        SentimentLabel::Negative,
        SentimentLabel::Neutral,
        SentimentLabel::Positive,
    ];

    /// Parse -1/0/1; any other value is rejected.
    pub fn from_int(value: i64) -> Result<Self> {
        match value {
            -1 => Ok(SentimentLabel::Negative),
            0 => Ok(SentimentLabel::Neutral),
            1 => Ok(SentimentLabel::Positive),
            other => Err(Error::InvalidInput(format!(
                "label {other} is not one of -1, 0, 1"
            ))),
        }
    }

    pub fn to_int(self) -> i64 {
        match self {
            SentimentLabel::Negative => -1,
            SentimentLabel::Neutral => 0,
            SentimentLabel::Positive => 1,
        }
    }

    /// Dense index in label order: -1 -> 0, 0 -> 1, 1 -> 2.
    pub fn index(self) -> usize {
        match self {
            SentimentLabel::Negative => 0,
            SentimentLabel::Neutral => 1,
            SentimentLabel::Positive => 2,
        }
    }

    pub fn from_index(i: usize) -> Self {
        Self::ALL[i]
    }
}

impl TryFrom<i8> for SentimentLabel {
    type Error = Error;
    fn try_from(v: i8) -> Result<Self> {
        SentimentLabel::from_int(v as i64)
    }
}

impl From<SentimentLabel> for i8 {
    fn from(l: SentimentLabel) -> i8 {
        l.to_int() as i8
    }
}

impl std::fmt::Display for SentimentLabel {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.to_int())
    }
}

/// A text with its gold label and originating platform tag.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LabeledDocument {
    pub text: String,
    pub label: SentimentLabel,
    pub source: String,
}

impl LabeledDocument {
    pub fn new(text: impl Into<String>, label: SentimentLabel, source: impl Into<String>) -> Self {
        LabeledDocument {
            text: text.into(),
            label,
            source: source.into(),
        }
    }
}

/// Cleaning configuration. The word lists are explicit data loaded from
/// files; nothing here is hard-coded behavior.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PreprocessConfig {
    pub stopword_list: BTreeSet<String>,
    pub contraction_map: BTreeMap<String, String>,
    /// Matched as substrings, longest first.
    pub emoticon_set: Vec<String>,
    pub lowercase: bool,
}

pub const SHIPPED_STOPWORDS: &str = include_str!("../data/stopwords.txt");
pub const SHIPPED_CONTRACTIONS: &str = include_str!("../data/contractions.tsv");
pub const SHIPPED_EMOTICONS: &str = include_str!("../data/emoticons.txt");

impl PreprocessConfig {
    /// Config backed by the data files shipped with the crate.
    pub fn shipped() -> &'static PreprocessConfig {
        static SHIPPED: std::sync::OnceLock<PreprocessConfig> = std::sync::OnceLock::new();
        SHIPPED.get_or_init(|| {
            PreprocessConfig::from_contents(
                SHIPPED_STOPWORDS,
                SHIPPED_CONTRACTIONS,
                SHIPPED_EMOTICONS,
            )
            .expect("shipped preprocessing data is valid")
        })
    }

    pub fn from_contents(stopwords: &str, contractions: &str, emoticons: &str) -> Result<Self> {
        Ok(PreprocessConfig {
            stopword_list: parse_stopwords(stopwords),
            contraction_map: parse_contractions(contractions, "<contractions>")?,
            emoticon_set: parse_emoticons(emoticons),
            lowercase: true,
        })
    }

    pub fn from_files(
        stopwords: &Path,
        contractions: &Path,
        emoticons: &Path,
    ) -> Result<Self> {
        let stop = fs::read_to_string(stopwords).map_err(|e| Error::io(stopwords, e))?;
        let contr = fs::read_to_string(contractions).map_err(|e| Error::io(contractions, e))?;
        let emot = fs::read_to_string(emoticons).map_err(|e| Error::io(emoticons, e))?;
        Ok(PreprocessConfig {
            stopword_list: parse_stopwords(&stop),
            contraction_map: parse_contractions(&contr, &contractions.display().to_string())?,
            emoticon_set: parse_emoticons(&emot),
            lowercase: true,
        })
    }
}

/// One token per line; blank lines skipped.
pub fn parse_stopwords(content: &str) -> BTreeSet<String> {
    content
        .lines()
        .map(str::trim)
        .filter(|l| !l.is_empty())
        .map(str::to_string)
        .collect()
}

/// `contraction<TAB>expansion` per line; blank lines skipped.
pub fn parse_contractions(content: &str, path: &str) -> Result<BTreeMap<String, String>> {
    let mut map = BTreeMap::new();
    for (i, line) in content.lines().enumerate() {
        let line = line.trim_end_matches('\r');
        if line.trim().is_empty() {
            continue;
        }
        let (word, expansion) = line.split_once('\t').ok_or_else(|| {
            Error::parse(path, i + 1, "expected `contraction<TAB>expansion`")
        })?;
        map.insert(word.trim().to_string(), expansion.trim().to_string());
    }
    Ok(map)
}

/// One emoticon per line; returned longest-first so that nested emoticons
/// (":-)" vs ":)") match greedily.
pub fn parse_emoticons(content: &str) -> Vec<String> {
    let mut set: Vec<String> = content
        .lines()
        .map(|l| l.trim_end_matches('\r'))
        .filter(|l| !l.trim().is_empty())
        .map(str::to_string)
        .collect();
    set.sort_by(|a, b| b.len().cmp(&a.len()).then_with(|| a.cmp(b)));
    set.dedup();
    set
}

/// Train/test split settings.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct SplitConfig {
    pub test_fraction: f64,
    pub seed: u64,
    pub stratified: bool,
}

impl SplitConfig {
    pub fn new(seed: u64) -> Self {
        SplitConfig {
            test_fraction: 0.25,
            seed,
            stratified: true,
        }
    }
}

/// Supported dataset file formats.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum DataFormat {
    Csv,
    Jsonl,
}

impl std::str::FromStr for DataFormat {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "csv" => Ok(DataFormat::Csv),
            "jsonl" => Ok(DataFormat::Jsonl),
            other => Err(Error::Config(format!(
                "unknown format {other:?}, expected csv or jsonl"
            ))),
        }
    }
}

impl std::fmt::Display for DataFormat {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            DataFormat::Csv => write!(f, "csv"),
            DataFormat::Jsonl => write!(f, "jsonl"),
        }
    }
}

/// Load a labeled dataset from a CSV (`text,label[,source]` header) or
/// JSON-lines file. Documents come back in file order.
pub fn load_dataset(path: &Path, format: DataFormat) -> Result<Vec<LabeledDocument>> {
    match format {
        DataFormat::Csv => load_csv(path),
        DataFormat::Jsonl => load_jsonl(path),
    }
}

fn load_csv(path: &Path) -> Result<Vec<LabeledDocument>> {
    let display = path.display().to_string();
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(true)
        .flexible(false)
        .from_path(path)
        .map_err(|e| match e.kind() {
            csv::ErrorKind::Io(_) => Error::io(
                path,
                std::io::Error::new(std::io::ErrorKind::Other, e.to_string()),
            ),
            _ => Error::parse(&display, 1, e.to_string()),
        })?;

    let headers = reader
        .headers()
        .map_err(|e| Error::parse(&display, 1, e.to_string()))?
        .clone();
    let col = |name: &str| headers.iter().position(|h| h == name);
    let text_col = col("text")
        .ok_or_else(|| Error::parse(&display, 1, "missing required column `text`"))?;
    let label_col = col("label")
        .ok_or_else(|| Error::parse(&display, 1, "missing required column `label`"))?;
    let source_col = col("source");

    let mut docs = Vec::new();
    for record in reader.records() {
        let record = record.map_err(|e| {
            let line = e
                .position()
                .map(|p| p.line() as usize)
                .unwrap_or(docs.len() + 2);
            Error::parse(&display, line, e.to_string())
        })?;
        let line = record
            .position()
            .map(|p| p.line() as usize)
            .unwrap_or(docs.len() + 2);
        let text = record
            .get(text_col)
            .ok_or_else(|| Error::parse(&display, line, "missing `text` field"))?;
        let raw_label = record
            .get(label_col)
            .ok_or_else(|| Error::parse(&display, line, "missing `label` field"))?;
        let value: i64 = raw_label.trim().parse().map_err(|_| {
            Error::parse(&display, line, format!("label {raw_label:?} is not an integer"))
        })?;
        let label = SentimentLabel::from_int(value)
            .map_err(|e| Error::parse(&display, line, e.to_string()))?;
        let source = source_col
            .and_then(|c| record.get(c))
            .unwrap_or("")
            .to_string();
        docs.push(LabeledDocument {
            text: text.to_string(),
            label,
            source,
        });
    }
    Ok(docs)
}

fn load_jsonl(path: &Path) -> Result<Vec<LabeledDocument>> {
    let display = path.display().to_string();
    let content = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    let mut docs = Vec::new();
    for (i, line) in content.lines().enumerate() {
        if line.trim().is_empty() {
            continue;
        }
        let value: serde_json::Value = serde_json::from_str(line)
            .map_err(|e| Error::parse(&display, i + 1, e.to_string()))?;
        let text = value
            .get("text")
            .and_then(|v| v.as_str())
            .ok_or_else(|| Error::parse(&display, i + 1, "missing string field `text`"))?;
        let label_value = value
            .get("label")
            .and_then(|v| v.as_i64())
            .ok_or_else(|| Error::parse(&display, i + 1, "missing integer field `label`"))?;
        let label = SentimentLabel::from_int(label_value)
            .map_err(|e| Error::parse(&display, i + 1, e.to_string()))?;
        let source = value
            .get("source")
            .and_then(|v| v.as_str())
            .unwrap_or("")
            .to_string();
        docs.push(LabeledDocument {
            text: text.to_string(),
            label,
            source,
        });
    }
    Ok(docs)
}

/// Apply the full cleaning rule sequence, iterated to a fixed point.
///
/// Per pass: drop URL-ish tokens (anything containing "http" or starting
/// with "www."), drop @-mentions, drop #-hashtags, blank out configured
/// emoticons, lowercase, expand contractions, delete characters outside
/// `[a-z0-9 ]` (or `[a-zA-Z0-9 ]` with lowercasing off), collapse runs of
/// whitespace. Non-ASCII letters are stripped by the special-character rule.
pub fn clean_text(raw: &str, config: &PreprocessConfig) -> String {
    let mut current = raw.to_string();
    // A fixed point is reached within a few passes for any input; the cap
    // guards against pathological contraction maps that grow the text.
    for _ in 0..16 {
        let next = clean_pass(&current, config);
        if next == current {
            return next;
        }
        current = next;
    }
    current
}

fn clean_pass(raw: &str, config: &PreprocessConfig) -> String {
    // 1-3: token-level drops, in rule order: URLs, mentions, hashtags.
    let kept: Vec<&str> = raw
        .split_whitespace()
        .filter(|tok| !(tok.contains("http") || tok.starts_with("www.")))
        .filter(|tok| !tok.starts_with('@'))
        .filter(|tok| !tok.starts_with('#'))
        .collect();
    let mut text = kept.join(" ");

    // 4: emoticons, longest first, replaced by a space so tokens never fuse.
    for emoticon in &config.emoticon_set {
        if text.contains(emoticon.as_str()) {
            text = text.replace(emoticon.as_str(), " ");
        }
    }

    // 5: lowercase.
    if config.lowercase {
        text = text.to_lowercase();
    }

    // 6: contraction expansion. Lookup ignores leading/trailing punctuation
    // so "can't!!!" still expands.
    let expanded: Vec<String> = text
        .split_whitespace()
        .map(|tok| {
            let core = tok.trim_matches(|c: char| !(c.is_ascii_alphanumeric() || c == '\''));
            match config.contraction_map.get(core) {
                Some(expansion) if !core.is_empty() => expansion.clone(),
                _ => tok.to_string(),
            }
        })
        .collect();
    text = expanded.join(" ");

    // 7: special-character removal.
    let keep_upper = !config.lowercase;
    text.retain(|c| {
        c == ' '
            || c.is_ascii_lowercase()
            || c.is_ascii_digit()
            || (keep_upper && c.is_ascii_uppercase())
    });

    // 8: whitespace collapse and trim.
    text.split_whitespace().collect::<Vec<_>>().join(" ")
}

/// Whitespace tokenizer for already-cleaned text.
pub fn tokenize(clean: &str) -> Vec<String> {
    clean.split_whitespace().map(str::to_string).collect()
}

/// Drop stopwords, preserving the order of the remaining tokens.
pub fn remove_stopwords(tokens: &[String], config: &PreprocessConfig) -> Vec<String> {
    tokens
        .iter()
        .filter(|t| !config.stopword_list.contains(t.as_str()))
        .cloned()
        .collect()
}

/// Deterministic train/test split.
///
/// Stratified mode shuffles each class with a stream keyed on
/// (seed, class) and apportions `round(test_fraction * N)` test slots
/// across classes by largest remainder, so per-class proportions stay
/// within one document of the global fraction.
pub fn split_dataset(
    docs: &[LabeledDocument],
    config: &SplitConfig,
) -> Result<(Vec<LabeledDocument>, Vec<LabeledDocument>)> {
    if !(config.test_fraction > 0.0 && config.test_fraction < 1.0) {
        return Err(Error::InvalidInput(format!(
            "test_fraction must be in (0, 1), got {}",
            config.test_fraction
        )));
    }
    if docs.is_empty() {
        return Err(Error::InvalidInput("cannot split an empty dataset".into()));
    }

    let mut test_indices: Vec<usize> = Vec::new();
    if config.stratified {
        let mut by_class: [Vec<usize>; 3] = [Vec::new(), Vec::new(), Vec::new()];
        for (i, doc) in docs.iter().enumerate() {
            by_class[doc.label.index()].push(i);
        }
        for (ci, members) in by_class.iter().enumerate() {
            if members.is_empty() {
                return Err(Error::InvalidInput(format!(
                    "stratified split requires every class; class {} has no documents",
                    SentimentLabel::from_index(ci)
                )));
            }
        }

        let total_test = (config.test_fraction * docs.len() as f64).round() as usize;
        let counts = apportion_test_counts(&by_class, config.test_fraction, total_test);

        for (ci, members) in by_class.iter().enumerate() {
            let mut shuffled = members.clone();
            shuffled.shuffle(&mut sub_rng(config.seed, &[tag::SPLIT, ci as u64]));
            test_indices.extend_from_slice(&shuffled[..counts[ci]]);
        }
    } else {
        let mut shuffled: Vec<usize> = (0..docs.len()).collect();
        shuffled.shuffle(&mut sub_rng(config.seed, &[tag::SPLIT, u64::MAX]));
        let total_test = (config.test_fraction * docs.len() as f64).round() as usize;
        test_indices.extend_from_slice(&shuffled[..total_test.min(docs.len())]);
    }

    let in_test: BTreeSet<usize> = test_indices.iter().copied().collect();
    let mut train = Vec::with_capacity(docs.len() - in_test.len());
    let mut test = Vec::with_capacity(in_test.len());
    for (i, doc) in docs.iter().enumerate() {
        if in_test.contains(&i) {
            test.push(doc.clone());
        } else {
            train.push(doc.clone());
        }
    }
    Ok((train, test))
}

/// Largest-remainder apportionment of `total_test` slots over classes,
/// quota `fraction * class_size`, remainder ties broken by class order.
fn apportion_test_counts(
    by_class: &[Vec<usize>; 3],
    fraction: f64,
    total_test: usize,
) -> [usize; 3] {
    let mut counts = [0usize; 3];
    let mut fracs = [(0usize, 0.0f64); 3];
    let mut assigned = 0;
    for ci in 0..3 {
        let quota = fraction * by_class[ci].len() as f64;
        counts[ci] = (quota.floor() as usize).min(by_class[ci].len());
        assigned += counts[ci];
        fracs[ci] = (ci, quota - quota.floor());
    }
    fracs.sort_by(|a, b| b.1.partial_cmp(&a.1).unwrap().then(a.0.cmp(&b.0)));
    let mut remaining = total_test.saturating_sub(assigned);
    while remaining > 0 {
        let mut gave = false;
        for &(ci, _) in &fracs {
            if remaining == 0 {
                break;
            }
            if counts[ci] < by_class[ci].len() {
                counts[ci] += 1;
                remaining -= 1;
                gave = true;
            }
        }
        if !gave {
            break;
        }
    }
    counts
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use std::io::Write;

    fn shipped() -> &'static PreprocessConfig {
        PreprocessConfig::shipped()
    }

    #[test]
    fn label_parsing_covers_exactly_three_values() {
        assert_eq!(SentimentLabel::from_int(-1).unwrap(), SentimentLabel::Negative);
        assert_eq!(SentimentLabel::from_int(0).unwrap(), SentimentLabel::Neutral);
        assert_eq!(SentimentLabel::from_int(1).unwrap(), SentimentLabel::Positive);
        assert!(SentimentLabel::from_int(2).is_err());
        assert!(SentimentLabel::from_int(-2).is_err());
    }

    #[test]
    fn shipped_stopword_list_is_pinned() {
        let cfg = shipped();
        assert_eq!(cfg.stopword_list.len(), 127);
        for w in ["this", "is", "the", "not", "very"] {
            assert!(cfg.stopword_list.contains(w), "missing stopword {w}");
        }
    }

    #[test]
    fn shipped_contraction_map_is_pinned() {
        let cfg = shipped();
        assert_eq!(cfg.contraction_map.len(), 90);
        assert_eq!(cfg.contraction_map["can't"], "cannot");
        assert_eq!(cfg.contraction_map["won't"], "will not");
    }

    #[test]
    fn shipped_emoticons_contain_no_plain_words() {
        // Pure-alphanumeric entries would make pass-two emoticon matches
        // possible and break idempotence.
        for emoticon in &shipped().emoticon_set {
            assert!(
                emoticon.chars().any(|c| !c.is_ascii_alphanumeric()),
                "emoticon {emoticon:?} has no punctuation"
            );
        }
    }

    #[test]
    fn clean_drops_urls_hashtags_mentions() {
        let cleaned = clean_text("Loved it! https://t.co/x #great @bob", shipped());
        assert_eq!(cleaned, "loved it");
    }

    #[test]
    fn clean_empty_is_empty() {
        assert_eq!(clean_text("", shipped()), "");
    }

    #[test]
    fn clean_expands_contractions_and_collapses_spaces() {
        assert_eq!(clean_text("I can't    WAIT!!!", shipped()), "i cannot wait");
    }

    #[test]
    fn clean_removes_emoticons() {
        assert_eq!(clean_text("so happy :) today :D", shipped()), "so happy today");
    }

    #[test]
    fn clean_handles_url_fragments_created_by_char_removal() {
        // '#' removal inside a token can fabricate "http"; the fixed-point
        // iteration has to catch it.
        let cleaned = clean_text("ht#tp x", shipped());
        assert_eq!(cleaned, "x");
    }

    #[test]
    fn tokenize_splits_on_space_runs() {
        assert_eq!(tokenize("cannot wait"), vec!["cannot", "wait"]);
        assert_eq!(tokenize(""), Vec::<String>::new());
        assert_eq!(tokenize("a  b"), vec!["a", "b"]);
    }

    #[test]
    fn stopword_removal_preserves_order() {
        let toks: Vec<String> = ["this", "movie", "is", "great"]
            .iter()
            .map(|s| s.to_string())
            .collect();
        assert_eq!(remove_stopwords(&toks, shipped()), vec!["movie", "great"]);
        assert_eq!(remove_stopwords(&[], shipped()), Vec::<String>::new());
        let thes: Vec<String> = ["the", "the"].iter().map(|s| s.to_string()).collect();
        assert_eq!(remove_stopwords(&thes, shipped()), Vec::<String>::new());
    }

    fn doc(text: &str, label: i64) -> LabeledDocument {
        LabeledDocument::new(text, SentimentLabel::from_int(label).unwrap(), "test")
    }

    #[test]
    fn load_csv_in_order() {
        let mut f = tempfile::NamedTempFile::new().unwrap();
        writeln!(f, "text,label").unwrap();
        writeln!(f, "great day,1").unwrap();
        writeln!(f, "bad day,-1").unwrap();
        let docs = load_dataset(f.path(), DataFormat::Csv).unwrap();
        assert_eq!(docs.len(), 2);
        assert_eq!(docs[0].text, "great day");
        assert_eq!(docs[0].label, SentimentLabel::Positive);
        assert_eq!(docs[1].label, SentimentLabel::Negative);
    }

    #[test]
    fn load_csv_header_only_is_empty() {
        let mut f = tempfile::NamedTempFile::new().unwrap();
        writeln!(f, "text,label,source").unwrap();
        assert!(load_dataset(f.path(), DataFormat::Csv).unwrap().is_empty());
    }

    #[test]
    fn load_csv_bad_label_names_line() {
        let mut f = tempfile::NamedTempFile::new().unwrap();
        writeln!(f, "text,label").unwrap();
        writeln!(f, "fine,1").unwrap();
        writeln!(f, "broken,2").unwrap();
        let err = load_dataset(f.path(), DataFormat::Csv).unwrap_err();
        let msg = err.to_string();
        assert!(msg.contains(":3:"), "expected line 3 in {msg:?}");
    }

    #[test]
    fn load_jsonl_roundtrip() {
        let mut f = tempfile::NamedTempFile::new().unwrap();
        writeln!(f, r#"{{"text":"great day","label":1,"source":"twitter"}}"#).unwrap();
        writeln!(f, r#"{{"text":"bad day","label":-1}}"#).unwrap();
        let docs = load_dataset(f.path(), DataFormat::Jsonl).unwrap();
        assert_eq!(docs.len(), 2);
        assert_eq!(docs[0].source, "twitter");
        assert_eq!(docs[1].source, "");
    }

    #[test]
    fn load_jsonl_bad_label_names_line() {
        let mut f = tempfile::NamedTempFile::new().unwrap();
        writeln!(f, r#"{{"text":"ok","label":0}}"#).unwrap();
        writeln!(f, r#"{{"text":"bad","label":7}}"#).unwrap();
        let err = load_dataset(f.path(), DataFormat::Jsonl).unwrap_err();
        assert!(err.to_string().contains(":2:"));
    }

    fn class_sizes(docs: &[LabeledDocument]) -> [usize; 3] {
        let mut out = [0usize; 3];
        for d in docs {
            out[d.label.index()] += 1;
        }
        out
    }

    #[test]
    fn split_100_docs_gives_25_test_with_largest_remainder_counts() {
        let mut docs = Vec::new();
        for i in 0..40 {
            docs.push(doc(&format!("neg {i}"), -1));
        }
        for i in 0..30 {
            docs.push(doc(&format!("neu {i}"), 0));
        }
        for i in 0..30 {
            docs.push(doc(&format!("pos {i}"), 1));
        }
        let (train, test) = split_dataset(&docs, &SplitConfig::new(7)).unwrap();
        assert_eq!(train.len(), 75);
        assert_eq!(test.len(), 25);
        assert_eq!(class_sizes(&test), [10, 8, 7]);
    }

    #[test]
    fn split_is_deterministic_per_seed() {
        let docs: Vec<LabeledDocument> = (0..60)
            .map(|i| doc(&format!("t{i}"), (i % 3) as i64 - 1))
            .collect();
        let cfg = SplitConfig::new(42);
        let (tr1, te1) = split_dataset(&docs, &cfg).unwrap();
        let (tr2, te2) = split_dataset(&docs, &cfg).unwrap();
        assert_eq!(tr1, tr2);
        assert_eq!(te1, te2);
        let (tr3, _) = split_dataset(&docs, &SplitConfig::new(43)).unwrap();
        assert_ne!(tr1, tr3);
    }

    #[test]
    fn split_tiny_dataset() {
        let docs = vec![doc("a", -1), doc("b", 0), doc("c", 1), doc("d", 1)];
        let (train, test) = split_dataset(&docs, &SplitConfig::new(1)).unwrap();
        assert_eq!(train.len(), 3);
        assert_eq!(test.len(), 1);
        assert_eq!(test[0].label, SentimentLabel::Positive);
    }

    #[test]
    fn split_missing_class_errors() {
        let docs = vec![doc("a", -1), doc("b", 1)];
        let err = split_dataset(&docs, &SplitConfig::new(1)).unwrap_err();
        assert!(err.to_string().contains("class 0"));
    }

    #[test]
    fn split_unstratified_ignores_missing_class() {
        let docs = vec![doc("a", -1), doc("b", 1), doc("c", 1), doc("d", 1)];
        let mut cfg = SplitConfig::new(1);
        cfg.stratified = false;
        let (train, test) = split_dataset(&docs, &cfg).unwrap();
        assert_eq!(train.len() + test.len(), 4);
        assert_eq!(test.len(), 1);
    }

    proptest! {
        #[test]
        fn clean_text_is_idempotent(raw in "[ -~]{0,80}") {
            let once = clean_text(&raw, shipped());
            let twice = clean_text(&once, shipped());
            prop_assert_eq!(once, twice);
        }

        #[test]
        fn pipeline_output_is_hygienic(raw in "[ -~]{0,80}") {
            let tokens = remove_stopwords(&tokenize(&clean_text(&raw, shipped())), shipped());
            for t in &tokens {
                prop_assert!(!t.contains('#'));
                prop_assert!(!t.contains('@'));
                prop_assert!(!t.contains("http"));
                prop_assert!(!t.chars().any(|c| c.is_uppercase()));
            }
        }

        #[test]
        fn split_is_a_partition(n in 3usize..60, seed in 0u64..500) {
            let docs: Vec<LabeledDocument> = (0..n)
                .map(|i| doc(&format!("t{i}"), (i % 3) as i64 - 1))
                .collect();
            let (train, test) = split_dataset(&docs, &SplitConfig::new(seed)).unwrap();
            prop_assert_eq!(train.len() + test.len(), docs.len());
            let mut seen: Vec<&str> = train.iter().chain(test.iter()).map(|d| d.text.as_str()).collect();
            seen.sort_unstable();
            seen.dedup();
            prop_assert_eq!(seen.len(), docs.len());
            let total_test = (0.25 * n as f64).round() as i64;
            prop_assert!((test.len() as i64 - total_test).abs() <= 3);
        }
    }
}
