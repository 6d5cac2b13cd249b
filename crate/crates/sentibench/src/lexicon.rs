//! Lexicon-based polarity/subjectivity scoring.
//!
//! Each matched word contributes its (polarity, subjectivity) pair; a
//! modifier entry scales the scores of the immediately following word by
//! its intensity. The document score is the arithmetic mean over matched,
//! non-modifier entries.

use std::collections::BTreeMap;
use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// One lexicon row. Modifier entries carry only an intensity that applies
/// to the next word and contribute no scores of their own.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LexiconEntry {
    pub word: String,
    pub polarity: f64,
    pub subjectivity: f64,
    pub intensity: f64,
    pub is_modifier: bool,
}

/// Word-keyed lexicon.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Lexicon {
    entries: BTreeMap<String, LexiconEntry>,
}

pub const SHIPPED_LEXICON: &str = include_str!("../data/lexicon.tsv");

impl Lexicon {
    /// The starter lexicon shipped with the crate.
    pub fn shipped() -> &'static Lexicon {
        static SHIPPED: std::sync::OnceLock<Lexicon> = std::sync::OnceLock::new();
        SHIPPED.get_or_init(|| {
            Lexicon::from_content(SHIPPED_LEXICON, "<lexicon>").expect("shipped lexicon is valid")
        })
    }

    pub fn load(path: &Path) -> Result<Lexicon> {
        let content = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        Lexicon::from_content(&content, &path.display().to_string())
    }

    /// Parse `word<TAB>polarity<TAB>subjectivity<TAB>intensity<TAB>modifier_flag`
    /// lines. `#` comments and blank lines are permitted. Duplicate words
    /// merge by averaging polarity and subjectivity and taking the maximum
    /// intensity.
    pub fn from_content(content: &str, path: &str) -> Result<Lexicon> {
        let mut entries: BTreeMap<String, (LexiconEntry, u32)> = BTreeMap::new();
        for (i, raw_line) in content.lines().enumerate() {
            let line = raw_line.trim_end_matches('\r');
            if line.trim().is_empty() || line.trim_start().starts_with('#') {
                continue;
            }
            let entry = parse_line(line, path, i + 1)?;
            match entries.get_mut(&entry.word) {
                None => {
                    entries.insert(entry.word.clone(), (entry, 1));
                }
                Some((merged, n)) => {
                    let count = *n as f64;
                    merged.polarity = (merged.polarity * count + entry.polarity) / (count + 1.0);
                    merged.subjectivity =
                        (merged.subjectivity * count + entry.subjectivity) / (count + 1.0);
                    merged.intensity = merged.intensity.max(entry.intensity);
                    merged.is_modifier |= entry.is_modifier;
                    *n += 1;
                }
            }
        }
        Ok(Lexicon {
            entries: entries.into_iter().map(|(w, (e, _))| (w, e)).collect(),
        })
    }

    pub fn from_entries(list: impl IntoIterator<Item = LexiconEntry>) -> Lexicon {
        Lexicon {
            entries: list.into_iter().map(|e| (e.word.clone(), e)).collect(),
        }
    }

    pub fn get(&self, word: &str) -> Option<&LexiconEntry> {
        self.entries.get(word)
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn entries(&self) -> impl Iterator<Item = &LexiconEntry> {
        self.entries.values()
    }
}

fn parse_line(line: &str, path: &str, line_no: usize) -> Result<LexiconEntry> {
    let fields: Vec<&str> = line.split('\t').collect();
    if fields.len() != 5 {
        return Err(Error::parse(
            path,
            line_no,
            format!("expected 5 tab-separated fields, got {}", fields.len()),
        ));
    }
    let word = fields[0].trim().to_string();
    if word.is_empty() {
        return Err(Error::parse(path, line_no, "empty word"));
    }
    let num = |idx: usize, name: &str| -> Result<f64> {
        fields[idx].trim().parse::<f64>().map_err(|_| {
            Error::parse(path, line_no, format!("{name} {:?} is not a number", fields[idx]))
        })
    };
    let polarity = num(1, "polarity")?;
    let subjectivity = num(2, "subjectivity")?;
    let intensity = num(3, "intensity")?;
    let is_modifier = match fields[4].trim() {
        "0" => false,
        "1" => true,
        other => {
            return Err(Error::parse(
                path,
                line_no,
                format!("modifier flag {other:?} must be 0 or 1"),
            ))
        }
    };
    if !(-1.0..=1.0).contains(&polarity) {
        return Err(Error::parse(
            path,
            line_no,
            format!("polarity {polarity} outside [-1, 1]"),
        ));
    }
    if !(0.0..=1.0).contains(&subjectivity) {
        return Err(Error::parse(
            path,
            line_no,
            format!("subjectivity {subjectivity} outside [0, 1]"),
        ));
    }
    if intensity <= 0.0 {
        return Err(Error::parse(
            path,
            line_no,
            format!("intensity {intensity} must be positive"),
        ));
    }
    Ok(LexiconEntry {
        word,
        polarity,
        subjectivity,
        intensity,
        is_modifier,
    })
}

/// Document-level scores: means over matched non-modifier entries, with
/// per-word clamping into the legal ranges.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SentimentScores {
    pub polarity: f64,
    pub subjectivity: f64,
    pub matched_terms: usize,
}

impl SentimentScores {
    pub const NEUTRAL: SentimentScores = SentimentScores {
        polarity: 0.0,
        subjectivity: 0.0,
        matched_terms: 0,
    };
}

/// Score a token stream left to right.
///
/// A modifier entry scales exactly the next token; when the next token is
/// not a scored lexicon word, the modifier is discarded. Unknown words do
/// not enter the average. Zero matches scores (0, 0).
pub fn score_text(tokens: &[String], lexicon: &Lexicon) -> SentimentScores {
    let mut polarity_sum = 0.0;
    let mut subjectivity_sum = 0.0;
    let mut matched = 0usize;
    let mut pending_intensity: Option<f64> = None;

    for token in tokens {
        let entry = lexicon.get(token);
        let intensity = pending_intensity.take().unwrap_or(1.0);
        match entry {
            Some(e) if e.is_modifier => {
                pending_intensity = Some(e.intensity);
            }
            Some(e) => {
                polarity_sum += (e.polarity * intensity).clamp(-1.0, 1.0);
                subjectivity_sum += (e.subjectivity * intensity).clamp(0.0, 1.0);
                matched += 1;
            }
            None => {}
        }
    }

    if matched == 0 {
        return SentimentScores::NEUTRAL;
    }
    SentimentScores {
        polarity: (polarity_sum / matched as f64).clamp(-1.0, 1.0),
        subjectivity: (subjectivity_sum / matched as f64).clamp(0.0, 1.0),
        matched_terms: matched,
    }
}
