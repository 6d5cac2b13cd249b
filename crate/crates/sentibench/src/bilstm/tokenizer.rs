//! Frequency-ranked integer tokenizer with index 0 reserved for padding.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::features::hex_digest;

/// Word-to-integer mapping: indices 1..=V assigned by descending corpus
/// frequency, ties by first occurrence; 0 is never assigned to a word.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(from = "TokenizerData", into = "TokenizerData")]
pub struct SeqTokenizer {
    words: Vec<String>,
    index: HashMap<String, usize>,
}

#[derive(Serialize, Deserialize)]
struct TokenizerData {
    words: Vec<String>,
}

impl From<TokenizerData> for SeqTokenizer {
    fn from(data: TokenizerData) -> Self {
        let index = data
            .words
            .iter()
            .enumerate()
            .map(|(i, w)| (w.clone(), i + 1))
            .collect();
        SeqTokenizer {
            words: data.words,
            index,
        }
    }
}

impl From<SeqTokenizer> for TokenizerData {
    fn from(t: SeqTokenizer) -> Self {
        TokenizerData { words: t.words }
    }
}

/// Rank words by total corpus frequency (ties by first occurrence) and keep
/// the top `max_vocab`.
pub fn fit_tokenizer(docs: &[Vec<String>], max_vocab: usize) -> Result<SeqTokenizer> {
    if docs.is_empty() || docs.iter().all(|d| d.is_empty()) {
        return Err(Error::InvalidInput(
            "cannot fit a tokenizer on an empty corpus".into(),
        ));
    }
    let mut counts: HashMap<&str, (u64, usize)> = HashMap::new();
    let mut order = 0usize;
    for doc in docs {
        for word in doc {
            counts
                .entry(word.as_str())
                .and_modify(|e| e.0 += 1)
                .or_insert_with(|| {
                    order += 1;
                    (1, order)
                });
        }
    }
    let mut ranked: Vec<(&str, (u64, usize))> = counts.into_iter().collect();
    ranked.sort_by(|a, b| b.1 .0.cmp(&a.1 .0).then(a.1 .1.cmp(&b.1 .1)));
    ranked.truncate(max_vocab);

    let words: Vec<String> = ranked.iter().map(|(w, _)| w.to_string()).collect();
    let index = words
        .iter()
        .enumerate()
        .map(|(i, w)| (w.clone(), i + 1))
        .collect();
    Ok(SeqTokenizer { words, index })
}

impl SeqTokenizer {
    /// Number of indexed words V; valid indices are 1..=V.
    pub fn vocab_size(&self) -> usize {
        self.words.len()
    }

    pub fn index_of(&self, word: &str) -> Option<usize> {
        self.index.get(word).copied()
    }

    /// Map known words to indices, drop unknown words, keep the first
    /// `maxlen` indices, then post-pad with zeros to length `maxlen`.
    pub fn encode_and_pad(&self, doc: &[String], maxlen: usize) -> Vec<usize> {
        assert!(maxlen >= 1, "maxlen must be >= 1");
        let mut encoded: Vec<usize> = doc
            .iter()
            .filter_map(|w| self.index_of(w))
            .take(maxlen)
            .collect();
        encoded.resize(maxlen, 0);
        encoded
    }

    pub fn content_hash(&self) -> String {
        let mut hasher = Sha256::new();
        for w in &self.words {
            hasher.update(w.as_bytes());
            hasher.update([0u8]);
        }
        hex_digest(hasher)
    }
}
