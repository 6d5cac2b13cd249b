//! Vocabulary construction, sparse document-term matrices, n-gram
//! expansion, and TF-IDF weighting.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};

/// Term dictionary with dense indices. Terms are ordered by descending
/// document frequency, ties broken lexicographically.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(from = "VocabularyData", into = "VocabularyData")]
pub struct Vocabulary {
    terms: Vec<String>,
    doc_freq: Vec<u32>,
    index: HashMap<String, usize>,
}

#[derive(Serialize, Deserialize)]
struct VocabularyData {
    terms: Vec<String>,
    doc_freq: Vec<u32>,
}

impl From<VocabularyData> for Vocabulary {
    fn from(data: VocabularyData) -> Self {
        let index = data
            .terms
            .iter()
            .enumerate()
            .map(|(i, t)| (t.clone(), i))
            .collect();
        Vocabulary {
            terms: data.terms,
            doc_freq: data.doc_freq,
            index,
        }
    }
}

impl From<Vocabulary> for VocabularyData {
    fn from(v: Vocabulary) -> Self {
        VocabularyData {
            terms: v.terms,
            doc_freq: v.doc_freq,
        }
    }
}

impl Vocabulary {
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn index_of(&self, term: &str) -> Option<usize> {
        self.index.get(term).copied()
    }

    pub fn term(&self, index: usize) -> &str {
        &self.terms[index]
    }

    pub fn doc_freq(&self, index: usize) -> u32 {
        self.doc_freq[index]
    }

    /// Content hash used for artifact compatibility checks.
    pub fn content_hash(&self) -> String {
        let mut hasher = Sha256::new();
        for (term, df) in self.terms.iter().zip(&self.doc_freq) {
            hasher.update(term.as_bytes());
            hasher.update([0u8]);
            hasher.update(df.to_le_bytes());
        }
        hex_digest(hasher)
    }
}

pub(crate) fn hex_digest(hasher: Sha256) -> String {
    hasher
        .finalize()
        .iter()
        .map(|b| format!("{b:02x}"))
        .collect()
}

/// Sparse feature row: (column, value) pairs sorted by column, no explicit
/// zeros.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SparseRow(pub Vec<(usize, f64)>);

impl SparseRow {
    pub fn iter(&self) -> impl Iterator<Item = (usize, f64)> + '_ {
        self.0.iter().copied()
    }

    pub fn nnz(&self) -> usize {
        self.0.len()
    }

    pub fn l2_norm(&self) -> f64 {
        self.0.iter().map(|(_, v)| v * v).sum::<f64>().sqrt()
    }

    pub fn sum(&self) -> f64 {
        self.0.iter().map(|(_, v)| v).sum()
    }
}

/// Sparse documents-by-terms matrix.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct DocTermMatrix {
    pub n_rows: usize,
    pub n_cols: usize,
    pub rows: Vec<SparseRow>,
}

impl DocTermMatrix {
    pub fn row(&self, i: usize) -> &SparseRow {
        &self.rows[i]
    }

    /// Densify. Rejected outright on large shapes: the sparse form is the
    /// contract, a dense document-term matrix blows up memory first.
    pub fn to_dense(&self) -> Result<Vec<Vec<f64>>> {
        if (self.n_rows as u128) * (self.n_cols as u128) > 100_000_000 {
            return Err(Error::InvalidInput(format!(
                "dense {}x{} document-term matrix refused (> 1e8 cells)",
                self.n_rows, self.n_cols
            )));
        }
        let mut dense = vec![vec![0.0; self.n_cols]; self.n_rows];
        for (i, row) in self.rows.iter().enumerate() {
            for (j, v) in row.iter() {
                dense[i][j] = v;
            }
        }
        Ok(dense)
    }
}

/// Emit all contiguous n-grams for n in `lo..=hi`, n ascending,
/// left-to-right within each n, tokens joined by a single space.
pub fn extract_ngrams(tokens: &[String], range: (usize, usize)) -> Vec<String> {
    let (lo, hi) = range;
    assert!(lo >= 1 && hi >= lo, "invalid n-gram range ({lo}, {hi})");
    let mut out = Vec::new();
    for n in lo..=hi {
        if n > tokens.len() {
            break;
        }
        for window in tokens.windows(n) {
            out.push(window.join(" "));
        }
    }
    out
}

/// Build a vocabulary over term lists, keeping terms with document
/// frequency >= `min_df`.
pub fn build_vocabulary(docs: &[Vec<String>], min_df: u32) -> Result<Vocabulary> {
    assert!(min_df >= 1, "min_df must be >= 1");
    if docs.is_empty() {
        return Err(Error::InvalidInput(
            "cannot build a vocabulary from an empty corpus".into(),
        ));
    }
    let mut df: HashMap<&str, u32> = HashMap::new();
    let mut seen: std::collections::HashSet<&str> = std::collections::HashSet::new();
    for doc in docs {
        seen.clear();
        for term in doc {
            if seen.insert(term.as_str()) {
                *df.entry(term.as_str()).or_insert(0) += 1;
            }
        }
    }
    let mut kept: Vec<(&str, u32)> = df
        .into_iter()
        .filter(|&(_, count)| count >= min_df)
        .collect();
    if kept.is_empty() {
        return Err(Error::InvalidInput(format!(
            "no term reaches document frequency {min_df}"
        )));
    }
    kept.sort_by(|a, b| b.1.cmp(&a.1).then_with(|| a.0.cmp(b.0)));

    let terms: Vec<String> = kept.iter().map(|(t, _)| t.to_string()).collect();
    let doc_freq: Vec<u32> = kept.iter().map(|&(_, c)| c).collect();
    let index = terms
        .iter()
        .enumerate()
        .map(|(i, t)| (t.clone(), i))
        .collect();
    Ok(Vocabulary {
        terms,
        doc_freq,
        index,
    })
}

/// Term-count row for one document; out-of-vocabulary terms are ignored.
pub fn count_vectorize(doc: &[String], vocab: &Vocabulary) -> SparseRow {
    let mut counts: HashMap<usize, f64> = HashMap::new();
    for term in doc {
        if let Some(idx) = vocab.index_of(term) {
            *counts.entry(idx).or_insert(0.0) += 1.0;
        }
    }
    let mut entries: Vec<(usize, f64)> = counts.into_iter().collect();
    entries.sort_unstable_by_key(|&(i, _)| i);
    SparseRow(entries)
}

/// Fitted TF-IDF weighting: smoothed idf `ln((1+N)/(1+df)) + 1` with L2 row
/// normalization.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct TfIdfModel {
    pub vocabulary: Vocabulary,
    pub idf: Vec<f64>,
    pub ngram_range: (usize, usize),
    pub min_df: u32,
}

impl TfIdfModel {
    /// Weight one tokenized document against the fitted vocabulary.
    /// N-gram expansion uses the fitted range; zero rows stay zero.
    pub fn transform_doc(&self, tokens: &[String]) -> SparseRow {
        let terms = extract_ngrams(tokens, self.ngram_range);
        let mut row = count_vectorize(&terms, &self.vocabulary);
        for (idx, value) in row.0.iter_mut() {
            *value *= self.idf[*idx];
        }
        normalize_row(&mut row);
        row
    }

    pub fn transform(&self, docs: &[Vec<String>]) -> DocTermMatrix {
        DocTermMatrix {
            n_rows: docs.len(),
            n_cols: self.vocabulary.len(),
            rows: docs.iter().map(|d| self.transform_doc(d)).collect(),
        }
    }
}

fn normalize_row(row: &mut SparseRow) {
    let norm = row.l2_norm();
    if norm > 0.0 {
        for (_, v) in row.0.iter_mut() {
            *v /= norm;
        }
    }
}

/// Fit TF-IDF over tokenized documents (n-gram expansion included) and
/// transform the fitting corpus.
pub fn tfidf_fit_transform(
    docs: &[Vec<String>],
    ngram_range: (usize, usize),
    min_df: u32,
) -> Result<(TfIdfModel, DocTermMatrix)> {
    let expanded: Vec<Vec<String>> = docs
        .iter()
        .map(|d| extract_ngrams(d, ngram_range))
        .collect();
    let vocabulary = build_vocabulary(&expanded, min_df)?;
    let n = docs.len() as f64;
    let idf: Vec<f64> = (0..vocabulary.len())
        .map(|i| ((1.0 + n) / (1.0 + vocabulary.doc_freq(i) as f64)).ln() + 1.0)
        .collect();
    let model = TfIdfModel {
        vocabulary,
        idf,
        ngram_range,
        min_df,
    };
    let matrix = model.transform(docs);
    Ok((model, matrix))
}
