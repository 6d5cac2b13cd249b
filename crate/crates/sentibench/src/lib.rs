//! Sentiment-classification toolkit and benchmark harness.
//!
//! Three pipelines over a shared preprocessing and evaluation layer:
//!
//! - lexicon polarity/subjectivity scoring feeding a random forest,
//! - TF-IDF n-gram features feeding multinomial naive Bayes,
//! - a from-scratch bidirectional LSTM trained with SGD + momentum.
//!
//! The runnable programs under `examples/` demonstrate each capability;
//! the `sentibench` binary drives full train / evaluate / compare runs
//! from a TOML config.

pub mod corpus;
pub mod error;
pub mod eval;
pub mod features;
pub mod forest;
pub mod lexicon;
pub mod naive_bayes;
pub mod rng;

pub use corpus::{
    clean_text, load_dataset, remove_stopwords, split_dataset, tokenize, DataFormat,
    LabeledDocument, PreprocessConfig, SentimentLabel, SplitConfig,
};
pub use error::{Error, Result};
pub use eval::{compute_metrics, confusion_matrix, ConfusionMatrix, MetricsReport};
pub use features::{
    build_vocabulary, count_vectorize, extract_ngrams, tfidf_fit_transform, DocTermMatrix,
    SparseRow, TfIdfModel, Vocabulary,
};
pub use forest::{
    fit_decision_tree, fit_forest, forest_predict, tree_predict, DecisionTree, ForestConfig,
    RandomForestModel,
};
pub use lexicon::{score_text, Lexicon, LexiconEntry, SentimentScores};
pub use naive_bayes::{nb_fit, nb_predict, nb_predict_log_proba, NaiveBayesModel};
