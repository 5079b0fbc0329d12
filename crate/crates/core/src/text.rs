//! Keyword-count featurization of message corpora.
//!
//! Messages are lowercased and split on non-alphanumeric runs (ASCII
//! rules, no stemming). A dictionary keeps the tokens frequent enough in
//! the corpus, minus stopwords; count vectors align to the dictionary
//! order, which is part of the schema so vectors stay comparable across
//! runs.

use std::collections::{BTreeSet, HashMap};
use std::fs::File;
use std::io::{BufRead, BufReader, Read};
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::dataset::{AttributeSchema, ClassLabel, Column, LabeledDataset, Record};
use crate::error::{Error, Result};
use crate::Scalar;

/// Ordered keyword list plus the stopwords that were excluded from it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct KeywordDictionary {
    keywords: Vec<String>,
    stopwords: BTreeSet<String>,
}

impl KeywordDictionary {
    pub fn new(keywords: Vec<String>, stopwords: BTreeSet<String>) -> Result<Self> {
        if keywords.is_empty() {
            return Err(Error::EmptyInput("dictionary has no keywords".into()));
        }
        let mut seen = BTreeSet::new();
        for k in &keywords {
            if stopwords.contains(k) {
                return Err(Error::InvalidParameter(format!(
                    "keyword {k:?} is also a stopword"
                )));
            }
            if !seen.insert(k.clone()) {
                return Err(Error::InvalidParameter(format!("duplicate keyword {k:?}")));
            }
        }
        Ok(Self { keywords, stopwords })
    }

    /// Dictionary from a fixed keyword order with no stopword record,
    /// e.g. reconstructed from a model schema.
    pub fn from_keywords(keywords: Vec<String>) -> Result<Self> {
        Self::new(keywords, BTreeSet::new())
    }

    pub fn keywords(&self) -> &[String] {
        &self.keywords
    }

    pub fn stopwords(&self) -> &BTreeSet<String> {
        &self.stopwords
    }

    pub fn len(&self) -> usize {
        self.keywords.len()
    }

    pub fn is_empty(&self) -> bool {
        self.keywords.is_empty()
    }
}

/// Lowercase and split on non-alphanumeric runs; empty tokens dropped.
pub fn tokenize(message: &str) -> Vec<String> {
    message
        .split(|c: char| !c.is_ascii_alphanumeric())
        .filter(|t| !t.is_empty())
        .map(|t| t.to_ascii_lowercase())
        .collect()
}

/// Keep the tokens occurring at least `min_count` times across the
/// corpus, minus stopwords, ordered by descending frequency then
/// lexicographically.
pub fn build_dictionary(
    corpus: &[String],
    stopwords: &BTreeSet<String>,
    min_count: usize,
) -> Result<KeywordDictionary> {
    if corpus.is_empty() {
        return Err(Error::EmptyInput("empty corpus".into()));
    }
    let mut freq: HashMap<String, usize> = HashMap::new();
    for message in corpus {
        for token in tokenize(message) {
            *freq.entry(token).or_insert(0) += 1;
        }
    }
    let mut entries: Vec<(String, usize)> = freq
        .into_iter()
        .filter(|(t, c)| *c >= min_count && !stopwords.contains(t))
        .collect();
    entries.sort_by(|a, b| b.1.cmp(&a.1).then_with(|| a.0.cmp(&b.0)));
    if entries.is_empty() {
        return Err(Error::EmptyInput(format!(
            "no token reaches min_count {min_count} after stopword removal"
        )));
    }
    KeywordDictionary::new(entries.into_iter().map(|(t, _)| t).collect(), stopwords.clone())
}

/// Count dictionary tokens per message; out-of-dictionary tokens are
/// ignored. Row `i` aligns with `messages[i]`, columns with the
/// dictionary order.
pub fn vectorize(messages: &[String], dict: &KeywordDictionary) -> Vec<Vec<u64>> {
    let index: HashMap<&str, usize> = dict
        .keywords()
        .iter()
        .enumerate()
        .map(|(i, k)| (k.as_str(), i))
        .collect();
    messages
        .iter()
        .map(|m| {
            let mut counts = vec![0u64; dict.len()];
            for token in tokenize(m) {
                if let Some(&i) = index.get(token.as_str()) {
                    counts[i] += 1;
                }
            }
            counts
        })
        .collect()
}

/// Element-wise total of count vectors, aligned to the dictionary.
pub fn aggregate_counts(dict: &KeywordDictionary, vectors: &[Vec<u64>]) -> Vec<u64> {
    let mut totals = vec![0u64; dict.len()];
    for v in vectors {
        for (t, &c) in totals.iter_mut().zip(v) {
            *t += c;
        }
    }
    totals
}

/// Top `k` keywords by aggregate count, ties broken lexicographically.
/// Asking for more than the dictionary holds returns the full ranking.
pub fn top_keywords(
    dict: &KeywordDictionary,
    totals: &[u64],
    k: usize,
) -> Result<Vec<(String, u64)>> {
    if k == 0 {
        return Err(Error::InvalidParameter("k must be >= 1".into()));
    }
    if totals.len() != dict.len() {
        return Err(Error::InvalidParameter(format!(
            "{} totals for a dictionary of {}",
            totals.len(),
            dict.len()
        )));
    }
    let mut ranked: Vec<(String, u64)> = dict
        .keywords()
        .iter()
        .cloned()
        .zip(totals.iter().copied())
        .collect();
    ranked.sort_by(|a, b| b.1.cmp(&a.1).then_with(|| a.0.cmp(&b.0)));
    ranked.truncate(k);
    Ok(ranked)
}

/// Turn messages into a count-attribute dataset: one count column per
/// keyword, labels attached, ids defaulting to row order.
pub fn to_dataset<F: Scalar>(
    messages: &[String],
    labels: &[ClassLabel],
    dict: &KeywordDictionary,
) -> Result<LabeledDataset<F>> {
    if messages.len() != labels.len() {
        return Err(Error::InvalidParameter(format!(
            "{} messages but {} labels",
            messages.len(),
            labels.len()
        )));
    }
    let columns = dict.keywords().iter().map(Column::count).collect();
    let schema = AttributeSchema::new(columns, "label")?;
    let vectors = vectorize(messages, dict);
    let records = vectors
        .into_iter()
        .enumerate()
        .map(|(i, counts)| {
            Record::new(
                i.to_string(),
                counts.into_iter().map(|c| F::from_f64_lossy(c as f64)).collect(),
            )
        })
        .collect();
    LabeledDataset::new(schema, records, labels.to_vec())
}

/// Load a `(label, text)` corpus from CSV with `label` and `text` header
/// columns.
pub fn load_message_csv(path: impl AsRef<Path>) -> Result<(Vec<ClassLabel>, Vec<String>)> {
    let file = File::open(path.as_ref())?;
    read_message_csv(file)
}

pub fn read_message_csv<R: Read>(reader: R) -> Result<(Vec<ClassLabel>, Vec<String>)> {
    let mut rdr = csv::ReaderBuilder::new().has_headers(true).from_reader(reader);
    let headers = rdr.headers().map_err(|e| Error::Schema(format!("cannot read header: {e}")))?;
    let label_pos = headers
        .iter()
        .position(|h| h == "label")
        .ok_or_else(|| Error::Schema("missing column \"label\" in header".into()))?;
    let text_pos = headers
        .iter()
        .position(|h| h == "text")
        .ok_or_else(|| Error::Schema("missing column \"text\" in header".into()))?;
    let mut labels = Vec::new();
    let mut texts = Vec::new();
    for (i, row) in rdr.records().enumerate() {
        let row = row?;
        let raw_label = row.get(label_pos).unwrap_or("").trim();
        let label = ClassLabel::new(raw_label).map_err(|_| Error::Parse {
            row: i + 1,
            message: "empty label".into(),
        })?;
        labels.push(label);
        texts.push(row.get(text_pos).unwrap_or("").to_string());
    }
    if texts.is_empty() {
        return Err(Error::EmptyDataset);
    }
    Ok((labels, texts))
}

/// Load one-message-per-line text with a sidecar label file (one label
/// per line, same length).
pub fn load_message_lines(
    text_path: impl AsRef<Path>,
    label_path: impl AsRef<Path>,
) -> Result<(Vec<ClassLabel>, Vec<String>)> {
    let texts: Vec<String> = BufReader::new(File::open(text_path.as_ref())?)
        .lines()
        .collect::<std::io::Result<_>>()?;
    let labels_raw: Vec<String> = BufReader::new(File::open(label_path.as_ref())?)
        .lines()
        .collect::<std::io::Result<_>>()?;
    if texts.len() != labels_raw.len() {
        return Err(Error::Schema(format!(
            "{} messages but {} labels in sidecar file",
            texts.len(),
            labels_raw.len()
        )));
    }
    if texts.is_empty() {
        return Err(Error::EmptyDataset);
    }
    let labels = labels_raw
        .into_iter()
        .enumerate()
        .map(|(i, l)| {
            ClassLabel::new(l.trim()).map_err(|_| Error::Parse {
                row: i + 1,
                message: "empty label".into(),
            })
        })
        .collect::<Result<_>>()?;
    Ok((labels, texts))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn msgs(texts: &[&str]) -> Vec<String> {
        texts.iter().map(|t| t.to_string()).collect()
    }

    #[test]
    fn tokenize_examples() {
        assert_eq!(tokenize("Win a FREE prize!"), vec!["win", "a", "free", "prize"]);
        assert_eq!(tokenize(""), Vec::<String>::new());
        assert_eq!(tokenize("to-day's offer"), vec!["to", "day", "s", "offer"]);
    }

    #[test]
    fn dictionary_drops_stopwords() {
        let corpus = msgs(&["to win to lose", "to win again", "win big"]);
        let stop: BTreeSet<String> = ["to".to_string()].into();
        let dict = build_dictionary(&corpus, &stop, 2).unwrap();
        assert!(!dict.keywords().contains(&"to".to_string()));
        assert!(dict.keywords().contains(&"win".to_string()));
    }

    #[test]
    fn dictionary_min_count_above_all_is_error() {
        let corpus = msgs(&["one two", "three four"]);
        let err = build_dictionary(&corpus, &BTreeSet::new(), 10).unwrap_err();
        assert!(matches!(err, Error::EmptyInput(_)));
    }

    #[test]
    fn dictionary_frequency_then_lexicographic_order() {
        let corpus = msgs(&["bb aa bb aa", "cc bb"]);
        let dict = build_dictionary(&corpus, &BTreeSet::new(), 1).unwrap();
        // bb: 3, aa: 2, cc: 1.
        assert_eq!(dict.keywords(), &["bb", "aa", "cc"]);
        // Tie between aa(2) and bb(2) resolves lexicographically.
        let corpus2 = msgs(&["bb aa", "aa bb"]);
        let dict2 = build_dictionary(&corpus2, &BTreeSet::new(), 1).unwrap();
        assert_eq!(dict2.keywords(), &["aa", "bb"]);
    }

    #[test]
    fn vectorize_counts_and_ignores_unknown() {
        let dict = KeywordDictionary::from_keywords(vec!["free".into(), "prize".into()]).unwrap();
        let rows = vectorize(&msgs(&["free free FREE stuff", "nothing here"]), &dict);
        assert_eq!(rows[0], vec![3, 0]);
        assert_eq!(rows[1], vec![0, 0]);
        let again = vectorize(&msgs(&["free free FREE stuff", "nothing here"]), &dict);
        assert_eq!(rows, again);
    }

    #[test]
    fn aggregate_partition_sums_match_whole() {
        let dict =
            KeywordDictionary::from_keywords(vec!["a".into(), "b".into(), "c".into()]).unwrap();
        let corpus = msgs(&["a b", "a a c", "b c c", "a"]);
        let rows = vectorize(&corpus, &dict);
        let whole = aggregate_counts(&dict, &rows);
        let part1 = aggregate_counts(&dict, &rows[..2]);
        let part2 = aggregate_counts(&dict, &rows[2..]);
        let rejoined: Vec<u64> = part1.iter().zip(&part2).map(|(x, y)| x + y).collect();
        assert_eq!(whole, rejoined);
    }

    #[test]
    fn top_keywords_ranking() {
        let dict =
            KeywordDictionary::from_keywords(vec!["a".into(), "b".into(), "c".into()]).unwrap();
        let top = top_keywords(&dict, &[5, 3, 3], 1).unwrap();
        assert_eq!(top, vec![("a".to_string(), 5)]);
        let full = top_keywords(&dict, &[5, 3, 3], 10).unwrap();
        assert_eq!(full.len(), 3);
        // Tie between b and c resolves lexicographically.
        assert_eq!(full[1].0, "b");
        assert_eq!(full[2].0, "c");
        assert!(top_keywords(&dict, &[5, 3, 3], 0).is_err());
    }

    #[test]
    fn stopwords_never_surface_in_rankings() {
        let corpus = msgs(&["to to to win", "to win to"]);
        let stop: BTreeSet<String> = ["to".to_string()].into();
        let dict = build_dictionary(&corpus, &stop, 1).unwrap();
        let rows = vectorize(&corpus, &dict);
        let totals = aggregate_counts(&dict, &rows);
        let top = top_keywords(&dict, &totals, 20).unwrap();
        assert!(top.iter().all(|(t, _)| t != "to"));
    }

    #[test]
    fn to_dataset_builds_count_schema() {
        let dict = KeywordDictionary::from_keywords(vec!["free".into(), "call".into()]).unwrap();
        let corpus = msgs(&["free call free", "call me"]);
        let labels = vec![ClassLabel::new("spam").unwrap(), ClassLabel::new("ham").unwrap()];
        let data: LabeledDataset<f64> = to_dataset(&corpus, &labels, &dict).unwrap();
        assert_eq!(data.len(), 2);
        assert_eq!(data.schema().arity(), 2);
        assert_eq!(data.records()[0].values, vec![2.0, 1.0]);
    }

    #[test]
    fn message_csv_loader() {
        let text = "label,text\nspam,\"Win a FREE prize, now!\"\nham,see you at lunch\n";
        let (labels, texts) = read_message_csv(text.as_bytes()).unwrap();
        assert_eq!(labels.len(), 2);
        assert_eq!(labels[0].as_str(), "spam");
        assert_eq!(texts[0], "Win a FREE prize, now!");
        assert!(read_message_csv("label,text\n".as_bytes()).is_err());
        assert!(read_message_csv("foo,bar\nx,y\n".as_bytes()).is_err());
    }

    #[test]
    fn line_corpus_with_sidecar_labels() {
        let dir = std::env::temp_dir().join(format!("audit-sampler-text-{}", std::process::id()));
        std::fs::create_dir_all(&dir).unwrap();
        std::fs::write(dir.join("m.txt"), "win free cash\nsee you at lunch\n").unwrap();
        std::fs::write(dir.join("l.txt"), "spam\nham\n").unwrap();
        let (labels, texts) =
            load_message_lines(dir.join("m.txt"), dir.join("l.txt")).unwrap();
        assert_eq!(labels[0].as_str(), "spam");
        assert_eq!(texts[1], "see you at lunch");
        // Length mismatch between corpus and sidecar is a schema error.
        std::fs::write(dir.join("l2.txt"), "spam\n").unwrap();
        assert!(load_message_lines(dir.join("m.txt"), dir.join("l2.txt")).is_err());
        let _ = std::fs::remove_dir_all(&dir);
    }

    #[test]
    fn dictionary_json_round_trip() {
        let stop: BTreeSet<String> = ["and".to_string()].into();
        let dict = KeywordDictionary::new(vec!["win".into(), "cash".into()], stop).unwrap();
        let json = serde_json::to_string(&dict).unwrap();
        let back: KeywordDictionary = serde_json::from_str(&json).unwrap();
        assert_eq!(back, dict);
    }
}
