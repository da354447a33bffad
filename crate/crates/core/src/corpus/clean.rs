use std::collections::HashSet;
use std::path::Path;

use serde::{Deserialize, Serialize};

use super::sections::SectionedPatent;
use crate::error::{Error, Result};

pub const DEFAULT_STOPWORDS: &str = include_str!("../../data/stopwords.txt");

/// A versioned set of words dropped before counting.
///
/// File format: one word per line; `#` lines are comments, and a leading
/// `# stopwords <version>` line names the version.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Stopwords {
    pub version: String,
    words: HashSet<String>,
}

impl Default for Stopwords {
    fn default() -> Self {
        Stopwords::parse(DEFAULT_STOPWORDS)
    }
}

impl Stopwords {
    pub fn parse(text: &str) -> Self {
        let mut version = String::from("unversioned");
        let mut words = HashSet::new();
        for line in text.lines() {
            let line = line.trim();
            if let Some(comment) = line.strip_prefix('#') {
                if let Some(v) = comment.trim().strip_prefix("stopwords ") {
                    version = v.trim().to_string();
                }
                continue;
            }
            if !line.is_empty() {
                words.insert(line.to_lowercase());
            }
        }
        Stopwords { version, words }
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|source| Error::FileUnreadable {
            path: path.to_path_buf(),
            source,
        })?;
        Ok(Self::parse(&text))
    }

    pub fn from_words<I, S>(words: I) -> Self
    where
        I: IntoIterator<Item = S>,
        S: AsRef<str>,
    {
        Stopwords {
            version: "custom".into(),
            words: words.into_iter().map(|w| w.as_ref().to_lowercase()).collect(),
        }
    }

    pub fn contains(&self, word: &str) -> bool {
        self.words.contains(word)
    }

    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = &str> {
        self.words.iter().map(String::as_str)
    }
}

/// Lowercases and splits into maximal alphabetic runs. Digits, hyphens and
/// every other non-letter act as separators.
pub fn tokenize(text: &str) -> Vec<String> {
    let mut tokens = Vec::new();
    let mut cur = String::new();
    for c in text.chars() {
        for lc in c.to_lowercase() {
            if lc.is_alphabetic() {
                cur.push(lc);
            } else if !cur.is_empty() {
                tokens.push(std::mem::take(&mut cur));
            }
        }
    }
    if !cur.is_empty() {
        tokens.push(cur);
    }
    tokens
}

/// Lowercase tokens of one patent's analyzed sections with stopwords removed.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CleanedText {
    pub patent_id: String,
    pub domain_id: String,
    pub tokens: Vec<String>,
    pub word_count: u64,
}

pub fn clean_tokens(text: &str, stopwords: &Stopwords) -> Vec<String> {
    tokenize(text)
        .into_iter()
        .filter(|t| !stopwords.contains(t))
        .collect()
}

pub fn clean_text(sp: &SectionedPatent, stopwords: &Stopwords) -> CleanedText {
    let tokens = clean_tokens(&sp.analyzed_text(), stopwords);
    CleanedText {
        patent_id: sp.patent_id.clone(),
        domain_id: sp.domain_id.clone(),
        word_count: tokens.len() as u64,
        tokens,
    }
}
