use std::path::Path;
use std::sync::OnceLock;

use regex::Regex;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Longest line, in whitespace-separated words, still treated as a heading.
pub const MAX_HEADING_WORDS: usize = 8;

/// One paragraph of patent text together with the heading it sits under.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Block {
    pub heading: Option<String>,
    pub paragraph: String,
}

/// Raw patent text split into headed paragraphs, in source order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PatentDocument {
    pub patent_id: String,
    pub domain_id: String,
    pub blocks: Vec<Block>,
}

impl PatentDocument {
    /// All paragraph text joined by newlines, the coordinate space used by
    /// manual overrides.
    pub fn full_text(&self) -> String {
        self.blocks
            .iter()
            .filter(|b| !b.paragraph.is_empty())
            .map(|b| b.paragraph.as_str())
            .collect::<Vec<_>>()
            .join("\n")
    }
}

/// Reads one patent file. The patent id is the file stem.
pub fn parse_patent(path: &Path, domain_id: &str) -> Result<PatentDocument> {
    let text = std::fs::read_to_string(path).map_err(|source| Error::FileUnreadable {
        path: path.to_path_buf(),
        source,
    })?;
    let patent_id = path
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_default();
    parse_patent_text(&patent_id, domain_id, &text)
}

fn markup_re() -> &'static Regex {
    static RE: OnceLock<Regex> = OnceLock::new();
    RE.get_or_init(|| Regex::new(r"<[^>]*>").unwrap())
}

fn strip_markup(line: &str) -> String {
    let stripped = markup_re().replace_all(line, " ");
    stripped
        .replace("&amp;", "&")
        .replace("&lt;", "<")
        .replace("&gt;", ">")
        .replace("&nbsp;", " ")
}

/// Splits text into blocks.
///
/// Blank lines separate paragraphs; consecutive non-blank lines are joined
/// with single spaces. A line starting with `#` is always a heading. Any
/// other line is a heading when [`is_heading_candidate`] accepts it, except
/// directly below a heading that has no paragraph yet: there it is taken as
/// that heading's text (a one-line title under `Invention-title`, say).
pub fn parse_patent_text(patent_id: &str, domain_id: &str, text: &str) -> Result<PatentDocument> {
    if patent_id.trim().is_empty() {
        return Err(Error::EmptyDocument("<unnamed>".into()));
    }

    let mut blocks = Vec::new();
    let mut heading: Option<String> = None;
    let mut heading_has_body = true;
    let mut para: Vec<String> = Vec::new();
    let mut saw_content = false;

    let flush = |para: &mut Vec<String>, heading: &Option<String>, blocks: &mut Vec<Block>| {
        if !para.is_empty() {
            blocks.push(Block {
                heading: heading.clone(),
                paragraph: para.join(" "),
            });
            para.clear();
        }
    };

    for raw in text.lines() {
        let line = strip_markup(raw);
        let line = collapse_ws(&line);
        if line.is_empty() {
            flush(&mut para, &heading, &mut blocks);
            continue;
        }
        saw_content = true;

        let explicit = line.strip_prefix('#').map(|h| h.trim_start_matches('#').trim());
        let new_heading = match explicit {
            Some(h) if !h.is_empty() => Some(h.to_string()),
            Some(_) => None,
            None if para.is_empty() && heading_has_body && is_heading_candidate(&line) => {
                Some(line.clone())
            }
            None => None,
        };

        match new_heading {
            Some(h) => {
                flush(&mut para, &heading, &mut blocks);
                if !heading_has_body {
                    blocks.push(Block {
                        heading: heading.clone(),
                        paragraph: String::new(),
                    });
                }
                heading = Some(h);
                heading_has_body = false;
            }
            None if explicit.is_some() => {}
            None => {
                para.push(line);
                heading_has_body = true;
            }
        }
    }
    flush(&mut para, &heading, &mut blocks);
    if !heading_has_body {
        blocks.push(Block {
            heading,
            paragraph: String::new(),
        });
    }

    if !saw_content || blocks.is_empty() {
        return Err(Error::EmptyDocument(patent_id.to_string()));
    }
    Ok(PatentDocument {
        patent_id: patent_id.to_string(),
        domain_id: domain_id.to_string(),
        blocks,
    })
}

fn collapse_ws(s: &str) -> String {
    s.split_whitespace().collect::<Vec<_>>().join(" ")
}

const CONNECTIVES: &[&str] = &[
    "a", "an", "and", "as", "at", "by", "for", "in", "of", "on", "or", "the", "to", "with",
];

/// A line of at most [`MAX_HEADING_WORDS`] words, without a terminal period,
/// written in ALL CAPS or Title Case (short connectives may stay lowercase).
pub fn is_heading_candidate(line: &str) -> bool {
    let line = line.trim().trim_end_matches(':').trim_end();
    if line.is_empty() || line.ends_with('.') {
        return false;
    }
    let words: Vec<&str> = line.split_whitespace().collect();
    if words.len() > MAX_HEADING_WORDS || !line.chars().any(char::is_alphabetic) {
        return false;
    }
    let all_caps = line
        .chars()
        .filter(|c| c.is_alphabetic())
        .all(|c| c.is_uppercase());
    if all_caps {
        return true;
    }
    words.iter().enumerate().all(|(i, w)| {
        match w.chars().find(|c| c.is_alphabetic()) {
            None => true,
            Some(c) if c.is_uppercase() => true,
            Some(_) => i > 0 && CONNECTIVES.contains(&w.to_lowercase().as_str()),
        }
    })
}
