//! Patent text loading, section extraction and token cleaning.
//!
//! A corpus directory holds one sub-directory per domain, each containing one
//! `.txt` file per patent (the file stem is the patent id). Plain `.txt` files
//! directly in the corpus directory belong to a domain named after the
//! directory itself. A patent may carry a sidecar `<stem>.override` file with
//! manually identified section spans.

pub mod clean;
pub mod document;
pub mod sections;

use std::path::{Path, PathBuf};

use rayon::prelude::*;

pub use clean::{clean_text, clean_tokens, tokenize, CleanedText, Stopwords};
pub use document::{parse_patent, parse_patent_text, Block, PatentDocument};
pub use sections::{
    apply_overrides, extract_sections, parse_overrides, CompiledRules, ManualOverride,
    Provenance, Section, SectionRules, SectionText, SectionedPatent,
};

use crate::error::{Error, Result};

/// A patent file found in a corpus directory.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PatentFile {
    pub path: PathBuf,
    pub domain_id: String,
    pub override_path: Option<PathBuf>,
}

fn txt_files(dir: &Path) -> Result<Vec<PathBuf>> {
    let rd = std::fs::read_dir(dir).map_err(|source| Error::FileUnreadable {
        path: dir.to_path_buf(),
        source,
    })?;
    let mut files = Vec::new();
    for entry in rd {
        let path = entry?.path();
        if path.is_file() && path.extension().is_some_and(|e| e == "txt") {
            files.push(path);
        }
    }
    Ok(files)
}

/// Lists patent files in sorted (domain, path) order.
pub fn discover(dir: &Path) -> Result<Vec<PatentFile>> {
    let dir_domain = dir
        .file_name()
        .map(|n| n.to_string_lossy().into_owned())
        .unwrap_or_else(|| "corpus".into());

    let mut found: Vec<PatentFile> = Vec::new();
    let mut push = |path: PathBuf, domain_id: String| {
        let ov = path.with_extension("override");
        found.push(PatentFile {
            override_path: ov.is_file().then_some(ov),
            path,
            domain_id,
        });
    };
    for path in txt_files(dir)? {
        push(path, dir_domain.clone());
    }
    let rd = std::fs::read_dir(dir).map_err(|source| Error::FileUnreadable {
        path: dir.to_path_buf(),
        source,
    })?;
    for entry in rd {
        let sub = entry?.path();
        if sub.is_dir() {
            let domain = sub
                .file_name()
                .map(|n| n.to_string_lossy().into_owned())
                .unwrap_or_default();
            for path in txt_files(&sub)? {
                push(path, domain.clone());
            }
        }
    }
    if found.is_empty() {
        return Err(Error::EmptyCorpus(dir.to_path_buf()));
    }
    found.sort_by(|a, b| (&a.domain_id, &a.path).cmp(&(&b.domain_id, &b.path)));
    Ok(found)
}

/// Loads and sections one patent, applying its override file if present.
pub fn section_file(file: &PatentFile, rules: &CompiledRules) -> Result<SectionedPatent> {
    let doc = parse_patent(&file.path, &file.domain_id)?;
    let sp = extract_sections(&doc, rules);
    match &file.override_path {
        Some(p) => {
            let text = std::fs::read_to_string(p).map_err(|source| Error::FileUnreadable {
                path: p.clone(),
                source,
            })?;
            apply_overrides(sp, &doc, &parse_overrides(&text)?)
        }
        None => Ok(sp),
    }
}

/// Sections every patent of a corpus directory. Patents are processed in
/// parallel; the result keeps discovery order.
pub fn section_corpus(dir: &Path, rules: &CompiledRules) -> Result<Vec<SectionedPatent>> {
    let files = discover(dir)?;
    files.par_iter().map(|f| section_file(f, rules)).collect()
}
