//! Section extraction.
//!
//! Title and abstract are located by exact heading terms. Background and
//! summary go through three stages, first match wins:
//!
//! 1. exact heading match (case-insensitive),
//! 2. partial heading match against the wildcard patterns,
//! 3. partial paragraph match against the wildcard patterns.
//!
//! A section runs from the matched block up to the next recognized heading.
//! A block belongs to at most one section.

use std::fmt;
use std::path::Path;
use std::sync::OnceLock;

use regex::{Regex, RegexBuilder};
use serde::{Deserialize, Serialize};

use super::document::PatentDocument;
use crate::error::{Error, Result};

pub const DEFAULT_RULES_TOML: &str = include_str!("../../data/section_rules.toml");

/// Search terms for section headings and paragraphs.
///
/// Exact terms are literal strings. Partial terms are regular expressions
/// that must match the whole heading or paragraph; `.*` is the wildcard.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SectionRules {
    pub title_terms: Vec<String>,
    pub abstract_terms: Vec<String>,
    pub background_exact: Vec<String>,
    pub background_partial_heading: Vec<String>,
    pub background_partial_paragraph: Vec<String>,
    pub summary_exact: Vec<String>,
    pub summary_partial_heading: Vec<String>,
    pub summary_partial_paragraph: Vec<String>,
    /// Headings that end a section without starting one of the four.
    #[serde(default)]
    pub terminators: Vec<String>,
}

impl Default for SectionRules {
    fn default() -> Self {
        Self::from_toml(DEFAULT_RULES_TOML).expect("bundled section rules parse")
    }
}

impl SectionRules {
    pub fn from_toml(text: &str) -> Result<Self> {
        toml::from_str(text).map_err(|e| Error::BadRules(e.to_string()))
    }

    pub fn to_toml(&self) -> String {
        toml::to_string(self).expect("section rules serialize")
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|source| Error::FileUnreadable {
            path: path.to_path_buf(),
            source,
        })?;
        Self::from_toml(&text)
    }

    pub fn compile(&self) -> Result<CompiledRules> {
        let exact = |v: &[String]| v.iter().map(|t| normalize_heading(t)).collect::<Vec<_>>();
        let patterns = |v: &[String]| -> Result<Vec<Regex>> {
            v.iter()
                .map(|p| {
                    RegexBuilder::new(&format!("^(?:{p})$"))
                        .case_insensitive(true)
                        .build()
                        .map_err(|e| Error::BadRules(format!("pattern {p:?}: {e}")))
                })
                .collect()
        };
        Ok(CompiledRules {
            title: exact(&self.title_terms),
            abstract_: exact(&self.abstract_terms),
            background: StageRules {
                exact: exact(&self.background_exact),
                heading: patterns(&self.background_partial_heading)?,
                paragraph: patterns(&self.background_partial_paragraph)?,
            },
            summary: StageRules {
                exact: exact(&self.summary_exact),
                heading: patterns(&self.summary_partial_heading)?,
                paragraph: patterns(&self.summary_partial_paragraph)?,
            },
            terminators: patterns(&self.terminators)?,
        })
    }
}

#[derive(Debug, Clone)]
struct StageRules {
    exact: Vec<String>,
    heading: Vec<Regex>,
    paragraph: Vec<Regex>,
}

#[derive(Debug, Clone)]
pub struct CompiledRules {
    title: Vec<String>,
    abstract_: Vec<String>,
    background: StageRules,
    summary: StageRules,
    terminators: Vec<Regex>,
}

impl Default for CompiledRules {
    fn default() -> Self {
        SectionRules::default().compile().expect("bundled rules compile")
    }
}

fn numbering_re() -> &'static Regex {
    static RE: OnceLock<Regex> = OnceLock::new();
    RE.get_or_init(|| Regex::new(r"^(?:[0-9]+|[ivx]+|[a-z])[.)]\s+").unwrap())
}

/// Lowercases, collapses whitespace, and drops list numbering and trailing
/// punctuation ("2. Description of the Prior Art:" -> "description of the prior art").
pub fn normalize_heading(h: &str) -> String {
    let lower = h.to_lowercase();
    let collapsed = lower.split_whitespace().collect::<Vec<_>>().join(" ");
    let unnumbered = numbering_re().replace(&collapsed, "");
    unnumbered
        .trim_end_matches([':', '.', ' '])
        .trim()
        .to_string()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Section {
    Title,
    Abstract,
    Background,
    Summary,
}

impl Section {
    pub const ALL: [Section; 4] = [
        Section::Title,
        Section::Abstract,
        Section::Background,
        Section::Summary,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Section::Title => "title",
            Section::Abstract => "abstract",
            Section::Background => "background",
            Section::Summary => "summary",
        }
    }

    pub fn parse(s: &str) -> Option<Section> {
        Section::ALL
            .into_iter()
            .find(|sec| sec.as_str() == s.trim().to_lowercase())
    }
}

impl fmt::Display for Section {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// How a section's text was located.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Provenance {
    ExactHeading,
    PartialHeading,
    ParagraphMatch,
    ManualOverride,
    Absent,
}

impl Provenance {
    pub const ALL: [Provenance; 5] = [
        Provenance::ExactHeading,
        Provenance::PartialHeading,
        Provenance::ParagraphMatch,
        Provenance::ManualOverride,
        Provenance::Absent,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Provenance::ExactHeading => "exact-heading",
            Provenance::PartialHeading => "partial-heading",
            Provenance::ParagraphMatch => "paragraph-match",
            Provenance::ManualOverride => "manual-override",
            Provenance::Absent => "absent",
        }
    }
}

impl fmt::Display for Provenance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SectionText {
    pub text: String,
    pub provenance: Provenance,
}

impl SectionText {
    fn absent() -> Self {
        SectionText {
            text: String::new(),
            provenance: Provenance::Absent,
        }
    }

    fn found(text: String, provenance: Provenance) -> Self {
        // an empty match carries no text, so it is recorded as absent
        if text.trim().is_empty() {
            Self::absent()
        } else {
            SectionText { text, provenance }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SectionedPatent {
    pub patent_id: String,
    pub domain_id: String,
    pub title: SectionText,
    #[serde(rename = "abstract")]
    pub abstract_: SectionText,
    pub background: SectionText,
    pub summary: SectionText,
}

impl SectionedPatent {
    pub fn section(&self, s: Section) -> &SectionText {
        match s {
            Section::Title => &self.title,
            Section::Abstract => &self.abstract_,
            Section::Background => &self.background,
            Section::Summary => &self.summary,
        }
    }

    pub fn section_mut(&mut self, s: Section) -> &mut SectionText {
        match s {
            Section::Title => &mut self.title,
            Section::Abstract => &mut self.abstract_,
            Section::Background => &mut self.background,
            Section::Summary => &mut self.summary,
        }
    }

    /// Title, abstract, background, summary joined in that order.
    pub fn analyzed_text(&self) -> String {
        Section::ALL
            .iter()
            .map(|&s| self.section(s).text.as_str())
            .filter(|t| !t.is_empty())
            .collect::<Vec<_>>()
            .join("\n")
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum HeadingClass {
    Title,
    Abstract,
    BackgroundExact,
    SummaryExact,
    BackgroundPartial,
    SummaryPartial,
    Terminator,
    Unrecognized,
}

impl HeadingClass {
    fn recognized(self) -> bool {
        self != HeadingClass::Unrecognized
    }
}

fn matches_any(patterns: &[Regex], text: &str) -> bool {
    patterns.iter().any(|re| re.is_match(text))
}

fn classify(rules: &CompiledRules, heading: Option<&str>) -> HeadingClass {
    let Some(h) = heading else {
        return HeadingClass::Unrecognized;
    };
    let norm = normalize_heading(h);
    if rules.title.contains(&norm) {
        HeadingClass::Title
    } else if rules.abstract_.contains(&norm) {
        HeadingClass::Abstract
    } else if rules.background.exact.contains(&norm) {
        HeadingClass::BackgroundExact
    } else if rules.summary.exact.contains(&norm) {
        HeadingClass::SummaryExact
    } else if matches_any(&rules.background.heading, &norm) {
        HeadingClass::BackgroundPartial
    } else if matches_any(&rules.summary.heading, &norm) {
        HeadingClass::SummaryPartial
    } else if matches_any(&rules.terminators, &norm) {
        HeadingClass::Terminator
    } else {
        HeadingClass::Unrecognized
    }
}

struct Extractor<'a> {
    doc: &'a PatentDocument,
    rules: &'a CompiledRules,
    classes: Vec<HeadingClass>,
    /// Class of the recognized heading governing each block.
    governing: Vec<Option<HeadingClass>>,
    consumed: Vec<bool>,
}

impl<'a> Extractor<'a> {
    fn new(doc: &'a PatentDocument, rules: &'a CompiledRules) -> Self {
        let classes: Vec<_> = doc
            .blocks
            .iter()
            .map(|b| classify(rules, b.heading.as_deref()))
            .collect();
        let mut governing = Vec::with_capacity(classes.len());
        let mut current = None;
        for (i, &c) in classes.iter().enumerate() {
            if c.recognized() && (i == 0 || doc.blocks[i - 1].heading != doc.blocks[i].heading) {
                current = Some(c);
            }
            governing.push(current);
        }
        let n = doc.blocks.len();
        Extractor {
            doc,
            rules,
            classes,
            governing,
            consumed: vec![false; n],
        }
    }

    fn starts_new_heading(&self, i: usize) -> bool {
        i == 0 || self.doc.blocks[i - 1].heading != self.doc.blocks[i].heading
    }

    /// Takes blocks from `start` while they stay under the same heading, and
    /// stops at `stop_paragraph` matches. With `absorb`, sub-headings that are
    /// unrecognized or belong to one of the listed classes are crossed; once
    /// an unrecognized one has been crossed, `stop_after_crossing` matches
    /// also end the span.
    fn take_span(
        &mut self,
        start: usize,
        absorb: Option<&[HeadingClass]>,
        stop_paragraph: &[Regex],
        stop_after_crossing: &[Regex],
    ) -> String {
        let mut parts = Vec::new();
        let mut crossed = false;
        let mut j = start;
        while j < self.doc.blocks.len() && !self.consumed[j] {
            if j > start && self.starts_new_heading(j) {
                let crossable = absorb.is_some_and(|same| {
                    !self.classes[j].recognized() || same.contains(&self.classes[j])
                });
                if !crossable {
                    break;
                }
                crossed |= !self.classes[j].recognized();
            }
            let para = &self.doc.blocks[j].paragraph;
            if j > start
                && (matches_any(stop_paragraph, para) || (crossed && matches_any(stop_after_crossing, para)))
            {
                break;
            }
            self.consumed[j] = true;
            if !para.is_empty() {
                parts.push(para.clone());
            }
            j += 1;
        }
        parts.join("\n")
    }

    fn first_heading(&self, want: impl Fn(HeadingClass, &str) -> bool) -> Option<usize> {
        (0..self.doc.blocks.len()).find(|&i| {
            !self.consumed[i]
                && self.starts_new_heading(i)
                && self.doc.blocks[i]
                    .heading
                    .as_deref()
                    .is_some_and(|h| want(self.classes[i], &normalize_heading(h)))
        })
    }

    fn simple(&mut self, class: HeadingClass) -> SectionText {
        match self.first_heading(|c, _| c == class) {
            Some(i) => {
                let text = self.take_span(i, None, &[], &[]);
                SectionText::found(text, Provenance::ExactHeading)
            }
            None => SectionText::absent(),
        }
    }

    fn staged(&mut self, section: Section) -> SectionText {
        let rules = self.rules;
        let (stage, other, exact_class, same) = match section {
            Section::Background => (
                &rules.background,
                &rules.summary,
                HeadingClass::BackgroundExact,
                [HeadingClass::BackgroundExact, HeadingClass::BackgroundPartial],
            ),
            _ => (
                &rules.summary,
                &rules.background,
                HeadingClass::SummaryExact,
                [HeadingClass::SummaryExact, HeadingClass::SummaryPartial],
            ),
        };

        if let Some(i) = self.first_heading(|c, _| c == exact_class) {
            let text = self.take_span(i, Some(&same), &[], &other.paragraph);
            return SectionText::found(text, Provenance::ExactHeading);
        }
        if let Some(i) = self.first_heading(|c, h| {
            c != HeadingClass::Title && c != HeadingClass::Abstract && matches_any(&stage.heading, h)
        }) {
            let text = self.take_span(i, Some(&same), &[], &other.paragraph);
            return SectionText::found(text, Provenance::PartialHeading);
        }
        let candidate = (0..self.doc.blocks.len()).find(|&i| {
            !self.consumed[i]
                && !matches!(self.governing[i], Some(HeadingClass::Terminator))
                && matches_any(&stage.paragraph, &self.doc.blocks[i].paragraph)
        });
        if let Some(i) = candidate {
            let text = self.take_span(i, Some(&same), &other.paragraph, &[]);
            return SectionText::found(text, Provenance::ParagraphMatch);
        }
        SectionText::absent()
    }
}

/// Locates the four analyzed sections of a patent. Never fails: a section
/// that cannot be found is returned empty with [`Provenance::Absent`].
pub fn extract_sections(doc: &PatentDocument, rules: &CompiledRules) -> SectionedPatent {
    let mut ex = Extractor::new(doc, rules);
    let title = ex.simple(HeadingClass::Title);
    let abstract_ = ex.simple(HeadingClass::Abstract);
    let background = ex.staged(Section::Background);
    let summary = ex.staged(Section::Summary);
    SectionedPatent {
        patent_id: doc.patent_id.clone(),
        domain_id: doc.domain_id.clone(),
        title,
        abstract_,
        background,
        summary,
    }
}

/// A hand-identified section span: the text from the first occurrence of
/// `start_marker` through the end of the following `end_marker`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ManualOverride {
    pub patent_id: String,
    pub section: Section,
    pub start_marker: String,
    pub end_marker: String,
}

/// Parses an override file: `key: value` lines, records separated by blank
/// lines, `#` comments. Keys are `patent_id`, `section`, `start`, `end`.
pub fn parse_overrides(text: &str) -> Result<Vec<ManualOverride>> {
    let mut out = Vec::new();
    let mut fields: Vec<(String, String)> = Vec::new();

    let finish = |fields: &mut Vec<(String, String)>, out: &mut Vec<ManualOverride>| -> Result<()> {
        if fields.is_empty() {
            return Ok(());
        }
        let get = |k: &str| {
            fields
                .iter()
                .find(|(key, _)| key == k)
                .map(|(_, v)| v.clone())
        };
        let patent_id = get("patent_id").unwrap_or_default();
        let section_name = get("section").unwrap_or_default();
        let bad = |message: &str| Error::BadOverride {
            patent_id: patent_id.clone(),
            section: section_name.clone(),
            message: message.to_string(),
        };
        if patent_id.is_empty() {
            return Err(bad("missing patent_id"));
        }
        let section = Section::parse(&section_name).ok_or_else(|| bad("unknown section"))?;
        let start_marker = get("start").filter(|s| !s.is_empty()).ok_or_else(|| bad("missing start"))?;
        let end_marker = get("end").filter(|s| !s.is_empty()).ok_or_else(|| bad("missing end"))?;
        out.push(ManualOverride {
            patent_id,
            section,
            start_marker,
            end_marker,
        });
        fields.clear();
        Ok(())
    };

    for line in text.lines() {
        let line = line.trim();
        if line.starts_with('#') {
            continue;
        }
        if line.is_empty() {
            finish(&mut fields, &mut out)?;
            continue;
        }
        let Some((k, v)) = line.split_once(':') else {
            return Err(Error::BadOverride {
                patent_id: String::new(),
                section: String::new(),
                message: format!("expected key: value, got {line:?}"),
            });
        };
        fields.push((k.trim().to_lowercase(), v.trim().to_string()));
    }
    finish(&mut fields, &mut out)?;
    Ok(out)
}

/// Replaces sections named by overrides for this patent.
pub fn apply_overrides(
    mut sp: SectionedPatent,
    doc: &PatentDocument,
    overrides: &[ManualOverride],
) -> Result<SectionedPatent> {
    let full = doc.full_text();
    let id = sp.patent_id.clone();
    for ov in overrides.iter().filter(|o| o.patent_id == id) {
        let bad = |message: &str| Error::BadOverride {
            patent_id: ov.patent_id.clone(),
            section: ov.section.to_string(),
            message: message.to_string(),
        };
        let start_marker = collapse(&ov.start_marker);
        let end_marker = collapse(&ov.end_marker);
        let start = full
            .find(&start_marker)
            .ok_or_else(|| bad("start marker not found"))?;
        let end_rel = full[start..]
            .find(&end_marker)
            .ok_or_else(|| bad("end marker not found after start marker"))?;
        let end = start + end_rel + end_marker.len();
        *sp.section_mut(ov.section) = SectionText {
            text: full[start..end].to_string(),
            provenance: Provenance::ManualOverride,
        };
    }
    Ok(sp)
}

fn collapse(s: &str) -> String {
    s.split_whitespace().collect::<Vec<_>>().join(" ")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::document::parse_patent_text;

    fn sectioned(text: &str) -> SectionedPatent {
        let doc = parse_patent_text("US1", "d", text).unwrap();
        extract_sections(&doc, &CompiledRules::default())
    }

    #[test]
    fn default_rules_hold_the_published_terms() {
        let r = SectionRules::default();
        assert_eq!(r.title_terms, ["Patent-title", "Invention-title"]);
        assert_eq!(r.abstract_terms, ["Abstract"]);
        assert_eq!(r.background_exact.len(), 6);
        assert_eq!(r.background_exact[0], "description of the prior art");
        assert_eq!(
            r.background_partial_heading,
            [".*background.*", ".*prior art.*", ".*related technology.*", ".*related art.*"]
        );
        assert_eq!(
            r.background_partial_paragraph,
            [".*background.*", ".*prior art.*", ".*related art.*"]
        );
        assert_eq!(r.summary_exact.len(), 6);
        assert_eq!(r.summary_exact[5], "brief description of the present invention");
        assert_eq!(r.summary_partial_heading, [".*summary.*"]);
        assert_eq!(r.summary_partial_paragraph.len(), 4);
    }

    #[test]
    fn rules_round_trip_through_toml() {
        let r = SectionRules::default();
        assert_eq!(SectionRules::from_toml(&r.to_toml()).unwrap(), r);
    }

    #[test]
    fn bad_pattern_is_rejected() {
        let r = SectionRules {
            summary_partial_heading: vec!["(unclosed".into()],
            ..SectionRules::default()
        };
        assert!(matches!(r.compile(), Err(Error::BadRules(_))));
    }

    #[test]
    fn prior_art_heading_is_exact_background() {
        let sp = sectioned("DESCRIPTION OF THE PRIOR ART\nOld capacitors leak.\n");
        assert_eq!(sp.background.provenance, Provenance::ExactHeading);
        assert_eq!(sp.background.text, "Old capacitors leak.");
    }

    #[test]
    fn combined_heading_is_partial_background() {
        let sp = sectioned("TECHNICAL BACKGROUND AND SUMMARY\nOld capacitors leak.\n");
        assert_eq!(sp.background.provenance, Provenance::PartialHeading);
        assert_eq!(sp.summary.provenance, Provenance::Absent);
    }

    #[test]
    fn nothing_matches_gives_absent() {
        let sp = sectioned("some text without any marker.\n\nmore text here.");
        assert_eq!(sp.background.provenance, Provenance::Absent);
        assert!(sp.background.text.is_empty());
        assert_eq!(sp.summary.provenance, Provenance::Absent);
        assert_eq!(sp.title.provenance, Provenance::Absent);
    }

    #[test]
    fn exact_heading_wins_over_partial() {
        // both headings would match; the exact one must be chosen even though
        // the partial one comes first
        let text = "RELATED ART DISCUSSION\nPartial text.\n\nBACKGROUND OF THE INVENTION\nExact text.\n";
        let sp = sectioned(text);
        assert_eq!(sp.background.provenance, Provenance::ExactHeading);
        assert_eq!(sp.background.text, "Exact text.");
    }

    #[test]
    fn section_stops_at_next_recognized_heading() {
        let text = "\
Invention-title
Sealed Capacitor

Abstract
A sealed capacitor.

BACKGROUND OF THE INVENTION
Field of the Invention
This relates to capacitors.

Description of the Prior Art
Prior capacitors leak.

SUMMARY OF THE INVENTION
The seal prevents leakage.

BRIEF DESCRIPTION OF THE DRAWINGS
FIG. 1 shows the capacitor.
";
        let sp = sectioned(text);
        assert_eq!(sp.title.text, "Sealed Capacitor");
        assert_eq!(sp.abstract_.text, "A sealed capacitor.");
        assert_eq!(sp.background.provenance, Provenance::ExactHeading);
        assert_eq!(
            sp.background.text,
            "Field of the Invention This relates to capacitors.\nPrior capacitors leak."
        );
        assert_eq!(sp.summary.provenance, Provenance::ExactHeading);
        assert_eq!(sp.summary.text, "The seal prevents leakage.");
    }

    #[test]
    fn paragraph_fallback_splits_on_other_section() {
        let text = "\
the background of this device is old.

more background detail here.

in summary, the device overcomes this.

and it has more summary text.
";
        let sp = sectioned(text);
        assert_eq!(sp.background.provenance, Provenance::ParagraphMatch);
        assert_eq!(
            sp.background.text,
            "the background of this device is old.\nmore background detail here."
        );
        assert_eq!(sp.summary.provenance, Provenance::ParagraphMatch);
        assert_eq!(
            sp.summary.text,
            "in summary, the device overcomes this.\nand it has more summary text."
        );
    }

    #[test]
    fn paragraphs_under_terminators_are_ignored() {
        let text = "DETAILED DESCRIPTION\nThe prior art is discussed here.\n";
        let sp = sectioned(text);
        assert_eq!(sp.background.provenance, Provenance::Absent);
    }

    #[test]
    fn overrides_parse_and_apply() {
        let ov = parse_overrides(
            "# manual\npatent_id: US1\nsection: background\nstart: Old devices\nend: often.\n",
        )
        .unwrap();
        assert_eq!(ov.len(), 1);
        let doc = parse_patent_text(
            "US1",
            "d",
            "merged text. Old devices fail often. The invention is new.",
        )
        .unwrap();
        let sp = extract_sections(&doc, &CompiledRules::default());
        let sp = apply_overrides(sp, &doc, &ov).unwrap();
        assert_eq!(sp.background.text, "Old devices fail often.");
        assert_eq!(sp.background.provenance, Provenance::ManualOverride);
    }

    #[test]
    fn override_with_missing_marker_fails() {
        let ov = parse_overrides("patent_id: US1\nsection: summary\nstart: nope\nend: x\n").unwrap();
        let doc = parse_patent_text("US1", "d", "text.").unwrap();
        let sp = extract_sections(&doc, &CompiledRules::default());
        assert!(matches!(
            apply_overrides(sp, &doc, &ov),
            Err(Error::BadOverride { .. })
        ));
    }

    #[test]
    fn override_file_errors() {
        assert!(parse_overrides("patent_id: US1\nsection: claims\nstart: a\nend: b").is_err());
        assert!(parse_overrides("no colon here").is_err());
        assert!(parse_overrides("section: title\nstart: a\nend: b").is_err());
    }

    #[test]
    fn heading_normalization() {
        assert_eq!(
            normalize_heading("2.  Description of the Prior Art:"),
            "description of the prior art"
        );
        assert_eq!(normalize_heading("BACKGROUND"), "background");
    }

    #[test]
    fn heading_span_yields_to_summary_paragraph_under_unrecognized_heading() {
        let sp = sectioned(
            "# Description of Related Art\nKnown coils overheat.\n\n# Overview\nThe coil is potted.\n\nIn summary, the coil is cooled by oil.\n",
        );
        assert_eq!(sp.background.provenance, Provenance::PartialHeading);
        assert_eq!(sp.background.text, "Known coils overheat.\nThe coil is potted.");
        assert_eq!(sp.summary.provenance, Provenance::ParagraphMatch);
        assert_eq!(sp.summary.text, "In summary, the coil is cooled by oil.");

        // under the section's own heading the paragraph stays in the span
        let sp = sectioned("# Background\nKnown coils overheat.\n\nIn summary, they fail early.\n");
        assert!(sp.background.text.ends_with("they fail early."));
        assert_eq!(sp.summary.provenance, Provenance::Absent);
    }
}
