//! Locate the four analyzed sections of a patent and show how each was found.
//!
//!     cargo run --example section_extraction

use patent_interactions::corpus::{extract_sections, parse_patent_text, CompiledRules, Section};

const PATENT: &str = "\
Invention-title
Wound Film Capacitor

Abstract
A film capacitor wound on a hollow core.

Description of Related Art
Wound capacitors heat up at high ripple current, and heat is a disadvantage.

Overview
In summary, a hollow core carries coolant through the winding.

DETAILED DESCRIPTION
The core is an extruded aluminum tube.
";

fn main() -> patent_interactions::Result<()> {
    let rules = CompiledRules::default();
    let doc = parse_patent_text("US1234567", "Capacitors", PATENT)?;
    let sp = extract_sections(&doc, &rules);
    for s in Section::ALL {
        let sec = sp.section(s);
        println!("{:<11} [{}] {}", s.as_str(), sec.provenance, sec.text);
    }
    Ok(())
}
