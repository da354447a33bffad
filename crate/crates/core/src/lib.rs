//! Keyword mining of patent texts for component interactions, correlation of
//! keyword intensity with technology improvement rates, and a cost model in
//! which the interaction count sets the rate of cost decline.
//!
//! The runnable programs under `examples/` walk through each piece:
//!
//! - `section_extraction`: locate title, abstract, background and summary
//! - `keyword_culling`: registry, relevancy and the three cull steps
//! - `count_table`: mine a small corpus into a per-domain count table
//! - `headline_correlation`: r and p over the bundled domains
//! - `robustness_subsets`: correlations over random domain subsets
//! - `improvement_rate`: fit an exponential rate to a performance series
//! - `cost_model`: closed-form and integrated cost curves
//! - `design_search`: the stochastic component redraw search

// `!(x > 0.0)` is used on purpose so NaN is rejected too
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod cli;
pub mod corpus;
pub mod error;
pub mod keywords;
pub mod model;
pub mod reference;
pub mod stats;
pub mod textmine;

pub use error::{Error, Result};
pub use reference::{KwMode, ReferenceDataset};
