//! Economic sentiment lexicons and the indices built from them.
//!
//! The pipeline runs corpus ingestion and economic-sentence filtering
//! ([`corpus`]), candidate harvesting from dependency parses ([`depparse`]),
//! crowd annotation aggregation ([`annotate`]), lexicon comparison
//! ([`lexicon`]), economic-pessimism series ([`sentiment`]) and the
//! forecasting evaluation ([`econ`]).

pub mod annotate;
pub mod corpus;
pub mod depparse;
pub mod econ;
pub mod lexicon;
pub mod period;
pub mod sentiment;

pub use lexicon::{Granularity, Lexicon, LexiconFormat, SentimentClass};
pub use period::Frequency;
pub use sentiment::{EpSeries, ScoreMode};
