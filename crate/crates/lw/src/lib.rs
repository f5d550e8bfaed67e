//! Pattern files, reports, the parallel survey and the thesis checks behind the `lw` binary.

pub mod pattern;
pub mod record;
pub mod survey;
pub mod thesis;

pub use pattern::{parse_mask, parse_pattern, render_pattern, ParseError};
pub use record::{Format, ReportRecord};
