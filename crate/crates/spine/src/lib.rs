//! Files, surveys and reports on top of `spine-core`.

pub mod format;
pub mod report;
pub mod survey;
