//! File formats, parallel drivers, report serialization and verification
//! suites on top of `bohemian-core`.

pub mod format;
pub mod parallel;
pub mod report;
pub mod verify;
