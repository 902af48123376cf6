//! Library surface of the CLI: the cache, the computation pipeline, and the
//! verification suites (shared with the acceptance test target).

pub mod cache;
pub mod context;
pub mod verify;
