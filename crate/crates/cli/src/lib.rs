//! Support library for the graphskein binary: the JSON codec for diagram
//! and tangle files, shared with the integration test suites.

pub mod codec;
