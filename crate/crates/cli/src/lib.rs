//! Library surface of the `lieforge` binary: the JSON document layer.
//! The binary itself lives in `main.rs`; tests and tools reuse the
//! parsing and serialization code from here.

pub mod doc;
