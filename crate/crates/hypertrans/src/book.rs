//! Compiles every code block of the book (`book/src/*.md`) as a doc-test,
//! so `cargo test --doc` keeps the guide and the API in sync. The items are
//! doc-test carriers only and exist solely under `cfg(doctest)`.

#[doc = include_str!("../../../book/src/introduction.md")]
pub struct Introduction;

#[doc = include_str!("../../../book/src/hypergraphs.md")]
pub struct Hypergraphs;

#[doc = include_str!("../../../book/src/scores.md")]
pub struct Scores;

#[doc = include_str!("../../../book/src/measures.md")]
pub struct Measures;

#[doc = include_str!("../../../book/src/axioms.md")]
pub struct Axioms;

#[doc = include_str!("../../../book/src/generators.md")]
pub struct Generators;

#[doc = include_str!("../../../book/src/analysis.md")]
pub struct Analysis;

#[doc = include_str!("../../../book/src/cli.md")]
pub struct Cli;
