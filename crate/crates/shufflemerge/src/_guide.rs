//! A guided tour of the crate, one module per chapter.
//!
//! The same Markdown files make up the rendered book under `book/` at the
//! repository root (`mdbook build book`). Including them here means every
//! code block in the book compiles and runs under `cargo test --doc`, so the
//! guide cannot drift from the library.

#[doc = include_str!("../../../book/src/introduction.md")]
pub mod introduction {}

#[doc = include_str!("../../../book/src/shuffling.md")]
pub mod shuffling {}

#[doc = include_str!("../../../book/src/rotation.md")]
pub mod rotation {}

#[doc = include_str!("../../../book/src/merging.md")]
pub mod merging {}

#[doc = include_str!("../../../book/src/cost-model.md")]
pub mod cost_model {}

#[doc = include_str!("../../../book/src/harness.md")]
pub mod harness {}
