//! Keeps the guide honest. mdbook renders `book/` but cannot run its
//! code blocks against the workspace, so each chapter is included here
//! as module documentation and `cargo test --doc -p qlap-book` executes
//! every `rust` block. One module per chapter, so a failing snippet
//! names the chapter it came from.

#[doc = include_str!("../../../book/src/introduction.md")]
pub mod introduction {}

#[doc = include_str!("../../../book/src/graphs.md")]
pub mod graphs {}

#[doc = include_str!("../../../book/src/simulator.md")]
pub mod simulator {}

#[doc = include_str!("../../../book/src/preparation.md")]
pub mod preparation {}

#[doc = include_str!("../../../book/src/labeling.md")]
pub mod labeling {}

#[doc = include_str!("../../../book/src/minfind.md")]
pub mod minfind {}

#[doc = include_str!("../../../book/src/analysis.md")]
pub mod analysis {}

#[doc = include_str!("../../../book/src/cli.md")]
pub mod cli {}
