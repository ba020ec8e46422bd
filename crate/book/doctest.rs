//! mdbook cannot run listings that depend on workspace crates, so every
//! chapter is attached to a module here and `cargo test --doc` runs them.

#[doc = include_str!("src/introduction.md")]
mod introduction {}
#[doc = include_str!("src/fields.md")]
mod fields {}
#[doc = include_str!("src/modules.md")]
mod modules {}
#[doc = include_str!("src/pencils.md")]
mod pencils {}
#[doc = include_str!("src/decomposition.md")]
mod decomposition {}
#[doc = include_str!("src/syzygies.md")]
mod syzygies {}
#[doc = include_str!("src/command_line.md")]
mod command_line {}
