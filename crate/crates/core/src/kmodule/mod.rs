//! Modules over the group algebra of the Klein four group.

pub mod io;
mod label;
mod module;

pub use label::Label;
pub use module::{direct_sum, KModule, Submodule};
pub(crate) use module::intertwiner_system;
