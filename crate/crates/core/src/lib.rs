//! Exact computations with modules over the group algebra of the Klein four
//! group in characteristic 2, `k[a, b] / (a², b²)` with `k = GF(2^m)`.
//!
//! A module is a pair of commuting square-zero matrices ([`KModule`]). Every
//! module splits into indecomposables, each isomorphic to the canonical
//! module of exactly one [`Label`]:
//!
//! ```
//! use klein4::classify::decompose;
//! use klein4::gf::{Field, Poly};
//! use klein4::kmodule::direct_sum;
//! use klein4::Label;
//!
//! let f = Field::gf2();
//! let band = Label::band(Poly::parse(&f, "x^2+x+1").unwrap(), 1);
//! let parts = [band.canonical(&f).unwrap(), Label::SyzygyPos(1).canonical(&f).unwrap()];
//! let (m, _) = direct_sum(&f, &[&parts[0], &parts[1]]).unwrap();
//!
//! let d = decompose(&m).unwrap();
//! assert_eq!(d.labels(), vec![band, Label::SyzygyPos(1)]);
//! assert!(d.verify(&m));
//! ```
//!
//! Layers, bottom up: [`gf`] field and polynomial arithmetic, [`linalg`]
//! dense and polynomial matrices, [`kmodule`] modules and labels, [`quiver`]
//! the pencil of a module without free summands, [`classify`] decomposition
//! and isomorphism, [`syzygy`] covers, extensions and almost-split sequences.
//! [`conformance`] bundles the checks run by `klein4 check`.

pub mod classify;
pub mod conformance;
pub mod error;
pub mod gf;
pub mod kmodule;
pub mod linalg;
pub mod quiver;
pub mod syzygy;

pub use error::{Error, Result};
pub use kmodule::{KModule, Label};
