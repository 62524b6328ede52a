//! Exact combinatorics of spherical varieties.

pub mod error;
pub mod exactgeom;
pub mod gorensteinify;
pub mod coloredfan;
pub mod criteria;
pub mod luna;
pub mod rootsystems;
pub mod skeleton;

pub use error::{Error, Result};

#[cfg(doctest)]
pub mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    pub mod introduction {}
    #[doc = include_str!("../../../book/src/geometry.md")]
    pub mod geometry {}
    #[doc = include_str!("../../../book/src/skeletons.md")]
    pub mod skeletons {}
    #[doc = include_str!("../../../book/src/embeddings.md")]
    pub mod embeddings {}
    #[doc = include_str!("../../../book/src/pipeline.md")]
    pub mod pipeline {}
    #[doc = include_str!("../../../book/src/documents.md")]
    pub mod documents {}
    #[doc = include_str!("../../../book/src/cli.md")]
    pub mod cli {}
    #[doc = include_str!("../../../book/src/acceptance.md")]
    pub mod acceptance {}
}
