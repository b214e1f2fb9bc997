//! The guide's chapters, compiled as doctests so the listings stay runnable.

#[doc = include_str!("../../../book/src/introduction.md")]
pub mod introduction {}

#[doc = include_str!("../../../book/src/seeds.md")]
pub mod seeds {}

#[doc = include_str!("../../../book/src/patterns.md")]
pub mod patterns {}

#[doc = include_str!("../../../book/src/cones.md")]
pub mod cones {}

#[doc = include_str!("../../../book/src/theta.md")]
pub mod theta {}

#[doc = include_str!("../../../book/src/representations.md")]
pub mod representations {}

#[doc = include_str!("../../../book/src/cli.md")]
pub mod cli {}
