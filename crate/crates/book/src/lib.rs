#![doc = include_str!("../../../book/src/introduction.md")]

#[doc = include_str!("../../../book/src/tangent-cones.md")]
pub mod tangent_cones {}

#[doc = include_str!("../../../book/src/blowups.md")]
pub mod blowups {}

#[doc = include_str!("../../../book/src/de-rham.md")]
pub mod de_rham {}

#[doc = include_str!("../../../book/src/cyclic.md")]
pub mod cyclic {}

#[doc = include_str!("../../../book/src/exact-sequences.md")]
pub mod exact_sequences {}

#[doc = include_str!("../../../book/src/ktheory.md")]
pub mod ktheory {}

#[doc = include_str!("../../../book/src/cli.md")]
pub mod cli {}
