//! Construction and certification of metric embeddings of finite spaces.
//!
//! Two constructions are provided:
//!
//! * [`lp_embed`] maps a finite subset of coordinate `l_p` into an
//!   `l_s`-sum of `l_p` blocks. For a dominating modulus `mu` and scaling
//!   `r < 1/16` the image satisfies
//!   `2^{mu(d)} r d <= ||f(x) - f(y)|| <= 9 d`.
//! * [`stable_embed`] maps a finite metric space into `l_inf` coordinates
//!   built from truncated distance functions, sandwiching every distance as
//!   `rho(d) <= ||f(x) - f(y)|| <= omega(d)`.
//!
//! Both are certified pair by pair. [`verify`] holds map-agnostic checks
//! (empirical moduli, range embeddings, snowflake bounds, compression
//! exponent) and [`moduli`] the algebra of modulus functions feeding them.

// `!(x > 0.0)` style comparisons are used on purpose so that NaN is rejected
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod error;
pub mod lp_embed;
pub mod moduli;
pub mod parallel;
pub mod spaces;
pub mod stable_embed;
pub mod tolerance;
pub mod verify;

#[doc(hidden)]
pub mod cli;

pub use error::{Error, Result};
