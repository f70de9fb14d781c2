//! Embedding of a finite metric space into `l_inf` coordinates built from
//! truncated distance functions
//!
//! `g_{p,q}(x) = max{d(p,q) - d(q,x), 0} - max{d(p,q) - d(q,0), 0}`,
//!
//! weighted by `rho(d(p,q)) / d(p,q)`. For regular `rho` and `omega` every
//! distance lands in `[rho(d), omega(d)]`, and the lower end is attained by
//! the coordinate `(x, y)` itself.
//!
//! ```
//! use tight_embed::moduli::{regularize_omega, regularize_rho, ModulusCurve};
//! use tight_embed::spaces::fixtures::line;
//! use tight_embed::stable_embed::embed_stable;
//!
//! let m = line(&[0.0, 1.0, 3.0])?;
//! let rho = regularize_rho(&ModulusCurve::power_rho(0.5)?)?;
//! let omega = regularize_omega(&ModulusCurve::power_omega(0.5)?)?;
//! let f = embed_stable(&m, 0, &rho, &omega)?;
//! assert!(f.verify().pass);
//! # Ok::<(), tight_embed::Error>(())
//! ```

mod coords;
mod embedding;
mod io;

pub use coords::{g_pq, h_pq, n_omega, ratio_r, KaltonCoordinate, RatioBound, RatioCheck};
pub use embedding::{embed_stable, StableEmbedding, StableReport};
pub use io::StableEmbeddingFile;
