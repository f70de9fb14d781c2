//! Embedding of a finite subset of coordinate `l_p` into an `l_s`-sum of
//! `l_p` blocks with compression controlled by a dominating modulus.
//!
//! Points are sliced into dyadic annuli `2^k <= ||x|| < 2^{k+1}`. Each
//! ball `B_k` gets the slice map
//! `f_k(x) = sum_n 2^{-n} P_{m(k,n)} x`, with the `n`-th term in its own
//! block and `P_m` the truncation to the first `m` coordinates, `m` chosen
//! minimal with `||x - P_m x|| <= sigma(-n) / eta` on `B_k`. The map blends
//! neighbouring slices linearly in the norm.
//!
//! ```
//! use tight_embed::lp_embed::{embed, make_plan, verify_sandwich};
//! use tight_embed::moduli::{exp_dominate, ModulusCurve};
//! use tight_embed::spaces::{Exponent, LpPointSet};
//!
//! let m = LpPointSet::new(Exponent::Finite(2.0), vec![vec![0.0, 0.0], vec![1.0, 0.0], vec![0.0, 3.0]], Some(0))?;
//! let mu = exp_dominate(&ModulusCurve::exp_floor())?;
//! let plan = make_plan(&m, &mu, 100.0, 0.06, Exponent::Finite(2.0))?;
//! let f = embed(&plan, &m)?;
//! assert!(verify_sandwich(&f, &m, &mu, 0.06)?.pass());
//! # Ok::<(), tight_embed::Error>(())
//! ```

mod io;
mod map;
mod plan;
mod sandwich;

pub use io::LpEmbeddingFile;
pub use map::{bap_truncation, blend, embed, slice_embed, LpEmbedding};
pub use plan::{build_plan, default_eta, eta_guidance, make_plan, LpEmbeddingPlan, PlanBlock, R_LIMIT};
pub use sandwich::{
    range_parameters, verify_sandwich, RangeParameters, SandwichReport, FAR_PAIR_CONSTANT, LIPSCHITZ,
    SAME_ANNULUS_CONSTANT,
};
