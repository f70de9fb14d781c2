//! Finite metric spaces, coordinate `l_p` point sets, block sums, nets and
//! fixture generators.

mod block;
mod exponent;
pub mod fixtures;
mod io;
mod metric;
mod net;
mod points;

pub use block::{Block, BlockSpace, BlockVector};
pub use exponent::Exponent;
pub use io::{Space, SpaceFile};
pub use metric::{validate_metric, FiniteMetricSpace};
pub use net::{covering_radius, epsilon_net, nearest_net_map, separation};
pub use points::{dyadic_annulus_index, pow2, LpPointSet};
