//! Quadrature for the inverse-square-root endpoint weight (including
//! Cauchy principal values) and for cosine transforms over the half-line.

mod chebyshev;
mod oscillatory;
pub mod special;

pub use chebyshev::{
    chebyshev_rule, finite_part_chebyshev_oracle, nystrom_rule, pv_weighted_integral, weighted_integral, PvQuadSpec,
};
pub use oscillatory::{oscillatory_halfline_integral, OscIntSpec, OscIntegral, TailOrder};
