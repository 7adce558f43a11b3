//! Exact arithmetic: rationals, the zeta-symbol ring, truncated series and
//! Laurent polynomials.

pub mod laurent;
pub mod rational;
pub mod series;
pub mod zeta_poly;

pub use laurent::LaurentPoly;
pub use rational::{bernoulli, binom_i, even_zeta_ratio, format_rational, parse_rational, rat, BigRational};
pub use series::{series_mul_div, Coeff, MulDiv, TruncSeries};
pub use zeta_poly::{even_zeta_normal_form, ZetaMonomial, ZetaPoly};
