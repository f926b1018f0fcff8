//! Exact rational arithmetic and the polynomial algebra used everywhere else:
//! dense univariate polynomials over any exact ring, bivariate polynomials with
//! coefficients in `ℚ[λ]`, subresultant resultants, gcds, squarefree
//! decomposition, rational roots and a small Gröbner basis engine for
//! certifying elimination results.

mod bipoly;
pub mod groebner;
pub mod linalg;
mod poly;
mod rational;
mod roots;

pub use bipoly::{BiPoly, Var};
pub use poly::{Poly, Ring};
pub use rational::{fmt_rational, int, parse_rational, rat, Rational};
pub use roots::{gcd_poly, squarefree_decomposition, squarefree_rational_roots, RootSplit};

/// Univariate polynomial over ℚ.
pub type UniPoly = Poly<Rational>;
