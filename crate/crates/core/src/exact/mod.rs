//! Exact arithmetic: rationals, polynomials, rational functions, Laurent
//! polynomials and truncated power series.

mod field;
mod laurent;
mod poly;
mod ratfunc;
mod residue;
mod series;
mod sturm;

pub use field::{parse_rational, rational_sqrt, Field};
pub use laurent::LaurentPoly;
pub use poly::{Polynomial, Var};
pub use ratfunc::{RationalFunction, BASE_VAR};
pub use residue::{rational_residue, ResidueError};
pub use rug::{Integer, Rational};
pub use series::{SeriesError, TruncatedSeries};
pub use sturm::{count_roots_open, odd_multiplicity_part, squarefree_decomposition};
