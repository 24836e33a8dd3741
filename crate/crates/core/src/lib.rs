//! Random simplicial complexes from the Bernoulli hypergraph measure:
//! closures, exact measures, sampling, homology and asymptotics.

pub mod asymptotics;
pub mod combinatorics;
pub mod complex;
pub mod duality;
pub mod error;
pub mod experiments;
pub mod homology;
pub mod io;
pub mod measures;
pub mod oracle;
pub mod params;
pub mod prob;
pub mod sampler;
pub mod simplex;

pub use complex::{Complex, LinkFrame};
pub use error::{Error, Result};
pub use params::{Exponents, ParamMap, ParamValues};
pub use prob::{Factor, Probability, Rational};
pub use simplex::{Ambient, Simplex, MAX_N};
