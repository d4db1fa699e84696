//! Exact arithmetic in ℚ and quadratic fields.

pub mod arith;
pub mod character;
pub mod field;
pub mod ideal;
pub mod lattice;
pub mod parse;
pub mod primes;

pub use character::{global_character, psi_infty, psi_s, psi_v};
pub use field::{FieldDescriptor, FieldElement, FieldKind};
pub use ideal::FractionalIdeal;
pub use lattice::{lattice_points, LatticePoint, PlaceRegion};
pub use parse::{parse_element, parse_field, parse_ideal, parse_rational};
pub use primes::{
    different, dual_data, factor_element, factor_ideal, ord_element, ord_ideal, prime_ideal, primes_above, tau_s,
    DualData, PrimeIdealData, PrimeKind,
};
