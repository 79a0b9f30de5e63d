//! Graded Cayley-Dickson algebras over an arbitrary signature: exact blade
//! arithmetic, triad classification, cycle silos, zero-divisor enumeration
//! and subalgebra censuses.

pub mod assoc;
pub mod blade;
pub mod cycles;
pub mod element;
pub mod error;
pub mod expr;
pub mod fixtures;
pub mod formulas;
pub mod parallel;
pub mod scalar;
pub mod signature;
pub mod subalgebras;
pub mod verify;
pub mod zero_divisors;

pub use assoc::{NonAssocType, Triad, TypePattern};
pub use cycles::{CycleGroup, Silo, TriadCensus, TriadKind};
pub use blade::{basis_label, parse_label, product_sign, Algebra, Blade, SignTable};
pub use element::{element_mul, Element};
pub use error::{Error, Result};
pub use scalar::Scalar;
pub use signature::Signature;
pub use subalgebras::{Subalgebra, SubalgebraClass};
pub use zero_divisors::{Mode, PrimaryOrbit, ZeroDivisorPair};

/// Blade index set; bit `i` is generator `i + 1`.
pub type Mask = u32;

pub type Rational = num_rational::BigRational;
pub type RationalElement = Element<Rational>;
pub type IntegerElement = Element<num_bigint::BigInt>;
