//! Exact computational algebra for braided fusion category data over
//! number fields: finite-group cohomology with twisted coefficients,
//! pointed braided categories and their centers, Frobenius-Perron
//! dimensions over non-closed fields, order-2 Galois equivariantization,
//! and Witt-family class arithmetic.

pub mod algreal;
pub mod fusionring;
pub mod groupcoh;
pub mod modq;
pub mod intmat;
pub mod numfield;
pub mod pointedcat;
pub mod poly;

pub use intmat::AbelianStructure;
pub use numfield::{FieldAutomorphism, FieldElement, NumberField};
