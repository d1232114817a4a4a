//! Algebras with countable basis defined by structure constants.

pub mod bracket;
pub mod element;
pub mod model;
pub mod ops;

pub use bracket::{Bracket, TailSource};
pub use element::Element;
pub use model::{BasisIndex, Branch, Envelope, FanIn, StructureModel};
pub use ops::{check_associativity, check_unit, coefficient, involute, multiply, AssociativityReport};
