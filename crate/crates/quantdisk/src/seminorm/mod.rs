//! The h-recursion, seminorms, ω-refined seminorms and growth bookkeeping.

pub mod htable;
pub mod inequality;
pub mod kothe;
pub mod omega;

pub use htable::{modulus_bracket, root_presentation, seminorm, seminorm_max_ell, EngineConfig, HEngine, HEntry, SeminormValue};
pub use inequality::{check_product_inequality, compare_le, triangle_verdict, ProductCheck, Verdict};
pub use kothe::{comparison_constant, growth_classify, sup_seminorm, Certificate, ClosedFormBound, GrowthReport};
pub use omega::{omega_h, OmegaWeights, WeightProfile};
