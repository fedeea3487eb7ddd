//! Appendix variants: productivity gains, capability-reliability coupling, endogenous
//! investment and endogenous expert knowledge.

mod coupled;
mod expert_knowledge;
mod investment;
mod productivity;

pub use coupled::*;
pub use expert_knowledge::*;
pub use investment::*;
pub use productivity::*;
