pub mod dispersive;
pub mod energy;
pub mod ion;
pub mod phase;
pub mod semigroup;
pub mod splitting;
