pub mod certify;
pub mod demo_bound;
pub mod simulate;
pub mod state;
pub mod surface;
