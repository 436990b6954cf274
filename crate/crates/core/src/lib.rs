//! Exact computations for framed Hitchin pairs and oriented pairs on the projective line.

pub mod exactcore;
pub mod matinv;
pub mod sheafp1;
pub mod stability;
pub mod oriented;
pub mod cli;
