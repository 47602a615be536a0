//! L-polynomials of hyperelliptic Jacobians over Q, local quadratic twist
//! checks between pairs of curves, and a few number-field splitting tools.

pub mod algebra;
pub mod cli;
pub mod curvecount;
pub mod splitfield;
pub mod twistlab;
