//! Exact and numerical verification suite for a family of computations on
//! branched covers, Jacobians and higher cycle spaces:
//!
//! - [`perm`]: exact permutation-group primitives,
//! - [`hurwitz`]: monodromy tuples, braid moves, orbit classification and
//!   branch-point degenerations for degree-4 covers of the line,
//! - [`cyclespace`]: the invariant cycle space attached to an order-two
//!   divisor class on an n-fold self-product of a curve,
//! - [`hypcheck`]: hyperelliptic specialization of that space in an exact
//!   symbol algebra,
//! - [`ellreg`]: elliptic regulator integrals by quadrature,
//! - [`fourconfig`]: the exact genus-0 four-curve configuration and its
//!   cubical boundary.

pub mod cyclespace;
pub mod ellreg;
pub mod fourconfig;
pub mod hurwitz;
pub mod hypcheck;
pub mod linalg;
pub mod partition;
pub mod perm;
