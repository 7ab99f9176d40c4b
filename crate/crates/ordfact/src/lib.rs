//! Ordered factorizations of integers: the counting function m(n) computed by
//! every known route (brute-force enumeration, divisor recurrence, Möbius
//! recurrence, signature DP, MacMahon's and Sklar's formulas, the two-prime
//! closed form, perfect partitions), the analytic constants rho, rho_k and
//! c = -1/(rho zeta'(rho)) solved to ~30 significant digits with certified
//! error bounds, sieve-based summatory tables, smooth-number counts, and
//! executable property suites for the identities and inequalities these
//! objects satisfy.

pub mod analytic;
pub mod arith;
pub mod count;
mod error;
pub mod hp;
pub mod summatory;
pub mod verify;

pub use arith::{BigCount, ExponentSignature, Factorization, PrimeSieve};
pub use error::{Error, Result};
