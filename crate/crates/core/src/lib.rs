//! Exact combinatorics of the Bruhat order on twisted identities of
//! `S_2n`: special partial matchings of lower intervals, Kazhdan-
//! Lusztig-Vogan Q-, R-, and P-polynomials, and mechanical verification
//! of the structural statements the computations rely on.

mod bitmat;
pub mod bruhat;
pub mod error;
pub mod interval;
pub mod klv;
pub mod perm;
pub mod poly;
pub mod spm;
pub mod twisted;
pub mod verify;

pub use error::{Error, Result};
pub use perm::Perm;
pub use poly::{IntPoly, LaurentPoly};
