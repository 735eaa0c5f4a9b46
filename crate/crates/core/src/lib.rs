//! Meromorphic connections on projective space built from homogeneous
//! polynomial systems, connection Wronskians of explicit holomorphic curves,
//! Nevanlinna functionals on disks, and desk-scale verification of the
//! associated Second Main Theorem inequality and uniqueness thresholds.

pub mod algebra;
pub mod connection;
pub mod curve;
pub mod error;
pub mod nevanlinna;
pub mod scenario;
pub mod theorems;
