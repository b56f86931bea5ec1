//! Discovery of linear field theories from simulated dipole far-field data.
//!
//! The pipeline has four stages:
//!
//! 1. [`virtual_lab`] simulates far-field measurements of a radiating
//!    dipole and evaluates every differential term analytically.
//! 2. [`theory_lang`] defines the weighted alphabet of terms and candidate
//!    theory sets.
//! 3. [`enumerator`] streams candidate sets in order of increasing total
//!    weight, so the most compact theories surface first.
//! 4. [`validator`] decides whether a candidate annihilates the data by a
//!    singular-value null-space test and extracts the constants, including
//!    the implied wave speed.
//!
//! [`discovery`] wires the stages into a deterministic run with JSON and
//! text reports, plus a fast-versus-slow enumeration benchmark.

pub mod discovery;
pub mod enumerator;
pub mod svd;
pub mod theory_lang;
pub mod validator;
pub mod vec3;
pub mod virtual_lab;

pub use vec3::Vec3;
