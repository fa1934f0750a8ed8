#![no_std]

//! Uniform approximation of continuous functions on `[0, 1]` (and of 1-periodic
//! functions) by polynomials built from quantum measurement statistics.
//!
//! Every quantum outcome distribution used here is computed exactly rather than
//! sampled:
//!
//! * [`phase_dist`] holds the closed-form phase-estimation law, its tail bound,
//!   and the Fejér and Jackson kernels the law discretises.
//! * [`counting_model`] conditions quantum counting on the Hamming weight of the
//!   input string and derives the single-run and median-of-three amplitude
//!   estimates.
//! * [`constructors`] turns those laws into approximants: the Bernstein operator,
//!   the counting polynomials (single run and median of three), the
//!   phase-estimation trigonometric polynomial and kernel convolution.
//! * [`qsim`] is a dense statevector simulator used as an independent oracle for
//!   the closed forms.
//! * [`numerics`] carries the shared plumbing: target functions, Chebyshev and
//!   Fourier representations, grids, norms and moduli of continuity.
//!
//! The crate is `no_std` and only needs `alloc`.

extern crate alloc;

#[cfg(test)]
extern crate std;

pub mod constructors;
pub mod counting_model;
mod error;
pub mod numerics;
pub mod phase_dist;
pub mod qsim;

pub use error::{Error, Result};
pub use numerics::{Evaluable, TargetFunction};
