//! Self-similar shrinkers of the area-preserving curve-shortening flow.
//!
//! The crate builds closed λ-curves from the curvature ODE
//! `κ'' = 1/κ − κ + λ` written in tangent-angle coordinates, selects the
//! λ for which the closed curve encloses zero signed area, and evolves
//! perturbations of those curves with a semi-discrete flow solver.
//!
//! Module map:
//!
//! * [`potential`]: the λ-potential `V_λ(κ) = κ²/2 − λκ − log κ` and its level sets.
//! * [`shooting`]: adaptive integration of the curvature initial value problem.
//! * [`period`]: the energy/semi-period map in energy and amplitude-ratio coordinates.
//! * [`geometry`]: curve reconstruction in tangential polar coordinates and functionals.
//! * [`shrinker`]: closing energies, the length fixed point and certified shrinkers.
//! * [`flow`]: polygonal area-preserving curve-shortening flow.
//!
//! The crate is `no_std` with `alloc`; transcendental functions come from `libm`.

#![cfg_attr(not(feature = "std"), no_std)]
#![forbid(unsafe_code)]
// Comparisons are written as `!(x > 0.0)` on purpose so that NaN is rejected.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

extern crate alloc;

mod error;
pub mod flow;
pub mod geometry;
pub mod math;
pub mod ode;
pub mod period;
pub mod potential;
pub mod quadrature;
pub mod roots;
pub mod shooting;
pub mod shrinker;

pub use error::{Error, Result};
pub use geometry::{PlanarCurve, SupportProfile, Vec2};
pub use period::PeriodSample;
pub use potential::{PotentialSpec, TurningPair};
pub use shooting::CurvatureProfile;
pub use shrinker::ShrinkerSolution;
