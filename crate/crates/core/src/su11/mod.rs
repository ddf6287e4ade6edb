//! su(1,1) structure of the radial problem, checked numerically.

pub mod checks;
pub mod fock;
pub mod generators;
pub mod grid;

pub use checks::{algebra_check, algebra_check_all, AlgebraCheck, Su11Setup};
pub use fock::{FockGenerators, Matrix};
pub use generators::{apply_generator, apply_scalar_ladder, Generator, GeneratorContext, Realization};
pub use grid::{GridFunction, RadialGrid};
