//! Special functions and half-line quadrature.

mod identities;
mod kummer;
mod laguerre;
mod quadrature;

pub use identities::{laguerre_identity, IdentityReport, LaguerreIdentity};
pub use kummer::kummer;
pub use laguerre::{
    laguerre, laguerre_at_zero, laguerre_derivative, laguerre_generating, laguerre_recurrence, laguerre_table,
};
pub use quadrature::{integrate_halfline, integrate_scaled, QuadratureRule};

pub use statrs::function::gamma::{gamma, ln_gamma};
