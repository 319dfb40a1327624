//! Generalized final-value limits and what can be built from them.
//!
//! * [`final_value_z`] / [`final_value_s`]: `lim (z-1)F(z)` and `lim sF(s)`,
//!   classified by pole geometry into [`Applicability`] classes.
//! * [`periodic_average`]: block mean of an N-periodic sequence.
//! * [`running_average_transform_z`] / [`running_average_transform_s`]:
//!   transforms of the running mean, by quadrature.
//! * [`System`], [`system_average_z`], [`system_average_s`]: input average
//!   to output average through the DC gain of a stable LTI system.
//! * [`product_average`]: average of a product sequence by contour quadrature.
//!
//! The pole-geometry side is generic over [`crate::Scalar`]; quadrature is `f64`.

mod product;
pub mod quadrature;
mod running;
mod system;
mod verdict;

pub use product::{product_average, ContourOptions, ContourStage, ProductEstimate};
pub use running::{running_average_transform_s, running_average_transform_z, RUNNING_AVERAGE_TARGET};
pub use system::{system_average_s, system_average_z, Stability, System};
pub use verdict::{
    classify_applicability, final_value, final_value_s, final_value_z, periodic_average, Applicability, Verdict,
};
