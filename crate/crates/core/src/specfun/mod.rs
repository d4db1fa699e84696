//! Special functions: Gamma, Bessel/Hankel functions and the Bessel kernels.

pub mod bessel;
pub mod dd;
pub mod gamma;
pub mod gamma_integral;
pub mod kernel;

pub use bessel::{bessel_i, bessel_j, bessel_k, bessel_y, hankel_h1, hankel_h2, Regime};
pub use gamma::{gamma_factor, gamma_fn, ln_gamma, Place};
pub use gamma_integral::{gamma_integral_oracle, hyp2f1};
pub use kernel::{
    kernel_complex, kernel_complex_checked, kernel_complex_jform, kernel_product, kernel_real,
    kernel_real_jform, KernelValue, SpectralParameter,
};
