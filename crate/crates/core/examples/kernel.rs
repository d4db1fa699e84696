//! Bessel kernels at a real and a complex place, with the J-product form
//! as a cross-check where it is well conditioned.

use num_complex::Complex64;
use vnf::specfun::{kernel_complex, kernel_complex_jform, kernel_real, kernel_real_jform, SpectralParameter};

fn main() -> vnf::Result<()> {
    let s = SpectralParameter::new(Complex64::new(0.3, 0.1))?;
    for x in [0.2, 1.0, 3.5, -0.05, -2.0] {
        let k = kernel_real(s, x)?;
        print!("B_s({x:>5}) = {:.12e}  (err {:.1e}, {:?})", k.value, k.est_abs_err, k.regime);
        if x > 0.0 {
            print!("  J-form {:.12e}", kernel_real_jform(s, x)?);
        }
        println!();
    }
    let z = Complex64::new(0.3, 0.4);
    let k = kernel_complex(s, z)?;
    println!("B_s({z}) = {:.12e}  J-form {:.12e}", k.value, kernel_complex_jform(s, z)?);
    Ok(())
}
