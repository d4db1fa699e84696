//! Hankel transform of a bump weight over ℚ: direct quadrature against the
//! tabulated Barnes plan, and the fitted decay envelope.

use num_complex::Complex64;
use vnf::hankel::{decay_profile_for, hankel_transform, HankelPlan, WeightSpec};
use vnf::specfun::SpectralParameter;

fn main() -> vnf::Result<()> {
    let w = WeightSpec::real_bump(2.5, 1.5);
    let s = SpectralParameter::real(0.25)?;
    let plan = HankelPlan::new(&w, s)?;
    println!("{:>8}  {:>24}  {:>24}", "y", "direct", "plan");
    for y in [0.1, 0.5, 1.0, -1.0, 3.0, 10.0] {
        let y = [Complex64::new(y, 0.0)];
        let d = hankel_transform(&w, s, &y)?;
        let p = plan.eval(&y)?;
        println!("{:>8}  {:>24.14e}  {:>24.14e}", y[0].re, d.value.re, p.value.re);
    }
    let fit = decay_profile_for(&w, s)?;
    println!("envelope |w~(y)| <= {:.3e} |y|^-{:.2}", fit.c, fit.a);
    Ok(())
}
