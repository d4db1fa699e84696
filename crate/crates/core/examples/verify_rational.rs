//! The classical case over Q and a twisted instance with zeta = 1/3.

use num_complex::Complex64;
use vnf::hankel::WeightSpec;
use vnf::numberfield::{parse_element, FieldDescriptor, FractionalIdeal};
use vnf::specfun::SpectralParameter;
use vnf::summation::{verify, ProblemInstance};

fn main() -> vnf::Result<()> {
    let f = FieldDescriptor::rational();
    for (zeta, s) in [("0", 0.25), ("1/3", 0.25)] {
        let p = ProblemInstance::new(
            f,
            FractionalIdeal::unit(f),
            parse_element(f, zeta)?,
            SpectralParameter::new(Complex64::new(s, 0.0))?,
            WeightSpec::real_bump(2.5, 1.5),
            1e-8,
            1e6,
        )?;
        let r = verify(&p)?;
        println!(
            "zeta = {zeta:<4} s = {s}: lhs {:.12e}  rhs {:.12e}  rel {:.1e}  dual terms {}  passed {}",
            r.lhs.re, r.rhs.re, r.rel_err, r.dual_terms, r.passed
        );
    }
    Ok(())
}
