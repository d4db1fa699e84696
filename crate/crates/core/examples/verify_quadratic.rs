//! Verification over the Gaussian field, Q(sqrt(5)) and a non-principal
//! ideal of Q(sqrt(-5)), each with its standard weight.

use num_complex::Complex64;
use vnf::hankel::WeightSpec;
use vnf::numberfield::{parse_field, parse_ideal};
use vnf::specfun::SpectralParameter;
use vnf::summation::{verify, ProblemInstance};

fn main() -> vnf::Result<()> {
    for (field, ideal) in [("Q(sqrt(-1))", "(1)"), ("Q(sqrt(5))", "(1)"), ("Q(sqrt(-5))", "(2, 1+w)")] {
        let f = parse_field(field)?;
        let p = ProblemInstance::new(
            f,
            parse_ideal(f, ideal)?,
            f.zero(),
            SpectralParameter::new(Complex64::new(0.2, 0.0))?,
            WeightSpec::standard(&f.places()),
            1e-5,
            1e6,
        )?;
        let r = verify(&p)?;
        println!(
            "{field:<12} a = {ideal:<9} rel {:.1e}  lhs terms {}  dual terms {}  {:.1} s",
            r.rel_err,
            r.lhs_terms,
            r.dual_terms,
            r.timings.total_ms / 1e3
        );
    }
    Ok(())
}
