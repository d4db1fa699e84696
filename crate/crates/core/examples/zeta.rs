//! Dedekind zeta functions of quadratic fields, their Laurent data at s = 1
//! and the functional equation residual.

use num_complex::Complex64;
use vnf::numberfield::FieldDescriptor;
use vnf::zeta::{dedekind_zeta, functional_equation_residual, laurent_at_1};

fn main() -> vnf::Result<()> {
    for d in [-1, -5, 5] {
        let f = FieldDescriptor::quadratic(d)?;
        let z2 = dedekind_zeta(f, Complex64::new(2.0, 0.0))?;
        let lau = laurent_at_1(f)?;
        let fe = functional_equation_residual(f, Complex64::new(0.3, 4.0))?;
        println!(
            "{f}: zeta(2) = {:.15}, residue {:.15}, constant {:.15}, FE residual {fe:.1e}",
            z2.re, lau.residue, lau.constant
        );
    }
    Ok(())
}
