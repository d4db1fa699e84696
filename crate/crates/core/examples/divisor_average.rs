//! Brute-force divisor averages over Q(i) against the shape of the bound.

use num_complex::Complex64;
use vnf::numberfield::{FieldDescriptor, FractionalIdeal};
use vnf::summation::divisor_average_check;

fn main() -> vnf::Result<()> {
    let f = FieldDescriptor::quadratic(-1)?;
    let grid: Vec<Vec<f64>> = [2.0, 4.0, 8.0, 16.0].iter().map(|&v| vec![v]).collect();
    let rows = divisor_average_check(f, &FractionalIdeal::unit(f), Complex64::new(0.3, 0.0), &grid, &[], 0.8, 2.0, 1 << 22)?;
    for r in rows {
        println!("V = {:>4}  terms {:>6}  sum {:.6e}  ratio {:.4}", r.v[0], r.terms, r.sum, r.ratio);
    }
    Ok(())
}
