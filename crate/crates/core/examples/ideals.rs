//! Ideal arithmetic in Q(sqrt(-5)): parsing, factorization, the different
//! and the divisor function tau_s.

use num_complex::Complex64;
use vnf::numberfield::{different, factor_ideal, parse_field, parse_ideal, tau_s};

fn main() -> vnf::Result<()> {
    let f = parse_field("Q(sqrt(-5))")?;
    let p2 = parse_ideal(f, "(2, 1+w)")?;
    println!("p2 = {p2}, N = {}", p2.norm());
    println!("p2^2 = {}", p2.mul(&p2)?);
    println!("different = {}", different(f));
    let a = parse_ideal(f, "(6)")?;
    for (p, e) in factor_ideal(&a)? {
        println!("  (6) has prime over {} (f = {}) with exponent {e}", p.p, p.f);
    }
    println!("tau_0((6)) = {}", tau_s(&a, Complex64::new(0.0, 0.0))?.re);
    Ok(())
}
