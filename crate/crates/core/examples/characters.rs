//! Additive characters: psi_S at the primes where x is not integral, and
//! triviality of the global character on F.

use vnf::numberfield::{global_character, parse_element, parse_field, psi_s};
use vnf::numberfield::character::character_support;

fn main() -> vnf::Result<()> {
    let f = parse_field("Q(sqrt(5))")?;
    for s in ["1/3", "1/3+1/9*w", "7/10-1/4*w"] {
        let x = parse_element(f, s)?;
        let support = character_support(f, &x)?;
        let finite = psi_s(f, &x, &support)?;
        println!(
            "x = {x:<10} |S| = {}  psi_S = {:.15}  global = {:.15}",
            support.len(),
            finite,
            global_character(f, &x)?
        );
    }
    Ok(())
}
