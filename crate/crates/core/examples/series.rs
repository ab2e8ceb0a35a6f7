//! Truncated power series solutions of a system with constant-coefficient
//! monomial operators.

use janet::pde::{monomial_template, solve_series_monomial, substitution_residues, Poly};
use janet::text::{parse_pde_file, PdeBody};

const SYSTEM: &str = "
vars x1 x2;
unknowns phi;
kind monomial;
D[2,0] phi = 0;
D[1,1] phi = 0;
initial phi = 1;
initial D[1,0] phi = 2;
initial D[0,1] phi = x2;
";

fn main() -> janet::Result<()> {
    let doc = parse_pde_file(SYSTEM)?;
    let PdeBody::Monomial { system, initial: Some(data) } = &doc.body else { unreachable!() };

    for slot in &monomial_template(system)?.slots {
        println!("free data at {} in {}", slot.beta, slot.cmult.display_with(&doc.vars));
    }

    let phi: Poly = solve_series_monomial(system, data, 6)?;
    println!("phi = {}", phi.display_with(&doc.vars));
    assert!(substitution_residues(system, &phi, 6).iter().all(|(_, r)| r.is_zero()));
    Ok(())
}
