//! Bringing a general linear system to canonical form, or finding it
//! inconsistent.

use janet::pde::{canonicalize, Canonical};
use janet::text::{parse_pde_file, print_system};

fn run(src: &str) -> janet::Result<()> {
    let doc = parse_pde_file(src)?;
    match canonicalize(doc.arity(), doc.unknowns.len(), &doc.order, &doc.raw_equations())? {
        Canonical::Canonical(sys) => print!("{}", print_system(&sys, &doc.vars, &doc.unknowns)),
        Canonical::Incompatible(w) => println!(
            "incompatible at round {}: 0 = {}",
            w.round,
            w.value.display_with(&doc.vars, &doc.unknowns, &doc.order)
        ),
    }
    Ok(())
}

fn main() -> janet::Result<()> {
    run("vars x y; unknowns u; kind raw; D[2,0] u - u = 0; D[1,1] u = 0;")?;
    println!("--");
    run("vars x y; unknowns u; kind raw; D[1,0] u = y; D[0,1] u = 0;")
}
