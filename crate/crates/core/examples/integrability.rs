//! Integrability conditions of a solved-form system.

use janet::pde::{integrability_conditions, is_completely_integrable};
use janet::text::{parse_pde_file, PdeBody};

const SYSTEM: &str = "
vars x y;
unknowns phi;
D[2,0] phi = phi;
D[1,1] phi = 0;
";

fn main() -> janet::Result<()> {
    let doc = parse_pde_file(SYSTEM)?;
    let PdeBody::System(sys) = &doc.body else { unreachable!() };

    for c in integrability_conditions(sys)? {
        println!(
            "{} * x{}: residual {}",
            c.source.display_with(&doc.unknowns),
            c.var,
            c.residual.display_with(&doc.vars, &doc.unknowns, sys.order())
        );
    }
    println!("completely integrable: {}", is_completely_integrable(sys)?);
    Ok(())
}
