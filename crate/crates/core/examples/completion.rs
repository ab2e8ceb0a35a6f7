//! Janet completion of a small monomial set, step by step.
//!
//! ```text
//! cargo run --example completion
//! ```

use janet::janet::complete;
use janet::MonomialSet;

fn main() -> janet::Result<()> {
    // x3*x2^2 and x3^3*x1^2, exponents listed as (x1, x2, x3)
    let u = MonomialSet::from_exponents(&[&[0, 2, 1], &[2, 0, 3]]);
    let trace = complete(&u)?;

    for step in &trace.steps {
        println!("+ {}  (from {} * x{})", step.added, step.source, step.var);
    }
    println!("complete set:");
    for m in trace.result.iter() {
        println!("  {m}");
    }
    Ok(())
}
