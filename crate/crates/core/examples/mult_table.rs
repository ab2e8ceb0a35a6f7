//! Multiplicative variables, Janet divisors and the completeness test.

use janet::janet::{is_complete, mult_table};
use janet::monomial::default_names;
use janet::text::parse_monomial_set;
use janet::Monomial;

fn main() -> janet::Result<()> {
    let u = parse_monomial_set("vars x1 x2\nx1^2*x2\nx1*x2^2\nx2^3\n")?;
    let names = default_names(u.arity());
    let table = mult_table(&u)?;

    for (m, mult) in table.iter() {
        println!("{:<10} mult {}", m.to_string(), mult.display_with(&names));
    }
    println!("complete: {}", is_complete(&u)?);

    let w = Monomial::from_slice(&[3, 4]);
    match table.janet_divisor(&w) {
        Some(d) => println!("{w} has Janet divisor {d}"),
        None => println!("{w} lies outside the involutive cone"),
    }
    Ok(())
}
