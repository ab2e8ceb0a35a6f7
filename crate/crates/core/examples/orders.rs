//! Comparing derivatives under deglex and under a weight order.

use janet::order::{
    has_degree_dominance, is_multiplication_compatible, is_total_order, DerivativeOrder, DerivativeSymbol,
};
use janet::text::parse_order;
use janet::Monomial;

fn main() -> janet::Result<()> {
    let (n, m) = (2, 2);
    let weighted = parse_order("weight; level 2 0 | 0 0; level 0 1 | 1 0;", n, m)?;
    let u_xx = DerivativeSymbol::new(1, Monomial::from_slice(&[2, 0]));
    let v_xy = DerivativeSymbol::new(2, Monomial::from_slice(&[1, 1]));

    for (name, ord) in [("deglex", DerivativeOrder::Deglex), ("weight", weighted)] {
        println!(
            "{name}: u_xx vs v_xy = {:?}; total {} dominance {} compatible {}",
            ord.cmp(&u_xx, &v_xy),
            is_total_order(&ord, n, m, 4),
            has_degree_dominance(&ord, n, m, 4),
            is_multiplication_compatible(&ord, n, m, 4),
        );
    }
    Ok(())
}
