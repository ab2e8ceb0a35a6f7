//! Complementary decomposition of the monomials outside a cone, and the
//! Hilbert function read off from it.

use janet::complement::{check_partition, complementary_set, hilbert_from};
use janet::monomial::default_names;
use janet::MonomialSet;

fn main() -> janet::Result<()> {
    let u = MonomialSet::from_exponents(&[&[0, 2, 1], &[2, 0, 3]]);
    let names = default_names(u.arity());

    let comp = complementary_set(&u)?;
    for e in comp.entries() {
        println!("{:<8} level {}  cmult {}", e.monomial.to_string(), e.level, e.cmult.display_with(&names));
    }

    let h: Vec<u64> = (0..=6).map(|d| hilbert_from(&comp, d)).collect();
    println!("H(0..=6) = {h:?}");

    // every monomial up to degree 10 is in exactly one cone or one complementary cone
    assert!(check_partition(&u, 10)?.is_none());
    println!("partition verified up to degree 10");
    Ok(())
}
