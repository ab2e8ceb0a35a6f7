#![allow(dead_code)]

use std::path::PathBuf;

use janet::janet::complete;
use janet::monomial::{enumerate_up_to, random_set};
use janet::order::{enumerate_symbols, DerivativeOrder, DerivativeSymbol, WeightOrder};
use janet::pde::{Coefficient, LinExpr, PdeEquation, PdeSystem, Poly, RawEquation};
use janet::{Monomial, MonomialSet};
use num_rational::BigRational;
use rand::seq::SliceRandom;
use rand::Rng;

pub fn corpus_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/corpus")
}

pub fn corpus_files() -> Vec<PathBuf> {
    let mut files: Vec<_> = std::fs::read_dir(corpus_dir())
        .expect("corpus directory")
        .map(|e| e.expect("entry").path())
        .filter(|p| matches!(p.extension().and_then(|e| e.to_str()), Some("mon" | "pde")))
        .collect();
    files.sort();
    files
}

pub fn small_int<R: Rng>(rng: &mut R) -> BigRational {
    let v = loop {
        let v: i64 = rng.gen_range(-3..=3);
        if v != 0 {
            break v;
        }
    };
    BigRational::from_integer(v.into())
}

/// A random polynomial with small integer coefficients.
pub fn random_poly<R: Rng>(rng: &mut R, n: usize, terms: usize, max_deg: u32) -> Poly {
    let monos = enumerate_up_to(n, max_deg);
    let monos: Vec<&Monomial> = monos.iter().collect();
    let mut p = Poly::zero(n);
    for _ in 0..rng.gen_range(1..=terms) {
        let m = monos.choose(rng).expect("non-empty");
        p.add_term((*m).clone(), small_int(rng));
    }
    p
}

/// A coefficient that is usually a constant, sometimes linear in one variable.
pub fn random_coefficient<R: Rng>(rng: &mut R, n: usize) -> Coefficient {
    if rng.gen_bool(0.7) {
        Coefficient::constant(n, small_int(rng))
    } else {
        let i = rng.gen_range(1..=n);
        Coefficient::from_poly(&Poly::var(n, i) + &Poly::constant(n, small_int(rng)))
    }
}

/// A right side made of symbols anterior to `lead`.
fn random_rhs<R: Rng>(rng: &mut R, n: usize, m: usize, order: &DerivativeOrder, lead: &DerivativeSymbol) -> LinExpr {
    let candidates: Vec<DerivativeSymbol> = enumerate_symbols(n, m, lead.order())
        .into_iter()
        .filter(|d| order.is_anterior(d, lead))
        .collect();
    let mut rhs = LinExpr::zero(n);
    for _ in 0..rng.gen_range(0..=3) {
        if let Some(d) = candidates.choose(rng) {
            rhs.add_term(d.clone(), random_coefficient(rng, n));
        }
    }
    if rng.gen_bool(0.3) {
        rhs.add_constant(&random_coefficient(rng, n));
    }
    rhs
}

/// A system whose leading monomials are complete for every unknown.
pub fn random_complete_system<R: Rng>(rng: &mut R, n: usize, m: usize, max_deg: u32) -> PdeSystem {
    let order = DerivativeOrder::Deglex;
    let mut eqs = Vec::new();
    for r in 1..=m {
        if r > 1 && rng.gen_bool(0.3) {
            continue;
        }
        let leads = complete(&random_set(rng, n, 3, max_deg)).expect("completion").result;
        for alpha in leads.iter() {
            let lead = DerivativeSymbol::new(r, alpha.clone());
            let rhs = random_rhs(rng, n, m, &order, &lead);
            eqs.push(PdeEquation::new(lead, rhs));
        }
    }
    PdeSystem::new(n, m, order, eqs).expect("well-formed system")
}

/// A random linear expression over symbols of order at most `max_order`.
pub fn random_expr<R: Rng>(rng: &mut R, n: usize, m: usize, max_order: u32) -> LinExpr {
    let symbols = enumerate_symbols(n, m, max_order);
    let mut e = LinExpr::zero(n);
    for _ in 0..rng.gen_range(1..=4) {
        let d = symbols.choose(rng).expect("non-empty");
        e.add_term(d.clone(), random_coefficient(rng, n));
    }
    if rng.gen_bool(0.3) {
        e.add_constant(&random_coefficient(rng, n));
    }
    e
}

/// Up to four general equations with constant coefficients.
pub fn random_raw_equations<R: Rng>(rng: &mut R, n: usize, m: usize, max_order: u32) -> Vec<RawEquation> {
    let symbols = enumerate_symbols(n, m, max_order);
    (0..rng.gen_range(1..=4))
        .map(|_| {
            let mut lhs = LinExpr::zero(n);
            for _ in 0..rng.gen_range(1..=3) {
                let d = symbols.choose(rng).expect("non-empty");
                lhs.add_term(d.clone(), Coefficient::constant(n, small_int(rng)));
            }
            let mut rhs = LinExpr::zero(n);
            if rng.gen_bool(0.3) {
                rhs.add_constant(&Coefficient::constant(n, small_int(rng)));
            }
            RawEquation::new(lhs, rhs)
        })
        .collect()
}

pub fn random_weight_order<R: Rng>(rng: &mut R, n: usize, m: usize) -> DerivativeOrder {
    let levels = rng.gen_range(1..=3);
    let var_weights = (0..levels).map(|_| (0..n).map(|_| rng.gen_range(0..=3)).collect()).collect();
    let unknown_weights = (0..levels).map(|_| (0..m).map(|_| rng.gen_range(0..=3)).collect()).collect();
    DerivativeOrder::Weight(WeightOrder::new(n, m, var_weights, unknown_weights).expect("valid weights"))
}

/// A random set of degree at most `max_deg`, in `n` variables.
pub fn random_monomials<R: Rng>(rng: &mut R, n: usize, max_len: usize, max_deg: u32) -> MonomialSet {
    random_set(rng, n, max_len, max_deg)
}
