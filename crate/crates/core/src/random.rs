//! Seeded pseudorandom polynomials and group elements.

use rand::Rng;

use crate::divided_powers::{monomials_in_window, DPPoly, Monomial, Operator};
use crate::dual_actions::{Automorphism, GroupElement};
use crate::error::Result;
use crate::scalars::{Field, Scalar};

/// Integers in `-5..=5` over ℚ, uniform residues over `𝔽_p`.
pub fn scalar<R: Rng>(field: Field, rng: &mut R) -> Scalar {
    match field {
        Field::Rationals => field.from_i64(rng.gen_range(-5..=5)),
        Field::Prime(p) => Scalar::Modular { value: rng.gen_range(0..p), modulus: p },
    }
}

fn nonzero_scalar<R: Rng>(field: Field, rng: &mut R) -> Scalar {
    loop {
        let c = scalar(field, rng);
        if !c.is_zero() {
            return c;
        }
    }
}

fn terms<R: Rng>(n: usize, field: Field, lo: u32, hi: u32, rng: &mut R) -> Vec<(Monomial, Scalar)> {
    monomials_in_window(n, lo, hi).into_iter().map(|m| (m, scalar(field, rng))).collect()
}

/// A dense random polynomial with all degrees in `lo..=hi`.
pub fn poly<R: Rng>(n: usize, field: Field, lo: u32, hi: u32, rng: &mut R) -> DPPoly {
    DPPoly::from_terms(n, field, terms(n, field, lo, hi, rng))
}

/// A random form of degree exactly `d`.
pub fn form<R: Rng>(n: usize, field: Field, d: u32, rng: &mut R) -> DPPoly {
    loop {
        let f = poly(n, field, d, d, rng);
        if !f.is_zero() {
            return f;
        }
    }
}

/// A random operator with terms of degree `lo..=hi`.
pub fn operator<R: Rng>(n: usize, field: Field, lo: u32, hi: u32, trunc: u32, rng: &mut R) -> Operator {
    Operator::from_terms(n, field, trunc, terms(n, field, lo, hi.min(trunc), rng))
}

/// A random element of `G⁺`: images `a_i + (m²-part)` and a unit `1 + (m-part)`.
pub fn unipotent_element<R: Rng>(n: usize, field: Field, trunc: u32, rng: &mut R) -> Result<GroupElement> {
    let images =
        (0..n).map(|i| &Operator::var(n, field, i, trunc) + &operator(n, field, 2, trunc, trunc, rng)).collect();
    let unit = &Operator::one(n, field, trunc) + &operator(n, field, 1, trunc, trunc, rng);
    GroupElement::new(Automorphism::new(images)?, unit)
}

/// A random element of `G` with an invertible linear part and a nonzero constant in the unit.
pub fn group_element<R: Rng>(n: usize, field: Field, trunc: u32, rng: &mut R) -> Result<GroupElement> {
    loop {
        let images: Vec<Operator> = (0..n).map(|_| operator(n, field, 1, trunc, trunc, rng)).collect();
        let Ok(aut) = Automorphism::new(images) else { continue };
        let unit = &Operator::constant(n, nonzero_scalar(field, rng), trunc) + &operator(n, field, 1, trunc, trunc, rng);
        return GroupElement::new(aut, unit);
    }
}
