//! Randomized algebraic identities shared by the property and acceptance suites.
#![allow(dead_code)]

use apolar::classification::{unip_orbit_membership, Membership};
use apolar::divided_powers::{monomials_in_window, Monomial};
use apolar::random;
use apolar::subspaces::perp_of_operators;
use apolar::*;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub type Check = fn(Field, &mut ChaCha8Rng) -> std::result::Result<(), String>;

pub const PROPERTIES: [(&str, Check); 9] = [
    ("commutator identity", commutator),
    ("pairing adjointness", adjointness),
    ("S-module law", module_law),
    ("dual automorphism adjunction", automorphism_adjunction),
    ("compose contract", compose_contract),
    ("tdf invariance under G+", tdf_invariance),
    ("trace replay exactness", trace_replay),
    ("double perp", double_perp),
    ("symmetric decomposition sum and symmetry", symdec),
];

fn err(e: Error) -> String {
    e.to_string()
}

fn shape(rng: &mut ChaCha8Rng) -> (usize, u32) {
    (rng.gen_range(1..=3), rng.gen_range(1..=6))
}

fn sparse_poly(n: usize, field: Field, d: u32, rng: &mut ChaCha8Rng) -> DPPoly {
    let terms = monomials_in_window(n, 0, d)
        .into_iter()
        .filter_map(|m| rng.gen_bool(0.4).then(|| (m, random::scalar(field, rng))));
    DPPoly::from_terms(n, field, terms)
}

fn sparse_op(n: usize, field: Field, lo: u32, hi: u32, trunc: u32, rng: &mut ChaCha8Rng) -> Operator {
    let terms = monomials_in_window(n, lo, hi)
        .into_iter()
        .filter_map(|m| rng.gen_bool(0.4).then(|| (m, random::scalar(field, rng))));
    Operator::from_terms(n, field, trunc, terms)
}

macro_rules! ensure {
    ($c:expr, $($m:tt)*) => {
        if !$c {
            return Err(format!($($m)*));
        }
    };
}

fn commutator(field: Field, rng: &mut ChaCha8Rng) -> std::result::Result<(), String> {
    let (n, d) = shape(rng);
    let f = sparse_poly(n, field, d, rng);
    let s = sparse_op(n, field, 0, d + 1, d + 1, rng);
    let i = rng.gen_range(0..n);
    let lhs = &contract(&s, &f.x_mul(i)).map_err(err)? - &contract(&s, &f).map_err(err)?.x_mul(i);
    let rhs = contract(&s.partial_derivative(i).map_err(err)?, &f).map_err(err)?;
    ensure!(lhs == rhs, "σ⌟(x_i f) - x_i(σ⌟f) = {lhs}, ∂_iσ⌟f = {rhs}");
    Ok(())
}

fn adjointness(field: Field, rng: &mut ChaCha8Rng) -> std::result::Result<(), String> {
    let (n, d) = shape(rng);
    let f = sparse_poly(n, field, d, rng);
    let s = sparse_op(n, field, 0, d, d, rng);
    let t = sparse_op(n, field, 0, d, d, rng);
    let lhs = pair(&t, &contract(&s, &f).map_err(err)?).map_err(err)?;
    let rhs = pair(&(&t * &s), &f).map_err(err)?;
    ensure!(lhs == rhs, "⟨τ, σ⌟f⟩ = {lhs} but ⟨τσ, f⟩ = {rhs}");
    Ok(())
}

fn module_law(field: Field, rng: &mut ChaCha8Rng) -> std::result::Result<(), String> {
    let (n, d) = shape(rng);
    let f = sparse_poly(n, field, d, rng);
    let s = sparse_op(n, field, 0, d, d, rng);
    let t = sparse_op(n, field, 0, d, d, rng);
    let lhs = contract(&(&s * &t), &f).map_err(err)?;
    let rhs = contract(&s, &contract(&t, &f).map_err(err)?).map_err(err)?;
    ensure!(lhs == rhs, "(στ)⌟f = {lhs} but σ⌟(τ⌟f) = {rhs}");
    ensure!(contract(&Operator::one(n, field, d), &f).map_err(err)? == f, "1⌟f ≠ f");
    Ok(())
}

fn small_group_element(n: usize, field: Field, d: u32, rng: &mut ChaCha8Rng) -> Result<GroupElement> {
    if rng.gen_bool(0.5) {
        random::unipotent_element(n, field, d, rng)
    } else {
        random::group_element(n, field, d, rng)
    }
}

// ⟨L_g σ, f⟩ = ⟨σ, g·f⟩ with L_g σ = φ(σ)φ(u).
fn automorphism_adjunction(field: Field, rng: &mut ChaCha8Rng) -> std::result::Result<(), String> {
    let (n, d) = (rng.gen_range(1..=3), rng.gen_range(1..=4));
    let f = sparse_poly(n, field, d, rng);
    let g = small_group_element(n, field, d, rng).map_err(err)?;
    let s = sparse_op(n, field, 0, d, d, rng);
    let lhs = pair(&g.act_on_operator(&s).map_err(err)?, &f).map_err(err)?;
    let rhs = pair(&s, &g.apply(&f).map_err(err)?).map_err(err)?;
    ensure!(lhs == rhs, "⟨gσ, f⟩ = {lhs} but ⟨σ, g f⟩ = {rhs}");
    let aut = GroupElement::from_aut(g.aut().clone());
    let lhs = pair(&g.aut().apply(&s).map_err(err)?, &f).map_err(err)?;
    let rhs = pair(&s, &aut.apply(&f).map_err(err)?).map_err(err)?;
    ensure!(lhs == rhs, "⟨φσ, f⟩ = {lhs} but ⟨σ, φ∨f⟩ = {rhs}");
    Ok(())
}

fn compose_contract(field: Field, rng: &mut ChaCha8Rng) -> std::result::Result<(), String> {
    let (n, d) = (rng.gen_range(1..=3), rng.gen_range(1..=4));
    let f = sparse_poly(n, field, d, rng);
    let g = small_group_element(n, field, d, rng).map_err(err)?;
    let h = small_group_element(n, field, d, rng).map_err(err)?;
    let lhs = compose(&g, &h).map_err(err)?.apply(&f).map_err(err)?;
    let rhs = h.apply(&g.apply(&f).map_err(err)?).map_err(err)?;
    ensure!(lhs == rhs, "(g∘h)f = {lhs} but h(g f) = {rhs}");
    Ok(())
}

fn tdf_invariance(field: Field, rng: &mut ChaCha8Rng) -> std::result::Result<(), String> {
    let (n, d) = shape(rng);
    let f = sparse_poly(n, field, d, rng);
    let g = random::unipotent_element(n, field, d.max(1), rng).map_err(err)?;
    let gf = g.apply(&f).map_err(err)?;
    ensure!(gf.tdf() == f.tdf(), "tdf changed from {} to {}", f.tdf(), gf.tdf());
    Ok(())
}

fn trace_replay(field: Field, rng: &mut ChaCha8Rng) -> std::result::Result<(), String> {
    let n = rng.gen_range(1..=3);
    let d = rng.gen_range(2..=if n == 3 { 4 } else { 6 });
    let form = random::form(n, field, d, rng);
    let g = random::unipotent_element(n, field, d, rng).map_err(err)?;
    let f = g.apply(&form).map_err(err)?;
    match unip_orbit_membership(&form, &f) {
        Ok(Membership::Yes(t)) => {
            t.validate().map_err(err)?;
            ensure!(t.result == form, "trace ends at {} instead of {form}", t.result);
            ensure!(t.accumulated.apply(&f).map_err(err)? == form, "accumulated element does not replay");
            Ok(())
        }
        Ok(Membership::No { degree }) => Err(format!("round trip rejected at degree {degree} for {form}")),
        Err(Error::CharacteristicTooSmall { .. }) => Ok(()),
        Err(e) => Err(e.to_string()),
    }
}

fn double_perp(field: Field, rng: &mut ChaCha8Rng) -> std::result::Result<(), String> {
    let (n, d) = (rng.gen_range(1..=3), rng.gen_range(0..=4));
    let lo = rng.gen_range(0..=d);
    let k = rng.gen_range(0..=4);
    let gens: Vec<DPPoly> = (0..k).map(|_| sparse_poly(n, field, d, rng).part(lo, d)).collect();
    let w = Basis::span_polys(Ambient::p(n, field, lo, d), &gens).map_err(err)?;
    let wp = perp(&w, lo, d).map_err(err)?;
    let back = perp_of_operators(&wp, lo, d).map_err(err)?;
    ensure!(back == w, "perp of perp has dimension {} instead of {}", back.dim(), w.dim());
    ensure!(w.dim() + wp.dim() == w.ambient().dim(), "dimensions do not add up");
    Ok(())
}

fn symdec(field: Field, rng: &mut ChaCha8Rng) -> std::result::Result<(), String> {
    let (n, d) = shape(rng);
    let mut f = sparse_poly(n, field, d, rng);
    let top = Monomial::new((0..n).map(|i| if i == 0 { d } else { 0 }).collect());
    f = &f + &DPPoly::term(top, field.one());
    if f.is_zero() {
        return Ok(());
    }
    let h = hilbert_function(&f).map_err(err)?;
    let sd = symmetric_decomposition(&f).map_err(err)?;
    ensure!(sd.sum() == h.values(), "Σ Δ = {:?} but H = {h}", sd.sum());
    let e = sd.socle_degree();
    for (a, delta) in sd.deltas().iter().enumerate() {
        ensure!(delta.len() as u32 == e - a as u32 + 1, "Δ_{a} has length {}", delta.len());
        let rev: Vec<usize> = delta.iter().rev().cloned().collect();
        ensure!(*delta == rev, "Δ_{a} = {delta:?} is not symmetric");
    }
    Ok(())
}
