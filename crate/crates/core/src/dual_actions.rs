//! The group `G = Aut(S) ⋉ S*` and its dual action on `P`.
//!
//! An element `g = (φ, u)` acts on `S` by `σ ↦ φ(σ)·φ(u)` and on `P` by
//! `f ↦ u ⌟ φ∨(f)`, the transpose under the contraction pairing. With this
//! convention `apply(compose(g, h), f) = apply(h, apply(g, f))`.

use std::collections::BTreeMap;

use crate::divided_powers::{contract, dp_mul, DPPoly, Monomial, Operator};
use crate::error::{Error, Result};
use crate::linalg;
use crate::scalars::{Field, Scalar};

/// A truncated automorphism of `S`, given by the images of the variables.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Automorphism {
    images: Vec<Operator>,
}

impl Automorphism {
    /// Validates that every image lies in `m` and that the linear parts are independent.
    pub fn new(images: Vec<Operator>) -> Result<Automorphism> {
        let Some(first) = images.first() else {
            return Err(Error::InvalidAutomorphism("no variables".into()));
        };
        let (n, field, trunc) = (first.arity(), first.field(), first.trunc());
        if images.len() != n {
            return Err(Error::ArityMismatch);
        }
        if images.iter().any(|s| s.arity() != n || s.field() != field) {
            return Err(Error::ArityMismatch);
        }
        let images: Vec<Operator> = images.iter().map(|s| s.with_trunc(trunc.min(s.trunc()))).collect();
        let trunc = images.iter().map(Operator::trunc).min().unwrap();
        let images: Vec<Operator> = images.iter().map(|s| s.with_trunc(trunc)).collect();
        if images.iter().any(|s| !s.constant_term().is_zero()) {
            return Err(Error::InvalidAutomorphism("an image has a nonzero constant term".into()));
        }
        let a = Automorphism { images };
        if linalg::determinant(field, &a.linear_part()).is_zero() {
            return Err(Error::InvalidAutomorphism("linear parts are dependent".into()));
        }
        Ok(a)
    }

    pub fn identity(n: usize, field: Field, trunc: u32) -> Automorphism {
        Automorphism { images: (0..n).map(|i| Operator::var(n, field, i, trunc)).collect() }
    }

    /// The linear automorphism `φ(a_i) = Σ_j M[j][i] a_j`, so that row `i` of `M`
    /// is the image of `x_i` under the dual action.
    pub fn linear(m: &[Vec<Scalar>], trunc: u32) -> Result<Automorphism> {
        let n = m.len();
        if n == 0 || m.iter().any(|r| r.len() != n) {
            return Err(Error::ArityMismatch);
        }
        let field = m[0][0].field();
        if linalg::determinant(field, m).is_zero() {
            return Err(Error::SingularMatrix);
        }
        let images = (0..n)
            .map(|i| {
                Operator::from_terms(n, field, trunc, (0..n).map(|j| (Monomial::var(n, j), m[j][i].clone())))
            })
            .collect();
        Ok(Automorphism { images })
    }

    pub fn images(&self) -> &[Operator] {
        &self.images
    }

    pub fn arity(&self) -> usize {
        self.images.len()
    }

    pub fn field(&self) -> Field {
        self.images[0].field()
    }

    pub fn trunc(&self) -> u32 {
        self.images[0].trunc()
    }

    pub fn with_trunc(&self, trunc: u32) -> Automorphism {
        Automorphism { images: self.images.iter().map(|s| s.with_trunc(trunc)).collect() }
    }

    /// `L[i][j]` = coefficient of `a_j` in `φ(a_i)`.
    pub fn linear_part(&self) -> Vec<Vec<Scalar>> {
        let n = self.arity();
        self.images.iter().map(|s| (0..n).map(|j| s.coeff(&Monomial::var(n, j))).collect()).collect()
    }

    /// `φ(a_i) - a_i ∈ m^2` for every `i`.
    pub fn is_unipotent(&self) -> bool {
        let n = self.arity();
        self.images.iter().enumerate().all(|(i, s)| {
            (0..n).all(|j| {
                let c = s.coeff(&Monomial::var(n, j));
                if i == j {
                    c.is_one()
                } else {
                    c.is_zero()
                }
            })
        })
    }

    /// `φ(σ)`.
    pub fn apply(&self, sigma: &Operator) -> Result<Operator> {
        sigma.substitute(&self.images)
    }

    /// `self ∘ other`, i.e. `σ ↦ self(other(σ))`.
    pub fn compose(&self, other: &Automorphism) -> Result<Automorphism> {
        let images = other.images.iter().map(|s| s.substitute(&self.images)).collect::<Result<Vec<_>>>()?;
        Ok(Automorphism { images })
    }

    /// The inverse automorphism, by fixed-point iteration on the truncated series.
    pub fn inverse(&self) -> Result<Automorphism> {
        let n = self.arity();
        let field = self.field();
        let trunc = self.trunc();
        let linv = linalg::inverse(field, &self.linear_part())
            .ok_or_else(|| Error::InvalidAutomorphism("linear part is singular".into()))?;
        let higher: Vec<Operator> = self.images.iter().map(|s| s.part(2, trunc)).collect();
        let vars: Vec<Operator> = (0..n).map(|i| Operator::var(n, field, i, trunc)).collect();
        let apply_linv = |r: &[Operator]| -> Vec<Operator> {
            (0..n)
                .map(|i| {
                    let mut acc = Operator::zero(n, field, trunc);
                    for (j, rj) in r.iter().enumerate() {
                        if !linv[i][j].is_zero() {
                            acc = &acc + &rj.scale(&linv[i][j]);
                        }
                    }
                    acc
                })
                .collect()
        };
        let mut psi = apply_linv(&vars);
        for _ in 0..trunc {
            let r: Vec<Operator> = higher
                .iter()
                .zip(&vars)
                .map(|(h, v)| Ok(v - &h.substitute(&psi)?))
                .collect::<Result<_>>()?;
            psi = apply_linv(&r);
        }
        let inv = Automorphism { images: psi };
        let id = Automorphism::identity(n, field, trunc);
        if inv.compose(self)? != id || self.compose(&inv)? != id {
            return Err(Error::InvalidAutomorphism("inversion did not converge".into()));
        }
        Ok(inv)
    }
}

/// A derivation of `S` given by `D_i = D(a_i)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Derivation {
    images: Vec<Operator>,
}

impl Derivation {
    /// Every image must lie in `m`.
    pub fn new(images: Vec<Operator>) -> Result<Derivation> {
        if images.iter().any(|s| !s.constant_term().is_zero()) {
            return Err(Error::InvalidAutomorphism("derivation does not preserve m".into()));
        }
        let n = images.len();
        if n == 0 || images.iter().any(|s| s.arity() != n) {
            return Err(Error::ArityMismatch);
        }
        Ok(Derivation { images })
    }

    pub fn images(&self) -> &[Operator] {
        &self.images
    }

    /// Every `D_i ∈ m^2`.
    pub fn is_unipotent(&self) -> bool {
        self.images.iter().all(|s| s.order().is_none_or(|o| o >= 2))
    }

    /// `D(σ) = Σ_i ∂_i σ · D_i`.
    pub fn apply(&self, sigma: &Operator) -> Result<Operator> {
        let mut acc = Operator::zero(sigma.arity(), sigma.field(), sigma.trunc());
        for (i, d) in self.images.iter().enumerate() {
            acc = acc.checked_add(&sigma.partial_derivative(i)?.checked_mul(d)?)?;
        }
        Ok(acc)
    }

    /// `exp(D)` for `D` with all images in `m^2`; needs `char > trunc`.
    pub fn exp(&self, trunc: u32) -> Result<Automorphism> {
        if !self.is_unipotent() {
            return Err(Error::InvalidAutomorphism("exp needs a derivation into m^2".into()));
        }
        let n = self.images.len();
        let field = self.images[0].field();
        field.char_guard(trunc)?;
        let d = Derivation { images: self.images.iter().map(|s| s.with_trunc(trunc)).collect() };
        let images = (0..n)
            .map(|i| exp_series(&Operator::var(n, field, i, trunc), trunc, |s| d.apply(s)))
            .collect::<Result<Vec<_>>>()?;
        Ok(Automorphism { images })
    }
}

// Σ_k L^k(s)/k! for a map L raising the order; stops at the truncation.
fn exp_series(s: &Operator, trunc: u32, l: impl Fn(&Operator) -> Result<Operator>) -> Result<Operator> {
    let field = s.field();
    let mut term = s.clone();
    let mut acc = s.clone();
    for k in 1..=trunc as u64 + 1 {
        term = l(&term)?;
        if term.is_zero() {
            break;
        }
        term = term.scale(&field.from_i64(k as i64).inverse()?);
        acc = &acc + &term;
    }
    Ok(acc)
}

impl Operator {
    /// Inverse of a unit in the truncated ring.
    pub fn unit_inverse(&self) -> Result<Operator> {
        let c = self.constant_term();
        if c.is_zero() {
            return Err(Error::NotAUnit);
        }
        let cinv = c.inverse()?;
        // u = c (1 + m), u^{-1} = c^{-1} Σ (-m)^k
        let m = self.scale(&cinv).part(1, self.trunc());
        let neg_m = -&m;
        let mut acc = Operator::one(self.arity(), self.field(), self.trunc());
        let mut p = acc.clone();
        for _ in 0..self.trunc() {
            p = &p * &neg_m;
            if p.is_zero() {
                break;
            }
            acc = &acc + &p;
        }
        Ok(acc.scale(&cinv))
    }
}

fn check_trunc(trunc: u32, f: &DPPoly) -> Result<()> {
    if f.degree().is_some_and(|d| d > trunc) {
        return Err(Error::InvalidAutomorphism(format!(
            "truncation {trunc} is below the degree {} of the polynomial",
            f.degree().unwrap()
        )));
    }
    Ok(())
}

/// `φ∨(f) = Σ_a x^[a] · (D^a ⌟ f)` with `D_i = φ(a_i) - a_i`.
pub fn apply_automorphism_dual(phi: &Automorphism, f: &DPPoly) -> Result<DPPoly> {
    let n = phi.arity();
    if f.arity() != n {
        return Err(Error::ArityMismatch);
    }
    if f.field() != phi.field() {
        return Err(Error::FieldMismatch);
    }
    check_trunc(phi.trunc(), f)?;
    let Some(d) = f.degree() else {
        return Ok(f.clone());
    };
    let field = f.field();
    let ds: Vec<Operator> =
        phi.images.iter().enumerate().map(|(i, s)| &s.with_trunc(d) - &Operator::var(n, field, i, d)).collect();
    let mut out = f.clone();
    // Multi-indices of the current total degree, each generated once by
    // appending variables in non-decreasing order.
    let mut level: BTreeMap<Monomial, (usize, Operator)> = BTreeMap::new();
    level.insert(Monomial::one(n), (0, Operator::one(n, field, d)));
    for _ in 1..=d {
        let mut next = BTreeMap::new();
        let mut any = false;
        for (a, (last, da)) in &level {
            for (i, di) in ds.iter().enumerate().skip(*last) {
                let db = da * di;
                if db.is_zero() {
                    continue;
                }
                let g = contract(&db, f)?;
                if g.is_zero() {
                    continue;
                }
                any = true;
                let b = a.with_incremented(i);
                out = &out + &dp_mul(&DPPoly::term(b.clone(), field.one()), &g)?;
                next.insert(b, (i, db));
            }
        }
        if !any {
            break;
        }
        level = next;
    }
    Ok(out)
}

/// `D∨(f) = Σ_i x_i · (D_i ⌟ f)`.
pub fn apply_derivation_dual(d: &Derivation, f: &DPPoly) -> Result<DPPoly> {
    if d.images.len() != f.arity() {
        return Err(Error::ArityMismatch);
    }
    let mut out = DPPoly::zero(f.arity(), f.field());
    for (i, di) in d.images.iter().enumerate() {
        out = out.checked_add(&contract(di, f)?.x_mul(i))?;
    }
    Ok(out)
}

/// `u ⌟ f` for a unit `u`.
pub fn apply_unit(u: &Operator, f: &DPPoly) -> Result<DPPoly> {
    if u.constant_term().is_zero() {
        return Err(Error::NotAUnit);
    }
    check_trunc(u.trunc(), f)?;
    contract(u, f)
}

/// An element `(φ, u)` of `G`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupElement {
    aut: Automorphism,
    unit: Operator,
}

impl GroupElement {
    pub fn new(aut: Automorphism, unit: Operator) -> Result<GroupElement> {
        if unit.constant_term().is_zero() {
            return Err(Error::NotAUnit);
        }
        if unit.arity() != aut.arity() {
            return Err(Error::ArityMismatch);
        }
        let t = aut.trunc().min(unit.trunc());
        Ok(GroupElement { aut: aut.with_trunc(t), unit: unit.with_trunc(t) })
    }

    pub fn identity(n: usize, field: Field, trunc: u32) -> GroupElement {
        GroupElement { aut: Automorphism::identity(n, field, trunc), unit: Operator::one(n, field, trunc) }
    }

    pub fn from_aut(aut: Automorphism) -> GroupElement {
        let unit = Operator::one(aut.arity(), aut.field(), aut.trunc());
        GroupElement { aut, unit }
    }

    pub fn from_unit(unit: Operator) -> Result<GroupElement> {
        let aut = Automorphism::identity(unit.arity(), unit.field(), unit.trunc());
        GroupElement::new(aut, unit)
    }

    pub fn aut(&self) -> &Automorphism {
        &self.aut
    }

    pub fn unit(&self) -> &Operator {
        &self.unit
    }

    pub fn trunc(&self) -> u32 {
        self.aut.trunc()
    }

    /// Member of `G⁺ = Aut⁺ ⋉ (1 + m)`.
    pub fn is_unipotent(&self) -> bool {
        self.aut.is_unipotent() && self.unit.constant_term().is_one()
    }

    /// The action on `S`: `σ ↦ φ(σ)·φ(u)`.
    pub fn act_on_operator(&self, sigma: &Operator) -> Result<Operator> {
        self.aut.apply(sigma)?.checked_mul(&self.aut.apply(&self.unit)?)
    }

    pub fn apply(&self, f: &DPPoly) -> Result<DPPoly> {
        apply_group_element(self, f)
    }

    pub fn inverse(&self) -> Result<GroupElement> {
        let inv = self.aut.inverse()?;
        let unit = self.aut.apply(&self.unit)?.unit_inverse()?;
        GroupElement::new(inv, unit)
    }
}

/// `u ⌟ φ∨(f)`.
pub fn apply_group_element(g: &GroupElement, f: &DPPoly) -> Result<DPPoly> {
    apply_unit(&g.unit, &apply_automorphism_dual(&g.aut, f)?)
}

/// The product with `apply(compose(g, h), f) = apply(h, apply(g, f))`:
/// `(φ_g ∘ φ_h, u_h · φ_h⁻¹(u_g))`.
pub fn compose(g: &GroupElement, h: &GroupElement) -> Result<GroupElement> {
    if g.aut.arity() != h.aut.arity() {
        return Err(Error::ArityMismatch);
    }
    let t = g.trunc().min(h.trunc());
    let (g, h) = (g.with_trunc(t), h.with_trunc(t));
    let aut = g.aut.compose(&h.aut)?;
    let unit = h.unit.checked_mul(&h.aut.inverse()?.apply(&g.unit)?)?;
    GroupElement::new(aut, unit)
}

impl GroupElement {
    pub fn with_trunc(&self, t: u32) -> GroupElement {
        GroupElement { aut: self.aut.with_trunc(t), unit: self.unit.with_trunc(t) }
    }
}

/// Dual action of the linear map with `φ∨(x_i) = Σ_k M[i][k] x_k`.
pub fn apply_linear_map(m: &[Vec<Scalar>], f: &DPPoly) -> Result<DPPoly> {
    if m.len() != f.arity() {
        return Err(Error::ArityMismatch);
    }
    let phi = Automorphism::linear(m, f.degree().unwrap_or(0).max(1))?;
    apply_automorphism_dual(&phi, f)
}

/// The group element whose dual action is `exp(D∨ + τ⌟)`, for `D_i ∈ m^2`
/// and `τ ∈ m`. On `S` it acts by `exp(L)` with `L(σ) = D(σ) + τσ`, which
/// factors as `σ ↦ φ(σ)·w` with `φ = exp(D)` and `w = exp(L)(1)`.
pub fn exp_lie(d: &Derivation, tau: &Operator, trunc: u32) -> Result<GroupElement> {
    if !tau.constant_term().is_zero() {
        return Err(Error::InvalidAutomorphism("τ must lie in m".into()));
    }
    let field = tau.field();
    field.char_guard(trunc)?;
    let n = tau.arity();
    let phi = d.exp(trunc)?;
    let dt = Derivation { images: d.images.iter().map(|s| s.with_trunc(trunc)).collect() };
    let tau = tau.with_trunc(trunc);
    let w = exp_series(&Operator::one(n, field, trunc), trunc, |s| dt.apply(s)?.checked_add(&s.checked_mul(&tau)?))?;
    let unit = phi.inverse()?.apply(&w)?;
    GroupElement::new(phi, unit)
}
