//! Tangent spaces to `G`- and `G⁺`-orbits, their orthogonal spaces and orbit dimensions.

use num_bigint::BigUint;

use crate::divided_powers::{monomials_in_window, DPPoly, Monomial, Operator};
use crate::error::{Error, Result};
use crate::linalg;
use crate::scalars::Scalar;
use crate::subspaces::{perp, Ambient, Basis};

fn require_nonzero(f: &DPPoly) -> Result<u32> {
    f.degree().ok_or(Error::ZeroPolynomial)
}

fn mono_contract(m: &Monomial, f: &DPPoly, trunc: u32) -> DPPoly {
    Operator::term(m.clone(), f.field().one(), trunc).contract(f)
}

// Generators σ⌟f for |σ| >= lo_f and σ⌟(x_i f) for |σ| >= lo_x.
fn tangent_generators(f: &DPPoly, d: u32, lo_f: u32, lo_x: u32) -> Vec<DPPoly> {
    let n = f.arity();
    let mut gens: Vec<DPPoly> = monomials_in_window(n, lo_f, d).iter().map(|m| mono_contract(m, f, d + 1)).collect();
    let xs: Vec<DPPoly> = (0..n).map(|i| f.x_mul(i)).collect();
    for m in monomials_in_window(n, lo_x.max(1), d + 1) {
        for xf in &xs {
            gens.push(mono_contract(&m, xf, d + 1));
        }
    }
    gens.retain(|g| !g.is_zero());
    gens
}

/// `𝔤f = S f + Σ_i m (x_i f)` inside `P_{<=deg f}`.
pub fn tangent_space(f: &DPPoly) -> Result<Basis> {
    let d = require_nonzero(f)?;
    let amb = Ambient::p(f.arity(), f.field(), 0, d);
    Basis::span_polys(amb, &tangent_generators(f, d, 0, 1))
}

/// `𝔤⁺f = m f + Σ_i m² (x_i f)` inside `P_{<=deg f}`.
pub fn unip_tangent_space(f: &DPPoly) -> Result<Basis> {
    let amb_d = f.degree().unwrap_or(0);
    let amb = Ambient::p(f.arity(), f.field(), 0, amb_d);
    if f.is_zero() {
        return Ok(Basis::zero(amb));
    }
    Basis::span_polys(amb, &tangent_generators(f, amb_d, 1, 2))
}

fn tangent_for(f: &DPPoly, unipotent: bool) -> Result<Basis> {
    if unipotent {
        unip_tangent_space(f)
    } else {
        tangent_space(f)
    }
}

// Coordinates of `g` in the degrees `lo..=d`, appended to `out`.
fn push_coords(out: &mut Vec<Scalar>, g: &DPPoly, cols: &[Monomial]) {
    out.extend(g.coords(cols));
}

/// The orthogonal space of the tangent space inside `S_{<=max_degree}`,
/// computed both as a perp and from the degree conditions on `σ⌟f` and
/// `∂_i σ ⌟ f`. Disagreement is reported as `CrossCheckFailed`.
pub fn perp_tangent(f: &DPPoly, unipotent: bool, max_degree: u32) -> Result<Basis> {
    let d = require_nonzero(f)?;
    let via_perp = perp(&tangent_for(f, unipotent)?, 0, max_degree)?;
    let direct = perp_tangent_direct(f, unipotent, max_degree, d)?;
    if via_perp != direct {
        return Err(Error::CrossCheckFailed(format!(
            "tangent perp: dimension {} from the tangent space, {} from the degree conditions",
            via_perp.dim(),
            direct.dim()
        )));
    }
    Ok(direct)
}

// Full: σ⌟f = 0 and ∂_iσ⌟f constant. Unipotent: σ⌟f constant and ∂_iσ⌟f of degree <= 1.
fn perp_tangent_direct(f: &DPPoly, unipotent: bool, max_degree: u32, d: u32) -> Result<Basis> {
    let n = f.arity();
    let field = f.field();
    let amb = Ambient::s(n, field, 0, max_degree);
    let smons = amb.columns();
    let (lo_f, lo_d) = if unipotent { (1, 2) } else { (0, 1) };
    let cols_f = monomials_in_window(n, lo_f, d);
    let cols_d = monomials_in_window(n, lo_d, d);
    let trunc = max_degree.max(d);
    let images: Vec<Vec<Scalar>> = smons
        .iter()
        .map(|m| -> Result<Vec<Scalar>> {
            let s = Operator::term(m.clone(), field.one(), trunc);
            let mut v = Vec::new();
            push_coords(&mut v, &s.contract(f), &cols_f);
            for i in 0..n {
                push_coords(&mut v, &s.partial_derivative(i)?.contract(f), &cols_d);
            }
            Ok(v)
        })
        .collect::<Result<_>>()?;
    let rows = images.first().map_or(0, Vec::len);
    let eqs: Vec<Vec<Scalar>> = (0..rows).map(|r| images.iter().map(|v| v[r].clone()).collect()).collect();
    let ker = linalg::kernel(field, smons.len(), &eqs);
    Ok(Basis::from_rows(amb, &ker))
}

/// `dim G·f = dim 𝔤f`; refused when `char <= deg f`.
pub fn orbit_dimension(f: &DPPoly) -> Result<usize> {
    let d = require_nonzero(f)?;
    f.field().char_guard(d)?;
    Ok(tangent_space(f)?.dim())
}

/// Whether `P_{<=d-1} ⊆ 𝔤F` for a homogeneous form `F` of degree `d`.
pub fn dense_orbit_test(form: &DPPoly) -> Result<bool> {
    let d = require_nonzero(form)?;
    if !form.is_homogeneous() {
        return Err(Error::HypothesisFailed("dense orbit test needs a homogeneous form".into()));
    }
    if d == 0 {
        return Ok(true);
    }
    Ok(perp_tangent(form, false, d - 1)?.is_zero())
}

/// False exactly when `n·binom(n+1, 2) < binom(n+d-2, d-1)`.
pub fn cangrad_pair_filter(n: u64, d: u64) -> bool {
    let lhs = BigUint::from(n) * binom(n + 1, 2);
    let rhs = binom(n + d - 2, d - 1);
    lhs >= rhs
}

fn binom(n: u64, k: u64) -> BigUint {
    num_integer::binomial(BigUint::from(n), BigUint::from(k))
}

/// Tangent space, its full orthogonal space in `S_{<=deg f}` and the tangent dimension.
#[derive(Clone, Debug)]
pub struct TangentReport {
    pub tangent: Basis,
    pub perp: Basis,
    pub orbit_dim: usize,
    /// Set when the characteristic is too small for the orbit interpretation.
    pub tangent_only: bool,
}

pub fn tangent_report(f: &DPPoly, unipotent: bool) -> Result<TangentReport> {
    let d = require_nonzero(f)?;
    let tangent = tangent_for(f, unipotent)?;
    let perp = perp_tangent(f, unipotent, d)?;
    debug_assert_eq!(tangent.dim() + perp.dim(), tangent.ambient().dim());
    Ok(TangentReport {
        orbit_dim: tangent.dim(),
        tangent,
        perp,
        tangent_only: f.field().char_guard(d).is_err(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::Field;
    use crate::text::{parse_operator, parse_poly, Mode};

    const Q: Field = Field::Rationals;

    fn p(s: &str, n: usize) -> DPPoly {
        parse_poly(s, n, Q, Mode::DividedPower).unwrap()
    }

    fn span(n: usize, hi: u32, ops: &[&str]) -> Basis {
        let v: Vec<Operator> = ops.iter().map(|s| parse_operator(s, n, Q, hi).unwrap()).collect();
        Basis::span_operators(Ambient::s(n, Q, 0, hi), &v).unwrap()
    }

    #[test]
    fn full_tangent_examples() {
        assert_eq!(tangent_space(&p("x^[5]", 1)).unwrap().dim(), 6);
        assert_eq!(tangent_space(&p("x*y", 2)).unwrap().dim(), 6);
        assert_eq!(orbit_dimension(&p("x^[2] + y^[2]", 2)).unwrap(), 6);
    }

    #[test]
    fn unipotent_tangent_of_power() {
        // span{x^[r] m : m ∈ P_{<=1}, r + 1 < d}
        let d = 5;
        let t = unip_tangent_space(&p("x^[5]", 2)).unwrap();
        let mut gens = Vec::new();
        for r in 0..d - 1 {
            for m in ["1", "x", "y"] {
                gens.push(p(&format!("x^[{r}]*{m}"), 2));
            }
        }
        assert_eq!(t, Basis::span_polys(Ambient::p(2, Q, 0, 5), &gens).unwrap());
        assert!(unip_tangent_space(&p("7", 2)).unwrap().is_zero());
    }

    #[test]
    fn perp_examples() {
        let d = 6;
        let mons = |lo: [u32; 2]| -> Basis {
            let ops: Vec<Operator> = monomials_in_window(2, 0, d - 1)
                .into_iter()
                .filter(|m| m.exps()[0] >= lo[0] && m.exps()[1] >= lo[1])
                .map(|m| Operator::term(m, Q.one(), d - 1))
                .collect();
            Basis::span_operators(Ambient::s(2, Q, 0, d - 1), &ops).unwrap()
        };
        let up = perp_tangent(&p("x^[5]*y", 2), true, d - 1).unwrap();
        assert_eq!(up, mons([0, 3]));
        let up = perp_tangent(&p("x^[6] + y^[6]", 2), true, d - 1).unwrap();
        assert_eq!(up, mons([2, 2]));
    }

    #[test]
    fn perp_13331_forms() {
        let f1 = p("x^[4] + y^[4] + z^[4]", 3);
        assert_eq!(perp_tangent(&f1, true, 3).unwrap(), span(3, 3, &["a*b*c"]));
        let f2 = p("x^[3]*y + z^[4]", 3);
        assert_eq!(perp_tangent(&f2, true, 3).unwrap(), span(3, 3, &["b^3", "b^2*c"]));
        let f3 = p("x^[3]*y + x^[2]*z^[2]", 3);
        assert_eq!(perp_tangent(&f3, true, 3).unwrap(), span(3, 3, &["b^2*c", "b^3", "a*b^2 - 2*b*c^2"]));
    }

    #[test]
    fn unipotent_and_full_perps_agree_below_degree() {
        let f = p("x^[3]*y + x^[2]*z^[2]", 3);
        assert_eq!(perp_tangent(&f, true, 3).unwrap(), perp_tangent(&f, false, 3).unwrap());
    }

    #[test]
    fn report_dimensions_add_up() {
        let f = p("x^[4] + x^[2]*y + y^[3] - x", 2);
        let r = tangent_report(&f, false).unwrap();
        assert_eq!(r.tangent.dim() + r.perp.dim(), 15);
        assert!(unip_tangent_space(&f).unwrap().dim() <= r.orbit_dim);
    }

    #[test]
    fn dense_orbit_examples() {
        assert!(!dense_orbit_test(&p("x^[3]*y^[2]", 2)).unwrap());
        assert!(dense_orbit_test(&p("x^[5] + y^[5] + 3*x^[4]*y - x^[3]*y^[2] + 2*x^[2]*y^[3] + x*y^[4]", 2)).unwrap());
    }

    #[test]
    fn cangrad_examples() {
        assert!(cangrad_pair_filter(6, 5));
        assert!(!cangrad_pair_filter(7, 5));
        assert!(cangrad_pair_filter(2, 6));
        for n in 1..=10 {
            for d in 2..=12 {
                let listed = d <= 4 || (d == 5 && n <= 6) || (d == 6 && n == 2) || n == 1;
                assert_eq!(cangrad_pair_filter(n, d), listed, "n={n} d={d}");
            }
        }
    }

    #[test]
    fn char_two_refuses_orbit_dimension() {
        let f2 = Field::prime(2).unwrap();
        let f = parse_poly("x*y^[2]", 2, f2, Mode::DividedPower).unwrap();
        assert!(matches!(orbit_dimension(&f), Err(Error::CharacteristicTooSmall { .. })));
        let t = tangent_space(&f).unwrap();
        assert!(t.dim() < 10);
        let perp_full = perp_tangent(&f, false, 3).unwrap();
        assert!(perp_full.contains_operator(&parse_operator("a^2", 2, f2, 3).unwrap()).unwrap());
    }
}
