//! Fixed reproductions of three worked classifications: Hilbert function
//! (1,3,3,3,1), Hilbert function (1,2,2,2,1,1,1), and cubics in characteristic two.

use crate::apolarity::hilbert_function;
use crate::classification::{improved_normal_form, leading_form_space, lower_degree_step, orbit_membership_heuristic, Membership};
use crate::divided_powers::{monomials_of_degree, DPPoly, Monomial, Operator};
use crate::dual_actions::{apply_linear_map, compose, Automorphism, GroupElement};
use crate::error::{Error, Result};
use crate::linalg;
use crate::scalars::{Field, Scalar};
use crate::subspaces::{Ambient, Basis};
use crate::tangent_orbits::{orbit_dimension, perp_tangent, tangent_space, unip_tangent_space};
use crate::text::{parse_operator, parse_poly, Mode};

const Q: Field = Field::Rationals;

fn dp(s: &str, n: usize, field: Field) -> Result<DPPoly> {
    parse_poly(s, n, field, Mode::DividedPower)
}

fn mismatch(what: &str, got: impl std::fmt::Debug, want: impl std::fmt::Debug) -> Error {
    Error::GoldenMismatch(format!("{what}: got {got:?}, expected {want:?}"))
}

/// A leading form, its unipotent tangent perp in degrees at most 3 and the expected span.
#[derive(Clone, Debug)]
pub struct LeadingFormCase {
    pub name: &'static str,
    pub form: DPPoly,
    pub perp: Vec<Operator>,
    pub expected: Vec<Operator>,
}

#[derive(Clone, Debug)]
pub struct NormalFormCase {
    pub name: &'static str,
    pub poly: DPPoly,
    pub tangent_dim: usize,
    pub expected_dim: usize,
}

#[derive(Clone, Debug)]
pub struct Golden13331 {
    pub leading_forms: Vec<LeadingFormCase>,
    pub normal_forms: Vec<NormalFormCase>,
    /// `t_{1,2}` on `P_3/(𝔤⁺F₃)_3` in the basis `(y·y·y, y·y·z, y·z·z)`.
    pub tab_matrix: Vec<Vec<Scalar>>,
    pub tab_expected: Vec<Vec<Scalar>>,
    /// The same for the form `x·x·x·y + x·x·z·z`, which `t_{a,b}` actually rescales.
    pub tab_matrix_stabilised: Vec<Vec<Scalar>>,
    pub warnings: Vec<String>,
}

/// The closed form of the `t_{a,b}` action matrix.
pub fn tab_expected(a: &Scalar, b: &Scalar) -> Result<Vec<Vec<Scalar>>> {
    let f = a.field();
    let c = |num: i64, den: i64| f.from_ratio(num, den);
    let (a2, b4) = (a.pow(2), b.pow(4));
    let z = f.zero();
    Ok(vec![
        vec![b.pow(6), z.clone(), z.clone()],
        vec![&(&c(-6, 1)? * a) * &b.pow(5), b.pow(5), z],
        vec![&(&c(27, 2)? * &a2) * &b4, &(&c(-9, 2)? * a) * &b4, b4],
    ])
}

/// The linear map `t_{a,b}`: `x ↦ x`, `y ↦ -a²x + b²y - 2ab z`, `z ↦ ax + bz`.
pub fn tab_map(a: &Scalar, b: &Scalar) -> Vec<Vec<Scalar>> {
    let f = a.field();
    let two = f.from_i64(2);
    vec![
        vec![f.one(), f.zero(), f.zero()],
        vec![-&a.pow(2), b.pow(2), -&(&(&two * a) * b)],
        vec![a.clone(), f.zero(), b.clone()],
    ]
}

/// Matrix of a linear map on `P_3/(𝔤⁺F)_3` in the basis `y·y·y, y·y·z, y·z·z`;
/// entry `(i, j)` is the coefficient of the `i`-th basis vector in the image of the `j`-th.
pub fn quotient_action(form: &DPPoly, map: &[Vec<Scalar>]) -> Result<Vec<Vec<Scalar>>> {
    let field = form.field();
    let tan = unip_tangent_space(form)?.project(3, 3);
    let basis = [dp("6*y^[3]", 3, field)?, dp("2*y^[2]*z", 3, field)?, dp("2*y*z^[2]", 3, field)?];
    let cols = monomials_of_degree(3, 3);
    let reps: Vec<Vec<Scalar>> =
        basis.iter().map(|v| Ok(tan.remainder_poly(v)?.coords(&cols))).collect::<Result<_>>()?;
    let eqs: Vec<Vec<Scalar>> = (0..cols.len()).map(|r| reps.iter().map(|v| v[r].clone()).collect()).collect();
    let mut out = vec![vec![field.zero(); 3]; 3];
    for (j, v) in basis.iter().enumerate() {
        let img = tan.remainder_poly(&apply_linear_map(map, v)?)?;
        let c = linalg::solve(field, 3, &eqs, &img.coords(&cols))
            .ok_or_else(|| Error::GoldenMismatch("image leaves the span of the quotient basis".into()))?;
        for i in 0..3 {
            out[i][j] = c[i].clone();
        }
    }
    Ok(out)
}

fn span_s(ops: &[&str], hi: u32) -> Result<(Vec<Operator>, Basis)> {
    let v: Vec<Operator> = ops.iter().map(|s| parse_operator(s, 3, Q, hi)).collect::<Result<_>>()?;
    let b = Basis::span_operators(Ambient::s(3, Q, 0, hi), &v)?;
    Ok((v, b))
}

pub const TABLE_13331: [(&str, &str, usize); 11] = [
    ("f1_1", "x^[4] + y^[4] + z^[4] + x*y*z", 29),
    ("f1_0", "x^[4] + y^[4] + z^[4]", 28),
    ("f2_11", "x^[3]*y + z^[4] + y^[3] + y^[2]*z", 28),
    ("f2_10", "x^[3]*y + z^[4] + y^[3]", 27),
    ("f2_01", "x^[3]*y + z^[4] + y^[2]*z", 27),
    ("f2_00", "x^[3]*y + z^[4]", 26),
    ("f3_101", "x^[3]*y + x^[2]*z^[2] + y^[3] + y*z^[2]", 27),
    ("f3_100", "x^[3]*y + x^[2]*z^[2] + y^[3]", 26),
    ("f3_010", "x^[3]*y + x^[2]*z^[2] + y^[2]*z", 26),
    ("f3_001", "x^[3]*y + x^[2]*z^[2] + y*z^[2]", 25),
    ("f3_000", "x^[3]*y + x^[2]*z^[2]", 24),
];

/// Leading forms with their perps, the eleven normal forms with tangent
/// dimensions, and the `t_{a,b}` action on the quotient for the third form.
pub fn golden_13331() -> Result<Golden13331> {
    let cases: [(&str, &str, &[&str]); 3] = [
        ("F1", "x^[4] + y^[4] + z^[4]", &["a*b*c"]),
        ("F2", "x^[3]*y + z^[4]", &["b^3", "b^2*c"]),
        ("F3", "x^[3]*y + x^[2]*z^[2]", &["b^2*c", "b^3", "a*b^2 - 2*b*c^2"]),
    ];
    let mut leading_forms = Vec::new();
    for (name, src, ops) in cases {
        let form = dp(src, 3, Q)?;
        let perp = perp_tangent(&form, true, 3)?;
        let (expected, want) = span_s(ops, 3)?;
        if perp != want {
            return Err(mismatch(name, perp.operators(), expected));
        }
        leading_forms.push(LeadingFormCase { name, form, perp: perp.operators(), expected });
    }
    let mut normal_forms = Vec::new();
    for (name, src, want) in TABLE_13331 {
        let poly = dp(src, 3, Q)?;
        let h = hilbert_function(&poly)?;
        if h.values() != [1, 3, 3, 3, 1] {
            return Err(mismatch(name, h.values(), [1, 3, 3, 3, 1]));
        }
        let got = orbit_dimension(&poly)?;
        if got != want {
            return Err(mismatch(name, got, want));
        }
        normal_forms.push(NormalFormCase { name, poly, tangent_dim: got, expected_dim: want });
    }
    let f3 = &leading_forms[2].form;
    let (a, b) = (Q.from_i64(1), Q.from_i64(2));
    let tab_matrix = quotient_action(f3, &tab_map(&a, &b))?;
    let tab_exp = tab_expected(&a, &b)?;
    if tab_matrix != tab_exp {
        return Err(mismatch("t_{1,2} matrix", &tab_matrix, &tab_exp));
    }
    let stab = dp("6*x^[3]*y + 4*x^[2]*z^[2]", 3, Q)?;
    if apply_linear_map(&tab_map(&a, &b), &stab)? != stab.scale(&b.pow(2)) {
        return Err(Error::GoldenMismatch("t_{1,2} does not rescale x·x·x·y + x·x·z·z".into()));
    }
    let tab_matrix_stabilised = quotient_action(&stab, &tab_map(&a, &b))?;
    let warnings = vec![
        "t_{a,b} rescales x*x*x*y + x*x*z*z = 6x^[3]y + 4x^[2]z^[2], not x^[3]y + x^[2]z^[2]; \
         tab_matrix_at_1_2 reduces images modulo the unipotent tangent of x^[3]y + x^[2]z^[2] and \
         tab_matrix_stabilised_form modulo that of the rescaled form, both in the basis y*y*y, y*y*z, y*z*z"
            .to_string(),
    ];
    Ok(Golden13331 {
        leading_forms,
        normal_forms,
        tab_matrix,
        tab_expected: tab_exp,
        tab_matrix_stabilised,
        warnings,
    })
}

/// Named intermediate polynomials of the (1,2,2,2,1,1,1) reduction.
#[derive(Clone, Debug)]
pub struct Golden1222111 {
    pub input: DPPoly,
    /// `None` in the branch where the quartic part contains `y^[4]`.
    pub lambda: Option<Scalar>,
    pub lambda_squared: Option<Scalar>,
    pub normal_form: DPPoly,
    pub stages: Vec<(&'static str, DPPoly)>,
    pub accumulated: GroupElement,
    /// Result of the membership test in the `y^[4]` branch.
    pub y4_member: Option<bool>,
    pub warnings: Vec<String>,
}

fn wrong_h(msg: impl Into<String>) -> Error {
    Error::WrongHilbertFunction(msg.into())
}

struct Chain {
    cur: DPPoly,
    acc: GroupElement,
    stages: Vec<(&'static str, DPPoly)>,
}

impl Chain {
    fn apply(&mut self, name: &'static str, g: &GroupElement) -> Result<()> {
        self.cur = g.apply(&self.cur)?;
        self.acc = compose(&self.acc, g)?;
        self.stages.push((name, self.cur.clone()));
        Ok(())
    }
}

// The element of one lower_degree_step moving F + G towards F, for G in the
// reachable part of degree e.
fn step_element(form: &DPPoly, g: &DPPoly) -> Result<GroupElement> {
    if g.is_zero() {
        let d = form.degree().unwrap_or(1);
        return Ok(GroupElement::identity(form.arity(), form.field(), d));
    }
    Ok(lower_degree_step(&(form + g), form)?.0)
}

/// Reduces `f = x^[6] + f_{<=4}` with Hilbert function (1,2,2,2,1,1,1) to
/// `x^[6] + x^[2]y^[2] + λ y^[3]` and reports `λ`.
pub fn golden_1222111(f: &DPPoly) -> Result<Golden1222111> {
    if f.arity() != 2 {
        return Err(Error::ArityMismatch);
    }
    let field = f.field();
    field.char_guard(6)?;
    let x6 = DPPoly::term(Monomial::new(vec![6, 0]), field.one());
    if f.part(5, 6) != x6 {
        return Err(Error::HypothesisFailed("input is not of the form x^[6] + f_{<=4}".into()));
    }
    let h = hilbert_function(f)?;
    if h.values() != [1, 2, 2, 2, 1, 1, 1] {
        return Err(wrong_h(format!("H = {h}")));
    }
    let mono = |a: u32, b: u32| Monomial::new(vec![a, b]);
    let mut warnings = Vec::new();
    let mut chain = Chain { cur: f.clone(), acc: GroupElement::identity(2, field, 6), stages: vec![("input", f.clone())] };

    let c4 = f.coeff(&mono(0, 4));
    if !c4.is_zero() {
        let target = &x6 + &DPPoly::term(mono(0, 4), c4.clone());
        warnings.push(format!(
            "quartic part contains y^[4]; compared against x^[6] + ({c4})*y^[4] without rescaling y, \
             and a negative answer only means the greedy reduction got stuck"
        ));
        let m = orbit_membership_heuristic(&target, f)?;
        let member = m.is_yes();
        if let Membership::Yes(t) = m {
            t.validate()?;
            chain.cur = t.result.clone();
            chain.acc = t.accumulated.clone();
            chain.stages.push(("membership", t.result));
        }
        return Ok(Golden1222111 {
            input: f.clone(),
            lambda: None,
            lambda_squared: None,
            normal_form: chain.cur,
            stages: chain.stages,
            accumulated: chain.acc,
            y4_member: Some(member),
            warnings,
        });
    }
    if !f.coeff(&mono(1, 3)).is_zero() {
        return Err(Error::HypothesisFailed("coefficient of x*y^[3] is nonzero; standard form is assumed".into()));
    }

    // Quartic part lying in the unipotent tangent of x^[6].
    let tan4 = unip_tangent_space(&x6)?.project(4, 4);
    let f4 = chain.cur.homogeneous_part(4);
    let g4 = &f4 - &tan4.remainder_poly(&f4)?;
    chain.apply("quartic tangent part removed", &step_element(&x6, &g4)?)?;

    let c = chain.cur.coeff(&mono(2, 2));
    if c.is_zero() {
        return Err(wrong_h("x^[2]y^[2] coefficient vanishes"));
    }
    let s = field
        .sqrt(&c.inverse()?)
        .ok_or_else(|| Error::HypothesisFailed(format!("1/{c} has no square root in the field")))?;
    let scale = vec![vec![field.one(), field.zero()], vec![field.zero(), s]];
    let aut = Automorphism::linear(&scale, 6)?;
    chain.apply("x^[2]y^[2] coefficient normalised", &GroupElement::from_aut(aut))?;
    let base = &x6 + &DPPoly::term(mono(2, 2), field.one());
    if chain.cur.part(4, 6) != base {
        return Err(Error::ReductionFailed("quartic part is not x^[2]y^[2] after normalisation".into()));
    }

    let l3 = leading_form_space(&base, 3)?;
    let f3 = chain.cur.homogeneous_part(3);
    let rem = l3.remainder_poly(&f3)?;
    chain.apply("cubic part reduced", &step_element(&base, &(&f3 - &rem))?)?;
    let lambda = rem.coeff(&mono(0, 3));
    if rem != DPPoly::term(mono(0, 3), lambda.clone()) && !rem.is_zero() {
        return Err(Error::HypothesisFailed(format!("cubic remainder {rem} is not a multiple of y^[3]")));
    }
    if chain.cur.part(3, 6) != &base + &rem {
        return Err(Error::ReductionFailed("cubic reduction changed higher degrees".into()));
    }

    let clean = improved_normal_form(&chain.cur, 1)?;
    clean.validate()?;
    chain.apply("terms of degree <= 2 removed", &clean.accumulated)?;
    let normal_form = &base + &rem;
    if chain.cur != normal_form {
        return Err(Error::ReductionFailed(format!("ended at {} instead of {normal_form}", chain.cur)));
    }
    if chain.acc.apply(f)? != normal_form {
        return Err(Error::ReductionFailed("accumulated element does not replay".into()));
    }
    warnings.push("y -> -y sends λ to -λ; λ² is the invariant when signs of y are not fixed".into());
    Ok(Golden1222111 {
        input: f.clone(),
        lambda_squared: Some(lambda.pow(2)),
        lambda: Some(lambda),
        normal_form,
        stages: chain.stages,
        accumulated: chain.acc,
        y4_member: None,
        warnings,
    })
}

#[derive(Clone, Debug)]
pub struct GoldenChar2 {
    pub poly: DPPoly,
    pub hilbert: Vec<usize>,
    pub square_in_perp: bool,
    pub tangent_dim: usize,
    pub ambient_dim: usize,
    pub orbit_dimension_refused: bool,
    pub x2_in_tangent: bool,
}

/// Over `𝔽_2`, `f = x y^[2]` has `a²⌟f = 0`, `a²` orthogonal to the tangent space
/// and a tangent space smaller than `P_{<=3}`.
pub fn golden_char2() -> Result<GoldenChar2> {
    let f2 = Field::prime(2)?;
    let poly = dp("x*y^[2]", 2, f2)?;
    let hilbert = hilbert_function(&poly)?.values().to_vec();
    let sq = parse_operator("a^2", 2, f2, 3)?;
    if !sq.contract(&poly).is_zero() {
        return Err(Error::GoldenMismatch("a^2 does not annihilate x*y^[2]".into()));
    }
    let square_in_perp = perp_tangent(&poly, false, 3)?.contains_operator(&sq)?;
    let tan = tangent_space(&poly)?;
    let refused = matches!(orbit_dimension(&poly), Err(Error::CharacteristicTooSmall { .. }));
    let x2_in_tangent = tan.contains_poly(&dp("x^[2]", 2, f2)?)?;
    let r = GoldenChar2 {
        poly,
        hilbert,
        square_in_perp,
        tangent_dim: tan.dim(),
        ambient_dim: tan.ambient().dim(),
        orbit_dimension_refused: refused,
        x2_in_tangent,
    };
    if r.hilbert != [1, 2, 2, 1] {
        return Err(mismatch("char 2 Hilbert function", &r.hilbert, [1, 2, 2, 1]));
    }
    if !r.square_in_perp || r.tangent_dim >= r.ambient_dim || !r.orbit_dimension_refused || r.x2_in_tangent {
        return Err(Error::GoldenMismatch(format!("char 2 example: {r:?}")));
    }
    Ok(r)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn table_13331() {
        let r = golden_13331().unwrap();
        let dims: Vec<usize> = r.normal_forms.iter().map(|c| c.tangent_dim).collect();
        assert_eq!(dims, [29, 28, 28, 27, 27, 26, 27, 26, 26, 25, 24]);
    }

    #[test]
    fn tab_matrix_other_parameters() {
        let f3 = dp("x^[3]*y + x^[2]*z^[2]", 3, Q).unwrap();
        let (a, b) = (Q.from_i64(-3), Q.from_ratio(5, 2).unwrap());
        assert_eq!(quotient_action(&f3, &tab_map(&a, &b)).unwrap(), tab_expected(&a, &b).unwrap());
    }

    #[test]
    fn lambda_survives_lower_terms() {
        let f = dp("x^[6] + x^[2]*y^[2] + 5*y^[3] - 2*x^[2] + x*y + 3*y^[2] - x + 4", 2, Q).unwrap();
        let r = golden_1222111(&f).unwrap();
        assert_eq!(r.lambda, Some(Q.from_i64(5)));
        assert_eq!(r.normal_form, dp("x^[6] + x^[2]*y^[2] + 5*y^[3]", 2, Q).unwrap());
    }

    #[test]
    fn lambda_after_full_chain() {
        // quartic tangent part, c = 4 and a reachable cubic part
        let f = dp("x^[6] + 3*x^[4] - x^[3]*y + 4*x^[2]*y^[2] + 2*x^[3] + x^[2]*y - 8*y^[3] + x*y + y", 2, Q).unwrap();
        let r = golden_1222111(&f).unwrap();
        assert_eq!(r.accumulated.apply(&f).unwrap(), r.normal_form);
        assert!(r.lambda.is_some());
    }

    #[test]
    fn char2_example() {
        golden_char2().unwrap();
    }
}
