//! Reduction of dual generators: removal of lower-order terms against a
//! leading form, unipotent orbit membership and normal forms.

use crate::apolarity::{apolar_dim, dim_s, hilbert_function, ideal_square_graded, module_sf, symmetric_decomposition};
use crate::divided_powers::{monomials_in_window, DPPoly, Monomial, Operator};
use crate::dual_actions::{compose, exp_lie, Automorphism, Derivation, GroupElement};
use crate::error::{Error, Result};
use crate::linalg;
use crate::scalars::Scalar;
use crate::subspaces::{Ambient, Basis};
use crate::tangent_orbits::perp_tangent;

/// One reduction step: the group element applied and the polynomial it produced.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReductionStep {
    pub element: GroupElement,
    pub result: DPPoly,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReductionTrace {
    pub input: DPPoly,
    pub target: DPPoly,
    pub steps: Vec<ReductionStep>,
    pub result: DPPoly,
    pub accumulated: GroupElement,
}

impl ReductionTrace {
    fn start(f: &DPPoly, target: &DPPoly, trunc: u32) -> ReductionTrace {
        ReductionTrace {
            input: f.clone(),
            target: target.clone(),
            steps: Vec::new(),
            result: f.clone(),
            accumulated: GroupElement::identity(f.arity(), f.field(), trunc),
        }
    }

    fn push(&mut self, element: GroupElement, result: DPPoly) -> Result<()> {
        self.accumulated = compose(&self.accumulated, &element)?;
        self.result = result.clone();
        self.steps.push(ReductionStep { element, result });
        Ok(())
    }

    /// Replays every step and the accumulated element, and checks that the
    /// apolar dimension is constant and `deg(result - target)` strictly drops.
    pub fn validate(&self) -> Result<()> {
        let fail = |m: String| Err(Error::ReductionFailed(m));
        let dim = apolar_dim(&self.input)?;
        let mut cur = self.input.clone();
        let mut last = (&self.input - &self.target).degree();
        for (k, s) in self.steps.iter().enumerate() {
            let next = s.element.apply(&cur)?;
            if next != s.result {
                return fail(format!("step {k} does not replay"));
            }
            let e = (&next - &self.target).degree();
            if last.is_none() || e.is_some_and(|e| Some(e) >= last) {
                return fail(format!("step {k} does not lower the degree"));
            }
            if apolar_dim(&next)? != dim {
                return fail(format!("step {k} changes the apolar dimension"));
            }
            last = e;
            cur = next;
        }
        if cur != self.result {
            return fail("final polynomial differs from the last step".into());
        }
        if self.accumulated.apply(&self.input)? != self.result {
            return fail("accumulated element does not reproduce the result".into());
        }
        Ok(())
    }
}

// Unknowns D_i = μ (kind i < n) and τ = μ (kind n) for the linear system X·F = G.
fn solve_lie(
    form: &DPPoly,
    g: &DPPoly,
    d_degrees: (u32, u32),
    tau_degrees: (u32, u32),
    eq_degrees: (u32, u32),
) -> Result<Option<(Vec<Operator>, Operator)>> {
    let n = form.arity();
    let field = form.field();
    let d = form.degree().ok_or(Error::ZeroPolynomial)?;
    let one = field.one();
    let mut unknowns: Vec<(usize, Monomial)> = Vec::new();
    for i in 0..n {
        unknowns.extend(monomials_in_window(n, d_degrees.0, d_degrees.1).into_iter().map(|m| (i, m)));
    }
    unknowns.extend(monomials_in_window(n, tau_degrees.0, tau_degrees.1).into_iter().map(|m| (n, m)));
    let cols = monomials_in_window(n, eq_degrees.0, eq_degrees.1);
    let images: Vec<Vec<Scalar>> = unknowns
        .iter()
        .map(|(k, m)| {
            let c = Operator::term(m.clone(), one.clone(), d).contract(form);
            let img = if *k < n { c.x_mul(*k) } else { c };
            img.coords(&cols)
        })
        .collect();
    let eqs: Vec<Vec<Scalar>> = (0..cols.len()).map(|r| images.iter().map(|v| v[r].clone()).collect()).collect();
    let Some(x) = linalg::solve(field, unknowns.len(), &eqs, &g.coords(&cols)) else {
        return Ok(None);
    };
    let mut ds = vec![Operator::zero(n, field, d); n];
    let mut tau = Operator::zero(n, field, d);
    for ((k, m), c) in unknowns.iter().zip(&x) {
        if c.is_zero() {
            continue;
        }
        let t = Operator::term(m.clone(), c.clone(), d);
        if *k < n {
            ds[*k] = &ds[*k] + &t;
        } else {
            tau = &tau + &t;
        }
    }
    Ok(Some((ds, tau)))
}

fn step_preconditions(f: &DPPoly, form: &DPPoly) -> Result<(u32, u32, DPPoly)> {
    if f.arity() != form.arity() {
        return Err(Error::ArityMismatch);
    }
    if f.field() != form.field() {
        return Err(Error::FieldMismatch);
    }
    let d = form.degree().ok_or(Error::ZeroPolynomial)?;
    let Some(e) = (f - form).degree() else {
        return Err(Error::HypothesisFailed("the polynomial already equals the target".into()));
    };
    if e >= d {
        return Err(Error::HypothesisFailed(format!("difference of degree {e} is not below the target degree {d}")));
    }
    form.field().char_guard(d)?;
    Ok((d, e, (f - form).homogeneous_part(e)))
}

/// One step lowering `deg(f - F)`, where `F` is the target.
///
/// For homogeneous `F` the element is `(a_i ↦ a_i - D_i, 1 - τ)` with `D_i`
/// and `τ` homogeneous solving `G = Σ x_i (D_i⌟F) + τ⌟F` for `G = tdf(f - F)`.
/// For other targets `D_i ∈ m²` and `τ ∈ m` may have several degrees, the
/// solution must kill `X·F` above `deg G`, and the element is `exp(-X)`.
pub fn lower_degree_step(f: &DPPoly, form: &DPPoly) -> Result<(GroupElement, DPPoly)> {
    let (d, e, g) = step_preconditions(f, form)?;
    let n = f.arity();
    let field = f.field();
    let k = d - e + 1;
    let element = if form.is_homogeneous() {
        let (ds, tau) = solve_lie(form, &g, (k, k), (k - 1, k - 1), (e, e))?.ok_or(Error::NotInTangent { degree: e })?;
        let images = (0..n).map(|i| &Operator::var(n, field, i, d) - &ds[i]).collect();
        GroupElement::new(Automorphism::new(images)?, &Operator::one(n, field, d) - &tau)?
    } else {
        let (ds, tau) = solve_lie(form, &g, (2, k), (1, k - 1), (e, d))?.ok_or(Error::NotInTangent { degree: e })?;
        let neg = Derivation::new(ds.iter().map(|s| -s).collect())?;
        exp_lie(&neg, &-&tau, d)?
    };
    let out = element.apply(f)?;
    if (&out - form).degree().is_some_and(|x| x >= e) {
        return Err(Error::ReductionFailed(format!("degree {e} was not removed")));
    }
    Ok((element, out))
}

// Repeats lower_degree_step while deg(f - F) >= stop.
fn reduce_towards(f: &DPPoly, form: &DPPoly, stop: u32) -> Result<ReductionTrace> {
    let d = f.degree().unwrap_or(0).max(1);
    let mut trace = ReductionTrace::start(f, form, d);
    while let Some(e) = (&trace.result - form).degree() {
        if e < stop {
            break;
        }
        let (g, next) = lower_degree_step(&trace.result, form)?;
        trace.push(g, next)?;
    }
    Ok(trace)
}

/// Outcome of the unipotent orbit membership test.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Membership {
    Yes(ReductionTrace),
    /// `tdf(f' - F)` left the homogeneous part of `𝔤⁺F` in this degree.
    No { degree: u32 },
}

impl Membership {
    pub fn is_yes(&self) -> bool {
        matches!(self, Membership::Yes(_))
    }
}

/// Whether `f` lies in `G⁺·F` for a homogeneous `F = tdf(f)`.
pub fn unip_orbit_membership(form: &DPPoly, f: &DPPoly) -> Result<Membership> {
    if !form.is_homogeneous() || form.is_zero() {
        return Err(Error::HypothesisFailed("membership needs a nonzero homogeneous target".into()));
    }
    if f.tdf() != *form {
        return Err(Error::TdfMismatch);
    }
    match reduce_towards(f, form, 0) {
        Ok(t) => Ok(Membership::Yes(t)),
        Err(Error::NotInTangent { degree }) => Ok(Membership::No { degree }),
        Err(e) => Err(e),
    }
}

/// Greedy membership for a target that need not be homogeneous. A `Yes` is
/// certified by its trace; a `No` only means the greedy step got stuck.
pub fn orbit_membership_heuristic(form: &DPPoly, f: &DPPoly) -> Result<Membership> {
    match reduce_towards(f, form, 0) {
        Ok(t) => Ok(Membership::Yes(t)),
        Err(Error::NotInTangent { degree }) => Ok(Membership::No { degree }),
        Err(e) => Err(e),
    }
}

/// For `f` whose apolar algebra is `t`-compressed, removes every term of degree
/// at most `t + 1`. Returns `t` (capped at `d - 2`) and the trace to `f_{>=t+2}`.
pub fn t_compressed_normal_form(f: &DPPoly) -> Result<(u32, ReductionTrace)> {
    let d = f.degree().ok_or(Error::ZeroPolynomial)?;
    if d < 3 {
        return Err(Error::NotTCompressed(format!("degree {d} is below 3")));
    }
    let h = hilbert_function(f)?;
    let t = h
        .max_t_compressed(f.arity())
        .ok_or_else(|| Error::NotTCompressed(format!("H = {h} is not t-compressed for any t >= 1")))?
        .min(d - 2);
    f.field().char_guard(d)?;
    let trace = reduce_towards(f, &f.part(t + 2, d), 0)?;
    Ok((t, trace))
}

/// Removes every term of degree at most `t + 1` under the hypotheses
/// `H(r) = dim S_r` for `r <= t` and `Δ_r(1) = 0` for `r >= d - 1 - t`.
pub fn improved_normal_form(f: &DPPoly, t: u32) -> Result<ReductionTrace> {
    let d = f.degree().ok_or(Error::ZeroPolynomial)?;
    let n = f.arity();
    f.field().char_guard(d)?;
    if t + 2 > d {
        return Err(Error::HypothesisFailed(format!("t = {t} is too large for degree {d}")));
    }
    let h = hilbert_function(f)?;
    if let Some(r) = (0..=t).find(|&r| h.get(r) != dim_s(n, r)) {
        return Err(Error::HypothesisFailed(format!("H({r}) = {} differs from dim S_{r} = {}", h.get(r), dim_s(n, r))));
    }
    let sd = symmetric_decomposition(f)?;
    if let Some(r) = ((d - 1 - t)..=d).find(|&r| sd.delta(r).get(1).copied().unwrap_or(0) != 0) {
        return Err(Error::HypothesisFailed(format!("Δ_{r}(1) is nonzero")));
    }
    let low = module_sf(f, t + 1)?;
    if let Some(m) = monomials_in_window(n, 0, 1).into_iter().find(|m| {
        !low.contains_poly(&DPPoly::term(m.clone(), f.field().one())).unwrap_or(false)
    }) {
        return Err(Error::HypothesisFailed(format!("x^{:?} is not in m^{}⌟f", m.exps(), t + 1)));
    }
    reduce_towards(f, &f.part(t + 2, d), 0)
}

/// Reduces `f` to `F + g` with `deg g < t`, where `F = tdf(f)`, after checking
/// that `dim Apolar(f) = dim Apolar(F)` and that the unipotent tangent perp of
/// `F` equals `(I²)_i` in degrees `t..=d-1`.
pub fn square_ideal_reduce(f: &DPPoly, t: u32) -> Result<ReductionTrace> {
    let d = f.degree().ok_or(Error::ZeroPolynomial)?;
    f.field().char_guard(d)?;
    let form = f.tdf();
    let (a, b) = (apolar_dim(f)?, apolar_dim(&form)?);
    if a != b {
        return Err(Error::HypothesisFailed(format!("dim Apolar(f) = {a} but dim Apolar(tdf f) = {b}")));
    }
    if t < d {
        let pt = perp_tangent(&form, true, d - 1)?;
        for i in t..d {
            let lhs = pt.project(i, i);
            let rhs = ideal_square_graded(&form, i)?;
            if lhs != rhs {
                return Err(Error::HypothesisFailed(format!(
                    "degree {i}: tangent perp has dimension {} but (I^2) has dimension {}",
                    lhs.dim(),
                    rhs.dim()
                )));
            }
        }
    }
    reduce_towards(f, &form, t)
}

/// The part of `P_e` reachable by one step against `F`: the degree `e` parts of
/// `X·F` over Lie elements with `X·F` vanishing above `e`.
pub fn leading_form_space(form: &DPPoly, e: u32) -> Result<Basis> {
    let n = form.arity();
    let field = form.field();
    let d = form.degree().ok_or(Error::ZeroPolynomial)?;
    if e >= d {
        return Err(Error::HypothesisFailed(format!("degree {e} is not below {d}")));
    }
    let k = d - e + 1;
    let mut unknowns: Vec<DPPoly> = Vec::new();
    for m in monomials_in_window(n, 2, k) {
        let c = Operator::term(m.clone(), field.one(), d).contract(form);
        unknowns.extend((0..n).map(|i| c.x_mul(i)));
    }
    for m in monomials_in_window(n, 1, k - 1) {
        unknowns.push(Operator::term(m, field.one(), d).contract(form));
    }
    // Combinations vanishing above e, then their degree e parts.
    let high = monomials_in_window(n, e + 1, d);
    let eqs: Vec<Vec<Scalar>> = {
        let v: Vec<Vec<Scalar>> = unknowns.iter().map(|u| u.coords(&high)).collect();
        (0..high.len()).map(|r| v.iter().map(|x| x[r].clone()).collect()).collect()
    };
    let ker = linalg::kernel(field, unknowns.len(), &eqs);
    let gens: Vec<DPPoly> = ker
        .iter()
        .map(|x| {
            let mut acc = DPPoly::zero(n, field);
            for (c, u) in x.iter().zip(&unknowns) {
                if !c.is_zero() {
                    acc = &acc + &u.homogeneous_part(e).scale(c);
                }
            }
            acc
        })
        .collect();
    Basis::span_polys(Ambient::p(n, field, e, e), &gens)
}
