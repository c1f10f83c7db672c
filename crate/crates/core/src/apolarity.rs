//! Apolar ideals, Hilbert functions and the symmetric decomposition.

use std::fmt;

use crate::divided_powers::{count_of_degree, monomials_in_window, monomials_of_degree, DPPoly, Operator};
use crate::error::{Error, Result};
use crate::linalg::{self, Echelon};
use crate::subspaces::{Ambient, Basis};

fn degree_of(f: &DPPoly) -> Result<u32> {
    f.degree().ok_or(Error::ZeroPolynomial)
}

/// `dim S_i = binom(i+n-1, i)`.
pub fn dim_s(n: usize, i: u32) -> usize {
    count_of_degree(n, i)
}

/// `{σ ∈ S_i : σ ⌟ f = 0}`, the degree `i` piece of the homogeneous part of Ann(f).
pub fn ann_graded(f: &DPPoly, i: u32) -> Result<Basis> {
    let n = f.arity();
    let field = f.field();
    let amb = Ambient::s(n, field, i, i);
    let Some(d) = f.degree() else {
        return Ok(Basis::full(amb));
    };
    if i > d {
        return Ok(Basis::full(amb));
    }
    let smons = monomials_of_degree(n, i);
    let pcols = monomials_in_window(n, 0, d - i);
    let images: Vec<Vec<_>> =
        smons.iter().map(|m| Operator::term(m.clone(), field.one(), d).contract(f).coords(&pcols)).collect();
    // Relations among the images: one equation per P-monomial.
    let eqs: Vec<Vec<_>> = (0..pcols.len()).map(|r| images.iter().map(|v| v[r].clone()).collect()).collect();
    let ker = linalg::kernel(field, smons.len(), &eqs);
    Ok(Basis::from_rows(amb, &ker))
}

/// The subspace `m^k ⌟ f` of `P_{<=deg f}`; `k = 0` gives `S f`.
pub fn module_sf(f: &DPPoly, k: u32) -> Result<Basis> {
    let d = degree_of(f)?;
    let amb = Ambient::p(f.arity(), f.field(), 0, d);
    if k > d {
        return Ok(Basis::zero(amb));
    }
    let gens: Vec<DPPoly> = monomials_in_window(f.arity(), k, d)
        .into_iter()
        .map(|m| Operator::term(m, f.field().one(), d).contract(f))
        .filter(|g| !g.is_zero())
        .collect();
    Basis::span_polys(amb, &gens)
}

/// `dim_k Apolar(f) = dim S f`.
pub fn apolar_dim(f: &DPPoly) -> Result<usize> {
    Ok(module_sf(f, 0)?.dim())
}

/// Values `H(0), ..., H(d)` of the Hilbert function of an apolar algebra.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct HilbertFunction {
    values: Vec<usize>,
}

impl HilbertFunction {
    pub fn new(values: Vec<usize>) -> HilbertFunction {
        let mut values = values;
        while values.len() > 1 && values.last() == Some(&0) {
            values.pop();
        }
        HilbertFunction { values }
    }

    pub fn values(&self) -> &[usize] {
        &self.values
    }

    pub fn socle_degree(&self) -> u32 {
        (self.values.len() - 1) as u32
    }

    pub fn get(&self, i: u32) -> usize {
        self.values.get(i as usize).copied().unwrap_or(0)
    }

    pub fn total(&self) -> usize {
        self.values.iter().sum()
    }

    /// `H(i) = dim S_i` for `i <= t` and `H(d-1) = n`.
    pub fn is_t_compressed(&self, n: usize, t: u32) -> bool {
        let d = self.socle_degree();
        if t < 1 || d < 1 {
            return false;
        }
        (0..=t).all(|i| self.get(i) == dim_s(n, i)) && self.get(d - 1) == n
    }

    /// The largest `t >= 1` for which the function is `t`-compressed.
    pub fn max_t_compressed(&self, n: usize) -> Option<u32> {
        let d = self.socle_degree();
        (1..=d).rev().find(|&t| self.is_t_compressed(n, t))
    }

    /// `H(i) = min(dim S_i, dim S_{d-i})` for every `i`.
    pub fn is_compressed(&self, n: usize) -> bool {
        let d = self.socle_degree();
        (0..=d).all(|i| self.get(i) == dim_s(n, i).min(dim_s(n, d - i)))
    }
}

impl fmt::Display for HilbertFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.values.iter().map(ToString::to_string).collect();
        write!(f, "({})", parts.join(", "))
    }
}

/// `H(i) = dim m^i⌟f - dim m^{i+1}⌟f`.
pub fn hilbert_function(f: &DPPoly) -> Result<HilbertFunction> {
    let d = degree_of(f)?;
    let dims: Vec<usize> = (0..=d + 1).map(|k| module_sf(f, k).map(|b| b.dim())).collect::<Result<_>>()?;
    Ok(HilbertFunction::new((0..=d as usize).map(|i| dims[i] - dims[i + 1]).collect()))
}

pub fn is_t_compressed(f: &DPPoly, t: u32) -> Result<bool> {
    Ok(hilbert_function(f)?.is_t_compressed(f.arity(), t))
}

pub fn is_compressed(f: &DPPoly) -> Result<bool> {
    Ok(hilbert_function(f)?.is_compressed(f.arity()))
}

/// The vectors `Δ_0, ..., Δ_{d-2}`, with `Δ_a` indexed by `0..=d-a`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymmetricDecomposition {
    socle_degree: u32,
    deltas: Vec<Vec<usize>>,
}

impl SymmetricDecomposition {
    pub fn socle_degree(&self) -> u32 {
        self.socle_degree
    }

    pub fn deltas(&self) -> &[Vec<usize>] {
        &self.deltas
    }

    /// `Δ_a`, or the zero vector past the stored range.
    pub fn delta(&self, a: u32) -> Vec<usize> {
        self.deltas.get(a as usize).cloned().unwrap_or_else(|| vec![0; (self.socle_degree.saturating_sub(a) + 1) as usize])
    }

    /// Entrywise sum, which equals the Hilbert function.
    pub fn sum(&self) -> Vec<usize> {
        let mut out = vec![0; self.socle_degree as usize + 1];
        for d in &self.deltas {
            for (o, x) in out.iter_mut().zip(d) {
                *o += x;
            }
        }
        out
    }
}

// Number of rows of the echelon basis of `m^k ⌟ f` whose leading monomial has degree i.
fn leading_degree_counts(f: &DPPoly, d: u32) -> Result<Vec<Vec<usize>>> {
    (0..=d + 1)
        .map(|k| {
            let b = module_sf(f, k)?;
            let mut c = vec![0; d as usize + 1];
            for m in b.pivot_monomials() {
                c[m.degree() as usize] += 1;
            }
            Ok(c)
        })
        .collect()
}

/// `Δ_a(i) = dim C_a(i) - dim C_{a-1}(i)` where `C_a(i)` is the space of degree
/// `i` forms of elements of `(m^{d-a-i} ⌟ f) ∩ P_{<=i}`.
pub fn symmetric_decomposition(f: &DPPoly) -> Result<SymmetricDecomposition> {
    let d = degree_of(f)?;
    let counts = leading_degree_counts(f, d)?;
    let c = |a: i64, i: i64| -> i64 {
        let k = d as i64 - a - i;
        if k < 0 || k > d as i64 + 1 {
            0
        } else {
            counts[k as usize][i as usize] as i64
        }
    };
    let h = hilbert_function(f)?;
    let mut all = Vec::new();
    for a in 0..=d as i64 {
        let len = d as i64 - a;
        let delta: Vec<i64> = (0..=len).map(|i| c(a, i) - c(a - 1, i)).collect();
        for (i, &x) in delta.iter().enumerate() {
            if x < 0 {
                return Err(Error::DecompositionInvariantViolated(format!("Δ_{a}({i}) = {x} is negative")));
            }
            if x != delta[(len as usize) - i] {
                return Err(Error::DecompositionInvariantViolated(format!("Δ_{a} = {delta:?} is not symmetric")));
            }
        }
        all.push(delta.into_iter().map(|x| x as usize).collect::<Vec<usize>>());
    }
    let mut sum = vec![0; d as usize + 1];
    for v in &all {
        for (s, x) in sum.iter_mut().zip(v) {
            *s += x;
        }
    }
    if sum != h.values() {
        return Err(Error::DecompositionInvariantViolated(format!("Σ Δ = {sum:?} but H = {h}")));
    }
    let keep = if d >= 2 { d as usize - 1 } else { 1 };
    if all[keep..].iter().any(|v| v.iter().any(|&x| x != 0)) {
        return Err(Error::DecompositionInvariantViolated("Δ_a nonzero for a > d - 2".into()));
    }
    all.truncate(keep);
    Ok(SymmetricDecomposition { socle_degree: d, deltas: all })
}

/// Homogeneous annihilator generators by degree: in degree `j` a complement of
/// `S_1 · Ann(f)_{j-1}` inside `Ann(f)_j`, chosen greedily from the echelon basis.
pub fn ann_generators(f: &DPPoly, up_to: u32) -> Result<Vec<(u32, Vec<Operator>)>> {
    let n = f.arity();
    let field = f.field();
    let mut out = Vec::new();
    let mut prev: Option<Basis> = None;
    for j in 1..=up_to {
        let ij = ann_graded(f, j)?;
        let mut ech = Echelon::new(field, ij.columns().len());
        if let Some(p) = &prev {
            let amb = Ambient::s(n, field, j, j);
            let prods: Vec<Operator> = p
                .operators()
                .iter()
                .flat_map(|s| (0..n).map(move |v| (s.clone(), v)))
                .map(|(s, v)| &s.with_trunc(j) * &Operator::var(n, field, v, j))
                .collect();
            for r in Basis::span_operators(amb, &prods)?.rows() {
                ech.insert(&r);
            }
        }
        let mut gens = Vec::new();
        for (row, op) in ij.rows().iter().zip(ij.operators()) {
            if ech.insert(row) {
                gens.push(op);
            }
        }
        if !gens.is_empty() {
            out.push((j, gens));
        }
        prev = Some(ij);
    }
    Ok(out)
}

/// The degree `i` piece of `I^2` for the homogeneous part `I` of `Ann(f)`.
pub fn ideal_square_graded(f: &DPPoly, i: u32) -> Result<Basis> {
    let n = f.arity();
    let field = f.field();
    let amb = Ambient::s(n, field, i, i);
    let gens = ann_generators(f, i)?;
    let mut prods = Vec::new();
    for (j, gs) in &gens {
        if 2 * j > i {
            continue;
        }
        let rest = ann_graded(f, i - j)?.operators();
        for g in gs {
            for r in &rest {
                prods.push(&g.with_trunc(i) * &r.with_trunc(i));
            }
        }
    }
    Basis::span_operators(amb, &prods)
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

    fn span(n: usize, i: u32, ops: &[&str]) -> Basis {
        let v: Vec<Operator> = ops.iter().map(|s| parse_operator(s, n, Q, i).unwrap()).collect();
        Basis::span_operators(Ambient::s(n, Q, i, i), &v).unwrap()
    }

    #[test]
    fn annihilator_examples() {
        for d in 3..7 {
            let f = p(&format!("x^[{}]*y", d - 1), 2);
            assert_eq!(ann_graded(&f, 2).unwrap(), span(2, 2, &["b^2"]));
            let g = p(&format!("x^[{d}] + y^[{d}]"), 2);
            assert_eq!(ann_graded(&g, 2).unwrap(), span(2, 2, &["a*b"]));
            assert!(ann_graded(&g, d).unwrap().contains_operator(&parse_operator(&format!("a^{d} - b^{d}"), 2, Q, d).unwrap()).unwrap());
        }
        let f3 = p("x^[3]*y + x^[2]*z^[2]", 3);
        assert_eq!(ann_graded(&f3, 2).unwrap(), span(3, 2, &["b^2", "b*c", "a*b - c^2"]));
    }

    #[test]
    fn module_examples() {
        assert_eq!(module_sf(&p("x^[3]", 1), 0).unwrap().dim(), 4);
        assert_eq!(apolar_dim(&p("x^[2]*y", 2)).unwrap(), 6);
    }

    #[test]
    fn hilbert_examples() {
        assert_eq!(hilbert_function(&p("x^[3]*y", 2)).unwrap().values(), &[1, 2, 2, 2, 1]);
        // (x+y+z)^[4] is the sum of all divided power monomials of degree 4.
        let all4: Vec<String> = monomials_of_degree(3, 4)
            .iter()
            .map(|m| format!("x^[{}]*y^[{}]*z^[{}]", m.exps()[0], m.exps()[1], m.exps()[2]))
            .collect();
        let fl = p(&format!("x^[4] + y^[4] + z^[4] + {}", all4.join(" + ")), 3);
        assert_eq!(hilbert_function(&fl).unwrap().values(), &[1, 3, 4, 3, 1]);
        assert_eq!(hilbert_function(&p("x^[5]", 1)).unwrap().values(), &[1, 1, 1, 1, 1, 1]);
        assert!(matches!(hilbert_function(&DPPoly::zero(2, Q)), Err(Error::ZeroPolynomial)));
    }

    #[test]
    fn compressed_profiles() {
        assert!(HilbertFunction::new(vec![1, 2, 3, 2, 2, 2, 1]).is_t_compressed(2, 2));
        let h = HilbertFunction::new(vec![1, 2, 2, 1, 1]);
        assert!((1..5).all(|t| !h.is_t_compressed(2, t)));
        assert!(HilbertFunction::new(vec![1, 2, 2, 2, 1]).is_t_compressed(2, 1));
        assert!(is_compressed(&p("x^[3]*y^[2]", 2)).unwrap());
        assert!(!is_compressed(&p("x^[4]*y", 2)).unwrap());
    }

    #[test]
    fn symmetric_decomposition_examples() {
        let f = p("x^[6] + x^[2]*y^[2] + 5*y^[3]", 2);
        let s = symmetric_decomposition(&f).unwrap();
        assert_eq!(s.delta(0), vec![1; 7]);
        assert_eq!(s.delta(1), vec![0; 6]);
        assert_eq!(s.delta(2), vec![0, 1, 1, 1, 0]);
        assert_eq!(s.delta(3), vec![0; 4]);
        assert_eq!(s.delta(4), vec![0; 3]);
        let g = p("x^[2]*y", 2);
        let s = symmetric_decomposition(&g).unwrap();
        assert_eq!(s.delta(0), hilbert_function(&g).unwrap().values());
    }

    #[test]
    fn square_of_ideal() {
        let d = 6;
        let f = p("x^[6] + y^[6]", 2);
        for i in 0..d {
            let expected = if i >= 4 {
                let ops: Vec<String> = (0..=i - 4).map(|k| format!("a^{}*b^{}", 2 + k, 2 + i - 4 - k)).collect();
                span(2, i, &ops.iter().map(String::as_str).collect::<Vec<_>>())
            } else {
                Basis::zero(Ambient::s(2, Q, i, i))
            };
            assert_eq!(ideal_square_graded(&f, i).unwrap(), expected, "degree {i}");
        }
        assert!(ideal_square_graded(&p("x^[3]*y", 2), 3).unwrap().is_zero());
    }
}
