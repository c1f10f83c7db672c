//! Canonical subspaces of the graded pieces of `P` and `S`.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::Arc;

use crate::divided_powers::{monomials_in_window, DPPoly, Monomial, Operator};
use crate::error::{Error, Result};
use crate::linalg::{self, Echelon};
use crate::scalars::{Field, Scalar};

/// Which ring the coordinates refer to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Space {
    /// The divided power ring.
    P,
    /// The power series ring.
    S,
}

/// The span of all monomials of `space` with degree in `lo..=hi`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Ambient {
    pub space: Space,
    pub n: usize,
    pub field: Field,
    pub lo: u32,
    pub hi: u32,
}

impl Ambient {
    pub fn p(n: usize, field: Field, lo: u32, hi: u32) -> Ambient {
        Ambient { space: Space::P, n, field, lo, hi }
    }

    pub fn s(n: usize, field: Field, lo: u32, hi: u32) -> Ambient {
        Ambient { space: Space::S, n, field, lo, hi }
    }

    /// Basis monomials in descending graded lex order.
    pub fn columns(&self) -> Vec<Monomial> {
        monomials_in_window(self.n, self.lo, self.hi)
    }

    pub fn dim(&self) -> usize {
        if self.lo > self.hi {
            return 0;
        }
        (self.lo..=self.hi).map(|k| crate::divided_powers::count_of_degree(self.n, k)).sum()
    }

    /// The same window in the other ring.
    pub fn dual(&self) -> Ambient {
        let space = match self.space {
            Space::P => Space::S,
            Space::S => Space::P,
        };
        Ambient { space, ..*self }
    }
}

impl fmt::Display for Ambient {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self.space {
            Space::P => "P",
            Space::S => "S",
        };
        write!(f, "{s}[{}..={}](n={}, {})", self.lo, self.hi, self.n, self.field)
    }
}

/// A subspace stored by its reduced row echelon basis. Columns are the
/// ambient monomials in descending order, so pivots are leading monomials.
#[derive(Clone, Debug)]
pub struct Basis {
    ambient: Ambient,
    cols: Arc<Vec<Monomial>>,
    ech: Echelon,
}

impl PartialEq for Basis {
    fn eq(&self, other: &Basis) -> bool {
        self.ambient == other.ambient && self.ech.pivots() == other.ech.pivots() && self.ech.rref() == other.ech.rref()
    }
}

impl Eq for Basis {}

type Sparse = Vec<(Monomial, Scalar)>;

fn index_of(cols: &[Monomial]) -> HashMap<&Monomial, usize> {
    cols.iter().enumerate().map(|(i, m)| (m, i)).collect()
}

fn dp_terms(f: &DPPoly) -> Sparse {
    f.terms().map(|(m, c)| (m.clone(), c.clone())).collect()
}

fn op_terms(s: &Operator) -> Sparse {
    s.terms().map(|(m, c)| (m.clone(), c.clone())).collect()
}

impl Basis {
    pub fn zero(ambient: Ambient) -> Basis {
        let cols = ambient.columns();
        Basis { ambient, ech: Echelon::new(ambient.field, cols.len()), cols: Arc::new(cols) }
    }

    pub fn full(ambient: Ambient) -> Basis {
        let cols = ambient.columns();
        let mut ech = Echelon::new(ambient.field, cols.len());
        for i in 0..cols.len() {
            let mut v = vec![ambient.field.zero(); cols.len()];
            v[i] = ambient.field.one();
            ech.insert(&v);
        }
        Basis { ambient, ech, cols: Arc::new(cols) }
    }

    fn index(&self) -> HashMap<&Monomial, usize> {
        index_of(&self.cols)
    }

    fn dense(&self, idx: &HashMap<&Monomial, usize>, v: &Sparse) -> Result<Vec<Scalar>> {
        let mut out = vec![self.ambient.field.zero(); self.cols.len()];
        for (m, c) in v {
            match idx.get(m) {
                Some(&i) => out[i] = c.clone(),
                None => {
                    return Err(Error::AmbientMismatch(format!("monomial {:?} outside {}", m.exps(), self.ambient)))
                }
            }
        }
        Ok(out)
    }

    fn span_sparse(ambient: Ambient, vectors: &[Sparse]) -> Result<Basis> {
        let mut b = Basis::zero(ambient);
        let cols = b.cols.clone();
        let idx = index_of(&cols);
        let homogeneous = vectors.iter().all(|v| {
            let mut it = v.iter().map(|(m, _)| m.degree());
            match it.next() {
                None => true,
                Some(d) => it.all(|e| e == d),
            }
        });
        if !homogeneous || vectors.len() < 2 {
            for v in vectors {
                let row = b.dense(&idx, v)?;
                b.ech.insert(&row);
            }
            return Ok(b);
        }
        // Homogeneous generators: reduce each degree block separately.
        let mut by_degree: BTreeMap<u32, Vec<&Sparse>> = BTreeMap::new();
        for v in vectors.iter().filter(|v| !v.is_empty()) {
            by_degree.entry(v[0].0.degree()).or_default().push(v);
        }
        let mut rows = Vec::new();
        for (_, group) in by_degree.iter().rev() {
            let mut cols_used: Vec<usize> = Vec::new();
            for v in group {
                for (m, _) in v.iter() {
                    match idx.get(m) {
                        Some(&i) => cols_used.push(i),
                        None => {
                            return Err(Error::AmbientMismatch(format!(
                                "monomial {:?} outside {}",
                                m.exps(),
                                ambient
                            )))
                        }
                    }
                }
            }
            let lo = *cols_used.iter().min().unwrap();
            let hi = *cols_used.iter().max().unwrap();
            let mut local = Echelon::new(ambient.field, hi - lo + 1);
            for v in group {
                let mut d = vec![ambient.field.zero(); hi - lo + 1];
                for (m, c) in v.iter() {
                    d[idx[m] - lo] = c.clone();
                }
                local.insert(&d);
            }
            for r in local.rref() {
                let mut full = vec![ambient.field.zero(); b.cols.len()];
                for (k, x) in r.into_iter().enumerate() {
                    full[lo + k] = x;
                }
                rows.push(full);
            }
        }
        drop(idx);
        for r in rows {
            b.ech.insert(&r);
        }
        Ok(b)
    }

    /// Canonical basis of the span of polynomials in a `P`-window.
    pub fn span_polys(ambient: Ambient, vectors: &[DPPoly]) -> Result<Basis> {
        if ambient.space != Space::P {
            return Err(Error::AmbientMismatch("polynomials need a P ambient".into()));
        }
        for v in vectors {
            if v.arity() != ambient.n || v.field() != ambient.field {
                return Err(Error::AmbientMismatch(format!("polynomial does not belong to {ambient}")));
            }
        }
        let sp: Vec<Sparse> = vectors.iter().map(dp_terms).collect();
        Basis::span_sparse(ambient, &sp)
    }

    /// Canonical basis of the span of operators in an `S`-window.
    pub fn span_operators(ambient: Ambient, vectors: &[Operator]) -> Result<Basis> {
        if ambient.space != Space::S {
            return Err(Error::AmbientMismatch("operators need an S ambient".into()));
        }
        for v in vectors {
            if v.arity() != ambient.n || v.field() != ambient.field {
                return Err(Error::AmbientMismatch(format!("operator does not belong to {ambient}")));
            }
        }
        let sp: Vec<Sparse> = vectors.iter().map(op_terms).collect();
        Basis::span_sparse(ambient, &sp)
    }

    /// Span of dense coordinate rows over the ambient columns.
    pub fn from_rows(ambient: Ambient, rows: &[Vec<Scalar>]) -> Basis {
        let mut b = Basis::zero(ambient);
        for r in rows {
            b.ech.insert(r);
        }
        b
    }

    pub fn ambient(&self) -> Ambient {
        self.ambient
    }

    pub fn columns(&self) -> &[Monomial] {
        &self.cols
    }

    pub fn dim(&self) -> usize {
        self.ech.rank()
    }

    pub fn is_zero(&self) -> bool {
        self.dim() == 0
    }

    /// Reduced echelon rows as dense coordinate vectors.
    pub fn rows(&self) -> Vec<Vec<Scalar>> {
        self.ech.rref()
    }

    /// Leading monomial of each basis row.
    pub fn pivot_monomials(&self) -> Vec<Monomial> {
        self.ech.pivots().iter().map(|&i| self.cols[i].clone()).collect()
    }

    fn decode(&self, row: &[Scalar]) -> Sparse {
        row.iter()
            .zip(self.cols.iter())
            .filter(|(c, _)| !c.is_zero())
            .map(|(c, m)| (m.clone(), c.clone()))
            .collect()
    }

    /// Basis rows as polynomials (requires a `P` ambient).
    pub fn polys(&self) -> Vec<DPPoly> {
        self.rows().iter().map(|r| DPPoly::from_terms(self.ambient.n, self.ambient.field, self.decode(r))).collect()
    }

    /// Basis rows as operators truncated at the top of the window.
    pub fn operators(&self) -> Vec<Operator> {
        let t = self.ambient.hi;
        self.rows()
            .iter()
            .map(|r| Operator::from_terms(self.ambient.n, self.ambient.field, t, self.decode(r)))
            .collect()
    }

    fn check(&self, other: &Basis) -> Result<()> {
        if self.ambient != other.ambient {
            return Err(Error::AmbientMismatch(format!("{} vs {}", self.ambient, other.ambient)));
        }
        Ok(())
    }

    pub fn sum(&self, other: &Basis) -> Result<Basis> {
        self.check(other)?;
        let mut out = self.clone();
        for r in other.rows() {
            out.ech.insert(&r);
        }
        Ok(out)
    }

    pub fn intersection(&self, other: &Basis) -> Result<Basis> {
        self.check(other)?;
        let a = self.rows();
        let b = other.rows();
        let m = self.cols.len();
        let k = a.len() + b.len();
        // Solve sum x_i a_i = sum y_j b_j.
        let eqs: Vec<Vec<Scalar>> = (0..m)
            .map(|c| a.iter().map(|r| r[c].clone()).chain(b.iter().map(|r| r[c].neg())).collect())
            .collect();
        let ker = linalg::kernel(self.ambient.field, k, &eqs);
        let rows: Vec<Vec<Scalar>> = ker
            .iter()
            .map(|x| {
                let mut v = vec![self.ambient.field.zero(); m];
                for (xi, r) in x.iter().zip(&a) {
                    if xi.is_zero() {
                        continue;
                    }
                    for (vc, rc) in v.iter_mut().zip(r) {
                        *vc = &*vc + &(xi * rc);
                    }
                }
                v
            })
            .collect();
        Ok(Basis::from_rows(self.ambient, &rows))
    }

    /// Whether `other` is a subspace of `self`.
    pub fn contains_space(&self, other: &Basis) -> Result<bool> {
        self.check(other)?;
        Ok(other.rows().iter().all(|r| self.ech.contains(r)))
    }

    pub fn contains_poly(&self, f: &DPPoly) -> Result<bool> {
        let idx = self.index();
        Ok(self.ech.contains(&self.dense(&idx, &dp_terms(f))?))
    }

    pub fn contains_operator(&self, s: &Operator) -> Result<bool> {
        let idx = self.index();
        Ok(self.ech.contains(&self.dense(&idx, &op_terms(s))?))
    }

    /// Canonical representative of `f` modulo the subspace (zero on pivot monomials).
    pub fn remainder_poly(&self, f: &DPPoly) -> Result<DPPoly> {
        let idx = self.index();
        let (rem, _) = self.ech.reduce(&self.dense(&idx, &dp_terms(f))?);
        Ok(DPPoly::from_terms(self.ambient.n, self.ambient.field, self.decode(&rem)))
    }

    /// Writes `f = remainder + sum c_i row_i`; returns the remainder and the `c_i`.
    pub fn decompose_poly(&self, f: &DPPoly) -> Result<(DPPoly, Vec<Scalar>)> {
        let idx = self.index();
        let (rem, c) = self.ech.reduce(&self.dense(&idx, &dp_terms(f))?);
        Ok((DPPoly::from_terms(self.ambient.n, self.ambient.field, self.decode(&rem)), c))
    }

    /// Restriction of every basis row to the columns of degree in `lo..=hi`, re-spanned.
    pub fn project(&self, lo: u32, hi: u32) -> Basis {
        let amb = Ambient { lo, hi, ..self.ambient };
        let target = amb.columns();
        let tidx: HashMap<&Monomial, usize> = target.iter().enumerate().map(|(i, m)| (m, i)).collect();
        let rows: Vec<Vec<Scalar>> = self
            .rows()
            .iter()
            .map(|r| {
                let mut v = vec![self.ambient.field.zero(); target.len()];
                for (c, m) in r.iter().zip(self.cols.iter()) {
                    if let Some(&i) = tidx.get(m) {
                        v[i] = c.clone();
                    }
                }
                v
            })
            .collect();
        Basis::from_rows(amb, &rows)
    }
}

/// The orthogonal space of `w` (a subspace of a `P`-window) inside the
/// `S`-window `lo..=hi` under the contraction pairing.
pub fn perp(w: &Basis, lo: u32, hi: u32) -> Result<Basis> {
    if w.ambient.space != Space::P {
        return Err(Error::AmbientMismatch("perp expects a subspace of P".into()));
    }
    let amb = Ambient::s(w.ambient.n, w.ambient.field, lo, hi);
    let scols = amb.columns();
    let pidx = w.index();
    let pos: Vec<Option<usize>> = scols.iter().map(|m| pidx.get(m).copied()).collect();
    let eqs: Vec<Vec<Scalar>> = w
        .rows()
        .iter()
        .map(|r| pos.iter().map(|p| p.map_or_else(|| amb.field.zero(), |i| r[i].clone())).collect())
        .collect();
    let ker = linalg::kernel(amb.field, scols.len(), &eqs);
    Ok(Basis::from_rows(amb, &ker))
}

/// The orthogonal space of `w` (a subspace of an `S`-window) inside the `P`-window `lo..=hi`.
pub fn perp_of_operators(w: &Basis, lo: u32, hi: u32) -> Result<Basis> {
    if w.ambient.space != Space::S {
        return Err(Error::AmbientMismatch("expected a subspace of S".into()));
    }
    let as_p = Basis { ambient: w.ambient.dual(), cols: w.cols.clone(), ech: w.ech.clone() };
    let s = perp(&as_p, lo, hi)?;
    Ok(Basis { ambient: s.ambient.dual(), cols: s.cols, ech: s.ech })
}

#[cfg(test)]
mod tests {
    use super::*;

    const Q: Field = Field::Rationals;

    #[test]
    fn span_examples() {
        let x2 = DPPoly::from_int_terms(1, Q, &[(&[2], 1)]);
        let amb = Ambient::p(1, Q, 2, 2);
        assert_eq!(Basis::span_polys(amb, &[x2.clone(), x2.scale(&Q.from_i64(2))]).unwrap().dim(), 1);
        assert_eq!(Basis::span_polys(amb, &[]).unwrap().dim(), 0);
        let amb2 = Ambient::p(2, Q, 2, 2);
        assert_eq!(Basis::full(amb2).dim(), 3);
    }

    #[test]
    fn algebra_examples() {
        let amb = Ambient::p(2, Q, 1, 1);
        let x = Basis::span_polys(amb, &[DPPoly::var(2, Q, 0)]).unwrap();
        let xy = Basis::span_polys(amb, &[&DPPoly::var(2, Q, 0) + &DPPoly::var(2, Q, 1)]).unwrap();
        assert_eq!(x.intersection(&x).unwrap(), x);
        assert_eq!(x.sum(&Basis::zero(amb)).unwrap(), x);
        assert_eq!(x.intersection(&xy).unwrap().dim(), 0);
        assert_eq!(x.sum(&xy).unwrap().dim(), 2);
    }

    #[test]
    fn perp_examples() {
        let amb = Ambient::p(2, Q, 2, 2);
        let w = Basis::span_polys(
            amb,
            &[DPPoly::from_int_terms(2, Q, &[(&[2, 0], 1)]), DPPoly::from_int_terms(2, Q, &[(&[0, 2], 1)])],
        )
        .unwrap();
        let p = perp(&w, 2, 2).unwrap();
        assert_eq!(p.operators(), vec![Operator::from_int_terms(2, Q, 2, &[(&[1, 1], 1)])]);
        let full = Ambient::p(2, Q, 0, 3);
        assert_eq!(perp(&Basis::full(full), 0, 3).unwrap().dim(), 0);
        assert_eq!(perp(&Basis::zero(full), 0, 3).unwrap().dim(), 10);
        assert_eq!(perp_of_operators(&p, 2, 2).unwrap(), w);
    }

    #[test]
    fn remainder_is_canonical() {
        let amb = Ambient::p(2, Q, 1, 1);
        let b = Basis::span_polys(amb, &[&DPPoly::var(2, Q, 0) + &DPPoly::var(2, Q, 1)]).unwrap();
        let r = b.remainder_poly(&DPPoly::var(2, Q, 0)).unwrap();
        assert_eq!(r, DPPoly::var(2, Q, 1).scale(&Q.from_i64(-1)));
    }
}
