//! The divided power ring `P = k_dp[x_1..x_n]`, the power series ring
//! `S = k[[a_1..a_n]]` truncated at a degree bound, and contraction between them.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::scalars::{Field, Scalar};

/// An exponent vector. Ordered by graded lex: total degree first, then
/// lexicographically with `x_1` the largest variable.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn new(exps: Vec<u32>) -> Monomial {
        Monomial(exps)
    }

    pub fn one(n: usize) -> Monomial {
        Monomial(vec![0; n])
    }

    pub fn var(n: usize, i: usize) -> Monomial {
        let mut e = vec![0; n];
        e[i] = 1;
        Monomial(e)
    }

    pub fn exps(&self) -> &[u32] {
        &self.0
    }

    pub fn arity(&self) -> usize {
        self.0.len()
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    /// Componentwise `self <= other`.
    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    /// `other - self`, assuming `self` divides `other`.
    pub fn complement_in(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| b - a).collect())
    }

    pub fn with_incremented(&self, i: usize) -> Monomial {
        let mut e = self.0.clone();
        e[i] += 1;
        Monomial(e)
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree().cmp(&other.degree()).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// All monomials of total degree `k` in `n` variables, largest first.
pub fn monomials_of_degree(n: usize, k: u32) -> Vec<Monomial> {
    fn rec(n: usize, k: u32, prefix: &mut Vec<u32>, out: &mut Vec<Monomial>) {
        if prefix.len() + 1 == n {
            prefix.push(k);
            out.push(Monomial(prefix.clone()));
            prefix.pop();
            return;
        }
        for a in (0..=k).rev() {
            prefix.push(a);
            rec(n, k - a, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    if n == 0 {
        if k == 0 {
            out.push(Monomial(vec![]));
        }
        return out;
    }
    rec(n, k, &mut Vec::with_capacity(n), &mut out);
    out
}

/// All monomials with degree in `lo..=hi`, in descending graded lex order.
pub fn monomials_in_window(n: usize, lo: u32, hi: u32) -> Vec<Monomial> {
    if lo > hi {
        return Vec::new();
    }
    (lo..=hi).rev().flat_map(|k| monomials_of_degree(n, k)).collect()
}

/// Number of monomials of degree `k` in `n` variables, `binom(k+n-1, k)`.
pub fn count_of_degree(n: usize, k: u32) -> usize {
    if n == 0 {
        return usize::from(k == 0);
    }
    num_integer::binomial(k as u64 + n as u64 - 1, k as u64) as usize
}

fn add_term(terms: &mut BTreeMap<Monomial, Scalar>, m: Monomial, c: Scalar) {
    if c.is_zero() {
        return;
    }
    match terms.entry(m) {
        std::collections::btree_map::Entry::Vacant(v) => {
            v.insert(c);
        }
        std::collections::btree_map::Entry::Occupied(mut o) => {
            let s = o.get() + &c;
            if s.is_zero() {
                o.remove();
            } else {
                *o.get_mut() = s;
            }
        }
    }
}

/// A divided-power polynomial: `sum c_a x^[a]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct DPPoly {
    n: usize,
    field: Field,
    terms: BTreeMap<Monomial, Scalar>,
}

impl DPPoly {
    pub fn zero(n: usize, field: Field) -> DPPoly {
        DPPoly { n, field, terms: BTreeMap::new() }
    }

    pub fn constant(n: usize, c: Scalar) -> DPPoly {
        DPPoly::term(Monomial::one(n), c)
    }

    pub fn one(n: usize, field: Field) -> DPPoly {
        DPPoly::constant(n, field.one())
    }

    /// The single term `c x^[a]`.
    pub fn term(a: Monomial, c: Scalar) -> DPPoly {
        let mut p = DPPoly::zero(a.arity(), c.field());
        add_term(&mut p.terms, a, c);
        p
    }

    /// The linear form `x_i` (the divided power `x_i^[1]`).
    pub fn var(n: usize, field: Field, i: usize) -> DPPoly {
        DPPoly::term(Monomial::var(n, i), field.one())
    }

    /// Builds from `(exponents, integer coefficient)` pairs.
    pub fn from_int_terms(n: usize, field: Field, terms: &[(&[u32], i64)]) -> DPPoly {
        let mut p = DPPoly::zero(n, field);
        for (e, c) in terms {
            assert_eq!(e.len(), n, "exponent vector of wrong length");
            add_term(&mut p.terms, Monomial::new(e.to_vec()), field.from_i64(*c));
        }
        p
    }

    pub fn from_terms(n: usize, field: Field, terms: impl IntoIterator<Item = (Monomial, Scalar)>) -> DPPoly {
        let mut p = DPPoly::zero(n, field);
        for (m, c) in terms {
            debug_assert_eq!(m.arity(), n);
            add_term(&mut p.terms, m, c);
        }
        p
    }

    pub fn arity(&self) -> usize {
        self.n
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in ascending graded lex order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Scalar)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, m: &Monomial) -> Scalar {
        self.terms.get(m).cloned().unwrap_or_else(|| self.field.zero())
    }

    /// Total degree; `None` encodes `deg(0) < 0`.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().next_back().map(Monomial::degree)
    }

    /// Minimal degree of a term, `None` for zero.
    pub fn low_degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).min()
    }

    pub fn is_homogeneous(&self) -> bool {
        self.degree() == self.low_degree()
    }

    /// The part with degrees in `lo..=hi`.
    pub fn part(&self, lo: u32, hi: u32) -> DPPoly {
        DPPoly {
            n: self.n,
            field: self.field,
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| (lo..=hi).contains(&m.degree()))
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    pub fn homogeneous_part(&self, k: u32) -> DPPoly {
        self.part(k, k)
    }

    /// Top degree form; zero for zero.
    pub fn tdf(&self) -> DPPoly {
        match self.degree() {
            Some(d) => self.homogeneous_part(d),
            None => self.clone(),
        }
    }

    pub fn scale(&self, c: &Scalar) -> DPPoly {
        if c.is_zero() {
            return DPPoly::zero(self.n, self.field);
        }
        DPPoly { n: self.n, field: self.field, terms: self.terms.iter().map(|(m, v)| (m.clone(), v * c)).collect() }
    }

    fn check(&self, other: &DPPoly) -> Result<()> {
        if self.n != other.n {
            return Err(Error::ArityMismatch);
        }
        if self.field != other.field {
            return Err(Error::FieldMismatch);
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &DPPoly) -> Result<DPPoly> {
        self.check(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            add_term(&mut out.terms, m.clone(), c.clone());
        }
        Ok(out)
    }

    /// Multiplies by the linear form `x_i` in the divided power ring:
    /// `x_i * x^[a] = (a_i + 1) x^[a + e_i]`.
    pub fn x_mul(&self, i: usize) -> DPPoly {
        let mut out = DPPoly::zero(self.n, self.field);
        for (m, c) in &self.terms {
            let k = m.exps()[i] as i64 + 1;
            add_term(&mut out.terms, m.with_incremented(i), c * &self.field.from_i64(k));
        }
        out
    }

    /// Degree-wise coordinates over a list of monomials.
    pub fn coords(&self, cols: &[Monomial]) -> Vec<Scalar> {
        cols.iter().map(|m| self.coeff(m)).collect()
    }
}

/// Product in the divided power ring: `x^[a] x^[b] = prod binom(a_i+b_i, a_i) x^[a+b]`.
pub fn dp_mul(f: &DPPoly, g: &DPPoly) -> Result<DPPoly> {
    f.check(g)?;
    let field = f.field;
    let mut out = DPPoly::zero(f.n, field);
    for (a, c) in &f.terms {
        for (b, d) in &g.terms {
            let mut coeff = c * d;
            for (ai, bi) in a.exps().iter().zip(b.exps()) {
                if coeff.is_zero() {
                    break;
                }
                if *ai > 0 && *bi > 0 {
                    coeff = &coeff * &field.binomial((ai + bi) as u64, *ai as u64);
                }
            }
            add_term(&mut out.terms, a.mul(b), coeff);
        }
    }
    Ok(out)
}

/// A truncated power series in `a_1..a_n`: terms of degree above `trunc` are dropped.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Operator {
    n: usize,
    field: Field,
    trunc: u32,
    terms: BTreeMap<Monomial, Scalar>,
}

impl Operator {
    pub fn zero(n: usize, field: Field, trunc: u32) -> Operator {
        Operator { n, field, trunc, terms: BTreeMap::new() }
    }

    pub fn constant(n: usize, c: Scalar, trunc: u32) -> Operator {
        Operator::term(Monomial::one(n), c, trunc)
    }

    pub fn one(n: usize, field: Field, trunc: u32) -> Operator {
        Operator::constant(n, field.one(), trunc)
    }

    pub fn term(a: Monomial, c: Scalar, trunc: u32) -> Operator {
        let mut s = Operator::zero(a.arity(), c.field(), trunc);
        if a.degree() <= trunc {
            add_term(&mut s.terms, a, c);
        }
        s
    }

    /// The variable `a_i`.
    pub fn var(n: usize, field: Field, i: usize, trunc: u32) -> Operator {
        Operator::term(Monomial::var(n, i), field.one(), trunc)
    }

    pub fn from_int_terms(n: usize, field: Field, trunc: u32, terms: &[(&[u32], i64)]) -> Operator {
        Operator::from_terms(
            n,
            field,
            trunc,
            terms.iter().map(|(e, c)| (Monomial::new(e.to_vec()), field.from_i64(*c))),
        )
    }

    pub fn from_terms(
        n: usize,
        field: Field,
        trunc: u32,
        terms: impl IntoIterator<Item = (Monomial, Scalar)>,
    ) -> Operator {
        let mut s = Operator::zero(n, field, trunc);
        for (m, c) in terms {
            debug_assert_eq!(m.arity(), n);
            if m.degree() <= trunc {
                add_term(&mut s.terms, m, c);
            }
        }
        s
    }

    pub fn arity(&self) -> usize {
        self.n
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn trunc(&self) -> u32 {
        self.trunc
    }

    /// Same series with a different truncation bound.
    pub fn with_trunc(&self, trunc: u32) -> Operator {
        Operator::from_terms(self.n, self.field, trunc, self.terms.iter().map(|(m, c)| (m.clone(), c.clone())))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Scalar)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &Monomial) -> Scalar {
        self.terms.get(m).cloned().unwrap_or_else(|| self.field.zero())
    }

    pub fn constant_term(&self) -> Scalar {
        self.coeff(&Monomial::one(self.n))
    }

    /// Lowest degree of a term; `None` for zero. Order zero means invertible.
    pub fn order(&self) -> Option<u32> {
        self.terms.keys().next().map(Monomial::degree)
    }

    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().next_back().map(Monomial::degree)
    }

    pub fn is_homogeneous(&self) -> bool {
        self.order() == self.degree()
    }

    pub fn part(&self, lo: u32, hi: u32) -> Operator {
        Operator::from_terms(
            self.n,
            self.field,
            self.trunc,
            self.terms.iter().filter(|(m, _)| (lo..=hi).contains(&m.degree())).map(|(m, c)| (m.clone(), c.clone())),
        )
    }

    pub fn homogeneous_part(&self, k: u32) -> Operator {
        self.part(k, k)
    }

    pub fn scale(&self, c: &Scalar) -> Operator {
        Operator::from_terms(self.n, self.field, self.trunc, self.terms.iter().map(|(m, v)| (m.clone(), v * c)))
    }

    fn check(&self, other: &Operator) -> Result<()> {
        if self.n != other.n {
            return Err(Error::ArityMismatch);
        }
        if self.field != other.field {
            return Err(Error::FieldMismatch);
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &Operator) -> Result<Operator> {
        self.check(other)?;
        let mut out = self.clone();
        out.trunc = self.trunc.min(other.trunc);
        out.terms.retain(|m, _| m.degree() <= out.trunc);
        for (m, c) in &other.terms {
            if m.degree() <= out.trunc {
                add_term(&mut out.terms, m.clone(), c.clone());
            }
        }
        Ok(out)
    }

    /// Product truncated at the smaller of the two bounds.
    pub fn checked_mul(&self, other: &Operator) -> Result<Operator> {
        self.check(other)?;
        let trunc = self.trunc.min(other.trunc);
        let mut out = Operator::zero(self.n, self.field, trunc);
        for (a, c) in &self.terms {
            let da = a.degree();
            if da > trunc {
                continue;
            }
            for (b, d) in &other.terms {
                if da + b.degree() <= trunc {
                    add_term(&mut out.terms, a.mul(b), c * d);
                }
            }
        }
        Ok(out)
    }

    pub fn pow(&self, e: u32) -> Operator {
        let mut acc = Operator::one(self.n, self.field, self.trunc);
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Formal partial derivative with respect to `a_i` (0-based index).
    pub fn partial_derivative(&self, i: usize) -> Result<Operator> {
        if i >= self.n {
            return Err(Error::IndexOutOfRange(i));
        }
        let mut out = Operator::zero(self.n, self.field, self.trunc);
        for (m, c) in &self.terms {
            let k = m.exps()[i];
            if k == 0 {
                continue;
            }
            let mut e = m.exps().to_vec();
            e[i] -= 1;
            add_term(&mut out.terms, Monomial::new(e), c * &self.field.from_i64(k as i64));
        }
        Ok(out)
    }

    /// Substitutes `a_j -> images[j]` (power series composition, truncated).
    pub fn substitute(&self, images: &[Operator]) -> Result<Operator> {
        if images.len() != self.n {
            return Err(Error::ArityMismatch);
        }
        let trunc = images.iter().map(Operator::trunc).fold(self.trunc, u32::min);
        let mut powers: Vec<Vec<Operator>> = images
            .iter()
            .map(|s| vec![Operator::one(self.n, self.field, trunc), s.with_trunc(trunc)])
            .collect();
        let mut out = Operator::zero(self.n, self.field, trunc);
        for (m, c) in &self.terms {
            let mut t = Operator::constant(self.n, c.clone(), trunc);
            for (j, &e) in m.exps().iter().enumerate() {
                while powers[j].len() <= e as usize {
                    let next = &powers[j][powers[j].len() - 1] * &powers[j][1];
                    powers[j].push(next);
                }
                t = &t * &powers[j][e as usize];
                if t.is_zero() {
                    break;
                }
            }
            out = &out + &t;
        }
        Ok(out)
    }
}

impl std::ops::Add for &Operator {
    type Output = Operator;
    fn add(self, o: &Operator) -> Operator {
        self.checked_add(o).expect("operators from different rings")
    }
}

impl std::ops::Sub for &Operator {
    type Output = Operator;
    fn sub(self, o: &Operator) -> Operator {
        self.checked_add(&o.scale(&o.field.one().neg())).expect("operators from different rings")
    }
}

impl std::ops::Neg for &Operator {
    type Output = Operator;
    fn neg(self) -> Operator {
        self.scale(&self.field.one().neg())
    }
}

impl std::ops::Mul for &Operator {
    type Output = Operator;
    fn mul(self, o: &Operator) -> Operator {
        self.checked_mul(o).expect("operators from different rings")
    }
}

impl std::ops::Add for &DPPoly {
    type Output = DPPoly;
    fn add(self, o: &DPPoly) -> DPPoly {
        self.checked_add(o).expect("polynomials from different rings")
    }
}

impl std::ops::Sub for &DPPoly {
    type Output = DPPoly;
    fn sub(self, o: &DPPoly) -> DPPoly {
        self.checked_add(&o.scale(&o.field.one().neg())).expect("polynomials from different rings")
    }
}

impl std::ops::Neg for &DPPoly {
    type Output = DPPoly;
    fn neg(self) -> DPPoly {
        self.scale(&self.field.one().neg())
    }
}

impl std::ops::Mul for &DPPoly {
    type Output = DPPoly;
    fn mul(self, o: &DPPoly) -> DPPoly {
        dp_mul(self, o).expect("polynomials from different rings")
    }
}

/// Contraction `a^a ⌟ x^[b] = x^[b-a]` when `a <= b`, extended bilinearly.
pub fn contract(sigma: &Operator, f: &DPPoly) -> Result<DPPoly> {
    if sigma.n != f.n {
        return Err(Error::ArityMismatch);
    }
    if sigma.field != f.field {
        return Err(Error::FieldMismatch);
    }
    let mut out = DPPoly::zero(f.n, f.field);
    for (a, c) in &sigma.terms {
        for (b, d) in f.terms.range(a.clone()..) {
            if a.divides(b) {
                add_term(&mut out.terms, a.complement_in(b), c * d);
            }
        }
    }
    Ok(out)
}

/// `<tau, f>`: the constant coefficient of `tau ⌟ f`.
pub fn pair(tau: &Operator, f: &DPPoly) -> Result<Scalar> {
    if tau.n != f.n {
        return Err(Error::ArityMismatch);
    }
    if tau.field != f.field {
        return Err(Error::FieldMismatch);
    }
    let mut acc = f.field.zero();
    for (m, c) in &tau.terms {
        if let Some(d) = f.terms.get(m) {
            acc = &acc + &(c * d);
        }
    }
    Ok(acc)
}

impl Operator {
    /// `self ⌟ f`; panics on mismatched rings.
    pub fn contract(&self, f: &DPPoly) -> DPPoly {
        contract(self, f).expect("operator and polynomial from different rings")
    }
}

/// A polynomial in ordinary (non-divided) monomials, the target of `omega`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassicalPoly {
    n: usize,
    field: Field,
    terms: BTreeMap<Monomial, Scalar>,
}

impl ClassicalPoly {
    pub fn from_terms(n: usize, field: Field, terms: impl IntoIterator<Item = (Monomial, Scalar)>) -> ClassicalPoly {
        let mut p = ClassicalPoly { n, field, terms: BTreeMap::new() };
        for (m, c) in terms {
            add_term(&mut p.terms, m, c);
        }
        p
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Scalar)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &Monomial) -> Scalar {
        self.terms.get(m).cloned().unwrap_or_else(|| self.field.zero())
    }

    pub fn arity(&self) -> usize {
        self.n
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().next_back().map(Monomial::degree)
    }

    /// Ordinary polynomial product.
    pub fn mul(&self, other: &ClassicalPoly) -> ClassicalPoly {
        let mut out = ClassicalPoly { n: self.n, field: self.field, terms: BTreeMap::new() };
        for (a, c) in &self.terms {
            for (b, d) in &other.terms {
                add_term(&mut out.terms, a.mul(b), c * d);
            }
        }
        out
    }
}

fn monomial_factorial(field: Field, m: &Monomial) -> Scalar {
    m.exps().iter().fold(field.one(), |acc, &e| &acc * &field.factorial(e as u64))
}

/// `x^[a] -> x^a / a!`, defined when the characteristic exceeds the degree.
pub fn omega(f: &DPPoly) -> Result<ClassicalPoly> {
    f.field.char_guard(f.degree().unwrap_or(0))?;
    let mut terms = Vec::new();
    for (m, c) in &f.terms {
        terms.push((m.clone(), c.div(&monomial_factorial(f.field, m))?));
    }
    Ok(ClassicalPoly::from_terms(f.n, f.field, terms))
}

/// Inverse of `omega`: `x^a -> a! x^[a]`.
pub fn omega_inv(g: &ClassicalPoly) -> Result<DPPoly> {
    g.field.char_guard(g.degree().unwrap_or(0))?;
    Ok(DPPoly::from_terms(
        g.n,
        g.field,
        g.terms.iter().map(|(m, c)| (m.clone(), c * &monomial_factorial(g.field, m))),
    ))
}

impl fmt::Display for DPPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&crate::text::format_dp(self))
    }
}

impl fmt::Display for Operator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&crate::text::format_operator(self))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const Q: Field = Field::Rationals;

    fn dp(n: usize, t: &[(&[u32], i64)]) -> DPPoly {
        DPPoly::from_int_terms(n, Q, t)
    }

    #[test]
    fn grlex_enumeration() {
        let m = monomials_of_degree(3, 2);
        assert_eq!(m.len(), 6);
        assert_eq!(m[0].exps(), &[2, 0, 0]);
        assert_eq!(m[5].exps(), &[0, 0, 2]);
        assert!(m.windows(2).all(|w| w[0] > w[1]));
        let w = monomials_in_window(2, 0, 3);
        assert_eq!(w.len(), 10);
        assert!(w.windows(2).all(|p| p[0] > p[1]));
        assert_eq!(count_of_degree(3, 4), 15);
    }

    #[test]
    fn dp_product_examples() {
        let x = DPPoly::var(2, Q, 0);
        assert_eq!(&x * &x, dp(2, &[(&[2, 0], 2)]));
        let f3 = Field::prime(3).unwrap();
        let x = DPPoly::var(1, f3, 0);
        assert!((&(&x * &x) * &x).is_zero());
        let f = dp(2, &[(&[2, 1], 3), (&[0, 1], -1)]);
        assert_eq!(&DPPoly::one(2, Q) * &f, f);
    }

    #[test]
    fn contraction_examples() {
        let f = dp(2, &[(&[2, 1], 1)]);
        let s = Operator::from_int_terms(2, Q, 3, &[(&[1, 1], 1)]);
        assert_eq!(s.contract(&f), dp(2, &[(&[1, 0], 1)]));
        let s = Operator::from_int_terms(2, Q, 3, &[(&[0, 2], 1)]);
        assert!(s.contract(&f).is_zero());
        assert_eq!(Operator::one(2, Q, 3).contract(&f), f);
    }

    #[test]
    fn pairing_examples() {
        let f = dp(2, &[(&[2, 1], 1)]);
        assert!(pair(&Operator::from_int_terms(2, Q, 3, &[(&[2, 1], 1)]), &f).unwrap().is_one());
        assert!(pair(&Operator::from_int_terms(2, Q, 3, &[(&[2, 0], 1)]), &f).unwrap().is_zero());
        let g = dp(2, &[(&[1, 2], 1)]);
        let ab = Operator::from_int_terms(2, Q, 3, &[(&[1, 1], 1)]);
        let b = Operator::var(2, Q, 1, 3);
        let lhs = pair(&ab, &b.contract(&g)).unwrap();
        assert_eq!(lhs, pair(&(&ab * &b), &g).unwrap());
        assert!(lhs.is_one());
    }

    #[test]
    fn top_degree_form() {
        let f = dp(4, &[(&[3, 0, 0, 0], 1), (&[0, 2, 1, 0], 1), (&[0, 0, 0, 2], 1)]);
        assert_eq!(f.tdf(), dp(4, &[(&[3, 0, 0, 0], 1), (&[0, 2, 1, 0], 1)]));
        assert_eq!((&f - &f).tdf().degree(), None);
    }

    #[test]
    fn derivatives() {
        let s = Operator::from_int_terms(2, Q, 5, &[(&[2, 1], 1)]);
        assert_eq!(s.partial_derivative(0).unwrap(), Operator::from_int_terms(2, Q, 5, &[(&[1, 1], 2)]));
        let f2 = Field::prime(2).unwrap();
        assert!(Operator::from_int_terms(2, f2, 5, &[(&[2, 0], 1)]).partial_derivative(0).unwrap().is_zero());
        assert!(Operator::from_int_terms(2, Q, 5, &[(&[3, 0], 1)]).partial_derivative(1).unwrap().is_zero());
        assert!(matches!(s.partial_derivative(2), Err(Error::IndexOutOfRange(2))));
    }

    #[test]
    fn omega_examples() {
        let w = omega(&dp(2, &[(&[4, 0], 1)])).unwrap();
        assert_eq!(w.coeff(&Monomial::new(vec![4, 0])), Q.from_ratio(1, 24).unwrap());
        let f3 = Field::prime(3).unwrap();
        assert!(omega(&DPPoly::term(Monomial::new(vec![3]), f3.one())).is_err());
        let f = dp(2, &[(&[2, 1], 3), (&[1, 0], 1)]);
        assert_eq!(omega_inv(&omega(&f).unwrap()).unwrap(), f);
    }

    #[test]
    fn truncated_products() {
        let a = Operator::var(1, Q, 0, 3);
        assert_eq!(a.pow(3), Operator::from_int_terms(1, Q, 3, &[(&[3], 1)]));
        assert!(a.pow(4).is_zero());
        let u = &Operator::one(1, Q, 3) + &a;
        assert_eq!(u.order(), Some(0));
        assert_eq!(a.order(), Some(1));
    }

    #[test]
    fn substitution() {
        // a -> a + a^2 applied to a^2 gives a^2 + 2a^3 + a^4, truncated at 3.
        let s = Operator::from_int_terms(1, Q, 3, &[(&[2], 1)]);
        let img = Operator::from_int_terms(1, Q, 3, &[(&[1], 1), (&[2], 1)]);
        assert_eq!(s.substitute(&[img]).unwrap(), Operator::from_int_terms(1, Q, 3, &[(&[2], 1), (&[3], 2)]));
    }
}
