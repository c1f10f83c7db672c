//! Exact row reduction over the rationals (fraction-free, integer rows) and
//! over prime fields.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::scalars::{mulmod, powmod, Field, Scalar};

#[derive(Clone, Debug)]
enum Rows {
    // Each row is primitive with a positive pivot.
    Q(Vec<Vec<BigInt>>),
    // Each row has pivot 1.
    P(u64, Vec<Vec<u64>>),
}

/// A matrix kept in reduced row echelon form while rows are inserted.
///
/// Rows are sorted by pivot column and every pivot column is zero in all
/// other rows.
#[derive(Clone, Debug)]
pub struct Echelon {
    field: Field,
    ncols: usize,
    pivots: Vec<usize>,
    rows: Rows,
}

fn to_integer_row(v: &[Scalar]) -> Vec<BigInt> {
    let mut den = BigInt::one();
    for s in v {
        if let Scalar::Rational(q) = s {
            if !q.denom().is_one() {
                den = den.lcm(q.denom());
            }
        }
    }
    v.iter()
        .map(|s| match s {
            Scalar::Rational(q) => q.numer() * (&den / q.denom()),
            _ => panic!("expected a rational scalar"),
        })
        .collect()
}

fn make_primitive(v: &mut [BigInt]) {
    let mut g = BigInt::zero();
    for x in v.iter() {
        if !x.is_zero() {
            g = g.gcd(x);
            if g.is_one() {
                break;
            }
        }
    }
    if g.is_zero() {
        return;
    }
    let first_negative = v.iter().find(|x| !x.is_zero()).is_some_and(|x| x.is_negative());
    if first_negative {
        g = -g;
    }
    if !g.is_one() {
        for x in v.iter_mut() {
            if !x.is_zero() {
                *x = &*x / &g;
            }
        }
    }
}

// v <- a*v - b*w where a = w[c]/g, b = v[c]/g, clearing column c.
fn eliminate_q(v: &mut [BigInt], w: &[BigInt], c: usize) {
    if v[c].is_zero() {
        return;
    }
    let g = v[c].gcd(&w[c]);
    let a = &w[c] / &g;
    let b = &v[c] / &g;
    for (x, y) in v.iter_mut().zip(w) {
        if y.is_zero() {
            if !a.is_one() && !x.is_zero() {
                *x *= &a;
            }
        } else {
            *x = &*x * &a - &b * y;
        }
    }
}

fn to_mod_row(v: &[Scalar], p: u64) -> Vec<u64> {
    v.iter()
        .map(|s| match s {
            Scalar::Modular { value, modulus } if *modulus == p => *value,
            _ => panic!("expected a scalar mod {p}"),
        })
        .collect()
}

fn eliminate_p(v: &mut [u64], w: &[u64], c: usize, p: u64) {
    let f = v[c];
    if f == 0 {
        return;
    }
    for (x, y) in v.iter_mut().zip(w) {
        if *y != 0 {
            *x = (*x + p - mulmod(f, *y, p)) % p;
        }
    }
}

impl Echelon {
    pub fn new(field: Field, ncols: usize) -> Echelon {
        let rows = match field {
            Field::Rationals => Rows::Q(Vec::new()),
            Field::Prime(p) => Rows::P(p, Vec::new()),
        };
        Echelon { field, ncols, pivots: Vec::new(), rows }
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Adds a row; returns whether it was independent of the existing rows.
    pub fn insert(&mut self, v: &[Scalar]) -> bool {
        assert_eq!(v.len(), self.ncols, "row of wrong length");
        match &mut self.rows {
            Rows::Q(rows) => {
                let mut v = to_integer_row(v);
                for (r, &pc) in rows.iter().zip(&self.pivots) {
                    eliminate_q(&mut v, r, pc);
                }
                let Some(pc) = v.iter().position(|x| !x.is_zero()) else {
                    return false;
                };
                make_primitive(&mut v);
                for r in rows.iter_mut() {
                    if !r[pc].is_zero() {
                        eliminate_q(r, &v, pc);
                        make_primitive(r);
                    }
                }
                let at = self.pivots.partition_point(|&q| q < pc);
                self.pivots.insert(at, pc);
                rows.insert(at, v);
                true
            }
            Rows::P(p, rows) => {
                let p = *p;
                let mut v = to_mod_row(v, p);
                for (r, &pc) in rows.iter().zip(&self.pivots) {
                    eliminate_p(&mut v, r, pc, p);
                }
                let Some(pc) = v.iter().position(|&x| x != 0) else {
                    return false;
                };
                let inv = powmod(v[pc], p - 2, p);
                for x in v.iter_mut() {
                    *x = mulmod(*x, inv, p);
                }
                for r in rows.iter_mut() {
                    eliminate_p(r, &v, pc, p);
                }
                let at = self.pivots.partition_point(|&q| q < pc);
                self.pivots.insert(at, pc);
                rows.insert(at, v);
                true
            }
        }
    }

    /// Whether `v` lies in the row space.
    pub fn contains(&self, v: &[Scalar]) -> bool {
        match &self.rows {
            Rows::Q(rows) => {
                let mut v = to_integer_row(v);
                for (r, &pc) in rows.iter().zip(&self.pivots) {
                    eliminate_q(&mut v, r, pc);
                }
                v.iter().all(Zero::is_zero)
            }
            Rows::P(p, rows) => {
                let mut v = to_mod_row(v, *p);
                for (r, &pc) in rows.iter().zip(&self.pivots) {
                    eliminate_p(&mut v, r, pc, *p);
                }
                v.iter().all(|&x| x == 0)
            }
        }
    }

    /// The unique representative of `v` modulo the row space with zero pivot entries,
    /// together with the coefficients `c` such that `v = remainder + sum c_i rref_row_i`.
    pub fn reduce(&self, v: &[Scalar]) -> (Vec<Scalar>, Vec<Scalar>) {
        let rref = self.rref();
        let mut rem = v.to_vec();
        let mut coeffs = Vec::with_capacity(rref.len());
        for (r, &pc) in rref.iter().zip(&self.pivots) {
            let c = rem[pc].clone();
            if !c.is_zero() {
                for (x, y) in rem.iter_mut().zip(r) {
                    if !y.is_zero() {
                        *x = &*x - &(&c * y);
                    }
                }
            }
            coeffs.push(c);
        }
        (rem, coeffs)
    }

    /// Rows normalised to have pivot 1.
    pub fn rref(&self) -> Vec<Vec<Scalar>> {
        match &self.rows {
            Rows::Q(rows) => rows
                .iter()
                .zip(&self.pivots)
                .map(|(r, &pc)| {
                    r.iter().map(|x| Scalar::Rational(BigRational::new(x.clone(), r[pc].clone()))).collect()
                })
                .collect(),
            Rows::P(p, rows) => rows
                .iter()
                .map(|r| r.iter().map(|&x| Scalar::Modular { value: x, modulus: *p }).collect())
                .collect(),
        }
    }
}

/// Builds the echelon form of a list of rows.
pub fn echelon(field: Field, ncols: usize, rows: &[Vec<Scalar>]) -> Echelon {
    let mut e = Echelon::new(field, ncols);
    for r in rows {
        e.insert(r);
    }
    e
}

/// Basis of `{x : A x = 0}` where `A` is given by its rows, one vector per free column.
pub fn kernel(field: Field, ncols: usize, equations: &[Vec<Scalar>]) -> Vec<Vec<Scalar>> {
    let e = echelon(field, ncols, equations);
    let rref = e.rref();
    let mut out = Vec::new();
    let mut is_pivot = vec![false; ncols];
    for &pc in e.pivots() {
        is_pivot[pc] = true;
    }
    for free in (0..ncols).filter(|&c| !is_pivot[c]) {
        let mut v = vec![field.zero(); ncols];
        v[free] = field.one();
        for (r, &pc) in rref.iter().zip(e.pivots()) {
            v[pc] = r[free].neg();
        }
        out.push(v);
    }
    out
}

/// A solution of `A x = b` (free variables set to zero), or `None`.
pub fn solve(field: Field, ncols: usize, equations: &[Vec<Scalar>], rhs: &[Scalar]) -> Option<Vec<Scalar>> {
    assert_eq!(equations.len(), rhs.len());
    let aug: Vec<Vec<Scalar>> = equations
        .iter()
        .zip(rhs)
        .map(|(r, b)| {
            let mut r = r.clone();
            r.push(b.clone());
            r
        })
        .collect();
    let e = echelon(field, ncols + 1, &aug);
    if e.pivots().contains(&ncols) {
        return None;
    }
    let mut x = vec![field.zero(); ncols];
    for (r, &pc) in e.rref().iter().zip(e.pivots()) {
        x[pc] = r[ncols].clone();
    }
    Some(x)
}

/// Determinant by elimination; used to validate linear substitutions.
pub fn determinant(field: Field, m: &[Vec<Scalar>]) -> Scalar {
    let n = m.len();
    let mut a: Vec<Vec<Scalar>> = m.to_vec();
    let mut det = field.one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&r| !a[r][c].is_zero()) else {
            return field.zero();
        };
        if p != c {
            a.swap(p, c);
            det = det.neg();
        }
        det = &det * &a[c][c];
        let inv = a[c][c].inverse().expect("nonzero pivot");
        for r in c + 1..n {
            if a[r][c].is_zero() {
                continue;
            }
            let f = &a[r][c] * &inv;
            for k in c..n {
                let t = &f * &a[c][k];
                a[r][k] = &a[r][k] - &t;
            }
        }
    }
    det
}

/// Inverse of a square matrix, or `None` when singular.
pub fn inverse(field: Field, m: &[Vec<Scalar>]) -> Option<Vec<Vec<Scalar>>> {
    let n = m.len();
    let mut cols = Vec::with_capacity(n);
    for j in 0..n {
        let e: Vec<Scalar> = (0..n).map(|i| if i == j { field.one() } else { field.zero() }).collect();
        cols.push(solve(field, n, m, &e)?);
    }
    if determinant(field, m).is_zero() {
        return None;
    }
    Some((0..n).map(|i| (0..n).map(|j| cols[j][i].clone()).collect()).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(v: &[i64]) -> Vec<Scalar> {
        v.iter().map(|&x| Field::Rationals.from_i64(x)).collect()
    }

    #[test]
    fn rank_and_rref_are_canonical() {
        let a = echelon(Field::Rationals, 3, &[q(&[2, 4, 6]), q(&[1, 1, 1])]);
        let b = echelon(Field::Rationals, 3, &[q(&[1, 1, 1]), q(&[0, 1, 2]), q(&[3, 5, 7])]);
        assert_eq!(a.rank(), 2);
        assert_eq!(a.rref(), b.rref());
        assert_eq!(a.rref(), vec![q(&[1, 0, -1]), q(&[0, 1, 2])]);
    }

    #[test]
    fn kernel_and_solve() {
        let eqs = vec![q(&[1, 1, 0]), q(&[0, 1, 1])];
        let k = kernel(Field::Rationals, 3, &eqs);
        assert_eq!(k, vec![q(&[1, -1, 1])]);
        let x = solve(Field::Rationals, 3, &eqs, &q(&[2, 3])).unwrap();
        assert_eq!(x, q(&[-1, 3, 0]));
        assert!(solve(Field::Rationals, 2, &[q(&[1, 1]), q(&[2, 2])], &q(&[1, 3])).is_none());
    }

    #[test]
    fn modular_elimination() {
        let f = Field::prime(7).unwrap();
        let rows: Vec<Vec<Scalar>> = vec![vec![f.from_i64(2), f.from_i64(3)], vec![f.from_i64(4), f.from_i64(6)]];
        let e = echelon(f, 2, &rows);
        assert_eq!(e.rank(), 1);
        assert_eq!(e.rref()[0][1], f.from_ratio(3, 2).unwrap());
    }

    #[test]
    fn reduce_gives_remainder() {
        let e = echelon(Field::Rationals, 3, &[q(&[1, 0, 1])]);
        let (rem, c) = e.reduce(&q(&[2, 1, 0]));
        assert_eq!(rem, q(&[0, 1, -2]));
        assert_eq!(c, q(&[2]));
        assert!(e.contains(&q(&[3, 0, 3])));
    }

    #[test]
    fn determinants() {
        assert_eq!(determinant(Field::Rationals, &[q(&[0, 1]), q(&[1, 0])]), Field::Rationals.from_i64(-1));
        let inv = inverse(Field::Rationals, &[q(&[2, 0]), q(&[1, 1])]).unwrap();
        assert_eq!(inv[0][0], Field::Rationals.from_ratio(1, 2).unwrap());
        assert_eq!(inv[1][0], Field::Rationals.from_ratio(-1, 2).unwrap());
        assert!(inverse(Field::Rationals, &[q(&[1, 2]), q(&[2, 4])]).is_none());
    }
}
