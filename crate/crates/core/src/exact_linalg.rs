//! Exact linear algebra over a [`Scalar`] field.
//!
//! Ranks are computed on sparse vectors with leading-index pivots. Over the
//! rationals the vectors are scaled to primitive integer vectors and reduced
//! fraction-free (cross multiplication followed by content removal), which
//! keeps entries small on the structured operators produced by this crate.

use std::collections::HashMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::scalar::{Rational, Scalar};

/// A finite-dimensional unital algebra element with coordinates in a fixed basis.
pub trait AlgebraElement<S: Scalar>: Clone {
    /// Dimension of the ambient algebra.
    fn dimension(&self) -> usize;
    /// Dense coordinate vector of length [`AlgebraElement::dimension`].
    fn coordinates(&self) -> Vec<S>;
    fn one_like(&self) -> Self;
    fn algebra_mul(&self, rhs: &Self) -> Self;
    fn algebra_add(&self, rhs: &Self) -> Self;
    fn algebra_scale(&self, c: &S) -> Self;
    fn is_zero_element(&self) -> bool;
}

/// Dense row-major matrix over `S`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExactMatrix<S> {
    rows: usize,
    cols: usize,
    data: Vec<S>,
}

impl<S: Scalar> ExactMatrix<S> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        ExactMatrix {
            rows,
            cols,
            data: vec![S::zero(); rows * cols],
        }
    }

    pub fn identity(d: usize) -> Self {
        let mut m = Self::zeros(d, d);
        for i in 0..d {
            m.data[i * d + i] = S::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<S>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        if rows.iter().any(|x| x.len() != c) {
            return Err(Error::DimensionMismatch("rows of unequal length".into()));
        }
        Ok(ExactMatrix {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        })
    }

    pub fn from_columns(cols: Vec<Vec<S>>, nrows: usize) -> Result<Self> {
        if cols.iter().any(|x| x.len() != nrows) {
            return Err(Error::DimensionMismatch("columns of unequal length".into()));
        }
        let mut m = Self::zeros(nrows, cols.len());
        for (j, col) in cols.into_iter().enumerate() {
            for (i, v) in col.into_iter().enumerate() {
                m.data[i * m.cols + j] = v;
            }
        }
        Ok(m)
    }

    pub fn from_i64(rows: &[Vec<i64>]) -> Result<Self> {
        Self::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&v| S::from_i64(v)).collect())
                .collect(),
        )
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &S {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: S) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[S] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<S> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.data[j * self.rows + i] = self.get(i, j).clone();
            }
        }
        t
    }

    pub fn diagonal(&self) -> Vec<S> {
        (0..self.rows.min(self.cols))
            .map(|i| self.get(i, i).clone())
            .collect()
    }

    /// True when every entry strictly above the diagonal is zero.
    pub fn is_lower_triangular(&self) -> bool {
        (0..self.rows).all(|i| ((i + 1)..self.cols).all(|j| self.get(i, j).is_zero()))
    }

    pub fn matmul(&self, rhs: &Self) -> Result<Self> {
        if self.cols != rhs.rows {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        let mut out = Self::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = rhs.get(k, j);
                    if !b.is_zero() {
                        out.data[i * rhs.cols + j] += &(a.clone() * b.clone());
                    }
                }
            }
        }
        Ok(out)
    }

    /// `self - lambda * I`.
    pub fn shifted(&self, lambda: &S) -> Result<Self> {
        if !self.is_square() {
            return Err(Error::DimensionMismatch(
                "shift of a non-square matrix".into(),
            ));
        }
        let mut m = self.clone();
        for i in 0..self.rows {
            m.data[i * self.cols + i] -= lambda;
        }
        Ok(m)
    }

    pub fn rank(&self) -> usize {
        rank(self)
    }

    pub fn kernel_dim(&self) -> usize {
        kernel_dim(self)
    }
}

impl<S: Scalar> fmt::Display for ExactMatrix<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let r: Vec<String> = self.row(i).iter().map(|v| v.to_string()).collect();
            writeln!(f, "[{}]", r.join(", "))?;
        }
        Ok(())
    }
}

impl<S: Scalar> AlgebraElement<S> for ExactMatrix<S> {
    fn dimension(&self) -> usize {
        self.rows * self.cols
    }

    fn coordinates(&self) -> Vec<S> {
        self.data.clone()
    }

    fn one_like(&self) -> Self {
        Self::identity(self.rows)
    }

    fn algebra_mul(&self, rhs: &Self) -> Self {
        self.matmul(rhs).expect("square matrices of equal size")
    }

    fn algebra_add(&self, rhs: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        let data = self
            .data
            .iter()
            .zip(&rhs.data)
            .map(|(a, b)| a.clone() + b.clone())
            .collect();
        ExactMatrix {
            rows: self.rows,
            cols: self.cols,
            data,
        }
    }

    fn algebra_scale(&self, c: &S) -> Self {
        let data = self.data.iter().map(|a| a.clone() * c.clone()).collect();
        ExactMatrix {
            rows: self.rows,
            cols: self.cols,
            data,
        }
    }

    fn is_zero_element(&self) -> bool {
        self.data.iter().all(|v| v.is_zero())
    }
}

type SparseVec<T> = Vec<(usize, T)>;

fn to_sparse<S: Scalar>(v: Vec<S>) -> SparseVec<S> {
    v.into_iter()
        .enumerate()
        .filter(|(_, x)| !x.is_zero())
        .collect()
}

/// Rank of the vectors `rows` (each of length `ncols`) by sparse elimination
/// over the field. Vectors are inserted sparsest first; each is reduced
/// against the pivots that share its leading index.
pub fn sparse_rank<S: Scalar>(rows: Vec<Vec<S>>, ncols: usize) -> usize {
    let mut vecs: Vec<SparseVec<S>> = rows
        .into_iter()
        .map(|r| {
            debug_assert_eq!(r.len(), ncols);
            to_sparse(r)
        })
        .filter(|r| !r.is_empty())
        .collect();
    vecs.sort_by_key(|v| v.len());
    let mut pivots: HashMap<usize, SparseVec<S>> = HashMap::new();
    for mut v in vecs {
        while let Some(&(lead, _)) = v.first() {
            match pivots.get(&lead) {
                None => {
                    let inv = v[0].1.inverse().expect("nonzero leading entry");
                    for e in v.iter_mut() {
                        e.1 *= &inv;
                    }
                    pivots.insert(lead, v);
                    break;
                }
                Some(p) => {
                    let c = v[0].1.clone();
                    v = axpy_sparse(&v, &c, p);
                }
            }
        }
    }
    pivots.len()
}

/// `v - c * p` on sorted sparse vectors, dropping zeros.
fn axpy_sparse<S: Scalar>(v: &SparseVec<S>, c: &S, p: &SparseVec<S>) -> SparseVec<S> {
    let mut out = Vec::with_capacity(v.len() + p.len());
    let (mut i, mut j) = (0, 0);
    while i < v.len() || j < p.len() {
        let vi = v.get(i).map_or(usize::MAX, |e| e.0);
        let pj = p.get(j).map_or(usize::MAX, |e| e.0);
        if vi < pj {
            out.push(v[i].clone());
            i += 1;
        } else if pj < vi {
            out.push((pj, -(c.clone() * p[j].1.clone())));
            j += 1;
        } else {
            let x = v[i].1.clone() - c.clone() * p[j].1.clone();
            if !x.is_zero() {
                out.push((vi, x));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

fn primitive_integer(v: Vec<Rational>) -> SparseVec<BigInt> {
    let lcm = v.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let ints: SparseVec<BigInt> = v
        .into_iter()
        .enumerate()
        .filter(|(_, x)| !x.is_zero())
        .map(|(i, x)| (i, x.numer() * (&lcm / x.denom())))
        .collect();
    make_primitive(ints)
}

fn make_primitive(mut v: SparseVec<BigInt>) -> SparseVec<BigInt> {
    let g = v.iter().fold(BigInt::zero(), |acc, (_, x)| acc.gcd(x));
    if !g.is_zero() && !g.is_one() {
        for e in v.iter_mut() {
            e.1 /= &g;
        }
    }
    v
}

/// Rank over the rationals by fraction-free elimination on primitive integer
/// vectors.
pub fn fraction_free_rank(rows: Vec<Vec<Rational>>, ncols: usize) -> usize {
    let mut vecs: Vec<SparseVec<BigInt>> = rows
        .into_iter()
        .map(|r| {
            debug_assert_eq!(r.len(), ncols);
            primitive_integer(r)
        })
        .filter(|r| !r.is_empty())
        .collect();
    vecs.sort_by_key(|v| v.len());
    let mut pivots: HashMap<usize, SparseVec<BigInt>> = HashMap::new();
    for mut v in vecs {
        while let Some(&(lead, _)) = v.first() {
            match pivots.get(&lead) {
                None => {
                    pivots.insert(lead, v);
                    break;
                }
                Some(p) => {
                    let g = v[0].1.gcd(&p[0].1);
                    let a = &p[0].1 / &g;
                    let b = &v[0].1 / &g;
                    v = make_primitive(cross_sparse(&a, &v, &b, p));
                }
            }
        }
    }
    pivots.len()
}

/// `a * v - b * p`, dropping zeros.
fn cross_sparse(
    a: &BigInt,
    v: &SparseVec<BigInt>,
    b: &BigInt,
    p: &SparseVec<BigInt>,
) -> SparseVec<BigInt> {
    let mut out = Vec::with_capacity(v.len() + p.len());
    let (mut i, mut j) = (0, 0);
    while i < v.len() || j < p.len() {
        let vi = v.get(i).map_or(usize::MAX, |e| e.0);
        let pj = p.get(j).map_or(usize::MAX, |e| e.0);
        if vi < pj {
            out.push((vi, a * &v[i].1));
            i += 1;
        } else if pj < vi {
            out.push((pj, -(b * &p[j].1)));
            j += 1;
        } else {
            let x = a * &v[i].1 - b * &p[j].1;
            if !x.is_zero() {
                out.push((vi, x));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

/// Exact rank (computed on the columns).
pub fn rank<S: Scalar>(m: &ExactMatrix<S>) -> usize {
    let cols = (0..m.cols).map(|j| m.column(j)).collect();
    S::rank_of_rows(cols, m.rows)
}

/// `cols - rank`.
pub fn kernel_dim<S: Scalar>(m: &ExactMatrix<S>) -> usize {
    m.cols - rank(m)
}

/// Some `x` with `m x = b`, or `None` when the system is inconsistent.
pub fn solve<S: Scalar>(m: &ExactMatrix<S>, b: &[S]) -> Result<Option<Vec<S>>> {
    if b.len() != m.rows {
        return Err(Error::DimensionMismatch(format!(
            "matrix has {} rows, right side has {}",
            m.rows,
            b.len()
        )));
    }
    let (r, c) = (m.rows, m.cols);
    let mut a: Vec<Vec<S>> = (0..r)
        .map(|i| {
            let mut row = m.row(i).to_vec();
            row.push(b[i].clone());
            row
        })
        .collect();
    let mut pivot_cols = Vec::new();
    let mut pr = 0;
    for col in 0..c {
        let Some(sel) = (pr..r).find(|&i| !a[i][col].is_zero()) else {
            continue;
        };
        a.swap(pr, sel);
        let inv = a[pr][col].inverse().expect("nonzero pivot");
        for e in a[pr].iter_mut() {
            *e *= &inv;
        }
        let prow = a[pr].clone();
        for (i, row) in a.iter_mut().enumerate() {
            if i == pr || row[col].is_zero() {
                continue;
            }
            let f = row[col].clone();
            for (x, y) in row.iter_mut().zip(&prow) {
                if !y.is_zero() {
                    *x -= &(f.clone() * y.clone());
                }
            }
        }
        pivot_cols.push(col);
        pr += 1;
        if pr == r {
            break;
        }
    }
    if a[pr..].iter().any(|row| !row[c].is_zero()) {
        return Ok(None);
    }
    let mut x = vec![S::zero(); c];
    for (i, &col) in pivot_cols.iter().enumerate() {
        x[col] = a[i][c].clone();
    }
    Ok(Some(x))
}

/// Matrix of right multiplication by `a`: column `j` holds the coordinates
/// of `basis[j] * a`.
pub fn right_mult_matrix<S: Scalar, A: AlgebraElement<S>>(a: &A, basis: &[A]) -> ExactMatrix<S> {
    let d = a.dimension();
    let cols = basis
        .iter()
        .map(|b| b.algebra_mul(a).coordinates())
        .collect();
    ExactMatrix::from_columns(cols, d).expect("coordinates have the ambient dimension")
}

/// `dim ker(m - lambda I)`.
pub fn eigen_multiplicity<S: Scalar>(m: &ExactMatrix<S>, lambda: &S) -> Result<usize> {
    Ok(kernel_dim(&m.shifted(lambda)?))
}

/// Polynomial over `S`, coefficients lowest degree first, no trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Polynomial<S> {
    coeffs: Vec<S>,
}

impl<S: Scalar> Polynomial<S> {
    pub fn new(mut coeffs: Vec<S>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Polynomial { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| S::from_i64(c)).collect())
    }

    pub fn zero() -> Self {
        Polynomial { coeffs: vec![] }
    }

    pub fn one() -> Self {
        Polynomial {
            coeffs: vec![S::one()],
        }
    }

    /// `x - root`.
    pub fn linear(root: &S) -> Self {
        Polynomial {
            coeffs: vec![-root.clone(), S::one()],
        }
    }

    pub fn coeffs(&self) -> &[S] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&S> {
        self.coeffs.last()
    }

    pub fn is_monic(&self) -> bool {
        self.leading().is_some_and(|c| c.is_one())
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        if self.is_zero() || rhs.is_zero() {
            return Self::zero();
        }
        let mut out = vec![S::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += &(a.clone() * b.clone());
            }
        }
        Self::new(out)
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        let z = S::zero();
        Self::new(
            (0..len)
                .map(|i| {
                    self.coeffs.get(i).unwrap_or(&z).clone()
                        + rhs.coeffs.get(i).unwrap_or(&z).clone()
                })
                .collect(),
        )
    }

    pub fn scale(&self, c: &S) -> Self {
        Self::new(self.coeffs.iter().map(|a| a.clone() * c.clone()).collect())
    }

    pub fn eval(&self, x: &S) -> S {
        self.coeffs
            .iter()
            .rev()
            .fold(S::zero(), |acc, c| acc * x.clone() + c.clone())
    }

    /// Quotient and remainder; panics on division by zero.
    pub fn div_rem(&self, d: &Self) -> (Self, Self) {
        let dl = d
            .leading()
            .expect("division by the zero polynomial")
            .inverse()
            .expect("nonzero");
        let dd = d.coeffs.len() - 1;
        let mut r = self.coeffs.clone();
        if r.len() <= dd {
            return (Self::zero(), self.clone());
        }
        let mut q = vec![S::zero(); r.len() - dd];
        for i in (0..q.len()).rev() {
            let c = r[i + dd].clone() * dl.clone();
            if !c.is_zero() {
                for (j, dc) in d.coeffs.iter().enumerate() {
                    r[i + j] -= &(c.clone() * dc.clone());
                }
            }
            q[i] = c;
        }
        r.truncate(dd);
        (Self::new(q), Self::new(r))
    }

    /// True when `self` divides `other`.
    pub fn divides(&self, other: &Self) -> bool {
        other.div_rem(self).1.is_zero()
    }

    /// `f(a)` by Horner's rule inside the algebra.
    pub fn eval_at<A: AlgebraElement<S>>(&self, a: &A) -> A {
        poly_eval_at_element(self, a)
    }

    /// Integer roots with multiplicities when the polynomial is monic of
    /// characteristic zero and splits into integer linear factors.
    pub fn integer_roots(&self) -> Option<Vec<(i64, usize)>> {
        if S::characteristic() != 0 || !self.is_monic() {
            return None;
        }
        let d = self.degree()?;
        if d == 0 {
            return Some(vec![]);
        }
        // sum of squares of the roots bounds each of them
        let a1 = self.coeffs[d - 1].clone();
        let a2 = if d >= 2 {
            self.coeffs[d - 2].clone()
        } else {
            S::zero()
        };
        let sq = (a1.clone() * a1 - S::from_i64(2) * a2).to_i64()?;
        if sq < 0 {
            return None;
        }
        let bound = (sq as f64).sqrt().ceil() as i64 + 1;
        let mut rest = self.clone();
        let mut roots = Vec::new();
        for r in -bound..=bound {
            let lin = Self::linear(&S::from_i64(r));
            let mut mult = 0;
            loop {
                let (q, rem) = rest.div_rem(&lin);
                if !rem.is_zero() {
                    break;
                }
                rest = q;
                mult += 1;
            }
            if mult > 0 {
                roots.push((r, mult));
            }
        }
        (rest.degree() == Some(0)).then_some(roots)
    }

    /// Coefficient form, highest degree first: `x^3 - 2x^2 + x`.
    pub fn to_coefficient_string(&self) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut out = String::new();
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let s = c.to_string();
            let (neg, mag) = match s.strip_prefix('-') {
                Some(m) => (true, m.to_string()),
                None => (false, s),
            };
            if out.is_empty() {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let mono = match i {
                0 => String::new(),
                1 => "x".into(),
                _ => format!("x^{i}"),
            };
            if mono.is_empty() || mag != "1" {
                if mag.contains('/') && !mono.is_empty() {
                    out.push_str(&format!("({mag})"));
                } else {
                    out.push_str(&mag);
                }
            }
            out.push_str(&mono);
        }
        out
    }

    /// Factored form `(x + 2)x(x - 1)^2` when [`Polynomial::integer_roots`]
    /// succeeds.
    pub fn to_factored_string(&self) -> Option<String> {
        let roots = self.integer_roots()?;
        if roots.is_empty() {
            return Some("1".into());
        }
        let mut out = String::new();
        for (r, m) in roots {
            let f = match r {
                0 => "x".to_string(),
                r if r < 0 => format!("(x + {})", -r),
                r => format!("(x - {r})"),
            };
            out.push_str(&f);
            if m > 1 {
                out.push_str(&format!("^{m}"));
            }
        }
        Some(out)
    }

    /// Factored form when available, coefficient form otherwise.
    pub fn pretty(&self) -> String {
        self.to_factored_string()
            .unwrap_or_else(|| self.to_coefficient_string())
    }

    /// `{"coefficients": [...], "factored": ...}`; `factored` is null unless
    /// every root is an integer.
    pub fn to_json(&self) -> Value {
        let coeffs: Vec<String> = self.coeffs.iter().map(|c| c.to_string()).collect();
        json!({ "coefficients": coeffs, "factored": self.to_factored_string() })
    }
}

impl<S: Scalar> fmt::Display for Polynomial<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_coefficient_string())
    }
}

pub fn poly_mul<S: Scalar>(a: &Polynomial<S>, b: &Polynomial<S>) -> Polynomial<S> {
    a.mul(b)
}

/// `∏ (x - k)` over the distinct elements of `roots`.
pub fn poly_from_roots<S: Scalar>(roots: &[S]) -> Polynomial<S> {
    let mut seen: Vec<&S> = Vec::new();
    let mut p = Polynomial::one();
    for r in roots {
        if !seen.contains(&r) {
            seen.push(r);
            p = p.mul(&Polynomial::linear(r));
        }
    }
    p
}

/// `f(a)` by Horner's rule.
pub fn poly_eval_at_element<S: Scalar, A: AlgebraElement<S>>(f: &Polynomial<S>, a: &A) -> A {
    let one = a.one_like();
    let mut acc = one.algebra_scale(&S::zero());
    for c in f.coeffs.iter().rev() {
        acc = acc.algebra_mul(a).algebra_add(&one.algebra_scale(c));
    }
    acc
}

/// Minimal polynomial of `a` from the first linear dependence among
/// `1, a, a^2, ...`.
///
/// The power vectors are kept reduced against each other (pivot entries equal
/// to one, zeros at earlier pivots), together with their expressions in the
/// powers of `a`; a power that reduces to zero yields the monic dependence.
pub fn krylov_min_poly<S: Scalar, A: AlgebraElement<S>>(a: &A) -> Polynomial<S> {
    let dim = a.dimension();
    let mut basis: Vec<(usize, Vec<S>, Vec<S>)> = Vec::new();
    let mut power = a.one_like();
    for k in 0..=dim {
        let mut v = power.coordinates();
        let mut comb = vec![S::zero(); k + 1];
        comb[k] = S::one();
        for (piv, bv, bc) in &basis {
            let c = v[*piv].clone();
            if c.is_zero() {
                continue;
            }
            for (x, y) in v.iter_mut().zip(bv) {
                if !y.is_zero() {
                    *x -= &(c.clone() * y.clone());
                }
            }
            for (x, y) in comb.iter_mut().zip(bc) {
                if !y.is_zero() {
                    *x -= &(c.clone() * y.clone());
                }
            }
        }
        match v.iter().position(|x| !x.is_zero()) {
            None => return Polynomial::new(comb),
            Some(piv) => {
                let inv = v[piv].inverse().expect("nonzero pivot");
                for x in v.iter_mut() {
                    *x *= &inv;
                }
                for x in comb.iter_mut() {
                    *x *= &inv;
                }
                basis.push((piv, v, comb));
            }
        }
        power = power.algebra_mul(a);
    }
    unreachable!("more than dim + 1 vectors are always dependent")
}

/// Minimal polynomial of a square matrix.
pub fn matrix_min_poly<S: Scalar>(m: &ExactMatrix<S>) -> Result<Polynomial<S>> {
    if !m.is_square() {
        return Err(Error::DimensionMismatch(
            "minimal polynomial of a non-square matrix".into(),
        ));
    }
    Ok(krylov_min_poly(m))
}

/// Parse a list of integer or "p/q" strings as rational polynomial coefficients.
pub fn rational_poly(coeffs: &[&str]) -> Result<Polynomial<Rational>> {
    Ok(Polynomial::new(
        coeffs
            .iter()
            .map(|c| crate::scalar::parse_rational(c))
            .collect::<Result<_>>()?,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Fp;

    type Q = Rational;

    fn q(v: i64) -> Q {
        Q::from_i64(v)
    }

    #[test]
    fn rank_examples() {
        let id = ExactMatrix::<Q>::identity(4);
        assert_eq!(id.rank(), 4);
        assert_eq!(id.kernel_dim(), 0);
        let z = ExactMatrix::<Q>::zeros(3, 3);
        assert_eq!(z.rank(), 0);
        assert_eq!(z.kernel_dim(), 3);
        let m = ExactMatrix::<Q>::from_i64(&[vec![1, 2], vec![2, 4]]).unwrap();
        assert_eq!(m.rank(), 1);
        let m = ExactMatrix::<Fp<7>>::from_i64(&[vec![1, 2], vec![2, 4]]).unwrap();
        assert_eq!(m.rank(), 1);
    }

    #[test]
    fn rank_with_fractions() {
        let m = ExactMatrix::<Q>::from_rows(vec![
            vec![Q::new(1.into(), 2.into()), q(1), q(0)],
            vec![q(1), q(2), q(0)],
            vec![q(0), Q::new(1.into(), 3.into()), q(5)],
        ])
        .unwrap();
        assert_eq!(m.rank(), 2);
        assert_eq!(m.transpose().rank(), 2);
    }

    #[test]
    fn solve_consistent_and_inconsistent() {
        let m = ExactMatrix::<Q>::from_i64(&[vec![1, 1], vec![1, -1], vec![2, 0]]).unwrap();
        let x = solve(&m, &[q(3), q(1), q(4)]).unwrap().unwrap();
        assert_eq!(x, vec![q(2), q(1)]);
        assert_eq!(solve(&m, &[q(3), q(1), q(5)]).unwrap(), None);
        assert!(solve(&m, &[q(1)]).is_err());
    }

    #[test]
    fn eigen_multiplicity_examples() {
        let id = ExactMatrix::<Q>::identity(3);
        assert_eq!(eigen_multiplicity(&id, &q(1)).unwrap(), 3);
        assert_eq!(eigen_multiplicity(&id, &q(0)).unwrap(), 0);
        let d = ExactMatrix::<Q>::from_i64(&[vec![2, 0, 0], vec![0, 2, 0], vec![0, 0, 3]]).unwrap();
        assert_eq!(eigen_multiplicity(&d, &q(2)).unwrap(), 2);
    }

    #[test]
    fn polynomial_from_roots() {
        assert_eq!(
            poly_from_roots(&[q(0), q(2)]),
            Polynomial::from_i64(&[0, -2, 1])
        );
        assert_eq!(
            poly_from_roots(&[q(0), q(2), q(2)]),
            Polynomial::from_i64(&[0, -2, 1])
        );
        assert_eq!(
            poly_from_roots(&[q(-2), q(0), q(1), q(4)]),
            Polynomial::from_i64(&[0, 8, -6, -3, 1])
        );
    }

    #[test]
    fn polynomial_formatting() {
        let p = Polynomial::<Q>::from_i64(&[0, 8, -6, -3, 1]);
        assert_eq!(p.to_coefficient_string(), "x^4 - 3x^3 - 6x^2 + 8x");
        assert_eq!(p.to_factored_string().unwrap(), "(x + 2)x(x - 1)(x - 4)");
        let p = Polynomial::<Q>::from_i64(&[0, 1, -2, 1]);
        assert_eq!(p.to_factored_string().unwrap(), "x(x - 1)^2");
        let p = Polynomial::<Q>::from_i64(&[1, 0, 1]);
        assert_eq!(p.to_factored_string(), None);
        assert_eq!(p.pretty(), "x^2 + 1");
        let p = Polynomial::<Fp<3>>::from_i64(&[0, 1, -2, 1]);
        assert_eq!(p.to_factored_string(), None);
        assert_eq!(p.to_coefficient_string(), "x^3 + x^2 + x");
        assert_eq!(Polynomial::<Q>::zero().to_string(), "0");
        assert_eq!(Polynomial::<Q>::linear(&q(-3)).to_string(), "x + 3");
    }

    #[test]
    fn division() {
        let p = poly_from_roots(&[q(1), q(2), q(3)]);
        let d = poly_from_roots(&[q(2)]);
        let (quo, rem) = p.div_rem(&d);
        assert!(rem.is_zero());
        assert_eq!(quo, poly_from_roots(&[q(1), q(3)]));
        assert!(d.divides(&p));
        assert!(!poly_from_roots(&[q(5)]).divides(&p));
    }

    #[test]
    fn krylov_examples() {
        let id = ExactMatrix::<Q>::identity(3);
        assert_eq!(krylov_min_poly(&id), Polynomial::from_i64(&[-1, 1]));
        let z = ExactMatrix::<Q>::zeros(3, 3);
        assert_eq!(krylov_min_poly(&z), Polynomial::from_i64(&[0, 1]));
        let a = ExactMatrix::<Q>::from_i64(&[vec![1, 1], vec![1, 1]]).unwrap();
        assert_eq!(krylov_min_poly(&a), Polynomial::from_i64(&[0, -2, 1]));
        let j = ExactMatrix::<Q>::from_i64(&[vec![2, 1, 0], vec![0, 2, 0], vec![0, 0, 3]]).unwrap();
        let mu = krylov_min_poly(&j);
        assert_eq!(
            mu,
            Polynomial::from_i64(&[-2, 1])
                .mul(&Polynomial::from_i64(&[-2, 1]))
                .mul(&Polynomial::from_i64(&[-3, 1]))
        );
        assert!(poly_eval_at_element(&mu, &j).is_zero_element());
    }
}
