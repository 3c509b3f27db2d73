//! The group algebra `kS_n` and the descent algebra inside it.
//!
//! Products follow the composition rule `(uv)(i) = u(v(i))` throughout, so
//! `w0 * B * w0` means "apply `w0`, then `B`, then `w0`" read right to left.
//!
//! Elements of degree at most 7 are stored densely, indexed by the
//! lexicographic rank of the permutation; the multiplication table of `S_n`
//! is cached for `n <= 6`. Larger degrees use a sorted sparse map.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::OnceLock;

use serde_json::{Map, Value};

use crate::combinatorics::{
    check_n, enumerate_permutations, factorial, gaps_inv, Composition, IndexSet, Permutation,
};
use crate::error::{Error, Result};
use crate::exact_linalg::AlgebraElement;
use crate::knapsack::WeightVector;
use crate::scalar::Scalar;

/// Largest degree stored densely.
pub const DENSE_MAX_N: usize = 7;
const TABLE_MAX_N: usize = 6;

static PERMS: [OnceLock<Vec<Permutation>>; DENSE_MAX_N + 1] =
    [const { OnceLock::new() }; DENSE_MAX_N + 1];
static TABLES: [OnceLock<Vec<u16>>; TABLE_MAX_N + 1] = [const { OnceLock::new() }; TABLE_MAX_N + 1];

/// All permutations of `[n]` in rank order (cached, `n <= 7`).
pub(crate) fn perms(n: usize) -> &'static [Permutation] {
    PERMS[n].get_or_init(|| enumerate_permutations(n).collect())
}

fn mult_table(n: usize) -> &'static [u16] {
    TABLES[n].get_or_init(|| {
        let ps = perms(n);
        let mut t = Vec::with_capacity(ps.len() * ps.len());
        for u in ps {
            for v in ps {
                t.push(u.compose(v).rank() as u16);
            }
        }
        t
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Coeffs<S> {
    Dense(Vec<S>),
    Sparse(BTreeMap<Permutation, S>),
}

/// An element of `kS_n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupAlgebraElement<S> {
    n: usize,
    coeffs: Coeffs<S>,
}

impl<S: Scalar> GroupAlgebraElement<S> {
    pub fn zero(n: usize) -> Self {
        let coeffs = if n <= DENSE_MAX_N {
            Coeffs::Dense(vec![S::zero(); factorial(n)])
        } else {
            Coeffs::Sparse(BTreeMap::new())
        };
        GroupAlgebraElement { n, coeffs }
    }

    /// The identity permutation as an algebra element.
    pub fn one(n: usize) -> Self {
        Self::from_permutation(&Permutation::identity(n))
    }

    pub fn from_permutation(w: &Permutation) -> Self {
        let mut e = Self::zero(w.n());
        e.add_term(w, &S::one());
        e
    }

    /// Sum of `c * w` over the given terms; all permutations must have degree `n`.
    pub fn from_terms<I: IntoIterator<Item = (Permutation, S)>>(
        n: usize,
        terms: I,
    ) -> Result<Self> {
        check_n(n)?;
        let mut e = Self::zero(n);
        for (w, c) in terms {
            if w.n() != n {
                return Err(Error::DegreeMismatch {
                    left: n,
                    right: w.n(),
                });
            }
            e.add_term(&w, &c);
        }
        Ok(e)
    }

    /// Sum of the permutations satisfying `pred`, each with coefficient one.
    pub fn sum_where<F: Fn(&Permutation) -> bool>(n: usize, pred: F) -> Self {
        let mut e = Self::zero(n);
        if n <= DENSE_MAX_N {
            let Coeffs::Dense(v) = &mut e.coeffs else {
                unreachable!()
            };
            for (i, w) in perms(n).iter().enumerate() {
                if pred(w) {
                    v[i] = S::one();
                }
            }
        } else {
            for w in enumerate_permutations(n) {
                if pred(&w) {
                    e.add_term(&w, &S::one());
                }
            }
        }
        e
    }

    fn add_term(&mut self, w: &Permutation, c: &S) {
        if c.is_zero() {
            return;
        }
        match &mut self.coeffs {
            Coeffs::Dense(v) => v[w.rank()] += c,
            Coeffs::Sparse(m) => {
                let entry = m.entry(w.clone()).or_insert_with(S::zero);
                *entry += c;
                if entry.is_zero() {
                    m.remove(w);
                }
            }
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn coeff(&self, w: &Permutation) -> S {
        if w.n() != self.n {
            return S::zero();
        }
        match &self.coeffs {
            Coeffs::Dense(v) => v[w.rank()].clone(),
            Coeffs::Sparse(m) => m.get(w).cloned().unwrap_or_else(S::zero),
        }
    }

    /// Nonzero terms in lexicographic order of the permutations.
    pub fn terms(&self) -> Vec<(Permutation, S)> {
        match &self.coeffs {
            Coeffs::Dense(v) => v
                .iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(|(i, c)| (perms(self.n)[i].clone(), c.clone()))
                .collect(),
            Coeffs::Sparse(m) => m.iter().map(|(w, c)| (w.clone(), c.clone())).collect(),
        }
    }

    pub fn support(&self) -> Vec<Permutation> {
        self.terms().into_iter().map(|(w, _)| w).collect()
    }

    pub fn support_len(&self) -> usize {
        match &self.coeffs {
            Coeffs::Dense(v) => v.iter().filter(|c| !c.is_zero()).count(),
            Coeffs::Sparse(m) => m.len(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.support_len() == 0
    }

    fn check_same(&self, other: &Self) -> Result<()> {
        if self.n != other.n {
            Err(Error::DegreeMismatch {
                left: self.n,
                right: other.n,
            })
        } else {
            Ok(())
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        let mut out = self.clone();
        match (&mut out.coeffs, &other.coeffs) {
            (Coeffs::Dense(a), Coeffs::Dense(b)) => {
                for (x, y) in a.iter_mut().zip(b) {
                    if !y.is_zero() {
                        *x += y;
                    }
                }
            }
            _ => {
                for (w, c) in other.terms() {
                    out.add_term(&w, &c);
                }
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &S) -> Self {
        if c.is_zero() {
            return Self::zero(self.n);
        }
        let coeffs = match &self.coeffs {
            Coeffs::Dense(v) => Coeffs::Dense(v.iter().map(|x| x.clone() * c.clone()).collect()),
            Coeffs::Sparse(m) => Coeffs::Sparse(
                m.iter()
                    .map(|(w, x)| (w.clone(), x.clone() * c.clone()))
                    .collect(),
            ),
        };
        GroupAlgebraElement { n: self.n, coeffs }
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        let n = self.n;
        match (&self.coeffs, &other.coeffs) {
            (Coeffs::Dense(a), Coeffs::Dense(b)) => {
                let nz_b: Vec<(usize, &S)> =
                    b.iter().enumerate().filter(|(_, c)| !c.is_zero()).collect();
                let mut out = vec![S::zero(); a.len()];
                if n <= TABLE_MAX_N {
                    let t = mult_table(n);
                    let d = a.len();
                    for (i, x) in a.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
                        let row = &t[i * d..(i + 1) * d];
                        for &(j, y) in &nz_b {
                            out[row[j] as usize] += &(x.clone() * y.clone());
                        }
                    }
                } else {
                    let ps = perms(n);
                    for (i, x) in a.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
                        for &(j, y) in &nz_b {
                            out[ps[i].compose(&ps[j]).rank()] += &(x.clone() * y.clone());
                        }
                    }
                }
                Ok(GroupAlgebraElement {
                    n,
                    coeffs: Coeffs::Dense(out),
                })
            }
            _ => {
                let mut out = Self::zero(n);
                let tb = other.terms();
                for (u, x) in self.terms() {
                    for (v, y) in &tb {
                        out.add_term(&u.compose(v), &(x.clone() * y.clone()));
                    }
                }
                Ok(out)
            }
        }
    }

    /// The antipode: `w -> w^{-1}` extended linearly.
    pub fn antipode(&self) -> Self {
        let mut out = Self::zero(self.n);
        for (w, c) in self.terms() {
            out.add_term(&w.inverse(), &c);
        }
        out
    }

    /// JSON map from one-line notation ("[2,1,3]") to scalar strings.
    pub fn to_json(&self) -> Value {
        let map: Map<String, Value> = self
            .terms()
            .into_iter()
            .map(|(w, c)| (w.to_string(), Value::String(c.to_string())))
            .collect();
        Value::Object(map)
    }

    pub fn from_json(n: usize, v: &Value) -> Result<Self> {
        let obj = v
            .as_object()
            .ok_or_else(|| Error::Parse("expected a JSON object".into()))?;
        let mut terms = Vec::with_capacity(obj.len());
        for (k, c) in obj {
            let w: Permutation = k.parse()?;
            let c = match c {
                Value::String(s) => S::parse_scalar(s)?,
                Value::Number(x) => S::parse_scalar(&x.to_string())?,
                _ => return Err(Error::Parse(format!("bad coefficient for {k}"))),
            };
            terms.push((w, c));
        }
        Self::from_terms(n, terms)
    }
}

impl<S: Scalar> fmt::Display for GroupAlgebraElement<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms = self.terms();
        if terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = terms
            .iter()
            .map(|(w, c)| {
                if c.is_one() {
                    w.to_string()
                } else {
                    format!("{c}*{w}")
                }
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

impl<S: Scalar> Add for &GroupAlgebraElement<S> {
    type Output = GroupAlgebraElement<S>;
    fn add(self, rhs: Self) -> Self::Output {
        self.try_add(rhs).expect("degree mismatch")
    }
}

impl<S: Scalar> Sub for &GroupAlgebraElement<S> {
    type Output = GroupAlgebraElement<S>;
    fn sub(self, rhs: Self) -> Self::Output {
        self.try_add(&-rhs).expect("degree mismatch")
    }
}

impl<S: Scalar> Neg for &GroupAlgebraElement<S> {
    type Output = GroupAlgebraElement<S>;
    fn neg(self) -> Self::Output {
        self.scale(&-S::one())
    }
}

impl<S: Scalar> Mul for &GroupAlgebraElement<S> {
    type Output = GroupAlgebraElement<S>;
    fn mul(self, rhs: Self) -> Self::Output {
        self.try_mul(rhs).expect("degree mismatch")
    }
}

impl<S: Scalar> AlgebraElement<S> for GroupAlgebraElement<S> {
    fn dimension(&self) -> usize {
        factorial(self.n)
    }

    fn coordinates(&self) -> Vec<S> {
        match &self.coeffs {
            Coeffs::Dense(v) => v.clone(),
            Coeffs::Sparse(m) => {
                let mut v = vec![S::zero(); factorial(self.n)];
                for (w, c) in m {
                    v[w.rank()] = c.clone();
                }
                v
            }
        }
    }

    fn one_like(&self) -> Self {
        Self::one(self.n)
    }

    fn algebra_mul(&self, rhs: &Self) -> Self {
        self * rhs
    }

    fn algebra_add(&self, rhs: &Self) -> Self {
        self + rhs
    }

    fn algebra_scale(&self, c: &S) -> Self {
        self.scale(c)
    }

    fn is_zero_element(&self) -> bool {
        self.is_zero()
    }
}

pub fn ga_add<S: Scalar>(
    a: &GroupAlgebraElement<S>,
    b: &GroupAlgebraElement<S>,
) -> Result<GroupAlgebraElement<S>> {
    a.try_add(b)
}

pub fn ga_scale<S: Scalar>(a: &GroupAlgebraElement<S>, c: &S) -> GroupAlgebraElement<S> {
    a.scale(c)
}

pub fn ga_mul<S: Scalar>(
    a: &GroupAlgebraElement<S>,
    b: &GroupAlgebraElement<S>,
) -> Result<GroupAlgebraElement<S>> {
    a.try_mul(b)
}

pub fn antipode<S: Scalar>(a: &GroupAlgebraElement<S>) -> GroupAlgebraElement<S> {
    a.antipode()
}

/// `B_I`: the sum of all `w` with `Des w ⊆ I`.
pub fn basis_b<S: Scalar>(i: &IndexSet) -> GroupAlgebraElement<S> {
    GroupAlgebraElement::sum_where(i.n(), |w| w.descent_set().is_subset(i))
}

/// `B_alpha = B_{gaps^{-1}(alpha)}`.
pub fn basis_b_comp<S: Scalar>(alpha: &Composition) -> GroupAlgebraElement<S> {
    basis_b(&gaps_inv(alpha))
}

/// `D_I`: the sum of all `w` with `Des w = I`.
pub fn basis_d<S: Scalar>(i: &IndexSet) -> GroupAlgebraElement<S> {
    GroupAlgebraElement::sum_where(i.n(), |w| w.descent_set() == *i)
}

/// `w0` as an algebra element.
pub fn w0_element<S: Scalar>(n: usize) -> GroupAlgebraElement<S> {
    GroupAlgebraElement::from_permutation(&Permutation::longest(n))
}

/// `T_k`: the sum of all `w` with `w^{-1}(k+1) < ... < w^{-1}(n)`.
pub fn top_to_random<S: Scalar>(n: usize, k: usize) -> Result<GroupAlgebraElement<S>> {
    check_n(n)?;
    if k > n {
        return Err(Error::OutOfRange(format!("k = {k} exceeds n = {n}")));
    }
    Ok(GroupAlgebraElement::sum_where(n, |w| {
        let inv = w.inverse();
        (k + 1..n).all(|j| inv.apply(j) < inv.apply(j + 1))
    }))
}

/// `Σ_{i=1}^n cyc(1, 2, ..., i)`.
pub fn top_to_random_by_cycles<S: Scalar>(n: usize) -> Result<GroupAlgebraElement<S>> {
    let terms = (1..=n)
        .map(|i| {
            Ok((
                Permutation::cycle(n, &(1..=i).collect::<Vec<_>>())?,
                S::one(),
            ))
        })
        .collect::<Result<Vec<_>>>()?;
    GroupAlgebraElement::from_terms(n, terms)
}

/// `B_gamma = Σ gamma_alpha B_alpha`.
pub fn weighted_b<S: Scalar>(gamma: &WeightVector) -> Result<GroupAlgebraElement<S>> {
    let mut out = GroupAlgebraElement::zero(gamma.n());
    for (alpha, w) in gamma.support() {
        let c = S::from_rational(w).ok_or_else(|| {
            Error::InvalidScalar(format!("weight {w} is undefined in {}", S::field_name()))
        })?;
        out = &out + &basis_b_comp::<S>(alpha).scale(&c);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::combinatorics::enumerate_subsets;
    use crate::scalar::{Fp, Rational};

    type Q = Rational;
    type E = GroupAlgebraElement<Q>;

    fn perm(s: &str) -> Permutation {
        s.parse().unwrap()
    }

    fn set(n: usize, m: &[usize]) -> IndexSet {
        IndexSet::from_members(n, m).unwrap()
    }

    #[test]
    fn unit_and_involution() {
        let b: E = basis_b_comp(&"1,3".parse().unwrap());
        assert_eq!(&E::one(4) * &b, b);
        assert_eq!(&b * &E::one(4), b);
        let w0 = w0_element::<Q>(4);
        assert_eq!(&w0 * &w0, E::one(4));
    }

    #[test]
    fn s2_square() {
        let x: E = &E::one(2) + &E::from_permutation(&perm("[2,1]"));
        assert_eq!(&x * &x, x.scale(&Q::from_i64(2)));
    }

    #[test]
    fn antipode_examples() {
        for n in 2..=5 {
            let a = top_to_random::<Q>(n, 1).unwrap();
            let b = basis_b_comp::<Q>(&Composition::new(vec![1, n - 1]).unwrap());
            assert_eq!(a.antipode(), b);
        }
        let w0 = w0_element::<Q>(4);
        assert_eq!(w0.antipode(), w0);
        assert_eq!(E::one(3).antipode(), E::one(3));
    }

    #[test]
    fn b_examples() {
        let b: E = basis_b(&set(4, &[1, 3]));
        assert_eq!(b.support_len(), 12);
        let expected: E = [
            set(4, &[1, 3]),
            set(4, &[1]),
            set(4, &[3]),
            IndexSet::empty(4),
        ]
        .iter()
        .map(basis_d::<Q>)
        .fold(E::zero(4), |acc, d| &acc + &d);
        assert_eq!(b, expected);
        assert_eq!(basis_b::<Q>(&IndexSet::full(4)).support_len(), 24);
        assert_eq!(basis_b::<Q>(&IndexSet::empty(4)), E::one(4));
    }

    #[test]
    fn d_examples() {
        let d: E = basis_d(&set(4, &[1]));
        assert_eq!(
            d.support(),
            vec![perm("[2,1,3,4]"), perm("[3,1,2,4]"), perm("[4,1,2,3]")]
        );
        assert_eq!(basis_d::<Q>(&IndexSet::full(5)), w0_element(5));
        assert_eq!(basis_d::<Q>(&IndexSet::empty(5)), E::one(5));
    }

    #[test]
    fn d_table_n4() {
        let table = [
            (vec![], vec!["[1,2,3,4]"]),
            (vec![1], vec!["[2,1,3,4]", "[3,1,2,4]", "[4,1,2,3]"]),
            (vec![3], vec!["[1,2,4,3]", "[1,3,4,2]", "[2,3,4,1]"]),
            (
                vec![1, 3],
                vec![
                    "[2,1,4,3]",
                    "[3,1,4,2]",
                    "[3,2,4,1]",
                    "[4,1,3,2]",
                    "[4,2,3,1]",
                ],
            ),
        ];
        for (members, support) in table {
            let d: E = basis_d(&set(4, &members));
            let expected: Vec<Permutation> = support.iter().map(|s| perm(s)).collect();
            assert_eq!(d.support(), expected);
        }
    }

    #[test]
    fn top_to_random_examples() {
        assert_eq!(top_to_random::<Q>(4, 0).unwrap(), E::one(4));
        assert_eq!(top_to_random::<Q>(4, 4).unwrap().support_len(), 24);
        let t = top_to_random::<Q>(3, 1).unwrap();
        assert_eq!(
            t.support(),
            vec![perm("[1,2,3]"), perm("[2,1,3]"), perm("[2,3,1]")]
        );
        for n in 1..=7 {
            assert_eq!(
                top_to_random::<Q>(n, 1).unwrap(),
                top_to_random_by_cycles(n).unwrap()
            );
        }
        assert!(top_to_random::<Q>(3, 4).is_err());
    }

    #[test]
    fn weighted_examples() {
        let mut g = WeightVector::zero(2);
        assert!(weighted_b::<Q>(&g).unwrap().is_zero());
        g.set(&"2".parse().unwrap(), Q::from_i64(1)).unwrap();
        g.set(&"1,1".parse().unwrap(), Q::from_i64(2)).unwrap();
        let e = weighted_b::<Q>(&g).unwrap();
        let expected = E::from_terms(
            2,
            vec![
                (perm("[1,2]"), Q::from_i64(3)),
                (perm("[2,1]"), Q::from_i64(2)),
            ],
        )
        .unwrap();
        assert_eq!(e, expected);
    }

    #[test]
    fn change_of_basis_and_w0() {
        for n in 1..=5 {
            let w0 = w0_element::<Q>(n);
            let mut alt = E::zero(n);
            for i in enumerate_subsets(n) {
                let b: E = basis_b(&i);
                let d_sum = i.subsets().fold(E::zero(n), |acc, j| &acc + &basis_d(&j));
                assert_eq!(b, d_sum);
                let b_alt = i.subsets().fold(E::zero(n), |acc, j| {
                    let sign = if (i.len() - j.len()) % 2 == 0 { 1 } else { -1 };
                    &acc + &basis_b::<Q>(&j).scale(&Q::from_i64(sign))
                });
                assert_eq!(basis_d::<Q>(&i), b_alt);
                let sign = if (n - i.len() - 1) % 2 == 0 { 1 } else { -1 };
                alt = &alt + &b.scale(&Q::from_i64(sign));
                assert_eq!(&(&w0 * &b) * &w0, basis_b(&i.sub()));
            }
            assert_eq!(alt, w0);
        }
    }

    #[test]
    fn sparse_and_dense_agree() {
        let n = 8;
        let t = top_to_random::<Q>(n, 1).unwrap();
        assert_eq!(t.support_len(), 8);
        let w0 = w0_element::<Q>(n);
        let p = &t * &w0;
        assert_eq!(p.support_len(), 8);
        assert_eq!(t, top_to_random_by_cycles(n).unwrap());
        assert_eq!(&w0 * &w0, E::one(n));
    }

    #[test]
    fn json_round_trip() {
        let x = &top_to_random::<Q>(3, 1)
            .unwrap()
            .scale(&"1/2".parse().unwrap())
            + &w0_element(3);
        let v = x.to_json();
        assert_eq!(v["[3,2,1]"], "1");
        assert_eq!(E::from_json(3, &v).unwrap(), x);
        let f = GroupAlgebraElement::<Fp<3>>::from_json(3, &v).unwrap();
        assert_eq!(f.coeff(&perm("[2,1,3]")), Fp::new(2));
        assert!(E::from_json(4, &v).is_err());
    }

    #[test]
    fn degree_mismatch_is_an_error() {
        assert!(ga_mul(&E::one(3), &E::one(4)).is_err());
        assert!(ga_add(&E::one(3), &E::one(4)).is_err());
    }
}
