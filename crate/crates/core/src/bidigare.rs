//! The map `rho: B_alpha -> B̃_alpha` from the descent algebra onto the
//! `S_n`-invariant part of the face algebra, and the bridges between
//! B-coordinates and the group algebra.

use std::collections::BTreeMap;
use std::fmt;

use serde_json::{Map, Value};

use crate::combinatorics::{enumerate_compositions, Composition, Permutation};
use crate::error::{Error, Result};
use crate::exact_linalg::{solve, AlgebraElement, ExactMatrix};
use crate::face_monoid::{btilde, Face, FaceAlgebraElement};
use crate::group_algebra::{basis_b_comp, GroupAlgebraElement};
use crate::scalar::Scalar;

/// An element of the descent algebra in B-coordinates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DescentAlgebraElement<S> {
    n: usize,
    coords: BTreeMap<Composition, S>,
}

impl<S: Scalar> DescentAlgebraElement<S> {
    pub fn zero(n: usize) -> Self {
        DescentAlgebraElement {
            n,
            coords: BTreeMap::new(),
        }
    }

    /// `B_alpha`.
    pub fn basis(alpha: &Composition) -> Self {
        let mut x = Self::zero(alpha.n());
        x.coords.insert(alpha.clone(), S::one());
        x
    }

    /// `B_(n)`, the identity.
    pub fn one(n: usize) -> Self {
        Self::basis(&Composition::single(n))
    }

    pub fn from_coords<I: IntoIterator<Item = (Composition, S)>>(
        n: usize,
        coords: I,
    ) -> Result<Self> {
        let mut x = Self::zero(n);
        for (alpha, c) in coords {
            if alpha.n() != n {
                return Err(Error::InvalidComposition(format!(
                    "{alpha} is not a composition of {n}"
                )));
            }
            x.add_coord(&alpha, &c);
        }
        Ok(x)
    }

    fn add_coord(&mut self, alpha: &Composition, c: &S) {
        let e = self.coords.entry(alpha.clone()).or_insert_with(S::zero);
        *e += c;
        if e.is_zero() {
            self.coords.remove(alpha);
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn coord(&self, alpha: &Composition) -> S {
        self.coords.get(alpha).cloned().unwrap_or_else(S::zero)
    }

    /// Nonzero coordinates in composition order.
    pub fn terms(&self) -> impl Iterator<Item = (&Composition, &S)> {
        self.coords.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.coords.is_empty()
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        if self.n != other.n {
            return Err(Error::DegreeMismatch {
                left: self.n,
                right: other.n,
            });
        }
        let mut x = self.clone();
        for (a, c) in &other.coords {
            x.add_coord(a, c);
        }
        Ok(x)
    }

    pub fn scale(&self, c: &S) -> Self {
        let coords = if c.is_zero() {
            BTreeMap::new()
        } else {
            self.coords
                .iter()
                .map(|(a, x)| (a.clone(), x.clone() * c.clone()))
                .collect()
        };
        DescentAlgebraElement { n: self.n, coords }
    }

    /// Product in the descent algebra, computed inside the group algebra.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        let p = to_group_algebra(self).try_mul(&to_group_algebra(other))?;
        from_group_algebra(&p)?
            .ok_or_else(|| Error::NotInSpan("product left the descent algebra".into()))
    }

    /// JSON map from composition strings to scalar strings.
    pub fn to_json(&self) -> Value {
        let map: Map<String, Value> = self
            .coords
            .iter()
            .map(|(a, c)| (a.to_string(), Value::String(c.to_string())))
            .collect();
        Value::Object(map)
    }

    pub fn from_json(n: usize, v: &Value) -> Result<Self> {
        let obj = v
            .as_object()
            .ok_or_else(|| Error::Parse("expected a JSON object".into()))?;
        let mut coords = Vec::with_capacity(obj.len());
        for (k, c) in obj {
            let c = match c {
                Value::String(s) => S::parse_scalar(s)?,
                Value::Number(x) => S::parse_scalar(&x.to_string())?,
                _ => return Err(Error::Parse(format!("bad coefficient for {k}"))),
            };
            coords.push((k.parse()?, c));
        }
        Self::from_coords(n, coords)
    }
}

impl<S: Scalar> fmt::Display for DescentAlgebraElement<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coords.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .coords
            .iter()
            .map(|(a, c)| format!("{c}*B({a})"))
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// `Σ c_alpha B_alpha -> Σ c_alpha B̃_alpha`.
pub fn rho<S: Scalar>(x: &DescentAlgebraElement<S>) -> Result<FaceAlgebraElement<S>> {
    let mut out = FaceAlgebraElement::zero(x.n)?;
    for (alpha, c) in &x.coords {
        out = &out + &btilde::<S>(alpha)?.scale(c);
    }
    Ok(out)
}

/// Inverse of [`rho`], by exact solve against the B̃-basis.
pub fn rho_inv<S: Scalar>(y: &FaceAlgebraElement<S>) -> Result<DescentAlgebraElement<S>> {
    let n = y.n();
    let comps: Vec<Composition> = enumerate_compositions(n).collect();
    let cols = comps
        .iter()
        .map(|a| Ok(btilde::<S>(a)?.coordinates()))
        .collect::<Result<Vec<_>>>()?;
    let m = ExactMatrix::from_columns(cols, y.dimension())?;
    match solve(&m, &y.coordinates())? {
        Some(x) => DescentAlgebraElement::from_coords(n, comps.into_iter().zip(x)),
        None => Err(Error::NotInSpan(format!(
            "{y} is not a combination of the orbit sums B̃_alpha"
        ))),
    }
}

/// Expands B-coordinates into permutations.
pub fn to_group_algebra<S: Scalar>(x: &DescentAlgebraElement<S>) -> GroupAlgebraElement<S> {
    x.coords
        .iter()
        .fold(GroupAlgebraElement::zero(x.n), |acc, (alpha, c)| {
            &acc + &basis_b_comp::<S>(alpha).scale(c)
        })
}

/// B-coordinates of `a`, or `None` when `a` lies outside the descent algebra.
pub fn from_group_algebra<S: Scalar>(
    a: &GroupAlgebraElement<S>,
) -> Result<Option<DescentAlgebraElement<S>>> {
    let n = a.n();
    let comps: Vec<Composition> = enumerate_compositions(n).collect();
    let cols = comps
        .iter()
        .map(|alpha| basis_b_comp::<S>(alpha).coordinates())
        .collect();
    let m = ExactMatrix::from_columns(cols, a.dimension())?;
    Ok(match solve(&m, &a.coordinates())? {
        Some(x) => Some(DescentAlgebraElement::from_coords(
            n,
            comps.into_iter().zip(x),
        )?),
        None => None,
    })
}

/// `a F = Σ c_w (w F)`: the linear action of `kS_n` on a face.
pub fn group_action_on_face<S: Scalar>(
    a: &GroupAlgebraElement<S>,
    f: &Face,
) -> Result<FaceAlgebraElement<S>> {
    if a.n() != f.n() {
        return Err(Error::DegreeMismatch {
            left: a.n(),
            right: f.n(),
        });
    }
    FaceAlgebraElement::from_terms(f.n(), a.terms().into_iter().map(|(w, c)| (f.act(&w), c)))
}

/// True when `w x = x` for every `w` in `perms`.
pub fn is_invariant_under<S: Scalar>(x: &FaceAlgebraElement<S>, perms: &[Permutation]) -> bool {
    perms.iter().all(|w| &x.act(w) == x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::face_monoid::{face_of_permutation, w0tilde};
    use crate::group_algebra::w0_element;
    use crate::scalar::Rational;

    type Q = Rational;
    type D = DescentAlgebraElement<Q>;

    fn c(s: &str) -> Composition {
        s.parse().unwrap()
    }

    #[test]
    fn rho_examples() {
        for n in 1..=4 {
            assert_eq!(
                rho(&D::one(n)).unwrap(),
                FaceAlgebraElement::one(n).unwrap()
            );
            let w0 = from_group_algebra(&w0_element::<Q>(n)).unwrap().unwrap();
            assert_eq!(rho(&w0).unwrap(), w0tilde(n).unwrap());
            assert_eq!(rho_inv(&w0tilde::<Q>(n).unwrap()).unwrap(), w0);
        }
        let r = rho(&D::basis(&c("2,1"))).unwrap();
        assert_eq!(r.support_len(), 3);
    }

    #[test]
    fn rho_inv_basis_and_rejection() {
        for n in 1..=5 {
            for a in enumerate_compositions(n) {
                assert_eq!(rho_inv(&btilde::<Q>(&a).unwrap()).unwrap(), D::basis(&a));
            }
        }
        let single = FaceAlgebraElement::<Q>::from_face(&"1,2|3".parse().unwrap()).unwrap();
        assert!(matches!(rho_inv(&single), Err(Error::NotInSpan(_))));
    }

    #[test]
    fn group_algebra_bridge() {
        let w0 = from_group_algebra(&w0_element::<Q>(4)).unwrap().unwrap();
        for a in enumerate_compositions(4) {
            let sign = if (4 - a.len()) % 2 == 0 { 1 } else { -1 };
            assert_eq!(w0.coord(&a), Q::from_i64(sign));
        }
        let t =
            GroupAlgebraElement::<Q>::from_permutation(&Permutation::cycle(3, &[1, 2]).unwrap());
        assert_eq!(from_group_algebra(&t).unwrap(), None);
        // in S_3 the transposition (1 3) is w0 itself
        let t =
            GroupAlgebraElement::<Q>::from_permutation(&Permutation::cycle(3, &[1, 3]).unwrap());
        assert!(from_group_algebra(&t).unwrap().is_some());
        let x = D::from_coords(
            3,
            vec![(c("1,2"), Q::from_i64(2)), (c("3"), "1/2".parse().unwrap())],
        )
        .unwrap();
        assert_eq!(
            from_group_algebra(&to_group_algebra(&x)).unwrap().unwrap(),
            x
        );
    }

    #[test]
    fn identity_times_p_id() {
        for n in 1..=4 {
            let pid = face_of_permutation(&Permutation::identity(n));
            for a in enumerate_compositions(n) {
                let b = btilde::<Q>(&a).unwrap();
                let lhs = &b * &FaceAlgebraElement::from_face(&pid).unwrap();
                let rhs =
                    group_action_on_face(&to_group_algebra(&rho_inv(&b).unwrap()), &pid).unwrap();
                assert_eq!(lhs, rhs);
            }
        }
    }

    #[test]
    fn json_round_trip() {
        let x = D::from_coords(
            3,
            vec![(c("1,2"), Q::from_i64(2)), (c("3"), "1/2".parse().unwrap())],
        )
        .unwrap();
        let v = x.to_json();
        assert_eq!(v["3"], "1/2");
        assert_eq!(D::from_json(3, &v).unwrap(), x);
    }
}
