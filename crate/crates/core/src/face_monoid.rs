//! Set compositions of `[n]` (faces), their monoid product, containment,
//! the `S_n` action, and the face algebra `kF`.
//!
//! A block is a bit-set with bit `i - 1` standing for the element `i`. Faces
//! are ordered by ambient size, then by length, then lexicographically on
//! their block bit-sets read as integers; [`enumerate_faces`] returns this
//! order and face-algebra coordinates use it.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;
use std::sync::OnceLock;

use serde_json::{Map, Value};

use crate::combinatorics::{check_n, gaps_inv, Composition, Permutation};
use crate::error::{Error, Result};
use crate::exact_linalg::AlgebraElement;
use crate::scalar::Scalar;

/// Largest `n` for which face-algebra elements are supported.
pub const FACE_ALGEBRA_MAX_N: usize = 7;
const TABLE_MAX_N: usize = 5;

/// A set composition of `[n]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Face {
    n: usize,
    blocks: Vec<u32>,
}

impl Ord for Face {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.n, self.blocks.len(), &self.blocks).cmp(&(other.n, other.blocks.len(), &other.blocks))
    }
}

impl PartialOrd for Face {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

fn mask_members(mask: u32) -> Vec<usize> {
    (0..32)
        .filter(|i| mask & (1 << i) != 0)
        .map(|i| i + 1)
        .collect()
}

fn full_mask(n: usize) -> u32 {
    if n == 0 {
        0
    } else {
        u32::MAX >> (32 - n)
    }
}

impl Face {
    /// Builds a face from its blocks, given as lists of elements of `[n]`.
    pub fn new(n: usize, blocks: &[Vec<usize>]) -> Result<Self> {
        check_n(n)?;
        let mut masks = Vec::with_capacity(blocks.len());
        for b in blocks {
            let mut m = 0u32;
            for &e in b {
                if e == 0 || e > n {
                    return Err(Error::InvalidFace(format!(
                        "element {e} is outside [1, {n}]"
                    )));
                }
                m |= 1 << (e - 1);
            }
            masks.push(m);
        }
        Self::from_masks(n, masks)
    }

    /// Builds a face from block bit-sets.
    pub fn from_masks(n: usize, blocks: Vec<u32>) -> Result<Self> {
        check_n(n)?;
        let mut seen = 0u32;
        for &b in &blocks {
            if b == 0 {
                return Err(Error::InvalidFace("empty block".into()));
            }
            if b & !full_mask(n) != 0 {
                let e = (b & !full_mask(n)).trailing_zeros() + 1;
                return Err(Error::InvalidFace(format!(
                    "element {e} is outside [1, {n}]"
                )));
            }
            if b & seen != 0 {
                let e = (b & seen).trailing_zeros() + 1;
                return Err(Error::InvalidFace(format!(
                    "element {e} appears in two blocks"
                )));
            }
            seen |= b;
        }
        if seen != full_mask(n) {
            let e = (!seen & full_mask(n)).trailing_zeros() + 1;
            return Err(Error::InvalidFace(format!("element {e} is missing")));
        }
        Ok(Face { n, blocks })
    }

    /// The one-block face `([n])`, neutral for the product (empty for `n = 0`).
    pub fn unit(n: usize) -> Self {
        let blocks = if n == 0 { vec![] } else { vec![full_mask(n)] };
        Face { n, blocks }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn blocks(&self) -> &[u32] {
        &self.blocks
    }

    pub fn block_members(&self, i: usize) -> Vec<usize> {
        mask_members(self.blocks[i])
    }

    /// Number of blocks.
    pub fn len(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }

    /// Block sizes in order.
    pub fn face_type(&self) -> Composition {
        Composition::new(
            self.blocks
                .iter()
                .map(|b| b.count_ones() as usize)
                .collect(),
        )
        .expect("blocks are nonempty")
    }

    /// The product `FG`: all `F_i ∩ G_j` in lexicographic `(i, j)` order,
    /// empty intersections removed.
    pub fn product(&self, other: &Face) -> Face {
        assert_eq!(self.n, other.n, "faces of different size");
        let mut blocks = Vec::with_capacity(self.blocks.len() * other.blocks.len());
        for &f in &self.blocks {
            for &g in &other.blocks {
                if f & g != 0 {
                    blocks.push(f & g);
                }
            }
        }
        Face { n: self.n, blocks }
    }

    /// `self ⊑ other`: every block of `self` lies inside a block of `other`.
    pub fn is_contained_in(&self, other: &Face) -> bool {
        self.n == other.n
            && self
                .blocks
                .iter()
                .all(|&f| other.blocks.iter().any(|&g| f & !g == 0))
    }

    /// `w F`: `w` applied to every element of every block.
    pub fn act(&self, w: &Permutation) -> Face {
        assert_eq!(self.n, w.n(), "permutation and face of different size");
        Face {
            n: self.n,
            blocks: self.blocks.iter().map(|&b| w.apply_mask(b)).collect(),
        }
    }

    /// Number of one-element blocks.
    pub fn singleton_count(&self) -> usize {
        self.blocks.iter().filter(|b| b.count_ones() == 1).count()
    }

    /// Compact notation for `n <= 9`: blocks as digit strings, e.g. `(12,3)`.
    pub fn compact(&self) -> String {
        let parts: Vec<String> = self
            .blocks
            .iter()
            .map(|&b| {
                mask_members(b)
                    .iter()
                    .map(|e| e.to_string())
                    .collect::<String>()
            })
            .collect();
        format!("({})", parts.join(","))
    }

    /// Parses the compact notation `(12,3)` for `n <= 9`.
    pub fn parse_compact(s: &str) -> Result<Self> {
        let t = s.trim().trim_start_matches('(').trim_end_matches(')');
        let mut blocks = Vec::new();
        let mut n = 0;
        if !t.is_empty() {
            for part in t.split(',') {
                let mut b = Vec::new();
                for ch in part.trim().chars() {
                    let d = ch.to_digit(10).ok_or_else(|| {
                        Error::InvalidFace(format!("bad element {ch:?} in {s:?}"))
                    })?;
                    b.push(d as usize);
                }
                n += b.len();
                blocks.push(b);
            }
        }
        Face::new(n, &blocks)
    }
}

impl fmt::Display for Face {
    /// `1,2|3` for `(12,3)`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .blocks
            .iter()
            .map(|&b| {
                mask_members(b)
                    .iter()
                    .map(|e| e.to_string())
                    .collect::<Vec<_>>()
                    .join(",")
            })
            .collect();
        write!(f, "{}", parts.join("|"))
    }
}

impl FromStr for Face {
    type Err = Error;

    /// Parses `1,2|3`; the ambient size is the number of elements listed.
    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        if t.is_empty() {
            return Ok(Face::unit(0));
        }
        let mut blocks = Vec::new();
        for part in t.split('|') {
            let b = part
                .split(',')
                .map(|x| {
                    x.trim()
                        .parse::<usize>()
                        .map_err(|_| Error::InvalidFace(format!("bad element {x:?} in {s:?}")))
                })
                .collect::<Result<Vec<_>>>()?;
            blocks.push(b);
        }
        let n = blocks.iter().map(|b| b.len()).sum();
        Face::new(n, &blocks)
    }
}

pub fn face_product(f: &Face, g: &Face) -> Face {
    f.product(g)
}

/// `f ⊑ g`.
pub fn contains(f: &Face, g: &Face) -> bool {
    f.is_contained_in(g)
}

/// For `F ⊑ G`, the set composition `H` of `[ℓ(F)]` with
/// `H_i = {j : F_j ⊆ G_i}`.
pub fn containment_bijection(f: &Face, g: &Face) -> Result<Face> {
    if !f.is_contained_in(g) {
        return Err(Error::NotContained {
            face: f.to_string(),
            other: g.to_string(),
        });
    }
    let blocks = g
        .blocks
        .iter()
        .map(|&gi| {
            f.blocks
                .iter()
                .enumerate()
                .filter(|(_, &fj)| fj & !gi == 0)
                .fold(0u32, |m, (j, _)| m | (1 << j))
        })
        .collect();
    Face::from_masks(f.len(), blocks)
}

pub fn face_type(f: &Face) -> Composition {
    f.face_type()
}

pub fn act(w: &Permutation, f: &Face) -> Face {
    f.act(w)
}

/// `P_w = ({w(1)}, ..., {w(n)})`.
pub fn face_of_permutation(w: &Permutation) -> Face {
    Face {
        n: w.n(),
        blocks: w.raw().iter().map(|&v| 1u32 << (v - 1)).collect(),
    }
}

/// `Ω_alpha(w) = (w(I_1), ..., w(I_k))` where `I_1, ..., I_k` are the
/// consecutive intervals of sizes `alpha_1, ..., alpha_k`.
pub fn omega_bijection(alpha: &Composition, w: &Permutation) -> Result<Face> {
    if alpha.n() != w.n() {
        return Err(Error::DegreeMismatch {
            left: alpha.n(),
            right: w.n(),
        });
    }
    if !w.descent_set().is_subset(&gaps_inv(alpha)) {
        return Err(Error::DescentCondition {
            perm: w.to_string(),
            alpha: alpha.to_string(),
        });
    }
    let mut start = 0u32;
    let blocks = alpha
        .parts()
        .iter()
        .map(|&p| {
            let interval = ((1u32 << p) - 1) << start;
            start += p as u32;
            w.apply_mask(interval)
        })
        .collect();
    Ok(Face { n: w.n(), blocks })
}

/// All set compositions of `[n]` in canonical order.
pub fn enumerate_faces(n: usize) -> Vec<Face> {
    let mut out = Vec::new();
    let mut stack = Vec::new();
    fn rec(n: usize, rest: u32, stack: &mut Vec<u32>, out: &mut Vec<Face>) {
        if rest == 0 {
            out.push(Face {
                n,
                blocks: stack.clone(),
            });
            return;
        }
        let mut sub = rest;
        while sub != 0 {
            stack.push(sub);
            rec(n, rest & !sub, stack, out);
            stack.pop();
            sub = (sub - 1) & rest;
        }
    }
    rec(n, full_mask(n), &mut stack, &mut out);
    out.sort_unstable();
    out
}

/// All faces of type `alpha`, in canonical order.
pub fn faces_of_type(alpha: &Composition) -> Vec<Face> {
    let n = alpha.n();
    let mut out = Vec::new();
    let mut stack = Vec::new();
    fn rec(n: usize, parts: &[usize], rest: u32, stack: &mut Vec<u32>, out: &mut Vec<Face>) {
        let Some((&p, tail)) = parts.split_first() else {
            out.push(Face {
                n,
                blocks: stack.clone(),
            });
            return;
        };
        let mut sub = rest;
        while sub != 0 {
            if sub.count_ones() as usize == p {
                stack.push(sub);
                rec(n, tail, rest & !sub, stack, out);
                stack.pop();
            }
            sub = (sub - 1) & rest;
        }
    }
    rec(n, alpha.parts(), full_mask(n), &mut stack, &mut out);
    out.sort_unstable();
    out
}

/// Ordered Bell number by `a(n) = Σ_{k=1}^n C(n, k) a(n - k)`.
pub fn ordered_bell(n: usize) -> u64 {
    let mut a = vec![1u64; n + 1];
    for m in 1..=n {
        let mut binom = 1u64;
        let mut s = 0u64;
        for k in 1..=m {
            binom = binom * (m - k + 1) as u64 / k as u64;
            s += binom * a[m - k];
        }
        a[m] = s;
    }
    a[n]
}

/// The faces of `[n]` with their positions, and (for `n <= 5`) the product table.
#[derive(Debug)]
pub struct FaceBasis {
    n: usize,
    faces: Vec<Face>,
    index: HashMap<Face, usize>,
    table: Option<Vec<u16>>,
}

static BASES: [OnceLock<FaceBasis>; FACE_ALGEBRA_MAX_N + 1] =
    [const { OnceLock::new() }; FACE_ALGEBRA_MAX_N + 1];

/// The cached face basis of `kF` for `n <= 7`.
pub fn face_basis(n: usize) -> Result<&'static FaceBasis> {
    if n > FACE_ALGEBRA_MAX_N {
        return Err(Error::TooLarge {
            n,
            max: FACE_ALGEBRA_MAX_N,
        });
    }
    Ok(BASES[n].get_or_init(|| {
        let faces = enumerate_faces(n);
        let index: HashMap<Face, usize> = faces
            .iter()
            .enumerate()
            .map(|(i, f)| (f.clone(), i))
            .collect();
        let table = (n <= TABLE_MAX_N).then(|| {
            let mut t = Vec::with_capacity(faces.len() * faces.len());
            for f in &faces {
                for g in &faces {
                    t.push(index[&f.product(g)] as u16);
                }
            }
            t
        });
        FaceBasis {
            n,
            faces,
            index,
            table,
        }
    }))
}

impl FaceBasis {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn faces(&self) -> &[Face] {
        &self.faces
    }

    pub fn len(&self) -> usize {
        self.faces.len()
    }

    pub fn is_empty(&self) -> bool {
        self.faces.is_empty()
    }

    pub fn index_of(&self, f: &Face) -> Option<usize> {
        self.index.get(f).copied()
    }

    fn product_index(&self, i: usize, j: usize) -> usize {
        match &self.table {
            Some(t) => t[i * self.faces.len() + j] as usize,
            None => self.index[&self.faces[i].product(&self.faces[j])],
        }
    }
}

/// An element of the face algebra `kF`, stored densely in the face basis.
#[derive(Clone)]
pub struct FaceAlgebraElement<S> {
    basis: &'static FaceBasis,
    coeffs: Vec<S>,
}

impl<S: Scalar> PartialEq for FaceAlgebraElement<S> {
    fn eq(&self, other: &Self) -> bool {
        self.basis.n == other.basis.n && self.coeffs == other.coeffs
    }
}

impl<S: Scalar> Eq for FaceAlgebraElement<S> {}

impl<S: Scalar> fmt::Debug for FaceAlgebraElement<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FaceAlgebraElement(n={}, {})", self.basis.n, self)
    }
}

impl<S: Scalar> FaceAlgebraElement<S> {
    pub fn zero(n: usize) -> Result<Self> {
        let basis = face_basis(n)?;
        Ok(FaceAlgebraElement {
            basis,
            coeffs: vec![S::zero(); basis.len()],
        })
    }

    /// The unit face `([n])`.
    pub fn one(n: usize) -> Result<Self> {
        Self::from_face(&Face::unit(n))
    }

    pub fn from_face(f: &Face) -> Result<Self> {
        let mut e = Self::zero(f.n)?;
        e.coeffs[e.basis.index[f]] = S::one();
        Ok(e)
    }

    pub fn from_terms<I: IntoIterator<Item = (Face, S)>>(n: usize, terms: I) -> Result<Self> {
        let mut e = Self::zero(n)?;
        for (f, c) in terms {
            if f.n != n {
                return Err(Error::DegreeMismatch {
                    left: n,
                    right: f.n,
                });
            }
            e.coeffs[e.basis.index[&f]] += &c;
        }
        Ok(e)
    }

    pub fn n(&self) -> usize {
        self.basis.n
    }

    pub fn basis(&self) -> &'static FaceBasis {
        self.basis
    }

    pub fn coeff(&self, f: &Face) -> S {
        self.basis
            .index_of(f)
            .map_or_else(S::zero, |i| self.coeffs[i].clone())
    }

    /// Nonzero terms in canonical face order.
    pub fn terms(&self) -> Vec<(Face, S)> {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| (self.basis.faces[i].clone(), c.clone()))
            .collect()
    }

    pub fn support_len(&self) -> usize {
        self.coeffs.iter().filter(|c| !c.is_zero()).count()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    fn check_same(&self, other: &Self) -> Result<()> {
        if self.basis.n != other.basis.n {
            Err(Error::DegreeMismatch {
                left: self.basis.n,
                right: other.basis.n,
            })
        } else {
            Ok(())
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a.clone() + b.clone())
            .collect();
        Ok(FaceAlgebraElement {
            basis: self.basis,
            coeffs,
        })
    }

    pub fn scale(&self, c: &S) -> Self {
        FaceAlgebraElement {
            basis: self.basis,
            coeffs: self.coeffs.iter().map(|a| a.clone() * c.clone()).collect(),
        }
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        let nz_b: Vec<(usize, &S)> = other
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .collect();
        let mut out = vec![S::zero(); self.coeffs.len()];
        for (i, x) in self.coeffs.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
            for &(j, y) in &nz_b {
                out[self.basis.product_index(i, j)] += &(x.clone() * y.clone());
            }
        }
        Ok(FaceAlgebraElement {
            basis: self.basis,
            coeffs: out,
        })
    }

    /// `w x`: the action extended linearly.
    pub fn act(&self, w: &Permutation) -> Self {
        let mut out = vec![S::zero(); self.coeffs.len()];
        for (i, c) in self.coeffs.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
            out[self.basis.index[&self.basis.faces[i].act(w)]] = c.clone();
        }
        FaceAlgebraElement {
            basis: self.basis,
            coeffs: out,
        }
    }

    /// JSON map from face strings ("1,2|3") to scalar strings.
    pub fn to_json(&self) -> Value {
        let map: Map<String, Value> = self
            .terms()
            .into_iter()
            .map(|(f, c)| (f.to_string(), Value::String(c.to_string())))
            .collect();
        Value::Object(map)
    }
}

impl<S: Scalar> fmt::Display for FaceAlgebraElement<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms = self.terms();
        if terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = terms
            .iter()
            .map(|(face, c)| {
                if c.is_one() {
                    face.compact()
                } else {
                    format!("{c}*{}", face.compact())
                }
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

impl<S: Scalar> Add for &FaceAlgebraElement<S> {
    type Output = FaceAlgebraElement<S>;
    fn add(self, rhs: Self) -> Self::Output {
        self.try_add(rhs).expect("size mismatch")
    }
}

impl<S: Scalar> Sub for &FaceAlgebraElement<S> {
    type Output = FaceAlgebraElement<S>;
    fn sub(self, rhs: Self) -> Self::Output {
        self.try_add(&-rhs).expect("size mismatch")
    }
}

impl<S: Scalar> Neg for &FaceAlgebraElement<S> {
    type Output = FaceAlgebraElement<S>;
    fn neg(self) -> Self::Output {
        self.scale(&-S::one())
    }
}

impl<S: Scalar> Mul for &FaceAlgebraElement<S> {
    type Output = FaceAlgebraElement<S>;
    fn mul(self, rhs: Self) -> Self::Output {
        self.try_mul(rhs).expect("size mismatch")
    }
}

impl<S: Scalar> AlgebraElement<S> for FaceAlgebraElement<S> {
    fn dimension(&self) -> usize {
        self.coeffs.len()
    }

    fn coordinates(&self) -> Vec<S> {
        self.coeffs.clone()
    }

    fn one_like(&self) -> Self {
        Self::one(self.basis.n).expect("basis exists")
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

/// `B̃_alpha`: the sum of all faces of type `alpha`.
pub fn btilde<S: Scalar>(alpha: &Composition) -> Result<FaceAlgebraElement<S>> {
    FaceAlgebraElement::from_terms(
        alpha.n(),
        faces_of_type(alpha).into_iter().map(|f| (f, S::one())),
    )
}

/// `w̃0 = Σ_F (-1)^{n - ℓ(F)} F`.
pub fn w0tilde<S: Scalar>(n: usize) -> Result<FaceAlgebraElement<S>> {
    let basis = face_basis(n)?;
    FaceAlgebraElement::from_terms(
        n,
        basis.faces.iter().map(|f| {
            (
                f.clone(),
                S::from_i64(if (n - f.len()).is_multiple_of(2) {
                    1
                } else {
                    -1
                }),
            )
        }),
    )
}

/// The face basis as algebra elements (for operator matrices).
pub fn face_basis_elements<S: Scalar>(n: usize) -> Result<Vec<FaceAlgebraElement<S>>> {
    face_basis(n)?
        .faces
        .iter()
        .map(FaceAlgebraElement::from_face)
        .collect()
}
