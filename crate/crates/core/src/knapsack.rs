//! Knapsack numbers of faces and their signed and weighted variants.
//!
//! `n_alpha(F)` counts the faces `G` of type `alpha` with `F ⊑ G`. It is
//! computed by brute force over the faces of type `alpha`; a second
//! implementation packs the blocks of `F` into bags of sizes `alpha_i`.
//! Both are invariant under the `S_n` action, so value lists over all faces
//! are computed once per face type.

use std::collections::{BTreeMap, HashMap};

use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::Value;

use crate::combinatorics::{enumerate_compositions, Composition};
use crate::error::{Error, Result};
use crate::face_monoid::{enumerate_faces, faces_of_type, Face};
use crate::scalar::{parse_rational, Rational};

/// Nonnegative rational weights `gamma_alpha`, one per composition of `n`
/// (zero when absent).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightVector {
    n: usize,
    weights: BTreeMap<Composition, Rational>,
}

impl WeightVector {
    pub fn zero(n: usize) -> Self {
        WeightVector {
            n,
            weights: BTreeMap::new(),
        }
    }

    /// The weight vector with `gamma_alpha = 1` and all others zero.
    pub fn indicator(alpha: &Composition) -> Self {
        let mut w = Self::zero(alpha.n());
        w.weights.insert(alpha.clone(), Rational::one());
        w
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn set(&mut self, alpha: &Composition, w: Rational) -> Result<()> {
        if alpha.n() != self.n {
            return Err(Error::InvalidComposition(format!(
                "{alpha} is not a composition of {}",
                self.n
            )));
        }
        if w.is_negative() {
            return Err(Error::NegativeWeight {
                composition: alpha.to_string(),
                weight: w.to_string(),
            });
        }
        if w.is_zero() {
            self.weights.remove(alpha);
        } else {
            self.weights.insert(alpha.clone(), w);
        }
        Ok(())
    }

    pub fn get(&self, alpha: &Composition) -> Rational {
        self.weights
            .get(alpha)
            .cloned()
            .unwrap_or_else(Rational::zero)
    }

    /// Compositions with nonzero weight, in composition order.
    pub fn support(&self) -> impl Iterator<Item = (&Composition, &Rational)> {
        self.weights.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.weights.is_empty()
    }

    /// `{"a1,a2,...": "p/q", ...}`; unknown compositions and negative
    /// weights are rejected.
    pub fn from_json(n: usize, v: &Value) -> Result<Self> {
        let obj = v
            .as_object()
            .ok_or_else(|| Error::Parse("weight file must be a JSON object".into()))?;
        let mut w = Self::zero(n);
        for (k, val) in obj {
            let alpha: Composition = k.parse()?;
            let r = match val {
                Value::String(s) => parse_rational(s)?,
                Value::Number(x) => parse_rational(&x.to_string())?,
                _ => {
                    return Err(Error::Parse(format!(
                        "weight for {k} must be a string or integer"
                    )))
                }
            };
            w.set(&alpha, r)?;
        }
        Ok(w)
    }

    pub fn to_json(&self) -> Value {
        Value::Object(
            self.weights
                .iter()
                .map(|(a, w)| (a.to_string(), Value::String(w.to_string())))
                .collect(),
        )
    }
}

/// Sorted distinct values with the number of faces taking each.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpectrumSet<T: Ord> {
    counts: BTreeMap<T, usize>,
}

impl<T: Ord + Clone> SpectrumSet<T> {
    pub fn from_values<I: IntoIterator<Item = T>>(values: I) -> Self {
        let mut counts = BTreeMap::new();
        for v in values {
            *counts.entry(v).or_insert(0) += 1;
        }
        SpectrumSet { counts }
    }

    /// Ascending distinct values.
    pub fn values(&self) -> Vec<T> {
        self.counts.keys().cloned().collect()
    }

    pub fn count(&self, v: &T) -> usize {
        self.counts.get(v).copied().unwrap_or(0)
    }

    /// `(value, number of faces)` pairs, ascending.
    pub fn counts(&self) -> impl Iterator<Item = (&T, &usize)> {
        self.counts.iter()
    }

    pub fn len(&self) -> usize {
        self.counts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.counts.is_empty()
    }

    pub fn contains(&self, v: &T) -> bool {
        self.counts.contains_key(v)
    }
}

/// `N_alpha(F)`: the faces of type `alpha` containing `F`.
pub fn knapsack_witnesses(alpha: &Composition, f: &Face) -> Vec<Face> {
    faces_of_type(alpha)
        .into_iter()
        .filter(|g| f.is_contained_in(g))
        .collect()
}

/// `n_alpha(F)` by brute force.
pub fn knapsack_number(alpha: &Composition, f: &Face) -> u64 {
    faces_of_type(alpha)
        .iter()
        .filter(|g| f.is_contained_in(g))
        .count() as u64
}

/// `n_alpha(F)` as the number of ways to distribute the blocks of `F` into
/// bags of capacities `alpha_1, ..., alpha_k`, filling every bag exactly.
pub fn knapsack_number_packing(alpha: &Composition, f: &Face) -> u64 {
    if alpha.n() != f.n() {
        return 0;
    }
    let sizes: Vec<usize> = f.blocks().iter().map(|b| b.count_ones() as usize).collect();
    let mut memo = HashMap::new();
    fn go(
        j: usize,
        sizes: &[usize],
        caps: &mut Vec<usize>,
        memo: &mut HashMap<(usize, Vec<usize>), u64>,
    ) -> u64 {
        if j == sizes.len() {
            return u64::from(caps.iter().all(|&c| c == 0));
        }
        if let Some(&v) = memo.get(&(j, caps.clone())) {
            return v;
        }
        let key = (j, caps.clone());
        let mut total = 0;
        for i in 0..caps.len() {
            if caps[i] >= sizes[j] {
                caps[i] -= sizes[j];
                total += go(j + 1, sizes, caps, memo);
                caps[i] += sizes[j];
            }
        }
        memo.insert(key, total);
        total
    }
    go(0, &sizes, &mut alpha.parts().to_vec(), &mut memo)
}

fn sign(n: usize, f: &Face) -> i64 {
    if (n - f.len()).is_multiple_of(2) {
        1
    } else {
        -1
    }
}

/// `ñ_alpha(F) = (-1)^{n - ℓ(F)} n_alpha(F)`.
pub fn signed_knapsack(alpha: &Composition, f: &Face) -> i64 {
    sign(f.n(), f) * knapsack_number(alpha, f) as i64
}

/// `n_alpha(F)` for every face in `faces`, one brute-force count per face type.
pub fn knapsack_values(alpha: &Composition, faces: &[Face]) -> Vec<u64> {
    let mut memo: HashMap<Composition, u64> = HashMap::new();
    faces
        .iter()
        .map(|f| {
            *memo
                .entry(f.face_type())
                .or_insert_with(|| knapsack_number(alpha, f))
        })
        .collect()
}

/// `ñ_alpha(F)` for every face in `faces`.
pub fn signed_values(alpha: &Composition, faces: &[Face]) -> Vec<i64> {
    knapsack_values(alpha, faces)
        .into_iter()
        .zip(faces)
        .map(|(v, f)| sign(f.n(), f) * v as i64)
        .collect()
}

/// `n_alpha(CF)` with face counts.
pub fn knapsack_spectrum(alpha: &Composition) -> SpectrumSet<u64> {
    SpectrumSet::from_values(knapsack_values(alpha, &enumerate_faces(alpha.n())))
}

/// `ñ_alpha(CF)` with face counts.
pub fn signed_spectrum(alpha: &Composition) -> SpectrumSet<i64> {
    SpectrumSet::from_values(signed_values(alpha, &enumerate_faces(alpha.n())))
}

/// The index `i` with `n_alpha(F) = k_i`, and the ladder `k_0 < ... < k_m`.
pub fn filtration_level(alpha: &Composition, f: &Face) -> (usize, Vec<u64>) {
    let ladder = knapsack_spectrum(alpha).values();
    let v = knapsack_number(alpha, f);
    let i = ladder
        .binary_search(&v)
        .expect("value occurs in the spectrum");
    (i, ladder)
}

/// Number of one-element blocks of `F`.
pub fn singleton_count(f: &Face) -> usize {
    f.singleton_count()
}

/// `{-n+2} ∪ [-n+4, n-3] ∪ {0} ∪ {n}`, ascending.
pub fn l_set(n: usize) -> Result<Vec<i64>> {
    if n <= 1 {
        return Err(Error::OutOfRange(format!(
            "the set L(n) needs n > 1, got {n}"
        )));
    }
    let n = n as i64;
    let mut v: Vec<i64> = vec![-n + 2, 0, n];
    v.extend(-n + 4..=n - 3);
    v.sort_unstable();
    v.dedup();
    Ok(v)
}

/// `n_gamma(F) = Σ gamma_alpha n_alpha(F)`.
pub fn weighted_knapsack(gamma: &WeightVector, f: &Face) -> Rational {
    gamma
        .support()
        .map(|(alpha, w)| w * Rational::from_integer(knapsack_number(alpha, f).into()))
        .fold(Rational::zero(), |a, b| a + b)
}

/// `ñ_gamma(F) = (-1)^{n - ℓ(F)} n_gamma(F)`.
pub fn weighted_signed(gamma: &WeightVector, f: &Face) -> Rational {
    weighted_knapsack(gamma, f) * Rational::from_integer(sign(f.n(), f).into())
}

/// `n_gamma(F)` for every face in `faces`.
pub fn weighted_values(gamma: &WeightVector, faces: &[Face]) -> Vec<Rational> {
    let mut total = vec![Rational::zero(); faces.len()];
    for (alpha, w) in gamma.support() {
        for (t, v) in total.iter_mut().zip(knapsack_values(alpha, faces)) {
            *t += w * Rational::from_integer(v.into());
        }
    }
    total
}

/// `ñ_gamma(F)` for every face in `faces`.
pub fn weighted_signed_values(gamma: &WeightVector, faces: &[Face]) -> Vec<Rational> {
    weighted_values(gamma, faces)
        .into_iter()
        .zip(faces)
        .map(|(v, f)| v * Rational::from_integer(sign(f.n(), f).into()))
        .collect()
}

pub fn weighted_spectrum(gamma: &WeightVector) -> SpectrumSet<Rational> {
    SpectrumSet::from_values(weighted_values(gamma, &enumerate_faces(gamma.n())))
}

pub fn weighted_signed_spectrum(gamma: &WeightVector) -> SpectrumSet<Rational> {
    SpectrumSet::from_values(weighted_signed_values(gamma, &enumerate_faces(gamma.n())))
}

/// A reproducible weight vector: each composition of `n` gets, with
/// probability one half, a weight `p/q` with `p` in `1..=5` and `q` in `1..=4`.
pub fn random_weight_vector(n: usize, seed: u64) -> WeightVector {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut w = WeightVector::zero(n);
    for alpha in enumerate_compositions(n) {
        if rng.gen_bool(0.5) {
            let p: i64 = rng.gen_range(1..=5);
            let q: i64 = rng.gen_range(1..=4);
            w.set(&alpha, Rational::new(p.into(), q.into()))
                .expect("nonnegative weight");
        }
    }
    w
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f(s: &str) -> Face {
        Face::parse_compact(s).unwrap()
    }

    fn c(s: &str) -> Composition {
        s.parse().unwrap()
    }

    #[test]
    fn witnesses() {
        let a = c("2,2");
        assert_eq!(
            knapsack_witnesses(&a, &f("(4,23,1)")),
            vec![f("(23,14)"), f("(14,23)")]
        );
        assert!(knapsack_witnesses(&a, &f("(123,4)")).is_empty());
        for face in enumerate_faces(4) {
            assert_eq!(knapsack_witnesses(&c("4"), &face), vec![Face::unit(4)]);
        }
    }

    #[test]
    fn numbers() {
        let a = c("2,2");
        assert_eq!(knapsack_number(&a, &f("(3,2,1,4)")), 6);
        assert_eq!(signed_knapsack(&a, &f("(3,2,1,4)")), 6);
        assert_eq!(knapsack_number(&a, &f("(4,23,1)")), 2);
        assert_eq!(signed_knapsack(&a, &f("(4,23,1)")), -2);
        assert_eq!(knapsack_number(&a, &f("(123,4)")), 0);
    }

    #[test]
    fn spectra() {
        assert_eq!(knapsack_spectrum(&c("2,2")).values(), vec![0, 2, 6]);
        assert_eq!(knapsack_spectrum(&c("5")).values(), vec![1]);
        for n in 2..=5 {
            for a in enumerate_compositions(n).filter(|a| a.len() > 1) {
                assert!(knapsack_spectrum(&a).contains(&0));
            }
        }
    }

    #[test]
    fn ladder() {
        let (_, ladder) = filtration_level(&c("2,2"), &f("(3,2,1,4)"));
        assert_eq!(ladder, vec![0, 2, 6]);
        assert_eq!(filtration_level(&c("2,2"), &f("(3,2,1,4)")).0, 2);
        assert_eq!(filtration_level(&c("2,2"), &f("(123,4)")).0, 0);
        for face in enumerate_faces(3) {
            assert_eq!(filtration_level(&c("3"), &face), (0, vec![1]));
        }
    }

    #[test]
    fn singletons() {
        let x = Face::new(7, &[vec![4], vec![2, 5], vec![1], vec![7], vec![3, 6]]).unwrap();
        assert_eq!(singleton_count(&x), 3);
        assert_eq!(singleton_count(&Face::unit(4)), 0);
        for n in 2..=6 {
            let counts: Vec<usize> = enumerate_faces(n).iter().map(singleton_count).collect();
            assert!(counts.contains(&n));
            assert!(!counts.contains(&(n - 1)));
        }
    }

    #[test]
    fn l_set_values() {
        assert_eq!(l_set(5).unwrap(), vec![-3, -1, 0, 1, 2, 5]);
        assert_eq!(l_set(4).unwrap(), vec![-2, 0, 1, 4]);
        assert_eq!(l_set(3).unwrap(), vec![-1, 0, 3]);
        assert_eq!(l_set(2).unwrap(), vec![0, 2]);
        assert!(l_set(1).is_err());
    }

    #[test]
    fn packing_matches_brute_force() {
        for n in 0..=5 {
            let faces = enumerate_faces(n);
            for a in enumerate_compositions(n) {
                for face in &faces {
                    assert_eq!(
                        knapsack_number(&a, face),
                        knapsack_number_packing(&a, face),
                        "{a} {face}"
                    );
                }
            }
        }
    }

    #[test]
    fn weights() {
        let a = c("2,2");
        let face = f("(3,2,1,4)");
        let mut g = WeightVector::zero(4);
        assert_eq!(weighted_knapsack(&g, &face), Rational::zero());
        g.set(&a, parse_rational("1/2").unwrap()).unwrap();
        assert_eq!(
            weighted_knapsack(&g, &face),
            Rational::from_integer(3.into())
        );
        assert_eq!(
            weighted_signed(&WeightVector::indicator(&a), &f("(4,23,1)")),
            Rational::from_integer((-2).into())
        );
        assert!(g.set(&a, parse_rational("-1").unwrap()).is_err());
        assert!(g.set(&c("1,2"), Rational::one()).is_err());
        let v = serde_json::json!({"1,2": "1", "2,1": 2, "1,1,1": "1/3"});
        let g = WeightVector::from_json(3, &v).unwrap();
        assert_eq!(g.get(&c("1,1,1")), parse_rational("1/3").unwrap());
        assert_eq!(g.get(&c("3")), Rational::zero());
        assert_eq!(WeightVector::from_json(3, &g.to_json()).unwrap(), g);
        assert!(WeightVector::from_json(3, &serde_json::json!({"1,3": "1"})).is_err());
        assert!(WeightVector::from_json(3, &serde_json::json!({"1,2": "-1"})).is_err());
    }

    #[test]
    fn random_weights_are_reproducible() {
        assert_eq!(random_weight_vector(4, 7), random_weight_vector(4, 7));
        let w = random_weight_vector(4, 7);
        assert!(w.support().all(|(_, x)| x.is_positive()));
    }
}
