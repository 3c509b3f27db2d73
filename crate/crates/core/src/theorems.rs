//! Executable checks of the annihilation, minimal-polynomial and spectrum
//! statements for `B_alpha`, `w0 B_alpha`, `B_alpha w0`, the top-to-random
//! shuffle and their weighted versions, plus the supporting identities.
//!
//! Every verifier returns a [`VerificationReport`]; a failed assertion
//! carries a witness (the first nonzero coefficient of the offending
//! element, or the first mismatching value).

use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Map, Value};

use crate::bidigare::{
    from_group_algebra, group_action_on_face, rho, rho_inv, to_group_algebra, DescentAlgebraElement,
};
use crate::combinatorics::{
    descent_set, enumerate_compositions, enumerate_permutations, enumerate_subsets, gaps, gaps_inv,
    rev, sub, Composition, Permutation,
};
use crate::error::{Error, Result};
use crate::exact_linalg::{
    eigen_multiplicity, krylov_min_poly, poly_eval_at_element, poly_from_roots, rank,
    right_mult_matrix, AlgebraElement, ExactMatrix, Polynomial,
};
use crate::face_monoid::{
    btilde, enumerate_faces, face_basis, face_basis_elements, face_of_permutation, ordered_bell,
    w0tilde, FaceAlgebraElement,
};
use crate::group_algebra::{
    basis_b, basis_b_comp, basis_d, top_to_random, w0_element, weighted_b, GroupAlgebraElement,
};
use crate::knapsack::{
    knapsack_spectrum, l_set, random_weight_vector, signed_spectrum, signed_values,
    weighted_signed_values, weighted_spectrum, SpectrumSet, WeightVector,
};
use crate::scalar::{Fp, Rational, Scalar};

type Q = Rational;

/// Outcome of one verifier run.
#[derive(Clone, Debug, PartialEq)]
pub struct VerificationReport {
    pub claim: String,
    pub params: Map<String, Value>,
    pub pass: bool,
    /// Present whenever `pass` is false.
    pub witness: Option<String>,
    /// Computed data worth reporting (polynomials, multiplicities).
    pub result: Option<Value>,
    pub millis: u128,
}

impl VerificationReport {
    /// `{claim, params, pass, witness?, result?, millis}`.
    pub fn to_json(&self) -> Value {
        let mut m = Map::new();
        m.insert("claim".into(), Value::String(self.claim.clone()));
        m.insert("params".into(), Value::Object(self.params.clone()));
        m.insert("pass".into(), Value::Bool(self.pass));
        if let Some(w) = &self.witness {
            m.insert("witness".into(), Value::String(w.clone()));
        }
        if let Some(r) = &self.result {
            m.insert("result".into(), r.clone());
        }
        m.insert("millis".into(), json!(self.millis));
        Value::Object(m)
    }
}

impl fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let params: Vec<String> = self
            .params
            .iter()
            .map(|(k, v)| format!("{k}={}", plain(v)))
            .collect();
        write!(
            f,
            "{} {} [{}] {}ms",
            if self.pass { "PASS" } else { "FAIL" },
            self.claim,
            params.join(" "),
            self.millis
        )?;
        if let Some(w) = &self.witness {
            write!(f, " witness: {w}")?;
        }
        Ok(())
    }
}

fn plain(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

/// Records the first failed requirement.
#[derive(Default)]
struct Check {
    witness: Option<String>,
}

impl Check {
    fn require(&mut self, ok: bool, witness: impl FnOnce() -> String) {
        if !ok && self.witness.is_none() {
            self.witness = Some(witness());
        }
    }

    fn report(
        self,
        claim: &str,
        params: Map<String, Value>,
        start: Instant,
        result: Option<Value>,
    ) -> VerificationReport {
        VerificationReport {
            claim: claim.to_string(),
            params,
            pass: self.witness.is_none(),
            witness: self.witness,
            result,
            millis: start.elapsed().as_millis(),
        }
    }
}

fn params(n: usize, field: &str) -> Map<String, Value> {
    let mut m = Map::new();
    m.insert("n".into(), json!(n));
    m.insert("field".into(), Value::String(field.into()));
    m
}

fn alpha_params(n: usize, alpha: &Composition) -> Map<String, Value> {
    let mut m = params(n, "Q");
    m.insert("alpha".into(), Value::String(alpha.to_string()));
    m
}

fn gamma_params(gamma: &WeightVector) -> Map<String, Value> {
    let mut m = params(gamma.n(), "Q");
    m.insert("gamma".into(), gamma.to_json());
    m
}

fn check_alpha(n: usize, alpha: &Composition) -> Result<()> {
    if alpha.n() != n {
        Err(Error::InvalidComposition(format!(
            "{alpha} is not a composition of {n}"
        )))
    } else {
        Ok(())
    }
}

fn ga_witness<S: Scalar>(label: &str, e: &GroupAlgebraElement<S>) -> String {
    match e.terms().into_iter().next() {
        Some((w, c)) => format!("{label}: coefficient of {w} is {c}"),
        None => format!("{label}: element is zero"),
    }
}

fn face_witness<S: Scalar>(label: &str, e: &FaceAlgebraElement<S>) -> String {
    match e.terms().into_iter().next() {
        Some((face, c)) => format!("{label}: coefficient of {face} is {c}"),
        None => format!("{label}: element is zero"),
    }
}

fn poly_witness<S: Scalar>(label: &str, got: &Polynomial<S>, want: &Polynomial<S>) -> String {
    format!("{label}: got {}, expected {}", got.pretty(), want.pretty())
}

fn ints(v: &[i64]) -> Vec<Q> {
    v.iter().map(|&k| Q::from_i64(k)).collect()
}

fn u_ints(v: &[u64]) -> Vec<Q> {
    v.iter().map(|&k| Q::from_i64(k as i64)).collect()
}

/// `∏ (a - k)` over the distinct `roots`, multiplied left to right.
pub fn product_of_shifts<S: Scalar, A: AlgebraElement<S>>(a: &A, roots: &[S]) -> A {
    let one = a.one_like();
    let mut acc = one.clone();
    let mut seen: Vec<&S> = Vec::new();
    for k in roots {
        if seen.contains(&k) {
            continue;
        }
        seen.push(k);
        acc = acc.algebra_mul(&a.algebra_add(&one.algebra_scale(&-k.clone())));
    }
    acc
}

/// `w0 B_alpha`.
pub fn w0_b<S: Scalar>(alpha: &Composition) -> GroupAlgebraElement<S> {
    &w0_element::<S>(alpha.n()) * &basis_b_comp::<S>(alpha)
}

/// `B_alpha w0`.
pub fn b_w0<S: Scalar>(alpha: &Composition) -> GroupAlgebraElement<S> {
    &basis_b_comp::<S>(alpha) * &w0_element::<S>(alpha.n())
}

/// `w̃0 B̃_alpha`.
pub fn w0tilde_btilde<S: Scalar>(alpha: &Composition) -> Result<FaceAlgebraElement<S>> {
    Ok(&w0tilde::<S>(alpha.n())? * &btilde::<S>(alpha)?)
}

/// `∏_{k ∈ n_alpha(CF)} (B_alpha - k) = 0`.
pub fn verify_annihilation_balpha(n: usize, alpha: &Composition) -> Result<VerificationReport> {
    check_alpha(n, alpha)?;
    let start = Instant::now();
    let mut check = Check::default();
    let roots = u_ints(&knapsack_spectrum(alpha).values());
    let e = product_of_shifts(&basis_b_comp::<Q>(alpha), &roots);
    check.require(e.is_zero(), || {
        ga_witness("product over n_alpha(CF) at B_alpha", &e)
    });
    let result = json!({ "roots": roots.iter().map(|r| r.to_string()).collect::<Vec<_>>() });
    Ok(check.report("annihilation", alpha_params(n, alpha), start, Some(result)))
}

/// `w0 B_alpha ∏_{k ∈ n_alpha(CF), k ≠ 0} (w0 B_alpha + k)(w0 B_alpha - k) = 0`.
pub fn verify_annihilation_w0balpha_long(
    n: usize,
    alpha: &Composition,
) -> Result<VerificationReport> {
    check_alpha(n, alpha)?;
    let start = Instant::now();
    let mut check = Check::default();
    let a = w0_b::<Q>(alpha);
    let one = GroupAlgebraElement::<Q>::one(n);
    let mut acc = a.clone();
    for k in knapsack_spectrum(alpha)
        .values()
        .into_iter()
        .filter(|&k| k != 0)
    {
        let k = Q::from_i64(k as i64);
        acc = &(&acc * &(&a + &one.scale(&k))) * &(&a - &one.scale(&k));
    }
    check.require(acc.is_zero(), || {
        ga_witness("long product at w0 B_alpha", &acc)
    });
    Ok(check.report("annihilation-long", alpha_params(n, alpha), start, None))
}

/// `∏_{k ∈ ñ_alpha(CF)} (x - k)` annihilates both `w0 B_alpha` and
/// `B_alpha w0`, and no proper sub-product does.
pub fn verify_annihilation_optimal(n: usize, alpha: &Composition) -> Result<VerificationReport> {
    check_alpha(n, alpha)?;
    let start = Instant::now();
    let mut check = Check::default();
    let roots = ints(&signed_spectrum(alpha).values());
    for (label, a) in [
        ("w0 B_alpha", w0_b::<Q>(alpha)),
        ("B_alpha w0", b_w0::<Q>(alpha)),
    ] {
        let e = product_of_shifts(&a, &roots);
        check.require(e.is_zero(), || {
            ga_witness(&format!("product over signed spectrum at {label}"), &e)
        });
        for (i, k) in roots.iter().enumerate() {
            let fewer: Vec<Q> = roots
                .iter()
                .enumerate()
                .filter(|&(j, _)| j != i)
                .map(|(_, r)| r.clone())
                .collect();
            let e = product_of_shifts(&a, &fewer);
            check.require(!e.is_zero(), || {
                format!("{label}: product without the factor (x - {k}) still vanishes")
            });
        }
    }
    let result = json!({ "roots": roots.iter().map(|r| r.to_string()).collect::<Vec<_>>() });
    Ok(check.report(
        "annihilation-optimal",
        alpha_params(n, alpha),
        start,
        Some(result),
    ))
}

/// Largest `n` at which minimal polynomials are also computed in the face algebra.
pub const FACE_KRYLOV_MAX_N: usize = 5;

/// `μ(w0 B_alpha) = μ(B_alpha w0) = μ(w̃0 B̃_alpha) = ∏_{k ∈ ñ_alpha(CF)} (x - k)`.
pub fn verify_min_poly(n: usize, alpha: &Composition) -> Result<VerificationReport> {
    check_alpha(n, alpha)?;
    let start = Instant::now();
    let mut check = Check::default();
    let want = poly_from_roots(&ints(&signed_spectrum(alpha).values()));
    let mu = krylov_min_poly(&w0_b::<Q>(alpha));
    check.require(mu == want, || poly_witness("μ(w0 B_alpha)", &mu, &want));
    let mu_r = krylov_min_poly(&b_w0::<Q>(alpha));
    check.require(mu_r == want, || poly_witness("μ(B_alpha w0)", &mu_r, &want));
    let mut p = alpha_params(n, alpha);
    if n <= FACE_KRYLOV_MAX_N {
        let mu_f = krylov_min_poly(&w0tilde_btilde::<Q>(alpha)?);
        check.require(mu_f == want, || poly_witness("μ(w̃0 B̃_alpha)", &mu_f, &want));
    }
    p.insert(
        "face_algebra_checked".into(),
        Value::Bool(n <= FACE_KRYLOV_MAX_N),
    );
    Ok(check.report("minpoly", p, start, Some(mu.to_json())))
}

/// `μ(T_1) = ∏_{k ∈ {0, ..., n-2, n}} (x - k)`.
pub fn verify_ttr_baseline(n: usize) -> Result<VerificationReport> {
    if n == 0 {
        return Err(Error::OutOfRange(
            "the top-to-random element needs n >= 1".into(),
        ));
    }
    let start = Instant::now();
    let mut check = Check::default();
    let mut roots: Vec<i64> = (0..n as i64 - 1).collect();
    roots.push(n as i64);
    let want = poly_from_roots(&ints(&roots));
    let mu = krylov_min_poly(&top_to_random::<Q>(n, 1)?);
    check.require(mu == want, || poly_witness("μ(T1)", &mu, &want));
    Ok(check.report("ttr-baseline", params(n, "Q"), start, Some(mu.to_json())))
}

/// `ñ_{(1,n-1)}(CF) = L(n)` by enumeration of all faces.
pub fn verify_l_set(n: usize) -> Result<VerificationReport> {
    let l = l_set(n)?;
    let start = Instant::now();
    let mut check = Check::default();
    let alpha = Composition::new(vec![1, n - 1])?;
    let spec = signed_spectrum(&alpha).values();
    check.require(spec == l, || {
        format!(
            "signed spectrum of (1,{}) is {spec:?}, L(n) is {l:?}",
            n - 1
        )
    });
    Ok(check.report("l-set", params(n, "Q"), start, Some(json!(spec))))
}

/// `μ(w0 T_1) = μ(T_1 w0) = ∏_{k ∈ L(n)} (x - k)`, with the antipode
/// identities `S(T_1) = B_(1,n-1)` and `S(T_1 w0) = w0 B_(1,n-1)`.
pub fn verify_ttr(n: usize) -> Result<VerificationReport> {
    let l = l_set(n)?;
    let start = Instant::now();
    let mut check = Check::default();
    let want = poly_from_roots(&ints(&l));
    let a = top_to_random::<Q>(n, 1)?;
    let w0 = w0_element::<Q>(n);
    let w0a = &w0 * &a;
    let aw0 = &a * &w0;
    let mu = krylov_min_poly(&w0a);
    check.require(mu == want, || poly_witness("μ(w0 T1)", &mu, &want));
    let mu_r = krylov_min_poly(&aw0);
    check.require(mu_r == want, || poly_witness("μ(T1 w0)", &mu_r, &want));
    let alpha = Composition::new(vec![1, n - 1])?;
    let b = basis_b_comp::<Q>(&alpha);
    check.require(a.antipode() == b, || {
        ga_witness("S(T1) - B_(1,n-1)", &(&a.antipode() - &b))
    });
    let wb = &w0 * &b;
    check.require(aw0.antipode() == wb, || {
        ga_witness("S(T1 w0) - w0 B_(1,n-1)", &(&aw0.antipode() - &wb))
    });
    let spec = signed_spectrum(&alpha).values();
    check.require(spec == l, || {
        format!(
            "signed spectrum of (1,{}) is {spec:?}, L(n) is {l:?}",
            n - 1
        )
    });
    Ok(check.report("ttr", params(n, "Q"), start, Some(mu.to_json())))
}

/// `μ(w0 T_1)` over `F_P`. For `(n, P) = (4, 3)` it must be `x(x - 1)^2`;
/// otherwise the polynomial is only reported, together with whether it is
/// the reduction mod `P` of the rational minimal polynomial.
pub fn verify_ttr_finite_field<const P: u64>(n: usize) -> Result<VerificationReport> {
    if n <= 1 {
        return Err(Error::OutOfRange(format!(
            "the reverse top-to-random element needs n > 1, got {n}"
        )));
    }
    let start = Instant::now();
    let mut check = Check::default();
    let a = &w0_element::<Fp<P>>(n) * &top_to_random::<Fp<P>>(n, 1)?;
    let mu = krylov_min_poly(&a);
    let reduced = Polynomial::new(
        krylov_min_poly(&(&w0_element::<Q>(n) * &top_to_random::<Q>(n, 1)?))
            .coeffs()
            .iter()
            .map(|c| Fp::<P>::from_rational(c).expect("integer coefficients"))
            .collect(),
    );
    let asserted = (n, P) == (4, 3);
    if asserted {
        let want = Polynomial::<Fp<P>>::from_i64(&[0, 1, -2, 1]);
        check.require(mu == want, || poly_witness("μ(w0 T1) over F3", &mu, &want));
    }
    let mut p = params(n, &format!("F{P}"));
    p.insert("asserted".into(), Value::Bool(asserted));
    let result = json!({
        "coefficients": mu.coeffs().iter().map(|c| c.to_string()).collect::<Vec<_>>(),
        "polynomial": mu.to_coefficient_string(),
        "equals_rational_reduction": mu == reduced,
    });
    Ok(check.report("ttr-fp", p, start, Some(result)))
}

/// Run-time prime version of [`verify_ttr_finite_field`].
pub fn verify_ttr_finite_field_dyn(n: usize, p: u64) -> Result<VerificationReport> {
    crate::with_prime!(p, P => verify_ttr_finite_field::<P>(n))
        .unwrap_or_else(|| Err(Error::InvalidScalar(format!("unsupported modulus {p}"))))
}

/// Checks the right-multiplication operator of `a` on `kF`: lower triangular
/// in canonical face order with diagonal `diag`, and `dim ker(M - λ)` equal
/// to the number of faces with diagonal entry `λ`, summing to the dimension.
fn check_face_operator(a: &FaceAlgebraElement<Q>, diag: &[Q], check: &mut Check) -> Result<Value> {
    let n = a.n();
    let basis = face_basis(n)?;
    let m = right_mult_matrix(a, &face_basis_elements::<Q>(n)?);
    let faces = basis.faces();
    let upper = (0..m.nrows())
        .flat_map(|i| ((i + 1)..m.ncols()).map(move |j| (i, j)))
        .find(|&(i, j)| !m.get(i, j).is_zero());
    check.require(upper.is_none(), || {
        let (i, j) = upper.unwrap();
        format!(
            "entry at row {} column {} is {} above the diagonal",
            faces[i],
            faces[j],
            m.get(i, j)
        )
    });
    let got = m.diagonal();
    let bad = got.iter().zip(diag).position(|(x, y)| x != y);
    check.require(bad.is_none(), || {
        let i = bad.unwrap();
        format!(
            "diagonal entry at {} is {}, signed knapsack number is {}",
            faces[i], got[i], diag[i]
        )
    });
    let spec = SpectrumSet::from_values(diag.iter().cloned());
    let mut total = 0;
    let mut mults = Vec::new();
    for (lambda, &count) in spec.counts() {
        let k = eigen_multiplicity(&m, lambda)?;
        total += k;
        check.require(k == count, || {
            format!("eigenvalue {lambda}: kernel dimension {k}, face count {count}")
        });
        mults.push(json!({ "eigenvalue": lambda.to_string(), "multiplicity": k }));
    }
    let bell = ordered_bell(n) as usize;
    check.require(total == bell, || {
        format!("multiplicities sum to {total}, dimension is {bell}")
    });
    Ok(Value::Array(mults))
}

/// Spectrum and diagonalizability of `F -> F w̃0 B̃_alpha` on `kF`.
pub fn verify_face_spectrum(n: usize, alpha: &Composition) -> Result<VerificationReport> {
    check_alpha(n, alpha)?;
    let start = Instant::now();
    let mut check = Check::default();
    let a = w0tilde_btilde::<Q>(alpha)?;
    let diag = ints(&signed_values(alpha, face_basis(n)?.faces()));
    let result = check_face_operator(&a, &diag, &mut check)?;
    Ok(check.report("face-spectrum", alpha_params(n, alpha), start, Some(result)))
}

/// The four weighted statements for `B_gamma = Σ gamma_alpha B_alpha`.
pub fn verify_weighted(n: usize, gamma: &WeightVector) -> Result<VerificationReport> {
    if gamma.n() != n {
        return Err(Error::InvalidComposition(format!(
            "weights are indexed by compositions of {}",
            gamma.n()
        )));
    }
    let start = Instant::now();
    let mut check = Check::default();
    let b = weighted_b::<Q>(gamma)?;
    let w0 = w0_element::<Q>(n);
    let plain = weighted_spectrum(gamma).values();
    let e = product_of_shifts(&b, &plain);
    check.require(e.is_zero(), || {
        ga_witness("product over n_gamma(CF) at B_gamma", &e)
    });
    let signed =
        SpectrumSet::from_values(weighted_signed_values(gamma, &enumerate_faces(n))).values();
    let want = poly_from_roots(&signed);
    for (label, a) in [("w0 B_gamma", &w0 * &b), ("B_gamma w0", &b * &w0)] {
        let e = product_of_shifts(&a, &signed);
        check.require(e.is_zero(), || {
            ga_witness(&format!("product over signed spectrum at {label}"), &e)
        });
        let mu = krylov_min_poly(&a);
        check.require(mu == want, || {
            poly_witness(&format!("μ({label})"), &mu, &want)
        });
    }
    let bt = gamma
        .support()
        .try_fold(FaceAlgebraElement::<Q>::zero(n)?, |acc, (alpha, w)| {
            Ok::<_, Error>(&acc + &btilde::<Q>(alpha)?.scale(w))
        })?;
    let a = &w0tilde::<Q>(n)? * &bt;
    let mu_f = krylov_min_poly(&a);
    check.require(mu_f == want, || poly_witness("μ(w̃0 B̃_gamma)", &mu_f, &want));
    let diag = weighted_signed_values(gamma, face_basis(n)?.faces());
    let mults = check_face_operator(&a, &diag, &mut check)?;
    let result = json!({ "minimal_polynomial": want.to_json(), "multiplicities": mults });
    Ok(check.report("weighted", gamma_params(gamma), start, Some(result)))
}

/// `Σ_G (-1)^{ℓ(G)} = (-1)^n` and, for every face `F`,
/// `Σ_{G ⊒ F} (-1)^{n - ℓ(G)} = (-1)^{n - ℓ(F)}`.
pub fn verify_altsum(n: usize) -> Result<VerificationReport> {
    let start = Instant::now();
    let mut check = Check::default();
    let faces = enumerate_faces(n);
    let sgn = |k: usize| if k.is_multiple_of(2) { 1i64 } else { -1 };
    let global: i64 = faces.iter().map(|g| sgn(g.len())).sum();
    check.require(global == sgn(n), || {
        format!("global alternating sum is {global}")
    });
    for f in &faces {
        let rel: i64 = faces
            .iter()
            .filter(|g| f.is_contained_in(g))
            .map(|g| sgn(n - g.len()))
            .sum();
        check.require(rel == sgn(n - f.len()), || {
            format!("relative alternating sum over faces containing {f} is {rel}")
        });
    }
    Ok(check.report("altsum", params(n, "Q"), start, None))
}

/// Largest `n` for which products of B-basis elements are checked to stay in
/// the descent algebra.
pub const CLOSURE_MAX_N: usize = 5;

/// Descent-set, B/D-basis, `w0` and antipode identities, and the orbit-sum
/// basis of the invariant face subalgebra.
pub fn verify_descent_combinatorics(n: usize) -> Result<VerificationReport> {
    if n == 0 {
        return Err(Error::OutOfRange("descent identities need n >= 1".into()));
    }
    let start = Instant::now();
    let mut check = Check::default();
    let w0p = Permutation::longest(n);
    for s in enumerate_permutations(n) {
        let lhs = descent_set(&w0p.compose(&s).compose(&w0p));
        check.require(lhs == sub(&descent_set(&s)), || {
            format!("Des(w0 {s} w0) = {lhs}")
        });
    }
    let w0 = w0_element::<Q>(n);
    let mut alt = GroupAlgebraElement::<Q>::zero(n);
    for i in enumerate_subsets(n) {
        check.require(sub(&i) == gaps_inv(&rev(&gaps(&i))), || {
            format!("sub({i}) differs from gaps^-1 rev gaps")
        });
        let b = basis_b::<Q>(&i);
        let d_sum = i.subsets().fold(GroupAlgebraElement::zero(n), |acc, j| {
            &acc + &basis_d::<Q>(&j)
        });
        check.require(b == d_sum, || {
            ga_witness(&format!("B_{i} - Σ D_J"), &(&b - &d_sum))
        });
        let mobius = i.subsets().fold(GroupAlgebraElement::zero(n), |acc, j| {
            let s = if (i.len() - j.len()) % 2 == 0 { 1 } else { -1 };
            &acc + &basis_b::<Q>(&j).scale(&Q::from_i64(s))
        });
        let d = basis_d::<Q>(&i);
        check.require(d == mobius, || {
            ga_witness(&format!("D_{i} - Möbius sum"), &(&d - &mobius))
        });
        let s = if (n - i.len() - 1).is_multiple_of(2) {
            1
        } else {
            -1
        };
        alt = &alt + &b.scale(&Q::from_i64(s));
        let conj = &(&w0 * &b) * &w0;
        let want = basis_b::<Q>(&i.sub());
        check.require(conj == want, || {
            ga_witness(&format!("w0 B_{i} w0 - B_sub"), &(&conj - &want))
        });
    }
    check.require(alt == w0, || {
        ga_witness("alternating sum of B_I - w0", &(&alt - &w0))
    });
    for alpha in enumerate_compositions(n) {
        let conj = &(&w0 * &basis_b_comp::<Q>(&alpha)) * &w0;
        let want = basis_b_comp::<Q>(&rev(&alpha));
        check.require(conj == want, || {
            ga_witness(&format!("w0 B_({alpha}) w0 - B_rev"), &(&conj - &want))
        });
    }
    if n >= 2 {
        let a = top_to_random::<Q>(n, 1)?;
        let sa = a.antipode();
        let b = basis_b_comp::<Q>(&Composition::new(vec![1, n - 1])?);
        check.require(sa == b, || ga_witness("S(T1) - B_(1,n-1)", &(&sa - &b)));
        let cycles = (1..=n)
            .map(|i| Permutation::cycle(n, &(1..=i).rev().collect::<Vec<_>>()))
            .collect::<Result<Vec<_>>>()?;
        let mut support = sa.support();
        let mut expected = cycles;
        support.sort();
        expected.sort();
        check.require(support == expected, || {
            "support of S(T1) differs from the cycles (i, i-1, ..., 1)".into()
        });
    }
    if n <= CLOSURE_MAX_N {
        let comps: Vec<Composition> = enumerate_compositions(n).collect();
        for x in &comps {
            for y in &comps {
                let p = &basis_b_comp::<Q>(x) * &basis_b_comp::<Q>(y);
                check.require(from_group_algebra(&p)?.is_some(), || {
                    format!("B_({x}) B_({y}) is outside the span")
                });
            }
        }
    }
    check_orbit_basis(n, &mut check)?;
    let mut p = params(n, "Q");
    p.insert("closure_checked".into(), Value::Bool(n <= CLOSURE_MAX_N));
    Ok(check.report("descent", p, start, None))
}

/// The B̃_alpha are independent, and an averaged (hence invariant) random
/// element solves uniquely in them.
fn check_orbit_basis(n: usize, check: &mut Check) -> Result<()> {
    let comps: Vec<Composition> = enumerate_compositions(n).collect();
    let cols = comps
        .iter()
        .map(|a| Ok(btilde::<Q>(a)?.coordinates()))
        .collect::<Result<Vec<_>>>()?;
    let m = ExactMatrix::from_columns(cols, face_basis(n)?.len())?;
    let r = rank(&m);
    check.require(r == comps.len(), || {
        format!("orbit sums have rank {r}, expected {}", comps.len())
    });
    let mut rng = ChaCha8Rng::seed_from_u64(n as u64);
    let faces = face_basis(n)?.faces();
    let x = FaceAlgebraElement::<Q>::from_terms(
        n,
        (0..3).map(|_| {
            (
                faces[rng.gen_range(0..faces.len())].clone(),
                Q::from_i64(rng.gen_range(1..10)),
            )
        }),
    )?;
    let avg =
        enumerate_permutations(n).fold(FaceAlgebraElement::zero(n)?, |acc, w| &acc + &x.act(&w));
    match rho_inv(&avg) {
        Ok(d) => {
            let back = rho(&d)?;
            check.require(back == avg, || {
                face_witness("rho(rho^-1(avg)) - avg", &(&back - &avg))
            });
        }
        Err(e) => check.require(false, || {
            format!("invariant element not in the orbit-sum span: {e}")
        }),
    }
    Ok(())
}

/// `rho` is an anti-morphism on B-basis pairs, transports conjugation by
/// `w0`, lands in invariants, and satisfies `b P_id = rho^{-1}(b) P_id`.
pub fn verify_rho(n: usize) -> Result<VerificationReport> {
    let start = Instant::now();
    let mut check = Check::default();
    let comps: Vec<Composition> = enumerate_compositions(n).collect();
    let bt: Vec<FaceAlgebraElement<Q>> = comps.iter().map(btilde::<Q>).collect::<Result<_>>()?;
    let bs: Vec<GroupAlgebraElement<Q>> = comps.iter().map(basis_b_comp::<Q>).collect();
    for (i, x) in comps.iter().enumerate() {
        for (j, y) in comps.iter().enumerate() {
            let prod = from_group_algebra(&(&bs[i] * &bs[j]))?
                .ok_or_else(|| Error::NotInSpan(format!("B_({x}) B_({y})")))?;
            let lhs = rho(&prod)?;
            let rhs = &bt[j] * &bt[i];
            check.require(lhs == rhs, || {
                face_witness(
                    &format!("rho(B_({x}) B_({y})) - B̃_({y}) B̃_({x})"),
                    &(&lhs - &rhs),
                )
            });
        }
    }
    let w0t = w0tilde::<Q>(n)?;
    for (i, alpha) in comps.iter().enumerate() {
        let ra = comps
            .iter()
            .position(|c| *c == rev(alpha))
            .expect("rev is a composition");
        let conj = &(&w0t * &bt[i]) * &w0t;
        check.require(conj == bt[ra], || {
            face_witness(&format!("w̃0 B̃_({alpha}) w̃0 - B̃_rev"), &(&conj - &bt[ra]))
        });
        let sq = &(&w0t * &bt[i]) * &(&w0t * &bt[i]);
        let want = &bt[ra] * &bt[i];
        check.require(sq == want, || {
            face_witness(&format!("(w̃0 B̃_({alpha}))^2 - B̃_rev B̃"), &(&sq - &want))
        });
    }
    let pid = face_of_permutation(&Permutation::identity(n));
    let pid_e = FaceAlgebraElement::<Q>::from_face(&pid)?;
    for (i, alpha) in comps.iter().enumerate() {
        let lhs = &bt[i] * &pid_e;
        let rhs = group_action_on_face(&to_group_algebra(&rho_inv(&bt[i])?), &pid)?;
        check.require(lhs == rhs, || {
            face_witness(
                &format!("B̃_({alpha}) P_id - B_({alpha}) P_id"),
                &(&lhs - &rhs),
            )
        });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(1 + n as u64);
    let sample: Vec<Permutation> = (0..8).map(|_| random_permutation(n, &mut rng)).collect();
    for (i, alpha) in comps.iter().enumerate() {
        check.require(sample.iter().all(|w| bt[i].act(w) == bt[i]), || {
            format!("B̃_({alpha}) is not invariant")
        });
    }
    check.require(
        rho(&DescentAlgebraElement::<Q>::one(n))? == FaceAlgebraElement::one(n)?,
        || "rho(1) is not the unit face".into(),
    );
    Ok(check.report("rho", params(n, "Q"), start, None))
}

/// Uniform random permutation of `[n]`.
pub fn random_permutation<R: Rng>(n: usize, rng: &mut R) -> Permutation {
    use rand::seq::SliceRandom;
    let mut v: Vec<usize> = (1..=n).collect();
    v.shuffle(rng);
    Permutation::new(v).expect("shuffle of 1..=n")
}

/// Group-algebra elements selectable by name.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ElementSelector {
    Balpha,
    W0Balpha,
    BalphaW0,
    T1,
    W0T1,
    T1W0,
    Bgamma,
    W0Bgamma,
}

impl ElementSelector {
    pub const ALL: [ElementSelector; 8] = [
        ElementSelector::Balpha,
        ElementSelector::W0Balpha,
        ElementSelector::BalphaW0,
        ElementSelector::T1,
        ElementSelector::W0T1,
        ElementSelector::T1W0,
        ElementSelector::Bgamma,
        ElementSelector::W0Bgamma,
    ];

    pub fn name(self) -> &'static str {
        match self {
            ElementSelector::Balpha => "Balpha",
            ElementSelector::W0Balpha => "w0Balpha",
            ElementSelector::BalphaW0 => "Balphaw0",
            ElementSelector::T1 => "T1",
            ElementSelector::W0T1 => "w0T1",
            ElementSelector::T1W0 => "T1w0",
            ElementSelector::Bgamma => "Bgamma",
            ElementSelector::W0Bgamma => "w0Bgamma",
        }
    }
}

impl FromStr for ElementSelector {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Self::ALL
            .into_iter()
            .find(|e| e.name() == s)
            .ok_or_else(|| Error::Parse(format!("unknown element {s:?}")))
    }
}

/// The selected element of `kS_n`.
pub fn build_element<S: Scalar>(
    sel: ElementSelector,
    n: usize,
    alpha: Option<&Composition>,
    gamma: Option<&WeightVector>,
) -> Result<GroupAlgebraElement<S>> {
    let need_alpha = || -> Result<&Composition> {
        let a = alpha.ok_or_else(|| {
            Error::MissingArgument(format!("element {} needs --alpha", sel.name()))
        })?;
        check_alpha(n, a)?;
        Ok(a)
    };
    let need_gamma = || -> Result<&WeightVector> {
        let g = gamma.ok_or_else(|| {
            Error::MissingArgument(format!("element {} needs --gamma", sel.name()))
        })?;
        if g.n() != n {
            return Err(Error::InvalidComposition(format!(
                "weights are indexed by compositions of {}",
                g.n()
            )));
        }
        Ok(g)
    };
    let w0 = || w0_element::<S>(n);
    Ok(match sel {
        ElementSelector::Balpha => basis_b_comp(need_alpha()?),
        ElementSelector::W0Balpha => w0_b(need_alpha()?),
        ElementSelector::BalphaW0 => b_w0(need_alpha()?),
        ElementSelector::T1 => top_to_random(n, 1)?,
        ElementSelector::W0T1 => &w0() * &top_to_random(n, 1)?,
        ElementSelector::T1W0 => &top_to_random(n, 1)? * &w0(),
        ElementSelector::Bgamma => weighted_b(need_gamma()?)?,
        ElementSelector::W0Bgamma => &w0() * &weighted_b(need_gamma()?)?,
    })
}

/// Minimal polynomial of the selected element over `S`.
pub fn min_poly_of<S: Scalar>(
    sel: ElementSelector,
    n: usize,
    alpha: Option<&Composition>,
    gamma: Option<&WeightVector>,
) -> Result<Polynomial<S>> {
    Ok(krylov_min_poly(&build_element::<S>(sel, n, alpha, gamma)?))
}

/// Evaluates `f` at `a` and reports whether the result vanishes.
pub fn annihilates<S: Scalar, A: AlgebraElement<S>>(f: &Polynomial<S>, a: &A) -> bool {
    poly_eval_at_element(f, a).is_zero_element()
}

/// Named verifier families run by [`run_claim`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Claim {
    Annihilation,
    AnnihilationLong,
    AnnihilationOptimal,
    MinPoly,
    TtrBaseline,
    Ttr,
    TtrFiniteField,
    LSet,
    FaceSpectrum,
    Weighted,
    Altsum,
    Descent,
    Rho,
}

/// Which desk-scale bound limits a claim.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BoundKind {
    GroupAlgebra,
    FaceOperator,
    Combinatorics,
}

impl Claim {
    pub const ALL: [Claim; 13] = [
        Claim::Annihilation,
        Claim::AnnihilationLong,
        Claim::AnnihilationOptimal,
        Claim::MinPoly,
        Claim::TtrBaseline,
        Claim::Ttr,
        Claim::TtrFiniteField,
        Claim::LSet,
        Claim::FaceSpectrum,
        Claim::Weighted,
        Claim::Altsum,
        Claim::Descent,
        Claim::Rho,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Claim::Annihilation => "annihilation",
            Claim::AnnihilationLong => "annihilation-long",
            Claim::AnnihilationOptimal => "annihilation-optimal",
            Claim::MinPoly => "minpoly",
            Claim::TtrBaseline => "ttr-baseline",
            Claim::Ttr => "ttr",
            Claim::TtrFiniteField => "ttr-fp",
            Claim::LSet => "l-set",
            Claim::FaceSpectrum => "face-spectrum",
            Claim::Weighted => "weighted",
            Claim::Altsum => "altsum",
            Claim::Descent => "descent",
            Claim::Rho => "rho",
        }
    }

    pub fn bound_kind(self) -> BoundKind {
        match self {
            Claim::FaceSpectrum | Claim::Weighted | Claim::Rho => BoundKind::FaceOperator,
            Claim::LSet | Claim::Altsum => BoundKind::Combinatorics,
            _ => BoundKind::GroupAlgebra,
        }
    }

    /// Whether the claim is checked once per composition of `n`.
    pub fn per_alpha(self) -> bool {
        matches!(
            self,
            Claim::Annihilation
                | Claim::AnnihilationLong
                | Claim::AnnihilationOptimal
                | Claim::MinPoly
                | Claim::FaceSpectrum
        )
    }
}

impl FromStr for Claim {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Self::ALL
            .into_iter()
            .find(|c| c.name() == s)
            .ok_or_else(|| Error::Parse(format!("unknown claim {s:?}")))
    }
}

/// Desk-scale limits on `n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Bounds {
    pub group_algebra: usize,
    pub face_operator: usize,
    pub combinatorics: usize,
}

impl Default for Bounds {
    fn default() -> Self {
        Bounds {
            group_algebra: 6,
            face_operator: 5,
            combinatorics: 8,
        }
    }
}

impl Bounds {
    /// All three limits raised to `max` (never lowered).
    pub fn overridden(max: usize) -> Self {
        let d = Self::default();
        Bounds {
            group_algebra: d.group_algebra.max(max),
            face_operator: d.face_operator.max(max),
            combinatorics: d.combinatorics.max(max),
        }
    }

    pub fn limit(&self, kind: BoundKind) -> usize {
        match kind {
            BoundKind::GroupAlgebra => self.group_algebra,
            BoundKind::FaceOperator => self.face_operator,
            BoundKind::Combinatorics => self.combinatorics,
        }
    }

    pub fn check(&self, claim: Claim, n: usize) -> Result<()> {
        let max = self.limit(claim.bound_kind());
        if n > max {
            Err(Error::TooLarge { n, max })
        } else {
            Ok(())
        }
    }
}

/// Parameters shared by a suite run.
#[derive(Clone, Debug)]
pub struct SuiteConfig {
    pub n: usize,
    /// Restricts per-composition claims to one composition.
    pub alpha: Option<Composition>,
    /// Weights for the weighted claim; five seeded random vectors when absent.
    pub gamma: Option<WeightVector>,
    /// Modulus for the finite-field claim.
    pub p: u64,
    pub bounds: Bounds,
}

impl SuiteConfig {
    pub fn new(n: usize) -> Self {
        SuiteConfig {
            n,
            alpha: None,
            gamma: None,
            p: 3,
            bounds: Bounds::default(),
        }
    }
}

/// Runs one claim family at the configured parameters.
pub fn run_claim(claim: Claim, cfg: &SuiteConfig) -> Result<Vec<VerificationReport>> {
    let n = cfg.n;
    cfg.bounds.check(claim, n)?;
    if let Some(a) = &cfg.alpha {
        check_alpha(n, a)?;
    }
    if claim.per_alpha() {
        let alphas: Vec<Composition> = match &cfg.alpha {
            Some(a) => vec![a.clone()],
            None => enumerate_compositions(n).collect(),
        };
        return alphas
            .iter()
            .map(|a| match claim {
                Claim::Annihilation => verify_annihilation_balpha(n, a),
                Claim::AnnihilationLong => verify_annihilation_w0balpha_long(n, a),
                Claim::AnnihilationOptimal => verify_annihilation_optimal(n, a),
                Claim::MinPoly => verify_min_poly(n, a),
                _ => verify_face_spectrum(n, a),
            })
            .collect();
    }
    Ok(match claim {
        Claim::TtrBaseline => vec![verify_ttr_baseline(n)?],
        Claim::Ttr => vec![verify_ttr(n)?],
        Claim::TtrFiniteField => vec![verify_ttr_finite_field_dyn(n, cfg.p)?],
        Claim::LSet => vec![verify_l_set(n)?],
        Claim::Weighted => match &cfg.gamma {
            Some(g) => vec![verify_weighted(n, g)?],
            None => (0..5)
                .map(|seed| verify_weighted(n, &random_weight_vector(n, seed)))
                .collect::<Result<_>>()?,
        },
        Claim::Altsum => vec![verify_altsum(n)?],
        Claim::Descent => vec![verify_descent_combinatorics(n)?],
        Claim::Rho => vec![verify_rho(n)?],
        _ => unreachable!("per-composition claims handled above"),
    })
}

/// Claims of [`Claim::ALL`] applicable at `n` within `bounds`.
pub fn applicable_claims(n: usize, bounds: &Bounds) -> Vec<Claim> {
    Claim::ALL
        .into_iter()
        .filter(|&c| n <= bounds.limit(c.bound_kind()))
        .filter(|&c| match c {
            Claim::Ttr | Claim::TtrFiniteField | Claim::LSet => n > 1,
            Claim::TtrBaseline | Claim::Descent => n >= 1,
            _ => true,
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(s: &str) -> Composition {
        s.parse().unwrap()
    }

    #[test]
    fn small_reports_pass() {
        assert!(verify_annihilation_balpha(4, &c("2,2")).unwrap().pass);
        assert!(verify_annihilation_balpha(3, &c("3")).unwrap().pass);
        assert!(
            verify_annihilation_w0balpha_long(3, &c("1,2"))
                .unwrap()
                .pass
        );
        assert!(verify_annihilation_w0balpha_long(3, &c("3")).unwrap().pass);
        assert!(verify_annihilation_optimal(4, &c("1,3")).unwrap().pass);
        assert!(verify_annihilation_optimal(2, &c("1,1")).unwrap().pass);
        assert!(verify_min_poly(4, &c("1,3")).unwrap().pass);
        assert!(verify_ttr(3).unwrap().pass);
        assert!(verify_ttr_baseline(4).unwrap().pass);
        assert!(verify_face_spectrum(3, &c("3")).unwrap().pass);
        assert!(verify_altsum(3).unwrap().pass);
        assert!(verify_descent_combinatorics(3).unwrap().pass);
        assert!(verify_rho(3).unwrap().pass);
    }

    #[test]
    fn min_poly_examples() {
        let mu = min_poly_of::<Q>(ElementSelector::W0Balpha, 4, Some(&c("1,3")), None).unwrap();
        assert_eq!(mu, Polynomial::from_i64(&[0, 8, -6, -3, 1]));
        let mu = min_poly_of::<Q>(ElementSelector::W0Balpha, 2, Some(&c("1,1")), None).unwrap();
        assert_eq!(mu, Polynomial::from_i64(&[0, -2, 1]));
        let mu = min_poly_of::<Q>(ElementSelector::W0T1, 2, None, None).unwrap();
        assert_eq!(mu, Polynomial::from_i64(&[0, -2, 1]));
    }

    #[test]
    fn finite_field_report() {
        let r = verify_ttr_finite_field::<3>(4).unwrap();
        assert!(r.pass);
        assert_eq!(
            r.result.as_ref().unwrap()["coefficients"],
            json!(["0", "1", "1", "1"])
        );
        let r = verify_ttr_finite_field::<2>(2).unwrap();
        assert!(r.pass);
        assert_eq!(r.params["asserted"], Value::Bool(false));
        assert!(verify_ttr_finite_field_dyn(4, 4).is_err());
        assert!(verify_ttr_finite_field::<3>(1).is_err());
    }

    #[test]
    fn failing_report_has_witness() {
        let mut check = Check::default();
        let e = basis_b_comp::<Q>(&c("1,2"));
        check.require(e.is_zero(), || ga_witness("B_(1,2)", &e));
        let r = check.report("demo", params(3, "Q"), Instant::now(), None);
        assert!(!r.pass);
        assert_eq!(
            r.witness.as_deref(),
            Some("B_(1,2): coefficient of [1,2,3] is 1")
        );
        assert!(r.to_json().get("witness").is_some());
    }

    #[test]
    fn face_spectrum_multiplicities_n3() {
        let r = verify_face_spectrum(3, &c("3")).unwrap();
        assert!(r.pass);
        assert_eq!(
            r.result.unwrap(),
            json!([{ "eigenvalue": "-1", "multiplicity": 6 }, { "eigenvalue": "1", "multiplicity": 7 }])
        );
    }

    #[test]
    fn singleton_faces_carry_eigenvalue_n() {
        let r = verify_face_spectrum(4, &c("1,3")).unwrap();
        let mults = r.result.unwrap();
        let four = mults
            .as_array()
            .unwrap()
            .iter()
            .find(|m| m["eigenvalue"] == "4")
            .unwrap();
        assert_eq!(four["multiplicity"], 24);
    }

    #[test]
    fn large_prime_matches_rational_reduction() {
        let r = verify_ttr_finite_field_dyn(4, 1_000_003).unwrap();
        assert!(r.pass);
        assert_eq!(r.result.unwrap()["equals_rational_reduction"], true);
    }

    #[test]
    fn weighted_zero_and_fixed() {
        let r = verify_weighted(3, &WeightVector::zero(3)).unwrap();
        assert!(r.pass);
        assert_eq!(
            r.result.unwrap()["minimal_polynomial"]["coefficients"],
            json!(["0", "1"])
        );
        let g =
            WeightVector::from_json(3, &json!({"1,2": "1", "2,1": "2", "1,1,1": "1/3"})).unwrap();
        assert!(verify_weighted(3, &g).unwrap().pass);
    }

    #[test]
    fn suite_bounds_and_preconditions() {
        let cfg = SuiteConfig::new(7);
        assert!(matches!(
            run_claim(Claim::Ttr, &cfg),
            Err(Error::TooLarge { .. })
        ));
        let cfg = SuiteConfig::new(1);
        assert!(matches!(
            run_claim(Claim::Ttr, &cfg),
            Err(Error::OutOfRange(_))
        ));
        let mut cfg = SuiteConfig::new(3);
        cfg.alpha = Some(c("1,2"));
        assert_eq!(run_claim(Claim::MinPoly, &cfg).unwrap().len(), 1);
        cfg.alpha = None;
        assert_eq!(run_claim(Claim::MinPoly, &cfg).unwrap().len(), 4);
        assert_eq!(applicable_claims(6, &Bounds::default()).len(), 10);
        assert!("nope".parse::<Claim>().is_err());
        assert_eq!("ttr".parse::<Claim>().unwrap(), Claim::Ttr);
    }
}
