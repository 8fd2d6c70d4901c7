//! The universal Hahn algebra: generators `A`, `B`, `C` with `[A,B] = C` and
//! the two central elements
//!
//! ```text
//! α = [C,A] + 2A² + B,      β = [B,C] + 4BA + 2C.
//! ```
//!
//! This module holds its images in concrete modules, the homomorphism into
//! U(sl2) (x) U(sl2), the bidiagonal modules `V_d(a,b)`, their irreducibility
//! criterion and classification, and the intertwiners out of `V_d(a,b)`.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matrix::{commutator, eigenspace_basis, RepMatrix};
use crate::rational::{q, Rational};
use crate::sl2::TensorRep;

/// Images of `A`, `B`, `C`, `α`, `β` in one module.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HahnRep {
    pub a: RepMatrix,
    pub b: RepMatrix,
    pub c: RepMatrix,
    pub alpha: RepMatrix,
    pub beta: RepMatrix,
}

impl HahnRep {
    /// The representation determined by the images of `A` and `B`, with `C`,
    /// `α`, `β` read off from the defining relations.
    pub fn from_ab(a: RepMatrix, b: RepMatrix) -> Result<Self> {
        let c = commutator(&a, &b)?;
        let alpha = alpha_combination(&a, &b, &c);
        let beta = beta_combination(&a, &b, &c);
        Ok(HahnRep { a, b, c, alpha, beta })
    }

    pub fn dim(&self) -> usize {
        self.a.rows()
    }

    /// Restriction to an invariant coordinate subspace.
    pub fn restrict(&self, indices: &[usize]) -> Result<Self> {
        Ok(HahnRep {
            a: self.a.restrict(indices)?,
            b: self.b.restrict(indices)?,
            c: self.c.restrict(indices)?,
            alpha: self.alpha.restrict(indices)?,
            beta: self.beta.restrict(indices)?,
        })
    }
}

fn alpha_combination(a: &RepMatrix, b: &RepMatrix, c: &RepMatrix) -> RepMatrix {
    let ca = commutator(c, a).expect("square");
    let a2 = (a * a).scale(&q(2, 1));
    &(&ca + &a2) + b
}

fn beta_combination(a: &RepMatrix, b: &RepMatrix, c: &RepMatrix) -> RepMatrix {
    let bc = commutator(b, c).expect("square");
    let ba = (b * a).scale(&q(4, 1));
    let c2 = c.scale(&q(2, 1));
    &(&bc + &ba) + &c2
}

/// The images of `A`, `B`, `C`, `α`, `β` under the homomorphism into
/// U(sl2) (x) U(sl2), evaluated on `rep`:
///
/// ```text
/// A -> (H⊗1 - 1⊗H)/4          α -> (Λ⊗1 + 1⊗Λ)/2 + Δ(H)²/8
/// B -> Δ(Λ)/2                  β -> (Λ⊗1 - 1⊗Λ)Δ(H)/2
/// C -> E⊗F - F⊗E
/// ```
pub fn natural_images(rep: &TensorRep) -> HahnRep {
    let (l, r) = (&rep.left, &rep.right);
    let a = (&l.h - &r.h).scale(&q(1, 4));
    let b = rep.dlambda.scale(&q(1, 2));
    let c = &(&l.e * &r.f) - &(&l.f * &r.e);
    let alpha = &(&l.lambda + &r.lambda).scale(&q(1, 2)) + &(&rep.dh * &rep.dh).scale(&q(1, 8));
    let beta = (&(&l.lambda - &r.lambda) * &rep.dh).scale(&q(1, 2));
    HahnRep { a, b, c, alpha, beta }
}

/// Where and how a matrix identity failed.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Mismatch {
    pub row: usize,
    pub col: usize,
    pub expected: Rational,
    pub actual: Rational,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RelationOutcome {
    pub relation: String,
    pub pass: bool,
    pub first_failure: Option<Mismatch>,
}

impl RelationOutcome {
    /// Outcome of the identity `expected = actual`.
    pub fn compare(relation: &str, expected: &RepMatrix, actual: &RepMatrix) -> Self {
        let first_failure = expected.first_difference(actual).map(|(row, col)| Mismatch {
            row,
            col,
            expected: expected.entries().get(row * expected.cols() + col).cloned().unwrap_or_default(),
            actual: actual.entries().get(row * actual.cols() + col).cloned().unwrap_or_default(),
        });
        RelationOutcome { relation: relation.to_string(), pass: first_failure.is_none(), first_failure }
    }

    fn commuting(relation: &str, x: &RepMatrix, others: [&RepMatrix; 3]) -> Self {
        let zero = RepMatrix::zeros(x.rows(), x.cols());
        for y in others {
            let outcome = Self::compare(relation, &zero, &commutator(x, y).expect("square"));
            if !outcome.pass {
                return outcome;
            }
        }
        Self::compare(relation, &zero, &zero)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RelationReport {
    pub outcomes: Vec<RelationOutcome>,
}

impl RelationReport {
    pub fn all_pass(&self) -> bool {
        self.outcomes.iter().all(|o| o.pass)
    }

    pub fn first_failure(&self) -> Option<&RelationOutcome> {
        self.outcomes.iter().find(|o| !o.pass)
    }
}

/// Evaluates the defining relations of the Hahn algebra on `h`. Failures are
/// reported, not raised.
pub fn check_hahn_relations(h: &HahnRep) -> RelationReport {
    let ab = commutator(&h.a, &h.b).expect("square");
    let alpha = alpha_combination(&h.a, &h.b, &h.c);
    let beta = beta_combination(&h.a, &h.b, &h.c);
    RelationReport {
        outcomes: vec![
            RelationOutcome::compare("[A,B]=C", &h.c, &ab),
            RelationOutcome::compare("[C,A]+2A^2+B=α", &h.alpha, &alpha),
            RelationOutcome::commuting("α central", &h.alpha, [&h.a, &h.b, &h.c]),
            RelationOutcome::compare("[B,C]+4BA+2C=β", &h.beta, &beta),
            RelationOutcome::commuting("β central", &h.beta, [&h.a, &h.b, &h.c]),
        ],
    }
}

/// Parameters of the `(d+1)`-dimensional module `V_d(a,b)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VdParams {
    pub a: Rational,
    pub b: Rational,
    pub d: u32,
    /// `θ_i = (a+d)/2 - i`, for `i = 0..=d`.
    pub theta: Vec<Rational>,
    /// `θ*_i = (b+i)(b+i+1)`, for `i = 0..=d`.
    pub theta_star: Vec<Rational>,
    /// `φ_i = i(i-d-1)(a-b-i)` for `i = 1..=d`, stored at index `i-1`.
    pub phi: Vec<Rational>,
    /// Scalar of `α`: `(a² + d(d+2))/2 + b(b+d+1)`.
    pub eta: Rational,
    /// Scalar of `β`: `2ab(b+d+1)`.
    pub eta_star: Rational,
}

impl VdParams {
    pub fn new(a: Rational, b: Rational, d: u32) -> Self {
        let dq = Rational::from(d);
        let half = q(1, 2);
        let theta = (0..=d).map(|i| &(&(&a + &dq) * &half) - &Rational::from(i)).collect();
        let theta_star = (0..=d)
            .map(|i| {
                let bi = &b + &Rational::from(i);
                &bi * &(&bi + &Rational::one())
            })
            .collect();
        let phi = (1..=d)
            .map(|i| {
                let i = i64::from(i);
                Rational::from(i * (i - i64::from(d) - 1)) * (&(&a - &b) - &Rational::from(i))
            })
            .collect();
        let b_shift = &(&b + &dq) + &Rational::one();
        let eta = &(&(&a * &a) + &Rational::from(i64::from(d) * (i64::from(d) + 2))) * &half + &b * &b_shift;
        let eta_star = Rational::from(2) * &a * &b * &b_shift;
        VdParams { a, b, d, theta, theta_star, phi, eta, eta_star }
    }

    pub fn dim(&self) -> usize {
        self.d as usize + 1
    }

    /// `φ_1`, read as zero when `d = 0`.
    pub fn phi1(&self) -> Rational {
        self.phi.first().cloned().unwrap_or_else(Rational::zero)
    }

    pub fn class(&self) -> ModuleClass {
        ModuleClass::canonical(self.a.clone(), self.b.clone(), self.d)
    }
}

/// `V_d(a,b)` on the basis `v_0..v_d`: `A v_i = θ_i v_i + φ_i v_{i-1}`,
/// `B v_i = θ*_i v_i + v_{i+1}`.
pub fn build_vd(a: Rational, b: Rational, d: u32) -> (VdParams, RepMatrix, RepMatrix) {
    let p = VdParams::new(a, b, d);
    let n = p.dim();
    let mut am = RepMatrix::zeros(n, n);
    let mut bm = RepMatrix::zeros(n, n);
    for i in 0..n {
        am[(i, i)] = p.theta[i].clone();
        bm[(i, i)] = p.theta_star[i].clone();
        if i >= 1 {
            am[(i - 1, i)] = p.phi[i - 1].clone();
        }
        if i + 1 < n {
            bm[(i + 1, i)] = Rational::one();
        }
    }
    (p, am, bm)
}

/// `V_d(a,b)` is irreducible iff neither `a-b` nor `-a-b` lies in `{1, ..., d}`.
pub fn vd_irreducible(a: &Rational, b: &Rational, d: u32) -> bool {
    let in_forbidden = |x: Rational| x.to_i64().is_some_and(|v| (1..=i64::from(d)).contains(&v));
    !in_forbidden(a - b) && !in_forbidden(-a - b)
}

/// Isomorphism class of a finite-dimensional irreducible module, as the
/// canonical parameter triple: of the two admissible values of `b` (which
/// sum to `-(d+1)`), the one with `b <= -(d+1)/2`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct ModuleClass {
    pub a: Rational,
    pub b: Rational,
    pub d: u32,
}

impl ModuleClass {
    pub fn canonical(a: Rational, b: Rational, d: u32) -> Self {
        let other = &(-&b) - &Rational::from(i64::from(d) + 1);
        let b = if other < b { other } else { b };
        ModuleClass { a, b, d }
    }

    pub fn dim(&self) -> usize {
        self.d as usize + 1
    }
}

impl fmt::Display for ModuleClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.a, self.b, self.d)
    }
}

/// Recovers the canonical `(a, b, d)` of an irreducible module from the
/// images of `A` and `B` and the scalar `η` by which `α` acts:
/// `d + 1 = dim`, `a(d+1) = 2 tr A`, and `b` a root of
/// `x² + (d+1)x + (a² + d(d+2))/2 - η`.
pub fn classify_module(a: &RepMatrix, b: &RepMatrix, eta: &Rational) -> Result<ModuleClass> {
    if !a.is_square() || a.rows() == 0 || a.rows() != b.rows() || !b.is_square() {
        return Err(Error::ShapeMismatch("classify needs square A, B of equal positive size".into()));
    }
    let d = (a.rows() - 1) as u32;
    let d1 = Rational::from(i64::from(d) + 1);
    let a_param = (a.trace() * Rational::from(2)).checked_div(&d1)?;
    // b² + (d+1)b + c0 = 0
    let c0 = &(&(&a_param * &a_param) + &Rational::from(i64::from(d) * (i64::from(d) + 2))) * &q(1, 2) - eta;
    let disc = &(&d1 * &d1) - &(Rational::from(4) * &c0);
    let root = disc
        .sqrt_exact()
        .ok_or_else(|| Error::NonRationalParameter(format!("discriminant {disc} is not a rational square")))?;
    let b_param = &(&(-&d1) - &root) * &q(1, 2);
    Ok(ModuleClass::canonical(a_param, b_param, d))
}

/// The homomorphism `V_d(a,b) -> target` sending `v_0` to `seed`, as the
/// matrix whose columns are the images of `v_0, ..., v_d`.
///
/// The seed must be an `A`-eigenvector for `θ_0` with
/// `(A - θ_1)(B - θ*_0) seed = φ_1 seed`, on which `α` and `β` act by `η` and
/// `η*`, and `(a-d)/2 - 1` must not be an eigenvalue of `A` on the target.
/// Images are then forced: `v_{i+1} -> (B - θ*_i)(image of v_i)`.
pub fn intertwiner_from_vd(
    p: &VdParams,
    target_a: &RepMatrix,
    target_b: &RepMatrix,
    seed: &[Rational],
) -> Result<RepMatrix> {
    let target = HahnRep::from_ab(target_a.clone(), target_b.clone())?;
    let n = target.dim();
    if seed.len() != n {
        return Err(Error::ShapeMismatch(format!("seed of length {} for a module of dimension {n}", seed.len())));
    }
    let scaled = |s: &Rational| seed.iter().map(|x| x * s).collect::<Vec<_>>();
    let violated = |what: &str| Err(Error::PreconditionViolated(what.to_string()));

    if target.a.apply(seed)? != scaled(&p.theta[0]) {
        return violated("A seed != θ_0 seed");
    }
    if p.d >= 1 {
        let step = target.b.shift(&p.theta_star[0]).apply(seed)?;
        let lhs = target.a.shift(&p.theta[1]).apply(&step)?;
        if lhs != scaled(&p.phi1()) {
            return violated("(A - θ_1)(B - θ*_0) seed != φ_1 seed");
        }
    }
    if target.alpha.apply(seed)? != scaled(&p.eta) {
        return violated("α seed != η seed");
    }
    if target.beta.apply(seed)? != scaled(&p.eta_star) {
        return violated("β seed != η* seed");
    }
    let forbidden = &(&(&p.a - &Rational::from(p.d)) * &q(1, 2)) - &Rational::one();
    if !eigenspace_basis(&target.a, &forbidden)?.is_empty() {
        return violated("(a-d)/2 - 1 is an eigenvalue of A on the target");
    }

    let mut columns = vec![seed.to_vec()];
    for i in 0..p.d as usize {
        let next = target.b.shift(&p.theta_star[i]).apply(&columns[i])?;
        columns.push(next);
    }
    Ok(RepMatrix::from_fn(n, p.dim(), |r, c| columns[c][r].clone()))
}

/// Whether `m` intertwines `(src_a, src_b)` with `(tgt_a, tgt_b)`.
pub fn is_intertwiner(
    m: &RepMatrix,
    src_a: &RepMatrix,
    src_b: &RepMatrix,
    tgt_a: &RepMatrix,
    tgt_b: &RepMatrix,
) -> bool {
    m * src_a == tgt_a * m && m * src_b == tgt_b * m
}
