//! The U(sl2)-module on all subsets of `Ω = {0, ..., D-1}`, its splitting
//! along an anchor `x0`, and the decomposition of each slice `|x| = k` into
//! irreducible Hahn-algebra modules.
//!
//! Subsets are bitmasks and the basis is ordered by mask value.

use serde::{Deserialize, Serialize};

use crate::binomial::binom;
use crate::error::{Error, Result};
use crate::hahn::{natural_images, ModuleClass, RelationOutcome};
use crate::matrix::{eigenspace_basis, RepMatrix};
use crate::rational::{q, Rational};
use crate::sl2::{casimir_scalar, Sl2Module, TensorRep};
use crate::weight::WeightModuleDescriptor;

pub type Subset = u64;

/// Largest `D` for which the full `2^D`-dimensional lattice module is built
/// unless a different cap is configured.
pub const DEFAULT_LATTICE_CAP: u32 = 12;

fn size(x: Subset) -> i64 {
    i64::from(x.count_ones())
}

/// The mask of a set of elements of `Ω`.
pub fn subset_mask(elements: &[u32], d: u32) -> Result<Subset> {
    let mut mask = 0;
    for &e in elements {
        if e >= d {
            return Err(Error::InvalidAnchor(format!("element {e} is not in Ω = {{0..{}}}", d.saturating_sub(1))));
        }
        mask |= 1 << e;
    }
    Ok(mask)
}

pub fn subset_elements(x: Subset) -> Vec<u32> {
    (0..64).filter(|&e| x >> e & 1 == 1).collect()
}

/// All `k`-subsets of `Ω` in increasing mask order.
pub fn k_subsets(d: u32, k: u32) -> Vec<Subset> {
    (0..1u64 << d).filter(|x| x.count_ones() == k).collect()
}

fn check_anchor(d: u32, x0: Subset) -> Result<()> {
    if d < 64 && x0 >> d != 0 {
        return Err(Error::InvalidAnchor(format!("{:?} is not a subset of Ω with D = {d}", subset_elements(x0))));
    }
    Ok(())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubsetLatticeRep {
    pub d: u32,
    pub rep: Sl2Module,
}

impl SubsetLatticeRep {
    pub fn dim(&self) -> usize {
        1 << self.d
    }
}

/// `Λ x = (D + (D-2|x|)²/2) x + 2 Σ y` over `|y| = |x|`, `|x ∩ y| = |x| - 1`.
fn casimir_on_lattice(d: u32) -> RepMatrix {
    let n = 1usize << d;
    let di = i64::from(d);
    RepMatrix::from_fn(n, n, |r, c| {
        let (x, y) = (c as Subset, r as Subset);
        if x == y {
            let w = di - 2 * size(x);
            Rational::from(di) + q(w * w, 2)
        } else if size(x) == size(y) && size(x & y) == size(x) - 1 {
            Rational::from(2)
        } else {
            Rational::zero()
        }
    })
}

/// `E x = Σ_{y ⋖ x} y`, `F x = Σ_{x ⋖ y} y`, `H x = (D - 2|x|) x`, with `Λ`
/// computed from these and checked against its closed form.
pub fn build_subset_lattice(d: u32, cap: u32) -> Result<SubsetLatticeRep> {
    if d > cap {
        return Err(Error::SizeCapExceeded(format!("lattice with D = {d} exceeds the cap D <= {cap}")));
    }
    let n = 1usize << d;
    let mut e = RepMatrix::zeros(n, n);
    let mut f = RepMatrix::zeros(n, n);
    for x in 0..n {
        for bit in 0..d {
            let y = x ^ (1 << bit);
            if x >> bit & 1 == 1 {
                e[(y, x)] = Rational::one();
            } else {
                f[(y, x)] = Rational::one();
            }
        }
    }
    let h = RepMatrix::diag((0..n).map(|x| Rational::from(i64::from(d) - 2 * size(x as Subset))));
    let rep = Sl2Module::from_generators(e, f, h)?;
    if rep.lambda != casimir_on_lattice(d) {
        return Err(Error::CrossCheck(format!("Casimir on the D = {d} lattice differs from its closed form")));
    }
    Ok(SubsetLatticeRep { d, rep })
}

/// The anchored images of `A` and `B` on the subset lattice:
///
/// ```text
/// A x = (D/4 - (|x0\x| + |x\x0|)/2) x
/// B x = (D/2 + (D-2|x|)²/4) x + Σ_{|y|=|x|, x∩y ⋖ x} y
/// ```
///
/// restricted to the given basis subsets (which must be closed under `B`).
fn anchored_ab_on(d: u32, x0: Subset, basis: &[Subset]) -> (RepMatrix, RepMatrix) {
    let di = i64::from(d);
    let a = RepMatrix::diag(basis.iter().map(|&x| q(di, 4) - q(size(x0 & !x) + size(x & !x0), 2)));
    let b = RepMatrix::from_fn(basis.len(), basis.len(), |r, c| {
        let (x, y) = (basis[c], basis[r]);
        if x == y {
            let w = di - 2 * size(x);
            q(di, 2) + q(w * w, 4)
        } else if size(x) == size(y) && size(x & y) == size(x) - 1 {
            Rational::one()
        } else {
            Rational::zero()
        }
    });
    (a, b)
}

/// Anchored `A`, `B` on the whole lattice.
pub fn anchored_ab(d: u32, x0: Subset) -> Result<(RepMatrix, RepMatrix)> {
    check_anchor(d, x0)?;
    let basis: Vec<Subset> = (0..1u64 << d).collect();
    Ok(anchored_ab_on(d, x0, &basis))
}

/// Anchored `A`, `B` on the slice of `k`-subsets (basis from [`k_subsets`]).
pub fn anchored_ab_slice(d: u32, k: u32, x0: Subset) -> Result<(RepMatrix, RepMatrix)> {
    check_anchor(d, x0)?;
    Ok(anchored_ab_on(d, x0, &k_subsets(d, k)))
}

/// Packs the bits of `x` selected by `within` into the low bits, in
/// increasing element order.
fn compress(x: Subset, within: Subset) -> usize {
    let mut out = 0;
    let mut pos = 0;
    for e in 0..64 {
        if within >> e & 1 == 1 {
            out |= ((x >> e & 1) as usize) << pos;
            pos += 1;
        }
    }
    out
}

/// The splitting `x -> (x \ x0) (x) (x ∩ x0)` as an index map from the
/// lattice basis to the product basis of `2^{Ω\x0} (x) 2^{x0}`.
pub fn splitting_map(d: u32, x0: Subset) -> Result<Vec<usize>> {
    check_anchor(d, x0)?;
    let omega = if d == 64 { u64::MAX } else { (1u64 << d) - 1 };
    let outer = omega & !x0;
    let inner_dim = 1usize << x0.count_ones();
    Ok((0..1u64 << d).map(|x| compress(x & outer, outer) * inner_dim + compress(x & x0, x0)).collect())
}

fn permutation_matrix(map: &[usize]) -> RepMatrix {
    let mut p = RepMatrix::zeros(map.len(), map.len());
    for (c, &r) in map.iter().enumerate() {
        p[(r, c)] = Rational::one();
    }
    p
}

/// The lattice split along an anchor, with the identities that tie the two
/// sides together.
#[derive(Clone, Debug)]
pub struct AnchorSplit {
    pub anchor: Subset,
    pub iota: Vec<usize>,
    pub outer: SubsetLatticeRep,
    pub inner: SubsetLatticeRep,
    pub tensor: TensorRep,
    pub a: RepMatrix,
    pub b: RepMatrix,
    /// `ι X = Δ(X) ι` for `X = E, F, H, Λ`, then the anchored `A`, `B`
    /// against the natural images carried back through `ι`.
    pub checks: Vec<RelationOutcome>,
}

impl AnchorSplit {
    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }
}

pub fn split_by_anchor(rep: &SubsetLatticeRep, x0: Subset) -> Result<AnchorSplit> {
    let d = rep.d;
    let iota = splitting_map(d, x0)?;
    let inner_d = x0.count_ones();
    let outer = build_subset_lattice(d - inner_d, d)?;
    let inner = build_subset_lattice(inner_d, d)?;
    let tensor = TensorRep::from_modules(&outer.rep, &inner.rep);
    let p = permutation_matrix(&iota);
    let pt = p.transpose();

    let mut checks = Vec::new();
    let diagonal = tensor.diagonal();
    for (name, x, dx) in [
        ("ι E = Δ(E) ι", &rep.rep.e, &diagonal.e),
        ("ι F = Δ(F) ι", &rep.rep.f, &diagonal.f),
        ("ι H = Δ(H) ι", &rep.rep.h, &diagonal.h),
        ("ι Λ = Δ(Λ) ι", &rep.rep.lambda, &diagonal.lambda),
    ] {
        checks.push(RelationOutcome::compare(name, &(dx * &p), &(&p * x)));
    }
    let (a, b) = anchored_ab(d, x0)?;
    let natural = natural_images(&tensor);
    checks.push(RelationOutcome::compare("A = ι⁻¹ ♮(A) ι", &(&(&pt * &natural.a) * &p), &a));
    checks.push(RelationOutcome::compare("B = ι⁻¹ ♮(B) ι", &(&(&pt * &natural.b) * &p), &b));
    Ok(AnchorSplit { anchor: x0, iota, outer, inner, tensor, a, b, checks })
}

/// `m_i(n) = (n-2i+1)/(n-i+1) · C(n,i)`, the multiplicity of `L_{n-2i}` in
/// the lattice module with `D = n`.
pub fn multiplicity_m(i: u32, n: u32) -> Result<Rational> {
    if i > n / 2 {
        return Err(Error::OutOfRange(format!("m_i(n) needs i <= n/2, got i = {i}, n = {n}")));
    }
    let (i, n) = (i64::from(i), i64::from(n));
    let value = q(n - 2 * i + 1, n - i + 1) * Rational::from(binom(n as u64, i as u64));
    if !value.is_integer() {
        return Err(Error::CrossCheck(format!("m_{i}({n}) = {value} is not an integer")));
    }
    Ok(value)
}

fn multiplicity_u64(i: u32, n: u32) -> Result<u64> {
    let v = multiplicity_m(i, n)?;
    v.to_i64()
        .and_then(|v| u64::try_from(v).ok())
        .ok_or_else(|| Error::CrossCheck(format!("m_{i}({n}) = {v} is not a nonnegative integer")))
}

/// Summands `(D - 2i, m_i(D))` of the lattice module, checked to add up to
/// `2^D`.
pub fn lattice_multiplicities(d: u32) -> Result<Vec<(u32, u64)>> {
    let summands = (0..=d / 2).map(|i| Ok((d - 2 * i, multiplicity_u64(i, d)?))).collect::<Result<Vec<_>>>()?;
    let total: u64 = summands.iter().map(|&(w, m)| m * (u64::from(w) + 1)).sum();
    if total != 1u64 << d {
        return Err(Error::CrossCheck(format!("Σ m_i(D)(D-2i+1) = {total}, expected 2^{d}")));
    }
    Ok(summands)
}

/// [`lattice_multiplicities`], also confirmed against the spectrum of `Λ` on
/// the built lattice: on the slice `|x| = k`, the eigenvalue of `L_{D-2i}`
/// must occur with multiplicity `m_i(D)` for each `i <= min{k, D-k}`.
pub fn lattice_decomposition(d: u32, cap: u32) -> Result<Vec<(u32, u64)>> {
    let summands = lattice_multiplicities(d)?;
    let lattice = build_subset_lattice(d, cap)?;
    for k in 0..=d {
        let slice: Vec<usize> = k_subsets(d, k).into_iter().map(|x| x as usize).collect();
        let lambda = lattice.rep.lambda.restrict(&slice)?;
        let mut found = 0;
        for &(w, m) in summands.iter().take(k.min(d - k) as usize + 1) {
            let nullity = eigenspace_basis(&lambda, &casimir_scalar(w))?.len() as u64;
            if nullity != m {
                return Err(Error::CrossCheck(format!(
                    "D = {d}, k = {k}: Casimir eigenvalue {} has multiplicity {nullity}, expected {m}",
                    casimir_scalar(w)
                )));
            }
            found += nullity;
        }
        if found != slice.len() as u64 {
            return Err(Error::CrossCheck(format!("D = {d}, k = {k}: eigenspaces cover {found} of {}", slice.len())));
        }
    }
    Ok(summands)
}

/// `P(k) = {(i,j) : 0 <= i <= (D-k)/2, 0 <= j <= min{D-k-i, k-i, k/2}}`.
pub fn p_set(d: u32, k: u32) -> Vec<(u32, u32)> {
    let mut out = Vec::new();
    for i in 0..=(d - k) / 2 {
        if i > k {
            break;
        }
        let j_max = (d - k - i).min(k - i).min(k / 2);
        out.extend((0..=j_max).map(|j| (i, j)));
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProfileEntry {
    pub class: ModuleClass,
    pub multiplicity: u64,
    pub dim: usize,
    pub index_pairs: Vec<(u32, u32)>,
}

/// Isomorphism classes of irreducible modules in the `k`-slice, with their
/// multiplicities.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DecompositionProfile {
    pub d: u32,
    pub k: u32,
    pub entries: Vec<ProfileEntry>,
}

impl DecompositionProfile {
    pub fn total_dim(&self) -> u64 {
        self.entries.iter().map(|e| e.multiplicity * e.dim as u64).sum()
    }

    /// `Σ dim²` over distinct classes.
    pub fn wedderburn_dim(&self) -> u64 {
        self.entries.iter().map(|e| (e.dim * e.dim) as u64).sum()
    }

    /// Class dimensions, largest first.
    pub fn dims(&self) -> Vec<usize> {
        let mut dims: Vec<usize> = self.entries.iter().map(|e| e.dim).collect();
        dims.sort_unstable_by(|a, b| b.cmp(a));
        dims
    }
}

/// Decomposes the `k`-slice over `P(k)`. The pair `(i,j)` contributes the
/// class of the weight module `(D-k-2i, k-2j, k-i-j)` with multiplicity
/// `m_i(D-k) m_j(k)`; pairs with equal classes are merged, which must only
/// happen for `(i,j)`, `(j,i)` when `k = D/2`.
pub fn slice_decomposition_profile(d: u32, k: u32) -> Result<DecompositionProfile> {
    if k > d {
        return Err(Error::OutOfRange(format!("k = {k} exceeds D = {d}")));
    }
    let mut entries: Vec<ProfileEntry> = Vec::new();
    for (i, j) in p_set(d, k) {
        let w = WeightModuleDescriptor::new(d - k - 2 * i, k - 2 * j, k - i - j)?;
        let class = w.class();
        let multiplicity = multiplicity_u64(i, d - k)? * multiplicity_u64(j, k)?;
        match entries.iter_mut().find(|e| e.class == class) {
            Some(e) => {
                let mirrored = 2 * k == d && e.index_pairs == [(j, i)];
                if !mirrored {
                    return Err(Error::CrossCheck(format!(
                        "D = {d}, k = {k}: ({i}, {j}) repeats the class {class} of {:?}",
                        e.index_pairs
                    )));
                }
                e.multiplicity += multiplicity;
                e.index_pairs.push((i, j));
            }
            None => entries.push(ProfileEntry { class, multiplicity, dim: w.dim, index_pairs: vec![(i, j)] }),
        }
    }
    let profile = DecompositionProfile { d, k, entries };
    let expected = binom(u64::from(d), u64::from(k));
    if profile.total_dim() != expected {
        return Err(Error::CrossCheck(format!(
            "D = {d}, k = {k}: profile covers {} dimensions, expected C(D,k) = {expected}",
            profile.total_dim()
        )));
    }
    Ok(profile)
}
