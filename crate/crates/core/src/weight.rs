//! Weight spaces of `L_m (x) L_n` as modules over the Hahn algebra.
//!
//! The weight space of weight `m+n-2ℓ` is spanned by `v_i (x) v_j` with
//! `i + j = ℓ`. Under the natural images it is irreducible and isomorphic to
//! `V_d(a,b)` with
//!
//! ```text
//! a = min{n,ℓ} - min{m,ℓ} + (m-n)/2,   b = -(m+n)/2 - 1,   d = min{m,ℓ} + min{n,ℓ} - ℓ.
//! ```

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hahn::{classify_module, intertwiner_from_vd, is_intertwiner, HahnRep, ModuleClass, VdParams};
use crate::matrix::RepMatrix;
use crate::rational::{q, Rational};
use crate::sl2::TensorRep;

/// The parameters of one weight space of `L_m (x) L_n`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WeightModuleDescriptor {
    pub m: u32,
    pub n: u32,
    pub l: u32,
    pub a: Rational,
    pub b: Rational,
    pub d: u32,
    pub dim: usize,
}

impl WeightModuleDescriptor {
    pub fn new(m: u32, n: u32, l: u32) -> Result<Self> {
        if l > m + n {
            return Err(Error::OutOfRange(format!("ℓ = {l} exceeds m + n = {}", m + n)));
        }
        let (mi, ni) = (i64::from(m), i64::from(n));
        let (m_l, n_l) = (i64::from(m.min(l)), i64::from(n.min(l)));
        let a = Rational::from(n_l - m_l) + q(mi - ni, 2);
        let b = q(-(mi + ni), 2) - Rational::one();
        let d = m.min(l) + n.min(l) - l;
        Ok(WeightModuleDescriptor { m, n, l, a, b, d, dim: d as usize + 1 })
    }

    /// The `Δ(H)`-eigenvalue `m + n - 2ℓ`.
    pub fn weight(&self) -> i64 {
        i64::from(self.m) + i64::from(self.n) - 2 * i64::from(self.l)
    }

    /// `(i, j)` with `u_0 = v_i (x) v_j` the generating vector:
    /// `i = ℓ - min{n,ℓ}`, `j = min{n,ℓ}`.
    pub fn seed_index(&self) -> (u32, u32) {
        let j = self.n.min(self.l);
        (self.l - j, j)
    }

    pub fn params(&self) -> VdParams {
        VdParams::new(self.a.clone(), self.b.clone(), self.d)
    }

    pub fn class(&self) -> ModuleClass {
        ModuleClass::canonical(self.a.clone(), self.b.clone(), self.d)
    }
}

pub fn weight_module_descriptor(m: u32, n: u32, l: u32) -> Result<WeightModuleDescriptor> {
    WeightModuleDescriptor::new(m, n, l)
}

/// The descriptors whose weight spaces are isomorphic to that of `(m, n, ℓ)`:
/// `(m,n,ℓ)`, `(m+n-ℓ, ℓ, n)`, `(ℓ, m+n-ℓ, m)`, `(n, m, m+n-ℓ)`.
pub fn iso_orbit(m: u32, n: u32, l: u32) -> Result<BTreeSet<(u32, u32, u32)>> {
    if l > m + n {
        return Err(Error::OutOfRange(format!("ℓ = {l} exceeds m + n = {}", m + n)));
    }
    let r = m + n - l;
    Ok([(m, n, l), (r, l, n), (l, r, m), (n, m, r)].into_iter().collect())
}

/// One weight space made concrete: the restricted Hahn action, the
/// intertwiner out of `V_d(a,b)` and the class read back from the matrices.
#[derive(Clone, Debug)]
pub struct WeightModuleRealization {
    pub descriptor: WeightModuleDescriptor,
    /// Product-basis coordinates spanning the weight space, `i` increasing.
    pub coordinates: Vec<usize>,
    pub a: RepMatrix,
    pub b: RepMatrix,
    /// Scalar by which `α` acts on the weight space.
    pub eta: Rational,
    pub intertwiner: RepMatrix,
    pub rank: usize,
    pub class: ModuleClass,
}

impl WeightModuleRealization {
    /// Whether the intertwiner is a bijective module map.
    pub fn is_isomorphism(&self) -> bool {
        let (_, va, vb) =
            crate::hahn::build_vd(self.descriptor.a.clone(), self.descriptor.b.clone(), self.descriptor.d);
        self.rank == self.descriptor.dim
            && self.coordinates.len() == self.descriptor.dim
            && is_intertwiner(&self.intertwiner, &va, &vb, &self.a, &self.b)
    }
}

/// Builds the map `V_d(a,b) -> weight space` from the descriptor of `(m, n, ℓ)`
/// and the natural images `images` on `rep = L_m (x) L_n`.
pub fn realize_weight_module(rep: &TensorRep, images: &HahnRep, l: u32) -> Result<WeightModuleRealization> {
    let (m, n) =
        rep.weights.ok_or_else(|| Error::PreconditionViolated("tensor factors must be irreducible L_m, L_n".into()))?;
    let descriptor = WeightModuleDescriptor::new(m, n, l)?;
    let coordinates = rep.weight_coordinates(&Rational::from(descriptor.weight()));
    let local = images.restrict(&coordinates)?;
    let eta = local.alpha[(0, 0)].clone();
    if local.alpha != RepMatrix::scalar(local.dim(), eta.clone()) {
        return Err(Error::CrossCheck(format!("α is not scalar on the weight space of ({m}, {n}, {l})")));
    }
    let (i, j) = descriptor.seed_index();
    let seed_at = i as usize * (n as usize + 1) + j as usize;
    let mut seed = vec![Rational::zero(); coordinates.len()];
    let pos = coordinates
        .iter()
        .position(|&c| c == seed_at)
        .ok_or_else(|| Error::CrossCheck(format!("seed v_{i} (x) v_{j} lies outside the weight space")))?;
    seed[pos] = Rational::one();
    let intertwiner = intertwiner_from_vd(&descriptor.params(), &local.a, &local.b, &seed)?;
    let rank = intertwiner.rank();
    let class = classify_module(&local.a, &local.b, &eta)?;
    Ok(WeightModuleRealization { descriptor, coordinates, a: local.a, b: local.b, eta, intertwiner, rank, class })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hahn::{natural_images, vd_irreducible};
    use crate::sl2::build_tensor_rep;

    #[test]
    fn descriptor_1_1_1() {
        let w = weight_module_descriptor(1, 1, 1).unwrap();
        assert_eq!((w.a.clone(), w.b.clone(), w.d, w.dim), (q(0, 1), q(-2, 1), 1, 2));
        assert!(vd_irreducible(&w.a, &w.b, w.d));
    }

    #[test]
    fn top_weight_is_a_line() {
        for (m, n) in [(0, 0), (3, 1), (2, 5)] {
            assert_eq!(weight_module_descriptor(m, n, 0).unwrap().dim, 1);
        }
    }

    #[test]
    fn dimension_2_1_1() {
        assert_eq!(weight_module_descriptor(2, 1, 1).unwrap().dim, 2);
    }

    #[test]
    fn descriptor_rejects_large_l() {
        assert!(matches!(weight_module_descriptor(1, 1, 3), Err(Error::OutOfRange(_))));
        assert!(iso_orbit(2, 0, 3).is_err());
    }

    #[test]
    fn orbits() {
        assert_eq!(iso_orbit(1, 1, 1).unwrap(), BTreeSet::from([(1, 1, 1)]));
        assert_eq!(iso_orbit(2, 1, 1).unwrap(), BTreeSet::from([(2, 1, 1), (1, 2, 2)]));
        assert_eq!(iso_orbit(3, 2, 4).unwrap(), BTreeSet::from([(3, 2, 4), (1, 4, 2), (4, 1, 3), (2, 3, 1)]));
    }

    #[test]
    fn realization_on_l2_l1() {
        let rep = build_tensor_rep(2, 1);
        let images = natural_images(&rep);
        for l in 0..=3 {
            let r = realize_weight_module(&rep, &images, l).unwrap();
            assert!(r.is_isomorphism(), "ℓ = {l}");
            assert_eq!(r.class, r.descriptor.class());
            assert_eq!(r.eta, r.descriptor.params().eta);
        }
    }
}
