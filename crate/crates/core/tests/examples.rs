//! Worked examples for each public operation, checked through the crate API.

use sl2hahn::binomial::{binom, s_closed_rounded, s_ell};
use sl2hahn::hahn::{
    build_vd, check_hahn_relations, classify_module, intertwiner_from_vd, natural_images, vd_irreducible, HahnRep,
    ModuleClass,
};
use sl2hahn::johnson::{
    default_anchor, johnson_operators, random_anchor, terwilliger_blocks, terwilliger_dim_bruteforce,
    terwilliger_dim_formula, verify_t_equals_h_image, DEFAULT_BRUTEFORCE_CAP,
};
use sl2hahn::lattice::{
    anchored_ab_slice, build_subset_lattice, lattice_multiplicities, multiplicity_m, slice_decomposition_profile,
    split_by_anchor, splitting_map, subset_mask,
};
use sl2hahn::matrix::{commutator, eigenspace_basis, kron};
use sl2hahn::rational::q;
use sl2hahn::sl2::{build_ln, build_tensor_rep, clebsch_gordan_summands, weight_space};
use sl2hahn::span::span_closure;
use sl2hahn::weight::{iso_orbit, realize_weight_module, WeightModuleDescriptor};
use sl2hahn::{Error, Rational, RepMatrix};

fn diag(values: &[i64]) -> RepMatrix {
    RepMatrix::diag(values.iter().map(|&v| Rational::from(v)))
}

fn unit(n: usize, i: usize) -> Vec<Rational> {
    (0..n).map(|j| if i == j { Rational::one() } else { Rational::zero() }).collect()
}

#[test]
fn rational_arithmetic() {
    assert_eq!(q(1, 2) + q(1, 3), q(5, 6));
    assert_eq!(q(-3, 4) * q(8, 9), q(-2, 3));
    assert!(matches!(Rational::zero().inv(), Err(Error::DivisionByZero)));
}

#[test]
fn kronecker_products() {
    assert_eq!(kron(&RepMatrix::identity(2), &RepMatrix::identity(3)), RepMatrix::identity(6));
    assert_eq!(kron(&diag(&[1, -1]), &RepMatrix::identity(2)), diag(&[1, 1, -1, -1]));
    let l1 = build_ln(1).rep;
    let ef = kron(&l1.e, &l1.f);
    assert_eq!(ef.apply(&unit(4, 2)).unwrap(), unit(4, 1));
}

#[test]
fn commutators_on_small_modules() {
    let l1 = build_ln(1).rep;
    assert!(commutator(&l1.h, &l1.h).unwrap().is_zero());
    assert_eq!(commutator(&l1.h, &l1.e).unwrap(), l1.e.scale(&q(2, 1)));
    let l2 = build_ln(2).rep;
    assert_eq!(commutator(&l2.e, &l2.f).unwrap(), l2.h);
}

#[test]
fn eigenspaces() {
    assert_eq!(eigenspace_basis(&RepMatrix::identity(3), &Rational::one()).unwrap().len(), 3);
    assert!(eigenspace_basis(&diag(&[1, -1]), &Rational::from(2)).unwrap().is_empty());
    assert_eq!(eigenspace_basis(&build_tensor_rep(1, 1).dh, &Rational::zero()).unwrap().len(), 2);
}

#[test]
fn span_closures() {
    assert_eq!(span_closure(&[RepMatrix::identity(2)], true).unwrap().0, 1);
    let x = RepMatrix::from_i64(&[&[0, 1], &[1, 0]]);
    assert_eq!(span_closure(&[diag(&[1, -1]), x], true).unwrap().0, 4);
    let ops = johnson_operators(2, 1, 0b1).unwrap();
    assert_eq!(span_closure(&[ops.adjacency, ops.dual_adjacency], true).unwrap().0, 4);
}

#[test]
fn irreducible_sl2_modules() {
    let l0 = build_ln(0).rep;
    assert!(l0.e.is_zero() && l0.f.is_zero() && l0.h.is_zero() && l0.lambda.is_zero());
    let l1 = build_ln(1).rep;
    assert_eq!(l1.e, RepMatrix::from_i64(&[&[0, 1], &[0, 0]]));
    assert_eq!(l1.f, RepMatrix::from_i64(&[&[0, 0], &[1, 0]]));
    assert_eq!(l1.h, diag(&[1, -1]));
    assert_eq!(l1.lambda, RepMatrix::scalar(2, q(3, 2)));
    let l2 = build_ln(2).rep;
    assert_eq!(l2.h, diag(&[2, 0, -2]));
    assert_eq!(l2.lambda, RepMatrix::scalar(3, Rational::from(4)));
}

#[test]
fn tensor_products() {
    let t = build_tensor_rep(1, 1);
    assert_eq!(t.dh, diag(&[2, 0, 0, -2]));
    let l1 = build_ln(1).rep;
    let i2 = RepMatrix::identity(2);
    let cross = &kron(&l1.e, &l1.f) + &kron(&l1.f, &l1.e);
    let expansion =
        &(&(&kron(&l1.lambda, &i2) + &kron(&i2, &l1.lambda)) + &kron(&l1.h, &l1.h)) + &cross.scale(&q(2, 1));
    assert_eq!(t.dlambda, expansion);

    let t10 = build_tensor_rep(1, 0);
    assert_eq!((t10.left.e.clone(), t10.left.h.clone()), (l1.e.clone(), l1.h.clone()));
    assert_eq!(t10.de, l1.e);

    assert_eq!(weight_space(&t, &Rational::from(2)).len(), 1);
    assert_eq!(weight_space(&build_tensor_rep(2, 1), &Rational::one()).len(), 2);
    let t32 = build_tensor_rep(3, 2);
    let total: usize = (0..=5i64).map(|l| weight_space(&t32, &Rational::from(5 - 2 * l)).len()).sum();
    assert_eq!(total, 12);
}

#[test]
fn clebsch_gordan() {
    assert_eq!(clebsch_gordan_summands(1, 1).unwrap(), vec![2, 0]);
    assert_eq!(clebsch_gordan_summands(5, 0).unwrap(), vec![5]);
    assert_eq!(clebsch_gordan_summands(2, 2).unwrap(), vec![4, 2, 0]);
}

#[test]
fn natural_images_on_small_products() {
    let h00 = natural_images(&build_tensor_rep(0, 0));
    for x in [&h00.a, &h00.b, &h00.c, &h00.alpha, &h00.beta] {
        assert_eq!(x, &RepMatrix::zeros(1, 1));
    }
    let h11 = natural_images(&build_tensor_rep(1, 1));
    assert_eq!(h11.a, RepMatrix::diag([q(0, 1), q(1, 2), q(-1, 2), q(0, 1)]));
    assert!(h11.beta.is_zero());
    assert!(check_hahn_relations(&natural_images(&build_tensor_rep(2, 3))).all_pass());

    let z = RepMatrix::zeros(2, 2);
    let bogus = HahnRep { a: z.clone(), b: z.clone(), c: RepMatrix::identity(2), alpha: z.clone(), beta: z };
    let report = check_hahn_relations(&bogus);
    assert_eq!(report.first_failure().unwrap().relation, "[A,B]=C");
}

#[test]
fn vd_modules() {
    let (p, a, b) = build_vd(q(3, 1), q(-1, 1), 0);
    assert_eq!((a, b), (RepMatrix::scalar(1, q(3, 2)), RepMatrix::scalar(1, Rational::zero())));
    assert!(p.phi.is_empty());

    let (p, a, b) = build_vd(Rational::zero(), Rational::from(-2), 1);
    assert_eq!(p.theta, vec![q(1, 2), q(-1, 2)]);
    assert_eq!(p.theta_star, vec![Rational::from(2), Rational::zero()]);
    assert_eq!(p.phi, vec![Rational::from(-1)]);
    let c = commutator(&a, &b).unwrap();
    let alpha = &(&commutator(&c, &a).unwrap() + &(&a * &a).scale(&q(2, 1))) + &b;
    assert_eq!(alpha, RepMatrix::scalar(2, p.eta.clone()));

    assert!(vd_irreducible(&Rational::zero(), &Rational::from(-2), 1));
    assert!(!vd_irreducible(&Rational::one(), &Rational::zero(), 1));
    assert!(vd_irreducible(&q(7, 3), &q(-5, 2), 0));
}

#[test]
fn classification() {
    let rep = build_tensor_rep(1, 1);
    let r = realize_weight_module(&rep, &natural_images(&rep), 1).unwrap();
    assert_eq!(r.eta, q(3, 2));
    let expected = ModuleClass { a: Rational::zero(), b: Rational::from(-2), d: 1 };
    assert_eq!(classify_module(&r.a, &r.b, &r.eta).unwrap(), expected);
    assert_eq!(r.rank, 2);

    let (p, a, b) = build_vd(Rational::zero(), Rational::from(-2), 1);
    assert_eq!(classify_module(&a, &b, &p.eta).unwrap(), expected);

    // η for b = -1, d = 0 is (1/2)a² + b(b+1) = 1/2 when a = 1.
    let one = RepMatrix::scalar(1, q(1, 2));
    let class = classify_module(&one, &RepMatrix::zeros(1, 1), &q(1, 2)).unwrap();
    assert_eq!((class.a, class.d), (Rational::one(), 0));
}

#[test]
fn intertwiners() {
    let (p, a, b) = build_vd(q(1, 2), q(-3, 1), 2);
    assert_eq!(intertwiner_from_vd(&p, &a, &b, &unit(3, 0)).unwrap(), RepMatrix::identity(3));
    let err = intertwiner_from_vd(&p, &a, &b, &unit(3, 1)).unwrap_err();
    assert!(matches!(err, Error::PreconditionViolated(_)));
}

#[test]
fn weight_module_descriptors() {
    let w = WeightModuleDescriptor::new(1, 1, 1).unwrap();
    assert_eq!((w.a.clone(), w.b.clone(), w.d, w.dim), (Rational::zero(), Rational::from(-2), 1, 2));
    assert_eq!(WeightModuleDescriptor::new(4, 3, 0).unwrap().dim, 1);
    assert_eq!(WeightModuleDescriptor::new(2, 1, 1).unwrap().dim, 2);
}

#[test]
fn isomorphism_orbits() {
    assert_eq!(iso_orbit(1, 1, 1).unwrap().into_iter().collect::<Vec<_>>(), vec![(1, 1, 1)]);
    assert_eq!(iso_orbit(2, 1, 1).unwrap().into_iter().collect::<Vec<_>>(), vec![(1, 2, 2), (2, 1, 1)]);
    let orbit: Vec<_> = iso_orbit(3, 2, 4).unwrap().into_iter().collect();
    assert_eq!(orbit, vec![(1, 4, 2), (2, 3, 1), (3, 2, 4), (4, 1, 3)]);
}

#[test]
fn subset_lattices() {
    let l1 = build_subset_lattice(1, 4).unwrap();
    assert_eq!(l1.rep.e, RepMatrix::from_i64(&[&[0, 1], &[0, 0]]));
    assert_eq!(l1.rep.h, diag(&[1, -1]));
    let l2 = build_subset_lattice(2, 4).unwrap();
    assert_eq!(l2.rep.h, diag(&[2, 0, 0, -2]));
    assert_eq!(l2.rep.lambda[(0, 0)], Rational::from(4));
}

#[test]
fn anchor_splitting() {
    let iota = splitting_map(2, 0b01).unwrap();
    // {0,1} -> {1} (x) {0}: outer index 1, inner index 1.
    assert_eq!(iota[0b11], 3);
    let lattice = build_subset_lattice(3, 4).unwrap();
    assert_eq!(splitting_map(3, 0).unwrap(), (0..8).collect::<Vec<_>>());
    assert!(split_by_anchor(&lattice, 0).unwrap().all_pass());
    let (a, _) = anchored_ab_slice(2, 1, subset_mask(&[0], 2).unwrap()).unwrap();
    assert_eq!(a, RepMatrix::diag([q(1, 2), q(-1, 2)]));
}

#[test]
fn lattice_multiplicity_values() {
    assert_eq!(multiplicity_m(0, 7).unwrap(), Rational::one());
    assert_eq!(multiplicity_m(1, 2).unwrap(), Rational::one());
    assert_eq!(multiplicity_m(1, 4).unwrap(), Rational::from(3));
    assert_eq!(multiplicity_m(2, 4).unwrap(), Rational::from(2));
    assert_eq!(lattice_multiplicities(2).unwrap(), vec![(2, 1), (0, 1)]);
    assert_eq!(lattice_multiplicities(1).unwrap(), vec![(1, 1)]);
    assert_eq!(lattice_multiplicities(4).unwrap(), vec![(4, 1), (2, 3), (0, 2)]);
}

#[test]
fn slice_profiles() {
    let p21 = slice_decomposition_profile(2, 1).unwrap();
    assert_eq!(p21.entries.len(), 1);
    assert_eq!((p21.entries[0].dim, p21.entries[0].multiplicity), (2, 1));
    assert_eq!(p21.entries[0].index_pairs, vec![(0, 0)]);

    let p42 = slice_decomposition_profile(4, 2).unwrap();
    let mut shape: Vec<(usize, u64)> = p42.entries.iter().map(|e| (e.dim, e.multiplicity)).collect();
    shape.sort();
    assert_eq!(shape, vec![(1, 1), (1, 2), (3, 1)]);
    assert_eq!(p42.total_dim(), 6);

    let p50 = slice_decomposition_profile(5, 0).unwrap();
    assert_eq!(p50.dims(), vec![1]);
}

#[test]
fn johnson_operators_small() {
    let j31 = johnson_operators(3, 1, 0b1).unwrap();
    assert_eq!(j31.adjacency, RepMatrix::from_i64(&[&[0, 1, 1], &[1, 0, 1], &[1, 1, 0]]));
    assert_eq!(j31.dual_idempotents, vec![diag(&[1, 0, 0]), diag(&[0, 1, 1])]);
    let j21 = johnson_operators(2, 1, 0b1).unwrap();
    assert_eq!(j21.dual_adjacency, diag(&[1, -1]));
}

#[test]
fn terwilliger_dimensions() {
    for (d, k, dim) in [(2, 1, 4), (4, 2, 11), (8, 4, 46)] {
        assert_eq!(terwilliger_dim_bruteforce(d, k, default_anchor(k), DEFAULT_BRUTEFORCE_CAP).unwrap(), dim);
    }
    for (d, k, dim) in [(2, 1, 4), (7, 2, 16), (9, 4, 70)] {
        assert_eq!(terwilliger_dim_formula(d, k).unwrap().1, dim);
    }
    for (d, k, sizes) in [(4, 2, vec![3, 1, 1]), (7, 2, vec![3, 2, 1, 1, 1]), (8, 4, vec![5, 3, 3, 1, 1, 1])] {
        let blocks = terwilliger_blocks(d, k).unwrap();
        let mut got = blocks.sizes();
        got.sort_unstable_by(|a, b| b.cmp(a));
        assert_eq!(got, sizes);
        assert_eq!(blocks.wedderburn_dim(), sizes.iter().map(|s| s * s).sum::<u64>());
    }
}

#[test]
fn terwilliger_algebra_is_hahn_image() {
    assert!(verify_t_equals_h_image(2, 1, 0b1, DEFAULT_BRUTEFORCE_CAP).unwrap());
    assert!(verify_t_equals_h_image(4, 2, default_anchor(2), DEFAULT_BRUTEFORCE_CAP).unwrap());
    let x0 = random_anchor(5, 2, 7).unwrap();
    assert!(verify_t_equals_h_image(5, 2, x0, DEFAULT_BRUTEFORCE_CAP).unwrap());
}

#[test]
fn stepped_sums() {
    for n in 0..20 {
        assert_eq!(s_ell(0, n), n / 2 + 1);
    }
    assert_eq!(s_ell(3, 5), 11);
    assert_eq!(s_closed_rounded(3, 5), 11);
    let squares: u64 = (0..=2).map(|i| (4 - 2 * i) * (4 - 2 * i)).sum();
    assert_eq!((squares, binom(6, 3)), (20, 20));
    assert_eq!(s_ell(1, 1) + s_ell(1, 0), binom(2, 2));
    assert_eq!(s_ell(3, 6) - s_ell(3, 5), s_ell(2, 5));
}
