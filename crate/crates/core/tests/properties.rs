//! Algebraic invariants over randomly drawn inputs.

use num_integer::Integer;
use proptest::collection::vec;
use proptest::prelude::*;

use sl2hahn::binomial::{binom, s_closed_exact, s_closed_rounded, s_ell};
use sl2hahn::config::RunConfig;
use sl2hahn::hahn::ModuleClass;
use sl2hahn::johnson::{random_anchor, terwilliger_blocks, terwilliger_dim_formula};
use sl2hahn::matrix::{commutator, eigenspace_basis, kron};
use sl2hahn::rational::q;
use sl2hahn::report::{params, CheckRecord, Report};
use sl2hahn::span::span_closure;
use sl2hahn::weight::{iso_orbit, WeightModuleDescriptor};
use sl2hahn::{Rational, RepMatrix};

fn rational() -> impl Strategy<Value = Rational> {
    (-50i64..=50, 1i64..=12).prop_map(|(n, d)| q(n, d))
}

fn matrix(rows: usize, cols: usize) -> impl Strategy<Value = RepMatrix> {
    vec(-3i64..=3, rows * cols)
        .prop_map(move |v| RepMatrix::from_flat(rows, cols, v.into_iter().map(Rational::from).collect()).unwrap())
}

fn square(max: usize) -> impl Strategy<Value = RepMatrix> {
    (1..=max).prop_flat_map(|n| matrix(n, n))
}

/// Three square matrices of one common size.
fn square_triple(max: usize) -> impl Strategy<Value = (RepMatrix, RepMatrix, RepMatrix)> {
    (1..=max).prop_flat_map(|n| (matrix(n, n), matrix(n, n), matrix(n, n)))
}

proptest! {
    #[test]
    fn rational_field_laws(a in rational(), b in rational(), c in rational()) {
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a - &a, Rational::zero());
        if !a.is_zero() {
            prop_assert_eq!(&a * &a.inv().unwrap(), Rational::one());
        }
        prop_assert_eq!(a.to_string().parse::<Rational>().unwrap(), a);
    }

    #[test]
    fn rational_lowest_terms(n in -1000i64..=1000, d in 1i64..=1000) {
        let g = n.gcd(&d);
        let (p, r) = (n / g, d / g);
        let expected = if r == 1 { p.to_string() } else { format!("{p}/{r}") };
        prop_assert_eq!(q(n, d).to_string(), expected);
    }

    #[test]
    fn kron_is_associative(a in (1..=2usize, 1..=2usize).prop_flat_map(|(r, c)| matrix(r, c)),
                           b in (1..=2usize, 1..=2usize).prop_flat_map(|(r, c)| matrix(r, c)),
                           c in (1..=2usize, 1..=2usize).prop_flat_map(|(r, c)| matrix(r, c))) {
        prop_assert_eq!(kron(&kron(&a, &b), &c), kron(&a, &kron(&b, &c)));
    }

    #[test]
    fn kron_mixed_product((a, c) in (1..=3usize).prop_flat_map(|n| (matrix(n, n), matrix(n, n))),
                          (b, d) in (1..=3usize).prop_flat_map(|n| (matrix(n, n), matrix(n, n)))) {
        prop_assert_eq!(&kron(&a, &b) * &kron(&c, &d), kron(&(&a * &c), &(&b * &d)));
    }

    #[test]
    fn commutator_antisymmetry_and_jacobi((x, y, z) in square_triple(4)) {
        let xy = commutator(&x, &y).unwrap();
        prop_assert_eq!(&xy + &commutator(&y, &x).unwrap(), RepMatrix::zeros(x.rows(), x.cols()));
        let jacobi = &(&commutator(&x, &commutator(&y, &z).unwrap()).unwrap()
            + &commutator(&y, &commutator(&z, &x).unwrap()).unwrap())
            + &commutator(&z, &xy).unwrap();
        prop_assert!(jacobi.is_zero());
    }

    #[test]
    fn closure_is_idempotent(gens in (1..=3usize).prop_flat_map(|n| vec(matrix(n, n), 1..=2))) {
        let (dim, basis) = span_closure(&gens, true).unwrap();
        let again = span_closure(&basis.matrices(), true).unwrap().0;
        prop_assert_eq!(again, dim);
        for g in &gens {
            prop_assert!(basis.contains(g).unwrap());
        }
        let mats = basis.matrices();
        for x in &mats {
            for y in &mats {
                prop_assert!(basis.contains(&(x * y)).unwrap());
            }
        }
    }

    #[test]
    fn eigenvectors_satisfy_their_equation(m in square(5), lambda in -3i64..=3) {
        let lambda = Rational::from(lambda);
        let basis = eigenspace_basis(&m, &lambda).unwrap();
        for v in &basis {
            let mv = m.apply(v).unwrap();
            let lv: Vec<Rational> = v.iter().map(|x| x * &lambda).collect();
            prop_assert_eq!(mv, lv);
        }
        prop_assert_eq!(basis.len() + m.shift(&lambda).rank(), m.rows());
    }

    #[test]
    fn rank_nullity(m in (1..=4usize, 1..=5usize).prop_flat_map(|(r, c)| matrix(r, c))) {
        let null = m.nullspace();
        prop_assert_eq!(null.len() + m.rank(), m.cols());
        for v in &null {
            prop_assert!(m.apply(v).unwrap().iter().all(Rational::is_zero));
        }
    }

    #[test]
    fn report_round_trips(records in vec((0u32..5, 0u32..5, -9i64..9, -9i64..9, any::<bool>()), 0..8)) {
        let checks: Vec<CheckRecord> = records
            .into_iter()
            .map(|(id, k, e, a, text)| {
                let value = if text { format!("{{{k},{}}}", k + 1).into() } else { i64::from(k).into() };
                CheckRecord::new(&format!("check.{id}"), params([("D", id.into()), ("x0", value)]), q(e, 2), q(a, 2))
            })
            .collect();
        let report = Report::new(RunConfig::default(), checks);
        prop_assert_eq!(Report::from_json(&report.to_json().unwrap()).unwrap(), report.clone());
        prop_assert_eq!(Report::records_from_csv(&report.to_csv().unwrap()).unwrap(), report.checks.clone());
        prop_assert_eq!(report.all_pass(), report.summary.failed == 0);
    }

    #[test]
    fn weight_spaces_partition_the_product(m in 0u32..12, n in 0u32..12) {
        let total: usize = (0..=m + n).map(|l| WeightModuleDescriptor::new(m, n, l).unwrap().dim).sum();
        prop_assert_eq!(total, ((m + 1) * (n + 1)) as usize);
    }

    #[test]
    fn orbit_members_share_a_class(m in 0u32..12, n in 0u32..12, l in 0u32..24) {
        prop_assume!(l <= m + n);
        let class = WeightModuleDescriptor::new(m, n, l).unwrap().class();
        let orbit = iso_orbit(m, n, l).unwrap();
        prop_assert!(orbit.contains(&(m, n, l)));
        for (m2, n2, l2) in orbit {
            prop_assert_eq!(WeightModuleDescriptor::new(m2, n2, l2).unwrap().class(), class.clone());
            prop_assert!(iso_orbit(m2, n2, l2).unwrap().contains(&(m, n, l)));
        }
    }

    #[test]
    fn canonical_class_ignores_root_choice(a in rational(), b in rational(), d in 0u32..10) {
        let other = &(-&b) - &Rational::from(i64::from(d) + 1);
        let c = ModuleClass::canonical(a.clone(), b, d);
        prop_assert_eq!(ModuleClass::canonical(a, other, d), c.clone());
        prop_assert!(c.b <= q(-(i64::from(d) + 1), 2));
    }

    #[test]
    fn stepped_sum_closed_forms(ell in 0u64..=8, n in 0u64..=60) {
        prop_assert_eq!(Rational::from(s_ell(ell, n)), s_closed_exact(ell, n));
        prop_assert_eq!(s_ell(ell, n), s_closed_rounded(ell, n));
    }

    #[test]
    fn binomial_symmetry_and_pascal(n in 1u64..=60, k in 0u64..=60) {
        prop_assume!(k <= n);
        prop_assert_eq!(binom(n, k), binom(n, n - k));
        if k >= 1 {
            prop_assert_eq!(binom(n, k), binom(n - 1, k - 1) + binom(n - 1, k));
        }
    }

    #[test]
    fn formula_is_symmetric_and_matches_blocks(d in 2u32..=40, k in 1u32..40) {
        prop_assume!(k < d);
        let (_, dim) = terwilliger_dim_formula(d, k).unwrap();
        prop_assert_eq!(terwilliger_dim_formula(d, d - k).unwrap().1, dim);
        prop_assert_eq!(terwilliger_blocks(d, k).unwrap().wedderburn_dim(), dim);
    }

    #[test]
    fn random_anchor_is_a_k_subset(d in 2u32..=30, k in 1u32..30, seed in any::<u64>()) {
        prop_assume!(k < d);
        let x0 = random_anchor(d, k, seed).unwrap();
        prop_assert_eq!(x0.count_ones(), k);
        prop_assert_eq!(x0 >> d, 0);
        prop_assert_eq!(random_anchor(d, k, seed).unwrap(), x0);
    }
}
