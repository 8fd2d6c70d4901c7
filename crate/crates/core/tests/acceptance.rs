//! Acceptance checks, one PASS/FAIL line each. Every comparison is exact.
//!
//! Runs without the libtest harness so the lines always reach stdout; the
//! process exits nonzero if any check fails.

use std::process::ExitCode;
use std::time::Instant;

use sl2hahn::binomial::{binom, s_closed_exact, s_closed_rounded, verify_binomial_identities, ELL_MAX};
use sl2hahn::hahn::{build_vd, check_hahn_relations, is_intertwiner, natural_images, ModuleClass};
use sl2hahn::johnson::{
    default_anchor, random_anchor, terwilliger_blocks, terwilliger_dim_bruteforce, terwilliger_dim_formula,
    verify_t_equals_h_image, DEFAULT_BRUTEFORCE_CAP,
};
use sl2hahn::lattice::{build_subset_lattice, multiplicity_m, slice_decomposition_profile, split_by_anchor};
use sl2hahn::matrix::{commutator, eigenspace_basis, kron};
use sl2hahn::rational::q;
use sl2hahn::sl2::{build_ln, build_tensor_rep, casimir_matrix, clebsch_gordan_summands};
use sl2hahn::weight::{iso_orbit, realize_weight_module, WeightModuleDescriptor};
use sl2hahn::{Rational, RepMatrix};

/// `Ok(summary)` on success, `Err(first problem)` otherwise.
type Outcome = Result<String, String>;

/// A named check, run once.
type Criterion<'a> = Box<dyn Fn() -> Outcome + 'a>;

/// A weight space `(m, n, ℓ)` with its class, or why it could not be realized.
type WeightSpace = ((u32, u32, u32), Result<ModuleClass, String>);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn hahn_homomorphism() -> Outcome {
    let mut checked = 0;
    for m in 0..=4u32 {
        for n in 0..=4u32 {
            let rep = build_tensor_rep(m, n);
            let h = natural_images(&rep);
            let report = check_hahn_relations(&h);
            ensure(report.all_pass(), || format!("({m},{n}): {:?}", report.first_failure()))?;

            // Recompute the relations and the central displays from the
            // factor matrices.
            let (lm, ln) = (build_ln(m).rep, build_ln(n).rep);
            let (im, in_) = (RepMatrix::identity(lm.dim()), RepMatrix::identity(ln.dim()));
            let cas_m = casimir_matrix(&lm.e, &lm.f, &lm.h).unwrap();
            let cas_n = casimir_matrix(&ln.e, &ln.f, &ln.h).unwrap();
            let lam1 = kron(&cas_m, &in_);
            let lam2 = kron(&im, &cas_n);
            let dh = &kron(&lm.h, &in_) + &kron(&im, &ln.h);
            let alpha = &(&lam1 + &lam2).scale(&q(1, 2)) + &(&dh * &dh).scale(&q(1, 8));
            let beta = (&(&lam1 - &lam2) * &dh).scale(&q(1, 2));
            ensure(h.alpha == alpha, || format!("({m},{n}): α image differs from its display"))?;
            ensure(h.beta == beta, || format!("({m},{n}): β image differs from its display"))?;
            ensure(commutator(&h.a, &h.b).unwrap() == h.c, || format!("({m},{n}): [A,B] != C"))?;
            for (name, z) in [("α", &alpha), ("β", &beta)] {
                for x in [&h.a, &h.b, &h.c] {
                    ensure(commutator(z, x).unwrap().is_zero(), || format!("({m},{n}): {name} not central"))?;
                }
            }
            checked += 1;
        }
    }
    Ok(format!("{checked}/25 tensor products"))
}

fn casimir_scalars() -> Outcome {
    for n in 0..=12u32 {
        let l = build_ln(n).rep;
        let nn = i64::from(n);
        let expected = RepMatrix::scalar(l.dim(), Rational::from(nn * (nn + 2)) * q(1, 2));
        ensure(casimir_matrix(&l.e, &l.f, &l.h).unwrap() == expected, || format!("n = {n}: EF+FE+H²/2"))?;
        ensure(l.lambda == expected, || format!("n = {n}: stored Λ"))?;
    }
    Ok("n = 0..12".into())
}

fn clebsch_gordan() -> Outcome {
    for m in 0..=6u32 {
        for n in 0..=6u32 {
            let rep = build_tensor_rep(m, n);
            let mut covered = 0;
            for p in 0..=m.min(n) {
                let w = i64::from(m + n - 2 * p);
                let mult = eigenspace_basis(&rep.dlambda, &(Rational::from(w * (w + 2)) * q(1, 2))).unwrap().len();
                ensure(mult == w as usize + 1, || format!("({m},{n}): L_{w} eigenspace has dim {mult}"))?;
                covered += mult;
            }
            ensure(covered == rep.dim(), || format!("({m},{n}): eigenspaces cover {covered} of {}", rep.dim()))?;
            let predicted: Vec<u32> = (0..=m.min(n)).map(|p| m + n - 2 * p).collect();
            ensure(clebsch_gordan_summands(m, n).is_ok_and(|s| s == predicted), || format!("({m},{n}): summand list"))?;
        }
    }
    Ok("m, n = 0..6".into())
}

/// Every weight space of `L_m (x) L_n` for `m, n <= 5`, realized from the
/// matrices: its class read back by the classifier, and whether the map out
/// of `V_d(a,b)` is an isomorphism.
fn weight_spaces() -> Vec<WeightSpace> {
    let mut out = Vec::new();
    for m in 0..=5u32 {
        for n in 0..=5u32 {
            let rep = build_tensor_rep(m, n);
            let images = natural_images(&rep);
            for l in 0..=m + n {
                let class = (|| {
                    let r = realize_weight_module(&rep, &images, l).map_err(|e| e.to_string())?;
                    let w = WeightModuleDescriptor::new(m, n, l).map_err(|e| e.to_string())?;
                    let dim = (0..=m).filter(|&i| l >= i && l - i <= n).count();
                    ensure(w.dim == dim && r.rank == dim && r.coordinates.len() == dim, || {
                        format!("dims: descriptor {}, rank {}, weight space {dim}", w.dim, r.rank)
                    })?;
                    let (_, va, vb) = build_vd(w.a.clone(), w.b.clone(), w.d);
                    ensure(&r.intertwiner * &va == &r.a * &r.intertwiner, || "does not intertwine A".into())?;
                    ensure(&r.intertwiner * &vb == &r.b * &r.intertwiner, || "does not intertwine B".into())?;
                    ensure(is_intertwiner(&r.intertwiner, &va, &vb, &r.a, &r.b) && r.is_isomorphism(), || {
                        "not an isomorphism".into()
                    })?;
                    Ok(r.class)
                })();
                out.push(((m, n, l), class));
            }
        }
    }
    out
}

fn weight_module_intertwiners(spaces: &[WeightSpace]) -> Outcome {
    for (t, class) in spaces {
        class.as_ref().map_err(|e| format!("{t:?}: {e}"))?;
    }
    Ok(format!("{} weight spaces", spaces.len()))
}

fn orbit_condition(spaces: &[WeightSpace]) -> Outcome {
    let mut mismatches = 0usize;
    let mut first = None;
    let mut pairs = 0usize;
    for (x, cx) in spaces {
        let cx = cx.as_ref().map_err(|e| format!("{x:?}: {e}"))?;
        let orbit = iso_orbit(x.0, x.1, x.2).map_err(|e| e.to_string())?;
        for (y, cy) in spaces {
            let cy = cy.as_ref().map_err(|e| format!("{y:?}: {e}"))?;
            pairs += 1;
            if (cx == cy) != orbit.contains(y) {
                mismatches += 1;
                first.get_or_insert((*x, *y));
            }
        }
    }
    match first {
        None => Ok(format!("0 mismatches over {pairs} pairs")),
        Some((x, y)) => Err(format!("{mismatches} mismatches, first {x:?} vs {y:?}")),
    }
}

fn terwilliger_dimensions() -> Outcome {
    for d in 2..=8u32 {
        for k in 1..d {
            let brute = terwilliger_dim_bruteforce(d, k, default_anchor(k), DEFAULT_BRUTEFORCE_CAP)
                .map_err(|e| e.to_string())?;
            let formula = terwilliger_dim_formula(d, k).map_err(|e| e.to_string())?.1;
            let blocks = terwilliger_blocks(d, k).map_err(|e| e.to_string())?.wedderburn_dim();
            let profile = slice_decomposition_profile(d, k.min(d - k)).map_err(|e| e.to_string())?.wedderburn_dim();
            ensure([formula, blocks, profile].iter().all(|&v| v == brute), || {
                format!("J({d},{k}): bruteforce {brute}, formula {formula}, blocks {blocks}, profile {profile}")
            })?;
        }
    }
    for (d, k, expected) in [(2, 1, 4), (4, 2, 11), (7, 2, 16), (8, 4, 46)] {
        let brute =
            terwilliger_dim_bruteforce(d, k, default_anchor(k), DEFAULT_BRUTEFORCE_CAP).map_err(|e| e.to_string())?;
        ensure(brute == expected, || format!("dim T(J({d},{k})) = {brute}, expected {expected}"))?;
    }
    Ok("D = 2..8, all k; J(2,1)=4, J(4,2)=11, J(7,2)=16, J(8,4)=46".into())
}

fn t_equals_hahn_image() -> Outcome {
    let mut cases = 0;
    for d in 2..=7u32 {
        for k in 1..d {
            let anchors = [default_anchor(k), random_anchor(d, k, 0).map_err(|e| e.to_string())?];
            ensure(anchors[0] != anchors[1], || format!("J({d},{k}): anchors coincide"))?;
            for x0 in anchors {
                let same = verify_t_equals_h_image(d, k, x0, DEFAULT_BRUTEFORCE_CAP).map_err(|e| e.to_string())?;
                ensure(same, || format!("J({d},{k}), x0 = {x0:#b}: spans differ"))?;
                cases += 1;
            }
        }
    }
    Ok(format!("{cases} (D, k, anchor) cases"))
}

fn binomial_layer() -> Outcome {
    let checks = verify_binomial_identities(40);
    if let Some(c) = checks.iter().find(|c| !c.pass) {
        return Err(format!("{} at n = {}, ℓ = {:?}: {} vs {}", c.identity, c.n, c.ell, c.lhs, c.rhs));
    }
    let per_ell = checks.iter().filter(|c| c.ell.is_some()).count();
    let plain = checks.len() - per_ell;
    ensure(per_ell == 41 * 7 * 5 && plain == 41 * 2, || format!("coverage {per_ell} + {plain}"))?;

    // Stepped sums from a Pascal triangle built here.
    let mut pascal = vec![vec![0u64; 42]; 42];
    for n in 0..42 {
        pascal[n][0] = 1;
        for k in 1..=n {
            pascal[n][k] = pascal[n - 1][k - 1] + pascal[n - 1][k];
        }
    }
    for (n, row) in pascal.iter().enumerate().take(41) {
        for ell in 0..=ELL_MAX as usize {
            let s: u64 = (0..=n / 2).map(|i| pascal[n - 2 * i][ell]).sum();
            ensure(binom(n as u64, ell as u64) == row[ell], || format!("C({n},{ell})"))?;
            ensure(Rational::from(s) == s_closed_exact(ell as u64, n as u64), || format!("exact s_{ell}({n})"))?;
            ensure(s == s_closed_rounded(ell as u64, n as u64), || format!("rounded s_{ell}({n})"))?;
        }
    }
    Ok(format!("{} identity instances, n <= 40, ℓ <= 6", checks.len()))
}

fn lattice_layer() -> Outcome {
    let mut anchors = 0;
    for d in 0..=6u32 {
        let lattice = build_subset_lattice(d, 6).map_err(|e| e.to_string())?;
        for x0 in 0..1u64 << d {
            let split = split_by_anchor(&lattice, x0).map_err(|e| e.to_string())?;
            ensure(split.checks.len() == 6, || format!("D = {d}: {} checks", split.checks.len()))?;
            if let Some(c) = split.checks.iter().find(|c| !c.pass) {
                return Err(format!("D = {d}, x0 = {x0:#b}: {} fails at {:?}", c.relation, c.first_failure));
            }
            anchors += 1;
        }
    }
    for d in 0..=10u32 {
        let mut total = Rational::zero();
        for i in 0..=d / 2 {
            let m = multiplicity_m(i, d).map_err(|e| e.to_string())?;
            let below = if i == 0 { 0 } else { binom(u64::from(d), u64::from(i - 1)) };
            let oracle = binom(u64::from(d), u64::from(i)) - below;
            ensure(m == Rational::from(oracle), || format!("m_{i}({d}) = {m}, expected {oracle}"))?;
            total += &(m * Rational::from(i64::from(d) - 2 * i64::from(i) + 1));
        }
        ensure(total == Rational::from(1u64 << d), || format!("D = {d}: Σ m_i(D)(D-2i+1) = {total}"))?;
    }
    Ok(format!("{anchors} anchors split, multiplicity sums for D <= 10"))
}

fn main() -> ExitCode {
    let started = Instant::now();
    let spaces = weight_spaces();
    let criteria: Vec<(&str, Criterion)> = vec![
        ("Hahn homomorphism and central displays, m, n <= 4", Box::new(hahn_homomorphism)),
        ("Casimir scalar n(n+2)/2 on L_n, n <= 12", Box::new(casimir_scalars)),
        ("Clebsch-Gordan spectra with multiplicities, m, n <= 6", Box::new(clebsch_gordan)),
        ("weight-space isomorphisms from V_d(a,b), m, n <= 5", Box::new(|| weight_module_intertwiners(&spaces))),
        ("class equality iff orbit membership, m, n <= 5", Box::new(|| orbit_condition(&spaces))),
        ("dim T(x0) by closure = formula = blocks = profile, D <= 8", Box::new(terwilliger_dimensions)),
        ("T(x0) equals the Hahn image, D <= 7, two anchors", Box::new(t_equals_hahn_image)),
        ("binomial identities and closed forms, n <= 40", Box::new(binomial_layer)),
        ("lattice splitting, multiplicity sums, anchored A and B", Box::new(lattice_layer)),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        match run() {
            Ok(detail) => println!("PASS {}. {name}: {detail}", i + 1),
            Err(detail) => {
                failed += 1;
                println!("FAIL {}. {name}: {detail}", i + 1);
            }
        }
    }
    println!("{} of {} passed in {:.1} s", criteria.len() - failed, criteria.len(), started.elapsed().as_secs_f64());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
