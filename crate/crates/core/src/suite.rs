//! Verification suites: each runs one layer's checks over the configured
//! parameter ranges and returns one record per check.

use std::time::Instant;

use rayon::prelude::*;

use crate::binomial::verify_binomial_identities;
use crate::config::{AnchorPolicy, RunConfig};
use crate::error::Result;
use crate::hahn::{
    build_vd, check_hahn_relations, classify_module, intertwiner_from_vd, natural_images, vd_irreducible, HahnRep,
    ModuleClass,
};
use crate::johnson::{default_anchor, random_anchor, terwilliger_dim_formula, verify_t_equals_h_image};
use crate::lattice::{
    build_subset_lattice, lattice_decomposition, lattice_multiplicities, slice_decomposition_profile, split_by_anchor,
    subset_elements, Subset,
};
use crate::matrix::RepMatrix;
use crate::rational::{q, Rational};
use crate::report::{params, CheckRecord, Report};
use crate::sl2::{build_ln, build_tensor_rep, casimir_scalar, clebsch_gordan_summands};
use crate::span::span_closure;
use crate::strategy::{dimension_methods, DimensionContext, Registry};
use crate::weight::{iso_orbit, realize_weight_module, WeightModuleDescriptor};

pub trait Suite: Send + Sync {
    fn describe(&self) -> &'static str;

    fn run(&self, cfg: &RunConfig) -> Vec<CheckRecord>;
}

/// Runs `f`, recording its wall-clock time when the config asks for it.
fn timed(cfg: &RunConfig, f: impl FnOnce() -> CheckRecord) -> CheckRecord {
    let start = Instant::now();
    let mut record = f();
    if cfg.timing {
        record.millis = start.elapsed().as_millis() as u64;
    }
    record
}

/// `{0,2,5}`.
pub fn format_subset(x: Subset) -> String {
    let items: Vec<String> = subset_elements(x).iter().map(u32::to_string).collect();
    format!("{{{}}}", items.join(","))
}

fn join<T: ToString>(items: &[T]) -> String {
    items.iter().map(T::to_string).collect::<Vec<_>>().join(";")
}

fn passed_of(outcomes: &[(&str, bool)]) -> String {
    let failing: Vec<&str> = outcomes.iter().filter(|(_, ok)| !ok).map(|(name, _)| *name).collect();
    let count = format!("{}/{}", outcomes.len() - failing.len(), outcomes.len());
    if failing.is_empty() {
        count
    } else {
        format!("{count} failing: {}", failing.join(", "))
    }
}

fn all_of(n: usize) -> String {
    format!("{n}/{n}")
}

fn mn_pairs(cfg: &RunConfig) -> Vec<(u32, u32)> {
    (0..=cfg.m_max).flat_map(|m| (0..=cfg.n_max).map(move |n| (m, n))).collect()
}

struct Sl2Suite;

impl Suite for Sl2Suite {
    fn describe(&self) -> &'static str {
        "L_n relations and Casimir scalars; coproduct identities, Casimir centrality and Clebsch-Gordan spectra on L_m (x) L_n"
    }

    fn run(&self, cfg: &RunConfig) -> Vec<CheckRecord> {
        let mut out = Vec::new();
        for n in 0..=cfg.m_max.max(cfg.n_max) {
            let p = params([("n", n.into())]);
            out.push(timed(cfg, || {
                let l = build_ln(n);
                CheckRecord::new("sl2.relations", p.clone(), all_of(3), passed_of(&l.rep.relations()))
            }));
            out.push(timed(cfg, || {
                let l = build_ln(n);
                let c = casimir_scalar(n);
                let actual = if l.rep.lambda == RepMatrix::scalar(l.rep.dim(), c.clone()) {
                    format!("{c}·I")
                } else {
                    "not the predicted scalar".to_string()
                };
                CheckRecord::new("sl2.casimir_scalar", p.clone(), format!("{c}·I"), actual)
            }));
        }
        out.par_extend(mn_pairs(cfg).into_par_iter().flat_map_iter(|(m, n)| {
            let p = params([("m", m.into()), ("n", n.into())]);
            let rep = build_tensor_rep(m, n);
            let identities = timed(cfg, || {
                CheckRecord::new(
                    "sl2.coproduct_identities",
                    p.clone(),
                    all_of(5),
                    passed_of(&rep.coproduct_identities()),
                )
            });
            let central =
                timed(cfg, || CheckRecord::new("sl2.casimir_central", p.clone(), true, rep.casimir_is_central()));
            let predicted: Vec<u32> = (0..=m.min(n)).map(|k| m + n - 2 * k).collect();
            let spectrum = timed(cfg, || match clebsch_gordan_summands(m, n) {
                Ok(found) => CheckRecord::new("sl2.clebsch_gordan", p.clone(), join(&predicted), join(&found)),
                Err(e) => CheckRecord::error("sl2.clebsch_gordan", p.clone(), join(&predicted), &e),
            });
            [identities, central, spectrum]
        }));
        out
    }
}

struct HahnSuite;

/// The `(a, b)` grid used for `V_d(a,b)`: `a` in `{-2, -3/2, ..., 2}`, `b` in
/// `{-d-2, ..., 1}` in steps of 1/2.
fn vd_grid(d: u32) -> Vec<(Rational, Rational)> {
    let lo = -2 * (i64::from(d) + 2);
    (-4..=4).flat_map(|a| (lo..=2).map(move |b| (q(a, 2), q(b, 2)))).collect()
}

impl HahnSuite {
    fn vd_checks(cfg: &RunConfig, d: u32) -> Vec<CheckRecord> {
        let grid = vd_grid(d);
        let p = params([("d", d.into())]);
        let dd = i64::from(d);

        let central = timed(cfg, || {
            let good = grid
                .iter()
                .filter(|(a, b)| {
                    let (vp, am, bm) = build_vd(a.clone(), b.clone(), d);
                    let h = HahnRep::from_ab(am, bm).expect("square");
                    h.alpha == RepMatrix::scalar(vp.dim(), vp.eta.clone())
                        && h.beta == RepMatrix::scalar(vp.dim(), vp.eta_star.clone())
                })
                .count();
            CheckRecord::new("hahn.vd_central_scalars", p.clone(), all_of(grid.len()), format!("{good}/{}", grid.len()))
        });

        let burnside = timed(cfg, || {
            let full = (d as usize + 1).pow(2);
            let good = grid
                .iter()
                .filter(|(a, b)| {
                    let (_, am, bm) = build_vd(a.clone(), b.clone(), d);
                    let dim = span_closure(&[am, bm], true).expect("square").0;
                    vd_irreducible(a, b, d) == (dim == full)
                })
                .count();
            CheckRecord::new(
                "hahn.vd_irreducible_vs_closure",
                p.clone(),
                all_of(grid.len()),
                format!("{good}/{}", grid.len()),
            )
        });

        let irreducible: Vec<&(Rational, Rational)> = grid.iter().filter(|(a, b)| vd_irreducible(a, b, d)).collect();
        let classify = timed(cfg, || {
            let good = irreducible
                .iter()
                .filter(|(a, b)| {
                    let (vp, am, bm) = build_vd(a.clone(), b.clone(), d);
                    classify_module(&am, &bm, &vp.eta).ok() == Some(ModuleClass::canonical(a.clone(), b.clone(), d))
                })
                .count();
            CheckRecord::new(
                "hahn.vd_classify",
                p.clone(),
                all_of(irreducible.len()),
                format!("{good}/{}", irreducible.len()),
            )
        });

        // V_d(a,b) and V_d(a,-b-d-1) are isomorphic: the map seeded at v_0
        // must exist and be invertible.
        let other_root = timed(cfg, || {
            let good = irreducible
                .iter()
                .filter(|(a, b)| {
                    let other = -b - Rational::from(dd + 1);
                    let (vp, am, bm) = build_vd(a.clone(), b.clone(), d);
                    let (_, ta, tb) = build_vd(a.clone(), other, d);
                    let mut seed = vec![Rational::zero(); d as usize + 1];
                    seed[0] = Rational::one();
                    intertwiner_from_vd(&vp, &ta, &tb, &seed)
                        .is_ok_and(|m| m.rank() == d as usize + 1 && &m * &am == &ta * &m && &m * &bm == &tb * &m)
                })
                .count();
            CheckRecord::new(
                "hahn.vd_other_root_isomorphic",
                p.clone(),
                all_of(irreducible.len()),
                format!("{good}/{}", irreducible.len()),
            )
        });
        vec![central, burnside, classify, other_root]
    }
}

impl Suite for HahnSuite {
    fn describe(&self) -> &'static str {
        "Hahn relations on L_m (x) L_n; V_d(a,b) central scalars, irreducibility, classification and isomorphism"
    }

    fn run(&self, cfg: &RunConfig) -> Vec<CheckRecord> {
        let mut out: Vec<CheckRecord> = mn_pairs(cfg)
            .into_par_iter()
            .map(|(m, n)| {
                timed(cfg, || {
                    let report = check_hahn_relations(&natural_images(&build_tensor_rep(m, n)));
                    let outcomes: Vec<(&str, bool)> =
                        report.outcomes.iter().map(|o| (o.relation.as_str(), o.pass)).collect();
                    CheckRecord::new(
                        "hahn.relations",
                        params([("m", m.into()), ("n", n.into())]),
                        all_of(5),
                        passed_of(&outcomes),
                    )
                })
            })
            .collect();
        out.par_extend((0..=cfg.vd_d_max).into_par_iter().flat_map_iter(|d| Self::vd_checks(cfg, d)));
        out
    }
}

struct DecompSuite;

impl DecompSuite {
    fn weight_modules(cfg: &RunConfig) -> Vec<CheckRecord> {
        mn_pairs(cfg)
            .into_par_iter()
            .flat_map_iter(|(m, n)| {
                let rep = build_tensor_rep(m, n);
                let images = natural_images(&rep);
                (0..=m + n)
                    .map(|l| {
                        timed(cfg, || {
                            let p = params([("m", m.into()), ("n", n.into()), ("l", l.into())]);
                            let w = WeightModuleDescriptor::new(m, n, l).expect("l <= m + n");
                            let expected = format!("{} dim {}", w.class(), w.dim);
                            match realize_weight_module(&rep, &images, l) {
                                Ok(r) if r.is_isomorphism() => CheckRecord::new(
                                    "decomp.weight_module",
                                    p,
                                    expected,
                                    format!("{} dim {}", r.class, r.rank),
                                ),
                                Ok(r) => CheckRecord::with_pass(
                                    "decomp.weight_module",
                                    p,
                                    expected,
                                    format!("map of rank {} is not an isomorphism", r.rank),
                                    false,
                                ),
                                Err(e) => CheckRecord::error("decomp.weight_module", p, expected, &e),
                            }
                        })
                    })
                    .collect::<Vec<_>>()
            })
            .collect()
    }

    /// Classes agree exactly when the triples lie in one orbit.
    fn orbit_exhaustive(cfg: &RunConfig) -> CheckRecord {
        timed(cfg, || {
            let triples: Vec<(u32, u32, u32)> =
                mn_pairs(cfg).into_iter().flat_map(|(m, n)| (0..=m + n).map(move |l| (m, n, l))).collect();
            let classes: Vec<ModuleClass> =
                triples.iter().map(|&(m, n, l)| WeightModuleDescriptor::new(m, n, l).expect("valid").class()).collect();
            let mut mismatches = 0usize;
            let mut first = None;
            for (x, cx) in triples.iter().zip(&classes) {
                let orbit = iso_orbit(x.0, x.1, x.2).expect("valid");
                for (y, cy) in triples.iter().zip(&classes) {
                    if (cx == cy) != orbit.contains(y) {
                        mismatches += 1;
                        first.get_or_insert((*x, *y));
                    }
                }
            }
            let p = params([("m_max", cfg.m_max.into()), ("n_max", cfg.n_max.into())]);
            let actual = match first {
                None => "0 mismatches".to_string(),
                Some((x, y)) => format!("{mismatches} mismatches, first {x:?} vs {y:?}"),
            };
            CheckRecord::new("decomp.iso_orbit", p, "0 mismatches", actual)
        })
    }
}

impl Suite for DecompSuite {
    fn describe(&self) -> &'static str {
        "weight modules of L_m (x) L_n, isomorphism orbits, subset-lattice decomposition, anchor splitting and slice profiles"
    }

    fn run(&self, cfg: &RunConfig) -> Vec<CheckRecord> {
        let mut out = Self::weight_modules(cfg);
        out.push(Self::orbit_exhaustive(cfg));
        let lattice_max = cfg.d_max.min(cfg.lattice_cap);
        out.par_extend((0..=cfg.d_max).into_par_iter().map(|d| {
            timed(cfg, || {
                let p = params([("D", d.into())]);
                let summed =
                    lattice_multiplicities(d).map(|s| s.iter().map(|&(w, m)| m * (u64::from(w) + 1)).sum::<u64>());
                match summed {
                    Ok(total) => CheckRecord::new("decomp.multiplicity_sum", p, 1u64 << d, total),
                    Err(e) => CheckRecord::error("decomp.multiplicity_sum", p, 1u64 << d, &e),
                }
            })
        }));
        out.par_extend((0..=lattice_max).into_par_iter().map(|d| {
            timed(cfg, || {
                let p = params([("D", d.into())]);
                let fmt = |s: &[(u32, u64)]| s.iter().map(|(w, m)| format!("{m}·L{w}")).collect::<Vec<_>>().join(" + ");
                let expected = lattice_multiplicities(d).map(|s| fmt(&s)).unwrap_or_else(|e| e.to_string());
                match lattice_decomposition(d, cfg.lattice_cap) {
                    Ok(s) => CheckRecord::new("decomp.lattice_spectrum", p, expected, fmt(&s)),
                    Err(e) => CheckRecord::error("decomp.lattice_spectrum", p, expected, &e),
                }
            })
        }));
        let split_max = cfg.d_max.min(cfg.split_d_max).min(cfg.lattice_cap);
        out.par_extend((0..=split_max).into_par_iter().flat_map_iter(|d| {
            let lattice = build_subset_lattice(d, cfg.lattice_cap).expect("within cap");
            (0..1u64 << d)
                .map(|x0| {
                    timed(cfg, || {
                        let p = params([("D", d.into()), ("x0", format_subset(x0).into())]);
                        match split_by_anchor(&lattice, x0) {
                            Ok(s) => {
                                let outcomes: Vec<(&str, bool)> =
                                    s.checks.iter().map(|c| (c.relation.as_str(), c.pass)).collect();
                                CheckRecord::new("decomp.anchor_split", p, all_of(outcomes.len()), passed_of(&outcomes))
                            }
                            Err(e) => CheckRecord::error("decomp.anchor_split", p, all_of(6), &e),
                        }
                    })
                })
                .collect::<Vec<_>>()
        }));
        out.par_extend((0..=cfg.d_max).into_par_iter().flat_map_iter(|d| {
            (0..=d)
                .map(|k| {
                    timed(cfg, || {
                        let p = params([("D", d.into()), ("k", k.into())]);
                        let expected = crate::binomial::binom(u64::from(d), u64::from(k));
                        match slice_decomposition_profile(d, k) {
                            Ok(profile) => CheckRecord::new("decomp.slice_profile", p, expected, profile.total_dim()),
                            Err(e) => CheckRecord::error("decomp.slice_profile", p, expected, &e),
                        }
                    })
                })
                .collect::<Vec<_>>()
        }));
        out
    }
}

struct JohnsonSuite;

/// Largest `D` for which the generated algebras are compared with the image
/// of the Hahn algebra.
const T_IMAGE_D_MAX: u32 = 7;

/// The anchors the policy selects for `J(D,k)`.
pub fn anchors_for(cfg: &RunConfig, d: u32, k: u32) -> Result<Vec<Subset>> {
    Ok(match cfg.anchors {
        AnchorPolicy::Default => vec![default_anchor(k)],
        AnchorPolicy::Random => vec![random_anchor(d, k, cfg.seed)?],
        AnchorPolicy::Both => vec![default_anchor(k), random_anchor(d, k, cfg.seed)?],
    })
}

fn johnson_cases(cfg: &RunConfig) -> Vec<(u32, u32)> {
    (2..=cfg.d_max)
        .flat_map(|d| (1..d).map(move |k| (d, k)))
        .filter(|&(_, k)| cfg.k.is_none_or(|only| only == k))
        .collect()
}

impl JohnsonSuite {
    fn case(cfg: &RunConfig, d: u32, k: u32) -> Vec<CheckRecord> {
        let methods = dimension_methods();
        let mut out = Vec::new();
        let dk = || params([("D", d.into()), ("k", k.into())]);
        let formula = match terwilliger_dim_formula(d, k) {
            Ok((_, v)) => v,
            Err(e) => return vec![CheckRecord::error("johnson.formula", dk(), "a value", &e)],
        };
        let anchors = match anchors_for(cfg, d, k) {
            Ok(a) => a,
            Err(e) => return vec![CheckRecord::error("johnson.anchor", dk(), "an anchor", &e)],
        };
        for (name, method) in methods.iter().filter(|(n, _)| *n != "formula") {
            let id = format!("johnson.dimension.{name}");
            let used: Vec<Option<Subset>> =
                if name == "bruteforce" { anchors.iter().copied().map(Some).collect() } else { vec![None] };
            for anchor in used {
                if name == "bruteforce" && crate::binomial::binom(u64::from(d), u64::from(k)) > cfg.cap {
                    continue;
                }
                out.push(timed(cfg, || {
                    let mut p = dk();
                    if let Some(x0) = anchor {
                        p.insert("x0".into(), format_subset(x0).into());
                    }
                    let ctx = DimensionContext { anchor: anchor.unwrap_or_else(|| default_anchor(k)), cap: cfg.cap };
                    match method.dimension(d, k, &ctx) {
                        Ok(v) => CheckRecord::new(&id, p, formula, v),
                        Err(e) => CheckRecord::error(&id, p, formula, &e),
                    }
                }));
            }
        }
        out.push(timed(cfg, || {
            let mirrored =
                terwilliger_dim_formula(d, d - k).map(|(_, v)| v.to_string()).unwrap_or_else(|e| e.to_string());
            CheckRecord::new("johnson.formula_symmetry", dk(), formula, mirrored)
        }));
        if d <= T_IMAGE_D_MAX {
            for &x0 in &anchors {
                out.push(timed(cfg, || {
                    let mut p = dk();
                    p.insert("x0".into(), format_subset(x0).into());
                    match verify_t_equals_h_image(d, k, x0, cfg.cap) {
                        Ok(same) => CheckRecord::new("johnson.t_equals_hahn_image", p, true, same),
                        Err(e) => CheckRecord::error("johnson.t_equals_hahn_image", p, true, &e),
                    }
                }));
            }
        }
        out
    }
}

impl Suite for JohnsonSuite {
    fn describe(&self) -> &'static str {
        "dim T(x0) by every registered method, formula symmetry, T(x0) as the Hahn image, binomial identities"
    }

    fn run(&self, cfg: &RunConfig) -> Vec<CheckRecord> {
        let mut out: Vec<CheckRecord> =
            johnson_cases(cfg).into_par_iter().flat_map_iter(|(d, k)| Self::case(cfg, d, k)).collect();
        let checks = verify_binomial_identities(cfg.binomial_n_max);
        let mut names: Vec<&str> = Vec::new();
        for c in &checks {
            if !names.contains(&c.identity.as_str()) {
                names.push(&c.identity);
            }
        }
        for name in names {
            let group: Vec<_> = checks.iter().filter(|c| c.identity == name).collect();
            let failing = group.iter().find(|c| !c.pass);
            let actual = match failing {
                None => all_of(group.len()),
                Some(c) => format!(
                    "{}/{} (n = {}, ℓ = {:?}: {} vs {})",
                    group.iter().filter(|c| c.pass).count(),
                    group.len(),
                    c.n,
                    c.ell,
                    c.lhs,
                    c.rhs
                ),
            };
            let p = params([("identity", name.into()), ("n_max", cfg.binomial_n_max.into())]);
            out.push(CheckRecord::new("johnson.binomial", p, all_of(group.len()), actual));
        }
        out
    }
}

struct AllSuites;

impl Suite for AllSuites {
    fn describe(&self) -> &'static str {
        "every suite above"
    }

    fn run(&self, cfg: &RunConfig) -> Vec<CheckRecord> {
        let mut out = Sl2Suite.run(cfg);
        out.extend(HahnSuite.run(cfg));
        out.extend(DecompSuite.run(cfg));
        out.extend(JohnsonSuite.run(cfg));
        out
    }
}

/// `sl2`, `hahn`, `decomp`, `johnson`, `all`.
pub fn suites() -> Registry<dyn Suite> {
    let mut r: Registry<dyn Suite> = Registry::new("suite");
    r.register("sl2", Box::new(Sl2Suite));
    r.register("hahn", Box::new(HahnSuite));
    r.register("decomp", Box::new(DecompSuite));
    r.register("johnson", Box::new(JohnsonSuite));
    r.register("all", Box::new(AllSuites));
    r
}

/// Validates the config, runs the named suite and collects its report.
pub fn run_verify(name: &str, cfg: &RunConfig) -> Result<Report> {
    cfg.validate()?;
    let registry = suites();
    let suite = registry.get(name)?;
    Ok(Report::new(cfg.clone(), suite.run(cfg)))
}
