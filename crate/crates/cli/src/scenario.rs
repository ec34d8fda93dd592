//! Named end-to-end scenarios: each one builds a family member, computes or
//! verifies its lattice, classifies the shape, and prints one line per
//! checked claim.

use cdlat_core::cdengine::{
    compute_cd_full, minimum_is_center, verify_predicted, VerifyOptions, DEFAULT_BUDGET,
};
use cdlat_core::constructions::{
    self, build_double_diamond, extend_diamond, extend_qac, iterate, ExpectedLattice, Extension,
};
use cdlat_core::gfplin::Prime;
use cdlat_core::presentation::CentralPresentation;
use cdlat_core::shapes;

use crate::{resolve_jobs, Outcome, ScenarioArgs};

struct Checks {
    failed: usize,
}

impl Checks {
    fn new() -> Checks {
        Checks { failed: 0 }
    }

    fn check(&mut self, claim: &str, ok: bool) {
        if ok {
            println!("  [PASS] {claim}");
        } else {
            println!("  [FAIL] {claim}");
            self.failed += 1;
        }
    }

    fn check_eq<T: PartialEq + std::fmt::Debug>(&mut self, claim: &str, got: T, want: T) {
        if got == want {
            println!("  [PASS] {claim}");
        } else {
            println!("  [FAIL] {claim}: got {got:?}, want {want:?}");
            self.failed += 1;
        }
    }
}

type Built = (CentralPresentation, ExpectedLattice);

fn names_of(exp: &ExpectedLattice) -> Vec<&str> {
    exp.members.iter().map(|m| m.name.as_str()).collect()
}

fn full_scan_matches(c: &mut Checks, built: &Built, jobs: usize, label: &str) {
    match compute_cd_full(&built.0, DEFAULT_BUDGET, jobs) {
        Ok((lat, stats)) => {
            c.check_eq(
                &format!("{label}: exhaustive member set equals the prediction"),
                lat.members == built.1.spaces(),
                true,
            );
            println!(
                "         ({} subspaces scanned in {:.2?})",
                stats.scanned, stats.wall
            );
        }
        Err(e) => c.check(&format!("{label}: full enumeration ran ({e})"), false),
    }
}

fn p2() -> Prime {
    Prime::new(2).unwrap()
}

fn p3() -> Prime {
    Prime::new(3).unwrap()
}

fn scenario_thm11(c: &mut Checks, jobs: usize) {
    let built = build_double_diamond(p2(), 2, None).unwrap();
    let (pres, exp) = &built;
    c.check_eq("v_dim, w_dim == 8, 14", (pres.v_dim(), pres.w_dim()), (8, 14));
    c.check_eq(
        "members == {ZP, A_1, A_2, A, AB_1, AB_2, P}",
        {
            let mut names = names_of(exp);
            names.sort_unstable();
            names
        },
        vec!["A", "AB_1", "AB_2", "A_1", "A_2", "P", "ZP"],
    );
    let (lat, stats) = compute_cd_full(pres, DEFAULT_BUDGET, jobs).unwrap();
    c.check_eq("full scan streams all 417199 subspaces", stats.scanned, 417_199);
    c.check_eq("CD has exactly 7 members", lat.members.len(), 7);
    c.check(
        "CD equals the named set as canonical subspaces",
        lat.members == exp.spaces(),
    );
    c.check_eq(
        "shape == uniform 2-string of diamond(2)",
        lat.classify().unwrap().summary(),
        "2-string[diamond(2),diamond(2)] uniform idx=p^2".to_string(),
    );
    c.check("minimum member is ZP", minimum_is_center(&lat));
}

fn scenario_thm21_small(c: &mut Checks, jobs: usize) {
    // nontrivial base: a 1-diamond pair around the Heisenberg lattice
    let built = extend_diamond(&constructions::heisenberg(p2()), 1, 2).unwrap();
    c.check_eq(
        "mixed 3-string with the base window in the middle",
        built.1.expected_shape.summary(),
        "3-string[diamond(1),qac(3),diamond(1)] mixed idx=p^2|p^1|p^2".to_string(),
    );
    let (lo, hi) = built.1.base_window.unwrap();
    c.check_eq(
        "window endpoints are Atilde and Ntilde",
        (
            built.1.members[lo].name.as_str(),
            built.1.members[hi].name.as_str(),
        ),
        ("Atilde", "Ntilde"),
    );
    // center component lattice-isomorphic to the base lattice
    let window_shape = &built.1.expected_shape.components[1];
    let base_shape = &constructions::heisenberg(p2()).1.expected_shape.components[0];
    c.check_eq(
        "center component is lattice isomorphic to the base lattice",
        &window_shape.kind,
        &base_shape.kind,
    );
    full_scan_matches(c, &built, jobs, "LE(1,2) over the Heisenberg base");

    // trivial base at m = 2: uniform 2-string of 2-diamonds
    let built2 = extend_diamond(&constructions::trivial(p2()), 2, 2).unwrap();
    c.check_eq(
        "trivial base gives a uniform 2-string of diamond(2)",
        built2.1.expected_shape.summary(),
        "2-string[diamond(2),diamond(2)] uniform idx=p^2".to_string(),
    );
    full_scan_matches(c, &built2, jobs, "LE(2,2) over the trivial base");
}

fn scenario_cor25_l2(c: &mut Checks, jobs: usize) {
    let built = iterate(Extension::Diamond { m: 1, n: 2 }, &constructions::trivial(p2()), 2).unwrap();
    c.check_eq("iterating twice gives v_dim 8", built.0.v_dim(), 8);
    c.check_eq("the prediction is a chain of 5 members", built.1.members.len(), 5);
    let (lat, _) = compute_cd_full(&built.0, DEFAULT_BUDGET, jobs).unwrap();
    c.check("exhaustive member set equals the prediction", lat.members == built.1.spaces());
    c.check_eq(
        "shape == uniform 4-string of diamond(1), every cover index p^2",
        lat.classify().unwrap().summary(),
        "4-string[diamond(1),diamond(1),diamond(1),diamond(1)] uniform idx=p^2".to_string(),
    );
}

fn scenario_thm31(c: &mut Checks, jobs: usize) {
    let built = extend_qac(&constructions::trivial(p2()), 2).unwrap();
    c.check_eq(
        "v_dim, w_dim == 8, 10",
        (built.0.v_dim(), built.0.w_dim()),
        (8, 10),
    );
    let (lat, stats) = compute_cd_full(&built.0, DEFAULT_BUDGET, jobs).unwrap();
    c.check_eq("full scan streams all 417199 subspaces", stats.scanned, 417_199);
    c.check_eq("CD has exactly 9 members", lat.members.len(), 9);
    c.check("CD equals the predicted set", lat.members == built.1.spaces());
    c.check_eq(
        "shape == uniform 2-string of qac(3), width p+1, cover indices p^2",
        lat.classify().unwrap().summary(),
        "2-string[qac(3),qac(3)] uniform idx=p^2".to_string(),
    );
    c.check("minimum member is ZP", minimum_is_center(&lat));
}

fn scenario_lem33(c: &mut Checks) {
    for (p, plabel) in [(p2(), 2u64), (p3(), 3)] {
        for n in [2usize, 3] {
            for base_name in ["trivial", "heisenberg"] {
                let base = if base_name == "trivial" {
                    constructions::trivial(p)
                } else {
                    constructions::heisenberg(p)
                };
                let (pres, exp) = extend_qac(&base, n).unwrap();
                let mut all_ok = true;
                for k in 0..=plabel {
                    let ak = &exp.find(&format!("A_k={k}")).unwrap().space;
                    let predicted = &exp.find(&format!("C(A_k={k})")).unwrap().space;
                    all_ok &= &pres.centralizer(ak).unwrap() == predicted;
                }
                c.check(
                    &format!(
                        "p={plabel} n={n} base={base_name}: C(A_k) == <b_1j^k b_2j^-1> Ntilde for all 0 <= k <= p"
                    ),
                    all_ok,
                );
            }
        }
    }
}

fn scenario_cor36_l1(c: &mut Checks, jobs: usize, heavy: bool) {
    let built = extend_qac(&constructions::heisenberg(p2()), 2).unwrap();
    let (pres, exp) = &built;
    c.check_eq("v_dim == 10 (r = 2)", pres.v_dim(), 10);
    c.check_eq("prediction has 13 members", exp.members.len(), 13);
    let predicted = exp.to_lattice(pres).unwrap();
    let opts = VerifyOptions {
        random_samples: 1_000_000,
        seed: 0x0cd1a7,
        jobs,
    };
    let report = verify_predicted(pres, &predicted, &opts).unwrap();
    c.check(
        &format!(
            "verification passes with {} adversarial + {} random samples",
            report.stats.adversarial_samples, report.stats.random_samples
        ),
        report.passed(),
    );
    c.check_eq(
        "shape == 3-string of qac(3), outer indices p^2, inner p^1",
        predicted.classify().unwrap().summary(),
        "3-string[qac(3),qac(3),qac(3)] uniform idx=p^2|p^1|p^2".to_string(),
    );
    if heavy {
        println!("  running the heavy full scan over GF(2)^10 (~2.3e8 subspaces)...");
        let (lat, stats) = compute_cd_full(pres, DEFAULT_BUDGET, jobs).unwrap();
        c.check(
            &format!(
                "heavy: exhaustive scan of {} subspaces equals the prediction",
                stats.scanned
            ),
            lat.members == exp.spaces(),
        );
    }
}

fn scenario_bw2012(c: &mut Checks, jobs: usize) {
    let h = constructions::heisenberg(p2());
    let prod = h.0.direct_product(&h.0).unwrap();
    let exp = constructions::product_expected(&prod, &h, &h).unwrap();
    c.check_eq("product prediction has 25 = 5 x 5 members", exp.members.len(), 25);
    let (lat, stats) = compute_cd_full(&prod, DEFAULT_BUDGET, jobs).unwrap();
    c.check_eq("full scan streams all 67 subspaces", stats.scanned, 67);
    c.check(
        "CD of the product equals the pairwise direct sums of the factors",
        lat.members == exp.spaces(),
    );
}

fn scenario_remark1(c: &mut Checks, jobs: usize) {
    let built = build_double_diamond(p2(), 3, Some((2, 4))).unwrap();
    let (pres, exp) = &built;
    c.check_eq("v_dim == 12, w_dim == 35", (pres.v_dim(), pres.w_dim()), (12, 35));
    let dims: Vec<usize> = exp.members.iter().map(|m| m.space.dim()).collect();
    c.check_eq(
        "the seven members have pairwise distinct orders",
        dims,
        vec![0, 2, 4, 6, 8, 10, 12],
    );
    let spaces = exp.spaces();
    let covers = cdlat_core::cdengine::covers(&spaces);
    let shape = shapes::classify(&dims2(&spaces), &covers).unwrap();
    c.check_eq(
        "shape is still a 2-string of diamond(2)",
        shape.component_kinds(),
        vec![shapes::ComponentKind::Diamond(2), shapes::ComponentKind::Diamond(2)],
    );
    let predicted = exp.to_lattice(pres).unwrap();
    let opts = VerifyOptions {
        random_samples: 200_000,
        seed: 0x0cd1a7,
        jobs,
    };
    let report = verify_predicted(pres, &predicted, &opts).unwrap();
    c.check(
        &format!(
            "verification passes with {} adversarial + {} random samples",
            report.stats.adversarial_samples, report.stats.random_samples
        ),
        report.passed(),
    );
}

fn dims2(spaces: &[cdlat_core::gfplin::Subspace]) -> Vec<usize> {
    spaces.iter().map(|s| s.dim()).collect()
}

pub(crate) fn run(args: ScenarioArgs) -> Outcome {
    let jobs = resolve_jobs(args.jobs);
    let mut c = Checks::new();
    println!("scenario {}", args.name);
    match args.name.as_str() {
        "thm1.1" => scenario_thm11(&mut c, jobs),
        "thm2.1-small" => scenario_thm21_small(&mut c, jobs),
        "cor2.5-l2" => scenario_cor25_l2(&mut c, jobs),
        "thm3.1" => scenario_thm31(&mut c, jobs),
        "lem3.3" => scenario_lem33(&mut c),
        "cor3.6-l1" => scenario_cor36_l1(&mut c, jobs, args.heavy),
        "bw2012-product" => scenario_bw2012(&mut c, jobs),
        "remark1-asymmetric" => scenario_remark1(&mut c, jobs),
        other => {
            return Outcome::Input(format!(
                "unknown scenario {other:?}; available: thm1.1, thm2.1-small, cor2.5-l2, thm3.1, lem3.3, cor3.6-l1, bw2012-product, remark1-asymmetric"
            ))
        }
    }
    if c.failed == 0 {
        println!("{}: PASS", args.name);
        Outcome::Ok
    } else {
        println!("{}: FAIL ({} checks failed)", args.name, c.failed);
        Outcome::Counterexample(format!("{} checks failed", c.failed))
    }
}
