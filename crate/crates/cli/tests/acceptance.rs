//! One line per acceptance criterion. Exits non-zero if any fails.

use std::collections::BTreeMap;
use std::path::PathBuf;
use std::process::Command;
use std::sync::Arc;
use std::time::{Duration, Instant};

use grograde::algebra::{check_m_iso, compute_epsilons, GradedAlgebra};
use grograde::cohomology::{cohomology, Backend, Complex, DEFAULT_CAP};
use grograde::corpus::{group_algebra, modules, morita_truncation, skew_actions};
use grograde::crossed::{classify, ClassifyOptions};
use grograde::finalg::{check_idem_ideal_bijection, FiniteCommRing, IdealSearch};
use grograde::leavitt::{lpa_build, lpa_report, random_acyclic_graph, three_vertex_example};
use grograde::partialmaps::{check_inverse_category, check_inverse_category_exhaustive, compose_pb, FiniteSet, PartialBijection};
use grograde::skew::{build_skew_ring, skew_report};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

struct Outcome {
    ok: bool,
    detail: String,
}

fn outcome(ok: bool, detail: impl Into<String>) -> Outcome {
    Outcome { ok, detail: detail.into() }
}

fn data(name: &str) -> String {
    let p: PathBuf = [env!("CARGO_MANIFEST_DIR"), "..", "..", "data", name].iter().collect();
    p.display().to_string()
}

fn inverse_category() -> Outcome {
    let sets: Vec<Arc<FiniteSet>> = (0..=3).map(|n| FiniteSet::range(format!("S{n}"), n)).collect();
    let mut all = Vec::new();
    for a in &sets {
        for b in &sets {
            all.extend(PartialBijection::enumerate(a, b));
        }
    }
    let exhaustive = check_inverse_category_exhaustive(&all);
    // relational composition as an independent reference
    let mut mismatches = 0;
    for f in &all {
        for g in &all {
            if f.src() != g.dst() {
                continue;
            }
            let fm: BTreeMap<usize, usize> = f.pairs().into_iter().collect();
            let want: BTreeMap<usize, usize> = g.pairs().into_iter().filter_map(|(y, x)| fm.get(&x).map(|&z| (y, z))).collect();
            let got: BTreeMap<usize, usize> = compose_pb(f, g).pairs().into_iter().collect();
            mismatches += usize::from(want != got);
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let six: Vec<Arc<FiniteSet>> = ["A", "B", "C"].iter().map(|id| FiniteSet::range(*id, 6)).collect();
    let samples: Vec<PartialBijection> =
        (0..90).map(|i| PartialBijection::random(&mut rng, &six[i % 3], &six[(i / 3) % 3])).collect();
    let random = check_inverse_category(&samples, 10_000, &mut rng);
    outcome(
        exhaustive.passed() && random.passed() && mismatches == 0 && random.triples_checked == 10_000,
        format!(
            "{} exhaustive triples over {} maps, {} random triples, {} failures, {} composition mismatches",
            exhaustive.triples_checked,
            all.len(),
            random.triples_checked,
            exhaustive.failures.len() + random.failures.len(),
            mismatches
        ),
    )
}

fn idempotent_ideals() -> Outcome {
    let mut bad = Vec::new();
    for n in 1..=100 {
        let r = FiniteCommRing::zmod(n);
        let principal = check_idem_ideal_bijection(&r, 0);
        if principal.search != IdealSearch::Principal || !principal.passed() {
            bad.push(format!("principal Z/{n}"));
        }
        if n <= 12 {
            let subsets = check_idem_ideal_bijection(&r, 12);
            if subsets.search != IdealSearch::Subsets || !subsets.passed() {
                bad.push(format!("subsets Z/{n}"));
            }
        }
    }
    let z6 = FiniteCommRing::zmod(6).unital_ideals_by_subsets().len();
    outcome(bad.is_empty() && z6 == 4, format!("Z/6 has {z6} unital ideals; failures: {bad:?}"))
}

fn delta_squared() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let mut used = 0;
    let (mut checked, mut fails) = (0, 0);
    for (_, m) in modules() {
        let sizes_ok = m.groupoid().num_morphisms() <= 6 && m.components().iter().all(|c| c.len() <= 9);
        if !sizes_ok {
            continue;
        }
        used += 1;
        let cx = Complex::new(&m, 4).unwrap();
        for n in 0..=2 {
            for _ in 0..60 {
                let f = cx.random(n, &mut rng);
                let g = cx.random(n, &mut rng);
                let df = cx.delta(&f).unwrap();
                let ok = cx.delta(&df).unwrap() == cx.identity(n + 2)
                    && cx.delta(&cx.mul(&f, &g)).unwrap() == cx.mul(&df, &cx.delta(&g).unwrap());
                fails += usize::from(!ok);
                checked += 1;
            }
        }
    }
    outcome(used >= 5 && checked >= 1000 && fails == 0, format!("{checked} cochains over {used} modules, {fails} failures"))
}

fn backend_agreement() -> Outcome {
    let mut compared = 0;
    let mut bad = Vec::new();
    for (name, m) in modules() {
        let cx = Complex::new(&m, 3).unwrap();
        for n in 0..=2 {
            if cx.order(n).unwrap() > 10_000 {
                continue;
            }
            let a = cohomology(&cx, n, Backend::Enumerate, DEFAULT_CAP);
            let b = cohomology(&cx, n, Backend::Snf, DEFAULT_CAP);
            match (a, b) {
                (Ok(a), Ok(b)) if a.order == b.order && a.factors == b.factors => compared += 1,
                _ => bad.push(format!("{name} H^{n}")),
            }
        }
    }
    let (_, m) = modules().into_iter().find(|(n, _)| n == "trivial Z2 on Z3").unwrap();
    let h2 = cohomology(&Complex::new(&m, 3).unwrap(), 2, Backend::Snf, DEFAULT_CAP).unwrap();
    outcome(
        bad.is_empty() && h2.order == 2,
        format!("{compared} groups agree; H^2(Z2, units of Z3) has order {}; mismatches {bad:?}", h2.order),
    )
}

fn leavitt_example() -> Outcome {
    let expected = [
        ("(v2,v1)", "(v1,v2)", vec!["f1f1*"], "f1f1*"),
        ("(v1,v2)", "(v2,v1)", vec!["v1"], "v1"),
        ("(v3,v2)", "(v2,v3)", vec!["v3"], "v3"),
        ("(v2,v3)", "(v3,v2)", vec!["f2f2*"], "f2f2*"),
        ("(v3,v1)", "(v1,v3)", vec![], "0"),
        ("(v1,v3)", "(v3,v1)", vec![], "0"),
    ];
    let mut bad = Vec::new();
    for p in [2, 3] {
        let rep = lpa_report(&lpa_build(&three_vertex_example(), p).unwrap());
        for (g, h, span, eps) in &expected {
            let prod = rep.products.iter().find(|x| x.g == *g && x.h == *h).unwrap();
            if prod.basis != *span {
                bad.push(format!("p={p} S_{g} S_{h} = {:?}", prod.basis));
            }
            let e = rep.epsilons.iter().find(|x| x.morphism == *g).unwrap();
            if e.epsilon != *eps {
                bad.push(format!("p={p} eps_{g} = {}", e.epsilon));
            }
        }
        let w = rep.strong_witness.as_ref().map(|w| (w.g.clone(), w.h.clone()));
        if !rep.epsilon_strong || rep.strongly_graded || w != Some(("(v1,v3)".into(), "(v3,v1)".into())) {
            bad.push(format!("p={p} epsilon-strong {} strong {} witness {w:?}", rep.epsilon_strong, rep.strongly_graded));
        }
    }
    outcome(bad.is_empty(), if bad.is_empty() { "products, epsilons and witness match over F2 and F3".into() } else { format!("{bad:?}") })
}

fn lpa_sweep() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let mut bad = 0;
    let mut largest = 0;
    for _ in 0..250 {
        let g = random_acyclic_graph(&mut rng, 5, 6);
        let lpa = lpa_build(&g, 2).unwrap();
        largest = largest.max(lpa.alg().dim());
        bad += usize::from(compute_epsilons(&lpa.graded).is_err() || !lpa_report(&lpa).passed());
    }
    outcome(bad == 0, format!("250 random graphs (seed 2024), largest dimension {largest}, {bad} failures"))
}

fn skew_dichotomy() -> Outcome {
    let actions = skew_actions();
    let partial = actions.iter().filter(|(_, a)| !a.is_global()).count();
    let mut bad = Vec::new();
    for (name, act) in &actions {
        match build_skew_ring(act, None) {
            Ok(s) if skew_report(act, &s).passed() => {}
            _ => bad.push(name.clone()),
        }
    }
    outcome(
        actions.len() >= 10 && partial > 0 && partial < actions.len() && bad.is_empty(),
        format!("{} actions ({partial} partial), exceptions {bad:?}", actions.len()),
    )
}

fn epsilon_strong_instances() -> Vec<(String, GradedAlgebra)> {
    let mut out: Vec<(String, GradedAlgebra)> =
        skew_actions().into_iter().map(|(n, a)| (n, build_skew_ring(&a, None).unwrap().graded)).collect();
    out.push(("F3[Z2]".into(), group_algebra(3, 2)));
    out.push(("matrix truncation".into(), morita_truncation()));
    for p in [2, 3] {
        out.push((format!("three-vertex LPA over F{p}"), lpa_build(&three_vertex_example(), p).unwrap().graded));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    for i in 0..20 {
        out.push((format!("random LPA {i}"), lpa_build(&random_acyclic_graph(&mut rng, 4, 5), 2).unwrap().graded));
    }
    out
}

fn m_iso() -> Outcome {
    let mut pairs = 0;
    let mut bad = Vec::new();
    let instances = epsilon_strong_instances();
    for (name, s) in &instances {
        let eps = compute_epsilons(s).unwrap();
        for t in s.groupoid().composable_tuples(2) {
            pairs += 1;
            if !check_m_iso(s, &eps, t[0], t[1]).passed() {
                bad.push(name.clone());
            }
        }
    }
    outcome(bad.is_empty(), format!("{pairs} composable pairs over {} instances, failures {bad:?}", instances.len()))
}

fn classification() -> Outcome {
    let instances = [
        ("F3[Z2]", group_algebra(3, 2)),
        ("three-vertex LPA over F3", lpa_build(&three_vertex_example(), 3).unwrap().graded),
        ("matrix truncation", morita_truncation()),
    ];
    let mut lines = Vec::new();
    let mut ok = true;
    for (name, s) in &instances {
        let eps = compute_epsilons(s).unwrap();
        match classify(s, &eps, &ClassifyOptions::default()) {
            Ok(r) => {
                let small = s.alg().dim() <= 6;
                ok &= r.h2_order == r.classes
                    && r.cohomologous_equivalent
                    && r.distinct_inequivalent
                    && r.bijective
                    && (!small || r.cross_checked > 0);
                lines.push(format!("{name}: |H2| {} classes {} twists {} cross-checked {}", r.h2_order, r.classes, r.twists, r.cross_checked));
            }
            Err(e) => {
                ok = false;
                lines.push(format!("{name}: {e}"));
            }
        }
    }
    outcome(ok, lines.join("; "))
}

fn determinism() -> Outcome {
    let runs: Vec<Vec<String>> = vec![
        vec!["lpa".into(), "report".into(), data("lpa_example.json"), "-p".into(), "2".into()],
        vec!["skew".into(), "check".into(), data("partial_z2/action.json")],
        vec!["coh".into(), "compute".into(), data("partial_z2/module.json"), "-n".into(), "2".into()],
        vec!["alg".into(), "epsilons".into(), data("morita/algebra.json"), "--groupoid".into(), data("morita/groupoid.json")],
        vec!["classify".into(), data("z3_z2/algebra.json"), "--groupoid".into(), data("z2.groupoid.json")],
    ];
    let mut bad = Vec::new();
    for args in &runs {
        let run = || Command::new(env!("CARGO_BIN_EXE_grograde")).arg("--json").args(args).output().expect("binary runs");
        let (a, b) = (run(), run());
        if a.stdout.is_empty() || a.stdout != b.stdout || a.status.code() != Some(0) {
            bad.push(args[..2].join(" "));
        }
    }
    outcome(bad.is_empty(), format!("{} commands run twice, differing or failing: {bad:?}", runs.len()))
}

type Criterion = (&'static str, Duration, fn() -> Outcome);

fn main() {
    let criteria: Vec<Criterion> = vec![
        ("inverse category of partial bijections", Duration::from_secs(10), inverse_category),
        ("idempotents and unital ideals", Duration::from_secs(5), idempotent_ideals),
        ("coboundary squares to identity", Duration::from_secs(30), delta_squared),
        ("cohomology backends agree", Duration::from_secs(60), backend_agreement),
        ("three-vertex Leavitt example", Duration::from_secs(1), leavitt_example),
        ("Leavitt sweep", Duration::from_secs(300), lpa_sweep),
        ("skew ring dichotomy", Duration::from_secs(30), skew_dichotomy),
        ("multiplication isomorphisms", Duration::from_secs(60), m_iso),
        ("classification of twists", Duration::from_secs(600), classification),
        ("deterministic reports", Duration::from_secs(600), determinism),
    ];
    let mut failed = 0;
    for (i, (name, budget, run)) in criteria.into_iter().enumerate() {
        let start = Instant::now();
        let o = run();
        let took = start.elapsed();
        let ok = o.ok && took <= budget;
        failed += usize::from(!ok);
        println!(
            "criterion {:>2} {} {name} ({:.2}s of {}s): {}",
            i + 1,
            if ok { "PASS" } else { "FAIL" },
            took.as_secs_f64(),
            budget.as_secs(),
            o.detail
        );
    }
    if failed > 0 {
        println!("{failed} criteria failed");
        std::process::exit(1);
    }
}
