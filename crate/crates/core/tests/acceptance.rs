//! Acceptance gate: one PASS/FAIL line per criterion, each with its time
//! budget. Runs without the libtest harness so the lines always print.

mod common;

use std::collections::BTreeSet;
use std::time::{Duration, Instant};

use common::{all_units, ad_rank, diagrams, even_diagrams, jordan_matrix};
use symcone::cone::{asymptotic_cone, component_triples, siegel_family, siegel_orbit};
use symcone::hasse::HasseDiagram;
use symcone::numerics::{curve_residual, sample_orbit_limits, tangent_dimension};
use symcone::partitions::{richardson_of_levi, Partition};
use symcone::scalar::Scalar;
use symcone::signed::{dim_k_orbit, rank_profile, SignedDiagram};
use symcone::triples::{build_ks_triple, cayley, richardson_symmetric, sigma, theta};

type Outcome = Result<String, String>;
type Criterion = (&'static str, u64, fn() -> Outcome);

fn d(text: &str) -> SignedDiagram {
    text.parse().unwrap()
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn names(ds: &[SignedDiagram]) -> BTreeSet<String> {
    ds.iter().map(ToString::to_string).collect()
}

fn edges(h: &HasseDiagram) -> BTreeSet<(String, String)> {
    h.cover_pairs()
        .into_iter()
        .map(|(a, b)| (a.to_string(), b.to_string()))
        .collect()
}

fn edge_set(pairs: &[(&str, &str)]) -> BTreeSet<(String, String)> {
    pairs
        .iter()
        .map(|(a, b)| (d(a).to_string(), d(b).to_string()))
        .collect()
}

fn hook_cone_reproduction() -> Outcome {
    let r = asymptotic_cone(&d("[(+-+)(+)(-)(-)]")).map_err(|e| e.to_string())?;
    let cone: BTreeSet<String> = [
        "[(+-+)(+)(-)^2]",
        "[(-+-)(+)^2(-)]",
        "[(+-)(-+)(+)(-)]",
        "[(+-)(+)^2(-)^2]",
        "[(-+)(+)^2(-)^2]",
        "[(+)^3(-)^3]",
    ]
    .map(|s| d(s).to_string())
    .into();
    let gap: BTreeSet<String> = ["[(+-)^2(+)(-)]", "[(-+)^2(+)(-)]"].map(|s| d(s).to_string()).into();
    ensure(names(r.cone_poset.nodes()) == cone, || format!("cone nodes {:?}", names(r.cone_poset.nodes())))?;
    ensure(names(&r.strict_gap) == gap, || format!("strict gap {:?}", names(&r.strict_gap)))?;

    let left = edge_set(&[
        ("[(+-+)(+)(-)^2]", "[(+-)(-+)(+)(-)]"),
        ("[(-+-)(+)^2(-)]", "[(+-)(-+)(+)(-)]"),
        ("[(+-)(-+)(+)(-)]", "[(+-)(+)^2(-)^2]"),
        ("[(+-)(-+)(+)(-)]", "[(-+)(+)^2(-)^2]"),
        ("[(+-)(+)^2(-)^2]", "[(+)^3(-)^3]"),
        ("[(-+)(+)^2(-)^2]", "[(+)^3(-)^3]"),
    ]);
    let mut right = left.clone();
    right.extend(edge_set(&[
        ("[(+-)^2(+)(-)]", "[(+-)(+)^2(-)^2]"),
        ("[(-+)^2(+)(-)]", "[(-+)(+)^2(-)^2]"),
    ]));
    ensure(edges(&r.cone_poset) == left, || format!("left edges {:?}", edges(&r.cone_poset)))?;
    ensure(edges(&r.ambient_poset) == right, || format!("right edges {:?}", edges(&r.ambient_poset)))?;
    Ok(format!(
        "{} cone nodes, {} ambient nodes, gap {:?}, {} + {} edges",
        cone.len(),
        r.ambient_poset.nodes().len(),
        gap,
        left.len(),
        right.len()
    ))
}

fn siegel() -> Outcome {
    for n in 1..=6 {
        let fam = siegel_family(n).map_err(|e| e.to_string())?;
        let expected: Vec<SignedDiagram> = (0..=n).map(|p| siegel_orbit(n, p, n - p).unwrap()).collect();
        ensure(names(&fam.cone.components) == names(&expected), || {
            format!("n={n}: components {:?}", names(&fam.cone.components))
        })?;
    }
    let fam = siegel_family(4).map_err(|e| e.to_string())?;
    let mut expected = BTreeSet::new();
    for p in 0..=4 {
        for q in 0..=4 - p {
            let k = siegel_orbit(4, p, q).unwrap().to_string();
            if p > 0 {
                expected.insert((k.clone(), siegel_orbit(4, p - 1, q).unwrap().to_string()));
            }
            if q > 0 {
                expected.insert((k, siegel_orbit(4, p, q - 1).unwrap().to_string()));
            }
        }
    }
    ensure(fam.extended.nodes().len() == 15, || format!("{} nodes", fam.extended.nodes().len()))?;
    ensure(edges(&fam.extended) == expected, || format!("edges {:?}", edges(&fam.extended)))?;
    Ok(format!("n+1 components for n=1..6; n=4 poset 15 nodes, {} covers", expected.len()))
}

fn triple_identities() -> Outcome {
    let two = Scalar::from_i64(2);
    let minus = |m: &symcone::ExactMatrix| m.scale(&Scalar::from_i64(-1));
    let all = diagrams(8);
    for x in &all {
        let sig = x.signature();
        let t = build_ks_triple(x);
        let c = cayley(&t);
        let ok = t.h.bracket(&t.x) == t.x.scale(&two)
            && t.h.bracket(&t.y) == minus(&t.y).scale(&two)
            && t.x.bracket(&t.y) == t.h
            && sigma(&t.x, sig) == t.y
            && c.f == minus(&theta(&c.e, sig))
            && c.a.bracket(&c.e) == c.e.scale(&two)
            && c.e.bracket(&c.f) == c.a;
        ensure(ok, || format!("identity fails for {x}"))?;
    }
    Ok(format!("{} diagrams, exact equality", all.len()))
}

fn dimension_identity() -> Outcome {
    let all = even_diagrams(6);
    for x in &all {
        let r = asymptotic_cone(x).map_err(|e| e.to_string())?;
        let half = x.partition().dim_g_orbit() / 2;
        for (comp, _, c) in component_triples(&r) {
            let dim = tangent_dimension(&c.a, x.signature()).map_err(|e| e.to_string())?;
            ensure(dim == dim_k_orbit(&comp) && dim == half, || {
                format!("{comp}: dim K.a = {dim}, dim K.x = {}, half dim G.x = {half}", dim_k_orbit(&comp))
            })?;
        }
    }
    Ok(format!("{} even diagrams", all.len()))
}

fn limit_curves() -> Outcome {
    let target = (-4.0f64).exp();
    let mut checked = 0;
    let mut worst_ratio: f64 = 0.0;
    for x in even_diagrams(4) {
        let t = build_ks_triple(&x);
        if t.is_zero() {
            continue;
        }
        let c = cayley(&t);
        let r8 = curve_residual(8.0, &t, &c).map_err(|e| e.to_string())?;
        ensure(r8 <= 1e-8, || format!("{x}: residual {r8:e} at t=8"))?;
        for s in 1..8 {
            let a = curve_residual(s as f64, &t, &c).map_err(|e| e.to_string())?;
            let b = curve_residual(s as f64 + 1.0, &t, &c).map_err(|e| e.to_string())?;
            let dev = (b / a / target - 1.0).abs();
            worst_ratio = worst_ratio.max(dev);
            ensure(dev <= 0.1, || format!("{x}: ratio {} between t={s} and t={}", b / a, s + 1))?;
        }
        checked += 1;
    }
    Ok(format!("{checked} triples; worst ratio deviation {worst_ratio:.2e}"))
}

fn richardson() -> Outcome {
    let all = even_diagrams(6);
    for x in &all {
        let got = richardson_symmetric(x, 2024).map_err(|e| e.to_string())?;
        ensure(&got == x, || format!("{x}: generic element lands in {got}"))?;
        let levi = build_ks_triple(x).levi_blocks();
        let lambda = richardson_of_levi(&levi);
        ensure(lambda == x.partition(), || format!("{x}: Levi {levi:?} gives {lambda}"))?;
    }
    Ok(format!("{} even diagrams", all.len()))
}

fn oracle_equivalence() -> Outcome {
    let mut partitions = 0;
    for n in 1..=6 {
        for lambda in Partition::all(n) {
            let rank = ad_rank(&jordan_matrix(&lambda), &all_units(n));
            ensure(rank == lambda.dim_g_orbit(), || format!("{lambda}: ad rank {rank}"))?;
            partitions += 1;
        }
    }
    let mut total = 0;
    for sig in common::signatures(7) {
        let nodes = symcone::signed::all_diagrams(sig);
        let profiles: Vec<_> = nodes.iter().map(rank_profile).collect();
        for i in 0..nodes.len() {
            for j in 0..nodes.len() {
                if i != j {
                    ensure(profiles[i] != profiles[j], || format!("{} and {} share a profile", nodes[i], nodes[j]))?;
                    ensure(!(profiles[i].le(&profiles[j]) && profiles[j].le(&profiles[i])), || {
                        format!("{} and {} are mutually below", nodes[i], nodes[j])
                    })?;
                }
            }
        }
        total += nodes.len();
    }
    Ok(format!("{partitions} partitions; {total} diagrams"))
}

fn monte_carlo() -> Outcome {
    let mut components = 0;
    let mut failures = 0;
    for x in even_diagrams(4) {
        let r = sample_orbit_limits(&x, 100, 1e-9, 17).map_err(|e| e.to_string())?;
        components += r.components;
        failures += r.membership_failures;
    }
    ensure(failures == 0, || format!("{failures} membership failures"))?;
    Ok(format!("{} conjugates, 0 failures", components * 100))
}

fn main() {
    let criteria: [Criterion; 8] = [
        ("1 cone example at signature (3,3)", 1, hook_cone_reproduction),
        ("2 Siegel family", 5, siegel),
        ("3 triple identities, p+q <= 8", 30, triple_identities),
        ("4 dimension identity, p+q <= 6", 60, dimension_identity),
        ("5 limit curve, n <= 4", 5, limit_curves),
        ("6 Richardson consistency, p+q <= 6", 60, richardson),
        ("7 oracle equivalence", 120, oracle_equivalence),
        ("8 Monte Carlo membership, n <= 4", 30, monte_carlo),
    ];
    let mut failed = 0;
    for (name, budget, check) in criteria {
        let start = Instant::now();
        let result = check();
        let elapsed = start.elapsed();
        let over = elapsed > Duration::from_secs(budget);
        let (status, detail) = match result {
            Ok(_) if over => ("FAIL", format!("over time budget of {budget} s")),
            Ok(detail) => ("PASS", detail),
            Err(why) => ("FAIL", why),
        };
        if status == "FAIL" {
            failed += 1;
        }
        println!("{status} criterion {name} [{:.2} s / {budget} s]: {detail}", elapsed.as_secs_f64());
    }
    if failed > 0 {
        println!("{failed} acceptance criteria failed");
        std::process::exit(1);
    }
    println!("all acceptance criteria passed");
}
