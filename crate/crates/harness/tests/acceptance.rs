//! The acceptance criteria, each run at its stated size and tolerance.
//! Prints one PASS/FAIL line per criterion and exits non-zero on any FAIL.

use std::time::Instant;

use dichroma::hunt::{hunt, isomorphism_classes, HuntConfig, HuntMode, InstanceClass};
use dichroma::verify::{delmin_reduction, verify_instance, Bound};
use dichroma_core::asr::{find_asr, find_good_triplet, AsrInstance, AsrRoute};
use dichroma_core::bounds::{epsilon_bound, reed_bound, Rational};
use dichroma_core::choosability::is_k_dichoosable;
use dichroma_core::dense::{dense_colour, find_dense_vertex, partition_n123};
use dichroma_core::generators::{
    complete_digraph, complete_minus_matching, directed_cycle, obstruction, random_digraph, random_graph, rng,
};
use dichroma_core::params::{
    biclique_number, degree_profile, density_report, directed_clique_number, DegreeProfile, Side,
};
use dichroma_core::solver::{dichromatic_number, is_valid, k_dicolourable, Dicolouring};
use dichroma_core::sparse::{diregularize, monte_carlo, sparse_dicolour_with, trial, SparseConfig};
use dichroma_core::transversal::{biclique_transversal, brute_transversal_oracle, TransversalOutcome, TransversalRoute};
use dichroma_core::{Digraph, Graph};
use rand::seq::SliceRandom;
use rand::Rng;
use rayon::prelude::*;

type Verdict = Result<String, String>;
type Criterion = (&'static str, fn() -> Verdict);

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !($cond) {
            return Err(format!($($msg)+));
        }
    };
}

// ---------------------------------------------------------------- oracles

/// Chromatic number by trying `k = 0, 1, …` with plain backtracking.
fn chromatic_number(g: &Graph) -> usize {
    fn colour(g: &Graph, k: usize, v: usize, c: &mut Vec<usize>) -> bool {
        if v == g.n() {
            return true;
        }
        for x in 0..k {
            if g.neighbours(v).iter().all(|&u| u >= v || c[u] != x) {
                c[v] = x;
                if colour(g, k, v + 1, c) {
                    return true;
                }
            }
        }
        false
    }
    (0..=g.n()).find(|&k| colour(g, k, 0, &mut vec![0; g.n()])).unwrap()
}

/// Clique number by scanning all vertex subsets.
fn clique_number(g: &Graph) -> usize {
    (0u32..1 << g.n())
        .filter(|&m| {
            (0..g.n()).all(|u| m >> u & 1 == 0 || (u + 1..g.n()).all(|v| m >> v & 1 == 0 || g.has_edge(u, v)))
        })
        .map(|m| m.count_ones() as usize)
        .max()
        .unwrap_or(0)
}

// ------------------------------------------------------------- generators

/// Union of random bidirected cliques plus sparse single arcs.
fn clique_union(n: usize, cliques: usize, extra: f64, seed: u64) -> Digraph {
    let mut r = rng(seed);
    let mut arcs = Vec::new();
    for _ in 0..cliques {
        let size = r.gen_range(2..=n);
        let mut vs: Vec<usize> = (0..n).collect();
        vs.shuffle(&mut r);
        for &a in &vs[..size] {
            for &b in &vs[..size] {
                if a != b {
                    arcs.push((a, b));
                }
            }
        }
    }
    for u in 0..n {
        for v in 0..n {
            if u != v && r.gen_bool(extra) {
                arcs.push((u, v));
            }
        }
    }
    Digraph::from_arcs(n, arcs).unwrap()
}

/// Partitioned digraph with `d⁺(v) ≤ k` and `d⁻(v) ≤ |V_i| − k` on `V_i`.
fn degree_bounded(sizes: &[usize], k: usize, density: f64, seed: u64) -> AsrInstance {
    let mut r = rng(seed);
    let mut parts = Vec::new();
    let mut part_of = Vec::new();
    for (i, &s) in sizes.iter().enumerate() {
        parts.push((part_of.len()..part_of.len() + s).collect::<Vec<_>>());
        part_of.extend(std::iter::repeat_n(i, s));
    }
    let n = part_of.len();
    let mut cand: Vec<(usize, usize)> =
        (0..n).flat_map(|u| (0..n).map(move |v| (u, v))).filter(|&(u, v)| part_of[u] != part_of[v]).collect();
    cand.shuffle(&mut r);
    let (mut dout, mut din) = (vec![0; n], vec![0; n]);
    let mut arcs = Vec::new();
    for (u, v) in cand {
        if r.gen_bool(density) && dout[u] < k && din[v] + 1 + k <= sizes[part_of[v]] {
            dout[u] += 1;
            din[v] += 1;
            arcs.push((u, v));
        }
    }
    AsrInstance::new(Digraph::from_arcs(n, arcs).unwrap(), parts, k).unwrap()
}

/// Union of `r` random permutations, less a few arcs: nearly `r`-diregular.
fn near_regular(n: usize, r_deg: usize, drop: usize, seed: u64) -> Digraph {
    let mut r = rng(seed);
    let mut arcs = std::collections::HashSet::new();
    for _ in 0..r_deg {
        let mut p: Vec<usize> = (0..n).collect();
        p.shuffle(&mut r);
        arcs.extend((0..n).map(|u| (u, p[u])).filter(|&(u, v)| u != v));
    }
    let mut arcs: Vec<(usize, usize)> = arcs.into_iter().collect();
    arcs.sort_unstable();
    arcs.shuffle(&mut r);
    arcs.truncate(arcs.len().saturating_sub(drop));
    Digraph::from_arcs(n, arcs).unwrap()
}

/// `↔K_m` with arcs dropped at rate `drop`, plus sparse extra vertices.
fn near_complete(m: usize, extra: usize, drop: f64, seed: u64) -> Digraph {
    let mut r = rng(seed);
    let n = m + extra;
    let mut arcs = Vec::new();
    for u in 0..m {
        for v in 0..m {
            if u != v && !r.gen_bool(drop) {
                arcs.push((u, v));
            }
        }
    }
    for x in m..n {
        for _ in 0..2 {
            let y = r.gen_range(0..n);
            if y != x {
                arcs.push(if r.gen_bool(0.5) { (x, y) } else { (y, x) });
            }
        }
    }
    Digraph::from_arcs(n, arcs).unwrap()
}

// -------------------------------------------------------------- criteria

fn c1_extension() -> Verdict {
    for seed in 0..200u64 {
        let n = 1 + (seed % 8) as usize;
        let g = random_graph(n, 0.15 + (seed % 6) as f64 * 0.15, seed).unwrap();
        let d = Digraph::symmetric_closure(&g);
        let chi = dichromatic_number(&d);
        ensure!(chi == chromatic_number(&g), "seed {seed}: χ⃗(↔G) = {chi} ≠ χ(G)");
        ensure!(biclique_number(&d) == clique_number(&g), "seed {seed}: ω↔ ≠ ω");
        let dm = g.max_degree() as u64;
        ensure!(degree_profile(&d).delta_tilde_sq == dm * dm, "seed {seed}: Δ̃² ≠ Δ²");
    }
    Ok("200 graphs, n ≤ 8".into())
}

fn c2_main_bound() -> Verdict {
    let half = Rational::new(1, 2);
    for (name, d, chi, bound) in [
        ("oriented C3", directed_cycle(3), 2, 2),
        ("↔K4", complete_digraph(4), 4, 4),
        ("obstruction(5,2)", obstruction(5, 2).unwrap(), 5, 5),
    ] {
        let r = verify_instance(&d, half, 10).map_err(|e| e.to_string())?;
        ensure!((r.chi, r.reed_bound) == (chi, bound), "{name}: got ({}, {})", r.chi, r.reed_bound);
    }
    let counts: Vec<usize> =
        (1..=5).map(|n| isomorphism_classes(InstanceClass::Tournament, n).map(|c| c.len()).unwrap_or(0)).collect();
    ensure!(counts == [1, 1, 2, 4, 12], "tournament class counts {counts:?}");
    let tour = hunt(&HuntConfig {
        mode: HuntMode::Exhaustive,
        class: InstanceClass::Tournament,
        n_min: 1,
        n_max: 5,
        bound: Bound::Reed,
        ..HuntConfig::default()
    })
    .map_err(|e| e.to_string())?;
    ensure!(tour.violations.is_empty(), "tournament violations {:?}", tour.violations);
    let rand = hunt(&HuntConfig {
        mode: HuntMode::Random,
        class: InstanceClass::Digraph,
        n_min: 1,
        n_max: 7,
        count: 1000,
        seed: 2,
        bound: Bound::Reed,
        ..HuntConfig::default()
    })
    .map_err(|e| e.to_string())?;
    ensure!(rand.violations.is_empty(), "random violations {:?}", rand.violations);
    Ok(format!("3 tight instances, {} tournaments, {} random digraphs", tour.instances, rand.instances))
}

fn c3_transversal() -> Verdict {
    let mut stream = Vec::new();
    let mut seed = 0u64;
    while stream.len() < 500 {
        let n = 3 + (seed % 7) as usize;
        let d = clique_union(n, 1 + (seed % 4) as usize, 0.05, seed);
        seed += 1;
        let delta = degree_profile(&d).delta_max;
        if d.is_connected() && 3 * biclique_number(&d) >= 2 * (delta + 1) {
            stream.push(d);
        }
    }
    for n in 4..=7 {
        for p in 1..=2 {
            stream.push(obstruction(n, p).unwrap());
        }
    }
    let results: Vec<Result<(bool, bool), String>> = stream
        .par_iter()
        .enumerate()
        .map(|(i, d)| {
            let delta = degree_profile(d).delta_max;
            let omega = biclique_number(d);
            let r = biclique_transversal(d, delta).map_err(|e| format!("instance {i}: {e}"))?;
            let oracle = brute_transversal_oracle(d).map_err(|e| format!("instance {i}: {e}"))?;
            let obstructed = matches!(r.outcome, TransversalOutcome::Obstruction(_));
            ensure!(obstructed == oracle.is_none(), "instance {i}: procedure and oracle disagree");
            if let TransversalOutcome::HittingSet(s) = &r.outcome {
                ensure!(d.is_acyclic(s), "instance {i}: hitting set not acyclic");
                let rest = d.remove_vertices(s).0;
                ensure!(biclique_number(&rest) + 1 == omega, "instance {i}: ω↔ did not drop by one");
            }
            Ok((obstructed, r.route == TransversalRoute::OracleFallback))
        })
        .collect();
    let mut obstructions = 0;
    let mut fallbacks = 0;
    for r in results {
        let (o, f) = r?;
        obstructions += o as usize;
        fallbacks += f as usize;
    }
    Ok(format!("{} instances, {obstructions} obstructions, {fallbacks} oracle fallbacks", stream.len()))
}

fn c4_asr() -> Verdict {
    (0..500u64).into_par_iter().try_for_each(|seed| {
        let mut r = rng(seed ^ 0xa5a5);
        let k = r.gen_range(1..=3);
        let parts = r.gen_range(1..=5);
        let sizes: Vec<usize> = (0..parts).map(|_| r.gen_range(k..=5)).collect();
        let inst = degree_bounded(&sizes, k, r.gen_range(0.2..1.0), seed);
        ensure!(inst.precondition_holds(), "seed {seed}: generator broke the degree condition");
        let anchor = r.gen_range(0..inst.digraph().n());
        let out = find_asr(&inst, Some(anchor)).map_err(|e| format!("seed {seed}: {e}"))?;
        ensure!(out.route == AsrRoute::Augmentation, "seed {seed}: fell back to exhaustive search");
        ensure!(inst.is_asr(&out.set) && out.set.contains(&anchor), "seed {seed}: invalid ASR");
        ensure!(find_good_triplet(&inst, anchor).is_none(), "seed {seed}: good triplet exists");
        Ok(())
    })?;
    Ok("500 instances".into())
}

fn c5_choosability() -> Verdict {
    let mut checked = 0;
    for n in 1..=6 {
        for p in 0..=n / 2 {
            let d = complete_minus_matching(n, p).map_err(|e| e.to_string())?;
            let ok = is_k_dichoosable(&d, n - p, None).map_err(|e| e.to_string())?;
            ensure!(ok, "↔K{n} minus {p} digons is not {}-dichoosable", n - p);
            checked += 1;
        }
    }
    Ok(format!("{checked} (n, p) pairs"))
}

fn c6_sparse() -> Verdict {
    (0..100u64).into_par_iter().try_for_each(|seed| {
        let mut r = rng(seed ^ 0x5eed);
        let n = r.gen_range(20..=60);
        let d = near_regular(n, r.gen_range(2..=16), r.gen_range(0..=4), seed);
        let delta = degree_profile(&d).delta_max;
        ensure!(delta <= 16, "seed {seed}: Δ = {delta}");
        let h = diregularize(&d, delta).map_err(|e| format!("seed {seed}: {e}"))?;
        ensure!(
            (0..h.n()).all(|v| h.out_degree(v) == delta && h.in_degree(v) == delta),
            "seed {seed}: not {delta}-diregular"
        );
        let (rd, rh) = (density_report(&d), density_report(&h));
        ensure!(
            (0..n).all(|v| rd.m_plus[v] == rh.m_plus[v] && rd.m_minus[v] == rh.m_minus[v]),
            "seed {seed}: densities changed"
        );
        if delta >= 2 {
            for t in 0..5 {
                let s = trial(&h, seed * 8 + t).map_err(|e| e.to_string())?;
                ensure!(is_valid(&h, &s.partial(), false), "seed {seed}: retained classes not acyclic");
                ensure!((0..h.n()).all(|v| s.x[v] + s.z[v] == s.y[v]), "seed {seed}: X ≠ Y − Z");
            }
        }
        let b = rd.sparsity().max(0) as u64;
        let out = sparse_dicolour_with(&d, b, SparseConfig { max_tries: 50, seed })
            .map_err(|e| format!("seed {seed}: {e}"))?;
        if let Some(o) = out {
            ensure!(is_valid(&d, &o.colouring, true), "seed {seed}: invalid colouring");
            ensure!(o.colouring.palette_size() <= o.delta + 1 - o.ell, "seed {seed}: too many colours");
        }
        Ok(())
    })?;
    Ok("100 digraphs, n ≤ 60, Δ ≤ 16".into())
}

fn c7_monte_carlo() -> Verdict {
    let mut worst = f64::NEG_INFINITY;
    let mut probes = 0;
    for seed in 0..20u64 {
        let mut r = rng(seed ^ 0x3c3c);
        let d = near_complete(r.gen_range(18..=31), 0, r.gen_range(0.02..0.25), seed);
        let delta = degree_profile(&d).delta_max;
        ensure!((16..=30).contains(&delta), "seed {seed}: Δ = {delta} out of range");
        for v in [0, d.n() / 2, d.n() - 1] {
            let m = monte_carlo(&d, v, 10_000, seed).map_err(|e| e.to_string())?;
            let limit = m.y_upper_bound + 3.0 * m.y.std_error;
            let within = m.y.mean <= limit;
            ensure!(within, "seed {seed}, v {v}: mean Y {} > {limit}", m.y.mean);
            worst = worst.max(m.y.mean - m.y_upper_bound);
            probes += 1;
        }
    }
    Ok(format!("{probes} probes, max(mean Y − 3B_v/Δ) = {worst:.3}"))
}

fn c8_dense() -> Verdict {
    let a = Rational::new(1, 4);
    let mut checked = 0;
    let mut extended = 0;
    let mut seed = 0u64;
    while checked < 50 {
        let d = near_complete(6 + (seed % 8) as usize, (seed % 7) as usize, 0.06, seed);
        seed += 1;
        ensure!(d.n() <= 20, "instance too large");
        let Some((v, side)) = find_dense_vertex(&d, a).map_err(|e| e.to_string())? else { continue };
        let part = partition_n123(&d, v, side, a).map_err(|e| e.to_string())?;
        ensure!(part.n3.contains(&v), "seed {seed}: v ∉ N3");
        let mut all: Vec<usize> = part.n1.iter().chain(&part.n2).chain(&part.n3).copied().collect();
        all.sort_unstable();
        ensure!(all == part.n, "seed {seed}: N1, N2, N3 do not partition N");
        let k = dichromatic_number(&d.remove_vertices(&[v]).0);
        let (outside, map) = d.remove_vertices(&part.n3_original());
        let sub = k_dicolourable(&outside, k).ok_or(format!("seed {seed}: D − N3 not k-dicolourable"))?;
        let mut base = Dicolouring::empty(d.n());
        for (i, c) in sub.colours.iter().enumerate() {
            base.colours[map.parent(i)] = *c;
        }
        let out = dense_colour(&d, v, side, a, k, &base).map_err(|e| format!("seed {seed}: {e}"))?;
        if out.extended {
            extended += 1;
            ensure!(is_valid(&d, &out.colouring, true), "seed {seed}: merged colouring invalid");
            let n3 = part.n3_original();
            ensure!(
                (0..d.n()).filter(|u| !n3.contains(u)).all(|u| out.colouring.colours[u] == base.colours[u]),
                "seed {seed}: colouring changed outside N3"
            );
        }
        checked += 1;
    }
    let k4 = complete_digraph(4);
    let chi = dichromatic_number(&k4);
    let out = dense_colour(&k4, 0, Side::Out, a, chi, &Dicolouring::empty(4)).map_err(|e| e.to_string())?;
    ensure!(out.extended && out.colouring.palette_size() == chi, "↔K4 worked example");
    Ok(format!("{checked} instances, {extended} extended; ↔K4 uses {chi} colours"))
}

fn c9_delmin_reduction() -> Verdict {
    (0..300u64).into_par_iter().try_for_each(|seed| {
        let mut r = rng(seed ^ 0x77);
        let n = r.gen_range(1..=8);
        let d = random_digraph(n, r.gen_range(0.0..0.5), r.gen_range(0.0..1.0), seed).unwrap();
        let h = delmin_reduction(&d);
        let (pd, ph) = (degree_profile(&d), degree_profile(&h));
        ensure!(ph.delta_plus <= pd.delta_min, "seed {seed}: Δ⁺(H) > Δmin(D)");
        ensure!(biclique_number(&h) <= directed_clique_number(&d), "seed {seed}: ω↔(H) > ω⃗(D)");
        ensure!(dichromatic_number(&h) >= dichromatic_number(&d), "seed {seed}: χ⃗(H) < χ⃗(D)");
        Ok(())
    })?;
    Ok("300 digraphs, n ≤ 8".into())
}

/// `⌈x⌉` for `x` known to within `1e-9`, or both candidates when `x` is
/// that close to an integer.
fn float_ceils(x: f64) -> (i64, i64) {
    ((x - 1e-9).ceil() as i64, (x + 1e-9).ceil() as i64)
}

fn c10_bounds() -> Verdict {
    let mut r = rng(10);
    let half = Rational::new(1, 2);
    for i in 0..1000 {
        let t: u64 = r.gen_range(0..1_000_000);
        let omega = r.gen_range(0..2000);
        let p = DegreeProfile::from_aggregates(0, 0, t);
        let reed = reed_bound(&p, omega);
        ensure!(reed == epsilon_bound(&p, omega, half).unwrap(), "profile {i}: reed ≠ ε = 1/2");
    }
    let mut non_square = 0;
    for i in 0..1000 {
        let t: u64 = if i % 4 == 0 { r.gen_range(0..1000u64).pow(2) } else { r.gen_range(0..10_000_000) };
        non_square += (t.isqrt() * t.isqrt() != t) as usize;
        let omega = r.gen_range(0..5000);
        let q = r.gen_range(2..1000i64);
        let eps = Rational::new(r.gen_range(1..q), q);
        let p = DegreeProfile::from_aggregates(0, 0, t);
        let e = *eps.numer() as f64 / *eps.denom() as f64;
        let x = (1.0 - e) * ((t as f64).sqrt() + 1.0) + e * omega as f64;
        let (lo, hi) = float_ceils(x);
        let got = epsilon_bound(&p, omega, eps).unwrap() as i64;
        ensure!(lo <= got && got <= hi, "profile {i}: ε bound {got} vs float {x}");
        let xr = ((t as f64).sqrt() + 1.0 + omega as f64) / 2.0;
        let (lo, hi) = float_ceils(xr);
        let got = reed_bound(&p, omega) as i64;
        ensure!(lo <= got && got <= hi, "profile {i}: reed bound {got} vs float {xr}");
    }
    Ok(format!("1000 + 1000 profiles, {non_square} with non-square Δ̃²"))
}

fn main() {
    let criteria: [Criterion; 10] = [
        ("1 extension to symmetric digraphs", c1_extension),
        ("2 main bound and tight instances", c2_main_bound),
        ("3 biclique transversal dichotomy", c3_transversal),
        ("4 acyclic systems of representatives", c4_asr),
        ("5 complete minus matching dichoosable", c5_choosability),
        ("6 sparse pipeline soundness", c6_sparse),
        ("7 Monte Carlo mean of Y", c7_monte_carlo),
        ("8 dense reduction soundness", c8_dense),
        ("9 Δmin reduction", c9_delmin_reduction),
        ("10 exact bound evaluators", c10_bounds),
    ];
    let mut failed = 0;
    for (name, f) in criteria {
        let start = Instant::now();
        let verdict = std::panic::catch_unwind(f).unwrap_or_else(|_| Err("panicked".into()));
        let secs = start.elapsed().as_secs_f64();
        match verdict {
            Ok(detail) => println!("PASS  criterion {name} ({secs:.1}s): {detail}"),
            Err(why) => {
                failed += 1;
                println!("FAIL  criterion {name} ({secs:.1}s): {why}");
            }
        }
    }
    if failed > 0 {
        println!("{failed} criteria failed");
        std::process::exit(1);
    }
}
